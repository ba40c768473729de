#![allow(dead_code)]

use std::collections::BTreeMap;

use ainfp::complex::FilteredSimplicialComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Random filtered complex on at most `max_vertices` vertices and of
/// dimension at most `max_dim`: a random graph, then each simplex whose
/// boundary is present is filled with probability `fill`. A simplex appears
/// at the largest value of its faces plus a random step in
/// `{0, 1/2, …, (levels−1)/2}`, vertices at a random step.
pub fn random_complex_with(seed: u64, max_vertices: usize, max_dim: usize, levels: i64, fill: f64) -> FilteredSimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.gen_range(1..=max_vertices);
    let half = |k: i64| BigRational::new(BigInt::from(k), BigInt::from(2));
    let mut values: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for v in 0..nv {
        values.insert(vec![v], half(rng.gen_range(0..levels)));
    }
    for k in 2..=(max_dim + 1).min(nv) {
        let p = if k == 2 { 0.6 } else { fill };
        for s in subsets(nv, k) {
            let faces: Vec<Vec<usize>> = (0..k)
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    f
                })
                .collect();
            if !faces.iter().all(|f| values.contains_key(f)) || !rng.gen_bool(p) {
                continue;
            }
            let top = faces.iter().map(|f| values[f].clone()).max().expect("faces");
            values.insert(s, top + half(rng.gen_range(0..levels)));
        }
    }
    let list: Vec<(Vec<usize>, BigRational)> = values.into_iter().collect();
    FilteredSimplicialComplex::from_explicit(&list).expect("random complex is valid")
}

pub fn random_complex(seed: u64, max_vertices: usize, max_dim: usize, levels: i64) -> FilteredSimplicialComplex {
    random_complex_with(seed, max_vertices, max_dim, levels, 0.4)
}
