//! Homotopy transfer of the Rees dg algebra onto its cohomology.
//!
//! Level by level, with `f_1 = ι`,
//!
//! `Φ_n = Σ_{i+j=n} (−1)^{i−1} μ(f_i ⊗ f_j) − Σ_{2≤s<n} (−1)^{r+st} f_{r+1+t}(1^r ⊗ m̄_s ⊗ 1^t)`,
//!
//! then `m̄_n = πΦ_n` and `f_n = hΦ_n`, which is MI(n) rearranged as
//! `ι m̄_n − d f_n = Φ_n`. All terms of one input tuple live in the Adams
//! block of the smallest input, where `π` and `h` of that block apply.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::contraction::Contraction;
use super::structure::{ANMorphism, ANStructure};
use super::{parity, signed, tuples, AInfinity};
use crate::dga::FilteredDgAlgebra;
use crate::error::Result;
use crate::linalg::SparseVec;
use crate::rees::ReesAlgebra;

#[derive(Clone, Debug)]
pub struct TransferOptions {
    /// highest arity computed
    pub n: usize,
    /// contraction seed; 0 is the canonical contraction
    pub seed: u64,
    /// send a degree-0 class to the unit (single filtration step only)
    pub unitary: bool,
}

impl Default for TransferOptions {
    fn default() -> Self {
        TransferOptions {
            n: 4,
            seed: 0,
            unitary: false,
        }
    }
}

pub struct Transferred {
    pub structure: ANStructure,
    /// `f : H → 𝒟` in global Rees coordinates
    pub morphism: ANMorphism,
    pub contraction: Contraction,
    pub rees: ReesAlgebra,
}

pub fn transfer(alg: &FilteredDgAlgebra, opts: &TransferOptions) -> Result<Transferred> {
    alg.validate()?;
    let contraction = if opts.unitary {
        Contraction::unitary(alg, opts.seed)?
    } else {
        Contraction::new(alg, opts.seed)
    };
    let rees = ReesAlgebra::new_unchecked(alg);
    let n_max = opts.n.max(1);
    let field = alg.field;
    let c = &contraction;
    let mut structure = ANStructure::new(field, c.scale().to_vec(), c.basis.clone(), n_max);
    let dim = c.basis.len();
    let degrees: BTreeSet<i32> = alg.basis.iter().map(|b| b.degree).collect();

    // f_k in underlying coordinates; the block is the smallest input block
    let mut fu: Vec<BTreeMap<Vec<usize>, SparseVec>> = vec![BTreeMap::new(); n_max + 1];
    for k in 0..dim {
        fu[1].insert(vec![k], c.iota(k).1);
    }

    for n in 2..=n_max {
        let level: Vec<(Vec<usize>, SparseVec, SparseVec)> = tuples(dim, n)
            .into_par_iter()
            .filter_map(|t| {
                let deg: i32 = t.iter().map(|&k| c.basis[k].degree).sum::<i32>() + 2 - n as i32;
                if !degrees.contains(&deg) {
                    return None;
                }
                let block = t.iter().map(|&k| c.basis[k].block).min().expect("nonempty");
                let phi = phi(c, &structure, &fu, &t);
                if phi.is_zero() {
                    return None;
                }
                Some((t, c.pi(block, &phi), c.h(block, &phi)))
            })
            .collect();
        for (t, m, f) in level {
            structure.set(t.clone(), m);
            if !f.is_zero() {
                fu[n].insert(t, f);
            }
        }
    }

    let mut morphism = ANMorphism::new(n_max);
    for level in fu.iter().skip(1) {
        for (t, v) in level {
            let block = t.iter().map(|&i| c.basis[i].block).min().expect("nonempty");
            morphism.set(t.clone(), rees.embed(block, v));
        }
    }
    Ok(Transferred {
        structure,
        morphism,
        contraction,
        rees,
    })
}

fn phi(c: &Contraction, m: &ANStructure, fu: &[BTreeMap<Vec<usize>, SparseVec>], b: &[usize]) -> SparseVec {
    let alg = c.alg();
    let field = alg.field;
    let n = b.len();
    let deg = |k: usize| c.basis[k].degree as i64;
    let get = |t: &[usize]| fu[t.len()].get(t);
    let mut out = SparseVec::new();

    for i in 1..n {
        let j = n - i;
        let (Some(x), Some(y)) = (get(&b[..i]), get(&b[i..])) else {
            continue;
        };
        let before: i64 = b[..i].iter().map(|&k| deg(k)).sum();
        let odd = parity(i as i64 - 1) ^ parity((1 - j as i64) * before);
        out.add_scaled(&signed(field, odd), &alg.mul(x, y));
    }

    let mut tuple = Vec::with_capacity(n);
    for s in 2..n {
        for r in 0..=n - s {
            let t = n - r - s;
            let inner = m.op(&b[r..r + s]);
            if inner.is_zero() {
                continue;
            }
            let before: i64 = b[..r].iter().map(|&k| deg(k)).sum();
            // the term enters Φ with a minus sign
            let odd = !(parity((r + s * t) as i64) ^ parity(s as i64 * before));
            let sign = signed(field, odd);
            tuple.clear();
            tuple.extend_from_slice(&b[..r]);
            tuple.push(0);
            tuple.extend_from_slice(&b[r + s..]);
            for (u, coef) in inner.iter() {
                tuple[r] = *u;
                if let Some(v) = get(&tuple) {
                    out.add_scaled(&(&sign * coef), v);
                }
            }
        }
    }
    out
}
