//! Contraction of each filtration level `F^p` onto its cohomology.
//!
//! In block `p` the level `F^p` is a prefix of the reduction order. Its basis
//! splits as
//!
//! * `R[σ]` for prefix columns with `R[σ] ≠ 0` (coboundaries),
//! * the representative cocycles of the bars alive at `p` (cohomology),
//! * `V[σ]` for the same prefix columns (lifts, `d V[σ] = R[σ]`),
//!
//! and `h(R[σ]) = −V[σ]`, `h = 0` on the other two parts, `π` keeps the
//! cohomology coordinates. Then `ιπ − 1 = dh + hd`, `πι = 1` and
//! `hι = πh = hh = 0`. A nonzero seed moves representatives by coboundaries
//! and lifts by cocycles, which changes `h` but not the class basis.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::structure::BasisElem;
use crate::dga::FilteredDgAlgebra;
use crate::error::{Error, Result};
use crate::interval::ExtValue;
use crate::linalg::{column_reduce, Reduction, SparseMatrix, SparseVec};
use crate::persistence::{Bar, Persistence};

#[derive(Clone, Debug)]
enum Slot {
    /// coboundary; index into `h_image`
    Boundary(usize),
    /// cohomology class; index into the shifted basis
    Class(usize),
    Lift,
}

#[derive(Clone, Debug)]
struct Block {
    red: Reduction,
    slots: Vec<Slot>,
    /// `h` of each coboundary slot, basis coordinates
    h_image: Vec<SparseVec>,
}

#[derive(Clone, Debug)]
pub struct Contraction {
    pub persistence: Persistence,
    pub bars: Vec<Bar>,
    /// shifted representative basis `B̂`, grouped by bar, blocks ascending
    pub basis: Vec<BasisElem>,
    /// `V[σ]` (moved by the seed) for reduction positions with `R[σ] ≠ 0`
    lifts: Vec<Option<SparseVec>>,
    blocks: Vec<Block>,
}

impl Contraction {
    pub fn new(alg: &FilteredDgAlgebra, seed: u64) -> Self {
        let pers = Persistence::new(alg);
        let mut bars = pers.bars();
        let field = alg.field;
        let n = pers.order.len();
        let mut lifts: Vec<Option<SparseVec>> = (0..n)
            .map(|s| (!pers.red.r.columns[s].is_zero()).then(|| pers.to_basis(&pers.red.v.columns[s])))
            .collect();

        if seed != 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for bar in bars.iter_mut() {
                let p1 = bar.interval.upper.finite().expect("finite birth").clone();
                let w = random_combination(alg, bar.degree - 1, &p1, &mut rng);
                bar.rep.add_scaled(&field.one(), &alg.diff(&w));
                if let Some(wit) = bar.witness.as_mut() {
                    wit.add_scaled(&field.one(), &w);
                }
            }
            for s in 0..n {
                let Some(lift) = lifts[s].as_mut() else { continue };
                let i = pers.order[s];
                let (deg, val) = (alg.degree(i), alg.value(i).clone());
                let w = random_combination(alg, deg - 1, &val, &mut rng);
                let mut c = alg.diff(&w);
                for bar in &bars {
                    if bar.degree == deg && ExtValue::Finite(val.clone()) <= bar.interval.upper {
                        c.add_scaled(&field.random(&mut rng), &bar.rep);
                    }
                }
                lift.add_scaled(&field.one(), &c);
            }
        }

        let (basis, blocks) = assemble(&pers, &bars, &lifts);
        Contraction {
            persistence: pers,
            bars,
            basis,
            lifts,
            blocks,
        }
    }

    /// Contraction whose inclusion sends one degree-0 class to the unit of
    /// the algebra; needs a single filtration step.
    pub fn unitary(alg: &FilteredDgAlgebra, seed: u64) -> Result<Self> {
        let mut c = Contraction::new(alg, seed);
        if c.scale().is_empty() {
            return Ok(c);
        }
        if c.scale().len() > 1 {
            return Err(Error::Precondition("unitary transfer needs a single filtration step".into()));
        }
        let Some(u) = alg.unit() else {
            return Err(Error::Precondition("the algebra has no unit".into()));
        };
        let coords = c.pi(0, &u);
        let (k, _) = coords.iter().next().ok_or_else(|| Error::Precondition("the unit is a coboundary".into()))?;
        let bar = c.basis[*k].bar;
        c.bars[bar].rep = u;
        let (basis, blocks) = assemble(&c.persistence, &c.bars, &c.lifts);
        c.basis = basis;
        c.blocks = blocks;
        Ok(c)
    }

    pub fn alg(&self) -> &FilteredDgAlgebra {
        &self.persistence.alg
    }

    pub fn scale(&self) -> &[BigRational] {
        &self.persistence.scale
    }

    /// `ι(e_k)`: the representative cocycle, in its block.
    pub fn iota(&self, k: usize) -> (usize, SparseVec) {
        let e = &self.basis[k];
        (e.block, self.bars[e.bar].rep.clone())
    }

    fn coordinates(&self, block: usize, x: &SparseVec) -> SparseVec {
        self.blocks[block]
            .red
            .solve(&self.persistence.to_positions(x))
            .expect("vector lies in the filtration level")
    }

    /// `π` on a vector of block `block`, in `B̂` coordinates.
    pub fn pi(&self, block: usize, x: &SparseVec) -> SparseVec {
        let blk = &self.blocks[block];
        let c = self.coordinates(block, x);
        let entries = c
            .iter()
            .filter_map(|(j, a)| match blk.slots[*j] {
                Slot::Class(k) => Some((k, a.clone())),
                _ => None,
            })
            .collect();
        SparseVec::from_entries(entries)
    }

    /// `h` on a vector of block `block`, in basis coordinates.
    pub fn h(&self, block: usize, x: &SparseVec) -> SparseVec {
        let blk = &self.blocks[block];
        let mut out = SparseVec::new();
        for (j, a) in self.coordinates(block, x).iter() {
            if let Slot::Boundary(t) = blk.slots[*j] {
                out.add_scaled(a, &blk.h_image[t]);
            }
        }
        out
    }
}

fn assemble(pers: &Persistence, bars: &[Bar], lifts: &[Option<SparseVec>]) -> (Vec<BasisElem>, Vec<Block>) {
    let field = pers.alg.field;
    let mut basis = Vec::new();
    for (k, bar) in bars.iter().enumerate() {
        for (b, p) in pers.scale.iter().enumerate() {
            let pe = ExtValue::Finite(p.clone());
            if bar.interval.lower < pe && pe <= bar.interval.upper {
                basis.push(BasisElem {
                    degree: bar.degree,
                    block: b,
                    adams: p.clone(),
                    bar: k,
                    lower: bar.interval.lower.clone(),
                    upper: bar.interval.upper.finite().expect("finite birth").clone(),
                });
            }
        }
    }

    let mut blocks = Vec::with_capacity(pers.scale.len());
    for (b, p) in pers.scale.iter().enumerate() {
        let len = pers.prefix_len(p);
        let mut cols = Vec::new();
        let mut slots = Vec::new();
        let mut h_image = Vec::new();
        for s in 0..len {
            if let Some(lift) = &lifts[s] {
                cols.push(pers.red.r.columns[s].clone());
                slots.push(Slot::Boundary(h_image.len()));
                h_image.push(lift.scaled(&-field.one()));
            }
        }
        for (idx, e) in basis.iter().enumerate() {
            if e.block == b {
                cols.push(pers.to_positions(&bars[e.bar].rep));
                slots.push(Slot::Class(idx));
            }
        }
        for lift in lifts.iter().take(len).flatten() {
            cols.push(pers.to_positions(lift));
            slots.push(Slot::Lift);
        }
        let red = column_reduce(&SparseMatrix::from_columns(len, field, cols));
        debug_assert_eq!(red.rank(), len);
        blocks.push(Block { red, slots, h_image });
    }
    (basis, blocks)
}

/// Random combination of the basis elements of `degree` with value `≥ p`.
fn random_combination(alg: &FilteredDgAlgebra, degree: i32, p: &BigRational, rng: &mut ChaCha8Rng) -> SparseVec {
    let entries = (0..alg.dim())
        .filter(|&i| alg.degree(i) == degree && alg.value(i) >= p)
        .map(|i| (i, alg.field.random(rng)))
        .collect();
    SparseVec::from_entries(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;

    fn check_identities(alg: &FilteredDgAlgebra, seed: u64) {
        let c = Contraction::new(alg, seed);
        let field = alg.field;
        for (b, p) in c.scale().iter().enumerate() {
            let members: Vec<usize> = (0..alg.dim()).filter(|&i| alg.value(i) >= p).collect();
            let classes: Vec<usize> = (0..c.basis.len()).filter(|&k| c.basis[k].block == b).collect();
            for &k in &classes {
                let (_, z) = c.iota(k);
                assert!(alg.diff(&z).is_zero());
                assert_eq!(c.pi(b, &z), SparseVec::unit(k, field));
                assert!(c.h(b, &z).is_zero());
            }
            for &i in &members {
                let x = SparseVec::unit(i, field);
                // ιπx − x = dhx + hdx
                let mut lhs = SparseVec::new();
                for (k, a) in c.pi(b, &x).iter() {
                    lhs.add_scaled(a, &c.iota(*k).1);
                }
                lhs.add_scaled(&-field.one(), &x);
                let mut rhs = alg.diff(&c.h(b, &x));
                rhs.add_scaled(&field.one(), &c.h(b, &alg.diff(&x)));
                assert_eq!(lhs, rhs, "homotopy identity at {i}, block {b}, seed {seed}");
                let hx = c.h(b, &x);
                assert!(c.h(b, &hx).is_zero());
                assert!(c.pi(b, &hx).is_zero());
            }
        }
    }

    #[test]
    fn contraction_identities() {
        for field in [Field::Fp(2), Field::Fp(5), Field::Q] {
            for seed in [0, 1, 7] {
                check_identities(&fixtures::square(field), seed);
                check_identities(&fixtures::heisenberg(field), seed);
            }
        }
    }

    #[test]
    fn basis_counts_match_block_cohomology() {
        let alg = fixtures::square(Field::Fp(2));
        let c = Contraction::new(&alg, 0);
        let pers = &c.persistence;
        for (b, p) in c.scale().iter().enumerate() {
            let pe = ExtValue::Finite(p.clone());
            for n in pers.degrees() {
                let count = c.basis.iter().filter(|e| e.block == b && e.degree == n).count();
                assert_eq!(count, pers.persistent_rank(n, &pe, &pe).unwrap());
            }
        }
    }
}
