//! The Rees dg algebra `𝒟 = ⊕_{p ∈ P_s} F^p` with product
//! `(p, x)(q, y) = (min(p, q), xy)`.
//!
//! Block `b` is `F^{P_s[b]}`; its basis is the set of underlying basis
//! elements of value `≥ P_s[b]`. Global coordinates number the blocks one
//! after the other.

use num_rational::BigRational;

use crate::ainfty::AInfinity;
use crate::dga::FilteredDgAlgebra;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::SparseVec;

#[derive(Clone, Debug)]
pub struct ReesAlgebra {
    pub alg: FilteredDgAlgebra,
    pub scale: Vec<BigRational>,
    /// underlying basis indices of each block, ascending
    pub blocks: Vec<Vec<usize>>,
    offset: Vec<usize>,
    /// `local[b][i]`: position of underlying element `i` in block `b`
    local: Vec<Vec<Option<usize>>>,
    /// global index -> (block, underlying index)
    global: Vec<(usize, usize)>,
}

impl ReesAlgebra {
    /// Builds the Rees algebra after validating the filtered algebra.
    pub fn new(alg: &FilteredDgAlgebra) -> Result<Self> {
        alg.validate()?;
        Ok(Self::new_unchecked(alg))
    }

    pub fn new_unchecked(alg: &FilteredDgAlgebra) -> Self {
        let scale = alg.scale();
        let mut blocks = Vec::new();
        let mut offset = Vec::new();
        let mut local = Vec::new();
        let mut global = Vec::new();
        for (b, p) in scale.iter().enumerate() {
            let members: Vec<usize> = (0..alg.dim()).filter(|&i| alg.value(i) >= p).collect();
            let mut loc = vec![None; alg.dim()];
            for (k, &i) in members.iter().enumerate() {
                loc[i] = Some(k);
                global.push((b, i));
            }
            offset.push(global.len() - members.len());
            blocks.push(members);
            local.push(loc);
        }
        ReesAlgebra {
            alg: alg.clone(),
            scale,
            blocks,
            offset,
            local,
            global,
        }
    }

    pub fn dim(&self) -> usize {
        self.global.len()
    }

    pub fn block_dim(&self, b: usize) -> usize {
        self.blocks[b].len()
    }

    /// Adams value of a global basis element.
    pub fn adams(&self, g: usize) -> &BigRational {
        &self.scale[self.global[g].0]
    }

    pub fn split(&self, g: usize) -> (usize, usize) {
        self.global[g]
    }

    /// Embeds an underlying vector of `F^{P_s[b]}` into block `b`.
    ///
    /// Panics if the vector leaves `F^{P_s[b]}`.
    pub fn embed(&self, b: usize, x: &SparseVec) -> SparseVec {
        x.reindex(|i| Some(self.offset[b] + self.local[b][i].expect("vector outside the filtration level")))
    }

    /// Splits a global vector into `(block, underlying vector)` pieces.
    pub fn pieces(&self, v: &SparseVec) -> Vec<(usize, SparseVec)> {
        let mut out: Vec<(usize, Vec<_>)> = Vec::new();
        for (g, c) in v.iter() {
            let (b, i) = self.global[*g];
            match out.last_mut() {
                Some((bb, list)) if *bb == b => list.push((i, c.clone())),
                _ => out.push((b, vec![(i, c.clone())])),
            }
        }
        out.into_iter().map(|(b, l)| (b, SparseVec::from_entries(l))).collect()
    }
}

impl AInfinity for ReesAlgebra {
    fn field(&self) -> Field {
        self.alg.field
    }
    fn dim(&self) -> usize {
        self.global.len()
    }
    fn degree(&self, g: usize) -> i32 {
        self.alg.degree(self.global[g].1)
    }
    fn max_arity(&self) -> usize {
        2
    }
    fn op(&self, inputs: &[usize]) -> SparseVec {
        match inputs {
            [g] => {
                let (b, i) = self.global[*g];
                self.embed(b, &self.alg.d[i])
            }
            [g, h] => {
                let (b, i) = self.global[*g];
                let (c, j) = self.global[*h];
                match self.alg.mul_basis(i, j) {
                    Some(v) => self.embed(b.min(c), v),
                    None => SparseVec::new(),
                }
            }
            _ => SparseVec::new(),
        }
    }
    fn op_vec(&self, inputs: &[&SparseVec]) -> SparseVec {
        match inputs {
            [x] => {
                let mut out = SparseVec::new();
                for (b, v) in self.pieces(x) {
                    out.add_scaled(&self.field().one(), &self.embed(b, &self.alg.diff(&v)));
                }
                out
            }
            [x, y] => {
                let mut out = SparseVec::new();
                let py = self.pieces(y);
                for (b, u) in self.pieces(x) {
                    for (c, v) in &py {
                        out.add_scaled(&self.field().one(), &self.embed(b.min(*c), &self.alg.mul(&u, v)));
                    }
                }
                out
            }
            _ => SparseVec::new(),
        }
    }
}
