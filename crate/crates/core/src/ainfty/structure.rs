//! Minimal A_N-structures on the shifted representative basis of the Rees
//! cohomology, and morphisms out of them.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::{AInfinity, Morphism};
use crate::field::Field;
use crate::interval::{ExtValue, Interval};
use crate::io::{ext_to_value, field_to_json};
use crate::linalg::SparseVec;

/// The class `ω^{p3}_{p1}·z` of a bar `(p2, p1]` in Adams block `p3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElem {
    pub degree: i32,
    /// index of the Adams block, `adams = scale[block]`
    pub block: usize,
    pub adams: BigRational,
    /// index of the bar in the barcode listing
    pub bar: usize,
    /// the bar `(lower, upper]`
    pub lower: ExtValue,
    pub upper: BigRational,
}

impl BasisElem {
    /// The truncated interval `(p2, p3]` used by the distances.
    pub fn truncated(&self) -> Interval {
        Interval {
            lower: self.lower.clone(),
            upper: ExtValue::Finite(self.adams.clone()),
        }
    }

    /// Whether this is the unshifted class, `p3 = p1`.
    pub fn is_unshifted(&self) -> bool {
        self.adams == self.upper
    }
}

/// Support set `𝒜(i, …)`: the dummy `★` or a nonempty set of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Support {
    Star,
    Elems(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ANStructure {
    pub field: Field,
    pub scale: Vec<BigRational>,
    pub basis: Vec<BasisElem>,
    /// largest arity carried
    pub n: usize,
    /// `m[k]` holds the nonzero values of `m_k`; `m[0]` and `m[1]` are empty
    pub m: Vec<BTreeMap<Vec<usize>, SparseVec>>,
}

impl ANStructure {
    pub fn new(field: Field, scale: Vec<BigRational>, basis: Vec<BasisElem>, n: usize) -> Self {
        ANStructure {
            field,
            scale,
            basis,
            n,
            m: vec![BTreeMap::new(); n.max(1) + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn set(&mut self, inputs: Vec<usize>, v: SparseVec) {
        let k = inputs.len();
        if v.is_zero() {
            self.m[k].remove(&inputs);
        } else {
            self.m[k].insert(inputs, v);
        }
    }

    /// Indices of the unshifted classes, one per bar.
    pub fn unshifted(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].is_unshifted()).collect()
    }

    /// Basis elements in a given degree and Adams block.
    pub fn slot(&self, degree: i32, block: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].degree == degree && self.basis[i].block == block)
            .collect()
    }

    /// Whether every tensor entry up to arity `k` vanishes.
    pub fn is_zero_at(&self, k: usize) -> bool {
        k >= self.m.len() || self.m[k].is_empty()
    }

    /// `𝒜(i, inputs)`: `{z}` for a single input, `★` if some input is `★` or
    /// `m_i` vanishes, otherwise the support of `m_i(inputs)`.
    pub fn support_set(&self, inputs: &[Option<usize>]) -> Support {
        if inputs.iter().any(Option::is_none) {
            return Support::Star;
        }
        let t: Vec<usize> = inputs.iter().map(|x| x.expect("checked")).collect();
        if t.len() == 1 {
            return Support::Elems(t);
        }
        let v = self.op(&t);
        if v.is_zero() {
            Support::Star
        } else {
            Support::Elems(v.iter().map(|(k, _)| *k).collect())
        }
    }

    /// Same basis metadata (degrees, blocks, bars) as `other`.
    pub fn same_basis(&self, other: &ANStructure) -> bool {
        self.field == other.field && self.scale == other.scale && self.basis == other.basis
    }

    pub fn to_json(&self) -> Value {
        let (field, p) = field_to_json(self.field);
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|b| {
                json!({
                    "degree": b.degree,
                    "adams": ext_to_value(&ExtValue::Finite(b.adams.clone())),
                    "bar": b.bar,
                    "lower": ext_to_value(&b.lower),
                    "upper": ext_to_value(&ExtValue::Finite(b.upper.clone())),
                })
            })
            .collect();
        let mut m = serde_json::Map::new();
        for k in 2..self.m.len() {
            let entries: Vec<Value> = self.m[k]
                .iter()
                .map(|(t, v)| {
                    let out: Vec<Value> = v.iter().map(|(i, c)| json!([i, c.to_string()])).collect();
                    json!({"inputs": t, "output": out})
                })
                .collect();
            m.insert(k.to_string(), Value::Array(entries));
        }
        let mut obj = json!({"N": self.n, "field": field, "basis": basis, "m": m});
        if let Some(p) = p {
            obj["p"] = json!(p);
        }
        obj
    }
}

impl AInfinity for ANStructure {
    fn field(&self) -> Field {
        self.field
    }
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }
    fn max_arity(&self) -> usize {
        self.n
    }
    fn op(&self, inputs: &[usize]) -> SparseVec {
        let k = inputs.len();
        if k < 2 || k >= self.m.len() {
            return SparseVec::new();
        }
        self.m[k].get(inputs).cloned().unwrap_or_default()
    }
}

/// Components `f_1, …, f_n` stored sparsely; missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ANMorphism {
    pub n: usize,
    /// `f[k]` for arity `k`; `f[0]` is unused
    pub f: Vec<BTreeMap<Vec<usize>, SparseVec>>,
}

impl ANMorphism {
    pub fn new(n: usize) -> Self {
        ANMorphism {
            n,
            f: vec![BTreeMap::new(); n + 1],
        }
    }

    /// The strict morphism with linear part `columns[i] = f_1(e_i)`.
    pub fn strict(columns: Vec<SparseVec>, n: usize) -> Self {
        let mut g = ANMorphism::new(n.max(1));
        for (i, c) in columns.into_iter().enumerate() {
            g.set(vec![i], c);
        }
        g
    }

    pub fn set(&mut self, inputs: Vec<usize>, v: SparseVec) {
        let k = inputs.len();
        if v.is_zero() {
            self.f[k].remove(&inputs);
        } else {
            self.f[k].insert(inputs, v);
        }
    }

    pub fn linear(&self, i: usize) -> SparseVec {
        self.f[1].get(&vec![i]).cloned().unwrap_or_default()
    }
}

impl Morphism for ANMorphism {
    fn max_arity(&self) -> usize {
        self.n
    }
    fn component(&self, inputs: &[usize]) -> SparseVec {
        let k = inputs.len();
        if k == 0 || k > self.n {
            return SparseVec::new();
        }
        self.f[k].get(inputs).cloned().unwrap_or_default()
    }
}
