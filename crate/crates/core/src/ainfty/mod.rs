//! A_N-algebras over a finite basis, the Stasheff identities for structures
//! and morphisms, homotopy transfer to persistent cohomology and gauge moves
//! between models.
//!
//! Sign conventions: `m_k` has degree `2−k`, `f_k` has degree `1−k`,
//! `(f⊗g)(a⊗b) = (−1)^{|g||a|} f(a)⊗g(b)`.
//!
//! * SI(n): `Σ_{r+s+t=n} (−1)^{r+st} m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t) = 0`
//! * MI(n): `Σ_{r+s+t=n} (−1)^{r+st} f_{r+1+t}(1^r ⊗ m_s ⊗ 1^t)
//!   = Σ_q Σ_{i_1+…+i_q=n} (−1)^w m'_q(f_{i_1} ⊗ … ⊗ f_{i_q})`,
//!   `w = Σ_j (q−j)(i_j−1)`.

pub mod contraction;
pub mod gauge;
pub mod structure;
pub mod transfer;

use rayon::prelude::*;

use crate::dga::FilteredDgAlgebra;
use crate::field::{Field, Scalar};
use crate::linalg::SparseVec;

pub use contraction::Contraction;
pub use gauge::{gauge_transform, GaugeFamily};
pub use structure::{ANMorphism, ANStructure, BasisElem, Support};
pub use transfer::{transfer, TransferOptions, Transferred};

/// An A∞-algebra with operations `m_1, …, m_{max_arity}` on a finite basis.
pub trait AInfinity: Sync {
    fn field(&self) -> Field;
    fn dim(&self) -> usize;
    fn degree(&self, i: usize) -> i32;
    fn max_arity(&self) -> usize;
    /// `m_k` on basis elements, `k = inputs.len() ≥ 1`.
    fn op(&self, inputs: &[usize]) -> SparseVec;

    /// Multilinear extension of [`AInfinity::op`].
    fn op_vec(&self, inputs: &[&SparseVec]) -> SparseVec {
        multilinear(self.field(), inputs, |t| self.op(t))
    }
}

/// Components `f_1, …, f_{max_arity}` of an A∞-morphism on source basis
/// tuples, with values in target coordinates.
pub trait Morphism: Sync {
    fn max_arity(&self) -> usize;
    fn component(&self, inputs: &[usize]) -> SparseVec;
}

/// Expands `op` multilinearly over the basis coefficients of the inputs.
pub fn multilinear(field: Field, inputs: &[&SparseVec], op: impl Fn(&[usize]) -> SparseVec) -> SparseVec {
    fn rec(
        inputs: &[&SparseVec],
        k: usize,
        tuple: &mut Vec<usize>,
        coef: Scalar,
        out: &mut SparseVec,
        op: &dyn Fn(&[usize]) -> SparseVec,
    ) {
        if k == inputs.len() {
            let v = op(tuple);
            out.add_scaled(&coef, &v);
            return;
        }
        for (i, c) in inputs[k].iter() {
            tuple.push(*i);
            rec(inputs, k + 1, tuple, &coef * c, out, op);
            tuple.pop();
        }
    }
    let mut out = SparseVec::new();
    if inputs.iter().any(|v| v.is_zero()) {
        return out;
    }
    rec(inputs, 0, &mut Vec::with_capacity(inputs.len()), field.one(), &mut out, &op);
    out
}

fn parity(k: i64) -> bool {
    k.rem_euclid(2) == 1
}

fn signed(field: Field, odd: bool) -> Scalar {
    if odd {
        -field.one()
    } else {
        field.one()
    }
}

/// Left-hand side `Σ (−1)^{r+st} F_{r+1+t}(1^r ⊗ m_s ⊗ 1^t)(b)` shared by
/// SI and MI; `outer` evaluates `F` on basis tuples.
fn insertion_sum<A: AInfinity + ?Sized>(
    a: &A,
    outer_max: usize,
    outer: &(dyn Fn(&[usize]) -> SparseVec + Sync),
    b: &[usize],
) -> SparseVec {
    let n = b.len();
    let field = a.field();
    let mut out = SparseVec::new();
    for s in 1..=n.min(a.max_arity()) {
        for r in 0..=n - s {
            let t = n - r - s;
            if r + 1 + t > outer_max {
                continue;
            }
            let inner = a.op(&b[r..r + s]);
            if inner.is_zero() {
                continue;
            }
            let before: i64 = b[..r].iter().map(|&j| a.degree(j) as i64).sum();
            let odd = parity((r + s * t) as i64) ^ parity(s as i64 * before);
            let sign = signed(field, odd);
            let mut tuple: Vec<usize> = Vec::with_capacity(r + 1 + t);
            tuple.extend_from_slice(&b[..r]);
            tuple.push(0);
            tuple.extend_from_slice(&b[r + s..]);
            for (u, c) in inner.iter() {
                tuple[r] = *u;
                let v = outer(&tuple);
                out.add_scaled(&(&sign * c), &v);
            }
        }
    }
    out
}

/// Left side of SI(n) on one basis tuple.
pub fn stasheff_residual<A: AInfinity + ?Sized>(a: &A, b: &[usize]) -> SparseVec {
    insertion_sum(a, a.max_arity(), &|t| a.op(t), b)
}

/// All compositions of `n` into `q` positive parts bounded by `max`.
pub fn compositions(n: usize, q: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, q: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if q == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in 1..=max.min(n.saturating_sub(q - 1)) {
            cur.push(i);
            rec(n - i, q - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, q, max, &mut Vec::new(), &mut out);
    out
}

/// `Σ_q Σ (−1)^w m'_q(f_{i_1} ⊗ … ⊗ f_{i_q})(b)`, optionally restricted to
/// the terms selected by `keep(q, parts)`.
pub fn composite_sum<A, B, F>(src: &A, tgt: &B, f: &F, b: &[usize], keep: &dyn Fn(usize, &[usize]) -> bool) -> SparseVec
where
    A: AInfinity + ?Sized,
    B: AInfinity + ?Sized,
    F: Morphism + ?Sized,
{
    let n = b.len();
    let field = tgt.field();
    let mut out = SparseVec::new();
    for q in 1..=n.min(tgt.max_arity()) {
        for parts in compositions(n, q, f.max_arity()) {
            if !keep(q, &parts) {
                continue;
            }
            let mut odd = false;
            let mut start = 0;
            let mut before: i64 = 0;
            let mut values = Vec::with_capacity(q);
            for (j, &i) in parts.iter().enumerate() {
                odd ^= parity(((q - 1 - j) * (i - 1)) as i64);
                odd ^= parity((1 - i as i64) * before);
                values.push(f.component(&b[start..start + i]));
                before += b[start..start + i].iter().map(|&x| src.degree(x) as i64).sum::<i64>();
                start += i;
            }
            if values.iter().any(|v| v.is_zero()) {
                continue;
            }
            let refs: Vec<&SparseVec> = values.iter().collect();
            out.add_scaled(&signed(field, odd), &tgt.op_vec(&refs));
        }
    }
    out
}

/// `LHS − RHS` of MI(n) for `f : src → tgt` on one basis tuple.
pub fn morphism_residual<A, B, F>(src: &A, tgt: &B, f: &F, b: &[usize]) -> SparseVec
where
    A: AInfinity + ?Sized,
    B: AInfinity + ?Sized,
    F: Morphism + ?Sized,
{
    let mut lhs = insertion_sum(src, f.max_arity(), &|t| f.component(t), b);
    let rhs = composite_sum(src, tgt, f, b, &|_, _| true);
    lhs.add_scaled(&-tgt.field().one(), &rhs);
    lhs
}

/// A failing identity: the basis tuple and the nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub tuple: Vec<usize>,
    pub residual: SparseVec,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails on {:?}: residual {:?}", self.identity, self.tuple, self.residual)
    }
}

/// Every `n`-tuple of `0..dim`, lexicographically.
pub fn tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if dim == 0 && n > 0 {
        return out;
    }
    let total = dim.pow(n as u32);
    out.reserve(total);
    for mut k in 0..total {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = k % dim;
            k /= dim;
        }
        out.push(t);
    }
    out
}

fn first_violation(identity: String, dim: usize, n: usize, residual: impl Fn(&[usize]) -> SparseVec + Sync) -> Result<(), Violation> {
    let found = tuples(dim, n).into_par_iter().find_first(|t| !residual(t).is_zero());
    match found {
        None => Ok(()),
        Some(t) => Err(Violation {
            identity,
            residual: residual(&t),
            tuple: t,
        }),
    }
}

/// Evaluates SI(n) on every basis `n`-tuple.
pub fn check_stasheff<A: AInfinity + ?Sized>(a: &A, n: usize) -> Result<(), Violation> {
    first_violation(format!("SI({n})"), a.dim(), n, |t| stasheff_residual(a, t))
}

/// Evaluates MI(n) on every basis `n`-tuple.
pub fn check_morphism<A, B, F>(f: &F, src: &A, tgt: &B, n: usize) -> Result<(), Violation>
where
    A: AInfinity + ?Sized,
    B: AInfinity + ?Sized,
    F: Morphism + ?Sized,
{
    first_violation(format!("MI({n})"), src.dim(), n, |t| morphism_residual(src, tgt, f, t))
}

/// A filtered dg algebra viewed as an A∞-algebra: `m_1 = d`, `m_2` the
/// product, nothing above.
pub struct DgAsAInfinity<'a>(pub &'a FilteredDgAlgebra);

impl AInfinity for DgAsAInfinity<'_> {
    fn field(&self) -> Field {
        self.0.field
    }
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn degree(&self, i: usize) -> i32 {
        self.0.degree(i)
    }
    fn max_arity(&self) -> usize {
        2
    }
    fn op(&self, inputs: &[usize]) -> SparseVec {
        match inputs {
            [i] => self.0.d[*i].clone(),
            [i, j] => self.0.mul_basis(*i, *j).cloned().unwrap_or_default(),
            _ => SparseVec::new(),
        }
    }
    fn op_vec(&self, inputs: &[&SparseVec]) -> SparseVec {
        match inputs {
            [x] => self.0.diff(x),
            [x, y] => self.0.mul(x, y),
            _ => SparseVec::new(),
        }
    }
}

/// The identity morphism of an A∞-algebra.
pub struct Identity(pub Field);

impl Morphism for Identity {
    fn max_arity(&self) -> usize {
        1
    }
    fn component(&self, inputs: &[usize]) -> SparseVec {
        match inputs {
            [i] => SparseVec::unit(*i, self.0),
            _ => SparseVec::new(),
        }
    }
}
