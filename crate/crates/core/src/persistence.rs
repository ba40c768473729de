//! Persistent cohomology of a filtered cochain complex.
//!
//! `F^p` is spanned by the basis elements of value `≥ p`, so the modules
//! `H^n(F^p)` grow as `p` decreases. A class represented in `F^{p1}` that
//! becomes a coboundary in `F^{p2}` gives the bar `(p2, p1]`; classes that
//! never die give `(−∞, p1]`.
//!
//! Besides the reduction-based barcode this module computes the same numbers
//! through ranks of induced maps, the homology barcode of the subcomplexes
//! `X_p = {value < p}`, the duality report and slices of the exact couple.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::barcode::Barcode;
use crate::dga::FilteredDgAlgebra;
use crate::error::{Error, Result};
use crate::interval::{ExtValue, Interval};
use crate::linalg::{column_reduce, rank, Reduction, SparseMatrix, SparseVec};

/// A bar of the relative cohomology barcode with its representative cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bar {
    pub degree: i32,
    pub interval: Interval,
    /// cocycle in `F^{upper}` (basis coordinates)
    pub rep: SparseVec,
    /// `d(witness) = rep` with `witness ∈ F^{lower}`, for bounded bars
    pub witness: Option<SparseVec>,
    /// reduction positions of the birth and death cells
    pub tau: usize,
    pub sigma: Option<usize>,
}

/// The coboundary matrix reduced in the order "value descending, degree
/// descending, index ascending", which lists every `F^p` as a prefix.
#[derive(Clone, Debug)]
pub struct Persistence {
    pub alg: FilteredDgAlgebra,
    pub scale: Vec<BigRational>,
    /// position -> basis index
    pub order: Vec<usize>,
    /// basis index -> position
    pub pos: Vec<usize>,
    pub red: Reduction,
}

impl Persistence {
    pub fn new(alg: &FilteredDgAlgebra) -> Self {
        let n = alg.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            alg.value(b)
                .cmp(alg.value(a))
                .then(alg.degree(b).cmp(&alg.degree(a)))
                .then(a.cmp(&b))
        });
        let mut pos = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let columns = order
            .iter()
            .map(|&i| alg.d[i].reindex(|j| Some(pos[j])))
            .collect();
        let red = column_reduce(&SparseMatrix::from_columns(n, alg.field, columns));
        Persistence {
            alg: alg.clone(),
            scale: alg.scale(),
            order,
            pos,
            red,
        }
    }

    fn value_at(&self, position: usize) -> &BigRational {
        self.alg.value(self.order[position])
    }

    fn degree_at(&self, position: usize) -> i32 {
        self.alg.degree(self.order[position])
    }

    /// Converts a vector in position coordinates to basis coordinates.
    pub fn to_basis(&self, v: &SparseVec) -> SparseVec {
        v.reindex(|k| Some(self.order[k]))
    }

    pub fn to_positions(&self, v: &SparseVec) -> SparseVec {
        v.reindex(|i| Some(self.pos[i]))
    }

    /// Number of positions with value `≥ p`.
    pub fn prefix_len(&self, p: &BigRational) -> usize {
        self.order.partition_point(|&i| self.alg.value(i) >= p)
    }

    /// Relative cohomology bars with representatives, sorted by degree,
    /// interval and birth position.
    pub fn bars(&self) -> Vec<Bar> {
        let n = self.order.len();
        let mut paired = vec![false; n];
        let mut out = Vec::new();
        for (&tau, &sigma) in &self.red.pivot_col {
            paired[tau] = true;
            if self.value_at(tau) == self.value_at(sigma) {
                continue;
            }
            out.push((
                tau,
                Bar {
                    degree: self.degree_at(tau),
                    interval: Interval {
                        lower: ExtValue::Finite(self.value_at(sigma).clone()),
                        upper: ExtValue::Finite(self.value_at(tau).clone()),
                    },
                    rep: self.to_basis(&self.red.r.columns[sigma]),
                    witness: Some(self.to_basis(&self.red.v.columns[sigma])),
                    tau,
                    sigma: Some(sigma),
                },
            ));
        }
        for tau in 0..n {
            if !paired[tau] && self.red.r.columns[tau].is_zero() {
                out.push((
                    tau,
                    Bar {
                        degree: self.degree_at(tau),
                        interval: Interval {
                            lower: ExtValue::NegInf,
                            upper: ExtValue::Finite(self.value_at(tau).clone()),
                        },
                        rep: self.to_basis(&self.red.v.columns[tau]),
                        witness: None,
                        tau,
                        sigma: None,
                    },
                ));
            }
        }
        out.sort_by(|a, b| (a.1.degree, &a.1.interval, a.0).cmp(&(b.1.degree, &b.1.interval, b.0)));
        out.into_iter().map(|(_, b)| b).collect()
    }

    pub fn barcode(&self) -> Barcode {
        let mut b = Barcode::new();
        for bar in self.bars() {
            b.add(bar.degree, bar.interval, 1);
        }
        b
    }

    /// Cohomology of the subcomplexes `X_p` themselves, read off the same
    /// pairing: `(τ, σ)` gives `(value σ, value τ]` in degree `deg σ`, an
    /// unpaired cocycle gives `(value τ, +∞)`.
    pub fn absolute_barcode(&self) -> Barcode {
        let mut b = Barcode::new();
        let n = self.order.len();
        let mut paired = vec![false; n];
        for (&tau, &sigma) in &self.red.pivot_col {
            paired[tau] = true;
            if self.value_at(tau) != self.value_at(sigma) {
                b.add(
                    self.degree_at(sigma),
                    Interval {
                        lower: ExtValue::Finite(self.value_at(sigma).clone()),
                        upper: ExtValue::Finite(self.value_at(tau).clone()),
                    },
                    1,
                );
            }
        }
        for tau in 0..n {
            if !paired[tau] && self.red.r.columns[tau].is_zero() {
                b.add(
                    self.degree_at(tau),
                    Interval {
                        lower: ExtValue::Finite(self.value_at(tau).clone()),
                        upper: ExtValue::PosInf,
                    },
                    1,
                );
            }
        }
        b
    }

    /// `β^n_{p,p'}`: rank of `H^n(F^p) → H^n(F^{p'})` for `p ≥ p'`, computed
    /// as `dim(Z_p + B_{p'}) − dim B_{p'}` without using the barcode.
    pub fn persistent_rank(&self, n: i32, p: &ExtValue, p2: &ExtValue) -> Result<usize> {
        if p < p2 {
            return Err(Error::Precondition(format!("persistent rank needs p ≥ p', got {p} < {p2}")));
        }
        let alg = &self.alg;
        let inside = |i: usize, q: &ExtValue| match q {
            ExtValue::NegInf => true,
            ExtValue::PosInf => false,
            ExtValue::Finite(q) => alg.value(i) >= q,
        };
        let cells: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) == n && inside(i, p)).collect();
        let cocycle_matrix = SparseMatrix::from_columns(alg.dim(), alg.field, cells.iter().map(|&i| alg.d[i].clone()).collect());
        let z: Vec<SparseVec> = column_reduce(&cocycle_matrix)
            .kernel()
            .into_iter()
            .map(|k| k.reindex(|j| Some(cells[j])))
            .collect();
        let b: Vec<SparseVec> = (0..alg.dim())
            .filter(|&i| alg.degree(i) == n - 1 && inside(i, p2))
            .map(|i| alg.d[i].clone())
            .collect();
        let rb = rank(&SparseMatrix::from_columns(alg.dim(), alg.field, b.clone()));
        let mut both = b;
        both.extend(z);
        Ok(rank(&SparseMatrix::from_columns(alg.dim(), alg.field, both)) - rb)
    }

    /// Degrees in which the complex has cells.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.alg.basis.iter().map(|b| b.degree).collect();
        d.sort();
        d.dedup();
        d
    }

    /// Table of `β^n_{p,p'}` over scale indices `i ≥ j`.
    pub fn beta_table(&self, n: i32) -> BetaTable {
        let s = &self.scale;
        let mut t = BTreeMap::new();
        for i in 0..s.len() {
            for j in 0..=i {
                let b = self
                    .persistent_rank(n, &ExtValue::Finite(s[i].clone()), &ExtValue::Finite(s[j].clone()))
                    .expect("ordered");
                t.insert((i, j), b);
            }
        }
        BetaTable { len: s.len(), beta: t }
    }

    pub fn multiplicities(&self, n: i32) -> Multiplicities {
        Multiplicities::from_beta(&self.beta_table(n), &self.scale)
    }
}

/// `β` on scale indices; indices past the end stand for `+∞` where `β = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable {
    pub len: usize,
    pub beta: BTreeMap<(usize, usize), usize>,
}

impl BetaTable {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        if i >= self.len {
            0
        } else {
            self.beta[&(i, j)] as i64
        }
    }
}

/// Interval multiplicities of one degree: bounded bars `(p', p]` and bars
/// `(−∞, p]`, keyed by scale indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multiplicities {
    pub bounded: BTreeMap<(usize, usize), i64>,
    pub unbounded: BTreeMap<usize, i64>,
}

impl Multiplicities {
    /// `μ_{p,p'} = β_{p+1,p'} − β_{p,p'} + β_{p,p'+1} − β_{p+1,p'+1}` and
    /// `μ_p = β_{p,min} − β_{p+1,min}`, with `+1` the successor in the scale.
    pub fn from_beta(t: &BetaTable, _scale: &[BigRational]) -> Self {
        let mut m = Multiplicities::default();
        for i in 0..t.len {
            let mu = t.get(i, 0) - t.get(i + 1, 0);
            if mu != 0 {
                m.unbounded.insert(i, mu);
            }
            for j in 0..i {
                let mu = t.get(i + 1, j) - t.get(i, j) + t.get(i, j + 1) - t.get(i + 1, j + 1);
                if mu != 0 {
                    m.bounded.insert((i, j), mu);
                }
            }
        }
        m
    }

    /// Inverse formula: `β_{p,p'} = Σ_{p''≥p} (μ_{p''} + Σ_{p'''<p'} μ_{p'',p'''})`.
    pub fn to_beta(&self, len: usize) -> BetaTable {
        let mut beta = BTreeMap::new();
        for i in 0..len {
            for j in 0..=i {
                let mut b = 0i64;
                for k in i..len {
                    b += self.unbounded.get(&k).copied().unwrap_or(0);
                    for l in 0..j {
                        b += self.bounded.get(&(k, l)).copied().unwrap_or(0);
                    }
                }
                beta.insert((i, j), b.max(0) as usize);
            }
        }
        BetaTable { len, beta }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.bounded.values().chain(self.unbounded.values()).all(|&m| m >= 0)
    }

    pub fn to_barcode(&self, degree: i32, scale: &[BigRational]) -> Barcode {
        let mut b = Barcode::new();
        for (&(i, j), &m) in &self.bounded {
            b.add(
                degree,
                Interval {
                    lower: ExtValue::Finite(scale[j].clone()),
                    upper: ExtValue::Finite(scale[i].clone()),
                },
                m.max(0) as usize,
            );
        }
        for (&i, &m) in &self.unbounded {
            b.add(
                degree,
                Interval {
                    lower: ExtValue::NegInf,
                    upper: ExtValue::Finite(scale[i].clone()),
                },
                m.max(0) as usize,
            );
        }
        b
    }
}

/// Homology barcode of the increasing filtration `X_p = {value < p}`: reduce
/// the boundary matrix in the order "value ascending, degree ascending".
pub fn homology_barcode(alg: &FilteredDgAlgebra) -> Barcode {
    let n = alg.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        alg.value(a)
            .cmp(alg.value(b))
            .then(alg.degree(a).cmp(&alg.degree(b)))
            .then(a.cmp(&b))
    });
    let mut pos = vec![0; n];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    let mut raw: Vec<Vec<(usize, crate::field::Scalar)>> = vec![Vec::new(); n];
    for i in 0..n {
        for (j, c) in alg.d[i].iter() {
            raw[pos[*j]].push((pos[i], c.clone()));
        }
    }
    let boundary = SparseMatrix::from_columns(n, alg.field, raw.into_iter().map(SparseVec::from_entries).collect());
    let red = column_reduce(&boundary);
    let mut paired = vec![false; n];
    let mut b = Barcode::new();
    let val = |k: usize| alg.value(order[k]).clone();
    for (&sigma, &tau) in &red.pivot_col {
        paired[sigma] = true;
        if val(sigma) != val(tau) {
            b.add(
                alg.degree(order[sigma]),
                Interval {
                    lower: ExtValue::Finite(val(sigma)),
                    upper: ExtValue::Finite(val(tau)),
                },
                1,
            );
        }
    }
    for sigma in 0..n {
        if !paired[sigma] && red.r.columns[sigma].is_zero() {
            b.add(
                alg.degree(order[sigma]),
                Interval {
                    lower: ExtValue::Finite(val(sigma)),
                    upper: ExtValue::PosInf,
                },
                1,
            );
        }
    }
    b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub clause: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ClauseReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Compares the homology barcode with the relative cohomology barcode:
/// no unbounded-below homology bars and no unbounded-above cohomology bars;
/// bounded homology bars of degree `n` equal bounded cohomology bars of
/// degree `n+1`; unbounded families correspond through `I ↦ ℝ ∖ I`.
pub fn check_duality(alg: &FilteredDgAlgebra) -> Vec<ClauseReport> {
    let hom = homology_barcode(alg);
    let coh = Persistence::new(alg).barcode();
    let mut out = Vec::new();

    let bad = hom
        .iter()
        .find(|(_, i, _)| !i.is_bounded_below())
        .map(|(d, i, _)| format!("homology H{d} {i}"))
        .or_else(|| {
            coh.iter()
                .find(|(_, i, _)| !i.is_bounded_above())
                .map(|(d, i, _)| format!("cohomology H{d} {i}"))
        });
    out.push(ClauseReport {
        clause: "unbounded sides".into(),
        status: if bad.is_none() { "pass" } else { "fail" }.into(),
        witness: bad,
    });

    let mut hb = Barcode::new();
    let mut cb = Barcode::new();
    for (d, i, m) in hom.iter() {
        if i.is_bounded_above() && i.is_bounded_below() {
            hb.add(d + 1, i.clone(), m);
        }
    }
    for (d, i, m) in coh.iter() {
        if i.is_bounded_above() && i.is_bounded_below() {
            cb.add(d, i.clone(), m);
        }
    }
    out.push(mismatch_report("bounded bars shift by one degree", &hb, &cb));

    let mut hu = Barcode::new();
    let mut cu = Barcode::new();
    for (d, i, m) in hom.iter() {
        if !i.is_bounded_above() && i.is_bounded_below() {
            // ℝ ∖ (a, +∞) = (−∞, a]
            hu.add(
                d,
                Interval {
                    lower: ExtValue::NegInf,
                    upper: i.lower.clone(),
                },
                m,
            );
        }
    }
    for (d, i, m) in coh.iter() {
        if !i.is_bounded_below() && i.is_bounded_above() {
            cu.add(d, i.clone(), m);
        }
    }
    out.push(mismatch_report("unbounded bars by complement", &hu, &cu));
    out
}

fn mismatch_report(clause: &str, a: &Barcode, b: &Barcode) -> ClauseReport {
    let witness = a
        .iter()
        .find(|(d, i, m)| b.multiplicity(*d, i) != *m)
        .map(|(d, i, m)| format!("H{d} {i} x{m} on the homology side, x{} on the cohomology side", b.multiplicity(d, i)))
        .or_else(|| {
            b.iter()
                .find(|(d, i, m)| a.multiplicity(*d, i) != *m)
                .map(|(d, i, m)| format!("H{d} {i} x{m} on the cohomology side only"))
        });
    ClauseReport {
        clause: clause.into(),
        status: if witness.is_none() { "pass" } else { "fail" }.into(),
        witness,
    }
}

/// Cohomology of `F^{lo} / F^{hi}` (basis elements with `lo ≤ value < hi`)
/// in one degree, with a fixed basis of representatives.
struct SubquotientCohomology {
    members: Vec<bool>,
    reps: Vec<SparseVec>,
    n_boundaries: usize,
    classifier: Reduction,
}

impl SubquotientCohomology {
    fn new(alg: &FilteredDgAlgebra, lo: &ExtValue, hi: &ExtValue, n: i32) -> Self {
        let members: Vec<bool> = (0..alg.dim())
            .map(|i| {
                let v = ExtValue::Finite(alg.value(i).clone());
                lo <= &v && &v < hi
            })
            .collect();
        let project = |v: &SparseVec| v.reindex(|i| members[i].then_some(i));
        let cells_n: Vec<usize> = (0..alg.dim()).filter(|&i| members[i] && alg.degree(i) == n).collect();
        let dn = SparseMatrix::from_columns(alg.dim(), alg.field, cells_n.iter().map(|&i| project(&alg.d[i])).collect());
        let cocycles: Vec<SparseVec> = column_reduce(&dn)
            .kernel()
            .into_iter()
            .map(|k| k.reindex(|j| Some(cells_n[j])))
            .collect();
        let boundaries: Vec<SparseVec> = (0..alg.dim())
            .filter(|&i| members[i] && alg.degree(i) == n - 1)
            .map(|i| project(&alg.d[i]))
            .collect();
        let mut cols = boundaries.clone();
        cols.extend(cocycles.iter().cloned());
        let red = column_reduce(&SparseMatrix::from_columns(alg.dim(), alg.field, cols));
        let nb = boundaries.len();
        let reps: Vec<SparseVec> = cocycles
            .iter()
            .enumerate()
            .filter(|(k, _)| !red.r.columns[nb + k].is_zero())
            .map(|(_, z)| z.clone())
            .collect();
        let mut cols = boundaries;
        cols.extend(reps.iter().cloned());
        let classifier = column_reduce(&SparseMatrix::from_columns(alg.dim(), alg.field, cols));
        SubquotientCohomology {
            members,
            reps,
            n_boundaries: nb,
            classifier,
        }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class of a cocycle (after projection) in the representative basis.
    fn classify(&self, z: &SparseVec) -> SparseVec {
        let z = z.reindex(|i| self.members[i].then_some(i));
        let x = self.classifier.solve(&z).expect("argument is a cocycle of the subquotient");
        let nb = self.n_boundaries;
        x.reindex(|k| (k >= nb).then(|| k - nb))
    }
}

/// One triangle of the exact couple: `D^{hi} → D^{lo} → E → D^{hi}[1]`.
#[derive(Clone, Debug)]
pub struct ExactCoupleSlice {
    pub dim_d_hi: usize,
    pub dim_d_lo: usize,
    pub dim_e: usize,
    pub dim_d_hi_next: usize,
    pub i: SparseMatrix,
    pub j: SparseMatrix,
    pub k: SparseMatrix,
    pub i_next: SparseMatrix,
}

impl ExactCoupleSlice {
    /// Exactness at `D^{lo}`, at `E`, and at `D^{hi}` one degree up.
    pub fn exactness(&self) -> [bool; 3] {
        let ji = self.j.mul(&self.i).is_zero();
        let kj = self.k.mul(&self.j).is_zero();
        let ik = self.i_next.mul(&self.k).is_zero();
        let (ri, rj, rk, rin) = (rank(&self.i), rank(&self.j), rank(&self.k), rank(&self.i_next));
        [
            ji && ri == self.dim_d_lo - rj,
            kj && rj == self.dim_e - rk,
            ik && rk == self.dim_d_hi_next - rin,
        ]
    }
}

/// Slice of the exact couple for `lo ≤ hi` in degree `n`.
pub fn exact_couple_slice(alg: &FilteredDgAlgebra, lo: &ExtValue, hi: &ExtValue, n: i32) -> Result<ExactCoupleSlice> {
    if lo > hi {
        return Err(Error::Precondition(format!("slice needs p' ≤ p, got {lo} > {hi}")));
    }
    let inf = ExtValue::PosInf;
    let d_hi = SubquotientCohomology::new(alg, hi, &inf, n);
    let d_lo = SubquotientCohomology::new(alg, lo, &inf, n);
    let e = SubquotientCohomology::new(alg, lo, hi, n);
    let d_hi_next = SubquotientCohomology::new(alg, hi, &inf, n + 1);
    let d_lo_next = SubquotientCohomology::new(alg, lo, &inf, n + 1);
    let field = alg.field;
    let i = SparseMatrix::from_columns(d_lo.dim(), field, d_hi.reps.iter().map(|z| d_lo.classify(z)).collect());
    let j = SparseMatrix::from_columns(e.dim(), field, d_lo.reps.iter().map(|z| e.classify(z)).collect());
    let k = SparseMatrix::from_columns(d_hi_next.dim(), field, e.reps.iter().map(|y| d_hi_next.classify(&alg.diff(y))).collect());
    let i_next = SparseMatrix::from_columns(d_lo_next.dim(), field, d_hi_next.reps.iter().map(|z| d_lo_next.classify(z)).collect());
    Ok(ExactCoupleSlice {
        dim_d_hi: d_hi.dim(),
        dim_d_lo: d_lo.dim(),
        dim_e: e.dim(),
        dim_d_hi_next: d_hi_next.dim(),
        i,
        j,
        k,
        i_next,
    })
}

/// `d = j ∘ k : H^n(F^a/F^b) → H^{n+1}(F^b/F^c)` for `a ≤ b ≤ c`.
pub fn couple_differential(alg: &FilteredDgAlgebra, a: &ExtValue, b: &ExtValue, c: &ExtValue, n: i32) -> SparseMatrix {
    let inf = ExtValue::PosInf;
    let e_ab = SubquotientCohomology::new(alg, a, b, n);
    let d_b = SubquotientCohomology::new(alg, b, &inf, n + 1);
    let e_bc = SubquotientCohomology::new(alg, b, c, n + 1);
    let cols = e_ab
        .reps
        .iter()
        .map(|y| {
            let class = d_b.classify(&alg.diff(y));
            let mut z = SparseVec::new();
            for (k, coef) in class.iter() {
                z.add_scaled(coef, &d_b.reps[*k]);
            }
            e_bc.classify(&z)
        })
        .collect();
    SparseMatrix::from_columns(e_bc.dim(), alg.field, cols)
}

/// Checks exactness on every adjacent slice and `d∘d = 0` on every chain
/// `a < b < c < e` of scale points (with `+∞` appended). Returns the first
/// failure.
pub fn verify_exact_couple(alg: &FilteredDgAlgebra) -> std::result::Result<(), String> {
    let mut pts: Vec<ExtValue> = alg.scale().into_iter().map(ExtValue::Finite).collect();
    pts.push(ExtValue::PosInf);
    let mut degrees: Vec<i32> = alg.basis.iter().map(|b| b.degree).collect();
    degrees.sort();
    degrees.dedup();
    if let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) {
        degrees = (lo - 1..=hi).collect();
    }
    for n in &degrees {
        for w in pts.windows(2) {
            let s = exact_couple_slice(alg, &w[0], &w[1], *n).map_err(|e| e.to_string())?;
            let ex = s.exactness();
            for (k, ok) in ex.iter().enumerate() {
                if !ok {
                    return Err(format!("exactness at vertex {k} fails for slice ({}, {}] in degree {n}", w[0], w[1]));
                }
            }
        }
        let m = pts.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for e in c + 1..m {
                        let d1 = couple_differential(alg, &pts[a], &pts[b], &pts[c], *n);
                        let d2 = couple_differential(alg, &pts[b], &pts[c], &pts[e], n + 1);
                        if !d2.mul(&d1).is_zero() {
                            return Err(format!(
                                "d∘d ≠ 0 on {} ≤ {} ≤ {} ≤ {} in degree {n}",
                                pts[a], pts[b], pts[c], pts[e]
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
