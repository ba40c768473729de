//! Gauge moves between minimal models.
//!
//! A morphism `g` with invertible `g_1` transports a structure `m` to the
//! unique `m''` making `g : (H, m) → (H, m'')` an A∞-morphism: MI(n) solved
//! for its `q = n` term,
//!
//! `m''_n(g_1^{⊗n}) = LHS_n − Σ_{2≤q<n} RHS_q`.
//!
//! The family of moves used by the distance search has linear parts acting
//! on groups of bars with equal degree and interval (the same matrix in every
//! Adams block, so shifts are respected), optionally plus one higher
//! component supported on a single basis tuple.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::structure::{ANMorphism, ANStructure};
use super::{composite_sum, insertion_sum, morphism_residual, multilinear, parity, signed, tuples, AInfinity, Morphism};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::interval::Interval;
use crate::linalg::{column_reduce, dense_rank, SparseMatrix, SparseVec};

/// Inverse of the linear part, as columns; errors if `g_1` is singular or
/// leaves its degree and Adams block.
fn linear_inverse(a: &ANStructure, g: &ANMorphism) -> Result<Vec<SparseVec>> {
    let dim = a.dim();
    let cols: Vec<SparseVec> = (0..dim).map(|i| g.linear(i)).collect();
    for (i, c) in cols.iter().enumerate() {
        let (d, b) = (a.basis[i].degree, a.basis[i].block);
        if c.iter().any(|(j, _)| a.basis[*j].degree != d || a.basis[*j].block != b) {
            return Err(Error::Precondition(format!("g_1 moves basis element {i} out of its degree or Adams block")));
        }
    }
    let red = column_reduce(&SparseMatrix::from_columns(dim, a.field, cols));
    if red.rank() < dim {
        return Err(Error::Precondition("g_1 is not invertible".into()));
    }
    Ok((0..dim)
        .map(|i| red.solve(&SparseVec::unit(i, a.field)).expect("invertible"))
        .collect())
}

/// The structure `m''` with `g : (H, m) → (H, m'')` an A∞-isomorphism.
pub fn gauge_transform(a: &ANStructure, g: &ANMorphism) -> Result<ANStructure> {
    let inv = linear_inverse(a, g)?;
    let dim = a.dim();
    let field = a.field;
    let mut out = ANStructure::new(field, a.scale.clone(), a.basis.clone(), a.n);
    for n in 2..=a.n {
        let values: HashMap<Vec<usize>, SparseVec> = tuples(dim, n)
            .into_par_iter()
            .filter_map(|b| {
                let mut v = insertion_sum(a, g.max_arity(), &|t| g.component(t), &b);
                let rhs = composite_sum(a, &out, g, &b, &|q, _| q < n);
                v.add_scaled(&-field.one(), &rhs);
                (!v.is_zero()).then_some((b, v))
            })
            .collect();
        let level: Vec<(Vec<usize>, SparseVec)> = tuples(dim, n)
            .into_par_iter()
            .filter_map(|c| {
                let cols: Vec<&SparseVec> = c.iter().map(|&i| &inv[i]).collect();
                let v = multilinear(field, &cols, |t| values.get(t).cloned().unwrap_or_default());
                (!v.is_zero()).then_some((c, v))
            })
            .collect();
        for (c, v) in level {
            out.set(c, v);
        }
    }
    Ok(out)
}

/// Groups of bars with equal degree and interval: `(bar ids, basis index of
/// each bar in each Adams block)`.
fn bar_groups(a: &ANStructure) -> Vec<(Vec<usize>, BTreeMap<usize, Vec<usize>>)> {
    let mut by_key: BTreeMap<(i32, Interval), Vec<usize>> = BTreeMap::new();
    let mut where_: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, e) in a.basis.iter().enumerate() {
        where_.insert((e.bar, e.block), i);
        if e.is_unshifted() {
            let iv = Interval {
                lower: e.lower.clone(),
                upper: crate::interval::ExtValue::Finite(e.upper.clone()),
            };
            by_key.entry((e.degree, iv)).or_default().push(e.bar);
        }
    }
    by_key
        .into_values()
        .map(|bars| {
            let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &bar in &bars {
                for (&(bb, blk), &i) in where_.range((bar, 0)..=(bar, usize::MAX)) {
                    debug_assert_eq!(bb, bar);
                    blocks.entry(blk).or_default().push(i);
                }
            }
            (bars, blocks)
        })
        .collect()
}

/// All invertible `k × k` matrices over `F_p` (row-major), when there are at
/// most `cap` candidates to scan.
fn general_linear(field: Field, k: usize, cap: usize) -> Option<Vec<Vec<Scalar>>> {
    let Field::Fp(p) = field else { return None };
    let total = (p as usize).checked_pow((k * k) as u32)?;
    if total > cap {
        return None;
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let entries: Vec<Scalar> = (0..k * k)
            .map(|_| {
                let v = (c % p as usize) as i64;
                c /= p as usize;
                field.from_i64(v)
            })
            .collect();
        let rows: Vec<Vec<Scalar>> = entries.chunks(k).map(|r| r.to_vec()).collect();
        if dense_rank(&rows) == k {
            out.push(entries);
        }
    }
    Some(out)
}

fn random_invertible(field: Field, k: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        let entries: Vec<Scalar> = (0..k * k).map(|_| field.random(rng)).collect();
        let rows: Vec<Vec<Scalar>> = entries.chunks(k).map(|r| r.to_vec()).collect();
        if dense_rank(&rows) == k {
            return entries;
        }
    }
}

/// Linear part from one matrix per bar group.
fn linear_from(a: &ANStructure, groups: &[(Vec<usize>, BTreeMap<usize, Vec<usize>>)], mats: &[&Vec<Scalar>]) -> Vec<SparseVec> {
    let mut cols = vec![SparseVec::new(); a.dim()];
    for ((bars, blocks), mat) in groups.iter().zip(mats) {
        let k = bars.len();
        for idx in blocks.values() {
            for j in 0..k {
                let entries = (0..k).map(|i| (idx[i], mat[i * k + j].clone())).collect();
                cols[idx[j]] = SparseVec::from_entries(entries);
            }
        }
    }
    cols
}

/// A finite set of gauge moves, with a flag telling whether it is the whole
/// bounded family or a seeded sample of it.
#[derive(Clone, Debug)]
pub struct GaugeFamily {
    pub members: Vec<ANMorphism>,
    pub exhaustive: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyOptions {
    /// number of basis tuples a higher component may be supported on (0 or 1)
    pub k: usize,
    /// largest family enumerated in full
    pub budget: usize,
    pub seed: u64,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            k: 1,
            budget: 5000,
            seed: 0,
        }
    }
}

/// Candidate linear parts: every product of invertible group matrices when
/// enumerable, a seeded sample otherwise. The identity comes first.
pub fn linear_family(a: &ANStructure, budget: usize, seed: u64) -> (Vec<Vec<SparseVec>>, bool) {
    let groups = bar_groups(a);
    let field = a.field;
    let identity: Vec<SparseVec> = (0..a.dim()).map(|i| SparseVec::unit(i, field)).collect();
    let per_group: Option<Vec<Vec<Vec<Scalar>>>> = groups.iter().map(|(bars, _)| general_linear(field, bars.len(), budget)).collect();
    if let Some(lists) = per_group {
        let total = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()));
        if let Some(total) = total.filter(|&t| t <= budget) {
            let mut out = vec![identity.clone()];
            for code in 0..total {
                let mut c = code;
                let mats: Vec<&Vec<Scalar>> = lists
                    .iter()
                    .map(|l| {
                        let m = &l[c % l.len()];
                        c /= l.len();
                        m
                    })
                    .collect();
                let cols = linear_from(a, &groups, &mats);
                if cols != identity {
                    out.push(cols);
                }
            }
            return (out, true);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![identity];
    for _ in 1..budget.max(1) {
        let mats: Vec<Vec<Scalar>> = groups.iter().map(|(bars, _)| random_invertible(field, bars.len(), &mut rng)).collect();
        let refs: Vec<&Vec<Scalar>> = mats.iter().collect();
        out.push(linear_from(a, &groups, &refs));
    }
    (out, false)
}

/// Single-tuple perturbations `g_i(t) = c·e` for `2 ≤ i < N` with `e` of the
/// right degree and Adams block and `c` ranging over the nonzero scalars of
/// `F_p` (only `c = 1` over `Q`).
fn perturbations(a: &ANStructure) -> (Vec<(Vec<usize>, SparseVec)>, bool) {
    let field = a.field;
    let scalars: Vec<Scalar> = match field {
        Field::Fp(p) => (1..p as i64).map(|v| field.from_i64(v)).collect(),
        Field::Q => vec![field.one()],
    };
    let mut out = Vec::new();
    for i in 2..a.n {
        for t in tuples(a.dim(), i) {
            let deg: i32 = t.iter().map(|&k| a.basis[k].degree).sum::<i32>() + 1 - i as i32;
            let block = t.iter().map(|&k| a.basis[k].block).min().expect("nonempty");
            for e in a.slot(deg, block) {
                for c in &scalars {
                    out.push((t.clone(), SparseVec::from_entries(vec![(e, c.clone())])));
                }
            }
        }
    }
    (out, field != Field::Q)
}

/// The bounded gauge family of `a`: linear parts times (identity or one
/// single-tuple perturbation when `k ≥ 1`).
pub fn gauge_family(a: &ANStructure, opts: &FamilyOptions) -> GaugeFamily {
    let (linear, lin_full) = linear_family(a, opts.budget, opts.seed);
    let (perts, pert_full) = if opts.k >= 1 { perturbations(a) } else { (Vec::new(), true) };
    let total = linear.len().saturating_mul(perts.len() + 1);
    let build = |li: usize, pi: Option<usize>| {
        let mut g = ANMorphism::strict(linear[li].clone(), a.n);
        if let Some(pi) = pi {
            let (t, v) = &perts[pi];
            g.set(t.clone(), v.clone());
        }
        g
    };
    if total <= opts.budget {
        let mut members = Vec::with_capacity(total);
        for li in 0..linear.len() {
            members.push(build(li, None));
            for pi in 0..perts.len() {
                members.push(build(li, Some(pi)));
            }
        }
        return GaugeFamily {
            members,
            exhaustive: lin_full && pert_full,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9);
    let mut codes: Vec<usize> = (1..total).collect();
    codes.shuffle(&mut rng);
    let mut members = vec![build(0, None)];
    for code in codes.into_iter().take(opts.budget.saturating_sub(1)) {
        let (li, r) = (code / (perts.len() + 1), code % (perts.len() + 1));
        members.push(build(li, r.checked_sub(1)));
    }
    GaugeFamily {
        members,
        exhaustive: false,
    }
}

/// Searches for an A∞-isomorphism `g : a → b` with the given linear part,
/// solving MI(n) for `g_{n−1}` level by level. A level that has no solution
/// sends the search back to retry the previous level with another element
/// of its solution space, at most `tries` times per level.
pub fn discover_gauge(a: &ANStructure, b: &ANStructure, linear: &[SparseVec], tries: usize, seed: u64) -> Option<ANMorphism> {
    if a.dim() != b.dim() || a.field != b.field {
        return None;
    }
    let n_max = a.n.min(b.n);
    let mut g = ANMorphism::strict(linear.to_vec(), n_max.max(1));
    if n_max >= 2 && tuples(a.dim(), 2).par_iter().any(|t| !morphism_residual(a, b, &g, t).is_zero()) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if extend(a, b, &mut g, 3, n_max, tries, &mut rng) {
        Some(g)
    } else {
        None
    }
}

fn extend(a: &ANStructure, b: &ANStructure, g: &mut ANMorphism, n: usize, n_max: usize, tries: usize, rng: &mut ChaCha8Rng) -> bool {
    if n > n_max {
        return true;
    }
    let Some((particular, kernel, unknowns)) = solve_level(a, b, g, n) else {
        return false;
    };
    for attempt in 0..tries.max(1) {
        let mut x = particular.clone();
        if attempt > 0 {
            if kernel.is_empty() {
                break;
            }
            for k in &kernel {
                x.add_scaled(&a.field.random(rng), k);
            }
        }
        let saved = g.f[n - 1].clone();
        g.f[n - 1].clear();
        for (u, c) in x.iter() {
            let (t, e) = &unknowns[*u];
            let mut v = g.component(t);
            v.add_scaled(c, &SparseVec::unit(*e, a.field));
            g.set(t.clone(), v);
        }
        if extend(a, b, g, n + 1, n_max, tries, rng) {
            return true;
        }
        g.f[n - 1] = saved;
    }
    false
}

/// Solves MI(n) for `g_{n−1}`; returns a particular solution, a kernel basis
/// and the unknown labels `(tuple, output basis element)`.
#[allow(clippy::type_complexity)]
fn solve_level(a: &ANStructure, b: &ANStructure, g: &mut ANMorphism, n: usize) -> Option<(SparseVec, Vec<SparseVec>, Vec<(Vec<usize>, usize)>)> {
    let dim = a.dim();
    let field = a.field;
    g.f[n - 1].clear();
    let row = |t: &[usize], e: usize| t.iter().fold(0usize, |acc, &x| acc * dim + x) * dim + e;

    let mut unknowns = Vec::new();
    for t in tuples(dim, n - 1) {
        let deg: i32 = t.iter().map(|&k| a.basis[k].degree).sum::<i32>() + 2 - n as i32;
        let block = t.iter().map(|&k| a.basis[k].block).min().expect("nonempty");
        for e in a.slot(deg, block) {
            unknowns.push((t.clone(), e));
        }
    }

    // preimages of m_2 in the source
    let mut pre: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); dim];
    for (t, v) in &a.m[2] {
        for (u, c) in v.iter() {
            pre[*u].push((t[0], t[1], c.clone()));
        }
    }
    let g1: Vec<SparseVec> = (0..dim).map(|i| g.linear(i)).collect();
    let deg = |k: usize| a.basis[k].degree as i64;

    let columns: Vec<SparseVec> = unknowns
        .par_iter()
        .map(|(t, e)| {
            let mut col: Vec<(usize, Scalar)> = Vec::new();
            let ev = SparseVec::unit(*e, field);
            for r in 0..t.len() {
                for (x, y, c) in &pre[t[r]] {
                    let mut bt = t[..r].to_vec();
                    bt.push(*x);
                    bt.push(*y);
                    bt.extend_from_slice(&t[r + 1..]);
                    let coef = &signed(field, parity(r as i64)) * c;
                    col.push((row(&bt, *e), coef));
                }
            }
            for b1 in 0..dim {
                let odd = !parity((2 - n as i64) * deg(b1));
                let v = b.op_vec(&[&g1[b1], &ev]);
                let mut bt = vec![b1];
                bt.extend_from_slice(t);
                for (o, c) in v.iter() {
                    col.push((row(&bt, *o), &signed(field, odd) * c));
                }
            }
            for bn in 0..dim {
                let odd = !parity(n as i64 - 2);
                let v = b.op_vec(&[&ev, &g1[bn]]);
                let mut bt = t.clone();
                bt.push(bn);
                for (o, c) in v.iter() {
                    col.push((row(&bt, *o), &signed(field, odd) * c));
                }
            }
            SparseVec::from_entries(col)
        })
        .collect();

    let g_ref: &ANMorphism = g;
    let rhs: Vec<(usize, Scalar)> = tuples(dim, n)
        .into_par_iter()
        .flat_map_iter(|t| {
            let r = morphism_residual(a, b, g_ref, &t);
            let base = row(&t, 0);
            r.iter().map(|(o, c)| (base + o, -c)).collect::<Vec<_>>()
        })
        .collect();
    let rhs = SparseVec::from_entries(rhs);
    let rows = dim.pow(n as u32) * dim;
    let red = column_reduce(&SparseMatrix::from_columns(rows, field, columns));
    let x = red.solve(&rhs)?;
    Some((x, red.kernel(), unknowns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{check_morphism, check_stasheff, transfer, TransferOptions};
    use crate::fixtures;

    #[test]
    fn identity_gauge_is_trivial() {
        let tr = transfer(&fixtures::heisenberg(Field::Fp(2)), &TransferOptions { n: 4, ..Default::default() }).unwrap();
        let a = &tr.structure;
        let id = ANMorphism::strict((0..a.dim()).map(|i| SparseVec::unit(i, a.field)).collect(), a.n);
        assert_eq!(&gauge_transform(a, &id).unwrap(), a);
    }

    #[test]
    fn permutation_conjugates_tensors() {
        let tr = transfer(&fixtures::heisenberg(Field::Q), &TransferOptions { n: 3, ..Default::default() }).unwrap();
        let a = &tr.structure;
        let ones = a.slot(1, 0);
        let mut perm: Vec<usize> = (0..a.dim()).collect();
        perm.swap(ones[0], ones[1]);
        let g = ANMorphism::strict(perm.iter().map(|&j| SparseVec::unit(j, a.field)).collect(), a.n);
        let b = gauge_transform(a, &g).unwrap();
        // direct conjugation: m''(σ x, σ y, …) = σ m(x, y, …)
        for n in 2..=3 {
            for t in tuples(a.dim(), n) {
                let st: Vec<usize> = t.iter().map(|&i| perm[i]).collect();
                let expect = a.op(&t).reindex(|i| Some(perm[i]));
                assert_eq!(b.op(&st), expect);
            }
            check_stasheff(&b, n).unwrap();
            check_morphism(&g, a, &b, n).unwrap();
        }
    }

    #[test]
    fn perturbed_formal_structure_stays_gauge_equivalent() {
        let tr = transfer(&fixtures::formal(Field::Fp(2)), &TransferOptions { n: 3, ..Default::default() }).unwrap();
        let a = &tr.structure;
        let fam = gauge_family(a, &FamilyOptions::default());
        assert!(fam.exhaustive);
        let mut changed = 0;
        for g in fam.members.iter().filter(|g| g.f[2].len() == 1) {
            let b = gauge_transform(a, g).unwrap();
            for n in 2..=3 {
                check_stasheff(&b, n).unwrap();
                check_morphism(g, a, &b, n).unwrap();
            }
            if !b.is_zero_at(3) {
                changed += 1;
                let lin: Vec<SparseVec> = (0..a.dim()).map(|i| g.linear(i)).collect();
                assert!(discover_gauge(a, &b, &lin, 4, 1).is_some());
            }
        }
        assert!(changed > 0);
    }

    #[test]
    fn singular_linear_part_rejected() {
        let tr = transfer(&fixtures::formal(Field::Fp(2)), &TransferOptions { n: 2, ..Default::default() }).unwrap();
        let a = &tr.structure;
        let g = ANMorphism::strict(vec![SparseVec::new(); a.dim()], 2);
        assert!(gauge_transform(a, &g).is_err());
    }

    #[test]
    fn heisenberg_family_size() {
        let tr = transfer(&fixtures::heisenberg(Field::Fp(2)), &TransferOptions { n: 3, ..Default::default() }).unwrap();
        let (lin, full) = linear_family(&tr.structure, 5000, 0);
        assert!(full);
        assert_eq!(lin.len(), 36);
    }

    #[test]
    fn seeds_are_gauge_equivalent() {
        let alg = fixtures::square(Field::Fp(3));
        let a = transfer(&alg, &TransferOptions { n: 3, seed: 0, unitary: false }).unwrap().structure;
        let b = transfer(&alg, &TransferOptions { n: 3, seed: 5, unitary: false }).unwrap().structure;
        let id: Vec<SparseVec> = (0..a.dim()).map(|i| SparseVec::unit(i, a.field)).collect();
        let g = discover_gauge(&a, &b, &id, 8, 0).expect("gauge between seeds");
        for n in 1..=3 {
            check_morphism(&g, &a, &b, n).unwrap();
        }
    }
}
