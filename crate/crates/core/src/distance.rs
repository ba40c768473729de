//! Distances between minimal A_N-structures on persistent cohomology.
//!
//! `δ̂_N` takes the infimum over per-degree partial matchings of the unshifted
//! classes of the supremum, over arities `i ≤ N` and `i`-tuples of matched
//! pairs, of `ĥat-d` between the supports of `m_i` on both sides. The
//! quotient distance `∂_{B,N}` is bracketed below by `δ̂_1` and above by a
//! bounded search over gauge moves.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ainfty::gauge::{discover_gauge, gauge_family, gauge_transform, linear_family, FamilyOptions};
use crate::ainfty::{ANMorphism, ANStructure, Support};
use crate::error::{Error, Result};
use crate::interval::{tilde_d, ExtValue, Interval};
use crate::io::ext_to_value;
use crate::matching::{interval_bottleneck, PartialMatching};

/// Basis element or `★`.
pub type Slot = Option<usize>;
pub type PairT = (Slot, Slot);

/// `d^n` between two elements of the shifted bases, `None` being `★`.
pub fn dn(a: &ANStructure, x: Slot, b: &ANStructure, y: Slot) -> Result<ExtValue> {
    if let (Some(i), Some(j)) = (x, y) {
        if a.basis[i].degree != b.basis[j].degree {
            return Err(Error::Precondition(format!(
                "degree mismatch: {} vs {}",
                a.basis[i].degree, b.basis[j].degree
            )));
        }
    }
    let ia = x.map(|i| a.basis[i].truncated());
    let ib = y.map(|j| b.basis[j].truncated());
    Ok(tilde_d(ia.as_ref(), ib.as_ref()))
}

fn truncated(a: &ANStructure, s: &Support) -> Vec<Interval> {
    match s {
        Support::Star => Vec::new(),
        Support::Elems(v) => v.iter().map(|&i| a.basis[i].truncated()).collect(),
    }
}

/// `ĥat-d(S, S′)`: the bottleneck between the truncated intervals, `{★}`
/// contributing nothing.
pub fn hat_d(a: &ANStructure, s: &Support, b: &ANStructure, t: &Support) -> ExtValue {
    interval_bottleneck(&truncated(a, s), &truncated(b, t)).0
}

/// One partial matching per degree between unshifted classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingTuple {
    /// degree -> (left basis indices, right basis indices, matching by position)
    pub degrees: BTreeMap<i32, (Vec<usize>, Vec<usize>, PartialMatching)>,
}

impl MatchingTuple {
    fn from_pairs(a: &ANStructure, b: &ANStructure, pairs: &[PairT]) -> Self {
        let mut degrees: BTreeMap<i32, (Vec<usize>, Vec<usize>, PartialMatching)> = BTreeMap::new();
        for &i in &a.unshifted() {
            degrees.entry(a.basis[i].degree).or_insert_with(empty).0.push(i);
        }
        for &j in &b.unshifted() {
            degrees.entry(b.basis[j].degree).or_insert_with(empty).1.push(j);
        }
        for &(x, y) in pairs {
            let deg = x.map(|i| a.basis[i].degree).or(y.map(|j| b.basis[j].degree)).expect("not (★, ★)");
            let (l, r, m) = degrees.get_mut(&deg).expect("degree present");
            let pos_l = x.map(|i| l.iter().position(|&k| k == i).expect("left class"));
            let pos_r = y.map(|j| r.iter().position(|&k| k == j).expect("right class"));
            m.pairs.push((pos_l, pos_r));
        }
        for (l, r, m) in degrees.values_mut() {
            m.left_len = l.len();
            m.right_len = r.len();
            m.pairs.sort();
        }
        MatchingTuple { degrees }
    }

    /// All pairs as basis indices.
    pub fn pairs(&self) -> Vec<PairT> {
        let mut out = Vec::new();
        for (l, r, m) in self.degrees.values() {
            for &(x, y) in &m.pairs {
                out.push((x.map(|i| l[i]), y.map(|j| r[j])));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let degs: Vec<Value> = self
            .degrees
            .iter()
            .map(|(d, (l, r, m))| {
                let pairs: Vec<Value> = m.pairs.iter().map(|&(x, y)| json!([x.map(|i| l[i]), y.map(|j| r[j])])).collect();
                json!({"degree": d, "pairs": pairs})
            })
            .collect();
        Value::Array(degs)
    }
}

fn empty() -> (Vec<usize>, Vec<usize>, PartialMatching) {
    (
        Vec::new(),
        Vec::new(),
        PartialMatching {
            left_len: 0,
            right_len: 0,
            pairs: Vec::new(),
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    ExhaustiveFamily,
    UpperBound,
    Heuristic,
}

impl Exactness {
    pub fn as_str(self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::ExhaustiveFamily => "exhaustive-family",
            Exactness::UpperBound => "upper-bound",
            Exactness::Heuristic => "heuristic",
        }
    }
}

/// A tuple `φ` attaining the reported supremum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Critical {
    pub pairs: Vec<PairT>,
    pub cost: ExtValue,
}

#[derive(Clone, Debug)]
pub struct GaugeWitness {
    /// `"left"` or `"right"`: which argument the move was applied to
    pub side: &'static str,
    pub morphism: ANMorphism,
}

#[derive(Clone, Debug)]
pub struct DistanceReport {
    pub value: ExtValue,
    pub exact: bool,
    pub exactness: Exactness,
    pub lower_bound: ExtValue,
    pub n: usize,
    pub matching: Option<MatchingTuple>,
    pub critical: Option<Critical>,
    pub gauge: Option<GaugeWitness>,
    pub budget_exhausted: bool,
    pub nodes: u64,
    pub chains: usize,
}

fn report_value(x: &ExtValue) -> Value {
    match x {
        ExtValue::PosInf => json!("inf"),
        other => ext_to_value(other),
    }
}

impl DistanceReport {
    pub fn to_json(&self) -> Value {
        let mut witness = serde_json::Map::new();
        if let Some(m) = &self.matching {
            witness.insert("matching".into(), m.to_json());
        }
        if let Some(c) = &self.critical {
            let pairs: Vec<Value> = c.pairs.iter().map(|&(x, y)| json!([x, y])).collect();
            witness.insert("critical".into(), json!({"pairs": pairs, "cost": report_value(&c.cost)}));
        }
        if let Some(g) = &self.gauge {
            let comps: Vec<Value> = g
                .morphism
                .f
                .iter()
                .skip(1)
                .flat_map(|level| level.iter())
                .map(|(t, v)| {
                    let out: Vec<Value> = v.iter().map(|(i, c)| json!([i, c.to_string()])).collect();
                    json!({"inputs": t, "output": out})
                })
                .collect();
            witness.insert("gauge".into(), json!({"side": g.side, "components": comps}));
        }
        json!({
            "value": report_value(&self.value),
            "exact": self.exact,
            "exactness": self.exactness.as_str(),
            "lower_bound": report_value(&self.lower_bound),
            "N": self.n,
            "budget_exhausted": self.budget_exhausted,
            "search": {"nodes": self.nodes, "chains": self.chains},
            "witness": Value::Object(witness),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    /// largest total number of unshifted classes searched exactly
    pub max_pairs: usize,
    /// branch-and-bound nodes per `δ̂_N` evaluation
    pub node_budget: u64,
    /// longest chain of models, counted in links (1 or 2)
    pub chain_length: usize,
    pub family: FamilyOptions,
    /// retries per level in gauge discovery
    pub discovery_tries: usize,
    /// linear parts tried by gauge discovery
    pub discovery_linear: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            max_pairs: 20,
            node_budget: 2_000_000,
            chain_length: 2,
            family: FamilyOptions::default(),
            discovery_tries: 8,
            discovery_linear: 64,
        }
    }
}

fn check_inputs(a: &ANStructure, b: &ANStructure, n: usize) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    if a.n < n || b.n < n {
        return Err(Error::Precondition(format!("structures carry arities up to {} and {}, N = {n}", a.n, b.n)));
    }
    Ok(())
}

/// The classical bottleneck distance between the barcodes of the two
/// structures, with the per-degree optimal matchings as pairs.
pub fn classical(a: &ANStructure, b: &ANStructure) -> (ExtValue, Vec<PairT>) {
    let empty_tuple = MatchingTuple::from_pairs(a, b, &[]);
    let mut value = ExtValue::zero();
    let mut pairs = Vec::new();
    for (l, r, _) in empty_tuple.degrees.values() {
        let li: Vec<Interval> = l.iter().map(|&i| a.basis[i].truncated()).collect();
        let ri: Vec<Interval> = r.iter().map(|&j| b.basis[j].truncated()).collect();
        let (v, m) = interval_bottleneck(&li, &ri);
        value = value.max(v);
        pairs.extend(m.pairs.iter().map(|&(x, y)| (x.map(|i| l[i]), y.map(|j| r[j]))));
    }
    (value, pairs)
}

struct Search<'a> {
    a: &'a ANStructure,
    b: &'a ANStructure,
    n: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    floor: ExtValue,
    best: ExtValue,
    best_pairs: Vec<PairT>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn tuple_cost(&self, phi: &[PairT]) -> ExtValue {
        let l: Vec<Slot> = phi.iter().map(|p| p.0).collect();
        let r: Vec<Slot> = phi.iter().map(|p| p.1).collect();
        hat_d(self.a, &self.a.support_set(&l), self.b, &self.b.support_set(&r))
    }

    /// Largest cost over tuples of `assigned ∪ {new}` that use `new`, stopping
    /// once `stop` is reached.
    fn added_cost(&self, assigned: &[PairT], new: PairT, stop: &ExtValue) -> ExtValue {
        let mut pool = assigned.to_vec();
        pool.push(new);
        let k = pool.len();
        let mut worst = ExtValue::zero();
        let mut idx = Vec::new();
        for i in 1..=self.n {
            idx.clear();
            idx.resize(i, 0);
            loop {
                if idx.contains(&(k - 1)) {
                    let phi: Vec<PairT> = idx.iter().map(|&j| pool[j]).collect();
                    let c = self.tuple_cost(&phi);
                    if c > worst {
                        worst = c;
                        if &worst >= stop {
                            return worst;
                        }
                    }
                }
                // odometer
                let mut pos = i;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < k {
                        break;
                    }
                    idx[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX {
                    break;
                }
            }
        }
        worst
    }

    /// Full evaluation of a complete set of pairs.
    fn evaluate(&self, pairs: &[PairT]) -> ExtValue {
        let mut cur = ExtValue::zero();
        for k in 0..pairs.len() {
            cur = cur.max(self.added_cost(&pairs[..k], pairs[k], &ExtValue::PosInf));
        }
        cur
    }

    fn critical(&self, pairs: &[PairT]) -> Option<Critical> {
        let target = self.evaluate(pairs);
        let k = pairs.len();
        for i in 1..=self.n {
            let mut found = None;
            for code in 0..k.pow(i as u32) {
                let mut c = code;
                let phi: Vec<PairT> = (0..i)
                    .map(|_| {
                        let p = pairs[c % k];
                        c /= k;
                        p
                    })
                    .collect();
                if self.tuple_cost(&phi) == target {
                    found = Some(phi);
                    break;
                }
            }
            if let Some(phi) = found {
                return Some(Critical { pairs: phi, cost: target });
            }
        }
        None
    }

    fn run(&mut self, depth: usize, assigned: &mut Vec<PairT>, used: &mut Vec<bool>, cur: ExtValue) {
        if self.exhausted || self.best <= self.floor {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if depth == self.left.len() {
            let mut c = cur;
            let base = assigned.len();
            for (r, &j) in self.right.iter().enumerate() {
                if used[r] {
                    continue;
                }
                c = c.max(self.added_cost(assigned, (None, Some(j)), &self.best));
                assigned.push((None, Some(j)));
                if c >= self.best {
                    break;
                }
            }
            if c < self.best {
                self.best = c;
                self.best_pairs = assigned.clone();
            }
            assigned.truncate(base);
            return;
        }
        let i = self.left[depth];
        let deg = self.a.basis[i].degree;
        let mut cands: Vec<(ExtValue, Option<usize>)> = self
            .right
            .iter()
            .enumerate()
            .filter(|(r, &j)| !used[*r] && self.b.basis[j].degree == deg)
            .map(|(r, &j)| (dn(self.a, Some(i), self.b, Some(j)).expect("same degree"), Some(r)))
            .collect();
        cands.push((dn(self.a, Some(i), self.b, None).expect("star"), None));
        cands.sort_by(|x, y| (&x.0, x.1.is_none(), x.1).cmp(&(&y.0, y.1.is_none(), y.1)));
        for (d1, r) in cands {
            if d1 >= self.best {
                break;
            }
            let pair = (Some(i), r.map(|r| self.right[r]));
            let c = cur.clone().max(self.added_cost(assigned, pair, &self.best));
            if c >= self.best {
                continue;
            }
            if let Some(r) = r {
                used[r] = true;
            }
            assigned.push(pair);
            self.run(depth + 1, assigned, used, c);
            assigned.pop();
            if let Some(r) = r {
                used[r] = false;
            }
        }
    }
}

/// `δ̂_N(X, X′)` by branch and bound over matching tuples.
pub fn pre_an_bottleneck(a: &ANStructure, b: &ANStructure, n: usize, opts: &DistanceOptions) -> Result<DistanceReport> {
    check_inputs(a, b, n)?;
    let (floor, classical_pairs) = classical(a, b);
    let mut left = a.unshifted();
    left.sort_by_key(|&i| (a.basis[i].degree, i));
    let mut right = b.unshifted();
    right.sort_by_key(|&j| (b.basis[j].degree, j));
    let mut s = Search {
        a,
        b,
        n,
        left,
        right,
        floor: floor.clone(),
        best: ExtValue::PosInf,
        best_pairs: Vec::new(),
        nodes: 0,
        budget: opts.node_budget,
        exhausted: false,
    };
    s.best = s.evaluate(&classical_pairs);
    s.best_pairs = classical_pairs;
    let too_big = s.left.len() + s.right.len() > opts.max_pairs;
    if n > 1 && s.best > s.floor && !too_big {
        // the incumbent is only beaten by a strictly smaller value
        let incumbent = s.best.clone();
        let incumbent_pairs = s.best_pairs.clone();
        let mut used = vec![false; s.right.len()];
        s.run(0, &mut Vec::new(), &mut used, ExtValue::zero());
        if s.best > incumbent {
            s.best = incumbent;
            s.best_pairs = incumbent_pairs;
        }
    }
    // a complete search certifies the value, which is then its own lower bound
    let certified = s.best == s.floor || (!too_big && !s.exhausted);
    let matching = MatchingTuple::from_pairs(a, b, &s.best_pairs);
    let critical = s.critical(&s.best_pairs);
    Ok(DistanceReport {
        exact: certified,
        lower_bound: if certified { s.best.clone() } else { floor },
        value: s.best,
        exactness: if certified { Exactness::Exact } else { Exactness::UpperBound },
        n,
        matching: Some(matching),
        critical,
        gauge: None,
        budget_exhausted: s.exhausted,
        nodes: s.nodes,
        chains: 1,
    })
}

/// `∂_{B,N}(X, X′)`, bracketed between `δ̂_1` and the best chain found.
///
/// Chains have one link (`δ̂_N(X, X′)`) or two (`δ̂_N(gX, X′)` or
/// `δ̂_N(X, gX′)` for `g` in the gauge family of the moved side). When both
/// sides carry the same basis, a gauge isomorphism found by discovery
/// certifies the value 0.
pub fn an_bottleneck(a: &ANStructure, b: &ANStructure, n: usize, opts: &DistanceOptions) -> Result<DistanceReport> {
    check_inputs(a, b, n)?;
    if a.same_basis(b) {
        let (linear, _) = linear_family(a, opts.discovery_linear.max(1), opts.family.seed);
        let found = linear.par_iter().take(opts.discovery_linear.max(1)).find_map_first(|lin| {
            discover_gauge(a, b, lin, opts.discovery_tries, opts.family.seed)
        });
        if let Some(g) = found {
            let mut r = pre_an_bottleneck(a, a, n, opts)?;
            r.gauge = Some(GaugeWitness { side: "left", morphism: g });
            r.lower_bound = ExtValue::zero();
            r.value = ExtValue::zero();
            r.exact = true;
            r.exactness = Exactness::Exact;
            r.matching = Some(MatchingTuple::from_pairs(a, b, &classical(a, b).1));
            r.critical = None;
            return Ok(r);
        }
    }
    let floor = classical(a, b).0;
    let mut best = pre_an_bottleneck(a, b, n, opts)?;
    let mut all_certified = !best.budget_exhausted && best.exactness == Exactness::Exact;
    let mut chains = 1;
    let mut families_exhaustive = true;
    if best.value > floor && opts.chain_length >= 2 {
        let fa = gauge_family(a, &opts.family);
        let fb = gauge_family(b, &opts.family);
        families_exhaustive = fa.exhaustive && fb.exhaustive;
        let moves: Vec<(&'static str, &ANMorphism)> = fa
            .members
            .iter()
            .map(|g| ("left", g))
            .chain(fb.members.iter().map(|g| ("right", g)))
            .collect();
        chains += moves.len();
        let results: Vec<Result<(usize, DistanceReport)>> = moves
            .par_iter()
            .enumerate()
            .map(|(k, (side, g))| {
                let r = if *side == "left" {
                    pre_an_bottleneck(&gauge_transform(a, g)?, b, n, opts)?
                } else {
                    pre_an_bottleneck(a, &gauge_transform(b, g)?, n, opts)?
                };
                Ok((k, r))
            })
            .collect();
        for res in results {
            let (k, r) = res?;
            all_certified &= !r.budget_exhausted && r.exactness == Exactness::Exact;
            if r.value < best.value && best.value > floor {
                let (side, g) = moves[k];
                best = DistanceReport {
                    gauge: Some(GaugeWitness {
                        side,
                        morphism: g.clone(),
                    }),
                    ..r
                };
            }
        }
    }
    best.chains = chains;
    best.lower_bound = floor;
    best.exact = best.value == best.lower_bound;
    best.exactness = if best.exact {
        Exactness::Exact
    } else if families_exhaustive && all_certified && opts.chain_length >= 2 {
        Exactness::ExhaustiveFamily
    } else if all_certified {
        Exactness::UpperBound
    } else {
        Exactness::Heuristic
    };
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{transfer, TransferOptions};
    use crate::field::Field;
    use crate::fixtures;
    use crate::interval::ExtValue;

    fn model(alg: &crate::dga::FilteredDgAlgebra, n: usize, seed: u64) -> ANStructure {
        transfer(alg, &TransferOptions { n, seed, unitary: false }).unwrap().structure
    }

    #[test]
    fn self_distance_is_zero() {
        let x = model(&fixtures::square(Field::Fp(2)), 3, 0);
        let r = pre_an_bottleneck(&x, &x, 3, &DistanceOptions::default()).unwrap();
        assert_eq!(r.value, ExtValue::zero());
        assert!(r.exact);
        let r = an_bottleneck(&x, &x, 3, &DistanceOptions::default()).unwrap();
        assert_eq!(r.value, ExtValue::zero());
    }

    #[test]
    fn torus_against_wedge() {
        let t = model(&fixtures::torus(Field::Fp(2)), 2, 0);
        let w = model(&fixtures::wedge(Field::Fp(2)), 2, 0);
        let opts = DistanceOptions::default();
        assert_eq!(pre_an_bottleneck(&t, &w, 1, &opts).unwrap().value, ExtValue::zero());
        let r = pre_an_bottleneck(&t, &w, 2, &opts).unwrap();
        assert_eq!(r.value, ExtValue::PosInf);
        assert!(r.exact);
        assert_eq!(r.exactness, Exactness::Exact);
        let c = r.critical.unwrap();
        assert_eq!(c.pairs.len(), 2);
        assert_eq!(c.cost, ExtValue::PosInf);
    }

    #[test]
    fn dn_examples() {
        let x = model(&fixtures::square(Field::Fp(2)), 2, 0);
        let star = dn(&x, Some(0), &x, None).unwrap();
        assert_eq!(star, x.basis[0].truncated().length().half());
        assert_eq!(dn(&x, Some(0), &x, Some(0)).unwrap(), ExtValue::zero());
        let other = (0..x.dim()).find(|&k| x.basis[k].degree != x.basis[0].degree);
        if let Some(k) = other {
            assert!(dn(&x, Some(0), &x, Some(k)).is_err());
        }
    }

    #[test]
    fn report_json_shape() {
        let t = model(&fixtures::torus(Field::Fp(2)), 2, 0);
        let w = model(&fixtures::wedge(Field::Fp(2)), 2, 0);
        let r = an_bottleneck(&t, &w, 2, &DistanceOptions::default()).unwrap();
        assert_eq!(r.exactness, Exactness::ExhaustiveFamily);
        let j = r.to_json();
        assert_eq!(j["value"], json!("inf"));
        assert_eq!(j["lower_bound"], json!(0));
        assert_eq!(j["N"], json!(2));
        assert_eq!(j["exact"], json!(false));
    }

    #[test]
    fn heisenberg_against_formal() {
        let h = model(&fixtures::heisenberg(Field::Fp(2)), 3, 0);
        let f = model(&fixtures::formal(Field::Fp(2)), 3, 0);
        assert_eq!(h.dim(), 6);
        let opts = DistanceOptions::default();
        assert_eq!(an_bottleneck(&h, &f, 1, &opts).unwrap().value, ExtValue::zero());
        let r = an_bottleneck(&h, &f, 3, &opts).unwrap();
        assert_eq!(r.value, ExtValue::PosInf);
        assert_eq!(r.lower_bound, ExtValue::zero());
        assert_eq!(r.exactness, Exactness::ExhaustiveFamily);
    }

    #[test]
    fn seeds_give_zero_with_gauge() {
        let alg = fixtures::square(Field::Fp(5));
        let x = model(&alg, 3, 1);
        let y = model(&alg, 3, 9);
        let r = an_bottleneck(&x, &y, 3, &DistanceOptions::default()).unwrap();
        assert_eq!(r.value, ExtValue::zero());
        assert!(r.gauge.is_some());
    }
}
