//! Partial matchings between finite multisets and the bottleneck problem
//! `inf_P sup_{(a,b) ∈ P} cost(a, b)`.
//!
//! Elements of a multiset are addressed by position, so a multiset with a
//! repeated element simply lists it twice. `None` is the dummy element `★`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interval::{tilde_d, ExtValue, Interval};

pub type Pair = (Option<usize>, Option<usize>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialMatching {
    pub left_len: usize,
    pub right_len: usize,
    pub pairs: Vec<Pair>,
}

impl PartialMatching {
    pub fn identity(n: usize) -> Self {
        PartialMatching {
            left_len: n,
            right_len: n,
            pairs: (0..n).map(|i| (Some(i), Some(i))).collect(),
        }
    }

    /// Each element covered exactly once, no `(★, ★)`.
    pub fn validate(&self) -> Result<(), Error> {
        let mut l = vec![0usize; self.left_len];
        let mut r = vec![0usize; self.right_len];
        for p in &self.pairs {
            match *p {
                (None, None) => return Err(Error::Input("pair (★, ★) in matching".into())),
                (a, b) => {
                    if let Some(a) = a {
                        *l.get_mut(a).ok_or_else(|| Error::Input(format!("left {a} out of range")))? += 1;
                    }
                    if let Some(b) = b {
                        *r.get_mut(b).ok_or_else(|| Error::Input(format!("right {b} out of range")))? += 1;
                    }
                }
            }
        }
        if let Some(i) = l.iter().position(|&c| c != 1) {
            return Err(Error::Input(format!("left element {i} covered {} times", l[i])));
        }
        if let Some(j) = r.iter().position(|&c| c != 1) {
            return Err(Error::Input(format!("right element {j} covered {} times", r[j])));
        }
        Ok(())
    }

    pub fn cost(&self, cost: impl Fn(Option<usize>, Option<usize>) -> ExtValue) -> ExtValue {
        self.pairs
            .iter()
            .map(|&(a, b)| cost(a, b))
            .max()
            .unwrap_or_else(ExtValue::zero)
    }

    pub fn swapped(&self) -> Self {
        PartialMatching {
            left_len: self.right_len,
            right_len: self.left_len,
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }
}

/// Composition of `p1 : S → S'` and `p2 : S' → S''` through the elements of
/// `S'` matched on both sides; everything else goes to `★`.
pub fn compose_matchings(p1: &PartialMatching, p2: &PartialMatching) -> Result<PartialMatching, Error> {
    if p1.right_len != p2.left_len {
        return Err(Error::Input(format!(
            "middle multisets differ: {} vs {} elements",
            p1.right_len, p2.left_len
        )));
    }
    let mid = p1.right_len;
    let mut from_left: Vec<Option<usize>> = vec![None; mid];
    let mut to_right: Vec<Option<usize>> = vec![None; mid];
    let mut mid_ok = vec![true; mid];
    for &(a, b) in &p1.pairs {
        match (a, b) {
            (None, Some(m)) => mid_ok[m] = false,
            (Some(a), Some(m)) => from_left[m] = Some(a),
            _ => {}
        }
    }
    for &(a, b) in &p2.pairs {
        match (a, b) {
            (Some(m), None) => mid_ok[m] = false,
            (Some(m), Some(c)) => to_right[m] = Some(c),
            _ => {}
        }
    }
    let mut pairs = Vec::new();
    let mut left_used = vec![false; p1.left_len];
    let mut right_used = vec![false; p2.right_len];
    for m in 0..mid {
        if let (true, Some(a), Some(c)) = (mid_ok[m], from_left[m], to_right[m]) {
            pairs.push((Some(a), Some(c)));
            left_used[a] = true;
            right_used[c] = true;
        }
    }
    pairs.extend((0..p1.left_len).filter(|&a| !left_used[a]).map(|a| (Some(a), None)));
    pairs.extend((0..p2.right_len).filter(|&c| !right_used[c]).map(|c| (None, Some(c))));
    Ok(PartialMatching {
        left_len: p1.left_len,
        right_len: p2.right_len,
        pairs,
    })
}

/// Exact bottleneck matching. Searches the sorted list of candidate costs for
/// the smallest threshold at which the graph augmented with `★` copies has a
/// perfect matching.
pub fn bottleneck_matching(
    n: usize,
    m: usize,
    cost: impl Fn(Option<usize>, Option<usize>) -> ExtValue,
) -> (ExtValue, PartialMatching) {
    let pair_cost: Vec<Vec<ExtValue>> = (0..n)
        .map(|i| (0..m).map(|j| cost(Some(i), Some(j))).collect())
        .collect();
    let left_star: Vec<ExtValue> = (0..n).map(|i| cost(Some(i), None)).collect();
    let right_star: Vec<ExtValue> = (0..m).map(|j| cost(None, Some(j))).collect();
    let mut cands: Vec<ExtValue> = pair_cost
        .iter()
        .flatten()
        .chain(&left_star)
        .chain(&right_star)
        .cloned()
        .collect();
    cands.push(ExtValue::zero());
    cands.sort();
    cands.dedup();

    let attempt = |t: &ExtValue| -> Option<PartialMatching> {
        // left vertices: 0..n real, n..n+m star copies of right elements
        // right vertices: 0..m real, m..m+n star copies of left elements
        let adj: Vec<Vec<usize>> = (0..n + m)
            .map(|u| {
                if u < n {
                    let mut v: Vec<usize> = (0..m).filter(|&j| &pair_cost[u][j] <= t).collect();
                    if &left_star[u] <= t {
                        v.push(m + u);
                    }
                    v
                } else {
                    let j = u - n;
                    let mut v = Vec::new();
                    if &right_star[j] <= t {
                        v.push(j);
                    }
                    v.extend(m..m + n);
                    v
                }
            })
            .collect();
        let mate = kuhn(&adj, n + m, m + n)?;
        let mut pairs = Vec::new();
        for (u, &v) in mate.iter().enumerate() {
            match (u < n, v < m) {
                (true, true) => pairs.push((Some(u), Some(v))),
                (true, false) => pairs.push((Some(u), None)),
                (false, true) => pairs.push((None, Some(v))),
                (false, false) => {}
            }
        }
        pairs.sort();
        Some(PartialMatching {
            left_len: n,
            right_len: m,
            pairs,
        })
    };

    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    // the largest candidate always admits the all-to-★ matching
    let mut best = attempt(&cands[hi]).expect("all-to-★ matching exists");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match attempt(&cands[mid]) {
            Some(pm) => {
                best = pm;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let value = best.cost(&cost);
    (value, best)
}

/// Perfect matching of the left side by augmenting paths; `mate[u]` is the
/// right partner of left vertex `u`.
fn kuhn(adj: &[Vec<usize>], nl: usize, nr: usize) -> Option<Vec<usize>> {
    let mut right_mate: Vec<Option<usize>> = vec![None; nr];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], right_mate: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if right_mate[v].is_none_or(|w| augment(w, adj, seen, right_mate)) {
                right_mate[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..nl {
        let mut seen = vec![false; nr];
        if !augment(u, adj, &mut seen, &mut right_mate) {
            return None;
        }
    }
    let mut mate = vec![0; nl];
    for (v, u) in right_mate.iter().enumerate() {
        if let Some(u) = u {
            mate[*u] = v;
        }
    }
    Some(mate)
}

/// Enumerates every partial matching; exponential, used for small inputs and
/// as a test oracle.
pub fn bottleneck_brute(
    n: usize,
    m: usize,
    cost: impl Fn(Option<usize>, Option<usize>) -> ExtValue,
) -> (ExtValue, PartialMatching) {
    fn rec(
        i: usize,
        n: usize,
        m: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<Pair>,
        cost: &dyn Fn(Option<usize>, Option<usize>) -> ExtValue,
        best: &mut Option<(ExtValue, Vec<Pair>)>,
    ) {
        if i == n {
            let mut all = pairs.clone();
            all.extend((0..m).filter(|&j| !used[j]).map(|j| (None, Some(j))));
            let c = all.iter().map(|&(a, b)| cost(a, b)).max().unwrap_or_else(ExtValue::zero);
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                *best = Some((c, all));
            }
            return;
        }
        for j in 0..m {
            if !used[j] {
                used[j] = true;
                pairs.push((Some(i), Some(j)));
                rec(i + 1, n, m, used, pairs, cost, best);
                pairs.pop();
                used[j] = false;
            }
        }
        pairs.push((Some(i), None));
        rec(i + 1, n, m, used, pairs, cost, best);
        pairs.pop();
    }
    let mut best = None;
    rec(0, n, m, &mut vec![false; m], &mut Vec::new(), &cost, &mut best);
    let (v, mut pairs) = best.expect("at least one matching");
    pairs.sort();
    (
        v,
        PartialMatching {
            left_len: n,
            right_len: m,
            pairs,
        },
    )
}

/// Classical bottleneck distance between two lists of intervals.
pub fn interval_bottleneck(a: &[Interval], b: &[Interval]) -> (ExtValue, PartialMatching) {
    bottleneck_matching(a.len(), b.len(), |i, j| {
        tilde_d(i.map(|i| &a[i]), j.map(|j| &b[j]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(ExtValue::int(a), ExtValue::int(b)).unwrap()
    }

    fn arb_bars(max: usize) -> impl Strategy<Value = Vec<Interval>> {
        proptest::collection::vec((-6i64..6, 1i64..6), 0..=max)
            .prop_map(|v| v.into_iter().map(|(a, l)| iv(a, a + l)).collect())
    }

    fn cost_fn<'a>(a: &'a [Interval], b: &'a [Interval]) -> impl Fn(Option<usize>, Option<usize>) -> ExtValue + 'a {
        move |i, j| tilde_d(i.map(|i| &a[i]), j.map(|j| &b[j]))
    }

    #[test]
    fn bottleneck_examples() {
        let a = vec![iv(0, 2)];
        assert_eq!(interval_bottleneck(&a, &a).0, ExtValue::zero());
        assert_eq!(interval_bottleneck(&a, &[iv(0, 1)]).0, ExtValue::int(1));
        assert_eq!(interval_bottleneck(&[iv(0, 8)], &[]).0, ExtValue::int(4));
        assert_eq!(interval_bottleneck(&[], &[]).0, ExtValue::zero());
    }

    #[test]
    fn compose_star_cases() {
        let p1 = PartialMatching {
            left_len: 1,
            right_len: 0,
            pairs: vec![(Some(0), None)],
        };
        let p2 = PartialMatching {
            left_len: 0,
            right_len: 1,
            pairs: vec![(None, Some(0))],
        };
        let c = compose_matchings(&p1, &p2).unwrap();
        assert_eq!(c.pairs, vec![(Some(0), None), (None, Some(0))]);
        let id = PartialMatching::identity(3);
        assert_eq!(compose_matchings(&id, &id).unwrap(), id);
        assert!(compose_matchings(&id, &PartialMatching::identity(2)).is_err());
    }

    fn arb_matching(n: usize, m: usize) -> impl Strategy<Value = PartialMatching> {
        (Just(n), Just(m), proptest::collection::vec(0usize..=m, n)).prop_map(|(n, m, choice)| {
            let mut used = vec![false; m];
            let mut pairs = Vec::new();
            for (i, c) in choice.into_iter().enumerate() {
                if c < m && !used[c] {
                    used[c] = true;
                    pairs.push((Some(i), Some(c)));
                } else {
                    pairs.push((Some(i), None));
                }
            }
            pairs.extend((0..m).filter(|&j| !used[j]).map(|j| (None, Some(j))));
            PartialMatching { left_len: n, right_len: m, pairs }
        })
    }

    proptest! {
        #[test]
        fn threshold_search_equals_enumeration(a in arb_bars(5), b in arb_bars(5)) {
            let exact = bottleneck_matching(a.len(), b.len(), cost_fn(&a, &b));
            let brute = bottleneck_brute(a.len(), b.len(), cost_fn(&a, &b));
            prop_assert_eq!(&exact.0, &brute.0);
            exact.1.validate().unwrap();
            prop_assert_eq!(exact.1.cost(cost_fn(&a, &b)), exact.0);
        }

        #[test]
        fn bottleneck_is_pseudometric(a in arb_bars(5), b in arb_bars(5), c in arb_bars(5)) {
            let ab = interval_bottleneck(&a, &b).0;
            prop_assert_eq!(&ab, &interval_bottleneck(&b, &a).0);
            let bc = interval_bottleneck(&b, &c).0;
            let ac = interval_bottleneck(&a, &c).0;
            prop_assert!(ac <= ab.plus(&bc));
        }

        #[test]
        fn composition_is_valid_and_bounded(
            bars in (arb_bars(4), arb_bars(4), arb_bars(4)),
            seeds in (proptest::collection::vec(0usize..5, 4), proptest::collection::vec(0usize..5, 4)),
        ) {
            let (a, b, c) = bars;
            let pick = |n: usize, m: usize, s: &[usize]| {
                let mut used = vec![false; m];
                let mut pairs = Vec::new();
                for i in 0..n {
                    let k = s[i];
                    if k < m && !used[k] { used[k] = true; pairs.push((Some(i), Some(k))); } else { pairs.push((Some(i), None)); }
                }
                pairs.extend((0..m).filter(|&j| !used[j]).map(|j| (None, Some(j))));
                PartialMatching { left_len: n, right_len: m, pairs }
            };
            let p1 = pick(a.len(), b.len(), &seeds.0);
            let p2 = pick(b.len(), c.len(), &seeds.1);
            let comp = compose_matchings(&p1, &p2).unwrap();
            comp.validate().unwrap();
            let c1 = p1.cost(cost_fn(&a, &b));
            let c2 = p2.cost(cost_fn(&b, &c));
            let bound = c1.plus(&c2);
            for &(x, z) in &comp.pairs {
                prop_assert!(tilde_d(x.map(|i| &a[i]), z.map(|k| &c[k])) <= bound);
            }
        }

        #[test]
        fn random_matchings_are_valid(pm in arb_matching(4, 3)) {
            pm.validate().unwrap();
            pm.swapped().validate().unwrap();
        }
    }
}
