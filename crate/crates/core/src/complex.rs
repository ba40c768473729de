//! Filtered simplicial complexes, Vietoris–Rips construction, and the
//! normalized cochain algebra with the Alexander–Whitney cup product.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dga::{BasisInfo, FilteredDgAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::interval::ExtValue;
use crate::io::ext_from_value;
use crate::linalg::SparseVec;

pub type Simplex = Vec<usize>;

/// Simplices (sorted vertex lists) with appearance values, closed under faces
/// and monotone along face inclusions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredSimplicialComplex {
    pub simplices: BTreeMap<Simplex, BigRational>,
}

fn faces(s: &[usize]) -> impl Iterator<Item = (usize, Simplex)> + '_ {
    (0..s.len()).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        (i, f)
    })
}

impl FilteredSimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.keys().map(|s| s.len() - 1).max()
    }

    pub fn value(&self, s: &[usize]) -> Option<&BigRational> {
        self.simplices.get(s)
    }

    /// Checks face closure and monotonicity.
    pub fn validate(&self) -> Result<()> {
        for (s, v) in &self.simplices {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Input(format!("simplex {s:?} is not a sorted vertex list")));
            }
            if s.len() == 1 {
                continue;
            }
            for (_, f) in faces(s) {
                match self.simplices.get(&f) {
                    None => return Err(Error::Input(format!("face {f:?} of {s:?} missing"))),
                    Some(fv) if fv > v => {
                        return Err(Error::Input(format!("face {f:?} appears after {s:?}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Builds a complex from explicit simplices. Missing faces are added with
    /// the smallest value among their explicit cofaces; explicit values win.
    pub fn from_explicit(list: &[(Simplex, BigRational)]) -> Result<Self> {
        let mut explicit: BTreeMap<Simplex, BigRational> = BTreeMap::new();
        for (s, v) in list {
            let mut s = s.clone();
            s.sort();
            if s.windows(2).any(|w| w[0] == w[1]) || s.is_empty() {
                return Err(Error::Input(format!("bad simplex {s:?}")));
            }
            if let Some(old) = explicit.insert(s.clone(), v.clone()) {
                if &old != v {
                    return Err(Error::Input(format!("simplex {s:?} listed with two values")));
                }
            }
        }
        let mut all = explicit.clone();
        let mut stack: Vec<Simplex> = explicit.keys().cloned().collect();
        while let Some(s) = stack.pop() {
            let v = all[&s].clone();
            if s.len() == 1 {
                continue;
            }
            for (_, f) in faces(&s) {
                if explicit.contains_key(&f) {
                    continue;
                }
                match all.get(&f) {
                    Some(old) if *old <= v => {}
                    _ => {
                        all.insert(f.clone(), v.clone());
                        stack.push(f);
                    }
                }
            }
        }
        let c = FilteredSimplicialComplex { simplices: all };
        c.validate()?;
        Ok(c)
    }

    /// Vietoris–Rips complex of a symmetric distance matrix: a simplex appears
    /// at the largest pairwise distance among its vertices. Simplices above
    /// `cap` or of dimension above `max_dim` are left out.
    pub fn rips(dist: &[Vec<ExtValue>], max_dim: usize, cap: Option<&ExtValue>) -> Result<Self> {
        let n = dist.len();
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if row[i] != ExtValue::zero() {
                return Err(Error::Input(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                if !row[j].is_finite() || row[j] < ExtValue::zero() {
                    return Err(Error::Input(format!("invalid distance d({i},{j}) = {}", row[j])));
                }
                if row[j] != dist[j][i] {
                    return Err(Error::Input(format!("distance matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let fin = |x: &ExtValue| x.finite().cloned().expect("finite");
        let within = |v: &BigRational| cap.is_none_or(|c| &ExtValue::Finite(v.clone()) <= c);
        let mut simplices = BTreeMap::new();
        let mut frontier: Vec<(Simplex, BigRational)> = Vec::new();
        for i in 0..n {
            let v = BigRational::from_integer(0.into());
            if within(&v) {
                simplices.insert(vec![i], v.clone());
                frontier.push((vec![i], v));
            }
        }
        for _ in 0..max_dim {
            let mut next = Vec::new();
            for (s, v) in &frontier {
                let last = *s.last().expect("nonempty");
                for w in last + 1..n {
                    let mut val = v.clone();
                    for &u in s {
                        val = val.max(fin(&dist[u][w]));
                    }
                    if within(&val) {
                        let mut t = s.clone();
                        t.push(w);
                        simplices.insert(t.clone(), val.clone());
                        next.push((t, val));
                    }
                }
            }
            frontier = next;
        }
        Ok(FilteredSimplicialComplex { simplices })
    }

    /// Euclidean distance matrix of a point cloud; distances are rounded to
    /// doubles once and then kept exactly.
    pub fn distances(points: &[Vec<f64>]) -> Result<Vec<Vec<ExtValue>>> {
        let dim = points.first().map_or(0, |p| p.len());
        if let Some((i, _)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::Input(format!("point {i} has a different dimension")));
        }
        points
            .iter()
            .map(|p| {
                points
                    .iter()
                    .map(|q| {
                        let s: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
                        ExtValue::from_f64(s.sqrt())
                    })
                    .collect()
            })
            .collect()
    }

    /// Normalized cochains with the simplicial coboundary and the cup product
    /// `(f⌣g)(v0…v_{a+b}) = f(v0…va)·g(va…v_{a+b})`. Basis order: by
    /// dimension, then lexicographic.
    pub fn cochain_algebra(&self, field: Field) -> FilteredDgAlgebra {
        let mut order: Vec<&Simplex> = self.simplices.keys().collect();
        order.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
        let index: HashMap<&Simplex, usize> = order.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let basis: Vec<BasisInfo> = order
            .iter()
            .map(|s| BasisInfo {
                name: format!("{s:?}"),
                degree: s.len() as i32 - 1,
                value: self.simplices[*s].clone(),
            })
            .collect();
        let mut cob: Vec<Vec<(usize, crate::field::Scalar)>> = vec![Vec::new(); order.len()];
        for (k, s) in order.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for (pos, f) in faces(s) {
                let fi = index[&f];
                cob[fi].push((k, field.sign(pos)));
            }
        }
        let d = cob.into_iter().map(SparseVec::from_entries).collect();
        let mut product = HashMap::new();
        for rho in &order {
            let r = index[*rho];
            for split in 0..rho.len() {
                let front = rho[..=split].to_vec();
                let back = rho[split..].to_vec();
                product.insert((index[&front], index[&back]), SparseVec::unit(r, field));
            }
        }
        FilteredDgAlgebra {
            field,
            basis,
            d,
            product,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        let mut list = Vec::new();
        for (k, s) in raw.simplices.iter().enumerate() {
            let v = match ext_from_value(&s.value)? {
                ExtValue::Finite(q) => q,
                other => return Err(Error::Input(format!("simplices[{k}]: value {other} must be finite"))),
            };
            list.push((s.vertices.clone(), v));
        }
        Self::from_explicit(&list)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            simplices: self
                .simplices
                .iter()
                .map(|(s, v)| SimplexJson {
                    vertices: s.clone(),
                    value: crate::io::ext_to_value(&ExtValue::Finite(v.clone())),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexJson {
    pub vertices: Vec<usize>,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub simplices: Vec<SimplexJson>,
}

/// Point cloud from CSV text, one point per row. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_point_cloud(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>())
            .collect();
        let row = row.map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?;
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse(format!("line {}: non-finite coordinate", ln + 1)));
        }
        out.push(row);
    }
    Ok(out)
}

/// Distance matrix text: either lower-triangular, line `i` holding
/// `d(i,0) … d(i,i−1)` (an explicit zero diagonal entry at the end of a line
/// is accepted), or the full square matrix, whose symmetry is checked later.
pub fn parse_lower_distance(text: &str) -> Result<Vec<Vec<ExtValue>>> {
    let mut lines = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.starts_with('#') || t.is_empty() {
            continue;
        }
        let mut vals = Vec::new();
        for s in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let v = ExtValue::parse(s).map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?;
            vals.push(v);
        }
        lines.push((ln, vals));
    }
    let n = lines.len();
    if n > 1 && lines.iter().all(|(_, v)| v.len() == n) {
        return Ok(lines.into_iter().map(|(_, v)| v).collect());
    }
    let mut rows: Vec<Vec<ExtValue>> = Vec::new();
    for (ln, mut vals) in lines {
        let mut i = rows.len();
        if vals.len() == i + 1 && vals[i] == ExtValue::zero() {
            vals.pop();
        }
        if i == 0 && vals.len() == 1 {
            // the empty first row was omitted
            rows.push(Vec::new());
            i = 1;
        }
        if vals.len() != i {
            return Err(Error::Parse(format!("line {}: expected {i} entries, got {}", ln + 1, vals.len())));
        }
        rows.push(vals);
    }
    let n = rows.len();
    let mut m = vec![vec![ExtValue::zero(); n]; n];
    for i in 0..n {
        for j in 0..i {
            m[i][j] = rows[i][j].clone();
            m[j][i] = rows[i][j].clone();
        }
    }
    Ok(m)
}
