//! Finite-dimensional filtered dg algebras given by structure constants.
//!
//! Every basis element carries a cohomological degree and a filtration value
//! `v`; it lies in `F^p` exactly when `v ≥ p`. Simplicial cochains use the
//! appearance value of the simplex, so `F^p` is the kernel of restriction to
//! the subcomplex of simplices appearing before `p`.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::interval::ExtValue;
use crate::io::{ext_from_value, ext_to_value, field_from_json, field_to_json, scalar_from_value};
use crate::linalg::SparseVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisInfo {
    pub name: String,
    pub degree: i32,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredDgAlgebra {
    pub field: Field,
    pub basis: Vec<BasisInfo>,
    /// `d[i]` is the differential of basis element `i`
    pub d: Vec<SparseVec>,
    /// nonzero products of basis elements
    pub product: HashMap<(usize, usize), SparseVec>,
}

impl FilteredDgAlgebra {
    pub fn empty(field: Field) -> Self {
        FilteredDgAlgebra {
            field,
            basis: Vec::new(),
            d: Vec::new(),
            product: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn value(&self, i: usize) -> &BigRational {
        &self.basis[i].value
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Sorted distinct filtration values: the critical scale.
    pub fn scale(&self) -> Vec<BigRational> {
        let mut s: Vec<BigRational> = self.basis.iter().map(|b| b.value.clone()).collect();
        s.sort();
        s.dedup();
        s
    }

    pub fn diff(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.d[*i]);
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.product.get(&(i, j))
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(p) = self.product.get(&(*i, *j)) {
                    out.add_scaled(&(a * b), p);
                }
            }
        }
        out
    }

    /// Degree of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn vec_degree(&self, x: &SparseVec) -> Option<i32> {
        let mut it = x.iter().map(|(i, _)| self.degree(*i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Smallest filtration value among the components, i.e. the largest `p`
    /// with `x ∈ F^p`.
    pub fn vec_value(&self, x: &SparseVec) -> Option<&BigRational> {
        x.iter().map(|(i, _)| self.value(*i)).min()
    }

    fn name_vec(&self, x: &SparseVec) -> String {
        let terms: Vec<String> = x
            .iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis[*i].name.clone()
                } else {
                    format!("{c}*{}", self.basis[*i].name)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn fail(identity: &str, witness: String) -> Error {
        Error::Identity {
            identity: identity.into(),
            witness,
        }
    }

    /// Checks grading, filtration compatibility, `d² = 0`, the Leibniz rule
    /// and associativity; the error names the first failing identity and the
    /// basis elements where it fails.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.d.len() != n {
            return Err(Error::Input(format!("{} differentials for {n} basis elements", self.d.len())));
        }
        for i in 0..n {
            for (j, _) in self.d[i].iter() {
                if self.degree(*j) != self.degree(i) + 1 {
                    return Err(Self::fail(
                        "grading of d",
                        format!("d({}) has a term {} of degree {}", self.basis[i].name, self.basis[*j].name, self.degree(*j)),
                    ));
                }
                if self.value(*j) < self.value(i) {
                    return Err(Self::fail(
                        "filtration of d",
                        format!("d({}) leaves F^{}", self.basis[i].name, self.value(i)),
                    ));
                }
            }
        }
        let mut keys: Vec<&(usize, usize)> = self.product.keys().collect();
        keys.sort();
        for &(i, j) in keys.iter().copied() {
            let p = &self.product[&(i, j)];
            let lo = self.value(i).min(self.value(j));
            for (k, _) in p.iter() {
                if self.degree(*k) != self.degree(i) + self.degree(j) {
                    return Err(Self::fail(
                        "grading of product",
                        format!("({}, {})", self.basis[i].name, self.basis[j].name),
                    ));
                }
                if self.value(*k) < lo {
                    return Err(Self::fail(
                        "multiplicativity",
                        format!("({}, {})", self.basis[i].name, self.basis[j].name),
                    ));
                }
            }
        }
        for i in 0..n {
            let dd = self.diff(&self.d[i]);
            if !dd.is_zero() {
                return Err(Self::fail(
                    "d∘d = 0",
                    format!("{} (d²= {})", self.basis[i].name, self.name_vec(&dd)),
                ));
            }
        }
        if let Some((i, j)) = self.leibniz_failure() {
            return Err(Self::fail("Leibniz", format!("({}, {})", self.basis[i].name, self.basis[j].name)));
        }
        if let Some((i, j, k)) = self.associativity_failure() {
            return Err(Self::fail(
                "associativity",
                format!("({}, {}, {})", self.basis[i].name, self.basis[j].name, self.basis[k].name),
            ));
        }
        Ok(())
    }

    /// First basis pair violating `d(xy) = dx·y + (−1)^{|x|} x·dy`.
    pub fn leibniz_failure(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            let ei = SparseVec::unit(i, self.field);
            for j in 0..n {
                let ej = SparseVec::unit(j, self.field);
                let lhs = match self.product.get(&(i, j)) {
                    Some(p) => self.diff(p),
                    None => SparseVec::new(),
                };
                let mut rhs = self.mul(&self.d[i], &ej);
                rhs.add_scaled(&self.field.sign(self.degree(i).rem_euclid(2) as usize), &self.mul(&ei, &self.d[j]));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple with `(xy)z ≠ x(yz)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let mut cands: Vec<(usize, usize, usize)> = Vec::new();
        for &(i, j) in self.product.keys() {
            for k in 0..n {
                cands.push((i, j, k));
                cands.push((k, i, j));
            }
        }
        cands.sort();
        cands.dedup();
        for (i, j, k) in cands {
            let (ei, ej, ek) = (
                SparseVec::unit(i, self.field),
                SparseVec::unit(j, self.field),
                SparseVec::unit(k, self.field),
            );
            if self.mul(&self.mul(&ei, &ej), &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                return Some((i, j, k));
            }
        }
        None
    }

    /// The sum of the degree-zero basis elements, when it is a two-sided unit.
    pub fn unit(&self) -> Option<SparseVec> {
        let u = SparseVec::from_entries(
            (0..self.dim())
                .filter(|&i| self.degree(i) == 0)
                .map(|i| (i, self.field.one()))
                .collect(),
        );
        if u.is_zero() {
            return None;
        }
        let ok = (0..self.dim()).all(|i| {
            let e = SparseVec::unit(i, self.field);
            self.mul(&u, &e) == e && self.mul(&e, &u) == e
        });
        ok.then_some(u)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: DgaJson = serde_json::from_str(text)?;
        raw.build()
    }

    pub fn to_json(&self) -> DgaJson {
        let (field, p) = field_to_json(self.field);
        let n = self.dim();
        let mut product: Vec<ProductJson> = self
            .product
            .iter()
            .map(|(&(i, j), v)| ProductJson {
                left: Value::String(self.basis[i].name.clone()),
                right: Value::String(self.basis[j].name.clone()),
                result: dense_json(v, n),
            })
            .collect();
        product.sort_by_key(|a| (a.left.to_string(), a.right.to_string()));
        DgaJson {
            field: Some(field),
            p,
            basis: self
                .basis
                .iter()
                .map(|b| BasisJson {
                    name: b.name.clone(),
                    degree: b.degree,
                    adams: ext_to_value(&ExtValue::Finite(b.value.clone())),
                })
                .collect(),
            d: self.d.iter().map(|v| dense_json(v, n)).collect(),
            product,
        }
    }
}

fn dense_json(v: &SparseVec, n: usize) -> Vec<Value> {
    let mut out = vec![Value::from(0); n];
    for (i, c) in v.iter() {
        out[*i] = serde_json::to_value(c).expect("scalar");
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisJson {
    pub name: String,
    pub degree: i32,
    pub adams: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductJson {
    pub left: Value,
    pub right: Value,
    pub result: Vec<Value>,
}

/// On-disk description of a filtered dg algebra. `d[i]` lists the
/// coefficients of the differential of basis element `i`; products not
/// listed are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DgaJson {
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub basis: Vec<BasisJson>,
    #[serde(default)]
    pub d: Vec<Vec<Value>>,
    #[serde(default)]
    pub product: Vec<ProductJson>,
}

impl DgaJson {
    pub fn build(&self) -> Result<FilteredDgAlgebra> {
        let alg = self.build_unchecked()?;
        alg.validate()?;
        Ok(alg)
    }

    /// Parses without checking the algebra identities; shapes and names are
    /// still checked.
    pub fn build_unchecked(&self) -> Result<FilteredDgAlgebra> {
        let field = field_from_json(self.field.as_deref(), self.p)?;
        let n = self.basis.len();
        let mut basis = Vec::with_capacity(n);
        for (k, b) in self.basis.iter().enumerate() {
            let value = match ext_from_value(&b.adams)? {
                ExtValue::Finite(q) => q,
                other => return Err(Error::Input(format!("basis[{k}] ({}): adams value {other} must be finite", b.name))),
            };
            basis.push(BasisInfo {
                name: b.name.clone(),
                degree: b.degree,
                value,
            });
        }
        let mut names = HashMap::new();
        for (k, b) in basis.iter().enumerate() {
            if names.insert(b.name.clone(), k).is_some() {
                return Err(Error::Input(format!("duplicate basis name `{}`", b.name)));
            }
        }
        let dense = |row: &[Value], what: &str| -> Result<SparseVec> {
            if row.len() != n {
                return Err(Error::Input(format!("{what}: expected {n} coefficients, got {}", row.len())));
            }
            let mut entries = Vec::new();
            for (k, v) in row.iter().enumerate() {
                let c: Scalar = scalar_from_value(field, v).map_err(|e| Error::Input(format!("{what}[{k}]: {e}")))?;
                entries.push((k, c));
            }
            Ok(SparseVec::from_entries(entries))
        };
        let d = if self.d.is_empty() {
            vec![SparseVec::new(); n]
        } else {
            if self.d.len() != n {
                return Err(Error::Input(format!("d: expected {n} rows, got {}", self.d.len())));
            }
            self.d
                .iter()
                .enumerate()
                .map(|(k, row)| dense(row, &format!("d[{k}]")))
                .collect::<Result<Vec<_>>>()?
        };
        let lookup = |v: &Value, what: &str| -> Result<usize> {
            match v {
                Value::String(s) => names.get(s).copied().ok_or_else(|| Error::Input(format!("{what}: unknown basis element `{s}`"))),
                Value::Number(x) => x
                    .as_u64()
                    .map(|x| x as usize)
                    .filter(|&x| x < n)
                    .ok_or_else(|| Error::Input(format!("{what}: bad index {x}"))),
                other => Err(Error::Input(format!("{what}: expected a name or index, got {other}"))),
            }
        };
        let mut product = HashMap::new();
        for (k, p) in self.product.iter().enumerate() {
            let what = format!("product[{k}]");
            let i = lookup(&p.left, &what)?;
            let j = lookup(&p.right, &what)?;
            let r = dense(&p.result, &what)?;
            if product.contains_key(&(i, j)) {
                return Err(Error::Input(format!("{what}: product listed twice")));
            }
            if !r.is_zero() {
                product.insert((i, j), r);
            }
        }
        Ok(FilteredDgAlgebra {
            field,
            basis,
            d,
            product,
        })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn heisenberg_json(dz: &str) -> String {
        let names = ["1", "x", "y", "z", "xy", "xz", "yz", "xyz"];
        let degs = [0, 1, 1, 1, 2, 2, 2, 3];
        let basis: Vec<String> = names
            .iter()
            .zip(degs)
            .map(|(n, d)| format!("{{\"name\":\"{n}\",\"degree\":{d},\"adams\":0}}"))
            .collect();
        let unit = |k: usize| {
            let mut v = ["0"; 8];
            v[k] = "1";
            format!("[{}]", v.join(","))
        };
        let zero = format!("[{}]", ["0"; 8].join(","));
        let dz_row = unit(names.iter().position(|n| *n == dz).unwrap());
        let d: Vec<String> = (0..8).map(|k| if k == 3 { dz_row.clone() } else { zero.clone() }).collect();
        // exterior algebra on x, y, z
        let mut prods = Vec::new();
        let word = |s: &str| -> Vec<char> { if s == "1" { vec![] } else { s.chars().collect() } };
        for a in names {
            for b in names {
                let (wa, wb) = (word(a), word(b));
                if wa.iter().any(|c| wb.contains(c)) {
                    continue;
                }
                let mut w: Vec<char> = wa.iter().chain(wb.iter()).copied().collect();
                let mut sign = 1;
                for i in 0..w.len() {
                    for j in 0..w.len() - 1 - i {
                        if w[j] > w[j + 1] {
                            w.swap(j, j + 1);
                            sign = -sign;
                        }
                    }
                }
                let name: String = if w.is_empty() { "1".into() } else { w.into_iter().collect() };
                let k = names.iter().position(|n| *n == name).unwrap();
                let mut v = vec!["0".to_string(); 8];
                v[k] = sign.to_string();
                prods.push(format!("{{\"left\":\"{a}\",\"right\":\"{b}\",\"result\":[{}]}}", v.join(",")));
            }
        }
        format!(
            "{{\"field\":\"Q\",\"basis\":[{}],\"d\":[{}],\"product\":[{}]}}",
            basis.join(","),
            d.join(","),
            prods.join(",")
        )
    }

    #[test]
    fn heisenberg_accepted() {
        let alg = FilteredDgAlgebra::from_json_str(&heisenberg_json("xy")).unwrap();
        assert_eq!(alg.dim(), 8);
        assert!(alg.unit().is_some());
    }

    #[test]
    fn mutated_heisenberg_names_leibniz() {
        let err = FilteredDgAlgebra::from_json_str(&heisenberg_json("xz")).unwrap_err();
        match err {
            Error::Identity { identity, witness } => {
                assert_eq!(identity, "Leibniz");
                assert_eq!(witness, "(y, z)");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn empty_algebra() {
        let alg = FilteredDgAlgebra::from_json_str("{\"field\":\"F2\",\"basis\":[]}").unwrap();
        assert_eq!(alg.dim(), 0);
    }

    #[test]
    fn json_roundtrip() {
        let alg = FilteredDgAlgebra::from_json_str(&heisenberg_json("xy")).unwrap();
        let text = serde_json::to_string(&alg.to_json()).unwrap();
        assert_eq!(FilteredDgAlgebra::from_json_str(&text).unwrap(), alg);
    }

    #[test]
    fn non_multiplicative_rejected() {
        let text = r#"{"field":"F2","basis":[
            {"name":"a","degree":0,"adams":1},{"name":"b","degree":0,"adams":0}],
            "product":[{"left":"a","right":"a","result":[0,1]}]}"#;
        match FilteredDgAlgebra::from_json_str(text).unwrap_err() {
            Error::Identity { identity, .. } => assert_eq!(identity, "multiplicativity"),
            other => panic!("unexpected {other}"),
        }
    }
}
