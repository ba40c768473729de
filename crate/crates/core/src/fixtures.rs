//! Small named algebras used by tests, the acceptance suite and the CLI.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::complex::FilteredSimplicialComplex;
use crate::dga::{BasisInfo, FilteredDgAlgebra};
use crate::field::Field;
use crate::interval::ExtValue;
use crate::linalg::SparseVec;

fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

/// Corners of the unit square.
pub fn square_points() -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]
}

/// Rips complex of the unit square up to triangles, capped at 2.
pub fn square_complex() -> FilteredSimplicialComplex {
    let dist = FilteredSimplicialComplex::distances(&square_points()).expect("square");
    FilteredSimplicialComplex::rips(&dist, 2, Some(&ExtValue::int(2))).expect("square")
}

pub fn square(field: Field) -> FilteredDgAlgebra {
    square_complex().cochain_algebra(field)
}

fn single_step(triangles: &[[usize; 3]]) -> FilteredSimplicialComplex {
    let list: Vec<(Vec<usize>, BigRational)> = triangles.iter().map(|t| (t.to_vec(), zero())).collect();
    FilteredSimplicialComplex::from_explicit(&list).expect("triangulation")
}

/// Seven-vertex triangulation of the torus, all simplices at value 0.
pub fn torus_complex() -> FilteredSimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7 {
        tris.push([i, (i + 1) % 7, (i + 3) % 7]);
        tris.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    single_step(&tris)
}

pub fn torus(field: Field) -> FilteredDgAlgebra {
    torus_complex().cochain_algebra(field)
}

/// A sphere (boundary of a tetrahedron) with two hollow triangles attached
/// at a vertex: the same Betti numbers as the torus, trivial cup products.
pub fn wedge_complex() -> FilteredSimplicialComplex {
    let mut list: Vec<(Vec<usize>, BigRational)> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .map(|t| (t.to_vec(), zero()))
        .collect();
    for [a, b, c] in [[0, 4, 5], [0, 6, 7]] {
        for e in [[a, b], [a, c], [b, c]] {
            list.push((e.to_vec(), zero()));
        }
    }
    FilteredSimplicialComplex::from_explicit(&list).expect("wedge")
}

pub fn wedge(field: Field) -> FilteredDgAlgebra {
    wedge_complex().cochain_algebra(field)
}

/// Exterior algebra on `x, y, z` with `dz` given by a monomial name, not
/// validated.
fn exterior(field: Field, dz: &str) -> FilteredDgAlgebra {
    let names = ["1", "x", "y", "z", "xy", "xz", "yz", "xyz"];
    let word = |s: &str| -> Vec<char> {
        if s == "1" {
            Vec::new()
        } else {
            s.chars().collect()
        }
    };
    let index = |s: &str| names.iter().position(|n| *n == s).expect("monomial");
    let basis = names
        .iter()
        .map(|n| BasisInfo {
            name: n.to_string(),
            degree: word(n).len() as i32,
            value: zero(),
        })
        .collect();
    let mut d = vec![SparseVec::new(); 8];
    d[index("z")] = SparseVec::unit(index(dz), field);
    let mut product = HashMap::new();
    for a in names {
        for b in names {
            let (wa, wb) = (word(a), word(b));
            if wa.iter().any(|c| wb.contains(c)) {
                continue;
            }
            let mut w: Vec<char> = wa.iter().chain(&wb).copied().collect();
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
            product.insert((index(a), index(b)), SparseVec::from_entries(vec![(index(&name), field.from_i64(sign))]));
        }
    }
    FilteredDgAlgebra {
        field,
        basis,
        d,
        product,
    }
}

/// Cochains of the Heisenberg nilmanifold: `Λ(x, y, z)` with `dz = xy`.
pub fn heisenberg(field: Field) -> FilteredDgAlgebra {
    exterior(field, "xy")
}

/// The same algebra with `dz = xz`, which breaks the Leibniz rule.
pub fn heisenberg_mutated(field: Field) -> FilteredDgAlgebra {
    exterior(field, "xz")
}

/// The cohomology ring of the Heisenberg algebra with zero differential:
/// `1, x, y, a, b, t` in degrees `0, 1, 1, 2, 2, 3` with `xb = bx = t` and
/// `ya = ay = −t`.
pub fn formal(field: Field) -> FilteredDgAlgebra {
    let names = [("1", 0), ("x", 1), ("y", 1), ("a", 2), ("b", 2), ("t", 3)];
    let basis = names
        .iter()
        .map(|(n, d)| BasisInfo {
            name: n.to_string(),
            degree: *d,
            value: zero(),
        })
        .collect();
    let mut product = HashMap::new();
    let e = |i: usize, c: i64| SparseVec::from_entries(vec![(i, field.from_i64(c))]);
    for i in 0..6 {
        product.insert((0, i), e(i, 1));
        product.insert((i, 0), e(i, 1));
    }
    product.insert((1, 4), e(5, 1));
    product.insert((4, 1), e(5, 1));
    product.insert((2, 3), e(5, -1));
    product.insert((3, 2), e(5, -1));
    FilteredDgAlgebra {
        field,
        basis,
        d: vec![SparseVec::new(); 6],
        product,
    }
}

/// Every fixture by name.
pub fn by_name(name: &str, field: Field) -> Option<FilteredDgAlgebra> {
    Some(match name {
        "square" => square(field),
        "torus" => torus(field),
        "wedge" => wedge(field),
        "heisenberg" => heisenberg(field),
        "heisenberg-mutated" => heisenberg_mutated(field),
        "formal" => formal(field),
        _ => return None,
    })
}

pub const NAMES: [&str; 6] = ["square", "torus", "wedge", "heisenberg", "heisenberg-mutated", "formal"];
