//! Barcodes: multisets of `(degree, interval)` with multiplicities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interval::{ExtValue, Interval};
use crate::io::ExtJson;
use crate::matching::{interval_bottleneck, PartialMatching};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    entries: BTreeMap<(i32, Interval), usize>,
}

/// One line of the barcode JSON format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarEntry {
    pub degree: i32,
    pub lower: ExtJson,
    pub upper: ExtJson,
    pub multiplicity: usize,
}

impl Barcode {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: i32, interval: Interval, mult: usize) {
        if mult > 0 {
            *self.entries.entry((degree, interval)).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, degree: i32, interval: &Interval) -> usize {
        self.entries
            .get(&(degree, interval.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Interval, usize)> {
        self.entries.iter().map(|((d, i), m)| (*d, i, *m))
    }

    pub fn degrees(&self) -> BTreeSet<i32> {
        self.entries.keys().map(|k| k.0).collect()
    }

    /// Bars of one degree with multiplicities expanded, in sorted order.
    pub fn bars(&self, degree: i32) -> Vec<Interval> {
        self.entries
            .iter()
            .filter(|((d, _), _)| *d == degree)
            .flat_map(|((_, i), m)| std::iter::repeat_n(i.clone(), *m))
            .collect()
    }

    pub fn restrict(&self, degree: i32) -> Barcode {
        Barcode {
            entries: self
                .entries
                .iter()
                .filter(|((d, _), _)| *d == degree)
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Number of bars of `degree` containing `p`.
    pub fn rank_at(&self, degree: i32, p: &ExtValue) -> usize {
        self.entries
            .iter()
            .filter(|((d, i), _)| *d == degree && i.contains(p))
            .map(|(_, m)| *m)
            .sum()
    }

    pub fn to_entries(&self) -> Vec<BarEntry> {
        self.iter()
            .map(|(degree, i, m)| BarEntry {
                degree,
                lower: ExtJson(i.lower.clone()),
                upper: ExtJson(i.upper.clone()),
                multiplicity: m,
            })
            .collect()
    }

    pub fn from_entries(entries: &[BarEntry]) -> Result<Self, Error> {
        let mut b = Barcode::new();
        for e in entries {
            if e.multiplicity == 0 {
                return Err(Error::Input(format!("zero multiplicity in degree {}", e.degree)));
            }
            b.add(e.degree, Interval::new(e.lower.0.clone(), e.upper.0.clone())?, e.multiplicity);
        }
        Ok(b)
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, i, m) in self.iter() {
            if m == 1 {
                writeln!(f, "H{d} {i}")?;
            } else {
                writeln!(f, "H{d} {i} x{m}")?;
            }
        }
        Ok(())
    }
}

/// Bottleneck distance in one degree, with an optimal matching.
pub fn bottleneck(a: &Barcode, b: &Barcode, degree: i32) -> (ExtValue, PartialMatching) {
    interval_bottleneck(&a.bars(degree), &b.bars(degree))
}

/// Supremum of the per-degree bottleneck distances.
pub fn bottleneck_all(a: &Barcode, b: &Barcode) -> ExtValue {
    a.degrees()
        .union(&b.degrees())
        .map(|&d| bottleneck(a, b, d).0)
        .max()
        .unwrap_or_else(ExtValue::zero)
}
