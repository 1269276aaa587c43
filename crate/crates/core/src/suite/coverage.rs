//! Whether every element of a coset `Hx` is conjugate into `H`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::classes::ClassTable;
use crate::element::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};
use crate::group::SmallGroup;
use crate::matrix::Mat;

#[derive(Clone, Debug, Serialize)]
pub struct ElementRecord {
    /// Index of `z` in the enumeration of `H`; the element is `z·x`.
    pub h_index: usize,
    pub order: u64,
    /// Class id in the class table, for elements of orders 2 and 4.
    pub class: Option<usize>,
    pub covered: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub label: String,
    pub x_in_h: bool,
    pub elements: Vec<ElementRecord>,
    pub covered: bool,
    pub order_histogram: BTreeMap<u64, usize>,
}

impl CosetReport {
    pub fn first_uncovered(&self) -> Option<&ElementRecord> {
        self.elements.iter().find(|e| !e.covered)
    }
}

/// An element is covered when its order is 1 or 13 (Sylow), or when it has
/// order 2 or 4 and lies in the class of some element of `H`.
#[derive(Clone, Debug)]
pub struct CoverageCriterion<'a> {
    pub table: &'a ClassTable,
    pub h_classes: BTreeSet<usize>,
}

impl<'a> CoverageCriterion<'a> {
    pub fn new(table: &'a ClassTable, h: &SmallGroup<Mat>) -> Result<Self> {
        let mut h_classes = BTreeSet::new();
        for z in h.elements() {
            let o = z.element_order(DEFAULT_ORDER_CAP)?;
            if o == 2 || o == 4 {
                let cls = table
                    .classify(z, o)
                    .ok_or_else(|| Error::Certification(format!("element of H of order {o} in no known class")))?;
                h_classes.insert(cls);
            }
        }
        Ok(CoverageCriterion { table, h_classes })
    }

    /// `(order, class, covered)` for `y`.
    pub fn test(&self, y: &Mat) -> Result<(u64, Option<usize>, bool)> {
        let o = y.element_order(DEFAULT_ORDER_CAP)?;
        Ok(match o {
            1 | 13 => (o, None, true),
            2 | 4 => {
                let cls = self.table.classify(y, o);
                (o, cls, cls.is_some_and(|c| self.h_classes.contains(&c)))
            }
            _ => (o, None, false),
        })
    }

    /// Early-exit variant: whether every element of `Hx` is covered.
    pub fn coset_covered(&self, h: &SmallGroup<Mat>, x: &Mat) -> Result<bool> {
        for z in h.elements() {
            if !self.test(&z.mat_mul(x))?.2 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn verify_coset_covered(
    h: &SmallGroup<Mat>,
    x: &Mat,
    criterion: &CoverageCriterion<'_>,
    label: &str,
) -> Result<CosetReport> {
    let mut elements = Vec::with_capacity(h.len());
    let mut order_histogram = BTreeMap::new();
    for (i, z) in h.elements().iter().enumerate() {
        let y = z.mat_mul(x);
        let (order, class, covered) = criterion.test(&y)?;
        *order_histogram.entry(order).or_insert(0) += 1;
        elements.push(ElementRecord { h_index: i, order, class, covered });
    }
    Ok(CosetReport {
        label: label.to_string(),
        x_in_h: h.contains(x),
        covered: elements.iter().all(|e| e.covered),
        elements,
        order_histogram,
    })
}
