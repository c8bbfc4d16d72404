use alloc::vec::Vec;

use super::ProductEngine;
use crate::degree::TriDegree;
use crate::error::Result;
use crate::linalg::{BitVec, Echelon};
use crate::resolution::ExtClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    Indecomposable,
    /// Products of basis classes summing to the class.
    Decomposable(Vec<(ExtClass, ExtClass)>),
    /// Some factor degree lies outside the computed range.
    Inconclusive(TriDegree),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub outcome: ScanOutcome,
    /// Factor degrees with both groups nonzero, as `(first, second)`.
    pub pairs_checked: Vec<(TriDegree, TriDegree)>,
    pub products_computed: usize,
}

impl ProductEngine<'_> {
    /// Decide whether `x` is a sum of products of classes of positive
    /// internal degree, by multiplying every pair of basis classes whose
    /// degrees add up to that of `x`.
    pub fn indecomposability_scan(&mut self, x: &ExtClass) -> Result<ScanReport> {
        let table = self.table();
        let motivic = table.spec().is_motivic();
        let d = x.degree;
        let x = table.reduce(x)?;
        let n = x.coords.len();
        let mut span = Echelon::new(n, 0);
        let mut products: Vec<(ExtClass, ExtClass)> = Vec::new();
        let mut report = ScanReport {
            outcome: ScanOutcome::Indecomposable,
            pairs_checked: Vec::new(),
            products_computed: 0,
        };
        for f1 in 0..=d.filtration {
            let f2 = d.filtration - f1;
            for s1 in 0..=d.stem {
                let s2 = d.stem - s1;
                if s1 + f1 == 0 || s2 + f2 == 0 {
                    continue;
                }
                for (st, f) in [(s1, f1), (s2, f2)] {
                    if !table.covers(st, f) {
                        report.outcome = ScanOutcome::Inconclusive(TriDegree::new(st, f, 0));
                        return Ok(report);
                    }
                }
                let (Some(g1), Some(g2)) = (table.group(s1, f1)?, table.group(s2, f2)?) else {
                    continue;
                };
                let weights: Vec<i32> = if motivic {
                    let (_, hi1) = g1.weight_range();
                    let (_, hi2) = g2.weight_range();
                    (d.weight - hi2..=hi1).collect()
                } else {
                    alloc::vec![0]
                };
                for w1 in weights {
                    let w2 = if motivic { d.weight - w1 } else { 0 };
                    let (c1, c2) = (g1.classes(w1), g2.classes(w2));
                    if c1.is_empty() || c2.is_empty() {
                        continue;
                    }
                    report.pairs_checked.push((c1[0].degree, c2[0].degree));
                    for a in &c1 {
                        for b in &c2 {
                            let p = self.yoneda_product(a, b)?;
                            report.products_computed += 1;
                            if p.coords.is_zero() {
                                continue;
                            }
                            products.push((a.clone(), b.clone()));
                            span.insert_plain(p.coords);
                        }
                    }
                }
            }
        }
        if span.contains(&x.coords) {
            report.outcome = ScanOutcome::Decomposable(self.witness(&x, &products)?);
        }
        Ok(report)
    }

    /// A subset of `products` summing to `x`.
    fn witness(&mut self, x: &ExtClass, products: &[(ExtClass, ExtClass)]) -> Result<Vec<(ExtClass, ExtClass)>> {
        let n = x.coords.len();
        let mut ech = Echelon::new(n, products.len());
        for (i, (a, b)) in products.iter().enumerate() {
            let p = self.yoneda_product(a, b)?;
            ech.insert(p.coords, BitVec::unit(products.len(), i));
        }
        let pre = ech.solve(&x.coords).unwrap_or_else(|| BitVec::zeros(products.len()));
        Ok(pre.iter_ones().map(|i| products[i].clone()).collect())
    }
}
