use alloc::vec::Vec;

use super::ExtTable;
use crate::degree::{v1_intercept, TriDegree};

/// Result of scanning classical Ext below the line of slope ½ through
/// `(-3, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub max_stem: i32,
    pub max_filtration: i32,
    /// Nonzero degrees with intercept below −3, other than the `h₀`-tower.
    pub offending: Vec<(TriDegree, usize)>,
    /// Nonzero degrees with intercept exactly −3.
    pub intercept_minus_three: Vec<(TriDegree, usize)>,
    /// Intercept −3 degrees outside `(8k+3, 4k+3)` or of dimension ≠ 1.
    pub unexpected_minus_three: Vec<(TriDegree, usize)>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.offending.is_empty() && self.unexpected_minus_three.is_empty()
    }
}

/// Check that classical Ext in stems `0..=max_stem` (and the table's
/// filtration range) vanishes below intercept −3 apart from `h₀ᵏ`, and that
/// at intercept −3 it is one-dimensional exactly in the degrees of `Pᵏh₁³`.
pub fn verify_vanishing(table: &ExtTable, max_stem: i32) -> VanishingReport {
    let max_f = table.max_filtration().map_or(-1, |f| f as i32);
    let mut report = VanishingReport {
        max_stem,
        max_filtration: max_f,
        offending: Vec::new(),
        intercept_minus_three: Vec::new(),
        unexpected_minus_three: Vec::new(),
    };
    for stem in 0..=max_stem {
        for f in 0..=max_f {
            if !table.covers(stem, f) {
                continue;
            }
            let dim = table.stable_dim(stem, f).unwrap_or(0);
            if dim == 0 {
                continue;
            }
            let d = TriDegree::classical(stem, f);
            let c = v1_intercept(stem, f);
            if c < -3 && stem != 0 {
                report.offending.push((d, dim));
            } else if c == -3 {
                report.intercept_minus_three.push((d, dim));
                let periodic = stem % 8 == 3 && f == (stem - 3) / 2 + 3;
                if !periodic || dim != 1 {
                    report.unexpected_minus_three.push((d, dim));
                }
            }
        }
    }
    report
}
