//! Graded linear algebra over F₂[τ].
//!
//! Every module here is free and every map homogeneous, so each matrix
//! entry is either zero or a single power of τ fixed by the weights of its
//! row and column. Specializing τ to 1 loses nothing: a homogeneous element
//! of weight `w` is the same thing as a vector supported on coordinates of
//! weight at most `w`. The kernel is computed that way, one weight at a time
//! in increasing order.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, RangeInclusive};

use super::{BitVec, Echelon};
use crate::degree::AlgDegree;
use crate::error::{Error, Result};

/// A polynomial in τ over F₂, stored as its sorted set of exponents.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TauPoly(Vec<u32>);

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly(Vec::new())
    }

    pub fn one() -> Self {
        TauPoly::monomial(0)
    }

    pub fn monomial(k: u32) -> Self {
        TauPoly(alloc::vec![k])
    }

    /// Builds a polynomial from exponents, cancelling repeated ones in pairs.
    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = exps.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(v.len());
        for e in v {
            if out.last() == Some(&e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        TauPoly(out)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// The single exponent of a monomial.
    pub fn as_monomial(&self) -> Option<u32> {
        match self.0.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    /// Value at τ = 1.
    pub fn at_one(&self) -> bool {
        self.0.len() % 2 == 1
    }

    pub fn shift(&self, k: u32) -> TauPoly {
        TauPoly(self.0.iter().map(|e| e + k).collect())
    }

    /// Drops every term of degree above `bound`; `Err` carries the lowest
    /// dropped exponent.
    pub fn truncate(&self, bound: u32) -> core::result::Result<TauPoly, u32> {
        match self.0.iter().find(|&&e| e > bound) {
            None => Ok(self.clone()),
            Some(&e) => Err(e),
        }
    }
}

impl Add for &TauPoly {
    type Output = TauPoly;
    fn add(self, o: &TauPoly) -> TauPoly {
        TauPoly::from_exponents(self.0.iter().chain(o.0.iter()).copied())
    }
}

impl Mul for &TauPoly {
    type Output = TauPoly;
    fn mul(self, o: &TauPoly) -> TauPoly {
        TauPoly::from_exponents(
            self.0
                .iter()
                .flat_map(|a| o.0.iter().map(move |b| a + b)),
        )
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "τ")?,
                _ => write!(f, "τ^{e}")?,
            }
        }
        Ok(())
    }
}

/// A matrix over F₂[τ] between free graded modules.
///
/// Columns are the domain basis, rows the codomain basis. An entry
/// `τ^k` in row `i`, column `j` requires `k = w(col j) - w(row i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMatrix {
    pub row_degrees: Vec<AlgDegree>,
    pub col_degrees: Vec<AlgDegree>,
    pub entries: Vec<Vec<TauPoly>>,
}

/// A homogeneous element of a free F₂[τ]-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauVector {
    pub weight: i32,
    pub coeffs: Vec<TauPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauKernel {
    /// Free generators of the kernel whose weight lies in the window.
    pub generators: Vec<TauVector>,
    /// Weights of generators that fell outside the window.
    pub truncated: Vec<i32>,
}

impl TauKernel {
    pub fn is_truncated(&self) -> bool {
        !self.truncated.is_empty()
    }
}

impl TauMatrix {
    pub fn new(
        row_degrees: Vec<AlgDegree>,
        col_degrees: Vec<AlgDegree>,
        entries: Vec<Vec<TauPoly>>,
    ) -> Result<Self> {
        let m = TauMatrix {
            row_degrees,
            col_degrees,
            entries,
        };
        m.check_homogeneous()?;
        Ok(m)
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        if self.entries.len() != self.row_degrees.len()
            || self.entries.iter().any(|r| r.len() != self.col_degrees.len())
        {
            return Err(Error::Invalid("matrix shape does not match its labels".into()));
        }
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let (r, c) = (self.row_degrees[i], self.col_degrees[j]);
                let k = c.weight - r.weight;
                if r.t != c.t || k < 0 || e.as_monomial() != Some(k as u32) {
                    return Err(Error::Inhomogeneous(format!(
                        "entry ({i},{j}) = {e} between {r} and {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The matrix with τ set to 1, as packed columns (images of the
    /// domain basis vectors).
    fn columns_at_one(&self) -> Vec<BitVec> {
        (0..self.col_degrees.len())
            .map(|j| {
                BitVec::from_ones(
                    self.row_degrees.len(),
                    (0..self.row_degrees.len()).filter(|&i| self.entries[i][j].at_one()),
                )
            })
            .collect()
    }

    /// Apply to a homogeneous vector.
    pub fn apply(&self, v: &TauVector) -> Vec<TauPoly> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.coeffs)
                    .fold(TauPoly::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

/// Free generators of the kernel of a homogeneous matrix, as a graded
/// F₂[τ]-module. Generators with weight outside `window` are reported in
/// [`TauKernel::truncated`] rather than dropped silently.
pub fn tau_kernel(m: &TauMatrix, window: RangeInclusive<i32>) -> Result<TauKernel> {
    m.check_homogeneous()?;
    let cols = m.columns_at_one();
    let n = cols.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (m.col_degrees[j].weight, j));
    let mut ech = Echelon::new(m.row_degrees.len(), n);
    let mut out = TauKernel {
        generators: Vec::new(),
        truncated: Vec::new(),
    };
    for j in order {
        let w = m.col_degrees[j].weight;
        if let Some(k) = ech.insert(cols[j].clone(), BitVec::unit(n, j)) {
            if !window.contains(&w) {
                out.truncated.push(w);
                continue;
            }
            let coeffs = (0..n)
                .map(|i| {
                    if k.get(i) {
                        TauPoly::monomial((w - m.col_degrees[i].weight) as u32)
                    } else {
                        TauPoly::zero()
                    }
                })
                .collect();
            out.generators.push(TauVector { weight: w, coeffs });
        }
    }
    Ok(out)
}
