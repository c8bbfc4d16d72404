use alloc::vec::Vec;

use super::BitVec;

/// A dense matrix over F₂ stored as packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Reduced row-echelon data of an [`F2Matrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduced {
    pub rank: usize,
    /// Pivot column of each nonzero row of `reduced`, increasing.
    pub pivots: Vec<usize>,
    /// The nonzero rows of the reduced row-echelon form.
    pub reduced: F2Matrix,
    /// A basis of the null space `{x : M x = 0}`, one vector per free column.
    pub kernel: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            cols,
            rows: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        F2Matrix { cols, rows }
    }

    pub fn from_bools(rows: &[&[bool]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        F2Matrix::from_rows(cols, rows.iter().map(|r| BitVec::from_bools(r)).collect())
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b)
    }

    /// `M x` for a column vector `x`.
    pub fn apply(&self, x: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Gauss-Jordan elimination. The pivot of each step is the leftmost
    /// column with a nonzero entry at or below the current row, taking the
    /// lowest-index such row, so the result is deterministic.
    pub fn rref(&self) -> RowReduced {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        let mut is_pivot = alloc::vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        RowReduced {
            rank: r,
            pivots,
            reduced: F2Matrix {
                cols: self.cols,
                rows,
            },
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }
}

/// Reduce `v` to normal form against a matrix already in reduced
/// row-echelon form with the given pivots.
pub fn reduce_by_rref(v: &mut BitVec, rows: &[BitVec], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if v.get(p) {
            v.xor_assign(row);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn brute_kernel_dim(m: &F2Matrix) -> usize {
        let n = m.num_cols();
        (0u32..1 << n)
            .filter(|&x| {
                let v = BitVec::from_ones(n, (0..n).filter(|i| x >> i & 1 == 1));
                m.apply(&v).is_zero()
            })
            .count()
            .trailing_zeros() as usize
    }

    #[test]
    fn identity_has_full_rank() {
        let r = F2Matrix::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let r = F2Matrix::zeros(2, 5).rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.len(), 5);
    }

    #[test]
    fn fixed_matrix_matches_enumeration() {
        let m = F2Matrix::from_bools(&[
            &[true, true, false, true],
            &[false, true, true, false],
            &[true, false, true, true],
            &[false, false, false, true],
        ]);
        let r = m.rref();
        // Row 3 is the sum of rows 1 and 2.
        assert_eq!(r.rank, 3);
        assert_eq!(r.kernel.len(), brute_kernel_dim(&m));
        for k in &r.kernel {
            assert!(m.apply(k).is_zero());
        }
        // Enumerate all 2^4 vectors: the kernel is exactly the span found.
        let kernel_vectors: Vec<u32> = (0u32..16)
            .filter(|&x| m.apply(&BitVec::from_ones(4, (0..4).filter(|i| x >> i & 1 == 1))).is_zero())
            .collect();
        assert_eq!(kernel_vectors, vec![0, 7]);
        assert_eq!(r.kernel[0], BitVec::from_ones(4, [0, 1, 2]));
    }

    #[test]
    fn rref_pivots_are_stable() {
        let m = F2Matrix::from_bools(&[&[false, true, true], &[false, true, false], &[true, true, true]]);
        let r = m.rref();
        let again = r.reduced.rref();
        assert_eq!(r.pivots, again.pivots);
        assert_eq!(r.reduced, again.reduced);
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..64, cols in 1usize..64, seed in proptest::collection::vec(proptest::bits::u64::ANY, 64)) {
            let m = F2Matrix::from_rows(cols, (0..rows).map(|i| {
                BitVec::from_ones(cols, (0..cols).filter(|&j| seed[i] >> j & 1 == 1))
            }).collect());
            let r = m.rref();
            proptest::prop_assert_eq!(r.rank + r.kernel.len(), cols);
            proptest::prop_assert!(r.rank <= rows.min(cols));
            for k in &r.kernel {
                proptest::prop_assert!(m.apply(k).is_zero());
            }
            let again = r.reduced.rref();
            proptest::prop_assert_eq!(&again.pivots, &r.pivots);
            proptest::prop_assert_eq!(&again.reduced, &r.reduced);
        }
    }
}
