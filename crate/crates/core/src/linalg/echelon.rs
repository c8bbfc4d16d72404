use alloc::vec::Vec;

use super::BitVec;

/// An incrementally built row echelon basis that remembers, for every row,
/// which combination of inserted vectors produced it.
///
/// Rows are only ever reduced against rows inserted before them. Reducing a
/// vector therefore walks the rows in insertion order, and the combination
/// recovered for a vector in the span only involves rows inserted no later
/// than the last one it needs. The resolution code relies on this: inserting
/// in increasing weight keeps every recovered preimage homogeneous.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    pre_width: usize,
    rows: Vec<BitVec>,
    pre: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize, pre_width: usize) -> Self {
        Echelon {
            width,
            pre_width,
            rows: Vec::new(),
            pre: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pre_width(&self) -> usize {
        self.pre_width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` (and its preimage, if tracked) against the current rows.
    pub fn reduce(&self, v: &mut BitVec, mut pre: Option<&mut BitVec>) {
        debug_assert_eq!(v.len(), self.width);
        // Row i vanishes on the pivots of rows before it, so one pass in
        // insertion order clears every pivot.
        for (i, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                v.xor_assign(&self.rows[i]);
                if let Some(pv) = pre.as_deref_mut() {
                    pv.xor_assign(&self.pre[i]);
                }
            }
        }
    }

    /// Insert `v` with preimage `pre`. If `v` reduces to zero, returns the
    /// reduced preimage, a kernel vector; otherwise stores a new row.
    pub fn insert(&mut self, mut v: BitVec, mut pre: BitVec) -> Option<BitVec> {
        debug_assert_eq!(pre.len(), self.pre_width);
        self.reduce(&mut v, Some(&mut pre));
        match v.first_one() {
            None => Some(pre),
            Some(p) => {
                self.pivots.push(p);
                self.rows.push(v);
                self.pre.push(pre);
                None
            }
        }
    }

    /// Insert without preimage tracking. Returns whether the rank grew.
    pub fn insert_plain(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v, None);
        match v.first_one() {
            None => false,
            Some(p) => {
                self.pivots.push(p);
                self.rows.push(v);
                self.pre.push(BitVec::zeros(self.pre_width));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v, None);
        v.is_zero()
    }

    /// Find a combination of inserted vectors summing to `v`.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        let mut v = v.clone();
        let mut pre = BitVec::zeros(self.pre_width);
        self.reduce(&mut v, Some(&mut pre));
        v.is_zero().then_some(pre)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn kernel_and_solve() {
        let mut e = Echelon::new(3, 4);
        let vs = [
            BitVec::from_ones(3, [0, 1]),
            BitVec::from_ones(3, [1, 2]),
            BitVec::from_ones(3, [0, 2]),
            BitVec::from_ones(3, [2]),
        ];
        let mut kernel = Vec::new();
        for (i, v) in vs.iter().enumerate() {
            if let Some(k) = e.insert(v.clone(), BitVec::unit(4, i)) {
                kernel.push(k);
            }
        }
        assert_eq!(e.rank(), 3);
        assert_eq!(kernel, vec![BitVec::from_ones(4, [0, 1, 2])]);
        let target = BitVec::from_ones(3, [0]);
        let pre = e.solve(&target).unwrap();
        let mut sum = BitVec::zeros(3);
        for i in pre.iter_ones() {
            sum.xor_assign(&vs[i]);
        }
        assert_eq!(sum, target);
    }

    #[test]
    fn solutions_only_use_early_rows_when_possible() {
        // v0 = e0, v1 = e0 + e1; solving e0 must not use v1.
        let mut e = Echelon::new(2, 2);
        e.insert(BitVec::unit(2, 0), BitVec::unit(2, 0));
        e.insert(BitVec::from_ones(2, [0, 1]), BitVec::unit(2, 1));
        assert_eq!(e.solve(&BitVec::unit(2, 0)).unwrap(), BitVec::unit(2, 0));
    }
}
