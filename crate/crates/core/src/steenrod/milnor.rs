//! Milnor sequences and the classical product formula.
//!
//! Both flavors share one indexing: a basis element is a finite sequence
//! `S = (s₁, s₂, …)` naming the classical `Sq(S)`, dual to `ξ₁^s₁ ξ₂^s₂ ⋯`.
//! The motivic element `Q(E)P(R)` corresponds to `sᵢ = 2rᵢ + [i-1 ∈ E]`,
//! which is exactly what setting τ = 1 does to its dual monomial.

use alloc::vec;
use alloc::vec::Vec;

/// A Milnor sequence with trailing zeros removed.
pub type Seq = Vec<u32>;

pub fn trim(mut s: Seq) -> Seq {
    while s.last() == Some(&0) {
        s.pop();
    }
    s
}

/// Internal degree `Σ sᵢ(2ⁱ - 1)`.
pub fn seq_degree(s: &[u32]) -> u32 {
    s.iter()
        .enumerate()
        .map(|(i, &x)| x * ((1u32 << (i + 1)) - 1))
        .sum()
}

/// Motivic weight of the element indexed by `s`: each `P`-exponent
/// `rᵢ = ⌊sᵢ/2⌋` contributes `rᵢ(2ⁱ-1)` and each `Q_{i-1}` contributes
/// `2^{i-1} - 1`.
pub fn seq_weight(s: &[u32]) -> i32 {
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let i = i as u32 + 1;
            ((x >> 1) * ((1 << i) - 1) + (x & 1) * ((1 << (i - 1)) - 1)) as i32
        })
        .sum()
}

/// All sequences of internal degree `t`. With `bounds`, entry `sᵢ` must be
/// below `2^{bounds[i-1]}` and entries past the end of `bounds` vanish.
pub fn sequences_of_degree(t: u32, bounds: Option<&[u8]>) -> Vec<Seq> {
    let mut top = 0;
    while (1u32 << (top + 1)) - 1 <= t {
        top += 1;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; top];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, bounds: Option<&[u8]>, out: &mut Vec<Seq>) {
        if i == 0 {
            if left == 0 {
                out.push(trim(cur.clone()));
            }
            return;
        }
        let w = (1u32 << i) - 1;
        let cap = match bounds {
            None => u32::MAX,
            Some(b) => b.get(i - 1).map_or(0, |&p| (1u32 << p) - 1),
        };
        let max = (left / w).min(cap);
        for x in 0..=max {
            cur[i - 1] = x;
            rec(i - 1, left - x * w, cur, bounds, out);
        }
        cur[i - 1] = 0;
    }
    rec(top, t, &mut cur, bounds, &mut out);
    out
}

/// The classical Milnor product `Sq(r)·Sq(s)`, calling `emit` once for each
/// sequence with coefficient one.
///
/// Terms are matrices `x` with row sums `Σⱼ 2ʲ x_{ij} = rᵢ` and column sums
/// `Σᵢ x_{ij} = sⱼ`; the coefficient of `Sq(T)`, `T_n = Σ_{i+j=n} x_{ij}`,
/// is a product of multinomial coefficients, odd exactly when the entries on
/// each antidiagonal have disjoint binary digits.
pub fn milnor_product(r: &[u32], s: &[u32], mut emit: impl FnMut(&[u32])) {
    let rows = r.len();
    let cols = s.len();
    let mut st = State {
        r,
        rows,
        cols,
        x: vec![0; (rows + 1) * (cols + 1)],
        col_left: s.to_vec(),
        diag: vec![0; rows + cols + 1],
    };
    st.cell(1, 1, r.first().copied().unwrap_or(0), &mut emit);
}

struct State<'a> {
    r: &'a [u32],
    rows: usize,
    cols: usize,
    x: Vec<u32>,
    col_left: Vec<u32>,
    diag: Vec<u32>,
}

impl State<'_> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * (self.cols + 1) + j
    }

    fn cell(&mut self, i: usize, j: usize, row_left: u32, emit: &mut impl FnMut(&[u32])) {
        if i > self.rows {
            self.finish(emit);
            return;
        }
        if j > self.cols {
            // x_{i0} takes whatever is left of the row.
            let d = i;
            if self.diag[d] & row_left != 0 {
                return;
            }
            self.diag[d] |= row_left;
            let k = self.at(i, 0);
            self.x[k] = row_left;
            let next = self.r.get(i).copied().unwrap_or(0);
            self.cell(i + 1, 1, next, emit);
            self.diag[d] &= !row_left;
            return;
        }
        let w = 1u32 << j;
        let max = (row_left / w).min(self.col_left[j - 1]);
        let d = i + j;
        for v in 0..=max {
            if self.diag[d] & v != 0 {
                continue;
            }
            self.diag[d] |= v;
            self.col_left[j - 1] -= v;
            let k = self.at(i, j);
            self.x[k] = v;
            self.cell(i, j + 1, row_left - v * w, emit);
            self.col_left[j - 1] += v;
            self.diag[d] &= !v;
        }
        let k = self.at(i, j);
        self.x[k] = 0;
    }

    fn finish(&mut self, emit: &mut impl FnMut(&[u32])) {
        // x_{0j} takes what is left of column j; it sits alone on the
        // first row, so only its own antidiagonal needs checking.
        for j in 1..=self.cols {
            if self.diag[j] & self.col_left[j - 1] != 0 {
                return;
            }
        }
        let mut t = vec![0u32; self.rows + self.cols];
        for i in 1..=self.rows {
            for j in 0..=self.cols {
                t[i + j - 1] += self.x[self.at(i, j)];
            }
        }
        for j in 1..=self.cols {
            t[j - 1] += self.col_left[j - 1];
        }
        emit(&trim(t));
    }
}
