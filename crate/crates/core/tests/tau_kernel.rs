//! Kernels of small homogeneous F₂[τ]-matrices against brute force.

use motext_core::linalg::{tau_kernel, BitVec, F2Matrix, TauMatrix, TauPoly};
use motext_core::AlgDegree;
use proptest::prelude::*;

const N: usize = 3;

fn matrix(row_w: &[i32], col_w: &[i32], bits: &[bool]) -> TauMatrix {
    let entries = row_w
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            col_w
                .iter()
                .enumerate()
                .map(|(j, &c)| {
                    if c >= r && bits[i * N + j] {
                        TauPoly::monomial((c - r) as u32)
                    } else {
                        TauPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let deg = |w: &i32| AlgDegree::new(0, *w);
    TauMatrix::new(row_w.iter().map(deg).collect(), col_w.iter().map(deg).collect(), entries).unwrap()
}

/// The weight-`w` part of a free module with generators of weights `ws` is
/// spanned by `τ^{w−wⱼ}eⱼ` for `wⱼ ≤ w`; as F₂-vectors these are the `eⱼ`.
fn part(ws: &[i32], w: i32) -> Vec<usize> {
    (0..ws.len()).filter(|&j| ws[j] <= w).collect()
}

proptest! {
    #[test]
    fn kernel_matches_brute_force(
        row_w in prop::collection::vec(-2i32..=2, N),
        col_w in prop::collection::vec(-2i32..=2, N),
        bits in prop::collection::vec(any::<bool>(), N * N),
    ) {
        let m = matrix(&row_w, &col_w, &bits);
        let k = tau_kernel(&m, -10..=10).unwrap();
        prop_assert!(!k.is_truncated());
        for g in &k.generators {
            prop_assert!(m.apply(g).iter().all(TauPoly::is_zero));
        }
        for w in -3..=3 {
            let cols = part(&col_w, w);
            // Brute force: count subsets of the weight-w basis mapping to zero.
            let mut zero = 0usize;
            for mask in 0u32..(1 << cols.len()) {
                let mut img = [false; N];
                for (b, &j) in cols.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        for (i, x) in img.iter_mut().enumerate() {
                            *x ^= m.entries[i][j].at_one();
                        }
                    }
                }
                zero += img.iter().all(|x| !x) as usize;
            }
            // Span of τ-multiples of kernel generators in weight w.
            let rows: Vec<BitVec> = k
                .generators
                .iter()
                .filter(|g| g.weight <= w)
                .map(|g| BitVec::from_ones(N, (0..N).filter(|&j| !g.coeffs[j].is_zero())))
                .collect();
            let rank = F2Matrix::from_rows(N, rows.clone()).rank();
            prop_assert_eq!(1usize << rank, zero, "weight {}", w);
            // Free: generators stay independent.
            prop_assert_eq!(rank, rows.len());
        }
    }
}
