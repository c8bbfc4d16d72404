//! Milnor-basis models of the mod 2 Steenrod algebra, classical and
//! C-motivic, and their `A(n)` subalgebras.
//!
//! Multiplication has two routes. [`dual::multiply_by_pairing`] dualizes
//! the coproduct of the dual algebra and is the reference.
//! [`multiply`] and the tables in [`Algebra`] use the classical Milnor
//! product formula on the shared sequence indexing, attaching to each
//! motivic term the unique τ-power its weight allows. Tests check that the
//! two routes agree.

mod algebra;
pub mod dual;
pub mod milnor;

pub use algebra::{
    multiply, multiply_basis, multiply_bounded, Algebra, AlgebraElement, AlgebraSpec, Flavor,
    MilnorBasisElement, Profile, DEFAULT_DEGREE_BOUND,
};
pub use dual::{coproduct, multiply_by_pairing, DualMonomial};

use alloc::vec::Vec;

/// All basis elements of `spec` in internal degree `t`, optionally only
/// those of weight `w`, in canonical order.
pub fn basis(spec: AlgebraSpec, t: u32, w: Option<i32>) -> Vec<MilnorBasisElement> {
    let profile_bounds: Option<Vec<u8>> = match spec.profile {
        Profile::Full => None,
        Profile::A(n) => Some((1..=n + 1).map(|i| n + 2 - i).collect()),
    };
    let mut out: Vec<MilnorBasisElement> = milnor::sequences_of_degree(t, profile_bounds.as_deref())
        .into_iter()
        .filter(|s| w.is_none_or(|w| spec.seq_weight(s) == w))
        .map(|s| MilnorBasisElement::from_seq(spec.flavor, &s))
        .collect();
    out.sort();
    out
}
