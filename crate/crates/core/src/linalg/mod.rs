//! Linear algebra over F₂ and over the graded ring F₂[τ].

mod bitvec;
mod echelon;
mod matrix;
pub mod tau;

pub use bitvec::BitVec;
pub use echelon::Echelon;
pub use matrix::{reduce_by_rref, F2Matrix, RowReduced};
pub use tau::{tau_kernel, TauKernel, TauMatrix, TauPoly, TauVector};
