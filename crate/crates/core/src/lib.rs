//! Minimal free resolutions over the classical and C-motivic Steenrod algebras.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.
//! Everything here is pure computation: file formats, charts and the command
//! line live in the `motext` crate.
//!
//! The pieces, bottom up:
//!
//! * [`degree`]: stem/filtration/weight bookkeeping.
//! * [`linalg`]: bit-packed linear algebra over F₂ and graded kernels over F₂[τ].
//! * [`steenrod`]: Milnor bases, the dual coproduct and products.
//! * [`resolution`]: minimal resolutions and Ext groups.
//! * [`products`]: chain-map lifting, Yoneda products and tower probes.
//! * [`bx`]: bookkeeping for the Chow-degree-one Burklund-Xu E₁-page.
//! * [`compare`]: restriction to A(2), τ- and h₁-localization, named classes.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bx;
pub mod compare;
pub mod degree;
pub mod error;
pub mod linalg;
pub mod products;
pub mod resolution;
pub mod steenrod;

pub use degree::{chow_degree, v1_intercept, AlgDegree, TriDegree};
pub use error::{Error, Result};
pub use resolution::{ExtClass, ExtTable, Resolution};
pub use steenrod::{Algebra, AlgebraSpec, Flavor, Profile};
