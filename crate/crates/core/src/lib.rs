//! Numerical laboratory for the weighted biharmonic Lane–Emden system
//! `-Δu = |x|^β v`, `-Δv = |x|^α |u|^{p-1} u`.

pub mod critdim;
pub mod error;
pub mod fields;
pub mod functionals;
pub mod identities;
pub mod params;
pub mod poly1;
pub mod quad;

pub use error::{LabError, Result};
pub use params::{DerivedParams, Exponents, RegimeTag, SystemParams};
