//! Exact check of the pointwise fourth-order identity and quadrature checks
//! of its integrated forms.

mod lemmas;
mod multipoly;

pub use lemmas::{
    CompactRadialBump, LEMMA22_POINTS, LEMMA22_R_MIN, Lemma22Report, lemma21_check, lemma22_check,
    lemma22_check_with,
};
pub use multipoly::{MAX_DEGREE, MAX_VARS, MultiPoly, PolyCalculus, poly_calculus};
