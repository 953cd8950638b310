//! Exact coefficient arithmetic: cyclotomic numbers, Laurent polynomials
//! over them, and canonical rational functions in t. Everything here is
//! exact; no floating point is involved anywhere.

mod cyclotomic;
mod laurent;
mod ratfunc;
mod render;

pub use cyclotomic::{cyclotomic_poly, Cyclotomic};
pub use laurent::LaurentPoly;
pub use ratfunc::{w_equal, RatFunc, TorsionValue, Width};
pub use render::{
    parse_laurent, parse_ratfunc, render_laurent, render_ratfunc, render_torsion_value,
    ParseError,
};
