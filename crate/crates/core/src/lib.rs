//! Exact-arithmetic ramification invariants of degree-p Kummer extensions
//! L = K(h^(1/p)) of mixed-characteristic valued fields.
//!
//! The base field K is a configurable global model Q(zeta_p)[u?][s]/(s^(p^n)
//! - p); every invariant computed here (classification case, Swan conductor,
//! j and i, ideal valuations) depends only on the value group and residue
//! field, so it agrees with the henselization of K. All arithmetic is exact.

pub mod arith;
pub mod classify;
pub mod cyclotomic;
pub mod defectlab;
pub mod error;
pub mod expr;
pub mod ext;
pub mod fields;
pub mod ratfunc;
pub mod report;
pub mod residue;
pub mod theorems;
pub mod value;


pub use error::{Error, Result};
pub use expr::eval_expr;

pub use fields::{make_field, Field, FieldDesc, FieldElem};
pub use value::{in_p_multiple, Value, ValueGroup};
