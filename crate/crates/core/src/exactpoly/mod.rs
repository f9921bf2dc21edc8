//! Exact polynomial and cyclotomic arithmetic.

mod cyclotomic;
mod dense;
mod laurent;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_reduce, embed_complex, CyclotomicInt};
pub use dense::DensePoly;
pub use laurent::{q_int_binom, q_pochhammer, LaurentPoly, QExp};

/// Pointwise `poly_arith` for callers that choose the operation at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &LaurentPoly, r: &LaurentPoly, op: PolyOp) -> LaurentPoly {
    match op {
        PolyOp::Add => p + r,
        PolyOp::Sub => p - r,
        PolyOp::Mul => p * r,
    }
}
