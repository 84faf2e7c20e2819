//! Exact scalars and commutative polynomials shared by every other module.

mod multipoly;
mod scalar;
mod symmetric;
mod unipoly;

pub use multipoly::{Exponent, MultiPoly};
pub use scalar::{q, ParseScalarError, Scalar};
pub use symmetric::{elementary, express_in_elementary_symmetrics};
pub use unipoly::{lagrange_numerator, poly_div_exact, poly_from_roots, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division leaves nonzero remainder {0}")]
    NonzeroRemainder(UniPoly),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("interpolation denominator vanishes between axes {axis} and {other}")]
    DegenerateDenominator { axis: usize, other: usize },
    #[error("polynomial is not symmetric")]
    NotSymmetric,
}
