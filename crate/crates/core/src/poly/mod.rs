//! Exact coefficient arithmetic, monomials, orders and polynomials.

mod coeff;
mod monomial;
mod parse;
mod polynomial;

pub use coeff::{is_prime, Coefficient, Field};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{Cursor, PolyParser};
pub use polynomial::{ArithOp, PolyRing, Polynomial};

/// A degrevlex ring on the given variable names.
pub fn ring_from_names(field: Field, names: &[&str]) -> PolyRing {
    PolyRing::new(
        field,
        names.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::DegRevLex,
    )
}
