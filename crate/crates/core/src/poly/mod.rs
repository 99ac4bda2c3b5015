//! Finite fields `GF(p^n)` and the polynomial game played over them.

mod field;
mod game;
mod polynomial;

pub use field::{FieldElement, FieldSpec, AES_POLYNOMIAL};
pub use game::{outcome_bruteforce_poly, PolySolver, PolyPosition};

/// True iff `coeffs` (constant term first) has no nontrivial factor over `F_p`.
pub fn is_irreducible(coeffs: &[u64], p: u64) -> bool {
    polynomial::is_irreducible(coeffs, p)
}

/// Formats a canonical integer as a polynomial over `F_p`, e.g. `x^2+x+1`.
pub fn format_polynomial(rep: u64, p: u64) -> String {
    polynomial::Poly::from_int(rep, p).format()
}
