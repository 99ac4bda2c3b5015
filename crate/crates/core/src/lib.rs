//! Multiplicative Modular Nim.
//!
//! Heaps shrink by subtraction; the position is decided by the product of
//! the heaps modulo `m` (losing for the player to move iff it is 1). The
//! crate covers prime and composite moduli, the mumber (multiplicative mex)
//! recursion, CRT state vectors, and the polynomial variant over `GF(p^n)`.

pub mod crt;
pub mod error;
pub mod game;
pub mod grundy;
pub mod hint;
pub mod modular;
pub mod poly;
pub mod position;
mod search;
pub mod tables;

pub use crate::crt::{is_identity_vector, project, state_vector, StateVector};
pub use crate::error::{Error, IllegalMove, Result};
pub use crate::game::{ConsolidationPolicy, MoveAction, NumPosition, Outcome};
pub use crate::grundy::{
    children_mumbers, grundy_single_heap, mumber_mex, outcome_bruteforce, single_heap_mumber,
    sum_multiplicativity_check, MumberReport, Solver,
};
pub use crate::modular::{
    crt_combine, factor_prime_powers, mod_inverse, unit_mex, Modulus, PrimePowerFactor, Residue,
};
pub use crate::hint::{Explanation, Hint};
pub use crate::poly::{FieldElement, FieldSpec, PolyPosition};
pub use crate::position::{AnalysisView, Position, Variant};
