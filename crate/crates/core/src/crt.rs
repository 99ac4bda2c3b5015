//! Per-prime-power decomposition of composite-modulus positions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::NumPosition;
use crate::modular::{crt_combine, factor_prime_powers, PrimePowerFactor, Residue};

/// Product residues of a position, one per prime-power factor of its modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateVector {
    factors: Vec<PrimePowerFactor>,
    components: Vec<Residue>,
}

impl StateVector {
    pub fn new(factors: Vec<PrimePowerFactor>, components: Vec<Residue>) -> Result<Self> {
        if factors.len() != components.len() {
            return Err(Error::LengthMismatch {
                left: factors.len(),
                right: components.len(),
            });
        }
        for (f, c) in factors.iter().zip(&components) {
            if c.modulus().get() != f.value {
                return Err(Error::ModulusMismatch {
                    left: c.modulus().get(),
                    right: f.value,
                });
            }
        }
        Ok(Self {
            factors,
            components,
        })
    }

    pub fn factors(&self) -> &[PrimePowerFactor] {
        &self.factors
    }

    pub fn components(&self) -> &[Residue] {
        &self.components
    }

    pub fn values(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.value()).collect()
    }

    /// Recombines the components into the product residue mod `m`.
    pub fn combine(&self) -> Residue {
        crt_combine(&self.components, &self.factors).expect("factors are pairwise coprime")
    }
}

pub fn state_vector(pos: &NumPosition) -> StateVector {
    let factors = factor_prime_powers(pos.modulus());
    let components = factors
        .iter()
        .map(|f| {
            let m = f.modulus();
            m.residue(pos.heaps().iter().fold(1, |acc, &h| m.mul(acc, h % m.get())))
        })
        .collect();
    StateVector {
        factors,
        components,
    }
}

pub fn is_identity_vector(v: &StateVector) -> bool {
    v.components.iter().all(|c| c.is_one())
}

/// Reads the same heaps in the factor subgame.
pub fn project(pos: &NumPosition, factor: PrimePowerFactor) -> Result<NumPosition> {
    let modulus = pos.modulus().get();
    if factor.value < 2 || !modulus.is_multiple_of(factor.value) {
        return Err(Error::FactorMismatch {
            factor: factor.value,
            modulus,
        });
    }
    Ok(pos.with_modulus(factor.modulus()))
}
