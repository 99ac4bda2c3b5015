//! Exact modular arithmetic on machine words.
//!
//! Products go through `u128` so any modulus that fits a `u64` is safe.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(value: u64) -> Result<Self> {
        if value < 2 {
            return Err(Error::InvalidModulus(value));
        }
        Ok(Self(value))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn residue(self, value: u64) -> Residue {
        Residue {
            value: value % self.0,
            modulus: self,
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn is_unit(self, a: u64) -> bool {
        gcd(a % self.0, self.0) == 1
    }

    /// Residues coprime to the modulus, ascending.
    pub fn units(self) -> impl Iterator<Item = u64> {
        (1..self.0).filter(move |&a| gcd(a, self.0) == 1)
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.0)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A value in `0..modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        modulus.residue(value)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_one(self) -> bool {
        self.value == 1
    }

    pub fn is_unit(self) -> bool {
        self.modulus.is_unit(self.value)
    }

    /// Product of two residues of the same modulus.
    pub fn mul(self, other: Residue) -> Result<Residue> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(Residue {
            value: self.modulus.mul(self.value, other.value),
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// One factor `prime^exponent` of a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePowerFactor {
    pub prime: u64,
    pub exponent: u32,
    pub value: u64,
}

impl PrimePowerFactor {
    pub fn modulus(self) -> Modulus {
        Modulus(self.value)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: Modulus) -> Result<Residue> {
    let modulus = m.get() as i128;
    let (mut old_r, mut r) = ((a % m.get()) as i128, modulus);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible {
            a,
            modulus: m.get(),
        });
    }
    Ok(m.residue(old_s.rem_euclid(modulus) as u64))
}

/// Minimum excludant in the multiplicative order: units of `m` ascending,
/// then 0, then the remaining non-units ascending. For prime `m` the scan
/// is `1, 2, ..., m-1, 0`, so the mex of the empty set is the identity 1.
pub fn unit_mex<I>(set: I, m: Modulus) -> Result<Residue>
where
    I: IntoIterator<Item = Residue>,
{
    let taken: HashSet<u64> = set.into_iter().map(|r| r.value() % m.get()).collect();
    let units = m.units();
    let non_units = std::iter::once(0).chain((1..m.get()).filter(move |&a| !m.is_unit(a)));
    units
        .chain(non_units)
        .find(|c| !taken.contains(c))
        .map(|c| m.residue(c))
        .ok_or(Error::SetSaturated(m.get()))
}

/// Prime-power factorization by trial division, ascending by prime.
pub fn factor_prime_powers(m: Modulus) -> Vec<PrimePowerFactor> {
    let mut rest = m.get();
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut exponent = 0;
            let mut value = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                exponent += 1;
                value *= p;
            }
            factors.push(PrimePowerFactor {
                prime: p,
                exponent,
                value,
            });
        }
        p += 1;
    }
    if rest > 1 {
        factors.push(PrimePowerFactor {
            prime: rest,
            exponent: 1,
            value: rest,
        });
    }
    factors
}

/// Chinese remainder reconstruction over pairwise-coprime factors.
pub fn crt_combine(residues: &[Residue], factors: &[PrimePowerFactor]) -> Result<Residue> {
    if residues.len() != factors.len() {
        return Err(Error::LengthMismatch {
            left: residues.len(),
            right: factors.len(),
        });
    }
    let total = factors
        .iter()
        .try_fold(1u64, |acc, f| acc.checked_mul(f.value))
        .ok_or(Error::ProductOverflow)?;
    let total = Modulus::new(total)?;
    let mut acc = 0u64;
    for (r, f) in residues.iter().zip(factors) {
        if r.modulus().get() != f.value {
            return Err(Error::ModulusMismatch {
                left: r.modulus().get(),
                right: f.value,
            });
        }
        let rest = total.get() / f.value;
        let inv = mod_inverse(rest % f.value, f.modulus())?.value();
        let term = total.mul(total.mul(r.value(), rest), inv);
        acc = ((acc as u128 + term as u128) % total.get() as u128) as u64;
    }
    Ok(total.residue(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn scan_inverse(a: u64, m: u64) -> Option<u64> {
        (1..m).find(|r| (a % m) * r % m == 1)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, m(7)).unwrap().value(), 1);
        assert_eq!(mod_inverse(2, m(5)).unwrap().value(), scan_inverse(2, 5).unwrap());
        assert_eq!(mod_inverse(2, m(5)).unwrap().value(), 3);
        assert_eq!(mod_inverse(12, m(5)).unwrap().value(), 3);
        assert_eq!(
            mod_inverse(3, m(15)),
            Err(Error::NotInvertible { a: 3, modulus: 15 })
        );
    }

    #[test]
    fn inverse_matches_scan_exhaustively() {
        for modulus in 2..60u64 {
            for a in 0..2 * modulus {
                let got = mod_inverse(a, m(modulus)).ok().map(Residue::value);
                assert_eq!(got, scan_inverse(a, modulus), "a={a} m={modulus}");
            }
        }
    }

    #[test]
    fn modulus_rejects_small_values() {
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert!(Modulus::new(0).is_err());
    }

    #[test]
    fn mex_examples() {
        let five = m(5);
        assert_eq!(unit_mex([], five).unwrap().value(), 1);
        let s = [1, 2, 3, 4].map(|v| five.residue(v));
        assert_eq!(unit_mex(s, five).unwrap().value(), 0);
        let fifteen = m(15);
        let s = [1, 2, 7, 8, 11, 13, 14].map(|v| fifteen.residue(v));
        assert_eq!(unit_mex(s, fifteen).unwrap().value(), 4);
    }

    #[test]
    fn mex_saturated() {
        let three = m(3);
        let s = [0, 1, 2].map(|v| three.residue(v));
        assert_eq!(unit_mex(s, three), Err(Error::SetSaturated(3)));
    }

    #[test]
    fn mex_scans_non_units_last() {
        let six = m(6);
        let s = [1, 5].map(|v| six.residue(v));
        assert_eq!(unit_mex(s, six).unwrap().value(), 0);
        let s = [0, 1, 5].map(|v| six.residue(v));
        assert_eq!(unit_mex(s, six).unwrap().value(), 2);
    }

    #[test]
    fn mex_reconstructs_missing_residue_for_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for t in 0..p {
                let s = (0..p).filter(|&v| v != t).map(|v| m(p).residue(v));
                assert_eq!(unit_mex(s, m(p)).unwrap().value(), t);
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let f = |v| {
            factor_prime_powers(m(v))
                .into_iter()
                .map(|f| (f.prime, f.exponent, f.value))
                .collect::<Vec<_>>()
        };
        assert_eq!(f(15), vec![(3, 1, 3), (5, 1, 5)]);
        assert_eq!(f(90), vec![(2, 1, 2), (3, 2, 9), (5, 1, 5)]);
        assert_eq!(f(7), vec![(7, 1, 7)]);
        assert_eq!(f(1024), vec![(2, 10, 1024)]);
    }

    #[test]
    fn crt_examples() {
        let factors = factor_prime_powers(m(15));
        let combine = |a, b| {
            crt_combine(&[m(3).residue(a), m(5).residue(b)], &factors)
                .unwrap()
                .value()
        };
        assert_eq!(combine(1, 1), 1);
        assert_eq!(combine(2, 4), 14);
        assert_eq!(combine(1, 3), 13);
        assert!(matches!(
            crt_combine(&[m(3).residue(1)], &factors),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn crt_round_trip_exhaustive() {
        for modulus in 2..=1000u64 {
            let factors = factor_prime_powers(m(modulus));
            assert_eq!(factors.iter().map(|f| f.value).product::<u64>(), modulus);
            for x in 0..modulus {
                let parts: Vec<_> = factors.iter().map(|f| f.modulus().residue(x)).collect();
                assert_eq!(crt_combine(&parts, &factors).unwrap().value(), x);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn inverse_is_inverse(modulus in 2u64..1_000_000, a in 0u64..u64::MAX) {
                let md = m(modulus);
                if gcd(a % modulus, modulus) == 1 {
                    let inv = mod_inverse(a, md).unwrap();
                    prop_assert_eq!(md.mul(a % modulus, inv.value()), 1 % modulus);
                    prop_assert!(inv.value() > 0 || modulus == 1);
                } else {
                    prop_assert!(mod_inverse(a, md).is_err());
                }
            }

            #[test]
            fn mex_is_never_in_set(modulus in 2u64..40, picks in proptest::collection::vec(0u64..40, 0..40)) {
                let md = m(modulus);
                let set: Vec<_> = picks.iter().map(|&v| md.residue(v)).collect();
                match unit_mex(set.clone(), md) {
                    Ok(r) => {
                        prop_assert!(!set.contains(&r));
                        prop_assert_eq!(unit_mex(set, md).unwrap(), r);
                    }
                    Err(e) => prop_assert_eq!(e, Error::SetSaturated(modulus)),
                }
            }
        }
    }
}
