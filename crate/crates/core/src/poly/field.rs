//! `GF(p^n)` as `F_p[x] / I(x)`, with elements stored as canonical integers:
//! base-`p` digits are polynomial coefficients, constant term least
//! significant. `9 = 1001₂` is `x^3 + 1`, which reduces to `x` (integer 2)
//! under `x^3 + x + 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::polynomial::{is_irreducible, Poly};
use crate::error::{Error, Result};
use crate::modular::is_prime;

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldData {
    p: u64,
    n: u32,
    order: u64,
    irreducible: Poly,
}

/// A validated finite field. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub struct FieldSpec {
    data: Arc<FieldData>,
}

#[derive(Serialize, Deserialize)]
struct RawField {
    p: u64,
    n: u32,
    /// Coefficients of `I(x)`, constant term first.
    irreducible: Vec<u64>,
}

impl TryFrom<RawField> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        FieldSpec::new(raw.p, raw.n, &raw.irreducible)
    }
}

impl From<FieldSpec> for RawField {
    fn from(f: FieldSpec) -> RawField {
        RawField {
            p: f.p(),
            n: f.n(),
            irreducible: f.irreducible_coeffs(),
        }
    }
}

/// Coefficients `x^8 + x^4 + x^3 + x + 1`, the Rijndael field polynomial.
pub const AES_POLYNOMIAL: [u64; 9] = [1, 1, 0, 1, 1, 0, 0, 0, 1];

impl FieldSpec {
    /// `coeffs` lists the coefficients of `I(x)` constant term first and
    /// must have length `n + 1` with a leading 1.
    pub fn new(p: u64, n: u32, coeffs: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || coeffs.len() != n as usize + 1 || coeffs[n as usize] != 1 {
            return Err(Error::NotMonic);
        }
        if let Some(&coeff) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::CoefficientOutOfRange { coeff, p });
        }
        let order = p.checked_pow(n).ok_or(Error::FieldTooLarge { p, n })?;
        if !is_irreducible(coeffs, p) {
            return Err(Error::NotIrreducible);
        }
        Ok(Self {
            data: Arc::new(FieldData {
                p,
                n,
                order,
                irreducible: Poly::new(coeffs.to_vec(), p),
            }),
        })
    }

    /// Polynomial packed as an integer whose base-`p` digits are the
    /// coefficients, e.g. `0b1011` for `x^3 + x + 1` over `F_2`.
    pub fn from_packed(p: u64, n: u32, packed: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut coeffs = Poly::from_int(packed, p).coeffs().to_vec();
        if coeffs.len() > n as usize + 1 {
            return Err(Error::NotMonic);
        }
        coeffs.resize(n as usize + 1, 0);
        Self::new(p, n, &coeffs)
    }

    pub fn aes() -> Self {
        Self::new(2, 8, &AES_POLYNOMIAL).expect("Rijndael polynomial is irreducible")
    }

    pub fn p(&self) -> u64 {
        self.data.p
    }

    pub fn n(&self) -> u32 {
        self.data.n
    }

    /// `p^n`.
    pub fn order(&self) -> u64 {
        self.data.order
    }

    pub fn irreducible_coeffs(&self) -> Vec<u64> {
        let mut c = self.data.irreducible.coeffs().to_vec();
        c.resize(self.data.n as usize + 1, 0);
        c
    }

    /// The irreducible polynomial packed as an integer.
    pub fn packed(&self) -> u128 {
        self.data
            .irreducible
            .coeffs()
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p() as u128 + c as u128)
    }

    pub fn irreducible_string(&self) -> String {
        self.data.irreducible.format()
    }

    pub fn element(&self, rep: u64) -> Result<FieldElement> {
        if rep >= self.order() {
            return Err(Error::NotCanonical {
                heap: rep,
                order: self.order(),
            });
        }
        Ok(FieldElement {
            rep,
            field: self.clone(),
        })
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            rep: 1,
            field: self.clone(),
        }
    }

    /// The element `x` itself.
    pub fn generator_candidate(&self) -> FieldElement {
        self.reduce_int(self.p())
    }

    /// Reads `h` as a polynomial and reduces it modulo `I(x)`.
    pub fn reduce_int(&self, h: u64) -> FieldElement {
        let p = self.p();
        let rep = Poly::from_int(h, p).rem(&self.data.irreducible, p).to_int(p);
        FieldElement {
            rep,
            field: self.clone(),
        }
    }

    fn poly(&self, rep: u64) -> Poly {
        Poly::from_int(rep, self.p())
    }

    fn from_poly(&self, poly: &Poly) -> FieldElement {
        let p = self.p();
        FieldElement {
            rep: poly.rem(&self.data.irreducible, p).to_int(p),
            field: self.clone(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p(), self.n(), self.irreducible_string())
    }
}

/// A field element by canonical integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    rep: u64,
    field: FieldSpec,
}

impl FieldElement {
    pub fn rep(&self) -> u64 {
        self.rep
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    pub fn is_one(&self) -> bool {
        self.rep == 1
    }

    pub fn polynomial(&self) -> String {
        self.field.poly(self.rep).format()
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let p = self.field.p();
        let product = self.field.poly(self.rep).mul(&self.field.poly(other.rep), p);
        Ok(self.field.from_poly(&product))
    }

    /// Extended Euclid over `F_p[x]`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.field.p();
        let inverse = self
            .field
            .poly(self.rep)
            .inverse_mod(&self.field.data.irreducible, p)
            .expect("nonzero element of a field is invertible");
        Ok(self.field.from_poly(&inverse))
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            exp >>= 1;
        }
        acc
    }

    /// Smallest `k >= 1` with `self^k = 1`; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_one() {
            acc = acc.mul(self).expect("same field");
            k += 1;
        }
        Some(k)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.polynomial(), self.rep)
    }
}
