//! Dense polynomials over a prime field `F_p`, little-endian coefficients.

use crate::modular::{mod_inverse, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Poly {
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    let m = Modulus::new(p).expect("field characteristic is at least 2");
    mod_inverse(a, m).expect("nonzero coefficient over a prime field").value()
}

impl Poly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = Self { coeffs };
        poly.trim();
        poly
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// Base-`p` digits of `value`, least significant digit first.
    pub fn from_int(mut value: u64, p: u64) -> Self {
        let mut coeffs = Vec::new();
        while value > 0 {
            coeffs.push(value % p);
            value /= p;
        }
        Self { coeffs }
    }

    /// Inverse of [`Poly::from_int`]. Callers keep the degree small enough
    /// for the value to fit.
    pub fn to_int(&self, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn sub(&self, other: &Poly, p: u64) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Poly::new(coeffs, p)
    }

    pub fn mul(&self, other: &Poly, p: u64) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Poly::new(out, p)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly, p: u64) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = inv(divisor.lead(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = mulmod(rem[top], lead_inv, p);
            if c != 0 {
                let shift = top - d;
                quot[shift] = c;
                for (k, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] = (rem[shift + k] + p - mulmod(c, dc, p)) % p;
                }
            }
            rem.pop();
        }
        (Poly::new(quot, p), Poly::new(rem, p))
    }

    pub fn rem(&self, divisor: &Poly, p: u64) -> Poly {
        self.div_rem(divisor, p).1
    }

    /// `self^{-1} mod modulus` by the extended Euclidean algorithm, or
    /// `None` when the two share a factor.
    pub fn inverse_mod(&self, modulus: &Poly, p: u64) -> Option<Poly> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus, p));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, p);
            let s = s0.sub(&q.mul(&s1, p), p);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let scale = Poly::new(vec![inv(r0.lead(), p)], p);
        Some(s0.mul(&scale, p).rem(modulus, p))
    }

    /// Human form such as `x^2+x+1` or `2x+1`.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && k > 0 { String::new() } else { c.to_string() };
            let term = match k {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{k}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

/// True iff the polynomial has degree >= 1 and no monic factor of degree
/// `1..=deg/2`, checked by trial division.
pub fn is_irreducible(coeffs: &[u64], p: u64) -> bool {
    let f = Poly::new(coeffs.to_vec(), p);
    let Some(deg) = f.degree() else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for k in 1..=deg / 2 {
        let Some(count) = p.checked_pow(k as u32) else {
            continue;
        };
        for low in 0..count {
            let mut coeffs = Poly::from_int(low, p).coeffs;
            coeffs.resize(k, 0);
            coeffs.push(1);
            let candidate = Poly { coeffs };
            if f.rem(&candidate, p).is_zero() {
                return false;
            }
        }
    }
    true
}
