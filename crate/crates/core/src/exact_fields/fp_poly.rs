//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored lowest degree first and kept trimmed, so the zero
//! polynomial is the empty vector. `p` must be below `2^32` so products of two
//! residues fit in a `u64`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % p as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        FpPoly::new(
            p,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    /// The monomial `t^n`.
    pub fn monomial(p: u64, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1 % p;
        FpPoly::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Order of vanishing at `t = 0`.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p)
            .collect();
        FpPoly::new(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| a * (c % p) % p).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, out)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let p = self.p;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = inv_mod(divisor.leading(), p).ok_or(Error::NotInvertible)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((FpPoly::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * lead_inv % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - c * d % p) % p;
            }
        }
        Ok((FpPoly::new(p, quot), FpPoly::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) if !self.is_zero() => self.scale(inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor over a field");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Result<Self> {
        self.mul(rhs).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = FpPoly::one(self.p).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// `a(t^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u64; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k] = c;
        }
        FpPoly::new(self.p, out)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = FpPoly::monomial(self.p, 1);
        let p = self.p as u128;
        // x^{p^n} = x mod f
        let mut frob = x.clone();
        for _ in 0..n {
            frob = frob.pow_mod(p, &f).expect("monic modulus");
        }
        if frob != x.rem(&f).expect("monic modulus") {
            return false;
        }
        for q in prime_factors(n as u64) {
            let mut h = x.clone();
            for _ in 0..(n as u64 / q) {
                h = h.pow_mod(p, &f).expect("monic modulus");
            }
            if !f.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for FpPoly {
    /// Descending powers of `t`, e.g. `t^3 + 2t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}
