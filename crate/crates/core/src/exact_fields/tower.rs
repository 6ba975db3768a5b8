//! Finite fields `F_{p^s}` as `F_p[x] / (m(x))`.

use std::sync::Arc;

use serde::Serialize;

use super::fp_poly::{prime_factors, FpPoly};
use super::is_prime;
use crate::error::{Error, Result};

pub const MAX_TOWER_DEGREE: u32 = 24;

/// Descriptor of `F_{p^s}`: the prime, the degree and an irreducible monic modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    p: u64,
    s: u32,
    modulus: FpPoly,
    /// `p^s`
    size: u128,
}

/// Element of a tower, stored as its reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FFElem {
    tower: Arc<Tower>,
    value: FpPoly,
}

/// First irreducible monic degree-`s` polynomial over `F_p`, scanning
/// `x^s + c_{s-1} x^{s-1} + ... + c_0` by the integer `sum c_j p^j`.
pub fn build_tower(p: u64, s: u32) -> Result<Arc<Tower>> {
    if !is_prime(p) || p >= 1 << 32 {
        return Err(Error::NotPrime(p));
    }
    if s == 0 {
        return Err(Error::InvalidArgument("tower degree must be >= 1".into()));
    }
    if s > MAX_TOWER_DEGREE {
        return Err(Error::TowerTooLarge(s));
    }
    let size = (p as u128)
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidArgument("field size overflows".into()))?;
    let mut index: u128 = 0;
    loop {
        let mut coeffs = digits(index, p, s as usize);
        coeffs.push(1);
        let candidate = FpPoly::new(p, coeffs);
        if candidate.is_irreducible() {
            return Ok(Arc::new(Tower {
                p,
                s,
                modulus: candidate,
                size,
            }));
        }
        index += 1;
        if index >= size {
            // every degree has an irreducible polynomial
            unreachable!("no irreducible polynomial of degree {s} over F_{p}");
        }
    }
}

fn digits(mut index: u128, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((index % p as u128) as u64);
        index /= p as u128;
    }
    out
}

impl Tower {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// Number of elements, `p^s`.
    pub fn size(&self) -> u128 {
        self.size
    }

    /// Element whose base-`p` digits (lowest first) are the coefficients of the index.
    pub fn element(self: &Arc<Self>, index: u128) -> FFElem {
        FFElem {
            tower: Arc::clone(self),
            value: FpPoly::new(self.p, digits(index, self.p, self.s as usize)),
        }
    }

    pub fn from_poly(self: &Arc<Self>, poly: &FpPoly) -> FFElem {
        FFElem {
            tower: Arc::clone(self),
            value: poly.rem(&self.modulus).expect("modulus is monic"),
        }
    }

    pub fn from_residue(self: &Arc<Self>, c: u64) -> FFElem {
        self.from_poly(&FpPoly::constant(self.p, c))
    }

    pub fn zero(self: &Arc<Self>) -> FFElem {
        self.element(0)
    }

    pub fn one(self: &Arc<Self>) -> FFElem {
        self.from_residue(1)
    }

    /// The class of `x`, a generator of the field over `F_p`.
    pub fn generator(self: &Arc<Self>) -> FFElem {
        self.from_poly(&FpPoly::monomial(self.p, 1))
    }

    /// All elements, in index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.size).map(move |i| self.element(i))
    }

    fn order_factors(&self) -> Vec<u64> {
        let n = u64::try_from(self.size - 1).expect("desk-scale field");
        prime_factors(n)
    }
}

impl FFElem {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn value(&self) -> &FpPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    /// Index inverse to [`Tower::element`].
    pub fn index(&self) -> u128 {
        let p = self.tower.p as u128;
        self.value
            .coeffs()
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    /// Coefficients `c_0..c_{s-1}`, zero-padded.
    pub fn coefficients(&self) -> Vec<u64> {
        (0..self.tower.s as usize)
            .map(|i| self.value.coeff(i))
            .collect()
    }

    fn with(&self, value: FpPoly) -> FFElem {
        FFElem {
            tower: Arc::clone(&self.tower),
            value,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.with(self.value.add(&rhs.value))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.with(self.value.sub(&rhs.value))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.with(
            self.value
                .mul_mod(&rhs.value, &self.tower.modulus)
                .expect("modulus is monic"),
        )
    }

    pub fn scale(&self, c: u64) -> Self {
        self.with(self.value.scale(c))
    }

    pub fn pow(&self, e: u128) -> Self {
        self.with(
            self.value
                .pow_mod(e, &self.tower.modulus)
                .expect("modulus is monic"),
        )
    }

    /// Inverse via `x^{p^s - 2}`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.tower.size - 2))
    }

    /// `x^n` for any integer `n`; negative powers go through the inverse.
    pub fn pow_signed(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u128))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs() as u128))
        }
    }

    /// `x^{p^d}`.
    pub fn frobenius(&self, d: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..d {
            out = out.pow(self.tower.p as u128);
        }
        out
    }

    /// Degree of the smallest subfield `F_{p^d}` containing the element.
    pub fn minimal_degree(&self) -> u32 {
        let s = self.tower.s;
        (1..=s)
            .filter(|d| s.is_multiple_of(*d))
            .find(|&d| self.frobenius(d) == *self)
            .unwrap_or(s)
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut m = u64::try_from(self.tower.size - 1).expect("desk-scale field");
        for l in self.tower.order_factors() {
            while m % l == 0 && self.pow((m / l) as u128).is_one() {
                m /= l;
            }
        }
        Some(m)
    }
}

/// Serializable view of a tower element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FFElemView {
    pub coefficients: Vec<u64>,
}

impl From<&FFElem> for FFElemView {
    fn from(x: &FFElem) -> Self {
        FFElemView {
            coefficients: x.coefficients(),
        }
    }
}
