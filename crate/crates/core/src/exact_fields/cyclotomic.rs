//! Cyclotomic polynomials and the rings `Q(zeta_N) = Q[X] / (Phi_N)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp_poly::prime_factors;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Dense polynomial over `Q`, stored as integer numerators over one positive
/// common denominator. Kept trimmed and reduced (content coprime to `den`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl QPoly {
    pub fn new(num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut poly = QPoly { num, den };
        poly.normalize();
        poly
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::one(),
        )
    }

    pub fn from_rats(coeffs: &[Rat]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        QPoly::new(num, den)
    }

    pub fn zero() -> Self {
        QPoly::from_ints(&[])
    }

    pub fn one() -> Self {
        QPoly::from_ints(&[1])
    }

    /// `X^n`.
    pub fn monomial(n: usize) -> Self {
        let mut num = vec![BigInt::zero(); n + 1];
        num[n] = BigInt::one();
        QPoly::new(num, BigInt::one())
    }

    fn normalize(&mut self) {
        while self.num.last().is_some_and(|c| c.is_zero()) {
            self.num.pop();
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        match self.num.get(i) {
            Some(c) => Rat::new(c.clone(), self.den.clone()).expect("positive denominator"),
            None => Rat::int(0),
        }
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let l = self.den.lcm(&rhs.den);
        let (a, b) = (&l / &self.den, &l / &rhs.den);
        let n = self.num.len().max(rhs.num.len());
        let zero = BigInt::zero();
        let num = (0..n)
            .map(|i| self.num.get(i).unwrap_or(&zero) * &a + rhs.num.get(i).unwrap_or(&zero) * &b)
            .collect();
        QPoly::new(num, l)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut num = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                num[i + j] += a * b;
            }
        }
        QPoly::new(num, &self.den * &rhs.den)
    }

    /// Division with remainder by a monic integer polynomial.
    pub fn div_rem_monic(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(
            divisor.is_integral() && divisor.num.last().is_some_and(|c| c.is_one()),
            "divisor must be monic with integer coefficients"
        );
        let d = divisor.num.len() - 1;
        let mut rem = self.num.clone();
        if rem.len() <= d {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].clone();
            for (j, m) in divisor.num.iter().enumerate() {
                rem[i - d + j] -= &c * m;
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (
            QPoly::new(quot, self.den.clone()),
            QPoly::new(rem, self.den.clone()),
        )
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let large: Vec<u64> = out
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&d| d * d != n)
        .collect();
    out.extend(large);
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Arc<QPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<QPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Phi_N`, from `X^N - 1` divided by `Phi_d` for every proper divisor `d`.
pub fn cyclo_poly(n: u64) -> Result<Arc<QPoly>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic level must be >= 1".into(),
        ));
    }
    if let Some(hit) = cyclo_cache().lock().expect("cache poisoned").get(&n) {
        return Ok(Arc::clone(hit));
    }
    let mut poly = QPoly::monomial(n as usize).sub(&QPoly::one());
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let (q, r) = poly.div_rem_monic(&*cyclo_poly(d)?);
        debug_assert!(r.is_zero());
        poly = q;
    }
    let poly = Arc::new(poly);
    cyclo_cache()
        .lock()
        .expect("cache poisoned")
        .insert(n, Arc::clone(&poly));
    Ok(poly)
}

/// The ring `Q(zeta_N)`, with its defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycRing {
    level: u64,
    modulus: Arc<QPoly>,
}

/// Element of `Q(zeta_N)` in the power basis `1, zeta, ..., zeta^{phi(N)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycElem {
    ring: Arc<CycRing>,
    value: QPoly,
}

impl CycRing {
    pub fn new(level: u64) -> Result<Arc<Self>> {
        Ok(Arc::new(CycRing {
            level,
            modulus: cyclo_poly(level)?,
        }))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn phi(&self) -> usize {
        self.modulus
            .degree()
            .expect("cyclotomic polynomials are nonconstant")
    }

    pub fn elem(self: &Arc<Self>, poly: &QPoly) -> CycElem {
        CycElem {
            ring: Arc::clone(self),
            value: poly.div_rem_monic(&self.modulus).1,
        }
    }

    pub fn from_rat(self: &Arc<Self>, c: &Rat) -> CycElem {
        self.elem(&QPoly::from_rats(std::slice::from_ref(c)))
    }

    pub fn one(self: &Arc<Self>) -> CycElem {
        self.elem(&QPoly::one())
    }

    /// `zeta_N^j` for any integer `j`, reduced through `j mod N`.
    pub fn zeta_pow(self: &Arc<Self>, j: i64) -> CycElem {
        let e = j.rem_euclid(self.level as i64) as usize;
        self.elem(&QPoly::monomial(e))
    }
}

impl CycElem {
    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn value(&self) -> &QPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    fn with(&self, value: QPoly) -> Self {
        self.ring.elem(&value)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.with(self.value.add(&rhs.value))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.with(self.value.sub(&rhs.value))
    }

    pub fn neg(&self) -> Self {
        CycElem {
            ring: Arc::clone(&self.ring),
            value: self.value.neg(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.with(self.value.mul(&rhs.value))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Exact multiplicative order when `x` is a root of unity.
///
/// The torsion of `Q(zeta_N)^x` is `mu_{lcm(2, N)}`, so `x` is a root of unity
/// iff `x^{lcm(2,N)} = 1`.
pub fn is_root_of_unity_cyc(x: &CycElem) -> Result<Option<u64>> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("zero is not a unit".into()));
    }
    // roots of unity are algebraic integers and 1, zeta, ..., zeta^{phi-1}
    // is a Z-basis of Z[zeta_N]
    if !x.value.is_integral() {
        return Ok(None);
    }
    let n = x.ring.level;
    let exponent = n.lcm(&2);
    if !x.pow(exponent).is_one() {
        return Ok(None);
    }
    let mut m = exponent;
    for l in prime_factors(exponent) {
        while m.is_multiple_of(l) && x.pow(m / l).is_one() {
            m /= l;
        }
    }
    Ok(Some(m))
}
