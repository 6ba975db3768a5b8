use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Scalar, Valuation};
use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(numer.into(), denom)))
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }
}

/// Exponent of `p` in a nonzero integer, by repeated division.
pub(crate) fn p_multiplicity(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return count;
        }
        n = q;
        count += 1;
    }
}

/// p-adic valuation of a rational number.
pub fn vp(x: &Rat, p: u64) -> Valuation {
    if x.0.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::int(p_multiplicity(x.numer(), p) - p_multiplicity(x.denom(), p))
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match compact.split_once('/') {
            Some((n, d)) => (n, d),
            None => (compact.as_str(), "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
        let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Scalar for Rat {
    fn zero(_p: u64) -> Self {
        Rat(BigRational::zero())
    }

    fn one(_p: u64) -> Self {
        Rat(BigRational::one())
    }

    fn from_i64(n: i64, _p: u64) -> Self {
        Rat::int(n)
    }

    fn one_like(&self) -> Self {
        Rat(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rat(-&self.0)
    }

    fn accumulate(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }

    fn valuation(&self, p: u64) -> Valuation {
        vp(self, p)
    }

    fn parse(text: &str, _p: u64) -> Result<Self> {
        text.parse()
    }

    fn frobenius(&self, _q: u64) -> Option<Self> {
        None
    }

    fn is_constant(&self) -> bool {
        true
    }

    fn is_unit_root(&self) -> bool {
        self.0.is_integer() && self.0.numer().abs().is_one()
    }

    fn unit_samples(p: u64) -> Vec<Self> {
        let p = BigInt::from(p);
        let one = BigInt::one();
        let a = &one + &p;
        let b = &a + &p * &p;
        vec![
            Rat::int(one.clone()),
            Rat::int(-one),
            Rat::int(a.clone()),
            Rat::int(-a),
            Rat::int(b.clone()),
            Rat::int(-b),
        ]
    }
}
