use std::fmt;

use super::fp_poly::{inv_mod, FpPoly};
use super::{Scalar, Valuation};
use crate::error::{Error, Result};

/// Rational function in `t` over `F_p`: coprime numerator and monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: FpPoly,
    den: FpPoly,
}

impl RatFun {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if num.p() != den.p() {
            return Err(Error::FieldMismatch(format!(
                "F_{} vs F_{}",
                num.p(),
                den.p()
            )));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: FpPoly, den: FpPoly) -> Self {
        let p = num.p();
        if num.is_zero() {
            return RatFun {
                num,
                den: FpPoly::one(p),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let lead = den.leading();
        if lead != 1 {
            let inv = inv_mod(lead, p).expect("nonzero residue is invertible");
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFun { num, den }
    }

    pub fn poly(num: FpPoly) -> Self {
        let p = num.p();
        RatFun {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        RatFun::poly(FpPoly::constant(p, c))
    }

    /// The indeterminate `t`.
    pub fn t(p: u64) -> Self {
        RatFun::poly(FpPoly::monomial(p, 1))
    }

    pub fn p(&self) -> u64 {
        self.num.p()
    }

    pub fn numer(&self) -> &FpPoly {
        &self.num
    }

    pub fn denom(&self) -> &FpPoly {
        &self.den
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    /// Constant value in `F_p`, when the function is constant.
    pub fn as_constant(&self) -> Option<u64> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }
}

/// t-adic valuation: `ord_t(numerator) - ord_t(denominator)`.
pub fn vt(x: &RatFun) -> Valuation {
    match (x.num.ord(), x.den.ord()) {
        (Some(a), Some(b)) => Valuation::int(a as i64 - b as i64),
        _ => Valuation::Infinite,
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Scalar for RatFun {
    fn zero(p: u64) -> Self {
        RatFun::poly(FpPoly::zero(p))
    }

    fn one(p: u64) -> Self {
        RatFun::poly(FpPoly::one(p))
    }

    fn from_i64(n: i64, p: u64) -> Self {
        RatFun::poly(FpPoly::from_i64s(p, &[n]))
    }

    fn one_like(&self) -> Self {
        RatFun::one(self.p())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::poly(self.num.mul(&rhs.num));
        }
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn valuation(&self, _p: u64) -> Valuation {
        vt(self)
    }

    fn parse(text: &str, p: u64) -> Result<Self> {
        super::parse::parse_ratfun(text, p)
    }

    /// In characteristic `p` every coefficient `c` of `F_p` satisfies `c^p = c`,
    /// so `a(t)^q = a(t^q)` for `q` a power of `p`.
    fn frobenius(&self, q: u64) -> Option<Self> {
        let q = usize::try_from(q).ok()?;
        Some(RatFun {
            num: self.num.inflate(q),
            den: self.den.inflate(q),
        })
    }

    fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn is_unit_root(&self) -> bool {
        matches!(self.as_constant(), Some(c) if c != 0)
    }

    fn unit_samples(p: u64) -> Vec<Self> {
        (1..p).map(|c| RatFun::constant(p, c)).collect()
    }
}
