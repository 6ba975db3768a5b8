use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// Additive valuation, `v(x) = -log_p |x|`. `Infinite` is reserved for zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(BigRational),
    Infinite,
}

impl Valuation {
    pub fn int(v: i64) -> Self {
        Valuation::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Valuation::Finite(v) if v.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Valuation::Finite(v) if v.is_zero())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Valuation of a product.
    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }

    /// `v + slope * n`, the additive form of `|f_n| r^n` with `r = p^{-slope}`.
    pub fn shifted(&self, slope: &BigRational, n: i64) -> Self {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a + slope * BigInt::from(n)),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a * factor),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
