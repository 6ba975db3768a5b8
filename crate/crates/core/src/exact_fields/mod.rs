//! Exact scalars with computable valuations, finite-field towers and
//! cyclotomic rings.

pub mod cyclotomic;
pub mod fp_poly;
mod parse;
pub mod rat;
pub mod ratfun;
pub mod tower;
pub mod valuation;

use std::fmt::{Debug, Display};

use crate::error::Result;

pub use cyclotomic::{cyclo_poly, euler_phi, is_root_of_unity_cyc, CycElem, CycRing, QPoly};
pub use fp_poly::FpPoly;
pub use parse::parse_ratfun;
pub use rat::{vp, Rat};
pub use ratfun::{vt, RatFun};
pub use tower::{build_tower, FFElem, FFElemView, Tower};
pub use valuation::Valuation;

/// Coefficient domain of a Laurent polynomial: `Q` with `v_p`, or `F_p(t)` with `v_t`.
///
/// The prime `p` is passed in wherever a value has to be created or valued,
/// so scalars of both domains share one interface.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync {
    fn zero(p: u64) -> Self;
    fn one(p: u64) -> Self;
    fn from_i64(n: i64, p: u64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn accumulate(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
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

    /// The multiplicative identity of the domain `self` lives in.
    fn one_like(&self) -> Self;

    fn valuation(&self, p: u64) -> Valuation;

    fn parse(text: &str, p: u64) -> Result<Self>;

    /// `c^q` for `q` a power of the characteristic, computed without
    /// multiplying out. `None` in characteristic zero.
    fn frobenius(&self, q: u64) -> Option<Self>;

    /// Lies in the constant field (always true over `Q`).
    fn is_constant(&self) -> bool;

    /// A root of unity already inside the coefficient field.
    fn is_unit_root(&self) -> bool;

    /// Fixed list of valuation-zero scalars used for seeded draws.
    fn unit_samples(p: u64) -> Vec<Self>;
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
