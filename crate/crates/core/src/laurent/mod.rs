//! Sparse Laurent polynomials with coefficients in `Q` or `F_p(t)`.

mod json;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_fields::{is_prime, Scalar};

pub use json::{FieldJson, Series, SeriesJson};

/// Default cap on monomial products performed by one expansion.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Characteristic data of the ambient local field `K`.
///
/// Characteristic zero: a finite extension of `Q_p` with residue degree
/// `residue_deg` and ramification index `ram_index`. Characteristic `p`: a
/// finite extension of `F_p((t))` with residue field of size `p^residue_deg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
    p: u64,
    residue_deg: u32,
    ram_index: Option<u32>,
}

impl FieldSpec {
    pub fn p_adic(p: u64, residue_deg: u32, ram_index: u32) -> Result<Self> {
        Self::check(p, residue_deg)?;
        if ram_index == 0 {
            return Err(Error::InvalidField("ram_index must be >= 1".into()));
        }
        Ok(FieldSpec {
            characteristic: 0,
            p,
            residue_deg,
            ram_index: Some(ram_index),
        })
    }

    pub fn function_field(p: u64, residue_deg: u32) -> Result<Self> {
        Self::check(p, residue_deg)?;
        Ok(FieldSpec {
            characteristic: p,
            p,
            residue_deg,
            ram_index: None,
        })
    }

    fn check(p: u64, residue_deg: u32) -> Result<()> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        if residue_deg == 0 {
            return Err(Error::InvalidField("residue_deg must be >= 1".into()));
        }
        p.checked_pow(residue_deg)
            .filter(|&q| q <= i64::MAX as u64)
            .ok_or_else(|| Error::InvalidField("residue cardinality overflows".into()))?;
        Ok(())
    }

    /// 0 or `p`.
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_char_zero(&self) -> bool {
        self.characteristic == 0
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_deg(&self) -> u32 {
        self.residue_deg
    }

    /// Ramification index over `Q_p`; `None` in positive characteristic.
    pub fn ram_index(&self) -> Option<u32> {
        self.ram_index
    }

    /// Residue cardinality `q = p^residue_deg`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.residue_deg)
    }
}

/// Running count of monomial products, failing once `limit` is exceeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionBudget {
    limit: u64,
    used: u64,
}

impl ExpansionBudget {
    pub fn new(limit: u64) -> Self {
        ExpansionBudget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn charge(&mut self, products: u64) -> Result<()> {
        self.used = self.used.saturating_add(products);
        if self.used > self.limit {
            return Err(Error::Budget { budget: self.limit });
        }
        Ok(())
    }
}

impl Default for ExpansionBudget {
    fn default() -> Self {
        ExpansionBudget::new(DEFAULT_BUDGET)
    }
}

/// Finitely supported `f = sum f_n X^n`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<C> {
    field: FieldSpec,
    terms: BTreeMap<i64, C>,
}

impl<C: Scalar> LaurentPoly<C> {
    /// Builds a series from `(exponent, coefficient)` pairs, summing repeats.
    pub fn new(field: FieldSpec, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = LaurentPoly::zero(field);
        for (n, c) in terms {
            out.add_term(n, &c);
        }
        out
    }

    pub fn zero(field: FieldSpec) -> Self {
        LaurentPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        LaurentPoly::monomial(field, 0, C::one(field.p()))
    }

    pub fn monomial(field: FieldSpec, n: i64, c: C) -> Self {
        LaurentPoly::new(field, [(n, c)])
    }

    /// `X^n` with coefficient 1.
    pub fn x_pow(field: FieldSpec, n: i64) -> Self {
        LaurentPoly::monomial(field, n, C::one(field.p()))
    }

    pub fn constant(field: FieldSpec, c: C) -> Self {
        LaurentPoly::monomial(field, 0, c)
    }

    fn add_term(&mut self, n: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(n) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().accumulate(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn coeff(&self, n: i64) -> Option<&C> {
        self.terms.get(&n)
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &C)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// `f` with the term at `n` dropped.
    pub fn without(&self, n: i64) -> Self {
        let mut out = self.clone();
        out.terms.remove(&n);
        out
    }

    /// `f(1) = sum f_n`.
    pub fn eval_at_one(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(self.field.p()), |acc, c| acc.add(c))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{:?} vs {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (n, c) in other.terms() {
            out.add_term(n, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(&n, c)| (n, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        LaurentPoly::new(self.field, self.terms().map(|(n, a)| (n, a.mul(c))))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_budgeted(other, &mut ExpansionBudget::new(u64::MAX))
    }

    /// Product charged against `budget` at `|f| * |g|` monomial products.
    pub fn mul_budgeted(&self, other: &Self, budget: &mut ExpansionBudget) -> Result<Self> {
        self.same_field(other)?;
        budget.charge((self.len() as u64).saturating_mul(other.len() as u64))?;
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                let n = i.checked_add(j).ok_or(Error::ExponentOverflow)?;
                let prod = a.mul(b);
                match acc.entry(n) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        e.get_mut().accumulate(&prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            field: self.field,
            terms: acc,
        })
    }

    /// `f(X^k)` for `k != 0`.
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroSubstitution);
        }
        let mut terms = BTreeMap::new();
        for (n, c) in self.terms() {
            let m = n.checked_mul(k).ok_or(Error::ExponentOverflow)?;
            terms.insert(m, c.clone());
        }
        Ok(LaurentPoly {
            field: self.field,
            terms,
        })
    }

    /// `f^m` by binary exponentiation, within `budget`.
    pub fn pow(&self, mut m: u64, budget: &mut ExpansionBudget) -> Result<Self> {
        let mut acc = LaurentPoly::one(self.field);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul_budgeted(&base, budget)?;
            }
            m >>= 1;
            if m > 0 {
                base = base.mul_budgeted(&base, budget)?;
            }
        }
        Ok(acc)
    }

    /// `sum f_j^q X^{qj}`, the `q`-th power in characteristic `p`, built
    /// coefficient by coefficient.
    pub fn frobenius_pow(&self, q: u64) -> Result<Self> {
        if self.field.is_char_zero() {
            return Err(Error::RequiresCharP);
        }
        if !is_power_of(q, self.field.p()) {
            return Err(Error::NotPowerOfP(q));
        }
        let qi = i64::try_from(q).map_err(|_| Error::ExponentOverflow)?;
        let mut terms = BTreeMap::new();
        for (n, c) in self.terms() {
            let m = n.checked_mul(qi).ok_or(Error::ExponentOverflow)?;
            terms.insert(m, c.frobenius(q).ok_or(Error::RequiresCharP)?);
        }
        Ok(LaurentPoly {
            field: self.field,
            terms,
        })
    }
}

/// `q = p^a` with `a >= 1`.
pub fn is_power_of(q: u64, p: u64) -> bool {
    if q < p || p < 2 {
        return false;
    }
    let mut q = q;
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

impl<C: Scalar> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})X")?,
                n => write!(f, "({c})X^{n}")?,
            }
        }
        Ok(())
    }
}
