//! Effective torsion bounds: the `p`-part cap, the auxiliary series and `M`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::classify::{compute_cf, is_special, CfReport, Verdict};
use crate::error::{Error, Result};
use crate::exact_fields::{Scalar, Valuation};
use crate::laurent::{ExpansionBudget, LaurentPoly, Series};
use crate::newton::{newton_at, NewtonData};

/// `cap = (2 c_f e)^4` and the least `k >= 0` with `p^{k+1} > cap`.
pub fn p_part_cap(c_f: u64, e: u32, p: u64) -> (BigInt, u32) {
    let cap: BigInt = (BigInt::from(2u8) * c_f * e).pow(4u32);
    let p = BigInt::from(p);
    let mut k = 0u32;
    let mut next = p.clone();
    while next <= cap {
        next *= &p;
        k += 1;
    }
    (cap, k)
}

/// `2^8 e^8 p n^9`.
pub fn cor_example_bound(p: u64, e: u32, n: u64) -> BigInt {
    BigInt::from(256u32) * BigInt::from(e).pow(8u32) * p * BigInt::from(n).pow(9u32)
}

/// `f(X)^q - f(X^q)` in characteristic `p`, with `q` from the field.
pub fn aux_series_charp<C: Scalar>(f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
    let q = f.field().q();
    let qi = i64::try_from(q).map_err(|_| Error::ExponentOverflow)?;
    f.frobenius_pow(q)?.sub(&f.substitute_power(qi)?)
}

/// Newton data on the unit sphere of an auxiliary series. Indices are
/// unbounded integers because the dominance shortcut scales them by `q p^k`
/// without materializing the series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxNewton {
    pub vmin: Valuation,
    #[serde(rename = "K", serialize_with = "crate::wire::bigint")]
    pub k_upper: BigInt,
    #[serde(rename = "k", serialize_with = "crate::wire::bigint")]
    pub k_lower: BigInt,
    /// Present only when the series was expanded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominant: Option<Vec<i64>>,
}

impl AuxNewton {
    fn from_data(d: NewtonData) -> Self {
        AuxNewton {
            vmin: d.vmin,
            k_upper: d.k_upper.into(),
            k_lower: d.k_lower.into(),
            dominant: Some(d.dominant),
        }
    }

    pub fn spread(&self) -> BigInt {
        &self.k_upper - &self.k_lower
    }
}

/// Unit-sphere Newton data of `A = f(X)^{q p^k} - f(X^q)^{p^k}` and whether
/// the dominance shortcut was used.
///
/// When `|f|_1 != 1` one of the two powers strictly dominates the other and
/// its indices follow from the power and substitution rules.
pub fn aux_series_char0<C: Scalar>(
    f: &LaurentPoly<C>,
    q: u64,
    k: u32,
    budget: &mut ExpansionBudget,
) -> Result<(AuxNewton, bool)> {
    if !f.field().is_char_zero() {
        return Err(Error::RequiresChar0);
    }
    if f.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let p = f.field().p();
    let pk = BigInt::from(p).pow(k);
    let base = newton_at(f, &BigRational::zero());
    if !base.vmin.is_zero() {
        let vmin = base.vmin.finite().expect("nonzero series");
        let scale = if vmin < &BigRational::zero() {
            &pk * q
        } else {
            pk.clone()
        };
        let factor = &pk * q;
        return Ok((
            AuxNewton {
                vmin: base.vmin.scaled(&scale),
                k_upper: &factor * base.k_upper,
                k_lower: &factor * base.k_lower,
                dominant: None,
            },
            true,
        ));
    }
    let limit = budget.limit();
    let over = || Error::Budget { budget: limit };
    let pk = pk.to_u64().ok_or_else(over)?;
    let qpk = pk.checked_mul(q).ok_or_else(over)?;
    let qi = i64::try_from(q).map_err(|_| Error::ExponentOverflow)?;
    let left = f.pow(qpk, budget)?;
    let right = f.substitute_power(qi)?.pow(pk, budget)?;
    let a = left.sub(&right)?;
    if a.is_zero() {
        return Err(Error::Inconsistent);
    }
    Ok((
        AuxNewton::from_data(newton_at(&a, &BigRational::zero())),
        false,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Ok,
    /// `c_f = 0`: no root of unity maps to a root of unity.
    TrivialCf,
    /// The auxiliary series exceeded the expansion budget; `M` is unknown.
    ExpandFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct BoundReport<C: Scalar> {
    pub status: BoundStatus,
    pub cf_report: CfReport<C>,
    #[serde(
        serialize_with = "crate::wire::opt_bigint",
        skip_serializing_if = "Option::is_none"
    )]
    pub p_part_cap: Option<BigInt>,
    pub k: u32,
    pub aux_newton: Option<AuxNewton>,
    #[serde(rename = "M", serialize_with = "crate::wire::opt_bigint")]
    pub m: Option<BigInt>,
    #[serde(serialize_with = "crate::wire::opt_bigint")]
    pub bound: Option<BigInt>,
    pub shortcut_used: bool,
}

fn require_not_special<C: Scalar>(f: &LaurentPoly<C>) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroSeries);
    }
    if is_special(f).verdict != Verdict::NotSpecial {
        return Err(Error::SpecialInput);
    }
    Ok(())
}

/// Characteristic `p`: `M` is the unit-sphere zero count of `f^q - f(X^q)`
/// and bounds the torsion count directly.
pub fn bound_charp<C: Scalar>(f: &LaurentPoly<C>) -> Result<BoundReport<C>> {
    if f.field().is_char_zero() {
        return Err(Error::RequiresCharP);
    }
    require_not_special(f)?;
    let g = aux_series_charp(f)?;
    if g.is_zero() {
        return Err(Error::Inconsistent);
    }
    let aux = AuxNewton::from_data(newton_at(&g, &BigRational::zero()));
    let m = aux.spread();
    Ok(BoundReport {
        status: BoundStatus::Ok,
        cf_report: compute_cf(f)?,
        p_part_cap: None,
        k: 0,
        aux_newton: Some(aux),
        m: Some(m.clone()),
        bound: Some(m),
        shortcut_used: false,
    })
}

/// Characteristic 0: `p^k M` with `k` from the `p`-part cap.
pub fn bound_char0<C: Scalar>(
    f: &LaurentPoly<C>,
    budget: &mut ExpansionBudget,
) -> Result<BoundReport<C>> {
    let field = *f.field();
    if !field.is_char_zero() {
        return Err(Error::RequiresChar0);
    }
    require_not_special(f)?;
    let cf_report = compute_cf(f)?;
    if cf_report.c_f == 0 {
        return Ok(BoundReport {
            status: BoundStatus::TrivialCf,
            cf_report,
            p_part_cap: Some(BigInt::zero()),
            k: 0,
            aux_newton: None,
            m: None,
            bound: Some(BigInt::zero()),
            shortcut_used: false,
        });
    }
    let e = field.ram_index().unwrap_or(1);
    let (cap, k) = p_part_cap(cf_report.c_f, e, field.p());
    let partial = |cf_report| BoundReport {
        status: BoundStatus::ExpandFailed,
        cf_report,
        p_part_cap: Some(cap.clone()),
        k,
        aux_newton: None,
        m: None,
        bound: None,
        shortcut_used: false,
    };
    match aux_series_char0(f, field.q(), k, budget) {
        Ok((aux, shortcut_used)) => {
            let m = aux.spread();
            let bound = BigInt::from(field.p()).pow(k) * &m;
            Ok(BoundReport {
                status: BoundStatus::Ok,
                cf_report,
                p_part_cap: Some(cap),
                k,
                aux_newton: Some(aux),
                m: Some(m),
                bound: Some(bound),
                shortcut_used,
            })
        }
        Err(Error::Budget { .. }) => Ok(partial(cf_report)),
        Err(e) => Err(e),
    }
}

/// Bound report for a parsed series of either characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum AnyBoundReport {
    Adic(BoundReport<crate::exact_fields::Rat>),
    Function(BoundReport<crate::exact_fields::RatFun>),
}

impl AnyBoundReport {
    pub fn bound(&self) -> Option<&BigInt> {
        match self {
            AnyBoundReport::Adic(r) => r.bound.as_ref(),
            AnyBoundReport::Function(r) => r.bound.as_ref(),
        }
    }

    pub fn k(&self) -> u32 {
        match self {
            AnyBoundReport::Adic(r) => r.k,
            AnyBoundReport::Function(r) => r.k,
        }
    }
}

pub fn bound(series: &Series, budget: &mut ExpansionBudget) -> Result<AnyBoundReport> {
    match series {
        Series::Adic(f) => Ok(AnyBoundReport::Adic(bound_char0(f, budget)?)),
        Series::Function(f) => Ok(AnyBoundReport::Function(bound_charp(f)?)),
    }
}

/// `p^k`, the largest `p`-part the char-0 oracle needs to visit.
pub fn pk_cap(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}
