use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_fields::{build_tower, FFElem, FFElemView, FpPoly, RatFun};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharpRecord {
    /// `ζ` generates exactly `F_{p^level}`.
    pub level: u32,
    /// Modulus of the level, so coordinates can be read back.
    pub modulus: String,
    pub zeta: FFElemView,
    pub value: FFElemView,
    pub order_zeta: u64,
    pub order_value: u64,
}

/// `f` over a common denominator: `f = (sum_n P_n(t) X^n) / D(t)` with `D` monic.
struct Cleared {
    den: FpPoly,
    numerators: Vec<(i64, FpPoly)>,
}

fn clear(f: &LaurentPoly<RatFun>) -> Cleared {
    let p = f.field().p();
    let den = f.terms().fold(FpPoly::one(p), |acc, (_, c)| {
        let g = acc.gcd(c.denom());
        acc.mul(&c.denom().div_rem(&g).expect("gcd is nonzero").0)
    });
    let numerators = f
        .terms()
        .map(|(n, c)| {
            let cofactor = den.div_rem(c.denom()).expect("denominator divides lcm").0;
            (n, c.numer().mul(&cofactor))
        })
        .collect();
    Cleared { den, numerators }
}

/// `f(ζ)` when it is a nonzero constant of `F_{p^s}`.
///
/// `f(ζ) = N(t) / D(t)` with `N(t) = sum_n ζ^n P_n(t)`; it is constant iff
/// `N = c D`, and then `c` is the coefficient of `N` at `deg D`.
fn constant_value(cleared: &Cleared, zeta: &FFElem) -> Result<Option<FFElem>> {
    let tower = zeta.tower();
    let width = cleared
        .numerators
        .iter()
        .filter_map(|(_, q)| q.degree())
        .max()
        .unwrap_or(0)
        .max(cleared.den.degree().unwrap_or(0))
        + 1;
    let mut coeffs = vec![tower.zero(); width];
    for (n, poly) in &cleared.numerators {
        let power = zeta.pow_signed(*n)?;
        for (i, &c) in poly.coeffs().iter().enumerate() {
            if c != 0 {
                coeffs[i] = coeffs[i].add(&power.scale(c));
            }
        }
    }
    let d = cleared.den.degree().expect("denominator is nonzero");
    let c = coeffs[d].clone();
    if c.is_zero() {
        return Ok(None);
    }
    let matches = coeffs
        .iter()
        .enumerate()
        .all(|(i, x)| *x == c.scale(cleared.den.coeff(i)));
    Ok(matches.then_some(c))
}

/// Every `ζ` of degree at most `s_max` over `F_p` with `f(ζ)` a nonzero
/// constant, grouped by the exact degree of `ζ` and ordered by element index.
pub fn enumerate_charp(f: &LaurentPoly<RatFun>, s_max: u32) -> Result<Vec<CharpRecord>> {
    if f.field().is_char_zero() {
        return Err(Error::RequiresCharP);
    }
    if s_max == 0 {
        return Err(Error::InvalidArgument("s_max must be >= 1".into()));
    }
    let p = f.field().p();
    let cleared = clear(f);
    let mut records = Vec::new();
    for s in 1..=s_max {
        let tower = build_tower(p, s)?;
        let modulus = tower.modulus().to_string();
        let size = u64::try_from(tower.size()).map_err(|_| Error::TowerTooLarge(s))?;
        let found: Vec<Option<CharpRecord>> = (1..size)
            .into_par_iter()
            .map(|i| {
                let zeta = tower.element(i as u128);
                if zeta.minimal_degree() != s {
                    return Ok(None);
                }
                Ok(constant_value(&cleared, &zeta)?.map(|value| CharpRecord {
                    level: s,
                    modulus: modulus.clone(),
                    zeta: FFElemView::from(&zeta),
                    value: FFElemView::from(&value),
                    order_zeta: zeta.order().expect("nonzero"),
                    order_value: value.order().expect("nonzero"),
                }))
            })
            .collect::<Result<_>>()?;
        records.extend(found.into_iter().flatten());
    }
    Ok(records)
}
