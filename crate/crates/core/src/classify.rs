//! Speciality detection, the `q`-power identity and the invariant `c_f`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_fields::Scalar;
use crate::laurent::{is_power_of, ExpansionBudget, LaurentPoly};
use crate::newton::{newton_at, zeros_on_sphere, NewtonData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Special,
    SpecialOverExtension,
    NotSpecial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    MonomialUnitRoot,
    ConstantFieldCoefficients,
    QIdentity,
    Negative,
    ZeroSeries,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialityVerdict {
    pub verdict: Verdict,
    pub reason: Reason,
}

impl SpecialityVerdict {
    fn new(verdict: Verdict, reason: Reason) -> Self {
        SpecialityVerdict { verdict, reason }
    }

    pub fn is_special(&self) -> bool {
        self.verdict == Verdict::Special
    }
}

/// Syntactic speciality test.
///
/// Characteristic 0: a single term `cX^m` with `c = ±1` is special; with `c`
/// a unit other than `±1` it is special only if `c` becomes a root of unity
/// in some extension, which rational input cannot express. Characteristic
/// `p`: special iff every coefficient is a constant of `F_p`.
pub fn is_special<C: Scalar>(f: &LaurentPoly<C>) -> SpecialityVerdict {
    use Reason::*;
    use Verdict::*;
    if f.is_zero() {
        return SpecialityVerdict::new(NotSpecial, ZeroSeries);
    }
    let field = f.field();
    if field.is_char_zero() {
        match f.as_monomial() {
            Some((_, c)) if c.is_unit_root() => SpecialityVerdict::new(Special, MonomialUnitRoot),
            Some((_, c)) if c.valuation(field.p()).is_zero() => {
                SpecialityVerdict::new(SpecialOverExtension, MonomialUnitRoot)
            }
            _ => SpecialityVerdict::new(NotSpecial, Negative),
        }
    } else if f.terms().all(|(_, c)| c.is_constant()) {
        SpecialityVerdict::new(Special, ConstantFieldCoefficients)
    } else {
        SpecialityVerdict::new(NotSpecial, Negative)
    }
}

/// `f(X)^q - f(X^q)`. In characteristic `p` the power is taken coefficient-wise.
pub fn q_identity_residual<C: Scalar>(
    f: &LaurentPoly<C>,
    q: u64,
    budget: &mut ExpansionBudget,
) -> Result<LaurentPoly<C>> {
    let field = f.field();
    if !is_power_of(q, field.p()) {
        return Err(Error::NotPowerOfP(q));
    }
    let qi = i64::try_from(q).map_err(|_| Error::ExponentOverflow)?;
    let power = if field.is_char_zero() {
        f.pow(q, budget)?
    } else {
        f.frobenius_pow(q)?
    };
    power.sub(&f.substitute_power(qi)?)
}

/// Speciality certified by a vanishing `q`-identity residual.
pub fn certify_q_identity<C: Scalar>(
    f: &LaurentPoly<C>,
    q: u64,
    budget: &mut ExpansionBudget,
) -> Result<SpecialityVerdict> {
    if f.is_zero() {
        return Ok(SpecialityVerdict::new(
            Verdict::NotSpecial,
            Reason::ZeroSeries,
        ));
    }
    Ok(if q_identity_residual(f, q, budget)?.is_zero() {
        SpecialityVerdict::new(Verdict::Special, Reason::QIdentity)
    } else {
        SpecialityVerdict::new(Verdict::NotSpecial, Reason::Negative)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CfCase {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
    #[serde(rename = "iv")]
    Iv,
    #[serde(rename = "iv-zero-tilde")]
    IvZeroTilde,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct CfReport<C: Scalar> {
    pub case_tag: CfCase,
    pub c_f: u64,
    pub ftilde: Option<LaurentPoly<C>>,
    pub newton: NewtonData,
}

fn abs(n: i64) -> u64 {
    n.unsigned_abs()
}

fn twice(n: u64) -> Result<u64> {
    n.checked_mul(2).ok_or(Error::ExponentOverflow)
}

/// `c_f` from the Newton data of `f` on the unit sphere.
pub fn compute_cf<C: Scalar>(f: &LaurentPoly<C>) -> Result<CfReport<C>> {
    if f.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let newton = newton_at(f, &BigRational::default());
    let vmin = newton.vmin.finite().expect("nonzero series").clone();
    let (big_k, small_k) = (newton.k_upper, newton.k_lower);
    let (case_tag, c_f, ftilde) = if vmin < BigRational::default() {
        (CfCase::I, abs(big_k - small_k), None)
    } else if vmin > BigRational::default() {
        (CfCase::Ii, 0, None)
    } else if big_k != small_k {
        (CfCase::Iii, twice(abs(big_k).max(abs(small_k)))?, None)
    } else {
        let ftilde = f.without(small_k);
        if ftilde.is_zero() {
            (CfCase::IvZeroTilde, twice(abs(big_k).max(1))?, Some(ftilde))
        } else {
            let t = newton_at(&ftilde, &BigRational::default());
            let m = abs(big_k).max(abs(t.k_upper)).max(abs(t.k_lower)).max(1);
            (CfCase::Iv, twice(m)?, Some(ftilde))
        }
    };
    Ok(CfReport {
        case_tag,
        c_f,
        ftilde,
        newton,
    })
}

/// Where a single draw `a = f(X^{k1}) - b X^{k2}` falls in the case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DrawCase {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
    /// Case iv with `k1 k(f) != k2`, handled like case iii.
    #[serde(rename = "iv-generic")]
    IvGeneric,
    #[serde(rename = "iv-a")]
    IvA,
    #[serde(rename = "iv-b")]
    IvB,
    #[serde(rename = "iv-c")]
    IvC,
    #[serde(rename = "iv-zero-tilde")]
    IvZeroTilde,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Draw {
    pub k1: i64,
    pub k2: i64,
    pub b: String,
    pub case: DrawCase,
    pub zeros: i64,
    pub a_is_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CfValidation {
    pub case_tag: CfCase,
    pub c_f: u64,
    #[serde(rename = "B")]
    pub b_max: i64,
    pub limit: u64,
    pub trials: usize,
    pub passed: bool,
    pub max_zeros: i64,
    /// `max_zeros / (c_f B)`; absent when `c_f B = 0`.
    pub worst_ratio: Option<f64>,
    pub zero_a_draws: usize,
    pub cases: BTreeMap<String, usize>,
    pub failures: Vec<Draw>,
}

fn draw_case<C: Scalar>(
    report: &CfReport<C>,
    f: &LaurentPoly<C>,
    k1: i64,
    k2: i64,
    b: &C,
) -> DrawCase {
    match report.case_tag {
        CfCase::I => DrawCase::I,
        CfCase::Ii => DrawCase::Ii,
        CfCase::Iii => DrawCase::Iii,
        CfCase::IvZeroTilde | CfCase::Iv => {
            let k = report.newton.k_lower;
            if k1.checked_mul(k) != Some(k2) {
                return DrawCase::IvGeneric;
            }
            let Some(ftilde) = report.ftilde.as_ref().filter(|t| !t.is_zero()) else {
                return DrawCase::IvZeroTilde;
            };
            let p = f.field().p();
            let lead = f.coeff(k).expect("dominant index is in the support").sub(b);
            let v_lead = lead.valuation(p);
            let v_tilde = newton_at(ftilde, &BigRational::default()).vmin;
            match v_lead.cmp(&v_tilde) {
                std::cmp::Ordering::Less => DrawCase::IvA,
                std::cmp::Ordering::Equal => DrawCase::IvB,
                std::cmp::Ordering::Greater => DrawCase::IvC,
            }
        }
    }
}

/// `f(X^{k1}) - b X^{k2}`, with `f(X^0)` read as the constant `f(1)`.
pub fn twisted<C: Scalar>(f: &LaurentPoly<C>, k1: i64, k2: i64, b: &C) -> Result<LaurentPoly<C>> {
    let field = *f.field();
    let base = if k1 == 0 {
        LaurentPoly::constant(field, f.eval_at_one())
    } else {
        f.substitute_power(k1)?
    };
    base.sub(&LaurentPoly::monomial(field, k2, b.clone()))
}

/// Seeded check that `a = f(X^{k1}) - b X^{k2}` has at most `c_f B` zeros on
/// the unit sphere, for random units `b` and `|k1|, |k2| <= B` not both 0.
pub fn validate_cf<C: Scalar>(
    f: &LaurentPoly<C>,
    trials: usize,
    b_max: i64,
    seed: u64,
) -> Result<CfValidation> {
    if b_max < 1 {
        return Err(Error::InvalidArgument("B must be >= 1".into()));
    }
    if is_special(f).is_special() {
        return Err(Error::SpecialInput);
    }
    let report = compute_cf(f)?;
    let limit = report
        .c_f
        .checked_mul(b_max.unsigned_abs())
        .ok_or(Error::ExponentOverflow)?;
    let samples = C::unit_samples(f.field().p());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plan: Vec<(i64, i64, usize)> = (0..trials)
        .map(|_| loop {
            let k1 = rng.random_range(-b_max..=b_max);
            let k2 = rng.random_range(-b_max..=b_max);
            if k1 != 0 || k2 != 0 {
                break (k1, k2, rng.random_range(0..samples.len()));
            }
        })
        .collect();
    let draws: Vec<Draw> = plan
        .par_iter()
        .map(|&(k1, k2, bi)| {
            let b = &samples[bi];
            let a = twisted(f, k1, k2, b)?;
            let zeros = if a.is_zero() {
                0
            } else {
                zeros_on_sphere(&a, &BigRational::default())?
            };
            Ok(Draw {
                k1,
                k2,
                b: b.to_string(),
                case: draw_case(&report, f, k1, k2, b),
                zeros,
                a_is_zero: a.is_zero(),
            })
        })
        .collect::<Result<_>>()?;

    let mut cases = BTreeMap::new();
    for d in &draws {
        let tag = serde_json::to_value(d.case).expect("tag serializes");
        *cases
            .entry(tag.as_str().unwrap_or_default().to_string())
            .or_insert(0) += 1;
    }
    let max_zeros = draws.iter().map(|d| d.zeros).max().unwrap_or(0);
    let failures: Vec<Draw> = draws
        .iter()
        .filter(|d| d.zeros.unsigned_abs() > limit)
        .cloned()
        .collect();
    Ok(CfValidation {
        case_tag: report.case_tag,
        c_f: report.c_f,
        b_max,
        limit,
        trials,
        passed: failures.is_empty(),
        max_zeros,
        worst_ratio: (limit > 0).then(|| max_zeros as f64 / limit as f64),
        zero_a_draws: draws.iter().filter(|d| d.a_is_zero).count(),
        cases,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_fields::{Rat, RatFun};
    use crate::laurent::FieldSpec;

    fn q(p: u64, terms: &[(i64, &str)]) -> LaurentPoly<Rat> {
        LaurentPoly::new(
            FieldSpec::p_adic(p, 1, 1).unwrap(),
            terms.iter().map(|&(n, c)| (n, c.parse().unwrap())),
        )
    }

    fn fq(p: u64, terms: &[(i64, &str)]) -> LaurentPoly<RatFun> {
        LaurentPoly::new(
            FieldSpec::function_field(p, 1).unwrap(),
            terms
                .iter()
                .map(|&(n, c)| (n, RatFun::parse(c, p).unwrap())),
        )
    }

    #[test]
    fn speciality_examples() {
        assert_eq!(
            is_special(&q(3, &[(5, "-1")])),
            SpecialityVerdict::new(Verdict::Special, Reason::MonomialUnitRoot)
        );
        assert_eq!(
            is_special(&fq(2, &[(1, "1"), (0, "t")])).verdict,
            Verdict::NotSpecial
        );
        assert_eq!(
            is_special(&fq(3, &[(-2, "(t+1)/(t+1)")])),
            SpecialityVerdict::new(Verdict::Special, Reason::ConstantFieldCoefficients)
        );
        assert_eq!(
            is_special(&q(5, &[(2, "3")])).verdict,
            Verdict::SpecialOverExtension
        );
        assert_eq!(is_special(&q(5, &[(2, "5")])).verdict, Verdict::NotSpecial);
        assert_eq!(is_special(&q(5, &[])).reason, Reason::ZeroSeries);
    }

    #[test]
    fn residual_examples() {
        let mut budget = ExpansionBudget::default();
        let g = q_identity_residual(&fq(2, &[(1, "1"), (0, "t")]), 2, &mut budget).unwrap();
        assert_eq!(g, fq(2, &[(0, "t^2 + t")]));
        let g = q_identity_residual(&fq(2, &[(3, "1"), (1, "1")]), 2, &mut budget).unwrap();
        assert!(g.is_zero());
        let g = q_identity_residual(&q(3, &[(1, "-1")]), 3, &mut budget).unwrap();
        assert!(g.is_zero());
        assert_eq!(
            q_identity_residual(&q(3, &[(1, "1")]), 6, &mut budget),
            Err(Error::NotPowerOfP(6))
        );
        assert_eq!(
            certify_q_identity(&fq(3, &[(2, "2"), (-1, "1")]), 9, &mut budget)
                .unwrap()
                .reason,
            Reason::QIdentity
        );
    }

    #[test]
    fn cf_examples() {
        let r = compute_cf(&q(2, &[(1, "1/2")])).unwrap();
        assert_eq!((r.case_tag, r.c_f), (CfCase::I, 0));
        let r = compute_cf(&q(3, &[(1, "1"), (-1, "1")])).unwrap();
        assert_eq!((r.case_tag, r.c_f), (CfCase::Iii, 2));
        let r = compute_cf(&q(5, &[(1, "1"), (0, "5")])).unwrap();
        assert_eq!((r.case_tag, r.c_f), (CfCase::Iv, 2));
        assert_eq!(r.ftilde, Some(q(5, &[(0, "5")])));
        let r = compute_cf(&q(3, &[(2, "1"), (-1, "1")])).unwrap();
        assert_eq!((r.case_tag, r.c_f), (CfCase::Iii, 4));
        let r = compute_cf(&q(3, &[(0, "3"), (4, "9")])).unwrap();
        assert_eq!((r.case_tag, r.c_f), (CfCase::Ii, 0));
        let r = compute_cf(&q(7, &[(-3, "2")])).unwrap();
        assert_eq!((r.case_tag, r.c_f), (CfCase::IvZeroTilde, 6));
        let r = compute_cf(&q(2, &[(0, "2")])).unwrap();
        assert_eq!(r.case_tag, CfCase::Ii);
        assert_eq!(
            compute_cf(&q(2, &[])).map(|r| r.c_f),
            Err(Error::ZeroSeries)
        );
    }

    #[test]
    fn hand_draw_case_iii() {
        // a = X^2 + X^{-1} - 1: three unit coefficients, K = 2, k = -1
        let f = q(3, &[(2, "1"), (-1, "1")]);
        let a = twisted(&f, 1, 0, &Rat::int(1)).unwrap();
        assert_eq!(zeros_on_sphere(&a, &BigRational::default()).unwrap(), 3);
        assert!(3 <= compute_cf(&f).unwrap().c_f);
    }

    #[test]
    fn validation_passes_on_examples() {
        let v = validate_cf(&q(3, &[(1, "1"), (0, "3")]), 100, 3, 0).unwrap();
        assert!(v.passed);
        assert!(v.max_zeros <= 6);
        let v = validate_cf(&q(3, &[(1, "3"), (0, "9")]), 50, 2, 0).unwrap();
        assert!(v.passed);
        assert_eq!(v.max_zeros, 0);
        assert_eq!(v.worst_ratio, None);
        assert_eq!(
            validate_cf(&q(3, &[(1, "1")]), 5, 1, 0).unwrap_err(),
            Error::SpecialInput
        );
    }

    #[test]
    fn validation_is_seeded() {
        let f = fq(3, &[(1, "1"), (0, "t"), (-1, "2")]);
        let a = validate_cf(&f, 40, 2, 9).unwrap();
        let b = validate_cf(&f, 40, 2, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.passed);
    }

    #[test]
    fn iv_subcases_are_reached() {
        // f = X + 3 over Q_3: f_k = 1, ftilde = 3 with |ftilde|_1 = 1/3.
        let f = q(3, &[(1, "1"), (0, "3")]);
        let r = compute_cf(&f).unwrap();
        assert_eq!(draw_case(&r, &f, 1, 1, &Rat::int(-1)), DrawCase::IvA);
        assert_eq!(draw_case(&r, &f, 1, 1, &Rat::int(4)), DrawCase::IvB);
        assert_eq!(draw_case(&r, &f, 1, 1, &Rat::int(1)), DrawCase::IvC);
        assert_eq!(draw_case(&r, &f, 1, 2, &Rat::int(1)), DrawCase::IvGeneric);
    }
}
