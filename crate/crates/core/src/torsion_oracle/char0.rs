use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_fields::{euler_phi, is_root_of_unity_cyc, CycElem, CycRing, Rat};
use crate::laurent::LaurentPoly;

pub const DEFAULT_PHI_CEILING: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Char0Record {
    /// Order of `ζ`.
    pub n: u64,
    /// `ζ = ζ_N^j`; one representative of the Galois orbit.
    pub j: u64,
    /// `f(ζ)` in the power basis of `Q(ζ_N)`.
    pub value: Vec<String>,
    pub order_value: u64,
    /// Size of the Galois orbit, `φ(N)`.
    pub multiplicity: u64,
}

/// `f(ζ_N^j)` in `Q(ζ_N)`, reducing exponents mod `N` first.
pub fn evaluate_char0(f: &LaurentPoly<Rat>, n: u64, j: u64) -> Result<CycElem> {
    let ring = CycRing::new(n)?;
    let level = i64::try_from(n).map_err(|_| Error::ExponentOverflow)?;
    let j = (j % n) as i64;
    let mut acc = ring.from_rat(&Rat::int(0));
    for (e, c) in f.terms() {
        let exp = (e.rem_euclid(level) * j).rem_euclid(level);
        acc = acc.add(&ring.zeta_pow(exp).mul(&ring.from_rat(c)));
    }
    Ok(acc)
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// One evaluation per order `N <= n_max` whose `p`-part is at most `pk_cap`.
///
/// Rational coefficients commute with every automorphism of `Q(ζ_N)`, so the
/// primitive `N`-th roots hit or miss together and a hit counts `φ(N)` times.
pub fn enumerate_char0(
    f: &LaurentPoly<Rat>,
    n_max: u64,
    pk_cap: u64,
    phi_ceiling: u64,
) -> Result<Vec<Char0Record>> {
    if !f.field().is_char_zero() {
        return Err(Error::RequiresChar0);
    }
    let p = f.field().p();
    let orders: Vec<u64> = (1..=n_max).filter(|&n| p_part(n, p) <= pk_cap).collect();
    if let Some(&n) = orders.iter().find(|&&n| euler_phi(n) > phi_ceiling) {
        return Err(Error::PhiCeiling {
            n,
            phi: euler_phi(n),
            ceiling: phi_ceiling,
        });
    }
    let found: Vec<Option<Char0Record>> = orders
        .par_iter()
        .map(|&n| {
            let value = evaluate_char0(f, n, 1)?;
            if value.is_zero() {
                return Ok(None);
            }
            Ok(
                is_root_of_unity_cyc(&value)?.map(|order_value| Char0Record {
                    n,
                    j: 1,
                    value: value
                        .value()
                        .coeffs()
                        .iter()
                        .map(|c| c.to_string())
                        .collect(),
                    order_value,
                    multiplicity: euler_phi(n),
                }),
            )
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::FieldSpec;

    fn q(p: u64, terms: &[(i64, &str)]) -> LaurentPoly<Rat> {
        LaurentPoly::new(
            FieldSpec::p_adic(p, 1, 1).unwrap(),
            terms.iter().map(|&(n, c)| (n, c.parse().unwrap())),
        )
    }

    #[test]
    fn x_plus_two_hits_minus_one() {
        let recs = enumerate_char0(&q(2, &[(1, "1"), (0, "2")]), 12, 256, 256).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(
            (recs[0].n, recs[0].order_value, recs[0].multiplicity),
            (2, 1, 1)
        );
    }

    #[test]
    fn special_monomial_hits_every_order() {
        let recs = enumerate_char0(&q(2, &[(3, "-1")]), 12, 4, 256).unwrap();
        let orders: Vec<u64> = recs.iter().map(|r| r.n).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12]);
        assert_eq!(recs[3].multiplicity, 2);
    }

    #[test]
    fn non_unit_never_hits() {
        assert!(enumerate_char0(&q(2, &[(1, "1/2")]), 24, 1 << 10, 256)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn phi_ceiling_guard() {
        let err = enumerate_char0(&q(3, &[(1, "1")]), 20, 100, 4).unwrap_err();
        assert_eq!(
            err,
            Error::PhiCeiling {
                n: 7,
                phi: 6,
                ceiling: 4
            }
        );
    }

    #[test]
    fn negative_exponents_reduce() {
        // X + X^{-1} at ζ_3: ζ + ζ^2 = -1
        let v = evaluate_char0(&q(5, &[(1, "1"), (-1, "1")]), 3, 1).unwrap();
        assert_eq!(is_root_of_unity_cyc(&v).unwrap(), Some(2));
        // at ζ_6: ζ + ζ^5 = 1
        let v = evaluate_char0(&q(5, &[(1, "1"), (-1, "1")]), 6, 1).unwrap();
        assert!(v.is_one());
    }
}
