use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// `ζ^{a_i} = ζ_e^{t_i} ζ_N^{k_i}` with `ζ_N = ζ^u`, written additively:
/// `a_i ≡ (N/e) t_i + u k_i (mod N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RouDecomposition {
    #[serde(rename = "N")]
    pub n: u64,
    pub e: u64,
    pub u: u64,
    pub k1: i64,
    pub k2: i64,
    pub t1: u64,
    pub t2: u64,
}

/// `x^4 <= N^3`, i.e. `x <= N^{3/4}`, in exact integers.
fn within(x: u128, n: u64) -> bool {
    let n = n as u128;
    x.checked_pow(4).is_some_and(|x4| x4 <= n * n * n)
}

fn centered(r: u64, m: u64) -> i64 {
    if 2 * r > m {
        r as i64 - m as i64
    } else {
        r as i64
    }
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

/// All invariants of a decomposition, checked from scratch.
pub fn check_decomposition(a1: i64, a2: i64, d: &RouDecomposition) -> bool {
    let n = d.n;
    if n == 0 || d.e == 0 || !n.is_multiple_of(d.e) || d.u.gcd(&n) != 1 {
        return false;
    }
    if !within(d.e as u128, n) {
        return false;
    }
    let box_ok = |k: i64| within(k.unsigned_abs() as u128 * d.e as u128, n);
    let cong = |a: i64, t: u64, k: i64| {
        let n = n as i128;
        let lhs = (a as i128).rem_euclid(n);
        let rhs = ((n / d.e as i128) * t as i128 + d.u as i128 * k as i128).rem_euclid(n);
        lhs == rhs
    };
    d.t1 < d.e
        && d.t2 < d.e
        && box_ok(d.k1)
        && box_ok(d.k2)
        && cong(a1, d.t1, d.k1)
        && cong(a2, d.t2, d.k2)
}

/// Witness with minimal `e`, then minimal `|k1| + |k2|`, then least `w`.
///
/// For a divisor `e` put `M = N/e`. Any unit `w` mod `M` gives `k_i = w a_i`
/// reduced to `(-M/2, M/2]`; then `u` is a lift of `w^{-1}` mod `M` to a unit
/// mod `N`, and `t_i = (a_i - u k_i)/M mod e`.
pub fn decompose_pair(a1: i64, a2: i64, n: u64) -> Result<RouDecomposition> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    let ni = i64::try_from(n).map_err(|_| Error::ExponentOverflow)?;
    let (r1, r2) = (a1.rem_euclid(ni) as u64, a2.rem_euclid(ni) as u64);
    if r1.gcd(&r2).gcd(&n) != 1 {
        return Err(Error::InvalidArgument(format!(
            "gcd({a1}, {a2}, {n}) != 1: the pair does not have order {n}"
        )));
    }
    for e in crate::exact_fields::cyclotomic::divisors(n) {
        if !within(e as u128, n) {
            break;
        }
        let m = n / e;
        let mut best: Option<(u64, i64, i64)> = None;
        for w in (0..m.max(1)).filter(|&w| m == 1 || w.gcd(&m) == 1) {
            let k1 = if m == 1 { 0 } else { centered(w * r1 % m, m) };
            let k2 = if m == 1 { 0 } else { centered(w * r2 % m, m) };
            let ok = |k: i64| within(k.unsigned_abs() as u128 * e as u128, n);
            if !(ok(k1) && ok(k2)) {
                continue;
            }
            let cost = k1.abs() + k2.abs();
            if best.is_none_or(|(_, b1, b2)| cost < b1.abs() + b2.abs()) {
                best = Some((w, k1, k2));
            }
        }
        if let Some((w, k1, k2)) = best {
            let inv = if m == 1 { 0 } else { inverse_mod(w, m) };
            let u = (0..e)
                .map(|j| inv + j * m)
                .find(|&u| u > 0 && u.gcd(&n) == 1)
                .or((n == 1).then_some(1))
                .ok_or(Error::NoWitness { n, a1, a2 })?;
            let t = |r: u64, k: i64| {
                let diff = r as i128 - u as i128 * k as i128;
                (diff.div_euclid(m as i128)).rem_euclid(e as i128) as u64
            };
            let d = RouDecomposition {
                n,
                e,
                u,
                k1,
                k2,
                t1: t(r1, k1),
                t2: t(r2, k2),
            };
            debug_assert!(check_decomposition(a1, a2, &d));
            return Ok(d);
        }
    }
    Err(Error::NoWitness { n, a1, a2 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub n_max: u64,
    pub pairs: u64,
    pub failures: Vec<(u64, i64, i64)>,
    /// Largest `e / N^{3/4}` seen.
    pub max_e_ratio: f64,
    /// Largest `|k_i| e / N^{3/4}` seen.
    pub max_k_ratio: f64,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decompose every pair `(a1, a2)` of order exactly `N`, for all `N <= n_max`,
/// and re-check each witness.
pub fn verify_decomposition_exhaustive(n_max: u64) -> Result<DecompositionReport> {
    if n_max > 300 {
        return Err(Error::InvalidArgument("n_max is limited to 300".into()));
    }
    struct Partial {
        pairs: u64,
        failures: Vec<(u64, i64, i64)>,
        e_ratio: f64,
        k_ratio: f64,
    }
    let per_n: Vec<Partial> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let root = (n as f64).powf(0.75);
            let mut out = Partial {
                pairs: 0,
                failures: Vec::new(),
                e_ratio: 0.0,
                k_ratio: 0.0,
            };
            for a1 in 0..n as i64 {
                for a2 in 0..n as i64 {
                    if (a1 as u64).gcd(&(a2 as u64)).gcd(&n) != 1 {
                        continue;
                    }
                    out.pairs += 1;
                    match decompose_pair(a1, a2, n) {
                        Ok(d) if check_decomposition(a1, a2, &d) => {
                            out.e_ratio = out.e_ratio.max(d.e as f64 / root);
                            let k = d.k1.unsigned_abs().max(d.k2.unsigned_abs());
                            out.k_ratio = out.k_ratio.max((k * d.e) as f64 / root);
                        }
                        _ => out.failures.push((n, a1, a2)),
                    }
                }
            }
            out
        })
        .collect();
    Ok(DecompositionReport {
        n_max,
        pairs: per_n.iter().map(|x| x.pairs).sum(),
        failures: per_n
            .iter()
            .flat_map(|x| x.failures.iter().copied())
            .collect(),
        max_e_ratio: per_n.iter().map(|x| x.e_ratio).fold(0.0, f64::max),
        max_k_ratio: per_n.iter().map(|x| x.k_ratio).fold(0.0, f64::max),
    })
}
