//! Builders and independent reference computations shared by the
//! integration tests. Nothing here calls into the code under test beyond
//! constructing inputs.

#![allow(dead_code)]

use ultra::exact_fields::{Rat, RatFun, Scalar};
use ultra::laurent::{FieldSpec, LaurentPoly};

pub fn qpoly(p: u64, terms: &[(i64, &str)]) -> LaurentPoly<Rat> {
    LaurentPoly::new(
        FieldSpec::p_adic(p, 1, 1).unwrap(),
        terms.iter().map(|&(n, c)| (n, c.parse::<Rat>().unwrap())),
    )
}

pub fn fpoly(p: u64, terms: &[(i64, &str)]) -> LaurentPoly<RatFun> {
    LaurentPoly::new(
        FieldSpec::function_field(p, 1).unwrap(),
        terms
            .iter()
            .map(|&(n, c)| (n, RatFun::parse(c, p).unwrap())),
    )
}

/// `F_{2^s}` as bit vectors modulo a fixed irreducible polynomial.
pub mod gf2 {
    const MODULI: [u32; 9] = [
        0,
        0b11,
        0b111,
        0b1011,
        0b10011,
        0b100101,
        0b1000011,
        0b10000011,
        0b100011101,
    ];

    pub fn mul(a: u32, b: u32, s: u32) -> u32 {
        let m = MODULI[s as usize];
        let mut acc = 0u32;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> s & 1 == 1 {
                a ^= m;
            }
        }
        acc
    }

    pub fn pow(a: u32, mut e: u64, s: u32) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base, s);
            }
            base = mul(base, base, s);
            e >>= 1;
        }
        acc
    }

    pub fn exact_degree(z: u32, s: u32) -> u32 {
        (1..=s)
            .filter(|d| s.is_multiple_of(*d))
            .find(|&d| pow(z, 1u64 << d, s) == z)
            .unwrap()
    }

    /// `sum_{n in support} z^n`, negative exponents through `z^{2^s - 2}`.
    pub fn eval(support: &[i64], z: u32, s: u32) -> u32 {
        let order = (1u64 << s) - 1;
        support.iter().fold(0, |acc, &n| {
            acc ^ pow(z, n.rem_euclid(order as i64) as u64, s)
        })
    }

    /// Number of `ζ` of exact degree `<= s_max` over `F_2` for which
    /// `A(ζ) + t B(ζ)` is a nonzero constant, i.e. `B(ζ) = 0 != A(ζ)`.
    /// `A`, `B` have coefficients in `F_2`, given by their supports.
    pub fn count_constant_values(a: &[i64], b: &[i64], s_max: u32) -> usize {
        let mut count = 0;
        for s in 1..=s_max {
            for z in 1..(1u32 << s) {
                if s > 1 && exact_degree(z, s) != s {
                    continue;
                }
                if s == 1 && z != 1 {
                    continue;
                }
                if eval(b, z, s) == 0 && eval(a, z, s) != 0 {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Lower hull by brute force: an interior point is a vertex iff it lies
/// strictly below every chord joining a point on its left to one on its right.
pub fn brute_lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort();
    let mut out = Vec::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        if i == 0 || i + 1 == pts.len() {
            out.push((x, y));
            continue;
        }
        let below_all = pts[..i].iter().all(|&(xa, ya)| {
            pts[i + 1..].iter().all(|&(xb, yb)| {
                // y < ya + (yb - ya)(x - xa)/(xb - xa)
                (y - ya) * (xb - xa) < (yb - ya) * (x - xa)
            })
        });
        if below_all {
            out.push((x, y));
        }
    }
    out
}

/// Floating-point evaluation of a rational Laurent polynomial at `e^{2πi j/N}`.
pub fn eval_complex(terms: &[(i64, f64)], n: u64, j: u64) -> (f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    for &(e, c) in terms {
        let theta =
            2.0 * std::f64::consts::PI * ((e * j as i64).rem_euclid(n as i64)) as f64 / n as f64;
        re += c * theta.cos();
        im += c * theta.sin();
    }
    (re, im)
}

fn cpow(z: (f64, f64), mut e: u64) -> (f64, f64) {
    let mut acc = (1.0, 0.0);
    let mut base = z;
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Torsion count of `f` over orders `N <= n_max` (with `p`-part `<= pk_cap`),
/// testing `f(ζ)^{lcm(2,N)} ≈ 1` in the complex embedding for every
/// primitive `ζ` separately.
pub fn complex_torsion_count(
    terms: &[(i64, f64)],
    p: u64,
    n_max: u64,
    pk_cap: u64,
) -> (u64, Vec<u64>) {
    let mut count = 0;
    let mut orders = Vec::new();
    for n in 1..=n_max {
        let mut m = n;
        let mut part = 1;
        while m % p == 0 {
            m /= p;
            part *= p;
        }
        if part > pk_cap {
            continue;
        }
        let l = if n % 2 == 0 { n } else { 2 * n };
        let mut hits = 0;
        for j in (1..=n).filter(|&j| gcd(j, n) == 1) {
            let z = cpow(eval_complex(terms, n, j), l);
            if (z.0 - 1.0).abs() < 1e-6 && z.1.abs() < 1e-6 {
                hits += 1;
            }
        }
        if hits > 0 {
            orders.push(n);
        }
        count += hits;
    }
    (count, orders)
}

/// Counts of elements of exact degree `s` over `F_p`: `sum_{d | s} μ(d) p^{s/d}`.
pub fn exact_degree_count(p: u64, s: u32) -> u64 {
    fn mobius(n: u32) -> i64 {
        let mut n = n;
        let mut k = 0;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                n /= d;
                if n.is_multiple_of(d) {
                    return 0;
                }
                k += 1;
            }
            d += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }
    let total: i64 = (1..=s)
        .filter(|d| s.is_multiple_of(*d))
        .map(|d| mobius(d) * (p as i64).pow(s / d))
        .sum();
    total as u64
}

pub fn unit(p: u64) -> Vec<Rat> {
    Rat::unit_samples(p)
}

pub mod random {
    use rand::Rng;
    use ultra::exact_fields::{FpPoly, Rat, RatFun};
    use ultra::laurent::{FieldSpec, LaurentPoly};

    /// `± a/b * p^s` with small `a, b` and `|s| <= 2`.
    pub fn rat<R: Rng>(rng: &mut R, p: u64) -> Rat {
        let shift = rng.random_range(-2i32..=2);
        let mut num: i64 = rng.random_range(1..=12);
        if rng.random_bool(0.5) {
            num = -num;
        }
        let mut den: i64 = rng.random_range(1..=6);
        let pp = (p as i64).pow(shift.unsigned_abs());
        if shift >= 0 {
            num *= pp;
        } else {
            den *= pp;
        }
        Rat::new(num, den).unwrap()
    }

    pub fn fpoly<R: Rng>(rng: &mut R, p: u64, max_deg: usize) -> FpPoly {
        let deg = rng.random_range(0..=max_deg);
        FpPoly::new(p, (0..=deg).map(|_| rng.random_range(0..p)).collect())
    }

    pub fn ratfun<R: Rng>(rng: &mut R, p: u64) -> RatFun {
        loop {
            let num = fpoly(rng, p, 3);
            if num.is_zero() {
                continue;
            }
            let den = if rng.random_bool(0.5) {
                FpPoly::one(p)
            } else {
                fpoly(rng, p, 2)
            };
            if den.is_zero() {
                continue;
            }
            return RatFun::new(num, den).unwrap();
        }
    }

    fn exponents<R: Rng>(rng: &mut R, len: usize, span: i64) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        while out.len() < len {
            let n = rng.random_range(-span..=span);
            if !out.contains(&n) {
                out.push(n);
            }
        }
        out
    }

    pub fn adic<R: Rng>(rng: &mut R, p: u64, max_len: usize, span: i64) -> LaurentPoly<Rat> {
        let len = rng.random_range(1..=max_len);
        let field = FieldSpec::p_adic(p, 1, 1).unwrap();
        let terms: Vec<(i64, Rat)> = exponents(rng, len, span)
            .into_iter()
            .map(|n| (n, rat(rng, p)))
            .collect();
        LaurentPoly::new(field, terms)
    }

    pub fn function<R: Rng>(rng: &mut R, p: u64, max_len: usize, span: i64) -> LaurentPoly<RatFun> {
        let len = rng.random_range(1..=max_len);
        let field = FieldSpec::function_field(p, 1).unwrap();
        let terms: Vec<(i64, RatFun)> = exponents(rng, len, span)
            .into_iter()
            .map(|n| (n, ratfun(rng, p)))
            .collect();
        LaurentPoly::new(field, terms)
    }
}
