//! Sup-norms on spheres, dominant indices and Newton polygons.
//!
//! A radius `r` is written additively as a slope `s` with `r = p^{-s}`, so
//! `|f_n| r^n` becomes `v(f_n) + s n` and every comparison is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_fields::{Scalar, Valuation};
use crate::laurent::LaurentPoly;

/// Dominant data of `f` on the sphere of radius `p^{-s}`.
///
/// `vmin` is the additive form of `|f|_r`; `k_upper`/`k_lower` are the largest
/// and smallest dominant indices. For the zero series `vmin` is infinite, the
/// dominant set is empty and both indices are reported as 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonData {
    pub vmin: Valuation,
    #[serde(rename = "K")]
    pub k_upper: i64,
    #[serde(rename = "k")]
    pub k_lower: i64,
    pub dominant: Vec<i64>,
}

impl NewtonData {
    /// `K - k`, the zero count on the sphere.
    pub fn spread(&self) -> i64 {
        self.k_upper - self.k_lower
    }
}

pub fn newton_at<C: Scalar>(f: &LaurentPoly<C>, s: &BigRational) -> NewtonData {
    let p = f.field().p();
    let mut vmin = Valuation::Infinite;
    let mut dominant = Vec::new();
    for (n, c) in f.terms() {
        let v = c.valuation(p).shifted(s, n);
        match v.cmp(&vmin) {
            std::cmp::Ordering::Less => {
                vmin = v;
                dominant.clear();
                dominant.push(n);
            }
            std::cmp::Ordering::Equal => dominant.push(n),
            std::cmp::Ordering::Greater => {}
        }
    }
    let k_lower = dominant.first().copied().unwrap_or(0);
    let k_upper = dominant.last().copied().unwrap_or(0);
    NewtonData {
        vmin,
        k_upper,
        k_lower,
        dominant,
    }
}

/// Number of zeros (with multiplicity) of absolute value `p^{-s}` in the
/// algebraically closed completion: `K(f,r) - k(f,r)`.
pub fn zeros_on_sphere<C: Scalar>(f: &LaurentPoly<C>, s: &BigRational) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroSeries);
    }
    Ok(newton_at(f, s).spread())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub exponent: i64,
    #[serde(serialize_with = "crate::wire::rational")]
    pub valuation: BigRational,
}

/// Edge of the lower hull. Its slope is `-s`: it accounts for `length` zeros
/// of valuation `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "crate::wire::rational")]
    pub s: BigRational,
    pub length: i64,
}

/// Lower convex hull of `{(n, v(f_n))}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<Vertex>,
}

impl NewtonPolygon {
    pub fn segments(&self) -> Vec<Segment> {
        self.vertices
            .windows(2)
            .map(|w| {
                let length = w[1].exponent - w[0].exponent;
                let rise = &w[1].valuation - &w[0].valuation;
                Segment {
                    s: -rise / BigInt::from(length),
                    length,
                }
            })
            .collect()
    }
}

fn cross(o: &Vertex, a: &Vertex, b: &Vertex) -> BigRational {
    let (ax, ay) = (
        BigRational::from_integer((a.exponent - o.exponent).into()),
        &a.valuation - &o.valuation,
    );
    let (bx, by) = (
        BigRational::from_integer((b.exponent - o.exponent).into()),
        &b.valuation - &o.valuation,
    );
    ax * by - ay * bx
}

pub fn newton_polygon<C: Scalar>(f: &LaurentPoly<C>) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let p = f.field().p();
    let mut hull: Vec<Vertex> = Vec::new();
    for (n, c) in f.terms() {
        let point = Vertex {
            exponent: n,
            valuation: c
                .valuation(p)
                .finite()
                .cloned()
                .expect("stored coefficients are nonzero"),
        };
        while hull.len() >= 2
            && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &point).is_positive()
        {
            hull.pop();
        }
        hull.push(point);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// SVG drawing of the support points and the lower hull. Display only.
pub fn polygon_svg<C: Scalar>(f: &LaurentPoly<C>, polygon: &NewtonPolygon) -> String {
    let p = f.field().p();
    let points: Vec<(f64, f64)> = f
        .terms()
        .map(|(n, c)| {
            (
                n as f64,
                ratio_f64(c.valuation(p).finite().expect("nonzero")),
            )
        })
        .collect();
    let (w, h, pad) = (480.0, 360.0, 40.0);
    let (xmin, xmax) = bounds(points.iter().map(|q| q.0));
    let (ymin, ymax) = bounds(points.iter().map(|q| q.1));
    let sx = |x: f64| pad + (x - xmin) / (xmax - xmin).max(1.0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - ymin) / (ymax - ymin).max(1.0) * (h - 2.0 * pad);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    svg.push_str(&format!(
        "<line x1=\"{pad}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\"/>\n",
        h - pad,
        w - pad,
        h - pad
    ));
    let path: Vec<String> = polygon
        .vertices
        .iter()
        .map(|v| {
            format!(
                "{:.2},{:.2}",
                sx(v.exponent as f64),
                sy(ratio_f64(&v.valuation))
            )
        })
        .collect();
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#c33\" stroke-width=\"2\"/>\n",
        path.join(" ")
    ));
    for (x, y) in &points {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#236\"><title>({x}, {y})</title></circle>\n",
            sx(*x),
            sy(*y)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}

/// Exact slope parser for `"a/b"` or `"a"`.
pub fn parse_slope(text: &str) -> Result<BigRational> {
    let r: crate::exact_fields::Rat = text.parse()?;
    Ok(r.as_big().clone())
}

pub fn slope_zero() -> BigRational {
    BigRational::zero()
}
