//! Command-line front end. Every subcommand builds one JSON report; the text
//! format is a rendering of that same document.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{bound, cor_example_bound, p_part_cap};
use crate::classify::{compute_cf, is_special, q_identity_residual, validate_cf};
use crate::error::{Error, Result};
use crate::exact_fields::{Rat, RatFun, Scalar};
use crate::laurent::{ExpansionBudget, LaurentPoly, Series, DEFAULT_BUDGET};
use crate::newton::{newton_at, newton_polygon, parse_slope, polygon_svg};
use crate::torsion_oracle::{
    decompose_pair, enumerate_char0, enumerate_charp, verify_decomposition_exhaustive,
    DEFAULT_PHI_CEILING,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "ultra",
    version,
    about = "Roots of unity on the graphs of non-Archimedean Laurent polynomials"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Cap on monomial products per expansion.
    #[arg(long, global = true, env = "ULTRA_BUDGET")]
    pub budget: Option<u64>,
    /// Seed for the randomized c_f validation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Newton data on a sphere and the Newton polygon.
    Newton {
        #[arg(long)]
        input: PathBuf,
        /// Slope s of the radius p^{-s}, as a/b.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        slope: String,
        /// Write an SVG drawing of the polygon.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Speciality verdict, c_f and a seeded validation of c_f.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Box size B for the validation draws.
        #[arg(long = "box", default_value_t = 3)]
        box_size: i64,
    },
    /// Torsion bound for a series, or the closed form with --cor-example.
    Bound {
        #[arg(long, required_unless_present = "cor_example")]
        input: Option<PathBuf>,
        #[arg(long)]
        cor_example: bool,
        #[arg(short = 'p', requires = "cor_example")]
        p: Option<u64>,
        #[arg(short = 'e', default_value_t = 1)]
        e: u32,
        #[arg(short = 'n', default_value_t = 1)]
        n: u64,
    },
    /// Brute-force list of roots of unity mapped to roots of unity.
    Enumerate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        smax: u32,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
        #[arg(long, default_value_t = DEFAULT_PHI_CEILING)]
        phi_ceiling: u64,
    },
    /// Enumerate and bound, and compare.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        smax: u32,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
        #[arg(long, default_value_t = DEFAULT_PHI_CEILING)]
        phi_ceiling: u64,
    },
    /// Decompose one pair of exponents, or check every pair up to --nmax.
    Decompose {
        #[arg(long, default_value_t = 30)]
        nmax: u64,
        /// A single pair a1,a2 (requires --order).
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            requires = "order"
        )]
        pair: Option<Vec<i64>>,
        #[arg(long)]
        order: Option<u64>,
    },
}

/// Process result: the rendered document and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

pub fn run(config: &RunConfig) -> Outcome {
    match report(config) {
        Ok((doc, code)) => Outcome {
            stdout: render(&doc, config.format),
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_INPUT,
        },
    }
}

fn read_series(path: &Path) -> Result<Series> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Input(e.to_string()))?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
    };
    Series::parse(&text)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn budget(config: &RunConfig) -> ExpansionBudget {
    ExpansionBudget::new(config.budget.unwrap_or(DEFAULT_BUDGET))
}

fn report(config: &RunConfig) -> Result<(Value, i32)> {
    match &config.command {
        Command::Newton { input, slope, plot } => {
            let series = read_series(input)?;
            let s = parse_slope(slope)?;
            let body = match &series {
                Series::Adic(f) => newton_report(f, &s, plot.as_deref())?,
                Series::Function(f) => newton_report(f, &s, plot.as_deref())?,
            };
            Ok((with_series(&series, body), EXIT_OK))
        }
        Command::Classify {
            input,
            trials,
            box_size,
        } => {
            let series = read_series(input)?;
            let mut b = budget(config);
            let body = match &series {
                Series::Adic(f) => classify_report(f, *trials, *box_size, config.seed, &mut b)?,
                Series::Function(f) => classify_report(f, *trials, *box_size, config.seed, &mut b)?,
            };
            Ok((with_series(&series, body), EXIT_OK))
        }
        Command::Bound {
            cor_example: true,
            p,
            e,
            n,
            ..
        } => {
            let p = p.ok_or_else(|| Error::InvalidArgument("-p is required".into()))?;
            if !crate::exact_fields::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if *e == 0 || *n == 0 {
                return Err(Error::InvalidArgument("e and n must be >= 1".into()));
            }
            let value = cor_example_bound(p, *e, *n);
            Ok((
                json!({"p": p, "e": e, "n": n, "bound": big(&value)}),
                EXIT_OK,
            ))
        }
        Command::Bound { input, .. } => {
            let path = input
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("--input is required".into()))?;
            let series = read_series(path)?;
            let r = bound(&series, &mut budget(config))?;
            Ok((
                with_series(&series, json!({"report": to_value(&r)})),
                EXIT_OK,
            ))
        }
        Command::Enumerate {
            input,
            smax,
            nmax,
            phi_ceiling,
        } => {
            let series = read_series(input)?;
            let (body, _) = enumerate_report(&series, *smax, *nmax, *phi_ceiling)?;
            Ok((with_series(&series, body), EXIT_OK))
        }
        Command::Verify {
            input,
            smax,
            nmax,
            phi_ceiling,
        } => {
            let series = read_series(input)?;
            let r = bound(&series, &mut budget(config))?;
            let Some(b) = r.bound().cloned() else {
                return Err(Error::Budget {
                    budget: config.budget.unwrap_or(DEFAULT_BUDGET),
                });
            };
            let (_, count) = enumerate_report(&series, *smax, *nmax, *phi_ceiling)?;
            let ok = BigInt::from(count) <= b;
            let horizon = match series {
                Series::Adic(_) => json!({"nmax": nmax}),
                Series::Function(_) => json!({"smax": smax}),
            };
            let doc = json!({"count": count, "bound": big(&b), "ok": ok, "horizon": horizon});
            Ok((doc, if ok { EXIT_OK } else { EXIT_VERIFY }))
        }
        Command::Decompose { nmax, pair, order } => match (pair, order) {
            (Some(pair), Some(n)) => {
                Ok((to_value(&decompose_pair(pair[0], pair[1], *n)?), EXIT_OK))
            }
            _ => {
                let r = verify_decomposition_exhaustive(*nmax)?;
                let code = if r.passed() { EXIT_OK } else { EXIT_VERIFY };
                let mut doc = to_value(&r);
                doc["passed"] = json!(r.passed());
                Ok((doc, code))
            }
        },
    }
}

fn big(n: &BigInt) -> Value {
    serde_json::to_value(BigJson(n)).expect("integers serialize")
}

struct BigJson<'a>(&'a BigInt);

impl Serialize for BigJson<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::wire::bigint(self.0, s)
    }
}

fn with_series(series: &Series, body: Value) -> Value {
    let mut doc = json!({"series": to_value(&series.to_json())});
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    doc
}

fn newton_report<C: Scalar>(
    f: &LaurentPoly<C>,
    s: &num_rational::BigRational,
    plot: Option<&Path>,
) -> Result<Value> {
    let polygon = newton_polygon(f)?;
    let data = newton_at(f, s);
    if let Some(path) = plot {
        std::fs::write(path, polygon_svg(f, &polygon))
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(json!({
        "slope": s.to_string(),
        "newton": to_value(&data),
        "zeros_on_sphere": data.spread(),
        "polygon": {
            "vertices": to_value(&polygon.vertices),
            "segments": to_value(&polygon.segments()),
        },
    }))
}

fn classify_report<C: Scalar>(
    f: &LaurentPoly<C>,
    trials: usize,
    box_size: i64,
    seed: u64,
    budget: &mut ExpansionBudget,
) -> Result<Value> {
    let verdict = is_special(f);
    if f.is_zero() {
        return Ok(json!({"verdict": to_value(&verdict), "cf": null}));
    }
    let q = f.field().q();
    let residual = match q_identity_residual(f, q, budget) {
        Ok(g) => json!({"q": q, "residual_is_zero": g.is_zero()}),
        Err(Error::Budget { .. }) => json!({"q": q, "residual_is_zero": null}),
        Err(e) => return Err(e),
    };
    let validation = if verdict.is_special() {
        Value::Null
    } else {
        to_value(&validate_cf(f, trials, box_size, seed)?)
    };
    Ok(json!({
        "verdict": to_value(&verdict),
        "q_identity": residual,
        "cf": to_value(&compute_cf(f)?),
        "validation": validation,
    }))
}

/// Oracle report and the torsion count it found.
fn enumerate_report(
    series: &Series,
    smax: u32,
    nmax: u64,
    phi_ceiling: u64,
) -> Result<(Value, u64)> {
    match series {
        Series::Function(f) => charp_report(f, smax),
        Series::Adic(f) => char0_report(f, nmax, phi_ceiling),
    }
}

fn charp_report(f: &LaurentPoly<RatFun>, smax: u32) -> Result<(Value, u64)> {
    let records = enumerate_charp(f, smax)?;
    let mut by_level = vec![0u64; smax as usize];
    for r in &records {
        by_level[r.level as usize - 1] += 1;
    }
    let count = records.len() as u64;
    Ok((
        json!({"smax": smax, "count": count, "count_by_level": by_level, "records": to_value(&records)}),
        count,
    ))
}

fn char0_report(f: &LaurentPoly<Rat>, nmax: u64, phi_ceiling: u64) -> Result<(Value, u64)> {
    let field = f.field();
    let cf = compute_cf(f)?;
    let (_, k) = p_part_cap(cf.c_f, field.ram_index().unwrap_or(1), field.p());
    let pk_cap = field
        .p()
        .checked_pow(k)
        .ok_or_else(|| Error::InvalidArgument(format!("p^{k} exceeds 64 bits")))?;
    let records = enumerate_char0(f, nmax, pk_cap, phi_ceiling)?;
    let count: u64 = records.iter().map(|r| r.multiplicity).sum();
    Ok((
        json!({"nmax": nmax, "k": k, "pk_cap": pk_cap, "count": count, "records": to_value(&records)}),
        count,
    ))
}

/// Indented `key: value` rendering of a JSON document.
pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(doc, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        Value::Array(items)
            if items.iter().all(|x| {
                x.as_array()
                    .is_some_and(|a| a.iter().all(|y| !y.is_object() && !y.is_array()))
            }) =>
        {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        _ => None,
    }
}

fn render_text(doc: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match doc {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render_text(v, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
