use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{FieldSpec, LaurentPoly};
use crate::error::{Error, Result};
use crate::exact_fields::{Rat, RatFun, Scalar};

/// Wire form of a [`FieldSpec`]. In positive characteristic `char` is the
/// prime and `p` may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub char: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_deg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ram_index: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub field: FieldJson,
    pub coeffs: Vec<(i64, String)>,
}

impl FieldJson {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        let residue_deg = self.residue_deg.unwrap_or(1);
        if self.char == 0 {
            let p = self
                .p
                .ok_or_else(|| Error::InvalidField("characteristic 0 needs \"p\"".into()))?;
            FieldSpec::p_adic(p, residue_deg, self.ram_index.unwrap_or(1))
        } else {
            if self.p.is_some_and(|p| p != self.char) {
                return Err(Error::InvalidField("\"p\" must equal \"char\"".into()));
            }
            if self.ram_index.is_some() {
                return Err(Error::InvalidField(
                    "ram_index only applies in characteristic 0".into(),
                ));
            }
            FieldSpec::function_field(self.char, residue_deg)
        }
    }

    pub fn from_spec(spec: &FieldSpec) -> Self {
        if spec.is_char_zero() {
            FieldJson {
                char: 0,
                p: Some(spec.p()),
                residue_deg: Some(spec.residue_deg()),
                ram_index: spec.ram_index(),
            }
        } else {
            FieldJson {
                char: spec.p(),
                p: None,
                residue_deg: Some(spec.residue_deg()),
                ram_index: None,
            }
        }
    }
}

/// A parsed input series in either characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Series {
    Adic(LaurentPoly<Rat>),
    Function(LaurentPoly<RatFun>),
}

fn parse_terms<C: Scalar>(field: FieldSpec, coeffs: &[(i64, String)]) -> Result<LaurentPoly<C>> {
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(coeffs.len());
    for (n, text) in coeffs {
        if !seen.insert(*n) {
            return Err(Error::DuplicateExponent(*n));
        }
        terms.push((*n, C::parse(text, field.p())?));
    }
    Ok(LaurentPoly::new(field, terms))
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            field: FieldJson::from_spec(&self.field),
            coeffs: self.terms().map(|(n, c)| (n, c.to_string())).collect(),
        }
    }
}

impl<C: Scalar> Serialize for LaurentPoly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Series {
    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        let field = json.field.to_spec()?;
        if field.is_char_zero() {
            Ok(Series::Adic(parse_terms(field, &json.coeffs)?))
        } else {
            Ok(Series::Function(parse_terms(field, &json.coeffs)?))
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let json: SeriesJson =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Series::from_json(&json)
    }

    pub fn to_json(&self) -> SeriesJson {
        match self {
            Series::Adic(f) => f.to_json(),
            Series::Function(f) => f.to_json(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series always serializes")
    }

    pub fn field(&self) -> &FieldSpec {
        match self {
            Series::Adic(f) => f.field(),
            Series::Function(f) => f.field(),
        }
    }
}
