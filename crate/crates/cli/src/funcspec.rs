//! The `--f` grammar for Boolean functions.
//!
//! ```text
//! affine:a=<elt>,b=<bit>     tr(a x) + b
//! gold:alpha=<elt>,i=<int>   tr(alpha x^(2^i + 1))
//! mm:<perm>|mm:identity      <u, perm(v)> on the two halves of x (even m)
//! hex:<truth table>
//! bent:auto | semibent:auto
//! ```
//!
//! Field elements are the integer value of their coefficient bits, written in
//! decimal, `0x…` or `0b…`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use z4trace::boolfun::{search_quadratic, BooleanFunction, SearchTarget};
use z4trace::gf2m::BinaryField;
use z4trace::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FunctionSpec {
    Affine { a: u32, b: bool },
    Gold { alpha: u32, i: u32 },
    MaioranaMcFarland { perm: Option<Vec<u32>> },
    Hex(String),
    BentAuto,
    SemiBentAuto,
}

fn parse_int(s: &str) -> Result<u32> {
    let s = s.trim();
    let parsed = if let Some(h) = s.strip_prefix("0x") {
        u32::from_str_radix(h, 16)
    } else if let Some(b) = s.strip_prefix("0b") {
        u32::from_str_radix(b, 2)
    } else {
        s.parse()
    };
    parsed.map_err(|_| Error::Parse(format!("'{s}' is not an integer")))
}

/// Splits `k1=v1,k2=v2` and checks the key set exactly.
fn params<'a>(body: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut found: Vec<Option<&str>> = vec![None; keys.len()];
    for part in body.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{part}'")))?;
        let slot = keys
            .iter()
            .position(|&key| key == k.trim())
            .ok_or_else(|| Error::Parse(format!("unknown parameter '{}'", k.trim())))?;
        if found[slot].replace(v.trim()).is_some() {
            return Err(Error::Parse(format!(
                "parameter '{}' given twice",
                keys[slot]
            )));
        }
    }
    found
        .into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| Error::Parse(format!("missing parameter '{k}'"))))
        .collect()
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("function spec '{s}' lacks a family prefix")))?;
        match family.trim() {
            "affine" => {
                let v = params(body, &["a", "b"])?;
                let b = match parse_int(v[1])? {
                    0 => false,
                    1 => true,
                    other => return Err(Error::Parse(format!("b must be 0 or 1, got {other}"))),
                };
                Ok(FunctionSpec::Affine {
                    a: parse_int(v[0])?,
                    b,
                })
            }
            "gold" => {
                let v = params(body, &["alpha", "i"])?;
                Ok(FunctionSpec::Gold {
                    alpha: parse_int(v[0])?,
                    i: parse_int(v[1])?,
                })
            }
            "mm" => match body.trim() {
                "identity" => Ok(FunctionSpec::MaioranaMcFarland { perm: None }),
                list => Ok(FunctionSpec::MaioranaMcFarland {
                    perm: Some(list.split(',').map(parse_int).collect::<Result<_>>()?),
                }),
            },
            "hex" => Ok(FunctionSpec::Hex(body.trim().to_ascii_lowercase())),
            "bent" if body.trim() == "auto" => Ok(FunctionSpec::BentAuto),
            "semibent" if body.trim() == "auto" => Ok(FunctionSpec::SemiBentAuto),
            other => Err(Error::Parse(format!(
                "unknown function family '{other}:{body}'"
            ))),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Affine { a, b } => write!(f, "affine:a={a},b={}", u8::from(*b)),
            FunctionSpec::Gold { alpha, i } => write!(f, "gold:alpha={alpha},i={i}"),
            FunctionSpec::MaioranaMcFarland { perm: None } => f.write_str("mm:identity"),
            FunctionSpec::MaioranaMcFarland { perm: Some(p) } => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "mm:{}", parts.join(","))
            }
            FunctionSpec::Hex(h) => write!(f, "hex:{h}"),
            FunctionSpec::BentAuto => f.write_str("bent:auto"),
            FunctionSpec::SemiBentAuto => f.write_str("semibent:auto"),
        }
    }
}

impl TryFrom<String> for FunctionSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FunctionSpec> for String {
    fn from(spec: FunctionSpec) -> String {
        spec.to_string()
    }
}

impl FunctionSpec {
    pub fn build(&self, field: &Arc<BinaryField>) -> Result<BooleanFunction> {
        let m = field.m();
        match self {
            FunctionSpec::Affine { a, b } => {
                BooleanFunction::affine(Arc::clone(field), field.element(*a)?, *b)
            }
            FunctionSpec::Gold { alpha, i } => {
                BooleanFunction::quadratic_monomial(Arc::clone(field), field.element(*alpha)?, *i)
            }
            FunctionSpec::MaioranaMcFarland { perm } => {
                if m % 2 == 1 {
                    return Err(Error::InvalidArgument(format!(
                        "mm needs an even m, got {m}"
                    )));
                }
                let identity: Vec<u32> = (0..1u32 << (m / 2)).collect();
                let p = perm.as_deref().unwrap_or(&identity);
                BooleanFunction::maiorana_mcfarland(Arc::clone(field), p)
            }
            FunctionSpec::Hex(h) => BooleanFunction::from_hex(Arc::clone(field), h),
            FunctionSpec::BentAuto => {
                search_quadratic(field, SearchTarget::Bent).ok_or_else(|| {
                    Error::InvalidArgument(format!("no bent function found for m = {m}"))
                })
            }
            FunctionSpec::SemiBentAuto => search_quadratic(field, SearchTarget::SemiBent)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("no semi-bent function found for m = {m}"))
                }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trip() {
        for s in [
            "affine:a=1,b=1",
            "gold:alpha=3,i=1",
            "mm:identity",
            "mm:1,0,3,2",
            "hex:6a",
            "bent:auto",
            "semibent:auto",
        ] {
            let spec: FunctionSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "affine:b=0,a=0x5".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Affine { a: 5, b: false }
        );
    }

    #[test]
    fn grammar_errors() {
        for s in [
            "affine:a=1",
            "affine:a=1,b=2",
            "affine:a=1,b=1,c=0",
            "gold:alpha=x,i=1",
            "nope:1",
            "bent:manual",
            "tr(x)",
        ] {
            assert!(s.parse::<FunctionSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn builds_functions() {
        let field = Arc::new(BinaryField::new(4).unwrap());
        let f = FunctionSpec::Affine { a: 1, b: true }
            .build(&field)
            .unwrap();
        assert_eq!(f.weight(), 8);
        let mm = FunctionSpec::MaioranaMcFarland { perm: None }
            .build(&field)
            .unwrap();
        assert_eq!(mm.weight(), 6);
        let bent = FunctionSpec::BentAuto.build(&field).unwrap();
        assert_eq!(bent.weight(), 6);
        assert!(FunctionSpec::SemiBentAuto.build(&field).is_err());
        let hex = FunctionSpec::Hex(bent.to_hex()).build(&field).unwrap();
        assert_eq!(hex, bent);
        assert!(FunctionSpec::Affine { a: 16, b: false }
            .build(&field)
            .is_err());
        let odd = Arc::new(BinaryField::new(5).unwrap());
        assert!(FunctionSpec::MaioranaMcFarland { perm: None }
            .build(&odd)
            .is_err());
    }

    #[test]
    fn serde_as_string() {
        let spec = FunctionSpec::Gold { alpha: 2, i: 1 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, "\"gold:alpha=2,i=1\"");
        assert_eq!(serde_json::from_str::<FunctionSpec>(&json).unwrap(), spec);
    }
}
