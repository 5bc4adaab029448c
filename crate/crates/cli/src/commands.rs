//! `ring-info` and `build`.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use z4trace::binary_codes::{
    gray_image, griesmer_bound, meets_griesmer, residue_code, torsion_code, BinaryCode, GrayParams,
};
use z4trace::boolfun::BooleanFunction;
use z4trace::gr4m::{GaloisRing, Subset};
use z4trace::trace_codes::{DefiningSet, LeeWeightEnumerator, TraceCode};

use crate::config::{CliError, CliResult, Format, Kind, RunConfig, SCHEMA};

/// `c_m x^m + … + c_0`, coefficients given low degree first.
pub fn poly_string(coeffs: &[u8]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn bits_low_first(poly: u32) -> Vec<u8> {
    (0..32 - poly.leading_zeros())
        .map(|i| ((poly >> i) & 1) as u8)
        .collect()
}

fn to_json(v: &impl Serialize) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn ring_info(m: u32, format: Format, teichmuller: bool) -> CliResult<String> {
    let ring = GaloisRing::new(m)?;
    let field_poly = ring.field().primitive_poly();
    let units = ring.enumerate(Subset::Units).count();
    let ideal = ring.enumerate(Subset::Ideal).count();
    let t = ring.teichmuller_set().len();
    match format {
        Format::Json => {
            let mut v = json!({
                "schema": SCHEMA,
                "command": "ring-info",
                "m": m,
                "field_poly": poly_string(&bits_low_first(field_poly)),
                "field_poly_bits": z4trace::gf2m::format_poly_bits(field_poly),
                "basic_poly": poly_string(ring.basic_poly()),
                "basic_poly_coeffs": ring.basic_poly(),
                "ring_size": ring.size(),
                "teichmuller_size": t,
                "units": units,
                "ideal": ideal,
                "xi": ring.format_element(ring.xi()),
            });
            if teichmuller {
                v["teichmuller"] = serde_json::to_value(ring.teichmuller_table())?;
            }
            to_json(&v)
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "# {SCHEMA} ring-info").unwrap();
            writeln!(
                out,
                "GF(2^{m}) with f(x) = {}",
                poly_string(&bits_low_first(field_poly))
            )
            .unwrap();
            writeln!(out, "{ring}").unwrap();
            writeln!(
                out,
                "|R| = {}, |T| = {t}, |R*| = {units}, |I| = {ideal}",
                ring.size()
            )
            .unwrap();
            if teichmuller {
                writeln!(out, "exponent,element,residue,trace").unwrap();
                for e in ring.teichmuller_table().entries {
                    let exp = e
                        .exponent
                        .map(|k| k.to_string())
                        .unwrap_or_else(|| "-".into());
                    writeln!(out, "{exp},\"{}\",{},{}", e.element, e.residue, e.trace).unwrap();
                }
            }
            Ok(out)
        }
        Format::Csv => {
            let mut out = String::from("exponent,element,residue,trace\n");
            for e in ring.teichmuller_table().entries {
                let exp = e.exponent.map(|k| k.to_string()).unwrap_or_default();
                writeln!(out, "{exp},\"{}\",{},{}", e.element, e.residue, e.trace).unwrap();
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct FunctionInfo {
    spec: String,
    hex: String,
    weight: usize,
    class: String,
}

/// Parameters of a derived binary code, or why they were not computed.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
enum Part<T> {
    Done(T),
    Skipped { skipped: String },
}

impl<T> Part<T> {
    fn from_result(r: z4trace::Result<T>) -> CliResult<Self> {
        match r {
            Ok(v) => Ok(Part::Done(v)),
            Err(e @ (z4trace::Error::BudgetExceeded { .. } | z4trace::Error::EmptyCode)) => {
                Ok(Part::Skipped {
                    skipped: e.to_string(),
                })
            }
            Err(e) => Err(e.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct BinaryParams {
    n: usize,
    #[serde(rename = "M")]
    size: usize,
    k: Option<u32>,
    d: u64,
    linear: Option<bool>,
    griesmer: Option<GriesmerCheck>,
}

#[derive(Debug, Clone, Serialize)]
struct GriesmerCheck {
    k: u32,
    d: u64,
    bound: u64,
    meets: bool,
}

fn griesmer_for(n: usize, size: u64, d: u64) -> Option<GriesmerCheck> {
    size.is_power_of_two().then(|| {
        let k = size.trailing_zeros();
        GriesmerCheck {
            k,
            d,
            bound: griesmer_bound(k, d, 2),
            meets: meets_griesmer(n as u64, k, d, 2),
        }
    })
}

fn binary_params(code: &BinaryCode) -> z4trace::Result<BinaryParams> {
    let d = code.min_distance()?;
    Ok(BinaryParams {
        n: code.length(),
        size: code.size(),
        k: code.dimension(),
        d,
        linear: code.linearity().as_option(),
        griesmer: griesmer_for(code.length(), code.size() as u64, d),
    })
}

#[derive(Debug, Clone, Serialize)]
struct GrayReport {
    #[serde(flatten)]
    params: GrayParams,
    griesmer: Option<GriesmerCheck>,
}

#[derive(Debug, Clone, Serialize)]
struct BuildReport {
    schema: &'static str,
    command: &'static str,
    config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    function: Option<FunctionInfo>,
    m: u32,
    kind: String,
    n: usize,
    enumerator: LeeWeightEnumerator,
    analytic: LeeWeightEnumerator,
    analytic_match: bool,
    gray: Part<GrayReport>,
    residue: Part<BinaryParams>,
    torsion: Part<BinaryParams>,
}

/// The trace code a configuration describes, with its source function.
pub fn construct(config: &RunConfig) -> CliResult<(TraceCode, Option<BooleanFunction>)> {
    config.validate()?;
    let ring = Arc::new(GaloisRing::new(config.m)?);
    let f = match &config.function {
        Some(spec) => Some(spec.build(ring.field())?),
        None => None,
    };
    let d = match (config.kind, &f) {
        (Kind::Support, Some(f)) => DefiningSet::support(&ring, f)?,
        (Kind::SupportPlus, Some(f)) => DefiningSet::support_plus(&ring, f)?,
        (Kind::Skew, _) => match config.seed {
            Some(seed) => DefiningSet::skew_random(&ring, seed),
            None => DefiningSet::skew(&ring),
        },
        _ => unreachable!("validated"),
    };
    Ok((TraceCode::new(ring, d).with_budget(config.budget), f))
}

pub fn build(config: &RunConfig) -> CliResult<String> {
    let (code, f) = construct(config)?;
    if config.codewords {
        return Ok(code.codeword_csv()?);
    }
    let enumerator = code.enumerate_weights()?;
    let analytic = code.analytic_weights()?;
    let gray = Part::from_result(gray_image(&code).map(|g| {
        let p = g.params();
        let griesmer = griesmer_for(p.length, p.distinct, p.min_distance);
        GrayReport {
            params: p,
            griesmer,
        }
    }))?;
    let residue = Part::from_result(residue_code(&code).and_then(|c| binary_params(&c)))?;
    let torsion = Part::from_result(torsion_code(&code).and_then(|c| binary_params(&c)))?;
    let report = BuildReport {
        schema: SCHEMA,
        command: "build",
        config: config.clone(),
        function: f.as_ref().map(|f| FunctionInfo {
            spec: config
                .function
                .as_ref()
                .map(|s| s.to_string())
                .unwrap_or_default(),
            hex: f.to_hex(),
            weight: f.weight(),
            class: f.classify().to_string(),
        }),
        m: code.m(),
        kind: code.kind().to_string(),
        n: code.len(),
        analytic_match: analytic == enumerator,
        enumerator,
        analytic,
        gray,
        residue,
        torsion,
    };
    match config.format {
        Format::Json => to_json(&report),
        Format::Csv => Ok(build_csv(&report)),
        Format::Text => Ok(build_text(&report)),
    }
}

fn build_csv(r: &BuildReport) -> String {
    let mut out = String::from("weight,enumerated,analytic\n");
    let weights: std::collections::BTreeSet<u64> = r
        .enumerator
        .counts()
        .keys()
        .chain(r.analytic.counts().keys())
        .copied()
        .collect();
    for w in weights {
        writeln!(out, "{w},{},{}", r.enumerator.get(w), r.analytic.get(w)).unwrap();
    }
    out
}

fn part_text<T>(p: &Part<T>, show: impl Fn(&T) -> String) -> String {
    match p {
        Part::Done(v) => show(v),
        Part::Skipped { skipped } => format!("skipped ({skipped})"),
    }
}

fn griesmer_text(g: &Option<GriesmerCheck>) -> String {
    match g {
        Some(g) => format!(
            "Griesmer bound for k={}, d={}: {} (meets: {})",
            g.k, g.d, g.bound, g.meets
        ),
        None => "Griesmer bound: n/a (size not a power of 2)".into(),
    }
}

fn linear_text(l: Option<bool>) -> &'static str {
    match l {
        Some(true) => "linear",
        Some(false) => "nonlinear",
        None => "linearity unknown",
    }
}

fn build_text(r: &BuildReport) -> String {
    let mut out = String::new();
    writeln!(out, "# {SCHEMA} build").unwrap();
    writeln!(out, "construction: {}, m = {}, n = {}", r.kind, r.m, r.n).unwrap();
    if let Some(f) = &r.function {
        writeln!(
            out,
            "f: {} (hex {}, weight {}, {})",
            f.spec, f.hex, f.weight, f.class
        )
        .unwrap();
    }
    if let Some(seed) = r.config.seed {
        writeln!(out, "skew set seed: {seed}").unwrap();
    }
    writeln!(out, "Lee weights (enumerated): {}", r.enumerator).unwrap();
    writeln!(out, "Lee weights (analytic):   {}", r.analytic).unwrap();
    writeln!(out, "analytic match: {}", r.analytic_match).unwrap();
    let gray = part_text(&r.gray, |g| {
        format!(
            "({}, {}, {}) with {} distinct words, {}; {}",
            g.params.length,
            g.params.nominal_size,
            g.params.min_distance,
            g.params.distinct,
            linear_text(g.params.linear),
            griesmer_text(&g.griesmer)
        )
    });
    writeln!(out, "Gray image: {gray}").unwrap();
    for (name, part) in [("residue", &r.residue), ("torsion", &r.torsion)] {
        let text = part_text(part, |p| {
            let k = p.k.map(|k| k.to_string()).unwrap_or_else(|| "?".into());
            format!(
                "[{}, {k}, {}] {}; {}",
                p.n,
                p.d,
                linear_text(p.linear),
                griesmer_text(&p.griesmer)
            )
        });
        writeln!(out, "{name} code: {text}").unwrap();
    }
    out
}

/// Reads a saved configuration; a usage error if the file is unreadable.
pub fn load_config(path: &std::path::Path) -> CliResult<RunConfig> {
    RunConfig::load(path).map_err(|e| match e {
        CliError::Io(io) => CliError::Usage(format!("cannot read {}: {io}", path.display())),
        CliError::Json(j) => CliError::Usage(format!("bad config {}: {j}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;
    use z4trace::trace_codes::Budget;

    fn config(m: u32, kind: Kind, f: Option<&str>, format: Format) -> RunConfig {
        RunConfig {
            m,
            kind,
            function: f.map(|s| s.parse().unwrap()),
            format,
            seed: None,
            budget: Budget::default(),
            codewords: false,
        }
    }

    #[test]
    fn poly_strings() {
        assert_eq!(poly_string(&[3, 1]), "x + 3");
        assert_eq!(poly_string(&[3, 1, 2, 1]), "x^3 + 2x^2 + x + 3");
        assert_eq!(poly_string(&bits_low_first(0b10011)), "x^4 + x + 1");
    }

    #[test]
    fn ring_info_m1_and_m2() {
        let t = ring_info(1, Format::Text, false).unwrap();
        assert!(t.contains("h(x) = x + 3"));
        assert!(t.contains("|T| = 2"));
        let v: Value = serde_json::from_str(&ring_info(2, Format::Json, true).unwrap()).unwrap();
        assert_eq!(v["units"], 12);
        assert_eq!(v["ideal"], 4);
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["teichmuller"]["entries"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn build_skew_m2() {
        let v: Value =
            serde_json::from_str(&build(&config(2, Kind::Skew, None, Format::Json)).unwrap())
                .unwrap();
        assert_eq!(v["enumerator"], json!([[0, 1], [6, 12], [8, 3]]));
        assert_eq!(v["analytic_match"], true);
        assert_eq!(v["gray"]["length"], 12);
        assert_eq!(v["gray"]["distinct"], 16);
        assert_eq!(v["gray"]["min_distance"], 6);
        assert_eq!(v["gray"]["griesmer"]["meets"], true);
        assert_eq!(v["torsion"]["griesmer"]["meets"], true);
    }

    #[test]
    fn build_affine_m4_gray() {
        let out = build(&config(
            4,
            Kind::Support,
            Some("affine:a=1,b=1"),
            Format::Json,
        ))
        .unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gray"]["length"], 16);
        assert_eq!(v["gray"]["nominal_size"], 256);
        assert_eq!(v["gray"]["min_distance"], 4);
    }

    #[test]
    fn build_bent_support_plus() {
        let out = build(&config(
            4,
            Kind::SupportPlus,
            Some("bent:auto"),
            Format::Json,
        ))
        .unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        let weights: Vec<u64> = v["enumerator"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p[0].as_u64().unwrap())
            .collect();
        assert_eq!(weights, vec![0, 64, 96, 128]);
        assert_eq!(v["function"]["class"], "bent");
    }

    #[test]
    fn build_formats_are_deterministic() {
        for format in [Format::Text, Format::Csv, Format::Json] {
            let c = RunConfig {
                seed: Some(3),
                ..config(3, Kind::Skew, None, format)
            };
            assert_eq!(build(&c).unwrap(), build(&c).unwrap());
        }
        let csv = build(&config(2, Kind::Skew, None, Format::Csv)).unwrap();
        assert_eq!(csv, "weight,enumerated,analytic\n0,1,1\n6,12,12\n8,3,3\n");
    }

    #[test]
    fn budget_errors_surface() {
        let c = RunConfig {
            budget: Budget::uniform(2),
            ..config(3, Kind::Skew, None, Format::Json)
        };
        let err = build(&c).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
