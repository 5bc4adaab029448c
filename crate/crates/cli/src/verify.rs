//! `verify` targets. Each target checks a disjoint group of claims and
//! records expected and computed values side by side.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use z4trace::binary_codes::{
    gray_image, gray_linear_by_z4_criterion, gray_map, griesmer_bound, hamming_weight, pack,
    simplex_replication_check, torsion_code,
};
use z4trace::boolfun::{
    q_form, q_form_element, q_function, search_quadratic, BooleanFunction, Classification,
    SearchTarget,
};
use z4trace::charsum::{gamma, gamma_one_reference, gamma_report};
use z4trace::gf2m::{BinaryField, FieldElement};
use z4trace::gr4m::{GaloisRing, RingElement};
use z4trace::trace_codes::{
    analytic_skew, analytic_support, analytic_support_plus, lee_weight, printed_skew_table, Budget,
    DefiningSet, TraceCode,
};

use crate::config::{CliError, CliResult, Format, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    CharsumIdentity,
    Gamma,
    ThmSupport,
    Rank,
    ThmSupportPlus,
    ThmSkew,
    GrayLinearity,
    Properties,
    All,
}

impl Target {
    pub const EACH: [Target; 8] = [
        Target::CharsumIdentity,
        Target::Gamma,
        Target::ThmSupport,
        Target::Rank,
        Target::ThmSupportPlus,
        Target::ThmSkew,
        Target::GrayLinearity,
        Target::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::CharsumIdentity => "charsum-identity",
            Target::Gamma => "gamma",
            Target::ThmSupport => "thm-support",
            Target::Rank => "rank",
            Target::ThmSupportPlus => "thm-support-plus",
            Target::ThmSkew => "thm-skew",
            Target::GrayLinearity => "gray-linearity",
            Target::Properties => "properties",
            Target::All => "all",
        }
    }

    /// Default range and the largest `m` accepted. Enumerating targets are
    /// further limited by the code budget.
    pub fn limits(self, budget: &Budget) -> (MRange, u32) {
        let r = |lo, hi| MRange { lo, hi };
        match self {
            Target::CharsumIdentity => (r(2, 5), 6),
            Target::Gamma => (r(2, 8), 10),
            Target::ThmSupport => (r(2, 5), budget.support),
            Target::Rank => (r(2, 12), 12),
            Target::ThmSupportPlus => (r(2, 5), budget.support_plus),
            Target::ThmSkew => (r(2, 5), budget.skew),
            Target::GrayLinearity => (r(2, 3), budget.skew.min(4)),
            Target::Properties => (r(1, 8), 8),
            Target::All => (r(1, 12), 12),
        }
    }
}

/// An inclusive range `lo..hi` of extension degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for MRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad m '{t}'"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if lo == 0 || lo > hi {
            return Err(format!("empty or invalid range '{s}'"));
        }
        Ok(MRange { lo, hi })
    }
}

impl MRange {
    fn iter(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    fn intersect(self, other: MRange) -> Option<MRange> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(MRange { lo, hi })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub expected: Value,
    pub computed: Value,
    /// `None` for recorded observations that assert nothing.
    pub pass: Option<bool>,
}

impl Claim {
    fn check(claim: impl Into<String>, m: Option<u32>, expected: Value, computed: Value) -> Self {
        let pass = Some(expected == computed);
        Claim {
            claim: claim.into(),
            m,
            expected,
            computed,
            pass,
        }
    }

    fn note(claim: impl Into<String>, m: Option<u32>, expected: Value, computed: Value) -> Self {
        Claim {
            claim: claim.into(),
            m,
            expected,
            computed,
            pass: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TargetReport {
    pub target: &'static str,
    pub m: MRange,
    pub pass: bool,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub pass: bool,
    pub targets: Vec<TargetReport>,
}

fn ring(m: u32) -> CliResult<Arc<GaloisRing>> {
    Ok(Arc::new(GaloisRing::new(m)?))
}

fn affine(r: &GaloisRing, b: bool) -> CliResult<BooleanFunction> {
    Ok(BooleanFunction::affine(
        Arc::clone(r.field()),
        FieldElement::ONE,
        b,
    )?)
}

fn plateaued(r: &GaloisRing) -> Option<BooleanFunction> {
    let target = if r.m().is_multiple_of(2) {
        SearchTarget::Bent
    } else {
        SearchTarget::SemiBent
    };
    search_quadratic(r.field(), target)
}

fn code(r: &Arc<GaloisRing>, d: DefiningSet, budget: Budget) -> TraceCode {
    TraceCode::new(Arc::clone(r), d).with_budget(budget)
}

fn test_functions(r: &GaloisRing) -> CliResult<Vec<(String, BooleanFunction)>> {
    let mut v = vec![
        ("affine:a=1,b=0".to_string(), affine(r, false)?),
        ("affine:a=1,b=1".to_string(), affine(r, true)?),
    ];
    if let Some(f) = plateaued(r) {
        let label = if r.m().is_multiple_of(2) {
            "bent:auto"
        } else {
            "semibent:auto"
        };
        v.push((label.to_string(), f));
    }
    Ok(v)
}

fn weights_json(e: &z4trace::trace_codes::LeeWeightEnumerator) -> Value {
    serde_json::to_value(e).expect("enumerator serializes")
}

fn charsum_identity(range: MRange, budget: Budget) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let r = ring(m)?;
        let mut codes = Vec::new();
        for (name, f) in test_functions(&r)? {
            codes.push((format!("support[{name}]"), DefiningSet::support(&r, &f)?));
            codes.push((
                format!("support-plus[{name}]"),
                DefiningSet::support_plus(&r, &f)?,
            ));
        }
        codes.push(("skew".into(), DefiningSet::skew(&r)));
        for (name, d) in codes {
            let c = code(&r, d, budget);
            c.check_budget()?;
            let bad: Vec<String> = r
                .elements()
                .collect::<Vec<_>>()
                .par_iter()
                .filter(|&&a| c.weight_via_charsum(a) != lee_weight(&c.codeword(a)) as i64)
                .map(|&a| r.format_element(a))
                .collect();
            claims.push(Claim::check(
                format!("n - Re chi(aD) equals the Lee weight of c_a for every a, {name}"),
                Some(m),
                json!([]),
                json!(bad),
            ));
        }
    }
    Ok(claims)
}

fn gamma_target(range: MRange) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let r = ring(m)?;
        claims.push(Claim::check(
            "Gamma(1) = (1+i)^m for odd m, -(1+i)^m for even m",
            Some(m),
            json!(gamma_one_reference(m).to_string()),
            json!(gamma(&r, RingElement::ONE).to_string()),
        ));
        let report = gamma_report(&r);
        claims.push(Claim::check(
            format!(
                "Gamma(r+2s) = i^(-Tr(s/r)) Gamma(1) on all {} units",
                report.checked
            ),
            Some(m),
            json!([]),
            json!(report.failures),
        ));
    }
    Ok(claims)
}

fn rank_target(range: MRange) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let field = Arc::new(BinaryField::new(m)?);
        let rank = q_function(field).quadratic_rank()?;
        claims.push(Claim::check(
            "rank of Q equals 2 floor(m/2)",
            Some(m),
            json!(2 * (m / 2)),
            json!(rank.rank),
        ));
    }
    Ok(claims)
}

fn thm_support(range: MRange, budget: Budget) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let r = ring(m)?;
        let mut funcs = test_functions(&r)?;
        if m % 2 == 0 && m >= 2 {
            let mm = BooleanFunction::maiorana_mcfarland(
                Arc::clone(r.field()),
                &(0..1u32 << (m / 2)).collect::<Vec<_>>(),
            )?;
            funcs.push(("mm:identity".into(), mm));
        }
        for (name, f) in &funcs {
            let c = code(&r, DefiningSet::support(&r, f)?, budget);
            claims.push(Claim::check(
                format!("support code of {name}: closed-form weights equal enumeration"),
                Some(m),
                weights_json(&analytic_support(&r, f)?),
                weights_json(&c.enumerate_weights()?),
            ));
        }
        if m == 4 || m == 5 {
            let f = affine(&r, true)?;
            let g = gray_image(&code(&r, DefiningSet::support(&r, &f)?, budget))?.params();
            let expected = if m == 4 {
                json!([16, 256, 4])
            } else {
                json!([32, 1024, 10])
            };
            claims.push(Claim::check(
                "Gray image of the tr(x)+1 support code has (length, 4^m, distance)",
                Some(m),
                expected,
                json!([g.length, g.nominal_size, g.min_distance]),
            ));
        }
        if m % 2 == 0 && m >= 4 {
            let f = search_quadratic(r.field(), SearchTarget::Bent)
                .ok_or_else(|| CliError::Usage(format!("no bent function for m = {m}")))?;
            let n_f = f.weight() as u64;
            let h = 1u64 << ((m - 2) / 2);
            let tor = torsion_code(&code(&r, DefiningSet::support(&r, &f)?, budget))?;
            let weights: BTreeSet<u64> = tor
                .weight_distribution()
                .nonzero_weights()
                .into_iter()
                .collect();
            claims.push(Claim::check(
                "torsion of a bent support code is [n_f, m, (n_f - 2^((m-2)/2))/2]",
                Some(m),
                json!([n_f, m, (n_f - h) / 2]),
                json!([tor.length(), tor.dimension(), tor.min_distance()?]),
            ));
            claims.push(Claim::check(
                "torsion weights of a bent support code are (n_f +- 2^((m-2)/2))/2",
                Some(m),
                json!([(n_f - h) / 2, (n_f + h) / 2]),
                json!(weights),
            ));
            if m == 4 {
                let sizes = bent_support_sizes(r.field())?;
                claims.push(Claim::note(
                    "a bent f with n_f = 8 at m = 4 (torsion distance 3) is not realizable",
                    Some(m),
                    json!({"n_f": 8, "d": 3}),
                    json!({"bent_support_sizes": sizes}),
                ));
            }
        }
    }
    Ok(claims)
}

fn bent_support_sizes(field: &Arc<BinaryField>) -> CliResult<Vec<usize>> {
    let mut sizes = BTreeSet::new();
    for i in 1..field.m() {
        for alpha in field.elements().skip(1) {
            let base = BooleanFunction::quadratic_monomial(Arc::clone(field), alpha, i)?;
            if base.classify() != Classification::Bent {
                continue;
            }
            for beta in field.elements() {
                for b in [false, true] {
                    let f = base.xor(&BooleanFunction::affine(Arc::clone(field), beta, b)?);
                    sizes.insert(f.weight());
                }
            }
        }
    }
    Ok(sizes.into_iter().collect())
}

fn thm_support_plus(range: MRange, budget: Budget) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let r = ring(m)?;
        for (name, f) in test_functions(&r)? {
            let c = code(&r, DefiningSet::support_plus(&r, &f)?, budget);
            let enumerated = c.enumerate_weights()?;
            claims.push(Claim::check(
                format!("support-plus code of {name}: closed-form weights equal enumeration"),
                Some(m),
                weights_json(&analytic_support_plus(&r, &f)?),
                weights_json(&enumerated),
            ));
            if m >= 4 && name.ends_with(":auto") {
                let base = (1u64 << m) * f.weight() as u64;
                let delta = if m % 2 == 0 {
                    1u64 << ((3 * m - 2) / 2)
                } else {
                    1u64 << ((3 * m - 1) / 2)
                };
                claims.push(Claim::check(
                    format!("{name} support-plus code has nonzero weights 2^m n_f and 2^m n_f +- {delta}"),
                    Some(m),
                    json!([base - delta, base, base + delta]),
                    json!(enumerated.nonzero_weights()),
                ));
            }
        }
    }
    Ok(claims)
}

fn thm_skew(range: MRange, budget: Budget) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let r = ring(m)?;
        let q = 1u64 << m;
        let canonical = code(&r, DefiningSet::skew(&r), budget);
        let enumerated = canonical.enumerate_weights()?;
        claims.push(Claim::check(
            "skew code weights {0:1, 2^(2m-1): 2^m-1, (2^m-1)2^(m-1): 2^(2m)-2^m}",
            Some(m),
            weights_json(&analytic_skew(&r)),
            weights_json(&enumerated),
        ));
        claims.push(Claim::check(
            "skew code has exactly two nonzero Lee weights",
            Some(m),
            json!([(q - 1) * q / 2, q * q / 2]),
            json!(enumerated.nonzero_weights()),
        ));
        let printed: Vec<(u64, u64)> = printed_skew_table(m).into_iter().collect();
        claims.push(Claim::check(
            "frequencies as printed in the source table do not match enumeration",
            Some(m),
            json!(true),
            json!(json!(printed) != weights_json(&enumerated)),
        ));
        let random_bad: Vec<u64> = (0..10u64)
            .filter(|&seed| {
                code(&r, DefiningSet::skew_random(&r, seed), budget)
                    .enumerate_weights()
                    .map(|e| e != enumerated)
                    .unwrap_or(true)
            })
            .collect();
        claims.push(Claim::check(
            "ten seeded random skew sets give the same distribution",
            Some(m),
            json!([]),
            json!(random_bad),
        ));
        if m <= 4 {
            let g = gray_image(&canonical)?.params();
            let d = q * q / 2 - q / 2;
            claims.push(Claim::check(
                "Gray image is a (2^(2m)-2^m, 2^(2m), 2^(2m-1)-2^(m-1)) code",
                Some(m),
                json!([q * q - q, q * q, d]),
                json!([g.length, g.distinct, g.min_distance]),
            ));
            claims.push(Claim::check(
                "Gray image length equals the Griesmer bound for k = 2m",
                Some(m),
                json!(griesmer_bound(2 * m, d, 2)),
                json!(g.length),
            ));
        }
        let tor = torsion_code(&canonical)?;
        claims.push(Claim::check(
            "torsion length equals griesmer_bound(m, 2^(2m-2), 2)",
            Some(m),
            json!(griesmer_bound(m, 1 << (2 * m - 2), 2)),
            json!(tor.length()),
        ));
        claims.push(Claim::check(
            "torsion code is a replicated simplex code",
            Some(m),
            json!(true),
            json!(simplex_replication_check(&tor, m)),
        ));
    }
    Ok(claims)
}

fn gray_linearity(range: MRange, budget: Budget) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let r = ring(m)?;
        let mut sets = vec![("canonical".to_string(), DefiningSet::skew(&r))];
        sets.extend((0..3).map(|s| (format!("seed {s}"), DefiningSet::skew_random(&r, s))));
        for (name, d) in sets {
            let c = code(&r, d, budget);
            let verdicts = || -> CliResult<(bool, bool)> {
                let direct = gray_image(&c)?.code.is_closed_under_xor();
                let z4 = gray_linear_by_z4_criterion(&c.codebook()?);
                Ok((direct, z4))
            };
            let first = verdicts()?;
            let second = verdicts()?;
            claims.push(Claim::check(
                format!("XOR closure and the Z4 criterion agree and repeat ({name} skew set)"),
                Some(m),
                json!({"direct": first.1, "z4": first.1, "repeat": true}),
                json!({"direct": first.0, "z4": first.1, "repeat": first == second}),
            ));
            claims.push(Claim::note(
                format!("Gray image linearity ({name} skew set)"),
                Some(m),
                Value::Null,
                json!(first.0),
            ));
        }
    }
    Ok(claims)
}

fn properties(range: MRange, budget: Budget) -> CliResult<Vec<Claim>> {
    let mut claims = Vec::new();
    for m in range.iter() {
        let r = ring(m)?;
        let field = r.field();
        let mut funcs = test_functions(&r)?;
        funcs.push(("Q".into(), q_function(Arc::clone(field))));
        let bad: Vec<String> = funcs
            .iter()
            .filter(|(_, f)| f.walsh_spectrum().sum_of_squares() != 1i64 << (2 * m))
            .map(|(n, _)| n.clone())
            .collect();
        claims.push(Claim::check(
            "Parseval: sum of W_f^2 = 4^m",
            Some(m),
            json!([]),
            json!(bad),
        ));
        let mut q_bad = Vec::new();
        let mut tr_bad = Vec::new();
        for &t in r.teichmuller_set() {
            let x = t.reduce();
            let qx = q_form_element(field, x);
            if qx.bits() > 1 || field.square(qx) != qx {
                q_bad.push(x.bits());
            }
            if r.trace(t) != (field.trace(x) + 2 * q_form(field, x)) & 3 {
                tr_bad.push(x.bits());
            }
        }
        claims.push(Claim::check(
            "Q(x) lies in GF(2) and Q(x)^2 = Q(x)",
            Some(m),
            json!([]),
            json!(q_bad),
        ));
        claims.push(Claim::check(
            "Tr(t) = tr(t) + 2Q(t) on the Teichmuller set",
            Some(m),
            json!([]),
            json!(tr_bad),
        ));
        if (2..=5).contains(&m) {
            let mut codes = vec![DefiningSet::skew(&r)];
            for (_, f) in test_functions(&r)? {
                codes.push(DefiningSet::support(&r, &f)?);
                codes.push(DefiningSet::support_plus(&r, &f)?);
            }
            let mut checked = 0usize;
            let mut broken = 0usize;
            for d in codes {
                for word in code(&r, d, budget).codebook()? {
                    checked += 1;
                    if hamming_weight(&pack(&gray_map(&word))) != lee_weight(&word) as u64 {
                        broken += 1;
                    }
                }
            }
            claims.push(Claim::check(
                format!("Gray map is an isometry on all {checked} constructed codewords"),
                Some(m),
                json!(0),
                json!(broken),
            ));
        }
    }
    Ok(claims)
}

fn run_target(target: Target, range: MRange, budget: Budget) -> CliResult<TargetReport> {
    let claims = match target {
        Target::CharsumIdentity => charsum_identity(range, budget)?,
        Target::Gamma => gamma_target(range)?,
        Target::ThmSupport => thm_support(range, budget)?,
        Target::Rank => rank_target(range)?,
        Target::ThmSupportPlus => thm_support_plus(range, budget)?,
        Target::ThmSkew => thm_skew(range, budget)?,
        Target::GrayLinearity => gray_linearity(range, budget)?,
        Target::Properties => properties(range, budget)?,
        Target::All => unreachable!("expanded by caller"),
    };
    Ok(TargetReport {
        target: target.name(),
        m: range,
        pass: claims.iter().all(|c| c.pass != Some(false)),
        claims,
    })
}

/// Runs one target, or every target in parallel for `all`. With `all`, a
/// given range is clipped to each target's own limits.
pub fn verify(target: Target, range: Option<MRange>, budget: Budget) -> CliResult<VerifyReport> {
    let jobs: Vec<(Target, MRange)> = if target == Target::All {
        Target::EACH
            .iter()
            .filter_map(|&t| {
                let (default, max) = t.limits(&budget);
                let wanted = range.unwrap_or(default);
                wanted
                    .intersect(MRange {
                        lo: default.lo.min(wanted.lo),
                        hi: max,
                    })
                    .map(|r| (t, r))
            })
            .collect()
    } else {
        let (default, max) = target.limits(&budget);
        let r = range.unwrap_or(default);
        if r.hi > max {
            return Err(CliError::Core(z4trace::Error::BudgetExceeded {
                kind: format!("verify {}", target.name()),
                m: r.hi,
                max_m: max,
            }));
        }
        vec![(target, r)]
    };
    let targets = jobs
        .par_iter()
        .map(|&(t, r)| run_target(t, r, budget))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(VerifyReport {
        schema: SCHEMA,
        command: "verify",
        pass: targets.iter().all(|t| t.pass),
        targets,
    })
}

pub fn render(report: &VerifyReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        Format::Text | Format::Csv => {
            let csv = format == Format::Csv;
            let mut out = String::new();
            if csv {
                out.push_str("target,m,verdict,claim,expected,computed\n");
            } else {
                writeln!(out, "# {SCHEMA} verify").unwrap();
            }
            for t in &report.targets {
                for c in &t.claims {
                    let verdict = match c.pass {
                        Some(true) => "PASS",
                        Some(false) => "FAIL",
                        None => "NOTE",
                    };
                    let m = c.m.map(|m| m.to_string()).unwrap_or_default();
                    if csv {
                        let q = |v: &Value| format!("\"{}\"", v.to_string().replace('"', "\"\""));
                        writeln!(
                            out,
                            "{},{m},{verdict},\"{}\",{},{}",
                            t.target,
                            c.claim,
                            q(&c.expected),
                            q(&c.computed)
                        )
                        .unwrap();
                    } else {
                        writeln!(
                            out,
                            "{verdict} {} m={m}: {} (expected {}, computed {})",
                            t.target, c.claim, c.expected, c.computed
                        )
                        .unwrap();
                    }
                }
            }
            if !csv {
                let verdict = if report.pass { "PASS" } else { "FAIL" };
                writeln!(out, "overall: {verdict}").unwrap();
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!("2..8".parse::<MRange>().unwrap(), MRange { lo: 2, hi: 8 });
        assert_eq!("2..=8".parse::<MRange>().unwrap(), MRange { lo: 2, hi: 8 });
        assert_eq!("5".parse::<MRange>().unwrap(), MRange { lo: 5, hi: 5 });
        assert!("0..3".parse::<MRange>().is_err());
        assert!("4..3".parse::<MRange>().is_err());
        assert!("a..3".parse::<MRange>().is_err());
    }

    #[test]
    fn small_targets_pass() {
        let b = Budget::default();
        let small = Some(MRange { lo: 2, hi: 3 });
        for t in [
            Target::CharsumIdentity,
            Target::Gamma,
            Target::Rank,
            Target::ThmSupportPlus,
            Target::ThmSkew,
            Target::GrayLinearity,
            Target::Properties,
        ] {
            let report = verify(t, small, b).unwrap();
            assert!(
                report.pass,
                "{t:?}: {}",
                render(&report, Format::Text).unwrap()
            );
        }
    }

    #[test]
    fn support_target_reports_the_m5_gray_claim() {
        let report = verify(
            Target::ThmSupport,
            Some(MRange { lo: 4, hi: 5 }),
            Budget::default(),
        )
        .unwrap();
        let failing: Vec<&Claim> = report.targets[0]
            .claims
            .iter()
            .filter(|c| c.pass == Some(false))
            .collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].m, Some(5));
        assert_eq!(failing[0].computed, json!([32, 1024, 12]));
        assert!(!report.pass);
    }

    #[test]
    fn over_budget_range_is_rejected() {
        let err = verify(
            Target::ThmSkew,
            Some(MRange { lo: 2, hi: 9 }),
            Budget::default(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
