//! Trace codes `C_D = {(Tr(a d_1), …, Tr(a d_n)) : a ∈ R}` over GR(4, m).
//!
//! Three defining-set families are built here: Teichmüller lifts of a Boolean
//! support, the support shifted by `2T`, and skew sets. Each code has an
//! exhaustive Lee weight enumerator and an analytic counterpart driven by
//! Walsh spectra and `Γ` sums.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::boolfun::{q_form, BooleanFunction};
use crate::charsum::{chi_sum_scaled, gamma_closed_form};
use crate::error::{Error, Result};
use crate::gf2m::FieldElement;
use crate::gr4m::{GaloisRing, RingElement, Z4Functional};

/// Lee weight of a Z4 symbol.
pub const LEE: [u32; 4] = [0, 1, 2, 1];

/// Environment variable that raises or lowers every enumeration cap at once.
pub const BUDGET_ENV: &str = "Z4TRACE_MAX_M";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefiningSetKind {
    Support,
    SupportPlus,
    Skew,
    Custom,
}

impl DefiningSetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DefiningSetKind::Support => "support",
            DefiningSetKind::SupportPlus => "support-plus",
            DefiningSetKind::Skew => "skew",
            DefiningSetKind::Custom => "custom",
        }
    }
}

impl fmt::Display for DefiningSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for DefiningSetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "support" => Ok(DefiningSetKind::Support),
            "support-plus" | "support_plus" | "support_plus_2t" => Ok(DefiningSetKind::SupportPlus),
            "skew" => Ok(DefiningSetKind::Skew),
            "custom" => Ok(DefiningSetKind::Custom),
            other => Err(Error::Parse(format!("unknown construction '{other}'"))),
        }
    }
}

/// Largest `m` each construction may enumerate exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub support: u32,
    pub support_plus: u32,
    pub skew: u32,
    pub custom: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            support: 8,
            support_plus: 8,
            skew: 6,
            custom: 6,
        }
    }
}

impl Budget {
    pub fn uniform(max_m: u32) -> Self {
        Budget {
            support: max_m,
            support_plus: max_m,
            skew: max_m,
            custom: max_m,
        }
    }

    /// The default caps, or a uniform cap taken from [`BUDGET_ENV`].
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u32>()
                .map(Budget::uniform)
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v} is not an integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn cap(&self, kind: DefiningSetKind) -> u32 {
        match kind {
            DefiningSetKind::Support => self.support,
            DefiningSetKind::SupportPlus => self.support_plus,
            DefiningSetKind::Skew => self.skew,
            DefiningSetKind::Custom => self.custom,
        }
    }

    pub fn check(&self, kind: DefiningSetKind, m: u32) -> Result<()> {
        let max_m = self.cap(kind);
        if m > max_m {
            return Err(Error::BudgetExceeded {
                kind: kind.to_string(),
                m,
                max_m,
            });
        }
        Ok(())
    }
}

/// An ordered defining set together with how it was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    elements: Vec<RingElement>,
    kind: DefiningSetKind,
    source: Option<BooleanFunction>,
}

impl DefiningSet {
    /// Teichmüller lifts of the support of `f`, by Teichmüller exponent. When
    /// `f(0) = 1` the lift of 0 is the first element; it contributes a zero
    /// coordinate to every codeword.
    pub fn support(ring: &GaloisRing, f: &BooleanFunction) -> Result<Self> {
        check_dims(ring, f)?;
        let elements: Vec<RingElement> = ring
            .teichmuller_set()
            .iter()
            .copied()
            .filter(|t| f.eval(t.reduce()))
            .collect();
        if elements.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(DefiningSet {
            elements,
            kind: DefiningSetKind::Support,
            source: Some(f.clone()),
        })
    }

    /// `{x + 2y : x ∈ S̄_f, y ∈ T}`, lexicographic in `(x, y)`.
    pub fn support_plus(ring: &GaloisRing, f: &BooleanFunction) -> Result<Self> {
        let base = Self::support(ring, f)?;
        let elements = base
            .elements
            .iter()
            .flat_map(|&x| ring.teichmuller_set().iter().map(move |&y| x + y.double()))
            .collect();
        Ok(DefiningSet {
            elements,
            kind: DefiningSetKind::SupportPlus,
            source: base.source,
        })
    }

    /// The canonical skew set: the lexicographically smaller member of each
    /// unit pair `{u, -u}`, listed in that same order.
    pub fn skew(ring: &GaloisRing) -> Self {
        DefiningSet {
            elements: skew_pairs(ring),
            kind: DefiningSetKind::Skew,
            source: None,
        }
    }

    /// A skew set with each pair's member drawn from a seeded ChaCha stream.
    pub fn skew_random(ring: &GaloisRing, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let elements = skew_pairs(ring)
            .into_iter()
            .map(|u| if rng.gen::<bool>() { -u } else { u })
            .collect();
        DefiningSet {
            elements,
            kind: DefiningSetKind::Skew,
            source: None,
        }
    }

    pub fn custom(elements: Vec<RingElement>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &e in &elements {
            if e.is_zero() {
                return Err(Error::InvalidArgument("defining set contains 0".into()));
            }
            if !seen.insert(e) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate defining-set element {e:?}"
                )));
            }
        }
        Ok(DefiningSet {
            elements,
            kind: DefiningSetKind::Custom,
            source: None,
        })
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn kind(&self) -> DefiningSetKind {
        self.kind
    }

    pub fn source(&self) -> Option<&BooleanFunction> {
        self.source.as_ref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_dims(ring: &GaloisRing, f: &BooleanFunction) -> Result<()> {
    if f.m() != ring.m() {
        return Err(Error::DimensionMismatch {
            expected: ring.m() as usize,
            actual: f.m() as usize,
        });
    }
    Ok(())
}

fn skew_pairs(ring: &GaloisRing) -> Vec<RingElement> {
    let m = ring.m();
    let mut reps: Vec<RingElement> = ring
        .elements()
        .filter(|u| u.is_unit() && u.cmp_coeffs(-*u, m).is_lt())
        .collect();
    reps.sort_by(|a, b| a.cmp_coeffs(*b, m));
    reps
}

/// Whether `D`, `-D` and `2R` partition the ring.
pub fn is_skew_partition(ring: &GaloisRing, d: &[RingElement]) -> bool {
    let mut seen = vec![false; ring.size()];
    let mut mark = |c: RingElement| {
        let i = c.index(ring.m());
        !std::mem::replace(&mut seen[i], true)
    };
    for &x in d {
        if !mark(x) || !mark(-x) {
            return false;
        }
    }
    for c in ring.enumerate(crate::gr4m::Subset::Ideal) {
        if !mark(c) {
            return false;
        }
    }
    seen.iter().all(|&s| s)
}

/// `(N0, N1, N2, N3)` for a Z4 vector.
pub fn symbol_counts(v: &[u8]) -> [usize; 4] {
    let mut n = [0usize; 4];
    for &s in v {
        n[(s & 3) as usize] += 1;
    }
    n
}

pub fn lee_weight(v: &[u8]) -> u32 {
    v.iter().map(|&s| LEE[(s & 3) as usize]).sum()
}

/// Exact Lee weight distribution counted over every `a ∈ R`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(from = "Vec<(u64, u64)>")]
pub struct LeeWeightEnumerator {
    counts: BTreeMap<u64, u64>,
}

impl From<Vec<(u64, u64)>> for LeeWeightEnumerator {
    fn from(pairs: Vec<(u64, u64)>) -> Self {
        let mut e = LeeWeightEnumerator::default();
        for (w, f) in pairs {
            e.add(w, f);
        }
        e
    }
}

impl Serialize for LeeWeightEnumerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.counts.iter())
    }
}

impl LeeWeightEnumerator {
    pub fn from_counts(counts: BTreeMap<u64, u64>) -> Self {
        let mut e = LeeWeightEnumerator::default();
        for (w, f) in counts {
            e.add(w, f);
        }
        e
    }

    pub fn add(&mut self, weight: u64, freq: u64) {
        if freq > 0 {
            *self.counts.entry(weight).or_insert(0) += freq;
        }
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn get(&self, weight: u64) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_nonzero(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }
}

impl fmt::Display for LeeWeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A trace code over a fixed ring.
#[derive(Debug, Clone)]
pub struct TraceCode {
    ring: Arc<GaloisRing>,
    defining_set: DefiningSet,
    forms: Vec<Z4Functional>,
    budget: Budget,
}

impl TraceCode {
    pub fn new(ring: Arc<GaloisRing>, defining_set: DefiningSet) -> Self {
        let forms = defining_set
            .elements
            .iter()
            .map(|&d| ring.trace_form(d))
            .collect();
        TraceCode {
            ring,
            defining_set,
            forms,
            budget: Budget::default(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn m(&self) -> u32 {
        self.ring.m()
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    pub fn kind(&self) -> DefiningSetKind {
        self.defining_set.kind
    }

    pub fn len(&self) -> usize {
        self.defining_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defining_set.is_empty()
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn check_budget(&self) -> Result<()> {
        self.budget.check(self.kind(), self.m())
    }

    /// `c_a = (Tr(a d_i))_i`.
    pub fn codeword(&self, a: RingElement) -> Vec<u8> {
        self.forms.iter().map(|t| t.eval(a)).collect()
    }

    /// `w_L(c_a)` without materializing the codeword.
    pub fn lee_weight_of(&self, a: RingElement) -> u32 {
        self.forms.iter().map(|t| LEE[t.eval(a) as usize]).sum()
    }

    /// `n - Re χ(aD)`, through ring products and the character.
    pub fn weight_via_charsum(&self, a: RingElement) -> i64 {
        let n = self.len() as i64;
        n - chi_sum_scaled(&self.ring, a, &self.defining_set.elements).re
    }

    /// Codewords for every `a ∈ R` in dense index order.
    pub fn codebook(&self) -> Result<Vec<Vec<u8>>> {
        self.check_budget()?;
        let m = self.m();
        Ok((0..self.ring.size())
            .into_par_iter()
            .map(|i| self.codeword(RingElement::from_index(m, i)))
            .collect())
    }

    pub fn enumerate_weights(&self) -> Result<LeeWeightEnumerator> {
        self.check_budget()?;
        let m = self.m();
        let top = 2 * self.len() + 1;
        let hist = (0..self.ring.size())
            .into_par_iter()
            .fold(
                || vec![0u64; top],
                |mut h, i| {
                    h[self.lee_weight_of(RingElement::from_index(m, i)) as usize] += 1;
                    h
                },
            )
            .reduce(
                || vec![0u64; top],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        let mut e = LeeWeightEnumerator::default();
        for (w, &f) in hist.iter().enumerate() {
            e.add(w as u64, f);
        }
        Ok(e)
    }

    /// The closed-form enumerator matching this code's construction.
    pub fn analytic_weights(&self) -> Result<LeeWeightEnumerator> {
        match (self.kind(), self.defining_set.source()) {
            (DefiningSetKind::Support, Some(f)) => analytic_support(&self.ring, f),
            (DefiningSetKind::SupportPlus, Some(f)) => analytic_support_plus(&self.ring, f),
            (DefiningSetKind::Skew, _) => Ok(analytic_skew(&self.ring)),
            (kind, _) => Err(Error::InvalidArgument(format!(
                "no closed form for {kind} codes"
            ))),
        }
    }

    /// `{m, kind, n, enumerator, analytic_match}`.
    pub fn report(&self) -> Result<CodeReport> {
        let enumerator = self.enumerate_weights()?;
        let analytic_match = match self.analytic_weights() {
            Ok(a) => Some(a == enumerator),
            Err(Error::InvalidArgument(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(CodeReport {
            m: self.m(),
            kind: self.kind(),
            n: self.len(),
            enumerator,
            analytic_match,
        })
    }

    /// `a,codeword,lee_weight` rows over all of `R`; digits are written low
    /// degree first for `a`. Limited to m ≤ 3.
    pub fn codeword_csv(&self) -> Result<String> {
        if self.m() > 3 {
            return Err(Error::BudgetExceeded {
                kind: "codeword listing".into(),
                m: self.m(),
                max_m: 3,
            });
        }
        let digits = |v: &[u8]| v.iter().map(|d| char::from(b'0' + d)).collect::<String>();
        let mut out = String::from("a,codeword,lee_weight\n");
        for a in self.ring.elements() {
            let c = self.codeword(a);
            out.push_str(&format!(
                "{},{},{}\n",
                digits(&a.coeffs(self.m())),
                digits(&c),
                lee_weight(&c)
            ));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub m: u32,
    pub kind: DefiningSetKind,
    pub n: usize,
    pub enumerator: LeeWeightEnumerator,
    pub analytic_match: Option<bool>,
}

fn exact_div(num: i64, den: i64, what: &str) -> Result<u64> {
    if num < 0 || num % den != 0 {
        return Err(Error::VerificationFailed {
            witness: format!("{what}: {num}/{den} is not a non-negative integer"),
        });
    }
    Ok((num / den) as u64)
}

/// Weights of the support code from Walsh spectra and `Γ`:
/// `w = 2s` gives `(2n + W_f(s̄))/2`; a unit `w = r + 2s` gives
/// `(4n - 2 Re Γ(w) + W_{f_r}(s̄) + W_{f_r}(r̄ + s̄))/4` with
/// `f_r(x) = f(x) + Q(r̄ x)`.
pub fn analytic_support(ring: &GaloisRing, f: &BooleanFunction) -> Result<LeeWeightEnumerator> {
    check_dims(ring, f)?;
    let n = f.weight() as i64;
    if n == 0 {
        return Err(Error::EmptySupport);
    }
    let field = Arc::clone(ring.field());
    let spectrum = f.walsh_spectrum();
    let mut e = LeeWeightEnumerator::default();
    e.add(0, 1);
    for s in field.elements().skip(1) {
        e.add(exact_div(2 * n + spectrum.at(s), 2, "ideal weight")?, 1);
    }
    for r in field.elements().skip(1) {
        let f_r = BooleanFunction::from_fn(Arc::clone(&field), |x| {
            f.eval(x) ^ (q_form(&field, field.mul(r, x)) == 1)
        });
        let spec_r = f_r.walsh_spectrum();
        let r_lift = ring.lift(r);
        for s in field.elements() {
            let w = r_lift + ring.lift(s).double();
            let gamma = gamma_closed_form(ring, w).expect("unit");
            let num = 4 * n - 2 * gamma.re + spec_r.at(s) + spec_r.at(r + s);
            e.add(exact_div(num, 4, "unit weight")?, 1);
        }
    }
    Ok(e)
}

/// Weights of the support-plus code: 0 once, `2^m n_f` on every unit and
/// `2^m n_f + 2^(m-1) W_f(s̄)` on `w = 2s ≠ 0`.
pub fn analytic_support_plus(
    ring: &GaloisRing,
    f: &BooleanFunction,
) -> Result<LeeWeightEnumerator> {
    check_dims(ring, f)?;
    let n_f = f.weight() as i64;
    if n_f == 0 {
        return Err(Error::EmptySupport);
    }
    let q = 1i64 << ring.m();
    let spectrum = f.walsh_spectrum();
    let mut e = LeeWeightEnumerator::default();
    e.add(0, 1);
    e.add((q * n_f) as u64, ((q - 1) * q) as u64);
    for s in ring.field().elements().skip(1) {
        let num = q * n_f + (q / 2) * spectrum.at(s);
        e.add(exact_div(num, 1, "ideal weight")?, 1);
    }
    Ok(e)
}

/// `{0: 1, 2^(2m-1): 2^m - 1, (2^m - 1) 2^(m-1): 2^(2m) - 2^m}`.
pub fn analytic_skew(ring: &GaloisRing) -> LeeWeightEnumerator {
    let q = 1u64 << ring.m();
    let mut e = LeeWeightEnumerator::default();
    e.add(0, 1);
    e.add(q * q / 2, q - 1);
    e.add((q - 1) * q / 2, q * q - q);
    e
}

/// The skew weight table with the frequencies exactly as printed in the
/// source table: `2^(4m) - 1` for `2^(2m-1)` and `2^m - 1` for
/// `(2^m - 1) 2^(m-1)`. Its mass is not `4^m`; kept for reporting the gap.
pub fn printed_skew_table(m: u32) -> BTreeMap<u64, u64> {
    let q = 1u64 << m;
    BTreeMap::from([(0, 1), (q * q / 2, q.pow(4) - 1), ((q - 1) * q / 2, q - 1)])
}

/// Mod-2 images of a Teichmüller-lifted set.
pub fn residues(d: &[RingElement]) -> Vec<FieldElement> {
    d.iter().map(|x| x.reduce()).collect()
}
