//! Additive character sums over GR(4, m) in exact Gaussian integers.
//!
//! The canonical character is `χ(c) = i^Tr(c)`. Sums of it over defining
//! sets give Lee weights, and sums over the Teichmüller set (`Γ`) have the
//! closed form `Γ(r + 2s) = i^(-Tr(s/r)) Γ(1)` with `Γ(1) = ±(1 + i)^m`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::Serialize;

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gr4m::{GaloisRing, RingElement, Z4Functional};

/// `re + im·i` with integer parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    /// `i^k`, period 4 (negative exponents allowed).
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = GaussInt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(self, k: i64) -> Self {
        GaussInt::new(self.re * k, self.im * k)
    }

    /// Exact division by an integer, `None` unless both parts divide.
    pub fn div_exact(self, k: i64) -> Option<Self> {
        (k != 0 && self.re % k == 0 && self.im % k == 0)
            .then(|| GaussInt::new(self.re / k, self.im / k))
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, rhs: GaussInt) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl std::iter::Sum for GaussInt {
    fn sum<I: Iterator<Item = GaussInt>>(iter: I) -> GaussInt {
        iter.fold(GaussInt::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// Counts of a Z4 exponent histogram turned into `Σ i^k`.
fn sum_powers(counts: [i64; 4]) -> GaussInt {
    GaussInt::new(counts[0] - counts[2], counts[1] - counts[3])
}

/// `χ(c) = i^Tr(c)`.
pub fn chi(ring: &GaloisRing, c: RingElement) -> GaussInt {
    GaussInt::i_pow(ring.trace(c) as i64)
}

/// `Σ_{x ∈ S} χ(x)`.
pub fn chi_sum(ring: &GaloisRing, set: impl IntoIterator<Item = RingElement>) -> GaussInt {
    let mut counts = [0i64; 4];
    for x in set {
        counts[ring.trace(x) as usize] += 1;
    }
    sum_powers(counts)
}

/// `χ(b·S) = Σ_{x ∈ S} χ(b x)`, computed with ring multiplications.
pub fn chi_sum_scaled(ring: &GaloisRing, b: RingElement, set: &[RingElement]) -> GaussInt {
    chi_sum(ring, set.iter().map(|&x| ring.mul(b, x)))
}

/// `Γ(w) = Σ_{x ∈ T} i^Tr(w x)`.
pub fn gamma(ring: &GaloisRing, w: RingElement) -> GaussInt {
    chi_sum_scaled(ring, w, ring.teichmuller_set())
}

/// `Γ(1)` in closed form: `(1 + i)^m` for odd m, `-(1 + i)^m` for even
/// m. (`√(2^m) ε^m = (1 + i)^m` with `ε = (1 + i)/√2`.)
pub fn gamma_one_reference(m: u32) -> GaussInt {
    let p = GaussInt::new(1, 1).pow(m);
    if m % 2 == 1 {
        p
    } else {
        -p
    }
}

/// `i^(-Tr(s/r)) Γ(1)` for a unit `w = r + 2s`; `None` when `w` is not a unit.
/// `s/r` is the Teichmüller element over `s̄ r̄^(-1)`.
pub fn gamma_closed_form(ring: &GaloisRing, w: RingElement) -> Option<GaussInt> {
    if !w.is_unit() {
        return None;
    }
    let parts = ring.two_adic_decompose(w);
    let field = ring.field();
    let quotient = field.div(parts.b.reduce(), parts.a.reduce()).ok()?;
    let exponent = -(ring.trace(ring.lift(quotient)) as i64);
    Some(GaussInt::i_pow(exponent) * gamma_one_reference(ring.m()))
}

/// Precomputed `x -> Tr(w x)` functionals for every Teichmüller `x`, so that
/// `Γ(w)` costs `2^m` popcounts.
#[derive(Debug, Clone)]
pub struct GammaTable {
    forms: Vec<Z4Functional>,
}

impl GammaTable {
    pub fn new(ring: &GaloisRing) -> Self {
        GammaTable {
            forms: ring
                .teichmuller_set()
                .iter()
                .map(|&x| ring.trace_form(x))
                .collect(),
        }
    }

    pub fn gamma(&self, w: RingElement) -> GaussInt {
        let mut counts = [0i64; 4];
        for form in &self.forms {
            counts[form.eval(w) as usize] += 1;
        }
        sum_powers(counts)
    }
}

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub m: u32,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.failures.first() {
            Some(w) => Err(Error::VerificationFailed { witness: w.clone() }),
            None => Ok(self),
        }
    }
}

/// Checks `Γ(w) = i^(-Tr(s/r)) Γ(1)` for every unit `w` and that `Γ(1)`
/// itself equals `±(1 + i)^m`. Failures are listed by witness.
pub fn gamma_report(ring: &GaloisRing) -> VerifyReport {
    let table = GammaTable::new(ring);
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let g1 = table.gamma(RingElement::ONE);
    if g1 != gamma_one_reference(ring.m()) {
        failures.push(format!("Γ(1) = {g1}"));
    }
    for w in ring.elements().filter(|w| w.is_unit()) {
        checked += 1;
        let direct = table.gamma(w);
        let closed = gamma_closed_form(ring, w).expect("unit");
        if direct != closed {
            failures.push(ring.format_element(w));
        }
    }
    VerifyReport {
        m: ring.m(),
        checked,
        failures,
    }
}

/// [`gamma_report`], failing with the first witness.
pub fn verify_gamma_closed_form(ring: &GaloisRing) -> Result<VerifyReport> {
    gamma_report(ring).into_result()
}

/// `f̂(w) = 2^(-m) Σ_{x ∈ R} i^(2 f(x̄) + Tr(w x))`. The sum is always divisible
/// by `2^m`.
pub fn f_hat(ring: &GaloisRing, f: &BooleanFunction, w: RingElement) -> Result<GaussInt> {
    if f.m() != ring.m() {
        return Err(Error::DimensionMismatch {
            expected: ring.m() as usize,
            actual: f.m() as usize,
        });
    }
    let form = ring.trace_form(w);
    let mut counts = [0i64; 4];
    for x in ring.elements() {
        let k = 2 * f.eval(x.reduce()) as u8 + form.eval(x);
        counts[(k & 3) as usize] += 1;
    }
    let total = sum_powers(counts);
    total
        .div_exact(1i64 << ring.m())
        .ok_or_else(|| Error::VerificationFailed {
            witness: format!("f_hat sum {total} at w = {}", ring.format_element(w)),
        })
}
