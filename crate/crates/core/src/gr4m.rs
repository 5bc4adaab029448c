//! The Galois ring GR(4, m) = Z4[x] / (h(x)), with h the Hensel lift of the
//! field's primitive polynomial.
//!
//! An element `c0 + c1 ξ + ... + c_{m-1} ξ^{m-1}` with `cj ∈ Z4` is stored as
//! two bit-planes, `lo` (bit j = cj mod 2) and `hi` (bit j = cj div 2). The
//! mod-2 reduction of an element is then just `lo` read as a field element,
//! because ξ reduces to the class of x in GF(2^m) = GF(2)[x] / (h mod 2).

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2m::{BinaryField, FieldElement, MAX_DEGREE};

/// An element of GR(4, m) in the polynomial basis of ξ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RingElement {
    lo: u32,
    hi: u32,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { lo: 0, hi: 0 };
    pub const ONE: RingElement = RingElement { lo: 1, hi: 0 };
    pub const TWO: RingElement = RingElement { lo: 0, hi: 1 };

    pub const fn from_planes(lo: u32, hi: u32) -> Self {
        RingElement { lo, hi }
    }

    pub const fn lo(self) -> u32 {
        self.lo
    }

    pub const fn hi(self) -> u32 {
        self.hi
    }

    /// Builds an element from its Z4 coefficients, low degree first.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut c = RingElement::ZERO;
        for (j, &d) in coeffs.iter().enumerate() {
            c.lo |= ((d & 1) as u32) << j;
            c.hi |= (((d >> 1) & 1) as u32) << j;
        }
        c
    }

    /// Z4 coefficients, low degree first.
    pub fn coeffs(self, m: u32) -> Vec<u8> {
        (0..m).map(|j| self.coeff(j)).collect()
    }

    pub fn coeff(self, j: u32) -> u8 {
        (((self.lo >> j) & 1) | (((self.hi >> j) & 1) << 1)) as u8
    }

    /// Dense index in `0..4^m`: `lo | hi << m`.
    pub fn index(self, m: u32) -> usize {
        (self.lo | (self.hi << m)) as usize
    }

    pub fn from_index(m: u32, index: usize) -> Self {
        let mask = (1u32 << m) - 1;
        RingElement {
            lo: index as u32 & mask,
            hi: (index as u32 >> m) & mask,
        }
    }

    /// `c mod 2` as an element of the residue field.
    pub const fn reduce(self) -> FieldElement {
        FieldElement::new(self.lo)
    }

    pub const fn is_zero(self) -> bool {
        self.lo == 0 && self.hi == 0
    }

    /// Units are exactly the elements outside the maximal ideal 2R.
    pub const fn is_unit(self) -> bool {
        self.lo != 0
    }

    pub const fn double(self) -> Self {
        RingElement { lo: 0, hi: self.lo }
    }

    /// `2·lift(y)`; only the residue of the lifted element matters.
    pub const fn twice_lift(y: FieldElement) -> Self {
        RingElement {
            lo: 0,
            hi: y.bits(),
        }
    }

    pub fn scale(self, k: u8) -> Self {
        match k & 3 {
            0 => RingElement::ZERO,
            1 => self,
            2 => self.double(),
            _ => -self,
        }
    }

    /// Lexicographic comparison of coefficient vectors, low degree first.
    pub fn cmp_coeffs(self, other: RingElement, m: u32) -> std::cmp::Ordering {
        for j in 0..m {
            let ord = self.coeff(j).cmp(&other.coeff(j));
            if ord.is_ne() {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl Add for RingElement {
    type Output = RingElement;

    fn add(self, rhs: RingElement) -> RingElement {
        RingElement {
            lo: self.lo ^ rhs.lo,
            hi: self.hi ^ rhs.hi ^ (self.lo & rhs.lo),
        }
    }
}

impl AddAssign for RingElement {
    fn add_assign(&mut self, rhs: RingElement) {
        *self = *self + rhs;
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement {
            lo: self.lo,
            hi: self.hi ^ self.lo,
        }
    }
}

impl Sub for RingElement {
    type Output = RingElement;

    fn sub(self, rhs: RingElement) -> RingElement {
        self + (-rhs)
    }
}

/// A Z4-linear functional `R -> Z4` stored as a coefficient vector in the
/// same bit-plane layout; `eval(a) = Σ aj tj mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Z4Functional {
    lo: u32,
    hi: u32,
}

impl Z4Functional {
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let c = RingElement::from_coeffs(coeffs);
        Z4Functional { lo: c.lo, hi: c.hi }
    }

    #[inline]
    pub fn eval(self, a: RingElement) -> u8 {
        let ones = (a.lo & self.lo).count_ones();
        let twos = ((a.lo & self.hi) ^ (a.hi & self.lo)).count_ones();
        ((ones + 2 * twos) & 3) as u8
    }
}

/// `c = a + 2b` with `a, b` in the Teichmüller set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoAdic {
    pub a: RingElement,
    pub b: RingElement,
}

impl TwoAdic {
    pub fn recompose(self) -> RingElement {
        self.a + self.b.double()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subset {
    All,
    Units,
    Ideal,
}

/// Lifts a primitive binary polynomial to the basic primitive polynomial over
/// Z4 with `h(x^2) = ±f(x) f(-x)`, sign chosen so that `h` is monic.
///
/// `f` is a bit vector (bit i = coefficient of x^i); the result lists the
/// m+1 coefficients of `h`, low degree first.
pub fn graeffe_lift(f: u32) -> Result<Vec<u8>> {
    if f < 2 {
        return Err(Error::NotPrimitive { m: 0, poly: f });
    }
    let m = 31 - f.leading_zeros();
    BinaryField::with_poly(m, f)?;

    // f(x) = e(x^2) + x o(x^2), so f(x) f(-x) = e(x^2)^2 - x^2 o(x^2)^2.
    let bit = |i: u32| ((f >> i) & 1) as i32;
    let even: Vec<i32> = (0..=m).step_by(2).map(bit).collect();
    let odd: Vec<i32> = (1..=m).step_by(2).map(bit).collect();
    let square = |p: &[i32]| {
        let mut out = vec![0i32; (2 * p.len()).saturating_sub(1).max(1)];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in p.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let mut h = vec![0i32; m as usize + 1];
    for (i, c) in square(&even).into_iter().enumerate() {
        if i <= m as usize {
            h[i] += c;
        }
    }
    if !odd.is_empty() {
        for (i, c) in square(&odd).into_iter().enumerate() {
            if i < m as usize {
                h[i + 1] -= c;
            }
        }
    }
    if m % 2 == 1 {
        h.iter_mut().for_each(|c| *c = -*c);
    }
    let h: Vec<u8> = h.into_iter().map(|c| c.rem_euclid(4) as u8).collect();
    debug_assert_eq!(h[m as usize], 1);
    Ok(h)
}

/// GR(4, m) together with its Teichmüller set and trace.
#[derive(Debug, Clone)]
pub struct GaloisRing {
    m: u32,
    field: Arc<BinaryField>,
    basic_poly: Vec<u8>,
    /// `-h_j mod 4` for j < m, used when reducing x^m.
    neg_low: Vec<u32>,
    /// `[0, 1, ξ, ..., ξ^(2^m - 2)]`.
    teichmuller: Vec<RingElement>,
    /// Teichmüller lift of each field element, indexed by field bits.
    lift: Vec<RingElement>,
    trace_form: Z4Functional,
}

impl GaloisRing {
    /// GR(4, m) over the built-in GF(2^m).
    pub fn new(m: u32) -> Result<Self> {
        Self::from_field(Arc::new(BinaryField::new(m)?))
    }

    pub fn from_field(field: Arc<BinaryField>) -> Result<Self> {
        let m = field.m();
        let basic_poly = graeffe_lift(field.primitive_poly())?;
        let neg_low = basic_poly[..m as usize]
            .iter()
            .map(|&c| (4 - c as u32) & 3)
            .collect();
        let mut ring = GaloisRing {
            m,
            field,
            basic_poly,
            neg_low,
            teichmuller: Vec::new(),
            lift: Vec::new(),
            trace_form: Z4Functional::default(),
        };

        let group = (1usize << m) - 1;
        let mut teich = Vec::with_capacity(group + 1);
        teich.push(RingElement::ZERO);
        let mut t = RingElement::ONE;
        for k in 0..group {
            if k > 0 && t == RingElement::ONE {
                return Err(Error::NotPrimitive {
                    m,
                    poly: ring.field.primitive_poly(),
                });
            }
            teich.push(t);
            t = ring.mul_by_xi(t);
        }
        if t != RingElement::ONE {
            return Err(Error::NotPrimitive {
                m,
                poly: ring.field.primitive_poly(),
            });
        }
        let mut lift = vec![RingElement::ZERO; 1 << m];
        for &t in &teich {
            lift[t.reduce().index()] = t;
        }
        ring.teichmuller = teich;
        ring.lift = lift;

        let basis: Vec<u8> = (0..m)
            .map(|j| ring.trace_by_frobenius(RingElement::from_planes(1 << j, 0)))
            .collect();
        ring.trace_form = Z4Functional::from_coeffs(&basis);
        Ok(ring)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &Arc<BinaryField> {
        &self.field
    }

    /// Coefficients of the basic primitive polynomial, low degree first.
    pub fn basic_poly(&self) -> &[u8] {
        &self.basic_poly
    }

    /// Number of elements, 4^m.
    pub fn size(&self) -> usize {
        1usize << (2 * self.m)
    }

    /// ξ, the root of the basic primitive polynomial.
    pub fn xi(&self) -> RingElement {
        self.teichmuller[2.min(self.teichmuller.len() - 1)]
    }

    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        a + b
    }

    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        let m = self.m as usize;
        let mut prod = [0u32; 2 * MAX_DEGREE as usize];
        for i in 0..m {
            let ai = a.coeff(i as u32) as u32;
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += ai * b.coeff(j as u32) as u32;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k] & 3;
            if c != 0 {
                for j in 0..m {
                    prod[k - m + j] += c * self.neg_low[j];
                }
            }
        }
        let mut out = RingElement::ZERO;
        for (j, &p) in prod[..m].iter().enumerate() {
            out.lo |= (p & 1) << j;
            out.hi |= ((p >> 1) & 1) << j;
        }
        out
    }

    fn mul_by_xi(&self, a: RingElement) -> RingElement {
        let m = self.m;
        let top = a.coeff(m - 1) as u32;
        let mask = (1u32 << m) - 1;
        let shifted = RingElement {
            lo: (a.lo << 1) & mask,
            hi: (a.hi << 1) & mask,
        };
        let mut tail = [0u8; MAX_DEGREE as usize];
        for (j, t) in tail.iter_mut().enumerate().take(m as usize) {
            *t = ((top * self.neg_low[j]) & 3) as u8;
        }
        shifted + RingElement::from_coeffs(&tail[..m as usize])
    }

    pub fn pow(&self, a: RingElement, mut e: u64) -> RingElement {
        let mut base = a;
        let mut acc = RingElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Teichmüller set in canonical order `[0, 1, ξ, ξ^2, ...]`.
    pub fn teichmuller_set(&self) -> &[RingElement] {
        &self.teichmuller
    }

    /// The unique Teichmüller element reducing to `x`.
    pub fn lift(&self, x: FieldElement) -> RingElement {
        self.lift[x.index()]
    }

    pub fn is_teichmuller(&self, c: RingElement) -> bool {
        self.lift[c.reduce().index()] == c
    }

    /// Position of a Teichmüller element in `teichmuller_set()`.
    pub fn teichmuller_position(&self, t: RingElement) -> Option<usize> {
        if !self.is_teichmuller(t) {
            return None;
        }
        Some(match self.field.log(t.reduce()) {
            None => 0,
            Some(k) => k as usize + 1,
        })
    }

    pub fn two_adic_decompose(&self, c: RingElement) -> TwoAdic {
        let a = self.lift(c.reduce());
        let rest = c - a;
        debug_assert_eq!(rest.lo, 0);
        let b = self.lift(FieldElement::new(rest.hi));
        TwoAdic { a, b }
    }

    /// The generalized Frobenius `a + 2b -> a^2 + 2b^2`.
    pub fn frobenius(&self, c: RingElement) -> RingElement {
        let TwoAdic { a, b } = self.two_adic_decompose(c);
        let f = &self.field;
        self.lift(f.square(a.reduce())) + RingElement::twice_lift(f.square(b.reduce()))
    }

    /// The generalized trace `Σ_{i<m} φ^i(c)` into Z4.
    pub fn trace(&self, c: RingElement) -> u8 {
        self.trace_form.eval(c)
    }

    /// The trace computed straight from its Frobenius-orbit definition. Slow;
    /// `trace` evaluates the same map through a precomputed functional.
    pub fn trace_by_frobenius(&self, c: RingElement) -> u8 {
        let mut acc = RingElement::ZERO;
        let mut x = c;
        for _ in 0..self.m {
            acc += x;
            x = self.frobenius(x);
        }
        assert!(
            acc.lo & !1 == 0 && acc.hi & !1 == 0,
            "Frobenius trace left Z4"
        );
        acc.coeff(0)
    }

    /// `tr(ā) + 2 tr(b̄)` for `c = a + 2b`. Not Z4-linear in general; kept to
    /// compare against `trace`.
    pub fn literal_trace(&self, c: RingElement) -> u8 {
        let TwoAdic { a, b } = self.two_adic_decompose(c);
        (self.field.trace(a.reduce()) + 2 * self.field.trace(b.reduce())) & 3
    }

    /// The functional `a -> Tr(a·d)`.
    pub fn trace_form(&self, d: RingElement) -> Z4Functional {
        let coeffs: Vec<u8> = (0..self.m)
            .map(|j| self.trace(self.mul(RingElement::from_planes(1 << j, 0), d)))
            .collect();
        Z4Functional::from_coeffs(&coeffs)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + Clone + '_ {
        let m = self.m;
        (0..self.size()).map(move |i| RingElement::from_index(m, i))
    }

    pub fn enumerate(&self, subset: Subset) -> Box<dyn Iterator<Item = RingElement> + '_> {
        match subset {
            Subset::All => Box::new(self.elements()),
            Subset::Units => Box::new(self.elements().filter(|c| c.is_unit())),
            Subset::Ideal => {
                Box::new((0..1u32 << self.m).map(|hi| RingElement::from_planes(0, hi)))
            }
        }
    }

    /// `c0,c1,...,c_{m-1}` with Z4 digits, low degree first.
    pub fn format_element(&self, c: RingElement) -> String {
        c.coeffs(self.m)
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let digits: Vec<u8> = s
            .split(',')
            .map(|d| match d.trim().parse::<u8>() {
                Ok(v) if v < 4 => Ok(v),
                _ => Err(Error::Parse(format!("bad Z4 digit {d:?} in {s:?}"))),
            })
            .collect::<Result<_>>()?;
        if digits.len() != self.m as usize {
            return Err(Error::DimensionMismatch {
                expected: self.m as usize,
                actual: digits.len(),
            });
        }
        Ok(RingElement::from_coeffs(&digits))
    }

    pub fn teichmuller_table(&self) -> TeichmullerTable {
        TeichmullerTable {
            m: self.m,
            basic_poly: self.basic_poly.clone(),
            entries: self
                .teichmuller
                .iter()
                .enumerate()
                .map(|(pos, &t)| TeichmullerEntry {
                    exponent: pos.checked_sub(1),
                    element: self.format_element(t),
                    residue: t.reduce().bits(),
                    trace: self.trace(t),
                })
                .collect(),
        }
    }
}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR(4,{}) with h(x) = ", self.m)?;
        let terms: Vec<String> = self
            .basic_poly
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TeichmullerTable {
    pub m: u32,
    pub basic_poly: Vec<u8>,
    pub entries: Vec<TeichmullerEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TeichmullerEntry {
    /// `k` for ξ^k; `None` for 0.
    pub exponent: Option<usize>,
    pub element: String,
    pub residue: u32,
    pub trace: u8,
}
