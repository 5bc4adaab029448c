//! Arithmetic in the binary field GF(2^m), 1 <= m <= 12.
//!
//! Elements are stored as their coefficient vector in the polynomial basis
//! `{1, x, ..., x^(m-1)}`, low degree in the low bit. That integer doubles as
//! the element's index, so tables over the field are plain `Vec`s indexed by
//! `FieldElement::index`.
//!
//! Multiplication goes through log/antilog tables built from a primitive
//! polynomial. One default polynomial per degree ships in
//! `data/primitive_polys.txt`; any other primitive polynomial can be supplied.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 12;

const POLY_TABLE: &str = include_str!("../data/primitive_polys.txt");

/// An element of GF(2^m) as an m-bit coefficient vector.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn new(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Returns the built-in primitive polynomial for degree `m`, bit `i` holding
/// the coefficient of `x^i`.
pub fn default_primitive_poly(m: u32) -> Result<u32> {
    if !(1..=MAX_DEGREE).contains(&m) {
        return Err(Error::InvalidDegree(m));
    }
    for line in POLY_TABLE.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(deg), Some(bits)) = (parts.next(), parts.next()) else {
            continue;
        };
        if deg.parse::<u32>().ok() == Some(m) {
            return parse_poly_bits(bits);
        }
    }
    Err(Error::Parse(format!("no built-in polynomial for m = {m}")))
}

/// Parses a polynomial written as a bit string, most significant first.
pub fn parse_poly_bits(s: &str) -> Result<u32> {
    let s = s.trim();
    if s.is_empty() || s.len() > 32 {
        return Err(Error::Parse(format!("bad polynomial bit string {s:?}")));
    }
    u32::from_str_radix(s, 2).map_err(|e| Error::Parse(format!("bad polynomial {s:?}: {e}")))
}

/// Formats a polynomial bit vector most significant first.
pub fn format_poly_bits(poly: u32) -> String {
    format!("{poly:b}")
}

fn degree(poly: u32) -> Option<u32> {
    (poly != 0).then(|| 31 - poly.leading_zeros())
}

/// GF(2^m) defined by a primitive polynomial. Immutable after construction.
#[derive(Debug, Clone)]
pub struct BinaryField {
    m: u32,
    poly: u32,
    /// exp[k] = alpha^k for k in 0..2(q-1), doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    /// log[x] for nonzero x; log[0] is unused.
    log: Vec<u32>,
    trace: Vec<u8>,
    /// Bit j is tr(x^j), so tr(y) = parity(y & trace_mask).
    trace_mask: u32,
}

impl BinaryField {
    /// Builds GF(2^m) from the built-in polynomial table.
    pub fn new(m: u32) -> Result<Self> {
        let poly = default_primitive_poly(m)?;
        Self::with_poly(m, poly)
    }

    /// Builds GF(2^m) from `poly`, rejecting it unless it is primitive of
    /// degree `m`.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidDegree(m));
        }
        if degree(poly) != Some(m) {
            return Err(Error::NotPrimitive { m, poly });
        }
        let order = 1u32 << m;
        let group = (order - 1) as usize;
        let top = 1u32 << m;

        let mut exp = Vec::with_capacity(2 * group);
        let mut log = vec![0u32; order as usize];
        let mut seen = vec![false; order as usize];
        let mut x = 1u32;
        for k in 0..group {
            // A repeat before the full period means the root has small order
            // (or the polynomial is reducible).
            if x == 0 || seen[x as usize] {
                return Err(Error::NotPrimitive { m, poly });
            }
            seen[x as usize] = true;
            exp.push(x);
            log[x as usize] = k as u32;
            x <<= 1;
            if x & top != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive { m, poly });
        }
        exp.extend_from_within(..group);

        let mut field = BinaryField {
            m,
            poly,
            exp,
            log,
            trace: Vec::new(),
            trace_mask: 0,
        };
        field.trace = (0..order)
            .map(|x| field.trace_by_definition(FieldElement(x)))
            .collect();
        field.trace_mask = (0..m)
            .filter(|&j| field.trace[1usize << j] == 1)
            .fold(0, |acc, j| acc | (1 << j));
        Ok(field)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of elements, 2^m.
    pub fn order(&self) -> usize {
        1usize << self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.poly
    }

    /// The class of `x` modulo the primitive polynomial, a generator of the
    /// multiplicative group.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.exp[1])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.order() as u32).map(FieldElement)
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if bits as usize >= self.order() {
            return Err(Error::Parse(format!(
                "{bits} is not an element of GF(2^{})",
                self.m
            )));
        }
        Ok(FieldElement(bits))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let k = self.log[a.index()] + self.log[b.index()];
        FieldElement(self.exp[k as usize])
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.order() as u32 - 1;
        let k = (group - self.log[a.index()]) % group;
        Ok(FieldElement(self.exp[k as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let group = self.order() as u64 - 1;
        let k = (self.log[a.index()] as u64 * (e % group)) % group;
        FieldElement(self.exp[k as usize])
    }

    /// Discrete logarithm base `generator()`; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    /// `generator()^k`.
    pub fn exp(&self, k: u64) -> FieldElement {
        let group = self.order() as u64 - 1;
        FieldElement(self.exp[(k % group) as usize])
    }

    /// Frobenius `x -> x^2`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.square(a)
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: FieldElement) -> u8 {
        self.trace[a.index()]
    }

    /// The mask `u` with `tr(w * x) = parity(x & u)` for every `x`.
    pub fn trace_functional(&self, w: FieldElement) -> u32 {
        (0..self.m)
            .filter(|&i| self.trace(self.mul(w, FieldElement(1 << i))) == 1)
            .fold(0, |acc, i| acc | (1 << i))
    }

    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    fn trace_by_definition(&self, a: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.m {
            acc += x;
            x = self.square(x);
        }
        debug_assert!(acc.bits() <= 1, "trace left GF(2)");
        acc.bits() as u8
    }
}
