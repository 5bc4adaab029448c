//! Boolean functions on GF(2^m): truth tables, Walsh spectra, bent and
//! semi-bent detection, and the quadratic form
//! `Q(x) = Σ_{0 <= i < j < m} x^(2^i + 2^j)` with its bilinear form and rank.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2m::{BinaryField, FieldElement};

/// A Boolean function `GF(2^m) -> GF(2)` stored as a truth table indexed by
/// field-element index.
#[derive(Debug, Clone)]
pub struct BooleanFunction {
    field: Arc<BinaryField>,
    table: Vec<bool>,
}

impl PartialEq for BooleanFunction {
    fn eq(&self, other: &Self) -> bool {
        self.field.m() == other.field.m()
            && self.field.primitive_poly() == other.field.primitive_poly()
            && self.table == other.table
    }
}

impl Eq for BooleanFunction {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Affine,
    Bent,
    SemiBent,
    Quadratic { rank: u32 },
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Affine => write!(f, "affine"),
            Classification::Bent => write!(f, "bent"),
            Classification::SemiBent => write!(f, "semibent"),
            Classification::Quadratic { rank } => write!(f, "quadratic(rank={rank})"),
            Classification::Other => write!(f, "other"),
        }
    }
}

/// Target class for [`search_quadratic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchTarget {
    Bent,
    SemiBent,
}

/// Rank `2h` of a quadratic form and the dimension `m - 2h` of its radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticFormRank {
    pub rank: u32,
    pub radical_dim: u32,
}

impl QuadraticFormRank {
    pub fn h(&self) -> u32 {
        self.rank / 2
    }
}

/// The Walsh values `W_f(w)` for every `w`, indexed by field index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, w: FieldElement) -> i64 {
        self.values[w.index()]
    }

    /// The spectrum as a multiset `value -> multiplicity`.
    pub fn distribution(&self) -> BTreeMap<i64, usize> {
        let mut dist = BTreeMap::new();
        for &v in &self.values {
            *dist.entry(v).or_insert(0) += 1;
        }
        dist
    }

    pub fn sum_of_squares(&self) -> i64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// `w_index,value` lines under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("w_index,value\n");
        for (w, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{w},{v}\n"));
        }
        out
    }
}

impl BooleanFunction {
    pub fn from_table(field: Arc<BinaryField>, table: Vec<bool>) -> Result<Self> {
        if table.len() != field.order() {
            return Err(Error::DimensionMismatch {
                expected: field.order(),
                actual: table.len(),
            });
        }
        Ok(BooleanFunction { field, table })
    }

    pub fn from_fn(field: Arc<BinaryField>, f: impl FnMut(FieldElement) -> bool) -> Self {
        let table = field.elements().map(f).collect();
        BooleanFunction { field, table }
    }

    pub fn zero(field: Arc<BinaryField>) -> Self {
        let n = field.order();
        BooleanFunction {
            field,
            table: vec![false; n],
        }
    }

    /// `x -> tr(Σ a_e x^e) + constant`.
    pub fn from_trace_poly(
        field: Arc<BinaryField>,
        terms: &[(FieldElement, u64)],
        constant: bool,
    ) -> Result<Self> {
        let top = field.order() as u64 - 1;
        for &(a, e) in terms {
            if e == 0 || e > top {
                return Err(Error::InvalidArgument(format!(
                    "exponent {e} outside 1..={top}"
                )));
            }
            field.element(a.bits())?;
        }
        let f = Arc::clone(&field);
        Ok(Self::from_fn(field, move |x| {
            let inner = terms.iter().fold(FieldElement::ZERO, |acc, &(a, e)| {
                acc + f.mul(a, f.pow(x, e))
            });
            (f.trace(inner) == 1) ^ constant
        }))
    }

    /// `tr(a x) + b`.
    pub fn affine(field: Arc<BinaryField>, a: FieldElement, b: bool) -> Result<Self> {
        field.element(a.bits())?;
        let f = Arc::clone(&field);
        Ok(Self::from_fn(field, move |x| {
            (f.trace(f.mul(a, x)) == 1) ^ b
        }))
    }

    /// `tr(alpha x^(2^i + 1))`.
    pub fn quadratic_monomial(
        field: Arc<BinaryField>,
        alpha: FieldElement,
        i: u32,
    ) -> Result<Self> {
        if i == 0 || i >= field.m() {
            return Err(Error::InvalidArgument(format!(
                "quadratic monomial needs 1 <= i < m, got i = {i}"
            )));
        }
        Self::from_trace_poly(field, &[(alpha, (1u64 << i) + 1)], false)
    }

    /// Maiorana–McFarland `f(u, v) = <u, π(v)>`, where `u` is the low half and
    /// `v` the high half of the coefficient vector. `m` must be even and
    /// `perm` a permutation of `0..2^(m/2)`.
    pub fn maiorana_mcfarland(field: Arc<BinaryField>, perm: &[u32]) -> Result<Self> {
        let m = field.m();
        if !m.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "Maiorana-McFarland needs even m, got {m}"
            )));
        }
        let half = m / 2;
        let size = 1usize << half;
        let mut seen = vec![false; size];
        if perm.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                actual: perm.len(),
            });
        }
        for &p in perm {
            if p as usize >= size || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation of 0..{size}"
                )));
            }
        }
        let low = (1u32 << half) - 1;
        let perm = perm.to_vec();
        Ok(Self::from_fn(field, move |x| {
            let u = x.bits() & low;
            let v = x.bits() >> half;
            (u & perm[v as usize]).count_ones() % 2 == 1
        }))
    }

    pub fn field(&self) -> &Arc<BinaryField> {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.field.m()
    }

    pub fn eval(&self, x: FieldElement) -> bool {
        self.table[x.index()]
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// `n_f`, the size of the support.
    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    /// The 1-positions in field order.
    pub fn support(&self) -> Vec<FieldElement> {
        self.field.elements().filter(|&x| self.eval(x)).collect()
    }

    /// Pointwise sum with another function over the same field.
    pub fn xor(&self, other: &BooleanFunction) -> BooleanFunction {
        assert_eq!(self.m(), other.m(), "functions over different fields");
        BooleanFunction {
            field: Arc::clone(&self.field),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn complement(&self) -> BooleanFunction {
        BooleanFunction {
            field: Arc::clone(&self.field),
            table: self.table.iter().map(|b| !b).collect(),
        }
    }

    /// `W_f(w) = Σ_x (-1)^(f(x) + tr(w x))`, summed directly.
    pub fn walsh(&self, w: FieldElement) -> i64 {
        let f = &self.field;
        f.elements()
            .map(|x| {
                if self.eval(x) ^ (f.trace(f.mul(w, x)) == 1) {
                    -1
                } else {
                    1
                }
            })
            .sum()
    }

    /// The full spectrum through a fast Walsh–Hadamard transform over the
    /// coefficient-vector coordinates.
    ///
    /// The transform yields `F(u) = Σ_x (-1)^(f(x) + u·x)`; since
    /// `tr(w x) = u(w)·x` with `u(w)_i = tr(w α^i)`, `W_f(w) = F(u(w))`.
    pub fn walsh_spectrum(&self) -> WalshSpectrum {
        let n = self.table.len();
        let mut data: Vec<i64> = self.table.iter().map(|&b| if b { -1 } else { 1 }).collect();
        let mut len = 1;
        while len < n {
            for chunk in data.chunks_mut(2 * len) {
                let (a, b) = chunk.split_at_mut(len);
                for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                    let (s, d) = (*x + *y, *x - *y);
                    *x = s;
                    *y = d;
                }
            }
            len <<= 1;
        }
        let f = &self.field;
        let basis: Vec<u32> = (0..f.m())
            .map(|j| f.trace_functional(FieldElement::new(1 << j)))
            .collect();
        let values = f
            .elements()
            .map(|w| {
                let u = basis
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| w.bits() >> j & 1 == 1)
                    .fold(0u32, |acc, (_, &b)| acc ^ b);
                data[u as usize]
            })
            .collect();
        WalshSpectrum { values }
    }

    pub fn classify(&self) -> Classification {
        let spectrum = self.walsh_spectrum();
        classify_spectrum(self.m(), &spectrum).unwrap_or_else(|| match self.quadratic_rank() {
            Ok(r) => Classification::Quadratic { rank: r.rank },
            Err(_) => Classification::Other,
        })
    }

    /// Rank of the bilinear form `B(x, z) = g(x+z) + g(x) + g(z) + g(0)`.
    pub fn quadratic_rank(&self) -> Result<QuadraticFormRank> {
        quadratic_rank_of(&self.field, |x| self.eval(x) as u8)
    }

    /// Truth table as hex, reading `Σ f(x) 2^x` most significant digit first.
    pub fn to_hex(&self) -> String {
        let digits = (self.table.len() / 4).max(1);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4)
                    .filter(|k| self.table.get(4 * d + k).copied().unwrap_or(false))
                    .fold(0u32, |acc, k| acc | (1 << k));
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(field: Arc<BinaryField>, hex: &str) -> Result<Self> {
        let hex = hex.trim().trim_start_matches("0x");
        let n = field.order();
        let digits = (n / 4).max(1);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "truth table for m = {} needs {digits} hex digits, got {}",
                field.m(),
                hex.len()
            )));
        }
        let mut table = vec![false; n];
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?}")))?;
            for k in 0..4 {
                if nibble >> k & 1 == 1 {
                    let x = 4 * pos + k;
                    if x >= n {
                        return Err(Error::Parse(format!("hex {hex:?} sets bit {x} >= {n}")));
                    }
                    table[x] = true;
                }
            }
        }
        Ok(BooleanFunction { field, table })
    }
}

fn classify_spectrum(m: u32, spectrum: &WalshSpectrum) -> Option<Classification> {
    let full = 1i64 << m;
    let values = spectrum.values();
    let nonzero: Vec<i64> = values.iter().copied().filter(|&v| v != 0).collect();
    if nonzero.len() == 1 && nonzero[0].abs() == full {
        return Some(Classification::Affine);
    }
    if m.is_multiple_of(2) {
        let level = 1i64 << (m / 2);
        if values.iter().all(|v| v.abs() == level) {
            return Some(Classification::Bent);
        }
    } else {
        let level = 1i64 << m.div_ceil(2);
        if values.iter().all(|&v| v == 0 || v.abs() == level) {
            return Some(Classification::SemiBent);
        }
    }
    None
}

/// `Q(x)` as a field element; it always lands in GF(2).
pub fn q_form_element(field: &BinaryField, x: FieldElement) -> FieldElement {
    let m = field.m() as usize;
    let mut conj = Vec::with_capacity(m);
    let mut y = x;
    for _ in 0..m {
        conj.push(y);
        y = field.square(y);
    }
    let mut acc = FieldElement::ZERO;
    for i in 0..m {
        for j in i + 1..m {
            acc += field.mul(conj[i], conj[j]);
        }
    }
    acc
}

/// `Q(x) = Σ_{i<j} x^(2^i + 2^j)` as a bit.
pub fn q_form(field: &BinaryField, x: FieldElement) -> u8 {
    let q = q_form_element(field, x);
    debug_assert!(q.bits() <= 1, "Q left GF(2)");
    q.bits() as u8
}

/// `B(x, y) = Q(x + y) + Q(x) + Q(y)`.
pub fn bilinear_form(field: &BinaryField, x: FieldElement, y: FieldElement) -> u8 {
    q_form(field, x + y) ^ q_form(field, x) ^ q_form(field, y)
}

/// `B(x, y)` evaluated as `Σ_{i<j} x^(2^i) y^(2^j) + y^(2^i) x^(2^j)`.
pub fn bilinear_form_poly(field: &BinaryField, x: FieldElement, y: FieldElement) -> u8 {
    let m = field.m() as usize;
    let conj = |mut v: FieldElement| {
        let mut out = Vec::with_capacity(m);
        for _ in 0..m {
            out.push(v);
            v = field.square(v);
        }
        out
    };
    let (xs, ys) = (conj(x), conj(y));
    let mut acc = FieldElement::ZERO;
    for i in 0..m {
        for j in i + 1..m {
            acc += field.mul(xs[i], ys[j]) + field.mul(ys[i], xs[j]);
        }
    }
    debug_assert!(acc.bits() <= 1);
    acc.bits() as u8
}

/// `Q` as a [`BooleanFunction`].
pub fn q_function(field: Arc<BinaryField>) -> BooleanFunction {
    let f = Arc::clone(&field);
    BooleanFunction::from_fn(field, move |x| q_form(&f, x) == 1)
}

/// Rank of `g`'s associated bilinear form over GF(2), after checking that
/// `g(x+z) + g(x) + g(z) + g(0)` is bilinear on every pair.
pub fn quadratic_rank_of(
    field: &BinaryField,
    g: impl Fn(FieldElement) -> u8,
) -> Result<QuadraticFormRank> {
    let m = field.m();
    let n = field.order();
    let table: Vec<u8> = field.elements().map(|x| g(x) & 1).collect();
    let b = |x: usize, z: usize| table[x ^ z] ^ table[x] ^ table[z] ^ table[0];

    let rows: Vec<u32> = (0..m as usize)
        .map(|i| {
            (0..m as usize)
                .filter(|&j| b(1 << i, 1 << j) == 1)
                .fold(0u32, |acc, j| acc | (1 << j))
        })
        .collect();

    // mz[z] = M z, so bilinearity means B(x, z) = parity(x & mz[z]).
    let mut mz = vec![0u32; n];
    for z in 1..n {
        let low = z.trailing_zeros() as usize;
        mz[z] = mz[z & (z - 1)] ^ rows[low];
    }
    for (z, &row) in mz.iter().enumerate() {
        for x in 0..n {
            if b(x, z) as u32 != (x as u32 & row).count_ones() & 1 {
                return Err(Error::NotQuadratic(format!(
                    "form is not bilinear at x = {x}, z = {z}"
                )));
            }
        }
    }

    let rank = gf2_rank(rows);
    if !rank.is_multiple_of(2) {
        return Err(Error::NotQuadratic(format!("odd rank {rank}")));
    }
    Ok(QuadraticFormRank {
        rank,
        radical_dim: m - rank,
    })
}

fn gf2_rank(mut rows: Vec<u32>) -> u32 {
    let mut rank = 0;
    for bit in 0..32 {
        let Some(pivot) = (rank as usize..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank as usize, pivot);
        let p = rows[rank as usize];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank as usize && *row >> bit & 1 == 1 {
                *row ^= p;
            }
        }
        rank += 1;
    }
    rank
}

/// Searches `tr(α x^(2^i+1)) + tr(β x) + b` in the order `(i, α, β, b)` for
/// the first function whose spectrum is bent or semi-bent and whose support
/// has the smaller admissible size: `2^(m-1) - 2^((m-2)/2)` for bent,
/// `2^(m-1) - 2^((m-1)/2)` for semi-bent.
///
/// Adding `tr(β x) + b` shifts and signs the spectrum, so the class is fixed
/// by `(i, α)` and `(β, b)` only selects `W(0)`.
pub fn search_quadratic(field: &Arc<BinaryField>, target: SearchTarget) -> Option<BooleanFunction> {
    let m = field.m();
    let wanted = match target {
        SearchTarget::Bent if m.is_multiple_of(2) => 1i64 << (m / 2),
        SearchTarget::SemiBent if m % 2 == 1 && m >= 3 => 1i64 << m.div_ceil(2),
        _ => return None,
    };
    for i in 1..m {
        for alpha in field.elements().skip(1) {
            let base = BooleanFunction::quadratic_monomial(Arc::clone(field), alpha, i).ok()?;
            let spectrum = base.walsh_spectrum();
            let class = classify_spectrum(m, &spectrum);
            let hit = matches!(
                (target, class),
                (SearchTarget::Bent, Some(Classification::Bent))
                    | (SearchTarget::SemiBent, Some(Classification::SemiBent))
            );
            if !hit {
                continue;
            }
            for beta in field.elements() {
                for b in [false, true] {
                    let sign = if b { -1 } else { 1 };
                    if sign * spectrum.at(beta) == wanted {
                        let linear = BooleanFunction::affine(Arc::clone(field), beta, b).ok()?;
                        return Some(base.xor(&linear));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(m: u32) -> Arc<BinaryField> {
        Arc::new(BinaryField::new(m).unwrap())
    }

    #[test]
    fn zero_function() {
        let f = BooleanFunction::from_trace_poly(field(3), &[], false).unwrap();
        assert_eq!(f.weight(), 0);
        assert!(f.support().is_empty());
        let spec = f.walsh_spectrum();
        assert_eq!(spec.at(FieldElement::ZERO), 8);
        let dist = spec.distribution();
        assert_eq!(dist.get(&8), Some(&1));
        assert_eq!(dist.get(&0), Some(&7));
    }

    #[test]
    fn trace_of_x_on_gf4() {
        let f =
            BooleanFunction::from_trace_poly(field(2), &[(FieldElement::ONE, 1)], false).unwrap();
        assert_eq!(
            f.support(),
            vec![FieldElement::new(2), FieldElement::new(3)]
        );
        assert_eq!(f.weight(), 2);
        assert_eq!(f.walsh(FieldElement::new(2)), 0);
        assert_eq!(f.walsh_spectrum().at(FieldElement::new(2)), 0);
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(
            BooleanFunction::from_trace_poly(field(3), &[(FieldElement::ONE, 0)], false).is_err()
        );
        assert!(
            BooleanFunction::from_trace_poly(field(3), &[(FieldElement::ONE, 8)], false).is_err()
        );
    }

    #[test]
    fn affine_spectrum_is_a_single_spike() {
        for m in 1..=7 {
            let f = field(m);
            for a in f.elements().skip(1).step_by(3) {
                for b in [false, true] {
                    let g = BooleanFunction::affine(Arc::clone(&f), a, b).unwrap();
                    assert_eq!(g.weight(), 1 << (m - 1));
                    let spec = g.walsh_spectrum();
                    for s in f.elements() {
                        let expected = if s == a {
                            if b {
                                -(1i64 << m)
                            } else {
                                1i64 << m
                            }
                        } else {
                            0
                        };
                        assert_eq!(spec.at(s), expected);
                    }
                    assert_eq!(g.classify(), Classification::Affine);
                }
            }
        }
    }

    #[test]
    fn fast_spectrum_matches_naive_sum() {
        for m in 2..=6 {
            let f = field(m);
            let g = BooleanFunction::from_trace_poly(
                Arc::clone(&f),
                &[(f.generator(), 3), (FieldElement::ONE, 7.min((1 << m) - 1))],
                true,
            )
            .unwrap();
            let spec = g.walsh_spectrum();
            for w in f.elements() {
                assert_eq!(spec.at(w), g.walsh(w));
            }
        }
    }

    #[test]
    fn q_examples_m2() {
        let f = field(2);
        let omega = FieldElement::new(2);
        assert_eq!(q_form(&f, FieldElement::ZERO), 0);
        assert_eq!(q_form(&f, omega), 1);
        assert_eq!(bilinear_form(&f, FieldElement::ONE, omega), 1);
        assert_eq!(bilinear_form(&f, omega, FieldElement::ZERO), 0);
    }

    #[test]
    fn q_is_gf2_valued_and_bilinear_forms_agree() {
        for m in 1..=8 {
            let f = field(m);
            for x in f.elements() {
                let q = q_form_element(&f, x);
                assert_eq!(f.square(q), q);
                assert!(q.bits() <= 1);
            }
        }
        for m in 1..=6 {
            let f = field(m);
            for x in f.elements() {
                assert_eq!(bilinear_form(&f, x, x), 0);
                for y in f.elements() {
                    let bxy = bilinear_form(&f, x, y);
                    assert_eq!(bxy, bilinear_form(&f, y, x));
                    assert_eq!(bxy, bilinear_form_poly(&f, x, y));
                }
            }
        }
    }

    #[test]
    fn rank_of_q_is_twice_floor_half_m() {
        for m in 2..=8 {
            let f = field(m);
            let r = q_function(Arc::clone(&f)).quadratic_rank().unwrap();
            assert_eq!(r.rank, 2 * (m / 2), "m = {m}");
            assert_eq!(r.rank + r.radical_dim, m);
        }
    }

    #[test]
    fn affine_rank_is_zero() {
        let f = field(5);
        let g = BooleanFunction::affine(Arc::clone(&f), f.generator(), true).unwrap();
        assert_eq!(
            g.quadratic_rank().unwrap(),
            QuadraticFormRank {
                rank: 0,
                radical_dim: 5
            }
        );
    }

    #[test]
    fn cubic_is_not_quadratic() {
        let f = field(4);
        // x1 x2 x3 on coordinates
        let g = BooleanFunction::from_fn(Arc::clone(&f), |x| x.bits() & 0b111 == 0b111);
        assert!(matches!(g.quadratic_rank(), Err(Error::NotQuadratic(_))));
        assert_eq!(g.classify(), Classification::Other);
    }

    #[test]
    fn trace_x_cubed() {
        // m = 4: not bent; the spectrum {0: 12, 8: 3, -8: 1} gives rank 2.
        let f4 = field(4);
        let g = BooleanFunction::quadratic_monomial(Arc::clone(&f4), FieldElement::ONE, 1).unwrap();
        let dist = g.walsh_spectrum().distribution();
        assert_eq!(dist, BTreeMap::from([(-8, 1), (0, 12), (8, 3)]));
        assert_eq!(g.quadratic_rank().unwrap().rank, 2);
        assert_eq!(g.classify(), Classification::Quadratic { rank: 2 });

        // m = 5: semi-bent with spectrum in {0, ±8}.
        let f5 = field(5);
        let g = BooleanFunction::quadratic_monomial(Arc::clone(&f5), FieldElement::ONE, 1).unwrap();
        assert_eq!(g.classify(), Classification::SemiBent);
        assert!(g
            .walsh_spectrum()
            .values()
            .iter()
            .all(|v| [0, 8, -8].contains(v)));
    }

    #[test]
    fn quadratic_spectra_match_rank() {
        for m in 2..=7 {
            let f = field(m);
            for i in 1..m {
                for alpha in f.elements().skip(1).step_by(5) {
                    let g = BooleanFunction::quadratic_monomial(Arc::clone(&f), alpha, i).unwrap();
                    let r = g.quadratic_rank().unwrap();
                    assert_eq!(r.rank % 2, 0);
                    let level = 1i64 << (m - r.h());
                    for &v in g.walsh_spectrum().values() {
                        assert!(v == 0 || v.abs() == level, "m={m} i={i} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn maiorana_mcfarland_is_bent() {
        for m in [2, 4, 6, 8] {
            let f = field(m);
            let perm: Vec<u32> = (0..1 << (m / 2)).collect();
            let g = BooleanFunction::maiorana_mcfarland(Arc::clone(&f), &perm).unwrap();
            assert_eq!(g.classify(), Classification::Bent);
            let n = g.weight() as i64;
            let half = 1i64 << (m - 1);
            let dev = 1i64 << ((m - 2) / 2);
            assert!(n == half - dev || n == half + dev);
        }
        let f4 = field(4);
        let perm = [0, 1, 2, 3];
        assert_eq!(
            BooleanFunction::maiorana_mcfarland(Arc::clone(&f4), &perm)
                .unwrap()
                .weight(),
            6
        );
        assert!(BooleanFunction::maiorana_mcfarland(Arc::clone(&f4), &[0, 0, 1, 2]).is_err());
        assert!(BooleanFunction::maiorana_mcfarland(field(3), &[0, 1]).is_err());
    }

    #[test]
    fn search_finds_small_support_bent_and_semibent() {
        for m in [4, 6, 8] {
            let g = search_quadratic(&field(m), SearchTarget::Bent).unwrap();
            assert_eq!(g.classify(), Classification::Bent);
            assert_eq!(g.weight(), (1 << (m - 1)) - (1 << ((m - 2) / 2)));
        }
        for m in [3, 5, 7] {
            let g = search_quadratic(&field(m), SearchTarget::SemiBent).unwrap();
            assert_eq!(g.classify(), Classification::SemiBent);
            assert_eq!(g.weight(), (1 << (m - 1)) - (1 << ((m - 1) / 2)));
        }
        assert!(search_quadratic(&field(5), SearchTarget::Bent).is_none());
        assert!(search_quadratic(&field(4), SearchTarget::SemiBent).is_none());
    }

    #[test]
    fn bent_support_sizes() {
        let g = search_quadratic(&field(4), SearchTarget::Bent).unwrap();
        assert!([6, 10].contains(&g.weight()));
        assert!([6, 10].contains(&g.complement().weight()));
        let s = search_quadratic(&field(5), SearchTarget::SemiBent).unwrap();
        assert!([12, 20].contains(&s.weight()));
    }

    #[test]
    fn hex_round_trip_and_errors() {
        let f = field(1);
        let g = BooleanFunction::from_table(Arc::clone(&f), vec![false, true]).unwrap();
        assert_eq!(g.to_hex(), "2");
        assert!(BooleanFunction::from_hex(Arc::clone(&f), "4").is_err());
        let f3 = field(3);
        let g = BooleanFunction::from_hex(Arc::clone(&f3), "a5").unwrap();
        assert_eq!(
            g.table(),
            &[true, false, true, false, false, true, false, true]
        );
        assert_eq!(g.to_hex(), "a5");
        assert!(BooleanFunction::from_hex(Arc::clone(&f3), "a").is_err());
        assert!(BooleanFunction::from_hex(f3, "zz").is_err());
    }

    #[test]
    fn spectrum_csv() {
        let g = BooleanFunction::zero(field(1));
        assert_eq!(g.walsh_spectrum().to_csv(), "w_index,value\n0,2\n1,0\n");
    }

    proptest! {
        #[test]
        fn parseval_and_w0(m in 1u32..=8, seed in any::<u64>()) {
            let f = field(m);
            let mut state = seed | 1;
            let g = BooleanFunction::from_fn(Arc::clone(&f), |_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state & 1 == 1
            });
            let spec = g.walsh_spectrum();
            prop_assert_eq!(spec.sum_of_squares(), 1i64 << (2 * m));
            prop_assert_eq!(spec.at(FieldElement::ZERO), (1i64 << m) - 2 * g.weight() as i64);
            for &v in spec.values() {
                prop_assert_eq!(v.rem_euclid(2), 0);
            }
            let back = BooleanFunction::from_hex(Arc::clone(&f), &g.to_hex()).unwrap();
            prop_assert_eq!(back, g.clone());
            if g.classify() == Classification::Bent {
                let n = g.weight() as i64;
                let dev = 1i64 << ((m - 2) / 2);
                prop_assert!(n == (1 << (m - 1)) - dev || n == (1 << (m - 1)) + dev);
            }
        }
    }
}
