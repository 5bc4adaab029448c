//! Binary codes attached to Z4 trace codes: Gray images, residue and torsion
//! codes, linearity tests and the Griesmer bound.
//!
//! Words are packed little-endian into `u64` limbs: coordinate `i` lives in
//! bit `i % 64` of limb `i / 64`.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::trace_codes::TraceCode;

/// Largest word count for which a nonlinear minimum distance is computed by
/// pairwise scan.
pub const PAIRWISE_MAX_WORDS: usize = 1 << 12;

/// Bit budget for materializing a whole Gray image.
const GRAY_MAX_BITS: u64 = 1 << 30;

pub type Word = Vec<u64>;

fn limbs(len: usize) -> usize {
    len.div_ceil(64).max(1)
}

/// Packs a 0/1 vector into limbs.
pub fn pack(bits: &[u8]) -> Word {
    let mut w = vec![0u64; limbs(bits.len())];
    for (i, &b) in bits.iter().enumerate() {
        if b & 1 == 1 {
            w[i / 64] |= 1 << (i % 64);
        }
    }
    w
}

pub fn unpack(word: &[u64], len: usize) -> Vec<u8> {
    (0..len)
        .map(|i| ((word[i / 64] >> (i % 64)) & 1) as u8)
        .collect()
}

pub fn hamming_weight(word: &[u64]) -> u64 {
    word.iter().map(|x| x.count_ones() as u64).sum()
}

pub fn hamming_distance(a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x ^ y).count_ones() as u64)
        .sum()
}

fn xor(a: &[u64], b: &[u64]) -> Word {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

/// `φ(r + 2q) = (q | r ⊕ q)`: the first `n` bits are `q`, the last `n` are
/// `r ⊕ q`. Per symbol this sends 0, 1, 2, 3 to 00, 01, 11, 10.
pub fn gray_map(v: &[u8]) -> Vec<u8> {
    let q = v.iter().map(|&x| (x >> 1) & 1);
    let rq = v.iter().map(|&x| (x & 1) ^ ((x >> 1) & 1));
    q.chain(rq).collect()
}

pub fn gray_word(v: &[u8]) -> Word {
    let n = v.len();
    let mut w = vec![0u64; limbs(2 * n)];
    for (i, &x) in v.iter().enumerate() {
        let q = ((x >> 1) & 1) as u64;
        let rq = ((x & 1) as u64) ^ q;
        w[i / 64] |= q << (i % 64);
        let j = n + i;
        w[j / 64] |= rq << (j % 64);
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linearity {
    Yes,
    No,
    Unknown,
}

impl Linearity {
    pub fn as_option(self) -> Option<bool> {
        match self {
            Linearity::Yes => Some(true),
            Linearity::No => Some(false),
            Linearity::Unknown => None,
        }
    }
}

/// Hamming weight → number of codewords.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HammingWeightDistribution {
    counts: BTreeMap<u64, u64>,
}

impl Serialize for HammingWeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.counts.iter())
    }
}

impl HammingWeightDistribution {
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_nonzero(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }
}

/// An explicit, deduplicated binary code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    words: Vec<Word>,
    linearity: Linearity,
    dimension: Option<u32>,
}

impl BinaryCode {
    /// Sorts and deduplicates `words`; linearity is left unknown.
    pub fn from_words(length: usize, mut words: Vec<Word>) -> Result<Self> {
        for w in &words {
            if w.len() != limbs(length) {
                return Err(Error::DimensionMismatch {
                    expected: limbs(length),
                    actual: w.len(),
                });
            }
            let spill = limbs(length) * 64 - length;
            if spill > 0 && w[w.len() - 1] >> (64 - spill) != 0 {
                return Err(Error::InvalidArgument(
                    "word has bits past the code length".into(),
                ));
            }
        }
        words.sort();
        words.dedup();
        Ok(BinaryCode {
            length,
            words,
            linearity: Linearity::Unknown,
            dimension: None,
        })
    }

    /// Like [`from_words`](Self::from_words), then settles linearity with a
    /// span test: a set containing 0 whose size equals `2^rank` is its span.
    pub fn from_words_classified(length: usize, words: Vec<Word>) -> Result<Self> {
        let mut code = Self::from_words(length, words)?;
        code.classify();
        Ok(code)
    }

    pub fn from_bit_vectors(length: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        for v in vectors {
            if v.len() != length {
                return Err(Error::DimensionMismatch {
                    expected: length,
                    actual: v.len(),
                });
            }
        }
        Self::from_words_classified(length, vectors.iter().map(|v| pack(v)).collect())
    }

    fn classify(&mut self) {
        let zero = vec![0u64; limbs(self.length)];
        let rank = span_rank(&self.words);
        let linear = self.words.binary_search(&zero).is_ok()
            && rank < 64
            && self.words.len() as u64 == 1u64 << rank;
        self.linearity = if linear {
            Linearity::Yes
        } else {
            Linearity::No
        };
        self.dimension = linear.then_some(rank);
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn linearity(&self) -> Linearity {
        self.linearity
    }

    pub fn dimension(&self) -> Option<u32> {
        self.dimension
    }

    pub fn contains(&self, w: &[u64]) -> bool {
        self.words.binary_search_by(|x| x.as_slice().cmp(w)).is_ok()
    }

    pub fn weight_distribution(&self) -> HammingWeightDistribution {
        let mut counts = BTreeMap::new();
        for w in &self.words {
            *counts.entry(hamming_weight(w)).or_insert(0) += 1;
        }
        HammingWeightDistribution { counts }
    }

    /// XOR closure checked over every pair of codewords.
    pub fn is_closed_under_xor(&self) -> bool {
        if self.words.is_empty() {
            return false;
        }
        let set: HashSet<&[u64]> = self.words.iter().map(|w| w.as_slice()).collect();
        self.words.par_iter().enumerate().all(|(i, a)| {
            self.words[i..]
                .iter()
                .all(|b| set.contains(xor(a, b).as_slice()))
        })
    }

    /// Minimum pairwise Hamming distance. Linear codes use the minimum nonzero
    /// weight; other codes are scanned pair by pair.
    pub fn min_distance(&self) -> Result<u64> {
        if self.words.len() < 2 {
            return Err(Error::EmptyCode);
        }
        if self.linearity == Linearity::Yes {
            return Ok(self
                .weight_distribution()
                .min_nonzero()
                .expect("nonzero word"));
        }
        if self.words.len() > PAIRWISE_MAX_WORDS {
            let m = (self.words.len() as f64).log2().ceil() as u32;
            return Err(Error::BudgetExceeded {
                kind: "pairwise distance scan".into(),
                m: m.div_ceil(2),
                max_m: PAIRWISE_MAX_WORDS.trailing_zeros() / 2,
            });
        }
        let best = AtomicU64::new(u64::MAX);
        self.words.par_iter().enumerate().for_each(|(i, a)| {
            for b in &self.words[i + 1..] {
                if best.load(Ordering::Relaxed) <= 1 {
                    return;
                }
                best.fetch_min(hamming_distance(a, b), Ordering::Relaxed);
            }
        });
        Ok(best.into_inner())
    }

    /// One word per line, sorted, as hex of `Σ bit_i 2^i` (most significant
    /// digit first, `⌈n/4⌉` digits).
    pub fn to_hex_lines(&self) -> String {
        let digits = self.length.div_ceil(4).max(1);
        let mut out = String::new();
        let mut lines: Vec<String> = self
            .words
            .iter()
            .map(|w| {
                (0..digits)
                    .rev()
                    .map(|d| {
                        let bit = 4 * d;
                        let nib = (w[bit / 64] >> (bit % 64)) & 0xf;
                        char::from_digit(nib as u32, 16).expect("nibble")
                    })
                    .collect()
            })
            .collect();
        lines.sort();
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    /// `{n, M, d, linear, k}`.
    pub fn summary(&self) -> Result<CodeSummary> {
        Ok(CodeSummary {
            n: self.length,
            size: self.words.len() as u64,
            d: self.min_distance()?,
            linear: self.linearity.as_option(),
            k: self.dimension,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub n: usize,
    #[serde(rename = "M")]
    pub size: u64,
    pub d: u64,
    pub linear: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

/// GF(2) rank of a set of words.
pub fn span_rank(words: &[Word]) -> u32 {
    let mut basis: Vec<Word> = Vec::new();
    for w in words {
        let mut v = w.clone();
        for b in &basis {
            let top = leading_bit(b).expect("basis vectors are nonzero");
            if (v[top / 64] >> (top % 64)) & 1 == 1 {
                v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
        if let Some(top) = leading_bit(&v) {
            for b in basis.iter_mut() {
                if (b[top / 64] >> (top % 64)) & 1 == 1 {
                    b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
                }
            }
            basis.push(v);
        }
    }
    basis.len() as u32
}

fn leading_bit(w: &[u64]) -> Option<usize> {
    w.iter()
        .enumerate()
        .rev()
        .find(|(_, &x)| x != 0)
        .map(|(i, &x)| 64 * i + 63 - x.leading_zeros() as usize)
}

/// The Gray image of a trace code with its parameters.
#[derive(Debug, Clone)]
pub struct GrayImage {
    pub code: BinaryCode,
    /// `4^m`: the number of codewords counted with multiplicity over `a ∈ R`.
    pub nominal_size: u64,
    pub min_distance: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrayParams {
    pub length: usize,
    pub distinct: u64,
    pub nominal_size: u64,
    pub min_distance: u64,
    pub linear: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

impl GrayImage {
    pub fn params(&self) -> GrayParams {
        GrayParams {
            length: self.code.length(),
            distinct: self.code.size() as u64,
            nominal_size: self.nominal_size,
            min_distance: self.min_distance,
            linear: self.code.linearity().as_option(),
            k: self.code.dimension(),
        }
    }
}

pub fn gray_image(code: &TraceCode) -> Result<GrayImage> {
    code.check_budget()?;
    let m = code.m();
    let nominal = code.ring().size() as u64;
    let bits = nominal * 2 * code.len() as u64;
    if bits > GRAY_MAX_BITS {
        return Err(Error::BudgetExceeded {
            kind: format!("{} gray image", code.kind()),
            m,
            max_m: m - 1,
        });
    }
    let words: Vec<Word> = code.codebook()?.iter().map(|c| gray_word(c)).collect();
    let image = BinaryCode::from_words_classified(2 * code.len(), words)?;
    let d = image.min_distance()?;
    Ok(GrayImage {
        code: image,
        nominal_size: nominal,
        min_distance: d,
    })
}

fn collect_distinct(
    code: &TraceCode,
    f: impl Fn(&[u8]) -> Option<Word> + Sync,
) -> Result<BinaryCode> {
    code.check_budget()?;
    let m = code.m();
    let set = (0..code.ring().size())
        .into_par_iter()
        .fold(HashSet::new, |mut s, i| {
            let c = code.codeword(crate::gr4m::RingElement::from_index(m, i));
            if let Some(w) = f(&c) {
                s.insert(w);
            }
            s
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    BinaryCode::from_words_classified(code.len(), set.into_iter().collect())
}

/// `{c mod 2 : c ∈ C}`.
pub fn residue_code(code: &TraceCode) -> Result<BinaryCode> {
    collect_distinct(code, |c| {
        Some(pack(&c.iter().map(|x| x & 1).collect::<Vec<_>>()))
    })
}

/// `{x : 2x ∈ C}`.
pub fn torsion_code(code: &TraceCode) -> Result<BinaryCode> {
    collect_distinct(code, |c| {
        c.iter()
            .all(|x| x & 1 == 0)
            .then(|| pack(&c.iter().map(|x| x >> 1).collect::<Vec<_>>()))
    })
}

/// For a Z4-linear code `C`: `φ(C)` is linear iff `2(α ⋆ β) ∈ C` for all
/// `α, β ∈ C`. The product `2(α ⋆ β)` only depends on the residues, so the
/// pairs range over distinct residue words.
pub fn gray_linear_by_z4_criterion(codebook: &[Vec<u8>]) -> bool {
    let set: HashSet<&[u8]> = codebook.iter().map(|c| c.as_slice()).collect();
    let mut residues: Vec<Vec<u8>> = codebook
        .iter()
        .map(|c| c.iter().map(|x| x & 1).collect())
        .collect();
    residues.sort();
    residues.dedup();
    residues.par_iter().enumerate().all(|(i, a)| {
        residues[i..].iter().all(|b| {
            let prod: Vec<u8> = a.iter().zip(b).map(|(x, y)| 2 * (x & y)).collect();
            set.contains(prod.as_slice())
        })
    })
}

/// `Σ_{i<k} ⌈d / q^i⌉`.
pub fn griesmer_bound(k: u32, d: u64, q: u64) -> u64 {
    let mut total = 0;
    let mut qi = 1u64;
    for _ in 0..k {
        total += d.div_ceil(qi);
        qi = qi.saturating_mul(q);
    }
    total
}

pub fn meets_griesmer(n: u64, k: u32, d: u64, q: u64) -> bool {
    n == griesmer_bound(k, d, q)
}

/// Linear of dimension `m` with every nonzero word of weight `2^(2m-2)`.
pub fn simplex_replication_check(tor: &BinaryCode, m: u32) -> bool {
    if tor.dimension() != Some(m) {
        return false;
    }
    let target = 1u64 << (2 * m - 2);
    tor.weight_distribution().nonzero_weights() == [target]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{search_quadratic, BooleanFunction, SearchTarget};
    use crate::gf2m::FieldElement;
    use crate::gr4m::GaloisRing;
    use crate::trace_codes::{lee_weight, DefiningSet};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ring(m: u32) -> Arc<GaloisRing> {
        Arc::new(GaloisRing::new(m).unwrap())
    }

    fn skew(m: u32) -> TraceCode {
        let r = ring(m);
        TraceCode::new(Arc::clone(&r), DefiningSet::skew(&r))
    }

    #[test]
    fn gray_symbols() {
        assert_eq!(gray_map(&[0]), vec![0, 0]);
        assert_eq!(gray_map(&[1]), vec![0, 1]);
        assert_eq!(gray_map(&[2]), vec![1, 1]);
        assert_eq!(gray_map(&[3]), vec![1, 0]);
        assert_eq!(gray_map(&[0, 0, 0]), vec![0; 6]);
        assert_eq!(gray_map(&[1, 2]), vec![0, 1, 1, 1]);
        assert_eq!(gray_word(&[1, 2]), pack(&gray_map(&[1, 2])));
    }

    proptest! {
        #[test]
        fn gray_is_an_isometry(v in proptest::collection::vec(0u8..4, 0..=64)) {
            let bits = gray_map(&v);
            prop_assert_eq!(bits.len(), 2 * v.len());
            prop_assert_eq!(hamming_weight(&pack(&bits)), lee_weight(&v) as u64);
            prop_assert_eq!(unpack(&gray_word(&v), 2 * v.len()), bits);
        }
    }

    #[test]
    fn repetition_and_bad_codes() {
        let rep = BinaryCode::from_bit_vectors(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(rep.min_distance().unwrap(), 2);
        assert_eq!(rep.dimension(), Some(1));
        let single = BinaryCode::from_bit_vectors(2, &[vec![1, 1]]).unwrap();
        assert_eq!(single.min_distance(), Err(Error::EmptyCode));
        let empty = BinaryCode::from_words(3, vec![]).unwrap();
        assert_eq!(empty.min_distance(), Err(Error::EmptyCode));
        let nonlinear =
            BinaryCode::from_bit_vectors(3, &[vec![0, 0, 0], vec![1, 1, 0], vec![0, 1, 1]])
                .unwrap();
        assert_eq!(nonlinear.linearity(), Linearity::No);
        assert!(!nonlinear.is_closed_under_xor());
        assert_eq!(nonlinear.min_distance().unwrap(), 2);
    }

    #[test]
    fn ideal_gray_images_are_linear() {
        let vs: Vec<Vec<u8>> = (0..8u8)
            .map(|x| (0..3).map(|i| 2 * ((x >> i) & 1)).collect())
            .collect();
        let image = BinaryCode::from_words_classified(6, vs.iter().map(|v| gray_word(v)).collect())
            .unwrap();
        assert_eq!(image.linearity(), Linearity::Yes);
        assert!(image.is_closed_under_xor());
        assert!(gray_linear_by_z4_criterion(&vs));
    }

    #[test]
    fn simplex_code() {
        for m in 2..=5u32 {
            let vs: Vec<Vec<u8>> = (0..1u32 << m)
                .map(|a| {
                    (1..1u32 << m)
                        .map(|x| ((a & x).count_ones() & 1) as u8)
                        .collect()
                })
                .collect();
            let c = BinaryCode::from_bit_vectors((1 << m) - 1, &vs).unwrap();
            assert_eq!(c.dimension(), Some(m));
            assert_eq!(c.min_distance().unwrap(), 1 << (m - 1));
        }
    }

    #[test]
    fn griesmer_values() {
        assert_eq!(griesmer_bound(1, 1, 2), 1);
        assert_eq!(griesmer_bound(4, 6, 2), 12);
        for m in 2..=8u32 {
            let q = 1u64 << m;
            assert_eq!(griesmer_bound(m, 1 << (2 * m - 2), 2), (q - 1) * q / 2);
        }
        assert!(meets_griesmer(12, 4, 6, 2));
        assert!(!meets_griesmer(13, 4, 6, 2));
    }

    #[test]
    fn skew_gray_parameters() {
        for (m, expected) in [(2, (12, 16, 6)), (3, (56, 64, 28))] {
            let p = gray_image(&skew(m)).unwrap().params();
            assert_eq!((p.length, p.distinct, p.min_distance), expected);
        }
    }

    #[test]
    fn linearity_tests_agree() {
        for m in 2..=3 {
            let code = skew(m);
            let image = gray_image(&code).unwrap();
            let z4 = gray_linear_by_z4_criterion(&code.codebook().unwrap());
            assert_eq!(image.code.is_closed_under_xor(), z4);
            assert_eq!(image.code.linearity().as_option(), Some(z4));
        }
    }

    #[test]
    fn skew_torsion_and_residue() {
        let tor = torsion_code(&skew(2)).unwrap();
        assert_eq!((tor.length(), tor.dimension()), (6, Some(2)));
        assert_eq!(tor.min_distance().unwrap(), 4);
        for m in 2..=5 {
            let code = skew(m);
            let tor = torsion_code(&code).unwrap();
            let res = residue_code(&code).unwrap();
            assert!(simplex_replication_check(&tor, m));
            assert!(res.dimension().unwrap() <= m);
            assert!(res.words().iter().all(|w| tor.contains(w)));
        }
        let mixed =
            BinaryCode::from_bit_vectors(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
                .unwrap();
        assert!(!simplex_replication_check(&mixed, 2));
    }

    #[test]
    fn residue_of_trace_support_code() {
        let r = ring(2);
        let f = BooleanFunction::affine(Arc::clone(r.field()), FieldElement::ONE, false).unwrap();
        let code = TraceCode::new(Arc::clone(&r), DefiningSet::support(&r, &f).unwrap());
        let field = r.field();
        let expected: Vec<Vec<u8>> = field
            .elements()
            .map(|a| {
                f.support()
                    .iter()
                    .map(|&x| field.trace(field.mul(a, x)))
                    .collect()
            })
            .collect();
        assert_eq!(
            residue_code(&code).unwrap(),
            BinaryCode::from_bit_vectors(2, &expected).unwrap()
        );
    }

    #[test]
    fn torsion_is_the_binary_trace_code() {
        for m in 2..=4 {
            let r = ring(m);
            let field = r.field();
            let code = skew(m);
            let bars: Vec<FieldElement> = code
                .defining_set()
                .elements()
                .iter()
                .map(|d| d.reduce())
                .collect();
            let expected: Vec<Vec<u8>> = field
                .elements()
                .map(|b| bars.iter().map(|&d| field.trace(field.mul(b, d))).collect())
                .collect();
            assert_eq!(
                torsion_code(&code).unwrap(),
                BinaryCode::from_bit_vectors(code.len(), &expected).unwrap()
            );
        }
    }

    #[test]
    fn bent_and_semibent_torsion() {
        let r = ring(4);
        let f = search_quadratic(r.field(), SearchTarget::Bent).unwrap();
        let code = TraceCode::new(Arc::clone(&r), DefiningSet::support(&r, &f).unwrap());
        let tor = torsion_code(&code).unwrap();
        assert_eq!(
            (tor.length(), tor.dimension(), tor.min_distance().unwrap()),
            (6, Some(4), 2)
        );
        let r = ring(5);
        let f = search_quadratic(r.field(), SearchTarget::SemiBent).unwrap();
        let code = TraceCode::new(Arc::clone(&r), DefiningSet::support(&r, &f).unwrap());
        let tor = torsion_code(&code).unwrap();
        assert_eq!(
            (tor.length(), tor.dimension(), tor.min_distance().unwrap()),
            (12, Some(5), 4)
        );
    }

    #[test]
    fn hex_and_summary() {
        let c = BinaryCode::from_bit_vectors(
            5,
            &[vec![0; 5], vec![1, 0, 0, 0, 1], vec![0, 1, 0, 0, 0]],
        )
        .unwrap();
        assert_eq!(c.to_hex_lines(), "00\n02\n11\n");
        let json = serde_json::to_value(c.summary().unwrap()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"n": 5, "M": 3, "d": 1, "linear": false})
        );
        let rep = BinaryCode::from_bit_vectors(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        let json = serde_json::to_value(rep.summary().unwrap()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"n": 2, "M": 2, "d": 2, "linear": true, "k": 1})
        );
    }

    #[test]
    fn span_rank_basics() {
        let w = |b: &[u8]| pack(b);
        assert_eq!(span_rank(&[]), 0);
        assert_eq!(span_rank(&[w(&[1, 1, 0]), w(&[0, 1, 1]), w(&[1, 0, 1])]), 2);
        let wide: Vec<Word> = (0..70)
            .map(|i| {
                let mut v = vec![0u8; 70];
                v[i] = 1;
                pack(&v)
            })
            .collect();
        assert_eq!(span_rank(&wide), 70);
    }
}
