//! Partitions, signatures and Gelfand–Tsetlin patterns.
//!
//! A [`Signature`] of length `d` indexes an irreducible representation of
//! `U(d)`. Its positive part and negated negative part are two partitions
//! `λ` and `μ`, written `{μ̄;λ}`; [`Signature::from_pair`] and
//! [`Signature::to_pair`] convert between the two descriptions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Weakly decreasing tuple of nonnegative integers. Trailing zeros are dropped
/// on construction, so equality is equality of Young diagrams.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts.iter().map(|&p| p as i64).collect()));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parses `"2,1,1"`; the empty string is the empty partition.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Self::empty());
        }
        let parts = text
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `|λ|`
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// `l(λ)`, the number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols).map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32).collect();
        Partition(parts)
    }

    /// Diagram inclusion `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Parts padded with zeros to length `d`.
    pub fn padded(&self, d: usize) -> Result<Vec<u32>> {
        if self.length() > d {
            return Err(Error::LengthViolation { needed: self.length(), available: d });
        }
        let mut v = self.0.clone();
        v.resize(d, 0);
        Ok(v)
    }

    /// Multiplicities `m_k` of each part size `k ≥ 1`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Cycle-type key, e.g. `"2,1,1"`; empty string for the empty partition.
    pub fn key(&self) -> String {
        self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all_of(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(current.clone()));
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }

    /// Partitions of `n` with at most `max_len` parts.
    pub fn all_of_bounded(n: u32, max_len: usize) -> Vec<Partition> {
        Self::all_of(n).into_iter().filter(|p| p.length() <= max_len).collect()
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|&p| p < 0 || p > u32::MAX as i64) {
            return Err(Error::InvalidPartition(v));
        }
        Partition::new(v.into_iter().map(|p| p as u32).collect())
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.0.into_iter().map(|x| x as i64).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// Weakly decreasing integer `d`-tuple, `d ≥ 1`. The length is semantic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SignatureRepr", into = "SignatureRepr")]
pub struct Signature(Vec<i64>);

#[derive(Serialize, Deserialize)]
struct SignatureRepr {
    d: usize,
    entries: Vec<i64>,
}

impl TryFrom<SignatureRepr> for Signature {
    type Error = Error;
    fn try_from(r: SignatureRepr) -> Result<Self> {
        if r.d != r.entries.len() {
            return Err(Error::DimensionMismatch { expected: r.d, found: r.entries.len() });
        }
        Signature::new(r.entries)
    }
}

impl From<Signature> for SignatureRepr {
    fn from(s: Signature) -> Self {
        SignatureRepr { d: s.0.len(), entries: s.0 }
    }
}

/// Result of [`Signature::shift_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftDecomposition {
    /// `Λ = shift·1_d + {μ̄;λ}` with a constant middle run.
    Decomposed { shift: i64, lambda: Partition, mu: Partition },
    /// The number of non-constant outer pairs exceeds the requested bound.
    NoConstantMiddle { outer: usize, max_outer: usize },
}

impl Signature {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSignature(entries));
        }
        Ok(Signature(entries))
    }

    pub fn zero(d: usize) -> Self {
        Signature(vec![0; d.max(1)])
    }

    /// Parses `"1,0,-1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// `Σ Λ_i`, the degree of the central character.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min_entry(&self) -> i64 {
        *self.0.last().expect("signature is non-empty")
    }

    pub fn max_entry(&self) -> i64 {
        self.0[0]
    }

    /// `{μ̄;λ}` of length `d`: `(λ_1,…,λ_p,0,…,0,−μ_q,…,−μ_1)`.
    pub fn from_pair(lambda: &Partition, mu: &Partition, d: usize) -> Result<Self> {
        let needed = lambda.length() + mu.length();
        if needed > d || d == 0 {
            return Err(Error::LengthViolation { needed, available: d });
        }
        let mut entries = vec![0i64; d];
        for (i, &p) in lambda.parts().iter().enumerate() {
            entries[i] = p as i64;
        }
        for (j, &m) in mu.parts().iter().enumerate() {
            entries[d - 1 - j] = -(m as i64);
        }
        Ok(Signature(entries))
    }

    /// Inverse of [`Signature::from_pair`].
    pub fn to_pair(&self) -> (Partition, Partition) {
        let lambda = self.0.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect();
        let mu = self.0.iter().rev().filter(|&&x| x < 0).map(|&x| (-x) as u32).collect();
        (Partition(lambda), Partition(mu))
    }

    /// Adds `a` to every entry (tensoring with `det^a`).
    pub fn shifted(&self, a: i64) -> Signature {
        Signature(self.0.iter().map(|&x| x + a).collect())
    }

    /// Contragredient signature `(−Λ_d,…,−Λ_1)`.
    pub fn dual(&self) -> Signature {
        Signature(self.0.iter().rev().map(|&x| -x).collect())
    }

    /// Smallest `a ≥ 0` with `Λ + a` a partition, and that partition.
    pub fn to_polynomial(&self) -> (i64, Partition) {
        let a = (-self.min_entry()).max(0);
        let parts = self.0.iter().map(|&x| (x + a) as u32).collect();
        (a, Partition::new(parts).expect("shifted signature is decreasing"))
    }

    /// Signature of length `d` from a partition padded with zeros, shifted by `−a`.
    pub fn from_partition(p: &Partition, d: usize, shift: i64) -> Result<Self> {
        let padded = p.padded(d)?;
        if d == 0 {
            return Err(Error::LengthViolation { needed: 1, available: 0 });
        }
        Ok(Signature(padded.into_iter().map(|x| x as i64 - shift).collect()))
    }

    /// Number of outer index pairs `j` with `Λ_j > Λ_{d+1−j}`.
    pub fn outer_width(&self) -> usize {
        let d = self.d();
        (0..d / 2).rev().find(|&j| self.0[j] > self.0[d - 1 - j]).map_or(0, |j| j + 1)
    }

    /// Splits off the determinant twist: `Λ = a·1_d + {μ̄;λ}` where `a` is the
    /// value of the constant middle run `Λ_{l+1} = … = Λ_{d−l}`.
    ///
    /// `max_outer` bounds `l`; `None` uses `⌊d/4⌋`.
    pub fn shift_decompose(&self, max_outer: Option<usize>) -> ShiftDecomposition {
        let d = self.d();
        let max_outer = max_outer.unwrap_or(d / 4);
        let l = self.outer_width();
        if l > max_outer {
            return ShiftDecomposition::NoConstantMiddle { outer: l, max_outer };
        }
        // l ≤ d/2, so index l is in range; when l == d/2 it is the first entry
        // of the lower half.
        let shift = self.0[l.min(d - 1)];
        let (lambda, mu) = self.shifted(-shift).to_pair();
        ShiftDecomposition::Decomposed { shift, lambda, mu }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Limits on Gelfand–Tsetlin enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GtBudget {
    pub max_d: usize,
    /// Upper bound on `Λ_1 − Λ_d`.
    pub max_spread: i64,
}

impl Default for GtBudget {
    fn default() -> Self {
        GtBudget { max_d: 8, max_spread: 32 }
    }
}

impl GtBudget {
    pub fn check(&self, sig: &Signature) -> Result<()> {
        if sig.d() > self.max_d {
            return Err(Error::budget("GT enumeration rank d", sig.d(), self.max_d));
        }
        let spread = sig.max_entry() - sig.min_entry();
        if spread > self.max_spread {
            return Err(Error::budget("GT enumeration entry spread", spread, self.max_spread));
        }
        Ok(())
    }
}

/// Triangular interlacing array; `rows[k]` has length `k + 1` and the last
/// row is the signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
}

impl GtPattern {
    /// Validates interlacing.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::DimensionMismatch { expected: k + 1, found: row.len() });
            }
        }
        for k in 1..rows.len() {
            let (upper, lower) = (&rows[k], &rows[k - 1]);
            for i in 0..lower.len() {
                if !(upper[i] >= lower[i] && lower[i] >= upper[i + 1]) {
                    return Err(Error::Precondition(format!("rows {k} and {} do not interlace", k - 1)));
                }
            }
        }
        Ok(GtPattern { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn top(&self) -> &[i64] {
        self.rows.last().map(|r| r.as_slice()).unwrap_or(&[])
    }
}

/// `w_k = Σ row_k − Σ row_{k−1}`.
pub fn gt_weight(pattern: &GtPattern) -> Vec<i64> {
    let mut prev = 0i64;
    pattern
        .rows
        .iter()
        .map(|row| {
            let s: i64 = row.iter().sum();
            let w = s - prev;
            prev = s;
            w
        })
        .collect()
}

/// Depth-first odometer over interlacing patterns with fixed top row.
///
/// Row `k` ranges over the box `upper[i+1] ≤ x_i ≤ upper[i]` determined by
/// row `k + 1`; the bottom row is the fastest digit.
pub struct GtPatterns {
    rows: Vec<Vec<i64>>,
    done: bool,
}

impl GtPatterns {
    fn reset_below(&mut self, k: usize) {
        for r in (0..k).rev() {
            let upper = self.rows[r + 1].clone();
            self.rows[r] = (0..=r).map(|i| upper[i + 1]).collect();
        }
    }

    fn advance(&mut self) -> bool {
        let d = self.rows.len();
        for k in 0..d.saturating_sub(1) {
            let upper = self.rows[k + 1].clone();
            let row = &mut self.rows[k];
            for i in 0..row.len() {
                if row[i] < upper[i] {
                    row[i] += 1;
                    row[..i].copy_from_slice(&upper[1..=i]);
                    self.reset_below(k);
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for GtPatterns {
    type Item = GtPattern;

    fn next(&mut self) -> Option<GtPattern> {
        if self.done {
            return None;
        }
        let current = GtPattern { rows: self.rows.clone() };
        if !self.advance() {
            self.done = true;
        }
        Some(current)
    }
}

/// Every GT pattern with top row `sig`, each exactly once.
pub fn enumerate_gt_patterns(sig: &Signature, budget: &GtBudget) -> Result<GtPatterns> {
    budget.check(sig)?;
    let d = sig.d();
    let mut it = GtPatterns { rows: vec![Vec::new(); d], done: false };
    it.rows[d - 1] = sig.entries().to_vec();
    it.reset_below(d - 1);
    Ok(it)
}

/// Weight multiset of `π_Λ`: each GT weight with its multiplicity.
pub fn weight_multiplicities(sig: &Signature, budget: &GtBudget) -> Result<BTreeMap<Vec<i64>, u64>> {
    let mut out = BTreeMap::new();
    for p in enumerate_gt_patterns(sig, budget)? {
        *out.entry(gt_weight(&p)).or_insert(0) += 1;
    }
    Ok(out)
}

/// All signatures of length `d` with entries in `[lo, hi]`, lexicographically
/// decreasing.
pub fn signatures_in_box(d: usize, lo: i64, hi: i64) -> Vec<Signature> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(d: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        if cur.len() == d {
            out.push(Signature(cur.clone()));
            return;
        }
        for v in (lo..=max).rev() {
            cur.push(v);
            rec(d, lo, v, cur, out);
            cur.pop();
        }
    }
    if d > 0 && lo <= hi {
        rec(d, lo, hi, &mut cur, &mut out);
    }
    out
}
