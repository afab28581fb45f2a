//! Moment distributions of `χ_Λ(e^{itF})` and the HCIZ integral.
//!
//! For a signed projection `F` (trace zero, `Tr F² = r`) the function
//! `t ↦ χ_Λ(e^{itF})` is positive definite on the circle, so its Fourier
//! coefficients `M(k)` form a probability distribution on `ℤ`. Moments of
//! that distribution are computed two ways: by brute-force GT enumeration
//! and through closed forms obtained from the partition-sum expansion of
//! `J(B,r,n) = ∫ Tr(UFU⁻¹B)ⁿ dU`.
//!
//! Haar sampling uses `ChaCha20Rng`: chunk `c` of [`MC_CHUNK`] samples draws
//! from stream `c` of the generator seeded with `seed`, so estimates do not
//! depend on the number of worker threads.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{weight_multiplicities, GtBudget, Partition, Signature};
use crate::scalar::rational_to_f64;
use crate::symfunc::{parse_rational, schur_dim, schur_jacobi_trudi, sym_group_dim};
use crate::{determinant, Error, Rational, Result, C64};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `F = Σ_{i<r/2} E_{o+i,o+i} − Σ_{r/2≤i<r} E_{o+i,o+i}` inside `M_d`, with
/// `o` the offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceZeroSigned {
    r: usize,
    d: usize,
    offset: usize,
}

impl TraceZeroSigned {
    pub fn new(r: usize, d: usize) -> Result<Self> {
        Self::with_offset(r, d, 0)
    }

    pub fn with_offset(r: usize, d: usize, offset: usize) -> Result<Self> {
        if r == 0 || !r.is_multiple_of(2) {
            return Err(Error::Precondition(format!("r must be even and positive, got {r}")));
        }
        if r + offset > d {
            return Err(Error::LengthViolation { needed: r + offset, available: d });
        }
        Ok(TraceZeroSigned { r, d, offset })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// `⟨w, F⟩` for a weight `w ∈ ℤ^d`.
    pub fn pairing(&self, w: &[i64]) -> i64 {
        let h = self.r / 2;
        let o = self.offset;
        w[o..o + h].iter().sum::<i64>() - w[o + h..o + self.r].iter().sum::<i64>()
    }

    pub fn spectrum(&self) -> HermitianSpectrum {
        let h = self.r / 2;
        HermitianSpectrum(
            (0..self.d)
                .map(|i| match i.checked_sub(self.offset) {
                    Some(j) if j < h => q(1),
                    Some(j) if j < self.r => q(-1),
                    _ => Rational::zero(),
                })
                .collect(),
        )
    }

    /// All admissible `r` for `d` (even, `2 ≤ r ≤ d`).
    pub fn admissible_r(d: usize) -> impl Iterator<Item = usize> {
        (2..=d).step_by(2)
    }
}

/// Eigenvalues of a diagonal Hermitian matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct HermitianSpectrum(Vec<Rational>);

impl TryFrom<Vec<String>> for HermitianSpectrum {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().and_then(HermitianSpectrum::new)
    }
}

impl From<HermitianSpectrum> for Vec<String> {
    fn from(s: HermitianSpectrum) -> Self {
        s.0.iter().map(|x| x.to_string()).collect()
    }
}

impl HermitianSpectrum {
    pub fn new(eigenvalues: Vec<Rational>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::Precondition("spectrum must be nonempty".into()));
        }
        Ok(HermitianSpectrum(eigenvalues))
    }

    pub fn from_integers(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| q(x)).collect())
    }

    /// Comma-separated rationals.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?)
    }

    pub fn from_signature(sig: &Signature) -> Self {
        HermitianSpectrum(sig.entries().iter().map(|&x| q(x)).collect())
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn trace(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `Tr Bᵖ`.
    pub fn trace_pow(&self, p: u32) -> Rational {
        self.0.iter().map(|x| num_traits::pow(x.clone(), p as usize)).sum()
    }

    pub fn add(&self, other: &HermitianSpectrum) -> Result<HermitianSpectrum> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch { expected: self.d(), found: other.d() });
        }
        Ok(HermitianSpectrum(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }
}

/// `ρ_d = ((d−1)/2, (d−3)/2, …, −(d−1)/2)`.
pub fn rho(d: usize) -> HermitianSpectrum {
    let two = q(2);
    HermitianSpectrum((0..d).map(|i| q(d as i64 - 1 - 2 * i as i64) / &two).collect())
}

/// `B − (Tr B/d)·1`.
pub fn center(b: &HermitianSpectrum) -> HermitianSpectrum {
    let mean = b.trace() / q(b.d() as i64);
    HermitianSpectrum(b.0.iter().map(|x| x - &mean).collect())
}

/// Finitely supported probability distribution on `ℤ`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    probs: BTreeMap<i64, Rational>,
}

impl WeightDistribution {
    /// Checks nonnegativity and total mass 1; zero entries are dropped.
    pub fn new(probs: BTreeMap<i64, Rational>) -> Result<Self> {
        if probs.values().any(|p| p.is_negative()) {
            return Err(Error::Precondition("negative probability".into()));
        }
        let total: Rational = probs.values().sum();
        if !total.is_one() {
            return Err(Error::Precondition(format!("total mass {total}, expected 1")));
        }
        Ok(WeightDistribution { probs: probs.into_iter().filter(|(_, p)| !p.is_zero()).collect() })
    }

    pub fn point(k: i64) -> Self {
        WeightDistribution { probs: BTreeMap::from([(k, Rational::one())]) }
    }

    pub fn probs(&self) -> &BTreeMap<i64, Rational> {
        &self.probs
    }

    pub fn prob(&self, k: i64) -> Rational {
        self.probs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.probs.iter().all(|(k, p)| self.prob(-k) == *p)
    }

    pub fn moment(&self, p: u32) -> Rational {
        self.probs.iter().map(|(k, m)| q(k.pow(p)) * m).sum()
    }

    /// Distribution of the sum of independent variables.
    pub fn convolve(&self, other: &WeightDistribution) -> WeightDistribution {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (a, pa) in &self.probs {
            for (b, pb) in &other.probs {
                *out.entry(a + b).or_insert_with(Rational::zero) += pa * pb;
            }
        }
        WeightDistribution { probs: out }
    }

    /// `⟨k⁴⟩/⟨k²⟩²`, `None` when the second moment vanishes.
    pub fn kurtosis_ratio(&self) -> Option<Rational> {
        let m2 = self.moment(2);
        (!m2.is_zero()).then(|| self.moment(4) / (&m2 * &m2))
    }
}

impl Serialize for WeightDistribution {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let m: BTreeMap<i64, String> = self.probs.iter().map(|(k, p)| (*k, p.to_string())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<De: serde::Deserializer<'de>>(d: De) -> std::result::Result<Self, De::Error> {
        let m = BTreeMap::<i64, String>::deserialize(d)?;
        let probs = m
            .into_iter()
            .map(|(k, v)| parse_rational(&v).map(|p| (k, p)))
            .collect::<Result<BTreeMap<_, _>>>()
            .map_err(serde::de::Error::custom)?;
        WeightDistribution::new(probs).map_err(serde::de::Error::custom)
    }
}

/// Fourier coefficients of `χ_Λ(e^{itF})` by GT enumeration.
pub fn weight_distribution(sig: &Signature, f: &TraceZeroSigned, budget: &GtBudget) -> Result<WeightDistribution> {
    if sig.d() != f.d() {
        return Err(Error::DimensionMismatch { expected: f.d(), found: sig.d() });
    }
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    let mut dim = 0u64;
    for (w, m) in weight_multiplicities(sig, budget)? {
        *counts.entry(f.pairing(&w)).or_insert(0) += m;
        dim += m;
    }
    let dim = q(dim as i64);
    Ok(WeightDistribution { probs: counts.into_iter().map(|(k, c)| (k, q(c as i64) / &dim)).collect() })
}

/// `Σ kᵖ M(k)`.
pub fn moment(dist: &WeightDistribution, p: u32) -> Rational {
    dist.moment(p)
}

/// `∫ Tr(UAU⁻¹B)ⁿ dU = Σ_{λ⊢n} f^λ s_λ(A) s_λ(B) / s_λ(1_d)`.
pub fn hciz_series(a: &HermitianSpectrum, b: &HermitianSpectrum, n: u32) -> Result<Rational> {
    let d = a.d();
    if b.d() != d {
        return Err(Error::DimensionMismatch { expected: d, found: b.d() });
    }
    let mut total = Rational::zero();
    for lambda in Partition::all_of_bounded(n, d) {
        let sa = schur_jacobi_trudi(&lambda, a.eigenvalues())?;
        if sa.is_zero() {
            continue;
        }
        let sb = schur_jacobi_trudi(&lambda, b.eigenvalues())?;
        let f = Rational::from_integer(BigInt::from(sym_group_dim(&lambda)));
        let dim = Rational::from_integer(BigInt::from(schur_dim(&lambda, d)?));
        total += f * sa * sb / dim;
    }
    Ok(total)
}

/// `J(B,r,n)` by the partition sum.
pub fn j_series(b: &HermitianSpectrum, f: &TraceZeroSigned, n: u32) -> Result<Rational> {
    hciz_series(&f.spectrum(), b, n)
}

/// Closed forms of `J(B,r,n)` for `n ∈ {2,4}` and traceless `B`.
pub fn j_closed(b: &HermitianSpectrum, r: usize, n: u32) -> Result<Rational> {
    if !b.trace().is_zero() {
        return Err(Error::Precondition("J closed form needs Tr B = 0".into()));
    }
    let d = q(b.d() as i64);
    let r = q(r as i64);
    let d2 = &d * &d;
    match n {
        2 => Ok(&r * b.trace_pow(2) / (&d2 - q(1))),
        4 => {
            if b.d() < 4 {
                return Err(Error::Precondition(format!("n = 4 closed form needs d ≥ 4, got {}", b.d())));
            }
            let t2 = b.trace_pow(2);
            let t4 = b.trace_pow(4);
            let d4 = &d2 * &d2;
            let common = (&d2 - q(1)) * (&d2 - q(4)) * (&d2 - q(9));
            let first =
                q(3) * &r * ((&d4 - q(6) * &d2 + q(18)) * &r - q(2) * &d * (q(2) * &d2 - q(3))) / (&d2 * &common);
            let second = q(6) * &r * ((q(2) * &d2 - q(3)) * &r - &d * (&d2 + q(1))) / (&d * &common);
            Ok(first * &t2 * &t2 - second * t4)
        }
        _ => Err(Error::Precondition(format!("closed form only for n ∈ {{2,4}}, got {n}"))),
    }
}

/// `Λ̂ = Λ − (ΣΛ_i/d)·1`.
pub fn lambda_hat(sig: &Signature) -> HermitianSpectrum {
    center(&HermitianSpectrum::from_signature(sig))
}

/// `m(Λ,r,2) = r·Tr(2Λ̂ρ_d + Λ̂²)/(d²−1)`.
pub fn moment2_closed(sig: &Signature, f: &TraceZeroSigned) -> Result<Rational> {
    let d = sig.d();
    if f.d() != d {
        return Err(Error::DimensionMismatch { expected: f.d(), found: d });
    }
    if d < 2 {
        return Err(Error::Precondition("second moment needs d ≥ 2".into()));
    }
    let h = lambda_hat(sig);
    let rho = rho(d);
    let tr: Rational = h.0.iter().zip(&rho.0).map(|(l, p)| q(2) * l * p + l * l).sum();
    Ok(q(f.r() as i64) * tr / q((d * d) as i64 - 1))
}

/// `m(Λ,r,4) = J(ρ_d+Λ̂,r,4) − 6·m(Λ,r,2)·J(ρ_d,r,2) − J(ρ_d,r,4)`.
pub fn moment4_closed(sig: &Signature, f: &TraceZeroSigned) -> Result<Rational> {
    let d = sig.d();
    if d < 4 {
        return Err(Error::Precondition(format!("fourth moment closed form needs d ≥ 4, got {d}")));
    }
    let m2 = moment2_closed(sig, f)?;
    let rho = rho(d);
    let shifted = rho.add(&lambda_hat(sig))?;
    let r = f.r();
    Ok(j_closed(&shifted, r, 4)? - q(6) * m2 * j_closed(&rho, r, 2)? - j_closed(&rho, r, 4)?)
}

/// Both sides of `m4 ≤ C₁·m2² + C₂·m2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub m2: String,
    pub m4: String,
    pub c1: String,
    pub c2: String,
    pub bound: String,
    pub holds: bool,
}

/// `C₁ = 3(d²−1)(d⁴−6d²+18)/(d²(d²−4)(d²−9))`, `C₂ = 2(d⁴−2d²−3)/((d²−4)(d²−9))`.
pub fn estimate_coefficients(d: usize) -> Result<(Rational, Rational)> {
    if d < 4 {
        return Err(Error::Precondition(format!("estimate needs d ≥ 4, got {d}")));
    }
    let d2 = q((d * d) as i64);
    let d4 = &d2 * &d2;
    let c1 = q(3) * (&d2 - q(1)) * (&d4 - q(6) * &d2 + q(18)) / (&d2 * (&d2 - q(4)) * (&d2 - q(9)));
    let c2 = q(2) * (&d4 - q(2) * &d2 - q(3)) / ((&d2 - q(4)) * (&d2 - q(9)));
    Ok((c1, c2))
}

pub fn estimate_check(sig: &Signature, f: &TraceZeroSigned) -> Result<EstimateReport> {
    let d = sig.d();
    if 3 * f.r() < 2 * d {
        return Err(Error::Precondition(format!("estimate needs r ≥ 2d/3, got r = {}, d = {d}", f.r())));
    }
    let (c1, c2) = estimate_coefficients(d)?;
    let m2 = moment2_closed(sig, f)?;
    let m4 = moment4_closed(sig, f)?;
    let bound = &c1 * &m2 * &m2 + &c2 * &m2;
    Ok(EstimateReport {
        holds: m4 <= bound,
        m2: m2.to_string(),
        m4: m4.to_string(),
        c1: c1.to_string(),
        c2: c2.to_string(),
        bound: bound.to_string(),
    })
}

/// `Σ a_i b_i` directly and as `Σ_{i<d} S_i (b_i − b_{i+1})` with
/// `S_i = a_1 + … + a_i`. For nonincreasing `a`, `b` with `Σ a_i = 0`
/// every `S_i ≥ 0`, so the pairing is nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelPairing {
    pub direct: Rational,
    pub summed_by_parts: Rational,
    pub partial_sums: Vec<Rational>,
}

pub fn abel_pairing(a: &[Rational], b: &[Rational]) -> Result<AbelPairing> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let nonincreasing = |v: &[Rational]| v.windows(2).all(|w| w[0] >= w[1]);
    if !nonincreasing(a) || !nonincreasing(b) {
        return Err(Error::Precondition("both vectors must be nonincreasing".into()));
    }
    if !a.iter().sum::<Rational>().is_zero() {
        return Err(Error::Precondition("a must sum to zero".into()));
    }
    let direct: Rational = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let mut partial_sums = Vec::with_capacity(a.len());
    let mut s = Rational::zero();
    for x in a {
        s += x;
        partial_sums.push(s.clone());
    }
    let summed_by_parts = (0..a.len().saturating_sub(1)).map(|i| &partial_sums[i] * (&b[i] - &b[i + 1])).sum();
    Ok(AbelPairing { direct, summed_by_parts, partial_sums })
}

/// Convolution of the distributions of a product of characters.
pub fn product_moment_identity(dists: &[WeightDistribution]) -> WeightDistribution {
    dists.iter().fold(WeightDistribution::point(0), |acc, d| acc.convolve(d))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdditivityReport {
    pub m2_direct: String,
    pub m2_sum: String,
    pub m4_direct: String,
    pub m4_sum: String,
    pub holds: bool,
}

/// `m2 = Σ m2ᵢ` and `m4 = Σ m4ᵢ + 6 Σ_{i<j} m2ᵢ m2ⱼ` against the convolution.
/// Meaningful for symmetric inputs only.
pub fn additivity_check(dists: &[WeightDistribution]) -> AdditivityReport {
    let conv = product_moment_identity(dists);
    let m2s: Vec<Rational> = dists.iter().map(|d| d.moment(2)).collect();
    let m2_sum: Rational = m2s.iter().sum();
    let mut m4_sum: Rational = dists.iter().map(|d| d.moment(4)).sum();
    for i in 0..m2s.len() {
        for j in i + 1..m2s.len() {
            m4_sum += q(6) * &m2s[i] * &m2s[j];
        }
    }
    let (m2, m4) = (conv.moment(2), conv.moment(4));
    AdditivityReport {
        holds: m2 == m2_sum && m4 == m4_sum,
        m2_direct: m2.to_string(),
        m2_sum: m2_sum.to_string(),
        m4_direct: m4.to_string(),
        m4_sum: m4_sum.to_string(),
    }
}

/// Samples per Monte Carlo chunk; fixed so results do not depend on threads.
pub const MC_CHUNK: usize = 1024;

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `diag R` moved into `Q`.
pub fn haar_unitary<R: rand::Rng>(d: usize, rng: &mut R) -> DMatrix<C64> {
    let z = DMatrix::<C64>::from_fn(d, d, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    let qr = z.qr();
    let mut qm = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..d {
            qm[(i, j)] *= phase;
        }
    }
    qm
}

/// Integrand for [`hciz_monte_carlo`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McMode {
    /// `Tr(UAU⁻¹B)ⁿ`
    Power(u32),
    /// `exp(i·Tr(UAU⁻¹B))`
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub estimate: f64,
    pub estimate_imag: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McReport {
    /// `|estimate − target| ≤ k·stderr` (exact match when `stderr = 0`).
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.estimate - target).abs() <= k * self.stderr + 1e-12 * target.abs().max(1.0)
    }
}

/// Sample mean of a complex function of a Haar unitary; `stderr` refers to
/// the real part.
pub fn haar_mean<F>(d: usize, samples: usize, seed: u64, f: F) -> McReport
where
    F: Fn(&DMatrix<C64>) -> C64 + Sync,
{
    let chunks = samples.div_ceil(MC_CHUNK);
    let partial: Vec<(f64, f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = MC_CHUNK.min(samples - c * MC_CHUNK);
            let (mut s, mut s2, mut si) = (0.0, 0.0, 0.0);
            for _ in 0..n {
                let v = f(&haar_unitary(d, &mut rng));
                s += v.re;
                s2 += v.re * v.re;
                si += v.im;
            }
            (s, s2, si)
        })
        .collect();
    let (s, s2, si) = partial.iter().fold((0.0, 0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let n = samples as f64;
    let mean = s / n;
    let var = if samples > 1 { ((s2 - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    McReport { estimate: mean, estimate_imag: si / n, stderr: (var / n).sqrt(), samples, seed }
}

/// Monte Carlo estimate of the HCIZ integrand over Haar measure.
pub fn hciz_monte_carlo(
    a: &HermitianSpectrum,
    b: &HermitianSpectrum,
    mode: McMode,
    samples: usize,
    seed: u64,
) -> Result<McReport> {
    let d = a.d();
    if b.d() != d {
        return Err(Error::DimensionMismatch { expected: d, found: b.d() });
    }
    if samples < 1000 {
        return Err(Error::Precondition(format!("need at least 1000 samples, got {samples}")));
    }
    let (av, bv) = (a.to_f64(), b.to_f64());
    Ok(haar_mean(d, samples, seed, |u| {
        // Tr(UAU*B) = Σ_ij b_i |U_ij|² a_j for diagonal A, B
        let mut t = 0.0;
        for i in 0..d {
            for j in 0..d {
                t += bv[i] * u[(i, j)].norm_sqr() * av[j];
            }
        }
        match mode {
            McMode::Power(n) => C64::new(t.powi(n as i32), 0.0),
            McMode::Exponential => C64::from_polar(1.0, t),
        }
    }))
}

/// `∏_{i<d} i! / (√−1)^{d(d−1)/2} · det(e^{iα_jβ_k}) / (Δ(A)Δ(B))` for simple
/// spectra.
pub fn iz_determinant(a: &[f64], b: &[f64]) -> Result<C64> {
    let d = a.len();
    if b.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: b.len() });
    }
    let vandermonde = |x: &[f64]| {
        let mut p = 1.0;
        for i in 0..d {
            for j in i + 1..d {
                p *= x[i] - x[j];
            }
        }
        p
    };
    let (va, vb) = (vandermonde(a), vandermonde(b));
    if va == 0.0 || vb == 0.0 {
        return Err(Error::Precondition("determinant formula needs simple spectra".into()));
    }
    let m: Vec<Vec<C64>> = a.iter().map(|&x| b.iter().map(|&y| C64::from_polar(1.0, x * y)).collect()).collect();
    let fact: f64 = (1..d).map(|i| (1..=i).map(|k| k as f64).product::<f64>()).product();
    let ipow = C64::new(0.0, 1.0).powu((d * (d - 1) / 2) as u32);
    Ok(determinant(m) * fact / ipow / (va * vb))
}

/// Haar sanity statistics: means of `Tr U` and `|Tr U|²`.
pub fn haar_trace_moments(d: usize, samples: usize, seed: u64) -> (McReport, McReport) {
    let tr = haar_mean(d, samples, seed, |u| u.trace());
    let tr2 = haar_mean(d, samples, seed, |u| C64::new(u.trace().norm_sqr(), 0.0));
    (tr, tr2)
}
