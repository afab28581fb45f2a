//! Irreducible characters of `U(d)`.
//!
//! Unitaries are diagonal (characters are class functions) and stored as
//! eigenvalue angles in turns. When every angle is a multiple of a quarter
//! turn the eigenvalues lie in `Q(i)` and characters are evaluated exactly.
//!
//! Decompositions use the det-shift reduction: a signature is moved to a
//! polynomial one by adding `a·1_d`, decomposed with Littlewood–Richardson
//! coefficients, and shifted back.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{weight_multiplicities, GtBudget, Partition, Signature};
use crate::scalar::rational_to_f64;
use crate::symfunc::{
    bialternant, lr_coefficient, mixed_jacobi_trudi, schur_dim, schur_jacobi_trudi, weight_sum, weyl_dim,
};
use crate::{Error, GaussianRational, Rational, Result, Scalar, C64};

/// Eigenvalue angle in turns (`z = e^{2πi·t}`).
#[derive(Clone, Debug, PartialEq)]
pub enum Turn {
    Exact(Rational),
    Float(f64),
}

impl Turn {
    /// Accepts `"1/4"`, `"0.25"`, `"-3"` exactly; scientific notation falls
    /// back to floating point.
    pub fn parse(text: &str) -> Result<Turn> {
        let t = text.trim();
        if t.contains('/') {
            return crate::symfunc::parse_rational(t).map(Turn::Exact);
        }
        if t.contains(['e', 'E']) {
            return t.parse::<f64>().map(Turn::Float).map_err(|e| Error::Parse(format!("{t:?}: {e}")));
        }
        let (neg, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("not an angle: {t:?}")));
        }
        let num: BigInt = format!("{int}{frac}").trim_start_matches('0').parse().unwrap_or_else(|_| BigInt::zero());
        let den = BigInt::from(10).pow(frac.len() as u32);
        let q = Rational::new(num, den);
        Ok(Turn::Exact(if neg { -q } else { q }))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Turn::Exact(q) => rational_to_f64(q),
            Turn::Float(f) => *f,
        }
    }

    /// `e^{2πi t}`, reduced mod 1 first so large angles keep precision.
    pub fn eigenvalue(&self) -> C64 {
        if let Some(z) = self.gaussian() {
            return z.to_c64();
        }
        let t = match self {
            Turn::Exact(q) => rational_to_f64(&(q - q.floor())),
            Turn::Float(f) => f - f.floor(),
        };
        C64::from_polar(1.0, std::f64::consts::TAU * t)
    }

    /// Exact eigenvalue when `4t` is an integer.
    pub fn gaussian(&self) -> Option<GaussianRational> {
        let Turn::Exact(q) = self else { return None };
        let four = q * Rational::from_integer(4.into());
        if !four.is_integer() {
            return None;
        }
        let k = ((four.to_integer() % 4i32 + 4i32) % 4i32).to_i64().unwrap_or(0);
        let (re, im) = match k {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Some(Complex::new(Rational::from_integer(re.into()), Rational::from_integer(im.into())))
    }

    pub fn add(&self, other: &Turn) -> Turn {
        match (self, other) {
            (Turn::Exact(a), Turn::Exact(b)) => Turn::Exact(a + b),
            _ => Turn::Float(self.to_f64() + other.to_f64()),
        }
    }

    pub fn scale(&self, k: i64) -> Turn {
        match self {
            Turn::Exact(a) => Turn::Exact(a * Rational::from_integer(k.into())),
            Turn::Float(f) => Turn::Float(f * k as f64),
        }
    }

    pub fn zero() -> Turn {
        Turn::Exact(Rational::zero())
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Turn::Exact(q) => write!(f, "{q}"),
            Turn::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Diagonal unitary `diag(e^{2πi t_1}, …, e^{2πi t_d})`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalUnitary {
    angles: Vec<Turn>,
}

impl DiagonalUnitary {
    pub fn new(angles: Vec<Turn>) -> Self {
        DiagonalUnitary { angles }
    }

    pub fn from_turns(turns: Vec<Rational>) -> Self {
        Self::new(turns.into_iter().map(Turn::Exact).collect())
    }

    pub fn from_turns_f64(turns: &[f64]) -> Self {
        Self::new(turns.iter().map(|&t| Turn::Float(t)).collect())
    }

    pub fn identity(d: usize) -> Self {
        Self::new(vec![Turn::zero(); d])
    }

    /// Comma-separated angles in turns.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',').map(Turn::parse).collect::<Result<Vec<_>>>().map(Self::new)
    }

    pub fn d(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[Turn] {
        &self.angles
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.angles.iter().map(Turn::eigenvalue).collect()
    }

    pub fn gaussian_eigenvalues(&self) -> Option<Vec<GaussianRational>> {
        self.angles.iter().map(Turn::gaussian).collect()
    }

    pub fn trace(&self) -> C64 {
        self.eigenvalues().iter().sum()
    }

    /// Smallest distance between two eigenvalues; `∞` for `d ≤ 1`.
    pub fn min_gap(&self) -> f64 {
        let z = self.eigenvalues();
        let mut gap = f64::INFINITY;
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                gap = gap.min((z[i] - z[j]).norm());
            }
        }
        gap
    }

    /// Pointwise product (both diagonal in the same basis).
    pub fn mul(&self, other: &DiagonalUnitary) -> Result<DiagonalUnitary> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch { expected: self.d(), found: other.d() });
        }
        Ok(Self::new(self.angles.iter().zip(&other.angles).map(|(a, b)| a.add(b)).collect()))
    }

    pub fn adjoint(&self) -> DiagonalUnitary {
        Self::new(self.angles.iter().map(|t| t.scale(-1)).collect())
    }

    /// Direct sum of blocks.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a DiagonalUnitary>) -> DiagonalUnitary {
        Self::new(parts.into_iter().flat_map(|u| u.angles.iter().cloned()).collect())
    }

    /// Direct sum with an identity block of size `extra`.
    pub fn padded(&self, extra: usize) -> DiagonalUnitary {
        let mut angles = self.angles.clone();
        angles.extend(std::iter::repeat_n(Turn::zero(), extra));
        Self::new(angles)
    }
}

/// Evaluation route for [`char_eval_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharMethod {
    /// Exact when possible, else bialternant, else weight sum, else Jacobi–Trudi.
    Auto,
    Bialternant,
    WeightSum,
    JacobiTrudi,
    /// Gaussian-rational Jacobi–Trudi; needs quarter-turn angles.
    Exact,
}

#[derive(Clone, Debug)]
pub struct CharConfig {
    /// Below this eigenvalue gap the bialternant is not trusted.
    pub gap_threshold: f64,
    pub gt_budget: GtBudget,
    /// Largest dimension for which the weight sum is attempted.
    pub max_weight_sum_dim: u64,
}

impl Default for CharConfig {
    fn default() -> Self {
        CharConfig { gap_threshold: 1e-8, gt_budget: GtBudget::default(), max_weight_sum_dim: 2_000_000 }
    }
}

/// `Tr π_Λ(x)` for a diagonal argument `x` over any [`Scalar`].
pub fn weyl_character<S: Scalar>(sig: &Signature, x: &[S], method: CharMethod, budget: &GtBudget) -> Result<S> {
    if sig.d() != x.len() {
        return Err(Error::DimensionMismatch { expected: sig.d(), found: x.len() });
    }
    let d = sig.d();
    match method {
        CharMethod::Bialternant => {
            let exps: Vec<i64> = sig.entries().iter().enumerate().map(|(j, &l)| l + (d - 1 - j) as i64).collect();
            bialternant(&exps, x)
        }
        CharMethod::WeightSum => Ok(weight_sum(&weight_multiplicities(sig, budget)?, x)),
        CharMethod::JacobiTrudi | CharMethod::Exact | CharMethod::Auto => {
            let (a, kappa) = sig.to_polynomial();
            let (lambda, mu) = sig.to_pair();
            if lambda.length() + mu.length() <= kappa.length().min(kappa.part(0) as usize) {
                return mixed_jacobi_trudi(&lambda, &mu, x);
            }
            let det = x.iter().fold(S::one(), |acc, xi| acc * xi.clone());
            Ok(schur_jacobi_trudi(&kappa, x)? * det.powi(-a))
        }
    }
}

/// Character value with the route that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct CharValue {
    pub value: C64,
    pub exact: Option<GaussianRational>,
    pub method: CharMethod,
}

/// `Tr π_Λ(U)`.
pub fn char_eval(sig: &Signature, u: &DiagonalUnitary) -> Result<C64> {
    Ok(char_eval_with(sig, u, CharMethod::Auto, &CharConfig::default())?.value)
}

pub fn char_eval_with(sig: &Signature, u: &DiagonalUnitary, method: CharMethod, cfg: &CharConfig) -> Result<CharValue> {
    if sig.d() != u.d() {
        return Err(Error::DimensionMismatch { expected: sig.d(), found: u.d() });
    }
    let method = match method {
        CharMethod::Auto => {
            if u.gaussian_eigenvalues().is_some() {
                CharMethod::Exact
            } else if u.min_gap() >= cfg.gap_threshold {
                CharMethod::Bialternant
            } else if cfg.gt_budget.check(sig).is_ok() && weyl_dim(sig) <= BigUint::from(cfg.max_weight_sum_dim) {
                CharMethod::WeightSum
            } else {
                CharMethod::JacobiTrudi
            }
        }
        m => m,
    };
    if method == CharMethod::Exact {
        let x = u
            .gaussian_eigenvalues()
            .ok_or_else(|| Error::Precondition("exact evaluation needs quarter-turn angles".into()))?;
        let exact = weyl_character(sig, &x, CharMethod::Exact, &cfg.gt_budget)?;
        return Ok(CharValue { value: exact.to_c64(), exact: Some(exact), method });
    }
    let value = weyl_character(sig, &u.eigenvalues(), method, &cfg.gt_budget)?;
    Ok(CharValue { value, exact: None, method })
}

/// `χ_Λ(U) = Tr π_Λ(U) / dim π_Λ`.
pub fn normalized_char(sig: &Signature, u: &DiagonalUnitary) -> Result<C64> {
    let v = char_eval_with(sig, u, CharMethod::Auto, &CharConfig::default())?;
    Ok(normalize(&v, sig))
}

fn normalize(v: &CharValue, sig: &Signature) -> C64 {
    let dim = Rational::from_integer(BigInt::from(weyl_dim(sig)));
    match &v.exact {
        Some(z) => Complex::new(&z.re / &dim, &z.im / &dim).to_c64(),
        None => v.value / rational_to_f64(&dim),
    }
}

/// Exact `χ_Λ(U)` for quarter-turn unitaries.
pub fn normalized_char_exact(sig: &Signature, u: &DiagonalUnitary) -> Result<GaussianRational> {
    let v = char_eval_with(sig, u, CharMethod::Exact, &CharConfig::default())?;
    let z = v.exact.expect("exact route returns an exact value");
    let dim = Rational::from_integer(BigInt::from(weyl_dim(sig)));
    Ok(Complex::new(z.re / &dim, z.im / dim))
}

#[derive(Clone, Copy, Debug)]
pub struct DecompositionBudget {
    pub max_dim: u64,
}

impl Default for DecompositionBudget {
    fn default() -> Self {
        DecompositionBudget { max_dim: 10_000_000 }
    }
}

impl DecompositionBudget {
    fn check(&self, dim: &BigUint) -> Result<()> {
        if *dim > BigUint::from(self.max_dim) {
            return Err(Error::budget("representation dimension", dim, self.max_dim));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorComponent {
    pub signature: Signature,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComponent {
    /// `(U(d1) signature, U(d2) signature)`
    pub signature: (Signature, Signature),
    pub multiplicity: u64,
}

/// Restriction of `π_Λ` from `U(d1+d2)` to `U(d1)×U(d2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub d1: usize,
    pub d2: usize,
    pub components: Vec<BlockComponent>,
}

impl BlockDecomposition {
    /// `Σ mult·dim·dim`.
    pub fn total_dim(&self) -> BigUint {
        self.components.iter().map(|c| weyl_dim(&c.signature.0) * weyl_dim(&c.signature.1) * c.multiplicity).sum()
    }
}

/// Partitions `α ⊆ shape` with at most `max_len` rows.
fn sub_partitions(shape: &Partition, max_len: usize) -> Vec<Partition> {
    let rows = shape.length().min(max_len);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(rows);
    fn rec(shape: &Partition, rows: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if cur.len() == rows {
            out.push(Partition::new(cur.clone()).expect("built decreasing"));
            return;
        }
        let i = cur.len();
        let cap = shape.part(i).min(cur.last().copied().unwrap_or(u32::MAX));
        for v in 0..=cap {
            cur.push(v);
            rec(shape, rows, cur, out);
            cur.pop();
        }
    }
    rec(shape, rows, &mut cur, &mut out);
    out
}

pub fn restrict_to_blocks(sig: &Signature, d1: usize, d2: usize) -> Result<BlockDecomposition> {
    restrict_to_blocks_with(sig, d1, d2, &DecompositionBudget::default())
}

pub fn restrict_to_blocks_with(
    sig: &Signature,
    d1: usize,
    d2: usize,
    budget: &DecompositionBudget,
) -> Result<BlockDecomposition> {
    if d1 == 0 || d2 == 0 || d1 + d2 != sig.d() {
        return Err(Error::DimensionMismatch { expected: sig.d(), found: d1 + d2 });
    }
    budget.check(&weyl_dim(sig))?;
    let (a, kappa) = sig.to_polynomial();
    let subs = sub_partitions(&kappa, d2);
    let mut components = Vec::new();
    for alpha in sub_partitions(&kappa, d1) {
        let rest = kappa.size() - alpha.size();
        for beta in subs.iter().filter(|b| b.size() == rest) {
            let c = lr_coefficient(&kappa, &alpha, beta);
            if c > 0 {
                components.push(BlockComponent {
                    signature: (Signature::from_partition(&alpha, d1, a)?, Signature::from_partition(beta, d2, a)?),
                    multiplicity: c,
                });
            }
        }
    }
    components.sort_by(|x, y| x.signature.cmp(&y.signature));
    Ok(BlockDecomposition { d1, d2, components })
}

pub fn tensor_decompose(s1: &Signature, s2: &Signature) -> Result<Vec<TensorComponent>> {
    tensor_decompose_with(s1, s2, &DecompositionBudget::default())
}

pub fn tensor_decompose_with(
    s1: &Signature,
    s2: &Signature,
    budget: &DecompositionBudget,
) -> Result<Vec<TensorComponent>> {
    let d = s1.d();
    if s2.d() != d {
        return Err(Error::DimensionMismatch { expected: d, found: s2.d() });
    }
    budget.check(&(weyl_dim(s1) * weyl_dim(s2)))?;
    let (a1, k1) = s1.to_polynomial();
    let (a2, k2) = s2.to_polynomial();
    let total = (k1.size() + k2.size()) as u32;
    let mut out: BTreeMap<Signature, u64> = BTreeMap::new();
    for nu in Partition::all_of_bounded(total, d) {
        if !nu.contains(&k1) || !nu.contains(&k2) {
            continue;
        }
        let c = lr_coefficient(&nu, &k1, &k2);
        if c > 0 {
            *out.entry(Signature::from_partition(&nu, d, a1 + a2)?).or_insert(0) += c;
        }
    }
    Ok(out.into_iter().map(|(signature, multiplicity)| TensorComponent { signature, multiplicity }).collect())
}

pub fn tensor_total_dim(components: &[TensorComponent]) -> BigUint {
    components.iter().map(|c| weyl_dim(&c.signature) * c.multiplicity).sum()
}

/// Outcome of the size (in)equalities for a decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingReport {
    pub holds: bool,
    pub checked: usize,
    pub violations: Vec<String>,
}

fn sizes(sig: &Signature) -> (u64, u64) {
    let (l, m) = sig.to_pair();
    (l.size(), m.size())
}

/// Every component `{μ̄₃;λ₃}` of `{μ̄₁;λ₁}⊗{μ̄₂;λ₂}` must satisfy
/// `|λ₃| ≤ |λ₁|+|λ₂|`, `|μ₃| ≤ |μ₁|+|μ₂|` and equal differences.
pub fn check_tensor_branching(s1: &Signature, s2: &Signature, components: &[TensorComponent]) -> BranchingReport {
    let (l1, m1) = sizes(s1);
    let (l2, m2) = sizes(s2);
    let mut report = BranchingReport { holds: true, ..Default::default() };
    for c in components {
        let (l3, m3) = sizes(&c.signature);
        report.checked += 1;
        let ok = l3 <= l1 + l2 && m3 <= m1 + m2 && l3 as i64 - m3 as i64 == (l1 + l2) as i64 - (m1 + m2) as i64;
        if !ok {
            report.holds = false;
            report.violations.push(format!("{s1} ⊗ {s2} ∋ {}", c.signature));
        }
    }
    report
}

/// Every component `{μ̄₁;λ₁}×{μ̄₂;λ₂}` of the restriction of `{μ̄;λ}` must
/// satisfy `|λ₁|+|λ₂| ≤ |λ|`, `|μ₁|+|μ₂| ≤ |μ|` and equal differences.
pub fn check_restriction_branching(sig: &Signature, decomposition: &BlockDecomposition) -> BranchingReport {
    let (l, m) = sizes(sig);
    let mut report = BranchingReport { holds: true, ..Default::default() };
    for c in &decomposition.components {
        let (l1, m1) = sizes(&c.signature.0);
        let (l2, m2) = sizes(&c.signature.1);
        report.checked += 1;
        let ok = l1 + l2 <= l && m1 + m2 <= m && (l1 + l2) as i64 - (m1 + m2) as i64 == l as i64 - m as i64;
        if !ok {
            report.holds = false;
            report.violations.push(format!("{sig} ↓ {} × {}", c.signature.0, c.signature.1));
        }
    }
    report
}

/// A decomposition together with the data it was computed from.
#[derive(Clone, Copy, Debug)]
pub enum BranchingInput<'a> {
    Tensor { left: &'a Signature, right: &'a Signature, components: &'a [TensorComponent] },
    Restriction { signature: &'a Signature, decomposition: &'a BlockDecomposition },
}

pub fn check_branching_inequalities(input: BranchingInput<'_>) -> BranchingReport {
    match input {
        BranchingInput::Tensor { left, right, components } => check_tensor_branching(left, right, components),
        BranchingInput::Restriction { signature, decomposition } => {
            check_restriction_branching(signature, decomposition)
        }
    }
}

/// `|χ_{μ̄;λ}(U) − (Tr U/d)^{|λ|} (conj Tr U/d)^{|μ|}|`.
pub fn rational_approx_defect(lambda: &Partition, mu: &Partition, u: &DiagonalUnitary) -> Result<f64> {
    let d = u.d();
    let sig = Signature::from_pair(lambda, mu, d)?;
    let (pl, pm) = (lambda.size() as i64, mu.size() as i64);
    if let Some(x) = u.gaussian_eigenvalues() {
        let chi = normalized_char_exact(&sig, u)?;
        let dd = Rational::from_integer((d as i64).into());
        let t = x.iter().fold(GaussianRational::zero(), |acc, z| acc + z);
        let t = Complex::new(t.re / &dd, t.im / &dd);
        let target = Scalar::powi(&t, pl) * Scalar::powi(&Scalar::conj(&t), pm);
        let diff = chi - target;
        return Ok(rational_to_f64(&diff.norm_sqr()).sqrt());
    }
    let chi = normalized_char(&sig, u)?;
    let t = u.trace() / d as f64;
    let target = t.powi(pl as i32) * t.conj().powi(pm as i32);
    Ok((chi - target).norm())
}

/// `s_λ(1_d)·s_μ(1_d) − dim π_{μ̄;λ}`, the dimension not accounted for by the
/// top component of `π_λ ⊗ conj(π_μ)`.
pub fn mixed_tensor_excess(lambda: &Partition, mu: &Partition, d: usize) -> Result<BigInt> {
    let sig = Signature::from_pair(lambda, mu, d)?;
    let prod = schur_dim(lambda, d)? * schur_dim(mu, d)?;
    Ok(BigInt::from(prod) - BigInt::from(weyl_dim(&sig)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn sig(v: &[i64]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }
    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn turn_parsing() {
        assert_eq!(Turn::parse("0.25").unwrap(), Turn::Exact(Rational::new(1.into(), 4.into())));
        assert_eq!(Turn::parse("-1/3").unwrap(), Turn::Exact(Rational::new((-1).into(), 3.into())));
        assert_eq!(Turn::parse("0").unwrap(), Turn::zero());
        assert_eq!(Turn::parse(".5").unwrap(), Turn::Exact(Rational::new(1.into(), 2.into())));
        assert!(matches!(Turn::parse("1e-3").unwrap(), Turn::Float(_)));
        assert!(Turn::parse("abc").is_err());
        assert!(Turn::parse("").is_err());
    }

    #[test]
    fn quarter_turns_are_exact() {
        let u = DiagonalUnitary::parse("0.25,0.5,0.75,1,-0.25").unwrap();
        let z = u.gaussian_eigenvalues().unwrap();
        assert_eq!(z[0], Complex::new(Rational::zero(), Rational::one()));
        assert_eq!(z[3], GaussianRational::one());
        assert_eq!(z[4], Complex::new(Rational::zero(), -Rational::one()));
        assert!(DiagonalUnitary::parse("1/3").unwrap().gaussian_eigenvalues().is_none());
    }

    #[test]
    fn char_eval_examples() {
        let u = DiagonalUnitary::parse("0,0.5").unwrap();
        assert!(close(char_eval(&sig(&[1, 0]), &u).unwrap(), C64::new(0.0, 0.0)));
        let u = DiagonalUnitary::parse("0.25,-0.25").unwrap();
        assert!(close(char_eval(&sig(&[1, -1]), &u).unwrap(), C64::new(-1.0, 0.0)));
        let u = DiagonalUnitary::from_turns_f64(&[0.1, 0.37, 0.9]);
        assert!(close(char_eval(&sig(&[0, 0, 0]), &u).unwrap(), C64::new(1.0, 0.0)));
    }

    #[test]
    fn adjoint_character_matches_explicit_expansion() {
        // oracle: Tr Ad(x) = x1/x2 + 1 + x2/x1
        let u = DiagonalUnitary::from_turns_f64(&[0.13, 0.71]);
        let z = u.eigenvalues();
        let oracle = z[0] / z[1] + 1.0 + z[1] / z[0];
        for m in [CharMethod::Bialternant, CharMethod::WeightSum, CharMethod::JacobiTrudi, CharMethod::Auto] {
            let v = char_eval_with(&sig(&[1, -1]), &u, m, &CharConfig::default()).unwrap();
            assert!(close(v.value, oracle), "{m:?}");
        }
    }

    #[test]
    fn normalized_char_examples() {
        let u = DiagonalUnitary::parse("0.25,-0.25").unwrap();
        assert!(close(normalized_char(&sig(&[1, -1]), &u).unwrap(), C64::new(-1.0 / 3.0, 0.0)));
        let id = DiagonalUnitary::identity(4);
        assert!(close(normalized_char(&sig(&[3, 1, 0, -2]), &id).unwrap(), C64::new(1.0, 0.0)));
        let u = DiagonalUnitary::from_turns_f64(&[0.3, 0.0, 0.0, 0.0]);
        let z = u.eigenvalues()[0];
        assert!(close(normalized_char(&sig(&[1, 0, 0, 0]), &u).unwrap(), (z + 3.0) / 4.0));
    }

    #[test]
    fn confluent_spectrum_uses_weight_sum() {
        let u = DiagonalUnitary::from_turns_f64(&[0.1, 0.1, 0.3]);
        let v = char_eval_with(&sig(&[2, 0, -1]), &u, CharMethod::Auto, &CharConfig::default()).unwrap();
        assert_eq!(v.method, CharMethod::WeightSum);
        let jt = char_eval_with(&sig(&[2, 0, -1]), &u, CharMethod::JacobiTrudi, &CharConfig::default()).unwrap();
        assert!(close(v.value, jt.value));
    }

    #[test]
    fn dimension_mismatch() {
        let u = DiagonalUnitary::identity(3);
        assert_eq!(char_eval(&sig(&[1, 0]), &u).unwrap_err(), Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn restriction_examples() {
        let r = restrict_to_blocks(&sig(&[1, 0]), 1, 1).unwrap();
        let comps: Vec<_> = r.components.iter().map(|c| (c.signature.clone(), c.multiplicity)).collect();
        assert_eq!(comps, vec![((sig(&[0]), sig(&[1])), 1), ((sig(&[1]), sig(&[0])), 1)]);

        let r = restrict_to_blocks(&sig(&[2, 0]), 1, 1).unwrap();
        assert_eq!(r.components.len(), 3);
        assert!(r.components.iter().all(|c| c.multiplicity == 1));

        let r = restrict_to_blocks(&sig(&[1, 0, -1]), 1, 2).unwrap();
        assert_eq!(r.total_dim(), BigUint::from(8u32));
        assert_eq!(r.components.len(), 4);
    }

    #[test]
    fn tensor_examples() {
        let t = tensor_decompose(&sig(&[1, 0]), &sig(&[1, 0])).unwrap();
        assert_eq!(
            t,
            vec![
                TensorComponent { signature: sig(&[1, 1]), multiplicity: 1 },
                TensorComponent { signature: sig(&[2, 0]), multiplicity: 1 }
            ]
        );
        let t = tensor_decompose(&sig(&[1, 0, -1]), &sig(&[1, 0, -1])).unwrap();
        assert_eq!(tensor_total_dim(&t), BigUint::from(64u32));
        let s = sig(&[2, 0, -1]);
        let t = tensor_decompose(&s, &Signature::zero(3)).unwrap();
        assert_eq!(t, vec![TensorComponent { signature: s, multiplicity: 1 }]);
    }

    #[test]
    fn adjoint_square_multiplicities() {
        // sl3: 8⊗8 = 27 + 10 + 10bar + 8 + 8 + 1
        let t = tensor_decompose(&sig(&[1, 0, -1]), &sig(&[1, 0, -1])).unwrap();
        let m: BTreeMap<Vec<i64>, u64> = t.iter().map(|c| (c.signature.entries().to_vec(), c.multiplicity)).collect();
        assert_eq!(m[&vec![2, 0, -2]], 1);
        assert_eq!(m[&vec![1, 0, -1]], 2);
        assert_eq!(m[&vec![0, 0, 0]], 1);
        assert_eq!(m[&vec![2, -1, -1]], 1);
        assert_eq!(m[&vec![1, 1, -2]], 1);
        assert_eq!(m.len(), 5);
    }

    #[test]
    fn branching_examples() {
        let a = sig(&[1, 0, -1]);
        let t = tensor_decompose(&a, &a).unwrap();
        assert!(check_tensor_branching(&a, &a, &t).holds);
        let v = sig(&[1, 0]);
        let t = tensor_decompose(&v, &v).unwrap();
        let r = check_tensor_branching(&v, &v, &t);
        assert!(r.holds && r.checked == 2);
        let s = sig(&[2, 1, 0, -1]);
        let r = restrict_to_blocks(&s, 2, 2).unwrap();
        assert!(check_restriction_branching(&s, &r).holds);
        // a fabricated component is caught
        let bad = vec![TensorComponent { signature: sig(&[3, 0]), multiplicity: 1 }];
        assert!(!check_tensor_branching(&v, &v, &bad).holds);
    }

    #[test]
    fn defect_examples() {
        let u = DiagonalUnitary::parse("0.3,0.1,0.77").unwrap();
        assert!(rational_approx_defect(&p(&[1]), &p(&[]), &u).unwrap() < 1e-12);
        let central = DiagonalUnitary::parse("0.25,0.25,0.25,0.25,0.25").unwrap();
        assert_eq!(rational_approx_defect(&p(&[1]), &p(&[1]), &central).unwrap(), 0.0);
        for d in [2usize, 4, 6, 10] {
            // half the eigenvalues at 1 and half at i: Tr U = d(1+i)/2
            let mut t = vec![Rational::zero(); d / 2];
            t.extend(vec![Rational::new(1.into(), 4.into()); d / 2]);
            let u = DiagonalUnitary::from_turns(t);
            let expect = 1.0 / (2.0 * ((d * d) as f64 - 1.0));
            let got = rational_approx_defect(&p(&[1]), &p(&[1]), &u).unwrap();
            assert!((got - expect).abs() < 1e-15, "d={d}: {got} vs {expect}");
        }
    }

    #[test]
    fn routes_agree_on_random_signatures() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let budget = GtBudget::default();
        for _ in 0..200 {
            let d = rng.gen_range(1..=5);
            let mut e: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            e.sort_unstable_by(|a, b| b.cmp(a));
            let s = sig(&e);
            let t: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
            let x = DiagonalUnitary::from_turns_f64(&t).eigenvalues();
            let gt = weyl_character(&s, &x, CharMethod::WeightSum, &budget).unwrap();
            let bi = weyl_character(&s, &x, CharMethod::Bialternant, &budget).unwrap();
            let jt = weyl_character(&s, &x, CharMethod::JacobiTrudi, &budget).unwrap();
            let (l, m) = s.to_pair();
            let mixed = mixed_jacobi_trudi(&l, &m, &x).unwrap();
            let scale = gt.norm().max(1.0);
            for (name, v) in [("bialternant", bi), ("jacobi-trudi", jt), ("mixed", mixed)] {
                assert!((v - gt).norm() < 1e-9 * scale, "{name} {s}: {v} vs {gt}");
            }
        }
    }

    #[test]
    fn mixed_determinant_is_exact_on_repeated_eigenvalues() {
        let u = DiagonalUnitary::parse("0.25,0.25,0,0.5,0").unwrap();
        let x = u.gaussian_eigenvalues().unwrap();
        for e in [[2, 1, 0, -1, -1], [1, 0, 0, 0, -2], [3, 3, 0, -1, -2]] {
            let s = sig(&e);
            let (l, m) = s.to_pair();
            let gt = weyl_character(&s, &x, CharMethod::WeightSum, &GtBudget::default()).unwrap();
            assert_eq!(mixed_jacobi_trudi(&l, &m, &x).unwrap(), gt, "{s}");
        }
    }

    #[test]
    fn adjoint_character_at_large_rank() {
        // oracle: χ_adj = (|Tr U|² − 1)/(d² − 1); half the eigenvalues at i
        let d = 512usize;
        let mut t = vec![Rational::zero(); d / 2];
        t.extend(vec![Rational::new(1.into(), 4.into()); d / 2]);
        let u = DiagonalUnitary::from_turns(t);
        let mut e = vec![0i64; d];
        e[0] = 1;
        e[d - 1] = -1;
        let chi = normalized_char_exact(&Signature::new(e).unwrap(), &u).unwrap();
        let dd = (d * d) as i64;
        assert_eq!(chi.re, Rational::new((dd / 2 - 1).into(), (dd - 1).into()));
        assert!(chi.im.is_zero());
    }

    #[test]
    fn budget_exceeded_for_huge_restriction() {
        let b = DecompositionBudget { max_dim: 5 };
        assert!(matches!(restrict_to_blocks_with(&sig(&[1, 0, -1]), 1, 2, &b), Err(Error::BudgetExceeded { .. })));
    }
}
