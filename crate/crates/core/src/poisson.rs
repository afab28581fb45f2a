//! Poisson series for characters of stable AF algebras.
//!
//! Characters `χ_{τ,τ′}(u) = exp(τ(u−1) + τ′(u*−1))` expand as power series
//! in the normalized traces `τ_{i,n}(u)` whose coefficients are product
//! Poisson masses. This module evaluates those masses, the associated Markov
//! kernel `p_a(x,y) = ∏ e^{−a_i} a_i^{y_i−x_i}/(y_i−x_i)!`, its total
//! variation tail bound and the Stirling-type identity behind it.
//!
//! Everything is floating point. Masses are computed in log space, so large
//! arguments do not overflow, and every report carries the truncation tail.

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::ucharacters::DiagonalUnitary;
use crate::{Error, Rational, Result, C64};

fn f<F: Float>(x: f64) -> F {
    F::from(x).expect("representable")
}

/// `ln n!` by direct summation for small `n`, Stirling series above 170.
pub fn ln_factorial<F: Float>(n: u64) -> F {
    if n <= 170 {
        return (2..=n).fold(F::zero(), |acc, k| acc + f::<F>(k as f64).ln());
    }
    let x = f::<F>(n as f64);
    let two_pi = f::<F>(std::f64::consts::TAU);
    let x2 = x * x;
    x * x.ln() - x + (two_pi * x).ln() / f(2.0) + F::one() / (f::<F>(12.0) * x) - F::one() / (f::<F>(360.0) * x2 * x)
        + F::one() / (f::<F>(1260.0) * x2 * x2 * x)
}

/// `e^{−λ} λ^k / k!`.
pub fn poisson_pmf<F: Float>(lambda: F, k: u64) -> F {
    if lambda.is_zero() {
        return if k == 0 { F::one() } else { F::zero() };
    }
    (f::<F>(k as f64) * lambda.ln() - lambda - ln_factorial::<F>(k)).exp()
}

/// `P(X > n)` for `X ~ Poisson(λ)`.
pub fn poisson_tail<F: Float>(lambda: F, n: u64) -> F {
    let head = (0..=n).fold(F::zero(), |acc, k| acc + poisson_pmf(lambda, k));
    (F::one() - head).max(F::zero())
}

fn check_rates<F: Float>(a: &[F]) -> Result<()> {
    if a.is_empty() || a.iter().any(|&x| !(x > F::zero()) || !x.is_finite()) {
        return Err(Error::Precondition("rates must be positive and finite".into()));
    }
    Ok(())
}

/// `p_a(x, y)`; zero unless `y ≥ x` coordinatewise.
pub fn kernel<F: Float>(a: &[F], x: &[u64], y: &[u64]) -> Result<F> {
    check_rates(a)?;
    if x.len() != a.len() || y.len() != a.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: x.len().max(y.len()) });
    }
    let mut p = F::one();
    for ((&ai, &xi), &yi) in a.iter().zip(x).zip(y) {
        if yi < xi {
            return Ok(F::zero());
        }
        p = p * poisson_pmf(ai, yi - xi);
    }
    Ok(p)
}

/// `{value, bound, truncation, passed}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub value: f64,
    pub bound: f64,
    pub truncation: usize,
    pub passed: bool,
}

/// `Σ_{y ≤ x+T} p_a(x, y)` with the missing tail mass as bound.
pub fn row_mass(a: &[f64], truncation: u64) -> Result<CheckReport> {
    check_rates(a)?;
    let mass: f64 = a.iter().map(|&ai| (0..=truncation).map(|k| poisson_pmf(ai, k)).sum::<f64>()).product();
    let tail: f64 = a.iter().map(|&ai| poisson_tail(ai, truncation)).sum();
    Ok(CheckReport {
        value: mass,
        bound: tail,
        truncation: truncation as usize,
        passed: (1.0 - mass).abs() <= tail + 1e-12,
    })
}

/// Default tolerance for [`kstep_semigroup_check`].
pub const SEMIGROUP_TOLERANCE: f64 = 1e-10;

/// Largest `(T+1)^m` grid evaluated by [`kstep_semigroup_check`].
pub const MAX_GRID: u64 = 2_000_000;

/// Max over `y ∈ [0,T]^m` of `|p_a^{*k}(0,y) − p_{ka}(0,y)|`. Increments are
/// nonnegative, so the truncated convolution is exact on the grid and the
/// deviation is pure rounding; `bound` reports the mass beyond the grid.
pub fn kstep_semigroup_check(a: &[f64], k: u32, truncation: u64) -> Result<CheckReport> {
    check_rates(a)?;
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let grid = (truncation + 1).checked_pow(a.len() as u32).unwrap_or(u64::MAX);
    if grid > MAX_GRID {
        return Err(Error::budget("semigroup grid points", grid, MAX_GRID));
    }
    let t = truncation as usize;
    // per-coordinate k-fold convolutions and direct masses
    let mut conv = Vec::new();
    let mut direct = Vec::new();
    for &ai in a {
        let step: Vec<f64> = (0..=t).map(|j| poisson_pmf(ai, j as u64)).collect();
        let mut c = step.clone();
        for _ in 1..k {
            c = (0..=t).map(|y| (0..=y).map(|j| c[j] * step[y - j]).sum()).collect();
        }
        conv.push(c);
        direct.push((0..=t).map(|j| poisson_pmf(ai * k as f64, j as u64)).collect::<Vec<f64>>());
    }
    let mut worst = 0.0f64;
    let mut idx = vec![0usize; a.len()];
    loop {
        let pc: f64 = idx.iter().enumerate().map(|(i, &j)| conv[i][j]).product();
        let pd: f64 = idx.iter().enumerate().map(|(i, &j)| direct[i][j]).product();
        worst = worst.max((pc - pd).abs());
        let mut i = 0;
        while i < idx.len() && idx[i] == t {
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
        idx[i] += 1;
    }
    let bound: f64 = a.iter().map(|&ai| poisson_tail(ai * k as f64, truncation)).sum();
    Ok(CheckReport { value: worst, bound, truncation: t, passed: worst < SEMIGROUP_TOLERANCE })
}

/// Partial sums of `Σ_{n≥1} |t^{n−1}/(n−1)! − t^n/n!|` against
/// `−1 + 2t^{⌊t⌋}/⌊t⌋!`. Scaled fields are multiplied by `e^{−t}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StirlingReport {
    pub t: f64,
    pub terms: u64,
    pub lhs_partial: f64,
    pub rhs_closed: f64,
    /// Exact remainder `t^N/N!` once `N ≥ t`.
    pub tail: f64,
    pub scaled_lhs: f64,
    pub scaled_closed: f64,
    /// `|lhs + tail − rhs| / rhs`.
    pub relative_error: f64,
    pub passed: bool,
}

/// Terms used by [`stirling_identity`] when none are given.
pub fn default_terms(t: f64) -> u64 {
    (t + 20.0 * t.sqrt() + 40.0).ceil() as u64
}

pub fn stirling_identity<F: Float>(t: F, terms: Option<u64>, tolerance: F) -> Result<StirlingReport> {
    if !(t > F::zero()) || !t.is_finite() {
        return Err(Error::Precondition("t must be positive".into()));
    }
    let tf = t.to_f64().expect("finite");
    let n = terms.unwrap_or_else(|| default_terms(tf));
    if (n as f64) < tf {
        return Err(Error::Precondition(format!("need at least ⌈t⌉ = {} terms", tf.ceil())));
    }
    // s_k = e^{−t} t^k / k!
    let mut scaled = F::zero();
    let mut prev = poisson_pmf(t, 0);
    for k in 1..=n {
        let cur = poisson_pmf(t, k);
        scaled = scaled + (prev - cur).abs();
        prev = cur;
    }
    let floor = tf.floor() as u64;
    let scaled_closed = f::<F>(2.0) * poisson_pmf(t, floor) - (-t).exp();
    let scaled_tail = prev;
    let et = t.exp();
    let rel = ((scaled + scaled_tail - scaled_closed) / scaled_closed).abs();
    Ok(StirlingReport {
        t: tf,
        terms: n,
        lhs_partial: (scaled * et).to_f64().unwrap_or(f64::INFINITY),
        rhs_closed: (scaled_closed * et).to_f64().unwrap_or(f64::INFINITY),
        tail: (scaled_tail * et).to_f64().unwrap_or(f64::INFINITY),
        scaled_lhs: scaled.to_f64().expect("finite"),
        scaled_closed: scaled_closed.to_f64().expect("finite"),
        relative_error: rel.to_f64().expect("finite"),
        passed: rel <= tolerance,
    })
}

/// `−1 + 2t^{⌊t⌋}/⌊t⌋!` for rational `t > 0`.
pub fn stirling_closed_exact(t: &Rational) -> Result<Rational> {
    use num_traits::{Signed, ToPrimitive};
    if !t.is_positive() {
        return Err(Error::Precondition("t must be positive".into()));
    }
    let floor =
        t.floor().to_integer().to_u64().filter(|&f| f <= 10_000).ok_or_else(|| Error::budget("⌊t⌋", t, 10_000))?;
    let mut term = Rational::from_integer(1.into());
    for k in 1..=floor {
        term = term * t / Rational::from_integer(k.into());
    }
    Ok(term * Rational::from_integer(2.into()) - Rational::from_integer(1.into()))
}

/// `Σ_z |p_{ka}(0,z) − p_{ka}(e_i,z)| = e^{−t}(1 + Σ_{l≥1}|t^l/l! − t^{l−1}/(l−1)!|)`
/// with `t = k·a_i`, evaluated by the closed form `2e^{−t}t^{⌊t⌋}/⌊t⌋!`.
pub fn tv_bound<F: Float>(a: F, k: u64) -> Result<F> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    check_rates(&[a])?;
    let t = a * f(k as f64);
    let floor = t.floor().to_u64().expect("finite");
    Ok(f::<F>(2.0) * poisson_pmf(t, floor))
}

/// The same quantity by direct summation of `terms` series terms.
pub fn tv_series<F: Float>(a: F, k: u64, terms: u64) -> Result<F> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    check_rates(&[a])?;
    let t = a * f(k as f64);
    let mut total = poisson_pmf(t, 0);
    for l in 1..=terms {
        total = total + (poisson_pmf(t, l) - poisson_pmf(t, l - 1)).abs();
    }
    Ok(total)
}

/// `exp(Σ τ_i(u−1) + Σ τ′_j(u*−1))`.
pub fn chi_tau_tauprime(tau_vals: &[C64], tauprime_vals: &[C64]) -> Result<C64> {
    if tau_vals.iter().chain(tauprime_vals).any(|z| z.re > 1e-12) {
        return Err(Error::Precondition("trace values of u − 1 must have nonpositive real part".into()));
    }
    let s: C64 = tau_vals.iter().chain(tauprime_vals).sum();
    Ok(s.exp())
}

/// Both sides of
/// `Σ_{i,j} (a·τ(u_j⁻¹u_i − 1) + b·τ((u_j⁻¹u_i)* − 1)) c_i c̄_j = a·τ(x*x) + b·τ(yy*)`
/// with `x = Σ c_i(u_i − 1)`, `y = Σ c_i(u_i* − 1)`, `Σ c_i = 0` and `τ` the
/// normalized trace on diagonal unitaries of a common size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalPdReport {
    pub lhs: (f64, f64),
    pub rhs: f64,
    pub passed: bool,
}

pub fn conditional_pd_check(a: f64, b: f64, us: &[DiagonalUnitary], c: &[C64]) -> Result<ConditionalPdReport> {
    if us.len() != c.len() || us.is_empty() {
        return Err(Error::DimensionMismatch { expected: us.len(), found: c.len() });
    }
    if a < 0.0 || b < 0.0 {
        return Err(Error::Precondition("trace weights must be nonnegative".into()));
    }
    if c.iter().sum::<C64>().norm() > 1e-12 {
        return Err(Error::Precondition("coefficients must sum to zero".into()));
    }
    let d = us[0].d();
    if us.iter().any(|u| u.d() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: us.iter().map(|u| u.d()).find(|&k| k != d).unwrap_or(d),
        });
    }
    let z: Vec<Vec<C64>> = us.iter().map(|u| u.eigenvalues()).collect();
    let tau = |v: &dyn Fn(usize) -> C64| (0..d).map(v).sum::<C64>() / d as f64;
    let mut lhs = C64::new(0.0, 0.0);
    for i in 0..us.len() {
        for j in 0..us.len() {
            let w = |k: usize| z[j][k].conj() * z[i][k];
            let term = tau(&|k| w(k) - 1.0) * a + tau(&|k| w(k).conj() - 1.0) * b;
            lhs += term * c[i] * c[j].conj();
        }
    }
    let x = |k: usize| (0..us.len()).map(|i| c[i] * (z[i][k] - 1.0)).sum::<C64>();
    let y = |k: usize| (0..us.len()).map(|i| c[i] * (z[i][k].conj() - 1.0)).sum::<C64>();
    let rhs = a * tau(&|k| C64::new(x(k).norm_sqr(), 0.0)).re + b * tau(&|k| C64::new(y(k).norm_sqr(), 0.0)).re;
    let passed = (lhs - rhs).norm() <= 1e-10 * rhs.abs().max(1.0) && rhs >= 0.0;
    Ok(ConditionalPdReport { lhs: (lhs.re, lhs.im), rhs, passed })
}

/// `u ⊕ 1`: the image of `u ∈ U(M_n(B))` in `U(M_m(B))`, with `B` of size
/// `u.d()/n`.
pub fn stable_embed(u: &DiagonalUnitary, n: usize, m: usize) -> Result<DiagonalUnitary> {
    if n == 0 || m < n || !u.d().is_multiple_of(n) {
        return Err(Error::Precondition(format!("cannot embed size {} from level {n} to {m}", u.d())));
    }
    Ok(u.padded(u.d() / n * (m - n)))
}

/// `τ_{i,m}(Φ_{n,m}(u)) = (n·τ_{i,n}(u) + m − n)/m`.
pub fn embedded_trace(tau_n: C64, n: usize, m: usize) -> C64 {
    (tau_n * n as f64 + (m - n) as f64) / m as f64
}

/// `Σ_{x ≤ T} Pois(λ)(x)·zˣ` and `|Σ_{x>T} …| ≤ P(X > T)`.
fn truncated_generating(lambda: f64, z: C64, truncation: u64) -> (C64, f64) {
    let mut s = C64::new(0.0, 0.0);
    let mut zp = C64::new(1.0, 0.0);
    for x in 0..=truncation {
        s += zp * poisson_pmf(lambda, x);
        zp *= z;
    }
    (s, poisson_tail(lambda, truncation))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub series: (f64, f64),
    pub closed: (f64, f64),
    #[serde(flatten)]
    pub check: CheckReport,
}

/// Truncated `Σ_{x,y} a_n(x) b_n(y) ∏ τ_{i,n}^{x_i} ∏ conj(τ′_{j,n})^{y_j}`
/// against `exp(n Σ a_i(τ_i − 1) + n Σ b_j(conj τ′_j − 1))`.
pub fn poisson_series_check(
    a: &[f64],
    b: &[f64],
    n: usize,
    tau: &[C64],
    tauprime: &[C64],
    truncation: u64,
) -> Result<SeriesReport> {
    if a.len() != tau.len() || b.len() != tauprime.len() {
        return Err(Error::DimensionMismatch { expected: a.len() + b.len(), found: tau.len() + tauprime.len() });
    }
    if a.iter().chain(b).any(|&x| !(x > 0.0)) {
        return Err(Error::Precondition("rates must be positive".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    let nf = n as f64;
    let mut series = C64::new(1.0, 0.0);
    let mut bound = 0.0;
    let mut exponent = C64::new(0.0, 0.0);
    let terms = a.iter().zip(tau).map(|(&r, &z)| (r, z)).chain(b.iter().zip(tauprime).map(|(&r, &z)| (r, z.conj())));
    for (rate, z) in terms {
        let (s, tail) = truncated_generating(nf * rate, z, truncation);
        series *= s;
        bound += tail;
        exponent += (z - 1.0) * nf * rate;
    }
    let closed = exponent.exp();
    let dev = (series - closed).norm();
    Ok(SeriesReport {
        series: (series.re, series.im),
        closed: (closed.re, closed.im),
        check: CheckReport { value: dev, bound, truncation: truncation as usize, passed: dev <= bound + 1e-12 },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReexpansionReport {
    /// Level-`n` and level-`m` series after embedding.
    pub level_deviation: f64,
    /// Largest mismatch in `a_m(z)/a_n(x)·C(z,x)n^x(m−n)^{z−x}/m^z = Pois((m−n)a)(z−x)`.
    pub kernel_deviation: f64,
    /// `Σ_w Pois((m−n)a)(w)` over the truncation window, i.e. `P^{(m−n)}1`.
    pub constant_image: f64,
    #[serde(flatten)]
    pub check: CheckReport,
}

/// Consistency of the level-`n` and level-`m` expansions under
/// `τ_m = (nτ_n + m − n)/m`.
pub fn binomial_reexpansion_check(
    a: &[f64],
    n: usize,
    m: usize,
    tau_n: &[C64],
    truncation: u64,
) -> Result<ReexpansionReport> {
    check_rates(a)?;
    if n == 0 || m <= n {
        return Err(Error::Precondition(format!("need 0 < n < m, got n = {n}, m = {m}")));
    }
    if tau_n.len() != a.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: tau_n.len() });
    }
    let tau_m: Vec<C64> = tau_n.iter().map(|&t| embedded_trace(t, n, m)).collect();
    let at_n = poisson_series_check(a, &[], n, tau_n, &[], truncation)?;
    let at_m = poisson_series_check(a, &[], m, &tau_m, &[], truncation)?;
    let level_deviation =
        (Complex::new(at_n.series.0, at_n.series.1) - Complex::new(at_m.series.0, at_m.series.1)).norm();

    let (nf, mf) = (n as f64, m as f64);
    let mut kernel_deviation = 0.0f64;
    let zmax = truncation.min(170);
    for &ai in a {
        for z in 0..=zmax {
            for x in 0..=z {
                let lhs = poisson_pmf(mf * ai, z) / poisson_pmf(nf * ai, x)
                    * (ln_factorial::<f64>(z) - ln_factorial::<f64>(x) - ln_factorial::<f64>(z - x)).exp()
                    * (nf / mf).powi(x as i32)
                    * ((mf - nf) / mf).powi((z - x) as i32);
                let rhs = poisson_pmf((mf - nf) * ai, z - x);
                if lhs.is_finite() {
                    kernel_deviation = kernel_deviation.max((lhs - rhs).abs() / rhs.max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    let diff: Vec<f64> = a.iter().map(|&ai| (mf - nf) * ai).collect();
    let mass = row_mass(&diff, truncation)?;
    let bound = at_n.check.bound + at_m.check.bound;
    let value = level_deviation.max(kernel_deviation);
    Ok(ReexpansionReport {
        level_deviation,
        kernel_deviation,
        constant_image: mass.value,
        check: CheckReport {
            value,
            bound,
            truncation: truncation as usize,
            passed: level_deviation <= bound + 1e-10 && kernel_deviation < 1e-9 && mass.passed,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn log_factorial_matches_direct_product() {
        let direct: f64 = (2..=200u64).map(|k| (k as f64).ln()).sum();
        assert!(close(ln_factorial::<f64>(200), direct, 1e-14));
        assert!(close(ln_factorial::<f64>(171), (2..=171u64).map(|k| (k as f64).ln()).sum(), 1e-14));
        assert_eq!(ln_factorial::<f64>(0), 0.0);
    }

    #[test]
    fn kernel_examples() {
        assert!(close(kernel(&[1.0], &[3], &[3]).unwrap(), (-1f64).exp(), 1e-15));
        assert_eq!(kernel(&[1.0, 1.0], &[2, 0], &[1, 5]).unwrap(), 0.0);
        assert!(close(kernel(&[1.0, 2.0], &[0, 0], &[1, 0]).unwrap(), (-3f64).exp(), 1e-15));
        assert!(kernel(&[0.0], &[0], &[0]).is_err());
        let r = row_mass(&[0.5, 1.0, 2.0], 40).unwrap();
        assert!(r.passed && (r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn semigroup_examples() {
        let r = kstep_semigroup_check(&[1.0], 1, 40).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(kstep_semigroup_check(&[1.0], 2, 40).unwrap().value < 1e-12);
        assert!(kstep_semigroup_check(&[0.5, 0.5], 3, 30).unwrap().value < 1e-10);
        assert!(kstep_semigroup_check(&[0.3, 1.0, 2.0], 4, 30).unwrap().passed);
        assert!(matches!(kstep_semigroup_check(&[1.0; 5], 2, 40), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn stirling_examples() {
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        assert_eq!(stirling_closed_exact(&q(4, 1)).unwrap(), q(61, 3));
        assert_eq!(stirling_closed_exact(&q(1, 2)).unwrap(), q(1, 1));
        assert_eq!(stirling_closed_exact(&q(1, 1)).unwrap(), q(1, 1));
        assert!(stirling_closed_exact(&q(0, 1)).is_err());
        let r = stirling_identity(4.0, Some(200), 1e-12).unwrap();
        assert!(close(r.rhs_closed, 61.0 / 3.0, 1e-13));
        assert!(close(r.scaled_closed, (-4f64).exp() * 61.0 / 3.0, 1e-13));
        assert!(r.passed);
        assert!(close(stirling_identity(1.0, None, 1e-12).unwrap().rhs_closed, 1.0, 1e-14));
        let big = stirling_identity(100.0, None, 1e-10).unwrap();
        assert!(big.passed);
        // e^{−t}t^{⌊t⌋}/⌊t⌋! ∼ 1/√(2πt), and the closed form carries a factor 2
        let asym = 1.0 / (std::f64::consts::TAU * 100.0).sqrt();
        assert!((poisson_pmf(100.0, 100) - asym).abs() < 0.1 * asym);
        assert!((big.scaled_closed - 2.0 * asym).abs() < 0.1 * asym);
        assert!(stirling_identity(0.0, None, 1e-10).is_err());
        assert!(stirling_identity(10.0, Some(5), 1e-10).is_err());
    }

    #[test]
    fn stirling_direct_summation_oracle() {
        // plain factorials, no log space, for moderate t
        for &t in &[0.5f64, 2.5, 7.0] {
            let mut term = 1.0;
            let mut sum = 0.0;
            for n in 1..=200 {
                let next = term * t / n as f64;
                sum += (term - next).abs();
                term = next;
            }
            let fl = t.floor() as i32;
            let fact: f64 = (1..=fl).map(|k| k as f64).product();
            assert!(close(sum, -1.0 + 2.0 * t.powi(fl) / fact, 1e-13), "t={t}");
            assert!(close(stirling_identity(t, Some(200), 1e-12).unwrap().lhs_partial, sum, 1e-13));
        }
    }

    #[test]
    fn tv_examples() {
        assert!(close(tv_bound(4.0, 1).unwrap(), (-4f64).exp() * 64.0 / 3.0, 1e-14));
        assert!(close(tv_bound(1.0, 4).unwrap(), 0.3907, 1e-4));
        assert!(tv_bound(1.0, 100).unwrap() < 0.09);
        assert!(tv_bound(1.0, 0).is_err());
        for &(a, k) in &[(0.3, 7u64), (1.0, 4), (2.5, 3), (1.0, 100)] {
            let s = tv_series(a, k, 600).unwrap();
            assert!((tv_bound(a, k).unwrap() - s).abs() < 1e-12);
        }
        let b32 = tv_bound(1.0f32, 100).unwrap();
        assert!((b32 as f64 - tv_bound(1.0f64, 100).unwrap()).abs() < 1e-5);
    }

    #[test]
    fn tv_is_monotone() {
        for a in [0.2, 1.0, 3.0] {
            let start = (1.0 / a).ceil() as u64;
            let vals: Vec<f64> = (start..start + 200).map(|k| tv_bound(a, k).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[1] <= w[0] + 1e-15), "a={a}");
            assert!(*vals.last().unwrap() < vals[0]);
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_tau_tauprime(&[C64::new(0.0, 0.0)], &[]).unwrap(), C64::new(1.0, 0.0));
        let s = 0.3;
        assert!(close(chi_tau_tauprime(&[C64::new(-2.0 * s, 0.0)], &[]).unwrap().re, (-2.0 * s).exp(), 1e-15));
        let v = chi_tau_tauprime(&[C64::new(-0.2, 0.5)], &[C64::new(-0.1, -0.7)]).unwrap();
        assert!(close(v.norm(), (-0.3f64).exp(), 1e-15) && v.norm() <= 1.0);
        assert!(chi_tau_tauprime(&[C64::new(0.1, 0.0)], &[]).is_err());
    }

    #[test]
    fn conditional_positive_definiteness() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(2..6);
            let us: Vec<DiagonalUnitary> = (0..n)
                .map(|_| DiagonalUnitary::from_turns_f64(&(0..3).map(|_| rng.gen::<f64>()).collect::<Vec<_>>()))
                .collect();
            let mut c: Vec<C64> = (0..n).map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
            let mean = c.iter().sum::<C64>() / n as f64;
            c.iter_mut().for_each(|x| *x -= mean);
            let r = conditional_pd_check(0.7, 1.3, &us, &c).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.lhs.1.abs() < 1e-12);
        }
        let u = DiagonalUnitary::identity(2);
        let bad = conditional_pd_check(1.0, 1.0, &[u.clone(), u], &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(bad.is_err());
    }

    #[test]
    fn series_examples() {
        let one = C64::new(1.0, 0.0);
        let r = poisson_series_check(&[1.0], &[2.0], 3, &[one], &[one], 60).unwrap();
        assert!(r.check.passed && close(r.series.0, 1.0, 1e-12));
        let tau = C64::new(0.5, 0.5);
        let r = poisson_series_check(&[1.0], &[], 2, &[tau], &[], 60).unwrap();
        let want = ((tau - 1.0) * 2.0).exp();
        assert!(r.check.value < 1e-10 && close(r.closed.0, want.re, 1e-15));
        // a = b, τ = τ′: modulus is exp(2na·Re(τ − 1))
        let r = poisson_series_check(&[0.7], &[0.7], 2, &[tau], &[tau], 60).unwrap();
        let modulus = C64::new(r.series.0, r.series.1).norm();
        assert!(close(modulus, (2.0 * 2.0 * 0.7 * (tau.re - 1.0)).exp(), 1e-12));
    }

    #[test]
    fn stable_embedding_traces() {
        let u = DiagonalUnitary::parse("0.1,0.25,0.6,0.9").unwrap();
        let n = 2;
        let m = 5;
        let v = stable_embed(&u, n, m).unwrap();
        assert_eq!(v.d(), 10);
        let tn = u.trace() / u.d() as f64;
        let tm = v.trace() / v.d() as f64;
        assert!((tm - embedded_trace(tn, n, m)).norm() < 1e-15);
        assert!(stable_embed(&u, 3, 5).is_err());
    }

    #[test]
    fn reexpansion_examples() {
        let r = binomial_reexpansion_check(&[1.0], 3, 4, &[C64::new(1.0, 0.0)], 60).unwrap();
        assert!(r.check.passed && (r.constant_image - 1.0).abs() < 1e-12);
        let tau = C64::new(0.2, -0.6);
        let r = binomial_reexpansion_check(&[0.8, 1.5], 2, 5, &[tau, tau.conj()], 80).unwrap();
        assert!(r.check.passed, "{r:?}");
        assert!(r.level_deviation < 1e-10);
        assert!(binomial_reexpansion_check(&[1.0], 3, 3, &[tau], 60).is_err());
    }
}
