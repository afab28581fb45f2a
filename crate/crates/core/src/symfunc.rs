//! Symmetric-function kernel.
//!
//! Everything that produces a number of combinatorial meaning (dimensions,
//! characters, expansion coefficients) is exact. Evaluation of Schur
//! polynomials is generic over [`Scalar`] and offers three independent
//! routes: the bialternant, the dual Jacobi–Trudi determinant, and the sum
//! over semistandard tableaux (GT patterns).

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{weight_multiplicities, GtBudget, Partition, Signature};
use crate::{determinant, Error, Rational, Result, Scalar};

/// Largest `|λ|` accepted by [`schur_to_power_sums`] by default.
pub const DEFAULT_POWER_SUM_BOUND: u32 = 12;

/// `dim π_Λ = ∏_{i<j} (Λ_i − Λ_j + j − i)/(j − i)`.
pub fn weyl_dim(sig: &Signature) -> BigUint {
    let e = sig.entries();
    let d = e.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        for j in i + 1..d {
            // equal entries contribute a factor of exactly 1
            if e[i] != e[j] {
                num *= (e[i] - e[j] + (j - i) as i64) as u64;
                den *= (j - i) as u64;
            }
        }
    }
    num / den
}

/// `s_λ(1_d)`, the dimension of the polynomial representation `λ` of `U(d)`.
pub fn schur_dim(lambda: &Partition, d: usize) -> Result<BigUint> {
    Ok(weyl_dim(&Signature::from_partition(lambda, d, 0)?))
}

/// Dimension of the irreducible `S_n`-module `Π_λ` by the hook length formula.
pub fn sym_group_dim(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.part(j) as usize - i - 1;
            hooks *= (arm + leg + 1) as u64;
        }
    }
    factorial(lambda.size()) / hooks
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Coefficient of `p_1^n` in `s_λ`:
/// `∏_{i<j≤l}(λ_i−λ_j+j−i)/(j−i) · ∏_i (l−i)!/(l+λ_i−i)!`.
pub fn leading_coeff(lambda: &Partition) -> Rational {
    let l = lambda.length();
    let parts = lambda.parts();
    let mut q = Rational::one();
    for i in 0..l {
        for j in i + 1..l {
            let num = parts[i] as i64 - parts[j] as i64 + (j - i) as i64;
            q *= Rational::new(num.into(), ((j - i) as i64).into());
        }
    }
    for (i, &p) in parts.iter().enumerate() {
        // 1-based row index is i + 1
        let top = factorial((l - i - 1) as u64);
        let bottom = factorial((l + p as usize - i - 1) as u64);
        q *= Rational::new(BigInt::from(top), BigInt::from(bottom));
    }
    q
}

/// Elementary symmetric polynomials `e_0..=e_max` of `x`.
pub fn elementary<S: Scalar>(x: &[S], max: usize) -> Vec<S> {
    let mut e = vec![S::zero(); max + 1];
    e[0] = S::one();
    for (count, xi) in x.iter().enumerate() {
        for k in (1..=max.min(count + 1)).rev() {
            let add = xi.clone() * e[k - 1].clone();
            e[k] = e[k].clone() + add;
        }
    }
    e
}

/// Complete homogeneous symmetric polynomials `h_0..=h_max` of `x`.
pub fn complete<S: Scalar>(x: &[S], max: usize) -> Vec<S> {
    let e = elementary(x, max.min(x.len()));
    let mut h = vec![S::zero(); max + 1];
    h[0] = S::one();
    for k in 1..=max {
        let mut acc = S::zero();
        for i in 1..=k.min(x.len()) {
            let term = e[i].clone() * h[k - i].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        h[k] = acc;
    }
    h
}

/// Power sums `p_1..=p_max` (index 0 holds `p_0 = len(x)`).
pub fn power_sums<S: Scalar>(x: &[S], max: usize) -> Vec<S> {
    let mut p = vec![S::zero(); max + 1];
    p[0] = S::from_i64(x.len() as i64);
    for xi in x {
        let mut pow = S::one();
        for slot in p.iter_mut().skip(1) {
            pow = pow * xi.clone();
            *slot = slot.clone() + pow.clone();
        }
    }
    p
}

fn check_length(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.length() > n {
        return Err(Error::LengthViolation { needed: lambda.length(), available: n });
    }
    Ok(())
}

/// `det(x_i^{λ_j+d−j}) / ∏_{i<j}(x_i − x_j)`; requires pairwise distinct `x`.
pub fn schur_bialternant<S: Scalar>(lambda: &Partition, x: &[S]) -> Result<S> {
    let d = x.len();
    let parts = lambda.padded(d)?;
    let exps: Vec<i64> = (0..d).map(|j| parts[j] as i64 + (d - 1 - j) as i64).collect();
    bialternant(&exps, x)
}

/// Shared by Schur polynomials and Weyl characters; `exps` are `Λ_j + d − j`.
pub(crate) fn bialternant<S: Scalar>(exps: &[i64], x: &[S]) -> Result<S> {
    let d = x.len();
    let mut vdm = S::one();
    for i in 0..d {
        for j in i + 1..d {
            vdm = vdm * (x[i].clone() - x[j].clone());
        }
    }
    if vdm.is_zero() {
        return Err(Error::Precondition("bialternant needs pairwise distinct arguments".into()));
    }
    let m: Vec<Vec<S>> = x.iter().map(|xi| exps.iter().map(|&e| xi.powi(e)).collect()).collect();
    Ok(determinant(m) / vdm)
}

/// Jacobi–Trudi: `det(h_{λ_i−i+j})` or `det(e_{λ'_i−i+j})`, whichever matrix
/// is smaller. Polynomial in `x`, so repeated arguments are fine.
pub fn schur_jacobi_trudi<S: Scalar>(lambda: &Partition, x: &[S]) -> Result<S> {
    check_length(lambda, x.len())?;
    if lambda.is_empty() {
        return Ok(S::one());
    }
    let conj = lambda.conjugate();
    let (shape, use_e) = if conj.length() < lambda.length() { (conj, true) } else { (lambda.clone(), false) };
    let n = shape.length();
    let max = shape.part(0) as usize + n;
    let seq = if use_e { elementary(x, max) } else { complete(x, max) };
    let m: Vec<Vec<S>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let idx = shape.part(i) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        S::zero()
                    } else {
                        seq[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(m))
}

/// Mixed Jacobi–Trudi determinant for the rational character `{μ̄;λ}` of
/// `U(d)`, `d = len(x)`: rows `h_{μ_{m+1−i}+i−j}(x⁻¹)` for `i ≤ m = l(μ)`,
/// then rows `h_{λ_{i−m}−i+j}(x)`. The matrix has size `l(λ)+l(μ)`.
pub fn mixed_jacobi_trudi<S: Scalar>(lambda: &Partition, mu: &Partition, x: &[S]) -> Result<S> {
    let (l, m) = (lambda.length(), mu.length());
    if l + m > x.len() {
        return Err(Error::LengthViolation { needed: l + m, available: x.len() });
    }
    if x.iter().any(|xi| xi.is_zero()) {
        return Err(Error::Precondition("mixed Jacobi–Trudi needs invertible arguments".into()));
    }
    let n = l + m;
    let inv: Vec<S> = x.iter().map(|xi| S::one() / xi.clone()).collect();
    let h = complete(x, lambda.part(0) as usize + n);
    let hbar = complete(&inv, mu.part(0) as usize + n);
    let pick = |seq: &[S], idx: i64| if idx < 0 { S::zero() } else { seq[idx as usize].clone() };
    let rows: Vec<Vec<S>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let (i, j) = (i as i64, j as i64);
                    if i <= m as i64 {
                        pick(&hbar, mu.part(m - i as usize) as i64 + i - j)
                    } else {
                        pick(&h, lambda.part(i as usize - m - 1) as i64 - i + j)
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(rows))
}

/// Sum over semistandard tableaux, organised as GT patterns: `Σ_w mult(w)·x^w`.
pub fn schur_tableaux<S: Scalar>(lambda: &Partition, x: &[S], budget: &GtBudget) -> Result<S> {
    if x.is_empty() {
        return Ok(if lambda.is_empty() { S::one() } else { S::zero() });
    }
    let sig = Signature::from_partition(lambda, x.len(), 0)?;
    Ok(weight_sum(&weight_multiplicities(&sig, budget)?, x))
}

pub(crate) fn weight_sum<S: Scalar>(weights: &BTreeMap<Vec<i64>, u64>, x: &[S]) -> S {
    let mut acc = S::zero();
    for (w, &mult) in weights {
        let mono = w.iter().zip(x).fold(S::one(), |m, (&e, xi)| m * xi.powi(e));
        acc = acc + S::from_i64(mult as i64) * mono;
    }
    acc
}

/// `s_λ(x)`. Bialternant when the arguments are pairwise distinct (compared
/// exactly), Jacobi–Trudi otherwise.
pub fn schur_eval<S: Scalar>(lambda: &Partition, x: &[S]) -> Result<S> {
    check_length(lambda, x.len())?;
    if all_distinct(x) {
        schur_bialternant(lambda, x)
    } else {
        schur_jacobi_trudi(lambda, x)
    }
}

/// [`schur_eval`] restricted to exact scalar types (rationals, Gaussian
/// rationals), where the two routes agree identically.
pub fn schur_eval_exact<S: Scalar>(lambda: &Partition, x: &[S]) -> Result<S> {
    if !S::EXACT {
        return Err(Error::Precondition("schur_eval_exact needs an exact scalar type".into()));
    }
    schur_eval(lambda, x)
}

pub(crate) fn all_distinct<S: Scalar>(x: &[S]) -> bool {
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| x[i] != x[j]))
}

/// `s_λ = Σ_ρ coeff(ρ)·p_ρ` over all `ρ ⊢ |λ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumExpansion {
    degree: u32,
    coefficients: BTreeMap<Partition, Rational>,
}

impl PowerSumExpansion {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<Partition, Rational> {
        &self.coefficients
    }

    pub fn coefficient(&self, rho: &Partition) -> Rational {
        self.coefficients.get(rho).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coefficients.iter().filter(|(_, c)| !c.is_zero())
    }

    /// `Σ_ρ coeff(ρ) ∏_i p_{ρ_i}(x)`.
    pub fn evaluate<S: Scalar>(&self, x: &[S]) -> S {
        let p = power_sums(x, self.degree as usize);
        self.coefficients.iter().fold(S::zero(), |acc, (rho, c)| {
            let term = rho.parts().iter().fold(S::from_rational(c), |t, &k| t * p[k as usize].clone());
            acc + term
        })
    }
}

impl Serialize for PowerSumExpansion {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.coefficients.len()))?;
        for (rho, c) in &self.coefficients {
            map.serialize_entry(&rho.key(), &format!("{}/{}", c.numer(), c.denom()))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for PowerSumExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut coefficients = BTreeMap::new();
        let mut degree = None;
        for (k, v) in raw {
            let rho = Partition::parse(&k).map_err(D::Error::custom)?;
            let n = rho.size() as u32;
            if *degree.get_or_insert(n) != n {
                return Err(D::Error::custom("cycle types of different sizes"));
            }
            coefficients.insert(rho, parse_rational(&v).map_err(D::Error::custom)?);
        }
        Ok(PowerSumExpansion { degree: degree.unwrap_or(0), coefficients })
    }
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |_| Error::Parse(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(bad)?;
            let d: BigInt = d.trim().parse().map_err(bad)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(bad)?)),
    }
}

/// `z_ρ = ∏_k k^{m_k} m_k!`, the centralizer order of cycle type `ρ`.
pub fn centralizer_order(rho: &Partition) -> BigUint {
    rho.multiplicities()
        .iter()
        .fold(BigUint::one(), |acc, (&k, &m)| acc * BigUint::from(k).pow(m) * factorial(m as u64))
}

/// Irreducible characters `χ^λ(ρ)` of `S_n` by the Murnaghan–Nakayama rule,
/// memoised on (remaining shape, position in the cycle type).
pub struct CharacterTable {
    memo: HashMap<(Partition, Partition), i64>,
}

impl Default for CharacterTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CharacterTable {
    pub fn new() -> Self {
        CharacterTable { memo: HashMap::new() }
    }

    pub fn character(&mut self, lambda: &Partition, rho: &Partition) -> i64 {
        if lambda.size() != rho.size() {
            return 0;
        }
        self.mn(lambda.clone(), rho.clone())
    }

    fn mn(&mut self, shape: Partition, rho: Partition) -> i64 {
        if rho.is_empty() {
            return if shape.is_empty() { 1 } else { 0 };
        }
        let key = (shape, rho);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (shape, rho) = key;
        let k = rho.part(0) as i64;
        let rest = Partition::new(rho.parts()[1..].to_vec()).expect("tail of a partition");
        let l = shape.length();
        // beta numbers λ_i + (l − 1 − i), strictly decreasing
        let beta: Vec<i64> = (0..l).map(|i| shape.part(i) as i64 + (l - 1 - i) as i64).collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            let target = b - k;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let between = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut next = beta.clone();
            next[idx] = target;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let parts: Vec<u32> = next.iter().enumerate().map(|(i, &c)| (c - (l - 1 - i) as i64) as u32).collect();
            let smaller = Partition::new(parts).expect("rim-hook removal keeps a partition");
            let sign = if between % 2 == 0 { 1 } else { -1 };
            total += sign * self.mn(smaller, rest.clone());
        }
        self.memo.insert((shape, rho), total);
        total
    }
}

/// Power-sum expansion of `s_λ` with coefficients `χ^λ(ρ)/z_ρ`.
pub fn schur_to_power_sums(lambda: &Partition) -> Result<PowerSumExpansion> {
    schur_to_power_sums_bounded(lambda, DEFAULT_POWER_SUM_BOUND)
}

pub fn schur_to_power_sums_bounded(lambda: &Partition, bound: u32) -> Result<PowerSumExpansion> {
    let n = lambda.size();
    if n > bound as u64 {
        return Err(Error::budget("power-sum expansion degree", n, bound));
    }
    let n = n as u32;
    let mut table = CharacterTable::new();
    let coefficients = Partition::all_of(n)
        .into_iter()
        .map(|rho| {
            let chi = table.character(lambda, &rho);
            let z = BigInt::from(centralizer_order(&rho));
            (rho, Rational::new(BigInt::from(chi), z))
        })
        .collect();
    Ok(PowerSumExpansion { degree: n, coefficients })
}

/// Littlewood–Richardson coefficient `c^ν_{αβ}`: the number of LR tableaux of
/// skew shape `ν/α` and content `β`.
pub fn lr_coefficient(nu: &Partition, alpha: &Partition, beta: &Partition) -> u64 {
    if alpha.size() + beta.size() != nu.size() || !nu.contains(alpha) || !nu.contains(beta) {
        return 0;
    }
    if beta.is_empty() {
        return 1;
    }
    // cells in reading order: rows top to bottom, right to left
    let cells: Vec<(usize, usize)> = (0..nu.length())
        .flat_map(|r| (alpha.part(r) as usize..nu.part(r) as usize).rev().map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u8>> = (0..nu.length()).map(|r| vec![0u8; nu.part(r) as usize]).collect();
    let mut counts = vec![0u32; beta.length() + 1];
    let content: Vec<u32> = std::iter::once(0).chain(beta.parts().iter().copied()).collect();
    let mut found = 0u64;
    lr_fill(&cells, 0, alpha, &mut grid, &mut counts, &content, &mut found);
    found
}

fn lr_fill(
    cells: &[(usize, usize)],
    pos: usize,
    alpha: &Partition,
    grid: &mut Vec<Vec<u8>>,
    counts: &mut Vec<u32>,
    content: &[u32],
    found: &mut u64,
) {
    if pos == cells.len() {
        *found += 1;
        return;
    }
    let (r, c) = cells[pos];
    let n_values = content.len() - 1;
    // rows weakly increase left to right: bounded above by the right neighbour
    let max_row = if c + 1 < grid[r].len() { grid[r][c + 1] as usize } else { n_values };
    // columns strictly increase downwards
    let min_col = if r > 0 && c >= alpha.part(r - 1) as usize { grid[r - 1][c] as usize + 1 } else { 1 };
    for v in min_col..=max_row.min(n_values).min(r + 1) {
        if counts[v] >= content[v] || (v > 1 && counts[v] + 1 > counts[v - 1]) {
            continue;
        }
        grid[r][c] = v as u8;
        counts[v] += 1;
        lr_fill(cells, pos + 1, alpha, grid, counts, content, found);
        counts[v] -= 1;
        grid[r][c] = 0;
    }
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }
    fn qi(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn schur_dim_examples() {
        assert_eq!(schur_dim(&p(&[2]), 4).unwrap(), BigUint::from(10u32));
        assert_eq!(schur_dim(&p(&[2, 2]), 3).unwrap(), BigUint::from(6u32));
        assert_eq!(schur_dim(&p(&[]), 7).unwrap(), BigUint::one());
        assert!(schur_dim(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn weyl_dim_examples() {
        for d in 2..9usize {
            let mut e = vec![0i64; d];
            e[0] = 1;
            e[d - 1] = -1;
            let s = Signature::new(e).unwrap();
            assert_eq!(weyl_dim(&s), BigUint::from((d * d - 1) as u64));
            assert_eq!(weyl_dim(&s.shifted(5)), weyl_dim(&s));
        }
        assert_eq!(weyl_dim(&Signature::zero(5)), BigUint::one());
        assert_eq!(weyl_dim(&Signature::parse("1,0").unwrap()), BigUint::from(2u32));
    }

    #[test]
    fn schur_eval_examples() {
        let x = vec![qi(3), qi(5)];
        assert_eq!(schur_eval(&p(&[1]), &x).unwrap(), qi(8));
        let ones = vec![qi(1); 3];
        assert_eq!(schur_eval(&p(&[2, 2]), &ones).unwrap(), qi(6));
        assert_eq!(schur_eval(&p(&[2]), &[qi(2), qi(3)]).unwrap(), qi(19));
        assert_eq!(schur_eval_exact(&p(&[2, 2]), &ones).unwrap(), qi(6));
        assert!(schur_eval_exact(&p(&[1]), &[1.0f64, 2.0]).is_err());
    }

    #[test]
    fn evaluation_routes_agree_exactly() {
        let budget = GtBudget::default();
        let x = vec![q(1, 2), q(-2, 3), qi(3), q(5, 7)];
        let confluent = vec![q(1, 2), q(1, 2), qi(3), qi(3)];
        for lambda in [p(&[2, 1]), p(&[3, 1, 1]), p(&[2, 2, 1, 1]), p(&[4])] {
            let b = schur_bialternant(&lambda, &x).unwrap();
            assert_eq!(schur_jacobi_trudi(&lambda, &x).unwrap(), b);
            assert_eq!(schur_tableaux(&lambda, &x, &budget).unwrap(), b);
            assert_eq!(
                schur_jacobi_trudi(&lambda, &confluent).unwrap(),
                schur_tableaux(&lambda, &confluent, &budget).unwrap()
            );
            assert_eq!(schur_eval(&lambda, &confluent).unwrap(), schur_tableaux(&lambda, &confluent, &budget).unwrap());
        }
    }

    #[test]
    fn gaussian_rational_evaluation() {
        let i = Complex::new(qi(0), qi(1));
        let one = Complex::new(qi(1), qi(0));
        let x = vec![i.clone(), one.clone(), -i.clone()];
        // s_(1,1)(x) = e_2 = i·1 + i·(−i) + 1·(−i) = 1
        assert_eq!(schur_eval(&p(&[1, 1]), &x).unwrap(), one);
    }

    #[test]
    fn power_sum_examples() {
        let e = schur_to_power_sums(&p(&[2])).unwrap();
        assert_eq!(e.coefficient(&p(&[2])), q(1, 2));
        assert_eq!(e.coefficient(&p(&[1, 1])), q(1, 2));
        let e = schur_to_power_sums(&p(&[2, 2])).unwrap();
        assert_eq!(e.coefficient(&p(&[3, 1])), q(-1, 3));
        assert_eq!(e.coefficient(&p(&[2, 2])), q(1, 4));
        assert_eq!(e.coefficient(&p(&[1, 1, 1, 1])), q(1, 12));
        assert_eq!(e.nonzero().count(), 3);
        let e = schur_to_power_sums(&p(&[1])).unwrap();
        assert_eq!(e.coefficient(&p(&[1])), qi(1));
        assert_eq!(e.coefficients().len(), 1);
    }

    #[test]
    fn power_sum_bound() {
        assert!(matches!(schur_to_power_sums(&p(&[13])), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn power_sum_json() {
        let e = schur_to_power_sums(&p(&[2])).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"1,1":"1/2","2":"1/2"}"#);
        let back: PowerSumExpansion = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn leading_coeff_examples() {
        assert_eq!(leading_coeff(&p(&[2])), q(1, 2));
        assert_eq!(leading_coeff(&p(&[1, 1, 1, 1])), q(1, 24));
        assert_eq!(leading_coeff(&p(&[3, 1])), q(1, 8));
        assert_eq!(leading_coeff(&p(&[])), qi(1));
    }

    #[test]
    fn sym_group_dim_examples() {
        assert_eq!(sym_group_dim(&p(&[2, 2])), BigUint::from(2u32));
        assert_eq!(sym_group_dim(&p(&[3, 1])), BigUint::from(3u32));
        assert_eq!(sym_group_dim(&p(&[2, 1, 1])), BigUint::from(3u32));
        assert_eq!(sym_group_dim(&p(&[7])), BigUint::one());
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 2]), &p(&[2]), &p(&[1])), 0);
        // classic: c^{(3,2,1)}_{(2,1),(2,1)} = 2
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[]), &p(&[2, 1])), 1);
    }

    #[test]
    fn mn_small_table() {
        let mut t = CharacterTable::new();
        // S_3 character table
        assert_eq!(t.character(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(t.character(&p(&[2, 1]), &p(&[2, 1])), 0);
        assert_eq!(t.character(&p(&[2, 1]), &p(&[3])), -1);
        assert_eq!(t.character(&p(&[1, 1, 1]), &p(&[2, 1])), -1);
        assert_eq!(t.character(&p(&[3]), &p(&[2])), 0);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }
}
