//! AF algebras given by finite-depth Bratteli diagrams.
//!
//! Level `n` is `A_n = ⊕_i M_{d_{n,i}}`, and `M_n` (an `N_{n+1} × N_n`
//! matrix) records how often block `i` of level `n` sits in block `j` of
//! level `n+1`. Only unital embeddings are modelled. The diagram is cut at
//! a finite depth, so anything that depends on the infinite tail (traces,
//! `K₀` homomorphisms) is computed from the deepest level downwards, and the
//! truncation is reported rather than hidden.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Partition, Signature};
use crate::scalar::rational_to_f64;
use crate::symfunc::{schur_dim, sym_group_dim, weyl_dim};
use crate::ucharacters::{char_eval_with, CharConfig, CharMethod, DiagonalUnitary, Turn};
use crate::{Error, Rational, Result, C64};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn qu(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliDiagram {
    #[serde(default)]
    pub name: String,
    pub levels: Vec<Vec<u64>>,
    pub multiplicities: Vec<Vec<Vec<u64>>>,
}

/// Default depth for presets loaded by name.
pub const DEFAULT_DEPTH: usize = 12;

impl BratteliDiagram {
    /// Builds and validates.
    pub fn new(name: &str, levels: Vec<Vec<u64>>, multiplicities: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let d = BratteliDiagram { name: name.to_string(), levels, multiplicities };
        validate_diagram(&d)?;
        Ok(d)
    }

    /// Levels `0..=depth` from the multiplicity matrices, starting at `(1)`.
    pub fn from_multiplicities(name: &str, multiplicities: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let mut levels = vec![vec![1u64]];
        for (n, m) in multiplicities.iter().enumerate() {
            let prev = &levels[n];
            if m.iter().any(|row| row.len() != prev.len()) {
                return Err(Error::InvalidDiagram(format!("M_{n} has the wrong number of columns")));
            }
            levels.push(m.iter().map(|row| row.iter().zip(prev).map(|(a, b)| a * b).sum()).collect());
        }
        Self::new(name, levels, multiplicities)
    }

    pub fn car(depth: usize) -> Self {
        Self::from_multiplicities("car", vec![vec![vec![2]]; depth]).expect("valid preset")
    }

    /// UHF algebra with multiplicities cycling through `factors`.
    pub fn uhf(factors: &[u64], depth: usize) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::InvalidDiagram("uhf factors must be positive".into()));
        }
        let m = (0..depth).map(|n| vec![vec![factors[n % factors.len()]]]).collect();
        Self::from_multiplicities(&format!("uhf:{}", join(factors)), m)
    }

    /// Pascal diagram (gauge-invariant CAR subalgebra); not simple.
    pub fn pascal(depth: usize) -> Self {
        let m = (0..depth)
            .map(|n| (0..n + 2).map(|j| (0..n + 1).map(|i| u64::from(i == j || i + 1 == j)).collect()).collect())
            .collect();
        Self::from_multiplicities("gicar-excluded", m).expect("valid preset")
    }

    /// Effros–Shen diagram of `θ = [0; a_1, a_2, …]`: `M_0 = (a_1, 1)ᵀ` and
    /// `M_n = [[a_{n+1}, 1], [1, 0]]`. Terms cycle when `depth` exceeds them.
    pub fn effros_shen(cf: &[u64], depth: usize) -> Result<Self> {
        if cf.is_empty() || cf.contains(&0) {
            return Err(Error::InvalidDiagram("continued-fraction terms must be positive".into()));
        }
        let a = |n: usize| cf[n % cf.len()];
        let mut m = Vec::with_capacity(depth);
        if depth > 0 {
            m.push(vec![vec![a(0)], vec![1]]);
        }
        for n in 1..depth {
            m.push(vec![vec![a(n), 1], vec![1, 0]]);
        }
        Self::from_multiplicities(&format!("effros-shen:{}", join(cf)), m)
    }

    /// `"car"`, `"gicar-excluded"`, `"effros-shen"` (golden mean),
    /// `"effros-shen:<terms>"`, `"uhf:<factors>"`.
    pub fn preset(name: &str, depth: usize) -> Result<Self> {
        let (head, args) = name.split_once(':').unwrap_or((name, ""));
        let nums = || -> Result<Vec<u64>> {
            args.split(',').map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}")))).collect()
        };
        match head {
            "car" => Ok(Self::car(depth)),
            "gicar-excluded" | "pascal" => Ok(Self::pascal(depth)),
            "effros-shen" if args.is_empty() => Self::effros_shen(&[1], depth),
            "effros-shen" => Self::effros_shen(&nums()?, depth),
            "uhf" => Self::uhf(&nums()?, depth),
            _ => Err(Error::Parse(format!("unknown preset {name:?}"))),
        }
    }

    pub fn depth(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn blocks(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    fn level_check(&self, n: usize) -> Result<()> {
        if n >= self.levels.len() {
            return Err(Error::Precondition(format!("level {n} out of range 0..={}", self.depth())));
        }
        Ok(())
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub name: String,
    pub depth: usize,
    /// `m_n`, the smallest block dimension at each level.
    pub min_block_dims: Vec<u64>,
    pub min_dims_nondecreasing: bool,
    /// Every level in the first half reaches a strictly positive
    /// multiplicity product within the available depth.
    pub primitive: bool,
}

/// Checks `d_{n+1} = M_n d_n`, shapes, and the absence of zero rows and
/// columns.
pub fn validate_diagram(d: &BratteliDiagram) -> Result<DiagramReport> {
    if d.levels.len() != d.multiplicities.len() + 1 {
        return Err(Error::InvalidDiagram(format!(
            "{} levels need {} multiplicity matrices, got {}",
            d.levels.len(),
            d.levels.len().saturating_sub(1),
            d.multiplicities.len()
        )));
    }
    for (n, level) in d.levels.iter().enumerate() {
        if level.is_empty() || level.contains(&0) {
            return Err(Error::InvalidDiagram(format!("level {n} has an empty or zero block")));
        }
    }
    for (n, m) in d.multiplicities.iter().enumerate() {
        let (rows, cols) = (d.levels[n + 1].len(), d.levels[n].len());
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDiagram(format!("M_{n} must be {rows}×{cols}")));
        }
        if let Some(j) = m.iter().position(|r| r.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidDiagram(format!("M_{n} has zero row {j}")));
        }
        if let Some(i) = (0..cols).find(|&i| m.iter().all(|r| r[i] == 0)) {
            return Err(Error::InvalidDiagram(format!("M_{n} has zero column {i}")));
        }
        for (j, row) in m.iter().enumerate() {
            let dim: u64 = row.iter().zip(&d.levels[n]).map(|(a, b)| a * b).sum();
            if dim != d.levels[n + 1][j] {
                return Err(Error::InvalidDiagram(format!(
                    "level {} block {j}: M_{n}·d_{n} gives {dim}, declared {}",
                    n + 1,
                    d.levels[n + 1][j]
                )));
            }
        }
    }
    let min_block_dims: Vec<u64> = d.levels.iter().map(|l| *l.iter().min().expect("nonempty")).collect();
    Ok(DiagramReport {
        name: d.name.clone(),
        depth: d.depth(),
        min_dims_nondecreasing: min_block_dims.windows(2).all(|w| w[0] <= w[1]),
        min_block_dims,
        primitive: is_primitive(d),
    })
}

fn is_primitive(d: &BratteliDiagram) -> bool {
    let depth = d.depth();
    (0..=depth / 2).all(|n| {
        // support pattern of M_{m-1}⋯M_n
        let mut reach: Vec<Vec<bool>> = (0..d.blocks(n)).map(|i| (0..d.blocks(n)).map(|j| i == j).collect()).collect();
        for m in n..depth {
            let mat = &d.multiplicities[m];
            reach = mat
                .iter()
                .map(|row| (0..d.blocks(n)).map(|i| row.iter().zip(&reach).any(|(&a, r)| a > 0 && r[i])).collect())
                .collect();
            if reach.iter().all(|r| r.iter().all(|&b| b)) {
                return true;
            }
        }
        false
    })
}

/// Trace on a minimal projection of each block, per level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceWeights {
    #[serde(with = "rational_table")]
    pub levels: Vec<Vec<Rational>>,
    /// `Σ_n ‖t_n − M_nᵀ t_{n+1}‖₁`.
    #[serde(with = "rational_string")]
    pub residual: Rational,
    /// Per level, largest `Σ_i d_{n,i}|t_{n,i} − t'_{n,i}|` between weights
    /// propagated from two extreme boundary traces at the deepest level.
    pub spread: Vec<f64>,
}

mod rational_string {
    use super::*;
    pub fn serialize<Se: serde::Serializer>(v: &Rational, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_str(&v.to_string())
    }
    pub fn deserialize<'de, De: serde::Deserializer<'de>>(d: De) -> std::result::Result<Rational, De::Error> {
        let t = String::deserialize(d)?;
        crate::symfunc::parse_rational(&t).map_err(serde::de::Error::custom)
    }
}

mod rational_table {
    use super::*;
    pub fn serialize<Se: serde::Serializer>(v: &[Vec<Rational>], s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let t: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        t.serialize(s)
    }
    pub fn deserialize<'de, De: serde::Deserializer<'de>>(d: De) -> std::result::Result<Vec<Vec<Rational>>, De::Error> {
        let t = Vec::<Vec<String>>::deserialize(d)?;
        t.iter()
            .map(|r| r.iter().map(|x| crate::symfunc::parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

impl TraceWeights {
    pub fn level(&self, n: usize) -> &[Rational] {
        &self.levels[n]
    }

    /// `Σ_i t_{n,i}·Tr(u_i)`.
    pub fn evaluate(&self, u: &BlockUnitary) -> Result<C64> {
        let t = self
            .levels
            .get(u.level)
            .ok_or_else(|| Error::Precondition(format!("no trace weights at level {}", u.level)))?;
        if t.len() != u.blocks.len() {
            return Err(Error::DimensionMismatch { expected: t.len(), found: u.blocks.len() });
        }
        Ok(t.iter().zip(&u.blocks).map(|(w, b)| b.trace() * rational_to_f64(w)).sum())
    }
}

fn propagate_down(d: &BratteliDiagram, top: Vec<Rational>) -> Vec<Vec<Rational>> {
    let mut levels = vec![top];
    for m in d.multiplicities.iter().rev() {
        let next = levels.last().expect("nonempty");
        let cols = m[0].len();
        let t: Vec<Rational> = (0..cols).map(|i| m.iter().zip(next).map(|(row, x)| qu(row[i]) * x).sum()).collect();
        levels.push(t);
    }
    levels.reverse();
    levels
}

fn residual(d: &BratteliDiagram, levels: &[Vec<Rational>]) -> Rational {
    let mut r = Rational::zero();
    for (n, m) in d.multiplicities.iter().enumerate() {
        for i in 0..levels[n].len() {
            let back: Rational = m.iter().zip(&levels[n + 1]).map(|(row, x)| qu(row[i]) * x).sum();
            r += (&levels[n][i] - back).abs();
        }
    }
    r
}

/// Weights propagated down from an explicit boundary trace at the deepest
/// level; `boundary` must be nonnegative with `Σ b_i d_{L,i} = 1`.
pub fn trace_weights_from_boundary(d: &BratteliDiagram, boundary: Vec<Rational>) -> Result<TraceWeights> {
    validate_diagram(d)?;
    let top = &d.levels[d.depth()];
    if boundary.len() != top.len() {
        return Err(Error::DimensionMismatch { expected: top.len(), found: boundary.len() });
    }
    let mass: Rational = boundary.iter().zip(top).map(|(b, &n)| b * qu(n)).sum();
    if boundary.iter().any(|b| b.is_negative()) || !mass.is_one() {
        return Err(Error::Precondition("boundary must be a normalized positive trace".into()));
    }
    let levels = propagate_down(d, boundary);
    Ok(TraceWeights { residual: residual(d, &levels), spread: spreads(d), levels })
}

fn spreads(d: &BratteliDiagram) -> Vec<f64> {
    let top = &d.levels[d.depth()];
    let extremes: Vec<Vec<Vec<Rational>>> = (0..top.len())
        .map(|i| {
            let mut b = vec![Rational::zero(); top.len()];
            b[i] = Rational::new(BigInt::one(), BigInt::from(top[i]));
            propagate_down(d, b)
        })
        .collect();
    (0..d.levels.len())
        .map(|n| {
            let mut worst = Rational::zero();
            for a in &extremes {
                for b in &extremes {
                    let s: Rational =
                        a[n].iter().zip(&b[n]).zip(&d.levels[n]).map(|((x, y), &k)| (x - y).abs() * qu(k)).sum();
                    if s > worst {
                        worst = s;
                    }
                }
            }
            rational_to_f64(&worst)
        })
        .collect()
}

/// Default tolerance on the trace spread at the check level.
pub const TRACE_TOLERANCE: f64 = 1e-3;

/// Trace weights by backward substitution from the uniform boundary
/// `t_{L,i} = 1/Σ_j d_{L,j}`. Fails when traces propagated from different
/// extreme boundaries still differ by more than `tolerance` at level
/// `check_level`.
pub fn trace_weights(d: &BratteliDiagram, check_level: usize, tolerance: f64) -> Result<TraceWeights> {
    validate_diagram(d)?;
    d.level_check(check_level)?;
    let top = &d.levels[d.depth()];
    let total: u64 = top.iter().sum();
    let w = trace_weights_from_boundary(d, vec![Rational::new(BigInt::one(), BigInt::from(total)); top.len()])?;
    if w.spread[check_level] > tolerance {
        return Err(Error::NonConvergent { spread: w.spread[check_level], tolerance });
    }
    Ok(w)
}

/// `φ_n` on minimal projections of each block, per level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Hom {
    pub levels: Vec<Vec<i64>>,
}

fn pull_back(m: &[Vec<u64>], phi: &[i64]) -> Vec<i64> {
    (0..m[0].len()).map(|i| m.iter().zip(phi).map(|(row, &p)| row[i] as i64 * p).sum()).collect()
}

/// Largest free-variable magnitude tried when a level has several lifts.
pub const K0_SEARCH_BOUND: i64 = 8;

impl K0Hom {
    pub fn zero(d: &BratteliDiagram) -> Self {
        K0Hom { levels: d.levels.iter().map(|l| vec![0; l.len()]).collect() }
    }

    /// Checks `φ_n = M_nᵀ φ_{n+1}` on every level.
    pub fn new(d: &BratteliDiagram, levels: Vec<Vec<i64>>) -> Result<Self> {
        if levels.len() != d.levels.len() {
            return Err(Error::IncompatibleK0(format!("need {} levels, got {}", d.levels.len(), levels.len())));
        }
        for (n, m) in d.multiplicities.iter().enumerate() {
            if levels[n].len() != d.blocks(n) || levels[n + 1].len() != d.blocks(n + 1) {
                return Err(Error::IncompatibleK0(format!("level {n} has the wrong number of blocks")));
            }
            if pull_back(m, &levels[n + 1]) != levels[n] {
                return Err(Error::IncompatibleK0(format!("φ_{n} ≠ M_{n}ᵀ φ_{}", n + 1)));
            }
        }
        Ok(K0Hom { levels })
    }

    /// Determined by the deepest level.
    pub fn from_top(d: &BratteliDiagram, top: Vec<i64>) -> Result<Self> {
        if top.len() != d.blocks(d.depth()) {
            return Err(Error::IncompatibleK0(format!("need {} top values", d.blocks(d.depth()))));
        }
        let mut levels = vec![top];
        for m in d.multiplicities.iter().rev() {
            let next = pull_back(m, levels.last().expect("nonempty"));
            levels.push(next);
        }
        levels.reverse();
        Ok(K0Hom { levels })
    }

    /// Extends `φ_n` to the deepest level, one level at a time. Each step
    /// solves `M_mᵀ x = φ_m` over the rationals; free variables are searched
    /// in `[−bound, bound]` for an integer solution.
    pub fn lift(d: &BratteliDiagram, n: usize, phi_n: Vec<i64>, bound: i64) -> Result<Self> {
        d.level_check(n)?;
        if phi_n.len() != d.blocks(n) {
            return Err(Error::IncompatibleK0(format!("need {} values at level {n}", d.blocks(n))));
        }
        let mut cur = phi_n;
        for m in n..d.depth() {
            cur = integer_solve(&d.multiplicities[m], &cur, bound).ok_or_else(|| {
                Error::IncompatibleK0(format!("{cur:?} at level {m} has no integer lift to level {}", m + 1))
            })?;
        }
        Self::from_top(d, cur)
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.iter().all(|&x| x == 0))
    }
}

/// Integer `x` with `Mᵀx = b`, preferring small free variables.
#[allow(clippy::needless_range_loop)]
fn integer_solve(m: &[Vec<u64>], b: &[i64], bound: i64) -> Option<Vec<i64>> {
    let rows = m[0].len();
    let cols = m.len();
    // augmented [Mᵀ | b] in reduced row echelon form
    let mut a: Vec<Vec<Rational>> =
        (0..rows).map(|i| (0..cols).map(|j| qu(m[j][i])).chain(std::iter::once(q(b[i]))).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..=cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.len() > 4 {
        return None;
    }
    for radius in 0..=bound {
        let mut tuple = vec![-radius; free.len()];
        loop {
            if tuple.iter().any(|t| t.abs() == radius) || free.is_empty() {
                let mut x = vec![Rational::zero(); cols];
                for (f, &v) in free.iter().zip(&tuple) {
                    x[*f] = q(v);
                }
                for (i, &pc) in pivots.iter().enumerate() {
                    let mut v = a[i][cols].clone();
                    for (f, &t) in free.iter().zip(&tuple) {
                        v -= &a[i][*f] * q(t);
                    }
                    x[pc] = v;
                }
                if x.iter().all(|v| v.is_integer()) {
                    return Some(x.iter().map(|v| v.to_integer().to_i64().unwrap_or(i64::MAX)).collect());
                }
            }
            // odometer over [−radius, radius]^free
            let mut k = 0;
            while k < tuple.len() && tuple[k] == radius {
                tuple[k] = -radius;
                k += 1;
            }
            if k == tuple.len() {
                break;
            }
            tuple[k] += 1;
        }
    }
    None
}

/// All `φ_n ∈ [−bound, bound]^{N_n}` that lift to the deepest level.
pub fn liftable_k0_classes(d: &BratteliDiagram, n: usize, bound: i64) -> Result<Vec<Vec<i64>>> {
    d.level_check(n)?;
    let k = d.blocks(n);
    if k > 4 {
        return Err(Error::budget("blocks searched", k, 4));
    }
    let mut out = Vec::new();
    let mut t = vec![-bound; k];
    loop {
        if K0Hom::lift(d, n, t.clone(), K0_SEARCH_BOUND).is_ok() {
            out.push(t.clone());
        }
        let mut i = 0;
        while i < k && t[i] == bound {
            t[i] = -bound;
            i += 1;
        }
        if i == k {
            break;
        }
        t[i] += 1;
    }
    Ok(out)
}

/// Element of `U(A_n)`: one diagonal unitary per block.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockUnitary {
    pub level: usize,
    pub blocks: Vec<DiagonalUnitary>,
}

impl BlockUnitary {
    pub fn new(d: &BratteliDiagram, level: usize, blocks: Vec<DiagonalUnitary>) -> Result<Self> {
        d.level_check(level)?;
        let dims = &d.levels[level];
        if blocks.len() != dims.len() {
            return Err(Error::DimensionMismatch { expected: dims.len(), found: blocks.len() });
        }
        for (b, &k) in blocks.iter().zip(dims) {
            if b.d() as u64 != k {
                return Err(Error::DimensionMismatch { expected: k as usize, found: b.d() });
            }
        }
        Ok(BlockUnitary { level, blocks })
    }

    pub fn identity(d: &BratteliDiagram, level: usize) -> Result<Self> {
        d.level_check(level)?;
        Ok(BlockUnitary {
            level,
            blocks: d.levels[level].iter().map(|&k| DiagonalUnitary::identity(k as usize)).collect(),
        })
    }

    /// `z·e + (1 − e)` with `e` a minimal projection in block `block`.
    pub fn minimal_projection_phase(d: &BratteliDiagram, level: usize, block: usize, z: Turn) -> Result<Self> {
        let mut u = Self::identity(d, level)?;
        let k =
            u.blocks.get(block).ok_or(Error::DimensionMismatch { expected: d.blocks(level), found: block + 1 })?.d();
        let mut angles = vec![Turn::zero(); k];
        angles[0] = z;
        u.blocks[block] = DiagonalUnitary::new(angles);
        Ok(u)
    }

    pub fn mul(&self, other: &BlockUnitary) -> Result<BlockUnitary> {
        if self.level != other.level || self.blocks.len() != other.blocks.len() {
            return Err(Error::DimensionMismatch { expected: self.blocks.len(), found: other.blocks.len() });
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
        Ok(BlockUnitary { level: self.level, blocks })
    }

    /// `Tr(u_i)/d_{n,i}` for each block.
    pub fn normalized_traces(&self) -> Vec<C64> {
        self.blocks.iter().map(|b| b.trace() / b.d() as f64).collect()
    }

    /// Image at level `m` under the connecting maps: block `j` of level
    /// `n+1` is `⊕_i` (`M_n[j][i]` copies of `u_i`), blocks in index order.
    pub fn embed(&self, d: &BratteliDiagram, m: usize) -> Result<BlockUnitary> {
        d.level_check(m)?;
        if m < self.level {
            return Err(Error::Precondition(format!("cannot embed level {} into level {m}", self.level)));
        }
        let mut blocks = self.blocks.clone();
        for n in self.level..m {
            blocks = d.multiplicities[n]
                .iter()
                .map(|row| {
                    let parts: Vec<&DiagonalUnitary> =
                        row.iter().zip(&blocks).flat_map(|(&k, b)| std::iter::repeat_n(b, k as usize)).collect();
                    DiagonalUnitary::concat(parts)
                })
                .collect();
        }
        Ok(BlockUnitary { level: m, blocks })
    }
}

/// `det_φ u = ∏_i ∏_{z ∈ spec u_i} z^{φ_{n,i}}`, as an angle in turns.
pub fn det_phi(u: &BlockUnitary, phi: &K0Hom) -> Result<Turn> {
    let p = phi
        .levels
        .get(u.level)
        .filter(|l| l.len() == u.blocks.len())
        .ok_or_else(|| Error::IncompatibleK0(format!("φ has no values matching level {}", u.level)))?;
    let mut total = Turn::zero();
    for (b, &k) in u.blocks.iter().zip(p) {
        for a in b.angles() {
            total = total.add(&a.scale(k));
        }
    }
    Ok(total)
}

/// `det_φ(·) ∏ τ_i(·)^{p_i} ∏ conj(τ′_j(·))^{q_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitCharacterSpec {
    pub phi: Option<K0Hom>,
    pub pos: Vec<(TraceWeights, u32)>,
    pub neg: Vec<(TraceWeights, u32)>,
}

impl LimitCharacterSpec {
    pub fn trivial() -> Self {
        LimitCharacterSpec { phi: None, pos: Vec::new(), neg: Vec::new() }
    }
}

pub fn eval_limit_character(spec: &LimitCharacterSpec, u: &BlockUnitary) -> Result<C64> {
    let mut v = match &spec.phi {
        Some(phi) => det_phi(u, phi)?.eigenvalue(),
        None => C64::new(1.0, 0.0),
    };
    for (t, p) in &spec.pos {
        v *= t.evaluate(u)?.powu(*p);
    }
    for (t, p) in &spec.neg {
        v *= t.evaluate(u)?.conj().powu(*p);
    }
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct ErgodicConfig {
    /// Block carrying the signature at each level; block 0 when absent.
    pub designated: Option<Vec<usize>>,
    /// Largest block dimension at which characters are evaluated.
    pub max_d: u64,
    pub trace_tolerance: f64,
}

impl Default for ErgodicConfig {
    fn default() -> Self {
        ErgodicConfig { designated: None, max_d: 4096, trace_tolerance: TRACE_TOLERANCE }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErgodicPoint {
    pub level: usize,
    pub d: u64,
    pub re: f64,
    pub im: f64,
    /// Exact value `re + im·i` when the unitary has quarter-turn spectrum.
    pub exact: Option<(String, String)>,
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErgodicReport {
    pub points: Vec<ErgodicPoint>,
    pub limit: (f64, f64),
    /// `−slope` of `log|χ_n − χ|` against `log d_n`.
    pub rate_exponent: Option<f64>,
    /// `max_n d_n·|χ_n − χ|`.
    pub max_scaled_error: f64,
}

/// `χ_n(embed(u))` for `χ_n` the normalized character of `{μ̄;λ}` on the
/// designated block of level `n`, for `n = u.level..=n_max`, against the
/// limit `τ(u)^{|λ|}·conj(τ(u))^{|μ|}`.
pub fn ergodic_sequence(
    d: &BratteliDiagram,
    lambda: &Partition,
    mu: &Partition,
    u: &BlockUnitary,
    n_max: usize,
    cfg: &ErgodicConfig,
) -> Result<ErgodicReport> {
    d.level_check(n_max)?;
    let weights = trace_weights(d, u.level, cfg.trace_tolerance)?;
    let spec = LimitCharacterSpec {
        phi: None,
        pos: vec![(weights.clone(), lambda.size() as u32)],
        neg: vec![(weights, mu.size() as u32)],
    };
    let limit = eval_limit_character(&spec, u)?;
    let mut points = Vec::new();
    let char_cfg = CharConfig::default();
    for n in u.level..=n_max {
        let b = cfg.designated.as_ref().and_then(|v| v.get(n).copied()).unwrap_or(0);
        let dim = *d.levels[n].get(b).ok_or(Error::DimensionMismatch { expected: d.blocks(n), found: b + 1 })?;
        if dim > cfg.max_d {
            return Err(Error::budget("block dimension", dim, cfg.max_d));
        }
        let v = u.embed(d, n)?;
        let sig = Signature::from_pair(lambda, mu, dim as usize)?;
        let val = char_eval_with(&sig, &v.blocks[b], CharMethod::Auto, &char_cfg)?;
        let dimq = Rational::from_integer(BigInt::from(weyl_dim(&sig)));
        let (value, exact) = match &val.exact {
            Some(z) => {
                let (re, im) = (&z.re / &dimq, &z.im / &dimq);
                (C64::new(rational_to_f64(&re), rational_to_f64(&im)), Some((re.to_string(), im.to_string())))
            }
            None => (val.value / rational_to_f64(&dimq), None),
        };
        points.push(ErgodicPoint {
            level: n,
            d: dim,
            re: value.re,
            im: value.im,
            exact,
            error: (value - limit).norm(),
        });
    }
    let fit: Vec<(f64, f64)> =
        points.iter().filter(|p| p.error > 0.0).map(|p| ((p.d as f64).ln(), p.error.ln())).collect();
    let rate_exponent = (fit.len() >= 2).then(|| -slope(&fit));
    let max_scaled_error = points.iter().map(|p| p.error * p.d as f64).fold(0.0, f64::max);
    Ok(ErgodicReport { points, limit: (limit.re, limit.im), rate_exponent, max_scaled_error })
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// `Σ_{λ⊢p, μ⊢q} (s_λ(1_d)s_μ(1_d) − dim π_{μ̄;λ})·f^λ·f^μ / d^{p+q}` with
/// `d = 2ⁿ`: the normalized trace of the part of `(ℂ^d)^{⊗p} ⊗ (ℂ̄^d)^{⊗q}`
/// outside the top components.
pub fn schur_weyl_defect(n: u32, p: u32, q: u32) -> Result<Rational> {
    if p == 0 && q == 0 {
        return Err(Error::Precondition("(p, q) must not both be zero".into()));
    }
    if n >= 16 {
        return Err(Error::budget("level exponent", n, 15));
    }
    let d = 1usize << n;
    let mut total = BigInt::zero();
    for lambda in Partition::all_of(p) {
        for mu in Partition::all_of(q) {
            if lambda.length() + mu.length() > d {
                return Err(Error::Precondition(format!(
                    "l({lambda}) + l({mu}) exceeds d = {d}; the defect formula needs every pair to fit"
                )));
            }
            let prod = BigInt::from(schur_dim(&lambda, d)? * schur_dim(&mu, d)?);
            let top = BigInt::from(weyl_dim(&Signature::from_pair(&lambda, &mu, d)?));
            let f = BigInt::from(sym_group_dim(&lambda) * sym_group_dim(&mu));
            total += (prod - top) * f;
        }
    }
    let den = BigInt::from(BigUint::from(d as u64).pow(p + q));
    Ok(Rational::new(total, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }
    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn presets_validate() {
        let car = validate_diagram(&BratteliDiagram::car(6)).unwrap();
        assert_eq!(car.min_block_dims, vec![1, 2, 4, 8, 16, 32, 64]);
        assert!(car.primitive && car.min_dims_nondecreasing);
        let es = validate_diagram(&BratteliDiagram::preset("effros-shen", 10).unwrap()).unwrap();
        assert!(es.primitive && es.min_dims_nondecreasing);
        // Fibonacci block sizes for the golden mean
        assert_eq!(BratteliDiagram::effros_shen(&[1], 5).unwrap().levels[5], vec![8, 5]);
        assert!(!validate_diagram(&BratteliDiagram::pascal(8)).unwrap().primitive);
        let uhf = BratteliDiagram::preset("uhf:2,3", 4).unwrap();
        assert_eq!(uhf.levels[4], vec![36]);
        assert!(BratteliDiagram::preset("nope", 3).is_err());
    }

    #[test]
    fn invalid_diagrams() {
        let bad =
            BratteliDiagram { name: "x".into(), levels: vec![vec![1], vec![3]], multiplicities: vec![vec![vec![2]]] };
        assert!(matches!(validate_diagram(&bad), Err(Error::InvalidDiagram(_))));
        let zero_row = BratteliDiagram {
            name: "x".into(),
            levels: vec![vec![1, 1], vec![2, 1]],
            multiplicities: vec![vec![vec![1, 1], vec![0, 0]]],
        };
        assert!(validate_diagram(&zero_row).is_err());
        let zero_col = BratteliDiagram {
            name: "x".into(),
            levels: vec![vec![1, 1], vec![1]],
            multiplicities: vec![vec![vec![1, 0]]],
        };
        assert!(validate_diagram(&zero_col).is_err());
    }

    #[test]
    fn diagram_json_schema() {
        let d = BratteliDiagram::car(2);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"name":"car","levels":[[1],[2],[4]],"multiplicities":[[[2]],[[2]]]}"#);
        assert_eq!(serde_json::from_str::<BratteliDiagram>(&s).unwrap(), d);
    }

    #[test]
    fn car_traces_are_exact() {
        let d = BratteliDiagram::car(8);
        let t = trace_weights(&d, 4, TRACE_TOLERANCE).unwrap();
        for n in 0..=8 {
            assert_eq!(t.level(n), &[r(1, 1 << n)]);
        }
        assert!(t.residual.is_zero());
        assert!(t.spread.iter().all(|&s| s == 0.0));
        let k = BratteliDiagram::uhf(&[3], 5).unwrap();
        assert_eq!(trace_weights(&k, 2, 0.0).unwrap().level(3), &[r(1, 27)]);
    }

    #[test]
    fn golden_mean_trace_weights() {
        let d = BratteliDiagram::effros_shen(&[1], 30).unwrap();
        let t = trace_weights(&d, 1, 1e-9).unwrap();
        assert!(t.residual.is_zero());
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let l1: Vec<f64> = t.level(1).iter().map(rational_to_f64).collect();
        assert!((l1[0] - g).abs() < 1e-10 && (l1[1] - g * g).abs() < 1e-10, "{l1:?}");
    }

    #[test]
    fn pascal_traces_do_not_converge() {
        let d = BratteliDiagram::pascal(10);
        assert!(matches!(trace_weights(&d, 2, 1e-3), Err(Error::NonConvergent { .. })));
    }

    #[test]
    fn embedding_examples() {
        let d = BratteliDiagram::car(4);
        let u = BlockUnitary::new(&d, 1, vec![DiagonalUnitary::parse("1/4,0").unwrap()]).unwrap();
        let v = u.embed(&d, 2).unwrap();
        assert_eq!(v.blocks[0], DiagonalUnitary::parse("1/4,0,1/4,0").unwrap());
        assert!(close(v.normalized_traces()[0], C64::new(0.5, 0.5)));
        let id = BlockUnitary::identity(&d, 0).unwrap();
        assert_eq!(id.embed(&d, 4).unwrap(), BlockUnitary::identity(&d, 4).unwrap());
        let two = BratteliDiagram::new("x", vec![vec![1, 2], vec![3]], vec![vec![vec![1, 1]]]).unwrap();
        let w = BlockUnitary::new(
            &two,
            0,
            vec![DiagonalUnitary::parse("0.5").unwrap(), DiagonalUnitary::parse("0.25,0.75").unwrap()],
        )
        .unwrap();
        assert_eq!(w.embed(&two, 1).unwrap().blocks[0], DiagonalUnitary::parse("0.5,0.25,0.75").unwrap());
        assert!(u.embed(&d, 0).is_err());
    }

    #[test]
    fn embedding_transforms_normalized_traces() {
        let d = BratteliDiagram::effros_shen(&[1, 2], 6).unwrap();
        let u = BlockUnitary::new(
            &d,
            2,
            vec![DiagonalUnitary::parse("0.1,0.2,0.35").unwrap(), DiagonalUnitary::parse("0.7").unwrap()],
        )
        .unwrap();
        let v = u.embed(&d, 3).unwrap();
        let (tn, tm) = (u.normalized_traces(), v.normalized_traces());
        for (j, row) in d.multiplicities[2].iter().enumerate() {
            let expect: C64 =
                row.iter().enumerate().map(|(i, &m)| tn[i] * (m * d.levels[2][i]) as f64 / d.levels[3][j] as f64).sum();
            assert!(close(tm[j], expect));
        }
    }

    #[test]
    fn car_admits_only_zero_phi() {
        let d = BratteliDiagram::car(8);
        assert_eq!(liftable_k0_classes(&d, 0, 100).unwrap(), vec![vec![0]]);
        assert!(K0Hom::lift(&d, 0, vec![3], K0_SEARCH_BOUND).is_err());
        assert!(K0Hom::lift(&d, 0, vec![256], K0_SEARCH_BOUND).is_ok());
    }

    #[test]
    fn effros_shen_phi_lattice() {
        let d = BratteliDiagram::effros_shen(&[1], 8).unwrap();
        // every integer pair at level 1 lifts: the multiplicity matrices are unimodular
        assert_eq!(liftable_k0_classes(&d, 1, 2).unwrap().len(), 25);
        let phi = K0Hom::lift(&d, 1, vec![2, -3], K0_SEARCH_BOUND).unwrap();
        assert!(K0Hom::new(&d, phi.levels.clone()).is_ok());
        let z = Turn::parse("1/7").unwrap();
        let u = BlockUnitary::minimal_projection_phase(&d, 1, 1, z.clone()).unwrap();
        assert_eq!(det_phi(&u, &phi).unwrap(), z.scale(-3));
        // invariant under embedding, multiplicative
        let e = u.embed(&d, 6).unwrap();
        assert_eq!(det_phi(&e, &phi).unwrap(), det_phi(&u, &phi).unwrap());
        let v = BlockUnitary::minimal_projection_phase(&d, 1, 0, Turn::parse("2/5").unwrap()).unwrap();
        let uv = u.mul(&v).unwrap();
        assert_eq!(det_phi(&uv, &phi).unwrap(), det_phi(&u, &phi).unwrap().add(&det_phi(&v, &phi).unwrap()));
        assert_eq!(det_phi(&uv, &K0Hom::zero(&d)).unwrap(), Turn::zero());
    }

    #[test]
    fn incompatible_phi() {
        let d = BratteliDiagram::car(3);
        assert!(matches!(K0Hom::new(&d, vec![vec![1], vec![1], vec![1], vec![1]]), Err(Error::IncompatibleK0(_))));
    }

    #[test]
    fn limit_character_examples() {
        let d = BratteliDiagram::car(6);
        let t = trace_weights(&d, 1, 0.0).unwrap();
        let u = BlockUnitary::new(&d, 1, vec![DiagonalUnitary::parse("1/4,0").unwrap()]).unwrap();
        let one = LimitCharacterSpec { phi: None, pos: vec![(t.clone(), 1)], neg: vec![] };
        assert!(close(eval_limit_character(&one, &u).unwrap(), C64::new(0.5, 0.5)));
        assert!(close(eval_limit_character(&LimitCharacterSpec::trivial(), &u).unwrap(), C64::new(1.0, 0.0)));
        let both = LimitCharacterSpec { phi: Some(K0Hom::zero(&d)), pos: vec![(t.clone(), 1)], neg: vec![(t, 1)] };
        assert!(close(eval_limit_character(&both, &u).unwrap(), C64::new(0.5, 0.0)));
    }

    #[test]
    fn ergodic_examples() {
        let d = BratteliDiagram::car(8);
        let u = BlockUnitary::new(&d, 1, vec![DiagonalUnitary::parse("1/4,0").unwrap()]).unwrap();
        let cfg = ErgodicConfig::default();
        let rep = ergodic_sequence(&d, &p(&[1]), &p(&[]), &u, 6, &cfg).unwrap();
        assert!(rep.points.iter().all(|pt| pt.error < 1e-15));
        assert_eq!(rep.rate_exponent, None);
        let rep = ergodic_sequence(&d, &p(&[]), &p(&[]), &u, 4, &cfg).unwrap();
        assert!(rep.points.iter().all(|pt| pt.re == 1.0 && pt.im == 0.0));
        let rep = ergodic_sequence(&d, &p(&[1]), &p(&[1]), &u, 8, &cfg).unwrap();
        for pt in &rep.points {
            let dd = (pt.d * pt.d) as i64;
            let want = r(dd / 2 - 1, dd - 1);
            assert_eq!(pt.exact.as_ref().unwrap(), &(want.to_string(), "0".to_string()));
        }
        assert!((rep.limit.0 - 0.5).abs() < 1e-15);
        let k = rep.rate_exponent.unwrap();
        assert!((k - 2.0).abs() < 0.1, "{k}");
        let small = ErgodicConfig { max_d: 16, ..ErgodicConfig::default() };
        assert!(matches!(ergodic_sequence(&d, &p(&[1]), &p(&[1]), &u, 8, &small), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn ergodic_on_golden_mean_diagram() {
        let d = BratteliDiagram::effros_shen(&[1], 24).unwrap();
        let u = BlockUnitary::new(
            &d,
            2,
            vec![DiagonalUnitary::parse("1/4,0").unwrap(), DiagonalUnitary::parse("1/2").unwrap()],
        )
        .unwrap();
        let rep = ergodic_sequence(&d, &p(&[1]), &p(&[]), &u, 12, &ErgodicConfig::default()).unwrap();
        let last = rep.points.last().unwrap();
        assert!(last.error < 1e-3, "{}", last.error);
    }

    #[test]
    fn schur_weyl_examples() {
        for n in 1..=6 {
            assert_eq!(schur_weyl_defect(n, 1, 1).unwrap(), Rational::new(1.into(), BigInt::from(4).pow(n)));
        }
        assert!(schur_weyl_defect(3, 1, 0).unwrap().is_zero());
        assert!(schur_weyl_defect(2, 2, 0).unwrap().is_zero());
        assert!(schur_weyl_defect(0, 1, 1).is_err());
        assert!(schur_weyl_defect(2, 0, 0).is_err());
        // (2,1): defect is 2/d² (λ=(2) and λ=(1,1) each lose d)
        for n in 2..=5 {
            let d = 1i64 << n;
            assert_eq!(schur_weyl_defect(n, 2, 1).unwrap(), r(2, d * d));
        }
    }
}
