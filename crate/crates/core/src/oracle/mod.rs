//! Exact, slow ground truth: arbitrary-precision tree counts, brute-force
//! optima, closed-form family counts, and lemma-level numeric predicates.
//!
//! Everything here is exact by construction. Floating-point weights are
//! converted to their exact dyadic rationals, cleared to integers by the
//! common denominator, and determinants run fraction-free over big integers;
//! the scale factor divides back out at the end. No rounding anywhere.

mod interres;
mod pathcover;

pub use interres::{check_interres_bounds, interres_case_config, InterResCase, InterResConfig};
pub use pathcover::{min_path_cover, PathCover};

use crate::error::{Error, Result};
use crate::graph::{CandidateSet, Graph};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact weighted spanning-tree count: an integer for integer weights,
/// a rational otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactCount(BigRational);

impl ExactCount {
    pub fn from_integer(v: u64) -> Self {
        ExactCount(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// The integer value, when the count is integral.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_bigint().and_then(|b| b.to_u64())
    }

    /// log2 of the count, safe for values far beyond f64 range.
    pub fn log2(&self) -> f64 {
        log2_bigint(self.0.numer()) - log2_bigint(self.0.denom())
    }
}

impl std::fmt::Display for ExactCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn log2_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 53 {
        x.to_f64().unwrap().log2()
    } else {
        let shift = bits - 53;
        let head: BigInt = x >> shift;
        head.to_f64().unwrap().log2() + shift as f64
    }
}

/// Fraction-free determinant of an integer matrix. Pivots of an SPD input
/// are its leading principal minors, so a zero pivot means the matrix is
/// singular and the caller fed us a disconnected graph.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let k = m.len();
    if k == 0 {
        return Ok(BigInt::one());
    }
    let mut prev = BigInt::one();
    for i in 0..k - 1 {
        if m[i][i].is_zero() {
            return Err(Error::Disconnected);
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let num = &m[r][c] * &m[i][i] - &m[r][i] * &m[i][c];
                m[r][c] = num / &prev;
            }
        }
        prev = m[i][i].clone();
    }
    Ok(std::mem::take(&mut m[k - 1][k - 1]))
}

/// Exact weighted spanning-tree count via Kirchhoff's theorem, computed in
/// exact arithmetic on the grounded minor.
pub fn tree_count_exact(g: &Graph) -> Result<ExactCount> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    if n == 1 {
        return Ok(ExactCount::from_integer(1));
    }

    // exact rational weights; f64 -> dyadic rational is lossless
    let weights: Vec<BigRational> = g
        .edges()
        .iter()
        .map(|e| BigRational::from_float(e.w).expect("validated finite positive weight"))
        .collect();
    let mut scale = BigInt::one();
    for w in &weights {
        scale = scale.lcm(w.denom());
    }

    let dim = n - 1;
    let mut m = vec![vec![BigInt::zero(); dim]; dim];
    for (e, w) in g.edges().iter().zip(&weights) {
        let wi = (w * BigRational::from_integer(scale.clone())).to_integer();
        if e.u < dim {
            m[e.u][e.u] += &wi;
        }
        if e.v < dim {
            m[e.v][e.v] += &wi;
        }
        if e.u < dim && e.v < dim {
            m[e.u][e.v] -= &wi;
            m[e.v][e.u] -= &wi;
        }
    }
    let det = bareiss_det(m)?;
    Ok(ExactCount(BigRational::new(det, scale.pow(dim as u32))))
}

/// Fan tree counts by the integer recurrence a_n = 3 a_{n-1} - a_{n-2},
/// a_1 = 1, a_2 = 3 (the even-index Fibonacci numbers).
pub fn fan_count(n: usize) -> Result<ExactCount> {
    if n == 0 {
        return Err(Error::InvalidParameter("fan count needs n >= 1".into()));
    }
    let (mut a, mut b) = (BigInt::one(), BigInt::from(3)); // a_1, a_2
    if n == 1 {
        return Ok(ExactCount(BigRational::from_integer(a)));
    }
    for _ in 2..n {
        let next = BigInt::from(3) * &b - &a;
        a = std::mem::replace(&mut b, next);
    }
    Ok(ExactCount(BigRational::from_integer(b)))
}

/// Result of exhaustive search over candidate subsets.
#[derive(Debug, Clone)]
pub struct BruteForceOpt {
    /// Lexicographically first optimal subset (candidate indices, ascending).
    pub subset: Vec<usize>,
    pub base_count: ExactCount,
    pub opt_count: ExactCount,
    /// log2(opt / base).
    pub log_gain: f64,
}

fn binomial_capped(n: usize, k: usize, cap: u128) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

const BRUTE_FORCE_GUARD: u128 = 1_000_000;

/// Globally optimal subset of at most k candidates by exhaustive enumeration
/// with exact counts. Since the objective is strictly monotone, only subsets
/// of size min(k, q) are enumerated. Refuses instances beyond the guard
/// rather than silently approximating.
pub fn brute_force_opt(g: &Graph, q: &CandidateSet, k: usize) -> Result<BruteForceOpt> {
    if q.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let kk = k.min(q.len());
    let combos = binomial_capped(q.len(), kk, BRUTE_FORCE_GUARD);
    if combos > BRUTE_FORCE_GUARD {
        return Err(Error::TooLarge(format!(
            "C({}, {kk}) exceeds the brute-force guard of {BRUTE_FORCE_GUARD}",
            q.len()
        )));
    }

    let base_count = tree_count_exact(g)?;
    let mut best: Option<(Vec<usize>, ExactCount)> = None;
    let mut idx: Vec<usize> = (0..kk).collect();
    loop {
        let with = g.add_edges(&idx.iter().map(|&i| q.get(i)).collect::<Vec<_>>())?;
        let count = tree_count_exact(&with)?;
        // strict improvement keeps the lexicographically first optimum
        if best.as_ref().map_or(true, |(_, c)| count > *c) {
            best = Some((idx.clone(), count));
        }
        // next k-combination in lexicographic order
        let mut i = kk;
        loop {
            if i == 0 {
                let (subset, opt_count) = best.unwrap();
                let log_gain = opt_count.log2() - base_count.log2();
                return Ok(BruteForceOpt { subset, base_count, opt_count, log_gain });
            }
            i -= 1;
            if idx[i] != i + q.len() - kk {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..kk {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Predicate form of the log-approximation sandwich: for b within (1 +/- eps)
/// of a, is log(1 + b) within (1 +/- 2 eps) of log(1 + a)?
pub fn check_log_approx(a: f64, b: f64, eps: f64) -> bool {
    let la = a.ln_1p();
    let lb = b.ln_1p();
    (1.0 - 2.0 * eps) * la <= lb && lb <= (1.0 + 2.0 * eps) * la
}
