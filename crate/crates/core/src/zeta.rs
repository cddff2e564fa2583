//! Truncated (alternating) multiple zeta sums attached to codes.
//!
//! `zeta(s1..sn; σ1..σn) = sum_{i1 > i2 > ... > in >= 1} prod σk^ik / ik^sk`
//!
//! The outermost index is the largest one, so the word converges when
//! `s1 >= 2` or `σ1 = -1`. With this ordering the unshifted product at
//! `(qc, qs) = (1, 1)` is the stuffle product of the sums.

use std::fmt;

use dashmap::DashMap;

use crate::deform::twist_product;
use crate::error::{Error, Result};
use crate::words::DiagramCode;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZetaWord {
    s: Vec<u32>,
    sigma: Vec<i8>,
}

impl ZetaWord {
    pub fn new(s: Vec<u32>, sigma: Vec<i8>) -> Result<Self> {
        if s.len() != sigma.len() {
            return Err(Error::Mismatch(format!(
                "{} exponents but {} signs",
                s.len(),
                sigma.len()
            )));
        }
        if s.contains(&0) {
            return Err(Error::Invalid("zeta exponents must be positive".into()));
        }
        if sigma.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::Invalid("zeta signs must be +1 or -1".into()));
        }
        Ok(Self { s, sigma })
    }

    /// All signs `+1`.
    pub fn positive(s: Vec<u32>) -> Result<Self> {
        let sigma = vec![1; s.len()];
        Self::new(s, sigma)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.s
    }

    pub fn signs(&self) -> &[i8] {
        &self.sigma
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    pub fn is_convergent(&self) -> bool {
        match (self.s.first(), self.sigma.first()) {
            (Some(&s1), Some(&x1)) => s1 >= 2 || x1 == -1,
            _ => true,
        }
    }
}

impl fmt::Display for ZetaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(u32::to_string).collect();
        write!(f, "({}", s.join(","))?;
        if self.sigma.iter().any(|&x| x < 0) {
            let signs: Vec<&str> = self
                .sigma
                .iter()
                .map(|&x| if x > 0 { "+" } else { "-" })
                .collect();
            write!(f, "; {}", signs.join(","))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ZetaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Entry degrees of a non-empty code, all signs positive.
pub fn zeta_word_of(w: &DiagramCode) -> Result<ZetaWord> {
    if w.is_empty() {
        return Err(Error::EmptyCode("no zeta word for the unit"));
    }
    ZetaWord::positive(w.entries().iter().map(|m| m.degree()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: f64,
    pub truncation: usize,
    /// Estimate of `|value - exact|`; a bound when all signs are positive.
    pub tail_bound: f64,
}

fn sign_pow(sigma: i8, i: usize) -> f64 {
    if sigma < 0 && i % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Bound on the nested inner sums, as `A * (1 + ln x)^m` in the outer
/// index `x`: `A` collects the `ζ(s) <= s/(s-1)` factors and `m` counts
/// the harmonic ones.
fn inner_growth(zw: &ZetaWord) -> (f64, i32) {
    let mut a = 1.0;
    let mut m = 0;
    for &s in &zw.s[1..] {
        if s == 1 {
            m += 1;
        } else {
            a *= s as f64 / (s as f64 - 1.0);
        }
    }
    (a, m)
}

fn tail_bound(zw: &ZetaWord, n: usize) -> f64 {
    let (a, m) = inner_growth(zw);
    let nf = n as f64;
    let log = 1.0 + nf.ln();
    let s1 = zw.s[0] as f64;
    if zw.sigma[0] > 0 {
        // integral of (1 + ln x)^m / x^s1 over [N, oo)
        let t = s1 - 1.0;
        let mut sum = 0.0;
        let mut falling = 1.0;
        for j in 0..=m {
            sum += falling * log.powi(m - j) / t.powi(j + 1);
            falling *= (m - j) as f64;
        }
        a * sum / nf.powf(t)
    } else {
        // alternating outer sum: twice the first omitted term
        2.0 * a * (1.0 + (nf + 1.0).ln()).powi(m) / (nf + 1.0).powf(s1)
    }
}

/// Truncated sum over `N >= i1 > ... > in >= 1`, computed from the
/// innermost index outwards with running (compensated) prefix sums.
pub fn zeta_eval(zw: &ZetaWord, n: usize) -> Result<ZetaValue> {
    if !zw.is_convergent() {
        return Err(Error::Divergent(zw.to_string()));
    }
    let depth = zw.depth();
    if n < depth {
        return Err(Error::TruncationTooSmall {
            truncation: n,
            depth,
        });
    }
    if depth == 0 {
        return Ok(ZetaValue {
            value: 1.0,
            truncation: n,
            tail_bound: 0.0,
        });
    }
    // inner[i] = nested sum of the levels below the current one with
    // largest index < i
    let mut inner = vec![1.0f64; n + 1];
    inner[0] = 0.0;
    let mut terms = vec![0.0f64; n + 1];
    for level in (0..depth).rev() {
        let (s, sigma) = (zw.s[level] as i32, zw.sigma[level]);
        for i in 1..=n {
            terms[i] = sign_pow(sigma, i) * inner[i] / (i as f64).powi(s);
        }
        if level == 0 {
            break;
        }
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        inner[0] = 0.0;
        for i in 1..=n {
            inner[i] = sum + comp;
            let t = sum + terms[i];
            if sum.abs() >= terms[i].abs() {
                comp += (sum - t) + terms[i];
            } else {
                comp += (terms[i] - t) + sum;
            }
            sum = t;
        }
    }
    // outermost sum, small terms first
    let value: f64 = terms[1..].iter().rev().sum();
    Ok(ZetaValue {
        value,
        truncation: n,
        tail_bound: tail_bound(zw, n),
    })
}

/// Memoised truncated evaluations at a fixed truncation.
#[derive(Debug)]
pub struct ZetaEvaluator {
    truncation: usize,
    cache: DashMap<ZetaWord, ZetaValue>,
}

impl ZetaEvaluator {
    pub fn new(truncation: usize) -> Self {
        Self {
            truncation,
            cache: DashMap::new(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn eval(&self, zw: &ZetaWord) -> Result<ZetaValue> {
        if let Some(v) = self.cache.get(zw) {
            return Ok(*v);
        }
        let v = zeta_eval(zw, self.truncation)?;
        self.cache.insert(zw.clone(), v);
        Ok(v)
    }

    /// Both sides of `zeta(w1) zeta(w2) = zeta(w1 ↑ w2)` with the
    /// unshifted product at `(1, 1)`.
    pub fn stuffle_sides(&self, w1: &DiagramCode, w2: &DiagramCode) -> Result<StuffleCheck> {
        let z1 = zeta_word_of(w1)?;
        let z2 = zeta_word_of(w2)?;
        let lhs = self.eval(&z1)?.value * self.eval(&z2)?.value;
        let mut rhs = 0.0;
        let mut terms = 0;
        for (w, c) in &twist_product(w1.word(), w2.word()) {
            let k: i64 = c
                .terms()
                .map(|(_, x)| i64::try_from(x).expect("small coefficient"))
                .sum();
            if k == 0 {
                continue;
            }
            let zw = ZetaWord::positive(w.entries().iter().map(|m| m.degree()).collect())?;
            rhs += k as f64 * self.eval(&zw)?.value;
            terms += 1;
        }
        Ok(StuffleCheck { lhs, rhs, terms })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StuffleCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Number of words in the product.
    pub terms: usize,
}

impl StuffleCheck {
    pub fn difference(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// `|zeta(w1) zeta(w2) - zeta(w1 ↑ w2)| <= tol` at truncation `n`.
pub fn stuffle_check(w1: &DiagramCode, w2: &DiagramCode, n: usize, tol: f64) -> Result<bool> {
    let sides = ZetaEvaluator::new(n).stuffle_sides(w1, w2)?;
    Ok(sides.difference() <= tol)
}
