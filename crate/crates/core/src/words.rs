//! Monomials, words of monomials and diagram codes.
//!
//! A diagram with `p` black spots is coded by a word of `p` non-unit
//! monomials in the variables `x1, x2, ...`; the exponent of `xj` in the
//! `i`-th entry is the number of lines joining black spot `i` to white
//! spot `j`. Codes are exactly the *compact* words, i.e. the words whose
//! variable indices form an initial segment `{1..k}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A non-unit commutative monomial `x_{i1}^{e1} ... x_{ik}^{ek}`.
///
/// Stored as `(variable index, exponent)` pairs sorted by index, with
/// indices `>= 1` and exponents `>= 1`. The derived ordering compares
/// these pairs lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    /// Builds a monomial from `(index, exponent)` factors. Repeated
    /// indices are merged and zero exponents dropped; the result must
    /// not be the unit.
    pub fn new(factors: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut v: Vec<(u32, u32)> = Vec::new();
        for (i, e) in factors {
            if i == 0 {
                return Err(Error::Parse("variable indices start at 1".into()));
            }
            if e == 0 {
                continue;
            }
            v.push((i, e));
        }
        v.sort_unstable();
        v.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        if v.is_empty() {
            return Err(Error::Parse("the unit monomial is not a letter".into()));
        }
        Ok(Monomial(v))
    }

    /// The single variable `x_i`.
    pub fn var(i: u32) -> Self {
        Self::new([(i, 1)]).expect("x_i is a valid monomial for i >= 1")
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn exponent(&self, i: u32) -> u32 {
        self.0
            .binary_search_by_key(&i, |f| f.0)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    /// Total degree (the weight of the letter).
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|f| f.0)
    }

    pub fn min_index(&self) -> u32 {
        self.0[0].0
    }

    pub fn max_index(&self) -> u32 {
        self.0[self.0.len() - 1].0
    }

    /// Product in the monoid of monomials (superposition of two spots).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.0.iter().chain(other.0.iter()).copied())
            .expect("product of non-unit monomials is non-unit")
    }

    /// Substitutes `x_i -> x_{f(i)}`; `f` must be injective on the support.
    pub(crate) fn reindex(&self, f: impl Fn(u32) -> u32) -> Monomial {
        let mut v: Vec<(u32, u32)> = self.0.iter().map(|&(i, e)| (f(i), e)).collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn translate(&self, p: u32) -> Monomial {
        Monomial(self.0.iter().map(|&(i, e)| (i + p, e)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad monomial `{s}`"));
        let mut factors = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let body = factor.strip_prefix('x').ok_or_else(bad)?;
            let (i, e) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let i: u32 = i.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            if i == 0 || e == 0 {
                return Err(bad());
            }
            factors.push((i, e));
        }
        Monomial::new(factors)
    }
}

/// A finite sequence of non-unit monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MonomialWord(Vec<Monomial>);

impl MonomialWord {
    pub fn new(entries: Vec<Monomial>) -> Self {
        MonomialWord(entries)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[Monomial] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Monomial> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the entry degrees; for a code this is the number of lines.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(Monomial::degree).sum()
    }

    /// Indices of the variables occurring in the word.
    pub fn ind_alph(&self) -> BTreeSet<u32> {
        self.0.iter().flat_map(|m| m.indices()).collect()
    }

    /// Largest variable index; 0 for the empty word.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(Monomial::max_index).max().unwrap_or(0)
    }

    pub fn min_index(&self) -> Option<u32> {
        self.0.iter().map(Monomial::min_index).min()
    }

    /// True when the alphabet has no hole.
    pub fn is_compact(&self) -> bool {
        self.first_hole().is_none()
    }

    fn first_hole(&self) -> Option<u32> {
        self.ind_alph()
            .into_iter()
            .zip(1u32..)
            .find(|(i, k)| i != k)
            .map(|(_, k)| k)
    }

    /// Removes the holes of the alphabet by the unique increasing
    /// re-indexing onto `{1..card}`.
    pub fn compact(&self) -> DiagramCode {
        let alph: Vec<u32> = self.ind_alph().into_iter().collect();
        if alph.iter().copied().eq(1..=alph.len() as u32) {
            return DiagramCode(self.clone());
        }
        let rank = |i: u32| alph.binary_search(&i).expect("index in alphabet") as u32 + 1;
        DiagramCode(MonomialWord(
            self.0.iter().map(|m| m.reindex(rank)).collect(),
        ))
    }

    /// The translation `T_p : x_i -> x_{i+p}`.
    pub fn translate(&self, p: u32) -> MonomialWord {
        if p == 0 {
            return self.clone();
        }
        MonomialWord(self.0.iter().map(|m| m.translate(p)).collect())
    }

    /// Plain concatenation `self * other`.
    pub fn concat(&self, other: &MonomialWord) -> MonomialWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MonomialWord(v)
    }

    /// Shifted concatenation: `self * T_{max index of self}(other)`.
    pub fn shifted_concat(&self, other: &MonomialWord) -> MonomialWord {
        self.concat(&other.translate(self.max_index()))
    }

    /// Left append `a * self`.
    pub fn prepend(&self, a: Monomial) -> MonomialWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        MonomialWord(v)
    }

    /// Overlap gauge at the cut after the first `t` entries:
    /// `(max index of the prefix - min index of the suffix + 1)^+`.
    pub fn overlap_gauge(&self, t: usize) -> Result<u32> {
        if t == 0 || t >= self.0.len() {
            return Err(Error::OutOfRange {
                position: t,
                len: self.0.len(),
            });
        }
        let left = self.0[..t]
            .iter()
            .map(Monomial::max_index)
            .max()
            .unwrap_or(0);
        let right = self.0[t..]
            .iter()
            .map(Monomial::min_index)
            .min()
            .unwrap_or(0);
        Ok((left + 1).saturating_sub(right))
    }

    /// Entries at the given (0-based) positions, in increasing order.
    pub fn subword(&self, positions: &BTreeSet<usize>) -> Result<MonomialWord> {
        if let Some(&p) = positions.iter().next_back() {
            if p >= self.0.len() {
                return Err(Error::OutOfRange {
                    position: p,
                    len: self.0.len(),
                });
            }
        }
        Ok(MonomialWord(
            positions.iter().map(|&i| self.0[i].clone()).collect(),
        ))
    }

    /// Entries selected by the bits of `mask` (bit `i` selects position `i`).
    pub(crate) fn subword_mask(&self, mask: u64) -> MonomialWord {
        MonomialWord(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, m)| m.clone())
                .collect(),
        )
    }

    pub fn slice(&self, start: usize, end: usize) -> MonomialWord {
        MonomialWord(self.0[start..end].to_vec())
    }
}

impl Ord for MonomialWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MonomialWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Monomial>> for MonomialWord {
    fn from(v: Vec<Monomial>) -> Self {
        MonomialWord(v)
    }
}

impl fmt::Display for MonomialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MonomialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for MonomialWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("a word must be bracketed: `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(MonomialWord::empty());
        }
        inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(MonomialWord)
    }
}

/// A compact word: the code of a labeled diagram.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramCode(MonomialWord);

impl DiagramCode {
    /// Validates compactness.
    pub fn new(word: MonomialWord) -> Result<Self> {
        match word.first_hole() {
            None => Ok(DiagramCode(word)),
            Some(missing) => Err(Error::NotCompact { missing }),
        }
    }

    /// The empty code, unit of every product.
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn word(&self) -> &MonomialWord {
        &self.0
    }

    pub fn into_word(self) -> MonomialWord {
        self.0
    }

    /// Shifted concatenation of two codes, again a code.
    pub fn shifted_concat(&self, other: &DiagramCode) -> DiagramCode {
        DiagramCode(self.0.shifted_concat(&other.0))
    }

    /// Number of white spots.
    pub fn columns(&self) -> u32 {
        self.0.max_index()
    }

    /// The unique factorization into irreducible codes. Cuts are the
    /// positions where the overlap gauge vanishes.
    pub fn factorize(&self) -> Vec<DiagramCode> {
        let n = self.0.len();
        let mut factors = Vec::new();
        let mut start = 0;
        let mut prefix_max = 0;
        // suffix_min[t] = smallest index occurring in entries t..n
        let mut suffix_min = vec![u32::MAX; n + 1];
        for t in (0..n).rev() {
            suffix_min[t] = suffix_min[t + 1].min(self.0 .0[t].min_index());
        }
        for (t, &after) in suffix_min.iter().enumerate().take(n).skip(1) {
            prefix_max = prefix_max.max(self.0 .0[t - 1].max_index());
            if prefix_max < after {
                factors.push(self.0.slice(start, t).compact());
                start = t;
            }
        }
        if n > 0 {
            factors.push(self.0.slice(start, n).compact());
        }
        factors
    }

    pub fn is_irreducible(&self) -> bool {
        !self.0.is_empty() && self.factorize().len() == 1
    }
}

impl Deref for DiagramCode {
    type Target = MonomialWord;
    fn deref(&self) -> &MonomialWord {
        &self.0
    }
}

impl TryFrom<MonomialWord> for DiagramCode {
    type Error = Error;
    fn try_from(w: MonomialWord) -> Result<Self> {
        DiagramCode::new(w)
    }
}

impl From<DiagramCode> for MonomialWord {
    fn from(c: DiagramCode) -> Self {
        c.0
    }
}

impl fmt::Display for DiagramCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for DiagramCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for DiagramCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DiagramCode::new(s.parse()?)
    }
}

/// Shifted concatenation of a sequence of codes.
pub fn shifted_concat_all<'a>(codes: impl IntoIterator<Item = &'a DiagramCode>) -> DiagramCode {
    codes
        .into_iter()
        .fold(DiagramCode::unit(), |acc, c| acc.shifted_concat(c))
}
