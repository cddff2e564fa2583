//! Finite linear combinations with coefficients in `Z[qc, qs]`.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::coeffring::CoeffPoly;
use crate::words::{DiagramCode, MonomialWord};

/// A finite sum `sum_k c_k * k` over basis keys `K`; zero coefficients
/// are never stored and keys iterate in their canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, CoeffPoly>,
}

/// Linear combination of words of monomials.
pub type WordElement = LinComb<MonomialWord>;
/// Element of the diagram algebra: a combination of codes.
pub type DiagElement = LinComb<DiagramCode>;
/// Element of the tensor square of the diagram algebra.
pub type TensorElement = LinComb<(DiagramCode, DiagramCode)>;

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `k` with coefficient 1.
    pub fn basis(k: K) -> Self {
        Self::term(k, CoeffPoly::one())
    }

    pub fn term(k: K, c: CoeffPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(k, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> CoeffPoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, CoeffPoly> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (k, x) in &other.terms {
            if unit {
                self.add_term(k.clone(), x);
            } else {
                self.add_term(k.clone(), &(x * c));
            }
        }
    }

    pub fn add(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(other, &CoeffPoly::one());
        out
    }

    pub fn sub(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(other, &CoeffPoly::constant(-1));
        out
    }

    pub fn scale(&self, c: &CoeffPoly) -> LinComb<K> {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LinComb<K> {
        self.scale(&CoeffPoly::constant(-1))
    }

    /// Applies `f` to every coefficient, dropping terms that vanish.
    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> LinComb<K> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Linear extension of a map on basis keys.
    pub fn map_keys<J: Ord + Clone>(&self, f: impl Fn(&K) -> J) -> LinComb<J> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, CoeffPoly)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, CoeffPoly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a CoeffPoly);
    type IntoIter = btree_map::Iter<'a, K, CoeffPoly>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} * {k}")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}

/// Display adapter printing a tensor element one term per line as
/// `<poly> * [left] (x) [right]`.
pub struct TensorDisplay<'a>(pub &'a TensorElement);

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ((l, r), c)) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} * {l} (x) {r}")?;
        }
        Ok(())
    }
}

/// `sum c * a (x) b  ->  sum c * a * b` for a bilinear `mul`.
pub fn contract(
    t: &TensorElement,
    mut mul: impl FnMut(&DiagramCode, &DiagramCode) -> DiagElement,
) -> DiagElement {
    let mut out = DiagElement::zero();
    for ((a, b), c) in t {
        out.add_scaled(&mul(a, b), c);
    }
    out
}
