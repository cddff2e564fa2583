//! The crossing/superposition deformed product.
//!
//! On words of monomials the twisted law is
//!
//! ```text
//! w ↑ [] = [] ↑ w = w
//! a*u ↑ b*v = a*(u ↑ b*v)
//!           + qc^{|a*u||b|}          b*(a*u ↑ v)
//!           + qc^{|u||b|} qs^{|a||b|} (ab)*(u ↑ v)
//! ```
//!
//! where `|.|` is the total degree and `ab` the product of monomials.
//! The diagram product shifts the right factor past the variables of the
//! left one before applying `↑`. Dropping the superposition term gives
//! the quantum shuffle.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use dashmap::DashMap;

use crate::coeffring::CoeffPoly;
use crate::element::{DiagElement, WordElement};
use crate::error::{Error, Result};
use crate::words::{DiagramCode, Monomial, MonomialWord};

/// Value of one deformation parameter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Param {
    /// Keep the parameter as an indeterminate.
    Symbolic,
    /// Substitute a polynomial in `qc, qs` (usually an integer).
    Value(CoeffPoly),
}

impl Param {
    pub fn int(v: i64) -> Self {
        Param::Value(CoeffPoly::constant(v))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Symbolic => write!(f, "sym"),
            Param::Value(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sym" | "symbolic" => Ok(Param::Symbolic),
            other => Ok(Param::Value(other.parse()?)),
        }
    }
}

/// The three parameters `(qc, qs, qt)` with `qt` restricted to `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeformParams {
    pub qc: Param,
    pub qs: Param,
    qt: bool,
}

impl DeformParams {
    pub fn new(qc: Param, qs: Param, qt: u32) -> Result<Self> {
        let qt = match qt {
            0 => false,
            1 => true,
            other => return Err(Error::InvalidQt(other)),
        };
        Ok(Self { qc, qs, qt })
    }

    /// Integer parameters, e.g. `(0, 0, 0)` or `(1, 1, 1)`.
    pub fn numeric(qc: i64, qs: i64, qt: u32) -> Result<Self> {
        Self::new(Param::int(qc), Param::int(qs), qt)
    }

    pub fn symbolic(qt: u32) -> Result<Self> {
        Self::new(Param::Symbolic, Param::Symbolic, qt)
    }

    pub fn qt(&self) -> u32 {
        self.qt as u32
    }

    /// Same `qc, qs`, other `qt`.
    pub fn with_qt(&self, qt: u32) -> Result<Self> {
        Self::new(self.qc.clone(), self.qs.clone(), qt)
    }

    pub fn is_symbolic(&self) -> bool {
        self.qc == Param::Symbolic && self.qs == Param::Symbolic
    }

    fn value(p: &Param, indeterminate: CoeffPoly) -> CoeffPoly {
        match p {
            Param::Symbolic => indeterminate,
            Param::Value(v) => v.clone(),
        }
    }

    /// Applies the substitution `qc -> qc value, qs -> qs value`.
    pub fn specialize(&self, c: &CoeffPoly) -> CoeffPoly {
        if self.is_symbolic() {
            return c.clone();
        }
        c.substitute(
            &Self::value(&self.qc, CoeffPoly::qc()),
            &Self::value(&self.qs, CoeffPoly::qs()),
        )
    }

    pub fn is_zero_zero(&self) -> bool {
        let zero = Param::Value(CoeffPoly::zero());
        self.qc == zero && self.qs == zero
    }
}

impl fmt::Display for DeformParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(qc={}, qs={}, qt={})", self.qc, self.qs, self.qt())
    }
}

impl fmt::Debug for DeformParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Suffix weights: `out[i] = |w[i..]|`.
fn suffix_weights(w: &MonomialWord) -> Vec<u32> {
    let mut out = vec![0; w.len() + 1];
    for i in (0..w.len()).rev() {
        out[i] = out[i + 1] + w.entries()[i].degree();
    }
    out
}

fn prepend_all(a: &Monomial, e: &WordElement, c: &CoeffPoly, into: &mut WordElement) {
    for (w, x) in e {
        let coeff = if c.is_one() { x.clone() } else { x * c };
        into.add_term(w.prepend(a.clone()), &coeff);
    }
}

/// Bottom-up evaluation of the recursion over suffix pairs
/// `(w1[i..], w2[j..])`, keeping one row of the table at a time.
fn twisted(w1: &MonomialWord, w2: &MonomialWord, superpose: bool) -> WordElement {
    let (n, m) = (w1.len(), w2.len());
    let (x, y) = (w1.entries(), w2.entries());
    let s1 = suffix_weights(w1);
    // row i+1 of the table, indexed by j
    let mut below: Vec<WordElement> = (0..=m)
        .map(|j| WordElement::basis(w2.slice(j, m)))
        .collect();
    for i in (0..n).rev() {
        let mut row: Vec<WordElement> = vec![WordElement::zero(); m + 1];
        row[m] = WordElement::basis(w1.slice(i, n));
        for j in (0..m).rev() {
            let (a, b) = (&x[i], &y[j]);
            let (da, db) = (a.degree(), b.degree());
            let mut cell = WordElement::zero();
            prepend_all(a, &below[j], &CoeffPoly::one(), &mut cell);
            prepend_all(
                b,
                &row[j + 1],
                &CoeffPoly::monomial(1, s1[i] * db, 0),
                &mut cell,
            );
            if superpose {
                let c = CoeffPoly::monomial(1, s1[i + 1] * db, da * db);
                prepend_all(&a.mul(b), &below[j + 1], &c, &mut cell);
            }
            row[j] = cell;
        }
        below = row;
    }
    below.swap_remove(0)
}

/// The unshifted twisted law `w1 ↑ w2` with symbolic `qc, qs`.
pub fn twist_product(w1: &MonomialWord, w2: &MonomialWord) -> WordElement {
    twisted(w1, w2, true)
}

/// The quantum shuffle `w1 ⊔_qc w2` (no superposition term).
pub fn quantum_shuffle(w1: &MonomialWord, w2: &MonomialWord) -> WordElement {
    twisted(w1, w2, false)
}

fn shift_right(c1: &DiagramCode, c2: &DiagramCode) -> MonomialWord {
    c2.word().translate(c1.columns())
}

fn as_codes(e: WordElement) -> DiagElement {
    e.map_keys(|w| DiagramCode::new(w.clone()).expect("shifted products of codes are codes"))
}

/// Shifted twisted product of two codes, symbolic `qc, qs`.
pub fn shifted_twist_product(c1: &DiagramCode, c2: &DiagramCode) -> DiagElement {
    as_codes(twist_product(c1.word(), &shift_right(c1, c2)))
}

/// Shifted quantum shuffle of two codes.
pub fn shifted_quantum_shuffle(c1: &DiagramCode, c2: &DiagramCode) -> DiagElement {
    as_codes(quantum_shuffle(c1.word(), &shift_right(c1, c2)))
}

/// Bilinear extension of the unshifted law to word elements, specialized.
pub fn twist_product_elements(
    e1: &WordElement,
    e2: &WordElement,
    params: &DeformParams,
) -> WordElement {
    let mut out = WordElement::zero();
    for (w1, c1) in e1 {
        for (w2, c2) in e2 {
            let p = twist_product(w1, w2).map_coeffs(|c| params.specialize(c));
            out.add_scaled(&p, &(c1 * c2));
        }
    }
    out
}

/// `LDIAG(qc, qs)`: the diagram algebra with the shifted deformed
/// product at fixed parameters. Products of codes are memoised.
#[derive(Debug)]
pub struct DeformedAlgebra {
    params: DeformParams,
    cache: DashMap<(DiagramCode, DiagramCode), Arc<DiagElement>>,
}

impl DeformedAlgebra {
    pub fn new(params: DeformParams) -> Self {
        Self {
            params,
            cache: DashMap::new(),
        }
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    /// Product of two codes.
    pub fn product_codes(&self, c1: &DiagramCode, c2: &DiagramCode) -> Arc<DiagElement> {
        if c1.is_empty() || c2.is_empty() {
            let code = if c1.is_empty() { c2 } else { c1 };
            return Arc::new(DiagElement::basis(code.clone()));
        }
        let key = (c1.clone(), c2.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Arc::clone(hit.value());
        }
        let value = if self.params.is_zero_zero() {
            DiagElement::basis(c1.shifted_concat(c2))
        } else {
            shifted_twist_product(c1, c2).map_coeffs(|c| self.params.specialize(c))
        };
        let value = Arc::new(value);
        self.cache.insert(key, Arc::clone(&value));
        value
    }

    /// Bilinear product of two elements.
    pub fn product(&self, e1: &DiagElement, e2: &DiagElement) -> DiagElement {
        let mut out = DiagElement::zero();
        for (c1, x) in e1 {
            for (c2, y) in e2 {
                out.add_scaled(&self.product_codes(c1, c2), &(x * y));
            }
        }
        out
    }

    /// Product of a sequence of codes (the unit for an empty sequence).
    pub fn product_all<'a>(&self, codes: impl IntoIterator<Item = &'a DiagramCode>) -> DiagElement {
        codes
            .into_iter()
            .fold(DiagElement::basis(DiagramCode::unit()), |acc, c| {
                self.product(&acc, &DiagElement::basis(c.clone()))
            })
    }

    /// `B(d)`: the product of the irreducible factors of `code`.
    pub fn basis_element(&self, code: &DiagramCode) -> DiagElement {
        self.product_all(&code.factorize())
    }
}

/// Shifted deformed product of two elements at the given parameters.
pub fn deformed_product(e1: &DiagElement, e2: &DiagElement, params: &DeformParams) -> DiagElement {
    DeformedAlgebra::new(params.clone()).product(e1, e2)
}
