//! Coproducts, counit and antipode of `LDIAG(qc, qs, qt)`.
//!
//! The algebra is free on irreducible codes: the products
//! `B(d) = g1 * g2 * ... * gk` of the irreducible factors of `d` form a
//! basis, and `B(d) = d + (codes with fewer irreducible factors)`. A
//! coproduct is fixed by its values on the generators, which are
//!
//! * `qt = 0`: the subword coproduct `sum_{I+J} cpt(w[I]) (x) cpt(w[J])`,
//! * `qt = 1`: deconcatenation `sum_k cpt(w[..k]) (x) cpt(w[k..])`,
//!
//! and on an arbitrary code it is obtained by inverting the triangular
//! change of basis. At `(qc, qs) = (0, 0)` the product is the shifted
//! concatenation, `B(d) = d`, and the qt = 0 coproduct is the plain
//! subword formula on every code.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::coeffring::CoeffPoly;
use crate::deform::{DeformParams, DeformedAlgebra};
use crate::diagrams::{codes_up_to, LabeledDiagram};
use crate::element::{contract, DiagElement, LinComb, TensorDisplay, TensorElement};
use crate::error::{Error, Result};
use crate::words::{DiagramCode, Monomial};

/// Largest number of lines accepted by `verify_hopf` unless overridden.
pub const DEFAULT_MAX_LINES: u32 = 5;

type Triple = (DiagramCode, DiagramCode, DiagramCode);

fn unit() -> DiagramCode {
    DiagramCode::unit()
}

fn check_len(w: &DiagramCode) {
    assert!(
        w.len() < 64,
        "codes with 64 or more entries are not supported"
    );
}

/// The subword coproduct: one term per ordered pair `(I, J)` of
/// complementary position sets.
pub fn coproduct0(w: &DiagramCode) -> TensorElement {
    check_len(w);
    let p = w.len();
    let full: u64 = if p == 0 { 0 } else { (1u64 << p) - 1 };
    let one = CoeffPoly::one();
    let mut out = TensorElement::zero();
    for mask in 0..=full {
        let left = w.subword_mask(mask).compact();
        let right = w.subword_mask(full & !mask).compact();
        out.add_term((left, right), &one);
    }
    out
}

/// Row deconcatenation with re-packing of both halves.
pub fn deconcatenation(w: &DiagramCode) -> TensorElement {
    let p = w.len();
    let one = CoeffPoly::one();
    (0..=p)
        .map(|k| {
            (
                (w.slice(0, k).compact(), w.slice(k, p).compact()),
                one.clone(),
            )
        })
        .collect()
}

/// Coproduct, antipode and products at fixed parameters, memoised per
/// code. Cached values are shared through `Arc` so no map guard is held
/// while a recursive call runs.
pub struct Hopf {
    algebra: DeformedAlgebra,
    coproducts: DashMap<DiagramCode, Arc<TensorElement>>,
    antipodes: DashMap<DiagramCode, Arc<DiagElement>>,
}

impl fmt::Debug for Hopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hopf")
            .field("params", self.params())
            .finish()
    }
}

impl Hopf {
    pub fn new(params: DeformParams) -> Self {
        Self {
            algebra: DeformedAlgebra::new(params),
            coproducts: DashMap::new(),
            antipodes: DashMap::new(),
        }
    }

    pub fn params(&self) -> &DeformParams {
        self.algebra.params()
    }

    pub fn algebra(&self) -> &DeformedAlgebra {
        &self.algebra
    }

    fn generator_coproduct(&self, g: &DiagramCode) -> TensorElement {
        match self.params().qt() {
            0 => coproduct0(g),
            _ => deconcatenation(g),
        }
    }

    pub fn coproduct(&self, w: &DiagramCode) -> Arc<TensorElement> {
        if let Some(hit) = self.coproducts.get(w) {
            return Arc::clone(hit.value());
        }
        let value = Arc::new(self.compute_coproduct(w));
        self.coproducts.insert(w.clone(), Arc::clone(&value));
        value
    }

    fn compute_coproduct(&self, w: &DiagramCode) -> TensorElement {
        if w.is_empty() {
            return TensorElement::basis((unit(), unit()));
        }
        let factors = w.factorize();
        if factors.len() == 1 {
            return self.generator_coproduct(w);
        }
        let mut out = TensorElement::basis((unit(), unit()));
        for g in &factors {
            out = self.tensor_mul(&out, &self.coproduct(g));
        }
        // out = coproduct(B(w)); remove the lower terms of B(w)
        let basis = self.algebra.basis_element(w);
        for (v, c) in &basis {
            if v == w {
                debug_assert!(c.is_one());
                continue;
            }
            debug_assert!(v.factorize().len() < factors.len());
            out.add_scaled(&self.coproduct(v), &-c);
        }
        out
    }

    /// Linear extension of the coproduct.
    pub fn coproduct_element(&self, e: &DiagElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in e {
            out.add_scaled(&self.coproduct(w), c);
        }
        out
    }

    /// Component-wise product in the tensor square.
    pub fn tensor_mul(&self, t1: &TensorElement, t2: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), x) in t1 {
            for ((c, d), y) in t2 {
                let left = self.algebra.product_codes(a, c);
                let right = self.algebra.product_codes(b, d);
                let xy = x * y;
                for (l, u) in left.iter() {
                    for (r, v) in right.iter() {
                        out.add_term((l.clone(), r.clone()), &(&xy * &(u * v)));
                    }
                }
            }
        }
        out
    }

    /// `S(w) = -sum S(a) * b` over the terms `a (x) b` of the coproduct
    /// other than `w (x) []`.
    pub fn antipode(&self, w: &DiagramCode) -> Arc<DiagElement> {
        if let Some(hit) = self.antipodes.get(w) {
            return Arc::clone(hit.value());
        }
        let value = if w.is_empty() {
            DiagElement::basis(unit())
        } else {
            let mut acc = DiagElement::zero();
            for ((a, b), c) in self.coproduct(w).iter() {
                if b.is_empty() {
                    continue;
                }
                let sa = self.antipode(a);
                acc.add_scaled(
                    &self.algebra.product(&sa, &DiagElement::basis(b.clone())),
                    c,
                );
            }
            acc.neg()
        };
        let value = Arc::new(value);
        self.antipodes.insert(w.clone(), Arc::clone(&value));
        value
    }

    pub fn antipode_element(&self, e: &DiagElement) -> DiagElement {
        let mut out = DiagElement::zero();
        for (w, c) in e {
            out.add_scaled(&self.antipode(w), c);
        }
        out
    }

    /// `w` is primitive: its coproduct is `w (x) [] + [] (x) w`.
    pub fn is_gpe(&self, w: &DiagramCode) -> Result<bool> {
        if w.is_empty() {
            return Err(Error::EmptyCode("the unit is not primitive"));
        }
        let expected: TensorElement = [
            ((w.clone(), unit()), CoeffPoly::one()),
            ((unit(), w.clone()), CoeffPoly::one()),
        ]
        .into_iter()
        .collect();
        Ok(*self.coproduct(w) == expected)
    }

    /// `mu (S (x) Id) coproduct(w)`.
    pub fn left_convolution(&self, w: &DiagramCode) -> DiagElement {
        contract(&self.coproduct(w), |a, b| {
            self.algebra
                .product(&self.antipode(a), &DiagElement::basis(b.clone()))
        })
    }

    /// `mu (Id (x) S) coproduct(w)`.
    pub fn right_convolution(&self, w: &DiagramCode) -> DiagElement {
        contract(&self.coproduct(w), |a, b| {
            self.algebra
                .product(&DiagElement::basis(a.clone()), &self.antipode(b))
        })
    }

    fn coproduct_left(&self, t: &TensorElement) -> LinComb<Triple> {
        let mut out = LinComb::zero();
        for ((a, b), c) in t {
            for ((a1, a2), x) in self.coproduct(a).iter() {
                out.add_term((a1.clone(), a2.clone(), b.clone()), &(c * x));
            }
        }
        out
    }

    fn coproduct_right(&self, t: &TensorElement) -> LinComb<Triple> {
        let mut out = LinComb::zero();
        for ((a, b), c) in t {
            for ((b1, b2), x) in self.coproduct(b).iter() {
                out.add_term((a.clone(), b1.clone(), b2.clone()), &(c * x));
            }
        }
        out
    }
}

/// The qt = 1 coproduct at the given `(qc, qs)`.
pub fn coproduct1(w: &DiagramCode, params: &DeformParams) -> TensorElement {
    let params = params.with_qt(1).expect("1 is a valid qt");
    Hopf::new(params).coproduct(w).as_ref().clone()
}

/// The coproduct selected by `params.qt`.
pub fn coproduct(w: &DiagramCode, params: &DeformParams) -> TensorElement {
    Hopf::new(params.clone()).coproduct(w).as_ref().clone()
}

/// Coefficient of the empty code.
pub fn counit(e: &DiagElement) -> CoeffPoly {
    e.coeff(&unit())
}

/// The antipode of `(0, 0, 0)` as an alternating sum over ordered set
/// compositions of the lines.
pub fn antipode_explicit(w: &DiagramCode) -> DiagElement {
    check_len(w);
    let p = w.len();
    if p == 0 {
        return DiagElement::basis(unit());
    }
    fn walk(w: &DiagramCode, rest: u64, acc: &DiagramCode, sign: i64, out: &mut DiagElement) {
        if rest == 0 {
            out.add_term(acc.clone(), &CoeffPoly::constant(sign));
            return;
        }
        // nonempty submasks of rest
        let mut sub = rest;
        while sub != 0 {
            let block = w.subword_mask(sub).compact();
            walk(w, rest & !sub, &acc.shifted_concat(&block), -sign, out);
            sub = (sub - 1) & rest;
        }
    }
    let mut out = DiagElement::zero();
    walk(w, (1u64 << p) - 1, &unit(), 1, &mut out);
    out
}

/// Linear extension of the antipode at the given parameters.
pub fn antipode(e: &DiagElement, params: &DeformParams) -> DiagElement {
    Hopf::new(params.clone()).antipode_element(e)
}

pub fn is_gpe(w: &DiagramCode, params: &DeformParams) -> Result<bool> {
    Hopf::new(params.clone()).is_gpe(w)
}

/// Maximal column sum of the diagram of `w`.
pub fn level_of(w: &DiagramCode) -> u32 {
    LabeledDiagram::from_code(w).level()
}

/// `d_k = [x1*x2*...*xk]`: one black spot joined to `k` white spots.
pub fn lbell_generator(k: u32) -> Result<DiagramCode> {
    if k == 0 {
        return Err(Error::Invalid("LBELL generators start at k = 1".into()));
    }
    let m = Monomial::new((1..=k).map(|i| (i, 1)))?;
    DiagramCode::new(vec![m].into())
}

/// Outcome of one axiom over all test inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub checked: usize,
    /// First failing input, in the order the inputs were enumerated.
    pub counterexample: Option<String>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    pub params: String,
    pub max_lines: u32,
    pub axioms: Vec<AxiomResult>,
}

impl HopfReport {
    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(AxiomResult::passed)
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.name == name)
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "hopf axioms at {} on codes with <= {} lines",
            self.params, self.max_lines
        )?;
        for a in &self.axioms {
            let status = if a.passed() { "pass" } else { "FAIL" };
            write!(f, "  {:<22} {status} ({} checked)", a.name, a.checked)?;
            if let Some(c) = &a.counterexample {
                write!(f, "\n    counterexample: {}", c.replace('\n', "\n      "))?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "overall: {}",
            if self.all_passed() { "pass" } else { "FAIL" }
        )
    }
}

fn run_axiom<T: Sync>(
    name: &'static str,
    inputs: &[T],
    check: impl Fn(&T) -> Option<String> + Sync,
) -> AxiomResult {
    let counterexample = inputs
        .par_iter()
        .map(&check)
        .find_first(Option::is_some)
        .flatten();
    AxiomResult {
        name,
        checked: inputs.len(),
        counterexample,
    }
}

fn lines_of<K>(e: &LinComb<K>, f: impl Fn(&K) -> u32) -> BTreeSet<u32>
where
    K: Ord + Clone,
{
    e.keys().map(f).collect()
}

/// Exhaustive check of the bialgebra and antipode axioms on all codes
/// with at most `max_lines` lines. Product-based axioms use the pairs
/// `(x, y)` of non-empty codes with `|x| + |y| <= max_lines`.
pub fn verify_hopf(params: &DeformParams, max_lines: u32, bound: u32) -> Result<HopfReport> {
    if max_lines > bound {
        return Err(Error::BoundExceeded {
            what: "max_lines",
            value: max_lines as usize,
            bound: bound as usize,
        });
    }
    let h = Hopf::new(params.clone());
    let codes = codes_up_to(max_lines);
    let pairs: Vec<(DiagramCode, DiagramCode)> = codes
        .iter()
        .filter(|x| !x.is_empty())
        .flat_map(|x| {
            codes
                .iter()
                .filter(move |y| !y.is_empty() && x.weight() + y.weight() <= max_lines)
                .map(move |y| (x.clone(), y.clone()))
        })
        .collect();
    let unit_elem = DiagElement::basis(unit());
    let mut axioms = Vec::new();

    axioms.push(run_axiom("grading", &codes, |w| {
        let ok = h
            .coproduct(w)
            .keys()
            .all(|(a, b)| a.weight() + b.weight() == w.weight());
        (!ok).then(|| format!("coproduct of {w} is not graded"))
    }));
    axioms.push(run_axiom("product grading", &pairs, |(x, y)| {
        let p = h.algebra().product_codes(x, y);
        let lens = lines_of(&p, |c| c.weight());
        (lens.len() > 1 || lens.iter().any(|&l| l != x.weight() + y.weight()))
            .then(|| format!("{x} * {y}"))
    }));
    axioms.push(run_axiom("counit", &codes, |w| {
        let d = h.coproduct(w);
        let expect = DiagElement::basis(w.clone());
        let mut left = DiagElement::zero();
        let mut right = DiagElement::zero();
        for ((a, b), c) in d.iter() {
            if a.is_empty() {
                left.add_term(b.clone(), c);
            }
            if b.is_empty() {
                right.add_term(a.clone(), c);
            }
        }
        (left != expect || right != expect).then(|| format!("{w}"))
    }));
    axioms.push(run_axiom("coassociativity", &codes, |w| {
        let d = h.coproduct(w);
        let l = h.coproduct_left(&d);
        let r = h.coproduct_right(&d);
        (l != r).then(|| {
            let diff = l.sub(&r);
            let (k, c) = diff.iter().next().expect("nonzero");
            format!(
                "{w}: sides differ by {c} at {} (x) {} (x) {}",
                k.0, k.1, k.2
            )
        })
    }));
    axioms.push(run_axiom("morphism", &pairs, |(x, y)| {
        let lhs = h.coproduct_element(&h.algebra().product_codes(x, y));
        let rhs = h.tensor_mul(&h.coproduct(x), &h.coproduct(y));
        (lhs != rhs).then(|| format!("{x} * {y}: difference\n{}", TensorDisplay(&lhs.sub(&rhs))))
    }));
    axioms.push(run_axiom("antipode left", &codes, |w| {
        let expect = if w.is_empty() {
            unit_elem.clone()
        } else {
            DiagElement::zero()
        };
        let got = h.left_convolution(w);
        (got != expect).then(|| format!("{w}: got\n{got}"))
    }));
    axioms.push(run_axiom("antipode right", &codes, |w| {
        let expect = if w.is_empty() {
            unit_elem.clone()
        } else {
            DiagElement::zero()
        };
        let got = h.right_convolution(w);
        (got != expect).then(|| format!("{w}: got\n{got}"))
    }));
    if params.is_zero_zero() && params.qt() == 0 {
        axioms.push(run_axiom("explicit antipode", &codes, |w| {
            let explicit = antipode_explicit(w);
            (*h.antipode(w) != explicit).then(|| format!("{w}"))
        }));
    }
    Ok(HopfReport {
        params: params.to_string(),
        max_lines,
        axioms,
    })
}
