//! Set partitions, incidence diagrams and the product-formula expansion.
//!
//! Every ordered pair of set partitions `(P1, P2)` of `{1..n}` yields a
//! diagram through the incidence matrix `card(Y ∩ Z)`. Grouping all
//! pairs by their unlabeled diagram gives the multiplicities `mult(d)`,
//! and the Hadamard product of two free exponentials expands as
//! `sum_d mult(d) L^alpha(d) V^beta(d)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diagrams::{LabeledDiagram, MultiIndex, UnlabeledDiagram};
use crate::error::{Error, Result};

/// Largest `n` accepted by the exhaustive enumerations unless a caller
/// asks for more.
pub const DEFAULT_MAX_N: usize = 7;

/// An unordered partition of `{1..n}`.
///
/// Blocks are sorted internally and ordered by their minimal element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Checks that `blocks` are non-empty, disjoint and cover `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::Invalid(format!("element {x} outside 1..{n}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Invalid(format!("element {x} appears twice")));
                }
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::Invalid(format!("element {x} is not covered")));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// From a restricted growth string: element `i+1` lies in block `rgs[i]`.
    fn from_rgs(rgs: &[usize]) -> Self {
        let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition {
            n: rgs.len(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `Type(P)`: block size -> number of blocks of that size.
    pub fn partition_type(&self) -> MultiIndex {
        let mut t = MultiIndex::new();
        for b in &self.blocks {
            *t.entry(b.len() as u32).or_insert(0) += 1;
        }
        t
    }

    fn block_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.n + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                label[x] = k;
            }
        }
        label
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.blocks.iter()).finish()
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            bound,
        });
    }
    Ok(())
}

/// All set partitions of `{1..n}`, each once, for `n <= bound`.
pub fn enumerate_partitions(n: usize, bound: usize) -> Result<Vec<SetPartition>> {
    check_bound(n, bound)?;
    let mut out = Vec::new();
    if n == 0 {
        out.push(SetPartition {
            n: 0,
            blocks: Vec::new(),
        });
        return Ok(out);
    }
    // restricted growth strings a_1 = 0, a_{i+1} <= 1 + max(a_1..a_i)
    let mut rgs = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        out.push(SetPartition::from_rgs(&rgs));
        let Some(i) = (1..n).rev().find(|&i| rgs[i] <= maxes[i - 1]) else {
            break;
        };
        rgs[i] += 1;
        maxes[i] = maxes[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
    Ok(out)
}

/// Incidence matrix `(card(Y ∩ Z))` with rows the blocks of `p1` and
/// columns the blocks of `p2`, both ordered by minimal element.
pub fn incidence(p1: &SetPartition, p2: &SetPartition) -> Result<LabeledDiagram> {
    if p1.n != p2.n {
        return Err(Error::Mismatch(format!(
            "partitions of {} and {} elements",
            p1.n, p2.n
        )));
    }
    let mut rows = vec![vec![0u32; p2.blocks.len()]; p1.blocks.len()];
    let l1 = p1.block_labels();
    let l2 = p2.block_labels();
    for x in 1..=p1.n {
        rows[l1[x]][l2[x]] += 1;
    }
    LabeledDiagram::from_rows(rows)
}

/// `mult(d)` for every diagram with `n` lines: the number of ordered
/// pairs of set partitions whose incidence diagram is `d`.
pub fn diagram_multiplicities(
    n: usize,
    bound: usize,
) -> Result<BTreeMap<UnlabeledDiagram, BigInt>> {
    let parts = enumerate_partitions(n, bound)?;
    let labeled: HashMap<LabeledDiagram, u64> = parts
        .par_iter()
        .fold(HashMap::new, |mut acc, p1| {
            for p2 in &parts {
                let d = incidence(p1, p2).expect("same n");
                *acc.entry(d).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let canon: Vec<(UnlabeledDiagram, u64)> = labeled
        .into_par_iter()
        .map(|(d, c)| (d.forget_labels(), c))
        .collect();
    let mut out = BTreeMap::new();
    for (d, c) in canon {
        *out.entry(d).or_insert_with(BigInt::zero) += c;
    }
    Ok(out)
}

/// A generating variable of the product formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenVar {
    L(u32),
    V(u32),
}

impl fmt::Display for GenVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenVar::L(k) => write!(f, "L{k}"),
            GenVar::V(k) => write!(f, "V{k}"),
        }
    }
}

/// Exact polynomial in the commuting variables `L_k`, `V_k`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GenPoly {
    terms: BTreeMap<BTreeMap<GenVar, u32>, BigInt>,
}

impl GenPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), BTreeMap::new())
    }

    pub fn var(v: GenVar) -> Self {
        Self::term(BigInt::one(), BTreeMap::from([(v, 1)]))
    }

    pub fn term(c: BigInt, monomial: BTreeMap<GenVar, u32>) -> Self {
        let mut p = Self::zero();
        p.add_term(monomial, c);
        p
    }

    /// `prod_k L_k^{alpha_k} * prod_k V_k^{beta_k}`.
    pub fn lv_monomial(c: BigInt, alpha: &MultiIndex, beta: &MultiIndex) -> Self {
        let mono = alpha
            .iter()
            .map(|(&k, &e)| (GenVar::L(k), e))
            .chain(beta.iter().map(|(&k, &e)| (GenVar::V(k), e)))
            .filter(|&(_, e)| e > 0)
            .collect();
        Self::term(c, mono)
    }

    fn add_term(&mut self, mono: BTreeMap<GenVar, u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &GenPoly) -> GenPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &GenPoly) -> GenPoly {
        let mut out = GenPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(*v).or_insert(0) += e;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> GenPoly {
        let mut out = GenPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in m {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Coefficients `c_0..c_n` of `exp(sum_k X_k z^k / k!)` in the basis
/// `z^m / m!`, via `c_{m+1} = sum_{k=0}^{m} C(m,k) X_{k+1} c_{m-k}`.
fn exp_egf_coefficients(n: usize, var: impl Fn(u32) -> GenVar) -> Vec<GenPoly> {
    let mut c = vec![GenPoly::one()];
    for m in 0..n {
        let mut next = GenPoly::zero();
        let mut binom = BigInt::one();
        for k in 0..=m {
            let term = GenPoly::var(var(k as u32 + 1)).mul(&c[m - k]).scale(&binom);
            next = next.add(&term);
            binom = binom * BigInt::from(m - k) / BigInt::from(k + 1);
        }
        c.push(next);
    }
    c
}

/// Both sides of the order-`n` product-formula identity.
#[derive(Debug, Clone)]
pub struct HadamardCheck {
    /// `a_n * b_n` from the truncated exponential series.
    pub lhs: GenPoly,
    /// `sum_{|d| = n} mult(d) L^alpha(d) V^beta(d)`.
    pub rhs: GenPoly,
    pub equal: bool,
}

pub fn hadamard_expansion_check(n: usize, bound: usize) -> Result<HadamardCheck> {
    check_bound(n, bound)?;
    let a = exp_egf_coefficients(n, GenVar::L);
    let b = exp_egf_coefficients(n, GenVar::V);
    let lhs = a[n].mul(&b[n]);
    let mut rhs = GenPoly::zero();
    for (d, mult) in diagram_multiplicities(n, bound)? {
        let t = d.matrix().spot_types();
        rhs = rhs.add(&GenPoly::lv_monomial(mult, &t.alpha, &t.beta));
    }
    let equal = lhs == rhs;
    Ok(HadamardCheck { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Bell numbers from the triangle recurrence.
    fn bell_triangle(n: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        row[0]
    }

    /// Independent enumeration: insert element n into each block or a new one.
    fn brute_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in brute_partitions(n - 1) {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(n);
                out.push(q);
            }
            let mut q = p.clone();
            q.push(vec![n]);
            out.push(q);
        }
        out
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(1, 7).unwrap().len(), 1);
        assert_eq!(brute_partitions(3).len(), 5);
        assert_eq!(enumerate_partitions(3, 7).unwrap().len(), 5);
        assert_eq!(bell_triangle(5), 52);
        assert_eq!(enumerate_partitions(5, 7).unwrap().len(), 52);
        for n in 0..=7 {
            let ps = enumerate_partitions(n, 7).unwrap();
            assert_eq!(ps.len() as u64, bell_triangle(n));
            let mut sorted = ps.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), ps.len(), "duplicates for n = {n}");
        }
        assert!(matches!(
            enumerate_partitions(8, 7),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 0..=5 {
            let mut a: Vec<SetPartition> = brute_partitions(n)
                .into_iter()
                .map(|b| SetPartition::new(n, b).unwrap())
                .collect();
            a.sort();
            let mut b = enumerate_partitions(n, 7).unwrap();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn types() {
        let p = |n, b: &[&[usize]]| {
            SetPartition::new(n, b.iter().map(|x| x.to_vec()).collect()).unwrap()
        };
        assert_eq!(
            p(3, &[&[1, 2, 3]]).partition_type(),
            MultiIndex::from([(3, 1)])
        );
        assert_eq!(
            p(3, &[&[1], &[2], &[3]]).partition_type(),
            MultiIndex::from([(1, 3)])
        );
        let p1 = p(11, &[&[2, 3, 5], &[1, 4, 6, 7, 8], &[9, 10, 11]]);
        assert_eq!(p1.partition_type(), MultiIndex::from([(3, 2), (5, 1)]));
    }

    #[test]
    fn invalid_partitions() {
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2], vec![2]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2], vec![]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 3]]).is_err());
    }

    #[test]
    fn incidence_matrices() {
        let p = |n, b: &[&[usize]]| {
            SetPartition::new(n, b.iter().map(|x| x.to_vec()).collect()).unwrap()
        };
        let p1 = p(11, &[&[2, 3, 5], &[1, 4, 6, 7, 8], &[9, 10, 11]]);
        let p2 = p(11, &[&[1], &[2, 3, 4], &[5, 6, 7, 8, 9], &[10, 11]]);
        let d = incidence(&p1, &p2).unwrap();
        // rows ordered by minima: {1,4,6,7,8}, {2,3,5}, {9,10,11}
        let expected = LabeledDiagram::parse("1 1 3 0\n0 2 1 0\n0 0 1 2").unwrap();
        assert_eq!(d, expected);
        let expected = LabeledDiagram::parse("0 2 1 0\n1 1 3 0\n0 0 1 2").unwrap();
        assert_eq!(d.permute(&[1, 0, 2], &[0, 1, 2, 3]), expected);
        assert_eq!(d.forget_labels(), expected.forget_labels());
        let t = d.spot_types();
        assert_eq!(t.alpha, p2.partition_type());
        assert_eq!(t.beta, p1.partition_type());

        assert_eq!(
            incidence(&p(1, &[&[1]]), &p(1, &[&[1]])).unwrap(),
            LabeledDiagram::parse("1").unwrap()
        );
        assert_eq!(
            incidence(&p(2, &[&[1, 2]]), &p(2, &[&[1], &[2]])).unwrap(),
            LabeledDiagram::parse("1 1").unwrap()
        );
        assert!(incidence(&p(1, &[&[1]]), &p(2, &[&[1, 2]])).is_err());
    }

    #[test]
    fn multiplicities_small() {
        let m1 = diagram_multiplicities(1, 7).unwrap();
        assert_eq!(m1.len(), 1);
        assert_eq!(m1.values().next().unwrap(), &BigInt::from(1));

        let m2 = diagram_multiplicities(2, 7).unwrap();
        let expect = |s: &str| LabeledDiagram::parse(s).unwrap().forget_labels();
        assert_eq!(m2.len(), 4);
        for s in ["2", "1 1", "1\n1", "1 0\n0 1"] {
            assert_eq!(m2[&expect(s)], BigInt::from(1), "class {s}");
        }
        let total: BigInt = diagram_multiplicities(3, 7).unwrap().values().sum();
        assert_eq!(total, BigInt::from(25));
    }

    #[test]
    fn exponential_coefficients() {
        let a = exp_egf_coefficients(3, GenVar::L);
        let l = |k| GenPoly::var(GenVar::L(k));
        assert_eq!(a[1], l(1));
        assert_eq!(a[2], l(2).add(&l(1).mul(&l(1))));
        // complete Bell polynomial B_3 = L3 + 3 L2 L1 + L1^3
        let b3 = l(3)
            .add(&l(2).mul(&l(1)).scale(&BigInt::from(3)))
            .add(&l(1).mul(&l(1)).mul(&l(1)));
        assert_eq!(a[3], b3);
    }

    #[test]
    fn product_formula_low_orders() {
        let c1 = hadamard_expansion_check(1, 7).unwrap();
        assert_eq!(
            c1.lhs,
            GenPoly::var(GenVar::L(1)).mul(&GenPoly::var(GenVar::V(1)))
        );
        assert!(c1.equal);
        let c2 = hadamard_expansion_check(2, 7).unwrap();
        let l = |k| GenPoly::var(GenVar::L(k));
        let v = |k| GenPoly::var(GenVar::V(k));
        let expected = l(2).add(&l(1).mul(&l(1))).mul(&v(2).add(&v(1).mul(&v(1))));
        assert_eq!(c2.lhs, expected);
        assert_eq!(c2.rhs, expected);
        assert!(hadamard_expansion_check(8, 7).is_err());
    }
}
