//! The coefficient ring `Z[qc, qs]`.
//!
//! A [`CoeffPoly`] is a sparse map from exponent pairs `(a, b)` (the
//! monomial `qc^a qs^b`) to arbitrary-precision integer coefficients.
//! Zero coefficients are never stored, so structural equality is ring
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair `(a, b)` of the monomial `qc^a qs^b`.
pub type Exponents = (u32, u32);

/// Exact polynomial in the two deformation parameters `qc` and `qs`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The indeterminate `qc`.
    pub fn qc() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The indeterminate `qs`.
    pub fn qs() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c * qc^a * qs^b`.
    pub fn monomial(c: impl Into<BigInt>, a: u32, b: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial, `None` if some term has a
    /// positive exponent.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Coefficient of `qc^a qs^b`.
    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponents, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &CoeffPoly, c: &CoeffPoly) {
        for (&(a1, b1), x) in &c.terms {
            for (&(a2, b2), y) in &other.terms {
                self.add_term((a1 + a2, b1 + b2), &(x * y));
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> CoeffPoly {
        if k.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> CoeffPoly {
        let mut base = self.clone();
        let mut acc = CoeffPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value of the polynomial at a rational point.
    pub fn eval(&self, qc: &BigRational, qs: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            let term = BigRational::from_integer(c.clone())
                * num_traits::pow(qc.clone(), a as usize)
                * num_traits::pow(qs.clone(), b as usize);
            acc += term;
        }
        acc
    }

    /// Substitution homomorphism `qc -> qc_val`, `qs -> qs_val`.
    pub fn substitute(&self, qc_val: &CoeffPoly, qs_val: &CoeffPoly) -> CoeffPoly {
        let mut powers = PowerCache::new(qc_val.clone(), qs_val.clone());
        let mut out = CoeffPoly::zero();
        for (&(a, b), c) in &self.terms {
            let m = &powers.qc(a) * &powers.qs(b);
            out.add_scaled(&m, &CoeffPoly::constant(c.clone()));
        }
        out
    }
}

/// Memoised powers of a pair of substitution values.
#[derive(Debug, Clone)]
pub(crate) struct PowerCache {
    qc: Vec<CoeffPoly>,
    qs: Vec<CoeffPoly>,
}

impl PowerCache {
    pub(crate) fn new(qc: CoeffPoly, qs: CoeffPoly) -> Self {
        Self {
            qc: vec![CoeffPoly::one(), qc],
            qs: vec![CoeffPoly::one(), qs],
        }
    }

    fn grow(table: &mut Vec<CoeffPoly>, k: usize) {
        while table.len() <= k {
            let next = &table[table.len() - 1] * &table[1];
            table.push(next);
        }
    }

    pub(crate) fn qc(&mut self, k: u32) -> CoeffPoly {
        Self::grow(&mut self.qc, k as usize);
        self.qc[k as usize].clone()
    }

    pub(crate) fn qs(&mut self, k: u32) -> CoeffPoly {
        Self::grow(&mut self.qs, k as usize);
        self.qs[k as usize].clone()
    }
}

impl From<i64> for CoeffPoly {
    fn from(c: i64) -> Self {
        CoeffPoly::constant(c)
    }
}

impl From<BigInt> for CoeffPoly {
    fn from(c: BigInt) -> Self {
        CoeffPoly::constant(c)
    }
}

impl Add<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CoeffPoly {
    type Output = CoeffPoly;
    fn add(mut self, rhs: CoeffPoly) -> CoeffPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&CoeffPoly> for CoeffPoly {
    fn add_assign(&mut self, rhs: &CoeffPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        CoeffPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        -&self
    }
}

impl Sub<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        self + &(-rhs)
    }
}

impl Sub for CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: CoeffPoly) -> CoeffPoly {
        &self - &rhs
    }
}

impl Mul<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        out.add_scaled(self, rhs);
        out
    }
}

impl Mul for CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: CoeffPoly) -> CoeffPoly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, name: &str, k: u32) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        _ => write!(f, "{name}^{k}"),
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            let constant = a == 0 && b == 0;
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            write_monomial(f, "qc", a)?;
            if a > 0 && b > 0 {
                write!(f, "*")?;
            }
            write_monomial(f, "qs", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffPoly({self})")
    }
}

fn parse_exponent(s: &str, full: &str) -> Result<u32> {
    s.parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad exponent `{s}` in polynomial `{full}`")))
}

fn parse_term(term: &str, full: &str) -> Result<(BigInt, u32, u32)> {
    if term.is_empty() {
        return Err(Error::Parse(format!("empty term in polynomial `{full}`")));
    }
    let mut coeff = BigInt::one();
    let (mut a, mut b) = (0u32, 0u32);
    for factor in term.split('*') {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, Some(parse_exponent(e, full)?)),
            None => (factor, None),
        };
        match name {
            "qc" => a += exp.unwrap_or(1),
            "qs" => b += exp.unwrap_or(1),
            _ if exp.is_none() && !name.is_empty() && name.bytes().all(|c| c.is_ascii_digit()) => {
                coeff *= name.parse::<BigInt>().expect("digits parse");
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected factor `{factor}` in polynomial `{full}`"
                )))
            }
        }
    }
    Ok((coeff, a, b))
}

impl FromStr for CoeffPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = CoeffPoly::zero();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('+') || rest.starts_with('-') {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (c, a, b) = parse_term(&rest[..end], &text)?;
            let c = if negative { -c } else { c };
            out.add_term((a, b), &c);
            rest = &rest[end..];
        }
        Ok(out)
    }
}
