//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`ExponentVector`], whose `Ord`
//! is graded-lexicographic with `x0 > x1 > ...`. Iterating a polynomial
//! therefore visits terms from the smallest monomial to the leading one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{shape, Result};

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exponents of a monomial, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(ambient: usize) -> Self {
        ExponentVector(vec![0; ambient])
    }

    /// The monomial `x_i`.
    pub fn unit(ambient: usize, i: usize) -> Self {
        let mut e = vec![0; ambient];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// Extends with zero exponents up to `ambient` variables.
    pub fn padded(&self, ambient: usize) -> ExponentVector {
        let mut e = self.0.clone();
        e.resize(ambient, 0);
        ExponentVector(e)
    }

    /// All exponent vectors of total degree `degree` in `ambient` variables,
    /// in descending graded-lex order (`x0^e` first).
    pub fn all_of_degree(ambient: usize, degree: u32) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; ambient];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(ExponentVector(cur.clone()));
                return;
            }
            for a in (0..=left).rev() {
                cur[i] = a;
                rec(i + 1, left - a, cur, out);
            }
        }
        if ambient == 0 {
            if degree == 0 {
                out.push(ExponentVector(Vec::new()));
            }
            return out;
        }
        rec(0, degree, &mut cur, &mut out);
        out
    }

    /// All exponent vectors of total degree at most `bound`, descending.
    pub fn all_up_to_degree(ambient: usize, bound: u32) -> Vec<ExponentVector> {
        (0..=bound)
            .rev()
            .flat_map(|d| Self::all_of_degree(ambient, d))
            .collect()
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ambient: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(ambient: usize) -> Self {
        Polynomial {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: usize, c: Rational) -> Self {
        Self::monomial(ambient, ExponentVector::zero(ambient), c)
    }

    pub fn one(ambient: usize) -> Self {
        Self::constant(ambient, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(ambient: usize, i: usize) -> Self {
        Self::monomial(ambient, ExponentVector::unit(ambient, i), Rational::one())
    }

    pub fn monomial(ambient: usize, exps: ExponentVector, c: Rational) -> Self {
        assert_eq!(exps.len(), ambient, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { ambient, terms }
    }

    /// Builds from `(coefficient, exponents)` pairs, summing repeats.
    pub fn from_terms<I>(ambient: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut p = Polynomial::zero(ambient);
        for (c, e) in terms {
            assert_eq!(e.len(), ambient, "exponent vector length");
            p.add_term(ExponentVector(e), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
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
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// Smallest total degree among the terms.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).min()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms
            .keys()
            .all(|e| e.total_degree() == d)
            .then_some(d)
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zero(self.ambient))
    }

    /// The component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_term(&self, e: &ExponentVector, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(f, v)| (f.mul(e), v * c))
                .collect(),
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.ambient != other.ambient {
            return shape(format!(
                "ambient mismatch: {} vs {} variables",
                self.ambient, other.ambient
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.ambient);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ambient);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.ambient);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut f = e.clone();
            f.0[i] -= 1;
            out.add_term(f, c * rat(k as i64));
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ambient {
            return shape(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.ambient
            ));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in point.iter().zip(&e.0) {
                if *k > 0 {
                    t *= num_traits::pow(x.clone(), *k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> images[i]`; all images share one ambient ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ambient {
            return shape("compose: one image per variable required");
        }
        let target = images.first().map_or(0, |p| p.ambient);
        if images.iter().any(|p| p.ambient != target) {
            return shape("compose: images live in different rings");
        }
        let mut out = Polynomial::zero(target);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Reinterprets in a ring with more variables (new ones appended).
    pub fn embed(&self, ambient: usize) -> Polynomial {
        assert!(ambient >= self.ambient);
        Polynomial {
            ambient,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.padded(ambient), c.clone()))
                .collect(),
        }
    }

    /// Drops variables `ambient..`; fails if any of them occurs.
    pub fn restrict(&self, ambient: usize) -> Result<Polynomial> {
        let mut out = Polynomial::zero(ambient);
        for (e, c) in &self.terms {
            if e.0[ambient..].iter().any(|&k| k > 0) {
                return shape("restrict: dropped variable occurs");
            }
            out.terms
                .insert(ExponentVector(e.0[..ambient].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Keeps only terms whose exponent in `x_var` is at most `max`.
    pub fn truncate_in(&self, var: usize, max: u32) -> Polynomial {
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[var] <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degree in the single variable `x_var`.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.0[var]).max()
    }

    /// Coefficient of `x_var^k`, as a polynomial not involving `x_var`.
    pub fn coefficient_in(&self, var: usize, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.ambient);
        for (e, c) in &self.terms {
            if e.0[var] == k {
                let mut f = e.clone();
                f.0[var] = 0;
                out.terms.insert(f, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut q = Polynomial::zero(self.ambient);
        while let Some((e, c)) = rem.leading() {
            if !lm.divides(e) {
                return None;
            }
            let qe = lm.quotient_of(e);
            let qc = c / &lc;
            rem = &rem - &divisor.mul_term(&qe, &qc);
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Greatest common divisor over the rationals, normalized to a monic
    /// leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(gcd_rec(self, other).monic())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Rescales to integer coefficients with unit content and positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let v = (c * Rational::from_integer(den.clone())).to_integer();
            num = num.gcd(&v);
        }
        let mut f = Rational::new(den, num);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

/// Variables occurring in `p`, highest index first.
fn top_variable(a: &Polynomial, b: &Polynomial) -> Option<usize> {
    (0..a.ambient)
        .rev()
        .find(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0)
}

fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let deg = p.degree_in(var).unwrap_or(0);
    let mut g = Polynomial::zero(p.ambient);
    for k in 0..=deg {
        let c = p.coefficient_in(var, k);
        if !c.is_zero() {
            g = gcd_rec(&g, &c);
            if g.is_constant() {
                return Polynomial::one(p.ambient);
            }
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` viewed as univariate in `var`.
fn pseudo_rem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var).unwrap_or(0);
    let lcb = b.coefficient_in(var, db);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree_in(var).unwrap_or(0);
        if dr < db {
            return r;
        }
        let lcr = r.coefficient_in(var, dr);
        let mut shift = ExponentVector::zero(a.ambient);
        shift.0[var] = dr - db;
        let t = (&lcr * b).mul_term(&shift, &Rational::one());
        r = &(&lcb * &r) - &t;
    }
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive_integer();
    }
    if b.is_zero() {
        return a.primitive_integer();
    }
    let var = match top_variable(a, b) {
        None => return Polynomial::one(a.ambient),
        Some(v) => v,
    };
    let (ca, cb) = (content_in(a, var), content_in(b, var));
    let c = gcd_rec(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides").primitive_integer();
    let mut g = b.div_exact(&cb).expect("content divides").primitive_integer();
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() && g.degree_in(var).unwrap_or(0) > 0 {
        let r = pseudo_rem(&f, &g, var);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let cr = content_in(&r, var);
            r.div_exact(&cr).expect("content divides").primitive_integer()
        };
    }
    let core = if g.is_zero() {
        f
    } else {
        // g is free of `var`, and primitive in `var`: a constant.
        Polynomial::one(a.ambient)
    };
    (&core * &c).primitive_integer()
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.ambient);
        write!(f, "{}", self.display_with(&names))
    }
}

/// `x0, x1, ...`
pub fn default_names(ambient: usize) -> Vec<String> {
    (0..ambient).map(|i| format!("x{i}")).collect()
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("polynomial ambient mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$inner(&rhs).expect("polynomial ambient mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
