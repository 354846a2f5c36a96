//! Sparse Gaussian elimination over the rationals and over prime fields.
//!
//! Everything here is column-oriented: a matrix is handed over as a list of
//! sparse columns, and elimination happens by inserting columns one at a
//! time into an [`Echelon`]. Each stored vector has a pivot coordinate at
//! which it equals one and at which every vector inserted later is zero.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyforms::Rational;

/// Field arithmetic, carried by a context value so that the prime can live
/// outside the elements.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
}

/// The prime field `Z/p`, for `p < 2^63`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 63).contains(&p) || !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not an odd prime below 2^63")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        acc
    }

    /// Image of a rational number.
    pub fn reduce(&self, q: &Rational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let n = (q.numer() % &p + &p) % &p;
        let d = (q.denom() % &p + &p) % &p;
        let (n, d) = (n.to_u64().unwrap(), d.to_u64().unwrap());
        if d == 0 {
            return Err(Error::BadReduction(self.p));
        }
        Ok(self.mul(&n, &self.inv(&d)))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let f = PrimeField { p: n };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(&x, &x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldOps for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
}

/// Which field rank computations run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Backend {
    /// Exact rational arithmetic.
    #[default]
    Exact,
    /// Reduction modulo a prime. Ranks can only drop, so dimensions computed
    /// this way are correct with high probability but not certified.
    PrimeField(u64),
}

/// Sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

fn lookup<E>(v: &SparseVec<E>, i: usize) -> Option<&E> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

/// `a - c * b`.
fn axpy<F: FieldOps>(f: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = f.sub(&f.zero(), &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.sub(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale<F: FieldOps>(f: &F, v: &SparseVec<F::Elem>, c: &F::Elem) -> SparseVec<F::Elem> {
    v.iter().map(|(i, x)| (*i, f.mul(x, c))).collect()
}

struct Row<E> {
    pivot: usize,
    vec: SparseVec<E>,
    combo: SparseVec<E>,
}

/// Incremental echelon form with optional tracking of how each stored
/// vector combines the inserted ones.
pub struct Echelon<F: FieldOps> {
    field: F,
    rows: Vec<Row<F::Elem>>,
    pivots: HashMap<usize, usize>,
    inserted: usize,
    track: bool,
}

impl<F: FieldOps> Echelon<F> {
    pub fn new(field: F, track: bool) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
            inserted: 0,
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`; returns the remainder and the multipliers of the stored
    /// rows that were subtracted.
    fn reduce_raw(&self, v: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, Vec<(usize, F::Elem)>) {
        let f = &self.field;
        let mut v = v.clone();
        let mut used = Vec::new();
        for (k, row) in self.rows.iter().enumerate() {
            if v.is_empty() {
                break;
            }
            if let Some(c) = lookup(&v, row.pivot).cloned() {
                v = axpy(f, &v, &c, &row.vec);
                used.push((k, c));
            }
        }
        (v, used)
    }

    /// Remainder of `v` modulo the stored span.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_raw(v).0
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Expresses `v` through the inserted vectors if it lies in their span.
    pub fn express(&self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        assert!(self.track, "express needs tracking");
        let (rem, used) = self.reduce_raw(v);
        if !rem.is_empty() {
            return None;
        }
        let f = &self.field;
        let mut x: SparseVec<F::Elem> = Vec::new();
        for (k, c) in used {
            let neg = f.sub(&f.zero(), &c);
            x = axpy(f, &x, &neg, &self.rows[k].combo);
        }
        Some(x)
    }

    /// Inserts the next vector. When it is dependent on the earlier ones,
    /// returns the relation (over insertion indices, with coefficient one on
    /// the new vector) if tracking is on, or an empty relation otherwise.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let f = &self.field;
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_raw(v);
        let mut combo = if self.track {
            vec![(idx, f.one())]
        } else {
            Vec::new()
        };
        if self.track {
            for (k, c) in &used {
                combo = axpy(f, &combo, c, &self.rows[*k].combo);
            }
        }
        if rem.is_empty() {
            return Some(combo);
        }
        let (pivot, lead) = rem[0].clone();
        let inv = f.inv(&lead);
        let vec = scale(f, &rem, &inv);
        let combo = if self.track { scale(f, &combo, &inv) } else { combo };
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row { pivot, vec, combo });
        None
    }

    /// Fully reduced row basis, sorted by pivot.
    pub fn into_rref(mut self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        for k in (0..self.rows.len()).rev() {
            let (pivot, vec) = (self.rows[k].pivot, self.rows[k].vec.clone());
            for j in 0..k {
                if let Some(c) = lookup(&self.rows[j].vec, pivot).cloned() {
                    self.rows[j].vec = axpy(f, &self.rows[j].vec, &c, &vec);
                }
            }
        }
        let mut rows: Vec<_> = self.rows.into_iter().map(|r| (r.pivot, r.vec)).collect();
        rows.sort_by_key(|(p, _)| *p);
        rows.into_iter().map(|(_, v)| v).collect()
    }
}

/// Reduced row echelon basis of the span of `vectors`.
pub fn rref(vectors: &[SparseVec<Rational>]) -> Vec<SparseVec<Rational>> {
    let mut e = Echelon::new(Rationals, false);
    for v in vectors {
        e.insert(v);
    }
    e.into_rref()
}

/// Rank of the span of `vectors` under the chosen backend.
pub fn rank(vectors: &[SparseVec<Rational>], backend: Backend) -> Result<usize> {
    match backend {
        Backend::Exact => {
            let mut e = Echelon::new(Rationals, false);
            for v in vectors {
                e.insert(v);
            }
            Ok(e.rank())
        }
        Backend::PrimeField(p) => {
            let f = PrimeField::new(p)?;
            let mut e = Echelon::new(f, false);
            for v in vectors {
                let mut w = Vec::with_capacity(v.len());
                for (i, q) in v {
                    let r = f.reduce(q)?;
                    if r != 0 {
                        w.push((*i, r));
                    }
                }
                e.insert(&w);
            }
            Ok(e.rank())
        }
    }
}

/// Basis of the kernel of the matrix whose columns are `columns`.
pub fn kernel(columns: &[SparseVec<Rational>]) -> Vec<SparseVec<Rational>> {
    let mut e = Echelon::new(Rationals, true);
    let mut out = Vec::new();
    for c in columns {
        if let Some(rel) = e.insert(c) {
            out.push(rel);
        }
    }
    out
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    /// A particular solution supported on pivot columns, and a kernel basis.
    Solved {
        particular: SparseVec<Rational>,
        kernel: Vec<SparseVec<Rational>>,
    },
    /// `b` is outside the column span; `kernel` is still reported.
    Inconsistent { kernel: Vec<SparseVec<Rational>> },
}

/// Solves `A x = b` for `A` given by columns.
pub fn solve(columns: &[SparseVec<Rational>], b: &SparseVec<Rational>) -> Solution {
    let mut e = Echelon::new(Rationals, true);
    let mut kernel = Vec::new();
    for c in columns {
        if let Some(rel) = e.insert(c) {
            kernel.push(rel);
        }
    }
    match e.express(b) {
        Some(particular) => Solution::Solved { particular, kernel },
        None => Solution::Inconsistent { kernel },
    }
}

/// A witness that `A x = b` has no solution: a row vector `y` with
/// `y A = 0` and `y b = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InconsistencyCertificate {
    pub rows: usize,
    pub cols: usize,
    /// Matrix entries as `(row, col, value)`; values are rationals in
    /// `num/den` text.
    pub matrix: Vec<(usize, usize, String)>,
    pub rhs: Vec<(usize, String)>,
    pub certificate: Vec<(usize, String)>,
    /// Human-readable name of every row coordinate.
    pub row_labels: Vec<String>,
}

/// Builds a certificate for an inconsistent system, or `None` if
/// `b` lies in the column span.
pub fn certify_inconsistent(
    columns: &[SparseVec<Rational>],
    b: &SparseVec<Rational>,
    nrows: usize,
    row_labels: Vec<String>,
) -> Option<InconsistencyCertificate> {
    // y solves [A | b]^T y = e_last. Column j of that system is row j of [A | b].
    let ncols = columns.len();
    let mut transposed: Vec<SparseVec<Rational>> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            transposed[*i].push((j, v.clone()));
        }
    }
    for (i, v) in b {
        transposed[*i].push((ncols, v.clone()));
    }
    let target = vec![(ncols, Rational::one())];
    let y = match solve(&transposed, &target) {
        Solution::Solved { particular, .. } => particular,
        Solution::Inconsistent { .. } => return None,
    };
    let text = |q: &Rational| q.to_string();
    let mut matrix = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            matrix.push((*i, j, text(v)));
        }
    }
    matrix.sort();
    Some(InconsistencyCertificate {
        rows: nrows,
        cols: ncols,
        matrix,
        rhs: b.iter().map(|(i, v)| (*i, text(v))).collect(),
        certificate: y.iter().map(|(i, v)| (*i, text(v))).collect(),
        row_labels,
    })
}

impl InconsistencyCertificate {
    /// Recomputes `y [A | b]` from the serialized data and checks that it
    /// equals `(0, ..., 0, 1)`.
    pub fn verify(&self) -> Result<bool> {
        let parse = |s: &str| -> Result<Rational> {
            s.parse::<Rational>()
                .map_err(|_| Error::Domain(format!("bad rational `{s}`")))
        };
        let mut y = vec![Rational::zero(); self.rows];
        for (i, v) in &self.certificate {
            y[*i] = parse(v)?;
        }
        let mut ya = vec![Rational::zero(); self.cols];
        for (i, j, v) in &self.matrix {
            ya[*j] += &y[*i] * parse(v)?;
        }
        let mut yb = Rational::zero();
        for (i, v) in &self.rhs {
            yb += &y[*i] * parse(v)?;
        }
        Ok(ya.iter().all(|x| x.is_zero()) && yb.is_one())
    }
}

/// Converts a dense row into sparse form.
pub fn sparse(dense: &[Rational]) -> SparseVec<Rational> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}
