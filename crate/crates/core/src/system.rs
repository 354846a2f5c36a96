//! Bookkeeping for linear systems whose unknowns and equations are
//! coefficients of polynomial forms.

use std::collections::HashMap;

use crate::linalg::SparseVec;
use crate::polyforms::{ExponentVector, IndexTuple, PForm, Polynomial, Rational};

/// Assigns row numbers to `(layer, dx-tuple, monomial)` keys on first use.
#[derive(Default)]
pub(crate) struct RowIndex {
    map: HashMap<(usize, IndexTuple, ExponentVector), usize>,
    keys: Vec<(usize, IndexTuple, ExponentVector)>,
}

impl RowIndex {
    pub fn new() -> Self {
        RowIndex::default()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    fn push(&mut self, out: &mut SparseVec<Rational>, layer: usize, form: &PForm) {
        for (idx, a) in form.components() {
            for (e, c) in a.terms() {
                let key = (layer, idx.clone(), e.clone());
                let next = self.keys.len();
                let row = *self.map.entry(key.clone()).or_insert_with(|| next);
                if row == next {
                    self.keys.push(key);
                }
                out.push((row, c.clone()));
            }
        }
    }

    /// Coordinates of a tuple of forms, the `i`-th living in layer `i`.
    pub fn coords(&mut self, layers: &[&PForm]) -> SparseVec<Rational> {
        let mut out = Vec::new();
        for (l, f) in layers.iter().enumerate() {
            self.push(&mut out, l, f);
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Row labels such as `[dt] x0*x1 dx0^dx2`.
    pub fn labels(&self, names: &[String], layer_names: &[&str]) -> Vec<String> {
        self.keys
            .iter()
            .map(|(l, idx, e)| {
                let m = e.len();
                let mono = Polynomial::monomial(m, e.clone(), Rational::from_integer(1.into()));
                let d: Vec<String> = idx.iter().map(|&j| format!("d{}", names[j])).collect();
                let layer = layer_names.get(*l).copied().unwrap_or("");
                format!("[{}] {} {}", layer, mono.display_with(names), d.join("^"))
            })
            .collect()
    }
}

/// Monomials of each degree in `degrees`, lowest degree first and
/// descending graded-lex inside a degree.
pub(crate) fn monomials(m: usize, degrees: impl IntoIterator<Item = u32>) -> Vec<Polynomial> {
    let one = Rational::from_integer(1.into());
    degrees
        .into_iter()
        .flat_map(|d| ExponentVector::all_of_degree(m, d))
        .map(|e| Polynomial::monomial(m, e, one.clone()))
        .collect()
}

/// Monomial 1-forms `x^a dx_i` with `|a|` in `degrees`.
pub(crate) fn monomial_one_forms(m: usize, degrees: impl IntoIterator<Item = u32>) -> Vec<PForm> {
    let degrees: Vec<u32> = degrees.into_iter().collect();
    let mut out = Vec::new();
    for &d in &degrees {
        for i in 0..m {
            for p in monomials(m, [d]) {
                out.push(PForm::dx(m, i).mul_poly(&p));
            }
        }
    }
    out
}

/// `sum_j x[j] basis[j]` over the entries of `x` in `range`.
pub(crate) fn combine_polys(x: &SparseVec<Rational>, offset: usize, basis: &[Polynomial], m: usize) -> Polynomial {
    let mut out = Polynomial::zero(m);
    for (j, c) in x {
        if *j >= offset && *j < offset + basis.len() {
            out = &out + &basis[*j - offset].scale(c);
        }
    }
    out
}

pub(crate) fn combine_forms(x: &SparseVec<Rational>, offset: usize, basis: &[PForm], m: usize, p: usize) -> PForm {
    let mut out = PForm::zero(m, p);
    for (j, c) in x {
        if *j >= offset && *j < offset + basis.len() {
            out = out.add(&basis[*j - offset].scale(c));
        }
    }
    out
}
