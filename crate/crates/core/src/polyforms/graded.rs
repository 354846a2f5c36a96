//! Homogeneous pieces of polynomial and form spaces as coordinate spaces.
//!
//! A [`GradedSpace`] fixes a basis of all `p`-forms whose coefficients are
//! homogeneous of one degree: index tuples in lexicographic order, and
//! within each tuple monomials in descending graded-lex order. Coordinate
//! zero is therefore the graded-lex largest monomial on `dx_0 ^ ..`. A
//! [`GradedSubspace`] is a subspace of such a space held as a reduced row
//! echelon basis, so two equal subspaces have identical bases.

use std::collections::HashMap;
use std::sync::Arc;

use super::forms::{index_tuples, IndexTuple, PForm, VectorField};
use super::poly::{ExponentVector, Polynomial, Rational};
use crate::error::{shape, Error, Result};
use crate::linalg::{self, Echelon, Rationals, SparseVec};

/// What the elements of a graded piece are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Polynomials,
    /// `p`-forms; `Forms(0)` is the same space as `Polynomials`.
    Forms(usize),
}

impl Shape {
    pub fn form_degree(self) -> usize {
        match self {
            Shape::Polynomials => 0,
            Shape::Forms(p) => p,
        }
    }
}

/// All elements of one shape with coefficients homogeneous of degree `e`.
#[derive(Debug)]
pub struct GradedSpace {
    ambient: usize,
    degree: u32,
    shape: Shape,
    tuples: Vec<IndexTuple>,
    monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    tuple_index: HashMap<IndexTuple, usize>,
}

impl GradedSpace {
    pub fn new(ambient: usize, degree: u32, shape: Shape) -> Arc<Self> {
        let tuples = index_tuples(ambient, shape.form_degree());
        let monomials = ExponentVector::all_of_degree(ambient, degree);
        let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let tuple_index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Arc::new(GradedSpace {
            ambient,
            degree,
            shape,
            tuples,
            monomials,
            index,
            tuple_index,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.monomials.len()
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    /// Coordinates of a form. Fails if a coefficient has a term of the
    /// wrong degree.
    pub fn coords(&self, form: &PForm) -> Result<SparseVec<Rational>> {
        if form.ambient() != self.ambient || form.degree() != self.shape.form_degree() {
            return shape("graded coords: shape mismatch");
        }
        let nm = self.monomials.len();
        let mut out = Vec::new();
        for (idx, a) in form.components() {
            let t = self.tuple_index[idx];
            for (e, c) in a.terms() {
                match self.index.get(e) {
                    Some(&i) => out.push((t * nm + i, c.clone())),
                    None => {
                        return Err(Error::Mode(format!(
                            "term of degree {} in a degree-{} piece",
                            e.total_degree(),
                            self.degree
                        )))
                    }
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn poly_coords(&self, p: &Polynomial) -> Result<SparseVec<Rational>> {
        self.coords(&PForm::function(p.clone()))
    }

    /// The form with the given coordinates.
    pub fn form(&self, v: &SparseVec<Rational>) -> PForm {
        let nm = self.monomials.len();
        let mut comps: Vec<Vec<(Rational, ExponentVector)>> = vec![Vec::new(); self.tuples.len()];
        for (i, c) in v {
            comps[i / nm].push((c.clone(), self.monomials[i % nm].clone()));
        }
        let mut out = PForm::zero(self.ambient, self.shape.form_degree());
        for (t, terms) in comps.into_iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let poly = Polynomial::from_terms(
                self.ambient,
                terms.into_iter().map(|(c, e)| (c, e.exponents().to_vec())),
            );
            out.add_component(self.tuples[t].clone(), poly);
        }
        out
    }

    pub fn poly(&self, v: &SparseVec<Rational>) -> Polynomial {
        self.form(v).component(&[])
    }

    /// The basis element with coordinate `i`.
    pub fn basis_element(&self, i: usize) -> PForm {
        self.form(&vec![(i, Rational::from_integer(1.into()))])
    }

    /// Human-readable name of coordinate `i`, e.g. `x0^2*x1 dx1^dx2`.
    pub fn label(&self, i: usize, names: &[String]) -> String {
        let nm = self.monomials.len();
        let e = &self.monomials[i % nm];
        let mono = Polynomial::monomial(self.ambient, e.clone(), Rational::from_integer(1.into()));
        let mono = mono.display_with(names).to_string();
        let tuple = &self.tuples[i / nm];
        if tuple.is_empty() {
            mono
        } else {
            let d: Vec<String> = tuple.iter().map(|&j| format!("d{}", names[j])).collect();
            format!("{} {}", mono, d.join("^"))
        }
    }
}

/// A subspace of a [`GradedSpace`] in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    space: Arc<GradedSpace>,
    rows: Vec<SparseVec<Rational>>,
}

impl PartialEq for GradedSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.space.ambient == other.space.ambient
            && self.space.degree == other.space.degree
            && self.space.shape == other.space.shape
            && self.rows == other.rows
    }
}

impl GradedSubspace {
    pub fn span(space: Arc<GradedSpace>, vectors: &[SparseVec<Rational>]) -> Self {
        let rows = linalg::rref(vectors);
        GradedSubspace { space, rows }
    }

    pub fn span_forms(space: Arc<GradedSpace>, forms: &[PForm]) -> Result<Self> {
        let vs = forms.iter().map(|f| space.coords(f)).collect::<Result<Vec<_>>>()?;
        Ok(GradedSubspace::span(space, &vs))
    }

    pub fn span_polys(space: Arc<GradedSpace>, polys: &[Polynomial]) -> Result<Self> {
        let vs = polys.iter().map(|f| space.poly_coords(f)).collect::<Result<Vec<_>>>()?;
        Ok(GradedSubspace::span(space, &vs))
    }

    pub fn full(space: Arc<GradedSpace>) -> Self {
        let one = Rational::from_integer(1.into());
        let rows = (0..space.dim()).map(|i| vec![(i, one.clone())]).collect();
        GradedSubspace { space, rows }
    }

    pub fn zero(space: Arc<GradedSpace>) -> Self {
        GradedSubspace { space, rows: Vec::new() }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<Rational>] {
        &self.rows
    }

    pub fn basis_forms(&self) -> Vec<PForm> {
        self.rows.iter().map(|r| self.space.form(r)).collect()
    }

    pub fn basis_polys(&self) -> Vec<Polynomial> {
        self.rows.iter().map(|r| self.space.poly(r)).collect()
    }

    fn echelon(&self) -> Echelon<Rationals> {
        let mut e = Echelon::new(Rationals, false);
        for r in &self.rows {
            e.insert(r);
        }
        e
    }

    fn check(&self, other: &GradedSubspace) -> Result<()> {
        let (a, b) = (&self.space, &other.space);
        if a.ambient != b.ambient || a.degree != b.degree || a.shape != b.shape {
            return shape("graded subspaces of different spaces");
        }
        Ok(())
    }

    pub fn contains_vec(&self, v: &SparseVec<Rational>) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains(&self, form: &PForm) -> Result<bool> {
        Ok(self.contains_vec(&self.space.coords(form)?))
    }

    pub fn contains_poly(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.contains_vec(&self.space.poly_coords(p)?))
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> Result<bool> {
        self.check(other)?;
        let e = other.echelon();
        Ok(self.rows.iter().all(|r| e.contains(r)))
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check(other)?;
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Ok(GradedSubspace::span(self.space.clone(), &all))
    }

    /// `dim(A) + dim(B) - dim(A + B)`.
    pub fn intersection_dim(&self, other: &GradedSubspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    /// Basis vectors of `self` that stay independent modulo `sub`, taken in
    /// basis order (largest leading monomial first). Their classes form a
    /// basis of `self / (self ∩ sub)`.
    pub fn complement_of(&self, sub: &GradedSubspace) -> Result<Vec<SparseVec<Rational>>> {
        self.check(sub)?;
        let mut e = sub.echelon();
        let mut out = Vec::new();
        for r in &self.rows {
            if e.insert(r).is_none() {
                out.push(r.clone());
            }
        }
        Ok(out)
    }
}

/// Monomial basis of a graded piece, optionally cut down to the forms
/// annihilated by the Euler field.
pub fn graded_piece_basis(ambient: usize, degree: u32, shape_: Shape, euler: bool) -> Result<GradedSubspace> {
    let space = GradedSpace::new(ambient, degree, shape_);
    if !euler {
        return Ok(GradedSubspace::full(space));
    }
    let p = shape_.form_degree();
    if p == 0 {
        return shape("Euler condition needs forms of positive degree");
    }
    let target = GradedSpace::new(ambient, degree + 1, Shape::Forms(p - 1));
    let r = VectorField::euler(ambient);
    let columns = (0..space.dim())
        .map(|i| target.coords(&space.basis_element(i).contract(&r)?))
        .collect::<Result<Vec<_>>>()?;
    let kernel = linalg::kernel(&columns);
    Ok(GradedSubspace::span(space, &kernel))
}
