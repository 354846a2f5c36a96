//! Codimension-one distributions given by a polynomial 1-form, and their
//! singular and persistent ideals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};
use crate::linalg::{self, Backend, Solution, SparseVec};
use crate::polyforms::{
    wedge_or_zero, GradedSpace, GradedSubspace, PForm, Polynomial, Rational, Shape,
};
use crate::system::{combine_forms, combine_polys, monomial_one_forms, monomials, RowIndex};

/// Whether a computed answer is certain or only holds up to a degree bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Exact,
    /// Only unknowns of degree at most the bound were searched.
    Truncated(u32),
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::Exact => write!(f, "exact"),
            Completeness::Truncated(d) => write!(f, "truncated({d})"),
        }
    }
}

/// A nonzero 1-form `omega`; integrability is a property, not an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foliation {
    omega: PForm,
    degree: Option<u32>,
    euler_closed: bool,
}

impl Foliation {
    pub fn new(omega: PForm) -> Result<Self> {
        if omega.degree() != 1 {
            return shape("a foliation is given by a 1-form");
        }
        if omega.is_zero() {
            return Err(Error::Domain("the zero form defines no distribution".into()));
        }
        let degree = omega.homogeneous_degree();
        let euler_closed = degree.is_some() && {
            let r = crate::polyforms::VectorField::euler(omega.ambient());
            omega.contract(&r)?.is_zero()
        };
        Ok(Foliation {
            omega,
            degree,
            euler_closed,
        })
    }

    pub fn omega(&self) -> &PForm {
        &self.omega
    }

    pub fn ambient(&self) -> usize {
        self.omega.ambient()
    }

    /// Common degree of all coefficients, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree.is_some()
    }

    /// Homogeneous with `i_R omega = 0` for the Euler field `R`.
    pub fn is_euler_closed(&self) -> bool {
        self.euler_closed
    }

    fn require_degree(&self) -> Result<u32> {
        self.degree
            .ok_or_else(|| Error::Mode("graded computation needs homogeneous coefficients".into()))
    }
}

/// `omega ^ d omega`; zero exactly when the distribution is integrable.
pub fn integrability_defect(f: &Foliation) -> PForm {
    wedge_or_zero(&f.omega, &f.omega.d())
}

pub fn integrability_check(f: &Foliation) -> bool {
    integrability_defect(f).is_zero()
}

/// Whether the coefficients of `omega` have no common factor.
pub fn torsion_free_check(f: &Foliation) -> Result<bool> {
    let mut g: Option<Polynomial> = None;
    for c in f.omega.coefficients().into_iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.monic(),
            Some(g) => g.gcd(&c)?,
        });
        if g.as_ref().is_some_and(Polynomial::is_constant) {
            return Ok(true);
        }
    }
    Ok(g.is_some_and(|g| g.is_constant()))
}

/// Generators of an ideal, or of a truncated piece of it.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    pub generators: Vec<Polynomial>,
    pub completeness: Completeness,
}

/// The coefficients of `omega`.
pub fn singular_ideal(f: &Foliation) -> IdealBasis {
    IdealBasis {
        generators: f.omega.coefficients(),
        completeness: Completeness::Exact,
    }
}

/// Degree-`e` piece of the ideal generated by the coefficients.
pub fn singular_ideal_graded(f: &Foliation, e: u32) -> Result<GradedSubspace> {
    let d = f.require_degree()?;
    let space = GradedSpace::new(f.ambient(), e, Shape::Polynomials);
    if e < d {
        return Ok(GradedSubspace::zero(space));
    }
    let mut gens = Vec::new();
    for a in f.omega.coefficients() {
        for mono in monomials(f.ambient(), [e - d]) {
            gens.push(&a * &mono);
        }
    }
    GradedSubspace::span_polys(space, &gens)
}

/// Pointwise type of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KupkaClass {
    Regular,
    Kupka,
    NonKupkaSingular,
}

pub fn kupka_test(f: &Foliation, point: &[Rational]) -> Result<KupkaClass> {
    if !f.omega.eval(point)?.is_empty() {
        return Ok(KupkaClass::Regular);
    }
    if !f.omega.d().eval(point)?.is_empty() {
        return Ok(KupkaClass::Kupka);
    }
    Ok(KupkaClass::NonKupkaSingular)
}

/// `h` with `h dw = omega ^ (eta - dh)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistentWitness {
    pub h: Polynomial,
    pub eta: PForm,
}

impl PersistentWitness {
    /// Re-checks the defining identity.
    pub fn verify(&self, f: &Foliation) -> bool {
        let w = &f.omega;
        let dh = PForm::function(self.h.clone()).d();
        let lhs = w.d().mul_poly(&self.h);
        let rhs = wedge_or_zero(w, &self.eta.sub(&dh));
        lhs == rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// A witness is a certificate, so membership is always exact.
    Member(PersistentWitness),
    NotMember(Completeness),
}

/// Default bound on `eta` degrees for affine membership problems.
pub fn default_eta_bound(f: &Foliation, h: &Polynomial) -> u32 {
    let dh = h.degree().unwrap_or(0);
    let ddw = f.omega.d().max_coefficient_degree().unwrap_or(0);
    let low = f.omega.min_coefficient_degree().unwrap_or(0);
    (dh + ddw + 2).saturating_sub(low)
}

/// Solves `omega ^ eta = h dw + omega ^ dh` for `eta` with coefficient
/// degrees in `eta_degrees`.
fn solve_eta(f: &Foliation, h: &Polynomial, eta_degrees: &[u32]) -> Option<PForm> {
    let m = f.ambient();
    let w = &f.omega;
    let target = w.d().mul_poly(h).add(&wedge_or_zero(w, &PForm::function(h.clone()).d()));
    let basis = monomial_one_forms(m, eta_degrees.iter().copied());
    let mut rows = RowIndex::new();
    let cols: Vec<SparseVec<Rational>> = basis.iter().map(|b| rows.coords(&[&wedge_or_zero(w, b)])).collect();
    let rhs = rows.coords(&[&target]);
    match linalg::solve(&cols, &rhs) {
        Solution::Solved { particular, .. } => Some(combine_forms(&particular, 0, &basis, m, 1)),
        Solution::Inconsistent { .. } => None,
    }
}

/// Decides whether `h` lies in the persistent ideal. Homogeneous `omega`
/// gives an exact answer; otherwise `eta` is searched up to `eta_bound`
/// (default [`default_eta_bound`]) and a negative answer is truncated.
pub fn persistent_membership(f: &Foliation, h: &Polynomial, eta_bound: Option<u32>) -> Result<Membership> {
    if h.ambient() != f.ambient() {
        return shape("persistent_membership: ambient mismatch");
    }
    let m = f.ambient();
    if f.is_homogeneous() && eta_bound.is_none() {
        let mut eta = PForm::zero(m, 1);
        let degs: Vec<u32> = h.terms().map(|(e, _)| e.total_degree()).collect();
        let mut degs = degs;
        degs.dedup();
        for j in degs {
            let part = h.homogeneous_part(j);
            let eta_degrees: Vec<u32> = if j == 0 { vec![] } else { vec![j - 1] };
            match solve_eta(f, &part, &eta_degrees) {
                Some(e) => eta = eta.add(&e),
                None => return Ok(Membership::NotMember(Completeness::Exact)),
            }
        }
        return Ok(Membership::Member(PersistentWitness { h: h.clone(), eta }));
    }
    let bound = eta_bound.unwrap_or_else(|| default_eta_bound(f, h));
    match solve_eta(f, h, &(0..=bound).collect::<Vec<_>>()) {
        Some(eta) => Ok(Membership::Member(PersistentWitness { h: h.clone(), eta })),
        None => Ok(Membership::NotMember(Completeness::Truncated(bound))),
    }
}

/// Columns of `(h, eta) -> h dw - omega ^ eta + omega ^ dh` on the given
/// bases, `h` block first.
fn phi_columns(f: &Foliation, hs: &[Polynomial], etas: &[PForm]) -> Vec<SparseVec<Rational>> {
    let w = &f.omega;
    let dw = w.d();
    let mut rows = RowIndex::new();
    let mut cols = Vec::with_capacity(hs.len() + etas.len());
    for h in hs {
        let img = dw.mul_poly(h).add(&wedge_or_zero(w, &PForm::function(h.clone()).d()));
        cols.push(rows.coords(&[&img]));
    }
    for e in etas {
        cols.push(rows.coords(&[&wedge_or_zero(w, e).neg()]));
    }
    cols
}

fn projection_of_kernel(cols: &[SparseVec<Rational>], nh: usize) -> Vec<SparseVec<Rational>> {
    linalg::kernel(cols)
        .into_iter()
        .map(|k| k.into_iter().filter(|(j, _)| *j < nh).collect::<SparseVec<_>>())
        .filter(|k| !k.is_empty())
        .collect()
}

/// Degree-`e` piece of the persistent ideal of a homogeneous form.
pub fn persistent_ideal_graded(f: &Foliation, e: u32) -> Result<GradedSubspace> {
    f.require_degree()?;
    let m = f.ambient();
    let space = GradedSpace::new(m, e, Shape::Polynomials);
    let hs: Vec<Polynomial> = (0..space.dim()).map(|i| space.basis_element(i).component(&[])).collect();
    let etas = if e == 0 { vec![] } else { monomial_one_forms(m, [e - 1]) };
    let cols = phi_columns(f, &hs, &etas);
    let proj = projection_of_kernel(&cols, hs.len());
    Ok(GradedSubspace::span(space, &proj))
}

/// Dimension of [`persistent_ideal_graded`] via ranks, so that it can run
/// modulo a prime.
pub fn persistent_ideal_graded_dim(f: &Foliation, e: u32, backend: Backend) -> Result<usize> {
    f.require_degree()?;
    let m = f.ambient();
    let hs = monomials(m, [e]);
    let etas = if e == 0 { vec![] } else { monomial_one_forms(m, [e - 1]) };
    let cols = phi_columns(f, &hs, &etas);
    let full = linalg::rank(&cols, backend)?;
    let eta_only = linalg::rank(&cols[hs.len()..], backend)?;
    Ok(hs.len() + eta_only - full)
}

/// Persistent `h` of degree at most `h_bound` found with `eta` of degree at
/// most `h_bound + deg(dw) - mindeg(omega) + 2`. Always truncated.
pub fn persistent_ideal_truncated(f: &Foliation, h_bound: u32) -> Result<IdealBasis> {
    let m = f.ambient();
    let hs = monomials(m, 0..=h_bound);
    let probe = Polynomial::monomial(
        m,
        crate::polyforms::ExponentVector::new({
            let mut v = vec![0; m];
            if m > 0 {
                v[0] = h_bound;
            }
            v
        }),
        Rational::from_integer(1.into()),
    );
    let eta_bound = default_eta_bound(f, &probe);
    let etas = monomial_one_forms(m, 0..=eta_bound);
    let cols = phi_columns(f, &hs, &etas);
    let proj = projection_of_kernel(&cols, hs.len());
    let reduced = linalg::rref(&proj);
    Ok(IdealBasis {
        generators: reduced.iter().map(|v| combine_polys(v, 0, &hs, m)).collect(),
        completeness: Completeness::Truncated(h_bound),
    })
}

/// `h` with `h * two_form = target`, when it exists.
pub fn solve_multiplier(two_form: &PForm, target: &PForm) -> Option<Polynomial> {
    if two_form.ambient() != target.ambient() || two_form.degree() != target.degree() {
        return None;
    }
    let m = two_form.ambient();
    let Some((idx, a)) = two_form.components().next() else {
        return target.is_zero().then(|| Polynomial::zero(m));
    };
    let h = target.component(idx).div_exact(a)?;
    (two_form.mul_poly(&h) == *target).then_some(h)
}

/// `h` in the persistent ideal attached to `sigma` by `h dw = omega ^ sigma`.
pub fn multiplier_of(f: &Foliation, sigma: &PForm) -> Option<Polynomial> {
    solve_multiplier(&f.omega.d(), &wedge_or_zero(&f.omega, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::{default_names, rat, VectorField};

    fn p(s: &str, m: usize) -> Polynomial {
        Polynomial::parse(s, &default_names(m)).unwrap()
    }

    fn fol(cs: &[&str]) -> Foliation {
        let m = cs.len();
        Foliation::new(PForm::one_form(cs.iter().map(|c| p(c, m)).collect())).unwrap()
    }

    #[test]
    fn integrability_examples() {
        assert!(integrability_check(&fol(&["1", "0", "0"])));
        assert!(!integrability_check(&fol(&["0", "x0", "1"])));
        let f1 = p("x0^2 + x1 x2 - 3", 3);
        let f2 = p("x2^3 - x0 + 2 x1", 3);
        let w = PForm::function(f1.clone()).d().mul_poly(&f2).sub(&PForm::function(f2).d().mul_poly(&f1));
        assert!(integrability_check(&Foliation::new(w).unwrap()));
    }

    #[test]
    fn torsion_examples() {
        assert!(!torsion_free_check(&fol(&["0", "x0"])).unwrap());
        assert!(torsion_free_check(&fol(&["-x1", "x0"])).unwrap());
        assert!(!torsion_free_check(&fol(&["x0", "x0"])).unwrap());
    }

    #[test]
    fn singular_pieces() {
        let pencil = fol(&["-x1", "x0"]);
        assert_eq!(singular_ideal_graded(&pencil, 1).unwrap().dim(), 2);
        let dx = fol(&["1", "0", "0"]);
        assert_eq!(singular_ideal_graded(&dx, 3).unwrap().dim(), 10);
        let fermat = p("x0^3 + x1^3 + x2^3", 3);
        let df = Foliation::new(PForm::function(fermat).d()).unwrap();
        assert_eq!(singular_ideal(&df).generators, vec![p("3x0^2", 3), p("3x1^2", 3), p("3x2^2", 3)]);
        assert!(singular_ideal_graded(&fol(&["x0^2", "1"]), 2).is_err());
    }

    #[test]
    fn kupka_examples() {
        let o = [rat(0), rat(0)];
        assert_eq!(kupka_test(&fol(&["x1", "2x0"]), &o).unwrap(), KupkaClass::Kupka);
        let f = Foliation::new(PForm::function(p("x0^2 + x1^2", 2)).d()).unwrap();
        assert_eq!(kupka_test(&f, &o).unwrap(), KupkaClass::NonKupkaSingular);
        assert_eq!(kupka_test(&fol(&["-x1", "x0"]), &[rat(1), rat(0)]).unwrap(), KupkaClass::Regular);
    }

    #[test]
    fn membership_examples() {
        let df = Foliation::new(PForm::function(p("x0^3 - x0 x1 + 2", 2)).d()).unwrap();
        match persistent_membership(&df, &p("1", 2), None).unwrap() {
            Membership::Member(w) => assert!(w.verify(&df)),
            other => panic!("{other:?}"),
        }
        let k = fol(&["x1", "2x0"]);
        assert_eq!(
            persistent_membership(&k, &p("1", 2), None).unwrap(),
            Membership::NotMember(Completeness::Exact)
        );
        match persistent_membership(&k, &p("x0", 2), None).unwrap() {
            Membership::Member(w) => {
                assert!(w.verify(&k));
                assert_eq!(w.eta, PForm::dx(2, 0).scale(&crate::polyforms::ratio(1, 2)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            persistent_membership(&k, &p("1", 2), Some(3)).unwrap(),
            Membership::NotMember(Completeness::Truncated(3))
        );
    }

    #[test]
    fn pencil_cone_piece() {
        let cone = fol(&["-x1", "x0", "0"]);
        let per = persistent_ideal_graded(&cone, 1).unwrap();
        assert_eq!(per.basis_polys(), vec![p("x0", 3), p("x1", 3)]);
        assert_eq!(persistent_ideal_graded_dim(&cone, 1, Backend::Exact).unwrap(), 2);
        assert_eq!(persistent_ideal_graded_dim(&cone, 1, Backend::PrimeField(1_048_583)).unwrap(), 2);
    }

    #[test]
    fn contraction_witness() {
        let w = fol(&["x1 x2", "-2 x0 x2", "x0 x1"]);
        let v = VectorField::new(vec![p("x1", 3), p("1", 3), p("x0 x2", 3)]);
        let h = w.omega().contract(&v).unwrap().component(&[]);
        let eta = w.omega().lie_derivative(&v).unwrap();
        assert!(PersistentWitness { h, eta }.verify(&w));
    }

    #[test]
    fn multiplier_for_kupka() {
        let k = fol(&["x1", "2x0"]);
        let sigma = PForm::one_form(vec![p("x1^2", 2), p("3 - x0", 2)]);
        let h = multiplier_of(&k, &sigma).unwrap();
        assert_eq!(h, p("x1 (3 - x0) - 2 x0 x1^2", 2));
        assert!(solve_multiplier(&PForm::dx(2, 0).wedge(&PForm::dx(2, 1)).unwrap().mul_poly(&p("x0", 2)), &PForm::dx(2, 0).wedge(&PForm::dx(2, 1)).unwrap()).is_none());
    }
}
