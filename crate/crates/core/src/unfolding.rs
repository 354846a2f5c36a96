//! First-order unfolding spaces, rigidity and the order-by-order
//! continuation of unfoldings over `k[t]/(t^{n+1})`.
//!
//! When `omega` is homogeneous every linear system below splits into
//! independent blocks by degree, so solving with enough room for the
//! right-hand side is exhaustive and negative answers are exact. Otherwise
//! unknowns are bounded by a degree `D` and negative answers carry
//! [`Completeness::Truncated`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{shape, Error, Result};
use crate::foliation::{
    integrability_check, persistent_ideal_graded, singular_ideal_graded, Completeness, Foliation,
};
use crate::linalg::{self, InconsistencyCertificate, Solution, SparseVec};
use crate::polyforms::{default_names, rat, wedge_or_zero, PForm, Polynomial, Rational, UnfoldedForm, VectorField};
use crate::system::{combine_forms, combine_polys, monomial_one_forms, monomials, RowIndex};

/// Integrable as a form over the truncated ring.
pub fn unfolded_integrability_check(u: &UnfoldedForm) -> bool {
    u.is_integrable()
}

/// Persistent functions of degree `e` modulo contractions `i_v omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExSpaceReport {
    pub degree: u32,
    pub dim_per: usize,
    pub dim_contracted: usize,
    pub dim_ex: usize,
    /// Persistent functions whose classes span the quotient.
    pub representatives: Vec<Polynomial>,
}

pub fn ex_space(f: &Foliation, e: u32) -> Result<ExSpaceReport> {
    if !integrability_check(f) {
        return Err(Error::Mode("extension spaces need an integrable form".into()));
    }
    let per = persistent_ideal_graded(f, e)?;
    let sing = singular_ideal_graded(f, e)?;
    if !sing.is_subspace_of(&per)? {
        return Err(Error::Mode(format!("contractions of degree {e} are not persistent")));
    }
    let reps = per.complement_of(&sing)?;
    let space = per.space().clone();
    Ok(ExSpaceReport {
        degree: e,
        dim_per: per.dim(),
        dim_contracted: sing.dim(),
        dim_ex: per.dim() - sing.dim(),
        representatives: reps.iter().map(|v| space.poly(v)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rigidity {
    RigidUpTo(u32),
    /// Lowest-degree persistent function that is not a contraction.
    NonRigidWitness { h: Polynomial, degree: u32 },
}

pub fn rigidity_certificate(f: &Foliation, bound: u32) -> Result<Rigidity> {
    for e in 0..=bound {
        let r = ex_space(f, e)?;
        if let Some(h) = r.representatives.into_iter().next() {
            return Ok(Rigidity::NonRigidWitness { h, degree: e });
        }
    }
    Ok(Rigidity::RigidUpTo(bound))
}

/// A pair `(eta_n, h_n)` in the top layer.
pub type Layer = (PForm, Polynomial);

#[derive(Clone, Debug, PartialEq)]
pub enum Continuation {
    Extended(UnfoldedForm),
    /// No top layer exists. The certificate is present when the system had
    /// unknowns to certify against.
    Obstructed(Box<InconsistencyCertificate>),
}

/// Result of one continuation step.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationSpace {
    pub order: usize,
    pub outcome: Continuation,
    /// Dimension of the space of top layers `(eta_n, h_n)` solving the
    /// homogeneous system with both degrees at most `bound`.
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Layer>,
    pub bound: u32,
    /// Exact in the homogeneous case; otherwise an obstruction only holds
    /// up to the bound.
    pub completeness: Completeness,
}

impl ContinuationSpace {
    pub fn extended(&self) -> Option<&UnfoldedForm> {
        match &self.outcome {
            Continuation::Extended(u) => Some(u),
            Continuation::Obstructed(_) => None,
        }
    }
}

struct LayerSystem {
    cols: Vec<SparseVec<Rational>>,
    rhs: SparseVec<Rational>,
    rows: RowIndex,
    hs: Vec<Polynomial>,
    etas: Vec<PForm>,
}

impl LayerSystem {
    fn layer(&self, x: &SparseVec<Rational>, m: usize) -> Layer {
        let h = combine_polys(x, 0, &self.hs, m);
        let eta = combine_forms(x, self.hs.len(), &self.etas, m, 1);
        (eta, h)
    }
}

/// Image of a top-order layer under the linearised integrability map:
/// `(omega ^ d eta + eta ^ d omega, h d omega + omega ^ dh - n omega ^ eta)`.
pub fn layer_operator(omega: &PForm, n: usize, eta: &PForm, h: &Polynomial) -> (PForm, PForm) {
    let dw = omega.d();
    let three = wedge_or_zero(omega, &eta.d()).add(&wedge_or_zero(eta, &dw));
    let dt = dw
        .mul_poly(h)
        .add(&wedge_or_zero(omega, &PForm::function(h.clone()).d()))
        .sub(&wedge_or_zero(omega, eta).scale(&rat(n as i64)));
    (three, dt)
}

fn layer_system(u: &UnfoldedForm, bound: u32) -> Result<LayerSystem> {
    let m = u.ambient();
    let n = u.order() + 1;
    let omega = u.base();
    let padded = u.extend(PForm::zero(m, 1), Polynomial::zero(m))?;
    let w = padded.wedge_d();
    let (old3, olddt) = (&w.three[n], &w.dt[n - 1]);
    let hs = monomials(m, 0..=bound);
    let etas = monomial_one_forms(m, 0..=bound);
    let mut rows = RowIndex::new();
    let mut cols = Vec::with_capacity(hs.len() + etas.len());
    let zero1 = PForm::zero(m, 1);
    let zero0 = Polynomial::zero(m);
    for h in &hs {
        let (a, b) = layer_operator(omega, n, &zero1, h);
        cols.push(rows.coords(&[&a, &b]));
    }
    for e in &etas {
        let (a, b) = layer_operator(omega, n, e, &zero0);
        cols.push(rows.coords(&[&a, &b]));
    }
    let rhs = rows.coords(&[&old3.neg(), &olddt.neg()]);
    Ok(LayerSystem {
        cols,
        rhs,
        rows,
        hs,
        etas,
    })
}

/// Largest unknown degree the right-hand side can require when `omega`
/// has coefficients of degree `d`.
fn needed_degree(u: &UnfoldedForm, d: u32) -> Result<u32> {
    let m = u.ambient();
    let n = u.order() + 1;
    let padded = u.extend(PForm::zero(m, 1), Polynomial::zero(m))?;
    let w = padded.wedge_d();
    let q3 = w.three[n].max_coefficient_degree().map(|q| (q + 1).saturating_sub(d));
    let qdt = w.dt[n - 1].max_coefficient_degree().map(|q| (q + 1).saturating_sub(d));
    Ok(q3.max(qdt).unwrap_or(0))
}

/// Finds the next layer of an integrable unfolding of order `n - 1`.
///
/// The particular solution is the minimal-support one; with a seed, a
/// random combination of the kernel basis (small integer coefficients) is
/// added to it.
pub fn extend_unfolding(u: &UnfoldedForm, bound: u32, seed: Option<u64>) -> Result<ContinuationSpace> {
    if !u.is_integrable() {
        return Err(Error::Mode("extend_unfolding: input is not integrable".into()));
    }
    let m = u.ambient();
    let n = u.order() + 1;
    let degree = u.base().homogeneous_degree();
    let (solve_bound, completeness) = match degree {
        Some(d) => (bound.max(needed_degree(u, d)?), Completeness::Exact),
        None => (bound, Completeness::Truncated(bound)),
    };
    let sys = layer_system(u, bound)?;
    let kernel: Vec<Layer> = linalg::kernel(&sys.cols).iter().map(|k| sys.layer(k, m)).collect();
    let big = if solve_bound == bound { None } else { Some(layer_system(u, solve_bound)?) };
    let solver = big.as_ref().unwrap_or(&sys);
    let outcome = match linalg::solve(&solver.cols, &solver.rhs) {
        Solution::Solved { particular, .. } => {
            let (mut eta, mut h) = solver.layer(&particular, m);
            if let Some(seed) = seed {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for (ke, kh) in &kernel {
                    let c = rat(rng.gen_range(-3..=3));
                    eta = eta.add(&ke.scale(&c));
                    h = &h + &kh.scale(&c);
                }
            }
            Continuation::Extended(u.extend(eta, h)?)
        }
        Solution::Inconsistent { .. } => {
            let mut names = default_names(m);
            names.push("t".into());
            let labels = solver.rows.labels(&names, &[&format!("t^{n}"), &format!("t^{} dt", n - 1)]);
            let cert = linalg::certify_inconsistent(&solver.cols, &solver.rhs, solver.rows.len(), labels)
                .ok_or_else(|| Error::Mode("inconsistent system without certificate".into()))?;
            Continuation::Obstructed(Box::new(cert))
        }
    };
    Ok(ContinuationSpace {
        order: n,
        outcome,
        kernel_dim: kernel.len(),
        kernel_basis: kernel,
        bound,
        completeness,
    })
}

/// Pulls `u` back along `x -> x + t^n v`; at the top order this adds
/// `t^n L_v(omega)` and `n omega(v) t^{n-1} dt`.
pub fn trivial_action(v: &VectorField, u: &UnfoldedForm, n: usize) -> Result<UnfoldedForm> {
    if u.order() < n {
        return Err(Error::Domain(format!("trivial_action: order {} below {n}", u.order())));
    }
    u.pullback_shift(v.components(), n)
}

/// Dimension of the span of `(L_v omega + c omega, n i_v omega)` inside the
/// top layers with both degrees at most `bound`. Exact for homogeneous
/// `omega`; for other forms only fields whose image fits are used.
pub fn trivial_image_dim(omega: &PForm, n: usize, bound: u32) -> Result<usize> {
    let m = omega.ambient();
    let fits = |p: &PForm| p.max_coefficient_degree().is_none_or(|q| q <= bound);
    let mut rows = RowIndex::new();
    let mut vecs = Vec::new();
    let top = bound + 1;
    for deg in 0..=top {
        for mono in monomials(m, [deg]) {
            for i in 0..m {
                let mut comps = vec![Polynomial::zero(m); m];
                comps[i] = mono.clone();
                let v = VectorField::new(comps);
                let eta = omega.lie_derivative(&v)?;
                let h = omega.contract(&v)?.scale(&rat(n as i64));
                if fits(&eta) && fits(&h) {
                    vecs.push(rows.coords(&[&eta, &h]));
                }
            }
            let c = omega.mul_poly(&mono);
            if fits(&c) {
                vecs.push(rows.coords(&[&c, &PForm::zero(m, 0)]));
            }
        }
    }
    linalg::rank(&vecs, linalg::Backend::Exact)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Triviality {
    Trivial,
    /// The layer at `order` is not reached by fields and units.
    NotTrivial { order: usize },
    /// The bounded search failed at `order` for a non-homogeneous form.
    Unknown { order: usize, bound: u32 },
}

/// Solves `L_v omega + c omega = eta`, `k i_v omega = h` for `(v, c)`.
fn solve_field(omega: &PForm, k: usize, eta: &PForm, h: &Polynomial, bound: u32) -> Option<(VectorField, Polynomial)> {
    let m = omega.ambient();
    let mons = monomials(m, 0..=bound);
    let mut rows = RowIndex::new();
    let mut cols = Vec::new();
    for i in 0..m {
        for mono in &mons {
            let mut comps = vec![Polynomial::zero(m); m];
            comps[i] = mono.clone();
            let v = VectorField::new(comps);
            let le = omega.lie_derivative(&v).expect("ambient");
            let iv = omega.contract(&v).expect("degree 1").scale(&rat(k as i64));
            cols.push(rows.coords(&[&le, &iv]));
        }
    }
    for mono in &mons {
        cols.push(rows.coords(&[&omega.mul_poly(mono), &PForm::zero(m, 0)]));
    }
    let rhs = rows.coords(&[eta, &PForm::function(h.clone())]);
    match linalg::solve(&cols, &rhs) {
        Solution::Solved { particular, .. } => {
            let nm = mons.len();
            let comps = (0..m).map(|i| combine_polys(&particular, i * nm, &mons, m)).collect();
            let c = combine_polys(&particular, m * nm, &mons, m);
            Some((VectorField::new(comps), c))
        }
        Solution::Inconsistent { .. } => None,
    }
}

/// Decides, order by order, whether `u` is the trivial unfolding up to a
/// change of coordinates `x -> x + t^k v` and a unit `1 + c t^k`.
pub fn is_trivial_unfolding(u: &UnfoldedForm, bound: u32) -> Result<Triviality> {
    if !u.is_integrable() {
        return Err(Error::Mode("is_trivial_unfolding: input is not integrable".into()));
    }
    let m = u.ambient();
    let omega = u.base().clone();
    let degree = omega.homogeneous_degree();
    let mut cur = u.clone();
    for k in 1..=u.order() {
        let (eta, h) = (cur.eta(k).clone(), cur.h(k).clone());
        if eta.is_zero() && h.is_zero() {
            continue;
        }
        let b = match degree {
            Some(d) => {
                let q = eta.max_coefficient_degree().map(|q| q + 1).max(h.degree()).unwrap_or(0);
                bound.max(q.saturating_sub(d))
            }
            None => bound,
        };
        let Some((v, c)) = solve_field(&omega, k, &eta, &h, b) else {
            return Ok(match degree {
                Some(_) => Triviality::NotTrivial { order: k },
                None => Triviality::Unknown { order: k, bound },
            });
        };
        let back = cur.pullback_shift(v.scale(&rat(-1)).components(), k)?;
        let mut unit = vec![Polynomial::zero(m); k + 1];
        unit[0] = Polynomial::one(m);
        unit[k] = -c;
        cur = back.truncated_multiply(&unit)?;
        if !cur.eta(k).is_zero() || !cur.h(k).is_zero() {
            return shape("normalisation left a nonzero layer");
        }
    }
    Ok(Triviality::Trivial)
}
