//! Foliations on projective space and their extensions along a hyperplane
//! `P^m = {x_{m+1} = 0}` in `P^{m+1}`.
//!
//! A foliation on `P^m` is a 1-form on `C^{m+1}` with coefficients
//! homogeneous of degree `d` and `i_R omega = 0`. Its normal bundle is
//! `O(k)` with `k = d + 1`, and its degree is reported as `d - 1`.
//!
//! An extension of order `n` is a form `omega + sum_k t^k a_k + B dt`
//! (`t = x_{m+1}`) homogeneous of degree `d` on `C^{m+2}`, taken modulo
//! `t^{n+1}`. Homogeneity gives `a_k` degree `d - k`, and the Euler
//! condition forces the `t^{k-1} dt` coefficient to be `-i_R a_k`, so only
//! the `a_k` are free. For `k > d` nothing is free.

pub mod cohomology;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foliation::{
    integrability_check, persistent_ideal_graded, persistent_ideal_graded_dim, torsion_free_check, Foliation,
};
use crate::linalg::{self, Backend, InconsistencyCertificate, Solution};
use crate::polyforms::{
    default_names, rat, wedge_or_zero, GradedSpace, GradedSubspace, PForm, Polynomial, Shape, UnfoldedForm,
    VectorField,
};
use crate::system::{combine_forms, monomial_one_forms, RowIndex};
use crate::unfolding::layer_operator;

pub use cohomology::{
    figueira_extension_predicate, hyp_line_bundle_cohomology, hyp_line_bundle_h1, pm_line_bundle_cohomology,
    FigueiraVerdict,
};

/// Homogeneous coefficients of degree `d` and `i_R omega = 0`.
pub fn euler_check(omega: &PForm, d: u32) -> bool {
    if omega.degree() != 1 {
        return false;
    }
    let homogeneous = omega
        .components()
        .all(|(_, a)| a.terms().all(|(e, _)| e.total_degree() == d));
    homogeneous
        && omega
            .contract(&VectorField::euler(omega.ambient()))
            .map(|c| c.is_zero())
            .unwrap_or(false)
}

/// A torsion-free, Euler-closed homogeneous 1-form on `C^{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveFoliation {
    foliation: Foliation,
    d: u32,
}

impl ProjectiveFoliation {
    pub fn new(omega: PForm) -> Result<Self> {
        let foliation = Foliation::new(omega)?;
        if foliation.ambient() < 2 {
            return Err(Error::Domain("projective foliations need at least two variables".into()));
        }
        let Some(d) = foliation.homogeneous_degree() else {
            return Err(Error::EulerViolation("coefficients are not homogeneous of one degree".into()));
        };
        if !foliation.is_euler_closed() {
            let r = VectorField::euler(foliation.ambient());
            let c = foliation.omega().contract(&r)?.component(&[]);
            return Err(Error::EulerViolation(format!("contraction with the Euler field is {c}")));
        }
        if !torsion_free_check(&foliation)? {
            return Err(Error::Domain("coefficients share a common factor".into()));
        }
        Ok(ProjectiveFoliation { foliation, d })
    }

    pub fn foliation(&self) -> &Foliation {
        &self.foliation
    }

    pub fn omega(&self) -> &PForm {
        self.foliation.omega()
    }

    /// Dimension `m` of the projective space.
    pub fn dimension(&self) -> usize {
        self.foliation.ambient() - 1
    }

    pub fn coeff_degree(&self) -> u32 {
        self.d
    }

    /// `k` with `N = O(k)`.
    pub fn normal_twist(&self) -> u32 {
        self.d + 1
    }

    pub fn geometric_degree(&self) -> i64 {
        self.d as i64 - 1
    }
}

/// Extension of a projective foliation to order `n` along the hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneExtension {
    d: u32,
    unfolded: UnfoldedForm,
}

impl HyperplaneExtension {
    /// From the free layers `a_1 .. a_n`; the `dt` layers are derived.
    pub fn from_layers(f: &ProjectiveFoliation, alphas: Vec<PForm>) -> Result<Self> {
        let mut u = UnfoldedForm::trivial(f.omega(), 0);
        let r = VectorField::euler(f.foliation().ambient());
        for a in alphas {
            let h = a.contract(&r)?.component(&[]).scale(&rat(-1));
            u = u.extend(a, h)?;
        }
        let e = HyperplaneExtension { d: f.coeff_degree(), unfolded: u };
        e.check()?;
        Ok(e)
    }

    /// Wraps an unfolded form after checking degrees and the Euler
    /// condition.
    pub fn from_unfolded(d: u32, unfolded: UnfoldedForm) -> Result<Self> {
        let e = HyperplaneExtension { d, unfolded };
        e.check()?;
        Ok(e)
    }

    fn check(&self) -> Result<()> {
        let total = self.to_total();
        if !euler_check(&total, self.d) && !total.is_zero() {
            return Err(Error::EulerViolation("extension is not Euler-closed of the base degree".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.unfolded.order()
    }

    pub fn coeff_degree(&self) -> u32 {
        self.d
    }

    pub fn unfolded(&self) -> &UnfoldedForm {
        &self.unfolded
    }

    pub fn alpha(&self, k: usize) -> &PForm {
        self.unfolded.eta(k)
    }

    /// The form on `C^{m+2}`, with `x_{m+1}` last.
    pub fn to_total(&self) -> PForm {
        self.unfolded.to_total()
    }

    /// The form on `x_{m+1} = 0`.
    pub fn restriction(&self) -> &PForm {
        self.unfolded.base()
    }

    pub fn is_integrable(&self) -> bool {
        self.unfolded.is_integrable()
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        Ok(HyperplaneExtension {
            d: self.d,
            unfolded: self.unfolded.truncate(order)?,
        })
    }
}

/// Dimensions of `Ex^n` for one `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExnReport {
    pub n: u32,
    /// `k - n`, the degree of the persistent piece; negative pieces are 0.
    pub degree: i64,
    pub dim_hzero_pint: usize,
    pub dim_twisted_fields_image: usize,
    pub dim_exn: usize,
}

/// `Ex^n` for a homogeneous integrable form whose normal twist is taken to
/// be `k = d + 1`. This does not require the Euler condition, so it also
/// covers exact forms `df`.
pub fn ex_n_graded(f: &Foliation, n: u32, backend: Backend) -> Result<ExnReport> {
    if n == 0 {
        return Err(Error::Domain("Ex^n needs n >= 1".into()));
    }
    if f.ambient() < 3 {
        return Err(Error::Domain("Ex^n is implemented for P^m with m >= 2".into()));
    }
    let Some(d) = f.homogeneous_degree() else {
        return Err(Error::Mode("Ex^n needs homogeneous coefficients".into()));
    };
    if !integrability_check(f) {
        return Err(Error::Mode("Ex^n is only defined here for integrable forms".into()));
    }
    let k = d as i64 + 1;
    let degree = k - n as i64;
    if degree < 0 {
        return Ok(ExnReport {
            n,
            degree,
            dim_hzero_pint: 0,
            dim_twisted_fields_image: 0,
            dim_exn: 0,
        });
    }
    let e = degree as u32;
    let image: Vec<Polynomial> = if n == 1 { f.omega().coefficients() } else { Vec::new() };
    let (per_dim, image_dim) = match backend {
        Backend::Exact => {
            let per = persistent_ideal_graded(f, e)?;
            let space = GradedSpace::new(f.ambient(), e, Shape::Polynomials);
            let img = GradedSubspace::span_polys(space, &image)?;
            if !img.is_subspace_of(&per)? {
                return Err(Error::Mode("twisted-field image is not persistent".into()));
            }
            (per.dim(), img.dim())
        }
        Backend::PrimeField(_) => {
            let per = persistent_ideal_graded_dim(f, e, backend)?;
            let space = GradedSpace::new(f.ambient(), e, Shape::Polynomials);
            let vecs = image.iter().map(|p| space.poly_coords(p)).collect::<Result<Vec<_>>>()?;
            (per, linalg::rank(&vecs, backend)?)
        }
    };
    Ok(ExnReport {
        n,
        degree,
        dim_hzero_pint: per_dim,
        dim_twisted_fields_image: image_dim,
        dim_exn: per_dim - image_dim,
    })
}

pub fn ex_n(f: &ProjectiveFoliation, n: u32) -> Result<ExnReport> {
    ex_n_graded(f.foliation(), n, Backend::Exact)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClnReport {
    pub regular: bool,
    pub table: Vec<ExnReport>,
}

/// `Ex^n = 0` for all `1 <= n < k`.
pub fn cln_regular_check(f: &ProjectiveFoliation, backend: Backend) -> Result<ClnReport> {
    let k = f.normal_twist();
    let table = (1..k)
        .map(|n| ex_n_graded(f.foliation(), n, backend))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClnReport {
        regular: table.iter().all(|r| r.dim_exn == 0),
        table,
    })
}

/// The pullback along the projection from `[0: .. :0:1]`, to any order.
pub fn cone_extension(f: &ProjectiveFoliation, order: usize) -> HyperplaneExtension {
    HyperplaneExtension {
        d: f.coeff_degree(),
        unfolded: UnfoldedForm::trivial(f.omega(), order),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepOutcome {
    Extended(HyperplaneExtension),
    Obstructed(Box<InconsistencyCertificate>),
}

/// One step of the hyperplane extension problem.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneStep {
    pub order: usize,
    /// Number of free coefficients in `a_n`.
    pub unknowns: usize,
    pub outcome: StepOutcome,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<PForm>,
}

fn layer_basis(f: &ProjectiveFoliation, n: usize) -> Vec<PForm> {
    let m1 = f.foliation().ambient();
    let d = f.coeff_degree() as usize;
    if n > d {
        Vec::new()
    } else {
        monomial_one_forms(m1, [(d - n) as u32])
    }
}

/// Extends an integrable extension of order `n - 1` to order `n`. Degrees
/// are pinned by homogeneity, so the answer is exact.
pub fn extend_hyperplane_step(f: &ProjectiveFoliation, e: &HyperplaneExtension) -> Result<HyperplaneStep> {
    if e.restriction() != f.omega() {
        return Err(Error::Shape("extension does not restrict to the foliation".into()));
    }
    if !e.is_integrable() {
        return Err(Error::Mode("extension is not integrable".into()));
    }
    let m1 = f.foliation().ambient();
    let n = e.order() + 1;
    let omega = f.omega();
    let r = VectorField::euler(m1);
    let padded = e.unfolded.extend(PForm::zero(m1, 1), Polynomial::zero(m1))?;
    let w = padded.wedge_d();
    let basis = layer_basis(f, n);
    let mut rows = RowIndex::new();
    let mut cols = Vec::with_capacity(basis.len());
    for a in &basis {
        let h = a.contract(&r)?.component(&[]).scale(&rat(-1));
        let (x, y) = layer_operator(omega, n, a, &h);
        cols.push(rows.coords(&[&x, &y]));
    }
    let rhs = rows.coords(&[&w.three[n].neg(), &w.dt[n - 1].neg()]);
    let kernel: Vec<PForm> = linalg::kernel(&cols)
        .iter()
        .map(|k| combine_forms(k, 0, &basis, m1, 1))
        .collect();
    let outcome = match linalg::solve(&cols, &rhs) {
        Solution::Solved { particular, .. } => {
            let a = combine_forms(&particular, 0, &basis, m1, 1);
            let h = a.contract(&r)?.component(&[]).scale(&rat(-1));
            StepOutcome::Extended(HyperplaneExtension {
                d: e.d,
                unfolded: e.unfolded.extend(a, h)?,
            })
        }
        Solution::Inconsistent { .. } => {
            let mut names = default_names(m1);
            names.push(format!("x{m1}"));
            let labels = rows.labels(&names, &[&format!("t^{n}"), &format!("t^{} dt", n - 1)]);
            let cert = linalg::certify_inconsistent(&cols, &rhs, rows.len(), labels)
                .ok_or_else(|| Error::Mode("inconsistent system without certificate".into()))?;
            StepOutcome::Obstructed(Box::new(cert))
        }
    };
    Ok(HyperplaneStep {
        order: n,
        unknowns: basis.len(),
        outcome,
        kernel_dim: kernel.len(),
        kernel_basis: kernel,
    })
}

/// Dimension of the span of `L_v omega` over `v` in `H^0(T(-n))`: constant
/// fields for `n = 1`, nothing for `n >= 2`.
pub fn hyperplane_trivial_image_dim(f: &ProjectiveFoliation, n: usize) -> Result<usize> {
    if n != 1 {
        return Ok(0);
    }
    let m1 = f.foliation().ambient();
    let mut rows = RowIndex::new();
    let mut vecs = Vec::new();
    for j in 0..m1 {
        let l = f.omega().lie_derivative(&VectorField::partial(m1, j))?;
        vecs.push(rows.coords(&[&l]));
    }
    linalg::rank(&vecs, Backend::Exact)
}

/// Whether an extension is isomorphic to the cone, decided order by order:
/// the first layer must be `L_c omega` for a constant field `c`; after the
/// substitution `x -> x - c t` every layer must vanish.
pub fn is_cone(f: &ProjectiveFoliation, e: &HyperplaneExtension) -> Result<bool> {
    if e.order() == 0 {
        return Ok(true);
    }
    let m1 = f.foliation().ambient();
    let omega = f.omega();
    let mut rows = RowIndex::new();
    let cols: Vec<_> = (0..m1)
        .map(|j| {
            let l = omega.lie_derivative(&VectorField::partial(m1, j))?;
            Ok(rows.coords(&[&l]))
        })
        .collect::<Result<_>>()?;
    let rhs = rows.coords(&[e.alpha(1)]);
    let c = match linalg::solve(&cols, &rhs) {
        Solution::Solved { particular, .. } => particular,
        Solution::Inconsistent { .. } => return Ok(false),
    };
    let mut shift = vec![Polynomial::zero(m1); m1];
    for (j, v) in c {
        shift[j] = Polynomial::constant(m1, -v);
    }
    let moved = e.unfolded.pullback_shift(&shift, 1)?;
    Ok((1..=moved.order()).all(|k| moved.eta(k).is_zero() && moved.h(k).is_zero()))
}

/// Per-order outcome of the driver.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionReport {
    pub order: usize,
    pub unknowns: usize,
    pub kernel_dim: usize,
    pub trivial_image_dim: usize,
    pub obstruction: Option<Box<InconsistencyCertificate>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DriverReport {
    pub steps: Vec<ExtensionReport>,
    /// The extension reached, if no step was obstructed.
    pub extension: Option<HyperplaneExtension>,
    /// Order `k` was reached, beyond which nothing is free.
    pub stabilized: bool,
    /// With `stabilized`: the untruncated polynomial form is integrable.
    pub polynomial_extension: bool,
    /// No step had a nonzero kernel.
    pub unique: bool,
    /// Every kernel is accounted for by coordinate changes.
    pub unique_up_to_isomorphism: bool,
    pub is_cone: Option<bool>,
}

/// Runs the extension steps from `start` (the cone of order 0 by default)
/// up to order `min(max_order, k)`.
pub fn formal_extension_driver(
    f: &ProjectiveFoliation,
    max_order: usize,
    start: Option<HyperplaneExtension>,
) -> Result<DriverReport> {
    let k = f.normal_twist() as usize;
    let mut cur = start.unwrap_or_else(|| cone_extension(f, 0));
    let mut steps = Vec::new();
    let mut obstructed = false;
    while cur.order() < max_order.min(k) {
        let step = extend_hyperplane_step(f, &cur)?;
        let trivial = hyperplane_trivial_image_dim(f, step.order)?;
        let mut report = ExtensionReport {
            order: step.order,
            unknowns: step.unknowns,
            kernel_dim: step.kernel_dim,
            trivial_image_dim: trivial,
            obstruction: None,
        };
        match step.outcome {
            StepOutcome::Extended(next) => {
                steps.push(report);
                cur = next;
            }
            StepOutcome::Obstructed(cert) => {
                report.obstruction = Some(cert);
                steps.push(report);
                obstructed = true;
                break;
            }
        }
    }
    let stabilized = !obstructed && cur.order() >= k;
    let polynomial_extension = stabilized && {
        let total = cur.to_total();
        wedge_or_zero(&total, &total.d()).is_zero()
    };
    let with_unknowns = steps.iter().filter(|s| s.unknowns > 0);
    let unique = with_unknowns.clone().all(|s| s.kernel_dim == 0);
    let unique_up_to_isomorphism = with_unknowns.clone().all(|s| s.kernel_dim == s.trivial_image_dim);
    let is_cone_flag = if obstructed { None } else { Some(is_cone(f, &cur)?) };
    Ok(DriverReport {
        steps,
        extension: (!obstructed).then_some(cur),
        stabilized,
        polynomial_extension,
        unique,
        unique_up_to_isomorphism,
        is_cone: is_cone_flag,
    })
}
