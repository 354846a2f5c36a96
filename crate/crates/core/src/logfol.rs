//! Logarithmic foliations `omega = f_1 .. f_k sum_i l_i df_i / f_i` on
//! projective space and their persistent ideals.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::foliation::persistent_ideal_graded;
use crate::linalg::{self, Backend};
use crate::polyforms::{GradedSpace, GradedSubspace, PForm, Polynomial, Rational, Shape};
use crate::projective::ProjectiveFoliation;
use crate::system::monomials;

/// Factors and residues. Residues are stored as coprime integers with the
/// first one positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogFoliationSpec {
    factors: Vec<Polynomial>,
    residues: Vec<BigInt>,
}

impl LogFoliationSpec {
    pub fn new(factors: Vec<Polynomial>, residues: Vec<Rational>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::Domain("a logarithmic foliation needs at least two factors".into()));
        }
        if factors.len() != residues.len() {
            return Err(Error::Shape(format!("{} factors but {} residues", factors.len(), residues.len())));
        }
        let m = factors[0].ambient();
        for (i, f) in factors.iter().enumerate() {
            if f.ambient() != m {
                return Err(Error::Shape("factors live in different rings".into()));
            }
            match f.homogeneous_degree() {
                None => return Err(Error::Domain(format!("factor {i} is not homogeneous"))),
                Some(0) => return Err(Error::Domain(format!("factor {i} is constant"))),
                Some(_) => {}
            }
        }
        if residues.iter().any(|l| l.is_zero()) {
            return Err(Error::Domain("residues must be nonzero".into()));
        }
        let balance: Rational = factors
            .iter()
            .zip(&residues)
            .map(|(f, l)| l * Rational::from_integer(f.homogeneous_degree().unwrap_or(0).into()))
            .sum();
        if !balance.is_zero() {
            return Err(Error::EulerViolation(format!("sum of residue times degree is {balance}")));
        }
        let mut den = BigInt::one();
        for l in &residues {
            den = den.lcm(l.denom());
        }
        let ints: Vec<BigInt> = residues
            .iter()
            .map(|l| (l * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints[0].is_negative() {
            g = -g;
        }
        let residues = ints.into_iter().map(|v| v / &g).collect();
        Ok(LogFoliationSpec { factors, residues })
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn ambient(&self) -> usize {
        self.factors[0].ambient()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.homogeneous_degree().unwrap_or(0)).collect()
    }

    /// `sum d_i`, the degree of the product.
    pub fn total_degree(&self) -> u32 {
        self.degrees().iter().sum()
    }
}

fn product_except(fs: &[Polynomial], i: usize) -> Polynomial {
    let mut out = Polynomial::one(fs[0].ambient());
    for (j, f) in fs.iter().enumerate() {
        if j != i {
            out = &out * f;
        }
    }
    out
}

/// `f_hat_i`, the product of all factors but `f_i`.
pub fn expected_per_generators(s: &LogFoliationSpec) -> Vec<Polynomial> {
    (0..s.factors.len()).map(|i| product_except(&s.factors, i)).collect()
}

pub fn build_log_foliation(s: &LogFoliationSpec) -> Result<ProjectiveFoliation> {
    let m = s.ambient();
    let mut omega = PForm::zero(m, 1);
    for (i, fh) in expected_per_generators(s).iter().enumerate() {
        let l = Rational::from_integer(s.residues[i].clone());
        omega = omega.add(&PForm::function(s.factors[i].clone()).d().mul_poly(fh).scale(&l));
    }
    ProjectiveFoliation::new(omega)
}

/// Degree-`e` piece of the ideal generated by the `f_hat_i`.
pub fn expected_per_graded(s: &LogFoliationSpec, e: u32) -> Result<GradedSubspace> {
    let m = s.ambient();
    let space = GradedSpace::new(m, e, Shape::Polynomials);
    let mut gens = Vec::new();
    for g in expected_per_generators(s) {
        let dg = g.homogeneous_degree().unwrap_or(0);
        if dg <= e {
            gens.extend(monomials(m, [e - dg]).iter().map(|x| x * &g));
        }
    }
    GradedSubspace::span_polys(space, &gens)
}

/// Whether the computed persistent piece of degree `e` equals the expected
/// one.
pub fn verify_log_per(s: &LogFoliationSpec, e: u32) -> Result<bool> {
    let f = build_log_foliation(s)?;
    let computed = persistent_ideal_graded(f.foliation(), e)?;
    let expected = expected_per_graded(s, e)?;
    Ok(computed.dim() == expected.dim() && expected.is_subspace_of(&computed)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCheck {
    pub degree: u32,
    pub lhs: i128,
    pub rhs: i128,
    pub equal: bool,
}

fn binom_or_zero(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut out: i128 = 1;
    for i in 0..k as i128 {
        out = out * (n as i128 - i) / (i + 1);
    }
    out
}

/// Compares the persistent piece of degree `e` with the count predicted by
/// the resolution by trivial relations.
pub fn resolution_dim_check(s: &LogFoliationSpec, e: u32) -> Result<ResolutionCheck> {
    let f = build_log_foliation(s)?;
    let lhs = persistent_ideal_graded(f.foliation(), e)?.dim() as i128;
    let m = s.ambient() as i64 - 1;
    let d = s.total_degree() as i64;
    let e = e as i64;
    let k = s.factors.len() as i128;
    let rhs = s
        .degrees()
        .iter()
        .map(|&di| binom_or_zero(m + e - (d - di as i64), m))
        .sum::<i128>()
        - (k - 1) * binom_or_zero(m + e - d, m);
    Ok(ResolutionCheck {
        degree: e as u32,
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Outcome of the genericity checks. Passing is no proof of genericity:
/// factors must be squarefree and pairwise coprime, gradients must be
/// independent at every sampled integer point where two or more factors
/// vanish, and with three or more factors no two residues may coincide
/// (coincident residues enlarge the persistent ideal).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub squarefree: Vec<bool>,
    pub pairwise_coprime: bool,
    pub distinct_residues: bool,
    pub points_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Runs the checks, sampling primitive integer points with coordinates in
/// `-box_size..=box_size`.
pub fn genericity_check(s: &LogFoliationSpec, box_size: i64) -> Result<GenericityReport> {
    let m = s.ambient();
    let fs = &s.factors;
    let mut failures = Vec::new();
    let mut squarefree = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        let mut g = f.clone();
        for j in 0..m {
            g = g.gcd(&f.derivative(j))?;
        }
        let ok = g.is_constant();
        if !ok {
            failures.push(format!("factor {i} is not reduced"));
        }
        squarefree.push(ok);
    }
    let mut pairwise_coprime = true;
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if !fs[i].gcd(&fs[j])?.is_constant() {
                pairwise_coprime = false;
                failures.push(format!("factors {i} and {j} share a component"));
            }
        }
    }
    let mut distinct_residues = true;
    if fs.len() >= 3 {
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                if s.residues[i] == s.residues[j] {
                    distinct_residues = false;
                    failures.push(format!("residues {i} and {j} coincide"));
                }
            }
        }
    }
    let grads: Vec<Vec<Polynomial>> = fs.iter().map(|f| (0..m).map(|j| f.derivative(j)).collect()).collect();
    let mut points_checked = 0;
    let side = (2 * box_size + 1) as u64;
    let total = side.pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let mut pt = Vec::with_capacity(m);
        for _ in 0..m {
            pt.push((c % side) as i64 - box_size);
            c /= side;
        }
        let g = pt.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 || pt.iter().find(|&&x| x != 0).is_none_or(|&x| x < 0) {
            continue;
        }
        let q: Vec<Rational> = pt.iter().map(|&x| Rational::from_integer(x.into())).collect();
        let mut vanishing = Vec::new();
        for (i, f) in fs.iter().enumerate() {
            if f.eval(&q)?.is_zero() {
                vanishing.push(i);
            }
        }
        if vanishing.len() < 2 {
            continue;
        }
        points_checked += 1;
        let rows = vanishing
            .iter()
            .map(|&i| grads[i].iter().map(|g| g.eval(&q)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let rows: Vec<_> = rows.iter().map(|r| linalg::sparse(r)).collect();
        if linalg::rank(&rows, Backend::Exact)? < vanishing.len() {
            failures.push(format!("factors {vanishing:?} do not cross normally at {pt:?}"));
        }
    }
    Ok(GenericityReport {
        passed: failures.is_empty(),
        squarefree,
        pairwise_coprime,
        distinct_residues,
        points_checked,
        failures,
    })
}

/// Fails with the diagnostics when [`genericity_check`] does.
pub fn require_generic(s: &LogFoliationSpec, box_size: i64) -> Result<GenericityReport> {
    let r = genericity_check(s, box_size)?;
    if r.passed {
        Ok(r)
    } else {
        Err(Error::Domain(format!("spec is not generic: {}", r.failures.join("; "))))
    }
}
