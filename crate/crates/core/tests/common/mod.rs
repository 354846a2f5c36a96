#![allow(dead_code)]

use foliation::polyforms::default_names;
use foliation::{rat, PForm, Polynomial, VectorField};
use proptest::prelude::*;
use rand::Rng;

pub fn p(s: &str, m: usize) -> Polynomial {
    Polynomial::parse(s, &default_names(m)).unwrap()
}

pub fn one_form(cs: &[&str]) -> PForm {
    PForm::one_form(cs.iter().map(|c| p(c, cs.len())).collect())
}

pub fn poly_strategy(m: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-9i64..=9, prop::collection::vec(0..=max_deg, m)), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(
            m,
            terms.into_iter().filter(|(_, e)| e.iter().sum::<u32>() <= max_deg).map(|(c, e)| (rat(c), e)),
        )
    })
}

pub fn form_strategy(m: usize, deg: usize, max_deg: u32) -> impl Strategy<Value = PForm> {
    let tuples = foliation::polyforms::index_tuples(m, deg);
    let n = tuples.len();
    prop::collection::vec(poly_strategy(m, max_deg), n).prop_map(move |cs| {
        let mut out = PForm::zero(m, deg);
        for (idx, c) in tuples.iter().zip(cs) {
            out = out.add(&PForm::monomial_form(c, idx).unwrap());
        }
        out
    })
}

pub fn field_strategy(m: usize, max_deg: u32) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly_strategy(m, max_deg), m).prop_map(VectorField::new)
}

/// Random polynomial for the hand-rolled loops: up to 5 terms, coefficients
/// in `-9..=9`, total degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, m: usize, max_deg: u32) -> Polynomial {
    let n = rng.gen_range(0..=5);
    let terms = (0..n).map(|_| {
        let mut e = vec![0u32; m];
        let d = rng.gen_range(0..=max_deg);
        for _ in 0..d {
            e[rng.gen_range(0..m)] += 1;
        }
        (rat(rng.gen_range(-9..=9)), e)
    });
    Polynomial::from_terms(m, terms.collect::<Vec<_>>())
}

pub fn random_form<R: Rng>(rng: &mut R, m: usize, deg: usize, max_deg: u32) -> PForm {
    let mut out = PForm::zero(m, deg);
    for idx in foliation::polyforms::index_tuples(m, deg) {
        if rng.gen_bool(0.6) {
            out = out.add(&PForm::monomial_form(random_poly(rng, m, max_deg), &idx).unwrap());
        }
    }
    out
}

pub fn random_field<R: Rng>(rng: &mut R, m: usize, max_deg: u32) -> VectorField {
    VectorField::new((0..m).map(|_| random_poly(rng, m, max_deg)).collect())
}

/// Random homogeneous polynomial of degree `d`.
pub fn random_homogeneous<R: Rng>(rng: &mut R, m: usize, d: u32, terms: usize) -> Polynomial {
    let ts = (0..terms).map(|_| {
        let mut e = vec![0u32; m];
        for _ in 0..d {
            e[rng.gen_range(0..m)] += 1;
        }
        (rat(rng.gen_range(-9..=9)), e)
    });
    Polynomial::from_terms(m, ts.collect::<Vec<_>>())
}

/// One entry of the logarithmic regression suite.
pub struct LogCase {
    pub name: &'static str,
    pub factors: &'static [&'static str],
    pub residues: &'static [i64],
    pub ambient: usize,
    /// Expected to pass the genericity checks.
    pub generic: bool,
}

pub const LOG_SUITE: &[LogCase] = &[
    LogCase { name: "pencil of lines", factors: &["x0", "x1"], residues: &[1, -1], ambient: 3, generic: true },
    LogCase { name: "pencil of planes", factors: &["x0", "x1"], residues: &[1, -1], ambient: 4, generic: true },
    LogCase {
        name: "quadric pair",
        factors: &["x0^2 + x1 x2 - x3^2", "x1^2 - x0 x3 + x2^2"],
        residues: &[1, -1],
        ambient: 4,
        generic: true,
    },
    LogCase { name: "three lines", factors: &["x0", "x1", "x0 + x1 + x2"], residues: &[1, 2, -3], ambient: 3, generic: true },
    LogCase {
        name: "three planes",
        factors: &["x0", "x1", "x0 + x2 + x3"],
        residues: &[1, 2, -3],
        ambient: 4,
        generic: true,
    },
    LogCase {
        name: "four lines",
        factors: &["x0", "x1", "x2", "x0 + x1 + x2"],
        residues: &[1, 2, 3, -6],
        ambient: 3,
        generic: true,
    },
    LogCase { name: "line and conic", factors: &["x0", "x1^2 - x2^2 - x0 x2"], residues: &[2, -1], ambient: 3, generic: true },
    LogCase {
        name: "two conics",
        factors: &["x0^2 + x1^2 - x2^2", "x0 x1 - x2^2 + x1 x2"],
        residues: &[1, -1],
        ambient: 3,
        generic: true,
    },
    LogCase {
        name: "two lines and a cubic",
        factors: &["x0", "x1", "x0^3 + x1^3 + x2^3"],
        residues: &[1, 2, -1],
        ambient: 3,
        generic: true,
    },
    LogCase {
        name: "plane and quadric",
        factors: &["x3", "x0^2 + x1^2 - x2^2 - x3^2 + x0 x1"],
        residues: &[2, -1],
        ambient: 4,
        generic: true,
    },
    LogCase {
        name: "tangent line and conic",
        factors: &["x0", "x1^2 + x2 x0"],
        residues: &[2, -1],
        ambient: 3,
        generic: false,
    },
    LogCase {
        name: "three lines, equal residues",
        factors: &["x0", "x1", "x0 + x1 + x2"],
        residues: &[1, 1, -2],
        ambient: 3,
        generic: false,
    },
];

impl LogCase {
    pub fn spec(&self) -> foliation::LogFoliationSpec {
        foliation::LogFoliationSpec::new(
            self.factors.iter().map(|f| p(f, self.ambient)).collect(),
            self.residues.iter().map(|&l| rat(l)).collect(),
        )
        .unwrap()
    }
}
