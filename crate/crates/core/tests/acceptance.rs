//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::{Duration, Instant};

use common::*;
use foliation::foliation::*;
use foliation::linalg::InconsistencyCertificate;
use foliation::logfol::*;
use foliation::projective::*;
use foliation::unfolding::*;
use foliation::{rat, PForm, Polynomial, Rational, UnfoldedForm};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

// 1

fn mixed_form(rng: &mut ChaCha8Rng, m: usize, deg: usize) -> PForm {
    random_form(rng, m, deg, 4)
}

fn exterior_calculus() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_241);
    let cases = 500;
    let mut failures = BTreeMap::new();
    let mut fail = |name: &'static str| *failures.entry(name).or_insert(0usize) += 1;
    for _ in 0..cases {
        let m = rng.gen_range(1..=4);
        let p = rng.gen_range(0..=m);
        let a = mixed_form(&mut rng, m, p);
        if !a.d().d().is_zero() {
            fail("d∘d");
        }

        let m = rng.gen_range(2..=4);
        let p = rng.gen_range(0..m);
        let q = rng.gen_range(0..m - p);
        let a = mixed_form(&mut rng, m, p);
        let b = mixed_form(&mut rng, m, q);
        let lhs = a.wedge(&b).unwrap().d();
        let sign = rat(if p % 2 == 0 { 1 } else { -1 });
        let rhs = a.d().wedge(&b).unwrap().add(&a.wedge(&b.d()).unwrap().scale(&sign));
        if lhs != rhs {
            fail("Leibniz");
        }
        let ba = b.wedge(&a).unwrap().scale(&rat(if (p * q) % 2 == 0 { 1 } else { -1 }));
        if a.wedge(&b).unwrap() != ba {
            fail("anticommutativity");
        }

        let m = rng.gen_range(1..=4);
        let p = rng.gen_range(0..=m);
        let a = mixed_form(&mut rng, m, p);
        let v = random_field(&mut rng, m, 2);
        if a.lie_derivative(&v).unwrap() != a.lie_derivative_cartan(&v).unwrap() {
            fail("Cartan");
        }

        let m = rng.gen_range(2..=4);
        let p = rng.gen_range(1..m);
        let q = rng.gen_range(1..=m - p);
        let a = mixed_form(&mut rng, m, p);
        let b = mixed_form(&mut rng, m, q);
        let v = random_field(&mut rng, m, 2);
        let lhs = a.wedge(&b).unwrap().contract(&v).unwrap();
        let sign = rat(if p % 2 == 0 { 1 } else { -1 });
        let rhs = a
            .contract(&v)
            .unwrap()
            .wedge(&b)
            .unwrap()
            .add(&a.wedge(&b.contract(&v).unwrap()).unwrap().scale(&sign));
        if lhs != rhs {
            fail("contraction");
        }
        if p >= 2 && !a.contract(&v).unwrap().contract(&v).unwrap().is_zero() {
            fail("contraction");
        }
        if !a.add(&a.neg()).components().next().is_none() {
            fail("canonical form");
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    ensure(failures.is_empty(), format!("failures {failures:?}"))?;
    Ok(format!("{cases} cases per identity, 0 failures, {t:.2?}"))
}

// 2

fn integrability() -> Outcome {
    let dx = foliation::Foliation::new(PForm::dx(3, 0)).unwrap();
    ensure(integrability_check(&dx), "dx reported non-integrable")?;
    let contact = foliation::Foliation::new(one_form(&["0", "x0", "1"])).unwrap();
    ensure(!integrability_check(&contact), "dz + x dy reported integrable")?;
    for case in LOG_SUITE {
        let f = build_log_foliation(&case.spec()).map_err(|e| format!("{}: {e}", case.name))?;
        ensure(integrability_check(f.foliation()), format!("{} not integrable", case.name))?;
    }
    Ok(format!("dx yes, dz + x dy no, {} logarithmic specs integrable", LOG_SUITE.len()))
}

// 3

/// Monomials of degree `e` in three variables outside the ideal generated
/// by the squares.
fn jacobian_quotient_oracle(e: u32) -> usize {
    let mut n = 0;
    for a in 0..=e {
        for b in 0..=e - a {
            let c = e - a - b;
            if a < 2 && b < 2 && c < 2 {
                n += 1;
            }
        }
    }
    n
}

fn first_integral() -> Outcome {
    let start = Instant::now();
    let f = foliation::Foliation::new(PForm::function(p("x0^3 + x1^3 + x2^3", 3)).d()).unwrap();
    let dims: Vec<usize> = (0..=3).map(|e| ex_space(&f, e).map(|r| r.dim_ex)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let oracle: Vec<usize> = (0..=3).map(jacobian_quotient_oracle).collect();
    ensure(dims == vec![1, 3, 3, 1], format!("dims {dims:?}"))?;
    ensure(dims == oracle, format!("oracle {oracle:?} vs {dims:?}"))?;
    ensure(dims.iter().sum::<usize>() == 8, "total is not 8")?;
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("dims {dims:?}, total 8, oracle agrees, {t:.2?}"))
}

// 4

fn kupka() -> Outcome {
    let f = foliation::Foliation::new(one_form(&["x1", "2 x0"])).unwrap();
    let r = rigidity_certificate(&f, 6).map_err(|e| e.to_string())?;
    ensure(r == Rigidity::RigidUpTo(6), format!("{r:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = f.omega().coefficients();
    let big_d = &a[1].derivative(0) - &a[0].derivative(1);
    for _ in 0..50 {
        let b: Vec<Polynomial> = (0..2).map(|_| random_poly(&mut rng, 2, 3)).collect();
        let sigma = PForm::one_form(b.clone());
        let h = multiplier_of(&f, &sigma).ok_or("no multiplier for omega ^ sigma")?;
        let stated = &(&a[1] * &b[0]) - &(&a[0] * &b[1]);
        ensure(&h * &big_d == -&stated, "h D != a1 b2 - a2 b1 for h dw = w ^ sigma")?;
        let h_rev = solve_multiplier(&f.omega().d(), &sigma.wedge(f.omega()).unwrap())
            .ok_or("no multiplier for sigma ^ omega")?;
        ensure(&h_rev * &big_d == stated, "h D != a2 b1 - a1 b2 for h dw = sigma ^ w")?;
    }
    Ok("RigidUpTo(6); 50 random sigma: h D = a2 b1 - a1 b2 for h dw = sigma ^ w (negated for w ^ sigma)".into())
}

// 5

fn rigid_iff_per_is_sing() -> Outcome {
    let cases: Vec<(&str, PForm)> = vec![
        ("dx0", PForm::dx(3, 0)),
        ("kupka", one_form(&["x1", "2 x0"])),
        ("pencil", one_form(&["x1", "-x0", "0"])),
        ("fermat", PForm::function(p("x0^3 + x1^3 + x2^3", 3)).d()),
        ("D4", PForm::function(p("x0^2 x1 + x1^3", 2)).d()),
        ("three lines", build_log_foliation(&LOG_SUITE[3].spec()).unwrap().omega().clone()),
        ("line and conic", build_log_foliation(&LOG_SUITE[6].spec()).unwrap().omega().clone()),
        ("pencil times x1", one_form(&["x1^2", "-x0 x1", "0"])),
        ("node", one_form(&["2 x1", "-x0"])),
    ];
    let mut rigid_count = 0;
    for (name, w) in &cases {
        let f = foliation::Foliation::new(w.clone()).unwrap();
        let mut all_zero = true;
        let mut all_equal = true;
        for e in 0..=5 {
            let sing = singular_ideal_graded(&f, e).map_err(|x| x.to_string())?;
            let per = persistent_ideal_graded(&f, e).map_err(|x| x.to_string())?;
            ensure(sing.is_subspace_of(&per).unwrap(), format!("{name}: Sing not in Per at {e}"))?;
            all_equal &= per.is_subspace_of(&sing).unwrap();
            all_zero &= ex_space(&f, e).map_err(|x| x.to_string())?.dim_ex == 0;
        }
        ensure(all_zero == all_equal, format!("{name}: rigid {all_zero} but Per = Sing {all_equal}"))?;
        rigid_count += all_zero as usize;
    }
    Ok(format!("{} examples, {rigid_count} rigid, equivalence and containment hold for e <= 5", cases.len()))
}

// 6

fn logarithmic() -> Outcome {
    let start = Instant::now();
    let runs: [(&str, usize, u32); 3] = [("pencil of lines", 0, 4), ("quadric pair", 2, 5), ("three planes", 4, 5)];
    let mut parts = Vec::new();
    for (name, idx, top) in runs {
        let case = &LOG_SUITE[idx];
        ensure(case.name == name, "suite order changed")?;
        let s = case.spec();
        for e in 0..=top {
            ensure(verify_log_per(&s, e).unwrap(), format!("{name}: Per differs at degree {e}"))?;
            let r = resolution_dim_check(&s, e).unwrap();
            ensure(r.equal, format!("{name}: lhs {} rhs {} at degree {e}", r.lhs, r.rhs))?;
        }
        parts.push(format!("{name} e<={top}"));
    }
    Ok(format!("{}, {:.2?}", parts.join(", "), start.elapsed()))
}

// 7

fn cone_theorem() -> Outcome {
    let start = Instant::now();
    let pencil = ProjectiveFoliation::new(one_form(&["x1", "-x0", "0"])).unwrap();
    let rep = formal_extension_driver(&pencil, 10, None).map_err(|e| e.to_string())?;
    let last = rep.steps.last().map(|s| s.order).unwrap_or(0);
    ensure(last == 2 && rep.stabilized, format!("driver stopped at order {last}"))?;
    ensure(rep.polynomial_extension, "extension not integrable as a polynomial form")?;
    ensure(rep.is_cone == Some(true), "not certified as a cone")?;
    let lines = build_log_foliation(&LOG_SUITE[3].spec()).unwrap();
    for f in [&pencil, &lines] {
        let cln = cln_regular_check(f, foliation::linalg::Backend::Exact).map_err(|e| e.to_string())?;
        ensure(cln.regular, "expected CLN-regular")?;
        ensure(cln.table.len() as u32 + 1 == f.normal_twist(), "table does not cover n < k")?;
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("pencil stops at k = 2 as a cone; pencil and three lines have Ex^n = 0 for n < k; {t:.2?}"))
}

// 8

fn in_span(basis: &[(PForm, Polynomial)], x: &(PForm, Polynomial)) -> bool {
    let mut cols = Vec::new();
    let mut keys: BTreeMap<String, usize> = BTreeMap::new();
    let mut coords = |l: &(PForm, Polynomial)| {
        let mut v = Vec::new();
        for (idx, c) in l.0.components() {
            for (e, q) in c.terms() {
                let k = format!("eta {idx:?} {e:?}");
                let n = keys.len();
                v.push((*keys.entry(k).or_insert(n), q.clone()));
            }
        }
        for (e, q) in l.1.terms() {
            let k = format!("h {e:?}");
            let n = keys.len();
            v.push((*keys.entry(k).or_insert(n), q.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        v
    };
    for b in basis {
        cols.push(coords(b));
    }
    let rhs = coords(x);
    matches!(foliation::linalg::solve(&cols, &rhs), foliation::linalg::Solution::Solved { .. })
}

fn free_transitive() -> Outcome {
    let fixtures = vec![
        (UnfoldedForm::trivial(&one_form(&["x1", "2 x0"]), 1), 2u32),
        (UnfoldedForm::exact(&[p("x0^3 + x1^3 + x2^3", 3), p("1", 3)]).unwrap(), 2),
        (UnfoldedForm::trivial(&one_form(&["x1", "-x0", "0"]), 1), 1),
    ];
    let mut dims = Vec::new();
    for (u, bound) in &fixtures {
        let mut sols = Vec::new();
        let mut kdims = Vec::new();
        let mut basis = Vec::new();
        for seed in 0..10 {
            let c = extend_unfolding(u, *bound, Some(seed)).map_err(|e| e.to_string())?;
            let x = c.extended().ok_or("unexpected obstruction")?;
            ensure(x.is_integrable(), "continuation not integrable")?;
            let n = x.order();
            sols.push((x.eta(n).clone(), x.h(n).clone()));
            kdims.push(c.kernel_dim);
            basis = c.kernel_basis.clone();
        }
        ensure(kdims.iter().all(|&k| k == kdims[0]), format!("kernel dims vary: {kdims:?}"))?;
        let n = u.order() + 1;
        for i in 0..sols.len() {
            for j in i + 1..sols.len() {
                let de = sols[i].0.sub(&sols[j].0);
                let dh = &sols[i].1 - &sols[j].1;
                let (a, b) = layer_operator(u.base(), n, &de, &dh);
                ensure(a.is_zero() && b.is_zero(), "difference does not solve the homogeneous system")?;
                let total = u.extend(sols[j].0.add(&de), &sols[j].1 + &dh).unwrap();
                ensure(total.is_integrable(), "substituted continuation not integrable")?;
                ensure(in_span(&basis, &(de, dh)), "difference outside the kernel span")?;
            }
        }
        dims.push(kdims[0]);
    }
    Ok(format!("kernel dims {dims:?} stable over 10 seeds; all pairwise differences lie in the kernel"))
}

// 9

fn figueira() -> Outcome {
    let mut cells = 0;
    for deg_x in 3..=10i64 {
        for deg_f in 0..=4i64 {
            for dim_x in 2..=4i64 {
                let expect = dim_x >= 3 && deg_x >= 3 && deg_x > 2 * deg_f + 1;
                let got = figueira_extension_predicate(deg_x, deg_f, dim_x) == FigueiraVerdict::ExtendsUnobstructed;
                ensure(got == expect, format!("mismatch at ({deg_x}, {deg_f}, {dim_x})"))?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells match"))
}

// 10

fn check_certificate(c: &InconsistencyCertificate) -> Result<(), String> {
    let q = |s: &str| Rational::from_str(s).map_err(|e| format!("bad rational {s}: {e}"));
    let mut y = vec![Rational::zero(); c.rows];
    for (i, v) in &c.certificate {
        y[*i] = q(v)?;
    }
    let mut ya = vec![Rational::zero(); c.cols];
    for (i, j, v) in &c.matrix {
        ya[*j] += &y[*i] * q(v)?;
    }
    let mut yb = Rational::zero();
    for (i, v) in &c.rhs {
        yb += &y[*i] * q(v)?;
    }
    ensure(ya.iter().all(|x| x.is_zero()), "y A is not zero")?;
    ensure(yb.is_one(), format!("y b = {yb}"))
}

fn obstruction() -> Outcome {
    let f = ProjectiveFoliation::new(one_form(&["x1^2 x2", "x0^2 x2 - x0 x1 x2", "-x0^2 x1"])).unwrap();
    let start = HyperplaneExtension::from_layers(&f, vec![one_form(&["-2 x2^2", "-2 x2^2", "x1 x2"])]).unwrap();
    let rep = formal_extension_driver(&f, 5, Some(start)).map_err(|e| e.to_string())?;
    let step = rep.steps.last().ok_or("no steps")?;
    let cert = step.obstruction.as_ref().ok_or("instance was not obstructed")?;
    let json = serde_json::to_string(cert).map_err(|e| e.to_string())?;
    let back: InconsistencyCertificate = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    check_certificate(&back)?;
    Ok(format!(
        "obstructed at order {}, {}x{} system, certificate re-verified",
        step.order, back.rows, back.cols
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exterior calculus identities", exterior_calculus),
        ("integrability classification", integrability),
        ("first-integral unfolding", first_integral),
        ("Kupka rigidity", kupka),
        ("rigid iff Per = Sing", rigid_iff_per_is_sing),
        ("logarithmic persistent ideal", logarithmic),
        ("extension driver and cone theorem", cone_theorem),
        ("free-transitive structure", free_transitive),
        ("positivity predicate", figueira),
        ("obstruction certificate", obstruction),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
