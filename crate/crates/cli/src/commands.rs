//! Command dispatch.

use std::fmt;
use std::str::FromStr;

use foliation::foliation::{
    integrability_check, integrability_defect, kupka_test, persistent_ideal_graded, persistent_ideal_graded_dim,
    persistent_ideal_truncated, singular_ideal, singular_ideal_graded,
};
use foliation::linalg::{Backend, PrimeField};
use foliation::logfol::{
    build_log_foliation, expected_per_generators, genericity_check, resolution_dim_check, verify_log_per,
};
use foliation::projective::{
    cln_regular_check, cone_extension, ex_n, ex_n_graded, figueira_extension_predicate, formal_extension_driver,
    hyp_line_bundle_cohomology, is_cone, pm_line_bundle_cohomology, ExnReport, HyperplaneExtension,
};
use foliation::unfolding::{
    extend_unfolding, ex_space, is_trivial_unfolding, rigidity_certificate, unfolded_integrability_check,
    Continuation, Rigidity, Triviality,
};
use foliation::{Completeness, Error as CoreError, Foliation, ProjectiveFoliation, Rational};
use serde_json::{json, Value};

use crate::document::{DocError, FoliationDocument, Mode};
use crate::report::{certificate, claim, degree_banner, exact, form_text, poly_text, subspace, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckIntegrability,
    SingularIdeal,
    KupkaTest,
    PersistentIdeal,
    ExSpace,
    Rigidity,
    UnfoldExtend,
    IsTrivial,
    ExN,
    ClnCheck,
    ExtendDriver,
    Cone,
    LogfolBuild,
    LogfolVerify,
    Cohomology,
    Figueira,
}

pub const COMMANDS: [(&str, Command); 16] = [
    ("check-integrability", Command::CheckIntegrability),
    ("singular-ideal", Command::SingularIdeal),
    ("kupka-test", Command::KupkaTest),
    ("persistent-ideal", Command::PersistentIdeal),
    ("ex-space", Command::ExSpace),
    ("rigidity", Command::Rigidity),
    ("unfold-extend", Command::UnfoldExtend),
    ("is-trivial", Command::IsTrivial),
    ("ex-n", Command::ExN),
    ("cln-check", Command::ClnCheck),
    ("extend-driver", Command::ExtendDriver),
    ("cone", Command::Cone),
    ("logfol-build", Command::LogfolBuild),
    ("logfol-verify", Command::LogfolVerify),
    ("cohomology", Command::Cohomology),
    ("figueira", Command::Figueira),
];

impl Command {
    pub fn name(self) -> &'static str {
        COMMANDS.iter().find(|(_, c)| *c == self).expect("listed").0
    }

    /// Commands that take numbers instead of a document.
    pub fn takes_document(self) -> bool {
        !matches!(self, Command::Cohomology | Command::Figueira)
    }

    fn accepts_mode(self) -> bool {
        matches!(self, Command::PersistentIdeal | Command::ExN | Command::ClnCheck)
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        COMMANDS
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, c)| *c)
            .ok_or_else(|| CliError::Usage(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub degree_bound: Option<u32>,
    pub max_order: Option<usize>,
    pub backend: Backend,
    pub seed: Option<u64>,
    pub point: Option<Vec<Rational>>,
    /// Integer arguments of `cohomology` and `figueira`.
    pub args: Vec<i64>,
    pub hypersurface: Option<u32>,
}

/// Parses `exact` or `prime-field:<p>`.
pub fn parse_backend(s: &str) -> Result<Backend, CliError> {
    if s == "exact" {
        return Ok(Backend::Exact);
    }
    let p = s
        .strip_prefix("prime-field:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Usage(format!("--mode expects `exact` or `prime-field:<p>`, got `{s}`")))?;
    PrimeField::new(p).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Backend::PrimeField(p))
}

/// Parses a comma-separated list of rationals such as `1,0,-1/2`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("bad coordinate `{}` in --point", x.trim())))
        })
        .collect()
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(DocError),
    /// The library refused the input.
    Semantic(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Semantic(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Semantic(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Semantic(e)
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Parse(e)
    }
}

type Out = Result<Report, CliError>;

pub fn run_command(cmd: Command, doc: Option<&FoliationDocument>, opts: &Options) -> Out {
    if opts.backend != Backend::Exact && !cmd.accepts_mode() {
        return Err(CliError::Usage(format!("--mode is not supported by {}", cmd.name())));
    }
    if !cmd.takes_document() {
        return match cmd {
            Command::Cohomology => cohomology(opts),
            _ => figueira(opts),
        };
    }
    let doc = doc.ok_or_else(|| CliError::Usage(format!("{} needs a document", cmd.name())))?;
    let mut r = Report::new(cmd.name());
    if let Some(l) = &doc.label {
        r.set("label", l.as_str());
    }
    match cmd {
        Command::CheckIntegrability => check_integrability(doc, r),
        Command::SingularIdeal => singular(doc, opts, r),
        Command::KupkaTest => kupka(doc, opts, r),
        Command::PersistentIdeal => persistent(doc, opts, r),
        Command::ExSpace => ex_space_cmd(doc, opts, r),
        Command::Rigidity => rigidity(doc, opts, r),
        Command::UnfoldExtend => unfold_extend(doc, opts, r),
        Command::IsTrivial => is_trivial(doc, opts, r),
        Command::ExN => ex_n_cmd(doc, opts, r),
        Command::ClnCheck => cln(doc, opts, r),
        Command::ExtendDriver => driver(doc, opts, r),
        Command::Cone => cone(doc, opts, r),
        Command::LogfolBuild => logfol_build(doc, r),
        Command::LogfolVerify => logfol_verify(doc, opts, r),
        Command::Cohomology | Command::Figueira => unreachable!(),
    }
}

fn banner(r: &mut Report, f: &Foliation) {
    match f.homogeneous_degree() {
        Some(d) => r.set("degree", degree_banner(d)),
        None => r.set("degree", json!({ "convention": "affine input, no projective degree" })),
    };
}

fn homogeneous_degree(f: &Foliation) -> Result<u32, CliError> {
    f.homogeneous_degree()
        .ok_or_else(|| CliError::Semantic(CoreError::Mode("this command needs homogeneous coefficients".into())))
}

fn check_integrability(doc: &FoliationDocument, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    let names = &doc.vars;
    r.set("form", form_text(f.omega(), names));
    let ok = integrability_check(&f);
    r.set("integrable", ok);
    if !ok {
        let defect = integrability_defect(&f);
        r.set("omega_wedge_domega", form_text(&defect, names));
        let comps: Vec<Value> = defect
            .components()
            .map(|(idx, c)| {
                let label: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i])).collect();
                json!({ "index": label.join("^"), "coefficient": poly_text(c, names) })
            })
            .collect();
        r.set("nonzero_components", comps);
        r.fail();
    }
    if doc.unfolding.is_some() {
        let u = doc.unfolded()?;
        let ok_u = unfolded_integrability_check(&u);
        r.set("unfolding_order", u.order());
        r.set("unfolding_integrable", ok_u);
        if !ok_u {
            r.fail();
        }
    }
    Ok(r)
}

fn default_bound(f: &Foliation) -> u32 {
    f.omega().max_coefficient_degree().unwrap_or(0) + 2
}

fn singular(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    let names = &doc.vars;
    let basis = singular_ideal(&f);
    r.set(
        "generators",
        json!({
            "polynomials": basis.generators.iter().map(|g| poly_text(g, names)).collect::<Vec<_>>(),
            "completeness": basis.completeness.to_string(),
        }),
    );
    if f.homogeneous_degree().is_some() {
        let bound = opts.degree_bound.unwrap_or(default_bound(&f));
        let pieces: Result<Vec<Value>, CliError> = (0..=bound)
            .map(|e| {
                let s = singular_ideal_graded(&f, e)?;
                Ok(json!({ "degree": e, "piece": subspace(&s, names, Completeness::Exact) }))
            })
            .collect();
        r.set("graded", pieces?);
    }
    Ok(r)
}

fn kupka(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    let point = opts
        .point
        .as_ref()
        .ok_or_else(|| CliError::Usage("kupka-test needs --point".into()))?;
    if point.len() != doc.ambient() {
        return Err(CliError::Usage(format!(
            "--point has {} coordinates, the document has {} variables",
            point.len(),
            doc.ambient()
        )));
    }
    let class = kupka_test(&f, point)?;
    r.set("point", point.iter().map(|q| q.to_string()).collect::<Vec<_>>());
    r.set("class", format!("{class:?}"));
    Ok(r)
}

fn persistent(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    let names = &doc.vars;
    let bound = opts.degree_bound.unwrap_or(default_bound(&f));
    if f.homogeneous_degree().is_some() {
        let mut pieces = Vec::new();
        for e in 0..=bound {
            match opts.backend {
                Backend::Exact => {
                    let s = persistent_ideal_graded(&f, e)?;
                    pieces.push(json!({ "degree": e, "piece": subspace(&s, names, Completeness::Exact) }));
                }
                Backend::PrimeField(p) => {
                    let dim = persistent_ideal_graded_dim(&f, e, opts.backend)?;
                    pieces.push(json!({ "degree": e, "dim": exact(dim), "field": format!("prime-field:{p}") }));
                }
            }
        }
        r.set("graded", pieces);
    } else {
        if opts.backend != Backend::Exact {
            return Err(CliError::Usage("prime-field mode needs homogeneous input".into()));
        }
        let basis = persistent_ideal_truncated(&f, bound)?;
        r.set(
            "generators",
            json!({
                "polynomials": basis.generators.iter().map(|g| poly_text(g, names)).collect::<Vec<_>>(),
                "count": claim(basis.generators.len(), basis.completeness),
                "completeness": basis.completeness.to_string(),
            }),
        );
    }
    Ok(r)
}

fn ex_space_cmd(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    homogeneous_degree(&f)?;
    let bound = opts.degree_bound.unwrap_or(default_bound(&f));
    let mut rows = Vec::new();
    let mut total = 0;
    for e in 0..=bound {
        let x = ex_space(&f, e)?;
        total += x.dim_ex;
        rows.push(json!({
            "degree": e,
            "dim_per": exact(x.dim_per),
            "dim_contracted": exact(x.dim_contracted),
            "dim_ex": exact(x.dim_ex),
            "representatives": x.representatives.iter().map(|h| poly_text(h, &doc.vars)).collect::<Vec<_>>(),
        }));
    }
    r.set("table", rows);
    r.set("total_dim_ex", claim(total, Completeness::Truncated(bound)));
    Ok(r)
}

fn rigidity(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    homogeneous_degree(&f)?;
    let bound = opts.degree_bound.unwrap_or(default_bound(&f));
    match rigidity_certificate(&f, bound)? {
        Rigidity::RigidUpTo(b) => {
            r.set("verdict", "rigid_up_to");
            r.set("checked_degrees", claim(b, Completeness::Truncated(b)));
        }
        Rigidity::NonRigidWitness { h, degree } => {
            r.set("verdict", "non_rigid");
            r.set("witness", poly_text(&h, &doc.vars));
            r.set("witness_degree", exact(degree));
        }
    }
    Ok(r)
}

fn unfold_extend(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    let u = doc.unfolded()?;
    let bound = opts.degree_bound.unwrap_or(default_bound(&f));
    let c = extend_unfolding(&u, bound, opts.seed)?;
    let names = &doc.vars;
    r.set("order", c.order);
    r.set("bound", c.bound);
    r.set("kernel_dim", claim(c.kernel_dim, c.completeness));
    r.set(
        "kernel_basis",
        c.kernel_basis
            .iter()
            .map(|(eta, h)| json!({ "eta": form_text(eta, names), "h": poly_text(h, names) }))
            .collect::<Vec<_>>(),
    );
    match &c.outcome {
        Continuation::Extended(next) => {
            r.set("outcome", "extended");
            r.set(
                "layer",
                json!({ "eta": form_text(next.eta(c.order), names), "h": poly_text(next.h(c.order), names) }),
            );
            r.set("seed", opts.seed.map_or(Value::Null, Value::from));
        }
        Continuation::Obstructed(cert) => {
            r.set("outcome", "obstructed");
            r.set("obstruction_completeness", c.completeness.to_string());
            r.set("certificate", certificate(cert));
            r.fail();
        }
    }
    Ok(r)
}

fn is_trivial(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    let u = doc.unfolded()?;
    let bound = opts.degree_bound.unwrap_or(default_bound(&f));
    r.set("order", u.order());
    match is_trivial_unfolding(&u, bound)? {
        Triviality::Trivial => r.set("verdict", "trivial"),
        Triviality::NotTrivial { order } => r.set("verdict", "not_trivial").set("failing_order", order),
        Triviality::Unknown { order, bound } => r
            .set("verdict", "unknown")
            .set("failing_order", order)
            .set("completeness", Completeness::Truncated(bound).to_string()),
    };
    Ok(r)
}

fn exn_row(x: &ExnReport, backend: Backend) -> Value {
    json!({
        "n": x.n,
        "degree": x.degree,
        "dim_hzero_pint": exact(x.dim_hzero_pint),
        "dim_twisted_fields_image": exact(x.dim_twisted_fields_image),
        "dim_exn": exact(x.dim_exn),
        "field": backend_name(backend),
    })
}

fn backend_name(b: Backend) -> String {
    match b {
        Backend::Exact => "exact".into(),
        Backend::PrimeField(p) => format!("prime-field:{p}"),
    }
}

fn ex_n_cmd(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let f = doc.foliation()?;
    banner(&mut r, &f);
    let d = homogeneous_degree(&f)?;
    let top = opts.max_order.unwrap_or((d as usize).max(1));
    let mut rows = Vec::new();
    if doc.mode == Mode::Projective {
        let pf = doc.projective()?;
        for n in 1..=top as u32 {
            let x = match opts.backend {
                Backend::Exact => ex_n(&pf, n)?,
                b => ex_n_graded(pf.foliation(), n, b)?,
            };
            rows.push(exn_row(&x, opts.backend));
        }
    } else {
        for n in 1..=top as u32 {
            rows.push(exn_row(&ex_n_graded(&f, n, opts.backend)?, opts.backend));
        }
    }
    r.set("table", rows);
    Ok(r)
}

fn cln(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let pf = doc.projective()?;
    banner(&mut r, pf.foliation());
    let c = cln_regular_check(&pf, opts.backend)?;
    r.set("table", c.table.iter().map(|x| exn_row(x, opts.backend)).collect::<Vec<_>>());
    r.set("cln_regular", c.regular);
    Ok(r)
}

fn start_extension(doc: &FoliationDocument, pf: &ProjectiveFoliation) -> Result<Option<HyperplaneExtension>, CliError> {
    match &doc.unfolding {
        None => Ok(None),
        Some(u) => Ok(Some(HyperplaneExtension::from_layers(pf, u.eta.clone())?)),
    }
}

fn extension_layers(e: &HyperplaneExtension, names: &[String]) -> Value {
    (1..=e.order())
        .map(|k| {
            json!({
                "order": k,
                "alpha": form_text(e.alpha(k), names),
                "h": poly_text(e.unfolded().h(k), names),
            })
        })
        .collect::<Vec<_>>()
        .into()
}

fn driver(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let pf = doc.projective()?;
    banner(&mut r, pf.foliation());
    let k = pf.normal_twist() as usize;
    let start = start_extension(doc, &pf)?;
    let rep = formal_extension_driver(&pf, opts.max_order.unwrap_or(k), start)?;
    let steps: Vec<Value> = rep
        .steps
        .iter()
        .map(|s| {
            json!({
                "order": s.order,
                "unknowns": exact(s.unknowns),
                "kernel_dim": exact(s.kernel_dim),
                "trivial_image_dim": exact(s.trivial_image_dim),
                "obstructed": s.obstruction.is_some(),
            })
        })
        .collect();
    r.set("steps", steps);
    r.set("stabilized", rep.stabilized);
    r.set("polynomial_extension", rep.polynomial_extension);
    r.set("unique", rep.unique);
    r.set("unique_up_to_isomorphism", rep.unique_up_to_isomorphism);
    r.set("is_cone", rep.is_cone.map_or(Value::Null, Value::Bool));
    if let Some(e) = &rep.extension {
        r.set("extension", extension_layers(e, &doc.vars));
    }
    if let Some(cert) = rep.steps.iter().find_map(|s| s.obstruction.as_ref()) {
        r.set("certificate", certificate(cert));
        r.fail();
    }
    Ok(r)
}

fn cone(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let pf = doc.projective()?;
    banner(&mut r, pf.foliation());
    let order = opts.max_order.unwrap_or(pf.normal_twist() as usize);
    let c = cone_extension(&pf, order);
    r.set("cone", extension_layers(&c, &doc.vars));
    if let Some(e) = start_extension(doc, &pf)? {
        r.set("document_extension_order", e.order());
        r.set("document_extension_integrable", e.is_integrable());
        r.set("document_extension_is_cone", is_cone(&pf, &e)?);
    }
    Ok(r)
}

fn log_spec(doc: &FoliationDocument) -> Result<foliation::LogFoliationSpec, CliError> {
    doc.log_spec()?
        .ok_or_else(|| CliError::Usage("this command needs a logspec block".into()))
}

fn genericity(r: &mut Report, s: &foliation::LogFoliationSpec) -> Result<(), CliError> {
    let g = genericity_check(s, 3)?;
    r.set("genericity", serde_json::to_value(&g).expect("serializes"));
    Ok(())
}

fn logfol_build(doc: &FoliationDocument, mut r: Report) -> Out {
    let s = log_spec(doc)?;
    let pf = build_log_foliation(&s)?;
    banner(&mut r, pf.foliation());
    let names = &doc.vars;
    r.set("residues", s.residues().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    r.set("form", form_text(pf.omega(), names));
    r.set("integrable", integrability_check(pf.foliation()));
    genericity(&mut r, &s)?;
    let built = FoliationDocument {
        mode: Mode::Projective,
        form: Some(pf.omega().clone()),
        unfolding: None,
        ..doc.clone()
    };
    r.set("document", built.to_text());
    Ok(r)
}

fn logfol_verify(doc: &FoliationDocument, opts: &Options, mut r: Report) -> Out {
    let s = log_spec(doc)?;
    let pf = build_log_foliation(&s)?;
    banner(&mut r, pf.foliation());
    let names = &doc.vars;
    r.set(
        "expected_generators",
        expected_per_generators(&s).iter().map(|g| poly_text(g, names)).collect::<Vec<_>>(),
    );
    genericity(&mut r, &s)?;
    let bound = opts.degree_bound.unwrap_or(4);
    let mut rows = Vec::new();
    let mut all = true;
    for e in 0..=bound {
        let per = verify_log_per(&s, e)?;
        let res = resolution_dim_check(&s, e)?;
        all &= per && res.equal;
        rows.push(json!({
            "degree": e,
            "per_matches_generators": per,
            "dim_per": exact(res.lhs as i64),
            "dim_predicted": exact(res.rhs as i64),
            "resolution_matches": res.equal,
        }));
    }
    r.set("table", rows);
    r.set("verified", all);
    if !all {
        r.fail();
    }
    Ok(r)
}

fn cohomology(opts: &Options) -> Out {
    let [m, d, q] = opts.args[..] else {
        return Err(CliError::Usage("cohomology expects M D Q".into()));
    };
    let m = u32::try_from(m).map_err(|_| CliError::Usage("M must be non-negative".into()))?;
    let q = u32::try_from(q).map_err(|_| CliError::Usage("Q must be non-negative".into()))?;
    let mut r = Report::new("cohomology");
    let dim = match opts.hypersurface {
        None => {
            r.set("space", format!("P^{m}"));
            pm_line_bundle_cohomology(m, d, q)?
        }
        Some(a) => {
            r.set("space", format!("hypersurface of degree {a} in P^{m}"));
            hyp_line_bundle_cohomology(m, a, d, q)?
        }
    };
    r.set("twist", d);
    r.set("q", q);
    r.set("dim", exact(dim.to_string()));
    Ok(r)
}

fn figueira(opts: &Options) -> Out {
    let [deg_x, deg_f, dim_x] = opts.args[..] else {
        return Err(CliError::Usage("figueira expects DEGX DEGF DIMX".into()));
    };
    let mut r = Report::new("figueira");
    r.set("deg_x", deg_x).set("deg_f", deg_f).set("dim_x", dim_x);
    r.set("inequality", format!("{deg_x} > 2*{deg_f}+1"));
    r.set("verdict", format!("{:?}", figueira_extension_predicate(deg_x, deg_f, dim_x)));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_document;

    const PENCIL: &str = "version 1\nvars x0 x1 x2\nmode projective\nform\n  dx0 : x1\n  dx1 : -x0\nend\n";

    #[test]
    fn names_round_trip() {
        for (n, c) in COMMANDS {
            assert_eq!(n.parse::<Command>().unwrap(), c);
            assert_eq!(c.name(), n);
        }
        assert_eq!("nope".parse::<Command>().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn pencil_cln() {
        let doc = parse_document(PENCIL).unwrap();
        let r = run_command(Command::ClnCheck, Some(&doc), &Options::default()).unwrap();
        assert_eq!(r.get("cln_regular"), Some(&Value::Bool(true)));
        assert_eq!(r.get("table").unwrap()[0]["dim_exn"]["value"], 0);
    }

    #[test]
    fn mode_only_where_supported() {
        let doc = parse_document(PENCIL).unwrap();
        let opts = Options {
            backend: parse_backend("prime-field:1000003").unwrap(),
            ..Options::default()
        };
        assert!(run_command(Command::ExN, Some(&doc), &opts).is_ok());
        let e = run_command(Command::Rigidity, Some(&doc), &opts).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(parse_backend("prime-field:1000").is_err());
    }

    #[test]
    fn figueira_example() {
        let opts = Options {
            args: vec![5, 1, 3],
            ..Options::default()
        };
        let r = run_command(Command::Figueira, None, &opts).unwrap();
        assert_eq!(r.get("verdict").unwrap(), "ExtendsUnobstructed");
    }
}
