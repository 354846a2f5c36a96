//! The line-oriented input format, version 1.
//!
//! ```text
//! version 1
//! label pencil of lines
//! vars x0 x1 x2
//! mode projective
//! form
//!   dx0 : x1
//!   dx1 : -x0
//! end
//! ```

use std::fmt;
use std::fmt::Write as _;

use foliation::{
    logfol::build_log_foliation, Error as CoreError, Foliation, HyperplaneExtension, LogFoliationSpec, PForm, Polynomial,
    ProjectiveFoliation, Rational, UnfoldedForm, VectorField,
};
use num_traits::Zero;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Affine,
    Projective,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Affine => "affine",
            Mode::Projective => "projective",
        }
    }
}

/// Layers `eta_k`, `h_k` for `k = 1 ..= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldingBlock {
    pub order: usize,
    pub eta: Vec<PForm>,
    pub h: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogFactor {
    pub factor: Polynomial,
    pub residue: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationDocument {
    pub label: Option<String>,
    pub vars: Vec<String>,
    pub mode: Mode,
    pub form: Option<PForm>,
    pub unfolding: Option<UnfoldingBlock>,
    pub logspec: Option<Vec<LogFactor>>,
    pub notes: Vec<String>,
}

/// A syntax or semantic error. Lines and columns start at 1; column 0
/// means the whole line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.column > 0 {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for DocError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, DocError> {
    Err(DocError {
        line,
        column,
        message: message.into(),
    })
}

/// One input line with its number and the column of its first character
/// after indentation.
struct Line<'a> {
    no: usize,
    indent: usize,
    text: &'a str,
}

impl Line<'_> {
    fn col(&self, sub: &str) -> usize {
        let offset = sub.as_ptr() as usize - self.text.as_ptr() as usize;
        self.indent + self.text[..offset].chars().count() + 1
    }
}

fn poly_at(line: &Line, text: &str, vars: &[String]) -> Result<Polynomial, DocError> {
    Polynomial::parse(text, vars).map_err(|e| match e {
        CoreError::Parse { column, token, message } => DocError {
            line: line.no,
            column: line.col(text) + column.saturating_sub(1),
            message: if token.is_empty() {
                message
            } else {
                format!("{message} (`{token}`)")
            },
        },
        other => DocError {
            line: line.no,
            column: line.col(text),
            message: other.to_string(),
        },
    })
}

fn var_index(line: &Line, word: &str, vars: &[String]) -> Result<usize, DocError> {
    let name = word.strip_prefix('d').unwrap_or("");
    vars.iter()
        .position(|v| v == name)
        .map_or_else(|| err(line.no, line.col(word), format!("`{word}` is not d<var>")), Ok)
}

fn parse_rational(line: &Line, word: &str) -> Result<Rational, DocError> {
    let bad = || DocError {
        line: line.no,
        column: line.col(word),
        message: format!("malformed rational `{word}`"),
    };
    let (num, den) = match word.split_once('/') {
        Some((a, b)) => (a, b),
        None => (word, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `key rest` at the first whitespace.
fn head(text: &str) -> (&str, &str) {
    match text.find(char::is_whitespace) {
        Some(i) => (&text[..i], text[i..].trim_start()),
        None => (text, ""),
    }
}

fn parse_usize(line: &Line, word: &str) -> Result<usize, DocError> {
    word.parse()
        .map_err(|_| DocError {
            line: line.no,
            column: line.col(word),
            message: format!("expected a non-negative integer, found `{word}`"),
        })
}

pub fn parse_document(text: &str) -> Result<FoliationDocument, DocError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let trimmed = raw.trim_start();
            Line {
                no: i + 1,
                indent: raw[..raw.len() - trimmed.len()].chars().count(),
                text: trimmed.trim_end(),
            }
        })
        .filter(|l| !l.text.is_empty() && !l.text.starts_with('#'))
        .collect();
    let mut it = lines.iter().peekable();
    let Some(first) = it.next() else {
        return err(1, 0, "empty document");
    };
    let (kw, rest) = head(first.text);
    if kw != "version" {
        return err(first.no, first.col(kw), "a document starts with `version 1`");
    }
    if parse_usize(first, rest)? != FORMAT_VERSION as usize {
        return err(first.no, first.col(rest), format!("unsupported version {rest}"));
    }
    let mut doc = FoliationDocument {
        label: None,
        vars: Vec::new(),
        mode: Mode::Affine,
        form: None,
        unfolding: None,
        logspec: None,
        notes: Vec::new(),
    };
    let mut form_line = 0;
    let mut mode_seen = false;
    while let Some(line) = it.next() {
        let (kw, rest) = head(line.text);
        let need_vars = |doc: &FoliationDocument| {
            if doc.vars.is_empty() {
                err(line.no, line.col(kw), format!("`{kw}` before `vars`"))
            } else {
                Ok(())
            }
        };
        match kw {
            "label" => {
                if doc.label.is_some() {
                    return err(line.no, line.col(kw), "duplicate label");
                }
                doc.label = Some(rest.to_string());
            }
            "note" => doc.notes.push(rest.to_string()),
            "vars" => {
                if !doc.vars.is_empty() {
                    return err(line.no, line.col(kw), "duplicate vars");
                }
                for w in rest.split_whitespace() {
                    if !is_identifier(w) {
                        return err(line.no, line.col(w), format!("bad variable name `{w}`"));
                    }
                    if doc.vars.iter().any(|v| v == w) {
                        return err(line.no, line.col(w), format!("repeated variable `{w}`"));
                    }
                    doc.vars.push(w.to_string());
                }
                if doc.vars.is_empty() {
                    return err(line.no, 0, "`vars` needs at least one name");
                }
            }
            "mode" => {
                if mode_seen {
                    return err(line.no, line.col(kw), "duplicate mode");
                }
                mode_seen = true;
                doc.mode = match rest {
                    "affine" => Mode::Affine,
                    "projective" => Mode::Projective,
                    _ => return err(line.no, line.col(kw) + 5, format!("unknown mode `{rest}`")),
                };
            }
            "form" => {
                need_vars(&doc)?;
                if doc.form.is_some() {
                    return err(line.no, line.col(kw), "duplicate form block");
                }
                if !rest.is_empty() {
                    return err(line.no, line.col(rest), "unexpected text after `form`");
                }
                form_line = line.no;
                let m = doc.vars.len();
                let mut coeffs: Vec<Option<Polynomial>> = vec![None; m];
                loop {
                    let Some(l) = it.next() else {
                        return err(line.no, 0, "form block without `end`");
                    };
                    if l.text == "end" {
                        break;
                    }
                    let Some((lhs, rhs)) = l.text.split_once(':') else {
                        return err(l.no, 0, "expected `d<var> : <polynomial>`");
                    };
                    let i = var_index(l, lhs.trim(), &doc.vars)?;
                    if coeffs[i].is_some() {
                        return err(l.no, l.col(lhs.trim()), format!("repeated `{}`", lhs.trim()));
                    }
                    coeffs[i] = Some(poly_at(l, rhs.trim(), &doc.vars)?);
                }
                let coeffs = coeffs.into_iter().map(|c| c.unwrap_or_else(|| Polynomial::zero(m))).collect();
                doc.form = Some(PForm::one_form(coeffs));
            }
            "unfolding" => {
                need_vars(&doc)?;
                if doc.unfolding.is_some() {
                    return err(line.no, line.col(kw), "duplicate unfolding block");
                }
                let (o, n) = head(rest);
                if o != "order" {
                    return err(line.no, line.col(kw), "expected `unfolding order <n>`");
                }
                let order = parse_usize(line, n)?;
                let m = doc.vars.len();
                let mut block = UnfoldingBlock {
                    order,
                    eta: vec![PForm::zero(m, 1); order],
                    h: vec![Polynomial::zero(m); order],
                };
                let mut seen = std::collections::BTreeSet::new();
                loop {
                    let Some(l) = it.next() else {
                        return err(line.no, 0, "unfolding block without `end`");
                    };
                    if l.text == "end" {
                        break;
                    }
                    let Some((lhs, rhs)) = l.text.split_once(':') else {
                        return err(l.no, 0, "expected `eta <k> d<var> : ..` or `h <k> : ..`");
                    };
                    let words: Vec<&str> = lhs.split_whitespace().collect();
                    let (kind, k) = match words.as_slice() {
                        ["eta", k, _] | ["h", k] => (words[0], parse_usize(l, k)?),
                        _ => return err(l.no, 0, "expected `eta <k> d<var> : ..` or `h <k> : ..`"),
                    };
                    if k == 0 || k > order {
                        return err(l.no, l.col(words[1]), format!("layer {k} outside 1..={order}"));
                    }
                    let value = poly_at(l, rhs.trim(), &doc.vars)?;
                    if kind == "eta" {
                        let i = var_index(l, words[2], &doc.vars)?;
                        if !seen.insert((k, Some(i))) {
                            return err(l.no, l.col(words[0]), "repeated layer entry");
                        }
                        block.eta[k - 1] = block.eta[k - 1].add(&PForm::dx(m, i).mul_poly(&value));
                    } else {
                        if !seen.insert((k, None)) {
                            return err(l.no, l.col(words[0]), "repeated layer entry");
                        }
                        block.h[k - 1] = value;
                    }
                }
                doc.unfolding = Some(block);
            }
            "logspec" => {
                need_vars(&doc)?;
                if doc.logspec.is_some() {
                    return err(line.no, line.col(kw), "duplicate logspec block");
                }
                let mut factors = Vec::new();
                loop {
                    let Some(l) = it.next() else {
                        return err(line.no, 0, "logspec block without `end`");
                    };
                    if l.text == "end" {
                        break;
                    }
                    let (k, rest) = head(l.text);
                    let Some(split) = rest.rfind(" residue ") else {
                        return err(l.no, 0, "expected `factor <polynomial> residue <rational>`");
                    };
                    if k != "factor" {
                        return err(l.no, l.col(k), "expected `factor`");
                    }
                    let factor = poly_at(l, rest[..split].trim(), &doc.vars)?;
                    let residue = parse_rational(l, rest[split + 9..].trim())?;
                    factors.push(LogFactor { factor, residue });
                }
                doc.logspec = Some(factors);
                check_logspec(&doc, line.no)?;
            }
            "version" => return err(line.no, line.col(kw), "duplicate version"),
            _ => return err(line.no, line.col(kw), format!("unknown directive `{kw}`")),
        }
    }
    if doc.vars.is_empty() {
        return err(lines.last().map_or(1, |l| l.no), 0, "missing `vars`");
    }
    check_semantics(&doc, form_line)?;
    Ok(doc)
}

fn check_logspec(doc: &FoliationDocument, line: usize) -> Result<(), DocError> {
    doc.log_spec().map(|_| ()).map_err(|e| DocError {
        line,
        column: 0,
        message: e.to_string(),
    })
}

fn check_semantics(doc: &FoliationDocument, form_line: usize) -> Result<(), DocError> {
    let semantic = |message: String| DocError {
        line: form_line.max(1),
        column: 0,
        message,
    };
    if let Some(w) = &doc.form {
        Foliation::new(w.clone()).map_err(|e| semantic(e.to_string()))?;
        if doc.mode == Mode::Projective {
            if w.homogeneous_degree().is_none() {
                return Err(semantic("form declared projective is not homogeneous".into()));
            }
            ProjectiveFoliation::new(w.clone()).map_err(|e| semantic(e.to_string()))?;
        }
        if let (Some(spec), Some(w)) = (doc.log_spec().ok().flatten(), &doc.form) {
            let built = build_log_foliation(&spec).map_err(|e| semantic(e.to_string()))?;
            if built.omega() != w {
                return Err(semantic("form does not match the logspec".into()));
            }
        }
    }
    if let (Some(u), Some(w)) = (&doc.unfolding, &doc.form) {
        if doc.mode == Mode::Projective {
            let r = VectorField::euler(doc.vars.len());
            for (k, (a, h)) in u.eta.iter().zip(&u.h).enumerate() {
                let expected = a.contract(&r).map_err(|e| semantic(e.to_string()))?.component(&[]);
                if !h.is_zero() && h != &-&expected {
                    return Err(semantic(format!("h {} must be minus the Euler contraction of eta {}", k + 1, k + 1)));
                }
            }
        } else {
            UnfoldedForm::new(
                std::iter::once(w.clone()).chain(u.eta.iter().cloned()).collect(),
                u.h.clone(),
            )
            .map_err(|e| semantic(e.to_string()))?;
        }
    }
    Ok(())
}

impl FoliationDocument {
    pub fn ambient(&self) -> usize {
        self.vars.len()
    }

    /// The form, taken from the logspec when no form block is present.
    pub fn omega(&self) -> Result<PForm, CoreError> {
        if let Some(w) = &self.form {
            return Ok(w.clone());
        }
        match self.log_spec()? {
            Some(spec) => Ok(build_log_foliation(&spec)?.omega().clone()),
            None => Err(CoreError::Domain("document has neither a form nor a logspec".into())),
        }
    }

    pub fn foliation(&self) -> Result<Foliation, CoreError> {
        Foliation::new(self.omega()?)
    }

    pub fn projective(&self) -> Result<ProjectiveFoliation, CoreError> {
        if self.mode != Mode::Projective {
            return Err(CoreError::Mode("this command needs `mode projective`".into()));
        }
        ProjectiveFoliation::new(self.omega()?)
    }

    pub fn log_spec(&self) -> Result<Option<LogFoliationSpec>, CoreError> {
        let Some(fs) = &self.logspec else {
            return Ok(None);
        };
        LogFoliationSpec::new(
            fs.iter().map(|f| f.factor.clone()).collect(),
            fs.iter().map(|f| f.residue.clone()).collect(),
        )
        .map(Some)
    }

    /// The unfolding block as an unfolded form (order 0 when absent). In
    /// projective mode the `h` layers are derived from the `eta` layers.
    pub fn unfolded(&self) -> Result<UnfoldedForm, CoreError> {
        let w = self.omega()?;
        match &self.unfolding {
            None => Ok(UnfoldedForm::trivial(&w, 0)),
            Some(u) if self.mode == Mode::Projective => {
                let f = ProjectiveFoliation::new(w)?;
                Ok(HyperplaneExtension::from_layers(&f, u.eta.clone())?.unfolded().clone())
            }
            Some(u) => UnfoldedForm::new(std::iter::once(w).chain(u.eta.iter().cloned()).collect(), u.h.clone()),
        }
    }

    /// Serializes in the canonical layout accepted by [`parse_document`].
    pub fn to_text(&self) -> String {
        let names = &self.vars;
        let mut out = String::new();
        let _ = writeln!(out, "version {FORMAT_VERSION}");
        if let Some(l) = &self.label {
            let _ = writeln!(out, "label {l}");
        }
        let _ = writeln!(out, "vars {}", names.join(" "));
        let _ = writeln!(out, "mode {}", self.mode.as_str());
        if let Some(w) = &self.form {
            out.push_str("form\n");
            for (i, v) in names.iter().enumerate() {
                let c = w.component(&[i]);
                if !c.is_zero() {
                    let _ = writeln!(out, "  d{v} : {}", c.display_with(names));
                }
            }
            out.push_str("end\n");
        }
        if let Some(u) = &self.unfolding {
            let _ = writeln!(out, "unfolding order {}", u.order);
            for k in 0..u.order {
                for (i, v) in names.iter().enumerate() {
                    let c = u.eta[k].component(&[i]);
                    if !c.is_zero() {
                        let _ = writeln!(out, "  eta {} d{v} : {}", k + 1, c.display_with(names));
                    }
                }
                if !u.h[k].is_zero() {
                    let _ = writeln!(out, "  h {} : {}", k + 1, u.h[k].display_with(names));
                }
            }
            out.push_str("end\n");
        }
        if let Some(fs) = &self.logspec {
            out.push_str("logspec\n");
            for f in fs {
                let _ = writeln!(out, "  factor {} residue {}", f.factor.display_with(names), f.residue);
            }
            out.push_str("end\n");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note {n}");
        }
        out
    }
}
