//! Differential forms and vector fields with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{default_names, rat, Polynomial, Rational};
use crate::error::{shape, Result};

/// Strictly increasing index tuple naming `dx_{i1} ^ ... ^ dx_{ip}`.
pub type IndexTuple = Vec<usize>;

/// An alternating `p`-form `sum_I a_I dx_I` on affine `m`-space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PForm {
    ambient: usize,
    degree: usize,
    components: BTreeMap<IndexTuple, Polynomial>,
}

/// Sign of the permutation sorting `v` (all entries distinct), or `None`
/// when an index repeats.
fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

/// All increasing `p`-tuples from `0..m`, lexicographic.
pub fn index_tuples(m: usize, p: usize) -> Vec<IndexTuple> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < left {
                break;
            }
            cur.push(i);
            rec(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, p, &mut Vec::new(), &mut out);
    out
}

impl PForm {
    pub fn zero(ambient: usize, degree: usize) -> Self {
        PForm {
            ambient,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: Polynomial) -> Self {
        let mut out = PForm::zero(f.ambient(), 0);
        out.add_component(Vec::new(), f);
        out
    }

    /// The 1-form `dx_i`.
    pub fn dx(ambient: usize, i: usize) -> Self {
        let mut out = PForm::zero(ambient, 1);
        out.add_component(vec![i], Polynomial::one(ambient));
        out
    }

    /// `sum_i coeffs[i] dx_i`.
    pub fn one_form(coeffs: Vec<Polynomial>) -> Self {
        let m = coeffs.len();
        let mut out = PForm::zero(m, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            assert_eq!(c.ambient(), m, "coefficient ambient");
            out.add_component(vec![i], c);
        }
        out
    }

    /// `f dx_I` for an arbitrary (not necessarily sorted) index list.
    pub fn monomial_form(f: Polynomial, indices: &[usize]) -> Result<Self> {
        let m = f.ambient();
        if indices.iter().any(|&i| i >= m) {
            return shape("index out of range");
        }
        let mut idx = indices.to_vec();
        let mut out = PForm::zero(m, indices.len());
        if let Some(s) = sort_sign(&mut idx) {
            out.add_component(idx, f.scale(&rat(s)));
        }
        Ok(out)
    }

    pub(crate) fn add_component(&mut self, idx: IndexTuple, f: Polynomial) {
        debug_assert_eq!(idx.len(), self.degree);
        if f.is_zero() {
            return;
        }
        match self.components.get_mut(&idx) {
            Some(g) => {
                *g = &*g + &f;
                if g.is_zero() {
                    self.components.remove(&idx);
                }
            }
            None => {
                self.components.insert(idx, f);
            }
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&IndexTuple, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, idx: &[usize]) -> Polynomial {
        self.components
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.ambient))
    }

    /// Coefficients of a 1-form, one per variable.
    pub fn coefficients(&self) -> Vec<Polynomial> {
        assert_eq!(self.degree, 1, "coefficients() is for 1-forms");
        (0..self.ambient).map(|i| self.component(&[i])).collect()
    }

    /// Common degree of all coefficients, if they are homogeneous of one
    /// degree. `None` for the zero form.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for c in self.components.values() {
            let d = c.homogeneous_degree()?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn max_coefficient_degree(&self) -> Option<u32> {
        self.components.values().filter_map(|c| c.degree()).max()
    }

    pub fn min_coefficient_degree(&self) -> Option<u32> {
        self.components.values().filter_map(|c| c.min_degree()).min()
    }

    /// Part whose coefficients have total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> PForm {
        let mut out = PForm::zero(self.ambient, self.degree);
        for (i, c) in &self.components {
            out.add_component(i.clone(), c.homogeneous_part(d));
        }
        out
    }

    fn check_same(&self, other: &PForm) -> Result<()> {
        if self.ambient != other.ambient || self.degree != other.degree {
            return shape(format!(
                "form mismatch: ({}, {}) vs ({}, {})",
                self.ambient, self.degree, other.ambient, other.degree
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PForm) -> Result<PForm> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (i, c) in &other.components {
            out.add_component(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PForm) -> Result<PForm> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (i, c) in &other.components {
            out.add_component(i.clone(), -c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &PForm) -> PForm {
        self.try_add(other).expect("form shape mismatch")
    }

    pub fn sub(&self, other: &PForm) -> PForm {
        self.try_sub(other).expect("form shape mismatch")
    }

    pub fn neg(&self) -> PForm {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> PForm {
        let mut out = PForm::zero(self.ambient, self.degree);
        if c.is_zero() {
            return out;
        }
        for (i, f) in &self.components {
            out.components.insert(i.clone(), f.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn mul_poly(&self, f: &Polynomial) -> PForm {
        let mut out = PForm::zero(self.ambient, self.degree);
        for (i, g) in &self.components {
            out.add_component(i.clone(), g * f);
        }
        out
    }

    /// Exterior product. Fails when the degrees add up past the ambient
    /// dimension.
    pub fn wedge(&self, other: &PForm) -> Result<PForm> {
        if self.ambient != other.ambient {
            return shape("wedge: ambient mismatch");
        }
        let p = self.degree + other.degree;
        if p > self.ambient {
            return shape(format!(
                "wedge: degree {} + {} exceeds ambient {}",
                self.degree, other.degree, self.ambient
            ));
        }
        let mut out = PForm::zero(self.ambient, p);
        for (i, a) in &self.components {
            for (j, b) in &other.components {
                let mut idx: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
                if let Some(s) = sort_sign(&mut idx) {
                    let mut c = a * b;
                    if s < 0 {
                        c = -c;
                    }
                    out.add_component(idx, c);
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative. The derivative of a top-degree form is the
    /// zero form of degree `m + 1`.
    pub fn d(&self) -> PForm {
        let mut out = PForm::zero(self.ambient, self.degree + 1);
        for (idx, a) in &self.components {
            for j in 0..self.ambient {
                if idx.contains(&j) {
                    continue;
                }
                let da = a.derivative(j);
                if da.is_zero() {
                    continue;
                }
                let before = idx.iter().filter(|&&i| i < j).count();
                let mut new = idx.clone();
                new.insert(before, j);
                out.add_component(new, if before % 2 == 0 { da } else { -da });
            }
        }
        out
    }

    /// Interior product `i_v`. Not defined on 0-forms.
    pub fn contract(&self, v: &VectorField) -> Result<PForm> {
        if v.ambient() != self.ambient {
            return shape("contract: ambient mismatch");
        }
        if self.degree == 0 {
            return shape("contract: interior product of a 0-form");
        }
        let mut out = PForm::zero(self.ambient, self.degree - 1);
        for (idx, a) in &self.components {
            for (k, &i) in idx.iter().enumerate() {
                let vi = &v.components()[i];
                if vi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let c = a * vi;
                out.add_component(rest, if k % 2 == 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    /// Lie derivative, computed termwise from
    /// `L_v(a dx_I) = v(a) dx_I + a sum_k dx_{i1} ^ .. ^ d(v_{ik}) ^ .. ^ dx_{ip}`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<PForm> {
        if v.ambient() != self.ambient {
            return shape("lie_derivative: ambient mismatch");
        }
        let m = self.ambient;
        let dv: Vec<PForm> = v
            .components()
            .iter()
            .map(|f| PForm::function(f.clone()).d())
            .collect();
        let mut out = PForm::zero(m, self.degree);
        for (idx, a) in &self.components {
            out.add_component(idx.clone(), v.apply(a));
            for k in 0..idx.len() {
                let mut acc = PForm::function(a.clone());
                for (l, &i) in idx.iter().enumerate() {
                    let factor = if l == k { dv[i].clone() } else { PForm::dx(m, i) };
                    acc = acc.wedge(&factor)?;
                }
                out = out.add(&acc);
            }
        }
        Ok(out)
    }

    /// Cartan's formula `L_v = d i_v + i_v d`.
    pub fn lie_derivative_cartan(&self, v: &VectorField) -> Result<PForm> {
        let inner = if self.degree == 0 {
            PForm::zero(self.ambient, 0)
        } else {
            self.contract(v)?.d()
        };
        let d = self.d();
        let outer = if d.degree > self.ambient {
            PForm::zero(self.ambient, self.degree)
        } else {
            d.contract(v)?
        };
        Ok(inner.add(&outer))
    }

    /// Values of all components at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<BTreeMap<IndexTuple, Rational>> {
        let mut out = BTreeMap::new();
        for (idx, a) in &self.components {
            let v = a.eval(point)?;
            if !v.is_zero() {
                out.insert(idx.clone(), v);
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PForm {
        let mut out = PForm::zero(self.ambient, self.degree);
        for (idx, a) in &self.components {
            out.add_component(idx.clone(), f(a));
        }
        out
    }

    /// Reinterprets in a ring with more variables appended.
    pub fn embed(&self, ambient: usize) -> PForm {
        let mut out = PForm::zero(ambient, self.degree);
        for (idx, a) in &self.components {
            out.add_component(idx.clone(), a.embed(ambient));
        }
        out
    }

    /// Pullback along the polynomial map `x_i -> images[i]`.
    pub fn pullback(&self, images: &[Polynomial]) -> Result<PForm> {
        if images.len() != self.ambient {
            return shape("pullback: one image per variable required");
        }
        let target = images.first().map_or(0, |p| p.ambient());
        let d_images: Vec<PForm> = images.iter().map(|f| PForm::function(f.clone()).d()).collect();
        let mut out = PForm::zero(target, self.degree);
        for (idx, a) in &self.components {
            let mut acc = PForm::function(a.compose(images)?);
            for &i in idx {
                acc = acc.wedge(&d_images[i])?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> FormDisplay<'a> {
        FormDisplay { form: self, names }
    }
}

impl fmt::Debug for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.ambient);
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct FormDisplay<'a> {
    form: &'a PForm,
    names: &'a [String],
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, a) in &self.form.components {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", self.names[i])).collect();
            if basis.is_empty() {
                write!(f, "{}", a.display_with(self.names))?;
            } else {
                write!(f, "({})*{}", a.display_with(self.names), basis.join("^"))?;
            }
        }
        Ok(())
    }
}

/// `a ^ b`, or the zero form of the overflowing degree when `p_a + p_b`
/// exceeds the ambient dimension.
pub(crate) fn wedge_or_zero(a: &PForm, b: &PForm) -> PForm {
    if a.degree + b.degree > a.ambient {
        PForm::zero(a.ambient, a.degree + b.degree)
    } else {
        a.wedge(b).expect("degrees checked")
    }
}

/// `sum_i v_i d/dx_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Self {
        let m = components.len();
        assert!(components.iter().all(|c| c.ambient() == m), "field ambient");
        VectorField { components }
    }

    pub fn zero(ambient: usize) -> Self {
        VectorField::new(vec![Polynomial::zero(ambient); ambient])
    }

    /// The coordinate field `d/dx_i`.
    pub fn partial(ambient: usize, i: usize) -> Self {
        let mut v = vec![Polynomial::zero(ambient); ambient];
        v[i] = Polynomial::one(ambient);
        VectorField::new(v)
    }

    /// The Euler (radial) field `sum_i x_i d/dx_i`.
    pub fn euler(ambient: usize) -> Self {
        VectorField::new((0..ambient).map(|i| Polynomial::var(ambient, i)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Derivation `f -> sum_i v_i df/dx_i`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.ambient());
        for (i, vi) in self.components.iter().enumerate() {
            if !vi.is_zero() {
                out = &out + &(vi * &f.derivative(i));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField::new(self.components.iter().map(|p| p.scale(c)).collect())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}
