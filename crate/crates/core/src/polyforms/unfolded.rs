//! One-forms over `k[x][t]/(t^{n+1})` with an explicit `dt` part.

use super::forms::{wedge_or_zero, PForm};
use super::poly::{rat, Polynomial};
use crate::error::{shape, Result};

/// `sum_{k=0}^n t^k eta_k + (sum_{k=1}^n h_k t^{k-1}) dt` modulo `t^{n+1}`.
///
/// The `dt` part stops at `t^{n-1}` because `t^n dt = d(t^{n+1})/(n+1)`
/// vanishes in the truncated ring. An order-0 object is just `omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldedForm {
    ambient: usize,
    eta: Vec<PForm>,
    h: Vec<Polynomial>,
}

/// The two layers of `w ^ dw`, indexed by the power of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeLayers {
    /// 3-forms in `x` only, `t^0 .. t^n`.
    pub three: Vec<PForm>,
    /// 2-forms multiplying `dt`, `t^0 .. t^{n-1}`.
    pub dt: Vec<PForm>,
}

impl WedgeLayers {
    pub fn is_zero(&self) -> bool {
        self.three.iter().chain(&self.dt).all(PForm::is_zero)
    }
}

impl UnfoldedForm {
    /// `eta = [eta_0, .., eta_n]`, `h = [h_1, .., h_n]`.
    pub fn new(eta: Vec<PForm>, h: Vec<Polynomial>) -> Result<Self> {
        let Some(base) = eta.first() else {
            return shape("unfolded form needs a t^0 layer");
        };
        let m = base.ambient();
        if eta.len() != h.len() + 1 {
            return shape(format!("{} eta layers but {} h layers", eta.len(), h.len()));
        }
        if eta.iter().any(|e| e.ambient() != m || e.degree() != 1) {
            return shape("eta layers must be 1-forms on a common ambient");
        }
        if h.iter().any(|p| p.ambient() != m) {
            return shape("h layers must live on the common ambient");
        }
        Ok(UnfoldedForm { ambient: m, eta, h })
    }

    /// `omega` with all higher layers zero.
    pub fn trivial(omega: &PForm, order: usize) -> Self {
        let m = omega.ambient();
        let mut eta = vec![omega.clone()];
        eta.extend((0..order).map(|_| PForm::zero(m, 1)));
        UnfoldedForm {
            ambient: m,
            eta,
            h: vec![Polynomial::zero(m); order],
        }
    }

    /// `d(sum_k t^k f_k)` for `f = [f_0, .., f_n]`.
    pub fn exact(f: &[Polynomial]) -> Result<Self> {
        if f.is_empty() {
            return shape("exact unfolding needs f_0");
        }
        let eta = f.iter().map(|fk| PForm::function(fk.clone()).d()).collect();
        let h = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, fk)| fk.scale(&rat(k as i64)))
            .collect();
        UnfoldedForm::new(eta, h)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn order(&self) -> usize {
        self.h.len()
    }

    pub fn base(&self) -> &PForm {
        &self.eta[0]
    }

    /// `eta_k`, `0 <= k <= n`.
    pub fn eta(&self, k: usize) -> &PForm {
        &self.eta[k]
    }

    /// `h_k`, `1 <= k <= n`.
    pub fn h(&self, k: usize) -> &Polynomial {
        &self.h[k - 1]
    }

    pub fn etas(&self) -> &[PForm] {
        &self.eta
    }

    pub fn hs(&self) -> &[Polynomial] {
        &self.h
    }

    /// Reduction modulo `t^{n'+1}`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return shape("truncate: order exceeds current order");
        }
        Ok(UnfoldedForm {
            ambient: self.ambient,
            eta: self.eta[..=order].to_vec(),
            h: self.h[..order].to_vec(),
        })
    }

    /// Appends the layer `(eta_{n+1}, h_{n+1})`.
    pub fn extend(&self, eta: PForm, h: Polynomial) -> Result<Self> {
        let mut e = self.eta.clone();
        let mut hs = self.h.clone();
        e.push(eta);
        hs.push(h);
        UnfoldedForm::new(e, hs)
    }

    /// As a 1-form on `m + 1` variables with `t = x_m`, in the canonical
    /// truncated representative.
    pub fn to_total(&self) -> PForm {
        let m = self.ambient;
        let t = Polynomial::var(m + 1, m);
        let mut out = PForm::zero(m + 1, 1);
        for (k, e) in self.eta.iter().enumerate() {
            out = out.add(&e.embed(m + 1).mul_poly(&t.pow(k as u32)));
        }
        let mut b = Polynomial::zero(m + 1);
        for (k, hk) in self.h.iter().enumerate() {
            b = &b + &(&hk.embed(m + 1) * &t.pow(k as u32));
        }
        let dt = PForm::dx(m + 1, m);
        out.add(&dt.mul_poly(&b))
    }

    /// Inverse of [`to_total`](Self::to_total), discarding every term that
    /// vanishes modulo `(t^{n+1}, t^n dt)`.
    pub fn from_total(total: &PForm, order: usize) -> Result<Self> {
        if total.degree() != 1 || total.ambient() < 2 {
            return shape("from_total: expected a 1-form with a t variable");
        }
        let m = total.ambient() - 1;
        let mut eta = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let coeffs = (0..m)
                .map(|i| total.component(&[i]).coefficient_in(m, k as u32).restrict(m))
                .collect::<Result<Vec<_>>>()?;
            eta.push(PForm::one_form(coeffs));
        }
        let b = total.component(&[m]);
        let h = (1..=order)
            .map(|k| b.coefficient_in(m, (k - 1) as u32).restrict(m))
            .collect::<Result<Vec<_>>>()?;
        UnfoldedForm::new(eta, h)
    }

    /// Product with `sum_j c_j t^j`, `c = [c_0, c_1, ..]`, truncated.
    pub fn truncated_multiply(&self, c: &[Polynomial]) -> Result<Self> {
        if c.iter().any(|p| p.ambient() != self.ambient) {
            return shape("truncated_multiply: scalar ambient mismatch");
        }
        let n = self.order();
        let m = self.ambient;
        let mut eta = vec![PForm::zero(m, 1); n + 1];
        let mut h = vec![Polynomial::zero(m); n];
        for (j, cj) in c.iter().enumerate() {
            for k in 0..=n {
                if j + k <= n {
                    eta[j + k] = eta[j + k].add(&self.eta[k].mul_poly(cj));
                }
                if k >= 1 && j + k <= n {
                    h[j + k - 1] = &h[j + k - 1] + &(cj * &self.h[k - 1]);
                }
            }
        }
        UnfoldedForm::new(eta, h)
    }

    /// Pullback along `x -> x + t^n v` (and `t -> t`), truncated. At order
    /// exactly `n` this adds `t^n L_v(omega)` and `n t^{n-1} omega(v) dt`.
    pub fn pullback_shift(&self, v: &[Polynomial], n: usize) -> Result<Self> {
        let m = self.ambient;
        if v.len() != m || v.iter().any(|p| p.ambient() != m) {
            return shape("pullback_shift: field ambient mismatch");
        }
        if n == 0 {
            return shape("pullback_shift: shift order must be positive");
        }
        let order = self.order();
        let t = Polynomial::var(m + 1, m);
        let tn = t.pow(n as u32);
        let mut images: Vec<Polynomial> = (0..m)
            .map(|i| &Polynomial::var(m + 1, i) + &(&v[i].embed(m + 1) * &tn))
            .collect();
        images.push(t);
        let total = self.to_total();
        let pulled = total.pullback(&images)?;
        let cut = pulled.map_coefficients(|p| p.truncate_in(m, order as u32));
        UnfoldedForm::from_total(&cut, order)
    }

    /// Layers of `w ^ dw` for `w = A + B dt`:
    /// `A ^ d_x A + [B d_x A + A ^ (d_x B - A_t)] ^ dt`.
    pub fn wedge_d(&self) -> WedgeLayers {
        let n = self.order();
        let m = self.ambient;
        let d_eta: Vec<PForm> = self.eta.iter().map(PForm::d).collect();
        let d_h: Vec<PForm> = self.h.iter().map(|h| PForm::function(h.clone()).d()).collect();
        let mut three = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut acc = PForm::zero(m, 3);
            for a in 0..=j {
                acc = acc.add(&wedge_or_zero(&self.eta[a], &d_eta[j - a]));
            }
            three.push(acc);
        }
        let mut dt = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = PForm::zero(m, 2);
            for a in 0..=j {
                // h_{a+1} d eta_{j-a} and eta_a ^ d h_{j-a+1}
                acc = acc.add(&d_eta[j - a].mul_poly(&self.h[a]));
                acc = acc.add(&wedge_or_zero(&self.eta[a], &d_h[j - a]));
            }
            for a in 0..=j {
                let c = j + 1 - a;
                if c <= n {
                    let term = wedge_or_zero(&self.eta[a], &self.eta[c]).scale(&rat(c as i64));
                    acc = acc.sub(&term);
                }
            }
            dt.push(acc);
        }
        WedgeLayers { three, dt }
    }

    /// Whether `w ^ dw` vanishes modulo `t^{n+1}`.
    pub fn is_integrable(&self) -> bool {
        self.wedge_d().is_zero()
    }
}
