//! Dimensions of line-bundle cohomology on projective space and on
//! hypersurfaces, and the extension predicate built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k)` for `n >= 0`, zero when `k > n`.
fn binomial(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `h^q(P^m, O(d))`.
pub fn pm_line_bundle_cohomology(m: u32, d: i64, q: u32) -> Result<u128> {
    if m == 0 {
        return Err(Error::Domain("projective space of dimension 0".into()));
    }
    let m_ = m as i64;
    Ok(if q == 0 && d >= 0 {
        binomial(m_ + d, m_)
    } else if q == m && d < -m_ {
        binomial(-d - 1, m_)
    } else {
        0
    })
}

/// `h^q(X, O_X(d))` for a hypersurface `X` of degree `deg_x` in `P^m`,
/// read off the restriction sequence `0 -> O(d - deg_x) -> O(d) -> O_X(d) -> 0`.
pub fn hyp_line_bundle_cohomology(m: u32, deg_x: u32, d: i64, q: u32) -> Result<u128> {
    if deg_x == 0 {
        return Err(Error::Domain("hypersurface of degree 0".into()));
    }
    let a = deg_x as i64;
    let h = |e: i64, k: u32| pm_line_bundle_cohomology(m, e, k);
    let mut out = 0;
    if q == 0 {
        out += h(d, 0)? - h(d - a, 0)?;
    }
    if q + 1 == m {
        out += h(d - a, m)? - h(d, m)?;
    }
    Ok(out)
}

pub fn hyp_line_bundle_h1(m: u32, deg_x: u32, d: i64) -> Result<u128> {
    hyp_line_bundle_cohomology(m, deg_x, d, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FigueiraVerdict {
    ExtendsUnobstructed,
    NoConclusion,
}

/// Sufficient condition for a foliation with unobstructed singularities
/// on a hypersurface to extend: `dim_x >= 3`, `deg_x >= 3` and
/// `deg_x > 2 deg_f + 1`.
pub fn figueira_extension_predicate(deg_x: i64, deg_f: i64, dim_x: i64) -> FigueiraVerdict {
    if dim_x >= 3 && deg_x >= 3 && deg_x > 2 * deg_f + 1 {
        FigueiraVerdict::ExtendsUnobstructed
    } else {
        FigueiraVerdict::NoConclusion
    }
}
