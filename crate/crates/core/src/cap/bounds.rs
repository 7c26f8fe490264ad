use serde::Serialize;

use crate::error::{Error, Result};

/// Which field-size hypothesis covers `(n, d, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `p² ≥ d³`.
    Main,
    /// The main bound fails, but `p ≥ d + 2` (for `d ≠ 2`) and the counting
    /// inequality both hold.
    Refined,
    Unsupported,
}

/// One integer comparison `lhs ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

impl Comparison {
    fn new(lhs: i128, rhs: i128) -> Self {
        Comparison {
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    /// `p² ≥ d³`.
    pub main: Comparison,
    /// `p ≥ d + 2`; vacuous (`None`) when `d = 2`.
    pub refined: Option<Comparison>,
    /// `(p^n − 1)/(p − 1) ≥ 2 + Σ_{i=2}^{min(n−1,d)} (−1)^i C(d+1, i+1) (p^{n−i} − 1)/(p − 1)`.
    pub inequality: Comparison,
    pub regime: Regime,
}

/// `C(k, r)`, zero when `r < 0` or `r > k`.
pub fn binom(k: i64, r: i64) -> i128 {
    if r < 0 || k < 0 || r > k {
        return 0;
    }
    let r = r.min(k - r);
    let mut acc: i128 = 1;
    for i in 0..r {
        acc = acc * (k - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn checked_binom(k: i64, r: i64) -> Result<i128> {
    if r < 0 || k < 0 || r > k {
        return Ok(0);
    }
    let r = r.min(k - r);
    let mut acc: i128 = 1;
    for i in 0..r {
        acc = acc
            .checked_mul((k - i) as i128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i + 1) as i128;
    }
    Ok(acc)
}

/// `(p^m − 1)/(p − 1)`, the number of points of ℙ^{m−1}(GF(p)).
fn gaussian(p: i128, m: u32) -> Result<i128> {
    let mut acc: i128 = 0;
    let mut pow: i128 = 1;
    for _ in 0..m {
        acc = acc.checked_add(pow).ok_or(Error::Overflow("point count"))?;
        pow = pow.checked_mul(p).ok_or(Error::Overflow("point count"))?;
    }
    Ok(acc)
}

/// Evaluates the field-size bounds with exact integer arithmetic.
pub fn bounds_check(n: usize, d: usize, p: u64) -> Result<BoundsReport> {
    let pi = p as i128;
    let di = d as i128;
    let d3 = di
        .checked_mul(di)
        .and_then(|x| x.checked_mul(di))
        .ok_or(Error::Overflow("d^3"))?;
    let main = Comparison::new(pi * pi, d3);
    let refined = (d != 2).then(|| Comparison::new(pi, di + 2));

    let n32 = u32::try_from(n).map_err(|_| Error::Overflow("n"))?;
    let lhs = gaussian(pi, n32)?;
    let mut rhs: i128 = 2;
    for i in 2..=(n.saturating_sub(1)).min(d) {
        let term = checked_binom(d as i64 + 1, i as i64 + 1)?
            .checked_mul(gaussian(pi, n32 - i as u32)?)
            .ok_or(Error::Overflow("inclusion-exclusion sum"))?;
        rhs = if i % 2 == 0 {
            rhs.checked_add(term)
        } else {
            rhs.checked_sub(term)
        }
        .ok_or(Error::Overflow("inclusion-exclusion sum"))?;
    }
    let inequality = Comparison::new(lhs, rhs);

    let regime = if main.holds {
        Regime::Main
    } else if refined.as_ref().is_none_or(|c| c.holds) && inequality.holds {
        Regime::Refined
    } else {
        Regime::Unsupported
    };
    Ok(BoundsReport {
        n,
        d,
        p,
        main,
        refined,
        inequality,
        regime,
    })
}
