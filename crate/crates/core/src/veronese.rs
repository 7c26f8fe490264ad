//! The d-uple Veronese embedding and the Veronese variety as a cap.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::cap::{bounds_check, Regime, VeroneseanCap};
use crate::error::{Error, Result};
use crate::gfp::PrimeField;
use crate::projlin::{projective_points, subspaces, Matrix, ProjPoint, ProjSubspace};
use crate::rnc::RationalNormalCurve;

/// Degree-`d` monomials in `x_0, …, x_n`, ordered
/// `x_0^d, x_0^{d-1} x_1, …, x_n^d` (exponent vectors in decreasing
/// lexicographic order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    exponents: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Self {
        fn fill(slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if slot + 1 == cur.len() {
                cur[slot] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[slot] = e;
                fill(slot + 1, left - e, cur, out);
            }
        }
        let mut exponents = Vec::new();
        fill(0, d as u32, &mut vec![0; n + 1], &mut exponents);
        MonomialBasis { n, d, exponents }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `C(n+d, d)`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// All monomials evaluated at a coordinate vector.
    pub fn evaluate(&self, field: PrimeField, x: &[u32]) -> Vec<u32> {
        self.exponents
            .iter()
            .map(|e| {
                e.iter()
                    .zip(x)
                    .fold(1, |acc, (&k, &xi)| field.mul(acc, field.pow(xi, k as u64)))
            })
            .collect()
    }

    /// `(C(n+d,d)) × (d+1)` matrix whose column `k` holds the coefficient of
    /// `s^{d-k} t^k` in each monomial of `s·u + t·v`.
    pub fn line_embedding(&self, field: PrimeField, u: &[u32], v: &[u32]) -> Matrix {
        let d = self.d;
        let mut m = Matrix::zeros(field, self.len(), d + 1);
        for (r, e) in self.exponents.iter().enumerate() {
            let mut poly = vec![1u32];
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    let mut next = vec![0u32; poly.len() + 1];
                    for (j, &c) in poly.iter().enumerate() {
                        next[j] = field.mul_add(next[j], c, u[i]);
                        next[j + 1] = field.mul_add(next[j + 1], c, v[i]);
                    }
                    poly = next;
                }
            }
            for (k, &c) in poly.iter().enumerate() {
                m.set(r, k, c);
            }
        }
        m
    }
}

/// `φ_{n,d}(x)`.
pub fn veronese_map(field: PrimeField, basis: &MonomialBasis, x: &ProjPoint) -> Result<ProjPoint> {
    if x.ambient_dim() != basis.n {
        return Err(Error::DimensionMismatch {
            expected: basis.n,
            found: x.ambient_dim(),
        });
    }
    ProjPoint::new(field, basis.evaluate(field, x.coords()))
}

/// Span of the image of a line of ℙ^n.
pub fn image_of_line(
    field: PrimeField,
    basis: &MonomialBasis,
    line: &ProjSubspace,
) -> Result<ProjSubspace> {
    Ok(line_curve(field, basis, line)?.ambient().clone())
}

/// The image of a line of ℙ^n, parametrized by `t ↦ φ(u + t·v)`, `∞ ↦ φ(v)`
/// where `u, v` are the echelon basis rows of `line`.
pub fn line_curve(
    field: PrimeField,
    basis: &MonomialBasis,
    line: &ProjSubspace,
) -> Result<RationalNormalCurve> {
    if line.dim() != 1 {
        return Err(Error::InvalidArgument(format!(
            "expected a line, got dimension {}",
            line.dim()
        )));
    }
    if line.ambient_dim() != basis.n {
        return Err(Error::DimensionMismatch {
            expected: basis.n,
            found: line.ambient_dim(),
        });
    }
    let emb = basis.line_embedding(field, line.basis().row(0), line.basis().row(1));
    RationalNormalCurve::from_embedding(field, emb)
}

/// A generated Veronese variety with the data behind it.
#[derive(Debug, Clone)]
pub struct VeroneseVariety {
    pub cap: VeroneseanCap,
    pub basis: MonomialBasis,
    /// `preimages[i]` is the point of ℙ^n mapped to cap point `i`.
    pub preimages: Vec<ProjPoint>,
    /// `lines[j]` is the line of ℙ^n whose image spans rational space `j`.
    pub lines: Vec<ProjSubspace>,
    pub regime: Regime,
}

/// Builds `𝒱 = (X, Ξ)` for `φ_{n,d}` over GF(p). Point `i` is the image of
/// the `i`-th point of ℙ^n in canonical order; rational spaces follow the
/// canonical order of lines.
pub fn generate(n: usize, d: usize, p: u64) -> Result<VeroneseVariety> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and d >= 2, got n = {n}, d = {d}"
        )));
    }
    let field = PrimeField::new(p)?;
    let bounds = bounds_check(n, d, p)?;
    if bounds.regime == Regime::Unsupported {
        return Err(Error::FieldTooSmall {
            p: field.modulus(),
            degree: d,
            reason: "neither the main nor the refined field-size bounds hold",
        });
    }
    let basis = MonomialBasis::new(n, d);
    let preimages = projective_points(field, n);
    let points: Vec<ProjPoint> = preimages
        .iter()
        .map(|x| veronese_map(field, &basis, x))
        .collect::<Result<_>>()?;
    let index: HashMap<&ProjPoint, usize> =
        points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let lines = subspaces(field, n, 2);
    let curves: Vec<RationalNormalCurve> = lines
        .par_iter()
        .map(|l| line_curve(field, &basis, l))
        .collect::<Result<_>>()?;
    let ids: Vec<Vec<usize>> = curves
        .iter()
        .map(|c| c.points().iter().map(|(_, x)| index[x]).collect())
        .collect();
    let cap = VeroneseanCap::new(field, basis.len() - 1, d, points.clone(), ids)?
        .with_curves(curves)
        .with_n_hint(Some(n));
    Ok(VeroneseVariety {
        cap,
        basis,
        preimages,
        lines,
        regime: bounds.regime,
    })
}

/// The Veronese variety as a cap; see [`generate`].
pub fn build_variety(n: usize, d: usize, p: u64) -> Result<VeroneseanCap> {
    Ok(generate(n, d, p)?.cap)
}
