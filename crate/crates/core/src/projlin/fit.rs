use super::matrix::Matrix;
use super::subspace::ProjPoint;
use crate::error::{Error, Result};
use crate::gfp::PrimeField;

/// Outcome of fitting a projective map to point correspondences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectiveFit {
    /// Exactly one matrix up to scalar, mapping every source point to a
    /// nonzero multiple of its target.
    Unique(Matrix),
    /// The solution space has positive projective dimension; `basis` spans
    /// it (each entry a candidate matrix).
    Underdetermined {
        solution_dim: usize,
        basis: Vec<Matrix>,
    },
    /// Only the zero map, or maps sending some source point to zero.
    Infeasible,
}

impl ProjectiveFit {
    /// The unique matrix, if any.
    pub fn unique(self) -> Option<Matrix> {
        match self {
            ProjectiveFit::Unique(m) => Some(m),
            _ => None,
        }
    }
}

/// Solves `A · x_i = λ_i · y_i` for a `(dst+1) × (src+1)` matrix `A` and
/// scalars `λ_i`, as one homogeneous system in the entries of `A` and the
/// `λ_i`.
pub fn fit_projective_map(
    field: PrimeField,
    pairs: &[(ProjPoint, ProjPoint)],
    src_dim: usize,
    dst_dim: usize,
) -> Result<ProjectiveFit> {
    if pairs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two correspondences, got {}",
            pairs.len()
        )));
    }
    for (x, y) in pairs {
        if x.ambient_dim() != src_dim {
            return Err(Error::DimensionMismatch {
                expected: src_dim,
                found: x.ambient_dim(),
            });
        }
        if y.ambient_dim() != dst_dim {
            return Err(Error::DimensionMismatch {
                expected: dst_dim,
                found: y.ambient_dim(),
            });
        }
    }
    let (m, k) = (dst_dim + 1, src_dim + 1);
    let unknowns = m * k + pairs.len();
    let mut system = Matrix::zeros(field, m * pairs.len(), unknowns);
    for (i, (x, y)) in pairs.iter().enumerate() {
        for r in 0..m {
            let eq = i * m + r;
            for (c, &xc) in x.coords().iter().enumerate() {
                system.set(eq, r * k + c, xc);
            }
            system.set(eq, m * k + i, field.neg(y.coords()[r]));
        }
    }
    let kernel = system.kernel();
    let to_matrix = |v: &[u32]| Matrix::new(field, m, k, v[..m * k].to_vec()).expect("sized");
    match kernel.len() {
        0 => Ok(ProjectiveFit::Infeasible),
        1 => {
            let v = &kernel[0];
            if v[m * k..].contains(&0) {
                return Ok(ProjectiveFit::Infeasible);
            }
            Ok(ProjectiveFit::Unique(to_matrix(v)))
        }
        n => Ok(ProjectiveFit::Underdetermined {
            solution_dim: n - 1,
            basis: kernel.iter().map(|v| to_matrix(v)).collect(),
        }),
    }
}
