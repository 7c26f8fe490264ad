//! Exact linear algebra over GF(p) and the projective-subspace calculus:
//! spans, intersections, projections and fitting projective maps.

mod fit;
mod matrix;
mod projection;
mod subspace;

pub use fit::{fit_projective_map, ProjectiveFit};
pub use matrix::Matrix;
pub use projection::{project_from, Projection};
pub use subspace::{
    point_count, projective_points, span, subspaces, Operand, ProjPoint, ProjSubspace,
};
