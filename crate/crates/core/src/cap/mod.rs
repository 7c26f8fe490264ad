//! Veronesean caps: the data model, axiom verification with witnesses,
//! tangent spaces and the index, the associated projective space, subcaps
//! and the dimension analysis of hyperplane families.

mod analysis;
mod bounds;
mod space;
mod subcap;
mod verify;

pub use analysis::{codim_profile, dual_rnc_hyperplanes, secant_lines, CodimProfile, SecantReport};
pub use bounds::{binom, bounds_check, BoundsReport, Regime};
pub use space::{AbstractSpace, SpaceDefect};
pub use subcap::{subcap, Subcap};
pub use verify::{verify, CapAnalysis, Verdict, VerificationReport, Witness};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gfp::PrimeField;
use crate::projlin::{Matrix, ProjPoint, ProjSubspace};
use crate::rnc::RationalNormalCurve;

/// An element of Ξ: the span of its listed points, and optionally a curve
/// already known to parametrize them.
#[derive(Debug, Clone)]
pub struct RationalSpace {
    subspace: ProjSubspace,
    point_ids: Vec<usize>,
    curve: Option<RationalNormalCurve>,
}

impl RationalSpace {
    pub fn subspace(&self) -> &ProjSubspace {
        &self.subspace
    }

    /// Sorted indices into the cap's point list.
    pub fn point_ids(&self) -> &[usize] {
        &self.point_ids
    }

    pub fn curve(&self) -> Option<&RationalNormalCurve> {
        self.curve.as_ref()
    }
}

/// A candidate Veronesean cap `(X, Ξ)` of degree `d` in ℙ^N.
///
/// Construction only checks that the data is well formed; whether the
/// axioms hold is decided by [`verify`].
#[derive(Debug, Clone)]
pub struct VeroneseanCap {
    field: PrimeField,
    ambient_dim: usize,
    degree: usize,
    n_hint: Option<usize>,
    points: Vec<ProjPoint>,
    spaces: Vec<RationalSpace>,
}

impl VeroneseanCap {
    /// Each entry of `spaces` lists point indices; its subspace is their span.
    pub fn new(
        field: PrimeField,
        ambient_dim: usize,
        degree: usize,
        points: Vec<ProjPoint>,
        spaces: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        for x in &points {
            if x.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: x.ambient_dim(),
                });
            }
            if x.coords().iter().any(|&c| c >= field.modulus()) {
                return Err(Error::InvalidArgument(format!(
                    "point {x:?} has coordinates outside GF({})",
                    field.modulus()
                )));
            }
        }
        let spaces = spaces
            .into_iter()
            .enumerate()
            .map(|(i, mut ids)| {
                ids.sort_unstable();
                ids.dedup();
                if let Some(&bad) = ids.iter().find(|&&id| id >= points.len()) {
                    return Err(Error::InvalidArgument(format!(
                        "rational space {i} refers to point {bad}, but there are {} points",
                        points.len()
                    )));
                }
                let rows: Vec<&[u32]> = ids.iter().map(|&id| points[id].coords()).collect();
                Ok(RationalSpace {
                    subspace: ProjSubspace::from_vectors(field, ambient_dim, &rows)?,
                    point_ids: ids,
                    curve: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VeroneseanCap {
            field,
            ambient_dim,
            degree,
            n_hint: None,
            points,
            spaces,
        })
    }

    /// Attaches known parametrizations; `curves[i]` belongs to space `i`.
    pub(crate) fn with_curves(mut self, curves: Vec<RationalNormalCurve>) -> Self {
        debug_assert_eq!(curves.len(), self.spaces.len());
        for (space, c) in self.spaces.iter_mut().zip(curves) {
            space.curve = Some(c);
        }
        self
    }

    /// Drops attached parametrizations, so verification has to recognize
    /// every curve from its point set.
    pub fn without_curves(mut self) -> Self {
        for space in &mut self.spaces {
            space.curve = None;
        }
        self
    }

    pub fn with_n_hint(mut self, n: Option<usize>) -> Self {
        self.n_hint = n;
        self
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The expected index, if the producer of the cap declared one.
    pub fn n_hint(&self) -> Option<usize> {
        self.n_hint
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn spaces(&self) -> &[RationalSpace] {
        &self.spaces
    }

    /// Map from point to its index. Later duplicates are ignored.
    pub fn point_index(&self) -> HashMap<&ProjPoint, usize> {
        let mut map = HashMap::with_capacity(self.points.len());
        for (i, x) in self.points.iter().enumerate() {
            map.entry(x).or_insert(i);
        }
        map
    }

    /// Point-id lists of all rational spaces.
    pub fn space_point_ids(&self) -> Vec<Vec<usize>> {
        self.spaces.iter().map(|s| s.point_ids.clone()).collect()
    }

    /// Image under an invertible `(N+1) × (N+1)` matrix. Point and space
    /// indices are preserved; parametrizations are dropped.
    pub fn transformed(&self, m: &Matrix) -> Result<Self> {
        if m.rows() != self.ambient_dim + 1
            || m.cols() != self.ambient_dim + 1
            || !m.is_invertible()
        {
            return Err(Error::InvalidArgument(format!(
                "expected an invertible {0}x{0} matrix",
                self.ambient_dim + 1
            )));
        }
        let points = self
            .points
            .iter()
            .map(|x| ProjPoint::new(self.field, m.mul_vec(x.coords())?))
            .collect::<Result<Vec<_>>>()?;
        Ok(VeroneseanCap::new(
            self.field,
            self.ambient_dim,
            self.degree,
            points,
            self.space_point_ids(),
        )?
        .with_n_hint(self.n_hint))
    }
}
