use super::space::AbstractSpace;
use super::VeroneseanCap;
use crate::error::{Error, Result};
use crate::projlin::{ProjPoint, ProjSubspace};

/// The cap induced on a subspace of the associated space, expressed in
/// coordinates of the span of its points.
#[derive(Debug, Clone)]
pub struct Subcap {
    pub cap: VeroneseanCap,
    /// Parent index of each subcap point.
    pub parent_points: Vec<usize>,
    /// Parent index of each subcap rational space.
    pub parent_spaces: Vec<usize>,
    /// Span of the subcap points in the parent ambient.
    pub ambient: ProjSubspace,
}

/// Restricts `cap` to the points of `pi_bar`, a subspace of its associated
/// space `space`; keeps the rational spaces whose curves lie inside.
pub fn subcap(cap: &VeroneseanCap, space: &AbstractSpace, pi_bar: &[usize]) -> Result<Subcap> {
    let mut pts: Vec<usize> = pi_bar.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.is_empty() {
        return Err(Error::InvalidArgument("empty point set".into()));
    }
    if space.num_points() != cap.points().len() || !space.is_subspace(&pts) {
        return Err(Error::NotASubspace);
    }
    let field = cap.field();
    let rows: Vec<&[u32]> = pts.iter().map(|&i| cap.points()[i].coords()).collect();
    let ambient = ProjSubspace::from_vectors(field, cap.ambient_dim(), &rows)?;
    let local_dim = ambient.rank() - 1;
    let points = pts
        .iter()
        .map(|&i| {
            ProjPoint::new(
                field,
                ambient
                    .coordinates(cap.points()[i].coords())
                    .expect("in span"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut parent_spaces = Vec::new();
    let mut spaces = Vec::new();
    for (s, rs) in cap.spaces().iter().enumerate() {
        let local: Option<Vec<usize>> = rs
            .point_ids()
            .iter()
            .map(|id| pts.binary_search(id).ok())
            .collect();
        if let Some(ids) = local {
            parent_spaces.push(s);
            spaces.push(ids);
        }
    }
    let n = space.span_dimension(&pts).max(0) as usize;
    let sub =
        VeroneseanCap::new(field, local_dim, cap.degree(), points, spaces)?.with_n_hint(Some(n));
    Ok(Subcap {
        cap: sub,
        parent_points: pts,
        parent_spaces,
        ambient,
    })
}
