use serde::Serialize;

use crate::cap::CapAnalysis;
use crate::error::{Error, Result};
use crate::gfp::{crossratio_homogeneous, ProjParam};
use crate::projlin::{fit_projective_map, ProjPoint, ProjSubspace, ProjectiveFit};

fn tangent_at(an: &CapAnalysis<'_>, space: usize, x: usize) -> Result<ProjSubspace> {
    an.tangent_line(space, x).cloned().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "space {space} does not pass through point {x}, or curves are not recognized"
        ))
    })
}

/// Some line of `plane` missing `x`: join a point of `a` and a point of `b`
/// other than `x`.
fn auxiliary_line(a: &ProjSubspace, b: &ProjSubspace, x: &ProjPoint) -> Result<ProjSubspace> {
    let pick = |l: &ProjSubspace| {
        l.points()
            .into_iter()
            .find(|z| z != x)
            .expect("a line has two points")
    };
    let (u, v) = (pick(a), pick(b));
    ProjSubspace::from_points(a.field(), a.ambient_dim(), &[&u, &v])
}

/// Homogeneous coordinates of `line ∩ aux` with respect to `aux`'s basis.
fn trace(line: &ProjSubspace, aux: &ProjSubspace) -> Result<[u32; 2]> {
    let meet = line.intersect(aux)?;
    if meet.dim() != 0 {
        return Err(Error::InvalidArgument(
            "auxiliary line must meet each pencil line in one point".into(),
        ));
    }
    let c = aux.coordinates(meet.basis().row(0)).expect("inside aux");
    Ok([c[0], c[1]])
}

/// Cross-ratio of the pencil formed by the tangent lines at `x` to four
/// rational spaces through `x`, read off on the line `aux`.
pub fn pencil_crossratio_with(
    an: &CapAnalysis<'_>,
    x: usize,
    spaces: [usize; 4],
    aux: &ProjSubspace,
) -> Result<ProjParam> {
    let cap = an.cap();
    let xp = &cap.points()[x];
    let lines = spaces.map(|s| tangent_at(an, s, x));
    let mut ts = Vec::with_capacity(4);
    for l in lines {
        ts.push(l?);
    }
    let plane = ts[1..]
        .iter()
        .try_fold(ts[0].clone(), |acc, t| acc.join(t))?;
    if plane.dim() != 2 {
        return Err(Error::Invariant(format!(
            "tangent lines at point {x} span dimension {}",
            plane.dim()
        )));
    }
    if aux.dim() != 1 || !plane.contains(aux) || aux.contains_point(xp) {
        return Err(Error::InvalidArgument(
            "auxiliary line must lie in the tangent plane and miss the point".into(),
        ));
    }
    let mut h = [[0u32; 2]; 4];
    for (slot, t) in h.iter_mut().zip(&ts) {
        *slot = trace(t, aux)?;
    }
    crossratio_homogeneous(cap.field(), h)
}

/// [`pencil_crossratio_with`] on a default auxiliary line.
pub fn pencil_crossratio(an: &CapAnalysis<'_>, x: usize, spaces: [usize; 4]) -> Result<ProjParam> {
    let a = tangent_at(an, spaces[0], x)?;
    let b = tangent_at(an, spaces[1], x)?;
    if a == b {
        return Err(Error::RepeatedParameter);
    }
    let aux = auxiliary_line(&a, &b, &an.cap().points()[x])?;
    pencil_crossratio_with(an, x, spaces, &aux)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TangentMapError {
    InvalidAnchor {
        index: usize,
        reason: String,
    },
    /// The cross-ratio-preserving extension disagrees with the cap's
    /// tangent line at this curve point.
    Inconsistent {
        point: usize,
    },
}

/// Extends three anchors `(y, T_x([x, y]))` with `y` on the curve of
/// `space` to the unique cross-ratio-preserving map from the curve to the
/// pencil of lines through `x` in `T(x, ξ)`, and checks it against the
/// cap's own tangent lines.
pub fn reconstruct_tangent_map(
    an: &CapAnalysis<'_>,
    x: usize,
    space: usize,
    anchors: &[(usize, ProjSubspace); 3],
) -> std::result::Result<Vec<(usize, ProjSubspace)>, TangentMapError> {
    let cap = an.cap();
    let field = cap.field();
    let bad = |index: usize, reason: &str| TangentMapError::InvalidAnchor {
        index,
        reason: reason.to_string(),
    };
    let plane = an
        .tangent_plane(x, space)
        .map_err(|e| bad(0, &e.to_string()))?;
    let curve = an
        .curve(space)
        .ok_or_else(|| bad(0, "curves are not recognized"))?;
    let xp = &cap.points()[x];
    let aux =
        auxiliary_line(&anchors[0].1, &anchors[1].1, xp).map_err(|e| bad(0, &e.to_string()))?;
    let mut pairs = Vec::with_capacity(3);
    for (i, (y, line)) in anchors.iter().enumerate() {
        if line.dim() != 1 || !line.contains_point(xp) || !plane.contains(line) {
            return Err(bad(
                i,
                "not a line through the point inside the tangent plane",
            ));
        }
        let t = curve
            .param_of(&cap.points()[*y])
            .ok_or_else(|| bad(i, "anchor point is not on the curve"))?;
        let src = ProjPoint::new(field, t.homogeneous(field).to_vec()).expect("nonzero");
        let dst = ProjPoint::new(
            field,
            trace(line, &aux)
                .map_err(|e| bad(i, &e.to_string()))?
                .to_vec(),
        )
        .expect("nonzero");
        pairs.push((src, dst));
    }
    let mobius = match fit_projective_map(field, &pairs, 1, 1) {
        Ok(ProjectiveFit::Unique(m)) if m.is_invertible() => m,
        _ => return Err(bad(0, "anchors repeat a point or a line")),
    };
    let mut out = Vec::with_capacity(cap.spaces()[space].point_ids().len());
    for &y in cap.spaces()[space].point_ids() {
        let t = curve.param_of(&cap.points()[y]).expect("curve point");
        let h = mobius.mul_vec(&t.homogeneous(field)).expect("sized");
        let q = aux.combine(&h).expect("sized");
        let q = ProjPoint::new(field, q).expect("invertible map");
        let line = ProjSubspace::from_points(field, cap.ambient_dim(), &[xp, &q]).expect("sized");
        let zeta = an.space_through(x, y).expect("(V1) table");
        if an.tangent_line(zeta, x) != Some(&line) {
            return Err(TangentMapError::Inconsistent { point: y });
        }
        out.push((y, line));
    }
    Ok(out)
}
