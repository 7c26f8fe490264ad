use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::collineation::Collineation;
use super::coordinatize::Coordinatization;
use crate::cap::{dual_rnc_hyperplanes, VeroneseanCap};
use crate::gfp::ProjParam;
use crate::projlin::{fit_projective_map, Matrix, ProjPoint, ProjSubspace, ProjectiveFit};
use crate::veronese::{veronese_map, MonomialBasis};

/// Attempts made by the randomized frame search.
pub const RANDOM_FRAME_ATTEMPTS: usize = 100;

/// How the `M + 1` frame points of the lift are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameStrategy {
    /// Prefer points on a family of `d + 1` hyperplanes dual to a rational
    /// normal curve; fall back to random frames drawn from `fallback_seed`.
    Structured {
        fallback_seed: u64,
    },
    Random {
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LiftFailure {
    AmbientDimension {
        expected: usize,
        found: usize,
    },
    NoFrame {
        attempts: usize,
    },
    Infeasible {
        frame: Vec<usize>,
    },
    /// The fitted map sends this point somewhere other than its target.
    Mismatch {
        point: usize,
    },
}

/// A collineation carrying the cap onto the standard Veronese variety,
/// with the frame it was fitted on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub collineation: Collineation,
    pub frame: Vec<usize>,
}

/// Fits a collineation `A` with `A·x ∝ φ(coord(x))` for every cap point
/// `x`, where `φ` is the Veronese map of degree `d`.
pub fn lift_collineation(
    cap: &VeroneseanCap,
    coord: &Coordinatization,
    strategy: FrameStrategy,
) -> Result<Lift, LiftFailure> {
    let field = cap.field();
    let basis = MonomialBasis::new(coord.dim(), cap.degree());
    let m = basis.len();
    if cap.ambient_dim() + 1 != m {
        return Err(LiftFailure::AmbientDimension {
            expected: m - 1,
            found: cap.ambient_dim(),
        });
    }
    let targets: Vec<ProjPoint> = (0..cap.points().len())
        .map(|i| veronese_map(field, &basis, coord.image(i)).expect("matching dimension"))
        .collect();
    let (a, frame) = if m == 1 {
        (Matrix::identity(field, 1), vec![0])
    } else {
        let frame = select_frame(cap, coord, strategy).ok_or(LiftFailure::NoFrame {
            attempts: RANDOM_FRAME_ATTEMPTS,
        })?;
        let pairs: Vec<(ProjPoint, ProjPoint)> = frame
            .iter()
            .map(|&i| (cap.points()[i].clone(), targets[i].clone()))
            .collect();
        match fit_projective_map(field, &pairs, m - 1, m - 1) {
            Ok(ProjectiveFit::Unique(a)) if a.is_invertible() => (a, frame),
            _ => return Err(LiftFailure::Infeasible { frame }),
        }
    };
    for (i, x) in cap.points().iter().enumerate() {
        let img = ProjPoint::new(field, a.mul_vec(x.coords()).expect("sized"));
        if img.as_ref() != Ok(&targets[i]) {
            return Err(LiftFailure::Mismatch { point: i });
        }
    }
    Ok(Lift {
        collineation: Collineation::new(a).expect("invertible"),
        frame,
    })
}

fn select_frame(
    cap: &VeroneseanCap,
    coord: &Coordinatization,
    strategy: FrameStrategy,
) -> Option<Vec<usize>> {
    let np = cap.points().len();
    let seed = match strategy {
        FrameStrategy::Structured { fallback_seed } => {
            let params: Vec<ProjParam> =
                ProjParam::all(cap.field()).take(cap.degree() + 1).collect();
            let mut order: Vec<usize> = dual_rnc_hyperplanes(cap.field(), coord.images(), &params)
                .into_iter()
                .flatten()
                .collect();
            order.sort_unstable();
            order.dedup();
            let on: Vec<bool> = (0..np).map(|i| order.binary_search(&i).is_ok()).collect();
            order.extend((0..np).filter(|&i| !on[i]));
            if let Some(frame) = frame_from_order(cap, &order) {
                return Some(frame);
            }
            fallback_seed
        }
        FrameStrategy::Random { seed } => seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..np).collect();
    (0..RANDOM_FRAME_ATTEMPTS).find_map(|_| {
        order.shuffle(&mut rng);
        frame_from_order(cap, &order)
    })
}

// Greedy basis in the given order, then the first point with all
// coordinates nonzero in that basis.
fn frame_from_order(cap: &VeroneseanCap, order: &[usize]) -> Option<Vec<usize>> {
    let field = cap.field();
    let k = cap.ambient_dim() + 1;
    let mut frame = Vec::with_capacity(k + 1);
    let mut span = ProjSubspace::empty(field, cap.ambient_dim());
    for &i in order {
        let x = &cap.points()[i];
        if !span.contains_point(x) {
            span = span.join_point(x).expect("sized");
            frame.push(i);
            if frame.len() == k {
                break;
            }
        }
    }
    if frame.len() < k {
        return None;
    }
    let rows: Vec<&[u32]> = frame.iter().map(|&i| cap.points()[i].coords()).collect();
    let inv = Matrix::from_rows(field, k, &rows)
        .expect("sized")
        .inverse()?;
    let unit = order.iter().copied().find(|i| {
        !frame.contains(i)
            && inv
                .vec_mul(cap.points()[*i].coords())
                .expect("sized")
                .iter()
                .all(|&c| c != 0)
    })?;
    frame.push(unit);
    Some(frame)
}
