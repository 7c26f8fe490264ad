#![allow(dead_code)]

use std::collections::HashSet;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use veronese_core::cap::CapAnalysis;
use veronese_core::classify::{pencil_crossratio, reconstruct_tangent_map};
use veronese_core::projlin::{subspaces, Projection};
use veronese_core::veronese::image_of_line;
use veronese_core::{
    crossratio_params, recognize_rnc, veronese_map, Collineation, MonomialBasis, PrimeField,
    ProjParam, ProjPoint, ProjSubspace, RationalNormalCurve, VeroneseanCap,
};

/// The image of `cap` under a random collineation drawn from `seed`.
pub fn scramble(cap: &VeroneseanCap, seed: u64) -> (VeroneseanCap, Collineation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = Collineation::random(cap.field(), cap.ambient_dim(), &mut rng);
    (cap.transformed(b.matrix()).unwrap(), b)
}

/// Whether `g` permutes the point set of `cap` and its rational spaces.
pub fn stabilizes(g: &Collineation, cap: &VeroneseanCap) -> bool {
    let index = cap.point_index();
    let spaces: HashSet<Vec<usize>> = cap.space_point_ids().into_iter().collect();
    let mut image = Vec::with_capacity(cap.points().len());
    for x in cap.points() {
        match index.get(&g.apply(x).unwrap()) {
            Some(&i) => image.push(i),
            None => return false,
        }
    }
    cap.space_point_ids().iter().all(|ids| {
        let mut mapped: Vec<usize> = ids.iter().map(|&i| image[i]).collect();
        mapped.sort_unstable();
        spaces.contains(&mapped)
    })
}

/// `cap` with point `i` replaced by `to`.
pub fn move_point(cap: &VeroneseanCap, i: usize, to: ProjPoint) -> VeroneseanCap {
    let mut pts = cap.points().to_vec();
    pts[i] = to;
    VeroneseanCap::new(
        cap.field(),
        cap.ambient_dim(),
        cap.degree(),
        pts,
        cap.space_point_ids(),
    )
    .unwrap()
    .with_n_hint(cap.n_hint())
}

/// `cap` with the given rational spaces.
pub fn with_spaces(cap: &VeroneseanCap, spaces: Vec<Vec<usize>>) -> VeroneseanCap {
    VeroneseanCap::new(
        cap.field(),
        cap.ambient_dim(),
        cap.degree(),
        cap.points().to_vec(),
        spaces,
    )
    .unwrap()
    .with_n_hint(cap.n_hint())
}

/// Every 4-subset of the pencil of rational spaces through each point
/// against every transversal space: the pencil cross-ratio equals the
/// cross-ratio of the four meeting points on the transversal's curve.
/// Returns the number of comparisons.
pub fn pencil_matches_transversals(an: &CapAnalysis<'_>) -> usize {
    let cap = an.cap();
    let ids = cap.space_point_ids();
    let mut count = 0;
    for x in 0..cap.points().len() {
        for q in an.spaces_through(x).iter().copied().combinations(4) {
            let pencil = pencil_crossratio(an, x, [q[0], q[1], q[2], q[3]]).unwrap();
            for (t, line) in ids.iter().enumerate() {
                if line.contains(&x) {
                    continue;
                }
                let y: Vec<&ProjPoint> = q
                    .iter()
                    .map(|&s| &cap.points()[*ids[s].iter().find(|i| line.contains(i)).unwrap()])
                    .collect();
                let on_curve = an
                    .curve(t)
                    .unwrap()
                    .crossratio_points([y[0], y[1], y[2], y[3]])
                    .unwrap();
                assert_eq!(pencil, on_curve, "x={x} spaces={q:?} transversal={t}");
                count += 1;
            }
        }
    }
    count
}

/// The map `y ↦ T_x([x, y])` on the curve of `space`.
pub fn true_tangent_map(
    an: &CapAnalysis<'_>,
    x: usize,
    space: usize,
) -> Vec<(usize, ProjSubspace)> {
    an.cap().spaces()[space]
        .point_ids()
        .iter()
        .map(|&y| {
            (
                y,
                an.tangent_line(an.space_through(x, y).unwrap(), x)
                    .unwrap()
                    .clone(),
            )
        })
        .collect()
}

/// Reconstructs every tangent map from every triple of true anchors.
/// Returns the number of reconstructions.
pub fn anchors_determine_tangent_maps(an: &CapAnalysis<'_>) -> usize {
    let cap = an.cap();
    let mut count = 0;
    for x in 0..cap.points().len() {
        for (s, rs) in cap.spaces().iter().enumerate() {
            if rs.point_ids().contains(&x) {
                continue;
            }
            let truth = true_tangent_map(an, x, s);
            for a in truth.iter().cloned().combinations(3) {
                let anchors = [a[0].clone(), a[1].clone(), a[2].clone()];
                assert_eq!(
                    reconstruct_tangent_map(an, x, s, &anchors).unwrap(),
                    truth,
                    "x={x} space={s}"
                );
                count += 1;
            }
        }
    }
    count
}

pub fn as_point(s: &ProjSubspace) -> ProjPoint {
    assert_eq!(s.dim(), 0);
    ProjPoint::new(s.field(), s.basis().row(0).to_vec()).unwrap()
}

/// Projects the curve from the span of its points with indices `center`;
/// centre points are replaced by the traces of their tangent lines.
pub fn project_curve(c: &RationalNormalCurve, center: &[usize]) -> (Vec<ProjPoint>, ProjSubspace) {
    let f = c.field();
    let pts: Vec<&ProjPoint> = center.iter().map(|&k| &c.points()[k].1).collect();
    let cen = ProjSubspace::from_points(f, c.degree(), &pts).unwrap();
    let screen = cen.complement();
    let proj = Projection::new(&cen, &screen).unwrap();
    let images = c
        .points()
        .iter()
        .enumerate()
        .map(|(k, (_, x))| {
            if center.contains(&k) {
                as_point(&proj.apply_subspace(&c.tangent_line(x).unwrap()).unwrap())
            } else {
                proj.apply(x).unwrap()
            }
        })
        .collect();
    (images, screen)
}

/// Projects the standard curve of degree `d` from every set of `i < d` of
/// its points, recognizes the image and compares all cross-ratios.
/// Returns the number of quadruples compared.
pub fn projections_preserve_crossratio(d: usize, p: u64) -> usize {
    let f = PrimeField::new(p).unwrap();
    let c = RationalNormalCurve::standard(f, d).unwrap();
    let params: Vec<ProjParam> = c.points().iter().map(|(t, _)| *t).collect();
    let mut count = 0;
    for i in 1..d {
        for center in (0..params.len()).combinations(i) {
            let (images, screen) = project_curve(&c, &center);
            let image = recognize_rnc(f, &images, &screen, d - i)
                .unwrap_or_else(|e| panic!("{center:?}: {e}"));
            for q in (0..params.len()).combinations(4) {
                let expected =
                    crossratio_params(f, [params[q[0]], params[q[1]], params[q[2]], params[q[3]]])
                        .unwrap();
                let got = image
                    .crossratio_points([&images[q[0]], &images[q[1]], &images[q[2]], &images[q[3]]])
                    .unwrap();
                assert_eq!(got, expected, "centre {center:?} quadruple {q:?}");
                count += 1;
            }
        }
    }
    count
}

/// Checks `dim ⟨T_1, …, T_i, y_1, …, y_j⟩ = 2i + j − 1` for all disjoint
/// choices with `2i + j ≤ d + 1`. Returns the number of cases.
pub fn osculating_span_dimensions(d: usize, p: u64) -> usize {
    let f = PrimeField::new(p).unwrap();
    let c = RationalNormalCurve::standard(f, d).unwrap();
    let pts: Vec<ProjPoint> = c.points().iter().map(|(_, x)| x.clone()).collect();
    let mut cases = 0;
    for i in 0..=d.div_ceil(2) {
        for tangent in (0..pts.len()).combinations(i) {
            let rest: Vec<usize> = (0..pts.len()).filter(|k| !tangent.contains(k)).collect();
            for j in 0..=(d + 1 - 2 * i) {
                if i + j == 0 {
                    continue;
                }
                for plain in rest.iter().copied().combinations(j) {
                    let t: Vec<ProjPoint> = tangent.iter().map(|&k| pts[k].clone()).collect();
                    let s: Vec<ProjPoint> = plain.iter().map(|&k| pts[k].clone()).collect();
                    assert_eq!(
                        c.span_dimension_profile(&t, &s).unwrap(),
                        (2 * i + j) as isize - 1,
                        "tangent {tangent:?} plain {plain:?}"
                    );
                    cases += 1;
                }
            }
        }
    }
    cases
}

/// For all pairs of lines of ℙ^n, the spans of their Veronese images meet
/// exactly in the image of their meet. Returns the number of pairs.
pub fn line_images_meet_correctly(n: usize, d: usize, p: u64) -> usize {
    let f = PrimeField::new(p).unwrap();
    let basis = MonomialBasis::new(n, d);
    let lines = subspaces(f, n, 2);
    let images: Vec<ProjSubspace> = lines
        .iter()
        .map(|l| image_of_line(f, &basis, l).unwrap())
        .collect();
    for s in &images {
        assert_eq!(s.dim(), d as isize);
    }
    let pairs: Vec<(usize, usize)> = (0..lines.len()).tuple_combinations().collect();
    pairs.par_iter().for_each(|&(a, b)| {
        let meet = lines[a].intersect(&lines[b]).unwrap();
        let got = images[a].intersect(&images[b]).unwrap();
        if meet.is_empty() {
            assert!(got.is_empty(), "lines {a} and {b}");
        } else {
            let z = veronese_map(f, &basis, &as_point(&meet)).unwrap();
            assert_eq!(got, ProjSubspace::point(f, &z), "lines {a} and {b}");
        }
    });
    pairs.len()
}

/// A single-element corruption of a cap.
#[derive(Debug, Clone)]
pub enum Mutation {
    /// Add a nonzero multiple of a unit vector to point `point`.
    PerturbPoint {
        point: usize,
        to: ProjPoint,
    },
    DeleteSpace {
        space: usize,
    },
    DuplicateSpace {
        space: usize,
    },
    /// Replace one listed point of `space` by a point off it, or drop it
    /// when every point lies on `space`.
    SwapCurvePoint {
        space: usize,
        slot: usize,
        with: Option<usize>,
    },
}

impl Mutation {
    pub fn random<R: rand::Rng>(cap: &VeroneseanCap, kind: usize, rng: &mut R) -> Self {
        let np = cap.points().len();
        let ns = cap.spaces().len();
        match kind % 4 {
            0 => loop {
                let point = rng.gen_range(0..np);
                let mut v = cap.points()[point].coords().to_vec();
                let j = rng.gen_range(0..v.len());
                v[j] = cap
                    .field()
                    .add(v[j], rng.gen_range(1..cap.field().modulus()));
                if let Ok(to) = ProjPoint::new(cap.field(), v) {
                    if to != cap.points()[point] {
                        return Mutation::PerturbPoint { point, to };
                    }
                }
            },
            1 => Mutation::DeleteSpace {
                space: rng.gen_range(0..ns),
            },
            2 => Mutation::DuplicateSpace {
                space: rng.gen_range(0..ns),
            },
            _ => {
                let space = rng.gen_range(0..ns);
                let ids = cap.spaces()[space].point_ids();
                let off: Vec<usize> = (0..np).filter(|i| !ids.contains(i)).collect();
                Mutation::SwapCurvePoint {
                    space,
                    slot: rng.gen_range(0..ids.len()),
                    with: (!off.is_empty()).then(|| off[rng.gen_range(0..off.len())]),
                }
            }
        }
    }

    pub fn apply(&self, cap: &VeroneseanCap) -> VeroneseanCap {
        let mut ids = cap.space_point_ids();
        match self {
            Mutation::PerturbPoint { point, to } => return move_point(cap, *point, to.clone()),
            Mutation::DeleteSpace { space } => {
                ids.remove(*space);
            }
            Mutation::DuplicateSpace { space } => {
                let copy = ids[*space].clone();
                ids.push(copy);
            }
            Mutation::SwapCurvePoint { space, slot, with } => match with {
                Some(w) => ids[*space][*slot] = *w,
                None => {
                    ids[*space].remove(*slot);
                }
            },
        }
        with_spaces(cap, ids)
    }
}
