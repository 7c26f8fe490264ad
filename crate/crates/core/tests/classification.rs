mod common;

use itertools::Itertools;
use veronese_core::cap::{dual_rnc_hyperplanes, CapAnalysis};
use veronese_core::classify::{
    coordinatize, lift_collineation, pencil_crossratio, pencil_crossratio_with,
    reconstruct_tangent_map, ClassVerdict, LiftFailure, Stage, TangentMapError,
};
use veronese_core::{
    build_variety, classify, generate, ClassifyOptions, Collineation, Coordinatization,
    FrameStrategy, ProjParam, ProjPoint, ProjSubspace,
};

use common::{move_point, scramble, stabilizes, true_tangent_map, with_spaces};

fn random_frame(seed: u64) -> ClassifyOptions {
    ClassifyOptions {
        frame: FrameStrategy::Random { seed },
    }
}

#[test]
fn scrambled_plane_varieties_are_recovered() {
    for (n, d, p) in [(2, 2, 5), (2, 2, 7), (3, 2, 5)] {
        let std = build_variety(n, d, p).unwrap();
        for seed in 0..2 {
            let (cap, b) = scramble(&std, seed);
            let result = classify(&cap, ClassifyOptions::default());
            let a = result
                .collineation()
                .unwrap_or_else(|| panic!("{:?}", result.verdict));
            assert_eq!(result.index, Some(n));
            assert!(
                stabilizes(&a.compose(&b).unwrap(), &std),
                "({n},{d},{p}) seed {seed}"
            );
        }
    }
}

#[test]
fn frame_choice_does_not_change_the_lift() {
    let (cap, _) = scramble(&build_variety(2, 2, 5).unwrap(), 11);
    let reference = classify(&cap, ClassifyOptions::default());
    let reference = reference.collineation().unwrap();
    for seed in 0..5 {
        let other = classify(&cap, random_frame(seed));
        assert_eq!(other.collineation(), Some(reference), "seed {seed}");
    }
}

#[test]
fn standard_cubic_variety_is_fixed_up_to_symmetry() {
    let std = build_variety(2, 3, 7).unwrap();
    let result = classify(&std, ClassifyOptions::default());
    let a = result.collineation().expect("equivalent");
    assert!(stabilizes(a, &std));
}

#[test]
fn native_coordinates_lift_to_the_identity() {
    for (n, d, p) in [(2, 2, 5), (2, 3, 7), (1, 3, 7), (3, 2, 3)] {
        let v = generate(n, d, p).unwrap();
        let mut an = CapAnalysis::new(&v.cap);
        assert!(an.run().passed());
        let coord =
            Coordinatization::from_images(v.cap.field(), an.abstract_space().unwrap(), v.preimages)
                .unwrap();
        for strategy in [
            FrameStrategy::Structured { fallback_seed: 0 },
            FrameStrategy::Random { seed: 1 },
        ] {
            let lift = lift_collineation(&v.cap, &coord, strategy).unwrap();
            assert_eq!(
                lift.collineation,
                Collineation::identity(v.cap.field(), v.cap.ambient_dim()),
                "({n},{d},{p})"
            );
        }
    }
}

#[test]
fn twisted_cubic_classifies_trivially() {
    let std = build_variety(1, 3, 7).unwrap();
    let (cap, b) = scramble(&std, 4);
    let result = classify(&cap, ClassifyOptions::default());
    assert_eq!(result.index, Some(1));
    let a = result.collineation().expect("equivalent");
    assert!(stabilizes(&a.compose(&b).unwrap(), &std));
}

#[test]
fn swapped_curve_point_fails_at_curves() {
    let std = build_variety(2, 2, 5).unwrap();
    let mut ids = std.space_point_ids();
    let outside = (0..std.points().len())
        .find(|i| !ids[0].contains(i))
        .unwrap();
    ids[0][2] = outside;
    let result = classify(&with_spaces(&std, ids), ClassifyOptions::default());
    assert_eq!(result.stage(), Some(Stage::Curves), "{:?}", result.verdict);
}

#[test]
fn missing_space_fails_at_axioms() {
    let std = build_variety(2, 2, 5).unwrap();
    let mut ids = std.space_point_ids();
    ids.pop();
    let result = classify(&with_spaces(&std, ids), ClassifyOptions::default());
    assert_eq!(result.stage(), Some(Stage::Axioms));
}

#[test]
fn moved_point_fails_global_check() {
    let std = build_variety(2, 2, 5).unwrap();
    let mut an = CapAnalysis::new(&std);
    assert!(an.run().passed());
    let coord = coordinatize(an.abstract_space().unwrap(), std.field()).unwrap();
    let params: Vec<ProjParam> = ProjParam::all(std.field()).take(3).collect();
    let on: Vec<usize> = dual_rnc_hyperplanes(std.field(), coord.images(), &params).concat();
    let victim = (0..31).find(|i| !on.contains(i)).unwrap();
    let stray = ProjPoint::new(std.field(), vec![1, 2, 3, 4, 0, 1]).unwrap();
    assert!(!std.points().contains(&stray));
    let moved = move_point(&std, victim, stray);
    let err = lift_collineation(
        &moved,
        &coord,
        FrameStrategy::Structured { fallback_seed: 0 },
    )
    .unwrap_err();
    assert_eq!(err, LiftFailure::Mismatch { point: victim });
}

#[test]
fn lifted_map_preserves_curve_crossratios() {
    let std = build_variety(2, 2, 5).unwrap();
    let (cap, _) = scramble(&std, 21);
    let result = classify(&cap, ClassifyOptions::default());
    let ClassVerdict::Equivalent {
        collineation: a, ..
    } = &result.verdict
    else {
        panic!("{:?}", result.verdict)
    };
    let mut src = CapAnalysis::new(&cap);
    let mut dst = CapAnalysis::new(&std);
    assert!(src.run().passed() && dst.run().passed());
    let index = std.point_index();
    for (s, rs) in cap.spaces().iter().enumerate() {
        let ids = rs.point_ids();
        let images: Vec<usize> = ids
            .iter()
            .map(|&i| index[&a.apply(&cap.points()[i]).unwrap()])
            .collect();
        let t = dst.space_through(images[0], images[1]).unwrap();
        let (c, c2) = (src.curve(s).unwrap(), dst.curve(t).unwrap());
        for q in (0..ids.len()).combinations(4) {
            let x = q.iter().map(|&k| &cap.points()[ids[k]]).collect::<Vec<_>>();
            let y = q
                .iter()
                .map(|&k| &std.points()[images[k]])
                .collect::<Vec<_>>();
            assert_eq!(
                c.crossratio_points([x[0], x[1], x[2], x[3]]).unwrap(),
                c2.crossratio_points([y[0], y[1], y[2], y[3]]).unwrap()
            );
        }
    }
}

#[test]
fn pencil_crossratio_matches_every_transversal() {
    let cap = build_variety(2, 2, 5).unwrap();
    let mut an = CapAnalysis::new(&cap);
    assert!(an.run().passed());
    // 31 points, 15 quadruples of the 6 spaces through each, 25 transversals.
    assert_eq!(common::pencil_matches_transversals(&an), 31 * 15 * 25);
}

#[test]
fn pencil_crossratio_ignores_the_auxiliary_line() {
    let cap = build_variety(2, 2, 5).unwrap();
    let mut an = CapAnalysis::new(&cap);
    assert!(an.run().passed());
    let field = cap.field();
    for x in [0, 7, 30] {
        let q: Vec<usize> = an.spaces_through(x)[..4].to_vec();
        let q = [q[0], q[1], q[2], q[3]];
        let expected = pencil_crossratio(&an, x, q).unwrap();
        let plane = an.tangent_space(x).unwrap();
        assert_eq!(plane.dim(), 2);
        let xp = &cap.points()[x];
        let pts = plane.points();
        let mut tried = 0;
        for (u, v) in pts.iter().tuple_combinations() {
            let aux = ProjSubspace::from_points(field, 5, &[u, v]).unwrap();
            if aux.contains_point(xp) {
                continue;
            }
            assert_eq!(pencil_crossratio_with(&an, x, q, &aux).unwrap(), expected);
            tried += 1;
        }
        assert!(tried > 0);
    }
}

#[test]
fn tangent_map_is_determined_by_three_anchors() {
    let cap = build_variety(2, 2, 5).unwrap();
    let mut an = CapAnalysis::new(&cap);
    assert!(an.run().passed());
    assert_eq!(common::anchors_determine_tangent_maps(&an), 31 * 25 * 20);
}

#[test]
fn permuted_anchors_are_inconsistent() {
    let cap = build_variety(2, 2, 5).unwrap();
    let mut an = CapAnalysis::new(&cap);
    assert!(an.run().passed());
    let x = 0;
    let s = (0..cap.spaces().len())
        .find(|&s| !cap.spaces()[s].point_ids().contains(&x))
        .unwrap();
    let truth = true_tangent_map(&an, x, s);
    let anchors = [
        (truth[0].0, truth[1].1.clone()),
        (truth[1].0, truth[2].1.clone()),
        (truth[2].0, truth[0].1.clone()),
    ];
    assert!(matches!(
        reconstruct_tangent_map(&an, x, s, &anchors),
        Err(TangentMapError::Inconsistent { .. })
    ));
}
