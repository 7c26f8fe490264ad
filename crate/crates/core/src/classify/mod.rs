//! Classification of Veronesean caps: coordinatize the associated space,
//! lift the induced map to a collineation onto the standard Veronese
//! variety, and verify it on every point.

mod collineation;
mod coordinatize;
mod lift;
mod pencil;

pub use collineation::{Collineation, FieldAutomorphism};
pub use coordinatize::{
    coordinatize, Coordinatization, CoordinatizationDefect, CoordinatizationFailure,
};
pub use lift::{lift_collineation, FrameStrategy, Lift, LiftFailure, RANDOM_FRAME_ATTEMPTS};
pub use pencil::{
    pencil_crossratio, pencil_crossratio_with, reconstruct_tangent_map, TangentMapError,
};

use serde::Serialize;

use crate::cap::{BoundsReport, CapAnalysis, VerificationReport, VeroneseanCap, Witness};

/// Pipeline stage at which classification stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Curves,
    Axioms,
    Coordinatization,
    Lift,
    GlobalVerify,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum StageWitness {
    Verification(Witness),
    Coordinatization(CoordinatizationFailure),
    Lift(LiftFailure),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassVerdict {
    Equivalent {
        collineation: Collineation,
        frame: Vec<usize>,
    },
    NotEquivalent {
        stage: Stage,
        witness: StageWitness,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    #[serde(flatten)]
    pub verdict: ClassVerdict,
    pub index: Option<usize>,
    pub bounds: Option<BoundsReport>,
    pub verification: VerificationReport,
}

impl ClassificationResult {
    pub fn collineation(&self) -> Option<&Collineation> {
        match &self.verdict {
            ClassVerdict::Equivalent { collineation, .. } => Some(collineation),
            ClassVerdict::NotEquivalent { .. } => None,
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match &self.verdict {
            ClassVerdict::Equivalent { .. } => None,
            ClassVerdict::NotEquivalent { stage, .. } => Some(*stage),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub frame: FrameStrategy,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            frame: FrameStrategy::Structured { fallback_seed: 0 },
        }
    }
}

/// Decides whether `cap` is projectively equivalent to the standard
/// Veronese variety of its index and degree, and if so returns a
/// collineation carrying it there.
pub fn classify(cap: &VeroneseanCap, options: ClassifyOptions) -> ClassificationResult {
    let mut an = CapAnalysis::new(cap);
    let verification = an.run();
    let index = verification.index;
    let bounds = verification.bounds.clone();
    let done = |verdict| ClassificationResult {
        verdict,
        index,
        bounds: bounds.clone(),
        verification: verification.clone(),
    };
    let fail = |stage, witness| ClassVerdict::NotEquivalent { stage, witness };

    if let Some((name, w)) = verification.first_failure() {
        let stage = match name {
            "structure" | "curves" => Stage::Curves,
            _ => Stage::Axioms,
        };
        return done(fail(stage, StageWitness::Verification(w.clone())));
    }
    let n = index.expect("verified");
    let field = cap.field();
    let coord = if n == 1 {
        let only = &cap.spaces()[0];
        let curve = an.curve(0).expect("recognized");
        Coordinatization::from_curve(curve, only.point_ids(), cap.points())
            .expect("single curve covers X")
    } else {
        match coordinatize(an.abstract_space().expect("verified"), field) {
            Ok(c) => c,
            Err(e) => {
                return done(fail(
                    Stage::Coordinatization,
                    StageWitness::Coordinatization(e),
                ))
            }
        }
    };
    match lift_collineation(cap, &coord, options.frame) {
        Ok(lift) => done(ClassVerdict::Equivalent {
            collineation: lift.collineation,
            frame: lift.frame,
        }),
        Err(e @ LiftFailure::Mismatch { .. }) => {
            done(fail(Stage::GlobalVerify, StageWitness::Lift(e)))
        }
        Err(e) => done(fail(Stage::Lift, StageWitness::Lift(e))),
    }
}
