//! Veronese varieties over prime fields, verification of the Veronesean cap
//! axioms, and constructive classification of caps as Veronese varieties.

pub mod cap;
pub mod capfile;
pub mod classify;
pub mod error;
pub mod gfp;
pub mod projlin;
pub mod rnc;
pub mod veronese;

pub use cap::{
    verify, AbstractSpace, RationalSpace, Verdict, VerificationReport, VeroneseanCap, Witness,
};
pub use classify::{
    classify, ClassificationResult, ClassifyOptions, Collineation, Coordinatization, FrameStrategy,
};
pub use error::{Error, Result};
pub use gfp::{crossratio_params, ArithOp, Fp, PrimeField, ProjParam};
pub use projlin::{Matrix, ProjPoint, ProjSubspace};
pub use rnc::{recognize_rnc, NotAnRnc, RationalNormalCurve};
pub use veronese::{build_variety, generate, veronese_map, MonomialBasis, VeroneseVariety};
