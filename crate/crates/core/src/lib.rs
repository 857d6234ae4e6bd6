//! Exact numerical classifiers for sheaves on Hirzebruch surfaces `F_e`.
//!
//! Everything is computed with exact integers and rationals: line-bundle
//! cohomology, Betti numbers of a general prioritary sheaf of a given Chern
//! character, speciality, Gaeta-type resolutions, global generation (on `F_e`
//! and `P²`) and numerical tests for ampleness.

pub mod ampleness;
pub mod chern;
pub mod construction;
pub mod error;
pub mod gaeta;
pub mod general_betti;
pub mod global_generation;
pub mod grid;
pub mod line_cohomology;
pub mod rational;
pub mod surface;

pub use ampleness::{ample_status, ample_status_p2, AmpleStatus, AmpleVerdict, NecessaryFailure};
pub use chern::{CharacterInvariants, ChernCharacter};
pub use construction::{build_model, predicted_betti, DirectSumModel, VerifyReport};
pub use error::{Error, ErrorClass, Result};
pub use gaeta::{find_all, find_l, Exponents, GaetaResolution, GaetaSearch, SearchRegion};
pub use general_betti::{betti, is_special, BettiResult, Speciality, SpecialityClause, SpecialityVerdict};
pub use global_generation::{
    gg_hirzebruch, gg_hirzebruch_with, gg_p2, gg_p2_with, lazarsfeld_mukai, Generation, GgClause, GgOptions, GgVerdict,
    P2Character, PullbackWitness, Ruling,
};
pub use grid::Grid;
pub use line_cohomology::{cohomology, BettiTriple, Step};
pub use surface::{ConePosition, DivisorClass, RationalDivisorClass, Surface};
