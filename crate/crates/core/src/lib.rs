//! Exact construction and verification of finite SU(3) subgroups.

pub mod catalog;
pub mod cyclo;
pub mod engine;
pub mod fp;
pub mod fusion;
pub mod mat3;
pub mod verify;

pub use catalog::{Catalog, CatalogError, NamedGeneratorSet, SeriesParams};
pub use cyclo::{CycloError, CycloNum};
pub use engine::{aut_count_abelian, cd_inclusion_check, EngineError, MatrixGroup, Subgroup, TwoSylowType};
pub use fp::{todd_coxeter, FpError, GenAssignment, Letter, Presentation, Word};
pub use fusion::{derive_fusion_matrix, su3_normalize, FusionError, SurdNum};
pub use mat3::{Mat3, MatError};
pub use verify::{run_suite, VerificationReport, VerifyError};
