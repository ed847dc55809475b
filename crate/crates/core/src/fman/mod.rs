//! F-structures on a coordinate patch with truncated-series coefficients.

mod eventual;
mod fiber;
mod spectral;
mod structure;
mod vfield;

pub use eventual::{
    commutator_identity_3_8, dubrovin_dual, eventual_group_check, is_eventual_identity, is_invertible,
    multiplication_matrix, vf_inverse, vf_power, EventualReport, GroupReport,
};
pub use fiber::{fiber_algebra, is_semisimple_fiber, FiberAlgebra};
pub use spectral::{
    canonical_poisson, check_coisotropy, eval_hom, generator_rank_check, ppoly_one, spectral_ideal_generators,
    CoisotropyReport, PPoly, RankCheck,
};
pub use structure::{
    check_f_structure, f_identity_defect, i2_3, non_f_control, poisson_tensor, semisimple, series, vf_mul,
    CheckConfig, FCheckReport, FStructure, DEFAULT_CAP,
};
pub use vfield::{random_series, random_vfield, vf_bracket, VField};
