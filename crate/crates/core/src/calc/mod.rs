//! Derivations and E-derivations: classification, the exponential and
//! logarithm correspondence, kernel projections and preimage certificates,
//! spectral gradings, the surjectivity analysis and randomized hunters.

pub mod backend;
pub mod certificate;
pub mod classify;
pub mod grading;
pub mod hunter;
pub mod kernel;
pub mod op;
pub mod series;
pub mod surject;

pub use backend::{ad_matrix, operator_matrix, Backend, FnOp, Operator};
pub use certificate::{verify_certificate, BackendJson, CertBackend, Certificate, Construction, Verdict};
pub use classify::{classify_matrix, classify_poly, LnVerdict, OpClass};
pub use grading::{grade, image_decomposition, spectral_block_preimage, GradeKind, GradingDecomp, ImageDecomp, ImageKind};
pub use kernel::{
    ederiv_preimage, ederiv_preimage_findim, ederiv_preimage_poly, kernel_projection, preimage_one_sided, preimage_two_sided, reconstruct, KernelData, ProjSide,
};
pub use op::{LinOp, OperatorJson};
pub use series::{e_leibniz_check, e_leibniz_sides, exp_map, h_inverse, h_map, lambda_map, xi_map};
pub use surject::{poly_generator, surjectivity_findim, surjectivity_poly, unit_orbit, Branch, PolyGenerator, Surjectivity, UnitOrbit};
