//! Numerical-range toolkit: operator norm, numerical radius and Crawford
//! number for finite complex matrices, operator-convex integral means, a
//! registry of named norm / numerical-radius inequality chains, and seeded
//! random-matrix batch verification.

pub mod batch;
pub mod chains;
pub mod eigen;
pub mod error;
pub mod linalg;
pub mod matfile;
pub mod matrix;
pub mod nr;
pub mod par;
pub mod report;
pub mod sampling;
pub mod spectral;

pub use batch::{run_batch, BatchConfig, BatchResult};
pub use chains::{
    alpha_minimized_norm, check_buzano, equality_case_suite, evaluate_chain, find_chain,
    list_chains, AlphaMode, ChainDef, ChainInputs, ChainKind, ChainParams, ChainVerdict,
    EvalConfig, ParamSpec, Signature,
};
pub use error::{ChainError, LinalgError};
pub use linalg::{
    cartesian_decomposition, is_psd, lambda_max, lambda_min, matrix_abs, operator_norm,
};
pub use matfile::{matrix_to_string, parse_matrix, MatFileError};
pub use matrix::ComplexMatrix;
pub use nr::{
    crawford_number, crawford_sample_oracle, numerical_radius, numerical_radius_sample_oracle,
    quantities, AngleSweepConfig, QuantityReport,
};
pub use report::{ReportFormat, RunReport, Summary, VerdictRecord};
pub use sampling::{generate, sample_class, EnsembleClass, GeneratorConfig};
pub use spectral::{
    apply_scalar_function, check_operator_convexity, hh_integral_mean, loewner_leq,
    squared_integral_mean_closed_form, Domain, FunctionKind, QuadratureConfig, ScalarFunction,
};
