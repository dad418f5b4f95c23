//! Numerical verification engine for the geometry of Siklos spacetimes.
//!
//! The crate computes connection, curvature and hypersurface invariants for
//! metrics of the form `(beta^2/x3^2)(2 dx1 dx2 + H dx2^2 + dx3^2 + dx4^2)`
//! with an arbitrary defining function `H(x2, x3, x4)`, and verifies that the
//! classified totally geodesic, minimal, Codazzi, parallel and CMC
//! hypersurface families satisfy their defining conditions at sampled points.
//!
//! Modules:
//! - [`jets`]: order-2 forward-mode automatic differentiation;
//! - [`expr`]: the expression language for defining functions and immersions;
//! - [`ambient`]: metric, connection, curvature, predicates, geodesics;
//! - [`hypersurface`]: second fundamental form, its covariant derivative,
//!   Gauss/Codazzi residuals and classification;
//! - [`catalog`]: the classified families with expected verdicts;
//! - [`verify`]: the orchestrated verification suite and its JSON report.

pub mod ambient;
pub mod catalog;
pub mod expr;
pub mod hypersurface;
pub mod jets;
pub(crate) mod linalg;
pub mod verify;

pub use ambient::{
    AmbientGeometry, Christoffel, DefiningFunction, FHelpers, GeodesicState, GeomError, HDerivs,
    MetricTensor, Predicates, RiemannTensor, SpacetimePoint,
};
pub use catalog::{
    build_entry, catalog_list, defining_function_preset, CatalogEntry, ExpectedVerdicts,
    ImplicitSurface,
};
pub use expr::{EvalError, Expr, ParseError};
pub use hypersurface::{
    classify, classify_at, extrinsic_at, gauss_codazzi_residuals, nabla_h, ClassificationReport,
    ClassifyOptions, ExtrinsicData, GaussCodazzi, Immersion, NablaH, Sampling,
};
pub use jets::{Jet2, Jet3, JetError};
pub use verify::{
    report_to_json, run_suite, CheckResult, SuiteReport, Tolerances, VerificationConfig,
    VerifyError,
};
