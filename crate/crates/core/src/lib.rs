//! Exact decision procedure for the rationality of `Σ_{n≥0} P(n)/Q(n)` when `Q` splits into
//! simple rational linear factors, with an independent floating-point channel.

pub mod arith;
pub mod classify;
pub mod linalg;
pub mod numeric;
pub mod okada;
pub mod poly;
pub mod reduce;
pub mod smooth;

pub use classify::{
    classify_reduced, classify_sum, degree2_criterion, exhaustive_exception_search,
    theorem_1_1_check, theorem_c_check, ClassifyError, ExceptionCase, ExceptionalIdentity,
    QuarticVerdict, Verdict, VerdictKind,
};
pub use numeric::{sum_value, total_value, truncated_sum, truncated_total, NumericResult};
pub use okada::{okada_verdict, OkadaError, OkadaReport, PeriodicFunction};
pub use poly::{parse_polynomial, PolyError, RationalPolynomial};
pub use reduce::{reduce, LinearFactorForm, ReduceError, ReducedSum};
