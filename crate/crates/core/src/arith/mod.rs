//! Exact arithmetic kernel: Q(i), polynomials in x, y and truncated series in t.

pub mod bipoly;
pub mod extnat;
pub mod gaussian;
pub mod gcd;
pub mod param;
pub mod series;
pub mod unipoly;

pub use bipoly::{BiPoly, Monomial, Var};
pub use extnat::{ExtendedNat, Finite, Infinite};
pub use gaussian::GaussianRational;
pub use gcd::{is_locally_reduced, is_squarefree, poly_gcd};
pub use param::{eval_on_curve, normalize_param, pure_power_form, ExactParam, ParamCurve, PurePower, Similarity};
pub use series::{with_retry, TruncSeries, DEFAULT_MAX_TRUNC, DEFAULT_TRUNC};
pub use unipoly::UniPoly;
