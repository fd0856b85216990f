//! Inflection and vertex invariants from equations and parametrisations, and the
//! identities relating them.

pub mod equation;
pub mod param;
pub mod relations;
pub mod sqh;

pub use equation::{
    eq_invariants, inflection_count_eq, inflection_poly, vertex_count_eq, vertex_poly, Count, InvariantReport,
};
pub use param::{
    circle_contact, evolute, first_puiseux_exponent, inflection_count_param, inflection_wronskian, lambda_closed_form,
    param_invariants, vertex_count_param, vertex_wronskian, Circle, Contact, ParamInvariants, SeriesPair, Trunc,
};
pub use relations::{check_branches, relation_report, Check, RelationReport, ReportOptions, Status, Verification};
pub use sqh::sqh_inflection_count;
