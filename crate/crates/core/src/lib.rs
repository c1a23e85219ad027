//! Exact zeta functions of smooth projective curves over finite fields,
//! stacky masses of `Bun_G`, and asymptotic mass growth along curve families.
//!
//! Exact quantities are [`BigRat`]s; logarithms and limits are `f64`.

pub mod arith;
pub mod asymptotics;
pub mod curves;
pub mod error;
pub mod groups;
pub mod mass;
pub mod par;
pub mod zeta;

pub use arith::{BigRat, Elem, ExtFieldSpec, FiniteField};
pub use asymptotics::{
    convergence_report, dominance_check, empirical_tv, lhs_sequence, rhs_general, rhs_group, rhs_pic,
    tv_bound, ConvergenceReport, Dominance, RhsValue, TVData, TvGroup,
};
pub use curves::{
    count_points, count_series, count_series_within_budget, CountOptions, CurveKind, CurveModel, PlaneTerm,
    PointCounts,
};
pub use error::{Error, Result};
pub use groups::{builtin_group, group_order, mass_ratio, Family, GroupSpec};
pub use mass::{hn_ss_mass, hn_ss_mass_enclosure, mass_bun, mass_gl_component, zagier_ss_mass, MassValue};
pub use par::Strategy;
pub use zeta::{
    class_number, degree_spectrum, quasi_residue, special_value, zeta_from_counts, zeta_from_series,
    DegreeSpectrum, ZetaData,
};
