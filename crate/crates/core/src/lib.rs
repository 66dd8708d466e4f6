//! Numerical certification of Bohr-type inequalities.
//!
//! Power series of Schur-class functions are expanded from Schur parameters,
//! reduced to lacunary profiles `|a_(kp+m)|`, and checked against the
//! inequalities in [`functionals`]. [`radius`] solves the radius equations,
//! [`multidim`] reduces vector-valued maps to one-variable slices, and
//! [`harness`] runs seeded campaigns and writes reports.

pub mod error;
pub mod functionals;
pub mod harness;
pub mod multidim;
pub mod powerseries;
pub mod radius;
pub mod schur;

pub use error::{Error, Result};
pub use functionals::{
    evaluate_theorem, Evaluator, Extras, InequalityCheck, LacunaryProfile, Shape, TheoremId,
};
pub use harness::{run_campaign, CampaignConfig, Report, ReportFormat, ReportRow};
pub use multidim::{Direction, LtIndex, MapSpec, SliceMapping};
pub use powerseries::TruncatedSeries;
pub use radius::{solve_radius, RadiusId, RadiusSpec};
pub use schur::{sample_schur, schur_to_taylor, ExtremalKind, SchurParameters};
