//! Exact subgroup counts of finite abelian p-groups as polynomials in `p`.
//!
//! * [`poly`]: integer polynomials in `p` with exact division.
//! * [`group`]: group types and interval classification.
//! * [`recurrence`]: counts of any rank from two recurrences.
//! * [`closed_forms`]: explicit formulas for ranks 2 to 4 and the any-rank
//!   product formula.

pub mod closed_forms;
pub mod genfun;
pub mod group;
pub mod oracle;
pub mod poly;
pub mod recurrence;
pub mod verify;

pub use closed_forms::{ClosedFormError, ClosedForms, FormulaResult, Perturbation};
pub use oracle::{CensusResult, OracleError};
pub use group::{CaseId, CountQuery, GroupError, GroupType, Theorem};
pub use poly::{IntPoly, PolyError};
pub use recurrence::{count_hironaka, count_stehling, total_count, Recurrence};
