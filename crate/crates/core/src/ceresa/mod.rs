//! `f(N, k)`, its fractional part and integrality verdicts, the table over
//! `N`, scans over multiples, and the Klein quartic value.

mod assembly;
mod relation;
mod scan;
mod value;

pub use assembly::{corollary_labels, f_value_collapsed, scaled_pairing, ScaledPhi};
pub use relation::{delta_relation_diagnostic, relation_diagnostic, RelationDiagnostic};
pub use scan::{check_result, multiples_scan, nonintegrality_check, scan_value, CheckOutcome, ScanReport};
pub use value::{
    classify, f_value, fixed, half_units, klein_value, prefactor, significant, summand, supported, table1, CeresaResult, Verdict,
    MIN_FRACTION_DIGITS,
};
