//! Case catalog, pointwise scans, graded checks and reports.

mod auslander;
mod catalog;
mod checks;
mod report;
mod sample;
mod scan;

pub use auslander::auslander_check;
pub use checks::{center_check, fiber_report, invariants_check, series_check};
pub use catalog::{
    cyclic_representation, default_localization, dihedral_representation, recorded_degree, CaseId, CaseParams,
    CaseSpec, Localization,
};
pub use report::{
    emit_report, format_value, named_values, render, table, AuslanderReport, AuslanderRow, FiberReport, Format,
    FreenessRecord, FreenessReport, GradedReport, Outcome, PointRecord, RankRecord, RankReport, Report, ScanReport,
    SeriesReport, Timings,
};
pub use sample::{PointSampler, RETRY_BUDGET};
pub use scan::{aggregate_verdict, azumaya_scan, certify, freeness_scan, rank_check, ScanOptions};
