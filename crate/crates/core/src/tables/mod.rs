//! The curve tables, the classical bounds, and row verification.

pub mod bounds;
pub mod dataset;
pub mod verify;

pub use bounds::{hasse_weil_bound, isqrt, serre_bound};
pub use dataset::{load_dataset, parse_dataset, RowFlag, TableRow};
pub use verify::{verify_all, verify_row, RowReport, RowVerdict, VerificationSummary, VerifyOptions};
