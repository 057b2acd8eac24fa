//! Drivers behind the command line tool. Each returns a plain report; the
//! CLI formats it and maps it to an exit code.

mod extremal;
mod scan;
mod signgrid;
mod verify;

pub use crate::energy::ComparisonRecord;
pub use extremal::{extremal, ExtremalReport, RankedGraph, DEFAULT_EXTREMAL_CAP, LARGE_EXTREMAL_CAP};
pub use scan::{scan, scan_pairs, scan_passes, DEFAULT_SCAN_CAP};
pub use signgrid::{signgrid, SignGridConfig, SignGridReport, SignQuantity, Violation};
pub use verify::{verify_identities, BaseCase, IdentityCheck, VerifyConfig, VerifyReport};
