//! Command-line laboratory around `etale-core`: text formats, brute-force
//! oracles, verification suites and JSON reports.

pub mod error;
pub mod oracles;
pub mod parse;
pub mod report;
pub mod suites;

pub use error::{LabError, LabResult};
pub use report::{Assertion, Status, SuiteReport};
pub use suites::{run_suite, SUITES};
