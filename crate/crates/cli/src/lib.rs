//! Library side of the `globalize` command line: input schemas, the fixture
//! catalog, the verification pipelines, and deterministic run reports.

pub mod catalog;
pub mod pipeline;
pub mod report;
pub mod schema;
