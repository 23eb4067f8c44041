//! Job language, dispatch and rendering behind the `gcmwb` binary.

pub mod dispatch;
pub mod dsl;

pub use dispatch::{dispatch, render, JobReport, RunOutput, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};
pub use dsl::{parse_job, Command, JobSpec, RunSpec};
