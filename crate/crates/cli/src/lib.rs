//! File formats and report orchestration for the `trispec` binary.

pub mod input;
pub mod job;

pub use input::{
    detect_kind, emit_quiver, emit_simplicial, emit_triangular, parse_quiver_file,
    parse_simplicial_file, parse_triangular_file, InputKind, ParseError,
};
pub use job::{load_algebra, run_job, Emit, FieldChoice, JobError, JobOutput, JobSpec, Report};
