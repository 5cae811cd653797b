//! Problem files, the example catalog, the analysis driver and renderers.

pub mod problem;
pub mod render;
pub mod report;

pub use problem::{builtin, parse_input, parse_str, InputError, OutputFormat, ProblemSpec, BUILTINS};
pub use render::render;
pub use report::{run_analyze, AnalysisReport, RunOptions};
