//! IO companion to `pagination-core`: the instance and solution file
//! formats, the multi-solver benchmark harness with CSV and SVG output, and
//! the moving-window/correlation analysis behind the difficulty study.

pub mod analyze;
pub mod bench;
pub mod formats;
pub mod svg;
