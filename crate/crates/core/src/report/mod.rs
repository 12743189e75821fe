//! Input parsing, analysis documents and rendering for the command line.

pub mod presets;
pub mod spec;
pub mod analysis;
pub mod audit;
pub mod text;
