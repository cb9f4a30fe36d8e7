//! Command-line surface: presentation files, reports and subcommands.

pub mod app;
pub mod file;
pub mod report;

pub use app::{run, Io, EXIT_FAIL, EXIT_INPUT, EXIT_OK};
pub use file::{load_presentation_file, load_presentation_str, LoadError, Loaded, PresentationFile};
pub use report::{Frac, VerificationReport};
