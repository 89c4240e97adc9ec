//! Session language and command runner for `hkforge`.

pub mod run;
pub mod session;

pub use run::{run, run_text, CliError, Outcome, RunOptions};
pub use session::{parse_session, ParseError, Session};
