//! Script language and report emitter for the `ratequiv` engine.

pub mod error;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod run;

pub use error::ScriptError;
pub use parser::{parse, Script};
pub use report::{emit_json, emit_text, parse_json, Document, Report, Verdict};
pub use run::{run, run_corpus_command, RunConfig};
