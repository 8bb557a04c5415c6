//! Command-line front end for the seed mutation engine: argument parsing,
//! JSON output shaping, the bundled instance corpus, and the verification
//! battery behind `cluster verify`.

pub mod corpus;
pub mod descriptor;
pub mod output;
pub mod verify;

use cluster_core::Error;

/// Process exit code for an engine error: 3 when exploration was cut short
/// somewhere completeness was needed, 2 when a structural fact the engine
/// relies on failed to hold, 1 for everything else (bad input, usage).
pub fn exit_code_for(e: &Error) -> i32 {
    if matches!(e, Error::TruncatedGraph) {
        3
    } else if e.is_theorem_violation() {
        2
    } else {
        1
    }
}
