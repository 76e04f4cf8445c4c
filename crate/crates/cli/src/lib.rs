//! Interpreter for open book scripts.
//!
//! ```text
//! surface S = (1, 1)
//! word w = R(a1)*R(a2)
//! book B = (S, w)
//! cmd h1 B
//! cmd certify B budget 4
//! ```

pub mod check;
pub mod error;
pub mod program;
pub mod run;
pub mod syntax;

pub use error::{ErrorKind, ScriptError};
pub use program::{check as check_script, parse, Program};
pub use run::{run, Options, Report};
pub use syntax::Script;
