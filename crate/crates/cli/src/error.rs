use std::fmt;

use crate::syntax::Pos;

/// Reasons a script is rejected before any command runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    UndefinedIdentifier,
    SurfaceMismatch,
    /// A name refers to the wrong sort of object.
    WrongKind,
    DuplicateDefinition,
    /// The core library refused a declared object, e.g. a non-simple curve.
    InvalidDeclaration,
}

impl ErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ErrorKind::Syntax => "syntax",
            ErrorKind::UndefinedIdentifier => "undefined_identifier",
            ErrorKind::SurfaceMismatch => "surface_mismatch",
            ErrorKind::WrongKind => "wrong_kind",
            ErrorKind::DuplicateDefinition => "duplicate_definition",
            ErrorKind::InvalidDeclaration => "invalid_declaration",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl ScriptError {
    pub fn new(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> ScriptError {
        ScriptError { kind, pos, message: message.into() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "error": {
                "kind": self.kind.code(),
                "line": self.pos.line,
                "column": self.pos.column,
                "message": self.message,
            }
        })
    }
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} error: {}", self.pos.line, self.pos.column, self.kind.code(), self.message)
    }
}

impl std::error::Error for ScriptError {}
