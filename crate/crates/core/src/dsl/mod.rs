//! The `.gpd` text format: parser with positioned diagnostics, name
//! resolution, assertion checking, emitters and the builtin examples.

pub mod ast;
pub mod builtins;
pub mod check;
pub mod diagnostic;
pub mod emit;
pub mod resolve;
pub mod syntax;

pub use builtins::{builtin, Builtin, BUILTINS};
pub use check::{check_assertions, AssertionOutcome};
pub use diagnostic::{Category, Diagnostic};
pub use emit::{emit, emit_spec, emit_to_string, Emit, Format};
pub use resolve::{lookup_morphism, parse_spec, resolve, Model};
pub use syntax::parse_document;
