//! Surface language: s-expression syntax, elaboration into kernel codes,
//! lifting scripts and the prelude.

pub mod ast;
pub mod elab;
pub mod env;
pub mod eval;
pub mod prelude;
pub mod print;
pub mod script;
pub mod sexpr;

pub use ast::{parse, print as print_source, SourceFile};
pub use elab::{elaborate, load, ElabError, SurfaceError};
pub use env::{Entity, Env};
pub use prelude::{prelude, prelude_with, PRELUDE};
pub use print::{show_desc, show_set, show_value};
pub use script::{AdjDef, HoleLine, LiftDef};
pub use sexpr::ParseError;
