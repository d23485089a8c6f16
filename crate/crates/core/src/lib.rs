//! Kernel of the ornamentation engine: a closed universe of sets and
//! canonical values, indexed descriptions, ornaments, reornaments,
//! functional ornaments with their patches, lifting combinators and the
//! algebraic-ornament adjunction.

pub mod adjoint;
pub mod algebraic;
pub mod check;
pub mod code;
pub mod elim;
mod error;
pub mod funorn;
pub mod library;
pub mod lift;
pub mod ornament;
pub mod reornament;
pub mod report;
pub mod value;

pub use check::{check_payload, check_value, enumerate, equal_value};
pub use code::{fam, konst, Algebra, Desc, DescFun, Fam, SetCode};
pub use elim::{case_analysis, eliminate, fold, induction};
pub use error::{KernelError, Result};
pub use value::{Tag, Value};
