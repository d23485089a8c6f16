//! The standard declarations shipped with the engine.

use ornate_core::SetCode;

use crate::elab::{load, SurfaceError};
use crate::env::Env;

pub const PRELUDE: &str = include_str!("prelude.orn");

/// The prelude elaborated with the default parameters.
pub fn prelude() -> Result<Env, SurfaceError> {
    load(PRELUDE, &Env::new())
}

/// The prelude elaborated with parameters instantiated as given.
pub fn prelude_with(params: Vec<(String, SetCode)>) -> Result<Env, SurfaceError> {
    load(PRELUDE, &Env::with_params(params))
}
