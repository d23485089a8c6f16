//! The two directions relating functions whose result index is computed by
//! a fold to functions taking algebraic-ornament arguments.

use std::sync::Arc;

use crate::algebraic::{remember, AlgOrnament};
use crate::check::{check_value, equal_value};
use crate::code::{DescFun, SetCode};
use crate::elim::fold;
use crate::error::{ill_typed, KernelError, Result};
use crate::ornament::orn_forget;
use crate::value::Value;

/// `(i, t) ↦ μ E (i, fold α t)`.
pub type IndexedFnLeft = Arc<dyn Fn(&Value, &Value) -> Result<Value> + Send + Sync>;
/// `(i, x, t^x) ↦ μ E (i, x)`.
pub type IndexedFnRight = Arc<dyn Fn(&Value, &Value, &Value) -> Result<Value> + Send + Sync>;

fn checked(target: &DescFun, i: &Value, x: &Value, y: Value) -> Result<Value> {
    let idx = Value::pair(i.clone(), x.clone());
    if !check_value(&SetCode::mu(target, idx.clone()), &y)? {
        return ill_typed(format!("{y} is not in μ {} {idx}", target.name()));
    }
    Ok(y)
}

pub fn rl_adjoint(ao: &AlgOrnament, target: &DescFun, f: IndexedFnLeft) -> IndexedFnRight {
    let (ao, target) = (ao.clone(), target.clone());
    Arc::new(move |i, x, tx| {
        if !check_value(&ao.set_at(i.clone(), x.clone()), tx)? {
            return ill_typed(format!("{tx} is not in the algebraic ornament at ({i}, {x})"));
        }
        let idx = Value::pair(i.clone(), x.clone());
        let t = orn_forget(ao.ornament(), &idx, tx)?;
        let y = f(i, &t)?;
        let recomputed = fold(ao.base(), ao.algebra(), i, &t)?;
        if !equal_value(&ao.algebra().carrier_at(i)?, &recomputed, x)? {
            return Err(KernelError::IndexMismatch(format!(
                "fold gives {recomputed} but the index says {x}"
            )));
        }
        checked(&target, i, x, y)
    })
}

pub fn lr_adjoint(ao: &AlgOrnament, target: &DescFun, g: IndexedFnRight) -> IndexedFnLeft {
    let (ao, target) = (ao.clone(), target.clone());
    Arc::new(move |i, t| {
        if !check_value(&SetCode::mu(ao.base(), i.clone()), t)? {
            return ill_typed(format!("{t} is not in μ {} {i}", ao.base().name()));
        }
        let x = fold(ao.base(), ao.algebra(), i, t)?;
        let tx = remember(ao.base(), ao.algebra(), i, t)?;
        let y = g(i, &x, &tx)?;
        checked(&target, i, &x, y)
    })
}
