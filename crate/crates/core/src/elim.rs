//! Generic elimination of μ values: payload traversal, fold and induction.

use crate::check::{check_payload, check_value};
use crate::code::{Algebra, Desc, DescFun};
use crate::error::{ill_typed, KernelError, Result};
use crate::value::Value;

/// Rebuilds `payload` with every recursive position replaced by `f(index, sub)`.
pub fn map_payload(
    d: &Desc,
    payload: &Value,
    f: &mut dyn FnMut(&Value, &Value) -> Result<Value>,
) -> Result<Value> {
    match d {
        Desc::Var(i) => f(i, payload),
        Desc::One => match payload {
            Value::Unit => Ok(Value::Unit),
            _ => ill_typed(format!("expected unit, found {payload}")),
        },
        Desc::Sigma { dom, fam, .. } => match payload {
            Value::Pair(s, rest) => {
                if !check_value(dom, s)? {
                    return ill_typed(format!("{s} is not in {dom:?}"));
                }
                Ok(Value::pair((**s).clone(), map_payload(&fam(s)?, rest, f)?))
            }
            _ => ill_typed(format!("expected a pair, found {payload}")),
        },
        Desc::Pi(_, fam) => match payload {
            Value::Fun(table) => {
                let mut out = Vec::with_capacity(table.len());
                for (arg, r) in table.iter() {
                    out.push((arg.clone(), map_payload(&fam(arg)?, r, f)?));
                }
                Ok(Value::fun(out))
            }
            _ => ill_typed(format!("expected a table, found {payload}")),
        },
    }
}

/// The recursive positions of `payload`, as (index, sub-value), in traversal order.
pub fn positions(d: &Desc, payload: &Value) -> Result<Vec<(Value, Value)>> {
    let mut out = Vec::new();
    map_payload(d, payload, &mut |i, sub| {
        out.push((i.clone(), sub.clone()));
        Ok(Value::Unit)
    })?;
    Ok(out)
}

fn unfold(t: &Value) -> Result<&Value> {
    t.as_in()
        .ok_or_else(|| KernelError::IllTypedValue(format!("expected a constructor node, found {t}")))
}

pub fn fold(d: &DescFun, alg: &Algebra, i: &Value, t: &Value) -> Result<Value> {
    let payload = unfold(t)?;
    let mapped = map_payload(&d.at(i)?, payload, &mut |j, sub| fold(d, alg, j, sub))?;
    let r = alg.step(i, &mapped)?;
    if !check_value(&alg.carrier_at(i)?, &r)? {
        return Err(KernelError::IllFormedAlgebra(format!(
            "{} produced {r} outside its carrier at {i}",
            alg.name()
        )));
    }
    Ok(r)
}

/// Induction: `step(i, payload, sub_results)` where `sub_results` mirrors the
/// payload with each recursive position replaced by its own result.
pub fn induction(
    d: &DescFun,
    step: &dyn Fn(&Value, &Value, &Value) -> Result<Value>,
    i: &Value,
    t: &Value,
) -> Result<Value> {
    let payload = unfold(t)?;
    let subs = map_payload(&d.at(i)?, payload, &mut |j, sub| induction(d, step, j, sub))?;
    step(i, payload, &subs)
}

/// Case analysis: induction that never computes sub-results.
pub fn case_analysis(
    d: &DescFun,
    step: &dyn Fn(&Value, &Value) -> Result<Value>,
    i: &Value,
    t: &Value,
) -> Result<Value> {
    let payload = unfold(t)?;
    if !check_payload(&d.at(i)?, &mut |_, _| Ok(true), payload)? {
        return Err(KernelError::IllTypedValue(format!("{payload} does not fit {}", d.name())));
    }
    step(i, payload)
}

pub type Step<'a, R> = dyn FnMut(&Value, &Value, Vec<R>) -> Result<R> + 'a;

/// Induction into an arbitrary host type; sub-results are passed positionally.
pub fn eliminate<R>(
    d: &DescFun,
    step: &mut Step<'_, R>,
    i: &Value,
    t: &Value,
) -> Result<R> {
    let payload = unfold(t)?;
    let mut subs = Vec::new();
    for (j, sub) in positions(&d.at(i)?, payload)? {
        subs.push(eliminate(d, step, &j, &sub)?);
    }
    step(i, payload, subs)
}
