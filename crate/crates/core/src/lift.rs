//! Lifting combinators: transport a base function's recursion over a
//! reornament argument, and lift returned constructors.

use std::sync::Arc;

use crate::check::{check_payload, check_value};
use crate::code::{Desc, SetCode};
use crate::elim::{eliminate, map_payload};
use crate::error::{ill_typed, KernelError, Result};
use crate::funorn::{FnValue, FunOrn, PatchFn};
use crate::reornament::{extension, Reorn};
use crate::value::Value;

/// One node of a reornament value: its index `(j, t)`, the extension `e`
/// and the structure payload `a`.
#[derive(Clone, Debug)]
pub struct LiftNode {
    pub index: Value,
    pub e: Value,
    pub a: Value,
}

impl LiftNode {
    fn new(index: &Value, payload: &Value) -> Result<LiftNode> {
        match payload.as_pair() {
            Some((e, a)) => Ok(LiftNode {
                index: index.clone(),
                e: e.clone(),
                a: a.clone(),
            }),
            None => ill_typed(format!("expected a reornament payload, found {payload}")),
        }
    }

    pub fn j(&self) -> &Value {
        self.index.fst().unwrap_or(&Value::Unit)
    }

    pub fn t(&self) -> &Value {
        self.index.snd().unwrap_or(&Value::Unit)
    }

    /// The payload of the base node this reornament node sits over.
    pub fn base_payload(&self) -> Result<&Value> {
        match self.t().as_in() {
            Some(xs) => Ok(xs),
            None => ill_typed(format!("index {} is not a constructor node", self.t())),
        }
    }
}

/// Folds `beta` over a reornament value. `beta` sees the node with its
/// recursive positions blanked out, and the sub-results in order.
pub fn lift_fold_value<R>(
    reorn: &Reorn,
    idx: &Value,
    t_pp: &Value,
    beta: &mut dyn FnMut(&LiftNode, Vec<R>) -> Result<R>,
) -> Result<R> {
    let family = reorn.family().clone();
    eliminate(
        reorn.family(),
        &mut |i, payload, subs| {
            let masked = map_payload(&family.at(i)?, payload, &mut |_, _| Ok(Value::Unit))?;
            beta(&LiftNode::new(i, &masked)?, subs)
        },
        idx,
        t_pp,
    )
}

/// Induction over a reornament value: the node keeps its sub-trees.
pub fn lift_ind_value<R>(
    reorn: &Reorn,
    idx: &Value,
    t_pp: &Value,
    beta: &mut dyn FnMut(&LiftNode, Vec<R>) -> Result<R>,
) -> Result<R> {
    eliminate(
        reorn.family(),
        &mut |i, payload, subs| beta(&LiftNode::new(i, payload)?, subs),
        idx,
        t_pp,
    )
}

pub fn lift_case_value<R>(
    reorn: &Reorn,
    idx: &Value,
    t_pp: &Value,
    beta: &mut dyn FnMut(&LiftNode) -> Result<R>,
) -> Result<R> {
    let Some(payload) = t_pp.as_in() else {
        return ill_typed(format!("expected a constructor node, found {t_pp}"));
    };
    if !check_payload(&reorn.family().at(idx)?, &mut |_, _| Ok(true), payload)? {
        return ill_typed(format!("{payload} does not fit the reornament at {idx}"));
    }
    beta(&LiftNode::new(idx, payload)?)
}

pub type CoherentStep = Arc<dyn Fn(&LiftNode, Vec<FnValue>) -> Result<FnValue> + Send + Sync>;
pub type CoherentCase = Arc<dyn Fn(&LiftNode) -> Result<FnValue> + Send + Sync>;

fn first_arrow(t_plus: &FunOrn) -> Result<(Reorn, Value)> {
    match t_plus {
        FunOrn::Arrow(node, w, _) => Ok((node.reorn.clone(), w.j.clone())),
        _ => Err(KernelError::IllFormedFunOrn(
            "lifting an eliminator needs an argument first".into(),
        )),
    }
}

fn over_first_arg(
    name: &str,
    t_plus: &FunOrn,
    run: impl Fn(&Reorn, &Value, &Value) -> Result<FnValue> + Send + Sync + 'static,
) -> Result<PatchFn> {
    let (reorn, j) = first_arrow(t_plus)?;
    let run = Arc::new(run);
    let body = FnValue::arrow(move |x| {
        let (reorn, run, idx) = (reorn.clone(), run.clone(), Value::pair(j.clone(), x.clone()));
        Ok(FnValue::arrow(move |xpp| run(&reorn, &idx, xpp)))
    });
    Ok(PatchFn {
        name: name.into(),
        sig: t_plus.clone(),
        body,
    })
}

/// `λ x x⁺⁺. fold β̂ x⁺⁺`.
pub fn lift_fold(name: &str, t_plus: &FunOrn, beta: CoherentStep) -> Result<PatchFn> {
    over_first_arg(name, t_plus, move |reorn, idx, xpp| {
        lift_fold_value(reorn, idx, xpp, &mut |n, subs| beta(n, subs))
    })
}

pub fn lift_ind(name: &str, t_plus: &FunOrn, beta: CoherentStep) -> Result<PatchFn> {
    over_first_arg(name, t_plus, move |reorn, idx, xpp| {
        lift_ind_value(reorn, idx, xpp, &mut |n, subs| beta(n, subs))
    })
}

pub fn lift_case(name: &str, t_plus: &FunOrn, beta: CoherentCase) -> Result<PatchFn> {
    over_first_arg(name, t_plus, move |reorn, idx, xpp| {
        lift_case_value(reorn, idx, xpp, &mut |n| beta(n))
    })
}

/// The reornament value over base node `xs` with extension `e` and
/// structure payload `a`, after checking both.
pub fn lift_constructor_value(reorn: &Reorn, j: &Value, xs: &Value, e: &Value, a: &Value) -> Result<Value> {
    let o = reorn.source();
    let ext = extension(&o.at(j)?, &o.base_at(j)?, xs)?;
    if !check_value(&ext, e)? {
        return ill_typed(format!("extension {e} is not in {ext:?}"));
    }
    let idx = Value::pair(j.clone(), Value::inj(xs.clone()));
    let Desc::Sigma { fam, .. } = reorn.family().at(&idx)? else {
        return ill_typed("reornament node does not start with its extension");
    };
    let family = reorn.family().clone();
    let fits = check_payload(
        &fam(e)?,
        &mut |i, sub| check_value(&SetCode::mu(&family, i.clone()), sub),
        a,
    )?;
    if !fits {
        return ill_typed(format!("structure argument {a} does not fit at {idx}"));
    }
    Ok(Value::inj(Value::pair(e.clone(), a.clone())))
}

/// `(In (e, a), rest)`: a lifted constructor followed by the remaining results.
pub fn lift_constructor(
    reorn: &Reorn,
    j: &Value,
    xs: &Value,
    e: &Value,
    a: &Value,
    rest: FnValue,
) -> Result<FnValue> {
    Ok(FnValue::times(lift_constructor_value(reorn, j, xs, e, a)?, rest))
}
