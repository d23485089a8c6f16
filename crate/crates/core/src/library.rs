//! Hand-coded descriptions for the running examples, plus value builders.

use crate::code::{fam, konst, Algebra, Desc, DescFun, SetCode};
use crate::error::{ill_typed, Result};
use crate::value::Value;

pub fn nat_desc() -> DescFun {
    DescFun::simple(
        "Nat",
        Desc::choice(vec![("zero", Desc::One), ("suc", Desc::Var(Value::Unit))]),
    )
}

pub fn nat_set() -> SetCode {
    SetCode::mu(&nat_desc(), Value::Unit)
}

pub fn bool_desc() -> DescFun {
    DescFun::simple("Bool", Desc::choice(vec![("true", Desc::One), ("false", Desc::One)]))
}

pub fn bool_set() -> SetCode {
    SetCode::mu(&bool_desc(), Value::Unit)
}

pub fn list_desc(a: SetCode) -> DescFun {
    DescFun::simple(
        "List",
        Desc::choice(vec![
            ("nil", Desc::One),
            ("cons", Desc::field(a, Desc::Var(Value::Unit))),
        ]),
    )
}

pub fn con(tag: &str, fields: Value) -> Value {
    Value::inj(Value::pair(Value::tag(tag), fields))
}

pub fn nat(n: usize) -> Value {
    (0..n).fold(con("zero", Value::Unit), |acc, _| con("suc", acc))
}

/// Reads a unary numeral built from any two-constructor nat-shaped family.
pub fn to_nat(v: &Value) -> Option<usize> {
    let mut n = 0;
    let mut cur = v;
    loop {
        let (_, rest) = cur.as_in()?.as_pair()?;
        match rest {
            Value::Unit => return Some(n),
            Value::In(_) => {
                n += 1;
                cur = rest;
            }
            _ => return None,
        }
    }
}

pub fn boolean(b: bool) -> Value {
    con(if b { "true" } else { "false" }, Value::Unit)
}

pub fn to_bool(v: &Value) -> Option<bool> {
    match v.as_in()?.fst()?.as_tag()?.as_str() {
        "true" => Some(true),
        "false" => Some(false),
        _ => None,
    }
}

pub fn list(items: &[Value]) -> Value {
    items.iter().rev().fold(con("nil", Value::Unit), |acc, a| {
        con("cons", Value::pair(a.clone(), acc))
    })
}

pub fn to_list(v: &Value) -> Option<Vec<Value>> {
    let mut out = Vec::new();
    let mut cur = v;
    loop {
        let (tag, rest) = cur.as_in()?.as_pair()?;
        match tag.as_tag()?.as_str() {
            "nil" => return Some(out),
            "cons" => {
                let (a, tail) = rest.as_pair()?;
                out.push(a.clone());
                cur = tail;
            }
            _ => return None,
        }
    }
}

fn head_tag(payload: &Value) -> Result<&str> {
    match payload.fst().and_then(Value::as_tag) {
        Some(t) => Ok(t.as_str()),
        None => ill_typed(format!("expected a tagged payload, found {payload}")),
    }
}

pub fn length_alg() -> Algebra {
    Algebra::new("length", konst(nat_set()), |_, payload| match head_tag(payload)? {
        "nil" => Ok(nat(0)),
        _ => Ok(con("suc", payload.snd().and_then(Value::snd).cloned().unwrap_or(Value::Unit))),
    })
}

pub fn is_suc_alg() -> Algebra {
    Algebra::new("isSuc", fam(|_| Ok(bool_set())), |_, payload| {
        Ok(boolean(head_tag(payload)? == "suc"))
    })
}

/// `List A` as an ornament of `Nat`: `suc` becomes `cons` and gains an `a : A`.
pub fn list_orn(a: SetCode) -> crate::ornament::Ornament {
    use crate::ornament::{InvWitness, OrnCode, Ornament, Reindexing, Relabel};
    let relabel = Relabel::new(vec![("zero".into(), "nil".into()), ("suc".into(), "cons".into())]);
    let code = OrnCode::Sigma {
        fam: fam(move |s| match s.as_tag().map(|t| t.as_str()) {
            Some("zero") => Ok(OrnCode::One),
            _ => Ok(OrnCode::insert_named(
                "a",
                a.clone(),
                konst(OrnCode::Var(InvWitness::same(Value::Unit))),
            )),
        }),
        relabel: Some(relabel),
    };
    Ornament::new("ListOrn", nat_desc(), Reindexing::identity(SetCode::Unit), konst(code))
}

/// `Maybe A` as an ornament of `Bool`: `true` becomes `just` and gains an `a : A`.
pub fn maybe_orn(a: SetCode) -> crate::ornament::Ornament {
    use crate::ornament::{OrnCode, Ornament, Reindexing, Relabel};
    let relabel = Relabel::new(vec![("true".into(), "just".into()), ("false".into(), "nothing".into())]);
    let code = OrnCode::Sigma {
        fam: fam(move |s| match s.as_tag().map(|t| t.as_str()) {
            Some("true") => Ok(OrnCode::insert_named("a", a.clone(), konst(OrnCode::One))),
            _ => Ok(OrnCode::One),
        }),
        relabel: Some(relabel),
    };
    Ornament::new("MaybeOrn", bool_desc(), Reindexing::identity(SetCode::Unit), konst(code))
}

pub fn maybe_desc(a: SetCode) -> DescFun {
    DescFun::simple(
        "Maybe",
        Desc::choice(vec![("just", Desc::field(a, Desc::One)), ("nothing", Desc::One)]),
    )
}

/// Naturals indexed by a bound `n`; the recursive index is the predecessor of `n`.
pub fn below_desc() -> DescFun {
    DescFun::new(
        "Below",
        nat_set(),
        fam(|n| {
            let pred = match n.as_in().and_then(Value::snd) {
                Some(p @ Value::In(_)) => p.clone(),
                _ => nat(0),
            };
            Ok(Desc::choice(vec![("zero", Desc::One), ("suc", Desc::Var(pred))]))
        }),
    )
}

/// `m < n` as a fold over `Below n`.
pub fn lt_alg() -> Algebra {
    Algebra::new("lt", konst(bool_set()), |n, payload| {
        let bound = to_nat(n).unwrap_or(0);
        match head_tag(payload)? {
            "zero" => Ok(boolean(bound > 0)),
            _ if bound == 0 => Ok(boolean(false)),
            _ => Ok(payload.snd().cloned().unwrap_or(Value::Unit)),
        }
    })
}
