//! Membership, structural equality and bounded enumeration.

use std::collections::HashSet;

use crate::code::{Desc, DescFun, SetCode};
use crate::error::{KernelError, Result};
use crate::value::{Tag, Value};

fn distinct_tags(tags: &[Tag]) -> Result<()> {
    let mut seen = HashSet::new();
    for t in tags {
        if !seen.insert(t) {
            return Err(KernelError::IllFormedSet(format!("duplicate tag {t}")));
        }
    }
    Ok(())
}

pub fn check_value(s: &SetCode, v: &Value) -> Result<bool> {
    match s {
        SetCode::Unit => Ok(matches!(v, Value::Unit)),
        SetCode::Empty => Ok(false),
        SetCode::Enum(tags) => {
            distinct_tags(tags)?;
            Ok(v.as_tag().is_some_and(|t| tags.contains(t)))
        }
        SetCode::Sigma(a, rest) => match v {
            Value::Pair(x, y) => Ok(check_value(a, x)? && check_value(&rest(x)?, y)?),
            _ => Ok(false),
        },
        SetCode::Pi(dom, cod) => check_table(dom, v, |arg, r| check_value(&cod(arg)?, r)),
        SetCode::Eq(carrier, lhs, rhs) => {
            if !check_value(carrier, lhs)? || !check_value(carrier, rhs)? {
                return Err(KernelError::IllFormedSet(format!(
                    "equation sides {lhs} and {rhs} are not in {carrier:?}"
                )));
            }
            Ok(matches!(v, Value::Refl) && equal_value(carrier, lhs, rhs)?)
        }
        SetCode::Mu(d, i) => check_mu(d, i, v),
    }
}

fn check_mu(d: &DescFun, i: &Value, v: &Value) -> Result<bool> {
    if !check_value(d.index_set(), i)? {
        return Err(KernelError::IllFormedSet(format!(
            "index {i} is not in the index set of {}",
            d.name()
        )));
    }
    match v {
        Value::In(p) => check_payload(&d.at(i)?, &mut |j, sub| check_mu(d, j, sub), p),
        _ => Ok(false),
    }
}

fn check_table(
    dom: &SetCode,
    v: &Value,
    mut each: impl FnMut(&Value, &Value) -> Result<bool>,
) -> Result<bool> {
    let Value::Fun(table) = v else {
        return Ok(false);
    };
    let domain = complete_domain(dom)?;
    if domain.len() != table.len() {
        return Ok(false);
    }
    for (d, (arg, r)) in domain.iter().zip(table.iter()) {
        if d != arg || !each(arg, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides membership of `v` in the interpretation of `d`, with recursive
/// positions decided by `check`.
pub fn check_payload(
    d: &Desc,
    check: &mut dyn FnMut(&Value, &Value) -> Result<bool>,
    v: &Value,
) -> Result<bool> {
    match d {
        Desc::Var(i) => check(i, v),
        Desc::One => Ok(matches!(v, Value::Unit)),
        Desc::Pi(dom, fam) => check_table(dom, v, |arg, r| check_payload(&fam(arg)?, check, r)),
        Desc::Sigma { dom, fam, .. } => match v {
            Value::Pair(s, rest) => {
                Ok(check_value(dom, s)? && check_payload(&fam(s)?, check, rest)?)
            }
            _ => Ok(false),
        },
    }
}

pub fn equal_value(s: &SetCode, a: &Value, b: &Value) -> Result<bool> {
    match s {
        SetCode::Sigma(first, rest) => match (a, b) {
            (Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                Ok(equal_value(first, a1, b1)? && equal_value(&rest(a1)?, a2, b2)?)
            }
            _ => Ok(false),
        },
        SetCode::Pi(dom, cod) => {
            for d in complete_domain(dom)? {
                match (a.apply(&d), b.apply(&d)) {
                    (Some(x), Some(y)) => {
                        if !equal_value(&cod(&d)?, x, y)? {
                            return Ok(false);
                        }
                    }
                    _ => return Ok(false),
                }
            }
            Ok(true)
        }
        SetCode::Eq(..) => Ok(matches!((a, b), (Value::Refl, Value::Refl))),
        SetCode::Mu(d, i) => match (a, b) {
            (Value::In(p), Value::In(q)) => equal_payload(d, &d.at(i)?, p, q),
            _ => Ok(false),
        },
        SetCode::Unit | SetCode::Empty | SetCode::Enum(_) => Ok(a == b),
    }
}

fn equal_payload(family: &DescFun, d: &Desc, a: &Value, b: &Value) -> Result<bool> {
    match d {
        Desc::Var(i) => equal_value(&SetCode::mu(family, i.clone()), a, b),
        Desc::One => Ok(a == b),
        Desc::Pi(dom, fam) => {
            for x in complete_domain(dom)? {
                match (a.apply(&x), b.apply(&x)) {
                    (Some(p), Some(q)) => {
                        if !equal_payload(family, &fam(&x)?, p, q)? {
                            return Ok(false);
                        }
                    }
                    _ => return Ok(false),
                }
            }
            Ok(true)
        }
        Desc::Sigma { dom, fam, .. } => match (a, b) {
            (Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                Ok(equal_value(dom, a1, b1)? && equal_payload(family, &fam(a1)?, a2, b2)?)
            }
            _ => Ok(false),
        },
    }
}

/// Every inhabitant of `s` whose `In`-nesting stays within `depth`, in a
/// fixed order: tags as declared, pairs lexicographically, μ values by
/// increasing depth and then payload order.
pub fn enumerate(s: &SetCode, depth: usize) -> Result<Vec<Value>> {
    let mut truncated = false;
    enum_set(s, depth as isize, &mut truncated)
}

/// Like [`enumerate`], also reporting whether any μ set was cut off by the budget.
pub fn enumerate_bounded(s: &SetCode, depth: usize) -> Result<(Vec<Value>, bool)> {
    let mut truncated = false;
    let vals = enum_set(s, depth as isize, &mut truncated)?;
    Ok((vals, truncated))
}

const DOMAIN_BUDGET: isize = 8;

/// All inhabitants of a finite set, or `NonEnumerableDomain`.
pub fn complete_domain(dom: &SetCode) -> Result<Vec<Value>> {
    for budget in 0..=DOMAIN_BUDGET {
        let mut truncated = false;
        let vals = enum_set(dom, budget, &mut truncated)?;
        if !truncated {
            return Ok(vals);
        }
    }
    Err(KernelError::NonEnumerableDomain(format!("{dom:?}")))
}

fn enum_set(s: &SetCode, budget: isize, truncated: &mut bool) -> Result<Vec<Value>> {
    match s {
        SetCode::Unit => Ok(vec![Value::Unit]),
        SetCode::Empty => Ok(vec![]),
        SetCode::Enum(tags) => {
            distinct_tags(tags)?;
            Ok(tags.iter().map(|t| Value::Tag(t.clone())).collect())
        }
        SetCode::Sigma(first, rest) => {
            let mut out = Vec::new();
            for x in enum_set(first, budget, truncated)? {
                for y in enum_set(&rest(&x)?, budget, truncated)? {
                    out.push(Value::pair(x.clone(), y));
                }
            }
            Ok(out)
        }
        SetCode::Pi(dom, cod) => {
            let domain = complete_domain(dom)?;
            let mut columns = Vec::with_capacity(domain.len());
            for d in &domain {
                columns.push(enum_set(&cod(d)?, budget, truncated)?);
            }
            Ok(tables(&domain, &columns))
        }
        SetCode::Eq(carrier, lhs, rhs) => {
            if equal_value(carrier, lhs, rhs)? {
                Ok(vec![Value::Refl])
            } else {
                Ok(vec![])
            }
        }
        SetCode::Mu(d, i) => enum_mu(d, i, budget, truncated),
    }
}

fn enum_mu(d: &DescFun, i: &Value, budget: isize, truncated: &mut bool) -> Result<Vec<Value>> {
    if budget < 0 {
        *truncated = true;
        return Ok(vec![]);
    }
    let payloads = enum_desc(d, &d.at(i)?, budget - 1, truncated)?;
    let mut out: Vec<Value> = payloads.into_iter().map(Value::inj).collect();
    out.sort_by_key(Value::nesting);
    Ok(out)
}

fn enum_desc(
    family: &DescFun,
    d: &Desc,
    budget: isize,
    truncated: &mut bool,
) -> Result<Vec<Value>> {
    match d {
        Desc::Var(i) => enum_mu(family, i, budget, truncated),
        Desc::One => Ok(vec![Value::Unit]),
        Desc::Sigma { dom, fam, .. } => {
            let mut out = Vec::new();
            for s in enum_set(dom, budget, truncated)? {
                for rest in enum_desc(family, &fam(&s)?, budget, truncated)? {
                    out.push(Value::pair(s.clone(), rest));
                }
            }
            Ok(out)
        }
        Desc::Pi(dom, fam) => {
            let domain = complete_domain(dom)?;
            let mut columns = Vec::with_capacity(domain.len());
            for x in &domain {
                columns.push(enum_desc(family, &fam(x)?, budget, truncated)?);
            }
            Ok(tables(&domain, &columns))
        }
    }
}

/// All tables choosing one entry per column, first argument varying slowest.
fn tables(domain: &[Value], columns: &[Vec<Value>]) -> Vec<Value> {
    let mut acc: Vec<Vec<(Value, Value)>> = vec![Vec::new()];
    for (d, col) in domain.iter().zip(columns) {
        let mut next = Vec::with_capacity(acc.len() * col.len());
        for prefix in &acc {
            for r in col {
                let mut row = prefix.clone();
                row.push((d.clone(), r.clone()));
                next.push(row);
            }
        }
        acc = next;
    }
    acc.into_iter().map(Value::fun).collect()
}

/// The domain and constructor flag of every Σ node reachable in `d`,
/// following each branch its domain offers within `depth`.
pub fn sigma_nodes(d: &Desc, depth: usize) -> Result<Vec<(SetCode, bool)>> {
    let mut out = Vec::new();
    collect_sigmas(d, depth, &mut out)?;
    Ok(out)
}

fn collect_sigmas(d: &Desc, depth: usize, out: &mut Vec<(SetCode, bool)>) -> Result<()> {
    match d {
        Desc::Var(_) | Desc::One => Ok(()),
        Desc::Pi(dom, bf) => {
            for s in complete_domain(dom)? {
                collect_sigmas(&bf(&s)?, depth, out)?;
            }
            Ok(())
        }
        Desc::Sigma { dom, fam, ctor } => {
            out.push((dom.clone(), *ctor));
            for s in enumerate(dom, depth)? {
                collect_sigmas(&fam(&s)?, depth, out)?;
            }
            Ok(())
        }
    }
}
