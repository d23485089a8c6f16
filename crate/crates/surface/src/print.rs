//! Printing sets, values and descriptions back in surface syntax.

use ornate_core::check::complete_domain;
use ornate_core::{Desc, DescFun, SetCode, Value};

use crate::env::Env;
use crate::eval::{as_numeral, destructure, view_of};

/// Largest domain spelled out case by case.
const SPELL_OUT: usize = 8;

fn small_domain(s: &SetCode) -> Option<Vec<Value>> {
    match s {
        SetCode::Mu(..) => None,
        _ => complete_domain(s).ok().filter(|d| d.len() <= SPELL_OUT),
    }
}

pub fn show_set(env: &Env, s: &SetCode) -> String {
    match s {
        SetCode::Unit => "unit".into(),
        SetCode::Empty => "empty".into(),
        SetCode::Enum(tags) => {
            let same = |p: &SetCode| matches!(p, SetCode::Enum(t) if t[..] == tags[..]);
            if let Some((name, _)) = env.params().iter().find(|(_, p)| same(p)) {
                return name.clone();
            }
            let mut out = String::from("(enum");
            for t in tags.iter() {
                out.push(' ');
                out.push_str(t.as_str());
            }
            out.push(')');
            out
        }
        SetCode::Sigma(a, b) => format!("(sigma x {} {})", show_set(env, a), show_fam(env, a, b)),
        SetCode::Pi(a, b) => format!("(pi x {} {})", show_set(env, a), show_fam(env, a, b)),
        SetCode::Eq(c, x, y) => format!("(eq {} {} {})", show_set(env, c), show_value(env, c, x), show_value(env, c, y)),
        SetCode::Mu(f, i) => match f.index_set() {
            SetCode::Unit => f.name().to_string(),
            is => format!("(mu {} {})", f.name(), show_value(env, is, i)),
        },
    }
}

/// The second component of a Σ or Π set, when it does not depend on the first.
fn show_fam(env: &Env, a: &SetCode, b: &ornate_core::Fam<SetCode>) -> String {
    let shown: Option<Vec<String>> = small_domain(a)
        .filter(|d| !d.is_empty())
        .and_then(|d| d.iter().map(|x| b(x).ok().map(|s| show_set(env, &s))).collect());
    match shown {
        Some(v) if v.iter().all(|s| *s == v[0]) => v[0].clone(),
        _ => "_".into(),
    }
}

pub fn show_value(env: &Env, s: &SetCode, v: &Value) -> String {
    match (s, v) {
        (_, Value::Unit) => "unit".into(),
        (_, Value::Refl) => "refl".into(),
        (_, Value::Tag(t)) => t.as_str().to_string(),
        (SetCode::Sigma(a, b), Value::Pair(x, y)) => {
            let second = b(x).map(|bs| show_value(env, &bs, y)).unwrap_or_else(|_| y.to_string());
            format!("(pair {} {second})", show_value(env, a, x))
        }
        (SetCode::Pi(_, b), Value::Fun(table)) => {
            let mut out = String::from("(fun");
            for (x, y) in table.iter() {
                let shown_y = b(x).map(|bs| show_value(env, &bs, y)).unwrap_or_else(|_| y.to_string());
                out.push_str(&format!(" ({x} {shown_y})"));
            }
            out.push(')');
            out
        }
        (SetCode::Mu(f, i), Value::In(p)) => show_node(env, f, i, v, p),
        _ => v.to_string(),
    }
}

fn show_node(env: &Env, f: &DescFun, i: &Value, v: &Value, p: &Value) -> String {
    if let Some(view) = view_of(env, f) {
        if let (Ok(s), Ok(t)) = (view.shown_set(i), view.forget(i, v)) {
            return show_value(env, &s, &t);
        }
    }
    if let Ok(Some(n)) = as_numeral(f, i, v) {
        return n.to_string();
    }
    let fc = f.clone();
    let Ok(node) = destructure(env, f, i, p, &|j| Ok(SetCode::mu(&fc, j.clone()))) else {
        return v.to_string();
    };
    let fields: Vec<String> = node.bindable().map(|fv| show_value(env, &fv.set, &fv.value)).collect();
    match (node.name, fields.is_empty()) {
        (Some(c), true) => c,
        (Some(c), false) => format!("({c} {})", fields.join(" ")),
        (None, _) => format!("(in {})", fields.join(" ")).replace("(in )", "(in)"),
    }
}

/// A description of `f` at one index.
pub fn show_desc(env: &Env, f: &DescFun, d: &Desc) -> String {
    match d {
        Desc::Var(j) => format!("(var {})", show_value(env, f.index_set(), j)),
        Desc::One => "one".into(),
        Desc::Sigma { dom: SetCode::Enum(tags), fam: rest, ctor: true } => {
            let mut out = String::from("(choice");
            for t in tags.iter() {
                let body = rest(&Value::Tag(t.clone())).map(|d| show_desc(env, f, &d)).unwrap_or_else(|e| e.to_string());
                out.push_str(&format!(" ({} {body})", t.as_str()));
            }
            out.push(')');
            out
        }
        Desc::Sigma { dom, fam: rest, .. } | Desc::Pi(dom, rest) => {
            let kw = if matches!(d, Desc::Pi(..)) { "pi" } else { "sigma" };
            let dom_s = show_set(env, dom);
            let Some(xs) = small_domain(dom) else {
                return format!("({kw} {dom_s} _)");
            };
            let bodies: Vec<(String, String)> = xs
                .iter()
                .map(|x| {
                    let body = rest(x).map(|d| show_desc(env, f, &d)).unwrap_or_else(|e| e.to_string());
                    (show_value(env, dom, x), body)
                })
                .collect();
            if !bodies.is_empty() && bodies.iter().all(|(_, b)| *b == bodies[0].1) {
                return format!("({kw} {dom_s} {})", bodies[0].1);
            }
            let cases: Vec<String> = bodies.into_iter().map(|(x, b)| format!("({x} {b})")).collect();
            format!("({kw} {dom_s} {})", cases.join(" "))
        }
    }
}
