//! Type-directed evaluation of surface expressions and sets.

use std::sync::Arc;

use ornate_core::check::complete_domain;
use ornate_core::{fam, Desc, DescFun, KernelError, SetCode, Tag, Value};

use crate::ast::{Elim, Expr, Pat, SetExpr};
use crate::env::Env;

pub type KResult<T> = ornate_core::Result<T>;

pub fn bad<T>(msg: impl Into<String>) -> KResult<T> {
    Err(KernelError::IllTypedValue(msg.into()))
}

/// The innermost `ind` branch: which argument it eliminates and the
/// sub-terms a recursive call may pass there.
#[derive(Clone, Debug)]
pub struct IndFrame {
    pub arg: usize,
    pub subs: Vec<String>,
}

#[derive(Clone, Default)]
pub struct Scope {
    vars: Vec<(Arc<str>, Value, SetCode)>,
    pub ind: Option<Arc<IndFrame>>,
}

impl Scope {
    pub fn bind(&self, name: &str, v: Value, s: SetCode) -> Scope {
        let mut out = self.clone();
        out.vars.push((Arc::from(name), v, s));
        out
    }

    pub fn push(&mut self, name: &str, v: Value, s: SetCode) {
        self.vars.push((Arc::from(name), v, s));
    }

    pub fn get(&self, name: &str) -> Option<(&Value, &SetCode)> {
        self.vars
            .iter()
            .rev()
            .find(|(n, ..)| &**n == name)
            .map(|(_, v, s)| (v, s))
    }
}

/// A base function elaborated from a `fun` declaration.
pub struct FunCore {
    pub name: String,
    pub args: Vec<String>,
    pub arg_sets: Vec<SetCode>,
    pub results: Vec<SetCode>,
    pub body: Expr,
    pub env: Arc<Env>,
}

impl FunCore {
    pub fn run(self: &Arc<Self>, args: &[Value]) -> KResult<Vec<Value>> {
        if args.len() != self.args.len() {
            return bad(format!("{} takes {} arguments", self.name, self.args.len()));
        }
        let mut scope = Scope::default();
        for ((n, v), s) in self.args.iter().zip(args).zip(&self.arg_sets) {
            scope.push(n, v.clone(), s.clone());
        }
        let cx = Cx { env: self.env.clone(), fun: Some(self.clone()) };
        eval(&cx, &scope, &self.body, &self.results)
    }
}

#[derive(Clone)]
pub struct Cx {
    pub env: Arc<Env>,
    pub fun: Option<Arc<FunCore>>,
}

impl Cx {
    pub fn new(env: Arc<Env>) -> Cx {
        Cx { env, fun: None }
    }
}

pub fn eval_set(cx: &Cx, scope: &Scope, s: &SetExpr) -> KResult<SetCode> {
    match s {
        SetExpr::Unit => Ok(SetCode::Unit),
        SetExpr::Empty => Ok(SetCode::Empty),
        SetExpr::Enum(tags) => Ok(SetCode::enumeration(tags)),
        SetExpr::Name(n) => {
            if let Some(p) = cx.env.param(n) {
                return Ok(p.clone());
            }
            match cx.env.family(n) {
                Some(f) if matches!(f.index_set(), SetCode::Unit) => Ok(SetCode::mu(&f, Value::Unit)),
                Some(_) => bad(format!("{n} is indexed; write (mu {n} INDEX)")),
                None => Err(KernelError::IllFormedSet(format!("unknown set {n}"))),
            }
        }
        SetExpr::Sigma(v, a, b) | SetExpr::Pi(v, a, b) => {
            let dom = eval_set(cx, scope, a)?;
            let (cx2, sc, v, b, d2) = (cx.clone(), scope.clone(), v.clone(), b.clone(), dom.clone());
            let rest = fam(move |x| eval_set(&cx2, &sc.bind(&v, x.clone(), d2.clone()), &b));
            Ok(if matches!(s, SetExpr::Sigma(..)) {
                SetCode::sigma(dom, rest)
            } else {
                SetCode::pi(dom, rest)
            })
        }
        SetExpr::Eq(c, a, b) => {
            let c = eval_set(cx, scope, c)?;
            let a = value(cx, scope, a, &c)?;
            let b = value(cx, scope, b, &c)?;
            Ok(SetCode::eq(c, a, b))
        }
        SetExpr::Mu(n, i) => {
            let Some(f) = cx.env.family(n) else {
                return Err(KernelError::IllFormedSet(format!("unknown family {n}")));
            };
            let i = value(cx, scope, i, f.index_set())?;
            Ok(SetCode::mu(&f, i))
        }
    }
}

pub fn value(cx: &Cx, scope: &Scope, e: &Expr, expected: &SetCode) -> KResult<Value> {
    let mut vs = eval(cx, scope, e, std::slice::from_ref(expected))?;
    Ok(vs.remove(0))
}

fn single<'a>(expected: &'a [SetCode], e: &Expr) -> KResult<&'a SetCode> {
    match expected {
        [s] => Ok(s),
        _ => bad(format!("{} results expected where a single value is written: {e:?}", expected.len())),
    }
}

/// Evaluates `e` against the expected result sets.
pub fn eval(cx: &Cx, scope: &Scope, e: &Expr, expected: &[SetCode]) -> KResult<Vec<Value>> {
    match e {
        Expr::Elim(kind, var, branches) => eval_elim(cx, scope, *kind, var, branches, expected),
        Expr::Values(items) => {
            if items.len() != expected.len() {
                return bad(format!("{} values given where {} are expected", items.len(), expected.len()));
            }
            items.iter().zip(expected).map(|(x, s)| value(cx, scope, x, s)).collect()
        }
        Expr::Call(args) => call(cx, scope, args),
        Expr::App(f, args) if cx.env.fun(f).is_some() && !names_ctor(cx, f, expected)? => {
            let core = cx.env.fun(f).unwrap().core.clone();
            if core.results.len() != expected.len() {
                return bad(format!("{f} returns {} results", core.results.len()));
            }
            let vals = args_against(cx, scope, args, &core.arg_sets, f)?;
            core.run(&vals)
        }
        _ => Ok(vec![leaf(cx, scope, e, single(expected, e)?)?]),
    }
}

fn args_against(cx: &Cx, scope: &Scope, args: &[Expr], sets: &[SetCode], f: &str) -> KResult<Vec<Value>> {
    if args.len() != sets.len() {
        return bad(format!("{f} takes {} arguments, {} given", sets.len(), args.len()));
    }
    args.iter().zip(sets).map(|(a, s)| value(cx, scope, a, s)).collect()
}

fn names_ctor(cx: &Cx, c: &str, expected: &[SetCode]) -> KResult<bool> {
    match expected {
        [SetCode::Mu(f, i)] => is_ctor_of(&cx.env, f, i, c),
        _ => Ok(false),
    }
}

fn call(cx: &Cx, scope: &Scope, args: &[Expr]) -> KResult<Vec<Value>> {
    let Some(f) = &cx.fun else { return bad("`call` outside a function body") };
    let Some(frame) = &scope.ind else { return bad("`call` outside an `ind` branch") };
    match args.get(frame.arg) {
        Some(Expr::Name(n)) if frame.subs.contains(n) => {}
        _ => {
            return bad(format!(
                "recursive call of {} must pass a sub-term in argument {}",
                f.name, frame.arg
            ))
        }
    }
    let vals = args_against(cx, scope, args, &f.arg_sets, &f.name)?;
    f.run(&vals)
}

fn leaf(cx: &Cx, scope: &Scope, e: &Expr, s: &SetCode) -> KResult<Value> {
    match e {
        Expr::Name(n) => {
            if let Some((v, _)) = scope.get(n) {
                return Ok(v.clone());
            }
            match n.as_str() {
                "unit" => return Ok(Value::Unit),
                "refl" => return Ok(Value::Refl),
                _ => {}
            }
            if let SetCode::Mu(f, i) = s {
                if let Some(r) = through_view(cx, scope, e, f, i) {
                    return r;
                }
            }
            match s {
                SetCode::Enum(tags) if tags.iter().any(|t| t.as_str() == n) => Ok(Value::tag(n)),
                SetCode::Mu(f, i) if is_ctor_of(&cx.env, f, i, n)? => construct(cx, scope, n, &[], f, i),
                _ => bad(format!("unknown name {n} at {}", crate::print::show_set(&cx.env, s))),
            }
        }
        Expr::Tag(t) => Ok(Value::tag(t)),
        Expr::Num(k) => match s {
            SetCode::Mu(f, i) => through_view(cx, scope, e, f, i).unwrap_or_else(|| numeral(f, i, *k)),
            _ => bad(format!("numeral {k} where {} is expected", crate::print::show_set(&cx.env, s))),
        },
        Expr::Pair(a, b) => match s {
            SetCode::Sigma(first, rest) => {
                let a = value(cx, scope, a, first)?;
                let b = value(cx, scope, b, &rest(&a)?)?;
                Ok(Value::pair(a, b))
            }
            _ => bad(format!("pair where {} is expected", crate::print::show_set(&cx.env, s))),
        },
        Expr::Table(rows) => match s {
            SetCode::Pi(dom, cod) => {
                let mut table = Vec::new();
                for (x, y) in rows {
                    let x = value(cx, scope, x, dom)?;
                    let y = value(cx, scope, y, &cod(&x)?)?;
                    table.push((x, y));
                }
                Ok(Value::fun(table))
            }
            _ => bad(format!("table where {} is expected", crate::print::show_set(&cx.env, s))),
        },
        Expr::In(args) => match s {
            SetCode::Mu(f, i) => {
                let mut it = args.iter();
                let p = fill(cx, scope, f, &f.at(i)?, &mut it)?;
                if it.next().is_some() {
                    return bad(format!("too many fields for {} at {i}", f.name()));
                }
                Ok(Value::inj(p))
            }
            _ => bad("`in` outside a family"),
        },
        Expr::App(c, args) => match s {
            SetCode::Mu(f, i) => through_view(cx, scope, e, f, i).unwrap_or_else(|| construct(cx, scope, c, args, f, i)),
            _ => bad(format!("{c} applied where {} is expected", crate::print::show_set(&cx.env, s))),
        },
        Expr::Elim(..) | Expr::Call(_) | Expr::Values(_) => {
            let mut v = eval(cx, scope, e, std::slice::from_ref(s))?;
            Ok(v.remove(0))
        }
    }
}

/// Whether `c` names a constructor of `f` at `i`.
pub fn is_ctor_of(env: &Env, f: &DescFun, i: &Value, c: &str) -> KResult<bool> {
    match f.at(i)? {
        Desc::Sigma { dom: SetCode::Enum(tags), ctor: true, .. } => Ok(tags.iter().any(|t| t.as_str() == c)),
        _ => Ok(env.alt_name(f.name(), i)?.as_deref() == Some(c)),
    }
}

pub fn construct(cx: &Cx, scope: &Scope, c: &str, args: &[Expr], f: &DescFun, i: &Value) -> KResult<Value> {
    let d = f.at(i)?;
    let mut it = args.iter();
    let payload = match &d {
        Desc::Sigma { dom: SetCode::Enum(tags), fam: rest, ctor: true } => {
            if !tags.iter().any(|t| t.as_str() == c) {
                return bad(format!("{c} is not a constructor of {} at {i}", f.name()));
            }
            let t = Value::tag(c);
            let p = fill(cx, scope, f, &rest(&t)?, &mut it)?;
            Value::pair(t, p)
        }
        _ => {
            if cx.env.alt_name(f.name(), i)?.as_deref() != Some(c) {
                return bad(format!("{c} is not a constructor of {} at {i}", f.name()));
            }
            fill(cx, scope, f, &d, &mut it)?
        }
    };
    if it.next().is_some() {
        return bad(format!("too many arguments for {c}"));
    }
    Ok(Value::inj(payload))
}

/// Builds a payload from the remaining arguments; equation fields are filled with `refl`.
fn fill(cx: &Cx, scope: &Scope, f: &DescFun, d: &Desc, args: &mut std::slice::Iter<Expr>) -> KResult<Value> {
    let mut next = |what: &str| match args.next() {
        Some(a) => Ok(a),
        None => bad(format!("missing argument for {what}")),
    };
    match d {
        Desc::One => Ok(Value::Unit),
        Desc::Var(j) => value(cx, scope, next("a recursive field")?, &SetCode::mu(f, j.clone())),
        Desc::Sigma { dom: SetCode::Eq(..), fam: rest, .. } => {
            Ok(Value::pair(Value::Refl, fill(cx, scope, f, &rest(&Value::Refl)?, args)?))
        }
        Desc::Sigma { dom, fam: rest, .. } => {
            let a = value(cx, scope, next("a field")?, dom)?;
            let p = fill(cx, scope, f, &rest(&a)?, args)?;
            Ok(Value::pair(a, p))
        }
        Desc::Pi(dom, rest) => {
            let mut table = Vec::new();
            for x in complete_domain(dom)? {
                let p = fill(cx, scope, f, &rest(&x)?, args)?;
                table.push((x, p));
            }
            Ok(Value::fun(table))
        }
    }
}

/// The numeral `k` in a family shaped like the naturals.
pub fn numeral(f: &DescFun, i: &Value, k: usize) -> KResult<Value> {
    let Some(pred) = nat_shape(f, i)? else {
        return bad(format!("{} has no numerals", f.name()));
    };
    match (k, pred) {
        (0, _) => Ok(Value::inj(Value::pair(Value::tag("zero"), Value::Unit))),
        (k, Some(j)) => Ok(Value::inj(Value::pair(Value::tag("suc"), numeral(f, &j, k - 1)?))),
        _ => bad("numeral at an index without successors"),
    }
}

/// `Some(pred index)` when `f` at `i` is a `zero | suc` choice.
pub fn nat_shape(f: &DescFun, i: &Value) -> KResult<Option<Option<Value>>> {
    let Desc::Sigma { dom: SetCode::Enum(tags), fam: rest, ctor: true } = f.at(i)? else {
        return Ok(None);
    };
    if tags.len() != 2 || tags[0].as_str() != "zero" || tags[1].as_str() != "suc" {
        return Ok(None);
    }
    match (rest(&Value::tag("zero"))?, rest(&Value::tag("suc"))?) {
        (Desc::One, Desc::Var(j)) => Ok(Some(Some(j))),
        _ => Ok(None),
    }
}

/// Reads a numeral back, if `v` is one.
pub fn as_numeral(f: &DescFun, i: &Value, v: &Value) -> KResult<Option<usize>> {
    let mut n = 0;
    let (mut i, mut v) = (i.clone(), v.clone());
    loop {
        let Some(pred) = nat_shape(f, &i)? else { return Ok(None) };
        let Some((t, rest)) = v.as_in().and_then(Value::as_pair) else { return Ok(None) };
        match (t.as_tag().map(Tag::as_str), pred) {
            (Some("zero"), _) => return Ok(Some(n)),
            (Some("suc"), Some(j)) => {
                n += 1;
                let rest = rest.clone();
                i = j;
                v = rest;
            }
            _ => return Ok(None),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FieldVal {
    pub value: Value,
    pub set: SetCode,
    pub eq: bool,
    pub rec: bool,
}

/// A node split into its constructor and fields.
#[derive(Clone, Debug)]
pub struct Node {
    pub name: Option<String>,
    pub fields: Vec<FieldVal>,
}

impl Node {
    /// Fields a pattern binds: everything but equations.
    pub fn bindable(&self) -> impl Iterator<Item = &FieldVal> {
        self.fields.iter().filter(|f| !f.eq)
    }
}

pub fn destructure(
    env: &Env,
    f: &DescFun,
    i: &Value,
    payload: &Value,
    var_set: &dyn Fn(&Value) -> KResult<SetCode>,
) -> KResult<Node> {
    let mut fields = Vec::new();
    match f.at(i)? {
        Desc::Sigma { dom: SetCode::Enum(_), fam: rest, ctor: true } => {
            let Some((t, p)) = payload.as_pair() else {
                return bad(format!("{payload} is not a constructor node"));
            };
            collect(&rest(t)?, p, var_set, &mut fields)?;
            Ok(Node { name: t.as_tag().map(|t| t.as_str().to_string()), fields })
        }
        d => {
            collect(&d, payload, var_set, &mut fields)?;
            Ok(Node { name: env.alt_name(f.name(), i)?, fields })
        }
    }
}

fn collect(d: &Desc, p: &Value, var_set: &dyn Fn(&Value) -> KResult<SetCode>, out: &mut Vec<FieldVal>) -> KResult<()> {
    match d {
        Desc::One => Ok(()),
        Desc::Var(j) => {
            out.push(FieldVal { value: p.clone(), set: var_set(j)?, eq: false, rec: true });
            Ok(())
        }
        Desc::Sigma { dom, fam: rest, .. } => {
            let Some((a, b)) = p.as_pair() else { return bad(format!("{p} is not a field pair")) };
            out.push(FieldVal { value: a.clone(), set: dom.clone(), eq: matches!(dom, SetCode::Eq(..)), rec: false });
            collect(&rest(a)?, b, var_set, out)
        }
        Desc::Pi(dom, rest) => {
            for x in complete_domain(dom)? {
                let Some(px) = p.apply(&x) else { return bad(format!("{p} has no entry for {x}")) };
                collect(&rest(&x)?, px, var_set, out)?;
            }
            Ok(())
        }
    }
}

pub fn pat_matches(p: &Pat, name: Option<&str>) -> bool {
    match (p, name) {
        (Pat::Wild, _) | (_, None) => true,
        (Pat::Ctor(c, _), Some(n)) => c == n,
    }
}

/// Pairs pattern variables with the node's bindable fields.
pub fn bind_pattern<'a>(p: &'a Pat, node: &'a Node) -> KResult<Vec<(&'a str, &'a FieldVal)>> {
    let vars: &[String] = match p {
        Pat::Wild => return Ok(Vec::new()),
        Pat::Ctor(_, vars) => vars,
    };
    let fields: Vec<&FieldVal> = node.bindable().collect();
    if vars.is_empty() {
        return Ok(Vec::new());
    }
    if vars.len() != fields.len() {
        return bad(format!(
            "pattern {} binds {} variables but the constructor has {} fields",
            p.ctor().unwrap_or("_"),
            vars.len(),
            fields.len()
        ));
    }
    Ok(vars.iter().map(String::as_str).zip(fields).collect())
}

/// Finds the branch whose pattern matches `v : s`, with its bindings.
pub fn select_branch<'a, B>(
    env: &Env,
    branches: &'a [(Pat, B)],
    v: &Value,
    s: &SetCode,
) -> KResult<(&'a Pat, &'a B, Option<Node>)> {
    match s {
        SetCode::Mu(f, i) => {
            let Some(payload) = v.as_in() else { return bad(format!("{v} is not a constructor node")) };
            let fc = f.clone();
            let node = destructure(env, f, i, payload, &move |j| Ok(SetCode::mu(&fc, j.clone())))?;
            for (p, b) in branches {
                if pat_matches(p, node.name.as_deref()) {
                    return Ok((p, b, Some(node)));
                }
            }
            bad(format!("no branch for {}", node.name.as_deref().unwrap_or("this node")))
        }
        SetCode::Enum(_) => {
            let t = v.as_tag().map(Tag::as_str);
            for (p, b) in branches {
                if pat_matches(p, t) {
                    return Ok((p, b, None));
                }
            }
            bad(format!("no branch for {v}"))
        }
        _ => bad(format!("cannot branch on {v}")),
    }
}

fn eval_elim(
    cx: &Cx,
    scope: &Scope,
    kind: Elim,
    var: &str,
    branches: &[(Pat, Expr)],
    expected: &[SetCode],
) -> KResult<Vec<Value>> {
    let Some((v, s)) = scope.get(var) else { return bad(format!("unbound variable {var}")) };
    let (v, s) = (v.clone(), s.clone());
    let (pat, body, node) = select_branch(&cx.env, branches, &v, &s)?;
    let mut sc = scope.clone();
    let Some(node) = node else { return eval(cx, &sc, body, expected) };
    let binds = bind_pattern(pat, &node)?;
    match kind {
        Elim::Case => {
            for (n, f) in &binds {
                sc.push(n, f.value.clone(), f.set.clone());
            }
        }
        Elim::Ind => {
            for (n, f) in &binds {
                sc.push(n, f.value.clone(), f.set.clone());
            }
            let arg = cx.fun.as_ref().and_then(|f| f.args.iter().position(|a| a == var));
            sc.ind = arg.map(|arg| {
                Arc::new(IndFrame {
                    arg,
                    subs: binds.iter().filter(|(_, f)| f.rec).map(|(n, _)| n.to_string()).collect(),
                })
            });
        }
        Elim::Fold => {
            let [res] = expected else { return bad("`fold` computes a single result") };
            for (n, f) in &binds {
                if f.rec {
                    let inner = scope.bind(var, f.value.clone(), f.set.clone());
                    let r = eval_elim(cx, &inner, kind, var, branches, expected)?;
                    sc.push(n, r[0].clone(), res.clone());
                } else {
                    sc.push(n, f.value.clone(), f.set.clone());
                }
            }
        }
    }
    eval(cx, &sc, body, expected)
}

/// How values of a derived family are written: through the family they refine.
pub enum View {
    Reorn(ornate_core::ornament::Ornament),
    Alg(ornate_core::algebraic::AlgOrnament),
}

impl View {
    /// The set whose values stand for values of `f` at `idx`.
    pub fn shown_set(&self, idx: &Value) -> KResult<SetCode> {
        let Some((j, _)) = idx.as_pair() else { return bad(format!("{idx} is not an index pair")) };
        Ok(match self {
            View::Reorn(o) => SetCode::mu(&ornate_core::ornament::interp_orn(o), j.clone()),
            View::Alg(ao) => SetCode::mu(ao.base(), j.clone()),
        })
    }

    pub fn forget(&self, idx: &Value, v: &Value) -> KResult<Value> {
        match self {
            View::Reorn(o) => ornate_core::reornament::forget_reorn(o, idx, v),
            View::Alg(ao) => ornate_core::ornament::orn_forget(ao.ornament(), idx, v),
        }
    }

    /// The value of `f` at `idx` standing for `t`, if `t` lies over `idx`.
    pub fn remember(&self, idx: &Value, t: &Value) -> KResult<Value> {
        let (Some((j, want)), s) = (idx.as_pair(), self.shown_set(idx)?) else {
            return bad(format!("{idx} is not an index pair"));
        };
        match self {
            View::Reorn(o) => {
                let (base, tpp) = ornate_core::reornament::remember_reorn(o, j, t)?;
                let SetCode::Mu(_, i) = s else { unreachable!() };
                let bset = SetCode::mu(o.base(), o.re().apply(&i)?);
                if !ornate_core::equal_value(&bset, &base, want)? {
                    return bad(format!("the value lies over {base}, not {want}"));
                }
                Ok(tpp)
            }
            View::Alg(ao) => {
                let v = ornate_core::algebraic::remember(ao.base(), ao.algebra(), j, t)?;
                if !ornate_core::check_value(&ao.set_at(j.clone(), want.clone()), &v)? {
                    return bad(format!("the value does not fold to {want}"));
                }
                Ok(v)
            }
        }
    }
}

pub fn view_of(env: &Env, f: &DescFun) -> Option<View> {
    if let Some(r) = env.reorn(f.name()) {
        return Some(View::Reorn(r.source().clone()));
    }
    if let Some(ao) = env.algebraic(f.name()) {
        return Some(View::Alg(ao.clone()));
    }
    let inner = f.name().strip_suffix('^')?;
    if let Some(o) = env.ornament(inner) {
        return Some(View::Reorn(o));
    }
    let base = inner.strip_prefix("id{")?.strip_suffix('}')?;
    env.family(base).map(|d| View::Reorn(ornate_core::ornament::id_orn(&d)))
}

/// Evaluates `e` through the view of a derived family, when it has one.
fn through_view(cx: &Cx, scope: &Scope, e: &Expr, f: &DescFun, idx: &Value) -> Option<KResult<Value>> {
    let view = view_of(&cx.env, f)?;
    Some(view.shown_set(idx).and_then(|s| value(cx, scope, e, &s)).and_then(|t| view.remember(idx, &t)))
}
