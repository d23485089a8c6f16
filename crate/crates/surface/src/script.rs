//! Lifting scripts: Patch inhabitants assembled by following a base
//! function's skeleton, and functions derived through the adjunction.

use std::cell::RefCell;
use std::sync::Arc;

use ornate_core::adjoint::{rl_adjoint, IndexedFnLeft};
use ornate_core::algebraic::AlgOrnament;
use ornate_core::check::{complete_domain, enumerate};
use ornate_core::funorn::{patch, FnValue, FunOrn, LiftedFn, OrnNode, PatchFn};
use ornate_core::lift::{lift_case_value, lift_constructor_value, lift_fold_value, LiftNode};
use ornate_core::ornament::{interp_orn, InvWitness, OrnCode};
use ornate_core::reornament::{forget_reorn, Reorn};
use ornate_core::{fam, Desc, Fam, DescFun, SetCode, Value};

use crate::ast::{Elim, ExtArg, LiftDecl, Pat, Script};
use crate::elab::{ElabError, FunDef, Skel};
use crate::env::Env;
use crate::eval::{bad, bind_pattern, destructure, pat_matches, value, Cx, KResult, Scope};
use crate::print::show_set;

/// One line of a hole report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleLine {
    pub path: String,
    /// The expected set, or `None` when no enumerated input reached the hole.
    pub set: Option<String>,
    pub solved: bool,
}

impl std::fmt::Display for HoleLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = if self.solved { "SOLVED" } else { "HOLE" };
        write!(f, "{kind} {} : {}", self.path, self.set.as_deref().unwrap_or("?"))
    }
}

pub const HOLE_SWEEP_DEPTH: usize = 3;

pub struct LiftDef {
    pub decl: LiftDecl,
    pub funorn: FunOrn,
    pub base: Arc<FunDef>,
    pub patch: PatchFn,
    pub holes: Vec<HoleLine>,
    core: Arc<LiftCore>,
}

struct LiftCore {
    name: String,
    script: Script,
    args: Vec<String>,
    arg_nodes: Vec<(OrnNode, InvWitness)>,
    res_nodes: Vec<(OrnNode, InvWitness)>,
    base: Arc<FunDef>,
    cx: Cx,
}

#[derive(Clone)]
struct Slot {
    reorn: Reorn,
    j: Value,
    y: Value,
}

impl Slot {
    fn set(&self) -> SetCode {
        self.reorn.set_at(self.j.clone(), self.y.clone())
    }
}

#[derive(Default)]
struct HoleLog {
    seen: Vec<(String, String, bool)>,
}

impl HoleLog {
    fn record(&mut self, path: &str, set: String, solved: bool) {
        match self.seen.iter_mut().find(|(p, ..)| p == path) {
            Some(entry) => entry.2 &= solved,
            None => self.seen.push((path.to_string(), set, solved)),
        }
    }
}

struct Run<'a> {
    core: &'a LiftCore,
    sink: Option<&'a RefCell<HoleLog>>,
}

#[derive(Clone)]
struct LScope {
    scope: Scope,
    comp: Vec<(String, Reorn, Value)>,
    args: Vec<Value>,
    ind: Option<(usize, Vec<String>)>,
    path: String,
}

impl LScope {
    fn companion(&self, v: &str) -> KResult<(Reorn, Value)> {
        match self.comp.iter().rev().find(|(n, ..)| n == v) {
            Some((_, r, j)) => Ok((r.clone(), j.clone())),
            None => bad(format!("{v} has no reornament companion")),
        }
    }

    fn lookup(&self, v: &str) -> KResult<Value> {
        match self.scope.get(v) {
            Some((x, _)) => Ok(x.clone()),
            None => bad(format!("unbound variable {v}")),
        }
    }
}

type Nodes = Vec<(OrnNode, InvWitness)>;

fn nodes_of(t: &FunOrn) -> (Nodes, Nodes) {
    let (mut args, mut res) = (Vec::new(), Vec::new());
    let mut cur = t;
    loop {
        cur = match cur {
            FunOrn::Arrow(n, w, r) => {
                args.push((n.clone(), w.clone()));
                r
            }
            FunOrn::Times(n, w, r) => {
                res.push((n.clone(), w.clone()));
                r
            }
            FunOrn::End => return (args, res),
        };
    }
}

impl LiftDef {
    pub(crate) fn new(d: &LiftDecl, env: Arc<Env>) -> Result<LiftDef, ElabError> {
        let path = d.name.as_str();
        let Some(funorn) = env.funorn(&d.funorn).cloned() else {
            return Err(ElabError::new(path, format!("unknown functional ornament {}", d.funorn)));
        };
        let Some(base) = env.fun(&d.base).cloned() else {
            return Err(ElabError::new(path, format!("unknown function {}", d.base)));
        };
        funorn.check_over(&base.base.sig).map_err(|e| ElabError::new(path, e.to_string()))?;
        let n = base.decl.args.len();
        align(&d.script, &base.skel, &base.decl.args, None, path)?;
        let (arg_nodes, res_nodes) = nodes_of(&funorn);
        let core = Arc::new(LiftCore {
            name: d.name.clone(),
            script: d.script.clone(),
            args: base.decl.args.clone(),
            arg_nodes,
            res_nodes,
            base: base.clone(),
            cx: Cx::new(env.clone()),
        });
        let c = core.clone();
        let body = FnValue::from_fn(2 * n, Arc::new(move |xs| invoke(&Run { core: &c, sink: None }, xs)))
            .map_err(|e| ElabError::new(path, e.to_string()))?;
        let patch = PatchFn { name: d.name.clone(), sig: funorn.clone(), body };
        let holes = sweep_holes(&core, &env);
        Ok(LiftDef { decl: d.clone(), funorn, base, patch, holes, core })
    }

    pub fn complete(&self) -> bool {
        self.holes.iter().all(|h| h.solved)
    }

    pub fn open_holes(&self) -> impl Iterator<Item = &HoleLine> {
        self.holes.iter().filter(|h| !h.solved)
    }

    pub fn patched(&self) -> Result<LiftedFn, String> {
        if !self.complete() {
            return Err(format!("{} has unfilled holes", self.decl.name));
        }
        patch(&self.funorn, &self.base.base, &self.patch).map_err(|e| e.to_string())
    }

    /// Runs the Patch inhabitant on interleaved base and reornament arguments.
    pub fn run(&self, args: &[Value]) -> KResult<Vec<Value>> {
        invoke(&Run { core: &self.core, sink: None }, args)
    }
}

fn static_holes(s: &Script, path: &str, out: &mut Vec<String>) {
    match s {
        Script::Elim(_, _, bs) => {
            for (p, b) in bs {
                static_holes(b, &format!("{path}/{}", p.ctor().unwrap_or("_")), out);
            }
        }
        Script::Ctor(c, ext, rec) => {
            let here = format!("{path}/{c}");
            for e in ext {
                if let ExtArg::Hole(l) = e {
                    out.push(format!("{here}/{l}"));
                }
            }
            for r in rec {
                static_holes(r, &here, out);
            }
        }
        Script::Hole(l) => out.push(format!("{path}/{l}")),
        Script::Values(items) => items.iter().for_each(|i| static_holes(i, path, out)),
        Script::Return(_) | Script::SelfCall(_) => {}
    }
}

fn sweep_holes(core: &Arc<LiftCore>, env: &Env) -> Vec<HoleLine> {
    let mut paths = Vec::new();
    static_holes(&core.script, &core.name, &mut paths);
    let log = RefCell::new(HoleLog::default());
    if !paths.is_empty() {
        let run = Run { core, sink: Some(&log) };
        let mut tuples = vec![Vec::new()];
        for (node, w) in &core.arg_nodes {
            let base_set = SetCode::mu(node.orn.base(), w.expected.clone());
            let mut next = Vec::new();
            for x in enumerate(&base_set, HOLE_SWEEP_DEPTH).unwrap_or_default() {
                let fiber = node.reorn.set_at(w.j.clone(), x.clone());
                for xpp in enumerate(&fiber, HOLE_SWEEP_DEPTH).unwrap_or_default() {
                    for t in &tuples {
                        let mut t: Vec<Value> = t.clone();
                        t.push(x.clone());
                        t.push(xpp.clone());
                        next.push(t);
                    }
                }
            }
            tuples = next;
        }
        for t in &tuples {
            let _ = invoke(&run, t);
        }
    }
    let log = log.into_inner();
    let _ = env;
    paths
        .into_iter()
        .map(|p| match log.seen.iter().find(|(q, ..)| *q == p) {
            Some((_, set, solved)) => HoleLine { path: p, set: Some(set.clone()), solved: *solved },
            None => HoleLine { path: p, set: None, solved: false },
        })
        .collect()
}

/// Checks that a script follows the base skeleton node for node.
fn align(
    s: &Script,
    skel: &Skel,
    args: &[String],
    frame: Option<(usize, Vec<String>)>,
    path: &str,
) -> Result<(), ElabError> {
    let mismatch = |m: String| Err(ElabError::new(path, format!("skeleton mismatch: {m}")));
    match (s, skel) {
        (Script::Elim(k, v, bs), Skel::Elim(k2, v2, bs2)) => {
            if k != k2 || v != v2 {
                return mismatch(format!(
                    "lift-{} {v} where the function has {} {v2}",
                    k.keyword(),
                    k2.keyword()
                ));
            }
            if bs.len() != bs2.len() {
                return mismatch(format!("{} branches where the function has {}", bs.len(), bs2.len()));
            }
            for ((p, b), (c, sk)) in bs.iter().zip(bs2) {
                if p.ctor() != c.as_deref() {
                    return mismatch(format!(
                        "branch {} where the function has {}",
                        p.ctor().unwrap_or("_"),
                        c.as_deref().unwrap_or("_")
                    ));
                }
                let inner = match k {
                    Elim::Ind => {
                        let vars = match p {
                            Pat::Wild => Vec::new(),
                            Pat::Ctor(_, vs) => vs.clone(),
                        };
                        args.iter().position(|a| a == v).map(|k| (k, vars))
                    }
                    Elim::Fold => None,
                    Elim::Case => frame.clone(),
                };
                align(b, sk, args, inner, &format!("{path}/{}", p.ctor().unwrap_or("_")))?;
            }
            Ok(())
        }
        (Script::Elim(k, v, _), Skel::Leaf) => mismatch(format!("lift-{} {v} where the function returns", k.keyword())),
        (_, Skel::Elim(k, v, _)) => mismatch(format!("a result where the function has {} {v}", k.keyword())),
        (Script::Ctor(_, _, rec), Skel::Leaf) => {
            rec.iter().try_for_each(|r| check_self(r, args, &frame, path))
        }
        (other, Skel::Leaf) => check_self(other, args, &frame, path),
    }
}

fn check_self(s: &Script, args: &[String], frame: &Option<(usize, Vec<String>)>, path: &str) -> Result<(), ElabError> {
    let err = |m: String| Err(ElabError::new(path, m));
    match s {
        Script::SelfCall(xs) => {
            let Some((k, subs)) = frame else { return err("self outside a lift-ind branch".into()) };
            if xs.len() != 2 * args.len() {
                return err(format!("self takes {} arguments", 2 * args.len()));
            }
            match (&xs[2 * k], &xs[2 * k + 1]) {
                (crate::ast::Expr::Name(a), crate::ast::Expr::Name(b))
                    if subs.contains(a) && *b == format!("{a}++") => Ok(()),
                _ => err(format!("self must pass a sub-term of {} and its companion", args[*k])),
            }
        }
        Script::Ctor(_, _, rec) => rec.iter().try_for_each(|r| check_self(r, args, frame, path)),
        Script::Values(items) => items.iter().try_for_each(|r| check_self(r, args, frame, path)),
        Script::Elim(..) => err("eliminations must follow the function's skeleton".into()),
        Script::Return(_) | Script::Hole(_) => Ok(()),
    }
}

fn invoke(run: &Run, args: &[Value]) -> KResult<Vec<Value>> {
    let core = run.core;
    if args.len() != 2 * core.args.len() {
        return bad(format!("{} takes {} arguments", core.name, 2 * core.args.len()));
    }
    let base_args: Vec<Value> = args.iter().step_by(2).cloned().collect();
    let mut ls = LScope {
        scope: Scope::default(),
        comp: Vec::new(),
        args: base_args.clone(),
        ind: None,
        path: core.name.clone(),
    };
    for (k, (node, w)) in core.arg_nodes.iter().enumerate() {
        let name = &core.args[k];
        let t = &args[2 * k];
        ls.scope.push(name, t.clone(), SetCode::mu(node.orn.base(), w.expected.clone()));
        ls.scope.push(&format!("{name}++"), args[2 * k + 1].clone(), node.reorn.set_at(w.j.clone(), t.clone()));
        ls.comp.push((name.clone(), node.reorn.clone(), w.j.clone()));
    }
    let slots = result_slots(core, &base_args)?;
    exec(run, &ls, &core.script, &slots)
}

fn result_slots(core: &LiftCore, base_args: &[Value]) -> KResult<Vec<Slot>> {
    let ys = core.base.core.run(base_args)?;
    Ok(core
        .res_nodes
        .iter()
        .zip(ys)
        .map(|((node, w), y)| Slot { reorn: node.reorn.clone(), j: w.j.clone(), y })
        .collect())
}

fn one(slots: &[Slot]) -> KResult<&Slot> {
    match slots {
        [s] => Ok(s),
        _ => bad(format!("{} results expected here; use values", slots.len())),
    }
}

fn exec(run: &Run, ls: &LScope, s: &Script, slots: &[Slot]) -> KResult<Vec<Value>> {
    let cx = &run.core.cx;
    match s {
        Script::Elim(kind, v, branches) => {
            let t = ls.lookup(v)?;
            let tpp = ls.lookup(&format!("{v}++"))?;
            let (reorn, j) = ls.companion(v)?;
            let idx = Value::pair(j, t);
            match kind {
                Elim::Case | Elim::Ind => lift_case_value(&reorn, &idx, &tpp, &mut |node| {
                    branch(run, ls, *kind, v, branches, &reorn, node, None, slots)
                }),
                Elim::Fold => {
                    let Some(k) = run.core.args.iter().position(|a| a == v) else {
                        return bad(format!("lift-fold must eliminate an argument, not {v}"));
                    };
                    lift_fold_value(&reorn, &idx, &tpp, &mut |node, subs| {
                        let mut args = ls.args.clone();
                        args[k] = node.t().clone();
                        let sub_slots = result_slots(run.core, &args)?;
                        let mut inner = ls.clone();
                        inner.args = args;
                        branch(run, &inner, *kind, v, branches, &reorn, node, Some(subs), &sub_slots)
                    })
                }
            }
        }
        Script::Ctor(name, ext, rec) => Ok(vec![ctor(run, ls, name, ext, rec, one(slots)?)?]),
        Script::Return(e) => Ok(vec![value(cx, &ls.scope, e, &one(slots)?.set())?]),
        Script::SelfCall(xs) => {
            let Some((k, subs)) = &ls.ind else { return bad("self outside a lift-ind branch") };
            match xs.get(2 * k) {
                Some(crate::ast::Expr::Name(n)) if subs.contains(n) => {}
                _ => return bad(format!("self must recurse on a sub-term of {}", run.core.args[*k])),
            }
            let mut vals = Vec::new();
            for (p, (node, w)) in run.core.arg_nodes.iter().enumerate() {
                let t = value(cx, &ls.scope, &xs[2 * p], &SetCode::mu(node.orn.base(), w.expected.clone()))?;
                let tpp = value(cx, &ls.scope, &xs[2 * p + 1], &node.reorn.set_at(w.j.clone(), t.clone()))?;
                vals.push(t);
                vals.push(tpp);
            }
            invoke(run, &vals)
        }
        Script::Hole(l) => Ok(vec![hole(run, &format!("{}/{l}", ls.path), &one(slots)?.set())?]),
        Script::Values(items) => {
            if items.len() != slots.len() {
                return bad(format!("{} results given, {} expected", items.len(), slots.len()));
            }
            let mut out = Vec::new();
            for (i, s) in items.iter().zip(slots) {
                out.extend(exec(run, ls, i, std::slice::from_ref(s))?);
            }
            Ok(out)
        }
    }
}

fn hole(run: &Run, path: &str, set: &SetCode) -> KResult<Value> {
    let only = match complete_domain(set) {
        Ok(mut vs) if vs.len() == 1 => Some(vs.remove(0)),
        _ => None,
    };
    if let Some(sink) = run.sink {
        sink.borrow_mut().record(path, show_set(&run.core.cx.env, set), only.is_some());
    }
    match only {
        Some(v) => Ok(v),
        None => bad(format!("unfilled hole {path}")),
    }
}

fn pair_parts(v: &Value) -> KResult<(&Value, &Value)> {
    match v.as_pair() {
        Some(p) => Ok(p),
        None => bad(format!("expected a pair, found {v}")),
    }
}

/// Labelled insertions of an extension, outside Π positions.
fn ext_labels(code: &OrnCode, base: &Desc, xs: &Value, e: &Value, out: &mut Vec<(String, Value, SetCode)>) -> KResult<()> {
    match (code, base) {
        (OrnCode::Sigma { fam: of, .. }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(xs)?;
            ext_labels(&of(s)?, &bf(s)?, rest, e, out)
        }
        (OrnCode::Insert { label, set, fam: of }, _) => {
            let (s, er) = pair_parts(e)?;
            if let Some(l) = label {
                out.push((l.to_string(), s.clone(), set.clone()));
            }
            ext_labels(&of(s)?, base, xs, er, out)
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let (_, tail) = pair_parts(xs)?;
            let (_, er) = pair_parts(e)?;
            ext_labels(rest, &bf(r)?, tail, er, out)
        }
        _ => Ok(()),
    }
}

/// Recursive positions of a reornament node, as (payload, fine index of the sub-node).
fn leaves(code: &OrnCode, base: &Desc, xs: &Value, e: &Value, a: &Value, out: &mut Vec<(Value, Value)>) -> KResult<()> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(_)) => {
            out.push((a.clone(), w.j.clone()));
            Ok(())
        }
        (OrnCode::One, Desc::One) => Ok(()),
        (OrnCode::Pi(of), Desc::Pi(_, bf)) => {
            let Value::Fun(table) = xs else { return bad(format!("expected a table, found {xs}")) };
            for (x, xv) in table.iter() {
                let (Some(ex), Some(ax)) = (e.apply(x), a.apply(x)) else {
                    return bad(format!("no entry for {x}"));
                };
                leaves(&of(x)?, &bf(x)?, xv, ex, ax, out)?;
            }
            Ok(())
        }
        (OrnCode::Sigma { fam: of, .. }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(xs)?;
            leaves(&of(s)?, &bf(s)?, rest, e, a, out)
        }
        (OrnCode::Insert { fam: of, .. }, _) => {
            let (s, er) = pair_parts(e)?;
            leaves(&of(s)?, base, xs, er, a, out)
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let (_, tail) = pair_parts(xs)?;
            let (_, er) = pair_parts(e)?;
            leaves(rest, &bf(r)?, tail, er, a, out)
        }
        (code, base) => bad(format!("{code:?} does not fit {base:?}")),
    }
}

#[allow(clippy::too_many_arguments)]
fn branch(
    run: &Run,
    ls: &LScope,
    kind: Elim,
    v: &str,
    branches: &[(Pat, Script)],
    reorn: &Reorn,
    node: &LiftNode,
    subs: Option<Vec<Vec<Value>>>,
    slots: &[Slot],
) -> KResult<Vec<Value>> {
    let env = &run.core.cx.env;
    let src = reorn.source();
    let j = node.j();
    let xs = node.base_payload()?;
    let i = src.re().apply(j)?;
    let bfam = src.base().clone();
    let base_node = destructure(env, src.base(), &i, xs, &|jj| Ok(SetCode::mu(&bfam, jj.clone())))?;
    let Some((pat, script)) = branches.iter().find(|(p, _)| pat_matches(p, base_node.name.as_deref())) else {
        return bad(format!("no branch for {}", base_node.name.as_deref().unwrap_or("this node")));
    };
    let code = src.at(j)?;
    let bdesc = src.base_at(j)?;
    let mut labels = Vec::new();
    ext_labels(&code, &bdesc, xs, &node.e, &mut labels)?;
    let mut recs = Vec::new();
    leaves(&code, &bdesc, xs, &node.e, &node.a, &mut recs)?;
    let mut inner = ls.clone();
    inner.path = format!("{}/{}", ls.path, pat.ctor().unwrap_or("_"));
    for (l, x, s) in labels {
        inner.scope.push(&l, x, s);
    }
    let binds = bind_pattern(pat, &base_node)?;
    let mut rec_k = 0;
    let mut rec_names = Vec::new();
    for (n, f) in &binds {
        if !f.rec {
            inner.scope.push(n, f.value.clone(), f.set.clone());
            continue;
        }
        let Some((a, jj)) = recs.get(rec_k) else { return bad("recursive positions do not line up") };
        match &subs {
            None => {
                inner.scope.push(n, f.value.clone(), f.set.clone());
                inner.scope.push(&format!("{n}++"), a.clone(), reorn.set_at(jj.clone(), f.value.clone()));
                inner.comp.push((n.to_string(), reorn.clone(), jj.clone()));
            }
            Some(subs) => {
                let k = run.core.args.iter().position(|x| x == v).unwrap();
                let mut args = ls.args.clone();
                args[k] = f.value.clone();
                let sub_slots = result_slots(run.core, &args)?;
                let s0 = one(&sub_slots)?;
                let base_set = SetCode::mu(s0.reorn.source().base(), s0.reorn.source().re().apply(&s0.j)?);
                inner.scope.push(n, s0.y.clone(), base_set);
                inner.scope.push(&format!("{n}++"), subs[rec_k][0].clone(), s0.set());
                inner.comp.push((n.to_string(), s0.reorn.clone(), s0.j.clone()));
            }
        }
        rec_names.push(n.to_string());
        rec_k += 1;
    }
    if kind == Elim::Ind {
        inner.ind = run.core.args.iter().position(|a| a == v).map(|k| (k, rec_names));
    }
    exec(run, &inner, script, slots)
}

fn ctor(run: &Run, ls: &LScope, name: &str, ext: &[ExtArg], rec: &[Script], slot: &Slot) -> KResult<Value> {
    let env = &run.core.cx.env;
    let src = slot.reorn.source();
    let Some(xs) = slot.y.as_in() else { return bad(format!("base result {} is not a node", slot.y)) };
    let code = src.at(&slot.j)?;
    let bdesc = src.base_at(&slot.j)?;
    let i = src.re().apply(&slot.j)?;
    let bfam = src.base().clone();
    let base_node = destructure(env, src.base(), &i, xs, &|jj| Ok(SetCode::mu(&bfam, jj.clone())))?;
    if let Some(b) = &base_node.name {
        let mut names = vec![b.clone()];
        if let OrnCode::Sigma { relabel: Some(r), .. } = &code {
            if let Ok(t) = r.to_new(&Value::tag(b)) {
                names.push(t.to_string());
            }
        }
        if let Some(o) = env.orn_def(src.name()) {
            names.extend(o.ctor_for_base(&slot.j, b)?);
        }
        if !names.iter().any(|n| n == name) {
            return bad(format!("lift-ctor {name} does not match the base result constructor {b}"));
        }
    }
    let path = format!("{}/{name}", ls.path);
    let mut ext_it = ext.iter();
    let e = build_ext(run, ls, &code, &bdesc, xs, &mut ext_it, &path)?;
    if ext_it.next().is_some() {
        return bad(format!("too many extension values for {name}"));
    }
    let mut inner = ls.clone();
    inner.path = path.clone();
    let mut rec_it = rec.iter();
    let mut used = 0;
    let a = build_a(run, &inner, &slot.reorn, &code, &bdesc, xs, &e, &mut rec_it, &mut used)?;
    let rest: Vec<&Script> = rec_it.collect();
    match (used, rest.as_slice()) {
        (_, []) => {}
        (0, [Script::Hole(l)]) => {
            hole(run, &format!("{path}/{l}"), &SetCode::Unit)?;
        }
        _ => return bad(format!("too many recursive scripts for {name}")),
    }
    lift_constructor_value(&slot.reorn, &slot.j, xs, &e, &a)
}

fn build_ext(
    run: &Run,
    ls: &LScope,
    code: &OrnCode,
    base: &Desc,
    xs: &Value,
    ext: &mut std::slice::Iter<ExtArg>,
    path: &str,
) -> KResult<Value> {
    match (code, base) {
        (OrnCode::Var(_), Desc::Var(_)) | (OrnCode::One, Desc::One) => Ok(Value::Unit),
        (OrnCode::Pi(of), Desc::Pi(_, bf)) => {
            let Value::Fun(table) = xs else { return bad(format!("expected a table, found {xs}")) };
            let mut out = Vec::new();
            for (x, xv) in table.iter() {
                out.push((x.clone(), build_ext(run, ls, &of(x)?, &bf(x)?, xv, ext, path)?));
            }
            Ok(Value::fun(out))
        }
        (OrnCode::Sigma { fam: of, .. }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(xs)?;
            build_ext(run, ls, &of(s)?, &bf(s)?, rest, ext, path)
        }
        (OrnCode::Insert { label, set, fam: of }, _) => {
            let v = match ext.next() {
                Some(ExtArg::Expr(e)) => value(&run.core.cx, &ls.scope, e, set)?,
                Some(ExtArg::Hole(l)) => hole(run, &format!("{path}/{l}"), set)?,
                None => {
                    return bad(format!(
                        "missing extension value{}",
                        label.as_ref().map(|l| format!(" for {l}")).unwrap_or_default()
                    ))
                }
            };
            let rest = build_ext(run, ls, &of(&v)?, base, xs, ext, path)?;
            Ok(Value::pair(v, rest))
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let (_, tail) = pair_parts(xs)?;
            Ok(Value::pair(Value::Refl, build_ext(run, ls, rest, &bf(r)?, tail, ext, path)?))
        }
        (code, base) => bad(format!("{code:?} does not fit {base:?}")),
    }
}

#[allow(clippy::too_many_arguments)]
fn build_a(
    run: &Run,
    ls: &LScope,
    reorn: &Reorn,
    code: &OrnCode,
    base: &Desc,
    xs: &Value,
    e: &Value,
    rec: &mut std::slice::Iter<Script>,
    used: &mut usize,
) -> KResult<Value> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(_)) => {
            let Some(s) = rec.next() else { return bad("missing script for a recursive position") };
            *used += 1;
            let slot = Slot { reorn: reorn.clone(), j: w.j.clone(), y: xs.clone() };
            let mut v = exec(run, ls, s, std::slice::from_ref(&slot))?;
            Ok(v.remove(0))
        }
        (OrnCode::One, Desc::One) => Ok(Value::Unit),
        (OrnCode::Pi(of), Desc::Pi(_, bf)) => {
            let Value::Fun(table) = xs else { return bad(format!("expected a table, found {xs}")) };
            let mut out = Vec::new();
            for (x, xv) in table.iter() {
                let Some(ex) = e.apply(x) else { return bad(format!("no entry for {x}")) };
                out.push((x.clone(), build_a(run, ls, reorn, &of(x)?, &bf(x)?, xv, ex, rec, used)?));
            }
            Ok(Value::fun(out))
        }
        (OrnCode::Sigma { fam: of, .. }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(xs)?;
            build_a(run, ls, reorn, &of(s)?, &bf(s)?, rest, e, rec, used)
        }
        (OrnCode::Insert { fam: of, .. }, _) => {
            let (s, er) = pair_parts(e)?;
            build_a(run, ls, reorn, &of(s)?, base, xs, er, rec, used)
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let (_, tail) = pair_parts(xs)?;
            let (_, er) = pair_parts(e)?;
            build_a(run, ls, reorn, rest, &bf(r)?, tail, er, rec, used)
        }
        (code, base) => bad(format!("{code:?} does not fit {base:?}")),
    }
}

// ---------------------------------------------------------------- adjoint

/// A function taking an algebraic-ornament argument, obtained from a
/// lifting whose result index is computed by the algebra's fold.
pub struct AdjDef {
    pub name: String,
    pub ao: AlgOrnament,
    pub lift: Arc<LiftDef>,
    pub index_arg: usize,
    pub target: DescFun,
}

/// Rewrites the recursive indices of a description.
fn map_vars(d: Desc, f: Fam<Value>) -> KResult<Desc> {
    Ok(match d {
        Desc::Var(i) => Desc::Var(f(&i)?),
        Desc::One => Desc::One,
        Desc::Pi(dom, g) => Desc::Pi(dom, fam(move |x| map_vars(g(x)?, f.clone()))),
        Desc::Sigma { dom, fam: g, ctor } => Desc::Sigma { dom, fam: fam(move |x| map_vars(g(x)?, f.clone())), ctor },
    })
}

impl AdjDef {
    pub(crate) fn new(name: &str, algebraic: &str, lift: &str, k: usize, env: Arc<Env>) -> Result<AdjDef, ElabError> {
        let Some(ao) = env.algebraic(algebraic).cloned() else {
            return Err(ElabError::new(name, format!("unknown algebraic ornament {algebraic}")));
        };
        let Some(l) = env.lift(lift).cloned() else {
            return Err(ElabError::new(name, format!("unknown lifting {lift}")));
        };
        if !l.complete() {
            return Err(ElabError::new(name, format!("{lift} has unfilled holes")));
        }
        let n = l.core.args.len();
        if k == 0 || k >= n {
            return Err(ElabError::new(name, format!("index argument must be between 1 and {}", n - 1)));
        }
        let [(node, w)] = l.core.res_nodes.as_slice() else {
            return Err(ElabError::new(name, "the lifting must have a single result"));
        };
        let (reorn, j) = (node.reorn.clone(), w.j.clone());
        let carrier = ao.algebra().clone();
        let index_set = SetCode::sigma(ao.base().index_set().clone(), fam(move |i| carrier.carrier_at(i)));
        let target = DescFun::new(
            &format!("{name}-result"),
            index_set,
            fam(move |ix| {
                let (Some(i), Some(x)) = (ix.fst(), ix.snd()) else { return bad(format!("{ix} is not an index pair")) };
                let i = i.clone();
                let desc = reorn.family().at(&Value::pair(j.clone(), x.clone()))?;
                map_vars(
                    desc,
                    Arc::new(move |v| match v.snd() {
                        Some(t) => Ok(Value::pair(i.clone(), t.clone())),
                        None => bad(format!("{v} is not a reornament index")),
                    }),
                )
            }),
        );
        Ok(AdjDef { name: name.to_string(), ao, lift: l, index_arg: k, target })
    }

    /// Number of arguments: the index, the fold value, the ornamented value, then the rest.
    pub fn arity(&self) -> usize {
        let n = self.lift.core.args.len();
        3 + 2 * (n - 1) - 1
    }

    /// The set of argument `p`, given the earlier arguments.
    pub fn arg_set(&self, p: usize, earlier: &[Value]) -> KResult<SetCode> {
        match p {
            0 => Ok(self.ao.base().index_set().clone()),
            1 => self.ao.algebra().carrier_at(&earlier[0]),
            2 => Ok(self.ao.set_at(earlier[0].clone(), earlier[1].clone())),
            _ => {
                let (pos, companion) = self.extra_slot(p - 3);
                let (node, w) = &self.lift.core.arg_nodes[pos];
                if pos == self.index_arg {
                    return Ok(node.reorn.set_at(w.j.clone(), earlier[0].clone()));
                }
                if companion {
                    Ok(node.reorn.set_at(w.j.clone(), earlier[p - 1].clone()))
                } else {
                    Ok(SetCode::mu(node.orn.base(), w.expected.clone()))
                }
            }
        }
    }

    /// Which lifted argument an extra argument fills, and whether it is a companion.
    fn extra_slot(&self, q: usize) -> (usize, bool) {
        let mut q = q;
        for pos in 1..self.lift.core.args.len() {
            let width = if pos == self.index_arg { 1 } else { 2 };
            if q < width {
                return (pos, pos == self.index_arg || q == 1);
            }
            q -= width;
        }
        (self.lift.core.args.len(), false)
    }

    /// The lifting seen as a function of the folded argument, with the other arguments fixed.
    pub fn left(&self, extras: Vec<Value>) -> IndexedFnLeft {
        let lift = self.lift.clone();
        let k = self.index_arg;
        Arc::new(move |i, t| {
            let core = &lift.core;
            let (node0, w0) = &core.arg_nodes[0];
            let forced = only(&node0.reorn.set_at(w0.j.clone(), t.clone()), t.nesting() + 1)?;
            let mut patch_args = vec![t.clone(), forced];
            let mut it = extras.iter();
            for pos in 1..core.args.len() {
                if pos == k {
                    patch_args.push(i.clone());
                    patch_args.push(it.next().cloned().unwrap_or(Value::Unit));
                } else {
                    patch_args.push(it.next().cloned().unwrap_or(Value::Unit));
                    patch_args.push(it.next().cloned().unwrap_or(Value::Unit));
                }
            }
            let mut out = lift.run(&patch_args)?;
            Ok(out.remove(0))
        })
    }

    /// Applies the function; the result lies over `(i, x)`.
    pub fn call(&self, args: &[Value]) -> KResult<Value> {
        if args.len() != self.arity() {
            return bad(format!("{} takes {} arguments", self.name, self.arity()));
        }
        let f = self.left(args[3..].to_vec());
        rl_adjoint(&self.ao, &self.target, f)(&args[0], &args[1], &args[2])
    }

    /// The result as an ornamented value, with its set.
    pub fn shown_result(&self, x: &Value, y: &Value) -> KResult<(Value, SetCode)> {
        let (node, w) = &self.lift.core.res_nodes[0];
        let src = node.reorn.source();
        let v = forget_reorn(src, &Value::pair(w.j.clone(), x.clone()), y)?;
        Ok((v, SetCode::mu(&interp_orn(src), w.j.clone())))
    }
}

/// The unique inhabitant of a forced set.
fn only(s: &SetCode, depth: usize) -> KResult<Value> {
    let mut vs = enumerate(s, depth)?;
    if vs.len() != 1 {
        return bad(format!("expected a single inhabitant, found {}", vs.len()));
    }
    Ok(vs.remove(0))
}
