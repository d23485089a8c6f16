//! The `ornate` command line: elaboration, derivation, evaluation,
//! lifting and verification with stable exit codes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ornate_core::algebraic::assert_recomputation;
use ornate_core::funorn::{check_patch_fn, coherence_check, Budget, FunOrn};
use ornate_core::ornament::{id_orn, interp_orn, orn_forget, Ornament};
use ornate_core::reornament::{forget_reorn, reorn_recomputation, reornament, remember_reorn};
use ornate_core::report::{Case, Report, Shown};
use ornate_core::{enumerate, equal_value, KernelError, SetCode, Value};
use ornate_surface::ast::{read_expr, read_set, Expr};
use ornate_surface::elab::type_nodes;
use ornate_surface::eval::{eval_set, value, Cx, Scope};
use ornate_surface::sexpr::parse_one;
use ornate_surface::{load, prelude_with, show_desc, show_set, show_value, Entity, Env};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_SOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ornate", version, about = "Derive, lift and verify ornamented datatypes and functions")]
struct Cli {
    /// Enumeration depth for sweeps and listings.
    #[arg(long, default_value_t = 3, global = true)]
    depth: usize,
    /// Instantiate a set parameter, e.g. `A=tags:x,y`.
    #[arg(long = "param", value_name = "NAME=tags:T,...", global = true)]
    params: Vec<String>,
    /// Print only failures.
    #[arg(long, global = true)]
    quiet: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Extra source files, loaded after the prelude.
    #[arg(short = 'f', long = "file", value_name = "FILE", global = true)]
    files: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elaborate the prelude and the given files.
    Check { paths: Vec<PathBuf> },
    /// Show a family's description at an index and list its inhabitants.
    Derive {
        name: String,
        #[arg(long)]
        index: Option<String>,
    },
    /// List the inhabitants of a set.
    Enumerate { set: String },
    /// Apply a function, e.g. `"(lookup 1 (cons x (cons y nil)))"`.
    Eval { expr: String },
    /// Map an ornamented value back to the base type.
    Forget {
        ornament: String,
        value: String,
        #[arg(long)]
        index: Option<String>,
    },
    /// Show the reornament of an ornament.
    Reorn {
        ornament: String,
        #[arg(long)]
        index: Option<String>,
    },
    /// Report the holes of a lifting script.
    Lift { name: String },
    /// Run a verification sweep.
    Verify { kind: VerifyKind, targets: Vec<String> },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VerifyKind {
    Coherence,
    Patch,
    Roundtrip,
    Recomputation,
}

/// The result of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Fail {
    Usage(String),
    Source(String),
    Counterexample,
}

impl From<KernelError> for Fail {
    fn from(e: KernelError) -> Fail {
        Fail::Source(e.to_string())
    }
}

struct Ctx {
    env: Env,
    depth: usize,
    quiet: bool,
    json: bool,
    out: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn show(&self, s: &SetCode, v: &Value) -> String {
        show_value(&self.env, s, v)
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, stdout: text, ..Default::default() },
                _ => Outcome { code: EXIT_USAGE, stderr: text, ..Default::default() },
            };
        }
    };
    let mut ctx = match setup(&cli) {
        Ok(c) => c,
        Err(f) => return finish(String::new(), f),
    };
    match dispatch(&cli.command, &mut ctx) {
        Ok(()) => Outcome { code: EXIT_OK, stdout: ctx.out, stderr: String::new() },
        Err(f) => finish(ctx.out, f),
    }
}

fn finish(stdout: String, f: Fail) -> Outcome {
    let (code, stderr) = match f {
        Fail::Usage(m) => (EXIT_USAGE, format!("error: {m}\n")),
        Fail::Source(m) => (EXIT_SOURCE, format!("error: {m}\n")),
        Fail::Counterexample => (EXIT_COUNTEREXAMPLE, String::new()),
    };
    Outcome { code, stdout, stderr }
}

fn parse_param(p: &str) -> Result<(String, SetCode), Fail> {
    let bad = || Fail::Usage(format!("bad --param `{p}`; expected NAME=tags:T,..."));
    let (name, rhs) = p.split_once('=').ok_or_else(bad)?;
    let tags = rhs.strip_prefix("tags:").ok_or_else(bad)?;
    let tags: Vec<&str> = if tags.is_empty() { Vec::new() } else { tags.split(',').collect() };
    if name.is_empty() || tags.iter().any(|t| t.is_empty()) {
        return Err(bad());
    }
    Ok((name.to_string(), SetCode::enumeration(&tags)))
}

fn setup(cli: &Cli) -> Result<Ctx, Fail> {
    let mut params = vec![("A".to_string(), SetCode::enumeration(&["x", "y"]))];
    for p in &cli.params {
        let (n, s) = parse_param(p)?;
        params.retain(|(m, _)| *m != n);
        params.push((n, s));
    }
    let mut env = prelude_with(params).map_err(|e| Fail::Source(format!("prelude: {e}")))?;
    let mut files = cli.files.clone();
    if let Command::Check { paths: more } = &cli.command {
        files.extend(more.iter().cloned());
    }
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| Fail::Usage(format!("{}: {e}", f.display())))?;
        env = load(&text, &env).map_err(|e| Fail::Source(format!("{}: {e}", f.display())))?;
    }
    Ok(Ctx { env, depth: cli.depth, quiet: cli.quiet, json: cli.json, out: String::new() })
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<(), Fail> {
    match cmd {
        Command::Check { .. } => check(ctx),
        Command::Derive { name, index } => derive(ctx, name, index.as_deref()),
        Command::Enumerate { set } => enumerate_cmd(ctx, set),
        Command::Eval { expr } => eval_cmd(ctx, expr),
        Command::Forget { ornament, value, index } => forget(ctx, ornament, value, index.as_deref()),
        Command::Reorn { ornament, index } => reorn_cmd(ctx, ornament, index.as_deref()),
        Command::Lift { name } => lift(ctx, name),
        Command::Verify { kind, targets } => verify(ctx, *kind, targets),
    }
}

fn parse_expr(text: &str) -> Result<Expr, Fail> {
    let s = parse_one(text).map_err(|e| Fail::Source(e.to_string()))?;
    read_expr(&s).map_err(|e| Fail::Source(e.to_string()))
}

fn expr_value(ctx: &Ctx, text: &str, s: &SetCode) -> Result<Value, Fail> {
    let e = parse_expr(text)?;
    let cx = Cx::new(std::sync::Arc::new(ctx.env.clone()));
    Ok(value(&cx, &Scope::default(), &e, s)?)
}

/// The index given on the command line, or unit for unit-indexed families.
fn index_value(ctx: &Ctx, index: Option<&str>, iset: &SetCode, what: &str) -> Result<Value, Fail> {
    match (index, iset) {
        (Some(t), s) => expr_value(ctx, t, s),
        (None, SetCode::Unit) => Ok(Value::Unit),
        (None, s) => Err(Fail::Usage(format!("{what} is indexed by {}; pass --index", show_set(&ctx.env, s)))),
    }
}

fn check(ctx: &mut Ctx) -> Result<(), Fail> {
    let decls = ctx.env.decls().len();
    let open: Vec<String> = ctx
        .env
        .entries()
        .filter_map(|(n, e)| match e {
            Entity::Lift(l) if !l.complete() => Some(n.to_string()),
            _ => None,
        })
        .collect();
    if ctx.json {
        let j = serde_json::json!({ "declarations": decls, "incomplete_lifts": open });
        ctx.line(j.to_string());
    } else if !ctx.quiet {
        ctx.line(format!("ok: {decls} declarations"));
        for n in open {
            ctx.line(format!("incomplete lifting: {n}"));
        }
    }
    Ok(())
}

fn derive(ctx: &mut Ctx, name: &str, index: Option<&str>) -> Result<(), Fail> {
    let Some(f) = ctx.env.family(name) else {
        return Err(Fail::Usage(format!("{name} is not a datatype, ornament or reornament")));
    };
    let i = index_value(ctx, index, f.index_set(), name)?;
    let desc = show_desc(&ctx.env, &f, &f.at(&i)?);
    let s = SetCode::mu(&f, i.clone());
    let vs = enumerate(&s, ctx.depth)?;
    let shown: Vec<String> = vs.iter().map(|v| ctx.show(&s, v)).collect();
    if ctx.json {
        let j = serde_json::json!({
            "family": name,
            "index": ctx.show(f.index_set(), &i),
            "description": desc,
            "inhabitants": shown,
        });
        ctx.line(j.to_string());
        return Ok(());
    }
    ctx.line(format!("{} : {desc}", show_set(&ctx.env, &s)));
    if !ctx.quiet {
        ctx.line(format!("{} inhabitants at depth {}", vs.len(), ctx.depth));
        for v in shown {
            ctx.line(format!("  {v}"));
        }
    }
    Ok(())
}

fn enumerate_cmd(ctx: &mut Ctx, text: &str) -> Result<(), Fail> {
    let sx = parse_one(text).map_err(|e| Fail::Source(e.to_string()))?;
    let se = read_set(&sx).map_err(|e| Fail::Source(e.to_string()))?;
    let cx = Cx::new(std::sync::Arc::new(ctx.env.clone()));
    let s = eval_set(&cx, &Scope::default(), &se)?;
    let vs = enumerate(&s, ctx.depth)?;
    let shown: Vec<String> = vs.iter().map(|v| ctx.show(&s, v)).collect();
    if ctx.json {
        ctx.line(serde_json::json!({ "set": show_set(&ctx.env, &s), "values": shown }).to_string());
        return Ok(());
    }
    if !ctx.quiet {
        ctx.line(format!("{} values of {} at depth {}", vs.len(), show_set(&ctx.env, &s), ctx.depth));
    }
    for v in shown {
        ctx.line(v);
    }
    Ok(())
}

/// Argument and result sets of a lifted signature.
fn lifted_sets(t: &FunOrn) -> (Vec<SetCode>, Vec<SetCode>) {
    let (mut args, mut res) = (Vec::new(), Vec::new());
    let mut cur = t;
    loop {
        cur = match cur {
            FunOrn::Arrow(n, w, r) => {
                args.push(SetCode::mu(&interp_orn(&n.orn), w.j.clone()));
                r
            }
            FunOrn::Times(n, w, r) => {
                res.push(SetCode::mu(&interp_orn(&n.orn), w.j.clone()));
                r
            }
            FunOrn::End => return (args, res),
        };
    }
}

fn eval_cmd(ctx: &mut Ctx, text: &str) -> Result<(), Fail> {
    let Expr::App(f, args) = parse_expr(text)? else {
        return Err(Fail::Usage("expected an application `(FUNCTION ARG...)`".into()));
    };
    let cx = Cx::new(std::sync::Arc::new(ctx.env.clone()));
    let scope = Scope::default();
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Fail::Usage(format!("{f} takes {n} arguments, {} given", args.len())))
        }
    };
    let results: Vec<(Value, SetCode)> = match ctx.env.get(&f) {
        Some(Entity::Patched(l)) => {
            let (sets, res) = lifted_sets(&l.sig);
            arity(sets.len())?;
            let vals = args.iter().zip(&sets).map(|(a, s)| value(&cx, &scope, a, s)).collect::<Result<Vec<_>, _>>()?;
            l.run(&vals)?.into_iter().zip(res).collect()
        }
        Some(Entity::Fun(d)) => {
            let nodes = type_nodes(&d.base.sig);
            let sets: Vec<SetCode> = nodes.iter().filter(|n| n.0 == ornate_surface::ast::NodeKind::Arrow).map(|n| SetCode::mu(&n.1, n.2.clone())).collect();
            let res: Vec<SetCode> = nodes.iter().filter(|n| n.0 == ornate_surface::ast::NodeKind::Times).map(|n| SetCode::mu(&n.1, n.2.clone())).collect();
            arity(sets.len())?;
            let vals = args.iter().zip(&sets).map(|(a, s)| value(&cx, &scope, a, s)).collect::<Result<Vec<_>, _>>()?;
            d.base.run(&vals)?.into_iter().zip(res).collect()
        }
        Some(Entity::Adjoint(a)) => {
            arity(a.arity())?;
            let mut vals = Vec::new();
            for (p, e) in args.iter().enumerate() {
                let s = a.arg_set(p, &vals)?;
                vals.push(value(&cx, &scope, e, &s)?);
            }
            let y = a.call(&vals)?;
            vec![a.shown_result(&vals[1], &y)?]
        }
        Some(other) => return Err(Fail::Usage(format!("{f} is a {}, not a function", other.kind()))),
        None => return Err(Fail::Usage(format!("unknown function {f}"))),
    };
    let shown: Vec<String> = results.iter().map(|(v, s)| ctx.show(s, v)).collect();
    if ctx.json {
        ctx.line(serde_json::json!({ "results": shown }).to_string());
    } else {
        for s in shown {
            ctx.line(s);
        }
    }
    Ok(())
}

/// An ornament by name; `id:FAMILY` is the identity ornament.
fn ornament_named(env: &Env, name: &str) -> Result<Ornament, Fail> {
    if let Some(fam) = name.strip_prefix("id:") {
        return env.family(fam).map(|d| id_orn(&d)).ok_or_else(|| Fail::Usage(format!("unknown family {fam}")));
    }
    if let Some(r) = env.reorn(name) {
        return Ok(r.ornament().clone());
    }
    env.ornament(name).ok_or_else(|| Fail::Usage(format!("{name} is not an ornament")))
}

fn forget(ctx: &mut Ctx, name: &str, text: &str, index: Option<&str>) -> Result<(), Fail> {
    let o = ornament_named(&ctx.env, name)?;
    let j = index_value(ctx, index, o.fine_index_set(), name)?;
    let v = expr_value(ctx, text, &SetCode::mu(&interp_orn(&o), j.clone()))?;
    let t = orn_forget(&o, &j, &v)?;
    let shown = ctx.show(&SetCode::mu(o.base(), o.re().apply(&j)?), &t);
    if ctx.json {
        ctx.line(serde_json::json!({ "value": shown }).to_string());
    } else {
        ctx.line(shown);
    }
    Ok(())
}

fn reorn_cmd(ctx: &mut Ctx, name: &str, index: Option<&str>) -> Result<(), Fail> {
    let o = ornament_named(&ctx.env, name)?;
    let r = ctx.env.reorn_of(o.name()).unwrap_or_else(|| reornament(&o));
    let fam = r.family().clone();
    let indices = match index {
        Some(t) => vec![expr_value(ctx, t, fam.index_set())?],
        None => enumerate(fam.index_set(), ctx.depth)?,
    };
    let mut rows = Vec::new();
    for idx in indices {
        let desc = show_desc(&ctx.env, &fam, &fam.at(&idx)?);
        rows.push((ctx.show(fam.index_set(), &idx), desc));
    }
    if ctx.json {
        let rows: Vec<_> = rows.iter().map(|(i, d)| serde_json::json!({ "index": i, "description": d })).collect();
        ctx.line(serde_json::json!({ "reornament": fam.name(), "of": o.name(), "at": rows }).to_string());
        return Ok(());
    }
    ctx.line(format!("{} : reornament of {} over {}", fam.name(), o.name(), show_set(&ctx.env, fam.index_set())));
    for (i, d) in rows {
        ctx.line(format!("  {i} : {d}"));
    }
    Ok(())
}

fn lift(ctx: &mut Ctx, name: &str) -> Result<(), Fail> {
    let Some(l) = ctx.env.lift(name).cloned() else {
        return Err(Fail::Usage(format!("{name} is not a lifting")));
    };
    if ctx.json {
        let holes: Vec<_> = l
            .holes
            .iter()
            .map(|h| serde_json::json!({ "path": h.path, "set": h.set, "solved": h.solved }))
            .collect();
        ctx.line(serde_json::json!({ "lift": name, "complete": l.complete(), "holes": holes }).to_string());
        return Ok(());
    }
    let open = l.open_holes().count();
    ctx.line(format!("{name}: {open} open hole{}", if open == 1 { "" } else { "s" }));
    for h in &l.holes {
        if !ctx.quiet || !h.solved {
            ctx.line(h.to_string());
        }
    }
    Ok(())
}

fn shown_json(ctx: &Ctx, s: &Option<Shown>) -> serde_json::Value {
    match s {
        Some(s) => serde_json::Value::String(ctx.show(&s.set, &s.value)),
        None => serde_json::Value::Null,
    }
}

fn case_text(ctx: &Ctx, c: &Case) -> String {
    let inputs: Vec<String> = c.inputs.iter().map(|s| ctx.show(&s.set, &s.value)).collect();
    let mut out = format!("inputs: {}", inputs.join(" "));
    if let Some(e) = &c.expected {
        let _ = write!(out, "; expected {}", ctx.show(&e.set, &e.value));
    }
    if let Some(a) = &c.actual {
        let _ = write!(out, "; actual {}", ctx.show(&a.set, &a.value));
    }
    if !c.note.is_empty() {
        let _ = write!(out, "; {}", c.note);
    }
    out
}

/// Prints a report; returns whether it passed.
fn emit(ctx: &mut Ctx, r: &Report) -> bool {
    if ctx.json {
        for c in &r.cases {
            let inputs: Vec<String> = c.inputs.iter().map(|s| ctx.show(&s.set, &s.value)).collect();
            let j = serde_json::json!({
                "report": r.name,
                "inputs": inputs,
                "expected": shown_json(ctx, &c.expected),
                "actual": shown_json(ctx, &c.actual),
                "pass": c.pass,
                "note": c.note,
            });
            ctx.line(j.to_string());
        }
        return r.passed();
    }
    let failures = r.failures().count();
    if failures == 0 {
        if !ctx.quiet {
            ctx.line(format!("{}: ok, {} cases", r.name, r.checked()));
        }
        return true;
    }
    ctx.line(format!("{}: FAILED, {failures} of {} cases", r.name, r.checked()));
    if let Some(c) = r.first_failure() {
        let text = case_text(ctx, c);
        ctx.line(format!("  counterexample: {text}"));
    }
    false
}

fn verify(ctx: &mut Ctx, kind: VerifyKind, targets: &[String]) -> Result<(), Fail> {
    let reports = match kind {
        VerifyKind::Coherence => {
            let [t, f, g] = targets else {
                return Err(Fail::Usage("verify coherence FUNORN BASE LIFTED".into()));
            };
            let t = ctx.env.funorn(t).ok_or_else(|| Fail::Usage(format!("{t} is not a functional ornament")))?;
            let f = ctx.env.base_fn(f).ok_or_else(|| Fail::Usage(format!("{f} is not a base function")))?;
            let g = ctx.env.patched(g).ok_or_else(|| Fail::Usage(format!("{g} is not a lifted function")))?;
            vec![coherence_check(t, f, g, &Budget::uniform(ctx.depth))?]
        }
        VerifyKind::Patch => patch_reports(ctx, targets)?,
        VerifyKind::Roundtrip => roundtrip_reports(ctx, targets)?,
        VerifyKind::Recomputation => recomputation_reports(ctx, targets)?,
    };
    let mut ok = true;
    for r in &reports {
        ok &= emit(ctx, r);
    }
    if ok {
        Ok(())
    } else {
        Err(Fail::Counterexample)
    }
}

fn patch_reports(ctx: &Ctx, targets: &[String]) -> Result<Vec<Report>, Fail> {
    let names: Vec<String> = if targets.is_empty() {
        ctx.env
            .entries()
            .filter(|&(_n, e)| matches!(e, Entity::Lift(l) if l.complete())).map(|(n, _e)| n.to_string())
            .collect()
    } else {
        targets.to_vec()
    };
    let budget = Budget::uniform(ctx.depth);
    let mut out = Vec::new();
    for n in names {
        let l = ctx.env.lift(&n).ok_or_else(|| Fail::Usage(format!("{n} is not a lifting")))?;
        let r = check_patch_fn(&l.funorn, &l.base.base, &l.patch, &budget)?;
        let passed = r.passed();
        out.push(r);
        if passed {
            let lifted = l.patched().map_err(Fail::Source)?;
            let mut c = coherence_check(&l.funorn, &l.base.base, &lifted, &budget)?;
            c.name = format!("{n} (patched)");
            out.push(c);
        }
    }
    Ok(out)
}

fn roundtrip_reports(ctx: &Ctx, targets: &[String]) -> Result<Vec<Report>, Fail> {
    let names: Vec<String> = if targets.is_empty() {
        let mut v: Vec<String> = ctx
            .env
            .entries()
            .filter(|&(_n, e)| matches!(e, Entity::Ornament(_))).map(|(n, _e)| n.to_string())
            .collect();
        v.push("id:Nat".into());
        v
    } else {
        targets.to_vec()
    };
    let d = ctx.depth;
    let mut out = Vec::new();
    for n in names {
        let o = ornament_named(&ctx.env, &n)?;
        let interp = interp_orn(&o);
        let r = ctx.env.reorn_of(o.name()).unwrap_or_else(|| reornament(&o));
        let mut rep = Report::new(&format!("{n} roundtrip"));
        for j in enumerate(o.fine_index_set(), d)? {
            let oset = SetCode::mu(&interp, j.clone());
            for tp in enumerate(&oset, d)? {
                let (t, tpp) = remember_reorn(&o, &j, &tp)?;
                let back = forget_reorn(&o, &Value::pair(j.clone(), t), &tpp)?;
                let pass = equal_value(&oset, &back, &tp)?;
                rep.cases.push(Case {
                    inputs: vec![Shown::new(tp.clone(), oset.clone())],
                    expected: Some(Shown::new(tp, oset.clone())),
                    actual: Some(Shown::new(back, oset.clone())),
                    pass,
                    note: "forget after remember".into(),
                });
            }
            let bset = SetCode::mu(o.base(), o.re().apply(&j)?);
            for t in enumerate(&bset, d)? {
                let idx = Value::pair(j.clone(), t.clone());
                let rset = SetCode::mu(r.family(), idx.clone());
                for tpp in enumerate(&rset, d)? {
                    let tp = forget_reorn(&o, &idx, &tpp)?;
                    let (t2, tpp2) = remember_reorn(&o, &j, &tp)?;
                    let pass = equal_value(&bset, &t2, &t)? && equal_value(&rset, &tpp2, &tpp)?;
                    rep.cases.push(Case {
                        inputs: vec![Shown::new(t.clone(), bset.clone()), Shown::new(tpp.clone(), rset.clone())],
                        expected: Some(Shown::new(tpp, rset.clone())),
                        actual: Some(Shown::new(tpp2, rset.clone())),
                        pass,
                        note: "remember after forget".into(),
                    });
                }
            }
        }
        out.push(rep);
    }
    Ok(out)
}

fn recomputation_reports(ctx: &Ctx, targets: &[String]) -> Result<Vec<Report>, Fail> {
    let names: Vec<String> = if targets.is_empty() {
        ctx.env
            .entries()
            .filter(|&(_n, e)| matches!(e, Entity::Algebraic(_) | Entity::Reorn(_))).map(|(n, _e)| n.to_string())
            .collect()
    } else {
        targets.to_vec()
    };
    let d = ctx.depth;
    let mut out = Vec::new();
    for n in names {
        let mut rep = Report::new(&format!("{n} recomputation"));
        match ctx.env.get(&n) {
            Some(Entity::Algebraic(ao)) => {
                for idx in enumerate(ao.family().index_set(), d)? {
                    let s = SetCode::mu(ao.family(), idx.clone());
                    for t in enumerate(&s, d)? {
                        let pass = assert_recomputation(ao, &idx, &t)?;
                        rep.cases.push(Case { inputs: vec![Shown::new(t, s.clone())], expected: None, actual: None, pass, note: String::new() });
                    }
                }
            }
            Some(Entity::Reorn(r)) => {
                for idx in enumerate(r.family().index_set(), d)? {
                    let s = SetCode::mu(r.family(), idx.clone());
                    for t in enumerate(&s, d)? {
                        let pass = reorn_recomputation(r, &idx, &t)?;
                        rep.cases.push(Case { inputs: vec![Shown::new(t, s.clone())], expected: None, actual: None, pass, note: String::new() });
                    }
                }
            }
            _ => return Err(Fail::Usage(format!("{n} is not an algebraic ornament or reornament"))),
        }
        out.push(rep);
    }
    Ok(out)
}
