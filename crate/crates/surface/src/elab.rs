//! Elaboration of declarations into kernel entities.

use std::sync::Arc;

use ornate_core::algebraic::algebraic_ornament_named;
use ornate_core::check::{enumerate, sigma_nodes};
use ornate_core::funorn::{BaseFn, FunOrn, FunType, OrnNode};
use ornate_core::ornament::{check_orn, id_orn, interp_orn, InvWitness, OrnCode, Ornament, Reindexing, Relabel};
use ornate_core::reornament::reornament_named;
use ornate_core::{fam, Fam, Algebra, Desc, DescFun, KernelError, SetCode, Tag, Value};
use thiserror::Error;

use crate::ast::{
    parse, AlgDecl, Alt, Body, DataDecl, Decl, Elim, Expr, Field, FunDecl, Index, Item, NodeKind, OrnDecl,
    OrnEntry, OrnRef, Pat, SetExpr, SourceFile, TypeNode,
};
use crate::env::{Entity, Env};
use crate::eval::{
    bad, bind_pattern, destructure, eval_set, pat_matches, select_branch, value, Cx, FunCore, KResult, Scope,
};
use crate::script::{AdjDef, LiftDef};
use crate::sexpr::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{path}: {reason}")]
pub struct ElabError {
    pub path: String,
    pub reason: String,
}

impl ElabError {
    pub fn new(path: impl Into<String>, reason: impl Into<String>) -> ElabError {
        ElabError { path: path.into(), reason: reason.into() }
    }

    fn kernel(path: &str, e: KernelError) -> ElabError {
        match e {
            KernelError::IllFormedOrnament { path: p, reason } if p != "/" => {
                ElabError::new(format!("{path}{p}"), reason)
            }
            other => ElabError::new(path, other.to_string()),
        }
    }
}

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("elaboration error at {0}")]
    Elab(#[from] ElabError),
}

/// Parses and elaborates `text` on top of `env`.
pub fn load(text: &str, env: &Env) -> Result<Env, SurfaceError> {
    Ok(elaborate(&parse(text)?, env)?)
}

pub fn elaborate(file: &SourceFile, env: &Env) -> Result<Env, ElabError> {
    let mut env = env.clone();
    for d in &file.decls {
        env = elaborate_decl(d, &env)?;
    }
    Ok(env)
}

const SAMPLE_DEPTH: usize = 2;

pub fn elaborate_decl(d: &Decl, env: &Env) -> Result<Env, ElabError> {
    let name = d.name();
    if env.get(name).is_some() {
        return Err(ElabError::new(name, "already defined"));
    }
    let snapshot = Arc::new(env.clone());
    let entity = match d {
        Decl::Data(dd) => Entity::Data(DataDef::new(dd, snapshot)?),
        Decl::Ornament(od) => Entity::Ornament(OrnDef::new(od, snapshot)?),
        Decl::Reornament { name, orn } => {
            let Some(o) = env.ornament(orn) else {
                return Err(ElabError::new(name.as_str(), format!("unknown ornament {orn}")));
            };
            Entity::Reorn(reornament_named(name, &o))
        }
        Decl::Algebra(a) => Entity::Algebra(algebra(a, snapshot)?),
        Decl::Algebraic { name, from, algebra } => {
            let Some(f) = env.family(from) else {
                return Err(ElabError::new(name.as_str(), format!("unknown family {from}")));
            };
            let Some(a) = env.algebra(algebra) else {
                return Err(ElabError::new(name.as_str(), format!("unknown algebra {algebra}")));
            };
            Entity::Algebraic(algebraic_ornament_named(name, &f, a))
        }
        Decl::Type { name, nodes } => Entity::Type(fun_type(name, nodes, &snapshot)?),
        Decl::FunOrn { name, over, nodes } => Entity::FunOrn(funorn(name, over, nodes, &snapshot)?),
        Decl::Fun(f) => Entity::Fun(FunDef::new(f, snapshot)?),
        Decl::Lift(l) => Entity::Lift(Arc::new(LiftDef::new(l, snapshot)?)),
        Decl::Patch { name, lift } => {
            let Some(l) = env.lift(lift) else {
                return Err(ElabError::new(name.as_str(), format!("unknown lifting {lift}")));
            };
            let mut p = l.patched().map_err(|e| ElabError::new(name.as_str(), e))?;
            p.name = name.clone();
            Entity::Patched(p)
        }
        Decl::RlAdjoint { name, algebraic, lift, index_arg } => {
            Entity::Adjoint(Arc::new(AdjDef::new(name, algebraic, lift, *index_arg, snapshot)?))
        }
    };
    let mut out = env.clone();
    out.push(d.clone(), entity);
    Ok(out)
}

// ---------------------------------------------------------------- selection

/// Alternatives chosen by a body at one index, with the index bindings.
pub struct Selected<A> {
    pub tagged: bool,
    pub items: Vec<A>,
    pub scope: Scope,
}

fn index_scope(index: Option<&Index>, i: &Value, iset: &SetCode) -> Scope {
    let mut scope = Scope::default();
    if let Some(Index { var: Some(v), .. }) = index {
        scope.push(v, i.clone(), iset.clone());
    }
    scope
}

/// Every branch whose pattern matches contributes its items, in order.
fn select<A: Clone>(
    cx: &Cx,
    body: &Body<A>,
    index: Option<&Index>,
    i: &Value,
    iset: &SetCode,
    is_alt: &dyn Fn(&A) -> bool,
) -> KResult<Selected<A>> {
    let mut scope = index_scope(index, i, iset);
    match body {
        Body::Any(branches) => Ok(Selected { tagged: true, items: branches.concat(), scope }),
        Body::Match(var, branches) => {
            let Some((v, s)) = scope.get(var) else {
                return bad(format!("unbound index variable {var}"));
            };
            let (v, s) = (v.clone(), s.clone());
            let mut items = Vec::new();
            for (p, alts) in branches {
                let one = [(p.clone(), ())];
                let Ok((pat, _, node)) = select_branch(&cx.env, &one, &v, &s) else { continue };
                if let Some(node) = node {
                    for (n, f) in bind_pattern(pat, &node)? {
                        scope.push(n, f.value.clone(), f.set.clone());
                    }
                }
                items.extend(alts.iter().cloned());
            }
            let alts = items.iter().filter(|a| is_alt(a)).count();
            Ok(Selected { tagged: alts != 1, items, scope })
        }
    }
}

// ---------------------------------------------------------------- data

pub struct DataDef {
    pub decl: DataDecl,
    pub desc: DescFun,
    pub index_set: SetCode,
    core: Arc<DataCore>,
}

struct DataCore {
    decl: DataDecl,
    index_set: SetCode,
    cx: Cx,
}

fn is_rec(s: &SetExpr, me: &str) -> bool {
    match s {
        SetExpr::Mu(n, _) | SetExpr::Name(n) => n == me,
        _ => false,
    }
}

fn index_set_of(cx: &Cx, index: Option<&Index>, path: &str) -> Result<SetCode, ElabError> {
    match index {
        None => Ok(SetCode::Unit),
        Some(ix) => eval_set(cx, &Scope::default(), &ix.set).map_err(|e| ElabError::kernel(path, e)),
    }
}

fn check_params(env: &Env, params: &[String], path: &str) -> Result<(), ElabError> {
    for p in params {
        if env.param(p).is_none() {
            return Err(ElabError::new(path, format!("parameter {p} has no instantiation")));
        }
    }
    Ok(())
}

fn check_body_var<A>(body: &Body<A>, index: Option<&Index>, path: &str) -> Result<(), ElabError> {
    if let Body::Match(v, _) = body {
        if index.and_then(|i| i.var.as_deref()) != Some(v.as_str()) {
            return Err(ElabError::new(path, format!("case on {v}, which is not the index variable")));
        }
    }
    Ok(())
}

impl DataDef {
    fn new(d: &DataDecl, env: Arc<Env>) -> Result<Arc<DataDef>, ElabError> {
        let path = d.name.as_str();
        check_params(&env, &d.params, path)?;
        check_body_var(&d.body, d.index.as_ref(), path)?;
        let alts: Vec<&Alt> = match &d.body {
            Body::Any(bs) => bs.iter().flatten().collect(),
            Body::Match(_, bs) => bs.iter().flat_map(|(_, a)| a).collect(),
        };
        for alt in alts {
            if let Some(k) = alt.fields.iter().position(|f| is_rec(&f.set, &d.name)) {
                if let Some(f) = alt.fields[k..].iter().find(|f| !is_rec(&f.set, &d.name)) {
                    return Err(ElabError::new(
                        format!("{}/{}", d.name, alt.ctor),
                        format!("field {} follows a recursive field", f.name),
                    ));
                }
            }
        }
        let cx = Cx::new(env);
        let index_set = index_set_of(&cx, d.index.as_ref(), path)?;
        let core = Arc::new(DataCore { decl: d.clone(), index_set: index_set.clone(), cx });
        let c2 = core.clone();
        let desc = DescFun::new(&d.name, index_set.clone(), fam(move |i| c2.build(i)));
        let def = DataDef { decl: d.clone(), desc, index_set, core };
        for i in enumerate(&def.index_set, SAMPLE_DEPTH).map_err(|e| ElabError::kernel(path, e))? {
            def.desc
                .at(&i)
                .and_then(|desc| sigma_nodes(&desc, 1))
                .map_err(|e| ElabError::new(format!("{path} at {i}"), e.to_string()))?;
        }
        Ok(Arc::new(def))
    }

    pub fn alternatives(&self, i: &Value) -> KResult<Selected<Alt>> {
        self.core.alternatives(i)
    }

    pub fn single_alt(&self, i: &Value) -> KResult<Option<String>> {
        let sel = self.alternatives(i)?;
        Ok(match (sel.tagged, sel.items.as_slice()) {
            (false, [a]) => Some(a.ctor.clone()),
            _ => None,
        })
    }

    pub(crate) fn cx(&self) -> &Cx {
        &self.core.cx
    }

    /// The index a recursive field points at.
    pub(crate) fn rec_index(&self, scope: &Scope, s: &SetExpr) -> KResult<Value> {
        self.core.rec_index(scope, s)
    }

    pub(crate) fn is_rec(&self, f: &Field) -> bool {
        is_rec(&f.set, &self.decl.name)
    }
}

impl DataCore {
    fn alternatives(&self, i: &Value) -> KResult<Selected<Alt>> {
        select(&self.cx, &self.decl.body, self.decl.index.as_ref(), i, &self.index_set, &|_| true)
    }

    fn build(self: &Arc<Self>, i: &Value) -> KResult<Desc> {
        let sel = self.alternatives(i)?;
        if !sel.tagged {
            return self.alt_desc(&sel.scope, Arc::new(sel.items[0].fields.clone()), 0);
        }
        let mut alts = Vec::new();
        for a in &sel.items {
            if alts.iter().any(|(c, _): &(&str, Desc)| *c == a.ctor) {
                return bad(format!("{} offers {} twice at {i}", self.decl.name, a.ctor));
            }
            alts.push((a.ctor.as_str(), self.alt_desc(&sel.scope, Arc::new(a.fields.clone()), 0)?));
        }
        Ok(Desc::choice(alts))
    }

    fn alt_desc(self: &Arc<Self>, scope: &Scope, fields: Arc<Vec<Field>>, k: usize) -> KResult<Desc> {
        let me = self.decl.name.as_str();
        let Some(f) = fields.get(k) else { return Ok(Desc::One) };
        if is_rec(&f.set, me) {
            let recs = &fields[k..];
            if recs.len() == 1 {
                return Ok(Desc::Var(self.rec_index(scope, &f.set)?));
            }
            let names: Vec<&str> = recs.iter().map(|f| f.name.as_str()).collect();
            let mut table = Vec::new();
            for r in recs {
                table.push((Tag::new(&r.name), self.rec_index(scope, &r.set)?));
            }
            return Ok(Desc::pi(
                SetCode::enumeration(&names),
                fam(move |t| match table.iter().find(|(n, _)| Some(n) == t.as_tag()) {
                    Some((_, i)) => Ok(Desc::Var(i.clone())),
                    None => bad(format!("{t} is not a recursive field")),
                }),
            ));
        }
        let dom = eval_set(&self.cx, scope, &f.set)?;
        let (me, scope, dom2, name) = (self.clone(), scope.clone(), dom.clone(), f.name.clone());
        Ok(Desc::sigma(
            dom,
            fam(move |s| me.alt_desc(&scope.bind(&name, s.clone(), dom2.clone()), fields.clone(), k + 1)),
        ))
    }

    fn rec_index(&self, scope: &Scope, s: &SetExpr) -> KResult<Value> {
        match s {
            SetExpr::Mu(_, e) => value(&self.cx, scope, e, &self.index_set),
            _ => Ok(Value::Unit),
        }
    }
}

// ---------------------------------------------------------------- ornaments

pub struct OrnDef {
    pub decl: OrnDecl,
    pub orn: Ornament,
    pub interp: DescFun,
    core: Arc<OrnCore>,
}

struct OrnCore {
    decl: OrnDecl,
    base: Arc<DataDef>,
    jset: SetCode,
    cx: Cx,
}

#[derive(Clone)]
struct OrnAlt {
    ctor: String,
    base: String,
    items: Vec<Item>,
}

/// What an ornament offers at one fine index, against the base alternatives.
struct Stage {
    j: Value,
    tagged: bool,
    base_alts: Vec<Alt>,
    sb: Scope,
    alts: Vec<OrnAlt>,
}

struct AltCx {
    path: String,
    fields: Vec<Field>,
    items: Vec<Item>,
}

fn orn_err<T>(path: &str, reason: impl Into<String>) -> KResult<T> {
    Err(KernelError::IllFormedOrnament { path: path.to_string(), reason: reason.into() })
}

fn is_alt(e: &OrnEntry) -> bool {
    matches!(e, OrnEntry::Alt { .. })
}

impl OrnDef {
    fn new(d: &OrnDecl, env: Arc<Env>) -> Result<Arc<OrnDef>, ElabError> {
        let path = d.name.as_str();
        check_params(&env, &d.params, path)?;
        check_body_var(&d.body, d.index.as_ref(), path)?;
        let Some(base) = env.data(&d.from).cloned() else {
            return Err(ElabError::new(path, format!("{} is not a data declaration", d.from)));
        };
        let cx = Cx::new(env);
        let jset = match &d.index {
            Some(_) => index_set_of(&cx, d.index.as_ref(), path)?,
            None => base.index_set.clone(),
        };
        if d.index.is_none() && d.reindex.is_some() {
            return Err(ElabError::new(path, "reindexing needs an index declaration"));
        }
        let core = Arc::new(OrnCore { decl: d.clone(), base: base.clone(), jset: jset.clone(), cx });
        let c = core.clone();
        let re = Reindexing::new(jset.clone(), base.index_set.clone(), move |j| c.reindex(j));
        let c = core.clone();
        let orn = Ornament::new(&d.name, base.desc.clone(), re, fam(move |j| c.code_at(j)));
        let interp = interp_orn(&orn);
        for j in enumerate(&jset, SAMPLE_DEPTH).map_err(|e| ElabError::kernel(path, e))? {
            check_orn(&orn, &j, SAMPLE_DEPTH).map_err(|e| ElabError::kernel(path, e))?;
        }
        Ok(Arc::new(OrnDef { decl: d.clone(), orn, interp, core }))
    }

    pub fn base(&self) -> &Arc<DataDef> {
        &self.core.base
    }

    pub fn single_alt(&self, j: &Value) -> KResult<Option<String>> {
        let sel = self.core.select(j)?;
        let alts: Vec<&OrnEntry> = sel.items.iter().filter(|e| is_alt(e)).collect();
        Ok(match alts.as_slice() {
            [OrnEntry::Alt { ctor, .. }] => Some(ctor.clone()),
            _ => None,
        })
    }

    /// The ornamented name of base constructor `base` at `j`.
    pub fn ctor_for_base(&self, j: &Value, base: &str) -> KResult<Option<String>> {
        let sel = self.core.select(j)?;
        Ok(sel.items.iter().find_map(|e| match e {
            OrnEntry::Alt { ctor, from, .. } if from.as_deref().unwrap_or(ctor) == base => Some(ctor.clone()),
            _ => None,
        }))
    }
}

impl OrnCore {
    fn reindex(&self, j: &Value) -> KResult<Value> {
        match &self.decl.reindex {
            None => Ok(j.clone()),
            Some(e) => {
                let scope = index_scope(self.decl.index.as_ref(), j, &self.jset);
                value(&self.cx, &scope, e, &self.base.index_set)
            }
        }
    }

    fn select(&self, j: &Value) -> KResult<Selected<OrnEntry>> {
        select(&self.cx, &self.decl.body, self.decl.index.as_ref(), j, &self.jset, &is_alt)
    }

    fn code_at(self: &Arc<Self>, j: &Value) -> KResult<OrnCode> {
        let i = self.reindex(j)?;
        let bsel = self.base.alternatives(&i)?;
        let osel = self.select(j)?;
        let mut prefix = Vec::new();
        let mut alts = Vec::new();
        for e in osel.items {
            match e {
                OrnEntry::Insert(n, s) if alts.is_empty() => prefix.push((n, s)),
                OrnEntry::Insert(n, _) => {
                    return orn_err("", format!("insertion {n} follows an alternative at {j}"))
                }
                OrnEntry::Alt { ctor, from, items } => {
                    let base = from.unwrap_or_else(|| ctor.clone());
                    alts.push(OrnAlt { ctor, base, items });
                }
            }
        }
        let stage = Arc::new(Stage { j: j.clone(), tagged: bsel.tagged, base_alts: bsel.items, sb: bsel.scope, alts });
        self.prefix_code(Arc::new(prefix), 0, osel.scope, stage)
    }

    fn prefix_code(
        self: &Arc<Self>,
        prefix: Arc<Vec<(String, SetExpr)>>,
        k: usize,
        so: Scope,
        st: Arc<Stage>,
    ) -> KResult<OrnCode> {
        let Some((n, s)) = prefix.get(k) else { return self.choice_code(&st, so) };
        let dom = eval_set(&self.cx, &so, s)?;
        let (me, n2, d2) = (self.clone(), n.clone(), dom.clone());
        let label = n.clone();
        Ok(OrnCode::insert_named(
            &label,
            dom,
            fam(move |s| me.prefix_code(prefix.clone(), k + 1, so.bind(&n2, s.clone(), d2.clone()), st.clone())),
        ))
    }

    fn choice_code(self: &Arc<Self>, st: &Arc<Stage>, so: Scope) -> KResult<OrnCode> {
        let base_name = &self.decl.from;
        for a in &st.alts {
            if !st.base_alts.iter().any(|b| b.ctor == a.base) {
                return orn_err(&format!("/{}", a.ctor), format!("{base_name} has no {} at this index", a.base));
            }
        }
        let alt_cx = |a: &OrnAlt| {
            let b = st.base_alts.iter().find(|b| b.ctor == a.base).unwrap();
            Arc::new(AltCx { path: format!("/{}", a.ctor), fields: b.fields.clone(), items: a.items.clone() })
        };
        if !st.tagged {
            let [a] = st.alts.as_slice() else {
                return orn_err("", format!("{base_name} has a single constructor at {}", st.j));
            };
            return self.alt_code(alt_cx(a), 0, 0, st.sb.clone(), so);
        }
        let covers = st.alts.len() == st.base_alts.len()
            && st.base_alts.iter().all(|b| st.alts.iter().filter(|a| a.base == b.ctor).count() == 1);
        if covers {
            let relabel = st
                .alts
                .iter()
                .any(|a| a.ctor != a.base)
                .then(|| Relabel::new(st.alts.iter().map(|a| (Tag::new(&a.base), Tag::new(&a.ctor))).collect()));
            let (me, st2) = (self.clone(), st.clone());
            return Ok(OrnCode::Sigma {
                fam: fam(move |t| {
                    let Some(a) = st2.alts.iter().find(|a| Some(a.base.as_str()) == t.as_tag().map(Tag::as_str))
                    else {
                        return bad(format!("{t} is not a constructor"));
                    };
                    let b = st2.base_alts.iter().find(|b| b.ctor == a.base).unwrap();
                    let ac = Arc::new(AltCx {
                        path: format!("/{}", a.ctor),
                        fields: b.fields.clone(),
                        items: a.items.clone(),
                    });
                    me.alt_code(ac, 0, 0, st2.sb.clone(), so.clone())
                }),
                relabel,
            });
        }
        match st.alts.as_slice() {
            [a] => Ok(OrnCode::delete(Value::tag(&a.base), self.alt_code(alt_cx(a), 0, 0, st.sb.clone(), so)?)),
            [] => orn_err("", format!("no alternatives at {}", st.j)),
            _ => orn_err("", format!("alternatives must cover every constructor of {base_name} or pick one")),
        }
    }

    fn alt_code(self: &Arc<Self>, ac: Arc<AltCx>, fi: usize, ii: usize, sb: Scope, so: Scope) -> KResult<OrnCode> {
        let path = ac.path.as_str();
        if let Some(Item::Insert(n, s)) = ac.items.get(ii) {
            let dom = eval_set(&self.cx, &so, s)?;
            let (me, n2, d2, ac2) = (self.clone(), n.clone(), dom.clone(), ac.clone());
            return Ok(OrnCode::insert_named(
                n,
                dom,
                fam(move |s| me.alt_code(ac2.clone(), fi, ii + 1, sb.clone(), so.bind(&n2, s.clone(), d2.clone()))),
            ));
        }
        let Some(f) = ac.fields.get(fi) else {
            return match ac.items.get(ii) {
                None => Ok(OrnCode::One),
                Some(it) => orn_err(path, format!("{it:?} matches no field")),
            };
        };
        if self.base.is_rec(f) {
            let recs = &ac.fields[fi..];
            let items = &ac.items[ii..];
            if items.len() != recs.len() {
                return orn_err(path, "every recursive field needs one copy, after all insertions");
            }
            let mut ws = Vec::new();
            for (r, it) in recs.iter().zip(items) {
                let Item::Copy(n, j) = it else {
                    return orn_err(path, format!("recursive field {} can only be copied", r.name));
                };
                if n != &r.name {
                    return orn_err(path, format!("expected field {}, found {n}", r.name));
                }
                let expected = self.base.rec_index(&sb, &r.set)?;
                let j = match j {
                    Some(e) => value(&self.cx, &so, e, &self.jset)?,
                    None => expected.clone(),
                };
                ws.push((Tag::new(&r.name), InvWitness::new(j, expected)));
            }
            if ws.len() == 1 {
                return Ok(OrnCode::Var(ws.remove(0).1));
            }
            return Ok(OrnCode::Pi(fam(move |t| match ws.iter().find(|(n, _)| Some(n) == t.as_tag()) {
                Some((_, w)) => Ok(OrnCode::Var(w.clone())),
                None => bad(format!("{t} is not a recursive field")),
            })));
        }
        let dom = eval_set(self.base.cx(), &sb, &f.set)?;
        match ac.items.get(ii) {
            Some(Item::Copy(n, None)) if n == &f.name => {
                let (me, n2) = (self.clone(), n.clone());
                Ok(OrnCode::sigma(fam(move |s| {
                    me.alt_code(
                        ac.clone(),
                        fi + 1,
                        ii + 1,
                        sb.bind(&n2, s.clone(), dom.clone()),
                        so.bind(&n2, s.clone(), dom.clone()),
                    )
                })))
            }
            Some(Item::Delete(n, e)) if n == &f.name => {
                let r = value(&self.cx, &so, e, &dom)?;
                let rest = self.alt_code(
                    ac.clone(),
                    fi + 1,
                    ii + 1,
                    sb.bind(n, r.clone(), dom.clone()),
                    so.bind(n, r.clone(), dom.clone()),
                )?;
                Ok(OrnCode::delete(r, rest))
            }
            Some(it) => orn_err(path, format!("expected a copy or deletion of {}, found {it:?}", f.name)),
            None => orn_err(path, format!("field {} is neither copied nor deleted", f.name)),
        }
    }
}

// ---------------------------------------------------------------- algebras

fn algebra(a: &AlgDecl, env: Arc<Env>) -> Result<Algebra, ElabError> {
    let path = a.name.as_str();
    let Some(f) = env.family(&a.over) else {
        return Err(ElabError::new(path, format!("unknown family {}", a.over)));
    };
    let cx = Cx::new(env);
    let iset = f.index_set().clone();
    let (cx1, var, carrier, iset1) = (cx.clone(), a.index.clone(), a.carrier.clone(), iset.clone());
    let carrier_at: Fam<SetCode> = Arc::new(move |i| {
        let mut scope = Scope::default();
        if let Some(v) = &var {
            scope.push(v, i.clone(), iset1.clone());
        }
        eval_set(&cx1, &scope, &carrier)
    });
    let c2 = carrier_at.clone();
    let carrier = fam(move |i| c2(i));
    let (var, branches) = (a.index.clone(), a.branches.clone());
    let step = move |i: &Value, payload: &Value| {
        let node = destructure(&cx.env, &f, i, payload, &|j| carrier_at(j))?;
        let Some((pat, body)) = branches.iter().find(|(p, _)| pat_matches(p, node.name.as_deref())) else {
            return bad(format!("no algebra branch for {}", node.name.as_deref().unwrap_or("this node")));
        };
        let mut scope = Scope::default();
        if let Some(v) = &var {
            scope.push(v, i.clone(), iset.clone());
        }
        for (n, fv) in bind_pattern(pat, &node)? {
            scope.push(n, fv.value.clone(), fv.set.clone());
        }
        value(&cx, &scope, body, &carrier_at(i)?)
    };
    Ok(Algebra::new(&a.name, carrier, step))
}

// ---------------------------------------------------------------- functions

/// The nodes of a function type, in order.
pub fn type_nodes(t: &FunType) -> Vec<(NodeKind, DescFun, Value)> {
    let mut out = Vec::new();
    let mut cur = t;
    loop {
        cur = match cur {
            FunType::Arrow(d, i, r) => {
                out.push((NodeKind::Arrow, d.clone(), i.clone()));
                r
            }
            FunType::Times(d, i, r) => {
                out.push((NodeKind::Times, d.clone(), i.clone()));
                r
            }
            FunType::End => return out,
        }
    }
}

fn fun_type(name: &str, nodes: &[TypeNode], env: &Arc<Env>) -> Result<FunType, ElabError> {
    let cx = Cx::new(env.clone());
    let mut t = FunType::End;
    for n in nodes.iter().rev() {
        let Some(f) = env.family(&n.family) else {
            return Err(ElabError::new(name, format!("unknown family {}", n.family)));
        };
        let i = match &n.index {
            Some(e) => value(&cx, &Scope::default(), e, f.index_set()).map_err(|e| ElabError::kernel(name, e))?,
            None if matches!(f.index_set(), SetCode::Unit) => Value::Unit,
            None => return Err(ElabError::new(name, format!("{} needs an index", n.family))),
        };
        t = match n.kind {
            NodeKind::Arrow => FunType::arrow(&f, i, t),
            NodeKind::Times => FunType::times(&f, i, t),
        };
    }
    Ok(t)
}

fn funorn(name: &str, over: &str, refs: &[OrnRef], env: &Arc<Env>) -> Result<FunOrn, ElabError> {
    let Some(t) = env.fun_type(over) else {
        return Err(ElabError::new(name, format!("unknown function type {over}")));
    };
    let nodes = type_nodes(t);
    if nodes.len() != refs.len() {
        return Err(ElabError::new(name, format!("{over} has {} nodes, {} given", nodes.len(), refs.len())));
    }
    let cx = Cx::new(env.clone());
    let mut out = FunOrn::End;
    for ((kind, d, i), r) in nodes.iter().zip(refs).rev() {
        let (orn, node) = if r.orn == "id" {
            let o = id_orn(d);
            (o.clone(), OrnNode::new(&o))
        } else {
            let Some(o) = env.ornament(&r.orn) else {
                return Err(ElabError::new(name, format!("unknown ornament {}", r.orn)));
            };
            let node = match env.reorn_of(&r.orn) {
                Some(re) => OrnNode::with_reorn(&o, &re),
                None => OrnNode::new(&o),
            };
            (o, node)
        };
        let j = match &r.j {
            Some(e) => value(&cx, &Scope::default(), e, orn.fine_index_set()).map_err(|e| ElabError::kernel(name, e))?,
            None => i.clone(),
        };
        let w = InvWitness::new(j, i.clone());
        out = match kind {
            NodeKind::Arrow => FunOrn::arrow(node, w, out),
            NodeKind::Times => FunOrn::times(node, w, out),
        };
    }
    out.check_over(t).map_err(|e| ElabError::kernel(name, e))?;
    Ok(out)
}

/// The elimination tree of a function body, down to its first leaves.
#[derive(Clone, Debug, PartialEq)]
pub enum Skel {
    Elim(Elim, String, Vec<(Option<String>, Skel)>),
    Leaf,
}

pub fn skeleton(e: &Expr) -> Skel {
    match e {
        Expr::Elim(k, v, bs) => {
            Skel::Elim(*k, v.clone(), bs.iter().map(|(p, b)| (p.ctor().map(str::to_string), skeleton(b))).collect())
        }
        _ => Skel::Leaf,
    }
}

pub struct FunDef {
    pub decl: FunDecl,
    pub core: Arc<FunCore>,
    pub base: BaseFn,
    pub skel: Skel,
}

fn pat_vars(p: &Pat) -> Vec<String> {
    match p {
        Pat::Wild => Vec::new(),
        Pat::Ctor(_, vs) => vs.clone(),
    }
}

fn check_calls(e: &Expr, args: &[String], frame: Option<(usize, Vec<String>)>, path: &str) -> Result<(), ElabError> {
    let err = |m: String| Err(ElabError::new(path, m));
    match e {
        Expr::Elim(kind, v, bs) => {
            let pos = args.iter().position(|a| a == v);
            if *kind != Elim::Case && pos.is_none() {
                return err(format!("{} must eliminate an argument, not {v}", kind.keyword()));
            }
            for (p, b) in bs {
                let inner = match kind {
                    Elim::Ind => Some((pos.unwrap(), pat_vars(p))),
                    Elim::Fold => None,
                    Elim::Case => frame.clone(),
                };
                check_calls(b, args, inner, path)?;
            }
            Ok(())
        }
        Expr::Call(xs) => {
            let Some((k, subs)) = &frame else { return err("call outside an ind branch".into()) };
            if xs.len() != args.len() {
                return err(format!("call passes {} arguments, {} expected", xs.len(), args.len()));
            }
            match &xs[*k] {
                Expr::Name(n) if subs.contains(n) => {}
                _ => return err(format!("call must pass a sub-term of {} in position {k}", args[*k])),
            }
            xs.iter().try_for_each(|x| check_calls(x, args, frame.clone(), path))
        }
        Expr::App(_, xs) | Expr::In(xs) | Expr::Values(xs) => {
            xs.iter().try_for_each(|x| check_calls(x, args, frame.clone(), path))
        }
        Expr::Pair(a, b) => {
            check_calls(a, args, frame.clone(), path)?;
            check_calls(b, args, frame, path)
        }
        Expr::Table(rows) => rows.iter().try_for_each(|(a, b)| {
            check_calls(a, args, frame.clone(), path)?;
            check_calls(b, args, frame.clone(), path)
        }),
        Expr::Name(_) | Expr::Num(_) | Expr::Tag(_) => Ok(()),
    }
}

impl FunDef {
    fn new(f: &FunDecl, env: Arc<Env>) -> Result<Arc<FunDef>, ElabError> {
        let path = f.name.as_str();
        let Some(t) = env.fun_type(&f.ty) else {
            return Err(ElabError::new(path, format!("unknown function type {}", f.ty)));
        };
        let t = t.clone();
        let mut arg_sets = Vec::new();
        let mut results = Vec::new();
        for (k, d, i) in type_nodes(&t) {
            match k {
                NodeKind::Arrow => arg_sets.push(SetCode::mu(&d, i)),
                NodeKind::Times => results.push(SetCode::mu(&d, i)),
            }
        }
        if arg_sets.len() != f.args.len() {
            return Err(ElabError::new(path, format!("{} takes {} arguments", f.ty, arg_sets.len())));
        }
        check_calls(&f.body, &f.args, None, path)?;
        let core = Arc::new(FunCore {
            name: f.name.clone(),
            args: f.args.clone(),
            arg_sets,
            results,
            body: f.body.clone(),
            env,
        });
        let c = core.clone();
        let base = BaseFn::new(&f.name, t, Arc::new(move |xs| c.run(xs))).map_err(|e| ElabError::kernel(path, e))?;
        Ok(Arc::new(FunDef { decl: f.clone(), core, base, skel: skeleton(&f.body) }))
    }
}
