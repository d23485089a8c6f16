//! Elaborated entities, looked up by name.

use std::sync::Arc;

use ornate_core::algebraic::AlgOrnament;
use ornate_core::funorn::{BaseFn, FunOrn, FunType, LiftedFn};
use ornate_core::ornament::Ornament;
use ornate_core::reornament::Reorn;
use ornate_core::{Algebra, DescFun, SetCode, Value};

use crate::ast::Decl;
use crate::elab::{DataDef, FunDef, OrnDef};
use crate::eval::KResult;
use crate::script::{AdjDef, LiftDef};

#[derive(Clone)]
pub enum Entity {
    Data(Arc<DataDef>),
    Ornament(Arc<OrnDef>),
    Reorn(Reorn),
    Algebra(Algebra),
    Algebraic(AlgOrnament),
    Type(FunType),
    FunOrn(FunOrn),
    Fun(Arc<FunDef>),
    Lift(Arc<LiftDef>),
    Patched(LiftedFn),
    Adjoint(Arc<AdjDef>),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Data(_) => "data",
            Entity::Ornament(_) => "ornament",
            Entity::Reorn(_) => "reornament",
            Entity::Algebra(_) => "algebra",
            Entity::Algebraic(_) => "algebraic ornament",
            Entity::Type(_) => "function type",
            Entity::FunOrn(_) => "functional ornament",
            Entity::Fun(_) => "function",
            Entity::Lift(_) => "lifting",
            Entity::Patched(_) => "patched function",
            Entity::Adjoint(_) => "adjoint function",
        }
    }
}

/// An immutable environment; elaboration returns an extended copy.
#[derive(Clone)]
pub struct Env {
    params: Vec<(String, SetCode)>,
    entries: Vec<(String, Entity)>,
    decls: Vec<Decl>,
}

impl Default for Env {
    fn default() -> Env {
        Env::new()
    }
}

impl Env {
    /// The default instantiation `A := (enum x y)`.
    pub fn new() -> Env {
        Env::with_params(vec![("A".into(), SetCode::enumeration(&["x", "y"]))])
    }

    pub fn with_params(params: Vec<(String, SetCode)>) -> Env {
        Env { params, entries: Vec::new(), decls: Vec::new() }
    }

    pub fn params(&self) -> &[(String, SetCode)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<&SetCode> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &Entity)> {
        self.entries.iter().map(|(n, e)| (n.as_str(), e))
    }

    pub fn get(&self, name: &str) -> Option<&Entity> {
        self.entries.iter().rev().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub(crate) fn push(&mut self, decl: Decl, entity: Entity) {
        self.entries.push((decl.name().to_string(), entity));
        self.decls.push(decl);
    }

    /// The description family a name denotes, if any.
    pub fn family(&self, name: &str) -> Option<DescFun> {
        match self.get(name)? {
            Entity::Data(d) => Some(d.desc.clone()),
            Entity::Ornament(o) => Some(o.interp.clone()),
            Entity::Reorn(r) => Some(r.family().clone()),
            Entity::Algebraic(a) => Some(a.family().clone()),
            _ => None,
        }
    }

    pub fn data(&self, name: &str) -> Option<&Arc<DataDef>> {
        match self.get(name)? {
            Entity::Data(d) => Some(d),
            _ => None,
        }
    }

    pub fn ornament(&self, name: &str) -> Option<Ornament> {
        match self.get(name)? {
            Entity::Ornament(o) => Some(o.orn.clone()),
            Entity::Algebraic(a) => Some(a.ornament().clone()),
            _ => None,
        }
    }

    pub fn orn_def(&self, name: &str) -> Option<&Arc<OrnDef>> {
        match self.get(name)? {
            Entity::Ornament(o) => Some(o),
            _ => None,
        }
    }

    /// The declared reornament of an ornament, if one was named.
    pub fn reorn_of(&self, orn: &str) -> Option<Reorn> {
        self.entries.iter().rev().find_map(|(_, e)| match e {
            Entity::Reorn(r) if r.source().name() == orn => Some(r.clone()),
            _ => None,
        })
    }

    pub fn reorn(&self, name: &str) -> Option<&Reorn> {
        match self.get(name)? {
            Entity::Reorn(r) => Some(r),
            _ => None,
        }
    }

    pub fn algebra(&self, name: &str) -> Option<&Algebra> {
        match self.get(name)? {
            Entity::Algebra(a) => Some(a),
            _ => None,
        }
    }

    pub fn algebraic(&self, name: &str) -> Option<&AlgOrnament> {
        match self.get(name)? {
            Entity::Algebraic(a) => Some(a),
            _ => None,
        }
    }

    pub fn fun_type(&self, name: &str) -> Option<&FunType> {
        match self.get(name)? {
            Entity::Type(t) => Some(t),
            _ => None,
        }
    }

    pub fn funorn(&self, name: &str) -> Option<&FunOrn> {
        match self.get(name)? {
            Entity::FunOrn(t) => Some(t),
            _ => None,
        }
    }

    pub fn fun(&self, name: &str) -> Option<&Arc<FunDef>> {
        match self.get(name)? {
            Entity::Fun(f) => Some(f),
            _ => None,
        }
    }

    pub fn base_fn(&self, name: &str) -> Option<&BaseFn> {
        self.fun(name).map(|f| &f.base)
    }

    pub fn lift(&self, name: &str) -> Option<&Arc<LiftDef>> {
        match self.get(name)? {
            Entity::Lift(l) => Some(l),
            _ => None,
        }
    }

    pub fn patched(&self, name: &str) -> Option<&LiftedFn> {
        match self.get(name)? {
            Entity::Patched(p) => Some(p),
            _ => None,
        }
    }

    pub fn adjoint(&self, name: &str) -> Option<&Arc<AdjDef>> {
        match self.get(name)? {
            Entity::Adjoint(a) => Some(a),
            _ => None,
        }
    }

    /// The constructor name of an untagged node of `family` at `i`.
    pub fn alt_name(&self, family: &str, i: &Value) -> KResult<Option<String>> {
        match self.get(family) {
            Some(Entity::Data(d)) => d.single_alt(i),
            Some(Entity::Ornament(o)) => o.single_alt(i),
            _ => Ok(None),
        }
    }
}

impl std::fmt::Debug for Env {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(n, e)| (n, e.kind()))).finish()
    }
}
