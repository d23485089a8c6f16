//! Ornament codes over a base description, their interpretation and the
//! forgetful map they induce.

use std::fmt;
use std::sync::Arc;

use crate::check::{check_value, complete_domain, enumerate};
use crate::code::{fam, Desc, DescFun, Fam, SetCode};
use crate::error::{bad_orn, ill_typed, KernelError, Result};
use crate::value::{Tag, Value};

pub type IndexMap = Arc<dyn Fn(&Value) -> Result<Value> + Send + Sync>;

/// `re : J -> I`.
#[derive(Clone)]
pub struct Reindexing {
    fine: Arc<SetCode>,
    coarse: Arc<SetCode>,
    apply: IndexMap,
}

impl Reindexing {
    pub fn new(
        fine: SetCode,
        coarse: SetCode,
        apply: impl Fn(&Value) -> Result<Value> + Send + Sync + 'static,
    ) -> Reindexing {
        Reindexing {
            fine: Arc::new(fine),
            coarse: Arc::new(coarse),
            apply: Arc::new(apply),
        }
    }

    pub fn identity(set: SetCode) -> Reindexing {
        Reindexing::new(set.clone(), set, |j| Ok(j.clone()))
    }

    /// First projection out of a Σ index set.
    pub fn first(fine: SetCode, coarse: SetCode) -> Reindexing {
        Reindexing::new(fine, coarse, |j| match j.fst() {
            Some(i) => Ok(i.clone()),
            None => ill_typed(format!("expected an index pair, found {j}")),
        })
    }

    pub fn fine(&self) -> &SetCode {
        &self.fine
    }

    pub fn coarse(&self) -> &SetCode {
        &self.coarse
    }

    pub fn apply(&self, j: &Value) -> Result<Value> {
        (self.apply)(j)
    }
}

/// A point of the inverse image: `j` together with the coarse index it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvWitness {
    pub j: Value,
    pub expected: Value,
}

impl InvWitness {
    pub fn new(j: Value, expected: Value) -> InvWitness {
        InvWitness { j, expected }
    }

    /// The witness for an identity reindexing.
    pub fn same(i: Value) -> InvWitness {
        InvWitness::new(i.clone(), i)
    }
}

/// Renaming of a copied constructor choice, as (base tag, new tag) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel(Arc<[(Tag, Tag)]>);

impl Relabel {
    pub fn new(pairs: Vec<(Tag, Tag)>) -> Relabel {
        Relabel(pairs.into())
    }

    pub fn to_new(&self, base: &Value) -> Result<Value> {
        let t = base.as_tag();
        match self.0.iter().find(|(b, _)| Some(b) == t) {
            Some((_, n)) => Ok(Value::Tag(n.clone())),
            None => ill_typed(format!("{base} has no relabelling")),
        }
    }

    pub fn to_base(&self, new: &Value) -> Result<Value> {
        let t = new.as_tag();
        match self.0.iter().find(|(_, n)| Some(n) == t) {
            Some((b, _)) => Ok(Value::Tag(b.clone())),
            None => ill_typed(format!("{new} is not a relabelled tag")),
        }
    }

    fn relabel_set(&self, dom: &SetCode, path: &str) -> Result<SetCode> {
        let SetCode::Enum(tags) = dom else {
            return bad_orn(path, "relabelling needs a tag choice");
        };
        if tags.len() != self.0.len() || tags.iter().any(|t| !self.0.iter().any(|(b, _)| b == t)) {
            return bad_orn(path, "relabelling does not cover the base tags");
        }
        let new: Vec<Tag> = tags
            .iter()
            .map(|t| self.0.iter().find(|(b, _)| b == t).unwrap().1.clone())
            .collect();
        Ok(SetCode::Enum(new.into()))
    }
}

#[derive(Clone)]
pub enum OrnCode {
    Var(InvWitness),
    One,
    Pi(Fam<OrnCode>),
    Sigma {
        fam: Fam<OrnCode>,
        relabel: Option<Relabel>,
    },
    Insert {
        label: Option<Arc<str>>,
        set: SetCode,
        fam: Fam<OrnCode>,
    },
    Delete(Value, Arc<OrnCode>),
}

impl OrnCode {
    pub fn sigma(fam: Fam<OrnCode>) -> OrnCode {
        OrnCode::Sigma { fam, relabel: None }
    }

    pub fn insert(set: SetCode, fam: Fam<OrnCode>) -> OrnCode {
        OrnCode::Insert {
            label: None,
            set,
            fam,
        }
    }

    pub fn insert_named(label: &str, set: SetCode, fam: Fam<OrnCode>) -> OrnCode {
        OrnCode::Insert {
            label: Some(Arc::from(label)),
            set,
            fam,
        }
    }

    pub fn delete(replacement: Value, rest: OrnCode) -> OrnCode {
        OrnCode::Delete(replacement, Arc::new(rest))
    }
}

impl fmt::Debug for OrnCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrnCode::Var(w) => write!(f, "(var {} -> {})", w.j, w.expected),
            OrnCode::One => f.write_str("one"),
            OrnCode::Pi(_) => f.write_str("(pi _)"),
            OrnCode::Sigma { relabel, .. } => match relabel {
                Some(r) => write!(f, "(sigma {:?} _)", r.0),
                None => f.write_str("(sigma _)"),
            },
            OrnCode::Insert { set, .. } => write!(f, "(insert {set:?} _)"),
            OrnCode::Delete(r, rest) => write!(f, "(delete {r} {rest:?})"),
        }
    }
}

#[derive(Clone)]
pub struct Ornament {
    name: Arc<str>,
    base: DescFun,
    re: Reindexing,
    at: Fam<OrnCode>,
}

impl Ornament {
    pub fn new(name: &str, base: DescFun, re: Reindexing, at: Fam<OrnCode>) -> Ornament {
        Ornament {
            name: Arc::from(name),
            base,
            re,
            at,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &DescFun {
        &self.base
    }

    pub fn re(&self) -> &Reindexing {
        &self.re
    }

    pub fn fine_index_set(&self) -> &SetCode {
        self.re.fine()
    }

    pub fn at(&self, j: &Value) -> Result<OrnCode> {
        (self.at)(j)
    }

    /// The base description at `re(j)`.
    pub fn base_at(&self, j: &Value) -> Result<Desc> {
        self.base.at(&self.re.apply(j)?)
    }
}

impl fmt::Debug for Ornament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ornament({} over {})", self.name, self.base.name())
    }
}

/// The identity ornament: copies every node.
pub fn id_orn(d: &DescFun) -> Ornament {
    let base = d.clone();
    Ornament::new(
        &format!("id{}", d.name()),
        d.clone(),
        Reindexing::identity(d.index_set().clone()),
        fam(move |j| Ok(copy_code(&base.at(j)?))),
    )
}

pub fn copy_code(d: &Desc) -> OrnCode {
    match d {
        Desc::Var(i) => OrnCode::Var(InvWitness::same(i.clone())),
        Desc::One => OrnCode::One,
        Desc::Pi(_, f) => {
            let f = f.clone();
            OrnCode::Pi(fam(move |s| Ok(copy_code(&f(s)?))))
        }
        Desc::Sigma { fam: f, .. } => {
            let f = f.clone();
            OrnCode::sigma(fam(move |s| Ok(copy_code(&f(s)?))))
        }
    }
}

/// The description of the ornamented family, indexed by `J`.
pub fn interp_orn(o: &Ornament) -> DescFun {
    let orn = o.clone();
    DescFun::new(
        o.name(),
        o.fine_index_set().clone(),
        fam(move |j| interp_code(&orn, &orn.at(j)?, &orn.base_at(j)?, "")),
    )
}

pub fn interp_code(o: &Ornament, code: &OrnCode, base: &Desc, path: &str) -> Result<Desc> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(i)) => {
            if &w.expected != i {
                return bad_orn(path, format!("witness expects {} but base index is {i}", w.expected));
            }
            if o.re().apply(&w.j)? != w.expected {
                return bad_orn(path, format!("re({}) is not {}", w.j, w.expected));
            }
            Ok(Desc::Var(w.j.clone()))
        }
        (OrnCode::One, Desc::One) => Ok(Desc::One),
        (OrnCode::Pi(of), Desc::Pi(dom, bf)) => {
            let (o, of, bf, path) = (o.clone(), of.clone(), bf.clone(), path.to_string());
            Ok(Desc::Pi(
                dom.clone(),
                fam(move |s| interp_code(&o, &of(s)?, &bf(s)?, &format!("{path}/{s}"))),
            ))
        }
        (OrnCode::Sigma { fam: of, relabel }, Desc::Sigma { dom, fam: bf, ctor }) => {
            let dom = match relabel {
                Some(r) => r.relabel_set(dom, path)?,
                None => dom.clone(),
            };
            let (o, of, bf, relabel, path) =
                (o.clone(), of.clone(), bf.clone(), relabel.clone(), path.to_string());
            Ok(Desc::Sigma {
                dom,
                fam: fam(move |s| {
                    let b = match &relabel {
                        Some(r) => r.to_base(s)?,
                        None => s.clone(),
                    };
                    interp_code(&o, &of(&b)?, &bf(&b)?, &format!("{path}/{b}"))
                }),
                ctor: *ctor,
            })
        }
        (OrnCode::Insert { set, fam: of, .. }, _) => {
            let (o, of, base, path) = (o.clone(), of.clone(), base.clone(), path.to_string());
            Ok(Desc::sigma(
                set.clone(),
                fam(move |s| interp_code(&o, &of(s)?, &base, &format!("{path}/insert"))),
            ))
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { dom, fam: bf, .. }) => {
            if !check_value(dom, r)? {
                return bad_orn(path, format!("deleted value {r} is not in {dom:?}"));
            }
            interp_code(o, rest, &bf(r)?, &format!("{path}/delete"))
        }
        (code, base) => bad_orn(path, format!("{code:?} does not fit base node {base:?}")),
    }
}

/// Decides whether `o.at(j)` fits the base description at `re(j)`. Families
/// over infinite sets are swept up to `bound`.
pub fn check_orn(o: &Ornament, j: &Value, bound: usize) -> Result<()> {
    if !check_value(o.fine_index_set(), j)? {
        return bad_orn("", format!("{j} is not a fine index"));
    }
    let i = o.re().apply(j)?;
    if !check_value(o.re().coarse(), &i)? {
        return bad_orn("", format!("re({j}) = {i} is not a coarse index"));
    }
    check_code(o, &o.at(j)?, &o.base.at(&i)?, bound, "")
}

pub fn well_formed_orn(o: &Ornament, j: &Value) -> bool {
    matches!(check_orn(o, j, 3), Ok(()))
}

fn check_code(o: &Ornament, code: &OrnCode, base: &Desc, bound: usize, path: &str) -> Result<()> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(_)) => {
            if !check_value(o.fine_index_set(), &w.j)? {
                return bad_orn(path, format!("{} is not a fine index", w.j));
            }
            interp_code(o, code, base, path).map(|_| ())
        }
        (OrnCode::One, Desc::One) => Ok(()),
        (OrnCode::Pi(of), Desc::Pi(dom, bf)) => {
            for s in complete_domain(dom)? {
                check_code(o, &of(&s)?, &bf(&s)?, bound, &format!("{path}/{s}"))?;
            }
            Ok(())
        }
        (OrnCode::Sigma { fam: of, relabel }, Desc::Sigma { dom, fam: bf, .. }) => {
            if let Some(r) = relabel {
                r.relabel_set(dom, path)?;
            }
            for s in enumerate(dom, bound)? {
                check_code(o, &of(&s)?, &bf(&s)?, bound, &format!("{path}/{s}"))?;
            }
            Ok(())
        }
        (OrnCode::Insert { set, fam: of, .. }, _) => {
            for s in enumerate(set, bound)? {
                check_code(o, &of(&s)?, base, bound, &format!("{path}/insert"))?;
            }
            Ok(())
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { dom, fam: bf, .. }) => {
            if !check_value(dom, r)? {
                return bad_orn(path, format!("deleted value {r} is not in {dom:?}"));
            }
            check_code(o, rest, &bf(r)?, bound, &format!("{path}/delete"))
        }
        (code, base) => bad_orn(path, format!("{code:?} does not fit base node {base:?}")),
    }
}

/// Maps an ornamented payload to a base payload: inserted data is dropped,
/// deleted data reinstated, and recursive positions passed to `on_var`.
pub fn forget_payload(
    code: &OrnCode,
    base: &Desc,
    payload: &Value,
    on_var: &mut dyn FnMut(&InvWitness, &Value) -> Result<Value>,
) -> Result<Value> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(_)) => on_var(w, payload),
        (OrnCode::One, Desc::One) => match payload {
            Value::Unit => Ok(Value::Unit),
            _ => ill_typed(format!("expected unit, found {payload}")),
        },
        (OrnCode::Pi(of), Desc::Pi(_, bf)) => match payload {
            Value::Fun(table) => {
                let mut out = Vec::with_capacity(table.len());
                for (arg, r) in table.iter() {
                    out.push((arg.clone(), forget_payload(&of(arg)?, &bf(arg)?, r, on_var)?));
                }
                Ok(Value::fun(out))
            }
            _ => ill_typed(format!("expected a table, found {payload}")),
        },
        (OrnCode::Sigma { fam: of, relabel }, Desc::Sigma { fam: bf, .. }) => match payload {
            Value::Pair(s, rest) => {
                let b = match relabel {
                    Some(r) => r.to_base(s)?,
                    None => (**s).clone(),
                };
                let rest = forget_payload(&of(&b)?, &bf(&b)?, rest, on_var)?;
                Ok(Value::pair(b, rest))
            }
            _ => ill_typed(format!("expected a pair, found {payload}")),
        },
        (OrnCode::Insert { fam: of, .. }, _) => match payload {
            Value::Pair(s, rest) => forget_payload(&of(s)?, base, rest, on_var),
            _ => ill_typed(format!("expected a pair, found {payload}")),
        },
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let tail = forget_payload(rest, &bf(r)?, payload, on_var)?;
            Ok(Value::pair(r.clone(), tail))
        }
        (code, base) => Err(KernelError::IllFormedOrnament {
            path: "/".into(),
            reason: format!("{code:?} does not fit base node {base:?}"),
        }),
    }
}

/// The natural transformation: carrier positions pass through unchanged.
pub fn orn_forget_nat(o: &Ornament, j: &Value, payload: &Value) -> Result<Value> {
    forget_payload(&o.at(j)?, &o.base_at(j)?, payload, &mut |_, sub| Ok(sub.clone()))
}

/// The forgetful map `μ(interpOrn O) j -> μ base (re j)`.
pub fn orn_forget(o: &Ornament, j: &Value, t: &Value) -> Result<Value> {
    let Some(payload) = t.as_in() else {
        return ill_typed(format!("expected a constructor node, found {t}"));
    };
    let base = forget_payload(&o.at(j)?, &o.base_at(j)?, payload, &mut |w, sub| {
        orn_forget(o, &w.j, sub)
    })?;
    Ok(Value::inj(base))
}
