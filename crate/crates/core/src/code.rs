//! Set codes, description codes and index-to-description families.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::value::{Tag, Value};

/// A total mapping out of values, evaluated on demand.
pub type Fam<T> = Arc<dyn Fn(&Value) -> Result<T> + Send + Sync>;

pub fn fam<T>(f: impl Fn(&Value) -> Result<T> + Send + Sync + 'static) -> Fam<T> {
    Arc::new(f)
}

pub fn konst<T: Clone + Send + Sync + 'static>(t: T) -> Fam<T> {
    Arc::new(move |_| Ok(t.clone()))
}

#[derive(Clone)]
pub enum SetCode {
    Unit,
    Empty,
    Enum(Arc<[Tag]>),
    Sigma(Arc<SetCode>, Fam<SetCode>),
    Pi(Arc<SetCode>, Fam<SetCode>),
    Eq(Arc<SetCode>, Value, Value),
    Mu(DescFun, Value),
}

impl SetCode {
    pub fn enumeration<S: AsRef<str>>(tags: &[S]) -> SetCode {
        SetCode::Enum(tags.iter().map(|t| Tag::new(t.as_ref())).collect())
    }

    pub fn sigma(first: SetCode, rest: Fam<SetCode>) -> SetCode {
        SetCode::Sigma(Arc::new(first), rest)
    }

    pub fn pi(dom: SetCode, cod: Fam<SetCode>) -> SetCode {
        SetCode::Pi(Arc::new(dom), cod)
    }

    pub fn product(a: SetCode, b: SetCode) -> SetCode {
        SetCode::sigma(a, konst(b))
    }

    pub fn eq(carrier: SetCode, lhs: Value, rhs: Value) -> SetCode {
        SetCode::Eq(Arc::new(carrier), lhs, rhs)
    }

    pub fn mu(family: &DescFun, index: Value) -> SetCode {
        SetCode::Mu(family.clone(), index)
    }
}

impl fmt::Debug for SetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetCode::Unit => f.write_str("unit"),
            SetCode::Empty => f.write_str("empty"),
            SetCode::Enum(tags) => {
                f.write_str("(enum")?;
                for t in tags.iter() {
                    write!(f, " {t}")?;
                }
                f.write_str(")")
            }
            SetCode::Sigma(a, _) => write!(f, "(sigma {a:?} _)"),
            SetCode::Pi(a, _) => write!(f, "(pi {a:?} _)"),
            SetCode::Eq(s, a, b) => write!(f, "(eq {s:?} {a} {b})"),
            SetCode::Mu(d, i) => write!(f, "(mu {} {i})", d.name()),
        }
    }
}

#[derive(Clone)]
pub enum Desc {
    Var(Value),
    One,
    Pi(SetCode, Fam<Desc>),
    /// `ctor` marks a constructor choice; it has no effect on the interpretation.
    Sigma {
        dom: SetCode,
        fam: Fam<Desc>,
        ctor: bool,
    },
}

impl Desc {
    pub fn sigma(dom: SetCode, fam: Fam<Desc>) -> Desc {
        Desc::Sigma {
            dom,
            fam,
            ctor: false,
        }
    }

    /// A constructor choice over the given alternatives, in order.
    pub fn choice(alts: Vec<(&str, Desc)>) -> Desc {
        let tags: Vec<Tag> = alts.iter().map(|(t, _)| Tag::new(t)).collect();
        let table: Vec<(Tag, Desc)> = alts.into_iter().map(|(t, d)| (Tag::new(t), d)).collect();
        Desc::Sigma {
            dom: SetCode::Enum(tags.into()),
            fam: fam(move |v| {
                let tag = v.as_tag();
                table
                    .iter()
                    .find(|(t, _)| Some(t) == tag)
                    .map(|(_, d)| d.clone())
                    .ok_or_else(|| crate::KernelError::IllTypedValue(format!("{v} is not a constructor")))
            }),
            ctor: true,
        }
    }

    pub fn pi(dom: SetCode, fam: Fam<Desc>) -> Desc {
        Desc::Pi(dom, fam)
    }

    /// Non-dependent field followed by `rest`.
    pub fn field(dom: SetCode, rest: Desc) -> Desc {
        Desc::sigma(dom, konst(rest))
    }
}

impl fmt::Debug for Desc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Desc::Var(i) => write!(f, "(var {i})"),
            Desc::One => f.write_str("one"),
            Desc::Pi(s, _) => write!(f, "(pi {s:?} _)"),
            Desc::Sigma { dom, ctor, .. } => {
                write!(f, "({} {dom:?} _)", if *ctor { "choice" } else { "sigma" })
            }
        }
    }
}

/// An indexed family of descriptions `I -> Desc`.
#[derive(Clone)]
pub struct DescFun {
    name: Arc<str>,
    index_set: Arc<SetCode>,
    at: Fam<Desc>,
}

impl DescFun {
    pub fn new(name: &str, index_set: SetCode, at: Fam<Desc>) -> DescFun {
        DescFun {
            name: Arc::from(name),
            index_set: Arc::new(index_set),
            at,
        }
    }

    /// A family indexed by `Unit`.
    pub fn simple(name: &str, desc: Desc) -> DescFun {
        DescFun::new(name, SetCode::Unit, konst(desc))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: &str) -> DescFun {
        DescFun {
            name: Arc::from(name),
            ..self.clone()
        }
    }

    pub fn index_set(&self) -> &SetCode {
        &self.index_set
    }

    pub fn at(&self, i: &Value) -> Result<Desc> {
        (self.at)(i)
    }

    pub fn same_family(&self, other: &DescFun) -> bool {
        Arc::ptr_eq(&self.at, &other.at) || self.name == other.name
    }
}

impl fmt::Debug for DescFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DescFun({})", self.name)
    }
}

pub type Step = Arc<dyn Fn(&Value, &Value) -> Result<Value> + Send + Sync>;

/// An algebra for a description family: a carrier family and a step.
#[derive(Clone)]
pub struct Algebra {
    name: Arc<str>,
    carrier: Fam<SetCode>,
    step: Step,
}

impl Algebra {
    pub fn new(
        name: &str,
        carrier: Fam<SetCode>,
        step: impl Fn(&Value, &Value) -> Result<Value> + Send + Sync + 'static,
    ) -> Algebra {
        Algebra {
            name: Arc::from(name),
            carrier,
            step: Arc::new(step),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier_at(&self, i: &Value) -> Result<SetCode> {
        (self.carrier)(i)
    }

    pub fn step(&self, i: &Value, payload: &Value) -> Result<Value> {
        (self.step)(i, payload)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.name)
    }
}
