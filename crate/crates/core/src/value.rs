//! Canonical values. A value means nothing on its own; it is checked against a
//! [`SetCode`](crate::SetCode) to decide membership.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag(Arc<str>);

impl Tag {
    pub fn new(name: &str) -> Tag {
        Tag(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Tag {
    fn from(s: &str) -> Tag {
        Tag::new(s)
    }
}

impl fmt::Debug for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}", self.0)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Unit,
    Pair(Arc<Value>, Arc<Value>),
    Tag(Tag),
    In(Arc<Value>),
    Refl,
    /// Total table over an enumerable domain, in the domain's enumeration order.
    Fun(Arc<[(Value, Value)]>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn tag(name: &str) -> Value {
        Value::Tag(Tag::new(name))
    }

    pub fn inj(payload: Value) -> Value {
        Value::In(Arc::new(payload))
    }

    pub fn fun(table: Vec<(Value, Value)>) -> Value {
        Value::Fun(table.into())
    }

    /// Right-nested pairs ending in `Unit`.
    pub fn tuple(items: impl IntoIterator<Item = Value>) -> Value {
        let items: Vec<Value> = items.into_iter().collect();
        items
            .into_iter()
            .rev()
            .fold(Value::Unit, |acc, v| Value::pair(v, acc))
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_tag(&self) -> Option<&Tag> {
        match self {
            Value::Tag(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_in(&self) -> Option<&Value> {
        match self {
            Value::In(p) => Some(p),
            _ => None,
        }
    }

    pub fn fst(&self) -> Option<&Value> {
        self.as_pair().map(|p| p.0)
    }

    pub fn snd(&self) -> Option<&Value> {
        self.as_pair().map(|p| p.1)
    }

    /// Looks up an argument in a function table.
    pub fn apply(&self, arg: &Value) -> Option<&Value> {
        match self {
            Value::Fun(table) => table.iter().find(|(a, _)| a == arg).map(|(_, r)| r),
            _ => None,
        }
    }

    /// Number of nested `In` layers, the metric used by enumeration budgets.
    pub fn nesting(&self) -> usize {
        match self {
            Value::In(p) => 1 + p.nesting(),
            Value::Pair(a, b) => a.nesting().max(b.nesting()),
            Value::Fun(t) => t.iter().map(|(_, r)| r.nesting()).max().unwrap_or(0),
            _ => 0,
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => f.write_str("unit"),
            Value::Pair(a, b) => write!(f, "(pair {a} {b})"),
            Value::Tag(t) => write!(f, "'{t}"),
            Value::In(p) => write!(f, "(in {p})"),
            Value::Refl => f.write_str("refl"),
            Value::Fun(t) => {
                f.write_str("(fun")?;
                for (a, r) in t.iter() {
                    write!(f, " ({a} {r})")?;
                }
                f.write_str(")")
            }
        }
    }
}
