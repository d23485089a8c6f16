//! Verification reports: one record per checked input tuple.

use crate::code::SetCode;
use crate::value::Value;

/// A value together with the set it should be read against.
#[derive(Clone, Debug)]
pub struct Shown {
    pub value: Value,
    pub set: SetCode,
}

impl Shown {
    pub fn new(value: Value, set: SetCode) -> Shown {
        Shown { value, set }
    }
}

#[derive(Clone, Debug)]
pub struct Case {
    pub inputs: Vec<Shown>,
    pub expected: Option<Shown>,
    pub actual: Option<Shown>,
    pub pass: bool,
    pub note: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(name: &str) -> Report {
        Report {
            name: name.to_string(),
            cases: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn checked(&self) -> usize {
        self.cases.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&Case> {
        self.failures().next()
    }
}
