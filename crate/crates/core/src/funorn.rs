//! Function types over μ sets, their ornaments, and the coherence / patch
//! machinery relating a base function to its liftings.

use std::fmt;
use std::sync::Arc;

use crate::check::{check_value, enumerate, equal_value};
use crate::code::{DescFun, SetCode};
use crate::error::{KernelError, Result};
use crate::ornament::{interp_orn, orn_forget, InvWitness, Ornament};
use crate::reornament::{forget_reorn, remember_reorn, reorn_recomputation, reornament, Reorn};
use crate::report::{Case, Report, Shown};
use crate::value::Value;

#[derive(Clone, Debug)]
pub enum FunType {
    Arrow(DescFun, Value, Box<FunType>),
    Times(DescFun, Value, Box<FunType>),
    End,
}

impl FunType {
    pub fn arrow(d: &DescFun, i: Value, rest: FunType) -> FunType {
        FunType::Arrow(d.clone(), i, Box::new(rest))
    }

    pub fn times(d: &DescFun, i: Value, rest: FunType) -> FunType {
        FunType::Times(d.clone(), i, Box::new(rest))
    }

    pub fn arity(&self) -> usize {
        match self {
            FunType::Arrow(_, _, r) => 1 + r.arity(),
            FunType::Times(_, _, r) => r.arity(),
            FunType::End => 0,
        }
    }

    pub fn result_count(&self) -> usize {
        match self {
            FunType::Arrow(_, _, r) => r.result_count(),
            FunType::Times(_, _, r) => 1 + r.result_count(),
            FunType::End => 0,
        }
    }
}

/// An ornament together with its reornament, computed once.
#[derive(Clone, Debug)]
pub struct OrnNode {
    pub orn: Ornament,
    pub reorn: Reorn,
}

impl OrnNode {
    pub fn new(orn: &Ornament) -> OrnNode {
        OrnNode {
            orn: orn.clone(),
            reorn: reornament(orn),
        }
    }

    pub fn with_reorn(orn: &Ornament, reorn: &Reorn) -> OrnNode {
        OrnNode {
            orn: orn.clone(),
            reorn: reorn.clone(),
        }
    }

    fn ornamented_set(&self, w: &InvWitness) -> SetCode {
        SetCode::mu(&interp_orn(&self.orn), w.j.clone())
    }

    fn base_set(&self, w: &InvWitness) -> SetCode {
        SetCode::mu(self.orn.base(), w.expected.clone())
    }
}

#[derive(Clone, Debug)]
pub enum FunOrn {
    Arrow(OrnNode, InvWitness, Box<FunOrn>),
    Times(OrnNode, InvWitness, Box<FunOrn>),
    End,
}

impl FunOrn {
    pub fn arrow(node: OrnNode, w: InvWitness, rest: FunOrn) -> FunOrn {
        FunOrn::Arrow(node, w, Box::new(rest))
    }

    pub fn times(node: OrnNode, w: InvWitness, rest: FunOrn) -> FunOrn {
        FunOrn::Times(node, w, Box::new(rest))
    }

    /// The identity functional ornament over `t`.
    pub fn identity(t: &FunType) -> FunOrn {
        match t {
            FunType::Arrow(d, i, r) => FunOrn::arrow(
                OrnNode::new(&crate::ornament::id_orn(d)),
                InvWitness::same(i.clone()),
                FunOrn::identity(r),
            ),
            FunType::Times(d, i, r) => FunOrn::times(
                OrnNode::new(&crate::ornament::id_orn(d)),
                InvWitness::same(i.clone()),
                FunOrn::identity(r),
            ),
            FunType::End => FunOrn::End,
        }
    }

    /// The function type this ornaments.
    pub fn erase(&self) -> FunType {
        match self {
            FunOrn::Arrow(n, w, r) => FunType::arrow(n.orn.base(), w.expected.clone(), r.erase()),
            FunOrn::Times(n, w, r) => FunType::times(n.orn.base(), w.expected.clone(), r.erase()),
            FunOrn::End => FunType::End,
        }
    }

    /// Checks shape congruence with `t` and the witnesses.
    pub fn check_over(&self, t: &FunType) -> Result<()> {
        let bad = |m: String| Err(KernelError::IllFormedFunOrn(m));
        match (self, t) {
            (FunOrn::End, FunType::End) => Ok(()),
            (FunOrn::Arrow(n, w, r), FunType::Arrow(d, i, rt))
            | (FunOrn::Times(n, w, r), FunType::Times(d, i, rt)) => {
                if !n.orn.base().same_family(d) {
                    return bad(format!("{} does not ornament {}", n.orn.name(), d.name()));
                }
                if &w.expected != i || n.orn.re().apply(&w.j)? != w.expected {
                    return bad(format!("witness {} does not reach index {i}", w.j));
                }
                r.check_over(rt)
            }
            _ => bad("functional ornament and function type differ in shape".into()),
        }
    }
}

pub type FnArrow = Arc<dyn Fn(&Value) -> Result<FnValue> + Send + Sync>;

/// Host inhabitant of the interpretation of a function type.
#[derive(Clone)]
pub enum FnValue {
    Arrow(FnArrow),
    Times(Value, Arc<FnValue>),
    End,
}

pub type Uncurried = Arc<dyn Fn(&[Value]) -> Result<Vec<Value>> + Send + Sync>;

impl FnValue {
    pub fn arrow(f: impl Fn(&Value) -> Result<FnValue> + Send + Sync + 'static) -> FnValue {
        FnValue::Arrow(Arc::new(f))
    }

    pub fn times(v: Value, rest: FnValue) -> FnValue {
        FnValue::Times(v, Arc::new(rest))
    }

    pub fn results(vals: Vec<Value>) -> FnValue {
        vals.into_iter()
            .rev()
            .fold(FnValue::End, |acc, v| FnValue::times(v, acc))
    }

    /// Curries an `arity`-argument function returning a result tuple.
    pub fn from_fn(arity: usize, f: Uncurried) -> Result<FnValue> {
        build(arity, Vec::new(), f)
    }

    pub fn apply(&self, x: &Value) -> Result<FnValue> {
        match self {
            FnValue::Arrow(f) => f(x),
            _ => Err(KernelError::IllTypedValue(
                "applied a function value that takes no more arguments".into(),
            )),
        }
    }

    pub fn split(&self) -> Result<(&Value, &FnValue)> {
        match self {
            FnValue::Times(v, rest) => Ok((v, rest)),
            _ => Err(KernelError::IllTypedValue("expected a result component".into())),
        }
    }

    /// Feeds arguments at arrows and collects components at products.
    pub fn run(&self, args: &[Value]) -> Result<Vec<Value>> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        let mut args = args.iter();
        loop {
            cur = match &cur {
                FnValue::Arrow(f) => match args.next() {
                    Some(a) => f(a)?,
                    None => {
                        return Err(KernelError::IllTypedValue("too few arguments".into()));
                    }
                },
                FnValue::Times(v, rest) => {
                    out.push(v.clone());
                    (**rest).clone()
                }
                FnValue::End => {
                    if args.next().is_some() {
                        return Err(KernelError::IllTypedValue("too many arguments".into()));
                    }
                    return Ok(out);
                }
            };
        }
    }
}

fn build(arity: usize, acc: Vec<Value>, f: Uncurried) -> Result<FnValue> {
    if acc.len() == arity {
        return Ok(FnValue::results(f(&acc)?));
    }
    Ok(FnValue::arrow(move |x| {
        let mut next = acc.clone();
        next.push(x.clone());
        build(arity, next, f.clone())
    }))
}

impl fmt::Debug for FnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnValue::Arrow(_) => f.write_str("<fn>"),
            FnValue::Times(v, r) => write!(f, "({v} , {r:?})"),
            FnValue::End => f.write_str("end"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BaseFn {
    pub name: String,
    pub sig: FunType,
    pub body: FnValue,
}

#[derive(Clone, Debug)]
pub struct LiftedFn {
    pub name: String,
    pub sig: FunOrn,
    pub body: FnValue,
}

/// Inhabitant of a Patch type: each arrow takes `t` and then `t⁺⁺`.
#[derive(Clone, Debug)]
pub struct PatchFn {
    pub name: String,
    pub sig: FunOrn,
    pub body: FnValue,
}

impl BaseFn {
    pub fn new(name: &str, sig: FunType, f: Uncurried) -> Result<BaseFn> {
        Ok(BaseFn {
            name: name.into(),
            body: FnValue::from_fn(sig.arity(), f)?,
            sig,
        })
    }

    pub fn run(&self, args: &[Value]) -> Result<Vec<Value>> {
        self.body.run(args)
    }
}

impl LiftedFn {
    pub fn run(&self, args: &[Value]) -> Result<Vec<Value>> {
        self.body.run(args)
    }
}

/// Per-argument enumeration depths; arguments beyond `per_arg` use `depth`.
#[derive(Clone, Debug)]
pub struct Budget {
    pub depth: usize,
    pub per_arg: Vec<usize>,
}

impl Budget {
    pub fn uniform(depth: usize) -> Budget {
        Budget {
            depth,
            per_arg: Vec::new(),
        }
    }

    pub fn per_arg(depth: usize, per_arg: Vec<usize>) -> Budget {
        Budget { depth, per_arg }
    }

    pub fn for_arg(&self, k: usize) -> usize {
        self.per_arg.get(k).copied().unwrap_or(self.depth)
    }
}

fn failure(inputs: &[Shown], note: String) -> Case {
    Case {
        inputs: inputs.to_vec(),
        expected: None,
        actual: None,
        pass: false,
        note,
    }
}

/// Applies `f` to every enumerable argument tuple and checks each result component.
pub fn check_fn_against_type(f: &BaseFn, budget: &Budget) -> Result<Report> {
    let mut report = Report::new(&format!("type of {}", f.name));
    check_type_walk(&f.sig, Ok(f.body.clone()), budget, 0, &mut Vec::new(), &mut report)?;
    Ok(report)
}

fn check_type_walk(
    t: &FunType,
    f: Result<FnValue>,
    budget: &Budget,
    k: usize,
    inputs: &mut Vec<Shown>,
    report: &mut Report,
) -> Result<()> {
    let f = match f {
        Ok(f) => f,
        Err(e) => {
            report.cases.push(failure(inputs, e.to_string()));
            return Ok(());
        }
    };
    match (t, &f) {
        (FunType::Arrow(d, i, rest), FnValue::Arrow(g)) => {
            let set = SetCode::mu(d, i.clone());
            for x in enumerate(&set, budget.for_arg(k))? {
                inputs.push(Shown::new(x.clone(), set.clone()));
                check_type_walk(rest, g(&x), budget, k + 1, inputs, report)?;
                inputs.pop();
            }
            Ok(())
        }
        (FunType::Times(d, i, rest), FnValue::Times(v, g)) => {
            let set = SetCode::mu(d, i.clone());
            if !check_value(&set, v)? {
                report.cases.push(Case {
                    inputs: inputs.clone(),
                    expected: None,
                    actual: Some(Shown::new(v.clone(), set)),
                    pass: false,
                    note: format!("result is not in μ {} {i}", d.name()),
                });
                return Ok(());
            }
            check_type_walk(rest, Ok((**g).clone()), budget, k, inputs, report)
        }
        (FunType::End, FnValue::End) => {
            report.cases.push(Case {
                inputs: inputs.clone(),
                expected: None,
                actual: None,
                pass: true,
                note: String::new(),
            });
            Ok(())
        }
        _ => {
            report.cases.push(failure(inputs, "arity mismatch".into()));
            Ok(())
        }
    }
}

/// Exhaustive coherence: forgetting the lifted function's inputs and outputs
/// recovers the base function.
pub fn coherence_check(t_plus: &FunOrn, f: &BaseFn, f_plus: &LiftedFn, budget: &Budget) -> Result<Report> {
    t_plus.check_over(&f.sig)?;
    let mut report = Report::new(&format!("coherence of {} over {}", f_plus.name, f.name));
    let mut st = Walk::new();
    coherence_walk(t_plus, Ok(f.body.clone()), Ok(f_plus.body.clone()), budget, 0, &mut st, &mut report)?;
    Ok(report)
}

struct Walk {
    inputs: Vec<Shown>,
    expected: Vec<Shown>,
    actual: Vec<Shown>,
    ok: bool,
    note: String,
}

impl Walk {
    fn new() -> Walk {
        Walk {
            inputs: Vec::new(),
            expected: Vec::new(),
            actual: Vec::new(),
            ok: true,
            note: String::new(),
        }
    }
}

fn tuple_shown(items: &[Shown]) -> Option<Shown> {
    match items {
        [] => None,
        [one] => Some(one.clone()),
        _ => {
            let value = Value::tuple(items.iter().map(|s| s.value.clone()));
            let set = items.iter().rev().fold(SetCode::Unit, |acc, s| {
                SetCode::product(s.set.clone(), acc)
            });
            Some(Shown::new(value, set))
        }
    }
}

fn finish(st: &Walk, report: &mut Report) {
    report.cases.push(Case {
        inputs: st.inputs.clone(),
        expected: tuple_shown(&st.expected),
        actual: tuple_shown(&st.actual),
        pass: st.ok,
        note: st.note.clone(),
    });
}

fn coherence_walk(
    t: &FunOrn,
    f: Result<FnValue>,
    fp: Result<FnValue>,
    budget: &Budget,
    k: usize,
    st: &mut Walk,
    report: &mut Report,
) -> Result<()> {
    let (f, fp) = match (f, fp) {
        (Ok(f), Ok(fp)) => (f, fp),
        (Err(e), _) | (_, Err(e)) => {
            report.cases.push(failure(&st.inputs, e.to_string()));
            return Ok(());
        }
    };
    match t {
        FunOrn::Arrow(node, w, rest) => {
            let set = node.ornamented_set(w);
            for xp in enumerate(&set, budget.for_arg(k))? {
                let x = orn_forget(&node.orn, &w.j, &xp)?;
                let saved = (st.expected.len(), st.actual.len(), st.ok, st.note.clone());
                st.inputs.push(Shown::new(xp.clone(), set.clone()));
                coherence_walk(rest, f.apply(&x), fp.apply(&xp), budget, k + 1, st, report)?;
                st.inputs.pop();
                st.expected.truncate(saved.0);
                st.actual.truncate(saved.1);
                st.ok = saved.2;
                st.note = saved.3;
            }
            Ok(())
        }
        FunOrn::Times(node, w, rest) => {
            let ((y, f2), (yp, fp2)) = match (f.split(), fp.split()) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    report.cases.push(failure(&st.inputs, e.to_string()));
                    return Ok(());
                }
            };
            let base_set = node.base_set(w);
            st.expected.push(Shown::new(y.clone(), base_set.clone()));
            if !check_value(&node.ornamented_set(w), yp)? {
                st.ok = false;
                st.note = format!("lifted result {yp} is not in μ {} {}", node.orn.name(), w.j);
                st.actual.push(Shown::new(yp.clone(), node.ornamented_set(w)));
            } else {
                let forgotten = orn_forget(&node.orn, &w.j, yp)?;
                if !equal_value(&base_set, &forgotten, y)? {
                    st.ok = false;
                    st.note = "forgotten result differs from the base result".into();
                }
                st.actual.push(Shown::new(forgotten, base_set));
            }
            coherence_walk(rest, Ok(f2.clone()), Ok(fp2.clone()), budget, k, st, report)
        }
        FunOrn::End => {
            finish(st, report);
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    Arg,
    Result,
}

#[derive(Clone, Debug)]
pub struct Slot {
    pub kind: SlotKind,
    pub base: DescFun,
    pub index: Value,
    pub node: OrnNode,
    pub j: Value,
}

/// The signature of liftings that are coherent by construction.
#[derive(Clone, Debug)]
pub struct PatchSig {
    pub base_name: String,
    pub slots: Vec<Slot>,
}

pub fn patch_sig(t: &FunType, t_plus: &FunOrn, f: &BaseFn) -> Result<PatchSig> {
    t_plus.check_over(t)?;
    let mut slots = Vec::new();
    let mut cur = t_plus;
    loop {
        cur = match cur {
            FunOrn::Arrow(n, w, r) | FunOrn::Times(n, w, r) => {
                let kind = if matches!(cur, FunOrn::Arrow(..)) {
                    SlotKind::Arg
                } else {
                    SlotKind::Result
                };
                slots.push(Slot {
                    kind,
                    base: n.orn.base().clone(),
                    index: w.expected.clone(),
                    node: n.clone(),
                    j: w.j.clone(),
                });
                r
            }
            FunOrn::End => break,
        };
    }
    Ok(PatchSig {
        base_name: f.name.clone(),
        slots,
    })
}

impl fmt::Display for PatchSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = (0..self.slots.iter().filter(|s| s.kind == SlotKind::Arg).count())
            .map(|k| format!("t{k}"))
            .collect();
        let (mut a, mut r) = (0, 0);
        let mut parts = Vec::new();
        for s in &self.slots {
            match s.kind {
                SlotKind::Arg => {
                    parts.push(format!("(t{a} : μ {} {})", s.base.name(), s.index));
                    parts.push(format!(
                        "(t{a}++ : μ {} (pair {} t{a}))",
                        s.node.reorn.family().name(),
                        s.j
                    ));
                    a += 1;
                }
                SlotKind::Result => {
                    parts.push(format!(
                        "μ {} (pair {} ({} {})#{r})",
                        s.node.reorn.family().name(),
                        s.j,
                        self.base_name,
                        args.join(" ")
                    ));
                    r += 1;
                }
            }
        }
        if r == 0 {
            parts.push("end".into());
        }
        write!(f, "{}", parts.join(" -> "))
    }
}

/// Checks that `p` inhabits the Patch type: each result lies in the
/// reornament indexed by the base function's result.
pub fn check_patch_fn(t_plus: &FunOrn, f: &BaseFn, p: &PatchFn, budget: &Budget) -> Result<Report> {
    t_plus.check_over(&f.sig)?;
    let mut report = Report::new(&format!("patch {} over {}", p.name, f.name));
    let mut st = Walk::new();
    patch_walk(t_plus, Ok(f.body.clone()), Ok(p.body.clone()), budget, 0, &mut st, &mut report)?;
    Ok(report)
}

fn patch_walk(
    t: &FunOrn,
    f: Result<FnValue>,
    p: Result<FnValue>,
    budget: &Budget,
    k: usize,
    st: &mut Walk,
    report: &mut Report,
) -> Result<()> {
    let (f, p) = match (f, p) {
        (Ok(f), Ok(p)) => (f, p),
        (Err(e), _) | (_, Err(e)) => {
            report.cases.push(failure(&st.inputs, e.to_string()));
            return Ok(());
        }
    };
    match t {
        FunOrn::Arrow(node, w, rest) => {
            let base_set = node.base_set(w);
            for x in enumerate(&base_set, budget.for_arg(k))? {
                let fiber = node.reorn.set_at(w.j.clone(), x.clone());
                let px = match p.apply(&x) {
                    Ok(px) => px,
                    Err(e) => {
                        report.cases.push(failure(&st.inputs, e.to_string()));
                        continue;
                    }
                };
                for xpp in enumerate(&fiber, budget.for_arg(k))? {
                    let saved = (st.expected.len(), st.actual.len(), st.ok, st.note.clone());
                    st.inputs.push(Shown::new(x.clone(), base_set.clone()));
                    st.inputs.push(Shown::new(xpp.clone(), fiber.clone()));
                    patch_walk(rest, f.apply(&x), px.apply(&xpp), budget, k + 1, st, report)?;
                    st.inputs.truncate(st.inputs.len() - 2);
                    st.expected.truncate(saved.0);
                    st.actual.truncate(saved.1);
                    st.ok = saved.2;
                    st.note = saved.3;
                }
            }
            Ok(())
        }
        FunOrn::Times(node, w, rest) => {
            let ((y, f2), (ypp, p2)) = match (f.split(), p.split()) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    report.cases.push(failure(&st.inputs, e.to_string()));
                    return Ok(());
                }
            };
            let fiber = node.reorn.set_at(w.j.clone(), y.clone());
            st.expected.push(Shown::new(y.clone(), node.base_set(w)));
            st.actual.push(Shown::new(ypp.clone(), fiber.clone()));
            if !check_value(&fiber, ypp)? {
                st.ok = false;
                st.note = format!("result is not in the reornament at index {y}");
            }
            patch_walk(rest, Ok(f2.clone()), Ok(p2.clone()), budget, k, st, report)
        }
        FunOrn::End => {
            finish(st, report);
            Ok(())
        }
    }
}

/// Projects the coherent lifting out of a Patch inhabitant.
pub fn patch(t_plus: &FunOrn, f: &BaseFn, p: &PatchFn) -> Result<LiftedFn> {
    t_plus.check_over(&f.sig)?;
    Ok(LiftedFn {
        name: format!("patch {}", p.name),
        sig: t_plus.clone(),
        body: patch_value(t_plus.clone(), f.body.clone(), p.body.clone())?,
    })
}

fn patch_value(t: FunOrn, f: FnValue, p: FnValue) -> Result<FnValue> {
    match t {
        FunOrn::Arrow(node, w, rest) => Ok(FnValue::arrow(move |xp| {
            let (x, xpp) = remember_reorn(&node.orn, &w.j, xp)?;
            patch_value((*rest).clone(), f.apply(&x)?, p.apply(&x)?.apply(&xpp)?)
        })),
        FunOrn::Times(node, w, rest) => {
            let (y, f2) = f.split()?;
            let (ypp, p2) = p.split()?;
            let yp = forget_reorn(&node.orn, &Value::pair(w.j.clone(), y.clone()), ypp)?;
            Ok(FnValue::times(yp, patch_value(*rest, f2.clone(), p2.clone())?))
        }
        FunOrn::End => Ok(FnValue::End),
    }
}

/// Coherence of the patched lifting, checked result by result through
/// recomputation on the returned reornament values.
pub fn coherence_witness(t_plus: &FunOrn, f: &BaseFn, p: &PatchFn, budget: &Budget) -> Result<Report> {
    t_plus.check_over(&f.sig)?;
    let mut report = Report::new(&format!("coherence witness of {} over {}", p.name, f.name));
    let mut st = Walk::new();
    witness_walk(t_plus, Ok(f.body.clone()), Ok(p.body.clone()), budget, 0, &mut st, &mut report)?;
    Ok(report)
}

fn witness_walk(
    t: &FunOrn,
    f: Result<FnValue>,
    p: Result<FnValue>,
    budget: &Budget,
    k: usize,
    st: &mut Walk,
    report: &mut Report,
) -> Result<()> {
    let (f, p) = match (f, p) {
        (Ok(f), Ok(p)) => (f, p),
        (Err(e), _) | (_, Err(e)) => {
            report.cases.push(failure(&st.inputs, e.to_string()));
            return Ok(());
        }
    };
    match t {
        FunOrn::Arrow(node, w, rest) => {
            let set = node.ornamented_set(w);
            for xp in enumerate(&set, budget.for_arg(k))? {
                let (x, xpp) = remember_reorn(&node.orn, &w.j, &xp)?;
                let saved = (st.expected.len(), st.actual.len(), st.ok, st.note.clone());
                st.inputs.push(Shown::new(xp.clone(), set.clone()));
                let next = p.apply(&x).and_then(|px| px.apply(&xpp));
                witness_walk(rest, f.apply(&x), next, budget, k + 1, st, report)?;
                st.inputs.pop();
                st.expected.truncate(saved.0);
                st.actual.truncate(saved.1);
                st.ok = saved.2;
                st.note = saved.3;
            }
            Ok(())
        }
        FunOrn::Times(node, w, rest) => {
            let ((y, f2), (ypp, p2)) = match (f.split(), p.split()) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    report.cases.push(failure(&st.inputs, e.to_string()));
                    return Ok(());
                }
            };
            let idx = Value::pair(w.j.clone(), y.clone());
            st.expected.push(Shown::new(y.clone(), node.base_set(w)));
            st.actual.push(Shown::new(ypp.clone(), node.reorn.set_at(w.j.clone(), y.clone())));
            match reorn_recomputation(&node.reorn, &idx, ypp) {
                Ok(true) => {}
                Ok(false) => {
                    st.ok = false;
                    st.note = "recomputation fails on the returned value".into();
                }
                Err(e) => {
                    st.ok = false;
                    st.note = e.to_string();
                }
            }
            witness_walk(rest, Ok(f2.clone()), Ok(p2.clone()), budget, k, st, report)
        }
        FunOrn::End => {
            finish(st, report);
            Ok(())
        }
    }
}
