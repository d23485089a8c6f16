//! Algebraic ornaments, `remember` and the recomputation check.

use std::sync::Arc;

use crate::check::{check_value, equal_value};
use crate::code::{fam, Algebra, Desc, DescFun, SetCode};
use crate::elim::{fold, map_payload};
use crate::error::{ill_typed, KernelError, Result};
use crate::ornament::{interp_orn, orn_forget, orn_forget_nat, InvWitness, OrnCode, Ornament, Reindexing};
use crate::value::Value;

/// `D^α`: `D` indexed additionally by the result of folding `α`.
#[derive(Clone, Debug)]
pub struct AlgOrnament {
    ornament: Ornament,
    desc: DescFun,
    alg: Algebra,
    interp: DescFun,
}

impl AlgOrnament {
    pub fn ornament(&self) -> &Ornament {
        &self.ornament
    }

    /// The base description `D`.
    pub fn base(&self) -> &DescFun {
        &self.desc
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// The ornamented family over `Σ(i:I). X i`.
    pub fn family(&self) -> &DescFun {
        &self.interp
    }

    pub fn set_at(&self, i: Value, x: Value) -> SetCode {
        SetCode::mu(&self.interp, Value::pair(i, x))
    }
}

type Cont = Arc<dyn Fn(Value) -> Value + Send + Sync>;

pub fn algebraic_ornament(d: &DescFun, alg: &Algebra) -> AlgOrnament {
    algebraic_ornament_named(&format!("{}^{}", d.name(), alg.name()), d, alg)
}

pub fn algebraic_ornament_named(name: &str, d: &DescFun, alg: &Algebra) -> AlgOrnament {
    let carrier = alg.clone();
    let index_set = SetCode::sigma(
        d.index_set().clone(),
        fam(move |i| carrier.carrier_at(i)),
    );
    let (base, a) = (d.clone(), alg.clone());
    let ornament = Ornament::new(
        name,
        d.clone(),
        Reindexing::first(index_set, d.index_set().clone()),
        fam(move |ix| {
            let (i, x) = split_index(ix)?;
            alg_code(&a, i, x, &base.at(i)?, Arc::new(|p| p))
        }),
    );
    let interp = interp_orn(&ornament);
    AlgOrnament {
        ornament,
        desc: d.clone(),
        alg: alg.clone(),
        interp,
    }
}

fn split_index(ix: &Value) -> Result<(&Value, &Value)> {
    match ix.as_pair() {
        Some(p) => Ok(p),
        None => ill_typed(format!("expected an index pair, found {ix}")),
    }
}

/// The equation `step(i, payload) = x`, checked against the carrier.
fn equation(alg: &Algebra, i: &Value, x: &Value, payload: Value) -> Result<SetCode> {
    let carrier = alg.carrier_at(i)?;
    let lhs = alg.step(i, &payload)?;
    if !check_value(&carrier, &lhs)? {
        return Err(KernelError::IllFormedAlgebra(format!(
            "{} produced {lhs} outside its carrier at {i}",
            alg.name()
        )));
    }
    Ok(SetCode::eq(carrier, lhs, x.clone()))
}

fn alg_code(alg: &Algebra, i: &Value, x: &Value, d: &Desc, k: Cont) -> Result<OrnCode> {
    match d {
        Desc::Sigma { fam: bf, .. } => {
            let (alg, i, x, bf) = (alg.clone(), i.clone(), x.clone(), bf.clone());
            Ok(OrnCode::sigma(fam(move |s| {
                let (k, s2) = (k.clone(), s.clone());
                alg_code(&alg, &i, &x, &bf(s)?, Arc::new(move |p| k(Value::pair(s2.clone(), p))))
            })))
        }
        Desc::One => Ok(OrnCode::insert(
            equation(alg, i, x, k(Value::Unit))?,
            fam(|_| Ok(OrnCode::One)),
        )),
        leaf => {
            let slots = slot_set(alg, leaf)?;
            let (alg, i, x, leaf) = (alg.clone(), i.clone(), x.clone(), leaf.clone());
            Ok(OrnCode::insert(
                slots,
                fam(move |xs| {
                    let (leaf, xs2) = (leaf.clone(), xs.clone());
                    Ok(OrnCode::insert(
                        equation(&alg, &i, &x, k(xs.clone()))?,
                        fam(move |_| witness_code(&leaf, &xs2)),
                    ))
                }),
            ))
        }
    }
}

/// Carrier values for every recursive position of a Σ-free subtree.
fn slot_set(alg: &Algebra, d: &Desc) -> Result<SetCode> {
    match d {
        Desc::Var(i) => alg.carrier_at(i),
        Desc::One => Ok(SetCode::Unit),
        Desc::Pi(dom, bf) => {
            let (alg, bf) = (alg.clone(), bf.clone());
            Ok(SetCode::pi(dom.clone(), fam(move |s| slot_set(&alg, &bf(s)?))))
        }
        Desc::Sigma { .. } => Err(KernelError::IllFormedAlgebra(
            "a Σ below a Π has no algebraic ornament here".into(),
        )),
    }
}

fn witness_code(d: &Desc, xs: &Value) -> Result<OrnCode> {
    match d {
        Desc::Var(i) => Ok(OrnCode::Var(InvWitness::new(
            Value::pair(i.clone(), xs.clone()),
            i.clone(),
        ))),
        Desc::One => Ok(OrnCode::One),
        Desc::Pi(_, bf) => {
            let (bf, xs) = (bf.clone(), xs.clone());
            Ok(OrnCode::Pi(fam(move |s| match xs.apply(s) {
                Some(x) => witness_code(&bf(s)?, x),
                None => ill_typed(format!("no slot for {s} in {xs}")),
            })))
        }
        Desc::Sigma { .. } => Err(KernelError::IllFormedAlgebra(
            "a Σ below a Π has no algebraic ornament here".into(),
        )),
    }
}

/// Injects `t` into `D^α` at index `(i, fold α t)`.
pub fn remember(d: &DescFun, alg: &Algebra, i: &Value, t: &Value) -> Result<Value> {
    let Some(payload) = t.as_in() else {
        return ill_typed(format!("expected a constructor node, found {t}"));
    };
    Ok(Value::inj(remember_payload(d, alg, &d.at(i)?, payload)?))
}

fn remember_payload(d: &DescFun, alg: &Algebra, node: &Desc, payload: &Value) -> Result<Value> {
    match node {
        Desc::Sigma { fam: bf, .. } => match payload {
            Value::Pair(s, rest) => Ok(Value::pair(
                (**s).clone(),
                remember_payload(d, alg, &bf(s)?, rest)?,
            )),
            _ => ill_typed(format!("expected a pair, found {payload}")),
        },
        Desc::One => Ok(Value::pair(Value::Refl, Value::Unit)),
        leaf => {
            let xs = map_payload(leaf, payload, &mut |j, sub| fold(d, alg, j, sub))?;
            let subs = map_payload(leaf, payload, &mut |j, sub| remember(d, alg, j, sub))?;
            Ok(Value::pair(xs, Value::pair(Value::Refl, subs)))
        }
    }
}

/// Recomputation: folding the forgotten value gives back the index.
pub fn assert_recomputation(ao: &AlgOrnament, idx: &Value, t_alpha: &Value) -> Result<bool> {
    let (i, x) = split_index(idx)?;
    if !check_value(&SetCode::mu(ao.family(), idx.clone()), t_alpha)? {
        return ill_typed(format!("{t_alpha} is not an inhabitant at {idx}"));
    }
    let t = orn_forget(ao.ornament(), idx, t_alpha)?;
    let y = fold(ao.base(), ao.algebra(), i, &t)?;
    equal_value(&ao.algebra().carrier_at(i)?, &y, x)
}

/// The ornamental algebra of `o`: carrier `μ base (re j)`, step `In ∘ forgetNat`.
pub fn ornamental_algebra(o: &Ornament) -> Algebra {
    let (carrier, step) = (o.clone(), o.clone());
    Algebra::new(
        &format!("forget{}", o.name()),
        fam(move |j| Ok(SetCode::mu(carrier.base(), carrier.re().apply(j)?))),
        move |j, payload| Ok(Value::inj(orn_forget_nat(&step, j, payload)?)),
    )
}
