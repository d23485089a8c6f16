//! Reornaments: the algebraic ornament of an ornament by its own forgetful
//! algebra, built directly in forced and detagged form.

use crate::check::{check_value, equal_value};
use crate::code::{fam, Desc, DescFun, SetCode};
use crate::error::{ill_typed, Result};
use crate::ornament::{interp_orn, orn_forget, InvWitness, OrnCode, Ornament, Reindexing};
use crate::value::Value;

/// The reornament of `source`, with its interpreted family cached.
#[derive(Clone, Debug)]
pub struct Reorn {
    source: Ornament,
    ornament: Ornament,
    family: DescFun,
}

impl Reorn {
    pub fn source(&self) -> &Ornament {
        &self.source
    }

    pub fn ornament(&self) -> &Ornament {
        &self.ornament
    }

    /// The reornamented family over `Σ(j:J). μ base (re j)`.
    pub fn family(&self) -> &DescFun {
        &self.family
    }

    pub fn set_at(&self, j: Value, t: Value) -> SetCode {
        SetCode::mu(&self.family, Value::pair(j, t))
    }
}

fn pair_parts<'a>(v: &'a Value, what: &str) -> Result<(&'a Value, &'a Value)> {
    match v.as_pair() {
        Some(p) => Ok(p),
        None => ill_typed(format!("expected a pair for {what}, found {v}")),
    }
}

/// The data an ornament inserts at base node `xs`.
pub fn extension(code: &OrnCode, base: &Desc, xs: &Value) -> Result<SetCode> {
    match (code, base) {
        (OrnCode::Var(_), Desc::Var(_)) | (OrnCode::One, Desc::One) => Ok(SetCode::Unit),
        (OrnCode::Pi(of), Desc::Pi(dom, bf)) => {
            let (of, bf, xs) = (of.clone(), bf.clone(), xs.clone());
            Ok(SetCode::pi(
                dom.clone(),
                fam(move |s| match xs.apply(s) {
                    Some(x) => extension(&of(s)?, &bf(s)?, x),
                    None => ill_typed(format!("no entry for {s} in {xs}")),
                }),
            ))
        }
        (OrnCode::Sigma { fam: of, .. }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(xs, "a copied field")?;
            extension(&of(s)?, &bf(s)?, rest)
        }
        (OrnCode::Insert { set, fam: of, .. }, _) => {
            let (of, base, xs) = (of.clone(), base.clone(), xs.clone());
            Ok(SetCode::sigma(set.clone(), fam(move |s| extension(&of(s)?, &base, &xs))))
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { dom, fam: bf, .. }) => {
            let (s, tail) = pair_parts(xs, "a deleted field")?;
            let (rest, next, tail) = (rest.clone(), bf(r)?, tail.clone());
            Ok(SetCode::sigma(
                SetCode::eq(dom.clone(), s.clone(), r.clone()),
                fam(move |_| extension(&rest, &next, &tail)),
            ))
        }
        (code, base) => ill_typed(format!("{code:?} does not fit base node {base:?}")),
    }
}

/// The recursive structure of the reornament at base node `xs` extended by `e`.
pub fn structure(code: &OrnCode, base: &Desc, xs: &Value, e: &Value) -> Result<OrnCode> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(_)) => Ok(OrnCode::Var(InvWitness::new(
            Value::pair(w.j.clone(), xs.clone()),
            w.j.clone(),
        ))),
        (OrnCode::One, Desc::One) => Ok(OrnCode::One),
        (OrnCode::Pi(of), Desc::Pi(_, bf)) => {
            let (of, bf, xs, e) = (of.clone(), bf.clone(), xs.clone(), e.clone());
            Ok(OrnCode::Pi(fam(move |s| match (xs.apply(s), e.apply(s)) {
                (Some(x), Some(ex)) => structure(&of(s)?, &bf(s)?, x, ex),
                _ => ill_typed(format!("no entry for {s}")),
            })))
        }
        (OrnCode::Sigma { fam: of, relabel }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(xs, "a copied field")?;
            let shown = match relabel {
                Some(r) => r.to_new(s)?,
                None => s.clone(),
            };
            Ok(OrnCode::delete(shown, structure(&of(s)?, &bf(s)?, rest, e)?))
        }
        (OrnCode::Insert { fam: of, .. }, _) => {
            let (s, e_rest) = pair_parts(e, "an inserted extension")?;
            Ok(OrnCode::delete(s.clone(), structure(&of(s)?, base, xs, e_rest)?))
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let (_, tail) = pair_parts(xs, "a deleted field")?;
            let (_, e_rest) = pair_parts(e, "a deletion proof")?;
            structure(rest, &bf(r)?, tail, e_rest)
        }
        (code, base) => ill_typed(format!("{code:?} does not fit base node {base:?}")),
    }
}

pub fn reornament(o: &Ornament) -> Reorn {
    reornament_named(&format!("{}^", o.name()), o)
}

pub fn reornament_named(name: &str, o: &Ornament) -> Reorn {
    let base = interp_orn(o);
    let src = o.clone();
    let index_set = SetCode::sigma(
        o.fine_index_set().clone(),
        fam(move |j| Ok(SetCode::mu(src.base(), src.re().apply(j)?))),
    );
    let src = o.clone();
    let ornament = Ornament::new(
        name,
        base,
        Reindexing::first(index_set, o.fine_index_set().clone()),
        fam(move |jt| {
            let (j, t) = pair_parts(jt, "a reornament index")?;
            let Some(xs) = t.as_in() else {
                return ill_typed(format!("expected a constructor node, found {t}"));
            };
            let code = src.at(j)?;
            let base = src.base_at(j)?;
            let (xs2, code2, base2) = (xs.clone(), code.clone(), base.clone());
            Ok(OrnCode::insert_named(
                "e",
                extension(&code, &base, xs)?,
                fam(move |e| structure(&code2, &base2, &xs2, e)),
            ))
        }),
    );
    let family = interp_orn(&ornament);
    Reorn {
        source: o.clone(),
        ornament,
        family,
    }
}

/// Splits an ornamented value into its base value and its reornament value.
pub fn remember_reorn(o: &Ornament, j: &Value, t_plus: &Value) -> Result<(Value, Value)> {
    let Some(payload) = t_plus.as_in() else {
        return ill_typed(format!("expected a constructor node, found {t_plus}"));
    };
    let (b, e, a) = remember_node(o, &o.at(j)?, &o.base_at(j)?, payload)?;
    Ok((Value::inj(b), Value::inj(Value::pair(e, a))))
}

fn remember_node(
    o: &Ornament,
    code: &OrnCode,
    base: &Desc,
    p: &Value,
) -> Result<(Value, Value, Value)> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(_)) => {
            let (t, tpp) = remember_reorn(o, &w.j, p)?;
            Ok((t, Value::Unit, tpp))
        }
        (OrnCode::One, Desc::One) => Ok((Value::Unit, Value::Unit, Value::Unit)),
        (OrnCode::Pi(of), Desc::Pi(_, bf)) => {
            let Value::Fun(table) = p else {
                return ill_typed(format!("expected a table, found {p}"));
            };
            let (mut bs, mut es, mut r#as) = (vec![], vec![], vec![]);
            for (arg, r) in table.iter() {
                let (b, e, a) = remember_node(o, &of(arg)?, &bf(arg)?, r)?;
                bs.push((arg.clone(), b));
                es.push((arg.clone(), e));
                r#as.push((arg.clone(), a));
            }
            Ok((Value::fun(bs), Value::fun(es), Value::fun(r#as)))
        }
        (OrnCode::Sigma { fam: of, relabel }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(p, "a copied field")?;
            let s = match relabel {
                Some(r) => r.to_base(s)?,
                None => s.clone(),
            };
            let (b, e, a) = remember_node(o, &of(&s)?, &bf(&s)?, rest)?;
            Ok((Value::pair(s, b), e, a))
        }
        (OrnCode::Insert { fam: of, .. }, _) => {
            let (s, rest) = pair_parts(p, "an inserted field")?;
            let (b, e, a) = remember_node(o, &of(s)?, base, rest)?;
            Ok((b, Value::pair(s.clone(), e), a))
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let (b, e, a) = remember_node(o, rest, &bf(r)?, p)?;
            Ok((Value::pair(r.clone(), b), Value::pair(Value::Refl, e), a))
        }
        (code, base) => ill_typed(format!("{code:?} does not fit base node {base:?}")),
    }
}

/// Rebuilds the ornamented value from its index and reornament value.
pub fn forget_reorn(o: &Ornament, idx: &Value, t_pp: &Value) -> Result<Value> {
    let (j, t) = pair_parts(idx, "a reornament index")?;
    let (Some(xs), Some(node)) = (t.as_in(), t_pp.as_in()) else {
        return ill_typed(format!("expected constructor nodes, found {t} and {t_pp}"));
    };
    let (e, a) = pair_parts(node, "a reornament node")?;
    Ok(Value::inj(rebuild(o, &o.at(j)?, &o.base_at(j)?, xs, e, a)?))
}

fn rebuild(o: &Ornament, code: &OrnCode, base: &Desc, xs: &Value, e: &Value, a: &Value) -> Result<Value> {
    match (code, base) {
        (OrnCode::Var(w), Desc::Var(_)) => forget_reorn(o, &Value::pair(w.j.clone(), xs.clone()), a),
        (OrnCode::One, Desc::One) => Ok(Value::Unit),
        (OrnCode::Pi(of), Desc::Pi(_, bf)) => {
            let Value::Fun(table) = xs else {
                return ill_typed(format!("expected a table, found {xs}"));
            };
            let mut out = Vec::with_capacity(table.len());
            for (arg, x) in table.iter() {
                match (e.apply(arg), a.apply(arg)) {
                    (Some(ex), Some(ax)) => {
                        out.push((arg.clone(), rebuild(o, &of(arg)?, &bf(arg)?, x, ex, ax)?))
                    }
                    _ => return ill_typed(format!("no entry for {arg}")),
                }
            }
            Ok(Value::fun(out))
        }
        (OrnCode::Sigma { fam: of, relabel }, Desc::Sigma { fam: bf, .. }) => {
            let (s, rest) = pair_parts(xs, "a copied field")?;
            let shown = match relabel {
                Some(r) => r.to_new(s)?,
                None => s.clone(),
            };
            Ok(Value::pair(shown, rebuild(o, &of(s)?, &bf(s)?, rest, e, a)?))
        }
        (OrnCode::Insert { fam: of, .. }, _) => {
            let (s, e_rest) = pair_parts(e, "an inserted extension")?;
            Ok(Value::pair(s.clone(), rebuild(o, &of(s)?, base, xs, e_rest, a)?))
        }
        (OrnCode::Delete(r, rest), Desc::Sigma { fam: bf, .. }) => {
            let (_, tail) = pair_parts(xs, "a deleted field")?;
            let (_, e_rest) = pair_parts(e, "a deletion proof")?;
            rebuild(o, rest, &bf(r)?, tail, e_rest, a)
        }
        (code, base) => ill_typed(format!("{code:?} does not fit base node {base:?}")),
    }
}

/// Recomputation for reornaments: the rebuilt value forgets back to `t`.
pub fn reorn_recomputation(r: &Reorn, idx: &Value, t_pp: &Value) -> Result<bool> {
    if !check_value(&SetCode::mu(r.family(), idx.clone()), t_pp)? {
        return ill_typed(format!("{t_pp} is not an inhabitant at {idx}"));
    }
    let (j, t) = pair_parts(idx, "a reornament index")?;
    let o = r.source();
    let t_plus = forget_reorn(o, idx, t_pp)?;
    let back = orn_forget(o, j, &t_plus)?;
    equal_value(&SetCode::mu(o.base(), o.re().apply(j)?), &back, t)
}
