use std::sync::Arc;

use ornate_core::adjoint::*;
use ornate_core::algebraic::*;
use ornate_core::funorn::*;
use ornate_core::library::*;
use ornate_core::lift::*;
use ornate_core::ornament::*;
use ornate_core::reornament::*;
use ornate_core::*;

fn ab() -> SetCode {
    SetCode::enumeration(&["x", "y"])
}

fn x() -> Value {
    Value::tag("x")
}

fn y() -> Value {
    Value::tag("y")
}

fn node(o: &Ornament) -> OrnNode {
    OrnNode::new(o)
}

fn same() -> InvWitness {
    InvWitness::same(Value::Unit)
}

fn just(a: Value) -> Value {
    Value::inj(Value::pair(Value::pair(a, Value::Unit), Value::Unit))
}

fn trivial() -> Value {
    Value::inj(Value::pair(Value::Unit, Value::Unit))
}

fn vcons(a: Value, v: Value) -> Value {
    Value::inj(Value::pair(Value::pair(a, Value::Unit), v))
}

fn pred(n: &Value) -> Option<&Value> {
    match n.as_in()?.as_pair()? {
        (_, p @ Value::In(_)) => Some(p),
        _ => None,
    }
}

fn n_of(v: &Value) -> usize {
    to_nat(v).unwrap()
}

fn type_lt() -> FunType {
    let n = nat_desc();
    FunType::arrow(&n, Value::Unit, FunType::arrow(&n, Value::Unit, FunType::times(&bool_desc(), Value::Unit, FunType::End)))
}

fn type_lookup() -> FunOrn {
    FunOrn::arrow(
        node(&id_orn(&nat_desc())),
        same(),
        FunOrn::arrow(node(&list_orn(ab())), same(), FunOrn::times(node(&maybe_orn(ab())), same(), FunOrn::End)),
    )
}

fn less_than() -> BaseFn {
    BaseFn::new("lessThan", type_lt(), Arc::new(|a| Ok(vec![boolean(n_of(&a[0]) < n_of(&a[1]))]))).unwrap()
}

/// Direct recursion on the vector, ignoring the forced `m` companion.
fn ilookup_value(m: &Value, n: &Value, v: &Value) -> Value {
    let Some(n1) = pred(n) else { return trivial() };
    let (e, tail) = v.as_in().unwrap().as_pair().unwrap();
    let a = e.fst().unwrap().clone();
    match pred(m) {
        None => just(a),
        Some(m1) => ilookup_value(m1, n1, tail),
    }
}

fn ilookup() -> PatchFn {
    PatchFn {
        name: "ilookup".into(),
        sig: type_lookup(),
        body: FnValue::from_fn(4, Arc::new(|a| Ok(vec![ilookup_value(&a[0], &a[2], &a[3])]))).unwrap(),
    }
}

fn type_plus() -> FunType {
    let n = nat_desc();
    FunType::arrow(&n, Value::Unit, FunType::arrow(&n, Value::Unit, FunType::times(&n, Value::Unit, FunType::End)))
}

fn type_append() -> FunOrn {
    let l = list_orn(ab());
    FunOrn::arrow(node(&l), same(), FunOrn::arrow(node(&l), same(), FunOrn::times(node(&l), same(), FunOrn::End)))
}

fn plus() -> BaseFn {
    BaseFn::new("plus", type_plus(), Arc::new(|a| Ok(vec![nat(n_of(&a[0]) + n_of(&a[1]))]))).unwrap()
}

fn vappend_value(m: &Value, xs: &Value, ys: &Value) -> Value {
    match pred(m) {
        None => ys.clone(),
        Some(m1) => {
            let (e, tail) = xs.as_in().unwrap().as_pair().unwrap();
            vcons(e.fst().unwrap().clone(), vappend_value(m1, tail, ys))
        }
    }
}

fn vappend() -> PatchFn {
    PatchFn {
        name: "vappend".into(),
        sig: type_append(),
        body: FnValue::from_fn(4, Arc::new(|a| Ok(vec![vappend_value(&a[0], &a[1], &a[3])]))).unwrap(),
    }
}

#[test]
fn base_functions_respect_their_types() {
    assert!(check_fn_against_type(&less_than(), &Budget::uniform(4)).unwrap().passed());
    assert!(check_fn_against_type(&plus(), &Budget::uniform(3)).unwrap().passed());
    let wrong = BaseFn::new("wrong", type_lt(), Arc::new(|_| Ok(vec![boolean(true), boolean(false)]))).unwrap();
    let r = check_fn_against_type(&wrong, &Budget::uniform(1)).unwrap();
    assert!(!r.passed());
    assert_eq!(r.first_failure().unwrap().note, "arity mismatch");
}

#[test]
fn lookup_is_coherent() {
    let lookup = patch(&type_lookup(), &less_than(), &ilookup()).unwrap();
    assert_eq!(lookup.run(&[nat(1), list(&[x(), y()])]).unwrap(), vec![con("just", Value::pair(y(), Value::Unit))]);
    assert_eq!(lookup.run(&[nat(5), list(&[x()])]).unwrap(), vec![con("nothing", Value::Unit)]);
    let budget = Budget::per_arg(4, vec![5, 4]);
    let r = coherence_check(&type_lookup(), &less_than(), &lookup, &budget).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked(), 6 * 31);
    // independent oracle: isJust(lookup n xs) = n < length xs
    for n in 0..=5 {
        for xs in enumerate(&SetCode::mu(&list_desc(ab()), Value::Unit), 4).unwrap() {
            let out = lookup.run(&[nat(n), xs.clone()]).unwrap();
            let is_just = out[0].as_in().unwrap().fst().unwrap() == &Value::tag("just");
            assert_eq!(is_just, n < to_list(&xs).unwrap().len());
        }
    }
}

#[test]
fn a_constant_nothing_lookup_is_caught() {
    let bad = LiftedFn {
        name: "nothing".into(),
        sig: type_lookup(),
        body: FnValue::from_fn(2, Arc::new(|_| Ok(vec![con("nothing", Value::Unit)]))).unwrap(),
    };
    let r = coherence_check(&type_lookup(), &less_than(), &bad, &Budget::uniform(3)).unwrap();
    let first = r.first_failure().unwrap();
    let inputs: Vec<&Value> = first.inputs.iter().map(|s| &s.value).collect();
    assert_eq!(inputs, vec![&nat(0), &list(&[x()])]);
}

#[test]
fn append_is_coherent() {
    let append = patch(&type_append(), &plus(), &vappend()).unwrap();
    assert_eq!(append.run(&[list(&[x()]), list(&[y()])]).unwrap(), vec![list(&[x(), y()])]);
    let r = coherence_check(&type_append(), &plus(), &append, &Budget::uniform(3)).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked(), 15 * 15);
}

#[test]
fn patches_inhabit_their_signatures() {
    let b = Budget::uniform(4);
    for (t, f, p) in [
        (type_lookup(), less_than(), ilookup()),
        (type_append(), plus(), vappend()),
    ] {
        assert!(check_patch_fn(&t, &f, &p, &b).unwrap().passed());
        assert!(coherence_witness(&t, &f, &p, &b).unwrap().passed());
        let lifted = patch(&t, &f, &p).unwrap();
        assert!(coherence_check(&t, &f, &lifted, &b).unwrap().passed());
    }
}

#[test]
fn corrupted_patches_are_reported() {
    let bad = PatchFn {
        name: "bad".into(),
        sig: type_append(),
        body: FnValue::from_fn(4, Arc::new(|a| Ok(vec![a[3].clone()]))).unwrap(),
    };
    let r = check_patch_fn(&type_append(), &plus(), &bad, &Budget::uniform(2)).unwrap();
    assert!(!r.passed());
    assert!(r.first_failure().unwrap().note.contains("index"));
    assert!(!coherence_witness(&type_append(), &plus(), &bad, &Budget::uniform(2)).unwrap().passed());
}

#[test]
fn patch_signature_of_lookup() {
    let sig = patch_sig(&type_lt(), &type_lookup(), &less_than()).unwrap();
    assert_eq!(sig.slots.len(), 3);
    assert_eq!(sig.slots.iter().filter(|s| s.kind == SlotKind::Arg).count(), 2);
    let shown = sig.to_string();
    assert!(shown.starts_with("(t0 : μ Nat unit) -> (t0++ : μ idNat^ (pair unit t0))"), "{shown}");
    assert!(shown.ends_with("μ MaybeOrn^ (pair unit (lessThan t0 t1)#0)"), "{shown}");
    let id = FunOrn::identity(&type_plus());
    let sig = patch_sig(&type_plus(), &id, &plus()).unwrap();
    for s in &sig.slots {
        for n in 0..3 {
            assert_eq!(enumerate(&s.node.reorn.set_at(s.j.clone(), nat(n)), n).unwrap().len(), 1);
        }
    }
}

#[test]
fn identity_functional_ornament_reproduces_the_base() {
    let t = FunOrn::identity(&type_plus());
    let target = t.clone();
    let p = PatchFn {
        name: "forced".into(),
        sig: t.clone(),
        body: FnValue::from_fn(
            4,
            Arc::new(move |a| {
                let FunOrn::Arrow(_, _, r) = &target else { unreachable!() };
                let FunOrn::Arrow(_, _, r) = &**r else { unreachable!() };
                let FunOrn::Times(n, w, _) = &**r else { unreachable!() };
                let y = nat(n_of(&a[0]) + n_of(&a[2]));
                let fiber = n.reorn.set_at(w.j.clone(), y.clone());
                Ok(vec![enumerate(&fiber, n_of(&y)).unwrap().remove(0)])
            }),
        )
        .unwrap(),
    };
    assert!(check_patch_fn(&t, &plus(), &p, &Budget::uniform(3)).unwrap().passed());
    let lifted = patch(&t, &plus(), &p).unwrap();
    for m in 0..=3 {
        for n in 0..=3 {
            assert_eq!(lifted.run(&[nat(m), nat(n)]).unwrap(), plus().run(&[nat(m), nat(n)]).unwrap());
        }
    }
}

fn type_head() -> FunOrn {
    FunOrn::arrow(node(&list_orn(ab())), same(), FunOrn::times(node(&maybe_orn(ab())), same(), FunOrn::End))
}

fn is_suc() -> BaseFn {
    let t = FunType::arrow(&nat_desc(), Value::Unit, FunType::times(&bool_desc(), Value::Unit, FunType::End));
    BaseFn::new(
        "isSuc",
        t,
        Arc::new(|a| Ok(vec![fold(&nat_desc(), &is_suc_alg(), &Value::Unit, &a[0])?])),
    )
    .unwrap()
}

fn ihead() -> PatchFn {
    let imaybe = reornament(&maybe_orn(ab()));
    lift_fold(
        "ihead",
        &type_head(),
        Arc::new(move |n, _| {
            let suc = n.base_payload()?.fst() == Some(&Value::tag("suc"));
            let (xs, e) = if suc {
                (Value::pair(Value::tag("true"), Value::Unit), Value::pair(n.e.fst().unwrap().clone(), Value::Unit))
            } else {
                (Value::pair(Value::tag("false"), Value::Unit), Value::Unit)
            };
            lift_constructor(&imaybe, &Value::Unit, &xs, &e, &Value::Unit, FnValue::End)
        }),
    )
    .unwrap()
}

#[test]
fn lifted_fold_gives_head() {
    let p = ihead();
    let vx = vcons(x(), trivial());
    assert_eq!(p.body.run(&[nat(1), vx]).unwrap(), vec![just(x())]);
    assert_eq!(p.body.run(&[nat(0), trivial()]).unwrap(), vec![trivial()]);
    assert!(check_patch_fn(&type_head(), &is_suc(), &p, &Budget::uniform(3)).unwrap().passed());
    let head = patch(&type_head(), &is_suc(), &p).unwrap();
    assert_eq!(head.run(&[list(&[x(), y()])]).unwrap(), vec![con("just", Value::pair(x(), Value::Unit))]);
    assert_eq!(head.run(&[list(&[])]).unwrap(), vec![con("nothing", Value::Unit)]);
    // agrees with looking up position zero
    let vec = reornament(&list_orn(ab()));
    for n in 0..=3 {
        for v in enumerate(&vec.set_at(Value::Unit, nat(n)), n).unwrap() {
            assert_eq!(p.body.run(&[nat(n), v.clone()]).unwrap(), vec![ilookup_value(&nat(0), &nat(n), &v)]);
        }
    }
}

fn vappend_lifted() -> PatchFn {
    let vec = reornament(&list_orn(ab()));
    lift_ind(
        "vappend",
        &type_append(),
        Arc::new(move |node, subs| {
            let m = node.t().clone();
            if pred(&m).is_none() {
                return Ok(FnValue::arrow(|_| Ok(FnValue::arrow(|ys| Ok(FnValue::results(vec![ys.clone()]))))));
            }
            let (vec, a, rest) = (vec.clone(), node.e.fst().unwrap().clone(), subs[0].clone());
            let m1 = n_of(pred(&m).unwrap());
            Ok(FnValue::arrow(move |n| {
                let (vec, a, rest) = (vec.clone(), a.clone(), rest.clone());
                let n = n.clone();
                Ok(FnValue::arrow(move |ys| {
                    let sub = rest.apply(&n)?.apply(ys)?.run(&[])?;
                    let xs = Value::pair(Value::tag("suc"), nat(m1 + n_of(&n)));
                    lift_constructor(&vec, &Value::Unit, &xs, &Value::pair(a.clone(), Value::Unit), &sub[0], FnValue::End)
                }))
            }))
        }),
    )
    .unwrap()
}

#[test]
fn lifted_induction_gives_vappend() {
    let p = vappend_lifted();
    assert!(check_patch_fn(&type_append(), &plus(), &p, &Budget::uniform(3)).unwrap().passed());
    let vec = reornament(&list_orn(ab()));
    for m in 0..=2 {
        for xs in enumerate(&vec.set_at(Value::Unit, nat(m)), m).unwrap() {
            for n in 0..=2 {
                for ys in enumerate(&vec.set_at(Value::Unit, nat(n)), n).unwrap() {
                    let args = [nat(m), xs.clone(), nat(n), ys.clone()];
                    assert_eq!(p.body.run(&args).unwrap(), vappend().body.run(&args).unwrap());
                }
            }
        }
    }
}

/// ilookup from the combinators: induction on m, case on the vector.
fn ilookup_lifted() -> PatchFn {
    let (vec, imaybe) = (reornament(&list_orn(ab())), reornament(&maybe_orn(ab())));
    lift_ind(
        "ilookup",
        &type_lookup(),
        Arc::new(move |node, subs| {
            let zero = pred(node.t()).is_none();
            let (vec, imaybe) = (vec.clone(), imaybe.clone());
            let rest = subs.first().cloned();
            Ok(FnValue::arrow(move |n| {
                let (vec, imaybe, rest, n) = (vec.clone(), imaybe.clone(), rest.clone(), n.clone());
                Ok(FnValue::arrow(move |v| {
                    let idx = Value::pair(Value::Unit, n.clone());
                    lift_case_value(&vec, &idx, v, &mut |c| {
                        let Some(n1) = pred(c.t()) else {
                            let xs = Value::pair(Value::tag("false"), Value::Unit);
                            return Ok(FnValue::results(vec![lift_constructor_value(&imaybe, &Value::Unit, &xs, &Value::Unit, &Value::Unit)?]));
                        };
                        if zero {
                            let xs = Value::pair(Value::tag("true"), Value::Unit);
                            let e = Value::pair(c.e.fst().unwrap().clone(), Value::Unit);
                            return Ok(FnValue::results(vec![lift_constructor_value(&imaybe, &Value::Unit, &xs, &e, &Value::Unit)?]));
                        }
                        rest.as_ref().unwrap().apply(n1)?.apply(&c.a)
                    })
                }))
            }))
        }),
    )
    .unwrap()
}

#[test]
fn lifted_lookup_matches_the_hand_written_patch() {
    let p = ilookup_lifted();
    assert!(check_patch_fn(&type_lookup(), &less_than(), &p, &Budget::uniform(3)).unwrap().passed());
    assert!(coherence_witness(&type_lookup(), &less_than(), &p, &Budget::uniform(3)).unwrap().passed());
    let vec = reornament(&list_orn(ab()));
    let idn = reornament(&id_orn(&nat_desc()));
    for m in 0..=3 {
        let mpp = enumerate(&idn.set_at(Value::Unit, nat(m)), m).unwrap().remove(0);
        for n in 0..=3 {
            for v in enumerate(&vec.set_at(Value::Unit, nat(n)), n).unwrap() {
                let args = [nat(m), mpp.clone(), nat(n), v.clone()];
                assert_eq!(p.body.run(&args).unwrap(), ilookup().body.run(&args).unwrap());
            }
        }
    }
}

#[test]
fn lift_case_rejects_foreign_values() {
    let vec = reornament(&list_orn(ab()));
    let r = lift_case_value(&vec, &Value::pair(Value::Unit, nat(1)), &trivial(), &mut |_| Ok(()));
    assert!(r.is_err());
}

#[test]
fn lift_constructor_checks_its_pieces() {
    let vec = reornament(&list_orn(ab()));
    let xs = Value::pair(Value::tag("suc"), nat(0));
    let e = Value::pair(x(), Value::Unit);
    assert!(lift_constructor_value(&vec, &Value::Unit, &xs, &e, &trivial()).is_ok());
    assert!(lift_constructor_value(&vec, &Value::Unit, &xs, &Value::Unit, &trivial()).is_err());
    assert!(lift_constructor_value(&vec, &Value::Unit, &xs, &e, &vcons(x(), trivial())).is_err());
    // every well-typed triple at depth ≤ 2 lands in the fiber
    for k in 0..=2 {
        let xs = nat(k).as_in().unwrap().clone();
        let code = vec.source().at(&Value::Unit).unwrap();
        let base = vec.source().base_at(&Value::Unit).unwrap();
        for e in enumerate(&extension(&code, &base, &xs).unwrap(), 2).unwrap() {
            let subs = match pred(&nat(k)) {
                None => vec![Value::Unit],
                Some(m) => enumerate(&vec.set_at(Value::Unit, m.clone()), 2).unwrap(),
            };
            for a in subs {
                let v = lift_constructor_value(&vec, &Value::Unit, &xs, &e, &a).unwrap();
                assert!(check_value(&vec.set_at(Value::Unit, nat(k)), &v).unwrap());
            }
        }
    }
}

fn pulled_back_imaybe() -> DescFun {
    let imaybe = reornament(&maybe_orn(ab()));
    let index = SetCode::sigma(nat_set(), konst(bool_set()));
    DescFun::new(
        "E",
        index,
        fam(move |nb| imaybe.family().at(&Value::pair(Value::Unit, nb.snd().unwrap().clone()))),
    )
}

fn ilookup_left(v: Value) -> IndexedFnLeft {
    Arc::new(move |n, m| Ok(ilookup_value(m, n, &v)))
}

#[test]
fn vlookup_from_the_adjunction() {
    let ao = algebraic_ornament(&below_desc(), &lt_alg());
    let e = pulled_back_imaybe();
    let vec = reornament(&list_orn(ab()));
    let o = list_orn(ab());
    let mut checked = 0;
    for n in 0..=4 {
        let ix = Value::pair(nat(n), boolean(true));
        for v in enumerate(&vec.set_at(Value::Unit, nat(n)), n).unwrap() {
            let items = to_list(&forget_reorn(&o, &Value::pair(Value::Unit, nat(n)), &v).unwrap()).unwrap();
            let vlookup = rl_adjoint(&ao, &e, ilookup_left(v.clone()));
            for fin in enumerate(&ao.set_at(nat(n), boolean(true)), n).unwrap() {
                let k = n_of(&orn_forget(ao.ornament(), &ix, &fin).unwrap());
                assert_eq!(vlookup(&nat(n), &boolean(true), &fin).unwrap(), just(items[k].clone()));
                checked += 1;
            }
        }
    }
    assert_eq!(checked, (0..=4).map(|n| n << n).sum::<usize>());
}

#[test]
fn adjunction_roundtrips() {
    let ao = algebraic_ornament(&below_desc(), &lt_alg());
    let e = pulled_back_imaybe();
    let vec = reornament(&list_orn(ab()));
    for n in 0..=3 {
        for v in enumerate(&vec.set_at(Value::Unit, nat(n)), n).unwrap() {
            let f = ilookup_left(v.clone());
            let g = rl_adjoint(&ao, &e, f.clone());
            let back = lr_adjoint(&ao, &e, g.clone());
            for t in enumerate(&SetCode::mu(&below_desc(), nat(n)), 3).unwrap() {
                assert_eq!(back(&nat(n), &t).unwrap(), f(&nat(n), &t).unwrap());
            }
            let again = rl_adjoint(&ao, &e, lr_adjoint(&ao, &e, g.clone()));
            for b in [true, false] {
                for tx in enumerate(&ao.set_at(nat(n), boolean(b)), 3).unwrap() {
                    assert_eq!(again(&nat(n), &boolean(b), &tx).unwrap(), g(&nat(n), &boolean(b), &tx).unwrap());
                }
            }
        }
    }
}

#[test]
fn constant_right_gives_constant_left() {
    let ao = algebraic_ornament(&below_desc(), &lt_alg());
    let e = DescFun::new("K", SetCode::sigma(nat_set(), konst(bool_set())), konst(Desc::One));
    let g: IndexedFnRight = Arc::new(|_, _, _| Ok(Value::inj(Value::Unit)));
    let f = lr_adjoint(&ao, &e, g);
    for n in 0..=3 {
        for t in enumerate(&SetCode::mu(&below_desc(), nat(n)), 3).unwrap() {
            assert_eq!(f(&nat(n), &t).unwrap(), Value::inj(Value::Unit));
        }
    }
}

#[test]
fn rl_adjoint_rejects_values_outside_the_fiber() {
    let ao = algebraic_ornament(&below_desc(), &lt_alg());
    let g = rl_adjoint(&ao, &pulled_back_imaybe(), ilookup_left(trivial()));
    let fin = enumerate(&ao.set_at(nat(2), boolean(true)), 2).unwrap().remove(0);
    assert!(g(&nat(2), &boolean(false), &fin).is_err());
}
