use ornate_core::algebraic::*;
use ornate_core::check::sigma_nodes;
use ornate_core::library::*;
use ornate_core::ornament::*;
use ornate_core::reornament::*;
use ornate_core::*;

fn ab() -> SetCode {
    SetCode::enumeration(&["x", "y"])
}

fn lists(depth: usize) -> Vec<Value> {
    enumerate(&SetCode::mu(&list_desc(ab()), Value::Unit), depth).unwrap()
}

fn idx(n: usize) -> Value {
    Value::pair(Value::Unit, nat(n))
}

#[test]
fn lists_by_length_match_a_length_filter() {
    let ao = algebraic_ornament(&list_desc(ab()), &length_alg());
    for n in 0..=3 {
        let got = enumerate(&ao.set_at(Value::Unit, nat(n)), n).unwrap();
        let oracle = lists(3).into_iter().filter(|l| to_list(l).unwrap().len() == n).count();
        assert_eq!(got.len(), oracle);
        assert_eq!(got.len(), 1 << n);
        for t in &got {
            let l = orn_forget(ao.ornament(), &idx(n), t).unwrap();
            assert_eq!(to_list(&l).unwrap().len(), n);
            assert!(assert_recomputation(&ao, &idx(n), t).unwrap());
        }
    }
}

#[test]
fn remember_lands_at_the_fold() {
    let (d, a) = (list_desc(ab()), length_alg());
    let ao = algebraic_ornament(&d, &a);
    let xy = list(&[Value::tag("x"), Value::tag("y")]);
    let r = remember(&d, &a, &Value::Unit, &xy).unwrap();
    assert!(check_value(&ao.set_at(Value::Unit, nat(2)), &r).unwrap());
    for t in lists(3) {
        let x = fold(&d, &a, &Value::Unit, &t).unwrap();
        let r = remember(&d, &a, &Value::Unit, &t).unwrap();
        let ix = Value::pair(Value::Unit, x);
        assert!(check_value(&SetCode::mu(ao.family(), ix.clone()), &r).unwrap());
        assert_eq!(orn_forget(ao.ornament(), &ix, &r).unwrap(), t);
        assert!(assert_recomputation(&ao, &ix, &r).unwrap());
    }
    let ns = algebraic_ornament(&nat_desc(), &is_suc_alg());
    let r = remember(&nat_desc(), &is_suc_alg(), &Value::Unit, &nat(0)).unwrap();
    assert!(check_value(&ns.set_at(Value::Unit, boolean(false)), &r).unwrap());
}

#[test]
fn recomputation_rejects_misplaced_values() {
    let ao = algebraic_ornament(&list_desc(ab()), &length_alg());
    let t = enumerate(&ao.set_at(Value::Unit, nat(2)), 2).unwrap().remove(0);
    assert!(matches!(
        assert_recomputation(&ao, &idx(3), &t),
        Err(KernelError::IllTypedValue(_))
    ));
}

#[test]
fn below_realises_bounded_naturals() {
    let ao = algebraic_ornament(&below_desc(), &lt_alg());
    for n in 0..=5 {
        let fins = enumerate(&ao.set_at(nat(n), boolean(true)), n).unwrap();
        assert_eq!(fins.len(), n);
        let ix = Value::pair(nat(n), boolean(true));
        let mut seen: Vec<usize> = fins
            .iter()
            .map(|f| to_nat(&orn_forget(ao.ornament(), &ix, f).unwrap()).unwrap())
            .collect();
        seen.sort();
        assert_eq!(seen, (0..n).collect::<Vec<_>>());
        for f in &fins {
            assert!(assert_recomputation(&ao, &ix, f).unwrap());
        }
    }
}

#[test]
fn extension_sizes() {
    let o = list_orn(ab());
    let code = o.at(&Value::Unit).unwrap();
    let base = o.base_at(&Value::Unit).unwrap();
    let zero = nat(0).as_in().unwrap().clone();
    let suc = nat(1).as_in().unwrap().clone();
    assert_eq!(enumerate(&extension(&code, &base, &zero).unwrap(), 3).unwrap().len(), 1);
    assert_eq!(enumerate(&extension(&code, &base, &suc).unwrap(), 3).unwrap().len(), 2);
    let id = id_orn(&nat_desc());
    for n in 0..3 {
        let xs = nat(n).as_in().unwrap().clone();
        let ext = extension(&id.at(&Value::Unit).unwrap(), &base, &xs).unwrap();
        assert_eq!(enumerate(&ext, 3).unwrap().len(), 1);
    }
}

#[test]
fn structure_of_a_suc_node() {
    let o = list_orn(ab());
    let code = o.at(&Value::Unit).unwrap();
    let base = o.base_at(&Value::Unit).unwrap();
    let suc = nat(1).as_in().unwrap().clone();
    let e = Value::pair(Value::tag("x"), Value::Unit);
    match structure(&code, &base, &suc, &e).unwrap() {
        OrnCode::Delete(tag, rest) => {
            assert_eq!(tag, Value::tag("cons"));
            match &*rest {
                OrnCode::Delete(a, rest) => {
                    assert_eq!(a, &Value::tag("x"));
                    match &**rest {
                        OrnCode::Var(w) => assert_eq!(w.j, idx(0)),
                        other => panic!("unexpected {other:?}"),
                    }
                }
                other => panic!("unexpected {other:?}"),
            }
        }
        other => panic!("unexpected {other:?}"),
    }
    let zero = nat(0).as_in().unwrap().clone();
    match structure(&code, &base, &zero, &Value::Unit).unwrap() {
        OrnCode::Delete(_, rest) => assert!(matches!(&*rest, OrnCode::One)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn reornaments_are_well_formed() {
    for o in [list_orn(ab()), id_orn(&nat_desc())] {
        let r = reornament(&o);
        for n in 0..=3 {
            assert!(well_formed_orn(r.ornament(), &idx(n)));
        }
    }
    let r = reornament(&maybe_orn(ab()));
    for b in [true, false] {
        assert!(well_formed_orn(r.ornament(), &Value::pair(Value::Unit, boolean(b))));
    }
}

#[test]
fn reornament_counts() {
    let vec = reornament(&list_orn(ab()));
    for n in 0..=3 {
        assert_eq!(enumerate(&vec.set_at(Value::Unit, nat(n)), n).unwrap().len(), 1 << n);
    }
    let im = reornament(&maybe_orn(ab()));
    assert_eq!(enumerate(&im.set_at(Value::Unit, boolean(true)), 1).unwrap().len(), 2);
    assert_eq!(enumerate(&im.set_at(Value::Unit, boolean(false)), 1).unwrap().len(), 1);
    let idn = reornament(&id_orn(&nat_desc()));
    for n in 0..=3 {
        assert_eq!(enumerate(&idn.set_at(Value::Unit, nat(n)), n).unwrap().len(), 1);
    }
}

/// Fibers of the reornament against both a brute-force filter and the
/// naive algebraic ornament of the ornamental algebra.
fn fiber_check(o: &Ornament, indices: &[Value], depth: usize, slack: usize) {
    let r = reornament(o);
    let derived = interp_orn(o);
    let naive = algebraic_ornament(&derived, &ornamental_algebra(o));
    let all = enumerate(&SetCode::mu(&derived, Value::Unit), depth + slack).unwrap();
    for t in indices {
        let ix = Value::pair(Value::Unit, t.clone());
        let fast = enumerate(&SetCode::mu(r.family(), ix.clone()), depth + slack).unwrap();
        let brute = all
            .iter()
            .filter(|tp| &orn_forget(o, &Value::Unit, tp).unwrap() == t)
            .count();
        let slow = enumerate(&naive.set_at(Value::Unit, t.clone()), depth + slack).unwrap();
        assert_eq!(fast.len(), brute, "fiber over {t}");
        assert_eq!(slow.len(), brute, "naive fiber over {t}");
        for tpp in &fast {
            assert!(reorn_recomputation(&r, &ix, tpp).unwrap());
        }
    }
}

#[test]
fn fibers_agree_with_brute_force() {
    let nats: Vec<Value> = (0..=3).map(nat).collect();
    fiber_check(&list_orn(ab()), &nats, 3, 0);
    fiber_check(&id_orn(&nat_desc()), &nats, 3, 0);
    fiber_check(&maybe_orn(ab()), &[boolean(true), boolean(false)], 1, 0);
}

fn roundtrips(o: &Ornament, j: &Value, depth: usize) {
    let r = reornament(o);
    for tp in enumerate(&SetCode::mu(&interp_orn(o), j.clone()), depth).unwrap() {
        let (t, tpp) = remember_reorn(o, j, &tp).unwrap();
        assert_eq!(t, orn_forget(o, j, &tp).unwrap());
        let ix = Value::pair(j.clone(), t.clone());
        assert!(check_value(&SetCode::mu(r.family(), ix.clone()), &tpp).unwrap());
        assert_eq!(forget_reorn(o, &ix, &tpp).unwrap(), tp);
    }
    for t in enumerate(&SetCode::mu(o.base(), o.re().apply(j).unwrap()), depth).unwrap() {
        let ix = Value::pair(j.clone(), t.clone());
        for tpp in enumerate(&SetCode::mu(r.family(), ix.clone()), depth).unwrap() {
            let tp = forget_reorn(o, &ix, &tpp).unwrap();
            assert_eq!(remember_reorn(o, j, &tp).unwrap(), (t.clone(), tpp));
        }
    }
}

#[test]
fn reornament_roundtrips() {
    roundtrips(&list_orn(ab()), &Value::Unit, 3);
    roundtrips(&maybe_orn(ab()), &Value::Unit, 3);
    roundtrips(&id_orn(&nat_desc()), &Value::Unit, 3);
}

#[test]
fn remember_reorn_examples() {
    let o = list_orn(ab());
    let (t, tpp) = remember_reorn(&o, &Value::Unit, &list(&[Value::tag("x")])).unwrap();
    assert_eq!(t, nat(1));
    let fiber = enumerate(&reornament(&o).set_at(Value::Unit, nat(1)), 1).unwrap();
    let only_x: Vec<_> = fiber
        .iter()
        .filter(|v| to_list(&forget_reorn(&o, &idx(1), v).unwrap()).unwrap() == vec![Value::tag("x")])
        .collect();
    assert_eq!(only_x, vec![&tpp]);
    let (t, tpp) = remember_reorn(&o, &Value::Unit, &list(&[])).unwrap();
    assert_eq!(t, nat(0));
    assert_eq!(enumerate(&reornament(&o).set_at(Value::Unit, nat(0)), 0).unwrap(), vec![tpp]);
}

#[test]
fn forget_reorn_over_a_singleton_alphabet() {
    let o = list_orn(SetCode::enumeration(&["x"]));
    let r = reornament(&o);
    let v = enumerate(&r.set_at(Value::Unit, nat(2)), 2).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(forget_reorn(&o, &idx(2), &v[0]).unwrap(), list(&[Value::tag("x"), Value::tag("x")]));
    let nil = enumerate(&r.set_at(Value::Unit, nat(0)), 0).unwrap();
    assert_eq!(forget_reorn(&o, &idx(0), &nil[0]).unwrap(), list(&[]));
}

#[test]
fn vectors_are_fully_optimised() {
    let r = reornament(&list_orn(ab()));
    for n in 0..=3 {
        let d = r.family().at(&idx(n)).unwrap();
        for (dom, ctor) in sigma_nodes(&d, 3).unwrap() {
            assert!(!ctor, "constructor tag at {n}");
            assert!(!matches!(dom, SetCode::Enum(_) | SetCode::Mu(..)), "{dom:?} at {n}");
        }
    }
}
