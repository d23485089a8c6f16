use std::collections::BTreeSet;

use ornate_core::library::*;
use ornate_core::ornament::*;
use ornate_core::*;

fn ab() -> SetCode {
    SetCode::enumeration(&["x", "y"])
}

fn tag_is(v: &Value, t: &str) -> bool {
    v.as_tag().map(|x| x.as_str()) == Some(t)
}

/// Fin in constraint style: both constructors store n' with n = suc n'.
fn fin_desc() -> DescFun {
    DescFun::new(
        "Fin",
        nat_set(),
        fam(|n| {
            let n = n.clone();
            let guard = move |tail: Desc| {
                let n = n.clone();
                Desc::sigma(
                    nat_set(),
                    fam(move |m| {
                        Ok(Desc::field(SetCode::eq(nat_set(), n.clone(), con("suc", m.clone())), match &tail {
                            Desc::Var(_) => Desc::Var(m.clone()),
                            other => other.clone(),
                        }))
                    }),
                )
            };
            Ok(Desc::choice(vec![("fzero", guard(Desc::One)), ("fsuc", guard(Desc::Var(Value::Unit)))]))
        }),
    )
}

/// Fin' from Fin: no constructor at zero, both indices deleted at suc m.
fn fin_prime() -> Ornament {
    Ornament::new(
        "Fin'",
        fin_desc(),
        Reindexing::identity(nat_set()),
        fam(|n| {
            let (tag, rest) = n.as_in().unwrap().as_pair().unwrap();
            if tag_is(tag, "zero") {
                return Ok(OrnCode::insert(SetCode::Empty, konst(OrnCode::One)));
            }
            let m = rest.clone();
            Ok(OrnCode::sigma(fam(move |c| {
                let tail = if tag_is(c, "fzero") {
                    OrnCode::One
                } else {
                    OrnCode::Var(InvWitness::same(m.clone()))
                };
                Ok(OrnCode::delete(m.clone(), OrnCode::delete(Value::Refl, tail)))
            })))
        }),
    )
}

/// Vectors as an ornament of lists, deleting the tag.
fn vec_of_list() -> Ornament {
    Ornament::new(
        "VecOrn",
        list_desc(ab()),
        Reindexing::new(nat_set(), SetCode::Unit, |_| Ok(Value::Unit)),
        fam(|n| {
            let (tag, rest) = n.as_in().unwrap().as_pair().unwrap();
            if tag_is(tag, "zero") {
                return Ok(OrnCode::delete(Value::tag("nil"), OrnCode::One));
            }
            let m = rest.clone();
            Ok(OrnCode::delete(
                Value::tag("cons"),
                OrnCode::sigma(fam(move |_| Ok(OrnCode::Var(InvWitness::new(m.clone(), Value::Unit))))),
            ))
        }),
    )
}

#[test]
fn well_formedness() {
    assert!(well_formed_orn(&list_orn(ab()), &Value::Unit));
    let id = id_orn(&nat_desc());
    assert!(well_formed_orn(&id, &Value::Unit));
    let d = DescFun::simple("AB", Desc::choice(vec![("a", Desc::One), ("b", Desc::One)]));
    let bad = Ornament::new(
        "bad",
        d.clone(),
        Reindexing::identity(SetCode::Unit),
        konst(OrnCode::delete(Value::tag("x"), OrnCode::One)),
    );
    assert!(!well_formed_orn(&bad, &Value::Unit));
    assert!(matches!(check_orn(&bad, &Value::Unit, 2), Err(KernelError::IllFormedOrnament { .. })));
    let good = Ornament::new("good", d, Reindexing::identity(SetCode::Unit), konst(OrnCode::delete(Value::tag("a"), OrnCode::One)));
    assert!(well_formed_orn(&good, &Value::Unit));
    for n in 0..4 {
        assert!(well_formed_orn(&fin_prime(), &nat(n)));
        assert!(well_formed_orn(&vec_of_list(), &nat(n)));
    }
}

#[test]
fn list_ornament_interprets_to_list() {
    let derived = SetCode::mu(&interp_orn(&list_orn(ab())), Value::Unit);
    let hand = SetCode::mu(&list_desc(ab()), Value::Unit);
    for d in 0..=3 {
        let a: BTreeSet<Value> = enumerate(&derived, d).unwrap().into_iter().collect();
        let b: BTreeSet<Value> = enumerate(&hand, d).unwrap().into_iter().collect();
        assert_eq!(a.len(), [1, 3, 7, 15][d]);
        assert_eq!(a, b);
    }
    match interp_orn(&list_orn(ab())).at(&Value::Unit).unwrap() {
        Desc::Sigma { dom: SetCode::Enum(tags), ctor: true, .. } => {
            assert_eq!(tags.iter().map(|t| t.as_str()).collect::<Vec<_>>(), vec!["nil", "cons"]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn identity_ornament() {
    let id = id_orn(&nat_desc());
    let a = enumerate(&SetCode::mu(&interp_orn(&id), Value::Unit), 3).unwrap();
    assert_eq!(a, enumerate(&nat_set(), 3).unwrap());
    for t in &a {
        assert_eq!(&orn_forget(&id, &Value::Unit, t).unwrap(), t);
    }
    let l = list_desc(ab());
    let idl = id_orn(&l);
    for t in enumerate(&SetCode::mu(&l, Value::Unit), 3).unwrap() {
        assert_eq!(orn_forget(&idl, &Value::Unit, &t).unwrap(), t);
    }
}

#[test]
fn forget_nat_examples() {
    let o = list_orn(ab());
    let cons = Value::pair(Value::tag("cons"), Value::pair(Value::tag("x"), Value::tag("ns")));
    assert_eq!(
        orn_forget_nat(&o, &Value::Unit, &cons).unwrap(),
        Value::pair(Value::tag("suc"), Value::tag("ns"))
    );
    let nil = Value::pair(Value::tag("nil"), Value::Unit);
    assert_eq!(orn_forget_nat(&o, &Value::Unit, &nil).unwrap(), Value::pair(Value::tag("zero"), Value::Unit));
}

#[test]
fn forget_examples() {
    let l = list(&[Value::tag("x"), Value::tag("y"), Value::tag("x")]);
    assert_eq!(orn_forget(&list_orn(ab()), &Value::Unit, &l).unwrap(), nat(3));
    let just = con("just", Value::pair(Value::tag("x"), Value::Unit));
    assert_eq!(orn_forget(&maybe_orn(ab()), &Value::Unit, &just).unwrap(), boolean(true));
    let nothing = con("nothing", Value::Unit);
    assert_eq!(orn_forget(&maybe_orn(ab()), &Value::Unit, &nothing).unwrap(), boolean(false));
}

#[test]
fn forgetting_lists_counts_cons_cells() {
    let o = list_orn(ab());
    let set = SetCode::mu(&interp_orn(&o), Value::Unit);
    for t in enumerate(&set, 3).unwrap() {
        let n = orn_forget(&o, &Value::Unit, &t).unwrap();
        assert!(check_value(&nat_set(), &n).unwrap());
        assert_eq!(to_nat(&n), Some(to_list(&t).unwrap().len()));
    }
}

#[test]
fn fin_prime_counts_and_deletions() {
    let o = fin_prime();
    let fam = interp_orn(&o);
    for n in 0..=4 {
        let got = enumerate(&SetCode::mu(&fam, nat(n)), n + 1).unwrap();
        assert_eq!(got.len(), n, "Fin' {n}");
        for t in &got {
            let back = orn_forget(&o, &nat(n), t).unwrap();
            assert!(check_value(&SetCode::mu(&fin_desc(), nat(n)), &back).unwrap());
        }
    }
    // index 0: the only Σ is over the empty set
    match fam.at(&nat(0)).unwrap() {
        Desc::Sigma { dom: SetCode::Empty, .. } => {}
        other => panic!("unexpected {other:?}"),
    }
    // index suc m: the constructor choice leads straight to the payload, no Σ for deleted fields
    let Desc::Sigma { fam: alts, .. } = fam.at(&nat(2)).unwrap() else { panic!() };
    assert!(matches!(alts(&Value::tag("fzero")).unwrap(), Desc::One));
    assert!(matches!(alts(&Value::tag("fsuc")).unwrap(), Desc::Var(_)));
}

#[test]
fn fin_prime_forget_nat_reinstates_indices() {
    let o = fin_prime();
    let payload = Value::pair(Value::tag("fzero"), Value::Unit);
    let back = orn_forget_nat(&o, &nat(3), &payload).unwrap();
    assert_eq!(back, Value::pair(Value::tag("fzero"), Value::pair(nat(2), Value::pair(Value::Refl, Value::Unit))));
    let fin = fin_desc().at(&nat(3)).unwrap();
    assert!(check_payload(&fin, &mut |_, _| Ok(true), &back).unwrap());
}

#[test]
fn composed_forgets_give_the_length() {
    let v = vec_of_list();
    for n in 0..=3 {
        let vecs = enumerate(&SetCode::mu(&interp_orn(&v), nat(n)), n).unwrap();
        assert_eq!(vecs.len(), 1 << n);
        for t in vecs {
            let l = orn_forget(&v, &nat(n), &t).unwrap();
            assert_eq!(to_list(&l).unwrap().len(), n);
            assert_eq!(orn_forget(&list_orn(ab()), &Value::Unit, &l).unwrap(), nat(n));
        }
    }
}

#[test]
fn ill_fitting_codes_are_reported_with_a_path() {
    let o = Ornament::new("bad", nat_desc(), Reindexing::identity(SetCode::Unit), konst(OrnCode::One));
    let d = interp_orn(&o);
    match d.at(&Value::Unit) {
        Err(KernelError::IllFormedOrnament { path, .. }) => assert_eq!(path, "/"),
        other => panic!("unexpected {other:?}"),
    }
}
