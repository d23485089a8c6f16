use ornate_core::check::complete_domain;
use ornate_core::library::*;
use ornate_core::*;
use proptest::prelude::*;

fn ab() -> SetCode {
    SetCode::enumeration(&["x", "y"])
}

/// All words over `alphabet` of length at most `n`, shortest first.
fn words(alphabet: &[&'static str], n: usize) -> Vec<Vec<&'static str>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for a in alphabet {
                let mut v: Vec<&str> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn list_of(w: &[&str]) -> Value {
    list(&w.iter().map(|a| Value::tag(a)).collect::<Vec<_>>())
}

#[test]
fn unit_and_equations() {
    assert!(check_value(&SetCode::Unit, &Value::Unit).unwrap());
    let e = SetCode::eq(SetCode::enumeration(&["a", "b"]), Value::tag("a"), Value::tag("b"));
    assert!(!check_value(&e, &Value::Refl).unwrap());
    let e = SetCode::eq(nat_set(), nat(2), nat(2));
    assert_eq!(enumerate(&e, 0).unwrap(), vec![Value::Refl]);
}

#[test]
fn zero_is_a_nat() {
    let zero = Value::inj(Value::pair(Value::tag("zero"), Value::Unit));
    assert!(check_value(&nat_set(), &zero).unwrap());
    assert!(!check_value(&nat_set(), &Value::inj(Value::pair(Value::tag("nope"), Value::Unit))).unwrap());
}

#[test]
fn payload_checks() {
    assert!(check_payload(&Desc::One, &mut |_, _| Ok(false), &Value::Unit).unwrap());
    assert!(!check_payload(&Desc::Var(Value::Unit), &mut |_, _| Ok(false), &nat(0)).unwrap());
    let d = nat_desc().at(&Value::Unit).unwrap();
    let mut is_nat = |_: &Value, v: &Value| check_value(&nat_set(), v);
    let v = Value::pair(Value::tag("suc"), nat(0));
    assert!(check_payload(&d, &mut is_nat, &v).unwrap());
}

#[test]
fn ill_formed_sets_are_reported() {
    let dup = SetCode::enumeration(&["a", "a"]);
    assert!(matches!(check_value(&dup, &Value::tag("a")), Err(KernelError::IllFormedSet(_))));
    assert!(matches!(enumerate(&dup, 0), Err(KernelError::IllFormedSet(_))));
    let bad = SetCode::eq(nat_set(), Value::tag("a"), nat(0));
    assert!(matches!(check_value(&bad, &Value::Refl), Err(KernelError::IllFormedSet(_))));
    let bad_index = SetCode::mu(&nat_desc(), nat(1));
    assert!(matches!(check_value(&bad_index, &nat(0)), Err(KernelError::IllFormedSet(_))));
}

#[test]
fn fold_examples() {
    let alg = is_suc_alg();
    let f = |n| fold(&nat_desc(), &alg, &Value::Unit, &nat(n)).unwrap();
    assert_eq!(f(0), boolean(false));
    assert_eq!(f(2), boolean(true));
    let l = list_of(&["x", "y", "x"]);
    let len = fold(&list_desc(ab()), &length_alg(), &Value::Unit, &l).unwrap();
    assert_eq!(to_nat(&len), Some(3));
}

#[test]
fn fold_rejects_ill_typed_input() {
    let r = fold(&nat_desc(), &is_suc_alg(), &Value::Unit, &Value::Unit);
    assert!(matches!(r, Err(KernelError::IllTypedValue(_))));
}

#[test]
fn fold_reports_a_carrier_violation() {
    let bad = Algebra::new("bad", konst(bool_set()), |_, _| Ok(nat(0)));
    let r = fold(&nat_desc(), &bad, &Value::Unit, &nat(1));
    assert!(matches!(r, Err(KernelError::IllFormedAlgebra(_))));
}

fn suc_of(v: &Value) -> Value {
    con("suc", v.clone())
}

#[test]
fn induction_examples() {
    // identity motive: rebuild the numeral from sub-results
    let id = |_: &Value, payload: &Value, subs: &Value| -> Result<Value> {
        match payload.fst().and_then(Value::as_tag).map(|t| t.as_str()) {
            Some("zero") => Ok(nat(0)),
            _ => Ok(suc_of(subs.snd().unwrap())),
        }
    };
    for n in 0..5 {
        assert_eq!(induction(&nat_desc(), &id, &Value::Unit, &nat(n)).unwrap(), nat(n));
    }
    // m + 3 by induction on m
    let plus3 = |_: &Value, payload: &Value, subs: &Value| -> Result<Value> {
        match payload.fst().and_then(Value::as_tag).map(|t| t.as_str()) {
            Some("zero") => Ok(nat(3)),
            _ => Ok(suc_of(subs.snd().unwrap())),
        }
    };
    assert_eq!(to_nat(&induction(&nat_desc(), &plus3, &Value::Unit, &nat(2)).unwrap()), Some(5));
    let case = |_: &Value, payload: &Value| -> Result<Value> {
        Ok(if payload.fst() == Some(&Value::tag("zero")) { Value::tag("a") } else { Value::tag("b") })
    };
    assert_eq!(case_analysis(&nat_desc(), &case, &Value::Unit, &nat(1)).unwrap(), Value::tag("b"));
}

#[test]
fn eliminate_passes_sub_results_in_order() {
    let count = eliminate(
        &list_desc(ab()),
        &mut |_, _, subs: Vec<usize>| Ok(1 + subs.iter().sum::<usize>()),
        &Value::Unit,
        &list_of(&["x", "y"]),
    )
    .unwrap();
    assert_eq!(count, 3);
}

#[test]
fn equality_examples() {
    assert!(equal_value(&nat_set(), &nat(2), &nat(2)).unwrap());
    assert!(!equal_value(&nat_set(), &nat(2), &nat(3)).unwrap());
    let p = SetCode::pi(SetCode::enumeration(&["a", "b"]), konst(bool_set()));
    let t = Value::fun(vec![(Value::tag("a"), boolean(true)), (Value::tag("b"), boolean(true))]);
    assert!(equal_value(&p, &t, &t.clone()).unwrap());
    let u = Value::fun(vec![(Value::tag("a"), boolean(true)), (Value::tag("b"), boolean(false))]);
    assert!(!equal_value(&p, &t, &u).unwrap());
}

#[test]
fn equality_is_an_equivalence_on_enumerated_values() {
    for set in [nat_set(), SetCode::mu(&list_desc(ab()), Value::Unit)] {
        let vals = enumerate(&set, 3).unwrap();
        for a in &vals {
            assert!(equal_value(&set, a, a).unwrap());
            for b in &vals {
                let ab = equal_value(&set, a, b).unwrap();
                assert_eq!(ab, equal_value(&set, b, a).unwrap());
                assert_eq!(ab, a == b);
                if ab {
                    for c in &vals {
                        if equal_value(&set, b, c).unwrap() {
                            assert!(equal_value(&set, a, c).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate(&ab(), 0).unwrap(), vec![Value::tag("x"), Value::tag("y")]);
    let nats = enumerate(&nat_set(), 3).unwrap();
    assert_eq!(nats, (0..4).map(nat).collect::<Vec<_>>());
    assert!(enumerate(&SetCode::Empty, 5).unwrap().is_empty());
}

#[test]
fn list_enumeration_matches_word_oracle() {
    let set = SetCode::mu(&list_desc(ab()), Value::Unit);
    for d in 0..=3 {
        let got = enumerate(&set, d).unwrap();
        let want: Vec<Value> = words(&["x", "y"], d).iter().map(|w| list_of(w)).collect();
        assert_eq!(got.len(), [1, 3, 7, 15][d]);
        assert_eq!(got, want, "depth {d}");
    }
}

#[test]
fn pi_tables_and_non_enumerable_domains() {
    let p = SetCode::pi(SetCode::enumeration(&["a", "b", "c"]), konst(bool_set()));
    let tables = enumerate(&p, 0).unwrap();
    assert_eq!(tables.len(), 8);
    for t in &tables {
        assert!(check_value(&p, t).unwrap());
    }
    let bad = SetCode::pi(nat_set(), konst(bool_set()));
    assert!(matches!(enumerate(&bad, 2), Err(KernelError::NonEnumerableDomain(_))));
    assert!(matches!(complete_domain(&nat_set()), Err(KernelError::NonEnumerableDomain(_))));
    let t = Value::fun(vec![(nat(0), boolean(true))]);
    assert!(matches!(check_value(&bad, &t), Err(KernelError::NonEnumerableDomain(_))));
}

#[test]
fn enumerated_values_are_canonical() {
    let sets = vec![
        nat_set(),
        bool_set(),
        SetCode::mu(&list_desc(ab()), Value::Unit),
        SetCode::product(nat_set(), ab()),
        SetCode::sigma(bool_set(), fam(|b| Ok(if to_bool(b) == Some(true) { nat_set() } else { SetCode::Unit }))),
        SetCode::pi(bool_set(), konst(ab())),
    ];
    for s in &sets {
        for v in enumerate(s, 3).unwrap() {
            assert!(check_value(s, &v).unwrap(), "{v} in {s:?}");
        }
    }
}

#[test]
fn fold_agrees_with_head_constructor() {
    for t in enumerate(&nat_set(), 4).unwrap() {
        let by_fold = fold(&nat_desc(), &is_suc_alg(), &Value::Unit, &t).unwrap();
        let by_case = t.as_in().unwrap().fst() == Some(&Value::tag("suc"));
        assert_eq!(by_fold, boolean(by_case));
    }
}

proptest! {
    #[test]
    fn hand_built_lists_are_enumerated(w in proptest::collection::vec(prop_oneof![Just("x"), Just("y")], 0..=3)) {
        let set = SetCode::mu(&list_desc(ab()), Value::Unit);
        let v = list_of(&w);
        prop_assert!(check_value(&set, &v).unwrap());
        prop_assert!(enumerate(&set, 3).unwrap().contains(&v));
        prop_assert_eq!(to_list(&v).unwrap().len(), w.len());
    }

    #[test]
    fn list_equality_is_word_equality(
        a in proptest::collection::vec(prop_oneof![Just("x"), Just("y")], 0..4),
        b in proptest::collection::vec(prop_oneof![Just("x"), Just("y")], 0..4),
    ) {
        let set = SetCode::mu(&list_desc(ab()), Value::Unit);
        prop_assert_eq!(equal_value(&set, &list_of(&a), &list_of(&b)).unwrap(), a == b);
    }

    #[test]
    fn numerals_roundtrip(n in 0usize..40) {
        prop_assert_eq!(to_nat(&nat(n)), Some(n));
        prop_assert!(check_value(&nat_set(), &nat(n)).unwrap());
    }
}
