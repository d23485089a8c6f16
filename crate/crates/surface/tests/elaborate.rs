use std::collections::BTreeSet;

use ornate_core::library::{list_desc, nat};
use ornate_core::ornament::interp_orn;
use ornate_core::{enumerate, SetCode, Value};
use ornate_surface::{load, prelude, prelude_with, show_value, Env};

fn a2() -> SetCode {
    SetCode::enumeration(&["x", "y"])
}

fn shown(vs: &[Value]) -> BTreeSet<String> {
    vs.iter().map(Value::to_string).collect()
}

#[test]
fn list_ornament_matches_the_hand_coded_list() {
    let env = prelude().unwrap();
    let orn = env.ornament("ListOrn").unwrap();
    let ours = SetCode::mu(&interp_orn(&orn), Value::Unit);
    let theirs = SetCode::mu(&list_desc(a2()), Value::Unit);
    for (depth, count) in [(0, 1), (1, 3), (2, 7), (3, 15)] {
        let a = enumerate(&ours, depth).unwrap();
        let b = enumerate(&theirs, depth).unwrap();
        assert_eq!(a.len(), count);
        assert_eq!(shown(&a), shown(&b));
    }
}

fn walks(n: usize, depth: usize) -> usize {
    let stop = usize::from(n == 0);
    if depth == 0 {
        return stop;
    }
    let down = if n > 0 { walks(n - 1, depth - 1) } else { 0 };
    stop + walks(n + 1, depth - 1) + down
}

#[test]
fn walk_elaborates_with_computed_alternatives() {
    let env = prelude().unwrap();
    let walk = env.data("Walk").unwrap();
    let zero: Vec<_> = walk.alternatives(&nat(0)).unwrap().items.iter().map(|a| a.ctor.clone()).collect();
    let two: Vec<_> = walk.alternatives(&nat(2)).unwrap().items.iter().map(|a| a.ctor.clone()).collect();
    assert_eq!(zero, ["up", "stop"]);
    assert_eq!(two, ["up", "down"]);
    for n in 0..3 {
        for depth in 0..5 {
            let vs = enumerate(&SetCode::mu(&walk.desc, nat(n)), depth).unwrap();
            assert_eq!(vs.len(), walks(n, depth), "n={n} depth={depth}");
        }
    }
}

#[test]
fn fin_prime_has_n_inhabitants() {
    let env = prelude().unwrap();
    let fin = env.family("Fin'").unwrap();
    for n in 0..=4 {
        let vs = enumerate(&SetCode::mu(&fin, nat(n)), n + 1).unwrap();
        assert_eq!(vs.len(), n);
    }
}

#[test]
fn constraint_fin_agrees_with_fin_prime() {
    let env = prelude().unwrap();
    let fin = env.family("Fin").unwrap();
    let fin2 = env.family("Fin'").unwrap();
    for n in 0..=3 {
        let a = enumerate(&SetCode::mu(&fin, nat(n)), n + 2).unwrap();
        let b = enumerate(&SetCode::mu(&fin2, nat(n)), n + 2).unwrap();
        assert_eq!(a.len(), b.len());
    }
}

fn pow(base: usize, n: usize) -> usize {
    (0..n).fold(1, |acc, _| acc * base)
}

#[test]
fn vector_styles_agree() {
    for size in 0..=2 {
        let tags: Vec<String> = (0..size).map(|k| format!("t{k}")).collect();
        let env = prelude_with(vec![("A".into(), SetCode::enumeration(&tags))]).unwrap();
        let eq = env.family("VectorEq").unwrap();
        let ix = env.family("VectorIx").unwrap();
        let vector = env.family("Vector").unwrap();
        for n in 0..=3 {
            let depth = n + 2;
            let a = enumerate(&SetCode::mu(&eq, nat(n)), depth).unwrap();
            let b = enumerate(&SetCode::mu(&ix, nat(n)), depth).unwrap();
            let c = enumerate(&SetCode::mu(&vector, Value::pair(Value::Unit, nat(n))), depth).unwrap();
            assert_eq!(a.len(), pow(size, n), "|A|={size} n={n}");
            assert_eq!(b.len(), a.len());
            assert_eq!(c.len(), a.len());
        }
    }
}

#[test]
fn vector_values_print_as_lists() {
    let env = prelude().unwrap();
    let vector = env.family("Vector").unwrap();
    let s = SetCode::mu(&vector, Value::pair(Value::Unit, nat(1)));
    let printed: Vec<String> = enumerate(&s, 3).unwrap().iter().map(|v| show_value(&env, &s, v)).collect();
    assert_eq!(printed, ["(cons x nil)", "(cons y nil)"]);
}

#[test]
fn duplicate_names_are_rejected() {
    let env = prelude().unwrap();
    let e = load("(data Nat (case _ ((z))))", &env).unwrap_err();
    assert!(e.to_string().contains("Nat"), "{e}");
}

#[test]
fn ill_formed_ornaments_are_rejected() {
    let env = prelude().unwrap();
    let cases = [
        "(ornament Bad (from Nat) (case _ ((zero) (suc))))",
        "(ornament Bad (from Nat) (case _ ((zero) (suc (insert a A)))))",
        "(ornament Bad (from Nat) (case _ ((zero) (zero))))",
        "(ornament Bad (from Nat) (case _ ((zero) (suc (m)))))",
        "(ornament Bad (from Nat) (case _ ((zero) (suc (n) (insert a A)))))",
        "(ornament Bad (from Fin) (index n Nat) (case _ ((fzero (delete m 0) (delete q refl)))))",
    ];
    for c in cases {
        let e = load(c, &env).unwrap_err();
        assert!(e.to_string().contains("Bad"), "{c}: {e}");
    }
}

#[test]
fn unknown_references_are_rejected() {
    let env = Env::new();
    assert!(load("(data L (case _ ((c (x Missing)))))", &env).is_err());
    assert!(load("(reornament R NoSuchOrn)", &env).is_err());
    assert!(load("(data N (case _ ((z)) ((s (n N)) (t (x unit))))))", &env).is_err());
}
