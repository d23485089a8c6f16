use ornate_surface::ast::{expr_sexp, read_expr, Decl, Elim, Expr, Pat};
use ornate_surface::sexpr::parse_one;
use ornate_surface::{parse, print_source, PRELUDE};
use proptest::prelude::*;

#[test]
fn nat_declaration_parses() {
    let f = parse("(data Nat (index unit) (case _ ((zero)) ((suc (n (mu Nat unit))))))").unwrap();
    assert_eq!(f.decls.len(), 1);
    let Decl::Data(d) = &f.decls[0] else { panic!("not a data declaration") };
    assert_eq!(d.name, "Nat");
}

#[test]
fn unbalanced_input_fails_at_end() {
    let e = parse("(data").unwrap_err();
    assert_eq!((e.line, e.col), (1, 6));
    let e = parse("\n(data Nat\n  (case _ ((zero))").unwrap_err();
    assert_eq!(e.line, 3);
}

#[test]
fn comment_only_file_is_empty() {
    assert!(parse("; comment").unwrap().decls.is_empty());
    assert!(parse("").unwrap().decls.is_empty());
}

#[test]
fn bad_forms_report_positions() {
    let e = parse("(data Nat)").unwrap_err();
    assert_eq!(e.line, 1);
    let e = parse("(frobnicate X)").unwrap_err();
    assert!(e.expected.contains("declaration"), "{e}");
    assert!(parse("(data 3 (case _))").is_err());
}

#[test]
fn prelude_roundtrips_through_the_printer() {
    let first = parse(PRELUDE).unwrap();
    let printed = print_source(&first);
    let second = parse(&printed).unwrap();
    assert_eq!(first, second);
    assert_eq!(print_source(&second), printed);
}

#[test]
fn printed_prelude_elaborates() {
    let printed = print_source(&parse(PRELUDE).unwrap());
    let env = ornate_surface::load(&printed, &ornate_surface::Env::new()).unwrap();
    assert!(env.patched("lookup").is_some());
}

#[test]
fn printer_layout_is_deterministic() {
    let printed = print_source(&parse(PRELUDE).unwrap());
    assert!(printed.ends_with('\n'));
    assert!(printed.contains("\n\n(data Bool"));
    for line in printed.lines() {
        let indent = line.len() - line.trim_start().len();
        assert_eq!(indent % 2, 0, "{line}");
    }
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "n", "m", "cons", "suc", "f++"]).prop_map(str::to_string)
}

fn pat() -> impl Strategy<Value = Pat> {
    prop_oneof![
        Just(Pat::Wild),
        (name(), prop::collection::vec(name(), 0..3)).prop_map(|(c, vs)| Pat::Ctor(c, vs)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        name().prop_map(Expr::Name),
        (0usize..20).prop_map(Expr::Num),
        name().prop_map(Expr::Tag),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (name(), prop::collection::vec(inner.clone(), 1..3)).prop_map(|(c, a)| Expr::App(c, a)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Pair(Box::new(a), Box::new(b))),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Expr::In),
            prop::collection::vec((inner.clone(), inner.clone()), 0..3).prop_map(Expr::Table),
            (
                prop::sample::select(vec![Elim::Case, Elim::Ind, Elim::Fold]),
                name(),
                prop::collection::vec((pat(), inner.clone()), 1..3)
            )
                .prop_map(|(k, v, bs)| Expr::Elim(k, v, bs)),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Expr::Call),
            prop::collection::vec(inner, 1..3).prop_map(Expr::Values),
        ]
    })
}

proptest! {
    #[test]
    fn expressions_roundtrip(e in expr()) {
        let text = expr_sexp(&e).to_string();
        let back = read_expr(&parse_one(&text).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }
}
