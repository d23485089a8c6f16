use std::process::Command;

fn ornate(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ornate")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn derive_lists_vectors() {
    let (code, out, _) = ornate(&["derive", "Vector", "--index", "(pair unit 2)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("(mu Vector (pair unit 2)) : "), "{out}");
    assert!(out.contains("4 inhabitants at depth 3"));
    assert!(out.contains("  (cons y (cons x nil))"));
}

#[test]
fn derive_needs_an_index_for_indexed_families() {
    let (code, _, err) = ornate(&["derive", "Vector"]);
    assert_eq!(code, 3);
    assert!(err.contains("--index"));
}

#[test]
fn coherence_of_lookup_holds() {
    let (code, out, _) = ornate(&["verify", "coherence", "typeLookup", "lessThan", "lookup", "--depth", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ok, 155 cases"));
}

#[test]
fn draft_lift_reports_one_hole() {
    let (code, out, _) = ornate(&["lift", "ihead"]);
    assert_eq!(code, 0);
    assert_eq!(out, "ihead: 1 open hole\nHOLE ihead/suc/just/h : A\n");
}

#[test]
fn eval_runs_derived_functions() {
    assert_eq!(ornate(&["eval", "(lookup 1 (cons x (cons y nil)))"]).1, "(just y)\n");
    assert_eq!(ornate(&["eval", "(append (cons x nil) (cons y nil))"]).1, "(cons x (cons y nil))\n");
    assert_eq!(ornate(&["eval", "(head nil)"]).1, "nothing\n");
    assert_eq!(ornate(&["eval", "(plus 2 3)"]).1, "5\n");
    assert_eq!(ornate(&["eval", "(vlookup 2 true 1 (cons x (cons y nil)))"]).1, "(just y)\n");
}

#[test]
fn eval_rejects_values_off_their_index() {
    let (code, _, err) = ornate(&["eval", "(vlookup 2 true 1 (cons x nil))"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = ornate(&["eval", "(vlookup 2 true 2 (cons x (cons y nil)))"]);
    assert_eq!(code, 2);
}

#[test]
fn corrupted_patch_is_caught() {
    let f = fixture("corrupt_vappend.orn");
    let (code, out, _) = ornate(&["-f", &f, "verify", "patch", "vappend-bad", "--depth", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAILED"));
    assert!(out.contains("counterexample: inputs:"));
    let (code, _, _) = ornate(&["-f", &f, "verify", "coherence", "type++", "plus", "append-bad"]);
    assert_eq!(code, 1);
}

#[test]
fn json_reports_one_object_per_tuple() {
    let (code, out, _) = ornate(&["verify", "coherence", "typeHead", "isSuc", "head", "--json"]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 15);
    for l in &lines {
        assert_eq!(l["pass"], true);
        assert!(l["inputs"].is_array());
        assert!(l.get("expected").is_some() && l.get("actual").is_some());
    }
}

#[test]
fn params_change_the_instantiation() {
    let (code, out, _) = ornate(&["derive", "Vector", "--index", "(pair unit 2)", "--param", "A=tags:a,b,c", "--quiet"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
    let (_, out, _) = ornate(&["derive", "Vector", "--index", "(pair unit 2)", "--param", "A=tags:a,b,c"]);
    assert!(out.contains("9 inhabitants"));
    let (code, _, _) = ornate(&["check", "--param", "A=oops"]);
    assert_eq!(code, 3);
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(ornate(&["frobnicate"]).0, 3);
    assert_eq!(ornate(&["eval", "(lookup 1"]).0, 2);
    assert_eq!(ornate(&["eval", "(nosuch 1)"]).0, 3);
    assert_eq!(ornate(&["check", &fixture("does-not-exist.orn")]).0, 3);
    assert_eq!(ornate(&["check", &fixture("bad_ornament.orn")]).0, 2);
    assert_eq!(ornate(&["check", &fixture("corrupt_vappend.orn")]).0, 0);
    assert_eq!(ornate(&["--help"]).0, 0);
}

#[test]
fn verify_sweeps_pass_on_the_prelude() {
    for kind in ["roundtrip", "recomputation", "patch"] {
        let (code, out, _) = ornate(&["verify", kind]);
        assert_eq!(code, 0, "{kind}: {out}");
    }
}

#[test]
fn reports_are_deterministic() {
    let a = ornate(&["verify", "patch", "--json"]);
    let b = ornate(&["verify", "patch", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn enumerate_and_forget() {
    let (code, out, _) = ornate(&["enumerate", "(mu Fin' 3)", "--quiet"]);
    assert_eq!(code, 0);
    assert_eq!(out, "fzero\n(fsuc fzero)\n(fsuc (fsuc fzero))\n");
    assert_eq!(ornate(&["forget", "ListOrn", "(cons x (cons y nil))"]).1, "2\n");
    assert_eq!(ornate(&["forget", "Fin'", "(fsuc fzero)", "--index", "3"]).1, "(fsuc 2 (fzero 1))\n");
}
