//! Declarations of the surface language, read from and printed back to
//! s-expressions.

use crate::sexpr::{parse_forms, ParseError, Pos, Sexp};

#[derive(Clone, Debug, PartialEq)]
pub enum SetExpr {
    Unit,
    Empty,
    /// A parameter, or a family with index `unit`.
    Name(String),
    Enum(Vec<String>),
    Sigma(String, Box<SetExpr>, Box<SetExpr>),
    Pi(String, Box<SetExpr>, Box<SetExpr>),
    Eq(Box<SetExpr>, Expr, Expr),
    Mu(String, Expr),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elim {
    Case,
    Ind,
    Fold,
}

impl Elim {
    pub fn keyword(self) -> &'static str {
        match self {
            Elim::Case => "case",
            Elim::Ind => "ind",
            Elim::Fold => "fold",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Pat {
    Wild,
    Ctor(String, Vec<String>),
}

impl Pat {
    pub fn ctor(&self) -> Option<&str> {
        match self {
            Pat::Wild => None,
            Pat::Ctor(c, _) => Some(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    Num(usize),
    Tag(String),
    App(String, Vec<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    In(Vec<Expr>),
    Table(Vec<(Expr, Expr)>),
    Elim(Elim, String, Vec<(Pat, Expr)>),
    Call(Vec<Expr>),
    Values(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub name: String,
    pub set: SetExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Alt {
    pub ctor: String,
    pub fields: Vec<Field>,
}

/// `case _` lists alternatives; `case n` guards them by index patterns.
/// Every matching branch contributes its alternatives, in order.
#[derive(Clone, Debug, PartialEq)]
pub enum Body<A> {
    Any(Vec<Vec<A>>),
    Match(String, Vec<(Pat, Vec<A>)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Index {
    pub var: Option<String>,
    pub set: SetExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DataDecl {
    pub name: String,
    pub params: Vec<String>,
    pub index: Option<Index>,
    pub body: Body<Alt>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Insert(String, SetExpr),
    Delete(String, Expr),
    Copy(String, Option<Expr>),
}

/// A branch entry of an ornament: a prefix insertion or an alternative.
#[derive(Clone, Debug, PartialEq)]
pub enum OrnEntry {
    Insert(String, SetExpr),
    Alt {
        ctor: String,
        from: Option<String>,
        items: Vec<Item>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrnDecl {
    pub name: String,
    pub from: String,
    pub params: Vec<String>,
    pub index: Option<Index>,
    pub reindex: Option<Expr>,
    pub body: Body<OrnEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgDecl {
    pub name: String,
    pub over: String,
    pub carrier: SetExpr,
    pub index: Option<String>,
    pub branches: Vec<(Pat, Expr)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Arrow,
    Times,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeNode {
    pub kind: NodeKind,
    pub family: String,
    pub index: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrnRef {
    pub orn: String,
    pub j: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunDecl {
    pub name: String,
    pub ty: String,
    pub args: Vec<String>,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExtArg {
    Expr(Expr),
    Hole(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Script {
    Elim(Elim, String, Vec<(Pat, Script)>),
    Ctor(String, Vec<ExtArg>, Vec<Script>),
    Return(Expr),
    SelfCall(Vec<Expr>),
    Hole(String),
    Values(Vec<Script>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftDecl {
    pub name: String,
    pub funorn: String,
    pub base: String,
    pub script: Script,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Data(DataDecl),
    Ornament(OrnDecl),
    Reornament { name: String, orn: String },
    Algebra(AlgDecl),
    Algebraic { name: String, from: String, algebra: String },
    Type { name: String, nodes: Vec<TypeNode> },
    FunOrn { name: String, over: String, nodes: Vec<OrnRef> },
    Fun(FunDecl),
    Lift(LiftDecl),
    Patch { name: String, lift: String },
    RlAdjoint { name: String, algebraic: String, lift: String, index_arg: usize },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Data(d) => &d.name,
            Decl::Ornament(o) => &o.name,
            Decl::Algebra(a) => &a.name,
            Decl::Fun(f) => &f.name,
            Decl::Lift(l) => &l.name,
            Decl::Reornament { name, .. }
            | Decl::Algebraic { name, .. }
            | Decl::Type { name, .. }
            | Decl::FunOrn { name, .. }
            | Decl::Patch { name, .. }
            | Decl::RlAdjoint { name, .. } => name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Decl::Data(_) => "data",
            Decl::Ornament(_) => "ornament",
            Decl::Reornament { .. } => "reornament",
            Decl::Algebra(_) => "algebra",
            Decl::Algebraic { .. } => "algebraic",
            Decl::Type { .. } => "type",
            Decl::FunOrn { .. } => "funorn",
            Decl::Fun(_) => "fun",
            Decl::Lift(_) => "lift",
            Decl::Patch { .. } => "patch",
            Decl::RlAdjoint { .. } => "rl-adjoint",
        }
    }
}

/// A parsed `.orn` file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SourceFile {
    pub decls: Vec<Decl>,
}

pub fn parse(text: &str) -> Result<SourceFile, ParseError> {
    let decls = parse_forms(text)?
        .iter()
        .map(read_decl)
        .collect::<Result<_, _>>()?;
    Ok(SourceFile { decls })
}

/// Prints declarations one per top-level form, separated by blank lines.
pub fn print(file: &SourceFile) -> String {
    let forms: Vec<String> = file.decls.iter().map(|d| decl_sexp(d).pretty()).collect();
    let mut out = forms.join("\n\n");
    out.push('\n');
    out
}

// ---------------------------------------------------------------- reading

fn err<T>(s: &Sexp, expected: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::at(s.pos(), expected))
}

fn name(s: &Sexp) -> Result<String, ParseError> {
    match s.as_atom() {
        Some(a) if !a.starts_with('\'') && a.parse::<usize>().is_err() => Ok(a.to_string()),
        _ => err(s, "a name"),
    }
}

fn list<'a>(s: &'a Sexp, what: &str) -> Result<&'a [Sexp], ParseError> {
    s.as_list().map_or_else(|| err(s, what.to_string()), Ok)
}

/// `(KEY args...)` with the given head, returning the arguments.
fn keyed<'a>(s: &'a Sexp, key: &str) -> Result<&'a [Sexp], ParseError> {
    match s.as_list() {
        Some([head, rest @ ..]) if head.as_atom() == Some(key) => Ok(rest),
        _ => err(s, format!("`({key} ...)`")),
    }
}

fn arity<'a>(s: &'a Sexp, items: &'a [Sexp], n: usize, what: &str) -> Result<&'a [Sexp], ParseError> {
    if items.len() == n {
        Ok(items)
    } else {
        err(s, what.to_string())
    }
}

fn end_pos(items: &[Sexp], outer: &Sexp) -> Pos {
    items.last().map_or(outer.pos(), Sexp::pos)
}

fn read_decl(s: &Sexp) -> Result<Decl, ParseError> {
    let items = list(s, "a declaration")?;
    let Some(head) = items.first().and_then(Sexp::as_atom) else {
        return err(s, "a declaration keyword");
    };
    let rest = &items[1..];
    if rest.is_empty() {
        return Err(ParseError::at(end_pos(items, s), "a declaration name"));
    }
    let nm = name(&rest[0])?;
    match head {
        "data" => read_data(s, nm, &rest[1..]).map(Decl::Data),
        "ornament" => read_orn(s, nm, &rest[1..]).map(Decl::Ornament),
        "reornament" => {
            let r = arity(s, rest, 2, "`(reornament NAME ORNAMENT)`")?;
            Ok(Decl::Reornament { name: nm, orn: name(&r[1])? })
        }
        "algebra" => read_alg(s, nm, &rest[1..]).map(Decl::Algebra),
        "algebraic" => {
            let r = arity(s, rest, 3, "`(algebraic NAME (from DATA) (algebra ALG))`")?;
            let from = one_name(&r[1], "from")?;
            let algebra = one_name(&r[2], "algebra")?;
            Ok(Decl::Algebraic { name: nm, from, algebra })
        }
        "type" => {
            let nodes = rest[1..].iter().map(read_type_node).collect::<Result<_, _>>()?;
            Ok(Decl::Type { name: nm, nodes })
        }
        "funorn" => {
            if rest.len() < 2 {
                return err(s, "`(funorn NAME (over TYPE) NODE...)`");
            }
            let over = one_name(&rest[1], "over")?;
            let nodes = rest[2..].iter().map(read_orn_ref).collect::<Result<_, _>>()?;
            Ok(Decl::FunOrn { name: nm, over, nodes })
        }
        "fun" => {
            let r = arity(s, rest, 4, "`(fun NAME (type T) (args X...) BODY)`")?;
            let ty = one_name(&r[1], "type")?;
            let args = keyed(&r[2], "args")?.iter().map(name).collect::<Result<_, _>>()?;
            Ok(Decl::Fun(FunDecl { name: nm, ty, args, body: read_expr(&r[3])? }))
        }
        "lift" => {
            let r = arity(s, rest, 3, "`(lift NAME (patch FUNORN FUN) SCRIPT)`")?;
            let p = keyed(&r[1], "patch")?;
            let p = arity(&r[1], p, 2, "`(patch FUNORN FUN)`")?;
            Ok(Decl::Lift(LiftDecl {
                name: nm,
                funorn: name(&p[0])?,
                base: name(&p[1])?,
                script: read_script(&r[2])?,
            }))
        }
        "patch" => {
            let r = arity(s, rest, 2, "`(patch NAME LIFT)`")?;
            Ok(Decl::Patch { name: nm, lift: name(&r[1])? })
        }
        "rl-adjoint" => {
            let r = arity(s, rest, 4, "`(rl-adjoint NAME (algebraic A) (lift L) (index-arg K))`")?;
            let algebraic = one_name(&r[1], "algebraic")?;
            let lift = one_name(&r[2], "lift")?;
            let k = keyed(&r[3], "index-arg")?;
            let k = arity(&r[3], k, 1, "`(index-arg K)`")?;
            let index_arg = k[0].as_atom().and_then(|a| a.parse().ok());
            let Some(index_arg) = index_arg else { return err(&k[0], "an argument position") };
            Ok(Decl::RlAdjoint { name: nm, algebraic, lift, index_arg })
        }
        _ => err(&items[0], "a declaration keyword"),
    }
}

fn one_name(s: &Sexp, key: &str) -> Result<String, ParseError> {
    let r = keyed(s, key)?;
    let r = arity(s, r, 1, &format!("`({key} NAME)`"))?;
    name(&r[0])
}

fn read_params(items: &[Sexp]) -> Result<(Vec<String>, usize), ParseError> {
    let mut params = Vec::new();
    let mut k = 0;
    while let Some(s) = items.get(k) {
        if s.head() != Some("param") {
            break;
        }
        let r = arity(s, keyed(s, "param")?, 1, "`(param NAME)`")?;
        params.push(name(&r[0])?);
        k += 1;
    }
    Ok((params, k))
}

fn read_index(s: &Sexp) -> Result<Index, ParseError> {
    match keyed(s, "index")? {
        [set] => Ok(Index { var: None, set: read_set(set)? }),
        [var, set] => Ok(Index { var: Some(name(var)?), set: read_set(set)? }),
        _ => err(s, "`(index [VAR] SET)`"),
    }
}

fn read_body<A>(s: &Sexp, alt: &dyn Fn(&Sexp) -> Result<A, ParseError>) -> Result<Body<A>, ParseError> {
    let r = keyed(s, "case")?;
    let Some(scrut) = r.first() else { return err(s, "a case scrutinee") };
    let scrut = name(scrut)?;
    if scrut == "_" {
        let branches = r[1..]
            .iter()
            .map(|b| list(b, "a branch of alternatives")?.iter().map(alt).collect())
            .collect::<Result<_, _>>()?;
        return Ok(Body::Any(branches));
    }
    let mut branches = Vec::new();
    for b in &r[1..] {
        let items = list(b, "`(PATTERN ALTERNATIVE...)`")?;
        let Some(p) = items.first() else { return err(b, "a pattern") };
        let alts = items[1..].iter().map(alt).collect::<Result<_, _>>()?;
        branches.push((read_pat(p)?, alts));
    }
    Ok(Body::Match(scrut, branches))
}

fn read_data(s: &Sexp, nm: String, items: &[Sexp]) -> Result<DataDecl, ParseError> {
    let (params, mut k) = read_params(items)?;
    let mut index = None;
    if items.get(k).and_then(Sexp::head) == Some("index") {
        index = Some(read_index(&items[k])?);
        k += 1;
    }
    let r = arity(s, &items[k..], 1, "a `(case ...)` body")?;
    Ok(DataDecl { name: nm, params, index, body: read_body(&r[0], &read_alt)? })
}

fn read_alt(s: &Sexp) -> Result<Alt, ParseError> {
    let items = list(s, "`(CONSTRUCTOR FIELD...)`")?;
    let Some(c) = items.first() else { return err(s, "a constructor name") };
    let fields = items[1..]
        .iter()
        .map(|f| {
            let r = arity(f, list(f, "`(NAME SET)`")?, 2, "`(NAME SET)`")?;
            Ok(Field { name: name(&r[0])?, set: read_set(&r[1])? })
        })
        .collect::<Result<_, _>>()?;
    Ok(Alt { ctor: name(c)?, fields })
}

fn read_orn(s: &Sexp, nm: String, items: &[Sexp]) -> Result<OrnDecl, ParseError> {
    let Some(first) = items.first() else { return err(s, "`(from DATA)`") };
    let from = one_name(first, "from")?;
    let (params, k) = read_params(&items[1..])?;
    let mut k = k + 1;
    let mut index = None;
    if items.get(k).and_then(Sexp::head) == Some("index") {
        index = Some(read_index(&items[k])?);
        k += 1;
    }
    let mut reindex = None;
    if items.get(k).and_then(Sexp::head) == Some("reindex") {
        let r = arity(&items[k], keyed(&items[k], "reindex")?, 1, "`(reindex EXPR)`")?;
        reindex = Some(read_expr(&r[0])?);
        k += 1;
    }
    let r = arity(s, &items[k..], 1, "a `(case ...)` body")?;
    Ok(OrnDecl { name: nm, from, params, index, reindex, body: read_body(&r[0], &read_entry)? })
}

fn read_insert(s: &Sexp) -> Result<(String, SetExpr), ParseError> {
    let r = arity(s, keyed(s, "insert")?, 2, "`(insert NAME SET)`")?;
    Ok((name(&r[0])?, read_set(&r[1])?))
}

fn read_entry(s: &Sexp) -> Result<OrnEntry, ParseError> {
    if s.head() == Some("insert") {
        let (n, set) = read_insert(s)?;
        return Ok(OrnEntry::Insert(n, set));
    }
    let items = list(s, "`(CONSTRUCTOR [(from BASE)] ITEM...)`")?;
    let Some(c) = items.first() else { return err(s, "a constructor name") };
    let mut k = 1;
    let mut from = None;
    if items.get(1).and_then(Sexp::head) == Some("from") {
        from = Some(one_name(&items[1], "from")?);
        k = 2;
    }
    let items = items[k..].iter().map(read_item).collect::<Result<_, _>>()?;
    Ok(OrnEntry::Alt { ctor: name(c)?, from, items })
}

fn read_item(s: &Sexp) -> Result<Item, ParseError> {
    match s.head() {
        Some("insert") => {
            let (n, set) = read_insert(s)?;
            Ok(Item::Insert(n, set))
        }
        Some("delete") => {
            let r = arity(s, keyed(s, "delete")?, 2, "`(delete FIELD EXPR)`")?;
            Ok(Item::Delete(name(&r[0])?, read_expr(&r[1])?))
        }
        _ => match list(s, "`(FIELD [INDEX])`")? {
            [f] => Ok(Item::Copy(name(f)?, None)),
            [f, j] => Ok(Item::Copy(name(f)?, Some(read_expr(j)?))),
            _ => err(s, "`(FIELD [INDEX])`"),
        },
    }
}

fn read_alg(s: &Sexp, nm: String, items: &[Sexp]) -> Result<AlgDecl, ParseError> {
    if items.len() < 2 {
        return err(s, "`(algebra NAME (over DATA) (carrier SET) [(index VAR)] BRANCH...)`");
    }
    let over = one_name(&items[0], "over")?;
    let c = arity(&items[1], keyed(&items[1], "carrier")?, 1, "`(carrier SET)`")?;
    let carrier = read_set(&c[0])?;
    let mut k = 2;
    let mut index = None;
    if items.get(2).and_then(Sexp::head) == Some("index") {
        let r = arity(&items[2], keyed(&items[2], "index")?, 1, "`(index VAR)`")?;
        index = Some(name(&r[0])?);
        k = 3;
    }
    let branches = items[k..].iter().map(read_branch).collect::<Result<_, _>>()?;
    Ok(AlgDecl { name: nm, over, carrier, index, branches })
}

fn read_type_node(s: &Sexp) -> Result<TypeNode, ParseError> {
    let kind = match s.head() {
        Some("arrow") => NodeKind::Arrow,
        Some("times") => NodeKind::Times,
        _ => return err(s, "`(arrow FAMILY [INDEX])` or `(times FAMILY [INDEX])`"),
    };
    let r = &list(s, "a type node")?[1..];
    match r {
        [f] => Ok(TypeNode { kind, family: name(f)?, index: None }),
        [f, i] => Ok(TypeNode { kind, family: name(f)?, index: Some(read_expr(i)?) }),
        _ => err(s, "a family and an optional index"),
    }
}

fn read_orn_ref(s: &Sexp) -> Result<OrnRef, ParseError> {
    match s {
        Sexp::Atom(..) => Ok(OrnRef { orn: name(s)?, j: None }),
        Sexp::List(items, _) => match items.as_slice() {
            [o, j] => Ok(OrnRef { orn: name(o)?, j: Some(read_expr(j)?) }),
            _ => err(s, "`ORNAMENT` or `(ORNAMENT INDEX)`"),
        },
    }
}

pub fn read_pat(s: &Sexp) -> Result<Pat, ParseError> {
    match s {
        Sexp::Atom(a, _) if a == "_" => Ok(Pat::Wild),
        Sexp::Atom(..) => Ok(Pat::Ctor(name(s)?, Vec::new())),
        Sexp::List(items, _) => {
            let Some(c) = items.first() else { return err(s, "a constructor pattern") };
            let vars = items[1..].iter().map(name).collect::<Result<_, _>>()?;
            Ok(Pat::Ctor(name(c)?, vars))
        }
    }
}

fn read_branch(s: &Sexp) -> Result<(Pat, Expr), ParseError> {
    let r = arity(s, list(s, "`(PATTERN EXPR)`")?, 2, "`(PATTERN EXPR)`")?;
    Ok((read_pat(&r[0])?, read_expr(&r[1])?))
}

pub fn read_set(s: &Sexp) -> Result<SetExpr, ParseError> {
    match s {
        Sexp::Atom(a, _) => match a.as_str() {
            "unit" => Ok(SetExpr::Unit),
            "empty" => Ok(SetExpr::Empty),
            _ => Ok(SetExpr::Name(name(s)?)),
        },
        Sexp::List(items, _) => {
            let args = &items[1..];
            match s.head() {
                Some("enum") => Ok(SetExpr::Enum(args.iter().map(name).collect::<Result<_, _>>()?)),
                Some(k @ ("sigma" | "pi")) => {
                    let r = arity(s, args, 3, &format!("`({k} VAR SET SET)`"))?;
                    let (v, a, b) = (name(&r[0])?, read_set(&r[1])?, read_set(&r[2])?);
                    Ok(if k == "sigma" {
                        SetExpr::Sigma(v, Box::new(a), Box::new(b))
                    } else {
                        SetExpr::Pi(v, Box::new(a), Box::new(b))
                    })
                }
                Some("eq") => {
                    let r = arity(s, args, 3, "`(eq SET EXPR EXPR)`")?;
                    Ok(SetExpr::Eq(Box::new(read_set(&r[0])?), read_expr(&r[1])?, read_expr(&r[2])?))
                }
                Some("mu") => {
                    let r = arity(s, args, 2, "`(mu FAMILY INDEX)`")?;
                    Ok(SetExpr::Mu(name(&r[0])?, read_expr(&r[1])?))
                }
                _ => err(s, "a set"),
            }
        }
    }
}

pub fn read_expr(s: &Sexp) -> Result<Expr, ParseError> {
    match s {
        Sexp::Atom(a, _) => {
            if let Some(t) = a.strip_prefix('\'') {
                return Ok(Expr::Tag(t.to_string()));
            }
            if let Ok(n) = a.parse::<usize>() {
                return Ok(Expr::Num(n));
            }
            Ok(Expr::Name(name(s)?))
        }
        Sexp::List(items, _) => {
            let Some(head) = items.first() else { return err(s, "an expression") };
            let args = &items[1..];
            let exprs = || args.iter().map(read_expr).collect::<Result<Vec<_>, _>>();
            match head.as_atom() {
                Some(k @ ("case" | "ind" | "fold")) => {
                    let elim = match k {
                        "case" => Elim::Case,
                        "ind" => Elim::Ind,
                        _ => Elim::Fold,
                    };
                    let Some(v) = args.first() else { return err(s, "a scrutinee") };
                    let branches = args[1..].iter().map(read_branch).collect::<Result<_, _>>()?;
                    Ok(Expr::Elim(elim, name(v)?, branches))
                }
                Some("pair") => {
                    let r = arity(s, args, 2, "`(pair EXPR EXPR)`")?;
                    Ok(Expr::Pair(Box::new(read_expr(&r[0])?), Box::new(read_expr(&r[1])?)))
                }
                Some("in") => Ok(Expr::In(exprs()?)),
                Some("call") => Ok(Expr::Call(exprs()?)),
                Some("values") => Ok(Expr::Values(exprs()?)),
                Some("fun") => {
                    let rows = args
                        .iter()
                        .map(|r| {
                            let r2 = arity(r, list(r, "`(ARG RESULT)`")?, 2, "`(ARG RESULT)`")?;
                            Ok((read_expr(&r2[0])?, read_expr(&r2[1])?))
                        })
                        .collect::<Result<_, _>>()?;
                    Ok(Expr::Table(rows))
                }
                Some(_) => Ok(Expr::App(name(head)?, exprs()?)),
                None => err(head, "a constructor or keyword"),
            }
        }
    }
}

pub fn read_script(s: &Sexp) -> Result<Script, ParseError> {
    let items = list(s, "a lifting script")?;
    let args = &items[1..];
    match s.head() {
        Some(k @ ("lift-case" | "lift-ind" | "lift-fold")) => {
            let elim = match k {
                "lift-case" => Elim::Case,
                "lift-ind" => Elim::Ind,
                _ => Elim::Fold,
            };
            let Some(v) = args.first() else { return err(s, "a scrutinee") };
            let mut branches = Vec::new();
            for b in &args[1..] {
                let r = arity(b, list(b, "`(PATTERN SCRIPT)`")?, 2, "`(PATTERN SCRIPT)`")?;
                branches.push((read_pat(&r[0])?, read_script(&r[1])?));
            }
            Ok(Script::Elim(elim, name(v)?, branches))
        }
        Some("lift-ctor") => {
            if args.len() < 2 {
                return err(s, "`(lift-ctor CONSTRUCTOR (EXTENSION...) SCRIPT...)`");
            }
            let ext = list(&args[1], "a list of extension values")?
                .iter()
                .map(|e| {
                    if e.head() == Some("hole") {
                        let r = arity(e, &e.as_list().unwrap()[1..], 1, "`(hole LABEL)`")?;
                        Ok(ExtArg::Hole(name(&r[0])?))
                    } else {
                        Ok(ExtArg::Expr(read_expr(e)?))
                    }
                })
                .collect::<Result<_, _>>()?;
            let rec = args[2..].iter().map(read_script).collect::<Result<_, _>>()?;
            Ok(Script::Ctor(name(&args[0])?, ext, rec))
        }
        Some("return") => {
            let r = arity(s, args, 1, "`(return EXPR)`")?;
            Ok(Script::Return(read_expr(&r[0])?))
        }
        Some("self") => Ok(Script::SelfCall(args.iter().map(read_expr).collect::<Result<_, _>>()?)),
        Some("hole") => {
            let r = arity(s, args, 1, "`(hole LABEL)`")?;
            Ok(Script::Hole(name(&r[0])?))
        }
        Some("values") => Ok(Script::Values(args.iter().map(read_script).collect::<Result<_, _>>()?)),
        _ => err(s, "a lifting directive"),
    }
}

// ---------------------------------------------------------------- printing

fn a(s: &str) -> Sexp {
    Sexp::atom(s)
}

fn l(items: Vec<Sexp>) -> Sexp {
    Sexp::list(items)
}

fn keyed_sexp(key: &str, mut rest: Vec<Sexp>) -> Sexp {
    rest.insert(0, a(key));
    l(rest)
}

pub fn set_sexp(s: &SetExpr) -> Sexp {
    match s {
        SetExpr::Unit => a("unit"),
        SetExpr::Empty => a("empty"),
        SetExpr::Name(n) => a(n),
        SetExpr::Enum(tags) => keyed_sexp("enum", tags.iter().map(|t| a(t)).collect()),
        SetExpr::Sigma(v, x, y) => keyed_sexp("sigma", vec![a(v), set_sexp(x), set_sexp(y)]),
        SetExpr::Pi(v, x, y) => keyed_sexp("pi", vec![a(v), set_sexp(x), set_sexp(y)]),
        SetExpr::Eq(s, x, y) => keyed_sexp("eq", vec![set_sexp(s), expr_sexp(x), expr_sexp(y)]),
        SetExpr::Mu(f, i) => keyed_sexp("mu", vec![a(f), expr_sexp(i)]),
    }
}

pub fn pat_sexp(p: &Pat) -> Sexp {
    match p {
        Pat::Wild => a("_"),
        Pat::Ctor(c, vars) if vars.is_empty() => a(c),
        Pat::Ctor(c, vars) => keyed_sexp(c, vars.iter().map(|v| a(v)).collect()),
    }
}

pub fn expr_sexp(e: &Expr) -> Sexp {
    match e {
        Expr::Name(n) => a(n),
        Expr::Num(n) => a(&n.to_string()),
        Expr::Tag(t) => a(&format!("'{t}")),
        Expr::App(c, args) => keyed_sexp(c, args.iter().map(expr_sexp).collect()),
        Expr::Pair(x, y) => keyed_sexp("pair", vec![expr_sexp(x), expr_sexp(y)]),
        Expr::In(args) => keyed_sexp("in", args.iter().map(expr_sexp).collect()),
        Expr::Table(rows) => keyed_sexp(
            "fun",
            rows.iter().map(|(x, y)| l(vec![expr_sexp(x), expr_sexp(y)])).collect(),
        ),
        Expr::Elim(k, v, branches) => {
            let mut items = vec![a(v)];
            items.extend(branches.iter().map(|(p, b)| l(vec![pat_sexp(p), expr_sexp(b)])));
            keyed_sexp(k.keyword(), items)
        }
        Expr::Call(args) => keyed_sexp("call", args.iter().map(expr_sexp).collect()),
        Expr::Values(args) => keyed_sexp("values", args.iter().map(expr_sexp).collect()),
    }
}

fn body_sexp<A>(b: &Body<A>, alt: &dyn Fn(&A) -> Sexp) -> Sexp {
    match b {
        Body::Any(branches) => {
            let mut items = vec![a("_")];
            items.extend(branches.iter().map(|alts| l(alts.iter().map(alt).collect())));
            keyed_sexp("case", items)
        }
        Body::Match(v, branches) => {
            let mut items = vec![a(v)];
            for (p, alts) in branches {
                let mut b = vec![pat_sexp(p)];
                b.extend(alts.iter().map(alt));
                items.push(l(b));
            }
            keyed_sexp("case", items)
        }
    }
}

fn index_sexp(i: &Index) -> Sexp {
    let mut items = Vec::new();
    if let Some(v) = &i.var {
        items.push(a(v));
    }
    items.push(set_sexp(&i.set));
    keyed_sexp("index", items)
}

fn alt_sexp(alt: &Alt) -> Sexp {
    let mut items = vec![a(&alt.ctor)];
    items.extend(alt.fields.iter().map(|f| l(vec![a(&f.name), set_sexp(&f.set)])));
    l(items)
}

fn item_sexp(i: &Item) -> Sexp {
    match i {
        Item::Insert(n, s) => keyed_sexp("insert", vec![a(n), set_sexp(s)]),
        Item::Delete(f, e) => keyed_sexp("delete", vec![a(f), expr_sexp(e)]),
        Item::Copy(f, None) => l(vec![a(f)]),
        Item::Copy(f, Some(j)) => l(vec![a(f), expr_sexp(j)]),
    }
}

fn entry_sexp(e: &OrnEntry) -> Sexp {
    match e {
        OrnEntry::Insert(n, s) => keyed_sexp("insert", vec![a(n), set_sexp(s)]),
        OrnEntry::Alt { ctor, from, items } => {
            let mut out = vec![a(ctor)];
            if let Some(f) = from {
                out.push(keyed_sexp("from", vec![a(f)]));
            }
            out.extend(items.iter().map(item_sexp));
            l(out)
        }
    }
}

pub fn script_sexp(s: &Script) -> Sexp {
    match s {
        Script::Elim(k, v, branches) => {
            let mut items = vec![a(v)];
            items.extend(branches.iter().map(|(p, b)| l(vec![pat_sexp(p), script_sexp(b)])));
            keyed_sexp(&format!("lift-{}", k.keyword()), items)
        }
        Script::Ctor(c, ext, rec) => {
            let ext = ext
                .iter()
                .map(|e| match e {
                    ExtArg::Expr(e) => expr_sexp(e),
                    ExtArg::Hole(h) => keyed_sexp("hole", vec![a(h)]),
                })
                .collect();
            let mut items = vec![a(c), l(ext)];
            items.extend(rec.iter().map(script_sexp));
            keyed_sexp("lift-ctor", items)
        }
        Script::Return(e) => keyed_sexp("return", vec![expr_sexp(e)]),
        Script::SelfCall(args) => keyed_sexp("self", args.iter().map(expr_sexp).collect()),
        Script::Hole(h) => keyed_sexp("hole", vec![a(h)]),
        Script::Values(items) => keyed_sexp("values", items.iter().map(script_sexp).collect()),
    }
}

pub fn decl_sexp(d: &Decl) -> Sexp {
    let params = |ps: &[String]| ps.iter().map(|p| keyed_sexp("param", vec![a(p)])).collect::<Vec<_>>();
    match d {
        Decl::Data(dd) => {
            let mut items = vec![a(&dd.name)];
            items.extend(params(&dd.params));
            items.extend(dd.index.iter().map(index_sexp));
            items.push(body_sexp(&dd.body, &alt_sexp));
            keyed_sexp("data", items)
        }
        Decl::Ornament(o) => {
            let mut items = vec![a(&o.name), keyed_sexp("from", vec![a(&o.from)])];
            items.extend(params(&o.params));
            items.extend(o.index.iter().map(index_sexp));
            items.extend(o.reindex.iter().map(|r| keyed_sexp("reindex", vec![expr_sexp(r)])));
            items.push(body_sexp(&o.body, &entry_sexp));
            keyed_sexp("ornament", items)
        }
        Decl::Reornament { name, orn } => keyed_sexp("reornament", vec![a(name), a(orn)]),
        Decl::Algebra(al) => {
            let mut items = vec![
                a(&al.name),
                keyed_sexp("over", vec![a(&al.over)]),
                keyed_sexp("carrier", vec![set_sexp(&al.carrier)]),
            ];
            items.extend(al.index.iter().map(|v| keyed_sexp("index", vec![a(v)])));
            items.extend(al.branches.iter().map(|(p, e)| l(vec![pat_sexp(p), expr_sexp(e)])));
            keyed_sexp("algebra", items)
        }
        Decl::Algebraic { name, from, algebra } => keyed_sexp(
            "algebraic",
            vec![a(name), keyed_sexp("from", vec![a(from)]), keyed_sexp("algebra", vec![a(algebra)])],
        ),
        Decl::Type { name, nodes } => {
            let mut items = vec![a(name)];
            for n in nodes {
                let key = match n.kind {
                    NodeKind::Arrow => "arrow",
                    NodeKind::Times => "times",
                };
                let mut node = vec![a(&n.family)];
                node.extend(n.index.iter().map(expr_sexp));
                items.push(keyed_sexp(key, node));
            }
            keyed_sexp("type", items)
        }
        Decl::FunOrn { name, over, nodes } => {
            let mut items = vec![a(name), keyed_sexp("over", vec![a(over)])];
            items.extend(nodes.iter().map(|n| match &n.j {
                None => a(&n.orn),
                Some(j) => l(vec![a(&n.orn), expr_sexp(j)]),
            }));
            keyed_sexp("funorn", items)
        }
        Decl::Fun(f) => keyed_sexp(
            "fun",
            vec![
                a(&f.name),
                keyed_sexp("type", vec![a(&f.ty)]),
                keyed_sexp("args", f.args.iter().map(|x| a(x)).collect()),
                expr_sexp(&f.body),
            ],
        ),
        Decl::Lift(ld) => keyed_sexp(
            "lift",
            vec![
                a(&ld.name),
                keyed_sexp("patch", vec![a(&ld.funorn), a(&ld.base)]),
                script_sexp(&ld.script),
            ],
        ),
        Decl::Patch { name, lift } => keyed_sexp("patch", vec![a(name), a(lift)]),
        Decl::RlAdjoint { name, algebraic, lift, index_arg } => keyed_sexp(
            "rl-adjoint",
            vec![
                a(name),
                keyed_sexp("algebraic", vec![a(algebraic)]),
                keyed_sexp("lift", vec![a(lift)]),
                keyed_sexp("index-arg", vec![a(&index_arg.to_string())]),
            ],
        ),
    }
}
