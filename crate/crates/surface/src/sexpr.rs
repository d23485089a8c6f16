//! S-expression reader and the two-space pretty printer.

use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Positions are ignored by equality so reprinted forms compare equal.
#[derive(Clone, Debug)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl PartialEq for Sexp {
    fn eq(&self, other: &Sexp) -> bool {
        match (self, other) {
            (Sexp::Atom(a, _), Sexp::Atom(b, _)) => a == b,
            (Sexp::List(a, _), Sexp::List(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Sexp {
    pub fn atom(s: &str) -> Sexp {
        Sexp::Atom(s.to_string(), Pos::default())
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List(items, Pos::default())
    }

    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// The head atom of a list form.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }

    fn flat(&self) -> String {
        match self {
            Sexp::Atom(s, _) => s.clone(),
            Sexp::List(items, _) => {
                let inner: Vec<String> = items.iter().map(Sexp::flat).collect();
                format!("({})", inner.join(" "))
            }
        }
    }

    /// Multi-line layout: a form that fits in the width stays on one line,
    /// otherwise its head stays with the first argument and the rest are
    /// indented by two spaces.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.layout(0, &mut out);
        out
    }

    fn layout(&self, indent: usize, out: &mut String) {
        let flat = self.flat();
        let items = match self {
            Sexp::List(items, _) if indent + flat.len() > WIDTH && items.len() > 2 => items,
            _ => {
                out.push_str(&flat);
                return;
            }
        };
        out.push('(');
        out.push_str(&items[0].flat());
        out.push(' ');
        items[1].layout(indent + 2 + items[0].flat().len(), out);
        for item in &items[2..] {
            out.push('\n');
            out.push_str(&" ".repeat(indent + 2));
            item.layout(indent + 2, out);
        }
        out.push(')');
    }
}

const WIDTH: usize = 78;

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.flat())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

impl ParseError {
    pub fn at(pos: Pos, expected: impl Into<String>) -> ParseError {
        ParseError {
            line: pos.line,
            col: pos.col,
            expected: expected.into(),
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn form(&mut self) -> Result<Sexp, ParseError> {
        let start = self.pos;
        match self.chars.peek() {
            None => Err(ParseError::at(start, "a form")),
            Some(')') => Err(ParseError::at(start, "a form, not `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        None => return Err(ParseError::at(self.pos, "`)`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, start));
                        }
                        Some(_) => items.push(self.form()?),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                if s == "'" {
                    return Err(ParseError::at(start, "a tag name after `'`"));
                }
                Ok(Sexp::Atom(s, start))
            }
        }
    }
}

/// Reads every top-level form of `text`.
pub fn parse_forms(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader {
        chars: text.chars().peekable(),
        pos: Pos { line: 1, col: 1 },
    };
    let mut out = Vec::new();
    loop {
        r.skip_blank();
        if r.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(r.form()?);
    }
}

/// Reads exactly one form.
pub fn parse_one(text: &str) -> Result<Sexp, ParseError> {
    let mut forms = parse_forms(text)?;
    match forms.len() {
        1 => Ok(forms.remove(0)),
        0 => Err(ParseError { line: 1, col: 1, expected: "a form".into() }),
        _ => {
            let p = forms[1].pos();
            Err(ParseError::at(p, "end of input after one form"))
        }
    }
}
