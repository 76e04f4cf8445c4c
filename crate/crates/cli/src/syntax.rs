//! Line-oriented script syntax: lexer, parser, AST and printer.
//!
//! Positions are metadata. Two nodes compare equal when they differ only in
//! where they were written, so `parse(print(s)) == s` for every parsed `s`.

use std::fmt;

use crate::error::{ErrorKind, ScriptError};

#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRef {
    pub edge: Ident,
    pub inverse: bool,
}

/// `(boundary, slot)`, both 1-based as written.
pub type Endpoint = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveExpr {
    Chain { surface: Ident, index: usize },
    Boundary { surface: Ident, index: usize },
    Edges { edges: Vec<EdgeRef>, on: Option<Ident> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcExpr {
    pub edges: Vec<EdgeRef>,
    pub from: Endpoint,
    pub to: Endpoint,
    pub on: Option<Ident>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `R(c)^k` or `L(c)^k`.
    Twist { right: bool, curve: Ident, power: i64 },
    /// A previously declared word, `w^k`.
    Word { name: Ident, power: i64 },
}

/// Product of factors; the empty product is `id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordExpr {
    pub factors: Vec<Factor>,
    pub on: Option<Ident>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BookExpr {
    Pair { surface: Ident, word: WordExpr },
    Hopf(i8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Chain,
    Braid,
    Commute,
    Exchange,
}

impl RelationKind {
    pub fn keyword(self) -> &'static str {
        match self {
            RelationKind::Chain => "chain",
            RelationKind::Braid => "braid",
            RelationKind::Commute => "commute",
            RelationKind::Exchange => "exchange",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizeAt {
    /// Chord between two boundary components, 1-based.
    Boundaries(usize, usize),
    Arc(Ident),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    H1(Ident),
    Stabilize { book: Ident, sign: i8, at: StabilizeAt },
    Sum { first: Ident, second: Ident, along: Option<(Ident, Ident)> },
    Surgery { book: Ident, curve: Ident, coefficient: i8 },
    Certify { book: Ident, budget: Option<usize> },
    Sobering { book: Ident, arc: Ident },
    CheckRelation { kind: RelationKind, curves: Vec<Ident>, on: Option<Ident> },
    Positify(Ident),
    Equal(Ident, Ident),
    Connect(Ident),
    Destabilize { book: Ident, budget: Option<usize> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::H1(_) => "h1",
            Command::Stabilize { .. } => "stabilize",
            Command::Sum { .. } => "sum",
            Command::Surgery { .. } => "surgery",
            Command::Certify { .. } => "certify",
            Command::Sobering { .. } => "sobering",
            Command::CheckRelation { .. } => "check-relation",
            Command::Positify(_) => "positify",
            Command::Equal(..) => "equal",
            Command::Connect(_) => "connect",
            Command::Destabilize { .. } => "destabilize",
        }
    }

    /// Whether the command produces an open book that `as NAME` can bind.
    pub fn yields_book(&self) -> bool {
        matches!(
            self,
            Command::Stabilize { .. }
                | Command::Sum { .. }
                | Command::Surgery { .. }
                | Command::Connect(_)
                | Command::Destabilize { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Surface { name: Ident, genus: usize, boundary: usize },
    Curve { name: Ident, expr: CurveExpr },
    Arc { name: Ident, expr: ArcExpr },
    Word { name: Ident, expr: WordExpr },
    Book { name: Ident, expr: BookExpr },
    Cmd { command: Command, bind: Option<Ident> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl Script {
    pub fn declarations(&self) -> usize {
        self.stmts.iter().filter(|s| !matches!(s.kind, StmtKind::Cmd { .. })).count()
    }

    pub fn commands(&self) -> impl Iterator<Item = (&Stmt, &Command, Option<&Ident>)> {
        self.stmts.iter().filter_map(|s| match &s.kind {
            StmtKind::Cmd { command, bind } => Some((s, command, bind.as_ref())),
            _ => None,
        })
    }
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn syntax(pos: Pos, message: impl Into<String>) -> ScriptError {
    ScriptError::new(ErrorKind::Syntax, pos, message)
}

fn lex_line(line: &str, number: usize) -> Result<Vec<Token>, ScriptError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: number, column: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric()
                    || chars[i] == '_'
                    || (chars[i] == '-' && chars.get(i + 1).is_some_and(|n| n.is_ascii_alphabetic())))
            {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| syntax(pos, format!("integer {text} is too large")))?;
            out.push(Token { tok: Tok::Int(n), pos });
            continue;
        }
        if "=()[],*^.+-".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos });
            i += 1;
            continue;
        }
        return Err(syntax(pos, format!("unexpected character '{c}'")));
    }
    out.push(Token { tok: Tok::End, pos: Pos { line: number, column: chars.len() + 1 } });
    Ok(out)
}

// ---------------------------------------------------------------- parser

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of line".to_string(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ScriptError> {
        Err(syntax(self.pos(), format!("expected {wanted}, found {}", describe(self.peek()))))
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn sym(&mut self, c: char) -> Result<(), ScriptError> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("'{c}'"))
        }
    }

    fn kw(&mut self, kw: &str) -> Result<(), ScriptError> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("'{kw}'"))
        }
    }

    fn ident(&mut self) -> Result<Ident, ScriptError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Ident { name, pos })
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn int(&mut self) -> Result<usize, ScriptError> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                usize::try_from(n).map_err(|_| syntax(self.pos(), "integer out of range"))
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn sign(&mut self) -> Result<i8, ScriptError> {
        if self.is_sym('+') {
            self.bump();
            Ok(1)
        } else if self.is_sym('-') {
            self.bump();
            Ok(-1)
        } else {
            self.unexpected("'+' or '-'")
        }
    }

    fn signed(&mut self) -> Result<i64, ScriptError> {
        let s = if self.is_sym('+') || self.is_sym('-') { self.sign()? as i64 } else { 1 };
        let pos = self.pos();
        let n = self.int()?;
        let n = i64::try_from(n).map_err(|_| syntax(pos, "integer out of range"))?;
        Ok(s * n)
    }

    /// `+1` or `-1`.
    fn unit(&mut self) -> Result<i8, ScriptError> {
        let pos = self.pos();
        let s = self.sign()?;
        if self.int()? != 1 {
            return Err(syntax(pos, "expected +1 or -1"));
        }
        Ok(s)
    }

    fn end(&mut self) -> Result<(), ScriptError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.unexpected("end of line")
        }
    }

    fn on(&mut self) -> Result<Option<Ident>, ScriptError> {
        if self.is_kw("on") {
            self.bump();
            Ok(Some(self.ident()?))
        } else {
            Ok(None)
        }
    }

    fn budget(&mut self) -> Result<Option<usize>, ScriptError> {
        if self.is_kw("budget") {
            self.bump();
            Ok(Some(self.int()?))
        } else {
            Ok(None)
        }
    }

    fn edges(&mut self) -> Result<Vec<EdgeRef>, ScriptError> {
        self.sym('[')?;
        let mut out = Vec::new();
        if !self.is_sym(']') {
            loop {
                let edge = self.ident()?;
                let mut inverse = false;
                if self.is_sym('^') {
                    self.bump();
                    let pos = self.pos();
                    self.sym('-')?;
                    if self.int()? != 1 {
                        return Err(syntax(pos, "edges take only the exponent -1"));
                    }
                    inverse = true;
                }
                out.push(EdgeRef { edge, inverse });
                if self.is_sym(',') {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.sym(']')?;
        Ok(out)
    }

    fn endpoint(&mut self) -> Result<Endpoint, ScriptError> {
        let b = self.int()?;
        self.sym('.')?;
        let s = self.int()?;
        Ok((b, s))
    }

    fn curve_expr(&mut self) -> Result<CurveExpr, ScriptError> {
        if self.is_kw("chain") || self.is_kw("boundary") {
            let chain = self.is_kw("chain");
            self.bump();
            self.sym('(')?;
            let surface = self.ident()?;
            self.sym(',')?;
            let index = self.int()?;
            self.sym(')')?;
            return Ok(if chain { CurveExpr::Chain { surface, index } } else { CurveExpr::Boundary { surface, index } });
        }
        let edges = self.edges()?;
        Ok(CurveExpr::Edges { edges, on: self.on()? })
    }

    fn arc_expr(&mut self) -> Result<ArcExpr, ScriptError> {
        let edges = self.edges()?;
        let (mut from, mut to) = ((1, 1), (1, 2));
        if self.is_kw("from") {
            self.bump();
            from = self.endpoint()?;
            self.kw("to")?;
            to = self.endpoint()?;
        }
        Ok(ArcExpr { edges, from, to, on: self.on()? })
    }

    fn power(&mut self) -> Result<i64, ScriptError> {
        if self.is_sym('^') {
            self.bump();
            self.signed()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Factor, ScriptError> {
        let head = self.ident()?;
        if (head.name == "R" || head.name == "L") && self.is_sym('(') {
            self.bump();
            let curve = self.ident()?;
            self.sym(')')?;
            let power = self.power()?;
            return Ok(Factor::Twist { right: head.name == "R", curve, power });
        }
        Ok(Factor::Word { name: head, power: self.power()? })
    }

    fn word_body(&mut self) -> Result<Vec<Factor>, ScriptError> {
        if self.is_kw("id") {
            self.bump();
            return Ok(Vec::new());
        }
        let mut out = vec![self.factor()?];
        while self.is_sym('*') {
            self.bump();
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn book_expr(&mut self) -> Result<BookExpr, ScriptError> {
        if self.is_kw("hopf") {
            self.bump();
            self.sym('(')?;
            let s = self.unit()?;
            self.sym(')')?;
            return Ok(BookExpr::Hopf(s));
        }
        self.sym('(')?;
        let surface = self.ident()?;
        self.sym(',')?;
        let factors = self.word_body()?;
        self.sym(')')?;
        Ok(BookExpr::Pair { surface, word: WordExpr { factors, on: None } })
    }

    fn command(&mut self) -> Result<Command, ScriptError> {
        let pos = self.pos();
        let name = self.ident()?;
        Ok(match name.name.as_str() {
            "h1" => Command::H1(self.ident()?),
            "stabilize" => {
                let book = self.ident()?;
                let sign = self.sign()?;
                let at = if self.is_kw("at") {
                    self.bump();
                    self.sym('(')?;
                    let i = self.int()?;
                    self.sym(',')?;
                    let j = self.int()?;
                    self.sym(')')?;
                    StabilizeAt::Boundaries(i, j)
                } else {
                    self.kw("along")?;
                    StabilizeAt::Arc(self.ident()?)
                };
                Command::Stabilize { book, sign, at }
            }
            "sum" => {
                let first = self.ident()?;
                let second = self.ident()?;
                let along = if self.is_kw("along") {
                    self.bump();
                    Some((self.ident()?, self.ident()?))
                } else {
                    None
                };
                Command::Sum { first, second, along }
            }
            "surgery" => {
                let book = self.ident()?;
                self.kw("on")?;
                let curve = self.ident()?;
                self.kw("coeff")?;
                Command::Surgery { book, curve, coefficient: self.unit()? }
            }
            "certify" => Command::Certify { book: self.ident()?, budget: self.budget()? },
            "sobering" => {
                let book = self.ident()?;
                self.kw("along")?;
                Command::Sobering { book, arc: self.ident()? }
            }
            "check-relation" => {
                let k = self.ident()?;
                let kind = match k.name.as_str() {
                    "chain" => RelationKind::Chain,
                    "braid" => RelationKind::Braid,
                    "commute" => RelationKind::Commute,
                    "exchange" => RelationKind::Exchange,
                    _ => return Err(syntax(k.pos, format!("unknown relation '{}'", k.name))),
                };
                self.sym('[')?;
                let mut curves = vec![self.ident()?];
                while self.is_sym(',') {
                    self.bump();
                    curves.push(self.ident()?);
                }
                self.sym(']')?;
                Command::CheckRelation { kind, curves, on: self.on()? }
            }
            "positify" => Command::Positify(self.ident()?),
            "equal" => {
                let a = self.ident()?;
                Command::Equal(a, self.ident()?)
            }
            "connect" => Command::Connect(self.ident()?),
            "destabilize" => Command::Destabilize { book: self.ident()?, budget: self.budget()? },
            other => return Err(syntax(pos, format!("unknown command '{other}'"))),
        })
    }

    fn stmt(&mut self) -> Result<Stmt, ScriptError> {
        let pos = self.pos();
        let head = self.ident()?;
        let kind = match head.name.as_str() {
            "cmd" => {
                let command = self.command()?;
                let bind = if self.is_kw("as") {
                    self.bump();
                    Some(self.ident()?)
                } else {
                    None
                };
                StmtKind::Cmd { command, bind }
            }
            kw @ ("surface" | "curve" | "arc" | "word" | "book") => {
                let name = self.ident()?;
                self.sym('=')?;
                match kw {
                    "surface" => {
                        self.sym('(')?;
                        let genus = self.int()?;
                        self.sym(',')?;
                        let boundary = self.int()?;
                        self.sym(')')?;
                        StmtKind::Surface { name, genus, boundary }
                    }
                    "curve" => StmtKind::Curve { name, expr: self.curve_expr()? },
                    "arc" => StmtKind::Arc { name, expr: self.arc_expr()? },
                    "word" => {
                        let factors = self.word_body()?;
                        StmtKind::Word { name, expr: WordExpr { factors, on: self.on()? } }
                    }
                    _ => StmtKind::Book { name, expr: self.book_expr()? },
                }
            }
            other => return Err(syntax(pos, format!("unknown statement '{other}'"))),
        };
        self.end()?;
        Ok(Stmt { kind, pos })
    }
}

/// Syntax only; names are resolved by [`crate::program::check`].
pub fn parse_syntax(text: &str) -> Result<Script, ScriptError> {
    let mut stmts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = lex_line(line, i + 1)?;
        if toks.len() == 1 {
            continue;
        }
        stmts.push(Parser { toks, at: 0 }.stmt()?);
    }
    Ok(Script { stmts })
}

// ---------------------------------------------------------------- printer

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, if self.inverse { "^-1" } else { "" })
    }
}

fn on(f: &mut fmt::Formatter<'_>, on: &Option<Ident>) -> fmt::Result {
    match on {
        Some(s) => write!(f, " on {s}"),
        None => Ok(()),
    }
}

fn power(f: &mut fmt::Formatter<'_>, k: i64) -> fmt::Result {
    if k == 1 {
        Ok(())
    } else {
        write!(f, "^{k}")
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Twist { right, curve, power: k } => {
                write!(f, "{}({curve})", if *right { "R" } else { "L" })?;
                power(f, *k)
            }
            Factor::Word { name, power: k } => {
                write!(f, "{name}")?;
                power(f, *k)
            }
        }
    }
}

fn word_body(f: &mut fmt::Formatter<'_>, factors: &[Factor]) -> fmt::Result {
    if factors.is_empty() {
        f.write_str("id")
    } else {
        f.write_str(&join(factors, "*"))
    }
}

fn sign(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match self {
            Command::H1(b) | Command::Positify(b) | Command::Connect(b) => write!(f, " {b}"),
            Command::Stabilize { book, sign: s, at } => {
                write!(f, " {book} {}", sign(*s))?;
                match at {
                    StabilizeAt::Boundaries(i, j) => write!(f, " at({i}, {j})"),
                    StabilizeAt::Arc(a) => write!(f, " along {a}"),
                }
            }
            Command::Sum { first, second, along } => {
                write!(f, " {first} {second}")?;
                match along {
                    Some((a, b)) => write!(f, " along {a} {b}"),
                    None => Ok(()),
                }
            }
            Command::Surgery { book, curve, coefficient } => {
                write!(f, " {book} on {curve} coeff {}1", sign(*coefficient))
            }
            Command::Certify { book, budget } | Command::Destabilize { book, budget } => {
                write!(f, " {book}")?;
                match budget {
                    Some(b) => write!(f, " budget {b}"),
                    None => Ok(()),
                }
            }
            Command::Sobering { book, arc } => write!(f, " {book} along {arc}"),
            Command::CheckRelation { kind, curves, on: o } => {
                write!(f, " {} [{}]", kind.keyword(), join(curves, ", "))?;
                on(f, o)
            }
            Command::Equal(a, b) => write!(f, " {a} {b}"),
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Surface { name, genus, boundary } => write!(f, "surface {name} = ({genus}, {boundary})"),
            StmtKind::Curve { name, expr } => {
                write!(f, "curve {name} = ")?;
                match expr {
                    CurveExpr::Chain { surface, index } => write!(f, "chain({surface}, {index})"),
                    CurveExpr::Boundary { surface, index } => write!(f, "boundary({surface}, {index})"),
                    CurveExpr::Edges { edges, on: o } => {
                        write!(f, "[{}]", join(edges, ", "))?;
                        on(f, o)
                    }
                }
            }
            StmtKind::Arc { name, expr } => {
                write!(
                    f,
                    "arc {name} = [{}] from {}.{} to {}.{}",
                    join(&expr.edges, ", "),
                    expr.from.0,
                    expr.from.1,
                    expr.to.0,
                    expr.to.1
                )?;
                on(f, &expr.on)
            }
            StmtKind::Word { name, expr } => {
                write!(f, "word {name} = ")?;
                word_body(f, &expr.factors)?;
                on(f, &expr.on)
            }
            StmtKind::Book { name, expr } => match expr {
                BookExpr::Pair { surface, word } => {
                    write!(f, "book {name} = ({surface}, ")?;
                    word_body(f, &word.factors)?;
                    write!(f, ")")
                }
                BookExpr::Hopf(s) => write!(f, "book {name} = hopf({}1)", sign(*s)),
            },
            StmtKind::Cmd { command, bind } => {
                write!(f, "cmd {command}")?;
                match bind {
                    Some(b) => write!(f, " as {b}"),
                    None => Ok(()),
                }
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let e = parse_syntax("surface S = (1, 1)\nword w = R(a1) ** R(a2)").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Syntax);
        assert_eq!((e.pos.line, e.pos.column), (2, 17));
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_syntax("# header\n\nsurface S = (1,1) # trailing\n").unwrap();
        assert_eq!(s.stmts.len(), 1);
        assert_eq!(s.stmts[0].pos.line, 3);
    }

    #[test]
    fn hyphenated_keyword() {
        let s = parse_syntax("cmd check-relation braid [a1, a2]").unwrap();
        assert!(matches!(s.stmts[0].kind, StmtKind::Cmd { command: Command::CheckRelation { .. }, .. }));
    }

    #[test]
    fn powers_and_inverses() {
        let s = parse_syntax("word w = R(a1)^-2*L(c)^3*v\ncurve x = [x1, y1^-1] on S").unwrap();
        assert_eq!(s.to_string(), "word w = R(a1)^-2*L(c)^3*v\ncurve x = [x1, y1^-1] on S\n");
        assert!(parse_syntax("curve x = [x1^2]").is_err());
    }
}
