//! Name resolution and construction of declared objects.
//!
//! Declarations never depend on command results, so every declared object is
//! built here. Names bound by `cmd ... as NAME` are known to be books whose
//! page is only known at run time.

use std::collections::HashMap;

use openbook::mcg::{compose, inverse};
use openbook::open_book::{hopf_band, make_open_book};
use openbook::{standard_curves, ArcClass, CurveClass, Letter, OpenBook, Surface, SurfaceId, TwistWord};

use crate::error::{ErrorKind, ScriptError};
use crate::syntax::*;

#[derive(Clone, Debug)]
pub enum Value {
    Surface(Surface),
    Curve(CurveClass),
    Arc(ArcClass),
    Word(TwistWord),
    Book(OpenBook),
}

impl Value {
    fn sort(&self) -> &'static str {
        match self {
            Value::Surface(_) => "surface",
            Value::Curve(_) => "curve",
            Value::Arc(_) => "arc",
            Value::Word(_) => "word",
            Value::Book(_) => "book",
        }
    }
}

/// What is statically known about a name.
#[derive(Clone, Debug)]
enum Entry {
    Declared(Value),
    /// A book produced by a command.
    Produced,
}

/// A checked script: declared objects plus the statements in order.
#[derive(Clone, Debug)]
pub struct Program {
    pub values: HashMap<String, Value>,
    pub surfaces: HashMap<SurfaceId, Surface>,
    /// Curves of each `check-relation` command, by statement index.
    pub relations: HashMap<usize, Vec<CurveClass>>,
}

struct Checker {
    names: HashMap<String, Entry>,
    surfaces: HashMap<SurfaceId, Surface>,
    last_surface: Option<Surface>,
}

fn err(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> ScriptError {
    ScriptError::new(kind, pos, message)
}

fn invalid(pos: Pos, e: openbook::Error) -> ScriptError {
    err(ErrorKind::InvalidDeclaration, pos, e.to_string())
}

fn mismatch(pos: Pos, what: &str, a: &Surface, b: &Surface) -> ScriptError {
    err(ErrorKind::SurfaceMismatch, pos, format!("{what} lives on {a}, expected {b}"))
}

/// `a<i>`, `c` or `c<j>` resolved against a canonical surface.
fn standard_name(s: &Surface, name: &str) -> Option<CurveClass> {
    let sys = standard_curves(s).ok()?;
    if name == "c" {
        return sys.boundary_parallel.first().cloned();
    }
    let (head, tail) = name.split_at(1);
    let k: usize = tail.parse().ok()?;
    if k == 0 {
        return None;
    }
    match head {
        "a" if k <= sys.chain.len() => Some(sys.chain[k - 1].clone()),
        "a" if k == sys.chain.len() + 1 => sys.extension.clone(),
        "c" => sys.boundary_parallel.get(k - 1).cloned(),
        _ => None,
    }
}

impl Checker {
    fn lookup(&self, id: &Ident) -> Result<&Entry, ScriptError> {
        self.names
            .get(&id.name)
            .ok_or_else(|| err(ErrorKind::UndefinedIdentifier, id.pos, format!("'{}' is not defined", id.name)))
    }

    fn wrong(&self, id: &Ident, wanted: &str, found: &str) -> ScriptError {
        err(ErrorKind::WrongKind, id.pos, format!("'{}' is a {found}, expected a {wanted}", id.name))
    }

    fn surface(&self, id: &Ident) -> Result<Surface, ScriptError> {
        match self.lookup(id)? {
            Entry::Declared(Value::Surface(s)) => Ok(s.clone()),
            Entry::Declared(v) => Err(self.wrong(id, "surface", v.sort())),
            Entry::Produced => Err(self.wrong(id, "surface", "book")),
        }
    }

    fn declared(&self, id: &Ident, wanted: &str) -> Result<Value, ScriptError> {
        match self.lookup(id)? {
            Entry::Declared(v) if v.sort() == wanted => Ok(v.clone()),
            Entry::Declared(v) => Err(self.wrong(id, wanted, v.sort())),
            Entry::Produced => Err(self.wrong(id, wanted, "book")),
        }
    }

    /// Page of a book when it is known before running.
    fn book(&self, id: &Ident) -> Result<Option<Surface>, ScriptError> {
        match self.lookup(id)? {
            Entry::Declared(Value::Book(b)) => Ok(Some(b.page().clone())),
            Entry::Declared(v) => Err(self.wrong(id, "book", v.sort())),
            Entry::Produced => Ok(None),
        }
    }

    fn surface_of(&self, id: SurfaceId) -> Surface {
        self.surfaces[&id].clone()
    }

    fn target(&self, on: &Option<Ident>, pos: Pos) -> Result<Surface, ScriptError> {
        match on {
            Some(s) => self.surface(s),
            None => self
                .last_surface
                .clone()
                .ok_or_else(|| err(ErrorKind::UndefinedIdentifier, pos, "no surface has been declared")),
        }
    }

    fn letters(&self, s: &Surface, edges: &[EdgeRef]) -> Result<Vec<Letter>, ScriptError> {
        edges
            .iter()
            .map(|e| {
                s.edge_by_name(&e.edge.name).map(|k| Letter::new(k, e.inverse)).ok_or_else(|| {
                    err(ErrorKind::UndefinedIdentifier, e.edge.pos, format!("{s} has no edge '{}'", e.edge.name))
                })
            })
            .collect()
    }

    fn curve(&self, expr: &CurveExpr, pos: Pos) -> Result<CurveClass, ScriptError> {
        let pick = |surface: &Ident, index: usize, chain: bool| -> Result<CurveClass, ScriptError> {
            let s = self.surface(surface)?;
            let sys = standard_curves(&s).map_err(|e| invalid(pos, e))?;
            let list = if chain { &sys.chain } else { &sys.boundary_parallel };
            let found = if chain && index == list.len() + 1 { sys.extension.clone() } else { None };
            index
                .checked_sub(1)
                .and_then(|i| list.get(i).cloned())
                .or(found)
                .ok_or_else(|| {
                    let what = if chain { "chain curve" } else { "boundary component" };
                    err(ErrorKind::UndefinedIdentifier, pos, format!("{s} has no {what} {index}"))
                })
        };
        match expr {
            CurveExpr::Chain { surface, index } => pick(surface, *index, true),
            CurveExpr::Boundary { surface, index } => pick(surface, *index, false),
            CurveExpr::Edges { edges, on } => {
                let s = self.target(on, pos)?;
                let w = self.letters(&s, edges)?;
                CurveClass::new(&s, &w).map_err(|e| invalid(pos, e))
            }
        }
    }

    fn arc(&self, expr: &ArcExpr, pos: Pos) -> Result<ArcClass, ScriptError> {
        let s = self.target(&expr.on, pos)?;
        let w = self.letters(&s, &expr.edges)?;
        let point = |(b, slot): Endpoint| -> Result<usize, ScriptError> {
            if b == 0 || slot == 0 || slot > 2 {
                return Err(err(ErrorKind::UndefinedIdentifier, pos, format!("no marked point {b}.{slot}")));
            }
            s.marked_point(b - 1, slot - 1)
                .map_err(|_| err(ErrorKind::UndefinedIdentifier, pos, format!("{s} has no marked point {b}.{slot}")))
        };
        ArcClass::new(&s, point(expr.from)?, &w, point(expr.to)?).map_err(|e| invalid(pos, e))
    }

    /// The surface a word lives on: `on S`, else `default`, else that of its
    /// first declared factor, else the last declared surface.
    fn word_surface(&self, expr: &WordExpr, default: Option<Surface>, pos: Pos) -> Result<Surface, ScriptError> {
        if let Some(s) = &expr.on {
            return self.surface(s);
        }
        if let Some(d) = default {
            return Ok(d);
        }
        for f in &expr.factors {
            let id = match f {
                Factor::Twist { curve, .. } => curve,
                Factor::Word { name, .. } => name,
            };
            match self.names.get(&id.name) {
                Some(Entry::Declared(Value::Curve(c))) => return Ok(self.surface_of(c.surface_id())),
                Some(Entry::Declared(Value::Word(w))) => return Ok(self.surface_of(w.surface_id())),
                _ => {}
            }
        }
        self.target(&None, pos)
    }

    fn word(&self, expr: &WordExpr, default: Option<Surface>, pos: Pos) -> Result<TwistWord, ScriptError> {
        let s = self.word_surface(expr, default, pos)?;
        let mut w = TwistWord::identity(&s);
        for f in &expr.factors {
            let (piece, k) = match f {
                Factor::Twist { right, curve, power } => {
                    let c = match self.names.get(&curve.name) {
                        Some(Entry::Declared(Value::Curve(c))) => {
                            if c.surface_id() != s.id() {
                                return Err(mismatch(curve.pos, &format!("curve '{}'", curve.name), &self.surface_of(c.surface_id()), &s));
                            }
                            c.clone()
                        }
                        Some(Entry::Declared(v)) => return Err(self.wrong(curve, "curve", v.sort())),
                        Some(Entry::Produced) => return Err(self.wrong(curve, "curve", "book")),
                        None => standard_name(&s, &curve.name).ok_or_else(|| {
                            err(
                                ErrorKind::UndefinedIdentifier,
                                curve.pos,
                                format!("'{}' is neither declared nor a standard curve of {s}", curve.name),
                            )
                        })?,
                    };
                    let t = TwistWord::twist(&s, &c, if *right { 1 } else { -1 }).map_err(|e| invalid(curve.pos, e))?;
                    (t, *power)
                }
                Factor::Word { name, power } => match self.declared(name, "word")? {
                    Value::Word(v) => {
                        if v.surface_id() != s.id() {
                            return Err(mismatch(name.pos, &format!("word '{}'", name.name), &self.surface_of(v.surface_id()), &s));
                        }
                        (v, *power)
                    }
                    _ => unreachable!(),
                },
            };
            let base = if k < 0 { inverse(&piece) } else { piece };
            let p = base.pow(k.unsigned_abs() as usize);
            w = compose(&w, &p).map_err(|e| invalid(pos, e))?;
        }
        Ok(w)
    }

    fn book_expr(&self, expr: &BookExpr, pos: Pos) -> Result<OpenBook, ScriptError> {
        match expr {
            BookExpr::Hopf(h) => hopf_band(*h).map_err(|e| invalid(pos, e)),
            BookExpr::Pair { surface, word } => {
                let s = self.surface(surface)?;
                let w = self.word(word, Some(s.clone()), pos)?;
                make_open_book(&s, &w).map_err(|e| invalid(pos, e))
            }
        }
    }

    fn define(&mut self, id: &Ident, entry: Entry) -> Result<(), ScriptError> {
        if self.names.contains_key(&id.name) {
            return Err(err(ErrorKind::DuplicateDefinition, id.pos, format!("'{}' is already defined", id.name)));
        }
        if let Entry::Declared(v) = &entry {
            let s = match v {
                Value::Surface(s) => Some(s.clone()),
                Value::Book(b) => Some(b.page().clone()),
                _ => None,
            };
            if let Some(s) = s {
                self.surfaces.entry(s.id()).or_insert(s);
            }
        }
        self.names.insert(id.name.clone(), entry);
        Ok(())
    }

    fn same_page(&self, id: &Ident, what: &str, on: SurfaceId, page: &Option<Surface>) -> Result<(), ScriptError> {
        if let Some(p) = page {
            if p.id() != on {
                return Err(mismatch(id.pos, what, &self.surface_of(on), p));
            }
        }
        Ok(())
    }

    fn command(&self, c: &Command) -> Result<Option<Vec<CurveClass>>, ScriptError> {
        match c {
            Command::H1(b) | Command::Connect(b) => {
                self.book(b)?;
            }
            Command::Certify { book, .. } | Command::Destabilize { book, .. } => {
                self.book(book)?;
            }
            Command::Stabilize { book, at, .. } => {
                let page = self.book(book)?;
                if let StabilizeAt::Arc(a) = at {
                    if let Value::Arc(x) = self.declared(a, "arc")? {
                        self.same_page(a, &format!("arc '{}'", a.name), x.surface_id(), &page)?;
                    }
                }
            }
            Command::Sobering { book, arc } => {
                let page = self.book(book)?;
                if let Value::Arc(x) = self.declared(arc, "arc")? {
                    self.same_page(arc, &format!("arc '{}'", arc.name), x.surface_id(), &page)?;
                }
            }
            Command::Sum { first, second, along } => {
                let p1 = self.book(first)?;
                let p2 = self.book(second)?;
                if let Some((a, b)) = along {
                    for (arc, page) in [(a, &p1), (b, &p2)] {
                        if let Value::Arc(x) = self.declared(arc, "arc")? {
                            self.same_page(arc, &format!("arc '{}'", arc.name), x.surface_id(), page)?;
                        }
                    }
                }
            }
            Command::Surgery { book, curve, .. } => {
                let page = self.book(book)?;
                if let Value::Curve(x) = self.declared(curve, "curve")? {
                    self.same_page(curve, &format!("curve '{}'", curve.name), x.surface_id(), &page)?;
                }
            }
            Command::CheckRelation { curves, on, .. } => {
                let s = self.target(on, curves[0].pos)?;
                let resolved = curves.iter().map(|c| self.relation_curve(c, &s)).collect::<Result<Vec<_>, _>>()?;
                return Ok(Some(resolved));
            }
            Command::Positify(w) => {
                self.declared(w, "word")?;
            }
            Command::Equal(a, b) => {
                let (Value::Word(x), Value::Word(y)) = (self.declared(a, "word")?, self.declared(b, "word")?) else {
                    unreachable!()
                };
                if x.surface_id() != y.surface_id() {
                    return Err(mismatch(b.pos, &format!("word '{}'", b.name), &self.surface_of(y.surface_id()), &self.surface_of(x.surface_id())));
                }
            }
        }
        Ok(None)
    }

    fn relation_curve(&self, id: &Ident, s: &Surface) -> Result<CurveClass, ScriptError> {
        match self.names.get(&id.name) {
            Some(Entry::Declared(Value::Curve(c))) => {
                if c.surface_id() != s.id() {
                    return Err(mismatch(id.pos, &format!("curve '{}'", id.name), &self.surface_of(c.surface_id()), s));
                }
                Ok(c.clone())
            }
            Some(Entry::Declared(v)) => Err(self.wrong(id, "curve", v.sort())),
            Some(Entry::Produced) => Err(self.wrong(id, "curve", "book")),
            None => standard_name(s, &id.name).ok_or_else(|| {
                err(ErrorKind::UndefinedIdentifier, id.pos, format!("'{}' is neither declared nor a standard curve of {s}", id.name))
            }),
        }
    }
}

/// Checks names, sorts and surfaces, and builds every declared object.
pub fn check(script: &Script) -> Result<Program, ScriptError> {
    let mut ck = Checker { names: HashMap::new(), surfaces: HashMap::new(), last_surface: None };
    let mut relations = HashMap::new();
    for (i, st) in script.stmts.iter().enumerate() {
        let pos = st.pos;
        match &st.kind {
            StmtKind::Surface { name, genus, boundary } => {
                let s = Surface::new(*genus, *boundary).map_err(|e| invalid(pos, e))?;
                ck.define(name, Entry::Declared(Value::Surface(s.clone())))?;
                ck.last_surface = Some(s);
            }
            StmtKind::Curve { name, expr } => {
                let c = ck.curve(expr, pos)?;
                ck.define(name, Entry::Declared(Value::Curve(c)))?;
            }
            StmtKind::Arc { name, expr } => {
                let a = ck.arc(expr, pos)?;
                ck.define(name, Entry::Declared(Value::Arc(a)))?;
            }
            StmtKind::Word { name, expr } => {
                let w = ck.word(expr, None, pos)?;
                ck.define(name, Entry::Declared(Value::Word(w)))?;
            }
            StmtKind::Book { name, expr } => {
                let b = ck.book_expr(expr, pos)?;
                ck.define(name, Entry::Declared(Value::Book(b)))?;
            }
            StmtKind::Cmd { command, bind } => {
                if let Some(curves) = ck.command(command)? {
                    relations.insert(i, curves);
                }
                if let Some(b) = bind {
                    if !command.yields_book() {
                        return Err(err(
                            ErrorKind::WrongKind,
                            b.pos,
                            format!("'{}' does not produce a book to bind", command.name()),
                        ));
                    }
                    ck.define(b, Entry::Produced)?;
                }
            }
        }
    }
    let values = ck
        .names
        .into_iter()
        .filter_map(|(k, e)| match e {
            Entry::Declared(v) => Some((k, v)),
            Entry::Produced => None,
        })
        .collect();
    Ok(Program { values, surfaces: ck.surfaces, relations })
}

/// Parses and checks a script.
pub fn parse(text: &str) -> Result<Script, ScriptError> {
    let script = parse_syntax(text)?;
    check(&script)?;
    Ok(script)
}
