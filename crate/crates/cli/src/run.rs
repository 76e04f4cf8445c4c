//! Command execution and reports.

use std::collections::{BTreeMap, HashMap};

use openbook::certificates::{
    check_sobering, detect_negative_stabilization, fillability_report, Check, OvertwistedCertificate,
    SteinCertificate,
};
use openbook::mcg::{equal, positify, verify_relation, Relation, Twist};
use openbook::open_book::{
    attaching_arc, connect_binding, first_homology, murasugi_sum, page_surgery, stabilize,
};
use openbook::{ArcClass, OpenBook, Surface, TwistWord};
use serde_json::{json, Value as Json};

use crate::error::ScriptError;
use crate::program::{check, Program, Value};
use crate::syntax::*;

pub const DEFAULT_BUDGET: usize = 4;

#[derive(Clone, Debug)]
pub struct Options {
    /// Used by `certify` and `destabilize` when the command gives none.
    pub budget: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options { budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Json,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub line: usize,
    pub command: String,
    pub outcome: Result<Outcome, String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<Entry>,
    /// Books bound by `cmd ... as NAME`.
    pub books: BTreeMap<String, OpenBook>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.outcome.is_err())
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.outcome {
                Ok(o) => out.push_str(&o.text),
                Err(m) => out.push_str(&format!("error: line {}: {}: {m}", e.line, e.command)),
            }
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> Json {
        let results: Vec<Json> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({ "line": e.line, "command": e.command });
                match &e.outcome {
                    Ok(o) => {
                        v["ok"] = json!(true);
                        if let Json::Object(m) = &o.json {
                            for (k, x) in m {
                                v[k] = x.clone();
                            }
                        }
                    }
                    Err(m) => {
                        v["ok"] = json!(false);
                        v["error"] = json!(m);
                    }
                }
                v
            })
            .collect();
        json!({ "schema": 1, "results": results })
    }
}

// ---------------------------------------------------------------- formatting

fn point(m: usize) -> String {
    format!("{}.{}", m / 2 + 1, m % 2 + 1)
}

fn letters_json(s: &Surface, w: &[openbook::Letter]) -> Json {
    json!(w.iter().map(|l| s.format_letter(*l)).collect::<Vec<_>>())
}

fn twist_text(s: &Surface, t: &Twist) -> String {
    format!("{}{}", if t.handedness > 0 { "R" } else { "L" }, s.format_word(t.curve.word()))
}

pub fn word_text(s: &Surface, w: &TwistWord) -> String {
    if w.is_empty() {
        return "id".to_string();
    }
    w.letters().iter().map(|t| twist_text(s, t)).collect::<Vec<_>>().join(" * ")
}

fn word_json(s: &Surface, w: &TwistWord) -> Json {
    json!(w
        .letters()
        .iter()
        .map(|t| json!({ "handedness": t.handedness, "curve": letters_json(s, t.curve.word()) }))
        .collect::<Vec<_>>())
}

fn arc_text(s: &Surface, a: &ArcClass) -> String {
    format!("{} from {} to {}", s.format_word(a.letters()), point(a.start()), point(a.end()))
}

pub fn book_json(ob: &OpenBook) -> Result<Json, String> {
    let p = ob.page();
    let h = first_homology(ob).map_err(|e| e.to_string())?;
    Ok(json!({
        "page": { "genus": p.genus(), "boundary": p.boundary_count() },
        "monodromy": word_json(p, ob.monodromy()),
        "h1": { "rank": h.rank, "torsion": h.torsion },
        "provenance": ob.provenance(),
    }))
}

fn book_text(ob: &OpenBook) -> Result<String, String> {
    let h = first_homology(ob).map_err(|e| e.to_string())?;
    Ok(format!("page {}, monodromy {}, h1 {h}", ob.page(), word_text(ob.page(), ob.monodromy())))
}

pub fn sobering_json(s: &Surface, c: &OvertwistedCertificate) -> Json {
    json!({
        "kind": "sobering",
        "arc": letters_json(s, c.arc.letters()),
        "from": point(c.arc.start()),
        "to": point(c.arc.end()),
        "image": letters_json(s, c.image.letters()),
        "signs": {
            "endpoints": [c.sign_data.endpoint_signs.0, c.sign_data.endpoint_signs.1],
            "interior": c.sign_data.interior_signs,
        },
        "i": c.i_value,
    })
}

pub fn stein_json(s: &Surface, c: &SteinCertificate) -> Json {
    json!({
        "kind": "positive_factorization",
        "word": word_json(s, &c.witness),
        "transcript": c.transcript,
    })
}

// ---------------------------------------------------------------- execution

/// Chord from the first boundary component to the second, or between the
/// two marked points of a single component.
pub fn default_chord(page: &Surface) -> openbook::Result<ArcClass> {
    let to = if page.boundary_count() > 1 { page.marked_point(1, 0)? } else { 1 };
    ArcClass::new(page, 0, &[], to)
}

struct Runner<'a> {
    program: &'a Program,
    books: HashMap<String, OpenBook>,
    options: &'a Options,
}

type Step = Result<(Outcome, Option<OpenBook>), String>;

fn fail(e: openbook::Error) -> String {
    e.to_string()
}

impl Runner<'_> {
    fn book(&self, id: &Ident) -> Result<OpenBook, String> {
        if let Some(Value::Book(b)) = self.program.values.get(&id.name) {
            return Ok(b.clone());
        }
        self.books
            .get(&id.name)
            .cloned()
            .ok_or_else(|| format!("'{}' is unavailable because the command defining it failed", id.name))
    }

    fn value(&self, id: &Ident) -> &Value {
        &self.program.values[&id.name]
    }

    fn arc(&self, id: &Ident) -> ArcClass {
        match self.value(id) {
            Value::Arc(a) => a.clone(),
            _ => unreachable!("checked"),
        }
    }

    fn word(&self, id: &Ident) -> (Surface, TwistWord) {
        match self.value(id) {
            Value::Word(w) => (self.program.surfaces[&w.surface_id()].clone(), w.clone()),
            _ => unreachable!("checked"),
        }
    }

    fn produced(&self, head: String, ob: OpenBook) -> Step {
        let text = format!("{head}: {}", book_text(&ob)?);
        Ok((Outcome { text, json: json!({ "book": book_json(&ob)? }) }, Some(ob)))
    }

    fn exec(&self, index: usize, cmd: &Command) -> Step {
        let head = cmd.to_string();
        match cmd {
            Command::H1(b) => {
                let ob = self.book(b)?;
                let h = first_homology(&ob).map_err(fail)?;
                let sphere = if h.is_trivial() { " (homology sphere)" } else { "" };
                let text = format!("h1 {b}: {h}{sphere}");
                Ok((Outcome { text, json: json!({ "book": book_json(&ob)? }) }, None))
            }
            Command::Stabilize { book, sign, at } => {
                let ob = self.book(book)?;
                let arc = match at {
                    StabilizeAt::Boundaries(i, j) => {
                        if *i == 0 || *j == 0 {
                            return Err("boundary components are numbered from 1".into());
                        }
                        attaching_arc(ob.page(), i - 1, j - 1).map_err(fail)?
                    }
                    StabilizeAt::Arc(a) => self.arc(a),
                };
                self.produced(head, stabilize(&ob, &arc, *sign).map_err(fail)?)
            }
            Command::Sum { first, second, along } => {
                let (b0, b1) = (self.book(first)?, self.book(second)?);
                let (r0, r1) = match along {
                    Some((x, y)) => (self.arc(x), self.arc(y)),
                    None => (default_chord(b0.page()).map_err(fail)?, default_chord(b1.page()).map_err(fail)?),
                };
                self.produced(head, murasugi_sum(&b0, &r0, &b1, &r1).map_err(fail)?)
            }
            Command::Surgery { book, curve, coefficient } => {
                let ob = self.book(book)?;
                let Value::Curve(c) = self.value(curve) else { unreachable!("checked") };
                self.produced(head, page_surgery(&ob, c, *coefficient).map_err(fail)?)
            }
            Command::Connect(b) => {
                let ob = self.book(b)?;
                self.produced(head, connect_binding(&ob).map_err(fail)?)
            }
            Command::Destabilize { book, budget } => {
                let ob = self.book(book)?;
                let budget = budget.unwrap_or(self.options.budget);
                match detect_negative_stabilization(&ob, budget).map_err(fail)? {
                    Some(d) => {
                        let s = ob.page();
                        let mut out = self.produced(head, d.destabilized)?;
                        if let Some(c) = &d.arc {
                            out.0.text.push_str(&format!("\n  co-core {}", arc_text(s, &c.arc)));
                            out.0.json["certificate"] = sobering_json(s, c);
                        }
                        out.0.json["twist"] = json!(twist_text(s, &d.twist));
                        Ok(out)
                    }
                    None => Err(format!("no negative stabilization found within budget {budget}")),
                }
            }
            Command::Certify { book, budget } => {
                let ob = self.book(book)?;
                let budget = budget.unwrap_or(self.options.budget);
                let r = fillability_report(&ob, budget, budget).map_err(fail)?;
                let s = ob.page();
                let (verdict, detail, cert) = match (&r.stein, &r.overtwisted) {
                    (Some(c), _) => (
                        "stein",
                        format!("positive factorization {}", word_text(s, &c.witness)),
                        stein_json(s, c),
                    ),
                    (None, Some(c)) => (
                        "overtwisted",
                        format!("sobering arc {}, i = {}", arc_text(s, &c.arc), c.i_value),
                        sobering_json(s, c),
                    ),
                    (None, None) => ("inconclusive", format!("no certificate within budget {budget}"), Json::Null),
                };
                let text = format!("certify {book}: {verdict}: {detail}\n  {}", r.note);
                let json = json!({ "verdict": verdict, "note": r.note, "budget": budget, "certificate": cert });
                Ok((Outcome { text, json }, None))
            }
            Command::Sobering { book, arc } => {
                let ob = self.book(book)?;
                let a = self.arc(arc);
                let s = ob.page();
                let (text, json) = match check_sobering(&ob, &a).map_err(fail)? {
                    Check::Accepted(c) => (
                        format!("sobering {book} along {arc}: accepted, i = {}", c.i_value),
                        json!({ "accepted": true, "certificate": sobering_json(s, &c) }),
                    ),
                    Check::Rejected(r) => (
                        format!("sobering {book} along {arc}: rejected: {r}"),
                        json!({ "accepted": false, "reason": r.to_string() }),
                    ),
                };
                Ok((Outcome { text, json }, None))
            }
            Command::CheckRelation { kind, curves, .. } => {
                let cs = &self.program.relations[&index];
                let s = &self.program.surfaces[&cs[0].surface_id()];
                let pair = || -> Result<_, String> {
                    match cs.as_slice() {
                        [a, b] => Ok((a.clone(), b.clone())),
                        _ => Err(format!("{} takes exactly two curves", kind.keyword())),
                    }
                };
                let rel = match kind {
                    RelationKind::Chain => Relation::Chain(cs.clone()),
                    RelationKind::Braid => {
                        let (a, b) = pair()?;
                        Relation::Braid(a, b)
                    }
                    RelationKind::Commute => {
                        let (a, b) = pair()?;
                        Relation::Commute(a, b)
                    }
                    RelationKind::Exchange => {
                        let (a, b) = pair()?;
                        Relation::Exchange(a, b)
                    }
                };
                let names: Vec<_> = curves.iter().map(|c| c.name.as_str()).collect();
                if !verify_relation(s, &rel).map_err(fail)? {
                    return Err(format!("the {} relation does not hold", kind.keyword()));
                }
                let text = format!("check-relation {} [{}]: holds", kind.keyword(), names.join(", "));
                Ok((Outcome { text, json: json!({ "relation": kind.keyword(), "holds": true }) }, None))
            }
            Command::Positify(w) => {
                let (s, word) = self.word(w);
                let p = positify(&s, &word).map_err(fail)?;
                let text = format!("positify {w}: {} ({} letters)", word_text(&s, &p), p.len());
                Ok((Outcome { text, json: json!({ "word": word_json(&s, &p), "length": p.len() }) }, None))
            }
            Command::Equal(a, b) => {
                let (s, x) = self.word(a);
                let (_, y) = self.word(b);
                let eq = equal(&s, &x, &y).map_err(fail)?;
                Ok((Outcome { text: format!("equal {a} {b}: {eq}"), json: json!({ "equal": eq }) }, None))
            }
        }
    }
}

/// Runs every command in order. Command failures are recorded and do not
/// stop later commands.
pub fn run(script: &Script, options: &Options) -> Result<Report, ScriptError> {
    let program = check(script)?;
    let mut runner = Runner { program: &program, books: HashMap::new(), options };
    let mut report = Report::default();
    for (i, st) in script.stmts.iter().enumerate() {
        let StmtKind::Cmd { command, bind } = &st.kind else { continue };
        let outcome = match runner.exec(i, command) {
            Ok((o, book)) => {
                if let (Some(name), Some(ob)) = (bind, book) {
                    runner.books.insert(name.name.clone(), ob.clone());
                    report.books.insert(name.name.clone(), ob);
                }
                Ok(o)
            }
            Err(e) => Err(e),
        };
        report.entries.push(Entry { line: st.pos.line, command: command.to_string(), outcome });
    }
    Ok(report)
}
