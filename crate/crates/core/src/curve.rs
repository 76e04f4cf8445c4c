//! Isotopy classes of simple closed curves and arcs, and the combinatorics of
//! their minimal position.
//!
//! Everything here works in the universal cover of the page, which retracts
//! onto a planar tree: the lift of the spine. A closed curve lifts to a family
//! of bi-infinite lines, an arc to paths between leaves (lifts of marked
//! points). Two lifts cross in minimal position exactly when their endpoints
//! alternate around the circle at infinity, and that circular order is read
//! off the ribbon structure one vertex at a time.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{FatGraph, HalfEdge, Letter, Surface, SurfaceId};
use crate::word;

/// Isotopy class of an oriented simple closed curve.
///
/// The word is cyclically reduced and stored at its least rotation, so two
/// oriented curves are isotopic iff their words agree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CurveClass {
    surface: SurfaceId,
    word: Vec<Letter>,
}

/// Isotopy class, rel endpoints, of a properly embedded oriented arc between
/// two distinct marked points.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ArcClass {
    surface: SurfaceId,
    start: usize,
    letters: Vec<Letter>,
    end: usize,
}

/// Signs of the intersections of two arcs with common endpoints.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignData {
    /// One entry per interior crossing, ordered along the first arc.
    pub interior_signs: Vec<i8>,
    /// `(ε(x), ε(y))` at the start and end of the first arc.
    pub endpoint_signs: (i8, i8),
}

impl SignData {
    /// `(ε(x) + ε(y)) / 2`, which is always one of -1, 0, 1.
    pub fn i_value(&self) -> i32 {
        (self.endpoint_signs.0 as i32 + self.endpoint_signs.1 as i32) / 2
    }

    pub fn has_positive_interior(&self) -> bool {
        self.interior_signs.iter().any(|s| *s > 0)
    }

    pub fn negated(&self) -> SignData {
        SignData {
            interior_signs: self.interior_signs.iter().map(|s| -s).collect(),
            endpoint_signs: (-self.endpoint_signs.0, -self.endpoint_signs.1),
        }
    }
}

/// Outcome of putting two arcs with the same endpoints in minimal position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MinimalPosition {
    /// The arcs are isotopic rel endpoints; no transverse position exists.
    Isotopic,
    Transverse(SignData),
}

impl CurveClass {
    /// Reduces a raw edge-path and checks that the result is simple.
    pub fn new(surface: &Surface, raw: &[Letter]) -> Result<CurveClass> {
        let c = CurveClass::unchecked(surface, raw)?;
        if !is_simple_curve(surface.spine(), &c.word) {
            return Err(Error::NotSimple(surface.format_word(&c.word)));
        }
        Ok(c)
    }

    /// Reduces without the simplicity check.
    pub fn unchecked(surface: &Surface, raw: &[Letter]) -> Result<CurveClass> {
        surface.check_letters(raw)?;
        Ok(CurveClass {
            surface: surface.id(),
            word: word::least_rotation(&word::cyclic_reduce(raw)),
        })
    }

    pub fn surface_id(&self) -> SurfaceId {
        self.surface
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Null-homotopic curves bound disks.
    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }

    pub fn reversed(&self) -> CurveClass {
        CurveClass {
            surface: self.surface,
            word: word::least_rotation(&word::inverse(&self.word)),
        }
    }

    /// Isotopy as unoriented curves.
    pub fn same_unoriented(&self, other: &CurveClass) -> bool {
        self == other || *self == other.reversed()
    }

    /// Orientation-independent representative.
    pub fn unoriented(&self) -> CurveClass {
        let r = self.reversed();
        let key = |c: &CurveClass| c.word.iter().map(|l| l.rank()).collect::<Vec<_>>();
        if key(&r) < key(self) {
            r
        } else {
            self.clone()
        }
    }

    /// Whether the curve is parallel to a boundary component.
    pub fn boundary_component(&self, surface: &Surface) -> Option<usize> {
        (0..surface.boundary_count()).find(|&j| {
            let b = CurveClass {
                surface: self.surface,
                word: word::least_rotation(surface.boundary_word(j).unwrap()),
            };
            !b.word.is_empty() && self.same_unoriented(&b)
        })
    }

    pub(crate) fn from_reduced(surface: SurfaceId, w: Vec<Letter>) -> CurveClass {
        CurveClass { surface, word: word::least_rotation(&word::cyclic_reduce(&w)) }
    }
}

impl ArcClass {
    /// Reduces a raw edge-path between marked points and checks embeddedness.
    pub fn new(surface: &Surface, start: usize, raw: &[Letter], end: usize) -> Result<ArcClass> {
        let a = ArcClass::unchecked(surface, start, raw, end)?;
        if !is_simple_arc(surface.spine(), a.start as u32, &a.letters, a.end as u32) {
            return Err(Error::NotSimple(surface.format_word(&a.letters)));
        }
        Ok(a)
    }

    /// Path class rel endpoints, without the embeddedness check. Used for
    /// groupoid generators in equality tests.
    pub fn unchecked(surface: &Surface, start: usize, raw: &[Letter], end: usize) -> Result<ArcClass> {
        surface.check_letters(raw)?;
        let count = surface.marked_count();
        if start >= count {
            return Err(Error::NoSuchMarkedPoint(start));
        }
        if end >= count {
            return Err(Error::NoSuchMarkedPoint(end));
        }
        if start == end {
            return Err(Error::BadArc("both endpoints at the same marked point".into()));
        }
        Ok(ArcClass { surface: surface.id(), start, letters: word::free_reduce(raw), end })
    }

    pub fn surface_id(&self) -> SurfaceId {
        self.surface
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn reversed(&self) -> ArcClass {
        ArcClass {
            surface: self.surface,
            start: self.end,
            letters: word::inverse(&self.letters),
            end: self.start,
        }
    }

    pub fn same_endpoints(&self, other: &ArcClass) -> bool {
        self.start == other.start && self.end == other.end
    }
}

// ---------------------------------------------------------------------------
// Rays in the universal cover

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tail {
    /// Terminates at a lift of this marked point.
    Stub(u32),
    /// Continues forever along this cyclically reduced word.
    Periodic(Vec<Letter>),
}

/// A reduced ray in the lifted spine leaving a base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Ray {
    prefix: Vec<Letter>,
    tail: Tail,
}

impl Ray {
    fn new(prefix: Vec<Letter>, tail: Tail) -> Ray {
        let mut r = Ray { prefix: word::free_reduce(&prefix), tail };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if let Tail::Periodic(p) = &mut self.tail {
            while let Some(&last) = self.prefix.last() {
                if p[0] == last.inverse() {
                    self.prefix.pop();
                    p.rotate_left(1);
                } else {
                    break;
                }
            }
        }
    }

    fn letter(&self, i: usize) -> Option<Letter> {
        if i < self.prefix.len() {
            return Some(self.prefix[i]);
        }
        match &self.tail {
            Tail::Stub(_) => None,
            Tail::Periodic(p) => Some(p[(i - self.prefix.len()) % p.len()]),
        }
    }

    fn step(&self, i: usize) -> Option<HalfEdge> {
        match self.letter(i) {
            Some(l) => Some(l.departure()),
            None => match self.tail {
                Tail::Stub(m) if i == self.prefix.len() => Some(HalfEdge::Stub(m)),
                _ => None,
            },
        }
    }

    fn first(&self) -> HalfEdge {
        self.step(0).expect("rays leave their base vertex")
    }

    /// The same ray seen from a vertex `path` steps earlier.
    fn prepend(&self, path: &[Letter]) -> Ray {
        let mut prefix = path.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Ray::new(prefix, self.tail.clone())
    }

    fn horizon(&self) -> usize {
        match &self.tail {
            Tail::Stub(_) => self.prefix.len() + 1,
            Tail::Periodic(p) => self.prefix.len() + p.len(),
        }
    }
}

/// Linear order of ends seen from a base vertex, cut just before `cut` in the
/// counterclockwise rotation. Deeper vertices are cut at the arrival edge.
fn cmp_rays(g: &FatGraph, cut: HalfEdge, a: &Ray, b: &Ray) -> Ordering {
    let limit = a.horizon() + b.horizon() + 1;
    let mut reference = cut;
    for i in 0..=limit {
        let (ha, hb) = match (a.step(i), b.step(i)) {
            (None, None) => return Ordering::Equal,
            (Some(x), Some(y)) => (x, y),
            // after identical stubs both sides stop together
            _ => unreachable!("rays diverged without a branching vertex"),
        };
        if ha != hb {
            return g.offset(reference, ha).cmp(&g.offset(reference, hb));
        }
        match a.letter(i) {
            Some(l) => reference = l.arrival(),
            None => return Ordering::Equal,
        }
    }
    Ordering::Equal
}

/// Whether `p` lies strictly inside the counterclockwise arc from `s` to `e`.
fn ccw_between(g: &FatGraph, cut: HalfEdge, s: &Ray, p: &Ray, e: &Ray) -> bool {
    let sp = cmp_rays(g, cut, s, p) == Ordering::Less;
    let pe = cmp_rays(g, cut, p, e) == Ordering::Less;
    let es = cmp_rays(g, cut, e, s) == Ordering::Less;
    (sp && pe) || (pe && es) || (es && sp)
}

/// The two ends of a strand seen from one of its vertices.
#[derive(Clone, Debug)]
struct Local {
    back: Ray,
    fwd: Ray,
}

/// A lifted path or line, parametrised by its vertices.
#[derive(Clone, Copy, Debug)]
enum Strand<'a> {
    /// Path from a leaf over marked point `start` to a leaf over `end`.
    Path { start: u32, letters: &'a [Letter], end: u32 },
    /// Axis of a cyclically reduced word.
    Line(&'a [Letter]),
}

impl<'a> Strand<'a> {
    fn positions(&self) -> usize {
        match self {
            Strand::Path { letters, .. } => letters.len() + 1,
            Strand::Line(w) => w.len(),
        }
    }

    fn local(&self, k: usize) -> Local {
        match *self {
            Strand::Path { start, letters, end } => Local {
                back: Ray::new(word::inverse(&letters[..k]), Tail::Stub(start)),
                fwd: Ray::new(letters[k..].to_vec(), Tail::Stub(end)),
            },
            Strand::Line(w) => {
                let rot = word::rotate(w, k);
                Local {
                    back: Ray::new(vec![], Tail::Periodic(word::inverse(&rot))),
                    fwd: Ray::new(vec![], Tail::Periodic(rot)),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct CrossAt {
    /// +1 when the second strand crosses the first from right to left.
    sign: i8,
    /// Whether the forward end of the second strand is on the right of the first.
    right_is_fwd: bool,
}

/// Decides whether the lifts through a common vertex cross, counting each
/// crossing once at the first vertex (along `x`) of their common segment.
fn cross(g: &FatGraph, x: &Local, y: &Local) -> Option<CrossAt> {
    let cut = x.back.first();
    if cut == y.back.first() || cut == y.fwd.first() {
        return None;
    }
    let (s, e) = (&x.back, &x.fwd);
    if cmp_rays(g, cut, e, &y.fwd) == Ordering::Equal
        || cmp_rays(g, cut, e, &y.back) == Ordering::Equal
    {
        return None;
    }
    let rp = ccw_between(g, cut, s, &y.fwd, e);
    let rq = ccw_between(g, cut, s, &y.back, e);
    if rp == rq {
        return None;
    }
    Some(CrossAt { sign: if rq { 1 } else { -1 }, right_is_fwd: rp })
}

#[derive(Clone, Debug)]
struct Crossing {
    i: usize,
    j: usize,
    at: CrossAt,
}

fn crossings(g: &FatGraph, x: Strand<'_>, y: Strand<'_>, self_pair: bool) -> Vec<Crossing> {
    let ys: Vec<Local> = (0..y.positions()).map(|j| y.local(j)).collect();
    let mut out = Vec::new();
    for i in 0..x.positions() {
        let lx = x.local(i);
        for (j, ly) in ys.iter().enumerate() {
            if self_pair && i == j {
                continue;
            }
            if let Some(at) = cross(g, &lx, ly) {
                out.push(Crossing { i, j, at });
            }
        }
    }
    out
}

fn is_simple_curve(g: &FatGraph, w: &[Letter]) -> bool {
    if w.is_empty() {
        return true;
    }
    if word::period(w) != w.len() {
        return false;
    }
    crossings(g, Strand::Line(w), Strand::Line(w), true).is_empty()
}

fn is_simple_arc(g: &FatGraph, start: u32, letters: &[Letter], end: u32) -> bool {
    let s = Strand::Path { start, letters, end };
    crossings(g, s, s, true).is_empty()
}

// ---------------------------------------------------------------------------
// Public operations

/// Either kind of object a twist can act on.
pub trait Embedded: Clone {
    fn surface_id(&self) -> SurfaceId;
    #[doc(hidden)]
    fn strand(&self) -> StrandRef<'_>;
    #[doc(hidden)]
    fn twisted(&self, g: &FatGraph, gamma: &[Letter], power: i32) -> Self;
}

/// Opaque handle used by [`Embedded`].
#[derive(Clone, Copy, Debug)]
pub struct StrandRef<'a>(Strand<'a>);

impl Embedded for CurveClass {
    fn surface_id(&self) -> SurfaceId {
        self.surface
    }

    fn strand(&self) -> StrandRef<'_> {
        StrandRef(Strand::Line(&self.word))
    }

    fn twisted(&self, g: &FatGraph, gamma: &[Letter], power: i32) -> Self {
        if self.word.is_empty() {
            return self.clone();
        }
        // based at a boundary point, the free homotopy class is the
        // conjugacy class of the image loop
        let mut w = self.word.clone();
        for _ in 0..power.unsigned_abs() {
            w = twist_path(g, 0, &w, 0, gamma, power.signum());
        }
        CurveClass::from_reduced(self.surface, w)
    }
}

impl Embedded for ArcClass {
    fn surface_id(&self) -> SurfaceId {
        self.surface
    }

    fn strand(&self) -> StrandRef<'_> {
        StrandRef(Strand::Path { start: self.start as u32, letters: &self.letters, end: self.end as u32 })
    }

    fn twisted(&self, g: &FatGraph, gamma: &[Letter], power: i32) -> Self {
        let mut w = self.letters.clone();
        for _ in 0..power.unsigned_abs() {
            w = twist_path(g, self.start as u32, &w, self.end as u32, gamma, power.signum());
        }
        ArcClass { letters: w, ..self.clone() }
    }
}

/// Image of a path under a Dehn twist: at each crossing with a lift of the
/// twist curve the path turns (right for `sign > 0`) and runs once around it.
fn twist_path(g: &FatGraph, start: u32, letters: &[Letter], end: u32, gamma: &[Letter], sign: i32) -> Vec<Letter> {
    if gamma.is_empty() {
        return letters.to_vec();
    }
    let x = Strand::Path { start, letters, end };
    let cut = HalfEdge::Stub(start);
    let mut hits: Vec<(usize, Ray, Vec<Letter>)> = Vec::new();
    for c in crossings(g, x, Strand::Line(gamma), false) {
        let ly = Strand::Line(gamma).local(c.j);
        let right = if c.at.right_is_fwd { &ly.fwd } else { &ly.back };
        let key = right.prepend(&letters[..c.i]);
        let rot = word::rotate(gamma, c.j);
        let go_fwd = c.at.right_is_fwd == (sign > 0);
        let lp = if go_fwd { rot } else { word::inverse(&rot) };
        hits.push((c.i, key, lp));
    }
    // crossings in order along the path: their right-hand ends appear in
    // counterclockwise order starting from the path's initial leaf
    hits.sort_by(|a, b| cmp_rays(g, cut, &a.1, &b.1));
    let mut out = Vec::with_capacity(letters.len() + hits.iter().map(|h| h.2.len()).sum::<usize>());
    let mut cur = 0i64;
    for (i, _, lp) in &hits {
        out.extend(segment(letters, cur, *i as i64));
        out.extend_from_slice(lp);
        cur = *i as i64;
    }
    out.extend(segment(letters, cur, letters.len() as i64));
    word::free_reduce(&out)
}

fn segment(letters: &[Letter], from: i64, to: i64) -> Vec<Letter> {
    if to >= from {
        letters[from as usize..to as usize].to_vec()
    } else {
        word::inverse(&letters[to as usize..from as usize])
    }
}

/// Reduces a raw closed edge-path to its simple curve class.
pub fn reduce_curve(surface: &Surface, raw: &[Letter]) -> Result<CurveClass> {
    CurveClass::new(surface, raw)
}

/// Reduces a raw edge-path between marked points to its arc class.
pub fn reduce_arc(surface: &Surface, start: usize, raw: &[Letter], end: usize) -> Result<ArcClass> {
    ArcClass::new(surface, start, raw, end)
}

fn check_on<X: Embedded>(surface: &Surface, x: &X) -> Result<()> {
    if x.surface_id() != surface.id() {
        return Err(Error::SurfaceMismatch);
    }
    Ok(())
}

/// Minimal number of transverse interior intersections.
pub fn geometric_intersection<X: Embedded, Y: Embedded>(surface: &Surface, x: &X, y: &Y) -> Result<usize> {
    check_on(surface, x)?;
    check_on(surface, y)?;
    let (sx, sy) = (x.strand().0, y.strand().0);
    if let (Strand::Line(a), Strand::Line(b)) = (sx, sy) {
        if a.is_empty() || b.is_empty() {
            return Ok(0);
        }
    }
    Ok(crossings(surface.spine(), sx, sy, false).len())
}

/// Signed intersection count of two oriented closed curves.
pub fn algebraic_intersection(surface: &Surface, x: &CurveClass, y: &CurveClass) -> Result<i64> {
    check_on(surface, x)?;
    check_on(surface, y)?;
    if x.word.is_empty() || y.word.is_empty() {
        return Ok(0);
    }
    Ok(crossings(surface.spine(), Strand::Line(&x.word), Strand::Line(&y.word), false)
        .iter()
        .map(|c| c.at.sign as i64)
        .sum())
}

/// Minimal position of two arcs with the same endpoints, with the sign of
/// every intersection. A point counts `+1` when the tangent of `a` followed by
/// the tangent of `b` is an oriented basis.
pub fn minimal_position_signs(surface: &Surface, a: &ArcClass, b: &ArcClass) -> Result<MinimalPosition> {
    check_on(surface, a)?;
    check_on(surface, b)?;
    if !a.same_endpoints(b) {
        return Err(Error::EndpointMismatch);
    }
    if a == b {
        return Ok(MinimalPosition::Isotopic);
    }
    let g = surface.spine();
    let eps = |a: &ArcClass, b: &ArcClass| -> i8 {
        let cut = HalfEdge::Stub(a.start as u32);
        let ea = Ray::new(a.letters.clone(), Tail::Stub(a.end as u32));
        let eb = Ray::new(b.letters.clone(), Tail::Stub(b.end as u32));
        if cmp_rays(g, cut, &ea, &eb) == Ordering::Less {
            1
        } else {
            -1
        }
    };
    let ex = eps(a, b);
    let ey = eps(&a.reversed(), &b.reversed());
    let interior = crossings(g, a.strand().0, b.strand().0, false)
        .iter()
        .map(|c| c.at.sign)
        .collect();
    Ok(MinimalPosition::Transverse(SignData { interior_signs: interior, endpoint_signs: (ex, ey) }))
}

/// `(ε(x) + ε(y)) / 2`, or `None` when the arcs are isotopic.
pub fn i_boundary(surface: &Surface, a: &ArcClass, b: &ArcClass) -> Result<Option<i32>> {
    Ok(match minimal_position_signs(surface, a, b)? {
        MinimalPosition::Isotopic => None,
        MinimalPosition::Transverse(s) => Some(s.i_value()),
    })
}

/// Image of `x` under `D_γ^handedness`.
pub fn apply_twist<X: Embedded>(surface: &Surface, x: &X, gamma: &CurveClass, handedness: i32) -> Result<X> {
    check_on(surface, x)?;
    check_on(surface, gamma)?;
    if !is_simple_curve(surface.spine(), &gamma.word) {
        return Err(Error::NotSimple(surface.format_word(&gamma.word)));
    }
    Ok(x.twisted(surface.spine(), &gamma.word, handedness))
}

/// Twist without re-checking simplicity; callers guarantee it.
pub(crate) fn apply_twist_trusted<X: Embedded>(surface: &Surface, x: &X, gamma: &CurveClass, power: i32) -> X {
    x.twisted(surface.spine(), &gamma.word, power)
}

pub fn is_simple(surface: &Surface, c: &CurveClass) -> bool {
    is_simple_curve(surface.spine(), &c.word)
}

pub fn is_simple_arc_class(surface: &Surface, a: &ArcClass) -> bool {
    is_simple_arc(surface.spine(), a.start as u32, &a.letters, a.end as u32)
}

/// Algebraic intersection pairing on the basis of spine loops.
pub fn intersection_form(surface: &Surface) -> Vec<Vec<i64>> {
    let r = surface.rank();
    let g = surface.spine();
    let basis: Vec<[Letter; 1]> = (0..r).map(|e| [Letter::new(e, false)]).collect();
    let mut j = vec![vec![0i64; r]; r];
    for a in 0..r {
        for b in 0..r {
            if a != b {
                j[a][b] = crossings(g, Strand::Line(&basis[a]), Strand::Line(&basis[b]), false)
                    .iter()
                    .map(|c| c.at.sign as i64)
                    .sum();
            }
        }
    }
    j
}

/// A simple closed curve separates iff it pairs to zero with every closed
/// curve, i.e. its class lies in the radical of the intersection form.
pub fn is_separating(surface: &Surface, gamma: &CurveClass) -> Result<bool> {
    check_on(surface, gamma)?;
    let v = word::abelianize(&gamma.word, surface.rank());
    let form = intersection_form(surface);
    Ok(form.iter().all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() == 0))
}

/// Boundary components of a regular neighbourhood of a union of simple closed
/// curves in minimal position.
pub fn neighborhood_boundary(surface: &Surface, curves: &[CurveClass]) -> Result<Vec<CurveClass>> {
    for c in curves {
        check_on(surface, c)?;
        if c.is_trivial() || !is_simple(surface, c) {
            return Err(Error::NotSimple(surface.format_word(&c.word)));
        }
    }
    let g = surface.spine();

    // crossing id -> (curve a, curve b, sign)
    let mut nodes: Vec<(usize, usize, i8)> = Vec::new();
    // per curve: (crossing id, vertex position, right-hand end of the other curve)
    let mut on_curve: Vec<Vec<(usize, usize, Ray)>> = vec![Vec::new(); curves.len()];
    for a in 0..curves.len() {
        for b in a + 1..curves.len() {
            let (wa, wb) = (&curves[a].word, &curves[b].word);
            for c in crossings(g, Strand::Line(wa), Strand::Line(wb), false) {
                let la = Strand::Line(wa).local(c.i);
                let lb = Strand::Line(wb).local(c.j);
                let id = nodes.len();
                nodes.push((a, b, c.at.sign));
                let right_b = if c.at.right_is_fwd { lb.fwd.clone() } else { lb.back.clone() };
                on_curve[a].push((id, c.i, right_b));
                let cut = lb.back.first();
                let right_a = if ccw_between(g, cut, &lb.back, &la.fwd, &lb.fwd) {
                    la.fwd.clone()
                } else {
                    la.back.clone()
                };
                on_curve[b].push((id, c.j, right_a));
            }
        }
    }

    #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
    struct Hx {
        node: usize,
        curve: usize,
        fwd: bool,
    }
    // half-edge -> (other end, letters travelled)
    let mut edges: HashMap<Hx, (Hx, Vec<Letter>)> = HashMap::new();
    let mut out = Vec::new();
    for (ci, pts) in on_curve.iter().enumerate() {
        let w = &curves[ci].word;
        if pts.is_empty() {
            out.push(curves[ci].clone());
            out.push(curves[ci].clone());
            continue;
        }
        let m = w.len() as i64;
        let base = Strand::Line(w).local(0);
        let cut = base.back.first();
        let mut items: Vec<(usize, i64, i64, Ray)> = Vec::new();
        for (id, pos, right) in pts {
            for t in -1..=2i64 {
                let p = *pos as i64 + t * m;
                let key = right.prepend(&word::periodic_segment(w, 0, p));
                items.push((*id, t, p, key));
            }
        }
        items.sort_by(|x, y| {
            if x.0 == y.0 && x.1 == y.1 {
                Ordering::Equal
            } else if ccw_between(g, cut, &base.back, &x.3, &y.3) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        });
        let first = pts[0].0;
        let idx0 = items
            .iter()
            .position(|it| it.0 == first && it.1 == 0)
            .ok_or_else(|| Error::Inconsistent("lost a crossing while ordering".into()))?;
        let r = pts.len();
        if idx0 + r >= items.len() || items[idx0 + r].0 != first || items[idx0 + r].1 != 1 {
            return Err(Error::Inconsistent("crossings along a curve are not periodic".into()));
        }
        for k in 0..r {
            let (ia, _, pa, _) = &items[idx0 + k];
            let (ib, _, pb, _) = &items[idx0 + k + 1];
            let from = Hx { node: *ia, curve: ci, fwd: true };
            let to = Hx { node: *ib, curve: ci, fwd: false };
            let seg = word::periodic_segment(w, *pa, *pb);
            edges.insert(to, (from, word::inverse(&seg)));
            edges.insert(from, (to, seg));
        }
    }

    let rotation = |h: Hx| -> Hx {
        let (a, b, sign) = nodes[h.node];
        let ring = if sign > 0 {
            [(a, true), (b, true), (a, false), (b, false)]
        } else {
            [(a, true), (b, false), (a, false), (b, true)]
        };
        let p = ring.iter().position(|&(c, f)| c == h.curve && f == h.fwd).unwrap();
        let (c, f) = ring[(p + 1) % 4];
        Hx { node: h.node, curve: c, fwd: f }
    };

    let mut keys: Vec<Hx> = edges.keys().copied().collect();
    keys.sort_by_key(|h| (h.node, h.curve, !h.fwd));
    let mut used = std::collections::HashSet::new();
    for start in keys {
        if used.contains(&start) {
            continue;
        }
        let mut w = Vec::new();
        let mut h = start;
        while used.insert(h) {
            let (other, seg) = &edges[&h];
            w.extend_from_slice(seg);
            h = rotation(*other);
        }
        out.push(CurveClass::from_reduced(surface.id(), w));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_surface;

    fn l(e: usize) -> Letter {
        Letter::new(e, false)
    }

    #[test]
    fn backtracking_reduces_away() {
        let s = make_surface(1, 1).unwrap();
        let c = reduce_curve(&s, &[l(0), l(1), l(1).inverse()]).unwrap();
        assert_eq!(c.word(), &[l(0)]);
        let a = ArcClass::unchecked(&s, 0, &[l(1), l(0), l(0).inverse()], 1).unwrap();
        assert_eq!(a.letters(), &[l(1)]);
    }

    #[test]
    fn powers_are_not_simple() {
        let s = make_surface(1, 1).unwrap();
        assert!(matches!(reduce_curve(&s, &[l(0), l(0)]), Err(Error::NotSimple(_))));
    }

    #[test]
    fn handle_loops_meet_once() {
        let s = make_surface(1, 1).unwrap();
        let x = reduce_curve(&s, &[l(0)]).unwrap();
        let y = reduce_curve(&s, &[l(1)]).unwrap();
        assert_eq!(geometric_intersection(&s, &x, &y).unwrap(), 1);
        assert_eq!(geometric_intersection(&s, &x, &x).unwrap(), 0);
        let a = algebraic_intersection(&s, &x, &y).unwrap();
        assert_eq!(a.abs(), 1);
        assert_eq!(algebraic_intersection(&s, &y, &x).unwrap(), -a);
    }

    #[test]
    fn annulus_core_meets_cocore_once() {
        let s = make_surface(0, 2).unwrap();
        let core = reduce_curve(&s, &[l(0)]).unwrap();
        let cocore = reduce_arc(&s, 0, &[], 2).unwrap();
        assert_eq!(geometric_intersection(&s, &cocore, &core).unwrap(), 1);
    }

    #[test]
    fn twist_of_cocore_wraps_the_core() {
        let s = make_surface(0, 2).unwrap();
        let core = reduce_curve(&s, &[l(0)]).unwrap();
        let b = reduce_arc(&s, 0, &[], 2).unwrap();
        let r = apply_twist(&s, &b, &core, 1).unwrap();
        let lft = apply_twist(&s, &b, &core, -1).unwrap();
        assert_eq!(r.letters().len(), 1);
        assert_eq!(lft.letters(), word::inverse(r.letters()).as_slice());
        assert_eq!(apply_twist(&s, &r, &core, -1).unwrap(), b);
    }

    #[test]
    fn boundary_curve_separates_punctured_torus() {
        let s = make_surface(1, 1).unwrap();
        let d = reduce_curve(&s, s.boundary_word(0).unwrap()).unwrap();
        assert!(is_separating(&s, &d).unwrap());
        let x = reduce_curve(&s, &[l(0)]).unwrap();
        assert!(!is_separating(&s, &x).unwrap());
    }

    #[test]
    fn isotopic_arcs_are_degenerate() {
        let s = make_surface(0, 2).unwrap();
        let b = reduce_arc(&s, 0, &[], 2).unwrap();
        assert_eq!(minimal_position_signs(&s, &b, &b).unwrap(), MinimalPosition::Isotopic);
        let other = reduce_arc(&s, 1, &[], 2).unwrap();
        assert_eq!(minimal_position_signs(&s, &b, &other).unwrap_err(), Error::EndpointMismatch);
    }

    #[test]
    fn handle_pair_neighbourhood_is_the_boundary() {
        let s = make_surface(1, 1).unwrap();
        let x = reduce_curve(&s, &[l(0)]).unwrap();
        let y = reduce_curve(&s, &[l(1)]).unwrap();
        let nb = neighborhood_boundary(&s, &[x, y]).unwrap();
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].boundary_component(&s), Some(0));
    }
}
