//! Mapping classes as words in Dehn twists.
//!
//! A word `[t_1, .., t_k]` stands for `t_1 ∘ .. ∘ t_k`: the rightmost twist
//! acts first.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::curve::{self, ArcClass, CurveClass, Embedded};
use crate::error::{Error, Result};
use crate::standard::{filling_arcs, standard_curves};
use crate::surface::{Letter, Surface, SurfaceId};
use crate::word;

/// Action on `H_1` of the page in the basis of spine loops.
pub type HomologyMatrix = DMatrix<i64>;

/// `D_γ` (handedness `+1`, right-handed) or `D_γ^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Twist {
    pub curve: CurveClass,
    pub handedness: i8,
}

impl Twist {
    pub fn new(curve: &CurveClass, handedness: i8) -> Twist {
        Twist { curve: curve.unoriented(), handedness: handedness.signum() }
    }

    pub fn inverse(&self) -> Twist {
        Twist { curve: self.curve.clone(), handedness: -self.handedness }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TwistWord {
    surface: SurfaceId,
    letters: Vec<Twist>,
}

impl TwistWord {
    pub fn identity(s: &Surface) -> TwistWord {
        TwistWord { surface: s.id(), letters: Vec::new() }
    }

    pub fn new(s: &Surface, letters: Vec<Twist>) -> Result<TwistWord> {
        for t in &letters {
            if t.curve.surface_id() != s.id() {
                return Err(Error::SurfaceMismatch);
            }
            if !curve::is_simple(s, &t.curve) {
                return Err(Error::NotSimple(s.format_word(t.curve.word())));
            }
            if t.handedness == 0 {
                return Err(Error::Unsupported("twist handedness must be +1 or -1".into()));
            }
        }
        let letters = letters.into_iter().map(|t| Twist::new(&t.curve, t.handedness)).collect();
        Ok(TwistWord { surface: s.id(), letters })
    }

    /// `D_γ^power` written out as `|power|` letters.
    pub fn twist(s: &Surface, gamma: &CurveClass, power: i32) -> Result<TwistWord> {
        let t = Twist::new(gamma, if power >= 0 { 1 } else { -1 });
        TwistWord::new(s, vec![t; power.unsigned_abs() as usize])
    }

    pub(crate) fn from_trusted(surface: SurfaceId, letters: Vec<Twist>) -> TwistWord {
        TwistWord { surface, letters }
    }

    pub fn surface_id(&self) -> SurfaceId {
        self.surface
    }

    pub fn letters(&self) -> &[Twist] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|t| t.handedness > 0)
    }

    pub fn pow(&self, k: usize) -> TwistWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        TwistWord { surface: self.surface, letters }
    }

    pub fn mirror(&self) -> TwistWord {
        TwistWord { surface: self.surface, letters: self.letters.iter().map(Twist::inverse).collect() }
    }
}

fn check(s: &Surface, w: &TwistWord) -> Result<()> {
    if w.surface != s.id() {
        return Err(Error::SurfaceMismatch);
    }
    Ok(())
}

/// `w1 ∘ w2`.
pub fn compose(w1: &TwistWord, w2: &TwistWord) -> Result<TwistWord> {
    if w1.surface != w2.surface {
        return Err(Error::SurfaceMismatch);
    }
    let mut letters = w1.letters.clone();
    letters.extend_from_slice(&w2.letters);
    Ok(TwistWord { surface: w1.surface, letters })
}

pub fn inverse(w: &TwistWord) -> TwistWord {
    TwistWord { surface: w.surface, letters: w.letters.iter().rev().map(Twist::inverse).collect() }
}

/// Rewrites `f ∘ w ∘ f^{-1}` letter by letter as twists about image curves.
pub fn conjugate_push(s: &Surface, w: &TwistWord, f: &TwistWord) -> Result<TwistWord> {
    check(s, w)?;
    check(s, f)?;
    let mut letters = Vec::with_capacity(w.len());
    for t in &w.letters {
        let image = act_on(s, f, &t.curve)?;
        letters.push(Twist::new(&image, t.handedness));
    }
    Ok(TwistWord { surface: w.surface, letters })
}

/// Image of a curve or arc, applying the rightmost letter first.
pub fn act_on<X: Embedded>(s: &Surface, w: &TwistWord, x: &X) -> Result<X> {
    check(s, w)?;
    if x.surface_id() != s.id() {
        return Err(Error::SurfaceMismatch);
    }
    let mut cur = x.clone();
    for t in w.letters.iter().rev() {
        cur = curve::apply_twist_trusted(s, &cur, &t.curve, t.handedness as i32);
    }
    Ok(cur)
}

fn images(s: &Surface, w: &TwistWord) -> Result<Vec<ArcClass>> {
    filling_arcs(s).iter().map(|a| act_on(s, w, a)).collect()
}

/// Equality in the mapping class group rel boundary, decided by the images
/// of the filling arcs.
pub fn equal(s: &Surface, w1: &TwistWord, w2: &TwistWord) -> Result<bool> {
    check(s, w1)?;
    check(s, w2)?;
    if w1 == w2 {
        return Ok(true);
    }
    Ok(images(s, w1)? == images(s, w2)?)
}

/// Whether `w` is isotopic to the identity rel boundary.
pub fn is_identity(s: &Surface, w: &TwistWord) -> Result<bool> {
    equal(s, w, &TwistWord::identity(s))
}

/// Algebraic intersection matrix `J` of the basis loops.
pub fn intersection_pairing(s: &Surface) -> HomologyMatrix {
    let j = curve::intersection_form(s);
    let r = s.rank();
    DMatrix::from_fn(r, r, |a, b| j[a][b])
}

fn transvection(s: &Surface, j: &HomologyMatrix, gamma: &CurveClass, handedness: i64) -> HomologyMatrix {
    let r = s.rank();
    let v = DMatrix::from_vec(r, 1, word::abelianize(gamma.word(), r));
    // x ↦ x + ε ⟨γ, x⟩ γ
    let pairing = v.transpose() * j;
    DMatrix::identity(r, r) + (&v * pairing) * handedness
}

/// Product of the transvections of the letters, in composition order.
pub fn homology_action(s: &Surface, w: &TwistWord) -> Result<HomologyMatrix> {
    check(s, w)?;
    let j = intersection_pairing(s);
    let r = s.rank();
    let mut m = DMatrix::identity(r, r);
    for t in &w.letters {
        m = m * transvection(s, &j, &t.curve, t.handedness as i64);
    }
    Ok(m)
}

/// The same matrix read off the images of the filling arcs.
pub fn homology_action_from_arcs(s: &Surface, w: &TwistWord) -> Result<HomologyMatrix> {
    let r = s.rank();
    let imgs = images(s, w)?;
    let ab = |a: &ArcClass| word::abelianize(a.letters(), r);
    let base = ab(&imgs[r]);
    let mut m = DMatrix::zeros(r, r);
    for i in 0..r {
        let col = ab(&imgs[i]);
        for k in 0..r {
            m[(k, i)] = col[k] - base[k];
        }
    }
    Ok(m)
}

/// Hypotheses of the relation suite.
#[derive(Clone, Debug)]
pub enum Relation {
    /// `f ∘ D_γ ∘ f^{-1} = D_{f(γ)}`.
    Conjugate { f: TwistWord, gamma: CurveClass },
    /// `D_γ ∘ D_δ = D_δ ∘ D_γ` for disjoint curves.
    Commute(CurveClass, CurveClass),
    /// `D_δ ∘ D_γ (δ) = γ` when the curves meet once.
    Exchange(CurveClass, CurveClass),
    /// `D_δ ∘ D_γ ∘ D_δ = D_γ ∘ D_δ ∘ D_γ` when the curves meet once.
    Braid(CurveClass, CurveClass),
    /// Chain relation for a chain `γ_1 .. γ_k`.
    Chain(Vec<CurveClass>),
}

fn require_meet(s: &Surface, a: &CurveClass, b: &CurveClass, n: usize) -> Result<()> {
    let i = curve::geometric_intersection(s, a, b)?;
    if i != n {
        return Err(Error::Hypothesis(format!(
            "{} and {} meet {i} times, expected {n}",
            s.format_word(a.word()),
            s.format_word(b.word())
        )));
    }
    Ok(())
}

fn tw(s: &Surface, c: &CurveClass, h: i8) -> TwistWord {
    TwistWord::from_trusted(s.id(), vec![Twist::new(c, h)])
}

fn word_of(s: &Surface, curves: &[CurveClass], h: i8) -> TwistWord {
    TwistWord::from_trusted(s.id(), curves.iter().map(|c| Twist::new(c, h)).collect())
}

/// Checks the chain hypothesis and returns the boundary of its neighbourhood.
pub fn chain_boundary(s: &Surface, chain: &[CurveClass]) -> Result<Vec<CurveClass>> {
    if chain.is_empty() {
        return Err(Error::Hypothesis("empty chain".into()));
    }
    for c in chain {
        if c.surface_id() != s.id() {
            return Err(Error::SurfaceMismatch);
        }
        if c.is_trivial() || !curve::is_simple(s, c) {
            return Err(Error::NotSimple(s.format_word(c.word())));
        }
    }
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            require_meet(s, &chain[i], &chain[j], usize::from(j == i + 1))?;
        }
    }
    let b = curve::neighborhood_boundary(s, chain)?;
    let expect = if chain.len() % 2 == 0 { 1 } else { 2 };
    if b.len() != expect {
        return Err(Error::Inconsistent(format!(
            "chain of length {} has {} boundary curves",
            chain.len(),
            b.len()
        )));
    }
    Ok(b)
}

/// Both sides of the chain relation.
fn chain_sides(s: &Surface, chain: &[CurveClass]) -> Result<(TwistWord, TwistWord)> {
    let d = chain_boundary(s, chain)?;
    let k = chain.len();
    let power = if k % 2 == 0 { 2 * k + 2 } else { k + 1 };
    Ok((word_of(s, chain, 1).pow(power), word_of(s, &d, 1)))
}

/// Instantiates both sides of a relation and compares them with [`equal`].
pub fn verify_relation(s: &Surface, rel: &Relation) -> Result<bool> {
    match rel {
        Relation::Conjugate { f, gamma } => {
            check(s, f)?;
            let lhs = compose(&compose(f, &tw(s, gamma, 1))?, &inverse(f))?;
            let rhs = tw(s, &act_on(s, f, gamma)?, 1);
            equal(s, &lhs, &rhs)
        }
        Relation::Commute(a, b) => {
            require_meet(s, a, b, 0)?;
            let lhs = compose(&tw(s, a, 1), &tw(s, b, 1))?;
            let rhs = compose(&tw(s, b, 1), &tw(s, a, 1))?;
            equal(s, &lhs, &rhs)
        }
        Relation::Exchange(g, d) => {
            require_meet(s, g, d, 1)?;
            let w = compose(&tw(s, d, 1), &tw(s, g, 1))?;
            Ok(act_on(s, &w, d)?.same_unoriented(g))
        }
        Relation::Braid(g, d) => {
            require_meet(s, g, d, 1)?;
            let lhs = word_of(s, &[d.clone(), g.clone(), d.clone()], 1);
            let rhs = word_of(s, &[g.clone(), d.clone(), g.clone()], 1);
            equal(s, &lhs, &rhs)
        }
        Relation::Chain(chain) => {
            let (lhs, rhs) = chain_sides(s, chain)?;
            equal(s, &lhs, &rhs)
        }
    }
}

/// Chain relation compared only through the action on homology.
pub fn verify_chain_homology(s: &Surface, chain: &[CurveClass]) -> Result<bool> {
    let (lhs, rhs) = chain_sides(s, chain)?;
    Ok(homology_action(s, &lhs)? == homology_action(s, &rhs)?)
}

// ---------------------------------------------------------------------------
// Positive and negative normal forms on one-boundary pages

/// Where a curve sits relative to the standard curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    /// `a_i`, by index.
    Chain(usize),
    /// The boundary of a neighbourhood of `a_1 .. a_2h`.
    Separating(usize),
}

pub(crate) struct Normalizer<'a> {
    s: &'a Surface,
    chain: Vec<CurveClass>,
    /// `σ_h` for `h = 1 .. g-1`.
    separating: Vec<CurveClass>,
    moves: Vec<CurveClass>,
    boundary: CurveClass,
    cache: HashMap<CurveClass, (TwistWord, Model)>,
    limit: usize,
}

impl<'a> Normalizer<'a> {
    pub(crate) fn new(s: &'a Surface) -> Result<Normalizer<'a>> {
        if s.boundary_count() != 1 {
            return Err(Error::Hypothesis("normal forms need a page with one boundary component".into()));
        }
        Normalizer::with_limit(s, 200_000)
    }

    /// Locating curves only; any canonical page of positive genus.
    pub(crate) fn with_limit(s: &'a Surface, limit: usize) -> Result<Normalizer<'a>> {
        if s.genus() == 0 || !s.is_canonical() {
            return Err(Error::Hypothesis("normal forms need the canonical page of positive genus".into()));
        }
        let sys = standard_curves(s)?;
        let mut separating = Vec::new();
        let top = if s.boundary_count() == 1 { s.genus() } else { s.genus() + 1 };
        for h in 1..top {
            separating.push(chain_boundary(s, &sys.chain[..2 * h])?[0].unoriented());
        }
        let mut moves = sys.chain.clone();
        for e in 0..s.rank() {
            let c = CurveClass::new(s, &[Letter::new(e, false)])?;
            if !moves.iter().any(|m| m.same_unoriented(&c)) {
                moves.push(c);
            }
        }
        Ok(Normalizer {
            s,
            chain: sys.chain.iter().map(|c| c.unoriented()).collect(),
            separating,
            moves,
            boundary: sys.boundary_parallel[0].unoriented(),
            cache: HashMap::new(),
            limit,
        })
    }

    fn model_of(&self, c: &CurveClass) -> Option<Model> {
        if let Some(i) = self.chain.iter().position(|a| a == c) {
            return Some(Model::Chain(i));
        }
        self.separating.iter().position(|a| a == c).map(|h| Model::Separating(h + 1))
    }

    /// A mapping class `f` and model curve `m` with `f(m) = γ`, found by a
    /// best-first search over twists about a generating set.
    fn locate(&mut self, gamma: &CurveClass) -> Result<(TwistWord, Model)> {
        let gamma = gamma.unoriented();
        if let Some(hit) = self.cache.get(&gamma) {
            return Ok(hit.clone());
        }
        let mut heap = BinaryHeap::new();
        let mut parent: HashMap<CurveClass, Option<(CurveClass, usize, i8)>> = HashMap::new();
        parent.insert(gamma.clone(), None);
        let mut nodes = vec![gamma.clone()];
        heap.push(Reverse((gamma.word().len(), 0usize)));
        while let Some(Reverse((_, idx))) = heap.pop() {
            let cur = nodes[idx].clone();
            if let Some(model) = self.model_of(&cur) {
                // walk back: h = m_k ∘ .. ∘ m_1 sends γ to the model, f = h^{-1}
                let mut letters = Vec::new();
                let mut node = cur.clone();
                while let Some(Some((prev, mv, h))) = parent.get(&node) {
                    letters.push(Twist::new(&self.moves[*mv], -*h));
                    node = prev.clone();
                }
                letters.reverse();
                let f = TwistWord::from_trusted(self.s.id(), letters);
                self.cache.insert(gamma.clone(), (f.clone(), model));
                return Ok((f, model));
            }
            if parent.len() > self.limit {
                break;
            }
            for (mi, m) in self.moves.iter().enumerate() {
                for h in [1i8, -1] {
                    let next = curve::apply_twist_trusted(self.s, &cur, m, h as i32).unoriented();
                    if !parent.contains_key(&next) {
                        parent.insert(next.clone(), Some((cur.clone(), mi, h)));
                        heap.push(Reverse((next.word().len(), nodes.len())));
                        nodes.push(next);
                    }
                }
            }
        }
        Err(Error::Unsupported(format!(
            "could not move {} onto a standard curve",
            self.s.format_word(gamma.word())
        )))
    }

    /// Letters `B A` with `(a_1 .. a_2h)^{4h+2} = A a_i B` at the first
    /// occurrence of `a_i`.
    fn rest(&self, h: usize, i: usize) -> Vec<Twist> {
        let k = 2 * h;
        let n = 2 * k + 2;
        let full: Vec<Twist> = (0..n).flat_map(|_| self.chain[..k].iter().map(|c| Twist::new(c, 1))).collect();
        let mut out = full[i + 1..].to_vec();
        out.extend_from_slice(&full[..i]);
        out
    }

    /// Rewrites one letter with every interior letter of handedness `target`.
    /// Boundary twists are tallied in `m`.
    fn rewrite(&mut self, t: &Twist, target: i8, m: &mut i64, out: &mut Vec<Twist>) -> Result<()> {
        let c = &t.curve;
        if c.is_trivial() {
            return Ok(());
        }
        if *c == self.boundary {
            *m += t.handedness as i64;
            return Ok(());
        }
        let separating = curve::is_separating(self.s, c)?;
        if !separating && t.handedness == target {
            out.push(t.clone());
            return Ok(());
        }
        let (f, model) = self.locate(c)?;
        match model {
            Model::Chain(i) => {
                // D_{a_i}^{-ε} = D_d^{-ε} (B A)^{ε}
                let ba = TwistWord::from_trusted(self.s.id(), self.rest(self.s.genus(), i));
                let ba = if target > 0 { ba } else { inverse(&ba) };
                out.extend(conjugate_push(self.s, &ba, &f)?.letters);
                *m -= target as i64;
            }
            Model::Separating(h) => {
                // D_σ = (b_1 .. b_2h)^{4h+2} with b_j = f(a_j)
                let k = 2 * h;
                let chain = word_of(self.s, &self.chain[..k], 1).pow(2 * k + 2);
                let pushed = conjugate_push(self.s, &chain, &f)?;
                let expanded = if t.handedness > 0 { pushed } else { inverse(&pushed) };
                for u in &expanded.letters {
                    self.rewrite(u, target, m, out)?;
                }
            }
        }
        Ok(())
    }

    pub(crate) fn normal_form(&mut self, w: &TwistWord, target: i8) -> Result<TwistWord> {
        check(self.s, w)?;
        let mut m = 0i64;
        let mut body = Vec::new();
        for t in &w.letters {
            self.rewrite(t, target, &mut m, &mut body)?;
        }
        let mut letters: Vec<Twist> = (0..m.unsigned_abs())
            .map(|_| Twist::new(&self.boundary, if m > 0 { 1 } else { -1 }))
            .collect();
        letters.extend(body);
        Ok(TwistWord::from_trusted(self.s.id(), letters))
    }

    /// Positive chain word whose product is a twist about a separating curve,
    /// if the curve bounds a standard piece.
    pub(crate) fn separating_as_chain(&mut self, c: &CurveClass) -> Result<Option<TwistWord>> {
        match self.locate(c)? {
            (f, Model::Separating(h)) => {
                let k = 2 * h;
                let chain = word_of(self.s, &self.chain[..k], 1).pow(2 * k + 2);
                Ok(Some(conjugate_push(self.s, &chain, &f)?))
            }
            _ => Ok(None),
        }
    }
}

/// An equal word whose interior letters are right-handed twists about
/// non-separating curves, with all boundary twists collected on the left.
pub fn positify(s: &Surface, w: &TwistWord) -> Result<TwistWord> {
    Normalizer::new(s)?.normal_form(w, 1)
}

/// Dual of [`positify`]: `D_d^m` followed by left-handed twists about
/// non-separating curves.
pub fn negative_normal_form(s: &Surface, w: &TwistWord) -> Result<TwistWord> {
    Normalizer::new(s)?.normal_form(w, -1)
}

/// Whether every letter of handedness `-target` is a boundary twist and
/// every other letter is about a non-separating curve.
pub fn in_normal_form(s: &Surface, w: &TwistWord, target: i8) -> Result<bool> {
    for t in &w.letters {
        let peripheral = t.curve.boundary_component(s).is_some();
        if peripheral || t.curve.is_trivial() {
            continue;
        }
        if t.handedness != target || curve::is_separating(s, &t.curve)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(g: usize, n: usize) -> (Surface, Vec<CurveClass>) {
        let s = Surface::new(g, n).unwrap();
        let ch = standard_curves(&s).unwrap().chain;
        (s, ch)
    }

    #[test]
    fn transvections_match_arc_images() {
        let (s, a) = setup(2, 2);
        for (i, c) in a.iter().enumerate() {
            for h in [1i8, -1] {
                let w = tw(&s, c, h);
                assert_eq!(homology_action(&s, &w).unwrap(), homology_action_from_arcs(&s, &w).unwrap(), "a{} {h}", i + 1);
            }
        }
        let w = word_of(&s, &a, 1);
        assert_eq!(homology_action(&s, &w).unwrap(), homology_action_from_arcs(&s, &w).unwrap());
    }

    #[test]
    fn inverse_pair_is_identity() {
        let (s, a) = setup(1, 1);
        let w = compose(&tw(&s, &a[0], 1), &tw(&s, &a[0], -1)).unwrap();
        assert!(is_identity(&s, &w).unwrap());
        assert!(!equal(&s, &tw(&s, &a[0], 1), &tw(&s, &a[1], 1)).unwrap());
    }

    #[test]
    fn braid_and_exchange_on_torus() {
        let (s, a) = setup(1, 1);
        assert!(verify_relation(&s, &Relation::Braid(a[0].clone(), a[1].clone())).unwrap());
        assert!(verify_relation(&s, &Relation::Exchange(a[0].clone(), a[1].clone())).unwrap());
        let bad = verify_relation(&s, &Relation::Commute(a[0].clone(), a[1].clone()));
        assert!(matches!(bad, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn two_chain_gives_boundary_twist() {
        let (s, a) = setup(1, 1);
        assert!(verify_relation(&s, &Relation::Chain(a.clone())).unwrap());
    }

    #[test]
    fn positify_single_inverse() {
        let (s, a) = setup(1, 1);
        let w = tw(&s, &a[0], -1);
        let p = positify(&s, &w).unwrap();
        assert_eq!(p.len(), 12);
        assert_eq!(p.letters()[0].handedness, -1);
        assert!(p.letters()[1..].iter().all(|t| t.handedness > 0));
        assert!(equal(&s, &w, &p).unwrap());
    }
}
