//! Contact-geometric certificates read off an open book.
//!
//! A positive factorization of the monodromy certifies a Stein fillable (so
//! tight) contact structure; a sobering arc certifies an overtwisted one.
//! Failing to find either proves nothing.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::curve::{self, ArcClass, MinimalPosition, SignData};
use crate::error::{Error, Result};
use crate::mcg::{self, Normalizer, Twist, TwistWord};
use crate::open_book::{destabilize, OpenBook};
use crate::surface::{HalfEdge, Letter, Surface};
use crate::word;

#[derive(Clone, Debug, Serialize)]
pub struct SteinCertificate {
    /// Positive word equal to the monodromy.
    pub witness: TwistWord,
    pub transcript: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OvertwistedCertificate {
    pub arc: ArcClass,
    pub image: ArcClass,
    pub sign_data: SignData,
    pub i_value: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rejection {
    NegativeLetter(usize),
    SeparatingNotSubstitutable(usize),
    NotEqual,
    /// The arc and its image are isotopic.
    Inconclusive,
    NegativeIndex(i32),
    PositiveIntersection,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NegativeLetter(i) => write!(f, "letter {} is a left-handed twist", i + 1),
            Rejection::SeparatingNotSubstitutable(i) => {
                write!(f, "letter {} twists about a separating curve with no chain substitute", i + 1)
            }
            Rejection::NotEqual => write!(f, "candidate is not equal to the monodromy"),
            Rejection::Inconclusive => write!(f, "inconclusive: the arc is isotopic to its image"),
            Rejection::NegativeIndex(i) => write!(f, "i(b, φ(b)) = {i} < 0"),
            Rejection::PositiveIntersection => write!(f, "b and φ(b) have a positive intersection point"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Check<C> {
    Accepted(C),
    Rejected(Rejection),
}

impl<C> Check<C> {
    pub fn accepted(self) -> Option<C> {
        match self {
            Check::Accepted(c) => Some(c),
            Check::Rejected(_) => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, Check::Accepted(_))
    }
}

fn letter_name(s: &Surface, t: &Twist) -> String {
    format!("{}({})", if t.handedness > 0 { "R" } else { "L" }, s.format_word(t.curve.word()))
}

/// Positive factorization check. Separating letters bounding a standard
/// one-boundary piece are replaced by chain words inside the piece.
pub fn check_positive_factorization(ob: &OpenBook, candidate: &TwistWord) -> Result<Check<SteinCertificate>> {
    let s = ob.page();
    if candidate.surface_id() != s.id() {
        return Err(Error::SurfaceMismatch);
    }
    let mut transcript = Vec::new();
    let mut letters = Vec::new();
    let mut normalizer = None;
    for (i, t) in candidate.letters().iter().enumerate() {
        if t.curve.is_trivial() {
            transcript.push(format!("letter {}: trivial curve dropped", i + 1));
            continue;
        }
        if t.handedness < 0 {
            return Ok(Check::Rejected(Rejection::NegativeLetter(i)));
        }
        if t.curve.boundary_component(s).is_some() {
            transcript.push(format!("letter {}: {} is boundary parallel", i + 1, letter_name(s, t)));
            letters.push(t.clone());
            continue;
        }
        if !curve::is_separating(s, &t.curve)? {
            letters.push(t.clone());
            continue;
        }
        if normalizer.is_none() {
            normalizer = Normalizer::with_limit(s, 20_000).ok();
        }
        let sub = match normalizer.as_mut() {
            Some(n) => n.separating_as_chain(&t.curve).ok().flatten(),
            None => None,
        };
        match sub {
            Some(w) => {
                transcript.push(format!(
                    "letter {}: {} replaced by a chain word of {} positive twists",
                    i + 1,
                    letter_name(s, t),
                    w.len()
                ));
                letters.extend(w.letters().iter().cloned());
            }
            None => return Ok(Check::Rejected(Rejection::SeparatingNotSubstitutable(i))),
        }
    }
    let witness = TwistWord::new(s, letters)?;
    if !mcg::equal(s, &witness, ob.monodromy())? {
        return Ok(Check::Rejected(Rejection::NotEqual));
    }
    transcript.push("equal to the monodromy on every filling arc".to_string());
    Ok(Check::Accepted(SteinCertificate { witness, transcript }))
}

/// Swaps letters `i` and `i + 1` keeping the product: `A B = (A B A^{-1}) A`
/// when `left` and `A B = B (B^{-1} A B)` otherwise.
fn swap(s: &Surface, w: &[Twist], i: usize, left: bool) -> Vec<Twist> {
    let (a, b) = (&w[i], &w[i + 1]);
    let mut out = w.to_vec();
    if left {
        let img = curve::apply_twist_trusted(s, &b.curve, &a.curve, a.handedness as i32);
        out[i] = Twist::new(&img, b.handedness);
        out[i + 1] = a.clone();
    } else {
        let img = curve::apply_twist_trusted(s, &a.curve, &b.curve, -b.handedness as i32);
        out[i] = b.clone();
        out[i + 1] = Twist::new(&img, a.handedness);
    }
    out
}

/// Bounded rewriting search for a positive factorization.
pub fn search_stein_certificate(ob: &OpenBook, budget: usize) -> Result<Option<SteinCertificate>> {
    let s = ob.page();
    let w = ob.monodromy();
    if let Check::Accepted(c) = check_positive_factorization(ob, w)? {
        return Ok(Some(c));
    }
    if s.boundary_count() == 1 && s.genus() >= 1 && s.is_canonical() {
        let p = mcg::positify(s, w)?;
        if p.is_positive() {
            if let Check::Accepted(mut c) = check_positive_factorization(ob, &p)? {
                c.transcript.insert(0, "rewritten by chain substitutions".to_string());
                return Ok(Some(c));
            }
        }
    }
    const STATES: usize = 5_000;
    let mut seen: HashSet<Vec<Twist>> = HashSet::new();
    let mut queue = VecDeque::from([(w.letters().to_vec(), 0usize)]);
    seen.insert(w.letters().to_vec());
    while let Some((cur, depth)) = queue.pop_front() {
        if depth >= budget {
            continue;
        }
        let mut next = Vec::new();
        for i in 0..cur.len().saturating_sub(1) {
            if cur[i].curve == cur[i + 1].curve && cur[i].handedness == -cur[i + 1].handedness {
                let mut v = cur.clone();
                v.drain(i..i + 2);
                next.push(v);
            }
            if cur[i].handedness < 0 || cur[i + 1].handedness < 0 {
                next.push(swap(s, &cur, i, true));
                next.push(swap(s, &cur, i, false));
            }
        }
        for v in next {
            if !seen.insert(v.clone()) {
                continue;
            }
            if v.iter().all(|t| t.handedness > 0) {
                let cand = TwistWord::new(s, v.clone())?;
                if let Check::Accepted(mut c) = check_positive_factorization(ob, &cand)? {
                    c.transcript.insert(0, format!("found after {} rewrites", depth + 1));
                    return Ok(Some(c));
                }
            }
            if seen.len() > STATES {
                return Ok(None);
            }
            queue.push_back((v, depth + 1));
        }
    }
    Ok(None)
}

fn signs_for(s: &Surface, w: &TwistWord, b: &ArcClass) -> Result<(ArcClass, MinimalPosition)> {
    let img = mcg::act_on(s, w, b)?;
    let mp = curve::minimal_position_signs(s, b, &img)?;
    Ok((img, mp))
}

/// Checks whether `b` is a sobering arc.
pub fn check_sobering(ob: &OpenBook, b: &ArcClass) -> Result<Check<OvertwistedCertificate>> {
    let s = ob.page();
    if !curve::is_simple_arc_class(s, b) {
        return Err(Error::NotSimple(s.format_word(b.letters())));
    }
    let (img, mp) = signs_for(s, ob.monodromy(), b)?;
    let sd = match mp {
        MinimalPosition::Isotopic => return Ok(Check::Rejected(Rejection::Inconclusive)),
        MinimalPosition::Transverse(sd) => sd,
    };
    let verdict = |sd: &SignData| -> Option<Rejection> {
        if sd.i_value() < 0 {
            Some(Rejection::NegativeIndex(sd.i_value()))
        } else if sd.has_positive_interior() {
            Some(Rejection::PositiveIntersection)
        } else {
            None
        }
    };
    // the definition does not depend on the orientation of b
    let (_, mp_rev) = signs_for(s, ob.monodromy(), &b.reversed())?;
    if let MinimalPosition::Transverse(rev) = &mp_rev {
        if verdict(rev).is_some() != verdict(&sd).is_some() {
            return Err(Error::Inconsistent("sobering verdict depends on the orientation of the arc".into()));
        }
    }
    if let Some(r) = verdict(&sd) {
        return Ok(Check::Rejected(r));
    }
    Ok(Check::Accepted(OvertwistedCertificate { arc: b.clone(), image: img, i_value: sd.i_value(), sign_data: sd }))
}

/// Simple arcs by (endpoints, length, letter ranks) up to `budget` letters.
pub fn enumerate_arcs(s: &Surface, budget: usize) -> Vec<ArcClass> {
    let r = s.rank();
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..budget {
        let mut next = Vec::new();
        for w in &layer {
            for rank in 0..2 * r {
                let l = Letter::new(rank / 2, rank % 2 == 1);
                if w.last().is_some_and(|p| *p == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let m = s.marked_count();
    let mut out = Vec::new();
    for p in 0..m {
        for q in p + 1..m {
            for w in &words {
                if let Ok(a) = ArcClass::new(s, p, w, q) {
                    out.push(a);
                }
            }
        }
    }
    out
}

pub fn search_sobering_arc(ob: &OpenBook, budget: usize) -> Result<Option<OvertwistedCertificate>> {
    for a in enumerate_arcs(ob.page(), budget) {
        if let Check::Accepted(c) = check_sobering(ob, &a)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Evidence that a book is a negative stabilization.
#[derive(Clone, Debug)]
pub struct Destabilization {
    /// Spine loop running over the handle.
    pub edge: usize,
    /// The stabilizing twist, moved to the right end of the word.
    pub twist: Twist,
    /// Co-core of the handle, a sobering arc.
    pub arc: Option<OvertwistedCertificate>,
    pub destabilized: OpenBook,
}

/// Arcs isotopic to a co-core of loop `e`, slid to marked points.
fn cocore_candidates(s: &Surface, e: usize) -> Vec<ArcClass> {
    let g = s.spine();
    let bare = g.bare_rotation();
    let n = bare.len();
    let p = bare.iter().position(|h| *h == HalfEdge::Out(e as u32)).unwrap();
    let before = bare[(p + n - 1) % n];
    let after = HalfEdge::Out(e as u32);
    let locate = |name: HalfEdge| -> (usize, usize) {
        for (j, c) in g.boundary_cycles().iter().enumerate() {
            if let Some(k) = c.corners.iter().position(|h| *h == name) {
                return (j, k);
            }
        }
        unreachable!("every corner lies on a boundary cycle")
    };
    let walks = |j: usize, k: usize| -> Vec<Vec<Letter>> {
        let w = &g.boundary_cycles()[j].word;
        vec![w[..k].to_vec(), word::inverse(&w[k..])]
    };
    let (j1, k1) = locate(before);
    let (j2, k2) = locate(after);
    let mut out = Vec::new();
    for w1 in walks(j1, k1) {
        for w2 in walks(j2, k2) {
            let mut letters = w1.clone();
            letters.extend(word::inverse(&w2));
            for s1 in [2 * j1, 2 * j1 + 1] {
                for s2 in [2 * j2, 2 * j2 + 1] {
                    if s1 == s2 {
                        continue;
                    }
                    if let Ok(a) = ArcClass::new(s, s1, &letters, s2) {
                        if !out.contains(&a) {
                            out.push(a);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Looks for a left-handed letter which, pushed to the right end, twists
/// about a curve crossing some spine loop exactly once while the remaining
/// letters avoid that loop.
pub fn detect_negative_stabilization(ob: &OpenBook, budget: usize) -> Result<Option<Destabilization>> {
    let s = ob.page();
    let letters = ob.monodromy().letters();
    for i in (0..letters.len()).rev() {
        if letters[i].handedness > 0 {
            continue;
        }
        let suffix = TwistWord::new(s, letters[i + 1..].to_vec())?;
        let moved = mcg::act_on(s, &mcg::inverse(&suffix), &letters[i].curve)?;
        let mut rest_letters = letters[..i].to_vec();
        rest_letters.extend_from_slice(&letters[i + 1..]);
        let rest = TwistWord::new(s, rest_letters)?;
        for e in (0..s.rank()).rev() {
            let count = moved.word().iter().filter(|l| l.edge() == e).count();
            if count != 1 {
                continue;
            }
            if rest.letters().iter().any(|t| t.curve.word().iter().any(|l| l.edge() == e)) {
                continue;
            }
            let destabilized = destabilize(ob, e, &rest)?;
            let mut arc = None;
            for b in cocore_candidates(s, e) {
                if let Check::Accepted(c) = check_sobering(ob, &b)? {
                    arc = Some(c);
                    break;
                }
            }
            if arc.is_none() {
                arc = search_sobering_arc(ob, budget)?;
            }
            return Ok(Some(Destabilization { edge: e, twist: Twist::new(&moved, -1), arc, destabilized }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct FillabilityReport {
    pub stein: Option<SteinCertificate>,
    pub overtwisted: Option<OvertwistedCertificate>,
    pub note: String,
}

impl FillabilityReport {
    pub fn stein_certified(&self) -> bool {
        self.stein.is_some()
    }

    pub fn overtwisted_certified(&self) -> bool {
        self.overtwisted.is_some()
    }

    pub fn inconclusive(&self) -> bool {
        self.stein.is_none() && self.overtwisted.is_none()
    }
}

pub fn fillability_report(ob: &OpenBook, stein_budget: usize, arc_budget: usize) -> Result<FillabilityReport> {
    let stein = search_stein_certificate(ob, stein_budget)?;
    let overtwisted = search_sobering_arc(ob, arc_budget)?;
    let note = match (&stein, &overtwisted) {
        (Some(_), Some(_)) => {
            return Err(Error::Inconsistent(
                "both a positive factorization and a sobering arc were found; Stein fillable structures are tight".into(),
            ))
        }
        (Some(_), None) => "Stein fillable, hence strongly and weakly fillable and tight".to_string(),
        (None, Some(_)) => "overtwisted: a sobering arc exists".to_string(),
        (None, None) => "inconclusive at these budgets: no certificate is not a proof of anything".to_string(),
    };
    Ok(FillabilityReport { stein, overtwisted, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::open_book::{attaching_arc, hopf_band, make_open_book, stabilize};
    use crate::surface::Surface;

    #[test]
    fn hopf_bands() {
        let neg = hopf_band(-1).unwrap();
        let b = ArcClass::new(neg.page(), 0, &[], 2).unwrap();
        let c = check_sobering(&neg, &b).unwrap().accepted().unwrap();
        assert_eq!(c.sign_data.endpoint_signs, (1, 1));
        let pos = hopf_band(1).unwrap();
        assert!(!check_sobering(&pos, &b).unwrap().is_accepted());
        assert!(search_sobering_arc(&pos, 8).unwrap().is_none());
        assert!(search_stein_certificate(&pos, 2).unwrap().is_some());
        assert!(search_stein_certificate(&neg, 3).unwrap().is_none());
    }

    #[test]
    fn identity_is_inconclusive() {
        let s = Surface::new(0, 2).unwrap();
        let ob = make_open_book(&s, &TwistWord::identity(&s)).unwrap();
        let b = ArcClass::new(&s, 0, &[], 2).unwrap();
        assert!(matches!(check_sobering(&ob, &b).unwrap(), Check::Rejected(Rejection::Inconclusive)));
    }

    #[test]
    fn negative_hopf_destabilizes_to_disk() {
        let neg = hopf_band(-1).unwrap();
        let d = detect_negative_stabilization(&neg, 2).unwrap().unwrap();
        assert_eq!(d.destabilized.page().rank(), 0);
        assert!(d.arc.is_some());
    }

    #[test]
    fn stabilized_trefoil() {
        let s = Surface::new(1, 1).unwrap();
        let ch = crate::standard::standard_curves(&s).unwrap().chain;
        let w = TwistWord::new(&s, vec![Twist::new(&ch[0], 1), Twist::new(&ch[1], 1)]).unwrap();
        let ob = make_open_book(&s, &w).unwrap();
        assert!(detect_negative_stabilization(&ob, 2).unwrap().is_none());
        let st = stabilize(&ob, &attaching_arc(&s, 0, 0).unwrap(), -1).unwrap();
        let d = detect_negative_stabilization(&st, 4).unwrap().unwrap();
        assert_eq!(d.destabilized.page(), &s);
        assert!(mcg::equal(&s, d.destabilized.monodromy(), &w).unwrap());
        assert!(d.arc.is_some());
    }
}
