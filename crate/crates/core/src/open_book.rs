//! Abstract open books `(Σ, φ)` and the operations that preserve or change
//! the underlying 3-manifold in a controlled way.

use serde::{Deserialize, Serialize};

use crate::curve::{self, ArcClass, CurveClass};
use crate::error::{Error, Result};
use crate::mcg::{self, Twist, TwistWord};
use crate::snf::AbelianGroup;
use crate::standard::standard_curves;
use crate::surface::{HalfEdge, Letter, Surface};
use crate::word;

#[derive(Clone, Debug)]
pub struct OpenBook {
    page: Surface,
    monodromy: TwistWord,
    provenance: Vec<String>,
}

impl OpenBook {
    pub fn page(&self) -> &Surface {
        &self.page
    }

    pub fn monodromy(&self) -> &TwistWord {
        &self.monodromy
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn binding_components(&self) -> usize {
        self.page.boundary_count()
    }

    fn with(&self, page: Surface, monodromy: TwistWord, entry: String) -> OpenBook {
        let mut provenance = self.provenance.clone();
        provenance.push(entry);
        OpenBook { page, monodromy, provenance }
    }
}

pub fn make_open_book(page: &Surface, w: &TwistWord) -> Result<OpenBook> {
    if w.surface_id() != page.id() {
        return Err(Error::SurfaceMismatch);
    }
    Ok(OpenBook { page: page.clone(), monodromy: w.clone(), provenance: vec![format!("book on {page}")] })
}

/// Annulus page with one core twist.
pub fn hopf_band(handedness: i8) -> Result<OpenBook> {
    let page = Surface::new(0, 2)?;
    let core = CurveClass::new(&page, &[Letter::new(0, false)])?;
    let w = TwistWord::twist(&page, &core, handedness.signum() as i32)?;
    let mut ob = make_open_book(&page, &w)?;
    ob.provenance = vec![format!("hopf band {}", if handedness > 0 { "+" } else { "-" })];
    Ok(ob)
}

/// Re-expresses a curve on a page containing the old spine verbatim.
fn lift_curve(c: &CurveClass, to: &Surface, shift: usize) -> CurveClass {
    let w: Vec<Letter> = c.word().iter().map(|l| Letter::new(l.edge() + shift, l.is_inverse())).collect();
    CurveClass::from_reduced(to.id(), w)
}

fn lift_word(w: &TwistWord, to: &Surface, shift: usize) -> TwistWord {
    TwistWord::from_trusted(
        to.id(),
        w.letters().iter().map(|t| Twist::new(&lift_curve(&t.curve, to, shift), t.handedness)).collect(),
    )
}

fn edge_name(page: &Surface, used: &[String]) -> String {
    (page.rank() + 1..)
        .map(|k| format!("h{k}"))
        .find(|n| !used.contains(n))
        .unwrap()
}

/// Default attaching arc for a 1-handle between two boundary components:
/// the straight chord between their first marked points, or between the two
/// points of one component.
pub fn attaching_arc(page: &Surface, from: usize, to: usize) -> Result<ArcClass> {
    let m = page.marked_point(from, 0)?;
    let m2 = if from == to { page.marked_point(from, 1)? } else { page.marked_point(to, 0)? };
    ArcClass::new(page, m, &[], m2)
}

/// Stabilization along the arc `a`: a 1-handle is attached at the ends of
/// `a` and the monodromy becomes `φ ∘ D_c^{±1}` where `c` runs along `a` and
/// back over the handle.
pub fn stabilize(ob: &OpenBook, a: &ArcClass, handedness: i8) -> Result<OpenBook> {
    let page = &ob.page;
    if a.surface_id() != page.id() {
        return Err(Error::SurfaceMismatch);
    }
    if !curve::is_simple_arc_class(page, a) {
        return Err(Error::NotSimple(page.format_word(a.letters())));
    }
    let g = page.spine();
    let e = page.rank() as u32;
    let mut rotation = Vec::new();
    for h in g.rotation() {
        match *h {
            HalfEdge::Stub(m) if m as usize == a.start() => rotation.push(HalfEdge::Out(e)),
            HalfEdge::Stub(m) if m as usize == a.end() => rotation.push(HalfEdge::In(e)),
            HalfEdge::Stub(_) => {}
            other => rotation.push(other),
        }
    }
    let mut names = page.edge_names().to_vec();
    names.push(edge_name(page, &names));
    let new_page = canonical_if_possible(rotation, names)?;
    let mut letters = a.letters().to_vec();
    letters.push(Letter::new(e as usize, true));
    let c = CurveClass::new(&new_page, &letters)?;
    let lifted = lift_word(&ob.monodromy, &new_page, 0);
    let w = mcg::compose(&lifted, &TwistWord::twist(&new_page, &c, handedness.signum() as i32)?)?;
    let sign = if handedness > 0 { "+" } else { "-" };
    Ok(ob.with(
        new_page.clone(),
        w,
        format!(
            "stabilize {sign} along {} from {} to {}: page {new_page}",
            page.format_word(a.letters()),
            a.start(),
            a.end()
        ),
    ))
}

fn rotation_between(rot: &[HalfEdge], after: HalfEdge, before: HalfEdge) -> Vec<HalfEdge> {
    let n = rot.len();
    let p = rot.iter().position(|h| *h == after).unwrap();
    let mut out = Vec::new();
    let mut k = (p + 1) % n;
    while rot[k] != before {
        if !matches!(rot[k], HalfEdge::Stub(_)) {
            out.push(rot[k]);
        }
        k = (k + 1) % n;
    }
    out
}

fn shift_half_edge(h: HalfEdge, by: u32) -> HalfEdge {
    match h {
        HalfEdge::Out(e) => HalfEdge::Out(e + by),
        HalfEdge::In(e) => HalfEdge::In(e + by),
        s => s,
    }
}

/// Plumbing along two chord arcs.
///
/// Each arc must be the straight chord between two marked points at the
/// spine vertex; the rectangle around it is then a neighbourhood of the
/// vertex cut along the chord, and the glued spine is again a one-vertex
/// ribbon graph: the half-edges of the second page are spliced into the two
/// sectors cut out by the first chord.
pub fn murasugi_sum(ob0: &OpenBook, r0: &ArcClass, ob1: &OpenBook, r1: &ArcClass) -> Result<OpenBook> {
    for (ob, r) in [(ob0, r0), (ob1, r1)] {
        if r.surface_id() != ob.page.id() {
            return Err(Error::SurfaceMismatch);
        }
        if !r.letters().is_empty() {
            return Err(Error::Unsupported("plumbing arcs must be chords at the spine vertex".into()));
        }
    }
    let rot0 = ob0.page.spine().rotation();
    let rot1 = ob1.page.spine().rotation();
    let stub = |m: usize| HalfEdge::Stub(m as u32);
    let b0 = rotation_between(rot0, stub(r0.start()), stub(r0.end()));
    let a0 = rotation_between(rot0, stub(r0.end()), stub(r0.start()));
    let shift = ob0.page.rank() as u32;
    let e1: Vec<HalfEdge> =
        rotation_between(rot1, stub(r1.start()), stub(r1.end())).into_iter().map(|h| shift_half_edge(h, shift)).collect();
    let w1: Vec<HalfEdge> =
        rotation_between(rot1, stub(r1.end()), stub(r1.start())).into_iter().map(|h| shift_half_edge(h, shift)).collect();
    let mut bare = b0;
    bare.extend(e1);
    bare.extend(a0);
    bare.extend(w1);
    let mut names = ob0.page.edge_names().to_vec();
    for n in ob1.page.edge_names() {
        let mut n = n.clone();
        while names.contains(&n) {
            n.push('\'');
        }
        names.push(n);
    }
    let page = canonical_if_possible(bare, names)?;
    let w = mcg::compose(&lift_word(&ob0.monodromy, &page, 0), &lift_word(&ob1.monodromy, &page, shift as usize))?;
    let mut provenance = ob0.provenance.clone();
    provenance.extend(ob1.provenance.iter().map(|p| format!("  {p}")));
    provenance.push(format!("murasugi sum: page {page}"));
    Ok(OpenBook { page, monodromy: w, provenance })
}

/// Contact `(±1)`-surgery on a Legendrian realised on a page:
/// the monodromy becomes `φ ∘ D_L^{∓1}`.
pub fn page_surgery(ob: &OpenBook, l: &CurveClass, coefficient: i8) -> Result<OpenBook> {
    if coefficient.abs() != 1 {
        return Err(Error::Unsupported("surgery coefficient must be +1 or -1".into()));
    }
    let t = TwistWord::twist(&ob.page, l, -coefficient as i32)?;
    let w = mcg::compose(&ob.monodromy, &t)?;
    let entry = format!("surgery on {} with coefficient {:+}", ob.page.format_word(l.word()), coefficient);
    Ok(ob.with(ob.page.clone(), w, entry))
}

/// Relation matrix for `H_1(M_φ)` and the classes `δ_j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyPresentation {
    /// Generators: page loops `x_1 .. x_r`, then the circle class `t`.
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
    /// `δ_j` for each binding component, in page homology.
    pub boundary_classes: Vec<Vec<i64>>,
    pub group: AbelianGroup,
}

pub fn homology_presentation(ob: &OpenBook) -> Result<HomologyPresentation> {
    let s = &ob.page;
    let r = s.rank();
    let m = mcg::homology_action(s, &ob.monodromy)?;
    let mut relations = Vec::new();
    for i in 0..r {
        let mut row = vec![0i64; r + 1];
        for k in 0..r {
            row[k] = m[(k, i)] - i64::from(k == i);
        }
        relations.push(row);
    }
    let mut boundary_classes = Vec::new();
    let base = s.marked_point(0, 0)?;
    for j in 0..s.boundary_count() {
        // the loop a_j · φ(a_j)^{-1} for the straight chord a_j
        let delta = if j == 0 {
            vec![0i64; r]
        } else {
            let a = ArcClass::new(s, base, &[], s.marked_point(j, 0)?)?;
            let img = mcg::act_on(s, &ob.monodromy, &a)?;
            word::abelianize(img.letters(), r).into_iter().map(|x| -x).collect()
        };
        let mut row = delta.clone();
        row.push(1);
        relations.push(row);
        boundary_classes.push(delta);
    }
    let group = AbelianGroup::from_presentation(&relations, r + 1);
    Ok(HomologyPresentation { generators: r + 1, relations, boundary_classes, group })
}

pub fn first_homology(ob: &OpenBook) -> Result<AbelianGroup> {
    Ok(homology_presentation(ob)?.group)
}

pub fn is_homology_sphere(ob: &OpenBook) -> Result<bool> {
    Ok(first_homology(ob)?.is_trivial())
}

/// Positive stabilizations joining the first boundary component to the next
/// until the binding is connected.
pub fn connect_binding(ob: &OpenBook) -> Result<OpenBook> {
    let mut cur = ob.clone();
    while cur.page.boundary_count() > 1 {
        let a = attaching_arc(&cur.page, 0, 1)?;
        cur = stabilize(&cur, &a, 1)?;
    }
    Ok(cur)
}

/// Removes spine loop `e` from a book whose monodromy is `φ' ∘ D_c^{-1}`
/// (or `D_c^{+1}`) with `c` crossing `e` once and `φ'` avoiding `e`.
pub fn destabilize(ob: &OpenBook, e: usize, rest: &TwistWord) -> Result<OpenBook> {
    let s = &ob.page;
    if e >= s.rank() {
        return Err(Error::NoSuchEdge(e));
    }
    for t in rest.letters() {
        if t.curve.word().iter().any(|l| l.edge() == e) {
            return Err(Error::Hypothesis("remaining monodromy crosses the handle".into()));
        }
    }
    let drop = |h: HalfEdge| -> Option<HalfEdge> {
        let down = |x: u32| if x as usize > e { x - 1 } else { x };
        match h {
            HalfEdge::Out(x) if x as usize == e => None,
            HalfEdge::In(x) if x as usize == e => None,
            HalfEdge::Out(x) => Some(HalfEdge::Out(down(x))),
            HalfEdge::In(x) => Some(HalfEdge::In(down(x))),
            HalfEdge::Stub(_) => None,
        }
    };
    let bare: Vec<HalfEdge> = s.spine().bare_rotation().iter().filter_map(|h| drop(*h)).collect();
    let mut names = s.edge_names().to_vec();
    names.remove(e);
    let page = canonical_if_possible(bare, names)?;
    let letters = rest
        .letters()
        .iter()
        .map(|t| {
            let w: Vec<Letter> = t
                .curve
                .word()
                .iter()
                .map(|l| Letter::new(if l.edge() > e { l.edge() - 1 } else { l.edge() }, l.is_inverse()))
                .collect();
            Twist::new(&CurveClass::from_reduced(page.id(), w), t.handedness)
        })
        .collect();
    let w = TwistWord::from_trusted(page.id(), letters);
    Ok(ob.with(page.clone(), w, format!("destabilize along loop {}: page {page}", s.edge_names()[e])))
}

/// Rotations are read from the start of the first loop; spines that then
/// coincide with a canonical one keep their standard names.
fn canonical_if_possible(mut bare: Vec<HalfEdge>, names: Vec<String>) -> Result<Surface> {
    if let Some(p) = bare.iter().position(|h| *h == HalfEdge::Out(0)) {
        bare.rotate_left(p);
    }
    let s = if bare.is_empty() { Surface::new(0, 1)? } else { Surface::from_spine(bare, names)? };
    let c = Surface::new(s.genus(), s.boundary_count())?;
    Ok(if c == s { c } else { s })
}

/// Standard book with page `(g, n)` and monodromy from chain indices.
pub fn chain_book(g: usize, n: usize, chain_powers: &[(usize, i32)]) -> Result<OpenBook> {
    let s = Surface::new(g, n)?;
    let sys = standard_curves(&s)?;
    let mut w = TwistWord::identity(&s);
    for &(i, p) in chain_powers {
        let c = sys.chain.get(i).ok_or(Error::NoSuchEdge(i))?;
        w = mcg::compose(&w, &TwistWord::twist(&s, c, p)?)?;
    }
    make_open_book(&s, &w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_books_are_connected_sums() {
        for (g, n) in [(0, 1), (0, 2), (1, 1), (1, 2), (2, 3)] {
            let s = Surface::new(g, n).unwrap();
            let ob = make_open_book(&s, &TwistWord::identity(&s)).unwrap();
            assert_eq!(first_homology(&ob).unwrap(), AbelianGroup { rank: 2 * g + n - 1, torsion: vec![] });
        }
    }

    #[test]
    fn lens_spaces_from_annulus() {
        let s = Surface::new(0, 2).unwrap();
        let c = CurveClass::new(&s, &[Letter::new(0, false)]).unwrap();
        for m in [-3i32, -1, 1, 2, 5] {
            let ob = make_open_book(&s, &TwistWord::twist(&s, &c, m).unwrap()).unwrap();
            assert_eq!(first_homology(&ob).unwrap().order(), Some(m.unsigned_abs() as u64));
        }
    }

    #[test]
    fn hopf_band_is_stabilized_disk() {
        let d = Surface::new(0, 1).unwrap();
        let disk = make_open_book(&d, &TwistWord::identity(&d)).unwrap();
        for h in [1i8, -1] {
            let a = attaching_arc(&d, 0, 0).unwrap();
            let st = stabilize(&disk, &a, h).unwrap();
            let hb = hopf_band(h).unwrap();
            assert_eq!(st.page(), hb.page());
            assert!(mcg::equal(hb.page(), st.monodromy(), hb.monodromy()).unwrap());
        }
    }

    #[test]
    fn plumbing_two_positive_bands_gives_trefoil() {
        let h = hopf_band(1).unwrap();
        let r = ArcClass::new(h.page(), 0, &[], 2).unwrap();
        let t = murasugi_sum(&h, &r, &h, &r).unwrap();
        assert_eq!((t.page().genus(), t.page().boundary_count()), (1, 1));
        assert!(is_homology_sphere(&t).unwrap());
    }

    #[test]
    fn connecting_the_annulus() {
        let s = Surface::new(0, 2).unwrap();
        let ob = make_open_book(&s, &TwistWord::identity(&s)).unwrap();
        let c = connect_binding(&ob).unwrap();
        assert_eq!((c.page().genus(), c.page().boundary_count()), (1, 1));
        assert_eq!(c.monodromy().len(), 1);
        assert_eq!(first_homology(&c).unwrap().rank, 1);
    }
}
