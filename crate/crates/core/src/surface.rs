//! Pages of open books, modelled by one-vertex ribbon graphs.
//!
//! A surface with `r = 2g + n - 1` spine loops deformation retracts onto a
//! single vertex with `r` loops attached in a fixed counterclockwise cyclic
//! order. Every edge-path in this module is a word in the loops, and every
//! geometric question about curves is answered from the cyclic order alone.
//!
//! Each boundary component carries two marked points. They are leaves
//! ("stubs") inserted into the rotation at the first corner of the boundary
//! cycle, and arcs run between them.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One traversal of a spine loop, forwards or backwards.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Letter(i32);

impl Letter {
    pub fn new(edge: usize, inverse: bool) -> Self {
        let v = edge as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn edge(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Half-edge through which the path leaves the vertex.
    pub(crate) fn departure(self) -> HalfEdge {
        let e = self.edge() as u32;
        if self.is_inverse() {
            HalfEdge::In(e)
        } else {
            HalfEdge::Out(e)
        }
    }

    /// Half-edge through which the path comes back into the vertex.
    pub(crate) fn arrival(self) -> HalfEdge {
        self.inverse().departure()
    }

    /// Sort key used for canonical rotations: edge-major, positive first.
    pub(crate) fn rank(self) -> u32 {
        2 * self.edge() as u32 + self.is_inverse() as u32
    }

    pub(crate) fn from_departure(h: HalfEdge) -> Option<Letter> {
        match h {
            HalfEdge::Out(e) => Some(Letter::new(e as usize, false)),
            HalfEdge::In(e) => Some(Letter::new(e as usize, true)),
            HalfEdge::Stub(_) => None,
        }
    }
}

/// An end of a spine loop at the vertex, or a marked boundary point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HalfEdge {
    /// Start of loop `e`.
    Out(u32),
    /// End of loop `e`.
    In(u32),
    /// Marked point `m` sitting in a corner.
    Stub(u32),
}

impl HalfEdge {
    pub(crate) fn twin(self) -> HalfEdge {
        match self {
            HalfEdge::Out(e) => HalfEdge::In(e),
            HalfEdge::In(e) => HalfEdge::Out(e),
            s @ HalfEdge::Stub(_) => s,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceId(pub u64);

/// A marked point on the boundary, the endpoint site for arcs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MarkedPoint {
    /// Boundary component, 0-based.
    pub boundary: usize,
    /// 0 or 1: which of the two points on that component.
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycle {
    /// Word read while walking the component with the surface on the left.
    pub word: Vec<Letter>,
    /// Corners visited, each named by the half-edge preceding it.
    pub corners: Vec<HalfEdge>,
}

/// Fat graph spine: one vertex, loops, stubs.
#[derive(Clone, Debug)]
pub struct FatGraph {
    loops: usize,
    /// Rotation without stubs.
    bare: Vec<HalfEdge>,
    /// Rotation with stubs, counterclockwise.
    rotation: Vec<HalfEdge>,
    out_slot: Vec<usize>,
    in_slot: Vec<usize>,
    stub_slot: Vec<usize>,
    boundary: Vec<BoundaryCycle>,
    marked: Vec<MarkedPoint>,
}

impl FatGraph {
    /// Builds a spine from the counterclockwise order of loop ends.
    pub fn from_rotation(bare: Vec<HalfEdge>) -> Result<FatGraph> {
        let loops = bare.len() / 2;
        let mut seen = vec![[false; 2]; loops];
        for h in &bare {
            match *h {
                HalfEdge::Out(e) if (e as usize) < loops => seen[e as usize][0] = true,
                HalfEdge::In(e) if (e as usize) < loops => seen[e as usize][1] = true,
                HalfEdge::Stub(_) => {
                    return Err(Error::Inconsistent("stub in bare rotation".into()))
                }
                other => return Err(Error::Inconsistent(format!("bad half-edge {other:?}"))),
            }
        }
        if bare.len() % 2 != 0 || seen.iter().any(|s| !s[0] || !s[1]) {
            return Err(Error::Inconsistent("rotation must list both ends of every loop".into()));
        }

        let boundary = trace_boundary(&bare);

        let mut rotation = Vec::with_capacity(bare.len() + 2 * boundary.len());
        let mut marked = Vec::with_capacity(2 * boundary.len());
        if bare.is_empty() {
            rotation.push(HalfEdge::Stub(0));
            rotation.push(HalfEdge::Stub(1));
            marked.push(MarkedPoint { boundary: 0, slot: 0 });
            marked.push(MarkedPoint { boundary: 0, slot: 1 });
        } else {
            let mut owner = vec![None; bare.len()];
            for (j, cyc) in boundary.iter().enumerate() {
                let first = cyc.corners[0];
                let p = bare.iter().position(|h| *h == first).unwrap();
                owner[p] = Some(j);
            }
            for j in 0..boundary.len() {
                marked.push(MarkedPoint { boundary: j, slot: 0 });
                marked.push(MarkedPoint { boundary: j, slot: 1 });
            }
            for (p, h) in bare.iter().enumerate() {
                rotation.push(*h);
                if let Some(j) = owner[p] {
                    rotation.push(HalfEdge::Stub(2 * j as u32));
                    rotation.push(HalfEdge::Stub(2 * j as u32 + 1));
                }
            }
        }

        let mut out_slot = vec![0; loops];
        let mut in_slot = vec![0; loops];
        let mut stub_slot = vec![0; marked.len()];
        for (p, h) in rotation.iter().enumerate() {
            match *h {
                HalfEdge::Out(e) => out_slot[e as usize] = p,
                HalfEdge::In(e) => in_slot[e as usize] = p,
                HalfEdge::Stub(m) => stub_slot[m as usize] = p,
            }
        }

        Ok(FatGraph { loops, bare, rotation, out_slot, in_slot, stub_slot, boundary, marked })
    }

    pub fn loop_count(&self) -> usize {
        self.loops
    }

    pub fn bare_rotation(&self) -> &[HalfEdge] {
        &self.bare
    }

    pub fn rotation(&self) -> &[HalfEdge] {
        &self.rotation
    }

    pub fn boundary_cycles(&self) -> &[BoundaryCycle] {
        &self.boundary
    }

    pub fn marked_points(&self) -> &[MarkedPoint] {
        &self.marked
    }

    pub(crate) fn slot(&self, h: HalfEdge) -> usize {
        match h {
            HalfEdge::Out(e) => self.out_slot[e as usize],
            HalfEdge::In(e) => self.in_slot[e as usize],
            HalfEdge::Stub(m) => self.stub_slot[m as usize],
        }
    }

    /// Counterclockwise offset of `h` from `reference` at the vertex.
    pub(crate) fn offset(&self, reference: HalfEdge, h: HalfEdge) -> usize {
        let n = self.rotation.len();
        (self.slot(h) + n - self.slot(reference)) % n
    }

    /// Betti number of the spine: one vertex, `loops` edges.
    pub fn betti(&self) -> usize {
        self.loops
    }
}

fn trace_boundary(bare: &[HalfEdge]) -> Vec<BoundaryCycle> {
    if bare.is_empty() {
        return vec![BoundaryCycle { word: vec![], corners: vec![] }];
    }
    let n = bare.len();
    let pos = |h: HalfEdge| bare.iter().position(|x| *x == h).unwrap();
    let next = |h: HalfEdge| bare[(pos(h) + 1) % n];
    let mut done = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut word = Vec::new();
        let mut corners = Vec::new();
        let mut h = bare[start];
        loop {
            let p = pos(h);
            if done[p] {
                break;
            }
            done[p] = true;
            corners.push(h);
            let leave = next(h);
            word.push(Letter::from_departure(leave).unwrap());
            h = leave.twin();
        }
        cycles.push(BoundaryCycle { word, corners });
    }
    cycles
}

/// A compact oriented surface with nonempty boundary, carried by its spine.
#[derive(Clone, Debug)]
pub struct Surface {
    genus: usize,
    boundary_count: usize,
    spine: FatGraph,
    names: Vec<String>,
    id: SurfaceId,
    canonical: bool,
}

impl PartialEq for Surface {
    fn eq(&self, other: &Self) -> bool {
        self.spine.bare == other.spine.bare
    }
}

impl Eq for Surface {}

impl Surface {
    /// Surface with the canonical spine for `(g, n)`.
    ///
    /// Loop order is `x1 y1 x1' y1' ... xg yg xg' yg' z1 z1' ... z(n-1) z(n-1)'`
    /// where primes mark loop ends: each handle pair interleaves, each
    /// boundary loop is a consecutive pair.
    pub fn new(genus: usize, boundary_count: usize) -> Result<Surface> {
        if boundary_count == 0 {
            return Err(Error::NoBoundary);
        }
        let mut bare = Vec::new();
        let mut names = Vec::new();
        for k in 0..genus {
            let x = 2 * k as u32;
            let y = x + 1;
            bare.extend([HalfEdge::Out(x), HalfEdge::Out(y), HalfEdge::In(x), HalfEdge::In(y)]);
            names.push(format!("x{}", k + 1));
            names.push(format!("y{}", k + 1));
        }
        for j in 0..boundary_count - 1 {
            let z = (2 * genus + j) as u32;
            bare.extend([HalfEdge::Out(z), HalfEdge::In(z)]);
            names.push(format!("z{}", j + 1));
        }
        let mut s = Surface::from_spine(bare, names)?;
        s.canonical = true;
        debug_assert_eq!((s.genus, s.boundary_count), (genus, boundary_count));
        Ok(s)
    }

    /// Surface carried by an arbitrary one-vertex rotation.
    pub fn from_spine(bare: Vec<HalfEdge>, names: Vec<String>) -> Result<Surface> {
        let spine = FatGraph::from_rotation(bare)?;
        let n = spine.boundary.len();
        let r = spine.loops;
        // chi = 1 - r = 2 - 2g - n
        let twice_genus = 1 + r - n;
        if twice_genus % 2 != 0 {
            return Err(Error::Inconsistent("spine has odd Euler characteristic defect".into()));
        }
        let mut names = names;
        names.resize_with(r, || String::new());
        for (i, nm) in names.iter_mut().enumerate() {
            if nm.is_empty() {
                *nm = format!("e{}", i + 1);
            }
        }
        let mut hasher = DefaultHasher::new();
        for h in &spine.bare {
            h.hash(&mut hasher);
        }
        let id = SurfaceId(hasher.finish());
        Ok(Surface {
            genus: twice_genus / 2,
            boundary_count: n,
            spine,
            names,
            id,
            canonical: false,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_count
    }

    pub fn spine(&self) -> &FatGraph {
        &self.spine
    }

    pub fn id(&self) -> SurfaceId {
        self.id
    }

    /// Whether the spine is the canonical one built by [`Surface::new`].
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn edge_names(&self) -> &[String] {
        &self.names
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Rank of first homology, `2g + n - 1`.
    pub fn rank(&self) -> usize {
        self.spine.loops
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count as i64
    }

    /// Index of the marked point `slot` on boundary component `boundary`.
    pub fn marked_point(&self, boundary: usize, slot: usize) -> Result<usize> {
        if boundary >= self.boundary_count {
            return Err(Error::NoSuchBoundary(boundary));
        }
        if slot > 1 {
            return Err(Error::NoSuchMarkedPoint(2 * boundary + slot));
        }
        Ok(2 * boundary + slot)
    }

    pub fn marked_count(&self) -> usize {
        self.spine.marked.len()
    }

    pub fn boundary_word(&self, j: usize) -> Result<&[Letter]> {
        self.spine
            .boundary
            .get(j)
            .map(|c| c.word.as_slice())
            .ok_or(Error::NoSuchBoundary(j))
    }

    pub fn format_letter(&self, l: Letter) -> String {
        let base = &self.names[l.edge()];
        if l.is_inverse() {
            format!("{base}^-1")
        } else {
            base.clone()
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        let parts: Vec<_> = w.iter().map(|l| self.format_letter(*l)).collect();
        format!("[{}]", parts.join(", "))
    }

    pub(crate) fn check_letters(&self, w: &[Letter]) -> Result<()> {
        for l in w {
            if l.edge() >= self.rank() {
                return Err(Error::NoSuchEdge(l.edge()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}, {})", self.genus, self.boundary_count)
    }
}

/// `2 - 2g - n`.
pub fn euler_characteristic(s: &Surface) -> i64 {
    s.euler_characteristic()
}

/// Canonical surface of genus `g` with `n` boundary components.
pub fn make_surface(g: usize, n: usize) -> Result<Surface> {
    Surface::new(g, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_closed_surfaces() {
        assert_eq!(make_surface(2, 0).unwrap_err(), Error::NoBoundary);
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&make_surface(0, 1).unwrap()), 1);
        assert_eq!(euler_characteristic(&make_surface(1, 1).unwrap()), -1);
        assert_eq!(euler_characteristic(&make_surface(2, 3).unwrap()), -5);
    }

    #[test]
    fn annulus_spine() {
        let a = make_surface(0, 2).unwrap();
        assert_eq!(a.spine().betti(), 1);
        assert_eq!(a.boundary_count(), 2);
        assert_eq!(a.boundary_word(0).unwrap(), &[Letter::new(0, true)]);
        assert_eq!(a.boundary_word(1).unwrap(), &[Letter::new(0, false)]);
    }

    #[test]
    fn disk_has_two_marked_points_and_no_loops() {
        let d = make_surface(0, 1).unwrap();
        assert_eq!(d.rank(), 0);
        assert_eq!(d.marked_count(), 2);
        assert!(d.boundary_word(0).unwrap().is_empty());
    }

    #[test]
    fn spine_counts_for_small_surfaces() {
        for g in 0..=4 {
            for n in 1..=4 {
                let s = make_surface(g, n).unwrap();
                assert_eq!(s.spine().betti(), 2 * g + n - 1);
                assert_eq!(s.spine().boundary_cycles().len(), n);
                assert_eq!(s.genus(), g);
                // every half-edge bounds exactly one corner
                let corners: usize =
                    s.spine().boundary_cycles().iter().map(|c| c.corners.len()).sum();
                assert_eq!(corners, 2 * s.rank());
            }
        }
    }

    #[test]
    fn letters_round_trip() {
        let l = Letter::new(3, true);
        assert_eq!(l.edge(), 3);
        assert!(l.is_inverse());
        assert_eq!(l.inverse().inverse(), l);
        assert_eq!(Letter::from_departure(l.departure()), Some(l));
    }
}
