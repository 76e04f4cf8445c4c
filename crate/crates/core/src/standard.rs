//! The named curves of the canonical spine: the chain `a_1 .. a_2g`, the
//! boundary-parallel curves, and a filling system of arcs.

use crate::curve::{ArcClass, CurveClass};
use crate::error::Result;
use crate::surface::{Letter, Surface};

#[derive(Clone, Debug)]
pub struct NamedCurveSystem {
    /// `a_1 .. a_2g`; consecutive curves meet once, others are disjoint.
    pub chain: Vec<CurveClass>,
    /// A curve extending the chain to length `2g + 1` when `n >= 2`.
    pub extension: Option<CurveClass>,
    /// `c_1 .. c_n`, parallel to the boundary components in order.
    pub boundary_parallel: Vec<CurveClass>,
    /// Arcs whose images determine a mapping class.
    pub arcs: Vec<ArcClass>,
}

fn x(k: usize) -> Letter {
    Letter::new(2 * k, false)
}

fn y(k: usize) -> Letter {
    Letter::new(2 * k + 1, false)
}

/// Chain words on the canonical spine: `x1, y1`, then for each further
/// handle the link `x_k y_k x_(k+1)^-1 y_k^-1` followed by `y_(k+1)`.
fn chain_words(g: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for k in 0..g {
        out.push(if k == 0 {
            vec![x(0)]
        } else {
            vec![x(k - 1), y(k - 1), x(k).inverse(), y(k - 1).inverse()]
        });
        out.push(vec![y(k)]);
    }
    out
}

/// Arcs from the first marked point: one across each spine loop to the
/// second point on the same boundary, and one straight to every other point.
///
/// The images of these paths determine the action on the fundamental
/// groupoid with a base point on every boundary component, hence the
/// mapping class rel boundary.
pub fn filling_arcs(s: &Surface) -> Vec<ArcClass> {
    let mut arcs = Vec::new();
    for e in 0..s.rank() {
        arcs.push(ArcClass::unchecked(s, 0, &[Letter::new(e, false)], 1).expect("generator arc"));
    }
    for m in 1..s.marked_count() {
        arcs.push(ArcClass::unchecked(s, 0, &[], m).expect("generator arc"));
    }
    arcs
}

pub fn standard_curves(s: &Surface) -> Result<NamedCurveSystem> {
    let mut chain = Vec::new();
    let mut extension = None;
    if s.is_canonical() {
        let g = s.genus();
        for w in chain_words(g) {
            chain.push(CurveClass::new(s, &w)?);
        }
        if g >= 1 && s.boundary_count() >= 2 {
            let z = Letter::new(2 * g, false);
            extension = Some(CurveClass::new(s, &[x(g - 1), y(g - 1), z.inverse(), y(g - 1).inverse()])?);
        }
    }
    let mut boundary_parallel = Vec::new();
    for j in 0..s.boundary_count() {
        boundary_parallel.push(CurveClass::new(s, s.boundary_word(j)?)?);
    }
    Ok(NamedCurveSystem { chain, extension, boundary_parallel, arcs: filling_arcs(s) })
}
