#![allow(dead_code)]

use openbook::curve::{self, ArcClass, CurveClass};
use openbook::mcg::{Twist, TwistWord};
use openbook::open_book::{make_open_book, OpenBook};
use openbook::{standard_curves, Letter, Surface};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Chain, extension, boundary curves and single loops.
pub fn pool(s: &Surface) -> Vec<CurveClass> {
    let sys = standard_curves(s).unwrap();
    let mut out: Vec<CurveClass> = Vec::new();
    let mut push = |c: CurveClass| {
        if !c.is_trivial() && !out.iter().any(|d| d.same_unoriented(&c)) {
            out.push(c);
        }
    };
    sys.chain.into_iter().for_each(&mut push);
    sys.extension.into_iter().for_each(&mut push);
    sys.boundary_parallel.into_iter().for_each(&mut push);
    for e in 0..s.rank() {
        push(CurveClass::new(s, &[Letter::new(e, false)]).unwrap());
    }
    out
}

/// A pool curve moved by up to `depth` random twists.
pub fn random_curve(s: &Surface, r: &mut ChaCha8Rng, depth: usize) -> CurveClass {
    let p = pool(s);
    let mut c = p.choose(r).unwrap().clone();
    for _ in 0..r.gen_range(0..=depth) {
        let g = p.choose(r).unwrap();
        let h = if r.gen_bool(0.5) { 1 } else { -1 };
        c = curve::apply_twist(s, &c, g, h).unwrap();
    }
    if r.gen_bool(0.5) {
        c.reversed()
    } else {
        c
    }
}

pub fn random_arc(s: &Surface, r: &mut ChaCha8Rng, depth: usize) -> ArcClass {
    let m = s.marked_count();
    let p = r.gen_range(0..m);
    let mut q = r.gen_range(0..m - 1);
    if q >= p {
        q += 1;
    }
    let mut a = ArcClass::new(s, p, &[], q).unwrap();
    let pl = pool(s);
    for _ in 0..r.gen_range(0..=depth) {
        let g = pl.choose(r).unwrap();
        a = curve::apply_twist(s, &a, g, if r.gen_bool(0.5) { 1 } else { -1 }).unwrap();
    }
    a
}

pub fn random_word(s: &Surface, r: &mut ChaCha8Rng, len: usize, depth: usize) -> TwistWord {
    let letters = (0..r.gen_range(0..=len))
        .map(|_| Twist::new(&random_curve(s, r, depth), if r.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    TwistWord::new(s, letters).unwrap()
}

pub const SURFACES: [(usize, usize); 7] = [(0, 2), (0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (2, 3)];

pub fn random_surface(r: &mut ChaCha8Rng, max: (usize, usize)) -> Surface {
    let choices: Vec<_> = SURFACES.iter().filter(|(g, n)| *g <= max.0 && *n <= max.1).collect();
    let (g, n) = **choices.choose(r).unwrap();
    Surface::new(g, n).unwrap()
}

pub fn random_book(r: &mut ChaCha8Rng, max: (usize, usize), len: usize) -> OpenBook {
    let s = random_surface(r, max);
    let w = random_word(&s, r, len, 1);
    make_open_book(&s, &w).unwrap()
}
