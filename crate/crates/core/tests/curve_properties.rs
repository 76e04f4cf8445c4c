mod common;

use common::*;
use openbook::curve::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn intersection_is_symmetric_and_bounds_algebraic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_surface(&mut r, (2, 3));
        let x = random_curve(&s, &mut r, 2);
        let y = random_curve(&s, &mut r, 2);
        let gxy = geometric_intersection(&s, &x, &y).unwrap();
        prop_assert_eq!(gxy, geometric_intersection(&s, &y, &x).unwrap());
        let a = algebraic_intersection(&s, &x, &y).unwrap();
        prop_assert!(a.unsigned_abs() as usize <= gxy);
        prop_assert_eq!(a, -algebraic_intersection(&s, &y, &x).unwrap());
        prop_assert_eq!(geometric_intersection(&s, &x, &x).unwrap(), 0);
    }

    #[test]
    fn twists_preserve_intersections(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_surface(&mut r, (2, 3));
        let x = random_curve(&s, &mut r, 2);
        let y = random_curve(&s, &mut r, 2);
        let g = random_curve(&s, &mut r, 1);
        let h = if seed % 2 == 0 { 1 } else { -1 };
        let tx = apply_twist(&s, &x, &g, h).unwrap();
        let ty = apply_twist(&s, &y, &g, h).unwrap();
        prop_assert!(is_simple(&s, &tx));
        prop_assert_eq!(geometric_intersection(&s, &tx, &ty).unwrap(), geometric_intersection(&s, &x, &y).unwrap());
        prop_assert_eq!(apply_twist(&s, &tx, &g, -h).unwrap(), x.clone());
        prop_assert_eq!(apply_twist(&s, &x, &g.reversed(), h).unwrap(), tx.clone());
        let a = random_arc(&s, &mut r, 2);
        let ta = apply_twist(&s, &a, &g, h).unwrap();
        prop_assert!(is_simple_arc_class(&s, &ta));
        prop_assert_eq!(geometric_intersection(&s, &ta, &tx).unwrap(), geometric_intersection(&s, &a, &x).unwrap());
        prop_assert_eq!(apply_twist(&s, &ta, &g, -h).unwrap(), a);
    }

    /// For a twist about γ: |i(D^k x, y) - |k| i(x,γ) i(γ,y)| <= i(x,y).
    #[test]
    fn twist_growth_estimate(seed in any::<u64>(), k in 1i32..=3) {
        let mut r = rng(seed);
        let s = random_surface(&mut r, (2, 2));
        let x = random_curve(&s, &mut r, 1);
        let y = random_curve(&s, &mut r, 1);
        let g = random_curve(&s, &mut r, 1);
        let mut t = x.clone();
        for _ in 0..k {
            t = apply_twist(&s, &t, &g, 1).unwrap();
        }
        let lhs = geometric_intersection(&s, &t, &y).unwrap() as i64;
        let main = k as i64 * (geometric_intersection(&s, &x, &g).unwrap() * geometric_intersection(&s, &g, &y).unwrap()) as i64;
        prop_assert!((lhs - main).abs() <= geometric_intersection(&s, &x, &y).unwrap() as i64);
    }

    /// Algebraic intersection is bilinear in homology.
    #[test]
    fn algebraic_intersection_is_homological(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_surface(&mut r, (2, 3));
        let x = random_curve(&s, &mut r, 2);
        let y = random_curve(&s, &mut r, 2);
        let j = intersection_form(&s);
        let vx = openbook::word::abelianize(x.word(), s.rank());
        let vy = openbook::word::abelianize(y.word(), s.rank());
        let mut expect = 0;
        for a in 0..s.rank() {
            for b in 0..s.rank() {
                expect += vx[a] * j[a][b] * vy[b];
            }
        }
        prop_assert_eq!(algebraic_intersection(&s, &x, &y).unwrap(), expect);
    }

    #[test]
    fn reduce_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_surface(&mut r, (2, 3));
        let x = random_curve(&s, &mut r, 2);
        prop_assert_eq!(reduce_curve(&s, x.word()).unwrap(), x.clone());
        let a = random_arc(&s, &mut r, 2);
        prop_assert_eq!(reduce_arc(&s, a.start(), a.letters(), a.end()).unwrap(), a);
    }

    /// Signs are natural: applying a mapping class to both arcs changes
    /// nothing, and swapping the arcs negates everything.
    #[test]
    fn signs_are_natural(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_surface(&mut r, (2, 2));
        let a = random_arc(&s, &mut r, 1);
        let g = random_curve(&s, &mut r, 1);
        let b = apply_twist(&s, &a, &g, if seed % 2 == 0 { 1 } else { -1 }).unwrap();
        let f = random_curve(&s, &mut r, 1);
        let fa = apply_twist(&s, &a, &f, 1).unwrap();
        let fb = apply_twist(&s, &b, &f, 1).unwrap();
        match (minimal_position_signs(&s, &a, &b).unwrap(), minimal_position_signs(&s, &fa, &fb).unwrap()) {
            (MinimalPosition::Isotopic, MinimalPosition::Isotopic) => {}
            (MinimalPosition::Transverse(p), MinimalPosition::Transverse(q)) => {
                prop_assert_eq!(p.endpoint_signs, q.endpoint_signs);
                let mut ps = p.interior_signs.clone();
                let mut qs = q.interior_signs.clone();
                ps.sort();
                qs.sort();
                prop_assert_eq!(&ps, &qs);
                prop_assert_eq!(p.interior_signs.len(), geometric_intersection(&s, &a, &b).unwrap());
                if let MinimalPosition::Transverse(sw) = minimal_position_signs(&s, &b, &a).unwrap() {
                    prop_assert_eq!(sw.endpoint_signs, (-p.endpoint_signs.0, -p.endpoint_signs.1));
                    let mut x: Vec<i8> = sw.interior_signs.iter().map(|v| -v).collect();
                    x.sort();
                    prop_assert_eq!(x, ps);
                } else {
                    prop_assert!(false, "swap changed isotopy");
                }
            }
            _ => prop_assert!(false, "isotopy is not natural"),
        }
    }
}
