mod common;

use common::*;
use openbook::certificates::*;
use openbook::curve::ArcClass;
use openbook::mcg;
use openbook::open_book::*;
use openbook::{Surface, TwistWord};
use proptest::prelude::*;
use rand::Rng;

fn chord(s: &Surface, r: &mut rand_chacha::ChaCha8Rng) -> ArcClass {
    let m = s.marked_count();
    let p = r.gen_range(0..m);
    let q = (p + r.gen_range(1..m)) % m;
    ArcClass::new(s, p, &[], q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn stabilization_preserves_homology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ob = random_book(&mut r, (2, 3), 6);
        let h = first_homology(&ob).unwrap();
        let a = random_arc(ob.page(), &mut r, 1);
        for sign in [1i8, -1] {
            let st = stabilize(&ob, &a, sign).unwrap();
            prop_assert_eq!(st.page().euler_characteristic(), ob.page().euler_characteristic() - 1);
            prop_assert_eq!(first_homology(&st).unwrap(), h.clone());
        }
    }

    #[test]
    fn plumbing_adds_homology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_book(&mut r, (1, 2), 3);
        let b = random_book(&mut r, (1, 2), 3);
        let ra = chord(a.page(), &mut r);
        let rb = chord(b.page(), &mut r);
        let sum = murasugi_sum(&a, &ra, &b, &rb).unwrap();
        prop_assert_eq!(sum.page().euler_characteristic(), a.page().euler_characteristic() + b.page().euler_characteristic() - 1);
        let expect = first_homology(&a).unwrap().direct_sum(&first_homology(&b).unwrap());
        prop_assert_eq!(first_homology(&sum).unwrap(), expect);
    }

    #[test]
    fn equal_monodromies_give_equal_homology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_surface(&mut r, (2, 2));
        let w = random_word(&s, &mut r, 3, 1);
        let f = random_word(&s, &mut r, 2, 1);
        let v = mcg::conjugate_push(&s, &w, &f).unwrap();
        let h1 = first_homology(&make_open_book(&s, &w).unwrap()).unwrap();
        let h2 = first_homology(&make_open_book(&s, &v).unwrap()).unwrap();
        prop_assert_eq!(h1, h2);
    }

    #[test]
    fn negative_stabilization_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ob = random_book(&mut r, (1, 2), 3);
        let a = random_arc(ob.page(), &mut r, 1);
        let st = stabilize(&ob, &a, -1).unwrap();
        let d = detect_negative_stabilization(&st, 4).unwrap().expect("freshly stabilized");
        prop_assert_eq!(d.destabilized.page().euler_characteristic(), ob.page().euler_characteristic());
        prop_assert_eq!(first_homology(&d.destabilized).unwrap(), first_homology(&ob).unwrap());
        prop_assert!(d.arc.is_some());
        if d.destabilized.page() == ob.page() {
            prop_assert!(mcg::equal(ob.page(), d.destabilized.monodromy(), ob.monodromy()).unwrap());
        }
    }

    /// Inverting the monodromy negates every sign of a certificate.
    #[test]
    fn mirror_negates_sobering_signs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ob = random_book(&mut r, (1, 2), 3);
        let a = random_arc(ob.page(), &mut r, 1);
        let st = stabilize(&ob, &a, -1).unwrap();
        let cert = detect_negative_stabilization(&st, 2).unwrap().and_then(|d| d.arc).expect("sobering arc");
        let mirror = make_open_book(st.page(), &mcg::inverse(st.monodromy())).unwrap();
        let img = mcg::act_on(mirror.page(), mirror.monodromy(), &cert.arc).unwrap();
        match openbook::curve::minimal_position_signs(mirror.page(), &cert.arc, &img).unwrap() {
            openbook::MinimalPosition::Transverse(sd) => {
                let n = cert.sign_data.negated();
                prop_assert_eq!(sd.endpoint_signs, n.endpoint_signs);
                let (mut x, mut y) = (sd.interior_signs.clone(), n.interior_signs.clone());
                x.sort();
                y.sort();
                prop_assert_eq!(x, y);
                let accepted = check_sobering(&mirror, &cert.arc).unwrap().is_accepted();
                prop_assert_eq!(accepted, sd.i_value() == 0 && sd.interior_signs.is_empty());
            }
            _ => prop_assert!(false),
        }
    }

    /// A letter disjoint from b and φ(b) does not spoil a sobering arc.
    #[test]
    fn sobering_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ob = random_book(&mut r, (1, 2), 2);
        let st = stabilize(&ob, &random_arc(ob.page(), &mut r, 1), -1).unwrap();
        let cert = detect_negative_stabilization(&st, 2).unwrap().and_then(|d| d.arc).expect("sobering arc");
        let s = st.page();
        for c in pool(s) {
            let g1 = openbook::curve::geometric_intersection(s, &cert.arc, &c).unwrap();
            let g2 = openbook::curve::geometric_intersection(s, &cert.image, &c).unwrap();
            if g1 == 0 && g2 == 0 {
                let w = mcg::compose(&TwistWord::twist(s, &c, 1).unwrap(), st.monodromy()).unwrap();
                let more = make_open_book(s, &w).unwrap();
                prop_assert!(check_sobering(&more, &cert.arc).unwrap().is_accepted());
            }
        }
    }

    #[test]
    fn certificates_exclude_each_other(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ob = random_book(&mut r, (1, 2), 3);
        fillability_report(&ob, 2, 2).unwrap();
    }
}
