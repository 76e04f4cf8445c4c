//! Seeded invariant suite behind `--check`.

use openbook::certificates::{check_sobering, fillability_report};
use openbook::mcg::{verify_relation, Relation};
use openbook::open_book::{attaching_arc, first_homology, hopf_band, make_open_book, murasugi_sum, stabilize};
use openbook::{standard_curves, ArcClass, OpenBook, Surface, TwistWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::program::parse;

pub type CheckResult = (String, Result<(), String>);

const PAGES: [(usize, usize); 4] = [(0, 2), (1, 1), (1, 2), (2, 1)];

fn random_book(rng: &mut ChaCha8Rng) -> OpenBook {
    let (g, n) = PAGES[rng.gen_range(0..PAGES.len())];
    let s = Surface::new(g, n).unwrap();
    let sys = standard_curves(&s).unwrap();
    let mut pool = sys.chain.clone();
    pool.extend(sys.extension.clone());
    pool.extend(sys.boundary_parallel.clone());
    let len = rng.gen_range(0..=4);
    let mut w = TwistWord::identity(&s);
    for _ in 0..len {
        let c = &pool[rng.gen_range(0..pool.len())];
        let h = if rng.gen_bool(0.5) { 1 } else { -1 };
        w = openbook::mcg::compose(&w, &TwistWord::twist(&s, c, h).unwrap()).unwrap();
    }
    make_open_book(&s, &w).unwrap()
}

fn stabilization(rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for k in 0..count {
        let ob = random_book(rng);
        let n = ob.page().boundary_count();
        let arc = attaching_arc(ob.page(), rng.gen_range(0..n), rng.gen_range(0..n)).map_err(|e| e.to_string())?;
        let h = first_homology(&ob).map_err(|e| e.to_string())?;
        for sign in [1, -1] {
            let st = stabilize(&ob, &arc, sign).map_err(|e| e.to_string())?;
            let h2 = first_homology(&st).map_err(|e| e.to_string())?;
            if h2 != h {
                return Err(format!("instance {k}: {h} became {h2} under stabilization {sign:+}"));
            }
        }
    }
    Ok(())
}

fn additivity(rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for k in 0..count {
        let (a, b) = (random_book(rng), random_book(rng));
        let r0 = ArcClass::new(a.page(), 0, &[], 1).map_err(|e| e.to_string())?;
        let r1 = ArcClass::new(b.page(), 0, &[], 1).map_err(|e| e.to_string())?;
        let sum = murasugi_sum(&a, &r0, &b, &r1).map_err(|e| e.to_string())?;
        let (ha, hb) = (first_homology(&a).unwrap(), first_homology(&b).unwrap());
        let hs = first_homology(&sum).map_err(|e| e.to_string())?;
        if hs != ha.direct_sum(&hb) {
            return Err(format!("instance {k}: {ha} + {hb} but the sum has {hs}"));
        }
    }
    Ok(())
}

fn relations() -> Result<(), String> {
    for (g, n) in [(1, 1), (2, 1), (1, 2)] {
        let s = Surface::new(g, n).unwrap();
        let a = standard_curves(&s).unwrap().chain;
        let mut rels = vec![Relation::Braid(a[0].clone(), a[1].clone()), Relation::Exchange(a[0].clone(), a[1].clone())];
        rels.push(Relation::Chain(a[..2].to_vec()));
        if a.len() > 2 {
            rels.push(Relation::Commute(a[0].clone(), a[2].clone()));
            rels.push(Relation::Chain(a[..3].to_vec()));
        }
        for r in rels {
            if !verify_relation(&s, &r).map_err(|e| e.to_string())? {
                return Err(format!("{r:?} fails on {s}"));
            }
        }
    }
    Ok(())
}

fn hopf_signs() -> Result<(), String> {
    let neg = hopf_band(-1).unwrap();
    let pos = hopf_band(1).unwrap();
    let b = ArcClass::new(neg.page(), 0, &[], 2).map_err(|e| e.to_string())?;
    let n = check_sobering(&neg, &b).map_err(|e| e.to_string())?;
    let p = check_sobering(&pos, &b).map_err(|e| e.to_string())?;
    match (n.accepted(), p.is_accepted()) {
        (Some(_), false) => Ok(()),
        _ => Err("the co-core must be sobering for the negative band only".into()),
    }
}

fn exclusivity(rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for _ in 0..count {
        fillability_report(&random_book(rng), 2, 2).map_err(|e| e.to_string())?;
    }
    Ok(())
}

pub fn invariant_suite(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        ("stabilization invariance".to_string(), stabilization(&mut rng, 20)),
        ("murasugi additivity".to_string(), additivity(&mut rng, 10)),
        ("relation suite".to_string(), relations()),
        ("hopf band co-core".to_string(), hopf_signs()),
        ("certificate exclusivity".to_string(), exclusivity(&mut rng, 10)),
    ]
}

/// `parse(print(parse(text))) == parse(text)`.
pub fn round_trip(text: &str) -> Result<(), String> {
    let a = parse(text).map_err(|e| e.to_string())?;
    let printed = a.to_string();
    let b = parse(&printed).map_err(|e| format!("printed script does not parse: {e}"))?;
    if a != b {
        return Err("printing changed the script".into());
    }
    if b.to_string() != printed {
        return Err("printing is not stable".into());
    }
    Ok(())
}
