//! Free-group bookkeeping on edge-paths.

use crate::surface::Letter;

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Cancels every `e e^-1` pair.
pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&p) if p == l.inverse() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Free reduction followed by cancellation across the wrap-around point.
pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let r = free_reduce(w);
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == r[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    r[lo..hi].to_vec()
}

pub fn rotate(w: &[Letter], k: usize) -> Vec<Letter> {
    if w.is_empty() {
        return Vec::new();
    }
    let k = k % w.len();
    w[k..].iter().chain(w[..k].iter()).copied().collect()
}

/// Lexicographically least rotation (by letter rank) of a cyclic word.
pub fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    (0..w.len().max(1))
        .map(|k| rotate(w, k))
        .min_by(|a, b| {
            a.iter().map(|l| l.rank()).cmp(b.iter().map(|l| l.rank()))
        })
        .unwrap_or_default()
}

/// Smallest `p` dividing `len` with `w` invariant under rotation by `p`.
pub fn period(w: &[Letter]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|p| n % p == 0 && (0..n).all(|i| w[i] == w[(i + p) % n]))
        .unwrap_or(0)
}

/// Class in `Z^rank` of a word.
pub fn abelianize(w: &[Letter], rank: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    for l in w {
        v[l.edge()] += if l.is_inverse() { -1 } else { 1 };
    }
    v
}

/// Letters of the path from vertex `from` to vertex `to` along the
/// bi-infinite periodic word `...www...`, vertex 0 sitting before `w[0]`.
pub fn periodic_segment(w: &[Letter], from: i64, to: i64) -> Vec<Letter> {
    let n = w.len() as i64;
    let at = |i: i64| w[i.rem_euclid(n) as usize];
    if to >= from {
        (from..to).map(at).collect()
    } else {
        (to..from).rev().map(|i| at(i).inverse()).collect()
    }
}
