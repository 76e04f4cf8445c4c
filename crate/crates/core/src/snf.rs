//! Smith normal form over the integers and finitely generated abelian groups.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Nonzero invariant factors `d_1 | d_2 | ..` of an integer matrix given by rows.
pub fn invariant_factors(rows: &[Vec<i64>], cols: usize) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged relation matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..m).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j];
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move a smaller remainder into the pivot position
            let mut best = (t, t);
            for i in t..m {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

/// `Z^rank ⊕ Z/t_1 ⊕ .. ⊕ Z/t_k` with `1 < t_1 | t_2 | ..`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    /// Cokernel of the relation matrix on `generators` generators.
    pub fn from_presentation(rows: &[Vec<i64>], generators: usize) -> AbelianGroup {
        let d = invariant_factors(rows, generators);
        AbelianGroup { rank: generators - d.len(), torsion: d.into_iter().filter(|&x| x > 1).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order when finite.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut rows = Vec::new();
        let n = self.torsion.len() + other.torsion.len();
        for (i, t) in self.torsion.iter().chain(&other.torsion).enumerate() {
            let mut r = vec![0i64; n];
            r[i] = *t as i64;
            rows.push(r);
        }
        let g = AbelianGroup::from_presentation(&rows, n);
        AbelianGroup { rank: self.rank + other.rank, torsion: g.torsion }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
