use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{AdcError, Result};

use super::TruncatedSimplicialSet;

/// `Z^rank ⊕ ⨁ Z/t` for the listed torsion coefficients `t > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "H{} = 0", self.degree)
        } else {
            write!(f, "H{} = {}", self.degree, parts.join(" ⊕ "))
        }
    }
}

/// Invariant factors of a sparse integer matrix given by its rows.
struct Smith {
    rank: usize,
    factors: Vec<BigInt>,
}

fn smith(rows: Vec<BTreeMap<usize, i64>>, ncols: usize) -> Result<Smith> {
    let mut rows = rows;
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols[c].insert(r);
        }
    }
    let mut alive_rows: BTreeSet<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let mut rank = 0;
    // Unit pivots first, in exact machine arithmetic.
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &alive_rows {
            for (&c, &v) in &rows[r] {
                if v.abs() == 1 {
                    let cost = (rows[r].len() - 1) * (cols[c].len() - 1);
                    if best.is_none_or(|(_, _, b)| cost < b) {
                        best = Some((r, c, cost));
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_row = rows[pr].clone();
        let u = pivot_row[&pc];
        let others: Vec<usize> = cols[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let a = rows[r][&pc];
            let factor = a.checked_mul(u).ok_or(AdcError::Overflow("homology elimination"))?;
            for (&c, &v) in &pivot_row {
                let delta = factor
                    .checked_mul(v)
                    .ok_or(AdcError::Overflow("homology elimination"))?;
                let entry = rows[r].entry(c).or_insert(0);
                *entry = entry
                    .checked_sub(delta)
                    .ok_or(AdcError::Overflow("homology elimination"))?;
                if *entry == 0 {
                    rows[r].remove(&c);
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r);
                }
            }
            if rows[r].is_empty() {
                alive_rows.remove(&r);
            }
        }
        for &c in pivot_row.keys() {
            cols[c].remove(&pr);
        }
        rows[pr].clear();
        alive_rows.remove(&pr);
        rank += 1;
    }
    let mut factors = vec![BigInt::one(); rank];
    // Whatever is left goes through a dense reduction over big integers.
    let live_cols: Vec<usize> = (0..ncols).filter(|&c| !cols[c].is_empty()).collect();
    if !alive_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense: Vec<Vec<BigInt>> = alive_rows
            .iter()
            .map(|&r| {
                let mut v = vec![BigInt::zero(); live_cols.len()];
                for (c, &x) in &rows[r] {
                    v[col_pos[c]] = BigInt::from(x);
                }
                v
            })
            .collect();
        let diag = dense_smith(&mut dense);
        rank += diag.len();
        factors.extend(diag);
    }
    Ok(Smith { rank, factors })
}

/// Diagonalizes in place with the divisibility chain enforced and returns
/// the non-zero diagonal.
fn dense_smith(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..nc {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold a bad row into the pivot row and retry.
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..nc {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// The normalized boundary `N_n → N_{n−1}` as sparse rows indexed by
/// non-degenerate `(n−1)`-simplices.
fn normalized_boundary(
    x: &TruncatedSimplicialSet,
    n: usize,
    lower: &BTreeMap<usize, usize>,
    upper: &[usize],
) -> Vec<BTreeMap<usize, i64>> {
    let mut rows = vec![BTreeMap::new(); lower.len()];
    for (col, &s) in upper.iter().enumerate() {
        for i in 0..=n {
            let f = x.face(n, s, i);
            if let Some(&r) = lower.get(&f) {
                let e = rows[r].entry(col).or_insert(0i64);
                *e += if i % 2 == 0 { 1 } else { -1 };
                if *e == 0 {
                    rows[r].remove(&col);
                }
            }
        }
    }
    rows
}

/// Integral homology of the normalized chain complex in degrees `0..=up_to`.
pub fn homology(x: &TruncatedSimplicialSet, up_to: usize) -> Result<Vec<HomologyGroup>> {
    if up_to + 1 > x.cap {
        return Err(AdcError::Truncation(format!(
            "homology in degree {up_to} needs simplices up to level {}; the set is truncated at {}",
            up_to + 1,
            x.cap
        )));
    }
    let nondeg: Vec<Vec<usize>> = (0..=up_to + 1).map(|n| x.nondegenerate(n)).collect();
    let index: Vec<BTreeMap<usize, usize>> = nondeg
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    // boundary[n] is ∂_n for n ≥ 1
    let mut ranks = vec![0usize; up_to + 2];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); up_to + 2];
    for n in 1..=up_to + 1 {
        let rows = normalized_boundary(x, n, &index[n - 1], &nondeg[n]);
        let s = smith(rows, nondeg[n].len())?;
        ranks[n] = s.rank;
        factors[n] = s.factors;
    }
    (0..=up_to)
        .map(|k| {
            let cycles = nondeg[k].len() - ranks[k];
            let torsion = factors[k + 1]
                .iter()
                .filter(|f| !f.is_one())
                .map(|f| f.to_u64().ok_or(AdcError::Overflow("torsion coefficient")))
                .collect::<Result<Vec<_>>>()?;
            Ok(HomologyGroup {
                degree: k,
                rank: cycles - ranks[k + 1],
                torsion,
            })
        })
        .collect()
}

/// Homology with the augmentation folded into degree 0.
pub fn reduced_homology(x: &TruncatedSimplicialSet, up_to: usize) -> Result<Vec<HomologyGroup>> {
    let mut groups = homology(x, up_to)?;
    if x.count(0) > 0 {
        groups[0].rank -= 1;
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::std_simplex;

    #[test]
    fn simplex_is_acyclic() {
        let s = std_simplex(2, 4);
        let h = reduced_homology(&s, 3).unwrap();
        assert!(h.iter().all(HomologyGroup::is_trivial), "{h:?}");
        assert_eq!(homology(&s, 0).unwrap()[0].rank, 1);
    }

    #[test]
    fn dense_reduction_finds_torsion() {
        let mut a = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(3)],
        ];
        assert_eq!(dense_smith(&mut a), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn beyond_truncation_is_rejected() {
        assert!(homology(&std_simplex(1, 2), 2).is_err());
    }
}
