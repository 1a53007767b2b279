use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{AdcError, Result};
use crate::orientals::SimplexMap;
use crate::report::ValidationReport;

use super::constructions::slice_under;
use super::{SimplicialMap, TruncatedSimplicialSet};

/// Simplices `X_{m,n}` for `m <= caps.0`, `n <= caps.1`, with horizontal
/// operators acting on `m` and vertical ones on `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimplicialSet {
    pub caps: (usize, usize),
    pub labels: Vec<Vec<Vec<String>>>,
    pub hfaces: Vec<Vec<Vec<Vec<usize>>>>,
    pub hdegeneracies: Vec<Vec<Vec<Vec<usize>>>>,
    pub vfaces: Vec<Vec<Vec<Vec<usize>>>>,
    pub vdegeneracies: Vec<Vec<Vec<Vec<usize>>>>,
}

type Op<'a, T> = &'a dyn Fn(usize, usize, &T, usize) -> Result<T>;

impl BisimplicialSet {
    /// Builds the tables from element lists and the four operator closures.
    pub fn from_elements<T: Clone + Eq + Hash>(
        caps: (usize, usize),
        elements: &[Vec<Vec<T>>],
        label: impl Fn(usize, usize, &T) -> String,
        hface: Op<'_, T>,
        hdeg: Op<'_, T>,
        vface: Op<'_, T>,
        vdeg: Op<'_, T>,
    ) -> Result<Self> {
        let (cm, cn) = caps;
        let index: Vec<Vec<HashMap<&T, usize>>> = elements
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().enumerate().map(|(i, t)| (t, i)).collect())
                    .collect()
            })
            .collect();
        let find = |m: usize, n: usize, t: &T| -> Result<usize> {
            index[m][n]
                .get(t)
                .copied()
                .ok_or_else(|| AdcError::Internal(format!("operator result missing from level ({m},{n})")))
        };
        let mut out = Self {
            caps,
            labels: Vec::new(),
            hfaces: Vec::new(),
            hdegeneracies: Vec::new(),
            vfaces: Vec::new(),
            vdegeneracies: Vec::new(),
        };
        for m in 0..=cm {
            let (mut lr, mut hfr, mut hsr, mut vfr, mut vsr) = (vec![], vec![], vec![], vec![], vec![]);
            for n in 0..=cn {
                let (mut l, mut hf, mut hs, mut vf, mut vs) = (vec![], vec![], vec![], vec![], vec![]);
                for t in &elements[m][n] {
                    l.push(label(m, n, t));
                    hf.push(if m > 0 {
                        (0..=m)
                            .map(|i| find(m - 1, n, &hface(m, n, t, i)?))
                            .collect::<Result<Vec<_>>>()?
                    } else {
                        vec![]
                    });
                    hs.push(if m < cm {
                        (0..=m)
                            .map(|i| find(m + 1, n, &hdeg(m, n, t, i)?))
                            .collect::<Result<Vec<_>>>()?
                    } else {
                        vec![]
                    });
                    vf.push(if n > 0 {
                        (0..=n)
                            .map(|j| find(m, n - 1, &vface(m, n, t, j)?))
                            .collect::<Result<Vec<_>>>()?
                    } else {
                        vec![]
                    });
                    vs.push(if n < cn {
                        (0..=n)
                            .map(|j| find(m, n + 1, &vdeg(m, n, t, j)?))
                            .collect::<Result<Vec<_>>>()?
                    } else {
                        vec![]
                    });
                }
                lr.push(l);
                hfr.push(hf);
                hsr.push(hs);
                vfr.push(vf);
                vsr.push(vs);
            }
            out.labels.push(lr);
            out.hfaces.push(hfr);
            out.hdegeneracies.push(hsr);
            out.vfaces.push(vfr);
            out.vdegeneracies.push(vsr);
        }
        Ok(out)
    }

    pub fn count(&self, m: usize, n: usize) -> usize {
        self.labels[m][n].len()
    }

    /// The horizontal simplicial set at vertical level `n`.
    pub fn row(&self, n: usize) -> TruncatedSimplicialSet {
        let cm = self.caps.0;
        TruncatedSimplicialSet {
            cap: cm,
            levels: (0..=cm).map(|m| self.labels[m][n].clone()).collect(),
            faces: (0..=cm).map(|m| self.hfaces[m][n].clone()).collect(),
            degeneracies: (0..=cm).map(|m| self.hdegeneracies[m][n].clone()).collect(),
        }
    }

    /// The vertical simplicial set at horizontal level `m`.
    pub fn column(&self, m: usize) -> TruncatedSimplicialSet {
        TruncatedSimplicialSet {
            cap: self.caps.1,
            levels: self.labels[m].clone(),
            faces: self.vfaces[m].clone(),
            degeneracies: self.vdegeneracies[m].clone(),
        }
    }

    /// Simplicial identities in each direction and commutation of the two.
    pub fn validate(&self) -> ValidationReport {
        let (cm, cn) = self.caps;
        let mut report = ValidationReport::new();
        for n in 0..=cn {
            report.merge(self.row(n).validate());
        }
        for m in 0..=cm {
            report.merge(self.column(m).validate());
        }
        for m in 0..=cm {
            for n in 0..=cn {
                for x in 0..self.count(m, n) {
                    let at = || format!("({m},{n}) {}", self.labels[m][n][x]);
                    let hops: Vec<(bool, usize)> = (0..=m)
                        .flat_map(|i| {
                            let mut v = Vec::new();
                            if m > 0 {
                                v.push((true, i));
                            }
                            if m < cm {
                                v.push((false, i));
                            }
                            v
                        })
                        .collect();
                    let vops: Vec<(bool, usize)> = (0..=n)
                        .flat_map(|j| {
                            let mut v = Vec::new();
                            if n > 0 {
                                v.push((true, j));
                            }
                            if n < cn {
                                v.push((false, j));
                            }
                            v
                        })
                        .collect();
                    for &(hf, i) in &hops {
                        for &(vf, j) in &vops {
                            let m2 = if hf { m - 1 } else { m + 1 };
                            let n2 = if vf { n - 1 } else { n + 1 };
                            let h = |mm: usize, nn: usize, y: usize| {
                                if hf {
                                    self.hfaces[mm][nn][y][i]
                                } else {
                                    self.hdegeneracies[mm][nn][y][i]
                                }
                            };
                            let v = |mm: usize, nn: usize, y: usize| {
                                if vf {
                                    self.vfaces[mm][nn][y][j]
                                } else {
                                    self.vdegeneracies[mm][nn][y][j]
                                }
                            };
                            let a = v(m2, n, h(m, n, x));
                            let b = h(m, n2, v(m, n, x));
                            if a != b {
                                report.violation(
                                    "bisimplicial commutation",
                                    at(),
                                    format!(
                                        "horizontal {} {i} and vertical {} {j} do not commute",
                                        if hf { "face" } else { "degeneracy" },
                                        if vf { "face" } else { "degeneracy" }
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// `p₁*(X)`: constant in the vertical direction.
    pub fn constant_vertical(x: &TruncatedSimplicialSet, cn: usize) -> Result<Self> {
        let elements: Vec<Vec<Vec<usize>>> = (0..=x.cap).map(|m| vec![(0..x.count(m)).collect(); cn + 1]).collect();
        Self::from_elements(
            (x.cap, cn),
            &elements,
            |m, _, &s| x.label(m, s).to_string(),
            &|m, _, &s, i| Ok(x.face(m, s, i)),
            &|m, _, &s, i| Ok(x.degeneracy(m, s, i)),
            &|_, _, &s, _| Ok(s),
            &|_, _, &s, _| Ok(s),
        )
    }

    /// `p₂*(X)`: constant in the horizontal direction.
    pub fn constant_horizontal(x: &TruncatedSimplicialSet, cm: usize) -> Result<Self> {
        let elements: Vec<Vec<Vec<usize>>> = (0..=cm)
            .map(|_| (0..=x.cap).map(|n| (0..x.count(n)).collect()).collect())
            .collect();
        Self::from_elements(
            (cm, x.cap),
            &elements,
            |_, n, &s| x.label(n, s).to_string(),
            &|_, _, &s, _| Ok(s),
            &|_, _, &s, _| Ok(s),
            &|_, n, &s, j| Ok(x.face(n, s, j)),
            &|_, n, &s, j| Ok(x.degeneracy(n, s, j)),
        )
    }
}

/// δ*(B)_n = B_{n,n} with `d_i = d^h_i d^v_i` and `s_i = s^h_i s^v_i`.
pub fn diagonal(b: &BisimplicialSet) -> Result<TruncatedSimplicialSet> {
    let cap = b.caps.0.min(b.caps.1);
    let levels = (0..=cap).map(|n| b.labels[n][n].clone()).collect();
    let faces = (0..=cap)
        .map(|n| {
            (0..b.count(n, n))
                .map(|x| {
                    if n == 0 {
                        return vec![];
                    }
                    (0..=n).map(|i| b.hfaces[n][n - 1][b.vfaces[n][n][x][i]][i]).collect()
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..=cap)
        .map(|n| {
            (0..b.count(n, n))
                .map(|x| {
                    if n == cap {
                        return vec![];
                    }
                    (0..=n)
                        .map(|i| b.hdegeneracies[n][n + 1][b.vdegeneracies[n][n][x][i]][i])
                        .collect()
                })
                .collect()
        })
        .collect();
    TruncatedSimplicialSet::new(cap, levels, faces, degeneracies)
}

/// An element `(x, y, z)` of `g↓h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommaSimplex {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// `(g↓h)_{m,n}`: triples with `z|[0,m] = g(x)` and `z|[m+1, m+1+n] = h(y)`.
pub fn comma_bisimplicial(
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    g: &SimplicialMap,
    h: &SimplicialMap,
    caps: (usize, usize),
) -> Result<(BisimplicialSet, Vec<Vec<Vec<CommaSimplex>>>)> {
    let (cm, cn) = caps;
    if z.cap < cm + cn + 1 || x.cap < cm || y.cap < cn {
        return Err(AdcError::Truncation(format!(
            "comma at caps ({cm},{cn}) needs base level {}; base is truncated at {}",
            cm + cn + 1,
            z.cap
        )));
    }
    let mut elements = Vec::new();
    for m in 0..=cm {
        let mut row = Vec::new();
        for n in 0..=cn {
            let front = SimplexMap::inclusion(m + 1 + n, &(0..=m).collect::<Vec<_>>())?;
            let back = SimplexMap::inclusion(m + 1 + n, &(m + 1..=m + 1 + n).collect::<Vec<_>>())?;
            let mut cell = Vec::new();
            for zz in 0..z.count(m + 1 + n) {
                let zf = z.act(&front, zz)?;
                let zb = z.act(&back, zz)?;
                for xs in (0..x.count(m)).filter(|&s| g.apply(m, s) == zf) {
                    for ys in (0..y.count(n)).filter(|&s| h.apply(n, s) == zb) {
                        cell.push(CommaSimplex { x: xs, y: ys, z: zz });
                    }
                }
            }
            row.push(cell);
        }
        elements.push(row);
    }
    let b = BisimplicialSet::from_elements(
        caps,
        &elements,
        |m, n, t| format!("({}|{}|{})", x.label(m, t.x), y.label(n, t.y), z.label(m + 1 + n, t.z)),
        &|m, n, t, i| {
            Ok(CommaSimplex {
                x: x.face(m, t.x, i),
                y: t.y,
                z: z.face(m + 1 + n, t.z, i),
            })
        },
        &|m, n, t, i| {
            Ok(CommaSimplex {
                x: x.degeneracy(m, t.x, i),
                y: t.y,
                z: z.degeneracy(m + 1 + n, t.z, i),
            })
        },
        &|m, n, t, j| {
            Ok(CommaSimplex {
                x: t.x,
                y: y.face(n, t.y, j),
                z: z.face(m + 1 + n, t.z, m + 1 + j),
            })
        },
        &|m, n, t, j| {
            Ok(CommaSimplex {
                x: t.x,
                y: y.degeneracy(n, t.y, j),
                z: z.degeneracy(m + 1 + n, t.z, m + 1 + j),
            })
        },
    )?;
    Ok((b, elements))
}

/// Checks that `(Z↓g)_{m,•}` is the disjoint union of the slices `X∕z` over `z ∈ Z_m`,
/// compatibly with the vertical operators.
pub fn fiber_decomposition_report(
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    g: &SimplicialMap,
    m: usize,
    cn: usize,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let id = SimplicialMap::identity(z);
    let (comma, elements) = comma_bisimplicial(z, x, z, &id, g, (m, cn))?;
    let column = comma.column(m);
    let slices = (0..z.count(m))
        .map(|zi| slice_under(x, z, g, m, zi))
        .collect::<Result<Vec<_>>>()?;
    for n in 0..=cn {
        let total: usize = slices.iter().map(|s| s.set.count(n)).sum();
        if total != column.count(n) {
            report.violation(
                "fiber decomposition",
                format!("level {n}"),
                format!("{} comma simplices but {} slice simplices", column.count(n), total),
            );
        }
        let mut hit: Vec<Vec<bool>> = slices.iter().map(|s| vec![false; s.set.count(n)]).collect();
        for (k, t) in elements[m][n].iter().enumerate() {
            let Some(idx) = slices[t.x].index(n, t.y, t.z) else {
                report.violation(
                    "fiber decomposition",
                    format!("level {n}"),
                    format!("{} lies in no fiber", column.label(n, k)),
                );
                continue;
            };
            if hit[t.x][idx] {
                report.violation(
                    "fiber decomposition",
                    format!("level {n}"),
                    "two comma simplices share a fiber element",
                );
            }
            hit[t.x][idx] = true;
            if n > 0 {
                for j in 0..=n {
                    let f = &elements[m][n - 1][column.face(n, k, j)];
                    let sf = slices[t.x].set.face(n, idx, j);
                    if f.x != t.x || slices[t.x].index(n - 1, f.y, f.z) != Some(sf) {
                        report.violation(
                            "fiber decomposition",
                            format!("level {n}"),
                            format!("face {j} leaves the fiber"),
                        );
                    }
                }
            }
        }
        if hit.iter().flatten().any(|h| !h) {
            report.violation(
                "fiber decomposition",
                format!("level {n}"),
                "a slice simplex is not covered",
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::std_simplex;

    #[test]
    fn comma_on_interval() {
        let d1 = std_simplex(1, 3);
        let id = SimplicialMap::identity(&d1);
        let (b, _) = comma_bisimplicial(&d1, &d1, &d1, &id, &id, (1, 1)).unwrap();
        assert_eq!(b.count(0, 0), 3);
        assert!(b.validate().is_valid());
    }

    #[test]
    fn diagonal_of_constant_is_the_set() {
        let d2 = std_simplex(2, 3);
        let b = BisimplicialSet::constant_horizontal(&d2, 3).unwrap();
        assert!(b.validate().is_valid());
        assert_eq!(diagonal(&b).unwrap(), d2);
    }

    #[test]
    fn fibers_of_triangle() {
        let d2 = std_simplex(2, 4);
        let id = SimplicialMap::identity(&d2);
        for m in 0..=1 {
            let r = fiber_decomposition_report(&d2, &d2, &id, m, 4 - m - 1).unwrap();
            assert!(r.is_valid(), "{r:?}");
        }
    }
}
