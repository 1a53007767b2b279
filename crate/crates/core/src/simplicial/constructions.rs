use std::collections::HashMap;

use crate::error::{AdcError, Result};
use crate::report::ValidationReport;

use super::{SimplicialMap, TruncatedSimplicialSet};

fn simplex_label(values: &[usize], m: usize) -> String {
    let parts: Vec<String> = values.iter().map(usize::to_string).collect();
    if m < 10 {
        parts.concat()
    } else {
        parts.join(".")
    }
}

/// Δ^m truncated at `cap`: n-simplices are the monotone maps `[n] → [m]`.
pub fn std_simplex(m: usize, cap: usize) -> TruncatedSimplicialSet {
    let elements: Vec<Vec<Vec<usize>>> = (0..=cap)
        .map(|n| {
            crate::orientals::SimplexMap::all(n, m)
                .into_iter()
                .map(|f| f.values().to_vec())
                .collect()
        })
        .collect();
    TruncatedSimplicialSet::from_elements(
        cap,
        &elements,
        |v| simplex_label(v, m),
        |_, v, i| {
            let mut w = v.clone();
            w.remove(i);
            Ok(w)
        },
        |_, v, i| {
            let mut w = v.clone();
            w.insert(i, v[i]);
            Ok(w)
        },
    )
    .expect("standard simplex is well formed")
}

/// The map `Δ^k → Δ^m` induced by `θ: [k] → [m]`, by postcomposition.
pub fn std_simplex_map(theta: &crate::orientals::SimplexMap, cap: usize) -> Result<SimplicialMap> {
    use crate::orientals::SimplexMap;
    let levels = (0..=cap)
        .map(|n| {
            let index: HashMap<SimplexMap, usize> = SimplexMap::all(n, theta.target_dim())
                .into_iter()
                .enumerate()
                .map(|(i, f)| (f, i))
                .collect();
            SimplexMap::all(n, theta.source_dim())
                .iter()
                .map(|f| Ok(index[&theta.after(f)?]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap { levels })
}

/// X^op: the same simplices with `d_i` and `s_i` renamed `d_{n−i}` and `s_{n−i}`.
pub fn op_dual(x: &TruncatedSimplicialSet) -> TruncatedSimplicialSet {
    let faces = x
        .faces
        .iter()
        .map(|lv| lv.iter().map(|f| f.iter().rev().copied().collect()).collect())
        .collect();
    let degeneracies = x
        .degeneracies
        .iter()
        .map(|lv| lv.iter().map(|s| s.iter().rev().copied().collect()).collect())
        .collect();
    TruncatedSimplicialSet {
        cap: x.cap,
        levels: x.levels.clone(),
        faces,
        degeneracies,
    }
}

/// A set of pairs `(a, x)` closed under the diagonal operators: a product or
/// a pullback.
#[derive(Debug, Clone)]
pub struct Product {
    pub set: TruncatedSimplicialSet,
    pub left: TruncatedSimplicialSet,
    pub right: TruncatedSimplicialSet,
    pub pairs: Vec<Vec<(usize, usize)>>,
    lookup: Vec<HashMap<(usize, usize), usize>>,
}

impl Product {
    fn build(
        left: &TruncatedSimplicialSet,
        right: &TruncatedSimplicialSet,
        keep: impl Fn(usize, usize, usize) -> bool,
    ) -> Result<Self> {
        let cap = left.cap.min(right.cap);
        let pairs: Vec<Vec<(usize, usize)>> = (0..=cap)
            .map(|n| {
                let mut v = Vec::new();
                for a in 0..left.count(n) {
                    for x in 0..right.count(n) {
                        if keep(n, a, x) {
                            v.push((a, x));
                        }
                    }
                }
                v
            })
            .collect();
        let tagged: Vec<Vec<(usize, usize, usize)>> = pairs
            .iter()
            .enumerate()
            .map(|(n, lv)| lv.iter().map(|&(a, x)| (n, a, x)).collect())
            .collect();
        let set = TruncatedSimplicialSet::from_elements(
            cap,
            &tagged,
            |&(n, a, x)| format!("({},{})", left.label(n, a), right.label(n, x)),
            |n, &(_, a, x), i| Ok((n - 1, left.face(n, a, i), right.face(n, x, i))),
            |n, &(_, a, x), i| Ok((n + 1, left.degeneracy(n, a, i), right.degeneracy(n, x, i))),
        )?;
        let lookup = pairs
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(i, &p)| (p, i)).collect())
            .collect();
        Ok(Self {
            set,
            left: left.truncate(cap)?,
            right: right.truncate(cap)?,
            pairs,
            lookup,
        })
    }

    pub fn index(&self, n: usize, a: usize, x: usize) -> Result<usize> {
        self.lookup[n]
            .get(&(a, x))
            .copied()
            .ok_or_else(|| AdcError::Incompatible(format!("pair ({a},{x}) is not a level-{n} simplex")))
    }

    pub fn projection_left(&self) -> SimplicialMap {
        SimplicialMap {
            levels: self.pairs.iter().map(|lv| lv.iter().map(|p| p.0).collect()).collect(),
        }
    }

    pub fn projection_right(&self) -> SimplicialMap {
        SimplicialMap {
            levels: self.pairs.iter().map(|lv| lv.iter().map(|p| p.1).collect()).collect(),
        }
    }
}

pub fn product(left: &TruncatedSimplicialSet, right: &TruncatedSimplicialSet) -> Result<Product> {
    Product::build(left, right, |_, _, _| true)
}

/// Δ¹ × X.
pub fn interval_product(x: &TruncatedSimplicialSet) -> Result<Product> {
    product(&std_simplex(1, x.cap), x)
}

/// `X ×_Z Y` for `f: X → Z` and `g: Y → Z`.
pub fn pullback(
    x: &TruncatedSimplicialSet,
    y: &TruncatedSimplicialSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<Product> {
    Product::build(x, y, |n, a, b| f.apply(n, a) == g.apply(n, b))
}

/// A slice of `g: X → Z` at an m-simplex `z`, as pairs `(x, z′)`.
#[derive(Debug, Clone)]
pub struct Slice {
    pub set: TruncatedSimplicialSet,
    pub m: usize,
    pub z: usize,
    pub pairs: Vec<Vec<(usize, usize)>>,
    lookup: Vec<HashMap<(usize, usize), usize>>,
}

impl Slice {
    pub fn index(&self, n: usize, x: usize, zz: usize) -> Option<usize> {
        self.lookup[n].get(&(x, zz)).copied()
    }

    /// `(x, z′) ↦ x`.
    pub fn projection(&self) -> SimplicialMap {
        SimplicialMap {
            levels: self.pairs.iter().map(|lv| lv.iter().map(|p| p.0).collect()).collect(),
        }
    }
}

fn preimages(
    g: &SimplicialMap,
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    cap: usize,
) -> Vec<Vec<Vec<usize>>> {
    (0..=cap)
        .map(|n| {
            let mut pre = vec![Vec::new(); z.count(n)];
            for s in 0..x.count(n) {
                pre[g.apply(n, s)].push(s);
            }
            pre
        })
        .collect()
}

fn restriction(m: usize, n: usize, range: std::ops::RangeInclusive<usize>) -> Result<crate::orientals::SimplexMap> {
    crate::orientals::SimplexMap::inclusion(m + 1 + n, &range.collect::<Vec<_>>())
}

fn check_slice_inputs(
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    g: &SimplicialMap,
    m: usize,
    zi: usize,
) -> Result<usize> {
    if z.cap < m + 1 {
        return Err(AdcError::Truncation(format!(
            "slicing at a {m}-simplex needs level {} of the base, which is truncated at {}",
            m + 1,
            z.cap
        )));
    }
    if zi >= z.count(m) {
        return Err(AdcError::Incompatible(format!("no simplex {zi} in level {m}")));
    }
    if g.levels.len() < x.cap.min(z.cap) + 1 {
        return Err(AdcError::Incompatible("map has too few levels".into()));
    }
    Ok(x.cap.min(z.cap - m - 1))
}

fn build_slice(
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    m: usize,
    zi: usize,
    cap: usize,
    pairs: Vec<Vec<(usize, usize)>>,
    offset: impl Fn(usize) -> usize,
) -> Result<Slice> {
    let tagged: Vec<Vec<(usize, usize, usize)>> = pairs
        .iter()
        .enumerate()
        .map(|(n, lv)| lv.iter().map(|&(a, b)| (n, a, b)).collect())
        .collect();
    let set = TruncatedSimplicialSet::from_elements(
        cap,
        &tagged,
        |&(n, a, b)| format!("({}|{})", x.label(n, a), z.label(m + 1 + n, b)),
        |n, &(_, a, b), i| Ok((n - 1, x.face(n, a, i), z.face(m + 1 + n, b, offset(n) + i))),
        |n, &(_, a, b), i| Ok((n + 1, x.degeneracy(n, a, i), z.degeneracy(m + 1 + n, b, offset(n) + i))),
    )?;
    let lookup = pairs
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, &p)| (p, i)).collect())
        .collect();
    Ok(Slice {
        set,
        m,
        z: zi,
        pairs,
        lookup,
    })
}

/// X∕z: pairs `(x, z′)` with `z′` restricting to `z` on `[0, m]` and to `g(x)` after it.
pub fn slice_under(
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    g: &SimplicialMap,
    m: usize,
    zi: usize,
) -> Result<Slice> {
    let cap = check_slice_inputs(x, z, g, m, zi)?;
    let pre = preimages(g, x, z, cap);
    let mut pairs = Vec::new();
    for n in 0..=cap {
        let front = restriction(m, n, 0..=m)?;
        let back = restriction(m, n, m + 1..=m + 1 + n)?;
        let mut lv = Vec::new();
        for zz in 0..z.count(m + 1 + n) {
            if z.act(&front, zz)? == zi {
                for &s in &pre[n][z.act(&back, zz)?] {
                    lv.push((s, zz));
                }
            }
        }
        pairs.push(lv);
    }
    build_slice(x, z, m, zi, cap, pairs, move |_| m + 1)
}

/// X\z: pairs `(x, z′)` with `z′` restricting to `g(x)` on `[0, n]` and to `z` after it.
pub fn slice_over(
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    g: &SimplicialMap,
    m: usize,
    zi: usize,
) -> Result<Slice> {
    let cap = check_slice_inputs(x, z, g, m, zi)?;
    let pre = preimages(g, x, z, cap);
    let mut pairs = Vec::new();
    for n in 0..=cap {
        let front = restriction(m, n, 0..=n)?;
        let back = restriction(m, n, n + 1..=n + 1 + m)?;
        let mut lv = Vec::new();
        for zz in 0..z.count(m + 1 + n) {
            if z.act(&back, zz)? == zi {
                for &s in &pre[n][z.act(&front, zz)?] {
                    lv.push((s, zz));
                }
            }
        }
        pairs.push(lv);
    }
    build_slice(x, z, m, zi, cap, pairs, |_| 0)
}

/// X\z computed as `(X^op ∕ z)^op`.
pub fn slice_over_via_dual(
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    g: &SimplicialMap,
    m: usize,
    zi: usize,
) -> Result<TruncatedSimplicialSet> {
    let under = slice_under(&op_dual(x), &op_dual(z), g, m, zi)?;
    Ok(op_dual(&under.set))
}

/// `(x, z′) ↦ (f(x), z′)` between two under-slices at the same simplex.
pub fn slice_map(f: &SimplicialMap, source: &Slice, target: &Slice) -> Result<SimplicialMap> {
    if source.m != target.m || source.z != target.z {
        return Err(AdcError::Incompatible("slices are taken at different simplices".into()));
    }
    let cap = source.set.cap.min(target.set.cap);
    let levels = (0..=cap)
        .map(|n| {
            source.pairs[n]
                .iter()
                .map(|&(s, zz)| {
                    target
                        .index(n, f.apply(n, s), zz)
                        .ok_or_else(|| AdcError::Incompatible(format!("the map is not over the base at level {n}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap { levels })
}

/// Checks `X∕z = (Z∕z) ×_Z X` simplex by simplex and operator by operator.
pub fn pullback_identity_report(
    x: &TruncatedSimplicialSet,
    z: &TruncatedSimplicialSet,
    g: &SimplicialMap,
    m: usize,
    zi: usize,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let direct = slice_under(x, z, g, m, zi)?;
    let id = SimplicialMap::identity(z);
    let base = slice_under(z, z, &id, m, zi)?;
    let pb = pullback(&base.set, x, &base.projection(), g)?;
    let cap = direct.set.cap.min(pb.set.cap);
    let mut levels = Vec::new();
    for n in 0..=cap {
        if direct.set.count(n) != pb.set.count(n) {
            report.violation(
                "pullback identity",
                format!("level {n}"),
                format!(
                    "{} simplices in X∕z, {} in the pullback",
                    direct.set.count(n),
                    pb.set.count(n)
                ),
            );
        }
        let mut lv = Vec::new();
        for &(s, zz) in &direct.pairs[n] {
            let b = base.index(n, g.apply(n, s), zz);
            match b.map(|b| pb.index(n, b, s)) {
                Some(Ok(i)) => lv.push(i),
                _ => {
                    report.violation(
                        "pullback identity",
                        format!("level {n}"),
                        format!("{} has no partner", x.label(n, s)),
                    );
                    lv.push(0);
                }
            }
        }
        levels.push(lv);
    }
    if report.is_valid() {
        let map = SimplicialMap { levels };
        let truncated = direct.set.truncate(cap)?;
        report.merge(map.validate(&truncated, &pb.set.truncate(cap)?));
        for n in 0..=cap {
            let mut seen = map.levels[n].clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != pb.set.count(n) {
                report.violation(
                    "pullback identity",
                    format!("level {n}"),
                    "comparison map is not bijective",
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn under_slice_of_triangle_at_vertex() {
        let d2 = std_simplex(2, 3);
        let id = SimplicialMap::identity(&d2);
        let s = slice_under(&d2, &d2, &id, 0, d2.find_label(0, "0").unwrap()).unwrap();
        assert_eq!(s.set.count(0), 3);
        assert!(s.set.validate().is_valid());
        let o = slice_over(&d2, &d2, &id, 0, d2.find_label(0, "2").unwrap()).unwrap();
        assert_eq!(o.set.count(0), 3);
        let dual = slice_over_via_dual(&d2, &d2, &id, 0, d2.find_label(0, "2").unwrap()).unwrap();
        assert_eq!(dual, o.set);
    }

    #[test]
    fn op_is_an_involution() {
        let s = std_simplex(2, 3);
        assert_eq!(op_dual(&op_dual(&s)), s);
        assert!(op_dual(&s).validate().is_valid());
    }

    #[test]
    fn interval_times_point() {
        let p = product(&std_simplex(1, 3), &std_simplex(0, 3)).unwrap();
        assert_eq!(p.set.counts(), std_simplex(1, 3).counts());
        assert!(p.set.validate().is_valid());
    }

    #[test]
    fn pullback_identity_on_edge() {
        let d2 = std_simplex(2, 4);
        let id = SimplicialMap::identity(&d2);
        let r = pullback_identity_report(&d2, &d2, &id, 1, d2.find_label(1, "01").unwrap()).unwrap();
        assert!(r.is_valid(), "{r:?}");
    }
}
