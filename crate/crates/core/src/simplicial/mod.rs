//! Truncated simplicial and bisimplicial sets with explicit operator tables.

mod bisimplicial;
mod constructions;
mod homology;

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use bisimplicial::{comma_bisimplicial, diagonal, fiber_decomposition_report, BisimplicialSet, CommaSimplex};
pub use constructions::{
    interval_product, op_dual, product, pullback, pullback_identity_report, slice_map, slice_over, slice_over_via_dual,
    slice_under, std_simplex, std_simplex_map, Product, Slice,
};
pub use homology::{homology, reduced_homology, HomologyGroup};

use crate::error::{AdcError, Result};
use crate::orientals::SimplexMap;
use crate::report::ValidationReport;

/// Simplices of levels `0..=cap` with face and degeneracy tables.
///
/// `faces[n][x][i]` is `d_i x` in level `n − 1`; `degeneracies[n][x][i]` is
/// `s_i x` in level `n + 1`, present only below the cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSimplicialSet {
    pub cap: usize,
    pub levels: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl TruncatedSimplicialSet {
    /// Checks table shapes and index ranges.
    pub fn new(
        cap: usize,
        levels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let s = Self {
            cap,
            levels,
            faces,
            degeneracies,
        };
        s.check_shape()?;
        Ok(s)
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |msg: String| Err(AdcError::Format(msg));
        if self.levels.len() != self.cap + 1
            || self.faces.len() != self.cap + 1
            || self.degeneracies.len() != self.cap + 1
        {
            return bad(format!("expected {} levels in every table", self.cap + 1));
        }
        for n in 0..=self.cap {
            let count = self.levels[n].len();
            if self.faces[n].len() != count || self.degeneracies[n].len() != count {
                return bad(format!("level {n}: operator tables do not match the simplex count"));
            }
            for x in 0..count {
                let want_f = if n == 0 { 0 } else { n + 1 };
                if self.faces[n][x].len() != want_f {
                    return bad(format!("level {n}, simplex {x}: expected {want_f} faces"));
                }
                if n > 0 && self.faces[n][x].iter().any(|&f| f >= self.levels[n - 1].len()) {
                    return bad(format!("level {n}, simplex {x}: face out of range"));
                }
                let want_s = if n < self.cap { n + 1 } else { 0 };
                if self.degeneracies[n][x].len() != want_s {
                    return bad(format!("level {n}, simplex {x}: expected {want_s} degeneracies"));
                }
                if n < self.cap && self.degeneracies[n][x].iter().any(|&s| s >= self.levels[n + 1].len()) {
                    return bad(format!("level {n}, simplex {x}: degeneracy out of range"));
                }
            }
        }
        Ok(())
    }

    /// Builds a set from element lists and operator closures, resolving
    /// results by equality.
    pub fn from_elements<T: Clone + Eq + Hash>(
        cap: usize,
        elements: &[Vec<T>],
        label: impl Fn(&T) -> String,
        face: impl Fn(usize, &T, usize) -> Result<T>,
        degeneracy: impl Fn(usize, &T, usize) -> Result<T>,
    ) -> Result<Self> {
        if elements.len() != cap + 1 {
            return Err(AdcError::Truncation(format!("expected {} levels of elements", cap + 1)));
        }
        let index: Vec<HashMap<&T, usize>> = elements
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        let find = |n: usize, t: &T, what: &str| -> Result<usize> {
            index[n].get(t).copied().ok_or_else(|| {
                AdcError::Internal(format!(
                    "{what} of a level-{} simplex is missing from level {n}",
                    if what == "face" { n + 1 } else { n - 1 }
                ))
            })
        };
        let mut faces = Vec::with_capacity(cap + 1);
        let mut degeneracies = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut f_level = Vec::with_capacity(elements[n].len());
            let mut s_level = Vec::with_capacity(elements[n].len());
            for t in &elements[n] {
                let mut fs = Vec::new();
                if n > 0 {
                    for i in 0..=n {
                        fs.push(find(n - 1, &face(n, t, i)?, "face")?);
                    }
                }
                let mut ss = Vec::new();
                if n < cap {
                    for i in 0..=n {
                        ss.push(find(n + 1, &degeneracy(n, t, i)?, "degeneracy")?);
                    }
                }
                f_level.push(fs);
                s_level.push(ss);
            }
            faces.push(f_level);
            degeneracies.push(s_level);
        }
        let levels = elements.iter().map(|lv| lv.iter().map(&label).collect()).collect();
        Self::new(cap, levels, faces, degeneracies)
    }

    pub fn count(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, n: usize, x: usize) -> &str {
        &self.levels[n][x]
    }

    pub fn find_label(&self, n: usize, label: &str) -> Option<usize> {
        self.levels.get(n)?.iter().position(|l| l == label)
    }

    pub fn face(&self, n: usize, x: usize, i: usize) -> usize {
        self.faces[n][x][i]
    }

    pub fn degeneracy(&self, n: usize, x: usize, i: usize) -> usize {
        self.degeneracies[n][x][i]
    }

    /// `X(θ)(x)` for `θ: [k] → [n]` and `x ∈ X_n`.
    pub fn act(&self, theta: &SimplexMap, x: usize) -> Result<usize> {
        let n = theta.target_dim();
        let k = theta.source_dim();
        if n > self.cap || k > self.cap {
            return Err(AdcError::Truncation(format!(
                "operator {theta} between levels {k} and {n} leaves the truncation at {}",
                self.cap
            )));
        }
        if x >= self.count(n) {
            return Err(AdcError::Incompatible(format!("no simplex {x} in level {n}")));
        }
        let (image, repeats) = theta.epi_mono();
        let mut cur = x;
        let mut level = n;
        for v in (0..=n).rev() {
            if image.binary_search(&v).is_err() {
                cur = self.face(level, cur, v);
                level -= 1;
            }
        }
        for b in repeats {
            cur = self.degeneracy(level, cur, b);
            level += 1;
        }
        debug_assert_eq!(level, k);
        Ok(cur)
    }

    /// The vertices of an n-simplex, in order.
    pub fn vertices(&self, n: usize, x: usize) -> Result<Vec<usize>> {
        (0..=n).map(|v| self.act(&SimplexMap::vertex(n, v)?, x)).collect()
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degeneracy(n - 1, self.face(n, x, i), i) == x)
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.count(n)).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// Audits every simplicial identity available inside the truncation.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if let Err(e) = self.check_shape() {
            report.input_error(e.to_string());
            return report;
        }
        let mut fail = |what: String, n: usize, x: usize| {
            report.violation("simplicial identity", format!("level {n}, {}", self.label(n, x)), what);
        };
        for n in 0..=self.cap {
            for x in 0..self.count(n) {
                if n >= 2 {
                    for j in 0..=n {
                        for i in 0..j {
                            let a = self.face(n - 1, self.face(n, x, j), i);
                            let b = self.face(n - 1, self.face(n, x, i), j - 1);
                            if a != b {
                                fail(format!("d_{i} d_{j} ≠ d_{} d_{i}", j - 1), n, x);
                            }
                        }
                    }
                }
                if n < self.cap {
                    for j in 0..=n {
                        let sx = self.degeneracy(n, x, j);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, sx, i);
                            let ok = if i == j || i == j + 1 {
                                lhs == x
                            } else if i < j {
                                lhs == self.degeneracy(n - 1, self.face(n, x, i), j - 1)
                            } else {
                                lhs == self.degeneracy(n - 1, self.face(n, x, i - 1), j)
                            };
                            if !ok {
                                fail(format!("d_{i} s_{j} mismatch"), n, x);
                            }
                        }
                    }
                }
                if n + 2 <= self.cap {
                    for j in 0..=n {
                        for i in 0..=j {
                            let a = self.degeneracy(n + 1, self.degeneracy(n, x, j), i);
                            let b = self.degeneracy(n + 1, self.degeneracy(n, x, i), j + 1);
                            if a != b {
                                fail(format!("s_{i} s_{j} ≠ s_{} s_{i}", j + 1), n, x);
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// A copy truncated at a lower level.
    pub fn truncate(&self, cap: usize) -> Result<Self> {
        if cap > self.cap {
            return Err(AdcError::Truncation(format!(
                "cannot raise truncation from {} to {cap}",
                self.cap
            )));
        }
        let mut degeneracies = self.degeneracies[..=cap].to_vec();
        for s in &mut degeneracies[cap] {
            s.clear();
        }
        Self::new(
            cap,
            self.levels[..=cap].to_vec(),
            self.faces[..=cap].to_vec(),
            degeneracies,
        )
    }

    /// The set with one simplex in each level.
    pub fn point(cap: usize) -> Self {
        std_simplex(0, cap)
    }
}

/// Level-wise functions between truncated simplicial sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &TruncatedSimplicialSet) -> Self {
        Self {
            levels: (0..=x.cap).map(|n| (0..x.count(n)).collect()).collect(),
        }
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        let cap = self.levels.len().min(first.levels.len());
        let levels = (0..cap)
            .map(|n| {
                first.levels[n]
                    .iter()
                    .map(|&y| {
                        self.levels[n]
                            .get(y)
                            .copied()
                            .ok_or_else(|| AdcError::Incompatible(format!("composite undefined at level {n}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap { levels })
    }

    /// Checks commutation with faces and degeneracies.
    pub fn validate(&self, source: &TruncatedSimplicialSet, target: &TruncatedSimplicialSet) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.levels.len() != source.cap + 1 || target.cap < source.cap {
            report.input_error(format!(
                "map has {} levels; source cap {}, target cap {}",
                self.levels.len(),
                source.cap,
                target.cap
            ));
            return report;
        }
        for n in 0..=source.cap {
            if self.levels[n].len() != source.count(n) {
                report.input_error(format!("level {n} has the wrong number of values"));
                return report;
            }
            if let Some(&y) = self.levels[n].iter().find(|&&y| y >= target.count(n)) {
                report.input_error(format!("level {n} value {y} out of range"));
                return report;
            }
        }
        for n in 0..=source.cap {
            for x in 0..source.count(n) {
                let fx = self.apply(n, x);
                if n > 0 {
                    for i in 0..=n {
                        if self.apply(n - 1, source.face(n, x, i)) != target.face(n, fx, i) {
                            report.violation(
                                "face commutation",
                                format!("level {n}, {}", source.label(n, x)),
                                format!("f(d_{i} x) ≠ d_{i} f(x)"),
                            );
                        }
                    }
                }
                if n < source.cap {
                    for i in 0..=n {
                        if self.apply(n + 1, source.degeneracy(n, x, i)) != target.degeneracy(n, fx, i) {
                            report.violation(
                                "degeneracy commutation",
                                format!("level {n}, {}", source.label(n, x)),
                                format!("f(s_{i} x) ≠ s_{i} f(x)"),
                            );
                        }
                    }
                }
            }
        }
        report
    }
}

/// A map `Δ¹ × X → Y` read as a homotopy between its two ends.
#[derive(Debug, Clone)]
pub struct SimplicialHomotopy {
    pub domain: Product,
    pub map: SimplicialMap,
}

impl SimplicialHomotopy {
    /// The restriction to the end `ε ∈ {0, 1}` of the interval.
    pub fn end(&self, eps: usize) -> Result<SimplicialMap> {
        let x = &self.domain.right;
        let interval = &self.domain.left;
        let levels = (0..=x.cap)
            .map(|n| {
                let c = constant_simplex(interval, n, eps)?;
                (0..x.count(n))
                    .map(|s| Ok(self.map.apply(n, self.domain.index(n, c, s)?)))
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap { levels })
    }

    /// Checks the simplicial-map property and both end restrictions.
    pub fn validate(
        &self,
        target: &TruncatedSimplicialSet,
        from: &SimplicialMap,
        to: &SimplicialMap,
    ) -> ValidationReport {
        let mut report = self.map.validate(&self.domain.set, target);
        if report.has_input_errors() {
            return report;
        }
        for (eps, want, name) in [(0, from, "source end"), (1, to, "target end")] {
            match self.end(eps) {
                Ok(got) => {
                    for n in 0..got.levels.len() {
                        for x in 0..got.levels[n].len() {
                            if got.levels[n][x] != want.levels[n][x] {
                                report.violation(
                                    name,
                                    format!("level {n}, {}", self.domain.right.label(n, x)),
                                    format!(
                                        "h gives {} but the declared map gives {}",
                                        target.label(n, got.levels[n][x]),
                                        target.label(n, want.levels[n][x])
                                    ),
                                );
                            }
                        }
                    }
                }
                Err(e) => report.input_error(e.to_string()),
            }
        }
        report
    }

    /// `(a, x) ↦ f(x)`, the homotopy that does not move.
    pub fn constant(domain: Product, f: &SimplicialMap) -> Self {
        let levels = (0..=domain.set.cap)
            .map(|n| domain.pairs[n].iter().map(|&(_, x)| f.apply(n, x)).collect())
            .collect();
        Self {
            domain,
            map: SimplicialMap { levels },
        }
    }
}

/// The index of the constant n-simplex at vertex `eps` of a standard simplex.
fn constant_simplex(interval: &TruncatedSimplicialSet, n: usize, eps: usize) -> Result<usize> {
    let label: String = std::iter::repeat_n(eps.to_string(), n + 1).collect();
    interval
        .find_label(n, &label)
        .ok_or_else(|| AdcError::Incompatible(format!("no constant simplex {label} in the interval")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_triangle_levels() {
        let s = std_simplex(2, 3);
        assert_eq!(s.count(0), 3);
        assert_eq!(s.count(1), 6);
        assert!(s.validate().is_valid());
        assert_eq!(s.nondegenerate(1).len(), 3);
        assert_eq!(s.nondegenerate(3).len(), 0);
    }

    #[test]
    fn action_matches_composition() {
        let s = std_simplex(3, 3);
        for theta in SimplexMap::all(2, 3) {
            for x in 0..s.count(3) {
                let y = s.act(&theta, x).unwrap();
                // in the standard simplex a simplex is its own vertex map
                let vx: Vec<usize> = s
                    .label(3, x)
                    .chars()
                    .map(|c| c.to_digit(10).unwrap() as usize)
                    .collect();
                let want: String = theta.values().iter().map(|&i| vx[i].to_string()).collect();
                assert_eq!(s.label(2, y), want);
            }
        }
    }

    #[test]
    fn corrupted_face_is_caught() {
        let mut s = std_simplex(1, 2);
        let x = s.find_label(2, "001").unwrap();
        s.faces[2][x][0] = s.find_label(1, "00").unwrap();
        assert!(!s.validate().is_valid());
    }

    #[test]
    fn truncation_is_enforced() {
        let s = std_simplex(1, 1);
        assert!(matches!(
            s.act(&SimplexMap::identity(2), 0),
            Err(AdcError::Truncation(_))
        ));
    }
}
