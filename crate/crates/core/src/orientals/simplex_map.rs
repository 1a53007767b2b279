use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AdcError, Result};

/// A weakly increasing map `[m] → [n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexMap {
    m: usize,
    n: usize,
    values: Vec<usize>,
}

impl SimplexMap {
    pub fn new(m: usize, n: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != m + 1 {
            return Err(AdcError::SimplexMap(format!(
                "expected {} values, found {}",
                m + 1,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v > n) {
            return Err(AdcError::SimplexMap(format!("value {v} outside [0, {n}]")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(AdcError::SimplexMap(format!("{values:?} is not weakly increasing")));
        }
        Ok(Self { m, n, values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: n,
            n,
            values: (0..=n).collect(),
        }
    }

    pub fn constant(m: usize, n: usize, v: usize) -> Result<Self> {
        Self::new(m, n, vec![v; m + 1])
    }

    /// The vertex `v` as a map `[0] → [n]`.
    pub fn vertex(n: usize, v: usize) -> Result<Self> {
        Self::new(0, n, vec![v])
    }

    /// `δ_i : [n−1] → [n]`, skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(AdcError::SimplexMap(format!("no face δ_{i} into [{n}]")));
        }
        Ok(Self {
            m: n - 1,
            n,
            values: (0..=n).filter(|&v| v != i).collect(),
        })
    }

    /// `σ_i : [n+1] → [n]`, hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(AdcError::SimplexMap(format!("no degeneracy σ_{i} onto [{n}]")));
        }
        let mut values: Vec<usize> = (0..=n).collect();
        values.insert(i, i);
        Ok(Self { m: n + 1, n, values })
    }

    /// The map with the given sorted, distinct image.
    pub fn inclusion(n: usize, image: &[usize]) -> Result<Self> {
        if image.is_empty() || image.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AdcError::SimplexMap(format!("{image:?} is not strictly increasing")));
        }
        Self::new(image.len() - 1, n, image.to_vec())
    }

    pub fn source_dim(&self) -> usize {
        self.m
    }

    pub fn target_dim(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplexMap) -> Result<SimplexMap> {
        if first.n != self.m {
            return Err(AdcError::SimplexMap(format!(
                "cannot compose [{}]→[{}] after [{}]→[{}]",
                self.m, self.n, first.m, first.n
            )));
        }
        Ok(SimplexMap {
            m: first.m,
            n: self.n,
            values: first.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && self.values[self.m] == self.n && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.m == self.n && self.is_injective()
    }

    /// The involution `D(f)(i) = n − f(m − i)`.
    pub fn dual(&self) -> SimplexMap {
        SimplexMap {
            m: self.m,
            n: self.n,
            values: (0..=self.m).map(|i| self.n - self.values[self.m - i]).collect(),
        }
    }

    /// Number of `i` with `f(i) = v`.
    pub fn count_of(&self, v: usize) -> usize {
        self.values.iter().filter(|&&x| x == v).count()
    }

    /// Every weakly increasing map `[m] → [n]`, lexicographically.
    pub fn all(m: usize, n: usize) -> Vec<SimplexMap> {
        fn rec(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<SimplexMap>) {
            if cur.len() == m + 1 {
                out.push(SimplexMap {
                    m,
                    n,
                    values: cur.clone(),
                });
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for v in lo..=n {
                cur.push(v);
                rec(m, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, n, &mut Vec::new(), &mut out);
        out
    }

    /// Factorization as faces after degeneracies: the sorted image and the
    /// positions `b` where `f(b) = f(b+1)`.
    pub fn epi_mono(&self) -> (Vec<usize>, Vec<usize>) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let repeats = (0..self.m).filter(|&b| self.values[b] == self.values[b + 1]).collect();
        (image, repeats)
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(usize::to_string).collect();
        write!(f, "({})", vals.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_are_binomial() {
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(SimplexMap::all(m, n).len(), binom(m + n + 1, m + 1));
            }
        }
        assert_eq!(SimplexMap::all(1, 2).len(), 6);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..5 {
            for j in 0..=n {
                for i in 0..j {
                    // δ_j δ_i = δ_i δ_{j−1}
                    let lhs = SimplexMap::face(n, j)
                        .unwrap()
                        .after(&SimplexMap::face(n - 1, i).unwrap())
                        .unwrap();
                    let rhs = SimplexMap::face(n, i)
                        .unwrap()
                        .after(&SimplexMap::face(n - 1, j - 1).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn dual_is_an_involution_and_reverses_faces() {
        for f in SimplexMap::all(2, 3) {
            assert_eq!(f.dual().dual(), f);
        }
        for i in 0..=3 {
            assert_eq!(
                SimplexMap::face(3, i).unwrap().dual(),
                SimplexMap::face(3, 3 - i).unwrap()
            );
            assert_eq!(
                SimplexMap::degeneracy(3, i).unwrap().dual(),
                SimplexMap::degeneracy(3, 3 - i).unwrap()
            );
        }
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(SimplexMap::new(1, 1, vec![1, 0]).is_err());
        assert!(SimplexMap::new(1, 1, vec![0, 2]).is_err());
    }
}
