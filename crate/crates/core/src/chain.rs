use std::collections::BTreeMap;

use crate::error::Result;
use crate::scalar::{self, Coefficient};

/// Address of a basis element: its degree and its position in that degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisRef {
    pub degree: usize,
    pub index: usize,
}

impl BasisRef {
    pub fn new(degree: usize, index: usize) -> Self {
        Self { degree, index }
    }
}

/// A homogeneous integer combination of basis elements.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainElement<C> {
    degree: usize,
    terms: BTreeMap<usize, C>,
}

impl<C: Coefficient> ChainElement<C> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(degree: usize, index: usize) -> Self {
        Self::term(degree, index, C::one())
    }

    pub fn term(degree: usize, index: usize, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(index, coeff);
        }
        Self { degree, terms }
    }

    /// Builds a chain from `(index, coefficient)` pairs, summing repeated indices.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (usize, C)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (i, c) in terms {
            out.add_term(i, &c)?;
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: usize) -> C {
        self.terms.get(&index).cloned().unwrap_or_else(C::zero)
    }

    /// True when every coefficient is non-negative.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn max_coeff(&self) -> Option<&C> {
        self.terms.values().max()
    }

    pub fn add_term(&mut self, index: usize, coeff: &C) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        let next = match self.terms.get(&index) {
            Some(old) => scalar::add(old, coeff)?,
            None => coeff.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&index);
        } else {
            self.terms.insert(index, next);
        }
        Ok(())
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, other: &Self, coeff: &C) -> Result<()> {
        debug_assert_eq!(self.degree, other.degree);
        if coeff.is_zero() {
            return Ok(());
        }
        for (i, c) in other.terms() {
            self.add_term(i, &scalar::mul(c, coeff)?)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &-C::one())?;
        Ok(out)
    }

    pub fn scale(&self, coeff: &C) -> Result<Self> {
        let mut out = Self::zero(self.degree);
        out.add_scaled(self, coeff)?;
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            terms.insert(*i, scalar::neg(c)?);
        }
        Ok(Self {
            degree: self.degree,
            terms,
        })
    }

    /// Splits into `(x_plus, x_minus)` with disjoint supports and `x = x_plus - x_minus`.
    pub fn split(&self) -> Result<(Self, Self)> {
        let mut plus = Self::zero(self.degree);
        let mut minus = Self::zero(self.degree);
        for (i, c) in &self.terms {
            if c.is_positive() {
                plus.terms.insert(*i, c.clone());
            } else {
                minus.terms.insert(*i, scalar::neg(c)?);
            }
        }
        Ok((plus, minus))
    }

    /// Same coefficients, relabelled degree. Used when a zero chain is built
    /// before its degree is known.
    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }

    /// Applies a linear map given on basis indices.
    pub fn map_linear(&self, degree: usize, mut f: impl FnMut(usize) -> Result<ChainElement<C>>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (i, c) in &self.terms {
            let img = f(*i)?;
            out.add_scaled(&img.with_degree(degree), c)?;
        }
        Ok(out)
    }

    pub fn try_convert<D: Coefficient>(&self) -> Option<ChainElement<D>> {
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            terms.insert(*i, D::from_i128(c.to_i128()?)?);
        }
        Some(ChainElement {
            degree: self.degree,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chain(terms: &[(usize, i64)]) -> ChainElement<i64> {
        ChainElement::from_terms(1, terms.iter().copied()).unwrap()
    }

    #[test]
    fn zero_terms_are_dropped() {
        let x = chain(&[(0, 2), (1, -3), (0, -2)]);
        assert_eq!(x, chain(&[(1, -3)]));
        assert_eq!(x.coeff(0), 0);
        assert!(chain(&[]).is_zero());
    }

    #[test]
    fn split_matches_hand_example() {
        let x = chain(&[(0, 2), (1, -3), (2, 1)]);
        let (p, m) = x.split().unwrap();
        assert_eq!(p, chain(&[(0, 2), (2, 1)]));
        assert_eq!(m, chain(&[(1, 3)]));
    }

    #[test]
    fn overflowing_sum_errors() {
        let a = ChainElement::<i32>::term(0, 0, i32::MAX);
        assert!(a.add(&a).is_err());
    }

    proptest! {
        #[test]
        fn split_reassembles(terms in proptest::collection::vec((0usize..6, -5i64..6), 0..10)) {
            let x = chain(&terms);
            let (p, m) = x.split().unwrap();
            prop_assert!(p.is_positive() && m.is_positive());
            prop_assert!(p.support().all(|i| m.coeff(i) == 0));
            prop_assert_eq!(p.sub(&m).unwrap(), x);
        }

        #[test]
        fn addition_is_commutative(a in proptest::collection::vec((0usize..6, -5i64..6), 0..8),
                                   b in proptest::collection::vec((0usize..6, -5i64..6), 0..8)) {
            let (a, b) = (chain(&a), chain(&b));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }
    }
}
