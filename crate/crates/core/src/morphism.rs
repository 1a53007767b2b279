use std::sync::Arc;

use crate::chain::{BasisRef, ChainElement};
use crate::complex::AdcComplex;
use crate::error::{AdcError, Result};
use crate::report::ValidationReport;
use crate::scalar::Coefficient;

/// A linear map raising degree by `shift`, given on basis elements.
///
/// Shift 0 is an ADC morphism; shifts 1 and 2 carry the data of
/// antihomotopies and 2-antihomotopies.
#[derive(Debug, Clone)]
pub struct GradedMap<C> {
    source: Arc<AdcComplex<C>>,
    target: Arc<AdcComplex<C>>,
    shift: usize,
    images: Vec<Vec<ChainElement<C>>>,
}

pub type AdcMorphism<C> = GradedMap<C>;

/// Complexes are compared by pointer first, then structurally.
pub fn same_complex<C: Coefficient>(a: &Arc<AdcComplex<C>>, b: &Arc<AdcComplex<C>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<C: Coefficient> PartialEq for GradedMap<C> {
    fn eq(&self, other: &Self) -> bool {
        self.shift == other.shift
            && self.images == other.images
            && same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
    }
}

impl<C: Coefficient> Eq for GradedMap<C> {}

impl<C: Coefficient> GradedMap<C> {
    /// Builds a map from a closure on basis elements. Images landing above the
    /// target's top degree must be zero.
    pub fn from_fn(
        source: Arc<AdcComplex<C>>,
        target: Arc<AdcComplex<C>>,
        shift: usize,
        mut f: impl FnMut(BasisRef) -> Result<ChainElement<C>>,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(source.max_degree() + 1);
        for deg in 0..=source.max_degree() {
            let mut row = Vec::with_capacity(source.count(deg));
            for i in 0..source.count(deg) {
                let img = f(BasisRef::new(deg, i))?;
                if img.degree() != deg + shift {
                    return Err(AdcError::DegreeMismatch {
                        expected: deg + shift,
                        found: img.degree(),
                    });
                }
                target.check_chain(&img)?;
                row.push(img);
            }
            images.push(row);
        }
        Ok(Self {
            source,
            target,
            shift,
            images,
        })
    }

    /// Builds a map from identifiers: `action[(deg, id)]` is a list of
    /// `(coefficient, target id)`; missing entries map to zero.
    pub fn from_ids(
        source: Arc<AdcComplex<C>>,
        target: Arc<AdcComplex<C>>,
        shift: usize,
        action: &[(&str, Vec<(i64, &str)>)],
    ) -> Result<Self> {
        let mut table = std::collections::HashMap::new();
        for (id, terms) in action {
            let b = source.find(id).ok_or(AdcError::UnknownBasis {
                degree: 0,
                id: id.to_string(),
            })?;
            table.insert(b, target.chain(b.degree + shift, terms)?);
        }
        Self::from_fn(source, target, shift, |b| {
            Ok(table.remove(&b).unwrap_or_else(|| ChainElement::zero(b.degree + shift)))
        })
    }

    pub fn identity(k: Arc<AdcComplex<C>>) -> Self {
        Self::from_fn(k.clone(), k, 0, |b| Ok(ChainElement::basis(b.degree, b.index))).expect("identity")
    }

    pub fn zero(source: Arc<AdcComplex<C>>, target: Arc<AdcComplex<C>>, shift: usize) -> Self {
        Self::from_fn(source, target, shift, |b| Ok(ChainElement::zero(b.degree + shift))).expect("zero map")
    }

    pub fn source(&self) -> &Arc<AdcComplex<C>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AdcComplex<C>> {
        &self.target
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn image(&self, b: BasisRef) -> &ChainElement<C> {
        &self.images[b.degree][b.index]
    }

    pub fn image_of_id(&self, id: &str) -> Option<&ChainElement<C>> {
        self.source.find(id).map(|b| self.image(b))
    }

    /// Same action, different (structurally equal) endpoint handles.
    pub fn with_endpoints(mut self, source: Arc<AdcComplex<C>>, target: Arc<AdcComplex<C>>) -> Result<Self> {
        if !same_complex(&self.source, &source) || !same_complex(&self.target, &target) {
            return Err(AdcError::Incompatible("replacement endpoints differ".into()));
        }
        self.source = source;
        self.target = target;
        Ok(self)
    }

    pub fn apply(&self, x: &ChainElement<C>) -> Result<ChainElement<C>> {
        self.source.check_chain(x)?;
        let deg = x.degree();
        if deg > self.source.max_degree() {
            return Ok(ChainElement::zero(deg + self.shift));
        }
        x.map_linear(deg + self.shift, |i| Ok(self.images[deg][i].clone()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap<C>) -> Result<GradedMap<C>> {
        if !same_complex(&other.target, &self.source) {
            return Err(AdcError::Incompatible(format!(
                "cannot compose: {} is not {}",
                other.target.name(),
                self.source.name()
            )));
        }
        GradedMap::from_fn(
            other.source.clone(),
            self.target.clone(),
            self.shift + other.shift,
            |b| self.apply(other.image(b)),
        )
    }

    fn check_parallel(&self, other: &GradedMap<C>) -> Result<()> {
        if self.shift != other.shift
            || !same_complex(&self.source, &other.source)
            || !same_complex(&self.target, &other.target)
        {
            return Err(AdcError::Incompatible("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap<C>) -> Result<GradedMap<C>> {
        self.check_parallel(other)?;
        GradedMap::from_fn(self.source.clone(), self.target.clone(), self.shift, |b| {
            self.image(b).add(other.image(b))
        })
    }

    pub fn sub(&self, other: &GradedMap<C>) -> Result<GradedMap<C>> {
        self.check_parallel(other)?;
        GradedMap::from_fn(self.source.clone(), self.target.clone(), self.shift, |b| {
            self.image(b).sub(other.image(b))
        })
    }

    pub fn neg(&self) -> Result<GradedMap<C>> {
        GradedMap::from_fn(self.source.clone(), self.target.clone(), self.shift, |b| {
            self.image(b).neg()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().flatten().all(ChainElement::is_zero)
    }

    /// The first basis element with a negative coefficient in its image.
    pub fn first_non_positive(&self) -> Option<BasisRef> {
        self.source.basis_refs().find(|&b| !self.image(b).is_positive())
    }

    /// First basis element on which two parallel maps differ.
    pub fn first_difference(&self, other: &GradedMap<C>) -> Option<BasisRef> {
        self.source.basis_refs().find(|&b| self.image(b) != other.image(b))
    }

    pub fn describe_image(&self, b: BasisRef) -> String {
        format!("{} ↦ {}", self.source.id(b), self.target.format_chain(self.image(b)))
    }

    /// Checks that a degree-preserving map is an ADC morphism.
    pub fn validate_morphism(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.shift != 0 {
            report.input_error(format!("expected a degree-preserving map, found shift {}", self.shift));
            return report;
        }
        for b in self.source.basis_refs() {
            let img = self.image(b);
            let at = self.source.id(b).to_string();
            if !img.is_positive() {
                report.violation("positivity", at.clone(), self.describe_image(b));
            }
            if b.degree == 0 {
                match self.target.augment(img) {
                    Ok(v) if &v == self.source.augmentation_of(b.index) => {}
                    Ok(v) => report.violation(
                        "augmentation",
                        at,
                        format!(
                            "e({}) = {v} but e({}) = {}",
                            self.target.format_chain(img),
                            self.source.id(b),
                            self.source.augmentation_of(b.index)
                        ),
                    ),
                    Err(e) => report.input_error(e.to_string()),
                }
            } else {
                let lhs = self.target.boundary(img);
                let rhs = self.apply(self.source.d_basis(b));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => {}
                    (Ok(l), Ok(r)) => report.violation(
                        "d-commutation",
                        at,
                        format!(
                            "d(f(x)) = {} but f(d(x)) = {}",
                            self.target.format_chain(&l),
                            self.target.format_chain(&r)
                        ),
                    ),
                    (Err(e), _) | (_, Err(e)) => report.input_error(e.to_string()),
                }
            }
        }
        report
    }

    /// Whether the map is a rigid ordered inclusion, with a counterexample if not.
    pub fn rigid_ordered_inclusion(&self) -> Result<std::result::Result<(), String>> {
        if self.shift != 0 {
            return Ok(Err("not degree preserving".into()));
        }
        let mut images = Vec::new();
        let mut seen = std::collections::HashMap::new();
        for b in self.source.basis_refs() {
            let img = self.image(b);
            let single = img.len() == 1 && img.terms().next().is_some_and(|(_, c)| c.is_one());
            if !single {
                return Ok(Err(format!(
                    "{} is not sent to a basis element",
                    self.describe_image(b)
                )));
            }
            let (i, _) = img.terms().next().expect("single term");
            let t = BasisRef::new(img.degree(), i);
            if let Some(prev) = seen.insert(t, b) {
                return Ok(Err(format!(
                    "{} and {} have the same image {}",
                    self.source.id(prev),
                    self.source.id(b),
                    self.target.id(t)
                )));
            }
            images.push((b, t));
        }
        let ps = self.source.le_n_preorder()?;
        let pt = self.target.le_n_preorder()?;
        for &(x, fx) in &images {
            for &(y, fy) in &images {
                if ps.le(x, y) != pt.le(fx, fy) {
                    return Ok(Err(format!(
                        "order not reflected: {} ≤ {} is {} but {} ≤ {} is {}",
                        self.source.id(x),
                        self.source.id(y),
                        ps.le(x, y),
                        self.target.id(fx),
                        self.target.id(fy),
                        pt.le(fx, fy)
                    )));
                }
            }
        }
        Ok(Ok(()))
    }

    pub fn is_rigid_ordered_inclusion(&self) -> Result<bool> {
        Ok(self.rigid_ordered_inclusion()?.is_ok())
    }

    /// For a map sending generators to distinct generators, the generator
    /// each source element lands on.
    pub fn basis_image(&self, b: BasisRef) -> Option<BasisRef> {
        let img = self.image(b);
        match img.terms().collect::<Vec<_>>().as_slice() {
            [(i, c)] if c.is_one() => Some(BasisRef::new(img.degree(), *i)),
            _ => None,
        }
    }

    /// A stable key describing the action, used for deduplication and sorting.
    pub fn action_key(&self) -> Vec<ChainElement<C>> {
        self.images.iter().flatten().cloned().collect()
    }

    /// Compact printable action, `id↦chain;…`, in basis order.
    pub fn action_label(&self) -> String {
        self.source
            .basis_refs()
            .map(|b| format!("{}↦{}", self.source.id(b), self.target.format_chain(self.image(b))))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientals::{oriental, SimplexMap};

    #[test]
    fn vertex_inclusion_is_rigid() {
        let c0 = oriental::<i64>(0).unwrap().complex;
        let c2 = oriental::<i64>(2).unwrap().complex;
        let m = GradedMap::from_ids(c0, c2.clone(), 0, &[("0", vec![(1, "2")])]).unwrap();
        assert!(m.validate_morphism().is_valid());
        assert!(m.is_rigid_ordered_inclusion().unwrap());
        assert!(GradedMap::identity(c2).is_rigid_ordered_inclusion().unwrap());
    }

    #[test]
    fn fold_is_not_rigid() {
        let fold = crate::orientals::cosimplicial_image::<i64>(&SimplexMap::new(1, 0, vec![0, 0]).unwrap()).unwrap();
        assert!(fold.validate_morphism().is_valid());
        let err = fold.rigid_ordered_inclusion().unwrap().unwrap_err();
        assert!(err.contains("not sent to a basis element") || err.contains("same image"));
    }

    #[test]
    fn negated_edge_fails_positivity() {
        let c1 = oriental::<i64>(1).unwrap().complex;
        let f = GradedMap::from_ids(
            c1.clone(),
            c1,
            0,
            &[("0", vec![(1, "0")]), ("1", vec![(1, "1")]), ("0.1", vec![(-1, "0.1")])],
        )
        .unwrap();
        let r = f.validate_morphism();
        assert_eq!(r.violations_of("positivity").count(), 1);
        assert_eq!(r.violations_of("d-commutation").count(), 1);
    }

    #[test]
    fn composition_mismatch_is_an_error() {
        let c1 = oriental::<i64>(1).unwrap().complex;
        let c2 = oriental::<i64>(2).unwrap().complex;
        let a = GradedMap::identity(c1);
        let b = GradedMap::identity(c2);
        assert!(a.compose(&b).is_err());
    }
}
