use serde::Serialize;

use crate::chain::ChainElement;
use crate::error::{AdcError, Result};
use crate::morphism::{same_complex, AdcMorphism, GradedMap};
use crate::report::ValidationReport;
use crate::scalar::{sign, Coefficient};

/// An antihomotopy `map` from `from` to `to`.
///
/// With shift 1 the endpoints are morphisms; with shift 2 they are themselves
/// antihomotopy maps and `map` is a 2-antihomotopy between them.
#[derive(Debug, Clone)]
pub struct Antihomotopy<C> {
    pub from: GradedMap<C>,
    pub to: GradedMap<C>,
    pub map: GradedMap<C>,
}

impl<C: Coefficient> Antihomotopy<C> {
    pub fn new(from: GradedMap<C>, to: GradedMap<C>, map: GradedMap<C>) -> Result<Self> {
        let h = Self { from, to, map };
        h.check_shape()?;
        Ok(h)
    }

    /// The zero antihomotopy from `f` to itself.
    pub fn identity_on(f: &GradedMap<C>) -> Self {
        let map = GradedMap::zero(f.source().clone(), f.target().clone(), f.shift() + 1);
        Self {
            from: f.clone(),
            to: f.clone(),
            map,
        }
    }

    pub fn shift(&self) -> usize {
        self.map.shift()
    }

    fn check_shape(&self) -> Result<()> {
        let s = self.map.shift();
        if !(1..=2).contains(&s) {
            return Err(AdcError::Incompatible(format!(
                "antihomotopy shift must be 1 or 2, found {s}"
            )));
        }
        for (what, f) in [("source map", &self.from), ("target map", &self.to)] {
            if f.shift() + 1 != s {
                return Err(AdcError::Incompatible(format!(
                    "{what} has shift {} but the antihomotopy has shift {s}",
                    f.shift()
                )));
            }
            if !same_complex(f.source(), self.map.source()) || !same_complex(f.target(), self.map.target()) {
                return Err(AdcError::Incompatible(format!("{what} has mismatched endpoints")));
            }
        }
        Ok(())
    }

    /// Only the signed equation `d h_i - h_{i-1} d_i = (-1)^i (g_i - f_i)`.
    pub fn equation_report(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if let Err(e) = self.check_shape() {
            report.input_error(e.to_string());
            return report;
        }
        let source = self.map.source();
        let target = self.map.target();
        for b in source.basis_refs() {
            let result = (|| -> Result<Option<(ChainElement<C>, ChainElement<C>)>> {
                let hx = self.map.image(b);
                let mut lhs = target.boundary(hx)?;
                if b.degree > 0 {
                    let hdx = self.map.apply(source.d_basis(b))?;
                    lhs = lhs.sub(&hdx)?;
                }
                let diff = self.to.image(b).sub(self.from.image(b))?;
                let rhs = diff.scale(&sign::<C>(b.degree as i64))?;
                Ok(if lhs == rhs { None } else { Some((lhs, rhs)) })
            })();
            match result {
                Ok(None) => {}
                Ok(Some((l, r))) => report.violation(
                    "antihomotopy equation",
                    format!("{} (degree {})", source.id(b), b.degree),
                    format!(
                        "dh - hd = {} but (-1)^i(g - f) = {}",
                        target.format_chain(&l),
                        target.format_chain(&r)
                    ),
                ),
                Err(e) => report.input_error(e.to_string()),
            }
        }
        report
    }

    /// The equation together with positivity of every image.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.equation_report();
        if report.has_input_errors() {
            return report;
        }
        for b in self.map.source().basis_refs() {
            if !self.map.image(b).is_positive() {
                report.violation("positivity", self.map.source().id(b), self.map.describe_image(b));
            }
        }
        report
    }

    /// `h∘f`: endpoints and map all precomposed with `f`.
    pub fn precompose(&self, f: &AdcMorphism<C>) -> Result<Self> {
        Self::new(self.from.compose(f)?, self.to.compose(f)?, self.map.compose(f)?)
    }

    /// `g∘h`: endpoints and map all postcomposed with `g`.
    pub fn postcompose(&self, g: &AdcMorphism<C>) -> Result<Self> {
        Self::new(g.compose(&self.from)?, g.compose(&self.to)?, g.compose(&self.map)?)
    }

    /// Concatenation `self + next`, from `self.from` to `next.to`.
    pub fn add(&self, next: &Self) -> Result<Self> {
        if self.to != next.from {
            return Err(AdcError::Incompatible(
                "antihomotopies are not composable: endpoint mismatch".into(),
            ));
        }
        Self::new(self.from.clone(), next.to.clone(), self.map.add(&next.map)?)
    }

    /// Endpoints swapped and all images negated. The equation is preserved.
    pub fn reversed_negated(&self) -> Result<Self> {
        Ok(Self {
            from: self.to.clone(),
            to: self.from.clone(),
            map: self.map.neg()?,
        })
    }
}

/// A retract `r∘i = id` with an antihomotopy from the identity to `i∘r`.
#[derive(Debug, Clone)]
pub struct RetractStructure<C> {
    pub inclusion: AdcMorphism<C>,
    pub retraction: AdcMorphism<C>,
    pub homotopy: GradedMap<C>,
    pub strong: bool,
    pub over_base: bool,
    pub square_zero: bool,
}

/// Per-equation outcome of a retract check. Flags that were not requested
/// are `None`.
#[derive(Debug, Clone, Serialize)]
pub struct RetractReport {
    pub retraction_section: bool,
    pub homotopy: bool,
    pub strong: Option<bool>,
    pub over_base: Option<bool>,
    pub square_zero: Option<bool>,
    pub report: ValidationReport,
}

impl RetractReport {
    pub fn passed(&self) -> bool {
        self.report.is_valid()
    }
}

impl<C: Coefficient> RetractStructure<C> {
    pub fn antihomotopy(&self) -> Result<Antihomotopy<C>> {
        let l = self.inclusion.target().clone();
        Antihomotopy::new(
            GradedMap::identity(l),
            self.inclusion.compose(&self.retraction)?,
            self.homotopy.clone(),
        )
    }

    pub fn validate(&self) -> RetractReport {
        let mut report = ValidationReport::new();
        let mut out = RetractReport {
            retraction_section: false,
            homotopy: false,
            strong: None,
            over_base: None,
            square_zero: None,
            report: ValidationReport::new(),
        };
        let zero_check = |name: &str, m: Result<GradedMap<C>>, report: &mut ValidationReport| -> bool {
            match m {
                Ok(m) => match m.source().basis_refs().find(|&b| !m.image(b).is_zero()) {
                    None => true,
                    Some(b) => {
                        report.violation(name, m.source().id(b), m.describe_image(b));
                        false
                    }
                },
                Err(e) => {
                    report.input_error(e.to_string());
                    false
                }
            }
        };
        match self.retraction.compose(&self.inclusion) {
            Ok(ri) => {
                let id = GradedMap::identity(self.inclusion.source().clone());
                match ri.first_difference(&id) {
                    None => out.retraction_section = true,
                    Some(b) => report.violation("ri=id", ri.source().id(b), ri.describe_image(b)),
                }
            }
            Err(e) => report.input_error(e.to_string()),
        }
        match self.antihomotopy() {
            Ok(h) => {
                let r = h.validate();
                out.homotopy = r.is_valid();
                report.merge(r);
            }
            Err(e) => report.input_error(e.to_string()),
        }
        if self.strong {
            out.strong = Some(zero_check("hi=0", self.homotopy.compose(&self.inclusion), &mut report));
        }
        if self.over_base {
            out.over_base = Some(zero_check("rh=0", self.retraction.compose(&self.homotopy), &mut report));
        }
        if self.square_zero {
            out.square_zero = Some(zero_check("hh=0", self.homotopy.compose(&self.homotopy), &mut report));
        }
        out.report = report;
        out
    }
}
