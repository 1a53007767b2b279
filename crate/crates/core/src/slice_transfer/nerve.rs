//! Nerve-level shadows of the Gray tensor with the interval: the projection
//! `N(c(Δ1)⊗K) → Δ¹ × N(K)`, its Alexander–Whitney section, and the
//! simplicial homotopy attached to a map `c(Δ1)⊗K → L`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::AdcComplex;
use crate::enumerate::{nerve, precomposition_set, EnumerationBudget, Nerve, SearchOptions};
use crate::error::{AdcError, Result};
use crate::monoidal::{tensor_morphism, TensorComplex};
use crate::morphism::{AdcMorphism, GradedMap};
use crate::orientals::{aw_diagonal, cosimplicial_image_between, g_phi, oriental, GPhi, Oriental, Side, SimplexMap};
use crate::report::ValidationReport;
use crate::scalar::Coefficient;
use crate::simplicial::{interval_product, Product, SimplicialHomotopy, SimplicialMap};

/// `q₁(x⊗y) = e(y)x` and `q₂(x⊗y) = e(x)y`, each zero unless the other
/// factor has degree 0.
pub fn q_projections<C: Coefficient>(t: &TensorComplex<C>) -> Result<(AdcMorphism<C>, AdcMorphism<C>)> {
    t.projections()
}

/// `(x⊗y)∘∇` for `x: c(Δn) → K` and `y: c(Δn) → L`, into `t = K⊗L`.
pub fn aw_section<C: Coefficient>(
    o: &Oriental<C>,
    x: &AdcMorphism<C>,
    y: &AdcMorphism<C>,
    t: &TensorComplex<C>,
) -> Result<AdcMorphism<C>> {
    let (nn, nabla) = aw_diagonal(o)?;
    tensor_morphism(x, y, &nn, t)?.compose(&nabla)
}

/// Reads a simplex of the standard 1-simplex, labelled by its vertex
/// sequence, as a map `[n] → [1]`.
fn phi_of_label(label: &str) -> Result<SimplexMap> {
    let values = label
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| AdcError::Format(format!("not a vertex sequence: {label}")))?;
    if values.is_empty() {
        return Err(AdcError::Format("empty vertex sequence".into()));
    }
    SimplexMap::new(values.len() - 1, 1, values)
}

/// g_φ (or its lax mirror) cached by φ.
struct GPhiCache<C> {
    side: Side,
    cache: HashMap<SimplexMap, GPhi<C>>,
}

impl<C: Coefficient> GPhiCache<C> {
    fn new(side: Side) -> Self {
        Self {
            side,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, phi: &SimplexMap) -> Result<&GPhi<C>> {
        if !self.cache.contains_key(phi) {
            let g = g_phi::<C>(phi, self.side)?;
            self.cache.insert(phi.clone(), g);
        }
        Ok(&self.cache[phi])
    }
}

/// Outcome of the check that `N(q)∘s = id` on `Δ¹ × N(K)`.
#[derive(Debug, Clone, Serialize)]
pub struct SectionReport {
    pub complex: String,
    pub trunc: usize,
    pub nerve_counts: Vec<usize>,
    pub image_counts: Vec<usize>,
    pub budget: EnumerationBudget,
    /// The section agrees with `(id⊗x)∘g_φ` everywhere.
    pub matches_g_phi: bool,
    /// The image of the section is closed under faces and degeneracies and
    /// the section is a simplicial map onto it.
    pub section_simplicial: bool,
    pub projection_simplicial: bool,
    pub section_property: bool,
    pub failures: Vec<String>,
}

impl SectionReport {
    pub fn passed(&self) -> bool {
        self.matches_g_phi
            && self.section_simplicial
            && self.projection_simplicial
            && self.section_property
            && self.failures.is_empty()
    }
}

/// Builds `s(φ, x) = (c(φ)⊗x)∘∇` on `Δ¹ × N(K)` up to `trunc`, the image as a
/// simplicial set of morphisms `c(Δn) → c(Δ1)⊗K`, and checks `N(q)∘s = id`.
pub fn section_report<C: Coefficient>(
    k: &Arc<AdcComplex<C>>,
    trunc: usize,
    opts: SearchOptions,
) -> Result<SectionReport> {
    let nk = nerve(k, trunc, opts)?;
    let interval = oriental::<C>(1)?;
    let it = TensorComplex::new(interval.complex.clone(), k.clone(), k.max_degree() + 1)?;
    let (q1, q2) = q_projections(&it)?;
    let domain = interval_product(&nk.set)?;
    let mut gs = GPhiCache::<C>::new(Side::Oplax);
    let mut failures = Vec::new();
    let mut matches = true;
    // images per level, then deduplicated into a sorted list
    let mut raw: Vec<Vec<AdcMorphism<C>>> = Vec::new();
    for n in 0..=trunc {
        let o = &nk.orientals[n];
        let mut lv = Vec::new();
        for &(a, x) in &domain.pairs[n] {
            let phi = phi_of_label(domain.left.label(n, a))?;
            let c_phi = cosimplicial_image_between(&phi, o, &interval)?;
            let xm = &nk.simplices[n][x];
            let s = aw_section(o, &c_phi, xm, &it)?;
            let g = gs.get(&phi)?;
            let via_g =
                tensor_morphism(&GradedMap::identity(interval.complex.clone()), xm, &g.tensor, &it)?.compose(&g.map)?;
            if via_g != s {
                matches = false;
                failures.push(format!("level {n}: section differs from g_φ form at φ = {phi}"));
            }
            lv.push(s);
        }
        raw.push(lv);
    }
    let mut image: Vec<Vec<AdcMorphism<C>>> = raw.clone();
    for lv in &mut image {
        lv.sort_by_key(|f| f.action_key());
        lv.dedup_by(|a, b| a.action_key() == b.action_key());
    }
    let (deltas, sigmas) = oriental_operators(&nk.orientals, trunc)?;
    let image_set = match precomposition_set(&image, &deltas, &sigmas, trunc) {
        Ok(s) => Some(s),
        Err(e) => {
            failures.push(format!("image of the section is not closed: {e}"));
            None
        }
    };
    let mut section_simplicial = false;
    let mut projection_simplicial = false;
    let mut section_property = false;
    if let Some(img) = &image_set {
        let keys: Vec<HashMap<_, usize>> = image
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(i, f)| (f.action_key(), i)).collect())
            .collect();
        let s_map = SimplicialMap {
            levels: raw
                .iter()
                .enumerate()
                .map(|(n, lv)| lv.iter().map(|f| keys[n][&f.action_key()]).collect())
                .collect(),
        };
        let rep = s_map.validate(&domain.set, img);
        section_simplicial = rep.is_valid();
        record(&mut failures, "section", &rep);
        let mut q_levels = Vec::new();
        for n in 0..=trunc {
            let mut lv = Vec::new();
            for f in &image[n] {
                let a = vertex_label(&q1.compose(f)?, &interval)?;
                let ai = domain
                    .left
                    .find_label(n, &a)
                    .ok_or_else(|| AdcError::Internal(format!("no simplex {a} in Δ¹")))?;
                let x = nk
                    .index_of(n, &q2.compose(f)?)
                    .ok_or_else(|| AdcError::Enumeration(format!("q₂ leaves the enumerated nerve at level {n}")))?;
                lv.push(domain.index(n, ai, x)?);
            }
            q_levels.push(lv);
        }
        let q_map = SimplicialMap { levels: q_levels };
        let rep = q_map.validate(img, &domain.set);
        projection_simplicial = rep.is_valid();
        record(&mut failures, "projection", &rep);
        section_property = q_map.after(&s_map)? == SimplicialMap::identity(&domain.set);
        if !section_property {
            failures.push("N(q)∘s is not the identity".into());
        }
    }
    Ok(SectionReport {
        complex: k.name().to_string(),
        trunc,
        nerve_counts: nk.set.counts(),
        image_counts: image.iter().map(Vec::len).collect(),
        budget: nk.budget,
        matches_g_phi: matches,
        section_simplicial,
        projection_simplicial,
        section_property,
        failures,
    })
}

fn record(failures: &mut Vec<String>, what: &str, rep: &ValidationReport) {
    for e in &rep.input_errors {
        failures.push(format!("{what}: {e}"));
    }
    for v in rep.violations.iter().take(5) {
        failures.push(format!("{what}: {} at {}", v.check, v.at));
    }
}

/// Faces and degeneracies of the cosimplicial orientals, by level.
pub(crate) fn oriental_operators<C: Coefficient>(
    orientals: &[Oriental<C>],
    trunc: usize,
) -> Result<(Vec<Vec<AdcMorphism<C>>>, Vec<Vec<AdcMorphism<C>>>)> {
    let mut deltas = Vec::new();
    let mut sigmas = Vec::new();
    for n in 0..=trunc {
        deltas.push(if n > 0 {
            (0..=n)
                .map(|i| cosimplicial_image_between(&SimplexMap::face(n, i)?, &orientals[n - 1], &orientals[n]))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        });
        sigmas.push(if n < trunc {
            (0..=n)
                .map(|i| cosimplicial_image_between(&SimplexMap::degeneracy(n, i)?, &orientals[n + 1], &orientals[n]))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        });
    }
    Ok((deltas, sigmas))
}

/// The vertex sequence of a map `c(Δn) → c(Δ1)`, e.g. `"0011"`.
fn vertex_label<C: Coefficient>(f: &AdcMorphism<C>, interval: &Oriental<C>) -> Result<String> {
    let n = f.source().count(0);
    (0..n)
        .map(|v| {
            let img = f.image(crate::chain::BasisRef::new(0, v));
            (0..2)
                .find(|&e| img == &interval.complex.generator(interval.vertex(e)))
                .map(|e| char::from(b'0' + e as u8))
                .ok_or_else(|| AdcError::Incompatible("vertex image is not a vertex".into()))
        })
        .collect()
}

/// `N(α): Δ¹ × N(K) → N(L)` with its two ends.
#[derive(Debug, Clone)]
pub struct NerveHomotopy<C> {
    pub side: Side,
    pub source: Nerve<C>,
    pub target: Nerve<C>,
    pub homotopy: SimplicialHomotopy,
    /// `N(α(0⊗−))`.
    pub from: SimplicialMap,
    /// `N(α(1⊗−))`.
    pub to: SimplicialMap,
    pub report: ValidationReport,
}

impl<C: Coefficient> NerveHomotopy<C> {
    pub fn passed(&self) -> bool {
        self.report.is_valid()
    }
}

/// The nerve of `α: c(Δ1)⊗K → L` (oplax side) or `α: K⊗c(Δ1) → L` (lax
/// side), where `it` is the tensor `α` starts from.
///
/// On the oplax side `N(α)(φ, x) = α∘(id⊗x)∘g_φ`; on the lax side
/// `N(α)(φ, x) = α∘(x⊗id)∘g′_φ`.
pub fn oplax_nerve_homotopy<C: Coefficient>(
    it: &TensorComplex<C>,
    alpha: &AdcMorphism<C>,
    side: Side,
    trunc: usize,
    opts: SearchOptions,
) -> Result<NerveHomotopy<C>> {
    if alpha.shift() != 0 || !crate::morphism::same_complex(alpha.source(), &it.complex) {
        return Err(AdcError::Incompatible(
            "α must be a morphism out of the given tensor".into(),
        ));
    }
    let (interval_c, k) = match side {
        Side::Oplax => (it.left.clone(), it.right.clone()),
        Side::Lax => (it.right.clone(), it.left.clone()),
    };
    let interval = oriental::<C>(1)?;
    if *interval_c != *interval.complex {
        return Err(AdcError::Incompatible("the interval factor must be c(Δ1)".into()));
    }
    let l = alpha.target().clone();
    let source = nerve(&k, trunc, opts)?;
    let target = nerve(&l, trunc, opts)?;
    let ends: Vec<AdcMorphism<C>> = (0..2)
        .map(|e| {
            GradedMap::from_fn(k.clone(), l.clone(), 0, |z| {
                let v = interval.vertex(e);
                let w = match side {
                    Side::Oplax => it.element(v, z),
                    Side::Lax => it.element(z, v),
                };
                Ok(alpha.image(w).clone())
            })
        })
        .collect::<Result<_>>()?;
    let nerve_of = |f: &AdcMorphism<C>| -> Result<SimplicialMap> {
        let levels = (0..=trunc)
            .map(|n| {
                source.simplices[n]
                    .iter()
                    .map(|x| {
                        target.index_of(n, &f.compose(x)?).ok_or_else(|| {
                            AdcError::Enumeration(format!("image leaves the enumerated nerve at level {n}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap { levels })
    };
    let from = nerve_of(&ends[0])?;
    let to = nerve_of(&ends[1])?;
    let domain: Product = interval_product(&source.set)?;
    let id1 = GradedMap::identity(interval.complex.clone());
    let mut gs = GPhiCache::<C>::new(side);
    let mut levels = Vec::new();
    for n in 0..=trunc {
        let mut lv = Vec::new();
        for &(a, x) in &domain.pairs[n] {
            let phi = phi_of_label(domain.left.label(n, a))?;
            let g = gs.get(&phi)?;
            let xm = &source.simplices[n][x];
            let lift = match side {
                Side::Oplax => tensor_morphism(&id1, xm, &g.tensor, it)?,
                Side::Lax => tensor_morphism(xm, &id1, &g.tensor, it)?,
            };
            let y = alpha.compose(&lift)?.compose(&g.map)?;
            lv.push(
                target
                    .index_of(n, &y)
                    .ok_or_else(|| AdcError::Enumeration(format!("N(α) leaves the enumerated nerve at level {n}")))?,
            );
        }
        levels.push(lv);
    }
    let homotopy = SimplicialHomotopy {
        domain,
        map: SimplicialMap { levels },
    };
    let report = homotopy.validate(&target.set, &from, &to);
    Ok(NerveHomotopy {
        side,
        source,
        target,
        homotopy,
        from,
        to,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_parse() {
        assert_eq!(phi_of_label("0011").unwrap().values(), &[0, 0, 1, 1]);
        assert!(phi_of_label("0a").is_err());
    }

    #[test]
    fn section_on_the_interval() {
        let o = oriental::<i64>(1).unwrap();
        let r = section_report(&o.complex, 2, SearchOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn projection_gives_a_constant_homotopy() {
        let k = oriental::<i64>(1).unwrap();
        let i = oriental::<i64>(1).unwrap();
        let it = TensorComplex::new(i.complex.clone(), k.complex.clone(), 2).unwrap();
        let (_, q2) = q_projections(&it).unwrap();
        let h = oplax_nerve_homotopy(&it, &q2, Side::Oplax, 2, SearchOptions::default()).unwrap();
        assert!(h.passed(), "{:?}", h.report);
        assert_eq!(h.from, h.to);
        let constant = SimplicialHomotopy::constant(h.homotopy.domain.clone(), &h.from);
        assert_eq!(constant.map, h.homotopy.map);
    }

    #[test]
    fn projection_values() {
        let i = oriental::<i64>(1).unwrap();
        let it = TensorComplex::new(i.complex.clone(), i.complex.clone(), 2).unwrap();
        let (q1, _) = q_projections(&it).unwrap();
        let show = |id: &str| i.complex.format_chain(q1.image(it.complex.find(id).unwrap()));
        assert_eq!(show("0.1⊗0"), "0.1");
        assert_eq!(show("0.1⊗0.1"), "0");
    }
}
