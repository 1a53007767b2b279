//! The deformation retraction of the nerve slice `N(L)/c` onto `N(L)/c(m)`
//! for an anchor `c: c(Δm) → L`, computed on simplices.
//!
//! An n-simplex of `N(L)/c` is a morphism `F: c(Δm)⋆c(Δn) → L` with
//! `F(x⋆∅) = c(x)`. The retraction precomposes with `m⋆id`, the section
//! with ψ of the triangle `(r′, h′)`, and the homotopy at `φ: [n] → [1]`
//! with χ_φ of the cone `(h′, 0)`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::nerve::oriental_operators;
use super::{chi_phi_of, oriental_cone, oriental_triangle, psi, Psi};
use crate::chain::ChainElement;
use crate::complex::AdcComplex;
use crate::enumerate::{enumerate_morphisms, precomposition_set, EnumerationBudget, Pins, SearchOptions};
use crate::error::{AdcError, Result};
use crate::monoidal::{join_morphism, JoinComplex, Pushout};
use crate::morphism::{AdcMorphism, GradedMap};
use crate::orientals::{cosimplicial_image_between, oriental, Oriental, SimplexMap};
use crate::report::ValidationReport;
use crate::scalar::Coefficient;
use crate::simplicial::{interval_product, SimplicialHomotopy, SimplicialMap, TruncatedSimplicialSet};

/// `N(L)/a` for `a: c(Δk) → L`, truncated.
#[derive(Debug, Clone)]
pub struct SliceNerve<C> {
    pub anchor: AdcMorphism<C>,
    pub front: Oriental<C>,
    /// `c(Δk)⋆c(Δn)` for `n ≤ trunc`.
    pub joins: Vec<JoinComplex<C>>,
    pub simplices: Vec<Vec<AdcMorphism<C>>>,
    pub set: TruncatedSimplicialSet,
    pub budget: EnumerationBudget,
    keys: Vec<HashMap<Vec<ChainElement<C>>, usize>>,
}

impl<C: Coefficient> SliceNerve<C> {
    pub fn index_of(&self, n: usize, f: &AdcMorphism<C>) -> Option<usize> {
        self.keys[n].get(&f.action_key()).copied()
    }

    fn require(&self, n: usize, f: &AdcMorphism<C>, what: &str) -> Result<usize> {
        self.index_of(n, f).ok_or_else(|| {
            AdcError::Enumeration(format!(
                "{what} leaves the enumerated slice at level {n}; raise the coefficient cap"
            ))
        })
    }

    /// `F ↦ F∘ι₂`, the simplex of `N(L)` under a slice simplex.
    pub fn under(&self, n: usize, f: &AdcMorphism<C>) -> Result<AdcMorphism<C>> {
        let (_, i2) = self.joins[n].inclusions()?;
        f.compose(&i2)
    }
}

/// Enumerates `N(L)/a` up to `trunc`, with faces `F∘(id⋆c(δᵢ))` and
/// degeneracies `F∘(id⋆c(σᵢ))`.
pub fn slice_nerve<C: Coefficient>(
    anchor: &AdcMorphism<C>,
    trunc: usize,
    opts: SearchOptions,
) -> Result<SliceNerve<C>> {
    let k = anchor
        .source()
        .count(0)
        .checked_sub(1)
        .ok_or_else(|| AdcError::Incompatible("empty anchor".into()))?;
    let front = oriental::<C>(k)?;
    if *front.complex != **anchor.source() {
        return Err(AdcError::Incompatible("the anchor must start at an oriental".into()));
    }
    let anchor = anchor
        .clone()
        .with_endpoints(front.complex.clone(), anchor.target().clone())?;
    let l = anchor.target().clone();
    let orientals = (0..=trunc + 1).map(oriental::<C>).collect::<Result<Vec<_>>>()?;
    let joins = orientals
        .iter()
        .map(|o| JoinComplex::new(front.complex.clone(), o.complex.clone(), k + o.n + 1))
        .collect::<Result<Vec<_>>>()?;
    let mut simplices = Vec::new();
    let mut complete = true;
    for j in joins.iter().take(trunc + 1) {
        let mut pins = Pins::new();
        for x in front.complex.basis_refs() {
            pins.insert(j.element(Some(x), None).expect("x⋆∅"), anchor.image(x).clone());
        }
        let e = enumerate_morphisms(&j.complex, &l, opts, &pins)?;
        complete &= e.budget.complete;
        simplices.push(e.morphisms);
    }
    let (od, os) = oriental_operators(&orientals, trunc)?;
    let id = GradedMap::identity(front.complex.clone());
    let lift = |f: &AdcMorphism<C>, s: usize, t: usize| join_morphism(&id, f, &joins[s], &joins[t]);
    let deltas = od
        .iter()
        .enumerate()
        .map(|(n, lv)| lv.iter().map(|d| lift(d, n - 1, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let sigmas = os
        .iter()
        .enumerate()
        .map(|(n, lv)| lv.iter().map(|s| lift(s, n + 1, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let set = precomposition_set(&simplices, &deltas, &sigmas, trunc)?;
    let keys = simplices
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, f)| (f.action_key(), i)).collect())
        .collect();
    Ok(SliceNerve {
        anchor,
        front,
        joins: joins.into_iter().take(trunc + 1).collect(),
        simplices,
        set,
        budget: EnumerationBudget {
            coeff_cap: opts.coeff_cap,
            complete,
        },
        keys,
    })
}

/// Verdict of the deformation-retraction suite.
#[derive(Debug, Clone, Serialize)]
pub struct SdrReport {
    pub m: usize,
    pub trunc: usize,
    pub target: String,
    pub anchor: String,
    /// Simplices of `N(L)/c` per level.
    pub slice_counts: Vec<usize>,
    /// Simplices of `N(L)/c(m)` per level.
    pub base_counts: Vec<usize>,
    /// `Hom(c(Δ(m+1+n)), L)` with the front face pinned, per level.
    pub pinned_hom_counts: Vec<usize>,
    pub counts_match: bool,
    pub budget: EnumerationBudget,
    /// Both slices and the maps r, s pass every simplicial identity.
    pub simplicial: bool,
    /// `r∘s = id`.
    pub r_section: bool,
    /// h is a simplicial homotopy from `s∘r` to `id`.
    pub homotopy: bool,
    /// `h∘(Δ¹×s) = s∘pr₂`.
    pub strong: bool,
    /// r, s and h commute with the projections to `N(L)`.
    pub over_base: bool,
    pub failures: Vec<String>,
}

impl SdrReport {
    pub fn passed(&self) -> bool {
        self.simplicial
            && self.r_section
            && self.homotopy
            && self.strong
            && self.over_base
            && self.counts_match
            && self.failures.is_empty()
    }
}

fn record(failures: &mut Vec<String>, what: &str, rep: &ValidationReport) {
    for e in &rep.input_errors {
        failures.push(format!("{what}: {e}"));
    }
    for v in rep.violations.iter().take(5) {
        failures.push(format!("{what}: {} at {}: {}", v.check, v.at, v.witness));
    }
}

/// Runs the suite for an anchor `c: c(Δm) → L` up to truncation `trunc`.
pub fn slice_sdr_suite<C: Coefficient>(c: &AdcMorphism<C>, trunc: usize, opts: SearchOptions) -> Result<SdrReport> {
    let report = c.validate_morphism();
    if !report.is_valid() {
        return Err(AdcError::Incompatible(format!(
            "the anchor is not a morphism: {:?}",
            report
        )));
    }
    let l: Arc<AdcComplex<C>> = c.target().clone();
    let a = slice_nerve(c, trunc, opts)?;
    let m = a.front.n;
    let point = oriental::<C>(0)?;
    let vertex = cosimplicial_image_between(&SimplexMap::vertex(m, m)?, &point, &a.front)?;
    let cm = a.anchor.compose(&vertex)?;
    let b = slice_nerve(&cm, trunc, opts)?;
    let mut failures = Vec::new();

    let mut pinned_hom_counts = Vec::new();
    let mut complete = a.budget.complete && b.budget.complete;
    for n in 0..=trunc {
        let big = oriental::<C>(m + 1 + n)?;
        let mut pins = Pins::new();
        for x in a.front.complex.basis_refs() {
            let t = big.element(a.front.tuple(x)).expect("front face");
            pins.insert(t, a.anchor.image(x).clone());
        }
        let e = enumerate_morphisms(&big.complex, &l, opts, &pins)?;
        complete &= e.budget.complete;
        pinned_hom_counts.push(e.morphisms.len());
    }
    let slice_counts = a.set.counts();
    let counts_match = slice_counts == pinned_hom_counts;

    let mut simplicial = true;
    for (what, s) in [("slice", &a.set), ("base slice", &b.set)] {
        let rep = s.validate();
        simplicial &= rep.is_valid();
        record(&mut failures, what, &rep);
    }

    // r(F) = F∘(m⋆id)
    let r_levels = (0..=trunc)
        .map(|n| {
            let inc = join_morphism(
                &vertex,
                &GradedMap::identity(a.joins[n].right.clone()),
                &b.joins[n],
                &a.joins[n],
            )?;
            a.simplices[n]
                .iter()
                .map(|f| b.require(n, &f.compose(&inc)?, "r"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let r = SimplicialMap { levels: r_levels };

    // s(G) = (c, G)∘ψ
    let tri = oriental_triangle::<C>(m)?;
    let psis: Vec<Psi<C>> = a.joins.iter().map(|j| psi(&tri, &j.right)).collect::<Result<_>>()?;
    let glue = |p: &Pushout<C>, g: &AdcMorphism<C>, rest: &AdcMorphism<C>| -> Result<AdcMorphism<C>> {
        let anchor = a.anchor.clone().with_endpoints(p.from_l.source().clone(), l.clone())?;
        let rest = rest.clone().with_endpoints(p.from_m.source().clone(), l.clone())?;
        p.copair(&anchor, &rest)?.compose(g)
    };
    let s_levels = (0..=trunc)
        .map(|n| {
            let p = &psis[n];
            b.simplices[n]
                .iter()
                .map(|g| a.require(n, &glue(&p.pushout, &p.map, g)?, "s"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let s = SimplicialMap { levels: s_levels };
    for (what, f, src, tgt) in [("r", &r, &a.set, &b.set), ("s", &s, &b.set, &a.set)] {
        let rep = f.validate(src, tgt);
        simplicial &= rep.is_valid();
        record(&mut failures, what, &rep);
    }
    let r_section = r.after(&s)? == SimplicialMap::identity(&b.set);
    if !r_section {
        failures.push("r∘s is not the identity".into());
    }

    // h(φ, F) = (c, F)∘χ_φ
    let cone = oriental_cone::<C>(m)?;
    let domain = interval_product(&a.set)?;
    let mut chis: HashMap<SimplexMap, (Pushout<C>, AdcMorphism<C>)> = HashMap::new();
    let mut h_levels = Vec::new();
    for n in 0..=trunc {
        let mut lv = Vec::new();
        for &(ai, fi) in &domain.pairs[n] {
            let label = domain.left.label(n, ai);
            let values: Vec<usize> = label.chars().map(|ch| (ch as u8 - b'0') as usize).collect();
            let phi = SimplexMap::new(n, 1, values)?;
            if !chis.contains_key(&phi) {
                let (ch, _, map) = chi_phi_of(&cone, &phi)?;
                chis.insert(phi.clone(), (ch.pushout, map));
            }
            let (p, map) = &chis[&phi];
            lv.push(a.require(n, &glue(p, map, &a.simplices[n][fi])?, "h")?);
        }
        h_levels.push(lv);
    }
    let h = SimplicialHomotopy {
        domain,
        map: SimplicialMap { levels: h_levels },
    };
    let sr = s.after(&r)?;
    let rep = h.validate(&a.set, &sr, &SimplicialMap::identity(&a.set));
    let homotopy = rep.is_valid();
    record(&mut failures, "h", &rep);

    // h(φ, s(G)) = s(G)
    let mut strong = true;
    for n in 0..=trunc {
        for ai in 0..h.domain.left.count(n) {
            for gi in 0..b.set.count(n) {
                let sg = s.apply(n, gi);
                if h.map.apply(n, h.domain.index(n, ai, sg)?) != sg {
                    strong = false;
                    failures.push(format!(
                        "strength fails at level {n}, ({}, {})",
                        h.domain.left.label(n, ai),
                        b.set.label(n, gi)
                    ));
                }
            }
        }
    }

    // projections to N(L)
    let mut over_base = true;
    for n in 0..=trunc {
        let under_a: Vec<AdcMorphism<C>> = a.simplices[n].iter().map(|f| a.under(n, f)).collect::<Result<_>>()?;
        let under_b: Vec<AdcMorphism<C>> = b.simplices[n].iter().map(|g| b.under(n, g)).collect::<Result<_>>()?;
        for (fi, u) in under_a.iter().enumerate() {
            if &under_b[r.apply(n, fi)] != u {
                over_base = false;
                failures.push(format!("r moves the base at level {n}"));
            }
        }
        for (gi, u) in under_b.iter().enumerate() {
            if &under_a[s.apply(n, gi)] != u {
                over_base = false;
                failures.push(format!("s moves the base at level {n}"));
            }
        }
        for (k, &(_, fi)) in h.domain.pairs[n].iter().enumerate() {
            if under_a[h.map.apply(n, k)] != under_a[fi] {
                over_base = false;
                failures.push(format!("h moves the base at level {n}"));
            }
        }
    }
    failures.truncate(20);

    Ok(SdrReport {
        m,
        trunc,
        target: l.name().to_string(),
        anchor: c.action_label(),
        slice_counts,
        base_counts: b.set.counts(),
        pinned_hom_counts,
        counts_match,
        budget: EnumerationBudget {
            coeff_cap: opts.coeff_cap,
            complete,
        },
        simplicial,
        r_section,
        homotopy,
        strong,
        over_base,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_anchor_is_trivial() {
        let o = oriental::<i64>(1).unwrap();
        let c = cosimplicial_image_between(&SimplexMap::vertex(1, 0).unwrap(), &oriental(0).unwrap(), &o).unwrap();
        let rep = slice_sdr_suite(&c, 2, SearchOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.slice_counts, rep.base_counts);
    }

    #[test]
    fn interval_over_itself() {
        let o = oriental::<i64>(1).unwrap();
        let c = GradedMap::identity(o.complex.clone());
        let rep = slice_sdr_suite(&c, 2, SearchOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}
