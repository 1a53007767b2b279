//! The cosimplicial complexes c(Δn), the Alexander–Whitney diagonal, the maps
//! g_φ and the retraction of c(Δm) onto its last vertex.

mod coalgebra;
mod simplex_map;
pub mod uniqueness;

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

pub use coalgebra::{aw_coalgebra_report, CoalgebraReport};
pub use simplex_map::SimplexMap;

use crate::antihomotopy::RetractStructure;
use crate::chain::{BasisRef, ChainElement};
use crate::complex::AdcComplex;
use crate::error::{AdcError, Result};
use crate::monoidal::{tensor_morphism, JoinComplex, TensorComplex};
use crate::morphism::{AdcMorphism, GradedMap};
use crate::scalar::{sign, Coefficient};

/// Largest simplex dimension accepted by [`oriental`].
pub const MAX_ORIENTAL_DIM: usize = 10;

pub fn tuple_name(t: &[usize]) -> String {
    t.iter().map(usize::to_string).join(".")
}

/// c(Δn) with its tuple bookkeeping.
#[derive(Debug, Clone)]
pub struct Oriental<C> {
    pub n: usize,
    pub complex: Arc<AdcComplex<C>>,
    tuples: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<Vec<usize>, BasisRef>,
}

pub fn oriental<C: Coefficient>(n: usize) -> Result<Oriental<C>> {
    if n > MAX_ORIENTAL_DIM {
        return Err(AdcError::CapExceeded {
            cap: MAX_ORIENTAL_DIM,
            needed: n,
        });
    }
    let mut tuples = Vec::new();
    let mut lookup = HashMap::new();
    for p in 0..=n {
        let row: Vec<Vec<usize>> = (0..=n).combinations(p + 1).collect();
        for (i, t) in row.iter().enumerate() {
            lookup.insert(t.clone(), BasisRef::new(p, i));
        }
        tuples.push(row);
    }
    let mut differential = vec![Vec::new()];
    for p in 1..=n {
        let row = tuples[p]
            .iter()
            .map(|t| {
                let terms = (0..t.len()).map(|k| {
                    let mut face = t.clone();
                    face.remove(k);
                    (lookup[&face].index, sign::<C>(k as i64))
                });
                ChainElement::from_terms(p - 1, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        differential.push(row);
    }
    let names = tuples
        .iter()
        .map(|row| row.iter().map(|t| tuple_name(t)).collect())
        .collect();
    let complex = AdcComplex::from_parts(format!("c(Δ{n})"), names, differential, vec![C::one(); n + 1])?;
    Ok(Oriental {
        n,
        complex: Arc::new(complex),
        tuples,
        lookup,
    })
}

impl<C: Coefficient> Oriental<C> {
    pub fn tuple(&self, b: BasisRef) -> &[usize] {
        &self.tuples[b.degree][b.index]
    }

    pub fn element(&self, t: &[usize]) -> Option<BasisRef> {
        self.lookup.get(t).copied()
    }

    /// The generator named by a tuple, or zero when the tuple is not strictly
    /// increasing.
    pub fn tuple_chain(&self, t: &[usize]) -> Result<ChainElement<C>> {
        if t.is_empty() {
            return Err(AdcError::Incompatible("empty tuple".into()));
        }
        let deg = t.len() - 1;
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Ok(ChainElement::zero(deg));
        }
        let b = self.element(t).ok_or_else(|| AdcError::UnknownBasis {
            degree: deg,
            id: tuple_name(t),
        })?;
        Ok(ChainElement::basis(deg, b.index))
    }

    pub fn vertex(&self, v: usize) -> BasisRef {
        BasisRef::new(0, v)
    }
}

/// `c(φ)` between given orientals.
pub fn cosimplicial_image_between<C: Coefficient>(
    phi: &SimplexMap,
    source: &Oriental<C>,
    target: &Oriental<C>,
) -> Result<AdcMorphism<C>> {
    if phi.source_dim() != source.n || phi.target_dim() != target.n {
        return Err(AdcError::SimplexMap(format!(
            "{phi} does not go from [{}] to [{}]",
            source.n, target.n
        )));
    }
    GradedMap::from_fn(source.complex.clone(), target.complex.clone(), 0, |b| {
        let img: Vec<usize> = source.tuple(b).iter().map(|&i| phi.apply(i)).collect();
        target.tuple_chain(&img)
    })
}

pub fn cosimplicial_image<C: Coefficient>(phi: &SimplexMap) -> Result<AdcMorphism<C>> {
    cosimplicial_image_between(phi, &oriental(phi.source_dim())?, &oriental(phi.target_dim())?)
}

/// c(Δm) ⋆ c(Δn) ≅ c(Δ(m+1+n)) by shifting the right-hand tuple.
pub struct JoinIso<C> {
    pub join: JoinComplex<C>,
    pub left: Oriental<C>,
    pub right: Oriental<C>,
    pub target: Oriental<C>,
    pub iso: AdcMorphism<C>,
    pub inverse: AdcMorphism<C>,
}

pub fn oriental_join_iso<C: Coefficient>(m: usize, n: usize, cap: usize) -> Result<JoinIso<C>> {
    let left = oriental::<C>(m)?;
    let right = oriental::<C>(n)?;
    let target = oriental::<C>(m + 1 + n)?;
    let join = JoinComplex::new(left.complex.clone(), right.complex.clone(), cap)?;
    let merged = |z: BasisRef| -> Vec<usize> {
        let (x, y) = join.parts(z);
        let mut t: Vec<usize> = x.map(|b| left.tuple(b).to_vec()).unwrap_or_default();
        if let Some(b) = y {
            t.extend(right.tuple(b).iter().map(|j| m + 1 + j));
        }
        t
    };
    let iso = GradedMap::from_fn(join.complex.clone(), target.complex.clone(), 0, |z| {
        target.tuple_chain(&merged(z))
    })?;
    let mut back = HashMap::new();
    for z in join.complex.basis_refs() {
        back.insert(merged(z), z);
    }
    let inverse = GradedMap::from_fn(target.complex.clone(), join.complex.clone(), 0, |b| {
        let z = back[target.tuple(b)];
        Ok(join.complex.generator(z))
    })?;
    Ok(JoinIso {
        join,
        left,
        right,
        target,
        iso,
        inverse,
    })
}

/// Which side of the Gray tensor the interval sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The interval is the left factor: `c(Δ1) ⊗ K`.
    #[default]
    Oplax,
    /// The interval is the right factor: `K ⊗ c(Δ1)`.
    Lax,
}

/// ∇(i₀…iₚ) = Σ_l (i₀…i_l) ⊗ (i_l…iₚ), into c(Δn)⊗c(Δn).
///
/// The same diagonal serves both sides; they differ in which factor is
/// collapsed afterwards.
pub fn aw_diagonal<C: Coefficient>(o: &Oriental<C>) -> Result<(TensorComplex<C>, AdcMorphism<C>)> {
    let t = TensorComplex::new(o.complex.clone(), o.complex.clone(), 2 * o.n)?;
    let map = GradedMap::from_fn(o.complex.clone(), t.complex.clone(), 0, |b| {
        let tup = o.tuple(b);
        let mut out = ChainElement::zero(b.degree);
        for l in 0..tup.len() {
            let front = o.element(&tup[..=l]).expect("sub-tuple");
            let back = o.element(&tup[l..]).expect("sub-tuple");
            out.add_term(t.element(front, back).index, &C::one())?;
        }
        Ok(out)
    })?;
    Ok((t, map))
}

/// g_φ for `φ: [n] → [1]`, into `c(Δ1)⊗c(Δn)` (oplax) or `c(Δn)⊗c(Δ1)` (lax).
#[derive(Debug, Clone)]
pub struct GPhi<C> {
    pub phi: SimplexMap,
    pub side: Side,
    pub interval: Oriental<C>,
    pub simplex: Oriental<C>,
    pub tensor: TensorComplex<C>,
    pub map: AdcMorphism<C>,
}

/// The closed-form table for g_φ, evaluated on one tuple.
pub fn g_phi_table<C: Coefficient>(
    phi: &SimplexMap,
    side: Side,
    interval: &Oriental<C>,
    simplex: &Oriental<C>,
    tensor: &TensorComplex<C>,
    b: BasisRef,
) -> Result<ChainElement<C>> {
    let tup = simplex.tuple(b);
    let p = tup.len() - 1;
    let x = simplex.complex.generator(b);
    let tv = |t: &[usize]| interval.complex.generator(interval.element(t).expect("interval tuple"));
    match side {
        Side::Oplax => {
            let r = tup.iter().filter(|&&i| phi.apply(i) == 0).count();
            match r {
                0 => tensor.tensor_chains(&tv(&[1]), &x),
                1 => {
                    let mut out = tensor.tensor_chains(&tv(&[0]), &x)?;
                    if p > 0 {
                        let rest = simplex.tuple_chain(&tup[1..])?;
                        out = out.add(&tensor.tensor_chains(&tv(&[0, 1]), &rest)?)?;
                    }
                    Ok(out)
                }
                _ => tensor.tensor_chains(&tv(&[0]), &x),
            }
        }
        Side::Lax => {
            let r = tup.iter().filter(|&&i| phi.apply(i) == 1).count();
            match r {
                0 => tensor.tensor_chains(&x, &tv(&[0])),
                1 => {
                    let mut out = tensor.tensor_chains(&x, &tv(&[1]))?;
                    if p > 0 {
                        let rest = simplex.tuple_chain(&tup[..p])?;
                        out = out.add(&tensor.tensor_chains(&rest, &tv(&[0, 1]))?)?;
                    }
                    Ok(out)
                }
                _ => tensor.tensor_chains(&x, &tv(&[1])),
            }
        }
    }
}

/// Computes g_φ as `(c(φ)⊗id)∘∇` (or `(id⊗c(φ))∘∇` on the lax side), checks
/// it against the closed-form table, and returns it.
pub fn g_phi<C: Coefficient>(phi: &SimplexMap, side: Side) -> Result<GPhi<C>> {
    if phi.target_dim() != 1 {
        return Err(AdcError::SimplexMap(format!("{phi} does not land in [1]")));
    }
    let n = phi.source_dim();
    let interval = oriental::<C>(1)?;
    let simplex = oriental::<C>(n)?;
    let (nn, nabla) = aw_diagonal(&simplex)?;
    let c_phi = cosimplicial_image_between(phi, &simplex, &interval)?;
    let id = GradedMap::identity(simplex.complex.clone());
    let cap = n + 1;
    let (tensor, collapse) = match side {
        Side::Oplax => {
            let t = TensorComplex::new(interval.complex.clone(), simplex.complex.clone(), cap)?;
            let m = tensor_morphism(&c_phi, &id, &nn, &t)?;
            (t, m)
        }
        Side::Lax => {
            let t = TensorComplex::new(simplex.complex.clone(), interval.complex.clone(), cap)?;
            let m = tensor_morphism(&id, &c_phi, &nn, &t)?;
            (t, m)
        }
    };
    let map = collapse.compose(&nabla)?;
    for b in simplex.complex.basis_refs() {
        let table = g_phi_table(phi, side, &interval, &simplex, &tensor, b)?;
        if &table != map.image(b) {
            return Err(AdcError::Internal(format!(
                "g_φ for φ = {phi} disagrees with its table at {}: {} vs {}",
                simplex.complex.id(b),
                tensor.complex.format_chain(map.image(b)),
                tensor.complex.format_chain(&table)
            )));
        }
    }
    Ok(GPhi {
        phi: phi.clone(),
        side,
        interval,
        simplex,
        tensor,
        map,
    })
}

/// The retraction of c(Δm) onto its vertex `m`.
#[derive(Debug, Clone)]
pub struct VertexRetraction<C> {
    pub point: Oriental<C>,
    pub oriental: Oriental<C>,
    pub structure: RetractStructure<C>,
}

/// h′(i₀…iₚ) = (i₀…iₚ, m), zero when `iₚ = m`.
pub fn vertex_homotopy<C: Coefficient>(o: &Oriental<C>) -> Result<GradedMap<C>> {
    let m = o.n;
    GradedMap::from_fn(o.complex.clone(), o.complex.clone(), 1, |b| {
        let t = o.tuple(b);
        if *t.last().expect("non-empty") == m {
            return Ok(ChainElement::zero(b.degree + 1));
        }
        let mut ext = t.to_vec();
        ext.push(m);
        o.tuple_chain(&ext)
    })
}

pub fn vertex_retraction<C: Coefficient>(m: usize) -> Result<VertexRetraction<C>> {
    let point = oriental::<C>(0)?;
    let o = oriental::<C>(m)?;
    let inclusion = cosimplicial_image_between(&SimplexMap::vertex(m, m)?, &point, &o)?;
    let retraction = cosimplicial_image_between(&SimplexMap::constant(m, 0, 0)?, &o, &point)?;
    let homotopy = vertex_homotopy(&o)?;
    Ok(VertexRetraction {
        point,
        oriental: o,
        structure: RetractStructure {
            inclusion,
            retraction,
            homotopy,
            strong: true,
            over_base: true,
            square_zero: true,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let o = oriental::<i64>(2).unwrap();
        assert_eq!(o.complex.counts(), vec![3, 3, 1]);
        assert_eq!(
            o.complex
                .format_chain(o.complex.d_basis(o.element(&[0, 1, 2]).unwrap())),
            "0.1 - 0.2 + 1.2"
        );
        assert!(o.complex.validate().is_valid());
    }

    #[test]
    fn degenerate_surjection() {
        let s = SimplexMap::new(2, 1, vec![0, 0, 1]).unwrap();
        let f = cosimplicial_image::<i64>(&s).unwrap();
        assert!(f.image_of_id("0.1.2").unwrap().is_zero());
        assert_eq!(f.target().format_chain(f.image_of_id("0.2").unwrap()), "0.1");
        assert!(f.image_of_id("0.1").unwrap().is_zero());
        assert!(f.validate_morphism().is_valid());
    }

    #[test]
    fn small_diagonals() {
        let o = oriental::<i64>(2).unwrap();
        let (t, nabla) = aw_diagonal(&o).unwrap();
        let show = |id: &str| t.complex.format_chain(nabla.image_of_id(id).unwrap());
        assert_eq!(show("0"), "0⊗0");
        assert_eq!(show("0.1"), "0⊗0.1 + 0.1⊗1");
        assert_eq!(show("0.1.2"), "0⊗0.1.2 + 0.1⊗1.2 + 0.1.2⊗2");
    }

    #[test]
    fn g_phi_examples() {
        let id = SimplexMap::identity(1);
        let g = g_phi::<i64>(&id, Side::Oplax).unwrap();
        assert_eq!(
            g.tensor.complex.format_chain(g.map.image_of_id("0.1").unwrap()),
            "0⊗0.1 + 0.1⊗1"
        );
        let phi = SimplexMap::new(2, 1, vec![0, 0, 1]).unwrap();
        let g = g_phi::<i64>(&phi, Side::Oplax).unwrap();
        assert_eq!(
            g.tensor.complex.format_chain(g.map.image_of_id("0.1.2").unwrap()),
            "0⊗0.1.2"
        );
        let g = g_phi::<i64>(&SimplexMap::constant(2, 1, 1).unwrap(), Side::Oplax).unwrap();
        assert_eq!(
            g.tensor.complex.format_chain(g.map.image_of_id("0.2").unwrap()),
            "1⊗0.2"
        );
        let g = g_phi::<i64>(&id, Side::Lax).unwrap();
        assert_eq!(
            g.tensor.complex.format_chain(g.map.image_of_id("0.1").unwrap()),
            "0⊗0.1 + 0.1⊗1"
        );
    }

    #[test]
    fn retraction_of_triangle() {
        let r = vertex_retraction::<i64>(2).unwrap();
        let h = &r.structure.homotopy;
        let c = &r.oriental.complex;
        assert_eq!(c.format_chain(h.image_of_id("0").unwrap()), "0.2");
        assert_eq!(c.format_chain(h.image_of_id("0.1").unwrap()), "0.1.2");
        assert!(h.image_of_id("2").unwrap().is_zero());
        let report = r.structure.validate();
        assert!(report.passed(), "{:?}", report.report);
    }
}
