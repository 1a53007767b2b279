//! Chain-level descriptions of the slice functors attached to triangles and
//! cones of Steiner complexes, and their effect on nerves.
//!
//! A triangle `(f, k)` over `g′` gives `ψ: K⋆T → L ⊔_{K′} (K′⋆T)`; a cone
//! `(l, H)` between two triangles gives `χ: K⋆(c(Δ1)⊗T) → L ⊔_{K′} (K′⋆T)`.
//! Precomposition with these maps is how the slice functors act on simplices.

mod nerve;
mod sdr;

use std::sync::Arc;

use serde::Serialize;

pub use nerve::{aw_section, oplax_nerve_homotopy, q_projections, section_report, NerveHomotopy, SectionReport};
pub use sdr::{slice_nerve, slice_sdr_suite, SdrReport, SliceNerve};

use crate::antihomotopy::Antihomotopy;
use crate::chain::{BasisRef, ChainElement};
use crate::complex::AdcComplex;
use crate::error::{AdcError, Result};
use crate::monoidal::{join_morphism, pushout_along_rigid_inclusion, JoinArg, JoinComplex, Pushout, TensorComplex};
use crate::morphism::{same_complex, AdcMorphism, GradedMap};
use crate::orientals::{
    cosimplicial_image_between, g_phi, oriental, oriental_join_iso, vertex_homotopy, Oriental, Side, SimplexMap,
};
use crate::report::ValidationReport;
use crate::scalar::Coefficient;

/// `K --f--> K′ --g′--> L` together with `g: K → L` and an antihomotopy `k`
/// from `g` to `g′f`. `g′` must be a rigid ordered inclusion.
#[derive(Debug, Clone)]
pub struct SliceTriangle<C> {
    pub f: AdcMorphism<C>,
    pub g: AdcMorphism<C>,
    pub g_prime: AdcMorphism<C>,
    pub k: GradedMap<C>,
}

impl<C: Coefficient> SliceTriangle<C> {
    pub fn source(&self) -> &Arc<AdcComplex<C>> {
        self.f.source()
    }

    pub fn apex(&self) -> &Arc<AdcComplex<C>> {
        self.f.target()
    }

    pub fn base(&self) -> &Arc<AdcComplex<C>> {
        self.g.target()
    }

    /// A commutative triangle `g = g′f` with the zero antihomotopy.
    pub fn commutative(f: AdcMorphism<C>, g_prime: AdcMorphism<C>) -> Result<Self> {
        let g = g_prime.compose(&f)?;
        let k = GradedMap::zero(g.source().clone(), g.target().clone(), 1);
        Ok(Self { f, g, g_prime, k })
    }

    pub fn antihomotopy(&self) -> Result<Antihomotopy<C>> {
        Antihomotopy::new(self.g.clone(), self.g_prime.compose(&self.f)?, self.k.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if !same_complex(self.f.target(), self.g_prime.source())
            || !same_complex(self.g.source(), self.f.source())
            || !same_complex(self.g.target(), self.g_prime.target())
        {
            report.input_error("triangle legs do not fit together");
            return report;
        }
        for (name, m) in [("f", &self.f), ("g", &self.g), ("g′", &self.g_prime)] {
            for v in m.validate_morphism().violations {
                report.violation(&format!("{name}: {}", v.check), v.at, v.witness);
            }
        }
        match self.g_prime.rigid_ordered_inclusion() {
            Ok(Ok(())) => {}
            Ok(Err(why)) => report.violation("rigid ordered inclusion", "g′", why),
            Err(e) => report.input_error(e.to_string()),
        }
        match self.antihomotopy() {
            Ok(h) => report.merge(h.validate()),
            Err(e) => report.input_error(e.to_string()),
        }
        report
    }

    /// `t ∘ self`: the triangle `(f′f, k′f + k)` for a triangle `t` on `K′`.
    pub fn then(&self, next: &SliceTriangle<C>) -> Result<SliceTriangle<C>> {
        if !same_complex(next.source(), self.apex()) || next.g != self.g_prime {
            return Err(AdcError::Incompatible("triangles are not composable".into()));
        }
        Ok(SliceTriangle {
            f: next.f.compose(&self.f)?,
            g: self.g.clone(),
            g_prime: next.g_prime.clone(),
            k: next.k.compose(&self.f)?.add(&self.k)?,
        })
    }
}

/// Two triangles over the same `g, g′`, an antihomotopy `l` from `f` to
/// `f′`, and a 2-antihomotopy `H` from `g′l + k` to `k′`.
#[derive(Debug, Clone)]
pub struct SliceCone<C> {
    /// `(f, k)`, read off at the vertex `(1)` of the interval.
    pub front: SliceTriangle<C>,
    /// `(f′, k′)`, read off at the vertex `(0)`.
    pub back: SliceTriangle<C>,
    pub l: GradedMap<C>,
    pub big_h: GradedMap<C>,
}

impl<C: Coefficient> SliceCone<C> {
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.front.validate();
        report.merge(self.back.validate());
        if report.has_input_errors() {
            return report;
        }
        if self.front.g != self.back.g || self.front.g_prime != self.back.g_prime {
            report.input_error("the two triangles of a cone must share g and g′");
            return report;
        }
        match Antihomotopy::new(self.front.f.clone(), self.back.f.clone(), self.l.clone()) {
            Ok(h) => report.merge(h.validate()),
            Err(e) => report.input_error(e.to_string()),
        }
        let lower = self.front.g_prime.compose(&self.l).and_then(|gl| gl.add(&self.front.k));
        match lower.and_then(|from| Antihomotopy::new(from, self.back.k.clone(), self.big_h.clone())) {
            Ok(h) => report.merge(h.validate()),
            Err(e) => report.input_error(e.to_string()),
        }
        report
    }
}

/// ψ together with the complexes it connects.
#[derive(Debug, Clone)]
pub struct Psi<C> {
    /// `K⋆T`.
    pub source: JoinComplex<C>,
    /// `K′⋆T`.
    pub middle: JoinComplex<C>,
    /// `L ⊔_{K′} (K′⋆T)`.
    pub pushout: Pushout<C>,
    pub map: AdcMorphism<C>,
}

fn join_cap<C: Coefficient>(k: &AdcComplex<C>, t: &AdcComplex<C>) -> usize {
    k.max_degree() + t.max_degree() + 1
}

fn amalgam<C: Coefficient>(t: &SliceTriangle<C>, tc: &Arc<AdcComplex<C>>) -> Result<(JoinComplex<C>, Pushout<C>)> {
    let middle = JoinComplex::new(t.apex().clone(), tc.clone(), join_cap(t.apex(), tc))?;
    let (iota, _) = middle.inclusions()?;
    let pushout = pushout_along_rigid_inclusion(&t.g_prime, &iota)?;
    Ok((middle, pushout))
}

/// `a(x)⋆y + e(y)b(x)` pushed into the amalgam, with `x` or `y` possibly ∅.
#[allow(clippy::too_many_arguments)]
fn join_plus_correction<C: Coefficient>(
    middle: &JoinComplex<C>,
    pushout: &Pushout<C>,
    tc: &AdcComplex<C>,
    x: Option<BasisRef>,
    y: BasisRef,
    a: &AdcMorphism<C>,
    b: Option<&GradedMap<C>>,
    degree: usize,
) -> Result<ChainElement<C>> {
    let yarg = JoinArg::Chain(tc.generator(y));
    let front = match x {
        None => middle.join(&JoinArg::empty(), &yarg)?,
        Some(x) => {
            let fx = a.image(x);
            if fx.is_zero() {
                ChainElement::zero(degree)
            } else {
                middle.join(&JoinArg::Chain(fx.clone()), &yarg)?
            }
        }
    };
    let mut out = pushout.from_m.apply(&front.with_degree(degree))?;
    if let (Some(x), Some(b), 0) = (x, b, y.degree) {
        let e = tc.augmentation_of(y.index);
        let corr = pushout.from_l.apply(b.image(x))?;
        out.add_scaled(&corr, e)?;
    }
    Ok(out)
}

/// ψ(x⋆∅) = g(x), ψ(x⋆y) = f(x)⋆y + e(y)k(x), with f(∅) = ∅ and k(∅) = 0.
pub fn psi<C: Coefficient>(t: &SliceTriangle<C>, tc: &Arc<AdcComplex<C>>) -> Result<Psi<C>> {
    let source = JoinComplex::new(t.source().clone(), tc.clone(), join_cap(t.source(), tc))?;
    let (middle, pushout) = amalgam(t, tc)?;
    let map = GradedMap::from_fn(source.complex.clone(), pushout.complex.clone(), 0, |z| {
        match source.parts(z) {
            (Some(x), None) => pushout.from_l.apply(t.g.image(x)),
            (x, Some(y)) => join_plus_correction(&middle, &pushout, tc, x, y, &t.f, Some(&t.k), z.degree),
            (None, None) => unreachable!("∅⋆∅ is not a generator"),
        }
    })?;
    Ok(Psi {
        source,
        middle,
        pushout,
        map,
    })
}

/// χ together with the complexes it connects.
#[derive(Debug, Clone)]
pub struct Chi<C> {
    /// `c(Δ1)⊗T`.
    pub tensor: TensorComplex<C>,
    /// `K⋆(c(Δ1)⊗T)`.
    pub source: JoinComplex<C>,
    pub middle: JoinComplex<C>,
    pub pushout: Pushout<C>,
    pub map: AdcMorphism<C>,
}

/// The generators `(0)`, `(1)`, `(01)` of an interval factor.
fn interval_generators<C: Coefficient>(i: &AdcComplex<C>) -> Result<[BasisRef; 3]> {
    let get = |id: &str| {
        i.find(id).ok_or_else(|| AdcError::UnknownBasis {
            degree: usize::from(id.len() > 1),
            id: id.into(),
        })
    };
    if i.counts() != [2, 1] {
        return Err(AdcError::Incompatible(format!(
            "{} is not the interval c(Δ1)",
            i.name()
        )));
    }
    Ok([get("0")?, get("1")?, get("0.1")?])
}

/// χ on `K⋆(c(Δ1)⊗T)` where `tensor` is `c(Δ1)⊗T`:
///
/// * `x⋆∅ ↦ g(x)`
/// * `x⋆((0)⊗y) ↦ f′(x)⋆y + e(y)k′(x)`
/// * `x⋆((1)⊗y) ↦ f(x)⋆y + e(y)k(x)`
/// * `x⋆((01)⊗y) ↦ l(x)⋆y + e(y)H(x)`, and `0` when `x = ∅`.
pub fn chi<C: Coefficient>(cone: &SliceCone<C>, tensor: &TensorComplex<C>) -> Result<Chi<C>> {
    let [v0, v1, edge] = interval_generators(&tensor.left)?;
    let tc = tensor.right.clone();
    let k = cone.front.source().clone();
    let source = JoinComplex::new(k.clone(), tensor.complex.clone(), join_cap(&k, &tensor.complex))?;
    let (middle, pushout) = amalgam(&cone.front, &tc)?;
    let map = GradedMap::from_fn(source.complex.clone(), pushout.complex.clone(), 0, |z| {
        match source.parts(z) {
            (Some(x), None) => pushout.from_l.apply(cone.front.g.image(x)),
            (x, Some(w)) => {
                let (eps, y) = tensor.factors(w);
                if eps == v0 {
                    join_plus_correction(&middle, &pushout, &tc, x, y, &cone.back.f, Some(&cone.back.k), z.degree)
                } else if eps == v1 {
                    join_plus_correction(
                        &middle,
                        &pushout,
                        &tc,
                        x,
                        y,
                        &cone.front.f,
                        Some(&cone.front.k),
                        z.degree,
                    )
                } else {
                    debug_assert_eq!(eps, edge);
                    match x {
                        None => Ok(ChainElement::zero(z.degree)),
                        Some(_) => {
                            join_plus_correction(&middle, &pushout, &tc, x, y, &cone.l, Some(&cone.big_h), z.degree)
                        }
                    }
                }
            }
            (None, None) => unreachable!("∅⋆∅ is not a generator"),
        }
    })?;
    Ok(Chi {
        tensor: tensor.clone(),
        source,
        middle,
        pushout,
        map,
    })
}

/// `χ∘(K⋆(ε⊗−))`, the restriction of χ to one end of the interval.
pub fn chi_end<C: Coefficient>(chi: &Chi<C>, eps: usize) -> Result<AdcMorphism<C>> {
    let [v0, v1, _] = interval_generators(&chi.tensor.left)?;
    let v = if eps == 0 { v0 } else { v1 };
    let t = &chi.tensor;
    let end = GradedMap::from_fn(t.right.clone(), t.complex.clone(), 0, |y| {
        Ok(t.complex.generator(t.element(v, y)))
    })?;
    let k = chi.source.left.clone();
    let plain = JoinComplex::new(k.clone(), t.right.clone(), join_cap(&k, &t.right))?;
    let inc = join_morphism(&GradedMap::identity(k), &end, &plain, &chi.source)?;
    chi.map.compose(&inc)
}

/// The triangle `(r′, h′)` of `m: c(Δ0) → c(Δm)` over the identity of c(Δm).
pub fn oriental_triangle<C: Coefficient>(m: usize) -> Result<SliceTriangle<C>> {
    let point = oriental::<C>(0)?;
    let o = oriental::<C>(m)?;
    Ok(SliceTriangle {
        f: cosimplicial_image_between(&SimplexMap::constant(m, 0, 0)?, &o, &point)?,
        g: GradedMap::identity(o.complex.clone()),
        g_prime: cosimplicial_image_between(&SimplexMap::vertex(m, m)?, &point, &o)?,
        k: vertex_homotopy(&o)?,
    })
}

/// The cone from `(mr′, h′)` to `(id, 0)` over the identity of c(Δm), with
/// `l = h′` and `H = 0`.
pub fn oriental_cone<C: Coefficient>(m: usize) -> Result<SliceCone<C>> {
    let o = oriental::<C>(m)?;
    let c = o.complex.clone();
    let id = GradedMap::identity(c.clone());
    let h = vertex_homotopy(&o)?;
    let mr = cosimplicial_image_between(&SimplexMap::constant(m, m, m)?, &o, &o)?;
    Ok(SliceCone {
        front: SliceTriangle {
            f: id.clone(),
            g: id.clone(),
            g_prime: id.clone(),
            k: GradedMap::zero(c.clone(), c.clone(), 1),
        },
        back: SliceTriangle {
            f: mr,
            g: id.clone(),
            g_prime: id,
            k: h.clone(),
        },
        l: h,
        big_h: GradedMap::zero(c.clone(), c, 2),
    })
}

/// Generator of a join of orientals from optional tuples, zero when a
/// tuple repeats an index.
fn join_tuple<C: Coefficient>(
    j: &JoinComplex<C>,
    left: &Oriental<C>,
    right: &Oriental<C>,
    x: Option<&[usize]>,
    y: Option<&[usize]>,
    degree: usize,
) -> Result<ChainElement<C>> {
    let arg = |o: &Oriental<C>, t: Option<&[usize]>| -> Result<Option<JoinArg<C>>> {
        match t {
            None => Ok(Some(JoinArg::empty())),
            Some(t) => {
                let c = o.tuple_chain(t)?;
                Ok((!c.is_zero()).then_some(JoinArg::Chain(c)))
            }
        }
    };
    match (arg(left, x)?, arg(right, y)?) {
        (Some(a), Some(b)) => j.join(&a, &b),
        _ => Ok(ChainElement::zero(degree)),
    }
}

fn with_last(t: &[usize], m: usize) -> Vec<usize> {
    let mut v = t.to_vec();
    v.push(m);
    v
}

/// The six-case value of ψ for the triangle `(r′, h′)` on
/// `(i₀…iₚ)⋆(j₀…j_q)`, with `p` or `q` equal to −1 meaning ∅.
pub fn oriental_psi_table<C: Coefficient>(
    m: usize,
    psi: &Psi<C>,
    left: &Oriental<C>,
    point: &Oriental<C>,
    right: &Oriental<C>,
    z: BasisRef,
) -> Result<ChainElement<C>> {
    let (x, y) = psi.source.parts(z);
    let xs = x.map(|b| left.tuple(b).to_vec());
    let ys = y.map(|b| right.tuple(b).to_vec());
    let deg = z.degree;
    let in_l = |t: &[usize]| psi.pushout.from_l.apply(&left.tuple_chain(t)?);
    let in_m = |a: Option<&[usize]>, b: Option<&[usize]>| -> Result<ChainElement<C>> {
        psi.pushout
            .from_m
            .apply(&join_tuple(&psi.middle, point, right, a, b, deg)?)
    };
    match (xs.as_deref(), ys.as_deref()) {
        (Some(i), None) => in_l(i),
        (None, Some(j)) => in_m(None, Some(j)),
        (Some(i), Some(j)) => match (i.len() - 1, j.len() - 1) {
            (0, 0) => in_m(Some(&[0]), Some(j))?.add(&in_l(&with_last(i, m))?),
            (0, _) => in_m(Some(&[0]), Some(j)),
            (_, 0) => in_l(&with_last(i, m)),
            _ => Ok(ChainElement::zero(deg)),
        },
        (None, None) => unreachable!("∅⋆∅ is not a generator"),
    }
}

/// χ_φ for the oriental cone, its closed-form check and its conjugate on
/// c(Δ(m+1+n)).
#[derive(Debug, Clone)]
pub struct ChiPhi<C> {
    pub m: usize,
    pub phi: SimplexMap,
    /// `c(Δm)⋆c(Δn)`.
    pub join: JoinComplex<C>,
    pub pushout: Pushout<C>,
    /// `χ∘(K⋆g_φ)`, into the amalgam.
    pub map: AdcMorphism<C>,
    /// The same map read as an endomorphism of `c(Δm)⋆c(Δn)`.
    pub endomorphism: AdcMorphism<C>,
    /// The endomorphism transported to c(Δ(m+1+n)).
    pub conjugate: AdcMorphism<C>,
}

/// `χ∘(K⋆g_φ)` for the cone of [`oriental_cone`] and `φ: [n] → [1]`.
pub fn chi_phi_of<C: Coefficient>(
    cone: &SliceCone<C>,
    phi: &SimplexMap,
) -> Result<(Chi<C>, JoinComplex<C>, AdcMorphism<C>)> {
    let g = g_phi::<C>(phi, Side::Oplax)?;
    let ch = chi(cone, &g.tensor)?;
    let k = cone.front.source().clone();
    let plain = JoinComplex::new(k.clone(), g.simplex.complex.clone(), join_cap(&k, &g.simplex.complex))?;
    let lift = join_morphism(&GradedMap::identity(k), &g.map, &plain, &ch.source)?;
    let map = ch.map.compose(&lift)?;
    Ok((ch, plain, map))
}

/// Eleven-case value of χ_φ on `(i₀…iₚ)⋆(j₀…j_q)` in `c(Δm)⋆c(Δn)`, where
/// `r` counts the zeros among `φ(j₀), …, φ(j_q)`.
///
/// The cases `r ≥ 2, q = 0` cannot occur since `r ≤ q + 1`; they are kept
/// as listed and reported if ever reached with an unexpected `r`.
pub fn chi_phi_table<C: Coefficient>(
    m: usize,
    phi: &SimplexMap,
    join: &JoinComplex<C>,
    left: &Oriental<C>,
    right: &Oriental<C>,
    z: BasisRef,
) -> Result<ChainElement<C>> {
    let (x, y) = join.parts(z);
    let deg = z.degree;
    let i = x.map(|b| left.tuple(b).to_vec());
    let j = y.map(|b| right.tuple(b).to_vec());
    let r = j
        .as_ref()
        .map_or(0, |j| j.iter().filter(|&&v| phi.apply(v) == 0).count());
    let p = i.as_ref().map_or(-1, |t| t.len() as i64 - 1);
    let q = j.as_ref().map_or(-1, |t| t.len() as i64 - 1);
    let t =
        |a: Option<Vec<usize>>, b: Option<Vec<usize>>| join_tuple(join, left, right, a.as_deref(), b.as_deref(), deg);
    let tail = |j: &Option<Vec<usize>>| j.as_ref().map(|j| j[1..].to_vec());
    let im = i.as_ref().map(|i| with_last(i, m));
    let i0m = i.as_ref().map(|i| vec![i[0], m]);
    match (r, p, q) {
        (0, _, _) => t(i, j),
        (1, -1, _) => t(None, j),
        (1, 0, 0) => t(Some(vec![m]), j)?.add(&t(i0m, None)?),
        (1, 0, _) => t(Some(vec![m]), j.clone())?.add(&t(i0m, tail(&j))?),
        (1, _, 0) => t(im, None),
        (1, _, _) => t(im, tail(&j)),
        (_, -1, _) => t(None, j),
        (_, 0, 0) => t(Some(vec![m]), j)?.add(&t(i0m, None)?),
        (_, 0, _) => t(Some(vec![m]), j),
        (2, _, 0) => t(im, None),
        (_, _, 0) => Err(AdcError::Internal(format!(
            "χ_φ table has no case for r = {r}, p = {p}, q = 0"
        ))),
        _ => Ok(ChainElement::zero(deg)),
    }
}

/// Builds χ_φ for the oriental cone, checks it against the closed table and
/// transports it along the join isomorphism.
pub fn oriental_chi_phi<C: Coefficient>(m: usize, phi: &SimplexMap) -> Result<ChiPhi<C>> {
    if phi.target_dim() != 1 {
        return Err(AdcError::SimplexMap(format!("{phi} does not land in [1]")));
    }
    let n = phi.source_dim();
    let cone = oriental_cone::<C>(m)?;
    let (ch, join, map) = chi_phi_of(&cone, phi)?;
    let left = oriental::<C>(m)?;
    let right = oriental::<C>(n)?;
    let collapse = {
        let (iota, _) = join.inclusions()?;
        ch.pushout.copair(&iota, &GradedMap::identity(join.complex.clone()))?
    };
    let endomorphism = collapse.compose(&map)?;
    for z in join.complex.basis_refs() {
        let want = chi_phi_table(m, phi, &join, &left, &right, z)?;
        if &want != endomorphism.image(z) {
            return Err(AdcError::Internal(format!(
                "χ_φ for m = {m}, φ = {phi} disagrees with its table at {}: {} vs {}",
                join.complex.id(z),
                join.complex.format_chain(endomorphism.image(z)),
                join.complex.format_chain(&want)
            )));
        }
    }
    let iso = oriental_join_iso::<C>(m, n, m + n + 1)?;
    let conjugate = iso
        .iso
        .compose(
            &endomorphism
                .clone()
                .with_endpoints(iso.join.complex.clone(), iso.join.complex.clone())?,
        )?
        .compose(&iso.inverse)?;
    Ok(ChiPhi {
        m,
        phi: phi.clone(),
        join,
        pushout: ch.pushout,
        map,
        endomorphism,
        conjugate,
    })
}

/// Outcome of the exhaustive checks on ψ, χ and χ_φ for small orientals.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TransferReport {
    pub max_m: usize,
    pub max_n: usize,
    pub psi_checked: usize,
    pub chi_checked: usize,
    pub chi_phi_checked: usize,
    pub composition_checked: usize,
    pub failures: Vec<String>,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.psi_checked > 0 && self.chi_phi_checked > 0
    }
}

fn note(failures: &mut Vec<String>, what: String, report: ValidationReport) {
    if !report.is_valid() {
        let first = report
            .violations
            .first()
            .map(|v| format!("{} at {}: {}", v.check, v.at, v.witness))
            .or_else(|| report.input_errors.first().cloned())
            .unwrap_or_default();
        failures.push(format!("{what}: {first}"));
    }
}

/// Validates ψ, χ and χ_φ for the oriental triangle and cone with
/// `m ≤ max_m`, `n ≤ max_n` and every `φ: [n] → [1]`.
pub fn oriental_transfer_report<C: Coefficient>(max_m: usize, max_n: usize) -> Result<TransferReport> {
    let mut rep = TransferReport {
        max_m,
        max_n,
        ..Default::default()
    };
    let interval = oriental::<C>(1)?;
    let point = oriental::<C>(0)?;
    for m in 0..=max_m {
        let tri = oriental_triangle::<C>(m)?;
        note(&mut rep.failures, format!("triangle m = {m}"), tri.validate());
        let cone = oriental_cone::<C>(m)?;
        note(&mut rep.failures, format!("cone m = {m}"), cone.validate());
        let left = oriental::<C>(m)?;
        for n in 0..=max_n {
            let right = oriental::<C>(n)?;
            let ps = psi(&tri, &right.complex)?;
            note(
                &mut rep.failures,
                format!("ψ m = {m}, n = {n}"),
                ps.map.validate_morphism(),
            );
            for z in ps.source.complex.basis_refs() {
                let want = oriental_psi_table(m, &ps, &left, &point, &right, z)?;
                if &want != ps.map.image(z) {
                    rep.failures
                        .push(format!("ψ table m = {m}, n = {n} at {}", ps.source.complex.id(z)));
                }
            }
            rep.psi_checked += 1;
            let it = TensorComplex::new(interval.complex.clone(), right.complex.clone(), n + 1)?;
            let ch = chi(&cone, &it)?;
            note(
                &mut rep.failures,
                format!("χ m = {m}, n = {n}"),
                ch.map.validate_morphism(),
            );
            for (eps, t) in [(0, &cone.back), (1, &cone.front)] {
                let end = chi_end(&ch, eps)?;
                let ps = psi(t, &right.complex)?;
                if end != ps.map {
                    rep.failures
                        .push(format!("χ restricted to ({eps}) differs from ψ, m = {m}, n = {n}"));
                }
            }
            rep.chi_checked += 1;
            for phi in SimplexMap::all(n, 1) {
                match oriental_chi_phi::<C>(m, &phi) {
                    Ok(cp) => {
                        note(
                            &mut rep.failures,
                            format!("χ_φ m = {m}, φ = {phi}"),
                            cp.map.validate_morphism(),
                        );
                        note(
                            &mut rep.failures,
                            format!("conjugate χ_φ m = {m}, φ = {phi}"),
                            cp.conjugate.validate_morphism(),
                        );
                        for v in 0..=m {
                            let b = left.vertex(v);
                            let img = cp.endomorphism.image(cp.join.element(Some(b), None).expect("x⋆∅"));
                            if img != &cp.join.left_chain(&left.complex.generator(b))? {
                                rep.failures
                                    .push(format!("χ_φ moves the front vertex {v}, m = {m}, φ = {phi}"));
                            }
                        }
                    }
                    Err(e) => rep.failures.push(e.to_string()),
                }
                rep.chi_phi_checked += 1;
            }
        }
    }
    Ok(rep)
}

/// Checks that ψ of a composite triangle is the composite of the ψ's, on a
/// family of oriental triangles built from face inclusions and the vertex
/// homotopy of the base.
pub fn composition_law_report<C: Coefficient>(max_m: usize, max_n: usize) -> Result<TransferReport> {
    let mut rep = TransferReport {
        max_m,
        max_n,
        ..Default::default()
    };
    let point = oriental::<C>(0)?;
    for m in 0..=max_m {
        let base = oriental::<C>(m)?;
        let hm = vertex_homotopy(&base)?;
        for s in 0..=m {
            // faces of c(Δm) of dimension s containing the vertex m
            for face in SimplexMap::all(s, m)
                .into_iter()
                .filter(|f| f.is_injective() && f.apply(s) == m)
            {
                let apex = oriental::<C>(s)?;
                let g_prime = cosimplicial_image_between(&face, &apex, &base)?;
                let to_point = cosimplicial_image_between(&SimplexMap::constant(s, 0, 0)?, &apex, &point)?;
                let second = SliceTriangle {
                    f: to_point,
                    g: g_prime.clone(),
                    g_prime: cosimplicial_image_between(&SimplexMap::vertex(m, m)?, &point, &base)?,
                    k: hm.compose(&g_prime)?,
                };
                for j in 0..=2usize.min(m) {
                    let src = oriental::<C>(j)?;
                    let mut firsts = Vec::new();
                    for v in SimplexMap::all(j, s) {
                        firsts.push(SliceTriangle::commutative(
                            cosimplicial_image_between(&v, &src, &apex)?,
                            g_prime.clone(),
                        )?);
                    }
                    for u in SimplexMap::all(j, m) {
                        let g = cosimplicial_image_between(&u, &src, &base)?;
                        firsts.push(SliceTriangle {
                            f: cosimplicial_image_between(&SimplexMap::constant(j, s, s)?, &src, &apex)?,
                            k: hm.compose(&g)?,
                            g,
                            g_prime: g_prime.clone(),
                        });
                    }
                    for first in &firsts {
                        let composite = first.then(&second)?;
                        for (what, t) in [("first", first), ("second", &second), ("composite", &composite)] {
                            note(
                                &mut rep.failures,
                                format!("{what} triangle m = {m}, face {face}"),
                                t.validate(),
                            );
                        }
                        for n in 0..=max_n {
                            let tc = oriental::<C>(n)?.complex;
                            let p1 = psi(first, &tc)?;
                            let p2 = psi(&second, &tc)?;
                            let p = psi(&composite, &tc)?;
                            let glue = p1.pushout.copair(&p2.pushout.from_l, &p2.map)?;
                            let lhs = glue.compose(&p1.map)?;
                            if lhs != p.map {
                                let at = lhs.first_difference(&p.map).map(|b| p.source.complex.id(b).to_string());
                                rep.failures
                                    .push(format!("composition law m = {m}, face {face}, n = {n} at {at:?}"));
                            }
                            rep.composition_checked += 1;
                        }
                    }
                }
            }
        }
    }
    rep.psi_checked = rep.composition_checked;
    rep.chi_phi_checked = rep.composition_checked;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_of_a_vertex_pair() {
        let tri = oriental_triangle::<i64>(1).unwrap();
        let right = oriental::<i64>(0).unwrap();
        let ps = psi(&tri, &right.complex).unwrap();
        let z = ps.source.complex.find("0⋆0").unwrap();
        assert_eq!(ps.pushout.complex.format_chain(ps.map.image(z)), "0.1 + 0⋆0");
        assert!(ps.map.validate_morphism().is_valid());
    }

    #[test]
    fn identity_triangle_gives_the_canonical_map() {
        let o = oriental::<i64>(1).unwrap();
        let id = GradedMap::identity(o.complex.clone());
        let tri = SliceTriangle::commutative(id.clone(), id).unwrap();
        let ps = psi(&tri, &oriental::<i64>(1).unwrap().complex).unwrap();
        assert!(crate::monoidal::is_basis_bijection(&ps.map));
    }

    #[test]
    fn chi_phi_r_one() {
        let phi = SimplexMap::new(1, 1, vec![0, 1]).unwrap();
        let cp = oriental_chi_phi::<i64>(1, &phi).unwrap();
        let j = &cp.join.complex;
        let z = j.find("0⋆0.1").unwrap();
        assert_eq!(j.format_chain(cp.endomorphism.image(z)), "0.1⋆1 + 1⋆0.1");
    }

    #[test]
    fn chi_phi_vanishes_for_many_zeros() {
        let phi = SimplexMap::new(2, 1, vec![0, 0, 1]).unwrap();
        let cp = oriental_chi_phi::<i64>(2, &phi).unwrap();
        let z = cp.join.complex.find("0.1⋆0.1").unwrap();
        assert!(cp.endomorphism.image(z).is_zero());
    }

    #[test]
    fn degenerate_cone_has_zero_edge_row() {
        let o = oriental::<i64>(1).unwrap();
        let id = GradedMap::identity(o.complex.clone());
        let tri = SliceTriangle::commutative(id.clone(), id).unwrap();
        let c = o.complex.clone();
        let cone = SliceCone {
            front: tri.clone(),
            back: tri,
            l: GradedMap::zero(c.clone(), c.clone(), 1),
            big_h: GradedMap::zero(c.clone(), c, 2),
        };
        assert!(cone.validate().is_valid());
        let it = TensorComplex::new(o.complex.clone(), o.complex.clone(), 2).unwrap();
        let ch = chi(&cone, &it).unwrap();
        assert_eq!(chi_end(&ch, 0).unwrap(), chi_end(&ch, 1).unwrap());
        for z in ch.source.complex.basis_refs() {
            if let (_, Some(w)) = ch.source.parts(z) {
                if it.left.id(it.factors(w).0) == "0.1" {
                    assert!(ch.map.image(z).is_zero());
                }
            }
        }
    }
}
