//! Tensor product and join of based complexes, disks, and pushouts along
//! rigid ordered inclusions.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::chain::{BasisRef, ChainElement};
use crate::complex::{AdcComplex, NuCell};
use crate::error::{AdcError, Result};
use crate::morphism::{same_complex, AdcMorphism, GradedMap};
use crate::scalar::{self, sign, Coefficient};

/// Default bound on the sum of the factors' top degrees.
pub const DEFAULT_DEGREE_CAP: usize = 6;

/// The token for the unit of the join, in degree −1.
pub const EMPTY_TOKEN: &str = "∅";

fn wrap(id: &str) -> String {
    if id.contains('⊗') || id.contains('⋆') {
        format!("({id})")
    } else {
        id.to_string()
    }
}

pub fn tensor_name(x: &str, y: &str) -> String {
    format!("{}⊗{}", wrap(x), wrap(y))
}

pub fn join_name(x: Option<&str>, y: Option<&str>) -> String {
    format!(
        "{}⋆{}",
        x.map_or(EMPTY_TOKEN.to_string(), wrap),
        y.map_or(EMPTY_TOKEN.to_string(), wrap)
    )
}

/// `K ⊗ L` together with the bookkeeping that identifies each generator as a pair.
#[derive(Debug, Clone)]
pub struct TensorComplex<C> {
    pub complex: Arc<AdcComplex<C>>,
    pub left: Arc<AdcComplex<C>>,
    pub right: Arc<AdcComplex<C>>,
    factors: Vec<Vec<(BasisRef, BasisRef)>>,
    lookup: HashMap<(BasisRef, BasisRef), BasisRef>,
}

impl<C: Coefficient> TensorComplex<C> {
    pub fn new(left: Arc<AdcComplex<C>>, right: Arc<AdcComplex<C>>, cap: usize) -> Result<Self> {
        let top = left.max_degree() + right.max_degree();
        if top > cap {
            return Err(AdcError::CapExceeded { cap, needed: top });
        }
        let mut factors = vec![Vec::new(); top + 1];
        let mut lookup = HashMap::new();
        let mut names = vec![Vec::new(); top + 1];
        for (r, (row, name_row)) in factors.iter_mut().zip(names.iter_mut()).enumerate() {
            for p in 0..=r.min(left.max_degree()) {
                let q = r - p;
                for i in 0..left.count(p) {
                    for j in 0..right.count(q) {
                        let pair = (BasisRef::new(p, i), BasisRef::new(q, j));
                        lookup.insert(pair, BasisRef::new(r, row.len()));
                        row.push(pair);
                        name_row.push(tensor_name(left.id(pair.0), right.id(pair.1)));
                    }
                }
            }
        }
        let mut this = Self {
            complex: Arc::new(AdcComplex::empty("")),
            left,
            right,
            factors,
            lookup,
        };
        let mut differential = vec![Vec::new()];
        for r in 1..=top {
            let mut row = Vec::new();
            for &(x, y) in &this.factors[r] {
                let mut dz = ChainElement::zero(r - 1);
                if x.degree > 0 {
                    dz = dz.add(&this.tensor_chains(this.left.d_basis(x), &this.right.generator(y))?)?;
                }
                if y.degree > 0 {
                    let t = this.tensor_chains(&this.left.generator(x), this.right.d_basis(y))?;
                    dz.add_scaled(&t, &sign(x.degree as i64))?;
                }
                row.push(dz);
            }
            differential.push(row);
        }
        let augmentation = this.factors[0]
            .iter()
            .map(|&(x, y)| scalar::mul(this.left.augmentation_of(x.index), this.right.augmentation_of(y.index)))
            .collect::<Result<Vec<_>>>()?;
        let name = format!("{}⊗{}", wrap(this.left.name()), wrap(this.right.name()));
        this.complex = Arc::new(AdcComplex::from_parts(name, names, differential, augmentation)?);
        Ok(this)
    }

    pub fn with_default_cap(left: Arc<AdcComplex<C>>, right: Arc<AdcComplex<C>>) -> Result<Self> {
        Self::new(left, right, DEFAULT_DEGREE_CAP)
    }

    pub fn factors(&self, z: BasisRef) -> (BasisRef, BasisRef) {
        self.factors[z.degree][z.index]
    }

    pub fn element(&self, x: BasisRef, y: BasisRef) -> BasisRef {
        self.lookup[&(x, y)]
    }

    /// `q₁(x⊗y) = e(y)x` and `q₂(x⊗y) = e(x)y`, each zero unless the collapsed
    /// factor sits in degree 0.
    pub fn projections(&self) -> Result<(AdcMorphism<C>, AdcMorphism<C>)> {
        let q1 = GradedMap::from_fn(self.complex.clone(), self.left.clone(), 0, |z| {
            let (x, y) = self.factors(z);
            if y.degree == 0 {
                ChainElement::from_terms(x.degree, [(x.index, self.right.augmentation_of(y.index).clone())])
            } else {
                Ok(ChainElement::zero(z.degree))
            }
        })?;
        let q2 = GradedMap::from_fn(self.complex.clone(), self.right.clone(), 0, |z| {
            let (x, y) = self.factors(z);
            if x.degree == 0 {
                ChainElement::from_terms(y.degree, [(y.index, self.left.augmentation_of(x.index).clone())])
            } else {
                Ok(ChainElement::zero(z.degree))
            }
        })?;
        Ok((q1, q2))
    }

    /// Bilinear extension of `x ⊗ y`.
    pub fn tensor_chains(&self, a: &ChainElement<C>, b: &ChainElement<C>) -> Result<ChainElement<C>> {
        let deg = a.degree() + b.degree();
        let mut out = ChainElement::zero(deg);
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                let z = self
                    .lookup
                    .get(&(BasisRef::new(a.degree(), i), BasisRef::new(b.degree(), j)))
                    .ok_or_else(|| AdcError::Incompatible("tensor factor out of range".into()))?;
                out.add_term(z.index, &scalar::mul(ca, cb)?)?;
            }
        }
        Ok(out)
    }
}

/// `f ⊗ g` between two tensor complexes built on the right factors.
pub fn tensor_morphism<C: Coefficient>(
    f: &AdcMorphism<C>,
    g: &AdcMorphism<C>,
    source: &TensorComplex<C>,
    target: &TensorComplex<C>,
) -> Result<AdcMorphism<C>> {
    if f.shift() != 0 || g.shift() != 0 {
        return Err(AdcError::Incompatible(
            "tensor of maps needs degree-preserving factors".into(),
        ));
    }
    if !same_complex(f.source(), &source.left)
        || !same_complex(g.source(), &source.right)
        || !same_complex(f.target(), &target.left)
        || !same_complex(g.target(), &target.right)
    {
        return Err(AdcError::Incompatible("tensor factors do not match the maps".into()));
    }
    GradedMap::from_fn(source.complex.clone(), target.complex.clone(), 0, |z| {
        let (x, y) = source.factors(z);
        target.tensor_chains(f.image(x), g.image(y))
    })
}

/// A factor of a join: either a chain or a multiple of the unit ∅.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinArg<C> {
    Unit(C),
    Chain(ChainElement<C>),
}

impl<C: Coefficient> JoinArg<C> {
    pub fn empty() -> Self {
        JoinArg::Unit(C::one())
    }

    fn degree_plus_one(&self) -> usize {
        match self {
            JoinArg::Unit(_) => 0,
            JoinArg::Chain(c) => c.degree() + 1,
        }
    }
}

/// `K ⋆ L` with each generator identified as `x⋆∅`, `∅⋆y` or `x⋆y`.
#[derive(Debug, Clone)]
pub struct JoinComplex<C> {
    pub complex: Arc<AdcComplex<C>>,
    pub left: Arc<AdcComplex<C>>,
    pub right: Arc<AdcComplex<C>>,
    parts: Vec<Vec<(Option<BasisRef>, Option<BasisRef>)>>,
    lookup: HashMap<(Option<BasisRef>, Option<BasisRef>), BasisRef>,
}

impl<C: Coefficient> JoinComplex<C> {
    pub fn new(left: Arc<AdcComplex<C>>, right: Arc<AdcComplex<C>>, cap: usize) -> Result<Self> {
        let top = match (left.total_basis(), right.total_basis()) {
            (_, 0) => left.max_degree(),
            (0, _) => right.max_degree(),
            _ => left.max_degree() + right.max_degree() + 1,
        };
        if top > cap {
            return Err(AdcError::CapExceeded { cap, needed: top });
        }
        let mut parts = vec![Vec::new(); top + 1];
        let mut names = vec![Vec::new(); top + 1];
        let mut lookup = HashMap::new();
        for r in 0..=top {
            // p runs over deg(x) + 1, so 0 stands for the unit on the left
            for p1 in (0..=r + 1).rev() {
                let q1 = r + 1 - p1;
                let xs: Vec<Option<BasisRef>> = if p1 == 0 {
                    vec![None]
                } else {
                    (0..left.count(p1 - 1))
                        .map(|i| Some(BasisRef::new(p1 - 1, i)))
                        .collect()
                };
                let ys: Vec<Option<BasisRef>> = if q1 == 0 {
                    vec![None]
                } else {
                    (0..right.count(q1 - 1))
                        .map(|j| Some(BasisRef::new(q1 - 1, j)))
                        .collect()
                };
                for &x in &xs {
                    for &y in &ys {
                        if x.is_none() && y.is_none() {
                            continue;
                        }
                        lookup.insert((x, y), BasisRef::new(r, parts[r].len()));
                        parts[r].push((x, y));
                        names[r].push(join_name(x.map(|b| left.id(b)), y.map(|b| right.id(b))));
                    }
                }
            }
        }
        let mut this = Self {
            complex: Arc::new(AdcComplex::empty("")),
            left,
            right,
            parts,
            lookup,
        };
        let mut differential = vec![Vec::new()];
        for r in 1..=top {
            let mut row = Vec::new();
            for &(x, y) in &this.parts[r] {
                row.push(this.d_part(x, y)?.with_degree(r - 1));
            }
            differential.push(row);
        }
        let augmentation = this.parts[0]
            .iter()
            .map(|&(x, y)| match (x, y) {
                (Some(x), None) => this.left.augmentation_of(x.index).clone(),
                (None, Some(y)) => this.right.augmentation_of(y.index).clone(),
                _ => unreachable!("degree 0 of a join has one empty side"),
            })
            .collect();
        let name = format!("{}⋆{}", wrap(this.left.name()), wrap(this.right.name()));
        this.complex = Arc::new(AdcComplex::from_parts(name, names, differential, augmentation)?);
        Ok(this)
    }

    pub fn with_default_cap(left: Arc<AdcComplex<C>>, right: Arc<AdcComplex<C>>) -> Result<Self> {
        Self::new(left, right, DEFAULT_DEGREE_CAP)
    }

    /// `D` extends `d` by `D(z) = e(z)∅` in degree 0 and `D(∅) = 0`.
    fn big_d(k: &AdcComplex<C>, x: Option<BasisRef>) -> Option<JoinArg<C>> {
        match x {
            None => None,
            Some(b) if b.degree == 0 => Some(JoinArg::Unit(k.augmentation_of(b.index).clone())),
            Some(b) => Some(JoinArg::Chain(k.d_basis(b).clone())),
        }
    }

    fn arg(k: &AdcComplex<C>, x: Option<BasisRef>) -> JoinArg<C> {
        match x {
            None => JoinArg::empty(),
            Some(b) => JoinArg::Chain(k.generator(b)),
        }
    }

    fn d_part(&self, x: Option<BasisRef>, y: Option<BasisRef>) -> Result<ChainElement<C>> {
        let p1 = x.map_or(0, |b| b.degree + 1);
        let r = p1 + y.map_or(0, |b| b.degree + 1) - 1;
        let mut out = ChainElement::zero(r.saturating_sub(1));
        if let Some(dx) = Self::big_d(&self.left, x) {
            if !(matches!(dx, JoinArg::Unit(_)) && y.is_none()) {
                out = out.add(&self.join(&dx, &Self::arg(&self.right, y))?)?;
            }
        }
        if let Some(dy) = Self::big_d(&self.right, y) {
            if !(matches!(dy, JoinArg::Unit(_)) && x.is_none()) {
                // (-1)^(p+1) with p = deg(x), i.e. (-1)^p1
                let t = self.join(&Self::arg(&self.left, x), &dy)?;
                out.add_scaled(&t, &sign(p1 as i64))?;
            }
        }
        Ok(out)
    }

    pub fn parts(&self, z: BasisRef) -> (Option<BasisRef>, Option<BasisRef>) {
        self.parts[z.degree][z.index]
    }

    pub fn element(&self, x: Option<BasisRef>, y: Option<BasisRef>) -> Option<BasisRef> {
        self.lookup.get(&(x, y)).copied()
    }

    /// Bilinear extension of `a ⋆ b`; `∅ ⋆ ∅` is not representable.
    pub fn join(&self, a: &JoinArg<C>, b: &JoinArg<C>) -> Result<ChainElement<C>> {
        let total = a.degree_plus_one() + b.degree_plus_one();
        if total == 0 {
            return Err(AdcError::Incompatible("∅⋆∅ lies in degree −1".into()));
        }
        let deg = total - 1;
        let expand = |arg: &JoinArg<C>| -> Vec<(Option<BasisRef>, C)> {
            match arg {
                JoinArg::Unit(c) => vec![(None, c.clone())],
                JoinArg::Chain(ch) => ch
                    .terms()
                    .map(|(i, c)| (Some(BasisRef::new(ch.degree(), i)), c.clone()))
                    .collect(),
            }
        };
        let mut out = ChainElement::zero(deg);
        for (x, ca) in expand(a) {
            for (y, cb) in expand(b) {
                let z = self
                    .element(x, y)
                    .ok_or_else(|| AdcError::Incompatible("join factor out of range".into()))?;
                out.add_term(z.index, &scalar::mul(&ca, &cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn left_chain(&self, a: &ChainElement<C>) -> Result<ChainElement<C>> {
        self.join(&JoinArg::Chain(a.clone()), &JoinArg::empty())
    }

    pub fn right_chain(&self, b: &ChainElement<C>) -> Result<ChainElement<C>> {
        self.join(&JoinArg::empty(), &JoinArg::Chain(b.clone()))
    }

    /// The canonical inclusions `ι₁(x) = x⋆∅` and `ι₂(y) = ∅⋆y`.
    pub fn inclusions(&self) -> Result<(AdcMorphism<C>, AdcMorphism<C>)> {
        let i1 = GradedMap::from_fn(self.left.clone(), self.complex.clone(), 0, |x| {
            self.left_chain(&self.left.generator(x))
        })?;
        let i2 = GradedMap::from_fn(self.right.clone(), self.complex.clone(), 0, |y| {
            self.right_chain(&self.right.generator(y))
        })?;
        Ok((i1, i2))
    }
}

/// `f ⋆ g` with the unit fixed.
pub fn join_morphism<C: Coefficient>(
    f: &AdcMorphism<C>,
    g: &AdcMorphism<C>,
    source: &JoinComplex<C>,
    target: &JoinComplex<C>,
) -> Result<AdcMorphism<C>> {
    if f.shift() != 0 || g.shift() != 0 {
        return Err(AdcError::Incompatible(
            "join of maps needs degree-preserving factors".into(),
        ));
    }
    if !same_complex(f.source(), &source.left)
        || !same_complex(g.source(), &source.right)
        || !same_complex(f.target(), &target.left)
        || !same_complex(g.target(), &target.right)
    {
        return Err(AdcError::Incompatible("join factors do not match the maps".into()));
    }
    GradedMap::from_fn(source.complex.clone(), target.complex.clone(), 0, |z| {
        let (x, y) = source.parts(z);
        let a = x.map_or(JoinArg::empty(), |b| JoinArg::Chain(f.image(b).clone()));
        let b = y.map_or(JoinArg::empty(), |b| JoinArg::Chain(g.image(b).clone()));
        target.join(&a, &b)
    })
}

/// Basis bijection between `(K⊗L)⊗M` and `K⊗(L⊗M)`.
pub fn tensor_associator<C: Coefficient>(
    k: Arc<AdcComplex<C>>,
    l: Arc<AdcComplex<C>>,
    m: Arc<AdcComplex<C>>,
    cap: usize,
) -> Result<AdcMorphism<C>> {
    let kl = TensorComplex::new(k.clone(), l.clone(), cap)?;
    let left = TensorComplex::new(kl.complex.clone(), m.clone(), cap)?;
    let lm = TensorComplex::new(l, m, cap)?;
    let right = TensorComplex::new(k, lm.complex.clone(), cap)?;
    GradedMap::from_fn(left.complex.clone(), right.complex.clone(), 0, |z| {
        let (xy, w) = left.factors(z);
        let (x, y) = kl.factors(xy);
        Ok(right.complex.generator(right.element(x, lm.element(y, w))))
    })
}

/// Basis bijection between `(K⋆L)⋆M` and `K⋆(L⋆M)`.
pub fn join_associator<C: Coefficient>(
    k: Arc<AdcComplex<C>>,
    l: Arc<AdcComplex<C>>,
    m: Arc<AdcComplex<C>>,
    cap: usize,
) -> Result<AdcMorphism<C>> {
    let kl = JoinComplex::new(k.clone(), l.clone(), cap)?;
    let left = JoinComplex::new(kl.complex.clone(), m.clone(), cap)?;
    let lm = JoinComplex::new(l, m, cap)?;
    let right = JoinComplex::new(k, lm.complex.clone(), cap)?;
    GradedMap::from_fn(left.complex.clone(), right.complex.clone(), 0, |z| {
        let (xy, w) = left.parts(z);
        let (x, y) = match xy {
            Some(b) => kl.parts(b),
            None => (None, None),
        };
        let yw = if y.is_none() && w.is_none() {
            None
        } else {
            lm.element(y, w)
        };
        let target = right
            .element(x, yw)
            .ok_or_else(|| AdcError::Internal("associator lost a generator".into()))?;
        Ok(right.complex.generator(target))
    })
}

/// Whether a map is a bijection of bases, so an isomorphism of based complexes.
pub fn is_basis_bijection<C: Coefficient>(f: &AdcMorphism<C>) -> bool {
    let mut seen = std::collections::HashSet::new();
    for b in f.source().basis_refs() {
        match f.basis_image(b) {
            Some(t) if t.degree == b.degree && seen.insert(t) => {}
            _ => return false,
        }
    }
    seen.len() == f.target().total_basis()
}

/// λ(D_i): two generators `s{k}`, `t{k}` in each degree below `i` and `c{i}` on top.
pub fn disk_complex<C: Coefficient>(i: usize) -> Result<AdcComplex<C>> {
    let mut basis = Vec::new();
    let mut differential: Vec<Vec<Vec<(C, String)>>> = Vec::new();
    for k in 0..=i {
        let ids: Vec<String> = if k < i {
            vec![format!("s{k}"), format!("t{k}")]
        } else {
            vec![format!("c{i}")]
        };
        let d = if k == 0 {
            Vec::new()
        } else {
            vec![vec![(C::one(), format!("t{}", k - 1)), (-C::one(), format!("s{}", k - 1))]; ids.len()]
        };
        basis.push(ids);
        differential.push(d);
    }
    let aug = vec![C::one(); basis[0].len()];
    AdcComplex::new(format!("λ(D{i})"), basis, differential, aug)
}

/// The atom ⟨c_i ⊗ c_j⟩ of λ(D_i)⊗λ(D_j), which must be a cell.
pub fn principal_cell<C: Coefficient>(i: usize, j: usize, cap: usize) -> Result<(TensorComplex<C>, NuCell<C>)> {
    let di = Arc::new(disk_complex::<C>(i)?);
    let dj = Arc::new(disk_complex::<C>(j)?);
    let t = TensorComplex::new(di.clone(), dj.clone(), cap)?;
    let top = t.element(BasisRef::new(i, 0), BasisRef::new(j, 0));
    let (cell, unital) = t.complex.atom(top)?;
    if !unital {
        return Err(AdcError::Internal(format!(
            "principal cell of D{i}⊗D{j} fails the augmentation condition"
        )));
    }
    Ok((t, cell))
}

/// `L ⊔_{K′} M` for a rigid ordered inclusion `g′: K′ → L` and any `u: K′ → M`.
#[derive(Debug, Clone)]
pub struct Pushout<C> {
    pub complex: Arc<AdcComplex<C>>,
    /// `L → P`.
    pub from_l: AdcMorphism<C>,
    /// `M → P`.
    pub from_m: AdcMorphism<C>,
    /// For each generator of `P`, the generator of `L` or `M` it comes from.
    pub origin: Vec<Vec<PushoutOrigin>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushoutOrigin {
    L(BasisRef),
    M(BasisRef),
}

impl<C: Coefficient> Pushout<C> {
    /// The map `P → X` induced by `a: L → X` and `b: M → X`, which must agree
    /// on `K′`. Agreement is the caller's responsibility and can be audited by
    /// comparing `copair ∘ from_l` with `a`.
    pub fn copair(&self, a: &AdcMorphism<C>, b: &AdcMorphism<C>) -> Result<AdcMorphism<C>> {
        if !same_complex(a.source(), self.from_l.source()) || !same_complex(b.source(), self.from_m.source()) {
            return Err(AdcError::Incompatible(
                "copair legs do not start at the pushout factors".into(),
            ));
        }
        if !same_complex(a.target(), b.target()) || a.shift() != 0 || b.shift() != 0 {
            return Err(AdcError::Incompatible("copair legs must be parallel morphisms".into()));
        }
        GradedMap::from_fn(self.complex.clone(), a.target().clone(), 0, |z| {
            Ok(match self.origin[z.degree][z.index] {
                PushoutOrigin::L(x) => a.image(x).clone(),
                PushoutOrigin::M(y) => b.image(y).clone(),
            })
        })
    }
}

pub fn pushout_along_rigid_inclusion<C: Coefficient>(
    g_prime: &AdcMorphism<C>,
    u: &AdcMorphism<C>,
) -> Result<Pushout<C>> {
    if let Err(why) = g_prime.rigid_ordered_inclusion()? {
        return Err(AdcError::NotRigid(why));
    }
    if !same_complex(g_prime.source(), u.source()) || u.shift() != 0 {
        return Err(AdcError::Incompatible("pushout legs must share their source".into()));
    }
    let l = g_prime.target().clone();
    let m = u.target().clone();
    let mut covered: HashMap<BasisRef, BasisRef> = HashMap::new();
    for b in g_prime.source().basis_refs() {
        covered.insert(g_prime.basis_image(b).expect("rigid"), b);
    }
    let top = l.max_degree().max(m.max_degree());
    let mut names = vec![Vec::new(); top + 1];
    let mut origin = vec![Vec::new(); top + 1];
    let mut l_pos: HashMap<BasisRef, usize> = HashMap::new();
    // ids of L that clash with ids of M get primed
    let m_ids: HashSet<&str> = m.basis_refs().map(|b| m.id(b)).collect();
    let mut l_ids: HashSet<String> = HashSet::new();
    for b in l.basis_refs() {
        if !covered.contains_key(&b) {
            let mut id = l.id(b).to_string();
            while m_ids.contains(id.as_str()) || !l_ids.insert(id.clone()) {
                id.push('′');
            }
            l_pos.insert(b, names[b.degree].len());
            names[b.degree].push(id);
            origin[b.degree].push(PushoutOrigin::L(b));
        }
    }
    let mut m_pos: HashMap<BasisRef, usize> = HashMap::new();
    for b in m.basis_refs() {
        m_pos.insert(b, names[b.degree].len());
        names[b.degree].push(m.id(b).to_string());
        origin[b.degree].push(PushoutOrigin::M(b));
    }
    let embed_m = |x: &ChainElement<C>| -> Result<ChainElement<C>> {
        x.map_linear(x.degree(), |i| {
            Ok(ChainElement::basis(x.degree(), m_pos[&BasisRef::new(x.degree(), i)]))
        })
    };
    let embed_l = |x: &ChainElement<C>| -> Result<ChainElement<C>> {
        x.map_linear(x.degree(), |i| {
            let b = BasisRef::new(x.degree(), i);
            match covered.get(&b) {
                Some(&k) => embed_m(u.image(k)),
                None => Ok(ChainElement::basis(x.degree(), l_pos[&b])),
            }
        })
    };
    let mut differential = vec![Vec::new()];
    let mut augmentation = vec![C::zero(); names[0].len()];
    for deg in 1..=top {
        differential.push(vec![ChainElement::zero(deg - 1); names[deg].len()]);
    }
    for (&b, &pos) in &l_pos {
        if b.degree == 0 {
            augmentation[pos] = l.augmentation_of(b.index).clone();
        } else {
            differential[b.degree][pos] = embed_l(l.d_basis(b))?;
        }
    }
    for (&b, &pos) in &m_pos {
        if b.degree == 0 {
            augmentation[pos] = m.augmentation_of(b.index).clone();
        } else {
            differential[b.degree][pos] = embed_m(m.d_basis(b))?;
        }
    }
    let name = format!("{}⊔{}", wrap(l.name()), wrap(m.name()));
    let p = Arc::new(AdcComplex::from_parts(name, names, differential, augmentation)?);
    let from_l = GradedMap::from_fn(l.clone(), p.clone(), 0, |b| embed_l(&l.generator(b)))?;
    let from_m = GradedMap::from_fn(m.clone(), p.clone(), 0, |b| embed_m(&m.generator(b)))?;
    Ok(Pushout {
        complex: p,
        from_l,
        from_m,
        origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_one_is_an_interval() {
        let d1 = disk_complex::<i64>(1).unwrap();
        assert_eq!(d1.counts(), vec![2, 1]);
        assert_eq!(d1.format_chain(d1.d_basis(d1.find("c1").unwrap())), "-s0 + t0");
        let (cell, unital) = d1.atom(d1.find("c1").unwrap()).unwrap();
        assert!(unital);
        assert_eq!(d1.format_chain(cell.source(0)), "s0");
        assert_eq!(d1.format_chain(cell.target(0)), "t0");
    }

    #[test]
    fn square_of_intervals() {
        let d1 = Arc::new(disk_complex::<i64>(1).unwrap());
        let t = TensorComplex::with_default_cap(d1.clone(), d1).unwrap();
        assert_eq!(t.complex.counts(), vec![4, 4, 1]);
        let top = t.complex.find("c1⊗c1").unwrap();
        assert_eq!(
            t.complex.format_chain(t.complex.d_basis(top)),
            "-s0⊗c1 + t0⊗c1 + c1⊗s0 - c1⊗t0"
        );
        assert!(t.complex.classify_basis().unwrap().steiner_strong);
    }

    #[test]
    fn cap_is_enforced() {
        let d4 = Arc::new(disk_complex::<i64>(4).unwrap());
        assert!(matches!(
            TensorComplex::new(d4.clone(), d4, 6),
            Err(AdcError::CapExceeded { cap: 6, needed: 8 })
        ));
    }

    #[test]
    fn join_of_points() {
        let p = Arc::new(disk_complex::<i64>(0).unwrap());
        let j = JoinComplex::with_default_cap(p.clone(), p).unwrap();
        assert_eq!(j.complex.counts(), vec![2, 1]);
        let e = j.complex.find("c0⋆c0").unwrap();
        assert_eq!(j.complex.format_chain(j.complex.d_basis(e)), "-c0⋆∅ + ∅⋆c0");
    }

    #[test]
    fn join_with_empty_is_unit() {
        let d2 = Arc::new(disk_complex::<i64>(2).unwrap());
        let empty = Arc::new(AdcComplex::<i64>::empty("∅"));
        let j = JoinComplex::with_default_cap(d2.clone(), empty).unwrap();
        assert_eq!(j.complex.counts(), d2.counts());
        let (i1, _) = j.inclusions().unwrap();
        assert!(i1.validate_morphism().is_valid());
        assert!(is_basis_bijection(&i1));
    }
}
