use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::chain::{BasisRef, ChainElement};
use crate::error::{AdcError, Result};
use crate::report::ValidationReport;
use crate::scalar::{self, Coefficient};

/// A finite based augmented directed complex.
///
/// Positivity is always the non-negative span of the basis. Degrees run from
/// 0 to `max_degree`; every basis element of degree `i >= 1` carries its
/// differential in degree `i - 1`, and every 0-dimensional one carries its
/// augmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdcComplex<C> {
    name: String,
    basis: Vec<Vec<String>>,
    index: Vec<HashMap<String, usize>>,
    differential: Vec<Vec<ChainElement<C>>>,
    augmentation: Vec<C>,
}

/// A table `(x^0_k, x^1_k)` for `0 <= k <= i`, the shape of a cell of ν(K).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NuCell<C> {
    pub rows: Vec<(ChainElement<C>, ChainElement<C>)>,
}

impl<C: Coefficient> NuCell<C> {
    pub fn dimension(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn source(&self, k: usize) -> &ChainElement<C> {
        &self.rows[k].0
    }

    pub fn target(&self, k: usize) -> &ChainElement<C> {
        &self.rows[k].1
    }

    /// Every condition of a cell of ν(K) that fails, as readable messages.
    pub fn defects(&self, k: &AdcComplex<C>) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let top = self.dimension();
        for (deg, (a, b)) in self.rows.iter().enumerate() {
            k.check_chain(a)?;
            k.check_chain(b)?;
            if a.degree() != deg || b.degree() != deg {
                return Err(AdcError::DegreeMismatch {
                    expected: deg,
                    found: a.degree().max(b.degree()),
                });
            }
            if !a.is_positive() || !b.is_positive() {
                out.push(format!("row {deg} is not positive"));
            }
            if deg > 0 {
                let want = self.rows[deg - 1].1.sub(&self.rows[deg - 1].0)?;
                for (eps, x) in [(0, a), (1, b)] {
                    if k.boundary(x)? != want {
                        out.push(format!(
                            "d(x^{eps}_{deg}) differs from x^1_{} - x^0_{}",
                            deg - 1,
                            deg - 1
                        ));
                    }
                }
            }
        }
        let (a0, b0) = &self.rows[0];
        if k.augment(a0)? != C::one() || k.augment(b0)? != C::one() {
            out.push("bottom row does not have augmentation 1".into());
        }
        if self.rows[top].0 != self.rows[top].1 {
            out.push("top rows differ".into());
        }
        Ok(out)
    }

    pub fn render(&self, k: &AdcComplex<C>) -> String {
        let mut s = String::new();
        for (deg, (a, b)) in self.rows.iter().enumerate() {
            let _ = write!(
                s,
                "{}[{} | {}]",
                if deg == 0 { "" } else { " " },
                k.format_chain(a),
                k.format_chain(b)
            );
        }
        s
    }
}

/// The three structural predicates on a basis, with witnesses for failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisClassification {
    pub unital: bool,
    pub strongly_loop_free: bool,
    pub steiner_strong: bool,
    pub non_unital_atoms: Vec<String>,
    pub loops: Vec<Vec<String>>,
}

/// The ≤_N preorder as a reachability table over all basis elements.
#[derive(Debug, Clone)]
pub struct Preorder {
    nodes: Vec<BasisRef>,
    position: HashMap<BasisRef, usize>,
    reach: Vec<Vec<u64>>,
}

impl Preorder {
    pub fn le(&self, x: BasisRef, y: BasisRef) -> bool {
        let (i, j) = (self.position[&x], self.position[&y]);
        self.reach[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn nodes(&self) -> &[BasisRef] {
        &self.nodes
    }

    /// All related pairs `(x, y)` with `x <= y`.
    pub fn pairs(&self) -> Vec<(BasisRef, BasisRef)> {
        let mut out = Vec::new();
        for &x in &self.nodes {
            for &y in &self.nodes {
                if self.le(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.nodes
            .iter()
            .enumerate()
            .all(|(a, &x)| self.nodes[a + 1..].iter().all(|&y| !(self.le(x, y) && self.le(y, x))))
    }
}

impl<C: Coefficient> AdcComplex<C> {
    /// Builds a complex from identifiers, differentials given as
    /// `(coefficient, identifier)` lists in the degree below, and augmentations
    /// of the 0-dimensional generators in basis order.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<Vec<String>>,
        differential: Vec<Vec<Vec<(C, String)>>>,
        augmentation: Vec<C>,
    ) -> Result<Self> {
        let index = Self::index_basis(&basis)?;
        let max = basis.len().saturating_sub(1);
        let mut diff = vec![Vec::new()];
        for deg in 1..=max {
            let given = differential.get(deg).cloned().unwrap_or_default();
            if given.len() != basis[deg].len() {
                return Err(AdcError::Incompatible(format!(
                    "degree {deg} has {} generators but {} differentials",
                    basis[deg].len(),
                    given.len()
                )));
            }
            let mut row = Vec::with_capacity(given.len());
            for terms in given {
                let mut chain = ChainElement::zero(deg - 1);
                for (c, id) in terms {
                    let i = *index[deg - 1].get(&id).ok_or(AdcError::UnknownBasis {
                        degree: deg - 1,
                        id: id.clone(),
                    })?;
                    chain.add_term(i, &c)?;
                }
                row.push(chain);
            }
            diff.push(row);
        }
        Self::from_parts(name, basis, diff, augmentation)
    }

    /// Builds a complex from index-level data.
    pub fn from_parts(
        name: impl Into<String>,
        basis: Vec<Vec<String>>,
        differential: Vec<Vec<ChainElement<C>>>,
        augmentation: Vec<C>,
    ) -> Result<Self> {
        let mut basis = basis;
        if basis.is_empty() {
            basis.push(Vec::new());
        }
        let index = Self::index_basis(&basis)?;
        let mut differential = differential;
        if differential.is_empty() {
            differential.push(Vec::new());
        }
        if differential.len() != basis.len() || !differential[0].is_empty() {
            return Err(AdcError::Incompatible(
                "differential table does not match the basis".into(),
            ));
        }
        for (deg, row) in differential.iter().enumerate().skip(1) {
            if row.len() != basis[deg].len() {
                return Err(AdcError::Incompatible(format!("degree {deg} differential count")));
            }
            for chain in row {
                if chain.degree() != deg - 1 {
                    return Err(AdcError::DegreeMismatch {
                        expected: deg - 1,
                        found: chain.degree(),
                    });
                }
                if let Some(i) = chain.support().find(|&i| i >= basis[deg - 1].len()) {
                    return Err(AdcError::BasisIndex {
                        degree: deg - 1,
                        index: i,
                    });
                }
            }
        }
        if augmentation.len() != basis[0].len() {
            return Err(AdcError::Incompatible(
                "augmentation count differs from degree 0".into(),
            ));
        }
        Ok(Self {
            name: name.into(),
            basis,
            index,
            differential,
            augmentation,
        })
    }

    fn index_basis(basis: &[Vec<String>]) -> Result<Vec<HashMap<String, usize>>> {
        let mut index = Vec::with_capacity(basis.len());
        for (deg, ids) in basis.iter().enumerate() {
            let mut map = HashMap::with_capacity(ids.len());
            for (i, id) in ids.iter().enumerate() {
                if map.insert(id.clone(), i).is_some() {
                    return Err(AdcError::DuplicateId {
                        degree: deg,
                        id: id.clone(),
                    });
                }
            }
            index.push(map);
        }
        Ok(index)
    }

    /// The complex with no generators.
    pub fn empty(name: impl Into<String>) -> Self {
        Self::from_parts(name, vec![Vec::new()], vec![Vec::new()], Vec::new()).expect("empty complex")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn max_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// Number of generators in `degree`, zero above the top.
    pub fn count(&self, degree: usize) -> usize {
        self.basis.get(degree).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn total_basis(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Highest degree that actually has generators.
    pub fn dimension(&self) -> Option<usize> {
        (0..self.basis.len()).rev().find(|&d| !self.basis[d].is_empty())
    }

    pub fn basis_ids(&self, degree: usize) -> &[String] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn basis_refs(&self) -> impl Iterator<Item = BasisRef> + '_ {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(d, ids)| (0..ids.len()).map(move |i| BasisRef::new(d, i)))
    }

    pub fn id(&self, b: BasisRef) -> &str {
        &self.basis[b.degree][b.index]
    }

    pub fn lookup(&self, degree: usize, id: &str) -> Option<BasisRef> {
        self.index.get(degree)?.get(id).map(|&i| BasisRef::new(degree, i))
    }

    /// Looks an identifier up in every degree.
    pub fn find(&self, id: &str) -> Option<BasisRef> {
        (0..self.basis.len()).find_map(|d| self.lookup(d, id))
    }

    pub fn generator(&self, b: BasisRef) -> ChainElement<C> {
        ChainElement::basis(b.degree, b.index)
    }

    /// Chain from `(coefficient, identifier)` pairs in one degree.
    pub fn chain(&self, degree: usize, terms: &[(i64, &str)]) -> Result<ChainElement<C>> {
        let mut out = ChainElement::zero(degree);
        for (c, id) in terms {
            let b = self.lookup(degree, id).ok_or(AdcError::UnknownBasis {
                degree,
                id: id.to_string(),
            })?;
            out.add_term(b.index, &C::from_small(*c))?;
        }
        Ok(out)
    }

    pub fn check_chain(&self, x: &ChainElement<C>) -> Result<()> {
        if x.degree() > self.max_degree() {
            if x.is_zero() {
                return Ok(());
            }
            return Err(AdcError::AboveMaxDegree {
                degree: x.degree(),
                max: self.max_degree(),
            });
        }
        if let Some(i) = x.support().find(|&i| i >= self.count(x.degree())) {
            return Err(AdcError::BasisIndex {
                degree: x.degree(),
                index: i,
            });
        }
        Ok(())
    }

    /// Differential of a generator of positive degree.
    pub fn d_basis(&self, b: BasisRef) -> &ChainElement<C> {
        &self.differential[b.degree][b.index]
    }

    pub fn augmentation_of(&self, index: usize) -> &C {
        &self.augmentation[index]
    }

    /// `d(x)` for `x` of positive degree.
    pub fn boundary(&self, x: &ChainElement<C>) -> Result<ChainElement<C>> {
        let deg = x.degree();
        if deg == 0 {
            return Err(AdcError::DegreeMismatch { expected: 1, found: 0 });
        }
        if deg > self.max_degree() {
            self.check_chain(x)?;
            return Ok(ChainElement::zero(deg - 1));
        }
        x.map_linear(deg - 1, |i| Ok(self.differential[deg][i].clone()))
    }

    /// `e(x)` for `x` of degree 0.
    pub fn augment(&self, x: &ChainElement<C>) -> Result<C> {
        if x.degree() != 0 {
            return Err(AdcError::DegreeMismatch {
                expected: 0,
                found: x.degree(),
            });
        }
        let mut total = C::zero();
        for (i, c) in x.terms() {
            total = scalar::add(&total, &scalar::mul(c, &self.augmentation[i])?)?;
        }
        Ok(total)
    }

    /// Support together with the positive and negative parts.
    pub fn positive_parts(&self, x: &ChainElement<C>) -> Result<(Vec<BasisRef>, ChainElement<C>, ChainElement<C>)> {
        self.check_chain(x)?;
        let (plus, minus) = x.split()?;
        let support = x.support().map(|i| BasisRef::new(x.degree(), i)).collect();
        Ok((support, plus, minus))
    }

    /// Checks `d∘d = 0` and `e∘d = 0` on every generator.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for deg in 1..=self.max_degree() {
            for i in 0..self.count(deg) {
                let b = BasisRef::new(deg, i);
                let dx = self.d_basis(b);
                if deg == 1 {
                    match self.augment(dx) {
                        Ok(v) if v.is_zero() => {}
                        Ok(v) => report.violation("e∘d=0", self.id(b), format!("e(d({})) = {v}", self.id(b))),
                        Err(e) => report.input_error(e.to_string()),
                    }
                } else {
                    match self.boundary(dx) {
                        Ok(ddx) if ddx.is_zero() => {}
                        Ok(ddx) => report.violation(
                            "d∘d=0",
                            self.id(b),
                            format!("d(d({})) = {}", self.id(b), self.format_chain(&ddx)),
                        ),
                        Err(e) => report.input_error(e.to_string()),
                    }
                }
            }
        }
        report
    }

    fn generating_edges(&self) -> Result<Vec<(BasisRef, BasisRef)>> {
        let mut edges = Vec::new();
        for deg in 1..=self.max_degree() {
            for i in 0..self.count(deg) {
                let x = BasisRef::new(deg, i);
                for (j, c) in self.d_basis(x).terms() {
                    let y = BasisRef::new(deg - 1, j);
                    if c.is_negative() {
                        edges.push((y, x));
                    } else {
                        edges.push((x, y));
                    }
                }
            }
        }
        Ok(edges)
    }

    /// The least preorder with `y <= x` for `y` in the negative support of
    /// `d(x)` and `x <= z` for `z` in the positive support.
    pub fn le_n_preorder(&self) -> Result<Preorder> {
        let nodes: Vec<BasisRef> = self.basis_refs().collect();
        let position: HashMap<BasisRef, usize> = nodes.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut succ = vec![Vec::new(); nodes.len()];
        for (a, b) in self.generating_edges()? {
            succ[position[&a]].push(position[&b]);
        }
        let words = nodes.len().div_ceil(64).max(1);
        let mut reach = vec![vec![0u64; words]; nodes.len()];
        for start in 0..nodes.len() {
            let row = &mut reach[start];
            let mut stack = vec![start];
            row[start / 64] |= 1 << (start % 64);
            while let Some(v) = stack.pop() {
                for &w in &succ[v] {
                    if row[w / 64] >> (w % 64) & 1 == 0 {
                        row[w / 64] |= 1 << (w % 64);
                        stack.push(w);
                    }
                }
            }
        }
        Ok(Preorder { nodes, position, reach })
    }

    /// Non-trivial strongly connected components of the generating graph.
    pub fn le_n_loops(&self) -> Result<Vec<Vec<BasisRef>>> {
        let nodes: Vec<BasisRef> = self.basis_refs().collect();
        let mut graph = DiGraph::<BasisRef, ()>::with_capacity(nodes.len(), 0);
        let idx: HashMap<BasisRef, _> = nodes.iter().map(|&b| (b, graph.add_node(b))).collect();
        for (a, b) in self.generating_edges()? {
            graph.add_edge(idx[&a], idx[&b], ());
        }
        let mut loops: Vec<Vec<BasisRef>> = tarjan_scc(&graph)
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let mut v: Vec<BasisRef> = c.into_iter().map(|n| graph[n]).collect();
                v.sort();
                v
            })
            .collect();
        loops.sort();
        Ok(loops)
    }

    /// The atom ⟨x⟩ and whether its bottom rows have augmentation 1.
    pub fn atom(&self, x: BasisRef) -> Result<(NuCell<C>, bool)> {
        if x.degree > self.max_degree() || x.index >= self.count(x.degree) {
            return Err(AdcError::BasisIndex {
                degree: x.degree,
                index: x.index,
            });
        }
        let top = self.generator(x);
        let mut rows = vec![(top.clone(), top)];
        for _ in 0..x.degree {
            let (src, tgt) = rows.last().expect("non-empty");
            let (_, minus) = self.boundary(src)?.split()?;
            let (plus, _) = self.boundary(tgt)?.split()?;
            rows.push((minus, plus));
        }
        rows.reverse();
        let unital = self.augment(&rows[0].0)? == C::one() && self.augment(&rows[0].1)? == C::one();
        Ok((NuCell { rows }, unital))
    }

    pub fn classify_basis(&self) -> Result<BasisClassification> {
        let mut non_unital_atoms = Vec::new();
        for b in self.basis_refs() {
            if !self.atom(b)?.1 {
                non_unital_atoms.push(self.id(b).to_string());
            }
        }
        let loops: Vec<Vec<String>> = self
            .le_n_loops()?
            .into_iter()
            .map(|c| c.into_iter().map(|b| self.id(b).to_string()).collect())
            .collect();
        let unital = non_unital_atoms.is_empty();
        let strongly_loop_free = loops.is_empty();
        Ok(BasisClassification {
            unital,
            strongly_loop_free,
            steiner_strong: unital && strongly_loop_free,
            non_unital_atoms,
            loops,
        })
    }

    /// Human-readable chain, e.g. `2*01 - 02`.
    pub fn format_chain(&self, x: &ChainElement<C>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (i, c)) in x.terms().enumerate() {
            let name = self
                .basis
                .get(x.degree())
                .and_then(|ids| ids.get(i))
                .map_or_else(|| format!("#{i}"), Clone::clone);
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if abs.is_one() {
                s.push_str(&name);
            } else {
                let _ = write!(s, "{abs}*{name}");
            }
        }
        s
    }

    /// Identifiers of all generators, for clash detection.
    pub fn all_ids(&self) -> BTreeSet<(usize, &str)> {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(d, ids)| ids.iter().map(move |s| (d, s.as_str())))
            .collect()
    }

    /// Same complex over another coefficient type.
    pub fn convert<D: Coefficient>(&self) -> Result<AdcComplex<D>> {
        let differential = self
            .differential
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.try_convert().ok_or(AdcError::Overflow("coefficient conversion")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let augmentation = self
            .augmentation
            .iter()
            .map(|c| {
                c.to_i128()
                    .and_then(D::from_i128)
                    .ok_or(AdcError::Overflow("coefficient conversion"))
            })
            .collect::<Result<Vec<_>>>()?;
        AdcComplex::from_parts(self.name.clone(), self.basis.clone(), differential, augmentation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// c(Δ1) written out by hand.
    fn interval() -> AdcComplex<i64> {
        AdcComplex::new(
            "I",
            vec![ids(&["0", "1"]), ids(&["0.1"])],
            vec![vec![], vec![vec![(1, "1".into()), (-1, "0".into())]]],
            vec![1, 1],
        )
        .unwrap()
    }

    #[test]
    fn interval_preorder() {
        let k = interval();
        let p = k.le_n_preorder().unwrap();
        let v0 = k.find("0").unwrap();
        let v1 = k.find("1").unwrap();
        let a = k.find("0.1").unwrap();
        assert!(p.le(v0, a) && p.le(a, v1) && p.le(v0, v1));
        assert!(!p.le(v1, v0) && !p.le(a, v0));
        assert_eq!(p.pairs().len(), 6);
        assert!(p.is_antisymmetric());
    }

    #[test]
    fn d_squared_witness() {
        let k = AdcComplex::<i64>::new(
            "bad",
            vec![ids(&["x"]), ids(&["a"]), ids(&["b"])],
            vec![vec![], vec![vec![]], vec![vec![(1, "a".into())]]],
            vec![1],
        )
        .unwrap();
        let r = k.validate();
        // d(a) = 0 here, so only the e-check passes; d(d(b)) = d(a) = 0 too.
        assert!(r.is_valid());
        let k = AdcComplex::<i64>::new(
            "bad",
            vec![ids(&["x"]), ids(&["a"]), ids(&["b"])],
            vec![vec![], vec![vec![(1, "x".into())]], vec![vec![(1, "a".into())]]],
            vec![1],
        )
        .unwrap();
        let r = k.validate();
        assert_eq!(r.violations_of("d∘d=0").count(), 1);
        assert_eq!(r.violations_of("d∘d=0").next().unwrap().witness, "d(d(b)) = x");
        assert_eq!(r.violations_of("e∘d=0").count(), 1);
    }

    #[test]
    fn loop_is_detected() {
        let k = AdcComplex::<i64>::new(
            "loop",
            vec![ids(&["x", "y"]), ids(&["a", "b"])],
            vec![
                vec![],
                vec![
                    vec![(1, "y".into()), (-1, "x".into())],
                    vec![(1, "x".into()), (-1, "y".into())],
                ],
            ],
            vec![1, 1],
        )
        .unwrap();
        assert!(k.validate().is_valid());
        let c = k.classify_basis().unwrap();
        assert!(c.unital);
        assert!(!c.strongly_loop_free && !c.steiner_strong);
        assert_eq!(c.loops, vec![ids(&["x", "y", "a", "b"])]);
    }

    #[test]
    fn duplicate_and_dangling_ids_are_input_errors() {
        let dup = AdcComplex::<i64>::new("d", vec![ids(&["x", "x"])], vec![], vec![1, 1]);
        assert!(matches!(dup, Err(AdcError::DuplicateId { .. })));
        let dangling = AdcComplex::<i64>::new(
            "d",
            vec![ids(&["x"]), ids(&["a"])],
            vec![vec![], vec![vec![(1, "z".into())]]],
            vec![1],
        );
        assert!(matches!(dangling, Err(AdcError::UnknownBasis { degree: 0, .. })));
    }

    #[test]
    fn empty_complex_is_valid() {
        let k = AdcComplex::<i64>::empty("empty");
        assert!(k.validate().is_valid());
        assert!(k.classify_basis().unwrap().steiner_strong);
        assert_eq!(k.total_basis(), 0);
    }

    #[test]
    fn chain_formatting() {
        let k = interval();
        let x = k.chain(0, &[(2, "0"), (-1, "1")]).unwrap();
        assert_eq!(k.format_chain(&x), "2*0 - 1");
        assert_eq!(k.format_chain(&ChainElement::zero(1)), "0");
    }

    #[test]
    fn chains_above_the_top_are_rejected() {
        let k = interval();
        assert!(k.check_chain(&ChainElement::basis(2, 0)).is_err());
        assert!(k.check_chain(&ChainElement::zero(5)).is_ok());
    }
}
