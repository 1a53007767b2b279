//! Bounded enumeration of cells of ν(K), of ADC morphisms, and of truncated
//! Street nerves.
//!
//! Everything reduces to one problem: list the positive chains `y` in degree
//! `k` with every coefficient at most the cap and `d(y) = t` (or `e(y) = t` in
//! degree 0). A linear-programming certificate then decides whether the cap
//! could have cut off any solution.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{BasisRef, ChainElement};
use crate::complex::{AdcComplex, NuCell};
use crate::error::{AdcError, Result};
use crate::morphism::{AdcMorphism, GradedMap};
use crate::orientals::{cosimplicial_image_between, oriental, Oriental, SimplexMap};
use crate::scalar::Coefficient;
use crate::simplicial::TruncatedSimplicialSet;

pub const DEFAULT_COEFF_CAP: u32 = 3;

/// Search limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub coeff_cap: u32,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            coeff_cap: DEFAULT_COEFF_CAP,
            jobs: 1,
        }
    }
}

impl SearchOptions {
    pub fn with_cap(coeff_cap: u32) -> Self {
        Self { coeff_cap, jobs: 1 }
    }
}

/// The cap used and whether the search provably found every solution, not
/// just those under the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationBudget {
    pub coeff_cap: u32,
    pub complete: bool,
}

type Sparse = Vec<(usize, i128)>;

#[derive(Debug)]
struct Solutions {
    list: Vec<Sparse>,
    complete: bool,
}

/// One degree of the linear system: dense columns `d(b)` (or `e(b)`).
#[derive(Debug)]
struct Block {
    rows: usize,
    cols: Vec<Vec<i128>>,
    // lo[v][r], hi[v][r]: extreme contributions of columns v.. to row r
    lo: Vec<Vec<i128>>,
    hi: Vec<Vec<i128>>,
}

impl Block {
    fn new(rows: usize, cols: Vec<Vec<i128>>, cap: i128) -> Self {
        let n = cols.len();
        let mut lo = vec![vec![0i128; rows]; n + 1];
        let mut hi = vec![vec![0i128; rows]; n + 1];
        for v in (0..n).rev() {
            for r in 0..rows {
                let c = cols[v][r] * cap;
                lo[v][r] = lo[v + 1][r] + c.min(0);
                hi[v][r] = hi[v + 1][r] + c.max(0);
            }
        }
        Self { rows, cols, lo, hi }
    }
}

/// Solver for `d(y) = t`, `0 <= y <= cap`, memoized per target.
pub struct PositiveSolver {
    cap: u32,
    blocks: Vec<Block>,
    cache: Mutex<HashMap<(usize, Sparse), Arc<Solutions>>>,
}

/// Coefficients entering the search must stay far from the `i128` limits so
/// that the bounded products below cannot overflow.
const SEARCH_LIMIT: i128 = 1 << 40;

fn to_i128<C: Coefficient>(c: &C) -> Result<i128> {
    c.to_i128()
        .filter(|v| v.abs() <= SEARCH_LIMIT)
        .ok_or(AdcError::Overflow("coefficient does not fit the enumeration range"))
}

fn from_i128<C: Coefficient>(v: i128) -> Result<C> {
    C::from_i128(v).ok_or(AdcError::Overflow("enumerated coefficient"))
}

fn sparse_of<C: Coefficient>(x: &ChainElement<C>) -> Result<Sparse> {
    x.terms().map(|(i, c)| Ok((i, to_i128(c)?))).collect()
}

fn chain_of<C: Coefficient>(degree: usize, s: &Sparse) -> Result<ChainElement<C>> {
    let terms = s
        .iter()
        .map(|&(i, v)| Ok((i, from_i128(v)?)))
        .collect::<Result<Vec<(usize, C)>>>()?;
    ChainElement::from_terms(degree, terms)
}

impl PositiveSolver {
    pub fn new<C: Coefficient>(k: &AdcComplex<C>, coeff_cap: u32) -> Result<Self> {
        if coeff_cap == 0 {
            return Err(AdcError::Enumeration("coefficient cap must be at least 1".into()));
        }
        let cap = i128::from(coeff_cap);
        let mut blocks = Vec::new();
        let aug = (0..k.count(0))
            .map(|i| Ok(vec![to_i128(k.augmentation_of(i))?]))
            .collect::<Result<Vec<_>>>()?;
        blocks.push(Block::new(1, aug, cap));
        for deg in 1..=k.max_degree() {
            let rows = k.count(deg - 1);
            let cols = (0..k.count(deg))
                .map(|i| {
                    let mut col = vec![0i128; rows];
                    for (r, c) in k.d_basis(BasisRef::new(deg, i)).terms() {
                        col[r] = to_i128(c)?;
                    }
                    Ok(col)
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(Block::new(rows, cols, cap));
        }
        Ok(Self {
            cap: coeff_cap,
            blocks,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn coeff_cap(&self) -> u32 {
        self.cap
    }

    /// Solutions in degree `degree` for the sparse target `t` (in degree
    /// `degree − 1`, or the single augmentation row in degree 0).
    fn solve(&self, degree: usize, t: &Sparse) -> Result<Arc<Solutions>> {
        let key = (degree, t.clone());
        if let Some(s) = self.cache.lock().expect("solver cache").get(&key) {
            return Ok(s.clone());
        }
        let sol = Arc::new(self.solve_uncached(degree, t)?);
        self.cache.lock().expect("solver cache").insert(key, sol.clone());
        Ok(sol)
    }

    fn solve_uncached(&self, degree: usize, t: &Sparse) -> Result<Solutions> {
        let Some(block) = self.blocks.get(degree) else {
            // above the top degree only zero exists
            let ok = t.iter().all(|&(_, v)| v == 0);
            return Ok(Solutions {
                list: if ok { vec![Vec::new()] } else { Vec::new() },
                complete: true,
            });
        };
        let mut target = vec![0i128; block.rows];
        for &(r, v) in t {
            if r >= block.rows {
                return Err(AdcError::Internal(format!("target row {r} outside degree {degree}")));
            }
            target[r] = v;
        }
        let mut list = Vec::new();
        let mut current = Vec::new();
        dfs(block, self.cap as i128, 0, &mut target, &mut current, &mut list)?;
        let complete = certificate(block, t, self.cap);
        Ok(Solutions { list, complete })
    }
}

fn dfs(
    block: &Block,
    cap: i128,
    v: usize,
    residual: &mut [i128],
    current: &mut Sparse,
    out: &mut Vec<Sparse>,
) -> Result<()> {
    let n = block.cols.len();
    if v == n {
        if residual.iter().all(|&r| r == 0) {
            out.push(current.clone());
        }
        return Ok(());
    }
    let col = &block.cols[v];
    for val in 0..=cap {
        let feasible = (0..block.rows).all(|r| {
            let rem = residual[r] - val * col[r];
            block.lo[v + 1][r] <= rem && rem <= block.hi[v + 1][r]
        });
        if feasible {
            for r in 0..block.rows {
                residual[r] -= val * col[r];
            }
            if val > 0 {
                current.push((v, val));
            }
            dfs(block, cap, v + 1, residual, current, out)?;
            if val > 0 {
                current.pop();
            }
            for r in 0..block.rows {
                residual[r] += val * col[r];
            }
        }
    }
    Ok(())
}

const SCALES: [i128; 10] = [1, 2, 3, 4, 6, 12, 24, 60, 120, 720];

enum Bound {
    /// No non-negative solution exists at all.
    Empty,
    /// Upper bounds for the listed columns.
    Caps(Vec<(usize, i128)>),
}

/// Decides whether the cap can have cut off a solution.
///
/// A weight `w` on the rows with `w·d(b) >= 1` and `w·d(b′) >= 0` for the
/// other columns gives `y_b <= w·t / w·d(b)` for every non-negative solution.
/// One weight is tried for all columns at once, then one per column that is
/// still open. Weights come from a floating LP and are verified exactly.
fn certificate(block: &Block, t: &Sparse, cap: u32) -> bool {
    if block.cols.is_empty() {
        return true;
    }
    let cap = i128::from(cap);
    let mut target = vec![0i128; block.rows];
    for &(r, v) in t {
        target[r] = v;
    }
    let all: Vec<usize> = (0..block.cols.len()).collect();
    let open: Vec<usize> = match weight_bound(block, &target, &all) {
        Some(Bound::Empty) => return true,
        Some(Bound::Caps(caps)) => caps.into_iter().filter(|&(_, b)| b > cap).map(|(v, _)| v).collect(),
        None => all.clone(),
    };
    for v in open {
        match weight_bound(block, &target, &[v]) {
            Some(Bound::Empty) => return true,
            Some(Bound::Caps(caps)) if caps.iter().all(|&(_, b)| b <= cap) => {}
            _ => return false,
        }
    }
    true
}

/// LP for a weight that is strictly positive on `focus` and non-negative on
/// every other column, minimizing `w·t`.
fn weight_bound(block: &Block, target: &[i128], focus: &[usize]) -> Option<Bound> {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = (0..block.rows)
        .map(|r| lp.add_var(target[r] as f64, (-1000.0, 1000.0)))
        .collect();
    for (v, col) in block.cols.iter().enumerate() {
        let rhs = if focus.contains(&v) { 1.0 } else { 0.0 };
        let expr: Vec<_> = (0..block.rows)
            .filter(|&r| col[r] != 0)
            .map(|r| (vars[r], col[r] as f64))
            .collect();
        if expr.is_empty() {
            if rhs > 0.0 {
                return None;
            }
            continue;
        }
        lp.add_constraint(expr.as_slice(), ComparisonOp::Ge, rhs);
    }
    let sol = lp.solve().ok()?;
    let w: Vec<f64> = vars.iter().map(|v| *sol.var_value(*v)).collect();
    for scale in SCALES {
        let wi: Vec<i128> = w.iter().map(|x| (x * scale as f64).round() as i128).collect();
        let weights: Vec<i128> = block
            .cols
            .iter()
            .map(|c| (0..block.rows).map(|r| c[r] * wi[r]).sum())
            .collect();
        let valid = weights
            .iter()
            .enumerate()
            .all(|(v, &x)| if focus.contains(&v) { x >= 1 } else { x >= 0 });
        if !valid {
            continue;
        }
        let wt: i128 = (0..block.rows).map(|r| target[r] * wi[r]).sum();
        if wt < 0 {
            return Some(Bound::Empty);
        }
        return Some(Bound::Caps(focus.iter().map(|&v| (v, wt / weights[v])).collect()));
    }
    None
}

/// Cells of ν(K) of one dimension.
#[derive(Debug, Clone)]
pub struct CellEnumeration<C> {
    pub dimension: usize,
    pub cells: Vec<NuCell<C>>,
    pub budget: EnumerationBudget,
    pub warnings: Vec<String>,
}

/// All tables `(x^ε_k)` of dimension `dim` with coefficients at most the cap.
pub fn enumerate_cells<C: Coefficient>(
    k: &AdcComplex<C>,
    dim: usize,
    opts: SearchOptions,
) -> Result<CellEnumeration<C>> {
    let solver = PositiveSolver::new(k, opts.coeff_cap)?;
    let mut warnings = Vec::new();
    let class = k.classify_basis()?;
    if !class.steiner_strong {
        warnings.push(format!(
            "{} is not Steiner-strong; cells need not be generated by atoms",
            k.name()
        ));
    }
    let mut complete = true;
    let unit = solver.solve(0, &vec![(0, 1)])?;
    complete &= unit.complete;
    // partial tables: rows so far
    let mut partial: Vec<Vec<(Sparse, Sparse)>> = Vec::new();
    if dim == 0 {
        for y in &unit.list {
            partial.push(vec![(y.clone(), y.clone())]);
        }
    } else {
        for a in &unit.list {
            for b in &unit.list {
                partial.push(vec![(a.clone(), b.clone())]);
            }
        }
    }
    for deg in 1..=dim {
        let mut next = Vec::new();
        for table in partial {
            let (a, b) = table.last().expect("non-empty table");
            let t = sparse_sub(b, a);
            let sols = solver.solve(deg, &t)?;
            complete &= sols.complete;
            if deg == dim {
                for y in &sols.list {
                    let mut tb = table.clone();
                    tb.push((y.clone(), y.clone()));
                    next.push(tb);
                }
            } else {
                for y0 in &sols.list {
                    for y1 in &sols.list {
                        let mut tb = table.clone();
                        tb.push((y0.clone(), y1.clone()));
                        next.push(tb);
                    }
                }
            }
        }
        partial = next;
    }
    let mut cells = partial
        .into_iter()
        .map(|rows| {
            let rows = rows
                .iter()
                .enumerate()
                .map(|(d, (a, b))| Ok((chain_of(d, a)?, chain_of(d, b)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(NuCell { rows })
        })
        .collect::<Result<Vec<_>>>()?;
    cells.sort();
    cells.dedup();
    Ok(CellEnumeration {
        dimension: dim,
        cells,
        budget: EnumerationBudget {
            coeff_cap: opts.coeff_cap,
            complete,
        },
        warnings,
    })
}

fn sparse_sub(b: &Sparse, a: &Sparse) -> Sparse {
    let mut m: BTreeMap<usize, i128> = b.iter().copied().collect();
    for &(i, v) in a {
        *m.entry(i).or_insert(0) -= v;
    }
    m.into_iter().filter(|&(_, v)| v != 0).collect()
}

/// Morphisms found by [`enumerate_morphisms`].
#[derive(Debug, Clone)]
pub struct MorphismEnumeration<C> {
    pub morphisms: Vec<AdcMorphism<C>>,
    pub budget: EnumerationBudget,
}

/// Prescribed images for some source basis elements.
pub type Pins<C> = BTreeMap<BasisRef, ChainElement<C>>;

struct HomSearch<'a> {
    order: Vec<BasisRef>,
    // per position: boundary of the source generator as (position, coeff)
    boundary: Vec<Vec<(usize, i128)>>,
    augmentation: Vec<i128>,
    pins: Vec<Option<Sparse>>,
    solver: &'a PositiveSolver,
}

impl HomSearch<'_> {
    fn target_for(&self, pos: usize, images: &[Sparse]) -> Result<Sparse> {
        let b = self.order[pos];
        if b.degree == 0 {
            return Ok(vec![(0, self.augmentation[pos])]);
        }
        let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
        for &(q, c) in &self.boundary[pos] {
            for &(i, v) in &images[q] {
                let e = acc.entry(i).or_insert(0);
                *e = e
                    .checked_add(c.checked_mul(v).ok_or(AdcError::Overflow("morphism search"))?)
                    .ok_or(AdcError::Overflow("morphism search"))?;
            }
        }
        Ok(acc.into_iter().filter(|&(_, v)| v != 0).collect())
    }

    fn candidates(&self, pos: usize, images: &[Sparse]) -> Result<(Vec<Sparse>, bool)> {
        let t = self.target_for(pos, images)?;
        let deg = self.order[pos].degree;
        if let Some(pin) = &self.pins[pos] {
            return Ok((
                if self.satisfies(deg, pin, &t) {
                    vec![pin.clone()]
                } else {
                    vec![]
                },
                true,
            ));
        }
        let s = self.solver.solve(deg, &t)?;
        Ok((s.list.clone(), s.complete))
    }

    fn satisfies(&self, deg: usize, y: &Sparse, t: &Sparse) -> bool {
        if y.iter().any(|&(_, v)| v < 0) {
            return false;
        }
        let Some(block) = self.solver.blocks.get(deg) else {
            return y.is_empty() && t.iter().all(|&(_, v)| v == 0);
        };
        let mut got = vec![0i128; block.rows];
        for &(i, v) in y {
            for (r, g) in got.iter_mut().enumerate() {
                *g += block.cols[i][r] * v;
            }
        }
        let mut want = vec![0i128; block.rows];
        for &(r, v) in t {
            want[r] = v;
        }
        got == want
    }

    fn run(&self, pos: usize, images: &mut Vec<Sparse>, out: &mut Vec<Vec<Sparse>>, complete: &mut bool) -> Result<()> {
        if pos == self.order.len() {
            out.push(images.clone());
            return Ok(());
        }
        let (cands, c) = self.candidates(pos, images)?;
        *complete &= c;
        for y in cands {
            images.push(y);
            self.run(pos + 1, images, out, complete)?;
            images.pop();
        }
        Ok(())
    }
}

/// All ADC morphisms `K → L` with image coefficients at most the cap that
/// agree with `pins`.
pub fn enumerate_morphisms<C: Coefficient>(
    k: &Arc<AdcComplex<C>>,
    l: &Arc<AdcComplex<C>>,
    opts: SearchOptions,
    pins: &Pins<C>,
) -> Result<MorphismEnumeration<C>> {
    let solver = PositiveSolver::new(l, opts.coeff_cap)?;
    enumerate_with(k, l, &solver, opts, pins)
}

fn enumerate_with<C: Coefficient>(
    k: &Arc<AdcComplex<C>>,
    l: &Arc<AdcComplex<C>>,
    solver: &PositiveSolver,
    opts: SearchOptions,
    pins: &Pins<C>,
) -> Result<MorphismEnumeration<C>> {
    check_pins(k, l, pins)?;
    let order: Vec<BasisRef> = k.basis_refs().collect();
    let position: HashMap<BasisRef, usize> = order.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut boundary = Vec::with_capacity(order.len());
    let mut augmentation = Vec::with_capacity(order.len());
    let mut pin_list = Vec::with_capacity(order.len());
    for &b in &order {
        if b.degree == 0 {
            boundary.push(Vec::new());
            augmentation.push(to_i128(k.augmentation_of(b.index))?);
        } else {
            boundary.push(
                k.d_basis(b)
                    .terms()
                    .map(|(i, c)| Ok((position[&BasisRef::new(b.degree - 1, i)], to_i128(c)?)))
                    .collect::<Result<Vec<_>>>()?,
            );
            augmentation.push(0);
        }
        pin_list.push(pins.get(&b).map(sparse_of).transpose()?);
    }
    let search = HomSearch {
        order,
        boundary,
        augmentation,
        pins: pin_list,
        solver,
    };
    // Breadth-first expansion until there is enough independent work.
    let want = opts.jobs.max(1) * 8;
    let mut frontier: Vec<Vec<Sparse>> = vec![Vec::new()];
    let mut complete = true;
    while frontier.len() < want && frontier.first().is_some_and(|f| f.len() < search.order.len()) {
        let mut next = Vec::new();
        for partial in frontier {
            let (cands, c) = search.candidates(partial.len(), &partial)?;
            complete &= c;
            for y in cands {
                let mut p = partial.clone();
                p.push(y);
                next.push(p);
            }
        }
        frontier = next;
    }
    let run_all = || -> Vec<Result<(Vec<Vec<Sparse>>, bool)>> {
        frontier
            .par_iter()
            .map(|start| {
                let mut images = start.clone();
                let mut out = Vec::new();
                let mut c = true;
                search.run(images.len(), &mut images, &mut out, &mut c)?;
                Ok((out, c))
            })
            .collect()
    };
    let results = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| AdcError::Internal(e.to_string()))?;
        pool.install(run_all)
    } else {
        frontier
            .iter()
            .map(|start| {
                let mut images = start.clone();
                let mut out = Vec::new();
                let mut c = true;
                search.run(images.len(), &mut images, &mut out, &mut c)?;
                Ok((out, c))
            })
            .collect()
    };
    let mut morphisms = Vec::new();
    for r in results {
        let (found, c) = r?;
        complete &= c;
        for images in found {
            let f = GradedMap::from_fn(k.clone(), l.clone(), 0, |b| chain_of(b.degree, &images[position[&b]]))?;
            morphisms.push(f);
        }
    }
    morphisms.sort_by_key(|f| f.action_key());
    Ok(MorphismEnumeration {
        morphisms,
        budget: EnumerationBudget {
            coeff_cap: opts.coeff_cap,
            complete,
        },
    })
}

/// Pins whose whole boundary is pinned must already satisfy the morphism
/// equations among themselves.
fn check_pins<C: Coefficient>(k: &AdcComplex<C>, l: &AdcComplex<C>, pins: &Pins<C>) -> Result<()> {
    for (&b, img) in pins {
        if b.degree > k.max_degree() || b.index >= k.count(b.degree) {
            return Err(AdcError::BasisIndex {
                degree: b.degree,
                index: b.index,
            });
        }
        if img.degree() != b.degree {
            return Err(AdcError::DegreeMismatch {
                expected: b.degree,
                found: img.degree(),
            });
        }
        l.check_chain(img)?;
        let bad = |why: &str| {
            Err(AdcError::Enumeration(format!(
                "inconsistent constraint at {}: {why}",
                k.id(b)
            )))
        };
        if !img.is_positive() {
            return bad("image is not positive");
        }
        if b.degree == 0 {
            if &l.augment(img)? != k.augmentation_of(b.index) {
                return bad("augmentation is not preserved");
            }
        } else {
            let db = k.d_basis(b);
            let all_pinned = db.support().all(|i| pins.contains_key(&BasisRef::new(b.degree - 1, i)));
            if all_pinned {
                let want = db.map_linear(b.degree - 1, |i| Ok(pins[&BasisRef::new(b.degree - 1, i)].clone()))?;
                let got = if b.degree > l.max_degree() {
                    ChainElement::zero(b.degree - 1)
                } else {
                    l.boundary(img)?
                };
                if got != want {
                    return bad("differential is not preserved");
                }
            }
        }
    }
    Ok(())
}

/// A truncated nerve together with the morphisms behind its simplices.
#[derive(Debug, Clone)]
pub struct Nerve<C> {
    pub set: TruncatedSimplicialSet,
    pub simplices: Vec<Vec<AdcMorphism<C>>>,
    pub orientals: Vec<Oriental<C>>,
    pub budget: EnumerationBudget,
}

impl<C: Coefficient> Nerve<C> {
    pub fn index_of(&self, n: usize, f: &AdcMorphism<C>) -> Option<usize> {
        let key = f.action_key();
        self.simplices[n].binary_search_by(|g| g.action_key().cmp(&key)).ok()
    }
}

/// Levels `Hom(c(Δn), K)` for `n <= trunc`, with faces and degeneracies by
/// precomposition.
pub fn nerve<C: Coefficient>(k: &Arc<AdcComplex<C>>, trunc: usize, opts: SearchOptions) -> Result<Nerve<C>> {
    let solver = PositiveSolver::new(k, opts.coeff_cap)?;
    let orientals = (0..=trunc + 1).map(oriental::<C>).collect::<Result<Vec<_>>>()?;
    let mut complete = true;
    let mut simplices = Vec::new();
    for o in orientals.iter().take(trunc + 1) {
        let e = enumerate_with(&o.complex, k, &solver, opts, &Pins::new())?;
        complete &= e.budget.complete;
        simplices.push(e.morphisms);
    }
    let set = nerve_set(&simplices, &orientals, trunc)?;
    Ok(Nerve {
        set,
        simplices,
        orientals,
        budget: EnumerationBudget {
            coeff_cap: opts.coeff_cap,
            complete,
        },
    })
}

/// The simplicial set whose n-simplices are the given morphisms out of
/// `c(Δn)`, listed in `action_key` order.
pub fn nerve_set<C: Coefficient>(
    simplices: &[Vec<AdcMorphism<C>>],
    orientals: &[Oriental<C>],
    trunc: usize,
) -> Result<TruncatedSimplicialSet> {
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
    precomposition_set(simplices, &deltas, &sigmas, trunc)
}

/// A simplicial set of morphisms whose operators act by precomposition.
///
/// `deltas[n][i]` goes from the level-`(n−1)` source into the level-`n`
/// source and `sigmas[n][i]` from the level-`(n+1)` source into the level-`n`
/// source. Every composite must land among the listed simplices.
pub fn precomposition_set<C: Coefficient>(
    simplices: &[Vec<AdcMorphism<C>>],
    deltas: &[Vec<AdcMorphism<C>>],
    sigmas: &[Vec<AdcMorphism<C>>],
    trunc: usize,
) -> Result<TruncatedSimplicialSet> {
    if simplices.len() < trunc + 1 || deltas.len() < trunc + 1 || sigmas.len() < trunc + 1 {
        return Err(AdcError::Truncation(format!(
            "expected {} levels of simplices and operators",
            trunc + 1
        )));
    }
    let keys: Vec<HashMap<Vec<ChainElement<C>>, usize>> = simplices
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, f)| (f.action_key(), i)).collect())
        .collect();
    let find = |n: usize, f: &AdcMorphism<C>| -> Result<usize> {
        keys[n].get(&f.action_key()).copied().ok_or_else(|| {
            AdcError::Enumeration(format!(
                "an operator leaves the enumerated level {n}; raise the coefficient cap"
            ))
        })
    };
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    for n in 0..=trunc {
        let mut fl = Vec::new();
        let mut sl = Vec::new();
        for f in &simplices[n] {
            fl.push(
                deltas[n]
                    .iter()
                    .map(|d| find(n - 1, &f.compose(d)?))
                    .collect::<Result<Vec<_>>>()?,
            );
            sl.push(
                sigmas[n]
                    .iter()
                    .map(|s| find(n + 1, &f.compose(s)?))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        faces.push(fl);
        degeneracies.push(sl);
    }
    let levels = simplices
        .iter()
        .take(trunc + 1)
        .map(|lv| lv.iter().map(|f| f.action_label()).collect())
        .collect();
    TruncatedSimplicialSet::new(trunc, levels, faces, degeneracies)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_of_a_triangle() {
        let o = oriental::<i64>(2).unwrap();
        let p = oriental::<i64>(0).unwrap();
        let h = enumerate_morphisms(&p.complex, &o.complex, SearchOptions::default(), &Pins::new()).unwrap();
        assert_eq!(h.morphisms.len(), 3);
        assert!(h.budget.complete);
    }

    #[test]
    fn cap_zero_is_rejected() {
        let o = oriental::<i64>(1).unwrap();
        assert!(enumerate_cells(&o.complex, 1, SearchOptions::with_cap(0)).is_err());
    }

    #[test]
    fn solver_respects_cap() {
        let o = oriental::<i64>(1).unwrap();
        let s = PositiveSolver::new(&o.complex, 2).unwrap();
        let sols = s.solve(0, &vec![(0, 2)]).unwrap();
        assert_eq!(sols.list.len(), 3);
        assert!(sols.complete);
        let sols = s.solve(0, &vec![(0, 3)]).unwrap();
        assert_eq!(sols.list.len(), 2);
        assert!(!sols.complete);
    }
}
