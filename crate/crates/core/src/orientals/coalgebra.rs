//! Coalgebra laws of the diagonal and agreement of g_φ with its table.
//!
//! Coassociativity and the counit laws are compared term by term on basis
//! triples, which identifies `(K⊗K)⊗K` with `K⊗(K⊗K)` along the associator
//! without building either complex.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{aw_diagonal, cosimplicial_image_between, g_phi, oriental, Oriental, Side, SimplexMap};
use crate::chain::{BasisRef, ChainElement};
use crate::error::Result;
use crate::monoidal::{tensor_morphism, TensorComplex};
use crate::morphism::AdcMorphism;
use crate::scalar::{self, Coefficient};

#[derive(Debug, Clone, Serialize)]
pub struct CoalgebraReport {
    pub n_max: usize,
    pub g_phi_n_max: usize,
    pub coassociative: bool,
    pub counital: bool,
    pub natural: bool,
    /// Number of maps `θ: [k] → [n]` checked for naturality.
    pub naturality_maps: usize,
    /// g_φ computed as a composite agrees with the closed form, both sides.
    pub g_phi_matches_table: bool,
    pub g_phi_checked: usize,
    pub failures: Vec<String>,
}

impl CoalgebraReport {
    pub fn passed(&self) -> bool {
        self.coassociative && self.counital && self.natural && self.g_phi_matches_table
    }
}

struct Level<C> {
    o: Oriental<C>,
    t: TensorComplex<C>,
    nabla: AdcMorphism<C>,
}

type Triples<C> = BTreeMap<(BasisRef, BasisRef, BasisRef), C>;

fn accumulate<C: Coefficient>(acc: &mut Triples<C>, key: (BasisRef, BasisRef, BasisRef), c: &C) -> Result<()> {
    let slot = acc.entry(key).or_insert_with(C::zero);
    *slot = scalar::add(slot, c)?;
    if slot.is_zero() {
        acc.remove(&key);
    }
    Ok(())
}

fn coassociator<C: Coefficient>(lv: &Level<C>, b: BasisRef) -> Result<(Triples<C>, Triples<C>)> {
    let mut left = Triples::new();
    let mut right = Triples::new();
    for (z, c) in lv.nabla.image(b).terms() {
        let (x, y) = lv.t.factors(BasisRef::new(b.degree, z));
        for (w, c2) in lv.nabla.image(x).terms() {
            let (x1, x2) = lv.t.factors(BasisRef::new(x.degree, w));
            accumulate(&mut left, (x1, x2, y), &scalar::mul(c, c2)?)?;
        }
        for (w, c2) in lv.nabla.image(y).terms() {
            let (y1, y2) = lv.t.factors(BasisRef::new(y.degree, w));
            accumulate(&mut right, (x, y1, y2), &scalar::mul(c, c2)?)?;
        }
    }
    Ok((left, right))
}

/// `(ε⊗id)∇` and `(id⊗ε)∇` on one generator, where ε is the augmentation
/// on degree 0 and zero above.
fn counits<C: Coefficient>(lv: &Level<C>, b: BasisRef) -> Result<(ChainElement<C>, ChainElement<C>)> {
    let k = &lv.o.complex;
    let mut left = ChainElement::zero(b.degree);
    let mut right = ChainElement::zero(b.degree);
    for (z, c) in lv.nabla.image(b).terms() {
        let (x, y) = lv.t.factors(BasisRef::new(b.degree, z));
        if x.degree == 0 {
            left.add_term(y.index, &scalar::mul(c, k.augmentation_of(x.index))?)?;
        }
        if y.degree == 0 {
            right.add_term(x.index, &scalar::mul(c, k.augmentation_of(y.index))?)?;
        }
    }
    Ok((left, right))
}

/// Checks ∇ on `c(Δn)` for `n ≤ n_max` and g_φ for every `φ: [n] → [1]`
/// with `n ≤ g_phi_n_max`.
pub fn aw_coalgebra_report<C: Coefficient>(n_max: usize, g_phi_n_max: usize) -> Result<CoalgebraReport> {
    let levels = (0..=n_max)
        .map(|n| {
            let o = oriental::<C>(n)?;
            let (t, nabla) = aw_diagonal(&o)?;
            Ok(Level { o, t, nabla })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    let (mut coassociative, mut counital, mut natural) = (true, true, true);
    for lv in &levels {
        for b in lv.o.complex.basis_refs() {
            let (l, r) = coassociator(lv, b)?;
            if l != r {
                coassociative = false;
                failures.push(format!(
                    "coassociativity fails at {} in c(Δ{})",
                    lv.o.complex.id(b),
                    lv.o.n
                ));
            }
            let (l, r) = counits(lv, b)?;
            let x = lv.o.complex.generator(b);
            if l != x || r != x {
                counital = false;
                failures.push(format!("counit fails at {} in c(Δ{})", lv.o.complex.id(b), lv.o.n));
            }
        }
    }
    let mut naturality_maps = 0;
    for src in &levels {
        for tgt in &levels {
            for theta in SimplexMap::all(src.o.n, tgt.o.n) {
                naturality_maps += 1;
                let c = cosimplicial_image_between(&theta, &src.o, &tgt.o)?;
                let lhs = tensor_morphism(&c, &c, &src.t, &tgt.t)?.compose(&src.nabla)?;
                let rhs = tgt.nabla.compose(&c)?;
                if let Some(b) = lhs.first_difference(&rhs) {
                    natural = false;
                    failures.push(format!("naturality fails for θ = {theta} at {}", src.o.complex.id(b)));
                }
            }
        }
    }
    let mut g_phi_matches_table = true;
    let mut g_phi_checked = 0;
    for n in 0..=g_phi_n_max {
        for phi in SimplexMap::all(n, 1) {
            for side in [Side::Oplax, Side::Lax] {
                g_phi_checked += 1;
                if let Err(e) = g_phi::<C>(&phi, side) {
                    g_phi_matches_table = false;
                    failures.push(e.to_string());
                }
            }
        }
    }
    failures.truncate(20);
    Ok(CoalgebraReport {
        n_max,
        g_phi_n_max,
        coassociative,
        counital,
        natural,
        naturality_maps,
        g_phi_matches_table,
        g_phi_checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diagonals() {
        let r = aw_coalgebra_report::<i64>(3, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        // maps [k] → [n] for k, n ≤ 3
        let expected: usize = (0..=3)
            .flat_map(|k| (0..=3).map(move |n| SimplexMap::all(k, n).len()))
            .sum();
        assert_eq!(r.naturality_maps, expected);
        assert_eq!(r.g_phi_checked, 2 * (2 + 3 + 4));
    }
}
