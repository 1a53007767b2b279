use std::sync::Arc;

use adc_core::enumerate::{enumerate_cells, enumerate_morphisms, nerve, Pins, SearchOptions};
use adc_core::monoidal::{disk_complex, TensorComplex};
use adc_core::orientals::oriental;

fn opts() -> SearchOptions {
    SearchOptions::with_cap(3)
}

#[test]
fn hom_from_a_point_picks_vertices() {
    let p = oriental::<i64>(0).unwrap().complex;
    let t = oriental::<i64>(2).unwrap().complex;
    let e = enumerate_morphisms(&p, &t, opts(), &Pins::new()).unwrap();
    assert_eq!(e.morphisms.len(), 3);
    assert!(e.budget.complete);
}

#[test]
fn hom_from_an_interval_matches_one_cells() {
    let i = oriental::<i64>(1).unwrap().complex;
    let t = oriental::<i64>(2).unwrap().complex;
    let homs = enumerate_morphisms(&i, &t, opts(), &Pins::new()).unwrap();
    assert_eq!(homs.morphisms.len(), 7);
    let cells = enumerate_cells(&t, 1, opts()).unwrap();
    assert_eq!(cells.cells.len(), 7);
    let counts: Vec<usize> = (0..=2)
        .map(|d| enumerate_cells(&t, d, opts()).unwrap().cells.len())
        .collect();
    assert_eq!(counts, vec![3, 7, 8]);
}

#[test]
fn cells_of_a_point() {
    let p = oriental::<i64>(0).unwrap().complex;
    for d in 0..=3 {
        assert_eq!(enumerate_cells(&p, d, opts()).unwrap().cells.len(), 1, "dimension {d}");
    }
}

#[test]
fn square_has_one_non_identity_two_cell() {
    let d1 = Arc::new(disk_complex::<i64>(1).unwrap());
    let t = TensorComplex::with_default_cap(d1.clone(), d1).unwrap();
    let cells = enumerate_cells(&t.complex, 2, opts()).unwrap();
    let proper: Vec<_> = cells.cells.iter().filter(|c| !c.source(2).is_zero()).collect();
    assert_eq!(proper.len(), 1);
    assert!(cells.warnings.is_empty());
}

#[test]
fn nerve_of_an_interval() {
    let i = oriental::<i64>(1).unwrap().complex;
    let n = nerve(&i, 2, opts()).unwrap();
    assert_eq!(n.set.count(0), 2);
    assert_eq!(n.set.count(1), 3);
    assert!(n.set.validate().is_valid());
    assert!(n.budget.complete);
    for (level, fs) in n.simplices.iter().enumerate() {
        for f in fs {
            assert_eq!(n.index_of(level, f).map(|x| &n.simplices[level][x]), Some(f));
        }
    }
}

#[test]
fn nerve_is_independent_of_jobs() {
    let t = oriental::<i64>(2).unwrap().complex;
    let a = nerve(&t, 2, SearchOptions { coeff_cap: 3, jobs: 1 }).unwrap();
    let b = nerve(&t, 2, SearchOptions { coeff_cap: 3, jobs: 4 }).unwrap();
    assert_eq!(a.set.counts(), b.set.counts());
    for (x, y) in a.simplices.iter().zip(&b.simplices) {
        let kx: Vec<_> = x.iter().map(|f| f.action_key()).collect();
        let ky: Vec<_> = y.iter().map(|f| f.action_key()).collect();
        assert_eq!(kx, ky);
    }
}
