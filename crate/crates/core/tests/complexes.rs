use std::sync::Arc;

use adc_core::antihomotopy::{Antihomotopy, RetractStructure};
use adc_core::monoidal::disk_complex;
use adc_core::orientals::{cosimplicial_image, oriental, vertex_homotopy, vertex_retraction, SimplexMap};
use adc_core::{AdcComplex, GradedMap};

#[test]
fn triangle_is_a_valid_complex() {
    let o = oriental::<i64>(2).unwrap();
    let k = &o.complex;
    assert!(k.validate().is_valid());
    let top = o.element(&[0, 1, 2]).unwrap();
    assert_eq!(k.format_chain(k.d_basis(top)), "0.1 - 0.2 + 1.2");
}

#[test]
fn empty_complex_is_valid() {
    assert!(AdcComplex::<i64>::empty("∅").validate().is_valid());
}

#[test]
fn nonzero_square_is_reported() {
    let k = AdcComplex::<i64>::new(
        "bad",
        vec![vec!["x".into()], vec!["a".into()], vec!["b".into()]],
        vec![vec![], vec![vec![(1, "x".into())]], vec![vec![(1, "a".into())]]],
        vec![1],
    )
    .unwrap();
    let r = k.validate();
    assert!(!r.is_valid());
    assert!(r.violations.iter().any(|v| v.check == "d∘d=0" && v.at == "b"));
}

#[test]
fn positive_and_negative_parts() {
    let o = oriental::<i64>(2).unwrap();
    let k = &o.complex;
    let dx = k.d_basis(o.element(&[0, 1, 2]).unwrap()).clone();
    let (_, plus, minus) = k.positive_parts(&dx).unwrap();
    assert_eq!(k.format_chain(&plus), "0.1 + 1.2");
    assert_eq!(k.format_chain(&minus), "0.2");
    let x = k.chain(1, &[(2, "0.1"), (-3, "0.2"), (1, "1.2")]).unwrap();
    let (support, plus, minus) = k.positive_parts(&x).unwrap();
    assert_eq!(support.len(), 3);
    assert_eq!(k.format_chain(&plus), "2*0.1 + 1.2");
    assert_eq!(k.format_chain(&minus), "3*0.2");
    let (s, p, m) = k.positive_parts(&k.chain(1, &[]).unwrap()).unwrap();
    assert!(s.is_empty() && p.is_zero() && m.is_zero());
}

#[test]
fn preorder_on_the_interval_and_triangle() {
    let o = oriental::<i64>(1).unwrap();
    let p = o.complex.le_n_preorder().unwrap();
    let (v0, e, v1) = (o.vertex(0), o.element(&[0, 1]).unwrap(), o.vertex(1));
    assert!(p.le(v0, e) && p.le(e, v1) && p.le(v0, v1) && p.le(e, e));
    assert!(!p.le(v1, v0));
    assert!(p.is_antisymmetric());

    let t = oriental::<i64>(2).unwrap();
    let p = t.complex.le_n_preorder().unwrap();
    let top = t.element(&[0, 1, 2]).unwrap();
    assert!(p.le(t.vertex(0), top) && p.le(top, t.vertex(2)));
}

#[test]
fn zero_differential_gives_a_discrete_preorder() {
    let k = AdcComplex::<i64>::new("discrete", vec![vec!["x".into(), "y".into()]], vec![], vec![1, 1]).unwrap();
    let p = k.le_n_preorder().unwrap();
    assert_eq!(p.pairs().len(), 2);
}

#[test]
fn atom_of_the_triangle() {
    let o = oriental::<i64>(2).unwrap();
    let k = &o.complex;
    let (cell, unital) = k.atom(o.element(&[0, 1, 2]).unwrap()).unwrap();
    assert!(unital);
    assert_eq!(k.format_chain(cell.source(1)), "0.2");
    assert_eq!(k.format_chain(cell.target(1)), "0.1 + 1.2");
    assert_eq!(k.format_chain(cell.source(0)), "0");
    assert_eq!(k.format_chain(cell.target(0)), "2");
    assert!(cell.defects(k).unwrap().is_empty());
}

#[test]
fn atom_of_a_vertex_and_of_a_disk() {
    let o = oriental::<i64>(0).unwrap();
    let (cell, unital) = o.complex.atom(o.vertex(0)).unwrap();
    assert!(unital);
    assert_eq!(cell.dimension(), 0);
    let d = disk_complex::<i64>(1).unwrap();
    let (cell, _) = d.atom(d.find("c1").unwrap()).unwrap();
    assert_eq!(d.format_chain(cell.source(0)), "s0");
    assert_eq!(d.format_chain(cell.target(0)), "t0");
    assert_eq!(d.format_chain(cell.source(1)), "c1");
}

#[test]
fn classification_of_orientals_disks_and_a_loop() {
    for n in 0..=6 {
        let c = oriental::<i64>(n).unwrap().complex.classify_basis().unwrap();
        assert!(c.unital && c.strongly_loop_free && c.steiner_strong, "c(Δ{n})");
    }
    for i in 0..=4 {
        assert!(
            disk_complex::<i64>(i).unwrap().classify_basis().unwrap().steiner_strong,
            "D{i}"
        );
    }
    let k = AdcComplex::<i64>::new(
        "loop",
        vec![vec!["x".into(), "y".into()], vec!["a".into(), "b".into()]],
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
    let c = k.classify_basis().unwrap();
    assert!(!c.strongly_loop_free && !c.steiner_strong);
    assert!(!c.loops.is_empty());
}

#[test]
fn morphism_validation() {
    let m = cosimplicial_image::<i64>(&SimplexMap::vertex(2, 2).unwrap()).unwrap();
    assert!(m.validate_morphism().is_valid());
    assert!(m.is_rigid_ordered_inclusion().unwrap());
    let o = oriental::<i64>(1).unwrap();
    assert!(GradedMap::identity(o.complex.clone())
        .is_rigid_ordered_inclusion()
        .unwrap());
    let flip = GradedMap::from_ids(
        o.complex.clone(),
        o.complex.clone(),
        0,
        &[("0", vec![(1, "0")]), ("1", vec![(1, "1")]), ("0.1", vec![(-1, "0.1")])],
    )
    .unwrap();
    assert!(!flip.validate_morphism().is_valid());
    let fold = cosimplicial_image::<i64>(&SimplexMap::constant(1, 0, 0).unwrap()).unwrap();
    assert!(fold.validate_morphism().is_valid());
    assert!(!fold.is_rigid_ordered_inclusion().unwrap());
}

#[test]
fn vertex_homotopy_values() {
    let o = oriental::<i64>(2).unwrap();
    let h = vertex_homotopy(&o).unwrap();
    let k = &o.complex;
    assert_eq!(k.format_chain(h.image(o.vertex(0))), "0.2");
    assert_eq!(k.format_chain(h.image(o.element(&[0, 1]).unwrap())), "0.1.2");
    assert!(h.image(o.vertex(2)).is_zero());
    assert!(h.image(o.element(&[1, 2]).unwrap()).is_zero());
}

#[test]
fn vertex_retraction_is_a_strong_square_zero_retract() {
    for m in 0..=6 {
        let r = vertex_retraction::<i64>(m).unwrap().structure.validate();
        assert!(r.passed(), "m = {m}: {:?}", r.report);
        assert_eq!(
            (r.strong, r.over_base, r.square_zero),
            (Some(true), Some(true), Some(true))
        );
    }
    let zero = vertex_retraction::<i64>(0).unwrap();
    assert!(zero.structure.homotopy.is_zero());
}

#[test]
fn identity_retract_is_trivial() {
    let k = oriental::<i64>(2).unwrap().complex;
    let id = GradedMap::identity(k.clone());
    let s = RetractStructure {
        inclusion: id.clone(),
        retraction: id,
        homotopy: GradedMap::zero(k.clone(), k, 1),
        strong: true,
        over_base: true,
        square_zero: true,
    };
    assert!(s.validate().passed());
}

#[test]
fn perturbed_homotopy_fails_square_zero() {
    let v = vertex_retraction::<i64>(2).unwrap();
    let s = &v.structure;
    let o = &v.oriental;
    let extra = GradedMap::from_ids(
        o.complex.clone(),
        o.complex.clone(),
        1,
        &[("0", vec![(1, "0.1")]), ("0.1", vec![(1, "0.1.2")])],
    )
    .unwrap();
    let broken = RetractStructure {
        homotopy: s.homotopy.add(&extra).unwrap(),
        ..s.clone()
    };
    let r = broken.validate();
    assert!(!r.passed());
    assert!(!r.report.violations.is_empty());
}

#[test]
fn antihomotopy_checks() {
    let v = vertex_retraction::<i64>(2).unwrap();
    let a = v.structure.antihomotopy().unwrap();
    assert!(a.validate().is_valid());
    let hm = a.precompose(&v.structure.inclusion).unwrap();
    assert!(hm.map.is_zero());
    let z = Antihomotopy::identity_on(&GradedMap::identity(v.oriental.complex.clone()));
    assert!(z.validate().is_valid());
    assert!(z.add(&z).unwrap().map.is_zero());
    let o = &v.oriental;
    let dropped = GradedMap::from_fn(o.complex.clone(), o.complex.clone(), 1, |b| {
        if o.complex.id(b) == "0.1" {
            Ok(adc_core::ChainElement::zero(2))
        } else {
            Ok(a.map.image(b).clone())
        }
    })
    .unwrap();
    let broken = Antihomotopy::new(a.from.clone(), a.to.clone(), dropped).unwrap();
    let r = broken.validate();
    assert!(r.violations.iter().any(|v| v.at.contains("0.1")), "{r:?}");
}

#[test]
fn complexes_round_trip_through_files() {
    let o = oriental::<i64>(3).unwrap();
    let text = adc_core::io::to_text(&adc_core::io::adc_to_json(&o.complex), false);
    let back = adc_core::io::parse_adc::<i64>(&text).unwrap();
    assert_eq!(Arc::new(back), o.complex);
    let again = adc_core::io::to_text(&adc_core::io::adc_to_json(&o.complex), false);
    assert_eq!(text, again);
    let v = vertex_retraction::<i64>(3).unwrap();
    let f = adc_core::io::morphism_to_json(&v.structure.homotopy);
    let g = adc_core::io::morphism_from_json::<i64>(&f).unwrap();
    assert_eq!(g.action_key(), v.structure.homotopy.action_key());
    assert_eq!(g.shift(), 1);
}
