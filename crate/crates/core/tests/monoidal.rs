use std::sync::Arc;

use adc_core::monoidal::{
    disk_complex, is_basis_bijection, join_morphism, principal_cell, pushout_along_rigid_inclusion, tensor_associator,
    JoinComplex, TensorComplex,
};
use adc_core::orientals::{cosimplicial_image, oriental, oriental_join_iso, SimplexMap};
use adc_core::{AdcComplex, GradedMap};

#[test]
fn square_of_intervals_counts() {
    let d1 = Arc::new(disk_complex::<i64>(1).unwrap());
    let t = TensorComplex::with_default_cap(d1.clone(), d1).unwrap();
    assert_eq!(t.complex.counts(), vec![4, 4, 1]);
    assert!(t.complex.validate().is_valid());
    assert!(t.complex.classify_basis().unwrap().steiner_strong);
}

#[test]
fn tensor_sign_rule() {
    let d1 = Arc::new(disk_complex::<i64>(1).unwrap());
    let d2 = Arc::new(disk_complex::<i64>(2).unwrap());
    let t = TensorComplex::with_default_cap(d1, d2).unwrap();
    let k = &t.complex;
    let z = k.find("c1⊗c2").unwrap();
    assert_eq!(k.format_chain(k.d_basis(z)), "-s0⊗c2 + t0⊗c2 + c1⊗s1 - c1⊗t1");
    assert!(k.validate().is_valid());
}

#[test]
fn tensor_of_orientals_is_steiner_strong() {
    for (i, j) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let a = oriental::<i64>(i).unwrap().complex;
        let b = oriental::<i64>(j).unwrap().complex;
        let t = TensorComplex::with_default_cap(a, b).unwrap();
        let c = t.complex.classify_basis().unwrap();
        assert!(c.steiner_strong, "c(Δ{i})⊗c(Δ{j})");
    }
}

#[test]
fn tensor_of_generator_maps_sends_atoms_to_atoms() {
    let phi = SimplexMap::face(2, 1).unwrap();
    let f = cosimplicial_image::<i64>(&phi).unwrap();
    let id = GradedMap::identity(oriental::<i64>(1).unwrap().complex);
    let src = TensorComplex::with_default_cap(f.source().clone(), id.source().clone()).unwrap();
    let tgt = TensorComplex::with_default_cap(f.target().clone(), id.target().clone()).unwrap();
    let g = adc_core::monoidal::tensor_morphism(&f, &id, &src, &tgt).unwrap();
    assert!(g.validate_morphism().is_valid());
    let z = src.complex.find("0.1⊗0.1").unwrap();
    assert_eq!(tgt.complex.format_chain(g.image(z)), "0.2⊗0.1");
}

#[test]
fn associator_is_an_isomorphism() {
    let d1 = Arc::new(disk_complex::<i64>(1).unwrap());
    let a = tensor_associator(d1.clone(), d1.clone(), d1, 6).unwrap();
    assert!(a.validate_morphism().is_valid());
    assert!(is_basis_bijection(&a));
}

#[test]
fn join_of_two_points_is_an_interval() {
    let p = oriental::<i64>(0).unwrap().complex;
    let j = JoinComplex::with_default_cap(p.clone(), p).unwrap();
    let k = &j.complex;
    assert_eq!(k.counts(), vec![2, 1]);
    assert_eq!(k.format_chain(k.d_basis(k.find("0⋆0").unwrap())), "-0⋆∅ + ∅⋆0");
    let iso = oriental_join_iso::<i64>(0, 0, 4).unwrap();
    assert!(is_basis_bijection(&iso.iso));
}

#[test]
fn join_of_two_intervals_is_a_tetrahedron() {
    let a = oriental::<i64>(1).unwrap().complex;
    let j = JoinComplex::with_default_cap(a.clone(), a).unwrap();
    assert_eq!(j.complex.counts().iter().sum::<usize>(), 15);
    assert!(j.complex.validate().is_valid());
    let iso = oriental_join_iso::<i64>(1, 1, 6).unwrap();
    assert!(iso.iso.validate_morphism().is_valid());
    assert!(is_basis_bijection(&iso.iso));
    let back = iso.inverse.compose(&iso.iso).unwrap();
    assert_eq!(
        back.action_key(),
        GradedMap::identity(iso.iso.source().clone()).action_key()
    );
}

#[test]
fn join_iso_shifts_the_right_factor() {
    let iso = oriental_join_iso::<i64>(0, 2, 6).unwrap();
    let src = iso.iso.source();
    let z = src.find("0⋆0.1").unwrap();
    assert_eq!(iso.iso.target().format_chain(iso.iso.image(z)), "0.1.2");
    let z = src.find("∅⋆1.2").unwrap();
    assert_eq!(iso.iso.target().format_chain(iso.iso.image(z)), "2.3");
}

#[test]
fn join_with_empty_and_vertex_inclusion() {
    let d2 = oriental::<i64>(2).unwrap().complex;
    let empty = Arc::new(AdcComplex::<i64>::empty("∅"));
    let j = JoinComplex::with_default_cap(d2.clone(), empty).unwrap();
    assert_eq!(j.complex.counts(), d2.counts());
    let (i1, _) = j.inclusions().unwrap();
    assert!(is_basis_bijection(&i1));

    let m = cosimplicial_image::<i64>(&SimplexMap::vertex(2, 2).unwrap()).unwrap();
    let right = oriental::<i64>(1).unwrap().complex;
    let src = JoinComplex::with_default_cap(m.source().clone(), right.clone()).unwrap();
    let tgt = JoinComplex::with_default_cap(m.target().clone(), right.clone()).unwrap();
    let mj = join_morphism(&m, &GradedMap::identity(right), &src, &tgt).unwrap();
    assert!(mj.validate_morphism().is_valid());
    assert!(mj.is_rigid_ordered_inclusion().unwrap());
}

#[test]
fn principal_cells() {
    let (_, c00) = principal_cell::<i64>(0, 0, 4).unwrap();
    assert_eq!(c00.dimension(), 0);
    let (t, c11) = principal_cell::<i64>(1, 1, 4).unwrap();
    assert_eq!(c11.dimension(), 2);
    assert!(c11.defects(&t.complex).unwrap().is_empty());
    let k = &t.complex;
    assert_eq!(k.format_chain(c11.source(0)), "s0⊗s0");
    assert_eq!(k.format_chain(c11.target(0)), "t0⊗t0");
    let (t, c21) = principal_cell::<i64>(2, 1, 4).unwrap();
    assert_eq!(c21.dimension(), 3);
    assert!(c21.defects(&t.complex).unwrap().is_empty());
}

#[test]
fn pushouts() {
    let o = oriental::<i64>(2).unwrap().complex;
    let id = GradedMap::identity(o.clone());
    let p = pushout_along_rigid_inclusion(&id, &id).unwrap();
    assert_eq!(p.complex.counts(), o.counts());
    assert!(is_basis_bijection(&p.from_m));

    let m = cosimplicial_image::<i64>(&SimplexMap::vertex(1, 1).unwrap()).unwrap();
    let n = cosimplicial_image::<i64>(&SimplexMap::vertex(1, 0).unwrap()).unwrap();
    let p = pushout_along_rigid_inclusion(&m, &n).unwrap();
    assert_eq!(p.complex.counts(), vec![3, 2]);
    let k = &p.complex;
    assert_eq!(k.format_chain(k.d_basis(k.find("0.1′").unwrap())), "-0′ + 0");
    assert!(p.complex.validate().is_valid());
    assert!(p.from_l.validate_morphism().is_valid() && p.from_m.validate_morphism().is_valid());
    let a = p.from_l.compose(&m).unwrap();
    let b = p.from_m.compose(&n).unwrap();
    assert_eq!(a.action_key(), b.action_key());
    let fold = cosimplicial_image::<i64>(&SimplexMap::constant(1, 0, 0).unwrap()).unwrap();
    assert!(pushout_along_rigid_inclusion(&fold, &fold).is_err());
}
