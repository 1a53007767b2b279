use adc_core::enumerate::SearchOptions;
use adc_core::monoidal::TensorComplex;
use adc_core::orientals::{cosimplicial_image, oriental, Side, SimplexMap};
use adc_core::slice_transfer::{
    oplax_nerve_homotopy, oriental_chi_phi, oriental_psi_table, oriental_triangle, psi, q_projections, section_report,
    slice_sdr_suite,
};
use adc_core::GradedMap;

fn opts() -> SearchOptions {
    SearchOptions::with_cap(3)
}

#[test]
fn psi_matches_the_closed_table() {
    for m in 0..=2 {
        for n in 0..=2 {
            let tri = oriental_triangle::<i64>(m).unwrap();
            let right = oriental::<i64>(n).unwrap();
            let ps = psi(&tri, &right.complex).unwrap();
            assert!(ps.map.validate_morphism().is_valid());
            let left = oriental::<i64>(m).unwrap();
            let point = oriental::<i64>(0).unwrap();
            for z in ps.source.complex.basis_refs() {
                let want = oriental_psi_table(m, &ps, &left, &point, &right, z).unwrap();
                assert_eq!(ps.map.image(z), &want, "m={m} n={n} at {}", ps.source.complex.id(z));
            }
        }
    }
}

#[test]
fn psi_on_a_pair_of_vertices() {
    let tri = oriental_triangle::<i64>(1).unwrap();
    let ps = psi(&tri, &oriental::<i64>(0).unwrap().complex).unwrap();
    let p = &ps.pushout.complex;
    let z = ps.source.complex.find("0⋆0").unwrap();
    assert_eq!(p.format_chain(ps.map.image(z)), "0.1 + 0⋆0");
    let tri = oriental_triangle::<i64>(2).unwrap();
    let ps = psi(&tri, &oriental::<i64>(1).unwrap().complex).unwrap();
    let z = ps.source.complex.find("0.1⋆0.1").unwrap();
    assert!(ps.map.image(z).is_zero());
}

#[test]
fn chi_phi_cases() {
    let constant = SimplexMap::constant(1, 1, 1).unwrap();
    let cp = oriental_chi_phi::<i64>(1, &constant).unwrap();
    let key = GradedMap::identity(cp.join.complex.clone()).action_key();
    assert_eq!(cp.endomorphism.action_key(), key);

    let phi = SimplexMap::new(2, 1, vec![0, 1, 1]).unwrap();
    let cp = oriental_chi_phi::<i64>(1, &phi).unwrap();
    let j = &cp.join.complex;
    let z = j.find("0⋆0.1.2").unwrap();
    assert_eq!(j.format_chain(cp.endomorphism.image(z)), "0.1⋆1.2 + 1⋆0.1.2");
    assert!(cp.conjugate.validate_morphism().is_valid());

    let phi = SimplexMap::new(2, 1, vec![0, 0, 1]).unwrap();
    let cp = oriental_chi_phi::<i64>(2, &phi).unwrap();
    assert!(cp
        .endomorphism
        .image(cp.join.complex.find("0.1⋆0.1").unwrap())
        .is_zero());
}

#[test]
fn projections_out_of_a_tensor() {
    let i = oriental::<i64>(1).unwrap().complex;
    let t = TensorComplex::with_default_cap(i.clone(), i).unwrap();
    let (q1, q2) = q_projections(&t).unwrap();
    let k = &t.complex;
    assert_eq!(q1.target().format_chain(q1.image(k.find("0.1⊗0").unwrap())), "0.1");
    assert!(q1.image(k.find("0.1⊗0.1").unwrap()).is_zero());
    assert_eq!(q2.target().format_chain(q2.image(k.find("1⊗0.1").unwrap())), "0.1");
}

#[test]
fn section_on_the_interval() {
    let i = oriental::<i64>(1).unwrap().complex;
    let r = section_report(&i, 2, opts()).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
fn nerve_homotopy_and_a_corrupted_copy() {
    let i = oriental::<i64>(1).unwrap().complex;
    let t = TensorComplex::with_default_cap(i.clone(), i.clone()).unwrap();
    let (_, q2) = q_projections(&t).unwrap();
    let nh = oplax_nerve_homotopy(&t, &q2, Side::Oplax, 2, opts()).unwrap();
    assert!(nh.passed(), "{:?}", nh.report);
    assert_eq!(nh.from, nh.to);
    let mut bad = nh.homotopy.clone();
    let level = &mut bad.map.levels[1];
    level[0] = (level[0] + 1) % nh.target.set.count(1);
    assert!(!bad.validate(&nh.target.set, &nh.from, &nh.to).is_valid());
}

#[test]
fn vertex_anchor_has_a_trivial_slice() {
    let c = GradedMap::identity(oriental::<i64>(0).unwrap().complex);
    let r = slice_sdr_suite(&c, 2, opts()).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.slice_counts, vec![1, 1, 1]);
}

#[test]
fn edge_inside_a_tetrahedron() {
    let c = cosimplicial_image::<i64>(&SimplexMap::inclusion(3, &[0, 1]).unwrap()).unwrap();
    let r = slice_sdr_suite(&c, 2, opts()).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.slice_counts, vec![10, 55, 237]);
    assert_eq!(r.slice_counts, r.pinned_hom_counts);
    assert!(r.budget.complete);
}
