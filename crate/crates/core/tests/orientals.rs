use adc_core::orientals::uniqueness::aw_uniqueness_oracle;
use adc_core::orientals::{aw_coalgebra_report, aw_diagonal, cosimplicial_image, g_phi, oriental, Side, SimplexMap};
use adc_core::GradedMap;

#[test]
fn oriental_sizes() {
    let sizes: Vec<usize> = (0..=5)
        .map(|n| oriental::<i64>(n).unwrap().complex.counts().iter().sum())
        .collect();
    assert_eq!(sizes, vec![1, 3, 7, 15, 31, 63]);
    let p = oriental::<i64>(0).unwrap();
    assert_eq!(p.complex.augmentation_of(0), &1);
}

#[test]
fn cosimplicial_images() {
    let v = cosimplicial_image::<i64>(&SimplexMap::vertex(3, 3).unwrap()).unwrap();
    assert_eq!(v.target().format_chain(v.image_of_id("0").unwrap()), "3");
    let id = cosimplicial_image::<i64>(&SimplexMap::identity(2)).unwrap();
    assert_eq!(id.action_key(), GradedMap::identity(id.source().clone()).action_key());
    let s = cosimplicial_image::<i64>(&SimplexMap::new(2, 1, vec![0, 0, 1]).unwrap()).unwrap();
    assert!(s.image_of_id("0.1.2").unwrap().is_zero());
    assert_eq!(s.target().format_chain(s.image_of_id("0.2").unwrap()), "0.1");
}

#[test]
fn cosimplicial_images_are_functorial() {
    for a in SimplexMap::all(1, 2) {
        for b in SimplexMap::all(2, 3) {
            let ba = b.after(&a).unwrap();
            let lhs = cosimplicial_image::<i64>(&b)
                .unwrap()
                .compose(&cosimplicial_image::<i64>(&a).unwrap())
                .unwrap();
            let rhs = cosimplicial_image::<i64>(&ba).unwrap();
            assert_eq!(lhs.action_key(), rhs.action_key(), "{b} ∘ {a}");
        }
    }
}

#[test]
fn diagonal_values() {
    let o = oriental::<i64>(3).unwrap();
    let (t, nabla) = aw_diagonal(&o).unwrap();
    assert!(nabla.validate_morphism().is_valid());
    let show = |id: &str| t.complex.format_chain(nabla.image_of_id(id).unwrap());
    assert_eq!(show("1"), "1⊗1");
    assert_eq!(show("0.1"), "0⊗0.1 + 0.1⊗1");
    assert_eq!(show("0.1.2"), "0⊗0.1.2 + 0.1⊗1.2 + 0.1.2⊗2");
    assert_eq!(show("0.1.2.3"), "0⊗0.1.2.3 + 0.1⊗1.2.3 + 0.1.2⊗2.3 + 0.1.2.3⊗3");
}

#[test]
fn g_phi_cases() {
    let show =
        |g: &adc_core::orientals::GPhi<i64>, id: &str| g.tensor.complex.format_chain(g.map.image_of_id(id).unwrap());
    let g = g_phi::<i64>(&SimplexMap::constant(2, 1, 1).unwrap(), Side::Oplax).unwrap();
    for id in ["0", "0.1", "0.1.2"] {
        assert_eq!(show(&g, id), format!("1⊗{id}"));
    }
    let g = g_phi::<i64>(&SimplexMap::identity(1), Side::Oplax).unwrap();
    assert_eq!(show(&g, "0.1"), "0⊗0.1 + 0.1⊗1");
    let g = g_phi::<i64>(&SimplexMap::new(2, 1, vec![0, 0, 1]).unwrap(), Side::Oplax).unwrap();
    assert_eq!(show(&g, "0.1.2"), "0⊗0.1.2");
    assert_eq!(show(&g, "1.2"), "0⊗1.2 + 0.1⊗2");
    let g = g_phi::<i64>(&SimplexMap::new(2, 1, vec![0, 1, 1]).unwrap(), Side::Lax).unwrap();
    assert!(g.map.validate_morphism().is_valid());
    assert_eq!(show(&g, "0"), "0⊗0");
    assert_eq!(show(&g, "0.1.2"), "0.1.2⊗1");
}

#[test]
fn coalgebra_laws_hold() {
    let r = aw_coalgebra_report::<i64>(3, 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert!(r.coassociative && r.counital && r.natural && r.g_phi_matches_table);
}

#[test]
fn second_candidate_survives_until_dimension_two() {
    let r = aw_uniqueness_oracle(1).unwrap();
    assert_eq!(r.families, 2);
    let id = r.per_phi.iter().find(|p| p.phi == "(0,1)").unwrap();
    assert_eq!(id.candidates.len(), 2);
    let r = aw_uniqueness_oracle(2).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.families, 1);
    assert!(r.alternative_eliminated);
}
