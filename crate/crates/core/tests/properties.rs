use std::sync::Arc;

use adc_core::io::{adc_from_json, adc_to_json, morphism_from_json, morphism_to_json};
use adc_core::monoidal::{disk_complex, JoinComplex, TensorComplex};
use adc_core::orientals::{aw_coalgebra_report, cosimplicial_image, oriental, vertex_retraction, SimplexMap};
use adc_core::{AdcComplex, BigInt, ChainElement, Coefficient};
use proptest::prelude::*;

fn simplex_map(m: usize, n: usize) -> impl Strategy<Value = SimplexMap> {
    prop::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
        v.sort_unstable();
        SimplexMap::new(m, n, v).unwrap()
    })
}

fn composable() -> impl Strategy<Value = (SimplexMap, SimplexMap)> {
    (0usize..=3, 0usize..=3, 0usize..=3).prop_flat_map(|(a, b, c)| (simplex_map(a, b), simplex_map(b, c)))
}

fn small_complex() -> impl Strategy<Value = Arc<AdcComplex<i64>>> {
    prop_oneof![
        (0usize..=3).prop_map(|n| oriental::<i64>(n).unwrap().complex),
        (0usize..=3).prop_map(|i| Arc::new(disk_complex::<i64>(i).unwrap())),
    ]
}

fn retraction_text<C: Coefficient>(m: usize) -> Vec<String> {
    let v = vertex_retraction::<C>(m).unwrap();
    let k = &v.oriental.complex;
    k.basis_refs()
        .map(|b| format!("{}↦{}", k.id(b), k.format_chain(v.structure.homotopy.image(b))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cosimplicial_image_is_functorial((a, b) in composable()) {
        let lhs = cosimplicial_image::<i64>(&b).unwrap().compose(&cosimplicial_image::<i64>(&a).unwrap()).unwrap();
        let rhs = cosimplicial_image::<i64>(&b.after(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs.action_key(), rhs.action_key());
        prop_assert!(rhs.validate_morphism().is_valid());
    }

    #[test]
    fn tensors_and_joins_are_complexes(k in small_complex(), l in small_complex()) {
        let t = TensorComplex::with_default_cap(k.clone(), l.clone()).unwrap();
        prop_assert!(t.complex.validate().is_valid());
        prop_assert!(t.complex.classify_basis().unwrap().steiner_strong);
        let j = JoinComplex::new(k, l, 8).unwrap();
        prop_assert!(j.complex.validate().is_valid());
    }

    #[test]
    fn chains_split_into_positive_parts(coeffs in prop::collection::vec(-5i64..=5, 6)) {
        let o = oriental::<i64>(3).unwrap();
        let x = ChainElement::from_terms(1, coeffs.iter().copied().enumerate()).unwrap();
        let (support, plus, minus) = o.complex.positive_parts(&x).unwrap();
        prop_assert_eq!(plus.sub(&minus).unwrap(), x.clone());
        prop_assert!(plus.is_positive() && minus.is_positive());
        prop_assert!(plus.support().all(|i| minus.coeff(i) == 0));
        prop_assert_eq!(support.len(), x.len());
    }

    #[test]
    fn files_round_trip(theta in (0usize..=3, 0usize..=3).prop_flat_map(|(m, n)| simplex_map(m, n))) {
        let f = cosimplicial_image::<i64>(&theta).unwrap();
        let k = adc_from_json::<i64>(&adc_to_json(f.target())).unwrap();
        prop_assert_eq!(&k, f.target().as_ref());
        let g = morphism_from_json::<i64>(&morphism_to_json(&f)).unwrap();
        prop_assert_eq!(g.action_key(), f.action_key());
    }

    #[test]
    fn coefficient_types_agree(m in 0usize..=4) {
        let base = retraction_text::<i64>(m);
        prop_assert_eq!(&retraction_text::<i32>(m), &base);
        prop_assert_eq!(&retraction_text::<i128>(m), &base);
        prop_assert_eq!(&retraction_text::<BigInt>(m), &base);
    }
}

#[test]
fn coalgebra_report_with_big_integers() {
    let r = aw_coalgebra_report::<BigInt>(3, 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
fn large_coefficients_survive_files() {
    let big: BigInt = "123456789012345678901234567890".parse().unwrap();
    let k = AdcComplex::<BigInt>::new(
        "wide",
        vec![vec!["x".into(), "y".into()], vec!["a".into()]],
        vec![
            vec![],
            vec![vec![(big.clone(), "y".into()), (-big.clone(), "x".into())]],
        ],
        vec![BigInt::from(1), BigInt::from(1)],
    )
    .unwrap();
    let v = adc_to_json(&k);
    assert!(v.to_string().contains("\"123456789012345678901234567890\""));
    assert_eq!(adc_from_json::<BigInt>(&v).unwrap(), k);
    assert!(adc_from_json::<i64>(&v).is_err());
}
