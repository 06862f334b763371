//! Fixture-level checks: the two worked decompositions, their reduced
//! collapse, and consistency between symbolic and specialized routes.

use alexq_core::laurent::LaurentPoly;
use alexq_core::presentation::ModulePresentation;
use alexq_core::specialize::SpecializedModule;
use alexq_core::LinkDiagram;

fn fixture(text: &str) -> LinkDiagram {
    LinkDiagram::parse(text).unwrap()
}

fn fig5() -> LinkDiagram {
    fixture(include_str!("../../../fixtures/fig5.lnk"))
}

fn fig6() -> LinkDiagram {
    fixture(include_str!("../../../fixtures/fig6.lnk"))
}

fn lp(s: &str, nv: usize) -> LaurentPoly {
    LaurentPoly::parse(s, nv).unwrap()
}

#[test]
fn fig5_components() {
    let d = fig5();
    assert_eq!(d.num_components(), 2);
    assert_eq!(d.arc_count(), 10);
    assert_eq!(d.crossings().len(), 9);
    for i in 0..9 {
        assert_eq!(d.kappa(i), 0);
    }
    assert_eq!(d.kappa(9), 1);
}

#[test]
fn fig6_components() {
    let d = fig6();
    assert_eq!(d.num_components(), 2);
    assert_eq!(d.arc_count(), 12);
    assert_eq!(d.crossings().len(), 12);
    for i in 0..8 {
        assert_eq!(d.kappa(i), 0);
    }
    for i in 8..12 {
        assert_eq!(d.kappa(i), 1);
    }
}

#[test]
fn fig5_matrix_rows_match_the_crossing_relations() {
    let p = ModulePresentation::alexander_matrix(&fig5());
    // crossing 7 row: t1*a9 - (t1 - 1)*a1 - a3 = 0
    let row = &p.relations()[6];
    assert_eq!(row[0], lp("1 - t1", 2));
    assert_eq!(row[8], lp("t1", 2));
    assert_eq!(row[2], lp("-1", 2));
    for j in [1, 3, 4, 5, 6, 7, 9] {
        assert!(row[j].is_zero());
    }
    assert!(p.first_unannihilated_row().is_none());
}

#[test]
fn fig5_decomposition() {
    let p = ModulePresentation::alexander_matrix(&fig5());
    let dec = p.cyclic_decomposition().expect("reaches diagonal form");
    assert_eq!(dec.free_rank, 2);
    assert_eq!(dec.torsion_factors.len(), 2);
    let want1 = lp("2*t1 - t1^2", 2);
    let want2 = lp("2*t1 - 1", 2);
    assert!(dec.torsion_factors.iter().any(|f| f.eq_up_to_unit(&want1)));
    assert!(dec.torsion_factors.iter().any(|f| f.eq_up_to_unit(&want2)));
}

#[test]
fn fig6_decomposition() {
    let p = ModulePresentation::alexander_matrix(&fig6());
    let dec = p.cyclic_decomposition().expect("reaches diagonal form");
    assert_eq!(dec.free_rank, 2);
    assert_eq!(dec.torsion_factors.len(), 2);
    let want1 = lp("t1 + t2 - t1*t2", 2);
    let want2 = lp("t1 + t2 - 1", 2);
    assert!(dec.torsion_factors.iter().any(|f| f.eq_up_to_unit(&want1)));
    assert!(dec.torsion_factors.iter().any(|f| f.eq_up_to_unit(&want2)));
}

#[test]
fn decomposition_predicts_specialized_dimensions() {
    for (d, mu) in [(fig5(), 2), (fig6(), 2)] {
        let p = ModulePresentation::alexander_matrix(&d);
        let dec = p.cyclic_decomposition().unwrap();
        for (prime, u) in [(5u64, vec![2u64, 3]), (7, vec![3, 5]), (11, vec![2, 6])] {
            let m = SpecializedModule::specialize(&p, prime, &u).unwrap();
            let vanishing = dec
                .torsion_factors
                .iter()
                .filter(|f| f.evaluate_in_prime_field(prime, &u).unwrap() == 0)
                .count();
            assert_eq!(m.coker_dim(), dec.free_rank + vanishing, "prime {prime}");
            assert_eq!(u.len(), mu);
        }
    }
}

#[test]
fn fig5_specialization_dimension_example() {
    let p = ModulePresentation::alexander_matrix(&fig5());
    let m = SpecializedModule::specialize(&p, 5, &[2, 3]).unwrap();
    // factor 2t - t^2 vanishes at t1 = 2, factor 2t - 1 = 3 does not
    assert_eq!(m.coker_dim(), 3);
    let k = m.kernel_phi();
    assert!(!k.degenerate);
    assert_eq!(k.dim(), 2);
}

#[test]
fn fig6_specialization_dimension_example() {
    let p = ModulePresentation::alexander_matrix(&fig6());
    let m = SpecializedModule::specialize(&p, 5, &[2, 3]).unwrap();
    // 2 + 3 - 6 = -1 and 2 + 3 - 1 = 4: neither factor vanishes mod 5
    assert_eq!(m.coker_dim(), 2);
}

#[test]
fn kernel_phi_edge_cases() {
    // a kinked unknot with u != 1 has a one-dimensional module with
    // injective phi
    let d = fixture(include_str!("../../../fixtures/unknot_r1.lnk"));
    let p = ModulePresentation::alexander_matrix(&d);
    let m = SpecializedModule::specialize(&p, 7, &[3]).unwrap();
    assert_eq!(m.coker_dim(), 1);
    let k = m.kernel_phi();
    assert!(!k.degenerate);
    assert_eq!(k.dim(), 0);
    // all assignments 1 make phi vanish identically
    let m = SpecializedModule::specialize(&p, 7, &[1]).unwrap();
    let k = m.kernel_phi();
    assert!(k.degenerate);
    assert_eq!(k.dim(), m.coker_dim());
}

#[test]
fn specialized_equality_examples() {
    let d = fixture(include_str!("../../../fixtures/unlink3.lnk"));
    let p = ModulePresentation::alexander_matrix(&d);
    let m = SpecializedModule::specialize(&p, 5, &[2, 3, 4]).unwrap();
    let e = |i: usize| {
        let mut v = vec![0u64; 3];
        v[i] = 1;
        v
    };
    assert!(m.equal(&e(0), &e(0)).unwrap());
    assert!(!m.equal(&e(0), &e(1)).unwrap());
    assert!(matches!(
        m.equal(&e(0), &[1, 2]),
        Err(alexq_core::specialize::SpecializeError::DimensionMismatch { .. })
    ));
}

#[test]
fn fig5_quandle_presentation_dimension_pinned_case() {
    let p = ModulePresentation::alexander_matrix(&fig5());
    let m = SpecializedModule::specialize(&p, 5, &[2, 3]).unwrap();
    let q = alexq_core::quandle::generate_qa(&m).unwrap();
    let qp = q.quandle_presentation().unwrap();
    assert_eq!(m.coker_dim(), 3);
    assert_eq!(qp.coker_dim(), 3);
    // a singleton quandle presents a one-dimensional module
    let d = fixture(include_str!("../../../fixtures/unknot_r2.lnk"));
    let p = ModulePresentation::alexander_matrix(&d);
    let m = SpecializedModule::specialize(&p, 5, &[2]).unwrap();
    let q = alexq_core::quandle::generate_qa(&m).unwrap();
    assert_eq!(q.len(), 1);
    assert_eq!(q.quandle_presentation().unwrap().coker_dim(), 1);
}

#[test]
fn simplified_fig5_minors_recover_the_torsion_factors() {
    let s = ModulePresentation::alexander_matrix(&fig5()).simplify();
    assert_eq!(s.generator_count(), 4);
    assert_eq!(s.relations().len(), 2);
    // 1x1 minors are exactly the two torsion factors.
    let e3 = s.elementary_ideals(3).unwrap();
    assert_eq!(e3.len(), 2);
    assert!(e3.iter().any(|f| f.eq_up_to_unit(&lp("2*t1 - t1^2", 2))));
    assert!(e3.iter().any(|f| f.eq_up_to_unit(&lp("2*t1 - 1", 2))));
    // The single 2x2 minor is their product.
    let e2 = s.elementary_ideals(2).unwrap();
    assert_eq!(e2.len(), 1);
    assert!(e2[0].eq_up_to_unit(&lp("2*t1 - t1^2", 2).mul_ref(&lp("2*t1 - 1", 2))));
}

#[test]
fn reduced_factor_sets_collapse_to_the_same_polynomials() {
    let p5 = ModulePresentation::alexander_matrix(&fig5());
    let p6 = ModulePresentation::alexander_matrix(&fig6());
    let f5: Vec<LaurentPoly> = p5
        .cyclic_decomposition()
        .unwrap()
        .torsion_factors
        .iter()
        .map(|f| f.reduce_to_single_variable().canonical_up_to_unit().unwrap())
        .collect();
    let f6: Vec<LaurentPoly> = p6
        .cyclic_decomposition()
        .unwrap()
        .torsion_factors
        .iter()
        .map(|f| f.reduce_to_single_variable().canonical_up_to_unit().unwrap())
        .collect();
    let mut s5: Vec<String> = f5.iter().map(|f| f.to_string()).collect();
    let mut s6: Vec<String> = f6.iter().map(|f| f.to_string()).collect();
    s5.sort();
    s6.sort();
    assert_eq!(s5, s6);
    let want: Vec<LaurentPoly> = [lp("2*t1 - t1^2", 1), lp("2*t1 - 1", 1)]
        .iter()
        .map(|f| f.canonical_up_to_unit().unwrap())
        .collect();
    for w in want {
        assert!(f5.contains(&w));
    }
}
