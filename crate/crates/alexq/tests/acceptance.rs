//! Acceptance suite: one test per criterion, each printing a pass line
//! and enforcing its wall-clock budget.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use alexq_core::diagram::LinkDiagram;
use alexq_core::laurent::LaurentPoly;
use alexq_core::moves::{apply_move, random_diagram, random_move_sequence};
use alexq_core::presentation::{ModuleElement, ModulePresentation};
use alexq_core::quandle::{
    generate_qa_capped, op_tri, quandle_closure_summary, spec_op_tri, spec_op_tri_inv,
    QuandleElement, QuandleError, SpecQuandleElement, CLOSURE_CAP,
};
use alexq_core::specialize::{
    battery_compare, coloring_count, BatteryConfig, SpecializedModule, Verdict,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn fixture(name: &str) -> LinkDiagram {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    LinkDiagram::parse(&text).unwrap()
}

const ALL_FIXTURES: [&str; 10] = [
    "fig5.lnk",
    "fig6.lnk",
    "hopf.lnk",
    "trefoil.lnk",
    "unknot0.lnk",
    "unknot_r1.lnk",
    "unknot_r2.lnk",
    "unknot_r3.lnk",
    "unlink2.lnk",
    "unlink3.lnk",
];

const UNKNOT_FIXTURES: [&str; 4] = [
    "unknot0.lnk",
    "unknot_r1.lnk",
    "unknot_r2.lnk",
    "unknot_r3.lnk",
];

fn lp(s: &str, nv: usize) -> LaurentPoly {
    LaurentPoly::parse(s, nv).unwrap()
}

fn factors_match(found: &[LaurentPoly], wanted: &[LaurentPoly]) -> bool {
    if found.len() != wanted.len() {
        return false;
    }
    let mut used = vec![false; wanted.len()];
    'outer: for f in found {
        for (i, w) in wanted.iter().enumerate() {
            if !used[i] && f.eq_up_to_unit(w) {
                used[i] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn budget(start: Instant, limit: Duration, label: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= limit,
        "{label} exceeded its budget: {elapsed:?} > {limit:?}"
    );
}

#[test]
fn criterion_01_fig5_decomposition() {
    let start = Instant::now();
    let d = fixture("fig5.lnk");
    let dec = ModulePresentation::alexander_matrix(&d)
        .cyclic_decomposition()
        .expect("fig5 module decomposes");
    assert_eq!(dec.free_rank, 2);
    assert!(factors_match(
        &dec.torsion_factors,
        &[lp("2*t1 - t1^2", 2), lp("2*t1 - 1", 2)],
    ));
    budget(start, Duration::from_secs(1), "criterion 1");
    println!("acceptance criterion 1 (fig5 decomposition): PASS");
}

#[test]
fn criterion_02_fig6_decomposition() {
    let start = Instant::now();
    let d = fixture("fig6.lnk");
    let dec = ModulePresentation::alexander_matrix(&d)
        .cyclic_decomposition()
        .expect("fig6 module decomposes");
    assert_eq!(dec.free_rank, 2);
    assert!(factors_match(
        &dec.torsion_factors,
        &[lp("t1 + t2 - t1*t2", 2), lp("t1 + t2 - 1", 2)],
    ));
    budget(start, Duration::from_secs(1), "criterion 2");
    println!("acceptance criterion 2 (fig6 decomposition): PASS");
}

#[test]
fn criterion_03_reduced_collapse_and_full_separation() {
    let f5 = ModulePresentation::alexander_matrix(&fixture("fig5.lnk"))
        .cyclic_decomposition()
        .unwrap()
        .torsion_factors;
    let f6 = ModulePresentation::alexander_matrix(&fixture("fig6.lnk"))
        .cyclic_decomposition()
        .unwrap()
        .torsion_factors;
    // Substituting t_i -> t collapses both factor sets to the same one.
    let red = |fs: &[LaurentPoly]| -> Vec<LaurentPoly> {
        let mut out: Vec<LaurentPoly> = fs
            .iter()
            .map(|f| {
                f.reduce_to_single_variable()
                    .canonical_up_to_unit()
                    .unwrap()
            })
            .collect();
        out.sort_by_key(|f| f.to_string());
        out
    };
    let r5 = red(&f5);
    let r6 = red(&f6);
    assert_eq!(r5, r6);
    assert!(factors_match(&r5, &[lp("2*t1 - t1^2", 1), lp("2*t1 - 1", 1)]));
    // The full two-variable factor sets differ under both component
    // permutations.
    let swap = [
        alexq_core::laurent::MonomialUnit::var(2, 1),
        alexq_core::laurent::MonomialUnit::var(2, 0),
    ];
    let f6_swapped: Vec<LaurentPoly> = f6
        .iter()
        .map(|f| f.substitute_monomials(&swap).unwrap())
        .collect();
    assert!(!factors_match(&f5, &f6));
    assert!(!factors_match(&f5, &f6_swapped));
    println!("acceptance criterion 3 (reduced collapse, full separation): PASS");
}

#[test]
fn criterion_04_left_distributivity_failure_identity() {
    let d = fixture("unlink3.lnk");
    let p = ModulePresentation::alexander_matrix(&d);
    let a: Vec<QuandleElement> = (0..3).map(|i| QuandleElement::arc(&p, i)).collect();

    // a1 ▷ (a2 ▷ a3) = t2 a1 - (t1-1)t3 a2 + (t1-1)(t2-1) a3
    let lhs = op_tri(&a[0], &op_tri(&a[1], &a[2]));
    assert_eq!(lhs.elem.coeffs[0], lp("t2", 3));
    assert_eq!(
        lhs.elem.coeffs[1],
        lp("t1 - 1", 3).mul_ref(&lp("t3", 3)).neg_ref()
    );
    assert_eq!(
        lhs.elem.coeffs[2],
        lp("t1 - 1", 3).mul_ref(&lp("t2 - 1", 3))
    );

    // (a1 ▷ a2) ▷ (a1 ▷ a3) = (t1t2 - t1t3 + t3) a1 - t1(t1-1) a2 + (t1-1)^2 a3
    let rhs = op_tri(&op_tri(&a[0], &a[1]), &op_tri(&a[0], &a[2]));
    assert_eq!(rhs.elem.coeffs[0], lp("t1*t2 - t1*t3 + t3", 3));
    assert_eq!(
        rhs.elem.coeffs[1],
        lp("t1", 3).mul_ref(&lp("t1 - 1", 3)).neg_ref()
    );
    assert_eq!(
        rhs.elem.coeffs[2],
        lp("t1 - 1", 3).mul_ref(&lp("t1 - 1", 3))
    );

    assert!(!lhs.elem.sub(&rhs.elem).is_zero());
    println!("acceptance criterion 4 (exact left-distributivity failure): PASS");
}

#[test]
fn criterion_05_quandle_axiom_suite() {
    let start = Instant::now();
    // At least 10 random specialized modules.
    let mut modules: Vec<SpecializedModule> = Vec::new();
    let mut seed = 500u64;
    while modules.len() < 12 {
        seed += 1;
        let d = random_diagram(seed, 4 + (seed % 4) as usize, 3 + (seed % 4) as usize);
        let pres = ModulePresentation::alexander_matrix(&d);
        let members = BatteryConfig::default()
            .members(d.num_components())
            .unwrap();
        let member = &members[(seed % members.len() as u64) as usize];
        let m = SpecializedModule::specialize(&pres, member.prime, &member.assignments).unwrap();
        if m.coker_dim() > 0 {
            modules.push(m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut failures = 0usize;
    for step in 0..1200usize {
        let m = &modules[step % modules.len()];
        let p = m.prime();
        let rand_elem = |rng: &mut ChaCha8Rng| -> SpecQuandleElement {
            let coords: Vec<u64> = (0..m.coker_dim()).map(|_| rng.gen_range(0..p)).collect();
            SpecQuandleElement::of_coords(m, coords)
        };
        let x = rand_elem(&mut rng);
        let y = rand_elem(&mut rng);
        let z = rand_elem(&mut rng);
        // Q1 on every element
        if spec_op_tri(p, &x, &x).coords != x.coords {
            failures += 1;
        }
        // Q3 on every element
        let lhs = spec_op_tri(p, &spec_op_tri(p, &x, &y), &z);
        let rhs = spec_op_tri(p, &spec_op_tri(p, &x, &z), &spec_op_tri(p, &y, &z));
        if lhs.coords != rhs.coords {
            failures += 1;
        }
        // phi preservation, always
        if spec_op_tri(p, &x, &y).phi != x.phi {
            failures += 1;
        }
        // Q2 whenever the right operand is in U
        if y.in_u(p) {
            let r1 = spec_op_tri_inv(p, &spec_op_tri(p, &x, &y), &y).unwrap();
            let r2 = spec_op_tri(p, &spec_op_tri_inv(p, &x, &y).unwrap(), &y);
            if r1.coords != x.coords || r2.coords != x.coords {
                failures += 1;
            }
        } else if !matches!(
            spec_op_tri_inv(p, &x, &y),
            Err(QuandleError::NotInvertible)
        ) {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "quandle axiom failures detected");
    budget(start, Duration::from_secs(10), "criterion 5");
    println!("acceptance criterion 5 (quandle axiom suite, 1200 triples x 12 modules): PASS");
}

/// Invariants observed by one battery member on one diagram.
fn observe(
    pres: &ModulePresentation,
    d: &LinkDiagram,
    prime: u64,
    assignments: &[u64],
) -> (usize, u32, usize, usize) {
    let m = SpecializedModule::specialize(pres, prime, assignments).unwrap();
    let exponent = coloring_count(d, prime, assignments).unwrap();
    let q = quandle_closure_summary(&m, CLOSURE_CAP).unwrap();
    (m.coker_dim(), exponent, q.size, q.orbit_count)
}

#[test]
fn criterion_06_reidemeister_invariance() {
    let start = Instant::now();
    let config = BatteryConfig::default();
    for name in ALL_FIXTURES {
        let d = fixture(name);
        let pres = ModulePresentation::alexander_matrix(&d);
        let members = config.members(d.num_components()).unwrap();
        let before: Vec<_> = members
            .iter()
            .map(|m| observe(&pres, &d, m.prime, &m.assignments))
            .collect();
        for trial in 0..50u64 {
            let length = 1 + (trial as usize % 8);
            let sites = random_move_sequence(trial.wrapping_mul(0x9e37_79b9), &d, length);
            let mut cur = d.clone();
            for site in &sites {
                cur = apply_move(&cur, site).unwrap();
            }
            let cur_pres = ModulePresentation::alexander_matrix(&cur);
            for (m, want) in members.iter().zip(&before) {
                let got = observe(&cur_pres, &cur, m.prime, &m.assignments);
                assert_eq!(
                    &got, want,
                    "{name} trial {trial} prime {} {:?}",
                    m.prime, m.assignments
                );
            }
        }
    }
    budget(start, Duration::from_secs(60), "criterion 6");
    println!(
        "acceptance criterion 6 (move invariance, 10 fixtures x 50 sequences x 16 members): PASS"
    );
}

#[test]
fn criterion_07_orbit_counts_match_component_counts() {
    let config = BatteryConfig::default();
    for name in ALL_FIXTURES {
        let d = fixture(name);
        let pres = ModulePresentation::alexander_matrix(&d);
        for m in config.members(d.num_components()).unwrap() {
            let sm = SpecializedModule::specialize(&pres, m.prime, &m.assignments).unwrap();
            let q = quandle_closure_summary(&sm, CLOSURE_CAP).unwrap();
            assert_eq!(
                q.orbit_count,
                d.num_components(),
                "{name} prime {} {:?}",
                m.prime,
                m.assignments
            );
        }
    }
    println!("acceptance criterion 7 (orbit count equals component count): PASS");
}

#[test]
fn criterion_08_unknots_have_singleton_quandles() {
    let config = BatteryConfig::default();
    for name in UNKNOT_FIXTURES {
        let d = fixture(name);
        let pres = ModulePresentation::alexander_matrix(&d);
        for m in config.members(1).unwrap() {
            let sm = SpecializedModule::specialize(&pres, m.prime, &m.assignments).unwrap();
            let q = quandle_closure_summary(&sm, CLOSURE_CAP).unwrap();
            assert_eq!(q.size, 1, "{name} prime {} {:?}", m.prime, m.assignments);
        }
    }
    println!("acceptance criterion 8 (unknot quandles are singletons): PASS");
}

#[test]
fn criterion_09_quandle_presentation_consistency() {
    let start = Instant::now();
    let config = BatteryConfig::default();
    let mut checked = 0usize;
    for name in ALL_FIXTURES {
        let d = fixture(name);
        let pres = ModulePresentation::alexander_matrix(&d);
        for m in config.members(d.num_components()).unwrap() {
            let sm = SpecializedModule::specialize(&pres, m.prime, &m.assignments).unwrap();
            let q = match generate_qa_capped(&sm, 200) {
                Ok(q) => q,
                Err(QuandleError::Capacity { .. }) => continue,
                Err(e) => panic!("{name}: {e}"),
            };
            let qp = q.quandle_presentation().unwrap();
            assert_eq!(
                qp.coker_dim(),
                sm.coker_dim(),
                "{name} prime {} {:?}",
                m.prime,
                m.assignments
            );
            checked += 1;
        }
    }
    assert!(checked >= 20, "expected many in-cap quandles, got {checked}");
    budget(start, Duration::from_secs(30), "criterion 9");
    println!("acceptance criterion 9 (quandle presentation dimensions, {checked} cases): PASS");
}

#[test]
fn criterion_10_distinguishing_power() {
    let f5 = ModulePresentation::alexander_matrix(&fixture("fig5.lnk"));
    let f6 = ModulePresentation::alexander_matrix(&fixture("fig6.lnk"));
    let config = BatteryConfig::default();
    assert_eq!(
        battery_compare(&f5, &f6, &config).unwrap(),
        Verdict::Distinguished
    );
    assert_eq!(
        battery_compare(&f5.reduce(), &f6.reduce(), &config).unwrap(),
        Verdict::Indistinguishable
    );
    println!("acceptance criterion 10 (full modules distinguished, reduced ones not): PASS");
}

/// The coloring exponent agrees with the cokernel dimension computed
/// from the full specialized matrix, for every fixture and member.
#[test]
fn coloring_exponent_cross_check() {
    let config = BatteryConfig::default();
    for name in ALL_FIXTURES {
        let d = fixture(name);
        let pres = ModulePresentation::alexander_matrix(&d);
        for m in config.members(d.num_components()).unwrap() {
            let sm = SpecializedModule::specialize(&pres, m.prime, &m.assignments).unwrap();
            let exp = coloring_count(&d, m.prime, &m.assignments).unwrap();
            assert_eq!(exp as usize, sm.coker_dim(), "{name}");
        }
    }
}

/// Word evaluation lands in the class dictated by the crossing
/// relations.
#[test]
fn word_interpretation_respects_relations() {
    let d = fixture("fig5.lnk");
    let pres = ModulePresentation::alexander_matrix(&d);
    let m = SpecializedModule::specialize(&pres, 5, &[2, 3]).unwrap();
    for c in d.crossings() {
        let w = alexq_core::quandle::QuandleWord::parse(&format!(
            "({} > {})",
            d.arc_name(c.under_right),
            d.arc_name(c.over)
        ))
        .unwrap();
        let v = w.eval(&pres).unwrap();
        let ev: Vec<u64> = v
            .coeffs
            .iter()
            .map(|p| p.evaluate_in_prime_field(5, &[2, 3]).unwrap())
            .collect();
        let ul = ModuleElement::basis(2, d.arc_count(), c.under_left);
        let ul_ev: Vec<u64> = ul
            .coeffs
            .iter()
            .map(|p| p.evaluate_in_prime_field(5, &[2, 3]).unwrap())
            .collect();
        assert!(m.equal(&ev, &ul_ev).unwrap());
    }
}
