//! Reidemeister-move invariance: module and quandle invariants must not
//! change along move sequences, and a move followed by its inverse must
//! give back the same diagram up to relabeling.

use alexq_core::diagram::LinkDiagram;
use alexq_core::moves::{
    apply_move, enumerate_sites, random_diagram, random_move_sequence, MoveSite,
};
use alexq_core::presentation::ModulePresentation;
use alexq_core::quandle::{quandle_closure_summary, CLOSURE_CAP};
use alexq_core::specialize::{
    battery_compare, coloring_count, BatteryConfig, SpecializedModule, Verdict,
};

/// Backtracking search for an arc bijection carrying the crossing list
/// of one diagram onto the other's. Independent of the move machinery.
fn isomorphic(a: &LinkDiagram, b: &LinkDiagram) -> bool {
    if a.arc_count() != b.arc_count()
        || a.crossings().len() != b.crossings().len()
        || a.num_components() != b.num_components()
    {
        return false;
    }
    let n = a.arc_count();
    let mut amap: Vec<Option<usize>> = vec![None; n];
    let mut bmap: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; a.crossings().len()];
    fn bind(
        amap: &mut [Option<usize>],
        bmap: &mut [Option<usize>],
        pairs: &[(usize, usize)],
        bound: &mut Vec<(usize, usize)>,
    ) -> bool {
        for &(x, y) in pairs {
            match (amap[x], bmap[y]) {
                (None, None) => {
                    amap[x] = Some(y);
                    bmap[y] = Some(x);
                    bound.push((x, y));
                }
                (Some(yy), Some(xx)) if yy == y && xx == x => {}
                _ => return false,
            }
        }
        true
    }
    fn unbind(amap: &mut [Option<usize>], bmap: &mut [Option<usize>], bound: &[(usize, usize)]) {
        for &(x, y) in bound {
            amap[x] = None;
            bmap[y] = None;
        }
    }
    fn rec(
        a: &LinkDiagram,
        b: &LinkDiagram,
        ci: usize,
        used: &mut [bool],
        amap: &mut [Option<usize>],
        bmap: &mut [Option<usize>],
    ) -> bool {
        if ci == a.crossings().len() {
            return true;
        }
        let ca = a.crossings()[ci];
        for j in 0..b.crossings().len() {
            if used[j] {
                continue;
            }
            let cb = b.crossings()[j];
            let pairs = [
                (ca.over, cb.over),
                (ca.under_right, cb.under_right),
                (ca.under_left, cb.under_left),
            ];
            let mut bound = Vec::new();
            if bind(amap, bmap, &pairs, &mut bound) {
                used[j] = true;
                if rec(a, b, ci + 1, used, amap, bmap) {
                    return true;
                }
                used[j] = false;
            }
            unbind(amap, bmap, &bound);
        }
        false
    }
    rec(a, b, 0, &mut used, &mut amap, &mut bmap)
}

fn fixtures() -> Vec<LinkDiagram> {
    [
        include_str!("../../../fixtures/unknot_r1.lnk"),
        include_str!("../../../fixtures/hopf.lnk"),
        include_str!("../../../fixtures/trefoil.lnk"),
        include_str!("../../../fixtures/unlink2.lnk"),
    ]
    .iter()
    .map(|t| LinkDiagram::parse(t).unwrap())
    .collect()
}

#[test]
fn add_moves_then_their_inverses_relabel_the_diagram() {
    let mut diagrams = fixtures();
    diagrams.push(random_diagram(11, 5, 4));
    for d in &diagrams {
        for site in enumerate_sites(d) {
            match site {
                MoveSite::R1Add { .. } => {
                    let d2 = apply_move(d, &site).unwrap();
                    let kink = d2.crossings().len() - 1;
                    let d3 = apply_move(&d2, &MoveSite::R1Remove { crossing: kink }).unwrap();
                    assert!(isomorphic(&d3, d), "R1 add/remove at {site:?}");
                }
                MoveSite::R2Add { .. } => {
                    let d2 = apply_move(d, &site).unwrap();
                    let m = d2.crossings().len();
                    let d3 = apply_move(
                        &d2,
                        &MoveSite::R2Remove {
                            first: m - 2,
                            second: m - 1,
                        },
                    )
                    .unwrap();
                    assert!(isomorphic(&d3, d), "R2 add/remove at {site:?}");
                }
                _ => {}
            }
        }
    }
}

#[test]
fn r3_forward_then_backward_relabels_the_diagram() {
    // A diagram containing the triangle configuration: the over strand
    // crosses two strands that also cross each other.
    let d = LinkDiagram::parse(
        "arc a1\narc a2\narc a3\narc a4\narc a5\narc a6\n\
         crossing a1 a2 a3\ncrossing a1 a6 a5\ncrossing a3 a5 a4\n",
    )
    .unwrap();
    let mut found = 0;
    for site in enumerate_sites(&d) {
        if let MoveSite::R3Forward { kind, c1, c2, c3 } = site {
            let d2 = apply_move(&d, &site).unwrap();
            assert_eq!(d2.arc_count(), d.arc_count());
            assert_eq!(d2.crossings().len(), d.crossings().len());
            let back = MoveSite::R3Backward { kind, c1, c2, c3 };
            let d3 = apply_move(&d2, &back).unwrap();
            assert!(isomorphic(&d3, &d));
            found += 1;
        }
    }
    assert!(found > 0, "the triangle site must be enumerated");

    // Exact shape of the slid configuration: the middle arc a5 is
    // replaced by a fresh arc; the first crossing is untouched and the
    // others become (a1; fresh, a4) and (a2; a6, fresh).
    let d2 = apply_move(
        &d,
        &MoveSite::R3Forward {
            kind: alexq_core::moves::R3Kind::Standard,
            c1: 0,
            c2: 1,
            c3: 2,
        },
    )
    .unwrap();
    assert!(d2.arc_id("a5").is_none());
    let fresh = d2.arc_id("m1").unwrap();
    let name = |i: usize| d2.arc_name(i);
    let c = d2.crossings();
    assert_eq!((name(c[0].over), name(c[0].under_right), name(c[0].under_left)), ("a1", "a2", "a3"));
    assert_eq!(c[1].over, d2.arc_id("a1").unwrap());
    assert_eq!(c[1].under_right, fresh);
    assert_eq!(c[1].under_left, d2.arc_id("a4").unwrap());
    assert_eq!(c[2].over, d2.arc_id("a2").unwrap());
    assert_eq!(c[2].under_right, d2.arc_id("a6").unwrap());
    assert_eq!(c[2].under_left, fresh);
}

#[test]
fn parse_serialize_round_trip_on_random_diagrams() {
    for seed in 0..20u64 {
        let d = random_diagram(seed, 3 + (seed % 5) as usize, (seed % 6) as usize);
        let again = LinkDiagram::parse(&d.serialize()).unwrap();
        assert_eq!(d, again);
    }
}

#[test]
fn module_and_quandle_invariants_survive_move_sequences() {
    let mut diagrams = fixtures();
    diagrams.push(random_diagram(23, 4, 3));
    let battery = BatteryConfig {
        limit: Some(6),
        ..BatteryConfig::default()
    };
    for (k, d) in diagrams.iter().enumerate() {
        let members = battery.members(d.num_components()).unwrap();
        let before: Vec<_> = members
            .iter()
            .map(|m| observe(d, m.prime, &m.assignments))
            .collect();
        for seed in 0..3u64 {
            let sites = random_move_sequence(seed.wrapping_add(k as u64 * 97), d, 5);
            let mut cur = d.clone();
            for site in &sites {
                cur = apply_move(&cur, site).unwrap();
            }
            for (m, want) in members.iter().zip(&before) {
                let got = observe(&cur, m.prime, &m.assignments);
                assert_eq!(&got, want, "diagram {k} seed {seed} member {m:?}");
            }
        }
    }
}

/// (cokernel dim, coloring exponent, kernel-phi dim, quandle size, orbit count)
fn observe(d: &LinkDiagram, prime: u64, assignments: &[u64]) -> (usize, u32, usize, usize, usize) {
    let pres = ModulePresentation::alexander_matrix(d);
    let m = SpecializedModule::specialize(&pres, prime, assignments).unwrap();
    let col = coloring_count(d, prime, assignments).unwrap();
    let k = m.kernel_phi();
    let q = quandle_closure_summary(&m, CLOSURE_CAP).unwrap();
    (m.coker_dim(), col, k.dim(), q.size, q.orbit_count)
}

#[test]
fn battery_never_distinguishes_move_related_diagrams() {
    for seed in 0..4u64 {
        let d = random_diagram(seed + 40, 5, 4);
        let sites = random_move_sequence(seed, &d, 6);
        let mut cur = d.clone();
        for site in &sites {
            cur = apply_move(&cur, site).unwrap();
        }
        let a = ModulePresentation::alexander_matrix(&d);
        let b = ModulePresentation::alexander_matrix(&cur);
        assert_eq!(
            battery_compare(&a, &b, &BatteryConfig::default()).unwrap(),
            Verdict::Indistinguishable
        );
    }
}
