//! Reidemeister move generators for the invariance test harness.
//!
//! Moves act on the combinatorial crossing data. Kink and poke moves may
//! transfer one existing under-passage of the moved strand onto the
//! freshly created arc, which is what the move does to a closed strand
//! whose two under-slots are already occupied.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Crossing, DiagramError, LinkDiagram};

/// Which under-slot of the new kink crossing the fresh arc occupies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KinkSide {
    Right,
    Left,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UnderSide {
    Right,
    Left,
}

/// One under-arc occurrence inside a crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct UnderSlot {
    pub crossing: usize,
    pub side: UnderSide,
}

/// Handedness of a triangle-move site.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum R3Kind {
    Standard,
    Mirror,
}

/// A move site, referring to arcs and crossings of one concrete diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MoveSite {
    R1Add {
        arc: usize,
        side: KinkSide,
        transfer: Option<UnderSlot>,
    },
    R1Remove {
        crossing: usize,
    },
    R2Add {
        over: usize,
        under: usize,
        transfer: Option<UnderSlot>,
    },
    R2Remove {
        first: usize,
        second: usize,
    },
    R3Forward {
        kind: R3Kind,
        c1: usize,
        c2: usize,
        c3: usize,
    },
    R3Backward {
        kind: R3Kind,
        c1: usize,
        c2: usize,
        c3: usize,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveError {
    pub reason: String,
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "move not applicable: {}", self.reason)
    }
}

fn inapplicable(reason: &str) -> MoveError {
    MoveError {
        reason: reason.to_string(),
    }
}

/// Mutable name-level view of a diagram used while performing surgery.
struct Surgery {
    arcs: Vec<String>,
    components: BTreeMap<String, usize>, // 1-based
    crossings: Vec<[String; 3]>,
}

impl Surgery {
    fn of(d: &LinkDiagram) -> Self {
        let arcs: Vec<String> = d.arcs().to_vec();
        let components = arcs
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), d.kappa(i) + 1))
            .collect();
        let crossings = d
            .crossings()
            .iter()
            .map(|c| {
                [
                    arcs[c.over].clone(),
                    arcs[c.under_right].clone(),
                    arcs[c.under_left].clone(),
                ]
            })
            .collect();
        Surgery {
            arcs,
            components,
            crossings,
        }
    }

    fn fresh_arc(&mut self, component: usize) -> String {
        let mut k = 1usize;
        loop {
            let name = format!("m{k}");
            if !self.arcs.contains(&name) {
                self.arcs.push(name.clone());
                self.components.insert(name.clone(), component);
                return name;
            }
            k += 1;
        }
    }

    fn remove_arc(&mut self, name: &str) {
        self.arcs.retain(|a| a != name);
        self.components.remove(name);
    }

    /// Rename every occurrence of `from` to `to` in the crossing list.
    fn rename(&mut self, from: &str, to: &str) {
        for c in self.crossings.iter_mut() {
            for slot in c.iter_mut() {
                if slot == from {
                    *slot = to.to_string();
                }
            }
        }
    }

    fn finish(self, original: &LinkDiagram) -> Result<LinkDiagram, MoveError> {
        let out = LinkDiagram::from_parts(self.arcs, self.crossings, &self.components)
            .map_err(|e: DiagramError| inapplicable(&format!("result invalid: {e}")))?;
        if out.num_components() != original.num_components() {
            return Err(inapplicable("component count changed"));
        }
        Ok(out)
    }
}

fn transfer_slot(s: &mut Surgery, d: &LinkDiagram, arc: usize, slot: UnderSlot, to: &str) -> Result<(), MoveError> {
    let c = s
        .crossings
        .get_mut(slot.crossing)
        .ok_or_else(|| inapplicable("transfer crossing out of range"))?;
    let idx = match slot.side {
        UnderSide::Right => 1,
        UnderSide::Left => 2,
    };
    if c[idx] != d.arcs()[arc] {
        return Err(inapplicable("transfer slot does not hold the moved arc"));
    }
    c[idx] = to.to_string();
    Ok(())
}

/// Apply a move, returning the new diagram. The input is unchanged.
pub fn apply_move(d: &LinkDiagram, site: &MoveSite) -> Result<LinkDiagram, MoveError> {
    match site {
        MoveSite::R1Add { arc, side, transfer } => {
            if *arc >= d.arc_count() {
                return Err(inapplicable("arc out of range"));
            }
            let mut s = Surgery::of(d);
            let old = d.arcs()[*arc].clone();
            let fresh = s.fresh_arc(d.kappa(*arc) + 1);
            if let Some(slot) = transfer {
                transfer_slot(&mut s, d, *arc, *slot, &fresh)?;
            }
            let crossing = match side {
                KinkSide::Right => [old.clone(), fresh.clone(), old.clone()],
                KinkSide::Left => [old.clone(), old.clone(), fresh.clone()],
            };
            s.crossings.push(crossing);
            s.finish(d)
        }
        MoveSite::R1Remove { crossing } => {
            let c = *d
                .crossings()
                .get(*crossing)
                .ok_or_else(|| inapplicable("crossing out of range"))?;
            let (keep, gone) = if c.over == c.under_left {
                (c.over, c.under_right)
            } else if c.over == c.under_right {
                (c.over, c.under_left)
            } else {
                return Err(inapplicable("crossing is not a kink"));
            };
            let mut s = Surgery::of(d);
            s.crossings.remove(*crossing);
            if keep != gone {
                let keep_name = d.arcs()[keep].clone();
                let gone_name = d.arcs()[gone].clone();
                s.rename(&gone_name, &keep_name);
                s.remove_arc(&gone_name);
            }
            s.finish(d)
        }
        MoveSite::R2Add {
            over,
            under,
            transfer,
        } => {
            if *over >= d.arc_count() || *under >= d.arc_count() {
                return Err(inapplicable("arc out of range"));
            }
            let mut s = Surgery::of(d);
            let over_name = d.arcs()[*over].clone();
            let under_name = d.arcs()[*under].clone();
            let comp = d.kappa(*under) + 1;
            let mid = s.fresh_arc(comp);
            let cont = s.fresh_arc(comp);
            if let Some(slot) = transfer {
                transfer_slot(&mut s, d, *under, *slot, &cont)?;
            }
            s.crossings
                .push([over_name.clone(), under_name, mid.clone()]);
            s.crossings.push([over_name, cont, mid]);
            s.finish(d)
        }
        MoveSite::R2Remove { first, second } => {
            if first == second {
                return Err(inapplicable("need two distinct crossings"));
            }
            let ca = *d
                .crossings()
                .get(*first)
                .ok_or_else(|| inapplicable("crossing out of range"))?;
            let cb = *d
                .crossings()
                .get(*second)
                .ok_or_else(|| inapplicable("crossing out of range"))?;
            if ca.over != cb.over || ca.under_left != cb.under_left {
                return Err(inapplicable("crossings do not share over-arc and middle arc"));
            }
            let mid = ca.under_left;
            let x = ca.under_right;
            let y = cb.under_right;
            if mid == x || mid == y || mid == ca.over {
                return Err(inapplicable("middle arc entangled with the strands"));
            }
            if arc_is_over(d, mid) {
                return Err(inapplicable("middle arc passes over elsewhere"));
            }
            if d.under_count(mid) != 2 {
                return Err(inapplicable("middle arc passes under elsewhere"));
            }
            let mut s = Surgery::of(d);
            let (hi, lo) = if first > second {
                (*first, *second)
            } else {
                (*second, *first)
            };
            s.crossings.remove(hi);
            s.crossings.remove(lo);
            let mid_name = d.arcs()[mid].clone();
            s.remove_arc(&mid_name);
            if x != y {
                let x_name = d.arcs()[x].clone();
                let y_name = d.arcs()[y].clone();
                s.rename(&y_name, &x_name);
                s.remove_arc(&y_name);
            }
            s.finish(d)
        }
        MoveSite::R3Forward { kind, c1, c2, c3 } => {
            let pat = match_r3_forward(d, *kind, *c1, *c2, *c3)?;
            let mut s = Surgery::of(d);
            let fresh = s.fresh_arc(d.kappa(pat.gone) + 1);
            let (a, b, dd, f) = (
                d.arcs()[pat.a].clone(),
                d.arcs()[pat.b].clone(),
                d.arcs()[pat.d].clone(),
                d.arcs()[pat.f].clone(),
            );
            match kind {
                R3Kind::Standard => {
                    s.crossings[*c2] = [a, fresh.clone(), dd];
                    s.crossings[*c3] = [b, f, fresh.clone()];
                }
                R3Kind::Mirror => {
                    s.crossings[*c2] = [a, dd, fresh.clone()];
                    s.crossings[*c3] = [b, fresh.clone(), f];
                }
            }
            let gone_name = d.arcs()[pat.gone].clone();
            s.remove_arc(&gone_name);
            s.finish(d)
        }
        MoveSite::R3Backward { kind, c1, c2, c3 } => {
            let pat = match_r3_backward(d, *kind, *c1, *c2, *c3)?;
            let mut s = Surgery::of(d);
            let fresh = s.fresh_arc(d.kappa(pat.gone) + 1);
            let (a, cc, dd, f) = (
                d.arcs()[pat.a].clone(),
                d.arcs()[pat.c].clone(),
                d.arcs()[pat.d].clone(),
                d.arcs()[pat.f].clone(),
            );
            match kind {
                R3Kind::Standard => {
                    s.crossings[*c2] = [a, f, fresh.clone()];
                    s.crossings[*c3] = [cc, fresh.clone(), dd];
                }
                R3Kind::Mirror => {
                    s.crossings[*c2] = [a, fresh.clone(), f];
                    s.crossings[*c3] = [cc, dd, fresh.clone()];
                }
            }
            let gone_name = d.arcs()[pat.gone].clone();
            s.remove_arc(&gone_name);
            s.finish(d)
        }
    }
}

struct R3Pattern {
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    f: usize,
    /// The middle arc that the move replaces with a fresh one.
    gone: usize,
}

fn arc_is_over(d: &LinkDiagram, arc: usize) -> bool {
    d.crossings().iter().any(|c| c.over == arc)
}

/// The replaced middle arc must be confined to the move site.
fn middle_arc_confined(d: &LinkDiagram, arc: usize, others: &[usize]) -> bool {
    !arc_is_over(d, arc) && d.under_count(arc) == 2 && !others.contains(&arc)
}

fn get3(d: &LinkDiagram, c1: usize, c2: usize, c3: usize) -> Result<(Crossing, Crossing, Crossing), MoveError> {
    if c1 == c2 || c1 == c3 || c2 == c3 {
        return Err(inapplicable("need three distinct crossings"));
    }
    let g = |i: usize| {
        d.crossings()
            .get(i)
            .copied()
            .ok_or_else(|| inapplicable("crossing out of range"))
    };
    Ok((g(c1)?, g(c2)?, g(c3)?))
}

fn match_r3_forward(
    d: &LinkDiagram,
    kind: R3Kind,
    c1: usize,
    c2: usize,
    c3: usize,
) -> Result<R3Pattern, MoveError> {
    let (x1, x2, x3) = get3(d, c1, c2, c3)?;
    let pat = match kind {
        R3Kind::Standard => {
            // (A; B, C), (A; F, E), (C; E, D)
            let (a, b, c) = (x1.over, x1.under_right, x1.under_left);
            if x2.over != a || x3.over != c || x3.under_right != x2.under_left {
                return Err(inapplicable("crossings do not form a triangle site"));
            }
            R3Pattern {
                a,
                b,
                c,
                d: x3.under_left,
                f: x2.under_right,
                gone: x2.under_left,
            }
        }
        R3Kind::Mirror => {
            // (A; C, B), (A; E, F), (C; D, E)
            let (a, c, b) = (x1.over, x1.under_right, x1.under_left);
            if x2.over != a || x3.over != c || x3.under_left != x2.under_right {
                return Err(inapplicable("crossings do not form a triangle site"));
            }
            R3Pattern {
                a,
                b,
                c,
                d: x3.under_right,
                f: x2.under_left,
                gone: x2.under_right,
            }
        }
    };
    if !middle_arc_confined(d, pat.gone, &[pat.a, pat.b, pat.c, pat.d, pat.f]) {
        return Err(inapplicable("middle arc is not confined to the site"));
    }
    Ok(pat)
}

fn match_r3_backward(
    d: &LinkDiagram,
    kind: R3Kind,
    c1: usize,
    c2: usize,
    c3: usize,
) -> Result<R3Pattern, MoveError> {
    let (x1, x2, x3) = get3(d, c1, c2, c3)?;
    let pat = match kind {
        R3Kind::Standard => {
            // (A; B, C), (A; G, D), (B; F, G)
            let (a, b, c) = (x1.over, x1.under_right, x1.under_left);
            if x2.over != a || x3.over != b || x3.under_left != x2.under_right {
                return Err(inapplicable("crossings do not form a triangle site"));
            }
            R3Pattern {
                a,
                b,
                c,
                d: x2.under_left,
                f: x3.under_right,
                gone: x2.under_right,
            }
        }
        R3Kind::Mirror => {
            // (A; C, B), (A; D, G), (B; G, F)
            let (a, c, b) = (x1.over, x1.under_right, x1.under_left);
            if x2.over != a || x3.over != b || x3.under_right != x2.under_left {
                return Err(inapplicable("crossings do not form a triangle site"));
            }
            R3Pattern {
                a,
                b,
                c,
                d: x2.under_right,
                f: x3.under_left,
                gone: x2.under_left,
            }
        }
    };
    if !middle_arc_confined(d, pat.gone, &[pat.a, pat.b, pat.c, pat.d, pat.f]) {
        return Err(inapplicable("middle arc is not confined to the site"));
    }
    Ok(pat)
}

/// All under-slot occurrences of an arc.
fn under_slots(d: &LinkDiagram, arc: usize) -> Vec<UnderSlot> {
    let mut out = Vec::new();
    for (i, c) in d.crossings().iter().enumerate() {
        if c.under_right == arc {
            out.push(UnderSlot {
                crossing: i,
                side: UnderSide::Right,
            });
        }
        if c.under_left == arc {
            out.push(UnderSlot {
                crossing: i,
                side: UnderSide::Left,
            });
        }
    }
    out
}

/// Enumerate every applicable move site, in a fixed deterministic order.
pub fn enumerate_sites(d: &LinkDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let n = d.arc_count();
    for arc in 0..n {
        let slots = under_slots(d, arc);
        for side in [KinkSide::Right, KinkSide::Left] {
            if slots.len() <= 1 {
                out.push(MoveSite::R1Add {
                    arc,
                    side,
                    transfer: None,
                });
            }
            if !slots.is_empty() {
                for &slot in &slots {
                    out.push(MoveSite::R1Add {
                        arc,
                        side,
                        transfer: Some(slot),
                    });
                }
            }
        }
    }
    for (i, c) in d.crossings().iter().enumerate() {
        if c.over == c.under_left || c.over == c.under_right {
            out.push(MoveSite::R1Remove { crossing: i });
        }
    }
    for over in 0..n {
        for under in 0..n {
            let slots = under_slots(d, under);
            if slots.len() <= 1 {
                out.push(MoveSite::R2Add {
                    over,
                    under,
                    transfer: None,
                });
            }
            for &slot in &slots {
                out.push(MoveSite::R2Add {
                    over,
                    under,
                    transfer: Some(slot),
                });
            }
        }
    }
    let m = d.crossings().len();
    for first in 0..m {
        for second in 0..m {
            if first == second {
                continue;
            }
            let site = MoveSite::R2Remove { first, second };
            let ca = d.crossings()[first];
            let cb = d.crossings()[second];
            if ca.over == cb.over && ca.under_left == cb.under_left {
                let mid = ca.under_left;
                if mid != ca.under_right
                    && mid != cb.under_right
                    && mid != ca.over
                    && middle_arc_confined(d, mid, &[])
                {
                    out.push(site);
                }
            }
        }
    }
    for kind in [R3Kind::Standard, R3Kind::Mirror] {
        for c1 in 0..m {
            for c2 in 0..m {
                for c3 in 0..m {
                    if match_r3_forward(d, kind, c1, c2, c3).is_ok() {
                        out.push(MoveSite::R3Forward { kind, c1, c2, c3 });
                    }
                    if match_r3_backward(d, kind, c1, c2, c3).is_ok() {
                        out.push(MoveSite::R3Backward { kind, c1, c2, c3 });
                    }
                }
            }
        }
    }
    out
}

/// Apply a sequence of sites, threading the diagram through.
pub fn apply_all(d: &LinkDiagram, sites: &[MoveSite]) -> Result<LinkDiagram, MoveError> {
    let mut cur = d.clone();
    for site in sites {
        cur = apply_move(&cur, site)?;
    }
    Ok(cur)
}

/// Deterministic pseudo-random diagram: `num_arcs` arcs and up to
/// `num_crossings` crossings, always valid.
pub fn random_diagram(seed: u64, num_arcs: usize, num_crossings: usize) -> LinkDiagram {
    let n = num_arcs.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let mut under_count = vec![0usize; n];
    let mut crossings = Vec::new();
    for _ in 0..num_crossings {
        let candidates = |counts: &[usize]| -> Vec<usize> {
            (0..n).filter(|&i| counts[i] <= 1).collect()
        };
        let urs = candidates(&under_count);
        if urs.is_empty() {
            break;
        }
        let ur = urs[rng.gen_range(0..urs.len())];
        under_count[ur] += 1;
        let uls = candidates(&under_count);
        if uls.is_empty() {
            under_count[ur] -= 1;
            break;
        }
        let ul = uls[rng.gen_range(0..uls.len())];
        under_count[ul] += 1;
        let over = rng.gen_range(0..n);
        crossings.push([arcs[over].clone(), arcs[ur].clone(), arcs[ul].clone()]);
    }
    LinkDiagram::from_parts(arcs, crossings, &BTreeMap::new())
        .expect("construction respects the validity rules")
}

/// Deterministic pseudo-random move sequence of the requested length
/// (shorter only if some diagram admits no applicable site).
pub fn random_move_sequence(seed: u64, d: &LinkDiagram, length: usize) -> Vec<MoveSite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut out = Vec::new();
    for _ in 0..length {
        let sites = enumerate_sites(&cur);
        if sites.is_empty() {
            break;
        }
        let site = sites[rng.gen_range(0..sites.len())].clone();
        cur = apply_move(&cur, &site).expect("enumerated sites are applicable");
        out.push(site);
    }
    out
}
