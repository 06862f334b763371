//! Alexander-module presentations from diagram data, and their
//! Tietze-style simplification.
//!
//! A presentation has one generator per arc and one relation row per
//! crossing, `(1 - t_{κ(ur)})·over + t_{κ(over)}·ur - ul`, together with
//! the augmentation values `phi(arc) = t_{κ(arc)} - 1`. Every relation
//! row is annihilated by phi, and every simplification step preserves
//! that invariant along with the presented module.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;


use crate::diagram::LinkDiagram;
use crate::laurent::{LaurentPoly, MonomialUnit};
use crate::specialize::{BatteryConfig, SpecializeError, SpecializedModule, Verdict};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PresentationError {
    Shape(String),
    PhiNotAnnihilated { row: usize },
    Capacity { size: usize, max: usize },
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::Shape(msg) => write!(f, "malformed presentation: {msg}"),
            PresentationError::PhiNotAnnihilated { row } => {
                write!(f, "relation row {row} is not annihilated by phi")
            }
            PresentationError::Capacity { size, max } => {
                write!(f, "matrix size {size} exceeds the supported maximum {max}")
            }
        }
    }
}

/// An element of the free module over the current generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleElement {
    pub coeffs: Vec<LaurentPoly>,
}

impl ModuleElement {
    pub fn zero(num_vars: usize, len: usize) -> Self {
        ModuleElement {
            coeffs: vec![LaurentPoly::zero(num_vars); len],
        }
    }

    pub fn basis(num_vars: usize, len: usize, idx: usize) -> Self {
        let mut e = Self::zero(num_vars, len);
        e.coeffs[idx] = LaurentPoly::one(num_vars);
        e
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        ModuleElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> ModuleElement {
        ModuleElement {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// One recorded simplification step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TietzeStep {
    /// Generator eliminated through a relation with a unit coefficient;
    /// it equals the recorded combination of the surviving generators.
    EliminateGenerator {
        generator: String,
        expression: Vec<(String, LaurentPoly)>,
    },
    DropZeroRow { row: usize },
    /// Row removed after being expressed as an explicit combination of
    /// other rows (indices at the time of removal).
    DropRedundantRow {
        row: usize,
        combination: Vec<(usize, LaurentPoly)>,
    },
    /// Unimodular change of generators: `new = definition` over the old
    /// basis, replacing `replaced` (whose coefficient in `definition` is
    /// a unit).
    ChangeGenerator {
        new_label: String,
        replaced: String,
        definition: Vec<(String, LaurentPoly)>,
    },
}

/// Free cyclic decomposition of a presented module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclicDecomposition {
    pub free_rank: usize,
    /// Canonical-up-to-unit forms, in relation row order.
    pub torsion_factors: Vec<LaurentPoly>,
}

/// Diagonal form of a simplified presentation: which generators are
/// free and which carry a single cyclic relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalForm {
    pub free_generators: Vec<String>,
    /// (generator label, canonical factor), in relation row order.
    pub torsion: Vec<(String, LaurentPoly)>,
}

/// Finitely presented module over the Laurent ring, with phi values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModulePresentation {
    num_vars: usize,
    generators: Vec<String>,
    relations: Vec<Vec<LaurentPoly>>,
    phi_values: Vec<LaurentPoly>,
    basis_trace: Vec<TietzeStep>,
}

impl ModulePresentation {
    pub fn new(
        num_vars: usize,
        generators: Vec<String>,
        relations: Vec<Vec<LaurentPoly>>,
        phi_values: Vec<LaurentPoly>,
    ) -> Result<Self, PresentationError> {
        if phi_values.len() != generators.len() {
            return Err(PresentationError::Shape(format!(
                "{} generators but {} phi values",
                generators.len(),
                phi_values.len()
            )));
        }
        for (i, row) in relations.iter().enumerate() {
            if row.len() != generators.len() {
                return Err(PresentationError::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    generators.len()
                )));
            }
        }
        for poly in relations.iter().flatten().chain(phi_values.iter()) {
            if poly.num_vars() != num_vars {
                return Err(PresentationError::Shape(
                    "mixed variable counts".to_string(),
                ));
            }
        }
        let pres = ModulePresentation {
            num_vars,
            generators,
            relations,
            phi_values,
            basis_trace: Vec::new(),
        };
        if let Some(row) = pres.first_unannihilated_row() {
            return Err(PresentationError::PhiNotAnnihilated { row });
        }
        Ok(pres)
    }

    /// One generator per arc with `phi = t_{κ(arc)} - 1`, one relation
    /// per crossing, rows in crossing order.
    pub fn alexander_matrix(d: &LinkDiagram) -> Self {
        let mu = d.num_components();
        let n = d.arc_count();
        let generators: Vec<String> = d.arcs().to_vec();
        let phi_values: Vec<LaurentPoly> = (0..n)
            .map(|a| {
                LaurentPoly::var(mu, d.kappa(a)).sub_ref(&LaurentPoly::one(mu))
            })
            .collect();
        let relations: Vec<Vec<LaurentPoly>> = d
            .crossings()
            .iter()
            .map(|c| {
                let mut row = vec![LaurentPoly::zero(mu); n];
                let one = LaurentPoly::one(mu);
                let t_ur = LaurentPoly::var(mu, d.kappa(c.under_right));
                let t_over = LaurentPoly::var(mu, d.kappa(c.over));
                row[c.over] = row[c.over].add_ref(&one.sub_ref(&t_ur));
                row[c.under_right] = row[c.under_right].add_ref(&t_over);
                row[c.under_left] = row[c.under_left].sub_ref(&one);
                row
            })
            .collect();
        let pres = ModulePresentation {
            num_vars: mu,
            generators,
            relations,
            phi_values,
            basis_trace: Vec::new(),
        };
        debug_assert!(pres.first_unannihilated_row().is_none());
        pres
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Vec<LaurentPoly>] {
        &self.relations
    }

    pub fn phi_values(&self) -> &[LaurentPoly] {
        &self.phi_values
    }

    pub fn basis_trace(&self) -> &[TietzeStep] {
        &self.basis_trace
    }

    /// Linear extension of `phi` to module elements.
    pub fn phi(&self, elem: &ModuleElement) -> LaurentPoly {
        assert_eq!(elem.coeffs.len(), self.generators.len());
        let mut acc = LaurentPoly::zero(self.num_vars);
        for (c, p) in elem.coeffs.iter().zip(&self.phi_values) {
            acc = acc.add_ref(&c.mul_ref(p));
        }
        acc
    }

    /// Index of the first relation row not annihilated by phi, if any.
    pub fn first_unannihilated_row(&self) -> Option<usize> {
        self.relations.iter().position(|row| {
            let mut acc = LaurentPoly::zero(self.num_vars);
            for (c, p) in row.iter().zip(&self.phi_values) {
                acc = acc.add_ref(&c.mul_ref(p));
            }
            !acc.is_zero()
        })
    }

    /// Tietze-style simplification: unit-pivot generator eliminations,
    /// zero and redundant row removal, and unimodular generator changes
    /// that split a common factor out of a row. The result presents an
    /// isomorphic module and extends the basis trace.
    pub fn simplify(&self) -> ModulePresentation {
        let mut st = Simplifier::start(self);
        let split_budget = self.generators.len() + self.relations.len() + 8;
        let mut splits = 0usize;
        loop {
            if st.drop_zero_rows() {
                continue;
            }
            if st.eliminate_generator() {
                continue;
            }
            if st.drop_redundant_row() {
                continue;
            }
            if splits < split_budget && st.split_content_row() {
                splits += 1;
                continue;
            }
            break;
        }
        let out = st.finish(self.num_vars);
        debug_assert!(out.first_unannihilated_row().is_none());
        out
    }

    /// Free-plus-cyclic decomposition, when simplification reaches a
    /// diagonal form: every row supported on a single generator, no
    /// generator hit twice. Empty result means "not in scope", not an
    /// error.
    pub fn cyclic_decomposition(&self) -> Option<CyclicDecomposition> {
        self.simplify().diagonal_form().map(|d| CyclicDecomposition {
            free_rank: d.free_generators.len(),
            torsion_factors: d.torsion.into_iter().map(|(_, f)| f).collect(),
        })
    }

    /// Diagonal reading of an already simplified presentation. Returns
    /// `None` when some row touches several generators or a generator
    /// is hit twice.
    pub fn diagonal_form(&self) -> Option<DiagonalForm> {
        self.diagonal_map().map(|map| {
            let torsion_cols: Vec<usize> = map.iter().map(|(c, _)| *c).collect();
            DiagonalForm {
                free_generators: (0..self.generators.len())
                    .filter(|c| !torsion_cols.contains(c))
                    .map(|c| self.generators[c].clone())
                    .collect(),
                torsion: map
                    .into_iter()
                    .map(|(c, f)| (self.generators[c].clone(), f))
                    .collect(),
            }
        })
    }

    /// For a simplified presentation in diagonal form: relation-row
    /// order list of (generator column, canonical factor).
    fn diagonal_map(&self) -> Option<Vec<(usize, LaurentPoly)>> {
        let mut hit = vec![false; self.generators.len()];
        let mut out = Vec::new();
        for row in &self.relations {
            let support: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
            if support.len() != 1 {
                return None;
            }
            let col = support[0];
            if hit[col] {
                return None;
            }
            hit[col] = true;
            let f = row[col]
                .canonical_up_to_unit()
                .expect("support entry is nonzero");
            if f.is_one() {
                // A unit factor would have been eliminated.
                return None;
            }
            out.push((col, f));
        }
        Some(out)
    }

    /// Generators of the k-th elementary ideal: all (n-k)-minors of the
    /// relation matrix, nonzero, canonical up to units, deduplicated.
    pub fn elementary_ideals(&self, k: usize) -> Result<Vec<LaurentPoly>, PresentationError> {
        const MAX_MINOR_DIM: usize = 12;
        let n = self.generators.len();
        let m = self.relations.len();
        if n > MAX_MINOR_DIM || m > MAX_MINOR_DIM {
            return Err(PresentationError::Capacity {
                size: n.max(m),
                max: MAX_MINOR_DIM,
            });
        }
        if k >= n {
            return Ok(vec![LaurentPoly::one(self.num_vars)]);
        }
        let r = n - k;
        if r > m {
            return Ok(Vec::new());
        }
        let mut memo: BTreeMap<(u32, u32), LaurentPoly> = BTreeMap::new();
        let mut out: Vec<LaurentPoly> = Vec::new();
        for rows in combinations(m, r) {
            for cols in combinations(n, r) {
                let det = self.minor(rows, cols, &mut memo);
                if det.is_zero() {
                    continue;
                }
                let c = det.canonical_up_to_unit().expect("nonzero");
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    fn minor(&self, rows: u32, cols: u32, memo: &mut BTreeMap<(u32, u32), LaurentPoly>) -> LaurentPoly {
        if rows == 0 {
            return LaurentPoly::one(self.num_vars);
        }
        if let Some(hit) = memo.get(&(rows, cols)) {
            return hit.clone();
        }
        let i = rows.trailing_zeros() as usize;
        let rest_rows = rows & (rows - 1);
        let mut acc = LaurentPoly::zero(self.num_vars);
        let mut pos = 0usize;
        for j in 0..32 {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &self.relations[i][j as usize];
            if !entry.is_zero() {
                let sub = self.minor(rest_rows, cols & !(1 << j), memo);
                let term = entry.mul_ref(&sub);
                if pos % 2 == 1 {
                    acc = acc.sub_ref(&term);
                } else {
                    acc = acc.add_ref(&term);
                }
            }
            pos += 1;
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }

    /// Single-variable presentation obtained by `t_i ↦ t`.
    pub fn reduce(&self) -> ModulePresentation {
        let red = |p: &LaurentPoly| p.reduce_to_single_variable();
        ModulePresentation {
            num_vars: 1,
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(|row| row.iter().map(red).collect())
                .collect(),
            phi_values: self.phi_values.iter().map(red).collect(),
            basis_trace: self
                .basis_trace
                .iter()
                .map(|step| match step {
                    TietzeStep::EliminateGenerator { generator, expression } => {
                        TietzeStep::EliminateGenerator {
                            generator: generator.clone(),
                            expression: expression
                                .iter()
                                .map(|(g, p)| (g.clone(), red(p)))
                                .collect(),
                        }
                    }
                    TietzeStep::DropZeroRow { row } => TietzeStep::DropZeroRow { row: *row },
                    TietzeStep::DropRedundantRow { row, combination } => {
                        TietzeStep::DropRedundantRow {
                            row: *row,
                            combination: combination
                                .iter()
                                .map(|(i, p)| (*i, red(p)))
                                .collect(),
                        }
                    }
                    TietzeStep::ChangeGenerator {
                        new_label,
                        replaced,
                        definition,
                    } => TietzeStep::ChangeGenerator {
                        new_label: new_label.clone(),
                        replaced: replaced.clone(),
                        definition: definition.iter().map(|(g, p)| (g.clone(), red(p))).collect(),
                    },
                })
                .collect(),
        }
    }

    /// Carry an element of `self` into `target`, which must extend
    /// `self`'s basis trace (e.g. the output of [`Self::simplify`]).
    pub fn transport_to(
        &self,
        target: &ModulePresentation,
        elem: &ModuleElement,
    ) -> Option<ModuleElement> {
        if elem.coeffs.len() != self.generators.len() {
            return None;
        }
        if target.basis_trace.len() < self.basis_trace.len()
            || target.basis_trace[..self.basis_trace.len()] != self.basis_trace[..]
        {
            return None;
        }
        let mut coords: BTreeMap<String, LaurentPoly> = self
            .generators
            .iter()
            .cloned()
            .zip(elem.coeffs.iter().cloned())
            .collect();
        for step in &target.basis_trace[self.basis_trace.len()..] {
            match step {
                TietzeStep::EliminateGenerator { generator, expression } => {
                    if let Some(c) = coords.remove(generator) {
                        if !c.is_zero() {
                            for (g, p) in expression {
                                let add = c.mul_ref(p);
                                coords
                                    .entry(g.clone())
                                    .and_modify(|v| *v = v.add_ref(&add))
                                    .or_insert(add);
                            }
                        }
                    }
                }
                TietzeStep::ChangeGenerator {
                    new_label,
                    replaced,
                    definition,
                } => {
                    let pivot = coords.remove(replaced).unwrap_or_else(|| {
                        LaurentPoly::zero(self.num_vars)
                    });
                    // old replaced = new - sum of the other definition terms
                    for (g, p) in definition {
                        if g == replaced {
                            continue;
                        }
                        let sub = pivot.mul_ref(p);
                        coords
                            .entry(g.clone())
                            .and_modify(|v| *v = v.sub_ref(&sub))
                            .or_insert_with(|| sub.neg_ref());
                    }
                    coords.insert(new_label.clone(), pivot);
                }
                TietzeStep::DropZeroRow { .. } | TietzeStep::DropRedundantRow { .. } => {}
            }
        }
        let coeffs = target
            .generators
            .iter()
            .map(|g| {
                coords
                    .remove(g)
                    .unwrap_or_else(|| LaurentPoly::zero(self.num_vars))
            })
            .collect::<Vec<_>>();
        if coords.values().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ModuleElement { coeffs })
    }

    /// Exact equality of module elements, decidable when simplification
    /// reaches diagonal form: equal iff the difference vanishes on free
    /// coordinates and each torsion factor divides its coordinate of the
    /// difference. `None` when no diagonal form is reached.
    pub fn element_equal_exact(&self, x: &ModuleElement, y: &ModuleElement) -> Option<bool> {
        let s = self.simplify();
        let map = s.diagonal_map()?;
        let tx = self.transport_to(&s, x)?;
        let ty = self.transport_to(&s, y)?;
        let diff = tx.sub(&ty);
        let mut torsion: BTreeMap<usize, &LaurentPoly> = BTreeMap::new();
        for (col, f) in &map {
            torsion.insert(*col, f);
        }
        for (col, c) in diff.coeffs.iter().enumerate() {
            match torsion.get(&col) {
                Some(f) => {
                    if c.exact_div(f).is_none() {
                        return Some(false);
                    }
                }
                None => {
                    if !c.is_zero() {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    /// Sound inequality oracle on elements through the specialization
    /// battery. `Indistinguishable` never claims equality.
    pub fn element_compare(
        &self,
        x: &ModuleElement,
        y: &ModuleElement,
        config: &BatteryConfig,
    ) -> Result<Verdict, SpecializeError> {
        for member in config.members(self.num_vars)? {
            let m = SpecializedModule::specialize(self, member.prime, &member.assignments)?;
            let ev = |e: &ModuleElement| -> Vec<u64> {
                e.coeffs
                    .iter()
                    .map(|p| {
                        p.evaluate_in_prime_field(member.prime, &member.assignments)
                            .expect("assignments validated")
                    })
                    .collect()
            };
            if !m.equal(&ev(x), &ev(y))? {
                return Ok(Verdict::Distinguished);
            }
        }
        Ok(Verdict::Indistinguishable)
    }
}

fn combinations(n: usize, r: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=(n - left) {
            rec(i + 1, n, left - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, 0, &mut out);
    }
    out
}

/// Working state of the simplification pipeline.
struct Simplifier {
    num_vars: usize,
    generators: Vec<String>,
    rows: Vec<Vec<LaurentPoly>>,
    phi: Vec<LaurentPoly>,
    trace: Vec<TietzeStep>,
    next_label: usize,
}

impl Simplifier {
    fn start(pres: &ModulePresentation) -> Self {
        let mut next_label = 1usize;
        while pres.generators.contains(&format!("x{next_label}")) {
            next_label += 1;
        }
        Simplifier {
            num_vars: pres.num_vars,
            generators: pres.generators.clone(),
            rows: pres.relations.clone(),
            phi: pres.phi_values.clone(),
            trace: pres.basis_trace.clone(),
            next_label,
        }
    }

    fn finish(self, num_vars: usize) -> ModulePresentation {
        ModulePresentation {
            num_vars,
            generators: self.generators,
            relations: self.rows,
            phi_values: self.phi,
            basis_trace: self.trace,
        }
    }

    fn support(row: &[LaurentPoly]) -> Vec<usize> {
        (0..row.len()).filter(|&j| !row[j].is_zero()).collect()
    }

    fn drop_zero_rows(&mut self) -> bool {
        match self.rows.iter().position(|r| r.iter().all(|c| c.is_zero())) {
            Some(i) => {
                self.rows.remove(i);
                self.trace.push(TietzeStep::DropZeroRow { row: i });
                true
            }
            None => false,
        }
    }

    /// Eliminate the generator whose unit-coefficient relation has the
    /// fewest nonzero entries; ties resolved by generator then row order.
    fn eliminate_generator(&mut self) -> bool {
        let mut best: Option<(usize, usize, usize, MonomialUnit)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let count = row.iter().filter(|c| !c.is_zero()).count();
            for (j, entry) in row.iter().enumerate() {
                if let Some(u) = entry.is_unit() {
                    let better = match &best {
                        None => true,
                        Some((bc, bj, bi, _)) => {
                            (count, j, i) < (*bc, *bj, *bi)
                        }
                    };
                    if better {
                        best = Some((count, j, i, u));
                    }
                }
            }
        }
        let (_, j, i, unit) = match best {
            Some(b) => b,
            None => return false,
        };
        let pivot_row = self.rows[i].clone();
        let inv = unit.inverse();
        // generator_j = -u^{-1} * (other entries of the pivot row)
        let expression: Vec<(String, LaurentPoly)> = (0..self.generators.len())
            .filter(|&k| k != j && !pivot_row[k].is_zero())
            .map(|k| {
                (
                    self.generators[k].clone(),
                    pivot_row[k].mul_unit(&inv).neg_ref(),
                )
            })
            .collect();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == i || row[j].is_zero() {
                continue;
            }
            let factor = row[j].mul_unit(&inv);
            for k in 0..row.len() {
                if k == j {
                    continue;
                }
                let sub = factor.mul_ref(&pivot_row[k]);
                row[k] = row[k].sub_ref(&sub);
            }
            row[j] = LaurentPoly::zero(self.num_vars);
        }
        self.rows.remove(i);
        for row in self.rows.iter_mut() {
            row.remove(j);
        }
        let generator = self.generators.remove(j);
        self.phi.remove(j);
        self.trace.push(TietzeStep::EliminateGenerator {
            generator,
            expression,
        });
        true
    }

    /// Remove the first row expressible as an explicit combination of
    /// other rows. Reduction only ever subtracts a row whose support is
    /// contained in the target's, so the support shrinks strictly and
    /// the search is bounded.
    fn drop_redundant_row(&mut self) -> bool {
        for i in 0..self.rows.len() {
            if let Some(combination) = self.reduce_to_zero(i) {
                self.rows.remove(i);
                self.trace
                    .push(TietzeStep::DropRedundantRow { row: i, combination });
                return true;
            }
        }
        false
    }

    fn reduce_to_zero(&self, i: usize) -> Option<Vec<(usize, LaurentPoly)>> {
        let mut r = self.rows[i].clone();
        let mut combo: Vec<(usize, LaurentPoly)> = Vec::new();
        loop {
            let support = Self::support(&r);
            if support.is_empty() {
                return Some(combo);
            }
            let mut progressed = false;
            'search: for (s, other) in self.rows.iter().enumerate() {
                if s == i {
                    continue;
                }
                let s_support = Self::support(other);
                if s_support.is_empty() || !s_support.iter().all(|g| support.contains(g)) {
                    continue;
                }
                for &g in &s_support {
                    if let Some(q) = r[g].exact_div(&other[g]) {
                        for k in 0..r.len() {
                            if !other[k].is_zero() {
                                r[k] = r[k].sub_ref(&q.mul_ref(&other[k]));
                            }
                        }
                        debug_assert!(r[g].is_zero());
                        match combo.iter_mut().find(|(idx, _)| *idx == s) {
                            Some((_, c)) => *c = c.add_ref(&q),
                            None => combo.push((s, q)),
                        }
                        progressed = true;
                        break 'search;
                    }
                }
            }
            if !progressed {
                return None;
            }
        }
    }

    /// Split a common factor out of a multi-generator row by a
    /// unimodular change of generators, turning the row into a single
    /// cyclic relation. Applies when some entry divides the whole row
    /// and the quotient vector has a unit coordinate.
    fn split_content_row(&mut self) -> bool {
        for i in 0..self.rows.len() {
            let support = Self::support(&self.rows[i]);
            if support.len() < 2 {
                continue;
            }
            for &j in &support {
                let divisor = self.rows[i][j].clone();
                let mut quotients: Vec<LaurentPoly> =
                    vec![LaurentPoly::zero(self.num_vars); self.rows[i].len()];
                let mut ok = true;
                for &k in &support {
                    match self.rows[i][k].exact_div(&divisor) {
                        Some(q) => quotients[k] = q,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                // Pick the pivot: integer +-1 coefficients first, then
                // any monomial unit; later generators win ties.
                let mut pivot: Option<(bool, usize, MonomialUnit)> = None;
                for &k in &support {
                    if let Some(u) = quotients[k].is_unit() {
                        let integral = u.exponents.iter().all(|&e| e == 0);
                        let better = match &pivot {
                            None => true,
                            Some((pi, pk, _)) => (integral, k) > (*pi, *pk),
                        };
                        if better {
                            pivot = Some((integral, k, u));
                        }
                    }
                }
                let (_, k_star, unit) = match pivot {
                    Some(p) => p,
                    None => continue,
                };
                self.apply_column_change(i, k_star, &unit, quotients);
                return true;
            }
        }
        false
    }

    fn apply_column_change(
        &mut self,
        _row: usize,
        k_star: usize,
        unit: &MonomialUnit,
        quotients: Vec<LaurentPoly>,
    ) {
        let inv = unit.inverse();
        let definition: Vec<LaurentPoly> = quotients.iter().map(|q| q.mul_unit(&inv)).collect();
        debug_assert!(definition[k_star].is_one());
        let new_label = format!("x{}", self.next_label);
        self.next_label += 1;
        // Rewrite rows in the new basis.
        for row in self.rows.iter_mut() {
            if row[k_star].is_zero() {
                continue;
            }
            let pivot_coeff = row[k_star].clone();
            for k in 0..row.len() {
                if k == k_star || definition[k].is_zero() {
                    continue;
                }
                let sub = pivot_coeff.mul_ref(&definition[k]);
                row[k] = row[k].sub_ref(&sub);
            }
        }
        // phi of the new generator.
        let mut phi_new = LaurentPoly::zero(self.num_vars);
        for (k, def) in definition.iter().enumerate() {
            if !def.is_zero() {
                phi_new = phi_new.add_ref(&def.mul_ref(&self.phi[k]));
            }
        }
        let replaced = self.generators[k_star].clone();
        let def_pairs: Vec<(String, LaurentPoly)> = definition
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| (self.generators[k].clone(), d.clone()))
            .collect();
        self.generators[k_star] = new_label.clone();
        self.phi[k_star] = phi_new;
        self.trace.push(TietzeStep::ChangeGenerator {
            new_label,
            replaced,
            definition: def_pairs,
        });
    }
}
