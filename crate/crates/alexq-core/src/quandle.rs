//! Quandle operations carried by the Alexander module.
//!
//! `x ▷ y = (phi(y)+1)x - phi(x)y` satisfies the idempotence and
//! right-distributivity axioms on the whole module; restricted to the
//! elements whose `phi + 1` is a unit it is invertible, with
//! `x ▷⁻¹ y = (phi(y)+1)^{-1}(x + phi(x)y)`. The subquandle generated by
//! the arc classes is materialized under finite specializations, where
//! closure terminates.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::laurent::LaurentPoly;
use crate::presentation::{ModuleElement, ModulePresentation};
use crate::specialize::{add_mod, inv_mod, mul_mod, sub_mod, SpecializedModule};

/// Hard cap on closure enumeration.
pub const CLOSURE_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuandleError {
    /// `phi(y) + 1` is not invertible, so `▷⁻¹ y` is undefined.
    NotInvertible,
    Capacity { size: usize },
    UnknownArc { name: String },
    Parse { pos: usize, msg: String },
    /// phi values do not match `u_k - 1` for a unique component.
    ComponentRecovery,
    Internal(&'static str),
}

impl fmt::Display for QuandleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuandleError::NotInvertible => {
                write!(f, "right operand is outside U: phi + 1 is not a unit")
            }
            QuandleError::Capacity { size } => {
                write!(f, "closure exceeded the cap of {size} elements")
            }
            QuandleError::UnknownArc { name } => write!(f, "unknown arc {name}"),
            QuandleError::Parse { pos, msg } => write!(f, "word parse error at byte {pos}: {msg}"),
            QuandleError::ComponentRecovery => {
                write!(f, "cannot recover components from phi values; assignments not distinct")
            }
            QuandleError::Internal(msg) => write!(f, "internal consistency error: {msg}"),
        }
    }
}

/// Module element with its cached phi value (symbolic).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuandleElement {
    pub elem: ModuleElement,
    pub phi: LaurentPoly,
}

impl QuandleElement {
    pub fn new(pres: &ModulePresentation, elem: ModuleElement) -> Self {
        let phi = pres.phi(&elem);
        QuandleElement { elem, phi }
    }

    pub fn arc(pres: &ModulePresentation, idx: usize) -> Self {
        Self::new(
            pres,
            ModuleElement::basis(pres.num_vars(), pres.generator_count(), idx),
        )
    }

    /// Membership in U: `phi + 1` is a unit of the Laurent ring.
    pub fn in_u(&self) -> bool {
        self.phi
            .add_ref(&LaurentPoly::one(self.phi.num_vars()))
            .is_unit()
            .is_some()
    }
}

/// `x ▷ y = (phi(y)+1)x - phi(x)y`; preserves phi of the left operand.
pub fn op_tri(x: &QuandleElement, y: &QuandleElement) -> QuandleElement {
    let nv = x.phi.num_vars();
    let one = LaurentPoly::one(nv);
    let a = y.phi.add_ref(&one);
    let elem = x.elem.scale(&a).sub(&y.elem.scale(&x.phi));
    QuandleElement {
        elem,
        phi: x.phi.clone(),
    }
}

/// `x ▷⁻¹ y = (phi(y)+1)^{-1} (x + phi(x)y)`; requires `y ∈ U`.
pub fn op_tri_inv(x: &QuandleElement, y: &QuandleElement) -> Result<QuandleElement, QuandleError> {
    let nv = x.phi.num_vars();
    let one = LaurentPoly::one(nv);
    let unit = y
        .phi
        .add_ref(&one)
        .is_unit()
        .ok_or(QuandleError::NotInvertible)?;
    let inv = unit.inverse();
    let sum = x.elem.add(&y.elem.scale(&x.phi));
    let elem = ModuleElement {
        coeffs: sum.coeffs.iter().map(|c| c.mul_unit(&inv)).collect(),
    };
    Ok(QuandleElement {
        elem,
        phi: x.phi.clone(),
    })
}

/// Specialized module element in cokernel coordinates, phi cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecQuandleElement {
    pub coords: Vec<u64>,
    pub phi: u64,
}

impl SpecQuandleElement {
    pub fn of_coords(m: &SpecializedModule, coords: Vec<u64>) -> Self {
        let phi = m.phi_coords(&coords);
        SpecQuandleElement { coords, phi }
    }

    pub fn arc(m: &SpecializedModule, idx: usize) -> Self {
        Self::of_coords(m, m.generator_coords(idx))
    }

    pub fn in_u(&self, prime: u64) -> bool {
        !(self.phi + 1).is_multiple_of(prime)
    }
}

pub fn spec_op_tri(prime: u64, x: &SpecQuandleElement, y: &SpecQuandleElement) -> SpecQuandleElement {
    let a = add_mod(y.phi, 1, prime);
    let coords = x
        .coords
        .iter()
        .zip(&y.coords)
        .map(|(&xc, &yc)| sub_mod(mul_mod(a, xc, prime), mul_mod(x.phi, yc, prime), prime))
        .collect();
    SpecQuandleElement {
        coords,
        phi: x.phi,
    }
}

pub fn spec_op_tri_inv(
    prime: u64,
    x: &SpecQuandleElement,
    y: &SpecQuandleElement,
) -> Result<SpecQuandleElement, QuandleError> {
    let a = add_mod(y.phi, 1, prime);
    if a == 0 {
        return Err(QuandleError::NotInvertible);
    }
    let inv = inv_mod(a, prime);
    let coords = x
        .coords
        .iter()
        .zip(&y.coords)
        .map(|(&xc, &yc)| mul_mod(inv, add_mod(xc, mul_mod(x.phi, yc, prime), prime), prime))
        .collect();
    Ok(SpecQuandleElement {
        coords,
        phi: x.phi,
    })
}

/// A quandle word: arcs combined with `▷` (`>`) and `▷⁻¹` (`<`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuandleWord {
    Arc(String),
    Tri(alloc::boxed::Box<QuandleWord>, alloc::boxed::Box<QuandleWord>),
    TriInv(alloc::boxed::Box<QuandleWord>, alloc::boxed::Box<QuandleWord>),
}

impl QuandleWord {
    /// Parse a parenthesized expression such as `((a2 > a1) < a3)`.
    pub fn parse(text: &str) -> Result<QuandleWord, QuandleError> {
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let word = parse_expr(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(QuandleError::Parse {
                pos,
                msg: "trailing input".to_owned(),
            });
        }
        Ok(word)
    }

    /// Interpretation in the free module on the arcs: a leaf maps to its
    /// basis vector, and the operations unfold through phi of the
    /// already-interpreted subwords.
    pub fn eval(&self, pres: &ModulePresentation) -> Result<ModuleElement, QuandleError> {
        Ok(self.eval_quandle(pres)?.elem)
    }

    fn eval_quandle(&self, pres: &ModulePresentation) -> Result<QuandleElement, QuandleError> {
        match self {
            QuandleWord::Arc(name) => {
                let idx = pres
                    .generators()
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| QuandleError::UnknownArc { name: name.clone() })?;
                Ok(QuandleElement::arc(pres, idx))
            }
            QuandleWord::Tri(l, r) => {
                let (x, y) = (l.eval_quandle(pres)?, r.eval_quandle(pres)?);
                Ok(op_tri(&x, &y))
            }
            QuandleWord::TriInv(l, r) => {
                let (x, y) = (l.eval_quandle(pres)?, r.eval_quandle(pres)?);
                op_tri_inv(&x, &y)
            }
        }
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_expr(bytes: &[u8], pos: &mut usize) -> Result<QuandleWord, QuandleError> {
    let mut acc = parse_primary(bytes, pos)?;
    loop {
        skip_ws(bytes, pos);
        match bytes.get(*pos) {
            Some(b'>') => {
                *pos += 1;
                let rhs = parse_primary(bytes, pos)?;
                acc = QuandleWord::Tri(alloc::boxed::Box::new(acc), alloc::boxed::Box::new(rhs));
            }
            Some(b'<') => {
                *pos += 1;
                let rhs = parse_primary(bytes, pos)?;
                acc = QuandleWord::TriInv(alloc::boxed::Box::new(acc), alloc::boxed::Box::new(rhs));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_primary(bytes: &[u8], pos: &mut usize) -> Result<QuandleWord, QuandleError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            let inner = parse_expr(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(QuandleError::Parse {
                    pos: *pos,
                    msg: "expected ')'".to_owned(),
                });
            }
            *pos += 1;
            Ok(inner)
        }
        Some(c) if c.is_ascii_alphanumeric() || *c == b'_' => {
            let start = *pos;
            while *pos < bytes.len()
                && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == b'_')
            {
                *pos += 1;
            }
            let name = core::str::from_utf8(&bytes[start..*pos])
                .expect("ascii")
                .to_owned();
            Ok(QuandleWord::Arc(name))
        }
        _ => Err(QuandleError::Parse {
            pos: *pos,
            msg: "expected arc or '('".to_owned(),
        }),
    }
}

struct OrbitForest {
    parent: Vec<usize>,
}

impl OrbitForest {
    fn new() -> Self {
        OrbitForest { parent: Vec::new() }
    }

    fn grow(&mut self) {
        self.parent.push(self.parent.len());
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Element index of a closure. Coordinates lie in `F_p^dim`; when
/// `p^dim` is small the index is a dense table keyed by the base-p
/// packing of the coordinates, otherwise an ordered map.
enum ClosureIndex {
    Dense(Vec<u32>),
    Sparse(BTreeMap<Vec<u64>, u32>),
}

const DENSE_INDEX_LIMIT: u64 = 1 << 22;
const UNSET: u32 = u32::MAX;

struct Closure {
    prime: u64,
    dim: usize,
    /// Flattened coordinates, `dim` entries per element.
    coords: Vec<u64>,
    phis: Vec<u64>,
    index: ClosureIndex,
    orbits: OrbitForest,
}

impl Closure {
    fn len(&self) -> usize {
        self.phis.len()
    }

    fn coords_of(&self, i: usize) -> &[u64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    fn pack(prime: u64, v: &[u64]) -> usize {
        let mut key = 0u64;
        for &c in v.iter().rev() {
            key = key * prime + (c % prime);
        }
        key as usize
    }

    fn lookup(&self, v: &[u64]) -> Option<u32> {
        match &self.index {
            ClosureIndex::Dense(table) => {
                let idx = table[Self::pack(self.prime, v)];
                (idx != UNSET).then_some(idx)
            }
            ClosureIndex::Sparse(map) => map.get(v).copied(),
        }
    }

    fn insert(&mut self, v: &[u64], phi: u64) -> u32 {
        if let Some(idx) = self.lookup(v) {
            return idx;
        }
        let idx = self.len() as u32;
        match &mut self.index {
            ClosureIndex::Dense(table) => {
                table[Self::pack(self.prime, v)] = idx;
            }
            ClosureIndex::Sparse(map) => {
                map.insert(v.to_vec(), idx);
            }
        }
        self.coords.extend_from_slice(v);
        self.phis.push(phi);
        self.orbits.grow();
        idx
    }

    /// `out = elems[a] ▷ elems[b]`.
    fn eval_tri(&self, a: usize, b: usize, out: &mut [u64]) {
        let p = self.prime;
        let s = add_mod(self.phis[b], 1, p);
        let fx = self.phis[a];
        let xa = &self.coords[a * self.dim..(a + 1) * self.dim];
        let xb = &self.coords[b * self.dim..(b + 1) * self.dim];
        for ((o, &ca), &cb) in out.iter_mut().zip(xa).zip(xb) {
            *o = sub_mod(mul_mod(s, ca, p), mul_mod(fx, cb, p), p);
        }
    }

    /// `out = elems[a] ▷⁻¹ elems[b]`.
    fn eval_tri_inv(&self, a: usize, b: usize, out: &mut [u64]) -> Result<(), QuandleError> {
        let p = self.prime;
        let s = add_mod(self.phis[b], 1, p);
        if s == 0 {
            return Err(QuandleError::Internal("generated element left U"));
        }
        let inv = inv_mod(s, p);
        let fx = self.phis[a];
        let xa = &self.coords[a * self.dim..(a + 1) * self.dim];
        let xb = &self.coords[b * self.dim..(b + 1) * self.dim];
        for ((o, &ca), &cb) in out.iter_mut().zip(xa).zip(xb) {
            *o = mul_mod(inv, add_mod(ca, mul_mod(fx, cb, p), p), p);
        }
        Ok(())
    }
}

fn close_under_ops(m: &SpecializedModule, cap: usize) -> Result<Closure, QuandleError> {
    let prime = m.prime();
    let dim = m.coker_dim();
    let dense_size = {
        let mut size = 1u64;
        for _ in 0..dim {
            size = size.saturating_mul(prime);
            if size > DENSE_INDEX_LIMIT {
                break;
            }
        }
        size
    };
    let index = if dense_size <= DENSE_INDEX_LIMIT {
        ClosureIndex::Dense(vec![UNSET; dense_size as usize])
    } else {
        ClosureIndex::Sparse(BTreeMap::new())
    };
    let mut st = Closure {
        prime,
        dim,
        coords: Vec::new(),
        phis: Vec::new(),
        index,
        orbits: OrbitForest::new(),
    };
    for i in 0..m.ambient_dim() {
        let e = SpecQuandleElement::arc(m, i);
        if !e.in_u(prime) {
            return Err(QuandleError::Internal("arc class outside U"));
        }
        st.insert(&e.coords, e.phi);
    }
    let mut scratch = vec![0u64; dim];
    let mut i = 0usize;
    while i < st.len() {
        for j in 0..=i {
            let pairs: &[(usize, usize)] = if i == j { &[(i, j)] } else { &[(i, j), (j, i)] };
            for &(a, b) in pairs {
                st.eval_tri(a, b, &mut scratch);
                let phi = st.phis[a];
                let f = st.insert(&scratch, phi);
                st.eval_tri_inv(a, b, &mut scratch)?;
                let g = st.insert(&scratch, phi);
                st.orbits.union(a, f as usize);
                st.orbits.union(a, g as usize);
                if st.len() > cap {
                    return Err(QuandleError::Capacity { size: cap });
                }
            }
        }
        i += 1;
    }
    Ok(st)
}

/// Size and orbit count of the generated quandle, without building the
/// operation tables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClosureSummary {
    pub size: usize,
    pub orbit_count: usize,
}

pub fn quandle_closure_summary(
    m: &SpecializedModule,
    cap: usize,
) -> Result<ClosureSummary, QuandleError> {
    let mut st = close_under_ops(m, cap)?;
    let n = st.len();
    let mut roots: Vec<usize> = Vec::new();
    for x in 0..n {
        let r = st.orbits.find(x);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    Ok(ClosureSummary {
        size: n,
        orbit_count: roots.len(),
    })
}

/// The generated quandle with total operation tables.
#[derive(Clone, Debug)]
pub struct FiniteQuandle {
    prime: u64,
    assignments: Vec<u64>,
    elems: Vec<SpecQuandleElement>,
    tri: Vec<u32>,
    tri_inv: Vec<u32>,
    orbit_ids: Vec<usize>,
    orbit_count: usize,
}

/// Breadth-first closure of the arc classes under both operations.
///
/// Element order is discovery order, so it is deterministic; the
/// operation tables are total on the result.
pub fn generate_qa(m: &SpecializedModule) -> Result<FiniteQuandle, QuandleError> {
    generate_qa_capped(m, CLOSURE_CAP)
}

pub fn generate_qa_capped(m: &SpecializedModule, cap: usize) -> Result<FiniteQuandle, QuandleError> {
    let prime = m.prime();
    let mut st = close_under_ops(m, cap)?;
    let n = st.len();
    let mut tri = vec![0u32; n * n];
    let mut tri_inv = vec![0u32; n * n];
    let mut scratch = vec![0u64; st.dim];
    for x in 0..n {
        for y in 0..n {
            st.eval_tri(x, y, &mut scratch);
            tri[x * n + y] = st
                .lookup(&scratch)
                .ok_or(QuandleError::Internal("closure not closed under ▷"))?;
            st.eval_tri_inv(x, y, &mut scratch)?;
            tri_inv[x * n + y] = st
                .lookup(&scratch)
                .ok_or(QuandleError::Internal("closure not closed under ▷⁻¹"))?;
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut orbit_ids = vec![0usize; n];
    for (x, slot) in orbit_ids.iter_mut().enumerate() {
        let r = st.orbits.find(x);
        let id = match roots.iter().position(|&q| q == r) {
            Some(k) => k,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
        *slot = id;
    }
    let elems: Vec<SpecQuandleElement> = (0..n)
        .map(|i| SpecQuandleElement {
            coords: st.coords_of(i).to_vec(),
            phi: st.phis[i],
        })
        .collect();
    Ok(FiniteQuandle {
        prime,
        assignments: m.assignments().to_vec(),
        elems,
        tri,
        tri_inv,
        orbit_ids,
        orbit_count: roots.len(),
    })
}

/// Exhaustive axiom check over the operation tables.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct AxiomReport {
    pub q1_counterexample: Option<usize>,
    pub q2_counterexample: Option<(usize, usize)>,
    pub q3_counterexample: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.q1_counterexample.is_none()
            && self.q2_counterexample.is_none()
            && self.q3_counterexample.is_none()
    }
}

impl FiniteQuandle {
    /// Assemble a quandle from explicit operation tables, e.g. to check
    /// axioms of a hand-written structure. Orbits are recomputed.
    pub fn from_tables(
        prime: u64,
        assignments: Vec<u64>,
        elems: Vec<SpecQuandleElement>,
        tri: Vec<u32>,
        tri_inv: Vec<u32>,
    ) -> Result<Self, QuandleError> {
        let n = elems.len();
        if tri.len() != n * n || tri_inv.len() != n * n {
            return Err(QuandleError::Internal("operation tables are not total"));
        }
        if tri.iter().chain(&tri_inv).any(|&t| t as usize >= n) {
            return Err(QuandleError::Internal("table entry out of range"));
        }
        let mut orbits = OrbitForest::new();
        for _ in 0..n {
            orbits.grow();
        }
        for x in 0..n {
            for y in 0..n {
                orbits.union(x, tri[x * n + y] as usize);
                orbits.union(x, tri_inv[x * n + y] as usize);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut orbit_ids = vec![0usize; n];
        for (x, slot) in orbit_ids.iter_mut().enumerate() {
            let r = orbits.find(x);
            *slot = match roots.iter().position(|&q| q == r) {
                Some(k) => k,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
        }
        Ok(FiniteQuandle {
            prime,
            assignments,
            elems,
            tri,
            tri_inv,
            orbit_ids,
            orbit_count: roots.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn assignments(&self) -> &[u64] {
        &self.assignments
    }

    pub fn element(&self, i: usize) -> &SpecQuandleElement {
        &self.elems[i]
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.tri[x * self.elems.len() + y] as usize
    }

    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.tri_inv[x * self.elems.len() + y] as usize
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    /// Orbit id per element, ids dense in discovery order.
    pub fn orbit_ids(&self) -> &[usize] {
        &self.orbit_ids
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.orbit_count];
        for (x, &id) in self.orbit_ids.iter().enumerate() {
            out[id].push(x);
        }
        out
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.elems.len();
        let mut report = AxiomReport::default();
        for x in 0..n {
            if self.op(x, x) != x {
                report.q1_counterexample = Some(x);
                break;
            }
        }
        'q2: for x in 0..n {
            for y in 0..n {
                if self.op_inv(self.op(x, y), y) != x || self.op(self.op_inv(x, y), y) != x {
                    report.q2_counterexample = Some((x, y));
                    break 'q2;
                }
            }
        }
        'q3: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.op(self.op(x, y), z) != self.op(self.op(x, z), self.op(y, z)) {
                        report.q3_counterexample = Some((x, y, z));
                        break 'q3;
                    }
                }
            }
        }
        report
    }

    /// Component of each element, recovered from phi values; requires
    /// pairwise-distinct assignments.
    pub fn component_map(&self) -> Result<Vec<usize>, QuandleError> {
        let p = self.prime;
        let mut out = Vec::with_capacity(self.elems.len());
        for e in &self.elems {
            let mut found: Option<usize> = None;
            for (k, &u) in self.assignments.iter().enumerate() {
                if sub_mod(u, 1, p) == e.phi % p {
                    if found.is_some() {
                        return Err(QuandleError::ComponentRecovery);
                    }
                    found = Some(k);
                }
            }
            out.push(found.ok_or(QuandleError::ComponentRecovery)?);
        }
        Ok(out)
    }

    /// The quandle-based presentation of the specialized module: one
    /// generator per quandle element, relation families
    /// `t_{κ(y)}x + (1 - t_{κ(x)})y - x ▷ y` and
    /// `t_{κ(y)}^{-1}x + t_{κ(y)}^{-1}(t_{κ(x)} - 1)y - x ▷⁻¹ y`
    /// over all ordered pairs, with `t` replaced by the assignments.
    pub fn quandle_presentation(&self) -> Result<SpecializedModule, QuandleError> {
        let p = self.prime;
        let kappa = self.component_map()?;
        let n = self.elems.len();
        let u = |k: usize| self.assignments[k] % p;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    // x ▷ x = x makes both rows vanish.
                    continue;
                }
                let mut row = vec![0u64; n];
                row[x] = add_mod(row[x], u(kappa[y]), p);
                row[y] = add_mod(row[y], sub_mod(1, u(kappa[x]), p), p);
                let t = self.op(x, y);
                row[t] = sub_mod(row[t], 1, p);
                rows.push(row);

                let inv = inv_mod(u(kappa[y]), p);
                let mut row = vec![0u64; n];
                row[x] = add_mod(row[x], inv, p);
                row[y] = add_mod(row[y], mul_mod(inv, sub_mod(u(kappa[x]), 1, p), p), p);
                let t = self.op_inv(x, y);
                row[t] = sub_mod(row[t], 1, p);
                rows.push(row);
            }
        }
        let phis: Vec<u64> = self.elems.iter().map(|e| e.phi % p).collect();
        SpecializedModule::from_rows(p, self.assignments.clone(), n, rows, phis)
            .map_err(|_| QuandleError::Internal("quandle presentation rows malformed"))
    }
}
