//! Finite prime-field specializations of module presentations.
//!
//! Substituting `t_i ↦ u_i` with nonzero scalars `u_i ∈ F_p` turns a
//! presentation over the Laurent ring into a finite-dimensional linear
//! problem, where cokernel dimension, element equality and coloring
//! counts are all decidable. A battery of such specializations is the
//! sound inequality oracle used throughout.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::LinkDiagram;
use crate::presentation::ModulePresentation;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p - 2, p)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpecializeError {
    NotPrime(u64),
    ZeroAssignment { index: usize },
    ArityMismatch { expected: usize, found: usize },
    DimensionMismatch { expected: usize, found: usize },
    EmptyBattery { mu: usize },
}

impl fmt::Display for SpecializeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecializeError::NotPrime(p) => write!(f, "{p} is not prime"),
            SpecializeError::ZeroAssignment { index } => {
                write!(f, "assignment for t{} vanishes in the field", index + 1)
            }
            SpecializeError::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} assignments, found {found}")
            }
            SpecializeError::DimensionMismatch { expected, found } => {
                write!(f, "expected vector of length {expected}, found {found}")
            }
            SpecializeError::EmptyBattery { mu } => {
                write!(f, "no battery prime admits {mu} pairwise-distinct units != 1")
            }
        }
    }
}

/// Row-reduced echelon accumulator over `F_p`.
#[derive(Clone, Debug)]
pub struct Echelon {
    prime: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(prime: u64, cols: usize) -> Self {
        Echelon {
            prime,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the row space in place; the result has zeros in
    /// all pivot columns.
    pub fn reduce(&self, v: &mut [u64]) {
        let p = self.prime;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv] % p;
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = sub_mod(*x, mul_mod(c, *r, p), p);
                }
            }
        }
    }

    /// Insert a row; returns true when it enlarged the row space.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let p = self.prime;
        for x in v.iter_mut() {
            *x %= p;
        }
        self.reduce(&mut v);
        let lead = match v.iter().position(|&x| x != 0) {
            Some(i) => i,
            None => return false,
        };
        let inv = inv_mod(v[lead], p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        // Clear the new pivot column from existing rows to keep the
        // reduced form.
        for row in self.rows.iter_mut() {
            let c = row[lead];
            if c != 0 {
                for (x, n) in row.iter_mut().zip(&v) {
                    *x = sub_mod(*x, mul_mod(c, *n, p), p);
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&piv| piv > lead)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }
}

/// A module presentation specialized at `t_i = u_i` over `F_p`.
///
/// Classes are identified with canonical coset representatives: ambient
/// vectors reduced modulo the relation row space, supported on the
/// non-pivot ("free") columns. The free-column coordinates give a
/// `coker_dim`-dimensional coordinate system for the module.
#[derive(Clone, Debug)]
pub struct SpecializedModule {
    prime: u64,
    assignments: Vec<u64>,
    ambient_dim: usize,
    echelon: Echelon,
    free_cols: Vec<usize>,
    /// Specialized phi value of each ambient generator.
    phi_ambient: Vec<u64>,
}

impl SpecializedModule {
    /// Specialize a presentation at nonzero assignments modulo `prime`.
    pub fn specialize(
        pres: &ModulePresentation,
        prime: u64,
        assignments: &[u64],
    ) -> Result<Self, SpecializeError> {
        if !is_prime(prime) {
            return Err(SpecializeError::NotPrime(prime));
        }
        if assignments.len() != pres.num_vars() {
            return Err(SpecializeError::ArityMismatch {
                expected: pres.num_vars(),
                found: assignments.len(),
            });
        }
        for (i, &u) in assignments.iter().enumerate() {
            if u % prime == 0 {
                return Err(SpecializeError::ZeroAssignment { index: i });
            }
        }
        let n = pres.generator_count();
        let eval = |poly: &crate::laurent::LaurentPoly| -> u64 {
            poly.evaluate_in_prime_field(prime, assignments)
                .expect("assignments validated")
        };
        let mut echelon = Echelon::new(prime, n);
        for row in pres.relations() {
            let v: Vec<u64> = row.iter().map(&eval).collect();
            echelon.insert(v);
        }
        let phi_ambient: Vec<u64> = pres.phi_values().iter().map(&eval).collect();
        Ok(Self::assemble(
            prime,
            assignments.to_vec(),
            n,
            echelon,
            phi_ambient,
        ))
    }

    /// Build directly from specialized relation rows.
    pub fn from_rows(
        prime: u64,
        assignments: Vec<u64>,
        ambient_dim: usize,
        rows: impl IntoIterator<Item = Vec<u64>>,
        phi_ambient: Vec<u64>,
    ) -> Result<Self, SpecializeError> {
        if !is_prime(prime) {
            return Err(SpecializeError::NotPrime(prime));
        }
        let mut echelon = Echelon::new(prime, ambient_dim);
        for row in rows {
            if row.len() != ambient_dim {
                return Err(SpecializeError::DimensionMismatch {
                    expected: ambient_dim,
                    found: row.len(),
                });
            }
            echelon.insert(row);
        }
        Ok(Self::assemble(prime, assignments, ambient_dim, echelon, phi_ambient))
    }

    fn assemble(
        prime: u64,
        assignments: Vec<u64>,
        ambient_dim: usize,
        echelon: Echelon,
        phi_ambient: Vec<u64>,
    ) -> Self {
        let pivot_set: BTreeSet<usize> = echelon.pivots().iter().copied().collect();
        let free_cols: Vec<usize> = (0..ambient_dim).filter(|c| !pivot_set.contains(c)).collect();
        SpecializedModule {
            prime,
            assignments,
            ambient_dim,
            echelon,
            free_cols,
            phi_ambient,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn assignments(&self) -> &[u64] {
        &self.assignments
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn coker_dim(&self) -> usize {
        self.ambient_dim - self.echelon.rank()
    }

    /// Canonical coset representative of an ambient vector.
    pub fn canonical_rep(&self, v: &[u64]) -> Result<Vec<u64>, SpecializeError> {
        if v.len() != self.ambient_dim {
            return Err(SpecializeError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let mut out: Vec<u64> = v.iter().map(|&x| x % self.prime).collect();
        self.echelon.reduce(&mut out);
        Ok(out)
    }

    /// Module coordinates of an ambient vector: the free-column entries
    /// of its canonical representative.
    pub fn project(&self, v: &[u64]) -> Result<Vec<u64>, SpecializeError> {
        let rep = self.canonical_rep(v)?;
        Ok(self.free_cols.iter().map(|&c| rep[c]).collect())
    }

    /// Coordinates of the class of the `i`-th ambient generator.
    pub fn generator_coords(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.ambient_dim];
        v[i] = 1;
        self.project(&v).expect("dimension is correct")
    }

    /// Two ambient vectors represent the same class iff their canonical
    /// representatives coincide.
    pub fn equal(&self, x: &[u64], y: &[u64]) -> Result<bool, SpecializeError> {
        Ok(self.canonical_rep(x)? == self.canonical_rep(y)?)
    }

    /// Specialized phi of a coordinate vector (length `coker_dim`).
    pub fn phi_coords(&self, coords: &[u64]) -> u64 {
        debug_assert_eq!(coords.len(), self.free_cols.len());
        let p = self.prime;
        let mut acc = 0u64;
        for (&c, &col) in coords.iter().zip(&self.free_cols) {
            acc = add_mod(acc, mul_mod(c, self.phi_ambient[col], p), p);
        }
        acc
    }

    pub fn phi_ambient(&self) -> &[u64] {
        &self.phi_ambient
    }

    /// Basis of `{classes x : phi(x) = 0}` in module coordinates.
    pub fn kernel_phi(&self) -> KernelPhi {
        let p = self.prime;
        let d = self.free_cols.len();
        let degenerate = self.assignments.iter().all(|&u| u % p == 1 % p);
        let phis: Vec<u64> = (0..d)
            .map(|j| {
                let mut e = vec![0u64; d];
                e[j] = 1;
                self.phi_coords(&e)
            })
            .collect();
        let pivot = phis.iter().position(|&v| v != 0);
        match pivot {
            None => KernelPhi {
                degenerate,
                basis: (0..d)
                    .map(|j| {
                        let mut e = vec![0u64; d];
                        e[j] = 1;
                        e
                    })
                    .collect(),
            },
            Some(j0) => {
                let inv = inv_mod(phis[j0], p);
                let basis = (0..d)
                    .filter(|&j| j != j0)
                    .map(|j| {
                        // e_j - (phi_j / phi_j0) e_j0
                        let mut v = vec![0u64; d];
                        v[j] = 1;
                        v[j0] = sub_mod(0, mul_mod(phis[j], inv, p), p);
                        v
                    })
                    .collect();
                KernelPhi { degenerate, basis }
            }
        }
    }
}

/// Result of [`SpecializedModule::kernel_phi`].
#[derive(Clone, Debug)]
pub struct KernelPhi {
    /// All assignments are 1, so phi vanishes identically.
    pub degenerate: bool,
    pub basis: Vec<Vec<u64>>,
}

impl KernelPhi {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Number of arc-labelings over `F_p` satisfying every specialized
/// crossing relation, reported as the exponent `e` of `p^e`.
pub fn coloring_count(
    d: &LinkDiagram,
    prime: u64,
    assignments: &[u64],
) -> Result<u32, SpecializeError> {
    if !is_prime(prime) {
        return Err(SpecializeError::NotPrime(prime));
    }
    if assignments.len() != d.num_components() {
        return Err(SpecializeError::ArityMismatch {
            expected: d.num_components(),
            found: assignments.len(),
        });
    }
    for (i, &u) in assignments.iter().enumerate() {
        if u % prime == 0 {
            return Err(SpecializeError::ZeroAssignment { index: i });
        }
    }
    let p = prime;
    let n = d.arc_count();
    let mut echelon = Echelon::new(p, n);
    for c in d.crossings() {
        let mut row = vec![0u64; n];
        let u_over = assignments[d.kappa(c.over)] % p;
        let u_right = assignments[d.kappa(c.under_right)] % p;
        row[c.over] = add_mod(row[c.over], sub_mod(1, u_right, p), p);
        row[c.under_right] = add_mod(row[c.under_right], u_over, p);
        row[c.under_left] = sub_mod(row[c.under_left], 1, p);
        echelon.insert(row);
    }
    Ok((n - echelon.rank()) as u32)
}

/// One specialization in a battery.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BatteryMember {
    pub prime: u64,
    pub assignments: Vec<u64>,
}

/// Battery of prime-field specializations with deterministic,
/// pairwise-distinct unit assignments away from 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BatteryConfig {
    pub primes: Vec<u64>,
    pub tuples_per_prime: usize,
    pub seed: u64,
    /// Optional cap on the total member count.
    pub limit: Option<usize>,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            primes: vec![5, 7, 11, 13],
            tuples_per_prime: 4,
            seed: 0xa1ec_5eed,
            limit: None,
        }
    }
}

impl BatteryConfig {
    /// Battery used by the element-level comparison oracle.
    pub fn element_default() -> Self {
        BatteryConfig {
            primes: vec![5, 7, 11],
            tuples_per_prime: 3,
            seed: 0xa1ec_5eee,
            limit: Some(8),
        }
    }

    /// Deterministic members for a given component count, round-robin
    /// over the primes. Primes that cannot host `mu` pairwise-distinct
    /// units different from 1 are skipped.
    pub fn members(&self, mu: usize) -> Result<Vec<BatteryMember>, SpecializeError> {
        for &p in &self.primes {
            if !is_prime(p) {
                return Err(SpecializeError::NotPrime(p));
            }
        }
        let usable: Vec<u64> = self
            .primes
            .iter()
            .copied()
            .filter(|&p| (p as usize).saturating_sub(2) >= mu)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::new();
        for _ in 0..self.tuples_per_prime {
            for &p in &usable {
                let mut pool: Vec<u64> = (2..p).collect();
                pool.shuffle(&mut rng);
                out.push(BatteryMember {
                    prime: p,
                    assignments: pool[..mu].to_vec(),
                });
            }
        }
        if let Some(limit) = self.limit {
            out.truncate(limit);
        }
        if out.is_empty() {
            return Err(SpecializeError::EmptyBattery { mu });
        }
        Ok(out)
    }
}

/// Verdict of the specialization battery: a sound inequality oracle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Distinguished,
    Indistinguishable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished => write!(f, "distinguished"),
            Verdict::Indistinguishable => write!(f, "indistinguishable"),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permute_rec(&mut idx, 0, &mut out);
    out
}

fn permute_rec(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute_rec(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// Compare two presentations across the battery, quantifying over
/// component-index permutations (all of them for `mu <= 4`, identity
/// only beyond). `Distinguished` means no permutation reconciles every
/// member's cokernel dimensions; it is sound for non-isomorphism.
pub fn battery_compare(
    a: &ModulePresentation,
    b: &ModulePresentation,
    config: &BatteryConfig,
) -> Result<Verdict, SpecializeError> {
    let mu = a.num_vars();
    if b.num_vars() != mu {
        return Err(SpecializeError::ArityMismatch {
            expected: mu,
            found: b.num_vars(),
        });
    }
    let members = config.members(mu)?;
    let dims_a: Vec<usize> = members
        .iter()
        .map(|m| SpecializedModule::specialize(a, m.prime, &m.assignments).map(|s| s.coker_dim()))
        .collect::<Result<_, _>>()?;
    let perms = if mu <= 4 {
        permutations(mu)
    } else {
        vec![(0..mu).collect()]
    };
    for perm in &perms {
        let mut all_equal = true;
        for (m, &da) in members.iter().zip(&dims_a) {
            let permuted: Vec<u64> = perm.iter().map(|&i| m.assignments[i]).collect();
            let db = SpecializedModule::specialize(b, m.prime, &permuted)?.coker_dim();
            if db != da {
                all_equal = false;
                break;
            }
        }
        if all_equal {
            return Ok(Verdict::Indistinguishable);
        }
    }
    Ok(Verdict::Distinguished)
}
