//! Command implementations and JSON output model for the `alexq` CLI.
//!
//! Every command emits a single JSON document on standard output with a
//! versioned `schema` key. Output is deterministic: term orders, battery
//! seeds and element orders are all fixed.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use alexq_core::diagram::{DiagramError, LinkDiagram};
use alexq_core::laurent::{LaurentError, LaurentPoly};
use alexq_core::moves::{apply_move, random_move_sequence};
use alexq_core::presentation::{
    ModulePresentation, PresentationError, TietzeStep,
};
use alexq_core::quandle::{
    generate_qa_capped, quandle_closure_summary, QuandleError, QuandleWord, CLOSURE_CAP,
};
use alexq_core::specialize::{
    battery_compare, coloring_count, BatteryConfig, SpecializeError, SpecializedModule, Verdict,
};

pub const SCHEMA: &str = "alexq/1";

/// Largest quandle for which operation tables (and hence axiom checks
/// and the quandle-based presentation) are materialized by the CLI.
pub const TABLE_CAP: usize = 4096;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ErrorKind {
    Usage,
    Capacity,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::Capacity => 3,
            ErrorKind::Internal => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Capacity => "capacity",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Usage,
            message: message.into(),
        }
    }

    /// Machine-readable error object for standard output.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ErrorBody<'a> {
            schema: &'a str,
            error: ErrorObj<'a>,
        }
        #[derive(Serialize)]
        struct ErrorObj<'a> {
            kind: &'a str,
            message: &'a str,
        }
        serde_json::to_string_pretty(&ErrorBody {
            schema: SCHEMA,
            error: ErrorObj {
                kind: self.kind.name(),
                message: &self.message,
            },
        })
        .expect("error body serializes")
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<LaurentError> for CliError {
    fn from(e: LaurentError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<SpecializeError> for CliError {
    fn from(e: SpecializeError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<QuandleError> for CliError {
    fn from(e: QuandleError) -> Self {
        let kind = match e {
            QuandleError::Capacity { .. } => ErrorKind::Capacity,
            QuandleError::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Usage,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        let kind = match e {
            PresentationError::Capacity { .. } => ErrorKind::Capacity,
            _ => ErrorKind::Internal,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

pub fn load_diagram(path: &Path) -> Result<LinkDiagram, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(LinkDiagram::parse(&text)?)
}

/// Hex digest of the normalized diagram serialization.
pub fn diagram_digest(d: &LinkDiagram) -> String {
    let mut h = Sha256::new();
    h.update(d.serialize().as_bytes());
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// `t1=2,t2=3` -> assignment vector of length `mu`.
pub fn parse_assignments(spec: &str, mu: usize) -> Result<Vec<u64>, CliError> {
    let mut out: Vec<Option<u64>> = vec![None; mu];
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (var, val) = part
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("bad assignment {part:?}, expected tN=value")))?;
        let idx: usize = var
            .trim()
            .strip_prefix('t')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::usage(format!("bad variable {var:?}")))?;
        if idx == 0 || idx > mu {
            return Err(CliError::usage(format!(
                "variable t{idx} out of range 1..={mu}"
            )));
        }
        let val: u64 = val
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad value {val:?}")))?;
        out[idx - 1] = Some(val);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| CliError::usage(format!("missing assignment for t{}", i + 1))))
        .collect()
}

/// On-disk battery configuration.
#[derive(Deserialize)]
pub struct BatteryFile {
    pub primes: Vec<u64>,
    #[serde(default = "default_tuples")]
    pub tuples_per_prime: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub limit: Option<usize>,
}

fn default_tuples() -> usize {
    4
}

fn default_seed() -> u64 {
    BatteryConfig::default().seed
}

pub fn load_battery(path: Option<&Path>) -> Result<BatteryConfig, CliError> {
    match path {
        None => Ok(BatteryConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))?;
            let parsed: BatteryFile = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("bad battery config: {e}")))?;
            Ok(BatteryConfig {
                primes: parsed.primes,
                tuples_per_prime: parsed.tuples_per_prime,
                seed: parsed.seed,
                limit: parsed.limit,
            })
        }
    }
}

// ---------------------------------------------------------------------
// Output model
// ---------------------------------------------------------------------

#[derive(Serialize)]
pub struct ArcOut {
    pub id: String,
    pub component: usize,
}

#[derive(Serialize)]
pub struct CrossingOut {
    pub over: String,
    pub under_right: String,
    pub under_left: String,
}

#[derive(Serialize)]
pub struct ParseOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub num_components: usize,
    pub arcs: Vec<ArcOut>,
    pub crossings: Vec<CrossingOut>,
}

#[derive(Serialize)]
pub struct MatrixOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub num_vars: usize,
    pub generators: Vec<String>,
    pub phi: Vec<String>,
    pub relations: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis_trace: Vec<TraceStepOut>,
}

#[derive(Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceStepOut {
    EliminateGenerator {
        generator: String,
        expression: BTreeMap<String, String>,
    },
    DropZeroRow {
        row: usize,
    },
    DropRedundantRow {
        row: usize,
        combination: Vec<CombinationTermOut>,
    },
    ChangeGenerator {
        new: String,
        replaced: String,
        definition: BTreeMap<String, String>,
    },
}

#[derive(Serialize)]
pub struct CombinationTermOut {
    pub row: usize,
    pub coefficient: String,
}

#[derive(Serialize)]
pub struct DecomposeOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub num_vars: usize,
    pub decomposable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_factors: Option<Vec<String>>,
    /// Generator carrying each torsion factor, aligned with
    /// `torsion_factors`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_generators: Option<Vec<String>>,
    pub basis_trace: Vec<TraceStepOut>,
}

#[derive(Serialize)]
pub struct IdealsOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub k: usize,
    pub module_generators: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct QuandleOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub prime: u64,
    pub assignments: Vec<u64>,
    pub size: usize,
    pub orbit_count: usize,
    /// Axiom verdicts; absent when the quandle exceeds the table cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomsOut>,
}

#[derive(Serialize)]
pub struct AxiomsOut {
    pub q1: bool,
    pub q2: bool,
    pub q3: bool,
}

#[derive(Serialize)]
pub struct WordOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub expression: String,
    pub coefficients: BTreeMap<String, String>,
    pub phi: String,
    pub in_u: bool,
}

#[derive(Serialize)]
pub struct OrbitsOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub prime: u64,
    pub assignments: Vec<u64>,
    pub size: usize,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
    /// Orbit index of each arc class, keyed by arc name.
    pub arc_orbits: BTreeMap<String, usize>,
}

#[derive(Serialize)]
pub struct ColoringsOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub prime: u64,
    pub assignments: Vec<u64>,
    pub exponent: u32,
}

#[derive(Serialize)]
pub struct DistinguishOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest_a: String,
    pub digest_b: String,
    pub verdict: String,
    /// For each component permutation of the second input, the first
    /// battery member separating the modules, if any.
    pub permutations: Vec<PermutationWitnessOut>,
}

#[derive(Serialize)]
pub struct PermutationWitnessOut {
    pub permutation: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
}

#[derive(Serialize)]
pub struct WitnessOut {
    pub prime: u64,
    pub assignments: Vec<u64>,
    pub coker_dim_a: usize,
    pub coker_dim_b: usize,
}

#[derive(Serialize)]
pub struct CheckMovesOut {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub seed: u64,
    pub iterations: usize,
    pub max_length: usize,
    pub battery_members: usize,
    pub sequences_checked: usize,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// Aggregate report with every invariant the tool computes.
#[derive(Serialize)]
pub struct InvariantReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub digest: String,
    pub num_components: usize,
    pub arc_count: usize,
    pub crossing_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSummaryOut>,
    /// Generators of each elementary ideal, keyed by k; absent when the
    /// matrix exceeds the minor capacity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elementary_ideals: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_factors: Option<Vec<String>>,
    pub battery: Vec<BatteryObservationOut>,
}

#[derive(Serialize)]
pub struct DecompositionSummaryOut {
    pub free_rank: usize,
    pub torsion_factors: Vec<String>,
}

#[derive(Serialize)]
pub struct BatteryObservationOut {
    pub prime: u64,
    pub assignments: Vec<u64>,
    pub coker_dim: usize,
    pub coloring_exponent: u32,
    pub kernel_phi_dim: usize,
    pub quandle_size: usize,
    pub orbit_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms_hold: Option<bool>,
}

// ---------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------

fn trace_out(steps: &[TietzeStep]) -> Vec<TraceStepOut> {
    steps
        .iter()
        .map(|s| match s {
            TietzeStep::EliminateGenerator { generator, expression } => {
                TraceStepOut::EliminateGenerator {
                    generator: generator.clone(),
                    expression: expression
                        .iter()
                        .map(|(g, p)| (g.clone(), p.to_string()))
                        .collect(),
                }
            }
            TietzeStep::DropZeroRow { row } => TraceStepOut::DropZeroRow { row: *row },
            TietzeStep::DropRedundantRow { row, combination } => TraceStepOut::DropRedundantRow {
                row: *row,
                combination: combination
                    .iter()
                    .map(|(r, c)| CombinationTermOut {
                        row: *r,
                        coefficient: c.to_string(),
                    })
                    .collect(),
            },
            TietzeStep::ChangeGenerator {
                new_label,
                replaced,
                definition,
            } => TraceStepOut::ChangeGenerator {
                new: new_label.clone(),
                replaced: replaced.clone(),
                definition: definition
                    .iter()
                    .map(|(g, p)| (g.clone(), p.to_string()))
                    .collect(),
            },
        })
        .collect()
}

fn poly_strings(row: &[LaurentPoly]) -> Vec<String> {
    row.iter().map(|p| p.to_string()).collect()
}

pub fn cmd_parse(d: &LinkDiagram) -> ParseOut {
    ParseOut {
        schema: SCHEMA,
        command: "parse",
        digest: diagram_digest(d),
        num_components: d.num_components(),
        arcs: (0..d.arc_count())
            .map(|i| ArcOut {
                id: d.arc_name(i).to_string(),
                component: d.kappa(i) + 1,
            })
            .collect(),
        crossings: d
            .crossings()
            .iter()
            .map(|c| CrossingOut {
                over: d.arc_name(c.over).to_string(),
                under_right: d.arc_name(c.under_right).to_string(),
                under_left: d.arc_name(c.under_left).to_string(),
            })
            .collect(),
    }
}

fn matrix_out(command: &'static str, digest: String, p: &ModulePresentation) -> MatrixOut {
    MatrixOut {
        schema: SCHEMA,
        command,
        digest,
        num_vars: p.num_vars(),
        generators: p.generators().to_vec(),
        phi: poly_strings(p.phi_values()),
        relations: p.relations().iter().map(|r| poly_strings(r)).collect(),
        basis_trace: trace_out(p.basis_trace()),
    }
}

pub fn cmd_matrix(d: &LinkDiagram) -> MatrixOut {
    matrix_out(
        "matrix",
        diagram_digest(d),
        &ModulePresentation::alexander_matrix(d),
    )
}

pub fn cmd_simplify(d: &LinkDiagram) -> MatrixOut {
    let p = ModulePresentation::alexander_matrix(d).simplify();
    matrix_out("simplify", diagram_digest(d), &p)
}

pub fn cmd_decompose(d: &LinkDiagram) -> DecomposeOut {
    let p = ModulePresentation::alexander_matrix(d);
    let s = p.simplify();
    let form = s.diagonal_form();
    DecomposeOut {
        schema: SCHEMA,
        command: "decompose",
        digest: diagram_digest(d),
        num_vars: p.num_vars(),
        decomposable: form.is_some(),
        free_rank: form.as_ref().map(|f| f.free_generators.len()),
        free_generators: form.as_ref().map(|f| f.free_generators.clone()),
        torsion_factors: form
            .as_ref()
            .map(|f| f.torsion.iter().map(|(_, p)| p.to_string()).collect()),
        torsion_generators: form
            .as_ref()
            .map(|f| f.torsion.iter().map(|(g, _)| g.clone()).collect()),
        basis_trace: trace_out(s.basis_trace()),
    }
}

pub fn cmd_ideals(d: &LinkDiagram, k: usize) -> Result<IdealsOut, CliError> {
    let p = ModulePresentation::alexander_matrix(d);
    let gens = p.elementary_ideals(k)?;
    Ok(IdealsOut {
        schema: SCHEMA,
        command: "ideals",
        digest: diagram_digest(d),
        k,
        module_generators: p.generators().to_vec(),
        generators: gens.iter().map(|g| g.to_string()).collect(),
    })
}

pub fn cmd_reduced(d: &LinkDiagram) -> MatrixOut {
    let p = ModulePresentation::alexander_matrix(d).reduce().simplify();
    matrix_out("reduced", diagram_digest(d), &p)
}

pub fn specialized(d: &LinkDiagram, prime: u64, assignments: &[u64]) -> Result<SpecializedModule, CliError> {
    let p = ModulePresentation::alexander_matrix(d);
    Ok(SpecializedModule::specialize(&p, prime, assignments)?)
}

pub fn cmd_quandle(d: &LinkDiagram, prime: u64, assignments: &[u64]) -> Result<QuandleOut, CliError> {
    let m = specialized(d, prime, assignments)?;
    let summary = quandle_closure_summary(&m, CLOSURE_CAP)?;
    let axioms = if summary.size <= TABLE_CAP {
        let q = generate_qa_capped(&m, CLOSURE_CAP)?;
        let report = q.check_axioms();
        Some(AxiomsOut {
            q1: report.q1_counterexample.is_none(),
            q2: report.q2_counterexample.is_none(),
            q3: report.q3_counterexample.is_none(),
        })
    } else {
        None
    };
    Ok(QuandleOut {
        schema: SCHEMA,
        command: "quandle",
        digest: diagram_digest(d),
        prime,
        assignments: assignments.to_vec(),
        size: summary.size,
        orbit_count: summary.orbit_count,
        axioms,
    })
}

pub fn cmd_word(d: &LinkDiagram, expr: &str) -> Result<WordOut, CliError> {
    let p = ModulePresentation::alexander_matrix(d);
    let w = QuandleWord::parse(expr)?;
    let v = w.eval(&p)?;
    let phi = p.phi(&v);
    let one = LaurentPoly::one(p.num_vars());
    let in_u = phi.add_ref(&one).is_unit().is_some();
    Ok(WordOut {
        schema: SCHEMA,
        command: "word",
        digest: diagram_digest(d),
        expression: expr.to_string(),
        coefficients: p
            .generators()
            .iter()
            .zip(&v.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (g.clone(), c.to_string()))
            .collect(),
        phi: phi.to_string(),
        in_u,
    })
}

pub fn cmd_orbits(d: &LinkDiagram, prime: u64, assignments: &[u64]) -> Result<OrbitsOut, CliError> {
    let m = specialized(d, prime, assignments)?;
    let q = generate_qa_capped(&m, CLOSURE_CAP)?;
    let orbits = q.orbits();
    let mut arc_orbits = BTreeMap::new();
    for i in 0..d.arc_count() {
        let coords = m.generator_coords(i);
        let idx = (0..q.len())
            .find(|&e| q.element(e).coords == coords)
            .expect("arc classes are quandle elements");
        arc_orbits.insert(d.arc_name(i).to_string(), q.orbit_ids()[idx]);
    }
    Ok(OrbitsOut {
        schema: SCHEMA,
        command: "orbits",
        digest: diagram_digest(d),
        prime,
        assignments: assignments.to_vec(),
        size: q.len(),
        orbit_count: q.orbit_count(),
        orbit_sizes: orbits.iter().map(|o| o.len()).collect(),
        arc_orbits,
    })
}

pub fn cmd_colorings(
    d: &LinkDiagram,
    prime: u64,
    assignments: &[u64],
) -> Result<ColoringsOut, CliError> {
    let exponent = coloring_count(d, prime, assignments)?;
    Ok(ColoringsOut {
        schema: SCHEMA,
        command: "colorings",
        digest: diagram_digest(d),
        prime,
        assignments: assignments.to_vec(),
        exponent,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == idx.len() {
            out.push(idx.clone());
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            rec(idx, k + 1, out);
            idx.swap(k, i);
        }
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    rec(&mut idx, 0, &mut out);
    out
}

pub fn cmd_distinguish(
    a: &LinkDiagram,
    b: &LinkDiagram,
    config: &BatteryConfig,
) -> Result<DistinguishOut, CliError> {
    let pa = ModulePresentation::alexander_matrix(a);
    let pb = ModulePresentation::alexander_matrix(b);
    let mu = a.num_components();
    let verdict = if mu != b.num_components() {
        Verdict::Distinguished
    } else {
        battery_compare(&pa, &pb, config)?
    };
    let mut perms_out = Vec::new();
    if mu == b.num_components() {
        let members = config.members(mu)?;
        let perms = if mu <= 4 {
            permutations(mu)
        } else {
            vec![(0..mu).collect()]
        };
        for perm in perms {
            let mut witness = None;
            for m in &members {
                let da = SpecializedModule::specialize(&pa, m.prime, &m.assignments)?.coker_dim();
                let permuted: Vec<u64> = perm.iter().map(|&i| m.assignments[i]).collect();
                let db = SpecializedModule::specialize(&pb, m.prime, &permuted)?.coker_dim();
                if da != db {
                    witness = Some(WitnessOut {
                        prime: m.prime,
                        assignments: m.assignments.clone(),
                        coker_dim_a: da,
                        coker_dim_b: db,
                    });
                    break;
                }
            }
            perms_out.push(PermutationWitnessOut {
                permutation: perm.iter().map(|&i| i + 1).collect(),
                witness,
            });
        }
    }
    Ok(DistinguishOut {
        schema: SCHEMA,
        command: "distinguish",
        digest_a: diagram_digest(a),
        digest_b: diagram_digest(b),
        verdict: verdict.to_string(),
        permutations: perms_out,
    })
}

/// Observable invariants of one specialization, as used by the
/// move-invariance fuzz suite.
pub fn observe(
    d: &LinkDiagram,
    prime: u64,
    assignments: &[u64],
) -> Result<(usize, u32, usize, usize), CliError> {
    let m = specialized(d, prime, assignments)?;
    let exponent = coloring_count(d, prime, assignments)?;
    let q = quandle_closure_summary(&m, CLOSURE_CAP)?;
    Ok((m.coker_dim(), exponent, q.size, q.orbit_count))
}

pub fn cmd_check_moves(
    d: &LinkDiagram,
    seed: u64,
    iterations: usize,
    max_length: usize,
    config: &BatteryConfig,
) -> Result<CheckMovesOut, CliError> {
    let members = config.members(d.num_components())?;
    let before: Vec<_> = members
        .iter()
        .map(|m| observe(d, m.prime, &m.assignments))
        .collect::<Result<_, _>>()?;
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for i in 0..iterations {
        let length = (seed.wrapping_add(i as u64) % (max_length as u64 + 1)) as usize;
        let sites = random_move_sequence(seed.wrapping_add(i as u64), d, length);
        let mut cur = d.clone();
        for site in &sites {
            cur = apply_move(&cur, site)
                .map_err(|e| CliError::usage(format!("generated move failed: {e}")))?;
        }
        for (m, want) in members.iter().zip(&before) {
            let got = observe(&cur, m.prime, &m.assignments)?;
            if got != *want {
                failures.push(format!(
                    "iteration {i}: prime {} assignments {:?}: {:?} != {:?}",
                    m.prime, m.assignments, got, want
                ));
            }
        }
        checked += 1;
    }
    Ok(CheckMovesOut {
        schema: SCHEMA,
        command: "check-moves",
        digest: diagram_digest(d),
        seed,
        iterations,
        max_length,
        battery_members: members.len(),
        sequences_checked: checked,
        failures: failures.clone(),
        ok: failures.is_empty(),
    })
}

pub fn cmd_invariants(d: &LinkDiagram, config: &BatteryConfig) -> Result<InvariantReport, CliError> {
    let p = ModulePresentation::alexander_matrix(d);
    let dec = p.cyclic_decomposition();
    let n = p.generator_count();
    let ideals = if n <= 12 && p.relations().len() <= 12 {
        let mut map = BTreeMap::new();
        for k in 0..=n {
            let gens = p.elementary_ideals(k)?;
            map.insert(
                format!("{k}"),
                gens.iter().map(|g| g.to_string()).collect(),
            );
        }
        Some(map)
    } else {
        None
    };
    let reduced_factors = p.reduce().cyclic_decomposition().map(|dec| {
        dec.torsion_factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
    });
    let members = config.members(d.num_components())?;
    let mut battery = Vec::new();
    for m in &members {
        let sm = specialized(d, m.prime, &m.assignments)?;
        let exponent = coloring_count(d, m.prime, &m.assignments)?;
        let kphi = sm.kernel_phi();
        let summary = quandle_closure_summary(&sm, CLOSURE_CAP)?;
        let axioms_hold = if summary.size <= TABLE_CAP {
            let q = generate_qa_capped(&sm, CLOSURE_CAP)?;
            Some(q.check_axioms().all_hold())
        } else {
            None
        };
        battery.push(BatteryObservationOut {
            prime: m.prime,
            assignments: m.assignments.clone(),
            coker_dim: sm.coker_dim(),
            coloring_exponent: exponent,
            kernel_phi_dim: kphi.dim(),
            quandle_size: summary.size,
            orbit_count: summary.orbit_count,
            axioms_hold,
        });
    }
    Ok(InvariantReport {
        schema: SCHEMA,
        command: "invariants",
        digest: diagram_digest(d),
        num_components: d.num_components(),
        arc_count: d.arc_count(),
        crossing_count: d.crossings().len(),
        decomposition: dec.map(|dec| DecompositionSummaryOut {
            free_rank: dec.free_rank,
            torsion_factors: dec.torsion_factors.iter().map(|f| f.to_string()).collect(),
        }),
        elementary_ideals: ideals,
        reduced_factors,
        battery,
    })
}

pub fn to_stdout_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
