//! One function per subcommand. Each returns the result payload and the
//! exit code to use after the report is written.

use std::collections::BTreeSet;
use std::path::Path;

use netexcite::dual::measurements_suffice;
use netexcite::ident::excitation_bounds;
use netexcite::oracle::{
    brute_disjoint_paths, brute_identifiability, brute_min_covering, OracleBudget,
};
use netexcite::{
    allocate, check_generic_identifiability, greedy_merge, select_measurements, AllocationError,
    Covering, DualModelSet, Edge, ExtendedGraph, MergeStep, ModelError, ModelSet, OracleError,
    VertexId,
};
use serde::Serialize;
use serde_json::Value;

use crate::dot::covering_dot;
use crate::model_file::{LoadError, ModelFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_IDENTIFIABLE: i32 = 3;
pub const EXIT_UNSATISFIABLE: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;
pub const EXIT_DISAGREEMENT: i32 = 6;

/// A command that stopped without a report.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

pub struct Outcome {
    pub result: Value,
    pub code: i32,
}

fn outcome(result: impl Serialize, code: i32) -> Result<Outcome, Failure> {
    Ok(Outcome {
        result: serde_json::to_value(result).expect("results serialize to JSON"),
        code,
    })
}

fn ids<'a>(vs: impl IntoIterator<Item = &'a VertexId>) -> Vec<u32> {
    vs.into_iter().map(|v| v.get()).collect()
}

fn pairs<'a>(es: impl IntoIterator<Item = &'a Edge>) -> Vec<[u32; 2]> {
    es.into_iter()
        .map(|e| [e.tail.get(), e.head.get()])
        .collect()
}

fn trace(steps: &[MergeStep]) -> Vec<[usize; 2]> {
    steps
        .iter()
        .map(|s| {
            let (a, b) = s.one_based();
            [a, b]
        })
        .collect()
}

fn invalid(e: ModelError) -> Failure {
    match e {
        ModelError::Invalid(report) => Failure::new(
            EXIT_INVALID,
            report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("\n"),
        ),
        other => Failure::new(EXIT_INVALID, other.to_string()),
    }
}

fn allocation_failure(e: AllocationError) -> Failure {
    match e {
        AllocationError::Model(m) => invalid(m),
        AllocationError::Unsatisfiable(reason) => Failure::new(EXIT_UNSATISFIABLE, reason),
        AllocationError::Cover(c) => Failure::new(EXIT_INVALID, c.to_string()),
    }
}

/// Parses a model file. Parse problems map to exit 1, range and duplicate
/// problems to exit 2.
pub fn load(text: &str) -> Result<ModelSet, Failure> {
    let file = ModelFile::parse(text).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    file.to_model_set().map_err(|e| match e {
        LoadError::Parse(msg) => Failure::new(EXIT_PARSE, msg),
        LoadError::Invalid(problems) => Failure::new(EXIT_INVALID, problems.join("\n")),
    })
}

fn extended(m: &ModelSet) -> Result<ExtendedGraph, Failure> {
    m.build_extended_graph().map_err(invalid)
}

#[derive(Serialize)]
struct ValidateResult {
    valid: bool,
    violations: Vec<String>,
}

/// Validation reports problems instead of failing on them.
pub fn validate(text: &str) -> Result<Outcome, Failure> {
    let violations: Vec<String> = match load(text) {
        Ok(m) => m
            .validate()
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect(),
        Err(f) if f.code == EXIT_INVALID => f.message.lines().map(str::to_string).collect(),
        Err(f) => return Err(f),
    };
    let valid = violations.is_empty();
    outcome(
        ValidateResult { valid, violations },
        if valid { EXIT_OK } else { EXIT_INVALID },
    )
}

#[derive(Serialize)]
struct VertexRow {
    vertex: u32,
    required: usize,
    achieved: usize,
    passes: bool,
}

#[derive(Serialize)]
struct CheckResult {
    identifiable: bool,
    excited: Vec<u32>,
    stimulated: Vec<u32>,
    per_vertex: Vec<VertexRow>,
    failing_vertices: Vec<u32>,
}

pub fn check(m: &ModelSet) -> Result<Outcome, Failure> {
    let eg = extended(m)?;
    let r = check_generic_identifiability(&eg);
    let result = CheckResult {
        identifiable: r.identifiable,
        excited: ids(eg.excited()),
        stimulated: ids(&eg.stimulated()),
        per_vertex: r
            .per_vertex
            .iter()
            .map(|c| VertexRow {
                vertex: c.vertex.get(),
                required: c.required,
                achieved: c.achieved,
                passes: c.passes(),
            })
            .collect(),
        failing_vertices: ids(&r.failing_vertices),
    };
    let code = if r.identifiable {
        EXIT_OK
    } else {
        EXIT_NOT_IDENTIFIABLE
    };
    outcome(result, code)
}

#[derive(Serialize)]
struct TreeRow {
    index: usize,
    roots: Vec<u32>,
    vertices: Vec<u32>,
    edges: Vec<[u32; 2]>,
}

fn tree_rows(c: &Covering) -> Vec<TreeRow> {
    c.trees()
        .iter()
        .enumerate()
        .map(|(k, t)| TreeRow {
            index: k + 1,
            roots: ids(t.roots()),
            vertices: ids(t.vertices()),
            edges: pairs(t.edges()),
        })
        .collect()
}

#[derive(Serialize)]
struct CoverResult {
    size: usize,
    noise_vertices: Vec<u32>,
    merge_trace: Vec<[usize; 2]>,
    trees: Vec<TreeRow>,
}

fn heuristic_covering(eg: &ExtendedGraph) -> Result<(Covering, Vec<MergeStep>), Failure> {
    if eg.parameterized_edges().is_empty() {
        let empty = Covering::new(Vec::new(), BTreeSet::new()).expect("empty covering");
        return Ok((empty, Vec::new()));
    }
    greedy_merge(eg).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))
}

pub fn cover(m: &ModelSet, emit_dot: Option<&Path>) -> Result<Outcome, Failure> {
    let eg = extended(m)?;
    let (c, steps) = heuristic_covering(&eg)?;
    if let Some(path) = emit_dot {
        std::fs::write(path, covering_dot(&eg, &c)).map_err(|e| {
            Failure::new(EXIT_PARSE, format!("cannot write {}: {e}", path.display()))
        })?;
    }
    outcome(
        CoverResult {
            size: c.len(),
            noise_vertices: ids(eg.noise_vertices()),
            merge_trace: trace(&steps),
            trees: tree_rows(&c),
        },
        EXIT_OK,
    )
}

#[derive(Serialize)]
struct Bounds {
    lower: usize,
    upper: i64,
}

#[derive(Serialize)]
struct AllocateResult {
    excited: Vec<u32>,
    pruned: Vec<u32>,
    verified: bool,
    bounds: Bounds,
    covering_size: usize,
    merge_trace: Vec<[usize; 2]>,
    trees: Vec<TreeRow>,
}

pub fn allocate_cmd(m: &ModelSet) -> Result<Outcome, Failure> {
    let r = allocate(m).map_err(allocation_failure)?;
    outcome(
        AllocateResult {
            excited: ids(&r.excited),
            pruned: ids(&r.pruned),
            verified: r.verified,
            bounds: Bounds {
                lower: r.bounds.lower,
                upper: r.bounds.upper,
            },
            covering_size: r.covering.len(),
            merge_trace: trace(&r.merge_trace),
            trees: tree_rows(&r.covering),
        },
        if r.verified {
            EXIT_OK
        } else {
            EXIT_UNSATISFIABLE
        },
    )
}

#[derive(Serialize)]
struct AntiTreeRow {
    index: usize,
    roots: Vec<u32>,
    edges: Vec<[u32; 2]>,
}

#[derive(Serialize)]
struct MeasureResult {
    measured: Vec<u32>,
    pruned: Vec<u32>,
    verified: bool,
    sufficient: bool,
    bounds: Bounds,
    anti_pseudotrees: Vec<AntiTreeRow>,
}

fn dual_model(m: &ModelSet) -> Result<DualModelSet, Failure> {
    DualModelSet::new(m).map_err(invalid)
}

pub fn allocate_measurements(m: &ModelSet) -> Result<Outcome, Failure> {
    let d = dual_model(m)?;
    let r = select_measurements(&d).map_err(allocation_failure)?;
    let sufficient = measurements_suffice(&d, &r.measured);
    let verified = r.verified && sufficient;
    outcome(
        MeasureResult {
            measured: ids(&r.measured),
            pruned: ids(&r.pruned),
            verified,
            sufficient,
            bounds: Bounds {
                lower: r.lower,
                upper: r.upper as i64,
            },
            anti_pseudotrees: r
                .anti_pseudotrees
                .iter()
                .enumerate()
                .map(|(k, t)| AntiTreeRow {
                    index: k + 1,
                    roots: ids(&t.roots),
                    edges: pairs(&t.edges),
                })
                .collect(),
        },
        if verified {
            EXIT_OK
        } else {
            EXIT_UNSATISFIABLE
        },
    )
}

#[derive(Serialize)]
struct BoundsResult {
    p: usize,
    covering_size: usize,
    excitation: Bounds,
    /// Only defined without noise.
    measurement: Option<Bounds>,
}

pub fn bounds(m: &ModelSet) -> Result<Outcome, Failure> {
    let eg = extended(m)?;
    let (c, _) = heuristic_covering(&eg)?;
    let b = excitation_bounds(&eg, c.len());
    let measurement = if m.noise_columns() == 0 {
        let r = select_measurements(&dual_model(m)?).map_err(allocation_failure)?;
        Some(Bounds {
            lower: r.lower,
            upper: r.upper as i64,
        })
    } else {
        None
    };
    outcome(
        BoundsResult {
            p: eg.p(),
            covering_size: c.len(),
            excitation: Bounds {
                lower: b.lower,
                upper: b.upper,
            },
            measurement,
        },
        EXIT_OK,
    )
}

#[derive(Serialize)]
struct PathRow {
    vertex: u32,
    flow: usize,
    oracle: usize,
    agree: bool,
}

#[derive(Serialize)]
struct CompareResult {
    budget_vertices: usize,
    kappa_oracle: usize,
    heuristic_size: usize,
    covering_agree: bool,
    paths: Vec<PathRow>,
    identifiable: bool,
    identifiable_oracle: bool,
    all_agree: bool,
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::BudgetExceeded(msg) => Failure::new(EXIT_BUDGET, msg),
        other => Failure::new(EXIT_INVALID, other.to_string()),
    }
}

/// The heuristic may use more trees than the optimum but never fewer;
/// path counts and the identifiability verdict must match exactly.
pub fn oracle_compare(m: &ModelSet, max_vertices: usize) -> Result<Outcome, Failure> {
    let eg = extended(m)?;
    let budget = OracleBudget {
        max_vertices,
        ..OracleBudget::default()
    };
    let (c, _) = heuristic_covering(&eg)?;
    let (kappa, _) = brute_min_covering(eg.graph(), eg.parameterized_edges(), &budget)
        .map_err(oracle_failure)?;

    let stimulated = eg.stimulated();
    let mut paths = Vec::new();
    for j in eg.internal_vertices() {
        let targets = eg.extended_in_neighbors(j).expect("internal vertex");
        if targets.is_empty() {
            continue;
        }
        let flow = eg
            .graph()
            .max_vertex_disjoint_paths(&stimulated, &targets)
            .expect("vertices belong to the graph");
        let oracle = brute_disjoint_paths(eg.graph(), &stimulated, &targets, &budget)
            .map_err(oracle_failure)?;
        paths.push(PathRow {
            vertex: j.get(),
            flow,
            oracle,
            agree: flow == oracle,
        });
    }
    let identifiable = check_generic_identifiability(&eg).identifiable;
    let identifiable_oracle = brute_identifiability(&eg, &budget).map_err(oracle_failure)?;

    let covering_agree = kappa <= c.len();
    let all_agree =
        covering_agree && paths.iter().all(|p| p.agree) && identifiable == identifiable_oracle;
    outcome(
        CompareResult {
            budget_vertices: max_vertices,
            kappa_oracle: kappa,
            heuristic_size: c.len(),
            covering_agree,
            paths,
            identifiable,
            identifiable_oracle,
            all_agree,
        },
        if all_agree {
            EXIT_OK
        } else {
            EXIT_DISAGREEMENT
        },
    )
}
