//! Report pipeline behind the `spin` binary: parse curve specs, dispatch
//! to the enumeration, symbolic and verification modules, and emit
//! deterministic JSON or text reports with meaningful exit codes.
//!
//! Exit codes: 0 all verifications pass, 1 a verification failed (the
//! report carries the first witness), 2 input error.

use rand::Rng;
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write;

use crate::dualgraph::{DualGraph, Vertex};
use crate::enriched::{
    proper_subsets, stratification_report, verify_torsor_bijection, TwoComponentCurve,
};
use crate::localalgebra::{blowup_charts, dx_ideal, invariant_presentation_check,
    jacobian_rank_at_origin};
use crate::spinenum::spin_table;
use crate::{Error, Result};

pub const SCHEMA: &str = "spin-moduli/1";

/// Hard caps on enumeration sizes.
pub const MAX_SUPPORT_DELTA: usize = 20;
pub const MAX_SYMBOLIC_DELTA: usize = 8;
pub const MAX_TORSOR_DELTA: usize = 6;
pub const MAX_Q: u64 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub enum Command {
    /// Spin table of a curve spec file.
    Supports { input: std::path::PathBuf },
    /// Local model: ideal, blow-up charts, Jacobian rank.
    Local { delta: usize },
    /// Stratification report of a two-component curve.
    Strata { g1: u32, g2: u32, delta: usize, q: Option<u64> },
    /// Exhaustive torsor verification over F_q.
    Verify { g1: u32, g2: u32, delta: usize, q: u64 },
    /// The full verification gate at desk-scale bounds.
    All { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub jobs: usize,
}

fn check_q(q: u64) -> Result<()> {
    if q > MAX_Q {
        return Err(Error::Bounds(format!("q must be <= {MAX_Q}")));
    }
    crate::scalars::FqElem::new(0, q).map(|_| ())
}

#[derive(Serialize)]
struct SupportRow {
    delta: Vec<usize>,
    root_count: u128,
    multiplicity: u64,
    singular: Option<bool>,
}

#[derive(Serialize)]
struct SupportsReport {
    schema: &'static str,
    genus: u32,
    weighted_total: u128,
    supports: Vec<SupportRow>,
}

fn supports_report(g: &DualGraph) -> Result<SupportsReport> {
    let table = spin_table(g)?;
    Ok(SupportsReport {
        schema: SCHEMA,
        genus: table.genus,
        weighted_total: table.weighted_total,
        supports: table
            .supports
            .into_iter()
            .map(|s| SupportRow {
                delta: s.delta,
                root_count: s.root_count,
                multiplicity: s.multiplicity,
                singular: s.is_singular_point,
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct ChartReport {
    s: usize,
    substitution: Vec<(String, String)>,
}

#[derive(Serialize)]
struct LocalReport {
    schema: &'static str,
    delta: usize,
    generators: Vec<String>,
    charts: Vec<ChartReport>,
    residuals_all_zero: bool,
    jacobian_rank_at_origin: usize,
    singular_at_origin: bool,
}

fn local_report(delta: usize) -> Result<LocalReport> {
    if delta > MAX_SYMBOLIC_DELTA {
        return Err(Error::Bounds(format!(
            "symbolic charts capped at delta <= {MAX_SYMBOLIC_DELTA}"
        )));
    }
    let ideal = dx_ideal(delta)?;
    // blowup_charts certifies all residuals vanish
    let charts = blowup_charts(delta)?;
    let rank = jacobian_rank_at_origin(&ideal)?;
    Ok(LocalReport {
        schema: SCHEMA,
        delta,
        generators: ideal.generators.iter().map(|g| g.to_string()).collect(),
        charts: charts
            .iter()
            .map(|c| ChartReport {
                s: c.s,
                substitution: c
                    .substitution()
                    .map(|(&(i, j), p)| (format!("w{i}{j}"), p.to_string()))
                    .collect(),
            })
            .collect(),
        residuals_all_zero: true,
        jacobian_rank_at_origin: rank,
        singular_at_origin: rank == 0,
    })
}

#[derive(Serialize)]
struct StrataReport {
    schema: &'static str,
    #[serde(flatten)]
    report: crate::enriched::StratificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    label_counts_over_fq: Option<Vec<(Vec<usize>, u128)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    g1: u32,
    g2: u32,
    delta: usize,
    q: u64,
    strata: Vec<crate::enriched::TorsorReport>,
    all_passed: bool,
}

fn verify_report(g1: u32, g2: u32, delta: usize, q: u64) -> Result<VerifyReport> {
    if delta > MAX_TORSOR_DELTA {
        return Err(Error::Bounds(format!(
            "exhaustive torsor checks capped at delta <= {MAX_TORSOR_DELTA}"
        )));
    }
    check_q(q)?;
    let curve = TwoComponentCurve::new(g1, g2, delta)?;
    let mut strata = Vec::new();
    for support in proper_subsets(delta) {
        strata.push(verify_torsor_bijection(&curve, &support, q)?);
    }
    let all_passed = strata.iter().all(|r| r.passed);
    Ok(VerifyReport { schema: SCHEMA, g1, g2, delta, q, strata, all_passed })
}

/// One line of the aggregate gate.
#[derive(Serialize)]
pub struct GateLine {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A seeded random connected multigraph: at most 4 vertices, at most 6
/// edges, genera at most 3, loops allowed. Connectivity by construction
/// (random spanning tree first).
pub fn random_connected_graph(rng: &mut impl Rng) -> DualGraph {
    let n = rng.gen_range(1..=4usize);
    let vertices: Vec<Vertex> = (0..n)
        .map(|i| Vertex { id: format!("C{}", i + 1), genus: rng.gen_range(0..=3) })
        .collect();
    let ids: Vec<String> = vertices.iter().map(|v| v.id.clone()).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let extra = rng.gen_range(0..=(6 - edges.len()));
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let named: Vec<(&str, &str)> =
        edges.iter().map(|&(u, v)| (ids[u].as_str(), ids[v].as_str())).collect();
    DualGraph::new(vertices, &named).expect("spanning tree keeps the graph connected")
}

/// The full verification gate: degree identities, chart smoothness,
/// invariant presentation, torsor bijections and the hyperplane
/// stratification identity, at the desk-scale bounds.
pub fn verify_all(seed: u64) -> Vec<GateLine> {
    use rand::SeedableRng;
    let mut lines = Vec::new();
    let mut push = |name: String, passed: bool, witness: Option<String>| {
        lines.push(GateLine { name, passed, witness });
    };

    // degree identity on two-component curves
    let mut failure = None;
    for g1 in 1..=3u32 {
        for g2 in 1..=3u32 {
            for delta in 1..=6usize {
                let g = DualGraph::two_component(g1, g2, delta).unwrap();
                if let Err(e) = spin_table(&g) {
                    failure = Some(format!("g1={g1} g2={g2} delta={delta}: {e}"));
                }
            }
        }
    }
    push("degree-identity-two-component".into(), failure.is_none(), failure);

    // degree identity on seeded random graphs
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    for i in 0..100 {
        let g = random_connected_graph(&mut rng);
        if let Err(e) = spin_table(&g) {
            failure = Some(format!("sample {i}: {e}"));
        }
    }
    push("degree-identity-random-graphs".into(), failure.is_none(), failure);

    // chart smoothness and Jacobian rank
    let mut failure = None;
    for delta in 2..=6 {
        match (blowup_charts(delta), jacobian_rank_at_origin(&dx_ideal(delta).unwrap())) {
            (Ok(_), Ok(0)) => {}
            (Err(e), _) => failure = Some(format!("delta={delta}: {e}")),
            (_, Ok(r)) => failure = Some(format!("delta={delta}: jacobian rank {r} != 0")),
            (_, Err(e)) => failure = Some(format!("delta={delta}: {e}")),
        }
    }
    push("chart-smoothness".into(), failure.is_none(), failure);

    // invariant-ring presentation
    let mut failure = None;
    for delta in 2..=4 {
        match invariant_presentation_check(delta, 6) {
            Ok(r) if r.passed => {}
            Ok(r) => failure = Some(format!("delta={delta}: {r:?}")),
            Err(e) => failure = Some(format!("delta={delta}: {e}")),
        }
    }
    push("invariant-presentation".into(), failure.is_none(), failure);

    // torsor bijections
    let mut failure = None;
    for delta in 2..=4usize {
        for q in [5u64, 13] {
            match verify_report(1, 1, delta, q) {
                Ok(r) if r.all_passed => {}
                Ok(r) => {
                    let bad = r.strata.iter().find(|s| !s.passed).unwrap();
                    failure = Some(format!(
                        "delta={delta} q={q} I={:?}: {:?}",
                        bad.support, bad.failure_witness
                    ));
                }
                Err(e) => failure = Some(format!("delta={delta} q={q}: {e}")),
            }
        }
    }
    push("torsor-bijections".into(), failure.is_none(), failure);

    // hyperplane stratification identity
    let mut failure = None;
    for q in [5u128, 13] {
        for delta in 1..=6usize {
            let total: u128 = proper_subsets(delta)
                .iter()
                .map(|s| (q - 1).pow((delta - s.len() - 1) as u32))
                .sum();
            let expected = (q.pow(delta as u32) - 1) / (q - 1);
            if total != expected {
                failure = Some(format!("delta={delta} q={q}: {total} != {expected}"));
            }
        }
    }
    push("hyperplane-stratification".into(), failure.is_none(), failure);

    lines
}

fn emit<T: Serialize>(out: &mut dyn Write, format: OutputFormat, value: &T, text: &str) -> Result<()> {
    match format {
        OutputFormat::Json => {
            let json = serde_json::to_string_pretty(value)
                .map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(out, "{json}")?;
        }
        OutputFormat::Text => {
            write!(out, "{text}")?;
        }
    }
    Ok(())
}

fn run_inner(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    if config.jobs == 0 {
        return Err(Error::Bounds("jobs must be >= 1".into()));
    }
    match &config.command {
        Command::Supports { input } => {
            let text = std::fs::read_to_string(input)?;
            let graph = DualGraph::from_json(&text)?;
            if graph.edge_count() > MAX_SUPPORT_DELTA {
                return Err(Error::Bounds(format!(
                    "support enumeration capped at {MAX_SUPPORT_DELTA} edges"
                )));
            }
            let report = supports_report(&graph)?;
            let mut t = String::new();
            writeln!(t, "genus {}  weighted total {}", report.genus, report.weighted_total)
                .unwrap();
            for s in &report.supports {
                writeln!(
                    t,
                    "  Delta={:?}  roots={}  mult={}{}",
                    s.delta,
                    s.root_count,
                    s.multiplicity,
                    match s.singular {
                        Some(true) => "  [singular]",
                        _ => "",
                    }
                )
                .unwrap();
            }
            emit(out, config.format, &report, &t)?;
            Ok(0)
        }
        Command::Local { delta } => {
            let report = local_report(*delta)?;
            let mut t = String::new();
            writeln!(t, "D_X ideal, delta = {}", report.delta).unwrap();
            for g in &report.generators {
                writeln!(t, "  {g}").unwrap();
            }
            for c in &report.charts {
                writeln!(t, "chart U_{}:", c.s).unwrap();
                for (w, image) in &c.substitution {
                    writeln!(t, "  {w} = {image}").unwrap();
                }
            }
            writeln!(t, "residuals all zero: {}", report.residuals_all_zero).unwrap();
            writeln!(
                t,
                "jacobian rank at origin: {} (singular: {})",
                report.jacobian_rank_at_origin, report.singular_at_origin
            )
            .unwrap();
            emit(out, config.format, &report, &t)?;
            Ok(0)
        }
        Command::Strata { g1, g2, delta, q } => {
            if let Some(q) = q {
                check_q(*q)?;
            }
            let curve = TwoComponentCurve::new(*g1, *g2, *delta)?;
            let report = stratification_report(&curve);
            let counts = q.map(|q| crate::enriched::enriched_count(&curve, q));
            let mut t = String::new();
            writeln!(
                t,
                "g1={} g2={} delta={}  genus {}  |S_C^sing| = {}",
                report.g1, report.g2, report.delta, report.genus, report.singular_spin_count
            )
            .unwrap();
            for row in &report.rows {
                writeln!(
                    t,
                    "  {}  torus dim {}  signs 2^{}  J2 order {}  in H{:?} off H{:?}",
                    row.support_name,
                    row.torus_dim,
                    row.sign_exponent,
                    row.j2_order,
                    row.contained_in,
                    row.avoids
                )
                .unwrap();
            }
            if let (Some(counts), Some(q)) = (&counts, q) {
                let total: u128 = counts.iter().map(|(_, n)| n).sum();
                writeln!(t, "label counts over F_{q} (total {total}):").unwrap();
                for (support, n) in counts {
                    writeln!(t, "  I={support:?}: {n}").unwrap();
                }
            }
            let wrapped =
                StrataReport { schema: SCHEMA, report, label_counts_over_fq: counts, q: *q };
            emit(out, config.format, &wrapped, &t)?;
            Ok(0)
        }
        Command::Verify { g1, g2, delta, q } => {
            let report = verify_report(*g1, *g2, *delta, *q)?;
            let mut t = String::new();
            for s in &report.strata {
                writeln!(
                    t,
                    "stratum I={:?}: labels={} per-xi={} {}",
                    s.support,
                    s.label_count,
                    s.per_xi_cardinality,
                    if s.passed { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            writeln!(t, "{}", if report.all_passed { "all strata PASS" } else { "FAILURE" })
                .unwrap();
            emit(out, config.format, &report, &t)?;
            Ok(if report.all_passed { 0 } else { 1 })
        }
        Command::All { seed } => {
            let lines = verify_all(*seed);
            let all = lines.iter().all(|l| l.passed);
            let mut t = String::new();
            for l in &lines {
                writeln!(
                    t,
                    "{} {}{}",
                    if l.passed { "PASS" } else { "FAIL" },
                    l.name,
                    l.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default()
                )
                .unwrap();
            }
            #[derive(Serialize)]
            struct AllReport {
                schema: &'static str,
                checks: Vec<GateLine>,
                all_passed: bool,
            }
            emit(out, config.format, &AllReport { schema: SCHEMA, checks: lines, all_passed: all }, &t)?;
            Ok(if all { 0 } else { 1 })
        }
    }
}

/// Run a command; returns the process exit code. Input errors produce exit
/// code 2 with a single diagnostic line and no report.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> i32 {
    match run_inner(config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn run_to_string(config: &RunConfig) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(config, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn verify_command_passes() {
        let config = RunConfig {
            command: Command::Verify { g1: 1, g2: 1, delta: 2, q: 5 },
            format: OutputFormat::Text,
            jobs: 1,
        };
        let (code, text) = run_to_string(&config);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("labels=128"));
    }

    #[test]
    fn local_command_reports_singularity() {
        let config = RunConfig {
            command: Command::Local { delta: 3 },
            format: OutputFormat::Json,
            jobs: 1,
        };
        let (code, text) = run_to_string(&config);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["charts"].as_array().unwrap().len(), 3);
        assert_eq!(v["jacobian_rank_at_origin"], 0);
        assert_eq!(v["singular_at_origin"], true);
    }

    #[test]
    fn input_errors_exit_2() {
        let config = RunConfig {
            command: Command::Supports { input: "/nonexistent/curve.json".into() },
            format: OutputFormat::Text,
            jobs: 1,
        };
        let (code, text) = run_to_string(&config);
        assert_eq!(code, 2);
        assert!(text.starts_with("error:"));

        let config = RunConfig {
            command: Command::Verify { g1: 1, g2: 1, delta: 2, q: 9 },
            format: OutputFormat::Text,
            jobs: 1,
        };
        assert_eq!(run_to_string(&config).0, 2);

        let config = RunConfig {
            command: Command::Strata { g1: 1, g2: 1, delta: 0, q: None },
            format: OutputFormat::Text,
            jobs: 1,
        };
        assert_eq!(run_to_string(&config).0, 2);
    }

    #[test]
    fn output_is_deterministic() {
        let config = RunConfig {
            command: Command::Strata { g1: 1, g2: 1, delta: 3, q: Some(5) },
            format: OutputFormat::Json,
            jobs: 1,
        };
        let a = run_to_string(&config);
        let b = run_to_string(&config);
        assert_eq!(a, b);
    }

    #[test]
    fn random_graphs_are_connected_and_bounded() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_connected_graph(&mut rng);
            assert!(g.vertex_count() <= 4);
            assert!(g.edge_count() <= 6);
            assert!(g.vertices().iter().all(|v| v.genus <= 3));
        }
    }

    #[test]
    fn gate_passes() {
        let lines = verify_all(42);
        assert!(lines.iter().all(|l| l.passed), "{:?}", lines.iter().filter(|l| !l.passed).map(|l| &l.name).collect::<Vec<_>>());
    }
}
