//! Command-line front end: verification sweeps and quotient reports,
//! in plain text or structured JSON.
//!
//! Exit status: `0` when every check passes, `1` when a check fails
//! (the failing names are listed), `2` for invalid flags (through clap).
//! The chart/fan window defaults to `3m` and can be overridden with the
//! `INOUE_AUT_WINDOW` environment variable.

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::autgroup::verify_relations;
use crate::quotient::{quotient_by_kind, QuotientReport};
use crate::report::{CheckSet, CheckStatus};
use crate::surface::{build_h, verify_corollary_1_2, verify_homomorphisms, verify_theorem_1_1, Surface};

#[derive(Debug, Parser)]
#[command(
    name = "inoue-aut",
    about = "Verification engine for automorphism groups and cyclic quotients of parabolic Inoue surfaces S(m, alpha)",
    version
)]
pub struct Cli {
    /// Emit a structured JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuotientKindArg {
    Free,
    Torus,
    Mixed,
    Involution,
    Cover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// The universal cover: the infinite chain of rational curves over a window.
    Pre,
    /// The surface: the length-m cycle and the elliptic curve.
    Post,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the full suite for m (or a range): chart relations,
    /// structure theorems, and homomorphism properties.
    Verify {
        #[arg(long, conflicts_with = "m_range", required_unless_present = "m_range")]
        m: Option<i64>,
        /// Inclusive range "A..B"; the sweep runs parameter points concurrently.
        #[arg(long = "m-range", value_parser = parse_range)]
        m_range: Option<MRange>,
    },
    /// Verify only the structure statements (the theorem and its corollary).
    Structure {
        #[arg(long)]
        m: i64,
    },
    /// Compute a quotient report for one of the typical cyclic subgroups.
    Quotient {
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum)]
        kind: QuotientKindArg,
        /// Order of the cyclic subgroup (torus, mixed, cover).
        #[arg(long)]
        l: Option<i64>,
        /// Index of the subgroup M_j (mixed only).
        #[arg(long)]
        j: Option<i64>,
        /// Root choice: which m-th root of alpha (free) or l-th root of
        /// the cycle class (cover).
        #[arg(long)]
        root: Option<i64>,
    },
    /// Emit the dual graph of the curve configuration in DOT format.
    Dualgraph {
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum)]
        stage: Stage,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct MRange {
    pub lo: i64,
    pub hi: i64,
}

fn parse_range(s: &str) -> Result<MRange, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo < 1 || hi < lo {
        return Err(format!("range {lo}..{hi} is empty or starts below 1"));
    }
    Ok(MRange { lo, hi })
}

/// Window size for chart sweeps: `INOUE_AUT_WINDOW` or the default `3m`.
pub fn window_for(m: i64) -> i64 {
    std::env::var("INOUE_AUT_WINDOW")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(3 * m)
        .max(2)
}

/// The full verification suite for one parameter point.
pub fn verify_suite(m: i64) -> Result<CheckSet, String> {
    let window = window_for(m);
    let surface = Surface::standard(m).map_err(|e| e.to_string())?;
    let mut checks = verify_relations(surface.context(), window).map_err(|e| e.to_string())?;
    let (_, h_checks) = build_h(&surface).map_err(|e| e.to_string())?;
    checks.merge(h_checks);
    checks.merge(verify_theorem_1_1(&surface).map_err(|e| e.to_string())?);
    checks.merge(verify_corollary_1_2(&surface).map_err(|e| e.to_string())?);
    checks.merge(verify_homomorphisms(&surface, window).map_err(|e| e.to_string())?);
    Ok(checks)
}

/// Structure statements only.
pub fn structure_suite(m: i64) -> Result<CheckSet, String> {
    let surface = Surface::standard(m).map_err(|e| e.to_string())?;
    let (_, mut checks) = build_h(&surface).map_err(|e| e.to_string())?;
    checks.merge(verify_theorem_1_1(&surface).map_err(|e| e.to_string())?);
    checks.merge(verify_corollary_1_2(&surface).map_err(|e| e.to_string())?);
    Ok(checks)
}

impl QuotientKindArg {
    fn as_str(&self) -> &'static str {
        match self {
            QuotientKindArg::Free => "free",
            QuotientKindArg::Torus => "torus",
            QuotientKindArg::Mixed => "mixed",
            QuotientKindArg::Involution => "involution",
            QuotientKindArg::Cover => "cover",
        }
    }
}

pub fn quotient_report(
    m: i64,
    kind: QuotientKindArg,
    l: Option<i64>,
    j: Option<i64>,
    root: Option<i64>,
) -> Result<QuotientReport, String> {
    quotient_by_kind(m, kind.as_str(), l, j, root).map_err(|e| e.to_string())
}

fn checks_json(checks: &CheckSet) -> Value {
    Value::Array(
        checks
            .checks()
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "paper_anchor": c.paper_anchor,
                    "status": if c.status == CheckStatus::Pass { "pass" } else { "fail" },
                    "details": c.details,
                })
            })
            .collect(),
    )
}

fn emit_json(command: &str, parameters: Value, checks: &CheckSet, result_label: Option<String>, extra: Option<(&str, Value)>) {
    let mut obj = serde_json::Map::new();
    obj.insert("schema".into(), json!(1));
    obj.insert("command".into(), json!(command));
    obj.insert("parameters".into(), parameters);
    obj.insert("checks".into(), checks_json(checks));
    obj.insert("result_label".into(), result_label.map(Value::String).unwrap_or(Value::Null));
    if let Some((key, value)) = extra {
        obj.insert(key.into(), value);
    }
    println!("{}", serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable"));
}

fn emit_text(checks: &CheckSet, result_label: Option<&str>) {
    for check in checks.checks() {
        let status = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
        };
        let details = if check.details.is_empty() || check.status == CheckStatus::Pass {
            String::new()
        } else {
            format!("  [{}]", check.details)
        };
        println!("[{status}] {} ({}){details}", check.name, check.paper_anchor);
    }
    let failures = checks.failures();
    if failures.is_empty() {
        println!("all {} checks passed", checks.len());
    } else {
        println!(
            "{} of {} checks FAILED: {}",
            failures.len(),
            checks.len(),
            failures
                .iter()
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>()
                .join("; ")
        );
    }
    if let Some(label) = result_label {
        println!("result: {label}");
    }
}

fn dualgraph_dot(m: i64, stage: Stage) -> String {
    match stage {
        Stage::Post => Surface::standard(m)
            .map(|s| s.curve_config().to_dot("surface"))
            .unwrap_or_else(|e| format!("error: {e}")),
        Stage::Pre => {
            let window = window_for(m);
            let mut out = String::from("graph cover {\n");
            out.push_str("  E [label=\"E~ (x = 0 in V)\"];\n");
            for k in -window..=window {
                out.push_str(&format!("  C{} [label=\"C~({k}) (-2)\"];\n", ray_id(k)));
            }
            for k in -window..window {
                out.push_str(&format!("  C{} -- C{};\n", ray_id(k), ray_id(k + 1)));
            }
            out.push_str("}\n");
            out
        }
    }
}

fn ray_id(k: i64) -> String {
    if k < 0 {
        format!("m{}", -k)
    } else {
        format!("{k}")
    }
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify { m, m_range } => {
            let points: Vec<i64> = match (m, m_range) {
                (Some(m), None) => vec![m],
                (None, Some(range)) => (range.lo..=range.hi).collect(),
                _ => vec![],
            };
            let results: Vec<(i64, Result<CheckSet, String>)> = points
                .par_iter()
                .map(|&m| (m, verify_suite(m)))
                .collect();
            let mut all = CheckSet::new();
            for (m, result) in results {
                match result {
                    Ok(checks) => {
                        if points.len() == 1 {
                            all.merge(checks);
                        } else {
                            all.merge_prefixed(&format!("m={m}: "), checks);
                        }
                    }
                    Err(e) => all.push(format!("m={m}: suite construction"), "-", false, e),
                }
            }
            let label = if points.len() == 1 {
                Some(format!("S({}, alpha)", points[0]))
            } else {
                None
            };
            let params = match (m, m_range) {
                (Some(m), _) => json!({"m": m, "window": window_for(m)}),
                (_, Some(r)) => json!({"m_range": format!("{}..{}", r.lo, r.hi)}),
                _ => json!({}),
            };
            if cli.json {
                emit_json("verify", params, &all, label, None);
            } else {
                emit_text(&all, label.as_deref());
            }
            i32::from(!all.all_pass())
        }
        Command::Structure { m } => {
            let result = structure_suite(m);
            match result {
                Ok(checks) => {
                    let label = Some(format!("S({m}, alpha)"));
                    if cli.json {
                        emit_json("structure", json!({"m": m}), &checks, label, None);
                    } else {
                        emit_text(&checks, label.as_deref());
                    }
                    i32::from(!checks.all_pass())
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Command::Quotient { m, kind, l, j, root } => {
            match quotient_report(m, kind, l, j, root) {
                Ok(report) => {
                    let label = Some(report.result.rendered.clone());
                    let params = json!({
                        "m": m,
                        "kind": kind.as_str(),
                        "l": l,
                        "j": j,
                        "root": root,
                    });
                    if cli.json {
                        let report_value =
                            serde_json::to_value(&report).expect("report serializes");
                        emit_json("quotient", params, &report.checks, label, Some(("report", report_value)));
                    } else {
                        for note in &report.notes {
                            println!("note: {note}");
                        }
                        emit_text(&report.checks, label.as_deref());
                    }
                    i32::from(!report.checks.all_pass())
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Command::Dualgraph { m, stage } => {
            let dot = dualgraph_dot(m, stage);
            if cli.json {
                let obj = json!({
                    "schema": 1,
                    "command": "dualgraph",
                    "parameters": {"m": m, "stage": format!("{:?}", stage).to_lowercase()},
                    "checks": [],
                    "result_label": null,
                    "dot": dot,
                });
                println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
            } else {
                print!("{dot}");
            }
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r = parse_range("1..8").unwrap();
        assert_eq!((r.lo, r.hi), (1, 8));
        assert!(parse_range("3").is_err());
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("0..2").is_err());
    }

    #[test]
    fn quotient_examples_match_labels() {
        let report =
            quotient_report(6, QuotientKindArg::Mixed, Some(2), Some(1), None).unwrap();
        assert_eq!(report.result.rendered, "S(3, alpha^2)");
        let report = quotient_report(2, QuotientKindArg::Torus, Some(3), None, None).unwrap();
        assert_eq!(report.result.rendered, "S(6, alpha)");
    }

    #[test]
    fn flag_validation() {
        assert!(quotient_report(4, QuotientKindArg::Free, Some(2), None, None).is_err());
        assert!(quotient_report(4, QuotientKindArg::Torus, None, None, None).is_err());
        assert!(quotient_report(3, QuotientKindArg::Involution, None, None, None).is_err());
        assert!(quotient_report(4, QuotientKindArg::Mixed, Some(3), None, None).is_err());
    }

    #[test]
    fn verify_suite_passes_for_small_m() {
        for m in 1..=4 {
            let checks = verify_suite(m).unwrap();
            assert!(checks.all_pass(), "m={m}: {:?}", checks.failures());
        }
    }

    #[test]
    fn dualgraph_shapes() {
        let post = dualgraph_dot(3, Stage::Post);
        assert!(post.contains("C0 -- C1"));
        let pre = dualgraph_dot(1, Stage::Pre);
        assert!(pre.contains("C~(0) (-2)"));
        assert!(pre.contains("Cm1 -- C0"));
    }
}
