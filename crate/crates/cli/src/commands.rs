use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use cwasp::dp::{dp_asp_run, dp_classical_run, DpOptions, MAX_LABEL};
use cwasp::expr::{
    compact_labels, heuristic_expression, join_labels, trivial_expression, validate_against, CwdExpression,
    ValidationError,
};
use cwasp::gen::{
    gen_grid_program, gen_pclique, gen_random_program, gen_random_qbf, reduce_pclique_to_asp, reduce_qbf_to_asp,
    KPartiteGraph, PartProbabilities, QbfEA,
};
use cwasp::graph::{
    cycle_rank_with_bound, dependency_graph, homogeneous_orientations, incidence_graph, is_cycle_rank_at_most,
    signed_incidence_graph, symmetric_closure, Digraph, DigraphJson, OrientationOptions, DEFAULT_EXACT_BOUND,
};
use cwasp::oracle::Oracle;
use cwasp::program::Program;
use serde_json::{json, Value};

use crate::{
    Command, Construction, ExprCommand, GenCommand, GraphArgs, GraphFormat, GraphKind, GraphSource, MeasureCommand,
    OracleArgs, OracleMode, SolveArgs, SolveMode, ValidateArgs,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Negative = 1,
    Invalid = 3,
}

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Solve(args) => solve(args),
        Command::Oracle(args) => oracle(args),
        Command::Validate(args) => validate(args),
        Command::Measure(m) => measure(m),
        Command::Graph(args) => graph(args),
        Command::Gen(g) => generate(g),
        Command::Expr(e) => expression(e),
    }
}

fn print(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_program(path: &Path) -> Result<Program> {
    Program::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_expr(path: &Path) -> Result<CwdExpression> {
    CwdExpression::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Writes `text` to `out` and reports the path, or inlines the text.
fn emit(out: Option<&PathBuf>, key: &str, text: &str, report: &mut serde_json::Map<String, Value>) -> Result<()> {
    match out {
        Some(path) => {
            write(path, text)?;
            report.insert(key.to_string(), json!(path.display().to_string()));
        }
        None => {
            report.insert(key.to_string(), json!(text));
        }
    }
    Ok(())
}

fn mismatch(err: ValidationError) -> Result<Status> {
    match err {
        ValidationError::Mismatch(report) => {
            print(&json!({ "status": "mismatch", "report": report }));
            Ok(Status::Invalid)
        }
        other => Err(other.into()),
    }
}

fn decided(decision: bool) -> Status {
    if decision {
        Status::Ok
    } else {
        Status::Negative
    }
}

fn solve(args: SolveArgs) -> Result<Status> {
    let program = load_program(&args.program)?;
    let e = match (&args.expr, args.auto_expr) {
        (Some(path), _) => load_expr(path)?,
        (None, Some(Construction::Trivial)) => trivial_expression(&program)?,
        (None, Some(Construction::Heuristic)) => heuristic_expression(&program)?,
        (None, None) => unreachable!("clap requires one of --expr and --auto-expr"),
    };
    if let Err(err) = validate_against(&e, &program) {
        return mismatch(err);
    }
    let compacted = e.labels().last().is_some_and(|&l| l > MAX_LABEL);
    let e = if compacted { compact_labels(&e) } else { e };
    let options = DpOptions { trace: args.trace.is_some() };
    let (decision, stats, trace) = match args.mode {
        SolveMode::Classical => {
            let run = dp_classical_run(&e, options)?;
            (run.decision(), run.stats, run.trace.map(|t| json!(t)))
        }
        SolveMode::Asp => {
            let run = dp_asp_run(&e, options)?;
            (run.decision(), run.stats, run.trace.map(|t| json!(t)))
        }
    };
    if let (Some(path), Some(trace)) = (&args.trace, trace) {
        write(path, &serde_json::to_string_pretty(&trace)?)?;
    }
    let mut out = json!({
        "mode": match args.mode { SolveMode::Classical => "classical", SolveMode::Asp => "asp" },
        "decision": decision,
        "width": e.width(),
        "nodes": e.len(),
        "table_sizes": stats.table_sizes,
        "max_table_size": stats.max_table_size,
        "labels_compacted": compacted,
    });
    if let Some(g) = stats.max_gamma_size {
        out["max_gamma_size"] = json!(g);
    }
    print(&out);
    Ok(decided(decision))
}

fn oracle(args: OracleArgs) -> Result<Status> {
    let program = load_program(&args.program)?;
    let oracle = Oracle::with_bound(args.bound);
    let (mode, sets) = match args.mode {
        OracleMode::Models => ("models", oracle.enumerate_models(&program)?),
        OracleMode::Answersets => ("answersets", oracle.enumerate_answer_sets(&program)?),
    };
    let named: Vec<Vec<&str>> = sets.iter().map(|s| program.atom_names(s)).collect();
    print(&json!({ "mode": mode, "count": sets.len(), "sets": named }));
    Ok(decided(!sets.is_empty()))
}

fn validate(args: ValidateArgs) -> Result<Status> {
    let program = load_program(&args.program)?;
    let e = load_expr(&args.expr)?;
    match validate_against(&e, &program) {
        Ok(()) => {
            print(&json!({ "status": "ok", "width": e.width(), "nodes": e.len() }));
            Ok(Status::Ok)
        }
        Err(err) => mismatch(err),
    }
}

fn load_digraph(source: &GraphSource) -> Result<Digraph> {
    match (&source.graph, &source.program) {
        (Some(path), _) => {
            let json: DigraphJson =
                serde_json::from_str(&read(path)?).with_context(|| format!("in {}", path.display()))?;
            Ok(Digraph::from_json(json)?)
        }
        (None, Some(path)) => Ok(dependency_graph(&load_program(path)?)),
        (None, None) => unreachable!("clap requires a graph source"),
    }
}

/// Exact cycle-rank: memoized search on small graphs, otherwise the
/// smallest bound the branch-and-bound test accepts.
fn exact_cycle_rank(d: &Digraph) -> Result<u32> {
    if d.vertex_count() <= DEFAULT_EXACT_BOUND {
        return Ok(cycle_rank_with_bound(d, DEFAULT_EXACT_BOUND)?);
    }
    let mut w = 0;
    while !is_cycle_rank_at_most(d, w)? {
        w += 1;
    }
    Ok(w)
}

fn measure(command: MeasureCommand) -> Result<Status> {
    match command {
        MeasureCommand::Cyclerank { source, bound } => {
            let d = load_digraph(&source)?;
            let value = cycle_rank_with_bound(&d, bound)?;
            print(&json!({ "measure": "cyclerank", "vertices": d.vertex_count(), "value": value }));
        }
        MeasureCommand::Uncyclerank { source, bound } => {
            let d = symmetric_closure(&load_digraph(&source)?);
            let value = cycle_rank_with_bound(&d, bound)?;
            print(&json!({ "measure": "uncyclerank", "vertices": d.vertex_count(), "value": value }));
        }
        MeasureCommand::Homogeneous { program, max_exhaustive_groups, samples, seed } => {
            let program = load_program(&program)?;
            let options = OrientationOptions { max_exhaustive_groups, samples, seed };
            let orientations = homogeneous_orientations(&program, options);
            let (groups, exhaustive) = (orientations.groups().len(), orientations.is_exhaustive());
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for d in orientations {
                *counts.entry(exact_cycle_rank(&d)?).or_default() += 1;
            }
            let total: usize = counts.values().sum();
            print(&json!({
                "measure": "homogeneous",
                "groups": groups,
                "exhaustive": exhaustive,
                "orientations": total,
                "max_cycle_rank": counts.keys().last(),
                "cycle_rank_counts": counts.iter().map(|(r, c)| (r.to_string(), *c)).collect::<BTreeMap<_, _>>(),
            }));
        }
    }
    Ok(Status::Ok)
}

fn graph(args: GraphArgs) -> Result<Status> {
    let program = load_program(&args.program)?;
    if !args.join.is_empty() && !matches!(args.kind, GraphKind::Sinc) {
        bail!("--join applies to the signed incidence graph only");
    }
    let (json, dot) = match args.kind {
        GraphKind::Dep => {
            let d = dependency_graph(&program);
            (json!(d.to_json()), d.to_dot())
        }
        GraphKind::Inc => {
            let g = incidence_graph(&program);
            (json!(g.to_json()), g.to_dot())
        }
        GraphKind::Sinc => {
            let mut g = signed_incidence_graph(&program);
            if !args.join.is_empty() {
                g = g.join_signs(&args.join);
            }
            (json!(g.to_json()), g.to_dot())
        }
    };
    match args.format {
        GraphFormat::Json => print(&json),
        GraphFormat::Dot => print(&json!({ "dot": dot })),
    }
    Ok(Status::Ok)
}

fn program_report(p: &Program, out: Option<&PathBuf>) -> Result<serde_json::Map<String, Value>> {
    let mut report = serde_json::Map::new();
    report.insert("atoms".into(), json!(p.atoms.len()));
    report.insert("rules".into(), json!(p.rules.len()));
    emit(out, "program", &p.to_string(), &mut report)?;
    Ok(report)
}

fn generate(command: GenCommand) -> Result<Status> {
    let report = match command {
        GenCommand::Qbf2asp { qbf, out } => {
            let phi = QbfEA::parse(&read(&qbf)?).with_context(|| format!("in {}", qbf.display()))?;
            program_report(&reduce_qbf_to_asp(&phi), out.as_ref())?
        }
        GenCommand::Pclique { graph, k, part_size, density, seed, out, expr_out, instance_out } => {
            let g = match (graph, k) {
                (Some(path), _) => {
                    KPartiteGraph::from_json(&read(&path)?).with_context(|| format!("in {}", path.display()))?
                }
                (None, Some(k)) => {
                    if !(0.0..=1.0).contains(&density) {
                        bail!("density must lie in [0, 1]");
                    }
                    gen_pclique(k, part_size, density, seed)
                }
                (None, None) => unreachable!("clap requires --graph or --k"),
            };
            let (p, e) = reduce_pclique_to_asp(&g);
            let mut report = program_report(&p, out.as_ref())?;
            report.insert("k".into(), json!(g.k()));
            report.insert("width".into(), json!(e.width()));
            emit(expr_out.as_ref(), "expr", &e.to_string(), &mut report)?;
            emit(instance_out.as_ref(), "instance", &g.to_json(), &mut report)?;
            report
        }
        GenCommand::Grid { n, out } => {
            if n == 0 {
                bail!("grid size must be positive");
            }
            program_report(&gen_grid_program(n), out.as_ref())?
        }
        GenCommand::RandomProgram { atoms, rules, head, pos, neg, seed, out } => {
            let probs = [head, pos, neg];
            if probs.iter().any(|p| !(0.0..=1.0).contains(p)) || probs.iter().sum::<f64>() > 1.0 {
                bail!("part probabilities must lie in [0, 1] and sum to at most 1");
            }
            program_report(&gen_random_program(atoms, rules, PartProbabilities { head, pos, neg }, seed), out.as_ref())?
        }
        GenCommand::RandomQbf { exists, forall, terms, seed, out } => {
            let phi = gen_random_qbf(exists, forall, terms, seed);
            let mut report = serde_json::Map::new();
            report.insert("terms".into(), json!(phi.terms().len()));
            emit(out.as_ref(), "qbf", &phi.to_string(), &mut report)?;
            report
        }
    };
    print(&Value::Object(report));
    Ok(Status::Ok)
}

fn expression(command: ExprCommand) -> Result<Status> {
    let (e, out) = match command {
        ExprCommand::Trivial { program, out } => (trivial_expression(&load_program(&program)?)?, out),
        ExprCommand::Heuristic { program, out } => (heuristic_expression(&load_program(&program)?)?, out),
        ExprCommand::Join { expr, signs, out } => {
            let e = load_expr(&expr)?;
            e.evaluate().map_err(|err| anyhow!(err).context(format!("in {}", expr.display())))?;
            (join_labels(&e, &signs), out)
        }
    };
    let mut report = serde_json::Map::new();
    report.insert("width".into(), json!(e.width()));
    report.insert("nodes".into(), json!(e.len()));
    emit(out.as_ref(), "expr", &e.to_string(), &mut report)?;
    print(&Value::Object(report));
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cwasp::graph::Vertex;

    fn cycle(n: usize) -> Digraph {
        let vertices = (0..n).map(|i| Vertex::atom(format!("v{i}"))).collect();
        Digraph::new(vertices, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn exact_cycle_rank_beyond_the_memoized_bound() {
        assert_eq!(exact_cycle_rank(&cycle(5)).unwrap(), 1);
        assert_eq!(exact_cycle_rank(&cycle(40)).unwrap(), 1);
        assert_eq!(exact_cycle_rank(&symmetric_closure(&cycle(3))).unwrap(), 2);
    }

    #[test]
    fn status_codes() {
        assert_eq!(decided(true) as u8, 0);
        assert_eq!(decided(false) as u8, 1);
        assert_eq!(Status::Invalid as u8, 3);
    }
}
