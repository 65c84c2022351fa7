//! `bracelab` — build, analyze, enumerate, and verify finite skew braces.
//!
//! Exit codes: 0 on success, 1 when a check or assertion fails (including
//! exhausted search budgets), 2 on usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bracelab::brace::SkewBrace;
use bracelab::budget::Budget;
use bracelab::catalog::{build, parse_spec};
use bracelab::census::{enumerate_braces, family_tags, CensusOptions};
use bracelab::error::Error;
use bracelab::graph::{lambda_graph, theta_graph, CdGraph};
use bracelab::group::find_isomorphism;
use bracelab::groups16::groups_of_order;
use bracelab::io;
use bracelab::verify;
use bracelab::ybe::{solution_of, theta_conjugation_identity_check, verify_ybe};

/// Orders above this need an explicit --budget before `census` will start.
const CENSUS_DEFAULT_LIMIT: usize = 12;

#[derive(Parser)]
#[command(
    name = "bracelab",
    version,
    about = "Workbench for finite skew braces and their orbit graphs"
)]
struct Cli {
    /// Node budget for enumeration and isomorphism searches.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,

    /// Directory for JSON artifacts (created if missing).
    #[arg(long, global = true, value_name = "DIR")]
    emit_json: Option<PathBuf>,

    /// Directory for DOT graph files (created if missing).
    #[arg(long, global = true, value_name = "DIR")]
    emit_dot: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a skew brace from a family spec and print it as JSON.
    ///
    /// Specs look like "example:z12_cyclic", "triv:S3", "p2:3 p=5",
    /// "pq:F p=5 q=2", or "onevertex:J i=2 d=3".
    Build { spec: String },
    /// Print the invariants and both orbit graphs of a skew brace.
    ///
    /// The input is either a family spec or a path to a brace JSON file.
    Analyze { input: String },
    /// Enumerate the skew braces of order N up to isomorphism.
    Census { n: usize },
    /// Run a named verification suite, or "all".
    Verify { suite: String },
    /// Emit the Yang–Baxter solution map of a skew brace and check it.
    Solution { input: String },
}

enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// A check, assertion, or budget failed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BadParameters(_)
            | Error::UnknownName(_)
            | Error::InvalidInput(_)
            | Error::UnsupportedOrder(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let budget = match cli.budget {
        Some(n) => Budget::new(n),
        None => Budget::default(),
    };
    match &cli.command {
        Command::Build { spec } => cmd_build(cli, &budget, spec),
        Command::Analyze { input } => cmd_analyze(cli, &budget, input),
        Command::Census { n } => cmd_census(cli, &budget, *n),
        Command::Verify { suite } => cmd_verify(cli, &budget, suite),
        Command::Solution { input } => cmd_solution(cli, input),
    }
}

/// File-name slug for a spec label: non-alphanumerics collapse to '-'.
fn slug(label: &str) -> String {
    let mut out = String::new();
    for c in label.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c);
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_matches('-').to_string()
}

fn write_artifact(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn emit_graphs(cli: &Cli, label: &str, lambda: &CdGraph, theta: &CdGraph) -> Result<(), Failure> {
    if let Some(dir) = &cli.emit_dot {
        let base = slug(label);
        write_artifact(dir, &format!("{base}.lambda.dot"), &io::graph_to_dot(lambda, "lambda"))?;
        write_artifact(dir, &format!("{base}.theta.dot"), &io::graph_to_dot(theta, "theta"))?;
    }
    Ok(())
}

/// Resolve `analyze`/`solution` input: an existing file is parsed as brace
/// JSON, anything else is treated as a family spec.
fn load_brace(input: &str) -> Result<(SkewBrace, String), Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {input}: {e}")))?;
        let (brace, name) = io::brace_from_json(&text).map_err(|e| match e {
            Error::InvalidInput(msg) => Failure::Usage(format!("{input}: {msg}")),
            other => Failure::Usage(format!("{input}: {other}")),
        })?;
        let label = name.unwrap_or_else(|| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "brace".to_string())
        });
        Ok((brace, label))
    } else {
        let spec = parse_spec(input)?;
        let brace = build(&spec)?;
        Ok((brace, spec.to_string()))
    }
}

fn cmd_build(cli: &Cli, _budget: &Budget, spec_text: &str) -> Result<(), Failure> {
    let spec = parse_spec(spec_text)?;
    let brace = build(&spec)?;
    let label = spec.to_string();
    let json = io::brace_to_json(&brace, Some(&label));
    println!("{json}");
    if let Some(dir) = &cli.emit_json {
        write_artifact(dir, &format!("{}.brace.json", slug(&label)), &json)?;
    }
    emit_graphs(cli, &label, &lambda_graph(&brace), &theta_graph(&brace))?;
    Ok(())
}

/// Component sizes and diameters, sorted by (size, diameter) for display.
fn graph_summary(g: &CdGraph) -> String {
    if g.vertices.is_empty() {
        return "no vertices".to_string();
    }
    let mut pairs: Vec<(usize, usize)> = g
        .components
        .iter()
        .zip(&g.diameters)
        .map(|(c, &d)| (c.len(), d))
        .collect();
    pairs.sort_unstable();
    let sizes: Vec<usize> = pairs.iter().map(|&(s, _)| s).collect();
    let diameters: Vec<usize> = pairs.iter().map(|&(_, d)| d).collect();
    let counted = |k: usize, one: &str, many: &str| {
        format!("{k} {}", if k == 1 { one } else { many })
    };
    format!(
        "{}, {}; components {:?}; diameters {:?}",
        counted(g.vertex_count(), "vertex", "vertices"),
        counted(g.edge_count(), "edge", "edges"),
        sizes,
        diameters
    )
}

fn set_size(name: &str, elems: &[usize]) -> String {
    format!("|{name}| = {}", elems.len())
}

fn group_names(n: usize) -> Vec<(String, bracelab::CayleyGroup)> {
    groups_of_order(n).unwrap_or_default()
}

fn cmd_analyze(cli: &Cli, budget: &Budget, input: &str) -> Result<(), Failure> {
    let (brace, label) = load_brace(input)?;
    let inv = brace.invariants();
    let lambda = lambda_graph(&brace);
    let theta = theta_graph(&brace);

    let mut add_name = None;
    let mut circ_name = None;
    for (name, g) in &group_names(brace.n) {
        if add_name.is_none() && find_isomorphism(&brace.add, g, budget)?.is_some() {
            add_name = Some(name.clone());
        }
        if circ_name.is_none() && find_isomorphism(&brace.circ, g, budget)?.is_some() {
            circ_name = Some(name.clone());
        }
    }

    println!("brace: {label}");
    println!("order: {}", brace.n);
    println!(
        "additive group: {}",
        add_name.as_deref().unwrap_or("(not catalogued)")
    );
    println!(
        "multiplicative group: {}",
        circ_name.as_deref().unwrap_or("(not catalogued)")
    );
    let f = &inv.flags;
    println!(
        "flags: trivial={} two-sided={} bi-skew={} abelian-type={} nilpotent-type={}",
        f.trivial, f.two_sided, f.bi_skew, f.abelian_type, f.nilpotent_type
    );
    println!(
        "{}  {}  {}  {}  {}  {}  {}",
        set_size("Fix", &inv.fix),
        set_size("Fix_θ", &inv.fix_theta),
        set_size("ker λ", &inv.ker_lambda),
        set_size("Soc", &inv.soc),
        set_size("Ann", &inv.ann),
        set_size("A²", &inv.a_squared),
        set_size("A′", &inv.a_prime),
    );
    match inv.left_nilpotency_class {
        Some(c) => println!("left nilpotency class: {c}"),
        None => println!("left nilpotency class: none (not left nilpotent)"),
    }
    let tags = family_tags(
        &brace,
        add_name.as_deref().unwrap_or("?"),
        circ_name.as_deref(),
        budget,
    )?;
    if !tags.is_empty() {
        println!("family tags: {}", tags.join(", "));
    }
    println!("λ-graph: {}", graph_summary(&lambda));
    println!("{}", io::graph_to_ascii(&lambda));
    println!("θ-graph: {}", graph_summary(&theta));
    println!("{}", io::graph_to_ascii(&theta));

    if let Some(dir) = &cli.emit_json {
        let base = slug(&label);
        write_artifact(
            dir,
            &format!("{base}.brace.json"),
            &io::brace_to_json(&brace, Some(&label)),
        )?;
        write_artifact(dir, &format!("{base}.lambda.json"), &io::graph_to_json(&lambda))?;
        write_artifact(dir, &format!("{base}.theta.json"), &io::graph_to_json(&theta))?;
    }
    emit_graphs(cli, &label, &lambda, &theta)?;
    Ok(())
}

fn cmd_census(cli: &Cli, budget: &Budget, n: usize) -> Result<(), Failure> {
    if n > CENSUS_DEFAULT_LIMIT && cli.budget.is_none() {
        return Err(Failure::Usage(format!(
            "census of order {n} exceeds the default limit {CENSUS_DEFAULT_LIMIT}; \
             pass an explicit --budget to proceed"
        )));
    }
    let options = CensusOptions {
        max_order: n,
        parallel: true,
        budget: *budget,
    };
    let report = enumerate_braces(n, &options)?;
    let total = report.total();
    println!(
        "census order {n}: {total} {}",
        if total == 1 { "brace" } else { "braces" }
    );
    for (group, count) in report.counts_by_group() {
        println!("  additive group {group}: {count}");
    }
    for (index, entry) in report.entries.iter().enumerate() {
        let s = &entry.summary;
        let tags = if s.family_tags.is_empty() {
            String::new()
        } else {
            format!("  [{}]", s.family_tags.join(", "))
        };
        println!(
            "#{index:<3} add={:<10} mult={:<10} |Fix|={:<3} Λ {} | Θ {}{tags}",
            s.additive_group,
            s.multiplicative_group.as_deref().unwrap_or("?"),
            s.invariants.fix.len(),
            graph_summary(&s.lambda),
            graph_summary(&s.theta),
        );
    }
    if let Some(dir) = &cli.emit_json {
        write_artifact(
            dir,
            &format!("census{n}.json"),
            &io::census_report_to_json(&report),
        )?;
    }
    if let Some(dir) = &cli.emit_dot {
        for (index, entry) in report.entries.iter().enumerate() {
            let base = format!("census{n}-{index:03}");
            write_artifact(
                dir,
                &format!("{base}.lambda.dot"),
                &io::graph_to_dot(&entry.summary.lambda, "lambda"),
            )?;
            write_artifact(
                dir,
                &format!("{base}.theta.dot"),
                &io::graph_to_dot(&entry.summary.theta, "theta"),
            )?;
        }
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, budget: &Budget, suite: &str) -> Result<(), Failure> {
    let reports = if suite == "all" {
        verify::run_all(budget)?
    } else {
        vec![verify::run_suite(suite, budget)?]
    };
    let mut all_passed = true;
    for report in &reports {
        print!("{}", report.render());
        all_passed &= report.passed();
        if let Some(dir) = &cli.emit_json {
            write_artifact(
                dir,
                &format!("{}.report.json", slug(&report.suite)),
                &report.to_json(),
            )?;
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".to_string()))
    }
}

fn cmd_solution(cli: &Cli, input: &str) -> Result<(), Failure> {
    let (brace, label) = load_brace(input)?;
    let solution = solution_of(&brace);
    let json = io::solution_to_json(&solution);
    println!("{json}");
    if let Some((a, b, c)) = verify_ybe(&solution) {
        return Err(Failure::Check(format!(
            "braid relation fails at ({a}, {b}, {c})"
        )));
    }
    if !solution.is_nondegenerate() || !solution.is_bijective() {
        return Err(Failure::Check(
            "solution map is degenerate or not bijective".to_string(),
        ));
    }
    if !theta_conjugation_identity_check(&brace) {
        return Err(Failure::Check(
            "θ-conjugation identity fails".to_string(),
        ));
    }
    eprintln!("YBE check: pass (n = {})", solution.n);
    if let Some(dir) = &cli.emit_json {
        write_artifact(dir, &format!("{}.solution.json", slug(&label)), &json)?;
    }
    Ok(())
}
