use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use conwaykit::algsearch::{enumerate_with, CensusError, Convention};
use conwaykit::catalog::{self, Outcome};
use conwaykit::conway::{check_axioms, EvalError, FiniteAlgebraTable};
use conwaykit::diagram::{parse_braid, DiagramError, LinkDiagram};
use conwaykit::registry::{InvariantError, Params, Registry};
use conwaykit::supersig::parse_rational;

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNDEFINED: u8 = 3;

#[derive(Parser)]
#[command(name = "conwaykit", version, about = "Skein-theoretic link invariants")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute invariants of one link.
    Compute(ComputeArgs),
    /// Recompute the catalog's stored values.
    Verify {
        /// Check every entry.
        #[arg(long)]
        all: bool,
        /// Entries to check (ignored with --all).
        names: Vec<String>,
    },
    /// Enumerate finite Conway algebras of one size.
    Census {
        #[arg(long, default_value_t = 3)]
        census_size: usize,
    },
    /// Browse the built-in catalog.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Check a finite algebra table file against C1-C7.
    Axioms { file: PathBuf },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Args)]
struct ComputeArgs {
    /// Braid word such as "s1^3 s2^-1"; the link is its closure.
    #[arg(long, conflicts_with_all = ["diagram", "entry"])]
    braid: Option<String>,
    /// Diagram file in the text format.
    #[arg(long, conflicts_with = "entry")]
    diagram: Option<PathBuf>,
    /// Catalog entry name.
    #[arg(long)]
    entry: Option<String>,
    /// Strand count for --braid (default: highest generator + 1).
    #[arg(long, requires = "braid")]
    strands: Option<usize>,
    /// Invariant name; repeat for several. Default: homfly.
    #[arg(long = "invariant", short = 'i')]
    invariants: Vec<String>,
    /// Supersignature parameter u (decimal or fraction, same sign as v)
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Supersignature parameter v
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Jones parameter for jones-supersig.
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// Finite algebra table file for finite-algebra.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Memoize identical subdiagrams during evaluation.
    #[arg(long)]
    cache: bool,
    /// Floating-point supersignature with this zero tolerance.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Print the available invariants and exit.
    #[arg(long)]
    list_invariants: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

/// Undefined partial-algebra operations get their own exit status; every
/// other failure is an input problem.
fn classify(err: &anyhow::Error) -> u8 {
    let undefined = |e: &EvalError| {
        matches!(
            e,
            EvalError::Undefined { .. }
                | EvalError::UndefinedConstant(_)
                | EvalError::Ambiguous { .. }
                | EvalError::TreeDependent(..)
        )
    };
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<EvalError>() {
            if undefined(e) {
                return EXIT_UNDEFINED;
            }
        }
        if let Some(InvariantError::Eval(e)) = cause.downcast_ref::<InvariantError>() {
            if undefined(e) {
                return EXIT_UNDEFINED;
            }
        }
        if let Some(CensusError::Eval(e)) = cause.downcast_ref::<CensusError>() {
            if undefined(e) {
                return EXIT_UNDEFINED;
            }
        }
    }
    EXIT_PARSE
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Compute(args) => compute(args, cli.json),
        Cmd::Verify { all, names } => verify(*all, names, cli.json),
        Cmd::Census { census_size } => census(*census_size, cli.json),
        Cmd::Catalog { cmd } => catalog_cmd(cmd, cli.json),
        Cmd::Axioms { file } => axioms(file, cli.json),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn rational(flag: &str, text: &Option<String>) -> Result<Option<conwaykit::supersig::Q>> {
    match text {
        None => Ok(None),
        Some(t) => match parse_rational(t) {
            Some(q) => Ok(Some(q)),
            None => bail!("{flag}: `{t}` is not a decimal or fraction"),
        },
    }
}

fn load_table(path: &Path) -> Result<FiniteAlgebraTable> {
    let text = read(path)?;
    FiniteAlgebraTable::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn input_diagram(args: &ComputeArgs) -> Result<(String, LinkDiagram)> {
    if let Some(b) = &args.braid {
        let mut w = parse_braid(b).map_err(anyhow::Error::from)?;
        if let Some(n) = args.strands {
            if n < w.strands {
                return Err(DiagramError::BadGenerator { gen: w.strands - 1, strands: n }.into());
            }
            w = w.with_strands(n);
        }
        return Ok((format!("braid {}", b), w.closure()));
    }
    if let Some(path) = &args.diagram {
        let d = LinkDiagram::parse_text(&read(path)?).with_context(|| format!("in {}", path.display()))?;
        return Ok((format!("diagram {}", path.display()), d));
    }
    if let Some(name) = &args.entry {
        let e = catalog::entry(name)?;
        return Ok((format!("entry {}", name), e.diagram.clone()));
    }
    bail!("give one of --braid, --diagram or --entry")
}

fn compute(args: &ComputeArgs, json_out: bool) -> Result<u8> {
    let registry = Registry::standard();
    if args.list_invariants {
        for inv in registry.iter() {
            println!("{:<16} {}", inv.name(), inv.summary());
        }
        return Ok(0);
    }
    let (label, d) = input_diagram(args)?;
    let params = Params {
        u: rational("--u", &args.u)?,
        v: rational("--v", &args.v)?,
        w: rational("--w", &args.w)?,
        epsilon: args.epsilon,
        cache: args.cache,
        table: args.table.as_deref().map(load_table).transpose()?,
    };
    let names = if args.invariants.is_empty() { vec!["homfly".to_string()] } else { args.invariants.clone() };
    // Resolve every name before spending time on any evaluation.
    let selected = names.iter().map(|n| registry.get(n)).collect::<Result<Vec<_>, _>>()?;

    let mut results = Vec::new();
    for inv in selected {
        let value = inv.compute(&d, &params).with_context(|| format!("computing {}", inv.name()))?;
        if json_out {
            let mut v = value.to_json();
            v["invariant"] = json!(inv.name());
            results.push(v);
        } else {
            println!("{}: {}", inv.name(), value);
        }
    }
    if json_out {
        let report = json!({ "input": label, "diagram": d.to_text(), "results": results });
        println!("{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(0)
}

fn verify(all: bool, names: &[String], json_out: bool) -> Result<u8> {
    let entries: Vec<&catalog::CatalogEntry> = if all || names.is_empty() {
        catalog::catalog().iter().collect()
    } else {
        names.iter().map(|n| catalog::entry(n)).collect::<Result<_, _>>()?
    };
    let (mut mismatches, mut errors) = (0, 0);
    let mut report = Vec::new();
    for e in entries {
        for c in catalog::verify_entry(e) {
            match c.outcome {
                Outcome::Pass => {}
                Outcome::Mismatch => mismatches += 1,
                Outcome::Error => errors += 1,
            }
            if json_out {
                report.push(json!({
                    "entry": c.entry, "invariant": c.invariant, "expected": c.expected,
                    "actual": c.actual, "pass": c.outcome == Outcome::Pass,
                }));
                continue;
            }
            match c.outcome {
                Outcome::Pass => println!("PASS {} {}", c.entry, c.invariant),
                Outcome::Mismatch => {
                    println!("FAIL {} {}", c.entry, c.invariant);
                    println!("  expected: {}", c.expected);
                    println!("  actual:   {}", c.actual);
                }
                Outcome::Error => {
                    println!("FAIL {} {}", c.entry, c.invariant);
                    println!("  expected: {}", c.expected);
                    println!("  error:    {}", c.actual);
                }
            }
        }
    }
    if json_out {
        println!("{}", serde_json::to_string_pretty(&Json::Array(report))?);
    } else {
        println!("{} mismatches, {} errors", mismatches, errors);
    }
    Ok(if mismatches > 0 {
        EXIT_MISMATCH
    } else if errors > 0 {
        EXIT_UNDEFINED
    } else {
        0
    })
}

fn census(n: usize, json_out: bool) -> Result<u8> {
    let main = enumerate_with(n, Convention::SequenceExists)?;
    let others = Convention::ALL[1..]
        .iter()
        .map(|&c| Ok((c.name(), enumerate_with(n, c)?.count)))
        .collect::<Result<Vec<_>, CensusError>>()?;
    if json_out {
        let reps: Vec<String> = main.representatives.iter().map(|t| t.to_text()).collect();
        let alt: serde_json::Map<String, Json> = others.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let report = json!({
            "size": main.size, "count": main.count, "convention": Convention::SequenceExists.name(),
            "representatives": reps, "alternatives": alt,
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(0);
    }
    let mut out = String::new();
    for t in &main.representatives {
        writeln!(out, "{}", t.to_text())?;
    }
    writeln!(out, "size={} count={}", main.size, main.count)?;
    for (name, count) in others {
        writeln!(out, "alternative {} count={}", name, count)?;
    }
    print!("{out}");
    Ok(0)
}

fn catalog_cmd(cmd: &CatalogCmd, json_out: bool) -> Result<u8> {
    match cmd {
        CatalogCmd::List => {
            let rows: Vec<_> = catalog::catalog().iter().collect();
            if json_out {
                let v: Vec<Json> = rows
                    .iter()
                    .map(|e| json!({ "name": e.name, "group": e.group, "components": e.diagram.component_count(), "crossings": e.diagram.crossing_count() }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for e in rows {
                    println!("{:<26} {:<8} {} comp, {} cr", e.name, e.group, e.diagram.component_count(), e.diagram.crossing_count());
                }
            }
        }
        CatalogCmd::Show { name } => {
            let e = catalog::entry(name)?;
            if json_out {
                let v = json!({
                    "name": e.name, "group": e.group,
                    "braid": e.braid.as_ref().map(|b| b.to_string()),
                    "diagram": e.diagram.to_text(),
                    "jck_tilde": e.jck_tilde.as_ref().map(|p| p.to_json()),
                    "homfly": e.homfly.as_ref().map(|p| p.to_json()),
                    "provenance": e.provenance,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                print!("{}", e.describe());
            }
        }
    }
    Ok(0)
}

fn axioms(path: &Path, json_out: bool) -> Result<u8> {
    let t = load_table(path)?;
    let report = check_axioms(&t);
    if json_out {
        let v: Vec<Json> = report
            .violations
            .iter()
            .map(|v| json!({ "axiom": v.axiom.to_string(), "witness": format!("{:?}", v.witness) }))
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({ "ok": report.ok(), "violations": v }))?);
    } else {
        print!("{}", report);
        println!("{}", if report.ok() { "all axioms hold" } else { "axioms fail" });
    }
    Ok(if report.ok() { 0 } else { EXIT_MISMATCH })
}
