//! Command-line front end for the flec workbench.
//!
//! Every subcommand reads the canonical text formats, prints either a
//! document or a check report to standard output, and reserves standard
//! error for diagnostics.  Exit codes: `0` when everything passed (an
//! indeterminate check is not a failure), `1` when at least one check
//! failed, `2` for usage, parse, or domain errors.  Output bytes are a
//! function of the arguments, the input files, and the seed alone.

use clap::{Parser, Subcommand, ValueEnum};
use flec::bunch::Bunch;
use flec::chain::Chain;
use flec::decompose::decompose_chain;
use flec::finite_chain::{self, FiniteChain, SugiharaKind};
use flec::hom::{correspondence_check, SkeletonRequirement};
use flec::oracle::{check_axioms, check_roundtrip_finite, SampleConfig};
use flec::text;
use flec::{Error, ValidationReport};
use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "flec",
    about = "Workbench for involutive FL_e-chains and their layer-group decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the sampling suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of samples per sampled check.
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Coordinate bound for sampled group elements.
    #[arg(long, global = true)]
    bound: Option<i64>,

    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One `CHECK <name> <STATUS>` line per check.
    Text,
    /// JSON with the same content and ordering.
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Odd,
    Even,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a bunch file and run the structural validator.
    ValidateBunch { file: PathBuf },
    /// Parse a finite-chain file and check the chain axioms exactly.
    ValidateChain { file: PathBuf },
    /// Evaluate expressions ("mul a b", "neg a", "res a b", "cmp a b" over
    /// element literals) in the chain built from a bunch file.
    BuildEval {
        file: PathBuf,
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Decompose a finite chain and print its bunch of layer groups.
    Decompose { file: PathBuf },
    /// Decompose a finite chain, materialize the result, and compare.
    Roundtrip { file: PathBuf },
    /// Print the finite chain a bunch of trivial layer groups assembles into.
    Materialize { file: PathBuf },
    /// Validate the bunch homomorphism described by a hom file (bunch paths
    /// inside it are resolved relative to the hom file).
    CheckHom {
        file: PathBuf,
        /// Additionally require the skeleton map to be an order embedding.
        #[arg(long)]
        embedding: bool,
    },
    /// Enumerate all chain homomorphisms between two finite chains, one
    /// index map per line.
    EnumHoms { source: PathBuf, target: PathBuf },
    /// Check that chain homomorphisms and bunch homomorphisms of the
    /// decompositions correspond exactly on two finite chains.
    Correspondence { source: PathBuf, target: PathBuf },
    /// Run the sampled axiom suite on the chain built from a bunch file.
    Axioms { file: PathBuf },
    /// Print a generated Sugihara chain of the given kind and size.
    GenSugihara {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> flec::Result<ExitCode> {
    let cfg = sample_config(cli);
    match &cli.command {
        Command::ValidateBunch { file } => {
            let bunch = load_bunch(file)?;
            Ok(emit(cli, &bunch.validate()))
        }
        Command::ValidateChain { file } => {
            let chain = load_chain(file)?;
            let (report, parity) = chain.validate();
            match parity {
                Some(p) => eprintln!("parity: {p:?}"),
                None => eprintln!("parity: undetermined"),
            }
            Ok(emit(cli, &report))
        }
        Command::BuildEval { file, exprs } => {
            let bunch = load_bunch(file)?;
            let chain = Chain::new(&bunch);
            for expr in exprs {
                println!("{}", eval_expr(&chain, &bunch, expr)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { file } => {
            let chain = load_chain(file)?;
            let bunch = decompose_chain(&chain)?;
            print!("{}", text::serialize_bunch(&bunch));
            Ok(ExitCode::SUCCESS)
        }
        Command::Roundtrip { file } => {
            let chain = load_chain(file)?;
            Ok(emit(cli, &check_roundtrip_finite(&chain)))
        }
        Command::Materialize { file } => {
            let bunch = load_bunch(file)?;
            let chain = finite_chain::materialize(&bunch)?;
            print!("{}", text::serialize_finite_chain(&chain));
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckHom { file, embedding } => {
            let input = read(file)?;
            let doc = text::parse_hom_document(&input)?;
            let base = file.parent().unwrap_or_else(|| Path::new("."));
            let source = load_bunch(&base.join(&doc.source_path))?;
            let target = load_bunch(&base.join(&doc.target_path))?;
            let hom = doc.resolve(&source, &target)?;
            let requirement = if *embedding {
                SkeletonRequirement::Embedding
            } else {
                SkeletonRequirement::Isotone
            };
            Ok(emit(cli, &hom.validate_with(requirement)))
        }
        Command::EnumHoms { source, target } => {
            let source = load_chain(source)?;
            let target = load_chain(target)?;
            for hom in source.enumerate_homs(&target)? {
                let rendered: Vec<String> = hom.iter().map(|i| i.to_string()).collect();
                println!("{}", rendered.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Correspondence { source, target } => {
            let source = load_chain(source)?;
            let target = load_chain(target)?;
            Ok(emit(cli, &correspondence_check(&source, &target)?))
        }
        Command::Axioms { file } => {
            let bunch = load_bunch(file)?;
            Ok(emit(cli, &check_axioms(&bunch, &cfg)))
        }
        Command::GenSugihara { kind, n } => {
            let kind = match kind {
                Kind::Odd => SugiharaKind::Odd,
                Kind::Even => SugiharaKind::Even,
            };
            let chain = finite_chain::generate_sugihara(kind, *n)?;
            print!("{}", text::serialize_finite_chain(&chain));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn sample_config(cli: &Cli) -> SampleConfig {
    let mut cfg = SampleConfig::new(cli.seed);
    if let Some(samples) = cli.samples {
        cfg = cfg.with_samples(samples);
    }
    if let Some(bound) = cli.bound {
        cfg = cfg.with_bound(bound);
    }
    cfg
}

fn read(path: &Path) -> flec::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))
}

fn load_bunch(path: &Path) -> flec::Result<Bunch> {
    text::parse_bunch(&read(path)?)
        .map_err(|e| Error::domain(format!("{}: {e}", path.display())))
}

fn load_chain(path: &Path) -> flec::Result<FiniteChain> {
    text::parse_finite_chain(&read(path)?)
        .map_err(|e| Error::domain(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, report: &ValidationReport) -> ExitCode {
    match cli.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Structured => println!("{}", report.render_structured()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Evaluate one expression over element literals and render the result.
fn eval_expr(chain: &Chain<'_>, bunch: &Bunch, expr: &str) -> flec::Result<String> {
    let tokens: Vec<&str> = expr.split_whitespace().collect();
    let arity = |n: usize| -> flec::Result<()> {
        if tokens.len() == n + 1 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "operation {:?} takes {n} element(s), found {}",
                tokens[0],
                tokens.len() - 1
            )))
        }
    };
    let element = |idx: usize| -> flec::Result<flec::chain::ChainElement> {
        let x = text::parse_element(bunch, tokens[idx])?;
        let report = chain.element_validate(&x);
        if let Some(failure) = report.first_failure() {
            return Err(Error::domain(format!(
                "invalid element {}: {}: {}",
                tokens[idx],
                failure.name,
                failure.witness.as_deref().unwrap_or("no witness")
            )));
        }
        Ok(x)
    };
    match tokens.first().copied() {
        Some("mul") => {
            arity(2)?;
            Ok(chain.render(&chain.mul(&element(1)?, &element(2)?)?))
        }
        Some("neg") => {
            arity(1)?;
            Ok(chain.render(&chain.negate(&element(1)?)?))
        }
        Some("res") => {
            arity(2)?;
            Ok(chain.render(&chain.residuum(&element(1)?, &element(2)?)?))
        }
        Some("cmp") => {
            arity(2)?;
            Ok(match chain.compare(&element(1)?, &element(2)?)? {
                Ordering::Less => "LT".to_string(),
                Ordering::Equal => "EQ".to_string(),
                Ordering::Greater => "GT".to_string(),
            })
        }
        Some(other) => Err(Error::domain(format!(
            "unknown operation {other:?}: use mul, neg, res, or cmp"
        ))),
        None => Err(Error::domain("empty expression".to_string())),
    }
}
