//! Command-line front end: loads algebra documents (from files or the
//! built-in catalog), runs the validators and invariant computations, and
//! emits machine-readable reports.
//!
//! Conventions:
//! * machine output goes to stdout, diagnostics to stderr;
//! * exit 0 = success, 1 = property or validation failure, 2 = usage
//!   error, 3 = budget exceeded;
//! * documents use 0-based indices, the expression language uses 1-based
//!   variables (`x1`, `x2`, ...) and 1-based acting-basis decorations
//!   (`x1^h1` is the first acting basis element);
//! * JSON reports carry a provenance block (document hash, seed, budget,
//!   certify flag, tool version) and are byte-stable for a fixed seed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hpi_core::algebra::{
    grading_to_haction, is_h_simple, Certificate, SimplicityOptions, SimplicityVerdict,
};
use hpi_core::catalog;
use hpi_core::codim::{evaluation_matrix, graded_codimension, Budget, Target};
use hpi_core::document::{load_document_text, LoadedAlgebra};
use hpi_core::exponent::{
    exponent_report, present_double, DEFAULT_N_MAX_DECORATED, DEFAULT_N_MAX_ORDINARY,
};
use hpi_core::freealg::{
    is_identity_generic, is_identity_multilinear, parse_polynomial, ActionContext,
    DecorationAlphabet,
};
use hpi_core::symfunc::cocharacter_report;
use hpi_core::{Error, RankMode};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hpi",
    version,
    about = "Exact polynomial-identity invariants of finite-dimensional algebras",
    after_help = "Exit codes: 0 success, 1 property/validation failure, 2 usage error, \
                  3 budget exceeded.\nDocuments use 0-based indices; expressions use \
                  1-based variables (x1, x2, ...)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Path to an algebra document (JSON).
    #[arg(long, value_name = "PATH", conflicts_with = "catalog")]
    algebra: Option<PathBuf>,
    /// Name of a built-in catalog entry.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Plain monomials, no decorations.
    Ordinary,
    /// Acting-algebra basis decorations (requires an action block).
    Haction,
    /// Grade-label decorations (requires a grading block).
    Graded,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeOpts {
    /// Decoration mode; defaults to graded if the document has a grading,
    /// else haction if it has an action, else ordinary.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Use the associative spanning set (verified first).
    #[arg(long)]
    assoc: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Seed for randomized certificates and candidate sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compute ranks purely exactly (never changes values, only the path).
    #[arg(long)]
    certify: bool,
    /// Lift the degree budget caps.
    #[arg(long)]
    budget_override: bool,
}

impl ComputeOpts {
    fn budget(&self) -> Budget {
        if self.budget_override {
            Budget::unrestricted()
        } else {
            Budget::default()
        }
    }

    fn rank_mode(&self) -> RankMode {
        if self.certify {
            RankMode::Exact
        } else {
            RankMode::Hybrid { seed: self.seed }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Load a document and run every applicable validator.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Decide simplicity with respect to the acting structure.
    Simple {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Solve for the coproduct witnesses of the document's action.
    DeriveCoproducts {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Test whether a polynomial is an identity of the algebra.
    Check {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
        #[arg(help = "Expression, e.g. \"[x1, x2]\" or \"x1^(0)*x2^(1)\" or \"x1^h2*x2\"")]
        polynomial: String,
    },
    /// Codimension at one degree.
    Codim {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
        #[arg(long)]
        n: usize,
        /// Write the evaluation matrix as "row col value" triplets.
        #[arg(long, value_name = "PATH")]
        dump_matrix: Option<PathBuf>,
    },
    /// Graded codimension computed by two independent pipelines.
    GradedCodim {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
        #[arg(long)]
        n: usize,
    },
    /// Cocharacter multiplicities, colength, and codimension at one degree.
    Cocharacter {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
        #[arg(long)]
        n: usize,
    },
    /// Growth table for degrees 1..=max-n.
    Exponent {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
        /// Defaults to 5 (ordinary) or 4 (decorated); anything larger
        /// needs --budget-override.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// List or show the built-in algebra documents.
    Catalog {
        #[command(subcommand)]
        which: CatalogCmd,
    },
    /// Convert a grading into its projector action and print the document.
    Grade2h {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: ComputeOpts,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            CliError::Core(Error::UnknownCatalog { .. }) => 2,
            CliError::Core(Error::Io(_)) => 2,
            CliError::Core(Error::Parse { .. }) => 2,
            CliError::Core(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn load_source(source: &Source) -> CliResult<LoadedAlgebra> {
    match (&source.algebra, &source.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(Error::from)?;
            Ok(load_document_text(&text)?)
        }
        (None, Some(name)) => Ok(catalog::catalog_load(name)?),
        (None, None) => Err(CliError::Usage(
            "one of --algebra PATH or --catalog NAME is required".to_string(),
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn resolve_mode(explicit: Option<Mode>, loaded: &LoadedAlgebra) -> CliResult<Mode> {
    match explicit {
        Some(Mode::Graded) if loaded.grading.is_none() => Err(CliError::Usage(
            "mode graded needs a document with a grading block".to_string(),
        )),
        Some(Mode::Haction) if loaded.action.is_none() => Err(CliError::Usage(
            "mode haction needs a document with an action block".to_string(),
        )),
        Some(m) => Ok(m),
        None => Ok(if loaded.grading.is_some() {
            Mode::Graded
        } else if loaded.action.is_some() {
            Mode::Haction
        } else {
            Mode::Ordinary
        }),
    }
}

fn target_for<'a>(mode: Mode, loaded: &'a LoadedAlgebra) -> Target<'a> {
    match mode {
        Mode::Ordinary => Target::Ordinary,
        Mode::Haction => Target::HAction(loaded.action.as_ref().expect("checked by resolve_mode")),
        Mode::Graded => Target::Graded(loaded.grading.as_ref().expect("checked by resolve_mode")),
    }
}

fn context_for<'a>(mode: Mode, loaded: &'a LoadedAlgebra) -> ActionContext<'a> {
    match mode {
        Mode::Ordinary => ActionContext::Trivial,
        Mode::Haction => {
            ActionContext::Action(loaded.action.as_ref().expect("checked by resolve_mode"))
        }
        Mode::Graded => {
            ActionContext::Graded(loaded.grading.as_ref().expect("checked by resolve_mode"))
        }
    }
}

fn alphabet_for(mode: Mode, loaded: &LoadedAlgebra) -> DecorationAlphabet {
    match mode {
        Mode::Ordinary => DecorationAlphabet::plain(),
        Mode::Haction => DecorationAlphabet::h_basis(
            loaded.action.as_ref().expect("checked by resolve_mode").hdim(),
        ),
        Mode::Graded => DecorationAlphabet::grades(
            loaded
                .grading
                .as_ref()
                .expect("checked by resolve_mode")
                .support_labels(),
        ),
    }
}

fn cap_json(cap: usize) -> serde_json::Value {
    if cap == usize::MAX {
        serde_json::Value::Null
    } else {
        json!(cap)
    }
}

fn provenance(loaded: &LoadedAlgebra, opts: &ComputeOpts) -> serde_json::Value {
    let budget = opts.budget();
    json!({
        "algebra_sha256": loaded.hash,
        "seed": opts.seed,
        "certify": opts.certify,
        "budget": {
            "max_n_assoc": cap_json(budget.max_n_assoc),
            "max_n_plain": cap_json(budget.max_n_plain),
            "max_n_decorated": cap_json(budget.max_n_decorated),
            "max_monomials": cap_json(budget.max_monomials),
        },
        "version": hpi_core::VERSION,
    })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Ordinary => "ordinary",
        Mode::Haction => "haction",
        Mode::Graded => "graded",
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Validate { source } => {
            let loaded = load_source(&source)?;
            println!("valid: algebra {} (dim {})", loaded.algebra.name(), loaded.algebra.dim());
            if let Some(g) = &loaded.grading {
                println!(
                    "valid: grading with {} labels, support size {}",
                    g.labels().len(),
                    g.support().len()
                );
            }
            if let Some(act) = &loaded.action {
                println!("valid: action of a {}-dimensional algebra", act.hdim());
            }
            println!("sha256: {}", loaded.hash);
            Ok(0)
        }

        Command::Simple { source, opts } => {
            let loaded = load_source(&source)?;
            let mode = resolve_mode(opts.mode, &loaded)?;
            let action = match mode {
                Mode::Ordinary => loaded.algebra.trivial_action(),
                Mode::Haction => loaded.action.clone().expect("checked by resolve_mode"),
                Mode::Graded => grading_to_haction(
                    &loaded.algebra,
                    loaded.grading.as_ref().expect("checked by resolve_mode"),
                )?,
            };
            let verdict = is_h_simple(
                &loaded.algebra,
                &action,
                &SimplicityOptions {
                    seed: opts.seed,
                    ..SimplicityOptions::default()
                },
            );
            match opts.format {
                Format::Json => {
                    let body = match &verdict {
                        SimplicityVerdict::Simple { envelope_dim, .. } => json!({
                            "verdict": "simple",
                            "envelope_dim": envelope_dim,
                        }),
                        SimplicityVerdict::NotSimple { certificate } => match certificate {
                            Certificate::SquareZero => json!({
                                "verdict": "not-simple",
                                "certificate": "square-zero",
                            }),
                            Certificate::Ideal { basis } => json!({
                                "verdict": "not-simple",
                                "certificate": "ideal",
                                "ideal_dim": basis.len(),
                            }),
                        },
                        SimplicityVerdict::Unknown { candidates_tried } => json!({
                            "verdict": "unknown",
                            "candidates_tried": candidates_tried,
                        }),
                    };
                    let mut out = body;
                    out["mode"] = json!(mode_name(mode));
                    out["provenance"] = provenance(&loaded, &opts);
                    println!("{out}");
                }
                _ => match &verdict {
                    SimplicityVerdict::Simple { envelope_dim, .. } => {
                        println!("verdict: simple (envelope dimension {envelope_dim})");
                    }
                    SimplicityVerdict::NotSimple { certificate } => match certificate {
                        Certificate::SquareZero => {
                            println!("verdict: not-simple (the algebra squares to zero)");
                        }
                        Certificate::Ideal { basis } => {
                            println!(
                                "verdict: not-simple (invariant ideal of dimension {})",
                                basis.len()
                            );
                        }
                    },
                    SimplicityVerdict::Unknown { candidates_tried } => {
                        println!("verdict: unknown ({candidates_tried} candidates tried)");
                    }
                },
            }
            Ok(0)
        }

        Command::DeriveCoproducts { source, opts } => {
            let loaded = load_source(&source)?;
            let act = loaded.action.as_ref().ok_or_else(|| {
                CliError::Usage("derive-coproducts needs a document with an action block".into())
            })?;
            let w = act
                .witnesses()
                .expect("validated actions carry solved witnesses");
            match opts.format {
                Format::Json => {
                    let items: Vec<serde_json::Value> = (0..act.hdim())
                        .map(|h| {
                            let tensor = |t: &hpi_core::algebra::PairTensor| -> Vec<serde_json::Value> {
                                t.iter()
                                    .map(|((p, q), v)| json!([p, q, v.to_string()]))
                                    .collect()
                            };
                            json!({
                                "h": act.hbasis()[h],
                                "delta": tensor(&w.delta[h]),
                                "theta": tensor(&w.theta[h]),
                            })
                        })
                        .collect();
                    let out = json!({
                        "hbasis": act.hbasis(),
                        "witnesses": items,
                        "provenance": provenance(&loaded, &opts),
                    });
                    println!("{out}");
                }
                _ => {
                    for h in 0..act.hdim() {
                        let fmt = |t: &hpi_core::algebra::PairTensor| {
                            if t.is_empty() {
                                "0".to_string()
                            } else {
                                t.iter()
                                    .map(|((p, q), v)| {
                                        format!("{v}*({} (x) {})", act.hbasis()[*p], act.hbasis()[*q])
                                    })
                                    .collect::<Vec<_>>()
                                    .join(" + ")
                            }
                        };
                        println!(
                            "{}: delta = {}; theta = {}",
                            act.hbasis()[h],
                            fmt(&w.delta[h]),
                            fmt(&w.theta[h])
                        );
                    }
                }
            }
            Ok(0)
        }

        Command::Check {
            source,
            opts,
            polynomial,
        } => {
            let loaded = load_source(&source)?;
            let mode = resolve_mode(opts.mode, &loaded)?;
            let alphabet = alphabet_for(mode, &loaded);
            let ctx = context_for(mode, &loaded);
            let f = parse_polynomial(&polynomial, &alphabet)?;
            let (identity, path) = match is_identity_multilinear(&f, &loaded.algebra, &ctx) {
                Ok(ans) => (ans, "multilinear"),
                Err(Error::NotMultilinear { .. }) => (
                    is_identity_generic(&f, &loaded.algebra, &ctx)?,
                    "generic",
                ),
                Err(e) => return Err(e.into()),
            };
            match opts.format {
                Format::Json => {
                    let out = json!({
                        "identity": identity,
                        "path": path,
                        "mode": mode_name(mode),
                        "provenance": provenance(&loaded, &opts),
                    });
                    println!("{out}");
                }
                _ => println!("identity: {identity}"),
            }
            Ok(if identity { 0 } else { 1 })
        }

        Command::Codim {
            source,
            opts,
            n,
            dump_matrix,
        } => {
            let loaded = load_source(&source)?;
            let mode = resolve_mode(opts.mode, &loaded)?;
            let target = target_for(mode, &loaded);
            let em = evaluation_matrix(n, &loaded.algebra, target, opts.assoc, &opts.budget())?;
            if let Some(path) = dump_matrix {
                std::fs::write(&path, em.triplets()).map_err(Error::from)?;
                eprintln!(
                    "wrote {} x {} evaluation matrix to {}",
                    em.matrix.nrows(),
                    em.matrix.ncols(),
                    path.display()
                );
            }
            let codim = em.codimension(opts.rank_mode());
            match opts.format {
                Format::Json => {
                    let out = json!({
                        "n": n,
                        "codim": codim,
                        "mode": mode_name(mode),
                        "assoc": opts.assoc,
                        "provenance": provenance(&loaded, &opts),
                    });
                    println!("{out}");
                }
                Format::Csv => {
                    println!("n,codim,mode,assoc");
                    println!("{n},{codim},{},{}", mode_name(mode), opts.assoc);
                }
                Format::Table => {
                    println!("n: {n}");
                    println!("codim: {codim}");
                    println!("mode: {}", mode_name(mode));
                }
            }
            Ok(0)
        }

        Command::GradedCodim { source, opts, n } => {
            let loaded = load_source(&source)?;
            let g = loaded.grading.as_ref().ok_or_else(|| {
                CliError::Usage("graded-codim needs a document with a grading block".into())
            })?;
            let codim = graded_codimension(
                n,
                &loaded.algebra,
                g,
                opts.assoc,
                &opts.budget(),
                opts.rank_mode(),
            )?;
            match opts.format {
                Format::Json => {
                    let out = json!({
                        "n": n,
                        "codim": codim,
                        "crosscheck": "ok",
                        "provenance": provenance(&loaded, &opts),
                    });
                    println!("{out}");
                }
                Format::Csv => {
                    println!("n,codim,crosscheck");
                    println!("{n},{codim},ok");
                }
                Format::Table => {
                    println!("n: {n}");
                    println!("codim: {codim}");
                    println!("crosscheck: ok");
                }
            }
            Ok(0)
        }

        Command::Cocharacter { source, opts, n } => {
            let loaded = load_source(&source)?;
            let mode = resolve_mode(opts.mode, &loaded)?;
            let target = target_for(mode, &loaded);
            let report = cocharacter_report(
                n,
                &loaded.algebra,
                target,
                opts.assoc,
                &opts.budget(),
                opts.rank_mode(),
            )?;
            match opts.format {
                Format::Json => {
                    let mut out = report.to_json();
                    out["mode"] = json!(mode_name(mode));
                    out["provenance"] = provenance(&loaded, &opts);
                    println!("{out}");
                }
                Format::Csv => print!("{}", report.to_csv()),
                Format::Table => {
                    println!(
                        "n: {}  codimension: {}  colength: {}  method: {}",
                        report.n,
                        report.codimension,
                        report.colength,
                        report.method.as_str()
                    );
                    println!("{:<16} {:>12} {:>8}", "lambda", "multiplicity", "dim");
                    for e in &report.entries {
                        println!(
                            "{:<16} {:>12} {:>8}",
                            e.lambda.to_string(),
                            e.multiplicity,
                            e.dim_irreducible.to_string()
                        );
                    }
                }
            }
            Ok(0)
        }

        Command::Exponent {
            source,
            opts,
            max_n,
        } => {
            let loaded = load_source(&source)?;
            let mode = resolve_mode(opts.mode, &loaded)?;
            let default_max = if mode == Mode::Ordinary {
                DEFAULT_N_MAX_ORDINARY
            } else {
                DEFAULT_N_MAX_DECORATED
            };
            let max_n = max_n.unwrap_or(default_max);
            if max_n > default_max && !opts.budget_override {
                return Err(CliError::Usage(format!(
                    "--max-n {max_n} exceeds the default ceiling {default_max}; \
                     acknowledge with --budget-override"
                )));
            }
            let target = target_for(mode, &loaded);
            let report = exponent_report(
                &loaded.algebra,
                target,
                opts.assoc,
                max_n,
                &opts.budget(),
                opts.rank_mode(),
            )?;
            match opts.format {
                Format::Json => {
                    let mut out = report.to_json();
                    out["mode"] = json!(mode_name(mode));
                    out["provenance"] = provenance(&loaded, &opts);
                    println!("{out}");
                }
                Format::Csv => print!("{}", report.to_csv()),
                Format::Table => {
                    println!(
                        "algebra: {} ({})",
                        report.algebra,
                        if report.simple {
                            "simple; codimension growth certified monotone"
                        } else {
                            "not certified simple"
                        }
                    );
                    println!(
                        "{:>3} {:>10} {:>16} {:>16} {:<12} {:>8}",
                        "n", "codim", "codim^(1/n)", "d_n", "argmax", "colength"
                    );
                    for r in &report.rows {
                        println!(
                            "{:>3} {:>10} {:>16} {:>16} {:<12} {:>8}",
                            r.n,
                            r.codimension,
                            present_double(r.codimension_root),
                            r.d_n.map(present_double).unwrap_or_else(|| "-".into()),
                            r.argmax
                                .as_ref()
                                .map(|l| l.to_string())
                                .unwrap_or_else(|| "-".into()),
                            r.colength
                        );
                    }
                }
            }
            Ok(0)
        }

        Command::Catalog { which } => match which {
            CatalogCmd::List => {
                for entry in catalog::catalog_entries() {
                    println!("{:<14} {}", entry.name, entry.notes);
                }
                Ok(0)
            }
            CatalogCmd::Show { name } => {
                print!("{}", catalog::catalog_text(&name)?);
                Ok(0)
            }
        },

        Command::Grade2h { source, opts } => {
            let loaded = load_source(&source)?;
            let g = loaded.grading.as_ref().ok_or_else(|| {
                CliError::Usage("grade2h needs a document with a grading block".into())
            })?;
            let act = grading_to_haction(&loaded.algebra, g)?;
            match opts.format {
                Format::Table => {
                    println!(
                        "projector action on {} support components",
                        g.support().len()
                    );
                    let w = act.witnesses().expect("derived actions carry witnesses");
                    for h in 0..act.hdim() {
                        let fmt = |t: &hpi_core::algebra::PairTensor| {
                            if t.is_empty() {
                                "0".to_string()
                            } else {
                                t.iter()
                                    .map(|((p, q), v)| {
                                        format!("{v}*({} (x) {})", act.hbasis()[*p], act.hbasis()[*q])
                                    })
                                    .collect::<Vec<_>>()
                                    .join(" + ")
                            }
                        };
                        println!(
                            "{}: delta = {}; theta = {}",
                            act.hbasis()[h],
                            fmt(&w.delta[h]),
                            fmt(&w.theta[h])
                        );
                    }
                }
                _ => {
                    let doc = hpi_core::document::document_from_parts(
                        &loaded.algebra,
                        Some(g),
                        Some(&act),
                    );
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("document serializes")
                    );
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
