//! The `nlie` command line: one check job per invocation, a structured
//! report, and an exit code.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage, 3 I/O or
//! unknown name, 4 schema violation.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bialgebra::{check_bialgebra, check_pairing_identity, dual_bialgebra, dual_bracket, Cobracket};
use crate::cochain::{coboundary, cohomology_dim, nontrivial_cocycle, Cochain};
use crate::double::{
    bialgebra_from_manin, build_double, check_manin_triple, check_metric, hyperbolic_form, theorem_equivalence,
    ManinTriple, MetricNLieAlgebra, Subspace,
};
use crate::io::{algebra_document, cobracket_document, describe_algebra, load, IoError, ReportDocument, Source};
use crate::operad::{
    check_Cj_operad, check_Ri_operad, check_cocycle_via_operad, check_compatibility_sum, check_double_construction,
    check_local_cocycle, check_structure_constants,
};
use crate::rep::{adjoint_rep, coadjoint_rep, tensor_power_rep, Representation};
use crate::report::CheckReport;
use crate::NLieAlgebra;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SCHEMA: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Inputs are `catalog:NAME`, a JSON file, or `FILE#NAME` for one object
/// of a multi-object file.
#[derive(Debug, Parser)]
#[command(name = "nlie", version, about = "Exact checks for n-Lie algebras and bialgebras")]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Format of the report printed on stdout.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Skew-symmetry, Filippov–Jacobi and the pair identity.
    CheckAlgebra { input: String },
    /// Representation axioms and δ∘δ = 0 on seeded random cochains.
    CheckRep {
        input: String,
        /// adjoint, coadjoint or tensor:<p>
        #[arg(long, default_value = "coadjoint")]
        rep: String,
        /// Random cochains per degree (degrees 1 and 2).
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Both bialgebra conditions and the pairing forms.
    CheckBialgebra { input: String },
    /// The operad-matrix form, or one row / column condition.
    CheckOperad {
        input: String,
        #[arg(long, conflicts_with = "column")]
        row: Option<usize>,
        #[arg(long)]
        column: Option<usize>,
    },
    /// Row conditions of n components plus the compatibility sum.
    CheckLocalCocycle {
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<String>,
    },
    /// Row-1 condition, centroid and local operad map, with the
    /// structure-constant cross-check.
    CheckDoubleConstruction { input: String },
    /// Build g ⊕ g* and check it.
    Double {
        input: String,
        /// Write the double as an algebra document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dual bialgebra (g*, transpose of the bracket).
    Dual {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Manin triple check for a 2d-dimensional algebra with the hyperbolic
    /// form, g1 = span(first d) and g2 = span(last d).
    CheckManin { input: String },
    /// Both directions of the double / Manin triple correspondence.
    Theorem { input: String },
    /// Dimension of H^k for a representation.
    Cohomology {
        input: String,
        #[arg(long, default_value = "adjoint")]
        rep: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckAlgebra { .. } => "check-algebra",
            Command::CheckRep { .. } => "check-rep",
            Command::CheckBialgebra { .. } => "check-bialgebra",
            Command::CheckOperad { .. } => "check-operad",
            Command::CheckLocalCocycle { .. } => "check-local-cocycle",
            Command::CheckDoubleConstruction { .. } => "check-double-construction",
            Command::Double { .. } => "double",
            Command::Dual { .. } => "dual",
            Command::CheckManin { .. } => "check-manin",
            Command::Theorem { .. } => "theorem",
            Command::Cohomology { .. } => "cohomology",
        }
    }
}

/// What a run produced: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = match e {
            IoError::Schema(_) => EXIT_SCHEMA,
            _ => EXIT_IO,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn schema(e: crate::Error) -> Failure {
    Failure {
        code: EXIT_SCHEMA,
        message: e.to_string(),
    }
}

struct Job {
    sources: Vec<Source>,
    checks: Vec<CheckReport>,
    output: Option<serde_json::Value>,
}

fn parse_rep(alg: &NLieAlgebra, spec: &str) -> Result<(Representation, Vec<CheckReport>), Failure> {
    match spec {
        "adjoint" => Ok(match adjoint_rep(alg) {
            Ok(r) => (r, vec![]),
            Err(u) => (u.value, vec![u.report]),
        }),
        "coadjoint" => Ok((coadjoint_rep(alg), vec![])),
        _ => {
            let p = spec
                .strip_prefix("tensor:")
                .and_then(|p| p.parse::<usize>().ok())
                .ok_or_else(|| {
                    usage(format!(
                        "unknown representation `{spec}` (adjoint, coadjoint, tensor:<p>)"
                    ))
                })?;
            Ok((tensor_power_rep(alg, p).map_err(|e| usage(e.to_string()))?, vec![]))
        }
    }
}

fn delta_squared(rep: &Representation, samples: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = 0;
    for degree in 1..=2 {
        for s in 0..samples {
            let u = Cochain::random(rep, degree, &mut rng).expect("degree >= 1");
            let dd = coboundary(rep, &coboundary(rep, &u).expect("same rep")).expect("same rep");
            run += 1;
            if !dd.is_zero() {
                return CheckReport::fail_note(
                    "coboundary-squared",
                    format!("degree {degree}, sample {}: coboundary of coboundary is nonzero", s + 1),
                );
            }
        }
    }
    CheckReport::pass("coboundary-squared", run)
}

fn manin_of(metric: MetricNLieAlgebra, d: usize) -> ManinTriple {
    ManinTriple {
        metric,
        g1: Subspace::coordinate(2 * d, 0..d),
        g2: Subspace::coordinate(2 * d, d..2 * d),
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|source| {
        IoError::Write {
            path: path.display().to_string(),
            source,
        }
        .into()
    })
}

fn execute(command: &Command, seed: u64) -> Result<Job, Failure> {
    let mut output = None;
    let (sources, checks) = match command {
        Command::CheckAlgebra { input } => {
            let src = load(input)?;
            let (_, alg) = src.algebra()?;
            let checks = vec![
                alg.check_skew_symmetry(),
                alg.check_filippov_jacobi(),
                alg.check_pair_identity(),
            ];
            (vec![src], checks)
        }
        Command::CheckRep { input, rep, samples } => {
            let src = load(input)?;
            let (_, alg) = src.algebra()?;
            let (r, mut checks) = parse_rep(&alg, rep)?;
            checks.push(r.check_representation());
            checks.push(delta_squared(&r, *samples, seed));
            (vec![src], checks)
        }
        Command::CheckBialgebra { input } => {
            let src = load(input)?;
            let (_, cb) = src.cobracket()?;
            let r = check_bialgebra(&cb);
            let mut checks: Vec<CheckReport> = r.all_reports().into_iter().cloned().collect();
            checks.push(check_pairing_identity(&cb));
            (vec![src], checks)
        }
        Command::CheckOperad { input, row, column } => {
            let src = load(input)?;
            let (_, cb) = src.cobracket()?;
            let check = match (row, column) {
                (Some(i), _) => check_Ri_operad(&cb, *i).map_err(|e| usage(e.to_string()))?,
                (_, Some(j)) => check_Cj_operad(&cb, *j).map_err(|e| usage(e.to_string()))?,
                _ => check_cocycle_via_operad(&cb),
            };
            (vec![src], vec![check])
        }
        Command::CheckLocalCocycle { inputs } => {
            let mut sources = Vec::new();
            let mut parts: Vec<Cobracket> = Vec::new();
            for i in inputs {
                let src = load(i)?;
                parts.push(src.cobracket()?.1);
                sources.push(src);
            }
            let alg = parts[0].algebra().clone();
            let local = check_local_cocycle(&alg, &parts).map_err(|e| usage(e.to_string()))?;
            let compat = check_compatibility_sum(&alg, &parts).map_err(|e| usage(e.to_string()))?;
            let mut checks = vec![local, compat];
            if checks.iter().all(|c| c.passed) {
                let sum = Cobracket::sum(&parts).map_err(schema)?;
                let r = check_bialgebra(&sum);
                let mut b = CheckReport::all("sum-is-bialgebra", &[r.condition_i, r.condition_ii]);
                b.name = "sum-is-bialgebra".into();
                checks.push(b);
            }
            (sources, checks)
        }
        Command::CheckDoubleConstruction { input } => {
            let src = load(input)?;
            let (_, cb) = src.cobracket()?;
            let r = check_double_construction(&cb);
            let mut checks: Vec<CheckReport> = r.all_reports().into_iter().cloned().collect();
            let sc = check_structure_constants(&cb);
            output = Some(json!({
                "structure_constants": sc.forms.iter().map(|f| json!({
                    "form": f.form.name(),
                    "constants_passed": f.constants.passed,
                    "tensor_passed": f.tensor.passed,
                    "discrepancy": f.discrepancy.as_ref().map(|c| c.tuple.clone()),
                })).collect::<Vec<_>>(),
            }));
            if sc.flagged() {
                // informational: the tensor-level checks are authoritative
                let a = sc.agreement();
                checks[1].notes.extend(a.notes);
            }
            (vec![src], checks)
        }
        Command::Double { input, out } => {
            let src = load(input)?;
            let (name, cb) = src.cobracket()?;
            let d = cb.algebra().dim();
            let (metric, mut checks) = match build_double(&cb) {
                Ok(m) => (m, vec![]),
                Err(u) => (u.value, vec![u.report]),
            };
            checks.push(metric.algebra().check_filippov_jacobi());
            checks.push(check_metric(&metric));
            let doc = algebra_document(&format!("double:{name}"), metric.algebra());
            if let Some(path) = out {
                write_file(path, &crate::io::canonical_json(&doc))?;
            }
            checks.push(check_manin_triple(&manin_of(metric, d)));
            output = Some(json!({ "double": doc }));
            (vec![src], checks)
        }
        Command::Dual { input, out } => {
            let src = load(input)?;
            let (name, cb) = src.cobracket()?;
            let checks = match dual_bialgebra(&cb) {
                Ok(dual) => {
                    let alg_name = format!("dual:{name}:algebra");
                    let bundle = crate::io::Bundle {
                        algebras: vec![algebra_document(&alg_name, dual.algebra())],
                        cobrackets: vec![cobracket_document(&format!("dual:{name}"), &alg_name, &dual)],
                    };
                    if let Some(path) = out {
                        write_file(path, &crate::io::canonical_json(&bundle))?;
                    }
                    output = Some(serde_json::to_value(&bundle).expect("json"));
                    let r = check_bialgebra(&dual);
                    vec![r.condition_i, r.condition_ii]
                }
                Err(e) => {
                    let r = check_bialgebra(&cb);
                    let mut c = CheckReport::all("input-is-bialgebra", &[r.condition_i, r.condition_ii]);
                    c.notes.push(e.to_string());
                    if let Ok(db) = dual_bracket(&cb) {
                        output = Some(json!({ "dual_bracket": describe_algebra(&db) }));
                    }
                    vec![c]
                }
            };
            (vec![src], checks)
        }
        Command::CheckManin { input } => {
            let src = load(input)?;
            let (_, alg) = src.algebra()?;
            if alg.dim() % 2 != 0 {
                return Err(usage("check-manin needs an even-dimensional algebra (g ⊕ g*)"));
            }
            let d = alg.dim() / 2;
            let metric = MetricNLieAlgebra::new(alg, hyperbolic_form(d)).map_err(schema)?;
            let t = manin_of(metric, d);
            let r = check_manin_triple(&t);
            if r.passed {
                if let Ok(cb) = bialgebra_from_manin(&t) {
                    output = Some(json!({ "cobracket": cobracket_document("from-manin", "g1", &cb),
                                          "g1": algebra_document("g1", cb.algebra()) }));
                }
            }
            (vec![src], vec![r])
        }
        Command::Theorem { input } => {
            let src = load(input)?;
            let (_, cb) = src.cobracket()?;
            (vec![src], vec![theorem_equivalence(&cb)])
        }
        Command::Cohomology { input, rep, degree } => {
            let src = load(input)?;
            let (_, alg) = src.algebra()?;
            let (r, mut checks) = parse_rep(&alg, rep)?;
            let dim = cohomology_dim(&r, *degree).map_err(|e| usage(e.to_string()))?;
            let witness = if *degree >= 2 && dim > 0 {
                nontrivial_cocycle(&r, *degree)
                    .map_err(|e| usage(e.to_string()))?
                    .is_some()
            } else {
                false
            };
            checks.push(r.check_representation());
            output = Some(json!({ "degree": degree, "dimension": dim, "nontrivial_witness": witness }));
            (vec![src], checks)
        }
    };
    Ok(Job {
        sources,
        checks,
        output,
    })
}

/// Parses `args` (including the program name) and runs one job.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let job = |cli: &Cli| -> Result<ReportDocument, Failure> {
        let seed = cli.seed.unwrap_or(0);
        let start = Instant::now();
        let job = execute(&cli.command, seed)?;
        let sources: Vec<&Source> = job.sources.iter().collect();
        let mut report = ReportDocument::new(cli.command.name(), &sources, &job.checks);
        if matches!(cli.command, Command::CheckRep { .. }) {
            report.seed = Some(seed);
        }
        report.output = job.output;
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        if let Some(path) = &cli.report {
            write_file(path, &report.to_json())?;
        }
        Ok(report)
    };
    let result = match cli.jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| job(&cli)),
            Err(e) => Err(usage(e.to_string())),
        },
        None => job(&cli),
    };
    match result {
        Ok(report) => Outcome {
            code: if report.passed { EXIT_PASS } else { EXIT_FAIL },
            stdout: match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            },
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
