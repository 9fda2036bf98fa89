//! Command-line front end: verification suites, orbit/coefficient tables,
//! and transcribed reference data, with machine-readable output.
//!
//! Exit codes: 0 all-pass / success, 1 verification or runtime failure,
//! 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dp5_core::lattice::{preliminary_symmetry_roots, recurrence_roots, standard_roots, RECURRENCE_WORD, STANDARD_WORD};
use dp5_core::orthopoly::{self, WeightParams};
use dp5_core::painleve::base_points::{base_point_table, BasePointParams, Surface};
use dp5_core::painleve::{self, StdOrbitState};
use dp5_core::rug::Rational;
use dp5_core::scalar::{format_float, parse_decimal_rational};
use dp5_core::{suites, VerificationReport};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dp5", version, about = "Verification suites and computations for the D5 discrete Painlevé dynamics and the associated orthogonal-polynomial recurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit its report(s).
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compute per-index tables (coefficients, ladder quantities, orbits).
    Compute {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        opts: CommonOpts,
        #[command(flatten)]
        init: OrbitInit,
    },
    /// Print transcribed reference data for audit.
    Describe {
        #[arg(value_enum)]
        topic: Topic,
        /// Which surface's data to show where it matters.
        #[arg(long, value_enum, default_value_t = SurfaceArg::Recurrence)]
        surface: SurfaceArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lattice,
    Weyl,
    Ladder,
    Equivalence,
    Basepoints,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Coeffs,
    Ladder,
    OrbitStd,
    OrbitRec,
}

#[derive(Clone, Copy, ValueEnum)]
enum Topic {
    Roots,
    Basepoints,
    Words,
    RootVariables,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Standard,
    Recurrence,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOpts {
    /// Weight exponent alpha, as a decimal or fraction string.
    #[arg(long, default_value = "1.5")]
    alpha: String,
    /// Weight exponent beta.
    #[arg(long, default_value = "0.5")]
    beta: String,
    /// Time-evolution parameter s.
    #[arg(long, default_value = "1")]
    s: String,
    /// Largest index n (for basepoints: the index n of the verified surface).
    #[arg(long, default_value_t = 20)]
    nmax: usize,
    /// Working precision in decimal digits.
    #[arg(long, default_value_t = 60)]
    prec: u32,
    /// Seed for randomized identity testing.
    #[arg(long, default_value_t = 2026)]
    seed: u64,
    /// Number of random states per relation.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Output path (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Initial data for the standard orbit, exact rationals.
#[derive(Args)]
struct OrbitInit {
    #[arg(long, default_value = "1/2")]
    a0: String,
    #[arg(long, default_value = "1/4")]
    a1: String,
    #[arg(long, default_value = "1/8")]
    a2: String,
    #[arg(long, default_value = "1/8")]
    a3: String,
    #[arg(long, default_value = "1")]
    t: String,
    #[arg(long, default_value = "2")]
    f: String,
    #[arg(long, default_value = "1")]
    g: String,
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
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

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify { suite, opts } => run_verify(suite, &opts),
        Command::Compute { kind, opts, init } => run_compute(kind, &opts, &init),
        Command::Describe { topic, surface } => {
            print!("{}", describe(topic, surface));
            Ok(0)
        }
    }
}

fn parsed_params(opts: &CommonOpts) -> Result<(Rational, Rational, Rational), CliError> {
    let alpha = parse_decimal_rational(&opts.alpha).map_err(usage)?;
    let beta = parse_decimal_rational(&opts.beta).map_err(usage)?;
    let s = parse_decimal_rational(&opts.s).map_err(usage)?;
    Ok((alpha, beta, s))
}

fn weight_params(opts: &CommonOpts) -> Result<WeightParams, CliError> {
    let (alpha, beta, s) = parsed_params(opts)?;
    WeightParams::new(alpha, beta, s, opts.prec).map_err(usage)
}

fn base_point_params(opts: &CommonOpts) -> Result<BasePointParams, CliError> {
    let (alpha, beta, s) = parsed_params(opts)?;
    let n = i64::try_from(opts.nmax).map_err(usage)?;
    Ok(BasePointParams::new(n, alpha, beta, s))
}

fn run_verify(suite: Suite, opts: &CommonOpts) -> Result<u8, CliError> {
    let map_op = |e: orthopoly::OpError| match e {
        orthopoly::OpError::InvalidParams(_) | orthopoly::OpError::Domain(_) | orthopoly::OpError::IndexRange(_) => usage(e),
        other => failure(other),
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    match suite {
        Suite::Lattice => reports.push(suites::lattice_suite()),
        Suite::Weyl => reports.push(suites::weyl_suite(opts.seed, opts.trials).map_err(failure)?),
        Suite::Ladder => {
            reports.extend(suites::ladder_suite(&weight_params(opts)?, opts.nmax).map_err(map_op)?)
        }
        Suite::Equivalence => reports.push(
            suites::equivalence_suite(&weight_params(opts)?, opts.nmax, opts.seed, opts.trials)
                .map_err(map_op)?,
        ),
        Suite::Basepoints => reports.extend(suites::basepoint_suite(&base_point_params(opts)?)),
        Suite::All => {
            reports.push(suites::lattice_suite());
            reports.push(suites::weyl_suite(opts.seed, opts.trials).map_err(failure)?);
            let params = weight_params(opts)?;
            reports.extend(suites::ladder_suite(&params, opts.nmax).map_err(map_op)?);
            reports.push(
                suites::equivalence_suite(&params, opts.nmax, opts.seed, opts.trials).map_err(map_op)?,
            );
            reports.extend(suites::basepoint_suite(&base_point_params(opts)?));
        }
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let body = match opts.format {
        Format::Json => reports_json(&reports)?,
        Format::Csv => reports_csv(&reports),
    };
    write_output(opts, &body)?;
    Ok(if all_passed { 0 } else { 1 })
}

fn reports_json(reports: &[VerificationReport]) -> Result<String, CliError> {
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(reports)
    };
    text.map(|mut s| {
        s.push('\n');
        s
    })
    .map_err(failure)
}

fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("check,item,passed,residual,note\n");
    for r in reports {
        for item in &r.details {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&r.check),
                csv_field(&item.name),
                item.passed,
                csv_field(&item.residual),
                csv_field(item.note.as_deref().unwrap_or("")),
            ));
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// A computed table: column names plus rows of decimal strings. CSV and
/// JSON carry exactly the same cell strings.
struct Table {
    kind: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn to_json(&self) -> String {
        let obj = serde_json::json!({
            "kind": self.kind,
            "columns": self.columns,
            "rows": self.rows,
        });
        format!("{}\n", serde_json::to_string_pretty(&obj).expect("serializable"))
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

fn run_compute(kind: Kind, opts: &CommonOpts, init: &OrbitInit) -> Result<u8, CliError> {
    let digits = opts.prec as usize;
    let table = match kind {
        Kind::Coeffs => {
            let params = weight_params(opts)?;
            let rec = orthopoly::recurrence_coefficients(&params, opts.nmax).map_err(failure)?;
            Table {
                kind: "coeffs",
                columns: vec!["n", "h_n", "alpha_n", "beta_n", "p_n"],
                rows: (0..=rec.n_max)
                    .map(|n| {
                        vec![
                            n.to_string(),
                            format_float(&rec.h[n], digits),
                            format_float(&rec.alpha[n], digits),
                            format_float(&rec.beta[n], digits),
                            format_float(&rec.p_sub[n], digits),
                        ]
                    })
                    .collect(),
            }
        }
        Kind::Ladder => {
            let params = weight_params(opts)?;
            let (_, ladder) = orthopoly::ladder_quantities(&params, opts.nmax).map_err(|e| match e {
                orthopoly::OpError::Domain(_) => usage(e),
                other => failure(other),
            })?;
            Table {
                kind: "ladder",
                columns: vec!["n", "R_n", "r_n"],
                rows: (0..=ladder.n_max)
                    .map(|n| {
                        vec![
                            n.to_string(),
                            format_float(&ladder.big_r[n], digits),
                            format_float(&ladder.small_r[n], digits),
                        ]
                    })
                    .collect(),
            }
        }
        Kind::OrbitRec => {
            let params = weight_params(opts)?;
            let (seq, _) = orthopoly::xy_sequence(&params, opts.nmax).map_err(failure)?;
            let s = params.s_f();
            let mut rows = Vec::new();
            for n in 1..=seq.n_max {
                let (f, g, _) = painleve::to_fg(seq.x(n), seq.y(n), n as i64, &s)
                    .map_err(|e| failure(format!("coordinate change failed at n = {n}: {e}")))?;
                rows.push(vec![
                    n.to_string(),
                    format_float(seq.x(n), digits),
                    format_float(seq.y(n), digits),
                    format_float(&f, digits),
                    format_float(&g, digits),
                ]);
            }
            Table { kind: "orbit-rec", columns: vec!["n", "x_n", "y_n", "f_n", "g_n"], rows }
        }
        Kind::OrbitStd => {
            let p = |s: &str| parse_decimal_rational(s).map_err(usage);
            let mut state = StdOrbitState {
                a: [p(&init.a0)?, p(&init.a1)?, p(&init.a2)?, p(&init.a3)?],
                t: p(&init.t)?,
                f: p(&init.f)?,
                g: p(&init.g)?,
                step_index: 0,
            };
            let mut rows = vec![std_orbit_row(&state)];
            for _ in 0..opts.nmax {
                state = painleve::std_step_forward(&state)
                    .map_err(|e| failure(format!("orbit stopped: {e}")))?;
                rows.push(std_orbit_row(&state));
            }
            Table {
                kind: "orbit-std",
                columns: vec!["k", "a0", "a1", "a2", "a3", "t", "f", "g"],
                rows,
            }
        }
    };
    let body = match opts.format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
    };
    write_output(opts, &body)?;
    Ok(0)
}

fn std_orbit_row(st: &StdOrbitState<Rational>) -> Vec<String> {
    vec![
        st.step_index.to_string(),
        st.a[0].to_string(),
        st.a[1].to_string(),
        st.a[2].to_string(),
        st.a[3].to_string(),
        st.t.to_string(),
        st.f.to_string(),
        st.g.to_string(),
    ]
}

fn describe(topic: Topic, surface: SurfaceArg) -> String {
    let mut out = String::new();
    match topic {
        Topic::Roots => {
            let roots = match surface {
                SurfaceArg::Standard => standard_roots(),
                SurfaceArg::Recurrence => recurrence_roots(),
            };
            out.push_str("surface roots (D5 affine diagram: d0-d2, d1-d2, d2-d3, d3-d4, d3-d5):\n");
            for (i, d) in roots.surface_roots.iter().enumerate() {
                out.push_str(&format!("  d{i} = {}\n", d.display()));
            }
            out.push_str("symmetry roots (A3 affine square a0-a1-a2-a3-a0):\n");
            for (i, a) in roots.symmetry_roots.iter().enumerate() {
                out.push_str(&format!("  a{i} = {}\n", a.display()));
            }
            if matches!(surface, SurfaceArg::Recurrence) {
                out.push_str("preliminary symmetry roots (before the w1 adjustment):\n");
                for (i, a) in preliminary_symmetry_roots().iter().enumerate() {
                    out.push_str(&format!("  a{i} = {}\n", a.display()));
                }
            }
        }
        Topic::Basepoints => {
            let table = base_point_table(match surface {
                SurfaceArg::Standard => Surface::Standard,
                SurfaceArg::Recurrence => Surface::Recurrence,
            });
            for spec in table {
                out.push_str(&format!("{}: chart {}; {}", spec.label, spec.chart, spec.coordinates));
                if let Some(pre) = spec.predecessor {
                    out.push_str(&format!(" (infinitely near {pre})"));
                }
                out.push('\n');
            }
        }
        Topic::Words => {
            out.push_str(&format!(
                "standard translation word: {} (rightmost generator acts first)\n",
                STANDARD_WORD.join(" ")
            ));
            out.push_str(&format!(
                "recurrence translation word: {} (equals w1 . standard . w1)\n",
                RECURRENCE_WORD.join(" ")
            ));
            out.push_str("parameter shifts: standard (+1,-1,+1,-1); recurrence (0,+1,0,-1)\n");
            out.push_str("lattice translations: standard <-1,1,-1,1> delta; recurrence <0,-1,0,1> delta on the preliminary roots\n");
        }
        Topic::RootVariables => {
            out.push_str("root variables of the recurrence orbit at index n:\n");
            out.push_str("  a0 = n + beta\n  a1 = -n\n  a2 = n + alpha\n  a3 = 1 - n - alpha - beta\n");
            out.push_str("time parameter: t = -s\n");
            out.push_str("normalization: a0 + a1 + a2 + a3 = 1\n");
        }
    }
    out
}

fn write_output(opts: &CommonOpts, body: &str) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => std::fs::write(path, body).map_err(failure),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(failure),
    }
}
