//! The `slocc` command line: argument parsing, dispatch and artifact output.
//!
//! [`run`] is a pure function from a parsed [`Cli`] to the report text and a
//! status, so the binary and the tests share one code path. [`main_with`]
//! adds argument parsing, output routing and exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qudit_slocc::classify::{classify_states, family_label, signature, SplitChoice};
use qudit_slocc::generators::{gen_dicke3, gen_dicke4, gen_ghz, gen_w};
use qudit_slocc::io::{parse_state_file, state_to_json};
use qudit_slocc::matricize::{coefficient_matrix, QuditPermutation, Split};
use qudit_slocc::rank::{rank_exact, rank_numeric, NumericTolerance, RankMethod};
use qudit_slocc::report::{capacity_csv, capacity_report, classify_csv, matrix_dump, scan_csv, to_json_line, trials_jsonl};
use qudit_slocc::scan::dicke_scan;
use qudit_slocc::slocc::{run_trials, summarize, TrialConfig, TrialKind};
use qudit_slocc::state::{Dims, QuditState};
use qudit_slocc::table1::{table1_corrections, table1_split, table1_suite};
use qudit_slocc::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "slocc", version, about = "Exact SLOCC family classification of n-qudit pure states")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    /// Invertible local operators leave every rank unchanged.
    Theorem1,
    /// Arbitrary local operators never increase a rank.
    Monotone,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of one coefficient matrix.
    Rank {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_split_choice)]
        l: SplitChoice,
        #[arg(long, default_value = "I")]
        sigma: String,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Multiplier on the numeric rank threshold.
        #[arg(long, default_value_t = NumericTolerance::DEFAULT_SAFETY_FACTOR)]
        safety_factor: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Rank signature of one state.
    Signature {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_split_choice)]
        l: SplitChoice,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Family labels for a batch of states with equal dims.
    Classify {
        #[arg(required = true)]
        states: Vec<PathBuf>,
        #[arg(long, default_value = "auto", value_parser = parse_split_choice)]
        l: SplitChoice,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Emit a generated state as a state file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Dump a coefficient matrix with exact entries.
    Matrix {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value = "I")]
        sigma: String,
    },
    /// Randomized checks; one JSON line per trial.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: u64,
        /// Fix the dims instead of sampling them per trial.
        #[arg(long, value_parser = parse_dims)]
        dims: Option<Dims>,
    },
    /// Recompute the 2x2x2x4 representative table.
    Table1 {
        /// Use the corrected representatives for rows that do not reproduce.
        #[arg(long)]
        corrected: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Dicke occupation scan at l = floor(n/2).
    Scan {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        n: usize,
    },
    /// Matrix-count capacity of every split.
    Capacity {
        #[arg(long, value_parser = parse_dims)]
        dims: Dims,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Sum of |k...k> over k < d
    Ghz {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Single excitation spread over n qubits
    W {
        #[arg(long)]
        n: usize,
    },
    /// Symmetric qutrit state with l1 ones and l2 twos
    Dicke3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
    },
    /// Symmetric ququart state with l1 ones, l2 twos and l3 threes
    Dicke4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
        #[arg(long)]
        l3: usize,
    },
}

fn parse_split_choice(s: &str) -> Result<SplitChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dims(s: &str) -> Result<Dims, String> {
    let sizes = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad dimension {x:?} in {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    Dims::new(sizes).map_err(|e| e.to_string())
}

/// What a successful dispatch produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    /// False when a verification verb found a mismatch.
    pub verified: bool,
    /// One-line summary for stderr.
    pub note: Option<String>,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, verified: true, note: None }
    }
}

fn state_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load(path: &Path) -> qudit_slocc::Result<QuditState> {
    parse_state_file(path)
}

#[derive(Serialize)]
struct RankJson {
    l: usize,
    sigma: String,
    rows: usize,
    cols: usize,
    method: RankMethod,
    rank: usize,
}

#[derive(Serialize)]
struct SignatureJson<'a> {
    state_id: &'a str,
    dims: &'a [usize],
    l: usize,
    sigmas: Vec<String>,
    ranks: &'a [usize],
    family_label: String,
}

#[derive(Serialize)]
struct Table1Json {
    row: usize,
    kets: Vec<String>,
    expected: [usize; 3],
    computed: Vec<usize>,
    matches: bool,
    family_label: String,
}

fn signatures_json(items: &[qudit_slocc::classify::Classified]) -> String {
    items
        .iter()
        .map(|c| {
            to_json_line(&SignatureJson {
                state_id: &c.id,
                dims: c.signature.dims.sizes(),
                l: c.signature.split().get(),
                sigmas: c.signature.sigmas.iter().map(ToString::to_string).collect(),
                ranks: &c.signature.ranks,
                family_label: c.label.to_string(),
            })
        })
        .collect::<String>()
}

/// Runs one parsed command. Errors are usage or input errors.
pub fn run(cli: &Cli) -> qudit_slocc::Result<Report> {
    match &cli.command {
        Command::Rank { state, l, sigma, method, safety_factor, format } => {
            let s = load(state)?;
            let split = l.resolve(s.dims())?;
            let sigma: QuditPermutation = sigma.parse()?;
            let cm = coefficient_matrix(&s, split, &sigma)?;
            let res = match method {
                Method::Exact => rank_exact(&cm.matrix),
                Method::Numeric => {
                    if !(safety_factor.is_finite() && *safety_factor > 0.0) {
                        return Err(Error::InvalidParameters(format!("safety factor must be positive, got {safety_factor}")));
                    }
                    rank_numeric(&cm.matrix, NumericTolerance { safety_factor: *safety_factor })?
                }
            };
            let row = RankJson {
                l: split.get(),
                sigma: sigma.to_string(),
                rows: cm.rows(),
                cols: cm.cols(),
                method: res.method,
                rank: res.rank,
            };
            Ok(Report::ok(match format {
                Format::Json => to_json_line(&row),
                Format::Csv => format!(
                    "# columns: l,sigma,rows,cols,method,rank\nl,sigma,rows,cols,method,rank\n{},{},{},{},{},{}\n",
                    row.l,
                    row.sigma,
                    row.rows,
                    row.cols,
                    serde_json::to_value(row.method).expect("enum").as_str().unwrap_or_default(),
                    row.rank
                ),
            }))
        }
        Command::Signature { state, l, format } => {
            let items = classify_states(&[(state_id(state), load(state)?)], *l)?;
            Ok(Report::ok(match format {
                Format::Csv => classify_csv(&items),
                Format::Json => signatures_json(&items),
            }))
        }
        Command::Classify { states, l, format } => {
            let loaded = states
                .iter()
                .map(|p| Ok((state_id(p), load(p)?)))
                .collect::<qudit_slocc::Result<Vec<_>>>()?;
            let items = classify_states(&loaded, *l)?;
            let families = items.iter().map(|c| &c.label).collect::<std::collections::BTreeSet<_>>().len();
            let mut rep = Report::ok(match format {
                Format::Csv => classify_csv(&items),
                Format::Json => signatures_json(&items),
            });
            rep.note = Some(format!("{} states, {families} families", items.len()));
            Ok(rep)
        }
        Command::Gen { family } => {
            let s = match *family {
                GenFamily::Ghz { n, d } => gen_ghz(n, d)?,
                GenFamily::W { n } => gen_w(n)?,
                GenFamily::Dicke3 { n, l1, l2 } => gen_dicke3(n, l1, l2)?,
                GenFamily::Dicke4 { n, l1, l2, l3 } => gen_dicke4(n, l1, l2, l3)?,
            };
            Ok(Report::ok(state_to_json(&s)))
        }
        Command::Matrix { state, l, sigma } => {
            let s = load(state)?;
            let split = Split::new(*l, s.n())?;
            let cm = coefficient_matrix(&s, split, &sigma.parse()?)?;
            Ok(Report::ok(matrix_dump(&cm)))
        }
        Command::Verify { kind, seed, trials, dims } => {
            if *trials == 0 {
                return Err(Error::InvalidParameters("--trials must be at least 1".into()));
            }
            let kind = match kind {
                VerifyKind::Theorem1 => TrialKind::Theorem1,
                VerifyKind::Monotone => TrialKind::Monotone,
            };
            let reports = run_trials(kind, *seed, *trials, &TrialConfig::default(), dims.as_ref())?;
            let s = summarize(&reports);
            Ok(Report {
                text: trials_jsonl(&reports),
                verified: s.fail == 0,
                note: Some(format!(
                    "{}/{} pass, {} fail, {} skipped (zero image), {} invertible",
                    s.pass,
                    reports.len(),
                    s.fail,
                    s.skip,
                    s.invertible_pass
                )),
            })
        }
        Command::Table1 { corrected, format } => table1_report(*corrected, *format),
        Command::Scan { levels, n } => Ok(Report::ok(scan_csv(*levels, *n, &dicke_scan(*levels, *n)?))),
        Command::Capacity { dims, format } => {
            let rep = capacity_report(dims)?;
            Ok(Report::ok(match format {
                Format::Csv => capacity_csv(&rep),
                Format::Json => to_json_line(&rep),
            }))
        }
    }
}

fn table1_report(corrected: bool, format: Format) -> qudit_slocc::Result<Report> {
    let fixes = if corrected { table1_corrections()? } else { Vec::new() };
    let split = SplitChoice::Fixed(table1_split().get());
    let mut rows = Vec::new();
    for e in table1_suite() {
        let (kets, state) = match fixes.iter().find(|(row, _, _)| *row == e.row) {
            Some((_, _, s)) => (s.terms().map(|(ix, _)| ket(&ix)).collect(), s.clone()),
            None => (e.kets.iter().map(|k| k.to_string()).collect(), e.state.clone()),
        };
        let sig = signature(&state, split)?;
        rows.push(Table1Json {
            row: e.row,
            kets,
            expected: e.expected_ranks,
            matches: sig.ranks == e.expected_ranks,
            computed: sig.ranks.clone(),
            family_label: family_label(&sig).to_string(),
        });
    }
    let matched = rows.iter().filter(|r| r.matches).count();
    let text = match format {
        Format::Json => rows.iter().map(to_json_line).collect(),
        Format::Csv => {
            let mut out = String::from(
                "# columns: row,kets,expected,computed,match,family_label\nrow,kets,expected,computed,match,family_label\n",
            );
            let join = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},\"{}\"\n",
                    r.row,
                    r.kets.join("+"),
                    join(&r.expected),
                    join(&r.computed),
                    r.matches,
                    r.family_label
                ));
            }
            out
        }
    };
    Ok(Report {
        text,
        verified: matched == rows.len(),
        note: Some(format!("{matched}/{} rows reproduce", rows.len())),
    })
}

fn ket(digits: &[usize]) -> String {
    digits.iter().map(ToString::to_string).collect()
}

/// Parses `args` (including the program name), runs, and writes the report to
/// `--output` or `out`. Returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(shown.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(shown.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &report.text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(report.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    if let Some(note) = &report.note {
        let _ = writeln!(err, "{note}");
    }
    if report.verified {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}
