//! Command-line front end: argument parsing, dispatch, JSON and SVG output.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use surfint::cvp::ComponentKind;
use surfint::cyclic::{cyclic_normal_form, prime_decomposition};
use surfint::gs_verify::verify_basis;
use surfint::hyperbolic::verify_hyperbolic;
use surfint::index::{intersection_report, self_intersection_report, IndexedComponent};
use surfint::rewrite::normal_form;
use surfint::{format_word, parse_word, Genus, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "surfint",
    version,
    about = "Word problem and intersection numbers for closed surface groups"
)]
pub struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pub json_pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rewrite a word to its normal form.
    Reduce(SingleWord),
    /// Least cyclically reduced representative of a conjugacy class.
    CyclicReduce(SingleWord),
    /// Components of the common value pairs of two classes, with indices.
    Classes(TwoWords),
    /// Geometric intersection number of two classes.
    Intersect(TwoWords),
    /// Geometric self-intersection number of a class.
    SelfIntersect(SelfIntersectArgs),
    /// Check that every composition of basis rules reduces to zero.
    VerifyBasis {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 3)]
        max_s: u32,
    },
    /// Check the matrix model of the generators.
    VerifyHyperbolic {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct SingleWord {
    #[arg(long)]
    pub genus: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Debug, Args)]
pub struct SelfIntersectArgs {
    #[command(flatten)]
    pub input: SingleWord,
    /// Write a picture of the component grid.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TwoWords {
    #[arg(long)]
    pub genus: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub word1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub word2: String,
    /// Write a picture of the component grid.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<surfint::Error> for Failure {
    fn from(e: surfint::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Serialize)]
struct ReduceOutput {
    normal_form: Word,
}

#[derive(Serialize)]
struct CyclicOutput {
    representative: Word,
    length: usize,
    root: Option<Word>,
    exponent: Option<usize>,
}

/// Parse `argv` (including the program name) and run, writing to the
/// process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(value) => {
            let text = if cli.json_pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("JSON values always serialize");
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification(json)) => {
            let _ = writeln!(out, "{json}");
            let _ = writeln!(err, "error: verification failed");
            EXIT_VERIFY_FAILED
        }
    }
}

fn genus(g: u32) -> Result<Genus, Failure> {
    Ok(Genus::new(g)?)
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types always serialize")
}

fn dispatch(cli: &Cli) -> Result<serde_json::Value, Failure> {
    match &cli.command {
        Command::Reduce(a) => {
            let w = parse_word(&a.word, genus(a.genus)?)?;
            Ok(to_json(&ReduceOutput {
                normal_form: normal_form(&w),
            }))
        }
        Command::CyclicReduce(a) => {
            let w = parse_word(&a.word, genus(a.genus)?)?;
            let cw = cyclic_normal_form(&w);
            let pd = prime_decomposition(&cw).ok();
            Ok(to_json(&CyclicOutput {
                length: cw.len(),
                root: pd.as_ref().map(|p| p.root.clone()),
                exponent: pd.map(|p| p.exponent),
                representative: cw.into_word(),
            }))
        }
        Command::Classes(a) => {
            let g = genus(a.genus)?;
            let (w1, w2) = (parse_word(&a.word1, g)?, parse_word(&a.word2, g)?);
            let report = intersection_report(&w1, &w2)?;
            let (m, n) = (
                report.representatives[0].len(),
                report.representatives[1].len(),
            );
            write_svg(a.svg.as_deref(), &report.components, m, n)?;
            Ok(to_json(&report.components))
        }
        Command::Intersect(a) => {
            let g = genus(a.genus)?;
            let (w1, w2) = (parse_word(&a.word1, g)?, parse_word(&a.word2, g)?);
            let report = intersection_report(&w1, &w2)?;
            let (m, n) = (
                report.representatives[0].len(),
                report.representatives[1].len(),
            );
            write_svg(a.svg.as_deref(), &report.components, m, n)?;
            Ok(to_json(&report))
        }
        Command::SelfIntersect(a) => {
            let w = parse_word(&a.input.word, genus(a.input.genus)?)?;
            let report = self_intersection_report(&w);
            let m = report.representatives[0].len();
            write_svg(a.svg.as_deref(), &report.components, m, m)?;
            Ok(to_json(&report))
        }
        Command::VerifyBasis { genus: g, max_s } => {
            let report = verify_basis(genus(*g)?, *max_s);
            verdict(report.passed(), to_json(&report))
        }
        Command::VerifyHyperbolic { genus: g, tol } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Failure::Usage(format!(
                    "tolerance must be positive (got {tol})"
                )));
            }
            let report = verify_hyperbolic(genus(*g)?, *tol);
            verdict(report.passed(), to_json(&report))
        }
    }
}

fn verdict(passed: bool, value: serde_json::Value) -> Result<serde_json::Value, Failure> {
    if passed {
        Ok(value)
    } else {
        Err(Failure::Verification(value.to_string()))
    }
}

fn write_svg(
    path: Option<&Path>,
    components: &[IndexedComponent],
    m: usize,
    n: usize,
) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    std::fs::write(path, grid_svg(components, m, n))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Write the component grid picture to `path`.
pub fn emit_grid_svg(
    components: &[IndexedComponent],
    m: usize,
    n: usize,
    path: &Path,
) -> std::io::Result<()> {
    std::fs::write(path, grid_svg(components, m, n))
}

const CELL: f64 = 40.0;
const MARGIN: f64 = 30.0;

/// Standalone SVG of the `m x n` grid: `k` runs left to right, `l` bottom
/// to top. Parallel runs climb up-right, antiparallel runs fall down-right;
/// each run point contributes half a diagonal towards each neighbour in the
/// run, so wrapped and infinite runs stay inside the torus picture.
pub fn grid_svg(components: &[IndexedComponent], m: usize, n: usize) -> String {
    let width = 2.0 * MARGIN + CELL * m.saturating_sub(1) as f64;
    let height = 2.0 * MARGIN + CELL * n.saturating_sub(1) as f64;
    let x = |k: f64| MARGIN + CELL * (k - 1.0);
    let y = |l: f64| height - MARGIN - CELL * (l - 1.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r##"<g class="lattice" fill="#bbb">"##);
    for k in 1..=m {
        for l in 1..=n {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="2"/>"#,
                x(k as f64),
                y(l as f64)
            );
        }
    }
    let _ = writeln!(s, "</g>");

    for ic in components {
        let c = &ic.component;
        let essential = ic.index.is_essential();
        let colour = if essential { "#c0392b" } else { "#34495e" };
        let _ = writeln!(
            s,
            r#"<g class="component" data-k="{}" data-l="{}" data-q="{}" data-index="{}" stroke="{colour}" fill="{colour}" stroke-width="3">"#,
            c.anchor_k,
            c.anchor_l,
            c.kind,
            ic.index.value()
        );
        let points = c.grid_points(m, n);
        let dl = match c.kind {
            ComponentKind::Isolated => 0.0,
            ComponentKind::ParallelRun(_) | ComponentKind::InfiniteParallel => 1.0,
            ComponentKind::AntiparallelRun(_) | ComponentKind::InfiniteAntiparallel => -1.0,
        };
        if c.kind == ComponentKind::Isolated {
            let (k, l) = points[0];
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="5"/>"#,
                x(k as f64),
                y(l as f64)
            );
        } else {
            let last = points.len() - 1;
            for (i, &(k, l)) in points.iter().enumerate() {
                let (k, l) = (k as f64, l as f64);
                let back = if c.kind.is_infinite() || i > 0 {
                    0.5
                } else {
                    0.0
                };
                let fwd = if c.kind.is_infinite() || i < last {
                    0.5
                } else {
                    0.0
                };
                let _ = writeln!(
                    s,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    x(k - back),
                    y(l - back * dl),
                    x(k + fwd),
                    y(l + fwd * dl)
                );
            }
        }
        if essential {
            let (k, l) = points[0];
            let _ = writeln!(
                s,
                r#"<text class="index-label" x="{}" y="{}" font-size="14" stroke="none">{:+}</text>"#,
                x(k as f64) + 6.0,
                y(l as f64) - 6.0,
                ic.index.value()
            );
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

/// Canonical single-space form of a word in the text format.
pub fn normalize_word_text(text: &str, g: u32) -> Result<String, surfint::Error> {
    Ok(format_word(&parse_word(text, Genus::new(g)?)?))
}
