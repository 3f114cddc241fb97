//! Command-line front end for the `species` crate.
//!
//! Three subcommands: `series` expands an expression into labeled or
//! unlabeled counts (or prints its cycle index), `table` prints the four
//! counting tables for a family of enrichments, and `verify` runs the
//! library's cross-validation suites.
//!
//! [`run`] does everything in process against caller-supplied writers, so
//! tests exercise the full command path without spawning a binary.

pub mod parse;
pub mod render;

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use species::kernel::{cycle_index, egf_coeffs, tgf_coeffs};
use species::twosort::{twelvefold_table, Family};
use species::verify::{
    kernel_suite, naturality_suite, run_all, twosort_suite, VerifyOptions,
};

/// Highest series degree the `series` subcommand accepts.
const MAX_CAP: u32 = 20;
/// Largest table dimension; keeps every entry well inside 64 bits.
const MAX_TABLE: usize = 12;
/// Largest structure size the verification suites will enumerate.
const MAX_VERIFY_N: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "species",
    version,
    about = "Exact calculus of combinatorial species: series, counting tables, self-verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a species expression into a coefficient line or cycle index.
    Series {
        /// Expression, e.g. "Der", "E(E+)", "E(y*C)", "X * E + C".
        expr: String,
        /// Highest degree to compute; prints entries for sizes 0..=cap.
        #[arg(long, default_value_t = 10)]
        cap: u32,
        /// egf = labeled counts, tgf = unlabeled counts, zyklus = cycle index.
        #[arg(long, value_enum, default_value_t = Kind::Egf)]
        kind: Kind,
    },
    /// Print the labeled/types_x/types_y/types_both tables for each row.
    Table {
        /// Row catalog: three, six, or seven enrichments.
        #[arg(long, value_enum, default_value_t = FamilyArg::Twelve)]
        family: FamilyArg,
        /// Largest domain size (rows run n = 0..=n).
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Largest codomain size (columns run k = 0..=k).
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the cross-validation suites; one PASS/FAIL line per check.
    Verify {
        /// Largest structure size the suites enumerate exhaustively.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Deliberately corrupt one series to prove failures are caught.
        #[arg(long, hide = true)]
        self_test_corrupt: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Egf,
    Tgf,
    Zyklus,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum FamilyArg {
    Twelve,
    Twenty,
    Twentytwo,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Twelve => Family::Twelve,
            FamilyArg::Twenty => Family::Twenty,
            FamilyArg::Twentytwo => Family::TwentyTwo,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Suite {
    Kernel,
    Twosort,
    Naturality,
    All,
}

/// Dispatch a full argument vector (including argv[0]) and return the exit
/// code: 0 success, 1 verification failure, 2 usage/guard/input error.
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match cli.command {
        Command::Series { expr, cap, kind } => cmd_series(&expr, cap, kind, out, err),
        Command::Table { family, n, k, format } => cmd_table(family, n, k, format, out, err),
        Command::Verify { max_n, suite, self_test_corrupt } => {
            cmd_verify(max_n, suite, self_test_corrupt, out, err)
        }
    }
}

fn cmd_series(
    expr_text: &str,
    cap: u32,
    kind: Kind,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if cap > MAX_CAP {
        let _ = writeln!(err, "error: --cap {cap} exceeds the limit of {MAX_CAP}");
        return 2;
    }
    let expr = match parse::parse(expr_text) {
        Ok(expr) => expr,
        Err(e) => {
            let _ = writeln!(err, "error: cannot parse {expr_text:?}: {e}");
            return 2;
        }
    };
    let line = match kind {
        Kind::Egf => egf_coeffs(&expr, cap as usize).map(|entries| render::series_line(&entries)),
        Kind::Tgf => tgf_coeffs(&expr, cap as usize).map(|entries| render::series_line(&entries)),
        Kind::Zyklus => cycle_index(&expr, cap).map(|z| z.0.to_string()),
    };
    match line {
        Ok(line) => {
            let _ = writeln!(out, "{line}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn cmd_table(
    family: FamilyArg,
    n: usize,
    k: usize,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if n > MAX_TABLE || k > MAX_TABLE {
        let _ = writeln!(
            err,
            "error: --n {n} / --k {k} exceed the limit of {MAX_TABLE}"
        );
        return 2;
    }
    let rows = match twelvefold_table(n, k, family.into()) {
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = match format {
        Format::Text => render::render_text(&rows),
        Format::Csv => render::render_csv(&rows),
        Format::Json => match render::table_doc(&rows) {
            Ok(doc) => render::render_json(&doc) + "\n",
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return 2;
            }
        },
    };
    let _ = write!(out, "{text}");
    0
}

fn cmd_verify(
    max_n: usize,
    suite: Suite,
    self_test_corrupt: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if max_n > MAX_VERIFY_N {
        let _ = writeln!(
            err,
            "error: --max-n {max_n} exceeds the limit of {MAX_VERIFY_N}"
        );
        return 2;
    }
    let opts = VerifyOptions { max_n, inject_failure: self_test_corrupt };
    let results = match suite {
        Suite::Kernel => kernel_suite(&opts),
        Suite::Twosort => twosort_suite(&opts),
        Suite::Naturality => naturality_suite(&opts),
        Suite::All => run_all(&opts),
    };
    let mut failures = 0usize;
    for check in &results {
        let status = if check.passed {
            "PASS"
        } else {
            failures += 1;
            "FAIL"
        };
        let _ = writeln!(out, "{status} {}: {}", check.name, check.details);
    }
    if failures == 0 {
        let _ = writeln!(out, "all {} checks passed", results.len());
        0
    } else {
        let _ = writeln!(out, "{failures} of {} checks failed", results.len());
        1
    }
}
