//! Argument parsing and command dispatch. Exit codes: 0 success, 1 usage or
//! I/O error, 2 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use bibundle_core::chowring::ChernWuSign;
use bibundle_core::classifier::{self, axioms, Classification, ADMISSIBLE};
use bibundle_core::{tanfield, Exec};

use crate::certificate::Certificate;
use crate::golden;
use crate::identities::{self, IdentityCheck};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

pub const INADMISSIBLE: &str = "inadmissible dimension; admissible: 2, 3, 5";

#[derive(Debug, Parser)]
#[command(name = "bibundle", version, about = "Exact classification of P^1-bundles with a second P^1-fibration")]
pub struct Cli {
    /// Print only summaries and errors.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Run the scans on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the case enumeration and print the report.
    Classify {
        /// 2, 3, 5 or all.
        #[arg(long)]
        dim: String,
        /// Write the certificate here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write the Markdown report here.
        #[arg(long, value_name = "PATH")]
        markdown: Option<PathBuf>,
        /// Overwrite the golden files instead of comparing against them.
        #[arg(long)]
        bless: bool,
    },
    /// Check the symbolic identities for 2 <= n <= max-dim.
    Verify {
        #[arg(long)]
        max_dim: u32,
    },
    /// Decide rationality of tan^2(pi/m) for 3 <= m <= max-m.
    TanScan {
        #[arg(long)]
        max_m: u64,
    },
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Classify { dim, json, markdown, bless } => {
            let opts = ClassifyOptions { json, markdown, bless, quiet: cli.quiet, exec };
            classify(&dim, &opts, out, err)
        }
        Command::Verify { max_dim } => verify(max_dim, ChernWuSign::build_default(), cli.quiet, out, err),
        Command::TanScan { max_m } => tan_scan(max_m, exec, cli.quiet, out, err),
    }
}

/// `--dim` to a list of dimensions.
pub fn parse_dim(s: &str) -> Option<Vec<u32>> {
    if s == "all" {
        return Some(ADMISSIBLE.to_vec());
    }
    let n: u32 = s.parse().ok()?;
    ADMISSIBLE.contains(&n).then(|| vec![n])
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub json: Option<PathBuf>,
    pub markdown: Option<PathBuf>,
    pub bless: bool,
    pub quiet: bool,
    pub exec: Exec,
}

/// Everything `classify` produces, before any file is touched.
pub struct ClassifyOutput {
    pub runs: Vec<Classification>,
    pub checks: Vec<IdentityCheck>,
    pub certificate: Certificate,
    pub markdown: String,
}

pub fn classify_output(dims: &[u32], exec: Exec, sign: ChernWuSign) -> Result<ClassifyOutput, String> {
    let mut runs = Vec::new();
    for &n in dims {
        runs.push(classifier::classify(n, exec).map_err(|e| format!("classification failed for n = {n}: {e}"))?);
    }
    let mut checks: Vec<IdentityCheck> = dims.iter().flat_map(|&n| identities::dimension_identities(n, sign)).collect();
    checks.extend(identities::global_identities());
    for c in &runs {
        checks.extend(identities::classification_checks(c));
    }
    let now = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let certificate = Certificate::build(&runs, &checks, now);
    let markdown = report::render(&runs, &checks);
    Ok(ClassifyOutput { runs, checks, certificate, markdown })
}

fn write_file(path: &Path, contents: &str, err: &mut dyn Write) -> bool {
    match fs::write(path, contents) {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            false
        }
    }
}

pub fn classify(dim: &str, opts: &ClassifyOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(dims) = parse_dim(dim) else {
        let _ = writeln!(err, "error: {INADMISSIBLE} (got {dim})");
        return EXIT_USAGE;
    };
    let result = match classify_output(&dims, opts.exec, ChernWuSign::build_default()) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_VERIFY;
        }
    };
    let cert_json = result.certificate.to_json();
    let normalized = result.certificate.normalized().to_json();
    let failed: Vec<_> = result.checks.iter().filter(|c| !c.pass).collect();

    let mut golden_ok = true;
    let stem = golden::stem(dim);
    if opts.bless {
        if !failed.is_empty() {
            let _ = writeln!(err, "error: refusing to bless a run with {} failing identities", failed.len());
            return EXIT_VERIFY;
        }
        let dir = golden::dir();
        let md_path = dir.join(format!("{stem}.md"));
        let json_path = dir.join(format!("{stem}.json"));
        if !write_file(&md_path, &result.markdown, err) || !write_file(&json_path, &normalized, err) {
            return EXIT_USAGE;
        }
        let _ = writeln!(err, "blessed {} and {}", md_path.display(), json_path.display());
    } else {
        match golden::expected(&stem) {
            Some((md, json)) => {
                for (name, want, got) in [("md", md, result.markdown.as_str()), ("json", json, normalized.as_str())] {
                    if let Some((line, w, g)) = golden::first_difference(want, got) {
                        golden_ok = false;
                        let _ = writeln!(
                            err,
                            "golden mismatch in {stem}.{name} at line {line}:\n  expected: {w}\n  actual:   {g}"
                        );
                    }
                }
            }
            None => {
                golden_ok = false;
                let _ = writeln!(err, "no golden expectation for {stem}");
            }
        }
    }

    if let Some(path) = &opts.json {
        if !write_file(path, &cert_json, err) {
            return EXIT_USAGE;
        }
    }
    if let Some(path) = &opts.markdown {
        if !write_file(path, &result.markdown, err) {
            return EXIT_USAGE;
        }
    }
    if !opts.quiet {
        let _ = write!(out, "{}", result.markdown);
    }
    for c in &failed {
        let _ = writeln!(err, "FAIL {}: {} ({})", c.id, c.formula, c.detail);
    }
    if failed.is_empty() && golden_ok {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

pub fn verify(max_dim: u32, sign: ChernWuSign, quiet: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if max_dim < 2 {
        let _ = writeln!(err, "error: --max-dim must be at least 2 (got {max_dim})");
        return EXIT_USAGE;
    }
    let checks = identities::run_identities(max_dim, sign);
    let mut failed = 0;
    for c in &checks {
        if c.pass {
            if !quiet {
                let _ = writeln!(out, "PASS {}  {}  [{}]", c.id, c.formula, c.cited_location);
            }
        } else {
            failed += 1;
            let _ = writeln!(out, "FAIL {}  {}  [{}]", c.id, c.formula, c.cited_location);
            let _ = writeln!(err, "FAIL {}: {}", c.id, c.detail);
        }
    }
    let _ =
        writeln!(out, "verify: {} of {} identities pass for 2 <= n <= {max_dim}", checks.len() - failed, checks.len());
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

pub fn tan_scan(max_m: u64, exec: Exec, quiet: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if max_m < 3 {
        let _ = writeln!(err, "error: --max-m must be at least 3 (got {max_m})");
        return EXIT_USAGE;
    }
    let rows = match tanfield::scan(max_m, exec) {
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_VERIFY;
        }
    };
    let mut admissible = Vec::new();
    for row in &rows {
        let n = row.m - 1;
        match &row.tan_sq {
            Some(t) => {
                admissible.push(n);
                if !quiet {
                    let _ = writeln!(out, "m = {}: tan²(π/{}) = {} rational, n = {n}", row.m, row.m, t);
                }
            }
            None if !quiet => {
                let iv = &row.isolating_interval;
                let _ = writeln!(
                    out,
                    "m = {}: tan²(π/{}) irrational, isolated in ({:.6}, {:.6}]",
                    row.m,
                    row.m,
                    iv.lo.to_f64_lossy(),
                    iv.hi.to_f64_lossy()
                );
            }
            None => {}
        }
    }
    let list: Vec<String> = admissible.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "admissible n: {}", list.join(", "));
    let beyond = axioms::axiom(axioms::ADMISSIBLE_BEYOND_SCAN).expect("known axiom");
    let _ = writeln!(out, "n >= {max_m}: not scanned; imported as [axiom {}] {}", beyond.id, beyond.formula);
    // the scan must agree with the imported fact on its range
    if admissible.iter().any(|n| !ADMISSIBLE.contains(&(*n as u32))) {
        let _ = writeln!(err, "error: scan found an admissible n outside 2, 3, 5");
        return EXIT_VERIFY;
    }
    EXIT_OK
}
