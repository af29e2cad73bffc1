//! `k3split` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid or out-of-bounds input,
//! 3 `verify` found a disagreement outside the `delta = 0` corner, 4
//! arithmetic overflow.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use k3split::{
    decide, delta, emit_report, genus_threshold, splitting_witness, verify_with, DivisorClass,
    Error, Format, GPolicy, RecordEmitter, ScanOptions, ScanRange, SurfaceSpec, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNEXPLAINED_DISAGREEMENT: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "k3split",
    version,
    about = "Decide whether every hyperplane section of a Picard-rank-2 Knutsen K3 surface is irreducible and reduced"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every decision procedure on S_{n,d,g} and print the verdict.
    Decide {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
        /// Suppress warnings about non-hyperbolic lattices and degree-0 (-2)-classes.
        #[arg(long)]
        no_warnings: bool,
    },
    /// Print delta and the genus threshold (d^2 - delta^2) / 4n.
    Threshold {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        json: bool,
    },
    /// Print the first solution of the inequality system and the induced splitting of H.
    Witness {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        json: bool,
    },
    /// Decide every triple in a box and write one record per triple.
    Scan(SurveyArgs),
    /// Scan a box and report every triple where the procedures disagree.
    Verify(SurveyArgs),
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(allow_negative_numbers = true)]
    n: i64,
    #[arg(allow_negative_numbers = true)]
    d: i64,
    #[arg(allow_negative_numbers = true)]
    g: i64,
}

impl SpecArgs {
    fn spec(&self) -> k3split::Result<SurfaceSpec> {
        SurfaceSpec::new(self.n, self.d, self.g)
    }
}

#[derive(Debug, Args)]
struct SurveyArgs {
    #[arg(long, allow_negative_numbers = true)]
    n_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    n_max: i64,
    #[arg(long, allow_negative_numbers = true)]
    d_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    d_max: i64,
    /// Lower genus bound; without --g-min/--g-max only hyperbolic lattices are scanned.
    #[arg(long, requires = "g_max", allow_negative_numbers = true)]
    g_min: Option<i64>,
    #[arg(long, requires = "g_min", allow_negative_numbers = true)]
    g_max: Option<i64>,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Output file; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

impl SurveyArgs {
    fn range(&self) -> k3split::Result<ScanRange> {
        let g_policy = match (self.g_min, self.g_max) {
            (Some(g_min), Some(g_max)) => GPolicy::All { g_min, g_max },
            _ => GPolicy::HyperbolicOnly,
        };
        ScanRange::new(self.n_min, self.n_max, self.d_min, self.d_max, g_policy)
    }

    fn options(&self) -> ScanOptions {
        ScanOptions {
            threads: self.threads,
            ..ScanOptions::default()
        }
    }

    fn sink<'a>(&self, stdout: &'a mut dyn Write) -> io::Result<Box<dyn Write + 'a>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(stdout)),
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                ErrorKind::ValueValidation | ErrorKind::InvalidValue => {
                    let _ = write!(err, "{rendered}");
                    EXIT_INVALID
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        _ if e.is_overflow() => EXIT_OVERFLOW,
        Error::InvalidSpec(_) | Error::InvalidRange(_) | Error::NotHyperbolic { .. } => {
            EXIT_INVALID
        }
        Error::AtTriple { source, .. } => exit_code_for(source),
        // Output could not be written, e.g. a bad --output path.
        Error::Io(_) | Error::Overflow(_) => EXIT_USAGE,
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> k3split::Result<i32> {
    match command {
        Command::Decide {
            spec,
            json,
            no_warnings,
        } => {
            let verdict = decide(&spec.spec()?)?;
            if !no_warnings {
                write_warnings(&verdict, err)?;
            }
            if json {
                serde_json::to_writer_pretty(&mut *out, &verdict).map_err(io::Error::from)?;
                writeln!(out)?;
            } else {
                write_verdict(&verdict, out)?;
            }
        }
        Command::Threshold { n, d, json } => {
            // Any valid genus will do; only n and d are checked.
            let spec = SurfaceSpec::new(n, d, 0)?;
            let dl = delta(spec.n(), spec.d());
            let g_min = genus_threshold(spec.n(), spec.d())?;
            if json {
                let v = json!({ "n": n, "d": d, "delta": dl, "g_min": g_min });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "delta = {dl}")?;
                writeln!(out, "g_min = {g_min}")?;
                writeln!(
                    out,
                    "reducible or non-reduced hyperplane section iff g >= {g_min} \
                     = ({d}^2 - {dl}^2) / (4*{n})"
                )?;
            }
        }
        Command::Witness { spec, json } => {
            let spec = spec.spec()?;
            let verdict = decide(&spec)?;
            let split = verdict
                .brute_force
                .map(|w| splitting_witness(&spec, &w))
                .transpose()?;
            if json {
                let v = json!({ "witness": verdict.brute_force, "splitting": split });
                writeln!(out, "{v}")?;
            } else {
                match (verdict.brute_force, split) {
                    (Some(w), Some(s)) => {
                        writeln!(
                            out,
                            "witness D = {}: degree {}, D^2 = {}",
                            class_expr(w.class),
                            w.degree,
                            w.square
                        )?;
                        writeln!(
                            out,
                            "splitting H = ({}) + ({}), degrees {} + {} = {}",
                            class_expr(s.part),
                            class_expr(s.complement),
                            s.part_degree,
                            s.complement_degree,
                            s.part_degree + s.complement_degree
                        )?;
                    }
                    _ => writeln!(out, "none")?,
                }
            }
        }
        Command::Scan(args) => {
            let range = args.range()?;
            let mut sink = args.sink(out)?;
            let mut emitter = RecordEmitter::new(args.format, &mut sink)?;
            k3split::scan_with(&range, &args.options(), |r| emitter.push(&r))?;
            emitter.finish()?;
            sink.flush()?;
        }
        Command::Verify(args) => {
            let range = args.range()?;
            let report = verify_with(&range, &args.options())?;
            let mut sink = args.sink(out)?;
            emit_report(&report, args.format, &mut sink)?;
            sink.flush()?;
            drop(sink);
            writeln!(
                err,
                "verify: {} triples, {} disagreements; all at delta = 0: {}; \
                 all with a degree-0 (-2)-class: {}",
                report.total_scanned,
                report.disagreements.len(),
                report.all_at_delta_zero,
                report.all_have_deg0_m2_class
            )?;
            if !report.matches_delta_zero_characterization() {
                writeln!(
                    err,
                    "verify: disagreement outside the delta = 0 corner; this is a bug or a \
                     counterexample"
                )?;
                return Ok(EXIT_UNEXPLAINED_DISAGREEMENT);
            }
        }
    }
    Ok(EXIT_OK)
}

/// `aH + bC` written the way one would by hand: `-H + C`, `2H - C`, `0`.
fn class_expr(c: DivisorClass) -> String {
    fn term(coeff: i64, sym: &str, first: bool) -> String {
        let sign = match (coeff < 0, first) {
            (true, true) => "-",
            (true, false) => " - ",
            (false, true) => "",
            (false, false) => " + ",
        };
        let mag = coeff.unsigned_abs();
        if mag == 1 {
            format!("{sign}{sym}")
        } else {
            format!("{sign}{mag}{sym}")
        }
    }
    match (c.a, c.b) {
        (0, 0) => "0".into(),
        (a, 0) => term(a, "H", true),
        (0, b) => term(b, "C", true),
        (a, b) => term(a, "H", true) + &term(b, "C", false),
    }
}

fn write_warnings(v: &Verdict, err: &mut dyn Write) -> io::Result<()> {
    if !v.health.hyperbolic {
        writeln!(
            err,
            "warning: lattice is not hyperbolic (4n(g-1) - d^2 = {} >= 0); it cannot be the \
             Picard lattice of a K3 surface",
            v.health.discriminant
        )?;
    }
    if let Some(p) = v.health.degree_zero_minus_two_class {
        writeln!(
            err,
            "warning: degree-0 (-2)-class {} exists, so H is not very ample and the triple is \
             not a genuine Knutsen surface",
            class_expr(p)
        )?;
    }
    if !v.agree {
        writeln!(
            err,
            "warning: closed form and inequality search disagree (delta = {})",
            v.delta
        )?;
    }
    Ok(())
}

fn write_verdict(v: &Verdict, out: &mut dyn Write) -> io::Result<()> {
    let s = v.spec;
    let (n, d, g) = (s.n(), s.d(), s.g());
    writeln!(
        out,
        "surface {s}: H^2 = {}, H.C = {d}, C^2 = {}",
        2 * n,
        2 * g - 2
    )?;
    writeln!(
        out,
        "delta = {} (distance from d = {d} to the nearest multiple of 2n = {})",
        v.delta,
        2 * n
    )?;
    writeln!(
        out,
        "genus threshold g_min = (d^2 - delta^2) / 4n = ({} - {}) / {} = {}",
        i128::from(d) * i128::from(d),
        v.delta * v.delta,
        4 * n,
        v.genus_threshold
    )?;
    let cmp = if v.closed_form { ">=" } else { "<" };
    writeln!(
        out,
        "criterion: g = {g} {cmp} g_min = {}",
        v.genus_threshold
    )?;
    if v.closed_form {
        writeln!(
            out,
            "closed form: a reducible or non-reduced hyperplane section exists"
        )?;
    } else {
        writeln!(
            out,
            "closed form: every hyperplane section is irreducible and reduced"
        )?;
    }
    match v.brute_force {
        Some(w) => writeln!(
            out,
            "inequality search: witness (a, b) = ({}, {}), D = {}, degree {}, D^2 = {}, \
             complement degree {}",
            w.class.a,
            w.class.b,
            class_expr(w.class),
            w.degree,
            w.square,
            w.complement_degree
        )?,
        None => writeln!(
            out,
            "inequality search: no solution of 0 < 2na+bd <= n, D^2 >= -2"
        )?,
    }
    let l = v.lemma;
    writeln!(
        out,
        "lemma branch: r = {} ({}), a1 = {}, candidate {} has square {} -2",
        l.r,
        l.branch,
        l.a1,
        class_expr(l.candidate),
        if l.condition_holds { ">=" } else { "<" }
    )?;
    writeln!(
        out,
        "procedures agree: {}",
        if v.agree { "yes" } else { "NO" }
    )?;
    if v.bn_general_guaranteed {
        writeln!(
            out,
            "Brill-Noether general: guaranteed (g < g_min, so a general hyperplane section is a \
             Brill-Noether general curve)"
        )?;
    } else {
        writeln!(out, "Brill-Noether general: not guaranteed")?;
    }
    Ok(())
}
