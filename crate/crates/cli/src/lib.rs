//! Command-line front end for `frontier-core`.
//!
//! Exit codes: 0 every asserted verdict holds, 1 a verdict failed or a
//! counterexample was found, 2 usage or configuration error, 3 a verdict is
//! undecided at the precision cap.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use frontier_core::arith::{p0_of_t, parse_rational, Rational, Scalar};
use frontier_core::audit::{
    audit_case_lemmas, audit_mifr, h_param, hole_families, measure_bound_rhs, AuditReport, AuditStep, CaseLemma,
    Outcome, DEFAULT_CAP_DIGITS,
};
use frontier_core::family::{
    from_text, make_frontier, make_named_example, to_text, ExplicitFamily, FrontierParams, NamedExample, SubsetMask,
    WindowFamily,
};
use frontier_core::measure::{mu, ratio_curve, ratio_curve_csv};
use frontier_core::search::{
    enumerate_maximal_cached, enumerate_maximal_capped, verify_recognition, verify_stability, IsoClass, ENUMERATION_CAP,
};
use frontier_core::shifting::{
    default_policies, is_maximal, is_shifted, maximal_closure, potential, shift_fixpoint, shift_once, ClosureOrder,
    ShiftPolicy,
};

/// Environment variable overriding the enumeration cache directory.
pub const CACHE_ENV: &str = "FRONTIER_CACHE_DIR";

const DECIMAL_NOTE: &str = "decimals are display only - verdicts are exact";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] frontier_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("output: {0}")]
    Output(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "frontier", version, about = "Exact measures, shifting and audits for r-wise t-intersecting families")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Decimal digits before an interval comparison gives up.
    #[arg(long, default_value_t = DEFAULT_CAP_DIGITS, global = true)]
    pub precision_cap: u32,
    /// Worker threads for parallel audits and searches.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-biased measure of a family.
    Measure {
        #[command(flatten)]
        family: FamilyArgs,
        /// "a/b", or "p0" for p0(t) (needs --t).
        #[arg(long)]
        p: String,
    },
    /// The crossover probability p0(t).
    P0 {
        #[arg(long)]
        t: u32,
    },
    /// mu(F_2)/mu(F_0) at p0 for a range of t.
    RatioCurve {
        #[arg(long, default_value_t = 1)]
        t_min: u32,
        #[arg(long)]
        t_max: u32,
    },
    /// One shift, or shifting to a fixpoint.
    Shift {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, requires = "j")]
        i: Option<u32>,
        #[arg(long, requires = "i")]
        j: Option<u32>,
        /// lex, reverse-lex or seed:N.
        #[arg(long, default_value = "lex", conflicts_with = "i")]
        policy: ShiftPolicy,
        /// Print the step trace as JSON lines instead of the summary.
        #[arg(long)]
        trace: bool,
        /// Write the resulting family in text format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend to an (r,t)-maximal family.
    Closure {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        r: u32,
        /// Shuffle candidates with this seed instead of size-descending order.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// s, h and the hole families T_0..T_h of a shifted family.
    Decompose {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also evaluate the measure and the hole bound at this "a/b".
        #[arg(long)]
        p: Option<String>,
    },
    /// Audit the hole-decomposition claims on one family.
    AuditMifr {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Audit one case lemma over a range of t.
    AuditCases {
        /// large, mid, h1, h2 or h3.
        #[arg(long)]
        case: CaseLemma,
        /// "a:b", inclusive.
        #[arg(long)]
        t_range: String,
    },
    /// Isomorphism classes of (r,t)-maximal families on [n].
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: u32,
        #[arg(long, env = CACHE_ENV)]
        cache_dir: Option<PathBuf>,
    },
    /// Exhaustively check the recognition lemmas.
    VerifyRecognition {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        r: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        i: u32,
        /// Seeded fixpoint policies in addition to lex and reverse-lex.
        #[arg(long, default_value_t = 8)]
        seeds: u64,
    },
    /// Exhaustively check the stability statements.
    VerifyStability {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        /// Comma-separated "a/b" values.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<String>,
        #[arg(long, default_value = "1/100")]
        delta: String,
    },
}

/// Where a family comes from: a text file, a frontier family or a named
/// example.
#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, group = "source")]
    pub family_file: Option<PathBuf>,
    /// "r,t,i".
    #[arg(long, group = "source")]
    pub frontier: Option<String>,
    /// gprime or second-layer.
    #[arg(long, group = "source")]
    pub example: Option<NamedExample>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
}

enum Source {
    Explicit(ExplicitFamily),
    Window(WindowFamily),
}

impl FamilyArgs {
    fn source(&self) -> CliResult<Source> {
        if let Some(path) = &self.family_file {
            let text = fs::read_to_string(path).map_err(|source| CliError::File { path: path.clone(), source })?;
            return Ok(Source::Explicit(from_text(&text)?));
        }
        if let Some(arg) = &self.frontier {
            let params = parse_frontier(arg)?;
            let window = make_frontier(params)?;
            return Ok(match self.n {
                Some(n) => Source::Explicit(window.lift(n)?),
                None => Source::Window(window),
            });
        }
        if let Some(name) = self.example {
            let (t, n) = self.t.zip(self.n).ok_or_else(|| CliError::Usage("--example needs --t and --n".into()))?;
            return Ok(Source::Explicit(make_named_example(name, t, n)?));
        }
        Err(CliError::Usage("give one of --family-file, --frontier or --example".into()))
    }

    fn explicit(&self) -> CliResult<ExplicitFamily> {
        match self.source()? {
            Source::Explicit(f) => Ok(f),
            Source::Window(_) => Err(CliError::Usage("this command needs --n with --frontier".into())),
        }
    }

    /// `t` from `--t`, else from `--frontier`.
    fn t(&self) -> CliResult<u32> {
        if let Some(t) = self.t {
            return Ok(t);
        }
        if let Some(arg) = &self.frontier {
            return Ok(parse_frontier(arg)?.t);
        }
        Err(CliError::Usage("--t is required".into()))
    }
}

fn parse_frontier(arg: &str) -> CliResult<FrontierParams> {
    let parts: Vec<u32> = arg
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--frontier expects \"r,t,i\", found {arg:?}")))?;
    match parts[..] {
        [r, t, i] => Ok(FrontierParams::new(r, t, i)?),
        _ => Err(CliError::Usage(format!("--frontier expects \"r,t,i\", found {arg:?}"))),
    }
}

fn parse_t_range(s: &str) -> CliResult<std::ops::RangeInclusive<u32>> {
    let bad = || CliError::Usage(format!("--t-range expects \"a:b\", found {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn elements(m: SubsetMask) -> Vec<u32> {
    m.elements().collect()
}

fn generator_lists(gens: &[SubsetMask]) -> Vec<Vec<u32>> {
    gens.iter().copied().map(elements).collect()
}

fn joined(m: SubsetMask) -> String {
    m.to_string()
}

/// Parses arguments, runs, and maps the outcome to an exit code. Usage
/// errors go to `err`.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => match run(&config, out) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            code
        }
    }
}

/// Runs one command, writing its report to `out`; returns the exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> CliResult<i32> {
    match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
            let mut buf = Vec::new();
            let code = pool.install(|| dispatch(config, &mut buf))?;
            out.write_all(&buf)?;
            Ok(code)
        }
        None => dispatch(config, out),
    }
}

fn dispatch(config: &RunConfig, out: &mut dyn Write) -> CliResult<i32> {
    let format = config.format;
    let cap = config.precision_cap;
    match &config.command {
        Command::Measure { family, p } => cmd_measure(family, p, format, out),
        Command::P0 { t } => cmd_p0(*t, format, out),
        Command::RatioCurve { t_min, t_max } => cmd_ratio_curve(*t_min, *t_max, format, out),
        Command::Shift { family, i, j, policy, trace, out: path } => {
            cmd_shift(family, i.zip(*j), *policy, *trace, path.as_deref(), format, out)
        }
        Command::Closure { family, r, seed, out: path } => cmd_closure(family, *r, *seed, path.as_deref(), format, out),
        Command::Decompose { family, p } => cmd_decompose(family, p.as_deref(), format, out),
        Command::AuditMifr { family } => {
            let fam = family.explicit()?;
            let report = audit_mifr(&fam, family.t()?)?;
            emit_report(&report, format, out)?;
            Ok(exit_code(&report))
        }
        Command::AuditCases { case, t_range } => {
            let report = audit_case_lemmas(*case, parse_t_range(t_range)?, cap)?;
            emit_report(&report, format, out)?;
            Ok(exit_code(&report))
        }
        Command::Enumerate { n, r, t, cap: ground_cap, cache_dir } => {
            cmd_enumerate(*n, *r, *t, *ground_cap, cache_dir.as_deref(), format, out)
        }
        Command::VerifyRecognition { n, r, t, i, seeds } => {
            let report = verify_recognition(*n, *r, *t, *i, &default_policies(*seeds))?;
            emit_report(&report, format, out)?;
            Ok(exit_code(&report))
        }
        Command::VerifyStability { n, t, p, delta } => {
            let grid = p.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>, _>>()?;
            let report = verify_stability(*n, *t, &grid, &parse_rational(delta)?)?;
            emit_report(&report, format, out)?;
            Ok(exit_code(&report))
        }
    }
}

pub fn exit_code(report: &AuditReport) -> i32 {
    match report.outcome() {
        Outcome::Pass => EXIT_OK,
        Outcome::Fail => EXIT_FAIL,
        Outcome::Undecided => EXIT_UNDECIDED,
    }
}

/// Serializes a report. JSON is the step array, CSV one row per step, and
/// the table a claim summary followed by the non-holding steps.
pub fn emit_report(report: &AuditReport, format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Json => writeln!(out, "{}", report.steps_json())?,
        Format::Csv => {
            writeln!(out, "# {DECIMAL_NOTE}")?;
            let rows: Vec<StepRow> = report.steps.iter().map(StepRow::from).collect();
            write_csv(&rows, out)?;
        }
        Format::Table => {
            writeln!(out, "# {DECIMAL_NOTE}")?;
            out.write_all(report.to_table().as_bytes())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct StepRow<'a> {
    claim_id: &'a str,
    t: u32,
    verdict: &'static str,
    lhs_decimal_50: &'a str,
    rhs_decimal_50: &'a str,
    witness: &'a str,
}

impl<'a> From<&'a AuditStep> for StepRow<'a> {
    fn from(s: &'a AuditStep) -> Self {
        StepRow {
            claim_id: &s.claim_id,
            t: s.t,
            verdict: s.verdict.as_str(),
            lhs_decimal_50: &s.lhs_decimal_50,
            rhs_decimal_50: &s.rhs_decimal_50,
            witness: s.witness.as_deref().unwrap_or(""),
        }
    }
}

fn write_csv<S: Serialize>(rows: &[S], out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `header` then aligned rows.
fn write_table(header: &[&str], rows: &[Vec<String>], out: &mut dyn Write) -> CliResult<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn write_json(value: &serde_json::Value, out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("json value serializes"))?;
    Ok(())
}

fn scalar_decimal(x: &Scalar) -> String {
    x.to_decimal(50)
}

fn cmd_measure(family: &FamilyArgs, p: &str, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    let p_value = if p == "p0" {
        Scalar::Quadratic(p0_of_t(family.t()?)).simplify()
    } else {
        Scalar::Rational(parse_rational(p)?)
    };
    let value = match family.source()? {
        Source::Explicit(f) => mu(&f, &p_value)?,
        Source::Window(w) => mu(&w, &p_value)?,
    };
    let row = [p_value.to_string(), value.to_string(), scalar_decimal(&value)];
    match format {
        Format::Json => write_json(&json!({"p": row[0], "mu": row[1], "mu_decimal_50": row[2]}), out)?,
        Format::Csv => {
            writeln!(out, "p,mu,mu_decimal_50")?;
            writeln!(out, "{},{},{}", row[0], row[1], row[2])?;
        }
        Format::Table => write_table(&["p", "mu", "mu_decimal_50"], &[row.to_vec()], out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_p0(t: u32, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    if t == 0 {
        return Err(CliError::Usage("t must be positive".into()));
    }
    let p0 = p0_of_t(t);
    let exact = p0.to_string();
    let decimal = p0.to_decimal(50);
    match format {
        Format::Json if p0.is_rational() => write_json(&json!({"t": t, "p0": exact}), out)?,
        Format::Json => write_json(&json!({"t": t, "p0": exact, "p0_decimal_50": decimal}), out)?,
        Format::Csv => {
            writeln!(out, "t,p0,p0_decimal_50")?;
            writeln!(out, "{t},{exact},{decimal}")?;
        }
        Format::Table => write_table(&["t", "p0", "p0_decimal_50"], &[vec![t.to_string(), exact, decimal]], out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_ratio_curve(t_min: u32, t_max: u32, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    if t_min == 0 || t_min > t_max {
        return Err(CliError::Usage(format!("need 1 <= t-min <= t-max, got {t_min}..{t_max}")));
    }
    let rows = ratio_curve(t_min, t_max);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&rows).expect("rows serialize"))?,
        Format::Csv => out.write_all(ratio_curve_csv(&rows).as_bytes())?,
        Format::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.t.to_string(),
                        r.p0_decimal_50.clone(),
                        r.ratio_at_p0_decimal_50.clone(),
                        r.ratio_minus_half_decimal_50.clone(),
                    ]
                })
                .collect();
            write_table(&["t", "p0_decimal_50", "ratio_at_p0_decimal_50", "ratio_minus_half_decimal_50"], &cells, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_family_file(path: Option<&Path>, fam: &ExplicitFamily) -> CliResult<()> {
    if let Some(path) = path {
        fs::write(path, to_text(fam)).map_err(|source| CliError::File { path: path.to_path_buf(), source })?;
    }
    Ok(())
}

fn family_summary(fam: &ExplicitFamily) -> serde_json::Value {
    json!({
        "n": fam.ground_size(),
        "members": fam.len(),
        "generators": generator_lists(&fam.minimal_members()),
    })
}

fn cmd_shift(
    family: &FamilyArgs,
    single: Option<(u32, u32)>,
    policy: ShiftPolicy,
    trace: bool,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let fam = family.explicit()?;
    if let Some((i, j)) = single {
        let shifted = shift_once(&fam, i, j)?;
        write_family_file(path, &shifted)?;
        let (before, after) = (potential(&fam), potential(&shifted));
        match format {
            Format::Json => {
                let mut v = family_summary(&shifted);
                v["i"] = json!(i);
                v["j"] = json!(j);
                v["potential_before"] = json!(before);
                v["potential_after"] = json!(after);
                v["shifted"] = json!(is_shifted(&shifted));
                write_json(&v, out)?;
            }
            Format::Csv | Format::Table => {
                let rows = shifted.minimal_members().into_iter().map(|g| vec![joined(g)]).collect::<Vec<_>>();
                if format == Format::Csv {
                    writeln!(out, "generator")?;
                    for r in rows {
                        writeln!(out, "{}", r[0])?;
                    }
                } else {
                    writeln!(out, "sigma_{{{i},{j}}}: potential {before} -> {after}")?;
                    write_table(&["generator"], &rows, out)?;
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let (shifted, steps) = shift_fixpoint(&fam, policy);
    write_family_file(path, &shifted)?;
    if trace {
        steps.write_json_lines(&mut *out)?;
        return Ok(EXIT_OK);
    }
    match format {
        Format::Json => {
            let mut v = family_summary(&shifted);
            v["policy"] = json!(policy.to_string());
            v["initial_potential"] = json!(steps.initial_potential);
            v["final_potential"] = json!(steps.final_potential);
            v["steps"] = json!(steps.steps.len());
            v["shifted"] = json!(is_shifted(&shifted));
            write_json(&v, out)?;
        }
        Format::Csv => {
            writeln!(out, "step,i,j,potential")?;
            for (k, s) in steps.steps.iter().enumerate() {
                writeln!(out, "{},{},{},{}", k + 1, s.i, s.j, s.potential)?;
            }
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = steps
                .steps
                .iter()
                .enumerate()
                .map(|(k, s)| vec![(k + 1).to_string(), s.i.to_string(), s.j.to_string(), s.potential.to_string()])
                .collect();
            writeln!(out, "potential {} -> {}", steps.initial_potential, steps.final_potential)?;
            write_table(&["step", "i", "j", "potential"], &rows, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_closure(
    family: &FamilyArgs,
    r: u32,
    seed: Option<u64>,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let fam = family.explicit()?;
    let t = family.t()?;
    let order = seed.map_or(ClosureOrder::SizeDescending, ClosureOrder::Seeded);
    let closed = maximal_closure(&fam, r, t, order)?;
    write_family_file(path, &closed)?;
    let gens = closed.minimal_members();
    match format {
        Format::Json => {
            let mut v = family_summary(&closed);
            v["maximal"] = json!(is_maximal(&closed, r, t));
            write_json(&v, out)?;
        }
        Format::Csv => {
            writeln!(out, "generator")?;
            for g in gens {
                writeln!(out, "{}", joined(g))?;
            }
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = gens.into_iter().map(|g| vec![joined(g)]).collect();
            write_table(&["generator"], &rows, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_decompose(family: &FamilyArgs, p: Option<&str>, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    let fam = family.explicit()?;
    let t = family.t()?;
    let hp = h_param(&fam, t)?;
    let p = p.map(parse_rational).transpose()?;
    let mut v = json!({"n": fam.ground_size(), "t": t, "h": hp.h});
    let mut hole_rows = Vec::new();
    if hp.h > 0 {
        let d = hole_families(&fam, t, hp.h)?;
        v["s"] = json!(d.s);
        v["witness_h0"] = json!(elements(d.witness_h0));
        v["traces_nested"] = json!(d.traces_nested);
        let holes: Vec<serde_json::Value> = d
            .holes
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let gens = w.window().minimal_members();
                hole_rows.push(vec![
                    i.to_string(),
                    w.window().len().to_string(),
                    gens.iter().map(|g| format!("{{{}}}", joined(*g))).collect::<Vec<_>>().join(" "),
                ]);
                json!({"i": i, "ground": d.hole_ground(), "generators": generator_lists(&gens)})
            })
            .collect();
        v["holes"] = json!(holes);
        if let Some(p) = &p {
            let ps = Scalar::Rational(p.clone());
            let lhs = mu(&fam, &ps)?;
            let rhs = measure_bound_rhs(&d, &ps)?;
            v["p"] = json!(ps.to_string());
            v["mu"] = json!(lhs.to_string());
            v["bound"] = json!(rhs.to_string());
        }
    }
    match format {
        Format::Json => write_json(&v, out)?,
        Format::Csv => {
            writeln!(out, "i,members,generators")?;
            for r in &hole_rows {
                writeln!(out, "{},{},{}", r[0], r[1], r[2])?;
            }
        }
        Format::Table => {
            let s = v.get("s").map_or("-".to_string(), |s| s.to_string());
            writeln!(out, "n={} t={t} s={s} h={}", fam.ground_size(), hp.h)?;
            write_table(&["i", "members", "generators"], &hole_rows, out)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ClassRow {
    class: usize,
    orbit_size: u64,
    generators: String,
}

fn cmd_enumerate(
    n: u32,
    r: u32,
    t: u32,
    cap: u32,
    cache_dir: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let classes: Vec<IsoClass> = match cache_dir {
        Some(root) => enumerate_maximal_cached(root, n, r, t, cap)?,
        None => enumerate_maximal_capped(n, r, t, cap)?,
    };
    match format {
        Format::Json => {
            let v: Vec<serde_json::Value> = classes
                .iter()
                .enumerate()
                .map(|(k, c)| json!({"class": k, "orbit_size": c.orbit_size, "generators": generator_lists(&c.generators)}))
                .collect();
            write_json(&json!(v), out)?;
        }
        Format::Csv | Format::Table => {
            let rows: Vec<ClassRow> = classes
                .iter()
                .enumerate()
                .map(|(k, c)| ClassRow {
                    class: k,
                    orbit_size: c.orbit_size,
                    generators: c
                        .generators
                        .iter()
                        .map(|g| format!("{{{}}}", joined(*g)))
                        .collect::<Vec<_>>()
                        .join(" "),
                })
                .collect();
            if format == Format::Csv {
                write_csv(&rows, out)?;
            } else {
                let cells: Vec<Vec<String>> = rows
                    .into_iter()
                    .map(|r| vec![r.class.to_string(), r.orbit_size.to_string(), r.generators])
                    .collect();
                write_table(&["class", "orbit_size", "generators"], &cells, out)?;
            }
        }
    }
    Ok(EXIT_OK)
}
