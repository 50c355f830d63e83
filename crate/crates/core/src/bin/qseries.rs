//! Command-line front end.
//!
//! Exit codes: 0 when everything checked holds, 1 when a counterexample or
//! mismatch was found, 2 on usage or parse errors.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qseries::congruence::{
    replay_proof, scan, verify_claim, verify_frobenius, verify_lifted_families, verify_seven_congruences,
    verify_seven_dissection, ClaimReport, CongruenceClaim, CongruenceError, DissectionReport, ProofTrace,
};
use qseries::etaq::{eval_eta, parse_eta};
use qseries::fixtures;
use qseries::partitions::{self, ColoredFamilySpec, Family};
use qseries::series::{Modulus, TruncatedSeries};

const DEFAULT_ORDER: usize = 50;
const DEFAULT_UPTO: u64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    A,
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::A => Family::OddColored,
            FamilyArg::B => Family::EvenColored,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qseries", version, about = "Exact q-series expansion and congruence verification")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand an eta-quotient expression, e.g. "f2^2/f1^3".
    Expand {
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        expr: Option<String>,
        /// Use a checked-in expression instead (a3-seven-dissection).
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Reduce coefficients to least nonnegative residues.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Print the set of exponent residues mod this value with nonzero coefficients.
        #[arg(long)]
        support: Option<usize>,
    },
    /// Count colored partitions of n.
    Count {
        #[arg(value_enum)]
        family: FamilyArg,
        k: u32,
        n: u64,
    },
    /// List colored partitions of n.
    Enumerate {
        #[arg(value_enum)]
        family: FamilyArg,
        k: u32,
        n: u64,
        #[arg(long, default_value_t = partitions::DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Verify congruences and identities.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Check every residue class for a_1 .. a_kmax.
    Scan {
        #[arg(long, default_value_t = 1)]
        kmin: u32,
        #[arg(long)]
        kmax: u32,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long, default_value_t = DEFAULT_UPTO)]
        upto: u64,
    },
}

#[derive(Debug, Args)]
struct UptoArg {
    #[arg(long, default_value_t = DEFAULT_UPTO)]
    upto: u64,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// family(m n + r) ≡ 0 (mod m) for 0 <= n < upto.
    Claim {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        k: u32,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        residue: u64,
        #[command(flatten)]
        upto: UptoArg,
    },
    /// The five mod-7 congruences for a_1, a_3, a_4, a_5, a_7.
    #[command(name = "seven", alias = "theorem14")]
    SevenCongruences {
        #[command(flatten)]
        upto: UptoArg,
    },
    /// The same congruences for a_{7j+k}, j = 0..=jmax.
    Corollary {
        #[arg(long, default_value_t = 2)]
        jmax: u32,
        #[command(flatten)]
        upto: UptoArg,
    },
    /// The eight-term 7-dissection identity for a_3(7n+2), exactly.
    Dissection {
        #[command(flatten)]
        upto: UptoArg,
    },
    /// f_a^(b p) ≡ f_(a p)^b (mod p).
    Frobenius {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Replay the mod-7 residue argument for a_k, k in {1,3,4,5,7}.
    Proof {
        #[arg(long)]
        k: u32,
    },
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<bool, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = QuietPipe(io::stdout().lock());
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Stdout that treats a closed reader (`| head`) as success.
struct QuietPipe<W>(W);

impl<W: Write> Write for QuietPipe<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self.0.write(buf) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(buf.len()),
            r => r,
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self.0.flush() {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Expand { expr, fixture, order, modulus, support } => {
            let text = match (&expr, &fixture) {
                (_, Some(name)) => {
                    fixtures::by_name(name).ok_or_else(|| UsageError(format!("unknown fixture {name:?}")))?
                }
                (Some(e), None) => e.as_str(),
                (None, None) => unreachable!("clap requires one of expr/fixture"),
            };
            expand(fmt, out, text, order, modulus, support)
        }
        Command::Count { family, k, n } => {
            let spec = ColoredFamilySpec::new(family.into(), k)?;
            let c = partitions::count(spec, n);
            match fmt {
                OutputFormat::Text => writeln!(out, "{c}")?,
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({"family": spec.family().letter(), "k": k, "n": n, "count": c.to_string()})
                )?,
                OutputFormat::Csv => write_csv(
                    out,
                    &["family", "k", "n", "count"],
                    [[spec.family().letter().to_string(), k.to_string(), n.to_string(), c.to_string()]],
                )?,
            }
            Ok(true)
        }
        Command::Enumerate { family, k, n, cap } => {
            let spec = ColoredFamilySpec::new(family.into(), k)?;
            let listed = partitions::enumerate_with_cap(spec, n, cap)?;
            let rendered: Vec<String> = listed.iter().map(|p| p.render(spec)).collect();
            match fmt {
                OutputFormat::Text => {
                    for r in &rendered {
                        writeln!(out, "{r}")?;
                    }
                }
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({"family": spec.family().letter(), "k": k, "n": n, "partitions": rendered})
                )?,
                OutputFormat::Csv => write_csv(
                    out,
                    &["index", "partition"],
                    rendered.iter().enumerate().map(|(i, r)| [i.to_string(), r.clone()]),
                )?,
            }
            Ok(true)
        }
        Command::Verify(v) => verify(fmt, out, v),
        Command::Scan { kmin, kmax, modulus, upto } => {
            if kmax < 1 || kmin < 1 || kmin > kmax {
                return Err(UsageError(format!("need 1 <= kmin <= kmax (got {kmin}..{kmax})")));
            }
            let modulus = Modulus::new(modulus)?;
            match scan(kmin..=kmax, modulus, upto) {
                Ok(reports) => {
                    write_reports(fmt, out, &reports)?;
                    Ok(true)
                }
                Err(CongruenceError::StatedClaimRefuted { failed, reports }) => {
                    write_reports(fmt, out, &reports)?;
                    eprintln!("stated congruence refuted: {failed}");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn expand(
    fmt: OutputFormat,
    out: &mut impl Write,
    text: &str,
    order: usize,
    modulus: Option<u64>,
    support: Option<usize>,
) -> Outcome {
    if order == 0 {
        return Err(UsageError("--order must be at least 1".into()));
    }
    let expr = parse_eta(text).map_err(|e| UsageError(format!("{e}\n  {text}\n  {}^", " ".repeat(e.offset()))))?;
    let mut series: TruncatedSeries = eval_eta(&expr, order)?;
    if let Some(m) = modulus {
        series = series.reduce_mod(Modulus::new(m)?);
    }
    if let Some(m) = support {
        if m == 0 {
            return Err(UsageError("--support must be at least 1".into()));
        }
        let residues = series.support_residues(m);
        match fmt {
            OutputFormat::Text => writeln!(out, "{}", fmt_set(&residues))?,
            OutputFormat::Json => writeln!(out, "{}", json!({"support_modulus": m, "residues": residues}))?,
            OutputFormat::Csv => write_csv(out, &["residue"], residues.iter().map(|r| [r.to_string()]))?,
        }
        return Ok(true);
    }
    let coeffs: Vec<String> = series.coeffs().iter().map(ToString::to_string).collect();
    match fmt {
        OutputFormat::Text => writeln!(out, "{}", coeffs.join(" "))?,
        OutputFormat::Json => writeln!(out, "{}", json!({"order": order, "modulus": modulus, "coefficients": coeffs}))?,
        OutputFormat::Csv => {
            write_csv(out, &["n", "coefficient"], coeffs.iter().enumerate().map(|(n, c)| [n.to_string(), c.clone()]))?
        }
    }
    Ok(true)
}

fn verify(fmt: OutputFormat, out: &mut impl Write, cmd: VerifyCommand) -> Outcome {
    match cmd {
        VerifyCommand::Claim { family, k, modulus, residue, upto } => {
            let spec = ColoredFamilySpec::new(family.into(), k)?;
            let claim = CongruenceClaim::classified(spec, Modulus::new(modulus)?, residue)?;
            let report = verify_claim(claim, check_upto(upto.upto)?);
            write_reports(fmt, out, std::slice::from_ref(&report))?;
            Ok(report.holds())
        }
        VerifyCommand::SevenCongruences { upto } => {
            let reports = verify_seven_congruences(check_upto(upto.upto)?);
            write_reports(fmt, out, &reports)?;
            Ok(reports.iter().all(ClaimReport::holds))
        }
        VerifyCommand::Corollary { jmax, upto } => {
            let reports = verify_lifted_families(jmax, check_upto(upto.upto)?);
            write_reports(fmt, out, &reports)?;
            Ok(reports.iter().all(ClaimReport::holds))
        }
        VerifyCommand::Dissection { upto } => {
            let upto = usize::try_from(check_upto(upto.upto)?)?;
            let report = verify_seven_dissection(upto);
            write_dissection(fmt, out, &report)?;
            Ok(report.equal() && report.lhs_divisible_by(Modulus::new(7)?))
        }
        VerifyCommand::Frobenius { a, b, p, order } => {
            if a == 0 || b == 0 || order == 0 {
                return Err(UsageError("--a, --b and --order must be positive".into()));
            }
            let modulus = Modulus::new(p)?;
            let holds = verify_frobenius(a, b, modulus, order);
            match fmt {
                OutputFormat::Text => writeln!(
                    out,
                    "f{a}^{} ≡ f{}^{b} (mod {p}) through q^{}: {}",
                    u64::from(b) * p,
                    a as u64 * p,
                    order - 1,
                    if holds { "holds" } else { "FAILS" }
                )?,
                OutputFormat::Json => {
                    writeln!(out, "{}", json!({"a": a, "b": b, "p": p, "order": order, "holds": holds}))?
                }
                OutputFormat::Csv => write_csv(
                    out,
                    &["a", "b", "p", "order", "holds"],
                    [[a.to_string(), b.to_string(), p.to_string(), order.to_string(), holds.to_string()]],
                )?,
            }
            Ok(holds)
        }
        VerifyCommand::Proof { k } => {
            let trace = replay_proof(k)?;
            write_trace(fmt, out, &trace)?;
            Ok(trace.verified())
        }
    }
}

fn check_upto(upto: u64) -> Result<u64, UsageError> {
    if upto == 0 {
        return Err(UsageError("--upto must be at least 1".into()));
    }
    Ok(upto)
}

fn fmt_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn write_csv<R, I>(out: &mut impl Write, header: &[&str], rows: I) -> Result<(), UsageError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_reports(fmt: OutputFormat, out: &mut impl Write, reports: &[ClaimReport]) -> Result<(), UsageError> {
    match fmt {
        OutputFormat::Text => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
        }
        OutputFormat::Json => {
            let records: Vec<_> = reports.iter().map(ClaimReport::to_record).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?;
        }
        OutputFormat::Csv => write_csv(out, &ClaimReport::CSV_HEADER, reports.iter().map(ClaimReport::csv_row))?,
    }
    Ok(())
}

fn write_dissection(fmt: OutputFormat, out: &mut impl Write, report: &DissectionReport) -> Result<(), UsageError> {
    let divisible = report.lhs_divisible_by(Modulus::new(7)?);
    match fmt {
        OutputFormat::Text => {
            match &report.first_mismatch {
                None => writeln!(out, "a_3(7n+2) dissection identity: exact for 0 <= n < {}", report.checked_up_to)?,
                Some(m) => writeln!(
                    out,
                    "a_3(7n+2) dissection identity: MISMATCH at n={} (lhs {}, rhs {})",
                    m.n, m.lhs, m.rhs
                )?,
            }
            writeln!(out, "all coefficients divisible by 7: {divisible}")?;
        }
        OutputFormat::Json => {
            let mismatch: Value = match &report.first_mismatch {
                None => Value::Null,
                Some(m) => json!({"n": m.n, "lhs": m.lhs.to_string(), "rhs": m.rhs.to_string()}),
            };
            writeln!(
                out,
                "{}",
                json!({
                    "checked_up_to": report.checked_up_to,
                    "equal": report.equal(),
                    "divisible_by_7": divisible,
                    "first_mismatch": mismatch,
                })
            )?;
        }
        OutputFormat::Csv => write_csv(
            out,
            &["checked_upto", "equal", "divisible_by_7", "first_mismatch"],
            [[
                report.checked_up_to.to_string(),
                report.equal().to_string(),
                divisible.to_string(),
                report.first_mismatch.as_ref().map(|m| m.n.to_string()).unwrap_or_default(),
            ]],
        )?,
    }
    Ok(())
}

fn write_trace(fmt: OutputFormat, out: &mut impl Write, trace: &ProofTrace) -> Result<(), UsageError> {
    match fmt {
        OutputFormat::Text => writeln!(out, "{trace}")?,
        OutputFormat::Json => {
            let steps: Vec<Value> = trace
                .steps
                .iter()
                .map(|s| json!({"name": s.name, "statement": s.statement, "verified": s.verified}))
                .collect();
            writeln!(
                out,
                "{}",
                json!({
                    "k": trace.k,
                    "residue": trace.residue,
                    "substitution": trace.substitution,
                    "excluded_class": trace.excluded_class,
                    "component_residues": trace.component_residues,
                    "sumset": trace.sumset,
                    "steps": steps,
                    "verified": trace.verified(),
                })
            )?;
        }
        OutputFormat::Csv => write_csv(
            out,
            &["step", "name", "verified"],
            trace
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| [(i + 1).to_string(), s.name.to_string(), s.verified.to_string()]),
        )?,
    }
    Ok(())
}
