//! Command-line surface. `run` is the whole program minus process plumbing so
//! tests can drive it with in-memory streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certify::{certify_lower_bound, upper_bound, upper_bound_checked};
use crate::error::Error;
use crate::families::{
    eval, hessian_at, ones_value, zero_point, FamilyKind, FamilySpec, Method,
};
use crate::io::{
    format_matrix, from_json, parse_matrix, parse_poset, recheck_certificate, to_json,
    CertificateDoc, DetRepDoc,
};
use crate::poset::{
    eval_poset_polynomial, family_detrep, grenet_build, verify_against_family, verify_detrep,
    VerificationReport, VerifyConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dcpoly", version, about = "Permanent-like polynomials: evaluation, determinantal representations, Hessian-rank lower bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// perm, hoperm or mperm
    #[arg(long)]
    family: String,
    /// Size for perm and hoperm
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated composition for mperm, e.g. 2,1
    #[arg(long, value_delimiter = ',')]
    comp: Option<Vec<usize>>,
}

#[derive(Args, Debug, Clone)]
struct OptFamilyArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    comp: Option<Vec<usize>>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum MethodArg {
    Brute,
    #[value(alias = "recurrence")]
    Rec,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Rec => Method::Recurrence,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SpecialPoint {
    Ones,
    Zero,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the family polynomial at a matrix read from FILE
    Eval {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "rec")]
        method: MethodArg,
    },
    /// Value at the all-ones matrix, or the explicit zero
    Special {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(value_enum)]
        which: SpecialPoint,
    },
    /// Build or verify determinantal representations
    Detrep {
        #[command(subcommand)]
        action: DetrepCommand,
    },
    /// Hessian at a point (default: the family's zero) and its rank
    Hessian {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Emit a Hessian-rank certificate, or recheck one with --check
    Certify {
        #[command(flatten)]
        family: OptFamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["family", "n", "comp", "out"])]
        check: Option<PathBuf>,
    },
    /// Size of the poset-based determinantal representation
    UpperBound {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also build the representation and compare its size
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum DetrepCommand {
    Build {
        #[command(flatten)]
        family: OptFamilyArgs,
        #[arg(long, conflicts_with_all = ["family", "n", "comp"])]
        poset: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        detrep: PathBuf,
        #[command(flatten)]
        family: OptFamilyArgs,
        /// Verify against the chain polynomial of a poset file instead
        #[arg(long, conflicts_with_all = ["family", "n", "comp"])]
        poset: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Sample entries from [-bound, bound]; defaults to 10 times the degree
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, value_enum, default_value = "rec")]
        method: MethodArg,
    },
}

/// Failure modes of a command, mapped onto exit codes.
enum Failure {
    Usage(String),
    /// The command ran but the check it performs did not pass; the report
    /// has already been written to the output stream.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn family_spec(kind: &str, n: Option<usize>, comp: Option<Vec<usize>>) -> std::result::Result<FamilySpec, Failure> {
    let kind: FamilyKind = kind.parse()?;
    let spec = match (kind, n, comp) {
        (FamilyKind::Perm, Some(n), None) => FamilySpec::perm(n)?,
        (FamilyKind::Hoperm, Some(n), None) => FamilySpec::hoperm(n)?,
        (FamilyKind::Mperm, None, Some(comp)) => FamilySpec::mperm(comp)?,
        (FamilyKind::Mperm, _, _) => {
            return Err(Failure::Usage("mperm takes --comp (and no --n)".into()))
        }
        (k, _, _) => {
            return Err(Failure::Usage(format!("{} takes --n (and no --comp)", k.name())))
        }
    };
    Ok(spec)
}

impl FamilyArgs {
    fn spec(&self) -> std::result::Result<FamilySpec, Failure> {
        family_spec(&self.family, self.n, self.comp.clone())
    }
}

impl OptFamilyArgs {
    fn spec(&self) -> std::result::Result<Option<FamilySpec>, Failure> {
        match &self.family {
            Some(f) => family_spec(f, self.n, self.comp.clone()).map(Some),
            None if self.n.is_some() || self.comp.is_some() => {
                Err(Failure::Usage("--n/--comp given without --family".into()))
            }
            None => Ok(None),
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out_file: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    match out_file {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => write_out(out, text),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn report_text(report: &VerificationReport) -> String {
    let mut s = format!(
        "seed {}\nbound {}\ntrials {}\n",
        report.seed,
        report.bound,
        report.trials.len()
    );
    for t in &report.trials {
        let verdict = if t.passed { "pass" } else { "FAIL" };
        s.push_str(&format!(
            "trial {} {verdict} det {} reference {}\n",
            t.index, t.det_value, t.reference_value
        ));
        if let Some(w) = &t.witness {
            let pts: Vec<String> = w.iter().map(|(v, x)| format!("{v}={x}")).collect();
            s.push_str(&format!("  witness {}\n", pts.join(" ")));
        }
    }
    let failed = report.failures().count();
    if failed == 0 {
        s.push_str("result PASS\n");
    } else {
        s.push_str(&format!("result FAIL ({failed} of {} trials)\n", report.trials.len()));
    }
    s
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Eval {
            family,
            matrix,
            method,
        } => {
            let spec = family.spec()?;
            let x = parse_matrix(&read(&matrix)?, Some(spec.shape()))?;
            let value = eval(&spec, &x, method.into())?;
            write_out(out, &format!("{value}\n"))
        }
        Command::Special { family, which } => {
            let spec = family.spec()?;
            match which {
                SpecialPoint::Ones => write_out(out, &format!("{}\n", ones_value(&spec))),
                SpecialPoint::Zero => write_out(out, &format_matrix(&zero_point(&spec).point)),
            }
        }
        Command::Detrep { action } => match action {
            DetrepCommand::Build {
                family,
                poset,
                out: out_file,
            } => {
                let rep = match (family.spec()?, poset) {
                    (Some(spec), None) => family_detrep(&spec)?,
                    (None, Some(path)) => grenet_build(&parse_poset(&read(&path)?)?.poset)?,
                    _ => return Err(Failure::Usage("give exactly one of --family or --poset".into())),
                };
                emit(&to_json(&DetRepDoc::from_detrep(&rep)), out_file.as_deref(), out)
            }
            DetrepCommand::Verify {
                detrep,
                family,
                poset,
                trials,
                seed,
                bound,
                method,
            } => {
                let doc: DetRepDoc = from_json(&read(&detrep)?)?;
                let rep = doc.to_detrep()?;
                let config = VerifyConfig {
                    trials,
                    seed,
                    bound,
                };
                let report = match (family.spec()?, poset) {
                    (Some(spec), None) => {
                        let known = spec.var_order().0;
                        if let Some(v) = rep.matrix.variables().into_iter().find(|v| !known.contains(v)) {
                            write_out(out, &format!("variable {v} is not a {spec} variable\nresult FAIL\n"))?;
                            return Err(Failure::Check);
                        }
                        verify_against_family(&rep, &spec, method.into(), &config)?
                    }
                    (None, Some(path)) => {
                        let p = parse_poset(&read(&path)?)?.poset;
                        let mut vars = rep.matrix.variables();
                        for c in p.covers() {
                            vars.extend(c.label.variables());
                        }
                        vars.sort();
                        vars.dedup();
                        verify_detrep(&rep, &vars, |pt| eval_poset_polynomial(&p, pt), &config)?
                    }
                    _ => return Err(Failure::Usage("give exactly one of --family or --poset".into())),
                };
                write_out(out, &report_text(&report))?;
                if report.passed() {
                    Ok(())
                } else {
                    Err(Failure::Check)
                }
            }
        },
        Command::Hessian { family, point } => {
            let spec = family.spec()?;
            let x = match point {
                Some(path) => parse_matrix(&read(&path)?, Some(spec.shape()))?,
                None => zero_point(&spec).point,
            };
            let h = hessian_at(&spec, &x, &spec.var_order())?;
            let r = crate::algebra::rank(&h);
            write_out(out, &format!("{}rank {r}\n", format_matrix(&h)))
        }
        Command::Certify {
            family,
            out: out_file,
            check,
        } => {
            if let Some(path) = check {
                let doc: CertificateDoc = from_json(&read(&path)?)?;
                let report = recheck_certificate(&doc)?;
                let mut s = format!("value {}\nrank {}\n", report.value, report.rank);
                for p in &report.problems {
                    s.push_str(&format!("mismatch: {p}\n"));
                }
                s.push_str(if report.passed() { "result PASS\n" } else { "result FAIL\n" });
                write_out(out, &s)?;
                return if report.passed() { Ok(()) } else { Err(Failure::Check) };
            }
            let spec = family
                .spec()?
                .ok_or_else(|| Failure::Usage("certify needs --family or --check".into()))?;
            let cert = match certify_lower_bound(&spec) {
                Ok(c) => c,
                Err(e @ Error::Consistency(_)) => {
                    write_out(out, &format!("certification failed: {e}\n"))?;
                    return Err(Failure::Check);
                }
                Err(e) => return Err(e.into()),
            };
            emit(&to_json(&CertificateDoc::from_certificate(&cert)), out_file.as_deref(), out)
        }
        Command::UpperBound { family, check } => {
            let spec = family.spec()?;
            let bound = if check {
                match upper_bound_checked(&spec) {
                    Ok(b) => b,
                    Err(e @ Error::Consistency(_)) => {
                        write_out(out, &format!("check failed: {e}\n"))?;
                        return Err(Failure::Check);
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                upper_bound(&spec)
            };
            write_out(out, &format!("{bound}\n"))
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code: 0 success, 1 failed check, 2 usage or input error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
