//! Command-line front end for the fockcheck verification engine.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fockcheck::checks::{
    charged_check, clifford_check, decompose, decomposition_check, eigenvalue_check, heisenberg_check, identities_check,
    iso_check, sector_dimension_check, virasoro_check, virasoro_check_with, winf_check, VirasoroFamily,
};
use fockcheck::expr::{evaluate, EvaluatedState};
use fockcheck::harness::{combine, VerificationReport};
use fockcheck::qchar::{char_product_form, char_sum_form, char_trace, character_identity_check, jacobi_check, JacobiIdentity};
use fockcheck::scalar::{parse_scalar, HalfInteger, Scalar};
use fockcheck::virasoro::VirasoroParams;
use fockcheck::Rational;

#[derive(Parser)]
#[command(name = "fockcheck", version, about = "Exact verification of the D-A boson-fermion correspondence")]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel checks.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Print the graded character of the neutral Fock space.
    Character {
        /// Highest power of q kept.
        #[arg(long, default_value_t = 5)]
        qmax: i64,
        #[arg(long, value_enum, default_value_t = Form::Trace)]
        form: Form,
    },
    /// Check a Jacobi triple product identity.
    Jacobi {
        #[arg(long, value_enum)]
        which: Which,
        /// Highest power of q compared.
        #[arg(long, default_value_t = 12)]
        qmax: i64,
    },
    /// Tabulate sector dimensions against partition numbers.
    Decompose {
        #[arg(long, default_value_t = 4)]
        nmax: i64,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
    },
    /// Evaluate an operator expression on the vacuum.
    Apply {
        /// For example `h[0] phi[-5/2] |0>`.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Args, Clone, Copy)]
struct Cut {
    /// Largest basis weight, as `p/2` or an integer.
    #[arg(long, value_parser = parse_half)]
    weight_cut: Option<HalfInteger>,
}

impl Cut {
    fn or(self, twice: i64) -> HalfInteger {
        self.weight_cut.unwrap_or(HalfInteger::from_twice(twice))
    }
}

#[derive(Subcommand)]
enum Suite {
    /// Clifford anticommutators of the neutral modes.
    Clifford {
        #[arg(long, value_parser = parse_half, default_value = "15/2")]
        max_index: HalfInteger,
        #[command(flatten)]
        cut: Cut,
    },
    /// Heisenberg relations, sector dimensions and the module decomposition.
    Heisenberg {
        #[arg(long, default_value_t = 5)]
        mmax: i64,
        #[command(flatten)]
        cut: Cut,
    },
    /// Virasoro bracket law for one family.
    Virasoro {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long, value_parser = parse_rational, required_if_eq("family", "lambda"))]
        lambda: Option<Rational>,
        #[arg(long, value_parser = parse_rational, required_if_eq("family", "lambda"))]
        b: Option<Rational>,
        /// Claimed central charge, defaulting to the family's own.
        #[arg(long, value_parser = parse_rational)]
        c: Option<Rational>,
        #[arg(long, default_value_t = 4)]
        mmax: i64,
        #[command(flatten)]
        cut: Cut,
    },
    /// The W(1+inf) action on both spaces.
    Winf {
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        mmax: i64,
        #[command(flatten)]
        cut: Cut,
    },
    /// The D-A state isomorphism and the charged-side fields.
    Iso {
        #[arg(long, value_parser = parse_half, default_value = "15/2")]
        max_index: HalfInteger,
        #[arg(long, default_value_t = 4)]
        mmax: i64,
        #[command(flatten)]
        cut: Cut,
    },
    /// Field identities, eigenvalue pins and the specializations.
    Identities {
        #[arg(long, default_value_t = 4)]
        mmax: i64,
        #[command(flatten)]
        cut: Cut,
    },
    /// Every suite at its default size.
    All,
}

#[derive(ValueEnum, Clone, Copy)]
enum Form {
    Trace,
    Product,
    Sum,
}

#[derive(ValueEnum, Clone, Copy)]
enum Which {
    #[value(name = "DA")]
    Da,
    #[value(name = "A")]
    A,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum FamilyName {
    Half,
    #[value(name = "half~")]
    HalfTilde,
    One,
    #[value(name = "one~")]
    OneTilde,
    Lambda,
}

fn parse_half(s: &str) -> Result<HalfInteger, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    parse_scalar::<Rational>(s).map_err(|e| format!("{e}"))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn whole(n: i64) -> HalfInteger {
    HalfInteger::from_int(n)
}

fn run_suite(suite: &Suite) -> Vec<VerificationReport> {
    match *suite {
        Suite::Clifford { max_index, cut } => vec![clifford_check(max_index, cut.or(16))],
        Suite::Heisenberg { mmax, cut } => vec![
            heisenberg_check(mmax, cut.or(20)),
            sector_dimension_check(4, 8),
            decomposition_check(4, 5, 3, 5),
        ],
        Suite::Virasoro { family, ref lambda, ref b, ref c, mmax, cut } => {
            let fam = match family {
                FamilyName::Half => VirasoroFamily::Half,
                FamilyName::HalfTilde => VirasoroFamily::HalfTilde,
                FamilyName::One => VirasoroFamily::One,
                FamilyName::OneTilde => VirasoroFamily::OneTilde,
                FamilyName::Lambda => {
                    let (l, b) = (lambda.clone().unwrap_or_default(), b.clone().unwrap_or_default());
                    VirasoroFamily::Lambda(VirasoroParams::new(l, b))
                }
            };
            let c = c.clone().unwrap_or_else(|| fam.central_charge());
            vec![virasoro_check_with(fam.family(), c, mmax, cut.or(20))]
        }
        Suite::Winf { kmax, mmax, cut } => vec![winf_check(kmax, mmax, mmax.max(4), cut.or(16))],
        Suite::Iso { max_index, mmax, cut } => {
            let cut = cut.or(16);
            vec![
                iso_check(max_index, mmax, cut),
                charged_check(&[q(0, 1), q(1, 2), q(1, 1)], &[q(0, 1), q(1, 3)], 5, 3.min(mmax), cut),
            ]
        }
        Suite::Identities { mmax, cut } => {
            let cut = cut.or(16);
            vec![identities_check(mmax, cut), eigenvalue_check(5, whole(10))]
        }
        Suite::All => {
            let mut out = run_suite(&Suite::Clifford { max_index: HalfInteger::from_twice(15), cut: Cut { weight_cut: None } });
            out.extend(run_suite(&Suite::Heisenberg { mmax: 5, cut: Cut { weight_cut: None } }));
            for family in [FamilyName::Half, FamilyName::HalfTilde, FamilyName::One, FamilyName::OneTilde] {
                out.extend(run_suite(&Suite::Virasoro { family, lambda: None, b: None, c: None, mmax: 4, cut: Cut { weight_cut: None } }));
            }
            for (l, b) in [(q(0, 1), q(0, 1)), (q(1, 1), q(0, 1)), (q(1, 3), q(2, 5)), (q(1, 2), q(-1, 4))] {
                let fam = VirasoroFamily::Lambda(VirasoroParams::new(l, b));
                out.push(virasoro_check(&fam, 3, whole(10)));
            }
            out.extend(run_suite(&Suite::Identities { mmax: 4, cut: Cut { weight_cut: None } }));
            out.push(character_identity_check(HalfInteger::from_twice(19)));
            out.push(jacobi_check(JacobiIdentity::DA, 12));
            out.push(jacobi_check(JacobiIdentity::ATriple, 12));
            out.extend(run_suite(&Suite::Iso { max_index: HalfInteger::from_twice(15), mmax: 4, cut: Cut { weight_cut: None } }));
            out.extend(run_suite(&Suite::Winf { kmax: 2, mmax: 3, cut: Cut { weight_cut: None } }));
            out
        }
    }
}

/// Rendered output and whether every check passed.
fn execute(cli: &Cli) -> anyhow::Result<Result<(String, bool), String>> {
    let mut text = String::new();
    let passed = match &cli.command {
        Command::Verify { suite } => {
            let reports = run_suite(suite);
            let passed = reports.iter().all(VerificationReport::passed);
            if cli.json {
                for r in &reports {
                    text.push_str(&r.to_json());
                    text.push('\n');
                }
            } else {
                for r in &reports {
                    text.push_str(&format!("{r}\n"));
                }
                if reports.len() > 1 {
                    let all = combine("total", reports);
                    text.push_str(&format!("{}: {} cases, {} failures\n", if passed { "PASS" } else { "FAIL" }, all.cases_run, all.failures.len()));
                }
            }
            passed
        }
        Command::Character { qmax, form } => {
            if *qmax < 0 {
                return Ok(Err("--qmax must be non-negative".into()));
            }
            let series = match form {
                Form::Trace => char_trace(whole(*qmax)),
                Form::Product => char_product_form(2 * qmax),
                Form::Sum => char_sum_form(2 * qmax),
            };
            if cli.json {
                text.push_str(&serde_json::to_string(&series.records())?);
                text.push('\n');
            } else {
                text.push_str(&format!("{series}\n"));
            }
            true
        }
        Command::Jacobi { which, qmax } => {
            if *qmax < 0 {
                return Ok(Err("--qmax must be non-negative".into()));
            }
            let which = match which {
                Which::Da => JacobiIdentity::DA,
                Which::A => JacobiIdentity::ATriple,
            };
            let report = jacobi_check(which, *qmax);
            text.push_str(&if cli.json { report.to_json() } else { report.to_string() });
            text.push('\n');
            report.passed()
        }
        Command::Decompose { nmax, kmax } => {
            let rows = decompose(*nmax, *kmax);
            if cli.json {
                for row in &rows {
                    text.push_str(&serde_json::to_string(row)?);
                    text.push('\n');
                }
            } else {
                text.push_str(&format!("{:>4} {:>4} {:>6} {:>6}  match\n", "n", "k", "dim", "p(k)"));
                for r in &rows {
                    text.push_str(&format!("{:>4} {:>4} {:>6} {:>6}  {}\n", r.n, r.k, r.dim, r.p, r.matches));
                }
            }
            rows.iter().all(|r| r.matches)
        }
        Command::Apply { expr } => {
            let state: EvaluatedState<Rational> = match evaluate(expr) {
                Ok(s) => s,
                Err(e) => return Ok(Err(format!("{e}"))),
            };
            if cli.json {
                let v = serde_json::json!({ "expr": expr, "state": state.to_string() });
                text.push_str(&serde_json::to_string(&v)?);
            } else {
                text.push_str(&state.to_string());
            }
            text.push('\n');
            true
        }
    };
    Ok(Ok((text, passed)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = execute(&cli).and_then(|r| match r {
        Ok((text, passed)) => {
            match &cli.out {
                Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            Ok(Ok(passed))
        }
        Err(usage) => Ok(Err(usage)),
    });
    match outcome {
        Ok(Ok(true)) => ExitCode::SUCCESS,
        Ok(Ok(false)) => ExitCode::from(1),
        Ok(Err(usage)) => {
            eprintln!("error: {usage}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
