use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use fourbar_balance::coeff::parse_rational;
use fourbar_balance::io;
use fourbar_balance::{
    check_balance, classify_case, derive, geometric_constraint, mode_factors, synthesize_case_iia,
    synthesize_case_iva, toric_divide, trajectory, verify_balanced, Branch, DirectionFunctional,
    Error, LaurentPoly, RateProfile, SynthesisChoices,
};

#[derive(Parser)]
#[command(
    name = "fourbar",
    about = "Exact balance analysis of planar four-bar mechanisms via toric polynomial division"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
enum SynthCase {
    #[value(name = "IIA", alias = "iia")]
    IIA,
    #[value(name = "IVA", alias = "iva")]
    IVA,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Const,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Divide two Laurent polynomials; prints Q, a '---' separator, then R.
    /// Exits 0 iff the remainder is zero.
    Divide {
        /// Dividend file (lines of 'e1 e2 re im')
        #[arg(long)]
        f: PathBuf,
        /// Divisor file
        #[arg(long)]
        g: PathBuf,
        /// Direction functional, first component
        #[arg(long, default_value_t = 1)]
        alpha: i64,
        /// Direction functional, second component
        #[arg(long, default_value_t = 1_000_003)]
        beta: i64,
        /// Write the output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run in floating point with an absolute zero tolerance of 1e-10
        #[arg(long)]
        approx: bool,
    },
    /// Print the kinematic case and mode factorization of a parameter file.
    Classify {
        #[arg(long)]
        params: PathBuf,
    },
    /// Decide static and dynamic balance per mode. Exits 0 iff the mechanism
    /// is dynamically balanced in at least one mode.
    Check {
        #[arg(long)]
        params: PathBuf,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Synthesize a dynamically balanced design for the given link lengths.
    Synthesize {
        #[arg(long, value_enum)]
        case: SynthCase,
        /// Common length l (l1 = l2 for IIA, l1 = l3 for IVA), as a rational
        #[arg(long)]
        l: String,
        /// Base length d, as a rational
        #[arg(long)]
        d: String,
        /// Seed for the free-parameter choices
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the free parameter q3
        #[arg(long)]
        q3: Option<String>,
        /// Override the free parameter J3
        #[arg(long = "J3")]
        j3: Option<String>,
        /// Override the free parameter m3
        #[arg(long)]
        m3: Option<String>,
        /// Override the crank mass m1
        #[arg(long)]
        m1: Option<String>,
        /// Override the rocker mass m2
        #[arg(long)]
        m2: Option<String>,
        /// Write the parameter JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace one crank revolution and report momentum drift; writes a CSV.
    Simulate {
        #[arg(long)]
        params: PathBuf,
        /// Assembly branch to follow
        #[arg(long, default_value = "A")]
        branch: Branch,
        /// Number of samples over the revolution
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// Crank-rate profile
        #[arg(long, value_enum, default_value = "const")]
        rate_profile: Profile,
        /// Seed for the random rate profile
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// CSV output path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Exit codes: 0 success (and, where meaningful, a positive verdict),
/// 1 negative verdict or runtime failure, 2 bad input.
fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Divide {
            f,
            g,
            alpha,
            beta,
            out,
            approx,
        } => {
            if alpha == 0 && beta == 0 {
                eprintln!("error: the direction functional must be nonzero");
                return Ok(ExitCode::from(2));
            }
            let h = DirectionFunctional::new(alpha, beta);
            let f_text = fs::read_to_string(&f)?;
            let g_text = fs::read_to_string(&g)?;
            let (fp, gp) = match (io::parse_poly(&f_text), io::parse_poly(&g_text)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            if approx {
                let to_c64 = |p: &fourbar_balance::Poly| -> LaurentPoly<Complex64> {
                    LaurentPoly::from_terms(p.terms().map(|(e, c)| {
                        use fourbar_balance::Coeff;
                        (e.e1, e.e2, c.to_c64())
                    }))
                };
                let qr = toric_divide(&to_c64(&fp), &to_c64(&gp), h)?;
                let mut text = String::new();
                for (e, c) in qr.quotient.terms() {
                    text.push_str(&format!("{} {} {:.12e} {:.12e}\n", e.e1, e.e2, c.re, c.im));
                }
                text.push_str("---\n");
                for (e, c) in qr.remainder.terms() {
                    text.push_str(&format!("{} {} {:.12e} {:.12e}\n", e.e1, e.e2, c.re, c.im));
                }
                emit(&out, &text)?;
                return Ok(if qr.remainder.is_zero() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                });
            }
            let qr = toric_divide(&fp, &gp, h)?;
            let text = format!(
                "{}---\n{}",
                io::format_poly(&qr.quotient),
                io::format_poly(&qr.remainder)
            );
            emit(&out, &text)?;
            Ok(if qr.remainder.is_zero() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Classify { params } => {
            let text = fs::read_to_string(&params)?;
            let p = match io::params_from_json(&text) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            let dp = derive(&p)?;
            let case = classify_case(&p.l1, &p.l2, &p.l3, &p.d);
            println!("kinematic case: {case}");
            println!("closure polynomial G: {}", geometric_constraint(&dp));
            for comp in mode_factors(case, &dp)? {
                println!("mode {} ({}): factor {}", comp.label, comp.constraint, comp.factor);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { params, json } => {
            let text = fs::read_to_string(&params)?;
            let p = match io::params_from_json(&text) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            let report = check_balance(&p, DirectionFunctional::default())?;
            if json {
                print!("{}", io::report_to_json(&report));
            } else {
                print!("{}", io::report_to_text(&report));
            }
            Ok(if report.balanced {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Synthesize {
            case,
            l,
            d,
            seed,
            q3,
            j3,
            m3,
            m1,
            m2,
            out,
        } => {
            let parse = |name: &str, s: &str| {
                parse_rational(s).map_err(|msg| Error::Parse {
                    line: 0,
                    msg: format!("--{name}: {msg}"),
                })
            };
            let l = match parse("l", &l) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            let d = match parse("d", &d) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            let mut choices = SynthesisChoices::default();
            for (name, src, dst) in [
                ("q3", &q3, &mut choices.q3),
                ("J3", &j3, &mut choices.j3),
                ("m3", &m3, &mut choices.m3),
                ("m1", &m1, &mut choices.m1),
                ("m2", &m2, &mut choices.m2),
            ] {
                if let Some(s) = src {
                    match parse(name, s) {
                        Ok(v) => *dst = Some(v),
                        Err(e) => {
                            eprintln!("error: {e}");
                            return Ok(ExitCode::from(2));
                        }
                    }
                }
            }
            let params = match case {
                SynthCase::IIA => synthesize_case_iia(&l, &d, &choices, seed),
                SynthCase::IVA => synthesize_case_iva(&l, &d, &choices, seed),
            }?;
            // every synthesized design must certify before it is emitted
            let report = check_balance(&params, DirectionFunctional::default())?;
            if !report.balanced {
                eprintln!("internal error: synthesized design failed its own certificate");
                return Ok(ExitCode::FAILURE);
            }
            emit(&out, &io::params_to_json(&params))?;
            eprintln!(
                "balanced modes: {}",
                report.balanced_modes().join(", ")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            params,
            branch,
            samples,
            rate_profile,
            seed,
            out,
        } => {
            let text = fs::read_to_string(&params)?;
            let p = match io::params_from_json(&text) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            let profile = match rate_profile {
                Profile::Const => RateProfile::Constant,
                Profile::Random => RateProfile::Random(seed),
            };
            let trace = trajectory(&p, branch, samples, profile)?;
            let summary = verify_balanced(&trace)?;
            emit(&out, &io::samples_to_csv(&trace))?;
            eprintln!(
                "samples: {}  max closure residual: {:.3e}  com drift: {:.3e}  \
                 H drift: {:.3e}  H cross-check: {:.3e}",
                trace.len(),
                summary.max_closure_residual,
                summary.max_com_drift,
                summary.max_h_drift,
                summary.max_h_cross_error,
            );
            eprintln!(
                "branch {:?} is {}",
                branch,
                if summary.balanced {
                    "dynamically balanced to tolerance"
                } else {
                    "not balanced"
                }
            );
            Ok(if summary.balanced {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e @ (Error::Parse { .. } | Error::Validation(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
