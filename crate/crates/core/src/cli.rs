//! Command line front end.
//!
//! Every subcommand reads its JSON arguments either inline or from stdin
//! (`-`), writes one line of JSON (or a CSV table) to stdout and signals its
//! verdict through the exit code:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success / interior / no bound violation             |
//! | 1    | `membership`: boundary                              |
//! | 2    | `membership`: exterior                              |
//! | 3    | `transport`: point is not on the royal variety      |
//! | 4    | `commutator`: the Schwarz bound is violated          |
//! | 5    | numerical domain error (pole, unnormalized input)   |
//! | 64   | malformed input or usage error                      |

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::geometry::{in_g2, in_sigma2, Region, SymPoint};
use crate::group::G2Automorphism;
use crate::json::{self, parse_complex};
use crate::lab::{commutator_report, iterate_commutator, orbit_sample, CandidateMap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUNDARY: i32 = 1;
pub const EXIT_EXTERIOR: i32 = 2;
pub const EXIT_NOT_ROYAL: i32 = 3;
pub const EXIT_BOUND_VIOLATION: i32 = 4;
pub const EXIT_DOMAIN: i32 = 5;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "bidisc",
    version,
    about = "Symmetrized bidisc geometry and automorphism experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = crate::geometry::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a point as interior, boundary or exterior to G2.
    Membership {
        /// {"s": .., "p": ..}, or - for stdin
        point: String,
    },
    /// Apply an automorphism {"h": {"tau": .., "a": ..}} to a point.
    Apply { automorphism: String, point: String },
    /// Automorphism sending a royal point to the origin.
    Transport { point: String },
    /// Images of a point under seeded random automorphisms.
    Orbit { point: String },
    /// Commutator Jacobian experiment on a polynomial candidate map.
    Commutator {
        candidate: String,
        #[arg(long, default_value = "-1", value_parser = parse_tau, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long = "n-max", default_value_t = 1_000_000)]
        n_max: u64,
    },
}

fn parse_tau(text: &str) -> Result<Complex64, String> {
    parse_complex(text).map_err(|e| e.to_string())
}

/// A failed command: exit code plus a diagnostic for stderr.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotOnRoyalVariety(_) => EXIT_NOT_ROYAL,
            Error::InvalidCandidate(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stdin_used: bool,
}

impl Io<'_> {
    fn argument(&mut self, arg: &str) -> Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_owned());
        }
        if self.stdin_used {
            return Err(usage("stdin can supply only one argument"));
        }
        self.stdin_used = true;
        let mut buf = String::new();
        self.stdin
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    }

    fn parse<T: serde::de::DeserializeOwned>(
        &mut self,
        arg: &str,
        what: &str,
    ) -> Result<T, Failure> {
        let text = self.argument(arg)?;
        serde_json::from_str(&text).map_err(|e| usage(format!("malformed {what}: {e}")))
    }

    fn line(&mut self, text: &str) -> Result<(), Failure> {
        writeln!(self.stdout, "{text}")
            .map_err(|e| Failure(EXIT_DOMAIN, format!("writing stdout: {e}")))
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string(value).expect("output types serialize");
        self.line(&text)
    }
}

/// 17 significant digits: enough to round-trip any `f64`.
fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_only(config: &RunConfig, cmd: &str) -> Result<(), Failure> {
    match config.format {
        Some(Format::Csv) => Err(usage(format!("{cmd} only supports json output"))),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct MembershipOut {
    region: Region,
    margin: f64,
    sigma2_residual: f64,
}

#[derive(Serialize)]
struct ApplyOut {
    #[serde(with = "json::complex")]
    s: Complex64,
    #[serde(with = "json::complex")]
    p: Complex64,
    check: f64,
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Result<i32, Failure> {
    let config = &cli.config;
    if !(config.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    match cli.command {
        Command::Membership { point } => {
            let pt: SymPoint = io.parse(&point, "point")?;
            let verdict = in_g2(pt, config.tol);
            let (_, residual) = in_sigma2(pt, config.tol);
            match config.format.unwrap_or(Format::Json) {
                Format::Json => io.json(&MembershipOut {
                    region: verdict.region,
                    margin: verdict.margin,
                    sigma2_residual: residual,
                })?,
                Format::Csv => {
                    io.line("region,margin,sigma2_residual")?;
                    let region = serde_json::to_value(verdict.region).expect("region serializes");
                    io.line(&format!(
                        "{},{},{}",
                        region.as_str().unwrap_or_default(),
                        csv_float(verdict.margin),
                        csv_float(residual)
                    ))?;
                }
            }
            Ok(match verdict.region {
                Region::Interior => EXIT_OK,
                Region::Boundary => EXIT_BOUNDARY,
                Region::Exterior => EXIT_EXTERIOR,
            })
        }
        Command::Apply {
            automorphism,
            point,
        } => {
            json_only(config, "apply")?;
            let h: G2Automorphism = io.parse(&automorphism, "automorphism")?;
            let pt: SymPoint = io.parse(&point, "point")?;
            let closed = h.apply(pt)?;
            let roots = h.apply_via_roots(pt)?;
            io.json(&ApplyOut {
                s: closed.s,
                p: closed.p,
                check: closed.dist_inf(&roots),
            })?;
            Ok(EXIT_OK)
        }
        Command::Transport { point } => {
            json_only(config, "transport")?;
            let pt: SymPoint = io.parse(&point, "point")?;
            let t = G2Automorphism::transport_to_origin(pt, config.tol)?;
            io.json(&t)?;
            Ok(EXIT_OK)
        }
        Command::Orbit { point } => {
            let pt: SymPoint = io.parse(&point, "point")?;
            let orbit = orbit_sample(pt, config.samples, config.seed)?;
            match config.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    io.line("re_s,im_s,re_p,im_p,sigma2_residual")?;
                    for q in &orbit {
                        let (_, residual) = in_sigma2(*q, config.tol);
                        let row = [q.s.re, q.s.im, q.p.re, q.p.im, residual]
                            .map(csv_float)
                            .join(",");
                        io.line(&row)?;
                    }
                }
                Format::Json => io.json(&orbit)?,
            }
            Ok(EXIT_OK)
        }
        Command::Commutator {
            candidate,
            tau,
            n_max,
        } => {
            json_only(config, "commutator")?;
            let map: CandidateMap = io.parse(&candidate, "candidate")?;
            let (_, normalized) = map.normalized()?;
            let report = commutator_report(&normalized, tau)?;
            let violated = match report.n_star {
                Some(n) if n <= n_max => {
                    let jac = normalized.origin_jacobian();
                    let entry = iterate_commutator(&jac, tau, n)?.m12.norm();
                    if !(entry > report.bound) {
                        return Err(Failure(
                            EXIT_DOMAIN,
                            format!("iterate {n} has |entry| = {entry}, expected above the bound"),
                        ));
                    }
                    true
                }
                _ => false,
            };
            io.json(&report)?;
            Ok(if violated {
                EXIT_BOUND_VIOLATION
            } else {
                EXIT_OK
            })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stdin_used: false,
    };
    match execute(cli, &mut io) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}
