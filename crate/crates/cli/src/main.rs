//! `jshm`: JSON front end for the Johnson-scheme / Wilson-matrix toolkit.
//!
//! Exit codes: 0 verified, 1 verification failed, 2 invalid input,
//! 3 budget exhausted. Machine output is one JSON document on stdout with
//! sorted keys; a one-line summary goes to stderr.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use jshm_core::designs::{admissible, admissible_range, design_projection_identity, search_design, Design, SearchOutcome};
use jshm_core::identity::{compare_pointwise_with, compare_symbolic, design_witness_check_with, Lhs, Rhs, WitnessStatus};
use jshm_core::johnson::{bm_dense, DEFAULT_DENSE_BUDGET};
use jshm_core::oracles::{exact_spectrum_f64, float_spectrum, max_family, spectra_match, SPECTRUM_TOLERANCE};
use jshm_core::projection::{check_family_lemma, project_family_with};
use jshm_core::subsets::FamilyDoc;
use jshm_core::wilson::{certify_grid, ekr_certificate_with, nabla, omega, regime_grid, OmegaVariant};
use jshm_core::{BMVector, EigenSystem, Error, Execution, Family, Rational, SchemeParams};
use serde::Serialize;
use serde_json::{json, Value};

const OK: u8 = 0;
const FAILED: u8 = 1;
const INVALID: u8 = 2;
const EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "jshm", version, about = "Exact Wilson EKR matrices in the Johnson scheme")]
struct Cli {
    /// Search budget in node expansions.
    #[arg(long, global = true, env = "JSHM_BUDGET", default_value_t = 10_000_000)]
    budget: u64,
    /// Worker threads for grid commands; 1 runs sequentially, 0 picks a default.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigen table (theta1, P, m) of J(n,k).
    Scheme {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    #[command(subcommand)]
    Wilson(WilsonCmd),
    /// Project a family file onto the Bose-Mesner algebra.
    Project {
        file: PathBuf,
        /// Also check the family lemma for t-intersecting families. A design
        /// file's "t" is its strength, not an intersection size, so it is
        /// never used here.
        #[arg(long)]
        t: Option<usize>,
    },
    #[command(subcommand)]
    Design(DesignCmd),
    #[command(subcommand)]
    Identity(IdentityCmd),
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Args, Clone, Copy)]
struct Nkt {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Subcommand)]
enum WilsonCmd {
    /// Omega(n,k,t) and nabla = I + Omega.
    Omega {
        #[command(flatten)]
        p: Nkt,
        #[arg(long, default_value = "corrected")]
        variant: OmegaVariant,
    },
    /// EKR certificate for one point or for the whole regime grid.
    Certify {
        #[arg(long, required_unless_present = "grid")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "grid")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "grid")]
        t: Option<usize>,
        #[arg(long, default_value = "corrected")]
        variant: OmegaVariant,
        /// All 1 <= t < k <= k-max, (t+1)(k-t+1) <= n <= n-max, k <= n-k.
        #[arg(long, conflicts_with_all = ["n", "k", "t"])]
        grid: bool,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long, default_value_t = 14)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Check that a family file is a t-design.
    Verify {
        file: PathBuf,
        /// Defaults to the file's "t".
        #[arg(long)]
        t: Option<usize>,
    },
    /// Exact-cover search for a t-(n,k,1) design.
    Search {
        #[command(flatten)]
        p: Nkt,
    },
    /// Divisibility conditions for t-(n,k,1) designs.
    Admissible {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        /// Test a single n (exit 1 when inadmissible).
        #[arg(long, required_unless_present = "n_max", conflicts_with = "n_max")]
        n: Option<usize>,
        /// List every admissible n up to this bound.
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Args, Clone, Copy)]
struct Sides {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    /// M or M+I.
    #[arg(long, default_value = "M")]
    lhs: Lhs,
    /// literal, corrected or nabla.
    #[arg(long, default_value = "corrected")]
    rhs: Rhs,
}

#[derive(Subcommand)]
enum IdentityCmd {
    /// Compare both sides as rational functions of n.
    Prove {
        #[command(flatten)]
        s: Sides,
    },
    /// Compare both sides at integer n in [from, to].
    Pointwise {
        #[command(flatten)]
        s: Sides,
        /// Defaults to 2k.
        #[arg(long)]
        from: Option<usize>,
        /// Defaults to from + 2k + 4.
        #[arg(long)]
        to: Option<usize>,
    },
    /// Check the identity on actual Steiner systems found by search.
    Witness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact maximum t-intersecting family by branch and bound.
    MaxFamily {
        #[command(flatten)]
        p: Nkt,
    },
    /// Exact and floating-point spectra of sum c_r A_r in J(n,k).
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// c_0..c_k, comma separated rationals.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        coeffs: Vec<Rational>,
    },
}

struct Outcome {
    code: u8,
    doc: Value,
    summary: String,
}

fn outcome(code: u8, doc: impl Serialize, summary: impl Into<String>) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        code,
        doc: serde_json::to_value(doc)?,
        summary: summary.into(),
    })
}

fn verdict(ok: bool) -> u8 {
    if ok {
        OK
    } else {
        FAILED
    }
}

fn read_family(path: &PathBuf) -> anyhow::Result<(Family, FamilyDoc)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: FamilyDoc = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((Family::from_doc(doc.clone())?, doc))
}

fn execution(jobs: usize) -> Execution {
    if jobs == 1 {
        return Execution::Sequential;
    }
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        // Only fails if a global pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    Execution::default()
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let exec = execution(cli.jobs);
    let budget = cli.budget;
    match cli.command {
        Command::Scheme { n, k } => {
            let sys = EigenSystem::with_execution(SchemeParams::new(n, k)?, exec)?;
            outcome(OK, &sys, format!("J({n},{k}): eigen table passed self-checks"))
        }
        Command::Wilson(WilsonCmd::Omega { p, variant }) => {
            let om = omega(p.n, p.k, p.t, variant)?;
            let nab = nabla(p.n, p.k, p.t, variant)?;
            let doc = json!({ "variant": variant, "omega": om, "nabla": nab });
            outcome(OK, doc, format!("Omega({},{},{}) {variant}", p.n, p.k, p.t))
        }
        Command::Wilson(WilsonCmd::Certify { n, k, t, variant, grid, k_max, n_max }) => {
            if grid {
                let points = regime_grid(k_max, n_max);
                let certs = match variant {
                    OmegaVariant::Corrected => certify_grid(&points, exec),
                    OmegaVariant::Literal => exec.map(&points, |&(n, k, t)| ekr_certificate_with(n, k, t, variant)),
                }
                .into_iter()
                .collect::<jshm_core::Result<Vec<_>>>()?;
                let valid = certs.iter().filter(|c| c.valid).count();
                let all = valid == certs.len();
                let summary = format!("{valid}/{} certificates valid", certs.len());
                return outcome(verdict(all), json!({ "all_valid": all, "certificates": certs }), summary);
            }
            let (n, k, t) = (n.unwrap(), k.unwrap(), t.unwrap());
            let cert = ekr_certificate_with(n, k, t, variant)?;
            let summary = format!(
                "({n},{k},{t}) {variant}: {} (bound {})",
                if cert.valid { "valid" } else { "invalid" },
                cert.bound
            );
            outcome(verdict(cert.valid), &cert, summary)
        }
        Command::Project { file, t } => {
            let (family, _) = read_family(&file)?;
            let psi = project_family_with(&family, exec)?;
            match t {
                Some(t) => {
                    let lemma = check_family_lemma(&family, t)?;
                    let ok = lemma.holds();
                    let verdict_text = match (lemma.t_intersecting, ok) {
                        (false, _) => "not t-intersecting, lemma vacuous",
                        (true, true) => "holds",
                        (true, false) => "fails",
                    };
                    let summary = format!("|F| = {}, family lemma at t = {t}: {verdict_text}", family.len());
                    outcome(verdict(ok), json!({ "psi": psi, "lemma": lemma }), summary)
                }
                None => outcome(OK, json!({ "psi": psi }), format!("|F| = {}", family.len())),
            }
        }
        Command::Design(DesignCmd::Verify { file, t }) => {
            let (family, doc) = read_family(&file)?;
            let t = t.or(doc.t).context("no t given and the file has no \"t\" field")?;
            match Design::verify(family, t) {
                Ok(design) => {
                    let mut out = serde_json::to_value(design.to_doc())?;
                    out["verified"] = json!(true);
                    if design.lambda() == 1 {
                        if let Ok(report) = design_projection_identity(&design) {
                            out["projection"] = serde_json::to_value(report)?;
                        }
                    }
                    let summary = format!("{t}-design with lambda = {}", design.lambda());
                    outcome(OK, out, summary)
                }
                Err(Error::NotADesign { witness, count, expected }) => {
                    let doc = json!({ "verified": false, "witness": witness.elements(), "count": count, "expected": expected });
                    outcome(FAILED, doc, format!("not a {t}-design: {witness} lies in {count} blocks, expected {expected}"))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Design(DesignCmd::Search { p }) => {
            let found = search_design(p.n, p.k, p.t, budget)?;
            let mut out = found.summary_json();
            let code = match &found {
                SearchOutcome::Found { design, .. } => {
                    let doc = serde_json::to_value(design.to_doc())?;
                    out.as_object_mut().unwrap().extend(doc.as_object().unwrap().clone());
                    OK
                }
                SearchOutcome::NotFound { .. } => FAILED,
                SearchOutcome::BudgetExhausted { .. } => EXHAUSTED,
            };
            let summary = format!("{}-({},{},1): {} after {} nodes", p.t, p.n, p.k, found.status(), found.nodes());
            outcome(code, out, summary)
        }
        Command::Design(DesignCmd::Admissible { k, t, n, n_max }) => match (n, n_max) {
            (Some(n), _) => {
                let ok = admissible(n, k, t);
                outcome(verdict(ok), json!({ "n": n, "k": k, "t": t, "admissible": ok }), format!("n = {n}: {ok}"))
            }
            (None, Some(n_max)) => {
                let ns = admissible_range(k, t, n_max);
                let summary = format!("{} admissible n up to {n_max}", ns.len());
                outcome(OK, json!({ "k": k, "t": t, "n_max": n_max, "admissible": ns }), summary)
            }
            (None, None) => unreachable!("clap requires one of --n, --n-max"),
        },
        Command::Identity(IdentityCmd::Prove { s }) => {
            let report = compare_symbolic(s.k, s.t, s.lhs, s.rhs)?;
            let summary = format!("(k,t) = ({},{}): {}", s.k, s.t, if report.equal { "equal" } else { "not equal" });
            outcome(verdict(report.equal), &report, summary)
        }
        Command::Identity(IdentityCmd::Pointwise { s, from, to }) => {
            let from = from.unwrap_or(2 * s.k);
            let to = to.unwrap_or(from + 2 * s.k + 4);
            let report = compare_pointwise_with(s.k, s.t, s.lhs, s.rhs, from, to, exec)?;
            let summary = format!(
                "{} agreements, {} poles, identity {}, consistent with symbolic: {}",
                report.agreements, report.poles, report.identity, report.consistent
            );
            outcome(verdict(report.identity && report.consistent), &report, summary)
        }
        Command::Identity(IdentityCmd::Witness { k, t, n }) => {
            let report = design_witness_check_with(k, t, &n, budget, exec)?;
            let exhausted = report.points.iter().any(|p| p.status == WitnessStatus::Unverified && p.reason.contains("budget"));
            let code = if report.any_failed() {
                FAILED
            } else if exhausted {
                EXHAUSTED
            } else {
                OK
            };
            let verified = report.points.iter().filter(|p| p.status == WitnessStatus::Verified).count();
            outcome(code, &report, format!("{verified}/{} points verified", report.points.len()))
        }
        Command::Oracle(OracleCmd::MaxFamily { p }) => {
            let result = max_family(p.n, p.k, p.t, budget)?;
            let code = if result.optimal { OK } else { EXHAUSTED };
            let summary = format!(
                "({},{},{}): size {}{} after {} nodes",
                p.n,
                p.k,
                p.t,
                result.size,
                if result.optimal { " (optimal)" } else { " (best found)" },
                result.nodes
            );
            outcome(code, &result, summary)
        }
        Command::Oracle(OracleCmd::Spectrum { n, k, coeffs }) => {
            let params = SchemeParams::new(n, k)?;
            let v = BMVector::from_coeffs(params, coeffs)?;
            let sys = EigenSystem::with_execution(params, exec)?;
            let exact = sys.eigenvalues(&v)?;
            let expanded = exact_spectrum_f64(&sys, &v)?;
            let approx = float_spectrum(&bm_dense(&v, DEFAULT_DENSE_BUDGET)?)?;
            let ok = spectra_match(&expanded, &approx, SPECTRUM_TOLERANCE);
            let doc = json!({
                "element": v,
                "exact": exact,
                "m": sys.m.iter().map(|m| u64::try_from(m).ok()).collect::<Vec<_>>(),
                "float": approx,
                "tolerance": SPECTRUM_TOLERANCE,
                "match": ok,
            });
            outcome(verdict(ok), doc, format!("exact vs float spectrum: {}", if ok { "match" } else { "MISMATCH" }))
        }
    }
}

fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::SizeBudget { .. }) => EXHAUSTED,
        _ => INVALID,
    }
}

/// Writes the document; a closed stdout (e.g. `| head`) is not an error.
fn emit(doc: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{doc}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            emit(&serde_json::to_string_pretty(&out.doc).expect("JSON values serialize"));
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(err) => {
            let code = error_code(&err);
            emit(&json!({ "error": format!("{err:#}"), "exit_code": code }).to_string());
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}
