//! Command-line front end for the `sm2` solver.
//!
//! Results go to standard output as one JSON document; logs go to standard
//! error. Exit codes: 0 solved, 1 error, 2 infeasible, 3 refused.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::{json, Map, Value};

use sm2::reduce::{binarize_monotone_system, Binarization};
use sm2::{
    binarize_system, monotonize, parse_instance, solve_approx, solve_auto, solve_exact_monotone,
    verify_monotone_with_cap, verify_submodular_with_cap, Error, Sm2Instance, SolveMode,
    SolveOptions, SolveResult,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sm2",
    version,
    about = "Submodular minimization under two-variable inequality constraints"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Increase log verbosity on standard error (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance.
    Solve(CommonArgs),
    /// Check the objective for submodularity and monotonicity by enumeration.
    Verify(CommonArgs),
    /// Print the binarized and monotonized reductions.
    Reduce(CommonArgs),
    /// Solve by exhaustive enumeration.
    Brute(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Exact,
    Approx,
    Brute,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Instance file, or `-` for standard input.
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: Mode,
    /// Relative tolerance of the min-norm-point optimality test.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for the sampled nonnegativity check behind the certificate.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on the number of box points for enumeration.
    #[arg(long, default_value_t = sm2::oracle::DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
    /// Also write the reduction (level variables, arcs, fixings) to this file.
    #[arg(long, value_name = "PATH")]
    pub emit_closure: Option<PathBuf>,
}

impl CommonArgs {
    fn options(&self) -> SolveOptions {
        let mut opts = SolveOptions {
            cap: self.cap,
            seed: self.seed,
            ..SolveOptions::default()
        };
        opts.sfm.tol = self.tol;
        opts
    }
}

/// Exit code and result document of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
}

impl Outcome {
    fn new(code: i32, document: Value) -> Self {
        Outcome { code, document }
    }

    fn status(code: i32, status: &str, message: String) -> Self {
        Outcome::new(code, json!({ "status": status, "message": message }))
    }

    fn from_error(e: &Error) -> Self {
        match e {
            Error::Infeasible | Error::BoxInfeasible { .. } => {
                Outcome::status(EXIT_INFEASIBLE, "infeasible", e.to_string())
            }
            Error::Refused(_) => Outcome::status(EXIT_REFUSED, "refused", e.to_string()),
            _ => Outcome::status(EXIT_ERROR, "error", e.to_string()),
        }
    }
}

fn read_instance(path: &Path) -> Result<Sm2Instance, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse {
                context: "standard input".into(),
                message: e.to_string(),
            })?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse {
            context: path.display().to_string(),
            message: e.to_string(),
        })?
    };
    parse_instance(&text)
}

fn mode_name(mode: SolveMode) -> &'static str {
    match mode {
        SolveMode::ExactMonotone => "ExactMonotone",
        SolveMode::Approx2 => "Approx2",
        SolveMode::BruteForce => "BruteForce",
    }
}

/// The result document for a solver answer.
pub fn result_document(r: &SolveResult) -> Value {
    let status = match r.mode {
        SolveMode::Approx2 => "approx",
        SolveMode::ExactMonotone | SolveMode::BruteForce => "optimal",
    };
    let mut diagnostics = match serde_json::to_value(&r.diagnostics) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    diagnostics.insert("certified".into(), json!(r.certified));
    let mut doc = json!({
        "status": status,
        "x": r.x.to_vec(),
        "value": r.value,
        "lower_bound": r.lower_bound,
        "ratio_bound": r.ratio_bound,
        "mode": mode_name(r.mode),
        "diagnostics": diagnostics,
    });
    if !r.warnings.is_empty() {
        doc["warnings"] = json!(r.warnings);
    }
    doc
}

/// The reductions of an instance as a JSON document.
pub fn reduction_document(inst: &Sm2Instance, budget: u64) -> Result<Value, Error> {
    let binarized = |b: Binarization| match b {
        Binarization::System(s) => json!({ "system": s }),
        Binarization::BoxInfeasible { index, reason } => {
            json!({ "box_infeasible": { "constraint": index, "reason": reason } })
        }
    };
    let classes: Vec<_> = inst.constraints.iter().map(|c| c.classify()).collect();
    let general = binarized(binarize_system(&inst.constraints, &inst.ground, budget)?);
    let dup = monotonize(inst);
    let (ground, shifted) = dup.shifted()?;
    let relaxed = binarized(binarize_monotone_system(&shifted, &ground, budget)?);
    let mut doc = json!({
        "n": inst.n(),
        "bounds": inst.ground.bounds(),
        "classification": classes,
        "binarized": general,
        "monotonized": {
            "constraints": dup.constraints,
            "origin": dup.origin,
            "shifted_bounds": ground.bounds(),
            "shifted_constraints": shifted,
            "binarized": relaxed,
        },
    });
    if inst.is_monotone_system() {
        doc["closure"] = binarized(binarize_monotone_system(
            &inst.constraints,
            &inst.ground,
            budget,
        )?);
    }
    Ok(doc)
}

fn solve(args: &CommonArgs, inst: &Sm2Instance, mode: Mode) -> Outcome {
    let opts = args.options();
    let result = match mode {
        Mode::Auto => solve_auto(inst, &opts),
        Mode::Exact => solve_exact_monotone(inst, &opts),
        Mode::Approx => solve_approx(inst, &opts),
        Mode::Brute => sm2::solve::brute_force_solve_with_cap(inst, args.cap),
    };
    match result {
        Ok(r) if !r.feasible => {
            Outcome::status(EXIT_INFEASIBLE, "infeasible", "no feasible point".into())
        }
        Ok(r) => {
            info!(
                "{} solve: value {} lower bound {}",
                mode_name(r.mode),
                r.value,
                r.lower_bound
            );
            for w in &r.warnings {
                log::warn!("{w}");
            }
            Outcome::new(EXIT_OK, result_document(&r))
        }
        Err(e) => Outcome::from_error(&e),
    }
}

fn verify(args: &CommonArgs, inst: &Sm2Instance) -> Outcome {
    let f = &inst.objective;
    let checks = verify_submodular_with_cap(f, args.cap)
        .and_then(|s| Ok((s, verify_monotone_with_cap(f, args.cap)?)));
    match checks {
        Ok((submodular, monotone)) => {
            let flags = f.flags();
            let consistent =
                (submodular || !flags.claims_submodular) && (monotone || !flags.claims_monotone);
            Outcome::new(
                if consistent { EXIT_OK } else { EXIT_ERROR },
                json!({
                    "status": if consistent { "ok" } else { "error" },
                    "submodular": submodular,
                    "monotone": monotone,
                    "claims": {
                        "submodular": flags.claims_submodular,
                        "monotone": flags.claims_monotone,
                        "integer_valued": flags.integer_valued,
                    },
                }),
            )
        }
        Err(e) => Outcome::from_error(&e),
    }
}

/// Run one subcommand.
pub fn run(cli: &Cli) -> Outcome {
    let args = match &cli.command {
        Command::Solve(a) | Command::Verify(a) | Command::Reduce(a) | Command::Brute(a) => a,
    };
    let inst = match read_instance(&args.instance) {
        Ok(i) => i,
        Err(e) => return Outcome::from_error(&e),
    };
    let budget = args.options().budget;
    if let Some(path) = &args.emit_closure {
        let written = reduction_document(&inst, budget).and_then(|doc| {
            let text = serde_json::to_string_pretty(&doc).expect("reduction serializes");
            fs::write(path, text).map_err(|e| Error::Parse {
                context: path.display().to_string(),
                message: e.to_string(),
            })
        });
        if let Err(e) = written {
            return Outcome::from_error(&e);
        }
    }
    match &cli.command {
        Command::Solve(a) => solve(a, &inst, a.mode),
        Command::Brute(a) => solve(a, &inst, Mode::Brute),
        Command::Verify(a) => verify(a, &inst),
        Command::Reduce(_) => match reduction_document(&inst, budget) {
            Ok(doc) => Outcome::new(EXIT_OK, doc),
            Err(e) => Outcome::from_error(&e),
        },
    }
}
