use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use ainfty_cli::commands::{self, RunResult};
use ainfty_cli::fuzz::{fuzz_campaign, FuzzConfig, Target};

/// Exact-arithmetic toolkit for finite-dimensional A∞-structures given by
/// structure constants: identity checking, duality, pairings,
/// rationalization, and contratensor constructions.
///
/// Exit codes: 0 = pass, 1 = violation or failed finding, 2 = malformed
/// input. Reports go to stdout and are byte-identical for identical inputs,
/// flags, and seeds; timing goes to stderr.
#[derive(Parser)]
#[command(name = "ainfty", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the structure-appropriate identity checker.
    Check {
        file: PathBuf,
        /// Check only this structure (default: every structure in the file).
        #[arg(long)]
        name: Option<String>,
        /// Truncate the identity window at this arity.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Graded dual of a coalgebra, or adjoint duality for (co)modules.
    Dualize {
        file: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Validate a pairing as an algebra morphism into the dual.
    PairCheck {
        file: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Largest subcomodule of a module along a pairing.
    Rationalize {
        file: PathBuf,
        #[arg(long)]
        pairing: String,
        #[arg(long)]
        module: String,
        /// Arity bound for the induced coaction.
        #[arg(long, default_value_t = 4)]
        co_k_max: usize,
    },
    /// Underlying module of a right comodule along a pairing.
    Iota {
        file: PathBuf,
        #[arg(long)]
        pairing: String,
        #[arg(long)]
        comodule: String,
    },
    /// Contratensor product of a contramodule with a two-sided comodule.
    Contratensor {
        file: PathBuf,
        #[arg(long)]
        contramodule: String,
        #[arg(long)]
        cdspace: String,
    },
    /// Contramodule of colinear maps out of a two-sided comodule.
    Hom {
        file: PathBuf,
        #[arg(long)]
        cdspace: String,
        #[arg(long)]
        comodule: String,
    },
    /// Hom-set comparison for an adjoint pair.
    Adjunction {
        #[command(subcommand)]
        which: AdjunctionCmd,
    },
    /// Eilenberg–Moore-side identity check.
    EmCheck {
        file: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Induced free structure on a declared space.
    Free {
        /// `module` (over an algebra) or `contramodule` (over a coalgebra).
        kind: String,
        file: PathBuf,
        /// Name of the algebra or coalgebra to induce over.
        #[arg(long)]
        over: String,
        /// Name of the generating space.
        #[arg(long)]
        space: String,
    },
    /// Seeded fuzz campaign over generated structures.
    Fuzz {
        /// `identity`, `functor`, or `adjunction`.
        #[arg(long)]
        target: Target,
        /// `rational` or a prime modulus.
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: u64,
        /// Inject one coefficient perturbation per case and require the
        /// checker to catch it.
        #[arg(long)]
        mutate: bool,
        /// Directory of saved cases; replayed before fresh generation,
        /// shrunk witnesses are written here.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AdjunctionCmd {
    /// Underlying module vs rationalization.
    Pairing {
        file: PathBuf,
        #[arg(long)]
        pairing: String,
        #[arg(long)]
        comodule: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        co_k_max: usize,
    },
    /// Contratensor product vs colinear hom.
    Contratensor {
        file: PathBuf,
        #[arg(long)]
        contramodule: String,
        #[arg(long)]
        cdspace: String,
        #[arg(long)]
        comodule: String,
    },
}

fn read(file: &PathBuf) -> Result<String> {
    std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))
}

fn parse_field(s: &str) -> Result<ainfty::scalar::Field> {
    if s == "rational" {
        return Ok(ainfty::scalar::Field::Rational);
    }
    let p: u64 = s.parse().with_context(|| format!("bad field `{}`", s))?;
    Ok(ainfty::scalar::Field::prime(p)?)
}

fn dispatch(cmd: &Cmd) -> Result<RunResult> {
    Ok(match cmd {
        Cmd::Check { file, name, n_max } => {
            commands::cmd_check(&read(file)?, name.as_deref(), *n_max)
        }
        Cmd::Dualize { file, name } => {
            let text = read(file)?;
            // coalgebras take the graded dual; (co)modules the adjoint one
            match ainfty_cli::format::parse_structure_file(&text) {
                Ok(sf) if matches!(
                    sf.structures.get(name.as_str()),
                    Some(ainfty_cli::format::Structure::Module(_))
                        | Some(ainfty_cli::format::Structure::Comodule(_))
                ) => commands::cmd_adjoint_dualize(&text, name),
                _ => commands::cmd_dualize(&text, name),
            }
        }
        Cmd::PairCheck { file, name, n_max } => {
            commands::cmd_pair_check(&read(file)?, name, *n_max)
        }
        Cmd::Rationalize { file, pairing, module, co_k_max } => {
            commands::cmd_rationalize(&read(file)?, pairing, module, *co_k_max)
        }
        Cmd::Iota { file, pairing, comodule } => {
            commands::cmd_iota(&read(file)?, pairing, comodule)
        }
        Cmd::Contratensor { file, contramodule, cdspace } => {
            commands::cmd_contratensor(&read(file)?, contramodule, cdspace)
        }
        Cmd::Hom { file, cdspace, comodule } => {
            commands::cmd_hom(&read(file)?, cdspace, comodule)
        }
        Cmd::Adjunction { which } => match which {
            AdjunctionCmd::Pairing { file, pairing, comodule, module, co_k_max } => {
                commands::cmd_adjunction_pairing(&read(file)?, pairing, comodule, module, *co_k_max)
            }
            AdjunctionCmd::Contratensor { file, contramodule, cdspace, comodule } => {
                commands::cmd_adjunction_contratensor(&read(file)?, contramodule, cdspace, comodule)
            }
        },
        Cmd::EmCheck { file, name, n_max } => {
            commands::cmd_em_check(&read(file)?, name, *n_max)
        }
        Cmd::Free { kind, file, over, space } => {
            commands::cmd_free(&read(file)?, kind, over, space)
        }
        Cmd::Fuzz { target, field, seed, count, mutate, corpus } => fuzz_campaign(&FuzzConfig {
            target: *target,
            field: parse_field(field)?,
            seed: *seed,
            count: *count,
            mutate: *mutate,
            corpus: corpus.clone(),
        }),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let res = match dispatch(&cli.cmd) {
        Ok(r) => r,
        Err(e) => RunResult {
            body: format!("malformed: {:#}\n", e),
            exit: commands::EXIT_MALFORMED,
        },
    };
    print!("{}", res.body);
    let _ = std::io::stdout().flush();
    eprintln!("elapsed: {:?}", start.elapsed());
    ExitCode::from(res.exit as u8)
}
