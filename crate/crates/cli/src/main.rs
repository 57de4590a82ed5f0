//! `dualkit`: command-line front end for the workbench.
//!
//! Exit codes: 0 when the computation succeeds and its verdict holds, 1 when
//! the verdict fails or the computation itself errors, 2 on malformed
//! arguments.

mod diagrams;
mod equi;
mod idem;
mod models;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use dualkit_core::models::{EvConst, Product, SpanFin};
use serde_json::json;

use output::{render_text, usage, CliError, Outcome};

#[derive(Parser)]
#[command(name = "dualkit", version, about = "String-diagram proofs, model categories and collapse certificates")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Proof traces.
    Diagrams {
        #[command(subcommand)]
        action: DiagramsCmd,
    },
    /// Spans of finite sets.
    Span {
        #[command(subcommand)]
        action: SpanCmd,
    },
    /// The eventually-constant model.
    Evconst {
        #[command(subcommand)]
        action: EvconstCmd,
    },
    /// Idempotents and splittings.
    Idem {
        #[arg(value_enum)]
        action: idem::Action,
        #[arg(long, value_enum)]
        model: ModelName,
        /// `S/2`, `S(6)`, `S + S/3` or JSON for evconst; a size for span; `X|n` for product.
        #[arg(long)]
        object: Option<String>,
        /// Explicit `r: S → E` as JSON, instead of the standard one.
        #[arg(long)]
        r: Option<String>,
        /// Explicit `i: E → S` as JSON.
        #[arg(long)]
        i: Option<String>,
        /// The twist is this multiple of the identity.
        #[arg(long, default_value_t = 1)]
        twist: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Finite groups and collapse certificates.
    Equi {
        #[arg(value_enum)]
        action: equi::Action,
        /// Preset (trivial, c2, c3, c4, s3, d4, q8, a4) or a JSON file.
        #[arg(long)]
        group: String,
        /// Preset (trivial, sign, permutation, standard, regular, reduced-regular) or a JSON file.
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        class: Option<usize>,
        #[arg(long)]
        certificate: Option<String>,
    },
}

#[derive(Subcommand)]
enum DiagramsCmd {
    /// Replay traces and report the first failing step of each.
    #[command(group(ArgGroup::new("which").required(true).multiple(true).args(["all", "trace"])))]
    Verify {
        /// Every bundled trace.
        #[arg(long)]
        all: bool,
        /// A trace file; may repeat.
        #[arg(long)]
        trace: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SpanCmd {
    /// `g ∘ f`.
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Tensor {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Duality data of `n` and the triangle equations.
    DualCheck {
        #[arg(long)]
        n: usize,
    },
    Cofiber {
        #[arg(long, conflicts_with_all = ["shape", "sizes"])]
        morphism: Option<String>,
        /// forward or backward along the function `a → b`, `i ↦ i mod b`.
        #[arg(long, requires = "sizes")]
        shape: Option<String>,
        #[arg(long, value_delimiter = ',', requires = "shape")]
        sizes: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum EvconstCmd {
    /// `g ∘ f`.
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Biproduct {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    Cofiber {
        #[arg(long)]
        morphism: String,
    },
    /// `X ≅ (S/m ∧ X) ⊕ (S(m) ∧ X)`.
    Split {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "S")]
        object: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelName {
    Evconst,
    Span,
    /// evconst × span
    Product,
}

fn seed() -> Result<u64, CliError> {
    match std::env::var("DUALKIT_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| usage(format!("DUALKIT_SEED must be an unsigned integer, not {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Diagrams { action: DiagramsCmd::Verify { all, trace } } => diagrams::verify(all, &trace),
        Command::Span { action } => match action {
            SpanCmd::Compose { f, g } => models::span_compose(&f, &g),
            SpanCmd::Tensor { f, g } => models::span_tensor(&f, &g),
            SpanCmd::DualCheck { n } => models::span_dual_check(n),
            SpanCmd::Cofiber { morphism, shape, sizes } => {
                models::span_cofiber(morphism.as_deref(), shape.as_deref(), sizes.as_deref())
            }
        },
        Command::Evconst { action } => match action {
            EvconstCmd::Compose { f, g } => models::evconst_compose(&f, &g),
            EvconstCmd::Biproduct { x, y } => models::evconst_biproduct(&x, &y),
            EvconstCmd::Cofiber { morphism } => models::evconst_cofiber(&morphism),
            EvconstCmd::Split { m, object } => models::evconst_split(m, &object),
        },
        Command::Idem { action, model, object, r, i, twist, samples } => {
            let args = idem::Args {
                object: object.as_deref(),
                r: r.as_deref(),
                i: i.as_deref(),
                twist,
                samples,
                seed: seed()?,
            };
            match model {
                ModelName::Evconst => idem::run(&EvConst, action, &args),
                ModelName::Span => idem::run(&SpanFin, action, &args),
                ModelName::Product => idem::run(&Product::new(EvConst, SpanFin), action, &args),
            }
        }
        Command::Equi { action, group, rep, class, certificate } => equi::run(
            action,
            &equi::Args { group: &group, rep: rep.as_deref(), class, certificate: certificate.as_deref() },
        ),
    }
}

/// A closed pipe (`| head`) is not an error worth a panic.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match execute(cli.command) {
        Ok(outcome) => {
            match format {
                Format::Json => {
                    emit(&format!("{}\n", serde_json::to_string_pretty(&outcome.report).expect("serializable")))
                }
                Format::Text => emit(&outcome.text.unwrap_or_else(|| render_text(&outcome.report))),
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            match format {
                Format::Json => {
                    emit(&format!("{}\n", serde_json::to_string_pretty(&json!({ "error": msg })).expect("string")))
                }
                Format::Text => emit(&format!("error: {msg}\n")),
            }
            ExitCode::from(1)
        }
    }
}
