//! `qmss` — command-line front end for the multi-secret sharing simulator.
//!
//! Subcommands: `demo` (the bundled four-participant scenario), `run`
//! (config-driven scenarios with scripted cheaters), `validate-msp`
//! (exhaustive span-program condition checking), and `noise-sweep`
//! (fidelity-vs-noise CSV generation).
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 abort (cheaters broke authorization), 3 invalid span program,
//! 4 resource cap exceeded, 64 usage/config errors. Data goes to stdout,
//! diagnostics to stderr.

mod config;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use config::load_config;
use qmss_core::demo;
use qmss_core::noise_analysis::{self, NoiseError, NoiseScenario};
use qmss_core::protocol::{run_scenario, ProtocolError, ProtocolTranscript};
use qmss_core::qudit_sim::channel::ChannelKind;
use qmss_core::qudit_sim::{SimError, MAX_DENSITY_DIM};

const EXIT_OK: u8 = 0;
const EXIT_VERIFICATION: u8 = 1;
const EXIT_ABORT: u8 = 2;
const EXIT_INVALID_MSP: u8 = 3;
const EXIT_RESOURCE_CAP: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "qmss",
    version,
    about = "Multi-secret sharing over qudits: shares, cheat identification, \
             quantum recovery, and noise analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bundled four-participant scenario for both secrets.
    Demo {
        /// Seed for measurement sampling (default 7; the bundled overrides
        /// pin everything that affects verdicts). Falls back to QMSS_SEED.
        #[arg(long)]
        seed: Option<u64>,
        /// Emit both transcripts as JSON instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// Execute a scenario config and emit its transcript as JSON.
    Run {
        /// Path to a scenario JSON file.
        config: PathBuf,
        /// Write the transcript here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config's seed. Falls back to QMSS_SEED.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exhaustively check both span-program conditions of a config's MSP.
    ValidateMsp {
        /// Path to a scenario JSON file.
        config: PathBuf,
    },
    /// Emit a fidelity-vs-noise CSV for one channel kind.
    NoiseSweep {
        /// Channel kind: df, dpf, or ad.
        #[arg(long)]
        kind: String,
        /// Prime qudit dimension.
        #[arg(long)]
        d: usize,
        /// Total wire count (coalition size), at least 2.
        #[arg(long)]
        t: usize,
        /// Number of evenly spaced noise values in [0, 1], at least 2.
        #[arg(long, default_value_t = 11)]
        mu_steps: usize,
        /// Add the density-matrix column and enforce formula agreement.
        #[arg(long)]
        simulate: bool,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let code = match cli.command {
        Command::Demo { seed, json } => cmd_demo(seed, json),
        Command::Run { config, out, seed } => cmd_run(&config, out.as_deref(), seed),
        Command::ValidateMsp { config } => cmd_validate_msp(&config),
        Command::NoiseSweep {
            kind,
            d,
            t,
            mu_steps,
            simulate,
            out,
        } => cmd_noise_sweep(&kind, d, t, mu_steps, simulate, out.as_deref()),
    };
    ExitCode::from(code)
}

/// Write a full data payload to stdout. A consumer that stopped reading
/// early (broken pipe) is not an error; any other stdout failure is.
fn emit(text: &str) -> bool {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => true,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => true,
        Err(e) => {
            eprintln!("error: stdout: {e}");
            false
        }
    }
}

/// --seed flag if given, else QMSS_SEED, else None.
fn resolve_seed(flag: Option<u64>) -> Result<Option<u64>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("QMSS_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| format!("QMSS_SEED must be an unsigned integer, got '{text}'")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("QMSS_SEED: {e}")),
    }
}

fn usage_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

/// Exit code for a protocol-level failure, per the global contract.
fn protocol_exit(e: &ProtocolError) -> u8 {
    match e {
        ProtocolError::InvalidMsp(_) => EXIT_INVALID_MSP,
        ProtocolError::Sim(SimError::DimensionCap { .. }) => EXIT_RESOURCE_CAP,
        _ => EXIT_USAGE,
    }
}

fn render_verdicts(transcript: &ProtocolTranscript) -> String {
    let verdicts = &transcript.cheat_report.verdicts;
    if verdicts.values().all(|v| v == "honest") {
        "verdicts all honest".to_string()
    } else {
        verdicts
            .iter()
            .map(|(p, v)| format!("{p} {v}"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn cmd_demo(seed: Option<u64>, json: bool) -> u8 {
    let seed = match resolve_seed(seed) {
        Ok(choice) => choice.unwrap_or(demo::DEFAULT_SEED),
        Err(message) => return usage_error(message),
    };
    let cfg = match demo::dealer_config_with_seed(seed) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(e),
    };
    let coalition1 = match demo::first_secret_coalition() {
        Ok(set) => set,
        Err(e) => return usage_error(e),
    };
    let no_behaviors = BTreeMap::new();
    let first = match run_scenario(&cfg, 1, &coalition1, &no_behaviors) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return protocol_exit(&e);
        }
    };
    let second = match run_scenario(&cfg, 2, &cfg.msp.universe(), &no_behaviors) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return protocol_exit(&e);
        }
    };

    let text = if json {
        let doc = serde_json::json!({ "first": first, "second": second });
        match serde_json::to_string_pretty(&doc) {
            Ok(text) => text + "\n",
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_VERIFICATION;
            }
        }
    } else {
        render_demo_summary(&first, &second)
    };
    if !emit(&text) {
        return EXIT_VERIFICATION;
    }

    let verified =
        first.hash_check == Some(true) && second.hash_check == Some(true);
    if verified {
        EXIT_OK
    } else {
        eprintln!("error: a recovery failed hash verification");
        EXIT_VERIFICATION
    }
}

fn render_demo_summary(first: &ProtocolTranscript, second: &ProtocolTranscript) -> String {
    use std::fmt::Write;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "bundled scenario over Z_{}: {} participants, {} secrets",
        first.modulus,
        first.issued_shadows.len(),
        first.commitments.len()
    );
    let _ = writeln!(text, "shares: {:?}", first.issued_shares);
    let _ = writeln!(text, "shadow pairs:");
    for shadow in &first.issued_shadows {
        let _ = writeln!(
            text,
            "  {}: {:?} / {:?}",
            shadow.participant, shadow.first, shadow.second
        );
    }
    let _ = writeln!(text, "commitments:");
    for (i, digest) in first.commitments.iter().enumerate() {
        let _ = writeln!(text, "  H{} = {digest}", i + 1);
    }
    for (run, transcript) in [(1, first), (2, second)] {
        let _ = writeln!(
            text,
            "run {run}: coalition {{{}}}, {}",
            transcript.coalition.join(", "),
            render_verdicts(transcript)
        );
        match (transcript.recovered(), transcript.hash_check) {
            (Some(value), Some(ok)) => {
                let _ = writeln!(
                    text,
                    "recovered s{run} = {value} ({})",
                    if ok { "hash ok" } else { "hash mismatch" }
                );
            }
            _ => {
                let _ = writeln!(text, "run {run} aborted");
            }
        }
    }
    text
}

fn cmd_run(config_path: &std::path::Path, out: Option<&std::path::Path>, seed: Option<u64>) -> u8 {
    let parsed = match load_config(config_path) {
        Ok(parsed) => parsed,
        Err(e) => return usage_error(e),
    };
    let mut scenario = match parsed.into_scenario() {
        Ok(scenario) => scenario,
        Err(e) => return usage_error(format!("{}: {e}", config_path.display())),
    };
    match resolve_seed(seed) {
        Ok(Some(s)) => scenario.dealer.seed = s,
        Ok(None) => {}
        Err(message) => return usage_error(message),
    }
    let transcript = match run_scenario(
        &scenario.dealer,
        scenario.target_secret,
        &scenario.authorized,
        &scenario.behaviors,
    ) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return protocol_exit(&e);
        }
    };
    let rendered = match serde_json::to_string_pretty(&transcript) {
        Ok(text) => text,
        Err(e) => return usage_error(e),
    };
    if let Some(path) = out {
        if let Err(e) = fs::write(path, rendered + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    } else if !emit(&(rendered + "\n")) {
        return EXIT_VERIFICATION;
    }
    if transcript.aborted {
        eprintln!(
            "aborted: cheaters broke authorization ({})",
            render_verdicts(&transcript)
        );
        return EXIT_ABORT;
    }
    if transcript.hash_check != Some(true) {
        eprintln!("verification failed: recovered value does not match the commitment");
        return EXIT_VERIFICATION;
    }
    EXIT_OK
}

fn cmd_validate_msp(config_path: &std::path::Path) -> u8 {
    let parsed = match load_config(config_path) {
        Ok(parsed) => parsed,
        Err(e) => return usage_error(e),
    };
    let scenario = match parsed.into_scenario() {
        Ok(scenario) => scenario,
        Err(e) => return usage_error(format!("{}: {e}", config_path.display())),
    };
    let report = match scenario.dealer.msp.validate() {
        Ok(report) => report,
        Err(e) => return usage_error(e),
    };
    if !emit(&format!("{report}\n")) {
        return EXIT_VERIFICATION;
    }
    if report.is_valid() {
        EXIT_OK
    } else {
        EXIT_INVALID_MSP
    }
}

fn cmd_noise_sweep(
    kind: &str,
    d: usize,
    t: usize,
    mu_steps: usize,
    simulate: bool,
    out: Option<&std::path::Path>,
) -> u8 {
    let kind: ChannelKind = match kind.parse() {
        Ok(kind) => kind,
        Err(message) => return usage_error(message),
    };
    if mu_steps < 2 {
        return usage_error(format!(
            "--mu-steps must be at least 2 (the endpoints), got {mu_steps}"
        ));
    }
    if simulate {
        let dim = (d as u128).checked_pow(t as u32);
        if dim.is_none() || dim.unwrap() > MAX_DENSITY_DIM as u128 {
            eprintln!(
                "error: d^t exceeds the density-matrix cap of {MAX_DENSITY_DIM}; \
                 drop --simulate or shrink d/t"
            );
            return EXIT_RESOURCE_CAP;
        }
    }
    let scenario = NoiseScenario {
        kind,
        d,
        t,
        mu_grid: noise_analysis::mu_grid(mu_steps),
        exponents: None,
    };
    let rows = match noise_analysis::sweep(&scenario, simulate) {
        Ok(rows) => rows,
        Err(NoiseError::Sim(SimError::DimensionCap { .. })) => {
            eprintln!("error: d^t exceeds the density-matrix cap of {MAX_DENSITY_DIM}");
            return EXIT_RESOURCE_CAP;
        }
        Err(e) => return usage_error(e),
    };
    let mut rendered = Vec::new();
    if let Err(e) = noise_analysis::write_csv(&rows, &mut rendered) {
        return usage_error(e);
    }
    if let Some(path) = out {
        if let Err(e) = fs::write(path, &rendered) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    } else if !emit(&String::from_utf8_lossy(&rendered)) {
        return EXIT_VERIFICATION;
    }
    if simulate {
        let worst = rows
            .iter()
            .filter_map(|r| r.abs_delta)
            .fold(0.0_f64, f64::max);
        if worst > 1e-9 {
            eprintln!(
                "verification failed: formula and simulation disagree by {worst:e} (> 1e-9)"
            );
            return EXIT_VERIFICATION;
        }
    }
    EXIT_OK
}
