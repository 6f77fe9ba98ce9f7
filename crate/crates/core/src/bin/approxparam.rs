use std::path::PathBuf;
use std::process::ExitCode;

use approx_param::pipeline::{self, RunConfig};
use approx_param::report::summary_line;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "approxparam", version, about = "Approximate parametrization of epsilon-rational plane curves")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, default_value_t = 0.01, env = "APPROXPARAM_EPSILON")]
    epsilon: f64,
    #[arg(long, global = true, default_value_t = 0, env = "APPROXPARAM_SEED")]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-3, env = "APPROXPARAM_STOP_EPS")]
    stop_eps: f64,
    #[arg(long, global = true, default_value_t = 200, env = "APPROXPARAM_TAU_CAP")]
    tau_cap: u32,
    #[arg(long, global = true, default_value_t = 1000, env = "APPROXPARAM_SAMPLES")]
    samples: usize,
    #[arg(long, global = true, default_value = "out", env = "APPROXPARAM_OUT")]
    out: PathBuf,
    #[arg(long, global = true, env = "APPROXPARAM_ZERO_PERTURBATION")]
    zero_perturbation: bool,
    /// Comma-separated directions for directional bounds and fallbacks.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true, env = "APPROXPARAM_H0")]
    h0: Vec<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the manifest and curve files of a random family.
    GenFamily,
    /// Parametrize a curve file; writes `<id>.param` and `<id>.fbar.curve`.
    Parametrize { curve: PathBuf },
    /// Bounds, lattice scan and evidence for a curve and its parametrization.
    Analyze { curve: PathBuf, param: PathBuf },
    /// Family generation plus parametrization and analysis of every member.
    Suite,
}

impl Opts {
    fn config(self) -> RunConfig {
        let mut cfg = RunConfig {
            epsilon: self.epsilon,
            seed: self.seed,
            stop_eps: self.stop_eps,
            tau_cap: self.tau_cap,
            samples: self.samples,
            out: self.out,
            zero_perturbation: self.zero_perturbation,
            ..RunConfig::default()
        };
        if !self.h0.is_empty() {
            cfg.h0 = self.h0;
        }
        cfg
    }
}

fn run(cmd: Cmd, cfg: &RunConfig) -> approx_param::Result<()> {
    match cmd {
        Cmd::GenFamily => {
            let members = pipeline::gen_family(cfg)?;
            println!("eps-rational: {}/{}", pipeline::rational_count(&members), members.len());
        }
        Cmd::Parametrize { curve } => {
            let o = pipeline::cmd_parametrize(&curve, cfg)?;
            println!("{}", pipeline::residual_line(&o));
        }
        Cmd::Analyze { curve, param } => {
            let r = pipeline::cmd_analyze(&curve, &param, cfg)?;
            println!("{}", summary_line(&r));
        }
        Cmd::Suite => {
            let s = pipeline::run_suite(cfg)?;
            for line in pipeline::suite_summary(&s) {
                println!("{line}");
            }
            for row in s.rows.iter().filter(|r| r.error.is_some()) {
                println!("{}: error {}", row.i, row.error.as_deref().unwrap_or(""));
            }
            println!("eps-rational: {}/{}", pipeline::rational_count(&s.members), s.members.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which collides with the
    // not-eps-rational status.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let cfg = cli.opts.config();
    match run(cli.cmd, &cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(pipeline::exit_code(&e) as u8)
        }
    }
}
