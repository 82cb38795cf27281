//! Command-line front end for the cooperative interference channel toolkit.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use coop_ic::bounds::{sym_one_round, sym_upper};
use coop_ic::gdof::{snr_db_grid, verify_limit, GdofQuery};
use coop_ic::harness::{emit_region, fm_crosscheck, gap_sweep, gdof_curve_csv, RegionKind, SweepConfig, SweepRegime};
use coop_ic::ldc::{check_scheme, search_raw, LdcChannel, LdcOutcome, LdcScheme};
use coop_ic::{ChannelParams, Scenario};

#[derive(Parser)]
#[command(
    name = "coop-ic",
    version,
    about = "Rate regions, gap sweeps and deterministic models for the interference channel with conferencing receivers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a rate region for a scenario and print it as JSON.
    Region {
        #[arg(long)]
        scenario: PathBuf,
        /// inner, outer, cmac-inner or cmac-outer
        #[arg(long)]
        which: RegionKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized check that the outer region lies within a fixed gap of the inner region.
    Gap {
        /// weak, mixed, strong, cmac or any
        #[arg(long)]
        regime: SweepRegime,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        gap_bits: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized degrees of freedom as CSV.
    Gdof {
        #[arg(long, default_value_t = 0.0)]
        alpha_min: f64,
        #[arg(long, default_value_t = 3.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 61)]
        alpha_steps: usize,
        /// One value or a comma-separated list.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        kappa: Vec<f64>,
    },
    /// Normalized symmetric capacity bound along an SNR grid, as CSV.
    GdofConverge {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        kappa: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        theta: f64,
        #[arg(long, default_value_t = 10.0)]
        snr_db_min: f64,
        #[arg(long, default_value_t = 200.0)]
        snr_db_max: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Symmetric capacity bound, one-round symmetric rate and their gap.
    Sym {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Linear deterministic model.
    Ldc {
        #[command(subcommand)]
        cmd: LdcCmd,
    },
    /// Compare the two-round region with the projection of its rate-split system.
    FmCrosscheck {
        /// weak or mixed
        #[arg(long)]
        regime: SweepRegime,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum LdcCmd {
    /// Check a scheme file against a channel.
    Check {
        /// e.g. q=3,n11=2,n12=1,n21=3,n22=3,k12=2,k21=1
        #[arg(long)]
        channel: LdcChannel,
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Exhaustive search over placements and raw one-round cooperation.
    Search {
        #[arg(long)]
        channel: LdcChannel,
        /// Defaults to q.
        #[arg(long)]
        max_bits_per_user: Option<usize>,
    },
}

fn load_scenario(path: &PathBuf) -> Result<ChannelParams> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let scenario: Scenario = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(scenario.to_params()?)
}

fn write_or_print(w: &mut impl Write, out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(writeln!(w, "{text}")?),
    }
}

fn run(cli: Cli, w: &mut impl Write) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Region { scenario, which, out } => {
            let p = load_scenario(&scenario)?;
            let region = emit_region(&p, which);
            let json = serde_json::to_string_pretty(&region.to_json())?;
            write_or_print(w, out.as_ref(), &json)?;
        }
        Cmd::Gap {
            regime,
            count,
            seed,
            gap_bits,
            tol,
            out,
        } => {
            let cfg = SweepConfig {
                tol,
                ..SweepConfig::new(regime, count, seed, gap_bits)
            };
            let report = gap_sweep(&cfg)?;
            write_or_print(w, out.as_ref(), &report.to_json())?;
            eprintln!("{}", report.summary());
            if !report.violations.is_empty() {
                return Ok(ExitCode::from(2));
            }
        }
        Cmd::Gdof {
            alpha_min,
            alpha_max,
            alpha_steps,
            kappa,
        } => {
            write!(w, "{}", gdof_curve_csv(alpha_min, alpha_max, alpha_steps, &kappa)?)?;
        }
        Cmd::GdofConverge {
            alpha,
            kappa,
            theta,
            snr_db_min,
            snr_db_max,
            steps,
        } => {
            let q = GdofQuery::new(alpha, kappa)?;
            let report = verify_limit(q, &snr_db_grid(snr_db_min, snr_db_max, steps), theta)?;
            write!(w, "{}", report.to_csv())?;
        }
        Cmd::Sym { scenario } => {
            let p = load_scenario(&scenario)?;
            let upper = sym_upper(&p)?;
            let one_round = sym_one_round(&p)?;
            writeln!(w, "c_sym_upper      {upper:.6}")?;
            writeln!(w, "r_sym_one_round  {one_round:.6}")?;
            writeln!(w, "gap              {:.6}", upper - one_round)?;
        }
        Cmd::Ldc { cmd } => match cmd {
            LdcCmd::Check { channel, scheme } => {
                let text = fs::read_to_string(&scheme).with_context(|| format!("reading {}", scheme.display()))?;
                let scheme = LdcScheme::parse(&text)?;
                match check_scheme(&channel, &scheme)? {
                    LdcOutcome::Success { rates } => {
                        writeln!(
                            w,
                            "success: R1 = {}, R2 = {}, sum = {}",
                            rates[0],
                            rates[1],
                            rates[0] + rates[1]
                        )?;
                    }
                    LdcOutcome::Failure { receiver } => {
                        writeln!(w, "failure: receiver {receiver} cannot decode its bits")?;
                        return Ok(ExitCode::FAILURE);
                    }
                }
            }
            LdcCmd::Search {
                channel,
                max_bits_per_user,
            } => {
                let r = search_raw(&channel, max_bits_per_user.unwrap_or(channel.q))?;
                writeln!(w, "sum = {}, R1 = {}, R2 = {}", r.sum, r.rates[0], r.rates[1])?;
                write!(w, "{}", r.scheme.to_text(channel.q))?;
            }
        },
        Cmd::FmCrosscheck {
            regime,
            count,
            seed,
            tol,
        } => {
            let report = fm_crosscheck(regime, count, seed, tol)?;
            for s in &report.samples {
                writeln!(
                    w,
                    "sample {:>5}: {} (excess {:.3e} / {:.3e})",
                    s.index,
                    if s.pass { "pass" } else { "FAIL" },
                    s.eliminated_over_direct,
                    s.direct_over_eliminated
                )?;
            }
            let failed = report.samples.iter().filter(|s| !s.pass).count();
            if failed > 0 {
                bail!("{failed} of {} samples failed", report.samples.len());
            }
            writeln!(w, "all {} samples pass", report.samples.len())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli, &mut stdout).and_then(|code| Ok(stdout.flush().map(|_| code)?)) {
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            Ok(ExitCode::SUCCESS)
        }
        other => other,
    }
}
