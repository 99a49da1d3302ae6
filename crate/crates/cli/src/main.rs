//! `fronthaul` - command-line surface for the fronthaul dimensioning,
//! placement, PHY emulation, and multiplexing toolkit.
//!
//! Exit codes: 0 success, 2 configuration error, 3 infeasibility or capacity
//! error, 4 transport/session error.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fronthaul_core::config::{Bandwidth, CellConfig};
use fronthaul_core::emulator::SessionConfig;
use fronthaul_core::error::{Error, Result};
use fronthaul_core::placement::LatencyBudget;
use fronthaul_core::rat::parse_decimal;
use fronthaul_core::traffic::TrafficProfile;
use report::Report;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fronthaul",
    version,
    about = "Cloud-RAN functional-split fronthaul dimensioning and emulation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cell configuration file (plain `key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for emulation and Monte Carlo subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Directory receiving `<subcommand>.csv` and `<subcommand>_summary.json`.
    #[arg(long, global = true, env = "FRONTHAUL_OUT")]
    out: Option<PathBuf>,

    /// Stdout rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable table at conventional display precision.
    Table,
    /// CSV at full precision.
    Csv,
    /// JSON summary with the embedded run manifest.
    Summary,
}

/// Cell parameter overrides; values not given fall back to the config file
/// and then to the 20 MHz defaults.
#[derive(Args, Clone)]
struct CellArgs {
    /// Cell bandwidth in MHz (1.4, 3, 5, 10, 15, 20, 100).
    #[arg(long)]
    bw: Option<String>,

    /// Modulation order in bits per symbol (2, 4, 6, 8).
    #[arg(long)]
    om: Option<u32>,

    /// MIMO layer count (1, 2, 4, 8).
    #[arg(long)]
    layers: Option<u32>,

    /// Antenna count.
    #[arg(long)]
    ant: Option<u32>,

    /// Control-overhead fraction in [0, 1), as a decimal string.
    #[arg(long)]
    gamma: Option<String>,

    /// Soft-bit bitwidth in [2, 16].
    #[arg(long)]
    s_bw: Option<u32>,

    /// Additive E1 overhead in Mbps, as a decimal string.
    #[arg(long)]
    e1_mbps: Option<String>,
}

impl CellArgs {
    fn resolve(&self, config: Option<&Path>) -> Result<CellConfig> {
        let mut cfg = match (config, &self.bw) {
            (Some(path), _) => {
                let mut c = CellConfig::from_file(path)?;
                if let Some(bw) = &self.bw {
                    let bw = Bandwidth::from_mhz_str(bw)?;
                    c.bandwidth = bw;
                    c.n_sc = bw.n_sc();
                    c.n_rb = bw.n_rb();
                }
                c
            }
            (None, Some(bw)) => CellConfig::new(Bandwidth::from_mhz_str(bw)?),
            (None, None) => CellConfig::new(Bandwidth::Mhz20),
        };
        if let Some(om) = self.om {
            cfg.o_m = om;
        }
        if let Some(layers) = self.layers {
            cfg.mimo_layers = layers;
        }
        if let Some(ant) = self.ant {
            cfg.n_ant = ant;
        }
        if let Some(gamma) = &self.gamma {
            cfg.gamma = parse_decimal(gamma)?;
        }
        if let Some(s_bw) = self.s_bw {
            cfg.s_bw = s_bw;
        }
        if let Some(e1) = &self.e1_mbps {
            cfg.e1_mbps = parse_decimal(e1)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fronthaul demand for every split and direction at one offered load.
    Dimension {
        #[command(flatten)]
        cell: CellArgs,
        /// Offered load in Mbps (decimal; default: the directional peak).
        #[arg(long)]
        load_mbps: Option<String>,
    },
    /// Bandwidth-efficiency gains of the bidirectional 7.3 split over 7.2.
    GainTable,
    /// Required fronthaul capacity, FS-I through FS-VII, per LTE bandwidth.
    CapacityTable,
    /// Peak user data rate (goodput) for selected layer/modulation rows.
    PeakTable,
    /// HARQ latency budget feasibility and maximum RU-DU distance.
    Placement {
        /// HARQ round-trip time in ms.
        #[arg(long, default_value = "8")]
        harq_rtt_ms: String,
        /// Downlink processing time in ms.
        #[arg(long, default_value = "1")]
        dl_ms: String,
        /// Uplink processing time in ms.
        #[arg(long, default_value = "2")]
        ul_ms: String,
        /// Fiber propagation delay in microseconds per km.
        #[arg(long, default_value = "5")]
        prop_us_per_km: String,
        /// Fraction of the post-processing remainder granted to one leg.
        #[arg(long, default_value = "0.1")]
        oneway_fraction: String,
        /// Additional fixed one-way delay in microseconds.
        #[arg(long, default_value = "0")]
        extra_us: String,
    },
    /// Run an emulated fronthaul session (or load sweep) and meter it.
    Emulate {
        #[command(flatten)]
        cell: CellArgs,
        /// Link direction: dl or ul.
        #[arg(long, default_value = "dl")]
        direction: String,
        /// Framing mode: s73 (load-dependent) or s72cbr (constant grid).
        #[arg(long, default_value = "s73")]
        mode: String,
        /// Offered load in Mbps.
        #[arg(long)]
        load_mbps: Option<f64>,
        /// Offered load as a fraction of the directional peak.
        #[arg(long)]
        load_fraction: Option<f64>,
        /// Session length in TTIs (1 ms each).
        #[arg(long, default_value_t = 100)]
        duration_ms: u32,
        /// Channel SNR in dB for the uplink PHY chain (inf = noiseless).
        #[arg(long, default_value_t = f64::INFINITY)]
        snr_db: f64,
        /// Transport backend: inproc or udp.
        #[arg(long, default_value = "inproc")]
        transport: String,
        /// DU-side decode worker threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Comma-separated load fractions; runs DL and UL at each point.
        #[arg(long)]
        sweep: Option<String>,
        /// Pace TTIs against the wall clock instead of virtual time.
        #[arg(long)]
        realtime: bool,
    },
    /// Monte Carlo statistical-multiplexing gain over aggregated cells.
    Mux {
        /// Number of aggregated cells.
        #[arg(long, default_value_t = 10)]
        cells: u32,
        /// Traffic model: constant, onoff or uniform.
        #[arg(long, default_value = "onoff")]
        model: String,
        /// Mean cell-load fraction.
        #[arg(long, default_value_t = 0.5)]
        activity: f64,
        /// Per-cell peak load in Mbps.
        #[arg(long, default_value_t = 100.0)]
        peak_mbps: f64,
        /// Dimensioning percentile in (0, 100).
        #[arg(long, default_value_t = 95.0)]
        percentile: f64,
        /// Monte Carlo TTIs.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    let config_path = cli.config.as_deref();
    match &cli.command {
        Command::Dimension { cell, load_mbps } => {
            let cfg = cell.resolve(config_path)?;
            let load = load_mbps.as_deref().map(parse_decimal).transpose()?;
            commands::cmd_dimension(&cfg, load, cli.seed)
        }
        Command::GainTable => commands::cmd_gain_table(cli.seed),
        Command::CapacityTable => commands::cmd_capacity_table(cli.seed),
        Command::PeakTable => commands::cmd_peak_table(cli.seed),
        Command::Placement {
            harq_rtt_ms,
            dl_ms,
            ul_ms,
            prop_us_per_km,
            oneway_fraction,
            extra_us,
        } => {
            let budget = LatencyBudget {
                harq_rtt_ms: parse_decimal(harq_rtt_ms)?,
                dl_processing_ms: parse_decimal(dl_ms)?,
                ul_processing_ms: parse_decimal(ul_ms)?,
                propagation_us_per_km: parse_decimal(prop_us_per_km)?,
                oneway_fraction: parse_decimal(oneway_fraction)?,
            };
            commands::cmd_placement(&budget, parse_decimal(extra_us)?, cli.seed)
        }
        Command::Emulate {
            cell,
            direction,
            mode,
            load_mbps,
            load_fraction,
            duration_ms,
            snr_db,
            transport,
            workers,
            sweep,
            realtime,
        } => {
            let cfg = cell.resolve(config_path)?;
            let direction = commands::parse_direction(direction)?;
            let mut session = SessionConfig::new(cfg);
            session.split_mode = commands::parse_split_mode(mode)?;
            session.duration_ms = *duration_ms;
            session.snr_db = *snr_db;
            session.transport = commands::parse_transport(transport)?;
            session.seed = cli.seed;
            session.decode_workers = *workers;
            session.realtime_pacing = *realtime;
            let sweep_fractions = sweep
                .as_deref()
                .map(|s| {
                    s.split(',')
                        .map(|p| {
                            p.trim().parse::<f64>().map_err(|_| {
                                Error::Config(format!("bad sweep fraction {p:?}"))
                            })
                        })
                        .collect::<Result<Vec<f64>>>()
                })
                .transpose()?;
            if sweep_fractions.is_none() {
                session.offered_load_mbps =
                    commands::resolve_load(&session.cell, direction, *load_mbps, *load_fraction)?;
            }
            commands::cmd_emulate(&session, direction, sweep_fractions.as_deref())
        }
        Command::Mux {
            cells,
            model,
            activity,
            peak_mbps,
            percentile,
            trials,
        } => {
            let profile = TrafficProfile {
                model: commands::parse_traffic_model(model)?,
                activity: *activity,
                peak_mbps: *peak_mbps,
                seed: cli.seed,
            };
            commands::cmd_mux(*cells, &profile, *percentile, *trials)
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    match cli.format {
        Format::Table => print!("{}", report.render_table()),
        Format::Csv => print!("{}", report.render_csv()?),
        Format::Summary => println!("{}", report.render_summary()?),
    }
    if let Some(dir) = &cli.out {
        report.write_to(dir)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|report| emit(&cli, &report)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
