//! Report builders for each subcommand.

use crate::report::{Report, RunManifest};
use fronthaul_core::config::{Bandwidth, CellConfig};
use fronthaul_core::dimensioning::{
    self, capacity_table, gain_ratio, peak_rate_dl, peak_rate_ul, Direction, Split,
};
use fronthaul_core::emulator::{
    run_downlink, run_uplink, sweep_load, BandwidthReport, SessionConfig, SplitMode, TransportKind,
};
use fronthaul_core::error::{Error, Result};
use fronthaul_core::placement::{max_fronthaul_distance, residual_oneway_budget, LatencyBudget};
use fronthaul_core::rat::{format_dp, to_f64, Rat};
use fronthaul_core::traffic::{mux_gain, TrafficModel, TrafficProfile};

fn json_of<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

fn f64_cell(v: f64) -> String {
    // shortest round-trippable representation for structured output
    format!("{v}")
}

/// Demand table for every split and direction at one offered load.
pub fn cmd_dimension(cell: &CellConfig, load_mbps: Option<Rat>, seed: u64) -> Result<Report> {
    cell.validate()?;
    let manifest = RunManifest::new(
        "dimension",
        serde_json::json!({"cell": json_of(cell), "load_mbps": load_mbps.map(to_f64)}),
        seed,
    );
    let mut report = Report::new(
        manifest,
        &["split", "direction", "offered_mbps", "rate_mbps", "load_dependent"],
    );
    let mut any_unavailable = false;
    for split in [Split::S8, Split::S71, Split::S72, Split::S73] {
        for direction in [Direction::Dl, Direction::Ul] {
            let peak = match direction {
                Direction::Dl => peak_rate_dl(cell)?,
                Direction::Ul => peak_rate_ul(cell, None)?,
            };
            let offered = load_mbps.unwrap_or(peak);
            match dimensioning::demand(split, direction, cell, offered) {
                Ok(d) => {
                    report.push_row_full(
                        vec![
                            split.to_string(),
                            direction.to_string(),
                            format_dp(offered, 1),
                            format_dp(d.rate_mbps, 1),
                            d.load_dependent.to_string(),
                        ],
                        vec![
                            split.to_string(),
                            direction.to_string(),
                            offered.to_string(),
                            d.rate_mbps.to_string(),
                            d.load_dependent.to_string(),
                        ],
                    );
                }
                Err(Error::Config(_)) => {
                    // split undefined for this cell (e.g. no CPRI line rate
                    // for the 100 MHz extrapolation)
                    any_unavailable = true;
                    report.push_row(vec![
                        split.to_string(),
                        direction.to_string(),
                        format_dp(offered, 1),
                        "n/a".into(),
                        "-".into(),
                    ]);
                }
                Err(e) => return Err(e),
            }
        }
    }
    if any_unavailable {
        report
            .footnotes
            .push("n/a: split not defined for this cell bandwidth".into());
    }
    Ok(report)
}

/// The 16-cell bidirectional 7.3-over-7.2 efficiency table.
pub fn cmd_gain_table(seed: u64) -> Result<Report> {
    let manifest = RunManifest::new("gain-table", serde_json::json!({}), seed);
    let mut report = Report::new(manifest, &["direction", "o_m", "s_bw", "gain"]);
    for o_m in [2u32, 4, 6, 8] {
        let g = gain_ratio(Direction::Dl, o_m, 0)?;
        report.push_row_full(
            vec!["DL".into(), o_m.to_string(), "-".into(), format_dp(g, 1)],
            vec!["DL".into(), o_m.to_string(), "-".into(), g.to_string()],
        );
    }
    for s_bw in [4u32, 5, 8] {
        for o_m in [2u32, 4, 6, 8] {
            let g = gain_ratio(Direction::Ul, o_m, s_bw)?;
            report.push_row_full(
                vec!["UL".into(), o_m.to_string(), s_bw.to_string(), format_dp(g, 1)],
                vec!["UL".into(), o_m.to_string(), s_bw.to_string(), g.to_string()],
            );
        }
    }
    Ok(report)
}

/// The FS-I..FS-VII required-capacity table across LTE bandwidths.
pub fn cmd_capacity_table(seed: u64) -> Result<Report> {
    let manifest = RunManifest::new("capacity-table", serde_json::json!({}), seed);
    let mut report = Report::new(manifest, &["split", "bandwidth_mhz", "rate_mbps"]);
    let mut has_typo = false;
    for cell in capacity_table() {
        let mut display = format_dp(cell.rate_mbps, 1);
        if cell.source_typo {
            has_typo = true;
            display.push('*');
        }
        report.push_row_full(
            vec![cell.row.label().into(), cell.bandwidth.to_string(), display],
            vec![
                cell.row.label().into(),
                cell.bandwidth.to_string(),
                cell.rate_mbps.to_string(),
            ],
        );
    }
    if has_typo {
        report.footnotes.push(
            "* formula value; the published table prints 1140.0 here, which does not \
             follow from the stated formula (treated as a typo)"
                .into(),
        );
    }
    Ok(report)
}

/// Peak goodput table: selected layer/modulation rows across bandwidths.
pub fn cmd_peak_table(seed: u64) -> Result<Report> {
    let manifest = RunManifest::new("peak-table", serde_json::json!({}), seed);
    let mut report = Report::new(
        manifest,
        &["direction", "layers", "o_m", "bandwidth_mhz", "rate_mbps"],
    );
    for (layers, o_m) in [(1u32, 6u32), (2, 6), (4, 8), (8, 8)] {
        for bw in Bandwidth::ALL {
            let cfg = CellConfig::new(bw).with_layers(layers).with_o_m(o_m);
            let rate = peak_rate_dl(&cfg)?;
            report.push_row_full(
                vec![
                    "DL".into(),
                    layers.to_string(),
                    o_m.to_string(),
                    bw.to_string(),
                    format_dp(rate, 1),
                ],
                vec![
                    "DL".into(),
                    layers.to_string(),
                    o_m.to_string(),
                    bw.to_string(),
                    rate.to_string(),
                ],
            );
        }
    }
    for bw in Bandwidth::ALL {
        let cfg = CellConfig::new(bw);
        let rate = peak_rate_ul(&cfg, None)?;
        report.push_row_full(
            vec!["UL".into(), "1".into(), "6".into(), bw.to_string(), format_dp(rate, 1)],
            vec!["UL".into(), "1".into(), "6".into(), bw.to_string(), rate.to_string()],
        );
    }
    Ok(report)
}

/// Latency-budget feasibility and maximum RU-DU distance.
pub fn cmd_placement(budget: &LatencyBudget, extra_fixed_us: Rat, seed: u64) -> Result<Report> {
    let residual = residual_oneway_budget(budget, extra_fixed_us)?;
    let distance = max_fronthaul_distance(residual, budget.propagation_us_per_km)?;
    let manifest = RunManifest::new(
        "placement",
        serde_json::json!({
            "harq_rtt_ms": to_f64(budget.harq_rtt_ms),
            "dl_processing_ms": to_f64(budget.dl_processing_ms),
            "ul_processing_ms": to_f64(budget.ul_processing_ms),
            "propagation_us_per_km": to_f64(budget.propagation_us_per_km),
            "oneway_fraction": to_f64(budget.oneway_fraction),
            "extra_fixed_us": to_f64(extra_fixed_us),
        }),
        seed,
    );
    let mut report = Report::new(manifest, &["metric", "value"]);
    report.push_row_full(
        vec!["residual_oneway_us".into(), format_dp(residual, 1)],
        vec!["residual_oneway_us".into(), residual.to_string()],
    );
    report.push_row_full(
        vec!["max_distance_km".into(), format_dp(distance, 1)],
        vec!["max_distance_km".into(), distance.to_string()],
    );
    Ok(report)
}

fn push_session_row(report: &mut Report, r: &BandwidthReport) {
    let dir = r.direction.to_string();
    let mode = match r.split_mode {
        SplitMode::S73 => "S7.3",
        SplitMode::S72Cbr => "S7.2-CBR",
    };
    let lat = |v: Option<f64>| v.map(|x| format!("{x:.0}")).unwrap_or_else(|| "-".into());
    let lat_full = |v: Option<f64>| v.map(f64_cell).unwrap_or_else(|| "-".into());
    report.push_row_full(
        vec![
            dir.clone(),
            mode.into(),
            format!("{:.1}", r.offered_load_mbps),
            format!("{:.2}", r.achieved_mbps),
            format!("{:.2}", r.payload_mbps),
            format!("{:.4}", r.overhead_fraction),
            r.frames_received.to_string(),
            r.frames_lost.to_string(),
            r.crc_failures.to_string(),
            lat(r.decode_latency_p50_us),
            lat(r.decode_latency_p95_us),
            lat(r.decode_latency_p99_us),
        ],
        vec![
            dir,
            mode.into(),
            f64_cell(r.offered_load_mbps),
            f64_cell(r.achieved_mbps),
            f64_cell(r.payload_mbps),
            f64_cell(r.overhead_fraction),
            r.frames_received.to_string(),
            r.frames_lost.to_string(),
            r.crc_failures.to_string(),
            lat_full(r.decode_latency_p50_us),
            lat_full(r.decode_latency_p95_us),
            lat_full(r.decode_latency_p99_us),
        ],
    );
}

const SESSION_COLUMNS: [&str; 12] = [
    "direction",
    "mode",
    "offered_mbps",
    "achieved_mbps",
    "payload_mbps",
    "overhead",
    "frames",
    "lost",
    "crc_failures",
    "p50_us",
    "p95_us",
    "p99_us",
];

/// Run one emulated session (or a load sweep) and report its meters.
pub fn cmd_emulate(
    session: &SessionConfig,
    direction: Direction,
    sweep: Option<&[f64]>,
) -> Result<Report> {
    let manifest = RunManifest::new(
        "emulate",
        serde_json::json!({
            "session": json_of(session),
            "direction": json_of(&direction),
            "sweep": sweep,
        }),
        session.seed,
    );
    let mut report = Report::new(manifest, &SESSION_COLUMNS);
    match sweep {
        Some(fractions) => {
            for point in sweep_load(session, fractions)? {
                push_session_row(&mut report, &point.dl);
                push_session_row(&mut report, &point.ul);
            }
        }
        None => {
            let r = match direction {
                Direction::Dl => run_downlink(session)?,
                Direction::Ul => run_uplink(session)?,
            };
            push_session_row(&mut report, &r);
        }
    }
    Ok(report)
}

/// Monte Carlo statistical-multiplexing gain plus the demand histogram.
pub fn cmd_mux(
    n_cells: u32,
    profile: &TrafficProfile,
    percentile: f64,
    trials: u64,
) -> Result<Report> {
    let r = mux_gain(n_cells, profile, percentile, trials)?;
    let manifest = RunManifest::new(
        "mux",
        serde_json::json!({
            "n_cells": n_cells,
            "profile": json_of(profile),
            "percentile": percentile,
            "trials": trials,
        }),
        profile.seed,
    );
    let mut report = Report::new(manifest, &["metric", "value"]);
    let mut push = |k: &str, display: String, full: String| {
        report.push_row_full(vec![k.into(), display], vec![k.into(), full]);
    };
    push(
        "percentile_demand_mbps",
        format!("{:.1}", r.percentile_demand_mbps),
        f64_cell(r.percentile_demand_mbps),
    );
    push(
        "sum_peaks_mbps",
        format!("{:.1}", r.sum_peaks_mbps),
        f64_cell(r.sum_peaks_mbps),
    );
    push("mux_gain", format!("{:.3}", r.mux_gain), f64_cell(r.mux_gain));
    push("trials", r.trials.to_string(), r.trials.to_string());
    for (edge, count) in &r.histogram {
        push(
            "hist_le_mbps",
            format!("{edge:.1} -> {count}"),
            format!("{};{count}", f64_cell(*edge)),
        );
    }
    if let Some(w) = &r.precision_warning {
        report.footnotes.push(format!("warning: {w}"));
    }
    Ok(report)
}

/// Parse the traffic model name used by the `mux` subcommand.
pub fn parse_traffic_model(name: &str) -> Result<TrafficModel> {
    match name {
        "constant" => Ok(TrafficModel::Constant),
        "onoff" => Ok(TrafficModel::OnOff),
        "uniform" => Ok(TrafficModel::PerTtiUniform),
        other => Err(Error::Config(format!(
            "unknown traffic model {other:?} (expected constant, onoff or uniform)"
        ))),
    }
}

/// Parse the CBR/load-dependent mode name used by `emulate`.
pub fn parse_split_mode(name: &str) -> Result<SplitMode> {
    match name {
        "s73" => Ok(SplitMode::S73),
        "s72cbr" => Ok(SplitMode::S72Cbr),
        other => Err(Error::Config(format!(
            "unknown emulation mode {other:?} (expected s73 or s72cbr)"
        ))),
    }
}

pub fn parse_transport(name: &str) -> Result<TransportKind> {
    match name {
        "inproc" => Ok(TransportKind::InProcess),
        "udp" => Ok(TransportKind::Udp),
        other => Err(Error::Config(format!(
            "unknown transport {other:?} (expected inproc or udp)"
        ))),
    }
}

pub fn parse_direction(name: &str) -> Result<Direction> {
    match name {
        "dl" => Ok(Direction::Dl),
        "ul" => Ok(Direction::Ul),
        other => Err(Error::Config(format!(
            "unknown direction {other:?} (expected dl or ul)"
        ))),
    }
}

/// Offered load in Mbps from either an absolute value or a peak fraction.
pub fn resolve_load(
    cell: &CellConfig,
    direction: Direction,
    load_mbps: Option<f64>,
    load_fraction: Option<f64>,
) -> Result<f64> {
    if load_mbps.is_some() && load_fraction.is_some() {
        return Err(Error::Config(
            "give either --load-mbps or --load-fraction, not both".into(),
        ));
    }
    let peak = match direction {
        Direction::Dl => to_f64(peak_rate_dl(cell)?),
        Direction::Ul => to_f64(peak_rate_ul(cell, None)?),
    };
    if let Some(m) = load_mbps {
        return Ok(m);
    }
    let frac = load_fraction.unwrap_or(1.0);
    if !(0.0..=1.0).contains(&frac) {
        return Err(Error::Config("load fraction must lie in [0, 1]".into()));
    }
    Ok(peak * frac)
}
