//! Report plumbing: run manifests, table rendering, and CSV/JSON emission.
//!
//! Every subcommand builds one [`Report`]: a human table at display
//! precision, full-precision structured rows, and the manifest describing the
//! resolved run. Structured output is byte-reproducible for identical
//! manifests except for the `timestamp_unix` field.

use fronthaul_core::error::{Error, Result};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// Run-identification block embedded in every emitted report.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Fully resolved configuration, serialized before the run.
    pub config: serde_json::Value,
    pub seed: u64,
    pub tool_version: &'static str,
    /// Wall-clock time of the run; the only non-reproducible field.
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: serde_json::Value, seed: u64) -> RunManifest {
        RunManifest {
            subcommand: subcommand.to_string(),
            config,
            seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// One finished subcommand run, ready to print or write.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub manifest: RunManifest,
    /// Column names shared by the display table and the CSV output.
    pub columns: Vec<String>,
    /// Display-precision cells (ties rounded away from zero).
    pub display_rows: Vec<Vec<String>>,
    /// Full-precision cells for CSV; same shape as `display_rows`.
    pub csv_rows: Vec<Vec<String>>,
    pub footnotes: Vec<String>,
}

impl Report {
    pub fn new(manifest: RunManifest, columns: &[&str]) -> Report {
        Report {
            manifest,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            display_rows: Vec::new(),
            csv_rows: Vec::new(),
            footnotes: Vec::new(),
        }
    }

    /// Push a row where display and CSV cells coincide.
    pub fn push_row(&mut self, cells: Vec<String>) {
        self.display_rows.push(cells.clone());
        self.csv_rows.push(cells);
    }

    /// Push a row with distinct display-precision and full-precision cells.
    pub fn push_row_full(&mut self, display: Vec<String>, csv: Vec<String>) {
        debug_assert_eq!(display.len(), csv.len());
        self.display_rows.push(display);
        self.csv_rows.push(csv);
    }

    pub fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.display_rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let fmt_row = |cells: &[String], widths: &[usize]| {
            let mut line = String::new();
            for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(&format!("{cell:>w$}", w = w));
            }
            line.trim_end().to_string()
        };
        out.push_str(&fmt_row(&self.columns, &widths));
        out.push('\n');
        let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for row in &self.display_rows {
            out.push_str(&fmt_row(row, &widths));
            out.push('\n');
        }
        for note in &self.footnotes {
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> Result<String> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.csv_rows {
            wtr.write_record(row).map_err(csv_err)?;
        }
        let bytes = wtr.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv: {e}")))
    }

    pub fn render_summary(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Config(format!("json: {e}")))
    }

    /// Write `<subcommand>.csv` and `<subcommand>_summary.json` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
        let base = self.manifest.subcommand.replace('-', "_");
        let write = |name: String, content: String| -> Result<()> {
            let path = dir.join(name);
            let mut f = std::fs::File::create(&path)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
            f.write_all(content.as_bytes())
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
            Ok(())
        };
        write(format!("{base}.csv"), self.render_csv()?)?;
        write(format!("{base}_summary.json"), self.render_summary()?)?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let manifest = RunManifest::new("gain-table", serde_json::json!({"k": 1}), 7);
        let mut r = Report::new(manifest, &["a", "rate_mbps"]);
        r.push_row_full(
            vec!["x".into(), "75.6".into()],
            vec!["x".into(), "378/5".into()],
        );
        r.footnotes.push("* note".into());
        r
    }

    #[test]
    fn table_renders_all_cells() {
        let t = sample().render_table();
        assert!(t.contains("rate_mbps"));
        assert!(t.contains("75.6"));
        assert!(t.contains("* note"));
    }

    #[test]
    fn csv_uses_full_precision() {
        let c = sample().render_csv().unwrap();
        assert!(c.contains("378/5"));
        assert!(!c.contains("75.6"));
    }

    #[test]
    fn summary_embeds_manifest() {
        let s = sample().render_summary().unwrap();
        assert!(s.contains("\"subcommand\": \"gain-table\""));
        assert!(s.contains("\"seed\": 7"));
        assert!(s.contains("timestamp_unix"));
    }

    #[test]
    fn write_to_creates_both_files() {
        let dir = std::env::temp_dir().join(format!("fh-report-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        sample().write_to(&dir).unwrap();
        assert!(dir.join("gain_table.csv").exists());
        assert!(dir.join("gain_table_summary.json").exists());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
