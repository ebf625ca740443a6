//! CSV tables with a leading `# config:` comment and a gnuplot script per
//! table. Numbers use a fixed scientific format so re-runs are
//! byte-identical.

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::ScenarioConfig;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Column plotted on the x axis.
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: Vec<String>) -> Self {
        let x_label = columns.first().cloned().unwrap_or_default();
        Table {
            name: name.into(),
            columns,
            rows: Vec::new(),
            x_label,
            y_label: String::new(),
            log_x: false,
        }
    }

    pub fn labels(mut self, y_label: &str, log_x: bool) -> Self {
        self.y_label = y_label.into();
        self.log_x = log_x;
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub fn format_number(v: f64, precision: usize) -> String {
    if v == 0.0 {
        // Avoid emitting "-0" variants.
        return format!("{:.*e}", precision - 1, 0.0);
    }
    format!("{:.*e}", precision - 1, v)
}

/// Write `<dir>/<name>.csv` and `<dir>/<name>.gp`; returns the CSV path.
pub fn write_table(dir: &Path, table: &Table, config: &ScenarioConfig) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{}.csv", table.name));
    let mut file = File::create(&csv_path)?;
    writeln!(file, "# config: {}", config.to_json())?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| format_number(*v, config.output.precision)))?;
    }
    w.flush()?;
    fs::write(dir.join(format!("{}.gp", table.name)), gnuplot_script(table))?;
    Ok(csv_path)
}

fn gnuplot_script(table: &Table) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set xlabel '{}'\n", table.x_label));
    if !table.y_label.is_empty() {
        s.push_str(&format!("set ylabel '{}'\n", table.y_label));
    }
    if table.log_x {
        s.push_str("set logscale x\n");
    }
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str(&format!("set output '{}.png'\n", table.name));
    let plots: Vec<String> = (2..=table.columns.len())
        .map(|i| format!("'{}.csv' using 1:{i} with lines", table.name))
        .collect();
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    s
}
