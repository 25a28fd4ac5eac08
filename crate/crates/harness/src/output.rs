use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use qpart::bounds::BoundReport;
use serde::Serialize;

pub const SCHEMA_LINE: &str = "schema=1";

pub const SWEEP_COLUMNS: [&str; 15] = [
    "experiment",
    "seed",
    "N",
    "delta",
    "beta",
    "epsilon",
    "eta",
    "trials",
    "oh_queries",
    "reflections",
    "classical_samples",
    "estimate",
    "relative_error",
    "success_rate",
    "fitted_slope",
];

pub const BOUND_COLUMNS: [&str; 5] = ["name", "inputs", "value", "side", "feasible"];

/// One aggregated row of an experiment. Costs are means over trials.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct SweepResult {
    pub experiment: String,
    pub seed: u64,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub delta: Option<f64>,
    /// `"inf"` for zero temperature.
    pub beta: Option<String>,
    pub epsilon: Option<f64>,
    pub eta: Option<f64>,
    pub trials: usize,
    pub oh_queries: f64,
    pub reflections: f64,
    pub classical_samples: f64,
    pub estimate: Option<f64>,
    pub relative_error: Option<f64>,
    pub success_rate: Option<f64>,
    pub fitted_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub name: String,
    /// `key=value` pairs joined by `;`.
    pub inputs: String,
    pub value: f64,
    pub side: String,
    pub feasible: Option<bool>,
}

impl BoundRow {
    /// The main row of a report followed by one row per detail, named
    /// `name.detail`.
    pub fn from_report(r: &BoundReport) -> Vec<BoundRow> {
        let inputs = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        let mut rows = vec![BoundRow { name: r.name.to_string(), inputs: inputs.clone(), value: r.value, side: r.side.as_str().to_string(), feasible: r.feasible }];
        for (k, v) in &r.details {
            rows.push(BoundRow { name: format!("{}.{k}", r.name), inputs: inputs.clone(), value: *v, side: r.side.as_str().to_string(), feasible: None });
        }
        rows
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    Sweep(Vec<SweepResult>),
    Bounds(Vec<BoundRow>),
}

/// Shortest round-trip form, with an exponent for very small or large values.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn num_cell(v: &Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// CSV text: the schema line, a `# generated` line, the header, the rows.
pub fn to_csv(table: &Table) -> String {
    let mut out = format!("{SCHEMA_LINE}\n# generated {}\n", timestamp());
    match table {
        Table::Sweep(rows) => {
            out.push_str(&SWEEP_COLUMNS.join(","));
            out.push('\n');
            for r in rows {
                let cells = [
                    r.experiment.clone(),
                    r.seed.to_string(),
                    cell(&r.n),
                    num_cell(&r.delta),
                    cell(&r.beta),
                    num_cell(&r.epsilon),
                    num_cell(&r.eta),
                    r.trials.to_string(),
                    num(r.oh_queries),
                    num(r.reflections),
                    num(r.classical_samples),
                    num_cell(&r.estimate),
                    num_cell(&r.relative_error),
                    num_cell(&r.success_rate),
                    num_cell(&r.fitted_slope),
                ];
                writeln!(out, "{}", cells.join(",")).expect("string write");
            }
        }
        Table::Bounds(rows) => {
            out.push_str(&BOUND_COLUMNS.join(","));
            out.push('\n');
            for r in rows {
                writeln!(out, "{},{},{},{},{}", r.name, r.inputs, num(r.value), r.side, cell(&r.feasible)).expect("string write");
            }
        }
    }
    out
}

pub fn to_json(table: &Table) -> String {
    #[derive(Serialize)]
    struct Doc<'a, T> {
        schema: u32,
        generated: u64,
        rows: &'a [T],
    }
    let text = match table {
        Table::Sweep(rows) => serde_json::to_string_pretty(&Doc { schema: 1, generated: timestamp(), rows }),
        Table::Bounds(rows) => serde_json::to_string_pretty(&Doc { schema: 1, generated: timestamp(), rows }),
    };
    text.expect("rows serialize") + "\n"
}

/// Drops the `# generated` line so two outputs can be compared.
pub fn strip_timestamp(csv: &str) -> String {
    csv.lines().filter(|l| !l.starts_with("# generated")).map(|l| format!("{l}\n")).collect()
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let row = SweepResult { experiment: "verify-z".into(), n: Some(8), beta: Some("inf".into()), trials: 3, ..Default::default() };
        let text = to_csv(&Table::Sweep(vec![row]));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "schema=1");
        assert!(lines[1].starts_with("# generated "));
        assert_eq!(lines[2].split(',').count(), 15);
        assert_eq!(lines[3], "verify-z,0,8,,inf,,,3,0.0,0.0,0.0,,,,");
        assert_eq!(strip_timestamp(&text).lines().count(), 3);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a\n").unwrap();
        write_atomic(&path, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
