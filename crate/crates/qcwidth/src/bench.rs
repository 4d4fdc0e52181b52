//! `qcwidth bench`: one table row per circuit file in a directory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qcwidth_core::zx::circuit_to_zx;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formats::read_circuit;
use crate::pipeline::{qubit_counts, run_degadget, run_pathwidth, Options};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Tsv,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub circuit: String,
    pub n: Option<usize>,
    pub h: Option<usize>,
    pub initial: Option<usize>,
    pub degadget: Option<usize>,
    pub pathwidth: Option<usize>,
    /// Failures of this file, one per stage.
    pub errors: Vec<String>,
}

pub const COLUMNS: [&str; 6] = ["Circuit", "n", "h", "initial", "Degadgetization", "Pathwidth"];

/// Circuit files of `dir` (`.qc` and `.json`), sorted by name.
pub fn circuit_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for e in std::fs::read_dir(dir).map_err(io)? {
        let p = e.map_err(io)?.path();
        let ext = p.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        if p.is_file() && matches!(ext.as_deref(), Some("qc" | "json")) {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}

pub fn bench_file(path: &Path, opts: &Options) -> BenchRow {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut row = BenchRow {
        circuit: name,
        n: None,
        h: None,
        initial: None,
        degadget: None,
        pathwidth: None,
        errors: Vec::new(),
    };
    let c = match read_circuit(path) {
        Ok(c) => c,
        Err(e) => {
            row.errors.push(format!("parse: {e}"));
            return row;
        }
    };
    match qubit_counts(&c) {
        Ok((n, h)) => {
            row.n = Some(n);
            row.h = Some(h);
            row.initial = Some(n + h);
        }
        Err(e) => row.errors.push(format!("gadget form: {e}")),
    }
    let mut warnings = Vec::new();
    match run_degadget(&c, opts, &mut warnings) {
        Ok(r) => row.degadget = Some(r.circuit.num_qubits),
        Err(e) => row.errors.push(format!("degadget: {e}")),
    }
    match circuit_to_zx(&c, &[]).map_err(Error::from).and_then(|d| run_pathwidth(&d, opts, &mut warnings)) {
        Ok(r) => row.pathwidth = Some(r.circuit.num_qubits),
        Err(e) => row.errors.push(format!("pathwidth: {e}")),
    }
    row
}

/// Runs every file in parallel; rows come back in file-name order.
pub fn bench_dir(dir: &Path, opts: &Options) -> Result<Vec<BenchRow>> {
    let files = circuit_files(dir)?;
    Ok(files.par_iter().map(|p| bench_file(p, opts)).collect())
}

pub fn render(rows: &[BenchRow], format: TableFormat) -> String {
    let cell = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut s = String::new();
    match format {
        TableFormat::Tsv => {
            s.push_str(&COLUMNS.join("\t"));
            s.push('\n');
        }
        TableFormat::Markdown => {
            let _ = writeln!(s, "| {} |", COLUMNS.join(" | "));
            s.push_str("|---|---:|---:|---:|---:|---:|\n");
        }
    }
    for r in rows {
        let cells = [
            r.circuit.clone(),
            cell(r.n),
            cell(r.h),
            cell(r.initial),
            cell(r.degadget),
            cell(r.pathwidth),
        ];
        match format {
            TableFormat::Tsv => {
                s.push_str(&cells.join("\t"));
                s.push('\n');
            }
            TableFormat::Markdown => {
                let _ = writeln!(s, "| {} |", cells.join(" | "));
            }
        }
    }
    s
}
