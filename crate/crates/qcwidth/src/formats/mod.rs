//! File formats. The extension picks the format: `.json` for JSON, anything
//! else for `.qc`.

pub mod edgelist;
pub mod json;
pub mod qc;

use std::fs;
use std::path::Path;

use qcwidth_core::Circuit;

use crate::error::{Error, Result};

pub use edgelist::parse_edge_list;
pub use json::{parse_circuit_json, parse_diagram_json, write_circuit_json, write_diagram_json, OrderingJson};
pub use qc::{parse_qc, write_qc};

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_circuit(path: &Path) -> Result<Circuit> {
    let text = read_text(path)?;
    if is_json(path) {
        parse_circuit_json(&text)
    } else {
        parse_qc(&text)
    }
}

pub fn write_circuit(path: &Path, c: &Circuit) -> Result<()> {
    let text = if is_json(path) { write_circuit_json(c) } else { write_qc(c) };
    write_text(path, &text)
}
