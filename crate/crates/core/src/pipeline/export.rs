use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::Value;

use super::ReportBundle;
use crate::error::{Error, Result};
use crate::netgraph::export::{round_sig, write_dot, write_edges_csv, write_graphml, write_nodes_csv};
use crate::ngram::csv_field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportFormats {
    pub json: bool,
    pub csv: bool,
    pub graphs: bool,
}

impl Default for ExportFormats {
    fn default() -> Self {
        ExportFormats {
            json: true,
            csv: true,
            graphs: true,
        }
    }
}

/// Pretty JSON with keys in sorted order and every float rounded to 6
/// significant digits.
pub fn to_canonical_json(bundle: &ReportBundle) -> Result<String> {
    let mut value = serde_json::to_value(bundle)?;
    round_floats(&mut value);
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().map(round_sig).and_then(serde_json::Number::from_f64) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Writes `report.json` and, per scope and pair mode with a graph,
/// `<scope>_<mode>_{pairs,edges,nodes}.csv`, `.dot` and `.graphml`.
/// Returns the written paths in write order.
pub fn export_bundle(bundle: &ReportBundle, dir: impl AsRef<Path>, formats: ExportFormats) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    if formats.json {
        let path = dir.join("report.json");
        fs::write(&path, to_canonical_json(bundle)?).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    for scope in &bundle.scopes {
        for net in &scope.networks {
            let Some(g) = &net.graph else { continue };
            let stem = format!("{}_{}", scope.scope, net.mode);
            if formats.csv {
                written.push(write_file(dir, &format!("{stem}_pairs.csv"), |out| {
                    writeln!(out, "word1,word2,count")?;
                    for p in &g.pairs {
                        writeln!(out, "{},{},{}", csv_field(&p.word1), csv_field(&p.word2), p.count)?;
                    }
                    Ok(())
                })?);
                written.push(write_file(dir, &format!("{stem}_edges.csv"), |out| {
                    write_edges_csv(&g.edges, out)
                })?);
                written.push(write_file(dir, &format!("{stem}_nodes.csv"), |out| {
                    write_nodes_csv(&g.nodes, out)
                })?);
            }
            if formats.graphs {
                written.push(write_file(dir, &format!("{stem}.dot"), |out| {
                    write_dot(&stem, &g.nodes, &g.edges, out)
                })?);
                written.push(write_file(dir, &format!("{stem}.graphml"), |out| {
                    write_graphml(&stem, &g.nodes, &g.edges, out)
                })?);
            }
        }
    }
    Ok(written)
}

fn write_file(
    dir: &Path,
    name: &str,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<PathBuf> {
    let path = dir.join(name);
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    let mut out = BufWriter::new(file);
    body(&mut out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Reads a bundle written by `export_bundle`.
pub fn load_bundle(path: impl AsRef<Path>) -> Result<ReportBundle> {
    let path = path.as_ref();
    let s = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&s)?)
}
