//! ASCII OFF reading and writing, plus the `.weights` sidecar format.
//!
//! A sidecar has one edge per line, `u v w` with `u < v`; `#` starts a
//! comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::Mesh;

pub type WeightTable = BTreeMap<(usize, usize), f64>;

/// Coordinates and polygons as read, before validation.
pub type RawMesh = (Vec<[f64; 3]>, Vec<Vec<usize>>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MissingWeight {
    #[default]
    Unit,
    Euclidean,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WeightPolicy {
    Euclidean,
    Unit,
    Sidecar { table: WeightTable, missing: MissingWeight },
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

/// Parses OFF text into coordinates and polygons without validating the
/// complex.
pub fn parse_off(text: &str) -> Result<RawMesh> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file, expected 'OFF'"))?;
    if header[0] != "OFF" {
        return Err(parse_err(hline, format!("expected 'OFF' header, found '{}'", header[0])));
    }
    let (cline, counts) = if header.len() > 1 {
        (hline, header[1..].to_vec())
    } else {
        lines.next().ok_or_else(|| parse_err(hline + 1, "missing counts line"))?
    };
    if counts.len() < 2 {
        return Err(parse_err(cline, "counts line needs vertex and face counts"));
    }
    let nv: usize = num(counts[0], cline, "vertex count")?;
    let nf: usize = num(counts[1], cline, "face count")?;

    let mut coords = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, toks) =
            lines.next().ok_or_else(|| parse_err(cline, format!("expected {nv} vertices, file ended early")))?;
        if toks.len() < 3 {
            return Err(parse_err(l, "vertex needs 3 coordinates"));
        }
        let mut c = [0.0f64; 3];
        for (k, t) in toks[..3].iter().enumerate() {
            c[k] = num(t, l, "coordinate")?;
            if !c[k].is_finite() {
                return Err(parse_err(l, "coordinate is not finite"));
            }
        }
        coords.push(c);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, toks) =
            lines.next().ok_or_else(|| parse_err(cline, format!("expected {nf} faces, file ended early")))?;
        let n: usize = num(toks[0], l, "face size")?;
        if toks.len() < n + 1 {
            return Err(parse_err(l, format!("face declares {n} vertices, found {}", toks.len() - 1)));
        }
        let mut poly = Vec::with_capacity(n);
        for t in &toks[1..=n] {
            let v: usize = num(t, l, "vertex index")?;
            if v >= nv {
                return Err(parse_err(l, format!("vertex index {v} out of range (have {nv})")));
            }
            poly.push(v);
        }
        faces.push(poly);
    }
    if let Some((l, _)) = lines.next() {
        return Err(parse_err(l, "unexpected content after the last face"));
    }
    Ok((coords, faces))
}

pub fn load_off(text: &str, policy: &WeightPolicy) -> Result<Mesh> {
    let (coords, faces) = parse_off(text)?;
    let mesh = Mesh::from_polygons(coords, faces)?;
    apply_policy(mesh, policy)
}

pub fn apply_policy(mesh: Mesh, policy: &WeightPolicy) -> Result<Mesh> {
    match policy {
        WeightPolicy::Unit => Ok(mesh.with_unit_weights()),
        WeightPolicy::Euclidean => Ok(mesh.with_euclidean_weights()),
        WeightPolicy::Sidecar { table, missing } => {
            let mut w = match missing {
                MissingWeight::Unit => vec![1.0; mesh.num_edges()],
                MissingWeight::Euclidean => mesh.euclidean_weights(),
            };
            for (&(u, v), &x) in table {
                let e = mesh
                    .edge_between(u, v)
                    .ok_or_else(|| Error::Input(format!("weights file names ({u}, {v}), not a mesh edge")))?;
                w[e] = x;
            }
            mesh.with_weights(w)
        }
    }
}

pub fn read_off(path: &Path, policy: &WeightPolicy) -> Result<Mesh> {
    load_off(&std::fs::read_to_string(path)?, policy)
}

/// OFF text with coordinates written to 17 significant digits.
pub fn save_off(mesh: &Mesh) -> String {
    let mut s = String::new();
    writeln!(s, "OFF").unwrap();
    writeln!(s, "{} {} {}", mesh.num_vertices(), mesh.num_faces(), mesh.num_edges()).unwrap();
    for c in mesh.coords() {
        writeln!(s, "{:.16e} {:.16e} {:.16e}", c[0], c[1], c[2]).unwrap();
    }
    for f in mesh.faces() {
        write!(s, "{}", f.len()).unwrap();
        for v in f {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn parse_weights(text: &str) -> Result<WeightTable> {
    let mut table = WeightTable::new();
    for (l, toks) in content_lines(text) {
        if toks.len() != 3 {
            return Err(parse_err(l, "expected 'u v w'"));
        }
        let u: usize = num(toks[0], l, "vertex index")?;
        let v: usize = num(toks[1], l, "vertex index")?;
        let w: f64 = num(toks[2], l, "weight")?;
        if u == v {
            return Err(parse_err(l, "edge endpoints must differ"));
        }
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidWeight { u, v, weight: w });
        }
        if table.insert((u.min(v), u.max(v)), w).is_some() {
            return Err(parse_err(l, format!("edge ({u}, {v}) listed twice")));
        }
    }
    Ok(table)
}

pub fn save_weights(mesh: &Mesh) -> String {
    let mut rows: Vec<(usize, usize, f64)> = (0..mesh.num_edges())
        .map(|e| {
            let [u, v] = mesh.edge(e);
            (u, v, mesh.weight(e))
        })
        .collect();
    rows.sort_by_key(|a| (a.0, a.1));
    let mut s = String::new();
    for (u, v, w) in rows {
        writeln!(s, "{u} {v} {w:.16e}").unwrap();
    }
    s
}
