//! File exports: canonical JSON for graphs, tracks and the full Tveg,
//! stacked track geometry as legacy VTK polydata, and label volumes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exgraph::{ExtremumGraph, NodeId};
use crate::morse::Segmentation;
use crate::temporal::Tveg;
use crate::tracks::Track;

/// Serializes `value` with sorted keys, no whitespace, and every float
/// written as `d.ddddddddddddddddde±x` (17 significant digits), so that
/// parsing and re-serializing reproduces the same bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("exported types serialize to JSON");
    let mut out = String::new();
    write_value(&v, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                write!(out, "{u}").unwrap();
            } else if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else {
                write!(out, "{:.16e}", n.as_f64().expect("finite number")).unwrap();
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push(':');
                write_value(&map[k], out);
            }
            out.push('}');
        }
    }
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    fs::write(path, to_canonical_json(value)).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn export_tveg_json(tveg: &Tveg, path: &Path) -> Result<()> {
    write_json(tveg, path)
}

pub fn read_tveg_json(path: &Path) -> Result<Tveg> {
    read_json(path)
}

pub fn export_graph_json(graph: &ExtremumGraph, path: &Path) -> Result<()> {
    write_json(graph, path)
}

/// How tracks are stacked in the geometry export.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stacking {
    pub z_scale: f64,
    /// Offset between consecutive steps; `None` uses the domain's z extent.
    pub slab_height: Option<f64>,
    /// Also emit the max-saddle arcs of the graphs the tracks pass through.
    pub spatial_arcs: bool,
}

impl Default for Stacking {
    fn default() -> Self {
        Stacking {
            z_scale: 0.1,
            slab_height: None,
            spatial_arcs: false,
        }
    }
}

/// OR of the event codes recorded at each node.
pub fn event_codes(tveg: &Tveg) -> BTreeMap<NodeId, u32> {
    let mut codes = BTreeMap::new();
    for e in tveg.events.iter() {
        *codes.entry(e.node).or_insert(0) |= e.kind.code();
    }
    codes
}

/// Renders tracks as legacy ASCII VTK polydata. Points are the track maxima
/// (and their saddles when `spatial_arcs` is set) with `z' = z * z_scale +
/// t * slab_height`; every temporal arc is a two-point line. Point data:
/// `time`, `track_id` (smallest track through the point, -1 for saddles)
/// and `event_code`.
pub fn tracks_vtk(tracks: &[Track], tveg: &Tveg, stacking: &Stacking) -> Result<String> {
    let slab = match stacking.slab_height {
        Some(h) => h,
        None => tveg
            .graphs
            .first()
            .map_or(0.0, |g| g.grid.spacing[2] * (g.grid.dims[2] as f64 - 1.0)),
    };
    let mut owner: BTreeMap<NodeId, i64> = BTreeMap::new();
    for t in tracks {
        for &n in &t.nodes {
            owner.entry(n).or_insert(t.id as i64);
        }
    }
    let mut spatial = Vec::new();
    if stacking.spatial_arcs {
        let mut saddles = BTreeSet::new();
        for g in &tveg.graphs {
            for &(m, s) in &g.arcs {
                if owner.contains_key(&m) {
                    spatial.push((m, s));
                    saddles.insert(s);
                }
            }
        }
        for s in saddles {
            owner.insert(s, -1);
        }
    }
    let index: BTreeMap<NodeId, usize> = owner.keys().enumerate().map(|(i, &n)| (n, i)).collect();
    let codes = event_codes(tveg);

    let mut out = String::new();
    out.push_str("# vtk DataFile Version 3.0\ntveg tracks\nASCII\nDATASET POLYDATA\n");
    writeln!(out, "POINTS {} double", index.len()).unwrap();
    for &n in index.keys() {
        let p = tveg.node(n).ok_or(Error::UnknownNode(n))?.position;
        let z = p[2] * stacking.z_scale + n.time() as f64 * slab;
        writeln!(out, "{} {} {}", p[0], p[1], z).unwrap();
    }
    let mut lines: Vec<(usize, usize)> = tracks
        .iter()
        .flat_map(|t| t.arcs.iter().map(|a| (index[&a.src], index[&a.dst])))
        .collect();
    lines.extend(spatial.iter().map(|(m, s)| (index[m], index[s])));
    writeln!(out, "LINES {} {}", lines.len(), 3 * lines.len()).unwrap();
    for (a, b) in &lines {
        writeln!(out, "2 {a} {b}").unwrap();
    }
    writeln!(out, "POINT_DATA {}", index.len()).unwrap();
    let mut scalar = |name: &str, f: &dyn Fn(NodeId) -> i64| {
        writeln!(out, "SCALARS {name} int 1\nLOOKUP_TABLE default").unwrap();
        for &n in index.keys() {
            writeln!(out, "{}", f(n)).unwrap();
        }
    };
    scalar("time", &|n| n.time() as i64);
    scalar("track_id", &|n| owner[&n]);
    scalar("event_code", &|n| codes.get(&n).copied().unwrap_or(0) as i64);
    Ok(out)
}

pub fn export_tracks_geometry(tracks: &[Track], tveg: &Tveg, stacking: &Stacking, path: &Path) -> Result<()> {
    let text = tracks_vtk(tracks, tveg, stacking)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes `<stem>.raw` (little-endian `u32` labels, x fastest, each voxel
/// labelled with the vertex of its maximum) and `<stem>.json` mapping every
/// label to the maximum's node id and attributes.
pub fn export_segmentation(seg: &Segmentation, graph: &ExtremumGraph, stem: &Path) -> Result<()> {
    let raw = stem.with_extension("raw");
    let mut bytes = Vec::with_capacity(seg.labels.len() * 4);
    for &l in &seg.labels {
        bytes.extend_from_slice(&l.to_le_bytes());
    }
    fs::write(&raw, bytes).map_err(|e| Error::io(&raw, e))?;
    let by_vertex: BTreeMap<usize, _> = graph.maxima.iter().map(|m| (m.vertex, m)).collect();
    let labels: Vec<Value> = seg
        .maxima
        .iter()
        .map(|m| {
            let cp = by_vertex.get(&m.vertex);
            json!({
                "label": m.vertex,
                "id": cp.map(|c| c.id),
                "value": m.value,
                "pers": m.persistence,
                "eta": cp.map(|c| c.eta),
                "position": cp.map(|c| c.position),
            })
        })
        .collect();
    let sidecar = json!({
        "t": graph.t,
        "dims": graph.grid.dims,
        "file": raw.file_name().map(|f| f.to_string_lossy().into_owned()),
        "labels": labels,
    });
    write_json(&sidecar, &stem.with_extension("json"))
}

pub fn read_labels(path: &Path) -> Result<Vec<u32>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() % 4 != 0 {
        return Err(Error::SizeMismatch {
            expected: bytes.len() / 4 + 1,
            got: bytes.len() / 4,
        });
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}
