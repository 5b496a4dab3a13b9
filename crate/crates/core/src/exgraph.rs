//! Per-time-step extremum graph: simplified maxima, one saddle per adjacent
//! maximum pair, and the max-saddle arcs between them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{superlevel_mask, FieldSeries, Grid, ScalarField3D};
use crate::morse::{self, CriticalKind, CriticalPoint, Segmentation};

/// Globally unique node id: time step in the high 32 bits, position within
/// the step's graph in the low 32 bits (maxima first, then saddles).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl NodeId {
    pub fn new(t: usize, local: usize) -> Self {
        debug_assert!(local <= u32::MAX as usize && t <= u32::MAX as usize);
        NodeId(((t as u64) << 32) | local as u64)
    }

    pub fn time(self) -> usize {
        (self.0 >> 32) as usize
    }

    pub fn local(self) -> usize {
        (self.0 & 0xffff_ffff) as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.time(), self.local())
    }
}

/// Persistence threshold, either in function units or relative to the scalar range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    Absolute(f64),
    Fraction(f64),
}

impl Threshold {
    pub fn resolve(self, (lo, hi): (f64, f64)) -> f64 {
        match self {
            Threshold::Absolute(v) => v,
            Threshold::Fraction(r) => r * (hi - lo),
        }
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::Absolute(0.0)
    }
}

/// `"0.05r"` is 5% of the range, `"3.5"` is absolute.
impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, frac) = match s.strip_suffix('r') {
            Some(n) => (n, true),
            None => (s, false),
        };
        let v: f64 = num
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad threshold {s:?}")))?;
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "threshold must be a finite non-negative number, got {s:?}"
            )));
        }
        Ok(if frac {
            Threshold::Fraction(v)
        } else {
            Threshold::Absolute(v)
        })
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Absolute(v) => write!(f, "{v}"),
            Threshold::Fraction(v) => write!(f, "{v}r"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremumGraph {
    pub t: usize,
    pub grid: Grid,
    /// Absolute persistence threshold the graph was simplified with.
    pub theta: f64,
    pub maxima: Vec<CriticalPoint>,
    pub saddles: Vec<CriticalPoint>,
    /// `(maximum, saddle)` pairs, sorted.
    pub arcs: Vec<(NodeId, NodeId)>,
}

impl ExtremumGraph {
    pub fn node(&self, id: NodeId) -> Option<&CriticalPoint> {
        if id.time() != self.t {
            return None;
        }
        let local = id.local();
        if local < self.maxima.len() {
            Some(&self.maxima[local])
        } else {
            self.saddles.get(local - self.maxima.len())
        }
    }

    pub fn maximum(&self, id: NodeId) -> Option<&CriticalPoint> {
        self.node(id).filter(|c| c.index == CriticalKind::Maximum)
    }

    /// Graph neighbors of a node (saddles of a maximum, maxima of a saddle).
    pub fn neighbors(&self, id: NodeId) -> Vec<NodeId> {
        self.arcs
            .iter()
            .filter_map(|&(m, s)| {
                if m == id {
                    Some(s)
                } else if s == id {
                    Some(m)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.maxima.len() + self.saddles.len()
    }

    /// Fills `geom` of every maximum with its descending manifold clipped to `f >= isovalue`.
    pub fn clip_geometry(&mut self, field: &ScalarField3D, isovalue: f64) {
        let mask = superlevel_mask(field, isovalue);
        for m in &mut self.maxima {
            m.geom = Some(
                m.dscmfold
                    .iter()
                    .copied()
                    .filter(|&v| mask[v as usize])
                    .collect(),
            );
        }
    }
}

/// Sum of `|f(m) - f(s)|` over the saddles adjacent to maximum `max_id`.
pub fn neighborhood_contribution(g: &ExtremumGraph, max_id: NodeId) -> Result<f64> {
    let m = g.maximum(max_id).ok_or(Error::UnknownNode(max_id))?;
    Ok(g
        .neighbors(max_id)
        .into_iter()
        .map(|s| (m.value - g.node(s).expect("arc endpoint exists").value).abs())
        .sum())
}

/// Builds the graph from a simplified segmentation.
pub fn from_segmentation(field: &ScalarField3D, seg: &Segmentation, theta: f64) -> ExtremumGraph {
    let t = field.time_index;
    let grid = field.grid;
    let n_max = seg.maxima.len();
    let max_local: BTreeMap<usize, usize> = seg
        .maxima
        .iter()
        .enumerate()
        .map(|(i, m)| (m.vertex, i))
        .collect();
    let mut manifolds = seg.manifolds();

    let mut maxima: Vec<CriticalPoint> = seg
        .maxima
        .iter()
        .enumerate()
        .map(|(i, m)| CriticalPoint {
            id: NodeId::new(t, i),
            index: CriticalKind::Maximum,
            vertex: m.vertex,
            position: grid.world(m.vertex),
            value: m.value,
            pers: m.persistence,
            eta: 0.0,
            dscmfold: manifolds.remove(&m.vertex).unwrap_or_default(),
            geom: None,
            t,
        })
        .collect();

    let mut saddles = Vec::with_capacity(seg.saddles.len());
    let mut arcs = Vec::with_capacity(2 * seg.saddles.len());
    for (j, s) in seg.saddles.iter().enumerate() {
        let sid = NodeId::new(t, n_max + j);
        let paired = seg
            .maxima
            .iter()
            .find(|m| m.pair_saddle == Some(j))
            .map(|m| m.persistence);
        let mut eta = 0.0;
        for mv in [s.maxima.0, s.maxima.1] {
            let mi = max_local[&mv];
            let d = (maxima[mi].value - s.value).abs();
            maxima[mi].eta += d;
            eta += d;
            arcs.push((maxima[mi].id, sid));
        }
        saddles.push(CriticalPoint {
            id: sid,
            index: CriticalKind::Saddle,
            vertex: s.vertex,
            position: grid.world(s.vertex),
            value: s.value,
            // saddles closing a loop in the region graph have no maximum partner
            pers: paired.unwrap_or(0.0),
            eta,
            dscmfold: Vec::new(),
            geom: None,
            t,
        });
    }
    arcs.sort_unstable();
    ExtremumGraph {
        t,
        grid,
        theta,
        maxima,
        saddles,
        arcs,
    }
}

/// Segments, simplifies with absolute threshold `theta`, and assembles the graph.
pub fn build_with_segmentation(field: &ScalarField3D, theta: f64) -> (ExtremumGraph, Segmentation) {
    let seg = morse::simplify(morse::segment(field), theta);
    (from_segmentation(field, &seg, theta), seg)
}

pub fn build_extremum_graph(field: &ScalarField3D, theta: f64) -> Result<ExtremumGraph> {
    if !(theta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "persistence threshold must be >= 0, got {theta}"
        )));
    }
    Ok(build_with_segmentation(field, theta).0)
}

/// Builds every step's graph with one threshold resolved against the
/// series-wide scalar range. Steps run in parallel; output is ordered by time.
pub fn build_series(series: &FieldSeries, threshold: Threshold) -> Result<Vec<ExtremumGraph>> {
    let theta = threshold.resolve(series.range());
    if !(theta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "persistence threshold must be >= 0, got {theta}"
        )));
    }
    Ok(series
        .fields()
        .par_iter()
        .map(|f| build_with_segmentation(f, theta).0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid;

    fn line_graph(theta: f64) -> ExtremumGraph {
        let f = ScalarField3D::line(&[1.0, 3.0, 2.0, 4.0, 1.0]).unwrap();
        build_extremum_graph(&f, theta).unwrap()
    }

    #[test]
    fn node_id_packs_time_and_local() {
        let id = NodeId::new(17, 5);
        assert_eq!((id.time(), id.local()), (17, 5));
        assert!(NodeId::new(1, 1000) < NodeId::new(2, 0));
    }

    #[test]
    fn threshold_parsing() {
        assert_eq!("0.05r".parse::<Threshold>().unwrap(), Threshold::Fraction(0.05));
        assert_eq!("2.5".parse::<Threshold>().unwrap(), Threshold::Absolute(2.5));
        assert!("-1".parse::<Threshold>().is_err());
        assert!("abc".parse::<Threshold>().is_err());
        assert_eq!(Threshold::Fraction(0.5).resolve((2.0, 6.0)), 2.0);
    }

    #[test]
    fn line_graph_unsimplified() {
        let g = line_graph(0.0);
        assert_eq!(g.maxima.len(), 2);
        assert_eq!(g.maxima[0].vertex, 1);
        assert_eq!(g.maxima[1].vertex, 3);
        assert_eq!(g.saddles.len(), 1);
        assert_eq!(g.saddles[0].vertex, 2);
        let (m1, m3, s) = (g.maxima[0].id, g.maxima[1].id, g.saddles[0].id);
        assert_eq!(g.arcs, vec![(m1, s), (m3, s)]);
        assert_eq!(neighborhood_contribution(&g, m1).unwrap(), 1.0);
        assert_eq!(neighborhood_contribution(&g, m3).unwrap(), 2.0);
        assert_eq!(g.maxima[0].eta, 1.0);
        assert_eq!(g.maxima[1].eta, 2.0);
        assert_eq!(g.saddles[0].pers, 1.0);
        assert!(matches!(
            neighborhood_contribution(&g, s),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn line_graph_simplified() {
        let g = line_graph(1.5);
        assert_eq!(g.maxima.len(), 1);
        assert_eq!(g.maxima[0].vertex, 3);
        assert!(g.saddles.is_empty() && g.arcs.is_empty());
        assert_eq!(neighborhood_contribution(&g, g.maxima[0].id).unwrap(), 0.0);
    }

    #[test]
    fn constant_field_graph() {
        let grid = Grid::new([3, 3, 3], [0.0; 3], [1.0; 3]).unwrap();
        let f = ScalarField3D::new(grid, vec![1.0; 27], 4).unwrap();
        let g = build_extremum_graph(&f, 0.0).unwrap();
        assert_eq!(g.maxima.len(), 1);
        assert!(g.saddles.is_empty() && g.arcs.is_empty());
        assert_eq!(g.maxima[0].id, NodeId::new(4, 0));
        assert_eq!(g.maxima[0].dscmfold.len(), 27);
    }

    #[test]
    fn negative_theta_rejected() {
        let f = ScalarField3D::line(&[1.0, 2.0]).unwrap();
        assert!(build_extremum_graph(&f, -1.0).is_err());
    }
}
