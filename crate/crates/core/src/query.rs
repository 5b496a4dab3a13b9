//! Temporal and spatiotemporal queries over a computed [`Tveg`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exgraph::NodeId;
use crate::temporal::{EventSets, TemporalArc, Tveg};
use crate::tracks::Track;

/// Closed axis-aligned box in world coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

impl Region {
    pub fn new(min: [f64; 3], max: [f64; 3]) -> Result<Self> {
        if (0..3).any(|a| !(min[a] <= max[a])) {
            return Err(Error::InvalidParameter(format!(
                "box min {min:?} exceeds max {max:?}"
            )));
        }
        Ok(Region { min, max })
    }

    pub fn contains(&self, p: [f64; 3]) -> bool {
        (0..3).all(|a| self.min[a] <= p[a] && p[a] <= self.max[a])
    }
}

/// One query, as accepted on the command line or in a request file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Query {
    LengthThreshold { k: usize },
    LeastDeviation { n: usize },
    Region { min: [f64; 3], max: [f64; 3], t0: usize, t1: usize },
    WindowEvents { t0: usize, t1: usize },
    Neighborhood { track: usize, hops: usize },
}

fn check_window(t0: usize, t1: usize) -> Result<()> {
    if t0 > t1 {
        return Err(Error::InvalidParameter(format!("time window [{t0},{t1}] is empty")));
    }
    Ok(())
}

/// Tracks with at least `k` nodes, order preserved.
pub fn tracks_longer_than(tracks: &[Track], k: usize) -> Vec<&Track> {
    tracks.iter().filter(|t| t.len() >= k).collect()
}

/// Mean Euclidean step length of a track; 0 for single-node tracks.
pub fn deviation(track: &Track, tveg: &Tveg) -> Result<f64> {
    if track.len() < 2 {
        return Ok(0.0);
    }
    let pos = |id: NodeId| tveg.node(id).map(|c| c.position).ok_or(Error::UnknownNode(id));
    let mut total = 0.0;
    for w in track.nodes.windows(2) {
        let (a, b) = (pos(w[0])?, pos(w[1])?);
        total += (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt();
    }
    Ok(total / (track.len() - 1) as f64)
}

/// The `n` tracks with the smallest deviation, ties by track id.
pub fn least_deviation<'a>(tracks: &'a [Track], tveg: &Tveg, n: usize) -> Result<Vec<(&'a Track, f64)>> {
    let mut scored = tracks
        .iter()
        .map(|t| deviation(t, tveg).map(|d| (t, d)))
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.id.cmp(&b.0.id)));
    scored.truncate(n);
    Ok(scored)
}

/// Nodes and arcs selected by a region query.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub maxima: Vec<NodeId>,
    pub saddles: Vec<NodeId>,
    pub spatial_arcs: Vec<(NodeId, NodeId)>,
    pub temporal_arcs: Vec<TemporalArc>,
}

/// Maxima inside `region` with `t0 <= t <= t1`, their spatial arcs and
/// saddles, and the temporal arcs between selected maxima.
pub fn select_in_region(tveg: &Tveg, region: &Region, t0: usize, t1: usize) -> Result<Selection> {
    check_window(t0, t1)?;
    let mut sel = Selection::default();
    let mut saddles = BTreeSet::new();
    for g in tveg.graphs.iter().filter(|g| (t0..=t1).contains(&g.t)) {
        let inside: BTreeSet<NodeId> = g
            .maxima
            .iter()
            .filter(|m| region.contains(m.position))
            .map(|m| m.id)
            .collect();
        for &(m, s) in &g.arcs {
            if inside.contains(&m) {
                sel.spatial_arcs.push((m, s));
                saddles.insert(s);
            }
        }
        sel.maxima.extend(inside);
    }
    sel.saddles = saddles.into_iter().collect();
    let chosen: BTreeSet<NodeId> = sel.maxima.iter().copied().collect();
    sel.temporal_arcs = tveg
        .arcs()
        .filter(|a| chosen.contains(&a.src) && chosen.contains(&a.dst))
        .copied()
        .collect();
    Ok(sel)
}

/// Events with time in `[t0, t1]`.
pub fn events_in_window(tveg: &Tveg, t0: usize, t1: usize) -> Result<EventSets> {
    check_window(t0, t1)?;
    Ok(tveg.events.window(t0, t1))
}

/// Per track node, the nodes within `hops` graph steps in that node's
/// extremum graph, keyed by time and sorted.
pub fn track_neighborhood(tveg: &Tveg, track: &Track, hops: usize) -> Result<BTreeMap<usize, Vec<NodeId>>> {
    let mut out = BTreeMap::new();
    for &start in &track.nodes {
        let g = tveg
            .graph(start.time())
            .filter(|g| g.node(start).is_some())
            .ok_or(Error::UnknownNode(start))?;
        let mut adj: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for &(m, s) in &g.arcs {
            adj.entry(m).or_default().push(s);
            adj.entry(s).or_default().push(m);
        }
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((v, d)) = queue.pop_front() {
            if d == hops {
                continue;
            }
            for &w in adj.get(&v).map_or(&[][..], |x| x.as_slice()) {
                if seen.insert(w) {
                    queue.push_back((w, d + 1));
                }
            }
        }
        out.insert(start.time(), seen.into_iter().collect());
    }
    Ok(out)
}
