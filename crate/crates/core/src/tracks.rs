//! Tracks over a [`Tveg`]: connected components of the temporal-arc graph,
//! monotone paths, and refinement by overlap of clipped regions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exgraph::{build_with_segmentation, NodeId};
use crate::field::{superlevel_mask, FieldSeries};
use crate::temporal::{TemporalArc, Tveg};
use crate::union_find::UnionFind;

/// A monotone path of temporal arcs, one node per time step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Track {
    pub id: usize,
    pub nodes: Vec<NodeId>,
    pub arcs: Vec<TemporalArc>,
}

impl Track {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn t_start(&self) -> usize {
        self.nodes[0].time()
    }

    pub fn t_end(&self) -> usize {
        self.nodes[self.nodes.len() - 1].time()
    }

    pub fn node_at(&self, t: usize) -> Option<NodeId> {
        let start = self.t_start();
        t.checked_sub(start).and_then(|i| self.nodes.get(i)).copied()
    }
}

/// A connected component of the temporal-arc graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub id: usize,
    /// Sorted by id, hence by time.
    pub nodes: Vec<NodeId>,
    pub arcs: Vec<TemporalArc>,
    pub t_start: usize,
    pub t_end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrackMode {
    Components,
    SimplePaths,
}

impl FromStr for TrackMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "components" => Ok(TrackMode::Components),
            "paths" | "simple-paths" => Ok(TrackMode::SimplePaths),
            other => Err(Error::InvalidParameter(format!(
                "unknown track mode {other:?} (expected components or paths)"
            ))),
        }
    }
}

impl fmt::Display for TrackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrackMode::Components => "components",
            TrackMode::SimplePaths => "paths",
        })
    }
}

/// Connected components over all maxima; a maximum without arcs is its own component.
pub fn components(tveg: &Tveg) -> Vec<Component> {
    let ids: Vec<NodeId> = tveg.maxima().map(|m| m.id).collect();
    let index = |id: NodeId| ids.binary_search(&id).expect("arc endpoint is a maximum");
    let mut uf = UnionFind::new(ids.len());
    for a in tveg.arcs() {
        uf.union(index(a.src), index(a.dst));
    }
    let mut groups: BTreeMap<usize, Component> = BTreeMap::new();
    for (i, &id) in ids.iter().enumerate() {
        let root = uf.find(i);
        let c = groups.entry(root).or_insert_with(|| Component {
            id: 0,
            nodes: Vec::new(),
            arcs: Vec::new(),
            t_start: id.time(),
            t_end: id.time(),
        });
        c.nodes.push(id);
        c.t_start = c.t_start.min(id.time());
        c.t_end = c.t_end.max(id.time());
    }
    for a in tveg.arcs() {
        let root = uf.find(index(a.src));
        groups.get_mut(&root).unwrap().arcs.push(*a);
    }
    let mut out: Vec<Component> = groups.into_values().collect();
    out.sort_by_key(|c| c.nodes[0]);
    for (i, c) in out.iter_mut().enumerate() {
        c.id = i;
    }
    out
}

/// Decomposes the temporal arcs of `tveg` into simple paths.
pub fn simple_paths(tveg: &Tveg) -> Vec<Track> {
    let ids: Vec<NodeId> = tveg.maxima().map(|m| m.id).collect();
    let arcs: Vec<TemporalArc> = tveg.arcs().copied().collect();
    paths_from_arcs(&ids, &arcs)
}

/// Splits a time-monotone arc set into paths so that every arc lies on
/// exactly one path and every node appears on at least one.
///
/// At a node with several outgoing arcs the path continues along the arc
/// whose target has the longest forward path (ties: lower target id); the
/// other arcs open new paths that start at the branch node. At a node with
/// several incoming arcs the path with the longest history continues (ties:
/// lower source id) and the others end there. Nodes without arcs become
/// single-node paths. Paths are ordered by their node sequence.
pub fn paths_from_arcs(nodes: &[NodeId], arcs: &[TemporalArc]) -> Vec<Track> {
    let mut ids = nodes.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let index = |id: NodeId| ids.binary_search(&id).expect("arc endpoint among nodes");
    let n = ids.len();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut in_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in arcs.iter().enumerate() {
        debug_assert_eq!(a.dst.time(), a.src.time() + 1);
        out_arcs[index(a.src)].push(k);
        in_arcs[index(a.dst)].push(k);
    }

    // Ids are time-major, so index order is a topological order.
    let mut fwd = vec![1usize; n];
    for v in (0..n).rev() {
        for &k in &out_arcs[v] {
            fwd[v] = fwd[v].max(1 + fwd[index(arcs[k].dst)]);
        }
    }
    let mut bwd = vec![1usize; n];
    for v in 0..n {
        for &k in &in_arcs[v] {
            bwd[v] = bwd[v].max(1 + bwd[index(arcs[k].src)]);
        }
    }
    let cont: Vec<Option<usize>> = (0..n)
        .map(|v| {
            out_arcs[v].iter().copied().min_by(|&a, &b| {
                let (da, db) = (arcs[a].dst, arcs[b].dst);
                fwd[index(db)].cmp(&fwd[index(da)]).then(da.cmp(&db))
            })
        })
        .collect();
    let heir: Vec<Option<usize>> = (0..n)
        .map(|v| {
            in_arcs[v].iter().copied().min_by(|&a, &b| {
                let (sa, sb) = (arcs[a].src, arcs[b].src);
                bwd[index(sb)].cmp(&bwd[index(sa)]).then(sa.cmp(&sb))
            })
        })
        .collect();

    let next = |k: usize| -> Option<usize> {
        let d = index(arcs[k].dst);
        if heir[d] == Some(k) {
            cont[d]
        } else {
            None
        }
    };
    let has_prev = |k: usize| -> bool {
        let s = index(arcs[k].src);
        cont[s] == Some(k) && heir[s].is_some()
    };

    let mut tracks = Vec::new();
    for k in 0..arcs.len() {
        if has_prev(k) {
            continue;
        }
        let mut nodes = vec![arcs[k].src];
        let mut path = Vec::new();
        let mut cur = Some(k);
        while let Some(c) = cur {
            nodes.push(arcs[c].dst);
            path.push(arcs[c]);
            cur = next(c);
        }
        tracks.push(Track {
            id: 0,
            nodes,
            arcs: path,
        });
    }
    for v in 0..n {
        if out_arcs[v].is_empty() && in_arcs[v].is_empty() {
            tracks.push(Track {
                id: 0,
                nodes: vec![ids[v]],
                arcs: Vec::new(),
            });
        }
    }
    tracks.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    for (i, t) in tracks.iter_mut().enumerate() {
        t.id = i;
    }
    tracks
}

/// Size of the intersection of two sorted voxel lists.
pub fn spatial_overlap(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Descending manifolds of every maximum clipped to `f >= isovalue`,
/// keyed by node id. Manifolds missing from `tveg` (for example after a
/// JSON round trip) are recomputed from `series` with the graph's threshold.
pub fn clipped_regions(
    tveg: &Tveg,
    series: &FieldSeries,
    isovalue: f64,
) -> Result<BTreeMap<NodeId, Vec<u32>>> {
    let mut out = BTreeMap::new();
    for g in &tveg.graphs {
        let field = series.at(g.t).ok_or_else(|| {
            Error::InconsistentTime(format!("series has no step {} of the graph", g.t))
        })?;
        if field.grid.dims != g.grid.dims {
            return Err(Error::InconsistentDims(format!(
                "graph at step {} has dims {:?}, field has {:?}",
                g.t, g.grid.dims, field.grid.dims
            )));
        }
        let mask = superlevel_mask(field, isovalue);
        let clip = |m: &[u32]| m.iter().copied().filter(|&v| mask[v as usize]).collect::<Vec<u32>>();
        if g.maxima.iter().all(|m| !m.dscmfold.is_empty()) {
            for m in &g.maxima {
                out.insert(m.id, clip(&m.dscmfold));
            }
            continue;
        }
        let (rebuilt, _) = build_with_segmentation(field, g.theta);
        if rebuilt.maxima.len() != g.maxima.len()
            || rebuilt.maxima.iter().zip(&g.maxima).any(|(a, b)| a.vertex != b.vertex)
        {
            return Err(Error::InvalidParameter(format!(
                "series does not reproduce the maxima of step {}",
                g.t
            )));
        }
        for m in &rebuilt.maxima {
            out.insert(m.id, clip(&m.dscmfold));
        }
    }
    Ok(out)
}

/// Keeps at most one outgoing arc per source, the one whose target region
/// overlaps the source region most (ties: lower score, then lower target id).
/// Arcs with zero overlap are dropped.
pub fn select_by_overlap(arcs: &[TemporalArc], regions: &BTreeMap<NodeId, Vec<u32>>) -> Vec<TemporalArc> {
    let empty = Vec::new();
    let region = |id: &NodeId| regions.get(id).unwrap_or(&empty);
    let mut by_src: BTreeMap<NodeId, Vec<(usize, TemporalArc)>> = BTreeMap::new();
    for a in arcs {
        let o = spatial_overlap(region(&a.src), region(&a.dst));
        by_src.entry(a.src).or_default().push((o, *a));
    }
    by_src
        .into_values()
        .filter_map(|cands| {
            cands
                .into_iter()
                .filter(|(o, _)| *o > 0)
                .min_by(|(oa, a), (ob, b)| {
                    ob.cmp(oa)
                        .then(a.score.total_cmp(&b.score))
                        .then(a.dst.cmp(&b.dst))
                })
                .map(|(_, a)| a)
        })
        .collect()
}

/// Overlap-refined simple paths with at least `min_len` nodes.
pub fn refine_by_overlap(
    tveg: &Tveg,
    series: &FieldSeries,
    isovalue: f64,
    min_len: usize,
) -> Result<Vec<Track>> {
    let regions = clipped_regions(tveg, series, isovalue)?;
    let arcs: Vec<TemporalArc> = tveg.arcs().copied().collect();
    let kept = select_by_overlap(&arcs, &regions);
    let ids: Vec<NodeId> = tveg.maxima().map(|m| m.id).collect();
    let mut tracks: Vec<Track> = paths_from_arcs(&ids, &kept)
        .into_iter()
        .filter(|t| t.len() >= min_len)
        .collect();
    for (i, t) in tracks.iter_mut().enumerate() {
        t.id = i;
    }
    Ok(tracks)
}

/// Groups tracks whose maxima share a saddle at some step, closed transitively
/// over all steps. Groups hold track ids, sorted, and are ordered by their
/// smallest id.
pub fn collate_by_saddle(tracks: &[Track], tveg: &Tveg) -> Vec<Vec<usize>> {
    let mut on_node: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for (i, t) in tracks.iter().enumerate() {
        for &n in &t.nodes {
            on_node.entry(n).or_default().push(i);
        }
    }
    let mut uf = UnionFind::new(tracks.len());
    for g in &tveg.graphs {
        let mut by_saddle: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
        for &(m, s) in &g.arcs {
            if let Some(ts) = on_node.get(&m) {
                by_saddle.entry(s).or_default().extend(ts);
            }
        }
        for members in by_saddle.values() {
            for w in members.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, t) in tracks.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(t.id);
    }
    let mut out: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(t: usize, l: usize) -> NodeId {
        NodeId::new(t, l)
    }

    fn arc(s: NodeId, d: NodeId) -> TemporalArc {
        TemporalArc { src: s, dst: d, score: 0.0 }
    }

    fn check_partition(nodes: &[NodeId], arcs: &[TemporalArc], tracks: &[Track]) {
        let mut used: Vec<TemporalArc> = tracks.iter().flat_map(|t| t.arcs.clone()).collect();
        used.sort_by_key(|a| (a.src, a.dst));
        let mut want = arcs.to_vec();
        want.sort_by_key(|a| (a.src, a.dst));
        assert_eq!(used, want);
        for t in tracks {
            assert_eq!(t.arcs.len() + 1, t.nodes.len());
            for (w, a) in t.nodes.windows(2).zip(&t.arcs) {
                assert_eq!((a.src, a.dst), (w[0], w[1]));
                assert_eq!(w[1].time(), w[0].time() + 1);
            }
        }
        for id in nodes {
            assert!(tracks.iter().any(|t| t.nodes.contains(id)));
        }
    }

    #[test]
    fn chain_is_one_track() {
        let nodes = [n(1, 0), n(2, 0), n(3, 0)];
        let arcs = [arc(nodes[0], nodes[1]), arc(nodes[1], nodes[2])];
        let tracks = paths_from_arcs(&nodes, &arcs);
        assert_eq!(tracks.len(), 1);
        assert_eq!(tracks[0].nodes, nodes);
        assert_eq!(tracks[0].len(), 3);
    }

    #[test]
    fn split_shares_prefix_node() {
        let (a, x, y) = (n(1, 0), n(2, 0), n(2, 1));
        let arcs = [arc(a, x), arc(a, y)];
        let tracks = paths_from_arcs(&[a, x, y], &arcs);
        assert_eq!(tracks.len(), 2);
        assert_eq!(tracks[0].nodes, vec![a, x]);
        assert_eq!(tracks[1].nodes, vec![a, y]);
    }

    #[test]
    fn split_follows_longer_branch() {
        let (a, x, y, y2) = (n(1, 0), n(2, 0), n(2, 1), n(3, 0));
        let arcs = [arc(a, x), arc(a, y), arc(y, y2)];
        let tracks = paths_from_arcs(&[a, x, y, y2], &arcs);
        check_partition(&[a, x, y, y2], &arcs, &tracks);
        assert!(tracks.iter().any(|t| t.nodes == vec![a, y, y2]));
        assert!(tracks.iter().any(|t| t.nodes == vec![a, x]));
    }

    #[test]
    fn merge_continues_longest_history() {
        let (p, a, b, m, q) = (n(1, 0), n(2, 0), n(2, 1), n(3, 0), n(4, 0));
        let arcs = [arc(p, b), arc(a, m), arc(b, m), arc(m, q)];
        let nodes = [p, a, b, m, q];
        let tracks = paths_from_arcs(&nodes, &arcs);
        check_partition(&nodes, &arcs, &tracks);
        assert!(tracks.iter().any(|t| t.nodes == vec![p, b, m, q]));
        assert!(tracks.iter().any(|t| t.nodes == vec![a, m]));
    }

    #[test]
    fn isolated_node_is_a_track() {
        let tracks = paths_from_arcs(&[n(1, 0)], &[]);
        assert_eq!(tracks.len(), 1);
        assert_eq!(tracks[0].len(), 1);
    }

    #[test]
    fn overlap_counts() {
        let ten: Vec<u32> = (0..10).collect();
        assert_eq!(spatial_overlap(&ten, &ten), 10);
        assert_eq!(spatial_overlap(&[1, 2], &[3, 4]), 0);
        assert_eq!(spatial_overlap(&[1, 2, 3], &[3, 4]), 1);
    }

    #[test]
    fn overlap_selection() {
        let (a, x, y) = (n(1, 0), n(2, 0), n(2, 1));
        let mut regions = BTreeMap::new();
        regions.insert(a, (0..10).collect::<Vec<u32>>());
        regions.insert(x, vec![0, 1, 50]);
        regions.insert(y, vec![2, 3, 4, 5, 6]);
        let arcs = [
            TemporalArc { src: a, dst: x, score: 0.1 },
            TemporalArc { src: a, dst: y, score: 0.2 },
        ];
        assert_eq!(select_by_overlap(&arcs, &regions), vec![arcs[1]]);

        regions.insert(x, vec![40]);
        regions.insert(y, vec![41]);
        assert!(select_by_overlap(&arcs, &regions).is_empty());

        regions.insert(x, vec![1]);
        regions.insert(y, vec![2]);
        assert_eq!(select_by_overlap(&arcs, &regions), vec![arcs[0]]);
    }

    fn line_tveg(steps: &[&[f64]]) -> Tveg {
        use crate::exgraph::build_extremum_graph;
        use crate::field::ScalarField3D;
        use crate::temporal::{temporal_arcs, ScoreWeights};
        let graphs = steps
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut f = ScalarField3D::line(v).unwrap();
                f.time_index = i + 1;
                build_extremum_graph(&f, 0.0).unwrap()
            })
            .collect();
        temporal_arcs(graphs, &ScoreWeights::EQUAL).unwrap()
    }

    #[test]
    fn identity_series_components() {
        let row: &[f64] = &[1.0, 3.0, 2.0, 4.0, 1.0];
        let tveg = line_tveg(&[row, row, row]);
        let comps = components(&tveg);
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!((c.t_start, c.t_end), (1, 3));
            assert_eq!(c.nodes.len(), 3);
            assert_eq!(c.arcs.len(), 2);
        }
        let paths = simple_paths(&tveg);
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|t| t.len() == 3));
    }

    #[test]
    fn collate_groups() {
        let row: &[f64] = &[1.0, 3.0, 2.0, 4.0, 1.0];
        let tveg = line_tveg(&[row, row]);
        let paths = simple_paths(&tveg);
        assert_eq!(collate_by_saddle(&paths, &tveg), vec![vec![0, 1]]);

        let apart = vec![
            Track { id: 0, nodes: vec![n(1, 0)], arcs: vec![] },
            Track { id: 1, nodes: vec![n(2, 1)], arcs: vec![] },
        ];
        assert_eq!(collate_by_saddle(&apart, &tveg), vec![vec![0], vec![1]]);
    }

    #[test]
    fn collate_is_transitive_over_time() {
        let row: &[f64] = &[1.0, 3.0, 2.0, 4.0, 1.0, 5.0, 1.0];
        let tveg = line_tveg(&[row, row, row]);
        // maxima 0,1,2 per step; saddles join (0,1) and (1,2)
        let a = Track { id: 0, nodes: vec![n(1, 0)], arcs: vec![] };
        let b = Track { id: 1, nodes: vec![n(1, 1), n(2, 1), n(3, 1)], arcs: vec![] };
        let c = Track { id: 2, nodes: vec![n(3, 2)], arcs: vec![] };
        assert_eq!(collate_by_saddle(&[a, b, c], &tveg), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("components".parse::<TrackMode>().unwrap(), TrackMode::Components);
        assert_eq!("paths".parse::<TrackMode>().unwrap(), TrackMode::SimplePaths);
        assert!("x".parse::<TrackMode>().is_err());
    }
}
