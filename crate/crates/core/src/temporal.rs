//! Temporal arcs between the maxima of consecutive extremum graphs, and the
//! merge / split / deletion / generation events they induce.
//!
//! Each consecutive pair of steps is handled independently:
//! score every candidate correspondence, keep each source's two best
//! targets, drop outliers at `mean + std`, remove z-configurations greedily
//! (highest score first) and read events off the surviving arc degrees.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exgraph::{ExtremumGraph, NodeId};
use crate::morse::CriticalPoint;

/// Weights of the persistence, function value, distance and neighborhood terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreWeights {
    pub persistence: f64,
    pub value: f64,
    pub distance: f64,
    pub neighborhood: f64,
}

impl ScoreWeights {
    pub const EQUAL: ScoreWeights = ScoreWeights {
        persistence: 0.25,
        value: 0.25,
        distance: 0.25,
        neighborhood: 0.25,
    };

    pub fn new(persistence: f64, value: f64, distance: f64, neighborhood: f64) -> Result<Self> {
        let w = ScoreWeights {
            persistence,
            value,
            distance,
            neighborhood,
        };
        let all = [persistence, value, distance, neighborhood];
        if all.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "score weights must be finite and non-negative, got {all:?}"
            )));
        }
        let sum: f64 = all.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "score weights must sum to 1, got {sum}"
            )));
        }
        Ok(w)
    }
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights::EQUAL
    }
}

/// Parses `"G,L1,L2,L3"`.
impl FromStr for ScoreWeights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidParameter(format!("bad weights {s:?}")))?;
        match parts[..] {
            [g, l1, l2, l3] => ScoreWeights::new(g, l1, l2, l3),
            _ => Err(Error::InvalidParameter(format!(
                "expected four comma-separated weights, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for ScoreWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.persistence, self.value, self.distance, self.neighborhood
        )
    }
}

/// Normalized score components for every `(m0, m1)` candidate, row-major
/// over `M0 x M1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Components {
    pub rows: usize,
    pub cols: usize,
    pub persistence: Vec<f64>,
    pub value: Vec<f64>,
    pub distance: Vec<f64>,
    pub neighborhood: Vec<f64>,
}

impl Components {
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> [f64; 4] {
        let k = i * self.cols + j;
        [
            self.persistence[k],
            self.value[k],
            self.distance[k],
            self.neighborhood[k],
        ]
    }
}

fn euclidean(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn normalize(column: &mut [f64]) {
    let max = column.iter().fold(0.0f64, |m, &x| m.max(x));
    if max > 0.0 {
        column.iter_mut().for_each(|x| *x /= max);
    } else {
        column.iter_mut().for_each(|x| *x = 0.0);
    }
}

/// Raw component differences divided by their maximum over all candidates.
pub fn normalize_components(m0: &[CriticalPoint], m1: &[CriticalPoint]) -> Result<Components> {
    if m0.is_empty() || m1.is_empty() {
        return Err(Error::InvalidParameter(
            "score components need maxima on both sides".into(),
        ));
    }
    let n = m0.len() * m1.len();
    let mut c = Components {
        rows: m0.len(),
        cols: m1.len(),
        persistence: Vec::with_capacity(n),
        value: Vec::with_capacity(n),
        distance: Vec::with_capacity(n),
        neighborhood: Vec::with_capacity(n),
    };
    for a in m0 {
        for b in m1 {
            c.persistence.push((a.pers - b.pers).abs());
            c.value.push((a.value - b.value).abs());
            c.distance.push(euclidean(a.position, b.position));
            c.neighborhood.push((a.eta - b.eta).abs());
        }
    }
    normalize(&mut c.persistence);
    normalize(&mut c.value);
    normalize(&mut c.distance);
    normalize(&mut c.neighborhood);
    Ok(c)
}

/// A candidate correspondence `m0 -> m1` with its score.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreTuple {
    pub m0: NodeId,
    pub m1: NodeId,
    pub s: f64,
}

/// For each maximum of `m0`, the two lowest-scoring targets in `m1`
/// (ties by target id). One tuple per source when `m1` has a single maximum.
pub fn compute_scores(
    m0: &[CriticalPoint],
    m1: &[CriticalPoint],
    w: &ScoreWeights,
) -> Result<Vec<ScoreTuple>> {
    let c = normalize_components(m0, m1)?;
    let mut out = Vec::with_capacity(2 * m0.len());
    let mut row: Vec<(f64, NodeId)> = Vec::with_capacity(m1.len());
    for (i, a) in m0.iter().enumerate() {
        row.clear();
        for (j, b) in m1.iter().enumerate() {
            let [p, v, d, nb] = c.at(i, j);
            let s = w.persistence * p + w.value * v + w.distance * d + w.neighborhood * nb;
            row.push((s, b.id));
        }
        let by_score = |x: &(f64, NodeId), y: &(f64, NodeId)| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1));
        let take = row.len().min(2);
        if row.len() > take {
            row.select_nth_unstable_by(take - 1, by_score);
            row.truncate(take);
        }
        row.sort_by(by_score);
        out.extend(row.iter().map(|&(s, id)| ScoreTuple {
            m0: a.id,
            m1: id,
            s,
        }));
    }
    Ok(out)
}

/// Mean, population standard deviation and cut-off of one pair's scores.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterStats {
    pub mean: f64,
    pub std_dev: f64,
    pub threshold: f64,
}

/// Drops tuples with `s >= mean + std`. When every score is identical the
/// set is returned unchanged.
pub fn filter_scores(scores: Vec<ScoreTuple>) -> (Vec<ScoreTuple>, Option<FilterStats>) {
    if scores.is_empty() {
        return (scores, None);
    }
    let n = scores.len() as f64;
    let mean = scores.iter().map(|t| t.s).sum::<f64>() / n;
    let all_equal = scores.iter().all(|t| t.s == scores[0].s);
    let std_dev = if all_equal {
        0.0
    } else {
        (scores.iter().map(|t| (t.s - mean).powi(2)).sum::<f64>() / n).sqrt()
    };
    let stats = FilterStats {
        mean,
        std_dev,
        threshold: mean + std_dev,
    };
    if std_dev == 0.0 {
        return (scores, Some(stats));
    }
    let kept = scores
        .into_iter()
        .filter(|t| t.s < stats.threshold)
        .collect();
    (kept, Some(stats))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemporalArc {
    pub src: NodeId,
    pub dst: NodeId,
    pub score: f64,
}

impl From<ScoreTuple> for TemporalArc {
    fn from(t: ScoreTuple) -> Self {
        TemporalArc {
            src: t.m0,
            dst: t.m1,
            score: t.s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Merge,
    Split,
    Deletion,
    Generation,
}

impl EventKind {
    /// Bit used in per-point event codes of geometry exports.
    pub fn code(self) -> u32 {
        match self {
            EventKind::Merge => 1,
            EventKind::Split => 2,
            EventKind::Deletion => 4,
            EventKind::Generation => 8,
        }
    }
}

/// One topological event. For merges `participants` are the sources
/// (time `time - 1`), for splits the targets (time `time + 1`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Event {
    pub time: usize,
    pub node: NodeId,
    pub kind: EventKind,
    pub participants: Vec<NodeId>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EventSets {
    pub merges: Vec<Event>,
    pub splits: Vec<Event>,
    pub deletions: Vec<Event>,
    pub generations: Vec<Event>,
}

impl EventSets {
    pub fn len(&self) -> usize {
        self.merges.len() + self.splits.len() + self.deletions.len() + self.generations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Event> {
        self.merges
            .iter()
            .chain(&self.splits)
            .chain(&self.deletions)
            .chain(&self.generations)
    }

    pub fn extend(&mut self, other: EventSets) {
        self.merges.extend(other.merges);
        self.splits.extend(other.splits);
        self.deletions.extend(other.deletions);
        self.generations.extend(other.generations);
    }

    fn sort(&mut self) {
        self.merges.sort();
        self.splits.sort();
        self.deletions.sort();
        self.generations.sort();
    }

    /// Events whose time lies in `[t0, t1]`.
    pub fn window(&self, t0: usize, t1: usize) -> EventSets {
        let pick = |v: &[Event]| {
            v.iter()
                .filter(|e| (t0..=t1).contains(&e.time))
                .cloned()
                .collect()
        };
        EventSets {
            merges: pick(&self.merges),
            splits: pick(&self.splits),
            deletions: pick(&self.deletions),
            generations: pick(&self.generations),
        }
    }
}

/// Reads events off the degrees of `arcs` between maxima `m0` (time `t`)
/// and `m1` (time `t + 1`).
pub fn detect_events(arcs: &[TemporalArc], m0: &[NodeId], m1: &[NodeId], t: usize) -> EventSets {
    let mut targets: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    let mut sources: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for a in arcs {
        targets.entry(a.src).or_default().push(a.dst);
        sources.entry(a.dst).or_default().push(a.src);
    }
    let mut ev = EventSets::default();
    for (&dst, srcs) in &mut sources {
        if srcs.len() > 1 {
            srcs.sort();
            ev.merges.push(Event {
                time: t + 1,
                node: dst,
                kind: EventKind::Merge,
                participants: srcs.clone(),
            });
        }
    }
    for (&src, dsts) in &mut targets {
        if dsts.len() > 1 {
            dsts.sort();
            ev.splits.push(Event {
                time: t,
                node: src,
                kind: EventKind::Split,
                participants: dsts.clone(),
            });
        }
    }
    for &m in m0 {
        if !targets.contains_key(&m) {
            ev.deletions.push(Event {
                time: t,
                node: m,
                kind: EventKind::Deletion,
                participants: Vec::new(),
            });
        }
    }
    for &m in m1 {
        if !sources.contains_key(&m) {
            ev.generations.push(Event {
                time: t + 1,
                node: m,
                kind: EventKind::Generation,
                participants: Vec::new(),
            });
        }
    }
    ev.sort();
    ev
}

/// Arcs whose source splits and whose target merges under the current set.
pub fn z_arcs(arcs: &[TemporalArc]) -> Vec<usize> {
    let mut out_deg: BTreeMap<NodeId, usize> = BTreeMap::new();
    let mut in_deg: BTreeMap<NodeId, usize> = BTreeMap::new();
    for a in arcs {
        *out_deg.entry(a.src).or_default() += 1;
        *in_deg.entry(a.dst).or_default() += 1;
    }
    arcs.iter()
        .enumerate()
        .filter(|(_, a)| out_deg[&a.src] >= 2 && in_deg[&a.dst] >= 2)
        .map(|(i, _)| i)
        .collect()
}

fn arc_rank(a: &TemporalArc, b: &TemporalArc) -> Ordering {
    a.score
        .total_cmp(&b.score)
        .then(a.src.cmp(&b.src))
        .then(a.dst.cmp(&b.dst))
}

/// Repeatedly removes the highest-ranked arc (score, then source id, then
/// target id) among those in a z-configuration until none is left.
pub fn remove_z_configurations(mut arcs: Vec<TemporalArc>) -> Vec<TemporalArc> {
    loop {
        let w = z_arcs(&arcs);
        let Some(&worst) = w.iter().max_by(|&&i, &&j| arc_rank(&arcs[i], &arcs[j])) else {
            return arcs;
        };
        arcs.remove(worst);
    }
}

/// Temporal arcs between steps `t` and `t + 1` plus the filter statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairArcs {
    pub t: usize,
    pub arcs: Vec<TemporalArc>,
    pub filter: Option<FilterStats>,
}

/// Runs the full correspondence pipeline for one pair of graphs.
pub fn correspond(
    g0: &ExtremumGraph,
    g1: &ExtremumGraph,
    w: &ScoreWeights,
) -> (PairArcs, EventSets) {
    let t = g0.t;
    let ids0: Vec<NodeId> = g0.maxima.iter().map(|m| m.id).collect();
    let ids1: Vec<NodeId> = g1.maxima.iter().map(|m| m.id).collect();
    let (arcs, filter) = if ids0.is_empty() || ids1.is_empty() {
        (Vec::new(), None)
    } else {
        let scores = compute_scores(&g0.maxima, &g1.maxima, w).expect("both sides non-empty");
        let (kept, stats) = filter_scores(scores);
        let mut arcs: Vec<TemporalArc> = kept.into_iter().map(TemporalArc::from).collect();
        arcs = remove_z_configurations(arcs);
        arcs.sort_by_key(|a| (a.src, a.dst));
        (arcs, stats)
    };
    let events = detect_events(&arcs, &ids0, &ids1, t);
    (PairArcs { t, arcs, filter }, events)
}

/// The time-varying extremum graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tveg {
    pub graphs: Vec<ExtremumGraph>,
    /// One entry per consecutive pair, ordered by `t`.
    pub pairs: Vec<PairArcs>,
    pub events: EventSets,
    pub weights: ScoreWeights,
    pub theta: f64,
}

impl Tveg {
    pub fn graph(&self, t: usize) -> Option<&ExtremumGraph> {
        let first = self.graphs.first()?.t;
        t.checked_sub(first).and_then(|i| self.graphs.get(i))
    }

    pub fn node(&self, id: NodeId) -> Option<&CriticalPoint> {
        self.graph(id.time()).and_then(|g| g.node(id))
    }

    pub fn arcs(&self) -> impl Iterator<Item = &TemporalArc> {
        self.pairs.iter().flat_map(|p| p.arcs.iter())
    }

    pub fn time_range(&self) -> (usize, usize) {
        (
            self.graphs.first().map_or(0, |g| g.t),
            self.graphs.last().map_or(0, |g| g.t),
        )
    }

    /// All maxima over all steps, ordered by id.
    pub fn maxima(&self) -> impl Iterator<Item = &CriticalPoint> {
        self.graphs.iter().flat_map(|g| g.maxima.iter())
    }
}

/// Computes temporal arcs and events for every consecutive pair of `graphs`.
/// Pairs are independent and run in parallel; results are assembled in time order.
pub fn temporal_arcs(graphs: Vec<ExtremumGraph>, w: &ScoreWeights) -> Result<Tveg> {
    if graphs.len() < 2 {
        return Err(Error::TooFewSteps);
    }
    for pair in graphs.windows(2) {
        if pair[1].t != pair[0].t + 1 {
            return Err(Error::InconsistentTime(format!(
                "graph for step {} follows step {}",
                pair[1].t, pair[0].t
            )));
        }
    }
    let theta = graphs[0].theta;
    let results: Vec<(PairArcs, EventSets)> = graphs
        .par_windows(2)
        .map(|p| correspond(&p[0], &p[1], w))
        .collect();
    let mut events = EventSets::default();
    let mut pairs = Vec::with_capacity(results.len());
    for (p, e) in results {
        pairs.push(p);
        events.extend(e);
    }
    events.sort();
    Ok(Tveg {
        graphs,
        pairs,
        events,
        weights: *w,
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::CriticalKind;

    pub(crate) fn max_node(t: usize, i: usize, pos: [f64; 3], value: f64, pers: f64, eta: f64) -> CriticalPoint {
        CriticalPoint {
            id: NodeId::new(t, i),
            index: CriticalKind::Maximum,
            vertex: i,
            position: pos,
            value,
            pers,
            eta,
            dscmfold: vec![],
            geom: None,
            t,
        }
    }

    fn arc(src: u64, dst: u64, score: f64) -> TemporalArc {
        TemporalArc {
            src: NodeId(src),
            dst: NodeId(dst),
            score,
        }
    }

    #[test]
    fn weights_validate() {
        assert!(ScoreWeights::new(0.25, 0.25, 0.25, 0.25).is_ok());
        assert!(ScoreWeights::new(0.5, 0.5, 0.5, -0.5).is_err());
        assert!(ScoreWeights::new(0.3, 0.3, 0.3, 0.3).is_err());
        assert_eq!("0.25,0.25,0.25,0.25".parse::<ScoreWeights>().unwrap(), ScoreWeights::EQUAL);
        assert!("0.5,0.5".parse::<ScoreWeights>().is_err());
    }

    #[test]
    fn identical_single_maxima_normalize_to_zero() {
        let a = max_node(1, 0, [0.1, 0.2, 0.3], 5.0, 2.0, 1.0);
        let b = max_node(2, 0, [0.1, 0.2, 0.3], 5.0, 2.0, 1.0);
        let c = normalize_components(&[a], &[b]).unwrap();
        assert_eq!(c.at(0, 0), [0.0; 4]);
    }

    #[test]
    fn distance_normalized_by_max() {
        let a = max_node(1, 0, [0.0; 3], 1.0, 1.0, 1.0);
        let b = max_node(2, 0, [2.0, 0.0, 0.0], 1.0, 1.0, 1.0);
        let c = max_node(2, 1, [0.0, 4.0, 0.0], 1.0, 1.0, 1.0);
        let comp = normalize_components(&[a], &[b, c]).unwrap();
        assert_eq!(comp.distance, vec![0.5, 1.0]);
        // equal persistence everywhere: zero column
        assert_eq!(comp.persistence, vec![0.0, 0.0]);
    }

    #[test]
    fn empty_side_is_an_error() {
        let a = max_node(1, 0, [0.0; 3], 1.0, 1.0, 1.0);
        assert!(normalize_components(&[a], &[]).is_err());
    }

    #[test]
    fn scores_best_two() {
        let a = max_node(1, 0, [0.0; 3], 5.0, 2.0, 1.0);
        let b = max_node(2, 0, [0.0; 3], 5.0, 2.0, 1.0);
        let c = max_node(2, 1, [1.0, 1.0, 1.0], 9.0, 7.0, 4.0);
        let s = compute_scores(std::slice::from_ref(&a), &[b.clone(), c.clone()], &ScoreWeights::EQUAL).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].m1, s[0].s), (b.id, 0.0));
        assert_eq!((s[1].m1, s[1].s), (c.id, 1.0));

        let single = compute_scores(&[a.clone(), c.clone()], std::slice::from_ref(&b), &ScoreWeights::EQUAL).unwrap();
        assert_eq!(single.len(), 2);
        assert!(single.iter().all(|t| t.m1 == b.id));
    }

    #[test]
    fn scores_tie_break_by_target_id() {
        let a = max_node(1, 0, [0.0; 3], 1.0, 1.0, 1.0);
        let m1: Vec<_> = (0..4).map(|i| max_node(2, i, [0.0; 3], 1.0, 1.0, 1.0)).collect();
        let s = compute_scores(&[a], &m1, &ScoreWeights::EQUAL).unwrap();
        assert_eq!(s.iter().map(|t| t.m1.local()).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn filter_removes_outlier() {
        let t = |s| ScoreTuple { m0: NodeId(0), m1: NodeId(1), s };
        let (kept, stats) = filter_scores(vec![t(0.0), t(0.0), t(1.0)]);
        assert_eq!(kept.len(), 2);
        let stats = stats.unwrap();
        let expected = 1.0 / 3.0 + 2f64.sqrt() / 3.0;
        assert!((stats.threshold - expected).abs() < 1e-15);
        assert!((stats.std_dev - 2f64.sqrt() / 3.0).abs() < 1e-15);

        let (kept, stats) = filter_scores(vec![t(0.1); 3]);
        assert_eq!(kept.len(), 3);
        assert_eq!(stats.unwrap().std_dev, 0.0);

        let (kept, stats) = filter_scores(vec![]);
        assert!(kept.is_empty() && stats.is_none());
    }

    #[test]
    fn events_from_degrees() {
        let (a, b, c) = (NodeId::new(1, 0), NodeId::new(1, 1), NodeId::new(1, 2));
        let (x, y, z) = (NodeId::new(2, 0), NodeId::new(2, 1), NodeId::new(2, 2));
        let mk = |s, d| TemporalArc { src: s, dst: d, score: 0.0 };
        let ev = detect_events(&[mk(a, x), mk(b, x)], &[a, b, c], &[x, y, z], 1);
        assert_eq!(ev.merges.len(), 1);
        assert_eq!(ev.merges[0].node, x);
        assert_eq!(ev.merges[0].time, 2);
        assert_eq!(ev.merges[0].participants, vec![a, b]);
        assert!(ev.splits.is_empty());
        assert_eq!(ev.deletions.iter().map(|e| e.node).collect::<Vec<_>>(), vec![c]);
        assert_eq!(ev.generations.iter().map(|e| e.node).collect::<Vec<_>>(), vec![y, z]);

        let ev = detect_events(&[mk(a, x), mk(a, y)], &[a], &[x, y], 1);
        assert_eq!(ev.splits.len(), 1);
        assert_eq!(ev.splits[0].node, a);
        assert_eq!(ev.splits[0].time, 1);

        let ev = detect_events(&[], &[a, b], &[x], 1);
        assert_eq!(ev.deletions.len(), 2);
        assert_eq!(ev.generations.len(), 1);
    }

    #[test]
    fn z_removal_examples() {
        // a=1, b=2 ; x=10, y=11, z=12
        let out = remove_z_configurations(vec![arc(1, 10, 0.1), arc(2, 10, 0.3), arc(2, 11, 0.2)]);
        assert_eq!(out, vec![arc(1, 10, 0.1), arc(2, 11, 0.2)]);

        let clean = vec![arc(1, 10, 0.1), arc(2, 11, 0.3), arc(2, 12, 0.2)];
        assert_eq!(remove_z_configurations(clean.clone()), clean);

        let out = remove_z_configurations(vec![
            arc(1, 10, 0.1),
            arc(1, 11, 0.4),
            arc(2, 11, 0.2),
            arc(2, 12, 0.3),
        ]);
        assert_eq!(out, vec![arc(1, 10, 0.1), arc(2, 11, 0.2), arc(2, 12, 0.3)]);
    }

    #[test]
    fn z_removal_ties_prefer_greater_ids() {
        let out = remove_z_configurations(vec![
            arc(1, 10, 0.5),
            arc(1, 11, 0.5),
            arc(2, 10, 0.5),
            arc(2, 11, 0.5),
        ]);
        // (2,11) goes first; then (1,10),(1,11),(2,10): W = {(1,10)} -> removed
        assert_eq!(out, vec![arc(1, 11, 0.5), arc(2, 10, 0.5)]);
    }
}
