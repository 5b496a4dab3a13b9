#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tveg::exgraph::{build_series, NodeId, Threshold};
use tveg::field::{FieldSeries, Grid, ScalarField3D};
use tveg::temporal::{temporal_arcs, ScoreWeights, Tveg};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent uniform values per voxel and step.
pub fn noise_series(seed: u64, dims: [usize; 3], steps: usize) -> FieldSeries {
    let mut r = rng(seed);
    let grid = Grid::unit_cube(dims).unwrap();
    let fields = (1..=steps)
        .map(|t| {
            let v = (0..grid.len()).map(|_| r.gen::<f64>()).collect();
            ScalarField3D::new(grid, v, t).unwrap()
        })
        .collect();
    FieldSeries::new(fields).unwrap()
}

/// A handful of Gaussian bumps drifting on straight lines, plus a little noise.
pub fn blob_series(seed: u64, dims: [usize; 3], steps: usize, blobs: usize) -> FieldSeries {
    let mut r = rng(seed);
    let grid = Grid::unit_cube(dims).unwrap();
    let bumps: Vec<([f64; 3], [f64; 3], f64, f64)> = (0..blobs)
        .map(|_| {
            let c = [r.gen::<f64>(), r.gen::<f64>(), r.gen::<f64>()];
            let v = [0; 3].map(|_| r.gen_range(-0.03..0.03));
            (c, v, r.gen_range(0.5..2.0), r.gen_range(0.06..0.15))
        })
        .collect();
    let fields = (1..=steps)
        .map(|t| {
            let dt = (t - 1) as f64;
            let values = (0..grid.len())
                .map(|i| {
                    let p = grid.world(i);
                    let sum: f64 = bumps
                        .iter()
                        .map(|(c, v, a, s)| {
                            let d2: f64 = (0..3).map(|k| (p[k] - c[k] - v[k] * dt).powi(2)).sum();
                            a * (-d2 / (2.0 * s * s)).exp()
                        })
                        .sum();
                    sum + 0.01 * r.gen::<f64>()
                })
                .collect();
            ScalarField3D::new(grid, values, t).unwrap()
        })
        .collect();
    FieldSeries::new(fields).unwrap()
}

pub fn pipeline(series: &FieldSeries, frac: f64) -> Tveg {
    let graphs = build_series(series, Threshold::Fraction(frac)).unwrap();
    temporal_arcs(graphs, &ScoreWeights::EQUAL).unwrap()
}

/// Checks the structural rules every computed graph must obey and returns
/// one message per violation.
pub fn invariant_violations(tv: &Tveg) -> Vec<String> {
    let mut bad = Vec::new();
    let maxima_at: BTreeMap<usize, BTreeSet<NodeId>> = tv
        .graphs
        .iter()
        .map(|g| (g.t, g.maxima.iter().map(|m| m.id).collect()))
        .collect();
    if tv.pairs.len() + 1 != tv.graphs.len() {
        bad.push(format!("{} pairs for {} graphs", tv.pairs.len(), tv.graphs.len()));
    }
    let mut out_deg: BTreeMap<NodeId, usize> = BTreeMap::new();
    let mut in_deg: BTreeMap<NodeId, usize> = BTreeMap::new();
    for (k, p) in tv.pairs.iter().enumerate() {
        if p.t != tv.graphs[k].t || tv.graphs[k + 1].t != p.t + 1 {
            bad.push(format!("pair {k} labelled t={} is not consecutive", p.t));
        }
        for a in &p.arcs {
            let src_ok = maxima_at.get(&p.t).is_some_and(|m| m.contains(&a.src));
            let dst_ok = maxima_at.get(&(p.t + 1)).is_some_and(|m| m.contains(&a.dst));
            if !src_ok || !dst_ok {
                bad.push(format!("arc {} -> {} is not between maxima of {} and {}", a.src, a.dst, p.t, p.t + 1));
            }
            *out_deg.entry(a.src).or_default() += 1;
            *in_deg.entry(a.dst).or_default() += 1;
        }
        match p.filter {
            Some(f) if f.std_dev != 0.0 => {
                for a in p.arcs.iter().filter(|a| !(a.score < f.threshold)) {
                    bad.push(format!("arc {} -> {} score {} >= tau {}", a.src, a.dst, a.score, f.threshold));
                }
            }
            Some(_) => {}
            None if !p.arcs.is_empty() => bad.push(format!("pair {} has arcs but no filter", p.t)),
            None => {}
        }
    }
    for (&n, &d) in &out_deg {
        if d > 2 {
            bad.push(format!("{n} has out-degree {d}"));
        }
    }
    for a in tv.arcs() {
        if out_deg[&a.src] >= 2 && in_deg[&a.dst] >= 2 {
            bad.push(format!("z-configuration through {} -> {}", a.src, a.dst));
        }
    }
    let (first, last) = tv.time_range();
    let ids = |v: &[tveg::temporal::Event]| v.iter().map(|e| e.node).collect::<BTreeSet<_>>();
    let mut want_del = BTreeSet::new();
    let mut want_gen = BTreeSet::new();
    for (&t, ms) in &maxima_at {
        for &m in ms {
            if t < last && !out_deg.contains_key(&m) {
                want_del.insert(m);
            }
            if t > first && !in_deg.contains_key(&m) {
                want_gen.insert(m);
            }
        }
    }
    if ids(&tv.events.deletions) != want_del {
        bad.push("deletions disagree with out-degrees".into());
    }
    if ids(&tv.events.generations) != want_gen {
        bad.push("generations disagree with in-degrees".into());
    }
    for e in &tv.events.deletions {
        if e.time != e.node.time() {
            bad.push(format!("deletion of {} stamped {}", e.node, e.time));
        }
    }
    for e in &tv.events.generations {
        if e.time != e.node.time() {
            bad.push(format!("generation of {} stamped {}", e.node, e.time));
        }
    }
    let merges: BTreeSet<NodeId> = in_deg.iter().filter(|(_, &d)| d > 1).map(|(&n, _)| n).collect();
    let splits: BTreeSet<NodeId> = out_deg.iter().filter(|(_, &d)| d > 1).map(|(&n, _)| n).collect();
    if ids(&tv.events.merges) != merges {
        bad.push("merges disagree with in-degrees".into());
    }
    if ids(&tv.events.splits) != splits {
        bad.push("splits disagree with out-degrees".into());
    }
    bad
}
