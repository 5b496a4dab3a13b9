//! Maxima, descending-manifold segmentation, region saddles and persistence
//! simplification of a single scalar field.
//!
//! Every comparison between vertices goes through [`TotalOrder`]: values are
//! compared first and the vertex index breaks ties, so every discrete field
//! behaves like a Morse function with distinct critical values.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::exgraph::NodeId;
use crate::field::ScalarField3D;
use crate::union_find::UnionFind;

/// Lexicographic order on `(value, vertex)`.
#[derive(Clone, Copy, Debug)]
pub struct TotalOrder<'a> {
    values: &'a [f64],
}

impl<'a> TotalOrder<'a> {
    pub fn new(values: &'a [f64]) -> Self {
        TotalOrder { values }
    }

    #[inline]
    pub fn cmp(&self, a: usize, b: usize) -> Ordering {
        compare_keyed(self.values[a], a, self.values[b], b)
    }

    /// `true` when `a` is strictly above `b`.
    #[inline]
    pub fn above(&self, a: usize, b: usize) -> bool {
        self.cmp(a, b) == Ordering::Greater
    }
}

#[inline]
pub(crate) fn compare_keyed(va: f64, a: usize, vb: f64, b: usize) -> Ordering {
    va.total_cmp(&vb).then(a.cmp(&b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum CriticalKind {
    /// Index-2 saddle (mediates two maxima in 3D).
    Saddle,
    /// Index-3 critical point.
    Maximum,
}

impl CriticalKind {
    pub fn morse_index(self) -> u8 {
        match self {
            CriticalKind::Saddle => 2,
            CriticalKind::Maximum => 3,
        }
    }
}

impl From<CriticalKind> for u8 {
    fn from(k: CriticalKind) -> u8 {
        k.morse_index()
    }
}

impl TryFrom<u8> for CriticalKind {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            2 => Ok(CriticalKind::Saddle),
            3 => Ok(CriticalKind::Maximum),
            other => Err(format!("unsupported Morse index {other}")),
        }
    }
}

/// A node of an extremum graph with the attributes used for correspondence scoring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub id: NodeId,
    pub index: CriticalKind,
    /// Grid vertex carrying the critical point.
    pub vertex: usize,
    /// World coordinates.
    pub position: [f64; 3],
    pub value: f64,
    pub pers: f64,
    pub eta: f64,
    /// Descending manifold as sorted voxel indices (maxima only).
    #[serde(skip)]
    pub dscmfold: Vec<u32>,
    /// Descending manifold clipped by a superlevel set, when computed.
    #[serde(skip)]
    pub geom: Option<Vec<u32>>,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Maximum {
    pub vertex: usize,
    pub value: f64,
    pub persistence: f64,
    /// Index into `Segmentation::saddles` of the saddle this maximum was
    /// paired with; `None` for the global maximum.
    pub pair_saddle: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Saddle {
    pub vertex: usize,
    pub value: f64,
    /// The two maxima (by vertex, ascending) whose regions meet here.
    pub maxima: (usize, usize),
}

/// Steepest-ascent partition of the grid into descending manifolds.
#[derive(Clone, Debug, PartialEq)]
pub struct Segmentation {
    /// Per voxel, the vertex of the maximum it ascends to.
    pub labels: Vec<u32>,
    /// Sorted by vertex.
    pub maxima: Vec<Maximum>,
    /// Sorted by the maximum pair.
    pub saddles: Vec<Saddle>,
    /// `(lo, hi)` maximum pair -> index into `saddles`.
    pub adjacency: BTreeMap<(usize, usize), usize>,
    /// `(min, max)` of the source field.
    pub range: (f64, f64),
}

impl Segmentation {
    pub fn maximum(&self, vertex: usize) -> Option<&Maximum> {
        self.maxima
            .binary_search_by_key(&vertex, |m| m.vertex)
            .ok()
            .map(|i| &self.maxima[i])
    }

    /// The maximum that is greatest under the total order.
    pub fn global_maximum(&self) -> Option<&Maximum> {
        self.maxima
            .iter()
            .max_by(|a, b| compare_keyed(a.value, a.vertex, b.value, b.vertex))
    }

    /// Descending manifold of every maximum as a sorted voxel list.
    pub fn manifolds(&self) -> BTreeMap<usize, Vec<u32>> {
        let mut out: BTreeMap<usize, Vec<u32>> =
            self.maxima.iter().map(|m| (m.vertex, Vec::new())).collect();
        for (v, &l) in self.labels.iter().enumerate() {
            out.get_mut(&(l as usize))
                .expect("label refers to a maximum")
                .push(v as u32);
        }
        out
    }

    /// Persistence per maximum vertex.
    pub fn persistence(&self) -> BTreeMap<usize, f64> {
        self.maxima.iter().map(|m| (m.vertex, m.persistence)).collect()
    }
}

/// Vertices greater than every vertex in their clipped 26-neighborhood.
pub fn find_maxima(field: &ScalarField3D) -> Vec<usize> {
    let order = TotalOrder::new(field.values());
    (0..field.len())
        .filter(|&v| {
            let mut is_max = true;
            field.grid.for_each_neighbor(v, |u| {
                if order.above(u, v) {
                    is_max = false;
                }
            });
            is_max
        })
        .collect()
}

/// Greatest vertex among `v` and its neighbors.
fn steepest_neighbor(field: &ScalarField3D, order: &TotalOrder, v: usize) -> usize {
    let mut best = v;
    field.grid.for_each_neighbor(v, |u| {
        if order.above(u, best) {
            best = u;
        }
    });
    best
}

/// Labels every voxel with the maximum reached by steepest ascent.
pub fn compute_segmentation(field: &ScalarField3D) -> Segmentation {
    const UNSET: u32 = u32::MAX;
    let n = field.len();
    assert!(n < UNSET as usize, "grid too large for 32-bit labels");
    let order = TotalOrder::new(field.values());
    let up: Vec<u32> = (0..n)
        .map(|v| steepest_neighbor(field, &order, v) as u32)
        .collect();

    let mut labels = vec![UNSET; n];
    let mut path = Vec::new();
    for start in 0..n {
        let mut v = start;
        while labels[v] == UNSET {
            let next = up[v] as usize;
            if next == v {
                labels[v] = v as u32;
                break;
            }
            path.push(v);
            v = next;
        }
        let root = labels[v];
        for &p in &path {
            labels[p] = root;
        }
        path.clear();
    }

    let maxima = (0..n)
        .filter(|&v| up[v] as usize == v)
        .map(|v| Maximum {
            vertex: v,
            value: field.value(v),
            persistence: 0.0,
            pair_saddle: None,
        })
        .collect();
    Segmentation {
        labels,
        maxima,
        saddles: Vec::new(),
        adjacency: BTreeMap::new(),
        range: field.range(),
    }
}

/// Adds one saddle per pair of adjacent regions: the highest lower endpoint
/// over all 26-adjacent voxel pairs that straddle the two regions.
pub fn compute_saddles(field: &ScalarField3D, mut seg: Segmentation) -> Segmentation {
    let order = TotalOrder::new(field.values());
    let mut best: HashMap<(usize, usize), usize> = HashMap::new();
    for u in 0..field.len() {
        let lu = seg.labels[u] as usize;
        field.grid.for_each_neighbor(u, |v| {
            if v < u {
                return;
            }
            let lv = seg.labels[v] as usize;
            if lu == lv {
                return;
            }
            let lower = if order.above(u, v) { v } else { u };
            let key = (lu.min(lv), lu.max(lv));
            best.entry(key)
                .and_modify(|s| {
                    if order.above(lower, *s) {
                        *s = lower;
                    }
                })
                .or_insert(lower);
        });
    }
    let mut pairs: Vec<_> = best.into_iter().collect();
    pairs.sort_unstable_by_key(|&(k, _)| k);
    seg.saddles = pairs
        .iter()
        .map(|&(pair, vertex)| Saddle {
            vertex,
            value: field.value(vertex),
            maxima: pair,
        })
        .collect();
    seg.adjacency = pairs
        .iter()
        .enumerate()
        .map(|(i, &(pair, _))| (pair, i))
        .collect();
    seg
}

/// Persistence pairing of one maximum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pairing {
    pub persistence: f64,
    pub saddle: Option<usize>,
}

/// Merge-tree persistence computed on the region adjacency graph: saddles
/// are swept from highest to lowest and each union kills the lower maximum
/// (elder rule). The surviving maximum is paired with the field minimum.
pub fn compute_persistence(seg: &Segmentation) -> BTreeMap<usize, Pairing> {
    let index_of: HashMap<usize, usize> = seg
        .maxima
        .iter()
        .enumerate()
        .map(|(i, m)| (m.vertex, i))
        .collect();
    let mut uf = UnionFind::new(seg.maxima.len());
    // component root -> index of its highest maximum
    let mut top: Vec<usize> = (0..seg.maxima.len()).collect();
    let mut out = BTreeMap::new();

    let mut sweep: Vec<usize> = (0..seg.saddles.len()).collect();
    sweep.sort_unstable_by(|&a, &b| {
        let (sa, sb) = (&seg.saddles[a], &seg.saddles[b]);
        compare_keyed(sb.value, sb.vertex, sa.value, sa.vertex).then(a.cmp(&b))
    });
    for si in sweep {
        let s = &seg.saddles[si];
        let (ra, rb) = (uf.find(index_of[&s.maxima.0]), uf.find(index_of[&s.maxima.1]));
        if ra == rb {
            continue;
        }
        let (ta, tb) = (&seg.maxima[top[ra]], &seg.maxima[top[rb]]);
        let (elder, younger) = if compare_keyed(ta.value, ta.vertex, tb.value, tb.vertex)
            == Ordering::Greater
        {
            (top[ra], top[rb])
        } else {
            (top[rb], top[ra])
        };
        let dying = &seg.maxima[younger];
        out.insert(
            dying.vertex,
            Pairing {
                persistence: dying.value - s.value,
                saddle: Some(si),
            },
        );
        let root = uf.union(ra, rb);
        top[root] = elder;
    }
    for (i, m) in seg.maxima.iter().enumerate() {
        let root = uf.find(i);
        if top[root] == i {
            out.insert(
                m.vertex,
                Pairing {
                    persistence: m.value - seg.range.0,
                    saddle: None,
                },
            );
        }
    }
    out
}

fn apply_persistence(mut seg: Segmentation) -> Segmentation {
    let pairs = compute_persistence(&seg);
    for m in &mut seg.maxima {
        let p = pairs[&m.vertex];
        m.persistence = p.persistence;
        m.pair_saddle = p.saddle;
    }
    seg
}

/// Full unsimplified pipeline: labels, saddles and persistence.
pub fn segment(field: &ScalarField3D) -> Segmentation {
    let seg = compute_segmentation(field);
    let seg = compute_saddles(field, seg);
    apply_persistence(seg)
}

/// Cancels every non-global maximum with persistence below `theta`, in
/// increasing persistence order. A cancelled maximum's region is merged
/// into the region across its pairing saddle and the highest saddle is kept
/// for every resulting region pair.
pub fn simplify(seg: Segmentation, theta: f64) -> Segmentation {
    let Some(global) = seg.global_maximum().map(|m| m.vertex) else {
        return seg;
    };
    let mut victims: Vec<&Maximum> = seg
        .maxima
        .iter()
        .filter(|m| m.vertex != global && m.persistence < theta)
        .collect();
    if victims.is_empty() {
        return seg;
    }
    // lower-ranked maximum first among equal persistence
    victims.sort_by(|a, b| {
        a.persistence
            .total_cmp(&b.persistence)
            .then(compare_keyed(a.value, a.vertex, b.value, b.vertex))
    });
    let victims: Vec<(usize, usize)> = victims
        .iter()
        .map(|m| (m.vertex, m.pair_saddle.expect("non-global maximum is paired")))
        .collect();

    let slot: HashMap<usize, usize> = seg
        .maxima
        .iter()
        .enumerate()
        .map(|(i, m)| (m.vertex, i))
        .collect();
    let mut uf = UnionFind::new(seg.maxima.len());
    // representative slot -> surviving maximum slot
    let mut owner: Vec<usize> = (0..seg.maxima.len()).collect();
    let mut neighbors: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); seg.maxima.len()];
    for (&(a, b), &si) in &seg.adjacency {
        neighbors[slot[&a]].insert(slot[&b], si);
        neighbors[slot[&b]].insert(slot[&a], si);
    }
    let saddle_above = |saddles: &[Saddle], x: usize, y: usize| {
        let (sx, sy) = (&saddles[x], &saddles[y]);
        compare_keyed(sx.value, sx.vertex, sy.value, sy.vertex) == Ordering::Greater
    };

    for (victim, pair_saddle) in victims {
        let m = slot[&victim];
        let s = &seg.saddles[pair_saddle];
        // either endpoint may already have been absorbed by an earlier cancellation
        let (a, b) = (
            owner[uf.find(slot[&s.maxima.0])],
            owner[uf.find(slot[&s.maxima.1])],
        );
        let n = if a == m { b } else { a };
        debug_assert!(n != m && (a == m || b == m));
        let absorbed = std::mem::take(&mut neighbors[m]);
        for (k, si) in absorbed {
            neighbors[k].remove(&m);
            if k == n {
                continue;
            }
            let keep = match neighbors[n].get(&k) {
                Some(&existing) if !saddle_above(&seg.saddles, si, existing) => existing,
                _ => si,
            };
            neighbors[n].insert(k, keep);
            neighbors[k].insert(n, keep);
        }
        let root = uf.union(m, n);
        owner[root] = n;
    }

    let survivor = |uf: &mut UnionFind, i: usize| owner[uf.find(i)];
    let resolved: Vec<usize> = (0..seg.maxima.len()).map(|i| survivor(&mut uf, i)).collect();
    let labels = seg
        .labels
        .iter()
        .map(|&l| seg.maxima[resolved[slot[&(l as usize)]]].vertex as u32)
        .collect();
    let maxima: Vec<Maximum> = seg
        .maxima
        .iter()
        .enumerate()
        .filter(|&(i, _)| resolved[i] == i)
        .map(|(_, m)| m.clone())
        .collect();

    let mut pairs: Vec<((usize, usize), usize)> = Vec::new();
    for (i, nbrs) in neighbors.iter().enumerate() {
        if resolved[i] != i {
            continue;
        }
        for (&k, &si) in nbrs {
            let (a, b) = (seg.maxima[i].vertex, seg.maxima[k].vertex);
            if a < b {
                pairs.push(((a, b), si));
            }
        }
    }
    pairs.sort_unstable_by_key(|&(p, _)| p);
    let saddles: Vec<Saddle> = pairs
        .iter()
        .map(|&(pair, si)| Saddle {
            vertex: seg.saddles[si].vertex,
            value: seg.saddles[si].value,
            maxima: pair,
        })
        .collect();
    let adjacency = pairs.iter().enumerate().map(|(i, &(p, _))| (p, i)).collect();

    apply_persistence(Segmentation {
        labels,
        maxima,
        saddles,
        adjacency,
        range: seg.range,
    })
}

/// Superlevel-set merge tree computed by a plain descending vertex sweep,
/// independent of the segmentation. Returns persistence per maximum vertex.
pub fn merge_tree_oracle(field: &ScalarField3D) -> BTreeMap<usize, f64> {
    let values = field.values();
    let n = values.len();
    let (lo, _) = field.range();
    let mut sweep: Vec<usize> = (0..n).collect();
    sweep.sort_unstable_by(|&a, &b| compare_keyed(values[b], b, values[a], a));

    let mut uf = UnionFind::new(n);
    let mut seen = vec![false; n];
    // root -> vertex of the component's highest maximum
    let mut top: Vec<usize> = (0..n).collect();
    let mut out = BTreeMap::new();
    let mut roots = Vec::with_capacity(26);
    for &v in &sweep {
        roots.clear();
        field.grid.for_each_neighbor(v, |u| {
            if seen[u] {
                roots.push(uf.find(u));
            }
        });
        roots.sort_unstable();
        roots.dedup();
        seen[v] = true;
        if roots.is_empty() {
            continue;
        }
        let elder = roots
            .iter()
            .map(|&r| top[r])
            .max_by(|&a, &b| compare_keyed(values[a], a, values[b], b))
            .unwrap();
        for &r in &roots {
            let m = top[r];
            if m != elder {
                out.insert(m, values[m] - values[v]);
            }
        }
        let mut root = uf.find(v);
        for &r in &roots {
            root = uf.union(root, r);
        }
        top[root] = elder;
    }
    let global = top[uf.find(sweep[0])];
    out.insert(global, values[global] - lo);
    out
}

/// Per maximum, the voxels of its descending manifold that pass `mask`.
pub fn descending_geometry(seg: &Segmentation, mask: &[bool]) -> BTreeMap<usize, Vec<u32>> {
    assert_eq!(mask.len(), seg.labels.len(), "mask and labels differ in size");
    let mut out: BTreeMap<usize, Vec<u32>> =
        seg.maxima.iter().map(|m| (m.vertex, Vec::new())).collect();
    for (v, (&l, &keep)) in seg.labels.iter().zip(mask).enumerate() {
        if keep {
            out.get_mut(&(l as usize)).unwrap().push(v as u32);
        }
    }
    out
}
