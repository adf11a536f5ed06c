//! Spanning trees of the complete graph on a component that minimize the
//! worst tree distance between demand pairs.

use crate::error::{Error, Result};
use crate::graph::Arc;
use rayon::prelude::*;
use std::collections::{BTreeSet, VecDeque};

/// Components up to this size are searched exhaustively (k^(k-2) trees).
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// An undirected tree on a vertex subset. Edges are stored as `(a, b)` with
/// `a < b`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    /// Validates that `edges` form a spanning tree of `vertices`.
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let vertices: Vec<usize> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        edges.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::InvalidTree("empty vertex set".into()));
        }
        if edges.len() + 1 != vertices.len() {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                vertices.len()
            )));
        }
        let tree = SpanningTree { vertices, edges };
        for &(a, b) in &tree.edges {
            if a == b || tree.local(a).is_none() || tree.local(b).is_none() {
                return Err(Error::InvalidTree(format!(
                    "edge {{{}, {}}} is not inside the vertex set",
                    a + 1,
                    b + 1
                )));
            }
        }
        let d = tree.distance_table();
        if d.iter().any(|row| row.contains(&usize::MAX)) {
            return Err(Error::InvalidTree("edges do not connect the vertex set".into()));
        }
        Ok(tree)
    }

    /// Star centred at `center`.
    pub fn star(vertices: &[usize], center: usize) -> Result<Self> {
        Self::new(
            vertices.iter().copied(),
            vertices.iter().filter(|&&v| v != center).map(|&v| (center, v)),
        )
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn local(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// All-pairs tree distances indexed by local vertex position.
    fn distance_table(&self) -> Vec<Vec<usize>> {
        let k = self.vertices.len();
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &self.edges {
            let (a, b) = (self.local(a).unwrap(), self.local(b).unwrap());
            adj[a].push(b);
            adj[b].push(a);
        }
        (0..k).map(|s| bfs(&adj, s)).collect()
    }

    /// Tree distance between two vertices of the tree.
    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let (la, lb) = (self.local(a)?, self.local(b)?);
        Some(self.distance_table()[la][lb])
    }

    /// `(max, total)` tree distance over the demand arcs.
    pub fn score(&self, demands: &[Arc]) -> (usize, usize) {
        let d = self.distance_table();
        demands.iter().fold((0, 0), |(mx, tot), &(a, b)| {
            let x = d[self.local(a).unwrap()][self.local(b).unwrap()];
            (mx.max(x), tot + x)
        })
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// A chosen tree with its objective values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeChoice {
    pub tree: SpanningTree,
    /// Largest tree distance over the demand arcs.
    pub max_distance: usize,
    /// Sum of tree distances over the demand arcs.
    pub total_distance: usize,
    /// Whether every spanning tree was examined.
    pub exhaustive: bool,
}

/// Decodes a Prüfer sequence over `0..k` into tree edges (local indices).
pub fn prufer_decode(seq: &[usize], k: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, k);
    let mut degree = vec![1usize; k];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &s in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Picks a spanning tree of the complete graph on `vertices` minimizing the
/// largest tree distance over `demands`, then the total distance, then the
/// sorted edge list lexicographically.
///
/// Components of at most [`EXHAUSTIVE_LIMIT`] vertices are searched over all
/// Prüfer sequences. Larger components use the demand graph itself when it
/// is a tree, and otherwise the star whose centre touches the most demand
/// arcs (every star has diameter two).
pub fn min_max_spanning_tree(vertices: &[usize], demands: &[Arc]) -> Result<TreeChoice> {
    let verts: Vec<usize> = vertices.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let k = verts.len();
    if k < 2 {
        return Err(Error::InvalidTree(format!(
            "component needs at least 2 vertices, got {k}"
        )));
    }
    let local = |v: usize| verts.binary_search(&v).ok();
    let mut local_demands = Vec::with_capacity(demands.len());
    for &(a, b) in demands {
        match (local(a), local(b)) {
            (Some(la), Some(lb)) if la != lb => local_demands.push((la, lb)),
            _ => {
                return Err(Error::InvalidTree(format!(
                    "demand arc ({}, {}) is not inside the component",
                    a + 1,
                    b + 1
                )))
            }
        }
    }

    if k <= EXHAUSTIVE_LIMIT {
        return Ok(exhaustive(&verts, &local_demands));
    }

    let pairs: BTreeSet<(usize, usize)> = demands.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let tree = if pairs.len() + 1 == k {
        // Connected demand graph with k - 1 distinct pairs is itself a tree,
        // the unique tree with every demand at distance one.
        SpanningTree::new(verts.iter().copied(), pairs)?
    } else {
        let mut incident = vec![0usize; k];
        for &(a, b) in &local_demands {
            incident[a] += 1;
            incident[b] += 1;
        }
        // max_by_key keeps the last maximum; scan in reverse for the smallest id.
        let center = (0..k).rev().max_by_key(|&v| incident[v]).unwrap();
        SpanningTree::star(&verts, verts[center])?
    };
    let (max_distance, total_distance) = tree.score(demands);
    Ok(TreeChoice {
        tree,
        max_distance,
        total_distance,
        exhaustive: false,
    })
}

type Candidate = (usize, usize, Vec<(usize, usize)>);

fn exhaustive(verts: &[usize], demands: &[(usize, usize)]) -> TreeChoice {
    let k = verts.len();
    let to_global = |edges: &[(usize, usize)]| -> Vec<(usize, usize)> {
        // Local order matches global order, so sorted local edges stay sorted.
        let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (verts[a], verts[b])).collect();
        e.sort_unstable();
        e
    };
    let best = if k == 2 {
        let (mx, tot) = score_local(&[(0, 1)], 2, demands);
        (mx, tot, to_global(&[(0, 1)]))
    } else {
        let len = k - 2;
        // Partition by first sequence element; each partition reduces to its
        // own minimum and the partition minima are compared in order.
        (0..k)
            .into_par_iter()
            .map(|first| {
                let mut seq = vec![0usize; len];
                seq[0] = first;
                let mut best: Option<Candidate> = None;
                let rest = k.pow(len as u32 - 1);
                for code in 0..rest {
                    let mut c = code;
                    for slot in seq.iter_mut().skip(1) {
                        *slot = c % k;
                        c /= k;
                    }
                    let local_edges = prufer_decode(&seq, k);
                    let (mx, tot) = score_local(&local_edges, k, demands);
                    if let Some((bm, bt, be)) = &best {
                        if (mx, tot) > (*bm, *bt) {
                            continue;
                        }
                        if (mx, tot) == (*bm, *bt) {
                            let mut sorted = local_edges.clone();
                            sorted.sort_unstable();
                            let e = to_global(&sorted);
                            if e >= *be {
                                continue;
                            }
                            best = Some((mx, tot, e));
                            continue;
                        }
                    }
                    let mut sorted = local_edges;
                    sorted.sort_unstable();
                    best = Some((mx, tot, to_global(&sorted)));
                }
                best.expect("at least one tree per partition")
            })
            .collect::<Vec<_>>()
            .into_iter()
            .min()
            .expect("k >= 3 has trees")
    };
    let (max_distance, total_distance, edges) = best;
    TreeChoice {
        tree: SpanningTree {
            vertices: verts.to_vec(),
            edges,
        },
        max_distance,
        total_distance,
        exhaustive: true,
    }
}

fn score_local(edges: &[(usize, usize)], k: usize, demands: &[(usize, usize)]) -> (usize, usize) {
    let mut adj = vec![Vec::with_capacity(k); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist: Vec<Option<Vec<usize>>> = vec![None; k];
    let mut mx = 0;
    let mut tot = 0;
    for &(a, b) in demands {
        let row = dist[a].get_or_insert_with(|| bfs(&adj, a));
        let x = row[b];
        mx = mx.max(x);
        tot += x;
    }
    (mx, tot)
}
