//! Information flow graphs of single-uniprior problems, strongly connected
//! components, and the arc-pruning procedure.
//!
//! Vertex `i` stands for receiver `i`; the arc `(i, j)` means receiver `j`
//! wants the message known by receiver `i`.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::problem::{IndexCodingProblem, Receiver};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

pub type Arc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationFlowGraph {
    vertex_count: usize,
    arcs: BTreeSet<Arc>,
}

impl InformationFlowGraph {
    pub fn new(vertex_count: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let arcs: BTreeSet<Arc> = arcs.into_iter().collect();
        for &(a, b) in &arcs {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidProblem(format!(
                    "arc ({}, {}) leaves the vertex range 1..={vertex_count}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidProblem(format!("self-arc at vertex {}", a + 1)));
            }
        }
        Ok(InformationFlowGraph { vertex_count, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((v, 0)..(v + 1, 0)).map(|&(_, h)| h)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_neighbors(v).count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
        }
        adj
    }

    /// Whether `to` is reachable from `from` along arcs.
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        reaches(&self.adjacency(), from, to)
    }
}

fn reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
    if from == to {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if w == to {
                return true;
            }
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Builds the information flow graph of a single-uniprior problem with
/// `n = m`.
pub fn build_flow_graph(problem: &IndexCodingProblem) -> Result<InformationFlowGraph> {
    if !problem.is_single_uniprior() {
        return Err(Error::NotSingleUniprior(
            "flow graphs need one distinct known message per receiver".into(),
        ));
    }
    if problem.n() != problem.m() {
        return Err(Error::InvalidProblem(format!(
            "flow graph needs n = m, got n = {} and m = {}; reduce the problem first",
            problem.n(),
            problem.m()
        )));
    }
    let mut knower = vec![0; problem.n()];
    for i in 0..problem.m() {
        knower[problem.known_message(i).unwrap()] = i;
    }
    let arcs = problem.demands().into_iter().map(|d| (knower[d.message], d.receiver));
    InformationFlowGraph::new(problem.m(), arcs)
}

/// Inverse of [`build_flow_graph`]: receiver `i` knows `x_i` and wants the
/// messages of its in-neighbours.
pub fn problem_of_graph(field: PrimeField, graph: &InformationFlowGraph) -> Result<IndexCodingProblem> {
    let mut receivers: Vec<Receiver> = (0..graph.vertex_count()).map(|i| Receiver::new([], [i])).collect();
    for &(a, b) in graph.arcs() {
        receivers[b].wants.insert(a);
    }
    IndexCodingProblem::new(field, graph.vertex_count(), receivers)
}

/// Partition of the vertices into strongly connected components.
///
/// Each component is sorted, and components are ordered by their smallest
/// vertex.
pub fn strongly_connected_components(graph: &InformationFlowGraph) -> Vec<Vec<usize>> {
    let adj = graph.adjacency();
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut comps = Vec::new();

    // Iterative Tarjan: (vertex, next child position).
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            // All children done.
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Output of [`prune`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrunedGraph {
    pub residual: InformationFlowGraph,
    /// Non-trivial strongly connected components of `residual`.
    pub components: Vec<Vec<usize>>,
    /// Residual arcs that do not lie inside any component.
    pub leftover_arcs: Vec<Arc>,
}

impl PrunedGraph {
    /// Component index of each vertex, if any.
    pub fn component_of(&self) -> Vec<Option<usize>> {
        let mut of = vec![None; self.residual.vertex_count()];
        for (c, comp) in self.components.iter().enumerate() {
            for &v in comp {
                of[v] = Some(c);
            }
        }
        of
    }

    /// Arcs of `residual` whose endpoints both lie in component `c`.
    pub fn component_arcs(&self, c: usize) -> Vec<Arc> {
        let of = self.component_of();
        self.residual
            .arcs()
            .iter()
            .copied()
            .filter(|&(a, b)| of[a] == Some(c) && of[b] == Some(c))
            .collect()
    }

    /// Length of the bandwidth-optimal code for this graph:
    /// `sum(|component| - 1) + |leftover arcs|`.
    pub fn optimal_length(&self) -> usize {
        self.components.iter().map(|c| c.len() - 1).sum::<usize>() + self.leftover_arcs.len()
    }
}

impl fmt::Display for PrunedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.components.len();
        write!(f, "{k} component{}", if k == 1 { "" } else { "s" })?;
        for comp in &self.components {
            let ids: Vec<String> = comp.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, " {{{}}}", ids.join(","))?;
        }
        let l = self.leftover_arcs.len();
        write!(f, ", {l} leftover arc{}", if l == 1 { "" } else { "s" })?;
        for &(a, b) in &self.leftover_arcs {
            write!(f, " ({},{})", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// Repeatedly trims vertices that have several outgoing arcs, at least one
/// of which lies on no cycle, down to a single such arc; then labels the
/// non-trivial strongly connected components.
///
/// Vertices are scanned in ascending order and the off-cycle arc with the
/// smallest head is the one kept. An arc `(i, j)` lies on a cycle iff `i` is
/// reachable from `j`.
pub fn prune(graph: &InformationFlowGraph) -> PrunedGraph {
    let n = graph.vertex_count();
    let mut adj = graph.adjacency();
    loop {
        let mut changed = false;
        for v in 0..n {
            if adj[v].len() < 2 {
                continue;
            }
            // adjacency lists are sorted by head (arcs come from a BTreeSet).
            let off_cycle = adj[v].iter().copied().find(|&j| !reaches(&adj, j, v));
            if let Some(keep) = off_cycle {
                adj[v] = vec![keep];
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    let residual = InformationFlowGraph {
        vertex_count: n,
        arcs: adj
            .iter()
            .enumerate()
            .flat_map(|(a, hs)| hs.iter().map(move |&b| (a, b)))
            .collect(),
    };
    let components: Vec<Vec<usize>> = strongly_connected_components(&residual)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect();
    let mut of = vec![usize::MAX; n];
    for (c, comp) in components.iter().enumerate() {
        for &v in comp {
            of[v] = c;
        }
    }
    let leftover_arcs = residual
        .arcs()
        .iter()
        .copied()
        .filter(|&(a, b)| of[a] == usize::MAX || of[a] != of[b])
        .collect();
    PrunedGraph {
        residual,
        components,
        leftover_arcs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::IndexCodingProblem;
    use proptest::prelude::*;

    fn cycle(n: usize) -> InformationFlowGraph {
        // R_i knows x_i and wants x_{i+1}: arc (i+1, i).
        InformationFlowGraph::new(n, (0..n).map(|i| ((i + 1) % n, i))).unwrap()
    }

    fn nine_user() -> IndexCodingProblem {
        let mut wants: Vec<Vec<usize>> = (0..9).map(|i| vec![(i + 2) % 9]).collect();
        wants[0].push(1);
        wants[1].push(2);
        IndexCodingProblem::single_uniprior(PrimeField::F2, wants).unwrap()
    }

    /// Brute-force mutual reachability classes.
    fn scc_oracle(g: &InformationFlowGraph) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        let mut assigned = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if assigned[v] {
                continue;
            }
            let class: Vec<usize> = (0..n).filter(|&w| g.reaches(v, w) && g.reaches(w, v)).collect();
            for &w in &class {
                assigned[w] = true;
            }
            out.push(class);
        }
        out
    }

    #[test]
    fn three_user_arcs() {
        let p = IndexCodingProblem::single_uniprior(PrimeField::F2, vec![vec![1, 2], vec![0], vec![0, 1]]).unwrap();
        let g = build_flow_graph(&p).unwrap();
        let expected: BTreeSet<Arc> = [(2, 1), (3, 1), (1, 2), (1, 3), (2, 3)]
            .into_iter()
            .map(|(a, b)| (a - 1, b - 1))
            .collect();
        assert_eq!(g.arcs(), &expected);
    }

    #[test]
    fn four_cycle_arcs() {
        let p =
            IndexCodingProblem::single_uniprior(PrimeField::F2, (0..4).map(|i| vec![(i + 1) % 4]).collect()).unwrap();
        let g = build_flow_graph(&p).unwrap();
        let expected: BTreeSet<Arc> = [(2, 1), (3, 2), (4, 3), (1, 4)]
            .into_iter()
            .map(|(a, b)| (a - 1, b - 1))
            .collect();
        assert_eq!(g.arcs(), &expected);
        assert_eq!(strongly_connected_components(&g), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn empty_wants_give_no_arcs() {
        let p = IndexCodingProblem::single_uniprior(PrimeField::F2, vec![vec![], vec![]]).unwrap();
        let g = build_flow_graph(&p).unwrap();
        assert!(g.arcs().is_empty());
        let pr = prune(&g);
        assert!(pr.components.is_empty());
        assert_eq!(pr.to_string(), "0 components, 0 leftover arcs");
    }

    #[test]
    fn five_cycle_is_one_component() {
        let g = cycle(5);
        assert_eq!(strongly_connected_components(&g), vec![(0..5).collect::<Vec<_>>()]);
        assert_eq!(prune(&g).optimal_length(), 4);
    }

    #[test]
    fn chain_has_singleton_components() {
        let g = InformationFlowGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(strongly_connected_components(&g), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn nine_user_graph_is_one_component() {
        let g = build_flow_graph(&nine_user()).unwrap();
        let sccs = strongly_connected_components(&g);
        assert_eq!(sccs, scc_oracle(&g));
        assert_eq!(sccs, vec![(0..9).collect::<Vec<_>>()]);
        let pr = prune(&g);
        assert_eq!(pr.residual, g);
        assert_eq!(pr.components, vec![(0..9).collect::<Vec<_>>()]);
        assert!(pr.leftover_arcs.is_empty());
        assert_eq!(pr.optimal_length(), 8);
    }

    #[test]
    fn strongly_connected_graph_is_unchanged() {
        // W_1 = {2,4}, W_2 = {3}, W_3 = {1}, W_4 = {2,3}.
        let p = IndexCodingProblem::single_uniprior(PrimeField::F2, vec![vec![1, 3], vec![2], vec![0], vec![1, 2]])
            .unwrap();
        let g = build_flow_graph(&p).unwrap();
        let pr = prune(&g);
        assert_eq!(pr.residual, g);
        assert_eq!(pr.to_string(), "1 component {1,2,3,4}, 0 leftover arcs");
    }

    #[test]
    fn acyclic_fan_out_keeps_one_arc() {
        let g = InformationFlowGraph::new(3, [(0, 1), (0, 2)]).unwrap();
        let pr = prune(&g);
        assert_eq!(pr.residual.arcs().iter().copied().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(pr.components.is_empty());
        assert_eq!(pr.leftover_arcs, vec![(0, 1)]);
    }

    #[test]
    fn rejects_self_arcs() {
        assert!(InformationFlowGraph::new(2, [(1, 1)]).is_err());
        assert!(InformationFlowGraph::new(2, [(0, 2)]).is_err());
    }

    fn graph_strategy() -> impl Strategy<Value = InformationFlowGraph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::btree_set((0..n, 0..n), 0..=n * 3)
                .prop_map(move |arcs| InformationFlowGraph::new(n, arcs.into_iter().filter(|(a, b)| a != b)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn flow_graph_round_trip(g in graph_strategy()) {
            let p = problem_of_graph(PrimeField::F2, &g).unwrap();
            prop_assert_eq!(build_flow_graph(&p).unwrap(), g);
        }

        #[test]
        fn scc_matches_reachability_oracle(g in graph_strategy()) {
            let sccs = strongly_connected_components(&g);
            prop_assert_eq!(&sccs, &scc_oracle(&g));
            let covered: usize = sccs.iter().map(|c| c.len()).sum();
            prop_assert_eq!(covered, g.vertex_count());
        }

        #[test]
        fn prune_postconditions(g in graph_strategy()) {
            let pr = prune(&g);
            prop_assert_eq!(pr.residual.vertex_count(), g.vertex_count());
            prop_assert!(pr.residual.arcs().is_subset(g.arcs()));
            for v in 0..g.vertex_count() {
                let outs: Vec<usize> = pr.residual.out_neighbors(v).collect();
                // Every vertex that lost arcs kept exactly one.
                if g.out_degree(v) > 0 {
                    prop_assert!(!outs.is_empty());
                }
                if outs.len() >= 2 {
                    for &j in &outs {
                        prop_assert!(pr.residual.reaches(j, v));
                    }
                }
            }
            for c in &pr.components {
                prop_assert!(c.len() >= 2);
            }
            let inside: BTreeSet<Arc> = (0..pr.components.len()).flat_map(|c| pr.component_arcs(c)).collect();
            let leftover: BTreeSet<Arc> = pr.leftover_arcs.iter().copied().collect();
            prop_assert!(inside.is_disjoint(&leftover));
            let union: BTreeSet<Arc> = inside.union(&leftover).copied().collect();
            prop_assert_eq!(&union, pr.residual.arcs());
        }
    }
}
