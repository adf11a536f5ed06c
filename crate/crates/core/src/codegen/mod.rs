//! Bandwidth-optimal codes for single-uniprior problems with the smallest
//! worst-case number of transmissions per decoded message.
//!
//! The pipeline is: reduce to `n = m`, build the flow graph, prune it, pick a
//! min-max spanning tree on every component, and send `x_i - x_j` for every
//! tree edge plus uncoded messages for leftover arcs and unknown messages.

pub mod plan;
pub mod tree;

pub use plan::{decoding_plan, transmission_counts, CountTable, DecodingPlan, PlanEntry, MAX_PLAN_LENGTH};
pub use tree::{min_max_spanning_tree, prufer_decode, SpanningTree, TreeChoice, EXHAUSTIVE_LIMIT};

use crate::code::{Codeword, IndexCode, Provenance};
use crate::error::{Error, Result};
use crate::field::unit;
use crate::graph::{build_flow_graph, prune, InformationFlowGraph, PrunedGraph};
use crate::problem::{reduce_to_square, IndexCodingProblem, SquareReduction};

/// Emits the index code for a pruned graph and one tree per component.
///
/// Codeword order: components by smallest vertex with their sorted tree
/// edges, then leftover arcs, then direct messages. Tree edge `{i, j}` with
/// `i < j` becomes `x_i - x_j` (which is `x_i + x_j` over F_2).
pub fn build_index_code(
    reduction: &SquareReduction,
    pruned: &PrunedGraph,
    trees: &[SpanningTree],
) -> Result<IndexCode> {
    if trees.len() != pruned.components.len() {
        return Err(Error::InvalidTree(format!(
            "{} trees for {} components",
            trees.len(),
            pruned.components.len()
        )));
    }
    let field = reduction.problem.field();
    let n = reduction.original_n;
    let msg = |v: usize| reduction.vertex_message[v];
    let mut codewords = Vec::with_capacity(pruned.optimal_length() + reduction.direct_messages.len());
    for (c, (comp, tree)) in pruned.components.iter().zip(trees).enumerate() {
        if tree.vertices() != comp.as_slice() {
            return Err(Error::InvalidTree(format!(
                "tree {} does not span component {}",
                c + 1,
                c + 1
            )));
        }
        for &(a, b) in tree.edges() {
            let mut v = unit(n, msg(a));
            v[msg(b)] = field.neg(1);
            codewords.push(Codeword {
                vector: v,
                provenance: Provenance::Edge {
                    component: c + 1,
                    edge: [a + 1, b + 1],
                },
            });
        }
    }
    for &(a, b) in &pruned.leftover_arcs {
        codewords.push(Codeword {
            vector: unit(n, msg(a)),
            provenance: Provenance::Leftover { arc: [a + 1, b + 1] },
        });
    }
    for &k in &reduction.direct_messages {
        codewords.push(Codeword {
            vector: unit(n, k),
            provenance: Provenance::Direct { message: k + 1 },
        });
    }
    IndexCode::new(field, n, codewords)
}

/// Every intermediate product of the construction.
#[derive(Debug, Clone)]
pub struct Construction {
    pub reduction: SquareReduction,
    pub graph: InformationFlowGraph,
    pub pruned: PrunedGraph,
    pub trees: Vec<TreeChoice>,
    pub code: IndexCode,
}

impl Construction {
    /// `sum(|component| - 1) + |leftover arcs| + |direct messages|`.
    pub fn optimal_length(&self) -> usize {
        self.pruned.optimal_length() + self.reduction.direct_messages.len()
    }
}

/// Runs the full construction on a single-uniprior problem.
pub fn construct(problem: &IndexCodingProblem) -> Result<Construction> {
    let reduction = reduce_to_square(problem)?;
    let graph = build_flow_graph(&reduction.problem)?;
    let pruned = prune(&graph);
    let trees = (0..pruned.components.len())
        .map(|c| min_max_spanning_tree(&pruned.components[c], &pruned.component_arcs(c)))
        .collect::<Result<Vec<_>>>()?;
    let tree_list: Vec<SpanningTree> = trees.iter().map(|t| t.tree.clone()).collect();
    let code = build_index_code(&reduction, &pruned, &tree_list)?;
    Ok(Construction {
        reduction,
        graph,
        pruned,
        trees,
        code,
    })
}
