//! Interference graphs, clique numbers, and schedule optimality ratios.
//!
//! Two nodes conflict when they cannot transmit in the same slot under the
//! k-hop rule; the clique number of the resulting graph lower-bounds every
//! frame length, which gives the approximation ratios of the address-based
//! schedules: at most 4/3 on the hexagonal lattice and at most 5/4 on the
//! square grid (exactly 1 for odd k there). An exact branch-and-bound
//! max-clique search serves as the oracle for the closed-form clique counts.

use num_rational::Ratio;
use thiserror::Error;

use crate::lattice::{graph_distance, neighbors_in, LatticeCoord, LatticeKind, NetworkExtent};
use crate::scheduler::{frame_length, InterferenceK};

/// Largest node count the exact clique search accepts.
pub const CLIQUE_NODE_BUDGET: usize = 200;

#[derive(Debug, Error, PartialEq)]
pub enum InterferenceError {
    #[error("exact clique search refused: {nodes} nodes exceed the budget of {budget}")]
    BudgetExceeded { nodes: usize, budget: usize },
}

/// Whether simultaneous transmissions of `a` and `b` interfere.
///
/// For k = 1 this is the primary constraint (adjacency). For k >= 2 the
/// pair conflicts when any extent neighbor of either node, acting as its
/// receiver, lies closer than k hops to the other transmitter. The same
/// rule drives schedule verification.
pub fn nodes_conflict(
    kind: LatticeKind,
    k: InterferenceK,
    extent: &NetworkExtent,
    a: LatticeCoord,
    b: LatticeCoord,
) -> bool {
    if a == b {
        return false;
    }
    if k.get() == 1 {
        return graph_distance(kind, a, b) == 1;
    }
    let threshold = k.get() as u64;
    let too_close = |tx: LatticeCoord, other: LatticeCoord| {
        neighbors_in(kind, tx, extent)
            .into_iter()
            .any(|r| graph_distance(kind, r, other) < threshold)
    };
    too_close(a, b) || too_close(b, a)
}

/// Conflict graph of a finite network: nodes of the extent, edges between
/// pairs that cannot share a slot.
#[derive(Debug, Clone)]
pub struct InterferenceGraph {
    nodes: Vec<LatticeCoord>,
    adjacency: Vec<Vec<bool>>,
}

impl InterferenceGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[LatticeCoord] {
        &self.nodes
    }

    pub fn conflicts(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn conflicts_between(&self, a: LatticeCoord, b: LatticeCoord) -> Option<bool> {
        let i = self.nodes.binary_search(&a).ok()?;
        let j = self.nodes.binary_search(&b).ok()?;
        Some(self.adjacency[i][j])
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .enumerate()
            .map(|(i, row)| row[i + 1..].iter().filter(|&&e| e).count())
            .sum()
    }
}

/// Build the interference graph of the extent under the k-hop rule.
pub fn build_interference_graph(
    kind: LatticeKind,
    k: InterferenceK,
    extent: &NetworkExtent,
) -> InterferenceGraph {
    let mut nodes: Vec<LatticeCoord> = extent.iter().collect();
    nodes.sort_unstable();
    let n = nodes.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if nodes_conflict(kind, k, extent, nodes[i], nodes[j]) {
                adjacency[i][j] = true;
                adjacency[j][i] = true;
            }
        }
    }
    InterferenceGraph { nodes, adjacency }
}

/// Closed-form clique number of the k-hop interference graph, assuming the
/// network extends at least k+1 hops around the clique center.
///
/// Hexagonal, even k: `3(k/2)^2 + 3(k/2) + 1` — a filled hexagonal ball of
/// diameter k. Hexagonal, odd k: the ball of diameter k-1 plus the
/// neighbors on one side of a diagonal, `1 + sum_{i=1..(k-1)/2} 6i +
/// 3(k+1)/2 - 1`, which sums to `3(k+1)^2/4`. Square grid: `k^2/2 + k + 1`
/// for even k and `(k+1)^2/2` for odd k.
pub fn clique_number_formula(kind: LatticeKind, k: InterferenceK) -> u64 {
    let k = k.get() as u64;
    match kind {
        LatticeKind::Hexagonal => {
            if k % 2 == 0 {
                let m = k / 2;
                3 * m * m + 3 * m + 1
            } else {
                let mut total = 1 + 3 * (k + 1) / 2 - 1;
                for ring in 1..=(k - 1) / 2 {
                    total += 6 * ring;
                }
                total
            }
        }
        LatticeKind::SquareGrid => {
            if k % 2 == 0 {
                k * k / 2 + k + 1
            } else {
                (k + 1) * (k + 1) / 2
            }
        }
    }
}

/// Size and witness of an exact maximum clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: Vec<LatticeCoord>,
}

/// Exact maximum clique by branch and bound, refusing graphs larger than
/// [`CLIQUE_NODE_BUDGET`] rather than answering approximately.
pub fn brute_force_max_clique(g: &InterferenceGraph) -> Result<CliqueResult, InterferenceError> {
    max_clique_with_budget(g, CLIQUE_NODE_BUDGET)
}

/// Exact maximum clique with an explicit node budget.
///
/// Processes vertices in reverse order, recording for each suffix its exact
/// clique number; that table and the candidate count prune the search.
pub fn max_clique_with_budget(
    g: &InterferenceGraph,
    budget: usize,
) -> Result<CliqueResult, InterferenceError> {
    let n = g.node_count();
    if n > budget {
        return Err(InterferenceError::BudgetExceeded { nodes: n, budget });
    }
    if n == 0 {
        return Ok(CliqueResult { size: 0, witness: Vec::new() });
    }

    let mut suffix_bound = vec![0usize; n];
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for i in (0..n).rev() {
        let candidates: Vec<usize> = (i + 1..n).filter(|&j| g.conflicts(i, j)).collect();
        current.push(i);
        extend_clique(g, &candidates, &suffix_bound, &mut current, &mut best);
        current.pop();
        suffix_bound[i] = best.len();
    }

    let mut witness: Vec<LatticeCoord> = best.iter().map(|&i| g.nodes()[i]).collect();
    witness.sort_unstable();
    Ok(CliqueResult { size: witness.len(), witness })
}

fn extend_clique(
    g: &InterferenceGraph,
    candidates: &[usize],
    suffix_bound: &[usize],
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let mut rest = candidates;
    while let Some((&v, tail)) = rest.split_first() {
        if current.len() + rest.len() <= best.len() {
            return;
        }
        if current.len() + suffix_bound[v] <= best.len() {
            return;
        }
        rest = tail;
        let narrowed: Vec<usize> = rest.iter().copied().filter(|&w| g.conflicts(v, w)).collect();
        current.push(v);
        extend_clique(g, &narrowed, suffix_bound, current, best);
        current.pop();
    }
}

/// Frame length over clique number as an exact rational: the worst-case
/// optimality gap of the schedule for this `(kind, k)`.
pub fn approximation_ratio(kind: LatticeKind, k: InterferenceK) -> Ratio<u64> {
    Ratio::new(frame_length(kind, k) as u64, clique_number_formula(kind, k))
}
