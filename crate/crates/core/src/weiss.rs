//! Greedy extraction of a dense, well-separated set of good vertices.
//!
//! Given good vertices (at least half of the graph) whose `(2r₀+1)`-balls are
//! isomorphic to the Cayley ball, returns `V₁` with
//! `|V₁| · 2|N_{2r₀+1}(B)| >= |V|` and all pairwise directed distances at
//! least `2r₀+1`.

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{DigraphError, LabeledDigraph, VertexSet};
use crate::exactfield::Rational;
use crate::groups::CayleyBall;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeissError {
    #[error("only {good} of {total} vertices are good; need at least half")]
    PreconditionDensity { good: usize, total: usize },
    #[error("vertex {0} does not have a Cayley-isomorphic ball of the required radius")]
    BallMismatch(usize),
    #[error("ball has radius {got}, expected 2r0+1 = {expected}")]
    WrongBallRadius { got: usize, expected: usize },
    #[error("selection violates a guaranteed bound: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeissSelection {
    pub selected: VertexSet,
    pub r0: usize,
    /// `1 / (2 |N_{2r₀+1}(B)|)`.
    pub density_bound: Rational,
    /// `|V₁| / |V|`.
    pub achieved_density: Rational,
    /// Smallest directed distance between two selected vertices; `None` when
    /// fewer than two are selected or no two are mutually reachable.
    pub min_pairwise_distance: Option<usize>,
}

/// Greedy selection in ascending vertex order, discarding good vertices
/// within directed distance `2r₀` of each pick.
pub fn weiss_select(
    graph: &LabeledDigraph,
    good: &VertexSet,
    r0: usize,
    ball: &CayleyBall,
) -> Result<WeissSelection, WeissError> {
    let expected = 2 * r0 + 1;
    if ball.radius() != expected {
        return Err(WeissError::WrongBallRadius {
            got: ball.radius(),
            expected,
        });
    }
    let total = graph.vertex_count();
    let good = VertexSet::checked(good.as_slice().to_vec(), total)?;
    if 2 * good.len() < total {
        return Err(WeissError::PreconditionDensity {
            good: good.len(),
            total,
        });
    }
    for v in good.iter() {
        if graph.ball_isomorphism(v, ball)?.is_none() {
            return Err(WeissError::BallMismatch(v));
        }
    }

    let mut candidate = vec![false; total];
    for v in good.iter() {
        candidate[v] = true;
    }
    let mut selected = Vec::new();
    for v in good.iter() {
        if !candidate[v] {
            continue;
        }
        selected.push(v);
        for (u, _) in graph.bfs_within(v, 2 * r0) {
            candidate[u] = false;
        }
    }

    // Re-verify both guarantees on the output, in both directions.
    let mut min_dist: Option<usize> = None;
    for &u in &selected {
        let dist = graph.distances_from(u);
        for &w in &selected {
            if w == u || dist[w] == usize::MAX {
                continue;
            }
            if dist[w] < expected {
                return Err(WeissError::InternalInconsistency(format!(
                    "selected vertices {u} and {w} at distance {}",
                    dist[w]
                )));
            }
            min_dist = Some(min_dist.map_or(dist[w], |m| m.min(dist[w])));
        }
    }
    let ball_size = ball.len();
    if selected.len() * 2 * ball_size < total {
        return Err(WeissError::InternalInconsistency(format!(
            "|V1| = {} below |V| / (2·{ball_size}) with |V| = {total}",
            selected.len()
        )));
    }
    Ok(WeissSelection {
        r0,
        density_bound: Rational::new(1, 2 * ball_size as i128).expect("nonzero"),
        achieved_density: Rational::new(selected.len() as i128, total.max(1) as i128)
            .expect("nonzero"),
        min_pairwise_distance: min_dist,
        selected: VertexSet::new(selected),
    })
}
