//! Sofic approximations: finite labeled digraphs whose balls around most
//! vertices look like Cayley balls.

use std::sync::Arc;

use thiserror::Error;

use crate::digraph::{DigraphError, LabeledDigraph, VertexSet};
use crate::exactfield::Rational;
use crate::groups::{CayleyBall, GroupError, GroupKind, GroupModel};

/// Default cap on the number of vertices of a generated approximation.
pub const DEFAULT_MAX_VERTICES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SoficError {
    #[error("|V0| = {good} < (1 - {epsilon})·{total}")]
    CardinalityViolation {
        good: usize,
        total: usize,
        epsilon: Rational,
    },
    #[error("ball of radius {radius} at vertex {vertex} is not isomorphic to N_{radius}(B)")]
    BallMismatch { vertex: usize, radius: usize },
    #[error("graph has {graph} labels but the group has {group} generators")]
    AlphabetMismatch { graph: usize, group: usize },
    #[error("epsilon {0} is not in (0, 1)")]
    EpsilonOutOfRange(Rational),
    #[error("torus side {n} is too small for radius {radius}: need n >= {}", 2 * radius + 2)]
    TorusTooSmall { n: usize, radius: usize },
    #[error("approximation would have {count} vertices, limit is {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("operation requires a {0} group model")]
    WrongGroupKind(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// A labeled digraph with a verified good-vertex set `V0`.
#[derive(Debug, Clone)]
pub struct SoficApproximation {
    graph: LabeledDigraph,
    good: VertexSet,
    epsilon: Rational,
    radius: usize,
    group: Arc<GroupModel>,
    ball: CayleyBall,
    isomaps: Vec<Vec<usize>>,
}

impl SoficApproximation {
    pub fn graph(&self) -> &LabeledDigraph {
        &self.graph
    }

    pub fn good_vertices(&self) -> &VertexSet {
        &self.good
    }

    pub fn epsilon(&self) -> Rational {
        self.epsilon
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn group(&self) -> &Arc<GroupModel> {
        &self.group
    }

    pub fn ball(&self) -> &CayleyBall {
        &self.ball
    }

    /// Cached isomorphism `N_r(B) → N_r(v)` for a good vertex `v`, indexed by
    /// ball position.
    pub fn isomorphism(&self, v: usize) -> Option<&[usize]> {
        self.good.position(v).map(|i| self.isomaps[i].as_slice())
    }

    /// Re-verifies with the same `V0` at a smaller radius.
    pub fn at_radius(&self, radius: usize) -> Result<SoficApproximation, SoficError> {
        verify_approximation(
            self.graph.clone(),
            self.good.clone(),
            self.epsilon,
            radius,
            self.group.clone(),
        )
    }
}

/// Checks both sofic conditions exactly: `|V0| >= (1 - ε)|V|`, and every
/// `v ∈ V0` has `N_r(v) ≅ N_r(B)`. Reports the lowest failing vertex.
pub fn verify_approximation(
    graph: LabeledDigraph,
    good: VertexSet,
    epsilon: Rational,
    radius: usize,
    group: Arc<GroupModel>,
) -> Result<SoficApproximation, SoficError> {
    if graph.alphabet_size() != group.generators().len() {
        return Err(SoficError::AlphabetMismatch {
            graph: graph.alphabet_size(),
            group: group.generators().len(),
        });
    }
    if epsilon <= Rational::zero() || epsilon >= Rational::one() {
        return Err(SoficError::EpsilonOutOfRange(epsilon));
    }
    let good = VertexSet::checked(good.as_slice().to_vec(), graph.vertex_count())?;
    let total = graph.vertex_count() as i128;
    if Rational::from_integer(good.len() as i128) < (Rational::one() - epsilon) * Rational::from_integer(total) {
        return Err(SoficError::CardinalityViolation {
            good: good.len(),
            total: graph.vertex_count(),
            epsilon,
        });
    }
    let ball = group.cayley_ball(radius)?;
    let mut isomaps = Vec::with_capacity(good.len());
    for v in good.iter() {
        match graph.ball_isomorphism(v, &ball)? {
            Some(map) => isomaps.push(map),
            None => return Err(SoficError::BallMismatch { vertex: v, radius }),
        }
    }
    Ok(SoficApproximation {
        graph,
        good,
        epsilon,
        radius,
        group,
        ball,
        isomaps,
    })
}

/// Index of the torus vertex with coordinates `coords` (each in `0..n`).
pub fn torus_vertex(coords: &[i64], n: usize) -> usize {
    coords
        .iter()
        .rev()
        .fold(0, |acc, &c| acc * n + c.rem_euclid(n as i64) as usize)
}

/// Coordinates of torus vertex `v` in `(Z/n)^k`.
pub fn torus_coords(v: usize, k: usize, n: usize) -> Vec<i64> {
    let mut rest = v;
    (0..k)
        .map(|_| {
            let c = rest % n;
            rest /= n;
            c as i64
        })
        .collect()
}

/// Cayley graph of `(Z/n)^k` labeled by the generators of a free abelian model.
/// No size precondition; used both by the builder and for negative checks.
pub fn torus_graph(group: &GroupModel, n: usize) -> Result<LabeledDigraph, SoficError> {
    let GroupKind::FreeAbelian { rank } = *group.kind() else {
        return Err(SoficError::WrongGroupKind("free abelian"));
    };
    let count = n.pow(rank as u32);
    let shifts: Vec<&[i64]> = group
        .generators()
        .iter()
        .map(|g| g.as_vector().expect("free abelian generator"))
        .collect();
    let mut edges = Vec::with_capacity(count * shifts.len());
    for v in 0..count {
        let x = torus_coords(v, rank, n);
        for (label, b) in shifts.iter().enumerate() {
            let y: Vec<i64> = x.iter().zip(b.iter()).map(|(a, d)| a + d).collect();
            edges.push((v, torus_vertex(&y, n), label));
        }
    }
    Ok(LabeledDigraph::new(count, group.labels().to_vec(), edges)?)
}

/// Torus approximation of Z^k with the canonical generators (including 0).
pub fn torus_approximation(k: usize, n: usize, r: usize) -> Result<SoficApproximation, SoficError> {
    torus_approximation_for(Arc::new(GroupModel::free_abelian(k)), n, r, DEFAULT_MAX_VERTICES)
}

/// `(Z/n)^k` with every vertex good; requires `n >= 2r + 2`.
///
/// The recorded ε is `1/(|V| + 1)`; any positive value works since `V0 = V`.
pub fn torus_approximation_for(
    group: Arc<GroupModel>,
    n: usize,
    r: usize,
    max_vertices: usize,
) -> Result<SoficApproximation, SoficError> {
    let GroupKind::FreeAbelian { rank } = *group.kind() else {
        return Err(SoficError::WrongGroupKind("free abelian"));
    };
    if n < 2 * r + 2 {
        return Err(SoficError::TorusTooSmall { n, radius: r });
    }
    let count = (n as u128).pow(rank as u32);
    if count > max_vertices as u128 {
        return Err(SoficError::TooManyVertices {
            count: count.min(usize::MAX as u128) as usize,
            limit: max_vertices,
        });
    }
    let graph = torus_graph(&group, n)?;
    let total = graph.vertex_count();
    let epsilon = Rational::new(1, total as i128 + 1).expect("nonzero");
    verify_approximation(graph, VertexSet::all(total), epsilon, r, group)
}

/// The full Cayley graph of a finite group, every vertex good.
pub fn finite_group_approximation(
    group: Arc<GroupModel>,
    r: usize,
) -> Result<SoficApproximation, SoficError> {
    let graph = group
        .cayley_graph()
        .ok_or(SoficError::WrongGroupKind("finite"))?;
    let total = graph.vertex_count();
    let epsilon = Rational::new(1, total as i128 + 1).expect("nonzero");
    verify_approximation(graph, VertexSet::all(total), epsilon, r, group)
}
