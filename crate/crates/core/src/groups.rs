//! Finitely generated group models and their Cayley balls.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::digraph::{DigraphError, LabeledDigraph};

/// Default cap on the number of elements in a generated ball.
pub const DEFAULT_MAX_BALL: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element {0} does not belong to this group")]
    ForeignElement(GroupElement),
    #[error("ball of radius {radius} exceeds the limit of {limit} elements")]
    BallTooLarge { radius: usize, limit: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("generator set is not symmetric: inverse of {0} missing")]
    NotSymmetric(usize),
    #[error("generators reach only {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// Canonical representation of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Coordinates in Z^k.
    Vector(Vec<i64>),
    /// Row index in a multiplication table.
    Index(usize),
}

impl GroupElement {
    pub fn as_vector(&self) -> Option<&[i64]> {
        match self {
            GroupElement::Vector(v) => Some(v),
            GroupElement::Index(_) => None,
        }
    }

    pub fn as_index(&self) -> Option<usize> {
        match self {
            GroupElement::Index(i) => Some(*i),
            GroupElement::Vector(_) => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
            GroupElement::Index(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    word_length: Vec<usize>,
}

impl FiniteTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    FreeAbelian { rank: usize },
    FiniteByTable(FiniteTable),
}

/// A group together with a fixed finite symmetric generating set `B`.
///
/// The position of a generator in [`GroupModel::generators`] is its edge
/// label in every Cayley graph and approximation built from this model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupModel {
    kind: GroupKind,
    generators: Vec<GroupElement>,
    labels: Vec<String>,
    description: String,
}

impl GroupModel {
    /// Z^k with `B = {-e_1, …, -e_k, 0, e_1, …, e_k}`.
    pub fn free_abelian(rank: usize) -> Self {
        Self::free_abelian_with(rank, true)
    }

    /// Z^k with `B = {±e_i}`, optionally also containing the identity.
    pub fn free_abelian_with(rank: usize, include_identity: bool) -> Self {
        let unit = |i: usize, s: i64| {
            let mut v = vec![0; rank];
            v[i] = s;
            GroupElement::Vector(v)
        };
        let mut generators: Vec<GroupElement> = (0..rank).map(|i| unit(i, -1)).collect();
        let mut labels: Vec<String> = (1..=rank).map(|i| format!("-e{i}")).collect();
        if include_identity {
            generators.push(GroupElement::Vector(vec![0; rank]));
            labels.push("0".into());
        }
        generators.extend((0..rank).map(|i| unit(i, 1)));
        labels.extend((1..=rank).map(|i| format!("e{i}")));
        let description = if include_identity {
            format!("Z^{rank}")
        } else {
            format!("Z^{rank}*")
        };
        Self {
            kind: GroupKind::FreeAbelian { rank },
            generators,
            labels,
            description,
        }
    }

    /// A finite group given by its multiplication table (`table[a][b] = a·b`)
    /// and a symmetric generating set of element indices.
    pub fn finite(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |m: String| Err(GroupError::InvalidTable(m));
        if n == 0 {
            return bad("empty table".into());
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {a} has {} entries, expected {n}", row.len()));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return bad(format!("row {a} is not a permutation of 0..{n}"));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return bad(format!("column {b} is not a permutation of 0..{n}"));
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        else {
            return bad("no identity element".into());
        };
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("latin square row"))
            .collect();
        for &g in &generators {
            if g >= n {
                return bad(format!("generator {g} out of range"));
            }
            if !generators.contains(&inverse[g]) {
                return Err(GroupError::NotSymmetric(g));
            }
        }
        // Light's test: associativity for the middle factor ranging over a
        // generating set implies full associativity.
        for &g in &generators {
            for a in 0..n {
                for c in 0..n {
                    if table[table[a][g]][c] != table[a][table[g][c]] {
                        return bad(format!("not associative at ({a}, {g}, {c})"));
                    }
                }
            }
        }
        let mut word_length = vec![usize::MAX; n];
        word_length[identity] = 0;
        let mut queue = VecDeque::from([identity]);
        while let Some(a) = queue.pop_front() {
            for &g in &generators {
                let b = table[a][g];
                if word_length[b] == usize::MAX {
                    word_length[b] = word_length[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        let reached = word_length.iter().filter(|&&l| l != usize::MAX).count();
        if reached != n {
            return Err(GroupError::NotGenerating { reached, order: n });
        }
        let labels = generators.iter().map(|g| format!("g{g}")).collect();
        Ok(Self {
            kind: GroupKind::FiniteByTable(FiniteTable {
                table,
                inverse,
                identity,
                word_length,
            }),
            generators: generators.into_iter().map(GroupElement::Index).collect(),
            labels,
            description: format!("finite(order={n})"),
        })
    }

    /// Z/n with elements `0..n` under addition.
    pub fn cyclic(n: usize, generators: Vec<usize>) -> Result<Self, GroupError> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::finite(table, generators)
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Edge labels, one per generator.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::FreeAbelian { .. } => None,
            GroupKind::FiniteByTable(t) => Some(t.order()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::FreeAbelian { rank } => GroupElement::Vector(vec![0; *rank]),
            GroupKind::FiniteByTable(t) => GroupElement::Index(t.identity),
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        match (&self.kind, a) {
            (GroupKind::FreeAbelian { rank }, GroupElement::Vector(v)) => v.len() == *rank,
            (GroupKind::FiniteByTable(t), GroupElement::Index(i)) => *i < t.order(),
            _ => false,
        }
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GroupError::ForeignElement(a.clone()))
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (&self.kind, a, b) {
            (GroupKind::FreeAbelian { .. }, GroupElement::Vector(x), GroupElement::Vector(y)) => {
                GroupElement::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupKind::FiniteByTable(t), GroupElement::Index(x), GroupElement::Index(y)) => {
                GroupElement::Index(t.table[*x][*y])
            }
            _ => unreachable!("elements checked against the model"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    pub(crate) fn inv_unchecked(&self, a: &GroupElement) -> GroupElement {
        match (&self.kind, a) {
            (GroupKind::FreeAbelian { .. }, GroupElement::Vector(x)) => {
                GroupElement::Vector(x.iter().map(|c| -c).collect())
            }
            (GroupKind::FiniteByTable(t), GroupElement::Index(x)) => {
                GroupElement::Index(t.inverse[*x])
            }
            _ => unreachable!("elements checked against the model"),
        }
    }

    /// Word length `d_B(1, a)` with respect to the model's generators.
    pub fn word_length(&self, a: &GroupElement) -> Result<usize, GroupError> {
        self.check(a)?;
        Ok(match (&self.kind, a) {
            // B = {±e_i} (with or without 0): the L1 norm.
            (GroupKind::FreeAbelian { .. }, GroupElement::Vector(x)) => {
                x.iter().map(|c| c.unsigned_abs() as usize).sum()
            }
            (GroupKind::FiniteByTable(t), GroupElement::Index(x)) => t.word_length[*x],
            _ => unreachable!(),
        })
    }

    /// Cayley distance `d_B(a, b) = |a⁻¹b|`.
    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> Result<usize, GroupError> {
        self.check(a)?;
        self.check(b)?;
        self.word_length(&self.mul_unchecked(&self.inv_unchecked(a), b))
    }

    pub fn cayley_ball(&self, radius: usize) -> Result<CayleyBall, GroupError> {
        self.cayley_ball_with_limit(radius, DEFAULT_MAX_BALL)
    }

    /// `N_r(B)` by breadth-first closure of `{1}` under right multiplication
    /// by `B`. Within a layer elements are sorted by their representation.
    pub fn cayley_ball_with_limit(
        &self,
        radius: usize,
        limit: usize,
    ) -> Result<CayleyBall, GroupError> {
        let id = self.identity();
        let mut elements = vec![id.clone()];
        let mut distance = vec![0];
        let mut index = HashMap::from([(id.clone(), 0)]);
        let mut frontier = vec![id];
        for layer in 1..=radius {
            let next: BTreeSet<GroupElement> = frontier
                .iter()
                .flat_map(|g| self.generators.iter().map(move |b| (g, b)))
                .map(|(g, b)| self.mul_unchecked(g, b))
                .filter(|h| !index.contains_key(h))
                .collect();
            if next.is_empty() {
                break;
            }
            if elements.len() + next.len() > limit {
                return Err(GroupError::BallTooLarge { radius, limit });
            }
            for h in &next {
                index.insert(h.clone(), elements.len());
                elements.push(h.clone());
                distance.push(layer);
            }
            frontier = next.into_iter().collect();
        }
        let mut edges = Vec::new();
        for (i, g) in elements.iter().enumerate() {
            for (label, b) in self.generators.iter().enumerate() {
                if let Some(&j) = index.get(&self.mul_unchecked(g, b)) {
                    edges.push((i, j, label));
                }
            }
        }
        let graph = LabeledDigraph::new(elements.len(), self.labels.clone(), edges)?;
        Ok(CayleyBall {
            radius,
            elements,
            index,
            graph,
            distance,
        })
    }

    /// Full Cayley graph of a finite group; vertex `i` is element `i`.
    pub fn cayley_graph(&self) -> Option<LabeledDigraph> {
        let GroupKind::FiniteByTable(t) = &self.kind else {
            return None;
        };
        let edges = (0..t.order()).flat_map(|a| {
            self.generators
                .iter()
                .enumerate()
                .map(move |(label, g)| (a, t.table[a][g.as_index().unwrap()], label))
        });
        LabeledDigraph::new(t.order(), self.labels.clone(), edges).ok()
    }
}

/// `N_r(B)` with its induced labeled-digraph structure. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    radius: usize,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    graph: LabeledDigraph,
    distance: Vec<usize>,
}

impl CayleyBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn graph(&self) -> &LabeledDigraph {
        &self.graph
    }

    /// Distance from the identity of each element, by position.
    pub fn distances(&self) -> &[usize] {
        &self.distance
    }

    /// Number of leading elements lying in `N_s(B)`, for `s <= radius`.
    pub fn prefix_len(&self, s: usize) -> usize {
        self.distance.partition_point(|&d| d <= s)
    }
}
