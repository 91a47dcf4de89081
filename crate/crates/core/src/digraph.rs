//! Finite B-labeled digraphs in which every label acts as a partial injection.
//!
//! Out- and in-adjacency are stored as flat `vertex * |B| + label` tables, so
//! following a labeled edge is a single lookup. Rooted ball isomorphism then
//! reduces to a walk: the root is pinned and every labeled edge of the ball
//! determines where its endpoint must go.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::groups::CayleyBall;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("label {label} out of range (alphabet has {count} labels)")]
    LabelOutOfRange { label: usize, count: usize },
    #[error("vertex {vertex} has two outgoing edges labeled {label}")]
    DuplicateOut { vertex: usize, label: usize },
    #[error("vertex {vertex} has two incoming edges labeled {label}")]
    DuplicateIn { vertex: usize, label: usize },
    #[error("alphabet size mismatch: graph has {graph}, expected {expected}")]
    AlphabetMismatch { graph: usize, expected: usize },
    #[error("graph file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn all(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Rejects any index `>= n`.
    pub fn checked(vertices: Vec<usize>, n: usize) -> Result<Self, DigraphError> {
        if let Some(&vertex) = vertices.iter().find(|&&v| v >= n) {
            return Err(DigraphError::VertexOutOfRange { vertex, count: n });
        }
        Ok(Self::new(vertices))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of `v` within the sorted set.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    vertex_count: usize,
    labels: Vec<String>,
    out_map: Vec<Option<usize>>,
    in_map: Vec<Option<usize>>,
}

impl LabeledDigraph {
    /// Builds a graph from `(src, dst, label)` triples.
    ///
    /// Repeating an identical triple is harmless; two distinct edges sharing
    /// a (source, label) or (target, label) pair are rejected.
    pub fn new(
        vertex_count: usize,
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, DigraphError> {
        let width = labels.len();
        let mut out_map = vec![None; vertex_count * width];
        let mut in_map = vec![None; vertex_count * width];
        for (src, dst, label) in edges {
            for v in [src, dst] {
                if v >= vertex_count {
                    return Err(DigraphError::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            if label >= width {
                return Err(DigraphError::LabelOutOfRange {
                    label,
                    count: width,
                });
            }
            let (o, i) = (src * width + label, dst * width + label);
            match out_map[o] {
                None => out_map[o] = Some(dst),
                Some(t) if t == dst => continue,
                Some(_) => return Err(DigraphError::DuplicateOut { vertex: src, label }),
            }
            match in_map[i] {
                None => in_map[i] = Some(src),
                Some(_) => return Err(DigraphError::DuplicateIn { vertex: dst, label }),
            }
        }
        Ok(Self {
            vertex_count,
            labels,
            out_map,
            in_map,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn alphabet(&self) -> &[String] {
        &self.labels
    }

    pub fn alphabet_size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn out_neighbor(&self, v: usize, label: usize) -> Option<usize> {
        self.out_map[v * self.labels.len() + label]
    }

    #[inline]
    pub fn in_neighbor(&self, v: usize, label: usize) -> Option<usize> {
        self.in_map[v * self.labels.len() + label]
    }

    /// All edges, ordered by (source, label).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let width = self.labels.len();
        self.out_map
            .iter()
            .enumerate()
            .filter_map(move |(k, t)| t.map(|dst| (k / width, dst, k % width)))
    }

    pub fn edge_count(&self) -> usize {
        self.out_map.iter().filter(|t| t.is_some()).count()
    }

    fn check_vertex(&self, v: usize) -> Result<(), DigraphError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(DigraphError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }

    /// BFS from `v` along out-edges, stopping at depth `radius`.
    /// Returns `(vertex, distance)` in visit order.
    pub(crate) fn bfs_within(&self, v: usize, radius: usize) -> Vec<(usize, usize)> {
        let mut seen = HashSet::from([v]);
        let mut order = vec![(v, 0)];
        let mut queue = VecDeque::from([(v, 0)]);
        while let Some((u, d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for label in 0..self.labels.len() {
                if let Some(w) = self.out_neighbor(u, label) {
                    if seen.insert(w) {
                        order.push((w, d + 1));
                        queue.push_back((w, d + 1));
                    }
                }
            }
        }
        order
    }

    /// Directed distances from `v` to every vertex (`usize::MAX` if unreachable).
    pub(crate) fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for label in 0..self.labels.len() {
                if let Some(x) = self.out_neighbor(u, label) {
                    if dist[x] == usize::MAX {
                        dist[x] = dist[u] + 1;
                        queue.push_back(x);
                    }
                }
            }
        }
        dist
    }

    /// Directed distance; `None` means unreachable.
    pub fn distance(&self, v: usize, w: usize) -> Result<Option<usize>, DigraphError> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w {
            return Ok(Some(0));
        }
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for label in 0..self.labels.len() {
                if let Some(x) = self.out_neighbor(u, label) {
                    if dist[x] == usize::MAX {
                        dist[x] = dist[u] + 1;
                        if x == w {
                            return Ok(Some(dist[x]));
                        }
                        queue.push_back(x);
                    }
                }
            }
        }
        Ok(None)
    }

    /// `N_n(v)`: vertices at directed distance at most `n` from `v`.
    pub fn neighborhood(&self, v: usize, n: usize) -> Result<VertexSet, DigraphError> {
        self.check_vertex(v)?;
        Ok(self.bfs_within(v, n).into_iter().map(|(u, _)| u).collect())
    }

    /// The rooted labeled isomorphism `ball → N_r(v)` sending the identity to `v`,
    /// if one exists. Entry `i` of the result is the image of `ball.elements()[i]`.
    pub fn ball_isomorphism(
        &self,
        v: usize,
        ball: &CayleyBall,
    ) -> Result<Option<Vec<usize>>, DigraphError> {
        self.check_vertex(v)?;
        let bg = ball.graph();
        if bg.alphabet_size() != self.alphabet_size() {
            return Err(DigraphError::AlphabetMismatch {
                graph: self.alphabet_size(),
                expected: bg.alphabet_size(),
            });
        }
        let size = bg.vertex_count();
        let width = self.alphabet_size();
        let mut map = vec![usize::MAX; size];
        map[0] = v;
        // Ball elements are in BFS order, so each element is placed by an
        // earlier one before its own out-edges are followed.
        for i in 0..size {
            let src = map[i];
            debug_assert_ne!(src, usize::MAX);
            for label in 0..width {
                let Some(j) = bg.out_neighbor(i, label) else {
                    continue;
                };
                let Some(t) = self.out_neighbor(src, label) else {
                    return Ok(None);
                };
                if map[j] == usize::MAX {
                    map[j] = t;
                } else if map[j] != t {
                    return Ok(None);
                }
            }
        }
        let mut preimage = HashMap::with_capacity(size);
        for (i, &u) in map.iter().enumerate() {
            if preimage.insert(u, i).is_some() {
                return Ok(None);
            }
        }
        if self.bfs_within(v, ball.radius()).len() != size {
            return Ok(None);
        }
        for (i, &u) in map.iter().enumerate() {
            for label in 0..width {
                if let Some(w) = self.out_neighbor(u, label) {
                    if let Some(&j) = preimage.get(&w) {
                        if bg.out_neighbor(i, label) != Some(j) {
                            return Ok(None);
                        }
                    }
                }
            }
        }
        Ok(Some(map))
    }

    /// Text form: `digraph |V| |B|` followed by `src dst label` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("digraph {} {}\n", self.vertex_count, self.alphabet_size());
        for (src, dst, label) in self.edges() {
            let _ = writeln!(s, "{src} {dst} {label}");
        }
        s
    }

    /// Parses the text form. Labels are indices into `labels`, whose length
    /// must equal the header's `|B|`. Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str, labels: Vec<String>) -> Result<Self, DigraphError> {
        let parse_err = |line: usize, message: String| DigraphError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing `digraph` header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [kw, nv, nb] = fields[..] else {
            return Err(parse_err(hline, format!("malformed header {header:?}")));
        };
        if kw != "digraph" {
            return Err(parse_err(hline, format!("expected `digraph`, found {kw:?}")));
        }
        let n: usize = nv
            .parse()
            .map_err(|e| parse_err(hline, format!("vertex count: {e}")))?;
        let b: usize = nb
            .parse()
            .map_err(|e| parse_err(hline, format!("label count: {e}")))?;
        if b != labels.len() {
            return Err(DigraphError::AlphabetMismatch {
                graph: b,
                expected: labels.len(),
            });
        }
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            match nums {
                Ok(v) if v.len() == 3 => edges.push((v[0], v[1], v[2])),
                Ok(_) => return Err(parse_err(ln, format!("expected `src dst label`, got {line:?}"))),
                Err(e) => return Err(parse_err(ln, e.to_string())),
            }
        }
        Self::new(n, labels, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupModel;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// Cycle C_n with labels (-1, 0, +1) = (0, 1, 2).
    fn cycle(n: usize) -> LabeledDigraph {
        let edges = (0..n).flat_map(|v| {
            [
                (v, (v + n - 1) % n, 0),
                (v, v, 1),
                (v, (v + 1) % n, 2),
            ]
        });
        LabeledDigraph::new(n, labels(3), edges).unwrap()
    }

    #[test]
    fn rejects_nondeterministic_labels() {
        let err = LabeledDigraph::new(3, labels(1), [(0, 1, 0), (0, 2, 0)]).unwrap_err();
        assert_eq!(err, DigraphError::DuplicateOut { vertex: 0, label: 0 });
        let err = LabeledDigraph::new(3, labels(1), [(0, 2, 0), (1, 2, 0)]).unwrap_err();
        assert_eq!(err, DigraphError::DuplicateIn { vertex: 2, label: 0 });
        assert!(LabeledDigraph::new(3, labels(1), [(0, 1, 0), (0, 1, 0)]).is_ok());
        assert!(matches!(
            LabeledDigraph::new(2, labels(1), [(0, 5, 0)]),
            Err(DigraphError::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn distance_examples() {
        let tri = LabeledDigraph::new(3, labels(1), [(0, 1, 0), (1, 2, 0), (2, 0, 0)]).unwrap();
        assert_eq!(tri.distance(1, 1).unwrap(), Some(0));
        assert_eq!(tri.distance(0, 2).unwrap(), Some(2));
        assert_eq!(tri.distance(2, 0).unwrap(), Some(1));
        let iso = LabeledDigraph::new(2, labels(1), []).unwrap();
        assert_eq!(iso.distance(0, 1).unwrap(), None);
        assert!(iso.distance(0, 2).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        let c6 = cycle(6);
        assert_eq!(c6.neighborhood(3, 0).unwrap(), VertexSet::new(vec![3]));
        assert_eq!(
            c6.neighborhood(0, 2).unwrap(),
            VertexSet::new(vec![4, 5, 0, 1, 2])
        );
        assert_eq!(c6.neighborhood(0, 3).unwrap(), VertexSet::all(6));
        assert!(c6.neighborhood(6, 1).is_err());
    }

    #[test]
    fn ball_isomorphism_examples() {
        let z = GroupModel::free_abelian(1);
        let ball = z.cayley_ball(2).unwrap();
        let own = ball.graph().ball_isomorphism(0, &ball).unwrap().unwrap();
        assert_eq!(own, (0..ball.len()).collect::<Vec<_>>());

        let c6 = cycle(6);
        for v in 0..6 {
            let map = c6.ball_isomorphism(v, &ball).unwrap().unwrap();
            for (i, g) in ball.elements().iter().enumerate() {
                let x = g.as_vector().unwrap()[0];
                assert_eq!(map[i] as i64, (v as i64 + x).rem_euclid(6));
            }
        }
        let c5 = cycle(5);
        for v in 0..5 {
            assert_eq!(c5.ball_isomorphism(v, &ball).unwrap(), None);
        }
    }

    #[test]
    fn text_format_round_trip() {
        let c4 = cycle(4);
        let text = c4.to_text();
        assert!(text.starts_with("digraph 4 3\n"));
        assert_eq!(LabeledDigraph::parse_text(&text, labels(3)).unwrap(), c4);
        assert!(matches!(
            LabeledDigraph::parse_text("digraph 2 3\n0 1\n", labels(3)),
            Err(DigraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            LabeledDigraph::parse_text("digraph 2 2\n", labels(3)),
            Err(DigraphError::AlphabetMismatch { .. })
        ));
    }
}
