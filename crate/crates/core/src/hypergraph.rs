//! Two-class, `k`-uniform hypergraphs: node labels, typed degrees, and
//! edge-type counts.
//!
//! Hyperedges form a *multiset*: repeated member sets are counted with
//! multiplicity, since scores are count ratios and real group data contains
//! repeated groups. Values are immutable after construction, so reads are safe
//! from any number of threads.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::rational::binomial;

/// Opaque node identifier. Ids are arbitrary non-empty strings; no integer
/// contiguity is assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId(s)
    }
}

/// One of the two node classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    A,
    B,
}

impl ClassLabel {
    pub fn other(self) -> Self {
        match self {
            ClassLabel::A => ClassLabel::B,
            ClassLabel::B => ClassLabel::A,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::A => "A",
            ClassLabel::B => "B",
        }
    }

    pub const BOTH: [ClassLabel; 2] = [ClassLabel::A, ClassLabel::B];
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("SizeMismatch: edge {edge} has {size} members, expected {expected}")]
    SizeMismatch {
        edge: usize,
        size: usize,
        expected: usize,
    },
    #[error("DuplicateMember: node '{node}' appears more than once in edge {edge}")]
    DuplicateMember { edge: usize, node: String },
    #[error("UnlabeledNode: node '{0}' has no class label")]
    UnlabeledNode(String),
    #[error("UnknownNode: node '{0}' is not part of the hypergraph")]
    UnknownNode(String),
    #[error("DuplicateNodeId: node id '{0}' is listed more than once")]
    DuplicateNodeId(String),
    #[error("EmptyNodeId: node ids must be non-empty")]
    EmptyNodeId,
    #[error("InvalidK: k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("FocalLabelAbsent: label '{0}' does not occur in the input")]
    FocalLabelAbsent(String),
}

/// A size-`k` group of distinct nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperedge {
    members: Vec<NodeId>,
}

impl Hyperedge {
    pub fn members(&self) -> &[NodeId] {
        &self.members
    }
}

/// Immutable two-class `k`-uniform hypergraph.
///
/// Every edge has exactly `k` distinct members and every member carries a
/// class label. Nodes that appear in no edge are still part of the node set
/// (class sizes include them).
#[derive(Clone, Debug)]
pub struct TwoClassHypergraph {
    k: usize,
    ids: Vec<NodeId>,
    labels: Vec<ClassLabel>,
    index: HashMap<String, u32>,
    /// Sorted internal member indices, one entry per edge (multiset).
    edges: Vec<Box<[u32]>>,
    class_counts: [usize; 2],
}

impl TwoClassHypergraph {
    /// Builds and validates a hypergraph from labeled nodes and an edge
    /// multiset. Edge members must be among the labeled nodes.
    pub fn new(
        nodes: impl IntoIterator<Item = (NodeId, ClassLabel)>,
        edges: impl IntoIterator<Item = Vec<NodeId>>,
        k: usize,
    ) -> Result<Self, HypergraphError> {
        if k == 0 {
            return Err(HypergraphError::InvalidK(k));
        }
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut class_counts = [0usize; 2];
        for (id, label) in nodes {
            if id.as_str().is_empty() {
                return Err(HypergraphError::EmptyNodeId);
            }
            if index.contains_key(id.as_str()) {
                return Err(HypergraphError::DuplicateNodeId(id.as_str().to_string()));
            }
            index.insert(id.as_str().to_string(), ids.len() as u32);
            class_counts[label as usize] += 1;
            ids.push(id);
            labels.push(label);
        }

        let mut stored = Vec::new();
        for (edge_no, edge) in edges.into_iter().enumerate() {
            if edge.len() != k {
                return Err(HypergraphError::SizeMismatch {
                    edge: edge_no,
                    size: edge.len(),
                    expected: k,
                });
            }
            let mut members = Vec::with_capacity(k);
            for node in &edge {
                match index.get(node.as_str()) {
                    Some(&i) => members.push(i),
                    None => {
                        return Err(HypergraphError::UnlabeledNode(node.as_str().to_string()))
                    }
                }
            }
            members.sort_unstable();
            for pair in members.windows(2) {
                if pair[0] == pair[1] {
                    return Err(HypergraphError::DuplicateMember {
                        edge: edge_no,
                        node: ids[pair[0] as usize].as_str().to_string(),
                    });
                }
            }
            stored.push(members.into_boxed_slice());
        }

        Ok(TwoClassHypergraph {
            k,
            ids,
            labels,
            index,
            edges: stored,
            class_counts,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn class_size(&self, class: ClassLabel) -> usize {
        self.class_counts[class as usize]
    }

    pub fn label_of(&self, id: &NodeId) -> Option<ClassLabel> {
        self.index.get(id.as_str()).map(|&i| self.labels[i as usize])
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&NodeId, ClassLabel)> {
        self.ids.iter().zip(self.labels.iter().copied())
    }

    /// Members of edge `e`, in sorted internal order.
    pub fn edge(&self, e: usize) -> Hyperedge {
        Hyperedge {
            members: self.edges[e]
                .iter()
                .map(|&i| self.ids[i as usize].clone())
                .collect(),
        }
    }

    pub fn edge_member_ids(&self, e: usize) -> impl Iterator<Item = &NodeId> {
        self.edges[e].iter().map(|&i| &self.ids[i as usize])
    }

    /// Number of class-A members of edge `e` (its absolute type).
    pub fn edge_type(&self, e: usize) -> usize {
        self.edges[e]
            .iter()
            .filter(|&&i| self.labels[i as usize] == ClassLabel::A)
            .count()
    }

    /// Re-checks the structural invariants: every edge has size `k`, no
    /// member repeats within an edge, and every member is labeled. Holds by
    /// construction, but callable as an explicit check.
    pub fn validate(&self) -> Result<(), HypergraphError> {
        if self.k == 0 {
            return Err(HypergraphError::InvalidK(self.k));
        }
        for (edge_no, edge) in self.edges.iter().enumerate() {
            if edge.len() != self.k {
                return Err(HypergraphError::SizeMismatch {
                    edge: edge_no,
                    size: edge.len(),
                    expected: self.k,
                });
            }
            for pair in edge.windows(2) {
                if pair[0] == pair[1] {
                    return Err(HypergraphError::DuplicateMember {
                        edge: edge_no,
                        node: self.ids[pair[0] as usize].as_str().to_string(),
                    });
                }
            }
            for &i in edge.iter() {
                if (i as usize) >= self.labels.len() {
                    return Err(HypergraphError::UnlabeledNode(format!("#{i}")));
                }
            }
        }
        Ok(())
    }

    /// Counts edges by absolute type: entry `t` is the number of edges with
    /// exactly `t` class-A members, multiplicities included.
    pub fn edge_type_counts(&self) -> EdgeTypeCounts {
        let mut m = vec![0u64; self.k + 1];
        for e in 0..self.edges.len() {
            m[self.edge_type(e)] += 1;
        }
        EdgeTypeCounts::from_u64(m).expect("k >= 1 by construction")
    }

    /// Typed degrees of one node: entry `t` counts incident edges with
    /// exactly `t` members from the node's own class (the node included).
    pub fn typed_degrees(&self, node: &NodeId) -> Result<TypedDegree, HypergraphError> {
        let &i = self
            .index
            .get(node.as_str())
            .ok_or_else(|| HypergraphError::UnknownNode(node.as_str().to_string()))?;
        let label = self.labels[i as usize];
        let mut d = vec![0u64; self.k];
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.contains(&i) {
                let t_a = self.edge_type(e);
                let t_own = match label {
                    ClassLabel::A => t_a,
                    ClassLabel::B => self.k - t_a,
                };
                // t_own >= 1 because the node itself is a member.
                d[t_own - 1] += 1;
            }
        }
        Ok(TypedDegree {
            node: node.clone(),
            d,
        })
    }

    /// Typed degrees for every node in a single pass over the edges.
    pub fn all_typed_degrees(&self) -> Vec<TypedDegree> {
        let mut per_node = vec![vec![0u64; self.k]; self.ids.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            let t_a = self.edge_type(e);
            for &i in edge.iter() {
                let t_own = match self.labels[i as usize] {
                    ClassLabel::A => t_a,
                    ClassLabel::B => self.k - t_a,
                };
                per_node[i as usize][t_own - 1] += 1;
            }
        }
        self.ids
            .iter()
            .zip(per_node)
            .map(|(id, d)| TypedDegree {
                node: id.clone(),
                d,
            })
            .collect()
    }

    /// Class-A share of the node set, `|A| / n`, as an exact rational.
    pub fn alpha(&self) -> crate::rational::Rational {
        crate::rational::rat(self.class_counts[0] as i64, self.ids.len() as i64)
    }
}

/// Projects multi-label node data onto two classes: nodes carrying the focal
/// label map to class A, all others to class B.
pub fn project_to_binary(
    labels: &[(NodeId, String)],
    focal: &str,
) -> Result<Vec<(NodeId, ClassLabel)>, HypergraphError> {
    if !labels.iter().any(|(_, l)| l == focal) {
        return Err(HypergraphError::FocalLabelAbsent(focal.to_string()));
    }
    Ok(labels
        .iter()
        .map(|(id, l)| {
            let class = if l == focal {
                ClassLabel::A
            } else {
                ClassLabel::B
            };
            (id.clone(), class)
        })
        .collect())
}

/// Typed degree vector of one node, indexed `t = 1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedDegree {
    pub node: NodeId,
    d: Vec<u64>,
}

impl TypedDegree {
    /// Number of incident edges with exactly `t` same-class members.
    pub fn of_type(&self, t: usize) -> u64 {
        assert!(t >= 1 && t <= self.d.len(), "type out of range");
        self.d[t - 1]
    }

    pub fn total(&self) -> u64 {
        self.d.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }
}

/// Absolute edge-type counts `(m_0, ..., m_k)`: entry `t` counts edges with
/// exactly `t` class-A members. Counts are big integers so that synthetic
/// witnesses (complete hypergraphs on large node sets) stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeTypeCounts {
    m: Vec<BigUint>,
}

impl EdgeTypeCounts {
    pub fn new(m: Vec<BigUint>) -> Result<Self, HypergraphError> {
        if m.len() < 2 {
            return Err(HypergraphError::InvalidK(m.len().saturating_sub(1)));
        }
        Ok(EdgeTypeCounts { m })
    }

    pub fn from_u64(m: Vec<u64>) -> Result<Self, HypergraphError> {
        Self::new(m.into_iter().map(BigUint::from).collect())
    }

    pub fn k(&self) -> usize {
        self.m.len() - 1
    }

    pub fn count(&self, t: usize) -> &BigUint {
        &self.m[t]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.m
    }

    /// Total number of edges, `sum_t m_t`.
    pub fn total(&self) -> BigUint {
        self.m.iter().sum()
    }

    /// Count seen from a class: `m_t(A) = m_t`, `m_t(B) = m_{k-t}`.
    pub fn class_count(&self, class: ClassLabel, t: usize) -> &BigUint {
        match class {
            ClassLabel::A => &self.m[t],
            ClassLabel::B => &self.m[self.k() - t],
        }
    }

    /// Class degree `D(X) = sum_{i=1..k} i * m_i(X)`.
    pub fn class_degree(&self, class: ClassLabel) -> BigUint {
        (1..=self.k())
            .map(|i| self.class_count(class, i) * BigUint::from(i))
            .sum()
    }

    /// Number of edges containing at least one class-`X` node,
    /// `sum_{i=1..k} m_i(X)`.
    pub fn class_edge_total(&self, class: ClassLabel) -> BigUint {
        (1..=self.k()).map(|i| self.class_count(class, i)).sum()
    }

    /// Counts with the class roles swapped (`m'_t = m_{k-t}`).
    pub fn reversed(&self) -> Self {
        let mut m = self.m.clone();
        m.reverse();
        EdgeTypeCounts { m }
    }

    /// Counts of the complete `k`-uniform hypergraph on `n_a + n_b` nodes:
    /// `m_t = C(n_a, t) * C(n_b, k - t)`.
    pub fn complete(n_a: u64, n_b: u64, k: usize) -> Result<Self, HypergraphError> {
        if k == 0 {
            return Err(HypergraphError::InvalidK(k));
        }
        let m = (0..=k)
            .map(|t| binomial(n_a, t as u64) * binomial(n_b, (k - t) as u64))
            .collect();
        Self::new(m)
    }

    /// Counts proportional to the symmetric binomial mass: `m_t = C(k, t)`.
    pub fn symmetric_binomial(k: usize) -> Result<Self, HypergraphError> {
        if k == 0 {
            return Err(HypergraphError::InvalidK(k));
        }
        Self::new((0..=k).map(|t| binomial(k as u64, t as u64)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.m.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(s: &str) -> NodeId {
        NodeId::from(s)
    }

    /// Three labeled A-nodes, two B-nodes, edges {a1 a2 a3, a1 a2 b1, a1 b1 b2}.
    pub(crate) fn example_hypergraph() -> TwoClassHypergraph {
        let nodes = [
            (node("a1"), ClassLabel::A),
            (node("a2"), ClassLabel::A),
            (node("a3"), ClassLabel::A),
            (node("b1"), ClassLabel::B),
            (node("b2"), ClassLabel::B),
        ];
        let edges = vec![
            vec![node("a1"), node("a2"), node("a3")],
            vec![node("a1"), node("a2"), node("b1")],
            vec![node("a1"), node("b1"), node("b2")],
        ];
        TwoClassHypergraph::new(nodes, edges, 3).unwrap()
    }

    #[test]
    fn valid_hypergraph_accepted() {
        let h = example_hypergraph();
        assert_eq!(h.k(), 3);
        assert_eq!(h.node_count(), 5);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.class_size(ClassLabel::A), 3);
        assert_eq!(h.class_size(ClassLabel::B), 2);
        h.validate().unwrap();
    }

    #[test]
    fn duplicate_member_rejected() {
        let nodes = [(node("a1"), ClassLabel::A), (node("a2"), ClassLabel::A)];
        let err = TwoClassHypergraph::new(
            nodes,
            vec![vec![node("a1"), node("a1"), node("a2")]],
            3,
        )
        .unwrap_err();
        assert!(matches!(err, HypergraphError::DuplicateMember { .. }));
    }

    #[test]
    fn size_mismatch_rejected() {
        let nodes = [(node("a1"), ClassLabel::A), (node("a2"), ClassLabel::A)];
        let err =
            TwoClassHypergraph::new(nodes, vec![vec![node("a1"), node("a2")]], 3).unwrap_err();
        assert_eq!(
            err,
            HypergraphError::SizeMismatch {
                edge: 0,
                size: 2,
                expected: 3
            }
        );
    }

    #[test]
    fn unlabeled_member_rejected() {
        let nodes = [(node("a1"), ClassLabel::A), (node("a2"), ClassLabel::A)];
        let err = TwoClassHypergraph::new(
            nodes,
            vec![vec![node("a1"), node("a2"), node("zz")]],
            3,
        )
        .unwrap_err();
        assert_eq!(err, HypergraphError::UnlabeledNode("zz".to_string()));
    }

    #[test]
    fn edge_type_counts_example() {
        let h = example_hypergraph();
        let counts = h.edge_type_counts();
        let m: Vec<u64> = counts
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect();
        assert_eq!(m, vec![0, 1, 1, 1]);
        assert_eq!(counts.total(), BigUint::from(3u32));
    }

    #[test]
    fn empty_edge_multiset_counts_zero() {
        let nodes = [(node("a1"), ClassLabel::A)];
        let h = TwoClassHypergraph::new(nodes, Vec::new(), 3).unwrap();
        assert!(h.edge_type_counts().is_empty());
    }

    #[test]
    fn complete_counts_match_brute_force() {
        // Enumerate all 3-subsets of {a1,a2,a3,b1,b2} and tally types.
        let ids = ["a1", "a2", "a3", "b1", "b2"];
        let mut m = vec![0u64; 4];
        for i in 0..5 {
            for j in (i + 1)..5 {
                for l in (j + 1)..5 {
                    let t = [i, j, l].iter().filter(|&&x| x < 3).count();
                    m[t] += 1;
                }
            }
        }
        assert_eq!(m, vec![0, 3, 6, 1]);
        let counts = EdgeTypeCounts::complete(3, 2, 3).unwrap();
        let got: Vec<u64> = counts
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect();
        assert_eq!(got, m);
        let _ = ids;
    }

    #[test]
    fn typed_degrees_example() {
        let h = example_hypergraph();
        let b1 = h.typed_degrees(&node("b1")).unwrap();
        assert_eq!((b1.of_type(1), b1.of_type(2), b1.of_type(3)), (1, 1, 0));
        let a1 = h.typed_degrees(&node("a1")).unwrap();
        assert_eq!((a1.of_type(1), a1.of_type(2), a1.of_type(3)), (1, 1, 1));
        assert_eq!(a1.total(), 3);
        let a3 = h.typed_degrees(&node("a3")).unwrap();
        assert_eq!(a3.total(), 1);
        assert!(h.typed_degrees(&node("nope")).is_err());
    }

    #[test]
    fn isolated_node_has_zero_degrees() {
        let nodes = [(node("a1"), ClassLabel::A), (node("x"), ClassLabel::B)];
        let h = TwoClassHypergraph::new(nodes, Vec::new(), 2).unwrap();
        let d = h.typed_degrees(&node("x")).unwrap();
        assert_eq!(d.total(), 0);
    }

    #[test]
    fn projection_to_binary() {
        let labels = vec![
            (node("x"), "red".to_string()),
            (node("y"), "blue".to_string()),
            (node("z"), "green".to_string()),
        ];
        let projected = project_to_binary(&labels, "red").unwrap();
        assert_eq!(projected[0].1, ClassLabel::A);
        assert_eq!(projected[1].1, ClassLabel::B);
        assert_eq!(projected[2].1, ClassLabel::B);

        let all_focal = vec![(node("x"), "red".to_string()), (node("y"), "red".to_string())];
        let projected = project_to_binary(&all_focal, "red").unwrap();
        assert!(projected.iter().all(|(_, c)| *c == ClassLabel::A));

        let err = project_to_binary(&labels, "purple").unwrap_err();
        assert_eq!(err, HypergraphError::FocalLabelAbsent("purple".to_string()));
    }

    #[test]
    fn degree_edge_identity_on_example() {
        // sum_{v in X} d_t(v) = t * m_t(X) for each class and t.
        let h = example_hypergraph();
        let counts = h.edge_type_counts();
        let degrees = h.all_typed_degrees();
        for class in ClassLabel::BOTH {
            for t in 1..=h.k() {
                let lhs: u64 = degrees
                    .iter()
                    .filter(|d| h.label_of(&d.node) == Some(class))
                    .map(|d| d.of_type(t))
                    .sum();
                let rhs = counts.class_count(class, t) * BigUint::from(t);
                assert_eq!(BigUint::from(lhs), rhs);
            }
        }
    }
}
