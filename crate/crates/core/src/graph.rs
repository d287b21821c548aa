//! Coxeter graphs: named families, explicit edge lists, validation.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::quadring::QuadScalar;

/// The label `m_ij` of a pair of generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Finite(u32),
    Infinite,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Finite(m) => write!(f, "{m}"),
            EdgeLabel::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    rank: usize,
    labels: Vec<EdgeLabel>,
    name: Option<String>,
}

impl CoxeterGraph {
    /// Builds a graph from 0-based `(i, j, m)` edges; omitted pairs commute.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, EdgeLabel)], name: Option<String>) -> Result<CoxeterGraph> {
        if rank == 0 {
            return Err(Error::MalformedGraph("rank must be positive".into()));
        }
        let mut labels = vec![EdgeLabel::Finite(2); rank * rank];
        for i in 0..rank {
            labels[i * rank + i] = EdgeLabel::Finite(1);
        }
        for &(i, j, m) in edges {
            if i >= rank || j >= rank {
                return Err(Error::MalformedGraph(format!(
                    "edge ({}, {}) outside rank {rank}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::MalformedGraph(format!("loop at node {}", i + 1)));
            }
            labels[i * rank + j] = m;
            labels[j * rank + i] = m;
        }
        let graph = CoxeterGraph { rank, labels, name };
        graph.validate()?;
        Ok(graph)
    }

    pub fn from_matrix(matrix: Vec<Vec<EdgeLabel>>, name: Option<String>) -> Result<CoxeterGraph> {
        let rank = matrix.len();
        if rank == 0 || matrix.iter().any(|row| row.len() != rank) {
            return Err(Error::MalformedGraph("Coxeter matrix must be square".into()));
        }
        let graph = CoxeterGraph {
            rank,
            labels: matrix.into_iter().flatten().collect(),
            name,
        };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            if self.label(i, i) != EdgeLabel::Finite(1) {
                return Err(Error::MalformedGraph(format!(
                    "diagonal entry m_{0}{0} must be 1",
                    i + 1
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = self.label(i, j);
                if m != self.label(j, i) {
                    return Err(Error::MalformedGraph(format!(
                        "labels m_{}{} and m_{}{} differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if let EdgeLabel::Finite(k) = m {
                    if k < 2 {
                        return Err(Error::MalformedGraph(format!(
                            "off-diagonal label m_{}{} = {k} is below 2",
                            i + 1,
                            j + 1
                        )));
                    }
                }
                QuadScalar::from_label(m)?;
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> EdgeLabel {
        self.labels[i * self.rank + j]
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("custom-rank{}", self.rank))
    }

    /// 1-based `(i, j, m)` for every non-commuting pair.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeLabel)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let m = self.label(i, j);
                if m != EdgeLabel::Finite(2) {
                    out.push((i + 1, j + 1, m));
                }
            }
        }
        out
    }

    /// Hex digest of the label matrix; the name does not enter the hash.
    pub fn canonical_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("rank={};", self.rank));
        for m in &self.labels {
            hasher.update(format!("{m},"));
        }
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .edges()
            .into_iter()
            .map(|(i, j, m)| match m {
                EdgeLabel::Finite(k) => serde_json::json!([i, j, k]),
                EdgeLabel::Infinite => serde_json::json!([i, j, "inf"]),
            })
            .collect();
        serde_json::json!({ "rank": self.rank, "edges": edges })
    }
}

#[derive(Debug, Deserialize, Serialize)]
struct GraphDocument {
    rank: usize,
    #[serde(default)]
    edges: Vec<(usize, usize, LabelValue)>,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum LabelValue {
    Int(u32),
    Text(String),
}

impl LabelValue {
    fn to_label(&self) -> Result<EdgeLabel> {
        match self {
            LabelValue::Int(m) => Ok(EdgeLabel::Finite(*m)),
            LabelValue::Text(s) => match s.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "oo" | "∞" => Ok(EdgeLabel::Infinite),
                other => other
                    .parse::<u32>()
                    .map(EdgeLabel::Finite)
                    .map_err(|_| Error::MalformedGraph(format!("bad edge label {s:?}"))),
            },
        }
    }
}

fn path(rank: usize, labels: &[u32]) -> Vec<(usize, usize, EdgeLabel)> {
    (0..rank - 1)
        .map(|i| (i, i + 1, EdgeLabel::Finite(labels.get(i).copied().unwrap_or(3))))
        .collect()
}

fn parse_rank(s: &str, what: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::MalformedGraph(format!("bad rank in {what:?}")))
}

fn parse_label_list(inner: &str) -> Result<Vec<EdgeLabel>> {
    inner
        .split(',')
        .map(|t| LabelValue::Text(t.trim().to_string()).to_label())
        .collect()
}

/// Parses a named family (`A4`, `B3`, `D5`, `F4`, `H3`, `I2(6)`, `affineA2`,
/// `tri(3,3,4)`, ...) or a JSON document `{"rank": n, "edges": [[i, j, m], ...]}`
/// with 1-based nodes.
pub fn parse_graph(spec: &str) -> Result<CoxeterGraph> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        let doc: GraphDocument =
            serde_json::from_str(spec).map_err(|e| Error::MalformedGraph(format!("invalid graph document: {e}")))?;
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (i, j, m) in &doc.edges {
            if *i == 0 || *j == 0 {
                return Err(Error::MalformedGraph("node indices are 1-based".into()));
            }
            edges.push((i - 1, j - 1, m.to_label()?));
        }
        return CoxeterGraph::from_edges(doc.rank, &edges, doc.name);
    }
    let name = Some(spec.to_string());
    let lower = spec.to_ascii_lowercase();
    let fin = EdgeLabel::Finite;

    if let Some(rest) = lower.strip_prefix("i2(").and_then(|r| r.strip_suffix(')')) {
        let m = LabelValue::Text(rest.to_string()).to_label()?;
        return CoxeterGraph::from_edges(2, &[(0, 1, m)], name);
    }
    if let Some(rest) = lower.strip_prefix("tri(").and_then(|r| r.strip_suffix(')')) {
        let labels = parse_label_list(rest)?;
        if labels.len() != 3 {
            return Err(Error::MalformedGraph("tri(a,b,c) takes three labels".into()));
        }
        return CoxeterGraph::from_edges(3, &[(0, 1, labels[0]), (1, 2, labels[1]), (0, 2, labels[2])], name);
    }
    if let Some(rest) = lower.strip_prefix("universal") {
        let rest = rest.trim_start_matches('(').trim_end_matches(')');
        let n = parse_rank(rest, spec)?;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j, EdgeLabel::Infinite));
            }
        }
        return CoxeterGraph::from_edges(n, &edges, name);
    }
    match lower.as_str() {
        "d4-fig1" => return CoxeterGraph::from_edges(4, &[(0, 2, fin(3)), (1, 2, fin(3)), (2, 3, fin(3))], name),
        "tritail" => {
            return CoxeterGraph::from_edges(
                4,
                &[(0, 1, fin(3)), (1, 2, fin(3)), (0, 2, fin(3)), (2, 3, fin(3))],
                name,
            )
        }
        "affineb2" | "affinec2" => {
            return CoxeterGraph::from_edges(3, &path(3, &[4, 4]), name);
        }
        "affineg2" => return CoxeterGraph::from_edges(3, &path(3, &[3, 6]), name),
        "f4" => return CoxeterGraph::from_edges(4, &path(4, &[3, 4, 3]), name),
        "g2" => return CoxeterGraph::from_edges(2, &path(2, &[6]), name),
        "h3" => return CoxeterGraph::from_edges(3, &path(3, &[5, 3]), name),
        "h4" => return CoxeterGraph::from_edges(4, &path(4, &[5, 3, 3]), name),
        _ => {}
    }
    if let Some(rest) = lower.strip_prefix("affinea") {
        let n = parse_rank(rest, spec)?;
        if n == 0 {
            return Err(Error::MalformedGraph("affineA needs n >= 1".into()));
        }
        if n == 1 {
            return CoxeterGraph::from_edges(2, &[(0, 1, EdgeLabel::Infinite)], name);
        }
        let mut edges = path(n + 1, &[]);
        edges.push((0, n, fin(3)));
        return CoxeterGraph::from_edges(n + 1, &edges, name);
    }
    let (family, rest) = lower.split_at(1);
    let n = parse_rank(rest, spec)?;
    match family {
        "a" if n >= 1 => {
            if n == 1 {
                CoxeterGraph::from_edges(1, &[], name)
            } else {
                CoxeterGraph::from_edges(n, &path(n, &[]), name)
            }
        }
        "b" | "c" if n >= 2 => {
            let mut labels = vec![3; n - 1];
            labels[0] = 4;
            CoxeterGraph::from_edges(n, &path(n, &labels), name)
        }
        "d" if n >= 4 => {
            let mut edges = path(n - 1, &[]);
            edges.push((n - 3, n - 1, fin(3)));
            CoxeterGraph::from_edges(n, &edges, name)
        }
        "e" if (6..=8).contains(&n) => {
            // Bourbaki numbering: 1-3-4-5-..., with 2 attached to 4.
            let mut edges = vec![(0, 2, fin(3)), (1, 3, fin(3))];
            for i in 2..n - 1 {
                edges.push((i, i + 1, fin(3)));
            }
            CoxeterGraph::from_edges(n, &edges, name)
        }
        _ => Err(Error::MalformedGraph(format!("unknown Coxeter graph {spec:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a() {
        let g = parse_graph("A3").unwrap();
        assert_eq!(g.rank(), 3);
        assert_eq!(g.label(0, 1), EdgeLabel::Finite(3));
        assert_eq!(g.label(1, 2), EdgeLabel::Finite(3));
        assert_eq!(g.label(0, 2), EdgeLabel::Finite(2));
    }

    #[test]
    fn type_b() {
        let g = parse_graph("B3").unwrap();
        assert_eq!(g.label(0, 1), EdgeLabel::Finite(4));
        assert_eq!(g.label(1, 2), EdgeLabel::Finite(3));
    }

    #[test]
    fn triangle_and_json_agree() {
        let named = parse_graph("tri(3,3,4)").unwrap();
        let json = parse_graph(r#"{"rank": 3, "edges": [[1,2,3],[2,3,3],[1,3,4]]}"#).unwrap();
        assert_eq!(named.canonical_hash(), json.canonical_hash());
        assert_eq!(named.label(0, 2), EdgeLabel::Finite(4));
    }

    #[test]
    fn json_infinite_labels() {
        let g = parse_graph(r#"{"rank": 2, "edges": [[1,2,"inf"]]}"#).unwrap();
        assert_eq!(g.label(0, 1), EdgeLabel::Infinite);
        let u = parse_graph("universal(3)").unwrap();
        assert_eq!(u.label(0, 2), EdgeLabel::Infinite);
    }

    #[test]
    fn d_and_star_graphs() {
        let d4 = parse_graph("D4").unwrap();
        assert_eq!(d4.edges().len(), 3);
        assert_eq!(d4.label(1, 3), EdgeLabel::Finite(3));
        let fig = parse_graph("D4-fig1").unwrap();
        assert_eq!(fig.label(0, 2), EdgeLabel::Finite(3));
        assert_eq!(fig.label(1, 2), EdgeLabel::Finite(3));
        assert_eq!(fig.label(2, 3), EdgeLabel::Finite(3));
        assert_eq!(fig.label(0, 1), EdgeLabel::Finite(2));
    }

    #[test]
    fn affine() {
        let a2 = parse_graph("affineA2").unwrap();
        assert_eq!(a2.edges().len(), 3);
        let g2 = parse_graph("affineG2").unwrap();
        assert_eq!(g2.label(1, 2), EdgeLabel::Finite(6));
        let i26 = parse_graph("I2(6)").unwrap();
        assert_eq!(i26.label(0, 1), EdgeLabel::Finite(6));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_graph("Q7"), Err(Error::MalformedGraph(_))));
        assert!(matches!(parse_graph("I2(7)"), Err(Error::Quad(_))));
        assert!(parse_graph(r#"{"rank": 2, "edges": [[0,1,3]]}"#).is_err());
        assert!(parse_graph(r#"{"rank": 2, "edges": [[1,3,3]]}"#).is_err());
        assert!(parse_graph(r#"{"rank": 2, "edges": [[1,2,1]]}"#).is_err());
        assert!(parse_graph("{not json").is_err());
    }
}
