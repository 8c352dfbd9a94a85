//! Undirected simple graphs, degree sequences, and influence parameter
//! vectors, plus model sampling and edge-list ingestion.
//!
//! Vertex ids are 1-based everywhere in the public API so that they line
//! up with the conventional numbering of the bundled dataset and of
//! simulation contrast pairs.

use std::collections::BTreeSet;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::math::{keyed_uniform, mix64, sigmoid};

/// An undirected simple graph on vertices 1..=t.
///
/// Invariants: no self-loops, no duplicate edges, all ids in range, and
/// edges stored as ordered pairs (i, j) with i < j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    t: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from unordered vertex pairs; pairs may come in any
    /// order and orientation, duplicates are rejected.
    pub fn new<I>(t: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if t < 2 {
            return Err(Error::TooFewVertices { t, min: 2 });
        }
        let mut edges = BTreeSet::new();
        for (a, b) in pairs {
            let (i, j) = Self::check_pair(t, a, b)?;
            edges.insert((i, j));
        }
        Ok(Self { t, edges })
    }

    fn check_pair(t: usize, a: usize, b: usize) -> Result<(usize, usize)> {
        for id in [a, b] {
            if id < 1 || id > t {
                return Err(Error::VertexOutOfRange { id, t });
            }
        }
        if a == b {
            return Err(Error::SelfLoop { id: a });
        }
        Ok((a.min(b), a.max(b)))
    }

    pub fn vertex_count(&self) -> usize {
        self.t
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Edges as (i, j) pairs with i < j, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Degree of every vertex. The sum is always twice the edge count.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d = vec![0usize; self.t];
        for &(i, j) in &self.edges {
            d[i - 1] += 1;
            d[j - 1] += 1;
        }
        DegreeSequence::new(d).expect("degrees of a valid graph are always valid")
    }

    /// Serializes to the edge-list text format accepted by
    /// [`parse_edge_list`]: a `t=<n>` header followed by one `i j` line
    /// per edge.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::with_capacity(8 + 8 * self.edges.len());
        out.push_str(&format!("t={}\n", self.t));
        for &(i, j) in &self.edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

/// Degrees of an undirected simple graph; the sufficient statistic for
/// fitting the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    d: Vec<usize>,
}

impl DegreeSequence {
    /// Validates entry bounds (each degree at most t-1) and evenness of
    /// the total.
    pub fn new(d: Vec<usize>) -> Result<Self> {
        let t = d.len();
        if t < 2 {
            return Err(Error::TooFewVertices { t, min: 2 });
        }
        for (idx, &deg) in d.iter().enumerate() {
            if deg > t - 1 {
                return Err(Error::DegreeOutOfRange { id: idx + 1, degree: deg, max: t - 1 });
            }
        }
        let sum: usize = d.iter().sum();
        if sum % 2 != 0 {
            return Err(Error::OddDegreeSum { sum });
        }
        Ok(Self { d })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Degree of vertex `id` (1-based).
    pub fn degree(&self, id: usize) -> usize {
        self.d[id - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.d
    }

    /// True when some degree sits on the boundary {0, t-1}, which forces
    /// the corresponding estimate to diverge.
    pub fn has_boundary_degree(&self) -> bool {
        let t = self.d.len();
        self.d.iter().any(|&deg| deg == 0 || deg == t - 1)
    }
}

/// Per-vertex influence parameters on the log-odds scale.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaVector {
    values: Vec<f64>,
}

impl BetaVector {
    /// All entries must be finite and there must be at least two of them.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewVertices { t: values.len(), min: 2 });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value for vertex `id` (1-based).
    pub fn get(&self, id: usize) -> f64 {
        self.values[id - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// Largest absolute entry; the scale that controls estimability.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Probability of an edge between distinct vertices i and j:
/// sigma(beta_i + beta_j), evaluated in overflow-safe form.
pub fn edge_probability(beta: &BetaVector, i: usize, j: usize) -> Result<f64> {
    let t = beta.len();
    for id in [i, j] {
        if id < 1 || id > t {
            return Err(Error::VertexOutOfRange { id, t });
        }
    }
    if i == j {
        return Err(Error::SelfLoop { id: i });
    }
    Ok(sigmoid(beta.get(i) + beta.get(j)))
}

/// Samples a graph with independent edges: pair {i, j} is present with
/// probability sigma(beta_i + beta_j).
///
/// The draw for each pair is keyed by (seed, i, j), so the outcome does
/// not depend on the order pairs are visited in, and identical
/// (beta, seed) inputs reproduce the identical graph within one build.
pub fn sample_graph(beta: &BetaVector, seed: u64) -> Graph {
    let t = beta.len();
    let stream = mix64(seed);
    let mut edges = BTreeSet::new();
    for i in 1..=t {
        for j in (i + 1)..=t {
            let u = keyed_uniform(stream, i as u64, j as u64);
            if u < sigmoid(beta.get(i) + beta.get(j)) {
                edges.insert((i, j));
            }
        }
    }
    Graph { t, edges }
}

/// Result of parsing an edge list: the graph plus the number of duplicate
/// edge lines that were collapsed into a single edge.
#[derive(Debug)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    pub duplicates_collapsed: usize,
}

/// Parses the edge-list text format.
///
/// Lines starting with `#` are comments and blank lines are skipped. An
/// optional `t=<n>` directive, which must precede all edges, fixes the
/// vertex count; otherwise the largest id seen is used. Every other line
/// holds two whitespace-separated 1-based vertex ids. Self-loops and
/// malformed tokens are errors naming the offending line; duplicate edges
/// are collapsed and counted.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<ParsedEdgeList> {
    let mut declared_t: Option<usize> = None;
    let mut raw_edges: Vec<(usize, usize, usize)> = Vec::new(); // (i, j, line)
    let mut max_id = 0usize;

    for (lineno, line) in reader.lines().enumerate() {
        let line_nr = lineno + 1;
        let line = line?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(rest) = content.strip_prefix("t=") {
            if !raw_edges.is_empty() {
                return Err(Error::Parse {
                    line: line_nr,
                    reason: "t= directive must precede all edges".into(),
                });
            }
            let t: usize = rest.trim().parse().map_err(|_| Error::Parse {
                line: line_nr,
                reason: format!("invalid vertex count {rest:?}"),
            })?;
            if t < 2 {
                return Err(Error::Parse {
                    line: line_nr,
                    reason: format!("vertex count {t} must be at least 2"),
                });
            }
            declared_t = Some(t);
            continue;
        }
        let mut tokens = content.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: line_nr,
                    reason: "expected exactly two vertex ids".into(),
                })
            }
        };
        let parse_id = |tok: &str| -> Result<usize> {
            let id: usize = tok.parse().map_err(|_| Error::Parse {
                line: line_nr,
                reason: format!("non-integer token {tok:?}"),
            })?;
            if id < 1 {
                return Err(Error::Parse {
                    line: line_nr,
                    reason: format!("vertex id {id} must be positive"),
                });
            }
            Ok(id)
        };
        let a = parse_id(a)?;
        let b = parse_id(b)?;
        if a == b {
            return Err(Error::Parse { line: line_nr, reason: format!("self-loop at vertex {a}") });
        }
        if let Some(t) = declared_t {
            for id in [a, b] {
                if id > t {
                    return Err(Error::Parse {
                        line: line_nr,
                        reason: format!("vertex id {id} exceeds declared t={t}"),
                    });
                }
            }
        }
        max_id = max_id.max(a).max(b);
        raw_edges.push((a.min(b), a.max(b), line_nr));
    }

    let t = declared_t.unwrap_or(max_id);
    if t < 2 {
        return Err(Error::TooFewVertices { t, min: 2 });
    }
    let mut edges = BTreeSet::new();
    let mut duplicates = 0usize;
    for (i, j, _) in raw_edges {
        if !edges.insert((i, j)) {
            duplicates += 1;
        }
    }
    Ok(ParsedEdgeList { graph: Graph { t, edges }, duplicates_collapsed: duplicates })
}
