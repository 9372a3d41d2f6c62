//! DAG representation: edge-list parsing, acyclicity validation, reachability.
//!
//! Vertices are dense indices `0..n` assigned to labels in first-appearance
//! order. All adjacency lists keep insertion order, so every traversal in
//! this crate is deterministic for a given input.

use std::collections::{HashMap, HashSet};
use std::error::Error;
use std::fmt;

/// Immutable directed graph over interned string labels.
///
/// Self-loops are rejected and parallel arcs are deduplicated at
/// construction, but the graph may contain cycles until [`validate_dag`]
/// certifies otherwise. The struct is read-only after `build`, so shared
/// references can be used freely across threads.
#[derive(Debug, Clone)]
pub struct Digraph {
    labels: Vec<String>,
    index_by_label: HashMap<String, usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Out-neighbors of `u` in insertion order.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }

    /// In-neighbors (parents) of `u` in insertion order.
    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.in_adj[u]
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index_by_label.get(label).copied()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    /// All arcs, grouped by source vertex in index order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Serializes to the edge-list format: one `src dst` line per arc,
    /// lines sorted lexicographically. Isolated vertices are not
    /// representable in this format and are omitted.
    pub fn to_edge_list(&self) -> String {
        let mut lines: Vec<String> = self
            .arcs()
            .map(|(u, v)| format!("{} {}", self.labels[u], self.labels[v]))
            .collect();
        lines.sort_unstable();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

/// Incremental construction with label interning and arc deduplication.
#[derive(Debug, Default)]
pub struct DigraphBuilder {
    labels: Vec<String>,
    index_by_label: HashMap<String, usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    seen_arcs: HashSet<(usize, usize)>,
}

impl DigraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the vertex index for `label`, creating it on first use.
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index_by_label.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index_by_label.insert(label.to_string(), i);
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        i
    }

    /// Adds the arc `src -> dst`. Duplicates are dropped silently; a
    /// self-loop is an error.
    pub fn add_arc(&mut self, src: &str, dst: &str) -> Result<(), GraphError> {
        if src == dst {
            return Err(GraphError::SelfLoop {
                label: src.to_string(),
            });
        }
        let u = self.intern(src);
        let v = self.intern(dst);
        if self.seen_arcs.insert((u, v)) {
            self.out_adj[u].push(v);
            self.in_adj[v].push(u);
        }
        Ok(())
    }

    pub fn build(self) -> Digraph {
        Digraph {
            labels: self.labels,
            index_by_label: self.index_by_label,
            out_adj: self.out_adj,
            in_adj: self.in_adj,
            arc_count: self.seen_arcs.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop { label: String },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { label } => write!(f, "self-loop at vertex {label:?}"),
        }
    }
}

impl Error for GraphError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    SelfLoop { line: usize, label: String },
    Malformed { line: usize, text: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::SelfLoop { line, label } => {
                write!(f, "line {line}: self-loop at vertex {label:?}")
            }
            ParseError::Malformed { line, text } => {
                write!(
                    f,
                    "line {line}: expected \"<src-label> <dst-label>\", got {text:?}"
                )
            }
        }
    }
}

impl Error for ParseError {}

/// Parses the line-oriented edge-list format.
///
/// Each non-empty, non-comment line is `<src-label> <dst-label>` separated
/// by whitespace; `#` starts a comment line. Labels get indices in
/// first-appearance order and duplicate arcs are dropped.
pub fn parse_edge_list(text: &str) -> Result<Digraph, ParseError> {
    let mut builder = DigraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (src, dst) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(s), Some(d), None) => (s, d),
            _ => {
                return Err(ParseError::Malformed {
                    line,
                    text: trimmed.to_string(),
                })
            }
        };
        builder
            .add_arc(src, dst)
            .map_err(|GraphError::SelfLoop { label }| ParseError::SelfLoop { line, label })?;
    }
    Ok(builder.build())
}

/// A directed cycle found by [`validate_dag`]; `vertices` starts and ends at
/// the same vertex and every consecutive pair is an arc of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCertificate {
    pub vertices: Vec<usize>,
}

impl CycleCertificate {
    pub fn display<'a>(&'a self, g: &'a Digraph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a CycleCertificate, &'a Digraph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, &v) in self.0.vertices.iter().enumerate() {
                    if i > 0 {
                        write!(f, " -> ")?;
                    }
                    write!(f, "{}", self.1.label(v))?;
                }
                Ok(())
            }
        }
        D(self, g)
    }
}

/// Returns a topological order (every arc goes from earlier to later), or a
/// cycle certificate when the graph is not acyclic.
pub fn validate_dag(g: &Digraph) -> Result<Vec<usize>, CycleCertificate> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.vertex_count();
    let mut color = vec![WHITE; n];
    let mut finished = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if color[start] != WHITE {
            continue;
        }
        color[start] = GRAY;
        stack.push((start, 0));
        while let Some(frame) = stack.last_mut() {
            let u = frame.0;
            if frame.1 < g.out_neighbors(u).len() {
                let v = g.out_neighbors(u)[frame.1];
                frame.1 += 1;
                match color[v] {
                    WHITE => {
                        color[v] = GRAY;
                        stack.push((v, 0));
                    }
                    GRAY => {
                        // v is still open, so the stack from v onward closes a cycle
                        let pos = stack
                            .iter()
                            .position(|&(x, _)| x == v)
                            .expect("gray vertex is on the stack");
                        let mut vertices: Vec<usize> =
                            stack[pos..].iter().map(|&(x, _)| x).collect();
                        vertices.push(v);
                        return Err(CycleCertificate { vertices });
                    }
                    _ => {}
                }
            } else {
                color[u] = BLACK;
                finished.push(u);
                stack.pop();
            }
        }
    }
    finished.reverse();
    Ok(finished)
}

/// Bit matrix of the reflexive-transitive closure: `reaches(u, v)` is true
/// iff `v == u` or a directed path `u -> v` exists.
#[derive(Debug, Clone)]
pub struct ReachabilityMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl ReachabilityMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        ReachabilityMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn reaches(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
    }

    fn or_row_into(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let w = self.words_per_row;
        let (d, s) = (dst * w, src * w);
        if d < s {
            let (head, tail) = self.bits.split_at_mut(s);
            let drow = &mut head[d..d + w];
            for (x, &y) in drow.iter_mut().zip(tail[..w].iter()) {
                *x |= y;
            }
        } else {
            let (head, tail) = self.bits.split_at_mut(d);
            let drow = &mut tail[..w];
            for (x, &y) in drow.iter_mut().zip(head[s..s + w].iter()) {
                *x |= y;
            }
        }
    }
}

/// Computes the reflexive-transitive closure of a DAG.
///
/// Rows are combined by word-wide ORs in reverse topological order, so the
/// cost is O(n*m/64) rather than one full traversal per vertex.
///
/// Panics if the graph contains a cycle; run [`validate_dag`] first.
pub fn reachability(g: &Digraph) -> ReachabilityMatrix {
    let order = match validate_dag(g) {
        Ok(order) => order,
        Err(_) => panic!("reachability requires an acyclic graph"),
    };
    let mut matrix = ReachabilityMatrix::new(g.vertex_count());
    for &u in order.iter().rev() {
        for &v in g.out_neighbors(u) {
            matrix.or_row_into(u, v);
        }
        matrix.set(u, u);
    }
    matrix
}

/// Vertices reachable from `s` (including `s`), ascending.
pub fn descendants(g: &Digraph, s: usize) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &v in g.out_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(v, &hit)| hit.then_some(v))
        .collect()
}
