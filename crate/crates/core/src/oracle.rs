//! Independent ground truth for junction queries.
//!
//! Whether `s` is a junction of `(u, v)` reduces to a unit-capacity
//! max-flow question: split every vertex except `s` into an entry and an
//! exit node joined by a capacity-1 arc, route each graph arc between the
//! corresponding exit and entry nodes, and tap the exits of `u` and `v`
//! into a super-sink. Two units of flow fit exactly when two directed
//! paths from `s` reach `u` and `v` sharing no vertex besides `s` — an
//! endpoint consumes its vertex capacity like any internal visit, so one
//! path ending at a vertex the other passes through is ruled out.
//!
//! The flow value is at most 2 (two unit arcs enter the sink), so two
//! augmenting-path searches settle every query in O(m). A brute-force
//! enumerator over all path pairs validates the reduction itself on tiny
//! instances.

use std::error::Error;
use std::fmt;

use crate::graph::{descendants, Digraph};

/// Unit-capacity flow network for one junction query.
pub struct SplitFlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    source: usize,
    sink: usize,
}

impl SplitFlowNet {
    pub fn new(g: &Digraph, s: usize, u: usize, v: usize) -> Self {
        let n = g.vertex_count();
        let entry = |x: usize| 2 * x;
        let exit = |x: usize| 2 * x + 1;
        let sink = 2 * n;
        let mut net = SplitFlowNet {
            adj: vec![Vec::new(); 2 * n + 1],
            to: Vec::new(),
            cap: Vec::new(),
            source: exit(s),
            sink,
        };
        for x in 0..n {
            if x != s {
                net.add_edge(entry(x), exit(x), 1);
            }
        }
        for (a, b) in g.arcs() {
            net.add_edge(exit(a), entry(b), 1);
        }
        net.add_edge(exit(u), sink, 1);
        net.add_edge(exit(v), sink, 1);
        net
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        // forward and residual edges at ids e and e ^ 1
        let e = self.to.len();
        self.adj[from].push(e);
        self.to.push(to);
        self.cap.push(cap);
        self.adj[to].push(e + 1);
        self.to.push(from);
        self.cap.push(0);
    }

    /// Max-flow value, in {0, 1, 2}.
    pub fn max_flow(&mut self) -> u32 {
        let mut total = 0;
        while total < 2 && self.augment() {
            total += 1;
        }
        total
    }

    fn augment(&mut self) -> bool {
        const UNSET: usize = usize::MAX;
        let mut via = vec![UNSET; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self.source);
        via[self.source] = usize::MAX - 1;
        'search: while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && via[y] == UNSET {
                    via[y] = e;
                    if y == self.sink {
                        break 'search;
                    }
                    queue.push_back(y);
                }
            }
        }
        if via[self.sink] == UNSET {
            return false;
        }
        let mut y = self.sink;
        while y != self.source {
            let e = via[y];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            y = self.to[e ^ 1];
        }
        true
    }
}

fn dfs_reaches(g: &Digraph, from: usize, to: usize) -> bool {
    if from == to {
        return true;
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for &y in g.out_neighbors(x) {
            if y == to {
                return true;
            }
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Is `s` a junction of `(u, v)`? Pairs with `u == v` have no junctions by
/// convention; when `s` is one of the endpoints the answer is plain
/// reachability (a vertex is a junction of itself and every proper
/// descendant); everything else is the flow computation.
pub fn oracle_is_junction(g: &Digraph, s: usize, u: usize, v: usize) -> bool {
    if u == v {
        return false;
    }
    if s == u {
        return dfs_reaches(g, s, v);
    }
    if s == v {
        return dfs_reaches(g, s, u);
    }
    SplitFlowNet::new(g, s, u, v).max_flow() == 2
}

/// All junctions of `(u, v)`, ascending by vertex index.
pub fn oracle_junction_set(g: &Digraph, u: usize, v: usize) -> Vec<usize> {
    g.vertices()
        .filter(|&s| oracle_is_junction(g, s, u, v))
        .collect()
}

/// All LCAs of `(u, v)`: junctions from which no other junction of the pair
/// is reachable.
pub fn oracle_lca_set(g: &Digraph, u: usize, v: usize) -> Vec<usize> {
    let junctions = oracle_junction_set(g, u, v);
    junctions
        .iter()
        .copied()
        .filter(|&s| {
            !junctions
                .iter()
                .any(|&other| other != s && dfs_reaches(g, s, other))
        })
        .collect()
}

/// Instances with more than this many descendants of `s` are rejected by
/// the exhaustive enumerator.
pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceTooLarge {
    pub descendants: usize,
    pub limit: usize,
}

impl fmt::Display for InstanceTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration limited to {} descendants, got {}",
            self.limit, self.descendants
        )
    }
}

impl Error for InstanceTooLarge {}

/// Brute force over all pairs of directed paths `s -> u` and `s -> v`:
/// true iff some pair shares only `s`. Exponential; guarded by
/// [`ENUMERATION_LIMIT`]. Exists to validate the flow oracle, so it must
/// agree with [`oracle_is_junction`] wherever it runs.
pub fn enumerate_disjoint_path_pair(
    g: &Digraph,
    s: usize,
    u: usize,
    v: usize,
) -> Result<bool, InstanceTooLarge> {
    if u == v {
        return Ok(false);
    }
    let reached = descendants(g, s).len();
    if reached > ENUMERATION_LIMIT {
        return Err(InstanceTooLarge {
            descendants: reached,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut used = vec![false; g.vertex_count()];
    Ok(first_path_search(g, s, s, u, v, &mut used))
}

// Walks every directed path s -> u (acyclicity keeps them simple), marking
// the path's vertices except s; at each complete path, asks whether v is
// still reachable through unmarked vertices.
fn first_path_search(
    g: &Digraph,
    s: usize,
    cur: usize,
    u: usize,
    v: usize,
    used: &mut Vec<bool>,
) -> bool {
    if cur == u {
        return second_path_exists(g, s, v, used);
    }
    for &w in g.out_neighbors(cur) {
        if used[w] {
            continue;
        }
        used[w] = true;
        let found = first_path_search(g, s, w, u, v, used);
        used[w] = false;
        if found {
            return true;
        }
    }
    false
}

fn second_path_exists(g: &Digraph, s: usize, v: usize, used: &[bool]) -> bool {
    if s == v {
        return true;
    }
    let mut seen = used.to_vec();
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for &y in g.out_neighbors(x) {
            if seen[y] {
                continue;
            }
            if y == v {
                return true;
            }
            seen[y] = true;
            stack.push(y);
        }
    }
    false
}
