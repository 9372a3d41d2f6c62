//! Constant-time junction queries per source vertex.
//!
//! Preprocessing builds the DFS arborescence of the source `s` and then
//! fills a disjoint-set representative array `p` by one downward scan of
//! each child subtree in post order: a scanned vertex `w` becomes a fresh
//! representative exactly when some in-neighbor already carries a different
//! representative (meaning a second, vertex-disjoint route from `s` reaches
//! `w`), and otherwise joins the set of the scan root. After the build,
//! `s` is a junction of `(u, v)` inside the tree iff the representatives of
//! `u` and `v` differ — a single comparison.
//!
//! Each in-arc list is inspected at most once per build, so preprocessing
//! is O(n + m); the `arcs_examined` counter makes that bound testable.

use std::ops::Range;

use crate::arborescence::Arborescence;
use crate::graph::Digraph;

/// Instrumentation for the complexity bound: every in-neighbor inspection
/// performed by the scan is counted, and the total never exceeds m + n.
#[derive(Debug, Clone, Default)]
pub struct BuildStats {
    pub arcs_examined: u64,
}

/// Per-source index answering `is_junction` in constant time.
///
/// Logically immutable once built: the representative array is flattened at
/// the end of the build (every pointer reaches its representative in one
/// hop), so queries are plain reads and safe to share across threads.
#[derive(Debug, Clone)]
pub struct JunctionIndex {
    source: usize,
    arb: Arborescence,
    reps: Vec<usize>,
    stats: BuildStats,
}

/// Starting representative array: every tree vertex points to its tree
/// parent, then the root and each of its children are made representatives
/// of their own sets.
pub fn init_representatives(arb: &Arborescence) -> Vec<usize> {
    let mut reps: Vec<usize> = (0..arb.graph_vertex_count()).collect();
    let root = arb.root();
    for v in arb.tree_vertices() {
        if v != root {
            reps[v] = arb.tree_parent(v).expect("tree vertex has a parent");
        }
    }
    reps[root] = root;
    for &c in arb.children(root) {
        reps[c] = c;
    }
    reps
}

fn find(reps: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while reps[root] != root {
        root = reps[root];
    }
    let mut cur = x;
    while cur != root {
        let next = reps[cur];
        reps[cur] = root;
        cur = next;
    }
    root
}

/// One downward scan of the subtree of `z` (a representative), assigning a
/// final representative to every proper descendant of `z`.
///
/// The scan walks post values from `post(z) - 1` down to `minpost(z)`. When
/// an in-neighbor of the current vertex `w` carries a representative
/// different from `z`'s, `w` becomes a representative itself and its own
/// subtree is scanned next (the recursion of the original formulation,
/// realized here as an explicit frame stack); the scan then resumes below
/// `w`'s subtree interval. Otherwise `w` joins `z`'s set and the scan steps
/// down by one.
pub fn single_junction_all_pairs(
    g: &Digraph,
    arb: &Arborescence,
    reps: &mut [usize],
    stats: &mut BuildStats,
    z: usize,
) {
    scan_subtree(g, arb, reps, stats, z, false);
}

fn scan_subtree(
    g: &Digraph,
    arb: &Arborescence,
    reps: &mut [usize],
    stats: &mut BuildStats,
    scan_root: usize,
    checked: bool,
) {
    debug_assert!(arb.contains(scan_root));
    debug_assert_eq!(
        reps[scan_root], scan_root,
        "scan root must be a representative"
    );
    let mut frames: Vec<usize> = vec![scan_root];
    let mut cursor: i64 = arb.post_raw(scan_root) - 1;
    while let Some(&z) = frames.last() {
        if cursor < arb.minpost_raw(z) {
            // subtree of z exhausted; the parent frame resumes at the same
            // cursor, which sits exactly one below z's interval
            frames.pop();
            continue;
        }
        if checked {
            assert_scan_entry(arb, reps, &frames, cursor);
        }
        let w = arb
            .vertex_of(cursor)
            .expect("cursor stays inside the scanned subtree interval");
        let z_rep = find(reps, z);
        debug_assert_eq!(z_rep, z);
        let mut second_route = false;
        for &t in g.in_neighbors(w) {
            stats.arcs_examined += 1;
            if !arb.contains(t) {
                // arcs from outside the arborescence carry no paths that
                // start at the source
                continue;
            }
            let direct = reps[t];
            let t_rep = find(reps, t);
            debug_assert_eq!(
                t_rep, direct,
                "in-neighbors are finalized before their targets are scanned"
            );
            if t_rep != z_rep {
                second_route = true;
                break;
            }
        }
        if second_route {
            reps[w] = w;
            frames.push(w);
            cursor = arb.post_raw(w) - 1;
        } else {
            reps[w] = z;
            cursor -= 1;
        }
    }
}

/// Invariants of the scan, asserted at every loop entry in checked builds:
/// the scan root is a representative, every pointer assigned so far in this
/// child subtree reaches a representative in one hop, and no vertex outside
/// the current frame's subtree shares the frame's representative.
fn assert_scan_entry(arb: &Arborescence, reps: &[usize], frames: &[usize], cursor: i64) {
    let z = *frames.last().expect("scan has an active frame");
    let top = frames[0];
    assert_eq!(reps[z], z, "scan parameter must be a representative");
    for p in (cursor + 1)..=arb.post_raw(top) {
        let x = arb.vertex_of(p).expect("post in range");
        assert_eq!(
            reps[reps[x]], reps[x],
            "assigned pointers must lead to a representative"
        );
    }
    for p in arb.minpost_raw(top)..arb.minpost_raw(z) {
        let x = arb.vertex_of(p).expect("post in range");
        assert_ne!(
            reps[x], reps[z],
            "sets outside the scanned subtree stay distinct"
        );
    }
    for p in (arb.post_raw(z) + 1)..=arb.post_raw(top) {
        let x = arb.vertex_of(p).expect("post in range");
        assert_ne!(
            reps[x], reps[z],
            "sets outside the scanned subtree stay distinct"
        );
    }
}

/// Builds the junction index for `s`: arborescence, representative
/// initialization, then one scan per child of `s`.
pub fn build_junction_index(g: &Digraph, s: usize) -> JunctionIndex {
    build_index(g, s, false)
}

/// Like [`build_junction_index`], but asserts the scan invariants at every
/// step. Quadratic in the subtree size; meant for the small-instance
/// verification suites.
pub fn build_junction_index_checked(g: &Digraph, s: usize) -> JunctionIndex {
    build_index(g, s, true)
}

fn build_index(g: &Digraph, s: usize, checked: bool) -> JunctionIndex {
    let arb = Arborescence::build(g, s);
    let mut reps = init_representatives(&arb);
    let mut stats = BuildStats::default();
    // Child subtrees are scanned latest-finishing first. Arcs between
    // sibling subtrees only point at earlier-finishing ones, so every
    // in-neighbor inspected by a scan already carries its final pointer.
    let children = arb.children(s).to_vec();
    for &c in children.iter().rev() {
        scan_subtree(g, &arb, &mut reps, &mut stats, c, checked);
    }
    // flatten so queries are single reads
    for v in arb.tree_vertices() {
        find(&mut reps, v);
    }
    JunctionIndex {
        source: s,
        arb,
        reps,
        stats,
    }
}

impl JunctionIndex {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn arborescence(&self) -> &Arborescence {
        &self.arb
    }

    pub fn stats(&self) -> &BuildStats {
        &self.stats
    }

    /// Set representative of a tree vertex.
    pub fn representative(&self, v: usize) -> Option<usize> {
        self.arb.contains(v).then(|| {
            let r = self.reps[v];
            debug_assert_eq!(self.reps[r], r, "representatives are flattened after build");
            r
        })
    }

    /// Is the indexed source a junction of `(u, v)`?
    ///
    /// `J(u, u)` is empty by convention. Vertices outside the arborescence
    /// are unreachable from the source, so no path pair exists and the
    /// answer is false. The source itself is a junction of every pair it
    /// properly precedes. Everything else is the representative comparison.
    pub fn is_junction(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        if !self.arb.contains(u) || !self.arb.contains(v) {
            return false;
        }
        if u == self.source || v == self.source {
            return true;
        }
        self.reps[u] != self.reps[v]
    }

    /// The partition of the tree minus its root into representative
    /// classes. The source is a junction of exactly the inter-class pairs,
    /// plus every pair made of the source and one tree vertex. Classes are
    /// ordered by the post value of their representative, members by post.
    pub fn representative_classes(&self) -> Vec<Vec<usize>> {
        let mut slot_of_rep: std::collections::HashMap<usize, usize> =
            std::collections::HashMap::new();
        let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
        for v in self.arb.tree_vertices() {
            if v == self.source {
                continue;
            }
            let rep = self.reps[v];
            let slot = *slot_of_rep.entry(rep).or_insert_with(|| {
                classes.push((rep, Vec::new()));
                classes.len() - 1
            });
            classes[slot].1.push(v);
        }
        classes.sort_by_key(|(rep, _)| self.arb.post_raw(*rep));
        classes.into_iter().map(|(_, members)| members).collect()
    }

    /// Streams every pair `(u, v)` that has the source as a junction, in
    /// lexicographic label order with `label(u) < label(v)`. Nothing is
    /// materialized beyond the sorted vertex list.
    pub fn junction_pairs<'a>(&'a self, g: &'a Digraph) -> JunctionPairs<'a> {
        let mut order: Vec<usize> = self.arb.tree_vertices().collect();
        order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
        JunctionPairs {
            index: self,
            order,
            i: 0,
            j: 1,
        }
    }
}

pub struct JunctionPairs<'a> {
    index: &'a JunctionIndex,
    order: Vec<usize>,
    i: usize,
    j: usize,
}

impl Iterator for JunctionPairs<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        while self.i + 1 < self.order.len() {
            while self.j < self.order.len() {
                let (u, v) = (self.order[self.i], self.order[self.j]);
                self.j += 1;
                if self.index.is_junction(u, v) {
                    return Some((u, v));
                }
            }
            self.i += 1;
            self.j = self.i + 1;
        }
        None
    }
}

/// Junction sources for index-resolved query pairs: one index build per
/// source vertex, each pair tested against every index. Sources come back
/// ascending per pair. `jobs > 1` splits the source range across threads;
/// results are merged in source order, so the output does not depend on
/// the parallelism degree.
pub fn junction_sources_for_pairs(
    g: &Digraph,
    pairs: &[(usize, usize)],
    jobs: usize,
) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let scan = |range: Range<usize>| -> Vec<Vec<usize>> {
        let mut hits = vec![Vec::new(); pairs.len()];
        for s in range {
            let index = build_junction_index(g, s);
            for (slot, &(u, v)) in pairs.iter().enumerate() {
                if index.is_junction(u, v) {
                    hits[slot].push(s);
                }
            }
        }
        hits
    };
    let jobs = jobs.clamp(1, n.max(1));
    if jobs == 1 {
        return scan(0..n);
    }
    let chunk = n.div_ceil(jobs);
    let parts: Vec<Vec<Vec<usize>>> = std::thread::scope(|scope| {
        let scan = &scan;
        let handles: Vec<_> = (0..jobs)
            .map(|k| {
                let lo = k * chunk;
                let hi = ((k + 1) * chunk).min(n);
                scope.spawn(move || scan(lo..hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("index build worker panicked"))
            .collect()
    });
    let mut merged = vec![Vec::new(); pairs.len()];
    for part in parts {
        for (slot, mut hits) in part.into_iter().enumerate() {
            merged[slot].append(&mut hits);
        }
    }
    merged
}

/// Report for one query pair: the label-sorted junction list, or a per-pair
/// error (unknown labels don't abort the batch).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub u: String,
    pub v: String,
    pub result: Result<Vec<String>, String>,
}

pub(crate) fn resolve_pairs(
    g: &Digraph,
    pairs: &[(String, String)],
) -> Vec<Result<(usize, usize), String>> {
    pairs
        .iter()
        .map(|(u, v)| {
            let ui = g
                .index_of(u)
                .ok_or_else(|| format!("unknown label {u:?}"))?;
            let vi = g
                .index_of(v)
                .ok_or_else(|| format!("unknown label {v:?}"))?;
            Ok((ui, vi))
        })
        .collect()
}

/// Lists every junction of every query pair by solving the single-source
/// problem for each vertex in turn: O(n(m + k)) overall.
pub fn junctions_of_pairs(g: &Digraph, pairs: &[(String, String)]) -> Vec<PairReport> {
    junctions_of_pairs_jobs(g, pairs, 1)
}

pub fn junctions_of_pairs_jobs(
    g: &Digraph,
    pairs: &[(String, String)],
    jobs: usize,
) -> Vec<PairReport> {
    let resolved = resolve_pairs(g, pairs);
    let queries: Vec<(usize, usize)> = resolved
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .filter(|(u, v)| u != v)
        .copied()
        .collect();
    let hits = junction_sources_for_pairs(g, &queries, jobs);
    let mut next_query = 0;
    resolved
        .into_iter()
        .zip(pairs)
        .map(|(res, (u, v))| {
            let result = match res {
                Err(e) => Err(e),
                Ok((ui, vi)) if ui == vi => Ok(Vec::new()),
                Ok(_) => {
                    let sources = &hits[next_query];
                    next_query += 1;
                    let mut labels: Vec<String> =
                        sources.iter().map(|&s| g.label(s).to_string()).collect();
                    labels.sort_unstable();
                    Ok(labels)
                }
            };
            PairReport {
                u: u.clone(),
                v: v.clone(),
                result,
            }
        })
        .collect()
}
