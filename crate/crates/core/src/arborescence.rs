//! DFS arborescence over the descendants of a source vertex.
//!
//! The arborescence carries two arrays that the junction engine scans: the
//! post-order number of each tree vertex (contiguous from 0, assigned at
//! DFS finish time) and `minpost`, the smallest post value inside each
//! subtree. The posts of the subtree rooted at `u` are exactly the interval
//! `[minpost(u), post(u)]`, which turns ancestor tests and subtree scans
//! into integer comparisons.

use crate::graph::{reachability, Digraph};

#[derive(Debug, Clone)]
pub struct Arborescence {
    root: usize,
    in_tree: Vec<bool>,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    post: Vec<i64>,
    minpost: Vec<i64>,
    vertex_of_post: Vec<usize>,
    root_child: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl Arborescence {
    /// Depth-first search from `root`, visiting out-neighbors in adjacency
    /// order. Tree arcs are first-discovery arcs; posts count finish events
    /// from 0. Uses an explicit stack, so path-shaped graphs of any size are
    /// fine.
    pub fn build(g: &Digraph, root: usize) -> Self {
        let n = g.vertex_count();
        assert!(root < n, "source vertex out of range");
        let mut in_tree = vec![false; n];
        let mut parent = vec![NONE; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut post = vec![-1i64; n];
        let mut vertex_of_post = Vec::new();

        in_tree[root] = true;
        parent[root] = root;
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(frame) = stack.last_mut() {
            let u = frame.0;
            if frame.1 < g.out_neighbors(u).len() {
                let v = g.out_neighbors(u)[frame.1];
                frame.1 += 1;
                if !in_tree[v] {
                    in_tree[v] = true;
                    parent[v] = u;
                    children[u].push(v);
                    stack.push((v, 0));
                }
            } else {
                post[u] = vertex_of_post.len() as i64;
                vertex_of_post.push(u);
                stack.pop();
            }
        }

        // children finish before parents, so one ascending-post pass settles
        // each subtree minimum before it is folded into the parent
        let mut minpost = post.clone();
        for &u in &vertex_of_post {
            let p = parent[u];
            if u != root && minpost[u] < minpost[p] {
                minpost[p] = minpost[u];
            }
        }

        // descending post order reaches parents before their children
        let mut root_child = vec![NONE; n];
        for &u in vertex_of_post.iter().rev() {
            if u == root {
                continue;
            }
            let p = parent[u];
            root_child[u] = if p == root { u } else { root_child[p] };
        }

        Arborescence {
            root,
            in_tree,
            parent,
            children,
            post,
            minpost,
            vertex_of_post,
            root_child,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Number of vertices in the tree (the descendants of the root).
    pub fn size(&self) -> usize {
        self.vertex_of_post.len()
    }

    pub(crate) fn graph_vertex_count(&self) -> usize {
        self.in_tree.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_tree[v]
    }

    pub fn post_of(&self, v: usize) -> Option<usize> {
        self.in_tree[v].then(|| self.post[v] as usize)
    }

    pub fn minpost_of(&self, v: usize) -> Option<usize> {
        self.in_tree[v].then(|| self.minpost[v] as usize)
    }

    /// Post value with `-1` standing in for "not in the tree"; the scan
    /// loops in the junction engine compare against this directly.
    pub(crate) fn post_raw(&self, v: usize) -> i64 {
        self.post[v]
    }

    pub(crate) fn minpost_raw(&self, v: usize) -> i64 {
        self.minpost[v]
    }

    /// Inverse of `post`. Out-of-range values (the "dummy vertex" with post
    /// -1) come back as `None`, which terminates the engine's scans.
    pub fn vertex_of(&self, post: i64) -> Option<usize> {
        if (0..self.vertex_of_post.len() as i64).contains(&post) {
            Some(self.vertex_of_post[post as usize])
        } else {
            None
        }
    }

    /// Parent in the tree; the root maps to itself.
    pub fn tree_parent(&self, v: usize) -> Option<usize> {
        self.in_tree[v].then(|| self.parent[v])
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// The child of the root whose subtree contains `v` (for `v` neither
    /// the root nor outside the tree).
    pub fn root_child_of(&self, v: usize) -> Option<usize> {
        (self.root_child[v] != NONE).then(|| self.root_child[v])
    }

    /// Tree vertices in ascending post order.
    pub fn tree_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertex_of_post.iter().copied()
    }

    /// True when `anc` is an ancestor of `v` in the tree (including
    /// `anc == v`); an interval test on posts.
    pub fn is_tree_ancestor(&self, anc: usize, v: usize) -> bool {
        self.in_tree[anc]
            && self.in_tree[v]
            && self.minpost[anc] <= self.post[v]
            && self.post[v] <= self.post[anc]
    }

    #[cfg(test)]
    pub(crate) fn corrupt_swap_posts(&mut self, a: usize, b: usize) {
        self.post.swap(a, b);
    }
}

/// The five-way partition of arcs with both ends in the tree, plus a bucket
/// for arcs touching vertices outside it (those carry no paths from the
/// root and never matter for junction queries).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcClass {
    /// First-discovery arcs of the DFS.
    Tree,
    /// Non-tree arcs leaving the root directly.
    ExternalDescendant,
    /// Non-tree arcs `u -> v` with `v` inside the subtree of `u`.
    InternalDescendant,
    /// Arcs between subtrees of two different children of the root.
    ExternalCrossing,
    /// Arcs within one child subtree between tree-incomparable vertices.
    InternalCrossing,
    OutsideArborescence,
}

pub fn classify_arc(arb: &Arborescence, u: usize, v: usize) -> ArcClass {
    if !arb.contains(u) || !arb.contains(v) {
        return ArcClass::OutsideArborescence;
    }
    if v != arb.root() && arb.tree_parent(v) == Some(u) {
        return ArcClass::Tree;
    }
    if u == arb.root() {
        return ArcClass::ExternalDescendant;
    }
    if arb.is_tree_ancestor(u, v) {
        return ArcClass::InternalDescendant;
    }
    // v cannot be a tree ancestor of u: the arc u -> v plus the tree path
    // v -> u would close a directed cycle
    debug_assert!(!arb.is_tree_ancestor(v, u));
    if arb.root_child_of(u) != arb.root_child_of(v) {
        ArcClass::ExternalCrossing
    } else {
        ArcClass::InternalCrossing
    }
}

/// Classifies every arc of `g` against the arborescence, in `g.arcs()`
/// order.
pub fn classify_arcs(g: &Digraph, arb: &Arborescence) -> Vec<(usize, usize, ArcClass)> {
    g.arcs()
        .map(|(u, v)| (u, v, classify_arc(arb, u, v)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property1Violation {
    /// An arc with both ends in the tree whose post values do not strictly
    /// descend.
    ArcNotDescending { from: usize, to: usize },
    /// A directed path from an earlier-finishing child subtree into a
    /// later-finishing one.
    CrossSubtreePath { from: usize, to: usize },
    /// A vertex of an earlier-finishing child subtree whose post is not
    /// below every post of a later-finishing sibling subtree.
    SiblingPostOverlap { earlier: usize, later: usize },
}

/// Test utility: checks the three structural guarantees of the DFS
/// construction and returns every violation found (empty on any correctly
/// built arborescence). Reads the post arrays as data, so deliberately
/// corrupted trees are diagnosed rather than trusted.
pub fn check_property1(g: &Digraph, arb: &Arborescence) -> Vec<Property1Violation> {
    let mut violations = Vec::new();
    for (u, v) in g.arcs() {
        if arb.contains(u) && arb.contains(v) && arb.post_raw(u) <= arb.post_raw(v) {
            violations.push(Property1Violation::ArcNotDescending { from: u, to: v });
        }
    }

    let kids = arb.children(arb.root());
    if kids.len() >= 2 {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); kids.len()];
        let kid_slot: std::collections::HashMap<usize, usize> =
            kids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        for v in arb.tree_vertices() {
            if let Some(c) = arb.root_child_of(v) {
                members[kid_slot[&c]].push(v);
            }
        }
        let reach = reachability(g);
        for i in 0..kids.len() {
            for j in 0..kids.len() {
                if i == j || arb.post_raw(kids[i]) >= arb.post_raw(kids[j]) {
                    continue;
                }
                for &p in &members[i] {
                    for &q in &members[j] {
                        if reach.reaches(p, q) {
                            violations
                                .push(Property1Violation::CrossSubtreePath { from: p, to: q });
                        }
                        if arb.post_raw(p) >= arb.post_raw(q) {
                            violations.push(Property1Violation::SiblingPostOverlap {
                                earlier: p,
                                later: q,
                            });
                        }
                    }
                }
            }
        }
    }
    violations
}

/// Debug dump for the `dump-tree` CLI command: one line per tree vertex in
/// descending post order (`label post minpost parent-label`), then a footer
/// with per-class arc counts.
pub fn render_tree_dump(g: &Digraph, arb: &Arborescence) -> String {
    let mut out = String::new();
    for p in (0..arb.size() as i64).rev() {
        let v = arb.vertex_of(p).expect("post in range");
        let parent = arb.tree_parent(v).expect("tree vertex has a parent");
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            g.label(v),
            p,
            arb.minpost_of(v).expect("tree vertex has a minpost"),
            g.label(parent),
        ));
    }
    let mut counts = [0usize; 6];
    for (_, _, class) in classify_arcs(g, arb) {
        let slot = match class {
            ArcClass::Tree => 0,
            ArcClass::ExternalDescendant => 1,
            ArcClass::InternalDescendant => 2,
            ArcClass::ExternalCrossing => 3,
            ArcClass::InternalCrossing => 4,
            ArcClass::OutsideArborescence => 5,
        };
        counts[slot] += 1;
    }
    out.push_str(&format!(
        "arcs\ttree={} external-descendant={} internal-descendant={} \
         external-crossing={} internal-crossing={} outside={}\n",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5],
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn idx(g: &Digraph, label: &str) -> usize {
        g.index_of(label).unwrap()
    }

    #[test]
    fn chain_posts_are_forced() {
        let g = parse_edge_list("s a\na b").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        assert_eq!(arb.post_of(idx(&g, "b")), Some(0));
        assert_eq!(arb.post_of(idx(&g, "a")), Some(1));
        assert_eq!(arb.post_of(idx(&g, "s")), Some(2));
        for l in ["s", "a", "b"] {
            assert_eq!(arb.minpost_of(idx(&g, l)), Some(0));
        }
    }

    #[test]
    fn diamond_visits_in_adjacency_order() {
        let g = parse_edge_list("s a\ns b\na t\nb t").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        assert_eq!(arb.post_of(idx(&g, "t")), Some(0));
        assert_eq!(arb.post_of(idx(&g, "a")), Some(1));
        assert_eq!(arb.post_of(idx(&g, "b")), Some(2));
        assert_eq!(arb.post_of(idx(&g, "s")), Some(3));
        assert_eq!(
            classify_arc(&arb, idx(&g, "b"), idx(&g, "t")),
            ArcClass::ExternalCrossing
        );
    }

    #[test]
    fn star_leaves_finish_in_visit_order() {
        let g = parse_edge_list("s x\ns y\ns z").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        assert_eq!(arb.post_of(idx(&g, "x")), Some(0));
        assert_eq!(arb.post_of(idx(&g, "y")), Some(1));
        assert_eq!(arb.post_of(idx(&g, "z")), Some(2));
        assert_eq!(arb.post_of(idx(&g, "s")), Some(3));
        assert_eq!(arb.minpost_of(idx(&g, "y")), Some(1));
    }

    #[test]
    fn vertex_of_inverts_post_and_handles_the_dummy() {
        let g = parse_edge_list("s a\na b").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        assert_eq!(arb.vertex_of(1), Some(idx(&g, "a")));
        assert_eq!(arb.vertex_of(-1), None);
        assert_eq!(arb.vertex_of(arb.size() as i64), None);
    }

    #[test]
    fn unreachable_vertices_have_no_post() {
        let g = parse_edge_list("s a\nx y").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        assert_eq!(arb.size(), 2);
        assert!(!arb.contains(idx(&g, "x")));
        assert_eq!(arb.post_of(idx(&g, "x")), None);
        assert_eq!(
            classify_arc(&arb, idx(&g, "x"), idx(&g, "y")),
            ArcClass::OutsideArborescence
        );
    }

    #[test]
    fn external_descendant_arc_from_root() {
        let g = parse_edge_list("s a\na b\ns b").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        assert_eq!(
            classify_arc(&arb, idx(&g, "s"), idx(&g, "b")),
            ArcClass::ExternalDescendant
        );
    }

    #[test]
    fn internal_descendant_arc_within_a_subtree() {
        let g = parse_edge_list("s a\na b\nb c\na c").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        assert_eq!(
            classify_arc(&arb, idx(&g, "a"), idx(&g, "c")),
            ArcClass::InternalDescendant
        );
    }

    #[test]
    fn internal_crossing_between_incomparable_vertices() {
        // a visits c before b, so the arc b -> c joins two incomparable
        // vertices inside the subtree of a
        let g = parse_edge_list("s a\na c\na b\nb c").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        let (b, c) = (idx(&g, "b"), idx(&g, "c"));
        assert!(!arb.is_tree_ancestor(b, c));
        assert!(!arb.is_tree_ancestor(c, b));
        assert_eq!(classify_arc(&arb, b, c), ArcClass::InternalCrossing);
    }

    #[test]
    fn every_in_tree_arc_gets_exactly_one_class() {
        let g = parse_edge_list("s a\ns b\na t\nb t\ns t\na b").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        let classified = classify_arcs(&g, &arb);
        assert_eq!(classified.len(), g.arc_count());
        let in_tree = classified
            .iter()
            .filter(|(_, _, c)| *c != ArcClass::OutsideArborescence)
            .count();
        assert_eq!(
            in_tree,
            g.arcs()
                .filter(|&(u, v)| arb.contains(u) && arb.contains(v))
                .count()
        );
    }

    #[test]
    fn property1_holds_on_built_arborescences() {
        for text in ["s a\ns b\na t\nb t", "s a\na b\nb c\na c", "s x\ns y\ns z"] {
            let g = parse_edge_list(text).unwrap();
            let arb = Arborescence::build(&g, 0);
            assert_eq!(check_property1(&g, &arb), vec![]);
        }
    }

    #[test]
    fn property1_detects_a_corrupted_post_array() {
        let g = parse_edge_list("s a\ns b\na t\nb t").unwrap();
        let mut arb = Arborescence::build(&g, idx(&g, "s"));
        arb.corrupt_swap_posts(idx(&g, "a"), idx(&g, "t"));
        assert!(!check_property1(&g, &arb).is_empty());
    }

    #[test]
    fn property1_is_vacuous_on_a_single_vertex_tree() {
        let g = parse_edge_list("s a\na b").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "b"));
        assert_eq!(arb.size(), 1);
        assert_eq!(check_property1(&g, &arb), vec![]);
    }

    #[test]
    fn subtree_posts_form_the_minpost_interval() {
        let g = parse_edge_list("s a\ns b\na c\na d\nc e\nb f").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        for u in arb.tree_vertices() {
            let mut posts: Vec<usize> = arb
                .tree_vertices()
                .filter(|&x| arb.is_tree_ancestor(u, x))
                .map(|x| arb.post_of(x).unwrap())
                .collect();
            posts.sort_unstable();
            let expected: Vec<usize> =
                (arb.minpost_of(u).unwrap()..=arb.post_of(u).unwrap()).collect();
            assert_eq!(posts, expected);
        }
    }

    #[test]
    fn dump_lists_vertices_root_first_with_arc_counts() {
        let g = parse_edge_list("s a\ns b\na t\nb t").unwrap();
        let arb = Arborescence::build(&g, idx(&g, "s"));
        let dump = render_tree_dump(&g, &arb);
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].starts_with("s\t3\t0\ts"));
        assert!(lines[4].contains("tree=3"));
        assert!(lines[4].contains("external-crossing=1"));
    }
}
