//! Deterministic graph generators for property suites and benchmarks.
//!
//! Everything is seeded through SplitMix64 (the 64-bit generator with the
//! published golden-ratio increment and two xor-multiply mixing rounds), so
//! a `GenSpec` reproduces the same graph byte for byte on any platform.

use crate::graph::{Digraph, DigraphBuilder};

/// SplitMix64: state advances by 0x9E3779B97F4A7C15 per draw, output is the
/// two-round mix of the new state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw in `0..bound` (plain modulo; the bias is
    /// irrelevant for test-case generation and keeps the stream portable).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        self.next_u64() % bound
    }

    /// Uniform draw in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// A reproducible generator instance: same spec, same graph.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    RandomDag {
        n: usize,
        arc_prob: f64,
        seed: u64,
    },
    /// Complete bipartite layer graph A -> B: every first-layer vertex is a
    /// junction of every second-layer pair, the densest possible listing
    /// output.
    Bipartite {
        a: usize,
        b: usize,
    },
    /// Parent-child network in topological birth order; every vertex draws
    /// 0, 1 or 2 parents among the earlier vertices.
    Kinship {
        n: usize,
        seed: u64,
    },
    RandomArborescence {
        n: usize,
        seed: u64,
    },
    Path {
        n: usize,
    },
    Star {
        n: usize,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Digraph {
        match *self {
            GenSpec::RandomDag { n, arc_prob, seed } => gen_random_dag(n, arc_prob, seed),
            GenSpec::Bipartite { a, b } => gen_bipartite(a, b),
            GenSpec::Kinship { n, seed } => gen_kinship(n, seed),
            GenSpec::RandomArborescence { n, seed } => gen_random_arborescence(n, seed),
            GenSpec::Path { n } => gen_path(n),
            GenSpec::Star { n } => gen_star(n),
        }
    }
}

fn vertex_label(i: usize) -> String {
    format!("v{i}")
}

fn numbered_builder(n: usize) -> DigraphBuilder {
    let mut b = DigraphBuilder::new();
    for i in 0..n {
        b.intern(&vertex_label(i));
    }
    b
}

/// Random DAG: a uniform permutation ranks the vertices, then every
/// forward-rank arc is included independently with probability `arc_prob`.
/// Acyclic by construction.
pub fn gen_random_dag(n: usize, arc_prob: f64, seed: u64) -> Digraph {
    assert!(
        (0.0..=1.0).contains(&arc_prob),
        "arc probability must be in [0, 1]"
    );
    let mut rng = SplitMix64::new(seed);
    let mut rank: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut rank);
    let mut b = numbered_builder(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.next_f64() < arc_prob {
                b.add_arc(&vertex_label(rank[i]), &vertex_label(rank[j]))
                    .expect("rank order excludes self-loops");
            }
        }
    }
    b.build()
}

/// Complete bipartite layers: arcs `ai -> bj` for every i < a, j < b.
pub fn gen_bipartite(a: usize, b: usize) -> Digraph {
    assert!(a >= 1 && b >= 1);
    let mut builder = DigraphBuilder::new();
    for i in 0..a {
        builder.intern(&format!("a{i}"));
    }
    for j in 0..b {
        builder.intern(&format!("b{j}"));
    }
    for i in 0..a {
        for j in 0..b {
            builder
                .add_arc(&format!("a{i}"), &format!("b{j}"))
                .expect("layer labels are distinct");
        }
    }
    builder.build()
}

/// Kinship-style DAG: vertices appear in birth order, each drawing 0, 1 or
/// 2 distinct parents among its elders, so in-degree never exceeds 2.
pub fn gen_kinship(n: usize, seed: u64) -> Digraph {
    assert!(n >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut b = numbered_builder(n);
    for child in 1..n {
        let parents = (rng.next_below(3) as usize).min(child);
        if parents == 0 {
            continue;
        }
        let first = rng.next_below(child as u64) as usize;
        b.add_arc(&vertex_label(first), &vertex_label(child))
            .expect("parents precede children");
        if parents == 2 {
            // draw from the remaining elders, skipping over the first pick
            let mut second = rng.next_below(child as u64 - 1) as usize;
            if second >= first {
                second += 1;
            }
            b.add_arc(&vertex_label(second), &vertex_label(child))
                .expect("parents precede children");
        }
    }
    b.build()
}

/// Uniform random recursive tree rooted at `v0`: every later vertex hangs
/// off one earlier vertex.
pub fn gen_random_arborescence(n: usize, seed: u64) -> Digraph {
    assert!(n >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut b = numbered_builder(n);
    for child in 1..n {
        let parent = rng.next_below(child as u64) as usize;
        b.add_arc(&vertex_label(parent), &vertex_label(child))
            .expect("parents precede children");
    }
    b.build()
}

pub fn gen_path(n: usize) -> Digraph {
    assert!(n >= 1);
    let mut b = numbered_builder(n);
    for i in 1..n {
        b.add_arc(&vertex_label(i - 1), &vertex_label(i))
            .expect("consecutive labels differ");
    }
    b.build()
}

pub fn gen_star(n: usize) -> Digraph {
    assert!(n >= 1);
    let mut b = numbered_builder(n);
    for i in 1..n {
        b.add_arc(&vertex_label(0), &vertex_label(i))
            .expect("leaf labels differ from the hub");
    }
    b.build()
}

/// Hand-sized graphs used throughout the suites, with the labels the tests
/// talk about.
pub mod fixtures {
    use super::gen_bipartite;
    use crate::graph::{parse_edge_list, Digraph};

    fn parse(text: &str) -> Digraph {
        parse_edge_list(text).expect("fixture is well-formed")
    }

    /// s -> {a, b} -> t.
    pub fn diamond() -> Digraph {
        parse("s a\ns b\na t\nb t")
    }

    /// s -> a -> b.
    pub fn chain() -> Digraph {
        parse("s a\na b")
    }

    /// s -> {x, y, z}.
    pub fn star() -> Digraph {
        parse("s x\ns y\ns z")
    }

    /// Two diamonds end to end: s..t over {a, b}, then t..q over {c, d}.
    pub fn stacked_diamond() -> Digraph {
        parse("s a\ns b\na t\nb t\nt c\nt d\nc q\nd q")
    }

    pub fn named() -> Vec<(&'static str, Digraph)> {
        vec![
            ("diamond", diamond()),
            ("chain", chain()),
            ("star", star()),
            ("bipartite-3-4", gen_bipartite(3, 4)),
            ("stacked-diamond", stacked_diamond()),
        ]
    }
}

/// Seeded random-DAG suite for the exhaustive verification sweeps: sizes
/// cycle through 2..=10 and arc probabilities through {0.15, 0.3, 0.5}.
pub fn small_random_suite(count: usize) -> Vec<Digraph> {
    const PROBS: [f64; 3] = [0.15, 0.3, 0.5];
    (0..count)
        .map(|i| gen_random_dag(2 + i % 9, PROBS[i % PROBS.len()], 1000 + i as u64))
        .collect()
}

/// Shuffles the lines of an edge-list text; used to confirm that answers do
/// not depend on adjacency order.
pub fn shuffle_lines(text: &str, seed: u64) -> String {
    let mut lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    SplitMix64::new(seed).shuffle(&mut lines);
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}
