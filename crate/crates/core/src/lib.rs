//! Junction and lowest-common-ancestor analysis on directed acyclic graphs.
//!
//! A vertex `s` is a *junction* of a pair `(u, v)` when there are directed
//! paths from `s` to `u` and from `s` to `v` that share no vertex besides
//! `s` itself. A junction is a *lowest common ancestor* of the pair when no
//! other junction of the same pair is reachable from it. In a rooted tree
//! both notions collapse to the ordinary unique LCA; in a general DAG a pair
//! can have many junctions and many LCAs.
//!
//! The crate preprocesses a DAG per source vertex into a disjoint-set
//! representative array over its DFS arborescence, after which "is `s` a
//! junction of `(u, v)`?" is a constant-time comparison. On top of that sit
//! batch drivers that list all junctions (and, filtered through the
//! transitive closure, all LCAs) of `k` query pairs, an independent
//! max-flow oracle used to validate every answer on small instances, and
//! deterministic graph generators for the test suites.
//!
//! ```
//! use junctions::graph::parse_edge_list;
//! use junctions::junction::build_junction_index;
//!
//! let g = parse_edge_list("s a\ns b\na t\nb t").unwrap();
//! let s = g.index_of("s").unwrap();
//! let index = build_junction_index(&g, s);
//! let (a, b) = (g.index_of("a").unwrap(), g.index_of("b").unwrap());
//! assert!(index.is_junction(a, b));
//! ```

pub mod arborescence;
pub mod graph;
pub mod junction;
pub mod lca;
pub mod oracle;
pub mod report;
pub mod testkit;

pub use arborescence::{classify_arcs, Arborescence, ArcClass};
pub use graph::{
    descendants, parse_edge_list, reachability, validate_dag, Digraph, DigraphBuilder,
    ReachabilityMatrix,
};
pub use junction::{build_junction_index, junctions_of_pairs, JunctionIndex, PairReport};
pub use lca::{lcas_of_pairs, LcaReport};
