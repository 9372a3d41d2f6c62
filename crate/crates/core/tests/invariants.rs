//! Cross-module properties on generated graph suites: structural guarantees
//! of the DFS construction, agreement between the index and the flow
//! oracle, and determinism of the batch drivers.

use junctions::arborescence::{check_property1, classify_arcs, Arborescence, ArcClass};
use junctions::graph::{parse_edge_list, reachability, validate_dag, Digraph, DigraphBuilder};
use junctions::junction::{build_junction_index, junctions_of_pairs};
use junctions::lca::lcas_of_pairs;
use junctions::oracle::{oracle_is_junction, oracle_junction_set, oracle_lca_set};
use junctions::report::{render_junction_line, ReportFormat};
use junctions::testkit::{
    fixtures, gen_bipartite, gen_kinship, gen_random_arborescence, shuffle_lines,
    small_random_suite, SplitMix64,
};

fn quick_suite() -> Vec<Digraph> {
    let mut graphs: Vec<Digraph> = fixtures::named().into_iter().map(|(_, g)| g).collect();
    graphs.extend(small_random_suite(60));
    graphs
}

fn all_label_pairs(g: &Digraph) -> Vec<(String, String)> {
    let mut labels: Vec<String> = g.vertices().map(|v| g.label(v).to_string()).collect();
    labels.sort();
    let mut pairs = Vec::new();
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            pairs.push((labels[i].clone(), labels[j].clone()));
        }
    }
    pairs
}

#[test]
fn property1_is_empty_on_every_built_arborescence() {
    for g in quick_suite() {
        for s in g.vertices() {
            let arb = Arborescence::build(&g, s);
            assert_eq!(check_property1(&g, &arb), vec![], "source {s}");
        }
    }
}

#[test]
fn classification_partitions_the_in_tree_arcs() {
    for g in quick_suite() {
        for s in g.vertices() {
            let arb = Arborescence::build(&g, s);
            let classified = classify_arcs(&g, &arb);
            assert_eq!(classified.len(), g.arc_count());
            let tree_arcs = classified
                .iter()
                .filter(|(_, _, c)| *c == ArcClass::Tree)
                .count();
            assert_eq!(tree_arcs, arb.size().saturating_sub(1));
            let in_tree = classified
                .iter()
                .filter(|(_, _, c)| *c != ArcClass::OutsideArborescence)
                .count();
            let expected = g
                .arcs()
                .filter(|&(u, v)| arb.contains(u) && arb.contains(v))
                .count();
            assert_eq!(in_tree, expected);
        }
    }
}

// Every directed path out of the source commits to the child subtree of its
// endpoint: after the first vertex inside that subtree, it never leaves it.
#[test]
fn paths_stay_inside_the_subtree_they_end_in() {
    fn walk(g: &Digraph, arb: &Arborescence, path: &mut Vec<usize>) {
        let subtree_seq: Vec<usize> = path[1..]
            .iter()
            .map(|&v| arb.root_child_of(v).unwrap())
            .collect();
        if let Some(&target) = subtree_seq.last() {
            let first = subtree_seq.iter().position(|&c| c == target).unwrap();
            assert!(
                subtree_seq[first..].iter().all(|&c| c == target),
                "path {path:?} leaves the subtree of its endpoint"
            );
        }
        let cur = *path.last().unwrap();
        for &next in g.out_neighbors(cur) {
            path.push(next);
            walk(g, arb, path);
            path.pop();
        }
    }
    for g in small_random_suite(40)
        .into_iter()
        .filter(|g| g.vertex_count() <= 8)
    {
        for s in g.vertices() {
            let arb = Arborescence::build(&g, s);
            walk(&g, &arb, &mut vec![s]);
        }
    }
}

#[test]
fn index_agrees_with_the_flow_oracle_on_a_quick_sweep() {
    for g in quick_suite() {
        for s in g.vertices() {
            let index = build_junction_index(&g, s);
            for u in g.vertices() {
                for v in g.vertices() {
                    assert_eq!(
                        index.is_junction(u, v),
                        oracle_is_junction(&g, s, u, v),
                        "triple ({s}, {u}, {v}) in\n{}",
                        g.to_edge_list()
                    );
                }
            }
        }
    }
}

#[test]
fn junction_answers_are_symmetric() {
    for g in quick_suite() {
        for s in g.vertices() {
            let index = build_junction_index(&g, s);
            for u in g.vertices() {
                for v in g.vertices() {
                    assert_eq!(index.is_junction(u, v), index.is_junction(v, u));
                }
            }
        }
    }
}

// Vertices in subtrees of two different children of the source always have
// the source as a junction.
#[test]
fn cross_subtree_pairs_have_the_source_as_junction() {
    for g in quick_suite() {
        for s in g.vertices() {
            let index = build_junction_index(&g, s);
            let arb = index.arborescence();
            for u in g.vertices() {
                for v in g.vertices() {
                    let (cu, cv) = (arb.root_child_of(u), arb.root_child_of(v));
                    if let (Some(cu), Some(cv)) = (cu, cv) {
                        if cu != cv {
                            assert!(index.is_junction(u, v));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn junctions_imply_reachability_from_the_source() {
    for g in quick_suite() {
        let reach = reachability(&g);
        for s in g.vertices() {
            let index = build_junction_index(&g, s);
            for u in g.vertices() {
                for v in g.vertices() {
                    if index.is_junction(u, v) {
                        assert!(reach.reaches(s, u) && reach.reaches(s, v));
                    }
                }
            }
        }
    }
}

#[test]
fn arcs_examined_stays_within_the_linear_bound() {
    let mut graphs = quick_suite();
    graphs.push(gen_kinship(500, 21));
    graphs.push(gen_random_arborescence(500, 22));
    for g in graphs {
        let bound = (g.arc_count() + g.vertex_count()) as u64;
        for s in g.vertices() {
            let index = build_junction_index(&g, s);
            assert!(index.stats().arcs_examined <= bound);
        }
    }
}

// On a tree, junctions and LCAs coincide with the unique tree LCA.
#[test]
fn tree_inputs_yield_exactly_the_tree_lca() {
    for seed in [1u64, 2, 3] {
        let g = gen_random_arborescence(30, seed);
        let depth: Vec<usize> = {
            let mut d = vec![0; g.vertex_count()];
            for v in g.vertices().skip(1) {
                d[v] = d[g.in_neighbors(v)[0]] + 1;
            }
            d
        };
        let tree_lca = |mut a: usize, mut b: usize| {
            while a != b {
                if depth[a] >= depth[b] {
                    a = g.in_neighbors(a)[0];
                } else {
                    b = g.in_neighbors(b)[0];
                }
            }
            a
        };
        let pairs = all_label_pairs(&g);
        let reports = lcas_of_pairs(&g, &pairs);
        for report in &reports {
            let answer = report.result.as_ref().unwrap();
            let expected = g
                .label(tree_lca(
                    g.index_of(&report.u).unwrap(),
                    g.index_of(&report.v).unwrap(),
                ))
                .to_string();
            assert_eq!(answer.junctions, vec![expected.clone()]);
            assert_eq!(answer.lcas, vec![expected]);
        }
    }
}

#[test]
fn forest_pairs_across_trees_have_no_junctions() {
    let mut b = DigraphBuilder::new();
    b.add_arc("r1", "x").unwrap();
    b.add_arc("r1", "y").unwrap();
    b.add_arc("r2", "z").unwrap();
    let g = b.build();
    let reports = junctions_of_pairs(
        &g,
        &[
            ("x".to_string(), "z".to_string()),
            ("r1".to_string(), "r2".to_string()),
            ("x".to_string(), "y".to_string()),
        ],
    );
    assert_eq!(reports[0].result, Ok(vec![]));
    assert_eq!(reports[1].result, Ok(vec![]));
    assert_eq!(reports[2].result, Ok(vec!["r1".to_string()]));
}

#[test]
fn bipartite_listing_size_matches_the_layer_product() {
    let g = gen_bipartite(3, 4);
    let mut pairs = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            pairs.push((format!("b{i}"), format!("b{j}")));
        }
    }
    let reports = junctions_of_pairs(&g, &pairs);
    let total: usize = reports
        .iter()
        .map(|r| r.result.as_ref().unwrap().len())
        .sum();
    assert_eq!(total, 3 * 6);
    for report in &reports {
        assert_eq!(
            report.result.as_ref().unwrap(),
            &vec!["a0".to_string(), "a1".to_string(), "a2".to_string()]
        );
    }
}

#[test]
fn lca_reports_are_antichains_matching_the_oracle() {
    for g in quick_suite().into_iter().filter(|g| g.vertex_count() <= 8) {
        let reach = reachability(&g);
        let pairs = all_label_pairs(&g);
        let reports = lcas_of_pairs(&g, &pairs);
        for report in &reports {
            let answer = report.result.as_ref().unwrap();
            let (u, v) = (
                g.index_of(&report.u).unwrap(),
                g.index_of(&report.v).unwrap(),
            );
            let expected: Vec<String> = {
                let mut l: Vec<String> = oracle_lca_set(&g, u, v)
                    .into_iter()
                    .map(|s| g.label(s).to_string())
                    .collect();
                l.sort();
                l
            };
            assert_eq!(answer.lcas, expected);
            let expected_junctions: Vec<String> = {
                let mut l: Vec<String> = oracle_junction_set(&g, u, v)
                    .into_iter()
                    .map(|s| g.label(s).to_string())
                    .collect();
                l.sort();
                l
            };
            assert_eq!(answer.junctions, expected_junctions);
            for a in &answer.lcas {
                for b in &answer.lcas {
                    if a != b {
                        let (ai, bi) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
                        assert!(!reach.reaches(ai, bi), "LCA set is not an antichain");
                    }
                }
            }
        }
    }
}

// The report bytes must not depend on the run or on the adjacency order of
// the input, because junction sets are order-independent.
#[test]
fn reports_are_identical_across_adjacency_shuffles() {
    for (_, g) in fixtures::named() {
        let base_text = g.to_edge_list();
        let pairs = all_label_pairs(&g);
        let render = |text: &str| -> String {
            let graph = parse_edge_list(text).unwrap();
            junctions_of_pairs(&graph, &pairs)
                .iter()
                .map(|r| render_junction_line(r, ReportFormat::Tsv))
                .collect::<Vec<String>>()
                .join("\n")
        };
        let baseline = render(&base_text);
        assert_eq!(render(&base_text), baseline);
        for seed in 1..=5 {
            let shuffled = shuffle_lines(&base_text, seed);
            assert_eq!(render(&shuffled), baseline, "seed {seed}");
        }
    }
}

// Shuffling adjacency changes the DFS tree shape but never the answers.
#[test]
fn junction_answers_survive_adjacency_shuffles() {
    let mut rng = SplitMix64::new(99);
    for g in small_random_suite(30) {
        let base_text = g.to_edge_list();
        if base_text.is_empty() {
            continue;
        }
        let shuffled = parse_edge_list(&shuffle_lines(&base_text, rng.next_u64())).unwrap();
        // isolated vertices are not expressible in the edge-list text; they
        // answer false everywhere, so restrict to the vertices that survive
        let survivors: Vec<usize> = g
            .vertices()
            .filter(|&v| shuffled.index_of(g.label(v)).is_some())
            .collect();
        for &s in &survivors {
            let index = build_junction_index(&g, s);
            let other = build_junction_index(&shuffled, shuffled.index_of(g.label(s)).unwrap());
            for &u in &survivors {
                for &v in &survivors {
                    let (su, sv) = (
                        shuffled.index_of(g.label(u)).unwrap(),
                        shuffled.index_of(g.label(v)).unwrap(),
                    );
                    assert_eq!(index.is_junction(u, v), other.is_junction(su, sv));
                }
            }
        }
    }
}

#[test]
fn validate_accepts_every_generator_output() {
    for g in quick_suite() {
        assert!(validate_dag(&g).is_ok());
    }
}
