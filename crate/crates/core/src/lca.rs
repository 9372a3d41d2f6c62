//! All LCAs of query pairs: junction sets filtered through the transitive
//! closure.
//!
//! A junction `s` of a pair is lowest exactly when no other junction of the
//! same pair is reachable from `s`. The filter tests each junction against
//! the others with bit-matrix lookups, O(|J|^2) per pair, which is cheap
//! next to the index builds whenever the junction sets are small.

use crate::graph::{reachability, Digraph, ReachabilityMatrix};
use crate::junction::{junction_sources_for_pairs, resolve_pairs};

/// Junctions and the lowest ones among them, label-sorted. `lcas` is always
/// a subset of `junctions` and is non-empty whenever `junctions` is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcaAnswer {
    pub junctions: Vec<String>,
    pub lcas: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcaReport {
    pub u: String,
    pub v: String,
    pub result: Result<LcaAnswer, String>,
}

/// The junctions from which no other junction of the same pair is
/// reachable.
pub fn lowest_junctions(junctions: &[usize], reach: &ReachabilityMatrix) -> Vec<usize> {
    junctions
        .iter()
        .copied()
        .filter(|&s| {
            !junctions
                .iter()
                .any(|&other| other != s && reach.reaches(s, other))
        })
        .collect()
}

pub fn lcas_of_pairs(g: &Digraph, pairs: &[(String, String)]) -> Vec<LcaReport> {
    lcas_of_pairs_jobs(g, pairs, 1)
}

pub fn lcas_of_pairs_jobs(g: &Digraph, pairs: &[(String, String)], jobs: usize) -> Vec<LcaReport> {
    let resolved = resolve_pairs(g, pairs);
    let queries: Vec<(usize, usize)> = resolved
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .filter(|(u, v)| u != v)
        .copied()
        .collect();
    let hits = junction_sources_for_pairs(g, &queries, jobs);
    let reach = reachability(g);
    let sorted_labels = |vs: &[usize]| {
        let mut labels: Vec<String> = vs.iter().map(|&s| g.label(s).to_string()).collect();
        labels.sort_unstable();
        labels
    };
    let mut next_query = 0;
    resolved
        .into_iter()
        .zip(pairs)
        .map(|(res, (u, v))| {
            let result = match res {
                Err(e) => Err(e),
                Ok((ui, vi)) if ui == vi => Ok(LcaAnswer {
                    junctions: Vec::new(),
                    lcas: Vec::new(),
                }),
                Ok(_) => {
                    let junctions = &hits[next_query];
                    next_query += 1;
                    let lowest = lowest_junctions(junctions, &reach);
                    Ok(LcaAnswer {
                        junctions: sorted_labels(junctions),
                        lcas: sorted_labels(&lowest),
                    })
                }
            };
            LcaReport {
                u: u.clone(),
                v: v.clone(),
                result,
            }
        })
        .collect()
}
