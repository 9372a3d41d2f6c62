//! Command-line front end: batch junction/LCA reports, verification sweeps
//! against the flow oracle, deterministic generators, and benchmarks.
//!
//! Exit codes: 0 success, 1 usage or I/O failure, 2 validation failure
//! (input graph is not a DAG, or an internal bound is violated), 3 oracle
//! mismatch.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use junctions::arborescence::{render_tree_dump, Arborescence};
use junctions::graph::{parse_edge_list, validate_dag, Digraph};
use junctions::junction::{build_junction_index, junctions_of_pairs_jobs};
use junctions::lca::lcas_of_pairs_jobs;
use junctions::oracle::{enumerate_disjoint_path_pair, oracle_is_junction};
use junctions::report::{parse_pairs, render_junction_line, render_lca_line, ReportFormat};
use junctions::testkit::{GenSpec, SplitMix64};

const USAGE: &str = "\
usage: junctions <command> [options]

commands:
  validate <graph>                      certify acyclicity; print a topological order
  junctions <graph> <pairs> [options]   list all junctions of each query pair
  lcas <graph> <pairs> [options]        list junctions and LCAs of each query pair
  source-pairs <graph> --source <label> stream every pair with the source as junction
  oracle-check [options]                sweep index answers against the flow oracle
  gen --family <name> [options]         emit a generated graph as an edge list
  bench [options]                       per-source build timings and counter bounds
  dump-tree <graph> --source <label>    dump the DFS arborescence of a source

options:
  --format tsv|jsonl     report format for junctions/lcas (default tsv)
  --jobs <n>             parallel index builds (default $JUNCTIONS_JOBS or 1)
  --source <label>       source vertex for source-pairs/dump-tree
  --family <name>        random-dag | bipartite | kinship | arborescence | path | star
  --n/--a/--b <n>        generator sizes        --p <prob>   random-dag arc probability
  --seed <n>             generator seed         --count <n>  graphs per oracle-check sweep
  --arcs <n>             bench target arc count --sizes <list> bench sizes, comma-separated
  --queries <n>          bench query count      --enum-limit <n> enumerator cutoff (default 8)

exit codes: 0 ok, 1 usage/IO, 2 validation failure, 3 oracle mismatch
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    ExitCode::from(run(args))
}

fn run(args: Vec<String>) -> u8 {
    let Some((command, rest)) = args.split_first() else {
        eprint!("{USAGE}");
        return 1;
    };
    let parsed = match Args::parse(rest) {
        Ok(parsed) => parsed,
        Err(e) => return usage_error(&e),
    };
    let result = match command.as_str() {
        "validate" => cmd_validate(parsed),
        "junctions" => cmd_reports(parsed, ReportKind::Junctions),
        "lcas" => cmd_reports(parsed, ReportKind::Lcas),
        "source-pairs" => cmd_source_pairs(parsed),
        "oracle-check" => cmd_oracle_check(parsed),
        "gen" => cmd_gen(parsed),
        "bench" => cmd_bench(parsed),
        "dump-tree" => cmd_dump_tree(parsed),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            return 0;
        }
        other => Err(CmdError::Usage(format!("unknown command {other:?}"))),
    };
    match result {
        Ok(()) => 0,
        Err(CmdError::Usage(msg)) => usage_error(&msg),
        Err(CmdError::Io(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CmdError::Validation(msg)) => {
            eprintln!("{msg}");
            2
        }
        Err(CmdError::OracleMismatch(msg)) => {
            eprintln!("{msg}");
            3
        }
    }
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    eprint!("{USAGE}");
    1
}

enum CmdError {
    Usage(String),
    Io(String),
    Validation(String),
    OracleMismatch(String),
}

impl From<io::Error> for CmdError {
    fn from(e: io::Error) -> Self {
        CmdError::Io(e.to_string())
    }
}

/// Positional arguments plus `--flag value` options; leftover flags are
/// rejected by `finish`.
struct Args {
    positional: Vec<String>,
    flags: HashMap<String, String>,
}

impl Args {
    fn parse(args: &[String]) -> Result<Args, String> {
        let mut positional = Vec::new();
        let mut flags = HashMap::new();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            if let Some(name) = arg.strip_prefix("--") {
                let value = it
                    .next()
                    .ok_or_else(|| format!("flag --{name} expects a value"))?;
                if flags.insert(name.to_string(), value.clone()).is_some() {
                    return Err(format!("flag --{name} given twice"));
                }
            } else {
                positional.push(arg.clone());
            }
        }
        Ok(Args { positional, flags })
    }

    fn positional(&self, want: usize) -> Result<&[String], CmdError> {
        if self.positional.len() != want {
            return Err(CmdError::Usage(format!(
                "expected {want} positional argument(s), got {}",
                self.positional.len()
            )));
        }
        Ok(&self.positional)
    }

    fn take(&mut self, name: &str) -> Option<String> {
        self.flags.remove(name)
    }

    fn take_parsed<T: std::str::FromStr>(&mut self, name: &str, default: T) -> Result<T, CmdError> {
        match self.flags.remove(name) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|_| CmdError::Usage(format!("invalid value for --{name}: {raw:?}"))),
        }
    }

    fn finish(&self) -> Result<(), CmdError> {
        if let Some(name) = self.flags.keys().next() {
            return Err(CmdError::Usage(format!("unknown flag --{name}")));
        }
        Ok(())
    }
}

fn default_jobs() -> usize {
    std::env::var("JUNCTIONS_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&j| j >= 1)
        .unwrap_or(1)
}

fn read_file(path: &str) -> Result<String, CmdError> {
    fs::read_to_string(path).map_err(|e| CmdError::Io(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<Digraph, CmdError> {
    let text = read_file(path)?;
    parse_edge_list(&text).map_err(|e| CmdError::Io(format!("{path}: {e}")))
}

fn load_dag(path: &str) -> Result<Digraph, CmdError> {
    let g = load_graph(path)?;
    match validate_dag(&g) {
        Ok(_) => Ok(g),
        Err(cert) => Err(CmdError::Validation(format!(
            "{path}: not a DAG, cycle: {}",
            cert.display(&g)
        ))),
    }
}

fn cmd_validate(args: Args) -> Result<(), CmdError> {
    args.finish()?;
    let [path] = args.positional(1)? else {
        unreachable!()
    };
    let g = load_graph(path)?;
    match validate_dag(&g) {
        Ok(order) => {
            let stdout = io::stdout().lock();
            let mut out = BufWriter::new(stdout);
            for v in order {
                writeln!(out, "{}", g.label(v))?;
            }
            out.flush()?;
            Ok(())
        }
        Err(cert) => Err(CmdError::Validation(format!("cycle: {}", cert.display(&g)))),
    }
}

enum ReportKind {
    Junctions,
    Lcas,
}

fn cmd_reports(mut args: Args, kind: ReportKind) -> Result<(), CmdError> {
    let format = match args.take("format") {
        None => ReportFormat::Tsv,
        Some(raw) => ReportFormat::from_flag(&raw)
            .ok_or_else(|| CmdError::Usage(format!("invalid --format {raw:?}")))?,
    };
    let jobs = args.take_parsed("jobs", default_jobs())?;
    args.finish()?;
    let [graph_path, pairs_path] = args.positional(2)? else {
        unreachable!()
    };
    let g = load_dag(graph_path)?;
    let pairs_text = read_file(pairs_path)?;
    let pairs = parse_pairs(&pairs_text).map_err(|e| CmdError::Io(format!("{pairs_path}: {e}")))?;

    let stdout = io::stdout().lock();
    let mut out = BufWriter::new(stdout);
    let mut failures = 0usize;
    match kind {
        ReportKind::Junctions => {
            for report in junctions_of_pairs_jobs(&g, &pairs, jobs) {
                failures += report.result.is_err() as usize;
                writeln!(out, "{}", render_junction_line(&report, format))?;
            }
        }
        ReportKind::Lcas => {
            for report in lcas_of_pairs_jobs(&g, &pairs, jobs) {
                failures += report.result.is_err() as usize;
                writeln!(out, "{}", render_lca_line(&report, format))?;
            }
        }
    }
    out.flush()?;
    if !pairs.is_empty() && failures == pairs.len() {
        return Err(CmdError::Io("every pair failed to resolve".to_string()));
    }
    Ok(())
}

fn cmd_source_pairs(mut args: Args) -> Result<(), CmdError> {
    let source = args
        .take("source")
        .ok_or_else(|| CmdError::Usage("source-pairs requires --source".to_string()))?;
    args.finish()?;
    let [graph_path] = args.positional(1)? else {
        unreachable!()
    };
    let g = load_dag(graph_path)?;
    let s = g
        .index_of(&source)
        .ok_or_else(|| CmdError::Io(format!("unknown source label {source:?}")))?;
    let index = build_junction_index(&g, s);
    let stdout = io::stdout().lock();
    let mut out = BufWriter::new(stdout);
    for (u, v) in index.junction_pairs(&g) {
        writeln!(out, "{} {}", g.label(u), g.label(v))?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_dump_tree(mut args: Args) -> Result<(), CmdError> {
    let source = args
        .take("source")
        .ok_or_else(|| CmdError::Usage("dump-tree requires --source".to_string()))?;
    args.finish()?;
    let [graph_path] = args.positional(1)? else {
        unreachable!()
    };
    let g = load_dag(graph_path)?;
    let s = g
        .index_of(&source)
        .ok_or_else(|| CmdError::Io(format!("unknown source label {source:?}")))?;
    let arb = Arborescence::build(&g, s);
    print!("{}", render_tree_dump(&g, &arb));
    Ok(())
}

fn gen_spec_from(args: &mut Args) -> Result<GenSpec, CmdError> {
    let family = args
        .take("family")
        .ok_or_else(|| CmdError::Usage("missing --family".to_string()))?;
    let n = args.take_parsed("n", 10usize)?;
    let seed = args.take_parsed("seed", 1u64)?;
    match family.as_str() {
        "random-dag" => {
            let arc_prob = args.take_parsed("p", 0.3f64)?;
            if !(0.0..=1.0).contains(&arc_prob) {
                return Err(CmdError::Usage("--p must be in [0, 1]".to_string()));
            }
            Ok(GenSpec::RandomDag { n, arc_prob, seed })
        }
        "bipartite" => {
            let a = args.take_parsed("a", 3usize)?;
            let b = args.take_parsed("b", 4usize)?;
            Ok(GenSpec::Bipartite { a, b })
        }
        "kinship" => Ok(GenSpec::Kinship { n, seed }),
        "arborescence" => Ok(GenSpec::RandomArborescence { n, seed }),
        "path" => Ok(GenSpec::Path { n }),
        "star" => Ok(GenSpec::Star { n }),
        other => Err(CmdError::Usage(format!("unknown family {other:?}"))),
    }
}

fn cmd_gen(mut args: Args) -> Result<(), CmdError> {
    let spec = gen_spec_from(&mut args)?;
    args.finish()?;
    args.positional(0)?;
    print!("{}", spec.generate().to_edge_list());
    Ok(())
}

fn bump_seed(spec: &GenSpec, offset: u64) -> GenSpec {
    match *spec {
        GenSpec::RandomDag { n, arc_prob, seed } => GenSpec::RandomDag {
            n,
            arc_prob,
            seed: seed + offset,
        },
        GenSpec::Kinship { n, seed } => GenSpec::Kinship {
            n,
            seed: seed + offset,
        },
        GenSpec::RandomArborescence { n, seed } => GenSpec::RandomArborescence {
            n,
            seed: seed + offset,
        },
        ref fixed => fixed.clone(),
    }
}

fn cmd_oracle_check(mut args: Args) -> Result<(), CmdError> {
    let enum_limit = args.take_parsed("enum-limit", 8usize)?;
    let graphs: Vec<(String, Digraph)> = if let Some(path) = args.take("graph") {
        args.finish()?;
        args.positional(0)?;
        vec![(path.clone(), load_dag(&path)?)]
    } else {
        let count = args.take_parsed("count", 25u64)?;
        let spec = gen_spec_from(&mut args)?;
        args.finish()?;
        args.positional(0)?;
        (0..count)
            .map(|i| {
                let spec = bump_seed(&spec, i);
                (format!("{spec:?}"), spec.generate())
            })
            .collect()
    };

    let mut triples = 0u64;
    for (name, g) in &graphs {
        if let Err(cert) = validate_dag(g) {
            return Err(CmdError::Validation(format!(
                "{name}: not a DAG, cycle: {}",
                cert.display(g)
            )));
        }
        for s in g.vertices() {
            let index = build_junction_index(g, s);
            for u in g.vertices() {
                for v in g.vertices() {
                    let fast = index.is_junction(u, v);
                    let slow = oracle_is_junction(g, s, u, v);
                    triples += 1;
                    if fast != slow {
                        return Err(CmdError::OracleMismatch(reproducer(
                            name, g, s, u, v, fast, slow,
                        )));
                    }
                    if u != v && g.vertex_count() <= enum_limit {
                        let enumerated = enumerate_disjoint_path_pair(g, s, u, v)
                            .expect("instances under the enum limit fit the enumerator");
                        if enumerated != slow {
                            return Err(CmdError::OracleMismatch(format!(
                                "flow oracle and path enumerator disagree\n{}",
                                reproducer(name, g, s, u, v, enumerated, slow)
                            )));
                        }
                    }
                }
            }
        }
    }
    println!(
        "checked {} graph(s), {} triple(s): index and oracle agree",
        graphs.len(),
        triples
    );
    Ok(())
}

fn reproducer(
    name: &str,
    g: &Digraph,
    s: usize,
    u: usize,
    v: usize,
    fast: bool,
    slow: bool,
) -> String {
    let mut msg = String::new();
    let _ = writeln!(msg, "mismatch in {name}");
    let _ = writeln!(
        msg,
        "source={} u={} v={}: index says {}, oracle says {}",
        g.label(s),
        g.label(u),
        g.label(v),
        fast,
        slow
    );
    let _ = writeln!(msg, "graph:");
    let _ = write!(msg, "{}", g.to_edge_list());
    msg
}

fn cmd_bench(mut args: Args) -> Result<(), CmdError> {
    let sizes_raw = args
        .take("sizes")
        .unwrap_or_else(|| "500,1000,2000".to_string());
    let seed = args.take_parsed("seed", 42u64)?;
    let arcs_target = args.take_parsed("arcs", 0usize)?;
    let queries = args.take_parsed("queries", 1_000_000u64)?;
    let family = args.take("family").unwrap_or_else(|| "kinship".to_string());
    args.finish()?;
    args.positional(0)?;

    let sizes: Result<Vec<usize>, _> = sizes_raw.split(',').map(|s| s.trim().parse()).collect();
    let sizes = sizes.map_err(|_| CmdError::Usage(format!("invalid --sizes {sizes_raw:?}")))?;

    println!(
        "family\tn\tm\tbuild-total-ms\tbuild-avg-us\tmax-arcs-examined\tbound\tqueries-per-sec"
    );
    for &n in &sizes {
        let spec = match family.as_str() {
            "random-dag" => {
                let target = if arcs_target > 0 { arcs_target } else { 10 * n };
                let possible = n * n.saturating_sub(1) / 2;
                let arc_prob = if possible == 0 {
                    0.0
                } else {
                    (target as f64 / possible as f64).min(1.0)
                };
                GenSpec::RandomDag { n, arc_prob, seed }
            }
            "bipartite" => GenSpec::Bipartite {
                a: n / 2,
                b: n - n / 2,
            },
            "kinship" => GenSpec::Kinship { n, seed },
            "arborescence" => GenSpec::RandomArborescence { n, seed },
            "path" => GenSpec::Path { n },
            "star" => GenSpec::Star { n },
            other => return Err(CmdError::Usage(format!("unknown family {other:?}"))),
        };
        let g = spec.generate();
        let bound = (g.arc_count() + g.vertex_count()) as u64;
        let started = Instant::now();
        let mut max_examined = 0u64;
        let mut biggest_tree = 0usize;
        let mut probe_index = None;
        for s in g.vertices() {
            let index = build_junction_index(&g, s);
            let examined = index.stats().arcs_examined;
            if examined > bound {
                return Err(CmdError::Validation(format!(
                    "arcs_examined bound violated at n={n}, source {}: {examined} > {bound}",
                    g.label(s)
                )));
            }
            max_examined = max_examined.max(examined);
            if index.arborescence().size() > biggest_tree || probe_index.is_none() {
                biggest_tree = index.arborescence().size();
                probe_index = Some(index);
            }
        }
        let build_elapsed = started.elapsed();
        let throughput = probe_index
            .map(|index| {
                let mut rng = SplitMix64::new(seed);
                let n64 = g.vertex_count() as u64;
                let mut hits = 0u64;
                let started = Instant::now();
                for _ in 0..queries {
                    let u = rng.next_below(n64) as usize;
                    let v = rng.next_below(n64) as usize;
                    hits += index.is_junction(u, v) as u64;
                }
                let secs = started.elapsed().as_secs_f64();
                std::hint::black_box(hits);
                if secs > 0.0 {
                    (queries as f64 / secs) as u64
                } else {
                    u64::MAX
                }
            })
            .unwrap_or(0);
        println!(
            "{family}\t{n}\t{}\t{}\t{:.1}\t{max_examined}\t{bound}\t{throughput}",
            g.arc_count(),
            build_elapsed.as_millis(),
            build_elapsed.as_micros() as f64 / g.vertex_count().max(1) as f64,
        );
    }
    Ok(())
}
