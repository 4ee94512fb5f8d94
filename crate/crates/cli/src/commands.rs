use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use reconf_core::cnf::parse_dimacs;
use reconf_core::explicit::{is_space, sp_space, ExplicitSpace};
use reconf_core::gadget_exp::{exp_witness, gen_exp};
use reconf_core::gadget_sat::{gen_sat, sat_witness, validate_facts};
use reconf_core::graph::{bfs_dist, export_dot, serialize_graph, Graph};
use reconf_core::is_reconfig::{is_bfs, tar_to_tj, tj_to_tar};
use reconf_core::random::{gnp, seeded};
use reconf_core::reduce::{build_gprime, is_to_sp, sp_to_is};
use reconf_core::seqfile::{
    parse_is_sequence, parse_paths, parse_sp_sequence, write_is_sequence, write_paths, write_sp_sequence,
    write_sp_state,
};
use reconf_core::solvers::{is_cograph, piran, tj_solve_ehf, ts_solve_p4free};
use reconf_core::sp::{endpoints, SpSpace};
use reconf_core::{Error, IsSequence, Model, Outcome, SearchLimits};

use crate::io::{check_set, check_vertex, emit, parse_set_arg, read, read_graph, with_ext, write};
use crate::{
    Algo, Command, ConvertCmd, ExportCmd, GenCmd, Limits, MapSeqArgs, MapTarget, ModelArg, OracleArgs, ReduceCmd,
    SolveCmd, Space, ValidateCmd, Verdict,
};

/// Cap on explicit state enumeration in `oracle`.
const ORACLE_CAP: usize = 200_000;

pub fn run(cmd: Command) -> Result<Verdict> {
    match cmd {
        Command::Gen(GenCmd::Exp { k, out, witness }) => gen_exp_cmd(k, &out, witness),
        Command::Gen(GenCmd::Sat { cnf, out, witness }) => gen_sat_cmd(&cnf, &out, witness),
        Command::Solve(SolveCmd::Sp { instance, graph, paths, meta, limits, out }) => {
            let (graph, paths, meta) = match instance {
                Some(p) => {
                    let json = with_ext(&p, "json");
                    (with_ext(&p, "graph"), with_ext(&p, "paths"), meta.or(json.exists().then_some(json)))
                }
                None => (
                    graph.ok_or_else(|| anyhow!("give --instance or --graph with --paths"))?,
                    paths.ok_or_else(|| anyhow!("--paths is required with --graph"))?,
                    meta,
                ),
            };
            solve_sp(&graph, &paths, meta.as_deref(), &limits, out.as_deref())
        }
        Command::Solve(SolveCmd::Is { graph, from, to, model, k, algo, limits, out }) => {
            solve_is(&graph, &from, &to, model, k, algo, &limits, out.as_deref())
        }
        Command::Convert(ConvertCmd::TarToTj { graph, seq, out }) => convert(&graph, &seq, out.as_deref(), true),
        Command::Convert(ConvertCmd::TjToTar { graph, seq, out }) => convert(&graph, &seq, out.as_deref(), false),
        Command::Reduce(ReduceCmd::SpToIs { graph, s, t, out }) => reduce(&graph, s, t, &out),
        Command::MapSeq(args) => map_seq(&args),
        Command::Export(ExportCmd::Dot { graph, highlight, paths, out }) => {
            export(&graph, &highlight, paths.as_deref(), out.as_deref())
        }
        Command::Validate(ValidateCmd::Sp { graph, seq }) => validate_sp(&graph, &seq),
        Command::Validate(ValidateCmd::Is { graph, seq }) => validate_is(&graph, &seq),
        Command::Oracle(args) => oracle(&args),
    }
}

fn gen_exp_cmd(k: usize, out: &Path, witness: bool) -> Result<Verdict> {
    let inst = gen_exp(k)?;
    let names: serde_json::Map<String, Value> =
        inst.g.labels().iter().map(|(&v, l)| (l.clone(), json!(v))).collect();
    let meta = json!({
        "kind": "exp",
        "k": k,
        "vertices": inst.g.n(),
        "edges": inst.g.edge_count(),
        "s": inst.s,
        "t": inst.t,
        "p_b": inst.p_b.vertices(),
        "p_e": inst.p_e.vertices(),
        "witness_length": 11 * ((1usize << k) - 1),
        "names": names,
    });
    write(&with_ext(out, "graph"), &serialize_graph(&inst.g))?;
    write(&with_ext(out, "paths"), &write_paths(&inst.p_b, &inst.p_e))?;
    write(&with_ext(out, "json"), &pretty(&meta))?;
    if witness {
        write(&with_ext(out, "seq"), &write_sp_sequence(&exp_witness(k)?))?;
    }
    println!("exp k={k}: {} vertices, {} edges", inst.g.n(), inst.g.edge_count());
    Ok(Verdict::Yes)
}

fn gen_sat_cmd(cnf: &Path, out: &Path, witness: bool) -> Result<Verdict> {
    let phi = parse_dimacs(&read(cnf)?).with_context(|| format!("in {}", cnf.display()))?;
    let inst = gen_sat(&phi);
    let attrs: Vec<Value> = inst
        .attrs
        .iter()
        .enumerate()
        .map(|(v, a)| {
            json!({
                "id": v,
                "label": inst.g.label(v),
                "kind": a.kind,
                "level": a.level,
                "vs": a.vs,
                "cs": a.cs,
                "depth": a.depth,
            })
        })
        .collect();
    let violations = validate_facts(&inst);
    let meta = json!({
        "kind": "sat",
        "n": phi.num_vars(),
        "m": phi.num_clauses(),
        "budget": inst.budget,
        "vertices": inst.g.n(),
        "edges": inst.g.edge_count(),
        "s": inst.s,
        "t": inst.t,
        "p_b": inst.p_b.vertices(),
        "p_e": inst.p_e.vertices(),
        "formula_edges": inst.formula_edges,
        "fact_violations": violations,
        "attrs": attrs,
    });
    write(&with_ext(out, "graph"), &serialize_graph(&inst.g))?;
    write(&with_ext(out, "paths"), &write_paths(&inst.p_b, &inst.p_e))?;
    write(&with_ext(out, "json"), &pretty(&meta))?;
    let mut summary = format!(
        "sat n={} m={}: {} vertices, {} edges, budget {}",
        phi.num_vars(),
        phi.num_clauses(),
        inst.g.n(),
        inst.g.edge_count(),
        inst.budget
    );
    if witness {
        match phi.brute_force_satisfiable() {
            Some(theta) => {
                write(&with_ext(out, "seq"), &write_sp_sequence(&sat_witness(&phi, &theta)?))?;
                summary.push_str(", witness written");
            }
            None => summary.push_str(", unsatisfiable (no witness)"),
        }
    }
    println!("{summary}");
    Ok(if violations.is_empty() { Verdict::Yes } else { Verdict::No })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn search_limits(limits: &Limits, max_len: Option<usize>) -> SearchLimits {
    SearchLimits { max_len, max_states: Some(limits.max_states) }
}

/// Maps a search result to output text and verdict. State-cap errors are
/// reported as undetermined rather than as failures.
fn finish<T>(
    out: Option<&Path>,
    result: reconf_core::Result<Outcome<T>>,
    limits: &Limits,
    max_len: Option<usize>,
    render: impl FnOnce(&T) -> String,
) -> Result<Verdict> {
    match result {
        Ok(Outcome::Found(x)) => {
            emit(out, &render(&x))?;
            Ok(Verdict::Yes)
        }
        Ok(Outcome::NotReconfigurable) => {
            emit(out, "not-reconfigurable\n")?;
            Ok(Verdict::No)
        }
        Ok(Outcome::BudgetExceeded) => {
            emit(out, &format!("budget-exceeded {}\n", max_len.unwrap_or(0)))?;
            Ok(if limits.strict_budget { Verdict::Undetermined } else { Verdict::No })
        }
        Err(Error::ResourceLimit(msg)) => {
            emit(out, &format!("undetermined: {msg}\n"))?;
            Ok(Verdict::Undetermined)
        }
        Err(e) => Err(e.into()),
    }
}

fn solve_sp(graph: &Path, paths: &Path, meta: Option<&Path>, limits: &Limits, out: Option<&Path>) -> Result<Verdict> {
    let g = read_graph(graph)?;
    let (from, to) = parse_paths(&read(paths)?).with_context(|| format!("in {}", paths.display()))?;
    let budget = match meta {
        Some(m) => {
            let v: Value = serde_json::from_str(&read(m)?).with_context(|| format!("in {}", m.display()))?;
            v.get("budget").and_then(Value::as_u64).map(|b| b as usize)
        }
        None => None,
    };
    let max_len = limits.max_len.or(budget);
    let (s, t) = endpoints(&from)?;
    check_vertex(&g, s, "source")?;
    check_vertex(&g, t, "target")?;
    let space = SpSpace::new(&g, s, t)?;
    for (name, p) in [("source", &from), ("target", &to)] {
        space.check(p).map_err(|m| anyhow!("{name} path {}: {m}", write_sp_state(p)))?;
    }
    let result = space.bfs(&from, &to, search_limits(limits, max_len));
    if let Ok(Outcome::Found(seq)) = &result {
        eprintln!("distance {}", seq.len());
    }
    finish(out, result, limits, max_len, write_sp_sequence)
}

#[allow(clippy::too_many_arguments)]
fn solve_is(
    graph: &Path,
    from: &str,
    to: &str,
    model: ModelArg,
    k: Option<usize>,
    algo: Algo,
    limits: &Limits,
    out: Option<&Path>,
) -> Result<Verdict> {
    let g = read_graph(graph)?;
    let (a, b) = (parse_set_arg(from)?, parse_set_arg(to)?);
    check_set(&g, &a, "source vertex")?;
    check_set(&g, &b, "target vertex")?;
    let model = match model {
        ModelArg::Ts => Model::Ts,
        ModelArg::Tj => Model::Tj,
        ModelArg::Tar => Model::Tar { k: k.unwrap_or(a.len()) },
    };
    let chosen = match algo {
        Algo::Auto => {
            let forest = || a.len() == b.len() && piran(&g, &a, &b).is_ok_and(|p| p.is_forest());
            if model == Model::Tj && forest() {
                Algo::Ehf
            } else if model == Model::Ts && a.is_independent(&g) && b.is_independent(&g) && is_cograph(&g) {
                Algo::Cograph
            } else {
                Algo::Bfs
            }
        }
        other => other,
    };
    let (name, result) = match chosen {
        Algo::Ehf => {
            if model != Model::Tj {
                bail!("--algo ehf solves the tj model only");
            }
            ("ehf", Ok(Outcome::Found(tj_solve_ehf(&g, &a, &b)?)))
        }
        Algo::Cograph => {
            if model != Model::Ts {
                bail!("--algo cograph solves the ts model only");
            }
            ("cograph", Ok(ts_solve_p4free(&g, &a, &b)?))
        }
        _ => ("bfs", is_bfs(&g, &a, &b, model, search_limits(limits, limits.max_len))),
    };
    // The polynomial solvers return shortest sequences, so the budget test is a length check.
    let result = result.map(|o| match o {
        Outcome::Found(s) if limits.max_len.is_some_and(|l| s.len() > l) => Outcome::BudgetExceeded,
        o => o,
    });
    finish(out, result, limits, limits.max_len, |seq: &IsSequence| {
        format!("# solver: {name}\n{}", write_is_sequence(seq))
    })
}

fn convert(graph: &Path, seq: &Path, out: Option<&Path>, to_tj: bool) -> Result<Verdict> {
    let g = read_graph(graph)?;
    let input = parse_is_sequence(&read(seq)?).with_context(|| format!("in {}", seq.display()))?;
    let result = if to_tj { tar_to_tj(&g, &input)? } else { tj_to_tar(&g, &input)? };
    emit(out, &write_is_sequence(&result))?;
    Ok(Verdict::Yes)
}

fn reduce(graph: &Path, s: usize, t: usize, out: &Path) -> Result<Verdict> {
    let g = read_graph(graph)?;
    check_vertex(&g, s, "source")?;
    check_vertex(&g, t, "target")?;
    let r = build_gprime(&g, s, t)?;
    let mut table = String::from("# reduced original layer\n");
    for (j, &v) in r.from_prime.iter().enumerate() {
        writeln!(table, "{j} {v} {}", r.layer_of_prime(j)).unwrap();
    }
    write(&with_ext(out, "graph"), &serialize_graph(&r.g_prime))?;
    write(&with_ext(out, "layers"), &table)?;
    println!(
        "reduced: {} vertices, {} edges, {} layers, path sets of size {}",
        r.g_prime.n(),
        r.g_prime.edge_count(),
        r.layers.layers.len(),
        r.set_size()
    );
    Ok(Verdict::Yes)
}

fn map_seq(args: &MapSeqArgs) -> Result<Verdict> {
    let g = read_graph(&args.graph)?;
    check_vertex(&g, args.s, "source")?;
    check_vertex(&g, args.t, "target")?;
    let r = build_gprime(&g, args.s, args.t)?;
    let text = read(&args.seq)?;
    let ctx = || format!("in {}", args.seq.display());
    let output = match args.to {
        MapTarget::Sp => write_sp_sequence(&is_to_sp(&g, &r, &parse_is_sequence(&text).with_context(ctx)?)?),
        target => {
            let model = match target {
                MapTarget::Ts => Model::Ts,
                MapTarget::Tj => Model::Tj,
                _ => Model::Tar { k: r.set_size() },
            };
            let seq = parse_sp_sequence(&text).with_context(ctx)?;
            write_is_sequence(&sp_to_is(&g, &r, &seq, model)?)
        }
    };
    emit(args.out.as_deref(), &output)?;
    Ok(Verdict::Yes)
}

fn export(graph: &Path, highlight: &[String], paths: Option<&Path>, out: Option<&Path>) -> Result<Verdict> {
    let g = read_graph(graph)?;
    let mut sets = Vec::new();
    for h in highlight {
        let set = parse_set_arg(h)?;
        check_set(&g, &set, "highlighted vertex")?;
        sets.push(set.vertices().to_vec());
    }
    if let Some(p) = paths {
        let (a, b) = parse_paths(&read(p)?).with_context(|| format!("in {}", p.display()))?;
        for path in [a, b] {
            for &v in path.vertices() {
                check_vertex(&g, v, "path vertex")?;
            }
            sets.push(path.0);
        }
    }
    emit(out, &export_dot(&g, &sets))?;
    Ok(Verdict::Yes)
}

fn report_validity(result: reconf_core::Result<()>, what: &str, len: usize) -> Result<Verdict> {
    match result {
        Ok(()) => {
            println!("valid {what} of length {len}");
            Ok(Verdict::Yes)
        }
        Err(e @ (Error::InvalidSequence { .. } | Error::InvalidState(_))) => {
            println!("invalid {what}: {e}");
            Ok(Verdict::No)
        }
        Err(e) => Err(e.into()),
    }
}

fn validate_sp(graph: &Path, seq: &Path) -> Result<Verdict> {
    let g = read_graph(graph)?;
    let sq = parse_sp_sequence(&read(seq)?).with_context(|| format!("in {}", seq.display()))?;
    let (s, t) = endpoints(sq.first())?;
    for v in sq.states.iter().flat_map(|p| p.vertices()) {
        check_vertex(&g, *v, "path vertex")?;
    }
    let result = SpSpace::new(&g, s, t).and_then(|space| space.validate_sequence(&sq));
    report_validity(result, "sp-sequence", sq.len())
}

fn validate_is(graph: &Path, seq: &Path) -> Result<Verdict> {
    let g = read_graph(graph)?;
    let sq = parse_is_sequence(&read(seq)?).with_context(|| format!("in {}", seq.display()))?;
    for st in &sq.states {
        check_set(&g, st, "token")?;
    }
    report_validity(sq.validate(&g), &format!("{} is-sequence", sq.model), sq.len())
}

fn oracle(args: &OracleArgs) -> Result<Verdict> {
    let mut header = String::new();
    let g = match &args.graph {
        Some(path) => read_graph(path)?,
        None => {
            if !(0.0..=1.0).contains(&args.p) {
                bail!("--p must lie in [0, 1]");
            }
            let g = gnp(&mut seeded(args.seed), args.n, args.p);
            writeln!(header, "# random graph: seed {} n {} p {}", args.seed, args.n, args.p).unwrap();
            if let Some(path) = &args.save_graph {
                write(path, &serialize_graph(&g))?;
            }
            g
        }
    };
    if g.n() == 0 {
        bail!("graph has no vertices");
    }
    let text = match args.space {
        Space::Sp => {
            let s = args.s.unwrap_or(0);
            check_vertex(&g, s, "source")?;
            let t = match args.t {
                Some(t) => t,
                None => farthest_from(&g, s),
            };
            check_vertex(&g, t, "target")?;
            writeln!(header, "# s {s} t {t}").unwrap();
            dump("sp", &sp_space(&g, s, t, ORACLE_CAP)?, write_sp_state)
        }
        space => {
            let model = match space {
                Space::Ts => Model::Ts,
                Space::Tj => Model::Tj,
                _ => Model::Tar { k: args.k },
            };
            let label = match model {
                Model::Tar { k } => format!("tar {k}"),
                m => format!("{m} {}", args.k),
            };
            dump(&label, &is_space(&g, model, args.k)?, ToString::to_string)
        }
    };
    emit(args.out.as_deref(), &format!("{header}{text}"))?;
    Ok(Verdict::Yes)
}

/// Lowest-id vertex at maximum finite distance from `s`.
fn farthest_from(g: &Graph, s: usize) -> usize {
    let d = bfs_dist(g, s);
    let mut best = s;
    for v in g.vertices() {
        if d[v] > d[best] {
            best = v;
        }
    }
    best
}

fn dump<T>(label: &str, space: &ExplicitSpace<T>, show: impl Fn(&T) -> String) -> String {
    let mut out = format!("oracle {label} states {} edges {}\n", space.states.len(), space.graph.edge_count());
    for (i, st) in space.states.iter().enumerate() {
        writeln!(out, "state {i} {}", show(st)).unwrap();
    }
    for (i, j) in space.graph.edges() {
        writeln!(out, "edge {i} {j}").unwrap();
    }
    out
}
