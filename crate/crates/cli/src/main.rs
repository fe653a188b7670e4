mod args;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::Parser;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sierpinski_steiner::ham::{check_paths, verify_sierpinski_paths};
use sierpinski_steiner::oracle::{connectivity_over, sweep_csv, SweepReport};
use sierpinski_steiner::props::{degree_distribution, degrees_csv, entropy_csv, net_props, props_csv, PROPS_CAP};
use sierpinski_steiner::steiner::TreeSetExport;
use sierpinski_steiner::{
    connectivity_k, connectivity_value, constrained_paths, construct_steiner_trees, construct_trees_large_k,
    decompose_complete, decompose_sierpinski, worst_case_subset, ConstructionMode, Exec, Flavor, GenericGraph,
    OracleCaps, SearchBudget, SierpinskiGraph, Verdict, VertexWord, DEFAULT_MATERIALIZE_CAP,
};

use args::*;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a verification failed.
fn run(cli: Cli) -> Result<bool> {
    let exec = executor(cli.jobs)?;
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Pack(a) => pack(a),
        Command::Oracle(a) => oracle(a, exec),
        Command::Props(a) => props(a, exec),
        Command::Hamdecomp(a) => hamdecomp(a),
        Command::Verify(a) => verify(a),
    }
}

fn executor(jobs: Option<usize>) -> Result<Exec> {
    match jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(j) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .context("configuring the thread pool")?;
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => {
            eprintln!("note: built without the parallel feature; running sequentially");
            Ok(Exec::Sequential)
        }
        None if Exec::parallel_available() => Ok(Exec::Parallel),
        None => Ok(Exec::Sequential),
    }
}

/// SIERPINSKI_CAP replaces the built-in default; `--cap` above that default
/// must be acknowledged with `--unsafe`.
fn resolve_cap(caps: &CapArgs, builtin: u128) -> Result<u128> {
    let default = match std::env::var("SIERPINSKI_CAP") {
        Ok(v) => v.trim().parse().with_context(|| format!("SIERPINSKI_CAP={v:?} is not a number"))?,
        Err(_) => builtin,
    };
    match caps.cap {
        None => Ok(default),
        Some(c) if c <= default || caps.allow_unsafe => Ok(c),
        Some(c) => bail!("--cap {c} exceeds the default {default}; pass --unsafe to allow it"),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn gen(a: GenArgs) -> Result<bool> {
    let g = SierpinskiGraph::new(a.graph.n, a.graph.l)?;
    let cap = resolve_cap(&a.caps, DEFAULT_MATERIALIZE_CAP)?;
    let text = match a.format {
        Format::Dot => g.to_dot(cap)?,
        Format::Json => serde_json::to_string_pretty(&g.to_json(cap)?)?,
        Format::Csv => bail!("gen writes dot or json"),
    };
    emit(a.out.as_deref(), &ensure_newline(text))?;
    Ok(true)
}

fn resolve_targets(g: &SierpinskiGraph, t: &TargetArgs) -> Result<Vec<VertexWord>> {
    if t.seed.is_some() && t.policy != Some(Policy::Random) {
        bail!("--seed only applies to --u-policy random");
    }
    if let Some(words) = &t.words {
        let targets = words
            .iter()
            .map(|w| g.parse_word(w.trim()))
            .collect::<sierpinski_steiner::Result<Vec<_>>>()?;
        if let Some(k) = t.k {
            ensure!(k == targets.len(), "-k {k} but --u lists {} vertices", targets.len());
        }
        return Ok(targets);
    }
    let need_k = || t.k.ok_or_else(|| anyhow!("-k is required with this --u-policy"));
    match t.policy {
        None => bail!("give targets with --u or choose --u-policy"),
        Some(Policy::Worst) => Ok(worst_case_subset(g.depth(), g.base(), need_k()?)?),
        Some(Policy::Extreme) => {
            if let Some(k) = t.k {
                ensure!(k == g.base(), "--u-policy extreme selects all {} extreme vertices, not {k}", g.base());
            }
            Ok(g.extreme_vertices())
        }
        Some(Policy::Random) => {
            let seed = t.seed.ok_or_else(|| anyhow!("--u-policy random needs --seed"))?;
            let k = need_k()?;
            let order = usize::try_from(g.order()).context("graph too large to sample from")?;
            ensure!(k <= order, "k = {k} exceeds the {order} vertices");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx = sample(&mut rng, order, k).into_vec();
            idx.sort_unstable();
            idx.into_iter()
                .map(|i| Ok(g.word_at(i as u64)?))
                .collect()
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail(why) => format!("FAIL ({why})"),
    }
}

fn pack(a: PackArgs) -> Result<bool> {
    let (n, l) = (a.graph.n, a.graph.l);
    let g = SierpinskiGraph::new(n, l)?;
    let cap = resolve_cap(&a.caps, DEFAULT_MATERIALIZE_CAP)?;
    ensure!(
        g.order() as u128 <= cap,
        "S({n},{l}) has {} vertices, above the cap {cap}",
        g.order()
    );
    let targets = resolve_targets(&g, &a.targets)?;
    let k = targets.len();
    let mode = match a.mode {
        ModeArg::Paper => ConstructionMode::Paper,
        ModeArg::Minimal => ConstructionMode::Minimal,
    };
    let set = if k <= l {
        construct_steiner_trees(&g, &targets, mode)?
    } else {
        construct_trees_large_k(&g, &targets, cap)?
    };

    let mut ok = true;
    let mut checks = Vec::new();
    for flavor in [Flavor::Edge, Flavor::Vertex] {
        let claimed = connectivity_value(n, l, k, flavor)?;
        if !claimed.is_exact() {
            checks.push(format!("{flavor}: not claimed"));
            continue;
        }
        let v = set.verify(flavor)?;
        ok &= v.passed() && set.trees.len() as u64 == claimed.value();
        checks.push(format!("{flavor}: {}", verdict_text(&v)));
    }

    let text = match a.format {
        Format::Json => set.to_json(),
        Format::Dot => set.to_dot(),
        Format::Csv => bail!("pack writes json or dot"),
    };
    emit(a.out.as_deref(), &ensure_newline(text))?;
    let targets: Vec<String> = set.targets.iter().map(|w| w.to_string()).collect();
    eprintln!(
        "S({n},{l}) U={{{}}}: {} tree(s), {} checks, {} violations; {}",
        targets.join(","),
        set.trees.len(),
        set.audit.total_checks(),
        set.audit.violations,
        checks.join("; ")
    );
    Ok(ok)
}

fn oracle(a: OracleArgs, exec: Exec) -> Result<bool> {
    let defaults = OracleCaps::default();
    if (a.max_vertices > defaults.max_vertices || a.max_edges > defaults.max_edges) && !a.allow_unsafe {
        bail!(
            "oracle caps above {}/{} vertices/edges need --unsafe",
            defaults.max_vertices,
            defaults.max_edges
        );
    }
    let caps = OracleCaps {
        max_vertices: a.max_vertices,
        max_edges: a.max_edges,
    };
    let budget = SearchBudget {
        max_nodes: a.max_nodes,
        max_time: a.timeout_secs.map(Duration::from_secs),
    };

    // Host graph, vertex names, and an optional explicit terminal set.
    let (host, names, subset): (GenericGraph, Vec<String>, Option<Vec<usize>>) = match (a.complete, a.n, a.l) {
        (Some(order), _, _) => {
            ensure!(a.targets.policy.is_none(), "--u-policy needs a Sierpinski graph (-n, -l)");
            let subset = a
                .targets
                .words
                .as_ref()
                .map(|ws| {
                    ws.iter()
                        .map(|w| w.trim().parse::<usize>().with_context(|| format!("bad vertex {w:?}")))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            (GenericGraph::complete(order), (0..order).map(|i| i.to_string()).collect(), subset)
        }
        (None, Some(n), Some(l)) => {
            let g = SierpinskiGraph::new(n, l)?;
            let host = g.materialize(caps.max_edges.max(caps.max_vertices) as u128)?;
            let names = g.vertices().map(|w| w.to_string()).collect();
            let subset = if a.targets.words.is_some() || a.targets.policy.is_some() {
                let ws = resolve_targets(&g, &a.targets)?;
                Some(ws.iter().map(|w| Ok(g.index_of(w)? as usize)).collect::<Result<Vec<_>>>()?)
            } else {
                None
            };
            (host, names, subset)
        }
        _ => bail!("choose --complete N or -n/-l"),
    };
    if let (Some(s), Some(k)) = (&subset, a.targets.k) {
        ensure!(s.len() == k, "-k {k} but {} targets given", s.len());
    }

    let flavors = match a.flavor {
        FlavorArg::Edge => vec![Flavor::Edge],
        FlavorArg::Vertex => vec![Flavor::Vertex],
        FlavorArg::Both => vec![Flavor::Edge, Flavor::Vertex],
    };
    let mut reports: Vec<SweepReport> = Vec::new();
    for flavor in flavors {
        let r = match &subset {
            Some(s) => connectivity_over(&host, std::slice::from_ref(s), flavor, &caps, &budget, exec)?,
            None => {
                let k = a.targets.k.ok_or_else(|| anyhow!("-k is required without explicit targets"))?;
                connectivity_k(&host, k, flavor, &caps, &budget, a.max_subsets, exec)?
            }
        };
        reports.push(r);
    }

    let mut ok = true;
    for r in &reports {
        for s in &r.per_subset {
            let v = sierpinski_steiner::verify_packing(&host, &s.witness, &s.terminals, r.flavor)?;
            ok &= v.passed();
        }
        let argmin: Vec<&str> = r.argmin.iter().map(|&i| names[i].as_str()).collect();
        let status = match (r.complete, r.exhaustive) {
            (true, true) => format!("exact over all {} subsets", r.per_subset.len()),
            (true, false) => format!("exact over {} subset(s)", r.per_subset.len()),
            (false, _) => "lower bound: search budget exhausted".into(),
        };
        eprintln!(
            "k={} {}: {} ({status}; minimum at {{{}}})",
            r.k,
            r.flavor,
            r.value,
            argmin.join(",")
        );
    }
    if !ok {
        eprintln!("witness verification FAILED");
    }

    let format = a.format.unwrap_or(Format::Csv);
    let text = match format {
        Format::Csv => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = sweep_csv(&r.per_subset, |t| names[t].clone(), a.timing);
                out.push_str(if i == 0 { &csv } else { csv.split_once('\n').map_or("", |(_, rest)| rest) });
            }
            out
        }
        Format::Json => {
            let mut v = serde_json::to_value(&reports)?;
            if !a.timing {
                zero_millis(&mut v);
            }
            ensure_newline(serde_json::to_string_pretty(&v)?)
        }
        Format::Dot => bail!("oracle writes csv or json"),
    };
    if a.out.is_some() || a.format.is_some() {
        emit(a.out.as_deref(), &text)?;
    } else {
        // Plain summary on stdout when no report was asked for.
        for r in &reports {
            println!("{}", r.value);
        }
    }
    Ok(ok)
}

fn zero_millis(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            for (key, val) in m.iter_mut() {
                if key == "millis" {
                    *val = 0.into();
                } else {
                    zero_millis(val);
                }
            }
        }
        serde_json::Value::Array(xs) => xs.iter_mut().for_each(zero_millis),
        _ => {}
    }
}

fn props(a: PropsArgs, exec: Exec) -> Result<bool> {
    let (n, l) = (a.graph.n, a.graph.l);
    let cap = resolve_cap(&a.caps, PROPS_CAP)?;
    let l_max = a.l_max.unwrap_or(l);
    ensure!(l_max >= l, "--l-max {l_max} is below -l {l}");
    let ts: Vec<usize> = if a.sweep { (1..=n).collect() } else { vec![n] };

    let mut rows = Vec::new();
    for base in l..=l_max {
        for &t in &ts {
            rows.push(net_props(t, base, cap, exec)?);
        }
    }
    for r in &rows {
        if r.clustering_paper.inconsistent {
            eprintln!(
                "note: S({},{}) quoted clustering {} disagrees with the enumerated {}",
                r.t, r.l, r.clustering_paper.quoted, r.clustering_paper.measured
            );
        }
        if let Some(d) = r.diameter_bfs {
            if r.diameter_paper != d.into() {
                eprintln!(
                    "note: S({},{}) quoted diameter {} differs from the BFS diameter {d}",
                    r.t, r.l, r.diameter_paper
                );
            }
        }
        if r.degrees.as_ref().is_some_and(|d| d.mismatch) {
            eprintln!("note: S({},{}) quoted degree fractions differ from the enumeration", r.t, r.l);
        }
    }

    let table = props_csv(&rows);
    let Some(dir) = a.out_dir else {
        emit(None, &table)?;
        return Ok(true);
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    emit(Some(&dir.join("props.csv")), &table)?;
    let entropy: Vec<(usize, usize, usize, f64)> = rows
        .iter()
        .flat_map(|r| r.entropy.iter().map(move |&(k, rho)| (r.t, r.l, k, rho)))
        .collect();
    emit(Some(&dir.join("entropy.csv")), &entropy_csv(&entropy))?;
    let g = SierpinskiGraph::new(n, l)?;
    match degree_distribution(&g, cap) {
        Ok(d) => emit(Some(&dir.join("degrees.csv")), &degrees_csv(&d.histogram))?,
        Err(e) => eprintln!("note: degrees.csv skipped: {e}"),
    }
    eprintln!("wrote props.csv, entropy.csv and degrees.csv to {}", dir.display());
    Ok(true)
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .trim()
        .split_once('-')
        .ok_or_else(|| anyhow!("pair {s:?} should look like 0-3"))?;
    Ok((a.parse()?, b.parse()?))
}

fn hamdecomp(a: HamArgs) -> Result<bool> {
    let cap = resolve_cap(&a.caps, DEFAULT_MATERIALIZE_CAP)?;
    if let Some(order) = a.complete {
        ensure!(order as u128 <= cap, "K_{order} is above the cap {cap}");
        let set = match &a.pairs {
            Some(ps) => {
                let pairs = ps.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>>>()?;
                constrained_paths(order, &pairs)?
            }
            None => decompose_complete(order)?,
        };
        let vertices: Vec<usize> = (0..order).collect();
        let check = check_paths(&vertices, &set.paths, |x, y| x != y);
        emit(a.out.as_deref(), &ensure_newline(serde_json::to_string_pretty(&set)?))?;
        report_paths(&format!("K_{order}"), set.paths.len(), check)
    } else if a.sierpinski {
        let (n, l) = (a.n.expect("required by clap"), a.l.expect("required by clap"));
        let g = SierpinskiGraph::new(n, l)?;
        ensure!(g.order() as u128 <= cap, "S({n},{l}) has {} vertices, above the cap {cap}", g.order());
        let set = decompose_sierpinski(n, l)?;
        let check = verify_sierpinski_paths(&g, &set);
        emit(a.out.as_deref(), &ensure_newline(serde_json::to_string_pretty(&set)?))?;
        report_paths(&format!("S({n},{l})"), set.paths.len(), check)
    } else {
        bail!("choose --complete N or --sierpinski -n N -l L")
    }
}

fn report_paths(name: &str, count: usize, check: std::result::Result<(), String>) -> Result<bool> {
    match check {
        Ok(()) => {
            eprintln!("{name}: {count} Hamiltonian paths, verified");
            Ok(true)
        }
        Err(why) => {
            eprintln!("{name}: {count} Hamiltonian paths, verification FAILED: {why}");
            Ok(false)
        }
    }
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let text = fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let set: TreeSetExport = serde_json::from_str(&text).context("parsing tree-set JSON")?;
    let flavors = match a.flavor {
        Some(FlavorArg::Edge) => vec![Flavor::Edge],
        Some(FlavorArg::Vertex) => vec![Flavor::Vertex],
        Some(FlavorArg::Both) => vec![Flavor::Edge, Flavor::Vertex],
        None if set.mode == sierpinski_steiner::Strategy::Hamiltonian => vec![Flavor::Edge],
        None => vec![Flavor::Edge, Flavor::Vertex],
    };
    let mut ok = true;
    for flavor in flavors {
        let v = set.verify(flavor)?;
        ok &= v.passed();
        println!("{flavor}: {} tree(s), {}", set.trees.len(), verdict_text(&v));
    }
    Ok(ok)
}
