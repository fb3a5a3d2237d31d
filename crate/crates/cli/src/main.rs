use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use homloc::bench::{disagreements, run_suite, write_csv, Status, SuiteConfig};
use homloc::dp::{derived_graph, solve_conn, solve_hasse, Algorithm, Limits, Solution, DEFAULT_MAX_ENTRIES};
use homloc::instances::{generate, CycleMode, Family};
use homloc::io::{self, Witness};
use homloc::oracle::{brute_force_min, homologous, DEFAULT_BRUTE_FORCE_CAP};
use homloc::treewidth::{best_td, make_nice, validate_td, TreeDecomposition};
use homloc::{Chain, Error, SimplicialComplex};

#[derive(Parser)]
#[command(name = "homloc", version, about = "Minimum-cost homologous cycles over Z2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance: <stem>.complex.json and <stem>.cycle.json
    Generate {
        /// grid | cylinder | torus | mspace | kdk | vr_unfiltered | vr_filtered | vr_sector
        family: String,
        /// Family parameters, e.g. `torus 6 6`, `mspace 4 5 2`, `vr_sector 20 3`
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// VR radius; defaults to 1.1 x the connectivity threshold
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Output stem
        #[arg(long)]
        out: PathBuf,
        /// Also write .gr/.edges/.map/.td files for both derived graphs
        #[arg(long)]
        export_graphs: bool,
    },
    /// Solve an instance given by its stem (or its .complex.json path)
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Hasse)]
        algo: Algo,
        /// PACE .td file; its sidecar defaults to <td-file>.map
        #[arg(long)]
        td_file: Option<PathBuf>,
        #[arg(long)]
        td_map: Option<PathBuf>,
        /// Seconds
        #[arg(long)]
        time_limit: Option<f64>,
        /// Largest table allowed at any decomposition node
        #[arg(long, default_value_t = DEFAULT_MAX_ENTRIES)]
        mem_cap_entries: usize,
        /// Witness output file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a witness against an instance
    Verify { instance: PathBuf, witness: PathBuf },
    /// Run a benchmark suite and write CSV
    Bench {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the config's worker count
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Conn,
    Hasse,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    BoundaryOnly,
    HomologyRep,
}

struct Exit {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Exit {
    Exit { code: 1, msg: msg.into() }
}

fn failed(msg: impl Into<String>) -> Exit {
    Exit { code: 2, msg: msg.into() }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Timeout | Error::TooLarge { .. } => "timeout",
            Error::MemoryCap(_) | Error::ScopeTooLarge(_) => "memory_cap",
            _ => return usage(e.to_string()),
        };
        Exit { code: 3, msg: format!("status={status}: {e}") }
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn stem_of(path: &Path) -> PathBuf {
    let s = path.to_string_lossy();
    for suffix in [".complex.json", ".cycle.json"] {
        if let Some(stem) = s.strip_suffix(suffix) {
            return PathBuf::from(stem);
        }
    }
    path.to_path_buf()
}

fn load_instance(path: &Path) -> Result<(SimplicialComplex, Chain), Exit> {
    let stem = stem_of(path);
    let (k, _) = io::complex_from_json(&read(&with_suffix(&stem, ".complex.json"))?)?;
    let v = io::cycle_from_json(&read(&with_suffix(&stem, ".cycle.json"))?)?;
    Ok((k, v))
}

fn parse_family(name: &str, params: &[String], radius: Option<f64>) -> Result<Family, Exit> {
    let nums = params
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| usage(format!("parameter `{p}` is not a non-negative integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    let want = |n: usize, shape: &str| {
        if nums.len() == n {
            Ok(())
        } else {
            Err(usage(format!("{name} takes {n} parameters: {shape}")))
        }
    };
    let family = match name.replace('-', "_").as_str() {
        "grid" => want(2, "rows cols").map(|_| Family::Grid { rows: nums[0], cols: nums[1] }),
        "cylinder" => want(2, "m n").map(|_| Family::Cylinder { m: nums[0], n: nums[1] }),
        "torus" => want(2, "m n").map(|_| Family::Torus { m: nums[0], n: nums[1] }),
        "mspace" => want(3, "m k t").map(|_| Family::Mspace { m: nums[0], k: nums[1], t: nums[2] }),
        "kdk" => want(2, "d k").map(|_| Family::Kdk { d: nums[0], k: nums[1] }),
        "vr_unfiltered" => want(1, "n").map(|_| Family::VrUnfiltered { n: nums[0], radius }),
        "vr_filtered" => want(1, "n").map(|_| Family::VrFiltered { n: nums[0], radius }),
        "vr_sector" => want(2, "arcs per_arc").map(|_| Family::VrSector { arcs: nums[0], per_arc: nums[1], radius }),
        _ => Err(usage(format!("unknown family `{name}`"))),
    }?;
    Ok(family)
}

fn cmd_generate(
    family: &str,
    params: &[String],
    seed: u64,
    radius: Option<f64>,
    mode: Option<Mode>,
    out: &Path,
    export_graphs: bool,
) -> Result<(), Exit> {
    let family = parse_family(family, params, radius)?;
    let mode = mode.map(|m| match m {
        Mode::BoundaryOnly => CycleMode::BoundaryOnly,
        Mode::HomologyRep => CycleMode::HomologyRep,
    });
    let inst = generate(&family, seed, mode)?;
    let (complex, cycle) = io::instance_files(&inst);
    write(&with_suffix(out, ".complex.json"), &complex)?;
    write(&with_suffix(out, ".cycle.json"), &cycle)?;
    if export_graphs {
        for (tag, algo) in [("conn", Algorithm::Conn), ("hasse", Algorithm::Hasse)] {
            let g = derived_graph(&inst.complex, inst.d, algo);
            let td = best_td(&g);
            write(&with_suffix(out, &format!(".{tag}.gr")), &io::graph_to_pace(&g))?;
            write(&with_suffix(out, &format!(".{tag}.edges")), &g.to_edge_list())?;
            write(&with_suffix(out, &format!(".{tag}.td")), &io::td_to_pace(&td, g.vertex_count()))?;
            write(&with_suffix(out, &format!(".{tag}.td.map")), &io::sidecar(&g))?;
        }
    }
    let counts: Vec<String> = (0..=inst.complex.dim().unwrap_or(0))
        .map(|d| format!("{}", inst.complex.simplices(d).len()))
        .collect();
    println!(
        "{} {} seed={seed} d={} simplices per dim=[{}] |V|={}",
        family.name(),
        family.params_string(),
        inst.d,
        counts.join(","),
        inst.cycle.len()
    );
    Ok(())
}

fn load_td(td_file: &Path, td_map: Option<&Path>) -> Result<(TreeDecomposition, String), Exit> {
    let (td, _) = io::td_from_pace(&read(td_file)?)?;
    let map_path = td_map.map(Path::to_path_buf).unwrap_or_else(|| with_suffix(td_file, ".map"));
    Ok((td, read(&map_path)?))
}

struct Run {
    name: &'static str,
    solution: Solution,
    width: Option<isize>,
    peak: Option<usize>,
    ms: f64,
}

fn run_dp(
    k: &SimplicialComplex,
    v: &Chain,
    algo: Algorithm,
    given: Option<&(TreeDecomposition, String)>,
    limits: &Limits,
) -> Result<Run, Exit> {
    let start = Instant::now();
    let graph = derived_graph(k, v.dim(), algo);
    let td = match given {
        Some((td, map)) => {
            let td = io::td_for_graph(td, map, &graph)?;
            let report = validate_td(&graph, &td);
            if !report.is_valid() {
                let why: Vec<String> = report.violations.iter().map(|x| x.to_string()).collect();
                return Err(usage(format!("invalid tree decomposition: {}", why.join("; "))));
            }
            td
        }
        None => best_td(&graph),
    };
    let ntd = make_nice(&td, None)?;
    let (solution, stats) = match algo {
        Algorithm::Conn => solve_conn(k, v, &graph, &ntd, limits)?,
        Algorithm::Hasse => solve_hasse(k, v, &graph, &ntd, limits)?,
    };
    let name = if algo == Algorithm::Conn { "conn" } else { "hasse" };
    Ok(Run { name, solution, width: Some(stats.width), peak: Some(stats.peak_entries), ms: start.elapsed().as_secs_f64() * 1e3 })
}

fn report(r: &Run) {
    println!(
        "algo={} cost={} |U|={} width={} entries_peak={} time_ms={:.3} status=ok",
        r.name,
        r.solution.cost,
        r.solution.cycle.len(),
        r.width.map_or("-".into(), |w| w.to_string()),
        r.peak.map_or("-".into(), |p| p.to_string()),
        r.ms
    );
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    instance: &Path,
    algo: Algo,
    td_file: Option<&Path>,
    td_map: Option<&Path>,
    time_limit: Option<f64>,
    mem_cap: Option<usize>,
    out: Option<&Path>,
) -> Result<(), Exit> {
    let (k, v) = load_instance(instance)?;
    let limits = Limits::new(time_limit.map(Duration::from_secs_f64), mem_cap);
    let given = td_file.map(|f| load_td(f, td_map)).transpose()?;
    let kind_of = |map: &str| map.lines().next().unwrap_or("").split_whitespace().nth(1).unwrap_or("").to_string();
    let td_for = |a: Algorithm| {
        given.as_ref().filter(|(_, map)| kind_of(map) == if a == Algorithm::Conn { "conn" } else { "hasse" })
    };
    if let Some((_, map)) = &given {
        let kind = kind_of(map);
        let usable = match algo {
            Algo::Conn => kind == "conn",
            Algo::Hasse => kind == "hasse",
            Algo::Both => kind == "conn" || kind == "hasse",
            Algo::Brute => false,
        };
        if !usable {
            return Err(usage(format!("--td-file is for `{kind}` and cannot be used with this --algo")));
        }
    }
    let mut runs = Vec::new();
    if matches!(algo, Algo::Conn | Algo::Both) {
        runs.push(run_dp(&k, &v, Algorithm::Conn, td_for(Algorithm::Conn), &limits)?);
    }
    if matches!(algo, Algo::Hasse | Algo::Both) {
        // Fresh deadline for the second solver.
        let limits = Limits::new(time_limit.map(Duration::from_secs_f64), mem_cap);
        runs.push(run_dp(&k, &v, Algorithm::Hasse, td_for(Algorithm::Hasse), &limits)?);
    }
    if algo == Algo::Brute {
        let start = Instant::now();
        let solution = brute_force_min(&k, &v, DEFAULT_BRUTE_FORCE_CAP)?;
        runs.push(Run { name: "brute", solution, width: None, peak: None, ms: start.elapsed().as_secs_f64() * 1e3 });
    }
    for r in &runs {
        report(r);
    }
    if let Some(path) = out {
        let best = runs.last().expect("at least one run");
        write(path, &Witness::from_solution(&best.solution).to_json())?;
    }
    if runs.windows(2).any(|w| w[0].solution.cost != w[1].solution.cost) {
        return Err(failed("algorithms disagree on the optimal cost"));
    }
    Ok(())
}

fn cmd_verify(instance: &Path, witness: &Path) -> Result<(), Exit> {
    let (k, v) = load_instance(instance)?;
    let w = Witness::from_json(&read(witness)?)?;
    let u = w.cycle()?;
    if !u.is_in(&k) {
        return Err(failed("fail: not in complex"));
    }
    if !u.is_cycle() {
        return Err(failed("fail: not a cycle"));
    }
    if u.dim() != v.dim() || !homologous(&k, &u, &v)? {
        return Err(failed("fail: not homologous"));
    }
    let cost = u.cost(&k)?;
    if (cost - w.cost).abs() > 1e-9 * cost.abs().max(1.0) {
        return Err(failed(format!("fail: cost mismatch (witness claims {}, cycle costs {cost})", w.cost)));
    }
    println!("ok: cycle homologous to input, cost {cost}");
    Ok(())
}

fn cmd_bench(config: &Path, out: &Path, jobs: Option<usize>) -> Result<(), Exit> {
    let mut cfg = SuiteConfig::from_json(&read(config)?)?;
    if let Some(j) = jobs {
        cfg.jobs = j.max(1);
    }
    let rows = run_suite(&cfg)?;
    let file = fs::File::create(out).map_err(|e| usage(format!("cannot write {}: {e}", out.display())))?;
    write_csv(file, &rows)?;
    let ok = rows.iter().filter(|r| r.status == Status::Ok).count();
    println!("{} rows ({ok} ok) written to {}", rows.len(), out.display());
    let bad = disagreements(&rows);
    if !bad.is_empty() {
        return Err(failed(format!("cost disagreement on: {}", bad.join(", "))));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Generate { family, params, seed, radius, mode, out, export_graphs } => {
            cmd_generate(family, params, *seed, *radius, *mode, out, *export_graphs)
        }
        Command::Solve { instance, algo, td_file, td_map, time_limit, mem_cap_entries, out } => cmd_solve(
            instance,
            *algo,
            td_file.as_deref(),
            td_map.as_deref(),
            *time_limit,
            Some(*mem_cap_entries),
            out.as_deref(),
        ),
        Command::Verify { instance, witness } => cmd_verify(instance, witness),
        Command::Bench { config, out, jobs } => cmd_bench(config, out, *jobs),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("homloc: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
