//! Benchmark suites: instance families x seeds x algorithms, one CSV row per
//! (instance, algorithm) cell.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dp::{derived_graph, solve_conn, solve_hasse, Algorithm, Limits, DEFAULT_MAX_ENTRIES};
use crate::error::{Error, Result};
use crate::instances::{generate, CycleMode, Family, Instance};
use crate::oracle::{brute_force_min, DEFAULT_BRUTE_FORCE_CAP};
use crate::treewidth::{best_td, make_nice};

pub const CSV_HEADER: [&str; 14] = [
    "instance", "generator", "params", "seed", "n_d", "n_d1", "tw_conn", "tw_hasse", "bags", "algo", "time_ms",
    "entries_peak", "cost", "status",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Conn,
    Hasse,
    Brute,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Conn => "conn",
            Algo::Hasse => "hasse",
            Algo::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Timeout,
    MemoryCap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub generator: String,
    pub params: String,
    pub seed: u64,
    pub n_d: usize,
    pub n_d1: usize,
    pub tw_conn: isize,
    pub tw_hasse: isize,
    /// Nodes of the nice decomposition used; empty for brute force.
    pub bags: Option<usize>,
    pub algo: Algo,
    pub time_ms: f64,
    pub entries_peak: Option<usize>,
    pub cost: Option<f64>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub instances: Vec<Family>,
    pub seeds: Vec<u64>,
    pub algos: Vec<Algo>,
    /// Per-run wall-clock limit in seconds.
    #[serde(default)]
    pub time_limit_s: Option<f64>,
    /// Per-table entry cap; defaults to [`DEFAULT_MAX_ENTRIES`].
    #[serde(default)]
    pub mem_cap_entries: Option<usize>,
    #[serde(default)]
    pub mode: Option<CycleMode>,
    #[serde(default = "one")]
    pub jobs: usize,
}

fn one() -> usize {
    1
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if cfg.jobs == 0 {
            return Err(Error::InvalidParameter("jobs must be at least 1".into()));
        }
        Ok(cfg)
    }

    fn limits(&self) -> Limits {
        Limits::new(
            self.time_limit_s.map(Duration::from_secs_f64),
            Some(self.mem_cap_entries.unwrap_or(DEFAULT_MAX_ENTRIES)),
        )
    }
}

pub fn instance_id(family: &Family, seed: u64) -> String {
    format!("{}[{}]#{seed}", family.name(), family.params_string())
}

/// Shared columns of every row for one instance.
struct Prepared {
    family: Family,
    seed: u64,
    inst: Instance,
    tw_conn: isize,
    tw_hasse: isize,
}

fn prepare(family: &Family, seed: u64, mode: Option<CycleMode>) -> Result<Prepared> {
    let inst = generate(family, seed, mode)?;
    let tw_conn = best_td(&derived_graph(&inst.complex, inst.d, Algorithm::Conn)).width();
    let tw_hasse = best_td(&derived_graph(&inst.complex, inst.d, Algorithm::Hasse)).width();
    Ok(Prepared { family: family.clone(), seed, inst, tw_conn, tw_hasse })
}

fn status_of(e: &Error) -> Option<Status> {
    match e {
        Error::Timeout | Error::TooLarge { .. } => Some(Status::Timeout),
        Error::MemoryCap(_) | Error::ScopeTooLarge(_) => Some(Status::MemoryCap),
        _ => None,
    }
}

/// Runs one algorithm on one instance. Resource failures become rows;
/// anything else is a bug and is returned.
pub fn run_cell(inst: &Instance, algo: Algo, limits: &Limits) -> Result<(Option<usize>, f64, Option<usize>, Option<f64>, Status)> {
    let (k, v) = (&inst.complex, &inst.cycle);
    let start = Instant::now();
    let (bags, outcome) = match algo {
        Algo::Brute => (None, brute_force_min(k, v, DEFAULT_BRUTE_FORCE_CAP).map(|s| (s.cost, None))),
        Algo::Conn | Algo::Hasse => {
            let a = if algo == Algo::Conn { Algorithm::Conn } else { Algorithm::Hasse };
            let graph = derived_graph(k, inst.d, a);
            let ntd = make_nice(&best_td(&graph), None)?;
            let solved = match a {
                Algorithm::Conn => solve_conn(k, v, &graph, &ntd, limits),
                Algorithm::Hasse => solve_hasse(k, v, &graph, &ntd, limits),
            };
            (Some(ntd.len()), solved.map(|(s, st)| (s.cost, Some(st.peak_entries))))
        }
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    match outcome {
        Ok((cost, peak)) => Ok((bags, ms, peak, Some(cost), Status::Ok)),
        Err(e) => match status_of(&e) {
            Some(status) => Ok((bags, ms, None, None, status)),
            None => Err(e),
        },
    }
}

/// Rows in (instance, seed, algorithm) order regardless of `jobs`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<BenchRecord>> {
    let mut prepared = Vec::new();
    for family in &cfg.instances {
        for &seed in &cfg.seeds {
            prepared.push(prepare(family, seed, cfg.mode)?);
        }
    }
    let cells: Vec<(usize, Algo)> =
        (0..prepared.len()).flat_map(|i| cfg.algos.iter().map(move |&a| (i, a))).collect();
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<(usize, Result<BenchRecord>)>> = Mutex::new(Vec::with_capacity(cells.len()));
    let worker = || loop {
        let c = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(i, algo)) = cells.get(c) else { break };
        let p = &prepared[i];
        // Each run gets a fresh deadline.
        let limits = cfg.limits();
        let row = run_cell(&p.inst, algo, &limits).map(|(bags, time_ms, entries_peak, cost, status)| BenchRecord {
            instance: instance_id(&p.family, p.seed),
            generator: p.family.name().into(),
            params: p.family.params_string(),
            seed: p.seed,
            n_d: p.inst.complex.simplices(p.inst.d).len(),
            n_d1: p.inst.complex.simplices(p.inst.d + 1).len(),
            tw_conn: p.tw_conn,
            tw_hasse: p.tw_hasse,
            bags,
            algo,
            time_ms,
            entries_peak,
            cost,
            status,
        });
        rows.lock().unwrap().push((c, row));
    };
    std::thread::scope(|s| {
        for _ in 0..cfg.jobs.min(cells.len()).max(1) {
            s.spawn(worker);
        }
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by_key(|(c, _)| *c);
    rows.into_iter().map(|(_, r)| r).collect()
}

pub fn write_csv<W: std::io::Write>(out: W, rows: &[BenchRecord]) -> Result<()> {
    let io = |e: csv::Error| Error::Parse(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER).map_err(io)?;
    }
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers().map_err(|e| Error::Parse(e.to_string()))?.iter().map(String::from).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(|e| Error::Parse(e.to_string()))).collect()
}

/// Instances where two `ok` rows report different costs.
pub fn disagreements(rows: &[BenchRecord]) -> Vec<String> {
    let mut bad = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            if a.instance == b.instance && a.status == Status::Ok && b.status == Status::Ok && a.cost != b.cost {
                bad.push(a.instance.clone());
            }
        }
    }
    bad.sort();
    bad.dedup();
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grids() -> SuiteConfig {
        SuiteConfig {
            instances: vec![
                Family::Grid { rows: 3, cols: 3 },
                Family::Grid { rows: 3, cols: 4 },
                Family::Grid { rows: 4, cols: 4 },
            ],
            seeds: vec![7],
            algos: vec![Algo::Conn, Algo::Hasse],
            time_limit_s: Some(30.0),
            mem_cap_entries: None,
            mode: None,
            jobs: 2,
        }
    }

    #[test]
    fn three_grids_two_algos_six_rows() {
        let rows = run_suite(&grids()).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.status == Status::Ok && r.cost == Some(0.0)));
        assert!(disagreements(&rows).is_empty());
    }

    #[test]
    fn csv_round_trip() {
        let mut cfg = grids();
        cfg.algos.push(Algo::Brute);
        cfg.instances.push(Family::Torus { m: 3, n: 3 });
        cfg.mode = Some(CycleMode::HomologyRep);
        cfg.instances.retain(|f| matches!(f, Family::Torus { .. }));
        let mut rows = run_suite(&cfg).unwrap();
        rows.push(BenchRecord { status: Status::Timeout, cost: None, entries_peak: None, ..rows[0].clone() });
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn mem_cap_reported_as_status() {
        let inst = generate(&Family::Torus { m: 4, n: 4 }, 1, Some(CycleMode::HomologyRep)).unwrap();
        let (_, _, peak, cost, status) = run_cell(&inst, Algo::Conn, &Limits::new(None, Some(1000))).unwrap();
        assert_eq!((peak, cost, status), (None, None, Status::MemoryCap));
        let (_, _, _, _, status) = run_cell(&inst, Algo::Brute, &Limits::none()).unwrap();
        assert_eq!(status, Status::Timeout);
    }

    #[test]
    fn config_parses() {
        let cfg = SuiteConfig::from_json(
            r#"{"instances": [{"family": "torus", "m": 3, "n": 3}, {"family": "vr_sector", "arcs": 20, "per_arc": 1, "radius": null}],
                "seeds": [1, 2], "algos": ["hasse", "brute"], "time_limit_s": 5}"#,
        )
        .unwrap();
        assert_eq!(cfg.jobs, 1);
        assert_eq!(cfg.instances.len(), 2);
        assert!(SuiteConfig::from_json(r#"{"instances": [], "seeds": [], "algos": [], "jobs": 0}"#).is_err());
    }
}
