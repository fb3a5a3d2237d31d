//! File formats: complex, cycle and witness JSON; PACE `.td`/`.gr` text with
//! a sidecar mapping graph vertex ids to simplices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::dp::Solution;
use crate::error::{Error, Result};
use crate::graphs::{DerivedGraph, GraphKind};
use crate::instances::{Instance, Meta};
use crate::treewidth::TreeDecomposition;

#[derive(Serialize, Deserialize)]
struct SimplexRecord {
    v: Simplex,
    w: f64,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    d: i64,
    simplices: Vec<SimplexRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

#[derive(Serialize, Deserialize)]
struct CycleFile {
    dim: usize,
    simplices: Vec<Simplex>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Every simplex in canonical order; `d` is the dimension (-1 when empty).
pub fn complex_to_json(k: &SimplicialComplex, meta: Option<&Meta>) -> String {
    let file = ComplexFile {
        d: k.dim().map_or(-1, |d| d as i64),
        simplices: k.iter().map(|(s, w)| SimplexRecord { v: s.clone(), w }).collect(),
        meta: meta.cloned(),
    };
    serde_json::to_string_pretty(&file).expect("complex serializes")
}

/// Parses and validates (face-closure, weights); also returns any metadata.
pub fn complex_from_json(text: &str) -> Result<(SimplicialComplex, Option<Meta>)> {
    let file: ComplexFile = serde_json::from_str(text).map_err(parse_err)?;
    let k = SimplicialComplex::new(file.simplices.into_iter().map(|r| (r.v, r.w)))?;
    let declared = k.dim().map_or(-1, |d| d as i64);
    if declared != file.d {
        return Err(Error::Parse(format!("declared dimension {} but simplices reach {declared}", file.d)));
    }
    Ok((k, file.meta))
}

pub fn cycle_to_json(c: &Chain) -> String {
    let file = CycleFile { dim: c.dim(), simplices: c.iter().cloned().collect() };
    serde_json::to_string_pretty(&file).expect("chain serializes")
}

pub fn cycle_from_json(text: &str) -> Result<Chain> {
    let file: CycleFile = serde_json::from_str(text).map_err(parse_err)?;
    Chain::new(file.dim, file.simplices)
}

/// Solver output: the cycle `U` (same fields as a cycle file), its claimed
/// cost, and the bounding chain `W` with `U = V + ∂W`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub dim: usize,
    pub simplices: Vec<Simplex>,
    pub cost: f64,
    #[serde(default)]
    pub chain: Vec<Simplex>,
}

impl Witness {
    pub fn from_solution(s: &Solution) -> Self {
        Witness {
            dim: s.cycle.dim(),
            simplices: s.cycle.iter().cloned().collect(),
            cost: s.cost,
            chain: s.chain.iter().cloned().collect(),
        }
    }

    pub fn cycle(&self) -> Result<Chain> {
        Chain::new(self.dim, self.simplices.iter().cloned())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_err)
    }
}

pub fn instance_files(inst: &Instance) -> (String, String) {
    (complex_to_json(&inst.complex, Some(&inst.meta)), cycle_to_json(&inst.cycle))
}

/// PACE 2017 `.gr`: `p tw <n> <m>` then 1-indexed edges.
pub fn graph_to_pace(g: &DerivedGraph) -> String {
    let mut out = format!("p tw {} {}\n", g.vertex_count(), g.edge_count());
    for (a, b) in g.edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// PACE 2017 `.td` over 1-indexed bag and vertex ids.
pub fn td_to_pace(td: &TreeDecomposition, vertex_count: usize) -> String {
    let max_bag = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), max_bag, vertex_count);
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Bags use the 1-indexed ids of the file; returns 0-indexed ids and the
/// declared vertex count.
pub fn td_from_pace(text: &str) -> Result<(TreeDecomposition, usize)> {
    let bad = |line: usize, msg: &str| Error::Parse(format!("td line {}: {msg}", line + 1));
    let num = |tok: &str, line: usize| tok.parse::<usize>().map_err(|_| bad(line, "expected integer"));
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("s") => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(bad(i, "expected `s td <bags> <max-bag> <vertices>`"));
                }
                let h = (num(toks[2], i)?, num(toks[3], i)?, num(toks[4], i)?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            Some("b") => {
                let (nb, _, nv) = header.ok_or_else(|| bad(i, "bag before header"))?;
                let id = num(toks.get(1).ok_or_else(|| bad(i, "missing bag id"))?, i)?;
                if id == 0 || id > nb {
                    return Err(bad(i, "bag id out of range"));
                }
                let mut bag = Vec::new();
                for t in &toks[2..] {
                    let v = num(t, i)?;
                    if v == 0 || v > nv {
                        return Err(bad(i, "vertex id out of range"));
                    }
                    bag.push(v - 1);
                }
                bags[id - 1] = Some(bag);
            }
            Some(_) => {
                let (nb, _, _) = header.ok_or_else(|| bad(i, "edge before header"))?;
                if toks.len() != 2 {
                    return Err(bad(i, "expected an edge `<bag> <bag>`"));
                }
                let (a, b) = (num(toks[0], i)?, num(toks[1], i)?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(bad(i, "edge endpoint out of range"));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, max_bag, nv) = header.ok_or_else(|| Error::Parse("missing `s td` header".into()))?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Parse(format!("bag {} not listed", i + 1))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::new(bags, edges);
    if td.bags.iter().map(Vec::len).max().unwrap_or(0) > max_bag {
        return Err(Error::Parse("bag larger than declared maximum".into()));
    }
    Ok((td, nv))
}

/// Sidecar for `.gr`/`.td` files: `kind conn|hasse <level>`, then one
/// `<id> <vertices...>` line per graph vertex.
pub fn sidecar(g: &DerivedGraph) -> String {
    let mut out = match g.kind {
        GraphKind::Connectivity(l) => format!("kind conn {l}\n"),
        GraphKind::HasseLevel(l) => format!("kind hasse {l}\n"),
    };
    for (i, s) in g.vertices().iter().enumerate() {
        write!(out, "{}", i + 1).unwrap();
        for v in s.vertices() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Re-indexes a `.td` read with its sidecar onto the vertices of `g`.
pub fn td_for_graph(td: &TreeDecomposition, sidecar_text: &str, g: &DerivedGraph) -> Result<TreeDecomposition> {
    let mut map: Vec<Option<usize>> = Vec::new();
    for (i, line) in sidecar_text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first().copied() {
            None => {}
            Some("kind") => {
                let expected = match g.kind {
                    GraphKind::Connectivity(l) => format!("conn {l}"),
                    GraphKind::HasseLevel(l) => format!("hasse {l}"),
                };
                if toks[1..].join(" ") != expected {
                    return Err(Error::GraphMismatch(format!("sidecar is for `{}`, solver needs `{expected}`", toks[1..].join(" "))));
                }
            }
            Some(id) => {
                let bad = || Error::Parse(format!("sidecar line {}", i + 1));
                let id: usize = id.parse().map_err(|_| bad())?;
                let verts = toks[1..].iter().map(|t| t.parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
                let s = Simplex::new(verts)?;
                let target = g.index_of(&s).ok_or_else(|| Error::GraphMismatch(format!("{s} is not a graph vertex")))?;
                if id == 0 {
                    return Err(bad());
                }
                if map.len() < id {
                    map.resize(id, None);
                }
                map[id - 1] = Some(target);
            }
        }
    }
    let bags = td
        .bags
        .iter()
        .map(|bag| {
            bag.iter()
                .map(|&v| {
                    map.get(v).copied().flatten().ok_or_else(|| Error::Parse(format!("vertex id {} missing from sidecar", v + 1)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition::new(bags, td.edges.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::hasse_level;
    use crate::instances::{generate, Family};
    use crate::treewidth::{best_td, validate_td};

    #[test]
    fn complex_round_trip() {
        let inst = generate(&Family::Torus { m: 3, n: 4 }, 5, None).unwrap();
        let (text, cycle) = instance_files(&inst);
        let (k, meta) = complex_from_json(&text).unwrap();
        assert_eq!(k, inst.complex);
        assert_eq!(meta.as_ref(), Some(&inst.meta));
        assert_eq!(cycle_from_json(&cycle).unwrap(), inst.cycle);
        assert_eq!(complex_to_json(&k, meta.as_ref()), text);
    }

    #[test]
    fn loader_checks_closure() {
        let text = r#"{"d": 1, "simplices": [{"v": [0], "w": 1}, {"v": [0, 1], "w": 1}]}"#;
        assert!(matches!(complex_from_json(text), Err(Error::NotFaceClosed { .. })));
        let text = r#"{"d": 2, "simplices": [{"v": [0], "w": 1}]}"#;
        assert!(matches!(complex_from_json(text), Err(Error::Parse(_))));
    }

    #[test]
    fn pace_round_trip_with_sidecar() {
        let inst = generate(&Family::Grid { rows: 3, cols: 3 }, 0, None).unwrap();
        let g = hasse_level(&inst.complex, 2);
        let td = best_td(&g);
        let text = td_to_pace(&td, g.vertex_count());
        assert!(text.starts_with(&format!("s td {} {} {}", td.len(), td.width() + 1, g.vertex_count())));
        let (back, nv) = td_from_pace(&text).unwrap();
        assert_eq!((back.clone(), nv), (td.clone(), g.vertex_count()));
        let mapped = td_for_graph(&back, &sidecar(&g), &g).unwrap();
        assert_eq!(mapped, td);
        assert!(validate_td(&g, &mapped).is_valid());
        assert!(graph_to_pace(&g).starts_with(&format!("p tw {} {}", g.vertex_count(), g.edge_count())));
    }

    #[test]
    fn pace_errors() {
        assert!(td_from_pace("b 1 1\n").is_err());
        assert!(td_from_pace("s td 1 1 2\nb 1 3\n").is_err());
        assert!(td_from_pace("s td 2 1 2\nb 1 1\n").is_err());
        assert!(td_from_pace("c hi\ns td 1 2 2\nb 1 1 2\n").is_ok());
    }
}
