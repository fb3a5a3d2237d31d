//! Browser demo: draw a triangulated grid or annulus, click triangles to
//! push the input cycle across them, and solve for the shortest homologous
//! cycle. Edge weights are Euclidean lengths in the drawing.

use std::f64::consts::PI;

use homloc::complex::Level;
use homloc::dp::{solve, Algorithm, Limits};
use homloc::instances::{gen_cylinder, gen_grid};
use homloc::{Chain, Error, Result, Simplex, SimplicialComplex};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Table entries allowed per node before a solve gives up.
pub const ENTRY_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Grid,
    Annulus,
}

#[derive(Serialize)]
pub struct Scene {
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<[u32; 2]>,
    pub triangles: Vec<[u32; 3]>,
    /// Indices into `edges`.
    pub cycle: Vec<usize>,
    pub cost: f64,
}

#[derive(Serialize)]
pub struct Solved {
    pub algo: String,
    pub cost: f64,
    pub edges: Vec<usize>,
    pub width: isize,
    pub peak_entries: usize,
    pub nodes: usize,
}

pub struct Demo {
    shape: Shape,
    complex: SimplicialComplex,
    layout: Vec<[f64; 2]>,
    /// Vertices per grid row or annulus ring.
    row: usize,
    level: Level,
    cycle: Vec<bool>,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

impl Demo {
    /// `grid` takes rows and cols; `annulus` takes spokes around and rings.
    pub fn new(shape: &str, a: usize, b: usize) -> Result<Demo> {
        if a * b > 400 {
            return Err(Error::InvalidParameter("at most 400 vertices".into()));
        }
        let (shape, base, layout): (Shape, SimplicialComplex, Vec<[f64; 2]>) = match shape {
            "grid" => {
                let layout = (0..a * b).map(|v| [(v % b) as f64, (v / b) as f64]).collect();
                (Shape::Grid, gen_grid(a, b)?, layout)
            }
            "annulus" => {
                let layout = (0..a * b)
                    .map(|v| {
                        let (ring, spoke) = (v / a, v % a);
                        let r = 1.0 + ring as f64 * 0.6;
                        let t = 2.0 * PI * spoke as f64 / a as f64;
                        [r * t.cos(), r * t.sin()]
                    })
                    .collect();
                (Shape::Annulus, gen_cylinder(a, b)?, layout)
            }
            other => return Err(Error::InvalidParameter(format!("unknown shape {other}"))),
        };
        let complex = SimplicialComplex::new(base.iter().map(|(s, _)| {
            let w = match s.vertices() {
                [p, q] => dist(layout[*p as usize], layout[*q as usize]),
                _ => 1.0,
            };
            (s.clone(), w)
        }))?;
        let level = Level::new(&complex, 1);
        let cycle = vec![false; level.lower.len()];
        let row = if shape == Shape::Grid { b } else { a };
        Ok(Demo { shape, complex, layout, row, level, cycle })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn cycle(&self) -> Chain {
        self.level.lower_chain(&self.cycle)
    }

    /// Adds the boundary of triangle `t` to the input cycle.
    pub fn toggle_triangle(&mut self, t: usize) -> Result<()> {
        if t >= self.level.upper.len() {
            return Err(Error::InvalidParameter(format!("no triangle {t}")));
        }
        self.cycle = self.level.add_boundary(&self.cycle, [t]);
        Ok(())
    }

    /// Replaces the input by the outer boundary: the outer ring of an
    /// annulus, or the rim of a grid.
    pub fn outer_ring(&mut self) {
        let n = self.layout.len();
        let on_rim = |v: u32| {
            let v = v as usize;
            match self.shape {
                Shape::Annulus => v >= n - self.row,
                Shape::Grid => {
                    let (i, j) = (v / self.row, v % self.row);
                    i == 0 || j == 0 || i == n / self.row - 1 || j == self.row - 1
                }
            }
        };
        let rim: Vec<bool> = self
            .level
            .lower
            .iter()
            .map(|e| {
                let [p, q] = [e.vertices()[0], e.vertices()[1]];
                on_rim(p) && on_rim(q) && self.level.cofaces[self.level.lower_index(e).unwrap()].len() == 1
            })
            .collect();
        self.cycle = rim;
    }

    pub fn clear(&mut self) {
        self.cycle.iter_mut().for_each(|b| *b = false);
    }

    pub fn scene(&self) -> Scene {
        let cycle: Vec<usize> = (0..self.cycle.len()).filter(|&e| self.cycle[e]).collect();
        let cost = cycle.iter().fold(0.0, |acc, &e| acc + self.level.lower_weight[e]);
        Scene {
            vertices: self.layout.clone(),
            edges: self.level.lower.iter().map(|e| [e.vertices()[0], e.vertices()[1]]).collect(),
            triangles: self.level.upper.iter().map(|t| [t.vertices()[0], t.vertices()[1], t.vertices()[2]]).collect(),
            cycle,
            cost,
        }
    }

    pub fn solve(&self, algo: &str) -> Result<Solved> {
        let algorithm = match algo {
            "hasse" => Algorithm::Hasse,
            "conn" => Algorithm::Conn,
            other => return Err(Error::InvalidParameter(format!("unknown algorithm {other}"))),
        };
        let (sol, stats) = solve(&self.complex, &self.cycle(), algorithm, &Limits::new(None, Some(ENTRY_CAP)))?;
        let edges = sol.cycle.iter().map(|e: &Simplex| self.level.lower_index(e).expect("edge of the complex")).collect();
        Ok(Solved {
            algo: algo.to_string(),
            cost: sol.cost,
            edges,
            width: stats.width,
            peak_entries: stats.peak_entries,
            nodes: stats.nodes,
        })
    }
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

#[wasm_bindgen]
pub struct App(Demo);

#[wasm_bindgen]
impl App {
    #[wasm_bindgen(constructor)]
    pub fn new(shape: &str, a: usize, b: usize) -> std::result::Result<App, JsError> {
        Demo::new(shape, a, b).map(App).map_err(js)
    }

    /// JSON with vertices, edges, triangles and the current cycle.
    pub fn scene(&self) -> String {
        to_json(&self.0.scene())
    }

    pub fn toggle_triangle(&mut self, t: usize) -> std::result::Result<(), JsError> {
        self.0.toggle_triangle(t).map_err(js)
    }

    pub fn outer_ring(&mut self) {
        self.0.outer_ring()
    }

    pub fn clear(&mut self) {
        self.0.clear()
    }

    /// JSON with the optimal cycle's edges, its cost and table statistics.
    pub fn solve(&self, algo: &str) -> std::result::Result<String, JsError> {
        self.0.solve(algo).map(|s| to_json(&s)).map_err(js)
    }
}
