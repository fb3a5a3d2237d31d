//! Instance generators: triangulated grids, cylinders, tori, M-spaces, the
//! `K^(d,k)` book of simplices, and Vietoris-Rips complexes of noisy circles.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`; the point cloud
//! uses stream 0 and the input-cycle chain `B` uses stream 1. Normal draws use
//! the Box-Muller cosine branch on two uniforms.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Chain, Level, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::oracle;

pub const RNG_ID: &str = "chacha8-seed_from_u64";

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn normal(rng: &mut impl Rng, mean: f64, sd: f64) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    mean + sd * (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn triangles_to_complex(tris: &[[u32; 3]]) -> SimplicialComplex {
    let simplices: Vec<Simplex> = tris.iter().map(|t| Simplex::from_slice(t)).collect();
    SimplicialComplex::from_maximal(&simplices, |_| 1.0).expect("generated complex is valid")
}

/// Each square `(i, j)` splits along the `(i, j)-(i+1, j+1)` diagonal.
fn square_triangles(a: u32, b: u32, c: u32, dd: u32) -> [[u32; 3]; 2] {
    // a=(i,j) b=(i,j+1) c=(i+1,j) dd=(i+1,j+1)
    [[a, b, dd], [a, c, dd]]
}

/// Triangulated `rows x cols` vertex grid; vertex `(i, j)` has id `i*cols + j`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<SimplicialComplex> {
    if rows < 2 || cols < 2 {
        return Err(Error::InvalidParameter("grid needs rows, cols >= 2".into()));
    }
    let id = |i: usize, j: usize| (i * cols + j) as u32;
    let mut tris = Vec::new();
    for i in 0..rows - 1 {
        for j in 0..cols - 1 {
            tris.extend(square_triangles(id(i, j), id(i, j + 1), id(i + 1, j), id(i + 1, j + 1)));
        }
    }
    Ok(triangles_to_complex(&tris))
}

/// Grid with `m` columns around and `n` rows, column `m` glued to column 0.
pub fn gen_cylinder(m: usize, n: usize) -> Result<SimplicialComplex> {
    if m < 3 || n < 2 {
        return Err(Error::InvalidParameter("cylinder needs m >= 3, n >= 2".into()));
    }
    let id = |i: usize, j: usize| (i * m + j % m) as u32;
    let mut tris = Vec::new();
    for i in 0..n - 1 {
        for j in 0..m {
            tris.extend(square_triangles(id(i, j), id(i, j + 1), id(i + 1, j), id(i + 1, j + 1)));
        }
    }
    Ok(triangles_to_complex(&tris))
}

/// `m x n` grid with both pairs of opposite sides glued.
pub fn gen_torus(m: usize, n: usize) -> Result<SimplicialComplex> {
    if m < 3 || n < 3 {
        return Err(Error::InvalidParameter("torus needs m, n >= 3".into()));
    }
    let id = |i: usize, j: usize| ((i % n) * m + j % m) as u32;
    let mut tris = Vec::new();
    for i in 0..n {
        for j in 0..m {
            tris.extend(square_triangles(id(i, j), id(i, j + 1), id(i + 1, j), id(i + 1, j + 1)));
        }
    }
    Ok(triangles_to_complex(&tris))
}

/// `k` strips of `2 x (m+1)` vertices around a central circle `0..m`.
///
/// Strip `i` has its bottom row wrapped onto the circle (column `m` lands
/// back on circle vertex 0) and a free top row `x(i, 0..m)`. The top of its
/// last short side is identified with the top of the first short side of
/// strip `(i + t) mod k`, so the top rows chain into loops through the
/// strips. Top vertex `x(i, j)` for `j < m` has id `m + i*m + j`.
pub fn gen_mspace(m: usize, k: usize, t: usize) -> Result<SimplicialComplex> {
    if m < 3 || k < 1 || t >= k {
        return Err(Error::InvalidParameter("mspace needs m >= 3, k >= 1, 0 <= t < k".into()));
    }
    let circle = |j: usize| (j % m) as u32;
    let top = |i: usize, j: usize| {
        if j == m {
            (m + ((i + t) % k) * m) as u32
        } else {
            (m + i * m + j) as u32
        }
    };
    let mut tris = Vec::new();
    for i in 0..k {
        for j in 0..m {
            tris.extend(square_triangles(circle(j), circle(j + 1), top(i, j), top(i, j + 1)));
        }
    }
    Ok(triangles_to_complex(&tris))
}

/// `k` (d+1)-simplices sharing the d-face `{0..=d}`, apex `d+1+i` each.
pub fn gen_kdk(d: usize, k: usize) -> Result<SimplicialComplex> {
    if d < 1 || k < 1 {
        return Err(Error::InvalidParameter("kdk needs d >= 1, k >= 1".into()));
    }
    let simplices: Vec<Simplex> = (0..k)
        .map(|i| Simplex::new((0..=d as u32).chain([(d + 1 + i) as u32])).unwrap())
        .collect();
    SimplicialComplex::from_maximal(&simplices, |_| 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<[f64; 3]>,
    pub seed: u64,
}

fn noisy_circle_point(rng: &mut impl Rng, angle: f64) -> [f64; 3] {
    let mut r = normal(rng, 1.0, 0.1);
    while r <= 0.0 {
        r = normal(rng, 1.0, 0.1);
    }
    let z = normal(rng, 0.0, 0.1);
    [r * angle.cos(), r * angle.sin(), z]
}

/// `n` points at uniform angles, radius ~ N(1, 0.1), height ~ N(0, 0.1).
pub fn sample_unfiltered(n: usize, seed: u64) -> PointCloud {
    let mut r = rng(seed, 0);
    let points = (0..n)
        .map(|_| {
            let a = r.gen::<f64>() * 2.0 * PI;
            noisy_circle_point(&mut r, a)
        })
        .collect();
    PointCloud { points, seed }
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Samples `n` points as above, then keeps `ceil(n/2)` by farthest-point
/// selection from a random start.
pub fn sample_filtered(n: usize, seed: u64) -> PointCloud {
    let all = sample_unfiltered(n, seed).points;
    if all.is_empty() {
        return PointCloud { points: all, seed };
    }
    let keep = n.div_ceil(2);
    let mut r = rng(seed, 2);
    let start = r.gen_range(0..all.len());
    let mut chosen = vec![start];
    let mut gap: Vec<f64> = all.iter().map(|p| dist(p, &all[start])).collect();
    while chosen.len() < keep {
        let next = (0..all.len())
            .filter(|i| !chosen.contains(i))
            .max_by(|&a, &b| gap[a].total_cmp(&gap[b]).then(b.cmp(&a)))
            .expect("points remain");
        chosen.push(next);
        for (i, g) in gap.iter_mut().enumerate() {
            *g = g.min(dist(&all[i], &all[next]));
        }
    }
    PointCloud { points: chosen.into_iter().map(|i| all[i]).collect(), seed }
}

/// `per_arc` points drawn uniformly inside each of `arcs` equal arcs.
pub fn sample_sector(arcs: usize, per_arc: usize, seed: u64) -> PointCloud {
    let mut r = rng(seed, 0);
    let width = 2.0 * PI / arcs as f64;
    let mut points = Vec::with_capacity(arcs * per_arc);
    for a in 0..arcs {
        for _ in 0..per_arc {
            let angle = (a as f64 + r.gen::<f64>()) * width;
            points.push(noisy_circle_point(&mut r, angle));
        }
    }
    PointCloud { points, seed }
}

/// 2-skeleton of the Vietoris-Rips complex at `radius`. Edges weigh their
/// length; vertices and triangles weigh 0.
pub fn gen_vr(pc: &PointCloud, radius: f64) -> Result<SimplicialComplex> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let n = pc.points.len();
    let mut adj = vec![vec![false; n]; n];
    let mut simplices = Vec::new();
    for i in 0..n {
        simplices.push((Simplex::vertex(i as u32), 0.0));
        for j in i + 1..n {
            let l = dist(&pc.points[i], &pc.points[j]);
            if l <= radius {
                adj[i][j] = true;
                adj[j][i] = true;
                simplices.push((Simplex::from_slice(&[i as u32, j as u32]), l));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i][j] {
                continue;
            }
            for l in j + 1..n {
                if adj[i][l] && adj[j][l] {
                    simplices.push((Simplex::from_slice(&[i as u32, j as u32, l as u32]), 0.0));
                }
            }
        }
    }
    SimplicialComplex::new(simplices)
}

/// 1.1 times the smallest radius at which the 1-skeleton is connected.
pub fn suggest_radius(pc: &PointCloud) -> f64 {
    let n = pc.points.len();
    if n < 2 {
        return 1.0;
    }
    // Prim: the longest MST edge is the connectivity threshold.
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    best[0] = 0.0;
    let mut longest: f64 = 0.0;
    for _ in 0..n {
        let u = (0..n).filter(|&i| !in_tree[i]).min_by(|&a, &b| best[a].total_cmp(&best[b])).unwrap();
        in_tree[u] = true;
        longest = longest.max(best[u]);
        for v in 0..n {
            if !in_tree[v] {
                best[v] = best[v].min(dist(&pc.points[u], &pc.points[v]));
            }
        }
    }
    longest * 1.1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleMode {
    /// `V = ∂B`.
    BoundaryOnly,
    /// `V = X + ∂B` with `X` a non-bounding representative.
    HomologyRep,
}

/// `X + ∂B` where each (d+1)-simplex joins `B` with probability 1/2.
pub fn build_input_cycle(k: &SimplicialComplex, d: usize, seed: u64, mode: CycleMode) -> Result<Chain> {
    let level = Level::new(k, d);
    let x = match mode {
        CycleMode::BoundaryOnly => Chain::zero(d),
        CycleMode::HomologyRep => oracle::representative_cycle(k, d).ok_or(Error::TrivialHomology(d))?,
    };
    let mut r = rng(seed, 1);
    let b: Vec<usize> = (0..level.upper.len()).filter(|_| r.gen::<bool>()).collect();
    let bits = level.add_boundary(&level.lower_indicator(&x)?, b);
    Ok(level.lower_chain(&bits))
}

/// Generator and parameters of an instance family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Grid { rows: usize, cols: usize },
    Cylinder { m: usize, n: usize },
    Torus { m: usize, n: usize },
    Mspace { m: usize, k: usize, t: usize },
    Kdk { d: usize, k: usize },
    VrUnfiltered { n: usize, radius: Option<f64> },
    VrFiltered { n: usize, radius: Option<f64> },
    VrSector { arcs: usize, per_arc: usize, radius: Option<f64> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grid { .. } => "grid",
            Family::Cylinder { .. } => "cylinder",
            Family::Torus { .. } => "torus",
            Family::Mspace { .. } => "mspace",
            Family::Kdk { .. } => "kdk",
            Family::VrUnfiltered { .. } => "vr_unfiltered",
            Family::VrFiltered { .. } => "vr_filtered",
            Family::VrSector { .. } => "vr_sector",
        }
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: f64| {
            p.insert(k.to_string(), v);
        };
        match *self {
            Family::Grid { rows, cols } => {
                put("rows", rows as f64);
                put("cols", cols as f64);
            }
            Family::Cylinder { m, n } | Family::Torus { m, n } => {
                put("m", m as f64);
                put("n", n as f64);
            }
            Family::Mspace { m, k, t } => {
                put("m", m as f64);
                put("k", k as f64);
                put("t", t as f64);
            }
            Family::Kdk { d, k } => {
                put("d", d as f64);
                put("k", k as f64);
            }
            Family::VrUnfiltered { n, radius } | Family::VrFiltered { n, radius } => {
                put("n", n as f64);
                if let Some(r) = radius {
                    put("radius", r);
                }
            }
            Family::VrSector { arcs, per_arc, radius } => {
                put("arcs", arcs as f64);
                put("per_arc", per_arc as f64);
                if let Some(r) = radius {
                    put("radius", r);
                }
            }
        }
        p
    }

    /// `key=value` pairs joined by `;`.
    pub fn params_string(&self) -> String {
        self.params().iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }

    /// Homology dimension solved on this family.
    pub fn dimension(&self) -> usize {
        match *self {
            Family::Kdk { d, .. } => d,
            _ => 1,
        }
    }

    pub fn default_mode(&self) -> CycleMode {
        match self {
            Family::VrUnfiltered { .. } | Family::VrFiltered { .. } | Family::VrSector { .. } => CycleMode::HomologyRep,
            _ => CycleMode::BoundaryOnly,
        }
    }

    /// Builds the complex; VR families return the radius actually used.
    pub fn complex(&self, seed: u64) -> Result<(SimplicialComplex, Option<f64>)> {
        let vr = |pc: PointCloud, radius: Option<f64>| {
            let r = radius.unwrap_or_else(|| suggest_radius(&pc));
            gen_vr(&pc, r).map(|k| (k, Some(r)))
        };
        match *self {
            Family::Grid { rows, cols } => gen_grid(rows, cols).map(|k| (k, None)),
            Family::Cylinder { m, n } => gen_cylinder(m, n).map(|k| (k, None)),
            Family::Torus { m, n } => gen_torus(m, n).map(|k| (k, None)),
            Family::Mspace { m, k, t } => gen_mspace(m, k, t).map(|c| (c, None)),
            Family::Kdk { d, k } => gen_kdk(d, k).map(|c| (c, None)),
            Family::VrUnfiltered { n, radius } => vr(sample_unfiltered(n, seed), radius),
            Family::VrFiltered { n, radius } => vr(sample_filtered(n, seed), radius),
            Family::VrSector { arcs, per_arc, radius } => vr(sample_sector(arcs, per_arc, seed), radius),
        }
    }
}

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub format_version: u32,
    pub generator: String,
    pub params: BTreeMap<String, f64>,
    pub seed: u64,
    pub rng: String,
    pub mode: CycleMode,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub complex: SimplicialComplex,
    pub cycle: Chain,
    pub d: usize,
    pub meta: Meta,
}

/// Generates an instance deterministically from `(family, seed, mode)`.
pub fn generate(family: &Family, seed: u64, mode: Option<CycleMode>) -> Result<Instance> {
    let mode = mode.unwrap_or_else(|| family.default_mode());
    let (complex, radius) = family.complex(seed)?;
    let d = family.dimension();
    let cycle = build_input_cycle(&complex, d, seed, mode)?;
    let mut params = family.params();
    if let Some(r) = radius {
        params.insert("radius".into(), r);
    }
    Ok(Instance {
        complex,
        cycle,
        d,
        meta: Meta {
            format_version: FORMAT_VERSION,
            generator: family.name().into(),
            params,
            seed,
            rng: RNG_ID.into(),
            mode,
        },
    })
}
