#![allow(dead_code)]

use homloc::complex::{closure, Chain, Level, Simplex, SimplicialComplex};
use homloc::instances::{gen_grid, gen_kdk, gen_torus, gen_vr, sample_unfiltered};
use homloc::oracle::cycle_space_basis;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(v: &[u32]) -> Simplex {
    Simplex::from_slice(v)
}

pub fn from_maximal(max: &[&[u32]]) -> SimplicialComplex {
    let simplices: Vec<Simplex> = max.iter().map(|v| s(v)).collect();
    SimplicialComplex::from_maximal(&simplices, |_| 1.0).unwrap()
}

/// Closure of a random subset (at most `max_top`) of the top simplices of
/// `base`, with every simplex weighted by an integer in 1..=5.
pub fn random_subcomplex(rng: &mut ChaCha8Rng, base: &SimplicialComplex, max_top: usize) -> SimplicialComplex {
    let top_dim = base.dim().unwrap();
    let mut tops: Vec<Simplex> = base.simplices(top_dim).to_vec();
    tops.shuffle(rng);
    let keep = rng.gen_range(1..=max_top.min(tops.len()));
    let chosen = closure(tops[..keep].iter());
    SimplicialComplex::new(chosen.into_iter().map(|s| (s, rng.gen_range(1..=5) as f64))).unwrap()
}

/// A uniformly random d-cycle: random combination of a cycle-space basis.
pub fn random_cycle(rng: &mut ChaCha8Rng, k: &SimplicialComplex, d: usize) -> Chain {
    let mut c = Chain::zero(d);
    for z in cycle_space_basis(k, d) {
        if rng.gen::<bool>() {
            c = c.add(&z).unwrap();
        }
    }
    c
}

/// `V + ∂B` for a random (d+1)-chain `B`.
pub fn add_random_boundary(rng: &mut ChaCha8Rng, k: &SimplicialComplex, v: &Chain) -> Chain {
    let level = Level::new(k, v.dim());
    let b: Vec<usize> = (0..level.upper.len()).filter(|_| rng.gen::<bool>()).collect();
    level.lower_chain(&level.add_boundary(&level.lower_indicator(v).unwrap(), b))
}

/// One random small HL_d instance, `(label, K, V, float_weights)`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_top: usize) -> (String, SimplicialComplex, Chain, bool) {
    loop {
        let pick = rng.gen_range(0..10);
        let (label, k, d, float) = match pick {
            0..=2 => {
                let (r, c) = (rng.gen_range(2..=4), rng.gen_range(2..=5));
                (format!("grid{r}x{c}"), random_subcomplex(rng, &gen_grid(r, c).unwrap(), max_top), 1, false)
            }
            3..=5 => {
                let (m, n) = (rng.gen_range(3..=4), rng.gen_range(3..=4));
                (format!("torus{m}x{n}"), random_subcomplex(rng, &gen_torus(m, n).unwrap(), max_top), 1, false)
            }
            6 | 7 => {
                let d = rng.gen_range(1..=2);
                let kk = rng.gen_range(1..=max_top.min(8));
                let base = gen_kdk(d, kk).unwrap();
                let k = SimplicialComplex::new(base.iter().map(|(s, _)| (s.clone(), rng.gen_range(1..=5) as f64))).unwrap();
                (format!("kdk{d},{kk}"), k, d, false)
            }
            _ => {
                let n = rng.gen_range(5..=8);
                let pc = sample_unfiltered(n, rng.gen());
                let k = gen_vr(&pc, rng.gen_range(0.6..1.6)).unwrap();
                (format!("vr{n}"), k, 1, true)
            }
        };
        if k.simplices(d + 1).len() > max_top || k.simplices(d).is_empty() {
            continue;
        }
        let z = random_cycle(rng, &k, d);
        let v = add_random_boundary(rng, &k, &z);
        return (label, k, v, float);
    }
}

/// The 4x5-vertex grid with the interior square at (1, 1) cut out, and its
/// 14-edge outer boundary.
pub fn punctured_grid() -> (SimplicialComplex, Chain) {
    let grid = gen_grid(4, 5).unwrap();
    let hole = [s(&[6, 7, 12]), s(&[6, 11, 12]), s(&[6, 12])];
    let k = SimplicialComplex::new(grid.iter().filter(|(x, _)| !hole.contains(x)).map(|(x, w)| (x.clone(), w))).unwrap();
    let id = |i: u32, j: u32| i * 5 + j;
    let mut outer = Vec::new();
    for j in 0..4 {
        outer.push(s(&[id(0, j), id(0, j + 1)]));
        outer.push(s(&[id(3, j), id(3, j + 1)]));
    }
    for i in 0..3 {
        outer.push(s(&[id(i, 0), id(i + 1, 0)]));
        outer.push(s(&[id(i, 4), id(i + 1, 4)]));
    }
    (k, Chain::new(1, outer).unwrap())
}

pub fn close(a: f64, b: f64, float: bool) -> bool {
    if float {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    } else {
        a == b
    }
}
