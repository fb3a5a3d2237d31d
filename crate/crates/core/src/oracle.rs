//! Ground truth: exhaustive search over bounding chains and Z2 linear
//! algebra on boundary matrices.

use crate::complex::{Chain, Level, SimplicialComplex};
use crate::dp::Solution;
use crate::error::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

/// Bit-packed Z2 vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Self::zeros(len);
        for i in ones {
            b.flip(i);
        }
        b
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Highest set index.
    pub fn pivot(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Z2 matrix stored as bit-packed columns. For a boundary map the rows are
/// the lower simplices and the columns the upper ones, both in canonical order.
#[derive(Clone, Debug)]
pub struct Z2Matrix {
    pub rows: usize,
    pub columns: Vec<BitVec>,
}

impl Z2Matrix {
    /// Boundary map from (d+1)-chains to d-chains.
    pub fn boundary(level: &Level) -> Self {
        let rows = level.lower.len();
        let columns = level
            .boundary
            .iter()
            .map(|faces| BitVec::from_indices(rows, faces.iter().map(|&f| f as usize)))
            .collect();
        Z2Matrix { rows, columns }
    }

    pub fn rank(&self) -> usize {
        let mut basis = Z2Basis::new(self.rows);
        self.columns.iter().filter(|c| basis.insert((*c).clone())).count()
    }

    /// Basis of the null space, each vector given over the columns.
    /// Deterministic: columns are reduced left to right.
    pub fn kernel(&self) -> Vec<BitVec> {
        let n = self.columns.len();
        let mut reduced: Vec<(BitVec, BitVec)> = Vec::new();
        let mut by_pivot: rustc_hash::FxHashMap<usize, usize> = Default::default();
        let mut kernel = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut v = col.clone();
            let mut combo = BitVec::from_indices(n, [j]);
            while let Some(p) = v.pivot() {
                match by_pivot.get(&p) {
                    Some(&r) => {
                        v.xor_assign(&reduced[r].0);
                        combo.xor_assign(&reduced[r].1);
                    }
                    None => break,
                }
            }
            match v.pivot() {
                Some(p) => {
                    by_pivot.insert(p, reduced.len());
                    reduced.push((v, combo));
                }
                None => kernel.push(combo),
            }
        }
        kernel
    }
}

/// Incremental echelon basis keyed by pivot.
#[derive(Clone, Debug)]
pub struct Z2Basis {
    len: usize,
    vectors: Vec<BitVec>,
    by_pivot: rustc_hash::FxHashMap<usize, usize>,
}

impl Z2Basis {
    pub fn new(len: usize) -> Self {
        Z2Basis { len, vectors: Vec::new(), by_pivot: Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.len);
        while let Some(p) = v.pivot() {
            match self.by_pivot.get(&p) {
                Some(&r) => v.xor_assign(&self.vectors[r]),
                None => break,
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether it was.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(v);
        match v.pivot() {
            Some(p) => {
                self.by_pivot.insert(p, self.vectors.len());
                self.vectors.push(v);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

fn boundary_image(level: &Level) -> Z2Basis {
    let mut basis = Z2Basis::new(level.lower.len());
    for col in Z2Matrix::boundary(level).columns {
        basis.insert(col);
    }
    basis
}

/// Exhaustive minimum over every `W ⊆ K_{d+1}`, walking subsets in Gray-code
/// order so each step flips one simplex. Ties keep the earliest subset.
pub fn brute_force_min(k: &SimplicialComplex, v: &Chain, cap: usize) -> Result<Solution> {
    if !v.is_cycle() {
        return Err(Error::NotACycle);
    }
    let level = Level::new(k, v.dim());
    let n = level.upper.len();
    if n > cap || n >= 64 {
        return Err(Error::TooLarge { count: n, cap });
    }
    let mut u = level.lower_indicator(v)?;
    let mut cost: f64 = u.iter().zip(&level.lower_weight).filter(|(b, _)| **b).fold(0.0, |acc, (_, w)| acc + w);
    let (mut best_cost, mut best_gray) = (cost, 0u64);
    for i in 1u64..(1u64 << n) {
        let flip = i.trailing_zeros() as usize;
        for &f in &level.boundary[flip] {
            let f = f as usize;
            u[f] = !u[f];
            if u[f] {
                cost += level.lower_weight[f];
            } else {
                cost -= level.lower_weight[f];
            }
        }
        if cost < best_cost {
            best_cost = cost;
            best_gray = i ^ (i >> 1);
        }
    }
    let w: Vec<usize> = (0..n).filter(|&j| best_gray >> j & 1 == 1).collect();
    let v_bits = level.lower_indicator(v)?;
    let u_bits = level.add_boundary(&v_bits, w.iter().copied());
    let cycle = level.lower_chain(&u_bits);
    let cost = cycle.cost(k)?;
    Ok(Solution { cost, cycle, chain: level.upper_chain(w) })
}

/// Whether `u - v` bounds a (d+1)-chain.
pub fn homologous(k: &SimplicialComplex, u: &Chain, v: &Chain) -> Result<bool> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    if !u.is_cycle() || !v.is_cycle() {
        return Err(Error::NotACycle);
    }
    let level = Level::new(k, u.dim());
    let diff = u.add(v)?;
    let target = BitVec::from_bools(&level.lower_indicator(&diff)?);
    Ok(boundary_image(&level).contains(&target))
}

/// Rank of `∂_d`; zero for `d = 0`.
fn boundary_rank(k: &SimplicialComplex, d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    Z2Matrix::boundary(&Level::new(k, d - 1)).rank()
}

/// Betti number over Z2: `dim ker ∂_d - rank ∂_{d+1}`.
pub fn homology_rank(k: &SimplicialComplex, d: usize) -> usize {
    k.simplices(d).len() - boundary_rank(k, d) - boundary_rank(k, d + 1)
}

/// Basis of the d-cycles, as chains.
pub fn cycle_space_basis(k: &SimplicialComplex, d: usize) -> Vec<Chain> {
    if d == 0 {
        return k.simplices(0).iter().map(|s| Chain::new(0, [s.clone()]).unwrap()).collect();
    }
    let level = Level::new(k, d - 1);
    let upper = level.upper.clone();
    Z2Matrix::boundary(&level)
        .kernel()
        .into_iter()
        .map(|z| Chain::new(d, z.ones().map(|j| upper[j].clone())).unwrap())
        .collect()
}

/// A d-cycle that is not a boundary, or `None` when `H_d = 0`. Picks the
/// smallest non-bounding vector of the reduced cycle basis, first in basis
/// order on ties.
pub fn representative_cycle(k: &SimplicialComplex, d: usize) -> Option<Chain> {
    let level = Level::new(k, d);
    let image = boundary_image(&level);
    cycle_space_basis(k, d)
        .into_iter()
        .filter(|z| {
            let bits = BitVec::from_bools(&level.lower_indicator(z).expect("cycle of K"));
            !image.contains(&bits)
        })
        .min_by_key(Chain::len)
}
