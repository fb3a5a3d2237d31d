//! Weighted simplicial complexes and chain algebra over Z2.
//!
//! A [`Simplex`] is stored as a strictly increasing vertex list, so equality,
//! hashing and ordering are all by that canonical sequence. A [`Chain`] is a
//! set of equal-dimension simplices; addition is symmetric difference.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Vertex = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(SmallVec<[Vertex; 4]>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Repeated vertices are rejected.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut vs: SmallVec<[Vertex; 4]> = vertices.into_iter().collect();
        if vs.is_empty() {
            return Err(Error::EmptySimplex);
        }
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(w[0]));
        }
        Ok(Simplex(vs))
    }

    /// Panics on repeated vertices. Intended for literals and generators.
    pub fn from_slice(vertices: &[Vertex]) -> Self {
        Self::new(vertices.iter().copied()).expect("invalid simplex literal")
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Codimension-one faces, in canonical order. Empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        let mut out: SmallVec<[Simplex; 4]> = (0..n)
            .map(move |skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, v)| *v)
                        .collect(),
                )
            })
            .collect();
        out.sort();
        out.into_iter()
    }

    /// Every nonempty subset, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u32..(1u32 << n))
            .map(|bits| {
                Simplex(
                    (0..n)
                        .filter(|i| bits & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn with_vertex(&self, v: Vertex) -> Result<Simplex> {
        Simplex::new(self.0.iter().copied().chain(std::iter::once(v)))
    }

    pub fn shared_vertices(&self, other: &Simplex) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Simplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<Vertex>::deserialize(d)?;
        Simplex::new(vs).map_err(serde::de::Error::custom)
    }
}

/// A finite, face-closed, weighted simplicial complex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    weights: BTreeMap<Simplex, f64>,
    levels: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Checks face-closure and that every weight is finite and non-negative.
    pub fn new(simplices: impl IntoIterator<Item = (Simplex, f64)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (s, w) in simplices {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeight { simplex: s, weight: w });
            }
            if weights.insert(s.clone(), w).is_some() {
                return Err(Error::DuplicateSimplex(s));
            }
        }
        for s in weights.keys() {
            if let Some(face) = s.facets().find(|f| !weights.contains_key(f)) {
                return Err(Error::NotFaceClosed { simplex: s.clone(), face });
            }
        }
        Ok(Self::from_map(weights))
    }

    fn from_map(weights: BTreeMap<Simplex, f64>) -> Self {
        let mut levels: Vec<Vec<Simplex>> = Vec::new();
        for s in weights.keys() {
            let d = s.dim();
            if levels.len() <= d {
                levels.resize(d + 1, Vec::new());
            }
            levels[d].push(s.clone());
        }
        SimplicialComplex { weights, levels }
    }

    /// Closure of `maximal` where each simplex takes its weight from `weight`.
    pub fn from_maximal<'a>(
        maximal: impl IntoIterator<Item = &'a Simplex>,
        weight: impl Fn(&Simplex) -> f64,
    ) -> Result<Self> {
        let faces = closure(maximal);
        Self::new(faces.into_iter().map(|s| {
            let w = weight(&s);
            (s, w)
        }))
    }

    pub fn empty() -> Self {
        Self::from_map(BTreeMap::new())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Largest simplex dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.weights.contains_key(s)
    }

    pub fn weight(&self, s: &Simplex) -> Option<f64> {
        self.weights.get(s).copied()
    }

    /// All simplices of dimension `d`, sorted.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.levels.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, f64)> {
        self.weights.iter().map(|(s, w)| (s, *w))
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.simplices(0).last().map(|s| s.vertices()[0])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Same simplices with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.iter().map(|(s, w)| (s.clone(), w * factor)))
    }

    /// Same simplices, all weights one.
    pub fn unit_weighted(&self) -> Self {
        Self::from_map(self.weights.keys().map(|s| (s.clone(), 1.0)).collect())
    }
}

/// All nonempty faces of every simplex in `x`.
pub fn closure<'a>(x: impl IntoIterator<Item = &'a Simplex>) -> BTreeSet<Simplex> {
    let mut out = BTreeSet::new();
    for s in x {
        if out.contains(s) {
            continue;
        }
        out.extend(s.all_faces());
    }
    out
}

/// A Z2 chain: a set of `dim`-simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    elements: BTreeSet<Simplex>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain { dim, elements: BTreeSet::new() }
    }

    pub fn new(dim: usize, elements: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let elements: BTreeSet<Simplex> = elements.into_iter().collect();
        if let Some(bad) = elements.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, bad.dim()));
        }
        Ok(Chain { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.elements.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.elements.iter()
    }

    pub fn into_elements(self) -> BTreeSet<Simplex> {
        self.elements
    }

    /// Toggles one simplex in or out of the chain.
    pub fn toggle(&mut self, s: Simplex) -> Result<()> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, s.dim()));
        }
        if !self.elements.remove(&s) {
            self.elements.insert(s);
        }
        Ok(())
    }

    /// Symmetric difference.
    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(Chain {
            dim: self.dim,
            elements: self.elements.symmetric_difference(&other.elements).cloned().collect(),
        })
    }

    /// Mod-2 sum of facets. The boundary of a 0-chain is the zero chain
    /// (there is no dimension -1 chain group to land in, so it keeps dim 0).
    pub fn boundary(&self) -> Chain {
        if self.dim == 0 {
            return Chain::zero(0);
        }
        let mut out = BTreeSet::new();
        for s in &self.elements {
            for f in s.facets() {
                if !out.remove(&f) {
                    out.insert(f);
                }
            }
        }
        Chain { dim: self.dim - 1, elements: out }
    }

    pub fn is_cycle(&self) -> bool {
        self.dim == 0 || self.boundary().is_empty()
    }

    /// Weight sum in canonical simplex order.
    pub fn cost(&self, k: &SimplicialComplex) -> Result<f64> {
        let mut total = 0.0;
        for s in &self.elements {
            total += k.weight(s).ok_or_else(|| Error::NotInComplex(s.clone()))?;
        }
        Ok(total)
    }

    pub fn is_in(&self, k: &SimplicialComplex) -> bool {
        self.elements.iter().all(|s| k.contains(s))
    }
}

/// Suspension of a complex together with the two cone apexes.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub complex: SimplicialComplex,
    pub plus: Vertex,
    pub minus: Vertex,
}

/// Double cone over `k`. The apexes are `max + 1` and `max + 2`. Each cone
/// simplex `σ ∪ {apex}` inherits the weight of `σ`; the apexes weigh 1, so a
/// unit-weighted input gives a unit-weighted suspension.
pub fn suspension(k: &SimplicialComplex) -> Suspension {
    let plus = k.max_vertex().map_or(0, |m| m + 1);
    let minus = plus + 1;
    let mut weights = BTreeMap::new();
    weights.insert(Simplex::vertex(plus), 1.0);
    weights.insert(Simplex::vertex(minus), 1.0);
    for (s, w) in k.iter() {
        weights.insert(s.clone(), w);
        weights.insert(s.with_vertex(plus).expect("fresh apex"), w);
        weights.insert(s.with_vertex(minus).expect("fresh apex"), w);
    }
    Suspension { complex: SimplicialComplex::from_map(weights), plus, minus }
}

/// Lifts a d-cycle to the (d+1)-cycle `{σ ∪ plus, σ ∪ minus}`.
pub fn suspend_cycle(v: &Chain, plus: Vertex, minus: Vertex) -> Result<Chain> {
    if !v.is_cycle() {
        return Err(Error::NotACycle);
    }
    let mut out = BTreeSet::new();
    for s in v.iter() {
        out.insert(s.with_vertex(plus)?);
        out.insert(s.with_vertex(minus)?);
    }
    Ok(Chain { dim: v.dim + 1, elements: out })
}

impl Suspension {
    pub fn lift_cycle(&self, v: &Chain) -> Result<Chain> {
        suspend_cycle(v, self.plus, self.minus)
    }
}

/// Indexed view of dimensions `d` (lower) and `d + 1` (upper) of a complex,
/// with precomputed incidences. Used by the solvers and the oracle.
#[derive(Clone, Debug)]
pub struct Level {
    pub d: usize,
    pub lower: Vec<Simplex>,
    pub upper: Vec<Simplex>,
    pub lower_weight: Vec<f64>,
    /// Facets of each upper simplex, as lower indices.
    pub boundary: Vec<SmallVec<[u32; 4]>>,
    /// Cofaces of each lower simplex, as upper indices.
    pub cofaces: Vec<Vec<u32>>,
    lower_pos: FxHashMap<Simplex, u32>,
    upper_pos: FxHashMap<Simplex, u32>,
}

impl Level {
    pub fn new(k: &SimplicialComplex, d: usize) -> Self {
        let lower = k.simplices(d).to_vec();
        let upper = k.simplices(d + 1).to_vec();
        let lower_pos: FxHashMap<Simplex, u32> =
            lower.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let upper_pos: FxHashMap<Simplex, u32> =
            upper.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let lower_weight = lower.iter().map(|s| k.weight(s).unwrap_or(0.0)).collect();
        let mut cofaces = vec![Vec::new(); lower.len()];
        let boundary: Vec<SmallVec<[u32; 4]>> = upper
            .iter()
            .enumerate()
            .map(|(ui, s)| {
                s.facets()
                    .map(|f| {
                        let li = lower_pos[&f];
                        cofaces[li as usize].push(ui as u32);
                        li
                    })
                    .collect()
            })
            .collect();
        Level { d, lower, upper, lower_weight, boundary, cofaces, lower_pos, upper_pos }
    }

    pub fn lower_index(&self, s: &Simplex) -> Option<usize> {
        self.lower_pos.get(s).map(|&i| i as usize)
    }

    pub fn upper_index(&self, s: &Simplex) -> Option<usize> {
        self.upper_pos.get(s).map(|&i| i as usize)
    }

    /// Indicator vector of a d-chain over the lower simplices.
    pub fn lower_indicator(&self, c: &Chain) -> Result<Vec<bool>> {
        if c.dim() != self.d {
            return Err(Error::DimensionMismatch(self.d, c.dim()));
        }
        let mut out = vec![false; self.lower.len()];
        for s in c.iter() {
            let i = self.lower_index(s).ok_or_else(|| Error::NotInComplex(s.clone()))?;
            out[i] = true;
        }
        Ok(out)
    }

    pub fn lower_chain(&self, indicator: &[bool]) -> Chain {
        Chain {
            dim: self.d,
            elements: indicator
                .iter()
                .enumerate()
                .filter(|(_, b)| **b)
                .map(|(i, _)| self.lower[i].clone())
                .collect(),
        }
    }

    pub fn upper_chain(&self, indices: impl IntoIterator<Item = usize>) -> Chain {
        Chain { dim: self.d + 1, elements: indices.into_iter().map(|i| self.upper[i].clone()).collect() }
    }

    /// `v + ∂w` for `w` given as upper indices.
    pub fn add_boundary(&self, v: &[bool], w: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut out = v.to_vec();
        for ui in w {
            for &li in &self.boundary[ui] {
                out[li as usize] ^= true;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::from_slice(v)
    }

    fn chain(dim: usize, xs: &[&[u32]]) -> Chain {
        Chain::new(dim, xs.iter().map(|v| s(v))).unwrap()
    }

    #[test]
    fn simplex_is_canonical() {
        assert_eq!(s(&[2, 0, 1]).vertices(), &[0, 1, 2]);
        assert_eq!(Simplex::new([1, 1]), Err(Error::RepeatedVertex(1)));
        assert_eq!(Simplex::new([]), Err(Error::EmptySimplex));
        assert!(s(&[0, 1]) < s(&[0, 2]));
        assert_eq!(s(&[0, 1, 2]).facets().collect::<Vec<_>>(), vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
    }

    #[test]
    fn closure_examples() {
        let abc = closure([&s(&[0, 1, 2])]);
        let expect: BTreeSet<_> =
            [&[0, 1, 2][..], &[0, 1], &[0, 2], &[1, 2], &[0], &[1], &[2]].iter().map(|v| s(v)).collect();
        assert_eq!(abc, expect);
        assert!(closure(std::iter::empty::<&Simplex>()).is_empty());
        let two = closure([&s(&[0, 1]), &s(&[2, 3])]);
        assert_eq!(two.len(), 6);
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(chain(2, &[&[0, 1, 2]]).boundary(), chain(1, &[&[0, 1], &[0, 2], &[1, 2]]));
        assert_eq!(chain(1, &[&[0, 1], &[1, 2]]).boundary(), chain(0, &[&[0], &[2]]));
        assert!(chain(0, &[&[3]]).boundary().is_empty());
    }

    #[test]
    fn chain_add_examples() {
        let u = chain(1, &[&[0, 1], &[1, 2]]);
        let v = chain(1, &[&[1, 2], &[2, 3]]);
        assert_eq!(u.add(&v).unwrap(), chain(1, &[&[0, 1], &[2, 3]]));
        assert!(u.add(&u).unwrap().is_empty());
        assert_eq!(u.add(&Chain::zero(1)).unwrap(), u);
        assert_eq!(u.add(&Chain::zero(2)), Err(Error::DimensionMismatch(1, 2)));
    }

    #[test]
    fn cost_examples() {
        let k = SimplicialComplex::new([
            (s(&[0]), 0.0),
            (s(&[1]), 0.0),
            (s(&[2]), 0.0),
            (s(&[0, 1]), 0.5),
            (s(&[1, 2]), 2.0),
        ])
        .unwrap();
        assert_eq!(chain(1, &[&[0, 1], &[1, 2]]).cost(&k).unwrap(), 2.5);
        assert_eq!(Chain::zero(1).cost(&k).unwrap(), 0.0);
        assert!(matches!(chain(1, &[&[0, 2]]).cost(&k), Err(Error::NotInComplex(_))));
    }

    #[test]
    fn cycle_examples() {
        assert!(chain(1, &[&[0, 1], &[1, 2], &[0, 2]]).is_cycle());
        assert!(!chain(1, &[&[0, 1], &[1, 2]]).is_cycle());
        assert!(Chain::zero(1).is_cycle());
    }

    #[test]
    fn rejects_bad_complexes() {
        let missing = SimplicialComplex::new([(s(&[0]), 1.0), (s(&[0, 1]), 1.0)]);
        assert!(matches!(missing, Err(Error::NotFaceClosed { .. })));
        let neg = SimplicialComplex::new([(s(&[0]), -1.0)]);
        assert!(matches!(neg, Err(Error::InvalidWeight { .. })));
        let nan = SimplicialComplex::new([(s(&[0]), f64::NAN)]);
        assert!(matches!(nan, Err(Error::InvalidWeight { .. })));
    }

    #[test]
    fn suspension_of_point() {
        let k = SimplicialComplex::new([(s(&[0]), 1.0)]).unwrap();
        let sk = suspension(&k);
        let got: Vec<_> = sk.complex.iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(got, vec![s(&[0]), s(&[0, 1]), s(&[0, 2]), s(&[1]), s(&[2])]);
        assert_eq!((sk.plus, sk.minus), (1, 2));
    }

    #[test]
    fn suspension_size() {
        let k = SimplicialComplex::from_maximal([&s(&[0, 1, 2]), &s(&[2, 3])], |_| 1.0).unwrap();
        let sk = suspension(&k);
        assert_eq!(sk.complex.len(), 3 * k.len() + 2);
    }

    #[test]
    fn suspend_cycle_examples() {
        assert!(suspend_cycle(&Chain::zero(1), 9, 10).unwrap().is_empty());
        let v = chain(1, &[&[0, 1], &[1, 2], &[0, 2]]);
        let sv = suspend_cycle(&v, 3, 4).unwrap();
        assert_eq!(sv.len(), 6);
        assert!(sv.is_cycle());
        assert_eq!(suspend_cycle(&chain(1, &[&[0, 1]]), 3, 4), Err(Error::NotACycle));
    }

    #[test]
    fn level_incidences() {
        let k = SimplicialComplex::from_maximal([&s(&[0, 1, 2]), &s(&[1, 2, 3])], |_| 1.0).unwrap();
        let lvl = Level::new(&k, 1);
        assert_eq!(lvl.lower.len(), 5);
        assert_eq!(lvl.upper.len(), 2);
        let shared = lvl.lower_index(&s(&[1, 2])).unwrap();
        assert_eq!(lvl.cofaces[shared], vec![0, 1]);
        assert!(lvl.boundary.iter().all(|b| b.len() == 3));
    }
}
