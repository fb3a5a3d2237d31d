//! The two graphs whose treewidth parameterizes the solvers: the
//! connectivity graph on d-simplices and one level of the Hasse diagram.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::complex::{Simplex, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// Vertices are d-simplices, adjacent when they share a (d-1)-face.
    Connectivity(usize),
    /// Vertices are d- and (d-1)-simplices, joined by the facet relation.
    HasseLevel(usize),
}

impl GraphKind {
    pub fn level(&self) -> usize {
        match *self {
            GraphKind::Connectivity(d) | GraphKind::HasseLevel(d) => d,
        }
    }
}

/// Simple undirected graph on simplices. Vertex indices follow canonical
/// simplex order; adjacency lists are sorted.
#[derive(Clone, Debug)]
pub struct DerivedGraph {
    pub kind: GraphKind,
    vertices: Vec<Simplex>,
    index: FxHashMap<Simplex, usize>,
    adj: Vec<Vec<usize>>,
}

impl DerivedGraph {
    fn build(kind: GraphKind, mut vertices: Vec<Simplex>, edges: Vec<(Simplex, Simplex)>) -> Self {
        vertices.sort();
        vertices.dedup();
        let index: FxHashMap<Simplex, usize> =
            vertices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (a, b) in edges {
            let (i, j) = (index[&a], index[&b]);
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        DerivedGraph { kind, vertices, index, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[Simplex] {
        &self.vertices
    }

    pub fn simplex(&self, v: usize) -> &Simplex {
        &self.vertices[v]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Each edge once, as `(smaller, larger)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// Plain-text edge list: one edge per line, each endpoint written as its
    /// space-separated vertex list, endpoints separated by ` | `. Isolated
    /// vertices are listed alone on a line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let fmt = |s: &Simplex| {
            s.vertices().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
        };
        for (i, ns) in self.adj.iter().enumerate() {
            if ns.is_empty() {
                writeln!(out, "{}", fmt(&self.vertices[i])).unwrap();
            }
        }
        for (a, b) in self.edges() {
            writeln!(out, "{} | {}", fmt(&self.vertices[a]), fmt(&self.vertices[b])).unwrap();
        }
        out
    }
}

/// `Con_d(K)`: d-simplices, adjacent when they share exactly d vertices.
pub fn connectivity_graph(k: &SimplicialComplex, d: usize) -> DerivedGraph {
    assert!(d >= 1, "connectivity graph needs d >= 1");
    let top = k.simplices(d).to_vec();
    let mut by_face: FxHashMap<Simplex, Vec<usize>> = FxHashMap::default();
    for (i, s) in top.iter().enumerate() {
        for f in s.facets() {
            by_face.entry(f).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    for cofaces in by_face.values() {
        for (x, &a) in cofaces.iter().enumerate() {
            for &b in &cofaces[x + 1..] {
                edges.push((top[a].clone(), top[b].clone()));
            }
        }
    }
    DerivedGraph::build(GraphKind::Connectivity(d), top, edges)
}

/// `Hasse_d(K)`: d- and (d-1)-simplices joined by the facet relation.
/// Cofaceless (d-1)-simplices are kept as isolated vertices.
pub fn hasse_level(k: &SimplicialComplex, d: usize) -> DerivedGraph {
    assert!(d >= 1, "Hasse level needs d >= 1");
    let mut vertices: Vec<Simplex> = k.simplices(d).to_vec();
    vertices.extend_from_slice(k.simplices(d - 1));
    let edges = k
        .simplices(d)
        .iter()
        .flat_map(|s| s.facets().map(move |f| (s.clone(), f)))
        .collect();
    DerivedGraph::build(GraphKind::HasseLevel(d), vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::from_slice(v)
    }

    fn complex(max: &[&[u32]]) -> SimplicialComplex {
        let simplices: Vec<Simplex> = max.iter().map(|v| s(v)).collect();
        SimplicialComplex::from_maximal(&simplices, |_| 1.0).unwrap()
    }

    #[test]
    fn connectivity_two_triangles() {
        let g = connectivity_graph(&complex(&[&[0, 1, 2], &[1, 2, 3]]), 2);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn connectivity_single_triangle() {
        let g = connectivity_graph(&complex(&[&[0, 1, 2]]), 2);
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn hasse_single_triangle_level_one() {
        let g = hasse_level(&complex(&[&[0, 1, 2]]), 1);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        for v in 0..g.vertex_count() {
            if g.simplex(v).dim() == 1 {
                assert_eq!(g.neighbors(v).len(), 2);
            }
        }
    }

    #[test]
    fn hasse_keeps_cofaceless_faces() {
        let g = hasse_level(&complex(&[&[0, 1, 2], &[2, 3]]), 2);
        let idx = g.index_of(&s(&[2, 3])).unwrap();
        assert!(g.neighbors(idx).is_empty());
        assert_eq!(g.vertex_count(), 1 + 4);
    }

    #[test]
    fn edge_list_format() {
        let g = connectivity_graph(&complex(&[&[0, 1, 2], &[1, 2, 3], &[5, 6, 7]]), 2);
        let text = g.to_edge_list();
        assert!(text.contains("5 6 7\n"));
        assert!(text.contains("0 1 2 | 1 2 3\n"));
    }
}
