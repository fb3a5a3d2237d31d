mod common;

use common::*;
use homloc::complex::suspension;
use homloc::graphs::{connectivity_graph, hasse_level, DerivedGraph};
use homloc::instances::gen_kdk;
use homloc::treewidth::{
    best_td, hasse_td_from_conn_td, heuristic_td, make_nice, suspend_td, validate_td, Heuristic, NiceKind,
};
use rand::Rng;

fn graphs(seed: u64, n: usize) -> Vec<(homloc::SimplicialComplex, usize, DerivedGraph, DerivedGraph)> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let (_, k, v, _) = random_instance(&mut r, 12);
            let d = v.dim();
            let conn = connectivity_graph(&k, d + 1);
            let hasse = hasse_level(&k, d + 1);
            (k, d, conn, hasse)
        })
        .collect()
}

#[test]
fn heuristic_decompositions_are_valid() {
    for (_, _, conn, hasse) in graphs(1, 60) {
        for g in [&conn, &hasse] {
            for h in [Heuristic::MinDegree, Heuristic::MinFill] {
                assert!(validate_td(g, &heuristic_td(g, h)).is_valid());
            }
            let best = best_td(g);
            assert!(validate_td(g, &best).is_valid());
            assert!(best.width() <= heuristic_td(g, Heuristic::MinDegree).width());
        }
    }
}

#[test]
fn nice_decompositions_keep_width_and_shape() {
    let mut r = rng(2);
    for (_, _, conn, hasse) in graphs(3, 60) {
        for g in [&conn, &hasse] {
            let td = best_td(g);
            let root = r.gen_range(0..td.len().max(1));
            let ntd = make_nice(&td, Some(root)).unwrap();
            ntd.check_shape().unwrap();
            ntd.validate(g).unwrap();
            assert_eq!(ntd.width(), td.width());
            assert!(ntd.nodes[ntd.root].bag.is_empty());
            for node in &ntd.nodes {
                match node.kind {
                    NiceKind::Leaf => assert!(node.bag.is_empty() && node.children.is_empty()),
                    NiceKind::Join => assert_eq!(node.children.len(), 2),
                    _ => assert_eq!(node.children.len(), 1),
                }
            }
        }
    }
}

#[test]
fn hasse_width_at_most_conn_width_plus_one() {
    for (_, _, conn, hasse) in graphs(4, 80) {
        let td = best_td(&conn);
        let lifted = hasse_td_from_conn_td(&conn, &td, &hasse).unwrap();
        assert!(validate_td(&hasse, &lifted).is_valid());
        assert!(lifted.width() <= td.width().max(0) + 1);
        assert!(best_td(&hasse).width() <= td.width().max(0) + 1);
    }
}

#[test]
fn suspended_decompositions_are_valid() {
    for (k, d, conn, hasse) in graphs(5, 30) {
        let sk = suspension(&k);
        for (g, target) in [(&conn, connectivity_graph(&sk.complex, d + 2)), (&hasse, hasse_level(&sk.complex, d + 2))] {
            let td = best_td(g);
            let up = suspend_td(g, &td, &target, sk.plus, sk.minus).unwrap();
            assert!(validate_td(&target, &up).is_valid());
            assert!(up.width() <= 2 * td.width().max(0) + 2);
        }
    }
}

#[test]
fn kdk_hasse_is_a_tree_while_conn_is_a_clique() {
    for k in 2..=8 {
        let kdk = gen_kdk(2, k).unwrap();
        let hasse = hasse_level(&kdk, 3);
        let conn = connectivity_graph(&kdk, 3);
        assert_eq!(hasse.edge_count() + 1, hasse.vertex_count());
        assert_eq!(best_td(&hasse).width(), 1);
        assert_eq!(conn.edge_count(), k * (k - 1) / 2);
        assert_eq!(best_td(&conn).width(), k as isize - 1);
    }
}
