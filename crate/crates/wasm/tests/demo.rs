use homloc::oracle::homologous;
use homloc_wasm::Demo;

#[test]
fn annulus_outer_ring_shrinks_to_inner_ring() {
    let mut demo = Demo::new("annulus", 8, 3).unwrap();
    demo.outer_ring();
    let scene = demo.scene();
    assert_eq!(scene.cycle.len(), 8);
    for algo in ["hasse", "conn"] {
        let solved = demo.solve(algo).unwrap();
        assert_eq!(solved.edges.len(), 8);
        // Every edge of the optimum lies on the unit circle.
        for &e in &solved.edges {
            let [p, q] = scene.edges[e];
            assert!(p < 8 && q < 8, "{algo}: edge {p}-{q} off the inner ring");
        }
        let inner = 16.0 * (std::f64::consts::PI / 8.0).sin();
        assert!((solved.cost - inner).abs() < 1e-9);
        assert!(solved.cost < scene.cost);
    }
}

#[test]
fn toggled_triangles_on_a_grid_solve_to_zero() {
    let mut demo = Demo::new("grid", 4, 5).unwrap();
    for t in [0, 3, 4, 9] {
        demo.toggle_triangle(t).unwrap();
    }
    let v = demo.cycle();
    assert!(!v.is_empty() && v.is_cycle());
    assert!(homologous(demo.complex(), &v, &homloc::Chain::zero(1)).unwrap());
    assert_eq!(demo.solve("hasse").unwrap().cost, 0.0);
    demo.toggle_triangle(0).unwrap();
    demo.toggle_triangle(0).unwrap();
    assert_eq!(demo.cycle(), v);
    demo.outer_ring();
    assert_eq!(demo.scene().cycle.len(), 2 * (3 + 4));
    assert_eq!(demo.solve("conn").unwrap().cost, 0.0);
    demo.clear();
    assert!(demo.scene().cycle.is_empty());
}

#[test]
fn bad_arguments_are_errors() {
    assert!(Demo::new("sphere", 3, 3).is_err());
    assert!(Demo::new("annulus", 2, 3).is_err());
    assert!(Demo::new("grid", 30, 30).is_err());
    let mut demo = Demo::new("grid", 3, 3).unwrap();
    assert!(demo.toggle_triangle(99).is_err());
    assert!(demo.solve("brute").is_err());
}

#[test]
fn scene_serializes() {
    let demo = Demo::new("annulus", 6, 2).unwrap();
    let json = serde_json::to_value(demo.scene()).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(json["triangles"].as_array().unwrap().len(), 12);
}
