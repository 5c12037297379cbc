use simplexpaths::bounds::{audit, larman_bound};
use simplexpaths::generators::{
    all_paths_hamiltonian, check_ball_structure, check_sphere_structure, exponential_ball, exponential_ball_stages,
    hirsch_sphere, hirsch_sphere_stages, marked_path_report, shortest_path_count,
};
use simplexpaths::pathfinder::NodeBudget;
use simplexpaths::ExtNat;

const CAP: u64 = 10_000_000;

#[test]
fn ball_vertex_counts() {
    for d in 2..=4 {
        for n in 4..=7 {
            let b = exponential_ball(d, n).unwrap();
            assert_eq!(b.complex.num_vertices(), n + d * d, "d={d} n={n}");
            assert_eq!(b.complex.facet_size(), d);
            assert_eq!(b.floor, (1 << (d - 2)) * n as u64);
        }
    }
}

#[test]
fn every_ball_stage_keeps_its_shape() {
    for n in 4..=6 {
        for (i, stage) in exponential_ball_stages(4, n).unwrap().iter().enumerate() {
            let problems = check_ball_structure(stage);
            assert!(problems.is_empty(), "n={n} stage {i}: {problems:?}");
            assert!(stage.complex.is_vertex_decomposable());
        }
    }
}

#[test]
fn ball_minimum_meets_floor() {
    for n in 4..=5 {
        let b = exponential_ball(3, n).unwrap();
        let report = marked_path_report(&b, &NodeBudget::new(CAP)).unwrap();
        let min = report.min_length().unwrap() as u64;
        assert!(min >= b.floor, "n={n}: {min} < {}", b.floor);
        assert!(report.vertex_paths_end_at_facet);
    }
    let b = exponential_ball(3, 4).unwrap();
    assert!(all_paths_hamiltonian(&b, &NodeBudget::new(CAP)).unwrap());
}

#[test]
fn ball_audit_stays_within_larman() {
    let b = exponential_ball(3, 4).unwrap();
    let r = audit(&b.complex, &NodeBudget::new(CAP)).unwrap();
    assert!(!r.partial && !r.violated());
    assert_eq!(r.bounds["larman"].value, larman_bound(13, 3));
    assert!(r.observed_max_path.unwrap() >= 16);
}

#[test]
fn every_sphere_stage_keeps_its_shape() {
    for n in 7..=10 {
        for (i, stage) in hirsch_sphere_stages(4, n).unwrap().iter().enumerate() {
            let problems = check_sphere_structure(stage);
            assert!(problems.is_empty(), "n={n} stage {i}: {problems:?}");
        }
    }
}

#[test]
fn sphere_marked_vertices_have_one_shortest_path() {
    for n in 7..=10 {
        let s = hirsch_sphere(3, n).unwrap();
        let (dist, ways) = shortest_path_count(&s.complex, s.x1, s.x2);
        assert!(dist.is_some_and(|d| d >= 3), "n={n}");
        assert_eq!(ways, 1, "n={n}");
    }
}

#[test]
fn sphere_is_a_decomposable_closed_sphere() {
    let s = hirsch_sphere(3, 8).unwrap();
    assert!(s.complex.is_closed_pseudomanifold());
    assert!(s.complex.is_vertex_decomposable());
    assert!(s.complex.is_normal());
    assert_ne!(s.complex.dual_diameter(), ExtNat::Infinity);
}

#[test]
fn sidecar_fields() {
    let b = exponential_ball(3, 4).unwrap();
    let json = serde_json::to_value(b.sidecar("ball", serde_json::json!({"d": 3, "N": 4}))).unwrap();
    assert_eq!(json["vertices"], 13);
    assert_eq!(json["facet_size"], 3);
    assert_eq!(json["claimed_min_length"], 14);
    assert_eq!(json["floor"], 8);
    assert!(json["observed_min_length"].is_null());
    assert_eq!(json["f1"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(exponential_ball(1, 4).is_err());
    assert!(exponential_ball(3, 3).is_err());
    assert!(hirsch_sphere(3, 6).is_err());
}
