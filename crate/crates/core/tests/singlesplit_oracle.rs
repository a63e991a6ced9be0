use vsplit::drawing::{delete_vertices, validate, TopologicalDrawing, VertexKind, Violation};
use vsplit::oracle::{oracle_single_split, OracleBudget};
use vsplit::singlesplit::{searches, split_single_vertex, split_single_vertex_with};
use vsplit::toolkit::{gen_random, GenKind, Generated, GeneratorSpec};

fn drawing(kind: GenKind, n: usize, density: f64, seed: u64) -> TopologicalDrawing {
    let mut spec = GeneratorSpec::new(kind, n, seed);
    spec.density = density;
    match gen_random(&spec).unwrap() {
        Generated::Geometric(_, d) => d,
        _ => unreachable!(),
    }
}

fn k5() -> TopologicalDrawing {
    drawing(GenKind::RandomConvex, 5, 1.0, 1)
}

fn check(d: &TopologicalDrawing, v_id: usize, k: usize) -> usize {
    let r = split_single_vertex(d, v_id, k).unwrap();
    let want = oracle_single_split(d, v_id, k, &OracleBudget::default()).unwrap();
    assert_eq!(r.total_crossings, want, "vertex {v_id}, k={k}");
    assert!(r.drawing.euler_ok());
    assert_eq!(r.drawing.crossing_count() - r.base.crossing_count(), r.total_crossings);
    assert!(r.faces.len() <= k && r.copies.len() == r.faces.len());
    for v in r.drawing.vertices() {
        if let VertexKind::Crossing(a, b) = v.kind {
            assert!(!(r.star_edges.contains(&a) && r.star_edges.contains(&b)), "stars cross");
        }
    }
    // structural part of the report must be clean
    for viol in validate(&r.drawing).violations {
        assert!(
            matches!(viol, Violation::DoubleCrossing { .. } | Violation::AdjacentCrossing { .. }),
            "{viol:?}"
        );
    }
    r.total_crossings
}

#[test]
fn k5_pentagon_matches_oracle() {
    let d = k5();
    assert_eq!(d.crossing_count(), 5);
    for v in 0..5 {
        let t1 = check(&d, v, 1);
        let t2 = check(&d, v, 2);
        assert!(t2 <= t1);
    }
}

#[test]
fn k5_pentagon_outer_face_is_close_to_all() {
    let d = k5();
    let t = vsplit::singlesplit::dual_distances(&d, 0).unwrap();
    let outer = {
        let del = delete_vertices(&d, &[0]).unwrap();
        del.face_map[d.outer_face.unwrap()].unwrap()
    };
    for w in 0..t.neighbors.len() {
        assert_eq!(t.get(outer, w), 0);
    }
}

#[test]
fn random_drawings_match_oracle() {
    let mut count = 0;
    for seed in 0..40u64 {
        let kind = if seed % 2 == 0 { GenKind::RandomPerturbed } else { GenKind::RandomConvex };
        let d = drawing(kind, 5 + (seed % 3) as usize, 0.6, seed);
        let v = (seed as usize) % d.real_vertices().count();
        let base = delete_vertices(&d, &[v]).unwrap().drawing;
        if base.num_faces() > 12 {
            continue;
        }
        let mut prev = usize::MAX;
        for k in 1..=3 {
            let t = check(&d, d.vertex(v).id, k);
            assert!(t <= prev, "not monotone in k");
            prev = t;
        }
        count += 1;
    }
    assert!(count >= 25, "only {count} instances");
}

#[test]
fn searches_agree() {
    let reg = searches();
    for seed in 0..10u64 {
        let d = drawing(GenKind::RandomPerturbed, 6, 0.7, 100 + seed);
        for k in 1..=2 {
            let a = split_single_vertex_with(&d, 0, k, reg.get("exhaustive").unwrap()).unwrap();
            let b = split_single_vertex_with(&d, 0, k, reg.get("pruned").unwrap()).unwrap();
            assert_eq!(a.faces, b.faces);
            assert_eq!(a.total_crossings, b.total_crossings);
        }
    }
}

#[test]
fn large_k_decouples() {
    let d = k5();
    let t = vsplit::singlesplit::dual_distances(&d, 2).unwrap();
    let sum: usize = (0..t.neighbors.len()).map(|w| (0..t.num_faces()).map(|f| t.get(f, w)).min().unwrap()).sum();
    assert_eq!(split_single_vertex(&d, 2, 4).unwrap().total_crossings, sum);
}
