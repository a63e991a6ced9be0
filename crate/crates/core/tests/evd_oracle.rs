use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vsplit::drawing::{delete_vertices, TopologicalDrawing};
use vsplit::evd::{minimize_evd, selectors, solve_evd, solve_evd_with};
use vsplit::graph::Graph;
use vsplit::oracle::{oracle_evd, OracleBudget};
use vsplit::toolkit::{gen_random, gen_vc, random_planar, GenKind, Generated, GeneratorSpec};

/// Vertex cover number by subset enumeration.
fn vertex_cover(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|mask| g.edges().iter().all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

fn geometric(kind: GenKind, n: usize, density: f64, seed: u64) -> TopologicalDrawing {
    let mut spec = GeneratorSpec::new(kind, n, seed);
    spec.density = density;
    match gen_random(&spec).unwrap() {
        Generated::Geometric(_, d) => d,
        _ => unreachable!(),
    }
}

#[test]
fn k5_pentagon_needs_two() {
    let d = geometric(GenKind::RandomConvex, 5, 1.0, 3);
    assert!(!solve_evd(&d, 1).feasible);
    let r = solve_evd(&d, 2);
    assert!(r.feasible);
    assert_eq!(oracle_evd(&d, 5, &OracleBudget::default()).unwrap().unwrap().len(), 2);
    for one in 0..5 {
        assert_eq!(delete_vertices(&d, &[one]).unwrap().drawing.crossing_count(), 1);
    }
    assert_eq!(delete_vertices(&d, &[0, 2]).unwrap().drawing.crossing_count(), 0);
}

#[test]
fn agrees_with_subset_enumeration() {
    let mut count = 0;
    for seed in 0..60u64 {
        let kind = if seed % 3 == 0 { GenKind::RandomConvex } else { GenKind::RandomPerturbed };
        let n = 5 + (seed % 6) as usize;
        let d = geometric(kind, n, 0.5, 1000 + seed);
        assert!(d.real_vertices().count() <= 12);
        let best = oracle_evd(&d, n, &OracleBudget::default()).unwrap().unwrap();
        for k in 0..=best.len() + 1 {
            let r = solve_evd(&d, k);
            assert_eq!(r.feasible, k >= best.len(), "seed {seed} k {k}");
            if r.feasible {
                let idx: Vec<usize> = r.witness.iter().map(|&id| d.index_of(id).unwrap()).collect();
                assert_eq!(delete_vertices(&d, &idx).unwrap().drawing.crossing_count(), 0);
                assert!(r.witness.len() <= k);
            }
        }
        assert_eq!(minimize_evd(&d), best);
        for name in selectors().names() {
            assert!(solve_evd_with(&d, best.len(), selectors().get(name).unwrap()).feasible);
        }
        count += 1;
    }
    assert!(count >= 50);
}

#[test]
fn vc_reduction_matches_vertex_cover() {
    let fixed = [
        Graph::from_edges(2, &[(0, 1)]),
        Graph::from_edges(3, &[(0, 1), (1, 2)]),
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
    ];
    for (g, want) in fixed.iter().zip([1, 1, 2]) {
        let d = gen_vc(g, None).unwrap();
        assert_eq!(minimize_evd(&d).len(), want);
        assert_eq!(vertex_cover(g), want);
    }
    let c4 = gen_vc(&fixed[2], None).unwrap();
    assert_eq!(oracle_evd(&c4, 4, &OracleBudget::default()).unwrap().unwrap().len(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..20 {
        let n = 3 + i % 8;
        let g = random_planar(n, 1.3, &mut rng);
        let d = gen_vc(&g, None).unwrap();
        assert_eq!(minimize_evd(&d).len(), vertex_cover(&g), "graph {:?}", g.edges());
    }
}
