use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vsplit::graph::Graph;
use vsplit::planarity::{count_faces, is_planar, is_sphere_embedding, planar_embedding, Rotation};

/// Planarity by exhaustive search over rotation systems of a connected graph.
fn brute_planar(g: &Graph) -> bool {
    let n = g.n();
    let base: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut rot: Rotation = base.clone();
    fn perms(v: &[usize]) -> Vec<Vec<usize>> {
        // fix the first element, permute the rest
        if v.len() <= 2 {
            return vec![v.to_vec()];
        }
        let mut out = Vec::new();
        let rest = &v[1..];
        let mut idx: Vec<usize> = (0..rest.len()).collect();
        loop {
            let mut p = vec![v[0]];
            p.extend(idx.iter().map(|&i| rest[i]));
            out.push(p);
            // next permutation
            let mut i = idx.len() - 1;
            while i > 0 && idx[i - 1] >= idx[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = idx.len() - 1;
            while idx[j] <= idx[i - 1] {
                j -= 1;
            }
            idx.swap(i - 1, j);
            idx[i..].reverse();
        }
        out
    }
    let options: Vec<Vec<Vec<usize>>> = base.iter().map(|b| perms(b)).collect();
    let target = 2 - n as i64 + g.m() as i64;
    fn rec(v: usize, options: &[Vec<Vec<usize>>], rot: &mut Rotation, target: i64) -> bool {
        if v == options.len() {
            return count_faces(rot) as i64 == target;
        }
        for o in &options[v] {
            rot[v] = o.clone();
            if rec(v + 1, options, rot, target) {
                return true;
            }
        }
        false
    }
    rec(0, &options, &mut rot, target)
}

fn rotation_count(g: &Graph) -> f64 {
    (0..g.n()).map(|v| (1..g.degree(v).max(1)).product::<usize>() as f64).product()
}

#[test]
fn dmp_agrees_with_rotation_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut nonplanar = 0;
    while checked < 150 {
        let n = rng.gen_range(4..=7);
        let p = rng.gen_range(0.35..0.85);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if !g.is_connected() || rotation_count(&g) > 2.0e6 {
            continue;
        }
        checked += 1;
        let brute = brute_planar(&g);
        assert_eq!(is_planar(&g), brute, "disagreement on {:?}", g.edges());
        if brute {
            let rot = planar_embedding(&g).unwrap();
            assert!(is_sphere_embedding(&g, &rot));
        } else {
            nonplanar += 1;
        }
    }
    eprintln!("non-planar samples: {nonplanar}");
    assert!(nonplanar >= 3, "sample should contain non-planar graphs");
}

#[test]
fn embeddings_of_random_planar_graphs_are_valid() {
    // subgraphs of a triangulated grid are planar
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let (w, h) = (rng.gen_range(2..6), rng.gen_range(2..6));
        let id = |x: usize, y: usize| y * w + x;
        let mut g = Graph::new(w * h);
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w && rng.gen_bool(0.8) {
                    g.add_edge(id(x, y), id(x + 1, y));
                }
                if y + 1 < h && rng.gen_bool(0.8) {
                    g.add_edge(id(x, y), id(x, y + 1));
                }
                if x + 1 < w && y + 1 < h && rng.gen_bool(0.5) {
                    g.add_edge(id(x, y), id(x + 1, y + 1));
                }
            }
        }
        let rot = planar_embedding(&g).expect("grid subgraphs are planar");
        assert!(is_sphere_embedding(&g, &rot));
    }
}
