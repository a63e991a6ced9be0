//! Instance generators for the hardness reductions and for random testing.

mod svg;

pub use svg::{export_svg, SvgMarks};

use crate::drawing::{delete_vertices, ingest_geometric, GeometricDrawing, HalfEdge, Point, Rat, TopologicalDrawing, Vertex, VertexKind};
use num_bigint::BigInt;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::{is_planar, is_sphere_embedding, planar_embedding, Rotation};
use crate::ssre_prep::SsreInstance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Embedding of `g`, either the one given (checked) or a computed one.
fn embedding_of(g: &Graph, rot: Option<&Rotation>) -> Result<Rotation> {
    match rot {
        Some(r) if is_sphere_embedding(g, r) => Ok(r.clone()),
        Some(_) => Err(Error::InvalidRotationSystem("rotation is not a planar embedding of the graph".into())),
        None => planar_embedding(g).ok_or(Error::NotPlanar),
    }
}

/// Draws `g` planar and lays one short private edge across every edge.
///
/// Vertex `i` of `g` keeps id `i`. The crossing edge of edge `j` gets id
/// `m + j` and endpoints `n + 2j`, `n + 2j + 1`.
pub fn gen_vc(g: &Graph, rot: Option<&Rotation>) -> Result<TopologicalDrawing> {
    let rot = embedding_of(g, rot)?;
    let (n, m) = (g.n(), g.m());
    let mut vertices: Vec<Vertex> = (0..n).map(|id| Vertex { id, kind: VertexKind::Real }).collect();
    for j in 0..2 * m {
        vertices.push(Vertex { id: n + j, kind: VertexKind::Real });
    }
    for j in 0..m {
        vertices.push(Vertex { id: n + 2 * m + j, kind: VertexKind::Crossing(j, m + j) });
    }
    let mut hes = Vec::with_capacity(8 * m);
    let mut toward = std::collections::HashMap::new();
    let mut rots: Vec<Vec<usize>> = vec![Vec::new(); n + 3 * m];
    for (j, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b, x) = (n + 2 * j, n + 2 * j + 1, n + 2 * m + j);
        let h = hes.len();
        let mut pair = |p: usize, q: usize, e: usize| {
            let i = hes.len();
            hes.push(HalfEdge { origin: p, twin: i + 1, edge: e });
            hes.push(HalfEdge { origin: q, twin: i, edge: e });
            i
        };
        let ux = pair(u, x, j);
        let vx = pair(v, x, j);
        let ax = pair(a, x, m + j);
        let bx = pair(b, x, m + j);
        debug_assert_eq!(ux, h);
        toward.insert((u, v), ux);
        toward.insert((v, u), vx);
        rots[x] = vec![ux + 1, ax + 1, vx + 1, bx + 1];
        rots[a] = vec![ax];
        rots[b] = vec![bx];
    }
    for v in 0..n {
        rots[v] = rot[v].iter().map(|&w| toward[&(v, w)]).collect();
    }
    TopologicalDrawing::from_parts_side_by_side(vertices, hes, rots)
}

/// Whether removing any two vertices leaves `g` connected (graphs with at
/// most three vertices only need to be connected).
pub fn is_three_connected(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let n = g.n();
    if n <= 3 {
        return true;
    }
    for a in 0..n {
        for b in a + 1..n {
            let keep: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
            if !g.induced(&keep).is_connected() {
                return false;
            }
        }
    }
    true
}

/// Face Cover to Split Set Re-Embedding: `g` drawn with its embedding, one
/// candidate with id `n` adjacent to `targets`, and `k - 1` splits.
pub fn gen_fc(g: &Graph, targets: &[usize], k: usize, assume_unique: bool) -> Result<SsreInstance> {
    if k == 0 {
        return Err(Error::InvalidK("face cover size must be at least 1".into()));
    }
    if !assume_unique && !is_three_connected(g) {
        return Err(Error::EmbeddingNotUnique("input is not 3-connected".into()));
    }
    let rot = planar_embedding(g).ok_or(Error::NotPlanar)?;
    let ids: Vec<usize> = (0..g.n()).collect();
    let d = TopologicalDrawing::from_embedding(&ids, g.edges(), &rot)?;
    let mut adj = targets.to_vec();
    adj.sort_unstable();
    adj.dedup();
    if let Some(&t) = adj.iter().find(|&&t| t >= g.n()) {
        return Err(Error::UnknownVertex(t));
    }
    SsreInstance::new(d, vec![g.n()], vec![adj], k - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    VcReduction,
    FcReduction,
    RandomConvex,
    RandomPerturbed,
    RandomSsre,
}

/// Parameters of a random instance. The seed determines the output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Edge probability for the geometric kinds; target edge count factor otherwise.
    pub density: f64,
    pub seed: u64,
    /// Candidates for `RandomSsre`.
    pub s: usize,
    /// Extra candidate edges for `RandomSsre`.
    pub extra: usize,
    pub k: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GeneratorSpec { kind, n, density: 1.0, seed, s: 1, extra: 2, k: 1 }
    }
}

#[derive(Clone, Debug)]
pub enum Generated {
    Drawing(TopologicalDrawing),
    Geometric(GeometricDrawing, TopologicalDrawing),
    Ssre(SsreInstance),
}

const ATTEMPTS: usize = 200;

pub fn gen_random(spec: &GeneratorSpec) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GenKind::RandomConvex | GenKind::RandomPerturbed => {
            for _ in 0..ATTEMPTS {
                let pts = if spec.kind == GenKind::RandomConvex {
                    convex_points(spec.n, &mut rng)
                } else {
                    grid_points(spec.n, &mut rng)
                };
                let mut edges = Vec::new();
                for a in 0..spec.n {
                    for b in a + 1..spec.n {
                        if spec.density >= 1.0 || rng.gen_bool(spec.density.max(0.0)) {
                            edges.push((a, b));
                        }
                    }
                }
                let vs: Vec<(usize, Point)> = pts.into_iter().enumerate().collect();
                let geo = GeometricDrawing::straight(&vs, &edges);
                match ingest_geometric(&geo) {
                    Ok(d) => return Ok(Generated::Geometric(geo, d)),
                    Err(Error::DegenerateGeometry(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::DegenerateGeometry("no non-degenerate sample found".into()))
        }
        GenKind::VcReduction => {
            let g = random_planar(spec.n, spec.density, &mut rng);
            Ok(Generated::Drawing(gen_vc(&g, None)?))
        }
        GenKind::FcReduction => {
            for _ in 0..ATTEMPTS {
                let g = random_planar(spec.n, spec.density.max(3.0), &mut rng);
                if !is_three_connected(&g) {
                    continue;
                }
                let targets: Vec<usize> = (0..spec.n).filter(|_| rng.gen_bool(0.5)).collect();
                return Ok(Generated::Ssre(gen_fc(&g, &targets, spec.k.max(1), false)?));
            }
            Err(Error::InvalidInstance("no 3-connected sample found".into()))
        }
        GenKind::RandomSsre => Ok(Generated::Ssre(random_ssre(spec, &mut rng)?)),
    }
}

fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Distinct points on the unit circle with rational coordinates.
fn convex_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut ts: Vec<i64> = (-60..=60).collect();
    ts.shuffle(rng);
    let mut ts: Vec<i64> = ts.into_iter().take(n).collect();
    ts.sort_unstable();
    ts.into_iter()
        .map(|t| {
            let t = frac(t, 20);
            let one = frac(1, 1);
            let den = one.clone() + t.clone() * t.clone();
            ((one - t.clone() * t.clone()) / den.clone(), (frac(2, 1) * t) / den)
        })
        .collect()
}

fn grid_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut cells: Vec<(i64, i64)> = Vec::new();
    let side = (n as i64 * 3).max(6);
    while cells.len() < n {
        let c = (rng.gen_range(0..side), rng.gen_range(0..side));
        if !cells.contains(&c) {
            cells.push(c);
        }
    }
    cells
        .into_iter()
        .map(|(x, y)| {
            let jx = rng.gen_range(-40..=40);
            let jy = rng.gen_range(-40..=40);
            (frac(x * 100 + jx, 100), frac(y * 100 + jy, 100))
        })
        .collect()
}

/// Random planar graph: edges offered in random order, kept while planar,
/// until about `factor * n` edges.
pub fn random_planar(n: usize, factor: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(rng);
    let target = ((factor * n as f64) as usize).max(n.saturating_sub(1));
    let mut g = Graph::new(n);
    for (a, b) in pairs {
        if g.m() >= target {
            break;
        }
        let mut h = g.clone();
        h.add_edge(a, b);
        if is_planar(&h) {
            g = h;
        }
    }
    g
}

/// Random planar G, S sampled from it, Γ = G − S with the inherited
/// embedding, then `extra` further candidate edges into Γ.
fn random_ssre(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<SsreInstance> {
    let n = spec.n + spec.s;
    for _ in 0..ATTEMPTS {
        let g = random_planar(n, spec.density, rng);
        let rot = planar_embedding(&g).unwrap();
        let ids: Vec<usize> = (0..n).collect();
        let full = TopologicalDrawing::from_embedding(&ids, g.edges(), &rot)?;
        let mut verts: Vec<usize> = (0..n).collect();
        verts.shuffle(rng);
        let mut cand: Vec<usize> = verts[..spec.s].to_vec();
        cand.sort_unstable();
        let del = delete_vertices(&full, &cand)?;
        if !del.drawing.is_connected() || del.drawing.num_vertices() == 0 {
            continue;
        }
        let mut adjacency: Vec<Vec<usize>> = cand.iter().map(|&c| g.neighbors(c).to_vec()).collect();
        let rest: Vec<usize> = (0..n).filter(|v| !cand.contains(v)).collect();
        for _ in 0..spec.extra {
            let i = rng.gen_range(0..cand.len());
            let w = rest[rng.gen_range(0..rest.len())];
            if !adjacency[i].contains(&w) {
                adjacency[i].push(w);
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        return SsreInstance::new(del.drawing, cand, adjacency, spec.k);
    }
    Err(Error::InvalidInstance("no connected remainder found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vc_single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]);
        let d = gen_vc(&g, None).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert!(d.euler_ok());
        assert!(crate::drawing::validate(&d).is_empty());
    }

    #[test]
    fn convex_k5_has_five_crossings() {
        let mut spec = GeneratorSpec::new(GenKind::RandomConvex, 5, 7);
        spec.density = 1.0;
        match gen_random(&spec).unwrap() {
            Generated::Geometric(_, d) => assert_eq!(d.crossing_count(), 5),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn three_connectivity() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_three_connected(&k4));
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(!is_three_connected(&c4));
        assert!(matches!(gen_fc(&c4, &[0], 2, false), Err(Error::EmbeddingNotUnique(_))));
    }
}
