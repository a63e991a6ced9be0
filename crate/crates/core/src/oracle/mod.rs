//! Brute-force exact solvers used as ground truth.

mod ssre;

pub use ssre::{apex_realizable, oracle_ssre, OracleWitness};

use crate::drawing::{delete_vertices, TopologicalDrawing};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::{is_planar, planar_embedding};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

/// Caps beyond which an oracle refuses to answer.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_faces: usize,
    pub max_copies: usize,
    pub max_nodes: u64,
    pub timeout: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 40,
            max_faces: 64,
            max_copies: 8,
            max_nodes: 200_000_000,
            timeout: Duration::from_secs(600),
        }
    }
}

impl OracleBudget {
    pub fn with_nodes(nodes: u64) -> Self {
        OracleBudget { max_nodes: nodes, ..Self::default() }
    }
}

pub(crate) struct Meter {
    nodes: u64,
    max: u64,
    start: Instant,
    timeout: Duration,
}

impl Meter {
    pub(crate) fn new(b: &OracleBudget) -> Self {
        Meter { nodes: 0, max: b.max_nodes, start: Instant::now(), timeout: b.timeout }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max {
            return Err(Error::BudgetExceeded(format!("more than {} enumeration nodes", self.max)));
        }
        if self.nodes % 4096 == 0 && self.start.elapsed() > self.timeout {
            return Err(Error::BudgetExceeded(format!("timeout after {:?}", self.timeout)));
        }
        Ok(())
    }
}

fn cap(what: &str, have: usize, max: usize) -> Result<()> {
    if have > max {
        return Err(Error::BudgetExceeded(format!("{have} {what} exceed the cap of {max}")));
    }
    Ok(())
}

/// Whether at most `k` vertex splits make `g` planar. A split replaces a
/// vertex by two vertices whose neighbourhoods partition the old one.
pub fn oracle_splitting_number(g: &Graph, k: usize, budget: &OracleBudget) -> Result<bool> {
    cap("vertices", g.n() + k, budget.max_vertices)?;
    let mut meter = Meter::new(budget);
    let mut seen = HashSet::new();
    split_rec(g, k, &mut meter, &mut seen)
}

fn split_rec(g: &Graph, k: usize, meter: &mut Meter, seen: &mut HashSet<(usize, Vec<(usize, usize)>)>) -> Result<bool> {
    meter.tick()?;
    if is_planar(g) {
        return Ok(true);
    }
    if k == 0 {
        return Ok(false);
    }
    let mut key: Vec<(usize, usize)> = g.edges().to_vec();
    key.sort_unstable();
    if !seen.insert((k, key)) {
        return Ok(false);
    }
    for v in 0..g.n() {
        let nb = g.neighbors(v).to_vec();
        let d = nb.len();
        if d < 2 {
            continue;
        }
        // parts containing nb[0] stay on v
        for mask in 0..(1u64 << (d - 1)) {
            let stay = |i: usize| i == 0 || (mask >> (i - 1)) & 1 == 0;
            if (0..d).all(stay) {
                continue;
            }
            let mut h = Graph::new(g.n() + 1);
            for &(a, b) in g.edges() {
                if a != v && b != v {
                    h.add_edge(a, b);
                }
            }
            for (i, &w) in nb.iter().enumerate() {
                if stay(i) {
                    h.add_edge(v, w);
                } else {
                    h.add_edge(g.n(), w);
                }
            }
            if split_rec(&h, k - 1, meter, seen)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Smallest deletion set (vertex ids, sorted) of size at most `k` that removes
/// every crossing, by enumeration in order of size then lexicographically.
pub fn oracle_evd(d: &TopologicalDrawing, k: usize, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    let mut reals: Vec<(usize, usize)> = d.real_vertices().map(|v| (d.vertex(v).id, v)).collect();
    reals.sort_unstable();
    cap("vertices", reals.len(), budget.max_vertices)?;
    let mut meter = Meter::new(budget);
    for size in 0..=k.min(reals.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            meter.tick()?;
            let del: Vec<usize> = idx.iter().map(|&i| reals[i].1).collect();
            if delete_vertices(d, &del)?.drawing.crossing_count() == 0 {
                return Ok(Some(idx.iter().map(|&i| reals[i].0).collect()));
            }
            if !next_combination(&mut idx, reals.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Face-to-face distances in the dual, by BFS from every face.
fn all_face_distances(d: &TopologicalDrawing) -> Vec<Vec<usize>> {
    let nf = d.num_faces();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for h in 0..d.num_half_edges() {
        let (a, b) = (d.face_of(h), d.face_of(d.twin(h)));
        if a != b && !adj[a].contains(&b) {
            adj[a].push(b);
        }
    }
    (0..nf)
        .map(|s| {
            let mut dist = vec![usize::MAX; nf];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            dist
        })
        .collect()
}

/// Minimum number of crossings over all placements of at most `k` copies of
/// `v` in faces of the drawing without `v` and all neighbour assignments.
pub fn oracle_single_split(d: &TopologicalDrawing, v_id: usize, k: usize, budget: &OracleBudget) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidK("k must be at least 1".into()));
    }
    let v = d.require(v_id)?;
    let nbrs = d.neighbors_of(v);
    let del = delete_vertices(d, &[v])?;
    let nd = &del.drawing;
    let nf = nd.num_faces();
    cap("faces", nf, budget.max_faces)?;
    let fd = all_face_distances(nd);
    // distance from face f to neighbour w: min over faces incident to w
    let to_w: Vec<Vec<usize>> = nbrs
        .iter()
        .map(|&w| {
            let wv = del.vertex_map[w].unwrap();
            let mut inc: Vec<usize> = nd.rotation(wv).iter().map(|&h| nd.face_of(h)).collect();
            inc.extend(nd.isolated_face(wv));
            (0..nf).map(|f| inc.iter().map(|&g| fd[f][g]).min().unwrap()).collect()
        })
        .collect();
    if nbrs.is_empty() {
        return Ok(0);
    }
    let mut meter = Meter::new(budget);
    let mut best = usize::MAX;
    for size in 1..=k.min(nf) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            // every assignment of neighbours to the chosen faces
            let mut a = vec![0usize; nbrs.len()];
            loop {
                meter.tick()?;
                let c: usize = a.iter().enumerate().map(|(wi, &j)| to_w[wi][idx[j]]).sum();
                best = best.min(c);
                let mut p = 0;
                while p < a.len() && a[p] + 1 == size {
                    a[p] = 0;
                    p += 1;
                }
                if p == a.len() {
                    break;
                }
                a[p] += 1;
            }
            if !next_combination(&mut idx, nf) {
                break;
            }
        }
    }
    Ok(best)
}

/// Faces of a rotation system on a simple graph, as sorted vertex sets.
pub(crate) fn rotation_faces(rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let pos: Vec<HashMap<usize, usize>> =
        rot.iter().map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect()).collect();
    let mut seen = HashSet::new();
    let mut faces = Vec::new();
    for u in 0..rot.len() {
        if rot[u].is_empty() {
            faces.push(vec![u]);
        }
        for &w in &rot[u] {
            if seen.contains(&(u, w)) {
                continue;
            }
            let mut f = Vec::new();
            let (mut a, mut b) = (u, w);
            while seen.insert((a, b)) {
                f.push(a);
                let c = rot[b][(pos[b][&a] + 1) % rot[b].len()];
                a = b;
                b = c;
            }
            f.sort_unstable();
            f.dedup();
            faces.push(f);
        }
    }
    faces
}

/// Whether at most `k` faces of the planar embedding of `g` cover `targets`.
/// Returns the lexicographically first covering face-index set when one exists.
pub fn oracle_face_cover(
    g: &Graph,
    targets: &[usize],
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<Vec<usize>>> {
    let rot = planar_embedding(g).ok_or(Error::NotPlanar)?;
    let faces = rotation_faces(&rot);
    cap("faces", faces.len(), budget.max_faces)?;
    let mut meter = Meter::new(budget);
    if targets.is_empty() {
        return Ok(Some(Vec::new()));
    }
    for size in 1..=k.min(faces.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            meter.tick()?;
            if targets.iter().all(|t| idx.iter().any(|&i| faces[i].binary_search(t).is_ok())) {
                return Ok(Some(idx));
            }
            if !next_combination(&mut idx, faces.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// One frozen oracle result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub command: String,
    pub answer: String,
    #[serde(rename = "witness-hash")]
    pub witness_hash: String,
}

/// Hex SHA-256 of a witness rendering.
pub fn witness_hash(witness: &str) -> String {
    let digest = Sha256::digest(witness.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn read_fixtures(text: &str) -> Result<Vec<Fixture>> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
}

pub fn write_fixtures(f: &[Fixture]) -> String {
    serde_json::to_string_pretty(f).unwrap() + "\n"
}
