//! Planarity testing and embedding by the Demoucron–Malgrange–Pertuiset
//! path-addition method, run per biconnected block.
//!
//! Rotations are clockwise neighbour lists. With the face rule
//! `next(u→w) = (w→σ_w(u))`, where `σ_w` is the clockwise successor at `w`,
//! every returned rotation system traces a sphere embedding.

use crate::graph::Graph;
use std::collections::{HashMap, HashSet, VecDeque};

/// Clockwise neighbour order for every vertex.
pub type Rotation = Vec<Vec<usize>>;

pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// A planar rotation system of `g`, or `None` if `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Rotation> {
    let n = g.n();
    if g.m() > 3 * n.saturating_sub(2).max(1) && n >= 3 {
        return None;
    }
    let mut rot: Rotation = vec![Vec::new(); n];
    for block in g.blocks() {
        let edges: Vec<(usize, usize)> = block.iter().map(|&e| g.edges()[e]).collect();
        let block_rot = embed_block(&edges)?;
        for (v, cyc) in block_rot {
            rot[v].extend(cyc);
        }
    }
    Some(rot)
}

/// Embeds a biconnected block; returns the clockwise rotation of each block vertex.
fn embed_block(edges: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some(vec![(u, vec![v]), (v, vec![u])]);
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        let (a, b) = (local[&u], local[&v]);
        adj[a].push(b);
        adj[b].push(a);
    }
    if edges.len() > 3 * n - 6 {
        return None;
    }
    let faces = dmp(&adj, edges.len(), None)?;
    Some(
        faces_to_rotation(n, &adj, &faces)
            .into_iter()
            .enumerate()
            .map(|(i, r)| (verts[i], r.into_iter().map(|w| verts[w]).collect()))
            .collect(),
    )
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Runs DMP on a biconnected graph given by local adjacency. If `start` is
/// given it is used as the initial cycle and its reversed side is forbidden.
/// Returns the oriented facial cycles.
fn dmp(adj: &[Vec<usize>], m: usize, start: Option<&[usize]>) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let cycle = match start {
        Some(c) => c.to_vec(),
        None => find_cycle(adj)?,
    };
    let mut placed_v = vec![false; n];
    let mut placed_e: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        placed_v[cycle[i]] = true;
        placed_e.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let forbidden = if start.is_some() { Some(1usize) } else { None };
    while placed_e.len() < m {
        let frags = fragments(adj, &placed_v, &placed_e);
        let mut choice: Option<(usize, usize)> = None;
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| Some(f) != forbidden)
                .filter(|&f| frag.attach.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if fallback.is_none() {
                        fallback = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, f) = choice.or(fallback)?;
        let path = fragment_path(adj, &placed_v, &frags[fi]);
        for w in path.windows(2) {
            placed_e.insert(key(w[0], w[1]));
        }
        for &v in &path {
            placed_v[v] = true;
        }
        let face = faces[f].clone();
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let inner = &path[1..path.len() - 1];
        // a .. b along the face, then back along the path
        let mut f1 = Vec::new();
        let mut k = i;
        loop {
            f1.push(face[k]);
            if k == j {
                break;
            }
            k = (k + 1) % len;
        }
        f1.extend(inner.iter().rev());
        // b .. a along the face, then forward along the path
        let mut f2 = Vec::new();
        let mut k = j;
        loop {
            f2.push(face[k]);
            if k == i {
                break;
            }
            k = (k + 1) % len;
        }
        f2.extend(inner.iter());
        faces[f] = f1;
        faces.push(f2);
    }
    Some(faces)
}

struct Fragment {
    attach: Vec<usize>,
    /// Unplaced vertices; empty for a chord.
    body: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[Vec<usize>], placed_v: &[bool], placed_e: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut frags = Vec::new();
    for u in 0..n {
        if !placed_v[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && placed_v[v] && !placed_e.contains(&key(u, v)) {
                frags.push(Fragment { attach: vec![u, v], body: Vec::new(), chord: Some((u, v)) });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if placed_v[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut body = vec![s];
        let mut attach = Vec::new();
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if placed_v[w] {
                    if !attach.contains(&w) {
                        attach.push(w);
                    }
                } else if !seen[w] {
                    seen[w] = true;
                    body.push(w);
                    queue.push_back(w);
                }
            }
        }
        attach.sort_unstable();
        frags.push(Fragment { attach, body, chord: None });
    }
    frags
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], placed_v: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let start = frag.attach[0];
    let in_body: HashSet<usize> = frag.body.iter().copied().collect();
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &w in &adj[start] {
        if in_body.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if placed_v[w] && w != start {
                let mut path = vec![w, v];
                let mut x = v;
                while let Some(&p) = prev.get(&x) {
                    path.push(p);
                    if p == start {
                        break;
                    }
                    x = p;
                }
                path.reverse();
                return path;
            }
            if in_body.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.1 < adj[v].len() {
            let w = adj[v][top.1];
            top.1 += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cyc = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cyc.push(x);
                }
                return Some(cyc);
            }
        } else {
            stack.pop();
        }
    }
    None
}

fn faces_to_rotation(n: usize, adj: &[Vec<usize>], faces: &[Vec<usize>]) -> Rotation {
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for face in faces {
        let len = face.len();
        for i in 0..len {
            let (u, w, z) = (face[i], face[(i + 1) % len], face[(i + 2) % len]);
            succ[w].insert(u, z);
        }
    }
    (0..n)
        .map(|w| {
            let mut order = Vec::with_capacity(adj[w].len());
            let mut x = adj[w][0];
            for _ in 0..adj[w].len() {
                order.push(x);
                x = succ[w][&x];
            }
            order
        })
        .collect()
}

/// Number of faces traced by a rotation system on a simple graph.
pub fn count_faces(rot: &Rotation) -> usize {
    let mut pos: Vec<HashMap<usize, usize>> = Vec::with_capacity(rot.len());
    for r in rot {
        pos.push(r.iter().enumerate().map(|(i, &w)| (w, i)).collect());
    }
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = 0;
    for u in 0..rot.len() {
        for &w in &rot[u] {
            if seen.contains(&(u, w)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, w);
            while seen.insert((a, b)) {
                let i = pos[b][&a];
                let c = rot[b][(i + 1) % rot[b].len()];
                a = b;
                b = c;
            }
        }
    }
    faces
}

/// Checks that a rotation system is a sphere embedding of `g`:
/// V − E + F = 1 + C, counting isolated vertices as components with one face.
pub fn is_sphere_embedding(g: &Graph, rot: &Rotation) -> bool {
    if rot.len() != g.n() {
        return false;
    }
    for v in 0..g.n() {
        let mut a: Vec<usize> = rot[v].clone();
        let mut b: Vec<usize> = g.neighbors(v).to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
    }
    let (_, c) = g.components();
    let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
    let f = count_faces(rot) + isolated;
    g.n() as i64 - g.m() as i64 + f as i64 == 2 * c as i64
}

/// Embeds `g` so that `cycle` bounds an empty face. `g` must not contain the
/// cycle edges themselves. The returned rotation is oriented so that the walk
/// `cycle[0] → cycle[1] → …` runs along the faces on the non-empty side.
/// Vertices hanging off a single cycle vertex are placed on the non-empty side.
pub fn embed_in_disk(g: &Graph, cycle: &[usize]) -> Option<Rotation> {
    let l = cycle.len();
    assert!(l >= 1, "cycle must be non-empty");
    let n = g.n();
    let mut aux = g.clone();
    let mut mids = Vec::with_capacity(l);
    let mut ring = Vec::with_capacity(3 * l);
    for i in 0..l {
        let a = aux.add_vertex();
        let b = aux.add_vertex();
        mids.push((a, b));
        ring.extend([cycle[i], a, b]);
    }
    for i in 0..ring.len() {
        aux.add_edge(ring[i], ring[(i + 1) % ring.len()]);
    }
    let apex = aux.add_vertex();
    for &r in &ring {
        aux.add_edge(apex, r);
    }
    let mut rot = planar_embedding(&aux)?;
    // the walk c0 → a0 → b0 must continue on the side away from the apex
    let (a0, b0) = mids[0];
    let at = rot[a0].iter().position(|&x| x == cycle[0]).unwrap();
    if rot[a0][(at + 1) % 3] != b0 {
        for r in rot.iter_mut() {
            r.reverse();
        }
    }
    let mut out: Rotation = vec![Vec::new(); n];
    for v in 0..n {
        out[v] = rot[v].iter().copied().filter(|&w| w < n).collect();
    }
    for (i, &c) in cycle.iter().enumerate() {
        // clockwise at c: ... b_{i-1}, [inside], a_i, [apex side] ...
        // rotate so the list starts right after b_{i-1}
        let prev_b = mids[(i + l - 1) % l].1;
        let next_a = mids[i].0;
        let r = &rot[c];
        let start = r.iter().position(|&x| x == prev_b).unwrap();
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        let mut passed = false;
        for k in 1..r.len() {
            let x = r[(start + k) % r.len()];
            if x == next_a {
                passed = true;
                continue;
            }
            if x >= n {
                continue;
            }
            if passed {
                outside.push(x);
            } else {
                inside.push(x);
            }
        }
        inside.extend(outside);
        out[c] = inside;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new(6);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    #[test]
    fn kuratowski_graphs_are_rejected() {
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&k33()));
        assert!(!is_planar(&petersen()));
    }

    #[test]
    fn k4_and_cube_embed() {
        for g in [complete(4), crate::graph::Graph::from_edges(8, &[
            (0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
            (0, 4), (1, 5), (2, 6), (3, 7),
        ])] {
            let rot = planar_embedding(&g).expect("planar");
            assert!(is_sphere_embedding(&g, &rot));
        }
    }

    #[test]
    fn k5_minus_edge_embeds() {
        let mut g = Graph::new(5);
        for u in 0..5 {
            for v in u + 1..5 {
                if (u, v) != (0, 1) {
                    g.add_edge(u, v);
                }
            }
        }
        let rot = planar_embedding(&g).unwrap();
        assert!(is_sphere_embedding(&g, &rot));
        assert_eq!(count_faces(&rot), 6);
    }

    #[test]
    fn disk_embedding_keeps_pendants_inside() {
        // cycle 0,1,2 with a vertex 3 joined to 0 and 1, and 4 hanging off 2
        let g = Graph::from_edges(5, &[(3, 0), (3, 1), (4, 2)]);
        let rot = embed_in_disk(&g, &[0, 1, 2]).unwrap();
        assert_eq!(rot[2], vec![4]);
        assert_eq!(rot[3].len(), 2);
    }

    #[test]
    fn disk_embedding_rejects_interleaving() {
        // chords 0-2 and 1-3 through separate inner vertices cannot share a disk
        let g = Graph::from_edges(6, &[(4, 0), (4, 2), (5, 1), (5, 3)]);
        assert!(embed_in_disk(&g, &[0, 1, 2, 3]).is_none());
        let ok = Graph::from_edges(6, &[(4, 0), (4, 1), (5, 2), (5, 3)]);
        assert!(embed_in_disk(&ok, &[0, 1, 2, 3]).is_some());
    }
}
