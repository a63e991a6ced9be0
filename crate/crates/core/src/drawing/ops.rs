use super::{FaceLabels, HalfEdge, TopologicalDrawing, Vertex, VertexKind};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Result of [`delete_vertices`] with index maps from the input drawing.
#[derive(Clone, Debug)]
pub struct Deletion {
    pub drawing: TopologicalDrawing,
    pub vertex_map: Vec<Option<usize>>,
    pub half_edge_map: Vec<Option<usize>>,
    /// New face containing each old face.
    pub face_map: Vec<Option<usize>>,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Removes the real vertices with indices `del` and all their edges.
/// Crossings on removed edges are dissolved; surviving rotations keep their order.
pub fn delete_vertices(d: &TopologicalDrawing, del: &[usize]) -> Result<Deletion> {
    delete_parts(d, del, &[])
}

/// Removes the original edges with the given ids.
pub fn delete_edges(d: &TopologicalDrawing, eids: &[usize]) -> Result<Deletion> {
    delete_parts(d, &[], eids)
}

fn delete_parts(d: &TopologicalDrawing, del: &[usize], eids: &[usize]) -> Result<Deletion> {
    let n = d.num_vertices();
    let m = d.num_half_edges();
    let mut gone = vec![false; n];
    for &v in del {
        if v >= n || !d.vertex(v).is_real() {
            return Err(Error::UnknownVertex(v));
        }
        gone[v] = true;
    }
    let max_eid = d.half_edges().iter().map(|h| h.edge + 1).max().unwrap_or(0);
    let mut edge_gone = vec![false; max_eid];
    for &e in eids {
        if e < max_eid {
            edge_gone[e] = true;
        }
    }
    if !del.is_empty() {
        for e in d.original_edges().values() {
            if gone[e.ends.0] || gone[e.ends.1] {
                edge_gone[e.id] = true;
            }
        }
    }
    // crossings lose their vertex as soon as one of their edges goes
    for (v, vert) in d.vertices().iter().enumerate() {
        if let VertexKind::Crossing(a, b) = vert.kind {
            if edge_gone.get(a).copied().unwrap_or(false) || edge_gone.get(b).copied().unwrap_or(false) {
                gone[v] = true;
            }
        }
    }
    let keep_he: Vec<bool> = (0..m)
        .map(|h| !edge_gone[d.he(h).edge] && !gone[d.origin(h)])
        .collect();
    let mut vertex_map = vec![None; n];
    let mut vertices: Vec<Vertex> = Vec::new();
    for v in 0..n {
        if !gone[v] {
            vertex_map[v] = Some(vertices.len());
            vertices.push(*d.vertex(v));
        }
    }
    let mut half_edge_map = vec![None; m];
    let mut cnt = 0;
    for h in 0..m {
        if keep_he[h] {
            half_edge_map[h] = Some(cnt);
            cnt += 1;
        }
    }
    let mut parent: Vec<usize> = (0..d.num_faces()).collect();
    for h in 0..m {
        if edge_gone[d.he(h).edge] {
            let a = find(&mut parent, d.face_of(h));
            let b = find(&mut parent, d.face_of(d.twin(h)));
            parent[a] = b;
        }
    }
    let mut hes = Vec::with_capacity(cnt);
    let mut labels = FaceLabels { half_edge: Vec::with_capacity(cnt), isolated: vec![None; vertices.len()] };
    for h in 0..m {
        if !keep_he[h] {
            continue;
        }
        let mut t = h;
        while gone[d.head(t)] {
            t = d.straight_through(t);
        }
        let he = d.he(h);
        hes.push(HalfEdge {
            origin: vertex_map[he.origin].unwrap(),
            twin: half_edge_map[d.twin(t)].unwrap(),
            edge: he.edge,
        });
        labels.half_edge.push(Some(find(&mut parent, d.face_of(h))));
    }
    let mut rot = Vec::with_capacity(vertices.len());
    for v in 0..n {
        let Some(nv) = vertex_map[v] else { continue };
        let r: Vec<usize> = d.rotation(v).iter().filter_map(|&h| half_edge_map[h]).collect();
        if r.is_empty() {
            let old = d.isolated_face(v).unwrap_or_else(|| d.face_of(d.rotation(v)[0]));
            labels.isolated[nv] = Some(find(&mut parent, old));
        }
        rot.push(r);
    }
    let iso = labels.isolated.clone();
    let hl = labels.half_edge.clone();
    let mut drawing = TopologicalDrawing::from_parts(vertices, hes, rot, Some(labels))?;
    let mut face_of_label = vec![None; d.num_faces()];
    for (h, l) in hl.iter().enumerate() {
        face_of_label[l.unwrap()] = Some(drawing.face_of(h));
    }
    for (v, l) in iso.iter().enumerate() {
        if let Some(l) = l {
            face_of_label[*l] = drawing.isolated_face(v);
        }
    }
    let face_map: Vec<Option<usize>> = (0..d.num_faces()).map(|f| face_of_label[find(&mut parent, f)]).collect();
    drawing.outer_face = d.outer_face.and_then(|f| face_map[f]);
    Ok(Deletion { drawing, vertex_map, half_edge_map, face_map })
}

/// Face adjacency across planarization segments, sorted, without loops.
pub fn dual_adjacency(d: &TopologicalDrawing) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); d.num_faces()];
    for h in 0..d.num_half_edges() {
        let (a, b) = (d.face_of(h), d.face_of(d.twin(h)));
        if a != b {
            adj[a].push(b);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    adj
}

/// Bipartite face–vertex incidence graph. Nodes `0..num_faces` are faces,
/// node `num_faces + v` is vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePathGraph {
    pub num_faces: usize,
    pub num_vertices: usize,
    pub adj: Vec<Vec<usize>>,
}

impl FacePathGraph {
    pub fn face_node(&self, f: usize) -> usize {
        f
    }

    pub fn vertex_node(&self, v: usize) -> usize {
        self.num_faces + v
    }

    pub fn num_adjacencies(&self) -> usize {
        self.adj[..self.num_faces].iter().map(Vec::len).sum()
    }

    /// BFS distances (in graph edges) from a set of nodes.
    pub fn distances(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        let mut q = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                q.push_back(s);
            }
        }
        while let Some(x) = q.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    q.push_back(y);
                }
            }
        }
        dist
    }

    /// Number of vertex-vertices on a shortest face path from `f` to each vertex.
    pub fn face_path_lengths(&self, faces: &[usize]) -> Vec<Option<usize>> {
        let dist = self.distances(faces);
        dist[self.num_faces..].iter().map(|d| d.map(|x| (x + 1) / 2)).collect()
    }
}

pub fn face_path_graph(d: &TopologicalDrawing) -> FacePathGraph {
    let nf = d.num_faces();
    let n = d.num_vertices();
    let mut adj = vec![Vec::new(); nf + n];
    for f in d.faces() {
        for v in f.vertex_set(d) {
            adj[f.id].push(nf + v);
            adj[nf + v].push(f.id);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    FacePathGraph { num_faces: nf, num_vertices: n, adj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::tests::triangle;

    #[test]
    fn delete_nothing_is_identity() {
        let d = triangle();
        let r = delete_vertices(&d, &[]).unwrap();
        assert_eq!(r.drawing, d);
    }

    #[test]
    fn delete_triangle_vertex_leaves_path() {
        let d = triangle();
        let r = delete_vertices(&d, &[0]).unwrap();
        assert_eq!(r.drawing.num_vertices(), 2);
        assert_eq!(r.drawing.num_faces(), 1);
        assert_eq!(r.face_map, vec![Some(0), Some(0)]);
        assert!(r.drawing.euler_ok());
    }

    #[test]
    fn delete_dissolves_crossing() {
        let d = crate::drawing::validate::tests_support::single_crossing();
        let r = delete_vertices(&d, &[0]).unwrap();
        let nd = &r.drawing;
        assert_eq!(nd.crossing_count(), 0);
        assert_eq!(nd.num_vertices(), 3);
        assert_eq!(nd.num_segments(), 1);
        assert!(crate::drawing::validate(nd).is_empty());
        assert_eq!(nd.original_edges()[&1].ends, (r.vertex_map[2].unwrap(), r.vertex_map[3].unwrap()));
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let d = triangle();
        assert!(matches!(delete_vertices(&d, &[7]), Err(Error::UnknownVertex(7))));
    }

    #[test]
    fn face_path_graph_of_edge_and_triangle() {
        let d = TopologicalDrawing::from_embedding(&[0, 1], &[(0, 1)], &[vec![1], vec![0]]).unwrap();
        let g = face_path_graph(&d);
        assert_eq!((g.num_faces, g.num_vertices, g.num_adjacencies()), (1, 2, 2));
        let g = face_path_graph(&triangle());
        for f in 0..2 {
            assert_eq!(g.adj[f].len(), 3);
        }
    }

    #[test]
    fn dual_of_triangle() {
        assert_eq!(dual_adjacency(&triangle()), vec![vec![1], vec![0]]);
    }
}
