//! Topological drawings stored as planarizations: a rotation system over
//! real and crossing vertices, with face labels for the sphere arrangement.

mod geometry;
mod ops;
mod validate;

pub use geometry::{format_rat, ingest_geometric, parse_decimal, point, rat, GeomEdge, GeometricDrawing, Point, Rat};
pub use ops::{delete_edges, delete_vertices, dual_adjacency, face_path_graph, Deletion, FacePathGraph};
pub use validate::{validate, ValidationReport, Violation};

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Real,
    /// Subdivides the two original edges with these ids.
    Crossing(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
}

impl Vertex {
    pub fn is_real(&self) -> bool {
        self.kind == VertexKind::Real
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    /// Id of the original edge this segment belongs to.
    pub edge: usize,
}

/// A face of the sphere arrangement. Faces of connected drawings have one
/// walk; a face touching several components has one walk per component,
/// and an isolated vertex contributes itself instead of a walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub walks: Vec<Vec<usize>>,
    pub isolated: Vec<usize>,
}

impl Face {
    /// Vertex occurrences along all boundary walks (origins of the half-edges).
    pub fn occurrences<'a>(&'a self, d: &'a TopologicalDrawing) -> impl Iterator<Item = usize> + 'a {
        self.walks
            .iter()
            .flat_map(move |w| w.iter().map(move |&h| d.half_edges[h].origin))
            .chain(self.isolated.iter().copied())
    }

    /// Distinct vertex indices on the boundary, sorted.
    pub fn vertex_set(&self, d: &TopologicalDrawing) -> Vec<usize> {
        let mut v: Vec<usize> = self.occurrences(d).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Real vertices on the boundary with multiplicity.
    pub fn incident_real_vertices(&self, d: &TopologicalDrawing) -> Vec<usize> {
        self.occurrences(d).filter(|&v| d.vertices[v].is_real()).collect()
    }
}

/// Endpoints and segments of one original edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OriginalEdge {
    pub id: usize,
    pub ends: (usize, usize),
    /// Half-edges from `ends.0` to `ends.1`, in order.
    pub path: Vec<usize>,
    /// Crossing vertices in order along the edge.
    pub crossings: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TopologicalDrawing {
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    rot: Vec<Vec<usize>>,
    pos: Vec<usize>,
    face_of: Vec<usize>,
    iso_face: Vec<Option<usize>>,
    faces: Vec<Face>,
    index: HashMap<usize, usize>,
    /// Face that contained the unbounded region, when the drawing came from geometry.
    pub outer_face: Option<usize>,
}

impl PartialEq for TopologicalDrawing {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.half_edges == other.half_edges
            && self.rot == other.rot
            && self.face_of == other.face_of
            && self.iso_face == other.iso_face
    }
}

impl Eq for TopologicalDrawing {}

/// Face labels for drawings whose components do not determine the arrangement.
#[derive(Clone, Debug, Default)]
pub struct FaceLabels {
    pub half_edge: Vec<Option<usize>>,
    pub isolated: Vec<Option<usize>>,
}

impl TopologicalDrawing {
    /// Builds a drawing from raw parts. Checks the rotation system and face
    /// labels; simplicity is left to [`validate`].
    pub fn from_parts(
        vertices: Vec<Vertex>,
        half_edges: Vec<HalfEdge>,
        rot: Vec<Vec<usize>>,
        labels: Option<FaceLabels>,
    ) -> Result<Self> {
        let mut d = Self::unlabeled(vertices, half_edges, rot)?;
        d.assign_faces(labels)?;
        Ok(d)
    }

    /// Like [`from_parts`](Self::from_parts), but components are placed side
    /// by side in one common face instead of reading labels.
    pub fn from_parts_side_by_side(
        vertices: Vec<Vertex>,
        half_edges: Vec<HalfEdge>,
        rot: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut d = Self::unlabeled(vertices, half_edges, rot)?;
        let walks = d.raw_walks()?;
        let (comp, nc) = d.components();
        let mut seen = vec![false; nc];
        let mut labels = FaceLabels {
            half_edge: vec![None; d.half_edges.len()],
            isolated: vec![None; d.vertices.len()],
        };
        let mut fresh = 1;
        for w in &walks {
            let c = comp[d.half_edges[w[0]].origin];
            let lab = if seen[c] {
                fresh += 1;
                fresh
            } else {
                seen[c] = true;
                0
            };
            for &h in w {
                labels.half_edge[h] = Some(lab);
            }
        }
        for v in 0..d.vertices.len() {
            if d.rot[v].is_empty() {
                labels.isolated[v] = Some(0);
            }
        }
        d.assign_faces(Some(labels))?;
        Ok(d)
    }

    fn unlabeled(vertices: Vec<Vertex>, half_edges: Vec<HalfEdge>, rot: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let m = half_edges.len();
        if rot.len() != n {
            return Err(Error::InvalidRotationSystem("one rotation per vertex required".into()));
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(Error::InvalidRotationSystem(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut pos = vec![usize::MAX; m];
        for (v, r) in rot.iter().enumerate() {
            for (i, &h) in r.iter().enumerate() {
                if h >= m {
                    return Err(Error::InvalidRotationSystem(format!("unknown half-edge {h}")));
                }
                if pos[h] != usize::MAX {
                    return Err(Error::InvalidRotationSystem(format!("half-edge {h} listed twice")));
                }
                if half_edges[h].origin != v {
                    return Err(Error::InvalidRotationSystem(format!("half-edge {h} has wrong origin")));
                }
                pos[h] = i;
            }
        }
        for (h, he) in half_edges.iter().enumerate() {
            if pos[h] == usize::MAX {
                return Err(Error::InvalidRotationSystem(format!("half-edge {h} not in any rotation")));
            }
            let t = he.twin;
            if t >= m || t == h || half_edges[t].twin != h {
                return Err(Error::InvalidRotationSystem(format!("half-edge {h} has an inconsistent twin")));
            }
            if half_edges[t].edge != he.edge {
                return Err(Error::InvalidRotationSystem(format!("twins {h},{t} disagree on edge id")));
            }
        }
        Ok(TopologicalDrawing {
            vertices,
            half_edges,
            rot,
            pos,
            face_of: vec![usize::MAX; m],
            iso_face: vec![None; n],
            faces: Vec::new(),
            index,
            outer_face: None,
        })
    }

    /// Real-vertex drawing of a simple graph from a clockwise neighbour rotation.
    /// `ids[v]` is the external id of vertex `v`; edge `i` of `edges` gets id `i`.
    /// Components are placed side by side in one common face.
    pub fn from_embedding(ids: &[usize], edges: &[(usize, usize)], rot: &[Vec<usize>]) -> Result<Self> {
        let vertices = ids.iter().map(|&id| Vertex { id, kind: VertexKind::Real }).collect();
        let mut half_edges = Vec::with_capacity(2 * edges.len());
        let mut out: HashMap<(usize, usize), usize> = HashMap::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            let h = half_edges.len();
            half_edges.push(HalfEdge { origin: u, twin: h + 1, edge: e });
            half_edges.push(HalfEdge { origin: v, twin: h, edge: e });
            out.insert((u, v), h);
            out.insert((v, u), h + 1);
        }
        let hrot: Vec<Vec<usize>> = rot
            .iter()
            .enumerate()
            .map(|(v, r)| r.iter().map(|&w| out[&(v, w)]).collect())
            .collect();
        Self::from_parts_side_by_side(vertices, half_edges, hrot)
    }

    fn raw_walks(&self) -> Result<Vec<Vec<usize>>> {
        let m = self.half_edges.len();
        let mut walk_of = vec![false; m];
        let mut walks: Vec<Vec<usize>> = Vec::new();
        for s in 0..m {
            if walk_of[s] {
                continue;
            }
            let mut walk = Vec::new();
            let mut h = s;
            while !walk_of[h] {
                walk_of[h] = true;
                walk.push(h);
                h = self.next(h);
            }
            if h != s {
                return Err(Error::InvalidRotationSystem("face walk does not close".into()));
            }
            walks.push(walk);
        }
        Ok(walks)
    }

    fn assign_faces(&mut self, labels: Option<FaceLabels>) -> Result<()> {
        let n = self.vertices.len();
        let walks = self.raw_walks()?;
        let isolated: Vec<usize> = (0..n).filter(|&v| self.rot[v].is_empty()).collect();
        let (comp, nc) = self.components();
        // one pseudo-walk per isolated vertex follows the real walks
        let n_items = walks.len() + isolated.len();
        let item_comp = |i: usize| -> usize {
            if i < walks.len() {
                comp[self.half_edges[walks[i][0]].origin]
            } else {
                comp[isolated[i - walks.len()]]
            }
        };
        let raw: Vec<usize> = match labels {
            Some(l) if nc > 1 || l.half_edge.iter().any(|x| x.is_some()) => {
                let mut raw = Vec::with_capacity(n_items);
                for w in &walks {
                    let mut lab = None;
                    for &h in w {
                        let x = l.half_edge.get(h).copied().flatten();
                        match (lab, x) {
                            (_, None) => {}
                            (None, Some(x)) => lab = Some(x),
                            (Some(a), Some(b)) if a != b => {
                                return Err(Error::InvalidRotationSystem(format!(
                                    "half-edges of one face walk carry face labels {a} and {b}"
                                )))
                            }
                            _ => {}
                        }
                    }
                    match lab {
                        Some(x) => raw.push(x),
                        None if nc == 1 => raw.push(usize::MAX - raw.len()),
                        None => {
                            return Err(Error::InvalidRotationSystem(
                                "disconnected drawing requires face labels on every walk".into(),
                            ))
                        }
                    }
                }
                for &v in &isolated {
                    match l.isolated.get(v).copied().flatten() {
                        Some(x) => raw.push(x),
                        None if nc == 1 => raw.push(usize::MAX - raw.len()),
                        None => {
                            return Err(Error::InvalidRotationSystem(format!(
                                "isolated vertex {} needs a face label",
                                self.vertices[v].id
                            )))
                        }
                    }
                }
                raw
            }
            _ => {
                if nc > 1 {
                    return Err(Error::InvalidRotationSystem(
                        "disconnected drawing requires face labels".into(),
                    ));
                }
                (0..n_items).collect()
            }
        };
        // canonical face ids in order of first appearance
        let mut canon: BTreeMap<usize, usize> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        for &r in &raw {
            if !canon.contains_key(&r) {
                canon.insert(r, order.len());
                order.push(r);
            }
        }
        let nf = order.len();
        let mut faces: Vec<Face> = (0..nf).map(|id| Face { id, walks: Vec::new(), isolated: Vec::new() }).collect();
        let mut face_comps: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for i in 0..n_items {
            let f = canon[&raw[i]];
            let c = item_comp(i);
            if face_comps[f].contains(&c) {
                return Err(Error::InvalidRotationSystem(format!(
                    "face label groups two walks of one component (face {f})"
                )));
            }
            face_comps[f].push(c);
            if i < walks.len() {
                for &h in &walks[i] {
                    self.face_of[h] = f;
                }
                faces[f].walks.push(walks[i].clone());
            } else {
                let v = isolated[i - walks.len()];
                self.iso_face[v] = Some(f);
                faces[f].isolated.push(v);
            }
        }
        // the component–face incidence graph must be a tree
        if nc > 1 {
            let mut g = Graph::new(nc + nf);
            let mut links = 0;
            for (f, cs) in face_comps.iter().enumerate() {
                for &c in cs {
                    g.add_edge(c, nc + f);
                    links += 1;
                }
            }
            if !g.is_connected() || links != nc + nf - 1 {
                return Err(Error::InvalidRotationSystem(
                    "face labels do not describe a sphere arrangement".into(),
                ));
            }
        }
        self.faces = faces;
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.half_edges.len()
    }

    /// Number of planarization edges (segments).
    pub fn num_segments(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn he(&self, h: usize) -> &HalfEdge {
        &self.half_edges[h]
    }

    /// Clockwise outgoing half-edges of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn index_of(&self, id: usize) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn require(&self, id: usize) -> Result<usize> {
        self.index_of(id).ok_or(Error::UnknownVertex(id))
    }

    pub fn twin(&self, h: usize) -> usize {
        self.half_edges[h].twin
    }

    pub fn origin(&self, h: usize) -> usize {
        self.half_edges[h].origin
    }

    pub fn head(&self, h: usize) -> usize {
        self.half_edges[self.half_edges[h].twin].origin
    }

    /// Position of `h` in the rotation of its origin.
    pub fn rot_pos(&self, h: usize) -> usize {
        self.pos[h]
    }

    pub fn cw_succ(&self, h: usize) -> usize {
        let r = &self.rot[self.half_edges[h].origin];
        r[(self.pos[h] + 1) % r.len()]
    }

    pub fn cw_pred(&self, h: usize) -> usize {
        let r = &self.rot[self.half_edges[h].origin];
        r[(self.pos[h] + r.len() - 1) % r.len()]
    }

    /// Next half-edge along the face walk containing `h`.
    pub fn next(&self, h: usize) -> usize {
        self.cw_succ(self.half_edges[h].twin)
    }

    /// Previous half-edge along the face walk containing `h`.
    pub fn prev(&self, h: usize) -> usize {
        self.half_edges[self.cw_pred(h)].twin
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    pub fn isolated_face(&self, v: usize) -> Option<usize> {
        self.iso_face[v]
    }

    /// Faces incident to `v`, sorted and deduplicated.
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        let mut f: Vec<usize> = match self.iso_face[v] {
            Some(f) => vec![f],
            None => self.rot[v].iter().map(|&h| self.face_of[h]).collect(),
        };
        f.sort_unstable();
        f.dedup();
        f
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.skeleton().components()
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// The planarization as a simple graph on vertex indices.
    pub fn skeleton(&self) -> Graph {
        let mut g = Graph::new(self.vertices.len());
        for he in &self.half_edges {
            g.add_edge(he.origin, self.half_edges[he.twin].origin);
        }
        g
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.is_real()).count()
    }

    pub fn real_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(move |&v| self.vertices[v].is_real())
    }

    /// Half-edge following `h` straight through a crossing vertex.
    pub fn straight_through(&self, h: usize) -> usize {
        let t = self.half_edges[h].twin;
        let r = &self.rot[self.half_edges[t].origin];
        r[(self.pos[t] + 2) % r.len()]
    }

    /// Original edges traced through crossing vertices. Edges whose trace
    /// fails (malformed crossings) are omitted; [`validate`] reports them.
    pub fn original_edges(&self) -> BTreeMap<usize, OriginalEdge> {
        let mut out = BTreeMap::new();
        let mut used = vec![false; self.half_edges.len()];
        for h0 in 0..self.half_edges.len() {
            if used[h0] || !self.vertices[self.half_edges[h0].origin].is_real() {
                continue;
            }
            let eid = self.half_edges[h0].edge;
            let mut path = vec![h0];
            let mut crossings = Vec::new();
            let mut h = h0;
            let mut ok = true;
            loop {
                let x = self.head(h);
                if self.vertices[x].is_real() {
                    break;
                }
                if self.rot[x].len() != 4 || crossings.contains(&x) || crossings.len() > self.vertices.len() {
                    ok = false;
                    break;
                }
                crossings.push(x);
                h = self.straight_through(h);
                if self.half_edges[h].edge != eid {
                    ok = false;
                    break;
                }
                path.push(h);
            }
            for &p in &path {
                used[p] = true;
                used[self.half_edges[p].twin] = true;
            }
            if ok {
                let ends = (self.half_edges[h0].origin, self.head(*path.last().unwrap()));
                out.entry(eid).or_insert(OriginalEdge { id: eid, ends, path, crossings });
            }
        }
        out
    }

    /// The drawn graph on real vertices (vertex indices of this drawing)
    /// with original edges; parallel edges collapse.
    pub fn abstract_graph(&self) -> Graph {
        let mut g = Graph::new(self.vertices.len());
        for e in self.original_edges().values() {
            g.add_edge(e.ends.0, e.ends.1);
        }
        g
    }

    /// Indices of the neighbours of real vertex `v` in the drawn graph.
    pub fn neighbors_of(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .original_edges()
            .values()
            .filter_map(|e| {
                if e.ends.0 == v {
                    Some(e.ends.1)
                } else if e.ends.1 == v {
                    Some(e.ends.0)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Euler characteristic check V − E + F = 1 + C. The empty drawing
    /// stores no face and passes trivially.
    pub fn euler_ok(&self) -> bool {
        if self.vertices.is_empty() {
            return self.half_edges.is_empty() && self.faces.is_empty();
        }
        let (_, c) = self.components();
        self.vertices.len() as i64 - self.num_segments() as i64 + self.faces.len() as i64 == 1 + c as i64
    }

    /// Face labels as currently assigned; useful when rebuilding.
    pub fn face_labels(&self) -> FaceLabels {
        FaceLabels {
            half_edge: self.face_of.iter().map(|&f| Some(f)).collect(),
            isolated: self.iso_face.clone(),
        }
    }

    /// Decomposes into raw parts.
    pub fn parts(&self) -> (&[Vertex], &[HalfEdge], &[Vec<usize>]) {
        (&self.vertices, &self.half_edges, &self.rot)
    }
}
