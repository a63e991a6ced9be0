//! Crossing-minimal re-insertion of one vertex as several copies.

use crate::drawing::{delete_edges, delete_vertices, Deletion, HalfEdge, TopologicalDrawing, Vertex, VertexKind};
use crate::error::{Error, Result};
use crate::registry::Registry;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};

/// Dual distances in the drawing without `v` from every face to every neighbour of `v`.
#[derive(Clone, Debug)]
pub struct DualDistanceTable {
    /// Neighbour ids, ascending.
    pub neighbors: Vec<usize>,
    /// Faces incident to each neighbour.
    pub face_sets: Vec<Vec<usize>>,
    /// `dist[w][f]`.
    pub dist: Vec<Vec<usize>>,
    /// `pred[w][f]`: next face on a shortest path from `f` towards the faces of `w`.
    pub pred: Vec<Vec<Option<usize>>>,
}

impl DualDistanceTable {
    pub fn num_faces(&self) -> usize {
        self.dist.first().map_or(0, Vec::len)
    }

    pub fn get(&self, f: usize, w: usize) -> usize {
        self.dist[w][f]
    }

    /// Cost of a face set: every neighbour takes its closest face.
    pub fn cost(&self, faces: &[usize]) -> usize {
        self.dist.iter().map(|d| faces.iter().map(|&f| d[f]).min().unwrap_or(usize::MAX)).sum()
    }

    /// Shortest face path from `f` to a face of neighbour `w`.
    pub fn path(&self, f: usize, w: usize) -> Vec<usize> {
        let mut p = vec![f];
        let mut x = f;
        while let Some(y) = self.pred[w][x] {
            p.push(y);
            x = y;
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub neighbor: usize,
    pub face: usize,
    pub copy: usize,
}

#[derive(Clone, Debug)]
pub struct SingleSplitResult {
    /// Faces of the drawing without `v` that received a copy, ascending.
    pub faces: Vec<usize>,
    pub assignment: Vec<Assignment>,
    /// New crossings created by the copies' edges.
    pub total_crossings: usize,
    pub copies: Vec<usize>,
    pub drawing: TopologicalDrawing,
    /// The drawing without `v`, whose face ids `faces` refers to.
    pub base: TopologicalDrawing,
    /// Ids of the inserted edges.
    pub star_edges: Vec<usize>,
}

/// Chooses a face set of size at most `k`.
pub trait SubsetSearch: Send + Sync {
    /// Minimum-cost set, ties broken by lexicographic order of sorted sets.
    fn search(&self, table: &DualDistanceTable, k: usize) -> (Vec<usize>, usize);
}

pub struct Exhaustive;

/// Exhaustive order with a lower bound that cuts subtrees unable to win.
pub struct Pruned;

fn dfs(t: &DualDistanceTable, k: usize, bound: bool, suffix: &[Vec<usize>]) -> (Vec<usize>, usize) {
    struct St<'a> {
        t: &'a DualDistanceTable,
        k: usize,
        bound: bool,
        suffix: &'a [Vec<usize>],
        best: Option<(Vec<usize>, usize)>,
    }
    fn go(s: &mut St, cur: &mut Vec<usize>, mins: &[usize], next: usize) {
        let nf = s.t.num_faces();
        for f in next..nf {
            let m2: Vec<usize> = mins.iter().zip(&s.t.dist).map(|(&a, d)| a.min(d[f])).collect();
            cur.push(f);
            let c: usize = m2.iter().sum();
            if s.best.as_ref().map_or(true, |b| c < b.1) {
                s.best = Some((cur.clone(), c));
            }
            if cur.len() < s.k && f + 1 < nf {
                let lb: usize = if s.bound {
                    m2.iter().zip(s.suffix).map(|(&a, suf)| a.min(suf[f + 1])).sum()
                } else {
                    0
                };
                if !s.bound || lb < s.best.as_ref().unwrap().1 {
                    go(s, cur, &m2, f + 1);
                }
            }
            cur.pop();
        }
    }
    let mut s = St { t, k, bound, suffix, best: None };
    let start = vec![usize::MAX; t.dist.len()];
    go(&mut s, &mut Vec::new(), &start, 0);
    s.best.unwrap_or((Vec::new(), 0))
}

impl SubsetSearch for Exhaustive {
    fn search(&self, table: &DualDistanceTable, k: usize) -> (Vec<usize>, usize) {
        dfs(table, k, false, &[])
    }
}

impl SubsetSearch for Pruned {
    fn search(&self, table: &DualDistanceTable, k: usize) -> (Vec<usize>, usize) {
        let nf = table.num_faces();
        // suffix[w][i] = min over faces >= i
        let suffix: Vec<Vec<usize>> = table
            .dist
            .iter()
            .map(|d| {
                let mut s = vec![usize::MAX; nf + 1];
                for f in (0..nf).rev() {
                    s[f] = s[f + 1].min(d[f]);
                }
                s
            })
            .collect();
        dfs(table, k, true, &suffix)
    }
}

pub fn searches() -> Registry<dyn SubsetSearch> {
    let mut r: Registry<dyn SubsetSearch> = Registry::new("singlesplit search");
    r.register("exhaustive", Box::new(Exhaustive)).register("pruned", Box::new(Pruned));
    r
}

fn table_for(d: &Deletion, nbrs: &[usize]) -> DualDistanceTable {
    let nd = &d.drawing;
    let nf = nd.num_faces();
    let adj = crate::drawing::dual_adjacency(nd);
    let mut ids: Vec<(usize, usize)> = nbrs.iter().map(|&w| (nd.vertex(w).id, w)).collect();
    ids.sort_unstable();
    let mut t = DualDistanceTable { neighbors: Vec::new(), face_sets: Vec::new(), dist: Vec::new(), pred: Vec::new() };
    for (id, w) in ids {
        let fs = nd.faces_at(w);
        let mut dist = vec![usize::MAX; nf];
        let mut pred = vec![None; nf];
        let mut q = VecDeque::new();
        for &f in &fs {
            dist[f] = 0;
            q.push_back(f);
        }
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    pred[y] = Some(x);
                    q.push_back(y);
                }
            }
        }
        t.neighbors.push(id);
        t.face_sets.push(fs);
        t.dist.push(dist);
        t.pred.push(pred);
    }
    t
}

fn prepare(d: &TopologicalDrawing, v_id: usize) -> Result<(Deletion, Vec<usize>)> {
    let v = d.require(v_id)?;
    if !d.vertex(v).is_real() {
        return Err(Error::UnknownVertex(v_id));
    }
    let nbrs = d.neighbors_of(v);
    let del = delete_vertices(d, &[v])?;
    let mapped = nbrs.iter().map(|&w| del.vertex_map[w].unwrap()).collect();
    Ok((del, mapped))
}

pub fn dual_distances(d: &TopologicalDrawing, v_id: usize) -> Result<DualDistanceTable> {
    let (del, nbrs) = prepare(d, v_id)?;
    Ok(table_for(&del, &nbrs))
}

pub fn split_single_vertex(d: &TopologicalDrawing, v_id: usize, k: usize) -> Result<SingleSplitResult> {
    split_single_vertex_with(d, v_id, k, &Exhaustive)
}

pub fn split_single_vertex_with(
    d: &TopologicalDrawing,
    v_id: usize,
    k: usize,
    search: &dyn SubsetSearch,
) -> Result<SingleSplitResult> {
    if k < 1 {
        return Err(Error::InvalidK("k must be at least 1".into()));
    }
    let (del, nbrs) = prepare(d, v_id)?;
    let table = table_for(&del, &nbrs);
    let nd = del.drawing;
    if table.neighbors.is_empty() {
        return Ok(SingleSplitResult {
            faces: Vec::new(),
            assignment: Vec::new(),
            total_crossings: 0,
            copies: Vec::new(),
            drawing: nd.clone(),
            base: nd,
            star_edges: Vec::new(),
        });
    }
    let (set, _) = search.search(&table, k);
    let mut used: Vec<usize> = table
        .dist
        .iter()
        .map(|dw| *set.iter().min_by_key(|&&f| (dw[f], f)).unwrap())
        .collect();
    used.sort_unstable();
    used.dedup();
    Router::new(&nd, &table, &used).build()
}

struct Router<'a> {
    nd: &'a TopologicalDrawing,
    table: &'a DualDistanceTable,
    roots: &'a [usize],
    dist: Vec<usize>,
    owner: Vec<usize>,
    /// Half-edge of a non-root face whose twin lies in its parent face.
    up: Vec<Option<usize>>,
}

impl<'a> Router<'a> {
    fn new(nd: &'a TopologicalDrawing, table: &'a DualDistanceTable, roots: &'a [usize]) -> Self {
        let nf = nd.num_faces();
        let mut dist = vec![usize::MAX; nf];
        let mut owner = vec![usize::MAX; nf];
        let mut up = vec![None; nf];
        let mut q = VecDeque::new();
        for &f in roots {
            dist[f] = 0;
            owner[f] = f;
            q.push_back(f);
        }
        while let Some(x) = q.pop_front() {
            for w in &nd.faces()[x].walks {
                for &h in w {
                    let t = nd.twin(h);
                    let y = nd.face_of(t);
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        owner[y] = owner[x];
                        up[y] = Some(t);
                        q.push_back(y);
                    }
                }
            }
        }
        Router { nd, table, roots, dist, owner, up }
    }

    fn build(self) -> Result<SingleSplitResult> {
        let nd = self.nd;
        // terminal face per neighbour
        let mut term_face = Vec::new();
        let mut total = 0;
        for wi in 0..self.table.neighbors.len() {
            let g = *self.table.face_sets[wi]
                .iter()
                .min_by_key(|&&g| (self.dist[g], self.owner[g], g))
                .unwrap();
            total += self.dist[g];
            term_face.push(g);
        }
        let w_index: Vec<usize> = self.table.neighbors.iter().map(|&id| nd.index_of(id).unwrap()).collect();

        // connect the items of every face so that each face has a single walk
        let (mut vertices, mut hes, mut rot) = {
            let (v, h, r) = nd.parts();
            (v.to_vec(), h.to_vec(), r.to_vec())
        };
        let mut next_eid = hes.iter().map(|h| h.edge + 1).max().unwrap_or(0);
        let mut virtual_edges = Vec::new();
        let new_edge = |hes: &mut Vec<HalfEdge>, u: usize, v: usize, eid: usize| -> (usize, usize) {
            let h = hes.len();
            hes.push(HalfEdge { origin: u, twin: h + 1, edge: eid });
            hes.push(HalfEdge { origin: v, twin: h, edge: eid });
            (h, h + 1)
        };
        let insert_before = |rot: &mut Vec<Vec<usize>>, v: usize, h: usize, before: Option<usize>| match before {
            Some(b) => {
                let p = rot[v].iter().position(|&x| x == b).unwrap();
                rot[v].insert(p, h);
            }
            None => rot[v].push(h),
        };
        for f in nd.faces() {
            let mut items: Vec<(usize, Option<usize>)> =
                f.walks.iter().map(|w| (nd.origin(w[0]), Some(w[0]))).collect();
            items.extend(f.isolated.iter().map(|&y| (y, None)));
            if items.len() < 2 {
                continue;
            }
            let (a, a_he) = items[0];
            for &(b, b_he) in &items[1..] {
                let eid = next_eid;
                next_eid += 1;
                virtual_edges.push(eid);
                let (h, t) = new_edge(&mut hes, a, b, eid);
                insert_before(&mut rot, a, h, a_he);
                insert_before(&mut rot, b, t, b_he);
            }
        }
        let joined = TopologicalDrawing::from_parts(vertices.clone(), hes.clone(), rot.clone(), None)?;
        let walk_of = |g: usize| -> Vec<usize> {
            let f = &nd.faces()[g];
            let h = f
                .walks
                .first()
                .map(|w| w[0])
                .or_else(|| f.isolated.first().and_then(|&y| joined.rotation(y).first().copied()));
            match h {
                Some(h) => joined.faces()[joined.face_of(h)].walks[0].clone(),
                None => Vec::new(),
            }
        };
        // active faces and children
        let nf = nd.num_faces();
        let mut active = vec![false; nf];
        for &g in &term_face {
            let mut x = g;
            while !active[x] {
                active[x] = true;
                match self.up[x] {
                    Some(h) => x = nd.face_of(nd.twin(h)),
                    None => break,
                }
            }
        }
        let mut child_at: HashMap<usize, usize> = HashMap::new();
        for y in 0..nf {
            if active[y] {
                if let Some(h) = self.up[y] {
                    child_at.insert(nd.twin(h), y);
                }
            }
        }
        // leaf order per face, computed children first
        let mut order: Vec<Vec<usize>> = vec![Vec::new(); nf];
        let mut corner: Vec<Option<usize>> = vec![None; w_index.len()];
        let mut by_depth: Vec<usize> = (0..nf).filter(|&f| active[f]).collect();
        by_depth.sort_by_key(|&f| std::cmp::Reverse(self.dist[f]));
        for &g in &by_depth {
            let walk = walk_of(g);
            let mut seq = Vec::new();
            if walk.is_empty() {
                seq.extend((0..w_index.len()).filter(|&wi| term_face[wi] == g));
            } else {
                let start = match self.up[g] {
                    Some(h) => walk.iter().position(|&x| x == h).unwrap() + 1,
                    None => 0,
                };
                let mut claimed = vec![false; w_index.len()];
                for i in 0..walk.len() {
                    let x = walk[(start + i) % walk.len()];
                    let o = joined.origin(x);
                    for wi in 0..w_index.len() {
                        if term_face[wi] == g && w_index[wi] == o && !claimed[wi] {
                            claimed[wi] = true;
                            corner[wi] = Some(x);
                            seq.push(wi);
                        }
                    }
                    if Some(x) == self.up[g] {
                        continue;
                    }
                    if let Some(&y) = child_at.get(&x) {
                        seq.extend(order[y].iter().copied());
                    }
                }
            }
            order[g] = seq;
        }
        // copies
        let mut next_id = vertices.iter().map(|v| v.id + 1).max().unwrap_or(0);
        let mut copy_of_root = HashMap::new();
        let mut copies = Vec::new();
        for &f in self.roots {
            let c = vertices.len();
            vertices.push(Vertex { id: next_id, kind: VertexKind::Real });
            rot.push(Vec::new());
            copies.push(next_id);
            copy_of_root.insert(f, c);
            next_id += 1;
        }
        let star_eid: Vec<usize> = (0..w_index.len()).map(|i| next_eid + i).collect();
        // crossings: (face, neighbour) -> vertex, and the side half-edge slots
        let mut crossing_at: HashMap<(usize, usize), usize> = HashMap::new();
        let mut sorted_faces: Vec<usize> = (0..nf).filter(|&f| active[f] && self.up[f].is_some()).collect();
        sorted_faces.sort_unstable();
        // rotation slots at crossing vertices: [fwd, parent side, back, child side]
        let mut slots: HashMap<usize, [usize; 4]> = HashMap::new();
        for &y in &sorted_faces {
            let s = self.up[y].unwrap();
            let seq = &order[y];
            let m = seq.len();
            let t = hes[s].twin;
            let eid = hes[s].edge;
            let mut xs = Vec::with_capacity(m);
            for j in 0..m {
                let wi = seq[m - 1 - j];
                let x = vertices.len();
                vertices.push(Vertex { id: next_id, kind: VertexKind::Crossing(eid, star_eid[wi]) });
                next_id += 1;
                rot.push(Vec::new());
                crossing_at.insert((y, wi), x);
                xs.push(x);
            }
            // chain a, x_1..x_m, b: first piece keeps s, last piece keeps t
            let mut prev_fwd = s;
            for &x in &xs {
                let back = hes.len();
                hes.push(HalfEdge { origin: x, twin: prev_fwd, edge: eid });
                hes[prev_fwd].twin = back;
                let fwd = hes.len();
                hes.push(HalfEdge { origin: x, twin: usize::MAX, edge: eid });
                slots.insert(x, [fwd, usize::MAX, back, usize::MAX]);
                prev_fwd = fwd;
            }
            hes[prev_fwd].twin = t;
            hes[t].twin = prev_fwd;
        }
        // star edges
        let mut star_at_copy: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for wi in 0..w_index.len() {
            let g = term_face[wi];
            let mut faces_down = Vec::new();
            let mut x = g;
            while let Some(h) = self.up[x] {
                faces_down.push(x);
                x = nd.face_of(nd.twin(h));
            }
            faces_down.reverse();
            let root = x;
            let c = copy_of_root[&root];
            let mut nodes = vec![c];
            nodes.extend(faces_down.iter().map(|&y| crossing_at[&(y, wi)]));
            nodes.push(w_index[wi]);
            for p in 0..nodes.len() - 1 {
                let (u, v) = (nodes[p], nodes[p + 1]);
                let h = hes.len();
                hes.push(HalfEdge { origin: u, twin: h + 1, edge: star_eid[wi] });
                hes.push(HalfEdge { origin: v, twin: h, edge: star_eid[wi] });
                if p == 0 {
                    star_at_copy.entry(c).or_default().push((wi, h));
                } else {
                    slots.get_mut(&u).unwrap()[3] = h;
                }
                if p + 2 == nodes.len() {
                    let w = v;
                    match corner[wi] {
                        Some(b) => {
                            let pos = rot[w].iter().position(|&x| x == b).unwrap();
                            rot[w].insert(pos, h + 1);
                        }
                        None => rot[w].push(h + 1),
                    }
                } else {
                    slots.get_mut(&v).unwrap()[1] = h + 1;
                }
            }
        }
        for (x, s) in slots {
            rot[x] = s.to_vec();
        }
        for (&f, &c) in &copy_of_root {
            let pos: HashMap<usize, usize> = order[f].iter().enumerate().map(|(i, &wi)| (wi, i)).collect();
            let mut list = star_at_copy.remove(&c).unwrap_or_default();
            list.sort_by_key(|&(wi, _)| std::cmp::Reverse(pos[&wi]));
            rot[c] = list.into_iter().map(|(_, h)| h).collect();
        }
        let full = TopologicalDrawing::from_parts(vertices, hes, rot, None)?;
        let drawing = delete_edges(&full, &virtual_edges)?.drawing;
        let assignment = (0..w_index.len())
            .map(|wi| Assignment {
                neighbor: self.table.neighbors[wi],
                face: self.owner[term_face[wi]],
                copy: drawing.vertex(copy_of_root[&self.owner[term_face[wi]]]).id,
            })
            .collect();
        Ok(SingleSplitResult {
            faces: self.roots.to_vec(),
            assignment,
            total_crossings: total,
            copies,
            drawing,
            base: nd.clone(),
            star_edges: star_eid,
        })
    }
}
