use super::table::{Attach, Part, PartCorner, Realizer};
use crate::drawing::{validate, FaceLabels, HalfEdge, TopologicalDrawing, Vertex, VertexKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::{embed_in_disk, planar_embedding};
use crate::ssre_prep::{ReducedInstance, SplitHypothesis, SsreInstance};
use std::collections::{BTreeMap, HashMap};

/// A re-embedding: the copies of every candidate, their neighbourhoods and a
/// crossing-free drawing containing Γ unchanged.
#[derive(Clone, Debug)]
pub struct SplitSolution {
    pub counts: Vec<usize>,
    /// Candidate position of each copy.
    pub orig: Vec<usize>,
    /// Vertex id of each copy in `drawing`.
    pub copy_ids: Vec<usize>,
    /// Neighbour ids of each copy: drawn vertices, and candidates for edges
    /// between copies.
    pub neighborhoods: Vec<Vec<usize>>,
    /// Face of Γ hosting each copy; `None` for copies drawn apart.
    pub faces: Vec<Option<usize>>,
    pub drawing: TopologicalDrawing,
}

impl SplitSolution {
    /// The solution of an instance without candidates.
    pub fn unsplit(inst: &SsreInstance) -> Self {
        SplitSolution {
            counts: Vec::new(),
            orig: Vec::new(),
            copy_ids: Vec::new(),
            neighborhoods: Vec::new(),
            faces: Vec::new(),
            drawing: inst.drawing.clone(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum GammaCorner {
    Half(usize),
    Isolated(usize),
}

fn gamma_corner(red: &ReducedInstance, part: &Part, c: PartCorner) -> GammaCorner {
    match c {
        PartCorner::Half(x) => {
            let bl = &red.bl;
            let m = red.op.num_half_edges();
            let mut y = part.to_bl_half[x];
            // a duplicate's corner lies inside the corner of the next original half-edge
            if y >= m {
                let r = bl.rotation(bl.origin(y));
                let mut i = r.iter().position(|&z| z == y).unwrap();
                while r[i] >= m {
                    i = (i + 1) % r.len();
                }
                y = r[i];
            }
            GammaCorner::Half(red.op_half_edge_origin[y])
        }
        PartCorner::Isolated(v) => GammaCorner::Isolated(red.op_vertex_origin[part.to_bl_vertex[v]]),
    }
}

/// Face walks of a rotation system, by `next(h) = cw_succ(twin(h))`.
fn walks(hes: &[HalfEdge], rot: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pos = vec![0; hes.len()];
    for r in rot {
        for (i, &h) in r.iter().enumerate() {
            pos[h] = i;
        }
    }
    let next = |h: usize| {
        let t = hes[h].twin;
        let r = &rot[hes[t].origin];
        r[(pos[t] + 1) % r.len()]
    };
    let mut seen = vec![false; hes.len()];
    let mut out = Vec::new();
    for h in 0..hes.len() {
        if seen[h] {
            continue;
        }
        let mut w = Vec::new();
        let mut x = h;
        while !seen[x] {
            seen[x] = true;
            w.push(x);
            x = next(x);
        }
        out.push(w);
    }
    out
}

struct Builder {
    verts: Vec<Vertex>,
    hes: Vec<HalfEdge>,
    rot: Vec<Vec<usize>>,
    next_edge: usize,
    cur: TopologicalDrawing,
    fresh_label: usize,
}

impl Builder {
    fn new(d: &TopologicalDrawing) -> Self {
        let (v, h, r) = d.parts();
        let next_edge = h.iter().map(|x| x.edge + 1).max().unwrap_or(0);
        Builder { verts: v.to_vec(), hes: h.to_vec(), rot: r.to_vec(), next_edge, cur: d.clone(), fresh_label: usize::MAX / 2 }
    }

    fn add_edge(&mut self, a: usize, b: usize) -> (usize, usize) {
        let h = self.hes.len();
        self.hes.push(HalfEdge { origin: a, twin: h + 1, edge: self.next_edge });
        self.hes.push(HalfEdge { origin: b, twin: h, edge: self.next_edge });
        self.next_edge += 1;
        (h, h + 1)
    }

    /// Builds the drawing of the pending parts. Walks made only of old
    /// half-edges keep their face; the first new walk listed in `host_walk`
    /// joins the face `host`, every other new walk is a face of its own.
    fn build(&mut self, host: Option<(usize, usize)>) -> Result<TopologicalDrawing> {
        let old_h = self.cur.num_half_edges();
        let old_v = self.cur.num_vertices();
        let mut labels = FaceLabels { half_edge: vec![None; self.hes.len()], isolated: vec![None; self.verts.len()] };
        let cur_labels = self.cur.face_labels();
        for w in walks(&self.hes, &self.rot) {
            let lab = if w.iter().all(|&h| h < old_h) {
                cur_labels.half_edge[w[0]].unwrap()
            } else if host.map_or(false, |(hw, _)| w.contains(&hw)) {
                host.unwrap().1
            } else {
                self.fresh_label += 1;
                self.fresh_label
            };
            for h in w {
                labels.half_edge[h] = Some(lab);
            }
        }
        for v in 0..self.verts.len() {
            if self.rot[v].is_empty() {
                labels.isolated[v] = if v < old_v { cur_labels.isolated[v] } else { host.map(|x| x.1) };
            }
        }
        TopologicalDrawing::from_parts(self.verts.clone(), self.hes.clone(), self.rot.clone(), Some(labels))
    }
}

pub(crate) fn reconstruct(
    inst: &SsreInstance,
    red: &ReducedInstance,
    parts: &[Part],
    hyp: &SplitHypothesis,
    real: &Realizer,
    adjs: &[(usize, usize)],
    atts: &[(usize, Attach)],
) -> Result<SplitSolution> {
    let gamma = &inst.drawing;
    let gap = |m: String| Error::ReconstructionGap(m);
    let nc = hyp.num_copies();
    let base_id = gamma.vertices().iter().map(|v| v.id).chain(inst.candidates.iter().copied()).max().map_or(0, |m| m + 1);
    let copy_ids: Vec<usize> = (0..nc).map(|c| base_id + c).collect();
    // attachments per host face, keyed by Γ corner
    let mut host_of_comp: HashMap<usize, usize> = HashMap::new();
    let mut by_face: BTreeMap<usize, Vec<(GammaCorner, usize, usize)>> = BTreeMap::new();
    for &(pi, a) in atts {
        let gc = gamma_corner(red, &parts[pi], a.corner);
        let face = match gc {
            GammaCorner::Half(x) => gamma.face_of(x),
            GammaCorner::Isolated(v) => gamma.isolated_face(v).ok_or_else(|| gap(format!("vertex {v} is not isolated")))?,
        };
        let k = real.comp_of[a.copy];
        if *host_of_comp.entry(k).or_insert(face) != face {
            return Err(gap(format!("component {k} attached in two faces")));
        }
        let pistil = red.op_vertex_origin[adjs[a.adj].1];
        by_face.entry(face).or_default().push((gc, a.copy, pistil));
    }
    let mut b = Builder::new(gamma);
    let mut faces: Vec<Option<usize>> = vec![None; nc];
    for (&face, list) in &by_face {
        let f = &gamma.faces()[face];
        let ring: Vec<GammaCorner> = match f.walks.first() {
            Some(w) => w.iter().map(|&h| GammaCorner::Half(h)).collect(),
            None => vec![GammaCorner::Isolated(f.isolated[0])],
        };
        let comps: Vec<usize> = {
            let mut c: Vec<usize> = list.iter().map(|x| real.comp_of[x.1]).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let copies: Vec<usize> = real.copies_of(comps.iter().fold(0, |m, &k| m | 1 << k));
        let l = ring.len();
        let local = |c: usize| l + copies.binary_search(&c).unwrap();
        let mut g = Graph::new(l + copies.len());
        for &(gc, c, _) in list {
            let i = ring.iter().position(|&r| r == gc).ok_or_else(|| gap(format!("corner off face {face}")))?;
            g.add_edge(i, local(c));
        }
        let wedge: Vec<(usize, usize)> = hyp
            .wedge
            .iter()
            .filter(|(x, y)| copies.binary_search(x).is_ok() && copies.binary_search(y).is_ok())
            .copied()
            .collect();
        for &(x, y) in &wedge {
            g.add_edge(local(x), local(y));
        }
        let emb = embed_in_disk(&g, &(0..l).collect::<Vec<_>>()).ok_or_else(|| gap(format!("face {face} not realizable")))?;
        let mut placed = None;
        for flip in [false, true] {
            let saved = (b.verts.len(), b.hes.len(), b.rot.clone(), b.next_edge);
            let mut half: HashMap<(usize, usize), usize> = HashMap::new();
            for &c in &copies {
                b.verts.push(Vertex { id: copy_ids[c], kind: VertexKind::Real });
                b.rot.push(Vec::new());
            }
            let vid = |c: usize, base: usize| base + copies.binary_search(&c).unwrap();
            let base = saved.0;
            for (i, &gc) in ring.iter().enumerate() {
                let o = match gc {
                    GammaCorner::Half(x) => gamma.origin(x),
                    GammaCorner::Isolated(v) => v,
                };
                let mut inside: Vec<usize> = emb[i].clone();
                if flip {
                    inside.reverse();
                }
                let mut new_hs = Vec::new();
                for nb in inside {
                    let c = copies[nb - l];
                    let (h, t) = b.add_edge(o, vid(c, base));
                    half.insert((nb, i), t);
                    new_hs.push(h);
                }
                match gc {
                    GammaCorner::Half(x) => {
                        let p = b.rot[o].iter().position(|&z| z == x).unwrap();
                        b.rot[o].splice(p..p, new_hs);
                    }
                    GammaCorner::Isolated(_) => b.rot[o].extend(new_hs),
                }
            }
            for &(x, y) in &wedge {
                let (h, t) = b.add_edge(vid(x, base), vid(y, base));
                half.insert((local(x), local(y)), h);
                half.insert((local(y), local(x)), t);
            }
            for j in 0..copies.len() {
                let mut r: Vec<usize> = emb[l + j].iter().map(|&nb| half[&(l + j, nb)]).collect();
                if flip {
                    r.reverse();
                }
                b.rot[base + j] = r;
            }
            match b.build(None) {
                Ok(d) if d.euler_ok() => {
                    placed = Some(d);
                    break;
                }
                _ => {
                    b.verts.truncate(saved.0);
                    b.hes.truncate(saved.1);
                    b.rot = saved.2;
                    b.next_edge = saved.3;
                }
            }
        }
        let d = placed.ok_or_else(|| gap(format!("no orientation fits face {face}")))?;
        for &c in &copies {
            faces[c] = Some(face);
        }
        b.cur = d;
    }
    // components without drawn neighbours go into one face
    let unplaced: Vec<usize> = (0..real.comp_copies.len()).filter(|k| !host_of_comp.contains_key(k)).collect();
    for k in unplaced {
        let copies = real.comp_copies[k].clone();
        let mut g = Graph::new(copies.len());
        let local = |c: usize| copies.iter().position(|&x| x == c).unwrap();
        let wedge: Vec<(usize, usize)> =
            hyp.wedge.iter().filter(|(x, y)| copies.contains(x) && copies.contains(y)).copied().collect();
        for &(x, y) in &wedge {
            g.add_edge(local(x), local(y));
        }
        let emb = planar_embedding(&g).ok_or_else(|| gap(format!("component {k} is not planar")))?;
        let base = b.verts.len();
        for &c in &copies {
            b.verts.push(Vertex { id: copy_ids[c], kind: VertexKind::Real });
            b.rot.push(Vec::new());
        }
        let mut half: HashMap<(usize, usize), usize> = HashMap::new();
        for &(x, y) in &wedge {
            let (h, t) = b.add_edge(base + local(x), base + local(y));
            half.insert((local(x), local(y)), h);
            half.insert((local(y), local(x)), t);
        }
        for j in 0..copies.len() {
            b.rot[base + j] = emb[j].iter().map(|&nb| half[&(j, nb)]).collect();
        }
        let d = if b.cur.num_vertices() == 0 {
            TopologicalDrawing::from_parts_side_by_side(b.verts.clone(), b.hes.clone(), b.rot.clone())?
        } else {
            // the walk through the first new half-edge joins face 0
            let first = if wedge.is_empty() { usize::MAX } else { b.hes.len() - 2 * wedge.len() };
            b.build(Some((first, 0)))?
        };
        b.cur = d;
    }
    let drawing = b.cur;
    if !drawing.euler_ok() {
        return Err(gap("final drawing violates Euler's formula".into()));
    }
    let mut neighborhoods = vec![Vec::new(); nc];
    for &(_, a) in atts {
        let p = red.op_vertex_origin[adjs[a.adj].1];
        neighborhoods[a.copy].push(gamma.vertex(p).id);
    }
    for &(x, y) in &hyp.wedge {
        neighborhoods[x].push(inst.candidates[hyp.orig[y]]);
        neighborhoods[y].push(inst.candidates[hyp.orig[x]]);
    }
    for n in &mut neighborhoods {
        n.sort_unstable();
    }
    Ok(SplitSolution { counts: hyp.counts.clone(), orig: hyp.orig.clone(), copy_ids, neighborhoods, faces, drawing })
}

/// Problems with a solution: drawing validity, Γ kept in place, exact
/// neighbour partition and the copy graph.
pub fn check_split_solution(inst: &SsreInstance, sol: &SplitSolution) -> Vec<String> {
    let mut out = Vec::new();
    let d = &sol.drawing;
    let report = validate(d);
    if !report.is_empty() {
        out.push(format!("drawing invalid: {:?}", report.violations));
    }
    if d.crossing_count() != 0 {
        out.push(format!("{} crossings", d.crossing_count()));
    }
    if !d.euler_ok() {
        out.push("Euler's formula fails".into());
    }
    let gamma = &inst.drawing;
    let old_edges: std::collections::HashSet<usize> = gamma.parts().1.iter().map(|h| h.edge).collect();
    for v in 0..gamma.num_vertices() {
        let id = gamma.vertex(v).id;
        let Some(w) = d.index_of(id) else {
            out.push(format!("vertex {id} missing"));
            continue;
        };
        let want: Vec<usize> = gamma.rotation(v).iter().map(|&h| gamma.he(h).edge).collect();
        let have: Vec<usize> = d.rotation(w).iter().map(|&h| d.he(h).edge).filter(|e| old_edges.contains(e)).collect();
        if !same_cycle(&want, &have) {
            out.push(format!("rotation at {id} changed"));
        }
    }
    let s = inst.s();
    if sol.counts.len() != s || sol.counts.iter().any(|&c| c < 2) {
        out.push("every candidate needs at least two copies".into());
    } else if sol.counts.iter().map(|c| c - 1).sum::<usize>() > inst.k {
        out.push("too many splits".into());
    }
    let copy_of: HashMap<usize, usize> = sol.copy_ids.iter().enumerate().map(|(c, &id)| (id, c)).collect();
    let mut union: Vec<Vec<usize>> = vec![Vec::new(); s];
    for (c, &id) in sol.copy_ids.iter().enumerate() {
        let Some(v) = d.index_of(id) else {
            out.push(format!("copy {id} missing"));
            continue;
        };
        let mut nb: Vec<usize> = d
            .neighbors_of(v)
            .iter()
            .map(|&w| {
                let wid = d.vertex(w).id;
                copy_of.get(&wid).map_or(wid, |&o| inst.candidates[sol.orig[o]])
            })
            .collect();
        nb.sort_unstable();
        if nb != sol.neighborhoods[c] {
            out.push(format!("copy {id} is drawn with neighbours {nb:?}, claimed {:?}", sol.neighborhoods[c]));
        }
        if let Some(i) = sol.orig.get(c) {
            union[*i].extend(nb);
        }
    }
    for i in 0..s {
        let mut want = inst.adjacency[i].clone();
        want.sort_unstable();
        union[i].sort_unstable();
        if union[i] != want {
            out.push(format!("copies of {} cover {:?} instead of {:?}", inst.candidates[i], union[i], want));
        }
    }
    out
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|s| (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()]))
}
