//! Sphere-cut decompositions of connected bridgeless plane drawings.
//!
//! Nooses live in the radial graph: its nodes are vertices and faces, and
//! every corner (a vertex occurrence on a face walk) is an edge. A corner is
//! named by the half-edge leaving it, so corner `h` joins `origin(h)` and
//! `face_of(h)`. Every drawing edge is a quadrilateral of four corners.

use crate::drawing::TopologicalDrawing;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

/// Closed curve alternating vertex, face, vertex, ... given as
/// `(vertex, face)` pairs: the curve runs from `v_i` through `f_i` to `v_{i+1}`.
pub type Noose = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereCutDecomposition {
    /// Unrooted tree adjacency.
    pub tree: Vec<Vec<usize>>,
    /// Edge (smaller half-edge of the pair) of every leaf.
    pub leaf_edge: Vec<Option<usize>>,
    /// Tree edges `(a, b)`.
    pub edges: Vec<(usize, usize)>,
    /// Mid set (vertex indices, sorted) per tree edge.
    pub mid: Vec<Vec<usize>>,
    pub noose: Vec<Noose>,
}

impl SphereCutDecomposition {
    pub fn width(&self) -> usize {
        self.mid.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Drawing edges on the `b` side of tree edge `t`.
    pub fn side(&self, t: usize) -> Vec<usize> {
        let (a, b) = self.edges[t];
        let mut out = Vec::new();
        let mut stack = vec![(b, a)];
        while let Some((x, from)) = stack.pop() {
            if let Some(e) = self.leaf_edge[x] {
                out.push(e);
            }
            for &y in &self.tree[x] {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

struct Radial<'a> {
    d: &'a TopologicalDrawing,
    /// Representative half-edge per edge.
    reps: Vec<usize>,
    /// Edge index of every half-edge.
    eidx: Vec<usize>,
}

impl<'a> Radial<'a> {
    fn new(d: &'a TopologicalDrawing) -> Self {
        let mut reps = Vec::new();
        let mut eidx = vec![0; d.num_half_edges()];
        for h in 0..d.num_half_edges() {
            let t = d.twin(h);
            if h < t {
                eidx[h] = reps.len();
                eidx[t] = reps.len();
                reps.push(h);
            }
        }
        Radial { d, reps, eidx }
    }

    fn n(&self) -> usize {
        self.d.num_vertices()
    }

    fn ends(&self, c: usize) -> (usize, usize) {
        (self.d.origin(c), self.n() + self.d.face_of(c))
    }

    /// The two edges whose quadrilaterals share corner `c`.
    fn quads(&self, c: usize) -> (usize, usize) {
        (self.eidx[c], self.eidx[self.d.prev(c)])
    }

    fn corners_at(&self, node: usize) -> Vec<usize> {
        if node < self.n() {
            self.d.rotation(node).to_vec()
        } else {
            self.d.faces()[node - self.n()].walks.iter().flatten().copied().collect()
        }
    }

    /// The noose bounding `region` (flags per edge index), if it is one simple cycle.
    fn boundary(&self, region: &[bool]) -> Option<Noose> {
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); self.n() + self.d.num_faces()];
        let mut count = 0;
        for c in 0..self.d.num_half_edges() {
            let (a, b) = self.quads(c);
            if region[a] != region[b] {
                let (x, y) = self.ends(c);
                inc[x].push(c);
                inc[y].push(c);
                count += 1;
            }
        }
        if inc.iter().any(|l| !l.is_empty() && l.len() != 2) {
            return None;
        }
        let start = (0..self.n()).find(|&v| !inc[v].is_empty())?;
        let mut out = Vec::new();
        let mut node = start;
        let mut c = inc[start][0].min(inc[start][1]);
        loop {
            let (v, f) = self.ends(c);
            debug_assert_eq!(v, node);
            let c2 = if inc[f][0] == c { inc[f][1] } else { inc[f][0] };
            out.push((v, f - self.n()));
            let (w, _) = self.ends(c2);
            node = w;
            if node == start {
                break;
            }
            c = if inc[w][0] == c2 { inc[w][1] } else { inc[w][0] };
        }
        (2 * out.len() == count).then_some(out)
    }

    /// Splits a region bounded by a simple noose along the best chord.
    fn split(&self, region: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
        let m = self.reps.len();
        let mut inr = vec![false; m];
        for &e in region {
            inr[e] = true;
        }
        let bnd = self.boundary(&inr)?;
        let mut on_b = vec![false; self.n() + self.d.num_faces()];
        for &(v, f) in &bnd {
            on_b[v] = true;
            on_b[self.n() + f] = true;
        }
        let interior = |c: usize| {
            let (a, b) = self.quads(c);
            inr[a] && inr[b]
        };
        let mut starts: Vec<usize> = (0..on_b.len()).filter(|&x| on_b[x]).collect();
        starts.sort_unstable();
        type Score = (bool, usize, usize, usize, usize, usize);
        let mut best: Option<(Score, Vec<usize>, Vec<usize>)> = None;
        for &x in &starts {
            // BFS through interior nodes; boundary nodes end a chord
            let mut pred: Vec<Option<(usize, usize)>> = vec![None; on_b.len()];
            let mut seen = vec![false; on_b.len()];
            seen[x] = true;
            let mut q = VecDeque::from([x]);
            let mut ends = Vec::new();
            while let Some(u) = q.pop_front() {
                for c in self.corners_at(u) {
                    if !interior(c) {
                        continue;
                    }
                    let (a, b) = self.ends(c);
                    let w = if a == u { b } else { a };
                    if seen[w] {
                        continue;
                    }
                    seen[w] = true;
                    pred[w] = Some((u, c));
                    if on_b[w] {
                        ends.push(w);
                    } else {
                        q.push_back(w);
                    }
                }
            }
            for y in ends {
                if y < x {
                    continue;
                }
                let mut chord = Vec::new();
                let mut z = y;
                while z != x {
                    let (p, c) = pred[z].unwrap();
                    chord.push(c);
                    z = p;
                }
                let Some((a, b, ma, mb)) = self.cut(region, &inr, &chord) else { continue };
                let small = a.len().min(b.len());
                let balanced = 3 * a.len().max(b.len()) <= 2 * region.len() || region.len() <= 3;
                let score = (!balanced, ma.max(mb), region.len() - small, chord.len(), x, y);
                if best.as_ref().map_or(true, |(s, _, _)| score < *s) {
                    best = Some((score, a, b));
                }
            }
        }
        best.map(|(_, a, b)| (a, b))
    }

    /// Sides of `region` after removing the chord corners, with their mid sizes.
    fn cut(&self, region: &[usize], inr: &[bool], chord: &[usize]) -> Option<(Vec<usize>, Vec<usize>, usize, usize)> {
        let m = self.reps.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in 0..self.d.num_half_edges() {
            if chord.contains(&c) {
                continue;
            }
            let (a, b) = self.quads(c);
            if inr[a] && inr[b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let r0 = find(&mut parent, region[0]);
        let (mut sa, mut sb) = (Vec::new(), Vec::new());
        let mut rb = None;
        for &e in region {
            let r = find(&mut parent, e);
            if r == r0 {
                sa.push(e);
            } else if rb.map_or(true, |x| x == r) {
                rb = Some(r);
                sb.push(e);
            } else {
                return None;
            }
        }
        if sb.is_empty() {
            return None;
        }
        let flags = |s: &[usize]| {
            let mut f = vec![false; m];
            for &e in s {
                f[e] = true;
            }
            f
        };
        let na = self.boundary(&flags(&sa))?;
        let nb = self.boundary(&flags(&sb))?;
        Some((sa, sb, na.len(), nb.len()))
    }
}

/// Vertices incident to edges on both sides of a bipartition of the edges.
fn mid_set(d: &TopologicalDrawing, side: &[bool], eidx: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for v in 0..d.num_vertices() {
        let r = d.rotation(v);
        if r.iter().any(|&h| side[eidx[h]]) && r.iter().any(|&h| !side[eidx[h]]) {
            out.push(v);
        }
    }
    out
}

/// Builds a decomposition by recursive noose splitting.
pub fn build_scd(d: &TopologicalDrawing) -> Result<SphereCutDecomposition> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    for h in 0..d.num_half_edges() {
        if d.face_of(h) == d.face_of(d.twin(h)) {
            return Err(Error::NotBridgeless);
        }
    }
    if d.crossing_count() > 0 {
        return Err(Error::InvalidDrawing("decompositions need a crossing-free drawing".into()));
    }
    let rad = Radial::new(d);
    let m = rad.reps.len();
    if m == 0 {
        return Err(Error::InvalidDrawing("drawing has no edges".into()));
    }
    let mut tree: Vec<Vec<usize>> = Vec::new();
    let mut leaf_edge = Vec::new();
    let mut tedges: Vec<(usize, usize)> = Vec::new();
    let mut sides: Vec<Vec<usize>> = Vec::new();
    let mut node = |tree: &mut Vec<Vec<usize>>, leaf: Option<usize>| {
        tree.push(Vec::new());
        leaf_edge.push(leaf);
        tree.len() - 1
    };
    // leaf 0 against the rest
    let top = node(&mut tree, Some(rad.reps[0]));
    let rest: Vec<usize> = (1..m).collect();
    let mut stack: Vec<(Vec<usize>, usize)> = Vec::new();
    let attach = |tree: &mut Vec<Vec<usize>>, tedges: &mut Vec<(usize, usize)>, sides: &mut Vec<Vec<usize>>, p: usize, c: usize, side: Vec<usize>| {
        tree[p].push(c);
        tree[c].push(p);
        tedges.push((p, c));
        sides.push(side);
    };
    if rest.len() == 1 {
        let c = node(&mut tree, Some(rad.reps[1]));
        attach(&mut tree, &mut tedges, &mut sides, top, c, rest);
    } else {
        let c = node(&mut tree, None);
        attach(&mut tree, &mut tedges, &mut sides, top, c, rest.clone());
        stack.push((rest, c));
    }
    while let Some((region, at)) = stack.pop() {
        let (a, b) = rad
            .split(&region)
            .ok_or_else(|| Error::InvalidDrawing(format!("no splitting noose for a region of {} edges", region.len())))?;
        for part in [a, b] {
            if part.len() == 1 {
                let c = node(&mut tree, Some(rad.reps[part[0]]));
                attach(&mut tree, &mut tedges, &mut sides, at, c, part);
            } else {
                let c = node(&mut tree, None);
                attach(&mut tree, &mut tedges, &mut sides, at, c, part.clone());
                stack.push((part, c));
            }
        }
    }
    let mut mid = Vec::new();
    let mut noose = Vec::new();
    for side in &sides {
        let mut flags = vec![false; m];
        for &e in side {
            flags[e] = true;
        }
        mid.push(mid_set(d, &flags, &rad.eidx));
        noose.push(rad.boundary(&flags).ok_or_else(|| Error::InvalidDrawing("side without a simple noose".into()))?);
    }
    Ok(SphereCutDecomposition { tree, leaf_edge, edges: tedges, mid, noose })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScdViolation {
    TreeShape { msg: String },
    NotBijective { msg: String },
    MidMismatch { tree_edge: usize },
    NooseMidMismatch { tree_edge: usize },
    FaceVisitedTwice { tree_edge: usize, face: usize },
    NooseNotIncident { tree_edge: usize },
    ArcMismatch { tree_edge: usize, face: usize },
}

/// Checks tree shape, the leaf bijection, mid sets and nooses.
pub fn validate_scd(d: &TopologicalDrawing, s: &SphereCutDecomposition) -> Vec<ScdViolation> {
    let mut out = Vec::new();
    let rad = Radial::new(d);
    let m = rad.reps.len();
    let nn = s.tree.len();
    let leaves = (0..nn).filter(|&x| s.tree[x].len() == 1).count();
    let shape_ok = s.edges.len() + 1 == nn
        && (0..nn).all(|x| match s.leaf_edge.get(x).copied().flatten() {
            Some(_) => s.tree[x].len() == 1,
            None => s.tree[x].len() == 3,
        })
        && s.leaf_edge.len() == nn
        && s.mid.len() == s.edges.len()
        && s.noose.len() == s.edges.len();
    if !shape_ok {
        out.push(ScdViolation::TreeShape { msg: format!("{nn} nodes, {} edges, {leaves} leaves", s.edges.len()) });
        return out;
    }
    let mut seen = vec![0usize; d.num_half_edges()];
    for e in s.leaf_edge.iter().flatten() {
        if *e < seen.len() {
            seen[*e] += 1;
        }
    }
    if rad.reps.iter().any(|&h| seen[h] != 1) || s.leaf_edge.iter().flatten().count() != m {
        out.push(ScdViolation::NotBijective { msg: "leaves do not match edges one to one".into() });
        return out;
    }
    for t in 0..s.edges.len() {
        let mut flags = vec![false; m];
        for h in s.side(t) {
            flags[rad.eidx[h]] = true;
        }
        let mid = mid_set(d, &flags, &rad.eidx);
        if mid != s.mid[t] {
            out.push(ScdViolation::MidMismatch { tree_edge: t });
        }
        let nz = &s.noose[t];
        let mut nv: Vec<usize> = nz.iter().map(|x| x.0).collect();
        nv.sort_unstable();
        let dup_v = nv.windows(2).any(|w| w[0] == w[1]);
        nv.dedup();
        if nv != mid || dup_v {
            out.push(ScdViolation::NooseMidMismatch { tree_edge: t });
        }
        let mut faces = BTreeSet::new();
        for &(_, f) in nz {
            if !faces.insert(f) {
                out.push(ScdViolation::FaceVisitedTwice { tree_edge: t, face: f });
            }
        }
        let l = nz.len();
        for i in 0..l {
            let (v, f) = nz[i];
            let w = nz[(i + 1) % l].0;
            if f >= d.num_faces() || !d.faces_at(v).contains(&f) || !d.faces_at(w).contains(&f) {
                out.push(ScdViolation::NooseNotIncident { tree_edge: t });
                continue;
            }
            // the side's part of f's walk is one arc from v to w, or the reverse
            if !arc_matches(d, &rad, &flags, f, v, w) {
                out.push(ScdViolation::ArcMismatch { tree_edge: t, face: f });
            }
        }
        for f in 0..d.num_faces() {
            let walk: Vec<usize> = d.faces()[f].walks.iter().flatten().copied().collect();
            let a = walk.iter().any(|&h| flags[rad.eidx[h]]);
            let b = walk.iter().any(|&h| !flags[rad.eidx[h]]);
            if a && b && !faces.contains(&f) {
                out.push(ScdViolation::ArcMismatch { tree_edge: t, face: f });
            }
        }
    }
    out
}

/// Whether the flagged half-edges of face `f` form one arc between `v` and `w`.
fn arc_matches(d: &TopologicalDrawing, rad: &Radial, flags: &[bool], f: usize, v: usize, w: usize) -> bool {
    let face = &d.faces()[f];
    if face.walks.len() != 1 {
        return false;
    }
    let walk = &face.walks[0];
    let l = walk.len();
    let inside: Vec<bool> = walk.iter().map(|&h| flags[rad.eidx[h]]).collect();
    let starts: Vec<usize> = (0..l).filter(|&i| inside[i] && !inside[(i + l - 1) % l]).collect();
    if starts.len() != 1 {
        return false;
    }
    let s = starts[0];
    let mut e = s;
    while inside[(e + 1) % l] {
        e = (e + 1) % l;
    }
    let (a, b) = (d.origin(walk[s]), d.head(walk[e]));
    (a, b) == (v, w) || (a, b) == (w, v)
}

/// A decomposition rooted at a new node subdividing one tree edge.
#[derive(Clone, Debug)]
pub struct RootedScd {
    /// Node 0 is the root.
    pub nodes: Vec<RootedNode>,
}

#[derive(Clone, Debug)]
pub struct RootedNode {
    pub children: Vec<usize>,
    pub parent: Option<usize>,
    /// Leaf edge (smaller half-edge).
    pub edge: Option<usize>,
    pub mid: Vec<usize>,
    pub noose: Noose,
    /// Edges below, as smaller half-edges, sorted.
    pub below: Vec<usize>,
}

pub fn root_scd(s: &SphereCutDecomposition, root_edge: usize) -> RootedScd {
    let (a, b) = s.edges[root_edge];
    let mut nodes = vec![RootedNode {
        children: Vec::new(),
        parent: None,
        edge: None,
        mid: Vec::new(),
        noose: Vec::new(),
        below: Vec::new(),
    }];
    let te = |x: usize, y: usize| s.edges.iter().position(|&(p, q)| (p, q) == (x, y) || (p, q) == (y, x)).unwrap();
    // iterative DFS; children are finished before parents need `below`
    let mut order = Vec::new();
    let mut stack = vec![(a, b, 0usize), (b, a, 0usize)];
    while let Some((x, from, parent)) = stack.pop() {
        let id = nodes.len();
        let t = te(x, from);
        nodes.push(RootedNode {
            children: Vec::new(),
            parent: Some(parent),
            edge: s.leaf_edge[x],
            mid: s.mid[t].clone(),
            noose: s.noose[t].clone(),
            below: Vec::new(),
        });
        nodes[parent].children.push(id);
        order.push(id);
        for &y in s.tree[x].iter().rev() {
            if y != from {
                stack.push((y, x, id));
            }
        }
    }
    nodes[0].children.sort_unstable();
    for &id in order.iter().rev() {
        let mut below: Vec<usize> = nodes[id].edge.into_iter().collect();
        for &c in &nodes[id].children.clone() {
            below.extend(nodes[c].below.iter().copied());
        }
        below.sort_unstable();
        nodes[id].below = below;
    }
    let all: Vec<usize> = nodes[0].children.iter().flat_map(|&c| nodes[c].below.clone()).collect();
    nodes[0].below = all;
    nodes[0].below.sort_unstable();
    RootedScd { nodes }
}

/// Text dump: `node` lines, then one `tedge` line per tree edge with its mid
/// set and noose, all in vertex and face ids.
pub fn write_scd(d: &TopologicalDrawing, s: &SphereCutDecomposition) -> String {
    let mut out = String::from("scd 1\n");
    for (x, e) in s.leaf_edge.iter().enumerate() {
        match e {
            Some(h) => writeln!(out, "node {x} leaf {}", d.he(*h).edge).unwrap(),
            None => writeln!(out, "node {x} inner").unwrap(),
        }
    }
    for (t, &(a, b)) in s.edges.iter().enumerate() {
        let mid: Vec<String> = s.mid[t].iter().map(|&v| d.vertex(v).id.to_string()).collect();
        let nz: Vec<String> = s.noose[t].iter().map(|&(v, f)| format!("{} f{f}", d.vertex(v).id)).collect();
        writeln!(out, "tedge {a} {b} mid {} noose {}", mid.join(" "), nz.join(" ")).unwrap();
    }
    writeln!(out, "width {}", s.width()).unwrap();
    out
}
