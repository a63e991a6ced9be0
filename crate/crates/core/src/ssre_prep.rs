//! Split Set Re-Embedding instances and their pre-processing: copy and
//! inter-copy edge branching, petal reduction, bridge doubling and the
//! outerplanarity measure.

use crate::drawing::{delete_vertices, face_path_graph, HalfEdge, TopologicalDrawing};
use crate::error::{Error, Result};
use crate::io::SsreFile;
use std::collections::{BTreeSet, HashMap};

/// Γ is the crossing-free drawing of G − S; candidate adjacency is given by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsreInstance {
    pub drawing: TopologicalDrawing,
    pub candidates: Vec<usize>,
    /// N_G of each candidate, by vertex id, in candidate order.
    pub adjacency: Vec<Vec<usize>>,
    pub k: usize,
}

impl SsreInstance {
    pub fn new(drawing: TopologicalDrawing, candidates: Vec<usize>, adjacency: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        let inst = SsreInstance { drawing, candidates, adjacency, k };
        inst.check()?;
        Ok(inst)
    }

    pub fn from_file(f: SsreFile, k: Option<usize>) -> Result<Self> {
        let k = k.or(f.k).ok_or_else(|| Error::InvalidK("no budget given".into()))?;
        Self::new(f.drawing, f.candidates, f.adjacency, k)
    }

    pub fn to_file(&self) -> SsreFile {
        SsreFile {
            drawing: self.drawing.clone(),
            candidates: self.candidates.clone(),
            adjacency: self.adjacency.clone(),
            k: Some(self.k),
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if self.drawing.crossing_count() > 0 {
            return bad("the drawing of G - S must be crossing-free".into());
        }
        if self.adjacency.len() != self.candidates.len() {
            return bad("one adjacency list per candidate required".into());
        }
        let set: BTreeSet<usize> = self.candidates.iter().copied().collect();
        if set.len() != self.candidates.len() {
            return bad("duplicate candidate".into());
        }
        for (i, &c) in self.candidates.iter().enumerate() {
            if self.drawing.index_of(c).is_some() {
                return bad(format!("candidate {c} is also drawn"));
            }
            let nb: BTreeSet<usize> = self.adjacency[i].iter().copied().collect();
            if nb.len() != self.adjacency[i].len() || nb.contains(&c) {
                return bad(format!("adjacency of {c} has repeats or a loop"));
            }
            for &w in &nb {
                if let Some(j) = self.candidates.iter().position(|&x| x == w) {
                    if !self.adjacency[j].contains(&c) {
                        return bad(format!("edge {c}-{w} listed on one side only"));
                    }
                } else if self.drawing.index_of(w).is_none() {
                    return Err(Error::UnknownVertex(w));
                }
            }
        }
        Ok(())
    }

    pub fn s(&self) -> usize {
        self.candidates.len()
    }

    /// Drawn neighbours (vertex indices of Γ) of candidate `i`.
    pub fn pistils_of(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.adjacency[i].iter().filter_map(|&w| self.drawing.index_of(w)).collect();
        v.sort_unstable();
        v
    }

    /// Edges of G[S] as pairs of candidate positions, sorted.
    pub fn candidate_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.adjacency.iter().enumerate() {
            for &w in nb {
                if let Some(j) = self.candidates.iter().position(|&x| x == w) {
                    if i < j {
                        out.push((i, j));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertex indices of Γ adjacent to some candidate.
    pub fn pistils(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.s()).flat_map(|i| self.pistils_of(i)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Faces of `d` incident to at least one of `pistils`.
pub fn petals_of(d: &TopologicalDrawing, pistils: &[usize]) -> Vec<usize> {
    let mut f: Vec<usize> = pistils.iter().flat_map(|&p| d.faces_at(p)).collect();
    f.sort_unstable();
    f.dedup();
    f
}

/// One branch of the copy and inter-copy edge branching.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitHypothesis {
    /// Copy count per candidate.
    pub counts: Vec<usize>,
    /// Candidate position of each copy; copies of one candidate are consecutive.
    pub orig: Vec<usize>,
    pub copies: Vec<Vec<usize>>,
    /// Inter-copy edges, one per edge of G[S], in candidate-edge order.
    pub wedge: Vec<(usize, usize)>,
}

impl SplitHypothesis {
    pub fn from_counts(counts: &[usize]) -> Self {
        let mut orig = Vec::new();
        let mut copies = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            copies.push((orig.len()..orig.len() + c).collect());
            orig.extend(std::iter::repeat(i).take(c));
        }
        SplitHypothesis { counts: counts.to_vec(), orig, copies, wedge: Vec::new() }
    }

    pub fn num_copies(&self) -> usize {
        self.orig.len()
    }

    pub fn splits(&self) -> usize {
        self.counts.iter().map(|c| c - 1).sum()
    }

    /// Component label of each copy in the graph (copies, wedge).
    pub fn copy_components(&self) -> (Vec<usize>, usize) {
        let mut g = crate::graph::Graph::new(self.num_copies());
        for &(a, b) in &self.wedge {
            g.add_edge(a, b);
        }
        g.components()
    }
}

/// Copy-count vectors with every count at least 2 and at most `k` splits in
/// total, in order of total splits and then lexicographically.
pub fn enumerate_copy_branches(s: usize, k: usize) -> Result<Vec<SplitHypothesis>> {
    if k < s {
        return Err(Error::BudgetTooSmall { k, s });
    }
    let mut out = Vec::new();
    for total in s..=k {
        let mut cur = vec![1usize; s];
        compositions(&mut cur, 0, total - s, &mut out);
    }
    Ok(out.iter().map(|c| SplitHypothesis::from_counts(c)).collect())
}

fn compositions(cur: &mut Vec<usize>, i: usize, left: usize, out: &mut Vec<Vec<usize>>) {
    if i == cur.len() {
        if left == 0 {
            out.push(cur.iter().map(|c| c + 1).collect());
        }
        return;
    }
    for extra in (0..=left).rev() {
        cur[i] = 1 + extra;
        compositions(cur, i + 1, left - extra, out);
    }
    cur[i] = 1;
}

/// Every way to represent each edge of G[S] by one pair of copies.
pub fn enumerate_edge_branches(h: &SplitHypothesis, cand_edges: &[(usize, usize)]) -> Vec<SplitHypothesis> {
    let mut out = vec![h.clone()];
    for &(a, b) in cand_edges {
        let mut next = Vec::new();
        for base in &out {
            for &ca in &h.copies[a] {
                for &cb in &h.copies[b] {
                    let mut x = base.clone();
                    x.wedge.push((ca, cb));
                    next.push(x);
                }
            }
        }
        out = next;
    }
    out
}

/// Γ after petal reduction and bridge doubling, with maps back to Γ.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    /// Γ_op: Γ without vertices that touch no petal.
    pub op: TopologicalDrawing,
    /// Γ index of each Γ_op half-edge.
    pub op_half_edge_origin: Vec<usize>,
    /// Γ index of each Γ_op vertex.
    pub op_vertex_origin: Vec<usize>,
    /// Γ_bl: Γ_op plus a parallel copy of every bridge. Half-edges below
    /// `op.num_half_edges()` are shared with Γ_op.
    pub bl: TopologicalDrawing,
    /// For each Γ_bl half-edge: the Γ_op half-edge it duplicates, if any.
    pub duplicate_of: Vec<Option<usize>>,
    /// Pistils as Γ_bl vertex indices.
    pub pistils: Vec<usize>,
    /// Petals as Γ_bl face ids.
    pub petals: Vec<usize>,
}

/// Drops every vertex that lies on no petal. One pass suffices.
pub fn reduce_petals(inst: &SsreInstance) -> Result<(TopologicalDrawing, Vec<usize>, Vec<usize>)> {
    let d = &inst.drawing;
    let petals = petals_of(d, &inst.pistils());
    let del: Vec<usize> = (0..d.num_vertices())
        .filter(|&v| !d.faces_at(v).iter().any(|f| petals.binary_search(f).is_ok()))
        .collect();
    let r = delete_vertices(d, &del)?;
    let mut vorig = vec![0; r.drawing.num_vertices()];
    for (old, new) in r.vertex_map.iter().enumerate() {
        if let Some(n) = new {
            vorig[*n] = old;
        }
    }
    let mut horig = vec![0; r.drawing.num_half_edges()];
    for (old, new) in r.half_edge_map.iter().enumerate() {
        if let Some(n) = new {
            horig[*n] = old;
        }
    }
    Ok((r.drawing, vorig, horig))
}

/// Adds a parallel edge next to every bridge. Returns the new drawing and,
/// per half-edge, the original it duplicates.
pub fn double_bridges(d: &TopologicalDrawing) -> Result<(TopologicalDrawing, Vec<Option<usize>>)> {
    let (verts, hes, rot) = d.parts();
    let mut hes: Vec<HalfEdge> = hes.to_vec();
    let mut rot: Vec<Vec<usize>> = rot.to_vec();
    let m = hes.len();
    let mut next_eid = hes.iter().map(|h| h.edge + 1).max().unwrap_or(0);
    let mut labels = d.face_labels();
    let mut fresh = d.num_faces();
    let mut dup = vec![None; m];
    for h in 0..m {
        let t = d.twin(h);
        if h > t || d.face_of(h) != d.face_of(t) {
            continue;
        }
        let (u, v) = (d.origin(h), d.head(h));
        let g = hes.len();
        hes.push(HalfEdge { origin: u, twin: g + 1, edge: next_eid });
        hes.push(HalfEdge { origin: v, twin: g, edge: next_eid });
        next_eid += 1;
        dup.push(Some(h));
        dup.push(Some(t));
        let pu = rot[u].iter().position(|&x| x == h).unwrap();
        rot[u].insert(pu, g);
        let pv = rot[v].iter().position(|&x| x == t).unwrap();
        rot[v].insert(pv + 1, g + 1);
        let face = d.face_of(h);
        labels.half_edge.push(Some(face));
        labels.half_edge.push(Some(fresh));
        labels.half_edge[h] = Some(fresh);
        fresh += 1;
    }
    let out = TopologicalDrawing::from_parts(verts.to_vec(), hes, rot, Some(labels))?;
    Ok((out, dup))
}

/// Runs the reduction rule and bridge doubling.
pub fn reduce(inst: &SsreInstance) -> Result<ReducedInstance> {
    let (op, op_vertex_origin, op_half_edge_origin) = reduce_petals(inst)?;
    let (bl, duplicate_of) = double_bridges(&op)?;
    let gamma_to_op: HashMap<usize, usize> = op_vertex_origin.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let mut pistils: Vec<usize> = inst.pistils().iter().filter_map(|p| gamma_to_op.get(p).copied()).collect();
    pistils.sort_unstable();
    let petals = petals_of(&bl, &pistils);
    Ok(ReducedInstance { op, op_half_edge_origin, op_vertex_origin, bl, duplicate_of, pistils, petals })
}

/// Largest face-path length from `outer` to any vertex.
pub fn outerplanarity_index(d: &TopologicalDrawing, outer: usize) -> usize {
    face_path_graph(d).face_path_lengths(&[outer]).into_iter().map(|x| x.unwrap_or(usize::MAX)).max().unwrap_or(0)
}

/// Minimum of [`outerplanarity_index`] over all choices of outer face.
pub fn min_outerplanarity(d: &TopologicalDrawing) -> usize {
    (0..d.num_faces()).map(|f| outerplanarity_index(d, f)).min().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::planarity::planar_embedding;

    fn embed(n: usize, edges: &[(usize, usize)]) -> TopologicalDrawing {
        let g = Graph::from_edges(n, edges);
        let rot = planar_embedding(&g).unwrap();
        let ids: Vec<usize> = (0..n).collect();
        TopologicalDrawing::from_embedding(&ids, g.edges(), &rot).unwrap()
    }

    #[test]
    fn copy_branches_small() {
        let b = enumerate_copy_branches(1, 1).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].counts, vec![2]);
        let b: Vec<Vec<usize>> = enumerate_copy_branches(2, 3).unwrap().into_iter().map(|h| h.counts).collect();
        assert_eq!(b, vec![vec![2, 2], vec![3, 2], vec![2, 3]]);
        assert_eq!(enumerate_copy_branches(2, 2).unwrap().len(), 1);
        assert!(matches!(enumerate_copy_branches(2, 1), Err(Error::BudgetTooSmall { .. })));
    }

    #[test]
    fn edge_branches_count() {
        let h = SplitHypothesis::from_counts(&[2, 2]);
        assert_eq!(enumerate_edge_branches(&h, &[]).len(), 1);
        assert_eq!(enumerate_edge_branches(&h, &[(0, 1)]).len(), 4);
        let h = SplitHypothesis::from_counts(&[2, 2, 2, 2]);
        assert_eq!(enumerate_edge_branches(&h, &[(0, 1), (2, 3)]).len(), 16);
    }

    #[test]
    fn doubling_a_path() {
        let d = embed(3, &[(0, 1), (1, 2)]);
        let (b, dup) = double_bridges(&d).unwrap();
        assert_eq!(b.num_segments(), 4);
        assert_eq!(b.num_faces(), 3);
        assert!(b.euler_ok());
        assert_eq!(dup.iter().filter(|x| x.is_some()).count(), 4);
        let c = embed(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(double_bridges(&c).unwrap().0, c);
    }

    #[test]
    fn doubling_single_edge() {
        let d = embed(2, &[(0, 1)]);
        let (b, _) = double_bridges(&d).unwrap();
        assert_eq!(b.num_faces(), 2);
    }

    #[test]
    fn triangle_outerplanarity() {
        let d = embed(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(outerplanarity_index(&d, 0), 1);
    }
}
