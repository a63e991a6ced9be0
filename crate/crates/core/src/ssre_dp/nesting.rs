use crate::graph::Graph;
use crate::planarity::is_planar;
use serde::Serialize;

/// Whether the copies fit in a disk whose boundary carries `ring_len` points
/// in cyclic order. `attachments` are `(copy, ring point)` pairs.
pub fn disk_planar(ring_len: usize, copies: usize, copy_edges: &[(usize, usize)], attachments: &[(usize, usize)]) -> bool {
    // ring point i sits at rim node 2i; odd rim nodes pad the rim
    let mut rim = 2 * ring_len;
    if rim < 3 {
        rim = 3;
    }
    let hub = rim;
    let mut g = Graph::new(rim + 1 + copies);
    for i in 0..rim {
        g.add_edge(i, (i + 1) % rim);
        g.add_edge(hub, i);
    }
    for &(a, b) in copy_edges {
        g.add_edge(rim + 1 + a, rim + 1 + b);
    }
    for &(c, p) in attachments {
        g.add_edge(rim + 1 + c, 2 * p);
    }
    is_planar(&g)
}

/// Whether two neighbour sets, given as positions on a cyclic order of
/// length `len`, do not interleave. Shared positions are ignored.
pub fn compatible(a: &[usize], b: &[usize], len: usize) -> bool {
    let mut marks = vec![0u8; len];
    for &x in a {
        marks[x] |= 1;
    }
    for &x in b {
        marks[x] |= 2;
    }
    let seq: Vec<u8> = marks.into_iter().filter(|&m| m == 1 || m == 2).collect();
    let mut runs = 0;
    for i in 0..seq.len() {
        if seq[i] != seq[(i + seq.len() - 1) % seq.len()] {
            runs += 1;
        }
    }
    runs <= 2
}

/// Copies embedded in a face together with a cycle standing for the face
/// boundary. Cycle vertex `i` is joined to the copy `cycle[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NestingGraph {
    pub cycle: Vec<usize>,
    /// Inner copies, sorted.
    pub inner: Vec<usize>,
    /// Edges among inner copies.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NestingViolation {
    NotPlanar,
    ForeignCycleNeighbor { copy: usize },
    InnerNotAttached,
    AdjacentSameNeighbor { position: usize },
    InducedMismatch,
    SingleCopyCycle { len: usize },
    CycleTooLong { len: usize, inner: usize },
}

impl NestingGraph {
    /// From a compressed cyclic attachment sequence. A lone copy gets a 2-cycle.
    pub fn from_sequence(seq: &[usize], inner: &[usize], wedge: &[(usize, usize)]) -> Self {
        let mut inner = inner.to_vec();
        inner.sort_unstable();
        let mut cycle = seq.to_vec();
        if inner.len() == 1 && cycle.len() == 1 {
            cycle.push(cycle[0]);
        }
        let edges = wedge
            .iter()
            .filter(|(a, b)| inner.binary_search(a).is_ok() && inner.binary_search(b).is_ok())
            .copied()
            .collect();
        NestingGraph { cycle, inner, edges }
    }

    /// The five defining conditions plus the cycle length bound.
    pub fn check(&self, wedge: &[(usize, usize)]) -> Vec<NestingViolation> {
        let mut out = Vec::new();
        let local = |c: usize| self.inner.binary_search(&c).ok();
        for &c in &self.cycle {
            if local(c).is_none() {
                out.push(NestingViolation::ForeignCycleNeighbor { copy: c });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let l = self.cycle.len();
        if self.inner.len() == 1 {
            if l != 2 {
                out.push(NestingViolation::SingleCopyCycle { len: l });
            }
        } else if l >= 2 {
            for i in 0..l {
                if self.cycle[i] == self.cycle[(i + 1) % l] {
                    out.push(NestingViolation::AdjacentSameNeighbor { position: i });
                }
            }
        }
        if l > 2 * self.inner.len() {
            out.push(NestingViolation::CycleTooLong { len: l, inner: self.inner.len() });
        }
        let mut want: Vec<(usize, usize)> = wedge
            .iter()
            .filter(|(a, b)| local(*a).is_some() && local(*b).is_some())
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        let mut have: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            out.push(NestingViolation::InducedMismatch);
        }
        // every inner copy reaches the cycle through inner edges
        let mut g = Graph::new(self.inner.len());
        for &(a, b) in &self.edges {
            g.add_edge(local(a).unwrap(), local(b).unwrap());
        }
        let (comp, nc) = g.components();
        let mut touched = vec![false; nc];
        for &c in &self.cycle {
            touched[comp[local(c).unwrap()]] = true;
        }
        if touched.iter().any(|t| !t) {
            out.push(NestingViolation::InnerNotAttached);
        }
        let atts: Vec<(usize, usize)> = self.cycle.iter().enumerate().map(|(i, &c)| (local(c).unwrap(), i)).collect();
        let ledges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (local(a).unwrap(), local(b).unwrap())).collect();
        if !disk_planar(l, self.inner.len(), &ledges, &atts) {
            out.push(NestingViolation::NotPlanar);
        }
        out
    }
}

/// Cyclic compression: drops consecutive repeats, wrapping around.
pub fn compress_cyclic(seq: &mut Vec<u32>) {
    seq.dedup();
    while seq.len() > 1 && seq.first() == seq.last() {
        seq.pop();
    }
}
