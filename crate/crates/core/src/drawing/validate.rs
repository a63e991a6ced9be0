use super::{TopologicalDrawing, VertexKind};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    CrossingDegree { vertex: usize, degree: usize },
    CrossingNotAlternating { vertex: usize },
    CrossingRecordMismatch { vertex: usize },
    SelfCrossing { vertex: usize },
    BrokenEdge { edge: usize },
    DoubleCrossing { e: usize, f: usize },
    AdjacentCrossing { e: usize, f: usize },
    EdgeLoop { edge: usize },
    Euler { v: usize, e: usize, f: usize, c: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every drawing invariant and reports violations by external id.
pub fn validate(d: &TopologicalDrawing) -> ValidationReport {
    let mut out = Vec::new();
    for (v, vert) in d.vertices().iter().enumerate() {
        let VertexKind::Crossing(e1, e2) = vert.kind else { continue };
        let rot = d.rotation(v);
        if rot.len() != 4 {
            out.push(Violation::CrossingDegree { vertex: vert.id, degree: rot.len() });
            continue;
        }
        let eids: Vec<usize> = rot.iter().map(|&h| d.he(h).edge).collect();
        if e1 == e2 {
            out.push(Violation::SelfCrossing { vertex: vert.id });
        }
        if eids[0] != eids[2] || eids[1] != eids[3] || eids[0] == eids[1] {
            out.push(Violation::CrossingNotAlternating { vertex: vert.id });
        } else {
            let mut a = [eids[0], eids[1]];
            let mut b = [e1, e2];
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                out.push(Violation::CrossingRecordMismatch { vertex: vert.id });
            }
        }
    }
    let orig = d.original_edges();
    // every half-edge must lie on a traced original edge
    let mut covered = vec![false; d.num_half_edges()];
    for e in orig.values() {
        for &h in &e.path {
            covered[h] = true;
            covered[d.twin(h)] = true;
        }
    }
    let mut broken = BTreeSet::new();
    for h in 0..d.num_half_edges() {
        if !covered[h] {
            broken.insert(d.he(h).edge);
        }
    }
    let mut seen_eids: BTreeMap<usize, usize> = BTreeMap::new();
    for h in 0..d.num_half_edges() {
        let e = d.he(h).edge;
        *seen_eids.entry(e).or_default() += 1;
    }
    for (&e, &count) in &seen_eids {
        if let Some(oe) = orig.get(&e) {
            if 2 * oe.path.len() != count {
                broken.insert(e);
            }
        }
    }
    out.extend(broken.into_iter().map(|edge| Violation::BrokenEdge { edge }));
    for e in orig.values() {
        if e.ends.0 == e.ends.1 {
            out.push(Violation::EdgeLoop { edge: e.id });
        }
    }
    // pairs of original edges meeting at crossings
    let mut meets: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in d.vertices() {
        if let VertexKind::Crossing(a, b) = v.kind {
            if a != b {
                *meets.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
    }
    for (&(a, b), &count) in &meets {
        if count > 1 {
            out.push(Violation::DoubleCrossing { e: a, f: b });
        }
        if let (Some(ea), Some(eb)) = (orig.get(&a), orig.get(&b)) {
            let sa = [ea.ends.0, ea.ends.1];
            if sa.contains(&eb.ends.0) || sa.contains(&eb.ends.1) {
                out.push(Violation::AdjacentCrossing { e: a, f: b });
            }
        }
    }
    if !d.euler_ok() {
        let (_, c) = d.components();
        out.push(Violation::Euler { v: d.num_vertices(), e: d.num_segments(), f: d.num_faces(), c });
    }
    ValidationReport { violations: out }
}


#[cfg(test)]
mod tests {
    use super::tests_support::single_crossing;
    use super::*;
    use crate::drawing::{HalfEdge, TopologicalDrawing, Vertex, VertexKind};

    #[test]
    fn triangle_is_valid() {
        assert!(validate(&crate::drawing::tests::triangle()).is_empty());
    }

    #[test]
    fn single_crossing_is_valid() {
        let d = single_crossing();
        assert!(validate(&d).is_empty(), "{:?}", validate(&d));
        assert_eq!(d.num_faces(), 1);
        assert_eq!(d.original_edges().len(), 2);
    }

    #[test]
    fn double_crossing_is_reported() {
        // edges a=(0,1) and b=(2,3) crossing twice at 4 and 5
        let real = |id| Vertex { id, kind: VertexKind::Real };
        let cross = |id| Vertex { id, kind: VertexKind::Crossing(0, 1) };
        let vertices = vec![real(0), real(1), real(2), real(3), cross(4), cross(5)];
        let mut hes = Vec::new();
        let mut seg = |u: usize, v: usize, e: usize| {
            let h = hes.len();
            hes.push(HalfEdge { origin: u, twin: h + 1, edge: e });
            hes.push(HalfEdge { origin: v, twin: h, edge: e });
            h
        };
        // a: 0-4-5-1, b: 2-4-5-3 with b swapping sides between the crossings
        let a0 = seg(0, 4, 0);
        let a1 = seg(4, 5, 0);
        let a2 = seg(5, 1, 0);
        let b0 = seg(2, 4, 1);
        let b1 = seg(4, 5, 1);
        let b2 = seg(5, 3, 1);
        let rot = vec![
            vec![a0],
            vec![a2 + 1],
            vec![b0],
            vec![b2 + 1],
            vec![a0 + 1, b0 + 1, a1, b1],
            vec![a1 + 1, b2, a2, b1 + 1],
        ];
        let d = TopologicalDrawing::from_parts(vertices, hes, rot, None).unwrap();
        let rep = validate(&d);
        assert!(rep.violations.contains(&Violation::DoubleCrossing { e: 0, f: 1 }), "{rep:?}");
    }

    #[test]
    fn degree_three_crossing_is_reported() {
        let real = |id| Vertex { id, kind: VertexKind::Real };
        let vertices = vec![real(0), real(1), real(2), Vertex { id: 9, kind: VertexKind::Crossing(0, 1) }];
        let mut hes = Vec::new();
        for (u, e) in [(0usize, 0usize), (1, 1), (2, 2)] {
            let h = hes.len();
            hes.push(HalfEdge { origin: u, twin: h + 1, edge: e });
            hes.push(HalfEdge { origin: 3, twin: h, edge: e });
        }
        let rot = vec![vec![0], vec![2], vec![4], vec![1, 3, 5]];
        let d = TopologicalDrawing::from_parts(vertices, hes, rot, None).unwrap();
        let rep = validate(&d);
        assert!(rep.violations.contains(&Violation::CrossingDegree { vertex: 9, degree: 3 }));
    }
}
