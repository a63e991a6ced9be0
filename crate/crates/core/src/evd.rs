//! Embedded vertex deletion by a bounded search tree over crossings.

use crate::drawing::{TopologicalDrawing, VertexKind};
use crate::registry::Registry;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionResult {
    pub feasible: bool,
    /// Vertex ids, sorted.
    pub witness: Vec<usize>,
    /// Search-tree nodes visited.
    pub nodes: usize,
}

/// Picks the crossing to branch on among those not yet removed.
pub trait CrossingSelector: Send + Sync {
    /// `quads[c]` lists the four endpoints of crossing `c`; `load[v]` counts
    /// remaining crossings at `v`.
    fn select(&self, quads: &[[usize; 4]], alive: &[usize], load: &[usize]) -> usize;
}

pub struct MaxIncident;
pub struct FirstCrossing;

impl CrossingSelector for MaxIncident {
    fn select(&self, quads: &[[usize; 4]], alive: &[usize], load: &[usize]) -> usize {
        let score = |c: usize| quads[c].iter().map(|&v| load[v]).sum::<usize>();
        let mut best = alive[0];
        for &c in &alive[1..] {
            if score(c) > score(best) {
                best = c;
            }
        }
        best
    }
}

impl CrossingSelector for FirstCrossing {
    fn select(&self, _: &[[usize; 4]], alive: &[usize], _: &[usize]) -> usize {
        alive[0]
    }
}

pub fn selectors() -> Registry<dyn CrossingSelector> {
    let mut r: Registry<dyn CrossingSelector> = Registry::new("evd heuristic");
    r.register("max-incident", Box::new(MaxIncident)).register("first", Box::new(FirstCrossing));
    r
}

/// Endpoint quadruples of every crossing, as vertex indices.
pub fn crossing_quads(d: &TopologicalDrawing) -> Vec<[usize; 4]> {
    let orig = d.original_edges();
    d.vertices()
        .iter()
        .filter_map(|v| match v.kind {
            VertexKind::Crossing(a, b) => {
                let (ea, eb) = (orig[&a].ends, orig[&b].ends);
                Some([ea.0, ea.1, eb.0, eb.1])
            }
            VertexKind::Real => None,
        })
        .collect()
}

struct Search<'a> {
    quads: &'a [[usize; 4]],
    ids: &'a [usize],
    selector: &'a dyn CrossingSelector,
    seen: HashSet<Vec<usize>>,
    best: Option<Vec<usize>>,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, deleted: &mut Vec<usize>, k: usize, n: usize) {
        let mut key = deleted.clone();
        key.sort_unstable();
        if !self.seen.insert(key) {
            return;
        }
        self.nodes += 1;
        let alive: Vec<usize> = (0..self.quads.len())
            .filter(|&c| !self.quads[c].iter().any(|v| deleted.contains(v)))
            .collect();
        if alive.is_empty() {
            let mut w: Vec<usize> = deleted.iter().map(|&v| self.ids[v]).collect();
            w.sort_unstable();
            let better = match &self.best {
                None => true,
                Some(b) => (w.len(), &w) < (b.len(), b),
            };
            if better {
                self.best = Some(w);
            }
            return;
        }
        if k == 0 {
            return;
        }
        let mut load = vec![0; n];
        for &c in &alive {
            for &v in &self.quads[c] {
                load[v] += 1;
            }
        }
        let c = self.selector.select(self.quads, &alive, &load);
        let mut ends = self.quads[c].to_vec();
        ends.sort_unstable();
        ends.dedup();
        for v in ends {
            deleted.push(v);
            self.run(deleted, k - 1, n);
            deleted.pop();
        }
    }
}

pub fn solve_evd_with(d: &TopologicalDrawing, k: usize, selector: &dyn CrossingSelector) -> DeletionResult {
    let quads = crossing_quads(d);
    let ids: Vec<usize> = d.vertices().iter().map(|v| v.id).collect();
    let mut s = Search { quads: &quads, ids: &ids, selector, seen: HashSet::new(), best: None, nodes: 0 };
    s.run(&mut Vec::new(), k, d.num_vertices());
    DeletionResult { feasible: s.best.is_some(), witness: s.best.unwrap_or_default(), nodes: s.nodes }
}

/// Whether deleting at most `k` real vertices removes every crossing.
pub fn solve_evd(d: &TopologicalDrawing, k: usize) -> DeletionResult {
    solve_evd_with(d, k, &MaxIncident)
}

/// A minimum-cardinality deletion set (vertex ids, sorted).
pub fn minimize_evd(d: &TopologicalDrawing) -> Vec<usize> {
    let mut k = 0;
    loop {
        let r = solve_evd(d, k);
        if r.feasible {
            return r.witness;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{delete_vertices, ingest_geometric, point, GeometricDrawing};

    fn crossing_pair() -> TopologicalDrawing {
        let vs = [(0, point(0, 0)), (1, point(2, 2)), (2, point(2, 0)), (3, point(0, 2))];
        ingest_geometric(&GeometricDrawing::straight(&vs, &[(0, 1), (2, 3)])).unwrap()
    }

    #[test]
    fn planar_needs_nothing() {
        let d = crate::drawing::tests::triangle();
        let r = solve_evd(&d, 0);
        assert!(r.feasible && r.witness.is_empty());
        assert!(minimize_evd(&d).is_empty());
    }

    #[test]
    fn single_crossing_any_endpoint() {
        let d = crossing_pair();
        assert!(!solve_evd(&d, 0).feasible);
        let r = solve_evd(&d, 1);
        assert_eq!(r.witness, vec![0]);
        for v in 0..4 {
            let del = delete_vertices(&d, &[v]).unwrap();
            assert_eq!(del.drawing.crossing_count(), 0);
        }
    }

    #[test]
    fn selectors_agree() {
        let d = crossing_pair();
        let reg = selectors();
        for name in reg.names() {
            assert!(solve_evd_with(&d, 1, reg.get(name).unwrap()).feasible);
        }
    }
}
