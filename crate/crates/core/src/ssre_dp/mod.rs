//! Split Set Re-Embedding by dynamic programming over a sphere-cut
//! decomposition of the reduced drawing.
//!
//! Every face cut by a noose carries an arc: what the copies attached so far
//! look like along the part of the face boundary inside the noose. Arcs are
//! joined in walk order when two children meet, and a face that becomes
//! fully enclosed is checked for realizability in a disk.

mod nesting;
mod reconstruct;
mod table;

pub use nesting::{compatible, compress_cyclic, disk_planar, NestingGraph, NestingViolation};
pub use reconstruct::{check_split_solution, SplitSolution};
pub use table::Realizer;

use crate::drawing::{delete_vertices, TopologicalDrawing};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::is_planar;
use crate::registry::Registry;
use crate::scd::{build_scd, SphereCutDecomposition};
use crate::ssre_prep::{
    enumerate_copy_branches, enumerate_edge_branches, min_outerplanarity, reduce, ReducedInstance, SplitHypothesis,
    SsreInstance,
};
use serde::Serialize;
use table::{Attach, Engine, Part};

/// How arcs are represented, joined and checked.
pub trait DpStrategy: Send + Sync {
    /// Whether leaves branch over the order of attachments inside a corner.
    fn ordered(&self) -> bool;
    /// Whether arcs are attachment sequences that form nesting graphs.
    fn has_nesting(&self) -> bool;
    /// Arc of one leaf from `(copy, walk position)` items in walk order.
    fn leaf_arc(&self, items: &[(usize, usize)]) -> Vec<u32>;
    fn concat(&self, a: &[u32], b: &[u32]) -> Vec<u32>;
    /// Necessary condition on an arc of a face that is still open.
    fn open_ok(&self, r: &mut Realizer, arc: &[u32], walk_len: usize) -> bool;
    /// Realizability of a face once its arc spans the whole walk.
    fn close_ok(&self, r: &mut Realizer, arc: &[u32], walk_len: usize, mask: u32) -> bool;
}

/// Arcs are compressed copy sequences; every arc must stay realizable.
pub struct Projected;

impl Projected {
    fn disk(r: &mut Realizer, arc: &[u32], mask: Option<u32>) -> bool {
        let mut seq = arc.to_vec();
        compress_cyclic(&mut seq);
        if seq.is_empty() {
            return true;
        }
        let atts: Vec<(usize, usize)> = seq.iter().enumerate().map(|(j, &c)| (c as usize, j)).collect();
        let mask = mask.unwrap_or_else(|| r.mask_of(seq.iter().map(|&c| c as usize)));
        r.ok(seq.len(), &atts, mask)
    }
}

impl DpStrategy for Projected {
    fn ordered(&self) -> bool {
        true
    }

    fn has_nesting(&self) -> bool {
        true
    }

    fn leaf_arc(&self, items: &[(usize, usize)]) -> Vec<u32> {
        let mut v: Vec<u32> = items.iter().map(|&(c, _)| c as u32).collect();
        v.dedup();
        v
    }

    fn concat(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut v = a.to_vec();
        let skip = usize::from(!a.is_empty() && !b.is_empty() && a.last() == b.first());
        v.extend(&b[skip..]);
        v
    }

    fn open_ok(&self, r: &mut Realizer, arc: &[u32], _walk_len: usize) -> bool {
        Self::disk(r, arc, None)
    }

    fn close_ok(&self, r: &mut Realizer, arc: &[u32], _walk_len: usize, mask: u32) -> bool {
        Self::disk(r, arc, Some(mask))
    }
}

/// Arcs are plain sets of attachments at walk positions, checked only when
/// a face closes.
pub struct Reference;

const POS_SHIFT: u32 = 8;

impl DpStrategy for Reference {
    fn ordered(&self) -> bool {
        false
    }

    fn has_nesting(&self) -> bool {
        false
    }

    fn leaf_arc(&self, items: &[(usize, usize)]) -> Vec<u32> {
        let mut v: Vec<u32> = items.iter().map(|&(c, p)| (p as u32) << POS_SHIFT | c as u32).collect();
        v.sort_unstable();
        v
    }

    fn concat(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut v = [a, b].concat();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn open_ok(&self, _r: &mut Realizer, _arc: &[u32], _walk_len: usize) -> bool {
        true
    }

    fn close_ok(&self, r: &mut Realizer, arc: &[u32], walk_len: usize, mask: u32) -> bool {
        let atts: Vec<(usize, usize)> =
            arc.iter().map(|&x| ((x & ((1 << POS_SHIFT) - 1)) as usize, (x >> POS_SHIFT) as usize)).collect();
        r.ok(walk_len, &atts, mask)
    }
}

pub fn dp_strategies() -> Registry<dyn DpStrategy> {
    let mut r: Registry<dyn DpStrategy> = Registry::new("ssre dp");
    r.register("projected", Box::new(Projected)).register("reference", Box::new(Reference));
    r
}

#[derive(Clone, Debug)]
pub struct DpOptions {
    pub strategy: String,
    /// Tree edge to root at; taken modulo the number of tree edges.
    pub root_edge: Option<usize>,
    /// Entries allowed per table.
    pub max_entries: usize,
    /// Check every open arc as a nesting graph and count violations.
    pub check_nesting: bool,
    /// Answer no when the reduced drawing is not 10k-outerplanar.
    pub outerplanarity_exit: bool,
    /// Build a witness drawing for yes-instances.
    pub witness: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            strategy: "projected".into(),
            root_edge: None,
            max_entries: 200_000,
            check_nesting: false,
            outerplanarity_exit: true,
            witness: true,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DpTrace {
    pub strategy: String,
    pub outerplanarity: Option<usize>,
    pub early_exit: bool,
    pub parts: usize,
    pub width: usize,
    pub copy_branches: usize,
    pub branches: usize,
    pub entries: usize,
    pub max_table: usize,
    pub nesting_checked: usize,
    pub nesting_violations: usize,
}

#[derive(Clone, Debug)]
pub struct SsreOutcome {
    pub feasible: bool,
    pub solution: Option<SplitSolution>,
    pub trace: DpTrace,
}

/// Refuses faces that touch a pistil and have more than one boundary part.
pub fn check_supported(inst: &SsreInstance) -> Result<()> {
    let d = &inst.drawing;
    let pistils = inst.pistils();
    for f in d.faces() {
        if f.walks.len() + f.isolated.len() > 1 && f.vertex_set(d).iter().any(|v| pistils.binary_search(v).is_ok()) {
            return Err(Error::Unsupported(format!("face {} touches a pistil and has several boundary parts", f.id)));
        }
    }
    Ok(())
}

/// Drawn adjacencies `(candidate, Γ_bl vertex)`.
fn adjacencies(inst: &SsreInstance, red: &ReducedInstance) -> Vec<(usize, usize)> {
    let mut back = vec![usize::MAX; inst.drawing.num_vertices()];
    for (n, &o) in red.op_vertex_origin.iter().enumerate() {
        back[o] = n;
    }
    let mut out = Vec::new();
    for i in 0..inst.s() {
        for p in inst.pistils_of(i) {
            out.push((i, back[p]));
        }
    }
    out
}

fn thin_faces(red: &ReducedInstance) -> Vec<usize> {
    let m = red.op.num_half_edges();
    let mut out: Vec<usize> = (m..red.bl.num_half_edges())
        .step_by(2)
        .filter_map(|g| red.duplicate_of[g])
        .map(|h| red.bl.face_of(h))
        .collect();
    out.sort_unstable();
    out
}

fn build_parts(red: &ReducedInstance, adjs: &[(usize, usize)]) -> Result<Vec<Part>> {
    let bl = &red.bl;
    if bl.num_vertices() == 0 {
        return Ok(Vec::new());
    }
    let thin = thin_faces(red);
    let is_pistil = |v: usize| red.pistils.binary_search(&v).is_ok();
    let allowed_bl: Vec<bool> = bl
        .faces()
        .iter()
        .enumerate()
        .map(|(f, face)| {
            let single = face.walks.len() + face.isolated.len() == 1;
            single && thin.binary_search(&f).is_err() && face.occurrences(bl).any(is_pistil)
        })
        .collect();
    let (comp, nc) = bl.components();
    let mut parts = Vec::new();
    for c in 0..nc {
        let (d, to_bl_half, to_bl_vertex) = if nc == 1 {
            (bl.clone(), (0..bl.num_half_edges()).collect(), (0..bl.num_vertices()).collect())
        } else {
            let del: Vec<usize> = (0..bl.num_vertices()).filter(|&v| comp[v] != c).collect();
            let r = delete_vertices(bl, &del)?;
            let mut th = vec![0; r.drawing.num_half_edges()];
            for (old, new) in r.half_edge_map.iter().enumerate() {
                if let Some(n) = new {
                    th[*n] = old;
                }
            }
            let mut tv = vec![0; r.drawing.num_vertices()];
            for (old, new) in r.vertex_map.iter().enumerate() {
                if let Some(n) = new {
                    tv[*n] = old;
                }
            }
            (r.drawing, th, tv)
        };
        let nf = d.num_faces();
        let mut allowed = vec![false; nf];
        let mut pos = vec![0; d.num_half_edges()];
        let mut walk_len = vec![1; nf];
        for (f, face) in d.faces().iter().enumerate() {
            if let Some(w) = face.walks.first() {
                walk_len[f] = w.len();
                for (i, &h) in w.iter().enumerate() {
                    pos[h] = i;
                }
                allowed[f] = face.walks.len() == 1 && allowed_bl[bl.face_of(to_bl_half[w[0]])];
            } else {
                allowed[f] = nc == 1 && face.isolated.iter().any(|&v| is_pistil(to_bl_vertex[v]));
            }
        }
        let mut adj_at = vec![Vec::new(); d.num_vertices()];
        for (a, &(_, v)) in adjs.iter().enumerate() {
            if let Some(pv) = to_bl_vertex.iter().position(|&x| x == v) {
                adj_at[pv].push(a);
            }
        }
        let scd = if d.num_half_edges() > 0 { Some(build_scd(&d)?) } else { None };
        parts.push(Part { d, to_bl_half, to_bl_vertex, allowed, adj_at, pos, walk_len, scd });
    }
    Ok(parts)
}

/// Picks one root option per part with disjoint component masks so that the
/// remaining components are planar.
fn combine(options: &[Vec<(u32, Vec<Attach>)>], real: &Realizer, wedge: &[(usize, usize)]) -> Option<Vec<usize>> {
    let ncomp = real.comp_copies.len();
    let leftover_ok = |used: u32| {
        (0..ncomp).filter(|&k| used >> k & 1 == 0).all(|k| {
            let copies = &real.comp_copies[k];
            let mut g = Graph::new(copies.len());
            for &(a, b) in wedge {
                if let (Some(x), Some(y)) = (copies.iter().position(|&c| c == a), copies.iter().position(|&c| c == b)) {
                    g.add_edge(x, y);
                }
            }
            is_planar(&g)
        })
    };
    fn rec(
        options: &[Vec<(u32, Vec<Attach>)>],
        i: usize,
        used: u32,
        pick: &mut Vec<usize>,
        done: &dyn Fn(u32) -> bool,
    ) -> bool {
        if i == options.len() {
            return done(used);
        }
        for (j, (m, _)) in options[i].iter().enumerate() {
            if m & used == 0 {
                pick.push(j);
                if rec(options, i + 1, used | m, pick, done) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    let mut pick = Vec::new();
    rec(options, 0, 0, &mut pick, &leftover_ok).then_some(pick)
}

/// Decides an instance and, for yes-instances, builds a witness drawing.
pub fn solve_ssre(inst: &SsreInstance, opts: &DpOptions) -> Result<SsreOutcome> {
    let registry = dp_strategies();
    let strat = registry.get(&opts.strategy)?;
    let mut trace = DpTrace { strategy: opts.strategy.clone(), ..Default::default() };
    let s = inst.s();
    if s == 0 {
        let solution = opts.witness.then(|| SplitSolution::unsplit(inst));
        return Ok(SsreOutcome { feasible: true, solution, trace });
    }
    if inst.k < s {
        return Ok(SsreOutcome { feasible: false, solution: None, trace });
    }
    check_supported(inst)?;
    let red = reduce(inst)?;
    if red.op.num_vertices() > 0 {
        let o = min_outerplanarity(&red.op);
        trace.outerplanarity = Some(o);
        if opts.outerplanarity_exit && o > 10 * inst.k {
            trace.early_exit = true;
            return Ok(SsreOutcome { feasible: false, solution: None, trace });
        }
    }
    let adjs = adjacencies(inst, &red);
    if adjs.len() > 128 {
        return Err(Error::Unsupported(format!("{} drawn adjacencies; at most 128 are supported", adjs.len())));
    }
    let parts = build_parts(&red, &adjs)?;
    trace.parts = parts.len();
    trace.width = parts.iter().filter_map(|p| p.scd.as_ref()).map(|s| s.width()).max().unwrap_or(0);
    let cand_edges = inst.candidate_edges();
    for base in enumerate_copy_branches(s, inst.k)? {
        trace.copy_branches += 1;
        for hyp in enumerate_edge_branches(&base, &cand_edges) {
            trace.branches += 1;
            if let Some((real, options, pick)) = run_branch(&parts, &adjs, &hyp, strat, opts, &mut trace)? {
                let solution = if opts.witness {
                    let atts: Vec<(usize, Attach)> = pick
                        .iter()
                        .enumerate()
                        .flat_map(|(pi, &j)| options[pi][j].1.iter().map(move |&a| (pi, a)))
                        .collect();
                    Some(reconstruct::reconstruct(inst, &red, &parts, &hyp, &real, &adjs, &atts)?)
                } else {
                    None
                };
                return Ok(SsreOutcome { feasible: true, solution, trace });
            }
        }
    }
    Ok(SsreOutcome { feasible: false, solution: None, trace })
}

type BranchResult = Option<(Realizer, Vec<Vec<(u32, Vec<Attach>)>>, Vec<usize>)>;

fn run_branch(
    parts: &[Part],
    adjs: &[(usize, usize)],
    hyp: &SplitHypothesis,
    strat: &dyn DpStrategy,
    opts: &DpOptions,
    trace: &mut DpTrace,
) -> Result<BranchResult> {
    let mut real = Realizer::new(hyp);
    let mut options = Vec::new();
    for part in parts {
        let engine = Engine { part, adjs, hyp, strat, opts };
        let o = engine.run(&mut real, trace)?;
        if o.is_empty() {
            return Ok(None);
        }
        options.push(o);
    }
    Ok(combine(&options, &real, &hyp.wedge).map(|pick| (real, options, pick)))
}

/// The drawings the solver decomposes, one per component of the reduced
/// drawing, with their sphere-cut decompositions (`None` when edgeless).
pub fn decompositions(inst: &SsreInstance) -> Result<Vec<(TopologicalDrawing, Option<SphereCutDecomposition>)>> {
    let red = reduce(inst)?;
    let adjs = adjacencies(inst, &red);
    Ok(build_parts(&red, &adjs)?.into_iter().map(|p| (p.d, p.scd)).collect())
}

/// Widths of the decompositions built for an instance, one per part.
pub fn decomposition_widths(inst: &SsreInstance) -> Result<Vec<usize>> {
    Ok(decompositions(inst)?.iter().map(|(_, s)| s.as_ref().map_or(0, |s| s.width())).collect())
}
