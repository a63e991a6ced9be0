use super::nesting::{compress_cyclic, disk_planar, NestingGraph};
use super::{DpOptions, DpStrategy, DpTrace};
use crate::drawing::TopologicalDrawing;
use crate::error::{Error, Result};
use crate::scd::{RootedScd, SphereCutDecomposition};
use crate::ssre_prep::SplitHypothesis;
use std::collections::HashMap;

/// Where an attachment edge meets the drawing, in part coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum PartCorner {
    /// The corner before this half-edge in its origin's rotation.
    Half(usize),
    Isolated(usize),
}

/// Copy `copy` realizes adjacency `adj` at `corner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Attach {
    pub adj: usize,
    pub copy: usize,
    pub corner: PartCorner,
}

/// One connected component of Γ_bl with its decomposition.
pub(crate) struct Part {
    pub d: TopologicalDrawing,
    pub to_bl_half: Vec<usize>,
    pub to_bl_vertex: Vec<usize>,
    /// Faces that may host copies.
    pub allowed: Vec<bool>,
    /// Adjacency ids at every vertex.
    pub adj_at: Vec<Vec<usize>>,
    /// Position of every half-edge in its face walk.
    pub pos: Vec<usize>,
    pub walk_len: Vec<usize>,
    pub scd: Option<SphereCutDecomposition>,
}

/// Copy bookkeeping for one branch plus the realizability memo.
pub struct Realizer {
    pub comp_of: Vec<usize>,
    pub comp_copies: Vec<Vec<usize>>,
    pub wedge: Vec<(usize, usize)>,
    memo: HashMap<(usize, Vec<(usize, usize)>, u32), bool>,
}

impl Realizer {
    pub fn new(h: &SplitHypothesis) -> Self {
        let (comp_of, nc) = h.copy_components();
        let mut comp_copies = vec![Vec::new(); nc];
        for (c, &k) in comp_of.iter().enumerate() {
            comp_copies[k].push(c);
        }
        Realizer { comp_of, comp_copies, wedge: h.wedge.clone(), memo: HashMap::new() }
    }

    pub fn copies_of(&self, mask: u32) -> Vec<usize> {
        let mut out: Vec<usize> =
            (0..self.comp_copies.len()).filter(|&k| mask >> k & 1 == 1).flat_map(|k| self.comp_copies[k].clone()).collect();
        out.sort_unstable();
        out
    }

    pub fn mask_of(&self, copies: impl Iterator<Item = usize>) -> u32 {
        copies.fold(0, |m, c| m | 1 << self.comp_of[c])
    }

    /// Ring with `ring_len` points, `(copy, point)` attachments, all copies
    /// of the components in `mask` inside.
    pub fn ok(&mut self, ring_len: usize, atts: &[(usize, usize)], mask: u32) -> bool {
        let mut key_atts = atts.to_vec();
        key_atts.sort_unstable();
        key_atts.dedup();
        let key = (ring_len, key_atts, mask);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let copies = self.copies_of(mask);
        let local = |c: usize| copies.binary_search(&c).unwrap();
        let edges: Vec<(usize, usize)> = self
            .wedge
            .iter()
            .filter(|(a, b)| copies.binary_search(a).is_ok() && copies.binary_search(b).is_ok())
            .map(|&(a, b)| (local(a), local(b)))
            .collect();
        let la: Vec<(usize, usize)> = key.1.iter().map(|&(c, p)| (local(c), p)).collect();
        let r = disk_planar(ring_len, copies.len(), &edges, &la);
        self.memo.insert(key, r);
        r
    }

    pub fn nesting(&self, seq: &[u32]) -> NestingGraph {
        let s: Vec<usize> = seq.iter().map(|&c| c as usize).collect();
        let inner = self.copies_of(self.mask_of(s.iter().copied()));
        NestingGraph::from_sequence(&s, &inner, &self.wedge)
    }
}

const UNPLACED: u32 = 0;
const CLOSED: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    /// One arc per current face of the node, in face order.
    arcs: Vec<Vec<u32>>,
    /// Per copy component: unplaced, closed, or current face + 2.
    place: Vec<u32>,
    covered: u128,
}

enum Deriv {
    Leaf(Vec<Attach>),
    Merge(usize, usize),
}

#[derive(Default)]
struct Table {
    states: Vec<State>,
    derivs: Vec<Deriv>,
    index: HashMap<State, usize>,
}

impl Table {
    fn insert(&mut self, s: State, d: Deriv, node: usize, limit: usize) -> Result<()> {
        if self.index.contains_key(&s) {
            return Ok(());
        }
        if self.states.len() >= limit {
            return Err(Error::TableBudgetExceeded { node, limit });
        }
        self.index.insert(s.clone(), self.states.len());
        self.states.push(s);
        self.derivs.push(d);
        Ok(())
    }
}

struct NodeInfo {
    faces: Vec<usize>,
    /// Walk interval `(start, len)` per current face.
    span: Vec<(usize, usize)>,
}

fn node_info(part: &Part, rooted: &RootedScd, t: usize) -> NodeInfo {
    let d = &part.d;
    let node = &rooted.nodes[t];
    let mut faces: Vec<usize> = node.noose.iter().map(|&(_, f)| f).collect();
    faces.sort_unstable();
    let mut inside = vec![false; d.num_half_edges()];
    for &h in &node.below {
        inside[h] = true;
        inside[d.twin(h)] = true;
    }
    let span = faces
        .iter()
        .map(|&f| {
            let w = &d.faces()[f].walks[0];
            let l = w.len();
            let start = (0..l).find(|&i| inside[w[i]] && !inside[w[(i + l - 1) % l]]).unwrap_or(0);
            (start, w.iter().filter(|&&h| inside[h]).count())
        })
        .collect();
    NodeInfo { faces, span }
}

fn bits_at(part: &Part, verts: &[usize]) -> u128 {
    verts.iter().flat_map(|&v| part.adj_at[v].iter()).fold(0u128, |m, &a| m | 1 << a)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub(crate) struct Engine<'a> {
    pub part: &'a Part,
    pub adjs: &'a [(usize, usize)],
    pub hyp: &'a SplitHypothesis,
    pub strat: &'a dyn DpStrategy,
    pub opts: &'a DpOptions,
}

impl<'a> Engine<'a> {
    /// Root options: copy-component mask of the components placed in this
    /// part, with the attachments of one derivation.
    pub fn run(&self, real: &mut Realizer, trace: &mut DpTrace) -> Result<Vec<(u32, Vec<Attach>)>> {
        let Some(scd) = &self.part.scd else {
            return self.isolated(real);
        };
        let root_edge = self.opts.root_edge.unwrap_or(0) % scd.edges.len();
        let rooted = crate::scd::root_scd(scd, root_edge);
        let n = rooted.nodes.len();
        let info: Vec<NodeInfo> = (0..n).map(|t| node_info(self.part, &rooted, t)).collect();
        let mut tables: Vec<Option<Table>> = (0..n).map(|_| None).collect();
        for t in (0..n).rev() {
            let table = match rooted.nodes[t].edge {
                Some(h) => self.leaf(t, h, &info[t], real)?,
                None => {
                    let (c1, c2) = (rooted.nodes[t].children[0], rooted.nodes[t].children[1]);
                    let t1 = tables[c1].take().unwrap();
                    let t2 = tables[c2].take().unwrap();
                    let mut leaving: Vec<usize> = rooted.nodes[c1].mid.clone();
                    leaving.extend(&rooted.nodes[c2].mid);
                    leaving.sort_unstable();
                    leaving.dedup();
                    leaving.retain(|v| rooted.nodes[t].mid.binary_search(v).is_err());
                    let req = bits_at(self.part, &leaving);
                    let merged = self.merge(t, &info[t], (&info[c1], &t1), (&info[c2], &t2), req, real)?;
                    tables[c1] = Some(t1);
                    tables[c2] = Some(t2);
                    merged
                }
            };
            trace.entries += table.states.len();
            trace.max_table = trace.max_table.max(table.states.len());
            if self.opts.check_nesting && self.strat.has_nesting() {
                for s in &table.states {
                    for arc in &s.arcs {
                        if arc.is_empty() {
                            continue;
                        }
                        let mut seq = arc.clone();
                        compress_cyclic(&mut seq);
                        trace.nesting_checked += 1;
                        if !real.nesting(&seq).check(&real.wedge).is_empty() {
                            trace.nesting_violations += 1;
                        }
                    }
                }
            }
            tables[t] = Some(table);
        }
        let root = tables[0].as_ref().unwrap();
        let mut out: Vec<(u32, Vec<Attach>)> = Vec::new();
        for (i, s) in root.states.iter().enumerate() {
            let mask = s.place.iter().enumerate().filter(|(_, &p)| p == CLOSED).fold(0u32, |m, (k, _)| m | 1 << k);
            if out.iter().any(|(m, _)| *m == mask) {
                continue;
            }
            let mut atts = Vec::new();
            collect(&rooted, &tables, 0, i, &mut atts)?;
            out.push((mask, atts));
        }
        Ok(out)
    }

    /// A part consisting of one vertex without edges.
    fn isolated(&self, real: &mut Realizer) -> Result<Vec<(u32, Vec<Attach>)>> {
        let adjs = &self.part.adj_at[0];
        let mut out: Vec<(u32, Vec<Attach>)> = Vec::new();
        let mut pick = vec![0usize; adjs.len()];
        loop {
            let atts: Vec<Attach> = adjs
                .iter()
                .zip(&pick)
                .map(|(&a, &j)| Attach { adj: a, copy: self.hyp.copies[self.adjs[a].0][j], corner: PartCorner::Isolated(0) })
                .collect();
            let mask = real.mask_of(atts.iter().map(|x| x.copy));
            let ring: Vec<(usize, usize)> = atts.iter().map(|x| (x.copy, 0)).collect();
            if !out.iter().any(|(m, _)| *m == mask) && real.ok(1, &ring, mask) {
                out.push((mask, atts));
            }
            let mut i = 0;
            while i < pick.len() && pick[i] + 1 == self.hyp.copies[self.adjs[adjs[i]].0].len() {
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                return Ok(out);
            }
            pick[i] += 1;
        }
    }

    fn leaf(&self, t: usize, h: usize, info: &NodeInfo, real: &mut Realizer) -> Result<Table> {
        let d = &self.part.d;
        let tw = d.twin(h);
        let (u, v) = (d.origin(h), d.head(h));
        let (f1, f2) = (d.face_of(h), d.face_of(tw));
        // corner halves along f1 then along f2, in walk order
        let slots = [(f1, h, u), (f1, d.next(h), v), (f2, tw, v), (f2, d.next(tw), u)];
        let ncomp = real.comp_copies.len();
        let at: Vec<(usize, usize)> =
            self.part.adj_at[u].iter().map(|&a| (a, u)).chain(self.part.adj_at[v].iter().map(|&a| (a, v))).collect();
        let adjs: Vec<usize> = at.iter().map(|x| x.0).collect();
        let options: Vec<Vec<Option<(usize, usize)>>> = at
            .iter()
            .map(|&(a, p)| {
                let cand = self.adjs[a].0;
                let mut o = vec![None];
                for (si, &(f, _, w)) in slots.iter().enumerate() {
                    if w == p && self.part.allowed[f] {
                        for &c in &self.hyp.copies[cand] {
                            o.push(Some((si, c)));
                        }
                    }
                }
                o
            })
            .collect();
        let fi1 = info.faces.binary_search(&f1).unwrap();
        let fi2 = info.faces.binary_search(&f2).unwrap();
        let mut table = Table::default();
        let mut pick = vec![0usize; adjs.len()];
        'outer: loop {
            let mut place = vec![UNPLACED; ncomp];
            let mut items: [Vec<(usize, usize)>; 4] = Default::default();
            let mut atts = Vec::new();
            let mut covered = 0u128;
            let mut ok = true;
            for (j, &a) in adjs.iter().enumerate() {
                if let Some((si, c)) = options[j][pick[j]] {
                    let (f, x, _) = slots[si];
                    let k = real.comp_of[c];
                    if place[k] != UNPLACED && place[k] != f as u32 + 2 {
                        ok = false;
                        break;
                    }
                    place[k] = f as u32 + 2;
                    items[si].push((c, self.part.pos[x]));
                    atts.push(Attach { adj: a, copy: c, corner: PartCorner::Half(x) });
                    covered |= 1 << a;
                }
            }
            if ok {
                let orders: Vec<Vec<Vec<usize>>> = items
                    .iter()
                    .map(|it| if self.strat.ordered() { permutations(it.len()) } else { vec![(0..it.len()).collect()] })
                    .collect();
                let mut op = [0usize; 4];
                loop {
                    let seq = |s: usize| -> Vec<(usize, usize)> { orders[s][op[s]].iter().map(|&i| items[s][i]).collect() };
                    let mut a1 = seq(0);
                    a1.extend(seq(1));
                    let mut a2 = seq(2);
                    a2.extend(seq(3));
                    let arc1 = self.strat.leaf_arc(&a1);
                    let arc2 = self.strat.leaf_arc(&a2);
                    if self.strat.open_ok(real, &arc1, self.part.walk_len[f1])
                        && self.strat.open_ok(real, &arc2, self.part.walk_len[f2])
                    {
                        let mut arcs = vec![Vec::new(); info.faces.len()];
                        arcs[fi1] = arc1;
                        arcs[fi2] = arc2;
                        let s = State { arcs, place: place.clone(), covered };
                        table.insert(s, Deriv::Leaf(atts.clone()), t, self.opts.max_entries)?;
                    }
                    let mut i = 0;
                    while i < 4 && op[i] + 1 == orders[i].len() {
                        op[i] = 0;
                        i += 1;
                    }
                    if i == 4 {
                        break;
                    }
                    op[i] += 1;
                }
            }
            let mut i = 0;
            while i < pick.len() && pick[i] + 1 == options[i].len() {
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break 'outer;
            }
            pick[i] += 1;
        }
        Ok(table)
    }

    fn merge(
        &self,
        t: usize,
        info: &NodeInfo,
        (i1, t1): (&NodeInfo, &Table),
        (i2, t2): (&NodeInfo, &Table),
        req: u128,
        real: &mut Realizer,
    ) -> Result<Table> {
        enum Src {
            One(usize, usize),
            Both { a: usize, b: usize, first_left: bool },
        }
        // how every face of t and every closing face is built
        let mut open: Vec<Src> = Vec::new();
        let mut closing: Vec<(usize, usize, usize, bool)> = Vec::new();
        for (k, &f) in info.faces.iter().enumerate() {
            let a = i1.faces.binary_search(&f).ok();
            let b = i2.faces.binary_search(&f).ok();
            open.push(match (a, b) {
                (Some(a), Some(b)) => {
                    let l = self.part.walk_len[f];
                    let (s1, l1) = i1.span[a];
                    Src::Both { a, b, first_left: (s1 + l1) % l == i2.span[b].0 }
                }
                (Some(a), None) => Src::One(1, a),
                (None, Some(b)) => Src::One(2, b),
                (None, None) => return Err(Error::InvalidDrawing(format!("face {f} current at node {t} only"))),
            });
            debug_assert_eq!(k, open.len() - 1);
        }
        for (a, &f) in i1.faces.iter().enumerate() {
            if info.faces.binary_search(&f).is_err() {
                let b = i2.faces.binary_search(&f).map_err(|_| Error::InvalidDrawing(format!("face {f} vanished")))?;
                let l = self.part.walk_len[f];
                let (s1, l1) = i1.span[a];
                closing.push((f, a, b, (s1 + l1) % l == i2.span[b].0));
            }
        }
        let ncomp = real.comp_copies.len();
        let mut table = Table::default();
        for (x, s1) in t1.states.iter().enumerate() {
            for (y, s2) in t2.states.iter().enumerate() {
                if s1.covered & s2.covered != 0 {
                    continue;
                }
                let cov = s1.covered | s2.covered;
                if cov & req != req {
                    continue;
                }
                let mut place = vec![UNPLACED; ncomp];
                let mut ok = true;
                for k in 0..ncomp {
                    place[k] = match (s1.place[k], s2.place[k]) {
                        (UNPLACED, p) | (p, UNPLACED) => p,
                        (p, q) if p == q && p != CLOSED => p,
                        _ => {
                            ok = false;
                            break;
                        }
                    };
                }
                if !ok {
                    continue;
                }
                let mut arcs = Vec::with_capacity(open.len());
                for (k, src) in open.iter().enumerate() {
                    let arc = match *src {
                        Src::One(1, a) => s1.arcs[a].clone(),
                        Src::One(_, b) => s2.arcs[b].clone(),
                        Src::Both { a, b, first_left } => {
                            let arc = if first_left {
                                self.strat.concat(&s1.arcs[a], &s2.arcs[b])
                            } else {
                                self.strat.concat(&s2.arcs[b], &s1.arcs[a])
                            };
                            if !self.strat.open_ok(real, &arc, self.part.walk_len[info.faces[k]]) {
                                ok = false;
                                break;
                            }
                            arc
                        }
                    };
                    arcs.push(arc);
                }
                if !ok {
                    continue;
                }
                for &(f, a, b, first_left) in &closing {
                    let arc = if first_left {
                        self.strat.concat(&s1.arcs[a], &s2.arcs[b])
                    } else {
                        self.strat.concat(&s2.arcs[b], &s1.arcs[a])
                    };
                    let tag = f as u32 + 2;
                    let mask = (0..ncomp).filter(|&k| place[k] == tag).fold(0u32, |m, k| m | 1 << k);
                    if mask != 0 && !self.strat.close_ok(real, &arc, self.part.walk_len[f], mask) {
                        ok = false;
                        break;
                    }
                    for p in place.iter_mut() {
                        if *p == tag {
                            *p = CLOSED;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let s = State { arcs, place, covered: cov & !req };
                table.insert(s, Deriv::Merge(x, y), t, self.opts.max_entries)?;
            }
        }
        Ok(table)
    }
}

fn collect(rooted: &RootedScd, tables: &[Option<Table>], t: usize, i: usize, out: &mut Vec<Attach>) -> Result<()> {
    let table = tables[t].as_ref().ok_or_else(|| Error::ReconstructionGap(format!("no table at node {t}")))?;
    match table.derivs.get(i) {
        Some(Deriv::Leaf(a)) => out.extend(a.iter().copied()),
        Some(Deriv::Merge(x, y)) => {
            let c = &rooted.nodes[t].children;
            collect(rooted, tables, c[0], *x, out)?;
            collect(rooted, tables, c[1], *y, out)?;
        }
        None => return Err(Error::ReconstructionGap(format!("missing entry {i} at node {t}"))),
    }
    Ok(())
}
