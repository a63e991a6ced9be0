use super::{cap, Meter, OracleBudget};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::is_planar;
use crate::ssre_prep::SsreInstance;
use serde::Serialize;
use std::collections::HashMap;

/// A solution found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleWitness {
    pub counts: Vec<usize>,
    /// Candidate position of each copy.
    pub orig: Vec<usize>,
    /// Neighbour ids of each copy (drawn vertices and other candidates).
    pub neighborhoods: Vec<Vec<usize>>,
    /// Face of Γ hosting each copy; `None` for copies drawn apart from Γ.
    pub faces: Vec<Option<usize>>,
}

/// Whether copies can be drawn inside a disk whose boundary carries
/// `ring_len` points in cyclic order. Copy `c` is joined to the boundary
/// points listed in `attachments` and to other copies by `copy_edges`.
pub fn apex_realizable(ring_len: usize, copies: usize, copy_edges: &[(usize, usize)], attachments: &[(usize, usize)]) -> bool {
    // ring points, two subdivision points per gap, apex, copies
    let ring = 3 * ring_len;
    let apex = ring;
    let mut g = Graph::new(ring + 1 + copies);
    for i in 0..ring {
        g.add_edge(i, (i + 1) % ring);
        g.add_edge(apex, i);
    }
    for &(a, b) in copy_edges {
        g.add_edge(ring + 1 + a, ring + 1 + b);
    }
    for &(c, p) in attachments {
        g.add_edge(ring + 1 + c, 3 * p);
    }
    is_planar(&g)
}

struct Ctx<'a> {
    inst: &'a SsreInstance,
    /// Boundary occurrences (vertex indices) of faces with a single boundary item.
    rings: Vec<Option<Vec<usize>>>,
    meter: Meter,
    memo: HashMap<(usize, Vec<usize>), bool>,
}

/// Exhaustive decision procedure for Split Set Re-Embedding.
pub fn oracle_ssre(inst: &SsreInstance, budget: &OracleBudget) -> Result<Option<OracleWitness>> {
    let s = inst.s();
    if s == 0 {
        return Ok(Some(OracleWitness { counts: vec![], orig: vec![], neighborhoods: vec![], faces: vec![] }));
    }
    if inst.k < s {
        return Ok(None);
    }
    let d = &inst.drawing;
    cap("vertices", d.num_vertices(), budget.max_vertices)?;
    cap("faces", d.num_faces(), budget.max_faces)?;
    cap("copies", s + inst.k, budget.max_copies)?;
    let pistils = inst.pistils();
    let mut rings = Vec::new();
    for f in d.faces() {
        let items = f.walks.len() + f.isolated.len();
        let ring: Vec<usize> = f.occurrences(d).collect();
        if items == 1 {
            rings.push(Some(ring));
        } else {
            if ring.iter().any(|v| pistils.binary_search(v).is_ok()) {
                return Err(Error::Unsupported(format!("face {} touches a pistil and has several boundary parts", f.id)));
            }
            rings.push(None);
        }
    }
    let mut ctx = Ctx { inst, rings, meter: Meter::new(budget), memo: HashMap::new() };
    let mut counts = vec![2; s];
    search_counts(&mut ctx, &mut counts, 0, inst.k - s)
}

fn search_counts(ctx: &mut Ctx, counts: &mut Vec<usize>, i: usize, left: usize) -> Result<Option<OracleWitness>> {
    if i == counts.len() {
        return search_assignment(ctx, counts);
    }
    for extra in 0..=left {
        counts[i] = 2 + extra;
        if let Some(w) = search_counts(ctx, counts, i + 1, left - extra)? {
            return Ok(Some(w));
        }
    }
    counts[i] = 2;
    Ok(None)
}

/// Restricted-growth strings of length `n` over at most `c` labels.
fn growth_strings(n: usize, c: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, c: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..=(max + 1).min(c - 1) {
            cur.push(x);
            rec(n, c, max.max(x), cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    cur.push(0);
    rec(n, c, 0, &mut cur, &mut out);
    out
}

fn search_assignment(ctx: &mut Ctx, counts: &[usize]) -> Result<Option<OracleWitness>> {
    let inst = ctx.inst;
    let s = counts.len();
    let mut first = Vec::with_capacity(s);
    let mut orig = Vec::new();
    for (i, &c) in counts.iter().enumerate() {
        first.push(orig.len());
        orig.extend(std::iter::repeat(i).take(c));
    }
    let options: Vec<Vec<Vec<usize>>> = (0..s).map(|i| growth_strings(inst.adjacency[i].len(), counts[i])).collect();
    let mut pick = vec![0usize; s];
    loop {
        ctx.meter.tick()?;
        let chosen: Vec<&Vec<usize>> = (0..s).map(|i| &options[i][pick[i]]).collect();
        let mut nbhd: Vec<Vec<usize>> = vec![Vec::new(); orig.len()];
        for i in 0..s {
            for (j, &w) in inst.adjacency[i].iter().enumerate() {
                nbhd[first[i] + chosen[i][j]].push(w);
            }
        }
        let mut edges = Vec::new();
        for i in 0..s {
            for (j, &w) in inst.adjacency[i].iter().enumerate() {
                if let Some(t) = inst.candidates.iter().position(|&x| x == w) {
                    if i < t {
                        let back = inst.adjacency[t].iter().position(|&x| x == inst.candidates[i]).unwrap();
                        edges.push((first[i] + chosen[i][j], first[t] + chosen[t][back]));
                    }
                }
            }
        }
        if let Some(faces) = place(ctx, &nbhd, &edges)? {
            let mut neighborhoods = nbhd;
            for n in &mut neighborhoods {
                n.sort_unstable();
            }
            return Ok(Some(OracleWitness { counts: counts.to_vec(), orig, neighborhoods, faces }));
        }
        let mut i = 0;
        while i < s && pick[i] + 1 == options[i].len() {
            pick[i] = 0;
            i += 1;
        }
        if i == s {
            return Ok(None);
        }
        pick[i] += 1;
    }
}

/// Chooses a face per connected group of copies. Returns the face of each copy.
fn place(ctx: &mut Ctx, nbhd: &[Vec<usize>], edges: &[(usize, usize)]) -> Result<Option<Vec<Option<usize>>>> {
    let d = &ctx.inst.drawing;
    let nc = nbhd.len();
    let mut g = Graph::new(nc);
    for &(a, b) in edges {
        g.add_edge(a, b);
    }
    let (comp, ncomp) = g.components();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for c in 0..nc {
        groups[comp[c]].push(c);
    }
    let mut hosts: Vec<Vec<usize>> = Vec::new();
    let mut attached = Vec::new();
    for (gi, grp) in groups.iter().enumerate() {
        let mut need: Vec<usize> = grp.iter().flat_map(|&c| nbhd[c].iter().filter_map(|&w| d.index_of(w))).collect();
        need.sort_unstable();
        need.dedup();
        if need.is_empty() {
            let verts: Vec<usize> = grp.clone();
            if !is_planar(&g.induced(&verts)) {
                return Ok(None);
            }
            continue;
        }
        let fs: Vec<usize> = (0..d.num_faces())
            .filter(|&f| match &ctx.rings[f] {
                Some(r) => need.iter().all(|p| r.contains(p)),
                None => false,
            })
            .collect();
        if fs.is_empty() {
            return Ok(None);
        }
        hosts.push(fs);
        attached.push(gi);
    }
    let mut pick = vec![0usize; hosts.len()];
    loop {
        ctx.meter.tick()?;
        let mut by_face: HashMap<usize, Vec<usize>> = HashMap::new();
        for (j, &gi) in attached.iter().enumerate() {
            by_face.entry(hosts[j][pick[j]]).or_default().push(gi);
        }
        let mut ok = true;
        let mut faces: Vec<usize> = by_face.keys().copied().collect();
        faces.sort_unstable();
        for f in faces {
            let gs = &by_face[&f];
            let copies: Vec<usize> = gs.iter().flat_map(|&gi| groups[gi].iter().copied()).collect();
            if !face_realizable(ctx, f, &copies, nbhd, edges)? {
                ok = false;
                break;
            }
        }
        if ok {
            let mut out = vec![None; nc];
            for (j, &gi) in attached.iter().enumerate() {
                for &c in &groups[gi] {
                    out[c] = Some(hosts[j][pick[j]]);
                }
            }
            return Ok(Some(out));
        }
        let mut i = 0;
        while i < pick.len() && pick[i] + 1 == hosts[i].len() {
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            return Ok(None);
        }
        pick[i] += 1;
    }
}

/// Tries every choice of boundary occurrence for every attachment in face `f`.
fn face_realizable(ctx: &mut Ctx, f: usize, copies: &[usize], nbhd: &[Vec<usize>], edges: &[(usize, usize)]) -> Result<bool> {
    let d = &ctx.inst.drawing;
    let mut key_parts: Vec<usize> = Vec::new();
    let local: HashMap<usize, usize> = copies.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut atts: Vec<(usize, usize)> = Vec::new();
    for &c in copies {
        for &w in &nbhd[c] {
            if let Some(p) = d.index_of(w) {
                atts.push((local[&c], p));
            }
        }
    }
    let local_edges: Vec<(usize, usize)> = edges
        .iter()
        .filter(|(a, b)| local.contains_key(a) && local.contains_key(b))
        .map(|(a, b)| (local[a], local[b]))
        .collect();
    // memo key: copy count, edges, attachments
    key_parts.push(copies.len());
    for &(a, b) in &local_edges {
        key_parts.extend([a, b]);
    }
    key_parts.push(usize::MAX);
    for &(c, p) in &atts {
        key_parts.extend([c, p]);
    }
    if let Some(&r) = ctx.memo.get(&(f, key_parts.clone())) {
        return Ok(r);
    }
    let ring = ctx.rings[f].clone().unwrap();
    let occ: Vec<Vec<usize>> =
        atts.iter().map(|&(_, p)| (0..ring.len()).filter(|&i| ring[i] == p).collect()).collect();
    let mut pick = vec![0usize; atts.len()];
    let mut found = false;
    loop {
        ctx.meter.tick()?;
        let placed: Vec<(usize, usize)> = atts.iter().enumerate().map(|(i, &(c, _))| (c, occ[i][pick[i]])).collect();
        if apex_realizable(ring.len(), copies.len(), &local_edges, &placed) {
            found = true;
            break;
        }
        let mut i = 0;
        while i < pick.len() && pick[i] + 1 == occ[i].len() {
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
        pick[i] += 1;
    }
    ctx.memo.insert((f, key_parts), found);
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_strings_count_partitions() {
        // Stirling numbers: partitions of 4 items into at most 2 blocks = 1 + 7
        assert_eq!(growth_strings(4, 2).len(), 8);
        assert_eq!(growth_strings(0, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn interleaving_copies_do_not_fit() {
        // ring a b c d; copy 0 on a,c and copy 1 on b,d
        assert!(!apex_realizable(4, 2, &[], &[(0, 0), (0, 2), (1, 1), (1, 3)]));
        assert!(apex_realizable(4, 2, &[], &[(0, 0), (0, 1), (1, 2), (1, 3)]));
        assert!(apex_realizable(1, 1, &[], &[(0, 0)]));
    }
}
