use super::{FaceLabels, HalfEdge, TopologicalDrawing, Vertex, VertexKind};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

pub type Rat = BigRational;
pub type Point = (Rat, Rat);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomEdge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    /// Interior polyline points from `u` to `v`.
    pub bends: Vec<Point>,
}

/// Straight-line or polyline drawing with exact rational coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeometricDrawing {
    pub vertices: Vec<(usize, Point)>,
    pub edges: Vec<GeomEdge>,
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn point(x: i64, y: i64) -> Point {
    (rat(x), rat(y))
}

/// Parses a decimal such as `-1.25`, `3`, or a fraction `7/3`.
pub fn parse_decimal(s: &str) -> Option<Rat> {
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.parse().ok()?;
        let b: BigInt = b.parse().ok()?;
        if b.is_zero() {
            return None;
        }
        return Some(Rat::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rat::new(num, den);
    Some(if neg { -r } else { r })
}

/// Writes a rational as a finite decimal when possible, else as `p/q`.
pub fn format_rat(r: &Rat) -> String {
    let mut den = r.denom().clone();
    let mut k = 0usize;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    k = k.max(twos).max(fives);
    if k == 0 {
        return r.numer().to_string();
    }
    let scaled = r * Rat::from_integer(num_traits::pow(BigInt::from(10), k));
    let n = scaled.to_integer();
    let s = n.abs().to_string();
    let s = format!("{:0>width$}", s, width = k + 1);
    let (a, b) = s.split_at(s.len() - k);
    let b = b.trim_end_matches('0');
    format!("{}{}.{}", if n.is_negative() { "-" } else { "" }, a, b)
}

fn orient(a: &Point, b: &Point, c: &Point) -> Rat {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn dot(a: &Point, b: &Point, c: &Point) -> Rat {
    (&b.0 - &a.0) * (&c.0 - &a.0) + (&b.1 - &a.1) * (&c.1 - &a.1)
}

/// Whether `p` lies on the closed segment `ab`.
fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if !orient(a, b, p).is_zero() {
        return false;
    }
    let t = dot(a, b, p);
    !t.is_negative() && t <= dot(a, b, b)
}

enum Meet {
    None,
    Overlap,
    Touch(Point),
    /// Proper crossing with parameters along both segments.
    Proper(Point, Rat, Rat),
}

fn intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> Meet {
    let d1 = sign(&orient(c, d, a));
    let d2 = sign(&orient(c, d, b));
    let d3 = sign(&orient(a, b, c));
    let d4 = sign(&orient(a, b, d));
    if d1 == 0 && d2 == 0 {
        // collinear
        let len = dot(a, b, b);
        let (mut tc, mut td) = (dot(a, b, c) / &len, dot(a, b, d) / &len);
        if tc > td {
            std::mem::swap(&mut tc, &mut td);
        }
        let lo = if tc > Rat::zero() { tc } else { Rat::zero() };
        let hi = if td < Rat::one() { td } else { Rat::one() };
        return match lo.cmp(&hi) {
            Ordering::Less => Meet::Overlap,
            Ordering::Equal => {
                let p = (&a.0 + (&b.0 - &a.0) * &lo, &a.1 + (&b.1 - &a.1) * &lo);
                Meet::Touch(p)
            }
            Ordering::Greater => Meet::None,
        };
    }
    if d1 * d2 < 0 && d3 * d4 < 0 {
        let oa = orient(c, d, a);
        let ob = orient(c, d, b);
        let t = &oa / (&oa - &ob);
        let p = (&a.0 + (&b.0 - &a.0) * &t, &a.1 + (&b.1 - &a.1) * &t);
        let len = dot(c, d, d);
        let s = dot(c, d, &p) / len;
        return Meet::Proper(p, t, s);
    }
    for (p, q, r) in [(a, c, d), (b, c, d), (c, a, b), (d, a, b)] {
        if on_segment(p, q, r) {
            return Meet::Touch(p.clone());
        }
    }
    Meet::None
}

/// Counterclockwise angular key: half-plane then cross product.
fn cmp_ccw(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| -> u8 {
        if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cr = &a.0 * &b.1 - &a.1 * &b.0;
        if cr.is_positive() {
            Ordering::Less
        } else if cr.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn degenerate(msg: String) -> Error {
    Error::DegenerateGeometry(msg)
}

struct Crossing {
    e: usize,
    f: usize,
    point: Point,
    /// (segment index, parameter) along e and along f.
    at_e: (usize, Rat),
    at_f: (usize, Rat),
}

/// Computes the planarization of a simple geometric drawing.
pub fn ingest_geometric(g: &GeometricDrawing) -> Result<TopologicalDrawing> {
    let nv = g.vertices.len();
    let mut vidx: HashMap<usize, usize> = HashMap::new();
    for (i, (id, _)) in g.vertices.iter().enumerate() {
        if vidx.insert(*id, i).is_some() {
            return Err(Error::InvalidDrawing(format!("duplicate vertex id {id}")));
        }
    }
    for i in 0..nv {
        for j in i + 1..nv {
            if g.vertices[i].1 == g.vertices[j].1 {
                return Err(degenerate(format!(
                    "vertices {} and {} coincide",
                    g.vertices[i].0, g.vertices[j].0
                )));
            }
        }
    }
    let mut seen_eids = HashMap::new();
    let mut ends = Vec::with_capacity(g.edges.len());
    let mut polys: Vec<Vec<Point>> = Vec::with_capacity(g.edges.len());
    for e in &g.edges {
        if seen_eids.insert(e.id, ()).is_some() {
            return Err(Error::InvalidDrawing(format!("duplicate edge id {}", e.id)));
        }
        let u = *vidx.get(&e.u).ok_or(Error::UnknownVertex(e.u))?;
        let v = *vidx.get(&e.v).ok_or(Error::UnknownVertex(e.v))?;
        if u == v {
            return Err(Error::InvalidDrawing(format!("edge {} is a loop", e.id)));
        }
        let mut pts = vec![g.vertices[u].1.clone()];
        pts.extend(e.bends.iter().cloned());
        pts.push(g.vertices[v].1.clone());
        for w in pts.windows(2) {
            if w[0] == w[1] {
                return Err(degenerate(format!("edge {} has a zero-length segment", e.id)));
            }
        }
        ends.push((u, v));
        polys.push(pts);
    }
    for (a, ea) in ends.iter().enumerate() {
        for eb in &ends[a + 1..] {
            if (ea.0 == eb.0 && ea.1 == eb.1) || (ea.0 == eb.1 && ea.1 == eb.0) {
                return Err(Error::InvalidDrawing("parallel edges".into()));
            }
        }
    }
    // vertices on edges
    for (x, (xid, p)) in g.vertices.iter().enumerate() {
        for (e, pts) in polys.iter().enumerate() {
            let k = pts.len() - 1;
            for i in 0..k {
                if on_segment(p, &pts[i], &pts[i + 1]) {
                    let ok = (x == ends[e].0 && i == 0 && *p == pts[0]) || (x == ends[e].1 && i == k - 1 && *p == pts[k]);
                    if !ok {
                        return Err(degenerate(format!("edge {} passes through vertex {xid}", g.edges[e].id)));
                    }
                }
            }
        }
    }
    // self-intersections
    for (e, pts) in polys.iter().enumerate() {
        let k = pts.len() - 1;
        for i in 0..k {
            for j in i + 1..k {
                let m = intersect(&pts[i], &pts[i + 1], &pts[j], &pts[j + 1]);
                let bad = match m {
                    Meet::None => false,
                    Meet::Touch(ref q) => !(j == i + 1 && *q == pts[j]),
                    _ => true,
                };
                if bad {
                    return Err(degenerate(format!("edge {} intersects itself", g.edges[e].id)));
                }
            }
        }
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    for e in 0..polys.len() {
        for f in e + 1..polys.len() {
            let shared: Vec<usize> = [ends[e].0, ends[e].1]
                .into_iter()
                .filter(|x| *x == ends[f].0 || *x == ends[f].1)
                .collect();
            let (ide, idf) = (g.edges[e].id, g.edges[f].id);
            let mut found = false;
            for i in 0..polys[e].len() - 1 {
                for j in 0..polys[f].len() - 1 {
                    let (a, b) = (&polys[e][i], &polys[e][i + 1]);
                    let (c, d) = (&polys[f][j], &polys[f][j + 1]);
                    match intersect(a, b, c, d) {
                        Meet::None => {}
                        Meet::Overlap => return Err(degenerate(format!("edges {ide} and {idf} overlap"))),
                        Meet::Touch(p) => {
                            if !shared.iter().any(|&x| g.vertices[x].1 == p) {
                                return Err(degenerate(format!("edges {ide} and {idf} touch or cross at a bend")));
                            }
                        }
                        Meet::Proper(p, t, s) => {
                            if !shared.is_empty() {
                                return Err(degenerate(format!("adjacent edges {ide} and {idf} cross")));
                            }
                            if found {
                                return Err(degenerate(format!("edges {ide} and {idf} cross twice")));
                            }
                            found = true;
                            crossings.push(Crossing { e, f, point: p, at_e: (i, t), at_f: (j, s) });
                        }
                    }
                }
            }
        }
    }
    let mut by_point: BTreeMap<(Rat, Rat), usize> = BTreeMap::new();
    for c in &crossings {
        if by_point.insert(c.point.clone(), c.e).is_some() {
            return Err(degenerate("three edges pass through one crossing point".into()));
        }
    }
    // vertices: reals then crossings
    let mut vertices: Vec<Vertex> = g.vertices.iter().map(|(id, _)| Vertex { id: *id, kind: VertexKind::Real }).collect();
    let mut pos: Vec<Point> = g.vertices.iter().map(|(_, p)| p.clone()).collect();
    let next_id = g.vertices.iter().map(|(id, _)| id + 1).max().unwrap_or(0);
    // per edge: (segment, parameter, planarization vertex)
    let mut along: Vec<Vec<(usize, Rat, usize)>> = vec![Vec::new(); polys.len()];
    for (ci, c) in crossings.iter().enumerate() {
        let x = vertices.len();
        vertices.push(Vertex { id: next_id + ci, kind: VertexKind::Crossing(g.edges[c.e].id, g.edges[c.f].id) });
        pos.push(c.point.clone());
        along[c.e].push((c.at_e.0, c.at_e.1.clone(), x));
        along[c.f].push((c.at_f.0, c.at_f.1.clone(), x));
    }
    let mut half_edges: Vec<HalfEdge> = Vec::new();
    let mut geo: Vec<Vec<Point>> = Vec::new();
    for (e, pts) in polys.iter().enumerate() {
        let list = &mut along[e];
        list.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let eid = g.edges[e].id;
        let mut cur = ends[e].0;
        let mut cur_pts = vec![pts[0].clone()];
        let mut seg = 0;
        let push = |from: usize, to: usize, pl: Vec<Point>, half_edges: &mut Vec<HalfEdge>, geo: &mut Vec<Vec<Point>>| {
            let h = half_edges.len();
            half_edges.push(HalfEdge { origin: from, twin: h + 1, edge: eid });
            half_edges.push(HalfEdge { origin: to, twin: h, edge: eid });
            let mut rev = pl.clone();
            rev.reverse();
            geo.push(pl);
            geo.push(rev);
        };
        for (s, _, x) in list.iter() {
            while seg < *s {
                seg += 1;
                cur_pts.push(pts[seg].clone());
            }
            cur_pts.push(pos[*x].clone());
            push(cur, *x, std::mem::take(&mut cur_pts), &mut half_edges, &mut geo);
            cur = *x;
            cur_pts.push(pos[*x].clone());
        }
        while seg + 1 < pts.len() {
            seg += 1;
            cur_pts.push(pts[seg].clone());
        }
        push(cur, ends[e].1, cur_pts, &mut half_edges, &mut geo);
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (h, he) in half_edges.iter().enumerate() {
        rot[he.origin].push(h);
    }
    for r in rot.iter_mut() {
        let dir = |h: usize| -> Point {
            let p = &geo[h];
            (&p[1].0 - &p[0].0, &p[1].1 - &p[0].1)
        };
        // clockwise is the reverse of counterclockwise
        r.sort_by(|&a, &b| cmp_ccw(&dir(b), &dir(a)));
    }
    let mut d = TopologicalDrawing::unlabeled(vertices, half_edges, rot)?;
    let walks = d.raw_walks()?;
    let (comp, nc) = d.components();
    let n = d.num_vertices();
    let isolated: Vec<usize> = (0..n).filter(|&v| d.rot[v].is_empty()).collect();
    let polygon = |w: &[usize]| -> Vec<Point> {
        let mut out = Vec::new();
        for &h in w {
            let pl = &geo[h];
            out.extend(pl[..pl.len() - 1].iter().cloned());
        }
        out
    };
    let polys_w: Vec<Vec<Point>> = walks.iter().map(|w| polygon(w)).collect();
    // items: walks, then isolated vertices
    let n_items = walks.len() + isolated.len();
    let item_comp: Vec<usize> = (0..n_items)
        .map(|i| if i < walks.len() { comp[d.half_edges[walks[i][0]].origin] } else { comp[isolated[i - walks.len()]] })
        .collect();
    let mut comp_items: Vec<Vec<usize>> = vec![Vec::new(); nc];
    for (i, &c) in item_comp.iter().enumerate() {
        comp_items[c].push(i);
    }
    let outer_item: Vec<usize> = comp_items
        .iter()
        .map(|items| {
            *items
                .iter()
                .min_by(|&&a, &&b| {
                    let area = |i: usize| if i < walks.len() { signed_area(&polys_w[i]) } else { Rat::zero() };
                    area(a).cmp(&area(b)).then(a.cmp(&b))
                })
                .unwrap()
        })
        .collect();
    let mut labels = None;
    let mut group: Vec<usize> = (0..n_items).collect();
    if nc > 1 {
        let mut rep = vec![0usize; nc];
        for v in 0..n {
            rep[comp[v]] = v;
        }
        // within[c][e]: item of component e containing component c
        let mut within = vec![vec![usize::MAX; nc]; nc];
        for c in 0..nc {
            let p = &pos[rep[c]];
            for e in 0..nc {
                if e == c {
                    continue;
                }
                within[c][e] = comp_items[e]
                    .iter()
                    .copied()
                    .find(|&i| i < walks.len() && winding(&polys_w[i], p) > 0)
                    .unwrap_or(outer_item[e]);
            }
        }
        let mut parent: Vec<usize> = (0..n_items).collect();
        for i in 0..n_items {
            for j in i + 1..n_items {
                let (c, e) = (item_comp[i], item_comp[j]);
                if c == e || within[e][c] != i || within[c][e] != j {
                    continue;
                }
                if (0..nc).all(|x| x == c || x == e || within[c][x] == within[e][x]) {
                    let a = find(&mut parent, i);
                    let b = find(&mut parent, j);
                    parent[a] = b;
                }
            }
        }
        for i in 0..n_items {
            group[i] = find(&mut parent, i);
        }
        let mut l = FaceLabels { half_edge: vec![None; d.half_edges.len()], isolated: vec![None; n] };
        for (i, w) in walks.iter().enumerate() {
            for &h in w {
                l.half_edge[h] = Some(group[i]);
            }
        }
        for (k, &v) in isolated.iter().enumerate() {
            l.isolated[v] = Some(group[walks.len() + k]);
        }
        labels = Some(l);
    }
    d.assign_faces(labels)?;
    if nc > 0 {
        let o = outer_item[0];
        d.outer_face = Some(if o < walks.len() {
            d.face_of(walks[o][0])
        } else {
            d.isolated_face(isolated[o - walks.len()]).unwrap()
        });
    }
    Ok(d)
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Twice the signed area of a closed polygon (positive when counterclockwise).
fn signed_area(poly: &[Point]) -> Rat {
    let mut s = Rat::zero();
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        s += &a.0 * &b.1 - &a.1 * &b.0;
    }
    s
}

/// Winding number of a closed polygon around `p`, which must not lie on it.
fn winding(poly: &[Point], p: &Point) -> i64 {
    let mut wn = 0;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        if a.1 <= p.1 {
            if b.1 > p.1 && orient(a, b, p).is_positive() {
                wn += 1;
            }
        } else if b.1 <= p.1 && orient(a, b, p).is_negative() {
            wn -= 1;
        }
    }
    wn
}

impl GeometricDrawing {
    pub fn straight(vertices: &[(usize, Point)], edges: &[(usize, usize)]) -> Self {
        GeometricDrawing {
            vertices: vertices.to_vec(),
            edges: edges.iter().enumerate().map(|(i, &(u, v))| GeomEdge { id: i, u, v, bends: Vec::new() }).collect(),
        }
    }

    /// Number of properly crossing edge pairs, by direct pairwise segment tests.
    pub fn count_crossings_naive(&self) -> usize {
        let pos: HashMap<usize, &Point> = self.vertices.iter().map(|(i, p)| (*i, p)).collect();
        let poly = |e: &GeomEdge| -> Vec<Point> {
            let mut v = vec![pos[&e.u].clone()];
            v.extend(e.bends.iter().cloned());
            v.push(pos[&e.v].clone());
            v
        };
        let mut count = 0;
        for (i, a) in self.edges.iter().enumerate() {
            let pa = poly(a);
            for b in &self.edges[i + 1..] {
                let pb = poly(b);
                let mut hit = false;
                for s in pa.windows(2) {
                    for t in pb.windows(2) {
                        if let Meet::Proper(..) = intersect(&s[0], &s[1], &t[0], &t[1]) {
                            hit = true;
                        }
                    }
                }
                count += hit as usize;
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::validate;

    fn k33_convex() -> GeometricDrawing {
        // convex hexagon without concurrent diagonals, parts alternate
        let pts = [(3, 0), (2, 2), (-1, 3), (-3, 1), (-2, -2), (1, -3)];
        let vs: Vec<(usize, Point)> = pts.iter().enumerate().map(|(i, &(x, y))| (i, point(x, y))).collect();
        let mut es = Vec::new();
        for a in [0, 2, 4] {
            for b in [1, 3, 5] {
                es.push((a, b));
            }
        }
        GeometricDrawing::straight(&vs, &es)
    }

    #[test]
    fn triangle_ingests() {
        let g = GeometricDrawing::straight(&[(0, point(0, 0)), (1, point(1, 0)), (2, point(0, 1))], &[(0, 1), (1, 2), (2, 0)]);
        let d = ingest_geometric(&g).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.num_faces(), 2);
        assert!(d.outer_face.is_some());
        // the outer face walk is clockwise: its area is negative
        let f = d.outer_face.unwrap();
        assert_eq!(d.faces()[f].walks[0].len(), 3);
    }

    #[test]
    fn k33_crossings_match_naive_count() {
        let g = k33_convex();
        let d = ingest_geometric(&g).unwrap();
        assert_eq!(d.crossing_count(), g.count_crossings_naive());
        assert_eq!(d.crossing_count(), 3);
        assert!(validate(&d).is_empty());
    }

    #[test]
    fn rejects_three_concurrent() {
        let vs = [(0, point(-1, 0)), (1, point(1, 0)), (2, point(0, -1)), (3, point(0, 1)), (4, point(-1, -1)), (5, point(1, 1))];
        let g = GeometricDrawing::straight(&vs, &[(0, 1), (2, 3), (4, 5)]);
        assert!(matches!(ingest_geometric(&g), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn rejects_overlap_and_adjacent_crossing() {
        let vs = [(0, point(0, 0)), (1, point(2, 0)), (2, point(1, 0)), (3, point(3, 0))];
        let g = GeometricDrawing::straight(&vs, &[(0, 1), (2, 3)]);
        assert!(matches!(ingest_geometric(&g), Err(Error::DegenerateGeometry(_))));
        let vs = [(0, point(0, 0)), (1, point(2, 2)), (3, point(0, 2))];
        let mut g = GeometricDrawing::straight(&vs, &[(0, 1), (0, 3)]);
        g.edges[1].bends = vec![point(2, 0)];
        assert!(matches!(ingest_geometric(&g), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn rejects_edge_through_vertex() {
        let vs = [(0, point(0, 0)), (1, point(2, 0)), (2, point(1, 0))];
        let g = GeometricDrawing::straight(&vs, &[(0, 1)]);
        assert!(matches!(ingest_geometric(&g), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn nested_components_get_consistent_faces() {
        // big triangle containing a small triangle, plus an isolated vertex outside
        let vs = [
            (0, point(0, 0)),
            (1, point(10, 0)),
            (2, point(0, 10)),
            (3, point(1, 1)),
            (4, point(2, 1)),
            (5, point(1, 2)),
            (6, point(20, 20)),
        ];
        let g = GeometricDrawing::straight(&vs, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let d = ingest_geometric(&g).unwrap();
        assert_eq!(d.num_faces(), 3);
        assert!(d.euler_ok());
        let outer = d.outer_face.unwrap();
        assert_eq!(d.isolated_face(6), Some(outer));
        assert_eq!(d.faces()[outer].walks.len(), 1);
        let between = (0..3).find(|&f| d.faces()[f].walks.len() == 2).unwrap();
        assert_ne!(between, outer);
    }

    #[test]
    fn polyline_crossing_is_found() {
        let vs = [(0, point(0, 0)), (1, point(4, 0)), (2, point(2, -1)), (3, point(5, 2))];
        let mut g = GeometricDrawing::straight(&vs, &[(0, 1), (2, 3)]);
        g.edges[1].bends = vec![point(2, 1)];
        let d = ingest_geometric(&g).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(g.count_crossings_naive(), 1);
        assert!(validate(&d).is_empty());
        // a second pass through the x-axis is a double crossing
        g.edges[1].bends = vec![point(2, 1), point(3, -1)];
        assert!(matches!(ingest_geometric(&g), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn decimals_round_trip() {
        for s in ["0", "-1.25", "3.5", "0.001", "12"] {
            assert_eq!(format_rat(&parse_decimal(s).unwrap()), s);
        }
        assert_eq!(format_rat(&parse_decimal("1/3").unwrap()), "1/3");
        assert!(parse_decimal("1.2.3").is_none());
    }
}
