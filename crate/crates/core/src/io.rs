//! Text formats: `tdraw` (topological drawings), `gdraw` (geometric
//! drawings) and the SSRE instance file.

use crate::drawing::{
    format_rat, parse_decimal, validate, FaceLabels, GeomEdge, GeometricDrawing, HalfEdge, TopologicalDrawing,
    Vertex, VertexKind,
};
use crate::error::{parse_err, Error, Result};
use std::collections::HashMap;
use std::fmt::Write;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn num(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, got '{s}'")))
}

fn attr<'a>(line: usize, tok: &'a str, key: &str) -> Result<&'a str> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=...")))
}

/// Parses a `tdraw` document and rejects drawings that fail [`validate`].
pub fn parse_tdraw(text: &str) -> Result<TopologicalDrawing> {
    parse_tdraw_lines(&content_lines(text).collect::<Vec<_>>())
}

fn parse_tdraw_lines(lines: &[(usize, &str)]) -> Result<TopologicalDrawing> {
    let mut it = lines.iter();
    match it.next() {
        Some((_, "tdraw 1")) => {}
        Some((l, _)) => return Err(parse_err(*l, "expected header 'tdraw 1'")),
        None => return Err(parse_err(0, "empty input")),
    }
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut vface: Vec<Option<usize>> = Vec::new();
    let mut vindex: HashMap<usize, usize> = HashMap::new();
    // (id, twin id, edge, face)
    let mut hes: Vec<(usize, usize, usize, Option<usize>, usize)> = Vec::new();
    let mut rots: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut crosses: Vec<(usize, usize, usize, usize)> = Vec::new();
    for &(l, line) in it {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "v" => {
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(parse_err(l, "expected 'v <id> real|cross [face=<f>]'"));
                }
                let id = num(l, toks[1])?;
                let kind = match toks[2] {
                    "real" => VertexKind::Real,
                    "cross" => VertexKind::Crossing(usize::MAX, usize::MAX),
                    k => return Err(parse_err(l, format!("unknown vertex kind '{k}'"))),
                };
                let face = match toks.get(3) {
                    Some(t) => Some(num(l, attr(l, t, "face")?)?),
                    None => None,
                };
                if vindex.insert(id, vertices.len()).is_some() {
                    return Err(parse_err(l, format!("duplicate vertex {id}")));
                }
                vertices.push(Vertex { id, kind });
                vface.push(face);
            }
            "he" => {
                if toks.len() < 4 || toks.len() > 5 {
                    return Err(parse_err(l, "expected 'he <id> twin=<id> edge=<eid> [face=<f>]'"));
                }
                let id = num(l, toks[1])?;
                let twin = num(l, attr(l, toks[2], "twin")?)?;
                let edge = num(l, attr(l, toks[3], "edge")?)?;
                let face = match toks.get(4) {
                    Some(t) => Some(num(l, attr(l, t, "face")?)?),
                    None => None,
                };
                hes.push((id, twin, edge, face, l));
            }
            "rot" => {
                if toks.len() < 2 {
                    return Err(parse_err(l, "expected 'rot <id> <he>...'"));
                }
                let v = num(l, toks[1])?;
                let list = toks[2..].iter().map(|t| num(l, t)).collect::<Result<Vec<_>>>()?;
                rots.push((l, v, list));
            }
            "cross" => {
                if toks.len() != 3 {
                    return Err(parse_err(l, "expected 'cross <vid> edges=<e1>,<e2>'"));
                }
                let v = num(l, toks[1])?;
                let (a, b) = attr(l, toks[2], "edges")?
                    .split_once(',')
                    .ok_or_else(|| parse_err(l, "expected edges=<e1>,<e2>"))?;
                crosses.push((l, v, num(l, a)?, num(l, b)?));
            }
            t => return Err(parse_err(l, format!("unknown record '{t}'"))),
        }
    }
    for (l, v, a, b) in crosses {
        let i = *vindex.get(&v).ok_or_else(|| parse_err(l, format!("unknown vertex {v}")))?;
        if vertices[i].is_real() {
            return Err(parse_err(l, format!("vertex {v} is not a crossing")));
        }
        vertices[i].kind = VertexKind::Crossing(a, b);
    }
    if let Some(v) = vertices.iter().find(|v| v.kind == VertexKind::Crossing(usize::MAX, usize::MAX)) {
        return Err(parse_err(0, format!("crossing vertex {} has no 'cross' record", v.id)));
    }
    let mut hindex: HashMap<usize, usize> = HashMap::new();
    for (i, h) in hes.iter().enumerate() {
        if hindex.insert(h.0, i).is_some() {
            return Err(parse_err(h.4, format!("duplicate half-edge {}", h.0)));
        }
    }
    let mut origin = vec![usize::MAX; hes.len()];
    let mut rot = vec![Vec::new(); vertices.len()];
    let mut has_rot = vec![false; vertices.len()];
    for (l, v, list) in rots {
        let vi = *vindex.get(&v).ok_or_else(|| parse_err(l, format!("unknown vertex {v}")))?;
        if has_rot[vi] {
            return Err(parse_err(l, format!("second rotation for vertex {v}")));
        }
        has_rot[vi] = true;
        for h in list {
            let hi = *hindex.get(&h).ok_or_else(|| parse_err(l, format!("unknown half-edge {h}")))?;
            if origin[hi] != usize::MAX {
                return Err(parse_err(l, format!("half-edge {h} appears in two rotations")));
            }
            origin[hi] = vi;
            rot[vi].push(hi);
        }
    }
    let mut half_edges = Vec::with_capacity(hes.len());
    for (i, h) in hes.iter().enumerate() {
        if origin[i] == usize::MAX {
            return Err(parse_err(h.4, format!("half-edge {} is in no rotation", h.0)));
        }
        let twin = *hindex.get(&h.1).ok_or_else(|| parse_err(h.4, format!("unknown twin {}", h.1)))?;
        half_edges.push(HalfEdge { origin: origin[i], twin, edge: h.2 });
    }
    let labelled = hes.iter().any(|h| h.3.is_some()) || vface.iter().any(Option::is_some);
    let labels = labelled.then(|| FaceLabels {
        half_edge: hes.iter().map(|h| h.3).collect(),
        isolated: vface.clone(),
    });
    let d = TopologicalDrawing::from_parts(vertices, half_edges, rot, labels)?;
    let report = validate(&d);
    if !report.is_empty() {
        return Err(Error::InvalidDrawing(format!("{:?}", report.violations)));
    }
    Ok(d)
}

/// Serializes a drawing; face labels are written only when it is disconnected.
pub fn write_tdraw(d: &TopologicalDrawing) -> String {
    let labelled = !d.is_connected();
    let mut s = String::from("tdraw 1\n");
    for (v, vert) in d.vertices().iter().enumerate() {
        let kind = if vert.is_real() { "real" } else { "cross" };
        match d.isolated_face(v) {
            Some(f) if labelled => writeln!(s, "v {} {kind} face={f}", vert.id).unwrap(),
            _ => writeln!(s, "v {} {kind}", vert.id).unwrap(),
        }
    }
    for (h, he) in d.half_edges().iter().enumerate() {
        if labelled {
            writeln!(s, "he {h} twin={} edge={} face={}", he.twin, he.edge, d.face_of(h)).unwrap();
        } else {
            writeln!(s, "he {h} twin={} edge={}", he.twin, he.edge).unwrap();
        }
    }
    for (v, vert) in d.vertices().iter().enumerate() {
        let r: Vec<String> = d.rotation(v).iter().map(|h| h.to_string()).collect();
        if r.is_empty() {
            writeln!(s, "rot {}", vert.id).unwrap();
        } else {
            writeln!(s, "rot {} {}", vert.id, r.join(" ")).unwrap();
        }
    }
    for vert in d.vertices() {
        if let VertexKind::Crossing(a, b) = vert.kind {
            writeln!(s, "cross {} edges={a},{b}", vert.id).unwrap();
        }
    }
    s
}

pub fn parse_gdraw(text: &str) -> Result<GeometricDrawing> {
    let mut it = content_lines(text);
    match it.next() {
        Some((_, "gdraw 1")) => {}
        Some((l, _)) => return Err(parse_err(l, "expected header 'gdraw 1'")),
        None => return Err(parse_err(0, "empty input")),
    }
    let coord = |l: usize, t: &str| parse_decimal(t).ok_or_else(|| parse_err(l, format!("bad coordinate '{t}'")));
    let mut g = GeometricDrawing::default();
    for (l, line) in it {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "v" if toks.len() == 4 => {
                g.vertices.push((num(l, toks[1])?, (coord(l, toks[2])?, coord(l, toks[3])?)));
            }
            "e" if toks.len() >= 4 && toks.len() % 2 == 0 => {
                let bends = toks[4..]
                    .chunks(2)
                    .map(|c| Ok((coord(l, c[0])?, coord(l, c[1])?)))
                    .collect::<Result<Vec<_>>>()?;
                g.edges.push(GeomEdge { id: num(l, toks[1])?, u: num(l, toks[2])?, v: num(l, toks[3])?, bends });
            }
            _ => return Err(parse_err(l, format!("malformed record '{line}'"))),
        }
    }
    Ok(g)
}

pub fn write_gdraw(g: &GeometricDrawing) -> String {
    let mut s = String::from("gdraw 1\n");
    for (id, (x, y)) in &g.vertices {
        writeln!(s, "v {id} {} {}", format_rat(x), format_rat(y)).unwrap();
    }
    for e in &g.edges {
        write!(s, "e {} {} {}", e.id, e.u, e.v).unwrap();
        for (x, y) in &e.bends {
            write!(s, " {} {}", format_rat(x), format_rat(y)).unwrap();
        }
        s.push('\n');
    }
    s
}

/// Raw contents of an SSRE instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsreFile {
    pub drawing: TopologicalDrawing,
    pub candidates: Vec<usize>,
    /// Neighbours (by id) of each candidate in G, in candidate order.
    pub adjacency: Vec<Vec<usize>>,
    pub k: Option<usize>,
}

/// Parses `tdraw` lines, then `S: <ids>`, one `N <id>: <ids>` line per
/// candidate, and an optional `k <n>`.
pub fn parse_ssre(text: &str) -> Result<SsreFile> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let split = lines
        .iter()
        .position(|(_, l)| l.starts_with("S:"))
        .ok_or_else(|| parse_err(0, "missing 'S:' line"))?;
    let drawing = parse_tdraw_lines(&lines[..split])?;
    let ids = |l: usize, s: &str| s.split_whitespace().map(|t| num(l, t)).collect::<Result<Vec<_>>>();
    let (l0, sline) = lines[split];
    let candidates = ids(l0, &sline[2..])?;
    let mut adjacency = vec![None; candidates.len()];
    let mut k = None;
    for &(l, line) in &lines[split + 1..] {
        if let Some(rest) = line.strip_prefix("k ") {
            k = Some(num(l, rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("N ") {
            let (who, nbrs) = rest.split_once(':').ok_or_else(|| parse_err(l, "expected 'N <id>: <ids>'"))?;
            let who = num(l, who.trim())?;
            let i = candidates
                .iter()
                .position(|&c| c == who)
                .ok_or_else(|| parse_err(l, format!("{who} is not a candidate")))?;
            if adjacency[i].is_some() {
                return Err(parse_err(l, format!("second adjacency line for {who}")));
            }
            adjacency[i] = Some(ids(l, nbrs)?);
        } else {
            return Err(parse_err(l, format!("unexpected record '{line}'")));
        }
    }
    let adjacency = adjacency
        .into_iter()
        .zip(&candidates)
        .map(|(a, c)| a.ok_or_else(|| parse_err(0, format!("missing adjacency of candidate {c}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SsreFile { drawing, candidates, adjacency, k })
}

pub fn write_ssre(f: &SsreFile) -> String {
    let mut s = write_tdraw(&f.drawing);
    let j = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(s, "S: {}", j(&f.candidates)).unwrap();
    for (c, a) in f.candidates.iter().zip(&f.adjacency) {
        writeln!(s, "N {c}: {}", j(a)).unwrap();
    }
    if let Some(k) = f.k {
        writeln!(s, "k {k}").unwrap();
    }
    s
}
