use crate::drawing::TopologicalDrawing;
use std::fmt::Write;

/// Vertices drawn with special marks.
#[derive(Clone, Debug, Default)]
pub struct SvgMarks {
    /// Vertex indices drawn as squares.
    pub pistils: Vec<usize>,
    /// Vertex indices drawn as large circles.
    pub copies: Vec<usize>,
}

const SIZE: f64 = 400.0;

/// Straight-line layout of the planarization: one face of each component on
/// a circle, every other vertex at the barycentre of its neighbours.
fn layout(d: &TopologicalDrawing) -> Vec<(f64, f64)> {
    let n = d.num_vertices();
    let skel = d.skeleton();
    let (comp, nc) = skel.components();
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for c in 0..nc {
        let cx = SIZE * (c as f64 + 0.5);
        let cy = SIZE * 0.5;
        let r = SIZE * 0.4;
        // longest face walk of this component goes outside
        let mut best: Option<&Vec<usize>> = None;
        for f in d.faces() {
            for w in &f.walks {
                if comp[d.origin(w[0])] == c && best.map_or(true, |b| w.len() > b.len()) {
                    best = Some(w);
                }
            }
        }
        let members: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        match best {
            None => {
                for &v in &members {
                    pos[v] = (cx, cy);
                    fixed[v] = true;
                }
            }
            Some(w) => {
                let mut ring: Vec<usize> = Vec::new();
                for &h in w {
                    let v = d.origin(h);
                    if !ring.contains(&v) {
                        ring.push(v);
                    }
                }
                let l = ring.len() as f64;
                for (i, &v) in ring.iter().enumerate() {
                    let a = -2.0 * std::f64::consts::PI * i as f64 / l;
                    pos[v] = (cx + r * a.cos(), cy + r * a.sin());
                    fixed[v] = true;
                }
                for &v in &members {
                    if !fixed[v] {
                        pos[v] = (cx, cy);
                    }
                }
            }
        }
    }
    for _ in 0..500 {
        for v in 0..n {
            if fixed[v] || skel.degree(v) == 0 {
                continue;
            }
            let k = skel.degree(v) as f64;
            let (sx, sy) = skel.neighbors(v).iter().fold((0.0, 0.0), |a, &w| (a.0 + pos[w].0, a.1 + pos[w].1));
            pos[v] = (sx / k, sy / k);
        }
    }
    pos
}

/// SVG rendering: original edges as lines through their crossing points,
/// real vertices as dots, pistils as squares, copies as circles.
pub fn export_svg(d: &TopologicalDrawing, marks: &SvgMarks) -> String {
    let pos = layout(d);
    let (_, nc) = d.components();
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = SIZE * nc.max(1) as f64,
        h = SIZE
    )
    .unwrap();
    for e in d.original_edges().values() {
        let mut pts = vec![e.ends.0];
        pts.extend(&e.crossings);
        pts.push(e.ends.1);
        if pts.len() == 2 {
            let (a, b) = (pos[pts[0]], pos[pts[1]]);
            writeln!(
                s,
                r#"<line class="edge" data-id="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
                e.id, a.0, a.1, b.0, b.1
            )
            .unwrap();
        } else {
            let p: Vec<String> = pts.iter().map(|&v| format!("{:.2},{:.2}", pos[v].0, pos[v].1)).collect();
            writeln!(
                s,
                r#"<polyline class="edge" data-id="{}" points="{}" fill="none" stroke="black"/>"#,
                e.id,
                p.join(" ")
            )
            .unwrap();
        }
    }
    for v in d.real_vertices() {
        let (x, y) = pos[v];
        let id = d.vertex(v).id;
        if marks.pistils.contains(&v) {
            writeln!(s, r#"<rect class="pistil" data-id="{id}" x="{:.2}" y="{:.2}" width="10" height="10"/>"#, x - 5.0, y - 5.0)
                .unwrap();
        } else if marks.copies.contains(&v) {
            writeln!(s, r#"<circle class="copy" data-id="{id}" cx="{x:.2}" cy="{y:.2}" r="7" fill="white" stroke="red"/>"#)
                .unwrap();
        } else {
            writeln!(s, r#"<circle class="vertex" data-id="{id}" cx="{x:.2}" cy="{y:.2}" r="4"/>"#).unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
