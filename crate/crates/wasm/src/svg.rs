//! SVG drawings of graph texts: vertices on a circle, parallel edges fanned
//! out as arcs, loops as petals, arrow marks as arrowheads, the root ringed.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

use graphop::graphs::{Mark, MultiGraph, OrientedMultiGraph, RootedOrientedMultiGraph, RootedTree};
use graphop::{Label, Structure};

const VERTEX_RADIUS: f64 = 11.0;

struct Drawing {
    vertices: Vec<Label>,
    /// `(u, arrow at u, v, arrow at v)`
    edges: Vec<(Label, bool, Label, bool)>,
    root: Option<Label>,
}

fn plain_edges(g: &MultiGraph) -> Vec<(Label, bool, Label, bool)> {
    g.edges().iter().map(|(u, v)| (u.clone(), false, v.clone(), false)).collect()
}

fn marked_edges(g: &OrientedMultiGraph) -> Vec<(Label, bool, Label, bool)> {
    g.edges()
        .iter()
        .map(|(a, b)| (a.vertex.clone(), a.mark == Mark::Arrow, b.vertex.clone(), b.mark == Mark::Arrow))
        .collect()
}

/// Accepts any of the four graph kinds.
fn parse(text: &str) -> Result<Drawing, String> {
    if let Ok(g) = text.parse::<MultiGraph>() {
        return Ok(Drawing { vertices: g.vertices().to_vec(), edges: plain_edges(&g), root: None });
    }
    if let Ok(t) = text.parse::<RootedTree>() {
        let g = t.tree().multigraph();
        return Ok(Drawing { vertices: g.vertices().to_vec(), edges: plain_edges(g), root: Some(t.root().clone()) });
    }
    if let Ok(g) = text.parse::<OrientedMultiGraph>() {
        return Ok(Drawing { vertices: g.vertices().to_vec(), edges: marked_edges(&g), root: None });
    }
    let h = text.parse::<RootedOrientedMultiGraph>().map_err(|e| e.to_string())?;
    Ok(Drawing { vertices: h.vertices().to_vec(), edges: marked_edges(h.graph()), root: Some(h.root().clone()) })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn markers(start: bool, end: bool) -> String {
    let mut m = String::new();
    if start {
        m += r##" marker-start="url(#arrow-start)""##;
    }
    if end {
        m += r##" marker-end="url(#arrow-end)""##;
    }
    m
}

/// A square SVG of side `size` drawing the graph written in `text`.
pub fn render(text: &str, size: u32) -> Result<String, String> {
    let d = parse(text)?;
    let size = f64::from(size.max(80));
    let c = size / 2.0;
    let ring = if d.vertices.len() == 1 { 0.0 } else { size / 2.0 - 34.0 };
    let n = d.vertices.len() as f64;
    let pos: BTreeMap<&Label, (f64, f64)> = d
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let t = -PI / 2.0 + 2.0 * PI * i as f64 / n;
            (v, (c + ring * t.cos(), c + ring * t.sin()))
        })
        .collect();

    let mut out = String::new();
    write!(out, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"##).unwrap();
    out += r##"<defs><marker id="arrow-end" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#333"/></marker><marker id="arrow-start" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="#333"/></marker></defs>"##;

    // parallel copies of the same pair share a fan index
    let mut seen: BTreeMap<(Label, Label), usize> = BTreeMap::new();
    let mut totals: BTreeMap<(Label, Label), usize> = BTreeMap::new();
    for (u, _, v, _) in &d.edges {
        let key = if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
        *totals.entry(key).or_default() += 1;
    }
    for (u, au, v, av) in &d.edges {
        let key = if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
        let k = seen.entry(key.clone()).or_default();
        let i = *k as f64;
        *k += 1;
        let (x, y) = pos[u];
        if u == v {
            // petal pointing away from the centre, growing with each extra loop
            let t = if ring == 0.0 { -PI / 2.0 } else { (y - c).atan2(x - c) };
            let reach = 34.0 + 10.0 * i;
            let spread = 0.45;
            let (s1, s2) = (t - spread, t + spread);
            let (px, py) = (x + VERTEX_RADIUS * s1.cos(), y + VERTEX_RADIUS * s1.sin());
            let (qx, qy) = (x + VERTEX_RADIUS * s2.cos(), y + VERTEX_RADIUS * s2.sin());
            write!(
                out,
                r##"<path d="M{px:.1},{py:.1} C{:.1},{:.1} {:.1},{:.1} {qx:.1},{qy:.1}" fill="none" stroke="#333" stroke-width="1.6"{}/>"##,
                x + reach * (t - 0.7).cos(),
                y + reach * (t - 0.7).sin(),
                x + reach * (t + 0.7).cos(),
                y + reach * (t + 0.7).sin(),
                markers(*au, *av)
            )
            .unwrap();
            continue;
        }
        let (x2, y2) = pos[v];
        let total = totals[&key] as f64;
        // offsets are measured in the orientation of the sorted pair, so
        // parallel edges written either way fan apart
        let sign = if (u, v) == (&key.0, &key.1) { 1.0 } else { -1.0 };
        let offset = sign * (i - (total - 1.0) / 2.0) * 22.0;
        let (dx, dy) = (x2 - x, y2 - y);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let (nx, ny) = (-dy / len, dx / len);
        let (cx, cy) = ((x + x2) / 2.0 + nx * offset * 2.0, (y + y2) / 2.0 + ny * offset * 2.0);
        let trim = |(ax, ay): (f64, f64)| {
            let (ex, ey) = (cx - ax, cy - ay);
            let l = (ex * ex + ey * ey).sqrt().max(1e-9);
            (ax + ex / l * VERTEX_RADIUS, ay + ey / l * VERTEX_RADIUS)
        };
        let (p, q) = (trim((x, y)), trim((x2, y2)));
        write!(
            out,
            r##"<path d="M{:.1},{:.1} Q{cx:.1},{cy:.1} {:.1},{:.1}" fill="none" stroke="#333" stroke-width="1.6"{}/>"##,
            p.0,
            p.1,
            q.0,
            q.1,
            markers(*au, *av)
        )
        .unwrap();
    }

    for v in &d.vertices {
        let (x, y) = pos[v];
        let (fill, dash) = if v.is_hole() { ("#fff", r##" stroke-dasharray="3,2""##) } else { ("#dde7f5", "") };
        if d.root.as_ref() == Some(v) {
            write!(out, r##"<circle cx="{x:.1}" cy="{y:.1}" r="{:.1}" fill="none" stroke="#b03030" stroke-width="1.6"/>"##, VERTEX_RADIUS + 4.0).unwrap();
        }
        write!(
            out,
            r##"<circle cx="{x:.1}" cy="{y:.1}" r="{VERTEX_RADIUS}" fill="{fill}" stroke="#333" stroke-width="1.4"{dash}/><text x="{x:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"##,
            y + 4.0,
            escape(v.as_str())
        )
        .unwrap();
    }
    out += "</svg>";
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_kind_renders() {
        for text in [
            "vertices=a,*; edges=a-*,a-*,*-*",
            "vertices=a,b; edges=a-b; root=a",
            "vertices=a,b,c; edges=a.>b,b>>c,c..c",
            "vertices=a,b,c; edges=a.>b,b>>c; root=a",
            "vertices=a; edges=",
        ] {
            let svg = render(text, 200).unwrap();
            assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"), "{text}");
        }
        assert!(render("vertices=a; edges=a-b", 200).is_err());
    }

    #[test]
    fn marks_and_roots_are_drawn() {
        let svg = render("vertices=a,b; edges=a.>b,a>>b; root=a", 200).unwrap();
        assert_eq!(svg.matches(r##"fill="none" stroke="#333""##).count(), 2);
        assert_eq!(svg.matches("marker-end").count(), 2);
        assert_eq!(svg.matches("marker-start").count(), 1);
        assert_eq!(svg.matches("#b03030").count(), 1);
        let plain = render("vertices=a,b; edges=a-b", 200).unwrap();
        assert!(!plain.contains("marker-end=") && !plain.contains("#b03030"));
    }
}
