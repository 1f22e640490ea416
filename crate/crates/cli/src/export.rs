//! DOT and SVG renderings.

use std::collections::HashMap;
use std::fmt::Write as _;

use sem_atlas::constructions::{Grid, GridSurface};
use sem_atlas::PolyhedralMap;

/// The edge graph as an undirected DOT graph.
pub fn dot(m: &PolyhedralMap) -> String {
    let mut s = String::from("graph map {\n");
    for v in 0..m.n_vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for &(a, b) in m.edges() {
        let _ = writeln!(s, "  {a} -- {b};");
    }
    s.push_str("}\n");
    s
}

const CELL: usize = 60;
const MARGIN: usize = 50;

fn fill(p: usize) -> &'static str {
    match p {
        3 => "#f3d9a4",
        4 => "#b9dde0",
        _ => "#dddddd",
    }
}

/// Fundamental-polygon drawing of a grid-tagged map: the grid rectangle with
/// every face drawn in its cell and the vertex labels repeated along the
/// glued sides. `None` if the map has no grid tags or a face leaves its cell.
pub fn svg(m: &PolyhedralMap) -> Option<String> {
    let g = Grid::from_tags(m.tags())?;
    if g.coords.len() != m.n_vertices() {
        return None;
    }
    // Lattice point (r, c) for 0 <= r <= rows, 0 <= c <= cols.
    let mut label: HashMap<(usize, usize), usize> = HashMap::new();
    for (r, c) in g.cells() {
        let [a, b, cc, d] = g.cell(r, c);
        for (p, v) in [((r, c), a), ((r, c + 1), b), ((r + 1, c + 1), cc), ((r + 1, c), d)] {
            label.insert(p, v);
        }
    }
    let xy = |(r, c): (usize, usize)| (MARGIN + c * CELL, MARGIN + (g.rows - r) * CELL);
    let (w, h) = (2 * MARGIN + g.cols * CELL, 2 * MARGIN + g.rows * CELL + 30);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1.5" stroke-linejoin="round">"#);
    let mut drawn = vec![false; m.n_faces()];
    for (r, c) in g.cells() {
        let corners = [(r, c), (r, c + 1), (r + 1, c + 1), (r + 1, c)];
        let at: HashMap<usize, (usize, usize)> = corners.iter().map(|&p| (label[&p], p)).collect();
        for (i, f) in m.faces().iter().enumerate() {
            if drawn[i] || !f.iter().all(|v| at.contains_key(v)) {
                continue;
            }
            drawn[i] = true;
            let pts: Vec<String> = f
                .iter()
                .map(|v| {
                    let (x, y) = xy(at[v]);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(s, r#"<polygon points="{}" fill="{}"/>"#, pts.join(" "), fill(f.len()));
        }
    }
    if drawn.contains(&false) {
        return None;
    }
    s.push_str("</g>\n");
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="13" text-anchor="middle">"#);
    for r in 0..=g.rows {
        for c in 0..=g.cols {
            let (x, y) = xy((r, c));
            let boundary = r == g.rows || c == g.cols;
            let colour = if boundary { "#888888" } else { "black" };
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="9" fill="white" stroke="{colour}"/>"#);
            let _ = writeln!(s, r#"<text x="{x}" y="{}" fill="{colour}">{}</text>"#, y + 4, label[&(r, c)]);
        }
    }
    let caption = match g.surface {
        GridSurface::Torus => format!(
            "torus {}x{}: left and right sides glued directly, top glued to bottom shifted by {}",
            g.rows, g.cols, g.twist
        ),
        GridSurface::Klein => {
            format!("Klein bottle {}x{}: top glued to bottom directly, right glued to left reversed", g.rows, g.cols)
        }
    };
    let _ = writeln!(s, r#"<text x="{}" y="{}">{caption}</text>"#, w / 2, h - 15);
    s.push_str("</g>\n</svg>\n");
    Some(s)
}
