//! Text exports: a schematic SVG of the rectangle diagram and Graphviz DOT for
//! maps. Output depends only on the input, so repeated runs are identical.

use std::fmt::Write;

use crate::map::{Color, DecoratedMap};
use crate::mating::MatingDiagram;

const UNIT: i64 = 24;
const MARGIN: i64 = 20;

/// The two paths drawn facing each other, time running upward, joined by one
/// rung per step. Left path red, right path blue.
pub fn diagram_svg(diagram: &MatingDiagram) -> String {
    let n = diagram.cells.len() as i64;
    let lh = diagram.left.heights();
    let rh = diagram.right.heights();
    let lmax = lh.iter().copied().max().unwrap_or(0);
    let rmax = rh.iter().copied().max().unwrap_or(0);
    let gap = 2;
    let width = (lmax + rmax + gap) * UNIT + 2 * MARGIN;
    let height = n.max(1) * UNIT + 2 * MARGIN;
    let y = |t: usize| height - MARGIN - t as i64 * UNIT;
    // The left path grows leftward from the axis, the right path rightward.
    let axis_l = MARGIN + lmax * UNIT;
    let axis_r = axis_l + gap * UNIT;
    let lx = |h: i64| axis_l - h * UNIT;
    let rx = |h: i64| axis_r + h * UNIT;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
    for t in 0..lh.len() {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-width="1"/>"#,
            lx(lh[t]),
            y(t),
            rx(rh[t]),
            y(t)
        );
    }
    for (heights, color, xf) in [(&lh, "red", &lx as &dyn Fn(i64) -> i64), (&rh, "blue", &rx)] {
        let points: Vec<String> = heights.iter().enumerate().map(|(t, &h)| format!("{},{}", xf(h), y(t))).collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            points.join(" ")
        );
    }
    for cell in &diagram.cells {
        let t = cell.index;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
            (axis_l + axis_r) / 2,
            y(t) + UNIT / 2 + 3,
            cell.step
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Undirected Graphviz graph of a map: one node per vertex, one edge per edge,
/// colored and directed where the decoration says so. Tree edges are bold.
pub fn map_dot(map: &DecoratedMap, name: &str) -> String {
    let m = &map.map;
    let vi = m.vertex_index();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  node [shape=circle, width=0.2, label=\"\"];");
    for v in 0..m.num_vertices() {
        let _ = writeln!(out, "  v{v};");
    }
    let root_edge = m.edge_id(m.root());
    for e in m.edges() {
        let (mut a, mut b) = (e, m.opp(e));
        let mut attrs = Vec::new();
        match map.is_forward(e) {
            Some(false) => std::mem::swap(&mut a, &mut b),
            Some(true) => {}
            None => attrs.push("dir=none".to_string()),
        }
        if let Some(c) = map.color_of(e) {
            attrs.push(format!("color={}", dot_color(c)));
        }
        if map.tree.as_ref().is_some_and(|t| t.contains(&e)) {
            attrs.push("penwidth=2.5".to_string());
        }
        if e == root_edge {
            attrs.push("style=dashed".to_string());
        }
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\", {}];", vi[a.0], vi[b.0], e, attrs.join(", "));
    }
    out.push_str("}\n");
    out
}

fn dot_color(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Green => "darkgreen",
        Color::Blue => "blue",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mating::build_diagram;
    use crate::walks::{Family, StepAlphabet, Walk};

    #[test]
    fn outputs_are_well_formed_and_stable() {
        let w = Walk::from_word(&StepAlphabet::family(Family::Kreweras), "aabbccbac").unwrap();
        let d = build_diagram(&w).unwrap();
        let svg = diagram_svg(&d);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line").count(), 10);
        assert_eq!(svg, diagram_svg(&d));
        let map = crate::bijections::kreweras_forward(&w).unwrap();
        let dot = map_dot(&map, "m");
        assert_eq!(dot.matches("->").count(), map.map.num_edges());
        assert_eq!(dot.matches("penwidth").count(), 5);
    }
}
