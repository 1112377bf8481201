//! SVG drawing of a finished layout.
//!
//! Nodes are rectangles of their real size at their real top-left corner,
//! edges straight center-to-center segments. One layout unit is one SVG
//! user unit.

use std::fmt::Write as _;

use crate::model::Graph;

/// Blank border around the drawing, in layout units.
pub const MARGIN: f64 = 1.0;

pub fn svg(graph: &Graph, positions: &[(f64, f64)]) -> String {
    assert_eq!(graph.nodes.len(), positions.len(), "one position per node");
    let index: std::collections::HashMap<&str, usize> = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.id.as_str(), i))
        .collect();
    let (mut width, mut height) = (0.0f64, 0.0f64);
    for (node, &(x, y)) in graph.nodes.iter().zip(positions) {
        width = width.max(x + node.w);
        height = height.max(y + node.h);
    }
    let stroke = (width.max(height) / 400.0).max(0.02);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(-MARGIN),
        num(-MARGIN),
        num(width + 2.0 * MARGIN),
        num(height + 2.0 * MARGIN),
        num(width + 2.0 * MARGIN),
        num(height + 2.0 * MARGIN),
    );
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="{}">"#, num(stroke));
    for (a, b) in &graph.edges {
        let (i, j) = (index[a.as_str()], index[b.as_str()]);
        let center = |k: usize| {
            let (x, y) = positions[k];
            (x + graph.nodes[k].w / 2.0, y + graph.nodes[k].h / 2.0)
        };
        let ((x1, y1), (x2, y2)) = (center(i), center(j));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }
    for (node, &(x, y)) in graph.nodes.iter().zip(positions) {
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"><title>{}</title></rect>"#,
            num(x),
            num(y),
            num(node.w),
            num(node.h),
            escape(&node.id)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn num(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}
