//! Planar drawings: concentric rims and the unit-distance drawing of
//! `GI(7;1,2,3)`, plus SVG output.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{build, EdgeKind, GiGraph, GiSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("expected {expected} radii, got {got}")]
    RadiiCountMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Layout {
    /// `(x, y)` per linear vertex index.
    pub coords: Vec<(f64, f64)>,
    /// Rim radius per layer.
    pub radii: Vec<f64>,
    /// Angular offset per layer.
    pub phases: Vec<f64>,
}

fn polar_layout(n: u32, radii: &[f64], phases: &[f64]) -> Layout {
    let coords = radii
        .iter()
        .zip(phases)
        .flat_map(|(&r, &phi)| {
            (0..n).map(move |v| {
                let theta = 2.0 * PI * v as f64 / n as f64 + phi;
                (r * theta.cos(), r * theta.sin())
            })
        })
        .collect();
    Layout {
        coords,
        radii: radii.to_vec(),
        phases: phases.to_vec(),
    }
}

/// Layer `s` on a circle, vertex `(s, v)` at angle `2πv/n`. Default radii
/// are `(t - s)/t`, so layer 0 is the outer rim.
pub fn concentric_layout(spec: &GiSpec, radii: Option<&[f64]>) -> Result<Layout, LayoutError> {
    let t = spec.t();
    let radii: Vec<f64> = match radii {
        Some(r) if r.len() != t => {
            return Err(LayoutError::RadiiCountMismatch {
                expected: t,
                got: r.len(),
            })
        }
        Some(r) => r.to_vec(),
        None => (0..t).map(|s| (t - s) as f64 / t as f64).collect(),
    };
    Ok(polar_layout(spec.n(), &radii, &vec![0.0; t]))
}

/// `R_k = 1/(2 sin(kπ/7))`, with the two inner rims turned by `±π/3`.
pub fn unit_distance_layout_713() -> Layout {
    let radii: Vec<f64> = (1..=3)
        .map(|k| 1.0 / (2.0 * (k as f64 * PI / 7.0).sin()))
        .collect();
    polar_layout(7, &radii, &[0.0, PI / 3.0, -PI / 3.0])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeLengthStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub max_abs_dev_from_unit: f64,
}

pub fn edge_length_stats(graph: &GiGraph, layout: &Layout) -> EdgeLengthStats {
    assert_eq!(layout.coords.len(), graph.vertex_count(), "layout size");
    let lengths: Vec<f64> = graph
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (layout.coords[e.u], layout.coords[e.v]);
            (a.0 - b.0).hypot(a.1 - b.1)
        })
        .collect();
    let count = lengths.len().max(1) as f64;
    EdgeLengthStats {
        min: lengths.iter().copied().fold(f64::INFINITY, f64::min),
        max: lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean: lengths.iter().sum::<f64>() / count,
        max_abs_dev_from_unit: lengths.iter().map(|l| (l - 1.0).abs()).fold(0.0, f64::max),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Width of the image in pixels; the height follows the aspect ratio.
    pub width: f64,
    /// Vertex radius as a fraction of the drawing extent.
    pub vertex_radius: f64,
    /// Stroke width as a fraction of the drawing extent.
    pub stroke_width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 480.0,
            vertex_radius: 0.015,
            stroke_width: 0.004,
        }
    }
}

const LAYER_COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub fn svg(graph: &GiGraph, layout: &Layout, opts: &SvgOptions) -> String {
    assert_eq!(layout.coords.len(), graph.vertex_count(), "layout size");
    // SVG's y axis points down
    let pts: Vec<(f64, f64)> = layout.coords.iter().map(|&(x, y)| (x, -y)).collect();
    let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
    let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * extent;
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (vw, vh) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let height = opts.width * vh / vw;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        opts.width, height, vx, vy, vw, vh
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", graph.spec()).unwrap();
    writeln!(out, "<style>").unwrap();
    writeln!(out, "line {{ stroke-width: {:.6}; }}", opts.stroke_width * extent).unwrap();
    writeln!(out, ".spoke {{ stroke: #888888; }}").unwrap();
    for s in 0..graph.spec().t() {
        let color = LAYER_COLORS[s % LAYER_COLORS.len()];
        writeln!(out, ".layer-{s} {{ stroke: {color}; }}").unwrap();
    }
    writeln!(out, ".vertex {{ fill: #222222; }}").unwrap();
    writeln!(out, "</style>").unwrap();
    for e in graph.edges() {
        let class = match e.kind {
            EdgeKind::Spoke => "edge spoke".to_string(),
            EdgeKind::Layer(s) => format!("edge layer-{s}"),
        };
        let (a, b) = (pts[e.u], pts[e.v]);
        writeln!(
            out,
            r#"<line class="{class}" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }
    let r = opts.vertex_radius * extent;
    for (i, &(x, y)) in pts.iter().enumerate() {
        let id = graph.spec().vertex(i);
        writeln!(
            out,
            r#"<circle class="vertex" id="v{}_{}" cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#,
            id.s, id.v, x, y, r
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// `GI(7;1,2,3)` together with its unit-distance drawing.
pub fn unit_distance_713() -> (GiGraph, Layout) {
    let spec = GiSpec::from_steps(7, &[1, 2, 3]).expect("valid");
    (build(&spec), unit_distance_layout_713())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::rho;

    fn spec(n: u32, j: &[u32]) -> GiSpec {
        GiSpec::from_steps(n, j).unwrap()
    }

    #[test]
    fn unit_distance_radii() {
        let l = unit_distance_layout_713();
        assert!((l.radii[0] - 1.152382435).abs() < 1e-9);
        assert!(l.radii[0] > l.radii[1] && l.radii[1] > l.radii[2]);
        let (r1, r2) = (l.radii[0], l.radii[1]);
        assert!((2.0 * r1 * (PI / 7.0).sin() - 1.0).abs() < 1e-12);
        let spoke_sq = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * (PI / 3.0).cos();
        assert!((spoke_sq - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unit_distance_edges() {
        let (g, l) = unit_distance_713();
        let stats = edge_length_stats(&g, &l);
        assert!(stats.max_abs_dev_from_unit < 1e-9, "{stats:?}");
        // mirror image also works
        let mirrored = polar_layout(7, &l.radii, &[0.0, -PI / 3.0, PI / 3.0]);
        assert!(edge_length_stats(&g, &mirrored).max_abs_dev_from_unit < 1e-9);
    }

    #[test]
    fn concentric_examples() {
        let s = spec(5, &[1, 2]);
        let g = build(&s);
        let l = concentric_layout(&s, None).unwrap();
        let stats = edge_length_stats(&g, &l);
        assert!(stats.max > stats.min);
        for (i, &(x, y)) in l.coords.iter().enumerate() {
            let r = x.hypot(y);
            assert!((r - l.radii[s.vertex(i).s]).abs() < 1e-12);
        }
        assert_eq!(l.radii, vec![1.0, 0.5]);
        assert_eq!(
            concentric_layout(&s, Some(&[1.0])),
            Err(LayoutError::RadiiCountMismatch {
                expected: 2,
                got: 1
            })
        );
        let s = spec(6, &[1, 1, 2]);
        let l = concentric_layout(&s, None).unwrap();
        assert_eq!(l.coords.len(), 18);
    }

    #[test]
    fn single_layer_chords_are_unit() {
        for n in 3..12 {
            let s = spec(n, &[1]);
            let r = 1.0 / (2.0 * (PI / n as f64).sin());
            let l = concentric_layout(&s, Some(&[r])).unwrap();
            let stats = edge_length_stats(&build(&s), &l);
            assert!(stats.max_abs_dev_from_unit < 1e-12);
        }
    }

    #[test]
    fn rotation_is_symmetry_of_drawing() {
        for (n, j) in [(5u32, vec![1u32, 2]), (9, vec![1, 2, 4]), (6, vec![2, 2])] {
            let s = spec(n, &j);
            let l = concentric_layout(&s, None).unwrap();
            let r = rho(&s);
            let a = 2.0 * PI / n as f64;
            for (i, &(x, y)) in l.coords.iter().enumerate() {
                let (rx, ry) = (x * a.cos() - y * a.sin(), x * a.sin() + y * a.cos());
                let (tx, ty) = l.coords[r.apply(i)];
                assert!((rx - tx).abs() < 1e-12 && (ry - ty).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn svg_counts_and_determinism() {
        let (g, l) = unit_distance_713();
        let doc = svg(&g, &l, &SvgOptions::default());
        assert_eq!(doc.matches("<circle").count(), 21);
        assert_eq!(doc.matches("<line").count(), 42);
        assert_eq!(doc, svg(&g, &l, &SvgOptions::default()));
        assert!(doc.contains(r#"class="edge spoke""#));
        assert!(doc.contains(r#"class="edge layer-2""#));
    }

    #[test]
    fn svg_is_valid_xml() {
        let s = spec(6, &[2, 2]);
        let g = build(&s);
        let doc = svg(&g, &concentric_layout(&s, None).unwrap(), &SvgOptions::default());
        let xml = roxmltree::Document::parse(&doc).unwrap();
        let circles = xml
            .descendants()
            .filter(|n| n.has_tag_name("circle"))
            .count();
        assert_eq!(circles, 12);
        let layer_edges = xml
            .descendants()
            .filter(|n| n.attribute("class") == Some("edge layer-0"))
            .count();
        assert_eq!(layer_edges, 6);
    }
}
