//! Text and SVG drawings of Ext charts.
//!
//! Axes are stem (t - s) and filtration s. h₀ is drawn as a vertical solid
//! line, h₁ as a solid line of slope 1, h₂ as a dotted line of slope 1/3.
//! h₃ edges are not drawn.

use crate::resolver::{ExtChart, Label};
use crate::tmf::Window;
use std::collections::BTreeMap;
use std::fmt::Write as _;

const CELL: i32 = 24;
const MARGIN: i32 = 40;
const DOT_GAP: i32 = 5;
const RADIUS: f64 = 2.5;

/// Dot positions and styled edges for one window of a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartRender {
    pub window: Window,
    /// label -> (stem, s, index within the cell)
    pub dots: BTreeMap<Label, (i32, u32, usize)>,
    /// (hopf index, source, target), both ends inside the window
    pub edges: Vec<(u32, Label, Label)>,
}

impl ChartRender {
    pub fn new(chart: &ExtChart, window: &Window) -> Self {
        let mut dots = BTreeMap::new();
        for (&(s, t), labels) in &chart.cells {
            let stem = t - s as i32;
            if !window.stems.contains(&stem) || !window.filtrations.contains(&s) {
                continue;
            }
            for (k, &l) in labels.iter().enumerate() {
                dots.insert(l, (stem, s, k));
            }
        }
        let edges = chart
            .edges
            .iter()
            .filter(|e| e.i <= 2 && dots.contains_key(&e.source) && dots.contains_key(&e.target))
            .map(|e| (e.i, e.source, e.target))
            .collect();
        ChartRender {
            window: window.clone(),
            dots,
            edges,
        }
    }

    fn width(&self) -> i32 {
        let n = self.window.stems.end() - self.window.stems.start() + 1;
        2 * MARGIN + n.max(1) * CELL
    }

    fn height(&self) -> i32 {
        let n = *self.window.filtrations.end() as i32 - *self.window.filtrations.start() as i32 + 1;
        2 * MARGIN + n.max(1) * CELL
    }

    fn point(&self, stem: i32, s: u32, k: usize) -> (i32, i32) {
        let x = MARGIN + (stem - self.window.stems.start()) * CELL + CELL / 2;
        let y = self.height()
            - MARGIN
            - (s as i32 - *self.window.filtrations.start() as i32) * CELL
            - CELL / 2
            - k as i32 * DOT_GAP;
        (x, y)
    }

    pub fn svg(&self) -> String {
        let (w, h) = (self.width(), self.height());
        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
        // axes
        let (x0, y0) = (MARGIN, h - MARGIN);
        writeln!(
            out,
            r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}"/></g>"#,
            w - MARGIN
        )
        .unwrap();
        writeln!(out, r#"<g class="ticks" font-family="sans-serif" font-size="9" text-anchor="middle">"#).unwrap();
        for stem in self.window.stems.clone() {
            if stem % 2 == 0 {
                let x = MARGIN + (stem - self.window.stems.start()) * CELL + CELL / 2;
                writeln!(out, r#"<text x="{x}" y="{}">{stem}</text>"#, y0 + 14).unwrap();
            }
        }
        for s in self.window.filtrations.clone() {
            let y = y0 - (s as i32 - *self.window.filtrations.start() as i32) * CELL - CELL / 2 + 3;
            writeln!(out, r#"<text x="{}" y="{y}">{s}</text>"#, MARGIN - 12).unwrap();
        }
        writeln!(out, "</g>").unwrap();
        for (i, a, b) in &self.edges {
            let (sa, ta) = (self.dots[a], self.dots[b]);
            let (x1, y1) = self.point(sa.0, sa.1, sa.2);
            let (x2, y2) = self.point(ta.0, ta.1, ta.2);
            let dash = if *i == 2 { r#" stroke-dasharray="2,2""# } else { "" };
            writeln!(
                out,
                r#"<line class="h{i}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1"{dash}/>"#
            )
            .unwrap();
        }
        for (l, &(stem, s, k)) in &self.dots {
            let (x, y) = self.point(stem, s, k);
            writeln!(
                out,
                r#"<circle cx="{x}" cy="{y}" r="{RADIUS}" fill="black"><title>{l}</title></circle>"#
            )
            .unwrap();
        }
        writeln!(out, "</svg>").unwrap();
        out
    }
}

/// Deterministic SVG of the chart restricted to `window`.
pub fn emit_svg(chart: &ExtChart, window: &Window) -> String {
    ChartRender::new(chart, window).svg()
}

/// Grid of dims: rows s (descending), one column per stem, "." for zero.
pub fn render_text(chart: &ExtChart, window: &Window) -> String {
    let mut out = String::new();
    writeln!(out, "{} over {}", chart.name, chart.profile).unwrap();
    for s in window.filtrations.clone().rev() {
        write!(out, "{s:>3} |").unwrap();
        for stem in window.stems.clone() {
            let d = chart.dim(s, stem + s as i32);
            if d == 0 {
                write!(out, "  .").unwrap();
            } else {
                write!(out, "{d:>3}").unwrap();
            }
        }
        writeln!(out).unwrap();
    }
    write!(out, "    +").unwrap();
    for stem in window.stems.clone() {
        write!(out, "{:>3}", stem.rem_euclid(100)).unwrap();
    }
    writeln!(out).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::builtin;
    use crate::resolver::{ext_chart, Resolution};
    use crate::steenrod::SubalgebraProfile;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn empty_chart_has_axes_only() {
        let chart = ExtChart {
            name: "empty".into(),
            profile: "A(2)".into(),
            s_bound: 0,
            t_bound: 0,
            cells: Default::default(),
            degrees: Default::default(),
            edges: Vec::new(),
        };
        let svg = emit_svg(&chart, &Window::new(0..=10, 0..=5));
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(r#"class="axes""#));
        assert_eq!(count(&svg, "<circle"), 0);
        assert_eq!(count(&svg, r#"class="h"#), 0);
    }

    #[test]
    fn h0_tower() {
        let r = Resolution::resolve(&builtin("S0").unwrap(), SubalgebraProfile::A(0), 5, 5).unwrap();
        let svg = emit_svg(&ext_chart(&r), &Window::new(0..=0, 0..=5));
        assert_eq!(count(&svg, "<circle"), 6);
        assert_eq!(count(&svg, r#"class="h0""#), 5);
        assert_eq!(svg, emit_svg(&ext_chart(&r), &Window::new(0..=0, 0..=5)));
    }

    #[test]
    fn a1_00_h2_edge_is_dotted() {
        let r = Resolution::resolve(&builtin("A1-00").unwrap(), SubalgebraProfile::A(2), 6, 26).unwrap();
        let chart = ext_chart(&r);
        let w = Window::new(0..=20, 0..=6);
        let render = ChartRender::new(&chart, &w);
        let x = chart.labels(1, 7)[0];
        let e = render
            .edges
            .iter()
            .find(|(i, a, _)| *i == 2 && *a == x)
            .expect("h2 edge out of stem 6");
        let (sa, sb) = (render.dots[&e.1], render.dots[&e.2]);
        assert_eq!((sb.0 - sa.0, sb.1 - sa.1), (3, 1));
        let svg = render.svg();
        assert!(svg.lines().any(|l| l.contains(r#"class="h2""#) && l.contains("stroke-dasharray")));
    }

    #[test]
    fn edges_respect_hopf_degrees() {
        let r = Resolution::resolve(&builtin("S0").unwrap(), SubalgebraProfile::A(2), 6, 24).unwrap();
        let render = ChartRender::new(&ext_chart(&r), &Window::new(0..=16, 0..=6));
        assert!(!render.edges.is_empty());
        for (i, a, b) in &render.edges {
            let (pa, pb) = (render.dots[a], render.dots[b]);
            assert_eq!(pb.0 - pa.0, (1 << i) - 1);
            assert_eq!(pb.1, pa.1 + 1);
        }
    }

    #[test]
    fn text_grid() {
        let r = Resolution::resolve(&builtin("S0").unwrap(), SubalgebraProfile::A(0), 3, 3).unwrap();
        let t = render_text(&ext_chart(&r), &Window::new(0..=1, 0..=3));
        assert_eq!(t.lines().nth(1).unwrap(), "  3 |  1  .");
    }
}
