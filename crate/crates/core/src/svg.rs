//! Static SVG figures. Output depends only on the input: the viewport is fitted to the
//! bounding box of everything drawn and elements are emitted in a fixed order.

use std::fmt::Write;

use crate::geometry::{convex_hull, Point, PointSet};
use crate::mixed::MixedSubdivision;
use crate::triangulation::Triangulation;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

enum Shape {
    Polygon { pts: Vec<Point>, class: &'static str },
    Segment { a: Point, b: Point, class: &'static str },
    Dot { p: Point, class: &'static str },
}

#[derive(Default)]
pub struct Figure {
    shapes: Vec<Shape>,
}

impl Figure {
    pub fn new() -> Self {
        Figure::default()
    }

    pub fn polygon(&mut self, pts: Vec<Point>, class: &'static str) -> &mut Self {
        self.shapes.push(Shape::Polygon { pts, class });
        self
    }

    pub fn segment(&mut self, a: Point, b: Point, class: &'static str) -> &mut Self {
        self.shapes.push(Shape::Segment { a, b, class });
        self
    }

    pub fn dots(&mut self, pts: &PointSet, class: &'static str) -> &mut Self {
        for p in pts.iter() {
            self.shapes.push(Shape::Dot { p: p.clone(), class });
        }
        self
    }

    fn points(&self) -> impl Iterator<Item = &Point> {
        self.shapes.iter().flat_map(|s| match s {
            Shape::Polygon { pts, .. } => pts.iter().collect::<Vec<_>>(),
            Shape::Segment { a, b, .. } => vec![a, b],
            Shape::Dot { p, .. } => vec![p],
        })
    }

    pub fn render(&self) -> String {
        let xs: Vec<f64> = self.points().map(|p| p.x.to_f64()).collect();
        let ys: Vec<f64> = self.points().map(|p| p.y.to_f64()).collect();
        let fold = |v: &[f64], init: f64, f: fn(f64, f64) -> f64| v.iter().copied().fold(init, f);
        let (x0, x1) = (fold(&xs, f64::INFINITY, f64::min), fold(&xs, f64::NEG_INFINITY, f64::max));
        let (y0, y1) = (fold(&ys, f64::INFINITY, f64::min), fold(&ys, f64::NEG_INFINITY, f64::max));
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        let w = (x1 - x0) * scale + 2.0 * MARGIN;
        let h = (y1 - y0) * scale + 2.0 * MARGIN;
        let tx = |p: &Point| (p.x.to_f64() - x0) * scale + MARGIN;
        let ty = |p: &Point| (y1 - p.y.to_f64()) * scale + MARGIN;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
        );
        s.push_str(concat!(
            "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" ",
            "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#888\" stroke-width=\"1.5\"/>",
            "</pattern></defs>\n",
            "<style>.cell{fill:none;stroke:#000;stroke-width:1}.para{fill:url(#hatch);stroke:#000;stroke-width:1}",
            ".hull{fill:#f4f4f4;stroke:#000;stroke-width:1}.edge{stroke:#444;stroke-width:1}",
            ".thick{stroke:#000;stroke-width:3}.pt{fill:#000}.open{fill:#fff;stroke:#000}</style>\n",
        ));
        for shape in &self.shapes {
            match shape {
                Shape::Polygon { pts, class } => {
                    let coords: Vec<String> = pts.iter().map(|p| format!("{:.3},{:.3}", tx(p), ty(p))).collect();
                    let _ = writeln!(s, r#"<polygon class="{class}" points="{}"/>"#, coords.join(" "));
                }
                Shape::Segment { a, b, class } => {
                    let _ = writeln!(
                        s,
                        r#"<line class="{class}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                        tx(a),
                        ty(a),
                        tx(b),
                        ty(b)
                    );
                }
                Shape::Dot { p, class } => {
                    let _ = writeln!(s, r#"<circle class="{class}" cx="{:.3}" cy="{:.3}" r="3"/>"#, tx(p), ty(p));
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

pub fn hull_svg(a: &PointSet) -> String {
    let mut f = Figure::new();
    f.polygon(convex_hull(a.points()), "hull").dots(a, "pt");
    f.render()
}

pub fn triangulation_svg(t: &Triangulation) -> String {
    let mut f = Figure::new();
    for k in 0..t.len() {
        f.polygon(t.corners(k).to_vec(), "cell");
    }
    f.dots(t.base(), "pt");
    f.render()
}

/// Cells of `m`, parallelograms hatched; `thick` edges (pairs of indices into `A`) are drawn
/// heavy, as for a star.
pub fn mixed_svg(m: &MixedSubdivision, thick: &[(usize, usize)]) -> String {
    let mut f = Figure::new();
    for c in &m.cells {
        let class = if c.is_parallelogram() { "para" } else { "cell" };
        f.polygon(m.polygon(c), class);
    }
    for &(u, v) in thick {
        f.segment(m.a().get(u).clone(), m.a().get(v).clone(), "thick");
    }
    f.dots(m.a(), "pt");
    f.render()
}

/// `T_B` with the triangle `A` drawn in open dots and thick edges.
pub fn counterexample_svg(a: &PointSet, tb: &Triangulation) -> String {
    let mut f = Figure::new();
    for k in 0..tb.len() {
        f.polygon(tb.corners(k).to_vec(), "cell");
    }
    let h = convex_hull(a.points());
    for i in 0..h.len() {
        f.segment(h[i].clone(), h[(i + 1) % h.len()].clone(), "thick");
    }
    f.dots(tb.base(), "pt").dots(a, "open");
    f.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::triangle_mixed;

    #[test]
    fn deterministic_and_styled() {
        let a = PointSet::grid(0, 0, 3, 3);
        let b = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let m = triangle_mixed(&a, &b).unwrap();
        let s1 = mixed_svg(&m, &[]);
        assert_eq!(s1, mixed_svg(&m, &[]));
        assert_eq!(s1.matches("class=\"para\"").count(), m.m11());
        assert!(s1.starts_with("<svg") && s1.ends_with("</svg>\n"));
        assert!(hull_svg(&a).contains("class=\"hull\""));
    }
}
