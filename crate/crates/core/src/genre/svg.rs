//! Minimal deterministic SVG scatter plots.
//!
//! Every plotted datum is also written as an XML comment
//! (`<!-- point x y -->`, `<!-- curve name x y -->`, `<!-- hline name y -->`)
//! so tests and scripts can read coordinates back without rasterizing.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

pub(crate) struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

pub(crate) struct Plot<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub scatter: Vec<(String, f64, f64)>,
    pub curves: Vec<Series<'a>>,
    pub hlines: Vec<(&'a str, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace("--", "- -")
}

fn range(values: impl Iterator<Item = f64>, fallback: (f64, f64)) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return fallback;
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    (lo - 0.05 * span, hi + 0.05 * span)
}

const CURVE_COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

impl Plot<'_> {
    pub fn render(&self) -> String {
        let xs = self.scatter.iter().map(|p| p.1).chain(
            self.curves
                .iter()
                .flat_map(|c| c.points.iter().map(|p| p.0)),
        );
        let ys = self
            .scatter
            .iter()
            .map(|p| p.2)
            .chain(
                self.curves
                    .iter()
                    .flat_map(|c| c.points.iter().map(|p| p.1)),
            )
            .chain(self.hlines.iter().map(|h| h.1));
        let (x0, x1) = range(xs, (1.0, 2.5));
        let (y0, y1) = range(ys, (0.0, 1.5));
        let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        )
        .unwrap();
        writeln!(s, "<!-- x-range {x0} {x1} -->\n<!-- y-range {y0} {y1} -->").unwrap();
        writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
            WIDTH / 2.0,
            escape(self.title)
        )
        .unwrap();
        let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
        writeln!(
            s,
            r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" stroke="black" fill="none"/>"#
        )
        .unwrap();
        for i in 0..=4 {
            let t = i as f64 / 4.0;
            let xv = x0 + t * (x1 - x0);
            let yv = y0 + t * (y1 - y0);
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{xv:.2}</text>"#,
                px(xv),
                bottom + 18.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{yv:.2}</text>"#,
                left - 6.0,
                py(yv) + 4.0
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 15.0,
            escape(self.x_label)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="18" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(self.y_label)
        )
        .unwrap();

        for (i, c) in self.curves.iter().enumerate() {
            let color = CURVE_COLORS[i % CURVE_COLORS.len()];
            for &(x, y) in &c.points {
                writeln!(s, "<!-- curve {} {x} {y} -->", escape(c.name)).unwrap();
            }
            let path: Vec<String> = c
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            if !path.is_empty() {
                writeln!(
                    s,
                    r#"<polyline points="{}" stroke="{color}" stroke-width="1.5" fill="none"><title>{}</title></polyline>"#,
                    path.join(" "),
                    escape(c.name)
                )
                .unwrap();
            }
        }
        for &(name, y) in &self.hlines {
            writeln!(s, "<!-- hline {} {y} -->", escape(name)).unwrap();
            writeln!(
                s,
                r#"<line x1="{left}" y1="{:.2}" x2="{right}" y2="{:.2}" stroke="gray" stroke-dasharray="6 4"><title>{}</title></line>"#,
                py(y),
                py(y),
                escape(name)
            )
            .unwrap();
        }
        for (label, x, y) in &self.scatter {
            writeln!(s, "<!-- point {x} {y} -->").unwrap();
            writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"><title>{}</title></circle>"#,
                px(*x),
                py(*y),
                escape(label)
            )
            .unwrap();
        }
        s.push_str("</svg>\n");
        s
    }
}
