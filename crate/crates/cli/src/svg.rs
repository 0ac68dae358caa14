//! Self-contained SVG scatter plots of P-positions.

use std::fmt::Write as _;

use gdwn::Pair;

/// Optional reference lines `y = s·x` through the origin.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Guides {
    pub diagonal: bool,
    pub phi: bool,
    pub two: bool,
    pub upper: bool,
    pub mid: bool,
}

impl Guides {
    pub const UPPER_SLOPE: f64 = 2.247;
    pub const MID_SLOPE: f64 = 1.477;

    fn lines(&self) -> Vec<(&'static str, f64, &'static str)> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        [
            (self.diagonal, "y=x", 1.0, "#888888"),
            (self.phi, "y=phi x", phi, "#d95f02"),
            (self.two, "y=2x", 2.0, "#1b9e77"),
            (self.upper, "y=2.247x", Self::UPPER_SLOPE, "#7570b3"),
            (self.mid, "y=1.477x", Self::MID_SLOPE, "#e7298a"),
        ]
        .into_iter()
        .filter(|g| g.0)
        .map(|(_, label, s, color)| (label, s, color))
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub guides: Guides,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            width: 800,
            height: 800,
            title: String::new(),
            guides: Guides::default(),
        }
    }
}

const MARGIN: f64 = 40.0;

/// Point radius for `n` plotted points.
pub fn point_radius(n: usize) -> f64 {
    (40.0 / (n.max(1) as f64).sqrt()).max(0.5)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Plots every pair and its reflection. Axes span `[0, max x] × [0, max y]`
/// of the plotted points.
pub fn scatter_svg(pairs: &[Pair], opts: &PlotOptions) -> String {
    let mut points: Vec<(u64, u64)> = Vec::with_capacity(2 * pairs.len());
    for p in pairs {
        points.push((p.a, p.b));
        if p.a != p.b {
            points.push((p.b, p.a));
        }
    }
    let max_x = points.iter().map(|p| p.0).max().unwrap_or(0).max(1) as f64;
    let max_y = points.iter().map(|p| p.1).max().unwrap_or(0).max(1) as f64;
    let (w, h) = (opts.width as f64, opts.height as f64);
    let sx = (w - 2.0 * MARGIN) / max_x;
    let sy = (h - 2.0 * MARGIN) / max_y;
    let px = |x: f64| MARGIN + x * sx;
    let py = |y: f64| h - MARGIN - y * sy;
    let r = point_radius(points.len());

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    if !opts.title.is_empty() {
        let _ = writeln!(s, "<title>{}</title>", escape(&opts.title));
    }
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"#,
        px(0.0), py(0.0), px(max_x), py(0.0),
        px(0.0), py(0.0), px(0.0), py(max_y)
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12"><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text><text x="{:.2}" y="{:.2}">{}</text></g>"#,
        px(max_x), py(0.0) + 16.0, max_x as u64,
        px(0.0) + 4.0, py(max_y) - 4.0, max_y as u64
    );
    for (label, slope, color) in opts.guides.lines() {
        let end_x = max_x.min(max_y / slope);
        let _ = writeln!(
            s,
            r#"<line class="guide" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1" stroke-dasharray="4 3"><title>{label}</title></line>"#,
            px(0.0), py(0.0), px(end_x), py(end_x * slope)
        );
    }
    let _ = writeln!(s, r##"<g fill="#1f4e9c" stroke="none">"##);
    for &(x, y) in &points {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}"/>"#, px(x as f64), py(y as f64));
    }
    s.push_str("</g>\n</svg>\n");
    s
}
