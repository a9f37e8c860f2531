//! SVG drawings of configurations and phase portraits.
//!
//! Configuration drawings use model coordinates with `y` negated, so a face
//! measured from the emitted path data has the opposite orientation.

use std::fmt::Write;

use serde::Serialize;

use crate::arc::{ArcEdge, ArcPath, Point};
use crate::candidates::geometry::candidate_geometry;
use crate::candidates::{CandidateInstance, CandidateKind};
use crate::error::{Error, Result};
use crate::portrait::PortraitGrid;
use crate::torus::Space;

/// Legend colors indexed by [`CandidateKind::index`].
pub const KIND_COLORS: [&str; 5] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderStyle {
    /// Fill colors for `R1`, `R2`, `R0`.
    pub region_colors: [String; 3],
    pub stroke_width: f64,
    pub show_fundamental_domain: bool,
    pub tie_hatch: bool,
    /// Output pixels per unit length (drawings) or per drawing width (portraits).
    pub scale: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            region_colors: ["#d1495b".into(), "#00798c".into(), "#f4f1e6".into()],
            stroke_width: 0.006,
            show_fundamental_domain: true,
            tie_hatch: true,
            scale: 400.0,
        }
    }
}

impl RenderStyle {
    fn check(&self) -> Result<()> {
        let [a, b, c] = &self.region_colors;
        if a == b || b == c || a == c {
            return Err(Error::InvalidInput("region colors must be distinct".into()));
        }
        if !(self.stroke_width > 0.0 && self.scale > 0.0) {
            return Err(Error::InvalidInput("stroke width and scale must be positive".into()));
        }
        Ok(())
    }
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn pt(p: Point<f64>) -> String {
    format!("{} {}", fmt(p.x), fmt(-p.y))
}

fn arc_command(e: &ArcEdge<f64>) -> String {
    match e.radius() {
        None => format!("L {}", pt(e.end)),
        Some(r) => {
            let large = u8::from(e.bulge.abs() > std::f64::consts::FRAC_PI_2);
            let sweep = u8::from(e.bulge > 0.0);
            format!("A {} {} 0 {large} {sweep} {}", fmt(r), fmt(r), pt(e.end))
        }
    }
}

fn path_data(paths: &[ArcPath<f64>]) -> String {
    let mut d = String::new();
    for p in paths {
        let Some(first) = p.edges.first() else { continue };
        let _ = write!(d, "M {}", pt(first.start));
        for e in &p.edges {
            let _ = write!(d, " {}", arc_command(e));
        }
        if p.closed {
            d.push_str(" Z ");
        }
    }
    d.trim_end().to_string()
}

/// Bounding box of a set of edges including arc bulges, in model coordinates.
fn bounds(edges: impl Iterator<Item = ArcEdge<f64>>) -> (Point<f64>, Point<f64>) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for e in edges {
        for k in 0..=16 {
            let p = e.point_at(k as f64 / 16.0);
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
    }
    (lo, hi)
}

/// Drawing of a feasible instance: faces filled by region, interfaces
/// stroked, and the fundamental domain outlined. Pieces that cross the
/// domain boundary are repeated by the lattice and clipped.
pub fn render_instance_svg(inst: &CandidateInstance, space: &Space, style: &RenderStyle) -> Result<String> {
    style.check()?;
    let config = candidate_geometry(inst, space)?;
    let (domain, translates): (Vec<Point<f64>>, Vec<Point<f64>>) = match config.lattice.as_slice() {
        [u, v] => (
            vec![Point::new(0.0, 0.0), *u, *u + *v, *v],
            (-1..=1).flat_map(|a| (-1..=1).map(move |b| *u * a as f64 + *v * b as f64)).collect(),
        ),
        [u] => {
            let (lo, hi) = bounds(config.interfaces.iter().map(|i| i.edge));
            let pad = 0.1 * (hi.y - lo.y).max(0.2);
            let (y0, y1) = (lo.y - pad, hi.y + pad);
            (
                vec![Point::new(0.0, y0), Point::new(u.x, y0), Point::new(u.x, y1), Point::new(0.0, y1)],
                vec![*u * -1.0, Point::new(0.0, 0.0), *u],
            )
        }
        _ => return Err(Error::InvalidInput("configuration without lattice".into())),
    };
    let xs = domain.iter().map(|p| p.x);
    let ys = domain.iter().map(|p| p.y);
    let (x0, x1) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = (ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
    let m = 0.05 * (x1 - x0).max(y1 - y0);
    let (w, h) = (x1 - x0 + 2.0 * m, y1 - y0 + 2.0 * m);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        fmt(w * style.scale),
        fmt(h * style.scale),
        fmt(x0 - m),
        fmt(-y1 - m),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(s, "<title>{} on {}</title>", inst.kind, space);
    let outline = ArcPath::polygon(&domain)?;
    let _ = writeln!(s, "<defs>");
    let _ = writeln!(s, r#"<clipPath id="domain"><path d="{}"/></clipPath>"#, path_data(std::slice::from_ref(&outline)));
    let _ = writeln!(s, r#"<g id="configuration">"#);
    for face in &config.faces {
        let color = &style.region_colors[face.label.index()];
        let _ = writeln!(
            s,
            r#"<path class="face" data-label="{}" fill="{color}" fill-rule="nonzero" stroke="none" d="{}"/>"#,
            face.label,
            path_data(&face.paths)
        );
    }
    for i in &config.interfaces {
        let _ = writeln!(
            s,
            r##"<path class="interface" data-left="{}" data-right="{}" fill="none" stroke="#222222" stroke-width="{}" stroke-linecap="round" d="M {} {}"/>"##,
            i.left,
            i.right,
            fmt(style.stroke_width),
            pt(i.edge.start),
            arc_command(&i.edge)
        );
    }
    let _ = writeln!(s, "</g>\n</defs>");
    let _ = writeln!(s, r#"<g clip-path="url(#domain)">"#);
    for t in &translates {
        let _ = writeln!(
            s,
            r##"<use href="#configuration" xlink:href="#configuration" transform="translate({} {})"/>"##,
            fmt(t.x),
            fmt(-t.y)
        );
    }
    let _ = writeln!(s, "</g>");
    if let Some(mx) = config.mirror_x {
        for x in [mx, mx + 0.5] {
            let _ = writeln!(
                s,
                r##"<line class="mirror" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555555" stroke-width="{}" stroke-dasharray="{} {}"/>"##,
                fmt(x),
                fmt(-y0),
                fmt(x),
                fmt(-y1),
                fmt(style.stroke_width * 0.5),
                fmt(style.stroke_width * 3.0),
                fmt(style.stroke_width * 2.0)
            );
        }
    }
    if style.show_fundamental_domain {
        let _ = writeln!(
            s,
            r##"<path class="domain" fill="none" stroke="#888888" stroke-width="{}" d="{}"/>"##,
            fmt(style.stroke_width * 0.5),
            path_data(std::slice::from_ref(&outline))
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Phase portrait: one polygon per cell colored by its first winner, ties
/// hatched, with axes and a legend.
pub fn render_portrait_svg(grid: &PortraitGrid, style: &RenderStyle) -> String {
    let extent = match grid.space {
        Space::Torus(t) => t.area(),
        _ => grid.step * grid.resolution as f64,
    };
    let size = style.scale.max(100.0);
    let (margin, legend_w) = (50.0, 190.0);
    let k = size / extent;
    let px = |a: [f64; 2]| format!("{},{}", fmt(margin + a[0] * k), fmt(margin + (extent - a[1]) * k));

    let mut s = String::new();
    let (w, h) = (size + 2.0 * margin + legend_w, size + 2.0 * margin);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">"#,
        fmt(w),
        fmt(h),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(s, "<title>Phase portrait on {}</title>", escape(&grid.space.to_string()));
    let _ = writeln!(
        s,
        r##"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="6" height="6"><path d="M 0 6 L 6 0" stroke="#000000" stroke-width="0.8"/></pattern></defs>"##
    );
    let _ = writeln!(s, r#"<g class="cells" stroke="none">"#);
    for (idx, c) in grid.cells.iter().enumerate() {
        let color = c.winners.first().map_or("#ffffff", |k| KIND_COLORS[k.index()]);
        let points: Vec<String> = grid.outline(idx).into_iter().map(px).collect();
        let points = points.join(" ");
        let _ = writeln!(
            s,
            r#"<polygon class="cell" data-winner="{}" fill="{color}" stroke="{color}" stroke-width="0.3" points="{points}"/>"#,
            c.winner_label()
        );
        if style.tie_hatch && c.is_tie() {
            let _ = writeln!(s, r#"<polygon class="tie" fill="url(#hatch)" points="{points}"/>"#);
        }
    }
    let _ = writeln!(s, "</g>");

    let (ox, oy) = (margin, margin + size);
    let _ = writeln!(
        s,
        r##"<g class="axes" stroke="#000000" stroke-width="1"><line x1="{ox}" y1="{oy}" x2="{}" y2="{oy}"/><line x1="{ox}" y1="{oy}" x2="{ox}" y2="{margin}"/></g>"##,
        ox + size
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">A1</text>"#, fmt(ox + size / 2.0), fmt(oy + 35.0));
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" transform="rotate(-90 {} {})">A2</text>"#,
        fmt(ox - 30.0),
        fmt(margin + size / 2.0),
        fmt(ox - 30.0),
        fmt(margin + size / 2.0)
    );
    for (x, y, anchor, label) in [
        (ox, oy + 16.0, "middle", "0".to_string()),
        (ox + size, oy + 16.0, "middle", format!("{extent:.3}")),
        (ox - 6.0, margin + 4.0, "end", format!("{extent:.3}")),
    ] {
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="{anchor}">{label}</text>"#, fmt(x), fmt(y));
    }

    let lx = margin + size + 30.0;
    let _ = writeln!(s, r#"<g class="legend">"#);
    for (n, kind) in CandidateKind::ALL.iter().enumerate() {
        let y = margin + 22.0 * n as f64;
        let _ = writeln!(
            s,
            r##"<rect x="{}" y="{}" width="14" height="14" fill="{}" stroke="#000000" stroke-width="0.5"/><text x="{}" y="{}">{}</text>"##,
            fmt(lx),
            fmt(y),
            KIND_COLORS[kind.index()],
            fmt(lx + 20.0),
            fmt(y + 11.0),
            kind.name()
        );
    }
    if style.tie_hatch {
        let y = margin + 22.0 * 5.0;
        let _ = writeln!(
            s,
            r##"<rect x="{}" y="{}" width="14" height="14" fill="url(#hatch)" stroke="#000000" stroke-width="0.5"/><text x="{}" y="{}">tie</text>"##,
            fmt(lx),
            fmt(y),
            fmt(lx + 20.0),
            fmt(y + 11.0)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
