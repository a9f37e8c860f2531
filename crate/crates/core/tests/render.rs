use std::f64::consts::PI;

use torus_bubbles::candidates::candidate_geometry;
use torus_bubbles::portrait::compute_portrait;
use torus_bubbles::render::{render_instance_svg, render_portrait_svg, RenderStyle};
use torus_bubbles::solver::SolverConfig;
use torus_bubbles::{CandidateInstance, CandidateKind, FlatTorus, Label, Solver, Space};

/// Decodes `M`, `L`, `A`, `Z` path data into closed polylines, following the
/// SVG endpoint-to-center arc conversion.
fn decode(d: &str, n: usize) -> Vec<Vec<(f64, f64)>> {
    let tok: Vec<&str> = d.split_whitespace().collect();
    let num = |k: usize| tok[k].parse::<f64>().unwrap();
    let mut out = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    let mut k = 0;
    while k < tok.len() {
        match tok[k] {
            "M" => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                cur.push((num(k + 1), num(k + 2)));
                k += 3;
            }
            "L" => {
                cur.push((num(k + 1), num(k + 2)));
                k += 3;
            }
            "A" => {
                let r = num(k + 1);
                let (fa, fs) = (num(k + 4) != 0.0, num(k + 5) != 0.0);
                let (x1, y1) = *cur.last().unwrap();
                let (x2, y2) = (num(k + 6), num(k + 7));
                let (xp, yp) = ((x1 - x2) / 2.0, (y1 - y2) / 2.0);
                let sq = xp * xp + yp * yp;
                let r = r.max(sq.sqrt());
                let sign = if fa != fs { 1.0 } else { -1.0 };
                let coef = sign * ((r * r - sq).max(0.0) / sq).sqrt();
                let (cxp, cyp) = (coef * yp, -coef * xp);
                let (cx, cy) = (cxp + (x1 + x2) / 2.0, cyp + (y1 + y2) / 2.0);
                let t1 = (yp - cyp).atan2(xp - cxp);
                let t2 = (-yp - cyp).atan2(-xp - cxp);
                let mut dt = t2 - t1;
                if fs && dt < 0.0 {
                    dt += 2.0 * PI;
                }
                if !fs && dt > 0.0 {
                    dt -= 2.0 * PI;
                }
                for s in 1..n {
                    let t = t1 + dt * s as f64 / n as f64;
                    cur.push((cx + r * t.cos(), cy + r * t.sin()));
                }
                cur.push((x2, y2));
                k += 8;
            }
            "Z" => {
                out.push(std::mem::take(&mut cur));
                k += 1;
            }
            other => panic!("unexpected token {other}"),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn shoelace(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    0.5 * (0..n).map(|i| poly[i].0 * poly[(i + 1) % n].1 - poly[(i + 1) % n].0 * poly[i].1).sum::<f64>()
}

fn polyline_length(poly: &[(f64, f64)]) -> f64 {
    poly.windows(2).map(|w| ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt()).sum()
}

fn instances() -> Vec<(Space, CandidateInstance)> {
    let solver = Solver::new(SolverConfig { chain_sweep: 128, ..SolverConfig::default() });
    let mut out = Vec::new();
    let cases: [(Space, f64, f64); 6] = [
        (Space::Torus(FlatTorus::square()), 0.05, 0.08),
        (Space::Torus(FlatTorus::square()), 0.12, 0.2),
        (Space::Torus(FlatTorus::from_degrees(1.0, 75.0).unwrap()), 0.1, 0.3),
        (Space::Torus(FlatTorus::hexagonal()), 0.25, 0.3),
        (Space::Cylinder, 0.05, 0.4),
        (Space::Strip, 0.1, 0.2),
    ];
    for (space, a1, a2) in cases {
        let report = solver.best_double_bubble(&space, a1, a2).unwrap();
        for kind in CandidateKind::ALL {
            if let Some(inst) = report.feasible.iter().find(|c| c.kind == kind) {
                out.push((space, inst.clone()));
            }
        }
    }
    out
}

#[test]
fn instance_drawings_parse_and_measure() {
    let style = RenderStyle::default();
    let mut kinds = std::collections::BTreeSet::new();
    for (space, inst) in instances() {
        kinds.insert(inst.kind);
        let svg = render_instance_svg(&inst, &space, &style).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert!(!svg.contains("http://") || svg.matches("http://").count() == 2, "no external references");
        let scale = if inst.quotient { 2.0 } else { 1.0 };

        // Exact arcs of the drawing.
        let config = candidate_geometry(&inst, &space).unwrap();
        for label in Label::ALL {
            let expected = inst.area(label) * scale;
            if expected.is_finite() {
                let exact = config.region_area(label).unwrap();
                assert!((exact - expected).abs() <= 1e-6 * expected, "{} {label}: {exact} vs {expected}", inst.kind);
            }
        }

        // The same faces decoded from the emitted text, with coordinates rounded to 1e-6.
        let mut measured = [0.0f64; 3];
        let mut boundary = [0.0f64; 3];
        for node in doc.descendants().filter(|n| n.attribute("class") == Some("face")) {
            let label = match node.attribute("data-label").unwrap() {
                "R1" => 0,
                "R2" => 1,
                _ => 2,
            };
            for poly in decode(node.attribute("d").unwrap(), 4000) {
                measured[label] -= shoelace(&poly);
                boundary[label] += polyline_length(&poly);
            }
        }
        for label in Label::ALL {
            let expected = inst.area(label) * scale;
            if expected.is_finite() {
                let got = measured[label.index()];
                let tol = 1e-6 * expected + 2e-6 * boundary[label.index()];
                assert!((got - expected).abs() <= tol, "{} {label}: {got} vs {expected}", inst.kind);
            }
        }

        // Interface arcs bend the same way as the model arcs.
        let interfaces: Vec<_> = doc.descendants().filter(|n| n.attribute("class") == Some("interface")).collect();
        assert_eq!(interfaces.len(), config.interfaces.len());
        for (node, i) in interfaces.iter().zip(&config.interfaces) {
            let poly = &decode(node.attribute("d").unwrap(), 2)[0];
            let mid = poly[poly.len() / 2];
            let want = i.edge.point_at(0.5);
            if !i.edge.is_straight() {
                assert!((mid.0 - want.x).abs() < 1e-5 && (mid.1 + want.y).abs() < 1e-5, "{} {mid:?} {want:?}", inst.kind);
            }
        }
    }
    assert_eq!(kinds.len(), 5);
}

#[test]
fn double_band_drawing_has_three_lines() {
    let space = Space::Torus(FlatTorus::square());
    let solver = Solver::new(SolverConfig { chain_sweep: 64, ..SolverConfig::default() });
    let report = solver.best_double_bubble(&space, 0.3, 0.3).unwrap();
    let band = report.feasible.iter().find(|c| c.kind == CandidateKind::DoubleBand).unwrap();
    let svg = render_instance_svg(band, &space, &RenderStyle::default()).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let lines = doc.descendants().filter(|n| n.attribute("class") == Some("interface")).count();
    assert_eq!(lines, 3);
    assert!(!svg.contains(" A "));
}

#[test]
fn colors_must_differ() {
    let space = Space::Cylinder;
    let solver = Solver::new(SolverConfig { chain_sweep: 64, ..SolverConfig::default() });
    let inst = solver.best_double_bubble(&space, 0.05, 0.05).unwrap().winners[0].clone();
    let mut style = RenderStyle::default();
    style.region_colors[1] = style.region_colors[0].clone();
    assert!(render_instance_svg(&inst, &space, &style).is_err());
}

#[test]
fn portrait_drawing() {
    let solver = Solver::new(SolverConfig { chain_sweep: 128, ..SolverConfig::default() });
    let grid = compute_portrait(&solver, &Space::Torus(FlatTorus::hexagonal()), 16).unwrap();
    let svg = render_portrait_svg(&grid, &RenderStyle::default());
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let cells = doc.descendants().filter(|n| n.attribute("class") == Some("cell")).count();
    assert_eq!(cells, grid.cells.len());
    let ties = doc.descendants().filter(|n| n.attribute("class") == Some("tie")).count();
    assert_eq!(ties, grid.cells.iter().filter(|c| c.is_tie()).count());
    assert!(ties > 0);
    let texts: Vec<_> = doc.descendants().filter_map(|n| n.text()).collect();
    for label in ["A1", "A2", "HexagonTiling", "DoubleBand", "StandardChain"] {
        assert!(texts.contains(&label), "{label}");
    }
}
