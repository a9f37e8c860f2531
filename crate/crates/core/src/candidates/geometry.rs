//! Concrete arcs for candidate instances, drawn in the fundamental domain.
//!
//! Every interface edge records the regions on its left and right. Faces are
//! closed paths whose signed areas add up to the region areas; a face may
//! cross the edge of the fundamental domain, in which case it is understood
//! modulo the lattice.

use serde::Serialize;

use super::{BandLensParams, CandidateInstance, CandidateParams, ChainShape, Label, SdbParams};
use crate::arc::{ArcEdge, ArcPath, Point};
use crate::error::{Error, Result};
use crate::torus::{HomologyClass, Space};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interface {
    pub edge: ArcEdge<f64>,
    pub left: Label,
    pub right: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Face {
    pub label: Label,
    pub paths: Vec<ArcPath<f64>>,
}

impl Face {
    pub fn area(&self) -> Result<f64> {
        self.paths.iter().try_fold(0.0, |acc, p| Ok(acc + p.area()?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    pub space: Space,
    /// Period vectors: `u, v` on a torus, `u` on the cylinder.
    pub lattice: Vec<Point<f64>>,
    pub interfaces: Vec<Interface>,
    pub faces: Vec<Face>,
    /// Vertical mirror line of a cylinder drawing; the strip is the part between
    /// it and its translate by one half.
    pub mirror_x: Option<f64>,
    /// Drawn as the double cover of a strip configuration.
    pub quotient: bool,
}

impl Configuration {
    pub fn region_area(&self, label: Label) -> Result<f64> {
        self.faces.iter().filter(|f| f.label == label).try_fold(0.0, |acc, f| Ok(acc + f.area()?))
    }

    /// Total length of the interfaces, each edge counted once.
    pub fn total_length(&self) -> f64 {
        self.interfaces.iter().map(|i| i.edge.length()).sum()
    }

    pub fn vertices(&self) -> Vec<Point<f64>> {
        self.interfaces.iter().flat_map(|i| [i.edge.start, i.edge.end]).collect()
    }
}

/// Collects edges and faces with family roles, relabeled at the end.
struct Builder {
    interfaces: Vec<(ArcEdge<f64>, usize, usize)>,
    faces: Vec<(usize, Vec<ArcPath<f64>>)>,
}

impl Builder {
    fn new() -> Self {
        Self { interfaces: Vec::new(), faces: Vec::new() }
    }

    fn edge(&mut self, e: ArcEdge<f64>, left: usize, right: usize) -> ArcEdge<f64> {
        self.interfaces.push((e, left, right));
        e
    }

    fn face(&mut self, role: usize, edges: Vec<ArcEdge<f64>>) -> Result<ArcPath<f64>> {
        let path = ArcPath::closed(edges)?;
        self.faces.push((role, vec![path.clone()]));
        Ok(path)
    }

    fn finish(self, roles: [Label; 3], space: Space, lattice: Vec<Point<f64>>, mirror_x: Option<f64>) -> Configuration {
        Configuration {
            space,
            lattice,
            interfaces: self
                .interfaces
                .into_iter()
                .map(|(edge, l, r)| Interface { edge, left: roles[l], right: roles[r] })
                .collect(),
            faces: self.faces.into_iter().map(|(role, paths)| Face { label: roles[role], paths }).collect(),
            mirror_x,
            quotient: false,
        }
    }
}

/// Region boundaries of a feasible instance. Strip instances are drawn as
/// their double cover on the cylinder, so their faces carry twice the areas.
pub fn candidate_geometry(inst: &CandidateInstance, space: &Space) -> Result<Configuration> {
    let quotient = inst.quotient || matches!(space, Space::Strip);
    let space = if quotient { Space::Cylinder } else { *space };
    let p = |x: f64, y: f64| Point::new(x, y);
    let (lattice, torus_area, anchor) = match space {
        Space::Torus(t) => (vec![t.u(), t.v()], Some(t.area()), (t.u() + t.v()) * 0.5),
        _ => (vec![p(1.0, 0.0)], None, p(0.5, 0.0)),
    };
    let mut b = Builder::new();
    let mut mirror_x = None;
    match inst.params {
        CandidateParams::StandardDoubleBubble(params) => {
            sdb(&mut b, params, anchor)?;
            mirror_x = Some(anchor.x);
        }
        CandidateParams::ChainUnequal { axis, params } => {
            mirror_x = chain(&mut b, params.shape(), axis, &space, anchor)?;
        }
        CandidateParams::ChainEqual { axis, params } => {
            mirror_x = chain(&mut b, params.shape(), axis, &space, anchor)?;
        }
        CandidateParams::BandLens(params) => {
            band_lens(&mut b, params, &lattice, torus_area, anchor)?;
            mirror_x = Some(anchor.x);
        }
        CandidateParams::DoubleBand { widths } => {
            double_band(&mut b, widths, torus_area)?;
            mirror_x = Some(0.5);
        }
        CandidateParams::HexagonTiling(params) => {
            if !space.torus().is_some_and(|t| t.is_hexagonal()) {
                return Err(Error::InfeasibleEmbedding("hexagon tilings live on the hexagonal torus only".into()));
            }
            hex(&mut b, params.a, params.b, params.c)?;
        }
    }
    // Exterior of a contractible or chain configuration on the torus: the
    // fundamental domain with the components removed.
    if let (Some(_), true) = (torus_area, b.faces.iter().all(|(r, _)| *r != 2)) {
        let (u, v) = (lattice[0], lattice[1]);
        let mut paths = vec![ArcPath::polygon(&[p(0.0, 0.0), u, u + v, v])?];
        paths.extend(b.faces.iter().flat_map(|(_, ps)| ps.iter().map(ArcPath::reversed)));
        b.faces.push((2, paths));
    }
    if torus_area.is_some() {
        mirror_x = None;
    }
    let mut cfg = b.finish(inst.roles, space, lattice, mirror_x);
    cfg.quotient = quotient;
    Ok(cfg)
}

fn sdb(b: &mut Builder, params: SdbParams, center: Point<f64>) -> Result<()> {
    let e = params.evaluate();
    if e.diameter > 1.0 {
        return Err(Error::InfeasibleEmbedding(format!("double bubble diameter {} exceeds 1", e.diameter)));
    }
    let (hi, lo) = params.cap_angles();
    let half = Point::new(params.chord * 0.5, 0.0);
    let (p0, p1) = (center - half, center + half);
    let cap_hi = b.edge(ArcEdge::new(p0, p1, hi)?, 2, 0);
    let inner = b.edge(ArcEdge::new(p0, p1, -params.theta)?, 0, 1);
    let cap_lo = b.edge(ArcEdge::new(p0, p1, -lo)?, 1, 2);
    b.face(0, vec![inner, cap_hi.reversed()])?;
    b.face(1, vec![cap_lo, inner.reversed()])?;
    Ok(())
}

fn chain(
    b: &mut Builder,
    shape: ChainShape<f64>,
    axis: HomologyClass,
    space: &Space,
    anchor: Point<f64>,
) -> Result<Option<f64>> {
    let l0 = shape.axis_length;
    let [t1, t2, t3] = shape.theta;
    let [c1, _, c3] = shape.chord;
    let (w, spacing) = match space {
        Space::Torus(t) => (t.lattice_vector(axis), t.area() / l0),
        _ => {
            if axis != HomologyClass::WRAP_ONCE[0] {
                return Err(Error::InfeasibleEmbedding(format!("cylinder chains wrap along (1, 0), not {axis}")));
            }
            (Point::new(1.0, 0.0), f64::INFINITY)
        }
    };
    if (w.norm() - l0).abs() > 1e-9 * l0 {
        return Err(Error::InfeasibleEmbedding(format!("axis {axis} has length {}, not {l0}", w.norm())));
    }
    if shape.height() >= spacing {
        return Err(Error::InfeasibleEmbedding(format!(
            "chain height {} does not fit in spacing {spacing}",
            shape.height()
        )));
    }
    if 2.0 * shape.interface_sagitta() >= shape.chord[1] {
        return Err(Error::InfeasibleEmbedding("chain interfaces touch".into()));
    }
    let ea = w * (1.0 / l0);
    let en = ea.perp();
    let origin = anchor - ea * (c1 * 0.5);
    let at = |x: f64, y: f64| origin + ea * x + en * y;
    let h = c3 * 0.5;
    let e1 = b.edge(ArcEdge::new(at(0.0, h), at(c1, h), t1)?, 2, 0);
    let e2 = b.edge(ArcEdge::new(at(0.0, -h), at(c1, -h), -t1)?, 0, 2);
    let e3 = b.edge(ArcEdge::new(at(c1, h), at(l0, h), t2)?, 2, 1);
    let e4 = b.edge(ArcEdge::new(at(c1, -h), at(l0, -h), -t2)?, 1, 2);
    if c3 > 1e-12 {
        let e5 = b.edge(ArcEdge::new(at(0.0, -h), at(0.0, h), t3)?, 1, 0);
        let e6 = b.edge(ArcEdge::new(at(c1, -h), at(c1, h), -t3)?, 0, 1);
        b.face(0, vec![e2, e6, e1.reversed(), e5.reversed()])?;
        b.face(1, vec![e4, e5.translated(w), e3.reversed(), e6.reversed()])?;
    } else {
        b.face(0, vec![e2, e1.reversed()])?;
        b.face(1, vec![e4, e3.reversed()])?;
    }
    Ok(Some(anchor.x))
}

fn band_lens(
    b: &mut Builder,
    params: BandLensParams,
    lattice: &[Point<f64>],
    torus_area: Option<f64>,
    anchor: Point<f64>,
) -> Result<()> {
    let d = BandLensParams::new(params.r, params.d)?.d;
    if let Some(t) = torus_area {
        if !params.fits_exterior(t) {
            return Err(Error::InfeasibleEmbedding("lens does not clear the exterior band".into()));
        }
    }
    let pt = Point::new;
    let u = lattice[0];
    let s = params.lens_chord() * 0.5;
    let y1 = if torus_area.is_some() { anchor.y - d * 0.5 } else { 0.0 };
    let (vl, vr) = (pt(anchor.x - s, y1), pt(anchor.x + s, y1));
    let third = std::f64::consts::FRAC_PI_3;
    let upper = b.edge(ArcEdge::new(vl, vr, third)?, 1, 0);
    let lower = b.edge(ArcEdge::new(vl, vr, -third)?, 0, 2);
    let seg = b.edge(ArcEdge::line(vr, vl + u)?, 1, 2);
    b.edge(ArcEdge::line(pt(anchor.x - 0.5, y1 + d), pt(anchor.x + 0.5, y1 + d))?, 2, 1);
    b.face(0, vec![lower, upper.reversed()])?;
    let up = pt(0.0, d);
    b.face(
        1,
        vec![
            upper,
            seg,
            ArcEdge::line(vl + u, vl + u + up)?,
            ArcEdge::line(vl + u + up, vl + up)?,
            ArcEdge::line(vl + up, vl)?,
        ],
    )?;
    if torus_area.is_some() {
        let v = lattice[1];
        let base = pt(vl.x + v.x, y1 + d);
        b.face(
            2,
            vec![
                ArcEdge::line(base, base + u)?,
                ArcEdge::line(base + u, vl + u + v)?,
                seg.translated(v).reversed(),
                lower.translated(v).reversed(),
                ArcEdge::line(vl + v, base)?,
            ],
        )?;
    }
    Ok(())
}

fn double_band(b: &mut Builder, widths: [f64; 2], torus_area: Option<f64>) -> Result<()> {
    let pt = Point::new;
    let ys = [0.0, widths[0], widths[0] + widths[1]];
    let sides = [(0, 2), (1, 0), (2, 1)];
    for (y, (l, r)) in ys.iter().zip(sides) {
        b.edge(ArcEdge::line(pt(0.0, *y), pt(1.0, *y))?, l, r);
    }
    let rect = |y0: f64, y1: f64| ArcPath::polygon(&[pt(0.0, y0), pt(1.0, y0), pt(1.0, y1), pt(0.0, y1)]);
    b.faces.push((0, vec![rect(ys[0], ys[1])?]));
    b.faces.push((1, vec![rect(ys[1], ys[2])?]));
    if let Some(h) = torus_area {
        if !(ys[2] < h) {
            return Err(Error::InfeasibleEmbedding("bands fill the torus".into()));
        }
        b.faces.push((2, vec![rect(ys[2], h)?]));
    }
    Ok(())
}

fn hex(b: &mut Builder, a: f64, bb: f64, c: f64) -> Result<()> {
    let dir = |k: usize| Point::unit(k as f64 * std::f64::consts::FRAC_PI_3);
    let x0 = Point::new(0.0, 0.0);
    let x1 = x0 + dir(0) * a + dir(1) * bb;
    let x2 = x1 + dir(0) * c + dir(1) * a;
    // Each X vertex sends edges at 0°, 120°, 240°; sectors are listed from 0°.
    let stars = [(x0, [a, bb, c], [0, 1, 2]), (x1, [c, a, bb], [2, 0, 1]), (x2, [bb, c, a], [1, 2, 0])];
    for (x, lens, sec) in stars {
        for k in 0..3 {
            if lens[k] > 0.0 {
                b.edge(ArcEdge::line(x, x + dir(2 * k) * lens[k])?, sec[k], sec[(k + 2) % 3]);
            }
        }
    }
    for (role, start, s1, s2) in [(0, x0, a, bb), (1, x2, bb, c), (2, x1, c, a)] {
        let mut pts = vec![start];
        for k in 0..6 {
            let len = if k % 2 == 0 { s1 } else { s2 };
            if len > 0.0 {
                pts.push(*pts.last().unwrap() + dir(k) * len);
            }
        }
        pts.pop();
        b.faces.push((role, vec![ArcPath::polygon(&pts)?]));
    }
    Ok(())
}
