//! Brute-force checks: chord quadrature of areas and lengths, vertex
//! regularity of configurations, and numeric scans of two inequalities.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arc::{ArcEdge, ArcPath, Point};
use crate::candidates::chain::unit_c3_max;
use crate::candidates::geometry::candidate_geometry;
use crate::candidates::sdb::g;
use crate::candidates::{
    BandLensParams, CandidateInstance, CandidateKind, CandidateParams, ChainParamsEqual, ChainParamsUnequal,
    Configuration, HexTilingParams, Label, SdbParams,
};
use crate::error::{Error, Result};
use crate::torus::{FlatTorus, Space};

/// Vertices closer than this modulo the lattice are the same point.
const VERTEX_TOL: f64 = 1e-9;

fn check_n(n: usize) -> Result<()> {
    if n < 16 {
        return Err(Error::domain("quadrature", format!("n = {n} below 16")));
    }
    Ok(())
}

fn polyline(e: &ArcEdge<f64>, n: usize) -> Vec<Point<f64>> {
    match (e.center(), e.radius()) {
        (Some(c), Some(r)) => {
            let a0 = (e.start - c).angle();
            let sweep = -2.0 * e.bulge;
            let mut pts: Vec<_> =
                (0..n).map(|k| c + Point::unit(a0 + sweep * k as f64 / n as f64) * r).collect();
            pts.push(e.end);
            pts
        }
        _ => vec![e.start, e.end],
    }
}

/// Area enclosed by `path` with every curved edge replaced by `n` chords.
pub fn quadrature_area(path: &ArcPath<f64>, n: usize) -> Result<f64> {
    check_n(n)?;
    if !path.closed {
        return Err(Error::OpenPath("quadrature area of an open path".into()));
    }
    let mut twice = 0.0;
    for e in &path.edges {
        let pts = polyline(e, n);
        twice += pts.windows(2).map(|w| w[0].cross(w[1])).sum::<f64>();
    }
    Ok(0.5 * twice)
}

/// Length of `path` with every curved edge replaced by `n` chords.
pub fn quadrature_length(path: &ArcPath<f64>, n: usize) -> Result<f64> {
    check_n(n)?;
    Ok(path.edges.iter().map(|e| edge_quadrature_length(e, n)).sum())
}

fn edge_quadrature_length(e: &ArcEdge<f64>, n: usize) -> f64 {
    polyline(e, n).windows(2).map(|w| w[0].distance(w[1])).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularityReport {
    /// Largest deviation of a vertex angle from 2π/3 (or π where a curve
    /// merely crosses the edge of the fundamental domain).
    pub max_angle_error: f64,
    /// Largest |sum of outgoing signed curvatures| at a vertex.
    pub cocycle_residual: f64,
    /// Largest spread of curvature among interfaces separating the same two regions.
    pub curvature_consistency: f64,
    pub vertices: usize,
}

impl RegularityReport {
    pub fn max_residual(&self) -> f64 {
        self.max_angle_error.max(self.cocycle_residual).max(self.curvature_consistency)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

struct Outgoing {
    point: Point<f64>,
    angle: f64,
    curvature: f64,
    left: Label,
    right: Label,
}

/// Reduces a displacement to its nearest representative modulo the lattice.
fn wrap(d: Point<f64>, lattice: &[Point<f64>]) -> Point<f64> {
    match lattice {
        [u, v] => {
            let det = u.cross(*v);
            let b = (u.cross(d) / det).round();
            let d = d - *v * b;
            let a = (d.cross(*v) / det).round();
            d - *u * a
        }
        [u] => d - *u * (d.dot(*u) / u.dot(*u)).round(),
        _ => d,
    }
}

/// Angles, curvature cocycle and curvature consistency of a labeled configuration.
pub fn check_regularity(config: &Configuration) -> Result<RegularityReport> {
    let mut ends = Vec::with_capacity(2 * config.interfaces.len());
    for i in &config.interfaces {
        let (ts, te) = (i.edge.tangent_start(), i.edge.tangent_end());
        let k = i.edge.signed_curvature();
        ends.push(Outgoing { point: i.edge.start, angle: ts.angle(), curvature: k, left: i.left, right: i.right });
        ends.push(Outgoing { point: i.edge.end, angle: (-te).angle(), curvature: -k, left: i.right, right: i.left });
    }
    let mut cluster = vec![usize::MAX; ends.len()];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for a in 0..ends.len() {
        if cluster[a] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        let mut members = vec![a];
        cluster[a] = id;
        for b in a + 1..ends.len() {
            if cluster[b] == usize::MAX && wrap(ends[b].point - ends[a].point, &config.lattice).norm() <= VERTEX_TOL {
                cluster[b] = id;
                members.push(b);
            }
        }
        clusters.push(members);
    }

    let mut report = RegularityReport {
        max_angle_error: 0.0,
        cocycle_residual: 0.0,
        curvature_consistency: 0.0,
        vertices: clusters.len(),
    };
    for members in &clusters {
        let p = ends[members[0]].point;
        let target = match members.len() {
            3 => 2.0 * FRAC_PI_3,
            2 => PI,
            d => return Err(Error::UnmatchedInterface(format!("vertex at ({}, {}) has degree {d}", p.x, p.y))),
        };
        let mut sorted = members.clone();
        sorted.sort_by(|&a, &b| ends[a].angle.total_cmp(&ends[b].angle));
        for (k, &a) in sorted.iter().enumerate() {
            let b = sorted[(k + 1) % sorted.len()];
            let mut gap = ends[b].angle - ends[a].angle;
            if gap <= 0.0 {
                gap += 2.0 * PI;
            }
            report.max_angle_error = report.max_angle_error.max((gap - target).abs());
            if ends[a].left != ends[b].right {
                return Err(Error::UnmatchedInterface(format!(
                    "vertex at ({}, {}): region {} meets region {}",
                    p.x, p.y, ends[a].left, ends[b].right
                )));
            }
        }
        let sum: f64 = members.iter().map(|&a| ends[a].curvature).sum();
        report.cocycle_residual = report.cocycle_residual.max(sum.abs());
    }

    // Curvature oriented from the lower to the higher label index.
    let mut by_pair: [[Option<(f64, f64)>; 3]; 3] = [[None; 3]; 3];
    for i in &config.interfaces {
        if i.left == i.right {
            return Err(Error::UnmatchedInterface(format!("interface with region {} on both sides", i.left)));
        }
        let k = i.edge.signed_curvature();
        let (lo, hi, k) = if i.left.index() < i.right.index() { (i.left, i.right, k) } else { (i.right, i.left, -k) };
        let slot = &mut by_pair[lo.index()][hi.index()];
        *slot = Some(slot.map_or((k, k), |(a, b)| (a.min(k), b.max(k))));
    }
    for (lo, hi) in by_pair.iter().flatten().flatten() {
        report.curvature_consistency = report.curvature_consistency.max(hi - lo);
    }
    Ok(report)
}

/// Minimum margins of the scanned inequalities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub samples: usize,
    /// `min g(θ)` over an interior grid of `(0, π/3)`; must be positive.
    pub g_margin: f64,
    pub g_argmin: f64,
    /// `min (Q(φ) − 2)` over `[acos(7/9), π/2]` for the octagon-square quotient `Q`.
    pub octagon_margin: f64,
    pub octagon_argmin: f64,
    /// Grid points where `Q` equals 2 to within 1e-12.
    pub octagon_equality_points: Vec<f64>,
    /// `min (P − πD)` for unit-chord double bubbles over `[0, π/3)`.
    pub diameter_margin: f64,
    pub diameter_argmin: f64,
}

impl InequalityReport {
    pub fn passes(&self) -> bool {
        self.g_margin > 0.0
            && self.octagon_margin >= -1e-12
            && self.octagon_equality_points.iter().all(|&p| (p - FRAC_PI_3).abs() <= 1e-9)
            && self.diameter_margin > 0.0
    }
}

/// Octagon-square quotient for lattice angle `phi`.
pub fn octagon_quotient(phi: f64) -> f64 {
    let m = phi.max(FRAC_PI_2 - phi);
    let num = 2f64.max(1.0 + 2.0 * phi.cos()) * (1.0 + phi.sin()) - 3.0;
    num / ((0.5 * m).sin() + (0.5 * m).cos() - 1.0)
}

fn argmin(points: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    points.fold((f64::NAN, f64::INFINITY), |best, (x, v)| if v < best.1 { (x, v) } else { best })
}

pub fn verify_paper_inequalities(samples: usize) -> Result<InequalityReport> {
    if samples < 100 {
        return Err(Error::domain("inequality scan", format!("{samples} samples, need at least 100")));
    }
    let m = samples as f64;
    let (g_argmin, g_margin) = argmin((1..=samples).map(|k| {
        let t = FRAC_PI_3 * k as f64 / (m + 1.0);
        (t, g(t))
    }));
    let lo = (7.0f64 / 9.0).acos();
    let mut phis: Vec<f64> = (0..samples).map(|k| lo + (FRAC_PI_2 - lo) * k as f64 / (m - 1.0)).collect();
    phis.push(FRAC_PI_3);
    let (octagon_argmin, octagon_margin) = argmin(phis.iter().map(|&p| (p, octagon_quotient(p) - 2.0)));
    let mut octagon_equality_points: Vec<f64> =
        phis.iter().copied().filter(|&p| (octagon_quotient(p) - 2.0).abs() <= 1e-12).collect();
    octagon_equality_points.sort_by(f64::total_cmp);
    octagon_equality_points.dedup();
    let (diameter_argmin, diameter_margin) = argmin((0..samples).map(|k| {
        let t = FRAC_PI_3 * k as f64 / m;
        let e = SdbParams { theta: t, chord: 1.0 }.evaluate();
        (t, e.perimeter - PI * e.diameter)
    }));
    Ok(InequalityReport {
        samples,
        g_margin,
        g_argmin,
        octagon_margin,
        octagon_argmin,
        octagon_equality_points,
        diameter_margin,
        diameter_argmin,
    })
}

/// Quadrature agreement for one family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyCheck {
    pub kind: CandidateKind,
    pub samples: usize,
    /// Largest relative error between closed-form and quadrature region areas.
    pub max_area_error: f64,
    pub max_perimeter_error: f64,
    /// Largest regularity residual over the sampled geometries.
    pub max_regularity: f64,
}

impl FamilyCheck {
    pub fn passes(&self, quadrature_tol: f64, regularity_tol: f64) -> bool {
        self.samples > 0
            && self.max_area_error <= quadrature_tol
            && self.max_perimeter_error <= quadrature_tol
            && self.max_regularity <= regularity_tol
    }
}

/// Compares closed forms with quadrature (and checks regularity) on
/// `samples` random feasible instances of each family.
pub fn formula_suite(samples: usize, n: usize, seed: u64) -> Result<Vec<FamilyCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CandidateKind::ALL
        .iter()
        .map(|&kind| {
            let mut check =
                FamilyCheck { kind, samples: 0, max_area_error: 0.0, max_perimeter_error: 0.0, max_regularity: 0.0 };
            while check.samples < samples {
                let Some((space, inst)) = random_instance(kind, &mut rng, check.samples)? else { continue };
                let config = candidate_geometry(&inst, &space)?;
                let err = quadrature_errors(&inst, &config, n)?;
                check.max_area_error = check.max_area_error.max(err.0);
                check.max_perimeter_error = check.max_perimeter_error.max(err.1);
                check.max_regularity = check.max_regularity.max(check_regularity(&config)?.max_residual());
                check.samples += 1;
            }
            Ok(check)
        })
        .collect()
}

/// Relative area error (worst finite region) and relative perimeter error.
pub fn quadrature_errors(inst: &CandidateInstance, config: &Configuration, n: usize) -> Result<(f64, f64)> {
    let scale = if config.quotient { 2.0 } else { 1.0 };
    let mut area_err: f64 = 0.0;
    for label in Label::ALL {
        let expected = inst.area(label) * scale;
        if !expected.is_finite() {
            continue;
        }
        let mut q = 0.0;
        for face in config.faces.iter().filter(|f| f.label == label) {
            for p in &face.paths {
                q += quadrature_area(p, n)?;
            }
        }
        area_err = area_err.max((q - expected).abs() / expected);
    }
    let length: f64 = config.interfaces.iter().map(|i| edge_quadrature_length(&i.edge, n)).sum();
    let expected = inst.perimeter * scale;
    Ok((area_err, (length - expected).abs() / expected))
}

/// Hexagonal, `(1, 75°)`, square and `(1.2, 90°)`.
pub fn portrait_tori() -> [FlatTorus; 4] {
    [
        FlatTorus::hexagonal(),
        FlatTorus::from_degrees(1.0, 75.0).expect("valid torus"),
        FlatTorus::square(),
        FlatTorus::from_degrees(1.2, 90.0).expect("valid torus"),
    ]
}

/// A random feasible instance of `kind`, or `None` for a rejected draw.
pub fn random_instance(kind: CandidateKind, rng: &mut ChaCha8Rng, k: usize) -> Result<Option<(Space, CandidateInstance)>> {
    let roles = [Label::R1, Label::R2, Label::R0];
    let tori = portrait_tori();
    let (space, params) = match kind {
        CandidateKind::StandardDoubleBubble => {
            let theta = rng.gen_range(0.0..FRAC_PI_3 * 0.999);
            let unit = SdbParams { theta, chord: 1.0 }.evaluate().diameter;
            let chord = rng.gen_range(0.05..0.95) / unit;
            let space = Space::Torus(tori[k % 4]);
            (space, CandidateParams::StandardDoubleBubble(SdbParams::new(theta, chord)?))
        }
        CandidateKind::StandardChain => {
            let torus = tori[k % 4];
            let axes = torus.chain_axes();
            let (axis, l0) = axes[rng.gen_range(0..axes.len())];
            let params = if k % 5 == 4 {
                CandidateParams::ChainEqual { axis, params: ChainParamsEqual::new(l0, rng.gen_range(0.0..0.3) * l0)? }
            } else {
                let theta3 = rng.gen_range(0.01..FRAC_PI_6 - 0.01);
                let c3 = rng.gen_range(0.01..1.0) * unit_c3_max(theta3).min(2.0) * l0;
                match ChainParamsUnequal::from_interface(l0, theta3, c3) {
                    Ok(params) => CandidateParams::ChainUnequal { axis, params },
                    Err(_) => return Ok(None),
                }
            };
            (Space::Torus(torus), params)
        }
        CandidateKind::BandLens => {
            let torus = tori[k % 4];
            let r = rng.gen_range(0.02..0.98 / 3f64.sqrt());
            let d = rng.gen_range(0.5 * r..torus.area() - 0.5 * r);
            match BandLensParams::new(r, d) {
                Ok(p) if p.fits_exterior(torus.area()) => (Space::Torus(torus), CandidateParams::BandLens(p)),
                _ => return Ok(None),
            }
        }
        CandidateKind::DoubleBand => {
            let torus = tori[k % 4];
            let t = torus.area();
            let w0 = rng.gen_range(0.01..t - 0.02);
            let w1 = rng.gen_range(0.005..t - w0 - 0.005);
            (Space::Torus(torus), CandidateParams::DoubleBand { widths: [w0, w1] })
        }
        CandidateKind::HexagonTiling => {
            let a = rng.gen_range(0.01..0.98);
            let b = rng.gen_range(0.01..0.99 - a);
            let p = HexTilingParams::new(a, b, 1.0 - a - b)?;
            (Space::Torus(tori[0]), CandidateParams::HexagonTiling(p))
        }
    };
    match CandidateInstance::new(params, roles, &space) {
        Ok(inst) => match candidate_geometry(&inst, &space) {
            Ok(_) => Ok(Some((space, inst))),
            Err(Error::InfeasibleEmbedding(_)) => Ok(None),
            Err(e) => Err(e),
        },
        Err(Error::Domain { .. }) | Err(Error::InfeasibleEmbedding(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn circle(r: f64) -> ArcPath<f64> {
        let pts = [Point::new(r, 0.0), Point::new(0.0, r), Point::new(-r, 0.0), Point::new(0.0, -r)];
        ArcPath::closed((0..4).map(|i| ArcEdge::new(pts[i], pts[(i + 1) % 4], -FRAC_PI_2 / 2.0).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn unit_square() {
        let sq = ArcPath::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        assert_eq!(quadrature_area(&sq, 16).unwrap(), 1.0);
        assert_eq!(quadrature_length(&sq, 16).unwrap(), 4.0);
        assert!(quadrature_area(&sq, 15).is_err());
        assert!(quadrature_area(&ArcPath::open(sq.edges.clone()), 16).is_err());
    }

    #[test]
    fn circle_converges() {
        let c = circle(1.0);
        assert_relative_eq!(quadrature_length(&c, 100_000).unwrap(), 2.0 * PI, epsilon = 1e-8);
        assert_relative_eq!(quadrature_area(&c, 100_000).unwrap(), PI, epsilon = 1e-8);
        let coarse = (quadrature_area(&c, 100).unwrap() - PI).abs();
        let fine = (quadrature_area(&c, 200).unwrap() - PI).abs();
        assert_relative_eq!(coarse / fine, 4.0, epsilon = 0.01);
    }

    #[test]
    fn octagon_equality_at_pi_over_3() {
        assert!((octagon_quotient(FRAC_PI_3) - 2.0).abs() < 1e-12);
        assert!(octagon_quotient(FRAC_PI_2) > 2.4);
    }

    #[test]
    fn inequalities_hold() {
        let r = verify_paper_inequalities(10_000).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_relative_eq!(r.diameter_margin, 5.836_798_305 - PI * 3f64.sqrt(), epsilon = 1e-9);
        assert!(verify_paper_inequalities(10).is_err());
    }

    #[test]
    fn small_formula_suite() {
        for check in formula_suite(12, 20_000, 7).unwrap() {
            assert!(check.passes(1e-6, 1e-9), "{check:?}");
        }
    }

    #[test]
    fn perturbed_vertex_is_irregular() {
        let space = Space::Torus(FlatTorus::square());
        let p = ChainParamsUnequal::new(1.0, 0.35, 0.25).unwrap();
        let axis = crate::torus::HomologyClass::WRAP_ONCE[0];
        let inst = CandidateInstance::new(
            CandidateParams::ChainUnequal { axis, params: p },
            [Label::R1, Label::R2, Label::R0],
            &space,
        )
        .unwrap();
        let mut config = candidate_geometry(&inst, &space).unwrap();
        assert!(check_regularity(&config).unwrap().passes(1e-9));
        let v = config.interfaces[0].edge.start;
        let shift = Point::new(1e-3, 0.0);
        for i in &mut config.interfaces {
            if wrap(i.edge.start - v, &config.lattice).norm() < 1e-12 {
                i.edge.start = i.edge.start + shift;
            }
            if wrap(i.edge.end - v, &config.lattice).norm() < 1e-12 {
                i.edge.end = i.edge.end + shift;
            }
        }
        assert!(check_regularity(&config).unwrap().max_angle_error > 1e-4);
    }
}
