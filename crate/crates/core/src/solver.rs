//! Inverse problems (areas to parameters) for each family and winner selection.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
use std::sync::Arc;

use serde::Serialize;

use crate::candidates::band_lens::lens_constant;
use crate::candidates::chain::{equal_chain_base_area, unit_c3_max, unit_chain_from_interface};
use crate::candidates::hex::{hex_exists, hexagon_area};
use crate::candidates::{
    BandLensParams, CandidateInstance, CandidateKind, CandidateParams, ChainParamsEqual, ChainParamsUnequal,
    HexTilingParams, Label, SdbParams,
};
use crate::error::{Error, Result};
use crate::rootfind::{brent, newton2, Newton2};
use crate::torus::{FlatTorus, HomologyClass, Space};

/// Largest interface chord (at unit axis length) covered by the chain sweep.
/// Any chain with `C3 > 1/2` is already longer than the double band.
const CHAIN_C3_CAP: f64 = 2.0;
const EQUAL_AREA_REL: f64 = 1e-10;
const DEDUP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Absolute perimeter tolerance for ties among winners.
    pub tie_tolerance: f64,
    /// Cells per side of the chain parameter sweep.
    pub chain_sweep: usize,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { tie_tolerance: 1e-9, chain_sweep: 512, max_iterations: 200 }
    }
}

/// Outcome of one family solve: a parameter set, or why there is none.
#[derive(Debug, Clone, PartialEq)]
pub enum Solved {
    Found(FamilySolution),
    Infeasible(String),
}

impl Solved {
    pub fn found(self) -> Option<FamilySolution> {
        match self {
            Solved::Found(s) => Some(s),
            Solved::Infeasible(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySolution {
    pub params: CandidateParams,
    /// The first requested area plays role 1 instead of role 0.
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub kind: CandidateKind,
    pub roles: [Label; 3],
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub space: Space,
    /// `A1, A2, A0`; `A0` is infinite off the torus.
    pub requested: [f64; 3],
    /// Every embeddable candidate, sorted by perimeter, kind and parameters.
    pub feasible: Vec<CandidateInstance>,
    /// Candidates within the tie tolerance of the minimum.
    pub winners: Vec<CandidateInstance>,
    pub min_perimeter: f64,
    pub diagnostics: Vec<Diagnostic>,
}

impl SolveReport {
    /// Distinct winning kinds in legend order.
    pub fn winner_kinds(&self) -> Vec<CandidateKind> {
        let mut kinds: Vec<_> = self.winners.iter().map(|w| w.kind).collect();
        kinds.sort();
        kinds.dedup();
        kinds
    }

    /// Smallest perimeter found for each kind, indexed by [`CandidateKind::index`].
    pub fn best_by_kind(&self) -> [Option<f64>; 5] {
        let mut best = [None; 5];
        for c in &self.feasible {
            let slot: &mut Option<f64> = &mut best[c.kind.index()];
            if slot.map_or(true, |p| c.perimeter < p) {
                *slot = Some(c.perimeter);
            }
        }
        best
    }

    pub fn is_tie(&self) -> bool {
        self.winner_kinds().len() > 1
    }
}

/// Winner selection over the candidate list. Cheap to clone; the chain
/// sweep is computed once and shared.
#[derive(Debug, Clone)]
pub struct Solver {
    pub config: SolverConfig,
    chain_table: Arc<ChainTable>,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new(SolverConfig::default())
    }
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        let n = config.chain_sweep.max(8);
        Self { config, chain_table: Arc::new(ChainTable::build(n)) }
    }

    /// Standard double bubble enclosing `ax` and `ay`, if it fits (diameter at most 1).
    pub fn sdb_solve(&self, ax: f64, ay: f64) -> Result<Solved> {
        check_positive(ax, ay)?;
        let (lo, hi) = if ax <= ay { (ax, ay) } else { (ay, ax) };
        let unit = |t: f64| SdbParams { theta: t, chord: 1.0 }.evaluate();
        let rho = lo / hi;
        let theta = if rho == 1.0 {
            0.0
        } else {
            let top = FRAC_PI_3 * (1.0 - 1e-9);
            let ratio = |t: f64| {
                let e = unit(t);
                e.area_high / e.area_low - rho
            };
            if ratio(top) > 0.0 {
                return Ok(Solved::Infeasible(format!("area ratio {rho:e} below the family's range")));
            }
            brent(ratio, 0.0, top, 1e-12, self.config.max_iterations)?
        };
        let e = unit(theta);
        let chord = ((lo + hi) / (e.area_high + e.area_low)).sqrt();
        let params = SdbParams::new(theta, chord)?;
        let diameter = params.evaluate().diameter;
        if diameter > 1.0 {
            return Ok(Solved::Infeasible(format!("diameter {diameter:.6} exceeds 1")));
        }
        Ok(Solved::Found(FamilySolution { params: CandidateParams::StandardDoubleBubble(params), swapped: ax > ay }))
    }

    /// Band lens with the given lens and band areas; exterior clearance is
    /// checked on tori.
    pub fn band_lens_solve(&self, space: &Space, lens: f64, band: f64) -> Result<Solved> {
        check_positive(lens, band)?;
        let k = lens_constant::<f64>();
        let r = (lens / (2.0 * k)).sqrt();
        let d = band + k * r * r;
        let params = match BandLensParams::new(r, d) {
            Ok(p) => p,
            Err(e) => return Ok(Solved::Infeasible(e.to_string())),
        };
        if let Some(t) = space.area() {
            if !params.fits_exterior(t) {
                return Ok(Solved::Infeasible(format!("exterior band {} too thin for r = {r:.6}", t - d)));
            }
        }
        Ok(Solved::Found(FamilySolution { params: CandidateParams::BandLens(params), swapped: false }))
    }

    /// Standard chain along `axis` enclosing `ax`, `ay`. Every bracket of the
    /// sweep is refined and the embeddable solution of least perimeter kept.
    pub fn chain_solve(&self, space: &Space, axis: HomologyClass, ax: f64, ay: f64) -> Result<Solved> {
        check_positive(ax, ay)?;
        let (l0, spacing) = match space {
            Space::Torus(t) => {
                let l0 = t.geodesic_length(axis);
                (l0, t.area() / l0)
            }
            _ if axis == HomologyClass::WRAP_ONCE[0] => (1.0, f64::INFINITY),
            _ => return Err(Error::InvalidInput(format!("cylinder chains wrap along (1, 0), not {axis}"))),
        };
        if (ax - ay).abs() <= EQUAL_AREA_REL * ax.max(ay) {
            let area = 0.5 * (ax + ay);
            let c3 = 2.0 * (area - equal_chain_base_area::<f64>() * l0 * l0) / l0;
            if c3 < 0.0 {
                return Ok(Solved::Infeasible(format!("equal areas {area:.6} below the smallest equal chain")));
            }
            let params = ChainParamsEqual::new(l0, c3)?;
            if params.shape().height() >= spacing {
                return Ok(Solved::Infeasible("equal chain does not fit across the torus".into()));
            }
            return Ok(Solved::Found(FamilySolution {
                params: CandidateParams::ChainEqual { axis, params },
                swapped: false,
            }));
        }
        let scale = l0 * l0;
        let mut best: Option<(f64, FamilySolution)> = None;
        let mut found_any = false;
        let mut reasons = Vec::new();
        for swapped in [false, true] {
            let target = if swapped { [ay / scale, ax / scale] } else { [ax / scale, ay / scale] };
            for (theta3, c3) in self.chain_table.solve(target, &self.config) {
                found_any = true;
                let params = match ChainParamsUnequal::from_interface(l0, theta3, c3 * l0) {
                    Ok(p) => p,
                    Err(e) => {
                        reasons.push(e.to_string());
                        continue;
                    }
                };
                let scaled = params.shape();
                if scaled.height() >= spacing {
                    reasons.push(format!("chain height {:.6} exceeds spacing {spacing:.6}", scaled.height()));
                    continue;
                }
                if 2.0 * scaled.interface_sagitta() >= scaled.chord[1] {
                    reasons.push("chain interfaces touch".into());
                    continue;
                }
                let perimeter = scaled.perimeter();
                let sol = FamilySolution { params: CandidateParams::ChainUnequal { axis, params }, swapped };
                if best.as_ref().map_or(true, |(p, _)| perimeter < *p) {
                    best = Some((perimeter, sol));
                }
            }
        }
        Ok(match best {
            Some((_, sol)) => Solved::Found(sol),
            None if !found_any => Solved::Infeasible("areas outside the swept chain image".into()),
            None => Solved::Infeasible(reasons.join("; ")),
        })
    }

    /// The unique standard hexagon tiling with areas `a1, a2, a0`, on the hexagonal torus only.
    pub fn hex_solve(&self, torus: &FlatTorus, a1: f64, a2: f64, a0: f64) -> Result<Solved> {
        if !torus.is_hexagonal() {
            return Ok(Solved::Infeasible("not the hexagonal torus".into()));
        }
        if !(a1 > 0.0 && a2 > 0.0 && a0 > 0.0) {
            return Err(Error::InvalidInput(format!("areas ({a1}, {a2}, {a0}) must be positive")));
        }
        if (a1 + a2 + a0 - torus.area()).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("areas sum to {}, not {}", a1 + a2 + a0, torus.area())));
        }
        if !hex_exists([a1, a2, a0]) {
            return Ok(Solved::Infeasible("outside the tiling existence region".into()));
        }
        let params = match self.hex_solve_from(a1, a2, [1.0 / 3.0, 1.0 / 3.0]) {
            Some(p) => p,
            None => self
                .hex_solve_from(a1, a2, hex_grid_start(a1, a2))
                .ok_or_else(|| Error::Convergence(format!("hexagon tiling for ({a1}, {a2}, {a0})")))?,
        };
        Ok(Solved::Found(FamilySolution { params: CandidateParams::HexagonTiling(params), swapped: false }))
    }

    /// Newton on `(a, b)` from `start`; `None` if it fails or leaves the simplex.
    pub fn hex_solve_from(&self, a1: f64, a2: f64, start: [f64; 2]) -> Option<HexTilingParams> {
        let f = |x: [f64; 2]| {
            let c = 1.0 - x[0] - x[1];
            (x[0] >= 0.0 && x[1] >= 0.0 && c >= 0.0)
                .then(|| [hexagon_area(x[0], x[1]) - a1, hexagon_area(x[1], c) - a2])
        };
        let opts = Newton2 { max_iter: self.config.max_iterations, ..Newton2::default() };
        let x = newton2(f, start, opts).ok()?;
        let c = 1.0 - x[0] - x[1];
        (x[0] > 0.0 && x[1] > 0.0 && c > 0.0).then_some(HexTilingParams { a: x[0], b: x[1], c })
    }

    /// Every candidate, under every relabeling, for the areas `a1, a2` on `space`.
    pub fn best_double_bubble(&self, space: &Space, a1: f64, a2: f64) -> Result<SolveReport> {
        if matches!(space, Space::Strip) {
            return self.solve_strip(a1, a2);
        }
        if !(a1 > 0.0 && a2 > 0.0 && a1.is_finite() && a2.is_finite()) {
            return Err(Error::InvalidInput(format!("areas ({a1}, {a2}) must be positive and finite")));
        }
        let a0 = match space.area() {
            Some(t) if a1 + a2 >= t => {
                return Err(Error::InvalidInput(format!("areas ({a1}, {a2}) leave no exterior in area {t}")))
            }
            Some(t) => t - a1 - a2,
            None => f64::INFINITY,
        };
        let requested = [a1, a2, a0];
        // Work on the areas in increasing order so that every relabeling of
        // the same triple runs exactly the same computations.
        let mut order = Label::ALL;
        order.sort_by(|x, y| requested[x.index()].total_cmp(&requested[y.index()]).then(x.cmp(y)));
        let vals = order.map(|l| requested[l.index()]);

        let mut out = Collector { space: *space, feasible: Vec::new(), diagnostics: Vec::new() };
        let pairs: &[(usize, usize)] = if space.torus().is_some() { &[(0, 1), (0, 2), (1, 2)] } else { &[(0, 1)] };
        for &(i, j) in pairs {
            let k = 3 - i - j;
            let roles = [order[i], order[j], order[k]];
            out.push(CandidateKind::StandardDoubleBubble, roles, self.sdb_solve(vals[i], vals[j])?)?;
        }
        let lens_pairs: &[(usize, usize)] = if space.torus().is_some() {
            &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
        } else {
            &[(0, 1), (1, 0)]
        };
        for &(i, j) in lens_pairs {
            let roles = [order[i], order[j], order[3 - i - j]];
            out.push(CandidateKind::BandLens, roles, self.band_lens_solve(space, vals[i], vals[j])?)?;
        }
        let axes: Vec<HomologyClass> = match space {
            Space::Torus(t) => t.chain_axes().into_iter().map(|(h, _)| h).collect(),
            _ => vec![HomologyClass::WRAP_ONCE[0]],
        };
        for axis in axes {
            for &(i, j) in pairs {
                let roles = [order[i], order[j], order[3 - i - j]];
                out.push(CandidateKind::StandardChain, roles, self.chain_solve(space, axis, vals[i], vals[j])?)?;
            }
        }
        let band = FamilySolution { params: CandidateParams::DoubleBand { widths: [vals[0], vals[1]] }, swapped: false };
        out.push(CandidateKind::DoubleBand, order, Solved::Found(band))?;
        if let Space::Torus(t) = space {
            if t.is_hexagonal() {
                out.push(CandidateKind::HexagonTiling, order, self.hex_solve(t, vals[0], vals[1], vals[2])?)?;
            }
        }
        Ok(self.rank(*space, requested, out))
    }

    /// Minimizers on the strip of width 1/2: halves of cylinder minimizers for twice the areas.
    pub fn solve_strip(&self, a1: f64, a2: f64) -> Result<SolveReport> {
        let full = self.best_double_bubble(&Space::Cylinder, 2.0 * a1, 2.0 * a2)?;
        Ok(SolveReport {
            space: Space::Strip,
            requested: [a1, a2, f64::INFINITY],
            feasible: full.feasible.iter().map(CandidateInstance::quotient).collect(),
            winners: full.winners.iter().map(CandidateInstance::quotient).collect(),
            min_perimeter: 0.5 * full.min_perimeter,
            diagnostics: full.diagnostics,
        })
    }

    fn rank(&self, space: Space, requested: [f64; 3], out: Collector) -> SolveReport {
        let mut feasible = out.feasible;
        feasible.sort_by(compare_instances);
        let min_perimeter = feasible.first().map_or(f64::INFINITY, |c| c.perimeter);
        let winners = feasible
            .iter()
            .filter(|c| c.perimeter - min_perimeter <= self.config.tie_tolerance)
            .cloned()
            .collect();
        SolveReport { space, requested, feasible, winners, min_perimeter, diagnostics: out.diagnostics }
    }
}

struct Collector {
    space: Space,
    feasible: Vec<CandidateInstance>,
    diagnostics: Vec<Diagnostic>,
}

impl Collector {
    fn push(&mut self, kind: CandidateKind, roles: [Label; 3], solved: Solved) -> Result<()> {
        match solved {
            Solved::Found(sol) => {
                let roles = if sol.swapped { [roles[1], roles[0], roles[2]] } else { roles };
                self.feasible.push(CandidateInstance::new(sol.params, roles, &self.space)?);
            }
            Solved::Infeasible(reason) => self.diagnostics.push(Diagnostic { kind, roles, reason }),
        }
        Ok(())
    }
}

fn compare_instances(a: &CandidateInstance, b: &CandidateInstance) -> Ordering {
    a.perimeter
        .total_cmp(&b.perimeter)
        .then(a.kind.cmp(&b.kind))
        .then_with(|| {
            let (ka, kb) = (a.params.key(), b.params.key());
            ka.iter().zip(&kb).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(ka.len().cmp(&kb.len()))
        })
        .then(a.roles.cmp(&b.roles))
}

fn check_positive(x: f64, y: f64) -> Result<()> {
    if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("areas ({x}, {y}) must be positive and finite")))
    }
}

/// Best point of a coarse grid over the simplex, as a second Newton start.
pub fn hex_grid_start(a1: f64, a2: f64) -> [f64; 2] {
    let n = 24;
    let mut best = ([1.0 / 3.0, 1.0 / 3.0], f64::INFINITY);
    for i in 1..n {
        for j in 1..n - i {
            let (a, b) = (i as f64 / n as f64, j as f64 / n as f64);
            let r = (hexagon_area(a, b) - a1).abs() + (hexagon_area(b, 1.0 - a - b) - a2).abs();
            if r < best.1 {
                best = ([a, b], r);
            }
        }
    }
    best.0
}

/// Areas of unit-axis chains over a grid in `(θ3, C3)`, with a bin index of
/// the image quads in the area plane.
#[derive(Debug)]
struct ChainTable {
    n: usize,
    theta3: Vec<f64>,
    /// `(c3, area_high, area_low)` per node, row-major in `θ3`.
    nodes: Vec<Option<[f64; 3]>>,
    bins: Vec<Vec<u32>>,
    bin_n: usize,
    extent: [f64; 2],
}

impl ChainTable {
    fn build(n: usize) -> Self {
        let m = n + 1;
        // Quadratic spacing resolves nearly equal areas (small θ3).
        let theta3: Vec<f64> = (0..m).map(|i| FRAC_PI_6 * ((i as f64 + 0.5) / m as f64).powi(2)).collect();
        let mut nodes = Vec::with_capacity(m * m);
        for &t3 in &theta3 {
            let top = unit_c3_max(t3).min(CHAIN_C3_CAP);
            for j in 0..m {
                let c3 = top * (j as f64 + 0.5) / m as f64;
                nodes.push(unit_chain_from_interface(t3, c3).map(|s| {
                    let (a, b) = s.areas();
                    [c3, a, b]
                }));
            }
        }
        let mut extent = [0.0f64; 2];
        for nd in nodes.iter().flatten() {
            extent[0] = extent[0].max(nd[1]);
            extent[1] = extent[1].max(nd[2]);
        }
        let bin_n = 256;
        let mut table = Self { n, theta3, nodes, bins: vec![Vec::new(); bin_n * bin_n], bin_n, extent };
        for i in 0..n {
            for j in 0..n {
                if let Some(q) = table.quad(i, j) {
                    let (lo, hi) = bbox(&q);
                    let (bx0, by0) = table.bin_of(lo);
                    let (bx1, by1) = table.bin_of(hi);
                    for bx in bx0..=bx1 {
                        for by in by0..=by1 {
                            table.bins[bx * bin_n + by].push((i * n + j) as u32);
                        }
                    }
                }
            }
        }
        table
    }

    fn node(&self, i: usize, j: usize) -> Option<[f64; 3]> {
        self.nodes[i * (self.n + 1) + j]
    }

    /// Corners as `(θ3, c3, a_high, a_low)` in counterclockwise parameter order.
    fn quad(&self, i: usize, j: usize) -> Option<[[f64; 4]; 4]> {
        let corner = |di: usize, dj: usize| {
            self.node(i + di, j + dj).map(|nd| [self.theta3[i + di], nd[0], nd[1], nd[2]])
        };
        Some([corner(0, 0)?, corner(1, 0)?, corner(1, 1)?, corner(0, 1)?])
    }

    fn bin_of(&self, p: [f64; 2]) -> (usize, usize) {
        let f = |x: f64, e: f64| ((x / e * self.bin_n as f64).floor().max(0.0) as usize).min(self.bin_n - 1);
        (f(p[0], self.extent[0]), f(p[1], self.extent[1]))
    }

    /// All refined `(θ3, c3)` with unit-chain areas equal to `target`.
    fn solve(&self, target: [f64; 2], config: &SolverConfig) -> Vec<(f64, f64)> {
        let mut starts = Vec::new();
        if target[0] <= self.extent[0] && target[1] <= self.extent[1] {
            let (bx, by) = self.bin_of(target);
            for &id in &self.bins[bx * self.bin_n + by] {
                let (i, j) = (id as usize / self.n, id as usize % self.n);
                let q = self.quad(i, j).expect("indexed quads are complete");
                for tri in [[0, 1, 2], [0, 2, 3]] {
                    if let Some(p) = barycentric_lerp(&q, tri, target) {
                        starts.push(p);
                        break;
                    }
                }
            }
        }
        // Nearly equal areas sit below the first θ3 row: start from the equal chain.
        let rel = (target[0] - target[1]).abs() / target[0].max(target[1]);
        if rel < 1e-3 {
            let c3 = 2.0 * (0.5 * (target[0] + target[1]) - equal_chain_base_area::<f64>());
            if c3 > 0.0 {
                starts.push([self.theta3[0], c3]);
            }
        }
        let f = |x: [f64; 2]| {
            let s = unit_chain_from_interface(x[0].exp(), x[1])?;
            let (a, b) = s.areas();
            Some([a - target[0], b - target[1]])
        };
        let opts = Newton2 { max_iter: config.max_iterations, ..Newton2::default() };
        let mut found: Vec<(f64, f64)> = Vec::new();
        for s in starts {
            if let Ok(x) = newton2(f, [s[0].ln(), s[1]], opts) {
                let (t3, c3) = (x[0].exp(), x[1]);
                if !found.iter().any(|&(a, b)| (a - t3).abs() <= DEDUP_TOL && (b - c3).abs() <= DEDUP_TOL) {
                    found.push((t3, c3));
                }
            }
        }
        found.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        found
    }
}

fn bbox(q: &[[f64; 4]; 4]) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for c in q {
        for k in 0..2 {
            lo[k] = lo[k].min(c[2 + k]);
            hi[k] = hi[k].max(c[2 + k]);
        }
    }
    (lo, hi)
}

/// Parameters interpolated at `target` if it lies in the image triangle `tri` of `q`.
fn barycentric_lerp(q: &[[f64; 4]; 4], tri: [usize; 3], target: [f64; 2]) -> Option<[f64; 2]> {
    let [p0, p1, p2] = tri.map(|k| q[k]);
    let (x1, y1) = (p1[2] - p0[2], p1[3] - p0[3]);
    let (x2, y2) = (p2[2] - p0[2], p2[3] - p0[3]);
    let det = x1 * y2 - x2 * y1;
    if det == 0.0 {
        return None;
    }
    let (tx, ty) = (target[0] - p0[2], target[1] - p0[3]);
    let l1 = (tx * y2 - x2 * ty) / det;
    let l2 = (x1 * ty - tx * y1) / det;
    let tol = -1e-9;
    (l1 >= tol && l2 >= tol && 1.0 - l1 - l2 >= tol).then(|| {
        let lerp = |k: usize| p0[k] + l1 * (p1[k] - p0[k]) + l2 * (p2[k] - p0[k]);
        [lerp(0), lerp(1)]
    })
}
