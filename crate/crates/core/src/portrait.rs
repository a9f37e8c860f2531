//! Phase portraits: the winning family over a grid of prescribed areas.
//!
//! On a torus of area `T` the simplex `A1 + A2 + A0 = T` is cut into `n²`
//! triangles of leg `h = T/n` in the `(A1, A2)` plane, sampled at their
//! centroids. Cylinder portraits use a square grid over `(0, W]²`.

use std::collections::HashMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::candidates::CandidateKind;
use crate::error::{Error, Result};
use crate::solver::Solver;
use crate::torus::Space;

/// Side of the default cylinder window.
pub const CYLINDER_WINDOW: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CellShape {
    /// Triangle with the right angle at the lower left.
    Up,
    /// Triangle with the right angle at the upper right.
    Down,
    Square,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortraitCell {
    pub shape: CellShape,
    pub i: usize,
    pub j: usize,
    /// `A1, A2, A0` at the cell center; `A0` is infinite on the cylinder.
    pub areas: [f64; 3],
    /// Winning kinds in legend order.
    pub winners: Vec<CandidateKind>,
    pub min_perimeter: f64,
    /// Best perimeter per kind, indexed by [`CandidateKind::index`].
    pub best: [Option<f64>; 5],
}

impl PortraitCell {
    pub fn is_tie(&self) -> bool {
        self.winners.len() > 1
    }

    /// Winner label as written to CSV, e.g. `DoubleBand+HexagonTiling`.
    pub fn winner_label(&self) -> String {
        self.winners.iter().map(|k| k.name()).collect::<Vec<_>>().join("+")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortraitGrid {
    pub space: Space,
    pub resolution: usize,
    /// Leg (torus) or side (cylinder) of a cell in area units.
    pub step: f64,
    pub tie_tolerance: f64,
    /// Cells ordered by `A1`, then `A2`.
    pub cells: Vec<PortraitCell>,
    #[serde(skip)]
    index: HashMap<(CellShape, usize, usize), usize>,
}

fn layout(space: &Space, n: usize, window: f64) -> Result<(f64, Vec<(CellShape, usize, usize, [f64; 2])>)> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("resolution {n} below 2")));
    }
    Ok(match space {
        Space::Torus(t) => {
            let h = t.area() / n as f64;
            let mut cells = Vec::with_capacity(n * n);
            for i in 0..n {
                let fi = i as f64;
                for j in 0..n - i {
                    cells.push((CellShape::Up, i, j, [(fi + 1.0 / 3.0) * h, (j as f64 + 1.0 / 3.0) * h]));
                }
                for j in 0..(n - 1).saturating_sub(i) {
                    cells.push((CellShape::Down, i, j, [(fi + 2.0 / 3.0) * h, (j as f64 + 2.0 / 3.0) * h]));
                }
            }
            (h, cells)
        }
        Space::Cylinder => {
            if !(window > 0.0 && window.is_finite()) {
                return Err(Error::InvalidInput(format!("cylinder window {window} must be positive")));
            }
            let h = window / n as f64;
            let cells = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| (CellShape::Square, i, j, [(i as f64 + 0.5) * h, (j as f64 + 0.5) * h]))
                .collect();
            (h, cells)
        }
        Space::Strip => return Err(Error::InvalidInput("portraits are drawn on tori or the cylinder".into())),
    })
}

/// Portrait of `space` at `resolution` cells per side, cylinder window `CYLINDER_WINDOW`.
pub fn compute_portrait(solver: &Solver, space: &Space, resolution: usize) -> Result<PortraitGrid> {
    compute_portrait_window(solver, space, resolution, CYLINDER_WINDOW)
}

/// As [`compute_portrait`], with an explicit cylinder window `(0, window]²`.
/// Cells run in parallel on the current rayon pool; the result does not
/// depend on the pool size.
pub fn compute_portrait_window(solver: &Solver, space: &Space, resolution: usize, window: f64) -> Result<PortraitGrid> {
    let (step, layout) = layout(space, resolution, window)?;
    let cells = layout
        .par_iter()
        .enumerate()
        .map(|(index, &(shape, i, j, a))| {
            let report = solver
                .best_double_bubble(space, a[0], a[1])
                .map_err(|e| Error::Cell { index, areas: a, source: Box::new(e) })?;
            Ok(PortraitCell {
                shape,
                i,
                j,
                areas: report.requested,
                winners: report.winner_kinds(),
                min_perimeter: report.min_perimeter,
                best: report.best_by_kind(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PortraitGrid::from_cells(*space, resolution, step, solver.config.tie_tolerance, cells))
}

impl PortraitGrid {
    pub fn from_cells(space: Space, resolution: usize, step: f64, tie_tolerance: f64, cells: Vec<PortraitCell>) -> Self {
        let index = cells.iter().enumerate().map(|(k, c)| ((c.shape, c.i, c.j), k)).collect();
        Self { space, resolution, step, tie_tolerance, cells, index }
    }

    pub fn cell(&self, shape: CellShape, i: usize, j: usize) -> Option<&PortraitCell> {
        self.index.get(&(shape, i, j)).map(|&k| &self.cells[k])
    }

    /// Cell with `A1` and `A2` exchanged.
    pub fn mirror(&self, k: usize) -> Option<&PortraitCell> {
        let c = &self.cells[k];
        self.cell(c.shape, c.j, c.i)
    }

    /// Indices of the cells sharing an edge with cell `k`.
    pub fn neighbors(&self, k: usize) -> Vec<usize> {
        let c = &self.cells[k];
        let (i, j) = (c.i as isize, c.j as isize);
        let cand: Vec<(CellShape, isize, isize)> = match c.shape {
            CellShape::Up => vec![(CellShape::Down, i, j), (CellShape::Down, i - 1, j), (CellShape::Down, i, j - 1)],
            CellShape::Down => vec![(CellShape::Up, i, j), (CellShape::Up, i + 1, j), (CellShape::Up, i, j + 1)],
            CellShape::Square => vec![
                (CellShape::Square, i - 1, j),
                (CellShape::Square, i + 1, j),
                (CellShape::Square, i, j - 1),
                (CellShape::Square, i, j + 1),
            ],
        };
        cand.into_iter()
            .filter(|&(_, a, b)| a >= 0 && b >= 0)
            .filter_map(|(s, a, b)| self.index.get(&(s, a as usize, b as usize)).copied())
            .collect()
    }

    /// Corners of cell `k` in the `(A1, A2)` plane, counterclockwise.
    pub fn outline(&self, k: usize) -> Vec<[f64; 2]> {
        let c = &self.cells[k];
        let h = self.step;
        let (x, y) = (c.i as f64 * h, c.j as f64 * h);
        match c.shape {
            CellShape::Up => vec![[x, y], [x + h, y], [x, y + h]],
            CellShape::Down => vec![[x + h, y], [x + h, y + h], [x, y + h]],
            CellShape::Square => vec![[x, y], [x + h, y], [x + h, y + h], [x, y + h]],
        }
    }

    /// Cells where some winning kind wins at no neighbor, although every
    /// other kind is more than ten tie tolerances worse there.
    pub fn contiguity_violations(&self) -> Vec<(usize, CandidateKind)> {
        let slack = 10.0 * self.tie_tolerance;
        let mut out = Vec::new();
        for (k, c) in self.cells.iter().enumerate() {
            let nb = self.neighbors(k);
            if nb.is_empty() {
                continue;
            }
            for &kind in &c.winners {
                if nb.iter().any(|&m| self.cells[m].winners.contains(&kind)) {
                    continue;
                }
                let contested = CandidateKind::ALL
                    .iter()
                    .filter(|&&o| o != kind)
                    .any(|o| c.best[o.index()].is_some_and(|p| p - c.min_perimeter <= slack));
                if !contested {
                    out.push((k, kind));
                }
            }
        }
        out
    }

    /// Number of cells each kind wins (ties count for every winner).
    pub fn kind_counts(&self) -> [usize; 5] {
        let mut counts = [0; 5];
        for c in &self.cells {
            for k in &c.winners {
                counts[k.index()] += 1;
            }
        }
        counts
    }

    /// Number of cells per distinct winner label, in first-seen order.
    pub fn phase_counts(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for c in &self.cells {
            let label = c.winner_label();
            match out.iter_mut().find(|(l, _)| *l == label) {
                Some(entry) => entry.1 += 1,
                None => out.push((label, 1)),
            }
        }
        out
    }

    /// CSV with header `A1,A2,A0,winner,perimeter,tie`, one row per cell.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "A1,A2,A0,winner,perimeter,tie")?;
        for c in &self.cells {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                sig9(c.areas[0]),
                sig9(c.areas[1]),
                sig9(c.areas[2]),
                c.winner_label(),
                sig9(c.min_perimeter),
                u8::from(c.is_tie())
            )?;
        }
        Ok(())
    }
}

/// Decimal with 9 significant digits; `inf` for infinities.
pub fn sig9(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 || x.is_nan() {
        return format!("{x}");
    }
    let prec = (8 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.prec$}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::SolverConfig;
    use crate::torus::FlatTorus;

    fn solver() -> Solver {
        Solver::new(SolverConfig { chain_sweep: 128, ..SolverConfig::default() })
    }

    #[test]
    fn sig9_format() {
        assert_eq!(sig9(3.0), "3.00000000");
        assert_eq!(sig9(0.0123456789), "0.0123456789");
        assert_eq!(sig9(123.456), "123.456000");
        assert_eq!(sig9(f64::INFINITY), "inf");
    }

    #[test]
    fn torus_layout_is_symmetric() {
        let (h, cells) = layout(&Space::Torus(FlatTorus::square()), 10, 1.0).unwrap();
        assert_eq!(cells.len(), 100);
        assert_eq!(h, 0.1);
        for w in cells.windows(2) {
            assert!(w[0].3[0] < w[1].3[0] || (w[0].3[0] == w[1].3[0] && w[0].3[1] < w[1].3[1]));
        }
        for c in &cells {
            assert!(c.3[0] + c.3[1] < 1.0);
        }
        assert!(layout(&Space::Cylinder, 1, 1.0).is_err());
        assert!(layout(&Space::Strip, 4, 1.0).is_err());
    }

    #[test]
    fn neighbors_are_mutual() {
        let s = solver();
        let g = compute_portrait(&s, &Space::Torus(FlatTorus::square()), 6).unwrap();
        for k in 0..g.cells.len() {
            for m in g.neighbors(k) {
                assert!(g.neighbors(m).contains(&k));
            }
            assert!(g.mirror(k).is_some());
        }
        let interior = g.cell(CellShape::Up, 1, 1).unwrap();
        let idx = g.cells.iter().position(|c| c == interior).unwrap();
        assert_eq!(g.neighbors(idx).len(), 3);
    }

    #[test]
    fn hex_center_cell_ties() {
        let s = solver();
        let g = compute_portrait(&s, &Space::Torus(FlatTorus::hexagonal()), 64).unwrap();
        let c = g.cell(CellShape::Up, 21, 21).unwrap();
        assert!((c.min_perimeter - 3.0).abs() < 1e-9);
        assert_eq!(c.winner_label(), "DoubleBand+HexagonTiling");
        let mut csv = Vec::new();
        g.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.lines().any(|l| l.contains("DoubleBand+HexagonTiling") && l.ends_with(",1")));
        assert!(g.cells.iter().all(|c| c.min_perimeter <= 3.0 + 1e-9));
    }

    #[test]
    fn single_cell_csv() {
        let s = solver();
        let cells = vec![PortraitCell {
            shape: CellShape::Square,
            i: 0,
            j: 0,
            areas: [0.1, 0.2, f64::INFINITY],
            winners: vec![CandidateKind::StandardDoubleBubble],
            min_perimeter: 2.0,
            best: [Some(2.0), None, None, None, None],
        }];
        let g = PortraitGrid::from_cells(Space::Cylinder, 1, 0.3, s.config.tie_tolerance, cells);
        let mut csv = Vec::new();
        g.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text, "A1,A2,A0,winner,perimeter,tie\n0.100000000,0.200000000,inf,StandardDoubleBubble,2.00000000,0\n");
    }
}
