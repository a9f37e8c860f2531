use torus_bubbles::portrait::compute_portrait;
use torus_bubbles::solver::SolverConfig;
use torus_bubbles::{CandidateKind, FlatTorus, Solver, Space};

fn solver() -> Solver {
    Solver::new(SolverConfig { chain_sweep: 192, ..SolverConfig::default() })
}

fn csv(grid: &torus_bubbles::PortraitGrid) -> String {
    let mut out = Vec::new();
    grid.write_csv(&mut out).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn square_torus_has_no_hexagon_cells() {
    let grid = compute_portrait(&solver(), &Space::Torus(FlatTorus::square()), 64).unwrap();
    assert_eq!(grid.kind_counts()[CandidateKind::HexagonTiling.index()], 0);
    for line in csv(&grid).lines().skip(1) {
        let p: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(p <= 3.000000001, "{line}");
    }
}

#[test]
fn perimeter_three_implies_a_tiling_on_the_hexagonal_torus() {
    let s = solver();
    let space = Space::Torus(FlatTorus::hexagonal());
    let grid = compute_portrait(&s, &space, 48).unwrap();
    let mut threes = 0;
    for c in &grid.cells {
        if (c.min_perimeter - 3.0).abs() <= 1e-9 {
            threes += 1;
            assert!(c.best[CandidateKind::HexagonTiling.index()].is_some(), "{:?}", c.areas);
        }
    }
    assert!(threes > 0);
}

#[test]
fn winners_reproduce_requested_areas() {
    let s = solver();
    for space in [
        Space::Torus(FlatTorus::from_degrees(1.0, 75.0).unwrap()),
        Space::Torus(FlatTorus::hexagonal()),
        Space::Cylinder,
    ] {
        let grid = compute_portrait(&s, &space, 16).unwrap();
        for c in &grid.cells {
            let report = s.best_double_bubble(&space, c.areas[0], c.areas[1]).unwrap();
            for w in &report.winners {
                let (areas, perimeter) = w.reevaluate(&space).unwrap();
                for (got, want) in areas.iter().zip(&report.requested).filter(|(_, w)| w.is_finite()) {
                    assert!((got - want).abs() <= 1e-8, "{w}: {areas:?} vs {:?}", report.requested);
                }
                assert_eq!(perimeter, w.perimeter);
            }
        }
    }
}

#[test]
fn portrait_is_independent_of_pool_size() {
    let s = solver();
    let space = Space::Torus(FlatTorus::from_degrees(1.2, 90.0).unwrap());
    let run = |n| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
        csv(&pool.install(|| compute_portrait(&s, &space, 24).unwrap()))
    };
    assert_eq!(run(1), run(4));
}
