//! The five candidate families, their closed forms, and concrete instances
//! with regions assigned to the user's labels.

pub mod band_lens;
pub mod chain;
pub mod double_band;
pub mod geometry;
pub mod hex;
pub mod sdb;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use band_lens::{band_lens_bound, band_lens_eval, BandLensEvaluation, BandLensParams};
pub use chain::{
    chain_eval_equal, chain_eval_unequal, ChainEvaluation, ChainParamsEqual, ChainParamsUnequal, ChainShape,
};
pub use double_band::double_band_eval;
pub use geometry::{candidate_geometry, Configuration, Face, Interface};
pub use hex::{hex_eval, HexEvaluation, HexTilingParams};
pub use sdb::{sdb_evaluate, SdbEvaluation, SdbParams};

use crate::error::{Error, Result};
use crate::torus::{HomologyClass, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CandidateKind {
    StandardDoubleBubble,
    StandardChain,
    BandLens,
    DoubleBand,
    HexagonTiling,
}

impl CandidateKind {
    pub const ALL: [CandidateKind; 5] = [
        CandidateKind::StandardDoubleBubble,
        CandidateKind::StandardChain,
        CandidateKind::BandLens,
        CandidateKind::DoubleBand,
        CandidateKind::HexagonTiling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::StandardDoubleBubble => "StandardDoubleBubble",
            CandidateKind::StandardChain => "StandardChain",
            CandidateKind::BandLens => "BandLens",
            CandidateKind::DoubleBand => "DoubleBand",
            CandidateKind::HexagonTiling => "HexagonTiling",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The user's regions: `R1` and `R2` enclose the prescribed areas, `R0` is the exterior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    R1,
    R2,
    R0,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::R1, Label::R2, Label::R0];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Label {
        Self::ALL[i]
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::R1 => "R1",
            Label::R2 => "R2",
            Label::R0 => "R0",
        })
    }
}

/// Family parameters of an instance. Role order of the regions is fixed per family:
///
/// | family | role 0 | role 1 | role 2 |
/// |---|---|---|---|
/// | double bubble | high pressure | low pressure | exterior |
/// | chain | `R1` side (`C1`) | `R2` side | exterior |
/// | band lens | lens | band | exterior |
/// | double band | first band | second band | exterior |
/// | hexagon tiling | hexagon `(a, b)` | `(b, c)` | `(c, a)` |
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CandidateParams {
    StandardDoubleBubble(SdbParams),
    ChainUnequal { axis: HomologyClass, params: ChainParamsUnequal },
    ChainEqual { axis: HomologyClass, params: ChainParamsEqual },
    BandLens(BandLensParams),
    DoubleBand { widths: [f64; 2] },
    HexagonTiling(HexTilingParams),
}

impl CandidateParams {
    pub fn kind(&self) -> CandidateKind {
        match self {
            CandidateParams::StandardDoubleBubble(_) => CandidateKind::StandardDoubleBubble,
            CandidateParams::ChainUnequal { .. } | CandidateParams::ChainEqual { .. } => CandidateKind::StandardChain,
            CandidateParams::BandLens(_) => CandidateKind::BandLens,
            CandidateParams::DoubleBand { .. } => CandidateKind::DoubleBand,
            CandidateParams::HexagonTiling(_) => CandidateKind::HexagonTiling,
        }
    }

    /// Flat list of the raw parameters, for deterministic ordering.
    pub fn key(&self) -> Vec<f64> {
        match *self {
            CandidateParams::StandardDoubleBubble(p) => vec![p.theta, p.chord],
            CandidateParams::ChainUnequal { axis, params } => {
                vec![axis.p as f64, axis.q as f64, params.axis_length, params.theta1, params.c1]
            }
            CandidateParams::ChainEqual { axis, params } => {
                vec![axis.p as f64, axis.q as f64, params.axis_length, -1.0, params.c3]
            }
            CandidateParams::BandLens(p) => vec![p.r, p.d],
            CandidateParams::DoubleBand { widths } => widths.to_vec(),
            CandidateParams::HexagonTiling(p) => vec![p.a, p.b, p.c],
        }
    }

    pub fn axis_length(&self) -> Option<f64> {
        match self {
            CandidateParams::ChainUnequal { params, .. } => Some(params.axis_length),
            CandidateParams::ChainEqual { params, .. } => Some(params.axis_length),
            _ => None,
        }
    }

    /// Forward map: region areas in role order and perimeter. The exterior
    /// area is the remainder of `space`, infinite off the torus.
    pub fn evaluate(&self, space: &Space) -> Result<([f64; 3], f64)> {
        let (a, b, perimeter) = match *self {
            CandidateParams::StandardDoubleBubble(p) => {
                let e = SdbParams::new(p.theta, p.chord)?.evaluate();
                (e.area_high, e.area_low, e.perimeter)
            }
            CandidateParams::ChainUnequal { params: p, .. } => {
                let e = p.evaluate();
                (e.area_high, e.area_low, e.perimeter)
            }
            CandidateParams::ChainEqual { params: p, .. } => {
                let p = ChainParamsEqual::new(p.axis_length, p.c3)?;
                (p.area(), p.area(), p.perimeter())
            }
            CandidateParams::BandLens(p) => {
                let e = BandLensParams::new(p.r, p.d)?.evaluate();
                (e.area_lens, e.area_band, e.perimeter)
            }
            CandidateParams::DoubleBand { widths } => {
                let p = double_band_eval(widths[0], widths[1], space.area())?;
                (widths[0], widths[1], p)
            }
            CandidateParams::HexagonTiling(p) => {
                let e = HexTilingParams::new(p.a, p.b, p.c)?.evaluate();
                return Ok(([e.area_r1, e.area_r2, e.area_r0], e.perimeter));
            }
        };
        let exterior = space.area().map_or(f64::INFINITY, |t| t - a - b);
        Ok(([a, b, exterior], perimeter))
    }
}

/// One concrete double bubble enclosing the user's areas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateInstance {
    pub kind: CandidateKind,
    pub params: CandidateParams,
    /// User label of each family role (see [`CandidateParams`]).
    pub roles: [Label; 3],
    /// Areas of `R1, R2, R0`; `R0` is infinite off the torus.
    pub areas: [f64; 3],
    pub perimeter: f64,
    /// Chains whose axis is longer than a shortest geodesic.
    pub axis_flag: bool,
    /// Strip instance: half of the cylinder configuration described by `params`.
    pub quotient: bool,
}

impl CandidateInstance {
    /// Builds an instance from parameters, evaluating areas and perimeter.
    pub fn new(params: CandidateParams, roles: [Label; 3], space: &Space) -> Result<Self> {
        let mut seen = [false; 3];
        for r in roles {
            if std::mem::replace(&mut seen[r.index()], true) {
                return Err(Error::InvalidInput(format!("role assignment {roles:?} repeats a label")));
            }
        }
        let eval_space = if matches!(space, Space::Strip) { Space::Cylinder } else { *space };
        let (role_areas, perimeter) = params.evaluate(&eval_space)?;
        let mut areas = [0.0; 3];
        for (role, label) in roles.iter().enumerate() {
            areas[label.index()] = role_areas[role];
        }
        let axis_flag = params.axis_length().is_some_and(|l| l > 1.0 + 1e-12);
        let mut inst =
            Self { kind: params.kind(), params, roles, areas, perimeter, axis_flag, quotient: false };
        if matches!(space, Space::Strip) {
            inst = inst.quotient();
        }
        Ok(inst)
    }

    pub fn area(&self, label: Label) -> f64 {
        self.areas[label.index()]
    }

    /// Role played by `label`.
    pub fn role_of(&self, label: Label) -> usize {
        self.roles.iter().position(|&l| l == label).unwrap()
    }

    /// Re-evaluates the family's forward map on the stored parameters,
    /// returning areas by label and the perimeter.
    pub fn reevaluate(&self, space: &Space) -> Result<([f64; 3], f64)> {
        let eval_space = if self.quotient { Space::Cylinder } else { *space };
        let (role_areas, mut perimeter) = self.params.evaluate(&eval_space)?;
        let mut areas = [0.0; 3];
        for (role, label) in self.roles.iter().enumerate() {
            areas[label.index()] = role_areas[role];
        }
        if self.quotient {
            areas.iter_mut().for_each(|a| *a *= 0.5);
            perimeter *= 0.5;
        }
        Ok((areas, perimeter))
    }

    /// Reflection quotient of a cylinder instance: areas and perimeter halved.
    pub fn quotient(&self) -> Self {
        let mut q = self.clone();
        q.areas.iter_mut().for_each(|a| *a *= 0.5);
        q.perimeter *= 0.5;
        q.quotient = true;
        q
    }
}

impl fmt::Display for CandidateInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} P = {:.9}", self.kind, self.perimeter)?;
        if let Some(l) = self.params.axis_length() {
            write!(f, " (axis {l:.6})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::FlatTorus;

    #[test]
    fn instance_assigns_areas_by_role() {
        let space = Space::Torus(FlatTorus::<f64>::square());
        let params = CandidateParams::BandLens(BandLensParams { r: 0.2, d: 0.3 });
        let inst = CandidateInstance::new(params, [Label::R2, Label::R0, Label::R1], &space).unwrap();
        let e = band_lens_eval(0.2, 0.3).unwrap();
        assert_eq!(inst.area(Label::R2), e.area_lens);
        assert_eq!(inst.area(Label::R0), e.area_band);
        assert!((inst.area(Label::R1) - (1.0 - e.area_lens - e.area_band)).abs() < 1e-15);
        assert_eq!(inst.role_of(Label::R1), 2);
        assert!(CandidateInstance::new(params, [Label::R2, Label::R2, Label::R1], &space).is_err());
    }

    #[test]
    fn strip_instances_are_halved() {
        let params = CandidateParams::StandardDoubleBubble(SdbParams { theta: 0.0, chord: 0.2 });
        let roles = [Label::R1, Label::R2, Label::R0];
        let cyl = CandidateInstance::new(params, roles, &Space::Cylinder).unwrap();
        let strip = CandidateInstance::new(params, roles, &Space::Strip).unwrap();
        assert_eq!(strip.perimeter * 2.0, cyl.perimeter);
        assert_eq!(strip.area(Label::R1) * 2.0, cyl.area(Label::R1));
        assert_eq!(strip.reevaluate(&Space::Strip).unwrap().1, strip.perimeter);
        assert!(cyl.area(Label::R0).is_infinite());
    }

    #[test]
    fn kinds_order_and_names() {
        let mut v = vec![CandidateKind::HexagonTiling, CandidateKind::DoubleBand];
        v.sort();
        assert_eq!(v.iter().map(|k| k.name()).collect::<Vec<_>>().join("+"), "DoubleBand+HexagonTiling");
    }
}
