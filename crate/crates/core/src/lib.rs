//! Perimeter-minimizing double bubbles on flat two-tori.
//!
//! The crate evaluates and inverts the five candidate families that can
//! minimize perimeter for two prescribed areas on a flat torus (standard
//! double bubble, standard chain, band lens, double band and standard
//! hexagon tiling), picks the winner for given areas, sweeps the simplex of
//! area triples into phase portraits and draws the configurations.
//!
//! Closed-form geometry (arcs, tori, candidate areas and perimeters) is
//! generic over the scalar type; the numerical solvers run in `f64`.
//! Every torus is normalized so that its shortest closed geodesic has
//! length one.

pub mod arc;
pub mod candidates;
pub mod error;
pub mod oracle;
pub mod portrait;
pub mod render;
pub mod rootfind;
pub mod scalar;
pub mod solver;
pub mod torus;

pub use arc::{ArcChordParams, ArcEdge, ArcPath, Point};
pub use candidates::{
    BandLensParams, CandidateInstance, CandidateKind, CandidateParams, ChainParamsEqual,
    ChainParamsUnequal, Configuration, HexTilingParams, Label, SdbParams,
};
pub use error::{Error, Result};

pub use portrait::{PortraitCell, PortraitGrid};
pub use scalar::Scalar;
pub use solver::{SolveReport, Solver, SolverConfig};

pub use torus::{FlatTorus, HomologyClass, Space};

pub type ArcEdgeF64 = ArcEdge<f64>;
pub type ArcEdgeF32 = ArcEdge<f32>;
pub type ArcPathF64 = ArcPath<f64>;
pub type ArcPathF32 = ArcPath<f32>;
pub type PointF64 = Point<f64>;
pub type PointF32 = Point<f32>;
pub type FlatTorusF64 = FlatTorus<f64>;
pub type FlatTorusF32 = FlatTorus<f32>;
pub type SdbParamsF64 = SdbParams<f64>;
pub type SdbParamsF32 = SdbParams<f32>;
pub type ChainParamsUnequalF64 = ChainParamsUnequal<f64>;
pub type ChainParamsUnequalF32 = ChainParamsUnequal<f32>;
pub type BandLensParamsF64 = BandLensParams<f64>;
pub type BandLensParamsF32 = BandLensParams<f32>;
pub type HexTilingParamsF64 = HexTilingParams<f64>;
pub type HexTilingParamsF32 = HexTilingParams<f32>;
