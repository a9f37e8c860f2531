//! Standard chains: two four-sided components alternating along a closed geodesic.
//!
//! Component `R1` (higher pressure) has exterior arcs on chords `C1` at angle
//! `θ1`, component `R2` on chords `C2 = L0 − C1` at `θ2 = π/3 − θ1`, and the
//! two interfaces are arcs on chords `C3` at `θ3 = π/6 − θ1` bowing into `R2`.

use serde::{Deserialize, Serialize};

use crate::arc::{arc_len, segment_area};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainParamsUnequal<T = f64> {
    pub axis_length: T,
    pub theta1: T,
    pub c1: T,
    /// Interface chord. Fixed by the other three, but kept explicitly since
    /// recomputing it cancels badly when `θ1` is close to `π/6`.
    pub c3: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainEvaluation<T = f64> {
    pub area_high: T,
    pub area_low: T,
    pub perimeter: T,
    pub c2: T,
    pub c3: T,
}

/// Full set of angles and chords of a chain, shared by both families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainShape<T = f64> {
    pub axis_length: T,
    pub theta: [T; 3],
    pub chord: [T; 3],
}

impl<T: Scalar> ChainShape<T> {
    pub fn areas(&self) -> (T, T) {
        let [t1, t2, t3] = self.theta;
        let [c1, c2, c3] = self.chord;
        let two = T::lit(2.0);
        let a3 = segment_area(t3, c3);
        (
            two * segment_area(t1, c1) + two * a3 + c1 * c3,
            two * segment_area(t2, c2) - two * a3 + c2 * c3,
        )
    }

    pub fn perimeter(&self) -> T {
        let two = T::lit(2.0);
        (0..3).fold(T::zero(), |acc, i| acc + two * arc_len(self.theta[i], self.chord[i]))
    }

    /// Width of the chain across its axis, arcs included.
    pub fn height(&self) -> T {
        let half = T::lit(0.5);
        let sag = |i: usize| half * self.chord[i] * (half * self.theta[i]).tan();
        self.chord[2] + T::lit(2.0) * sag(0).max(sag(1))
    }

    /// Depth of one interface arc into `R2`; the two interfaces touch when
    /// twice this reaches `C2`.
    pub fn interface_sagitta(&self) -> T {
        let half = T::lit(0.5);
        half * self.chord[2] * (half * self.theta[2]).tan()
    }
}

impl<T: Scalar> ChainParamsUnequal<T> {
    pub fn new(axis_length: T, theta1: T, c1: T) -> Result<Self> {
        if !(axis_length >= T::one() - T::lit(1e-12)) {
            return Err(Error::domain("chain axis length", format!("L0 = {axis_length} below 1")));
        }
        if !(c1 > T::zero() && c1 < axis_length * T::lit(0.5)) {
            return Err(Error::domain("chain chord", format!("C1 = {c1} not in (0, L0/2)")));
        }
        let lower = (c1 / axis_length).asin();
        if !(theta1 > lower && theta1 < T::FRAC_PI_6()) {
            return Err(Error::domain(
                "chain angle",
                format!("theta1 = {theta1} not in (asin(C1/L0) = {lower}, pi/6)"),
            ));
        }
        let c2 = axis_length - c1;
        let denominator = c2 * theta1.sin() - c1 * (T::FRAC_PI_3() - theta1).sin();
        if !(denominator > T::zero()) {
            return Err(Error::domain("chain angle", "interface chord denominator is not positive"));
        }
        let c3 = c1 * c2 * (T::FRAC_PI_6() - theta1).sin() / denominator;
        Ok(Self { axis_length, theta1, c1, c3 })
    }

    /// Same chain from the interface angle `θ3 = π/6 − θ1` and chord `C3`.
    pub fn from_interface(axis_length: T, theta3: T, c3: T) -> Result<Self> {
        if !(axis_length >= T::one() - T::lit(1e-12)) {
            return Err(Error::domain("chain axis length", format!("L0 = {axis_length} below 1")));
        }
        let s = unit_chain_from_interface(theta3.as_f64(), (c3 / axis_length).as_f64()).ok_or_else(|| {
            Error::domain("chain interface", format!("(theta3, C3) = ({theta3}, {c3}) admits no chain"))
        })?;
        Ok(Self { axis_length, theta1: T::FRAC_PI_6() - theta3, c1: T::lit(s.chord[0]) * axis_length, c3 })
    }

    pub fn c3(&self) -> T {
        self.c3
    }

    pub fn shape(&self) -> ChainShape<T> {
        let t1 = self.theta1;
        ChainShape {
            axis_length: self.axis_length,
            theta: [t1, T::FRAC_PI_3() - t1, T::FRAC_PI_6() - t1],
            chord: [self.c1, self.axis_length - self.c1, self.c3()],
        }
    }

    pub fn evaluate(&self) -> ChainEvaluation<T> {
        let s = self.shape();
        let (area_high, area_low) = s.areas();
        ChainEvaluation { area_high, area_low, perimeter: s.perimeter(), c2: s.chord[1], c3: s.chord[2] }
    }
}

pub fn chain_eval_unequal<T: Scalar>(axis_length: T, theta1: T, c1: T) -> Result<ChainEvaluation<T>> {
    ChainParamsUnequal::new(axis_length, theta1, c1).map(|p| p.evaluate())
}

/// Equal-pressure chain: flat interfaces of length `c3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainParamsEqual<T = f64> {
    pub axis_length: T,
    pub c3: T,
}

impl<T: Scalar> ChainParamsEqual<T> {
    pub fn new(axis_length: T, c3: T) -> Result<Self> {
        if !(axis_length >= T::one() - T::lit(1e-12)) {
            return Err(Error::domain("chain axis length", format!("L0 = {axis_length} below 1")));
        }
        if !(c3 >= T::zero() && c3.is_finite()) {
            return Err(Error::domain("chain chord", format!("C3 = {c3} must be nonnegative")));
        }
        Ok(Self { axis_length, c3 })
    }

    /// Area of each component.
    pub fn area(&self) -> T {
        let l = self.axis_length;
        equal_chain_base_area::<T>() * l * l + T::lit(0.5) * l * self.c3
    }

    pub fn perimeter(&self) -> T {
        T::lit(2.0) * T::FRAC_PI_3() * self.axis_length + T::lit(2.0) * self.c3
    }

    pub fn shape(&self) -> ChainShape<T> {
        let half = self.axis_length * T::lit(0.5);
        ChainShape {
            axis_length: self.axis_length,
            theta: [T::FRAC_PI_6(), T::FRAC_PI_6(), T::zero()],
            chord: [half, half, self.c3],
        }
    }
}

/// `(2π − 3√3) / 24`, the component area of the equal chain with `L0 = 1, C3 = 0`.
pub fn equal_chain_base_area<T: Scalar>() -> T {
    (T::lit(2.0) * T::PI() - T::lit(3.0) * T::sqrt3()) / T::lit(24.0)
}

pub fn chain_eval_equal<T: Scalar>(axis_length: T, c3: T) -> Result<(T, T, T)> {
    let p = ChainParamsEqual::new(axis_length, c3)?;
    Ok((p.area(), p.area(), p.perimeter()))
}

/// Chain with unit axis parametrized by `(θ3, C3)` instead of `(θ1, C1)`.
///
/// `C1` is the smaller root of `s3 C1² − (s3 + C3 cos θ3) C1 + C3 s1 = 0`
/// (`s_i = sin θ_i`), which stays well conditioned as `θ3 → 0`. Valid for
/// `θ3 ∈ (0, π/6)` and `0 < C3 < c3_max(θ3)`.
pub(crate) fn unit_chain_from_interface(theta3: f64, c3: f64) -> Option<ChainShape<f64>> {
    if !(theta3 > 0.0 && theta3 < std::f64::consts::FRAC_PI_6 && c3 > 0.0) {
        return None;
    }
    let theta1 = std::f64::consts::FRAC_PI_6 - theta3;
    let (s1, s3) = (theta1.sin(), theta3.sin());
    let b = s3 + c3 * theta3.cos();
    let c = c3 * s1;
    let disc = b * b - 4.0 * s3 * c;
    if disc < 0.0 {
        return None;
    }
    let c1 = 2.0 * c / (b + disc.sqrt());
    if !(c1 > 0.0 && c1 < s1) {
        return None;
    }
    Some(ChainShape {
        axis_length: 1.0,
        theta: [theta1, std::f64::consts::FRAC_PI_3 - theta1, theta3],
        chord: [c1, 1.0 - c1, c3],
    })
}

/// Supremum of `C3` for unit chains at interface angle `θ3`.
pub(crate) fn unit_c3_max(theta3: f64) -> f64 {
    let s1 = (std::f64::consts::FRAC_PI_6 - theta3).sin();
    theta3.sin() * (1.0 - s1) / (1.0 - theta3.cos())
}
