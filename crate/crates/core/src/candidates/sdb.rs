//! Standard double bubble: three arcs on a common chord meeting at 120°.

use serde::{Deserialize, Serialize};

use crate::arc::{arc_len, segment_area};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Angle `theta` between the interior arc and the chord, and chord length `chord`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdbParams<T = f64> {
    pub theta: T,
    pub chord: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdbEvaluation<T = f64> {
    /// Area of the higher-pressure region (the smaller one).
    pub area_high: T,
    pub area_low: T,
    pub perimeter: T,
    pub diameter: T,
}

impl<T: Scalar> SdbParams<T> {
    pub fn new(theta: T, chord: T) -> Result<Self> {
        if !(theta >= T::zero() && theta < T::FRAC_PI_3()) {
            return Err(Error::domain("double bubble angle", format!("theta = {theta} not in [0, pi/3)")));
        }
        if !(chord > T::zero() && chord.is_finite()) {
            return Err(Error::domain("double bubble chord", format!("C = {chord} must be positive")));
        }
        Ok(Self { theta, chord })
    }

    pub fn evaluate(&self) -> SdbEvaluation<T> {
        let (t, c) = (self.theta, self.chord);
        let third = T::lit(2.0) * T::FRAC_PI_3();
        let area_high = segment_area(third - t, c) + segment_area(t, c);
        let area_low = segment_area(third + t, c) - segment_area(t, c);
        let perimeter = arc_len(third + t, c) + arc_len(third - t, c) + arc_len(t, c);
        SdbEvaluation { area_high, area_low, perimeter, diameter: diameter(t, c) }
    }

    /// Cap angles `(2π/3 − θ, 2π/3 + θ)` of the high and low pressure regions.
    pub fn cap_angles(&self) -> (T, T) {
        let third = T::lit(2.0) * T::FRAC_PI_3();
        (third - self.theta, third + self.theta)
    }
}

pub fn sdb_evaluate<T: Scalar>(theta: T, chord: T) -> Result<SdbEvaluation<T>> {
    SdbParams::new(theta, chord).map(|p| p.evaluate())
}

fn diameter<T: Scalar>(t: T, c: T) -> T {
    let (one, two, p3) = (T::one(), T::lit(2.0), T::FRAC_PI_3());
    c * ((one + (p3 - t).cos()) / (two * (two * p3 + t).sin())
        + (one + (p3 + t).cos()) / (two * (two * p3 - t).sin()))
}

/// Perimeter over diameter as a function of the interior angle alone.
pub fn perimeter_diameter_ratio<T: Scalar>(theta: T) -> T {
    let (s, c) = theta.sin_cos();
    let pi = T::PI();
    (T::lit(8.0) * pi * s * c + T::lit(3.0) * T::sqrt3() * theta) / (T::lit(6.0) * s * c + T::lit(3.0) * s)
}

/// `π sin 2θ + 3√3 θ − 3π sin θ`, positive on `(0, π/3)`.
pub fn g<T: Scalar>(theta: T) -> T {
    let pi = T::PI();
    pi * (T::lit(2.0) * theta).sin() + T::lit(3.0) * T::sqrt3() * theta - T::lit(3.0) * pi * theta.sin()
}
