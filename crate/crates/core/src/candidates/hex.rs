//! Standard hexagon tiling of the hexagonal torus: three equiangular hexagons
//! with sides `(a, b)`, `(b, c)`, `(c, a)` and `a + b + c = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HexTilingParams<T = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HexEvaluation<T = f64> {
    pub area_r1: T,
    pub area_r2: T,
    pub area_r0: T,
    pub perimeter: T,
}

/// Area of an equiangular hexagon with alternating sides `x`, `y`.
pub fn hexagon_area<T: Scalar>(x: T, y: T) -> T {
    T::sqrt3() / T::lit(4.0) * (x * x + T::lit(4.0) * x * y + y * y)
}

impl<T: Scalar> HexTilingParams<T> {
    /// Sides must be nonnegative and sum to one. Zero sides are the
    /// degenerate tilings by equilateral triangles.
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(8.0));
        if !(a >= T::zero() && b >= T::zero() && c >= T::zero()) {
            return Err(Error::domain("hexagon sides", format!("({a}, {b}, {c}) must be nonnegative")));
        }
        if (a + b + c - T::one()).abs() > tol {
            return Err(Error::domain("hexagon sides", format!("a + b + c = {} must be 1", a + b + c)));
        }
        Ok(Self { a, b, c })
    }

    pub fn evaluate(&self) -> HexEvaluation<T> {
        HexEvaluation {
            area_r1: hexagon_area(self.a, self.b),
            area_r2: hexagon_area(self.b, self.c),
            area_r0: hexagon_area(self.c, self.a),
            perimeter: T::lit(3.0),
        }
    }
}

pub fn hex_eval<T: Scalar>(a: T, b: T, c: T) -> Result<HexEvaluation<T>> {
    HexTilingParams::new(a, b, c).map(|p| p.evaluate())
}

/// Existence test for a tiling with these areas: `(2/3^¼)(√Aj + √Ak) > 1` for every pair.
pub fn hex_exists<T: Scalar>(areas: [T; 3]) -> bool {
    let k = T::lit(2.0) / T::lit(3.0).powf(T::lit(0.25));
    (0..3).all(|i| {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        k * (areas[j].sqrt() + areas[l].sqrt()) > T::one()
    })
}
