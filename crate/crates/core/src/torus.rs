//! Normalized flat tori, the flat cylinder and the free-boundary strip.
//!
//! A torus is the parallelogram spanned by `u = (1, 0)` and
//! `v = L (cos θ, sin θ)` with opposite sides identified, where `L ≥ 1`
//! and `θ ∈ [π/3, π/2]`. With this normalization the side `u` is a
//! shortest closed geodesic and every closed geodesic has length at least 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arc::Point;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const CANONICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatTorus<T = f64> {
    pub side_l: T,
    pub angle: T,
}

impl<T: Scalar> FlatTorus<T> {
    /// Validates a canonical torus; angles within 1e-12 of the bounds are snapped onto them.
    pub fn new(side_l: T, angle: T) -> Result<Self> {
        let tol = T::lit(CANONICAL_TOL).max(T::epsilon() * T::lit(8.0));
        if !side_l.is_finite() || side_l < T::one() - tol {
            return Err(Error::domain("torus side", format!("L = {side_l} must be at least 1")));
        }
        let (lo, hi) = (T::FRAC_PI_3(), T::FRAC_PI_2());
        if !angle.is_finite() || angle < lo - tol || angle > hi + tol {
            return Err(Error::domain("torus angle", format!("{angle} rad not in [pi/3, pi/2]")));
        }
        Ok(Self { side_l: side_l.max(T::one()), angle: angle.max(lo).min(hi) })
    }

    /// Angle given in degrees, as on the command line.
    pub fn from_degrees(side_l: T, degrees: T) -> Result<Self> {
        Self::new(side_l, degrees.to_radians())
    }

    pub fn hexagonal() -> Self {
        Self { side_l: T::one(), angle: T::FRAC_PI_3() }
    }

    pub fn square() -> Self {
        Self { side_l: T::one(), angle: T::FRAC_PI_2() }
    }

    pub fn area(&self) -> T {
        self.side_l * self.angle.sin()
    }

    /// First period vector, a shortest closed geodesic.
    pub fn u(&self) -> Point<T> {
        Point::new(T::one(), T::zero())
    }

    pub fn v(&self) -> Point<T> {
        let (s, c) = self.angle.sin_cos();
        Point::new(self.side_l * c, self.side_l * s)
    }

    pub fn lattice_vector(&self, h: HomologyClass) -> Point<T> {
        self.u() * T::lit(h.p as f64) + self.v() * T::lit(h.q as f64)
    }

    pub fn geodesic_length(&self, h: HomologyClass) -> T {
        let (p, q) = (T::lit(h.p as f64), T::lit(h.q as f64));
        let l = self.side_l;
        (p * p + q * q * l * l + T::lit(2.0) * p * q * l * self.angle.cos()).max(T::zero()).sqrt()
    }

    /// Homology classes with `|p|, |q| ≤ 1` realized by unit-length geodesics.
    pub fn short_directions(&self) -> Vec<HomologyClass> {
        let tol = T::lit(CANONICAL_TOL).max(T::epsilon() * T::lit(64.0));
        HomologyClass::WRAP_ONCE
            .into_iter()
            .filter(|&h| (self.geodesic_length(h) - T::one()).abs() <= tol)
            .collect()
    }

    /// Axis lengths a minimizing standard chain can have: the geodesic lengths of
    /// `(1,0), (0,1), (1,1), (1,-1)`, sorted and deduplicated.
    pub fn chain_axes(&self) -> Vec<(HomologyClass, T)> {
        let tol = T::lit(CANONICAL_TOL).max(T::epsilon() * T::lit(64.0));
        let mut axes: Vec<(HomologyClass, T)> =
            HomologyClass::WRAP_ONCE.into_iter().map(|h| (h, self.geodesic_length(h))).collect();
        axes.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        axes.dedup_by(|b, a| (b.1 - a.1).abs() <= tol);
        axes
    }

    pub fn chain_axis_lengths(&self) -> Vec<T> {
        self.chain_axes().into_iter().map(|(_, l)| l).collect()
    }

    pub fn is_hexagonal(&self) -> bool {
        let tol = T::lit(CANONICAL_TOL).max(T::epsilon() * T::lit(8.0));
        (self.side_l - T::one()).abs() <= tol && (self.angle - T::FRAC_PI_3()).abs() <= tol
    }
}

impl<T: Scalar> fmt::Display for FlatTorus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Rounded so that integer degrees print as integers.
        let deg = (self.angle.as_f64().to_degrees() * 1e9).round() / 1e9;
        write!(f, "torus(L = {}, angle = {deg} deg)", self.side_l)
    }
}

/// Homology class `(p, q)` of a closed curve, up to overall sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomologyClass {
    pub p: i32,
    pub q: i32,
}

impl HomologyClass {
    pub const WRAP_ONCE: [HomologyClass; 4] = [
        HomologyClass { p: 1, q: 0 },
        HomologyClass { p: 0, q: 1 },
        HomologyClass { p: 1, q: 1 },
        HomologyClass { p: 1, q: -1 },
    ];

    /// Canonical form: first nonzero coordinate positive.
    pub fn new(p: i32, q: i32) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidInput("homology class (0, 0)".into()));
        }
        let flip = p < 0 || (p == 0 && q < 0);
        Ok(if flip { Self { p: -p, q: -q } } else { Self { p, q } })
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// The ambient surface. The cylinder has circumference 1; the strip has
/// width 1/2 and is the reflection quotient of that cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Space<T = f64> {
    Torus(FlatTorus<T>),
    Cylinder,
    Strip,
}

impl<T: Scalar> Space<T> {
    /// Total area, `None` when infinite.
    pub fn area(&self) -> Option<T> {
        match self {
            Space::Torus(t) => Some(t.area()),
            Space::Cylinder | Space::Strip => None,
        }
    }

    pub fn torus(&self) -> Option<&FlatTorus<T>> {
        match self {
            Space::Torus(t) => Some(t),
            _ => None,
        }
    }
}

impl<T: Scalar> fmt::Display for Space<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Torus(t) => t.fmt(f),
            Space::Cylinder => f.write_str("cylinder"),
            Space::Strip => f.write_str("strip"),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    fn hc(p: i32, q: i32) -> HomologyClass {
        HomologyClass::new(p, q).unwrap()
    }

    #[test]
    fn torus_area_examples() {
        assert_relative_eq!(FlatTorus::new(1.0, FRAC_PI_3).unwrap().area(), 0.8660254, epsilon = 1e-7);
        assert_relative_eq!(FlatTorus::new(1.0, FRAC_PI_2).unwrap().area(), 1.0);
        assert_relative_eq!(FlatTorus::new(1.2, FRAC_PI_2).unwrap().area(), 1.2);
    }

    #[test]
    fn validation_rejects_noncanonical_tori() {
        assert!(FlatTorus::new(0.9, FRAC_PI_2).is_err());
        assert!(FlatTorus::new(1.0, 0.5).is_err());
        assert!(FlatTorus::new(1.0, 1.6).is_err());
        assert!(FlatTorus::new(f64::NAN, 1.2).is_err());
        assert!(FlatTorus::from_degrees(1.0, 60.0).unwrap().is_hexagonal());
        assert_eq!(FlatTorus::from_degrees(1.0, 90.0).unwrap().angle, FRAC_PI_2);
    }

    #[test]
    fn geodesic_length_examples() {
        let hex = FlatTorus::<f64>::hexagonal();
        assert_relative_eq!(hex.geodesic_length(hc(1, -1)), 1.0, epsilon = 1e-15);
        let rect = FlatTorus::new(1.2, FRAC_PI_2).unwrap();
        assert_relative_eq!(rect.geodesic_length(hc(0, 1)), 1.2);
        let sq = FlatTorus::<f64>::square();
        assert_relative_eq!(sq.geodesic_length(hc(1, 1)), 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn short_direction_examples() {
        assert_eq!(FlatTorus::<f64>::hexagonal().short_directions(), vec![hc(1, 0), hc(0, 1), hc(1, -1)]);
        assert_eq!(FlatTorus::new(1.2, FRAC_PI_2).unwrap().short_directions(), vec![hc(1, 0)]);
        assert_eq!(FlatTorus::<f64>::square().short_directions(), vec![hc(1, 0), hc(0, 1)]);
    }

    #[test]
    fn chain_axis_length_examples() {
        let hex = FlatTorus::<f64>::hexagonal().chain_axis_lengths();
        assert_eq!(hex.len(), 2);
        assert_relative_eq!(hex[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(hex[1], 3f64.sqrt(), epsilon = 1e-15);
        let rect = FlatTorus::new(1.2, FRAC_PI_2).unwrap().chain_axis_lengths();
        assert_eq!(rect.len(), 3);
        assert_relative_eq!(rect[1], 1.2);
        assert_relative_eq!(rect[2], 2.44f64.sqrt(), epsilon = 1e-15);
        let sq = FlatTorus::<f64>::square().chain_axis_lengths();
        assert_eq!(sq.len(), 2);
        assert_relative_eq!(sq[1], 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn hexagonal_detection() {
        assert!(FlatTorus::new(1.0, FRAC_PI_3).unwrap().is_hexagonal());
        assert!(!FlatTorus::new(1.0, FRAC_PI_2).unwrap().is_hexagonal());
        assert!(!FlatTorus::new(1.2, FRAC_PI_2).unwrap().is_hexagonal());
    }

    #[test]
    fn homology_is_canonical() {
        assert_eq!(hc(-1, 1), hc(1, -1));
        assert_eq!(hc(0, -2), hc(0, 2));
        assert!(HomologyClass::new(0, 0).is_err());
    }

    #[test]
    fn f32_torus() {
        let t = FlatTorus::<f32>::from_degrees(1.0, 60.0).unwrap();
        assert!(t.is_hexagonal());
        assert!((t.area() - 0.866_025_4).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn geodesics_are_at_least_one(l in 1.0..3.0f64, deg in 60.0..=90.0f64) {
            let t = FlatTorus::from_degrees(l, deg).unwrap();
            for p in -2..=2 {
                for q in -2..=2 {
                    if (p, q) != (0, 0) {
                        prop_assert!(t.geodesic_length(hc(p, q)) >= 1.0 - 1e-12);
                    }
                }
            }
            prop_assert!(t.short_directions().contains(&hc(1, 0)));
            prop_assert!(t.area() >= 3f64.sqrt() / 2.0 - 1e-12);
            if (t.area() - 3f64.sqrt() / 2.0).abs() <= 1e-10 {
                prop_assert!(l - 1.0 <= 1e-9 && deg - 60.0 <= 1e-7);
            }
            prop_assert_eq!(t.chain_axis_lengths()[0], 1.0);
        }
    }
}
