//! Circular arcs subtended by chords and closed paths made of them.
//!
//! An arc is described by the length `C` of its chord and the angle `θ`
//! at which arc and chord meet (half the turning of the arc). `θ = 0` is a
//! straight segment and is handled by explicit continuous extension.
//!
//! Sign convention for [`ArcEdge::bulge`]: a positive angle bows to the
//! left of the travel direction `start → end`. All coordinates are in torus
//! units (shortest closed geodesic has length one).

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Chord length and chord/arc angle of a circular arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcChordParams<T = f64> {
    pub theta: T,
    pub chord: T,
}

impl<T: Scalar> ArcChordParams<T> {
    pub fn new(theta: T, chord: T) -> Result<Self> {
        if !(chord > T::zero()) || !chord.is_finite() {
            return Err(Error::domain("chord length", format!("C = {chord} must be positive")));
        }
        if !(theta >= T::zero() && theta < T::PI()) {
            return Err(Error::domain("arc angle", format!("theta = {theta} not in [0, pi)")));
        }
        Ok(Self { theta, chord })
    }

    /// Area between the arc and its chord.
    pub fn area(&self) -> T {
        segment_area(self.theta, self.chord)
    }

    pub fn length(&self) -> T {
        arc_len(self.theta, self.chord)
    }

    /// Radius of the supporting circle; undefined for straight segments.
    pub fn radius(&self) -> Result<T> {
        if self.theta == T::zero() {
            return Err(Error::domain("arc angle", "straight segment has no finite radius"));
        }
        Ok(self.chord / (T::lit(2.0) * self.theta.sin()))
    }
}

/// `C²(θ − sinθ cosθ) / (4 sin²θ)`, validated.
pub fn chord_area<T: Scalar>(theta: T, chord: T) -> Result<T> {
    ArcChordParams::new(theta, chord).map(|p| p.area())
}

/// `Cθ / sinθ`, validated.
pub fn arc_length<T: Scalar>(theta: T, chord: T) -> Result<T> {
    ArcChordParams::new(theta, chord).map(|p| p.length())
}

/// `C / (2 sinθ)`, validated; errors at `θ = 0`.
pub fn arc_radius<T: Scalar>(theta: T, chord: T) -> Result<T> {
    ArcChordParams::new(theta, chord)?.radius()
}

/// Unchecked segment area, with the `θ = 0` and `C = 0` cases extended by continuity.
#[inline]
pub(crate) fn segment_area<T: Scalar>(theta: T, chord: T) -> T {
    if theta == T::zero() || chord == T::zero() {
        return T::zero();
    }
    let s = theta.sin();
    chord * chord * (theta - s * theta.cos()) / (T::lit(4.0) * s * s)
}

#[inline]
pub(crate) fn arc_len<T: Scalar>(theta: T, chord: T) -> T {
    if theta == T::zero() {
        return chord;
    }
    chord * theta / theta.sin()
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    /// Rotation by +90°.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn rotated(self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn unit(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, s)
    }

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// A straight segment or circular arc between two distinct points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcEdge<T = f64> {
    pub start: Point<T>,
    pub end: Point<T>,
    /// Signed chord/arc angle; positive bows left of `start → end`.
    pub bulge: T,
}

impl<T: Scalar> ArcEdge<T> {
    pub fn new(start: Point<T>, end: Point<T>, bulge: T) -> Result<Self> {
        if start.distance(end) <= T::closure_tolerance() {
            return Err(Error::domain("arc edge", "start and end coincide (full circles are not edges)"));
        }
        if !(bulge.abs() < T::PI()) {
            return Err(Error::domain("arc edge", format!("|bulge| = {} must be below pi", bulge.abs())));
        }
        Ok(Self { start, end, bulge })
    }

    pub fn line(start: Point<T>, end: Point<T>) -> Result<Self> {
        Self::new(start, end, T::zero())
    }

    pub fn is_straight(&self) -> bool {
        self.bulge == T::zero()
    }

    pub fn chord_length(&self) -> T {
        self.start.distance(self.end)
    }

    pub fn chord_params(&self) -> ArcChordParams<T> {
        ArcChordParams { theta: self.bulge.abs(), chord: self.chord_length() }
    }

    pub fn radius(&self) -> Option<T> {
        (!self.is_straight()).then(|| self.chord_length() / (T::lit(2.0) * self.bulge.abs().sin()))
    }

    pub fn center(&self) -> Option<Point<T>> {
        let r = self.radius()?;
        let d = self.end - self.start;
        let n = (d * (T::one() / d.norm())).perp();
        let mid = (self.start + self.end) * T::lit(0.5);
        let s = self.bulge.signum();
        Some(mid - n * (s * r * self.bulge.abs().cos()))
    }

    pub fn length(&self) -> T {
        arc_len(self.bulge.abs(), self.chord_length())
    }

    /// Signed curvature along the travel direction (left turns positive).
    pub fn signed_curvature(&self) -> T {
        match self.radius() {
            Some(r) => -self.bulge.signum() / r,
            None => T::zero(),
        }
    }

    /// Unit tangent at `start`, pointing along the travel direction.
    pub fn tangent_start(&self) -> Point<T> {
        let d = self.end - self.start;
        (d * (T::one() / d.norm())).rotated(self.bulge)
    }

    /// Unit tangent at `end`, pointing along the travel direction.
    pub fn tangent_end(&self) -> Point<T> {
        let d = self.end - self.start;
        (d * (T::one() / d.norm())).rotated(-self.bulge)
    }

    /// Point at curve parameter `t ∈ [0, 1]` (uniform in arc length).
    pub fn point_at(&self, t: T) -> Point<T> {
        match self.center() {
            None => self.start + (self.end - self.start) * t,
            Some(c) => {
                let a0 = (self.start - c).angle();
                let r = self.radius().unwrap_or_else(T::zero);
                c + Point::unit(a0 - T::lit(2.0) * self.bulge * t) * r
            }
        }
    }

    pub fn reversed(&self) -> Self {
        Self { start: self.end, end: self.start, bulge: -self.bulge }
    }

    pub fn translated(&self, by: Point<T>) -> Self {
        Self { start: self.start + by, end: self.end + by, bulge: self.bulge }
    }

    /// Signed area between the arc and its chord as seen by a left-hand (CCW) traversal.
    fn area_correction(&self) -> T {
        -self.bulge.signum() * segment_area(self.bulge.abs(), self.chord_length())
    }
}

/// Ordered chain of edges, usually closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcPath<T = f64> {
    pub edges: Vec<ArcEdge<T>>,
    pub closed: bool,
}

impl<T: Scalar> ArcPath<T> {
    /// Builds a closed path, checking that consecutive edges meet (cyclically).
    pub fn closed(edges: Vec<ArcEdge<T>>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::OpenPath("no edges".into()));
        }
        let tol = T::closure_tolerance();
        for (i, e) in edges.iter().enumerate() {
            let next = &edges[(i + 1) % edges.len()];
            let gap = e.end.distance(next.start);
            if gap > tol {
                return Err(Error::OpenPath(format!("edge {i} ends {gap} away from the next start")));
            }
        }
        Ok(Self { edges, closed: true })
    }

    pub fn open(edges: Vec<ArcEdge<T>>) -> Self {
        Self { edges, closed: false }
    }

    /// Closed path through the given vertices with straight edges.
    pub fn polygon(vertices: &[Point<T>]) -> Result<Self> {
        let n = vertices.len();
        let edges = (0..n)
            .map(|i| ArcEdge::line(vertices[i], vertices[(i + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        Self::closed(edges)
    }

    pub fn reversed(&self) -> Self {
        Self { edges: self.edges.iter().rev().map(ArcEdge::reversed).collect(), closed: self.closed }
    }

    pub fn translated(&self, by: Point<T>) -> Self {
        Self { edges: self.edges.iter().map(|e| e.translated(by)).collect(), closed: self.closed }
    }

    pub fn length(&self) -> T {
        self.edges.iter().fold(T::zero(), |acc, e| acc + e.length())
    }

    /// Signed enclosed area: shoelace over the chords plus a segment
    /// correction per curved edge. Positive for counterclockwise paths.
    pub fn area(&self) -> Result<T> {
        if !self.closed {
            return Err(Error::OpenPath("area of an open path".into()));
        }
        let half = T::lit(0.5);
        Ok(self
            .edges
            .iter()
            .fold(T::zero(), |acc, e| acc + half * e.start.cross(e.end) + e.area_correction()))
    }
}

/// Signed area of a closed path (see [`ArcPath::area`]).
pub fn path_area<T: Scalar>(path: &ArcPath<T>) -> Result<T> {
    path.area()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn chord_area_examples() {
        assert_relative_eq!(chord_area(FRAC_PI_2, 2.0).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(chord_area(0.0, 1.0).unwrap(), 0.0);
        // Polygonal quadrature of the same segment (1e5 chords) gave 0.84246927.
        assert_relative_eq!(chord_area(2.0 * FRAC_PI_3, 1.0).unwrap(), 0.8424693, epsilon = 1e-7);
    }

    #[test]
    fn arc_length_examples() {
        assert_relative_eq!(arc_length(FRAC_PI_2, 2.0).unwrap(), PI, epsilon = 1e-15);
        assert_eq!(arc_length(0.0, 0.7).unwrap(), 0.7);
        let c = 3f64.sqrt() * 0.25;
        assert_relative_eq!(arc_length(FRAC_PI_3, c).unwrap(), 0.5235988, epsilon = 1e-7);
        assert_relative_eq!(arc_length(FRAC_PI_3, c).unwrap(), 2.0 * 0.25 * FRAC_PI_3, epsilon = 1e-15);
    }

    #[test]
    fn arc_radius_examples() {
        assert_relative_eq!(arc_radius(FRAC_PI_2, 2.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(arc_radius(FRAC_PI_6, 1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(arc_radius(FRAC_PI_3, 3f64.sqrt()).unwrap(), 1.0, epsilon = 1e-15);
        assert!(arc_radius(0.0, 1.0).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(chord_area(PI, 1.0).is_err());
        assert!(chord_area(-0.1, 1.0).is_err());
        assert!(arc_length(0.3, 0.0).is_err());
        assert!(arc_length(0.3, -1.0).is_err());
        assert!(ArcEdge::new(Point::new(0.0, 0.0), Point::new(0.0, 0.0), 0.3).is_err());
        assert!(ArcEdge::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0), PI).is_err());
    }

    #[test]
    fn path_area_examples() {
        let sq = ArcPath::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        assert_relative_eq!(sq.area().unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(sq.reversed().area().unwrap(), -1.0, epsilon = 1e-15);

        // Counterclockwise unit circle: arcs bow outward, i.e. right of travel.
        let pts = [Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0), Point::new(0.0, -1.0)];
        let edges = (0..4).map(|i| ArcEdge::new(pts[i], pts[(i + 1) % 4], -FRAC_PI_4).unwrap()).collect();
        let circle = ArcPath::closed(edges).unwrap();
        assert_relative_eq!(circle.area().unwrap(), PI, epsilon = 1e-14);
        assert_relative_eq!(circle.length(), 2.0 * PI, epsilon = 1e-14);

        let r = 0.2;
        let c = 3f64.sqrt() * r;
        let (a, b) = (Point::new(0.0, 0.0), Point::new(c, 0.0));
        let lens = ArcPath::closed(vec![
            ArcEdge::new(a, b, -FRAC_PI_3).unwrap(),
            ArcEdge::new(b, a, -FRAC_PI_3).unwrap(),
        ])
        .unwrap();
        assert_relative_eq!(lens.area().unwrap(), 0.0491348, epsilon = 1e-7);
        assert!(ArcPath::open(lens.edges.clone()).area().is_err());
    }

    #[test]
    fn open_paths_are_rejected() {
        let e1 = ArcEdge::line(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let e2 = ArcEdge::line(Point::new(1.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        assert!(matches!(ArcPath::closed(vec![e1, e2]), Err(Error::OpenPath(_))));
    }

    #[test]
    fn edge_frame_is_consistent() {
        let e = ArcEdge::new(Point::new(0.0, 0.0), Point::new(2.0, 0.0), FRAC_PI_2).unwrap();
        // Semicircle above the chord, centered at (1, 0).
        let c = e.center().unwrap();
        assert_relative_eq!(c.x, 1.0, epsilon = 1e-15);
        assert_relative_eq!(c.y, 0.0, epsilon = 1e-15);
        let top = e.point_at(0.5);
        assert_relative_eq!(top.y, 1.0, epsilon = 1e-15);
        assert_relative_eq!(e.tangent_start().y, 1.0, epsilon = 1e-15);
        assert_relative_eq!(e.tangent_end().y, -1.0, epsilon = 1e-15);
        assert_relative_eq!(e.signed_curvature(), -1.0, epsilon = 1e-15);
        let end = e.point_at(1.0);
        assert_relative_eq!(end.x, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn generic_over_f32() {
        let a: f32 = chord_area(2.0 * std::f32::consts::FRAC_PI_3, 1.0).unwrap();
        assert!((a - 0.842_469_3).abs() < 1e-5);
        let p = ArcChordParams::<f32>::new(0.5, 2.0).unwrap();
        assert!((p.length() - 2.0 * 0.5 * p.radius().unwrap()).abs() < 1e-5);
    }

    #[test]
    fn chord_area_strictly_increasing_in_theta() {
        let n = 2000;
        let mut prev = 0.0;
        for i in 1..=n {
            let theta = 0.75 * PI * i as f64 / n as f64;
            let a = chord_area(theta, 1.0).unwrap();
            assert!(a > prev, "not increasing at theta = {theta}");
            prev = a;
        }
    }

    proptest! {
        #[test]
        fn scaling_laws(theta in 0.0..3.1f64, c in 0.01..5.0f64, s in 0.01..10.0f64) {
            let a = chord_area(theta, c).unwrap();
            let l = arc_length(theta, c).unwrap();
            prop_assert!((chord_area(theta, s * c).unwrap() - s * s * a).abs() <= 1e-12 * (1.0 + s * s * a));
            prop_assert!((arc_length(theta, s * c).unwrap() - s * l).abs() <= 1e-12 * (1.0 + s * l));
            prop_assert!(l >= c);
            if theta > 0.0 {
                let r = arc_radius(theta, c).unwrap();
                prop_assert!((arc_radius(theta, s * c).unwrap() - s * r).abs() <= 1e-12 * s * r);
                prop_assert!((l - 2.0 * theta * r).abs() <= 1e-12 * l);
            }
        }
    }
}
