//! Band lens: a band between two parallel unit geodesics with a lens of
//! radius `r` straddling one of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandLensParams<T = f64> {
    pub r: T,
    /// Distance between the two geodesics (band area plus half the lens).
    pub d: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandLensEvaluation<T = f64> {
    pub area_lens: T,
    pub area_band: T,
    pub perimeter: T,
}

/// `π/3 − √3/4`: half the lens area over `r²`.
pub fn lens_constant<T: Scalar>() -> T {
    T::FRAC_PI_3() - T::sqrt3() / T::lit(4.0)
}

impl<T: Scalar> BandLensParams<T> {
    pub fn new(r: T, d: T) -> Result<Self> {
        if !(r > T::zero() && r < T::one() / T::sqrt3()) {
            return Err(Error::domain("lens radius", format!("r = {r} not in (0, 1/sqrt3)")));
        }
        if !(d > r * T::lit(0.5) && d.is_finite()) {
            return Err(Error::domain("band width", format!("d = {d} must exceed r/2 = {}", r * T::lit(0.5))));
        }
        Ok(Self { r, d })
    }

    pub fn evaluate(&self) -> BandLensEvaluation<T> {
        let k = lens_constant::<T>();
        let r2 = self.r * self.r;
        BandLensEvaluation {
            area_lens: T::lit(2.0) * k * r2,
            area_band: self.d - k * r2,
            perimeter: (T::lit(4.0) * T::FRAC_PI_3() - T::sqrt3()) * self.r + T::lit(2.0),
        }
    }

    /// Lens chord on the geodesic, `√3 r`.
    pub fn lens_chord(&self) -> T {
        T::sqrt3() * self.r
    }

    /// Exterior feasibility on a torus of total area `torus_area`: the exterior
    /// band must also clear the half lens bulging into it.
    pub fn fits_exterior(&self, torus_area: T) -> bool {
        torus_area - self.d > self.r * T::lit(0.5)
    }
}

pub fn band_lens_eval<T: Scalar>(r: T, d: T) -> Result<BandLensEvaluation<T>> {
    BandLensParams::new(r, d).map(|p| p.evaluate())
}

/// Perimeter of the band lens whose lens encloses `area`: `2 + √(A(8π/3 − 2√3))`.
pub fn band_lens_bound<T: Scalar>(area: T) -> T {
    T::lit(2.0) + (area * (T::lit(8.0) * T::FRAC_PI_3() - T::lit(2.0) * T::sqrt3())).sqrt()
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn inverted_example() {
        let r = (0.1 / (2.0 * lens_constant::<f64>())).sqrt();
        assert_relative_eq!(r, 0.285_322_127, epsilon = 1e-9);
        let e = band_lens_eval(r, 0.35).unwrap();
        assert_relative_eq!(e.area_lens, 0.1, epsilon = 1e-15);
        assert_relative_eq!(e.area_band, 0.3, epsilon = 1e-15);
        assert_relative_eq!(e.perimeter, 2.700_962_110, epsilon = 1e-9);
        assert_relative_eq!(e.perimeter, band_lens_bound(0.1), epsilon = 1e-14);
    }

    #[test]
    fn band_identity_holds() {
        for (r, d) in [(0.1f64, 0.3f64), (0.2853, 0.4), (0.5, 0.26), (1e-4, 0.7)] {
            let e = band_lens_eval(r, d).unwrap();
            // Algebraically exact; one rounding in the subtraction is all that remains.
            assert!((e.area_band + 0.5 * e.area_lens - d).abs() <= f64::EPSILON * d);
        }
    }

    #[test]
    fn degenerate_lens() {
        let e = band_lens_eval(1e-12, 0.3).unwrap();
        assert!(e.area_lens < 1e-23);
        assert_relative_eq!(e.perimeter, 2.0, epsilon = 1e-11);
    }

    #[test]
    fn domain() {
        assert!(BandLensParams::new(1.0 / 3f64.sqrt(), 1.0).is_err());
        assert!(BandLensParams::new(0.2, 0.1).is_err());
        assert!(BandLensParams::new(0.0, 0.1).is_err());
        let p = BandLensParams::new(0.5, 0.3).unwrap();
        assert!(p.lens_chord() <= 1.0);
        assert!(p.fits_exterior(1.0) && !p.fits_exterior(0.5));
    }
}
