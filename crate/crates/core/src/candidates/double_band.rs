//! Double band: two adjacent bands cut out by three parallel unit geodesics.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DOUBLE_BAND_PERIMETER: f64 = 3.0;

/// Perimeter of the double band enclosing `a1` and `a2`; `space_area` is
/// `None` on the cylinder.
pub fn double_band_eval<T: Scalar>(a1: T, a2: T, space_area: Option<T>) -> Result<T> {
    if !(a1 > T::zero() && a2 > T::zero()) {
        return Err(Error::InvalidInput(format!("areas ({a1}, {a2}) must be positive")));
    }
    if let Some(total) = space_area {
        if !(a1 + a2 < total) {
            return Err(Error::InvalidInput(format!("areas ({a1}, {a2}) leave no exterior in area {total}")));
        }
    }
    Ok(T::lit(DOUBLE_BAND_PERIMETER))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn always_three() {
        let hex = 3f64.sqrt() / 2.0;
        assert_eq!(double_band_eval(0.1, 0.2, Some(1.0)).unwrap(), 3.0);
        assert_eq!(double_band_eval(hex / 3.0, hex / 3.0, Some(hex)).unwrap(), 3.0);
        assert_eq!(double_band_eval(1e-6, 1e-6, None).unwrap(), 3.0);
        assert!(double_band_eval(0.5, 0.5, Some(1.0)).is_err());
        assert!(double_band_eval(0.0, 0.5, None).is_err());
    }
}
