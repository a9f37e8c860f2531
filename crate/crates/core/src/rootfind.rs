//! Bracketed one-dimensional root finding and damped two-dimensional Newton.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 200;

/// Brent's method (bisection / secant / inverse quadratic interpolation) on
/// a bracket `[a, b]` where `f` changes sign. Stops when the bracket is
/// narrower than `xtol` or `f` vanishes.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Convergence(format!("no sign change on [{a}, {b}]: f = ({fa}, {fb})")));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)), (q - 1.0) * (r - 1.0) * (s - 1.0))
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Convergence(format!("non-finite value at {b}")));
        }
    }
    Err(Error::Convergence(format!("Brent: {max_iter} iterations without convergence")))
}

/// Settings for [`newton2`].
#[derive(Debug, Clone, Copy)]
pub struct Newton2 {
    /// Central-difference step for the Jacobian.
    pub step: f64,
    /// Absolute residual tolerance (max norm).
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for Newton2 {
    fn default() -> Self {
        Self { step: 1e-7, ftol: 1e-13, max_iter: DEFAULT_MAX_ITER }
    }
}

/// Damped Newton iteration for `f(x) = 0`, `x ∈ R²`. `f` returns `None`
/// outside its domain; steps are halved until the residual decreases and
/// the iterate stays in the domain.
pub fn newton2<F>(f: F, x0: [f64; 2], opts: Newton2) -> Result<[f64; 2]>
where
    F: Fn([f64; 2]) -> Option<[f64; 2]>,
{
    let norm = |v: [f64; 2]| v[0].abs().max(v[1].abs());
    let mut x = x0;
    let mut fx = f(x).ok_or_else(|| Error::Convergence("Newton start outside the domain".into()))?;
    for _ in 0..opts.max_iter {
        if norm(fx) <= opts.ftol {
            return Ok(x);
        }
        let jac = jacobian(&f, x, opts.step)
            .ok_or_else(|| Error::Convergence("Jacobian stencil left the domain".into()))?;
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Convergence("singular Jacobian".into()));
        }
        let dx = [
            -(jac[1][1] * fx[0] - jac[0][1] * fx[1]) / det,
            -(-jac[1][0] * fx[0] + jac[0][0] * fx[1]) / det,
        ];
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1e-12 {
            let trial = [x[0] + lambda * dx[0], x[1] + lambda * dx[1]];
            if let Some(ft) = f(trial) {
                if norm(ft) < norm(fx) {
                    x = trial;
                    fx = ft;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            // No decrease possible: either converged to rounding level or stuck.
            return if norm(fx) <= opts.ftol * 1e3 {
                Ok(x)
            } else {
                Err(Error::Convergence(format!("Newton stalled at residual {:e}", norm(fx))))
            };
        }
    }
    if norm(fx) <= opts.ftol {
        Ok(x)
    } else {
        Err(Error::Convergence(format!("Newton: {} iterations, residual {:e}", opts.max_iter, norm(fx))))
    }
}

fn jacobian<F>(f: &F, x: [f64; 2], h: f64) -> Option<[[f64; 2]; 2]>
where
    F: Fn([f64; 2]) -> Option<[f64; 2]>,
{
    let mut jac = [[0.0; 2]; 2];
    for k in 0..2 {
        let hk = h * x[k].abs().max(1.0);
        let (mut xp, mut xm) = (x, x);
        xp[k] += hk;
        xm[k] -= hk;
        // One-sided difference when the centered stencil leaves the domain.
        let (fp, fm, span) = match (f(xp), f(xm)) {
            (Some(fp), Some(fm)) => (fp, fm, 2.0 * hk),
            (Some(fp), None) => (fp, f(x)?, hk),
            (None, Some(fm)) => (f(x)?, fm, hk),
            (None, None) => return None,
        };
        for i in 0..2 {
            jac[i][k] = (fp[i] - fm[i]) / span;
        }
    }
    Some(jac)
}
