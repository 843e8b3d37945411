//! Euler–Maclaurin tails for slowly convergent series over arithmetic
//! progressions. Used wherever a series is summed directly up to some index
//! and the remainder is a smooth function of the index.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TailSum {
    pub value: f64,
    pub error: f64,
}

/// Cached Gauss–Legendre rules of the degrees used in this crate.
pub(crate) fn gauss(degree: usize) -> &'static GaussLegendre {
    static R4: OnceLock<GaussLegendre> = OnceLock::new();
    static R8: OnceLock<GaussLegendre> = OnceLock::new();
    static R24: OnceLock<GaussLegendre> = OnceLock::new();
    static R32: OnceLock<GaussLegendre> = OnceLock::new();
    let cell = match degree {
        4 => &R4,
        8 => &R8,
        24 => &R24,
        32 => &R32,
        _ => unreachable!("no cached Gauss rule of degree {degree}"),
    };
    cell.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(degree).unwrap()))
}

/// `Σ_{j≥0} c·(x0 + j·step)^{-s}` for `s > 1`, `x0 > 0`.
pub(crate) fn power_tail(c: f64, s: f64, x0: f64, step: f64) -> TailSum {
    debug_assert!(s > 1.0 && x0 > 0.0 && step > 0.0);
    let f0 = x0.powf(-s);
    let integral = x0 * f0 / ((s - 1.0) * step);
    let d1 = -s * f0 / x0;
    let d3 = -s * (s + 1.0) * (s + 2.0) * f0 / x0.powi(3);
    let d5 = -s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * f0 / x0.powi(5);
    let value = integral + 0.5 * f0 - step * d1 / 12.0 + step.powi(3) * d3 / 720.0;
    let error = 2.0 * step.powi(5) * d5.abs() / 30240.0;
    TailSum { value: c * value, error: c.abs() * error + f64::EPSILON * (c * value).abs() }
}

/// `Σ_{j≥0} f(x0 + j·step)` for a smooth `f` decaying at least like `x^{-2}`.
///
/// The integral part is mapped to `(0, 1]` by `x = x0 / t`, where the
/// integrand is smooth for rational decay, and integrated by Gauss–Legendre.
pub(crate) fn smooth_tail<F: Fn(f64) -> f64>(f: F, x0: f64, step: f64) -> TailSum {
    debug_assert!(x0 > 0.0 && step > 0.0);
    let mapped = |t: f64| f(x0 / t) * x0 / (t * t);
    let i32 = gauss(32).integrate(0.0, 1.0, mapped);
    let i24 = gauss(24).integrate(0.0, 1.0, mapped);

    let diff = |h: f64| (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    let h = 1e-3 * x0;
    let d1 = (4.0 * diff(0.5 * h) - diff(h)) / 3.0;

    let value = i32 / step + 0.5 * f(x0) - step * d1 / 12.0;
    let error = (i32 - i24).abs() / step
        + (step * d1 / 12.0).abs() * (step / x0).powi(2)
        + f64::EPSILON * value.abs();
    TailSum { value, error }
}
