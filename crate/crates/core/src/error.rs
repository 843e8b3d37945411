use thiserror::Error;

use crate::best_l1::Certificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("imaginary residue {residue:e} exceeds threshold; coefficients are not conjugate-symmetric")]
    ImaginaryResidue { residue: f64 },

    #[error("{samples} samples cannot resolve frequencies up to {max_k} (need a power of two >= {required})")]
    Aliasing { max_k: usize, samples: usize, required: usize },

    #[error("Fourier coefficient at k = {k} is not available")]
    MissingCoefficient { k: i64 },

    #[error("sign-change bisection did not converge on [{a}, {b}]")]
    BisectionFailed { a: f64, b: f64 },

    #[error("order {order} is outside the supported range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },

    #[error("z = {z} is a pole")]
    Pole { z: f64 },

    #[error("singular interpolation system at n = {n}")]
    SingularSystem { n: usize },

    #[error(
        "certificate gap {gap:e} exceeds tolerance {tol:e} (lower = {lower}, upper = {upper})",
        gap = .certificate.gap(),
        lower = .certificate.lower,
        upper = .certificate.upper
    )]
    GapExceeded { certificate: Box<Certificate>, tol: f64 },

    #[error("series tail bound {bound:e} exceeds tolerance {tol:e}")]
    TailBound { bound: f64, tol: f64 },

    #[error("contour coefficients do not converge under doubling (estimate {estimate:e})")]
    NotAnalytic { estimate: f64 },

    #[error("pole at {pole} is not strictly inside the contour of radius {radius}")]
    PoleOutsideContour { pole: Complex64Display, radius: f64 },

    #[error("constructed polynomial has an odd part of size {size:e}")]
    OddPart { size: f64 },
}

/// Wrapper so complex poles print as `a+bi` in error messages.
#[derive(Debug, Clone, Copy)]
pub struct Complex64Display(pub num_complex::Complex64);

impl std::fmt::Display for Complex64Display {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument { name, reason: reason.into() }
    }
}
