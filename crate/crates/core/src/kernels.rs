//! Bernoulli kernels `𝓑_r`, the quasi-Bernoulli kernels `𝓚₁ = 𝓑₁ cos θ`,
//! `𝓚₂ = 𝓑₁ sin θ`, and Steklov kernels `χ_h^m`: closed-form Fourier
//! coefficients, pointwise evaluators and singular-point metadata.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::favard::favard_value;
use crate::fourier_core::{sawtooth, wrap_angle, Jump, PeriodicFn};
use crate::{Error, Result};

/// Default truncation tolerance for series evaluators.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest truncation index for which [`bernoulli_eval`] sums the Fourier
/// series; beyond it the closed-form Bernoulli polynomial is used.
const MAX_SERIES_TERMS: usize = 64;

/// Symmetry of a kernel under `θ ↦ −θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    None,
}

impl Parity {
    /// `+1` for even, `−1` for odd, `0` when undefined.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Odd => -1.0,
            Parity::Even => 1.0,
            Parity::None => 0.0,
        }
    }
}

/// Which quasi-Bernoulli kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quasi {
    /// `𝓚₁ = 𝓑₁ cos θ`
    K1,
    /// `𝓚₂ = 𝓑₁ sin θ`
    K2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    Bernoulli(u32),
    QuasiK1,
    QuasiK2,
    Steklov { m: u32, h: f64 },
}

/// A validated kernel with its evaluation tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    kind: KernelKind,
    tol: f64,
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            KernelKind::Bernoulli(r) => write!(f, "B{r}"),
            KernelKind::QuasiK1 => write!(f, "K1"),
            KernelKind::QuasiK2 => write!(f, "K2"),
            KernelKind::Steklov { m, h } => write!(f, "S(m={m},h={h})"),
        }
    }
}

impl std::str::FromStr for KernelSpec {
    type Err = Error;

    /// Parses `B<r>`, `K1` or `K2` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        match t.as_str() {
            "K1" => Ok(KernelSpec::quasi(Quasi::K1)),
            "K2" => Ok(KernelSpec::quasi(Quasi::K2)),
            _ => match t.strip_prefix('B').and_then(|r| r.parse::<u32>().ok()) {
                Some(r) => KernelSpec::bernoulli(r),
                None => Err(Error::invalid("kernel", format!("unknown kernel `{s}` (expected B<r>, K1 or K2)"))),
            },
        }
    }
}

impl KernelSpec {
    pub fn bernoulli(r: u32) -> Result<Self> {
        if r < 1 {
            return Err(Error::invalid("r", "Bernoulli kernels need r >= 1"));
        }
        Ok(KernelSpec { kind: KernelKind::Bernoulli(r), tol: DEFAULT_TOL })
    }

    pub fn quasi(which: Quasi) -> Self {
        let kind = match which {
            Quasi::K1 => KernelKind::QuasiK1,
            Quasi::K2 => KernelKind::QuasiK2,
        };
        KernelSpec { kind, tol: DEFAULT_TOL }
    }

    /// Requires `m ≥ 1`, `0 < h ≤ 1` and `mh < 1`.
    pub fn steklov(m: u32, h: f64) -> Result<Self> {
        check_steklov(m, h)?;
        if m as f64 * h >= 1.0 {
            return Err(Error::invalid("h", format!("need m·h < 1, got m = {m}, h = {h}")));
        }
        Ok(KernelSpec { kind: KernelKind::Steklov { m, h }, tol: DEFAULT_TOL })
    }

    /// Same kernel with a different series-truncation tolerance.
    pub fn with_tol(self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::invalid("tol", "must be positive"));
        }
        Ok(KernelSpec { tol, ..self })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            KernelKind::Bernoulli(r) if r % 2 == 1 => Parity::Odd,
            KernelKind::Bernoulli(_) => Parity::Even,
            KernelKind::QuasiK1 => Parity::Odd,
            KernelKind::QuasiK2 | KernelKind::Steklov { .. } => Parity::Even,
        }
    }

    pub fn fourier_coef(&self, k: i64) -> Complex64 {
        match self.kind {
            KernelKind::Bernoulli(r) => bernoulli_coef_unchecked(r, k),
            KernelKind::QuasiK1 => quasi_coef(Quasi::K1, k),
            KernelKind::QuasiK2 => quasi_coef(Quasi::K2, k),
            KernelKind::Steklov { m, h } => Complex64::new(steklov_coef_unchecked(m, h, k), 0.0),
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        match self.kind {
            KernelKind::Bernoulli(r) => bernoulli_eval_unchecked(r, theta, self.tol),
            KernelKind::QuasiK1 => quasi_eval(Quasi::K1, theta),
            KernelKind::QuasiK2 => quasi_eval(Quasi::K2, theta),
            KernelKind::Steklov { m, h } => steklov_eval_unchecked(m, h, theta, self.tol),
        }
    }

    /// Jump discontinuities in `[0, 2π)` with their sizes `f(θ⁺) − f(θ⁻)`.
    pub fn jumps(&self) -> Vec<Jump> {
        match self.kind {
            KernelKind::Bernoulli(1) | KernelKind::QuasiK1 => vec![Jump { at: 0.0, size: Some(TAU) }],
            KernelKind::Steklov { m: 1, h } => vec![
                Jump { at: wrap_angle(-PI * h), size: Some(1.0 / h) },
                Jump { at: wrap_angle(PI * h), size: Some(-1.0 / h) },
            ],
            _ => Vec::new(),
        }
    }

    /// Points in `[0, 2π)` where the kernel is continuous but not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        match self.kind {
            KernelKind::Bernoulli(r) if r >= 2 => vec![0.0],
            KernelKind::QuasiK2 => vec![0.0],
            KernelKind::Steklov { m, h } if m >= 2 => {
                (0..=m).map(|p| wrap_angle((2.0 * p as f64 - m as f64) * PI * h)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// The kernel as a [`PeriodicFn`] carrying its singular points and
    /// closed-form coefficients.
    pub fn to_periodic(&self) -> PeriodicFn {
        let me = *self;
        let mut f = PeriodicFn::new(move |t| me.eval(t)).with_coefficients(move |k| me.fourier_coef(k));
        for j in self.jumps() {
            f = f.with_jump(j.at, j.size.unwrap_or(0.0));
        }
        for k in self.kinks() {
            f = f.with_kink(k);
        }
        f
    }
}

fn check_steklov(m: u32, h: f64) -> Result<()> {
    if m < 1 {
        return Err(Error::invalid("m", "Steklov kernels need m >= 1"));
    }
    if !(h > 0.0 && h <= 1.0) {
        return Err(Error::invalid("h", format!("need 0 < h <= 1, got {h}")));
    }
    Ok(())
}

/// `i^{-r}`.
fn i_pow_neg(r: u32) -> Complex64 {
    match r % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `𝓑̂_r(k) = 1/(ik)^r` for `k ≠ 0`, and `0` at `k = 0`.
pub fn bernoulli_coef(r: u32, k: i64) -> Result<Complex64> {
    if r < 1 {
        return Err(Error::invalid("r", "Bernoulli kernels need r >= 1"));
    }
    Ok(bernoulli_coef_unchecked(r, k))
}

fn bernoulli_coef_unchecked(r: u32, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(0.0, 0.0);
    }
    i_pow_neg(r) * (k as f64).powi(-(r as i32))
}

/// `β_j` of the closed form `𝓑_r(θ) = −Σ_{j=0}^{r} β_j θ^{r−j}/(r−j)!` on
/// `[0, 2π)`: `β₀ = 1`, `β₁ = −π`, odd `β_j = 0` for `j ≥ 3`, and
/// `β_{2n} = (−1)^{n+1} 2ζ(2n)` with `2ζ(2n) = (π/2)K_{2n−1}/(1 − 4^{−n})`.
fn beta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=64usize)
            .map(|j| match j {
                0 => 1.0,
                1 => -PI,
                j if j % 2 == 1 => 0.0,
                j => {
                    let n = j / 2;
                    let two_zeta = PI / 2.0 * favard_value(j - 1) / (1.0 - 0.25f64.powi(n as i32));
                    if n % 2 == 1 {
                        two_zeta
                    } else {
                        -two_zeta
                    }
                }
            })
            .collect()
    })
}

/// Closed-form `𝓑_r(θ)` for `θ ∈ [0, π]`, `2 ≤ r ≤ 64`.
fn bernoulli_poly(r: u32, theta: f64) -> f64 {
    let beta = beta_table();
    let r = r as usize;
    // Σ_j β_j θ^{r−j}/(r−j)!, accumulated from the constant term upward
    let mut term = 1.0; // θ^i / i!
    let mut acc = beta[r];
    for i in 1..=r {
        term *= theta / i as f64;
        acc += beta[r - i] * term;
    }
    -acc
}

/// Smallest `K` with `2K^{1−r}/(r−1) ≤ tol`, for `r ≥ 2`.
pub fn bernoulli_truncation(r: u32, tol: f64) -> usize {
    let rm1 = (r - 1) as f64;
    let k = (2.0 / (rm1 * tol)).powf(1.0 / rm1).ceil();
    let mut k = if k.is_finite() { (k as usize).max(1) } else { usize::MAX };
    // guard against powf rounding in either direction
    while k > 1 && 2.0 * ((k - 1) as f64).powf(-rm1) * (k - 1) as f64 / rm1 <= tol {
        k -= 1;
    }
    k
}

/// `Σ_{k=from}^{to} 2 Re(e^{ikθ}/(ik)^r)`, summed from the small terms up.
fn bernoulli_partial(r: u32, theta: f64, from: usize, to: usize) -> f64 {
    let c = i_pow_neg(r);
    let mut acc = 0.0;
    for k in (from..=to).rev() {
        let kf = k as f64;
        let (s, co) = (kf * theta).sin_cos();
        // Re(c·e^{ikθ}) with c ∈ {±1, ±i}
        let v = c.re * co - c.im * s;
        acc += 2.0 * v * kf.powi(-(r as i32));
    }
    acc
}

/// `𝓑_r(θ)`. For `r = 1` the closed form `π − θ` (0 at the jump); for
/// `r ≥ 2` the partial sum to the smallest `K` with `2K^{1−r}/(r−1) ≤ tol`,
/// or the exact Bernoulli polynomial when that `K` exceeds 64 terms.
pub fn bernoulli_eval(r: u32, theta: f64, tol: f64) -> Result<f64> {
    if r < 1 {
        return Err(Error::invalid("r", "Bernoulli kernels need r >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    Ok(bernoulli_eval_unchecked(r, theta, tol))
}

fn bernoulli_eval_unchecked(r: u32, theta: f64, tol: f64) -> f64 {
    if r == 1 {
        return sawtooth(theta);
    }
    let k = bernoulli_truncation(r, tol);
    if k <= MAX_SERIES_TERMS || r > 64 {
        return bernoulli_partial(r, theta, 1, k.min(1 << 20));
    }
    // reflect into [0, π] using 𝓑_r(−θ) = (−1)^r 𝓑_r(θ)
    let t = wrap_angle(theta);
    if t <= PI {
        bernoulli_poly(r, t)
    } else {
        let v = bernoulli_poly(r, TAU - t);
        if r.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }
}

/// `𝓑_r(θ) − S_N(𝓑_r, θ)`, the part of the series above frequency `N`.
///
/// For `r ≥ 12` the tail is summed directly, which keeps its relative
/// accuracy when it is tiny; below that the difference of the full value and
/// the partial sum is used.
pub fn bernoulli_tail(r: u32, n: usize, theta: f64) -> Result<f64> {
    if r < 1 {
        return Err(Error::invalid("r", "Bernoulli kernels need r >= 1"));
    }
    if r >= 12 {
        let rm1 = (r - 1) as f64;
        let n1 = (n + 1) as f64;
        // 2 Σ_{k>K} k^{-r} ≤ 2K^{1−r}/(r−1) ≤ 1e-17·(N+1)^{-r}
        let k = n1 * (2.0 * n1 / (1e-17 * rm1)).powf(1.0 / rm1);
        let k = (k.ceil() as usize).max(n + 1);
        return Ok(bernoulli_partial(r, theta, n + 1, k));
    }
    let full = bernoulli_eval_unchecked(r, theta, 1e-16);
    Ok(full - bernoulli_partial(r, theta, 1, n))
}

/// Closed-form Fourier coefficients of `𝓚₁`, `𝓚₂`.
pub fn quasi_coef(which: Quasi, k: i64) -> Complex64 {
    let kf = k as f64;
    match which {
        Quasi::K1 => match k {
            0 => Complex64::new(0.0, 0.0),
            1 => Complex64::new(0.0, -0.25),
            -1 => Complex64::new(0.0, 0.25),
            // k / ((k²−1) i)
            _ => Complex64::new(0.0, -kf / (kf * kf - 1.0)),
        },
        Quasi::K2 => match k {
            0 => Complex64::new(1.0, 0.0),
            1 | -1 => Complex64::new(0.25, 0.0),
            _ => Complex64::new(-1.0 / (kf * kf - 1.0), 0.0),
        },
    }
}

/// `𝓑₁(θ)·cos θ` or `𝓑₁(θ)·sin θ`, with `𝓑₁(0) = 0`.
pub fn quasi_eval(which: Quasi, theta: f64) -> f64 {
    let b = sawtooth(theta);
    match which {
        Quasi::K1 => b * theta.cos(),
        Quasi::K2 => b * theta.sin(),
    }
}

/// `χ̂_h^m(k) = (sin πhk / πhk)^m`, `1` at `k = 0`.
pub fn steklov_coef(m: u32, h: f64, k: i64) -> Result<f64> {
    check_steklov(m, h)?;
    Ok(steklov_coef_unchecked(m, h, k))
}

fn steklov_coef_unchecked(m: u32, h: f64, k: i64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let x = PI * h * k as f64;
    (x.sin() / x).powi(m as i32)
}

fn binomial(m: u32, p: u32) -> f64 {
    (0..p).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// `χ_h^m(θ) = 1 + (2πh)^{−m} Σ_p (−1)^{m−p} C(m,p) 𝓑_m(θ + (2p−m)πh)`,
/// each Bernoulli term evaluated to `tol/2^m`.
pub fn steklov_eval(m: u32, h: f64, theta: f64, tol: f64) -> Result<f64> {
    check_steklov(m, h)?;
    if m as f64 * h >= 1.0 {
        return Err(Error::invalid("h", format!("need m·h < 1, got m = {m}, h = {h}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    Ok(steklov_eval_unchecked(m, h, theta, tol))
}

fn steklov_eval_unchecked(m: u32, h: f64, theta: f64, tol: f64) -> f64 {
    let term_tol = tol / 2f64.powi(m as i32);
    let mut acc = 0.0;
    for p in 0..=m {
        let sign = if (m - p).is_multiple_of(2) { 1.0 } else { -1.0 };
        let shift = (2.0 * p as f64 - m as f64) * PI * h;
        acc += sign * binomial(m, p) * bernoulli_eval_unchecked(m, theta + shift, term_tol);
    }
    1.0 + acc / (TAU * h).powi(m as i32)
}
