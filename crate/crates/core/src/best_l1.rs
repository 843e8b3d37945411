//! Best L¹ approximation by trigonometric polynomials of degree `n − 1`.
//!
//! Upper bounds come from an explicit candidate (the interpolant at the sign
//! nodes of the parity-matched pattern), lower bounds from duality with
//! `sgn sin nθ` or `sgn cos nθ`, computed analytically from the kernel's
//! Fourier coefficients.

use std::f64::consts::{FRAC_2_PI, PI, TAU};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_integer::Integer;

use crate::exec;
use crate::favard::{favard_series, favard_value, MAX_EXACT_ORDER};
use crate::fourier_core::{l1_norm, TrigPoly};
use crate::kernels::{KernelKind, KernelSpec, Parity, Quasi};
use crate::tail::{power_tail, smooth_tail};
use crate::{Error, Result};

/// Base grid used by [`certify`] and [`steklov_best`] for L¹ norms.
pub const DEFAULT_GRID: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    /// `sgn sin nθ`
    SinN,
    /// `sgn cos nθ`
    CosN,
}

/// A duality test function `±sgn sin nθ` or `±sgn cos nθ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignPattern {
    pub kind: PatternKind,
    pub n: usize,
    pub flipped: bool,
}

impl SignPattern {
    pub fn new(kind: PatternKind, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("n", "sign patterns need n >= 1"));
        }
        Ok(SignPattern { kind, n, flipped: false })
    }

    pub fn flip(self) -> Self {
        SignPattern { flipped: !self.flipped, ..self }
    }

    fn sign(&self) -> f64 {
        if self.flipped {
            -1.0
        } else {
            1.0
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let x = self.n as f64 * theta;
        let v = match self.kind {
            PatternKind::SinN => x.sin(),
            PatternKind::CosN => x.cos(),
        };
        if v == 0.0 {
            0.0
        } else {
            self.sign() * v.signum()
        }
    }

    /// `σ̂(j)`: nonzero only at `j = kn` with `k` odd, where it is
    /// `2/(πik)` for `SinN` and `(2/π)(−1)^{(|k|−1)/2}/|k|` for `CosN`.
    pub fn coef(&self, j: i64) -> Complex64 {
        let n = self.n as i64;
        if j % n != 0 || (j / n) % 2 == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let k = j / n;
        let c = match self.kind {
            PatternKind::SinN => Complex64::new(0.0, -FRAC_2_PI / k as f64),
            PatternKind::CosN => {
                let a = k.unsigned_abs();
                let eps = if (a / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                Complex64::new(FRAC_2_PI * eps / a as f64, 0.0)
            }
        };
        c * self.sign()
    }

    /// `(1/2π)∫ p·σ = Σ_j p̂(j)·conj(σ̂(j))`, exact from the coefficient supports.
    pub fn pair(&self, p: &TrigPoly) -> Complex64 {
        p.iter().map(|(j, c)| c * self.coef(j).conj()).sum()
    }
}

/// A duality lower bound with the error of its series tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualBound {
    /// `(1/2π)∫ K·σ`, signed.
    pub pairing: f64,
    pub error: f64,
}

impl DualBound {
    /// `|pairing|`, the lower bound for `E_{n−1}(K)`.
    pub fn value(&self) -> f64 {
        self.pairing.abs()
    }
}

/// Shape of the smooth factor of the pair terms in the tail.
#[derive(Clone)]
enum TailShape {
    /// `scale · x^{−s}`
    Power { scale: f64, s: f64 },
    Smooth(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// For large odd `k`, the pair term `a(k) = (4/π)·Re[w_k·K̂(kn)]/k` equals
/// `C_{k mod P} · g(k)`, where `K̂(kn) = φ(k)·unit·ψ(kn)` with `ψ` real and
/// smooth, `φ` periodic in `k`, and `w_k` the conjugated pattern weight.
struct TailModel {
    unit: Complex64,
    phi_period: i64,
    phi: Box<dyn Fn(i64) -> f64 + Send + Sync>,
    shape: TailShape,
}

/// `a/b` with `b ≤ max_den` when `x` is that rational to within rounding.
fn rational(x: f64, max_den: i64) -> Option<(i64, i64)> {
    (1..=max_den).find_map(|b| {
        let a = (x * b as f64).round();
        ((x * b as f64 - a).abs() <= 1e-10 * b as f64).then_some((a as i64, b))
    })
}

fn tail_model(kernel: &KernelSpec, n: usize) -> Option<TailModel> {
    let nf = n as f64;
    let one = |_k: i64| 1.0;
    Some(match kernel.kind() {
        KernelKind::Bernoulli(r) => TailModel {
            unit: kernel.fourier_coef(1),
            phi_period: 1,
            phi: Box::new(one),
            shape: TailShape::Power { scale: nf.powi(-(r as i32)), s: r as f64 + 1.0 },
        },
        // K̂₁(x) = −i·x/(x²−1), divided by k: n/(k²n²−1)
        KernelKind::QuasiK1 => TailModel {
            unit: Complex64::new(0.0, -1.0),
            phi_period: 1,
            phi: Box::new(one),
            shape: TailShape::Smooth(Arc::new(move |x| nf / (x * x * nf * nf - 1.0))),
        },
        // K̂₂(x) = −1/(x²−1), divided by k
        KernelKind::QuasiK2 => TailModel {
            unit: Complex64::new(-1.0, 0.0),
            phi_period: 1,
            phi: Box::new(one),
            shape: TailShape::Smooth(Arc::new(move |x| 1.0 / (x * (x * x * nf * nf - 1.0)))),
        },
        // χ̂(kn) = sin^m(πhnk)·(πhnk)^{−m}, and sin(πhnk) is periodic in k
        // when hn = a/b is rational
        KernelKind::Steklov { m, h } => {
            let (a, b) = rational(h * nf, 256)?;
            TailModel {
                unit: Complex64::new(1.0, 0.0),
                phi_period: 2 * b,
                phi: Box::new(move |k| {
                    let r = (a * k).rem_euclid(2 * b);
                    (PI * r as f64 / b as f64).sin().powi(m as i32)
                }),
                shape: TailShape::Power { scale: (PI * h * nf).powi(-(m as i32)), s: m as f64 + 1.0 },
            }
        }
    })
}

fn pattern_weight(kind: PatternKind, k: i64) -> Complex64 {
    match kind {
        PatternKind::SinN => Complex64::new(0.0, 1.0),
        PatternKind::CosN => {
            if (k / 2) % 2 == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            }
        }
    }
}

/// Pair term for the odd frequencies `±k`: `(4/π)·Re[w_k·K̂(kn)]/k`.
fn pair_term(kernel: &KernelSpec, kind: PatternKind, n: usize, k: i64) -> f64 {
    let c = kernel.fourier_coef(k * n as i64);
    4.0 / PI * (pattern_weight(kind, k) * c).re / k as f64
}

/// Sum of pair terms over odd `k < limit`.
fn direct_sum(kernel: &KernelSpec, kind: PatternKind, n: usize, limit: i64) -> f64 {
    let count = (limit / 2).max(0) as usize;
    exec::sum_indices(count, |j| pair_term(kernel, kind, n, 2 * j as i64 + 1))
}

/// Lower bound with its tail error, without enforcing a tolerance.
///
/// The pair terms over odd `k` are summed directly up to a cutoff; beyond it
/// each residue class of `k` modulo the period of the pattern weights is a
/// smooth series, summed by Euler–Maclaurin. Steklov kernels with `hn` not a
/// small-denominator rational fall back to direct summation with the
/// majorant `(4/π)(πhn)^{−m}(K−2)^{−m}/(2m)` as the error.
pub fn dual_bound(kernel: &KernelSpec, n: usize, pattern: &SignPattern, tol: f64) -> Result<DualBound> {
    if pattern.n != n {
        return Err(Error::invalid("pattern", format!("pattern index {} differs from n = {n}", pattern.n)));
    }
    if n < 1 {
        return Err(Error::invalid("n", "need n >= 1"));
    }
    if matches!(kernel.kind(), KernelKind::QuasiK1 | KernelKind::QuasiK2) && n < 2 {
        return Err(Error::invalid("n", "quasi kernels need n >= 2"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let kind = pattern.kind;
    let sign = pattern.sign();

    let Some(model) = tail_model(kernel, n) else {
        let KernelKind::Steklov { m, h } = kernel.kind() else { unreachable!() };
        let bound = |k: i64| 4.0 / PI * (PI * h * n as f64).powi(-(m as i32)) * ((k - 2) as f64).powi(-(m as i32)) / (2.0 * m as f64);
        let mut limit: i64 = 1 << 16;
        while bound(limit) > tol && limit < 1 << 24 {
            limit *= 2;
        }
        let s = direct_sum(kernel, kind, n, limit);
        return Ok(DualBound { pairing: sign * s, error: bound(limit) });
    };

    let period = model.phi_period.lcm(&4);
    let mut q = (4096 / period).max(256);
    loop {
        let start = q * period;
        let mut tail = 0.0;
        let mut err = 0.0;
        for c in (1..period).step_by(2) {
            let coef = 4.0 / PI * (pattern_weight(kind, c) * model.unit).re * (model.phi)(c);
            if coef == 0.0 {
                continue;
            }
            let x0 = (start + c) as f64;
            let t = match &model.shape {
                TailShape::Power { scale, s } => power_tail(coef * scale, *s, x0, period as f64),
                TailShape::Smooth(g) => {
                    let t = smooth_tail(|x| g(x), x0, period as f64);
                    crate::tail::TailSum { value: coef * t.value, error: coef.abs() * t.error }
                }
            };
            tail += t.value;
            err += t.error;
        }
        if err <= tol || q >= 1 << 22 {
            let s = direct_sum(kernel, kind, n, start) + tail;
            return Ok(DualBound { pairing: sign * s, error: err });
        }
        q *= 4;
    }
}

/// `|(1/2π)∫ K·σ|`, a lower bound for `E_{n−1}(K)_{L¹}`, with series tail
/// error at most `tol`.
pub fn dual_lower(kernel: &KernelSpec, n: usize, pattern: &SignPattern, tol: f64) -> Result<f64> {
    let d = dual_bound(kernel, n, pattern, tol)?;
    if d.error > tol {
        return Err(Error::TailBound { bound: d.error, tol });
    }
    Ok(d.value())
}

/// The known value of `E_{n−1}(K)_{L¹}`: `K_r/n^r`, `tan(π/2n)` or
/// `sec(π/2n) − 1`; `None` for Steklov kernels and out-of-range `n`.
pub fn closed_form_value(kernel: &KernelSpec, n: usize) -> Option<f64> {
    let nf = n as f64;
    match kernel.kind() {
        KernelKind::Bernoulli(r) if n >= 1 => {
            let kr = if r as usize <= MAX_EXACT_ORDER {
                favard_value(r as usize)
            } else {
                favard_series(r as usize, 1e-15).ok()?
            };
            Some(kr / nf.powi(r as i32))
        }
        KernelKind::QuasiK1 if n >= 2 => Some((PI / (2.0 * nf)).tan()),
        KernelKind::QuasiK2 if n >= 2 => Some(1.0 / (PI / (2.0 * nf)).cos() - 1.0),
        _ => None,
    }
}

/// The interpolant at the sign nodes of the parity-matched pattern.
///
/// Odd kernels: `Σ_{j=1}^{n−1} b_j sin jθ` through `θ = kπ/n`,
/// `k = 1..n−1`. Even kernels: `Σ_{j=0}^{n−1} a_j cos jθ` through
/// `θ = (2k+1)π/(2n)`, `k = 0..n−1`.
pub fn best_poly_candidate(kernel: &KernelSpec, n: usize) -> Result<TrigPoly> {
    if n < 2 {
        return Err(Error::invalid("n", "need n >= 2"));
    }
    interpolant(kernel, n)
}

fn interpolant(kernel: &KernelSpec, n: usize) -> Result<TrigPoly> {
    let nf = n as f64;
    match kernel.parity() {
        Parity::Odd => {
            let d = n - 1;
            if d == 0 {
                return Ok(TrigPoly::zero(0));
            }
            let nodes: Vec<f64> = (1..=d).map(|k| k as f64 * PI / nf).collect();
            let a = DMatrix::from_fn(d, d, |i, j| ((j + 1) as f64 * nodes[i]).sin());
            let y = DVector::from_iterator(d, nodes.iter().map(|&t| kernel.eval(t)));
            let b = a.lu().solve(&y).ok_or(Error::SingularSystem { n })?;
            Ok(TrigPoly::sine_series(b.as_slice()))
        }
        Parity::Even => {
            let nodes: Vec<f64> = (0..n).map(|k| (2 * k + 1) as f64 * PI / (2.0 * nf)).collect();
            let a = DMatrix::from_fn(n, n, |i, j| (j as f64 * nodes[i]).cos());
            let y = DVector::from_iterator(n, nodes.iter().map(|&t| kernel.eval(t)));
            let c = a.lu().solve(&y).ok_or(Error::SingularSystem { n })?;
            Ok(TrigPoly::cosine_series(c.as_slice()))
        }
        Parity::None => Err(Error::invalid("kernel", "interpolation needs a kernel with parity")),
    }
}

/// The sandwich `lower ≤ E_{n−1}(K)_{L¹} ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub kernel: KernelSpec,
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    /// Series-tail error of `lower`.
    pub lower_err: f64,
    /// Quadrature error estimate of `upper`.
    pub upper_err: f64,
    pub pattern: SignPattern,
    pub candidate: TrigPoly,
    pub closed_form: Option<f64>,
}

impl Certificate {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

fn matched_pattern(kernel: &KernelSpec, n: usize) -> Result<SignPattern> {
    match kernel.parity() {
        Parity::Odd => SignPattern::new(PatternKind::SinN, n),
        Parity::Even => SignPattern::new(PatternKind::CosN, n),
        Parity::None => Err(Error::invalid("kernel", "certification needs a kernel with parity")),
    }
}

/// Certify `E_{n−1}(K)_{L¹}` on the default grid; see [`certify_with_grid`].
pub fn certify(kernel: &KernelSpec, n: usize, tol: f64) -> Result<Certificate> {
    certify_with_grid(kernel, n, tol, DEFAULT_GRID)
}

/// Upper bound: refined L¹ norm of `K − candidate`. Lower bound: duality
/// with the parity-matched pattern, oriented so the pairing is positive.
/// Fails with [`Error::GapExceeded`] when `upper − lower > tol`.
pub fn certify_with_grid(kernel: &KernelSpec, n: usize, tol: f64, grid: usize) -> Result<Certificate> {
    if n < 2 {
        return Err(Error::invalid("n", "need n >= 2"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let candidate = best_poly_candidate(kernel, n)?;
    let upper = l1_norm(&kernel.to_periodic().sub_trig(&candidate), grid, true)?;
    let mut pattern = matched_pattern(kernel, n)?;
    let dual = dual_bound(kernel, n, &pattern, 1e-14)?;
    if dual.pairing < 0.0 {
        pattern = pattern.flip();
    }
    let cert = Certificate {
        kernel: *kernel,
        n,
        lower: dual.value(),
        upper: upper.value,
        lower_err: dual.error,
        upper_err: upper.err_estimate,
        pattern,
        candidate,
        closed_form: closed_form_value(kernel, n),
    };
    if cert.gap() > tol {
        return Err(Error::GapExceeded { certificate: Box::new(cert), tol });
    }
    Ok(cert)
}

/// Whether `sgn(K − τ)` equals the pattern at the `M` cell midpoints
/// `θ_j = (j + 1/2)·2π/M`. Points where `|K − τ| ≤ 1e−13` are skipped.
pub fn sign_agreement(kernel: &KernelSpec, candidate: &TrigPoly, pattern: &SignPattern, grid: usize) -> bool {
    let bad = exec::map_indices(grid, |j| {
        let t = (j as f64 + 0.5) * TAU / grid as f64;
        let d = kernel.eval(t) - candidate.eval_re(t);
        let s = pattern.eval(t);
        d.abs() > 1e-13 && s != 0.0 && d.signum() != s
    });
    !bad.into_iter().any(|b| b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteklovRegime {
    /// `h ≤ 1/(2mn)`: `E_{n−1}(χ) = 1`.
    Flat,
    /// `2nh` an odd integer: `E_{n−1}(χ) = K_m/(πhn)^m`.
    Exact,
    /// Otherwise; `K_m/(πhn)^m` is only an upper bound.
    Bound,
}

impl std::fmt::Display for SteklovRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SteklovRegime::Flat => "FLAT",
            SteklovRegime::Exact => "EXACT",
            SteklovRegime::Bound => "BOUND",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteklovBest {
    pub regime: SteklovRegime,
    /// `1`, the exact value, or the regime's upper bound `K_m/(πhn)^m`.
    pub value: f64,
    pub certified: bool,
    /// Numerical sandwich from duality and the best candidate found.
    pub lower: f64,
    pub upper: f64,
    pub candidate: TrigPoly,
}

/// Classify `(m, h, n)` into the three regimes, checked in the order
/// EXACT, FLAT, BOUND. The first two overlap only at `m = 1`, `h = 1/(2n)`,
/// where both give the value 1.
pub fn steklov_regime(m: u32, h: f64, n: usize) -> SteklovRegime {
    let nf = n as f64;
    let two_nh = 2.0 * nf * h;
    let odd = two_nh.round();
    if (two_nh - odd).abs() <= 1e-9 && odd % 2.0 == 1.0 && (m as f64) * h < 1.0 {
        SteklovRegime::Exact
    } else if h <= (1.0 + 1e-12) / (2.0 * m as f64 * nf) {
        SteklovRegime::Flat
    } else {
        SteklovRegime::Bound
    }
}

/// `1 + (2πh)^{−m} Σ_p (−1)^{m−p} C(m,p) τ(𝓑_m)(θ + (2p−m)πh)`, the image
/// of the Bernoulli interpolant under the representation of `χ_h^m`.
fn steklov_shifted_candidate(m: u32, h: f64, n: usize) -> Result<TrigPoly> {
    let tau = interpolant(&KernelSpec::bernoulli(m)?, n)?;
    let scale = (TAU * h).powi(-(m as i32));
    let mut acc = TrigPoly::constant(1.0);
    let mut binom = 1.0;
    for p in 0..=m {
        let sign = if (m - p).is_multiple_of(2) { 1.0 } else { -1.0 };
        let shift = (2.0 * p as f64 - m as f64) * PI * h;
        acc = acc.add(&tau.shifted(shift).scale(Complex64::new(sign * binom * scale, 0.0)));
        binom = binom * (m - p) as f64 / (p + 1) as f64;
    }
    Ok(acc)
}

/// Best approximation of `χ_h^m` by `T_{n−1}` in the three regimes.
///
/// The reported sandwich uses duality with `sgn cos nθ` for the lower bound
/// and, for the upper bound, the best of the zero polynomial, the shifted
/// Bernoulli interpolant and the direct cosine-node interpolant. The result
/// is certified in the FLAT and EXACT regimes when the sandwich closes on
/// the regime value within `tol`.
pub fn steklov_best(m: u32, h: f64, n: usize, tol: f64) -> Result<SteklovBest> {
    if n < 1 {
        return Err(Error::invalid("n", "need n >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let kernel = KernelSpec::steklov(m, h)?;
    let regime = steklov_regime(m, h, n);
    let km = if (m as usize) <= MAX_EXACT_ORDER { favard_value(m as usize) } else { favard_series(m as usize, 1e-15)? };
    let favard_bound = km / (PI * h * n as f64).powi(m as i32);
    let value = match regime {
        SteklovRegime::Flat => 1.0,
        _ => favard_bound,
    };

    let f = kernel.to_periodic();
    let mut best: Option<(f64, TrigPoly)> = None;
    let zero = TrigPoly::zero(0);
    let mut options = vec![zero];
    options.push(steklov_shifted_candidate(m, h, n)?);
    options.push(interpolant(&kernel, n)?);
    for cand in options {
        let u = l1_norm(&f.sub_trig(&cand), DEFAULT_GRID, true)?.value;
        if best.as_ref().is_none_or(|(b, _)| u < *b) {
            best = Some((u, cand));
        }
    }
    let (upper, candidate) = best.expect("at least one candidate");

    let pattern = SignPattern::new(PatternKind::CosN, n)?;
    let dual = dual_bound(&kernel, n, &pattern, 1e-14)?;
    // allowance for rounding in the pairing sum, so that `lower ≤ upper`
    // still holds when the candidate is optimal
    let lower = dual.value() - dual.error - 16.0 * f64::EPSILON * dual.value().abs().max(1.0);

    let certified = regime != SteklovRegime::Bound
        && upper - lower <= tol
        && (lower - value).abs() <= tol
        && (upper - value).abs() <= tol;
    Ok(SteklovBest { regime, value, certified, lower, upper, candidate })
}

/// Best-approximation polynomial of `𝓚₁` or `𝓚₂` assembled from the golden
/// formulas and the Bernoulli interpolants, with the bound on the omitted
/// terms.
#[derive(Debug, Clone, PartialEq)]
pub struct TauSeries {
    pub poly: TrigPoly,
    pub truncation_bound: f64,
}

/// `τ(𝓚₁) = ½ sin θ + Σ_{r=0}^{R} ((−1)^r τ(𝓑_{2r+1}) − 2 sin θ)` and
/// `τ(𝓚₂) = 1 + ½ cos θ + Σ_{r=1}^{R} ((−1)^{r+1} τ(𝓑_{2r}) + 2 cos θ)`.
pub fn quasi_tau_series(which: Quasi, n: usize, terms: usize) -> Result<TauSeries> {
    if n < 2 {
        return Err(Error::invalid("n", "need n >= 2"));
    }
    if terms < 1 {
        return Err(Error::invalid("terms", "need R >= 1"));
    }
    let nf = n as f64;
    let (mut poly, orders): (TrigPoly, Vec<(u32, f64)>) = match which {
        Quasi::K1 => (
            TrigPoly::sine_series(&[0.5]),
            (0..=terms).map(|r| (2 * r as u32 + 1, if r % 2 == 0 { 1.0 } else { -1.0 })).collect(),
        ),
        Quasi::K2 => (
            TrigPoly::cosine_series(&[1.0, 0.5]),
            (1..=terms).map(|r| (2 * r as u32, if r % 2 == 1 { 1.0 } else { -1.0 })).collect(),
        ),
    };
    let low = match which {
        Quasi::K1 => TrigPoly::sine_series(&[2.0]),
        Quasi::K2 => TrigPoly::cosine_series(&[0.0, 2.0]),
    };
    for (r, c) in orders {
        let tau = interpolant(&KernelSpec::bernoulli(r)?, n)?;
        let piece = match which {
            Quasi::K1 => tau.scale(Complex64::new(c, 0.0)).sub(&low),
            Quasi::K2 => tau.scale(Complex64::new(c, 0.0)).add(&low),
        };
        poly = poly.add(&piece);
    }
    // Σ (K_r/n^r + 6·2^{−r}) over the omitted orders r (step 2), with K_r ≤ K_1 = π/2
    let first_omitted = match which {
        Quasi::K1 => 2 * terms + 3,
        Quasi::K2 => 2 * terms + 2,
    } as i32;
    let geometric = |q: f64| q.powi(first_omitted) / (1.0 - q * q);
    let truncation_bound = (PI / 2.0) * geometric(1.0 / nf) + 6.0 * geometric(0.5);
    Ok(TauSeries { poly, truncation_bound })
}
