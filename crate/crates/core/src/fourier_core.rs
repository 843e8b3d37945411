//! Periodic-analysis toolkit on `𝕋 = ℝ / 2πℤ` with the normalized measure
//! `dθ / 2π`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::exec;
use crate::tail::gauss;
use crate::{Error, Result};

/// Largest imaginary part, relative to `max(1, Σ|c_k|)`, that [`TrigPoly::eval`]
/// silently discards.
pub const IMAG_RESIDUE_TOL: f64 = 1e-12;

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// The sawtooth `π − θ` on `(0, 2π)`, with the jump midpoint `0` at `θ = 0`.
pub fn sawtooth(theta: f64) -> f64 {
    let t = wrap_angle(theta);
    if t == 0.0 {
        0.0
    } else {
        PI - t
    }
}

/// A trigonometric polynomial `Σ_{|k| ≤ degree} c_k e^{ikθ}`.
#[derive(Clone, PartialEq)]
pub struct TrigPoly {
    degree: usize,
    // c_k stored at index k + degree
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for k in -(self.degree as i64)..=self.degree as i64 {
            let c = self.coeff(k);
            if c != Complex64::new(0.0, 0.0) {
                m.entry(&k, &c);
            }
        }
        m.finish()
    }
}

impl TrigPoly {
    pub fn zero(degree: usize) -> Self {
        TrigPoly { degree, coeffs: vec![Complex64::new(0.0, 0.0); 2 * degree + 1] }
    }

    pub fn constant(c: f64) -> Self {
        TrigPoly { degree: 0, coeffs: vec![Complex64::new(c, 0.0)] }
    }

    /// Build from `(k, c_k)` pairs; the degree is the largest `|k|` present.
    pub fn from_pairs<I: IntoIterator<Item = (i64, Complex64)>>(pairs: I) -> Self {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let degree = pairs.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut p = TrigPoly::zero(degree);
        for (k, c) in pairs {
            p.coeffs[(k + degree as i64) as usize] += c;
        }
        p
    }

    /// `Σ_{j=1}^{len} b_j sin jθ` with `b_j = b[j-1]`.
    pub fn sine_series(b: &[f64]) -> Self {
        let mut p = TrigPoly::zero(b.len());
        for (j, &bj) in b.iter().enumerate() {
            let k = j as i64 + 1;
            // b sin kθ = (b / 2i) e^{ikθ} − (b / 2i) e^{−ikθ}
            let c = Complex64::new(0.0, -0.5 * bj);
            p.set_coeff(k, c);
            p.set_coeff(-k, -c);
        }
        p
    }

    /// `Σ_{j=0}^{len-1} a_j cos jθ`.
    pub fn cosine_series(a: &[f64]) -> Self {
        let degree = a.len().saturating_sub(1);
        let mut p = TrigPoly::zero(degree);
        for (j, &aj) in a.iter().enumerate() {
            if j == 0 {
                p.set_coeff(0, Complex64::new(aj, 0.0));
            } else {
                let c = Complex64::new(0.5 * aj, 0.0);
                p.set_coeff(j as i64, c);
                p.set_coeff(-(j as i64), c);
            }
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `c_k`, zero outside the stored range.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.degree {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + self.degree as i64) as usize]
        }
    }

    /// Panics if `|k|` exceeds the degree.
    pub fn set_coeff(&mut self, k: i64, c: Complex64) {
        assert!(k.unsigned_abs() as usize <= self.degree, "|k| = {} > degree {}", k.abs(), self.degree);
        self.coeffs[(k + self.degree as i64) as usize] = c;
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let d = self.degree as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - d, c))
    }

    /// Whether `c_{-k} = conj(c_k)` for all `k`, within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        (0..=self.degree as i64).all(|k| (self.coeff(-k) - self.coeff(k).conj()).norm() <= tol)
    }

    fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `Σ c_k e^{ikθ}` as a complex number.
    pub fn eval_complex(&self, theta: f64) -> Complex64 {
        let d = self.degree as i64;
        let w = Complex64::from_polar(1.0, theta);
        let winv = w.conj();
        let mut acc = self.coeff(0);
        let mut pos = Complex64::new(1.0, 0.0);
        let mut neg = Complex64::new(1.0, 0.0);
        for k in 1..=d {
            pos *= w;
            neg *= winv;
            acc += self.coeff(k) * pos + self.coeff(-k) * neg;
        }
        acc
    }

    /// Real value at `θ`; fails when the imaginary residue shows the
    /// coefficients are not conjugate-symmetric.
    pub fn eval(&self, theta: f64) -> Result<f64> {
        let z = self.eval_complex(theta);
        let scale = self.abs_sum().max(1.0);
        if z.im.abs() > IMAG_RESIDUE_TOL * scale {
            return Err(Error::ImaginaryResidue { residue: z.im.abs() });
        }
        Ok(z.re)
    }

    /// Real part of the value, for polynomials already known to be real.
    pub fn eval_re(&self, theta: f64) -> f64 {
        self.eval_complex(theta).re
    }

    /// Euclidean norm of the coefficient vector, i.e. the L² norm.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TrigPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    pub fn add(&self, other: &TrigPoly) -> Self {
        let degree = self.degree.max(other.degree);
        let mut p = TrigPoly::zero(degree);
        for k in -(degree as i64)..=degree as i64 {
            p.set_coeff(k, self.coeff(k) + other.coeff(k));
        }
        p
    }

    pub fn sub(&self, other: &TrigPoly) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `θ ↦ p(θ + s)`.
    pub fn shifted(&self, s: f64) -> Self {
        let mut p = self.clone();
        for k in -(self.degree as i64)..=self.degree as i64 {
            p.set_coeff(k, self.coeff(k) * Complex64::from_polar(1.0, k as f64 * s));
        }
        p
    }

    /// `p(θ)·sin θ`, degree raised by one.
    pub fn mul_sin(&self) -> Self {
        let d = self.degree as i64 + 1;
        let mut p = TrigPoly::zero(d as usize);
        let half_i = Complex64::new(0.0, 0.5);
        for k in -d..=d {
            // (c_{k-1} − c_{k+1}) / 2i
            p.set_coeff(k, (self.coeff(k - 1) - self.coeff(k + 1)) * -half_i);
        }
        p
    }

    /// `p(θ)·cos θ`, degree raised by one.
    pub fn mul_cos(&self) -> Self {
        let d = self.degree as i64 + 1;
        let mut p = TrigPoly::zero(d as usize);
        for k in -d..=d {
            p.set_coeff(k, (self.coeff(k - 1) + self.coeff(k + 1)) * 0.5);
        }
        p
    }
}

/// A jump discontinuity. When `size` is `None` the size
/// `f(at⁺) − f(at⁻)` is estimated from one-sided evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub at: f64,
    pub size: Option<f64>,
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type CoefFn = Arc<dyn Fn(i64) -> Complex64 + Send + Sync>;

/// A real 2π-periodic function with its known singular points.
///
/// At a jump the evaluator must return the midpoint of the one-sided limits.
#[derive(Clone)]
pub struct PeriodicFn {
    eval: RealFn,
    jumps: Vec<Jump>,
    kinks: Vec<f64>,
    coef: Option<CoefFn>,
}

impl fmt::Debug for PeriodicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicFn")
            .field("jumps", &self.jumps)
            .field("kinks", &self.kinks)
            .field("closed_form_coefficients", &self.coef.is_some())
            .finish()
    }
}

impl PeriodicFn {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PeriodicFn { eval: Arc::new(f), jumps: Vec::new(), kinks: Vec::new(), coef: None }
    }

    pub fn with_jump(mut self, at: f64, size: f64) -> Self {
        self.jumps.push(Jump { at: wrap_angle(at), size: Some(size) });
        self
    }

    pub fn with_jump_estimated(mut self, at: f64) -> Self {
        self.jumps.push(Jump { at: wrap_angle(at), size: None });
        self
    }

    pub fn with_kink(mut self, at: f64) -> Self {
        self.kinks.push(wrap_angle(at));
        self
    }

    pub fn with_coefficients<C>(mut self, coef: C) -> Self
    where
        C: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        self.coef = Some(Arc::new(coef));
        self
    }

    /// The polynomial as a periodic function, with closed-form coefficients.
    pub fn from_trig(p: &TrigPoly) -> Self {
        let pe = p.clone();
        let pc = p.clone();
        PeriodicFn::new(move |t| pe.eval_re(t)).with_coefficients(move |k| pc.coeff(k))
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.eval)(theta)
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    /// Closed-form `f̂(k)` when one was supplied.
    pub fn coefficient(&self, k: i64) -> Option<Complex64> {
        self.coef.as_ref().map(|c| c(k))
    }

    pub fn has_coefficients(&self) -> bool {
        self.coef.is_some()
    }

    /// `f − p`, keeping singular points and closed-form coefficients.
    pub fn sub_trig(&self, p: &TrigPoly) -> Self {
        let f = self.eval.clone();
        let pe = p.clone();
        let coef = self.coef.clone().map(|c| {
            let pc = p.clone();
            Arc::new(move |k| c(k) - pc.coeff(k)) as CoefFn
        });
        PeriodicFn {
            eval: Arc::new(move |t| f(t) - pe.eval_re(t)),
            jumps: self.jumps.clone(),
            kinks: self.kinks.clone(),
            coef,
        }
    }

    /// `c·f`.
    pub fn scaled(&self, c: f64) -> Self {
        let f = self.eval.clone();
        let coef = self.coef.clone().map(|g| Arc::new(move |k| g(k) * c) as CoefFn);
        PeriodicFn {
            eval: Arc::new(move |t| c * f(t)),
            jumps: self.jumps.iter().map(|j| Jump { at: j.at, size: j.size.map(|s| c * s) }).collect(),
            kinks: self.kinks.clone(),
            coef,
        }
    }

    /// `f(at⁺) − f(at⁻)`, from the stored size or by linear extrapolation of
    /// one-sided samples.
    pub fn jump_size(&self, jump: &Jump) -> f64 {
        if let Some(s) = jump.size {
            return s;
        }
        let d = 1e-6;
        let right = 2.0 * self.eval(jump.at + d) - self.eval(jump.at + 2.0 * d);
        let left = 2.0 * self.eval(jump.at - d) - self.eval(jump.at - 2.0 * d);
        right - left
    }

    /// Jump and kink locations in `[0, 2π)`, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.jumps.iter().map(|j| j.at).chain(self.kinks.iter().copied()).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        pts
    }
}

/// Samples closer than this to a listed jump are treated as on the jump.
const SNAP: f64 = 1e-9;

/// Distance between two angles on the circle.
fn angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

/// Average of the one-sided limits at `t`, each extrapolated linearly.
fn midpoint_value(f: &PeriodicFn, t: f64) -> f64 {
    let d = 1e-6;
    let right = 2.0 * f.eval(t + d) - f.eval(t + 2.0 * d);
    let left = 2.0 * f.eval(t - d) - f.eval(t - 2.0 * d);
    0.5 * (right + left)
}

fn check_grid(max_k: usize, samples: usize) -> Result<()> {
    let required = (8 * max_k).max(2).next_power_of_two();
    if !samples.is_power_of_two() || samples < required {
        return Err(Error::Aliasing { max_k, samples, required });
    }
    Ok(())
}

/// Trapezoid estimates of `f̂(k)` for `|k| ≤ max_k` on `samples` uniform
/// points, returned as a coefficient map.
///
/// Jumps are removed before sampling by subtracting shifted sawtooth
/// functions with the same jump, whose coefficients are added back exactly.
/// Samples that fall on a jump (to within `1e−9`) use the average of the
/// extrapolated one-sided limits, so the evaluator's value there and
/// rounding in the jump location do not matter.
/// What remains is continuous, so the error is `O(samples⁻²)` for
/// piecewise-smooth `f`, and zero for trigonometric polynomials of degree
/// below `samples / 2`.
pub fn fourier_coeffs(f: &PeriodicFn, max_k: usize, samples: usize) -> Result<TrigPoly> {
    check_grid(max_k, samples)?;
    let jumps: Vec<(f64, f64)> = f.jumps().iter().map(|j| (j.at, f.jump_size(j) / TAU)).collect();
    let m = samples;
    let values = exec::map_indices(m, |j| {
        let t = TAU * j as f64 / m as f64;
        let mut on_jump = false;
        let mut saw = 0.0;
        for &(at, w) in &jumps {
            // a sample within rounding of a jump is treated as lying on it,
            // where the sawtooth takes its midpoint value 0
            if angle_distance(t, at) < SNAP {
                on_jump = true;
            } else {
                saw += w * sawtooth(t - at);
            }
        }
        let v = if on_jump { midpoint_value(f, t) } else { f.eval(t) };
        v - saw
    });
    let twiddle: Vec<Complex64> =
        (0..m).map(|t| Complex64::from_polar(1.0, -TAU * t as f64 / m as f64)).collect();
    let inv_m = 1.0 / m as f64;
    let positive = exec::map_indices(max_k + 1, |k| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &v) in values.iter().enumerate() {
            acc += twiddle[(j * k) % m] * v;
        }
        let mut c = acc * inv_m;
        if k > 0 {
            let ik = Complex64::new(0.0, k as f64);
            for &(at, w) in &jumps {
                c += Complex64::from_polar(w, -(k as f64) * at) / ik;
            }
        }
        c
    });
    let mut p = TrigPoly::zero(max_k);
    for (k, c) in positive.into_iter().enumerate() {
        p.set_coeff(k as i64, c);
        if k > 0 {
            p.set_coeff(-(k as i64), c.conj());
        }
    }
    Ok(p)
}

/// Result of [`l1_norm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Norm {
    pub value: f64,
    pub err_estimate: f64,
}

const BISECTION_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 60;

fn bisect(f: &PeriodicFn, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    let (a, b) = (lo, hi);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= BISECTION_TOL {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let fm = f.eval(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::BisectionFailed { a, b })
}

fn gauss_on(degree: usize, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    gauss(degree).integrate(a, b, f)
}

/// `(1/2π) ∫ |f|` over one period.
///
/// The period is cut into `grid` cells, further split at the listed jumps and
/// kinks of `f`. With `refine`, sign changes inside each cell are located by
/// bisection and the cell is split there as well, so `|f|` is smooth on every
/// piece. Each piece uses 8-point Gauss–Legendre; `err_estimate` is the
/// summed difference to the 4-point rule.
pub fn l1_norm(f: &PeriodicFn, grid: usize, refine: bool) -> Result<L1Norm> {
    if grid < 1024 {
        return Err(Error::invalid("grid", format!("need at least 1024 cells, got {grid}")));
    }
    let mut edges: Vec<f64> = (0..=grid).map(|j| TAU * j as f64 / grid as f64).collect();
    edges.extend(f.breakpoints());
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    let pieces = edges.len() - 1;

    let results = exec::map_indices(pieces, |i| -> Result<(f64, f64)> {
        let (a, b) = (edges[i], edges[i + 1]);
        let mut cuts = vec![a];
        if refine {
            let delta = (b - a) * 1e-9;
            let mut xs = vec![a + delta];
            xs.extend(gauss(8).nodes().map(|&x| 0.5 * ((b - a) * x + (b + a))));
            xs.push(b - delta);
            xs.sort_by(f64::total_cmp);
            let vs: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
            for w in 0..xs.len() - 1 {
                if vs[w] * vs[w + 1] < 0.0 {
                    cuts.push(bisect(f, xs[w], xs[w + 1], vs[w])?);
                }
            }
        }
        cuts.push(b);
        let (mut hi, mut lo) = (0.0, 0.0);
        for w in cuts.windows(2) {
            let (p, q) = (w[0], w[1]);
            if q <= p {
                continue;
            }
            if refine {
                let s = f.eval(0.5 * (p + q)).signum();
                hi += s * gauss_on(8, p, q, |x| f.eval(x));
                lo += s * gauss_on(4, p, q, |x| f.eval(x));
            } else {
                hi += gauss_on(8, p, q, |x| f.eval(x).abs());
                lo += gauss_on(4, p, q, |x| f.eval(x).abs());
            }
        }
        Ok((hi, (hi - lo).abs()))
    });
    let mut value = 0.0;
    let mut err = 0.0;
    for r in results {
        let (v, e) = r?;
        value += v;
        err += e;
    }
    Ok(L1Norm { value: value / TAU, err_estimate: err / TAU + f64::EPSILON * value.abs() })
}

/// `h ∗ p` with closed-form `ĥ`: coefficient `k` becomes `ĥ(k)·p̂(k)`.
pub fn convolve_poly(h: &PeriodicFn, p: &TrigPoly) -> Result<TrigPoly> {
    let d = p.degree() as i64;
    if !h.has_coefficients() {
        return Err(Error::MissingCoefficient { k: d });
    }
    let mut out = TrigPoly::zero(p.degree());
    for k in -d..=d {
        let hk = h.coefficient(k).ok_or(Error::MissingCoefficient { k })?;
        out.set_coeff(k, hk * p.coeff(k));
    }
    Ok(out)
}

/// `h ∗ p` from a table of `ĥ(k)` such as [`fourier_coeffs`] returns.
pub fn convolve_with_coeffs(h_hat: &TrigPoly, p: &TrigPoly) -> Result<TrigPoly> {
    if h_hat.degree() < p.degree() {
        return Err(Error::MissingCoefficient { k: h_hat.degree() as i64 + 1 });
    }
    let d = p.degree() as i64;
    let mut out = TrigPoly::zero(p.degree());
    for k in -d..=d {
        out.set_coeff(k, h_hat.coeff(k) * p.coeff(k));
    }
    Ok(out)
}
