//! Expansion of a kernel into Bernoulli kernels.
//!
//! If the Fourier coefficients `K̂(k)`, `|k| > N`, are the values `g(k)` of a
//! function analytic on `|z| > N` with a zero at infinity, then
//!
//! ```text
//! K(θ) = T_N(θ) + Σ_{m≥1} c_m (𝓑_m(θ) − S_N(𝓑_m, θ)),
//! c_m = (1/2πi) ∮ (iζ)^m g(ζ) dζ/ζ,
//! ```
//!
//! with `T_N` the degree-`N` Fourier partial sum of `K`. The coefficients
//! come either from trapezoid quadrature on the circle `|ζ| = N + 1/2` or
//! exactly from residues when `g` is rational with simple poles.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Complex64Display;
use crate::exec;
use crate::fourier_core::TrigPoly;
use crate::kernels::{bernoulli_tail, quasi_coef, quasi_eval, Quasi};
use crate::{Error, Result};

/// A simple pole of `g` with its residue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplePole {
    pub at: Complex64,
    pub residue: Complex64,
}

/// Partial-fraction data: simple poles away from zero plus the principal
/// part `Σ_j a_j ζ^{−j}` at zero (`principal_at_zero[j−1] = a_j`).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RationalForm {
    pub poles: Vec<SimplePole>,
    pub principal_at_zero: Vec<Complex64>,
}

type ComplexFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// The analytic continuation `g` of a kernel's high Fourier coefficients,
/// together with the low part `T_N`.
#[derive(Clone)]
pub struct AnalyticTail {
    n: usize,
    g: ComplexFn,
    low: TrigPoly,
    rational: Option<RationalForm>,
}

impl std::fmt::Debug for AnalyticTail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticTail")
            .field("n", &self.n)
            .field("low", &self.low)
            .field("rational", &self.rational)
            .finish()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl AnalyticTail {
    /// `g` must be analytic on `|z| > n`; `low` is the kernel's partial sum
    /// `T_N` and must have degree at most `n`.
    pub fn new<G>(n: usize, g: G, low: TrigPoly) -> Result<Self>
    where
        G: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        if low.degree() > n {
            return Err(Error::invalid("low", format!("T_N has degree {} > N = {n}", low.degree())));
        }
        Ok(AnalyticTail { n, g: Arc::new(g), low, rational: None })
    }

    pub fn with_rational(mut self, form: RationalForm) -> Self {
        self.rational = Some(form);
        self
    }

    /// The tail of `𝓚₁` (`g(z) = z/(i(z²−1))`) or `𝓚₂` (`g(z) = −1/(z²−1)`),
    /// `N = 1`, with poles at `±1`.
    pub fn quasi(which: Quasi) -> Self {
        let low = TrigPoly::from_pairs((-1..=1).map(|k| (k, quasi_coef(which, k))));
        let one = c(1.0, 0.0);
        let (g, poles): (ComplexFn, _) = match which {
            Quasi::K1 => (
                Arc::new(move |z: Complex64| z / (c(0.0, 1.0) * (z * z - one))),
                vec![
                    SimplePole { at: c(1.0, 0.0), residue: c(0.0, -0.5) },
                    SimplePole { at: c(-1.0, 0.0), residue: c(0.0, -0.5) },
                ],
            ),
            Quasi::K2 => (
                Arc::new(move |z: Complex64| -one / (z * z - one)),
                vec![
                    SimplePole { at: c(1.0, 0.0), residue: c(-0.5, 0.0) },
                    SimplePole { at: c(-1.0, 0.0), residue: c(0.5, 0.0) },
                ],
            ),
        };
        AnalyticTail { n: 1, g, low, rational: Some(RationalForm { poles, principal_at_zero: Vec::new() }) }
    }

    /// `g(z) = (iz)^{−r}`, the tail of `𝓑_r` itself with `N = 0`.
    pub fn bernoulli_monomial(r: u32) -> Result<Self> {
        if r < 1 {
            return Err(Error::invalid("r", "need r >= 1"));
        }
        let g = move |z: Complex64| (c(0.0, 1.0) * z).powi(-(r as i32));
        let mut principal = vec![c(0.0, 0.0); r as usize];
        principal[r as usize - 1] = c(0.0, 1.0).powi(-(r as i32));
        Ok(AnalyticTail::new(0, g, TrigPoly::zero(0))?
            .with_rational(RationalForm { poles: Vec::new(), principal_at_zero: principal }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn low(&self) -> &TrigPoly {
        &self.low
    }

    pub fn rational(&self) -> Option<&RationalForm> {
        self.rational.as_ref()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.g)(z)
    }

    /// `max |g(k) − K̂(k)|` over `N+1 ≤ |k| ≤ N+64`.
    pub fn coefficient_mismatch(&self, coef: impl Fn(i64) -> Complex64) -> f64 {
        let n = self.n as i64;
        (n + 1..=n + 64)
            .flat_map(|k| [k, -k])
            .map(|k| (self.eval(c(k as f64, 0.0)) - coef(k)).norm())
            .fold(0.0, f64::max)
    }

    /// `max |g|` on the circle `|z| = radius`, sampled at 64 points.
    pub fn max_on_circle(&self, radius: f64) -> f64 {
        (0..64)
            .map(|j| self.eval(Complex64::from_polar(radius, TAU * j as f64 / 64.0)).norm())
            .fold(0.0, f64::max)
    }

    /// The contour radius `N + 1/2`.
    pub fn radius(&self) -> f64 {
        self.n as f64 + 0.5
    }
}

/// A contour coefficient with its doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentCoeff {
    pub value: Complex64,
    pub error: f64,
}

/// `e^{2πi t/M}`, computed from the angle reduced to the first octant so
/// the symmetric roots are exactly conjugate/rotated copies.
fn unit_root(t: usize, m: usize) -> Complex64 {
    let (q, r) = ((8 * t) / m, (8 * t) % m);
    if r == 0 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        return [c(1.0, 0.0), c(s, s), c(0.0, 1.0), c(-s, s), c(-1.0, 0.0), c(-s, -s), c(0.0, -1.0), c(s, -s)][q];
    }
    let quarter = (4 * t) / m;
    let rem = t - quarter * m / 4;
    let x = TAU * rem as f64 / m as f64;
    let (sn, cs) = x.sin_cos();
    match quarter {
        0 => c(cs, sn),
        1 => c(-sn, cs),
        2 => c(-cs, -sn),
        _ => c(sn, -cs),
    }
}

/// Rounding error of `a + b = s` (Neumaier's correction term).
fn neumaier(a: f64, b: f64, s: f64) -> f64 {
    if a.abs() >= b.abs() {
        (a - s) + b
    } else {
        (b - s) + a
    }
}

/// Trapezoid rule for `c_1..c_{m_max}` with `samples` points on the circle.
fn contour_pass(tail: &AnalyticTail, m_max: usize, samples: usize) -> (Vec<Complex64>, f64) {
    let rho = tail.radius();
    let values = exec::map_indices(samples, |j| tail.eval(Complex64::from_polar(rho, TAU * j as f64 / samples as f64)));
    let max_g = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let twiddle: Vec<Complex64> =
        (0..samples).map(|t| unit_root(t, samples)).collect();
    let coeffs = exec::map_indices(m_max, |i| {
        let m = i + 1;
        // compensated summation: the factor ρ^m amplifies rounding in the sum
        let (mut acc, mut comp) = (c(0.0, 0.0), c(0.0, 0.0));
        for (j, v) in values.iter().enumerate() {
            let term = v * twiddle[(m * j) % samples];
            let t = acc + term;
            comp += c(neumaier(acc.re, term.re, t.re), neumaier(acc.im, term.im, t.im));
            acc = t;
        }
        c(0.0, rho).powi(m as i32) * (acc + comp) / samples as f64
    });
    (coeffs, max_g)
}

/// `c_1..c_{m_max}` by the trapezoid rule on `|ζ| = N + 1/2` with `samples`
/// and `2·samples` points; the finer value is returned with the difference
/// as its error estimate.
///
/// For `g` analytic on a neighbourhood of the contour the trapezoid rule
/// converges geometrically, so after doubling the estimate sits at rounding
/// level. An estimate above `1e−8·max(1, max|g|·ρ^m)` means the integrand is
/// not analytic there and fails with [`Error::NotAnalytic`].
pub fn laurent_coeffs(tail: &AnalyticTail, m_max: usize, samples: usize) -> Result<Vec<LaurentCoeff>> {
    if samples < 256 || !samples.is_power_of_two() {
        return Err(Error::invalid("samples", format!("need a power of two >= 256, got {samples}")));
    }
    let (mid, _) = contour_pass(tail, m_max, samples);
    let (fine, max_g) = contour_pass(tail, m_max, 2 * samples);
    let rho = tail.radius();
    let mut out = Vec::with_capacity(m_max);
    for i in 0..m_max {
        let e2 = (fine[i] - mid[i]).norm();
        let scale = max_g * rho.powi(i as i32 + 1);
        if !(e2 <= 1e-8 * scale.max(1.0)) {
            return Err(Error::NotAnalytic { estimate: e2 });
        }
        out.push(LaurentCoeff { value: fine[i], error: e2 });
    }
    Ok(out)
}

/// Exact `c_1..c_{m_max}` from the rational form:
/// `c_m = i^m a_m + Σ_p (ip)^m ρ_p / p`.
pub fn residue_coeffs(tail: &AnalyticTail, m_max: usize) -> Result<Vec<Complex64>> {
    let form = tail
        .rational
        .as_ref()
        .ok_or_else(|| Error::invalid("tail", "no rational form supplied"))?;
    let rho = tail.radius();
    for p in &form.poles {
        if p.at.norm() >= rho || p.at.norm() == 0.0 {
            return Err(Error::PoleOutsideContour { pole: Complex64Display(p.at), radius: rho });
        }
    }
    let i = c(0.0, 1.0);
    Ok((1..=m_max)
        .map(|m| {
            let mut v = form.principal_at_zero.get(m - 1).map_or(c(0.0, 0.0), |a| i.powi(m as i32) * a);
            for p in &form.poles {
                v += (i * p.at).powi(m as i32) * p.residue / p.at;
            }
            v
        })
        .collect())
}

/// `sup |𝓑_m − S_N(𝓑_m)| ≤ 2Σ_{k>N} k^{−m} ≤ 2(N+1)^{−m}(1 + (N+1)/(m−1))`,
/// for `m ≥ 2`.
pub fn remainder_bound(m: usize, n: usize) -> f64 {
    let n1 = (n + 1) as f64;
    if m < 2 {
        return f64::INFINITY;
    }
    2.0 * n1.powi(-(m as i32)) * (1.0 + n1 / (m - 1) as f64)
}

/// The commonly quoted uniform constant `6(N+1)^{−m}`. It does not bound
/// the remainder for `m = 1`, nor for `m = 2` once `N ≥ 2`; see
/// [`remainder_bound`] for the bound used here.
pub fn uniform_remainder_bound(m: usize, n: usize) -> f64 {
    6.0 * ((n + 1) as f64).powi(-(m as i32))
}

/// `sup_θ |𝓑_m(θ) − S_N(𝓑_m, θ)|` sampled on `grid` points (excluding the
/// jump at zero for `m = 1`).
pub fn remainder_sup(m: usize, n: usize, grid: usize) -> Result<f64> {
    let vals = exec::map_range(1, grid, |j| bernoulli_tail(m as u32, n, TAU * j as f64 / grid as f64));
    let mut best = if m >= 2 { bernoulli_tail(m as u32, n, 0.0)?.abs() } else { 0.0 };
    for v in vals {
        best = best.max(v?.abs());
    }
    Ok(best)
}

/// `T_N + Σ_{m=1}^{R} c_m (𝓑_m − S_N(𝓑_m))` with a bound on the omitted terms.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliSeriesRep {
    pub n: usize,
    pub t_n: TrigPoly,
    /// `c_1..c_R`.
    pub coeffs: Vec<Complex64>,
    pub tail_bound: f64,
}

/// `Σ_{m>R} A·q^m·remainder(m)` for coefficients bounded by `A·q^m`.
fn geometric_tail(a: f64, q: f64, r: usize, n: usize) -> f64 {
    let n1 = (n + 1) as f64;
    let ratio = q / n1;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    let m0 = (r + 1).max(2);
    let first = 2.0 * a * ratio.powi(m0 as i32) * (1.0 + n1 / (m0 - 1) as f64);
    first / (1.0 - ratio)
}

impl BernoulliSeriesRep {
    /// Representation from residue coefficients with `R` terms.
    pub fn from_residues(tail: &AnalyticTail, terms: usize) -> Result<Self> {
        let coeffs = residue_coeffs(tail, terms)?;
        let form = tail.rational.as_ref().expect("checked by residue_coeffs");
        let n = tail.n;
        // |c_m| ≤ Σ_p |ρ_p/p|·|p|^m + |a_m|; the principal part is finite
        let mut bound: f64 = form
            .poles
            .iter()
            .map(|p| geometric_tail((p.residue / p.at).norm(), p.at.norm(), terms, n))
            .sum();
        for (j, a) in form.principal_at_zero.iter().enumerate() {
            let m = j + 1;
            if m > terms {
                bound += a.norm() * remainder_bound(m, n);
            }
        }
        Ok(BernoulliSeriesRep { n, t_n: tail.low.clone(), coeffs, tail_bound: bound })
    }

    /// Representation from contour coefficients with `R` terms, using
    /// `|c_m| ≤ max|g|·(N + 1/2)^m` for the omitted ones.
    pub fn from_contour(tail: &AnalyticTail, terms: usize, samples: usize) -> Result<Self> {
        let lc = laurent_coeffs(tail, terms, samples)?;
        let max_g = tail.max_on_circle(tail.radius()) * (1.0 + 1e-9);
        let bound = geometric_tail(max_g, tail.radius(), terms, tail.n);
        Ok(BernoulliSeriesRep {
            n: tail.n,
            t_n: tail.low.clone(),
            coeffs: lc.into_iter().map(|l| l.value).collect(),
            tail_bound: bound,
        })
    }

    /// Smallest `R ≤ max_terms` whose residue representation has
    /// `tail_bound ≤ tol`.
    pub fn adaptive(tail: &AnalyticTail, tol: f64, max_terms: usize) -> Result<Self> {
        for r in 1..=max_terms {
            let rep = BernoulliSeriesRep::from_residues(tail, r)?;
            if rep.tail_bound <= tol {
                return Ok(rep);
            }
        }
        let rep = BernoulliSeriesRep::from_residues(tail, max_terms)?;
        Err(Error::TailBound { bound: rep.tail_bound, tol })
    }

    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    fn eval_unchecked(&self, theta: f64) -> Result<f64> {
        let mut v = self.t_n.eval(theta)?;
        for (i, cm) in self.coeffs.iter().enumerate() {
            if cm.norm() == 0.0 {
                continue;
            }
            v += cm.re * bernoulli_tail(i as u32 + 1, self.n, theta)?;
        }
        Ok(v)
    }

    /// Fourier coefficient of the truncated representation at `k`.
    pub fn fourier_coef(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize <= self.n {
            return self.t_n.coeff(k);
        }
        let ik = c(0.0, k as f64);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, cm)| cm * ik.powi(-(i as i32 + 1)))
            .sum()
    }
}

/// Evaluate the representation at `θ`. Fails with [`Error::TailBound`] when
/// the omitted terms may exceed `tol`.
pub fn reconstruct(rep: &BernoulliSeriesRep, theta: f64, tol: f64) -> Result<f64> {
    if rep.tail_bound > tol {
        return Err(Error::TailBound { bound: rep.tail_bound, tol });
    }
    rep.eval_unchecked(theta)
}

/// Outcome of [`golden_formula_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenCheck {
    /// `max |𝓚(θ) − reconstruct(θ)|` over the grid.
    pub max_error: f64,
    /// `max |K̂(k) − Ŝ(k)|` for `|k| ≤ 64`.
    pub coef_error: f64,
    pub tail_bound: f64,
}

/// Compare `𝓚₁` / `𝓚₂` with their golden-formula representations (residue
/// coefficients, `R` terms) on `θ_j = 2πj/M`, excluding `|θ| ≤ 2π/M`.
pub fn golden_formula_check(which: Quasi, grid: usize, terms: usize) -> Result<GoldenCheck> {
    if grid < 8 {
        return Err(Error::invalid("grid", "need at least 8 points"));
    }
    let tail = AnalyticTail::quasi(which);
    let rep = BernoulliSeriesRep::from_residues(&tail, terms)?;
    let errs = exec::map_range(2, grid - 1, |j| -> Result<f64> {
        let t = TAU * j as f64 / grid as f64;
        Ok((quasi_eval(which, t) - rep.eval_unchecked(t)?).abs())
    });
    let mut max_error: f64 = 0.0;
    for e in errs {
        max_error = max_error.max(e?);
    }
    let coef_error = (-64..=64)
        .map(|k| (quasi_coef(which, k) - rep.fourier_coef(k)).norm())
        .fold(0.0, f64::max);
    Ok(GoldenCheck { max_error, coef_error, tail_bound: rep.tail_bound })
}
