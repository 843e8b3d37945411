//! Algebraic polynomials `P_n` with the pointwise-weighted bound
//! `|f(x) − P_n(x)| ≤ T(n)√(1−x²) + S(n)|x|` for Lipschitz `f` on `[−1, 1]`
//! with `‖f′‖_∞ ≤ 1`, where `T(n) = tan(π/2n)` and `S(n) = sec(π/2n) − 1`.
//!
//! With `x = cos θ`, `g(θ) = f(cos θ)` satisfies `g′ = h·sin θ` for
//! `h(θ) = −f′(cos θ)`, and
//! `g = (h∗𝓚₁) sin θ − (h∗𝓚₂) cos θ + ĝ(0)`. Replacing `𝓚₁`, `𝓚₂` by their
//! best L¹ approximations of degree `n − 1` gives an even trigonometric
//! polynomial of degree `n`, i.e. an algebraic polynomial in `cos θ`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::best_l1::best_poly_candidate;
use crate::exec;
use crate::fourier_core::{convolve_with_coeffs, fourier_coeffs, PeriodicFn, TrigPoly};
use crate::kernels::{KernelSpec, Quasi};
use crate::tail::gauss;
use crate::{Error, Result};

/// Largest odd-part coefficient tolerated in [`build_polynomial`].
pub const ODD_PART_TOL: f64 = 1e-10;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A Lipschitz function on `[−1, 1]` with its a.e. derivative.
///
/// At a kink the derivative must return the midpoint of its one-sided
/// limits, so that `h` takes midpoint values at its jumps.
#[derive(Clone)]
pub struct LipFunction {
    name: String,
    f: RealFn,
    df: RealFn,
    lip_bound: f64,
    kinks: Vec<f64>,
}

impl fmt::Debug for LipFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipFunction")
            .field("name", &self.name)
            .field("lip_bound", &self.lip_bound)
            .field("kinks", &self.kinks)
            .finish()
    }
}

fn sign_mid(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum()
    }
}

impl LipFunction {
    pub fn new<F, D>(name: impl Into<String>, f: F, df: D, lip_bound: f64, kinks: Vec<f64>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lip_bound >= 0.0) {
            return Err(Error::invalid("lip_bound", "must be nonnegative"));
        }
        if let Some(k) = kinks.iter().find(|k| !(k.abs() <= 1.0)) {
            return Err(Error::invalid("kinks", format!("kink {k} outside [-1, 1]")));
        }
        Ok(LipFunction { name: name.into(), f: Arc::new(f), df: Arc::new(df), lip_bound, kinks })
    }

    pub fn constant(c: f64) -> Self {
        LipFunction::new(format!("const({c})"), move |_| c, |_| 0.0, 0.0, Vec::new()).unwrap()
    }

    pub fn linear() -> Self {
        LipFunction::new("linear", |x| x, |_| 1.0, 1.0, Vec::new()).unwrap()
    }

    pub fn abs() -> Self {
        LipFunction::new("abs", f64::abs, sign_mid, 1.0, vec![0.0]).unwrap()
    }

    /// `|x − a|` for `|a| ≤ 1`.
    pub fn abs_shifted(a: f64) -> Result<Self> {
        if !(a.abs() <= 1.0) {
            return Err(Error::invalid("a", format!("shift {a} outside [-1, 1]")));
        }
        LipFunction::new(format!("abs_shifted({a})"), move |x| (x - a).abs(), move |x| sign_mid(x - a), 1.0, vec![a])
    }

    /// `sin(πx)/π`, smooth with Lipschitz constant 1.
    pub fn smooth_sin() -> Self {
        LipFunction::new("smooth_sin", |x| (PI * x).sin() / PI, |x| (PI * x).cos(), 1.0, Vec::new()).unwrap()
    }

    /// Parse a built-in name: `const`, `const(c)`, `linear`, `abs`,
    /// `abs_shifted(a)`, `smooth_sin`.
    pub fn builtin(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let arg = |prefix: &str| -> Option<Result<f64>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(
                inner
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid("function", format!("bad argument in `{s}`"))),
            )
        };
        match s {
            "const" => Ok(LipFunction::constant(1.0)),
            "linear" => Ok(LipFunction::linear()),
            "abs" => Ok(LipFunction::abs()),
            "smooth_sin" => Ok(LipFunction::smooth_sin()),
            _ => {
                if let Some(a) = arg("abs_shifted") {
                    LipFunction::abs_shifted(a?)
                } else if let Some(c) = arg("const") {
                    Ok(LipFunction::constant(c?))
                } else {
                    Err(Error::invalid(
                        "function",
                        format!("unknown function `{s}` (expected const, linear, abs, abs_shifted(a), smooth_sin)"),
                    ))
                }
            }
        }
    }

    /// `c·f`.
    pub fn scaled(&self, c: f64) -> Self {
        let (f, df) = (self.f.clone(), self.df.clone());
        LipFunction {
            name: format!("{c}*{}", self.name),
            f: Arc::new(move |x| c * f(x)),
            df: Arc::new(move |x| c * df(x)),
            lip_bound: c.abs() * self.lip_bound,
            kinks: self.kinks.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.df)(x)
    }

    pub fn lip_bound(&self) -> f64 {
        self.lip_bound
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }
}

/// An algebraic polynomial `Σ a_k T_k(x)` in the Chebyshev basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyPoly {
    pub coeffs: Vec<f64>,
}

impl ChebyPoly {
    /// Index of the last nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&a| a != 0.0).unwrap_or(0)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &a in self.coeffs.iter().skip(1).rev() {
            let b0 = a + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs.first().copied().unwrap_or(0.0) + x * b1 - b2
    }

    /// The even trigonometric polynomial `Σ a_k cos kθ`.
    pub fn to_trig(&self) -> TrigPoly {
        TrigPoly::cosine_series(&self.coeffs)
    }
}

/// `g(θ) = f(cos θ)` and `h(θ) = −f′(cos θ)`, with the jumps of `h` at
/// `±arccos(kink)` listed for jump-corrected Fourier coefficients.
pub fn to_periodic(f: &LipFunction) -> (PeriodicFn, PeriodicFn) {
    let (fe, de) = (f.f.clone(), f.df.clone());
    let mut g = PeriodicFn::new(move |t: f64| fe(t.cos()));
    let mut h = PeriodicFn::new(move |t: f64| -de(t.cos()));
    for &k in &f.kinks {
        let a = k.acos();
        g = g.with_kink(a).with_kink(-a);
        h = h.with_jump_estimated(a);
        if a != 0.0 && a != PI {
            h = h.with_jump_estimated(-a);
        }
    }
    (g, h)
}

/// `(tan(π/2n), sec(π/2n) − 1)`.
pub fn factors(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::invalid("n", "need n >= 2"));
    }
    let x = PI / (2.0 * n as f64);
    Ok((x.tan(), 1.0 / x.cos() - 1.0))
}

/// `ĝ(0) = (1/π)∫₀^π f(cos θ) dθ`, by Gauss–Legendre on `cells` pieces
/// split at the kink angles. The integrand is taken relative to `f(1)`, so
/// constants come out exactly.
fn mean_value(f: &LipFunction, cells: usize) -> f64 {
    let anchor = f.eval(1.0);
    let mut edges: Vec<f64> = (0..=cells).map(|j| PI * j as f64 / cells as f64).collect();
    edges.extend(f.kinks.iter().map(|k| k.acos()));
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let rule = gauss(8);
    let parts = exec::map_indices(edges.len() - 1, |i| {
        rule.integrate(edges[i], edges[i + 1], |t| f.eval(t.cos()) - anchor)
    });
    anchor + parts.into_iter().sum::<f64>() / PI
}

/// The degree-`n` polynomial `P_n` with
/// `|f − P_n| ≤ T(n)√(1−x²) + S(n)|x|`.
///
/// `ĥ(k)` for `|k| ≤ n` comes from `fourier_coeffs` on `samples` points
/// (jumps of `h` removed exactly), `τ_{n−1}(𝓚₁)`, `τ_{n−1}(𝓚₂)` from
/// [`best_poly_candidate`]; the multiplications by `sin θ`, `cos θ` are
/// frequency shifts.
pub fn build_polynomial(f: &LipFunction, n: usize, samples: usize) -> Result<ChebyPoly> {
    if n < 2 {
        return Err(Error::invalid("n", "need n >= 2"));
    }
    if samples < 8 * n || !samples.is_power_of_two() {
        return Err(Error::invalid("samples", format!("need a power of two >= 8n = {}, got {samples}", 8 * n)));
    }
    let (_, h) = to_periodic(f);
    let h_hat = fourier_coeffs(&h, n, samples)?;
    let tau1 = best_poly_candidate(&KernelSpec::quasi(Quasi::K1), n)?;
    let tau2 = best_poly_candidate(&KernelSpec::quasi(Quasi::K2), n)?;
    let a = convolve_with_coeffs(&h_hat, &tau1)?;
    let b = convolve_with_coeffs(&h_hat, &tau2)?;
    let t = a.mul_sin().sub(&b.mul_cos()).add(&TrigPoly::constant(mean_value(f, samples.max(1024))));

    let odd = (0..=t.degree() as i64)
        .map(|k| (t.coeff(k) - t.coeff(-k)).norm().max(t.coeff(k).im.abs()))
        .fold(0.0, f64::max);
    if odd > ODD_PART_TOL {
        return Err(Error::OddPart { size: odd });
    }
    let coeffs = (0..=t.degree() as i64)
        .map(|k| if k == 0 { t.coeff(0).re } else { 2.0 * t.coeff(k).re })
        .collect();
    Ok(ChebyPoly { coeffs })
}

/// Outcome of [`verify_bound`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    /// `max (|f − P| − T(n)√(1−x²) − S(n)|x|)`; nonpositive when the bound holds.
    pub max_slack: f64,
    /// `max |f − P| / bound` where the bound exceeds `1e−12`.
    pub max_ratio: f64,
    /// `max |f − P|`.
    pub max_error: f64,
}

/// Check the pointwise bound on the Chebyshev grid `x_j = cos(πj/G)`,
/// `j = 0..=G`.
pub fn verify_bound(f: &LipFunction, p: &ChebyPoly, n: usize, grid: usize) -> Result<BoundCheck> {
    if grid < 1000 {
        return Err(Error::invalid("grid", format!("need at least 1000 points, got {grid}")));
    }
    let (t, s) = factors(n)?;
    let rows = exec::map_indices(grid + 1, |j| {
        let x = (PI * j as f64 / grid as f64).cos();
        let err = (f.eval(x) - p.eval(x)).abs();
        let bound = t * (1.0 - x * x).max(0.0).sqrt() + s * x.abs();
        (err, bound)
    });
    let mut out = BoundCheck { max_slack: f64::NEG_INFINITY, max_ratio: 0.0, max_error: 0.0 };
    for (err, bound) in rows {
        out.max_slack = out.max_slack.max(err - bound);
        out.max_error = out.max_error.max(err);
        if bound > 1e-12 {
            out.max_ratio = out.max_ratio.max(err / bound);
        }
    }
    Ok(out)
}
