//! Randomized invariants.

mod common;

use std::f64::consts::{PI, TAU};
use std::io::Write;

use bestl1::bernoulli_series::{uniform_remainder_bound, remainder_bound, remainder_sup};
use bestl1::best_l1::{certify, PatternKind, SignPattern};
use bestl1::fourier_core::{fourier_coeffs, TrigPoly};
use bestl1::kernels::{quasi_coef, steklov_eval, KernelSpec, Quasi};
use bestl1::lipschitz_alg::{build_polynomial, to_periodic, LipFunction};
use bestl1::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real_poly(coeffs: &[(f64, f64)]) -> TrigPoly {
    let mut pairs = vec![(0, c(coeffs[0].0, 0.0))];
    for (k, &(re, im)) in coeffs.iter().enumerate().skip(1) {
        pairs.push((k as i64, c(re, im)));
        pairs.push((-(k as i64), c(re, -im)));
    }
    TrigPoly::from_pairs(pairs)
}

fn kernel_strategy() -> impl Strategy<Value = KernelSpec> {
    prop_oneof![
        (1u32..=6).prop_map(|r| KernelSpec::bernoulli(r).unwrap()),
        Just(KernelSpec::quasi(Quasi::K1)),
        Just(KernelSpec::quasi(Quasi::K2)),
        (1u32..=3, 0.05f64..0.3).prop_map(|(m, h)| KernelSpec::steklov(m, h).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(32) })]

    /// `(1/M) Σ |p(θ_j)|² = Σ |c_k|²` on a grid finer than the degree.
    #[test]
    fn parseval(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..10)) {
        let p = real_poly(&coeffs);
        let grid = 64;
        let mean: f64 = common::uniform_grid(grid).map(|t| p.eval_complex(t).norm_sqr()).sum::<f64>() / grid as f64;
        prop_assert!((mean - p.l2_norm().powi(2)).abs() <= 1e-12 * mean.max(1.0));
    }

    /// The sign patterns `sgn sin nθ`, `sgn cos nθ` are orthogonal to `T_{n−1}`.
    #[test]
    fn patterns_annihilate_lower_degrees(
        n in 1usize..24,
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 24),
        cosine in any::<bool>(),
    ) {
        let p = real_poly(&coeffs[..n]);
        let kind = if cosine { PatternKind::CosN } else { PatternKind::SinN };
        let pattern = SignPattern::new(kind, n).unwrap();
        prop_assert!(pattern.pair(&p).norm() <= 1e-15);
        // but not degree n itself
        let e = TrigPoly::from_pairs([(n as i64, c(1.0, 0.0)), (-(n as i64), c(1.0, 0.0))]);
        let s = TrigPoly::from_pairs([(n as i64, c(0.0, -1.0)), (-(n as i64), c(0.0, 1.0))]);
        prop_assert!(pattern.pair(&e).norm() + pattern.pair(&s).norm() > 0.5);
    }

    /// The certified best error is nonincreasing in `n`.
    #[test]
    fn certified_upper_is_monotone(r in 1u32..=5, n in 2usize..12) {
        let k = KernelSpec::bernoulli(r).unwrap();
        let a = certify(&k, n, 1e-6).unwrap();
        let b = certify(&k, n + 1, 1e-6).unwrap();
        prop_assert!(b.upper <= a.upper + 1e-12, "n = {n}: {} then {}", a.upper, b.upper);
    }

    /// The Lipschitz construction is linear in `f`.
    #[test]
    fn lipschitz_scaling(a in -0.9f64..0.9, s in -3.0f64..3.0, log_n in 1u32..4) {
        let n = 1usize << log_n;
        let f = LipFunction::abs_shifted(a).unwrap();
        let p = build_polynomial(&f, n, 4096).unwrap();
        let q = build_polynomial(&f.scaled(s), n, 4096).unwrap();
        for (x, y) in p.coeffs.iter().zip(&q.coeffs) {
            prop_assert!((s * x - y).abs() <= 1e-12 * s.abs().max(1.0));
        }
    }

    /// `g = (h∗𝓚₁) sin θ − (h∗𝓚₂) cos θ + ĝ(0)` coefficientwise, for smooth
    /// `f` with `g(θ) = f(cos θ)`, `h(θ) = −f′(cos θ)`.
    #[test]
    fn representation_identity(a in -1.0f64..1.0, b in 0.5f64..3.0, q in -0.5f64..0.5) {
        let f = LipFunction::new(
            "test",
            move |x| a * (b * x).sin() / b + q * x * x,
            move |x| a * (b * x).cos() + 2.0 * q * x,
            a.abs() + 2.0 * q.abs(),
            Vec::new(),
        ).unwrap();
        let (g, h) = to_periodic(&f);
        let gh = fourier_coeffs(&g, 40, 1024).unwrap();
        let hh = fourier_coeffs(&h, 40, 1024).unwrap();
        let conv = |which, k: i64| hh.coeff(k) * quasi_coef(which, k);
        for k in 1..=30i64 {
            let sin_part = (conv(Quasi::K1, k - 1) - conv(Quasi::K1, k + 1)) / c(0.0, 2.0);
            let cos_part = (conv(Quasi::K2, k - 1) + conv(Quasi::K2, k + 1)) / 2.0;
            let want = sin_part - cos_part;
            prop_assert!((gh.coeff(k) - want).norm() <= 1e-12, "k = {k}: {} vs {want}", gh.coeff(k));
        }
    }

    /// `χ_h^m` vanishes outside `|θ| ≤ mπh`.
    #[test]
    fn steklov_support(m in 1u32..=4, frac in 0.05f64..0.9, u in 0.0f64..1.0) {
        let h = frac / m as f64;
        let edge = m as f64 * PI * h;
        let t = edge + 1e-6 + u * (PI - edge - 1e-6);
        let scale = (TAU * h).powi(-(m as i32)).max(1.0);
        for theta in [t, -t] {
            let v = steklov_eval(m, h, theta, 1e-12).unwrap();
            prop_assert!(v.abs() <= 1e-10 * scale, "θ = {theta}: {v}");
        }
    }

    /// Closed-form kernel coefficients agree with jump-corrected sampling.
    #[test]
    fn kernel_coefficients_match_sampling(kernel in kernel_strategy()) {
        let sampled = fourier_coeffs(&kernel.to_periodic(), 16, 1 << 14).unwrap();
        // jumps are removed exactly; kinks leave O(M^-2) aliasing
        let tol = if kernel.kinks().is_empty() { 1e-10 } else { 1e-6 };
        for k in -16..=16i64 {
            let d = (sampled.coeff(k) - kernel.fourier_coef(k)).norm();
            prop_assert!(d <= tol, "{kernel} k = {k}: {} vs {}", sampled.coeff(k), kernel.fourier_coef(k));
        }
    }
}

/// Empirical check of the uniform remainder constant `6(N+1)^{−m}` against
/// the sampled `sup|𝓑_m − S_N(𝓑_m)|`. Violations are reported, not fatal;
/// the rigorous bound used by the library must always hold.
#[test]
fn uniform_remainder_constant() {
    let mut violations = Vec::new();
    for m in 1..=12usize {
        for n in 0..=4usize {
            let sup = remainder_sup(m, n, 4096).unwrap();
            if sup > uniform_remainder_bound(m, n) {
                violations.push(format!(
                    "m = {m}, N = {n}: sup = {sup:.4}, 6(N+1)^-m = {:.4}",
                    uniform_remainder_bound(m, n)
                ));
            }
            if m >= 2 {
                assert!(sup <= remainder_bound(m, n), "rigorous bound fails at m = {m}, N = {n}");
            }
        }
    }
    let mut err = std::io::stderr().lock();
    writeln!(err, "6(N+1)^-m violations (m <= 12, N <= 4): {}", violations.len()).unwrap();
    for v in &violations {
        writeln!(err, "  {v}").unwrap();
    }
    // the 𝓑₁ remainder does not decay: its sup stays near π next to the jump
    assert!(violations.iter().any(|v| v.starts_with("m = 1,")));
}
