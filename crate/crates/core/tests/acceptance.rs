//! Acceptance criteria 1–11. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed; exits nonzero if any
//! criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use bestl1::bernoulli_series::{golden_formula_check, laurent_coeffs, residue_coeffs, AnalyticTail};
use bestl1::best_l1::{certify, dual_lower, steklov_best, steklov_regime, PatternKind, SignPattern, SteklovRegime};
use bestl1::favard::{favard_exact, favard_series, partial_fraction_closed, partial_fraction_tan};
use bestl1::kernels::{steklov_eval, KernelSpec, Quasi};
use bestl1::lipschitz_alg::{build_polynomial, factors, verify_bound, LipFunction};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Favard constants: series vs exact, and the first six closed forms.
fn c1() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in 1..=12 {
        let exact = favard_exact(r).map_err(err)?.value;
        let series = favard_series(r, 1e-12).map_err(err)?;
        let d = (exact - series).abs();
        worst = worst.max(d);
        ensure(d <= 1e-11, || format!("r = {r}: series {series} vs exact {exact}"))?;
    }
    let printed = [
        PI / 2.0,
        PI.powi(2) / 8.0,
        PI.powi(3) / 24.0,
        5.0 * PI.powi(4) / 384.0,
        PI.powi(5) / 240.0,
        61.0 * PI.powi(6) / 46080.0,
    ];
    for (i, want) in printed.iter().enumerate() {
        let r = i + 1;
        let got = favard_exact(r).map_err(err)?.value;
        ensure((got - want).abs() <= 1e-12, || format!("K_{r} = {got}, printed value {want}"))?;
        let oracle = common::favard_by_numbers(r as u32);
        ensure((got - oracle).abs() <= 1e-12, || format!("K_{r} = {got}, Euler/Bernoulli route {oracle}"))?;
    }
    Ok(format!("max |series − exact| = {worst:.2e}"))
}

/// Generating function `Σ K_r z^r = tan(πz/2) + sec(πz/2)`.
fn c2() -> Outcome {
    let k: Vec<f64> = (0..=60).map(|r| favard_exact(r).map(|c| c.value)).collect::<Result<_, _>>().map_err(err)?;
    let mut worst: f64 = 0.0;
    for z in [0.1, -0.1, 0.25, -0.25, 0.5, -0.5] {
        let sum: f64 = k.iter().rev().fold(0.0, |acc, kr| acc * z + kr);
        let x = PI * z / 2.0;
        let closed = x.tan() + 1.0 / x.cos();
        let d = (sum - closed).abs();
        worst = worst.max(d);
        ensure(d <= 1e-9, || format!("z = {z}: series {sum} vs {closed}"))?;
    }
    let half: f64 = k.iter().rev().fold(0.0, |acc, kr| acc * 0.5 + kr);
    ensure((half - (1.0 + 2f64.sqrt())).abs() <= 1e-9, || format!("K(1/2) = {half}, want 1 + √2"))?;
    Ok(format!("max deviation {worst:.2e}, K(1/2) = {half:.15}"))
}

/// `K_0 < K_2 < K_4 < … < 4/π < … < K_5 < K_3 < K_1`.
fn c3() -> Outcome {
    let k: Vec<f64> = (0..=12).map(|r| favard_exact(r).map(|c| c.value)).collect::<Result<_, _>>().map_err(err)?;
    let lim = 4.0 / PI;
    for r in (0..=10).step_by(2) {
        ensure(k[r] < k[r + 2], || format!("K_{r} = {} !< K_{} = {}", k[r], r + 2, k[r + 2]))?;
    }
    for r in (1..=9).step_by(2) {
        ensure(k[r] > k[r + 2], || format!("K_{r} = {} !> K_{} = {}", k[r], r + 2, k[r + 2]))?;
    }
    ensure(k[12] < lim && lim < k[11], || format!("K_12 = {}, 4/π = {lim}, K_11 = {}", k[12], k[11]))?;
    Ok(format!("K_12 = {:.15} < 4/π < K_11 = {:.15}", k[12], k[11]))
}

/// Certificates for `𝓑_1..𝓑_6`, `𝓚_1`, `𝓚_2`, `n = 2..16`.
fn c4() -> Outcome {
    let mut gap: f64 = 0.0;
    let mut dev: f64 = 0.0;
    for r in 1..=6u32 {
        let kr = favard_exact(r as usize).map_err(err)?.value;
        for n in 2..=16usize {
            let cert = certify(&KernelSpec::bernoulli(r).map_err(err)?, n, 1e-6).map_err(err)?;
            let want = kr / (n as f64).powi(r as i32);
            gap = gap.max(cert.gap());
            dev = dev.max((cert.lower - want).abs());
            ensure((cert.lower - want).abs() <= 1e-10, || format!("B{r}, n = {n}: lower {} vs {want}", cert.lower))?;
        }
    }
    for n in 2..=16usize {
        let x = PI / (2.0 * n as f64);
        for (which, want) in [(Quasi::K1, x.tan()), (Quasi::K2, 1.0 / x.cos() - 1.0)] {
            let cert = certify(&KernelSpec::quasi(which), n, 1e-6).map_err(err)?;
            gap = gap.max(cert.gap());
            dev = dev.max((cert.lower - want).abs());
            ensure((cert.lower - want).abs() <= 1e-10, || {
                format!("{which:?}, n = {n}: lower {} vs {want}", cert.lower)
            })?;
        }
    }
    Ok(format!("max gap {gap:.2e}, max |lower − closed form| {dev:.2e}"))
}

/// Steklov regimes for `m ∈ {1,2,3}`, `n ∈ {2,4,8}`.
fn c5() -> Outcome {
    let mut checked = [0usize; 3];
    let mut flat_dev: f64 = 0.0;
    let mut exact_dev: f64 = 0.0;
    for m in 1..=3u32 {
        let km = favard_exact(m as usize).map_err(err)?.value;
        for n in [2usize, 4, 8] {
            let nf = n as f64;
            let h = 1.0 / (4.0 * m as f64 * nf);
            let b = steklov_best(m, h, n, 1e-8).map_err(err)?;
            ensure(b.regime == SteklovRegime::Flat, || format!("m = {m}, n = {n}, h = {h}: regime {}", b.regime))?;
            let d = (b.lower - 1.0).abs().max((b.upper - 1.0).abs());
            flat_dev = flat_dev.max(d);
            ensure(d <= 1e-8 && b.certified, || format!("FLAT m = {m}, n = {n}: [{}, {}]", b.lower, b.upper))?;
            checked[0] += 1;

            let mut j = 1;
            loop {
                let h = j as f64 / (2.0 * nf);
                if m as f64 * h >= 1.0 {
                    break;
                }
                let b = steklov_best(m, h, n, 1e-6).map_err(err)?;
                let want = km / (PI * h * nf).powi(m as i32);
                ensure(b.regime == SteklovRegime::Exact, || format!("m = {m}, n = {n}, h = {h}: regime {}", b.regime))?;
                let d = (b.lower - want).abs().max((b.upper - want).abs());
                exact_dev = exact_dev.max(d);
                ensure(d <= 1e-6 && b.certified, || {
                    format!("EXACT m = {m}, n = {n}, h = {h}: [{}, {}] vs {want}", b.lower, b.upper)
                })?;
                checked[1] += 1;
                j += 2;
            }

            for h in [0.7 / nf, 0.3 / (m as f64)] {
                if m as f64 * h >= 1.0 || steklov_regime(m, h, n) != SteklovRegime::Bound {
                    continue;
                }
                let b = steklov_best(m, h, n, 1e-6).map_err(err)?;
                ensure(b.upper >= b.lower, || format!("BOUND m = {m}, n = {n}, h = {h}: [{}, {}]", b.lower, b.upper))?;
                checked[2] += 1;
            }
        }
    }
    Ok(format!(
        "{} FLAT (max dev {flat_dev:.1e}), {} EXACT (max dev {exact_dev:.1e}), {} BOUND cases",
        checked[0], checked[1], checked[2]
    ))
}

/// Bernoulli-sum Steklov kernel vs the B-spline oracle.
fn c6() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in 1..=4u32 {
        for h in [0.05, 0.1, 0.2] {
            let support = m as f64 * PI * h;
            for t in common::uniform_grid(4096) {
                // the box kernel (m = 1) is discontinuous at its edges
                let edge = (t.min(2.0 * PI - t) - support).abs();
                if m == 1 && edge < 1e-9 {
                    continue;
                }
                let got = steklov_eval(m, h, t, 1e-12).map_err(err)?;
                let want = common::steklov_bspline(m, h, t);
                let d = (got - want).abs();
                worst = worst.max(d);
                ensure(d <= 1e-8, || format!("m = {m}, h = {h}, θ = {t}: {got} vs {want}"))?;
            }
        }
    }
    Ok(format!("max |Bernoulli sum − B-spline| = {worst:.2e}"))
}

/// Laurent coefficients, golden reconstruction and parity vanishing.
fn c7() -> Outcome {
    let mut coef_dev: f64 = 0.0;
    let mut parity: f64 = 0.0;
    let mut recon: f64 = 0.0;
    for which in [Quasi::K1, Quasi::K2] {
        let tail = AnalyticTail::quasi(which);
        let contour = laurent_coeffs(&tail, 40, 4096).map_err(err)?;
        let residue = residue_coeffs(&tail, 40).map_err(err)?;
        for (i, (a, b)) in contour.iter().zip(&residue).enumerate() {
            let m = i + 1;
            let d = (a.value - b).norm();
            coef_dev = coef_dev.max(d);
            ensure(d <= 1e-10, || format!("{which:?} m = {m}: contour {} vs residue {b}", a.value))?;
            // 𝓚₁ has only odd-order terms, 𝓚₂ only even-order ones
            let vanishes = match which {
                Quasi::K1 => m % 2 == 0,
                Quasi::K2 => m % 2 == 1,
            };
            if vanishes {
                parity = parity.max(a.value.norm());
                ensure(a.value.norm() <= 1e-10, || format!("{which:?} c_{m} = {} should vanish", a.value))?;
            }
        }
        let g = golden_formula_check(which, 4096, 40).map_err(err)?;
        recon = recon.max(g.max_error);
        ensure(g.max_error <= 1e-8, || format!("{which:?}: reconstruction error {:.3e}", g.max_error))?;
    }
    Ok(format!("contour/residue {coef_dev:.1e}, parity {parity:.1e}, reconstruction {recon:.1e}"))
}

/// `e_n(𝓚₁)`, `e_n(𝓚₂)` against their two-term asymptotics.
fn c8() -> Outcome {
    let mut margin1 = f64::INFINITY;
    let mut margin2 = f64::INFINITY;
    for n in 2..=100usize {
        let nf = n as f64;
        let e1 = dual_lower(&KernelSpec::quasi(Quasi::K1), n, &SignPattern::new(PatternKind::SinN, n).map_err(err)?, 1e-14)
            .map_err(err)?;
        let e2 = dual_lower(&KernelSpec::quasi(Quasi::K2), n, &SignPattern::new(PatternKind::CosN, n).map_err(err)?, 1e-14)
            .map_err(err)?
            .abs();
        let a1 = PI / (2.0 * nf) + PI.powi(3) / (24.0 * nf.powi(3));
        let a2 = PI.powi(2) / (8.0 * nf * nf) + 5.0 * PI.powi(4) / (384.0 * nf.powi(4));
        ensure(e1 > a1, || format!("n = {n}: e_n(K1) = {e1} !> {a1}"))?;
        ensure(e2 > a2, || format!("n = {n}: e_n(K2) = {e2} !> {a2}"))?;
        margin1 = margin1.min(e1 - a1);
        margin2 = margin2.min(e2 - a2);
    }
    Ok(format!("smallest margins {margin1:.2e} (K1), {margin2:.2e} (K2)"))
}

/// The Lipschitz pipeline on the built-in functions.
fn c9() -> Outcome {
    let fs = vec![
        LipFunction::linear(),
        LipFunction::abs(),
        LipFunction::abs_shifted(0.5).map_err(err)?,
        LipFunction::abs_shifted(-0.5).map_err(err)?,
        LipFunction::smooth_sin(),
    ];
    let mut slack = f64::NEG_INFINITY;
    for f in &fs {
        for n in [2usize, 4, 8, 16, 32] {
            let p = build_polynomial(f, n, 1 << 14).map_err(err)?;
            ensure(p.degree() <= n, || format!("{} n = {n}: degree {}", f.name(), p.degree()))?;
            let chk = verify_bound(f, &p, n, 4096).map_err(err)?;
            slack = slack.max(chk.max_slack);
            ensure(chk.max_slack <= 1e-9, || format!("{} n = {n}: slack {:.3e}", f.name(), chk.max_slack))?;
        }
    }
    let c = LipFunction::constant(1.0);
    for n in [2usize, 4, 8, 16, 32] {
        let p = build_polynomial(&c, n, 1 << 12).map_err(err)?;
        let chk = verify_bound(&c, &p, n, 4096).map_err(err)?;
        ensure(chk.max_error == 0.0, || format!("const n = {n}: error {:.3e}", chk.max_error))?;
    }
    Ok(format!("max slack {slack:.3e}; constant reproduced exactly"))
}

/// `nT(n) → π/2` and `n²S(n) → π²/8`.
fn c10() -> Outcome {
    let dev = |n: usize| -> Result<f64, String> {
        let (t, _) = factors(n).map_err(err)?;
        Ok((n as f64 * t - PI / 2.0).abs())
    };
    ensure(dev(2)? <= 2.0, || "n = 2".into())?;
    let ns = [2usize, 4, 8, 16, 32, 64, 128, 256, 512, 1000];
    for w in ns.windows(2) {
        let (a, b) = (dev(w[0])?, dev(w[1])?);
        ensure(b < a, || format!("|nT(n) − π/2| not decreasing: {a} at {} vs {b} at {}", w[0], w[1]))?;
    }
    let d1000 = dev(1000)?;
    ensure(d1000 <= 1e-3, || format!("n = 1000: {d1000}"))?;
    let (_, s) = factors(1000).map_err(err)?;
    let ds = (1e6 * s - PI * PI / 8.0).abs();
    ensure(ds <= 1e-3, || format!("n²S(n) − π²/8 = {ds}"))?;
    Ok(format!("|nT − π/2| = {:.2e} → {d1000:.2e}, |n²S − π²/8| = {ds:.2e} at n = 1000", dev(2)?))
}

/// Partial fractions for `(π/4z) tan(πz/2)`.
fn c11() -> Outcome {
    let mut worst: f64 = 0.0;
    for z in [1.0 / 3.0, 0.5, 0.9] {
        let series = partial_fraction_tan(z, 1e-13).map_err(err)?;
        let closed = partial_fraction_closed(z).map_err(err)?;
        let direct = PI / (4.0 * z) * (PI * z / 2.0).tan();
        let d = (series - direct).abs().max((closed - direct).abs());
        worst = worst.max(d);
        ensure(d <= 1e-10, || format!("z = {z}: series {series} vs {direct}"))?;
    }
    Ok(format!("max deviation {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Favard constants: series vs exact, printed values", c1),
        ("generating function tan + sec", c2),
        ("ordering chain K_0 < K_2 < ... < 4/pi < ... < K_3 < K_1", c3),
        ("duality certificates for B1..B6, K1, K2", c4),
        ("Steklov FLAT / EXACT / BOUND regimes", c5),
        ("Steklov kernel vs B-spline oracle", c6),
        ("Laurent coefficients, golden reconstruction, parity", c7),
        ("e_n(K1), e_n(K2) above two-term asymptotics", c8),
        ("Lipschitz pipeline bound, degree, constants", c9),
        ("asymptotics of T(n) and S(n)", c10),
        ("partial fractions for tan", c11),
    ];
    let start = Instant::now();
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (out, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, secs))) in criteria.iter().zip(results).enumerate() {
        match out {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} — {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} — {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.2}s", criteria.len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
