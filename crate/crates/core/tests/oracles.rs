//! Library routines against the independent oracles in `common`.

mod common;

use std::f64::consts::PI;

use bestl1::best_l1::best_poly_candidate;
use bestl1::favard::favard_exact;
use bestl1::kernels::{bernoulli_eval, steklov_eval, KernelSpec, Quasi};

#[test]
fn bernoulli_closed_form_vs_direct_sum() {
    for r in 3..=8u32 {
        for t in common::uniform_grid(64) {
            let got = bernoulli_eval(r, t, 1e-13).unwrap();
            let want = common::bernoulli_direct(r, t, 100_000);
            assert!((got - want).abs() <= 1e-9, "r = {r}, θ = {t}: {got} vs {want}");
        }
    }
}

#[test]
fn candidates_are_node_interpolants() {
    let mut kernels: Vec<KernelSpec> = (1..=6).map(|r| KernelSpec::bernoulli(r).unwrap()).collect();
    kernels.push(KernelSpec::quasi(Quasi::K1));
    kernels.push(KernelSpec::quasi(Quasi::K2));
    for k in &kernels {
        for n in [2usize, 3, 5, 8, 13] {
            let cand = best_poly_candidate(k, n).unwrap();
            let odd = matches!(k.parity(), bestl1::kernels::Parity::Odd);
            let oracle = if odd {
                common::sine_interpolant(|t| k.eval(t), n)
            } else {
                common::cosine_interpolant(|t| k.eval(t), n)
            };
            for t in common::uniform_grid(97) {
                let want = if odd { common::eval_sine(&oracle, t) } else { common::eval_cosine(&oracle, t) };
                let got = cand.eval_re(t);
                assert!((got - want).abs() <= 1e-11, "{k} n = {n}, θ = {t}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn favard_table_vs_euler_bernoulli_numbers() {
    for r in 0..=6u32 {
        let got = favard_exact(r as usize).unwrap().value;
        let want = common::favard_by_numbers(r);
        assert!((got - want).abs() <= 1e-14 * want, "K_{r}: {got} vs {want}");
    }
}

#[test]
fn steklov_vs_bspline_wide_supports() {
    for m in 1..=4u32 {
        let h = 0.95 / m as f64;
        for t in common::uniform_grid(1024) {
            let edge = (t.min(2.0 * PI - t) - m as f64 * PI * h).abs();
            if m == 1 && edge < 1e-9 {
                continue;
            }
            let got = steklov_eval(m, h, t, 1e-13).unwrap();
            let want = common::steklov_bspline(m, h, t);
            assert!((got - want).abs() <= 1e-9, "m = {m}, θ = {t}: {got} vs {want}");
        }
    }
}
