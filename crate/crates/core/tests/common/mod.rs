//! Independent reference implementations used by the integration tests.
//!
//! Each oracle takes a different route from the library: B-splines instead
//! of Bernoulli sums, brute-force Fourier sums instead of closed forms,
//! discrete orthogonality instead of a linear solve, and Euler/Bernoulli
//! numbers instead of the zigzag table.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

/// Cardinal B-spline `M_m` on `[0, m]` by the Cox–de Boor recurrence, with
/// `M_1 = 1/2` at the endpoints of its support.
pub fn bspline(m: u32, u: f64) -> f64 {
    if m == 1 {
        return if u > 0.0 && u < 1.0 {
            1.0
        } else if u == 0.0 || u == 1.0 {
            0.5
        } else {
            0.0
        };
    }
    let mf = m as f64;
    (u * bspline(m - 1, u) + (mf - u) * bspline(m - 1, u - 1.0)) / (mf - 1.0)
}

/// The Steklov kernel `χ_h^m` as a B-spline: `M_m(u)/h` with
/// `u = (θ + mπh)/(2πh)`, summed over the periodic images.
pub fn steklov_bspline(m: u32, h: f64, theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    (-1..=1)
        .map(|j| {
            let u = (t + TAU * j as f64 + m as f64 * PI * h) / (TAU * h);
            bspline(m, u) / h
        })
        .sum()
}

/// `𝓑_r(θ) = 2 Σ_{k=1}^{terms} Re(i^{−r} e^{ikθ}) / k^r` summed directly
/// (largest terms last).
pub fn bernoulli_direct(r: u32, theta: f64, terms: usize) -> f64 {
    (1..=terms)
        .rev()
        .map(|k| {
            let kf = k as f64;
            let phase = kf * theta - r as f64 * PI / 2.0;
            2.0 * phase.cos() / kf.powi(r as i32)
        })
        .sum()
}

/// Sine polynomial of degree `n − 1` interpolating `f` at `jπ/n`,
/// `j = 1..n−1`, by DST-I orthogonality. Returns `b_1..b_{n−1}`.
pub fn sine_interpolant(f: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
    let nodes: Vec<f64> = (1..n).map(|j| PI * j as f64 / n as f64).collect();
    let vals: Vec<f64> = nodes.iter().map(|&t| f(t)).collect();
    (1..n)
        .map(|k| 2.0 / n as f64 * nodes.iter().zip(&vals).map(|(t, v)| v * (k as f64 * t).sin()).sum::<f64>())
        .collect()
}

/// Cosine polynomial of degree `n − 1` interpolating `f` at
/// `(2j+1)π/(2n)`, `j = 0..n−1`, by DCT-II orthogonality. Returns
/// `a_0..a_{n−1}` for `a_0 + Σ a_k cos kθ`.
pub fn cosine_interpolant(f: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
    let nodes: Vec<f64> = (0..n).map(|j| PI * (2 * j + 1) as f64 / (2 * n) as f64).collect();
    let vals: Vec<f64> = nodes.iter().map(|&t| f(t)).collect();
    (0..n)
        .map(|k| {
            let s: f64 = nodes.iter().zip(&vals).map(|(t, v)| v * (k as f64 * t).cos()).sum();
            if k == 0 {
                s / n as f64
            } else {
                2.0 * s / n as f64
            }
        })
        .collect()
}

pub fn eval_sine(b: &[f64], theta: f64) -> f64 {
    b.iter().enumerate().map(|(i, bk)| bk * ((i + 1) as f64 * theta).sin()).sum()
}

pub fn eval_cosine(a: &[f64], theta: f64) -> f64 {
    a.iter().enumerate().map(|(k, ak)| ak * (k as f64 * theta).cos()).sum()
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `K_r` for `r ≤ 6` from Bernoulli numbers (odd `r`, via `ζ(r+1)`) and
/// Euler numbers (even `r`, via Dirichlet's `β(r+1)`).
pub fn favard_by_numbers(r: u32) -> f64 {
    assert!(r <= 6, "oracle tabulated for r <= 6");
    if r % 2 == 1 {
        // K_r = (4/π)(1 − 2^{−2s}) ζ(2s), 2s = r + 1
        let s = r.div_ceil(2);
        let b2s = [1.0, 1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0][s as usize];
        let sign = if s % 2 == 1 { 1.0 } else { -1.0 };
        let zeta = sign * b2s * TAU.powi(2 * s as i32) / (2.0 * factorial(2 * s));
        4.0 / PI * (1.0 - 4f64.powi(-(s as i32))) * zeta
    } else {
        // K_r = (4/π) β(2s+1), β(2s+1) = (−1)^s E_{2s} π^{2s+1} / (4^{s+1} (2s)!)
        let s = r / 2;
        let e2s = [1.0, -1.0, 5.0, -61.0][s as usize];
        let sign = if s.is_multiple_of(2) { 1.0 } else { -1.0 };
        let beta = sign * e2s * PI.powi(2 * s as i32 + 1) / (4f64.powi(s as i32 + 1) * factorial(2 * s));
        4.0 / PI * beta
    }
}

/// `θ_j = 2πj/grid` for `j = 0..grid`.
pub fn uniform_grid(grid: usize) -> impl Iterator<Item = f64> {
    (0..grid).map(move |j| TAU * j as f64 / grid as f64)
}
