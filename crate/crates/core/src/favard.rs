//! Favard constants `K_r = (4/π) Σ_{k ∈ 4ℤ+1} k^{-(r+1)}`.
//!
//! Three independent routes are provided: the defining series
//! ([`favard_series`]), the exact `π^r`-rational value from zigzag numbers
//! ([`favard_exact`]), and the generating function
//! `Σ K_r z^r = tan(πz/2) + sec(πz/2)` ([`generating_value`]).

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::tail::{power_tail, smooth_tail};
use crate::{Error, Result};

/// Largest order for which [`favard_exact`] is tabulated.
pub const MAX_EXACT_ORDER: usize = 64;

/// Zigzag numbers `A_0..=A_64` (coefficients of `tan z + sec z = Σ A_n zⁿ/n!`)
/// from the Seidel–Entringer boustrophedon triangle.
fn zigzag_table() -> &'static [BigUint] {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![BigUint::one()];
        let mut prev = vec![BigUint::one()];
        for n in 1..=MAX_EXACT_ORDER {
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::zero());
            for k in 1..=n {
                let next = &row[k - 1] + &prev[n - k];
                row.push(next);
            }
            out.push(row[n].clone());
            prev = row;
        }
        out
    })
}

/// The zigzag number `A_n` for `n ≤ 64`.
pub fn zigzag(n: usize) -> Result<&'static BigUint> {
    zigzag_table()
        .get(n)
        .ok_or(Error::OrderOutOfRange { order: n, min: 0, max: MAX_EXACT_ORDER })
}

/// `K_r` with its exact rational part: `value = numerator/denominator · π^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct FavardConstant {
    pub r: usize,
    pub value: f64,
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl FavardConstant {
    /// `"61/46080"`, or `"1"` when the denominator is one.
    pub fn rational(&self) -> String {
        if self.denominator.is_one() {
            self.numerator.to_string()
        } else {
            format!("{}/{}", self.numerator, self.denominator)
        }
    }
}

impl fmt::Display for FavardConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r {
            0 => write!(f, "{}", self.rational()),
            1 => write!(f, "{}·π", self.rational()),
            r => write!(f, "{}·π{}", self.rational(), superscript(r)),
        }
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

/// `π^r`, correcting for the rounding of `π` itself: with
/// `π = PI·(1 + δ)`, `π^r ≈ PI^r·(1 + rδ)`.
fn pi_pow(r: usize) -> f64 {
    const PI_LO: f64 = 1.2246467991473532e-16; // π − PI
    let delta = PI_LO / PI;
    PI.powi(r as i32) * (1.0 + r as f64 * delta)
}

/// Exact `K_r = A_r π^r / (2^r r!)`, reduced to lowest terms.
pub fn favard_exact(r: usize) -> Result<FavardConstant> {
    let a = zigzag(r)?;
    let mut den = BigUint::one() << r;
    for j in 2..=r {
        den *= BigUint::from(j);
    }
    let g = a.gcd(&den);
    let numerator = a / &g;
    let denominator = den / &g;
    let ratio = numerator.to_f64().unwrap_or(f64::INFINITY) / denominator.to_f64().unwrap_or(f64::INFINITY);
    Ok(FavardConstant { r, value: ratio * pi_pow(r), numerator, denominator })
}

/// Floating-point `K_r` from the exact table. Panics above order 64.
pub(crate) fn favard_value(r: usize) -> f64 {
    static VALUES: OnceLock<Vec<f64>> = OnceLock::new();
    VALUES.get_or_init(|| (0..=MAX_EXACT_ORDER).map(|r| favard_exact(r).unwrap().value).collect())[r]
}

/// `K_r` from its defining series, with the remainder after the direct part
/// summed by Euler–Maclaurin and its error kept below `tol`.
///
/// Odd `r` uses `(4/π) Σ (2k+1)^{-(r+1)}`, even `r` the alternating
/// `(4/π) Σ (−1)^k (2k+1)^{-(r+1)}`, split into the two residue classes
/// modulo 4 so each tail is monotone; for `r = 0` the classes diverge
/// separately and are summed in pairs instead.
pub fn favard_series(r: usize, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let s = (r + 1) as f64;
    let scaled_tol = tol * PI / 4.0;
    let sum = if r == 0 {
        // Leibniz series, summed in pairs 1/(4k+1) − 1/(4k+3) = 2/((4k+1)(4k+3))
        let pair = |x: f64| 2.0 / ((4.0 * x + 1.0) * (4.0 * x + 3.0));
        let mut k = 16usize;
        loop {
            let t = smooth_tail(pair, k as f64, 1.0);
            if t.error <= scaled_tol || k >= 1 << 24 {
                let head: f64 = (0..k).rev().map(|j| pair(j as f64)).sum();
                break head + t.value;
            }
            k *= 2;
        }
    } else if r % 2 == 1 {
        let mut k = 16usize;
        loop {
            let t = power_tail(1.0, s, (2 * k + 1) as f64, 2.0);
            if t.error <= scaled_tol || k >= 1 << 24 {
                let head: f64 = (0..k).rev().map(|j| ((2 * j + 1) as f64).powf(-s)).sum();
                break head + t.value;
            }
            k *= 2;
        }
    } else {
        let mut k = 16usize;
        loop {
            let plus = power_tail(1.0, s, (4 * k + 1) as f64, 4.0);
            let minus = power_tail(1.0, s, (4 * k + 3) as f64, 4.0);
            if plus.error + minus.error <= scaled_tol || k >= 1 << 24 {
                let head: f64 = (0..k)
                    .rev()
                    .map(|j| ((4 * j + 1) as f64).powf(-s) - ((4 * j + 3) as f64).powf(-s))
                    .sum();
                break head + (plus.value - minus.value);
            }
            k *= 2;
        }
    };
    Ok(4.0 / PI * sum)
}

/// `K(z) = tan(πz/2) + sec(πz/2)` for `|z| < 1`.
pub fn generating_value(z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(Error::invalid("z", format!("|z| must be < 1, got {z}")));
    }
    let x = PI * z / 2.0;
    Ok(x.tan() + 1.0 / x.cos())
}

fn is_odd_integer(z: f64) -> bool {
    let a = z.abs();
    let n = a.round();
    (a - n).abs() <= 1e-12 * a.max(1.0) && n % 2.0 == 1.0
}

/// Closed form `(π/4z) tan(πz/2)`, with the limit `π²/8` at `z = 0`.
pub fn partial_fraction_closed(z: f64) -> Result<f64> {
    if is_odd_integer(z) {
        return Err(Error::Pole { z });
    }
    if z.abs() < 1e-6 {
        // π²/8 + π⁴ z²/96 + ...
        return Ok(PI * PI / 8.0 + PI.powi(4) * z * z / 96.0);
    }
    Ok(PI / (4.0 * z) * (PI * z / 2.0).tan())
}

/// `Σ_{k≥0} 1 / ((2k+1)² − z²)` summed directly, with an Euler–Maclaurin
/// tail whose error is kept below `tol`.
pub fn partial_fraction_tan(z: f64, tol: f64) -> Result<f64> {
    if is_odd_integer(z) {
        return Err(Error::Pole { z });
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let term = move |x: f64| 1.0 / ((2.0 * x + 1.0).powi(2) - z * z);
    let mut k = (z.abs().ceil() as usize + 16).next_power_of_two();
    loop {
        let t = smooth_tail(term, k as f64, 1.0);
        if t.error <= tol || k >= 1 << 24 {
            let head: f64 = (0..k).rev().map(|j| term(j as f64)).sum();
            return Ok(head + t.value);
        }
        k *= 2;
    }
}
