//! Rational coefficients of the asymptotic series
//! `b_n / 7^n ~ (√3/π) Σ_{i>=7} κ_i / n^i`.
//!
//! The `Z^m log Z` term of `B` contributes `(-1)^{m+1} m! g_m / (n)_m` with
//! `(n)_m = n(n-1)⋯(n-m)`. Expanding `1/(n)_m = Σ_i S(i-1, m) / n^i`, with
//! `S` the Stirling numbers of the second kind, gives
//! `κ_i = Σ_{m=6}^{i-1} (-1)^{m+1} m! q_m S(i-1, m)` where `g_m = q_m √3/π`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expand::{rational_parts, MAX_ORDER};
use super::sym::sqrt3_over_pi;
use crate::ball::PrecReal;
use crate::error::{Error, Result};
use crate::series::int;

static G_CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();

/// Rational parts `q_m` of `g_m = q_m √3/π` for `m < order`.
pub fn g_rationals(order: usize) -> Result<Vec<BigRational>> {
    let cell = G_CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut cache = cell.lock().unwrap();
    if cache.len() < order {
        let parts = rational_parts(order)?;
        *cache = parts.y1.coeffs().iter().zip(parts.y2.coeffs()).map(|(a, b)| a + b).collect();
    }
    Ok(cache[..order].to_vec())
}

/// Stirling numbers of the second kind `S(n, k)` for `n, k <= n_max`.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n_max + 1]; n_max + 1];
    s[0][0] = BigInt::one();
    for n in 1..=n_max {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] + BigInt::from(k) * &s[n - 1][k];
        }
    }
    s
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |a, k| a * k)
}

fn check_range(i_max: usize) -> Result<()> {
    if !(7..=MAX_ORDER).contains(&i_max) {
        return Err(Error::OrderTooLarge { requested: i_max, available: MAX_ORDER });
    }
    Ok(())
}

/// `κ_7, …, κ_{i_max}`.
pub fn kappa(i_max: usize) -> Result<Vec<BigRational>> {
    check_range(i_max)?;
    let q = g_rationals(i_max)?;
    Ok(kappa_from_g(&q, i_max))
}

/// `κ_i` from given `q_m`, `m < i_max`.
pub fn kappa_from_g(q: &[BigRational], i_max: usize) -> Vec<BigRational> {
    let s = stirling2_table(i_max);
    (7..=i_max)
        .map(|i| {
            let mut acc = BigRational::zero();
            for m in 6..i {
                let sign = if m % 2 == 1 { int(1) } else { int(-1) };
                acc += sign * BigRational::from_integer(factorial(m) * &s[i - 1][m]) * &q[m];
            }
            acc
        })
        .collect()
}

/// Coefficients `ι_i = (-1)^i (i-1)! q_{i-1}` of the inverse-factorial
/// series `b_n / 7^n ~ (√3/π) Σ_i ι_i / (n)_{i-1}`. Only `ι_7` coincides
/// with `κ_7`.
pub fn inverse_factorial_coeffs(i_max: usize) -> Result<Vec<BigRational>> {
    check_range(i_max)?;
    let q = g_rationals(i_max)?;
    Ok((7..=i_max)
        .map(|i| {
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            sign * BigRational::from_integer(factorial(i - 1)) * &q[i - 1]
        })
        .collect())
}

/// `(√3/π) Σ_{i=7}^{order} κ_i / n^i`, the predicted `b_n / 7^n`.
pub fn asym_bn_scaled(n: usize, order: usize, prec: u32) -> Result<PrecReal> {
    if n == 0 {
        return Err(Error::Domain("asymptotic series needs n >= 1".into()));
    }
    let k = kappa(order)?;
    let nn = int(n as i64);
    let mut sum = BigRational::zero();
    for (j, kap) in k.iter().enumerate() {
        sum += kap / nn.pow(7 + j as i32);
    }
    Ok(sqrt3_over_pi(prec + 16).mul_rational(&sum).with_prec(prec))
}

/// `7^n (√3/π) Σ_{i=7}^{order} κ_i / n^i`.
pub fn asym_bn(n: usize, order: usize, prec: u32) -> Result<PrecReal> {
    Ok(asym_bn_scaled(n, order, prec)?.mul_int(&BigInt::from(7).pow(n as u32)))
}

/// The same truncation in the inverse-factorial basis,
/// `(√3/π) Σ_{i=7}^{order} ι_i / (n)_{i-1}`.
pub fn asym_bn_inverse_factorial_scaled(n: usize, order: usize, prec: u32) -> Result<PrecReal> {
    let c = inverse_factorial_coeffs(order)?;
    let mut sum = BigRational::zero();
    for (j, cj) in c.iter().enumerate() {
        let m = 6 + j;
        if n <= m {
            return Err(Error::Domain(format!("inverse-factorial term needs n > {m}")));
        }
        let falling: BigInt = (0..=m).fold(BigInt::one(), |a, t| a * (n - t));
        sum += cj / BigRational::from_integer(falling);
    }
    Ok(sqrt3_over_pi(prec + 16).mul_rational(&sum).with_prec(prec))
}
