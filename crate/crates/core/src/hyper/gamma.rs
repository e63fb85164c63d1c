//! Gamma and digamma at rational arguments.
//!
//! Both shift the argument upward until the Stirling series reaches the
//! working precision, then undo the shift exactly. For real arguments the
//! Stirling remainder is bounded by the first omitted term. Negative
//! arguments go through the reflection formulas.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::{bits_for_digits, pi, sin_cos_pi, PrecReal};
use crate::error::{Error, Result};
use crate::series::{int, rat};

static BERNOULLI: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let cell = BERNOULLI.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut b = cell.lock().unwrap();
    while b.len() <= n {
        let m = b.len();
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0.
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * BigRational::from_integer(binom.clone());
            }
            binom = binom * (m + 1 - k) / (k + 1);
        }
        let next = -acc / int(m as i64 + 1);
        b.push(next);
    }
    b[..=n].to_vec()
}

fn check_pole(q: &BigRational) -> Result<()> {
    if q.is_integer() && !q.is_positive() {
        return Err(Error::Pole(q.to_string()));
    }
    Ok(())
}

/// Shift count so that `q + shift` exceeds the Stirling threshold for `wp`
/// bits. The smallest Stirling term is about `e^{-2π w}`.
fn shift_for(q: &BigRational, wp: u32) -> (u64, BigRational) {
    let threshold = (wp as f64 * 0.12).ceil() + 2.0;
    let qf = q.to_f64().unwrap_or(0.0);
    let shift = if qf >= threshold { 0 } else { (threshold - qf).ceil() as u64 };
    (shift, q + int(shift as i64))
}

/// Stirling series for `ln Γ(w)` minus its elementary part, i.e.
/// `Σ B_{2k} / (2k (2k-1) w^{2k-1})`, with the remainder bound folded in.
fn stirling_tail(w: &BigRational, wp: u32) -> Result<PrecReal> {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << wp);
    let mut sum = PrecReal::zero(wp);
    let w2 = w * w;
    let mut wpow = w.clone();
    let mut k = 1usize;
    loop {
        let b = bernoulli(2 * k + 2);
        let term = &b[2 * k] / (int((2 * k * (2 * k - 1)) as i64) * &wpow);
        sum = sum.add(&PrecReal::from_rational(&term, wp));
        let next_pow = &wpow * &w2;
        let next = (&b[2 * k + 2] / (int(((2 * k + 2) * (2 * k + 1)) as i64) * &next_pow)).abs();
        if next < eps {
            return Ok(sum.add_error(&next));
        }
        if next > term.abs() {
            return Err(Error::Precision("Stirling series diverged before reaching precision".into()));
        }
        wpow = next_pow;
        k += 1;
    }
}

fn ln_gamma_shifted(w: &BigRational, wp: u32) -> Result<PrecReal> {
    let wb = PrecReal::from_rational(w, wp);
    let ln_w = wb.ln();
    let half_ln_2pi = pi(wp).mul_int(&BigInt::from(2)).ln().mul_rational(&rat(1, 2));
    let main = wb.sub(&PrecReal::from_rational(&rat(1, 2), wp)).mul(&ln_w).sub(&wb).add(&half_ln_2pi);
    Ok(main.add(&stirling_tail(w, wp)?))
}

/// `Γ(q)` at working precision `prec` bits.
pub fn gamma_prec(q: &BigRational, prec: u32) -> Result<PrecReal> {
    check_pole(q)?;
    let wp = prec + 40;
    if q.is_negative() {
        let one_minus = BigRational::one() - q;
        let (s, _) = sin_cos_pi(q, wp);
        let g = gamma_prec(&one_minus, wp)?;
        return Ok(pi(wp).div(&s.mul(&g)).with_prec(prec));
    }
    let (shift, w) = shift_for(q, wp);
    let lg = ln_gamma_shifted(&w, wp)?;
    let mut prod = BigRational::one();
    for i in 0..shift {
        prod *= q + int(i as i64);
    }
    let g = lg.exp().div(&PrecReal::from_rational(&prod, wp));
    crate::ball::require_finite(g.with_prec(prec), "gamma")
}

/// `Γ(q)` to `digits` decimal digits.
pub fn gamma_rational(q: &BigRational, digits: u32) -> Result<PrecReal> {
    gamma_prec(q, bits_for_digits(digits))
}

/// `ψ₀(q)` at working precision `prec` bits.
pub fn digamma_prec(q: &BigRational, prec: u32) -> Result<PrecReal> {
    check_pole(q)?;
    let wp = prec + 40;
    if q.is_negative() {
        // ψ(q) = ψ(1 - q) - π cot(π q).
        let (s, c) = sin_cos_pi(q, wp);
        let d = digamma_prec(&(BigRational::one() - q), wp)?;
        return Ok(d.sub(&pi(wp).mul(&c).div(&s)).with_prec(prec));
    }
    let (shift, w) = shift_for(q, wp);
    let eps = BigRational::new(BigInt::one(), BigInt::one() << wp);
    let wb = PrecReal::from_rational(&w, wp);
    let mut sum = wb.ln().sub(&PrecReal::from_rational(&(BigRational::one() / (int(2) * &w)), wp));
    let w2 = &w * &w;
    let mut wpow = w2.clone();
    let mut k = 1usize;
    loop {
        let b = bernoulli(2 * k + 2);
        let term = &b[2 * k] / (int(2 * k as i64) * &wpow);
        sum = sum.sub(&PrecReal::from_rational(&term, wp));
        let next_pow = &wpow * &w2;
        let next = (&b[2 * k + 2] / (int(2 * k as i64 + 2) * &next_pow)).abs();
        if next < eps {
            sum = sum.add_error(&next);
            break;
        }
        if next > term.abs() {
            return Err(Error::Precision("digamma asymptotic series diverged".into()));
        }
        wpow = next_pow;
        k += 1;
    }
    let mut correction = BigRational::zero();
    for i in 0..shift {
        correction += BigRational::one() / (q + int(i as i64));
    }
    Ok(sum.sub(&PrecReal::from_rational(&correction, wp)).with_prec(prec))
}

/// `ψ₀(q)` to `digits` decimal digits.
pub fn digamma_rational(q: &BigRational, digits: u32) -> Result<PrecReal> {
    digamma_prec(q, bits_for_digits(digits))
}
