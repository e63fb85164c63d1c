//! Gauss hypergeometric function `2F1(a, b; c; z)` for rational parameters
//! and real ball arguments.
//!
//! Three regimes are supported: the defining series for `|z| <= 0.9`, the
//! logarithmic connection formula at `z = 1` for `c = a + b + 1` when
//! `0 < 1 - z < 0.9`, and Gauss's summation at exactly `z = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gamma::{digamma_prec, gamma_prec};
use crate::ball::{bits_for_digits, round_up, PrecReal};
use crate::error::{Error, Result};
use crate::series::{int, rat};

fn radius_limit() -> BigRational {
    rat(9, 10)
}

fn eps(wp: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << wp)
}

/// Tail of a series whose term ratio is eventually at most `q`.
fn geometric_tail(term: &BigRational, q: &BigRational) -> Option<BigRational> {
    (q < &BigRational::one()).then(|| term / (BigRational::one() - q))
}

/// `2F1(a, b; c; z)` to `digits` decimal digits.
pub fn hyp2f1(a: &BigRational, b: &BigRational, c: &BigRational, z: &PrecReal, digits: u32) -> Result<PrecReal> {
    hyp2f1_prec(a, b, c, z, bits_for_digits(digits))
}

/// Dispatches among the supported regimes at `prec` bits.
pub fn hyp2f1_prec(a: &BigRational, b: &BigRational, c: &BigRational, z: &PrecReal, prec: u32) -> Result<PrecReal> {
    if z.is_exact() && z.mid_rational().is_one() {
        return gauss_at_one(a, b, c, prec);
    }
    let abs_z = z.abs_upper().ok_or_else(|| Error::HypRegime("unbounded argument".into()))?;
    if abs_z <= radius_limit() {
        return direct_series(a, b, c, z, prec);
    }
    if c == &(a + b + BigRational::one()) && a.is_positive() && b.is_positive() {
        let w = PrecReal::from_int(1, z.prec()).sub(z);
        if w.is_positive() && w.abs_upper().unwrap() < radius_limit() {
            return connection(a, b, &w, prec).map(|p| p.value());
        }
    }
    Err(Error::HypRegime(format!("a={a}, b={b}, c={c}, z≈{}", z.to_f64())))
}

/// The defining power series with a certified geometric tail bound.
pub fn direct_series(a: &BigRational, b: &BigRational, c: &BigRational, z: &PrecReal, prec: u32) -> Result<PrecReal> {
    if c.is_integer() && !c.is_positive() {
        return Err(Error::HypRegime(format!("c={c} is a nonpositive integer")));
    }
    let wp = prec + 32;
    let z = z.with_prec(wp);
    let zmax = z.abs_upper().ok_or_else(|| Error::HypRegime("unbounded argument".into()))?;
    let zmax = round_up(&zmax, wp + 16);
    if zmax >= BigRational::one() {
        return Err(Error::HypRegime("direct series needs |z| < 1".into()));
    }
    let eps = eps(wp);
    let mut sum = PrecReal::from_int(1, wp);
    let mut term = PrecReal::from_int(1, wp);
    let mut coef = BigRational::one();
    let mut k: i64 = 0;
    let amax = a.abs();
    let bmax = b.abs();
    loop {
        let kk = int(k);
        let ratio = (a + &kk) * (b + &kk) / ((c + &kk) * (&kk + BigRational::one()));
        coef = round_up(&(coef * ratio.abs() * &zmax), wp + 16);
        term = term.mul_rational(&ratio).mul(&z);
        k += 1;
        let kk = int(k);
        // |term_k| <= coef.
        let mag = coef.clone();
        let past_parameters = kk > amax && kk > bmax && (c + &kk).is_positive();
        if past_parameters {
            let qa = ((&amax + &kk) / (&kk + BigRational::one())).max(BigRational::one());
            let qb = ((&bmax + &kk) / (c + &kk)).max(BigRational::one());
            let q = &zmax * qa * qb;
            if let Some(tail) = geometric_tail(&mag, &q) {
                if tail < eps {
                    return Ok(sum.add_error(&tail).with_prec(prec));
                }
            }
        }
        sum = sum.add(&term);
        if k > 200_000 {
            return Err(Error::Precision("hypergeometric series did not converge".into()));
        }
    }
}

/// `Γ(c) Γ(c-a-b) / (Γ(c-a) Γ(c-b))`, valid for `c > a + b`.
pub fn gauss_at_one(a: &BigRational, b: &BigRational, c: &BigRational, prec: u32) -> Result<PrecReal> {
    let s = c - a - b;
    if !s.is_positive() {
        return Err(Error::HypRegime(format!("Gauss summation needs c > a + b, got a={a}, b={b}, c={c}")));
    }
    let wp = prec + 16;
    let num = gamma_prec(c, wp)?.mul(&gamma_prec(&s, wp)?);
    let den = gamma_prec(&(c - a), wp)?.mul(&gamma_prec(&(c - b), wp)?);
    Ok(num.div(&den).with_prec(prec))
}

/// Pieces of `2F1(a, b; a+b+1; z) = C + S + log(1-z) T` at `w = 1 - z`.
#[derive(Clone, Debug)]
pub struct ConnectionParts {
    pub c_ab: PrecReal,
    pub s: PrecReal,
    pub t: PrecReal,
    pub log_w: PrecReal,
}

impl ConnectionParts {
    pub fn value(&self) -> PrecReal {
        self.c_ab.add(&self.s).add(&self.log_w.mul(&self.t))
    }
}

/// `(a+1)_k (b+1)_k / (k! (k+1)!)`, the coefficient shared by `T` and `S`.
pub fn connection_coeff(a: &BigRational, b: &BigRational, k: usize) -> BigRational {
    let mut t = BigRational::one();
    for j in 0..k {
        let jj = int(j as i64);
        t = t * (a + BigRational::one() + &jj) * (b + BigRational::one() + &jj)
            / (int(j as i64 + 1) * int(j as i64 + 2));
    }
    t
}

/// `c_k - c_0`, an exact rational because digamma steps by `1/x`.
pub fn digamma_shift(a: &BigRational, b: &BigRational, k: usize) -> BigRational {
    let mut d = BigRational::zero();
    for j in 0..k {
        let jj = int(j as i64);
        d += BigRational::one() / (a + &jj + BigRational::one()) + BigRational::one() / (b + &jj + BigRational::one())
            - BigRational::one() / (&jj + BigRational::one())
            - BigRational::one() / (&jj + int(2));
    }
    d
}

/// `c_0 = ψ(a+1) + ψ(b+1) - ψ(1) - ψ(2)`.
pub fn digamma_base(a: &BigRational, b: &BigRational, prec: u32) -> Result<PrecReal> {
    let one = BigRational::one();
    let p = digamma_prec(&(a + &one), prec)?
        .add(&digamma_prec(&(b + &one), prec)?)
        .sub(&digamma_prec(&one, prec)?)
        .sub(&digamma_prec(&int(2), prec)?);
    Ok(p)
}

/// Evaluates the connection formula with `w = 1 - z`, `0 < w < 0.9`.
///
/// With `c_{k+1} = c_k + 1/(a+k+1) + 1/(b+k+1) - 1/(k+1) - 1/(k+2)` only
/// `c_0` needs digamma values. For `a, b > 0` every `|c_k|` is at most
/// `(2a + 2b + 1)/(k + 1)`, which bounds the tail of `S`.
pub fn connection(a: &BigRational, b: &BigRational, w: &PrecReal, prec: u32) -> Result<ConnectionParts> {
    ConnectionConstants::new(a, b, prec)?.evaluate(w, prec)
}

/// Parameter-only factors of the connection formula, reusable across
/// arguments.
#[derive(Clone, Debug)]
pub struct ConnectionConstants {
    pub a: BigRational,
    pub b: BigRational,
    pub prec: u32,
    /// `Γ(a+b+1) / (Γ(a+1) Γ(b+1))`.
    pub c_ab: PrecReal,
    /// `Γ(a+b+1) / (Γ(a) Γ(b))`.
    pub pref: PrecReal,
    /// `c_0 = ψ(a+1) + ψ(b+1) - ψ(1) - ψ(2)`.
    pub c0: PrecReal,
}

impl ConnectionConstants {
    pub fn new(a: &BigRational, b: &BigRational, prec: u32) -> Result<Self> {
        if !(a.is_positive() && b.is_positive()) {
            return Err(Error::HypRegime("connection formula implemented for a, b > 0".into()));
        }
        let wp = prec + 32;
        let one = BigRational::one();
        let g_ab = gamma_prec(&(a + b + &one), wp)?;
        let c_ab = g_ab.div(&gamma_prec(&(a + &one), wp)?.mul(&gamma_prec(&(b + &one), wp)?));
        let pref = g_ab.div(&gamma_prec(a, wp)?.mul(&gamma_prec(b, wp)?));
        let c0 = digamma_base(a, b, wp)?;
        Ok(ConnectionConstants { a: a.clone(), b: b.clone(), prec: wp, c_ab, pref, c0 })
    }

    /// The parts of `2F1(a, b; a+b+1; 1-w)`.
    pub fn evaluate(&self, w: &PrecReal, prec: u32) -> Result<ConnectionParts> {
        let (a, b) = (&self.a, &self.b);
        let wp = (prec + 32).min(self.prec);
        let w = w.with_prec(wp);
        if !w.is_positive() {
            return Err(Error::HypRegime("connection formula needs 1 - z > 0".into()));
        }
        let wmax = round_up(&w.abs_upper().unwrap(), wp + 16);
        if wmax >= BigRational::one() {
            return Err(Error::HypRegime("connection formula needs |1 - z| < 1".into()));
        }
        let one = BigRational::one();
        let eps = eps(wp);
        let cbound_num = int(2) * a + int(2) * b + &one;
        let c0 = self.c0.with_prec(wp);

        let mut t_sum = PrecReal::zero(wp);
        let mut s_sum = PrecReal::zero(wp);
        let mut coef = BigRational::one();
        let mut delta = BigRational::zero();
        let mut wpow = w.clone();
        // Upper bound for |coef_k w^{k+1}|.
        let mut mag = wmax.clone();
        let mut k: usize = 0;
        loop {
            let term = wpow.mul_rational(&coef);
            t_sum = t_sum.add(&term);
            s_sum = s_sum.add(&term.mul(&c0.add_rational(&delta)));
            let kk = int(k as i64);
            let ratio = (a + &one + &kk) * (b + &one + &kk) / ((&kk + &one) * (&kk + int(2)));
            coef = coef * &ratio;
            mag = round_up(&(mag * ratio * &wmax), wp + 16);
            delta += &one / (a + &kk + &one) + &one / (b + &kk + &one) - &one / (&kk + &one) - &one / (&kk + int(2));
            wpow = wpow.mul(&w);
            k += 1;
            let kk = int(k as i64);
            let qa = ((a + &one + &kk) / (&kk + &one)).max(one.clone());
            let qb = ((b + &one + &kk) / (&kk + int(2))).max(one.clone());
            let q = &wmax * qa * qb;
            if let Some(tail) = geometric_tail(&mag, &q) {
                let s_tail = &tail * &cbound_num / (&kk + &one);
                if tail < eps && s_tail < eps {
                    t_sum = t_sum.add_error(&tail);
                    s_sum = s_sum.add_error(&s_tail);
                    break;
                }
            }
            if k > 200_000 {
                return Err(Error::Precision("connection series did not converge".into()));
            }
        }
        let pref = self.pref.with_prec(wp);
        Ok(ConnectionParts {
            c_ab: self.c_ab.with_prec(prec),
            s: pref.mul(&s_sum).with_prec(prec),
            t: pref.mul(&t_sum).with_prec(prec),
            log_w: w.ln().with_prec(prec),
        })
    }
}

/// Convenience for tests and callers that only want the value.
pub fn connection_value(a: &BigRational, b: &BigRational, z: &PrecReal, prec: u32) -> Result<PrecReal> {
    let w = PrecReal::from_int(1, z.prec()).sub(z);
    Ok(connection(a, b, &w, prec)?.value())
}

/// Rough magnitude of a rational, for diagnostics.
pub fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
