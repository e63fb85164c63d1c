//! Arbitrary-precision reals with a certified error radius.
//!
//! A [`PrecReal`] stores a fixed-point midpoint and radius, both in units of
//! `2^-prec`. Every operation rounds outward, so the exact result of the
//! same operation applied to any points inside the input balls lies inside
//! the output ball. Division by a ball containing zero yields an unbounded
//! ball rather than a panic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Guard bits added on top of the requested decimal precision.
pub const GUARD_BITS: u32 = 64;

/// Working precision in bits for a requested number of decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

#[derive(Clone, Debug)]
pub struct PrecReal {
    mid: BigInt,
    rad: BigUint,
    prec: u32,
    unbounded: bool,
}

/// Smallest multiple of `2^-bits` that is at least `q >= 0`.
pub(crate) fn round_up(q: &BigRational, bits: u32) -> BigRational {
    let scaled = q * BigRational::from_integer(pow2(bits));
    BigRational::new(scaled.ceil().to_integer(), pow2(bits))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `ceil(a / b)` for nonnegative integers.
fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Floor of `x / 2^s` together with whether bits were discarded.
fn shr_floor(x: &BigInt, s: u32) -> (BigInt, bool) {
    if s == 0 {
        return (x.clone(), false);
    }
    let q = x >> s;
    let exact = (&q << s) == *x;
    (q, !exact)
}

fn shr_ceil_u(x: &BigUint, s: u32) -> BigUint {
    if s == 0 {
        return x.clone();
    }
    let q: BigUint = x >> s;
    if (&q << s) == *x {
        q
    } else {
        q + 1u32
    }
}

impl PrecReal {
    pub fn zero(prec: u32) -> Self {
        PrecReal { mid: BigInt::zero(), rad: BigUint::zero(), prec, unbounded: false }
    }

    pub fn unbounded(prec: u32) -> Self {
        PrecReal { mid: BigInt::zero(), rad: BigUint::zero(), prec, unbounded: true }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        PrecReal { mid: n.into() << prec, rad: BigUint::zero(), prec, unbounded: false }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(n, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = q.numer() << prec;
        let (m, r) = num.div_mod_floor(q.denom());
        let rad = if r.is_zero() { BigUint::zero() } else { BigUint::one() };
        PrecReal { mid: m, rad, prec, unbounded: false }
    }

    /// A ball with the given midpoint and an explicit radius bound.
    pub fn from_rational_with_radius(q: &BigRational, radius: &BigRational, prec: u32) -> Self {
        Self::from_rational(q, prec).add_error(radius)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_finite(&self) -> bool {
        !self.unbounded
    }

    pub fn is_exact(&self) -> bool {
        !self.unbounded && self.rad.is_zero()
    }

    pub fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad_raw(&self) -> &BigUint {
        &self.rad
    }

    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(self.mid.clone(), pow2(self.prec))
    }

    /// Radius as an exact rational (infinite balls report `None`).
    pub fn rad_rational(&self) -> Option<BigRational> {
        (!self.unbounded).then(|| BigRational::new(BigInt::from(self.rad.clone()), pow2(self.prec)))
    }

    pub fn lower(&self) -> Option<BigRational> {
        self.rad_rational().map(|r| self.mid_rational() - r)
    }

    pub fn upper(&self) -> Option<BigRational> {
        self.rad_rational().map(|r| self.mid_rational() + r)
    }

    pub fn to_f64(&self) -> f64 {
        if self.unbounded {
            return f64::NAN;
        }
        ratio_to_f64(&self.mid, self.prec)
    }

    pub fn radius_f64(&self) -> f64 {
        if self.unbounded {
            return f64::INFINITY;
        }
        ratio_to_f64(&BigInt::from(self.rad.clone()), self.prec)
    }

    /// Same value at a different precision; lowering the precision widens
    /// the radius by the rounding error.
    pub fn with_prec(&self, prec: u32) -> Self {
        if self.unbounded {
            return Self::unbounded(prec);
        }
        if prec >= self.prec {
            let s = prec - self.prec;
            PrecReal { mid: &self.mid << s, rad: &self.rad << s, prec, unbounded: false }
        } else {
            let s = self.prec - prec;
            let (m, lost) = shr_floor(&self.mid, s);
            let mut rad = shr_ceil_u(&self.rad, s);
            if lost {
                rad += 1u32;
            }
            PrecReal { mid: m, rad, prec, unbounded: false }
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let p = a.prec.max(b.prec);
        (a.with_prec(p), b.with_prec(p))
    }

    /// Widens the radius by an exact nonnegative bound.
    pub fn add_error(&self, err: &BigRational) -> Self {
        if self.unbounded {
            return self.clone();
        }
        let scaled = err.abs() * BigRational::from_integer(pow2(self.prec));
        let units = scaled.ceil().to_integer().to_biguint().unwrap_or_default();
        PrecReal { rad: &self.rad + units, ..self.clone() }
    }

    /// Widens the radius by another ball's upper magnitude.
    pub fn add_error_ball(&self, err: &PrecReal) -> Self {
        match err.abs_upper() {
            Some(e) => self.add_error(&e),
            None => Self::unbounded(self.prec),
        }
    }

    /// Upper bound on `|x|`.
    pub fn abs_upper(&self) -> Option<BigRational> {
        self.rad_rational().map(|r| self.mid_rational().abs() + r)
    }

    /// Lower bound on `|x|` (zero when the ball straddles zero).
    pub fn abs_lower(&self) -> Option<BigRational> {
        let r = self.rad_rational()?;
        let m = self.mid_rational().abs();
        Some(if m > r { m - r } else { BigRational::zero() })
    }

    pub fn contains_zero(&self) -> bool {
        self.unbounded || self.mid.magnitude() <= &self.rad
    }

    pub fn is_positive(&self) -> bool {
        !self.unbounded && self.mid.sign() == Sign::Plus && self.mid.magnitude() > &self.rad
    }

    pub fn is_negative(&self) -> bool {
        !self.unbounded && self.mid.sign() == Sign::Minus && self.mid.magnitude() > &self.rad
    }

    /// True when the two balls share a point.
    pub fn overlaps(&self, other: &Self) -> bool {
        if self.unbounded || other.unbounded {
            return true;
        }
        let (a, b) = Self::aligned(self, other);
        let d = (&a.mid - &b.mid).magnitude().clone();
        d <= &a.rad + &b.rad
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        match self.rad_rational() {
            None => true,
            Some(r) => (self.mid_rational() - q).abs() <= r,
        }
    }

    /// True when every point of `other` lies inside `self`.
    pub fn contains(&self, other: &Self) -> bool {
        if self.unbounded {
            return true;
        }
        if other.unbounded {
            return false;
        }
        let (a, b) = Self::aligned(self, other);
        let d = (&a.mid - &b.mid).magnitude().clone();
        d + &b.rad <= a.rad
    }

    pub fn neg(&self) -> Self {
        PrecReal { mid: -&self.mid, ..self.clone() }
    }

    pub fn abs(&self) -> Self {
        if self.contains_zero() && !self.unbounded {
            // |x| ranges over [0, |m| + r]; centre that interval.
            let hi = self.mid.magnitude() + &self.rad;
            let half = ceil_div(&hi, &BigUint::from(2u32));
            return PrecReal { mid: BigInt::from(half.clone()), rad: half, ..self.clone() };
        }
        PrecReal { mid: self.mid.abs(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.unbounded || other.unbounded {
            return Self::unbounded(self.prec.max(other.prec));
        }
        let (a, b) = Self::aligned(self, other);
        PrecReal { mid: a.mid + b.mid, rad: a.rad + b.rad, prec: a.prec, unbounded: false }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.unbounded || other.unbounded {
            return Self::unbounded(self.prec.max(other.prec));
        }
        let (a, b) = Self::aligned(self, other);
        let p = a.prec;
        let (mid, lost) = shr_floor(&(&a.mid * &b.mid), p);
        let raw = a.mid.magnitude() * &b.rad + b.mid.magnitude() * &a.rad + &a.rad * &b.rad;
        let mut rad = shr_ceil_u(&raw, p);
        if lost {
            rad += 1u32;
        }
        PrecReal { mid, rad, prec: p, unbounded: false }
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    pub fn div(&self, other: &Self) -> Self {
        if self.unbounded || other.unbounded || other.contains_zero() {
            return Self::unbounded(self.prec.max(other.prec));
        }
        let (a, b) = Self::aligned(self, other);
        let p = a.prec;
        let num = &a.mid << p;
        let (mid, rem) = num.div_mod_floor(&b.mid);
        let bm = b.mid.magnitude().clone();
        let raw = (&a.rad * &bm + a.mid.magnitude() * &b.rad) << p;
        let den = &bm * (&bm - &b.rad);
        let mut rad = ceil_div(&raw, &den);
        if !rem.is_zero() {
            rad += 1u32;
        }
        PrecReal { mid, rad, prec: p, unbounded: false }
    }

    pub fn recip(&self) -> Self {
        Self::from_int(1, self.prec).div(self)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        if q.denom().is_one() {
            return self.mul_int(q.numer());
        }
        self.mul_int(q.numer()).div_int(q.denom())
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        self.add(&Self::from_rational(q, self.prec))
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        if self.unbounded {
            return self.clone();
        }
        PrecReal { mid: &self.mid * k, rad: &self.rad * k.magnitude(), prec: self.prec, unbounded: false }
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        if self.unbounded || k.is_zero() {
            return Self::unbounded(self.prec);
        }
        let (mid, rem) = self.mid.div_mod_floor(k);
        let mut rad = ceil_div(&self.rad, k.magnitude());
        if !rem.is_zero() {
            rad += 1u32;
        }
        PrecReal { mid, rad, prec: self.prec, unbounded: false }
    }

    /// Exact scaling by `2^k`; a negative `k` that drops bits widens the
    /// radius.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.unbounded {
            return self.clone();
        }
        if k >= 0 {
            PrecReal { mid: &self.mid << k as u32, rad: &self.rad << k as u32, ..self.clone() }
        } else {
            let s = (-k) as u32;
            let (mid, lost) = shr_floor(&self.mid, s);
            let mut rad = shr_ceil_u(&self.rad, s);
            if lost {
                rad += 1u32;
            }
            PrecReal { mid, rad, ..self.clone() }
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut result = Self::from_int(1, self.prec);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    pub fn sqrt(&self) -> Self {
        if self.unbounded || self.is_negative() {
            return Self::unbounded(self.prec);
        }
        let p = self.prec;
        let m = self.mid.magnitude();
        if self.contains_zero() {
            // sqrt ranges over [0, sqrt(m + r)].
            let hi = ((m + &self.rad) << p).sqrt() + 1u32;
            let half = ceil_div(&hi, &BigUint::from(2u32));
            return PrecReal { mid: BigInt::from(half.clone()), rad: half, prec: p, unbounded: false };
        }
        let root = (m << p).sqrt();
        let exact = &root * &root == (m << p);
        let mut rad = BigUint::zero();
        if !self.rad.is_zero() {
            let low = ((m - &self.rad) << p).sqrt();
            if low.is_zero() {
                return Self::unbounded(p);
            }
            rad = ceil_div(&(&self.rad << p), &low);
        }
        if !exact {
            rad += 1u32;
        }
        PrecReal { mid: BigInt::from(root), rad, prec: p, unbounded: false }
    }

    pub fn min_by_mid(self, other: Self) -> Self {
        if self.to_f64() <= other.to_f64() {
            self
        } else {
            other
        }
    }

    /// Natural logarithm; unbounded unless the ball is strictly positive.
    pub fn ln(&self) -> Self {
        if !self.is_positive() {
            return Self::unbounded(self.prec);
        }
        let p = self.prec;
        let wp = p + 32;
        let m = self.mid.magnitude().clone();
        // value = m 2^-p = y 2^e with y in [1/2, 1).
        let e = m.bits() as i64 - p as i64;
        let y = BigRational::new(BigInt::from(m.clone()), pow2((p as i64 + e) as u32));
        let yb = PrecReal::from_rational(&y, wp);
        let one = PrecReal::from_int(1, wp);
        let t = yb.sub(&one).div(&yb.add(&one));
        let t2 = t.sqr();
        let eps = BigRational::new(BigInt::one(), pow2(wp));
        let t_abs = t.abs_upper().unwrap();
        let t2_abs = round_up(&(&t_abs * &t_abs), wp + 16);
        let mut sum = PrecReal::zero(wp);
        let mut power = t.clone();
        let mut mag = t_abs.clone();
        let mut j: i64 = 0;
        loop {
            sum = sum.add(&power.div_int(&BigInt::from(2 * j + 1)));
            power = power.mul(&t2);
            mag = round_up(&(&mag * &t2_abs), wp + 16);
            j += 1;
            // Remaining terms are bounded by a geometric series in t^2 <= 1/9.
            let tail = &mag / BigRational::from_integer(BigInt::from(2 * j + 1)) * crate::series::rat(9, 8);
            if tail < eps || mag.is_zero() {
                sum = sum.add_error(&tail);
                break;
            }
        }
        let mut result = sum.mul_int(&BigInt::from(2)).add(&ln2(wp).mul_int(&BigInt::from(e)));
        // Propagate the input radius: |ln(v + d) - ln v| <= r / (v - r).
        if !self.rad.is_zero() {
            let r = BigRational::new(BigInt::from(self.rad.clone()), BigInt::one());
            let lo = BigRational::new(BigInt::from(&m - &self.rad), BigInt::one());
            result = result.add_error(&(r / lo));
        }
        result.with_prec(p)
    }

    /// Exponential function.
    pub fn exp(&self) -> Self {
        if self.unbounded {
            return self.clone();
        }
        let p = self.prec;
        let v = self.to_f64();
        if !v.is_finite() || v.abs() > 1.0e7 {
            return Self::unbounded(p);
        }
        let k = (v / std::f64::consts::LN_2).round() as i64;
        let halvings: u32 = 12;
        let wp = p + 48 + halvings;
        let point = PrecReal { rad: BigUint::zero(), ..self.clone() }.with_prec(wp);
        let r = point.sub(&ln2(wp).mul_int(&BigInt::from(k))).mul_pow2(-(halvings as i64));
        let eps = BigRational::new(BigInt::one(), pow2(wp));
        let r_abs = r.abs_upper().unwrap();
        let mut sum = PrecReal::from_int(1, wp);
        let mut term = PrecReal::from_int(1, wp);
        let mut mag = BigRational::one();
        let mut j: i64 = 1;
        loop {
            term = term.mul(&r).div_int(&BigInt::from(j));
            mag = round_up(&(mag * &r_abs / BigRational::from_integer(BigInt::from(j))), wp + 16);
            sum = sum.add(&term);
            j += 1;
            // With |r| < 1/2 the remaining tail is at most twice the next term.
            let tail = &mag * &r_abs * crate::series::rat(2, j);
            if tail < eps {
                sum = sum.add_error(&tail);
                break;
            }
        }
        for _ in 0..halvings {
            sum = sum.sqr();
        }
        let mut result = sum.mul_pow2(k);
        if !self.rad.is_zero() {
            // exp(v + d) - exp(v) <= exp(v) (e^r - 1) <= 2 r exp(v) for r <= 1.
            let r = self.rad_rational().unwrap();
            if r > BigRational::one() {
                return Self::unbounded(p);
            }
            let bound = result.abs_upper().unwrap() * r * BigRational::from_integer(BigInt::from(2));
            result = result.add_error(&bound);
        }
        result.with_prec(p)
    }

    /// Decimal rendering of the midpoint with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.unbounded {
            return "nan".into();
        }
        format_sig(&self.mid_rational(), sig)
    }

    /// Short scientific rendering of the radius, rounded up.
    pub fn radius_string(&self) -> String {
        if self.unbounded {
            return "inf".into();
        }
        if self.rad.is_zero() {
            return "0".into();
        }
        let r = self.rad_rational().unwrap();
        format_upper_sci(&r)
    }
}

fn ratio_to_f64(n: &BigInt, prec: u32) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let shift = n.bits() as i64 - 60;
    let top = if shift > 0 { n >> shift as u32 } else { n << (-shift) as u32 };
    let mut v = top.to_f64().unwrap_or(f64::NAN);
    let mut e = shift - prec as i64;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Rounds `q` to `sig` significant decimal digits.
pub fn format_sig(q: &BigRational, sig: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let sig = sig.max(1);
    let mut e = decimal_exponent(&a);
    let ten = BigInt::from(10);
    let digits = loop {
        let scale = sig as i64 - 1 - e;
        let scaled = if scale >= 0 {
            &a * BigRational::from_integer(ten.pow(scale as u32))
        } else {
            &a / BigRational::from_integer(ten.pow((-scale) as u32))
        };
        let r = scaled.round().to_integer();
        let s = r.to_string();
        if s.len() > sig {
            e += 1;
            continue;
        }
        break s;
    };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 && (e as usize) < sig {
        let (int_part, frac) = digits.split_at(e as usize + 1);
        out.push_str(int_part);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else if e < 0 && e > -8 {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    } else {
        out.push_str(&digits[..1]);
        if sig > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push_str(&format!("e{e}"));
    }
    out
}

/// `floor(log10 a)` for a positive rational.
fn decimal_exponent(a: &BigRational) -> i64 {
    let approx = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut e = approx.floor() as i64 - 1;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow = |k: i64| ten.pow(k as i32);
    while pow(e + 1) <= *a {
        e += 1;
    }
    while pow(e) > *a {
        e -= 1;
    }
    e
}

/// Two significant digits, rounded up, in scientific notation.
fn format_upper_sci(r: &BigRational) -> String {
    let e = decimal_exponent(r);
    let ten = BigRational::from_integer(BigInt::from(10));
    let scaled = r / ten.pow((e - 1) as i32);
    let mut m = scaled.ceil().to_integer();
    let mut e = e;
    if m >= BigInt::from(100) {
        m = (m + 9) / 10;
        e += 1;
    }
    let s = m.to_string();
    format!("{}.{}e{}", &s[..1], &s[1..], e)
}

impl fmt::Display for PrecReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20);
        write!(f, "{} +/- {}", self.to_decimal(sig), self.radius_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a PrecReal> for &'a PrecReal {
            type Output = PrecReal;
            fn $m(self, rhs: &'a PrecReal) -> PrecReal {
                PrecReal::$m(self, rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Div<&PrecReal> for &PrecReal {
    type Output = PrecReal;
    fn div(self, rhs: &PrecReal) -> PrecReal {
        PrecReal::div(self, rhs)
    }
}

impl Neg for &PrecReal {
    type Output = PrecReal;
    fn neg(self) -> PrecReal {
        PrecReal::neg(self)
    }
}

/// Fails with a precision error when a ball has become useless.
pub fn require_finite(x: PrecReal, what: &str) -> Result<PrecReal> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Precision(format!("{what} lost all precision")))
    }
}

type ConstCache = Mutex<HashMap<u32, PrecReal>>;

fn cached(cell: &'static OnceLock<ConstCache>, prec: u32, compute: fn(u32) -> PrecReal) -> PrecReal {
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = compute(prec);
    map.lock().unwrap().insert(prec, v.clone());
    v
}

/// `Σ_j s^j / ((2j+1) k^{2j+1})` in fixed point at `wp` bits, with `s` = -1
/// for arctan and +1 for artanh. Returns the sum and an error bound in
/// units of `2^-wp`.
fn inverse_series(k: u64, alternating: bool, wp: u32) -> (BigInt, u64) {
    let one = pow2(wp);
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = k.clone();
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let term = &one / (&power * BigInt::from(2 * j + 1));
        if term.is_zero() {
            break;
        }
        if alternating && j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power *= &k2;
        j += 1;
    }
    // Each truncated term is off by < 1 unit; the tail is < 2 units.
    (sum, j + 2)
}

fn compute_pi(prec: u32) -> PrecReal {
    let wp = prec + 16;
    let (a5, e5) = inverse_series(5, true, wp);
    let (a239, e239) = inverse_series(239, true, wp);
    let mid = a5 * 16 - a239 * 4;
    let rad = BigUint::from(16 * e5 + 4 * e239);
    PrecReal { mid, rad, prec: wp, unbounded: false }.with_prec(prec)
}

fn compute_ln2(prec: u32) -> PrecReal {
    let wp = prec + 16;
    let (s, e) = inverse_series(3, false, wp);
    PrecReal { mid: s * 2, rad: BigUint::from(2 * e), prec: wp, unbounded: false }.with_prec(prec)
}

static PI_CACHE: OnceLock<ConstCache> = OnceLock::new();
static LN2_CACHE: OnceLock<ConstCache> = OnceLock::new();

/// π by Machin's formula.
pub fn pi(prec: u32) -> PrecReal {
    cached(&PI_CACHE, prec, compute_pi)
}

/// ln 2 as 2 artanh(1/3).
pub fn ln2(prec: u32) -> PrecReal {
    cached(&LN2_CACHE, prec, compute_ln2)
}

pub fn sqrt3(prec: u32) -> PrecReal {
    PrecReal::from_int(3, prec + 8).sqrt().with_prec(prec)
}

/// `sin(π q)` and `cos(π q)` for rational `q`.
pub fn sin_cos_pi(q: &BigRational, prec: u32) -> (PrecReal, PrecReal) {
    // Reduce q to [-1, 1).
    let two = BigRational::from_integer(BigInt::from(2));
    let mut r = q - (&(q + BigRational::one()) / &two).floor() * &two;
    let one = BigRational::one();
    if r >= one {
        r -= &two;
    }
    // Reduce further to [-1/2, 1/2] using sin(π - x) = sin x, cos(π - x) = -cos x.
    let half = crate::series::rat(1, 2);
    let mut cos_sign = 1;
    if r > half {
        r = &one - &r;
        cos_sign = -1;
    } else if r < -half.clone() {
        r = -&one - &r;
        cos_sign = -1;
    }
    let wp = prec + 32;
    let x = pi(wp).mul_rational(&r);
    let x2 = x.sqr();
    let eps = BigRational::new(BigInt::one(), pow2(wp));
    let x_abs = x.abs_upper().unwrap();
    let x2_abs = round_up(&(&x_abs * &x_abs), wp + 16);
    let series = |start: PrecReal, start_mag: BigRational, first: i64| -> PrecReal {
        let mut sum = start.clone();
        let mut term = start;
        let mut mag = start_mag;
        let mut n = first;
        loop {
            let d = BigInt::from((n + 1) * (n + 2));
            term = term.mul(&x2).div_int(&d).neg();
            mag = round_up(&(mag * &x2_abs / BigRational::from_integer(d)), wp + 16);
            sum = sum.add(&term);
            n += 2;
            let next = &mag * &x2_abs / BigRational::from_integer(BigInt::from((n + 1) * (n + 2)));
            if next < eps {
                // Alternating with decreasing terms (|x| <= π/2).
                return sum.add_error(&next);
            }
        }
    };
    let sin = series(x.clone(), x_abs.clone(), 1);
    let cos = series(PrecReal::from_int(1, wp), BigRational::one(), 0);
    let cos = if cos_sign < 0 { cos.neg() } else { cos };
    (sin.with_prec(prec), cos.with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    const PI_50: &str = "3.1415926535897932384626433832795028841971693993751";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436026";
    const E_50: &str = "2.7182818284590452353602874713526624977572470937000";

    fn parse_dec(s: &str) -> BigRational {
        let (i, f) = s.split_once('.').unwrap();
        let n: BigInt = format!("{i}{f}").parse().unwrap();
        BigRational::new(n, BigInt::from(10).pow(f.len() as u32))
    }

    fn close(x: &PrecReal, s: &str, tol: f64) {
        let d = (x.mid_rational() - parse_dec(s)).abs();
        let tol = BigRational::from_float(tol).unwrap();
        assert!(d < tol, "{x} vs {s}");
    }

    #[test]
    fn constants_match_references() {
        let p = bits_for_digits(60);
        close(&pi(p), PI_50, 1e-49);
        close(&ln2(p), LN2_50, 1e-49);
        close(&PrecReal::from_int(1, p).exp(), E_50, 1e-49);
        assert!(pi(p).contains_rational(&parse_dec(PI_50)) || pi(p).radius_f64() < 1e-60);
    }

    #[test]
    fn arithmetic_is_exact_when_possible() {
        let p = 128;
        let a = PrecReal::from_rational(&rat(3, 4), p);
        let b = PrecReal::from_rational(&rat(1, 2), p);
        assert!(a.mul(&b).is_exact());
        assert_eq!(a.mul(&b).mid_rational(), rat(3, 8));
        assert_eq!(a.div(&b).mid_rational(), rat(3, 2));
        assert!(PrecReal::from_int(16, p).sqrt().is_exact());
    }

    #[test]
    fn division_by_zero_ball_is_unbounded() {
        let p = 64;
        let z = PrecReal::zero(p).add_error(&rat(1, 100));
        assert!(!PrecReal::from_int(1, p).div(&z).is_finite());
    }

    #[test]
    fn ln_and_exp_invert_each_other() {
        let p = bits_for_digits(40);
        for q in [rat(1, 7), rat(5, 3), rat(1000, 1), rat(1, 1_000_000)] {
            let x = PrecReal::from_rational(&q, p);
            let back = x.ln().exp();
            assert!(back.contains_rational(&q), "{q}: {back}");
        }
        let x = PrecReal::from_int(10, p).ln();
        close(&x, "2.3025850929940456840179914546843642076011014886288", 1e-45);
    }

    #[test]
    fn trig_values() {
        let p = bits_for_digits(40);
        let (s, c) = sin_cos_pi(&rat(1, 6), p);
        assert!(s.contains_rational(&rat(1, 2)));
        close(&c, "0.86602540378443864676372317075293618347140262690519", 1e-40);
        let (s, c) = sin_cos_pi(&rat(7, 3), p);
        close(&s, "0.86602540378443864676372317075293618347140262690519", 1e-40);
        assert!(c.contains_rational(&rat(1, 2)));
        let (s, c) = sin_cos_pi(&rat(-5, 4), p);
        close(&s, "0.70710678118654752440084436210484903928483593768847", 1e-40);
        close(&c.neg(), "0.70710678118654752440084436210484903928483593768847", 1e-40);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_sig(&rat(22, 7), 5), "3.1429");
        assert_eq!(format_sig(&rat(-1, 8), 3), "-0.125");
        assert_eq!(format_sig(&rat(123456, 1), 3), "1.23e5");
        assert_eq!(format_sig(&rat(999, 1000), 2), "1.0");
        assert_eq!(format_sig(&rat(1, 1), 1), "1");
        let r = PrecReal::from_int(1, 64).add_error(&rat(1, 1024));
        assert_eq!(r.radius_string(), "9.8e-4");
    }
}
