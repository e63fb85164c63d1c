//! Truncated power series with exact rational coefficients.
//!
//! A series of order `N` knows its coefficients for exponents `0..N`; every
//! coefficient from `N` on is unknown rather than zero. Binary operations
//! therefore truncate to the smaller of the two orders.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Products with fewer output coefficients than this stay on one thread.
const PAR_THRESHOLD: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl ExactSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(ExactSeries { coeffs })
    }

    pub fn from_integers<I, T>(iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(iter.into_iter().map(|c| int(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        ExactSeries { coeffs: vec![BigRational::zero(); order.max(1)] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The series `x`, known to `order` terms.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if s.coeffs.len() > 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// A polynomial viewed as a series of the given order.
    pub fn from_poly(poly: &[BigRational], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in poly.iter().enumerate().take(s.order()) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    /// `1/(1 - x)` to the given order.
    pub fn geometric(order: usize) -> Self {
        ExactSeries { coeffs: vec![BigRational::one(); order.max(1)] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> Option<&BigRational> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.clamp(1, self.order());
        ExactSeries { coeffs: self.coeffs[..n].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        ExactSeries { coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        ExactSeries { coeffs: (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> Self {
        ExactSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        ExactSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        self.mul_to(other, n)
    }

    /// Cauchy product computed only up to `order` terms (never beyond what
    /// both inputs know).
    pub fn mul_to(&self, other: &Self, order: usize) -> Self {
        let n = order.min(self.order()).min(other.order()).max(1);
        let (fa, da) = integer_form(&self.coeffs[..n]);
        let (fb, db) = integer_form(&other.coeffs[..n]);
        let den = da * db;
        let coeff = |k: usize| -> BigRational {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                if fa[i].is_zero() || fb[k - i].is_zero() {
                    continue;
                }
                acc += &fa[i] * &fb[k - i];
            }
            BigRational::new(acc, den.clone())
        };
        let coeffs =
            if n >= PAR_THRESHOLD { (0..n).into_par_iter().map(coeff).collect() } else { (0..n).map(coeff).collect() };
        ExactSeries { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Degenerate("series with zero constant term has no inverse".into()));
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(ExactSeries { coeffs: out })
    }

    /// `self ∘ g`. Coefficient `n` of the result depends only on
    /// coefficients `0..=n` of `self` and `1..=n` of `g`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::zero(n);
        acc.coeffs[0] = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Multiply by `x`; the order grows by one because the new constant
    /// term is known to be zero.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        ExactSeries { coeffs }
    }

    /// Divide by `x`; needs a zero constant term and an order of at least 2.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Degenerate("cannot divide by x: nonzero constant term".into()));
        }
        Self::new(self.coeffs[1..].to_vec())
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 1 {
            return Self::zero(1);
        }
        ExactSeries { coeffs: (1..self.order()).map(|i| &self.coeffs[i] * int(i as i64)).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Partial sum `Σ_{i<order} c_i x^i` at an exact point.
    pub fn partial_sum(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// One line per coefficient: `index numerator/denominator`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{} {}/{}", i, c.numer(), c.denom());
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("line {}: expected `index value`", lineno + 1)));
            };
            let idx: usize =
                idx.parse().map_err(|_| Error::Parse(format!("line {}: bad index {idx:?}", lineno + 1)))?;
            if idx != coeffs.len() {
                return Err(Error::Parse(format!("line {}: expected index {}, found {idx}", lineno + 1, coeffs.len())));
            }
            coeffs.push(parse_rational(val).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("line {}: {m}", lineno + 1)),
                other => other,
            })?);
        }
        Self::new(coeffs)
    }
}

/// Parses `p`, `p/q`, with optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = i.starts_with('-');
        let i = if i.is_empty() || i == "-" || i == "+" { "0" } else { i };
        let whole: BigInt = i.parse().map_err(|_| bad())?;
        let frac: BigInt = f.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(f.len() as u32);
        let mag = whole.abs() * &scale + frac;
        let n = if negative { -mag } else { mag };
        return Ok(BigRational::new(n, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Integer numerators over a common denominator.
fn integer_form(c: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for x in c {
        if !x.denom().is_one() {
            den = den.lcm(x.denom());
        }
    }
    let nums =
        c.iter().map(|x| if x.denom().is_one() { x.numer() * &den } else { x.numer() * (&den / x.denom()) }).collect();
    (nums, den)
}

fn require_unit_constant(s: &ExactSeries) -> Result<()> {
    if !s.coeffs[0].is_one() {
        return Err(Error::ConstantTerm(s.coeffs[0].to_string()));
    }
    Ok(())
}

/// Solves `y = x·A(y)` by `y_i = (1/i) [x^{i-1}] A(x)^i`.
///
/// Returns `y_0..=y_n` (order `n + 1`); needs `n <= order(A)`.
pub fn lagrange_invert(a: &ExactSeries, n: usize) -> Result<ExactSeries> {
    require_unit_constant(a)?;
    if n > a.order() {
        return Err(Error::OrderTooLarge { requested: n, available: a.order() });
    }
    let mut y = vec![BigRational::zero(); n + 1];
    if n == 0 {
        return ExactSeries::new(y);
    }
    let a = a.truncate(n);
    let mut power = a.clone();
    y[1] = BigRational::one();
    for i in 2..=n {
        power = power.mul_to(&a, n);
        y[i] = &power.coeffs[i - 1] / int(i as i64);
    }
    ExactSeries::new(y)
}

/// Solves `B(x) = A(x B(x))` for `A`, returning `A` to order `n`.
///
/// Uses `a_n = b_n - Σ_{k=1}^{n-1} a_k [x^{n-k}] B(x)^k` with cached powers
/// of `B`; needs `n <= order(B)`.
pub fn recover_generator(b: &ExactSeries, n: usize) -> Result<ExactSeries> {
    require_unit_constant(b)?;
    if n > b.order() {
        return Err(Error::OrderTooLarge { requested: n, available: b.order() });
    }
    let n = n.max(1);
    // powers[k] = B^k known to order n - k, enough for every a_m with m < n.
    let mut powers: Vec<ExactSeries> = Vec::with_capacity(n);
    powers.push(ExactSeries::one(n));
    for k in 1..n {
        let next = powers[k - 1].mul_to(b, n - k);
        powers.push(next);
    }
    let mut a = vec![BigRational::zero(); n];
    a[0] = BigRational::one();
    for m in 1..n {
        let mut acc = b.coeffs[m].clone();
        for k in 1..m {
            if a[k].is_zero() {
                continue;
            }
            let c = &powers[k].coeffs[m - k];
            if !c.is_zero() {
                acc -= &a[k] * c;
            }
        }
        a[m] = acc;
    }
    ExactSeries::new(a)
}

/// `[x^n] (1 - x)^k log(1 - x) = (-1)^{k+1} k! / (n (n-1) ⋯ (n-k))`.
pub fn log_one_minus_coeff(k: usize, n: usize) -> Result<BigRational> {
    if n <= k {
        return Err(Error::LogCoeffDomain { k, n });
    }
    let mut fact = BigInt::one();
    for i in 2..=k {
        fact *= i;
    }
    let mut falling = BigInt::one();
    for i in 0..=k {
        falling *= n - i;
    }
    let v = BigRational::new(fact, falling);
    Ok(if k % 2 == 0 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("6.8211").unwrap(), rat(68211, 10000));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn ints(v: &[i64]) -> ExactSeries {
        ExactSeries::from_integers(v.iter().copied()).unwrap()
    }

    #[test]
    fn product_of_binomials() {
        let f = ints(&[1, 1, 0]);
        assert_eq!(f.mul(&f), ints(&[1, 2, 1]));
        assert_eq!(f.mul(&ExactSeries::one(3)), f);
    }

    #[test]
    fn geometric_times_one_minus_x() {
        let g = ExactSeries::geometric(20);
        let p = ExactSeries::from_poly(&[int(1), int(-1)], 20);
        assert_eq!(g.mul(&p), ExactSeries::one(20));
    }

    #[test]
    fn truncation_takes_smaller_order() {
        let f = ints(&[1, 2, 3, 4]);
        let g = ints(&[1, 1]);
        assert_eq!(f.mul(&g).order(), 2);
        assert_eq!(f.add(&g).order(), 2);
    }

    #[test]
    fn compose_examples() {
        let f = ints(&[1, 1, 0, 0, 0]);
        let g = ints(&[0, 0, 1, 0, 0]);
        assert_eq!(f.compose(&g).unwrap(), ints(&[1, 0, 1, 0, 0]));
        let h = ints(&[3, 1, 4, 1, 5]);
        assert_eq!(h.compose(&ExactSeries::x(5)).unwrap(), h);
        let geo = ExactSeries::geometric(6);
        let inner = ints(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(geo.compose(&inner).unwrap(), ints(&[1, 1, 2, 3, 5, 8]));
        assert_eq!(geo.compose(&ints(&[1, 1])), Err(Error::NonzeroInnerConstant));
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let p = ExactSeries::from_poly(&[int(1), int(-1)], 12);
        assert_eq!(p.inverse().unwrap(), ExactSeries::geometric(12));
    }

    #[test]
    fn catalan_from_geometric_generator() {
        let y = lagrange_invert(&ExactSeries::geometric(8), 8).unwrap();
        assert_eq!(y, ints(&[0, 1, 1, 2, 5, 14, 42, 132, 429]));
    }

    #[test]
    fn trivial_generator_gives_x() {
        let y = lagrange_invert(&ExactSeries::one(6), 6).unwrap();
        assert_eq!(y, ExactSeries::x(7));
    }

    #[test]
    fn triangulation_generator_inverts_to_invariant_counts() {
        let a = ints(&[1, 0, 1, 1, 2, 5, 15, 50, 181, 697]);
        let y = lagrange_invert(&a, 10).unwrap();
        assert_eq!(y, ints(&[0, 1, 0, 1, 1, 4, 10, 35, 120, 455, 1792]));
    }

    #[test]
    fn recover_small_cases() {
        let b = ints(&[1, 0, 1, 1, 4, 10, 35, 120, 455, 1792]);
        assert_eq!(recover_generator(&b, 10).unwrap(), ints(&[1, 0, 1, 1, 2, 5, 15, 50, 181, 697]));
        assert_eq!(recover_generator(&ExactSeries::one(5), 5).unwrap(), ExactSeries::one(5));
    }

    #[test]
    fn rejects_bad_constant_terms() {
        let bad = ints(&[2, 1]);
        assert!(matches!(lagrange_invert(&bad, 2), Err(Error::ConstantTerm(_))));
        assert!(matches!(recover_generator(&bad, 2), Err(Error::ConstantTerm(_))));
    }

    /// Coefficients of (1-x)^k log(1-x) by direct multiplication.
    fn log_product(k: usize, order: usize) -> ExactSeries {
        let mut log = vec![BigRational::zero()];
        for n in 1..order {
            log.push(-rat(1, n as i64));
        }
        let base = ExactSeries::from_poly(&[int(1), int(-1)], order);
        base.pow(k).mul(&ExactSeries::new(log).unwrap())
    }

    #[test]
    fn log_coefficients_match_expansion() {
        assert_eq!(log_one_minus_coeff(0, 5).unwrap(), rat(-1, 5));
        assert_eq!(log_one_minus_coeff(1, 3).unwrap(), rat(1, 6));
        assert_eq!(log_one_minus_coeff(6, 7).unwrap(), rat(-1, 7));
        for k in 0..=6 {
            let brute = log_product(k, 31);
            for n in k + 1..=30 {
                assert_eq!(&log_one_minus_coeff(k, n).unwrap(), brute.coeff(n).unwrap(), "k={k} n={n}");
            }
        }
        assert!(log_one_minus_coeff(3, 3).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let s = ExactSeries::new(vec![rat(1, 1), rat(-3, 7), rat(0, 1)]).unwrap();
        let text = s.to_text();
        assert_eq!(text, "0 1/1\n1 -3/7\n2 0/1\n");
        assert_eq!(ExactSeries::from_text(&text).unwrap(), s);
        assert!(ExactSeries::from_text("1 1/2\n").is_err());
        assert!(ExactSeries::from_text("0 1/0\n").is_err());
    }
}
