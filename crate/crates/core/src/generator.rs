//! Tree generators `A(x)` with `A(0) = 1` and nonnegative coefficients.
//!
//! A generator is given as a finite coefficient list, as a rational function
//! `N(x)/D(x)`, or as one of two built-in closed forms: the boundary example
//! `6x + 2(1-4x)^2 - (1-4x)^{5/2}` and the triangulation generator recovered
//! from the `G₂` sequence. Each kind produces exact coefficients to any order
//! and evaluates `A`, `A'`, `A''` as balls.
//!
//! Text format, one `key: value` per line, `#` starts a comment:
//!
//! ```text
//! kind: rational-function
//! numerator: 1
//! denominator: 1 -1
//! ```
//!
//! Kinds are `coefficient-list` (key `coefficients`), `rational-function`
//! (keys `numerator`, `denominator`) and `algebraic-closed-form` (key `name`,
//! one of `example2`, `g2`; `g2` also takes `order`).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::{bits_for_digits, PrecReal};
use crate::error::{Error, Result};
use crate::hyper::constants::{k_closed, m_closed, rho_closed};
use crate::series::{int, lagrange_invert, parse_rational, rat, recover_generator, ExactSeries};
use crate::walk::b_sequence;

/// Default number of triangulation coefficients kept by the `g2` generator.
pub const G2_DEFAULT_ORDER: usize = 300;
/// Coefficients checked for sign and constant term on construction.
pub const VALIDATION_PROBE: usize = 64;
/// Terms of `y` summed by the boundary example before its tail bound.
pub const EXAMPLE2_Y_TERMS: usize = 400;

/// A value that may be `+∞`, used for radii of convergence.
#[derive(Clone, Debug)]
pub enum Extended {
    Finite(PrecReal),
    Infinite,
}

impl Extended {
    pub fn finite(&self) -> Option<&PrecReal> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }

    pub fn to_decimal(&self, sig: usize) -> String {
        match self {
            Extended::Finite(x) => x.to_decimal(sig),
            Extended::Infinite => "infinite".to_string(),
        }
    }
}

/// `A`, `A'` and `A''` at one point.
#[derive(Clone, Debug)]
pub struct Jet {
    pub a: PrecReal,
    pub d1: PrecReal,
    pub d2: PrecReal,
}

impl Jet {
    /// `h = A - zA'`, which vanishes at `τ`.
    pub fn h(&self, z: &PrecReal) -> PrecReal {
        self.a.sub(&z.mul(&self.d1))
    }
}

/// Data behind the `g2` generator: `a_0..a_{N-1}`, `b_0..b_{N-1}` and the
/// constants of the declared tail bounds
/// `a_n <= 2M ρ^n / n^7` and `b_n <= 2K 7^n / n^7` for `n >= N`.
#[derive(Debug)]
pub struct G2Data {
    pub a: Vec<BigRational>,
    pub b: Vec<BigInt>,
    pub rho: PrecReal,
    pub prec: u32,
    two_m: BigRational,
    two_k: BigRational,
    rho_up: BigRational,
}

#[derive(Clone, Debug)]
pub enum GeneratorSpec {
    Polynomial(Vec<BigRational>),
    Rational { num: Vec<BigRational>, den: Vec<BigRational> },
    Example2,
    G2(Arc<G2Data>),
}

impl PartialEq for GeneratorSpec {
    fn eq(&self, other: &Self) -> bool {
        use GeneratorSpec::*;
        match (self, other) {
            (Polynomial(a), Polynomial(b)) => a == b,
            (Rational { num: a, den: b }, Rational { num: c, den: d }) => a == c && b == d,
            (Example2, Example2) => true,
            (G2(a), G2(b)) => a.a == b.a,
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomials over Q, lowest degree first.

pub(crate) fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn poly_eval_ball(p: &[BigRational], x: &PrecReal) -> PrecReal {
    let prec = x.prec();
    p.iter().rev().fold(PrecReal::zero(prec), |acc, c| acc.mul(x).add_rational(c))
}

pub(crate) fn poly_deriv(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect()
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &f * &b[i];
            r[dr - db + i] -= t;
        }
        if dr == 0 {
            break;
        }
    }
    trim(r)
}

fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = degree(b).expect("division by the zero polynomial");
    let Some(da) = degree(a) else { return vec![BigRational::zero()] };
    if da < db {
        return vec![BigRational::zero()];
    }
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let f = &r[k + db] / &b[db];
        for i in 0..=db {
            let t = &f * &b[i];
            r[k + i] -= t;
        }
        q[k] = f;
    }
    trim(q)
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while degree(&y).is_some() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    let d = degree(&x).unwrap_or(0);
    let lead = x[d].clone();
    if lead.is_zero() {
        return vec![BigRational::one()];
    }
    trim(x.iter().map(|c| c / &lead).collect())
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = poly_eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Smallest positive real root of `p`, as a ball of width below `2^-bits`,
/// or `None` if `p` has no positive root.
pub fn smallest_positive_root(p: &[BigRational], bits: u32) -> Option<PrecReal> {
    let p = trim(p.to_vec());
    let d = degree(&p)?;
    if d == 0 {
        return None;
    }
    let mut seq = vec![p.clone(), poly_deriv(&p)];
    while degree(seq.last().unwrap()).is_some_and(|k| k > 0) {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if degree(&r).is_none() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let lead = p[d].abs();
    let bound =
        int(1) + p[..d].iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    let zero = BigRational::zero();
    let roots_in = |hi: &BigRational| sign_changes(&seq, &zero) - sign_changes(&seq, hi);
    if roots_in(&bound) == 0 {
        return None;
    }
    let (mut lo, mut hi) = (zero.clone(), bound);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 2));
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / int(2);
        if poly_eval(&p, &mid).is_zero() {
            return Some(PrecReal::from_rational(&mid, bits));
        }
        if roots_in(&mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if poly_eval(&p, &hi).is_zero() {
        return Some(PrecReal::from_rational(&hi, bits));
    }
    let mid = (&lo + &hi) / int(2);
    let rad = (&hi - &lo) / int(2);
    Some(PrecReal::from_rational_with_radius(&mid, &rad, bits))
}

// ---------------------------------------------------------------------------

fn example2_coeffs(order: usize) -> Vec<BigRational> {
    // c_n = binom(5/2, n) (-4)^n, by c_n = c_{n-1} · 2(2n - 7)/n.
    let mut c = vec![BigRational::one()];
    for n in 1..order {
        let next = &c[n - 1] * rat(2 * (2 * n as i64 - 7), n as i64);
        c.push(next);
    }
    let square = [int(1), int(-8), int(16)];
    (0..order)
        .map(|n| {
            let mut a = -c[n].clone();
            if n < 3 {
                a += int(2) * &square[n];
            }
            if n == 1 {
                a += int(6);
            }
            a
        })
        .collect()
}

/// `y_n` for the boundary example, in `O(n)` big-integer operations.
///
/// With `x = (1 - t²)/4` the generator becomes the polynomial
/// `3/2 - 3t²/2 + 2t⁴ - t⁵`; at `t = 1 - s` this is
/// `p(s) = 1 + s²/2 + 2s³ - 3s⁴ + s⁵`, and Lagrange inversion turns into
/// `y_n = (2^{n-1}/n) [s^{n-1}] p(s)^n (1 - s) (2 - s)^{-n}`.
pub fn example2_y_coeff(n: usize) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    // Q = (2p)^n to degree n - 1, by the power recurrence
    // Q_k = (1/(2k)) Σ_j ((n+1)j - k) q_j Q_{k-j}.
    let q = [2i64, 0, 1, 4, -6, 2];
    let nn = n as i64;
    let mut big_q: Vec<BigInt> = Vec::with_capacity(n);
    big_q.push(BigInt::from(2).pow(n as u32));
    for k in 1..n {
        let mut acc = BigInt::zero();
        for j in 1..=k.min(5) {
            if q[j] != 0 {
                acc += &big_q[k - j] * ((nn + 1) * j as i64 - k as i64) * q[j];
            }
        }
        let (quo, rem) = acc.div_rem(&BigInt::from(2 * k as i64));
        debug_assert!(rem.is_zero());
        big_q.push(quo);
    }
    // Σ_k binom(n+k-1, k) 2^{n-1-k} (Q_{n-1-k} - Q_{n-2-k}), over n 2^n.
    let mut total = BigInt::zero();
    let mut binom = BigInt::one();
    for k in 0..n {
        if k > 0 {
            binom = binom * (n + k - 1) / k;
        }
        let hi = &big_q[n - 1 - k];
        let diff = if n >= 2 + k { hi - &big_q[n - 2 - k] } else { hi.clone() };
        total += (&binom * diff) << (n - 1 - k);
    }
    BigRational::new(total, BigInt::from(n) << n)
}

fn g2_data(order: usize, prec: u32) -> Result<G2Data> {
    if order < 10 {
        return Err(Error::Usage(format!("g2 generator needs order >= 10, got {order}")));
    }
    let b = b_sequence(order - 1);
    let bs = ExactSeries::from_integers(b.iter().cloned())?;
    let a = recover_generator(&bs, order)?.into_coeffs();
    let upper = |x: PrecReal| x.upper().ok_or_else(|| Error::Precision("unbounded constant".into()));
    let rho = rho_closed(prec);
    Ok(G2Data {
        two_m: int(2) * upper(m_closed(prec))?,
        two_k: int(2) * upper(k_closed(prec))?,
        rho_up: upper(rho.clone())?,
        rho,
        a,
        b,
        prec,
    })
}

/// Exact `a_0, ..., a_{n_max}` of the triangulation generator, recovered
/// from `b_0, ..., b_{n_max}`.
pub fn a_sequence(n_max: usize) -> Result<Vec<BigInt>> {
    let b = ExactSeries::from_integers(b_sequence(n_max))?;
    recover_generator(&b, n_max + 1)?
        .to_integers()
        .ok_or_else(|| Error::Invariant("recovered generator is not integral".into()))
}

fn parse_list(s: &str) -> Result<Vec<BigRational>> {
    let v: Vec<BigRational> = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    Ok(v)
}

impl GeneratorSpec {
    pub fn polynomial(coeffs: Vec<BigRational>) -> Result<Self> {
        let g = GeneratorSpec::Polynomial(trim(coeffs));
        g.validate()?;
        Ok(g)
    }

    /// `N(x)/D(x)` with common factors removed.
    pub fn rational(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        let (num, den) = (trim(num), trim(den));
        if degree(&den).is_none() {
            return Err(Error::Parse("zero denominator".into()));
        }
        if den[0].is_zero() {
            return Err(Error::ConstantTerm("pole at 0".into()));
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) =
            if degree(&g).unwrap_or(0) > 0 { (poly_div_exact(&num, &g), poly_div_exact(&den, &g)) } else { (num, den) };
        let d0 = den[0].clone();
        num = num.iter().map(|c| c / &d0).collect();
        den = den.iter().map(|c| c / &d0).collect();
        let spec =
            if degree(&den) == Some(0) { GeneratorSpec::Polynomial(num) } else { GeneratorSpec::Rational { num, den } };
        spec.validate()?;
        Ok(spec)
    }

    /// `1/(1-x)`: plane trees, counted by Catalan numbers.
    pub fn catalan() -> Self {
        GeneratorSpec::Rational { num: vec![int(1)], den: vec![int(1), int(-1)] }
    }

    /// `(1+x)²`: binary trees.
    pub fn binary() -> Self {
        GeneratorSpec::Polynomial(vec![int(1), int(2), int(1)])
    }

    pub fn example2() -> Self {
        GeneratorSpec::Example2
    }

    /// The triangulation generator, known to `order` coefficients, with its
    /// constants at `digits` decimal digits.
    pub fn g2(order: usize, digits: u32) -> Result<Self> {
        Ok(GeneratorSpec::G2(Arc::new(g2_data(order, bits_for_digits(digits) + 32)?)))
    }

    pub fn builtin(name: &str, digits: u32) -> Result<Self> {
        match name {
            "catalan" => Ok(Self::catalan()),
            "binary" => Ok(Self::binary()),
            "example2" => Ok(Self::example2()),
            "g2" => Self::g2(G2_DEFAULT_ORDER, digits),
            _ => Err(Error::Parse(format!("unknown built-in generator '{name}'"))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GeneratorSpec::Polynomial(_) => "coefficient-list",
            GeneratorSpec::Rational { .. } => "rational-function",
            GeneratorSpec::Example2 | GeneratorSpec::G2(_) => "algebraic-closed-form",
        }
    }

    /// Parses the `kind:` text format described in the module docs.
    pub fn parse(text: &str, digits: u32) -> Result<Self> {
        let mut fields: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected 'key: value'", lineno + 1)))?;
            let key = k.trim().to_ascii_lowercase();
            if fields.iter().any(|(f, _)| *f == key) {
                return Err(Error::Parse(format!("line {}: duplicate key '{key}'", lineno + 1)));
            }
            fields.push((key, v.trim().to_string()));
        }
        let get = |key: &str| fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let need = |key: &str| get(key).ok_or_else(|| Error::Parse(format!("missing key '{key}'")));
        let kind = need("kind")?;
        let allowed: &[&str] = match kind {
            "coefficient-list" => &["kind", "coefficients"],
            "rational-function" => &["kind", "numerator", "denominator"],
            "algebraic-closed-form" => &["kind", "name", "order"],
            other => return Err(Error::Parse(format!("unknown kind '{other}'"))),
        };
        if let Some((k, _)) = fields.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(Error::Parse(format!("key '{k}' is not valid for kind '{kind}'")));
        }
        match kind {
            "coefficient-list" => Self::polynomial(parse_list(need("coefficients")?)?),
            "rational-function" => Self::rational(parse_list(need("numerator")?)?, parse_list(need("denominator")?)?),
            _ => {
                let name = need("name")?;
                let order = match get("order") {
                    Some(o) => o.parse::<usize>().map_err(|_| Error::Parse(format!("bad order '{o}'")))?,
                    None => G2_DEFAULT_ORDER,
                };
                match name {
                    "g2" => Self::g2(order, digits),
                    "example2" if get("order").is_none() => Ok(Self::Example2),
                    "example2" => Err(Error::Parse("example2 takes no order".into())),
                    other => Err(Error::Parse(format!("unknown closed form '{other}'"))),
                }
            }
        }
    }

    /// Serializes a coefficient-list or rational-function spec.
    pub fn to_text(&self) -> String {
        let list = |v: &[BigRational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            GeneratorSpec::Polynomial(c) => format!("kind: coefficient-list\ncoefficients: {}\n", list(c)),
            GeneratorSpec::Rational { num, den } => {
                format!("kind: rational-function\nnumerator: {}\ndenominator: {}\n", list(num), list(den))
            }
            GeneratorSpec::Example2 => "kind: algebraic-closed-form\nname: example2\n".to_string(),
            GeneratorSpec::G2(d) => format!("kind: algebraic-closed-form\nname: g2\norder: {}\n", d.a.len()),
        }
    }

    /// Checks `a_0 = 1` and `a_n >= 0` on the first [`VALIDATION_PROBE`]
    /// coefficients.
    pub fn validate(&self) -> Result<()> {
        let probe = match self {
            GeneratorSpec::Polynomial(c) => c.len().max(VALIDATION_PROBE),
            _ => VALIDATION_PROBE.min(self.max_order().unwrap_or(usize::MAX)),
        };
        let c = self.coeffs(probe)?;
        if !c.coeffs()[0].is_one() {
            return Err(Error::ConstantTerm(c.coeffs()[0].to_string()));
        }
        if let Some((i, v)) = c.coeffs().iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::Invariant(format!("coefficient a_{i} = {v} is negative")));
        }
        Ok(())
    }

    /// Number of coefficients known, if finite.
    pub fn max_order(&self) -> Option<usize> {
        match self {
            GeneratorSpec::G2(d) => Some(d.a.len()),
            _ => None,
        }
    }

    /// `a_0, ..., a_{order-1}`.
    pub fn coeffs(&self, order: usize) -> Result<ExactSeries> {
        let order = order.max(1);
        match self {
            GeneratorSpec::Polynomial(c) => {
                let mut v = vec![BigRational::zero(); order];
                for (i, x) in c.iter().enumerate().take(order) {
                    v[i] = x.clone();
                }
                ExactSeries::new(v)
            }
            GeneratorSpec::Rational { num, den } => {
                let n = ExactSeries::from_poly(num, order);
                let d = ExactSeries::from_poly(den, order);
                Ok(n.mul(&d.inverse()?))
            }
            GeneratorSpec::Example2 => ExactSeries::new(example2_coeffs(order)),
            GeneratorSpec::G2(d) => {
                if order > d.a.len() {
                    return Err(Error::OrderTooLarge { requested: order, available: d.a.len() });
                }
                ExactSeries::new(d.a[..order].to_vec())
            }
        }
    }

    /// Radius of convergence `R` of `A`.
    pub fn radius(&self, prec: u32) -> Result<Extended> {
        Ok(match self {
            GeneratorSpec::Polynomial(_) => Extended::Infinite,
            GeneratorSpec::Rational { den, .. } => match smallest_positive_root(den, prec) {
                Some(r) => Extended::Finite(r),
                None => Extended::Infinite,
            },
            GeneratorSpec::Example2 => Extended::Finite(PrecReal::from_rational(&rat(1, 4), prec)),
            GeneratorSpec::G2(d) => Extended::Finite(d.rho.recip().with_prec(prec)),
        })
    }

    /// `(A, A', A'')` at a rational point, exactly, for the polynomial and
    /// rational-function kinds.
    pub fn eval_exact(&self, z: &BigRational) -> Option<Result<[BigRational; 3]>> {
        match self {
            GeneratorSpec::Polynomial(c) => {
                let d1 = poly_deriv(c);
                let d2 = poly_deriv(&d1);
                Some(Ok([poly_eval(c, z), poly_eval(&d1, z), poly_eval(&d2, z)]))
            }
            GeneratorSpec::Rational { num, den } => {
                let (n0, n1, n2) =
                    (poly_eval(num, z), poly_eval(&poly_deriv(num), z), poly_eval(&poly_deriv(&poly_deriv(num)), z));
                let (d0, d1, d2) =
                    (poly_eval(den, z), poly_eval(&poly_deriv(den), z), poly_eval(&poly_deriv(&poly_deriv(den)), z));
                if d0.is_zero() {
                    return Some(Err(Error::Domain(format!("pole at {z}"))));
                }
                let a = &n0 / &d0;
                let a1 = (&n1 - &a * &d1) / &d0;
                let a2 = (&n2 - int(2) * &a1 * &d1 - &a * &d2) / &d0;
                Some(Ok([a, a1, a2]))
            }
            _ => None,
        }
    }

    /// `(A, A', A'')` on a ball. For the `g2` kind the point must lie in
    /// `[0, 1/ρ]`, where the declared coefficient bound controls the tail.
    pub fn eval(&self, z: &PrecReal) -> Result<Jet> {
        let prec = z.prec();
        match self {
            GeneratorSpec::Polynomial(c) => {
                let d1 = poly_deriv(c);
                let d2 = poly_deriv(&d1);
                Ok(Jet { a: poly_eval_ball(c, z), d1: poly_eval_ball(&d1, z), d2: poly_eval_ball(&d2, z) })
            }
            GeneratorSpec::Rational { num, den } => {
                let ev = |p: &[BigRational]| {
                    let d1 = poly_deriv(p);
                    (poly_eval_ball(p, z), poly_eval_ball(&d1, z), poly_eval_ball(&poly_deriv(&d1), z))
                };
                let (n0, n1, n2) = ev(num);
                let (d0, d1, d2) = ev(den);
                if d0.contains_zero() {
                    return Err(Error::Domain("denominator vanishes on the ball".into()));
                }
                let a = n0.div(&d0);
                let a1 = n1.sub(&a.mul(&d1)).div(&d0);
                let a2 = n2.sub(&a1.mul(&d1).mul_int(&BigInt::from(2))).sub(&a.mul(&d2)).div(&d0);
                Ok(Jet { a, d1: a1, d2: a2 })
            }
            GeneratorSpec::Example2 => {
                let u = PrecReal::from_i64(1, prec).sub(&z.mul_int(&BigInt::from(4)));
                if u.is_negative() {
                    return Err(Error::Domain("example2 is evaluated on [0, 1/4] only".into()));
                }
                let s = u.sqrt();
                let u2 = u.sqr();
                let a = z.mul_int(&BigInt::from(6)).add(&u2.mul_int(&BigInt::from(2))).sub(&u2.mul(&s));
                let d1 = PrecReal::from_i64(6, prec)
                    .sub(&u.mul_int(&BigInt::from(16)))
                    .add(&u.mul(&s).mul_int(&BigInt::from(10)));
                let d2 = PrecReal::from_i64(64, prec).sub(&s.mul_int(&BigInt::from(60)));
                Ok(Jet { a, d1, d2 })
            }
            GeneratorSpec::G2(d) => {
                if !z.is_finite() || z.is_negative() || z.lower().is_some_and(|lo| &lo * &d.rho_up > int(1)) {
                    return Err(Error::Domain("g2 generator is evaluated on [0, 1/ρ] only".into()));
                }
                let n = d.a.len();
                let zero = PrecReal::zero(prec);
                let (mut a, mut d1, mut d2) = (zero.clone(), zero.clone(), zero);
                for k in (0..n).rev() {
                    a = a.mul(z).add_rational(&d.a[k]);
                    if k >= 1 {
                        d1 = d1.mul(z).add_rational(&(&d.a[k] * int(k as i64)));
                    }
                    if k >= 2 {
                        d2 = d2.mul(z).add_rational(&(&d.a[k] * int((k * (k - 1)) as i64)));
                    }
                }
                // Σ_{k>=n} k^j a_k z^{k-j} <= 2M ρ^j Σ k^{j-7} <= 2M ρ^j (n-1)^{j-6} / (6-j).
                let m1 = int(n as i64 - 1);
                let tail = |j: i32| &d.two_m * d.rho_up.pow(j) / (m1.pow(6 - j) * int(6 - j as i64));
                Ok(Jet { a: a.add_error(&tail(0)), d1: d1.add_error(&tail(1)), d2: d2.add_error(&tail(2)) })
            }
        }
    }

    /// `y_0, ..., y_n` for `y = x A(y)`.
    pub fn y_coeffs(&self, n: usize) -> Result<Vec<BigRational>> {
        match self {
            GeneratorSpec::Example2 => Ok((0..=n).map(example2_y_coeff).collect()),
            GeneratorSpec::G2(d) => {
                if n > d.b.len() {
                    return Err(Error::OrderTooLarge { requested: n, available: d.b.len() });
                }
                let mut y = vec![BigRational::zero()];
                y.extend(d.b[..n].iter().map(|b| BigRational::from_integer(b.clone())));
                Ok(y)
            }
            _ => Ok(lagrange_invert(&self.coeffs(n.max(1))?, n)?.into_coeffs()),
        }
    }

    /// Largest `n` for which [`GeneratorSpec::y_coeffs`] is available, if
    /// bounded.
    pub fn y_order(&self) -> Option<usize> {
        match self {
            GeneratorSpec::G2(d) => Some(d.b.len()),
            _ => None,
        }
    }

    /// Declared radius of convergence of `y`, for the closed forms.
    pub fn y_radius(&self) -> Option<BigRational> {
        match self {
            GeneratorSpec::Example2 => Some(rat(1, 6)),
            GeneratorSpec::G2(_) => Some(rat(1, 7)),
            _ => None,
        }
    }

    /// Number of terms of `y` that [`GeneratorSpec::y_at_radius`] sums.
    pub fn y_terms(&self) -> Option<usize> {
        match self {
            GeneratorSpec::Example2 => Some(EXAMPLE2_Y_TERMS),
            GeneratorSpec::G2(d) => Some(d.b.len()),
            _ => None,
        }
    }

    /// Declared bound on `Σ_{n>=terms} y_n r^n` at the declared radius `r`
    /// of `y`: `y_n 6^{-n} <= n^{-3/2}/8` for the boundary example and
    /// `b_n 7^{-n} <= 2K n^{-7}` for `g2`.
    pub fn y_tail_bound(&self, terms: usize) -> Option<BigRational> {
        if terms < 2 {
            return None;
        }
        let m1 = int(terms as i64 - 1);
        match self {
            GeneratorSpec::Example2 => {
                // (1/8) ∫_{N-1}^∞ x^{-3/2} dx = 1/(4 √(N-1)), rounded up.
                let root = (terms - 1).to_f64()?.sqrt().floor() as i64;
                Some(rat(1, 4 * root.max(1)))
            }
            GeneratorSpec::G2(d) => Some(&d.two_k / (int(7) * int(6) * m1.pow(6))),
            _ => None,
        }
    }

    /// `y(r)` at the declared radius of `y`, as a partial sum plus the
    /// declared tail bound.
    pub fn y_at_radius(&self, prec: u32) -> Result<Option<PrecReal>> {
        let (Some(r), Some(n)) = (self.y_radius(), self.y_terms()) else { return Ok(None) };
        let y = self.y_coeffs(n - 1)?;
        let mut sum = BigRational::zero();
        let mut pow = BigRational::one();
        for c in &y {
            sum += c * &pow;
            pow *= &r;
        }
        let tail = self.y_tail_bound(n).unwrap_or_else(BigRational::zero);
        Ok(Some(PrecReal::from_rational(&sum, prec).add_error(&tail)))
    }
}
