//! Expansion of `B` at its singularity `z = 1/7` as
//! `B = f + log(1 - φ) g`, with `f` and `g` power series in `Z = 1 - 7z`.
//!
//! Everything is computed in exact rational series in `Z`. The
//! hypergeometric prefactors are rational multiples of `√3/π`, and the
//! only transcendental constants left in `f` are the two digamma sums
//! `c₀`. Hence `g` is exact and each `f_n` is a short ball combination.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sym::{gamma_ratio_thirds, sqrt3_over_pi, SymRational};
use crate::ball::{bits_for_digits, PrecReal};
use crate::error::{Error, Result};
use crate::hyper::hyp2f1::{connection_coeff, digamma_base};
use crate::series::{int, rat, ExactSeries};

/// Largest supported expansion order.
pub const MAX_ORDER: usize = 40;

/// Taylor data of `f` and `g` at `Z = 0`.
#[derive(Clone, Debug)]
pub struct SingExpansionB {
    /// `f_n`, ball values.
    pub f: Vec<PrecReal>,
    /// `g_n`, exact multiples of `√3/π`; zero below index 6.
    pub g: Vec<SymRational>,
    pub order: usize,
    pub prec: u32,
}

/// Rational building blocks: `f = e + (√3/π)(x + c₀₁ y1 + c₀₂ y2)` and
/// `g = (√3/π)(y1 + y2)`.
#[derive(Clone, Debug)]
pub struct FgParts {
    pub e: ExactSeries,
    pub x: ExactSeries,
    pub y1: ExactSeries,
    pub y2: ExactSeries,
}

fn constant(c: BigRational, n: usize) -> ExactSeries {
    ExactSeries::one(n).scale(&c)
}

/// Polynomial in `s` with coefficients listed from the constant term up.
fn poly_of(s: &ExactSeries, coeffs: &[i64]) -> ExactSeries {
    let n = s.order();
    let mut acc = constant(int(*coeffs.last().unwrap()), n);
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(s).add(&constant(int(*c), n));
    }
    acc
}

/// `Σ_k coeff(k) x^{k+1}` as a series of order `n`.
fn shifted_sum(n: usize, coeff: impl Fn(usize) -> BigRational) -> ExactSeries {
    let mut c = vec![BigRational::zero(); n];
    for (k, slot) in c.iter_mut().enumerate().skip(1) {
        *slot = coeff(k - 1);
    }
    ExactSeries::new(c).expect("nonempty")
}

/// `u = 1 - φ` in terms of `Z`: `u = Z · 7(9 - 2Z)² / (6 + Z)³`.
pub fn one_minus_phi(n: usize) -> Result<ExactSeries> {
    let zs = ExactSeries::x(n);
    let num = ExactSeries::from_poly(&[int(9), int(-2)], n).pow(2).scale(&int(7));
    let den = ExactSeries::from_poly(&[int(6), int(1)], n).pow(3);
    Ok(zs.mul(&num.mul(&den.inverse()?)))
}

/// Coefficients `l_j` (`j >= 1`) of `log(u/Z) = log(21/8) + Σ l_j Z^j`,
/// from `log(u/Z) = log 7 + 2 log(9 - 2Z) - 3 log(6 + Z)`.
pub fn log_ratio_coeffs(n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    for (j, slot) in out.iter_mut().enumerate().skip(1) {
        let jj = int(j as i64);
        let a = -int(2) * rat(2, 9).pow(j as i32) / &jj;
        let sign = if j % 2 == 1 { int(1) } else { int(-1) };
        let b = -int(3) * sign * rat(1, 6).pow(j as i32) / &jj;
        *slot = a + b;
    }
    out
}

/// `c_k - c_0` accumulated in closed form.
fn digamma_shifts(a: &BigRational, b: &BigRational, n: usize) -> Vec<BigRational> {
    let one = BigRational::one();
    let mut out = Vec::with_capacity(n);
    let mut d = BigRational::zero();
    for j in 0..n {
        out.push(d.clone());
        let jj = int(j as i64);
        d += &one / (a + &jj + &one) + &one / (b + &jj + &one) - &one / (&jj + &one) - &one / (&jj + int(2));
    }
    out
}

/// The rational series behind `f` and `g`, to `n` coefficients.
pub fn rational_parts(n: usize) -> Result<FgParts> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OrderTooLarge { requested: n, available: MAX_ORDER });
    }
    let one = BigRational::one();
    // z = (1 - Z)/7.
    let zs = ExactSeries::from_poly(&[rat(1, 7), rat(-1, 7)], n);
    // 1/(30 z^5) = 7^5 (1 - Z)^{-5} / 30.
    let pre = ExactSeries::geometric(n).pow(5).scale(&(int(16807) / int(30)));
    let zp1 = zs.add(&constant(one.clone(), n));
    let zm1 = zs.sub(&constant(one.clone(), n));
    let r1 = zp1.pow(2).mul(&poly_of(&zs, &[5, 60, 45, 214])).mul(&zm1.inverse()?);
    let r2 = zs.pow(2).mul(&zp1.pow(2)).mul(&poly_of(&zs, &[5, 74, 101])).mul(&zm1.pow(2).inverse()?).scale(&int(6));
    let p5 = poly_of(&zs, &[1, 15, 46, 66, 28]).scale(&int(5));
    let u = one_minus_phi(n)?;

    let pair = |a: BigRational, b: BigRational| -> Result<(SymRational, SymRational, ExactSeries, ExactSeries)> {
        let s = &a + &b + &one;
        let g = gamma_ratio_thirds(&s, &a, &b)?;
        let c = gamma_ratio_thirds(&s, &(&a + &one), &(&b + &one))?;
        let shifts = digamma_shifts(&a, &b, n);
        let t = shifted_sum(n, |k| connection_coeff(&a, &b, k));
        let d = shifted_sum(n, |k| connection_coeff(&a, &b, k) * &shifts[k]);
        Ok((g, c, t.compose(&u)?, d.compose(&u)?))
    };
    let (g1, c1, t1, d1) = pair(rat(1, 3), rat(2, 3))?;
    let (g2, c2, t2, d2) = pair(rat(2, 3), rat(4, 3))?;

    let e = pre.mul(&p5);
    let y1 = pre.mul(&r1).mul(&t1).scale(&g1.q);
    let y2 = pre.mul(&r2).mul(&t2).scale(&g2.q);
    let x1 = r1.mul(&constant(c1.q, n).add(&d1.scale(&g1.q)));
    let x2 = r2.mul(&constant(c2.q, n).add(&d2.scale(&g2.q)));
    let x = pre.mul(&x1.add(&x2));
    Ok(FgParts { e, x, y1, y2 })
}

/// `f_n` and `g_n` for `n < order`, with `f_n` accurate to `digits`.
pub fn expand_fg(order: usize, digits: u32) -> Result<SingExpansionB> {
    let prec = bits_for_digits(digits);
    let parts = rational_parts(order)?;
    let wp = prec + 64;
    let c01 = digamma_base(&rat(1, 3), &rat(2, 3), wp)?;
    let c02 = digamma_base(&rat(2, 3), &rat(4, 3), wp)?;
    let sigma = sqrt3_over_pi(wp);
    let mut f = Vec::with_capacity(order);
    let mut g = Vec::with_capacity(order);
    for i in 0..order {
        let inner = c01
            .mul_rational(&parts.y1.coeffs()[i])
            .add(&c02.mul_rational(&parts.y2.coeffs()[i]))
            .add_rational(&parts.x.coeffs()[i]);
        f.push(sigma.mul(&inner).add_rational(&parts.e.coeffs()[i]).with_prec(prec));
        let gi = SymRational::new(&parts.y1.coeffs()[i] + &parts.y2.coeffs()[i]);
        if i < 6 && !gi.is_zero() {
            return Err(Error::Invariant(format!("g_{i} = {gi} should vanish")));
        }
        g.push(gi);
    }
    Ok(SingExpansionB { f, g, order, prec })
}

impl SingExpansionB {
    /// `K = -6! g₆` as a multiple of `√3/π`.
    pub fn k_sym(&self) -> SymRational {
        self.g[6].scale(&int(-720))
    }

    /// Coefficients of `f + g·log(u/Z)`, the part of `B` without `log Z`.
    pub fn regular(&self) -> Vec<PrecReal> {
        let wp = self.prec + 32;
        let l = log_ratio_coeffs(self.order);
        let l0 = PrecReal::from_rational(&rat(21, 8), wp).ln();
        let g: Vec<PrecReal> = self.g.iter().map(|s| s.to_real(wp)).collect();
        (0..self.order)
            .map(|n| {
                let mut acc = self.f[n].with_prec(wp);
                for j in 6..=n {
                    let lj = if n == j { l0.clone() } else { PrecReal::from_rational(&l[n - j], wp) };
                    acc = acc.add(&g[j].mul(&lj));
                }
                acc.with_prec(self.prec)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::pi;
    use crate::ball::sqrt3;
    use crate::hyper::BEvaluator;

    #[test]
    fn one_minus_phi_factorization() {
        let n = 12;
        let u = one_minus_phi(n).unwrap();
        assert_eq!(u.coeffs()[0], BigRational::zero());
        assert_eq!(u.coeffs()[1], rat(21, 8));
        // Direct expansion of 1 - 27(z+1)z²/(1-z)³ in Z.
        let zs = ExactSeries::from_poly(&[rat(1, 7), rat(-1, 7)], n);
        let one = ExactSeries::one(n);
        let zm = one.sub(&zs);
        let phi = zs.add(&one).mul(&zs.pow(2)).scale(&int(27)).mul(&zm.pow(3).inverse().unwrap());
        assert_eq!(one.sub(&phi), u);
    }

    #[test]
    fn log_ratio_matches_series_log() {
        let n = 10;
        let u = one_minus_phi(n + 1).unwrap().shift_down().unwrap();
        let v = u.scale(&rat(8, 21));
        // log(v) via ∫ v'/v.
        let dv = v.derivative().mul(&v.truncate(n - 1).inverse().unwrap());
        let l = log_ratio_coeffs(n);
        for j in 1..n {
            assert_eq!(l[j], &dv.coeffs()[j - 1] / int(j as i64), "j={j}");
        }
    }

    #[test]
    fn g_vanishes_below_six_and_gives_k() {
        let e = expand_fg(10, 40).unwrap();
        for i in 0..6 {
            assert!(e.g[i].is_zero());
        }
        // K = 4117715√3/(864π).
        assert_eq!(e.k_sym().q, rat(4117715, 864));
        assert!(!e.g[7].is_zero());
    }

    #[test]
    fn leading_f_coefficients() {
        let digits = 50;
        let p = bits_for_digits(digits);
        let e = expand_fg(8, digits).unwrap();
        let ev = BEvaluator::new(digits).unwrap();
        let b17 = ev.eval(&rat(1, 7)).unwrap();
        assert!(e.f[0].overlaps(&b17));
        // λ = (852768√3 - 470155π)/(10π).
        let pi = pi(p);
        let lambda = sqrt3(p).mul_int(&852768.into()).sub(&pi.mul_int(&470155.into())).div(&pi.mul_int(&10.into()));
        assert!(e.f[1].overlaps(&lambda.neg()));
        assert!(e.f[1].radius_f64() < 1e-45);
    }

    #[test]
    fn expansion_reproduces_b_near_singularity() {
        // B(z) = Σ F̂_n Z^n + log Z Σ g_n Z^n; truncation error is O(Z^order log Z).
        let digits = 40;
        let order = 30;
        let e = expand_fg(order, digits).unwrap();
        let reg = e.regular();
        let p = bits_for_digits(digits);
        let ev = BEvaluator::new(digits).unwrap();
        let big_z = rat(1, 50);
        let z = (BigRational::one() - &big_z) / int(7);
        let zb = PrecReal::from_rational(&big_z, p);
        let log_z = zb.ln();
        let mut total = PrecReal::zero(p);
        let mut zp = PrecReal::from_int(1, p);
        for n in 0..order {
            total = total.add(&reg[n].mul(&zp)).add(&e.g[n].to_real(p).mul(&log_z).mul(&zp));
            zp = zp.mul(&zb);
        }
        let direct = ev.eval(&z).unwrap();
        let diff = total.sub(&direct).abs_upper().unwrap();
        assert!(diff < rat(1, 10).pow(30), "diff {}", crate::ball::format_sig(&diff, 3));
    }

    #[test]
    fn order_is_capped() {
        assert!(rational_parts(41).is_err());
        assert!(rational_parts(0).is_err());
    }
}
