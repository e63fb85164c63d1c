//! Singular expansions of `ψ = y⁻¹` and `A = z/ψ` at `z = 1/ρ`, with
//! `V = 1 - ρz`:
//!
//! `ψ(z) = γ(V) + C V⁶ log V + O(V⁷ log V)`,
//! `A(z) = η(V) - (49C/ρ) V⁶ log V + O(V⁷ log V)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::expand::{expand_fg, SingExpansionB};
use crate::ball::PrecReal;
use crate::error::{Error, Result};
use crate::hyper::constants::c_closed;
use crate::hyper::BEvaluator;
use crate::series::rat;

/// Number of substitution passes in the bootstrap. Each pass fixes one more
/// power of `W`; starting from `Y = W` five passes reach `O(W⁷)`.
pub const BOOTSTRAP_PASSES: usize = 5;

/// Expansion order used for the `f`, `g` data behind the bootstrap.
const FG_ORDER: usize = 10;

/// `ψ(z) = Σ γ_j V^j + C V⁶ log V + …`.
#[derive(Clone, Debug)]
pub struct PsiExpansion {
    pub gamma: Vec<PrecReal>,
    pub c: PrecReal,
    /// `ρ = 7/f₀` and `λ = -f₁` as used by the bootstrap.
    pub rho: PrecReal,
    pub lambda: PrecReal,
    /// `W = κ V` with `κ = f₀/(f₀ - f₁) = 7/(7 + ρλ)`.
    pub kappa_w: PrecReal,
    /// Coefficient of `Y⁶ log Y` in `W = Y + Q(Y) + c Y⁶ log Y`.
    pub c_w: PrecReal,
    /// `Q(Y) = Σ_{i=2}^{6} a_i Y^i`; `a[i]` for `i` in `2..=6`, zero below.
    pub a: Vec<PrecReal>,
    /// `Y` as a polynomial in `W` after each substitution pass.
    pub passes: Vec<Vec<PrecReal>>,
    pub prec: u32,
}

/// `A(z) = η(V) + log_coeff · V⁶ log V + …`.
#[derive(Clone, Debug)]
pub struct AExpansion {
    pub eta: Vec<PrecReal>,
    pub log_coeff: PrecReal,
    /// Degree-six truncation of `1/γ(V)`.
    pub t: Vec<PrecReal>,
    /// `M = 49·6!·C/ρ`.
    pub m: PrecReal,
    pub rho: PrecReal,
    pub c: PrecReal,
    pub prec: u32,
}

fn poly_mul(a: &[PrecReal], b: &[PrecReal], deg: usize, prec: u32) -> Vec<PrecReal> {
    let mut out = vec![PrecReal::zero(prec); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// `Σ_{i=2}^{6} a_i Y^i` with `Y` a polynomial, truncated at degree 6.
fn apply_q(a: &[PrecReal], y: &[PrecReal], prec: u32) -> Vec<PrecReal> {
    let mut out = vec![PrecReal::zero(prec); 7];
    let mut power = poly_mul(y, y, 6, prec);
    for ai in a.iter().take(7).skip(2) {
        for (o, p) in out.iter_mut().zip(&power) {
            *o = o.add(&ai.mul(p));
        }
        power = poly_mul(&power, y, 6, prec);
    }
    out
}

/// Runs the bootstrap from given `B` expansion data.
pub fn bootstrap_from(exp: &SingExpansionB) -> Result<PsiExpansion> {
    if exp.order < 7 {
        return Err(Error::OrderTooLarge { requested: 7, available: exp.order });
    }
    let prec = exp.prec;
    let reg = exp.regular();
    let f0 = &reg[0];
    let d = reg[0].sub(&reg[1]);
    if d.contains_zero() {
        return Err(Error::Precision("f₀ - f₁ is not separated from zero".into()));
    }
    let mut a = vec![PrecReal::zero(prec); 7];
    for i in 2..=6 {
        // For i = 6 the regular part already carries g₆ log(21/8).
        a[i] = reg[i - 1].sub(&reg[i]).div(&d);
    }
    let g6 = exp.g[6].to_real(prec);
    let c_w = g6.neg().div(&d);
    let kappa_w = f0.div(&d);

    let zero = PrecReal::zero(prec);
    let mut w_poly = vec![zero.clone(); 7];
    w_poly[1] = PrecReal::from_int(1, prec);
    let mut y = w_poly.clone();
    let mut passes = Vec::with_capacity(BOOTSTRAP_PASSES);
    for _ in 0..BOOTSTRAP_PASSES {
        let q = apply_q(&a, &y, prec);
        y = w_poly.iter().zip(&q).map(|(w, q)| w.sub(q)).collect();
        passes.push(y.clone());
    }
    // Y = P(W) - c W⁶ log W, W = κV, ψ = (1 - Y)/7.
    let seventh = rat(1, 7);
    let mut gamma = Vec::with_capacity(7);
    let mut kpow = PrecReal::from_int(1, prec);
    for (j, yj) in y.iter().enumerate() {
        if j == 0 {
            gamma.push(PrecReal::from_rational(&seventh, prec).sub(&yj.mul_rational(&seventh)));
        } else {
            gamma.push(yj.mul(&kpow).mul_rational(&-seventh.clone()));
        }
        kpow = kpow.mul(&kappa_w);
    }
    let k6 = kappa_w.powi(6);
    let c = c_w.mul(&k6).mul_rational(&seventh);
    gamma[6] = gamma[6].add(&c.mul(&kappa_w.ln()));

    let rho = PrecReal::from_int(7, prec).div(f0);
    let lambda = reg[1].neg();
    let closed = c_closed(prec)?;
    if !c.overlaps(&closed) {
        return Err(Error::Certification(format!("bootstrapped C = {c} disagrees with closed form {closed}")));
    }
    Ok(PsiExpansion { gamma, c, rho, lambda, kappa_w, c_w, a, passes, prec })
}

/// `ψ`'s singular expansion to `digits` digits.
pub fn bootstrap_psi(digits: u32) -> Result<PsiExpansion> {
    bootstrap_from(&expand_fg(FG_ORDER, digits + 10)?)
}

/// Degree-six truncation of `1/γ(V)`.
pub fn reciprocal_t(gamma: &[PrecReal], prec: u32) -> Vec<PrecReal> {
    let inv0 = PrecReal::from_int(1, prec).div(&gamma[0]);
    let mut t = vec![inv0.clone()];
    for k in 1..=6 {
        let mut acc = PrecReal::zero(prec);
        for i in 1..=k {
            acc = acc.add(&gamma[i].mul(&t[k - i]));
        }
        t.push(acc.mul(&inv0).neg());
    }
    t
}

/// The printed degree-six polynomial in the `b_i = γ_i`, which is the
/// reciprocal of `γ` only when `b₁ = 0`.
pub fn literal_t(gamma: &[PrecReal], prec: u32) -> Vec<PrecReal> {
    let b = gamma;
    let m49 = |x: PrecReal| x.mul_int(&BigInt::from(49));
    let b2sq = b[2].sqr();
    let t6 = m49(b2sq
        .mul(&b[2])
        .mul_int(&49.into())
        .sub(&b[3].sqr().mul_int(&7.into()))
        .sub(&b[2].mul(&b[4]).mul_int(&14.into()))
        .add(&b[6]))
    .neg();
    let t5 = m49(b[2].mul(&b[3]).mul_int(&14.into()).sub(&b[5]));
    let t4 = m49(b2sq.mul_int(&7.into()).sub(&b[4]));
    let t3 = m49(b[3].clone()).neg();
    let t2 = m49(b[2].clone()).neg();
    vec![PrecReal::from_int(7, prec), PrecReal::zero(prec), t2, t3, t4, t5, t6]
}

/// `A`'s singular expansion from `ψ`'s.
pub fn sing_a_from(psi: &PsiExpansion) -> Result<AExpansion> {
    let prec = psi.prec;
    let t = reciprocal_t(&psi.gamma, prec);
    let rho = psi.rho.clone();
    let inv_rho = PrecReal::from_int(1, prec).div(&rho);
    let mut eta = vec![PrecReal::zero(prec); 8];
    for (k, tk) in t.iter().enumerate() {
        eta[k] = eta[k].add(&tk.mul(&inv_rho));
        eta[k + 1] = eta[k + 1].sub(&tk.mul(&inv_rho));
    }
    let log_coeff = psi.c.mul_int(&BigInt::from(-49)).div(&rho);
    let m = psi.c.mul_int(&BigInt::from(49 * 720)).div(&rho);
    let seven_over_rho = PrecReal::from_int(7, prec).div(&rho);
    if !eta[0].overlaps(&seven_over_rho) {
        return Err(Error::Invariant(format!("η(0) = {} differs from 7/ρ", eta[0])));
    }
    Ok(AExpansion { eta, log_coeff, t, m, rho, c: psi.c.clone(), prec })
}

/// `A`'s singular expansion to `digits` digits.
pub fn sing_a(digits: u32) -> Result<AExpansion> {
    sing_a_from(&bootstrap_psi(digits)?)
}

/// `M ρⁿ / n⁷`.
pub fn asym_an(n: usize, a_exp: &AExpansion) -> Result<PrecReal> {
    if n == 0 {
        return Err(Error::Domain("asymptotic formula needs n >= 1".into()));
    }
    let nn = BigInt::from(n).pow(7);
    Ok(a_exp.m.mul(&a_exp.rho.powi(n as u32)).div_int(&nn))
}

/// `M / n⁷`, the predicted `a_n / ρⁿ`.
pub fn asym_an_scaled(n: usize, a_exp: &AExpansion) -> Result<PrecReal> {
    if n == 0 {
        return Err(Error::Domain("asymptotic formula needs n >= 1".into()));
    }
    Ok(a_exp.m.div_int(&BigInt::from(n).pow(7)))
}

/// Nearest multiple of `2^-bits`.
fn dyadic(q: &BigRational, bits: u32) -> BigRational {
    let den = BigInt::one() << bits;
    BigRational::new((q * BigRational::from_integer(den.clone())).round().to_integer(), den)
}

/// Evaluates a polynomial with ball coefficients.
pub fn poly_eval(c: &[PrecReal], x: &PrecReal) -> PrecReal {
    let mut acc = PrecReal::zero(x.prec());
    for ci in c.iter().rev() {
        acc = acc.mul(x).add(ci);
    }
    acc
}

/// `ψ(z)` for rational `0 < z < 1/ρ` by solving `w B(w) = z` on `(0, 1/7)`.
///
/// `y = wB(w)` has `y' >= 1` there, so `|w - ψ(z)| <= |y(w) - z|`.
pub fn psi_numeric(ev: &BEvaluator, z: &BigRational, guess: &BigRational, slope: f64) -> Result<PrecReal> {
    let prec = ev.prec();
    // y itself is only known to a few units of 2^-prec.
    let eps = BigRational::new(BigInt::one(), BigInt::one() << (prec - 8));
    let slope = BigRational::from_float(slope).ok_or_else(|| Error::Domain("bad slope".into()))?;
    let mut w = guess.clone();
    for _ in 0..60 {
        if w > rat(1, 7) {
            w = rat(1, 7);
        }
        let r = ev.y(&w)?.sub(&PrecReal::from_rational(z, prec));
        let err = r.abs_upper().ok_or_else(|| Error::Precision("unbounded residual".into()))?;
        if err < eps {
            let out = PrecReal::from_rational(&w, prec).add_error(&err);
            return Ok(out);
        }
        let step = r.mid_rational() / &slope;
        w = dyadic(&(w - step), prec + 8);
    }
    Err(Error::Precision("inversion of y did not converge".into()))
}

/// `ψ(z) S(V) - 1` with `S = T - 49 C V⁶ log V`, at `z = (1 - V)/ρ`.
/// Returns the residual together with `V⁷ |log V|`.
pub fn psi_s_residual(
    ev: &BEvaluator,
    psi: &PsiExpansion,
    t: &[PrecReal],
    v: &BigRational,
) -> Result<(PrecReal, PrecReal)> {
    let prec = ev.prec();
    let rho = psi.rho.with_prec(prec);
    let z_ball = PrecReal::from_rational(&(BigRational::one() - v), prec).div(&rho);
    let z = dyadic(&z_ball.mid_rational(), prec + 8);
    let vb = PrecReal::from_int(1, prec).sub(&rho.mul_rational(&z));
    let log_v = vb.ln();
    let v6log = vb.powi(6).mul(&log_v);
    let approx = poly_eval(&psi.gamma, &vb).add(&psi.c.mul(&v6log));
    let guess = approx.mid_rational();
    let slope = 7.0 / psi.rho.to_f64() + psi.lambda.to_f64();
    let psi_z = psi_numeric(ev, &z, &guess, slope)?;
    let s = poly_eval(t, &vb).sub(&psi.c.mul_int(&BigInt::from(49)).mul(&v6log));
    let residual = psi_z.mul(&s).sub(&PrecReal::from_int(1, prec));
    let scale = vb.powi(7).mul(&log_v).abs();
    Ok((residual, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::constants::{aprime_closed, lambda_closed, m_closed, rho_closed};
    use crate::series::int;

    #[test]
    fn bootstrap_basics() {
        let psi = bootstrap_psi(40).unwrap();
        assert!(psi.gamma[0].contains_rational(&rat(1, 7)));
        let p = psi.prec;
        assert!(psi.rho.overlaps(&rho_closed(p)));
        assert!(psi.lambda.overlaps(&lambda_closed(p)));
        // κ = 7/(7 + ρλ).
        let r = rho_closed(p);
        let k = PrecReal::from_int(7, p).div(&r.mul(&lambda_closed(p)).add_rational(&int(7)));
        assert!(psi.kappa_w.overlaps(&k));
        assert!((psi.c.to_f64() - 0.332741583109665).abs() < 1e-13);
    }

    #[test]
    fn passes_match_displayed_terms() {
        let psi = bootstrap_psi(40).unwrap();
        let a = &psi.a;
        // After the first pass Y = W - a₂W² (+ higher terms from truncating a
        // polynomial Q(W)); the displayed W² term is exact.
        assert!(psi.passes[0][2].overlaps(&a[2].neg()));
        let w3 = a[3].sub(&a[2].sqr().mul_int(&2.into())).neg();
        assert!(psi.passes[1][3].overlaps(&w3));
        let w4 = a[2].powi(3).mul_int(&5.into()).sub(&a[2].mul(&a[3]).mul_int(&5.into())).add(&a[4]).neg();
        assert!(psi.passes[2][4].overlaps(&w4));
        // Coefficients stabilise one degree per pass; the last pass changes nothing below degree 7.
        let last = &psi.passes[BOOTSTRAP_PASSES - 1];
        let prev = &psi.passes[BOOTSTRAP_PASSES - 2];
        for j in 0..6 {
            assert!(last[j].overlaps(&prev[j]), "degree {j}");
        }
        assert!(!last[6].sub(&prev[6]).contains_zero());
    }

    #[test]
    fn chain_rule_for_linear_coefficient() {
        // ψ'(1/ρ) = 1/y'(1/7) and dV/dz = -ρ, so γ₁ = -1/(ρ y'(1/7)).
        let psi = bootstrap_psi(40).unwrap();
        let p = psi.prec;
        let r = rho_closed(p);
        let yp = PrecReal::from_int(7, p).div(&r).add(&lambda_closed(p));
        let expect = PrecReal::from_int(-1, p).div(&r.mul(&yp));
        assert!(psi.gamma[1].overlaps(&expect));
        assert!(!psi.gamma[1].contains_zero());
    }

    #[test]
    fn a_expansion_constants() {
        let a = sing_a(40).unwrap();
        let p = a.prec;
        assert!(a.eta[0].overlaps(&PrecReal::from_int(7, p).div(&rho_closed(p))));
        assert!(a.m.overlaps(&m_closed(p)));
        assert!((a.log_coeff.to_f64() + 2.3907).abs() < 1e-3);
        // A'(1/ρ) = -ρ η₁.
        let ap = a.rho.mul(&a.eta[1]).neg();
        assert!(ap.overlaps(&aprime_closed(p)));
    }

    #[test]
    fn literal_t_disagrees_in_linear_term() {
        let psi = bootstrap_psi(40).unwrap();
        let t = reciprocal_t(&psi.gamma, psi.prec);
        let lit = literal_t(&psi.gamma, psi.prec);
        assert!(t[0].overlaps(&lit[0]));
        assert!(!t[1].overlaps(&lit[1]));
        // T₁ = -49 b₁ ≠ 0.
        assert!(t[1].overlaps(&psi.gamma[1].mul_int(&BigInt::from(-49))));
    }

    #[test]
    fn asym_an_magnitude() {
        let a = sing_a(30).unwrap();
        let v = asym_an(300, &a).unwrap();
        let s = asym_an_scaled(300, &a).unwrap();
        assert!(v.overlaps(&s.mul(&a.rho.powi(300))));
        assert!(asym_an(0, &a).is_err());
    }

    #[test]
    fn psi_s_consistency() {
        // ψ S - 1 = O(V⁷ log V) with the true reciprocal T; the printed T
        // leaves a linear term and the residual stalls at O(V).
        let ev = BEvaluator::new(70).unwrap();
        let psi = bootstrap_psi(70).unwrap();
        let t = reciprocal_t(&psi.gamma, psi.prec);
        let lit = literal_t(&psi.gamma, psi.prec);
        let mut last: Option<f64> = None;
        for k in 2..=6 {
            let v = rat(1, 10i64.pow(k));
            let (res, scale) = match psi_s_residual(&ev, &psi, &t, &v) {
                Ok(x) => x,
                Err(e) => panic!("k={k}: {e}"),
            };
            let ratio = res.abs().div(&scale).to_f64();
            assert!(ratio < 30.0, "k={k}: ratio {ratio}");
            let r = res.abs().to_f64();
            if let Some(prev) = last {
                assert!(r < prev * 1e-6, "k={k}: {r} after {prev}");
            }
            last = Some(r);
            let (res_lit, _) = psi_s_residual(&ev, &psi, &lit, &v).unwrap();
            let lin = res_lit.abs().mul_rational(&(int(1) / &v)).to_f64();
            assert!(lin > 0.5, "k={k}: {lin}");
        }
    }
}
