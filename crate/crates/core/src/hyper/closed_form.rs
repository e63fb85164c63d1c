//! The generating function `B(z) = Σ b_n z^n` of closed G₂ walks through
//! its hypergeometric closed form
//!
//! `B(z) = [R₁(z) F₁(φ(z)) + R₂(z) F₂(φ(z)) + 5 P(z)] / (30 z⁵)`
//!
//! with `F₁ = 2F1(1/3, 2/3; 2; ·)` and `F₂ = 2F1(2/3, 4/3; 3; ·)`, valid on
//! `-1/2 < z <= 1/7`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hyp2f1::{direct_series, gauss_at_one, ConnectionConstants};
use crate::ball::{bits_for_digits, round_up, PrecReal};
use crate::error::{Error, Result};
use crate::series::{int, rat};
use crate::walk::b_sequence;

/// `φ(z) = 27 (z+1) z² / (1-z)³`.
pub fn phi(z: &BigRational) -> BigRational {
    let one = BigRational::one();
    int(27) * (z + &one) * z * z / ((&one - z) * (&one - z) * (&one - z))
}

/// `R₁(z) = (z+1)² (214z³ + 45z² + 60z + 5) / (z - 1)`.
pub fn r1(z: &BigRational) -> BigRational {
    let one = BigRational::one();
    let zp = z + &one;
    let poly = ((int(214) * z + int(45)) * z + int(60)) * z + int(5);
    &zp * &zp * poly / (z - &one)
}

/// `R₂(z) = 6 z² (z+1)² (101z² + 74z + 5) / (z - 1)²`.
pub fn r2(z: &BigRational) -> BigRational {
    let one = BigRational::one();
    let zp = z + &one;
    let zm = z - &one;
    let poly = (int(101) * z + int(74)) * z + int(5);
    int(6) * z * z * &zp * &zp * poly / (&zm * &zm)
}

/// `P(z) = 28z⁴ + 66z³ + 46z² + 15z + 1`.
pub fn p_poly(z: &BigRational) -> BigRational {
    (((int(28) * z + int(66)) * z + int(46)) * z + int(15)) * z + int(1)
}

/// How a hypergeometric factor gets evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Exact partial sum of `Σ b_n z^n` with a geometric tail, near `z = 0`.
    Series,
    /// Gauss summation at `φ = 1`.
    Gauss,
    /// Defining series of both `2F1` factors.
    Direct,
    /// Logarithmic connection formula around `φ = 1`.
    Connection,
}

/// Evaluator for `B` at a fixed precision. Gamma and digamma constants and
/// the walk counts are computed once and shared across calls.
#[derive(Clone, Debug)]
pub struct BEvaluator {
    prec: u32,
    wp: u32,
    conn1: ConnectionConstants,
    conn2: ConnectionConstants,
    counts: Vec<BigInt>,
}

fn params() -> [(BigRational, BigRational, BigRational); 2] {
    [(rat(1, 3), rat(2, 3), int(2)), (rat(2, 3), rat(4, 3), int(3))]
}

impl BEvaluator {
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_prec(bits_for_digits(digits))
    }

    pub fn with_prec(prec: u32) -> Result<Self> {
        let wp = prec + 64;
        let [(a1, b1, _), (a2, b2, _)] = params();
        let conn1 = ConnectionConstants::new(&a1, &b1, wp)?;
        let conn2 = ConnectionConstants::new(&a2, &b2, wp)?;
        // With 7|z| <= 7/20 the tail ratio is below 2^-1.5.
        let n = (wp as f64 / 1.5).ceil() as usize + 4;
        let counts = b_sequence(n);
        Ok(BEvaluator { prec, wp, conn1, conn2, counts })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// The route `eval` takes at `z`.
    pub fn route(&self, z: &BigRational) -> Result<Route> {
        check_window(z)?;
        if z.abs() < rat(1, 20) {
            return Ok(Route::Series);
        }
        if *z == rat(1, 7) {
            return Ok(Route::Gauss);
        }
        if phi(z) <= rat(9, 10) {
            Ok(Route::Direct)
        } else {
            Ok(Route::Connection)
        }
    }

    /// `B(z)` for rational `z` in `(-1/2, 1/7]`.
    pub fn eval(&self, z: &BigRational) -> Result<PrecReal> {
        let route = self.route(z)?;
        self.eval_via(z, route)
    }

    /// `B(z)` through a chosen route; fails if the route does not apply.
    pub fn eval_via(&self, z: &BigRational, route: Route) -> Result<PrecReal> {
        check_window(z)?;
        let wp = self.wp;
        let value = match route {
            Route::Series => self.series(z)?,
            Route::Gauss | Route::Direct | Route::Connection => {
                if z.is_zero() {
                    return Err(Error::Domain("closed form is singular at z = 0".into()));
                }
                let ph = phi(z);
                let (f1, f2) = match route {
                    Route::Gauss => {
                        if !ph.is_one() {
                            return Err(Error::HypRegime("Gauss summation needs φ(z) = 1".into()));
                        }
                        let [(a1, b1, c1), (a2, b2, c2)] = params();
                        (gauss_at_one(&a1, &b1, &c1, wp)?, gauss_at_one(&a2, &b2, &c2, wp)?)
                    }
                    Route::Direct => {
                        let x = PrecReal::from_rational(&ph, wp);
                        let [(a1, b1, c1), (a2, b2, c2)] = params();
                        (direct_series(&a1, &b1, &c1, &x, wp)?, direct_series(&a2, &b2, &c2, &x, wp)?)
                    }
                    _ => {
                        let w = PrecReal::from_rational(&(BigRational::one() - &ph), wp);
                        (self.conn1.evaluate(&w, wp)?.value(), self.conn2.evaluate(&w, wp)?.value())
                    }
                };
                let num = f1.mul_rational(&r1(z)).add(&f2.mul_rational(&r2(z))).add_rational(&(int(5) * p_poly(z)));
                num.mul_rational(&(BigRational::one() / (int(30) * z.pow(5))))
            }
        };
        Ok(value.with_prec(self.prec))
    }

    fn series(&self, z: &BigRational) -> Result<PrecReal> {
        let n = self.counts.len() - 1;
        let q = round_up(&(int(7) * z.abs()), self.wp + 16);
        if q >= rat(7, 20) {
            return Err(Error::HypRegime("series route needs |z| < 1/20".into()));
        }
        let mut sum = BigRational::zero();
        for c in self.counts.iter().rev() {
            sum = sum * z + BigRational::from_integer(c.clone());
        }
        // b_n <= 7^n.
        let tail = q.pow(n as i32 + 1) / (BigRational::one() - &q);
        Ok(PrecReal::from_rational(&sum, self.wp).add_error(&tail))
    }

    /// `y(w) = w B(w)`.
    pub fn y(&self, w: &BigRational) -> Result<PrecReal> {
        Ok(self.eval(w)?.mul_rational(w))
    }
}

fn check_window(z: &BigRational) -> Result<()> {
    if *z <= rat(-1, 2) || *z > rat(1, 7) {
        return Err(Error::Domain(format!("B is evaluated on (-1/2, 1/7], got z = {z}")));
    }
    Ok(())
}

/// `B(z)` to `digits` decimal digits.
pub fn eval_b(z: &BigRational, digits: u32) -> Result<PrecReal> {
    BEvaluator::new(digits)?.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{pi, sqrt3};
    use crate::walk::bn_exact;

    #[test]
    fn rational_pieces_at_one_seventh() {
        let z = rat(1, 7);
        assert!(phi(&z).is_one());
        assert_eq!(int(5) * p_poly(&z), rat(150, 7));
        // The prefactors multiplying the Gauss values.
        assert_eq!(r1(&z), rat(-55296, 2401));
        assert_eq!(r2(&z), rat(9216, 2401));
        // φ(-1/2) = 1 marks the other end of the window.
        assert!(phi(&rat(-1, 2)).is_one());
    }

    #[test]
    fn value_at_origin_and_routes() {
        let ev = BEvaluator::new(40).unwrap();
        assert!(ev.eval(&BigRational::zero()).unwrap().contains_rational(&BigRational::one()));
        assert_eq!(ev.route(&rat(1, 7)).unwrap(), Route::Gauss);
        assert_eq!(ev.route(&rat(1, 100)).unwrap(), Route::Series);
        assert_eq!(ev.route(&rat(-1, 10)).unwrap(), Route::Direct);
        assert_eq!(ev.route(&rat(-49, 100)).unwrap(), Route::Connection);
        assert!(ev.eval(&rat(1, 6)).is_err());
        assert!(ev.eval(&rat(-1, 2)).is_err());
    }

    #[test]
    fn value_at_singularity_matches_growth_constant() {
        let digits = 50;
        let p = bits_for_digits(digits);
        let b = eval_b(&rat(1, 7), digits).unwrap();
        // ρ = 5π / (8575π - 15552√3) and B(1/7) = 7/ρ.
        let pi = pi(p);
        let rho = pi
            .mul_int(&BigInt::from(5))
            .div(&pi.mul_int(&BigInt::from(8575)).sub(&sqrt3(p).mul_int(&BigInt::from(15552))));
        let expect = PrecReal::from_int(7, p).div(&rho);
        assert!(b.overlaps(&expect));
        assert!(b.radius_f64() < 1e-45);
        assert!((rho.to_f64() - 6.82111117268211).abs() < 1e-12);
    }

    fn partial_sum_oracle(z: &BigRational, terms: usize) -> (BigRational, BigRational) {
        // Independent walk counts from the Laurent-polynomial recursion.
        let mut sum = BigRational::zero();
        let mut zp = BigRational::one();
        for n in 0..terms {
            sum += BigRational::from_integer(bn_exact(n).unwrap()) * &zp;
            zp *= z;
        }
        let q = int(7) * z.abs();
        let tail = q.pow(terms as i32) / (BigRational::one() - q);
        (sum, tail)
    }

    #[test]
    fn closed_form_matches_power_series() {
        let ev = BEvaluator::new(30).unwrap();
        for z in [rat(1, 10), rat(-1, 10), rat(1, 15)] {
            let (sum, tail) = partial_sum_oracle(&z, 90);
            let oracle = PrecReal::from_rational(&sum, ev.prec()).add_error(&tail);
            let v = ev.eval(&z).unwrap();
            assert!(v.overlaps(&oracle), "z = {z}");
            assert!(v.sub(&oracle).abs_upper().unwrap() < rat(1, 10i64.pow(12)));
        }
    }

    #[test]
    fn direct_and_connection_routes_agree() {
        let ev = BEvaluator::new(40).unwrap();
        for z in [rat(-3, 10), rat(1, 9)] {
            let d = ev.eval_via(&z, Route::Direct).unwrap();
            let c = ev.eval_via(&z, Route::Connection).unwrap();
            assert!(d.overlaps(&c), "z = {z}");
            assert!(d.radius_f64() < 1e-35 && c.radius_f64() < 1e-35);
        }
        // Series and closed form overlap where both apply.
        let z = rat(1, 25);
        let s = ev.eval_via(&z, Route::Series).unwrap();
        let d = ev.eval_via(&z, Route::Direct).unwrap();
        assert!(s.overlaps(&d));
    }
}
