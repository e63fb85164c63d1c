//! Exact multiples of `√3/π`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{pi, sqrt3, PrecReal};
use crate::error::{Error, Result};
use crate::series::int;

/// The real number `q·√3/π` for an exact rational `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymRational {
    pub q: BigRational,
}

impl SymRational {
    pub fn new(q: BigRational) -> Self {
        SymRational { q }
    }

    pub fn zero() -> Self {
        SymRational { q: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        SymRational { q: &self.q + &other.q }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        SymRational { q: &self.q * k }
    }

    pub fn to_real(&self, prec: u32) -> PrecReal {
        sqrt3_over_pi(prec).mul_rational(&self.q)
    }
}

impl fmt::Display for SymRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·√3/π", self.q)
    }
}

/// `√3/π` as a ball.
pub fn sqrt3_over_pi(prec: u32) -> PrecReal {
    sqrt3(prec + 8).div(&pi(prec + 8)).with_prec(prec)
}

/// Writes `Γ(x)` as `r·Γ(x mod 1)` for `x > 0` using `Γ(x+1) = xΓ(x)`.
fn reduce_gamma(x: &BigRational) -> (BigRational, BigRational) {
    let mut r = BigRational::one();
    let mut y = x.clone();
    while y > BigRational::one() {
        y -= BigRational::one();
        r *= &y;
    }
    (r, y)
}

/// `Γ(n) / (Γ(a) Γ(b))` as a multiple of `√3/π`, for an integer `n >= 1`
/// and positive `a`, `b` whose fractional parts are `1/3` and `2/3` in
/// some order. Uses `Γ(1/3) Γ(2/3) = 2π/√3`.
pub fn gamma_ratio_thirds(n: &BigRational, a: &BigRational, b: &BigRational) -> Result<SymRational> {
    if !n.is_integer() || !n.is_positive() || !a.is_positive() || !b.is_positive() {
        return Err(Error::Domain(format!("unsupported gamma ratio Γ({n})/(Γ({a})Γ({b}))")));
    }
    let (ra, fa) = reduce_gamma(a);
    let (rb, fb) = reduce_gamma(b);
    let third = BigRational::new(1.into(), 3.into());
    let two_thirds = BigRational::new(2.into(), 3.into());
    let ok = (fa == third && fb == two_thirds) || (fa == two_thirds && fb == third);
    if !ok {
        return Err(Error::Domain(format!("Γ({a})Γ({b}) is not a rational multiple of 2π/√3")));
    }
    let (rn, _) = reduce_gamma(n);
    // Γ(n)/(ra rb · 2π/√3) = rn/(2 ra rb) · √3/π.
    Ok(SymRational::new(rn / (int(2) * ra * rb)))
}
