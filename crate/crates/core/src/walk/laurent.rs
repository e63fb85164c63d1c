use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_EXACT_LIMIT: usize = 500;

/// `W(x, y)` fully expanded, including its `x^-2 y^-3` prefactor, as
/// `(x exponent, y exponent, coefficient)`.
pub const W_TERMS: [(i64, i64, i64); 12] = [
    (0, 0, 1),
    (-1, 0, -1),
    (-3, -1, 1),
    (-4, -2, -1),
    (-5, -4, 1),
    (-5, -5, -1),
    (-4, -6, 1),
    (-3, -6, -1),
    (-1, -5, 1),
    (0, -4, -1),
    (1, -2, 1),
    (1, -1, -1),
];

/// `M(x, y) = 1 + x + y + xy + x²y + xy² + x²y²`.
pub const M_TERMS: [(i64, i64); 7] = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)];

/// Dense bivariate Laurent polynomial with exact integer coefficients.
///
/// `data[i * ny + j]` is the coefficient of `x^{lo_x + i} y^{lo_y + j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentGrid {
    lo_x: i64,
    lo_y: i64,
    nx: usize,
    ny: usize,
    data: Vec<BigInt>,
}

impl LaurentGrid {
    pub fn from_terms(terms: &[(i64, i64, i64)]) -> Self {
        let lo_x = terms.iter().map(|t| t.0).min().unwrap_or(0);
        let hi_x = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let lo_y = terms.iter().map(|t| t.1).min().unwrap_or(0);
        let hi_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let nx = (hi_x - lo_x + 1) as usize;
        let ny = (hi_y - lo_y + 1) as usize;
        let mut g = LaurentGrid { lo_x, lo_y, nx, ny, data: vec![BigInt::zero(); nx * ny] };
        for &(ex, ey, c) in terms {
            let i = (ex - lo_x) as usize * ny + (ey - lo_y) as usize;
            g.data[i] += c;
        }
        g
    }

    pub fn w() -> Self {
        Self::from_terms(&W_TERMS)
    }

    pub fn m() -> Self {
        let terms: Vec<_> = M_TERMS.iter().map(|&(a, b)| (a, b, 1)).collect();
        Self::from_terms(&terms)
    }

    pub fn lo(&self) -> (i64, i64) {
        (self.lo_x, self.lo_y)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn coeff(&self, ex: i64, ey: i64) -> BigInt {
        let (i, j) = (ex - self.lo_x, ey - self.lo_y);
        if i < 0 || j < 0 || i >= self.nx as i64 || j >= self.ny as i64 {
            return BigInt::zero();
        }
        self.data[i as usize * self.ny + j as usize].clone()
    }

    /// Nonzero terms as `(x exponent, y exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(i64, i64, BigInt)> {
        let mut out = Vec::new();
        for i in 0..self.nx {
            for j in 0..self.ny {
                let c = &self.data[i * self.ny + j];
                if !c.is_zero() {
                    out.push((self.lo_x + i as i64, self.lo_y + j as i64, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul_m(&self) -> Self {
        let hi_x = self.lo_x + self.nx as i64 + 1;
        let hi_y = self.lo_y + self.ny as i64 + 1;
        self.mul_m_windowed((self.lo_x, hi_x), (self.lo_y, hi_y))
    }

    /// Multiplies by `M` and keeps only exponents inside the inclusive
    /// windows.
    pub fn mul_m_windowed(&self, wx: (i64, i64), wy: (i64, i64)) -> Self {
        let lo_x = self.lo_x.max(wx.0);
        let hi_x = (self.lo_x + self.nx as i64 + 1).min(wx.1);
        let lo_y = self.lo_y.max(wy.0);
        let hi_y = (self.lo_y + self.ny as i64 + 1).min(wy.1);
        let nx = (hi_x - lo_x + 1).max(0) as usize;
        let ny = (hi_y - lo_y + 1).max(0) as usize;
        let mut data = vec![BigInt::zero(); nx * ny];
        if ny > 0 {
            data.par_chunks_mut(ny).enumerate().for_each(|(i, row)| {
                let ex = lo_x + i as i64;
                for (j, cell) in row.iter_mut().enumerate() {
                    let ey = lo_y + j as i64;
                    for &(dx, dy) in &M_TERMS {
                        let (si, sj) = (ex - dx - self.lo_x, ey - dy - self.lo_y);
                        if si < 0 || sj < 0 || si >= self.nx as i64 || sj >= self.ny as i64 {
                            continue;
                        }
                        let c = &self.data[si as usize * self.ny + sj as usize];
                        if !c.is_zero() {
                            *cell += c;
                        }
                    }
                }
            });
        }
        LaurentGrid { lo_x, lo_y, nx, ny, data }
    }
}

/// `b_n` with the default exact limit.
pub fn bn_exact(n: usize) -> Result<BigInt> {
    bn_exact_with_limit(n, DEFAULT_EXACT_LIMIT)
}

/// `b_n = [x^n y^n] W·M^n`. Cells that can no longer reach `x^n y^n` in the
/// remaining multiplications are dropped as the product is built.
pub fn bn_exact_with_limit(n: usize, limit: usize) -> Result<BigInt> {
    if n > limit {
        return Err(Error::ExactLimit { n, limit });
    }
    let t = n as i64;
    let mut g = LaurentGrid::w();
    for k in 1..=n {
        let remaining = (n - k) as i64;
        let w = (t - 2 * remaining, t);
        g = g.mul_m_windowed(w, w);
    }
    Ok(g.coeff(t, t))
}
