use num_complex::Complex64;
use rayon::prelude::*;

use super::laurent::W_TERMS;
use crate::error::{Error, Result};

/// Largest grid tried before refinement gives up.
const MAX_GRID: usize = 1 << 14;
const AGREEMENT: f64 = 1e-8;
const IMAG_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    /// Real part of the final estimate of `b_n / 7^n`.
    pub value: f64,
    /// Imaginary part, which must vanish up to rounding.
    pub imag: f64,
    /// Points per axis of the accepted grid.
    pub grid: usize,
    /// Relative change from the previous grid.
    pub refinement: f64,
}

fn w_at(x: Complex64, y: Complex64) -> Complex64 {
    W_TERMS.iter().map(|&(ex, ey, c)| x.powi(ex as i32) * y.powi(ey as i32) * c as f64).sum()
}

fn m_at(x: Complex64, y: Complex64) -> Complex64 {
    let xy = x * y;
    Complex64::new(1.0, 0.0) + x + y + xy + xy * x + xy * y + xy * xy
}

/// Periodic trapezoid rule with `g` points per axis for
/// `(1/4π²) ∬ W(e^{iu}, e^{iv}) (M/(7xy))^n du dv`.
pub fn trapezoid(n: usize, g: usize) -> Complex64 {
    let step = std::f64::consts::TAU / g as f64;
    let unit: Vec<Complex64> = (0..g).map(|j| Complex64::from_polar(1.0, step * j as f64)).collect();
    let rows: Vec<Complex64> = unit
        .par_iter()
        .map(|&x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &y in &unit {
                let base = m_at(x, y) / (x * y * 7.0);
                acc += w_at(x, y) * base.powu(n as u32);
            }
            acc
        })
        .collect();
    rows.iter().sum::<Complex64>() / (g * g) as f64
}

/// Refines the grid by doubling until two successive estimates agree to
/// `1e-8` relative. The rule integrates every monomial exactly once the
/// grid exceeds `n + 7`, so refinement settles quickly.
pub fn saddle_quadrature(n: usize, grid_points: usize) -> Result<Quadrature> {
    if n < 2 {
        return Err(Error::Domain(format!("saddle quadrature needs n >= 2, got {n}")));
    }
    if grid_points < 64 {
        return Err(Error::Domain(format!("grid must have at least 64 points, got {grid_points}")));
    }
    let mut g = grid_points;
    let mut prev = trapezoid(n, g);
    while g < MAX_GRID {
        g *= 2;
        let cur = trapezoid(n, g);
        let rel = ((cur.re - prev.re) / cur.re).abs();
        if rel <= AGREEMENT {
            if cur.im.abs() > IMAG_TOL * cur.re.abs() {
                return Err(Error::Refinement(format!(
                    "imaginary part {:e} too large relative to {:e}",
                    cur.im, cur.re
                )));
            }
            return Ok(Quadrature { value: cur.re, imag: cur.im, grid: g, refinement: rel });
        }
        prev = cur;
    }
    Err(Error::Refinement(format!("no agreement up to {MAX_GRID} points for n={n}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::bn_scaled;

    #[test]
    fn small_cases_match_exact_values() {
        let q2 = saddle_quadrature(2, 64).unwrap();
        assert!((q2.value * 49.0 - 1.0).abs() < 1e-6);
        let q4 = saddle_quadrature(4, 64).unwrap();
        assert!((q4.value * 2401.0 / 4.0 - 1.0).abs() < 1e-6);
        assert!((q4.value - 1.6660e-3).abs() < 1e-7);
    }

    #[test]
    fn agrees_with_walk_count() {
        let q = saddle_quadrature(40, 64).unwrap();
        assert!((q.value / bn_scaled(40) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn coarse_grid_aliases() {
        // Fewer points than monomials in play: the rule is no longer exact.
        let exact = bn_scaled(40);
        let coarse = trapezoid(40, 16).re;
        assert!((coarse / exact - 1.0).abs() > 1e-3);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(saddle_quadrature(1, 64).is_err());
        assert!(saddle_quadrature(10, 32).is_err());
    }
}
