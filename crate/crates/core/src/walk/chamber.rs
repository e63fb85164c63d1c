//! Walks in the dominant Weyl chamber of G₂.
//!
//! States are dominant weights `a λ₁ + b λ₂` with `a, b >= 0`. Tensoring with
//! the seven-dimensional representation moves a state by one of the six
//! short roots, provided the target stays dominant, and keeps it in place
//! when `a > 0`. The number of length-`n` walks from the origin back to the
//! origin is `b_n`.
//!
//! The level `a + 2b` changes by at most one per step, so a walk that must
//! return to the origin after `n_max` steps never exceeds level
//! `min(k, n_max - k)` at step `k`.

use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

/// Values below this are flushed to zero in the scaled walk.
const FLUSH: f64 = 1e-300;

/// Dense table of walk weights over the dominant chamber, divided by `7^k`
/// after `k` steps. Entries are nonnegative and their total never exceeds 1.
#[derive(Clone, Debug)]
pub struct ScaledGrid {
    width_b: usize,
    data: Vec<f64>,
}

impl ScaledGrid {
    /// Weight currently sitting on the dominant weight `(a, b)`.
    pub fn get(&self, a: usize, b: usize) -> f64 {
        if b >= self.width_b {
            return 0.0;
        }
        self.data.get(a * self.width_b + b).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.data.iter().sum()
    }
}

/// Runs the walk for `n_max` steps, calling `record(k, weight at origin)`
/// after every step.
fn run<T, F>(n_max: usize, one: T, normalize: F, mut record: impl FnMut(usize, &T))
where
    T: Clone + Send + Sync + Zero + for<'a> AddAssign<&'a T>,
    F: Fn(T) -> T + Sync,
{
    let max_level = n_max / 2;
    let wa = max_level + 3;
    let wb = max_level / 2 + 3;
    let mut cur = vec![T::zero(); wa * wb];
    cur[0] = one;
    record(0, &cur[0]);
    let mut next = vec![T::zero(); wa * wb];
    for k in 1..=n_max {
        let level = k.min(n_max - k);
        let prev = &cur;
        next.par_chunks_mut(wb).enumerate().for_each(|(a, row)| {
            for (b, cell) in row.iter_mut().enumerate() {
                if a + 2 * b > level {
                    *cell = T::zero();
                    continue;
                }
                let at = |da: isize, db: isize| -> Option<&T> {
                    let (sa, sb) = (a as isize - da, b as isize - db);
                    if sa < 0 || sb < 0 || sa as usize >= wa || sb as usize >= wb {
                        return None;
                    }
                    Some(&prev[sa as usize * wb + sb as usize])
                };
                let mut acc = T::zero();
                for (da, db) in [(1, 0), (-1, 1), (2, -1), (-1, 0), (1, -1), (-2, 1)] {
                    if let Some(v) = at(da, db) {
                        acc += v;
                    }
                }
                if a > 0 {
                    acc += &prev[a * wb + b];
                }
                *cell = normalize(acc);
            }
        });
        std::mem::swap(&mut cur, &mut next);
        record(k, &cur[0]);
    }
}

/// Exact `b_0, ..., b_{n_max}`.
pub fn b_sequence(n_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max + 1);
    run(n_max, BigInt::from(1), |x| x, |_, v| out.push(v.clone()));
    out
}

fn scale(x: f64) -> f64 {
    let y = x / 7.0;
    if y < FLUSH {
        0.0
    } else {
        y
    }
}

/// `b_k / 7^k` for every `k <= n_max`, in double precision.
///
/// All walk weights are nonnegative, so the only error is accumulated
/// rounding, at most a few units in the last place per step.
pub fn bn_scaled_table(n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    run(n_max, 1.0f64, scale, |_, v| out.push(*v));
    out
}

/// `b_n / 7^n` in double precision.
pub fn bn_scaled(n: usize) -> f64 {
    let mut last = 1.0;
    run(n, 1.0f64, scale, |k, v| {
        if k == n {
            last = *v;
        }
    });
    last
}

/// The scaled grid after `n` unpruned steps, for inspecting the walk
/// distribution itself.
pub fn scaled_grid(n: usize) -> ScaledGrid {
    let max_level = n;
    let wa = max_level + 3;
    let wb = max_level / 2 + 3;
    let mut cur = vec![0.0f64; wa * wb];
    cur[0] = 1.0;
    for _ in 0..n {
        let mut next = vec![0.0f64; wa * wb];
        for a in 0..wa {
            for b in 0..wb {
                let v = cur[a * wb + b];
                if v == 0.0 {
                    continue;
                }
                for (da, db) in [(1i64, 0i64), (-1, 1), (2, -1), (-1, 0), (1, -1), (-2, 1)] {
                    let (ta, tb) = (a as i64 + da, b as i64 + db);
                    if ta < 0 || tb < 0 || ta as usize >= wa || tb as usize >= wb {
                        continue;
                    }
                    next[ta as usize * wb + tb as usize] += v / 7.0;
                }
                if a > 0 {
                    next[a * wb + b] += v / 7.0;
                }
            }
        }
        cur = next;
    }
    ScaledGrid { width_b: wb, data: cur }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::bn_exact;
    use num_traits::ToPrimitive;

    #[test]
    fn sequence_matches_known_values() {
        let b = b_sequence(11);
        let expect = [1, 0, 1, 1, 4, 10, 35, 120, 455, 1792, 7413, 31780];
        for (x, e) in b.iter().zip(expect) {
            assert_eq!(*x, BigInt::from(e));
        }
    }

    #[test]
    fn chamber_agrees_with_laurent_grid() {
        let b = b_sequence(40);
        for n in [13, 25, 40] {
            assert_eq!(b[n], bn_exact(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn scaled_values() {
        assert_eq!(bn_scaled(0), 1.0);
        let v9 = bn_scaled(9);
        assert!((v9 / (1792.0 / 7f64.powi(9)) - 1.0).abs() < 1e-14);
        assert!((v9 - 4.4407e-5).abs() < 1e-9);
        let exact = bn_exact(100).unwrap();
        let oracle = num_rational::BigRational::new(exact, BigInt::from(7).pow(100)).to_f64().unwrap();
        assert!((bn_scaled(100) / oracle - 1.0).abs() < 1e-10);
        let table = bn_scaled_table(100);
        assert_eq!(table[100], bn_scaled(100));
    }

    #[test]
    fn grid_mass_is_bounded() {
        let g = scaled_grid(30);
        let mass = g.total_mass();
        assert!(mass > 0.0 && mass <= 1.0 + 1e-12);
        assert!((g.get(0, 0) - bn_scaled(30)).abs() < 1e-18);
    }
}
