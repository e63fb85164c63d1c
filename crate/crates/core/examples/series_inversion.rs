// Lagrange inversion and its inverse on exact power series.

use g2trees::series::{lagrange_invert, log_one_minus_coeff, recover_generator};
use g2trees::walk::b_sequence;
use g2trees::{ExactSeries, Result};

pub fn run_example() -> Result<()> {
    // Plane trees: A = 1/(1-x) gives y_n = Catalan(n-1).
    let a = ExactSeries::geometric(8);
    let y = lagrange_invert(&a, 7)?;
    let ints = y.to_integers().expect("integral");
    println!("y for A = 1/(1-x): {ints:?}");
    assert_eq!(ints[5], 14.into());

    // The generator behind the invariant dimensions 1, 0, 1, 1, 4, 10, 35, ...
    let b = ExactSeries::from_integers(b_sequence(12))?;
    let a = recover_generator(&b, 13)?;
    println!("a_0..a_12 = {:?}", a.to_integers().expect("integral"));
    assert!(a.is_nonnegative());

    // And back again: y = x B(x).
    let y = lagrange_invert(&a, 13)?;
    assert_eq!(y.shift_down()?, b);

    // Text round trip.
    assert_eq!(ExactSeries::from_text(&a.to_text())?, a);

    println!("[x^7] (1-x)^6 log(1-x) = {}", log_one_minus_coeff(6, 7)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
