// Three routes to `b_n`: the Laurent coefficient formula, the Weyl-chamber
// walk and the contour integral over the torus.

use g2trees::walk::{b_sequence, bn_exact, bn_scaled, saddle_quadrature};
use g2trees::Result;

pub fn run_example() -> Result<()> {
    let seq = b_sequence(12);
    for (n, b) in seq.iter().enumerate() {
        assert_eq!(&bn_exact(n)?, b);
    }
    let shown: Vec<String> = seq.iter().map(|b| b.to_string()).collect();
    println!("b_0..b_12 = {}", shown.join(", "));

    for n in [2, 10, 40] {
        let q = saddle_quadrature(n, 64)?;
        let dp = bn_scaled(n);
        println!("n = {n:>2}: quadrature {:.12e}  walk {:.12e}  grid {}", q.value, dp, q.grid);
        assert!(((q.value - dp) / dp).abs() < 1e-6);
    }

    println!("b_2000 / 7^2000 = {:.6e}", bn_scaled(2000));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
