// The singular expansion of `B` at `1/7` and the resulting asymptotic
// series for `b_n`.

use g2trees::ball::bits_for_digits;
use g2trees::series::int;
use g2trees::sing::{asym_bn_scaled, expand_fg, kappa};
use g2trees::walk::bn_exact;
use g2trees::{PrecReal, Result};
use num_bigint::BigInt;

pub fn run_example() -> Result<()> {
    let exp = expand_fg(10, 30)?;
    for (i, f) in exp.f.iter().enumerate().take(4) {
        println!("f_{i} = {}", f.to_decimal(25));
    }
    println!("g_6 = {:?}", exp.g[6]);

    for (i, k) in kappa(12)?.iter().enumerate() {
        println!("kappa_{} = {k}", i + 7);
    }

    let prec = bits_for_digits(30);
    let n = 300;
    let exact = PrecReal::from_rational(&(int(bn_exact(n)?) / int(BigInt::from(7).pow(n as u32))), prec);
    for order in [7, 10, 15] {
        let pred = asym_bn_scaled(n, order, prec)?;
        let rel = exact.sub(&pred).div(&exact).to_f64();
        println!("n = {n}, terms to kappa_{order}: relative error {rel:.3e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
