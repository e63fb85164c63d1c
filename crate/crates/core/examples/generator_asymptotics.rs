// The expansion of `A` at its singularity `1/ρ` and the prediction
// `a_n ~ M ρⁿ / n⁷`.

use g2trees::generator::a_sequence;
use g2trees::sing::psi::asym_an_scaled;
use g2trees::sing::sing_a;
use g2trees::{PrecReal, Result};

pub fn run_example() -> Result<()> {
    let a_exp = sing_a(30)?;
    println!("rho = {}", a_exp.rho.to_decimal(25));
    println!("C   = {}", a_exp.c.to_decimal(25));
    println!("M   = {}", a_exp.m.to_decimal(25));
    for (j, e) in a_exp.eta.iter().enumerate() {
        println!("eta_{j} = {}", e.to_decimal(20));
    }

    let a = a_sequence(200)?;
    let prec = a_exp.prec;
    for n in [50, 100, 200] {
        let scaled = PrecReal::from_int(a[n].clone(), prec).div(&a_exp.rho.powi(n as u32));
        let pred = asym_an_scaled(n, &a_exp)?;
        println!("n = {n:>3}: a_n n^7 / (M rho^n) = {:.6}", scaled.div(&pred).to_f64());
    }
    assert!(a.iter().all(|x| x.sign() != num_bigint::Sign::Minus));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
