// `B(z)` on `(-1/2, 1/7]` from its hypergeometric closed form.

use g2trees::hyper::{hyp2f1, BEvaluator, Route};
use g2trees::series::rat;
use g2trees::{PrecReal, Result};

pub fn run_example() -> Result<()> {
    let ev = BEvaluator::new(40)?;
    for z in [rat(1, 7), rat(1, 9), rat(1, 30), rat(-1, 5), rat(-49, 100)] {
        let route = ev.route(&z)?;
        let b = ev.eval(&z)?;
        println!("B({z:>7}) = {}  ({route:?})", b.to_decimal(30));
    }

    // Two routes through the same point must overlap.
    let z = rat(1, 9);
    let direct = ev.eval_via(&z, Route::Direct)?;
    let conn = ev.eval_via(&z, Route::Connection)?;
    assert!(direct.overlaps(&conn));

    // 2F1(1/3, 2/3; 2; 1/2) on its own.
    let x = PrecReal::from_rational(&rat(1, 2), 200);
    let f = hyp2f1(&rat(1, 3), &rat(2, 3), &g2trees::series::int(2), &x, 40)?;
    println!("2F1(1/3, 2/3; 2; 1/2) = {}", f.to_decimal(30));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
