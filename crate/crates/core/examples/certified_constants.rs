// The growth constants, each computed by two independent routes.

use g2trees::hyper::constants;
use g2trees::Result;

pub fn run_example() -> Result<()> {
    for rec in constants(40)? {
        println!(
            "{:<18} {}  ±{}  second route: {}",
            rec.name,
            rec.value.to_decimal(30),
            rec.value.radius_string(),
            rec.alternate_route,
        );
        assert!(rec.routes_agree(), "{} routes disagree", rec.name);
        assert!(rec.matches_printed(), "{} misses its printed digits", rec.name);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
