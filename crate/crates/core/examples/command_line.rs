// Driving the `g2trees` command line in-process.

use g2trees::cli::run_to_string;
use g2trees::Result;

pub fn run_example() -> Result<()> {
    let (code, out) = run_to_string(["g2trees", "seq", "--which", "b", "--n", "8"]);
    print!("{out}");
    assert_eq!(code, 0);

    let (code, out) = run_to_string(["g2trees", "kappa", "--i-max", "9"]);
    print!("{out}");
    assert_eq!(code, 0);

    let (code, out) = run_to_string(["g2trees", "--format", "json", "saddle", "--n", "20"]);
    print!("{out}");
    assert_eq!(code, 0);

    // Bad arguments are usage errors.
    let (code, _) = run_to_string(["g2trees", "seq", "--which", "b", "--n", "900"]);
    assert_eq!(code, 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
