// Classifying tree generators as strict or sharp.

use g2trees::criterion::{analyze, Branch};
use g2trees::generator::GeneratorSpec;
use g2trees::Result;

fn report(name: &str, spec: &GeneratorSpec) -> Result<Branch> {
    let r = analyze(spec, 30)?;
    let json = serde_json::to_string(&r.to_json(12)).expect("serializable");
    println!("{name}: {json}");
    Ok(r.branch)
}

pub fn run_example() -> Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/specs");
    let catalan = GeneratorSpec::parse(&std::fs::read_to_string(format!("{dir}/catalan.spec"))?, 30)?;
    assert_eq!(report("catalan", &catalan)?, Branch::Strict);

    let binary = GeneratorSpec::parse(&std::fs::read_to_string(format!("{dir}/binary.spec"))?, 30)?;
    assert_eq!(report("binary", &binary)?, Branch::Strict);

    assert_eq!(report("example2", &GeneratorSpec::example2())?, Branch::Sharp);
    assert_eq!(report("g2", &GeneratorSpec::g2(120, 30)?)?, Branch::Sharp);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
