#[allow(dead_code)]
mod series_inversion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/series_inversion.rs"));
}

#[allow(dead_code)]
mod walk_counts {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/walk_counts.rs"));
}

#[allow(dead_code)]
mod certified_constants {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/certified_constants.rs"));
}

#[allow(dead_code)]
mod hypergeometric_b {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hypergeometric_b.rs"));
}

#[allow(dead_code)]
mod singular_expansion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/singular_expansion.rs"));
}

#[allow(dead_code)]
mod generator_asymptotics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generator_asymptotics.rs"));
}

#[allow(dead_code)]
mod tree_criterion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tree_criterion.rs"));
}

#[allow(dead_code)]
mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn series_inversion_example_runs() {
    series_inversion::run_example().expect("series_inversion example should run");
}

#[test]
fn walk_counts_example_runs() {
    walk_counts::run_example().expect("walk_counts example should run");
}

#[test]
fn certified_constants_example_runs() {
    certified_constants::run_example().expect("certified_constants example should run");
}

#[test]
fn hypergeometric_b_example_runs() {
    hypergeometric_b::run_example().expect("hypergeometric_b example should run");
}

#[test]
fn singular_expansion_example_runs() {
    singular_expansion::run_example().expect("singular_expansion example should run");
}

#[test]
fn generator_asymptotics_example_runs() {
    generator_asymptotics::run_example().expect("generator_asymptotics example should run");
}

#[test]
fn tree_criterion_example_runs() {
    tree_criterion::run_example().expect("tree_criterion example should run");
}

#[test]
fn command_line_example_runs() {
    command_line::run_example().expect("command_line example should run");
}
