// Every crate example, compiled into the test suite and run once.

#[allow(dead_code)]
mod design_check {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/design_check.rs"));
}

#[test]
fn design_check_runs() {
    design_check::run_example().expect("design_check example should run");
}

#[allow(dead_code)]
mod surface_survey {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/surface_survey.rs"));
}

#[test]
fn surface_survey_runs() {
    surface_survey::run_example().expect("surface_survey example should run");
}

#[allow(dead_code)]
mod sliding_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sliding_bounds.rs"));
}

#[test]
fn sliding_bounds_runs() {
    sliding_bounds::run_example().expect("sliding_bounds example should run");
}

#[allow(dead_code)]
mod mechanism_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mechanism_sweep.rs"));
}

#[test]
fn mechanism_sweep_runs() {
    mechanism_sweep::run_example().expect("mechanism_sweep example should run");
}

#[allow(dead_code)]
mod envelope_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/envelope_sweep.rs"));
}

#[test]
fn envelope_sweep_runs() {
    envelope_sweep::run_example().expect("envelope_sweep example should run");
}

#[allow(dead_code)]
mod pull_test {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pull_test.rs"));
}

#[test]
fn pull_test_runs() {
    pull_test::run_example().expect("pull_test example should run");
}

#[allow(dead_code)]
mod chain_sync {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/chain_sync.rs"));
}

#[test]
fn chain_sync_runs() {
    chain_sync::run_example().expect("chain_sync example should run");
}

#[allow(dead_code)]
mod mission {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mission.rs"));
}

#[test]
fn mission_runs() {
    mission::run_example().expect("mission example should run");
}

#[allow(dead_code)]
mod failure_mission {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/failure_mission.rs"));
}

#[test]
fn failure_mission_runs() {
    failure_mission::run_example().expect("failure_mission example should run");
}

#[allow(dead_code)]
mod config_file {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/config_file.rs"));
}

#[test]
fn config_file_runs() {
    config_file::run_example().expect("config_file example should run");
}
