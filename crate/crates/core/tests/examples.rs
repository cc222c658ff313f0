//! Every example under `examples/` runs to completion.

#[allow(dead_code)]
mod jets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/jets.rs"));
}

#[allow(dead_code)]
mod helix_frenet {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/helix_frenet.rs"));
}

#[allow(dead_code)]
mod surface_curvatures {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/surface_curvatures.rs"));
}

#[allow(dead_code)]
mod catalog {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/catalog.rs"));
}

#[allow(dead_code)]
mod geodesics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/geodesics.rs"));
}

#[allow(dead_code)]
mod holonomy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/holonomy.rs"));
}

#[allow(dead_code)]
mod gauss_bonnet {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gauss_bonnet.rs"));
}

#[allow(dead_code)]
mod reconstruct {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/reconstruct.rs"));
}

#[allow(dead_code)]
mod definition_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/definition_files.rs"));
}

#[allow(dead_code)]
mod structure_equations {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/structure_equations.rs"));
}

#[allow(dead_code)]
mod asymptotic_lines {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/asymptotic_lines.rs"));
}

#[allow(dead_code)]
mod verify_cli {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_cli.rs"));
}

#[test]
fn jets_example_runs() {
    jets::run_example().expect("jets example should run");
}

#[test]
fn helix_frenet_example_runs() {
    helix_frenet::run_example().expect("helix_frenet example should run");
}

#[test]
fn surface_curvatures_example_runs() {
    surface_curvatures::run_example().expect("surface_curvatures example should run");
}

#[test]
fn catalog_example_runs() {
    catalog::run_example().expect("catalog example should run");
}

#[test]
fn geodesics_example_runs() {
    geodesics::run_example().expect("geodesics example should run");
}

#[test]
fn holonomy_example_runs() {
    holonomy::run_example().expect("holonomy example should run");
}

#[test]
fn gauss_bonnet_example_runs() {
    gauss_bonnet::run_example().expect("gauss_bonnet example should run");
}

#[test]
fn reconstruct_example_runs() {
    reconstruct::run_example().expect("reconstruct example should run");
}

#[test]
fn definition_files_example_runs() {
    definition_files::run_example().expect("definition_files example should run");
}

#[test]
fn structure_equations_example_runs() {
    structure_equations::run_example().expect("structure_equations example should run");
}

#[test]
fn asymptotic_lines_example_runs() {
    asymptotic_lines::run_example().expect("asymptotic_lines example should run");
}

#[test]
fn verify_cli_example_runs() {
    verify_cli::run_example().expect("verify_cli example should run");
}
