// Drives the command line in-process: runs the verification suites on a
// torus and writes the JSON report to a temporary file.

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let dir = std::env::temp_dir().join(format!("diffgeo-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let out = dir.join("torus.json");
    let code = diffgeo::cli::run([
        "diffgeo",
        "verify",
        "--shape",
        "torus",
        "--seed",
        "7",
        "--samples",
        "5",
        "--json",
        out.to_str().expect("utf-8 path"),
    ]);
    let text = std::fs::read_to_string(&out).expect("report written");
    println!("exit code {code}, {} bytes of JSON", text.len());
    let report: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    for suite in report["suites"].as_array().into_iter().flatten() {
        println!("{:<18} {:<7} max residual {}", suite["name"].as_str().unwrap_or(""), suite["status"].as_str().unwrap_or(""), suite["max_residual"]);
    }
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 0);
    Ok(())
}
