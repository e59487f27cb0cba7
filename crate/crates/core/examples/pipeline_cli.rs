//! Drives the command-line interface in-process: cube | f2h.

use cubical::cli::run;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["cubical", "cube", "-d", "4"], &mut std::io::empty(), &mut out, &mut err);
    println!("cube exit {code}:\n{}", String::from_utf8_lossy(&out));
    let mut h = Vec::new();
    let code = run(["cubical", "f2h", "--format", "csv"], &mut out.as_slice(), &mut h, &mut err);
    println!("f2h exit {code}:\n{}", String::from_utf8_lossy(&h));
}
