//! Cube f-vectors, the transform matrix and the short cubical h-vector.

use cubical::cubecore::{build_transform_matrix, cube_f_vector, f_to_h, h_to_f, validate_adin};

fn main() -> cubical::Result<()> {
    let m = build_transform_matrix(3)?;
    for row in m.rows() {
        println!("H row: {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    }
    let f = cube_f_vector(4)?;
    let h = f_to_h(&f)?;
    println!("4-cube f = {:?}", f.entries());
    println!("4-cube h = {:?}", h.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("round trip ok: {}", h_to_f(&h)? == f);
    println!("Adin conditions hold: {}", validate_adin(&h).all());
    Ok(())
}
