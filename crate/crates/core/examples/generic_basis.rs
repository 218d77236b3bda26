//! Sample generic orthogonal blocks and a colorful basis.

use tensor_wsat::exterior::{colorful_generic_basis, generic_block, orthogonalize, RationalMatrix, DEFAULT_BLOCK_CAP};
use tensor_wsat::ParamVec;

fn main() {
    let b = generic_block(3, 1, DEFAULT_BLOCK_CAP).unwrap();
    for row in b.rows() {
        println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("  "));
    }
    println!("orthogonal rows: {}, all minors nonzero: {}", b.rows_orthogonal(), b.all_minors_nonzero());

    let p = RationalMatrix::permutation(&[2, 0, 1]);
    println!("permutation fixed by orthogonalize: {}", orthogonalize(&p) == p);

    let basis = colorful_generic_basis(&ParamVec::from([2, 3]), 42, DEFAULT_BLOCK_CAP).unwrap();
    println!("{}", serde_json::to_string(&basis.to_json()).unwrap());
}
