//! The rank certificate on a family where the formula is not attained,
//! under both sign conventions for the cross-color terms.

use tensor_wsat::certificate::{certificate_report, unchecked_report};
use tensor_wsat::exterior::{colorful_generic_basis, SignRule, DEFAULT_BLOCK_CAP};
use tensor_wsat::percolation::{cwsat_bruteforce, DEFAULT_EDGE_CAP};
use tensor_wsat::{ParamFamily, ParamVec, VecFamily};

fn main() {
    let family = ParamFamily::new(
        ParamVec::from([4, 4]),
        VecFamily::new(vec![ParamVec::from([1, 0]), ParamVec::from([0, 1])]).unwrap(),
        VecFamily::new(vec![ParamVec::from([2, 1]), ParamVec::from([1, 2])]).unwrap(),
    )
    .unwrap();

    let report = certificate_report(&family, 7).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    println!("brute force: {}", cwsat_bruteforce(&family, DEFAULT_EDGE_CAP).unwrap().value);

    let basis = colorful_generic_basis(family.n(), 7, DEFAULT_BLOCK_CAP).unwrap();
    let other = unchecked_report(&family, &basis, SignRule::AllOtherColors).unwrap();
    println!("with all-other-colors signs: dim_U={} bound={} support_ok={}", other.dim_u, other.bound, other.support_ok);
}
