//! Wedge and interior products, and the sign of an interval-block
//! contraction computed both directly and from its closed form.

use num_rational::BigRational;
use tensor_wsat::exterior::{sign_decompose_exponent, sign_decompose_sides, ExtElement, SignRule};
use tensor_wsat::{EdgeMask, ParamVec};

fn main() {
    let q = |x: i64| BigRational::from_integer(x.into());
    let u = ExtElement::vector(&[q(1), q(2), q(0), q(1)]);
    let v = ExtElement::vector(&[q(0), q(1), q(3), q(0)]);
    let uv = u.wedge(&v).unwrap();
    println!("u ∧ v = {uv:?}");
    println!("v ∧ u = {:?}", v.wedge(&u).unwrap());

    let e01 = ExtElement::basis(4, EdgeMask::from_positions([0, 1])).unwrap();
    let e0 = ExtElement::basis(4, EdgeMask::bit(0)).unwrap();
    println!("e0 ⌟ e01 = {:?}", e0.interior(&e01).unwrap());
    println!("<e01, u ∧ v> = {}", e01.inner(&uv).unwrap());

    let (n, r, s, m) = (ParamVec::from([3, 2]), ParamVec::from([2, 2]), ParamVec::from([1, 1]), ParamVec::from([1, 0]));
    let tails = vec![vec![3], vec![]];
    let (lhs, target) = sign_decompose_sides(&n, &r, &s, &m, &tails).unwrap();
    for rule in [SignRule::LaterColors, SignRule::AllOtherColors] {
        let e = sign_decompose_exponent(&r, &s, &m, &tails, rule).unwrap();
        let predicted = if e == 0 { target.clone() } else { -&target };
        println!("{rule:?}: exponent {e}, matches direct computation: {}", predicted == lhs);
    }
}
