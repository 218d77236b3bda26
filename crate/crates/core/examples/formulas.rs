//! Closed forms for a few families, including the symmetric uncolored one.

use tensor_wsat::formula::{cwsat_formula, down_closure, q_single, tight_case, wsat_formula_symmetric};
use tensor_wsat::{ParamFamily, ParamVec, VecFamily};

fn fam(n: &[usize], s: &[&[usize]], r: &[&[usize]]) -> ParamFamily {
    let f = |vs: &[&[usize]]| VecFamily::new(vs.iter().map(|v| ParamVec::from(v.to_vec())).collect()).unwrap();
    ParamFamily::new(ParamVec::from(n.to_vec()), f(s), f(r)).unwrap()
}

fn main() {
    let cases = [
        fam(&[6], &[&[2]], &[&[3]]),
        fam(&[4, 4], &[&[2, 1]], &[&[2, 2]]),
        fam(&[4, 4], &[&[1, 0], &[0, 1]], &[&[2, 1], &[1, 2]]),
    ];
    for f in &cases {
        let v = cwsat_formula(f).unwrap();
        println!(
            "n={} S={:?} R={:?}: |E|={} q={} cwsat={} tight={:?}",
            f.n(),
            f.s(),
            f.r(),
            v.edges,
            v.q,
            v.cwsat,
            tight_case(f)
        );
    }

    let s = VecFamily::single(ParamVec::from([2, 1])).unwrap();
    println!("down-closure of {{(2,1)}}: {:?}", down_closure(&s));
    println!("q for single pattern (2,2): {}", q_single(&ParamVec::from([4, 4]), &s, &ParamVec::from([2, 2])).unwrap());

    // uncolored: edges take two vertices from each of three classes of
    // size 4, patterns three from each
    let r = VecFamily::single(ParamVec::from([3, 3, 3])).unwrap();
    println!("symmetric wsat: {}", wsat_formula_symmetric(&ParamVec::from([4, 4, 4]), 2, &r).unwrap());
}
