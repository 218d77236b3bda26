//! Uncolored against colored saturation: the reduction family and the
//! gap on a family where no reduction applies.

use tensor_wsat::formula::{conv_set, reduction_conditions, reduction_family};
use tensor_wsat::percolation::{cwsat_bruteforce, wsat_bruteforce_uncolored, UncoloredStrategy, DEFAULT_EDGE_CAP};
use tensor_wsat::{ParamFamily, ParamVec, VecFamily};

fn fam(n: &[usize], s: &[&[usize]], r: &[&[usize]]) -> ParamFamily {
    let f = |vs: &[&[usize]]| VecFamily::new(vs.iter().map(|v| ParamVec::from(v.to_vec())).collect()).unwrap();
    ParamFamily::new(ParamVec::from(n.to_vec()), f(s), f(r)).unwrap()
}

fn main() {
    let f = fam(&[3, 3], &[&[1, 1]], &[&[3, 2]]);
    let checks = reduction_conditions(f.s(), f.r(), 8).unwrap();
    println!("conditions {checks:?}, Conv(S) has {} maps", conv_set(f.s(), 8).unwrap().len());
    let rf = reduction_family(f.r(), f.s(), 8).unwrap();
    println!("reduction family {rf:?}");
    let colored = ParamFamily::new(f.n().clone(), f.s().clone(), rf).unwrap();
    let unc = wsat_bruteforce_uncolored(&f, DEFAULT_EDGE_CAP, UncoloredStrategy::Exhaustive).unwrap();
    let col = cwsat_bruteforce(&colored, DEFAULT_EDGE_CAP).unwrap();
    println!("uncolored {} vs colored over reduction family {}", unc.value, col.value);

    let g = fam(&[4, 4], &[&[2, 1]], &[&[2, 2]]);
    println!("conditions {:?}", reduction_conditions(g.s(), g.r(), 8).unwrap());
    let unc = wsat_bruteforce_uncolored(&g, DEFAULT_EDGE_CAP, UncoloredStrategy::Auto).unwrap();
    let col = cwsat_bruteforce(&g, DEFAULT_EDGE_CAP).unwrap();
    println!("uncolored {} (exhaustive copies: {}) vs colored {}", unc.value, unc.fallback, col.value);
}
