//! Both extremal constructions, their sizes and their removal orders.

use tensor_wsat::construct::{construct_max_s, construct_min_r, SChoice};
use tensor_wsat::percolation::{verify_trace, CopyMode};
use tensor_wsat::{ParamFamily, ParamVec, VecFamily};

fn main() {
    let family = ParamFamily::new(
        ParamVec::from([4, 4]),
        VecFamily::single(ParamVec::from([2, 1])).unwrap(),
        VecFamily::single(ParamVec::from([2, 2])).unwrap(),
    )
    .unwrap();

    for (name, c) in [
        ("min-r", construct_min_r(&family, &SChoice::LexLeast).unwrap()),
        ("max-s", construct_max_s(&family).unwrap()),
    ] {
        verify_trace(&c.host, family.s(), family.r(), &c.kept, &c.order, CopyMode::Colored).unwrap();
        println!(
            "{name}: keeps {} of {} edges (formula {}), removes {}",
            c.kept.len(),
            c.host.edge_count(),
            c.formula,
            c.removed.len()
        );
        for rm in c.removed.iter().take(3) {
            println!("  {:?} {:?}", rm.edge, rm.label);
        }
    }

    // K_5 with triangles: the kept edges form a star
    let k5 = ParamFamily::new(
        ParamVec::from([5]),
        VecFamily::single(ParamVec::from([2])).unwrap(),
        VecFamily::single(ParamVec::from([3])).unwrap(),
    )
    .unwrap();
    let c = construct_min_r(&k5, &SChoice::default()).unwrap();
    println!("K5: kept {:?}", c.kept);
    println!("{}", serde_json::to_string_pretty(&c.to_json()).unwrap());
}
