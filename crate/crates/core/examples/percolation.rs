//! Percolate from a small start set, check the trace, then find the true
//! minimum by brute force.

use tensor_wsat::model::{build_host, EdgeSet};
use tensor_wsat::percolation::{closure, cwsat_bruteforce, verify_trace, CopyMode, TraceJson, DEFAULT_EDGE_CAP};
use tensor_wsat::{ParamFamily, ParamVec, VecFamily};

fn main() {
    // graphs on 5 vertices, triangles as patterns
    let family = ParamFamily::new(
        ParamVec::from([5]),
        VecFamily::single(ParamVec::from([2])).unwrap(),
        VecFamily::single(ParamVec::from([3])).unwrap(),
    )
    .unwrap();
    let host = build_host(family.n(), family.s()).unwrap();
    let u = host.universe();

    // a star at vertex 0
    let star: EdgeSet = host.edges().iter().copied().filter(|e| e.contains(0)).collect();
    let c = closure(&host, family.s(), family.r(), &star, CopyMode::Colored).unwrap();
    println!("star of size {} closes to {} of {} edges", star.len(), c.edges.len(), host.edge_count());
    verify_trace(&host, family.s(), family.r(), &star, &c.trace, CopyMode::Colored).unwrap();
    println!("{}", serde_json::to_string(&TraceJson::new(u, &star, &c.trace)).unwrap());

    let best = cwsat_bruteforce(&family, DEFAULT_EDGE_CAP).unwrap();
    println!("minimum percolating set: {} edges (search started at {})", best.value, best.floor);
}
