//! Randomized properties checked against independent computations.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tensor_wsat::certificate::certificate_report;
use tensor_wsat::construct::{construct_min_r, min_r_label, RemovalLabel, SChoice};
use tensor_wsat::exterior::{sign_decompose_exponent, sign_decompose_sides, ExtElement, SignRule};
use tensor_wsat::formula::{
    cwsat_formula, down_closure, host_edge_count, q_single, q_value, reduction_family,
};
use tensor_wsat::linalg::{det_integer, det_rational, rank_gauss, rank_integer};
use tensor_wsat::model::{build_host, edge_profile, EdgeSet};
use tensor_wsat::percolation::{closure, CopyMode};
use tensor_wsat::{EdgeMask, ParamFamily, ParamVec, VecFamily};

fn choose(a: usize, b: usize) -> u128 {
    if b > a {
        return 0;
    }
    (0..b).fold(1u128, |acc, k| acc * (a - k) as u128 / (k + 1) as u128)
}

fn choose_i(a: i64, b: i64) -> u128 {
    if b < 0 || a < b {
        0
    } else {
        choose(a as usize, b as usize)
    }
}

fn vec_of(d: usize, lo: usize, hi: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(lo..=hi, d)
}

/// Valid families of dimension `1..=d_max` with sizes in `1..=n_max`,
/// entries in `0..=e_max` and up to `k_max` members in `S` and `R`.
fn families(d_max: usize, n_max: usize, e_max: usize, k_max: usize) -> impl Strategy<Value = ParamFamily> {
    (1..=d_max).prop_flat_map(move |d| {
        (
            vec_of(d, 1, n_max),
            prop::collection::vec(vec_of(d, 0, e_max), 1..=k_max),
            prop::collection::vec(vec_of(d, 0, e_max), 1..=k_max),
        )
            .prop_filter_map("invalid family", |(n, s, r)| {
                let fam = |vs: Vec<Vec<usize>>| VecFamily::from_iter_dedup(vs.into_iter().map(ParamVec::from)).ok();
                ParamFamily::new(ParamVec::from(n), fam(s)?, fam(r)?).ok()
            })
    })
}

fn to_u128(x: &BigUint) -> u128 {
    x.to_u128().unwrap()
}

/// Colored closure by repeatedly scanning copies in a shuffled order.
fn closure_by_random_scan(p: &ParamFamily, start: &EdgeSet, seed: u64) -> EdgeSet {
    let host = build_host(p.n(), p.s()).unwrap();
    let u = host.universe();
    let mut copies: Vec<Vec<EdgeMask>> = Vec::new();
    for r in p.r().iter().filter(|r| r.is_below(p.n())) {
        let per_color: Vec<Vec<EdgeMask>> = (0..u.dim())
            .map(|i| {
                (0..u.class_size(i))
                    .combinations(r[i])
                    .map(|ix| u.class_subset(i, &ix).unwrap())
                    .collect()
            })
            .collect();
        for choice in per_color.into_iter().multi_cartesian_product() {
            let span = choice.into_iter().fold(EdgeMask::EMPTY, |a, b| a | b);
            copies.push(host.edges().iter().copied().filter(|e| e.is_subset_of(span)).collect());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = start.clone();
    loop {
        copies.shuffle(&mut rng);
        let mut grew = false;
        for c in &copies {
            let missing: Vec<_> = c.iter().filter(|e| !cur.contains(e)).collect();
            if missing.len() == 1 {
                cur.insert(*missing[0]);
                grew = true;
            }
        }
        if !grew {
            return cur;
        }
    }
}

fn subset_by_bits(edges: &EdgeSet, bits: u64) -> EdgeSet {
    edges.iter().enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, &e)| e).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn host_matches_profiles(p in families(3, 4, 3, 3)) {
        let host = build_host(p.n(), p.s()).unwrap();
        let u = host.universe();
        let expected: u128 = p.s().iter().map(|s| (0..p.dim()).map(|i| choose(p.n()[i], s[i])).product::<u128>()).sum();
        prop_assert_eq!(host.edge_count() as u128, expected);
        prop_assert_eq!(to_u128(&host_edge_count(p.n(), p.s())), expected);
        if u.total() <= 12 {
            for bits in 0..1u64 << u.total() {
                let e = EdgeMask(bits as _);
                prop_assert_eq!(host.contains_edge(e), p.s().contains(&edge_profile(e, u)));
            }
        }
    }

    #[test]
    fn single_pattern_closed_form(p in families(3, 5, 5, 3), pick in 0usize..8) {
        let r = p.r().members()[pick % p.r().len()].clone();
        prop_assume!(r.is_below(p.n()));
        let single = ParamFamily::new(p.n().clone(), p.s().clone(), VecFamily::single(r.clone()).unwrap()).unwrap();
        prop_assert_eq!(q_single(p.n(), p.s(), &r).unwrap(), q_value(&single).unwrap());
    }

    #[test]
    fn minimum_pattern_collapse(p in families(3, 5, 4, 3)) {
        if let Some(rt) = p.r().componentwise_min() {
            if rt.is_below(p.n()) {
                let collapsed: u128 = down_closure(p.s())
                    .iter()
                    .map(|m| {
                        (0..p.dim())
                            .filter(|&i| m[i] != 0)
                            .map(|i| choose_i(m[i] as i64 - 1 + p.n()[i] as i64 - rt[i] as i64, m[i] as i64))
                            .product::<u128>()
                    })
                    .sum();
                prop_assert_eq!(to_u128(&q_value(&p).unwrap()), collapsed);
            }
        }
    }

    #[test]
    fn maximum_profile_collapse(p in families(3, 5, 4, 3)) {
        if let Some(st) = p.s().componentwise_max() {
            let fit: Vec<&ParamVec> = p.r().iter().filter(|r| r.is_below(p.n())).collect();
            let mut total: i128 = 0;
            for k in 1..=fit.len() {
                for q in fit.iter().combinations(k) {
                    let term: u128 = (0..p.dim())
                        .map(|i| {
                            let top = q.iter().map(|r| r[i]).max().unwrap();
                            choose_i(p.n()[i] as i64 - top as i64 + st[i] as i64, st[i] as i64)
                        })
                        .product();
                    total += if k % 2 == 1 { term as i128 } else { -(term as i128) };
                }
            }
            prop_assert_eq!(to_u128(&q_value(&p).unwrap()) as i128, total);
        }
    }

    #[test]
    fn q_never_exceeds_host(p in families(3, 5, 4, 3)) {
        let f = cwsat_formula(&p).unwrap();
        prop_assert!(f.q <= f.edges);
        if p.fitting_patterns().is_empty() {
            prop_assert!(f.q.is_zero());
        }
    }

    #[test]
    fn reduction_family_idempotent(p in families(3, 4, 3, 3)) {
        let once = reduction_family(p.r(), p.s(), 8).unwrap();
        let twice = reduction_family(&once, p.s(), 8).unwrap();
        prop_assert_eq!(once, twice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_monotone(p in families(2, 4, 2, 2), a in any::<u64>(), b in any::<u64>()) {
        let host = build_host(p.n(), p.s()).unwrap();
        prop_assume!(host.edge_count() <= 40);
        let small = subset_by_bits(host.edges(), a & b);
        let large = subset_by_bits(host.edges(), a);
        let cs = closure(&host, p.s(), p.r(), &small, CopyMode::Colored).unwrap();
        let cl = closure(&host, p.s(), p.r(), &large, CopyMode::Colored).unwrap();
        prop_assert!(cs.edges.is_subset(&cl.edges));
        prop_assert!(small.is_subset(&cs.edges));
        let again = closure(&host, p.s(), p.r(), &cs.edges, CopyMode::Colored).unwrap();
        prop_assert_eq!(&again.edges, &cs.edges);
    }

    #[test]
    fn closure_ignores_scan_order(p in families(2, 4, 2, 2), a in any::<u64>(), seed in any::<u64>()) {
        let host = build_host(p.n(), p.s()).unwrap();
        prop_assume!(host.edge_count() <= 40);
        let start = subset_by_bits(host.edges(), a);
        let c = closure(&host, p.s(), p.r(), &start, CopyMode::Colored).unwrap();
        prop_assert_eq!(c.edges, closure_by_random_scan(&p, &start, seed));
    }

    #[test]
    fn colored_closure_inside_uncolored(p in families(2, 3, 2, 2), a in any::<u64>()) {
        let host = build_host(p.n(), p.s()).unwrap();
        prop_assume!(host.edge_count() <= 30);
        let start = subset_by_bits(host.edges(), a);
        let col = closure(&host, p.s(), p.r(), &start, CopyMode::Colored).unwrap();
        let unc = closure(&host, p.s(), p.r(), &start, CopyMode::Uncolored).unwrap();
        prop_assert!(col.edges.is_subset(&unc.edges));
    }

    #[test]
    fn removal_labels_invert(p in families(2, 5, 3, 2)) {
        prop_assume!(p.r().componentwise_min().is_some_and(|r| r.is_below(p.n())));
        let c = construct_min_r(&p, &SChoice::default()).unwrap();
        let u = c.host.universe();
        let mut seen = BTreeSet::new();
        for rm in &c.removed {
            prop_assert!(seen.insert(rm.edge));
            if let RemovalLabel::MinR { m, t } = &rm.label {
                let (m2, t2) = min_r_label(u, rm.edge);
                prop_assert_eq!(m, &m2);
                prop_assert_eq!(t, &t2);
            }
        }
        prop_assert_eq!(c.kept.len() + c.removed.len(), c.host.edge_count());
    }

    #[test]
    fn certificate_dimension_below_q(p in families(2, 3, 2, 2)) {
        let rep = certificate_report(&p, 3).unwrap();
        prop_assert!(rep.dim_u <= rep.q.to_usize().unwrap());
        prop_assert!(rep.support_ok);
        prop_assert!(rep.bound >= rep.formula_cwsat.to_usize().unwrap());
    }
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn element(dim: usize, terms: &[(u64, i64)]) -> ExtElement {
    let mask_bits = (1u64 << dim) - 1;
    ExtElement::from_terms(dim, terms.iter().map(|&(m, c)| (EdgeMask((m & mask_bits) as _), rational(c)))).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(u64, i64)>> {
    prop::collection::vec((any::<u64>(), -5i64..=5), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_associative_and_graded(dim in 1usize..=7, x in terms(), y in terms(), z in terms()) {
        let (x, y, z) = (element(dim, &x), element(dim, &y), element(dim, &z));
        prop_assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
        // e_S ∧ e_T = (−1)^{|S||T|} e_T ∧ e_S on homogeneous parts
        for (&s, a) in x.terms() {
            for (&t, b) in y.terms() {
                let es = ExtElement::from_terms(dim, [(s, a.clone())]).unwrap();
                let et = ExtElement::from_terms(dim, [(t, b.clone())]).unwrap();
                let st = es.wedge(&et).unwrap();
                let ts = et.wedge(&es).unwrap();
                prop_assert_eq!(st, if s.len() * t.len() % 2 == 1 { -&ts } else { ts });
            }
        }
    }

    #[test]
    fn interior_is_adjoint_to_wedge(dim in 1usize..=7, h in terms(), g in terms(), f in terms()) {
        let (h, g, f) = (element(dim, &h), element(dim, &g), element(dim, &f));
        prop_assert_eq!(h.inner(&g.interior(&f).unwrap()).unwrap(), h.wedge(&g).unwrap().inner(&f).unwrap());
    }

    #[test]
    fn interior_by_one_is_identity(dim in 1usize..=7, f in terms()) {
        let f = element(dim, &f);
        prop_assert_eq!(ExtElement::one(dim).interior(&f).unwrap(), f);
    }

    #[test]
    fn bareiss_matches_gauss(rows in 1usize..=5, cols in 1usize..=6, entries in prop::collection::vec(-4i64..=4, 30)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[(i * cols + j) % 30]).collect()).collect();
        let ints: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let rats: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect();
        prop_assert_eq!(rank_integer(ints.clone()), rank_gauss(&rats));
        if rows == cols {
            prop_assert_eq!(BigRational::from_integer(det_integer(ints)), det_rational(&rats));
        }
    }

    #[test]
    fn sign_decomposition_later_colors(
        rs in prop::collection::vec((0usize..=3, 0usize..=3, 0usize..=3, 1usize..=3), 1..=2),
        pick in any::<u64>(),
    ) {
        // (r, s ≤ r, m ≤ s, room beyond r)
        let mut n = vec![];
        let (mut r, mut s, mut m, mut tails) = (vec![], vec![], vec![], vec![]);
        for (k, &(ri, a, b, extra)) in rs.iter().enumerate() {
            let si = a.min(ri);
            let mi = b.min(si);
            let ni = ri + extra;
            let pool: Vec<usize> = (1..mi).chain(ri + 1..=ni).collect();
            prop_assume!(pool.len() >= mi);
            let combos: Vec<Vec<usize>> = pool.into_iter().combinations(mi).collect();
            tails.push(combos[(pick >> (8 * k)) as usize % combos.len()].clone());
            n.push(ni);
            r.push(ri);
            s.push(si);
            m.push(mi);
        }
        let (n, r, s, m) = (ParamVec::from(n), ParamVec::from(r), ParamVec::from(s), ParamVec::from(m));
        let (lhs, target) = sign_decompose_sides(&n, &r, &s, &m, &tails).unwrap();
        let e = sign_decompose_exponent(&r, &s, &m, &tails, SignRule::LaterColors).unwrap();
        prop_assert_eq!(lhs, if e == 1 { -&target } else { target });
    }
}

#[test]
fn determinant_of_identity_gram() {
    let e = |i: usize| {
        let mut v = vec![BigRational::zero(); 3];
        v[i] = BigRational::one();
        ExtElement::vector(&v)
    };
    let w = e(0).wedge(&e(1)).unwrap().wedge(&e(2)).unwrap();
    assert_eq!(w.inner(&w).unwrap(), BigRational::one());
}
