//! Library values against slow, independent recomputations.

use itertools::Itertools;
use num_traits::{ToPrimitive, Zero};

use tensor_wsat::certificate::{g_vector, span_u};
use tensor_wsat::exterior::{colorful_generic_basis, ColorfulBasis, ExtElement, SignRule, DEFAULT_BLOCK_CAP};
use tensor_wsat::formula::{cwsat_formula, q_tilde, wsat_formula_symmetric};
use tensor_wsat::grid::GridSpec;
use tensor_wsat::model::{build_host, copy_edges, EdgeSet, PartsChoice, VertexUniverse};
use tensor_wsat::percolation::{cwsat_bruteforce, wsat_bruteforce_uncolored, UncoloredStrategy, DEFAULT_EDGE_CAP};
use tensor_wsat::{EdgeMask, ParamFamily, ParamVec, VecFamily};

fn pv(v: &[usize]) -> ParamVec {
    ParamVec::from(v.to_vec())
}

fn family(n: &[usize], s: &[&[usize]], r: &[&[usize]]) -> ParamFamily {
    let f = |vs: &[&[usize]]| VecFamily::new(vs.iter().map(|v| pv(v)).collect()).unwrap();
    ParamFamily::new(pv(n), f(s), f(r)).unwrap()
}

fn choose(a: usize, b: usize) -> usize {
    if b > a {
        0
    } else {
        (0..b).fold(1, |acc, k| acc * (a - k) / (k + 1))
    }
}

/// Tuples `(T_i)` of `s`-subsets of `[n_i]` such that some permuted
/// pattern leaves `T_i` inside `[n_i] ∖ [r_{σ(i)} − s]` for every `i`.
fn q_tilde_by_tuples(n: &[usize], s: usize, r: &[Vec<usize>]) -> usize {
    let d = n.len();
    let per_color: Vec<Vec<Vec<usize>>> = n.iter().map(|&ni| (1..=ni).combinations(s).collect()).collect();
    per_color
        .into_iter()
        .multi_cartesian_product()
        .filter(|tuple| {
            r.iter().any(|rv| {
                (0..d).permutations(d).any(|sigma| {
                    (0..d).all(|i| tuple[i].iter().all(|&x| x + s > rv[sigma[i]]))
                })
            })
        })
        .count()
}

#[test]
fn q_tilde_matches_tuple_count() {
    for d in 1..=2 {
        for n in (0..d).map(|_| 1..=6usize).multi_cartesian_product() {
            if d == 2 && n[0] > n[1] {
                continue;
            }
            for s in 1..=3 {
                if n.iter().any(|&ni| ni < s) {
                    continue;
                }
                for r in (0..d).map(|_| s..=6usize).multi_cartesian_product() {
                    let rf = VecFamily::single(pv(&r)).unwrap();
                    let lib = q_tilde(&pv(&n), s, &rf).unwrap().to_usize().unwrap();
                    assert_eq!(lib, q_tilde_by_tuples(&n, s, std::slice::from_ref(&r)), "n={n:?} s={s} r={r:?}");
                }
            }
        }
    }
    // a two-member family where the permutations matter
    let r = vec![vec![3, 2], vec![2, 4]];
    let rf = VecFamily::new(r.iter().map(|v| pv(v)).collect()).unwrap();
    assert_eq!(q_tilde(&pv(&[4, 5]), 1, &rf).unwrap().to_usize().unwrap(), q_tilde_by_tuples(&[4, 5], 1, &r));
}

#[test]
fn classical_clique_values() {
    for n in 3..=7 {
        for r in 2..=n {
            let expected = choose(n, 2) - choose(n - r + 2, 2);
            let rf = VecFamily::single(pv(&[r])).unwrap();
            let formula = wsat_formula_symmetric(&pv(&[n]), 2, &rf).unwrap().to_usize().unwrap();
            let brute = wsat_bruteforce_uncolored(&family(&[n], &[&[2]], &[&[r]]), DEFAULT_EDGE_CAP, UncoloredStrategy::Exhaustive)
                .unwrap()
                .value;
            assert_eq!((formula, brute), (expected, expected), "n={n} r={r}");
        }
    }
}

#[test]
fn symmetric_two_color_value_by_brute_force() {
    let rf = VecFamily::single(pv(&[2, 2])).unwrap();
    assert_eq!(wsat_formula_symmetric(&pv(&[3, 3]), 1, &rf).unwrap().to_usize(), Some(5));
    let brute = wsat_bruteforce_uncolored(&family(&[3, 3], &[&[1, 1]], &[&[2, 2]]), DEFAULT_EDGE_CAP, UncoloredStrategy::Exhaustive)
        .unwrap();
    assert_eq!(brute.value, 5);
}

/// Minimum percolating set by trying every subset in order of size, with
/// closure by plain rescanning of every colored vertex choice.
fn cwsat_naive(p: &ParamFamily) -> usize {
    let host = build_host(p.n(), p.s()).unwrap();
    let u = host.universe();
    let mut copies: Vec<Vec<EdgeMask>> = Vec::new();
    for r in p.r().iter().filter(|r| r.is_below(p.n())) {
        let choices = (0..u.dim())
            .map(|i| (0..u.class_size(i)).combinations(r[i]).map(|ix| u.class_subset(i, &ix).unwrap()).collect::<Vec<_>>())
            .multi_cartesian_product();
        for choice in choices {
            let span = choice.into_iter().fold(EdgeMask::EMPTY, |a, b| a | b);
            copies.push(host.edges().iter().copied().filter(|e| e.is_subset_of(span)).collect());
        }
    }
    let edges: Vec<EdgeMask> = host.edges().iter().copied().collect();
    for k in 0..=edges.len() {
        for start in edges.iter().copied().combinations(k) {
            let mut cur: EdgeSet = start.into_iter().collect();
            loop {
                let before = cur.len();
                for c in &copies {
                    let missing: Vec<_> = c.iter().filter(|e| !cur.contains(e)).copied().collect();
                    if missing.len() == 1 {
                        cur.insert(missing[0]);
                    }
                }
                if cur.len() == before {
                    break;
                }
            }
            if cur.len() == edges.len() {
                return k;
            }
        }
    }
    unreachable!("the whole host percolates")
}

#[test]
fn bruteforce_matches_naive_search() {
    let spec = GridSpec {
        dims: vec![1, 2],
        n_max: 3,
        entry_max: 2,
        family_max: 2,
        up_to_color_symmetry: true,
    };
    let mut checked = 0;
    for p in spec.points() {
        if build_host(p.n(), p.s()).unwrap().edge_count() > 10 {
            continue;
        }
        assert_eq!(cwsat_bruteforce(&p, DEFAULT_EDGE_CAP).unwrap().value, cwsat_naive(&p), "{p:?}");
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn copy_edges_match_restricted_host() {
    for (n, s) in [
        (vec![4, 4], vec![vec![2, 1], vec![1, 1]]),
        (vec![3, 2, 3], vec![vec![1, 1, 1], vec![0, 1, 2]]),
        (vec![6], vec![vec![2], vec![3]]),
    ] {
        let sf = VecFamily::new(s.iter().map(|v| pv(v)).collect()).unwrap();
        let host = build_host(&pv(&n), &sf).unwrap();
        let u = host.universe();
        for bits in 0..1u64 << u.total() {
            let span = EdgeMask(bits as _);
            let parts = PartsChoice::colored_from_vertices(u, span);
            let expected: EdgeSet = host.edges().iter().copied().filter(|e| e.is_subset_of(span)).collect();
            assert_eq!(copy_edges(&parts, &sf, u).unwrap(), expected);
        }
    }
}

fn one_color_basis(m: usize, seed: u64) -> ColorfulBasis {
    colorful_generic_basis(&pv(&[m]), seed, DEFAULT_BLOCK_CAP).unwrap()
}

#[test]
fn f_coordinates_are_minors() {
    for m in 1..=5 {
        let basis = one_color_basis(m, 11 + m as u64);
        let block = &basis.blocks()[0];
        for k in 0..=m {
            for rows in (0..m).combinations(k) {
                let f = basis.f_subset_vector(EdgeMask::from_positions(rows.iter().copied())).unwrap();
                for cols in (0..m).combinations(k) {
                    let e = ExtElement::basis(m, EdgeMask::from_positions(cols.iter().copied())).unwrap();
                    let minor = block.minor(&rows, &cols);
                    assert_eq!(f.inner(&e).unwrap(), minor);
                    assert!(!minor.is_zero());
                }
            }
        }
    }
}

#[test]
fn pattern_vector_signs_for_the_two_profile_family() {
    let p = family(&[4, 4], &[&[1, 0], &[0, 1]], &[&[2, 1], &[1, 2]]);
    let basis = colorful_generic_basis(p.n(), 5, DEFAULT_BLOCK_CAP).unwrap();
    let u: &VertexUniverse = basis.universe();
    let v = |color: usize, index: usize| u.position(color, index).unwrap();
    let both_first = basis.f_subset_vector(EdgeMask::from_positions([v(0, 0), v(0, 1)])).unwrap();
    let cross = basis.f_subset_vector(EdgeMask::from_positions([v(0, 1), v(1, 0)])).unwrap();
    let r = pv(&[2, 1]);
    // cross sums over every other color: exponents 2 and 1
    let g = g_vector(&r, p.s(), &basis, SignRule::AllOtherColors).unwrap();
    assert_eq!(g, &both_first - &cross);
    // cross sums over later colors only: exponents 2 and 0
    let g = g_vector(&r, p.s(), &basis, SignRule::LaterColors).unwrap();
    assert_eq!(g, &both_first + &cross);
}

#[test]
fn triangle_generators_sit_on_their_triangles() {
    let p = family(&[4], &[&[2]], &[&[3]]);
    let basis = one_color_basis(4, 9);
    let gens = span_u(&p, &basis, SignRule::LaterColors).unwrap();
    assert_eq!(gens.len(), 4);
    for g in &gens {
        let support: Vec<EdgeMask> = g.element.support().collect();
        assert_eq!(support.len(), 3);
        assert!(support.iter().all(|e| e.is_subset_of(g.vertices)));
    }
    assert_eq!(cwsat_formula(&p).unwrap().q.to_usize(), Some(3));
}
