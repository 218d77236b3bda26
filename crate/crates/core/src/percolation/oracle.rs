//! Exhaustive minimum-saturation search over subsets of host edges.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{copy_index, CopyIndex, CopyMode, PercolationError, UncoloredStrategy};
use crate::formula::cwsat_formula;
use crate::model::{build_host, EdgeSet};
use crate::ParamFamily;

/// Default limit on host edges for brute force.
pub const DEFAULT_EDGE_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Minimum size of a percolating start set.
    pub value: usize,
    /// A percolating start set of that size (first found).
    pub witness: EdgeSet,
    /// Lower bound the search started from.
    pub floor: usize,
    /// Uncolored copies came from the exhaustive fallback.
    pub fallback: bool,
}

fn percolates(copies: &[u64], all: u64, mut cur: u64) -> bool {
    loop {
        if cur == all {
            return true;
        }
        let before = cur;
        for &c in copies {
            let miss = c & !cur;
            if miss != 0 && miss & (miss - 1) == 0 {
                cur |= miss;
            }
        }
        if cur == before {
            return false;
        }
    }
}

fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// First `k`-subset of the low `f` bits that percolates together with
/// `forced`, scanning by highest bit and then in colex order.
fn level(copies: &[u64], all: u64, forced: u64, f: usize, k: usize) -> Option<u64> {
    if k == 0 {
        return percolates(copies, all, forced).then_some(forced);
    }
    if k > f {
        return None;
    }
    (k - 1..f).into_par_iter().find_map_first(|h| {
        let top = 1u64 << h;
        if k == 1 {
            let x = top | forced;
            return percolates(copies, all, x).then_some(x);
        }
        let mut x = (1u64 << (k - 1)) - 1;
        while x < top {
            let cand = x | top | forced;
            if percolates(copies, all, cand) {
                return Some(cand);
            }
            x = next_combination(x);
        }
        None
    })
}

/// Minimum number of edges whose closure is every indexed edge, and the
/// first such set (as flags over [`CopyIndex::edges`]).
///
/// The search starts at `floor` and also proves that one edge fewer never
/// suffices, so the result does not depend on `floor` being a valid lower
/// bound. Requires at most 64 edges.
pub fn minimum_percolating(index: &CopyIndex, floor: usize) -> (usize, Vec<bool>) {
    let e = index.edges().len();
    let raw = index.copy_bitmasks().expect("at most 64 edges");
    let covered = raw.iter().fold(0u64, |a, &c| a | c);
    // free edges (in some copy) get the low bits, the rest are forced
    let mut order: Vec<usize> = (0..e).filter(|&i| covered >> i & 1 == 1).collect();
    let f = order.len();
    order.extend((0..e).filter(|&i| covered >> i & 1 == 0));
    let mut new_pos = vec![0; e];
    for (new, &old) in order.iter().enumerate() {
        new_pos[old] = new;
    }
    let remap = |m: u64| (0..e).filter(|&i| m >> i & 1 == 1).fold(0u64, |a, i| a | 1 << new_pos[i]);
    let copies: Vec<u64> = raw.iter().map(|&c| remap(c)).collect();
    let all = if e == 64 { u64::MAX } else { (1u64 << e) - 1 };
    let low = if f == 64 { u64::MAX } else { (1u64 << f) - 1 };
    let forced = all & !low;
    let base = e - f;

    let mut k = floor.saturating_sub(base).min(f);
    let mut best = match level(&copies, all, forced, f, k) {
        Some(w) => w,
        None => loop {
            k += 1;
            if let Some(w) = level(&copies, all, forced, f, k) {
                break w;
            }
        },
    };
    while k > 0 {
        match level(&copies, all, forced, f, k - 1) {
            Some(w) => {
                best = w;
                k -= 1;
            }
            None => break,
        }
    }
    let flags = (0..e).map(|old| best >> new_pos[old] & 1 == 1).collect();
    (base + k, flags)
}

fn run(
    family: &ParamFamily,
    cap: usize,
    mode: CopyMode,
    strategy: UncoloredStrategy,
) -> Result<OracleResult, PercolationError> {
    let host = build_host(family.n(), family.s())?;
    let cap = cap.min(64);
    if host.edge_count() > cap {
        return Err(PercolationError::EdgeCapExceeded {
            edges: host.edge_count(),
            cap,
        });
    }
    let (index, fallback) = copy_index(&host, family.s(), family.r(), mode, strategy)?;
    let floor = match mode {
        CopyMode::Colored => cwsat_formula(family)?
            .cwsat
            .to_usize()
            .expect("bounded by the edge count"),
        CopyMode::Uncolored => 0,
    };
    let (value, flags) = minimum_percolating(&index, floor);
    let witness = index
        .edges()
        .iter()
        .zip(flags)
        .filter(|(_, on)| *on)
        .map(|(&e, _)| e)
        .collect();
    Ok(OracleResult {
        value,
        witness,
        floor,
        fallback,
    })
}

/// Exact colored weak saturation number by exhaustive search.
pub fn cwsat_bruteforce(family: &ParamFamily, cap: usize) -> Result<OracleResult, PercolationError> {
    run(family, cap, CopyMode::Colored, UncoloredStrategy::Auto)
}

/// Exact uncolored weak saturation number by exhaustive search.
pub fn wsat_bruteforce_uncolored(
    family: &ParamFamily,
    cap: usize,
    strategy: UncoloredStrategy,
) -> Result<OracleResult, PercolationError> {
    run(family, cap, CopyMode::Uncolored, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::closure;
    use crate::{ParamVec, VecFamily};

    fn family(n: &[usize], s: &[&[usize]], r: &[&[usize]]) -> ParamFamily {
        let f = |vs: &[&[usize]]| VecFamily::new(vs.iter().map(|v| ParamVec::new(v.to_vec())).collect()).unwrap();
        ParamFamily::new(ParamVec::new(n.to_vec()), f(s), f(r)).unwrap()
    }

    #[test]
    fn triangle_in_k4() {
        let fam = family(&[4], &[&[2]], &[&[3]]);
        let res = cwsat_bruteforce(&fam, DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(res.value, 3);
        let host = build_host(fam.n(), fam.s()).unwrap();
        let c = closure(&host, fam.s(), fam.r(), &res.witness, CopyMode::Colored).unwrap();
        assert_eq!(&c.edges, host.edges());
        let unc = wsat_bruteforce_uncolored(&fam, DEFAULT_EDGE_CAP, UncoloredStrategy::Exhaustive).unwrap();
        assert_eq!(unc.value, 3);
    }

    #[test]
    fn nothing_fits_needs_every_edge() {
        let fam = family(&[3], &[&[2]], &[&[4]]);
        assert_eq!(cwsat_bruteforce(&fam, DEFAULT_EDGE_CAP).unwrap().value, 3);
    }

    #[test]
    fn floor_does_not_change_the_answer() {
        let fam = family(&[5], &[&[2]], &[&[3]]);
        let host = build_host(fam.n(), fam.s()).unwrap();
        let (index, _) = copy_index(&host, fam.s(), fam.r(), CopyMode::Colored, UncoloredStrategy::Auto).unwrap();
        for floor in [0, 2, 4, 7, 10] {
            assert_eq!(minimum_percolating(&index, floor).0, 4);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let fam = family(&[8], &[&[2]], &[&[3]]);
        assert!(matches!(
            cwsat_bruteforce(&fam, DEFAULT_EDGE_CAP),
            Err(PercolationError::EdgeCapExceeded { edges: 28, .. })
        ));
    }

    #[test]
    fn combinations_in_colex_order() {
        let mut x = 0b011u64;
        let mut seen = vec![x];
        for _ in 0..5 {
            x = next_combination(x);
            seen.push(x);
        }
        assert_eq!(seen, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }
}
