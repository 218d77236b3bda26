//! Enumeration of the pattern copies a percolation process may use.

use std::collections::HashSet;

use itertools::Itertools;

use super::PercolationError;
use crate::formula::{permutations, DEFAULT_CONV_CAP};
use crate::model::{
    copy_edges, fitting_patterns, k_subsets, ColoredHypergraph, EdgeMask, ParamVec, PartsChoice,
    VecFamily,
};

/// Vertex cap for the exhaustive uncolored copy search.
pub const UNCOLORED_VERTEX_CAP: usize = 14;

/// One copy of a pattern `K[S;r]` inside the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCopy {
    pub pattern: ParamVec,
    pub parts: PartsChoice,
    /// Indices into [`CopyIndex::edges`], ascending.
    pub edges: Vec<u32>,
}

/// Host edges in mask order together with every usable copy, deduplicated
/// by edge set (the first copy found for an edge set is kept as witness).
#[derive(Clone, Debug)]
pub struct CopyIndex {
    edges: Vec<EdgeMask>,
    copies: Vec<PatternCopy>,
    by_edge: Vec<Vec<u32>>,
}

impl CopyIndex {
    fn build(host: &ColoredHypergraph, candidates: impl Iterator<Item = (ParamVec, PartsChoice)>, s: &VecFamily) -> Self {
        let edges: Vec<EdgeMask> = host.edges().iter().copied().collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut copies = Vec::new();
        let u = host.universe();
        for (pattern, parts) in candidates {
            let Ok(members) = copy_edges(&parts, s, u) else {
                continue;
            };
            if members.is_empty() {
                continue;
            }
            let mut idx = Vec::with_capacity(members.len());
            let mut inside_host = true;
            for e in &members {
                match edges.binary_search(e) {
                    Ok(i) => idx.push(i as u32),
                    Err(_) => {
                        inside_host = false;
                        break;
                    }
                }
            }
            if !inside_host || !seen.insert(idx.clone()) {
                continue;
            }
            copies.push(PatternCopy {
                pattern,
                parts,
                edges: idx,
            });
        }
        let mut by_edge = vec![Vec::new(); edges.len()];
        for (c, copy) in copies.iter().enumerate() {
            for &e in &copy.edges {
                by_edge[e as usize].push(c as u32);
            }
        }
        CopyIndex {
            edges,
            copies,
            by_edge,
        }
    }

    /// Colored copies of `K[S;r]` for every `r ∈ R(n)`.
    pub fn colored(host: &ColoredHypergraph, s: &VecFamily, r: &VecFamily) -> Self {
        let u = host.universe().clone();
        let fit = fitting_patterns(u.sizes(), r);
        let candidates = fit.into_iter().flat_map(move |rv| {
            colored_vertex_sets(&u, &rv)
                .into_iter()
                .map(move |parts| (rv.clone(), parts))
        });
        Self::build(host, candidates, s)
    }

    /// Uncolored copies obtained from colored copies of `r∘f` for every
    /// permutation `f` preserving `S`. Parts are reported in the original
    /// pattern's labelling (`P_j = R_{f(j)}`).
    pub fn permuted(host: &ColoredHypergraph, s: &VecFamily, r: &VecFamily) -> Result<Self, PercolationError> {
        let d = s.dim();
        if d > DEFAULT_CONV_CAP {
            return Err(crate::formula::FormulaError::CapExceeded {
                d,
                cap: DEFAULT_CONV_CAP,
            }
            .into());
        }
        let u = host.universe();
        let perms: Vec<_> = permutations(d)
            .into_iter()
            .filter(|f| s.iter().all(|sv| s.contains(&crate::formula::convolve(sv, f))))
            .collect();
        let mut candidates = Vec::new();
        for rv in r {
            for f in &perms {
                let image = crate::formula::convolve(rv, f);
                if !image.is_below(u.sizes()) {
                    continue;
                }
                for colored in colored_vertex_sets(u, &image) {
                    let parts: Vec<EdgeMask> = (0..d).map(|j| colored.parts()[f.apply(j)]).collect();
                    let parts = PartsChoice::new(u, parts)?;
                    candidates.push((rv.clone(), parts));
                }
            }
        }
        Ok(Self::build(host, candidates.into_iter(), s))
    }

    /// Every uncolored copy: a vertex set of size `Σ r_j` split into labelled
    /// parts of sizes `r_j`, kept when all its pattern edges are host edges.
    pub fn uncolored_exhaustive(
        host: &ColoredHypergraph,
        s: &VecFamily,
        r: &VecFamily,
        vertex_cap: usize,
    ) -> Result<Self, PercolationError> {
        let u = host.universe();
        if u.total() > vertex_cap {
            return Err(PercolationError::VertexCapExceeded {
                vertices: u.total(),
                cap: vertex_cap,
            });
        }
        let mut candidates = Vec::new();
        for rv in r {
            if rv.sum() > u.total() {
                continue;
            }
            for vertices in k_subsets(u.full_mask(), rv.sum()) {
                for parts in labelled_splits(vertices, rv) {
                    candidates.push((rv.clone(), PartsChoice::new(u, parts)?));
                }
            }
        }
        Ok(Self::build(host, candidates.into_iter(), s))
    }

    pub fn edges(&self) -> &[EdgeMask] {
        &self.edges
    }

    pub fn copies(&self) -> &[PatternCopy] {
        &self.copies
    }

    pub fn copies_of_edge(&self, e: usize) -> &[u32] {
        &self.by_edge[e]
    }

    pub fn edge_index(&self, e: EdgeMask) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Copies as bitmasks over edge indices; requires at most 64 edges.
    pub fn copy_bitmasks(&self) -> Option<Vec<u64>> {
        if self.edges.len() > 64 {
            return None;
        }
        Some(
            self.copies
                .iter()
                .map(|c| c.edges.iter().fold(0u64, |m, &e| m | 1 << e))
                .collect(),
        )
    }
}

/// Colored parts choices realizing pattern size `r`, in lexicographic order.
pub fn colored_vertex_sets(u: &crate::model::VertexUniverse, r: &ParamVec) -> Vec<PartsChoice> {
    let per_color: Vec<Vec<EdgeMask>> = (0..u.dim())
        .map(|i| k_subsets(u.class_mask(i), r[i]).collect())
        .collect();
    per_color
        .into_iter()
        .multi_cartesian_product()
        .map(|parts| PartsChoice::colored_from_vertices(u, parts.into_iter().fold(EdgeMask::EMPTY, |a, p| a | p)))
        .collect()
}

/// Ordered splits of `vertices` into parts of the sizes in `r`.
fn labelled_splits(vertices: EdgeMask, r: &ParamVec) -> Vec<Vec<EdgeMask>> {
    fn rec(rest: EdgeMask, r: &[usize], acc: &mut Vec<EdgeMask>, out: &mut Vec<Vec<EdgeMask>>) {
        if r.is_empty() {
            if rest.is_empty() {
                out.push(acc.clone());
            }
            return;
        }
        for part in k_subsets(rest, r[0]) {
            acc.push(part);
            rec(rest.minus(part), &r[1..], acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(vertices, r, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_host;

    fn pv(v: &[usize]) -> ParamVec {
        ParamVec::new(v.to_vec())
    }

    fn fam(vs: &[&[usize]]) -> VecFamily {
        VecFamily::new(vs.iter().map(|v| pv(v)).collect()).unwrap()
    }

    #[test]
    fn colored_triangles_in_k4() {
        let s = fam(&[&[2]]);
        let host = build_host(&pv(&[4]), &s).unwrap();
        let idx = CopyIndex::colored(&host, &s, &fam(&[&[3]]));
        assert_eq!(idx.copies().len(), 4);
        assert!(idx.copies().iter().all(|c| c.edges.len() == 3));
    }

    #[test]
    fn splits_count_is_multinomial() {
        let v = EdgeMask::range(0, 5);
        assert_eq!(labelled_splits(v, &pv(&[2, 3])).len(), 10);
        assert_eq!(labelled_splits(v, &pv(&[1, 1, 3])).len(), 20);
    }

    #[test]
    fn uncolored_copies_contain_colored_ones() {
        let s = fam(&[&[1, 1]]);
        let r = fam(&[&[2, 2]]);
        let host = build_host(&pv(&[3, 3]), &s).unwrap();
        let col = CopyIndex::colored(&host, &s, &r);
        let unc = CopyIndex::uncolored_exhaustive(&host, &s, &r, UNCOLORED_VERTEX_CAP).unwrap();
        let unc_sets: HashSet<_> = unc.copies().iter().map(|c| c.edges.clone()).collect();
        for c in col.copies() {
            assert!(unc_sets.contains(&c.edges));
        }
    }

    #[test]
    fn mixed_copy_exists_only_uncolored() {
        // the copy with parts {1,2,3}, {4} of K[(2,1);(2,2)]-shape from the
        // colored-versus-uncolored counterexample
        let s = fam(&[&[2, 1]]);
        let r = fam(&[&[2, 2]]);
        let host = build_host(&pv(&[4, 4]), &s).unwrap();
        let col = CopyIndex::colored(&host, &s, &r);
        let unc = CopyIndex::uncolored_exhaustive(&host, &s, &r, UNCOLORED_VERTEX_CAP).unwrap();
        assert!(unc.copies().len() > col.copies().len());
        assert!(unc.copies().iter().any(|c| c.edges.len() == 2));
    }
}
