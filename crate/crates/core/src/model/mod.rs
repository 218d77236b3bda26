//! Colored hypergraphs `K[S;n]`, their edges, and colored copies of the
//! patterns `K[S;r]`.
//!
//! Vertex `(a, i)` (index `a` inside color class `i`) lives at bit position
//! `offset_i + a`, where `offset_i = n_0 + … + n_{i-1}`. Every color class
//! is a contiguous bit range and classes appear in color order, so the
//! numeric order of positions is the color-compatible vertex order used
//! by the exterior algebra. Indices and colors are 0-based in the API and
//! 1-based in JSON.

pub mod json;
mod mask;
mod params;

use std::collections::BTreeSet;

use thiserror::Error;

pub use json::HypergraphJson;
pub use mask::{k_subsets, EdgeMask, Positions, Word};
pub use params::{fitting_patterns, ParamFamily, ParamVec, VecFamily};

/// A set of edges, ordered by mask.
pub type EdgeSet = BTreeSet<EdgeMask>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("family is empty")]
    EmptyFamily,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate vector {0} in family")]
    DuplicateVector(ParamVec),
    #[error("profile {s} does not fit in host sizes {n}")]
    ProfileExceedsHost { s: ParamVec, n: ParamVec },
    #[error("pattern {r} is not above profile {s}")]
    PatternBelowProfile { r: ParamVec, s: ParamVec },
    #[error("universe of {vertices} vertices exceeds mask capacity {capacity}")]
    CapacityExceeded { vertices: usize, capacity: usize },
    #[error("vertex ({index}, color {color}) out of range")]
    VertexOutOfRange { color: usize, index: usize },
    #[error("edge {0:?} leaves the vertex universe")]
    EdgeOutOfUniverse(EdgeMask),
    #[error("parts overlap or leave the universe")]
    InvalidParts,
    #[error("malformed hypergraph: {0}")]
    Malformed(String),
}

/// The colored vertex set `N = N_1 ∪ … ∪ N_d` with `|N_i| = n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexUniverse {
    sizes: ParamVec,
    offsets: Vec<usize>,
}

impl VertexUniverse {
    pub fn new(sizes: ParamVec) -> Result<Self, ModelError> {
        if sizes.dim() == 0 {
            return Err(ModelError::ZeroDimension);
        }
        let total = sizes.sum();
        if total > EdgeMask::CAPACITY {
            return Err(ModelError::CapacityExceeded {
                vertices: total,
                capacity: EdgeMask::CAPACITY,
            });
        }
        let offsets = sizes
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        Ok(VertexUniverse { sizes, offsets })
    }

    pub fn dim(&self) -> usize {
        self.sizes.dim()
    }

    pub fn sizes(&self) -> &ParamVec {
        &self.sizes
    }

    pub fn class_size(&self, color: usize) -> usize {
        self.sizes[color]
    }

    pub fn offset(&self, color: usize) -> usize {
        self.offsets[color]
    }

    pub fn total(&self) -> usize {
        self.sizes.sum()
    }

    pub fn class_mask(&self, color: usize) -> EdgeMask {
        EdgeMask::range(self.offsets[color], self.sizes[color])
    }

    pub fn full_mask(&self) -> EdgeMask {
        EdgeMask::range(0, self.total())
    }

    pub fn contains(&self, mask: EdgeMask) -> bool {
        mask.is_subset_of(self.full_mask())
    }

    /// Bit position of vertex `index` (0-based) in class `color`.
    pub fn position(&self, color: usize, index: usize) -> Result<usize, ModelError> {
        if color >= self.dim() || index >= self.sizes[color] {
            return Err(ModelError::VertexOutOfRange { color, index });
        }
        Ok(self.offsets[color] + index)
    }

    /// `(color, index)` of a bit position.
    pub fn vertex(&self, pos: usize) -> (usize, usize) {
        let color = (0..self.dim())
            .find(|&i| pos >= self.offsets[i] && pos < self.offsets[i] + self.sizes[i])
            .expect("position outside universe");
        (color, pos - self.offsets[color])
    }

    /// Mask of the given 0-based indices within one color class.
    pub fn class_subset(&self, color: usize, indices: &[usize]) -> Result<EdgeMask, ModelError> {
        indices.iter().try_fold(EdgeMask::EMPTY, |acc, &a| {
            Ok(acc | EdgeMask::bit(self.position(color, a)?))
        })
    }

    /// 0-based indices of `mask ∩ N_color`, ascending.
    pub fn class_indices(&self, mask: EdgeMask, color: usize) -> Vec<usize> {
        (mask & self.class_mask(color))
            .iter()
            .map(|p| p - self.offsets[color])
            .collect()
    }
}

/// Per-color intersection sizes `(|e ∩ N_i|)_i`.
pub fn edge_profile(e: EdgeMask, u: &VertexUniverse) -> ParamVec {
    ParamVec::new((0..u.dim()).map(|i| (e & u.class_mask(i)).len()).collect())
}

/// The vertex parts of a copy of a pattern. Part `j` receives the
/// vertices playing color `j` in the pattern; for a colored copy part `j`
/// must lie inside `N_j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartsChoice {
    parts: Vec<EdgeMask>,
}

impl PartsChoice {
    /// Arbitrary pairwise-disjoint parts inside the universe.
    pub fn new(u: &VertexUniverse, parts: Vec<EdgeMask>) -> Result<Self, ModelError> {
        let mut seen = EdgeMask::EMPTY;
        for &p in &parts {
            if !u.contains(p) || !p.is_disjoint(seen) {
                return Err(ModelError::InvalidParts);
            }
            seen = seen | p;
        }
        Ok(PartsChoice { parts })
    }

    /// Part `i` given as 0-based indices inside color class `i`.
    pub fn colored(u: &VertexUniverse, indices: &[Vec<usize>]) -> Result<Self, ModelError> {
        if indices.len() != u.dim() {
            return Err(ModelError::DimensionMismatch {
                expected: u.dim(),
                found: indices.len(),
            });
        }
        let parts = indices
            .iter()
            .enumerate()
            .map(|(i, idx)| u.class_subset(i, idx))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PartsChoice { parts })
    }

    /// The colored parts choice whose vertex set is `vertices`.
    pub fn colored_from_vertices(u: &VertexUniverse, vertices: EdgeMask) -> Self {
        PartsChoice {
            parts: (0..u.dim()).map(|i| vertices & u.class_mask(i)).collect(),
        }
    }

    pub fn parts(&self) -> &[EdgeMask] {
        &self.parts
    }

    pub fn vertices(&self) -> EdgeMask {
        self.parts.iter().fold(EdgeMask::EMPTY, |a, &p| a | p)
    }

    /// `(|R_j|)_j`, the pattern size this choice realizes.
    pub fn sizes(&self) -> ParamVec {
        ParamVec::new(self.parts.iter().map(|p| p.len()).collect())
    }

    /// Whether part `j` lies inside color class `j` for every `j`.
    pub fn is_colored(&self, u: &VertexUniverse) -> bool {
        self.parts.len() == u.dim()
            && self
                .parts
                .iter()
                .enumerate()
                .all(|(i, &p)| p.is_subset_of(u.class_mask(i)))
    }

    /// Profile of `w` with respect to the parts.
    pub fn part_profile(&self, w: EdgeMask) -> ParamVec {
        ParamVec::new(self.parts.iter().map(|&p| (w & p).len()).collect())
    }
}

/// A hypergraph on a colored vertex universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredHypergraph {
    universe: VertexUniverse,
    edges: EdgeSet,
}

impl ColoredHypergraph {
    pub fn new(universe: VertexUniverse, edges: EdgeSet) -> Result<Self, ModelError> {
        if let Some(&e) = edges.iter().find(|&&e| !universe.contains(e)) {
            return Err(ModelError::EdgeOutOfUniverse(e));
        }
        Ok(ColoredHypergraph { universe, edges })
    }

    pub fn universe(&self) -> &VertexUniverse {
        &self.universe
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: EdgeMask) -> bool {
        self.edges.contains(&e)
    }
}

fn check_dims(u: &VertexUniverse, s: &VecFamily) -> Result<(), ModelError> {
    if s.dim() != u.dim() {
        return Err(ModelError::DimensionMismatch {
            expected: u.dim(),
            found: s.dim(),
        });
    }
    Ok(())
}

/// The host `K[S;n]`: every vertex subset whose color profile lies in `S`.
pub fn build_host(n: &ParamVec, s: &VecFamily) -> Result<ColoredHypergraph, ModelError> {
    let universe = VertexUniverse::new(n.clone())?;
    check_dims(&universe, s)?;
    for sv in s {
        if !sv.is_below(n) {
            return Err(ModelError::ProfileExceedsHost {
                s: sv.clone(),
                n: n.clone(),
            });
        }
    }
    let all = PartsChoice::colored_from_vertices(&universe, universe.full_mask());
    let edges = copy_edges(&all, s, &universe)?;
    ColoredHypergraph::new(universe, edges)
}

/// Edges of the copy of `K[S; (|R_j|)_j]` spanned by `parts`: every
/// `W ⊆ ⋃ R_j` whose part profile lies in `S`.
pub fn copy_edges(
    parts: &PartsChoice,
    s: &VecFamily,
    u: &VertexUniverse,
) -> Result<EdgeSet, ModelError> {
    if !parts.vertices().is_subset_of(u.full_mask()) {
        return Err(ModelError::InvalidParts);
    }
    if parts.parts().len() != s.dim() {
        return Err(ModelError::DimensionMismatch {
            expected: parts.parts().len(),
            found: s.dim(),
        });
    }
    let mut out = EdgeSet::new();
    for sv in s {
        extend_products(parts.parts(), sv, 0, EdgeMask::EMPTY, &mut out);
    }
    Ok(out)
}

fn extend_products(
    parts: &[EdgeMask],
    profile: &[usize],
    j: usize,
    acc: EdgeMask,
    out: &mut EdgeSet,
) {
    if j == parts.len() {
        out.insert(acc);
        return;
    }
    for sub in k_subsets(parts[j], profile[j]) {
        extend_products(parts, profile, j + 1, acc | sub, out);
    }
}

/// Whether every edge of the copy spanned by `parts` is in `current`.
pub fn is_copy_complete(
    parts: &PartsChoice,
    s: &VecFamily,
    u: &VertexUniverse,
    current: &EdgeSet,
) -> Result<bool, ModelError> {
    Ok(copy_edges(parts, s, u)?.is_subset(current))
}
