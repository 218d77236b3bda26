//! Hypergraph JSON: `{"d": int, "n": [int], "edges": [[[a,i],…],…]}` with
//! 1-based vertex indices `a` and 1-based colors `i`.

use serde::{Deserialize, Serialize};

use super::{ColoredHypergraph, EdgeMask, EdgeSet, ModelError, ParamVec, VertexUniverse};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub d: usize,
    pub n: Vec<usize>,
    pub edges: Vec<Vec<[usize; 2]>>,
}

impl HypergraphJson {
    pub fn from_edges<'a, I>(u: &VertexUniverse, edges: I) -> Self
    where
        I: IntoIterator<Item = &'a EdgeMask>,
    {
        HypergraphJson {
            d: u.dim(),
            n: u.sizes().entries().to_vec(),
            edges: edges.into_iter().map(|&e| edge_to_json(u, e)).collect(),
        }
    }

    pub fn from_hypergraph(h: &ColoredHypergraph) -> Self {
        Self::from_edges(h.universe(), h.edges())
    }

    pub fn universe(&self) -> Result<VertexUniverse, ModelError> {
        if self.n.len() != self.d {
            return Err(ModelError::DimensionMismatch {
                expected: self.d,
                found: self.n.len(),
            });
        }
        VertexUniverse::new(ParamVec::new(self.n.clone()))
    }

    pub fn to_hypergraph(&self) -> Result<ColoredHypergraph, ModelError> {
        let u = self.universe()?;
        let edges = self
            .edges
            .iter()
            .map(|e| edge_from_json(&u, e))
            .collect::<Result<EdgeSet, _>>()?;
        ColoredHypergraph::new(u, edges)
    }
}

/// `[[a,i],…]` (1-based) for an edge, vertices in ascending order.
pub fn edge_to_json(u: &VertexUniverse, e: EdgeMask) -> Vec<[usize; 2]> {
    e.iter()
        .map(|p| {
            let (color, index) = u.vertex(p);
            [index + 1, color + 1]
        })
        .collect()
}

pub fn edge_from_json(u: &VertexUniverse, vertices: &[[usize; 2]]) -> Result<EdgeMask, ModelError> {
    let mut mask = EdgeMask::EMPTY;
    for &[a, i] in vertices {
        if a == 0 || i == 0 {
            return Err(ModelError::Malformed(format!(
                "vertex [{a},{i}] is not 1-based"
            )));
        }
        let p = u.position(i - 1, a - 1)?;
        if mask.contains(p) {
            return Err(ModelError::Malformed(format!("vertex [{a},{i}] repeated")));
        }
        mask = mask | EdgeMask::bit(p);
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_host, VecFamily};

    #[test]
    fn host_roundtrip() {
        let s = VecFamily::single(ParamVec::from([2, 1])).unwrap();
        let host = build_host(&ParamVec::from([3, 2]), &s).unwrap();
        let json = serde_json::to_string(&HypergraphJson::from_hypergraph(&host)).unwrap();
        let back: HypergraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_hypergraph().unwrap(), host);
    }

    #[test]
    fn rejects_zero_based_and_out_of_range() {
        let bad = HypergraphJson {
            d: 1,
            n: vec![3],
            edges: vec![vec![[0, 1]]],
        };
        assert!(bad.to_hypergraph().is_err());
        let bad = HypergraphJson {
            d: 1,
            n: vec![3],
            edges: vec![vec![[4, 1]]],
        };
        assert!(matches!(
            bad.to_hypergraph(),
            Err(ModelError::VertexOutOfRange { .. })
        ));
    }
}
