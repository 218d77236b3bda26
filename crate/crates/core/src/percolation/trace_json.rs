//! JSON form of percolation traces. Vertices are `[index, color]`, 1-based.

use serde::{Deserialize, Serialize};

use super::{PercolationTrace, TraceStep};
use crate::model::json::{edge_from_json, edge_to_json};
use crate::model::{EdgeSet, ModelError, ParamVec, PartsChoice, VertexUniverse};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub edge: Vec<[usize; 2]>,
    pub r: Vec<usize>,
    /// Per color, the 1-based indices of the witness part (colored copies).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<usize>>>,
    /// Per pattern part, its vertices (copies whose parts cross colors).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_parts: Option<Vec<Vec<[usize; 2]>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub start: Vec<Vec<[usize; 2]>>,
    pub steps: Vec<StepJson>,
}

impl TraceJson {
    pub fn new(u: &VertexUniverse, start: &EdgeSet, trace: &PercolationTrace) -> Self {
        let steps = trace
            .steps
            .iter()
            .map(|step| {
                let (witness, witness_parts) = if step.witness.is_colored(u) {
                    let per_color = (0..u.dim())
                        .map(|c| {
                            u.class_indices(step.witness.parts()[c], c)
                                .into_iter()
                                .map(|i| i + 1)
                                .collect()
                        })
                        .collect();
                    (Some(per_color), None)
                } else {
                    let parts = step
                        .witness
                        .parts()
                        .iter()
                        .map(|&p| edge_to_json(u, p))
                        .collect();
                    (None, Some(parts))
                };
                StepJson {
                    edge: edge_to_json(u, step.edge),
                    r: step.pattern.entries().to_vec(),
                    witness,
                    witness_parts,
                }
            })
            .collect();
        TraceJson {
            start: start.iter().map(|&e| edge_to_json(u, e)).collect(),
            steps,
        }
    }

    pub fn start_edges(&self, u: &VertexUniverse) -> Result<EdgeSet, ModelError> {
        let mut out = EdgeSet::new();
        for e in &self.start {
            if !out.insert(edge_from_json(u, e)?) {
                return Err(ModelError::Malformed("repeated start edge".into()));
            }
        }
        Ok(out)
    }

    pub fn trace(&self, u: &VertexUniverse) -> Result<PercolationTrace, ModelError> {
        let mut steps = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let witness = match (&step.witness, &step.witness_parts) {
                (Some(per_color), None) => {
                    if per_color.len() != u.dim() || per_color.iter().flatten().any(|&i| i == 0) {
                        return Err(ModelError::InvalidParts);
                    }
                    let zero_based: Vec<Vec<usize>> = per_color
                        .iter()
                        .map(|ix| ix.iter().map(|i| i - 1).collect())
                        .collect();
                    PartsChoice::colored(u, &zero_based)?
                }
                (None, Some(parts)) => {
                    let masks = parts
                        .iter()
                        .map(|p| edge_from_json(u, p))
                        .collect::<Result<Vec<_>, _>>()?;
                    PartsChoice::new(u, masks)?
                }
                _ => {
                    return Err(ModelError::Malformed(
                        "each step needs exactly one of witness, witness_parts".into(),
                    ))
                }
            };
            steps.push(TraceStep {
                edge: edge_from_json(u, &step.edge)?,
                pattern: ParamVec::new(step.r.clone()),
                witness,
            });
        }
        Ok(PercolationTrace { steps })
    }
}
