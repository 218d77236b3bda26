//! Bootstrap percolation on `K[S;n]`: closures with witnessing traces,
//! trace verification and brute-force minimum-saturation oracles.
//!
//! A host edge may be added once it is the only missing edge of some copy
//! of a pattern `K[S;r]`, `r ∈ R`. In colored mode copies must put part `i`
//! inside color class `i`; in uncolored mode parts may sit anywhere.

mod copies;
mod oracle;
mod trace_json;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{reduction_conditions, FormulaError, DEFAULT_CONV_CAP};
use crate::model::{
    copy_edges, ColoredHypergraph, EdgeMask, EdgeSet, ModelError, ParamVec, PartsChoice, VecFamily,
};

pub use copies::{colored_vertex_sets, CopyIndex, PatternCopy, UNCOLORED_VERTEX_CAP};
pub use oracle::{
    cwsat_bruteforce, minimum_percolating, wsat_bruteforce_uncolored, OracleResult,
    DEFAULT_EDGE_CAP,
};
pub use trace_json::{StepJson, TraceJson};

#[derive(Debug, Error)]
pub enum PercolationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("host has {edges} edges, above the brute-force cap {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("universe has {vertices} vertices, above the uncolored search cap {cap}")]
    VertexCapExceeded { vertices: usize, cap: usize },
    #[error("start set is not contained in the host")]
    StartNotInHost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyMode {
    Colored,
    Uncolored,
}

/// How uncolored copies are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UncoloredStrategy {
    /// Colored search over permuted patterns when that is known to be
    /// complete, exhaustive part-system search otherwise.
    #[default]
    Auto,
    /// Always enumerate every part system (universe ≤ 14 vertices).
    Exhaustive,
}

/// One step of a percolation process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub edge: EdgeMask,
    pub pattern: ParamVec,
    pub witness: PartsChoice,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PercolationTrace {
    pub steps: Vec<TraceStep>,
}

impl PercolationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub edges: EdgeSet,
    pub trace: PercolationTrace,
    /// Set when uncolored copies came from the exhaustive part-system
    /// search because no reduction to colored search applies.
    pub fallback: bool,
}

/// True when every uncolored copy is already a colored copy of some
/// permuted pattern, so the permuted colored search is complete.
fn permuted_search_suffices(s: &VecFamily, r: &VecFamily) -> Result<bool, FormulaError> {
    if reduction_conditions(s, r, DEFAULT_CONV_CAP)?.all() {
        return Ok(true);
    }
    // in dimension one every copy is colored; a single constant nonzero
    // profile forces each large part into one color class
    let constant_profile = s.len() == 1 && {
        let sv = &s.members()[0];
        sv[0] != 0 && sv.iter().all(|&x| x == sv[0])
    };
    Ok(s.dim() == 1 || constant_profile)
}

/// Builds the copy index used by `mode`, returning whether the exhaustive
/// fallback was needed.
pub fn copy_index(
    host: &ColoredHypergraph,
    s: &VecFamily,
    r: &VecFamily,
    mode: CopyMode,
    strategy: UncoloredStrategy,
) -> Result<(CopyIndex, bool), PercolationError> {
    match mode {
        CopyMode::Colored => Ok((CopyIndex::colored(host, s, r), false)),
        CopyMode::Uncolored => {
            if strategy == UncoloredStrategy::Auto && permuted_search_suffices(s, r)? {
                Ok((CopyIndex::permuted(host, s, r)?, false))
            } else {
                let index = CopyIndex::uncolored_exhaustive(host, s, r, UNCOLORED_VERTEX_CAP)?;
                Ok((index, strategy == UncoloredStrategy::Auto))
            }
        }
    }
}

impl CopyIndex {
    /// Runs the process from `start` (flags over [`CopyIndex::edges`]),
    /// always adding the smallest addable edge in mask order.
    pub fn run(&self, start: &[bool]) -> (Vec<bool>, Vec<(usize, usize)>) {
        let mut present = start.to_vec();
        let mut missing: Vec<u32> = self
            .copies()
            .iter()
            .map(|c| c.edges.iter().filter(|&&e| !present[e as usize]).count() as u32)
            .collect();
        let mut heap = BinaryHeap::new();
        let lone_missing = |c: &PatternCopy, present: &[bool]| {
            c.edges.iter().copied().find(|&e| !present[e as usize])
        };
        for (c, copy) in self.copies().iter().enumerate() {
            if missing[c] == 1 {
                heap.push(Reverse(lone_missing(copy, &present).unwrap() as usize));
            }
        }
        let mut steps = Vec::new();
        while let Some(Reverse(e)) = heap.pop() {
            if present[e] {
                continue;
            }
            let witness = self
                .copies_of_edge(e)
                .iter()
                .map(|&c| c as usize)
                .find(|&c| missing[c] == 1)
                .expect("queued edge has a completing copy");
            present[e] = true;
            steps.push((e, witness));
            for &c in self.copies_of_edge(e) {
                let c = c as usize;
                missing[c] -= 1;
                if missing[c] == 1 {
                    let copy = &self.copies()[c];
                    heap.push(Reverse(lone_missing(copy, &present).unwrap() as usize));
                }
            }
        }
        (present, steps)
    }

    fn flags_of(&self, start: &EdgeSet) -> Result<Vec<bool>, PercolationError> {
        let mut flags = vec![false; self.edges().len()];
        for &e in start {
            let i = self.edge_index(e).ok_or(PercolationError::StartNotInHost)?;
            flags[i] = true;
        }
        Ok(flags)
    }

    /// The closure of `start` together with a witnessing trace.
    pub fn closure(&self, start: &EdgeSet) -> Result<(EdgeSet, PercolationTrace), PercolationError> {
        let (present, steps) = self.run(&self.flags_of(start)?);
        let edges = self
            .edges()
            .iter()
            .zip(&present)
            .filter(|(_, &p)| p)
            .map(|(&e, _)| e)
            .collect();
        let steps = steps
            .into_iter()
            .map(|(e, c)| {
                let copy = &self.copies()[c];
                TraceStep {
                    edge: self.edges()[e],
                    pattern: copy.pattern.clone(),
                    witness: copy.parts.clone(),
                }
            })
            .collect();
        Ok((edges, PercolationTrace { steps }))
    }
}

/// The maximal percolation closure of `start` inside `host`.
pub fn closure(
    host: &ColoredHypergraph,
    s: &VecFamily,
    r: &VecFamily,
    start: &EdgeSet,
    mode: CopyMode,
) -> Result<Closure, PercolationError> {
    closure_with(host, s, r, start, mode, UncoloredStrategy::Auto)
}

pub fn closure_with(
    host: &ColoredHypergraph,
    s: &VecFamily,
    r: &VecFamily,
    start: &EdgeSet,
    mode: CopyMode,
    strategy: UncoloredStrategy,
) -> Result<Closure, PercolationError> {
    if !start.iter().all(|&e| host.contains_edge(e)) {
        return Err(PercolationError::StartNotInHost);
    }
    let (index, fallback) = copy_index(host, s, r, mode, strategy)?;
    let (edges, trace) = index.closure(start)?;
    Ok(Closure {
        edges,
        trace,
        fallback,
    })
}

/// Why a trace was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TraceFault {
    #[error("start set is not contained in the host")]
    StartOutsideHost,
    #[error("edge {0:?} is not a host edge")]
    EdgeOutsideHost(EdgeMask),
    #[error("edge {0:?} is already present")]
    EdgeAlreadyPresent(EdgeMask),
    #[error("pattern {0} is not a member of R")]
    PatternNotInFamily(ParamVec),
    #[error("witness part sizes {found} do not match pattern {pattern}")]
    WrongProfile { pattern: ParamVec, found: ParamVec },
    #[error("witness parts do not respect the colors")]
    ColorsViolated,
    #[error("witness copy has edge {0:?} outside the host")]
    WitnessOutsideHost(EdgeMask),
    #[error("added edge is not an edge of the witness copy")]
    EdgeNotInWitness,
    #[error("witness copy is missing edge {0:?}")]
    WitnessIncomplete(EdgeMask),
    #[error("trace ends with {0} host edges still missing")]
    NotSpanning(usize),
    #[error("witness parts are malformed")]
    MalformedWitness,
}

/// A rejected trace: the failing step (`None` for start or end checks).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("trace rejected at {}: {fault}", match .step { Some(i) => format!("step {i}"), None => "end".to_string() })]
pub struct TraceError {
    pub step: Option<usize>,
    pub fault: TraceFault,
}

/// Checks that `trace` adds exactly the host edges missing from `start`,
/// each completing a copy that is present at its time.
pub fn verify_trace(
    host: &ColoredHypergraph,
    s: &VecFamily,
    r: &VecFamily,
    start: &EdgeSet,
    trace: &PercolationTrace,
    mode: CopyMode,
) -> Result<(), TraceError> {
    let u = host.universe();
    let fail = |step: Option<usize>, fault| Err(TraceError { step, fault });
    if !start.iter().all(|&e| host.contains_edge(e)) {
        return fail(None, TraceFault::StartOutsideHost);
    }
    let mut current = start.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        let at = Some(i);
        if !host.contains_edge(step.edge) {
            return fail(at, TraceFault::EdgeOutsideHost(step.edge));
        }
        if current.contains(&step.edge) {
            return fail(at, TraceFault::EdgeAlreadyPresent(step.edge));
        }
        if !r.contains(&step.pattern) {
            return fail(at, TraceFault::PatternNotInFamily(step.pattern.clone()));
        }
        let sizes = step.witness.sizes();
        if sizes != step.pattern {
            return fail(
                at,
                TraceFault::WrongProfile {
                    pattern: step.pattern.clone(),
                    found: sizes,
                },
            );
        }
        if mode == CopyMode::Colored && !step.witness.is_colored(u) {
            return fail(at, TraceFault::ColorsViolated);
        }
        let Ok(edges) = copy_edges(&step.witness, s, u) else {
            return fail(at, TraceFault::MalformedWitness);
        };
        if let Some(&bad) = edges.iter().find(|e| !host.contains_edge(**e)) {
            return fail(at, TraceFault::WitnessOutsideHost(bad));
        }
        if !edges.contains(&step.edge) {
            return fail(at, TraceFault::EdgeNotInWitness);
        }
        if let Some(&gap) = edges
            .iter()
            .find(|&&e| e != step.edge && !current.contains(&e))
        {
            return fail(at, TraceFault::WitnessIncomplete(gap));
        }
        current.insert(step.edge);
    }
    let left = host.edge_count() - current.len();
    if left > 0 {
        return fail(None, TraceFault::NotSpanning(left));
    }
    Ok(())
}
