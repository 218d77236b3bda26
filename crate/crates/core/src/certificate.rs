//! Rank certificate for the lower bound `c-wsat ≥ |E| − dim U`.
//!
//! For each fitting pattern `r` the vector
//! `g_r = Σ_{s ∈ S} ± f_{⋃_i ([r_i] ∖ [s_i]) × {i}}` is contracted against
//! every vertex set `R` of profile `r`. The span `U` of these contractions
//! has, for each colored copy, an element supported exactly on the copy's
//! edges, which makes `|E| − dim U` a lower bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exterior::{
    colorful_generic_basis, interval_blocks, sign, ColorfulBasis, ExtElement, ExteriorError, SignRule,
    DEFAULT_BLOCK_CAP,
};
use crate::formula::{cwsat_formula, tight_case, Count, FormulaError, TightCase};
use crate::linalg::{integer_row, primitive, rank_integer};
use crate::model::{build_host, copy_edges, ColoredHypergraph, EdgeMask, ModelError, ParamVec, VecFamily};
use crate::percolation::colored_vertex_sets;
use crate::serde_util::count_as_number;
use crate::ParamFamily;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("basis universe {basis} differs from host sizes {host}")]
    BasisMismatch { basis: ParamVec, host: ParamVec },
    #[error("dim U = {dim} exceeds q = {q}")]
    DimensionAboveQ { dim: usize, q: Count },
    #[error("support condition fails for pattern {r} on vertices {vertices:?}")]
    SupportFailed { r: ParamVec, vertices: EdgeMask },
}

impl CertificateError {
    /// True for failed internal assertions, as opposed to bad input.
    pub fn is_assertion(&self) -> bool {
        matches!(self, CertificateError::DimensionAboveQ { .. } | CertificateError::SupportFailed { .. })
    }
}

/// `g_r` in e-coordinates.
pub fn g_vector(r: &ParamVec, s: &VecFamily, basis: &ColorfulBasis, rule: SignRule) -> Result<ExtElement, CertificateError> {
    let u = basis.universe();
    if s.dim() != r.dim() || r.dim() != u.dim() {
        return Err(ModelError::DimensionMismatch {
            expected: u.dim(),
            found: r.dim(),
        }
        .into());
    }
    if let Some(bad) = s.iter().find(|sv| !sv.is_below(r)) {
        return Err(ModelError::PatternBelowProfile { r: r.clone(), s: bad.clone() }.into());
    }
    if !r.is_below(u.sizes()) {
        return Err(ModelError::ProfileExceedsHost { s: r.clone(), n: u.sizes().clone() }.into());
    }
    let mut g = ExtElement::zero(u.total());
    for sv in s {
        let f = basis.f_subset_vector(interval_blocks(u, r, sv))?;
        let term = if rule.pattern_profile_exponent(r, sv).rem_euclid(2) == 0 { f } else { -&f };
        g = &g + &term;
    }
    Ok(g)
}

/// `x ⌟ e_R`.
fn contract_with_set(x: &ExtElement, set: EdgeMask) -> ExtElement {
    let terms = x.terms().iter().filter(|(t, _)| t.is_subset_of(set)).map(|(&t, c)| {
        let rest = set.minus(t);
        (rest, if sign(rest, t) < 0 { -c } else { c.clone() })
    });
    ExtElement::from_terms(x.dim(), terms).expect("inside the universe")
}

/// One generator of `U` with the copy it was built from.
#[derive(Clone, Debug)]
pub struct Generator {
    pub pattern: ParamVec,
    pub vertices: EdgeMask,
    pub element: ExtElement,
}

/// The generators `g_r ⌟ e_R` for `r ∈ R(n)` and every vertex set `R` of
/// profile `r`, restricted to host-edge coordinates.
pub fn span_u(
    family: &ParamFamily,
    basis: &ColorfulBasis,
    rule: SignRule,
) -> Result<Vec<Generator>, CertificateError> {
    let u = basis.universe();
    if u.sizes() != family.n() {
        return Err(CertificateError::BasisMismatch {
            basis: u.sizes().clone(),
            host: family.n().clone(),
        });
    }
    let host = build_host(family.n(), family.s())?;
    let mut out = Vec::new();
    for r in family.fitting_patterns() {
        let g = g_vector(&r, family.s(), basis, rule)?;
        for parts in colored_vertex_sets(u, &r) {
            let vertices = parts.vertices();
            let element = contract_with_set(&g, vertices).restrict(|m| host.contains_edge(m));
            out.push(Generator {
                pattern: r.clone(),
                vertices,
                element,
            });
        }
    }
    Ok(out)
}

/// Exact rank of the generators over the rationals, with the host edges
/// as coordinates.
pub fn dim_u(generators: &[Generator], host: &ColoredHypergraph) -> usize {
    if generators.is_empty() {
        return 0;
    }
    let columns: BTreeMap<EdgeMask, usize> = host.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let rows: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|g| {
            let mut dense = vec![BigRational::zero(); columns.len()];
            for (m, c) in g.element.terms() {
                dense[columns[m]] = c.clone();
            }
            let mut ints = integer_row(&dense);
            primitive(&mut ints);
            ints
        })
        .collect();
    rank_integer(rows)
}

/// First generator whose support differs from its copy's edge set.
pub fn support_violation(
    family: &ParamFamily,
    generators: &[Generator],
    basis: &ColorfulBasis,
) -> Result<Option<(ParamVec, EdgeMask)>, CertificateError> {
    let u = basis.universe();
    for g in generators {
        let parts = crate::model::PartsChoice::colored_from_vertices(u, g.vertices);
        let edges = copy_edges(&parts, family.s(), u)?;
        if !g.element.support().eq(edges.iter().copied()) {
            return Ok(Some((g.pattern.clone(), g.vertices)));
        }
    }
    Ok(None)
}

/// True when every colored copy has an element of `U` supported exactly on
/// its edges.
pub fn support_condition(family: &ParamFamily, basis: &ColorfulBasis, rule: SignRule) -> Result<bool, CertificateError> {
    let generators = span_u(family, basis, rule)?;
    Ok(support_violation(family, &generators, basis)?.is_none())
}

fn tight_case_name<S: serde::Serializer>(case: &Option<TightCase>, ser: S) -> Result<S::Ok, S::Error> {
    match case {
        Some(c) => c.serialize(ser),
        None => ser.serialize_str("none"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub edge_count: usize,
    #[serde(rename = "dim_U")]
    pub dim_u: usize,
    #[serde(serialize_with = "count_as_number")]
    pub q: Count,
    pub bound: usize,
    #[serde(serialize_with = "count_as_number")]
    pub formula_cwsat: Count,
    pub support_ok: bool,
    #[serde(serialize_with = "tight_case_name")]
    pub tight_case: Option<TightCase>,
    pub seed: u64,
    /// Whether `dim U` reached `q`; observed, not required.
    #[serde(rename = "dim_U_equals_q")]
    pub dim_u_equals_q: bool,
}

/// Builds the basis from `seed`, computes `U` and checks `dim U ≤ q` and the
/// support condition; either failure is an error.
pub fn certificate_report(family: &ParamFamily, seed: u64) -> Result<CertificateReport, CertificateError> {
    certificate_report_with(family, seed, DEFAULT_BLOCK_CAP, SignRule::default())
}

pub fn certificate_report_with(
    family: &ParamFamily,
    seed: u64,
    block_cap: usize,
    rule: SignRule,
) -> Result<CertificateReport, CertificateError> {
    let basis = colorful_generic_basis(family.n(), seed, block_cap)?;
    let report = unchecked_report(family, &basis, rule)?;
    if !report.support_ok {
        let generators = span_u(family, &basis, rule)?;
        let (r, vertices) = support_violation(family, &generators, &basis)?.expect("violation exists");
        return Err(CertificateError::SupportFailed { r, vertices });
    }
    if Count::from(report.dim_u) > report.q {
        return Err(CertificateError::DimensionAboveQ {
            dim: report.dim_u,
            q: report.q,
        });
    }
    Ok(report)
}

/// The report for an arbitrary basis, without asserting anything.
pub fn unchecked_report(family: &ParamFamily, basis: &ColorfulBasis, rule: SignRule) -> Result<CertificateReport, CertificateError> {
    let host = build_host(family.n(), family.s())?;
    let generators = span_u(family, basis, rule)?;
    let dim = dim_u(&generators, &host);
    let support_ok = support_violation(family, &generators, basis)?.is_none();
    let formula = cwsat_formula(family)?;
    Ok(CertificateReport {
        edge_count: host.edge_count(),
        dim_u: dim,
        bound: host.edge_count() - dim,
        dim_u_equals_q: formula.q.to_usize() == Some(dim),
        q: formula.q,
        formula_cwsat: formula.cwsat,
        support_ok,
        tight_case: tight_case(family),
        seed: basis.seed(),
    })
}
