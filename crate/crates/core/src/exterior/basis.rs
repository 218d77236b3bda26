//! Generic blocks and colorful generic bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{orthogonalize_with, RationalMatrix};
use super::{ExtElement, ExteriorError};
use crate::linalg::{integer_row, primitive};
use crate::model::{EdgeMask, ParamVec, VertexUniverse};

/// Largest block whose minors are verified by default.
pub const DEFAULT_BLOCK_CAP: usize = 8;
pub const DEFAULT_SEED: u64 = 20240601;
pub const MAX_SAMPLING_ATTEMPTS: usize = 64;
const ENTRY_MAX: i64 = 10_000;

fn sample_block(rng: &mut ChaCha8Rng, m: usize, cap: usize) -> Result<RationalMatrix, ExteriorError> {
    if m > cap {
        return Err(ExteriorError::BlockCapExceeded { size: m, cap });
    }
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let raw: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..m).map(|_| rng.gen_range(1..=ENTRY_MAX)).collect())
            .collect();
        // rows are kept primitive: a positive rescaling per row, which
        // leaves orthogonality and the vanishing pattern of minors intact
        let block = orthogonalize_with(&RationalMatrix::from_integers(&raw), |row| {
            let mut ints: Vec<BigInt> = integer_row(row);
            primitive(&mut ints);
            *row = ints.into_iter().map(BigRational::from_integer).collect();
        });
        if block.all_minors_nonzero() {
            return Ok(block);
        }
    }
    Err(ExteriorError::GeneratorExhausted {
        size: m,
        attempts: MAX_SAMPLING_ATTEMPTS,
    })
}

/// An `m × m` matrix with pairwise-orthogonal (unnormalized) rows and every
/// square minor nonzero, sampled from `seed` and verified exhaustively.
pub fn generic_block(m: usize, seed: u64, cap: usize) -> Result<RationalMatrix, ExteriorError> {
    sample_block(&mut ChaCha8Rng::seed_from_u64(seed), m, cap)
}

/// One generic block per color class, block-diagonal overall. Row `a` of
/// block `i` is the vector `f_v` for vertex `v = (a, i)`.
#[derive(Clone, Debug)]
pub struct ColorfulBasis {
    universe: VertexUniverse,
    blocks: Vec<RationalMatrix>,
    seed: u64,
    verified: bool,
}

/// All blocks come from one generator seeded with `seed`, in color order.
pub fn colorful_generic_basis(n: &ParamVec, seed: u64, cap: usize) -> Result<ColorfulBasis, ExteriorError> {
    let universe = VertexUniverse::new(n.clone())?;
    if let Some(&big) = n.iter().find(|&&ni| ni > cap) {
        return Err(ExteriorError::BlockCapExceeded { size: big, cap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = n
        .iter()
        .map(|&ni| sample_block(&mut rng, ni, cap))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ColorfulBasis {
        universe,
        blocks,
        seed,
        verified: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub blocks: Vec<Vec<Vec<String>>>,
    pub seed: u64,
    pub verified_minors: bool,
}

impl ColorfulBasis {
    /// Wraps arbitrary blocks without any verification.
    pub fn from_blocks(blocks: Vec<RationalMatrix>, seed: u64) -> Result<Self, ExteriorError> {
        if let Some(b) = blocks.iter().find(|b| !b.is_square()) {
            return Err(ExteriorError::Precondition(format!(
                "block of shape {}×{} is not square",
                b.nrows(),
                b.ncols()
            )));
        }
        let sizes = ParamVec::new(blocks.iter().map(RationalMatrix::nrows).collect());
        Ok(ColorfulBasis {
            universe: VertexUniverse::new(sizes)?,
            blocks,
            seed,
            verified: false,
        })
    }

    /// Re-checks orthogonal rows and nonzero minors in every block.
    pub fn verify(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.rows_orthogonal() && b.all_minors_nonzero())
    }

    pub fn universe(&self) -> &VertexUniverse {
        &self.universe
    }

    pub fn blocks(&self) -> &[RationalMatrix] {
        &self.blocks
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `f_v` in e-coordinates.
    pub fn f_vector(&self, pos: usize) -> ExtElement {
        let (color, index) = self.universe.vertex(pos);
        let offset = self.universe.offset(color);
        let mut coeffs = vec![BigRational::from_integer(0.into()); self.universe.total()];
        for (a, x) in self.blocks[color].row(index).iter().enumerate() {
            coeffs[offset + a] = x.clone();
        }
        ExtElement::vector(&coeffs)
    }

    /// `f_S = f_{v_1} ∧ … ∧ f_{v_k}` over the vertices of `S` in increasing
    /// order, in e-coordinates.
    pub fn f_subset_vector(&self, s: EdgeMask) -> Result<ExtElement, ExteriorError> {
        if !self.universe.contains(s) {
            return Err(ExteriorError::MaskOutsideUniverse(s));
        }
        s.iter().try_fold(ExtElement::one(self.universe.total()), |acc, v| acc.wedge(&self.f_vector(v)))
    }

    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    b.rows()
                        .iter()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect()
                })
                .collect(),
            seed: self.seed,
            verified_minors: self.verified,
        }
    }
}
