//! Reduction of an N-qubit density matrix to a two-qubit density matrix along a
//! bipartition.
//!
//! Each canonical [`SubSplit`] of a partition picks out four basis states of
//! the full register (its [`IndexVector`]s) and therefore one 4×4 principal
//! submatrix. The reduction is the sum of those submatrices over all `2^(N-2)`
//! canonical splits. Because the index vectors of different splits tile the
//! full basis exactly once, the sum is again unit-trace, and being a sum of
//! principal submatrices of a positive matrix it stays positive.
//!
//! The reduced basis is `|i j⟩` at position `2i + j`, where `i` is the bit of
//! the partition's first written side and `j` that of the second side.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::partition::{enumerate_canonical_splits, Partition, SubSplit};
use crate::state::{DensityMatrix, PureState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{perm:?} is not a permutation of 1..={n}")]
    NotAPermutation { perm: Vec<usize>, n: usize },

    #[error("partition is over {expected} qubits but the state has {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// Bit string `x₁ x₂ … x_N` naming one basis state of the full register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexVector(Vec<u8>);

impl IndexVector {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// Row/column position, qubit 1 most significant.
    pub fn position(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `x_k = i` on `r'`, `1−i` on `r''`, `j` on `s'`, `1−j` on `s''`.
pub fn index_vector(split: &SubSplit, i: u8, j: u8) -> IndexVector {
    debug_assert!(i <= 1 && j <= 1);
    let mut bits = vec![0u8; split.parent().n()];
    let mut assign = |set: &[usize], value: u8| {
        for &q in set {
            bits[q - 1] = value;
        }
    };
    assign(split.r_prime(), i);
    assign(split.r_dprime(), 1 - i);
    assign(split.s_prime(), j);
    assign(split.s_dprime(), 1 - j);
    IndexVector(bits)
}

/// Full-register positions of the reduced basis states `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn split_positions(split: &SubSplit) -> [usize; 4] {
    [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| index_vector(split, i, j).position())
}

fn check_qubits(p: &Partition, actual: usize) -> Result<(), ReductionError> {
    if p.n() == actual {
        Ok(())
    } else {
        Err(ReductionError::DimensionMismatch { expected: p.n(), actual })
    }
}

/// The 4×4 principal submatrix selected by `split`.
pub fn extract_submatrix(rho: &DensityMatrix, split: &SubSplit) -> Result<ComplexMatrix, ReductionError> {
    check_qubits(split.parent(), rho.num_qubits())?;
    let pos = split_positions(split);
    let m = rho.matrix();
    Ok(ComplexMatrix::from_fn(4, |a, b| m[(pos[a], pos[b])]))
}

/// Two-qubit reduction of `rho` along `p`.
///
/// For a two-qubit input and partition `A|B` this returns the input unchanged;
/// `B|A` exchanges the two qubits.
pub fn reduce(rho: &DensityMatrix, p: &Partition) -> Result<DensityMatrix, ReductionError> {
    check_qubits(p, rho.num_qubits())?;
    let m = rho.matrix();
    let mut acc = ComplexMatrix::zeros(4);
    for split in enumerate_canonical_splits(p) {
        let pos = split_positions(&split);
        for a in 0..4 {
            for b in 0..4 {
                acc.add_at(a, b, m[(pos[a], pos[b])]);
            }
        }
    }
    Ok(DensityMatrix::from_trusted(acc))
}

/// One weighted pure two-qubit piece of a pure-state reduction.
#[derive(Debug, Clone)]
pub struct PureReductionTerm {
    pub split: SubSplit,
    /// Squared norm of the extracted amplitude vector.
    pub eta_squared: f64,
    /// `|Φ⟩⟨Φ|` for the unnormalised extracted vector `Φ`, i.e. `η²` times a
    /// normalised projector.
    pub term: ComplexMatrix,
    /// The extracted amplitudes `Φ_{ij}` at position `2i + j`.
    pub amplitudes: [Complex64; 4],
}

/// Decomposition of a pure-state reduction into weighted pure pieces.
#[derive(Debug, Clone)]
pub struct PureReductionTerms {
    pub terms: Vec<PureReductionTerm>,
}

impl PureReductionTerms {
    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.eta_squared).sum()
    }

    pub fn sum(&self) -> ComplexMatrix {
        self.terms.iter().fold(ComplexMatrix::zeros(4), |acc, t| &acc + &t.term)
    }
}

/// Pure-state route to the reduction, working on amplitudes instead of the
/// density matrix.
///
/// For each canonical split the amplitudes at the split's four index vectors
/// form an unnormalised two-qubit vector `Φ`; the reduction of `|ψ⟩⟨ψ|` is
/// `Σ |Φ⟩⟨Φ|` and the weights `‖Φ‖²` sum to `‖ψ‖² = 1`.
pub fn reduce_pure_oracle(psi: &PureState, p: &Partition) -> Result<PureReductionTerms, ReductionError> {
    check_qubits(p, psi.num_qubits())?;
    let amp = psi.amplitudes();
    let terms = enumerate_canonical_splits(p)
        .into_iter()
        .map(|split| {
            let pos = split_positions(&split);
            let phi = pos.map(|k| amp[k]);
            let eta_squared = phi.iter().map(|z| z.norm_sqr()).sum();
            let term = ComplexMatrix::from_fn(4, |a, b| phi[a] * phi[b].conj());
            PureReductionTerm { split, eta_squared, term, amplitudes: phi }
        })
        .collect();
    Ok(PureReductionTerms { terms })
}

fn check_permutation(perm: &[usize], n: usize) -> Result<(), ReductionError> {
    let mut seen = vec![false; n + 1];
    let ok = perm.len() == n
        && perm.iter().all(|&q| {
            let fresh = (1..=n).contains(&q) && !seen[q];
            if fresh {
                seen[q] = true;
            }
            fresh
        });
    if ok {
        Ok(())
    } else {
        Err(ReductionError::NotAPermutation { perm: perm.to_vec(), n })
    }
}

/// For each new basis position, the old position it reads from: new qubit `m`
/// is old qubit `perm[m]`.
fn source_positions(perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    (0..1usize << n)
        .map(|new| {
            perm.iter().enumerate().fold(0usize, |old, (m, &q)| {
                let bit = (new >> (n - 1 - m)) & 1;
                old | (bit << (n - q))
            })
        })
        .collect()
}

/// Reorders qubits so that new qubit `m` is old qubit `perm[m]` (1-based).
///
/// `perm = [2, 1, 3]` gives the `B, A, C` ordering, so `new[010, ·]` reads
/// `old[100, ·]`.
pub fn reorder_qubits(rho: &DensityMatrix, perm: &[usize]) -> Result<DensityMatrix, ReductionError> {
    check_permutation(perm, rho.num_qubits())?;
    let src = source_positions(perm);
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(m.dim(), |r, c| m[(src[r], src[c])]);
    Ok(DensityMatrix::from_trusted(out))
}

/// Explicit 0/1 matrix `S` with `reorder_qubits(ρ, perm) = S·ρ·S†`.
pub fn permutation_matrix(perm: &[usize]) -> Result<ComplexMatrix, ReductionError> {
    check_permutation(perm, perm.len())?;
    let src = source_positions(perm);
    Ok(ComplexMatrix::from_fn(src.len(), |r, c| Complex64::new(if src[r] == c { 1.0 } else { 0.0 }, 0.0)))
}

/// Inverse of a 1-based permutation.
pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (m, &q) in perm.iter().enumerate() {
        inv[q - 1] = m + 1;
    }
    inv
}
