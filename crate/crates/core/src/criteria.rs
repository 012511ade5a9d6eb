//! Partial transpose, the PPT test, and partial-separability verdicts.
//!
//! A reduced two-qubit matrix with a negative partial-transpose eigenvalue
//! proves the full state inseparable across the partition (and hence
//! entangled). A non-negative spectrum proves only that the reduced two-qubit
//! state is separable; it says nothing about the N-qubit state, which is why
//! the verdicts are `Inseparable` / `Undetermined` rather than
//! entangled / separable.

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix};
use crate::partition::{enumerate_partitions, Partition, PartitionError};
use crate::reduction::{reduce, ReductionError};
use crate::state::DensityMatrix;

/// Default threshold for calling a partial-transpose eigenvalue negative.
pub const DEFAULT_PPT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriteriaError {
    #[error("expected a {expected}x{expected} matrix, got {actual}x{actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("tolerance must be positive and finite, got {tol}")]
    InvalidTolerance { tol: f64 },

    #[error(transparent)]
    Reduction(#[from] ReductionError),

    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Transpose on the second qubit: `out[2i+j, 2u+v] = in[2i+v, 2u+j]`.
pub fn partial_transpose(rho4: &ComplexMatrix) -> Result<ComplexMatrix, CriteriaError> {
    if rho4.dim() != 4 {
        return Err(CriteriaError::DimensionMismatch { expected: 4, actual: rho4.dim() });
    }
    Ok(ComplexMatrix::from_fn(4, |row, col| {
        let (i, j) = (row >> 1, row & 1);
        let (u, v) = (col >> 1, col & 1);
        rho4[(2 * i + v, 2 * u + j)]
    }))
}

/// Smallest eigenvalue of the partial transpose of a two-qubit state.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64, CriteriaError> {
    if rho.num_qubits() != 2 {
        return Err(CriteriaError::DimensionMismatch { expected: 4, actual: rho.dim() });
    }
    let pt = partial_transpose(rho.matrix())?;
    // The state was validated on construction; the solver symmetrises its input.
    let eig = linalg::hermitian_eigenvalues(&pt, f64::INFINITY).expect("no Hermiticity bound");
    Ok(eig[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    /// The reduced state violates PPT, so the state is inseparable across the
    /// partition and entangled.
    Inseparable,
    /// The reduced state satisfies PPT; no conclusion about the full state.
    Undetermined,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Inseparable => "inseparable",
            VerdictKind::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub partition: Partition,
    pub min_pt_eigenvalue: f64,
    pub tolerance: f64,
}

impl Verdict {
    fn new(partition: Partition, min_pt_eigenvalue: f64, tolerance: f64) -> Self {
        let kind = if min_pt_eigenvalue < -tolerance { VerdictKind::Inseparable } else { VerdictKind::Undetermined };
        Verdict { kind, partition, min_pt_eigenvalue, tolerance }
    }

    /// Whether the reduced two-qubit state is separable. PPT is necessary and
    /// sufficient for two qubits, so this is exact for the reduced state.
    pub fn reduced_separable(&self) -> bool {
        self.min_pt_eigenvalue >= -self.tolerance
    }
}

fn check_tol(tol: f64) -> Result<(), CriteriaError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CriteriaError::InvalidTolerance { tol })
    }
}

/// Reduces `rho` along `p` and applies the PPT test.
pub fn check_partial_separability(rho: &DensityMatrix, p: &Partition, tol: f64) -> Result<Verdict, CriteriaError> {
    check_tol(tol)?;
    let (verdict, _) = check_with_reduction(rho, p, tol)?;
    Ok(verdict)
}

fn check_with_reduction(
    rho: &DensityMatrix,
    p: &Partition,
    tol: f64,
) -> Result<(Verdict, DensityMatrix), CriteriaError> {
    let reduced = reduce(rho, p)?;
    let min = ppt_min_eigenvalue(&reduced)?;
    Ok((Verdict::new(p.clone(), min, tol), reduced))
}

/// Verdicts for every canonical partition of a state.
#[derive(Debug, Clone)]
pub struct SeparabilityReport {
    pub num_qubits: usize,
    pub tolerance: f64,
    /// One per canonical partition, in enumeration order.
    pub verdicts: Vec<Verdict>,
    /// Reduced matrices aligned with `verdicts`, when retained.
    pub reduced: Option<Vec<DensityMatrix>>,
}

impl SeparabilityReport {
    /// True when some partition proves inseparability. `false` is not a
    /// separability claim.
    pub fn entangled(&self) -> bool {
        self.verdicts.iter().any(|v| v.kind == VerdictKind::Inseparable)
    }

    pub fn verdict_for(&self, label: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.partition.to_string() == label)
    }

    pub fn without_reductions(mut self) -> Self {
        self.reduced = None;
        self
    }
}

/// Runs [`check_partial_separability`] over every canonical partition.
///
/// Partitions are evaluated in parallel; the report order is the enumeration
/// order regardless of scheduling.
pub fn analyze_all(rho: &DensityMatrix, tol: f64) -> Result<SeparabilityReport, CriteriaError> {
    check_tol(tol)?;
    let partitions = enumerate_partitions(rho.num_qubits())?;
    let results: Vec<(Verdict, DensityMatrix)> =
        partitions.par_iter().map(|p| check_with_reduction(rho, p, tol)).collect::<Result<_, _>>()?;
    let (verdicts, reduced) = results.into_iter().unzip();
    Ok(SeparabilityReport { num_qubits: rho.num_qubits(), tolerance: tol, verdicts, reduced: Some(reduced) })
}
