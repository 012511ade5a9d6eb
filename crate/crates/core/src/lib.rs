//! Partial-separability analysis of multi-qubit density matrices.
//!
//! An N-qubit state is reduced along a bipartition `R|S` to a two-qubit
//! density matrix by summing 4x4 principal submatrices. A two-qubit
//! reduction that fails the Peres–Horodecki (PPT) test proves the original
//! state is not separable across that bipartition.
//!
//! Qubit 1 is the most significant bit of a basis index.
//!
//! ```
//! use qsep::{analyze_all, parse_partition, reduce, werner, tripartite_example, TripartiteExample};
//!
//! let rho = tripartite_example(TripartiteExample::Prime, 0.5).unwrap();
//! let p = parse_partition("A|BC", 3).unwrap();
//! let reduced = reduce(&rho, &p).unwrap();
//! assert!(reduced.matrix().max_abs_diff(werner(0.5).unwrap().matrix()) < 1e-15);
//!
//! let report = analyze_all(&rho, 1e-9).unwrap();
//! assert!(report.entangled());
//! ```

pub mod criteria;
pub mod io;
pub mod linalg;
pub mod partition;
pub mod reduction;
pub mod state;

pub use criteria::{
    analyze_all, check_partial_separability, partial_transpose, ppt_min_eigenvalue, CriteriaError, SeparabilityReport,
    Verdict, VerdictKind, DEFAULT_PPT_TOL,
};
pub use io::{
    load_matrix, parse_qdm, read_density, save_matrix, to_qdm_string, write_report, write_verdict, QdmError,
    ReportFormat,
};
pub use linalg::{dagger, hermitian_eigenvalues, kron, ComplexMatrix, LinalgError};
pub use num_complex::Complex64;
pub use partition::{
    enumerate_canonical_splits, enumerate_partitions, format_partition, parse_partition, Partition, PartitionError,
    SubSplit, MAX_ENUM_QUBITS,
};
pub use reduction::{
    index_vector, inverse_permutation, permutation_matrix, reduce, reduce_pure_oracle, reorder_qubits, IndexVector,
    PureReductionTerms, ReductionError,
};
pub use state::{
    construct_inseparable, convex_combination, ghz, ghz_density, maximally_mixed, pure_to_density, random_density,
    random_pure, singlet, tripartite_example, validate_density, werner, DensityMatrix, PureState, StateError,
    TripartiteExample, DEFAULT_STATE_TOL,
};

/// Any error produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Qdm(#[from] QdmError),
}
