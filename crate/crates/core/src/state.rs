//! Validated quantum states and the builders used throughout the crate.
//!
//! Basis convention: qubit 1 is the most significant bit of a row/column
//! index, so `|q1 q2 … qN⟩` sits at index `q1·2^(N-1) + … + qN`.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix};
use crate::partition::Partition;

/// Default tolerance for [`validate_density`]: Hermiticity and trace within
/// `1e-10`, eigenvalues no lower than `-1e-9`.
pub const DEFAULT_STATE_TOL: f64 = 1e-10;

/// Largest qubit count accepted by [`random_density`] and [`random_pure`].
pub const MAX_RANDOM_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("matrix dimension {dim} is not a power of two >= 2")]
    NotPowerOfTwoDim { dim: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("amplitudes are not normalised (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("parameter x = {x} outside [0, 1]")]
    XOutOfRange { x: f64 },

    #[error("GHZ state needs at least 2 qubits, got {n}")]
    NTooSmall { n: usize },

    #[error("qubit count {n} outside 1..={max}")]
    NOutOfRange { n: usize, max: usize },

    #[error("invalid weights: {reason}")]
    WeightsInvalid { reason: String },

    #[error("unsupported layout {layout}: only B|AC on three qubits is implemented")]
    UnsupportedLayout { layout: String },

    #[error("expected {expected} two-qubit states and weights, got {sigmas} states and {weights} weights")]
    CountMismatch { expected: usize, sigmas: usize, weights: usize },

    #[error("state {index} has {num_qubits} qubits, expected 2")]
    NotTwoQubit { index: usize, num_qubits: usize },

    #[error("states have different qubit counts")]
    QubitCountMismatch,
}

/// N-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Wraps a matrix known to be a density matrix by construction.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        let num_qubits = qubits_for_dim(mat.dim()).expect("power-of-two dimension");
        DensityMatrix { num_qubits, mat }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.mat, f64::INFINITY).map(|v| v[0]).expect("no Hermiticity bound")
    }
}

/// Normalised N-qubit amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amp: Vec<Complex64>,
}

impl PureState {
    pub fn new(amp: Vec<Complex64>) -> Result<Self, StateError> {
        let num_qubits = qubits_for_dim(amp.len()).ok_or(StateError::NotPowerOfTwoDim { dim: amp.len() })?;
        let norm_sqr: f64 = amp.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > DEFAULT_STATE_TOL {
            return Err(StateError::NotNormalized { norm_sqr });
        }
        Ok(PureState { num_qubits, amp })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    /// Tensor product `self ⊗ other` in qubit order `self, other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amp = self.amp.iter().flat_map(|a| other.amp.iter().map(move |b| a * b)).collect();
        PureState { num_qubits: self.num_qubits + other.num_qubits, amp }
    }
}

fn qubits_for_dim(dim: usize) -> Option<usize> {
    if dim >= 2 && dim.is_power_of_two() {
        Some(dim.trailing_zeros() as usize)
    } else {
        None
    }
}

/// Checks the three density-matrix invariants at tolerance `tol`.
///
/// Hermiticity and trace are checked to within `tol`; the eigenvalue floor is
/// `-10·tol`. Positivity is settled by a shifted Cholesky factorisation, with
/// the Jacobi eigensolver used only to report the offending eigenvalue.
pub fn validate_density(m: ComplexMatrix, tol: f64) -> Result<DensityMatrix, StateError> {
    let num_qubits = qubits_for_dim(m.dim()).ok_or(StateError::NotPowerOfTwoDim { dim: m.dim() })?;

    let dim = m.dim();
    let mut deviation = 0.0f64;
    for r in 0..dim {
        for c in r..dim {
            deviation = deviation.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    if deviation > tol {
        return Err(StateError::NotHermitian { deviation });
    }

    let trace = m.trace();
    if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
        return Err(StateError::TraceNotOne { trace: trace.re });
    }

    let floor = 10.0 * tol;
    if !linalg::cholesky_succeeds(&m, floor) {
        let min_eigenvalue =
            linalg::hermitian_eigenvalues(&m, tol).map_err(|_| StateError::NotHermitian { deviation })?[0];
        if min_eigenvalue < -floor {
            return Err(StateError::NotPositive { min_eigenvalue });
        }
    }
    Ok(DensityMatrix { num_qubits, mat: m })
}

/// `|ψ⟩⟨ψ|`.
pub fn pure_to_density(psi: &PureState) -> DensityMatrix {
    let amp = &psi.amp;
    let mat = ComplexMatrix::from_fn(amp.len(), |r, c| amp[r] * amp[c].conj());
    DensityMatrix { num_qubits: psi.num_qubits, mat }
}

/// `I / 2^n`.
pub fn maximally_mixed(num_qubits: usize) -> Result<DensityMatrix, StateError> {
    if !(1..=16).contains(&num_qubits) {
        return Err(StateError::NOutOfRange { n: num_qubits, max: 16 });
    }
    let dim = 1usize << num_qubits;
    Ok(DensityMatrix { num_qubits, mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64) })
}

fn check_x(x: f64) -> Result<(), StateError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(StateError::XOutOfRange { x })
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Singlet projector `|ψ⁻⟩⟨ψ⁻|` with `|ψ⁻⟩ = (|01⟩ − |10⟩)/√2`.
pub fn singlet() -> DensityMatrix {
    werner(1.0).expect("x = 1 is in range")
}

/// Werner state `x·S + (1−x)/4·I` with `S` the singlet projector.
pub fn werner(x: f64) -> Result<DensityMatrix, StateError> {
    check_x(x)?;
    let mixed = (1.0 - x) / 4.0;
    let half = x / 2.0;
    let mat = ComplexMatrix::from_fn(4, |r, c| match (r, c) {
        (1, 1) | (2, 2) => real(half + mixed),
        (1, 2) | (2, 1) => real(-half),
        _ if r == c => real(mixed),
        _ => real(0.0),
    });
    Ok(DensityMatrix { num_qubits: 2, mat })
}

/// The two three-qubit example states whose reductions are Werner states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripartiteExample {
    /// Reduces to `werner(x)` along `A|BC`.
    Prime,
    /// Reduces to `werner(x)` along `B|AC`.
    DoublePrime,
}

/// Three-qubit example states ρ′ and ρ″.
///
/// ρ′ has `x/2` at indices 3 and 4 coupled by `−x/2`; ρ″ has them at 2 and 5.
/// The remaining interior diagonal carries `(1−x)/4`, and indices 0 and 7 are
/// empty.
pub fn tripartite_example(variant: TripartiteExample, x: f64) -> Result<DensityMatrix, StateError> {
    check_x(x)?;
    let (a, b) = match variant {
        TripartiteExample::Prime => (3, 4),
        TripartiteExample::DoublePrime => (2, 5),
    };
    let mixed = (1.0 - x) / 4.0;
    let half = x / 2.0;
    let mat = ComplexMatrix::from_fn(8, |r, c| {
        if r == c {
            if r == 0 || r == 7 {
                real(0.0)
            } else if r == a || r == b {
                real(half)
            } else {
                real(mixed)
            }
        } else if (r, c) == (a, b) || (r, c) == (b, a) {
            real(-half)
        } else {
            real(0.0)
        }
    });
    Ok(DensityMatrix { num_qubits: 3, mat })
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize) -> Result<PureState, StateError> {
    if n < 2 {
        return Err(StateError::NTooSmall { n });
    }
    if n > 30 {
        return Err(StateError::NOutOfRange { n, max: 30 });
    }
    let dim = 1usize << n;
    let mut amp = vec![Complex64::new(0.0, 0.0); dim];
    amp[0] = real(std::f64::consts::FRAC_1_SQRT_2);
    amp[dim - 1] = real(std::f64::consts::FRAC_1_SQRT_2);
    Ok(PureState { num_qubits: n, amp })
}

/// GHZ projector with exact `1/2` corner entries; `n ≤ 14`.
pub fn ghz_density(n: usize) -> Result<DensityMatrix, StateError> {
    if n < 2 {
        return Err(StateError::NTooSmall { n });
    }
    if n > 14 {
        return Err(StateError::NOutOfRange { n, max: 14 });
    }
    let last = (1usize << n) - 1;
    let mat = ComplexMatrix::from_fn(last + 1, |r, c| {
        if (r == 0 || r == last) && (c == 0 || c == last) {
            real(0.5)
        } else {
            real(0.0)
        }
    });
    Ok(DensityMatrix { num_qubits: n, mat })
}

/// Seeded source of standard complex Gaussians.
///
/// xoshiro256++ seeded through SplitMix64, uniforms from the top 53 bits,
/// Box–Muller for the normal pair. One complex sample consumes two `u64`s.
pub struct GaussianSource {
    rng: Xoshiro256PlusPlus,
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        GaussianSource { rng: Xoshiro256PlusPlus::seed_from_u64(seed) }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Complex normal with `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let radius = (-u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(radius * angle.cos(), radius * angle.sin())
    }
}

fn check_random_qubits(num_qubits: usize) -> Result<usize, StateError> {
    if (1..=MAX_RANDOM_QUBITS).contains(&num_qubits) {
        Ok(1usize << num_qubits)
    } else {
        Err(StateError::NOutOfRange { n: num_qubits, max: MAX_RANDOM_QUBITS })
    }
}

/// `G·G† / tr(G·G†)` for a seeded complex Ginibre matrix `G`.
pub fn random_density(num_qubits: usize, seed: u64) -> Result<DensityMatrix, StateError> {
    let dim = check_random_qubits(num_qubits)?;
    let mut source = GaussianSource::new(seed);
    let g = ComplexMatrix::from_fn(dim, |_, _| source.complex_normal());
    let gg = g.matmul(&linalg::dagger(&g));
    let tr = gg.trace().re;
    validate_density(gg.scale(1.0 / tr), DEFAULT_STATE_TOL)
}

/// Haar-random pure state from a seeded complex Gaussian vector.
pub fn random_pure(num_qubits: usize, seed: u64) -> Result<PureState, StateError> {
    let dim = check_random_qubits(num_qubits)?;
    let mut source = GaussianSource::new(seed);
    let raw: Vec<Complex64> = (0..dim).map(|_| source.complex_normal()).collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    PureState::new(raw.into_iter().map(|z| z / norm).collect())
}

fn check_weights(weights: &[f64]) -> Result<(), StateError> {
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0 && **w <= 1.0)) {
        return Err(StateError::WeightsInvalid { reason: format!("weight {w} not in (0, 1]") });
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(StateError::WeightsInvalid { reason: format!("weights sum to {total}, expected 1") });
    }
    Ok(())
}

/// `Σ pᵢ ρᵢ` for probability weights `pᵢ`.
pub fn convex_combination(weights: &[f64], states: &[DensityMatrix]) -> Result<DensityMatrix, StateError> {
    if weights.len() != states.len() || states.is_empty() {
        return Err(StateError::CountMismatch { expected: states.len(), sigmas: states.len(), weights: weights.len() });
    }
    check_weights(weights)?;
    let n = states[0].num_qubits;
    if states.iter().any(|s| s.num_qubits != n) {
        return Err(StateError::QubitCountMismatch);
    }
    let mut acc = ComplexMatrix::zeros(states[0].dim());
    for (w, s) in weights.iter().zip(states) {
        acc = &acc + &s.mat.scale(*w);
    }
    Ok(DensityMatrix { num_qubits: n, mat: acc })
}

/// Three-qubit state that is B‖AC-inseparable whenever `Σ pᵢσᵢ` is entangled.
///
/// Entry `[ijk, rst]` is `p₁·σ₁[ji, sr]` when `k = i, t = r`, `p₂·σ₂[ji, sr]`
/// when `k = 1−i, t = 1−r`, and zero otherwise. The result is a direct sum of
/// the two weighted pieces, so its reduction along `B|AC` is exactly
/// `p₁σ₁ + p₂σ₂`. Other layouts and qubit counts return
/// [`StateError::UnsupportedLayout`].
pub fn construct_inseparable(
    sigmas: &[DensityMatrix],
    weights: &[f64],
    layout: &Partition,
) -> Result<DensityMatrix, StateError> {
    let n = layout.n();
    let expected = if n >= 2 { 1usize << (n - 2) } else { 0 };
    if sigmas.len() != expected || weights.len() != expected {
        return Err(StateError::CountMismatch { expected, sigmas: sigmas.len(), weights: weights.len() });
    }
    if n != 3 || layout.first() != [2] {
        return Err(StateError::UnsupportedLayout { layout: layout.to_string() });
    }
    if let Some((index, s)) = sigmas.iter().enumerate().find(|(_, s)| s.num_qubits != 2) {
        return Err(StateError::NotTwoQubit { index, num_qubits: s.num_qubits });
    }
    check_weights(weights)?;

    let bit = |idx: usize, q: usize| (idx >> (3 - q)) & 1;
    let mat = ComplexMatrix::from_fn(8, |row, col| {
        let (i, j, k) = (bit(row, 1), bit(row, 2), bit(row, 3));
        let (r, s, t) = (bit(col, 1), bit(col, 2), bit(col, 3));
        let (piece, w) = if k == i && t == r {
            (&sigmas[0], weights[0])
        } else if k != i && t != r {
            (&sigmas[1], weights[1])
        } else {
            return real(0.0);
        };
        piece.mat[(2 * j + i, 2 * s + r)] * w
    });
    validate_density(mat, DEFAULT_STATE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::parse_partition;

    #[test]
    fn maximally_mixed_two_qubits_is_valid() {
        let m = ComplexMatrix::identity(4).scale(0.25);
        let rho = validate_density(m, DEFAULT_STATE_TOL).unwrap();
        assert_eq!(rho.num_qubits(), 2);
    }

    #[test]
    fn validate_reports_trace() {
        let m = ComplexMatrix::from_real_diagonal(&[0.5, 0.4, 0.0, 0.0]);
        match validate_density(m, DEFAULT_STATE_TOL) {
            Err(StateError::TraceNotOne { trace }) => assert!((trace - 0.9).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_shape_hermiticity_and_negativity() {
        let m = ComplexMatrix::identity(3).scale(1.0 / 3.0);
        assert_eq!(validate_density(m, DEFAULT_STATE_TOL), Err(StateError::NotPowerOfTwoDim { dim: 3 }));
        assert!(matches!(
            validate_density(ComplexMatrix::identity(1), DEFAULT_STATE_TOL),
            Err(StateError::NotPowerOfTwoDim { dim: 1 })
        ));

        let m = ComplexMatrix::from_rows(vec![
            vec![real(0.5), Complex64::new(0.0, 0.1)],
            vec![Complex64::new(0.0, 0.1), real(0.5)],
        ])
        .unwrap();
        assert!(matches!(validate_density(m, DEFAULT_STATE_TOL), Err(StateError::NotHermitian { .. })));

        let m = ComplexMatrix::from_real_diagonal(&[1.1, -0.1]);
        match validate_density(m, DEFAULT_STATE_TOL) {
            Err(StateError::NotPositive { min_eigenvalue }) => assert!((min_eigenvalue + 0.1).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_accepts_tiny_negative_eigenvalue_within_floor() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0 + 5e-10, -5e-10]);
        assert!(validate_density(m, DEFAULT_STATE_TOL).is_ok());
    }

    #[test]
    fn prime_example_is_valid() {
        let rho = validate_density(
            tripartite_example(TripartiteExample::Prime, 0.5).unwrap().into_matrix(),
            DEFAULT_STATE_TOL,
        )
        .unwrap();
        assert_eq!(rho.num_qubits(), 3);
        let m = rho.matrix();
        let diag: Vec<f64> = (0..8).map(|k| m[(k, k)].re).collect();
        assert_eq!(diag, [0.0, 0.125, 0.125, 0.25, 0.25, 0.125, 0.125, 0.0]);
        assert_eq!(m[(3, 4)], real(-0.25));
        assert_eq!(m[(4, 3)], real(-0.25));
    }

    #[test]
    fn double_prime_at_one() {
        let m = tripartite_example(TripartiteExample::DoublePrime, 1.0).unwrap().into_matrix();
        assert_eq!(m, {
            let mut e = ComplexMatrix::from_real_diagonal(&[0.0, 0.0, 0.5, 0.0, 0.0, 0.5, 0.0, 0.0]);
            e.set(2, 5, real(-0.5));
            e.set(5, 2, real(-0.5));
            e
        });
    }

    #[test]
    fn tripartite_examples_are_real_symmetric_unit_trace() {
        for variant in [TripartiteExample::Prime, TripartiteExample::DoublePrime] {
            for step in 0..=20 {
                let x = step as f64 * 0.05;
                let rho = tripartite_example(variant, x).unwrap();
                let m = rho.matrix();
                assert!(m.is_real());
                assert_eq!(&linalg::dagger(m), m);
                assert!((m.trace().re - 1.0).abs() < 1e-15);
                validate_density(m.clone(), DEFAULT_STATE_TOL).unwrap();
            }
        }
        assert_eq!(tripartite_example(TripartiteExample::Prime, 1.5), Err(StateError::XOutOfRange { x: 1.5 }));
    }

    #[test]
    fn werner_values() {
        assert_eq!(werner(0.0).unwrap().into_matrix(), ComplexMatrix::identity(4).scale(0.25));
        let s = werner(1.0).unwrap().into_matrix();
        assert_eq!(
            s,
            ComplexMatrix::from_real_rows(&[
                &[0.0, 0.0, 0.0, 0.0],
                &[0.0, 0.5, -0.5, 0.0],
                &[0.0, -0.5, 0.5, 0.0],
                &[0.0, 0.0, 0.0, 0.0],
            ])
            .unwrap()
        );
        let w = werner(0.5).unwrap().into_matrix();
        assert_eq!(
            w,
            ComplexMatrix::from_real_rows(&[
                &[0.125, 0.0, 0.0, 0.0],
                &[0.0, 0.375, -0.25, 0.0],
                &[0.0, -0.25, 0.375, 0.0],
                &[0.0, 0.0, 0.0, 0.125],
            ])
            .unwrap()
        );
        assert!(linalg::is_hermitian(&w, 1e-12));
        assert!(matches!(werner(-0.01), Err(StateError::XOutOfRange { .. })));
        for step in 0..=20 {
            let w = werner(step as f64 * 0.05).unwrap();
            assert_eq!(w.matrix().trace().re, 1.0);
            validate_density(w.into_matrix(), DEFAULT_STATE_TOL).unwrap();
        }
    }

    #[test]
    fn pure_state_projectors() {
        let zero = PureState::new(vec![real(1.0), real(0.0), real(0.0), real(0.0)]).unwrap();
        assert_eq!(pure_to_density(&zero).into_matrix(), ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]));

        let g2 = pure_to_density(&ghz(2).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2 * std::f64::consts::FRAC_1_SQRT_2;
        for (r, c) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert_eq!(g2.matrix()[(r, c)], real(h));
        }
        assert!((h - 0.5).abs() < 1e-15);

        let g3 = pure_to_density(&ghz(3).unwrap());
        assert_eq!(g3.dim(), 8);
        for r in 0..8 {
            for c in 0..8 {
                let corner = (r == 0 || r == 7) && (c == 0 || c == 7);
                assert_eq!(g3.matrix()[(r, c)], real(if corner { h } else { 0.0 }));
            }
        }
    }

    #[test]
    fn ghz_density_is_exact_projector() {
        let g = ghz_density(3).unwrap();
        assert!(g.matrix().max_abs_diff(pure_to_density(&ghz(3).unwrap()).matrix()) < 1e-15);
        assert_eq!(g.matrix()[(7, 0)], real(0.5));
        assert_eq!(g.matrix().trace(), real(1.0));
        assert_eq!(ghz_density(1), Err(StateError::NTooSmall { n: 1 }));
        assert!(validate_density(g.into_matrix(), DEFAULT_STATE_TOL).is_ok());
    }

    #[test]
    fn ghz_sizes() {
        assert_eq!(ghz(1), Err(StateError::NTooSmall { n: 1 }));
        let g4 = ghz(4).unwrap();
        assert_eq!(g4.amplitudes().iter().filter(|z| z.norm() > 0.0).count(), 2);
        let norm: f64 = g4.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pure_state_rejects_unnormalised() {
        assert!(matches!(PureState::new(vec![real(1.0), real(1.0)]), Err(StateError::NotNormalized { .. })));
        assert!(matches!(PureState::new(vec![real(1.0); 3]), Err(StateError::NotPowerOfTwoDim { dim: 3 })));
    }

    #[test]
    fn random_density_is_deterministic_and_valid() {
        let a = random_density(2, 42).unwrap();
        let b = random_density(2, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_density(2, 43).unwrap());

        let r = random_density(3, 7).unwrap();
        let eig = linalg::hermitian_eigenvalues(r.matrix(), 1e-12).unwrap();
        assert!(eig[0] >= -1e-12);
        assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-12);

        let one = random_density(1, 0).unwrap();
        assert_eq!(one.dim(), 2);
        assert!((one.matrix().trace().re - 1.0).abs() < 1e-15);

        assert!(matches!(random_density(0, 1), Err(StateError::NOutOfRange { .. })));
        assert!(matches!(random_density(11, 1), Err(StateError::NOutOfRange { .. })));
    }

    #[test]
    fn gaussian_source_moments() {
        let mut g = GaussianSource::new(3);
        let n = 20_000;
        let samples: Vec<Complex64> = (0..n).map(|_| g.complex_normal()).collect();
        let mean: Complex64 = samples.iter().sum::<Complex64>() / n as f64;
        let power = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        assert!(mean.norm() < 0.03);
        assert!((power - 1.0).abs() < 0.03);
    }

    #[test]
    fn construct_matches_double_prime() {
        let layout = parse_partition("B|AC", 3).unwrap();
        let mixed = maximally_mixed(2).unwrap();
        let out = construct_inseparable(&[singlet(), mixed], &[0.5, 0.5], &layout).unwrap();
        let expected = tripartite_example(TripartiteExample::DoublePrime, 0.5).unwrap();
        assert_eq!(out.matrix().max_abs_diff(expected.matrix()), 0.0);
    }

    #[test]
    fn construct_errors() {
        let layout = parse_partition("B|AC", 3).unwrap();
        let mixed = maximally_mixed(2).unwrap();
        let pieces = [mixed.clone(), mixed.clone()];
        assert!(matches!(construct_inseparable(&pieces, &[0.6, 0.6], &layout), Err(StateError::WeightsInvalid { .. })));
        assert!(matches!(construct_inseparable(&pieces, &[1.0, 0.0], &layout), Err(StateError::WeightsInvalid { .. })));
        assert!(matches!(
            construct_inseparable(&pieces[..1], &[1.0], &layout),
            Err(StateError::CountMismatch { expected: 2, .. })
        ));
        let other = parse_partition("A|BC", 3).unwrap();
        assert!(matches!(
            construct_inseparable(&pieces, &[0.5, 0.5], &other),
            Err(StateError::UnsupportedLayout { .. })
        ));
        let four = parse_partition("B|ACD", 4).unwrap();
        let quad = [mixed.clone(), mixed.clone(), mixed.clone(), mixed];
        assert!(matches!(construct_inseparable(&quad, &[0.25; 4], &four), Err(StateError::UnsupportedLayout { .. })));
        let three = maximally_mixed(3).unwrap();
        assert!(matches!(
            construct_inseparable(&[singlet(), three], &[0.5, 0.5], &layout),
            Err(StateError::NotTwoQubit { index: 1, num_qubits: 3 })
        ));
    }
}
