//! Statevector simulation, the swap test and bipartite entanglement entropy.
//!
//! Basis index convention: qubit 1 is the most significant bit.

use std::ops::Index;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, pauli, vector_norm, CMatrix, C64, DEFAULT_TOL, ONE, ZERO};
use crate::random::rng_from_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps amplitudes that must already have unit norm (within 1e-10).
    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        Self::check_len(n, &amps)?;
        let norm = vector_norm(&amps);
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidArgument(format!(
                "state norm {norm} differs from 1"
            )));
        }
        Ok(StateVector { n, amps })
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(n: usize, amps: Vec<C64>) -> Result<Self> {
        Self::check_len(n, &amps)?;
        let norm = vector_norm(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument(
                "cannot normalize zero vector".into(),
            ));
        }
        Ok(StateVector {
            n,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    fn check_len(n: usize, amps: &[C64]) -> Result<()> {
        if amps.len() != 1 << n {
            return Err(Error::ShapeMismatch {
                expected: format!("{} amplitudes", 1usize << n),
                got: format!("{}", amps.len()),
            });
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(())
    }

    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        if index >= 1 << n {
            return Err(Error::IndexOutOfRange {
                what: "basis state",
                index,
                limit: 1 << n,
            });
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        Ok(StateVector { n, amps })
    }

    pub fn zero(n: usize) -> Self {
        Self::basis_state(n, 0).expect("index 0 always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amps)
    }

    pub fn apply(&self, u: &CMatrix) -> Result<StateVector> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::ShapeMismatch {
                expected: format!("{0}x{0}", self.dim()),
                got: format!("{}x{}", u.rows(), u.cols()),
            });
        }
        Ok(StateVector {
            n: self.n,
            amps: u.mul_vec(&self.amps),
        })
    }

    /// Applies a 2x2 gate to qubit `q` (0-based from the most significant).
    pub fn apply_single(&mut self, q: usize, gate: &CMatrix) {
        assert!(q < self.n && gate.rows() == 2 && gate.cols() == 2);
        let stride = 1 << (self.n - 1 - q);
        for base in 0..self.dim() {
            if base & stride != 0 {
                continue;
            }
            let (a0, a1) = (self.amps[base], self.amps[base | stride]);
            self.amps[base] = gate[(0, 0)] * a0 + gate[(0, 1)] * a1;
            self.amps[base | stride] = gate[(1, 0)] * a0 + gate[(1, 1)] * a1;
        }
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector {
            n: self.n + other.n,
            amps: crate::linalg::kron_vec(&self.amps, &other.amps),
        }
    }

    /// Probability that qubit `q` reads 0.
    pub fn prob_zero(&self, q: usize) -> f64 {
        let stride = 1 << (self.n - 1 - q);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & stride == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws one computational-basis outcome.
    pub fn sample(&self, rng: &mut impl Rng) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr();
            if u < acc {
                return i;
            }
        }
        self.dim() - 1
    }

    /// Outcome histogram over `shots` computational-basis measurements.
    pub fn measure_counts(&self, shots: usize, rng: &mut impl Rng) -> Vec<usize> {
        let mut counts = vec![0; self.dim()];
        for _ in 0..shots {
            counts[self.sample(rng)] += 1;
        }
        counts
    }
}

impl Index<usize> for StateVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

/// `⟨a|b⟩`.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.n != b.n {
        return Err(Error::QubitMismatch(a.n, b.n));
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// Ancilla-0 probability from the Gram formula `(1 + |⟨ψ|φ⟩|²) / 2`.
pub fn swap_test_formula(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(0.5 * (1.0 + inner(psi, phi)?.norm_sqr()))
}

/// Ancilla-0 probability by simulating the `2n + 1` qubit circuit:
/// H on the ancilla, controlled swap of the registers, H, then the ancilla
/// projector.
pub fn swap_test_circuit(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    if psi.n != phi.n {
        return Err(Error::QubitMismatch(psi.n, phi.n));
    }
    let n = psi.n;
    let mut state = StateVector::zero(1).tensor(psi).tensor(phi);
    let h = pauli::hadamard();
    state.apply_single(0, &h);

    let reg_mask = (1usize << n) - 1;
    let anc = 1usize << (2 * n);
    let mut swapped = state.amps.clone();
    for (idx, amp) in state.amps.iter().enumerate() {
        if idx & anc != 0 {
            let a = (idx >> n) & reg_mask;
            let b = idx & reg_mask;
            swapped[anc | (b << n) | a] = *amp;
        }
    }
    state.amps = swapped;

    state.apply_single(0, &h);
    Ok(state.prob_zero(0))
}

/// Exact ancilla-0 probability. Both the formula and the circuit are
/// evaluated; a disagreement beyond 1e-10 is reported as an error.
pub fn swap_test_exact(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    let formula = swap_test_formula(psi, phi)?;
    let circuit = swap_test_circuit(psi, phi)?;
    if (formula - circuit).abs() > DEFAULT_TOL {
        return Err(Error::InvalidArgument(format!(
            "swap-test circuit probability {circuit} disagrees with formula {formula}"
        )));
    }
    Ok(formula)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotTally {
    pub shots: usize,
    pub zero_count: usize,
    pub seed: u64,
    /// Set when the observed zero frequency fell below 1/2 and the overlap
    /// estimate was clamped to 0.
    pub clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapTestSample {
    pub tally: ShotTally,
    /// Estimate of `|⟨ψ|φ⟩|`, `sqrt(max(0, 2·zeros/shots - 1))`.
    pub estimate: f64,
}

/// Inverts the ancilla law `Pr(0) = (1 + |⟨ψ|φ⟩|²)/2` for a zero frequency.
pub fn overlap_from_frequency(zero_count: usize, shots: usize) -> (f64, bool) {
    let radicand = 2.0 * zero_count as f64 / shots as f64 - 1.0;
    if radicand < 0.0 {
        (0.0, true)
    } else {
        (radicand.sqrt(), false)
    }
}

/// Samples `shots` ancilla outcomes from an explicit generator, advancing it.
pub fn swap_test_sampled_with(
    psi: &StateVector,
    phi: &StateVector,
    shots: usize,
    seed: u64,
    rng: &mut impl Rng,
) -> Result<SwapTestSample> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let p0 = swap_test_exact(psi, phi)?;
    let zero_count = (0..shots).filter(|_| rng.random::<f64>() < p0).count();
    let (estimate, clamped) = overlap_from_frequency(zero_count, shots);
    Ok(SwapTestSample {
        tally: ShotTally {
            shots,
            zero_count,
            seed,
            clamped,
        },
        estimate,
    })
}

pub fn swap_test_sampled(
    psi: &StateVector,
    phi: &StateVector,
    shots: usize,
    seed: u64,
) -> Result<SwapTestSample> {
    let mut rng = rng_from_seed(seed);
    swap_test_sampled_with(psi, phi, shots, seed, &mut rng)
}

/// Von Neumann entropy (bits) of the first `cut` qubits.
pub fn entanglement_entropy(state: &StateVector, cut: usize) -> Result<f64> {
    if cut == 0 || cut >= state.n {
        return Err(Error::InvalidArgument(format!(
            "cut {cut} must lie in 1..{}",
            state.n
        )));
    }
    let left = 1 << cut;
    let right = 1 << (state.n - cut);
    let m = CMatrix::from_fn(left, right, |r, c| state.amps[r * right + c]);
    let rho = m.matmul(&m.adjoint());
    let eig = hermitian_eigen(&rho)?;
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0))
}

pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}
