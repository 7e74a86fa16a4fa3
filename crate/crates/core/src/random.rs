//! Seeded generators for test instances: states, Hermitian matrices,
//! unitaries and unit axes. All draws go through `ChaCha8Rng` so a `u64`
//! seed fully determines every instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{expm_i, CMatrix, C64};
use crate::simulator::StateVector;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed pure state (normalized complex Gaussian vector).
pub fn random_state(n: usize, rng: &mut impl Rng) -> StateVector {
    let amps: Vec<C64> = (0..1usize << n).map(|_| gaussian_c64(rng)).collect();
    StateVector::normalized(n, amps).expect("gaussian vector is nonzero almost surely")
}

/// GUE-like Hermitian matrix `(A + A^dag) / 2`.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| gaussian_c64(rng));
    (&a + &a.adjoint()).scale_re(0.5)
}

/// `exp(i H)` for a random Hermitian `H`.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    expm_i(&random_hermitian(dim, rng), 1.0).expect("Hermitian by construction")
}

/// Uniform point on the unit sphere.
pub fn random_axis(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-6 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

/// Random element of su(2): a real combination of `iσx, iσy, iσz`.
pub fn random_su2_algebra(rng: &mut impl Rng) -> CMatrix {
    use crate::linalg::pauli;
    let i = C64::new(0.0, 1.0);
    let coeffs: [f64; 3] = [
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    ];
    let m = &(&pauli::x().scale_re(coeffs[0]) + &pauli::y().scale_re(coeffs[1]))
        + &pauli::z().scale_re(coeffs[2]);
    m.scale(i)
}
