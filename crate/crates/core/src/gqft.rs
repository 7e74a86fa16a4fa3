//! Generalized quantum Fourier transform.
//!
//! `F_G = N^{-1/2} Σ_{j,k} e^{2πijk/N} e^{iθΓ_k} |k⟩⟨j|` with
//! `Γ_k = Σ_l I⊗…⊗(n̂_l^{k_l}·σ)⊗…⊗I`, where `k_l` is bit `l` of `k`
//! (qubit 1 is the most significant bit).

use std::f64::consts::{PI, SQRT_2};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    expm_i, frobenius_norm, kron_all, kron_vec, pauli, spectral_norm, vector_distance, CMatrix,
    C64, DEFAULT_TOL, I, ONE, ZERO,
};
use crate::random::random_axis;

pub const MAX_QUBITS: usize = 4;
const AXIS_TOL: f64 = 1e-12;

/// How per-bit axes are drawn for random instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxisMode {
    /// Independent axes for `k_l = 0` and `k_l = 1`.
    #[default]
    Independent,
    /// One axis per qubit, used for both bit values.
    Shared,
}

impl AxisMode {
    pub fn parse(name: &str) -> Option<AxisMode> {
        match name.to_ascii_lowercase().as_str() {
            "independent" => Some(AxisMode::Independent),
            "shared" => Some(AxisMode::Shared),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxisMode::Independent => "independent",
            AxisMode::Shared => "shared",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GqftParams {
    n: usize,
    theta: f64,
    /// `axes[l][b]` is the unit axis for qubit `l` (0 = most significant) when its bit is `b`.
    axes: Vec<[[f64; 3]; 2]>,
}

impl GqftParams {
    pub fn new(n: usize, theta: f64, axes: Vec<[[f64; 3]; 2]>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::UnsupportedQubits {
                n,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        if !theta.is_finite() {
            return Err(Error::NonFinite("theta"));
        }
        if axes.len() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n} axis pairs"),
                got: format!("{}", axes.len()),
            });
        }
        for pair in &axes {
            for axis in pair {
                let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
                if !norm.is_finite() || (norm - 1.0).abs() > AXIS_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "axis {axis:?} is not a unit vector"
                    )));
                }
            }
        }
        Ok(GqftParams { n, theta, axes })
    }

    /// Same axis on every qubit and bit value.
    pub fn uniform(n: usize, theta: f64, axis: [f64; 3]) -> Result<Self> {
        Self::new(n, theta, vec![[axis, axis]; n])
    }

    pub fn random(n: usize, theta: f64, mode: AxisMode, rng: &mut impl Rng) -> Result<Self> {
        let axes = (0..n)
            .map(|_| match mode {
                AxisMode::Independent => [random_axis(rng), random_axis(rng)],
                AxisMode::Shared => {
                    let a = random_axis(rng);
                    [a, a]
                }
            })
            .collect();
        Self::new(n, theta, axes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn axes(&self) -> &[[[f64; 3]; 2]] {
        &self.axes
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.n, theta, self.axes.clone())
    }

    fn bit(&self, k: usize, l: usize) -> usize {
        (k >> (self.n - 1 - l)) & 1
    }

    fn check_index(&self, what: &'static str, index: usize) -> Result<()> {
        if index >= self.dim() {
            return Err(Error::IndexOutOfRange {
                what,
                index,
                limit: self.dim(),
            });
        }
        Ok(())
    }
}

/// `n̂·σ`.
pub fn axis_pauli(axis: &[f64; 3]) -> CMatrix {
    let terms = [pauli::x(), pauli::y(), pauli::z()];
    terms
        .iter()
        .zip(axis)
        .fold(CMatrix::zeros(2, 2), |acc, (p, &a)| &acc + &p.scale_re(a))
}

/// `exp(iθ n̂·σ) = cos θ I + i sin θ n̂·σ`.
pub fn axis_rotation(axis: &[f64; 3], theta: f64) -> CMatrix {
    &CMatrix::identity(2).scale_re(theta.cos()) + &axis_pauli(axis).scale(I * theta.sin())
}

pub fn gamma_k(params: &GqftParams, k: usize) -> Result<CMatrix> {
    params.check_index("basis index", k)?;
    let n = params.n;
    let id = CMatrix::identity(2);
    let dim = params.dim();
    let mut g = CMatrix::zeros(dim, dim);
    for l in 0..n {
        let local = axis_pauli(&params.axes[l][params.bit(k, l)]);
        let factors: Vec<&CMatrix> = (0..n).map(|m| if m == l { &local } else { &id }).collect();
        g = &g + &kron_all(factors);
    }
    Ok(g)
}

fn fourier_phase(j: usize, k: usize, dim: usize) -> C64 {
    let frac = ((j * k) % dim) as f64 / dim as f64;
    C64::from_polar(1.0, 2.0 * PI * frac)
}

fn dense_with_angles(params: &GqftParams, angle: impl Fn(usize) -> f64) -> Result<CMatrix> {
    let dim = params.dim();
    let norm = 1.0 / (dim as f64).sqrt();
    // twisted[k] = e^{iθ_k Γ_k}|k⟩
    let twisted: Vec<Vec<C64>> = (0..dim)
        .map(|k| Ok(expm_i(&gamma_k(params, k)?, angle(k))?.column(k)))
        .collect::<Result<_>>()?;
    let mut f = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let mut col = vec![ZERO; dim];
        for (k, tw) in twisted.iter().enumerate() {
            let phase = fourier_phase(j, k, dim) * norm;
            for (c, t) in col.iter_mut().zip(tw) {
                *c += phase * t;
            }
        }
        f.set_column(j, &col);
    }
    Ok(f)
}

/// Dense transform, each `e^{iθΓ_k}` via Hermitian eigendecomposition.
pub fn gqft_dense(params: &GqftParams) -> Result<CMatrix> {
    dense_with_angles(params, |_| params.theta)
}

/// Experimental variant with one angle per basis index `k`.
pub fn gqft_dense_per_k(params: &GqftParams, thetas: &[f64]) -> Result<CMatrix> {
    if thetas.len() != params.dim() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} angles", params.dim()),
            got: format!("{}", thetas.len()),
        });
    }
    if thetas.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite("per-k angles"));
    }
    dense_with_angles(params, |k| thetas[k])
}

/// Column `j` as `⊗_l (e^{iθ n̂_l^0·σ}|0⟩ + e^{2πij2^{-l}} e^{iθ n̂_l^1·σ}|1⟩)/√2`.
/// Not normalized in general: the per-qubit factor has unit norm only when
/// `e^{iθ n̂_l^0·σ}|0⟩ ⟂ e^{iθ n̂_l^1·σ}|1⟩`.
pub fn gqft_column_factored(params: &GqftParams, j: usize) -> Result<Vec<C64>> {
    params.check_index("column", j)?;
    let n = params.n;
    let mut amps = vec![ONE];
    for l in 0..n {
        let r0 = axis_rotation(&params.axes[l][0], params.theta);
        let r1 = axis_rotation(&params.axes[l][1], params.theta);
        // qubit l (0-based from the top) carries weight 2^{-(l+1)}
        let frac = (j % (1 << (l + 1))) as f64 / (1u64 << (l + 1)) as f64;
        let phase = C64::from_polar(1.0, 2.0 * PI * frac);
        let local: Vec<C64> = (0..2)
            .map(|row| (r0[(row, 0)] + phase * r1[(row, 1)]) / SQRT_2)
            .collect();
        amps = kron_vec(&amps, &local);
    }
    Ok(amps)
}

pub fn standard_qft(n: usize) -> Result<CMatrix> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::UnsupportedQubits {
            n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    let dim = 1 << n;
    let norm = 1.0 / (dim as f64).sqrt();
    Ok(CMatrix::from_fn(dim, dim, |k, j| {
        fourier_phase(j, k, dim) * norm
    }))
}

/// `‖Σ_k R|k⟩⟨k|R† − I‖_F ≤ 1e-10`.
pub fn rotation_resolution_check(r: &CMatrix) -> Result<bool> {
    if r.rows() != 2 || r.cols() != 2 {
        return Err(Error::ShapeMismatch {
            expected: "2x2".into(),
            got: format!("{}x{}", r.rows(), r.cols()),
        });
    }
    r.require_unitary(DEFAULT_TOL)?;
    let mut sum = CMatrix::zeros(2, 2);
    for k in 0..2 {
        let proj = CMatrix::from_fn(2, 2, |a, b| if a == k && b == k { ONE } else { ZERO });
        sum = &sum + &r.matmul(&proj).matmul(&r.adjoint());
    }
    Ok(frobenius_norm(&(&sum - &CMatrix::identity(2))) <= DEFAULT_TOL)
}

/// `⊗_l (R_l^0|0⟩⟨0|R_l^0† + R_l^1|1⟩⟨1|R_l^1†)`, which equals `F_G F_G†`.
pub fn predicted_gram(params: &GqftParams) -> CMatrix {
    let factors: Vec<CMatrix> = params
        .axes
        .iter()
        .map(|pair| {
            let r0 = axis_rotation(&pair[0], params.theta);
            let r1 = axis_rotation(&pair[1], params.theta);
            let c0 = r0.column(0);
            let c1 = r1.column(1);
            CMatrix::from_fn(2, 2, |a, b| c0[a] * c0[b].conj() + c1[a] * c1[b].conj())
        })
        .collect();
    kron_all(factors.iter())
}

/// `2^{3n/2} θ n √2 e^{θ n √2}`.
pub fn distance_bound(n: usize, theta: f64) -> f64 {
    let nf = n as f64;
    2f64.powf(1.5 * nf) * theta * nf * SQRT_2 * (theta * nf * SQRT_2).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GqftReport {
    /// `max(‖FF† − I‖_F, ‖F†F − I‖_F)`.
    pub unitarity_defect: f64,
    pub max_column_factorization_error: f64,
    /// Frobenius distance to the standard QFT.
    pub distance_to_qft: f64,
    pub spectral_distance_to_qft: f64,
    pub distance_bound: f64,
}

impl GqftReport {
    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect <= DEFAULT_TOL
    }

    pub fn factorization_holds(&self) -> bool {
        self.max_column_factorization_error <= DEFAULT_TOL
    }

    pub fn within_bound(&self) -> bool {
        self.distance_to_qft <= self.distance_bound
    }
}

pub fn distance_report(params: &GqftParams) -> Result<GqftReport> {
    if params.theta < 0.0 {
        return Err(Error::InvalidArgument("theta must be nonnegative".into()));
    }
    let f = gqft_dense(params)?;
    let mut max_col = 0.0f64;
    for j in 0..params.dim() {
        let fac = gqft_column_factored(params, j)?;
        let err = vector_distance(&f.column(j), &fac);
        max_col = max_col.max(err);
    }
    let diff = &f - &standard_qft(params.n)?;
    Ok(GqftReport {
        unitarity_defect: f.unitarity_defect(),
        max_column_factorization_error: max_col,
        distance_to_qft: frobenius_norm(&diff),
        spectral_distance_to_qft: spectral_norm(&diff)?,
        distance_bound: distance_bound(params.n, params.theta),
    })
}
