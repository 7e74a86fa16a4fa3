//! Clifford quantum perceptrons.
//!
//! A perceptron encodes real coefficients as `exp(i Σ_j c_j B_j)|0…0⟩` over
//! a list of Hermitian blades `B_j` (any non-identity blades for Type I,
//! exactly the 2n generators for Type II). The neuron angle is
//! `φ = arccos(act(Re⟨x|w⟩))` and the output state is `exp(i φ B_μ)|0…0⟩`.
//! Training ascends the fidelity `|⟨r|y⟩|` against the target
//! `exp(i β B_μ)|0…0⟩` using central finite differences.

use crate::clifford::{hermitian_basis, Blade};
use crate::error::{Error, Result};
use crate::linalg::{expm_i, vector_distance, CMatrix, C64, DEFAULT_TOL};
use crate::simulator::{inner, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    TypeI,
    TypeII,
}

/// Real activation with range inside `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Identity,
    Tanh,
    Clamp,
}

impl Activation {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Identity => x,
            Activation::Tanh => x.tanh(),
            Activation::Clamp => x.clamp(-1.0, 1.0),
        }
    }

    pub fn parse(name: &str) -> Option<Activation> {
        match name.to_ascii_lowercase().as_str() {
            "identity" => Some(Activation::Identity),
            "tanh" => Some(Activation::Tanh),
            "clamp" => Some(Activation::Clamp),
            _ => None,
        }
    }
}

/// Which scalar of the complex overlap `⟨x|w⟩` feeds the activation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OverlapReadout {
    #[default]
    Real,
    Modulus,
}

impl OverlapReadout {
    fn read(self, z: C64) -> f64 {
        match self {
            OverlapReadout::Real => z.re,
            OverlapReadout::Modulus => z.norm(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PerceptronConfig {
    pub n: usize,
    pub flavor: Flavor,
    pub active_blades: Vec<Blade>,
    pub output_blade: Blade,
    pub activation: Activation,
    pub eta: f64,
    pub readout: OverlapReadout,
}

impl PerceptronConfig {
    /// Type II: the 2n generators as active blades.
    pub fn type_ii(
        n: usize,
        output_blade: Blade,
        activation: Activation,
        eta: f64,
    ) -> Result<Self> {
        let active = (0..2 * n)
            .map(|a| Blade::generator(n, a))
            .collect::<Result<Vec<_>>>()?;
        Self::build(n, Flavor::TypeII, active, output_blade, activation, eta)
    }

    pub fn type_i(
        n: usize,
        active_blades: Vec<Blade>,
        output_blade: Blade,
        activation: Activation,
        eta: f64,
    ) -> Result<Self> {
        Self::build(
            n,
            Flavor::TypeI,
            active_blades,
            output_blade,
            activation,
            eta,
        )
    }

    /// Type I over every non-identity blade of Cl(2n).
    pub fn type_i_full(
        n: usize,
        output_blade: Blade,
        activation: Activation,
        eta: f64,
    ) -> Result<Self> {
        let active = hermitian_basis(n)?.non_identity().cloned().collect();
        Self::type_i(n, active, output_blade, activation, eta)
    }

    fn build(
        n: usize,
        flavor: Flavor,
        active_blades: Vec<Blade>,
        output_blade: Blade,
        activation: Activation,
        eta: f64,
    ) -> Result<Self> {
        let config = PerceptronConfig {
            n,
            flavor,
            active_blades,
            output_blade,
            activation,
            eta,
            readout: OverlapReadout::Real,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.active_blades.is_empty() {
            return Err(Error::InvalidArgument("no active blades".into()));
        }
        for (k, b) in self.active_blades.iter().enumerate() {
            if b.n() != self.n {
                return Err(Error::QubitMismatch(b.n(), self.n));
            }
            if b.is_identity() {
                return Err(Error::InvalidArgument(
                    "identity blade is not allowed".into(),
                ));
            }
            if self.active_blades[..k]
                .iter()
                .any(|o| o.indices() == b.indices())
            {
                return Err(Error::InvalidArgument(format!("duplicate blade {b}")));
            }
        }
        if self.flavor == Flavor::TypeII {
            let is_generators = self.active_blades.len() == 2 * self.n
                && self.active_blades.iter().all(|b| b.grade() == 1);
            if !is_generators {
                return Err(Error::InvalidArgument(
                    "Type II uses exactly the 2n generators".into(),
                ));
            }
        }
        if self.output_blade.n() != self.n {
            return Err(Error::QubitMismatch(self.output_blade.n(), self.n));
        }
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        Ok(())
    }

    pub fn with_readout(mut self, readout: OverlapReadout) -> Self {
        self.readout = readout;
        self
    }

    pub fn num_params(&self) -> usize {
        self.active_blades.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSample {
    pub input_coeffs: Vec<f64>,
    pub target_angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainRecord {
    pub iteration: usize,
    pub theta: Vec<f64>,
    pub fidelity: f64,
}

/// `exp(i Σ_j c_j B_j)|0…0⟩` for an explicit blade list.
pub fn encode_blades(n: usize, blades: &[Blade], coeffs: &[f64]) -> Result<StateVector> {
    if coeffs.len() != blades.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} coefficients", blades.len()),
            got: format!("{}", coeffs.len()),
        });
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite("encoding coefficients"));
    }
    let dim = 1 << n;
    let mut h = CMatrix::zeros(dim, dim);
    for (b, &c) in blades.iter().zip(coeffs) {
        if c != 0.0 {
            h = &h + &b.dense().scale_re(c);
        }
    }
    StateVector::zero(n).apply(&expm_i(&h, 1.0)?)
}

pub fn encode(config: &PerceptronConfig, coeffs: &[f64]) -> Result<StateVector> {
    encode_blades(config.n, &config.active_blades, coeffs)
}

/// `exp(i s B)|0…0⟩` for a single blade.
pub fn blade_rotation_state(blade: &Blade, s: f64) -> Result<StateVector> {
    StateVector::zero(blade.n()).apply(&expm_i(&blade.dense(), s)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForwardOutput {
    pub phi: f64,
    pub y: StateVector,
}

/// `φ = arccos(act(readout⟨x|w⟩))`.
pub fn neuron_angle(
    x: &StateVector,
    w: &StateVector,
    activation: Activation,
    readout: OverlapReadout,
) -> Result<f64> {
    let arg = readout.read(inner(x, w)?);
    let mut a = activation.apply(arg);
    if !a.is_finite() || a.abs() > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "activation output {a} outside [-1, 1]"
        )));
    }
    a = a.clamp(-1.0, 1.0);
    Ok(a.acos())
}

pub fn forward(
    x: &StateVector,
    w: &StateVector,
    activation: Activation,
    output_blade: &Blade,
) -> Result<ForwardOutput> {
    forward_with(x, w, activation, OverlapReadout::Real, output_blade)
}

pub fn forward_with(
    x: &StateVector,
    w: &StateVector,
    activation: Activation,
    readout: OverlapReadout,
    output_blade: &Blade,
) -> Result<ForwardOutput> {
    if output_blade.n() != x.n() {
        return Err(Error::QubitMismatch(output_blade.n(), x.n()));
    }
    let phi = neuron_angle(x, w, activation, readout)?;
    let y = blade_rotation_state(output_blade, phi)?;
    Ok(ForwardOutput { phi, y })
}

/// `|⟨r|y⟩|` with `|r⟩ = exp(i β B_μ)|0…0⟩`, evaluated numerically.
pub fn fidelity(y: &StateVector, target_angle: f64, output_blade: &Blade) -> Result<f64> {
    let r = blade_rotation_state(output_blade, target_angle)?;
    Ok(inner(&r, y)?.norm())
}

impl PerceptronConfig {
    pub fn forward_coeffs(&self, x_coeffs: &[f64], theta: &[f64]) -> Result<ForwardOutput> {
        let x = encode(self, x_coeffs)?;
        let w = encode(self, theta)?;
        forward_with(&x, &w, self.activation, self.readout, &self.output_blade)
    }

    pub fn sample_fidelity(&self, sample: &TrainingSample, theta: &[f64]) -> Result<f64> {
        let out = self.forward_coeffs(&sample.input_coeffs, theta)?;
        fidelity(&out.y, sample.target_angle, &self.output_blade)
    }
}

/// Central finite-difference gradient of the sample fidelity.
pub fn fidelity_gradient(
    config: &PerceptronConfig,
    sample: &TrainingSample,
    theta: &[f64],
    step: f64,
) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "fd step must be positive, got {step}"
        )));
    }
    let mut probe = theta.to_vec();
    let mut grad = Vec::with_capacity(theta.len());
    for j in 0..theta.len() {
        probe[j] = theta[j] + step;
        let plus = config.sample_fidelity(sample, &probe)?;
        probe[j] = theta[j] - step;
        let minus = config.sample_fidelity(sample, &probe)?;
        probe[j] = theta[j];
        let g = (plus - minus) / (2.0 * step);
        if !g.is_finite() {
            return Err(Error::NonFiniteGradient { index: j });
        }
        grad.push(g);
    }
    Ok(grad)
}

/// Gradient ascent `θ ← θ + η ∂F/∂θ`. Returns `iterations + 1` records;
/// record `k` holds θ after `k` updates and its fidelity.
pub fn train(
    config: &PerceptronConfig,
    sample: &TrainingSample,
    initial_theta: &[f64],
    iterations: usize,
    fd_step: f64,
) -> Result<Vec<TrainRecord>> {
    if iterations == 0 {
        return Err(Error::InvalidArgument(
            "iterations must be at least 1".into(),
        ));
    }
    if initial_theta.len() != config.num_params() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} parameters", config.num_params()),
            got: format!("{}", initial_theta.len()),
        });
    }
    let mut theta = initial_theta.to_vec();
    let mut records = Vec::with_capacity(iterations + 1);
    records.push(TrainRecord {
        iteration: 0,
        theta: theta.clone(),
        fidelity: config.sample_fidelity(sample, &theta)?,
    });
    for k in 1..=iterations {
        let grad = fidelity_gradient(config, sample, &theta, fd_step)?;
        for (t, g) in theta.iter_mut().zip(&grad) {
            *t += config.eta * g;
        }
        records.push(TrainRecord {
            iteration: k,
            theta: theta.clone(),
            fidelity: config.sample_fidelity(sample, &theta)?,
        });
    }
    Ok(records)
}

/// Per-layer neuron angles and the final layer's output state.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilayerOutput {
    pub angles: Vec<Vec<f64>>,
    pub output: StateVector,
}

/// Layer `m` compares the previous state with every neuron's weight state,
/// then re-encodes the angles `φ_{j,m}` over the active blades.
/// `layers[m][j]` holds the weight coefficients of neuron `j` in layer `m`.
pub fn multilayer_forward(
    config: &PerceptronConfig,
    layers: &[Vec<Vec<f64>>],
    x_coeffs: &[f64],
) -> Result<MultilayerOutput> {
    if layers.is_empty() {
        return Err(Error::InvalidArgument("need at least one layer".into()));
    }
    let mut state = encode(config, x_coeffs)?;
    let mut angles = Vec::with_capacity(layers.len());
    for (m, layer) in layers.iter().enumerate() {
        if layer.len() != config.num_params() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} neurons in layer {m}", config.num_params()),
                got: format!("{}", layer.len()),
            });
        }
        let phis = layer
            .iter()
            .map(|weights| {
                let w = encode(config, weights)?;
                neuron_angle(&state, &w, config.activation, config.readout)
            })
            .collect::<Result<Vec<f64>>>()?;
        state = encode(config, &phis)?;
        angles.push(phis);
    }
    Ok(MultilayerOutput {
        angles,
        output: state,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub phi_difference: f64,
    pub state_difference: f64,
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.phi_difference <= DEFAULT_TOL && self.state_difference <= DEFAULT_TOL
    }
}

/// Compares the perceptron on `(x, w)` with the one on `(U x, U w)`.
pub fn type_equivalence(
    config: &PerceptronConfig,
    x_coeffs: &[f64],
    w_coeffs: &[f64],
    u: &CMatrix,
) -> Result<EquivalenceReport> {
    u.require_unitary(DEFAULT_TOL)?;
    let dim = 1 << config.n;
    if u.rows() != dim {
        return Err(Error::ShapeMismatch {
            expected: format!("{dim}x{dim}"),
            got: format!("{}x{}", u.rows(), u.cols()),
        });
    }
    let x = encode(config, x_coeffs)?;
    let w = encode(config, w_coeffs)?;
    let base = forward_with(
        &x,
        &w,
        config.activation,
        config.readout,
        &config.output_blade,
    )?;
    let moved = forward_with(
        &x.apply(u)?,
        &w.apply(u)?,
        config.activation,
        config.readout,
        &config.output_blade,
    )?;
    Ok(EquivalenceReport {
        phi_difference: (base.phi - moved.phi).abs(),
        state_difference: vector_distance(base.y.amplitudes(), moved.y.amplitudes()),
    })
}

pub fn type_equivalence_check(
    config: &PerceptronConfig,
    x_coeffs: &[f64],
    w_coeffs: &[f64],
    u: &CMatrix,
) -> Result<bool> {
    Ok(type_equivalence(config, x_coeffs, w_coeffs, u)?.equivalent())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorActivationOutput {
    /// `φ(A)|x_i⟩ / N`.
    pub y_out: StateVector,
    /// `⟨y_out|y_out,d⟩`.
    pub overlap: C64,
    /// `|⟨y_out|y_out,d⟩|`.
    pub cost: f64,
    /// `⟨x|φ(A)|x⟩ = Σ_j φ(|a_j|) |a_j|²`.
    pub readout: f64,
}

/// Operator-activation network on the computational basis: `A` is diagonal
/// with entries `|a_j|`, and `φ(A)` applies the activation entrywise.
pub fn operator_activation_forward(
    x: &StateVector,
    activation: Activation,
    reference_index: usize,
    desired: &StateVector,
) -> Result<OperatorActivationOutput> {
    if reference_index >= x.dim() {
        return Err(Error::IndexOutOfRange {
            what: "reference",
            index: reference_index,
            limit: x.dim(),
        });
    }
    if (x.norm() - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::InvalidArgument(
            "input state must be normalized".into(),
        ));
    }
    let activated: Vec<f64> = x
        .amplitudes()
        .iter()
        .map(|a| activation.apply(a.norm()))
        .collect();
    let readout = activated
        .iter()
        .zip(x.amplitudes())
        .map(|(f, a)| f * a.norm_sqr())
        .sum();

    // φ(A)|x_i⟩ = φ(|a_i|)|x_i⟩, so N = |φ(|a_i|)|.
    let fi = activated[reference_index];
    let norm = fi.abs();
    if norm <= 1e-300 {
        return Err(Error::DegenerateOutput {
            index: reference_index,
        });
    }
    let mut amps = vec![C64::new(0.0, 0.0); x.dim()];
    amps[reference_index] = C64::new(fi / norm, 0.0);
    let y_out = StateVector::new(x.n(), amps)?;
    let overlap = inner(&y_out, desired)?;
    Ok(OperatorActivationOutput {
        y_out,
        overlap,
        cost: overlap.norm(),
        readout,
    })
}
