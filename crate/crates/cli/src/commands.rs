//! Subcommand implementations. Each returns the rendered output file, a
//! human-readable summary and the list of violated invariants.

use rand::Rng;
use rayon::prelude::*;

use cliffq::circuits::{
    compile_decomposition, entangler_oracle_state, entangler_state, entangler_unitary,
    factor_netlist, two_level_decompose, two_level_product,
};
use cliffq::clifford::{
    blade_dense, hermitian_basis, omega_count, omega_count_bruteforce, real_gram_rank, Blade, Omega,
};
use cliffq::cqp::{self, Activation, OverlapReadout, PerceptronConfig, TrainingSample};
use cliffq::gqft::{distance_report, AxisMode, GqftParams, GqftReport};
use cliffq::linalg::{frobenius_norm, vector_distance, CMatrix};
use cliffq::random::{random_state, random_unitary, rng_from_seed};
use cliffq::simulator::{
    binary_entropy, entanglement_entropy, inner, swap_test_circuit, swap_test_formula,
    swap_test_sampled_with,
};
use cliffq::trotter::{log_log_slope, random_terms, trotter_report, HamiltonianTerm};

use crate::config::{ConfigError, Settings};
use crate::report::{float, CsvReport};

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Library(cliffq::Error),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<cliffq::Error> for CliError {
    fn from(e: cliffq::Error) -> Self {
        CliError::Library(e)
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(ConfigError(msg.into()))
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub output: String,
    pub summary: Vec<String>,
    /// `"<invariant> <detail>"`.
    pub failures: Vec<String>,
}

pub struct Context {
    pub command: &'static str,
    pub args: String,
}

fn finish(
    ctx: &Context,
    s: &Settings,
    mut report: CsvReport,
    summary: Vec<String>,
    failures: Vec<String>,
) -> Outcome {
    add_metadata(ctx, s, &mut report);
    Outcome {
        output: report.render(),
        summary,
        failures,
    }
}

fn add_metadata(ctx: &Context, s: &Settings, report: &mut CsvReport) {
    report.meta("command", ctx.command);
    report.meta("seed", s.raw("seed"));
    report.meta("version", concat!("cliffq ", env!("CARGO_PKG_VERSION")));
    let params: Vec<String> = s.pairs().map(|(k, v)| format!("{k}={v}")).collect();
    report.meta("params", params.join(" "));
    report.meta("args", ctx.args.clone());
}

fn seed(s: &Settings) -> Result<u64, CliError> {
    Ok(s.get("seed")?)
}

fn row_seed(base: u64, k: usize) -> u64 {
    base.wrapping_add(k as u64)
}

/// `0.1.3` → `[0, 1, 3]`; `-` is the empty set.
pub fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    let text = text.trim();
    if text == "-" {
        return Ok(Vec::new());
    }
    text.split('.')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| invalid(format!("invalid blade `{text}`")))
        })
        .collect()
}

fn parse_blade(n: usize, text: &str) -> Result<Blade, CliError> {
    let idx = parse_indices(text)?;
    Blade::new(n, &idx).map_err(|e| invalid(format!("blade `{text}`: {e}")))
}

fn indices_label(b: &Blade) -> String {
    if b.indices().is_empty() {
        return "-".into();
    }
    b.indices()
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

fn parse_activation(s: &Settings) -> Result<Activation, CliError> {
    Activation::parse(s.raw("activation"))
        .ok_or_else(|| invalid(format!("unknown activation `{}`", s.raw("activation"))))
}

fn parse_readout(s: &Settings) -> Result<OverlapReadout, CliError> {
    match s.raw("readout") {
        "real" => Ok(OverlapReadout::Real),
        "modulus" => Ok(OverlapReadout::Modulus),
        other => Err(invalid(format!("unknown readout `{other}`"))),
    }
}

fn uniform_vec(len: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}

// ---------------------------------------------------------------- verify-basis

pub const VERIFY_BASIS: &[(&str, &str)] = &[("n", "2"), ("seed", "0")];

pub fn verify_basis(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let n: usize = s.in_range("n", 1, 3)?;
    seed(s)?;
    let basis = hermitian_basis(n)?;
    let mut report = CsvReport::new([
        "n",
        "index",
        "indices",
        "grade",
        "omega",
        "word",
        "hermiticity_defect",
        "square_defect",
    ]);
    let id = CMatrix::identity(1 << n);
    let mut dense = Vec::with_capacity(basis.len());
    let (mut max_herm, mut max_sq) = (0.0f64, 0.0f64);
    for (k, b) in basis.blades().iter().enumerate() {
        let m = blade_dense(b);
        let herm = m.hermiticity_defect();
        let sq = frobenius_norm(&(&m.matmul(&m) - &id));
        max_herm = max_herm.max(herm);
        max_sq = max_sq.max(sq);
        let omega = match b.omega() {
            Omega::One => "1",
            Omega::I => "i",
        };
        report.push(vec![
            n.to_string(),
            k.to_string(),
            indices_label(b),
            b.grade().to_string(),
            omega.into(),
            b.word().to_string(),
            float(herm),
            float(sq),
        ]);
        dense.push(m);
    }
    let rank = real_gram_rank(&dense)?;

    let mut gen_defect = 0.0f64;
    for a in 0..2 * n {
        for c in 0..2 * n {
            let ga = Blade::generator(n, a)?.dense();
            let gc = Blade::generator(n, c)?.dense();
            let want = if a == c {
                id.scale_re(2.0)
            } else {
                CMatrix::zeros(1 << n, 1 << n)
            };
            gen_defect = gen_defect.max(frobenius_norm(&(&ga.anticommutator(&gc) - &want)));
        }
    }

    let mut failures = Vec::new();
    if max_herm > 1e-12 {
        failures.push(format!("blade_hermiticity max_defect={}", float(max_herm)));
    }
    if max_sq > 1e-12 {
        failures.push(format!("blade_involution max_defect={}", float(max_sq)));
    }
    if rank != basis.len() {
        failures.push(format!("gram_rank rank={rank} expected={}", basis.len()));
    }
    if gen_defect > 1e-12 {
        failures.push(format!(
            "clifford_relations max_defect={}",
            float(gen_defect)
        ));
    }
    let summary = vec![
        format!("blades: {}", basis.len()),
        format!("gram rank: {rank}"),
        format!("max hermiticity defect: {}", float(max_herm)),
        format!("max generator relation defect: {}", float(gen_defect)),
    ];
    Ok(finish(ctx, s, report, summary, failures))
}

// ---------------------------------------------------------------- omega-count

pub const OMEGA_COUNT: &[(&str, &str)] = &[("n", "1"), ("seed", "0")];

pub fn omega_count_cmd(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let n: usize = s.in_range("n", 1, 3)?;
    seed(s)?;
    let parity = omega_count(n)?;
    let brute = omega_count_bruteforce(n)?;
    let mut report = CsvReport::new(["n", "omega_parity_rule", "omega_bruteforce"]);
    report.push(vec![n.to_string(), parity.to_string(), brute.to_string()]);
    let mut failures = Vec::new();
    if parity != brute {
        failures.push(format!(
            "omega_agreement parity={parity} bruteforce={brute}"
        ));
    }
    let summary = vec![format!("n={n}: parity rule {parity}, brute force {brute}")];
    Ok(finish(ctx, s, report, summary, failures))
}

// ---------------------------------------------------------------- gqft grids

pub const GQFT_GRID: &[(&str, &str)] = &[
    ("n", "1,2,3"),
    ("theta", "0.01,0.1,0.5,1,2"),
    ("axis_sets", "5"),
    ("axes", "independent"),
    ("seed", "0"),
];

struct GqftRow {
    theta: f64,
    n: usize,
    seed: u64,
    report: GqftReport,
}

fn gqft_grid(s: &Settings) -> Result<(Vec<GqftRow>, AxisMode), CliError> {
    let ns: Vec<usize> = s.list("n")?;
    let thetas: Vec<f64> = s.list("theta")?;
    let sets: usize = s.in_range("axis_sets", 1, 1000)?;
    let mode = AxisMode::parse(s.raw("axes"))
        .ok_or_else(|| invalid(format!("unknown axes mode `{}`", s.raw("axes"))))?;
    let base = seed(s)?;
    if ns.is_empty() || thetas.is_empty() {
        return Err(invalid("`n` and `theta` must be non-empty"));
    }
    if let Some(n) = ns.iter().find(|&&n| !(1..=4).contains(&n)) {
        return Err(invalid(format!("`n` = {n} outside 1..=4")));
    }
    if let Some(t) = thetas.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(invalid(format!(
            "`theta` = {t} must be finite and nonnegative"
        )));
    }
    let mut points = Vec::new();
    for &theta in &thetas {
        for &n in &ns {
            for k in 0..sets {
                points.push((theta, n, row_seed(base, k)));
            }
        }
    }
    let rows = points
        .par_iter()
        .map(|&(theta, n, seed)| {
            let params = GqftParams::random(n, theta, mode, &mut rng_from_seed(seed))?;
            Ok(GqftRow {
                theta,
                n,
                seed,
                report: distance_report(&params)?,
            })
        })
        .collect::<Result<Vec<_>, cliffq::Error>>()?;
    Ok((rows, mode))
}

pub fn verify_gqft(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let (rows, mode) = gqft_grid(s)?;
    let mut report = CsvReport::new([
        "theta",
        "n",
        "seed",
        "unitarity_defect",
        "factorization_error",
    ]);
    let (mut max_u, mut max_f) = (0.0f64, 0.0f64);
    let (mut bad_u, mut bad_f) = (0, 0);
    for r in &rows {
        report.push(vec![
            float(r.theta),
            r.n.to_string(),
            r.seed.to_string(),
            float(r.report.unitarity_defect),
            float(r.report.max_column_factorization_error),
        ]);
        max_u = max_u.max(r.report.unitarity_defect);
        max_f = max_f.max(r.report.max_column_factorization_error);
        bad_u += usize::from(!r.report.is_unitary());
        bad_f += usize::from(!r.report.factorization_holds());
    }
    let mut failures = Vec::new();
    if bad_u > 0 {
        failures.push(format!(
            "gqft_unitarity rows={bad_u}/{} max_defect={}",
            rows.len(),
            float(max_u)
        ));
    }
    if bad_f > 0 {
        failures.push(format!(
            "gqft_factorization rows={bad_f}/{} max_error={}",
            rows.len(),
            float(max_f)
        ));
    }
    let summary = vec![
        format!("grid points: {} (axes: {})", rows.len(), mode.name()),
        format!("max unitarity defect: {}", float(max_u)),
        format!("max factorization error: {}", float(max_f)),
    ];
    Ok(finish(ctx, s, report, summary, failures))
}

pub fn gqft_distance(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let (rows, mode) = gqft_grid(s)?;
    let mut report = CsvReport::new(["theta", "n", "seed", "distance", "bound"]);
    let mut over = 0;
    let mut zero_bad = 0;
    let mut max_ratio = 0.0f64;
    for r in &rows {
        report.push(vec![
            float(r.theta),
            r.n.to_string(),
            r.seed.to_string(),
            float(r.report.distance_to_qft),
            float(r.report.distance_bound),
        ]);
        if r.theta == 0.0 {
            zero_bad += usize::from(r.report.distance_to_qft > 1e-12);
        } else {
            over += usize::from(!r.report.within_bound());
            max_ratio = max_ratio.max(r.report.distance_to_qft / r.report.distance_bound);
        }
    }
    let mut failures = Vec::new();
    if over > 0 {
        failures.push(format!("gqft_distance_bound rows={over}/{}", rows.len()));
    }
    if zero_bad > 0 {
        failures.push(format!("gqft_zero_angle rows={zero_bad}"));
    }
    let summary = vec![
        format!("grid points: {} (axes: {})", rows.len(), mode.name()),
        format!("max distance/bound: {}", float(max_ratio)),
    ];
    Ok(finish(ctx, s, report, summary, failures))
}

// ---------------------------------------------------------------- trotter-sweep

pub const TROTTER_SWEEP: &[(&str, &str)] = &[
    ("n", "1"),
    ("terms", ""),
    ("num_terms", "2"),
    ("t", "1"),
    ("r_min", "1"),
    ("r_max", "100"),
    ("seed", "0"),
];

/// `0.7@0;0.4@1;-0.2@0.1` → terms `η@blade`.
pub fn parse_terms(n: usize, text: &str) -> Result<Vec<HamiltonianTerm>, CliError> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            let (coeff, blade) = part
                .split_once('@')
                .ok_or_else(|| invalid(format!("term `{part}` is not `coeff@blade`")))?;
            let coeff: f64 = coeff
                .trim()
                .parse()
                .map_err(|_| invalid(format!("invalid coefficient in `{part}`")))?;
            let blade = parse_blade(n, blade)?;
            if blade.is_identity() {
                return Err(invalid("identity terms are not allowed"));
            }
            HamiltonianTerm::new(coeff, blade).map_err(|e| invalid(format!("term `{part}`: {e}")))
        })
        .collect()
}

fn describe_terms(terms: &[HamiltonianTerm]) -> String {
    terms
        .iter()
        .map(|t| format!("{}@{}", float(t.coeff()), indices_label(t.blade())))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn trotter_sweep(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let n: usize = s.in_range("n", 1, 4)?;
    let t = s.finite("t")?;
    let r_min: u64 = s.in_range("r_min", 1, 1_000_000)?;
    let r_max: u64 = s.in_range("r_max", r_min, 1_000_000)?;
    let base = seed(s)?;
    let terms = if s.raw("terms").is_empty() {
        let count: usize = s.in_range("num_terms", 1, (1 << (2 * n)) - 1)?;
        random_terms(n, count, &mut rng_from_seed(base))?
    } else {
        parse_terms(n, s.raw("terms"))?
    };
    if terms.is_empty() {
        return Err(invalid("no Hamiltonian terms"));
    }

    let rs: Vec<u64> = (r_min..=r_max).collect();
    let reports = rs
        .par_iter()
        .map(|&r| trotter_report(&terms, t, r))
        .collect::<Result<Vec<_>, _>>()?;

    let mut report = CsvReport::new([
        "r",
        "t",
        "measured_error",
        "bound_simple",
        "bound_full",
        "bound_commutator",
        "omega",
    ]);
    let mut over_full = 0;
    let mut over_simple = 0;
    for rep in &reports {
        report.push(vec![
            rep.r.to_string(),
            float(rep.t),
            float(rep.measured_error),
            float(rep.bound_simple),
            float(rep.bound_full),
            float(rep.bound_commutator),
            rep.omega.to_string(),
        ]);
        over_full += usize::from(!rep.within_full_bound());
        over_simple += usize::from(rep.simple_bound_violated());
    }
    report.meta("terms", describe_terms(&terms));

    let mut summary = vec![
        format!("terms: {}", describe_terms(&terms)),
        format!("rows: {}", reports.len()),
        format!("rows above (L Λ t)^2/r without exponential factor: {over_simple}"),
    ];
    let tail: Vec<&cliffq::trotter::TrotterReport> = reports
        .iter()
        .filter(|r| r.r >= 10 && r.measured_error > 0.0)
        .collect();
    if tail.len() >= 2 && reports[0].omega > 0 {
        let xs: Vec<f64> = tail.iter().map(|r| r.r as f64).collect();
        let ys: Vec<f64> = tail.iter().map(|r| r.measured_error).collect();
        summary.push(format!(
            "log-log slope (r >= 10): {}",
            float(log_log_slope(&xs, &ys)?)
        ));
    }
    let mut failures = Vec::new();
    if over_full > 0 {
        failures.push(format!(
            "trotter_full_bound rows={over_full}/{}",
            reports.len()
        ));
    }
    Ok(finish(ctx, s, report, summary, failures))
}

// ---------------------------------------------------------------- swap-test

pub const SWAP_TEST: &[(&str, &str)] = &[
    ("n", "1"),
    ("shots", "100000"),
    ("pairs", "1"),
    ("seed", "0"),
];

pub fn swap_test(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let n: usize = s.in_range("n", 1, 4)?;
    let shots_list: Vec<usize> = s.list("shots")?;
    let pairs: usize = s.in_range("pairs", 1, 10_000)?;
    let base = seed(s)?;
    if shots_list.is_empty() {
        return Err(invalid("`shots` must be non-empty"));
    }
    if let Some(b) = shots_list.iter().find(|&&v| !(1..=10_000_000).contains(&v)) {
        return Err(invalid(format!("`shots` = {b} outside 1..=10000000")));
    }
    let mut points = Vec::new();
    for &shots in &shots_list {
        for k in 0..pairs {
            points.push((shots, row_seed(base, k)));
        }
    }
    struct Row {
        shots: usize,
        seed: u64,
        zero_count: usize,
        estimate: f64,
        exact: f64,
        circuit_gap: f64,
        p0: f64,
    }
    let rows = points
        .par_iter()
        .map(|&(shots, seed)| {
            let mut rng = rng_from_seed(seed);
            let psi = random_state(n, &mut rng);
            let phi = random_state(n, &mut rng);
            let formula = swap_test_formula(&psi, &phi)?;
            let circuit = swap_test_circuit(&psi, &phi)?;
            let sample = swap_test_sampled_with(&psi, &phi, shots, seed, &mut rng)?;
            Ok(Row {
                shots,
                seed,
                zero_count: sample.tally.zero_count,
                estimate: sample.estimate,
                exact: inner(&psi, &phi)?.norm(),
                circuit_gap: (formula - circuit).abs(),
                p0: formula,
            })
        })
        .collect::<Result<Vec<_>, cliffq::Error>>()?;

    let mut report = CsvReport::new(["shots", "seed", "zero_count", "estimate", "exact_overlap"]);
    let mut circuit_bad = 0;
    let mut sampling_bad = 0;
    for r in &rows {
        report.push(vec![
            r.shots.to_string(),
            r.seed.to_string(),
            r.zero_count.to_string(),
            float(r.estimate),
            float(r.exact),
        ]);
        circuit_bad += usize::from(r.circuit_gap > 1e-10);
        let tol = 8.0 * (r.p0 * (1.0 - r.p0) / r.shots as f64).sqrt();
        sampling_bad += usize::from((r.estimate.powi(2) - r.exact.powi(2)).abs() > tol);
    }
    let mut failures = Vec::new();
    if circuit_bad > 0 {
        failures.push(format!(
            "swap_circuit_formula rows={circuit_bad}/{}",
            rows.len()
        ));
    }
    if sampling_bad > 0 {
        failures.push(format!(
            "swap_sampling_tolerance rows={sampling_bad}/{}",
            rows.len()
        ));
    }
    let summary = vec![format!("rows: {}", rows.len())];
    Ok(finish(ctx, s, report, summary, failures))
}

// ---------------------------------------------------------------- train-cqp

pub const TRAIN_CQP: &[(&str, &str)] = &[
    ("n", "1"),
    ("flavor", "type2"),
    ("blades", ""),
    ("output_blade", "0"),
    ("activation", "tanh"),
    ("readout", "real"),
    ("eta", "0.1"),
    ("beta", "1.0471975511965976"),
    ("input", "0.5,0.25"),
    ("init", ""),
    ("iterations", "500"),
    ("fd_step", "1e-5"),
    ("seed", "0"),
];

pub fn build_perceptron(s: &Settings) -> Result<PerceptronConfig, CliError> {
    let n: usize = s.in_range("n", 1, 3)?;
    let activation = parse_activation(s)?;
    let readout = parse_readout(s)?;
    let eta = s.finite("eta")?;
    if eta <= 0.0 {
        return Err(invalid("`eta` must be positive"));
    }
    let output = parse_blade(n, s.raw("output_blade"))?;
    let config = match s.raw("flavor") {
        "type2" => PerceptronConfig::type_ii(n, output, activation, eta),
        "type1" if s.raw("blades").is_empty() => {
            PerceptronConfig::type_i_full(n, output, activation, eta)
        }
        "type1" => {
            let blades = s
                .raw("blades")
                .split(';')
                .map(|b| parse_blade(n, b))
                .collect::<Result<Vec<_>, _>>()?;
            PerceptronConfig::type_i(n, blades, output, activation, eta)
        }
        other => return Err(invalid(format!("unknown flavor `{other}`"))),
    };
    Ok(config
        .map_err(|e| invalid(e.to_string()))?
        .with_readout(readout))
}

pub fn train_cqp(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let config = build_perceptron(s)?;
    let beta = s.finite("beta")?;
    let iterations: usize = s.in_range("iterations", 1, 100_000)?;
    let fd_step = s.finite("fd_step")?;
    if fd_step <= 0.0 {
        return Err(invalid("`fd_step` must be positive"));
    }
    let p = config.num_params();
    let input: Vec<f64> = s.list("input")?;
    if input.len() != p || input.iter().any(|v| !v.is_finite()) {
        return Err(invalid(format!("`input` needs {p} finite coefficients")));
    }
    let base = seed(s)?;
    let init: Vec<f64> = if s.raw("init").is_empty() {
        uniform_vec(p, &mut rng_from_seed(base))
    } else {
        s.list("init")?
    };
    if init.len() != p || init.iter().any(|v| !v.is_finite()) {
        return Err(invalid(format!("`init` needs {p} finite values")));
    }
    let sample = TrainingSample {
        input_coeffs: input,
        target_angle: beta,
    };
    let records = cqp::train(&config, &sample, &init, iterations, fd_step)?;

    let mut header = vec!["iteration".to_string(), "fidelity".to_string()];
    header.extend((0..p).map(|k| format!("theta_{k}")));
    let mut report = CsvReport::new(header);
    for rec in &records {
        let mut row = vec![rec.iteration.to_string(), float(rec.fidelity)];
        row.extend(rec.theta.iter().map(|&v| float(v)));
        report.push(row);
    }
    let fids: Vec<f64> = records.iter().map(|r| r.fidelity).collect();
    // near the optimum successive fidelities may differ by an ulp either way
    let largest_drop = fids.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    let out_of_range = fids
        .iter()
        .filter(|f| !(0.0..=1.0 + 1e-12).contains(*f))
        .count();
    let mut failures = Vec::new();
    if out_of_range > 0 {
        failures.push(format!("fidelity_range rows={out_of_range}"));
    }
    let best = fids.iter().cloned().fold(0.0, f64::max);
    let summary = vec![
        format!("initial fidelity: {}", float(fids[0])),
        format!("final fidelity: {}", float(*fids.last().expect("records"))),
        format!("best fidelity: {}", float(best)),
        format!("non-decreasing (up to 1e-12): {}", largest_drop <= 1e-12),
        format!("largest per-step drop: {}", float(largest_drop)),
    ];
    Ok(finish(ctx, s, report, summary, failures))
}

// ---------------------------------------------------------------- equivalence

pub const EQUIVALENCE: &[(&str, &str)] = &[
    ("n", "2"),
    ("trials", "50"),
    ("activation", "tanh"),
    ("readout", "real"),
    ("seed", "0"),
];

pub fn equivalence(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let n: usize = s.in_range("n", 1, 3)?;
    let trials: usize = s.in_range("trials", 1, 10_000)?;
    let activation = parse_activation(s)?;
    let readout = parse_readout(s)?;
    let base = seed(s)?;
    let output = Blade::generator(n, 0)?;
    let config = PerceptronConfig::type_ii(n, output, activation, 0.1)?.with_readout(readout);
    let rows = (0..trials)
        .into_par_iter()
        .map(|k| {
            let seed = row_seed(base, k);
            let mut rng = rng_from_seed(seed);
            let xs = uniform_vec(2 * n, &mut rng);
            let ws = uniform_vec(2 * n, &mut rng);
            let u = random_unitary(1 << n, &mut rng);
            Ok((k, seed, cqp::type_equivalence(&config, &xs, &ws, &u)?))
        })
        .collect::<Result<Vec<_>, cliffq::Error>>()?;
    let mut report = CsvReport::new(["trial", "seed", "phi_difference", "state_difference"]);
    let mut bad = 0;
    let mut worst = 0.0f64;
    for (k, seed, rep) in &rows {
        report.push(vec![
            k.to_string(),
            seed.to_string(),
            float(rep.phi_difference),
            float(rep.state_difference),
        ]);
        bad += usize::from(!rep.equivalent());
        worst = worst.max(rep.phi_difference).max(rep.state_difference);
    }
    let mut failures = Vec::new();
    if bad > 0 {
        failures.push(format!("type_equivalence rows={bad}/{}", rows.len()));
    }
    let summary = vec![format!("trials: {trials}, max deviation: {}", float(worst))];
    Ok(finish(ctx, s, report, summary, failures))
}

// ---------------------------------------------------------------- decompose

pub const DECOMPOSE: &[(&str, &str)] = &[
    ("source", "entangler"),
    ("theta1", "0.39269908169872414"),
    ("theta2", "0.39269908169872414"),
    ("dim", "4"),
    ("seed", "0"),
];

pub fn decompose(ctx: &Context, s: &Settings) -> Result<Outcome, CliError> {
    let base = seed(s)?;
    let source = s.raw("source").to_string();
    let (u, angles) = match source.as_str() {
        "entangler" => {
            let (t1, t2) = (s.finite("theta1")?, s.finite("theta2")?);
            (entangler_unitary(t1, t2)?, Some((t1, t2)))
        }
        "random" => {
            let dim: usize = s.in_range("dim", 2, 16)?;
            (random_unitary(dim, &mut rng_from_seed(base)), None)
        }
        other => return Err(invalid(format!("unknown source `{other}`"))),
    };
    let dim = u.rows();
    let factors = two_level_decompose(&u)?;
    let recon = frobenius_norm(&(&two_level_product(dim, &factors) - &u));

    let mut output = factor_netlist(&factors);
    let mut failures = Vec::new();
    let mut summary = vec![format!(
        "dimension {dim}: {} two-level factors",
        factors.len()
    )];
    if recon > 1e-9 {
        failures.push(format!(
            "decomposition_reconstruction error={}",
            float(recon)
        ));
    }
    if factors.len() > dim * (dim - 1) / 2 {
        failures.push(format!("decomposition_length factors={}", factors.len()));
    }
    summary.push(format!("reconstruction error: {}", float(recon)));

    if dim.is_power_of_two() {
        let n = dim.trailing_zeros() as usize;
        let circuit = compile_decomposition(&factors, n)?;
        let err = frobenius_norm(&(&circuit.dense() - &u));
        output.push_str(&circuit.netlist());
        summary.push(format!(
            "circuit gates: {}, error: {}",
            circuit.gates.len(),
            float(err)
        ));
        if err > 1e-9 {
            failures.push(format!("circuit_reconstruction error={}", float(err)));
        }
    }
    if let Some((t1, t2)) = angles {
        let state = entangler_state(t1, t2)?;
        let oracle = entangler_oracle_state(t1, t2);
        let gap = vector_distance(state.amplitudes(), oracle.amplitudes());
        let entropy = entanglement_entropy(&state, 1)?;
        let want = binary_entropy((t1 + t2).cos().powi(2));
        summary.push(format!(
            "entanglement entropy of U|00>: {} bits",
            float(entropy)
        ));
        if gap > 1e-10 {
            failures.push(format!("oracle_state distance={}", float(gap)));
        }
        if (entropy - want).abs() > 1e-9 {
            failures.push(format!(
                "entanglement_entropy value={} expected={}",
                float(entropy),
                float(want)
            ));
        }
    }

    let mut meta = CsvReport::new(Vec::<String>::new());
    add_metadata(ctx, s, &mut meta);
    output.push_str(&meta.render_metadata());
    Ok(Outcome {
        output,
        summary,
        failures,
    })
}
