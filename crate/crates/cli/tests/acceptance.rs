//! End-to-end acceptance suite. Prints one `PASS`/`FAIL` line per
//! criterion, then asserts that every criterion passes except those listed
//! in `KNOWN_FAILURES`, which must still fail (so a fix is noticed).
//!
//! Run with `cargo test -p cliffq-cli --test acceptance`.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_8, PI};
use std::io::Write;
use std::process::Command;

use rand::Rng;
use rayon::prelude::*;

use cliffq::circuits::{
    compile_decomposition, entangler_oracle_state, entangler_state, entangler_unitary,
    two_level_decompose, two_level_product,
};
use cliffq::clifford::{
    gamma, hermitian_basis, lie_embedding_defect, omega_count, omega_count_bruteforce,
    pauli_coefficients, pauli_reconstruct, real_gram_rank, Blade,
};
use cliffq::cqp::{
    fidelity_gradient, train, type_equivalence, Activation, PerceptronConfig, TrainingSample,
};
use cliffq::gqft::{distance_report, gqft_column_factored, gqft_dense, AxisMode, GqftParams};
use cliffq::linalg::{frobenius_norm, pauli, vector_distance, I as IM};
use cliffq::random::{
    random_hermitian, random_state, random_su2_algebra, random_unitary, rng_from_seed,
};
use cliffq::simulator::{
    entanglement_entropy, inner, swap_test_circuit, swap_test_formula, swap_test_sampled,
};
use cliffq::trotter::{log_log_slope, random_terms, trotter_sweep};
use cliffq::CMatrix;

/// Independent per-bit axes make the generalized QFT non-unitary whenever
/// `R⁰|0⟩` and `R¹|1⟩` are not orthogonal; see the README.
const KNOWN_FAILURES: &[u8] = &[8];

struct Verdict {
    id: u8,
    pass: bool,
    detail: String,
}

fn verdict(id: u8, pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        id,
        pass,
        detail: detail.into(),
    }
}

fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
    frobenius_norm(&(a - b))
}

fn clifford_relations() -> Verdict {
    let mut worst = 0.0f64;
    for n in 1..=4 {
        let gs: Vec<CMatrix> = (0..2 * n).map(|a| gamma(n, a).unwrap().dense()).collect();
        let id = CMatrix::identity(1 << n);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let expected = if a == b {
                    id.scale_re(2.0)
                } else {
                    CMatrix::zeros(1 << n, 1 << n)
                };
                worst = worst.max(dist(&gs[a].anticommutator(&gs[b]), &expected));
            }
        }
    }
    verdict(
        1,
        worst <= 1e-12,
        format!("max anticommutator defect {worst:.3e}"),
    )
}

/// The n = 1 and n = 2 bases written out as explicit Pauli products.
fn printed_blades(n: usize) -> Vec<(Vec<usize>, CMatrix)> {
    let (id, x, y, z) = (pauli::id(), pauli::x(), pauli::y(), pauli::z());
    let i = |m: CMatrix| m.scale(IM);
    if n == 1 {
        return vec![
            (vec![], id.clone()),
            (vec![0], x.clone()),
            (vec![1], y.clone()),
            (vec![0, 1], i(x.matmul(&y))),
        ];
    }
    let k = |a: &CMatrix, b: &CMatrix| a.kron(b);
    let (xy, xz, yz) = (x.matmul(&y), x.matmul(&z), y.matmul(&z));
    let xyz = xy.matmul(&z);
    vec![
        (vec![], k(&id, &id)),
        (vec![0], k(&id, &x)),
        (vec![1], k(&id, &y)),
        (vec![2], k(&x, &z)),
        (vec![3], k(&y, &z)),
        (vec![0, 1], i(k(&id, &xy))),
        (vec![0, 2], i(k(&x, &xz))),
        (vec![0, 3], i(k(&y, &xz))),
        (vec![1, 2], i(k(&x, &yz))),
        (vec![1, 3], i(k(&y, &yz))),
        (vec![2, 3], i(k(&xy, &id))),
        (vec![0, 1, 2], i(k(&x, &xyz))),
        (vec![0, 1, 3], i(k(&y, &xyz))),
        (vec![0, 2, 3], i(k(&xy, &x))),
        (vec![1, 2, 3], i(k(&xy, &y))),
        (vec![0, 1, 2, 3], k(&xy, &xy)),
    ]
}

fn blade_basis() -> Verdict {
    let mut herm = 0.0f64;
    let mut ranks = Vec::new();
    for n in 1..=3 {
        let basis = hermitian_basis(n).unwrap();
        let mats: Vec<CMatrix> = basis.blades().iter().map(Blade::dense).collect();
        herm = mats
            .iter()
            .fold(herm, |acc, m| acc.max(m.hermiticity_defect()));
        ranks.push((real_gram_rank(&mats).unwrap(), 1usize << (2 * n)));
    }
    let mut oracle = 0.0f64;
    for n in 1..=2 {
        for (indices, expected) in printed_blades(n) {
            let got = Blade::new(n, &indices).unwrap().dense();
            oracle = oracle.max(dist(&got, &expected));
        }
    }
    let full_rank = ranks.iter().all(|(r, d)| r == d);
    verdict(
        2,
        herm <= 1e-12 && full_rank && oracle <= 1e-12,
        format!("hermiticity {herm:.3e}, ranks {ranks:?}, explicit-table gap {oracle:.3e}"),
    )
}

fn omega_parity() -> Verdict {
    let counts: Vec<(usize, usize)> = (1..=2)
        .map(|n| (omega_count(n).unwrap(), omega_count_bruteforce(n).unwrap()))
        .collect();
    let pass = counts.iter().all(|(a, b)| a == b) && counts[0].0 == 3;
    verdict(3, pass, format!("(parity, brute force) = {counts:?}"))
}

fn pauli_reconstruction() -> Verdict {
    let mut worst = 0.0f64;
    for n in 1..=3 {
        for seed in 0..20 {
            let h = random_hermitian(1 << n, &mut rng_from_seed(seed));
            let coeffs = pauli_coefficients(&h).unwrap();
            worst = worst.max(dist(&pauli_reconstruct(n, &coeffs).unwrap(), &h));
        }
    }
    verdict(
        4,
        worst <= 1e-10,
        format!("max reconstruction error {worst:.3e}"),
    )
}

fn unitary_equivalence() -> Verdict {
    let mut worst = (0.0f64, 0.0f64);
    for n in 1..=3 {
        let config =
            PerceptronConfig::type_ii(n, Blade::generator(n, 0).unwrap(), Activation::Tanh, 0.1)
                .unwrap();
        for seed in 0..50 {
            let mut rng = rng_from_seed(seed);
            let x: Vec<f64> = (0..2 * n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let w: Vec<f64> = (0..2 * n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let u = random_unitary(1 << n, &mut rng);
            let r = type_equivalence(&config, &x, &w, &u).unwrap();
            worst = (
                worst.0.max(r.phi_difference),
                worst.1.max(r.state_difference),
            );
        }
    }
    verdict(
        5,
        worst.0 <= 1e-10 && worst.1 <= 1e-10,
        format!("max phi gap {:.3e}, max state gap {:.3e}", worst.0, worst.1),
    )
}

fn swap_test() -> Verdict {
    let mut circuit_gap = 0.0f64;
    for seed in 0..100 {
        let mut rng = rng_from_seed(seed);
        let n = 1 + (seed as usize % 3);
        let (psi, phi) = (random_state(n, &mut rng), random_state(n, &mut rng));
        let gap =
            (swap_test_circuit(&psi, &phi).unwrap() - swap_test_formula(&psi, &phi).unwrap()).abs();
        circuit_gap = circuit_gap.max(gap);
    }
    let shots = 100_000;
    let mut worst_ratio = 0.0f64;
    for seed in 0..5 {
        let mut rng = rng_from_seed(1000 + seed);
        let (psi, phi) = (random_state(2, &mut rng), random_state(2, &mut rng));
        let p = swap_test_formula(&psi, &phi).unwrap();
        let exact = inner(&psi, &phi).unwrap().norm();
        let sample = swap_test_sampled(&psi, &phi, shots, seed).unwrap();
        let tol = 4.0 * (p * (1.0 - p) / shots as f64).sqrt() * 2.0;
        worst_ratio = worst_ratio.max((sample.estimate.powi(2) - exact.powi(2)).abs() / tol);
    }
    verdict(
        6,
        circuit_gap <= 1e-10 && worst_ratio <= 1.0,
        format!("circuit gap {circuit_gap:.3e}, worst sampling error / tolerance {worst_ratio:.3}"),
    )
}

fn trotter() -> Verdict {
    // (n, L, seed); n = 1 has only three non-identity blades
    let instances = [(1, 2, 11), (1, 3, 12), (2, 2, 21), (2, 4, 22), (2, 6, 23)];
    let rs: Vec<u64> = (1..=1000).collect();
    let results: Vec<(bool, Option<f64>)> = instances
        .par_iter()
        .flat_map_iter(|&(n, l, seed)| {
            let terms = random_terms(n, l, &mut rng_from_seed(seed)).unwrap();
            let rs = &rs;
            [0.5, 1.0, 2.0].into_iter().map(move |t| {
                let reports = trotter_sweep(&terms, t, rs).unwrap();
                let bound_ok = reports.iter().all(|r| r.within_full_bound());
                let slope = (reports[0].omega > 0).then(|| {
                    let tail: Vec<_> = reports.iter().filter(|r| r.r >= 10).collect();
                    let xs: Vec<f64> = tail.iter().map(|r| r.r as f64).collect();
                    let ys: Vec<f64> = tail.iter().map(|r| r.measured_error).collect();
                    log_log_slope(&xs, &ys).unwrap()
                });
                (bound_ok, slope)
            })
        })
        .collect();
    let bound_ok = results.iter().all(|(b, _)| *b);
    let slopes: Vec<f64> = results.iter().filter_map(|(_, s)| *s).collect();
    let slope_ok = !slopes.is_empty() && slopes.iter().all(|s| (s + 1.0).abs() <= 0.1);
    let (lo, hi) = slopes
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
            (lo.min(s), hi.max(s))
        });
    verdict(
        7,
        bound_ok && slope_ok,
        format!(
            "full bound held on all {} sweeps: {bound_ok}; {} slopes in [{lo:.4}, {hi:.4}]",
            results.len(),
            slopes.len()
        ),
    )
}

struct GqftGridResult {
    unitarity: f64,
    factorization: f64,
    bound_ok: bool,
    worst_ratio: f64,
    zero_angle: f64,
    shared_unitarity: f64,
}

fn gqft_grid() -> GqftGridResult {
    let points: Vec<(usize, f64, u64)> = (1..=3)
        .flat_map(|n| {
            [0.01, 0.1, 0.5, 1.0, 2.0]
                .into_iter()
                .flat_map(move |theta| (0..5).map(move |seed| (n, theta, seed)))
        })
        .collect();
    let rows: Vec<_> = points
        .par_iter()
        .map(|&(n, theta, seed)| {
            let params =
                GqftParams::random(n, theta, AxisMode::Independent, &mut rng_from_seed(seed))
                    .unwrap();
            let report = distance_report(&params).unwrap();
            let zero = distance_report(&params.with_theta(0.0).unwrap()).unwrap();
            let shared =
                GqftParams::random(n, theta, AxisMode::Shared, &mut rng_from_seed(seed)).unwrap();
            let shared_defect = gqft_dense(&shared).unwrap().unitarity_defect();
            let dense = gqft_dense(&params).unwrap();
            let fact = (0..params.dim())
                .map(|j| {
                    vector_distance(&dense.column(j), &gqft_column_factored(&params, j).unwrap())
                })
                .fold(0.0f64, f64::max);
            (report, zero.distance_to_qft, shared_defect, fact)
        })
        .collect();
    let mut out = GqftGridResult {
        unitarity: 0.0,
        factorization: 0.0,
        bound_ok: true,
        worst_ratio: 0.0,
        zero_angle: 0.0,
        shared_unitarity: 0.0,
    };
    for (report, zero, shared, fact) in rows {
        out.unitarity = out.unitarity.max(report.unitarity_defect);
        out.factorization = out.factorization.max(fact);
        out.bound_ok &= report.within_bound();
        out.worst_ratio = out
            .worst_ratio
            .max(report.distance_to_qft / report.distance_bound);
        out.zero_angle = out.zero_angle.max(zero);
        out.shared_unitarity = out.shared_unitarity.max(shared);
    }
    out
}

fn resolution_of_identity() -> Verdict {
    let mut worst = 0.0f64;
    for seed in 0..50 {
        let mut rng = rng_from_seed(seed);
        let dim = 1 << (1 + seed as usize % 3);
        let r = random_unitary(dim, &mut rng);
        let mut sum = CMatrix::zeros(dim, dim);
        for k in 0..dim {
            let col = CMatrix::from_vec(dim, 1, r.column(k)).unwrap();
            sum = &sum + &col.matmul(&col.adjoint());
        }
        worst = worst.max(dist(&sum, &CMatrix::identity(dim)));
    }
    verdict(11, worst <= 1e-10, format!("max defect {worst:.3e}"))
}

fn lie_embedding() -> Verdict {
    let mut worst = 0.0f64;
    for n in 2..=3 {
        for seed in 0..50 {
            let mut rng = rng_from_seed(seed);
            let b: Vec<CMatrix> = (0..n).map(|_| random_su2_algebra(&mut rng)).collect();
            let c: Vec<CMatrix> = (0..n).map(|_| random_su2_algebra(&mut rng)).collect();
            worst = worst.max(lie_embedding_defect(&b, &c).unwrap());
        }
    }
    verdict(12, worst <= 1e-10, format!("max defect {worst:.3e}"))
}

fn two_level() -> Verdict {
    let (mut recon, mut circuit, mut oracle) = (0.0f64, 0.0f64, 0.0f64);
    for seed in 0..10 {
        let mut rng = rng_from_seed(seed);
        let (t1, t2) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let u = entangler_unitary(t1, t2).unwrap();
        let factors = two_level_decompose(&u).unwrap();
        recon = recon.max(dist(&two_level_product(4, &factors), &u));
        circuit = circuit.max(dist(
            &compile_decomposition(&factors, 2).unwrap().dense(),
            &u,
        ));
        let state = entangler_state(t1, t2).unwrap();
        let expected = entangler_oracle_state(t1, t2);
        oracle = oracle.max(vector_distance(state.amplitudes(), expected.amplitudes()));
    }
    let entropy = entanglement_entropy(&entangler_state(FRAC_PI_8, FRAC_PI_8).unwrap(), 1).unwrap();
    let pass = recon <= 1e-9 && circuit <= 1e-9 && (entropy - 1.0).abs() <= 1e-9 && oracle <= 1e-10;
    verdict(
        13,
        pass,
        format!("reconstruction {recon:.3e}, circuit {circuit:.3e}, entropy {entropy:.12}, oracle {oracle:.3e}"),
    )
}

fn training() -> Verdict {
    let config =
        PerceptronConfig::type_ii(1, Blade::generator(1, 0).unwrap(), Activation::Tanh, 0.1)
            .unwrap();
    let sample = TrainingSample {
        input_coeffs: vec![0.5, 0.25],
        target_angle: FRAC_PI_3,
    };
    // at convergence the fidelity sits at 1 - O(ulp) and may jitter by an ulp
    let rounding = 1e-12;
    let mut worst_drop = 0.0f64;
    let mut worst_final = f64::INFINITY;
    let mut worst_fd = 0.0f64;
    for seed in 0..5 {
        let mut rng = rng_from_seed(seed);
        let init: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..1.0)).collect();
        let records = train(&config, &sample, &init, 500, 1e-5).unwrap();
        for w in records.windows(2) {
            worst_drop = worst_drop.max(w[0].fidelity - w[1].fidelity);
        }
        let best = records.iter().map(|r| r.fidelity).fold(0.0f64, f64::max);
        worst_final = worst_final.min(best);

        for theta in [&init, &records[records.len() / 10].theta] {
            let coarse = fidelity_gradient(&config, &sample, theta, 1e-4).unwrap();
            let fine = fidelity_gradient(&config, &sample, theta, 5e-5).unwrap();
            for (a, b) in coarse.iter().zip(&fine) {
                worst_fd = worst_fd.max((a - b).abs() / b.abs().max(1e-8));
            }
        }
    }
    verdict(
        14,
        worst_drop <= rounding && worst_final >= 0.99 && worst_fd <= 1e-4,
        format!("largest per-step drop {worst_drop:.3e}, worst peak fidelity {worst_final:.6}, worst step-halving gap {worst_fd:.3e}"),
    )
}

fn data_rows(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_cliffq"))
        .args(args)
        .output()
        .expect("cliffq binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let rows: Vec<&str> = stdout.lines().filter(|l| !l.starts_with('#')).collect();
    (rows.join("\n"), out.status.code().unwrap_or(-1))
}

fn determinism() -> Verdict {
    let runs: &[&[&str]] = &[
        &["verify-basis", "--n", "2", "--seed", "7"],
        &["omega-count", "--n", "2", "--seed", "7"],
        &[
            "verify-gqft",
            "--n",
            "1,2",
            "--theta",
            "0.1,1",
            "--axis-sets",
            "2",
            "--seed",
            "7",
        ],
        &[
            "gqft-distance",
            "--n",
            "1,2",
            "--theta",
            "0.1,1",
            "--axis-sets",
            "2",
            "--seed",
            "7",
        ],
        &[
            "trotter-sweep",
            "--n",
            "2",
            "--num-terms",
            "3",
            "--r-max",
            "20",
            "--seed",
            "7",
        ],
        &[
            "swap-test",
            "--n",
            "2",
            "--shots",
            "1000,5000",
            "--pairs",
            "3",
            "--seed",
            "7",
        ],
        &["train-cqp", "--iterations", "30", "--seed", "7"],
        &["equivalence", "--n", "2", "--trials", "5", "--seed", "7"],
        &[
            "decompose",
            "--source",
            "random",
            "--dim",
            "4",
            "--seed",
            "7",
        ],
        &["decompose", "--seed", "7"],
    ];
    let mut mismatched = Vec::new();
    for args in runs {
        let (a, code_a) = data_rows(args);
        let (b, code_b) = data_rows(args);
        if a != b || code_a != code_b || a.lines().count() < 2 {
            mismatched.push(args[0]);
        }
    }
    verdict(
        15,
        mismatched.is_empty(),
        format!("{} runs compared, mismatched: {mismatched:?}", runs.len()),
    )
}

#[test]
fn acceptance_criteria() {
    let grid = gqft_grid();
    let mut verdicts = vec![
        clifford_relations(),
        blade_basis(),
        omega_parity(),
        pauli_reconstruction(),
        unitary_equivalence(),
        swap_test(),
        trotter(),
        verdict(
            8,
            grid.unitarity <= 1e-10,
            format!(
                "max unitarity defect {:.3e} with independent axes (shared axes: {:.3e})",
                grid.unitarity, grid.shared_unitarity
            ),
        ),
        verdict(
            9,
            grid.factorization <= 1e-10,
            format!("max column gap {:.3e}", grid.factorization),
        ),
        verdict(
            10,
            grid.bound_ok && grid.zero_angle <= 1e-12,
            format!(
                "bound held: {}, worst distance/bound {:.3e}, zero-angle distance {:.3e}",
                grid.bound_ok, grid.worst_ratio, grid.zero_angle
            ),
        ),
        resolution_of_identity(),
        lie_embedding(),
        two_level(),
        training(),
        determinism(),
    ];
    verdicts.sort_by_key(|v| v.id);

    // bypasses libtest output capture so the lines appear in every run
    let mut err = std::io::stderr().lock();
    writeln!(err).unwrap();
    for v in &verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        let note = if KNOWN_FAILURES.contains(&v.id) {
            " [known]"
        } else {
            ""
        };
        writeln!(err, "{tag} {:>2}{note}: {}", v.id, v.detail).unwrap();
    }

    let unexpected: Vec<u8> = verdicts
        .iter()
        .filter(|v| v.pass == KNOWN_FAILURES.contains(&v.id))
        .map(|v| v.id)
        .collect();
    assert!(
        unexpected.is_empty(),
        "criteria with unexpected outcome: {unexpected:?}"
    );
    // the failure is specific to independent axes
    assert!(grid.shared_unitarity <= 1e-10);
}
