//! First-order product formulas for Hamiltonians `H = Σ_j η_j B_j` over
//! Hermitian blades, with the measured spectral error and analytic bounds.

use rand::Rng;

use crate::clifford::{count_noncommuting, hermitian_basis, Blade, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::linalg::{expm_i, spectral_norm, CMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianTerm {
    coeff: f64,
    blade: Blade,
}

impl HamiltonianTerm {
    pub fn new(coeff: f64, blade: Blade) -> Result<Self> {
        if !coeff.is_finite() {
            return Err(Error::NonFinite("term coefficient"));
        }
        Ok(HamiltonianTerm { coeff, blade })
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn blade(&self) -> &Blade {
        &self.blade
    }
}

fn qubit_count(terms: &[HamiltonianTerm]) -> Result<Option<usize>> {
    let Some(first) = terms.first() else {
        return Ok(None);
    };
    let n = first.blade.n();
    if let Some(t) = terms.iter().find(|t| t.blade.n() != n) {
        return Err(Error::QubitMismatch(n, t.blade.n()));
    }
    if n > MAX_QUBITS {
        return Err(Error::UnsupportedQubits {
            n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    Ok(Some(n))
}

pub fn hamiltonian(terms: &[HamiltonianTerm]) -> Result<Option<CMatrix>> {
    let Some(n) = qubit_count(terms)? else {
        return Ok(None);
    };
    let dim = 1 << n;
    let h = terms.iter().fold(CMatrix::zeros(dim, dim), |acc, t| {
        &acc + &t.blade.dense().scale_re(t.coeff)
    });
    Ok(Some(h))
}

/// `exp(-i t H)`. An empty term list gives the 1x1 identity.
pub fn exact_unitary(terms: &[HamiltonianTerm], t: f64) -> Result<CMatrix> {
    match hamiltonian(terms)? {
        None => Ok(CMatrix::identity(1)),
        Some(h) => expm_i(&h, -t),
    }
}

/// `[Π_j exp(-i (t/r) η_j B_j)]^r`, factors in list order.
pub fn product_formula(terms: &[HamiltonianTerm], t: f64, r: u64) -> Result<CMatrix> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let Some(n) = qubit_count(terms)? else {
        return Ok(CMatrix::identity(1));
    };
    let step = t / r as f64;
    let mut one_step = CMatrix::identity(1 << n);
    for term in terms {
        let factor = expm_i(&term.blade.dense(), -step * term.coeff)?;
        one_step = one_step.matmul(&factor);
    }
    Ok(one_step.pow(r))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrotterReport {
    pub r: u64,
    pub t: f64,
    pub measured_error: f64,
    /// `(L Λ t)² / r`.
    pub bound_simple: f64,
    /// `bound_simple · exp(L Λ |t| / r)`.
    pub bound_full: f64,
    /// `Ω (Λ t)² / r + (2^{2n} |t|³ Λ)² / (3 r²) · exp(2^{2n} Λ |t| / r)`.
    pub bound_commutator: f64,
    pub omega: usize,
}

impl TrotterReport {
    pub fn within_full_bound(&self) -> bool {
        self.measured_error <= self.bound_full
    }

    /// True when the bound without the exponential factor is exceeded.
    pub fn simple_bound_violated(&self) -> bool {
        self.measured_error > self.bound_simple
    }
}

pub fn trotter_report(terms: &[HamiltonianTerm], t: f64, r: u64) -> Result<TrotterReport> {
    let exact = exact_unitary(terms, t)?;
    let product = product_formula(terms, t, r)?;
    report_from(terms, t, r, &exact, &product)
}

/// Reports for each `r` in `rs`, sharing the exact unitary across the sweep.
pub fn trotter_sweep(terms: &[HamiltonianTerm], t: f64, rs: &[u64]) -> Result<Vec<TrotterReport>> {
    let exact = exact_unitary(terms, t)?;
    rs.iter()
        .map(|&r| report_from(terms, t, r, &exact, &product_formula(terms, t, r)?))
        .collect()
}

fn report_from(
    terms: &[HamiltonianTerm],
    t: f64,
    r: u64,
    exact: &CMatrix,
    product: &CMatrix,
) -> Result<TrotterReport> {
    let measured_error = spectral_norm(&(exact - product))?;

    let n = qubit_count(terms)?.unwrap_or(0);
    let l = terms.len() as f64;
    let lambda = terms.iter().map(|t| t.coeff.abs()).fold(0.0, f64::max);
    let rf = r as f64;
    let bound_simple = (l * lambda * t).powi(2) / rf;
    let bound_full = bound_simple * (l * lambda * t.abs() / rf).exp();

    let blades: Vec<Blade> = terms.iter().map(|t| t.blade.clone()).collect();
    let omega = count_noncommuting(&blades);
    let basis_size = (1u64 << (2 * n)) as f64;
    let bound_commutator = omega as f64 * (lambda * t).powi(2) / rf
        + (basis_size * t.abs().powi(3) * lambda).powi(2) / (3.0 * rf * rf)
            * (basis_size * lambda * t.abs() / rf).exp();

    Ok(TrotterReport {
        r,
        t,
        measured_error,
        bound_simple,
        bound_full,
        bound_commutator,
        omega,
    })
}

/// `count` distinct non-identity blades with coefficients uniform in `[-1, 1)`.
pub fn random_terms(n: usize, count: usize, rng: &mut impl Rng) -> Result<Vec<HamiltonianTerm>> {
    let basis = hermitian_basis(n)?;
    let candidates: Vec<&Blade> = basis.non_identity().collect();
    if count > candidates.len() {
        return Err(Error::InvalidArgument(format!(
            "at most {} distinct terms for n = {n}",
            candidates.len()
        )));
    }
    let mut terms: Vec<HamiltonianTerm> = Vec::with_capacity(count);
    while terms.len() < count {
        let b = candidates[rng.random_range(0..candidates.len())];
        if terms.iter().any(|t| t.blade.indices() == b.indices()) {
            continue;
        }
        terms.push(HamiltonianTerm::new(
            rng.random_range(-1.0..1.0),
            b.clone(),
        )?);
    }
    Ok(terms)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "need two or more matching points".into(),
        ));
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidArgument(
            "log-log fit needs positive values".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius_norm, pauli, DEFAULT_TOL};
    use crate::random::rng_from_seed;

    fn term(coeff: f64, n: usize, idx: &[usize]) -> HamiltonianTerm {
        HamiltonianTerm::new(coeff, Blade::new(n, idx).unwrap()).unwrap()
    }

    // n = 1: {0} = X, {1} = Y, {0,1} = -Z.
    fn xy_terms() -> Vec<HamiltonianTerm> {
        vec![term(0.7, 1, &[0]), term(0.4, 1, &[1])]
    }

    fn seeded_instance(seed: u64) -> Vec<HamiltonianTerm> {
        random_terms(2, 4, &mut rng_from_seed(seed)).unwrap()
    }

    #[test]
    fn random_terms_are_distinct() {
        let terms = random_terms(1, 3, &mut rng_from_seed(0)).unwrap();
        for (k, a) in terms.iter().enumerate() {
            assert!(!a.blade().is_identity());
            assert!(terms[..k]
                .iter()
                .all(|b| b.blade().indices() != a.blade().indices()));
        }
        assert!(random_terms(1, 4, &mut rng_from_seed(0)).is_err());
    }

    #[test]
    fn term_rejects_non_finite() {
        let b = Blade::generator(1, 0).unwrap();
        assert!(HamiltonianTerm::new(f64::NAN, b.clone()).is_err());
        assert!(HamiltonianTerm::new(f64::INFINITY, b).is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_unitary(&[], 1.3).unwrap(), CMatrix::identity(1));
        let (eta, t) = (0.8, 1.7);
        let u = exact_unitary(&[term(eta, 1, &[0])], t).unwrap();
        let want = &CMatrix::identity(2).scale_re((eta * t).cos())
            - &pauli::x().scale(crate::linalg::I * (eta * t).sin());
        assert!(frobenius_norm(&(&u - &want)) < 1e-12);

        // X⊗I and I⊗Z commute
        let a = term(0.3, 2, &[2]);
        let b = term(-0.9, 2, &[0, 1]);
        let both = exact_unitary(&[a.clone(), b.clone()], 2.0).unwrap();
        let prod = exact_unitary(&[a], 2.0)
            .unwrap()
            .matmul(&exact_unitary(&[b], 2.0).unwrap());
        assert!(frobenius_norm(&(&both - &prod)) < 1e-12);
        assert!(both.is_unitary(DEFAULT_TOL));
    }

    #[test]
    fn mixed_qubit_counts_rejected() {
        let terms = vec![term(0.1, 1, &[0]), term(0.1, 2, &[0])];
        assert!(exact_unitary(&terms, 1.0).is_err());
        assert!(product_formula(&terms, 1.0, 3).is_err());
    }

    #[test]
    fn r_zero_rejected() {
        assert!(product_formula(&xy_terms(), 1.0, 0).is_err());
    }

    #[test]
    fn product_formula_exact_for_single_and_commuting_terms() {
        let single = vec![term(1.3, 2, &[1, 2])];
        let commuting = vec![
            term(0.3, 2, &[2, 3]),
            term(-0.9, 2, &[0, 1]),
            term(0.5, 2, &[0, 1, 2, 3]),
        ];
        for terms in [single, commuting] {
            let exact = exact_unitary(&terms, 0.9).unwrap();
            for r in [1, 2, 7, 50] {
                let v = product_formula(&terms, 0.9, r).unwrap();
                let d = frobenius_norm(&(&exact - &v));
                assert!(d < 1e-10, "r={r} d={d}");
                assert!(v.is_unitary(DEFAULT_TOL));
            }
            let rep = trotter_report(&terms, 0.9, 5).unwrap();
            assert_eq!(rep.omega, 0);
            assert!(rep.measured_error < 1e-10);
            assert!(rep.measured_error <= rep.bound_simple);
            assert!(rep.measured_error <= rep.bound_commutator);
        }
    }

    #[test]
    fn first_order_ratio_between_ten_and_hundred_steps() {
        let e10 = trotter_report(&xy_terms(), 1.0, 10).unwrap().measured_error;
        let e100 = trotter_report(&xy_terms(), 1.0, 100)
            .unwrap()
            .measured_error;
        let ratio = e10 / e100;
        assert!((8.0..=12.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn measured_error_within_full_bound() {
        for r in 1..=100 {
            let rep = trotter_report(&xy_terms(), 1.0, r).unwrap();
            assert!(rep.within_full_bound(), "r={r}: {rep:?}");
            assert_eq!(rep.omega, 1);
            let ratio = rep.bound_full / rep.bound_simple;
            assert!((ratio - (2.0 * 0.7 / r as f64).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn slope_is_minus_one_on_seeded_instance() {
        let terms = seeded_instance(5);
        let rs: Vec<u64> = (0..=20)
            .map(|k| (10.0 * 100f64.powf(k as f64 / 20.0)).round() as u64)
            .collect();
        let errs: Vec<f64> = rs
            .iter()
            .map(|&r| trotter_report(&terms, 1.0, r).unwrap().measured_error)
            .collect();
        let xs: Vec<f64> = rs.iter().map(|&r| r as f64).collect();
        let slope = log_log_slope(&xs, &errs).unwrap();
        assert!((slope + 1.0).abs() <= 0.1, "slope {slope}");
    }

    #[test]
    fn error_vanishes_with_steps() {
        for seed in 0..5 {
            let terms = seeded_instance(seed);
            let a = trotter_report(&terms, 1.0, 10).unwrap();
            if a.omega == 0 {
                continue;
            }
            let b = trotter_report(&terms, 1.0, 1000).unwrap();
            assert!(b.measured_error < a.measured_error);
        }
    }

    #[test]
    fn reordering_changes_error_by_at_most_twice_simple_bound() {
        for seed in 0..4 {
            let terms = seeded_instance(seed);
            let mut reversed = terms.clone();
            reversed.reverse();
            for r in [1, 3, 10] {
                let a = trotter_report(&terms, 0.8, r).unwrap();
                let b = trotter_report(&reversed, 0.8, r).unwrap();
                assert!((a.measured_error - b.measured_error).abs() <= 2.0 * a.bound_simple);
            }
        }
    }

    #[test]
    fn factors_are_unitary() {
        for t in seeded_instance(9) {
            let f = expm_i(&t.blade.dense(), -0.37 * t.coeff).unwrap();
            assert!(f.is_unitary(DEFAULT_TOL));
        }
    }

    #[test]
    fn sweep_matches_individual_reports() {
        let terms = seeded_instance(2);
        let sweep = trotter_sweep(&terms, 0.5, &[1, 4, 9]).unwrap();
        for rep in sweep {
            assert_eq!(rep, trotter_report(&terms, 0.5, rep.r).unwrap());
        }
    }

    #[test]
    fn slope_fit_on_exact_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-1.5)).collect();
        assert!((log_log_slope(&xs, &ys).unwrap() + 1.5).abs() < 1e-12);
        assert!(log_log_slope(&[1.0], &[1.0]).is_err());
        assert!(log_log_slope(&[1.0, 2.0], &[0.0, 1.0]).is_err());
    }
}
