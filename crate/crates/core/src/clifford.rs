//! Symbolic Pauli-word and Clifford-blade algebra.
//!
//! The generators of Cl(2n) are represented as Pauli words: generator `2k`
//! carries an `X` and generator `2k + 1` a `Y` on qubit `n - k` (1-based,
//! qubit 1 most significant), followed by `k` trailing `Z` letters. Blades
//! are products of distinct generators kept as index sets, with a left
//! factor ω ∈ {1, i} chosen from the reversion sign so that every blade is
//! Hermitian. Products are computed symbolically, so phases stay exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, frobenius_norm, hermitian_eigen, kron_all, pauli, CMatrix, C64};

/// Largest qubit count accepted by the basis constructors.
pub const MAX_QUBITS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMatrix {
        match self {
            Pauli::I => pauli::id(),
            Pauli::X => pauli::x(),
            Pauli::Y => pauli::y(),
            Pauli::Z => pauli::z(),
        }
    }

    /// Single-letter product `self * rhs = i^phase * letter`.
    pub fn mul(self, rhs: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, rhs) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `i^phase · P_1 ⊗ … ⊗ P_n`, letter 0 acting on qubit 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
    phase: u8,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>, phase: u8) -> Self {
        PauliString {
            letters,
            phase: phase % 4,
        }
    }

    pub fn identity(n: usize) -> Self {
        PauliString::new(vec![Pauli::I; n], 0)
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn phase_power(&self) -> u8 {
        self.phase
    }

    pub fn phase(&self) -> C64 {
        match self.phase {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }

    pub fn with_phase(&self, extra: u8) -> PauliString {
        PauliString::new(self.letters.clone(), self.phase + extra)
    }

    /// Pauli words are Hermitian exactly when the global phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        clashes % 2 == 0
    }

    pub fn dense(&self) -> CMatrix {
        let mats: Vec<CMatrix> = self.letters.iter().map(|p| p.matrix()).collect();
        kron_all(&mats).scale(self.phase())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}")?;
        for p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

/// Symbolic product with phase tracking.
pub fn pauli_mul(p: &PauliString, q: &PauliString) -> Result<PauliString> {
    if p.n() != q.n() {
        return Err(Error::QubitMismatch(p.n(), q.n()));
    }
    let mut phase = p.phase + q.phase;
    let letters = p
        .letters
        .iter()
        .zip(&q.letters)
        .map(|(&a, &b)| {
            let (ph, l) = a.mul(b);
            phase += ph;
            l
        })
        .collect();
    Ok(PauliString::new(letters, phase))
}

/// Generator `a` of Cl(2n) as a Pauli word.
pub fn gamma(n: usize, a: usize) -> Result<PauliString> {
    if a >= 2 * n {
        return Err(Error::IndexOutOfRange {
            what: "generator",
            index: a,
            limit: 2 * n,
        });
    }
    let k = a / 2;
    let mut letters = vec![Pauli::I; n];
    let pos = n - 1 - k;
    letters[pos] = if a.is_multiple_of(2) {
        Pauli::X
    } else {
        Pauli::Y
    };
    for l in letters.iter_mut().skip(pos + 1) {
        *l = Pauli::Z;
    }
    Ok(PauliString::new(letters, 0))
}

/// Hermitizing left factor of a blade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Omega {
    One,
    I,
}

impl Omega {
    /// `i` exactly when reversion flips the sign of a grade-`grade` product.
    pub fn for_grade(grade: usize) -> Omega {
        if grade < 2 || (grade * (grade - 1) / 2).is_multiple_of(2) {
            Omega::One
        } else {
            Omega::I
        }
    }

    pub fn phase_power(self) -> u8 {
        match self {
            Omega::One => 0,
            Omega::I => 1,
        }
    }

    pub fn value(self) -> C64 {
        match self {
            Omega::One => C64::new(1.0, 0.0),
            Omega::I => C64::new(0.0, 1.0),
        }
    }
}

/// `ω Γ_{j1} ⋯ Γ_{jζ}` for a strictly increasing index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blade {
    n: usize,
    indices: Vec<usize>,
    omega: Omega,
    word: PauliString,
}

impl Blade {
    pub fn new(n: usize, indices: &[usize]) -> Result<Blade> {
        if n == 0 {
            return Err(Error::UnsupportedQubits {
                n,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        if let Some(&bad) = indices.iter().find(|&&j| j >= 2 * n) {
            return Err(Error::IndexOutOfRange {
                what: "generator",
                index: bad,
                limit: 2 * n,
            });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "blade indices must be strictly increasing, got {indices:?}"
            )));
        }
        let omega = Omega::for_grade(indices.len());
        let mut word = PauliString::identity(n);
        for &j in indices {
            word = pauli_mul(&word, &gamma(n, j)?)?;
        }
        let word = word.with_phase(omega.phase_power());
        if !word.is_hermitian() {
            return Err(Error::NonHermitianBlade {
                indices: indices.to_vec(),
            });
        }
        Ok(Blade {
            n,
            indices: indices.to_vec(),
            omega,
            word,
        })
    }

    pub fn generator(n: usize, a: usize) -> Result<Blade> {
        Blade::new(n, &[a])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn grade(&self) -> usize {
        self.indices.len()
    }

    pub fn omega(&self) -> Omega {
        self.omega
    }

    pub fn is_identity(&self) -> bool {
        self.indices.is_empty()
    }

    /// The blade as a signed Pauli word (ω included).
    pub fn word(&self) -> &PauliString {
        &self.word
    }

    pub fn dense(&self) -> CMatrix {
        self.word.dense()
    }

    /// `⟨0…0| B |0…0⟩`, which is ±1 for diagonal words and 0 otherwise.
    pub fn vacuum_expectation(&self) -> f64 {
        if self
            .word
            .letters()
            .iter()
            .all(|&p| p == Pauli::I || p == Pauli::Z)
        {
            self.word.phase().re
        } else {
            0.0
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}={}", self.word)
    }
}

pub fn blade_dense(b: &Blade) -> CMatrix {
    b.dense()
}

/// All `4^n` blades, grade-major and lexicographic within a grade.
#[derive(Debug, Clone)]
pub struct BladeBasis {
    n: usize,
    blades: Vec<Blade>,
}

impl BladeBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blades(&self) -> &[Blade] {
        &self.blades
    }

    pub fn len(&self) -> usize {
        self.blades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn non_identity(&self) -> impl Iterator<Item = &Blade> {
        self.blades.iter().filter(|b| !b.is_identity())
    }
}

fn check_qubits(n: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedQubits { n, min: 1, max })
    }
}

/// Index subsets of `{0..m}` of size `k`, lexicographic.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < m - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn hermitian_basis(n: usize) -> Result<BladeBasis> {
    check_qubits(n, MAX_QUBITS)?;
    let mut blades = Vec::with_capacity(1 << (2 * n));
    for grade in 0..=2 * n {
        for subset in combinations(2 * n, grade) {
            blades.push(Blade::new(n, &subset)?);
        }
    }
    Ok(BladeBasis { n, blades })
}

/// Parity rule: the product of two generator sets anticommutes iff the
/// number of generator swaps `|J1||J2| - |J1 ∩ J2|` is odd.
pub fn anticommutes(j1: &[usize], j2: &[usize]) -> bool {
    let shared = j1.iter().filter(|a| j2.contains(a)).count();
    (j1.len() * j2.len() - shared) % 2 == 1
}

/// The grade-class form of the counting rule: for (even; even) and
/// (odd; even) pairs an odd number of shared generators, for (odd; odd) an
/// even number. Returns whether this class rule predicts anticommutation.
pub fn grade_class_predicts_anticommutation(j1: &[usize], j2: &[usize]) -> bool {
    let shared = j1.iter().filter(|a| j2.contains(a)).count();
    let (p_odd, q_odd) = (j1.len() % 2 == 1, j2.len() % 2 == 1);
    if p_odd && q_odd {
        shared % 2 == 0
    } else {
        shared % 2 == 1
    }
}

/// Unordered non-commuting pairs in the Cl(2n) blade basis, by the parity rule.
pub fn omega_count(n: usize) -> Result<usize> {
    check_qubits(n, 3)?;
    let basis = hermitian_basis(n)?;
    Ok(count_noncommuting(basis.blades()))
}

/// Non-commuting unordered pairs among an arbitrary list of blades.
pub fn count_noncommuting(blades: &[Blade]) -> usize {
    let mut count = 0;
    for (a, ba) in blades.iter().enumerate() {
        for bb in &blades[a + 1..] {
            if anticommutes(ba.indices(), bb.indices()) {
                count += 1;
            }
        }
    }
    count
}

/// Same count by dense commutators; the independent check on [`omega_count`].
pub fn omega_count_bruteforce(n: usize) -> Result<usize> {
    check_qubits(n, 3)?;
    let basis = hermitian_basis(n)?;
    let dense: Vec<CMatrix> = basis.blades().iter().map(Blade::dense).collect();
    let mut count = 0;
    for a in 0..dense.len() {
        for b in (a + 1)..dense.len() {
            if frobenius_norm(&dense[a].commutator(&dense[b])) > 1e-12 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `{I, X, Y, Z}^{⊗n}`, letter order I < X < Y < Z with qubit 1 most significant.
pub fn pauli_word_basis(n: usize) -> Result<Vec<PauliString>> {
    check_qubits(n, MAX_QUBITS)?;
    let total = 1usize << (2 * n);
    Ok((0..total)
        .map(|idx| {
            let letters = (0..n)
                .map(|q| Pauli::ALL[(idx >> (2 * (n - 1 - q))) & 3])
                .collect();
            PauliString::new(letters, 0)
        })
        .collect())
}

/// Real expansion coefficients `Tr(P H) / 2^n` of `H` in the Pauli-word basis.
pub fn pauli_coefficients(h: &CMatrix) -> Result<Vec<f64>> {
    h.require_hermitian(linalg::DEFAULT_TOL)?;
    let dim = h.rows();
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::ShapeMismatch {
            expected: "2^n x 2^n".into(),
            got: format!("{dim}x{dim}"),
        });
    }
    let n = dim.trailing_zeros() as usize;
    let words = pauli_word_basis(n)?;
    Ok(words
        .iter()
        .map(|w| w.dense().matmul(h).trace().re / dim as f64)
        .collect())
}

pub fn pauli_reconstruct(n: usize, coeffs: &[f64]) -> Result<CMatrix> {
    let words = pauli_word_basis(n)?;
    if coeffs.len() != words.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} coefficients", words.len()),
            got: format!("{}", coeffs.len()),
        });
    }
    let dim = 1 << n;
    Ok(words
        .iter()
        .zip(coeffs)
        .fold(CMatrix::zeros(dim, dim), |acc, (w, &c)| {
            &acc + &w.dense().scale_re(c)
        }))
}

/// Rank of the real Gram matrix `Re Tr(A_a^dag A_b)` of a matrix family.
pub fn real_gram_rank(mats: &[CMatrix]) -> Result<usize> {
    let m = mats.len();
    let gram = CMatrix::from_fn(m, m, |a, b| {
        C64::new(mats[a].adjoint().matmul(&mats[b]).trace().re, 0.0)
    });
    let eig = hermitian_eigen(&gram)?;
    let top = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()));
    Ok(eig.rank(1e-9 * top.max(1.0)))
}

/// `ψ(B) = Σ_l I ⊗ … ⊗ B_l ⊗ … ⊗ I` for 2x2 components `B_l`.
pub fn psi_embedding(components: &[CMatrix]) -> Result<CMatrix> {
    let n = components.len();
    if n == 0 {
        return Err(Error::InvalidArgument("no components".into()));
    }
    for b in components {
        if b.rows() != 2 || b.cols() != 2 {
            return Err(Error::ShapeMismatch {
                expected: "2x2".into(),
                got: format!("{}x{}", b.rows(), b.cols()),
            });
        }
    }
    let dim = 1 << n;
    let mut out = CMatrix::zeros(dim, dim);
    for (l, b) in components.iter().enumerate() {
        let factors: Vec<CMatrix> = (0..n)
            .map(|q| if q == l { b.clone() } else { pauli::id() })
            .collect();
        out = &out + &kron_all(&factors);
    }
    Ok(out)
}

/// `||[ψ(B), ψ(C)] - ψ([B_1, C_1], …, [B_n, C_n])||_F`.
pub fn lie_embedding_defect(b: &[CMatrix], c: &[CMatrix]) -> Result<f64> {
    if b.len() != c.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} components", b.len()),
            got: format!("{} components", c.len()),
        });
    }
    let lhs = psi_embedding(b)?.commutator(&psi_embedding(c)?);
    let brackets: Vec<CMatrix> = b.iter().zip(c).map(|(x, y)| x.commutator(y)).collect();
    let rhs = psi_embedding(&brackets)?;
    Ok(frobenius_norm(&(&lhs - &rhs)))
}

pub fn lie_embedding_check(b: &[CMatrix], c: &[CMatrix]) -> Result<bool> {
    Ok(lie_embedding_defect(b, c)? <= linalg::DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I as IM, ONE, ZERO};

    fn letters(s: &str) -> Vec<Pauli> {
        s.chars()
            .map(|c| match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => panic!("bad letter"),
            })
            .collect()
    }

    fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
        frobenius_norm(&(a - b))
    }

    #[test]
    fn generators_match_examples() {
        assert_eq!(gamma(1, 0).unwrap().letters(), letters("X"));
        assert_eq!(gamma(1, 1).unwrap().letters(), letters("Y"));
        assert_eq!(gamma(2, 0).unwrap().letters(), letters("IX"));
        assert_eq!(gamma(2, 1).unwrap().letters(), letters("IY"));
        assert_eq!(gamma(2, 2).unwrap().letters(), letters("XZ"));
        assert_eq!(gamma(2, 3).unwrap().letters(), letters("YZ"));
        assert_eq!(gamma(3, 4).unwrap().letters(), letters("XZZ"));
        assert!(matches!(gamma(2, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn single_letter_products() {
        let x = PauliString::new(letters("X"), 0);
        let y = PauliString::new(letters("Y"), 0);
        let xy = pauli_mul(&x, &y).unwrap();
        assert_eq!(xy.letters(), letters("Z"));
        assert_eq!(xy.phase_power(), 1);
        let xx = pauli_mul(&x, &x).unwrap();
        assert_eq!(xx.letters(), letters("I"));
        assert_eq!(xx.phase_power(), 0);
    }

    #[test]
    fn symbolic_product_matches_dense() {
        let words = pauli_word_basis(2).unwrap();
        for p in &words {
            for q in &words {
                for ph in 0..4 {
                    let p = p.with_phase(ph);
                    let prod = pauli_mul(&p, q).unwrap();
                    assert!(dist(&prod.dense(), &p.dense().matmul(&q.dense())) == 0.0);
                }
            }
        }
        let g0 = gamma(2, 0).unwrap();
        let g1 = gamma(2, 1).unwrap();
        let prod = pauli_mul(&g0, &g1).unwrap();
        assert_eq!(dist(&prod.dense(), &g0.dense().matmul(&g1.dense())), 0.0);
        assert!(pauli_mul(&g0, &gamma(1, 0).unwrap()).is_err());
    }

    #[test]
    fn cl2_basis_matches_example_one() {
        let basis = hermitian_basis(1).unwrap();
        let dense: Vec<CMatrix> = basis.blades().iter().map(Blade::dense).collect();
        assert_eq!(dense[0], pauli::id());
        assert_eq!(dense[1], pauli::x());
        assert_eq!(dense[2], pauli::y());
        // i σx σy = -σz
        let want = pauli::x().matmul(&pauli::y()).scale(IM);
        assert_eq!(dense[3], want);
        assert_eq!(dense[3], pauli::z().scale(-ONE));
        assert_eq!(basis.blades()[3].omega(), Omega::I);
    }

    #[test]
    fn cl4_basis_matches_example_two() {
        let (id, x, y, z) = (pauli::id(), pauli::x(), pauli::y(), pauli::z());
        let xy = x.matmul(&y);
        let xz = x.matmul(&z);
        let yz = y.matmul(&z);
        let xyz = xy.matmul(&z);
        let i = |m: CMatrix| m.scale(IM);
        let expected: Vec<(Vec<usize>, CMatrix)> = vec![
            (vec![], CMatrix::identity(4)),
            (vec![0], id.kron(&x)),
            (vec![1], id.kron(&y)),
            (vec![2], x.kron(&z)),
            (vec![3], y.kron(&z)),
            (vec![0, 1], i(id.kron(&xy))),
            (vec![0, 2], i(x.kron(&xz))),
            (vec![0, 3], i(y.kron(&xz))),
            (vec![1, 2], i(x.kron(&yz))),
            (vec![1, 3], i(y.kron(&yz))),
            (vec![2, 3], i(xy.kron(&id))),
            (vec![0, 1, 2], i(x.kron(&xyz))),
            // printed under the label iΓ0Γ2Γ3; the matrix is iΓ0Γ1Γ3
            (vec![0, 1, 3], i(y.kron(&xyz))),
            (vec![1, 2, 3], i(xy.kron(&y))),
            (vec![0, 1, 2, 3], xy.kron(&xy)),
        ];
        let basis = hermitian_basis(2).unwrap();
        for (idx, want) in &expected {
            let blade = basis
                .blades()
                .iter()
                .find(|b| b.indices() == idx.as_slice())
                .unwrap();
            assert!(dist(&blade.dense(), want) < 1e-15, "blade {idx:?}");
        }
    }

    #[test]
    fn example_two_mislabelled_trivector() {
        // iΓ0Γ2Γ3 = i(σxσy ⊗ σx), absent from the printed list
        let b = Blade::new(2, &[0, 2, 3]).unwrap();
        assert_eq!(b.omega(), Omega::I);
        let want = pauli::x().matmul(&pauli::y()).kron(&pauli::x()).scale(IM);
        assert!(dist(&b.dense(), &want) < 1e-15);
    }

    #[test]
    fn omega_rule_by_grade() {
        let want = [
            Omega::One,
            Omega::One,
            Omega::I,
            Omega::I,
            Omega::One,
            Omega::One,
            Omega::I,
            Omega::I,
            Omega::One,
        ];
        for (g, w) in want.iter().enumerate() {
            assert_eq!(Omega::for_grade(g), *w, "grade {g}");
        }
    }

    #[test]
    fn blade_validation() {
        assert!(Blade::new(2, &[1, 0]).is_err());
        assert!(Blade::new(2, &[0, 0]).is_err());
        assert!(Blade::new(2, &[4]).is_err());
        assert!(Blade::new(0, &[]).is_err());
        assert!(Blade::new(1, &[]).unwrap().dense() == CMatrix::identity(2));
    }

    #[test]
    fn basis_size_ordering_and_orthogonality() {
        for n in 1..=3 {
            let basis = hermitian_basis(n).unwrap();
            assert_eq!(basis.len(), 1 << (2 * n));
            assert!(basis.blades()[0].is_identity());
            for w in basis.blades().windows(2) {
                let (a, b) = (w[0].indices(), w[1].indices());
                assert!(a.len() < b.len() || (a.len() == b.len() && a < b));
            }
            let dense: Vec<CMatrix> = basis.blades().iter().map(Blade::dense).collect();
            let dim = (1 << n) as f64;
            for a in 0..dense.len() {
                assert!(dense[a].is_hermitian(1e-12));
                for b in 0..dense.len() {
                    let tr = dense[a].matmul(&dense[b]).trace();
                    let want = if a == b { dim } else { 0.0 };
                    assert!((tr - C64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
        assert!(hermitian_basis(0).is_err());
        assert!(hermitian_basis(5).is_err());
    }

    #[test]
    fn gram_rank_of_basis() {
        let basis = hermitian_basis(2).unwrap();
        let dense: Vec<CMatrix> = basis.blades().iter().map(Blade::dense).collect();
        assert_eq!(real_gram_rank(&dense).unwrap(), 16);
        let mut dup = dense.clone();
        dup[3] = dup[2].scale_re(2.0);
        assert_eq!(real_gram_rank(&dup).unwrap(), 15);
    }

    #[test]
    fn anticommutation_examples() {
        assert!(anticommutes(&[0], &[1]));
        assert!(!anticommutes(&[0], &[0]));
        assert!(anticommutes(&[0, 1], &[1, 2]));
        let a = Blade::new(2, &[0, 1]).unwrap().dense();
        let b = Blade::new(2, &[1, 2]).unwrap().dense();
        assert!(frobenius_norm(&a.anticommutator(&b)) < 1e-14);
    }

    #[test]
    fn parity_rule_agrees_with_dense_test() {
        for n in 1..=2 {
            let basis = hermitian_basis(n).unwrap();
            for a in basis.blades() {
                for b in basis.blades() {
                    let anti = frobenius_norm(&a.dense().anticommutator(&b.dense())) < 1e-12;
                    assert_eq!(anticommutes(a.indices(), b.indices()), anti);
                    assert_eq!(a.word().commutes_with(b.word()), !anti);
                    assert_eq!(
                        grade_class_predicts_anticommutation(a.indices(), b.indices()),
                        anti
                    );
                }
            }
        }
    }

    #[test]
    fn omega_counts() {
        assert_eq!(omega_count(1).unwrap(), 3);
        assert_eq!(omega_count_bruteforce(1).unwrap(), 3);
        assert_eq!(omega_count(2).unwrap(), omega_count_bruteforce(2).unwrap());
        // each non-identity Pauli word anticommutes with half of all words
        for n in 1..=3 {
            let d = 1usize << (2 * n);
            assert_eq!(omega_count(n).unwrap(), (d - 1) * d / 4);
        }
        assert!(omega_count(4).is_err());
    }

    #[test]
    fn identity_blade_never_counted() {
        let basis = hermitian_basis(2).unwrap();
        let id = &basis.blades()[0];
        assert!(basis
            .blades()
            .iter()
            .all(|b| !anticommutes(id.indices(), b.indices())));
    }

    #[test]
    fn generator_clifford_relations() {
        for n in 1..=4 {
            let id = CMatrix::identity(1 << n);
            for a in 0..2 * n {
                let ga = Blade::generator(n, a).unwrap().dense();
                for b in 0..2 * n {
                    let gb = Blade::generator(n, b).unwrap().dense();
                    let want = if a == b {
                        id.scale_re(2.0)
                    } else {
                        CMatrix::zeros(1 << n, 1 << n)
                    };
                    assert!(dist(&ga.anticommutator(&gb), &want) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn pauli_words() {
        let one = pauli_word_basis(1).unwrap();
        let got: Vec<Pauli> = one.iter().map(|w| w.letters()[0]).collect();
        assert_eq!(got, Pauli::ALL.to_vec());
        let two = pauli_word_basis(2).unwrap();
        assert_eq!(two.len(), 16);
        let dense: Vec<CMatrix> = two.iter().map(PauliString::dense).collect();
        assert_eq!(real_gram_rank(&dense).unwrap(), 16);
        for d in &dense {
            assert!(dist(&d.matmul(d), &CMatrix::identity(4)) < 1e-15);
        }
    }

    #[test]
    fn vacuum_expectation_values() {
        assert_eq!(Blade::new(1, &[0, 1]).unwrap().vacuum_expectation(), -1.0);
        assert_eq!(Blade::new(1, &[0]).unwrap().vacuum_expectation(), 0.0);
        assert_eq!(Blade::new(2, &[]).unwrap().vacuum_expectation(), 1.0);
    }

    #[test]
    fn lie_embedding_trivial_cases() {
        let b = vec![pauli::x().scale(IM), pauli::z().scale(IM)];
        assert!(lie_embedding_check(&b, &b).unwrap());
        let one_b = vec![pauli::y().scale(IM)];
        let one_c = vec![pauli::x().scale(IM)];
        assert!(lie_embedding_check(&one_b, &one_c).unwrap());
        assert!(lie_embedding_check(&b, &one_c).is_err());
        let bad = vec![CMatrix::identity(4)];
        assert!(psi_embedding(&bad).is_err());
    }

    #[test]
    fn display_formats() {
        let w = PauliString::new(letters("XZ"), 3);
        assert_eq!(w.to_string(), "-iXZ");
        let b = Blade::new(1, &[0, 1]).unwrap();
        assert_eq!(b.to_string(), "{0,1}=-Z");
        let _ = (ZERO, ONE);
    }
}
