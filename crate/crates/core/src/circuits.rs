//! Two-level decomposition of small unitaries and compilation of two-level
//! factors into controlled single-qubit gates and multi-controlled NOTs.
//!
//! Qubit `q` (0-based) is bit `n - 1 - q` of a basis index, so qubit 0 is
//! the most significant. Netlists print qubits 1-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{expm_i, pauli, CMatrix, C64, DEFAULT_TOL, ONE, ZERO};
use crate::simulator::StateVector;

pub const MAX_DIM: usize = 16;
const ZERO_TOL: f64 = 1e-14;

/// `exp[i(θ₁ σx⊗σy + θ₂ σy⊗σx)]`.
pub fn entangler_unitary(theta1: f64, theta2: f64) -> Result<CMatrix> {
    let h = &pauli::x().kron(&pauli::y()).scale_re(theta1)
        + &pauli::y().kron(&pauli::x()).scale_re(theta2);
    expm_i(&h, 1.0)
}

/// `U(θ₁, θ₂)|00⟩`.
pub fn entangler_state(theta1: f64, theta2: f64) -> Result<StateVector> {
    StateVector::zero(2).apply(&entangler_unitary(theta1, theta2)?)
}

/// `cos(θ₁+θ₂)|00⟩ − sin(θ₁+θ₂)|11⟩`.
pub fn entangler_oracle_state(theta1: f64, theta2: f64) -> StateVector {
    let s = theta1 + theta2;
    let amps = vec![ONE * s.cos(), ZERO, ZERO, ONE * -s.sin()];
    StateVector::new(2, amps).expect("unit norm")
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoLevelGate {
    dim: usize,
    i: usize,
    j: usize,
    /// Rows and columns ordered `(i, j)`.
    block: CMatrix,
}

impl TwoLevelGate {
    pub fn new(dim: usize, i: usize, j: usize, block: CMatrix) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidArgument(format!(
                "indices must differ, got {i} twice"
            )));
        }
        for idx in [i, j] {
            if idx >= dim {
                return Err(Error::IndexOutOfRange {
                    what: "two-level index",
                    index: idx,
                    limit: dim,
                });
            }
        }
        if block.rows() != 2 || block.cols() != 2 {
            return Err(Error::ShapeMismatch {
                expected: "2x2".into(),
                got: format!("{}x{}", block.rows(), block.cols()),
            });
        }
        block.require_unitary(DEFAULT_TOL)?;
        Ok(TwoLevelGate { dim, i, j, block })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn block(&self) -> &CMatrix {
        &self.block
    }

    pub fn embed(&self) -> CMatrix {
        let mut m = CMatrix::identity(self.dim);
        let idx = [self.i, self.j];
        for (a, &ra) in idx.iter().enumerate() {
            for (b, &cb) in idx.iter().enumerate() {
                m[(ra, cb)] = self.block[(a, b)];
            }
        }
        m
    }

    pub fn adjoint(&self) -> TwoLevelGate {
        TwoLevelGate {
            dim: self.dim,
            i: self.i,
            j: self.j,
            block: self.block.adjoint(),
        }
    }

    fn touches(&self, k: usize) -> bool {
        self.i == k || self.j == k
    }

    fn is_identity(&self) -> bool {
        (0..2).all(|a| {
            (0..2)
                .all(|b| (self.block[(a, b)] - if a == b { ONE } else { ZERO }).norm() <= ZERO_TOL)
        })
    }

    /// `Some((k, p))` if the gate is `diag` with a single non-unit entry `p` at index `k`.
    fn single_phase(&self) -> Option<(usize, C64)> {
        let b = &self.block;
        if b[(0, 1)].norm() > ZERO_TOL || b[(1, 0)].norm() > ZERO_TOL {
            return None;
        }
        let off0 = (b[(0, 0)] - ONE).norm() > ZERO_TOL;
        let off1 = (b[(1, 1)] - ONE).norm() > ZERO_TOL;
        match (off0, off1) {
            (true, false) => Some((self.i, b[(0, 0)])),
            (false, true) => Some((self.j, b[(1, 1)])),
            _ => None,
        }
    }

    /// `self · diag(…, p at index k, …)`, with `k` one of the gate's indices.
    fn absorb_phase_right(&mut self, k: usize, p: C64) {
        let col = if k == self.i { 0 } else { 1 };
        for row in 0..2 {
            self.block[(row, col)] *= p;
        }
    }
}

pub fn two_level_product(dim: usize, factors: &[TwoLevelGate]) -> CMatrix {
    factors
        .iter()
        .fold(CMatrix::identity(dim), |acc, g| acc.matmul(&g.embed()))
}

fn left_apply(m: &mut CMatrix, i: usize, j: usize, g: &CMatrix) {
    for c in 0..m.cols() {
        let (a, b) = (m[(i, c)], m[(j, c)]);
        m[(i, c)] = g[(0, 0)] * a + g[(0, 1)] * b;
        m[(j, c)] = g[(1, 0)] * a + g[(1, 1)] * b;
    }
}

/// Two-level factors `F_1, …, F_m` with `F_1 F_2 ⋯ F_m = U`.
///
/// Columns are cleared left to right and entries top to bottom by
/// `G = [[a*, b*], [b, −a]] / √(|a|²+|b|²)` on rows `(c, r)`. A column
/// that needed no rotation but has a non-unit diagonal gets a phase gate,
/// and the final 2x2 block is inverted directly. Single-entry phase gates
/// are then folded into the nearest earlier factor that touches the same
/// index; identity factors are dropped.
pub fn two_level_decompose(u: &CMatrix) -> Result<Vec<TwoLevelGate>> {
    u.require_square()?;
    let d = u.rows();
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "dimension {d} outside 2..={MAX_DIM}"
        )));
    }
    u.require_unitary(DEFAULT_TOL)?;

    let mut m = u.clone();
    let mut applied: Vec<TwoLevelGate> = Vec::new();
    for c in 0..d.saturating_sub(2) {
        let mut rotated = false;
        for r in (c + 1)..d {
            let b = m[(r, c)];
            if b.norm() <= ZERO_TOL {
                continue;
            }
            let a = m[(c, c)];
            let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let g =
                CMatrix::from_rows(&[[a.conj() / norm, b.conj() / norm], [b / norm, -a / norm]]);
            left_apply(&mut m, c, r, &g);
            m[(r, c)] = ZERO;
            applied.push(TwoLevelGate::new(d, c, r, g)?);
            rotated = true;
        }
        let a = m[(c, c)];
        if !rotated && (a - ONE).norm() > ZERO_TOL {
            let g = CMatrix::diag(&[a.conj(), ONE]);
            left_apply(&mut m, c, c + 1, &g);
            applied.push(TwoLevelGate::new(d, c, c + 1, g)?);
        }
    }
    let (p, q) = (d - 2, d - 1);
    let last = CMatrix::from_rows(&[[m[(p, p)], m[(p, q)]], [m[(q, p)], m[(q, q)]]]);
    applied.push(TwoLevelGate::new(d, p, q, last.adjoint())?);

    // G_k ⋯ G_1 U = I, so U = G_1† ⋯ G_k†.
    let mut factors: Vec<TwoLevelGate> = applied.iter().map(TwoLevelGate::adjoint).collect();
    factors.retain(|f| !f.is_identity());
    merge_phases(&mut factors);
    Ok(factors)
}

fn merge_phases(factors: &mut Vec<TwoLevelGate>) {
    let mut k = 0;
    while k < factors.len() {
        if let Some((idx, p)) = factors[k].single_phase() {
            // a phase on `idx` commutes with every factor that does not touch `idx`
            if let Some(host) = (0..k).rev().find(|&h| factors[h].touches(idx)) {
                factors[host].absorb_phase_right(idx, p);
                factors.remove(k);
                continue;
            }
        }
        k += 1;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// Single-qubit `block` on `target` when every `(qubit, polarity)` control matches.
    Controlled {
        target: usize,
        controls: Vec<(usize, u8)>,
        block: CMatrix,
    },
    /// NOT on `target` under polarity controls.
    Cnot {
        target: usize,
        controls: Vec<(usize, u8)>,
    },
}

impl Gate {
    fn parts(&self) -> (usize, &[(usize, u8)], CMatrix) {
        match self {
            Gate::Controlled {
                target,
                controls,
                block,
            } => (*target, controls, block.clone()),
            Gate::Cnot { target, controls } => (*target, controls, pauli::x()),
        }
    }

    pub fn dense(&self, n: usize) -> CMatrix {
        let (target, controls, block) = self.parts();
        let dim = 1 << n;
        let bit = |q: usize| 1usize << (n - 1 - q);
        let tb = bit(target);
        let mut m = CMatrix::zeros(dim, dim);
        for x in 0..dim {
            let active = controls
                .iter()
                .all(|&(q, pol)| ((x & bit(q)) != 0) == (pol == 1));
            if !active {
                m[(x, x)] = ONE;
                continue;
            }
            let xb = usize::from(x & tb != 0);
            let x0 = x & !tb;
            m[(x0, x)] = block[(0, xb)];
            m[(x0 | tb, x)] = block[(1, xb)];
        }
        m
    }

    pub fn netlist_line(&self) -> String {
        let (kind, target, controls) = match self {
            Gate::Controlled {
                target, controls, ..
            } => ("cu", target, controls),
            Gate::Cnot { target, controls } => ("cx", target, controls),
        };
        let ctrl: Vec<String> = controls
            .iter()
            .map(|(q, p)| format!("q{}={}", q + 1, p))
            .collect();
        let mut line = format!(
            "{kind} target=q{} controls=[{}]",
            target + 1,
            ctrl.join(",")
        );
        if let Gate::Controlled { block, .. } = self {
            line.push_str(" block=");
            line.push_str(&format_block(block));
        }
        line
    }
}

fn format_block(block: &CMatrix) -> String {
    let mut s = String::new();
    for (k, z) in block.as_slice().iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        // +0.0 folds -0.0 so equal blocks print identically
        write!(s, "{:.16e},{:.16e}", z.re + 0.0, z.im + 0.0).expect("writing to a String");
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateCircuit {
    pub n: usize,
    /// Time order: `gates[0]` acts first.
    pub gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn dense(&self) -> CMatrix {
        self.gates
            .iter()
            .fold(CMatrix::identity(1 << self.n), |acc, g| {
                g.dense(self.n).matmul(&acc)
            })
    }

    pub fn netlist(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            out.push_str(&g.netlist_line());
            out.push('\n');
        }
        out
    }
}

/// Gray-code path from `i` to `j`, flipping differing bits from the most significant down.
fn gray_path(i: usize, j: usize, n: usize) -> Vec<usize> {
    let mut path = vec![i];
    let mut cur = i;
    for q in 0..n {
        let b = 1 << (n - 1 - q);
        if (cur ^ j) & b != 0 {
            cur ^= b;
            path.push(cur);
        }
    }
    path
}

fn controls_except(x: usize, target: usize, n: usize) -> Vec<(usize, u8)> {
    (0..n)
        .filter(|&q| q != target)
        .map(|q| (q, ((x >> (n - 1 - q)) & 1) as u8))
        .collect()
}

fn flipped_qubit(a: usize, b: usize, n: usize) -> usize {
    let diff = a ^ b;
    debug_assert_eq!(diff.count_ones(), 1);
    n - 1 - diff.trailing_zeros() as usize
}

/// Circuit of multi-controlled NOTs routing `i` next to `j`, a controlled
/// single-qubit core, and the routing undone.
pub fn compile_two_level(gate: &TwoLevelGate, n: usize) -> Result<GateCircuit> {
    if n == 0 || (1usize << n) != gate.dim {
        return Err(Error::InvalidArgument(format!(
            "gate dimension {} is not 2^{n}",
            gate.dim
        )));
    }
    let path = gray_path(gate.i, gate.j, n);
    let m = path.len() - 1;
    let mut swaps = Vec::with_capacity(m.saturating_sub(1));
    for w in path[..m].windows(2) {
        let target = flipped_qubit(w[0], w[1], n);
        swaps.push(Gate::Cnot {
            target,
            controls: controls_except(w[0], target, n),
        });
    }
    let near = path[m - 1];
    let target = flipped_qubit(near, gate.j, n);
    let b = &gate.block;
    let j_has_one = (gate.j >> (n - 1 - target)) & 1 == 1;
    let block = if j_has_one {
        b.clone()
    } else {
        CMatrix::from_rows(&[[b[(1, 1)], b[(1, 0)]], [b[(0, 1)], b[(0, 0)]]])
    };
    let mut gates = swaps.clone();
    gates.push(Gate::Controlled {
        target,
        controls: controls_except(gate.j, target, n),
        block,
    });
    gates.extend(swaps.into_iter().rev());
    Ok(GateCircuit { n, gates })
}

/// Circuit for `F_1 ⋯ F_m`: `F_m` is compiled first in time.
pub fn compile_decomposition(factors: &[TwoLevelGate], n: usize) -> Result<GateCircuit> {
    let mut gates = Vec::new();
    for f in factors.iter().rev() {
        gates.extend(compile_two_level(f, n)?.gates);
    }
    Ok(GateCircuit { n, gates })
}

pub fn factor_netlist(factors: &[TwoLevelGate]) -> String {
    let mut out = String::new();
    for f in factors {
        let (i, j) = f.indices();
        out.push_str(&format!(
            "two_level dim={} i={i} j={j} block={}\n",
            f.dim(),
            format_block(f.block())
        ));
    }
    out
}
