//! Exact-dimension state-vector simulation of small qudit registers.
//!
//! A register holds t qudits of dimension d as a dense vector of d^t complex
//! amplitudes; wire 1 is the most significant digit of the basis index. The
//! gate set is exactly what the recovery phase needs: the d-dimensional
//! Fourier transform and its inverse on a single wire, the modular-addition
//! SUM gate, and the shift-and-phase (generalized Pauli) operators.
//!
//! [`prepare_ghz`] and [`recovery_state`] compose them into the two circuits
//! the protocol runs: GHZ preparation (Fourier on wire 1, then SUM onto each
//! remaining wire) and secret recovery (per-wire phase encoding followed by
//! per-wire inverse Fourier). Measuring the recovery state yields digit
//! strings supported exactly on the hyperplane whose digit sum equals the
//! encoded value.
//!
//! Submodules: [`density`] re-expresses states as density matrices so that
//! [`channel`]'s Kraus noise maps can act on them.

pub mod channel;
pub mod density;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

/// Cap on d^t for dense state vectors (16 MiB of amplitudes).
pub const MAX_STATE_DIM: usize = 1 << 20;

/// Cap on d^t for density matrices (dim² entries).
pub const MAX_DENSITY_DIM: usize = 512;

/// Tolerance for the unit-norm invariant on constructed states.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Errors from register construction and gate application.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("qudit dimension must be at least 2, got {d}")]
    BadQuditDimension { d: usize },
    #[error("register needs at least one wire")]
    NoWires,
    #[error("register dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: u128, cap: usize },
    #[error("wire {wire} out of range 1..={wires}")]
    WireOutOfRange { wire: usize, wires: usize },
    #[error("SUM gate needs distinct control and target, got wire {wire} twice")]
    WireCollision { wire: usize },
    #[error("expected {expected} amplitudes, got {got}")]
    WrongAmplitudeCount { expected: usize, got: usize },
    #[error("state norm² = {norm_sq} is not 1 within {NORM_TOLERANCE}")]
    NotNormalized { norm_sq: f64 },
    #[error("digit {digit} out of range 0..{d}")]
    BadDigit { digit: usize, d: usize },
    #[error("expected {expected} digits, got {got}")]
    WrongDigitCount { expected: usize, got: usize },
    #[error("operator of order {got} does not fit qudit dimension {expected}")]
    WrongOperatorDimension { expected: usize, got: usize },
    #[error("noise parameter mu = {mu} outside [0, 1]")]
    BadNoiseParameter { mu: f64 },
}

/// e^(2πi·e/d) with the exponent reduced exactly before float conversion.
pub(crate) fn root_of_unity(d: usize, exponent: i64) -> Complex64 {
    let e = exponent.rem_euclid(d as i64);
    Complex64::from_polar(1.0, TAU * e as f64 / d as f64)
}

/// Checks d ≥ 2, t ≥ 1, and d^t against a cap; returns d^t.
fn checked_dimension(d: usize, wires: usize, cap: usize) -> Result<usize, SimError> {
    if d < 2 {
        return Err(SimError::BadQuditDimension { d });
    }
    if wires == 0 {
        return Err(SimError::NoWires);
    }
    let mut dim: u128 = 1;
    for _ in 0..wires {
        dim *= d as u128;
        if dim > cap as u128 {
            return Err(SimError::DimensionCap { dim, cap });
        }
    }
    Ok(dim as usize)
}

/// A dense t-qudit state vector. Wire 1 is the most significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditRegister {
    d: usize,
    wires: usize,
    amps: Vec<Complex64>,
}

impl QuditRegister {
    /// |0...0⟩ on `wires` qudits of dimension d.
    pub fn zero_state(d: usize, wires: usize) -> Result<Self, SimError> {
        let dim = checked_dimension(d, wires, MAX_STATE_DIM)?;
        let mut amps = vec![Complex64::ZERO; dim];
        amps[0] = Complex64::ONE;
        Ok(QuditRegister { d, wires, amps })
    }

    /// The computational basis state with the given digits (wire order).
    pub fn basis_state(d: usize, wires: usize, digits: &[usize]) -> Result<Self, SimError> {
        let mut reg = Self::zero_state(d, wires)?;
        let index = reg.index_of(digits)?;
        reg.amps[0] = Complex64::ZERO;
        reg.amps[index] = Complex64::ONE;
        Ok(reg)
    }

    /// Wraps explicit amplitudes; must already be normalized.
    pub fn from_amplitudes(
        d: usize,
        wires: usize,
        amps: Vec<Complex64>,
    ) -> Result<Self, SimError> {
        let dim = checked_dimension(d, wires, MAX_STATE_DIM)?;
        if amps.len() != dim {
            return Err(SimError::WrongAmplitudeCount {
                expected: dim,
                got: amps.len(),
            });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NotNormalized { norm_sq });
        }
        Ok(QuditRegister { d, wires, amps })
    }

    pub fn qudit_dimension(&self) -> usize {
        self.d
    }

    pub fn wire_count(&self) -> usize {
        self.wires
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Basis index of a digit string (wire 1 most significant).
    pub fn index_of(&self, digits: &[usize]) -> Result<usize, SimError> {
        if digits.len() != self.wires {
            return Err(SimError::WrongDigitCount {
                expected: self.wires,
                got: digits.len(),
            });
        }
        let mut index = 0;
        for &digit in digits {
            if digit >= self.d {
                return Err(SimError::BadDigit { digit, d: self.d });
            }
            index = index * self.d + digit;
        }
        Ok(index)
    }

    /// Digit string of a basis index (wire 1 most significant).
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.wires];
        for slot in digits.iter_mut().rev() {
            *slot = index % self.d;
            index /= self.d;
        }
        digits
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &QuditRegister) -> Result<Complex64, SimError> {
        if self.d != other.d || self.wires != other.wires {
            return Err(SimError::WrongAmplitudeCount {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn check_wire(&self, wire: usize) -> Result<usize, SimError> {
        if wire == 0 || wire > self.wires {
            return Err(SimError::WireOutOfRange {
                wire,
                wires: self.wires,
            });
        }
        // Stride between consecutive digit values of this wire.
        Ok(self.d.pow((self.wires - wire) as u32))
    }

    /// Applies the d-dimensional Fourier transform on one wire:
    /// |x⟩ ↦ (1/√d) Σ_z ω^(xz) |z⟩.
    pub fn apply_qft(&mut self, wire: usize) -> Result<(), SimError> {
        self.apply_fourier(wire, 1)
    }

    /// Applies the inverse Fourier transform on one wire:
    /// |x⟩ ↦ (1/√d) Σ_z ω^(−xz) |z⟩.
    pub fn apply_iqft(&mut self, wire: usize) -> Result<(), SimError> {
        self.apply_fourier(wire, -1)
    }

    fn apply_fourier(&mut self, wire: usize, sign: i64) -> Result<(), SimError> {
        let stride = self.check_wire(wire)?;
        let d = self.d;
        let scale = 1.0 / (d as f64).sqrt();
        // ω^(sign·xz) table, indexed by (x·z) mod d.
        let phases: Vec<Complex64> = (0..d)
            .map(|e| root_of_unity(d, sign * e as i64) * scale)
            .collect();
        let block = stride * d;
        let mut scratch = vec![Complex64::ZERO; d];
        for outer in (0..self.amps.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (z, slot) in scratch.iter_mut().enumerate() {
                    *slot = (0..d)
                        .map(|x| phases[x * z % d] * self.amps[base + x * stride])
                        .sum();
                }
                for (z, value) in scratch.iter().enumerate() {
                    self.amps[base + z * stride] = *value;
                }
            }
        }
        Ok(())
    }

    /// Applies the modular-addition gate: |α⟩_c |β⟩_t ↦ |α⟩_c |α+β mod d⟩_t.
    pub fn apply_sum(&mut self, control: usize, target: usize) -> Result<(), SimError> {
        let control_stride = self.check_wire(control)?;
        let target_stride = self.check_wire(target)?;
        if control == target {
            return Err(SimError::WireCollision { wire: control });
        }
        let d = self.d;
        let mut next = vec![Complex64::ZERO; self.amps.len()];
        for (index, amp) in self.amps.iter().enumerate() {
            let alpha = index / control_stride % d;
            let beta = index / target_stride % d;
            let shifted = index - beta * target_stride + (alpha + beta) % d * target_stride;
            next[shifted] = *amp;
        }
        self.amps = next;
        Ok(())
    }

    /// Applies the shift-and-phase operator on one wire:
    /// |z⟩ ↦ ω^(bz) |z+a mod d⟩.
    pub fn apply_shift_phase(&mut self, wire: usize, a: u64, b: u64) -> Result<(), SimError> {
        let stride = self.check_wire(wire)?;
        let d = self.d;
        let shift = (a % d as u64) as usize;
        let phases: Vec<Complex64> = (0..d)
            .map(|z| root_of_unity(d, (b % d as u64 * z as u64 % d as u64) as i64))
            .collect();
        let block = stride * d;
        let mut scratch = vec![Complex64::ZERO; d];
        for outer in (0..self.amps.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for z in 0..d {
                    scratch[(z + shift) % d] = phases[z] * self.amps[base + z * stride];
                }
                for (z, value) in scratch.iter().enumerate() {
                    self.amps[base + z * stride] = *value;
                }
            }
        }
        Ok(())
    }

    /// Measurement probability of each basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Full computational-basis measurement: samples a digit string and
    /// returns it with the collapsed register.
    pub fn measure_all(&self, rng: &mut impl Rng) -> (Vec<usize>, QuditRegister) {
        let total = self.norm_sq();
        let draw: f64 = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut picked = self.amps.len() - 1;
        for (index, amp) in self.amps.iter().enumerate() {
            acc += amp.norm_sqr();
            if draw < acc {
                picked = index;
                break;
            }
        }
        let digits = self.digits_of(picked);
        let collapsed = QuditRegister::basis_state(self.d, self.wires, &digits)
            .expect("digits come from a valid index");
        (digits, collapsed)
    }
}

/// Prepares the t-wire GHZ-type state (1/√d) Σ_v |v⟩^⊗t: Fourier on wire 1,
/// then SUM from wire 1 onto each other wire.
pub fn prepare_ghz(d: usize, wires: usize) -> Result<QuditRegister, SimError> {
    let mut reg = QuditRegister::zero_state(d, wires)?;
    reg.apply_qft(1)?;
    for target in 2..=wires {
        reg.apply_sum(1, target)?;
    }
    Ok(reg)
}

/// The pre-measurement state of the recovery circuit.
///
/// Starting from GHZ, wire j encodes its exponent e_j through the phase
/// operator |z⟩ ↦ ω^(e_j z)|z⟩, then every wire is inverse-Fourier
/// transformed. The result is an equal-magnitude superposition over exactly
/// the digit strings with Σ x_j ≡ Σ e_j (mod d), so measuring and summing
/// digits recovers Σ e_j.
pub fn recovery_state(d: usize, exponents: &[u64]) -> Result<QuditRegister, SimError> {
    let wires = exponents.len();
    let mut reg = prepare_ghz(d, wires)?;
    for (j, &e) in exponents.iter().enumerate() {
        reg.apply_shift_phase(j + 1, 0, e)?;
    }
    for wire in 1..=wires {
        reg.apply_iqft(wire)?;
    }
    Ok(reg)
}
