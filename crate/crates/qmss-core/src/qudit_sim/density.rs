//! Density-matrix form of small registers, for mixed-state noise pipelines.
//!
//! Kraus channels turn pure states into mixtures, so the noise analysis
//! works on ρ = Σ p_k |ψ_k⟩⟨ψ_k| directly. Operators act wire-locally via
//! [`DensityMatrix::sandwich_wire_operator`] (E ρ E† on one wire), which is
//! all the correlated channels and the recovery unitaries need. The cap on
//! d^t is much tighter than the state-vector cap because storage and work
//! scale with the square of the dimension.

use num_complex::Complex64;

use super::channel::ComplexMatrix;
use super::{QuditRegister, SimError, MAX_DENSITY_DIM};

/// A dense t-qudit density matrix. Wire 1 is the most significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    d: usize,
    wires: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// The pure-state projector |ψ⟩⟨ψ| of a register.
    pub fn from_register(reg: &QuditRegister) -> Result<Self, SimError> {
        let dim = reg.dim();
        if dim > MAX_DENSITY_DIM {
            return Err(SimError::DimensionCap {
                dim: dim as u128,
                cap: MAX_DENSITY_DIM,
            });
        }
        let amps = reg.amplitudes();
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            if amps[r] == Complex64::ZERO {
                continue;
            }
            for c in 0..dim {
                entries[r * dim + c] = amps[r] * amps[c].conj();
            }
        }
        Ok(DensityMatrix {
            d: reg.qudit_dimension(),
            wires: reg.wire_count(),
            dim,
            entries,
        })
    }

    /// An all-zero matrix with this one's shape (for accumulating Kraus
    /// branches).
    pub fn zeros_like(&self) -> DensityMatrix {
        DensityMatrix {
            d: self.d,
            wires: self.wires,
            dim: self.dim,
            entries: vec![Complex64::ZERO; self.dim * self.dim],
        }
    }

    pub fn qudit_dimension(&self) -> usize {
        self.d
    }

    pub fn wire_count(&self) -> usize {
        self.wires
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Entry-wise sum: self += other.
    pub fn accumulate(&mut self, other: &DensityMatrix) -> Result<(), SimError> {
        if self.dim != other.dim || self.d != other.d {
            return Err(SimError::WrongAmplitudeCount {
                expected: self.dim,
                got: other.dim,
            });
        }
        for (slot, &value) in self.entries.iter_mut().zip(&other.entries) {
            *slot += value;
        }
        Ok(())
    }

    /// Largest absolute deviation from Hermitian symmetry.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                worst = worst.max((self.entry(r, c) - self.entry(c, r).conj()).norm());
            }
        }
        worst
    }

    fn wire_stride(&self, wire: usize) -> Result<usize, SimError> {
        if wire == 0 || wire > self.wires {
            return Err(SimError::WireOutOfRange {
                wire,
                wires: self.wires,
            });
        }
        Ok(self.d.pow((self.wires - wire) as u32))
    }

    /// Replaces ρ with (E on `wire`) ρ (E on `wire`)†.
    ///
    /// E is a d×d operator acting on one wire; all other wires see the
    /// identity. Applying this for each element of a Kraus family and
    /// summing realizes the channel.
    pub fn sandwich_wire_operator(
        &mut self,
        op: &ComplexMatrix,
        wire: usize,
    ) -> Result<(), SimError> {
        if op.dim() != self.d {
            return Err(SimError::WrongOperatorDimension {
                expected: self.d,
                got: op.dim(),
            });
        }
        let stride = self.wire_stride(wire)?;
        let d = self.d;
        let dim = self.dim;
        let digit = |index: usize| index / stride % d;
        let rebase = |index: usize, z: usize| index - digit(index) * stride + z * stride;

        // Left multiply: ρ ← E ρ.
        let mut next = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            let r_digit = digit(r);
            for z in 0..d {
                let factor = op.get(r_digit, z);
                if factor == Complex64::ZERO {
                    continue;
                }
                let src = rebase(r, z);
                for c in 0..dim {
                    next[r * dim + c] += factor * self.entries[src * dim + c];
                }
            }
        }
        // Right multiply: ρ ← ρ E†, i.e. new[r][c] = Σ_z ρ[r][c_z]·conj(E[digit(c), z]).
        let mut out = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let c_digit = digit(c);
                let mut acc = Complex64::ZERO;
                for z in 0..d {
                    let factor = op.get(c_digit, z).conj();
                    if factor == Complex64::ZERO {
                        continue;
                    }
                    acc += next[r * dim + rebase(c, z)] * factor;
                }
                out[r * dim + c] = acc;
            }
        }
        self.entries = out;
        Ok(())
    }

    /// ⟨φ|ρ|φ⟩ for a pure comparison state φ.
    pub fn fidelity_with_pure(&self, reg: &QuditRegister) -> Result<f64, SimError> {
        if reg.dim() != self.dim || reg.qudit_dimension() != self.d {
            return Err(SimError::WrongAmplitudeCount {
                expected: self.dim,
                got: reg.dim(),
            });
        }
        let amps = reg.amplitudes();
        let mut acc = Complex64::ZERO;
        for r in 0..self.dim {
            if amps[r] == Complex64::ZERO {
                continue;
            }
            for c in 0..self.dim {
                acc += amps[r].conj() * self.entry(r, c) * amps[c];
            }
        }
        Ok(acc.re)
    }
}
