//! Single-qudit operators and Kraus noise channels.
//!
//! Three one-parameter channels model the transmission noise studied by the
//! protocol: dit-flip (a uniform random nonzero shift with probability μ),
//! d-phase-flip (a uniform random nonzero phase kick), and amplitude damping
//! (every excited level decays to |0⟩ with probability μ). Each is given by
//! an explicit Kraus family {E_k} with Σ E_k†E_k = I.
//!
//! The channels are applied in *correlated* form by
//! [`apply_correlated_channel`]: one Kraus index is drawn for the whole
//! transmission, and that same operator acts on every transmitted wire —
//! ρ ↦ Σ_k (⊗_j E_k) ρ (⊗_j E_k)†. This is the regime with closed-form
//! recovery fidelities (see [`crate::noise_analysis`]).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::density::DensityMatrix;
use super::{root_of_unity, SimError};

/// A dense square complex matrix, sized for single-qudit operators.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, SimError> {
        if entries.len() != dim * dim {
            return Err(SimError::WrongAmplitudeCount {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(ComplexMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        ComplexMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut entries = vec![Complex64::ZERO; self.dim * self.dim];
        for r in 0..self.dim {
            for c in 0..self.dim {
                entries[c * self.dim + r] = self.get(r, c).conj();
            }
        }
        ComplexMatrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn mat_mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, SimError> {
        if self.dim != other.dim {
            return Err(SimError::WrongOperatorDimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        let n = self.dim;
        let mut entries = vec![Complex64::ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += a * other.get(k, c);
                }
            }
        }
        Ok(ComplexMatrix { dim: n, entries })
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, SimError> {
        if self.dim != other.dim {
            return Err(SimError::WrongOperatorDimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(ComplexMatrix {
            dim: self.dim,
            entries,
        })
    }

    /// Largest absolute entry of (self − other).
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The phase-then-shift-indexing operator Σ_z ω^(mz) |z⟩⟨z+n|.
///
/// Row z has its single nonzero entry ω^(mz) in column (z+n) mod d; it maps
/// |z+n⟩ to ω^(mz)|z⟩. Together these d² operators form the standard
/// orthogonal unitary basis for one qudit.
pub fn weyl_operator(d: usize, m: u64, n: u64) -> ComplexMatrix {
    let mut entries = vec![Complex64::ZERO; d * d];
    let m = m % d as u64;
    let n = (n % d as u64) as usize;
    for z in 0..d {
        let col = (z + n) % d;
        entries[z * d + col] = root_of_unity(d, (m * z as u64 % d as u64) as i64);
    }
    ComplexMatrix { dim: d, entries }
}

/// The shift-and-phase operator |z⟩ ↦ ω^(bz)|z+a mod d⟩ as a matrix, the
/// same gate [`super::QuditRegister::apply_shift_phase`] applies to state
/// vectors.
pub fn shift_phase_operator(d: usize, a: u64, b: u64) -> ComplexMatrix {
    let mut entries = vec![Complex64::ZERO; d * d];
    let a = (a % d as u64) as usize;
    let b = b % d as u64;
    for z in 0..d {
        let row = (z + a) % d;
        entries[row * d + z] = root_of_unity(d, (b * z as u64 % d as u64) as i64);
    }
    ComplexMatrix { dim: d, entries }
}

/// The single-qudit Fourier matrix, entry [z][x] = ω^(xz)/√d.
pub fn qft_operator(d: usize) -> ComplexMatrix {
    fourier_operator(d, 1)
}

/// The inverse Fourier matrix, entry [z][x] = ω^(−xz)/√d.
pub fn iqft_operator(d: usize) -> ComplexMatrix {
    fourier_operator(d, -1)
}

fn fourier_operator(d: usize, sign: i64) -> ComplexMatrix {
    let scale = 1.0 / (d as f64).sqrt();
    let mut entries = vec![Complex64::ZERO; d * d];
    for z in 0..d {
        for x in 0..d {
            entries[z * d + x] = root_of_unity(d, sign * (x * z % d) as i64) * scale;
        }
    }
    ComplexMatrix { dim: d, entries }
}

/// The three supported noise channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Uniform random nonzero shift with total probability μ.
    DitFlip,
    /// Uniform random nonzero phase kick with total probability μ.
    DPhaseFlip,
    /// Decay of every excited level to |0⟩ with probability μ.
    AmplitudeDamping,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::DitFlip,
        ChannelKind::DPhaseFlip,
        ChannelKind::AmplitudeDamping,
    ];

    /// Short label used in CSV output and CLI flags.
    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::DitFlip => "df",
            ChannelKind::DPhaseFlip => "dpf",
            ChannelKind::AmplitudeDamping => "ad",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "df" => Ok(ChannelKind::DitFlip),
            "dpf" => Ok(ChannelKind::DPhaseFlip),
            "ad" => Ok(ChannelKind::AmplitudeDamping),
            other => Err(format!(
                "unknown channel kind '{other}' (expected df, dpf, or ad)"
            )),
        }
    }
}

/// The Kraus family {E_k} of a channel at noise strength μ.
pub fn kraus_operators(
    kind: ChannelKind,
    d: usize,
    mu: f64,
) -> Result<Vec<ComplexMatrix>, SimError> {
    if d < 2 {
        return Err(SimError::BadQuditDimension { d });
    }
    if !(0.0..=1.0).contains(&mu) || mu.is_nan() {
        return Err(SimError::BadNoiseParameter { mu });
    }
    let keep = Complex64::new((1.0 - mu).sqrt(), 0.0);
    let spread = Complex64::new((mu / (d - 1) as f64).sqrt(), 0.0);
    let ops = match kind {
        ChannelKind::DitFlip => {
            let mut ops = vec![ComplexMatrix::identity(d).scale(keep)];
            ops.extend((1..d as u64).map(|n| weyl_operator(d, 0, n).scale(spread)));
            ops
        }
        ChannelKind::DPhaseFlip => {
            let mut ops = vec![ComplexMatrix::identity(d).scale(keep)];
            ops.extend((1..d as u64).map(|m| weyl_operator(d, m, 0).scale(spread)));
            ops
        }
        ChannelKind::AmplitudeDamping => {
            // E_0 keeps |0⟩ and damps every excited level; E_z drops |z⟩
            // straight to |0⟩.
            let mut survive = vec![Complex64::ZERO; d * d];
            survive[0] = Complex64::ONE;
            for z in 1..d {
                survive[z * d + z] = keep;
            }
            let mut ops = vec![ComplexMatrix::new(d, survive)?];
            let decay = Complex64::new(mu.sqrt(), 0.0);
            for z in 1..d {
                let mut entries = vec![Complex64::ZERO; d * d];
                entries[z] = decay;
                ops.push(ComplexMatrix::new(d, entries)?);
            }
            ops
        }
    };
    Ok(ops)
}

/// Largest entry-wise deviation of Σ E_k†E_k from the identity.
pub fn kraus_completeness_defect(kind: ChannelKind, d: usize, mu: f64) -> Result<f64, SimError> {
    let ops = kraus_operators(kind, d, mu)?;
    let mut sum = ComplexMatrix::new(d, vec![Complex64::ZERO; d * d])?;
    for op in &ops {
        sum = sum.add(&op.dagger().mat_mul(op)?)?;
    }
    Ok(sum.max_abs_diff(&ComplexMatrix::identity(d)))
}

/// Applies a correlated channel: one Kraus index acts on every listed wire.
///
/// ρ ↦ Σ_k (⊗_{j∈wires} E_k) ρ (⊗_{j∈wires} E_k)†. Wires are 1-based and
/// must be distinct; unlisted wires pass through untouched.
///
/// The map is completely positive but not trace-preserving when more than
/// one wire is listed: the single-wire weights baked into each E_k compound
/// once per wire, so tr ρ′ = Σ_k tr(ρ ⊗_j E_k†E_k) ≤ 1, with equality only
/// at μ = 0. This is exactly the weighting under which the closed-form
/// fidelities in `noise_analysis` are exact, so it is kept as-is rather
/// than renormalised.
pub fn apply_correlated_channel(
    rho: &DensityMatrix,
    kind: ChannelKind,
    mu: f64,
    wires: &[usize],
) -> Result<DensityMatrix, SimError> {
    for (i, &wire) in wires.iter().enumerate() {
        if wires[..i].contains(&wire) {
            return Err(SimError::WireCollision { wire });
        }
    }
    let ops = kraus_operators(kind, rho.qudit_dimension(), mu)?;
    let mut out = rho.zeros_like();
    for op in &ops {
        let mut branch = rho.clone();
        for &wire in wires {
            branch.sandwich_wire_operator(op, wire)?;
        }
        out.accumulate(&branch)?;
    }
    Ok(out)
}
