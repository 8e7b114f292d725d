//! Linear multi-secret sharing on top of a span program.
//!
//! The dealer picks one distribution vector ρ of length l that simultaneously
//! encodes all n secrets (secret i is the inner product of ρ with target i),
//! then hands participant k the single field element sh_k = (row k of M) · ρ.
//! An authorized coalition recovers secret i as the inner product of its
//! shares with the recombination vector from
//! [`MspInstance::recombination_vector`].
//!
//! With the default unit targets e_1..e_n the distribution vector is simply
//! the secrets followed by l − n uniformly random tail elements. The general
//! construction here solves ζ_i · ρ = s_i canonically and randomizes over the
//! kernel of the target rows, which reduces to exactly that shape for unit
//! targets.

use rand::Rng;
use thiserror::Error;

use crate::access_msp::{MspError, MspInstance};
use crate::finite_field::{FieldError, FieldMatrix, FieldVector};

/// Errors from share distribution and reconstruction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmssError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Msp(#[from] MspError),
    #[error("expected {expected} secrets, got {got}")]
    SecretCountMismatch { expected: usize, got: usize },
    #[error("expected {expected} tail elements, got {got}")]
    TailLengthMismatch { expected: usize, got: usize },
    /// Linearly dependent targets can make a secret combination impossible
    /// (e.g. a target that is twice another forces the doubled secret).
    #[error("no distribution vector encodes this secret combination")]
    InconsistentSecrets,
}

/// A dealer's distribution vector together with the derived shares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareBundle {
    rho: FieldVector,
    shares: FieldVector,
}

impl ShareBundle {
    /// The distribution vector ρ (length l).
    pub fn rho(&self) -> &FieldVector {
        &self.rho
    }

    /// All m shares, in matrix-row order.
    pub fn shares(&self) -> &FieldVector {
        &self.shares
    }

    /// The secrets this bundle encodes, via the instance's targets.
    pub fn secrets(&self, msp: &MspInstance) -> Result<Vec<u64>, LmssError> {
        (1..=msp.secret_count())
            .map(|i| Ok(msp.target(i)?.dot(&self.rho)?))
            .collect()
    }

    /// The coalition's shares, ordered like
    /// [`MspInstance::row_indices_for`] (and hence like recombination
    /// vectors).
    pub fn coalition_shares(
        &self,
        msp: &MspInstance,
        coalition: &std::collections::BTreeSet<crate::access_msp::ParticipantId>,
    ) -> FieldVector {
        let entries = msp
            .row_indices_for(coalition)
            .into_iter()
            .map(|r| self.shares.get(r))
            .collect();
        FieldVector::new(self.shares.modulus(), entries)
    }
}

/// Shares an explicit distribution vector: sh = M ρ.
pub fn distribute_vector(msp: &MspInstance, rho: FieldVector) -> Result<ShareBundle, LmssError> {
    let shares = msp.matrix().mat_vec_mul(&rho)?;
    Ok(ShareBundle { rho, shares })
}

/// Deterministic distribution: secrets plus an explicit tail.
///
/// The tail supplies the l − rank(targets) free coefficients over the
/// canonical kernel basis of the target rows. For unit targets e_1..e_n this
/// makes ρ literally `secrets ++ tail`.
pub fn distribute_with_tail(
    msp: &MspInstance,
    secrets: &[u64],
    tail: &[u64],
) -> Result<ShareBundle, LmssError> {
    let (particular, kernel) = secret_solution_family(msp, secrets)?;
    if tail.len() != kernel.len() {
        return Err(LmssError::TailLengthMismatch {
            expected: kernel.len(),
            got: tail.len(),
        });
    }
    let mut rho = particular;
    for (coeff, basis_vec) in tail.iter().zip(&kernel) {
        rho = rho.add(&basis_vec.scale(*coeff))?;
    }
    distribute_vector(msp, rho)
}

/// Random distribution: secrets plus a uniformly sampled tail.
pub fn distribute(
    msp: &MspInstance,
    secrets: &[u64],
    rng: &mut impl Rng,
) -> Result<ShareBundle, LmssError> {
    let (_, kernel) = secret_solution_family(msp, secrets)?;
    let d = msp.modulus();
    let tail: Vec<u64> = (0..kernel.len()).map(|_| d.sample(rng)).collect();
    distribute_with_tail(msp, secrets, &tail)
}

/// Recovers one secret from a coalition's shares and a recombination vector.
pub fn reconstruct_secret(
    coalition_shares: &FieldVector,
    lambda: &FieldVector,
) -> Result<u64, LmssError> {
    Ok(coalition_shares.dot(lambda)?)
}

/// A second bundle showing the coalition learns nothing about a secret.
///
/// For a coalition holding a kernel witness κ, shifting ρ by κ leaves every
/// share of the coalition unchanged while moving secret i by exactly 1.
/// Returns `None` when no witness exists (the coalition can in fact reach
/// the target, so no such bundle can exist).
pub fn privacy_counterexample(
    msp: &MspInstance,
    bundle: &ShareBundle,
    secret_index: usize,
    coalition: &std::collections::BTreeSet<crate::access_msp::ParticipantId>,
) -> Result<Option<ShareBundle>, LmssError> {
    let Some(kappa) = msp.kernel_witness(secret_index, coalition)? else {
        return Ok(None);
    };
    let shifted = bundle.rho().add(&kappa)?;
    Ok(Some(distribute_vector(msp, shifted)?))
}

/// Canonical particular solution and kernel basis of the target system.
fn secret_solution_family(
    msp: &MspInstance,
    secrets: &[u64],
) -> Result<(FieldVector, Vec<FieldVector>), LmssError> {
    let n = msp.secret_count();
    if secrets.len() != n {
        return Err(LmssError::SecretCountMismatch {
            expected: n,
            got: secrets.len(),
        });
    }
    let d = msp.modulus();
    let l = msp.distribution_len();
    let mut rows = Vec::with_capacity(n * l);
    for i in 1..=n {
        rows.extend(msp.target(i)?.entries().iter().copied());
    }
    let target_rows = FieldMatrix::new(d, n, l, rows)?;
    let rhs = FieldVector::new(d, secrets.to_vec());
    let particular = target_rows.solve_linear(&rhs).map_err(|e| match e {
        FieldError::NoSolution => LmssError::InconsistentSecrets,
        other => LmssError::Field(other),
    })?;
    Ok((particular, target_rows.nullspace_basis()))
}
