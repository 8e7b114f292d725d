//! Share-ownership verification through eigenvector credentials.
//!
//! The dealer hides the m share values on the diagonal of
//! Σ = diag(sh_1, sh_1, ..., sh_m, sh_m), conjugates it by a random
//! invertible Y into X = Y⁻¹ Σ Y, and issues participant k the pair of
//! Y⁻¹ columns belonging to its two diagonal slots. Those columns are
//! linearly independent eigenvectors of X with eigenvalue sh_k, so the
//! verifier — which stores only (sh, X) — can authenticate a participant
//! without the participant revealing its share: the submitted pair must be
//! independent and both vectors must be eigenvectors of X for the stored
//! value. A forger who never saw a credential has to hit a 2-dimensional
//! eigenspace inside a 2m-dimensional space, twice.
//!
//! [`BlackBoxState::identify_and_release`] applies the check to a whole
//! coalition: cheaters are named, and the stored shares are released to the
//! honest remainder only if that remainder is still authorized.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::access_msp::{AccessStructure, ParticipantId};
use crate::finite_field::{
    is_linearly_independent, FieldError, FieldMatrix, FieldVector, Modulus,
};

/// Errors from black-box construction and coalition queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlackBoxError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot build a black box for zero shares")]
    EmptyShares,
    #[error("hiding matrix must be invertible of order {expected}, got {rows}x{cols}")]
    BadHidingMatrix {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("participant P{index} is outside the {count} enrolled participants")]
    ParticipantOutOfRange { index: usize, count: usize },
}

/// The credential pair issued to one participant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowPair {
    pub first: FieldVector,
    pub second: FieldVector,
}

impl ShadowPair {
    pub fn new(first: FieldVector, second: FieldVector) -> Self {
        ShadowPair { first, second }
    }
}

/// Why a submitted pair was rejected (the first failed check, in order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheatReason {
    /// The two vectors are linearly dependent (this also catches zero or
    /// malformed vectors, which can never form an independent pair).
    DependentShadows,
    /// At least one vector is not an eigenvector of the stored matrix.
    NotEigenvector,
    /// Both are eigenvectors, but not both for the stored share value.
    EigenvalueMismatch,
}

impl fmt::Display for CheatReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            CheatReason::DependentShadows => "shadows are linearly dependent",
            CheatReason::NotEigenvector => "shadow is not an eigenvector",
            CheatReason::EigenvalueMismatch => "eigenvalue differs from the stored share",
        };
        f.write_str(text)
    }
}

/// Outcome of verifying one participant's submission.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Honest,
    Cheater(CheatReason),
}

/// Per-coalition verification outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheatReport {
    /// Verdict for every submitting participant.
    pub verdicts: BTreeMap<ParticipantId, Verdict>,
    /// True when the honest remainder lost authorization and the run must
    /// stop without releasing anything.
    pub aborted: bool,
}

impl CheatReport {
    pub fn honest(&self) -> BTreeSet<ParticipantId> {
        self.verdicts
            .iter()
            .filter(|(_, v)| matches!(v, Verdict::Honest))
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn cheaters(&self) -> BTreeSet<ParticipantId> {
        self.verdicts
            .iter()
            .filter(|(_, v)| matches!(v, Verdict::Cheater(_)))
            .map(|(&p, _)| p)
            .collect()
    }
}

/// The verifier's stored state: share values and the conjugated diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlackBoxState {
    shares: FieldVector,
    x_matrix: FieldMatrix,
}

impl BlackBoxState {
    /// Builds the verifier state and issues one credential pair per
    /// participant, drawing the hiding matrix at random.
    ///
    /// `shares` is indexed by participant: entry k-1 belongs to P_k.
    pub fn build(
        shares: &FieldVector,
        rng: &mut impl Rng,
    ) -> Result<(Self, Vec<ShadowPair>), BlackBoxError> {
        if shares.is_empty() {
            return Err(BlackBoxError::EmptyShares);
        }
        let y = FieldMatrix::random_invertible(shares.modulus(), 2 * shares.len(), rng)?;
        Self::build_with_matrix(shares, &y)
    }

    /// Builds the verifier state from an explicit invertible hiding matrix
    /// of order 2m.
    pub fn build_with_matrix(
        shares: &FieldVector,
        y: &FieldMatrix,
    ) -> Result<(Self, Vec<ShadowPair>), BlackBoxError> {
        if shares.is_empty() {
            return Err(BlackBoxError::EmptyShares);
        }
        let m = shares.len();
        if y.rows() != 2 * m || y.cols() != 2 * m {
            return Err(BlackBoxError::BadHidingMatrix {
                expected: 2 * m,
                rows: y.rows(),
                cols: y.cols(),
            });
        }
        shares.modulus().check_same(y.modulus())?;
        let duplicated: Vec<u64> = shares
            .entries()
            .iter()
            .flat_map(|&sh| [sh, sh])
            .collect();
        let sigma = FieldMatrix::diagonal(shares.modulus(), &duplicated);
        let y_inv = y.mat_inverse()?;
        let x_matrix = y_inv.mat_mul(&sigma)?.mat_mul(y)?;
        // Column 2k-2 / 2k-1 of Y⁻¹ (0-based) pick out the two diagonal
        // slots holding sh_k, so they are independent eigenvectors of X.
        let shadows = (0..m)
            .map(|k| ShadowPair::new(y_inv.column(2 * k), y_inv.column(2 * k + 1)))
            .collect();
        Ok((
            BlackBoxState {
                shares: shares.clone(),
                x_matrix,
            },
            shadows,
        ))
    }

    pub fn modulus(&self) -> Modulus {
        self.shares.modulus()
    }

    /// Number of enrolled participants.
    pub fn participant_count(&self) -> usize {
        self.shares.len()
    }

    /// The conjugated matrix X (public to tests and transcripts; it reveals
    /// nothing beyond the multiset of share values).
    pub fn x_matrix(&self) -> &FieldMatrix {
        &self.x_matrix
    }

    /// Stored share of one participant.
    pub fn stored_share(&self, participant: ParticipantId) -> Result<u64, BlackBoxError> {
        let k = participant.index();
        if k > self.shares.len() {
            return Err(BlackBoxError::ParticipantOutOfRange {
                index: k,
                count: self.shares.len(),
            });
        }
        Ok(self.shares.get(k - 1))
    }

    /// Checks a submitted credential pair for one participant.
    ///
    /// Checks run in a fixed order and the verdict carries the first
    /// failure: linear independence, then eigenvector membership, then
    /// agreement of both eigenvalues with the stored share.
    pub fn verify(
        &self,
        participant: ParticipantId,
        pair: &ShadowPair,
    ) -> Result<Verdict, BlackBoxError> {
        let stored = self.stored_share(participant)?;
        let dim = 2 * self.shares.len();
        let shaped = |v: &FieldVector| v.len() == dim && v.modulus() == self.modulus();
        if !shaped(&pair.first) || !shaped(&pair.second) {
            // A wrong-shape vector cannot be independent of anything in the
            // credential space, let alone an eigenvector.
            return Ok(Verdict::Cheater(CheatReason::DependentShadows));
        }
        if !is_linearly_independent(&[pair.first.clone(), pair.second.clone()])? {
            return Ok(Verdict::Cheater(CheatReason::DependentShadows));
        }
        let first_value = match self.x_matrix.eigenvalue_for(&pair.first) {
            Ok(value) => value,
            Err(FieldError::NotEigenvector) | Err(FieldError::ZeroVector) => {
                return Ok(Verdict::Cheater(CheatReason::NotEigenvector))
            }
            Err(e) => return Err(e.into()),
        };
        let second_value = match self.x_matrix.eigenvalue_for(&pair.second) {
            Ok(value) => value,
            Err(FieldError::NotEigenvector) | Err(FieldError::ZeroVector) => {
                return Ok(Verdict::Cheater(CheatReason::NotEigenvector))
            }
            Err(e) => return Err(e.into()),
        };
        if first_value != stored || second_value != stored {
            return Ok(Verdict::Cheater(CheatReason::EigenvalueMismatch));
        }
        Ok(Verdict::Honest)
    }

    /// Verifies a coalition's submissions, names the cheaters, and releases
    /// the stored shares to the honest remainder — but only when that
    /// remainder is still authorized under `structure`.
    ///
    /// Returns the report plus `Some(shares by participant)` on release,
    /// `None` on abort.
    #[allow(clippy::type_complexity)]
    pub fn identify_and_release(
        &self,
        submissions: &BTreeMap<ParticipantId, ShadowPair>,
        structure: &AccessStructure,
    ) -> Result<(CheatReport, Option<BTreeMap<ParticipantId, u64>>), BlackBoxError> {
        let mut verdicts = BTreeMap::new();
        for (&participant, pair) in submissions {
            verdicts.insert(participant, self.verify(participant, pair)?);
        }
        let report = CheatReport {
            verdicts,
            aborted: false,
        };
        let honest = report.honest();
        if !structure.is_authorized(&honest) {
            return Ok((
                CheatReport {
                    aborted: true,
                    ..report
                },
                None,
            ));
        }
        let released = honest
            .into_iter()
            .map(|p| Ok((p, self.stored_share(p)?)))
            .collect::<Result<BTreeMap<_, _>, BlackBoxError>>()?;
        Ok((report, Some(released)))
    }
}
