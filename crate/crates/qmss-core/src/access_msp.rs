//! Access structures and monotone span programs over Z_d.
//!
//! Each secret s_i carries its own access structure: the family of
//! participant coalitions allowed to recover it, stored as the antichain of
//! its minimal sets. A monotone span program realizes the family with a
//! public matrix M whose rows are owned by participants: a coalition A is
//! authorized for s_i exactly when the target vector of s_i lies in the row
//! span of M_A (so a recombination vector exists), and unauthorized exactly
//! when the kernel of M_A contains a witness whose inner product with the
//! target is 1 (which is what makes the shares of A consistent with any
//! candidate value of s_i).
//!
//! [`MspInstance::validate`] checks both conditions exhaustively over all
//! coalitions, which is why the participant count is capped at
//! [`STRUCTURE_ENUMERATION_CAP`].

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::finite_field::{FieldError, FieldMatrix, FieldVector, Modulus};

/// Participant-count cap for exhaustive coalition enumeration (2^m subsets).
pub const STRUCTURE_ENUMERATION_CAP: usize = 16;

/// Errors from access-structure and span-program construction or queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MspError {
    #[error(transparent)]
    Field(#[from] FieldError),
    /// Participant indices are 1-based; 0 is not a valid participant.
    #[error("participant index 0 is invalid (participants are numbered from 1)")]
    InvalidParticipantIndex,
    /// Exhaustive enumeration over 2^m coalitions would be too large.
    #[error("{count} participants exceeds the enumeration cap of {STRUCTURE_ENUMERATION_CAP}")]
    TooManyParticipants { count: usize },
    /// A minimal authorized set must contain at least one participant.
    #[error("access structure contains an empty authorized set")]
    EmptyMinimalSet,
    /// A referenced participant is outside the 1..=m universe.
    #[error("participant P{participant} is outside the universe of {universe} participants")]
    ParticipantOutsideUniverse { participant: usize, universe: usize },
    /// The row-ownership map must assign one row to each of m participants.
    #[error("row ownership must list each of the {rows} participants exactly once")]
    RowOwnershipNotBijective { rows: usize },
    /// Each secret needs both a target vector and an access structure.
    #[error("got {targets} target vectors but {structures} access structures")]
    TargetCountMismatch { targets: usize, structures: usize },
    /// Target vectors live in the column space, so they have length l.
    #[error("target vector {index} has length {got}, expected {expected}")]
    TargetLengthMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    /// A zero target would make its secret identically zero.
    #[error("target vector {index} is zero")]
    ZeroTarget { index: usize },
    /// More unit-vector targets were requested than there are columns.
    #[error("cannot derive {secrets} unit targets from {columns} columns")]
    TooManySecrets { secrets: usize, columns: usize },
    /// Secret indices are 1-based and bounded by the secret count.
    #[error("secret index {index} out of range 1..={count}")]
    SecretIndexOutOfRange { index: usize, count: usize },
    /// Recombination was requested for a coalition that is not authorized.
    #[error("coalition is not authorized for secret {secret_index}")]
    NotAuthorized { secret_index: usize },
    /// An authorized coalition has no recombination vector: the span program
    /// does not realize the claimed access structure.
    #[error("span program does not realize secret {secret_index} for an authorized coalition")]
    UnrealizedAccess { secret_index: usize },
}

/// A 1-based participant label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParticipantId(usize);

impl ParticipantId {
    pub fn new(index: usize) -> Result<Self, MspError> {
        if index == 0 {
            return Err(MspError::InvalidParticipantIndex);
        }
        Ok(ParticipantId(index))
    }

    /// The 1-based index.
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ParticipantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// Convenience constructor for a coalition from 1-based indices.
pub fn coalition(indices: &[usize]) -> Result<BTreeSet<ParticipantId>, MspError> {
    indices.iter().map(|&i| ParticipantId::new(i)).collect()
}

/// A monotone access structure, stored as the antichain of minimal
/// authorized sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessStructure {
    minimal_sets: Vec<BTreeSet<ParticipantId>>,
}

impl AccessStructure {
    /// Builds a structure from authorized sets, normalizing to the antichain
    /// of minimal sets: duplicates and supersets of other members are
    /// dropped, and the result is stored in a canonical order.
    pub fn from_minimal_sets(sets: Vec<BTreeSet<ParticipantId>>) -> Result<Self, MspError> {
        if sets.iter().any(|s| s.is_empty()) {
            return Err(MspError::EmptyMinimalSet);
        }
        let mut minimal: Vec<BTreeSet<ParticipantId>> = Vec::new();
        for s in &sets {
            if sets.iter().any(|t| t.is_subset(s) && t != s) || minimal.contains(s) {
                continue;
            }
            minimal.push(s.clone());
        }
        minimal.sort();
        Ok(AccessStructure {
            minimal_sets: minimal,
        })
    }

    /// The canonical antichain of minimal authorized sets.
    pub fn minimal_sets(&self) -> &[BTreeSet<ParticipantId>] {
        &self.minimal_sets
    }

    /// Largest participant index mentioned by any minimal set.
    pub fn max_participant(&self) -> usize {
        self.minimal_sets
            .iter()
            .flat_map(|s| s.iter().map(|p| p.index()))
            .max()
            .unwrap_or(0)
    }

    /// True iff the coalition contains some minimal authorized set.
    pub fn is_authorized(&self, coalition: &BTreeSet<ParticipantId>) -> bool {
        self.minimal_sets.iter().any(|s| s.is_subset(coalition))
    }

    /// All maximal unauthorized subsets of the universe `omega`.
    ///
    /// Enumerates every subset of `omega` (hence the cap) and keeps those
    /// unauthorized coalitions that become authorized whenever any further
    /// member of `omega` joins. Results are sorted canonically.
    pub fn maximal_unauthorized_sets(
        &self,
        omega: &BTreeSet<ParticipantId>,
    ) -> Result<Vec<BTreeSet<ParticipantId>>, MspError> {
        if omega.len() > STRUCTURE_ENUMERATION_CAP {
            return Err(MspError::TooManyParticipants { count: omega.len() });
        }
        for p in self.minimal_sets.iter().flatten() {
            if !omega.contains(p) {
                return Err(MspError::ParticipantOutsideUniverse {
                    participant: p.index(),
                    universe: omega.len(),
                });
            }
        }
        let members: Vec<ParticipantId> = omega.iter().copied().collect();
        let set_of = |mask: u32| -> BTreeSet<ParticipantId> {
            members
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        };
        let mut maximal = Vec::new();
        for mask in 0..1u32 << members.len() {
            let candidate = set_of(mask);
            if self.is_authorized(&candidate) {
                continue;
            }
            let grows_authorized = (0..members.len())
                .filter(|bit| mask >> bit & 1 == 0)
                .all(|bit| self.is_authorized(&set_of(mask | 1 << bit)));
            if grows_authorized {
                maximal.push(candidate);
            }
        }
        maximal.sort();
        Ok(maximal)
    }
}

/// Which span-program condition a coalition failed during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MspCondition {
    /// An authorized coalition has no recombination vector.
    Reconstruction,
    /// An unauthorized coalition has no kernel witness.
    Privacy,
}

/// A single condition violation found by [`MspInstance::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationFailure {
    /// 1-based secret index.
    pub secret_index: usize,
    pub coalition: BTreeSet<ParticipantId>,
    pub condition: MspCondition,
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.coalition.iter().map(|p| p.to_string()).collect();
        let set = format!("{{{}}}", members.join(", "));
        match self.condition {
            MspCondition::Reconstruction => write!(
                f,
                "secret {}: authorized coalition {set} has no recombination vector",
                self.secret_index
            ),
            MspCondition::Privacy => write!(
                f,
                "secret {}: unauthorized coalition {set} has no kernel witness",
                self.secret_index
            ),
        }
    }
}

/// Outcome of exhaustively checking both span-program conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Number of participants in the universe.
    pub participant_count: usize,
    /// Number of secrets checked.
    pub secret_count: usize,
    /// Coalitions examined per secret (2^m, including the empty coalition).
    pub coalitions_per_secret: usize,
    /// Every condition violation found, in enumeration order.
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked {} coalitions x {} secrets over {} participants: ",
            self.coalitions_per_secret, self.secret_count, self.participant_count
        )?;
        if self.is_valid() {
            write!(f, "all conditions hold")
        } else {
            write!(f, "{} violation(s)", self.failures.len())?;
            for failure in &self.failures {
                write!(f, "\n  {failure}")?;
            }
            Ok(())
        }
    }
}

/// A monotone span program instance: the public matrix, row ownership, one
/// target vector and one access structure per secret.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MspInstance {
    matrix: FieldMatrix,
    row_owners: Vec<ParticipantId>,
    targets: Vec<FieldVector>,
    structures: Vec<AccessStructure>,
}

impl MspInstance {
    /// Builds an instance with unit-vector targets e_1..e_n.
    pub fn with_unit_targets(
        matrix: FieldMatrix,
        row_owners: Vec<ParticipantId>,
        secret_count: usize,
        structures: Vec<AccessStructure>,
    ) -> Result<Self, MspError> {
        if secret_count > matrix.cols() {
            return Err(MspError::TooManySecrets {
                secrets: secret_count,
                columns: matrix.cols(),
            });
        }
        let targets = (0..secret_count)
            .map(|i| FieldVector::unit(matrix.modulus(), matrix.cols(), i))
            .collect();
        MspInstance::new(matrix, row_owners, targets, structures)
    }

    /// Builds an instance with explicit target vectors.
    ///
    /// One row per participant (ownership is a bijection onto 1..=m), one
    /// target and one access structure per secret, targets of length l and
    /// nonzero, and every structure confined to the participant universe.
    pub fn new(
        matrix: FieldMatrix,
        row_owners: Vec<ParticipantId>,
        targets: Vec<FieldVector>,
        structures: Vec<AccessStructure>,
    ) -> Result<Self, MspError> {
        let m = matrix.rows();
        if row_owners.len() != m {
            return Err(MspError::RowOwnershipNotBijective { rows: m });
        }
        let mut seen = vec![false; m];
        for owner in &row_owners {
            let idx = owner.index();
            if idx > m || seen[idx - 1] {
                return Err(MspError::RowOwnershipNotBijective { rows: m });
            }
            seen[idx - 1] = true;
        }
        if targets.len() != structures.len() {
            return Err(MspError::TargetCountMismatch {
                targets: targets.len(),
                structures: structures.len(),
            });
        }
        if targets.is_empty() {
            return Err(MspError::TargetCountMismatch {
                targets: 0,
                structures: structures.len(),
            });
        }
        for (i, t) in targets.iter().enumerate() {
            matrix.modulus().check_same(t.modulus())?;
            if t.len() != matrix.cols() {
                return Err(MspError::TargetLengthMismatch {
                    index: i + 1,
                    expected: matrix.cols(),
                    got: t.len(),
                });
            }
            if t.is_zero() {
                return Err(MspError::ZeroTarget { index: i + 1 });
            }
        }
        for s in &structures {
            if s.max_participant() > m {
                return Err(MspError::ParticipantOutsideUniverse {
                    participant: s.max_participant(),
                    universe: m,
                });
            }
        }
        Ok(MspInstance {
            matrix,
            row_owners,
            targets,
            structures,
        })
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn modulus(&self) -> Modulus {
        self.matrix.modulus()
    }

    /// Number of participants m (= number of matrix rows).
    pub fn participant_count(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of secrets n.
    pub fn secret_count(&self) -> usize {
        self.targets.len()
    }

    /// Length l of the distribution vector (= number of matrix columns).
    pub fn distribution_len(&self) -> usize {
        self.matrix.cols()
    }

    /// Owner of each matrix row, in row order.
    pub fn row_owners(&self) -> &[ParticipantId] {
        &self.row_owners
    }

    /// The full participant universe {P1..Pm}.
    pub fn universe(&self) -> BTreeSet<ParticipantId> {
        self.row_owners.iter().copied().collect()
    }

    /// Target vector of a 1-based secret index.
    pub fn target(&self, secret_index: usize) -> Result<&FieldVector, MspError> {
        self.check_secret_index(secret_index)?;
        Ok(&self.targets[secret_index - 1])
    }

    /// Access structure of a 1-based secret index.
    pub fn structure(&self, secret_index: usize) -> Result<&AccessStructure, MspError> {
        self.check_secret_index(secret_index)?;
        Ok(&self.structures[secret_index - 1])
    }

    /// Row index owned by a participant, if any.
    pub fn row_of(&self, participant: ParticipantId) -> Option<usize> {
        self.row_owners.iter().position(|&p| p == participant)
    }

    /// Matrix row indices owned by the coalition, in ascending row order.
    ///
    /// This ordering defines how coalition share vectors and recombination
    /// vectors line up throughout the crate.
    pub fn row_indices_for(&self, coalition: &BTreeSet<ParticipantId>) -> Vec<usize> {
        (0..self.matrix.rows())
            .filter(|&r| coalition.contains(&self.row_owners[r]))
            .collect()
    }

    /// The submatrix M_A of rows owned by the coalition.
    pub fn submatrix_for(&self, coalition: &BTreeSet<ParticipantId>) -> FieldMatrix {
        self.matrix
            .select_rows(&self.row_indices_for(coalition))
            .expect("row indices are in range")
    }

    /// Canonical recombination vector for an authorized coalition.
    ///
    /// Solves M_Aᵀ λ = ζ_i with the canonical (free variables zero) solver;
    /// entries of λ line up with [`Self::row_indices_for`] order. Fails with
    /// [`MspError::NotAuthorized`] when the coalition cannot access the
    /// secret, and with [`MspError::UnrealizedAccess`] when the structure
    /// claims access but the span program cannot deliver it.
    pub fn recombination_vector(
        &self,
        secret_index: usize,
        coalition: &BTreeSet<ParticipantId>,
    ) -> Result<FieldVector, MspError> {
        let structure = self.structure(secret_index)?;
        if !structure.is_authorized(coalition) {
            return Err(MspError::NotAuthorized { secret_index });
        }
        let sub = self.submatrix_for(coalition);
        sub.transpose()
            .solve_linear(&self.targets[secret_index - 1])
            .map_err(|e| match e {
                FieldError::NoSolution => MspError::UnrealizedAccess { secret_index },
                other => MspError::Field(other),
            })
    }

    /// Kernel witness for an unauthorized coalition.
    ///
    /// Finds κ with M_A κ = 0 and ζ_i · κ = 1, the certificate that the
    /// coalition's shares stay consistent with every candidate value of
    /// secret i (shifting the distribution vector by a multiple of κ moves
    /// the secret without touching the coalition's shares). Returns `None`
    /// when no witness exists, which flags an invalid span program.
    pub fn kernel_witness(
        &self,
        secret_index: usize,
        coalition: &BTreeSet<ParticipantId>,
    ) -> Result<Option<FieldVector>, MspError> {
        self.check_secret_index(secret_index)?;
        let sub = self.submatrix_for(coalition);
        let rows = sub.rows();
        let l = self.matrix.cols();
        let mut stacked = Vec::with_capacity((rows + 1) * l);
        for r in 0..rows {
            stacked.extend(sub.row(r).entries().iter().copied());
        }
        stacked.extend(self.targets[secret_index - 1].entries().iter().copied());
        let system = FieldMatrix::new(self.modulus(), rows + 1, l, stacked)?;
        let mut rhs = vec![0; rows + 1];
        rhs[rows] = 1;
        match system.solve_linear(&FieldVector::new(self.modulus(), rhs)) {
            Ok(kappa) => Ok(Some(kappa)),
            Err(FieldError::NoSolution) => Ok(None),
            Err(e) => Err(MspError::Field(e)),
        }
    }

    /// Exhaustively checks both span-program conditions for every coalition
    /// and every secret.
    ///
    /// Authorized coalitions must admit a recombination vector; unauthorized
    /// coalitions must admit a kernel witness. All 2^m coalitions are
    /// enumerated per secret, so the participant count is capped.
    pub fn validate(&self) -> Result<ValidationReport, MspError> {
        let m = self.participant_count();
        if m > STRUCTURE_ENUMERATION_CAP {
            return Err(MspError::TooManyParticipants { count: m });
        }
        let universe: Vec<ParticipantId> = self.universe().into_iter().collect();
        let mut failures = Vec::new();
        for secret_index in 1..=self.secret_count() {
            let structure = &self.structures[secret_index - 1];
            for mask in 0..1u32 << m {
                let coalition: BTreeSet<ParticipantId> = universe
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                if structure.is_authorized(&coalition) {
                    match self.recombination_vector(secret_index, &coalition) {
                        Ok(_) => {}
                        Err(MspError::UnrealizedAccess { .. }) => failures.push(ValidationFailure {
                            secret_index,
                            coalition,
                            condition: MspCondition::Reconstruction,
                        }),
                        Err(e) => return Err(e),
                    }
                } else if self.kernel_witness(secret_index, &coalition)?.is_none() {
                    failures.push(ValidationFailure {
                        secret_index,
                        coalition,
                        condition: MspCondition::Privacy,
                    });
                }
            }
        }
        Ok(ValidationReport {
            participant_count: m,
            secret_count: self.secret_count(),
            coalitions_per_secret: 1usize << m,
            failures,
        })
    }

    fn check_secret_index(&self, secret_index: usize) -> Result<(), MspError> {
        if secret_index == 0 || secret_index > self.targets.len() {
            return Err(MspError::SecretIndexOutOfRange {
                index: secret_index,
                count: self.targets.len(),
            });
        }
        Ok(())
    }
}
