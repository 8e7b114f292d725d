//! End-to-end orchestration: share distribution, credential verification,
//! entangled-qudit recovery, and hash verification of the recovered value.
//!
//! A scenario runs in three phases. The dealer derives shares from the span
//! program, loads the verifier ("black box") with the share diagonal, issues
//! one shadow pair per participant, and publishes one SHA-256 commitment per
//! secret. A recovering coalition then submits shadow pairs; cheaters are
//! named and the run aborts unless the honest remainder is still authorized.
//! Finally the honest coalition runs the recovery circuit — a shared
//! GHZ-type register, one phase rotation per wire carrying λ_j·sh_j, inverse
//! Fourier transforms, and a joint measurement whose digit sum is the secret
//! — and checks the result against the published commitment.
//!
//! All randomness flows from a single seed through fixed, documented
//! substreams, so identical inputs produce byte-identical transcripts.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::access_msp::{
    MspCondition, MspError, MspInstance, ParticipantId, ValidationFailure,
};
use crate::blackbox::{BlackBoxError, BlackBoxState, CheatReport, ShadowPair, Verdict};
use crate::finite_field::{FieldError, FieldMatrix, FieldVector, Modulus};
use crate::lmss::{self, LmssError, ShareBundle};
use crate::qudit_sim::{prepare_ghz, SimError};

/// Seed substream that samples the free coefficients of ρ.
const STREAM_RHO_TAIL: u64 = 0;
/// Seed substream that samples the hiding matrix Y.
const STREAM_HIDING: u64 = 1;
/// Seed substream that samples measurement outcomes.
const STREAM_MEASUREMENT: u64 = 2;

/// Domain-separation prefix for secret commitments.
const HASH_DOMAIN: &[u8] = b"QMSS-v1";

#[derive(Debug, Error)]
pub enum ProtocolError {
    /// The span program cannot realize one of its declared authorized sets.
    #[error("invalid span program: {0}")]
    InvalidMsp(ValidationFailure),
    #[error(
        "the protocol requires row k of the share matrix to belong to P_k; \
         row {row} belongs to {owner}"
    )]
    UnsupportedRowLayout { row: usize, owner: String },
    #[error("expected {expected} secrets, got {got}")]
    SecretCountMismatch { expected: usize, got: usize },
    #[error("secret value {secret} lies outside the field of order {modulus}")]
    SecretOutOfRange { secret: u64, modulus: u64 },
    #[error("secret index {index} is out of range (1..={count})")]
    SecretIndexOutOfRange { index: usize, count: usize },
    #[error("{0} is not part of the scenario universe")]
    UnknownParticipant(String),
    #[error("a behavior is assigned to {0}, which is outside the recovering coalition")]
    BehaviorOutsideCoalition(String),
    #[error("a counterfeit phase offset must lie in 1..={max}, got {got}")]
    InvalidForgeDelta { got: u64, max: u64 },
    #[error("quantum recovery needs at least two wires, got {0}")]
    TooFewWires(usize),
    #[error(
        "recovery inputs disagree on wire count: {shares} shares, \
         {lambda} recombination entries, {offsets} phase offsets"
    )]
    WireCountMismatch {
        shares: usize,
        lambda: usize,
        offsets: usize,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Msp(#[from] MspError),
    #[error(transparent)]
    Lmss(#[from] LmssError),
    #[error(transparent)]
    BlackBox(#[from] BlackBoxError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Everything the dealer needs to start a run.
///
/// The overrides pin the two random draws (ρ's free tail and the hiding
/// matrix) so a scenario can be reproduced value-for-value; when absent they
/// are sampled from dedicated substreams of `seed`.
#[derive(Debug, Clone)]
pub struct DealerConfig {
    pub msp: MspInstance,
    pub secrets: Vec<u64>,
    pub rho_tail_override: Option<Vec<u64>>,
    pub y_override: Option<FieldMatrix>,
    pub seed: u64,
}

/// What one participant does during a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Behavior {
    Honest,
    /// Submit this pair to the verifier instead of the issued credentials.
    ForgeShadows(ShadowPair),
    /// Play the recovery phase with a share offset by `delta` (a counterfeit
    /// share shifts the wire's phase exponent additively; delta 0 would be
    /// honest and is rejected).
    ForgePauli(u64),
}

/// Published SHA-256 digests, one per secret, domain-separated by the field
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashCommitment {
    modulus: Modulus,
    digests: Vec<[u8; 32]>,
}

/// Commitment digest of one secret: SHA-256 over `"QMSS-v1" ‖ d ‖ s`, both
/// integers as 8-byte big-endian.
pub fn hash_secret(d: Modulus, s: u64) -> Result<[u8; 32], ProtocolError> {
    if s >= d.value() {
        return Err(ProtocolError::SecretOutOfRange {
            secret: s,
            modulus: d.value(),
        });
    }
    let mut hasher = Sha256::new();
    hasher.update(HASH_DOMAIN);
    hasher.update(d.value().to_be_bytes());
    hasher.update(s.to_be_bytes());
    Ok(hasher.finalize().into())
}

impl HashCommitment {
    /// Hashes every secret (values must already be canonical residues).
    pub fn publish(d: Modulus, secrets: &[u64]) -> Result<Self, ProtocolError> {
        let digests = secrets
            .iter()
            .map(|&s| hash_secret(d, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HashCommitment {
            modulus: d,
            digests,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn secret_count(&self) -> usize {
        self.digests.len()
    }

    pub fn digest(&self, secret_index: usize) -> Result<&[u8; 32], ProtocolError> {
        self.digests
            .get(secret_index.wrapping_sub(1))
            .ok_or(ProtocolError::SecretIndexOutOfRange {
                index: secret_index,
                count: self.digests.len(),
            })
    }

    /// Lowercase hex rendering of every digest, in secret order.
    pub fn hex_digests(&self) -> Vec<String> {
        self.digests.iter().map(|d| hex_bytes(d)).collect()
    }

    /// True iff `candidate` hashes to the published digest for secret
    /// `secret_index` (1-based). Out-of-field candidates match nothing.
    pub fn verify(&self, secret_index: usize, candidate: u64) -> Result<bool, ProtocolError> {
        let expected = self.digest(secret_index)?;
        if candidate >= self.modulus.value() {
            return Ok(false);
        }
        Ok(&hash_secret(self.modulus, candidate)? == expected)
    }
}

/// True iff the recovered value hashes to the commitment for secret i.
pub fn verify_recovered(
    commitment: &HashCommitment,
    secret_index: usize,
    recovered: u64,
) -> Result<bool, ProtocolError> {
    commitment.verify(secret_index, recovered)
}

fn hex_bytes(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// A seeded generator for one of the protocol's randomness substreams.
fn substream(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Everything the distribution phase produces.
#[derive(Debug, Clone)]
pub struct DistributionOutcome {
    pub bundle: ShareBundle,
    pub state: BlackBoxState,
    pub shadows: Vec<ShadowPair>,
    pub commitment: HashCommitment,
}

/// Runs the dealer's side: derive shares, load the verifier, issue shadows,
/// publish commitments.
///
/// Requires the participant-per-row layout (row k belongs to P_{k+1}) that
/// the verifier's share indexing assumes, and checks that every minimal
/// authorized set can actually reach its secret before anything is dealt.
pub fn distribution_phase(cfg: &DealerConfig) -> Result<DistributionOutcome, ProtocolError> {
    let d = cfg.msp.modulus();
    for (row, owner) in cfg.msp.row_owners().iter().enumerate() {
        if owner.index() != row + 1 {
            return Err(ProtocolError::UnsupportedRowLayout {
                row,
                owner: owner.to_string(),
            });
        }
    }
    if cfg.secrets.len() != cfg.msp.secret_count() {
        return Err(ProtocolError::SecretCountMismatch {
            expected: cfg.msp.secret_count(),
            got: cfg.secrets.len(),
        });
    }
    let secrets: Vec<u64> = cfg.secrets.iter().map(|&s| d.reduce(s)).collect();
    for i in 1..=cfg.msp.secret_count() {
        for set in cfg.msp.structure(i)?.minimal_sets() {
            if cfg.msp.recombination_vector(i, set).is_err() {
                return Err(ProtocolError::InvalidMsp(ValidationFailure {
                    secret_index: i,
                    coalition: set.clone(),
                    condition: MspCondition::Reconstruction,
                }));
            }
        }
    }
    let bundle = match &cfg.rho_tail_override {
        Some(tail) => {
            let tail: Vec<u64> = tail.iter().map(|&x| d.reduce(x)).collect();
            lmss::distribute_with_tail(&cfg.msp, &secrets, &tail)?
        }
        None => lmss::distribute(
            &cfg.msp,
            &secrets,
            &mut substream(cfg.seed, STREAM_RHO_TAIL),
        )?,
    };
    let (state, shadows) = match &cfg.y_override {
        Some(y) => BlackBoxState::build_with_matrix(bundle.shares(), y)?,
        None => BlackBoxState::build(
            bundle.shares(),
            &mut substream(cfg.seed, STREAM_HIDING),
        )?,
    };
    let commitment = HashCommitment::publish(d, &secrets)?;
    Ok(DistributionOutcome {
        bundle,
        state,
        shadows,
        commitment,
    })
}

/// Verifies a coalition's submissions and releases shares to the honest
/// remainder when it stays authorized.
///
/// Thin delegation kept as its own phase so transcripts record the ordering.
#[allow(clippy::type_complexity)]
pub fn cheating_identification(
    state: &BlackBoxState,
    submissions: &BTreeMap<ParticipantId, ShadowPair>,
    structure: &crate::access_msp::AccessStructure,
) -> Result<(CheatReport, Option<BTreeMap<ParticipantId, u64>>), ProtocolError> {
    Ok(state.identify_and_release(submissions, structure)?)
}

/// The recovery circuit's observable results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryOutcome {
    /// Per-wire phase exponents λ_j·sh_j (+ any counterfeit offset), mod d.
    pub exponents: Vec<u64>,
    /// Per-wire measurement digits.
    pub outcomes: Vec<u64>,
    /// Digit sum mod d.
    pub recovered: u64,
}

/// Runs the quantum recovery circuit for one coalition.
///
/// Wires are ordered like `coalition_shares`/`lambda`. `pauli_offsets`
/// carries one additive phase offset per wire — zero for honest players,
/// the counterfeit-share delta for dishonest ones. The circuit is GHZ
/// preparation, one diagonal phase per wire, per-wire inverse Fourier
/// transforms, then a full measurement; the recovered value is the digit
/// sum mod d, which with honest offsets equals λ·sh on every sample.
pub fn recovery_phase(
    d: Modulus,
    coalition_shares: &FieldVector,
    lambda: &FieldVector,
    pauli_offsets: &[u64],
    rng: &mut impl Rng,
) -> Result<RecoveryOutcome, ProtocolError> {
    d.check_same(coalition_shares.modulus())?;
    d.check_same(lambda.modulus())?;
    let t = coalition_shares.len();
    if lambda.len() != t || pauli_offsets.len() != t {
        return Err(ProtocolError::WireCountMismatch {
            shares: t,
            lambda: lambda.len(),
            offsets: pauli_offsets.len(),
        });
    }
    if t < 2 {
        return Err(ProtocolError::TooFewWires(t));
    }
    let exponents: Vec<u64> = (0..t)
        .map(|j| {
            d.add(
                d.mul(lambda.get(j), coalition_shares.get(j)),
                d.reduce(pauli_offsets[j]),
            )
        })
        .collect();
    let mut reg = prepare_ghz(d.value() as usize, t)?;
    for (j, &e) in exponents.iter().enumerate() {
        reg.apply_shift_phase(j + 1, 0, e)?;
    }
    for j in 1..=t {
        reg.apply_iqft(j)?;
    }
    let (digits, _) = reg.measure_all(rng);
    let outcomes: Vec<u64> = digits.iter().map(|&x| x as u64).collect();
    let recovered = outcomes.iter().fold(0, |acc, &x| d.add(acc, x));
    Ok(RecoveryOutcome {
        exponents,
        outcomes,
        recovered,
    })
}

/// One ordered step in the run log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseRecord {
    pub seq: usize,
    pub phase: String,
    pub detail: String,
}

/// A shadow pair as issued, keyed by participant label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowRecord {
    pub participant: String,
    pub first: Vec<u64>,
    pub second: Vec<u64>,
}

/// Cheat-phase verdicts in serializable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheatReportRecord {
    /// "honest" or "cheater: <reason>" per submitting participant.
    pub verdicts: BTreeMap<String, String>,
    pub aborted: bool,
}

/// Recovery-phase data in serializable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryRecord {
    /// Wire order: participant labels, ascending.
    pub wires: Vec<String>,
    pub lambda: Vec<u64>,
    pub exponents: Vec<u64>,
    pub outcomes: Vec<u64>,
    pub recovered: u64,
}

/// Complete, deterministic record of one scenario run.
///
/// Serializes to JSON with stable field names; identical config, behaviors,
/// and seed give byte-identical serializations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolTranscript {
    pub schema_version: u32,
    pub seed: u64,
    pub modulus: u64,
    pub target_secret: usize,
    pub coalition: Vec<String>,
    pub phases: Vec<PhaseRecord>,
    pub issued_shares: Vec<u64>,
    pub issued_shadows: Vec<ShadowRecord>,
    /// Hex SHA-256 commitment per secret.
    pub commitments: Vec<String>,
    pub cheat_report: CheatReportRecord,
    /// Shares the verifier released, present unless the run aborted.
    pub released_shares: Option<BTreeMap<String, u64>>,
    /// Recovery data, present unless the run aborted.
    pub recovery: Option<RecoveryRecord>,
    /// Whether the recovered value matches the commitment; absent on abort.
    pub hash_check: Option<bool>,
    pub aborted: bool,
}

impl ProtocolTranscript {
    /// Recovered value, when the run got that far.
    pub fn recovered(&self) -> Option<u64> {
        self.recovery.as_ref().map(|r| r.recovered)
    }
}

fn verdict_text(verdict: &Verdict) -> String {
    match verdict {
        Verdict::Honest => "honest".to_string(),
        Verdict::Cheater(reason) => format!("cheater: {reason}"),
    }
}

/// Runs the full pipeline for one secret and one recovering coalition.
///
/// `behaviors` assigns non-honest roles to coalition members; everyone
/// unlisted plays honestly. Verification failures and aborts are encoded in
/// the transcript, not as errors.
pub fn run_scenario(
    cfg: &DealerConfig,
    target_secret: usize,
    coalition: &BTreeSet<ParticipantId>,
    behaviors: &BTreeMap<ParticipantId, Behavior>,
) -> Result<ProtocolTranscript, ProtocolError> {
    let d = cfg.msp.modulus();
    let universe = cfg.msp.universe();
    if let Some(outsider) = coalition.iter().find(|p| !universe.contains(p)) {
        return Err(ProtocolError::UnknownParticipant(outsider.to_string()));
    }
    if let Some(outsider) = behaviors.keys().find(|p| !coalition.contains(p)) {
        return Err(ProtocolError::BehaviorOutsideCoalition(
            outsider.to_string(),
        ));
    }
    for behavior in behaviors.values() {
        if let Behavior::ForgePauli(delta) = behavior {
            if *delta == 0 || *delta >= d.value() {
                return Err(ProtocolError::InvalidForgeDelta {
                    got: *delta,
                    max: d.value() - 1,
                });
            }
        }
    }
    let structure = cfg.msp.structure(target_secret)?.clone();

    let mut phases = Vec::new();
    let log = |phase: &str, detail: String, phases: &mut Vec<PhaseRecord>| {
        phases.push(PhaseRecord {
            seq: phases.len() + 1,
            phase: phase.to_string(),
            detail,
        });
    };

    let dist = distribution_phase(cfg)?;
    log(
        "distribution",
        format!(
            "dealt {} shares, issued {} shadow pairs, published {} commitments",
            dist.bundle.shares().len(),
            dist.shadows.len(),
            dist.commitment.secret_count()
        ),
        &mut phases,
    );

    let mut submissions = BTreeMap::new();
    for &p in coalition {
        let issued = &dist.shadows[p.index() - 1];
        let submitted = match behaviors.get(&p) {
            Some(Behavior::ForgeShadows(fake)) => fake.clone(),
            _ => issued.clone(),
        };
        submissions.insert(p, submitted);
    }
    let (report, released) = cheating_identification(&dist.state, &submissions, &structure)?;
    log(
        "cheat_identification",
        format!(
            "{} submissions, {} cheater(s), aborted: {}",
            submissions.len(),
            report.cheaters().len(),
            report.aborted
        ),
        &mut phases,
    );

    let issued_shadows = dist
        .shadows
        .iter()
        .enumerate()
        .map(|(k, pair)| ShadowRecord {
            participant: format!("P{}", k + 1),
            first: pair.first.entries().to_vec(),
            second: pair.second.entries().to_vec(),
        })
        .collect();
    let cheat_record = CheatReportRecord {
        verdicts: report
            .verdicts
            .iter()
            .map(|(p, v)| (p.to_string(), verdict_text(v)))
            .collect(),
        aborted: report.aborted,
    };
    let base = ProtocolTranscript {
        schema_version: 1,
        seed: cfg.seed,
        modulus: d.value(),
        target_secret,
        coalition: coalition.iter().map(|p| p.to_string()).collect(),
        phases: Vec::new(),
        issued_shares: dist.bundle.shares().entries().to_vec(),
        issued_shadows,
        commitments: dist.commitment.hex_digests(),
        cheat_report: cheat_record,
        released_shares: None,
        recovery: None,
        hash_check: None,
        aborted: report.aborted,
    };

    let Some(released) = released else {
        log(
            "abort",
            "honest remainder lost authorization; nothing released".to_string(),
            &mut phases,
        );
        return Ok(ProtocolTranscript { phases, ..base });
    };

    let members: Vec<ParticipantId> = released.keys().copied().collect();
    let honest_set: BTreeSet<ParticipantId> = members.iter().copied().collect();
    if members.len() < 2 {
        return Err(ProtocolError::TooFewWires(members.len()));
    }
    let lambda = cfg.msp.recombination_vector(target_secret, &honest_set)?;
    let shares_vec = FieldVector::new(d, members.iter().map(|p| released[p]).collect());
    let offsets: Vec<u64> = members
        .iter()
        .map(|p| match behaviors.get(p) {
            Some(Behavior::ForgePauli(delta)) => *delta,
            _ => 0,
        })
        .collect();
    let recovery = recovery_phase(
        d,
        &shares_vec,
        &lambda,
        &offsets,
        &mut substream(cfg.seed, STREAM_MEASUREMENT),
    )?;
    let verified = dist.commitment.verify(target_secret, recovery.recovered)?;
    log(
        "recovery",
        format!(
            "{} wires measured, digit sum {} mod {}",
            members.len(),
            recovery.recovered,
            d.value()
        ),
        &mut phases,
    );
    log(
        "hash_check",
        format!(
            "recovered value {} the published commitment",
            if verified { "matches" } else { "does not match" }
        ),
        &mut phases,
    );

    Ok(ProtocolTranscript {
        phases,
        released_shares: Some(
            released.iter().map(|(p, &sh)| (p.to_string(), sh)).collect(),
        ),
        recovery: Some(RecoveryRecord {
            wires: members.iter().map(|p| p.to_string()).collect(),
            lambda: lambda.entries().to_vec(),
            exponents: recovery.exponents.clone(),
            outcomes: recovery.outcomes.clone(),
            recovered: recovery.recovered,
        }),
        hash_check: Some(verified),
        ..base
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::access_msp::coalition;
    use crate::demo;

    fn z7() -> Modulus {
        Modulus::new(7).unwrap()
    }

    #[test]
    fn commitment_digests_are_pinned_and_domain_separated() {
        let h72 = hash_secret(z7(), 2).unwrap();
        assert_eq!(
            hex_bytes(&h72),
            "f468eabc4fcb4201ada4f9daea8a58ebb9afd2165401f5d4f1c515bf455c359f"
        );
        let h75 = hash_secret(z7(), 5).unwrap();
        assert_eq!(
            hex_bytes(&h75),
            "e749f359f41d2670fce4b8171405fe7970c5e3dc04cb9fbe7922aef54740f57b"
        );
        let h112 = hash_secret(Modulus::new(11).unwrap(), 2).unwrap();
        assert_eq!(
            hex_bytes(&h112),
            "355bd4bf0f4cf6099c6985d00e63b59f2d9511b323bd28e1de8f73a2064ddb00"
        );
        assert_ne!(h72, h75);
        assert_ne!(h72, h112);
        assert!(matches!(
            hash_secret(z7(), 7),
            Err(ProtocolError::SecretOutOfRange { .. })
        ));
    }

    #[test]
    fn commitment_verifies_only_the_committed_value() {
        let commitment = HashCommitment::publish(z7(), &[2, 5]).unwrap();
        assert!(commitment.verify(1, 2).unwrap());
        assert!(commitment.verify(2, 5).unwrap());
        assert!(!commitment.verify(1, 3).unwrap());
        assert!(!commitment.verify(1, 9).unwrap());
        assert!(matches!(
            commitment.verify(3, 0),
            Err(ProtocolError::SecretIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn distribution_reproduces_the_bundled_scenario() {
        let cfg = demo::dealer_config().unwrap();
        let dist = distribution_phase(&cfg).unwrap();
        assert_eq!(dist.bundle.shares(), &demo::shares());
        assert_eq!(dist.bundle.rho(), &demo::rho());
        assert_eq!(dist.shadows.len(), 4);
        assert_eq!(
            dist.commitment.hex_digests()[0],
            "f468eabc4fcb4201ada4f9daea8a58ebb9afd2165401f5d4f1c515bf455c359f"
        );
    }

    #[test]
    fn distribution_is_deterministic_without_overrides() {
        let mut cfg = demo::dealer_config().unwrap();
        cfg.rho_tail_override = None;
        cfg.y_override = None;
        cfg.seed = 41;
        let a = distribution_phase(&cfg).unwrap();
        let b = distribution_phase(&cfg).unwrap();
        assert_eq!(a.bundle.rho(), b.bundle.rho());
        assert_eq!(a.shadows, b.shadows);
        assert_eq!(a.bundle.secrets(&cfg.msp).unwrap(), vec![2, 5]);
        cfg.seed = 42;
        let c = distribution_phase(&cfg).unwrap();
        assert_ne!(a.bundle.rho(), c.bundle.rho());
    }

    #[test]
    fn distribution_rejects_unrealizable_structures() {
        // Declaring {P3,P4} authorized for secret 1 is unrealizable: rows 3
        // and 4 cannot express e1.
        let owners = (1..=4)
            .map(|i| ParticipantId::new(i).unwrap())
            .collect::<Vec<_>>();
        let gamma1 = crate::access_msp::AccessStructure::from_minimal_sets(vec![coalition(
            &[3, 4],
        )
        .unwrap()])
        .unwrap();
        let gamma2 = crate::access_msp::AccessStructure::from_minimal_sets(vec![coalition(
            &[1, 2, 3, 4],
        )
        .unwrap()])
        .unwrap();
        let msp = MspInstance::with_unit_targets(
            demo::share_matrix(),
            owners,
            2,
            vec![gamma1, gamma2],
        )
        .unwrap();
        let cfg = DealerConfig {
            msp,
            secrets: vec![2, 5],
            rho_tail_override: None,
            y_override: None,
            seed: 1,
        };
        match distribution_phase(&cfg) {
            Err(ProtocolError::InvalidMsp(failure)) => {
                assert_eq!(failure.secret_index, 1);
                assert_eq!(failure.coalition, coalition(&[3, 4]).unwrap());
            }
            other => panic!("expected InvalidMsp, got {other:?}"),
        }
    }

    #[test]
    fn recovery_matches_the_classical_reconstruction() {
        // Coalition {P1,P2,P3} on the bundled scenario: exponents
        // (4·4, 3·5, 1·6) = (2,1,6) mod 7, digit sums always 2.
        let shares = FieldVector::new(z7(), vec![4, 5, 6]);
        let lambda = FieldVector::new(z7(), vec![4, 3, 1]);
        for seed in 0..20 {
            let mut rng = substream(seed, STREAM_MEASUREMENT);
            let out = recovery_phase(z7(), &shares, &lambda, &[0, 0, 0], &mut rng).unwrap();
            assert_eq!(out.exponents, vec![2, 1, 6]);
            assert_eq!(out.recovered, 2);
            assert_eq!(
                out.recovered,
                lmss::reconstruct_secret(&shares, &lambda).unwrap()
            );
        }
    }

    #[test]
    fn counterfeit_phase_shifts_the_recovered_value_by_delta() {
        let shares = FieldVector::new(z7(), vec![4, 5, 6]);
        let lambda = FieldVector::new(z7(), vec![4, 3, 1]);
        for delta in 1..7 {
            let mut rng = substream(delta, STREAM_MEASUREMENT);
            let out =
                recovery_phase(z7(), &shares, &lambda, &[0, delta, 0], &mut rng).unwrap();
            assert_eq!(out.recovered, z7().add(2, delta));
        }
    }

    #[test]
    fn recovery_rejects_degenerate_wiring() {
        let shares = FieldVector::new(z7(), vec![4]);
        let lambda = FieldVector::new(z7(), vec![2]);
        let mut rng = substream(0, STREAM_MEASUREMENT);
        assert!(matches!(
            recovery_phase(z7(), &shares, &lambda, &[0], &mut rng),
            Err(ProtocolError::TooFewWires(1))
        ));
        let shares = FieldVector::new(z7(), vec![4, 5]);
        assert!(matches!(
            recovery_phase(z7(), &shares, &lambda, &[0], &mut rng),
            Err(ProtocolError::WireCountMismatch { .. })
        ));
    }

    #[test]
    fn honest_run_recovers_both_bundled_secrets() {
        let cfg = demo::dealer_config().unwrap();
        let t1 = run_scenario(
            &cfg,
            1,
            &demo::first_secret_coalition().unwrap(),
            &BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(t1.recovered(), Some(2));
        assert_eq!(t1.hash_check, Some(true));
        assert!(!t1.aborted);
        let t2 = run_scenario(&cfg, 2, &cfg.msp.universe(), &BTreeMap::new()).unwrap();
        assert_eq!(t2.recovered(), Some(5));
        assert_eq!(t2.hash_check, Some(true));
        let rec = t2.recovery.unwrap();
        assert_eq!(rec.lambda, vec![6, 1, 3, 0]);
        assert_eq!(rec.exponents, vec![3, 5, 4, 0]);
    }

    #[test]
    fn transcripts_are_byte_identical_across_repeat_runs() {
        let cfg = demo::dealer_config_with_seed(123).unwrap();
        let coalition = demo::first_secret_coalition().unwrap();
        let a = run_scenario(&cfg, 1, &coalition, &BTreeMap::new()).unwrap();
        let b = run_scenario(&cfg, 1, &coalition, &BTreeMap::new()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn forged_shadows_abort_when_the_rest_lose_authorization() {
        // P2 is in every minimal set of the first structure, so unmasking
        // P2 leaves an unauthorized remainder.
        let cfg = demo::dealer_config().unwrap();
        let d = z7();
        let fake = ShadowPair::new(
            FieldVector::new(d, vec![1, 0, 0, 0, 0, 0, 0, 0]),
            FieldVector::new(d, vec![0, 1, 0, 0, 0, 0, 0, 0]),
        );
        let behaviors: BTreeMap<_, _> = [(
            ParticipantId::new(2).unwrap(),
            Behavior::ForgeShadows(fake),
        )]
        .into();
        let t = run_scenario(
            &cfg,
            1,
            &demo::first_secret_coalition().unwrap(),
            &behaviors,
        )
        .unwrap();
        assert!(t.aborted);
        assert_eq!(t.recovery, None);
        assert_eq!(t.hash_check, None);
        assert!(t.cheat_report.verdicts["P2"].starts_with("cheater"));
    }

    #[test]
    fn forged_shadows_are_survivable_when_the_rest_stay_authorized() {
        // The full universe opens secret 1; unmasking P4 leaves {P1,P2,P3},
        // still authorized, so the run continues and recovers 2.
        let cfg = demo::dealer_config().unwrap();
        let d = z7();
        let fake = ShadowPair::new(
            FieldVector::new(d, vec![1, 0, 0, 0, 0, 0, 0, 0]),
            FieldVector::new(d, vec![0, 1, 0, 0, 0, 0, 0, 0]),
        );
        let behaviors: BTreeMap<_, _> = [(
            ParticipantId::new(4).unwrap(),
            Behavior::ForgeShadows(fake),
        )]
        .into();
        let t = run_scenario(&cfg, 1, &cfg.msp.universe(), &behaviors).unwrap();
        assert!(!t.aborted);
        assert_eq!(t.recovered(), Some(2));
        assert_eq!(t.hash_check, Some(true));
        let released = t.released_shares.unwrap();
        assert_eq!(released.len(), 3);
        assert!(!released.contains_key("P4"));
    }

    #[test]
    fn counterfeit_share_is_caught_by_the_hash_check() {
        let cfg = demo::dealer_config().unwrap();
        let behaviors: BTreeMap<_, _> =
            [(ParticipantId::new(3).unwrap(), Behavior::ForgePauli(3))].into();
        let t = run_scenario(
            &cfg,
            1,
            &demo::first_secret_coalition().unwrap(),
            &behaviors,
        )
        .unwrap();
        assert!(!t.aborted);
        assert_eq!(t.recovered(), Some(z7().add(2, 3)));
        assert_eq!(t.hash_check, Some(false));
    }

    #[test]
    fn scenario_rejects_malformed_inputs() {
        let cfg = demo::dealer_config().unwrap();
        let outsider = coalition(&[1, 2, 5]).unwrap();
        assert!(matches!(
            run_scenario(&cfg, 1, &outsider, &BTreeMap::new()),
            Err(ProtocolError::UnknownParticipant(_))
        ));
        let behaviors: BTreeMap<_, _> =
            [(ParticipantId::new(4).unwrap(), Behavior::ForgePauli(1))].into();
        assert!(matches!(
            run_scenario(
                &cfg,
                1,
                &demo::first_secret_coalition().unwrap(),
                &behaviors
            ),
            Err(ProtocolError::BehaviorOutsideCoalition(_))
        ));
        let behaviors: BTreeMap<_, _> =
            [(ParticipantId::new(1).unwrap(), Behavior::ForgePauli(0))].into();
        assert!(matches!(
            run_scenario(
                &cfg,
                1,
                &demo::first_secret_coalition().unwrap(),
                &behaviors
            ),
            Err(ProtocolError::InvalidForgeDelta { .. })
        ));
    }

    #[test]
    fn smallest_full_pipeline_runs_end_to_end() {
        // Two participants over Z_3, one secret, both required: M = I_2,
        // target (1,1), so s = rho_1 + rho_2.
        let d = Modulus::new(3).unwrap();
        let matrix = FieldMatrix::new(d, 2, 2, vec![1, 0, 0, 1]).unwrap();
        let owners = vec![
            ParticipantId::new(1).unwrap(),
            ParticipantId::new(2).unwrap(),
        ];
        let structure = crate::access_msp::AccessStructure::from_minimal_sets(vec![
            coalition(&[1, 2]).unwrap(),
        ])
        .unwrap();
        let msp = MspInstance::new(
            matrix,
            owners,
            vec![FieldVector::new(d, vec![1, 1])],
            vec![structure],
        )
        .unwrap();
        for seed in 0..10 {
            let cfg = DealerConfig {
                msp: msp.clone(),
                secrets: vec![2],
                rho_tail_override: None,
                y_override: None,
                seed,
            };
            let t = run_scenario(&cfg, 1, &coalition(&[1, 2]).unwrap(), &BTreeMap::new())
                .unwrap();
            assert_eq!(t.recovered(), Some(2));
            assert_eq!(t.hash_check, Some(true));
        }
    }
}
