//! Acceptance gate: eight end-to-end checks across the whole toolkit, one
//! test per criterion, each printing a single `[criterion N] PASS`/`FAIL`
//! line (run with `--nocapture` to see the lines for passing tests).
//!
//! Criterion 8 is expected to stay red: its bundled-scenario half asserts a
//! privacy property the bundled share matrix does not actually have. The
//! test states the true failure rather than papering over it; see the
//! panic message for the exact coalitions involved.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qmss_core::access_msp::{AccessStructure, MspInstance, ParticipantId};
use qmss_core::blackbox::{BlackBoxState, ShadowPair, Verdict};
use qmss_core::demo;
use qmss_core::finite_field::{FieldMatrix, FieldVector, Modulus};
use qmss_core::lmss::{self, privacy_counterexample};
use qmss_core::noise_analysis::{fidelity_formula, fidelity_simulated, mu_grid};
use qmss_core::protocol::{run_scenario, Behavior, DealerConfig};
use qmss_core::qudit_sim::channel::{kraus_completeness_defect, ChannelKind};
use qmss_core::qudit_sim::recovery_state;

fn pass(criterion: usize, summary: &str) {
    println!("[criterion {criterion}] PASS — {summary}");
}

fn fail(criterion: usize, summary: &str) -> String {
    let line = format!("[criterion {criterion}] FAIL — {summary}");
    println!("{line}");
    line
}

fn participants(indices: &[usize]) -> BTreeSet<ParticipantId> {
    indices
        .iter()
        .map(|&k| ParticipantId::new(k).expect("valid index"))
        .collect()
}

fn set_label(set: &BTreeSet<ParticipantId>) -> String {
    let names: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

// ---------------------------------------------------------------------------
// Criterion 1: the bundled four-participant scenario reproduces its known
// values end to end — shares, all eight credential vectors, both recovered
// secrets, both hash checks — in under a second.
// ---------------------------------------------------------------------------

/// The credential pairs as commonly tabulated for this scenario, already
/// reduced mod 7. Within each pair the order is immaterial (the pair is a
/// basis of the eigenspace), so the checks below compare as sets.
const TABULATED_SHADOWS: [([u64; 8], [u64; 8]); 4] = [
    ([0, 0, 1, 0, 0, 6, 0, 0], [0, 0, 0, 1, 0, 0, 0, 0]),
    ([1, 0, 0, 0, 0, 0, 0, 6], [0, 1, 0, 0, 0, 0, 0, 0]),
    ([0, 0, 0, 0, 1, 0, 0, 0], [6, 0, 0, 0, 0, 0, 1, 1]),
    ([0, 0, 0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 1, 0, 0]),
];

#[test]
fn criterion_1_bundled_scenario_reproduces_exactly() {
    let started = Instant::now();

    let cfg = demo::dealer_config().expect("bundled config builds");
    let no_cheaters = BTreeMap::new();
    let first = run_scenario(
        &cfg,
        1,
        &demo::first_secret_coalition().expect("coalition builds"),
        &no_cheaters,
    )
    .expect("first run completes");
    let second =
        run_scenario(&cfg, 2, &cfg.msp.universe(), &no_cheaters).expect("second run completes");

    assert_eq!(first.issued_shares, vec![4, 5, 6, 3], "shares sh = Mρ");
    for (k, record) in first.issued_shadows.iter().enumerate() {
        let issued: BTreeSet<Vec<u64>> =
            [record.first.clone(), record.second.clone()].into_iter().collect();
        let expected: BTreeSet<Vec<u64>> = [
            TABULATED_SHADOWS[k].0.to_vec(),
            TABULATED_SHADOWS[k].1.to_vec(),
        ]
        .into_iter()
        .collect();
        assert_eq!(issued, expected, "credential pair of P{}", k + 1);
    }
    assert_eq!(first.recovered(), Some(2), "secret 1 via {{P1,P2,P3}}");
    assert_eq!(second.recovered(), Some(5), "secret 2 via the full set");
    assert_eq!(first.hash_check, Some(true));
    assert_eq!(second.hash_check, Some(true));
    assert!(!first.aborted && !second.aborted);

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "must finish in under a second, took {elapsed:?}"
    );
    pass(
        1,
        "shares (4,5,6,3), all eight credential vectors, s1=2 and s2=5 recovered with hashes ok",
    );
}

// ---------------------------------------------------------------------------
// Criterion 2: known-bad reference values stay visibly rejected. A widely
// copied tabulation of this scenario's verifier matrix and of one
// recombination vector contains genuine errors; these regression fixtures
// keep the discrepancies detected rather than silently absorbed.
// ---------------------------------------------------------------------------

/// Tabulated X with signed entries as written (−1, −2 are residues 6, 5).
/// Row 4 (index 3) is genuinely wrong: it carries a stray 1 in column 7.
/// Rows 1, 6, and 8 merely use negative representatives of the correct
/// residues, so normalization must treat them as equal.
const TABULATED_X: [[i64; 8]; 8] = [
    [5, 0, 0, 0, 0, 0, -1, 0],
    [0, 5, 0, 0, 0, 0, 0, 0],
    [0, 0, 4, 0, 0, 0, 0, 0],
    [0, 0, 0, 4, 0, 0, 1, 0],
    [0, 0, 0, 0, 6, 0, 0, 0],
    [0, 0, -1, 0, 0, 3, 0, 0],
    [0, 0, 0, 0, 0, 0, 6, 0],
    [-2, 0, 0, 0, 0, 0, 1, 3],
];

/// A tabulated recombination vector for secret 2 over the full set that
/// fails both defining identities (Mᵀλ = ζ₂ and λ·sh = s₂).
const TABULATED_BAD_LAMBDA: [u64; 4] = [4, 5, 4, 6];

/// Tabulated recombination vectors for secret 1 that are all correct,
/// pinning down that exactly one of the four tabulated vectors is bad.
const TABULATED_GOOD_LAMBDAS: [(&[usize], &[u64]); 3] = [
    (&[1, 2, 3], &[4, 3, 1]),
    (&[1, 2, 4], &[2, 0, 5]),
    (&[1, 2, 3, 4], &[4, 3, 1, 0]),
];

#[test]
fn criterion_2_tabulation_errata_are_confirmed_not_absorbed() {
    let d = demo::modulus();
    let shares = demo::shares();
    let (state, _issued) = BlackBoxState::build_with_matrix(&shares, &demo::hiding_matrix())
        .expect("verifier builds");
    let recomputed = state.x_matrix();

    // The tabulated X differs from the recomputed Y⁻¹ΣY in row 4 and only
    // in row 4 once both are reduced to canonical residues.
    let mut differing_rows = Vec::new();
    for r in 0..8 {
        let tabulated_row = FieldVector::from_signed(d, &TABULATED_X[r]);
        if tabulated_row != recomputed.row(r) {
            differing_rows.push(r + 1);
        }
    }
    assert_eq!(
        differing_rows,
        vec![4],
        "the only genuine discrepancy is row 4"
    );
    assert_eq!(recomputed.get(3, 6), 0, "recomputed row 4 has no column-7 entry");
    assert_eq!(d.reduce_signed(TABULATED_X[3][6]), 1, "tabulated row 4 does");
    // Row 6 as written uses −1 for residue 6; it is the same row.
    assert_eq!(
        FieldVector::from_signed(d, &TABULATED_X[5]),
        recomputed.row(5),
        "row 6 differs only in its choice of representative"
    );

    // Every tabulated credential vector is an eigenvector of the
    // recomputed X for its participant's stored share.
    let share_values = [4u64, 5, 6, 3];
    for (k, (a, b)) in TABULATED_SHADOWS.iter().enumerate() {
        for vec_entries in [a, b] {
            let y = FieldVector::new(d, vec_entries.to_vec());
            let image = recomputed.mat_vec_mul(&y).expect("dimensions match");
            assert_eq!(
                image,
                y.scale(share_values[k]),
                "tabulated vector of P{} is an eigenvector for {}",
                k + 1,
                share_values[k]
            );
        }
    }

    // The tabulated recombination vector for secret 2 fails both identities…
    let msp = demo::msp().expect("bundled span program");
    let omega = msp.universe();
    let bad = FieldVector::new(d, TABULATED_BAD_LAMBDA.to_vec());
    let combined = msp
        .submatrix_for(&omega)
        .transpose()
        .mat_vec_mul(&bad)
        .expect("dimensions match");
    assert_ne!(&combined, msp.target(2).expect("target 2"), "Mᵀλ misses ζ₂");
    assert_eq!(
        lmss::reconstruct_secret(&shares, &bad).expect("dot product"),
        6,
        "the bad vector reconstructs 6, not the true 5"
    );
    // …while the canonical derived vector satisfies both and yields 5.
    let canonical = msp.recombination_vector(2, &omega).expect("derivable");
    assert_eq!(canonical, FieldVector::new(d, vec![6, 1, 3, 0]));
    let canonical_combined = msp
        .submatrix_for(&omega)
        .transpose()
        .mat_vec_mul(&canonical)
        .expect("dimensions match");
    assert_eq!(&canonical_combined, msp.target(2).expect("target 2"));
    assert_eq!(lmss::reconstruct_secret(&shares, &canonical).expect("dot"), 5);

    // The three tabulated vectors for secret 1 are all valid, so exactly
    // one of the four published recombination vectors is wrong.
    for (indices, lambda) in TABULATED_GOOD_LAMBDAS {
        let coalition = participants(indices);
        let lambda = FieldVector::new(d, lambda.to_vec());
        let combined = msp
            .submatrix_for(&coalition)
            .transpose()
            .mat_vec_mul(&lambda)
            .expect("dimensions match");
        assert_eq!(&combined, msp.target(1).expect("target 1"));
        let coalition_shares = lmss::distribute_with_tail(&msp, &[2, 5], &[1, 4])
            .expect("bundled distribution")
            .coalition_shares(&msp, &coalition);
        assert_eq!(
            lmss::reconstruct_secret(&coalition_shares, &lambda).expect("dot"),
            2
        );
    }

    pass(
        2,
        "X discrepancy is exactly row 4, all tabulated eigenvectors check out, \
         the bad λ fails and the derived λ yields 5",
    );
}

// ---------------------------------------------------------------------------
// Criterion 3: quantum recovery is exact for d ∈ {2,3,5,7}, t ∈ {2,3,4},
// 100 seeds each, and the pre-measurement support sits exactly on digit
// strings whose sum is the secret.
// ---------------------------------------------------------------------------

/// A t-participant sum-sharing program: identity share matrix, single
/// secret with target (1,…,1), so sh = ρ and s = Σρ_j; only the full set
/// is authorized.
fn sum_sharing_msp(p: u64, t: usize) -> MspInstance {
    let d = Modulus::new(p).expect("prime");
    let matrix = FieldMatrix::identity(d, t);
    let owners: Vec<ParticipantId> = (1..=t)
        .map(|k| ParticipantId::new(k).expect("valid"))
        .collect();
    let full: BTreeSet<ParticipantId> = owners.iter().copied().collect();
    let structure = AccessStructure::from_minimal_sets(vec![full]).expect("non-empty");
    MspInstance::new(
        matrix,
        owners,
        vec![FieldVector::new(d, vec![1; t])],
        vec![structure],
    )
    .expect("valid program")
}

#[test]
fn criterion_3_recovery_is_exact_across_dimensions_and_sizes() {
    let started = Instant::now();
    let mut runs = 0u32;

    for p in [2u64, 3, 5, 7] {
        for t in [2usize, 3, 4] {
            let msp = sum_sharing_msp(p, t);
            let coalition = msp.universe();
            let no_cheaters = BTreeMap::new();
            for seed in 0..100u64 {
                let secret = (seed * 7 + 3) % p;
                let cfg = DealerConfig {
                    msp: msp.clone(),
                    secrets: vec![secret],
                    rho_tail_override: None,
                    y_override: None,
                    seed,
                };
                let transcript = run_scenario(&cfg, 1, &coalition, &no_cheaters)
                    .expect("honest run completes");
                assert_eq!(
                    transcript.recovered(),
                    Some(secret),
                    "d={p} t={t} seed={seed}"
                );
                assert_eq!(transcript.hash_check, Some(true), "d={p} t={t} seed={seed}");

                // Pre-measurement support: exactly the digit strings with
                // Σx_j ≡ secret, all with equal magnitude d^(−(t−1)/2).
                let recovery = transcript.recovery.as_ref().expect("not aborted");
                let state =
                    recovery_state(p as usize, &recovery.exponents).expect("state builds");
                let expected_magnitude = (p as f64).powf(-((t as f64 - 1.0) / 2.0));
                let mut support = 0usize;
                for (index, amp) in state.amplitudes().iter().enumerate() {
                    let digit_sum: usize = state.digits_of(index).iter().sum();
                    if amp.norm() > 1e-10 {
                        support += 1;
                        assert_eq!(
                            (digit_sum as u64) % p,
                            secret,
                            "support stays on the congruence class (d={p} t={t} seed={seed})"
                        );
                        assert!(
                            (amp.norm() - expected_magnitude).abs() < 1e-10,
                            "equal magnitudes (d={p} t={t} seed={seed})"
                        );
                    } else {
                        assert_ne!(
                            (digit_sum as u64) % p,
                            secret,
                            "no amplitude of the class is missing (d={p} t={t} seed={seed})"
                        );
                    }
                }
                assert_eq!(support, (p as usize).pow(t as u32 - 1));
                runs += 1;
            }
        }
    }

    let elapsed = started.elapsed();
    assert_eq!(runs, 1200);
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "must finish within 30 s, took {elapsed:?}"
    );
    pass(
        3,
        &format!("{runs}/1200 honest runs recovered the secret with exact equal-magnitude support"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 4: closed-form fidelities agree with the density-matrix
// simulation to 1e-9 for all three channels, d ∈ {2,3}, t ∈ {3,4},
// μ ∈ {0, 0.1, …, 1.0}.
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_formulas_match_density_matrix_simulation() {
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    let mut points = 0u32;

    for kind in ChannelKind::ALL {
        for d in [2usize, 3] {
            for t in [3usize, 4] {
                let exponents = vec![1u64; t];
                for &mu in &mu_grid(11) {
                    let formula = fidelity_formula(kind, d, t, mu).expect("params valid");
                    let simulated =
                        fidelity_simulated(kind, d, t, mu, &exponents).expect("fits the cap");
                    let delta = (formula - simulated).abs();
                    assert!(
                        delta <= 1e-9,
                        "{} d={d} t={t} mu={mu}: formula {formula} vs simulated {simulated}",
                        kind.label()
                    );
                    worst = worst.max(delta);
                    points += 1;
                }
            }
        }
    }

    let elapsed = started.elapsed();
    assert_eq!(points, 132);
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "must finish within 60 s, took {elapsed:?}"
    );
    pass(
        4,
        &format!("132/132 grid points agree; worst |formula − simulation| = {worst:.3e}"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 5: quantitative anchors of the fidelity formulas, tolerance
// 1e-12, including the regimes too large to simulate.
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_formula_anchors_hold() {
    let tol = 1e-12;
    let df = |d, t, mu| fidelity_formula(ChannelKind::DitFlip, d, t, mu).expect("valid");
    let dpf = |d, t, mu| fidelity_formula(ChannelKind::DPhaseFlip, d, t, mu).expect("valid");
    let ad = |d, t, mu| fidelity_formula(ChannelKind::AmplitudeDamping, d, t, mu).expect("valid");

    // Flip channel at t=5, μ=0.8 and t=12, μ=0.4 ("effectively zero").
    assert!((df(2, 5, 0.8) - 0.0016).abs() < tol);
    assert!(df(2, 5, 0.8) <= 0.002);
    assert!((df(2, 12, 0.4) - 0.6f64.powi(11)).abs() < tol);
    assert!(df(2, 12, 0.4) <= 0.005);

    // Phase-flip rebound for d=2, t=5: endpoints at 1, interior minimum
    // 0.125 exactly at μ=0.5.
    assert!((dpf(2, 5, 0.0) - 1.0).abs() < tol);
    assert!((dpf(2, 5, 1.0) - 1.0).abs() < tol);
    assert!((dpf(2, 5, 0.5) - 0.125).abs() < tol);
    for k in 1..1000 {
        let mu = k as f64 / 1000.0;
        assert!(
            dpf(2, 5, 0.5) <= dpf(2, 5, mu) + tol,
            "interior minimum sits at 0.5, not {mu}"
        );
    }

    // Amplitude damping at full noise lands on 1/d² for any t.
    for d in [2usize, 3, 7, 13] {
        let floor = 1.0 / (d as f64 * d as f64);
        assert!((ad(d, 5, 1.0) - floor).abs() < tol, "d={d}, t=5");
        assert!((ad(d, 12, 1.0) - floor).abs() < tol, "d={d}, t=12");
    }

    // The flip-channel fidelity does not depend on d at all.
    for (t, mu) in [(3usize, 0.9), (5, 0.3), (12, 0.4)] {
        let reference = df(2, t, mu);
        for d in [3u64, 5, 7, 13, 29, 53, 229] {
            assert!(
                (df(d as usize, t, mu) - reference).abs() < tol,
                "d={d} t={t} mu={mu}"
            );
        }
    }

    pass(
        5,
        "flip decay, phase-flip rebound with interior minimum 0.125, damping floor 1/d², \
         and d-independence all hold to 1e-12",
    );
}

// ---------------------------------------------------------------------------
// Criterion 6: the verifier accepts every issued credential pair (10³
// randomized builds), accepts zero uniformly random forgeries (10⁵ trials),
// and handles a single cheater with exact verdicts — continuing when the
// honest remainder stays authorized, aborting when it does not.
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_verifier_completeness_soundness_and_elimination() {
    // Completeness: every issued pair verifies across 1000 randomized builds.
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_c0de);
    let dims = [3u64, 5, 7, 11];
    let mut builds = 0u32;
    while builds < 1000 {
        let p = dims[(builds as usize) % dims.len()];
        let m = 2 + (builds as usize / dims.len()) % 5;
        let d = Modulus::new(p).expect("prime");
        let shares = FieldVector::new(d, (0..m).map(|_| d.sample(&mut rng)).collect());
        let (state, issued) = BlackBoxState::build(&shares, &mut rng).expect("builds");
        for (k, pair) in issued.iter().enumerate() {
            let participant = ParticipantId::new(k + 1).expect("valid");
            assert_eq!(
                state.verify(participant, pair).expect("verifies"),
                Verdict::Honest,
                "issued pair rejected (d={p}, m={m}, build={builds})"
            );
        }
        builds += 1;
    }

    // Soundness: uniformly random pairs never verify. The eigenspace of a
    // stored share is 2-dimensional inside Z_d^{2m}, so a uniform pair
    // lands in it with probability d^(4−4m) — at these sizes below 1e-10
    // per trial, and this fixed-seed run observes zero acceptances.
    let mut accepted = 0u32;
    for (p, m) in [(7u64, 4usize), (7, 5), (11, 4), (11, 5)] {
        let d = Modulus::new(p).expect("prime");
        let shares = FieldVector::new(d, (0..m).map(|_| d.sample(&mut rng)).collect());
        let (state, _issued) = BlackBoxState::build(&shares, &mut rng).expect("builds");
        let target = ParticipantId::new(1).expect("valid");
        for _ in 0..25_000 {
            let forged = ShadowPair::new(
                FieldVector::new(d, (0..2 * m).map(|_| d.sample(&mut rng)).collect()),
                FieldVector::new(d, (0..2 * m).map(|_| d.sample(&mut rng)).collect()),
            );
            if state.verify(target, &forged).expect("verifies") == Verdict::Honest {
                accepted += 1;
            }
        }
    }
    assert_eq!(accepted, 0, "no random forgery may pass");

    // Single cheater, authorized remainder: P4 forges inside the full set;
    // the run continues and still recovers secret 1.
    let cfg = demo::dealer_config().expect("bundled config");
    let d = demo::modulus();
    let forged = Behavior::ForgeShadows(ShadowPair::new(
        FieldVector::new(d, vec![1, 0, 0, 0, 0, 0, 0, 0]),
        FieldVector::new(d, vec![2, 0, 0, 0, 0, 0, 0, 0]),
    ));
    let behaviors: BTreeMap<ParticipantId, Behavior> =
        [(ParticipantId::new(4).expect("valid"), forged.clone())].into();
    let survived = run_scenario(&cfg, 1, &cfg.msp.universe(), &behaviors).expect("runs");
    assert!(!survived.aborted);
    assert_eq!(
        survived.cheat_report.verdicts.get("P4").map(String::as_str),
        Some("cheater: shadows are linearly dependent")
    );
    for honest in ["P1", "P2", "P3"] {
        assert_eq!(
            survived.cheat_report.verdicts.get(honest).map(String::as_str),
            Some("honest")
        );
    }
    assert_eq!(
        survived
            .released_shares
            .as_ref()
            .map(|shares| shares.len()),
        Some(3),
        "only the honest remainder receives shares"
    );
    assert_eq!(survived.recovered(), Some(2));
    assert_eq!(survived.hash_check, Some(true));

    // Single cheater, unauthorized remainder: P2 forges inside {P1,P2,P3};
    // {P1,P3} cannot reach secret 1, so the run aborts with nothing
    // released.
    let behaviors: BTreeMap<ParticipantId, Behavior> =
        [(ParticipantId::new(2).expect("valid"), forged)].into();
    let aborted = run_scenario(
        &cfg,
        1,
        &demo::first_secret_coalition().expect("coalition"),
        &behaviors,
    )
    .expect("runs");
    assert!(aborted.aborted);
    assert_eq!(
        aborted.cheat_report.verdicts.get("P2").map(String::as_str),
        Some("cheater: shadows are linearly dependent")
    );
    for honest in ["P1", "P3"] {
        assert_eq!(
            aborted.cheat_report.verdicts.get(honest).map(String::as_str),
            Some("honest")
        );
    }
    assert!(aborted.released_shares.is_none());
    assert!(aborted.recovery.is_none());

    pass(
        6,
        "1000/1000 issued pairs accepted, 0/100000 forgeries accepted, \
         elimination continues or aborts exactly as authorization dictates",
    );
}

// ---------------------------------------------------------------------------
// Criterion 7: Kraus completeness Σ E†E = I within 1e-12 for every channel,
// d ∈ {2,3,5,7}, μ ∈ {0, 0.25, 0.5, 0.75, 1}.
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_kraus_families_are_complete() {
    let mut worst: f64 = 0.0;
    for kind in ChannelKind::ALL {
        for d in [2usize, 3, 5, 7] {
            for mu in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let defect = kraus_completeness_defect(kind, d, mu).expect("valid params");
                assert!(
                    defect <= 1e-12,
                    "{} d={d} mu={mu}: defect {defect:e}",
                    kind.label()
                );
                worst = worst.max(defect);
            }
        }
    }
    pass(
        7,
        &format!("all 60 (channel, d, μ) combinations complete; worst defect {worst:.3e}"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 8: span-program duality. Randomized structures derived from
// their own matrices must satisfy both conditions with a privacy
// counterexample on every maximal unauthorized set; the bundled scenario is
// asserted to the same standard, which it genuinely fails.
// ---------------------------------------------------------------------------

/// Is the target inside the row span of the given matrix rows?
fn reaches_target(matrix: &FieldMatrix, rows: &[usize], target: &FieldVector) -> bool {
    if rows.is_empty() {
        return false;
    }
    let d = matrix.modulus();
    let cols = matrix.cols();
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for &r in rows {
        entries.extend(matrix.row(r).entries().iter().copied());
    }
    let sub = FieldMatrix::new(d, rows.len(), cols, entries).expect("well-formed");
    sub.transpose().solve_linear(target).is_ok()
}

/// Derives the access structure a matrix actually realizes for one target:
/// a coalition is authorized exactly when its rows span the target. Returns
/// `None` when no coalition at all reaches the target.
fn derived_structure(matrix: &FieldMatrix, target: &FieldVector) -> Option<AccessStructure> {
    let m = matrix.rows();
    let masks: Vec<u32> = (1..(1u32 << m))
        .filter(|&mask| {
            let rows: Vec<usize> = (0..m).filter(|&r| mask & (1 << r) != 0).collect();
            reaches_target(matrix, &rows, target)
        })
        .collect();
    if masks.is_empty() {
        return None;
    }
    let minimal: Vec<BTreeSet<ParticipantId>> = masks
        .iter()
        .filter(|&&mask| !masks.iter().any(|&other| other != mask && other & mask == other))
        .map(|&mask| {
            (0..m)
                .filter(|&r| mask & (1 << r) != 0)
                .map(|r| ParticipantId::new(r + 1).expect("valid"))
                .collect()
        })
        .collect();
    AccessStructure::from_minimal_sets(minimal).ok()
}

#[test]
fn criterion_8_duality_on_randomized_structures_and_the_bundled_one() {
    // Randomized half: 20 programs whose structures are derived from their
    // own matrices. Both conditions must hold everywhere, and each maximal
    // unauthorized coalition must yield a privacy counterexample — a second
    // distribution with identical coalition shares and a different secret.
    let mut rng = ChaCha12Rng::seed_from_u64(0xd7a1);
    let dims = [2u64, 3, 5, 7];
    let mut produced = 0usize;
    let mut attempt = 0usize;
    while produced < 20 {
        attempt += 1;
        assert!(attempt < 2000, "structure sampling must terminate");
        let p = dims[attempt % dims.len()];
        let d = Modulus::new(p).expect("prime");
        let m = 2 + attempt % 5; // 2..=6 participants
        let l = 2 + attempt % 3; // 2..=4 columns
        let n = 1 + attempt % 2; // 1..=2 secrets with unit targets (l ≥ 2)
        let matrix = FieldMatrix::new(
            d,
            m,
            l,
            (0..m * l).map(|_| d.sample(&mut rng)).collect(),
        )
        .expect("well-formed");
        let targets: Vec<FieldVector> =
            (0..n).map(|i| FieldVector::unit(d, l, i)).collect();
        let Some(structures) = targets
            .iter()
            .map(|t| derived_structure(&matrix, t))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let owners: Vec<ParticipantId> = (1..=m)
            .map(|k| ParticipantId::new(k).expect("valid"))
            .collect();
        let msp = MspInstance::new(matrix, owners, targets, structures).expect("valid program");

        let report = msp.validate().expect("within enumeration cap");
        assert!(
            report.is_valid(),
            "derived structures must satisfy both conditions: {report}"
        );

        let secrets: Vec<u64> = (0..n).map(|_| d.sample(&mut rng)).collect();
        let bundle = lmss::distribute(&msp, &secrets, &mut rng).expect("distributes");
        let omega = msp.universe();
        for i in 1..=n {
            let structure = msp.structure(i).expect("exists");
            for coalition in structure
                .maximal_unauthorized_sets(&omega)
                .expect("within cap")
            {
                assert!(
                    msp.kernel_witness(i, &coalition)
                        .expect("solver runs")
                        .is_some(),
                    "maximal unauthorized {} lacks a kernel witness",
                    set_label(&coalition)
                );
                let alternate = privacy_counterexample(&msp, &bundle, i, &coalition)
                    .expect("solver runs")
                    .expect("witness exists");
                assert_eq!(
                    alternate.coalition_shares(&msp, &coalition),
                    bundle.coalition_shares(&msp, &coalition),
                    "counterexample must keep the coalition's shares"
                );
                assert_ne!(
                    alternate.secrets(&msp).expect("evaluates")[i - 1],
                    bundle.secrets(&msp).expect("evaluates")[i - 1],
                    "counterexample must move secret {i}"
                );
            }
        }
        produced += 1;
    }

    // Bundled half: hold the bundled program to the same standard. Its
    // share matrix does not realize the privacy side of its published
    // access structures, so this stays red by design; the missing-witness
    // list below is the exact shape of the failure.
    let msp = demo::msp().expect("bundled span program");
    let omega = msp.universe();
    let mut missing = Vec::new();
    let mut maximal_total = 0usize;
    for i in 1..=msp.secret_count() {
        let structure = msp.structure(i).expect("exists");
        for coalition in structure
            .maximal_unauthorized_sets(&omega)
            .expect("within cap")
        {
            maximal_total += 1;
            if msp
                .kernel_witness(i, &coalition)
                .expect("solver runs")
                .is_none()
            {
                missing.push(format!("secret {i}: {}", set_label(&coalition)));
            }
        }
    }
    if missing.is_empty() {
        pass(
            8,
            "duality and privacy witnesses hold on 20 randomized structures and the bundled one",
        );
    } else {
        let line = fail(
            8,
            &format!(
                "randomized half passed (20/20), but {}/{maximal_total} maximal unauthorized \
                 coalitions of the bundled scenario have no kernel witness",
                missing.len()
            ),
        );
        panic!(
            "{line}\nkernel witnesses do not exist for:\n  {}\n\
             The bundled share matrix lets these coalitions express the target vector, so \
             no distribution can hide the secret from them; the claimed access structures \
             are not realized and no privacy counterexample can be constructed.",
            missing.join("\n  ")
        );
    }
}
