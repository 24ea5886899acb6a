//! Acceptance suite: one test per exit criterion, each printing a PASS line
//! with the measured quantities. All checks are exact; the stated time
//! budgets are asserted.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num::BigUint;

use flagorbit_core::classify::{borel_normal_form, invariant_profile, normalize_omega};
use flagorbit_core::clans::{
    clan_to_label, clan_to_omega, count_clans, count_pq_clans, enumerate_clans,
    enumerate_pq_clans, gamma_prime_to_spi, label_to_clan, omega_to_clan, parse_clan,
    pq_clan_embed, ClanEntry, DecoratedClan, PqClan, RestrictedClan,
};
use flagorbit_core::galois::{d_of_tau, k_partition, real_fiber, sign_set, SignVector};
use flagorbit_core::matrix::{Inertia, Matrix};
use flagorbit_core::oracle::{borel_invariance_sample, brute_force_orbit_count, certify_classifier};
use flagorbit_core::params::{
    canonical_tau_rep, enumerate_r_circle, enumerate_spi_plus, SignedPartialInvolution, TauPair,
};
use flagorbit_core::OmegaPair;

fn checked_budget(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{name} exceeded its budget: {elapsed:?} > {budget:?}"
    );
}

#[test]
fn criterion_1_counting_formula() {
    let start = Instant::now();
    let expected: [u32; 5] = [1, 4, 17, 76, 355];
    for (n, &v) in expected.iter().enumerate() {
        assert_eq!(count_clans(n), BigUint::from(v), "formula at n = {n}");
    }
    for n in 0..=8usize {
        let by_formula = count_clans(n);
        let by_enumeration = BigUint::from(enumerate_clans(n).len());
        assert_eq!(by_formula, by_enumeration, "enumeration at n = {n}");
    }
    // Third independent route for the smallest sizes: group-orbit counting.
    for n in 0..=2usize {
        let (classes, _) = brute_force_orbit_count(n).unwrap();
        assert_eq!(BigUint::from(classes), count_clans(n), "orbits at n = {n}");
    }
    checked_budget("criterion 1", start, Duration::from_secs(10));
    println!(
        "criterion 1 (counting formula): PASS - formula = enumeration for n <= 8, \
         three-way agreement for n <= 2, values 1, 4, 17, 76, 355 ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_2_brute_force_certification() {
    let start = Instant::now();
    for n in 1..=3usize {
        let t = Instant::now();
        let report = certify_classifier(n).unwrap();
        assert!(report.passed);
        assert_eq!(BigUint::from(report.classes), count_clans(n));
        if n == 3 {
            assert!(t.elapsed() <= Duration::from_secs(60), "n = 3 over budget");
        }
    }
    println!(
        "criterion 2 (brute-force certification): PASS - union-find classes equal the \
         formula and labels are constant/injective for n = 1, 2, 3 ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_3_invariant_completeness() {
    let start = Instant::now();
    // Distinct canonical involutions have distinct profiles, exhaustively.
    for m in 0..=4usize {
        let mut seen = HashSet::new();
        for spi in enumerate_spi_plus(m) {
            let profile = invariant_profile(&spi.to_matrix()).unwrap();
            assert!(
                seen.insert(format!("{profile:?}")),
                "profile collision at m = {m}"
            );
        }
    }
    // 500 random triangular conjugations per size, over both fields.
    for m in 1..=6usize {
        let report = borel_invariance_sample(m, 500, 0xF1A6).unwrap();
        assert!(report.passed);
        assert_eq!(report.checked, 1000, "500 per field at m = {m}");
    }
    checked_budget("criterion 3", start, Duration::from_secs(60));
    println!(
        "criterion 3 (invariant completeness): PASS - profiles separate all canonical \
         involutions (m <= 4) and survive 500 conjugations per field per m <= 6 ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_4_reconstruction_example() {
    let start = Instant::now();
    let tau = Matrix::from_int_rows(&[
        &[0, 0, 0, 0],
        &[0, 0, 1, 0],
        &[0, 1, 0, 0],
        &[0, 0, 0, 1],
    ]);
    let profile = invariant_profile(&tau).unwrap();
    assert_eq!(profile.rank_at(1, 2), 2);
    assert_eq!(profile.rank_at(1, 3), 1);
    assert_eq!(profile.rank_at(2, 2), 1);
    assert_eq!(profile.rank_at(2, 3), 1);
    assert_eq!(
        profile.signatures(),
        &[
            Inertia::new(2, 1, 1),
            Inertia::new(2, 1, 0),
            Inertia::new(1, 0, 1),
            Inertia::new(1, 0, 0)
        ]
    );
    // The arc-placement index at the step inserting row 2 (0-based p = 1):
    // the largest j with a unit rank drop.
    let k = (1..=2)
        .filter(|&j| profile.rank_at(1, 1 + j) == profile.rank_at(2, 1 + j) + 1)
        .max()
        .unwrap();
    assert_eq!(k, 1);
    let nf = borel_normal_form(&tau).unwrap();
    assert_eq!(nf.to_matrix(), tau);
    println!(
        "criterion 4 (reconstruction example): PASS - printed ranks, signatures, k = 1, \
         and fixed point of the normal form ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_5_worked_examples() {
    let start = Instant::now();
    // Echelon triple.
    let e1 = Matrix::from_int_rows(&[&[1, 0, 0, 0], &[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let e2 = Matrix::from_int_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]]);
    let e3 = Matrix::from_int_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
    assert_eq!(e1.ech_set(), vec![1, 3, 4]);
    assert_eq!(e2.ech_set(), vec![3]);
    assert_eq!(e3.ech_set(), vec![3]);

    // Column-support partition of the five-column pair.
    let tau = TauPair::from_int_rows(
        &[
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
        ],
        &[
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[1, 0, 0, 0, 0],
        ],
    )
    .unwrap();
    let part = k_partition(&tau).unwrap();
    assert_eq!(
        (part.k_c, part.k_d, part.k_1, part.k_2),
        (vec![4], vec![2], vec![1], vec![3, 5])
    );
    assert_eq!(
        sign_set(&tau).unwrap(),
        vec![
            SignVector(vec![1, 1, 1, 1, 1]),
            SignVector(vec![-1, 1, 1, 1, 1])
        ]
    );

    // Seven-vertex clan and its printed pair.
    let clan = parse_clan("d - c 1 + 1 -").unwrap();
    let omega = OmegaPair::from_int_rows(
        &[
            &[1, 0, 0, 0, 0, 0, 0],
            &[0, -1, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, -1],
        ],
        &[
            &[0, 0, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 0, 1],
        ],
    )
    .unwrap();
    assert_eq!(clan_to_omega(&clan), omega);
    assert_eq!(omega_to_clan(&omega), clan);

    // Six-vertex restricted clan and its printed involution.
    let prime = RestrictedClan::new(vec![
        ClanEntry::Minus,
        ClanEntry::C,
        ClanEntry::Arc(4),
        ClanEntry::Plus,
        ClanEntry::Arc(2),
        ClanEntry::Minus,
    ])
    .unwrap();
    let spi = gamma_prime_to_spi(&prime);
    let printed = SignedPartialInvolution::from_int_rows(&[
        &[-1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, 0, -1],
    ])
    .unwrap();
    assert_eq!(spi, printed);

    // Five-vertex sign clan embedded at {1,3,4,5,6} inside six vertices.
    let pq = PqClan::new(
        2,
        3,
        vec![
            ClanEntry::Minus,
            ClanEntry::Arc(3),
            ClanEntry::Plus,
            ClanEntry::Arc(1),
            ClanEntry::Minus,
        ],
    )
    .unwrap();
    assert_eq!(pq_clan_embed(&pq, &[1, 3, 4, 5, 6], 6).unwrap(), prime);

    println!(
        "criterion 5 (worked examples): PASS - echelon sets, support partition, sign set, \
         seven-vertex pair, six-vertex involution, and the sign-clan embedding are all \
         bit-exact ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_6_galois_fiber_identity() {
    let start = Instant::now();
    for n in 0..=3usize {
        // Representatives of the column-permutation classes.
        let mut reps: Vec<TauPair> = Vec::new();
        let mut seen: HashSet<TauPair> = HashSet::new();
        for tau in enumerate_r_circle(n, 6).unwrap() {
            let canon = canonical_tau_rep(&tau);
            if seen.insert(canon.clone()) {
                reps.push(canon);
            }
        }
        let mut clans_seen: HashSet<DecoratedClan> = HashSet::new();
        let mut total = BigUint::from(0u32);
        for tau in &reps {
            let d = d_of_tau(tau).unwrap();
            let fiber = real_fiber(tau).unwrap();
            assert_eq!(fiber.len(), 1 << d, "fiber size at n = {n}");
            total += BigUint::from(1u32) << d;
            let mut labels = HashSet::new();
            for omega in &fiber {
                let label = normalize_omega(omega).unwrap();
                assert!(labels.insert(label.clone()), "labels repeat inside a fiber");
                let clan = label_to_clan(&label, n).unwrap();
                assert!(
                    clans_seen.insert(clan),
                    "fibers overlap across classes at n = {n}"
                );
                // Stripping recovers the class representative.
                assert_eq!(
                    &flagorbit_core::galois::strip_signs(omega),
                    tau,
                    "stripping does not invert the fiber at n = {n}"
                );
            }
        }
        assert_eq!(total, count_clans(n), "fiber sizes sum at n = {n}");
        assert_eq!(
            BigUint::from(clans_seen.len()),
            count_clans(n),
            "fibers do not cover all clans at n = {n}"
        );
    }
    checked_budget("criterion 6", start, Duration::from_secs(60));
    println!(
        "criterion 6 (fiber identity): PASS - fiber sizes are exactly 2^d, they sum to the \
         clan count, partition all clans for n <= 3, and stripping inverts them ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_7_multiplicity_identity() {
    let start = Instant::now();
    assert_eq!(enumerate_pq_clans(1, 1).len(), 3);
    assert_eq!(enumerate_pq_clans(2, 1).len(), 6);
    for n in 0..=8usize {
        let mut total = BigUint::from(0u32);
        for s in 0..=n {
            let mult = BigUint::from(2u32).pow((n - s) as u32) * binomial(n, s);
            for p in 0..=s {
                total += &mult * count_pq_clans(p, s - p);
            }
        }
        assert_eq!(total, count_clans(n), "n = {n}");
    }
    checked_budget("criterion 7", start, Duration::from_secs(10));
    println!(
        "criterion 7 (multiplicity identity): PASS - weighted sign-clan counts reproduce \
         the clan count for n <= 8; |clans(1,1)| = 3, |clans(2,1)| = 6 ({:?})",
        start.elapsed()
    );
}

fn binomial(n: usize, k: usize) -> BigUint {
    use num::One;
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

#[test]
fn criterion_8_round_trip_suite() {
    let start = Instant::now();
    for n in 0..=4usize {
        for clan in enumerate_clans(n) {
            let omega = clan_to_omega(&clan);
            assert_eq!(omega_to_clan(&omega), clan, "pair reading at n = {n}");
            let label = normalize_omega(&omega).unwrap();
            assert_eq!(
                label_to_clan(&label, n).unwrap(),
                clan,
                "label chain at n = {n}"
            );
            assert_eq!(clan_to_label(&clan).unwrap(), label, "label agreement");
            if n == 4 {
                let text = clan.to_string();
                assert_eq!(parse_clan(&text).unwrap(), clan, "text round trip");
                let js = serde_json::to_string(&clan).unwrap();
                assert_eq!(
                    serde_json::from_str::<DecoratedClan>(&js).unwrap(),
                    clan,
                    "json round trip"
                );
            }
        }
    }
    checked_budget("criterion 8", start, Duration::from_secs(60));
    println!(
        "criterion 8 (round-trip suite): PASS - clan <-> pair <-> label <-> clan agree \
         exhaustively for n <= 4 and the text/JSON formats round-trip on all 355 \
         four-vertex clans ({:?})",
        start.elapsed()
    );
}
