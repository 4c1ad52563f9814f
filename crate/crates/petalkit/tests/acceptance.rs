//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use petalkit::{
    alexander_of_petal, alexander_of_stem, apply_crossing_exchange, apply_trivial_addition,
    build_diagram, crossing_pairs, enumerate_legal_moves, find_path, invert_move, random_petal,
    verify_path, CrossingExchange, Move, MovePath, MoveScript, Orientation, PetalPermutation,
    Rotation, SearchConfig, Side, StemPermutation, TrivialAddition, TrivialDeletion,
};

fn petal(w: &[u32]) -> PetalPermutation {
    PetalPermutation::new(w.to_vec()).unwrap()
}

fn stem(w: &[u32]) -> StemPermutation {
    StemPermutation::new(w.to_vec()).unwrap()
}

fn criterion(id: usize, name: &str, budget: Option<Duration>, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let within = budget.is_none_or(|b| elapsed <= b);
    match (&outcome, within) {
        (Ok(()), true) => println!("criterion {id} ({name}): PASS ({elapsed:.2?})"),
        (Ok(()), false) => {
            println!("criterion {id} ({name}): FAIL (over budget: {elapsed:.2?})");
            panic!("criterion {id} exceeded its runtime budget: {elapsed:.2?}");
        }
        (Err(e), _) => {
            println!("criterion {id} ({name}): FAIL ({elapsed:.2?})");
            panic!("criterion {id} failed: {e}");
        }
    }
}

#[test]
fn criterion_1_golden_worked_example_chain() {
    criterion(1, "golden worked-example chain", Some(Duration::from_secs(1)), || {
        let start = petal(&[0, 3, 5, 1, 6, 4, 2]);
        let script = MoveScript::new(
            start,
            vec![
                Move::Add(TrivialAddition {
                    rotation: Rotation(0),
                    pos: 3,
                    m: 0,
                    orient: Orientation::Ascending,
                }),
                Move::Add(TrivialAddition {
                    rotation: Rotation(5),
                    pos: 2,
                    m: 2,
                    orient: Orientation::Ascending,
                }),
                Move::Xchg(CrossingExchange {
                    rotation: Rotation(0),
                    side: Side::Left,
                    m: 1,
                    w: 9,
                }),
                Move::Del(TrivialDeletion {
                    rotation: Rotation(0),
                    pos: 2,
                }),
            ],
        );
        let steps = script.replay().map_err(|e| e.to_string())?;
        let expected = [
            petal(&[2, 5, 7, 3, 0, 1, 8, 6, 4]),
            petal(&[4, 7, 9, 2, 3, 5, 0, 1, 10, 8, 6]),
            petal(&[0, 2, 9, 8, 6, 4, 7, 10, 1, 3, 5]),
            petal(&[1, 3, 5, 0, 2, 6, 4, 7, 8]),
        ];
        for (k, (got, want)) in steps.iter().zip(&expected).enumerate() {
            if got != want {
                return Err(format!("step {k}: got {got}, want {want}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_2_figure_examples() {
    criterion(2, "figure examples", None, || {
        // Addition: (31420) with petal (32) between the 3 and the 1.
        let (sigma, r) = PetalPermutation::from_rotated_word(&[3, 1, 4, 2, 0]).unwrap();
        let got = apply_trivial_addition(
            &sigma,
            &TrivialAddition {
                rotation: r,
                pos: 0,
                m: 2,
                orient: Orientation::Descending,
            },
        )
        .map_err(|e| e.to_string())?;
        if got != petal(&[5, 3, 2, 1, 6, 4, 0]) {
            return Err(format!("addition gave {got}"));
        }

        // Exchange: right-pairs (42), (51) of (4206513).
        let (sigma, r) = PetalPermutation::from_rotated_word(&[4, 2, 0, 6, 5, 1, 3]).unwrap();
        let got = apply_crossing_exchange(
            &sigma,
            &CrossingExchange {
                rotation: r,
                side: Side::Right,
                m: 1,
                w: 4,
            },
        )
        .map_err(|e| e.to_string())?;
        if got != petal(&[5, 1, 0, 6, 4, 2, 3]) {
            return Err(format!("exchange gave {got}"));
        }

        // Conversion: stem (241530) -> petal (31420).
        let got = stem(&[2, 4, 1, 5, 3, 0]).to_petal();
        if got != petal(&[3, 1, 4, 2, 0]) {
            return Err(format!("conversion gave {got}"));
        }
        Ok(())
    });
}

#[test]
fn criterion_3_move_invariance() {
    criterion(3, "alexander invariance under 1000 random moves", Some(Duration::from_secs(60)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
        let mut checked = 0usize;
        for i in 0..1000u64 {
            let n = (i % 5) as usize; // word lengths 1..=9
            let sigma = random_petal(n, 30_000 + i);
            let moves = enumerate_legal_moves(&sigma, Some(sigma.len() + 2));
            if moves.is_empty() {
                return Err(format!("no legal moves on {sigma}"));
            }
            let (mv, after) = &moves[rng.gen_range(0..moves.len())];
            let before_inv = alexander_of_petal(&sigma).map_err(|e| e.to_string())?;
            let after_inv = alexander_of_petal(after).map_err(|e| e.to_string())?;
            if before_inv != after_inv {
                return Err(format!(
                    "alexander changed: {sigma} --{mv}--> {after}: {} vs {}",
                    before_inv.polynomial, after_inv.polynomial
                ));
            }
            checked += 1;
        }
        if checked != 1000 {
            return Err(format!("expected 1000 checks, ran {checked}"));
        }
        Ok(())
    });
}

#[test]
fn criterion_4_s5_classification_and_connectivity() {
    criterion(4, "S5 classification and unknot connectivity", Some(Duration::from_secs(120)), || {
        let words = common::canonical_petal_words(5);
        if words.len() != 24 {
            return Err(format!("expected 24 canonical 5-words, got {}", words.len()));
        }
        let mut classes: BTreeMap<Vec<i64>, Vec<PetalPermutation>> = BTreeMap::new();
        for w in &words {
            let inv = alexander_of_petal(w).map_err(|e| e.to_string())?;
            classes
                .entry(inv.polynomial.coefficient_list())
                .or_default()
                .push(w.clone());
        }
        let keys: Vec<Vec<i64>> = classes.keys().cloned().collect();
        if keys != vec![vec![1], vec![1, -1, 1]] {
            return Err(format!("unexpected alexander classes: {keys:?}"));
        }

        let unknot = PetalPermutation::unknot();
        let cfg = SearchConfig::new(9, 10);
        for w in &classes[&vec![1]] {
            let path = find_path(w, &unknot, &cfg)
                .map_err(|e| format!("{w} did not reach (0): {e}"))?;
            verify_path(&path, true).map_err(|e| format!("path from {w}: {e}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_5_embedding_invariance() {
    criterion(5, "embedding invariance for words up to length 7", None, || {
        for len in [1usize, 3, 5, 7] {
            for sigma in common::canonical_petal_words(len) {
                let expected = alexander_of_petal(&sigma).map_err(|e| e.to_string())?;
                for r in 0..sigma.len() {
                    for t0 in 0..=sigma.len() as u32 {
                        let tau = sigma.to_stem(Rotation(r), t0).unwrap();
                        let got = alexander_of_stem(&tau).map_err(|e| e.to_string())?;
                        if got != expected {
                            return Err(format!(
                                "{sigma} at rotation {r}, t0 {t0}: {} vs {}",
                                got.polynomial, expected.polynomial
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_round_trip_laws() {
    criterion(6, "round-trip laws", None, || {
        // Stem <-> petal inverse over every parameter choice.
        for len in [1usize, 3, 5, 7] {
            for sigma in common::canonical_petal_words(len) {
                for r in 0..sigma.len() {
                    for t0 in 0..=sigma.len() as u32 {
                        let tau = sigma.to_stem(Rotation(r), t0).unwrap();
                        if tau.to_petal() != sigma {
                            return Err(format!("round trip failed for {sigma}, r={r}, t0={t0}"));
                        }
                    }
                }
            }
        }

        // Move then inverse move is the identity, for 500 random legal moves.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
        for i in 0..500u64 {
            let n = (i % 5) as usize;
            let sigma = random_petal(n, 60_000 + i);
            let moves = enumerate_legal_moves(&sigma, Some(sigma.len() + 2));
            let (mv, after) = &moves[rng.gen_range(0..moves.len())];
            let inv = invert_move(mv, &sigma).map_err(|e| e.to_string())?;
            let back = inv.apply(after).map_err(|e| e.to_string())?;
            if back != sigma {
                return Err(format!("{sigma} --{mv}--> {after} --{inv}--> {back}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_7_crossing_criterion_against_oracle() {
    criterion(7, "crossing criterion and signs vs geometric oracle", None, || {
        // Crossing sets for every stem of length <= 8.
        for len in [2usize, 4, 6, 8] {
            for tau in common::all_stem_words(len) {
                let strands = tau.strands();
                let mut expected = BTreeSet::new();
                for i in 0..strands.len() {
                    for j in i + 1..strands.len() {
                        if strands[i].side == strands[j].side
                            && common::polyline_crossing_count(&strands[i], &strands[j], 32) == 1
                        {
                            expected.insert((i, j));
                        }
                    }
                }
                let got: BTreeSet<(usize, usize)> = crossing_pairs(&tau)
                    .iter()
                    .map(|(a, b)| {
                        (
                            strands.iter().position(|s| s == a).unwrap(),
                            strands.iter().position(|s| s == b).unwrap(),
                        )
                    })
                    .collect();
                if got != expected {
                    return Err(format!("crossing sets differ for {tau}: {got:?} vs {expected:?}"));
                }
            }
        }

        // Signs for every stem of length <= 6.
        for len in [2usize, 4, 6] {
            for tau in common::all_stem_words(len) {
                let d = build_diagram(&tau);
                for c in d.crossings() {
                    let over = &d.strands()[c.over];
                    let under_idx = if c.over == c.strand_a { c.strand_b } else { c.strand_a };
                    let under = &d.strands()[under_idx];
                    let oracle = common::tangent_frame_sign(over, under);
                    if oracle != c.sign {
                        return Err(format!(
                            "sign mismatch for {tau} crossing {}: {} vs oracle {oracle}",
                            c.id, c.sign
                        ));
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_8_known_invariants() {
    criterion(8, "known invariants of named knots", None, || {
        let check = |r: petalkit::AlexanderResult, coeffs: &[i64], det: u64, label: &str| {
            if r.polynomial.coefficient_list() != coeffs || r.determinant != det {
                Err(format!(
                    "{label}: got {} det {}, want {coeffs:?} det {det}",
                    r.polynomial, r.determinant
                ))
            } else {
                Ok(())
            }
        };

        for w in [vec![0u32, 3, 1, 4, 2], vec![0, 2, 4, 1, 3]] {
            check(
                alexander_of_petal(&petal(&w)).unwrap(),
                &[1, -1, 1],
                3,
                "trefoil",
            )?;
        }
        for w in [vec![0u32, 3, 5, 1, 6, 4, 2], vec![1, 3, 5, 0, 2, 6, 4, 7, 8]] {
            check(
                alexander_of_petal(&petal(&w)).unwrap(),
                &[1, -3, 1],
                5,
                "figure-eight",
            )?;
        }
        for w in [vec![0u32], vec![0, 1, 2], vec![0, 2, 1]] {
            check(alexander_of_petal(&petal(&w)).unwrap(), &[1], 1, "unknot")?;
        }
        for tau in [stem(&[0, 1]), stem(&[0, 1, 2, 3])] {
            check(alexander_of_stem(&tau).unwrap(), &[1], 1, "unknot stem")?;
        }
        Ok(())
    });
}

// The worked-example path search doubles as an end-to-end check that the
// acceptance bounds in the criteria are reachable through the public API.
#[test]
fn worked_example_connects_within_bounds() {
    let start = petal(&[0, 3, 5, 1, 6, 4, 2]);
    let goal = petal(&[1, 3, 5, 0, 2, 6, 4, 7, 8]);
    let path = find_path(&start, &goal, &SearchConfig::new(11, 6)).unwrap();
    assert!(path.moves.len() <= 4);
    verify_path(&path, true).unwrap();

    let reconstructed = MovePath::from_script(path.script()).unwrap();
    assert_eq!(reconstructed, path);
}
