//! Acceptance suite: one test per advertised guarantee, exercised end to end
//! through the installed binary where the guarantee is about reports, and
//! through the library where it is about computation. Each test name carries
//! its criterion number, so the harness prints one pass/fail line per
//! criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use solq_core::abelian::{CoefficientRing, FgAbGroup};
use solq_core::complex::ChainComplex;
use solq_core::matrix::Matrix;
use solq_core::primes::PrimeSet;
use solq_core::snf::smith_normal_form;
use solq_core::tower::{Direction, Tower, TowerBase};
use solq_core::{Int, IntMatrix};
use std::process::{Command, Output};

fn solq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = solq(args);
    assert!(
        out.status.success(),
        "solq {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("reports are utf-8")
}

fn json_of(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_of(args)).expect("reports are valid json")
}

fn strings(value: &Value) -> Vec<String> {
    value
        .as_array()
        .expect("array")
        .iter()
        .map(|v| v.as_str().expect("string").to_string())
        .collect()
}

#[test]
fn criterion_1_twisted_complex_homology_integral_and_at_foreign_primes() {
    for q in [2u64, 3, 5, 7] {
        let q_arg = q.to_string();
        let report = json_of(&["lens", "--q", &q_arg, "--json"]);
        assert_eq!(
            strings(&report["integral_homology"]),
            vec!["Z".to_string(), format!("Z/{q}"), "0".to_string(), "Z".to_string()],
            "q = {q}"
        );
        for p in [2u64, 3, 5, 7] {
            if p == q {
                continue;
            }
            let coeff = format!("mod:{p}");
            let report = json_of(&["lens", "--q", &q_arg, "--coeff", &coeff, "--json"]);
            let with = &report["with_coefficients"];
            let expected = vec![
                format!("Z/{p}"),
                "0".to_string(),
                "0".to_string(),
                format!("Z/{p}"),
            ];
            assert_eq!(strings(&with["homology"]), expected, "q = {q}, p = {p}");
            assert_eq!(with["paths"]["agree"], Value::Bool(true), "q = {q}, p = {p}");
            assert!(report["divergence"].is_null(), "q = {q}, p = {p}");
        }
    }
    println!("PASS criterion-1: twisted complex homology, integral and at foreign primes");
}

#[test]
fn criterion_2_twisted_complex_at_its_own_prime_with_divergence_note() {
    let args = ["lens", "--q", "5", "--coeff", "mod:5", "--json"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second, "report is not byte-identical across reruns");

    let report: Value = serde_json::from_str(&first).unwrap();
    let with = &report["with_coefficients"];
    let all_z5 = vec!["Z/5".to_string(); 4];
    assert_eq!(strings(&with["homology"]), all_z5);
    assert_eq!(strings(&with["cohomology"]), all_z5);
    assert_eq!(
        with["paths"]["universal_coefficients"], with["paths"]["field_rank"],
        "the two computation routes must coincide"
    );
    assert_eq!(with["paths"]["agree"], Value::Bool(true));
    let note = report["divergence"].as_str().expect("divergence note present");
    assert!(note.contains("degree-two"), "note: {note}");
    println!("PASS criterion-2: both routes coincide at the twisted prime and the omission is flagged");
}

#[test]
fn criterion_3_local_tables_track_prime_membership() {
    let sets = ["2", "2,3", "3,5,7", "all", "all-except:2"];
    for set in sets {
        let primes: PrimeSet = set.parse().unwrap();
        for p in [2u64, 3, 5, 7, 11] {
            let coeff = format!("mod:{p}");
            let report = json_of(&["local", "--primes", set, "--coeff", &coeff, "--json"]);
            let rows = report["table"]["rows"].as_array().unwrap();
            let value = |d: usize| rows[d]["value"].as_str().unwrap().to_string();
            assert_eq!(value(0), "0", "{set} mod:{p}");
            assert_eq!(value(1), "0", "{set} mod:{p}");
            assert_eq!(value(3), format!("Z/{p}"), "{set} mod:{p}");
            if primes.contains(p) {
                assert_eq!(value(2), "0", "{set} mod:{p}: member prime must vanish");
            } else {
                assert_eq!(
                    value(2),
                    format!("Z/{p}"),
                    "{set} mod:{p}: outsider prime must obstruct"
                );
            }
        }
    }
    println!("PASS criterion-3: local tables vanish below the top exactly at member primes");
}

#[test]
fn criterion_4_classification_matrix_tracks_membership_and_always_fails_over_z_and_q() {
    let sets = ["2", "2,3", "3,5,7", "all", "all-except:2"];
    for set in sets {
        let primes: PrimeSet = set.parse().unwrap();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let coeff = format!("mod:{p}");
            let report = json_of(&["classify", "--primes", set, "--coeff", &coeff, "--json"]);
            let verdict = &report["verdict"];
            let expected = if primes.contains(p) { "holds" } else { "fails" };
            assert_eq!(
                verdict["cohomology_manifold"].as_str().unwrap(),
                expected,
                "{set} mod:{p}"
            );
            assert_eq!(
                verdict["homology_manifold"].as_str().unwrap(),
                expected,
                "{set} mod:{p}"
            );
        }
        for ring in ["Z", "Q"] {
            let report = json_of(&["classify", "--primes", set, "--coeff", ring, "--json"]);
            let verdict = &report["verdict"];
            assert_eq!(verdict["cohomology_manifold"].as_str().unwrap(), "fails");
            assert_eq!(verdict["homology_manifold"].as_str().unwrap(), "fails");
            assert!(!verdict["failure_flavor"].is_null());
        }
    }
    println!("PASS criterion-4: verdicts depend only on membership; Z and Q always fail");
}

struct Planted {
    complex: ChainComplex,
    homology: Vec<FgAbGroup>,
}

fn planted(rng: &mut ChaCha8Rng) -> Planted {
    let top = rng.gen_range(2..=4usize);
    let free: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=2)).collect();
    let mut blocks: Vec<Vec<u64>> = (0..top)
        .map(|_| {
            (0..rng.gen_range(0..=2))
                .map(|_| [1u64, 2, 3, 4, 5, 6, 8, 9, 12][rng.gen_range(0..9)])
                .collect()
        })
        .collect();
    blocks.push(Vec::new());
    let ranks: Vec<usize> = (0..=top)
        .map(|n| free[n] + blocks[n].len() + if n > 0 { blocks[n - 1].len() } else { 0 })
        .collect();
    let mut differentials = Vec::new();
    for n in 0..top {
        let mut d = Matrix::<Int>::zeros(ranks[n], ranks[n + 1]);
        for (b, &m) in blocks[n].iter().enumerate() {
            d[(free[n] + b, free[n + 1] + blocks[n + 1].len() + b)] = Int::from(m);
        }
        differentials.push(d);
    }
    let homology = (0..=top)
        .map(|n| {
            let mut h = FgAbGroup::free(free[n]);
            for &m in &blocks[n] {
                if m > 1 {
                    h = h.direct_sum(&FgAbGroup::cyclic(m).unwrap());
                }
            }
            h
        })
        .collect();
    Planted {
        complex: ChainComplex::new(ranks, differentials).unwrap(),
        homology,
    }
}

fn unimodular_pair(rng: &mut ChaCha8Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = Matrix::<Int>::identity(n);
    let mut v = Matrix::<Int>::identity(n);
    if n >= 2 {
        for _ in 0..(3 * n) {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let c = Int::from(rng.gen_range(-2i64..=2));
            u.add_multiple_of_row(j, i, &c);
            v.add_multiple_of_col(i, j, &(-c));
        }
    }
    (u, v)
}

fn scramble(rng: &mut ChaCha8Rng, plan: &Planted) -> ChainComplex {
    let top = plan.complex.top_degree();
    let ranks: Vec<usize> = (0..=top).map(|n| plan.complex.rank(n)).collect();
    let pairs: Vec<(IntMatrix, IntMatrix)> =
        ranks.iter().map(|&r| unimodular_pair(rng, r)).collect();
    let differentials = (0..top)
        .map(|n| pairs[n].0.mul(&plan.complex.differential(n).mul(&pairs[n + 1].1)))
        .collect();
    ChainComplex::new(ranks, differentials).unwrap()
}

#[test]
fn criterion_5_randomized_cross_validation_of_towers_and_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE55);
    let pool = [
        "2",
        "3",
        "5",
        "2,3",
        "2,5",
        "3,5",
        "2,3,5",
        "7",
        "all",
        "all-except:2",
        "all-except:3",
    ];
    for case in 0..200 {
        let order = rng.gen_range(2..=24u64);
        let set = pool[rng.gen_range(0..pool.len())];
        let direction = if rng.gen_bool(0.5) {
            Direction::Inverse
        } else {
            Direction::Direct
        };
        let offset = rng.gen_range(0..3usize);
        let primes: PrimeSet = set.parse().unwrap();
        let tower =
            Tower::multiplication(direction, TowerBase::Cyclic(order), primes, offset).unwrap();
        let symbolic = match direction {
            Direction::Inverse => tower.limit().unwrap().value,
            Direction::Direct => tower.colimit().unwrap().value,
        };
        let probe = tower.truncation_oracle(32).unwrap();
        let label = format!("case {case}: order {order}, primes {set}, {direction:?}");
        assert!(probe.stabilized, "{label}");
        assert_eq!(Some(probe.value), symbolic.to_fg(), "{label}");
    }

    let rings: Vec<CoefficientRing> = {
        let mut rings = vec![CoefficientRing::Rationals];
        for p in [2u64, 3, 5, 7] {
            rings.push(CoefficientRing::modulus(p).unwrap());
        }
        rings
    };
    for case in 0..200 {
        let plan = planted(&mut rng);
        let complex = scramble(&mut rng, &plan);
        assert_eq!(complex.homology(), plan.homology, "case {case}");
        for ring in &rings {
            assert_eq!(
                complex.homology_with(ring),
                complex.field_homology(ring).unwrap(),
                "case {case}, ring {ring}"
            );
            assert_eq!(
                complex.cohomology_with(ring),
                complex.field_cohomology(ring).unwrap(),
                "case {case}, ring {ring}"
            );
        }
    }
    println!("PASS criterion-5: probes match closed forms and both coefficient routes agree");
}

#[test]
fn criterion_6_smith_decomposition_properties_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let zero = Int::from(0);
    for case in 0..1000 {
        let rows = rng.gen_range(0..=6usize);
        let cols = rng.gen_range(0..=6usize);
        let a = Matrix::from_fn(rows, cols, |_, _| Int::from(rng.gen_range(-20i64..=20)));
        let dec = smith_normal_form(&a);
        let transformed = dec.left.mul(&a).mul(&dec.right);
        assert_eq!(transformed, dec.diagonal, "case {case}: transform equation");
        if rows > 0 {
            let det = dec.left.determinant();
            assert!(
                det == Int::from(1) || det == Int::from(-1),
                "case {case}: left not unimodular"
            );
        }
        if cols > 0 {
            let det = dec.right.determinant();
            assert!(
                det == Int::from(1) || det == Int::from(-1),
                "case {case}: right not unimodular"
            );
        }
        let entries = dec.diagonal_entries();
        for (i, d) in entries.iter().enumerate() {
            assert!(*d >= zero, "case {case}: negative pivot");
            if i > 0 {
                let prev = &entries[i - 1];
                if *prev == zero {
                    assert_eq!(*d, zero, "case {case}: zero must absorb");
                } else {
                    assert_eq!(d % prev, zero, "case {case}: chain broken at {i}");
                }
            }
        }
        assert_eq!(
            dec.rank,
            a.rank_via_elimination(),
            "case {case}: rank mismatch"
        );
    }
    println!("PASS criterion-6: Smith decompositions verified on 1000 random matrices");
}

#[test]
fn criterion_7_reports_are_deterministic_and_traces_replay() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["classify", "--primes", "2", "--coeff", "mod:3", "--json", "--trace"],
        vec!["tower", "lim", "--base", "mod:12", "--primes", "2", "--depth", "16", "--json", "--trace"],
        vec!["local", "--primes", "2,3", "--coeff", "Z", "--trace"],
        vec!["clc", "--primes", "2", "--coeff", "mod:12", "--json"],
        vec!["complement", "--primes", "3", "--coeff", "mod:5", "--json", "--trace"],
    ];
    for args in &commands {
        let first = stdout_of(args);
        let second = stdout_of(args);
        assert_eq!(first, second, "solq {args:?} is not deterministic");
    }

    let report = json_of(&["classify", "--primes", "2", "--coeff", "mod:3", "--json", "--trace"]);
    let rows = report["verdict"]["local_table"]["rows"].as_array().unwrap();
    let computed_with_steps = rows
        .iter()
        .filter(|r| r["provenance"] == "computed")
        .all(|r| {
            let steps = r["trace"].as_array().expect("trace array present");
            !steps.is_empty()
                && steps.iter().all(|s| {
                    s["rule"].is_string() && s["site"].is_string() && s["conclusion"].is_string()
                })
        });
    assert!(computed_with_steps, "computed rows must carry replayable traces");
    println!("PASS criterion-7: byte-identical reruns and populated traces");
}
