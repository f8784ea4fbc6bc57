//! The truncation probe and the closed-form tower analysis are independent
//! routes to the same limits. On cyclic multiplication towers the probe must
//! stabilize to exactly the closed-form answer; on integer towers it must
//! refuse to claim stabilization at all.

use solq_core::abelian::SymbolicGroup;
use solq_core::matrix::Matrix;
use solq_core::primes::PrimeSet;
use solq_core::tower::{Direction, Tower, TowerBase};
use solq_core::Int;

const DEPTH: usize = 16;

#[test]
fn cyclic_multiplication_towers_stabilize_to_the_symbolic_answer() {
    let orders = [
        2u64, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 18, 20, 21, 24, 27, 30, 35,
    ];
    let sets = [
        "2",
        "3",
        "2,3",
        "2,5",
        "3,5,7",
        "all",
        "all-except:2",
        "all-except:3",
    ];
    for &order in &orders {
        for set in sets {
            for offset in [0usize, 2] {
                for direction in [Direction::Inverse, Direction::Direct] {
                    let primes: PrimeSet = set.parse().unwrap();
                    let tower = Tower::multiplication(
                        direction,
                        TowerBase::Cyclic(order),
                        primes,
                        offset,
                    )
                    .unwrap();
                    let symbolic = match direction {
                        Direction::Inverse => tower.limit().unwrap().value,
                        Direction::Direct => tower.colimit().unwrap().value,
                    };
                    let expected = symbolic
                        .to_fg()
                        .expect("cyclic towers have finitely generated limits");
                    let probe = tower.truncation_oracle(DEPTH).unwrap();
                    let label =
                        format!("order {order}, primes {set}, offset {offset}, {direction:?}");
                    assert!(probe.stabilized, "{label}: probe did not stabilize");
                    assert_eq!(probe.value, expected, "{label}");
                    assert!(probe.defect.is_trivial(), "{label}");
                }
            }
        }
    }
}

#[test]
fn integer_towers_never_claim_stabilization() {
    for set in ["2", "2,3", "all"] {
        for direction in [Direction::Inverse, Direction::Direct] {
            let primes: PrimeSet = set.parse().unwrap();
            let tower =
                Tower::multiplication(direction, TowerBase::Integers, primes, 0).unwrap();
            let probe = tower.truncation_oracle(12).unwrap();
            assert!(
                !probe.stabilized,
                "primes {set}, {direction:?}: a free base keeps moving"
            );
        }
    }
    let inverse = Tower::multiplication(
        Direction::Inverse,
        TowerBase::Integers,
        "2".parse().unwrap(),
        0,
    )
    .unwrap();
    assert_eq!(inverse.limit().unwrap().value, SymbolicGroup::Trivial);
}

/// An explicit tower whose bond mixes two prime actions: multiplication by
/// ten on `Z/12` doubles the part at two and is invertible on the part at
/// three. Both limits are the part at three.
#[test]
fn explicit_mixed_action_tower() {
    let order = 12u64;
    let depth = 12;
    let bond = Matrix::from_rows(vec![vec![Int::from(10)]]);
    for direction in [Direction::Inverse, Direction::Direct] {
        let levels = vec![solq_core::abelian::FgAbGroup::cyclic(order).unwrap(); depth];
        let bonds = vec![bond.clone(); depth - 1];
        let tower = Tower::explicit(direction, levels, bonds).unwrap();
        let probe = tower.truncation_oracle(depth).unwrap();
        assert!(probe.stabilized, "{direction:?}");
        assert_eq!(
            probe.value,
            solq_core::abelian::FgAbGroup::cyclic(3).unwrap(),
            "{direction:?}"
        );
        let symbolic = match direction {
            Direction::Inverse => tower.limit().unwrap().value,
            Direction::Direct => tower.colimit().unwrap().value,
        };
        assert_eq!(symbolic, SymbolicGroup::cyclic(3), "{direction:?}");
    }
}
