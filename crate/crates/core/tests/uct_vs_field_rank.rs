//! Two independent routes to coefficient (co)homology: apply the universal
//! coefficient formulas to integral homology computed through Smith normal
//! form, or count dimensions directly by elimination over a field. The routes
//! share no code past the matrix type, so agreement on scrambled complexes
//! with planted homology checks both.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solq_core::abelian::{CoefficientRing, FgAbGroup};
use solq_core::complex::ChainComplex;
use solq_core::matrix::Matrix;
use solq_core::{Int, IntMatrix};

struct Planted {
    complex: ChainComplex,
    homology: Vec<FgAbGroup>,
}

/// A block complex with known homology: free generators survive untouched,
/// and each torsion block is a pair of generators in adjacent degrees tied
/// by multiplication by `m`, leaving `Z/m` behind (nothing when `m` is one).
fn planted(rng: &mut ChaCha8Rng) -> Planted {
    let top = rng.gen_range(2..=4usize);
    let free: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=2)).collect();
    // blocks[n] lists the multipliers of blocks mapping degree n+1 into n.
    let mut blocks: Vec<Vec<u64>> = Vec::new();
    for _ in 0..top {
        let count = rng.gen_range(0..=2);
        blocks.push(
            (0..count)
                .map(|_| *[1u64, 2, 3, 4, 5, 6, 8, 9, 12].get(rng.gen_range(0..9)).unwrap())
                .collect(),
        );
    }
    blocks.push(Vec::new());

    // Degree n holds its free generators, then the targets of blocks at n,
    // then the sources of blocks at n-1.
    let rank_at = |n: usize| {
        free[n]
            + blocks[n].len()
            + if n > 0 { blocks[n - 1].len() } else { 0 }
    };
    let ranks: Vec<usize> = (0..=top).map(rank_at).collect();
    let mut differentials = Vec::new();
    for n in 0..top {
        let mut d = Matrix::<Int>::zeros(ranks[n], ranks[n + 1]);
        for (b, &m) in blocks[n].iter().enumerate() {
            let target_row = free[n] + b;
            let source_col = free[n + 1] + blocks[n + 1].len() + b;
            d[(target_row, source_col)] = Int::from(m);
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

/// A unimodular matrix together with its inverse, built as a product of
/// elementary operations applied in lockstep.
fn unimodular_pair(rng: &mut ChaCha8Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = Matrix::<Int>::identity(n);
    let mut v = Matrix::<Int>::identity(n);
    if n < 2 {
        return (u, v);
    }
    for _ in 0..(3 * n) {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let c = Int::from(rng.gen_range(-2i64..=2));
                u.add_multiple_of_row(j, i, &c);
                v.add_multiple_of_col(i, j, &(-c));
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                u.swap_rows(i, j);
                v.swap_cols(i, j);
            }
            _ => {
                let i = rng.gen_range(0..n);
                u.negate_row(i);
                v.negate_col(i);
            }
        }
    }
    (u, v)
}

/// Conjugate every degree by a random change of basis. The differentials
/// still compose to zero and the homology is untouched.
fn scramble(rng: &mut ChaCha8Rng, planted: &Planted) -> ChainComplex {
    let top = planted.complex.top_degree();
    let ranks: Vec<usize> = (0..=top).map(|n| planted.complex.rank(n)).collect();
    let pairs: Vec<(IntMatrix, IntMatrix)> =
        ranks.iter().map(|&r| unimodular_pair(rng, r)).collect();
    let differentials: Vec<IntMatrix> = (0..top)
        .map(|n| {
            let original = planted.complex.differential(n);
            pairs[n].0.mul(&original.mul(&pairs[n + 1].1))
        })
        .collect();
    ChainComplex::new(ranks, differentials).unwrap()
}

fn rings() -> Vec<CoefficientRing> {
    let mut rings = vec![CoefficientRing::Rationals];
    for p in [2u64, 3, 5, 7, 97] {
        rings.push(CoefficientRing::modulus(p).unwrap());
    }
    rings
}

#[test]
fn scrambled_complexes_agree_along_both_routes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for case in 0..40 {
        let plan = planted(&mut rng);
        let scrambled = scramble(&mut rng, &plan);
        assert_eq!(
            scrambled.homology(),
            plan.homology,
            "case {case}: integral homology moved under change of basis"
        );
        for ring in rings() {
            let uct = scrambled.homology_with(&ring);
            let direct = scrambled.field_homology(&ring).unwrap();
            assert_eq!(uct, direct, "case {case}, ring {ring}, homology");
            let co_uct = scrambled.cohomology_with(&ring);
            let co_direct = scrambled.field_cohomology(&ring).unwrap();
            assert_eq!(co_uct, co_direct, "case {case}, ring {ring}, cohomology");
        }
    }
}

#[test]
fn degenerate_shapes_agree_along_both_routes() {
    let shapes: Vec<ChainComplex> = vec![
        ChainComplex::new(vec![0], vec![]).unwrap(),
        ChainComplex::new(vec![0, 0], vec![Matrix::zeros(0, 0)]).unwrap(),
        ChainComplex::new(vec![3], vec![]).unwrap(),
        ChainComplex::new(vec![2, 2], vec![Matrix::zeros(2, 2)]).unwrap(),
        ChainComplex::new(
            vec![0, 2, 0],
            vec![Matrix::zeros(0, 2), Matrix::zeros(2, 0)],
        )
        .unwrap(),
    ];
    for (i, complex) in shapes.iter().enumerate() {
        for ring in rings() {
            assert_eq!(
                complex.homology_with(&ring),
                complex.field_homology(&ring).unwrap(),
                "shape {i}, ring {ring}"
            );
            assert_eq!(
                complex.cohomology_with(&ring),
                complex.field_cohomology(&ring).unwrap(),
                "shape {i}, ring {ring}"
            );
        }
    }
}
