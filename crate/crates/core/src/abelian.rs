//! Finitely generated abelian groups in invariant-factor form, coefficient
//! rings, and the symbolic values that limit computations produce.
//!
//! `FgAbGroup` is an isomorphism class: a free rank plus invariant factors
//! `d1 | d2 | ...` with every `di >= 2`. Anything presented by an integer
//! matrix funnels through `group_from_relations`, so equality of classes is
//! plain structural equality.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::primes::{is_prime, PrimeSet};
use crate::snf::smith_normal_form;
use crate::{Int, IntMatrix};
use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    /// Each factor is at least 2 and divides the next.
    invariant_factors: Vec<BigUint>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Result<Self> {
        Self::cyclic_big(BigUint::from(order))
    }

    pub fn cyclic_big(order: BigUint) -> Result<Self> {
        if order.is_zero() {
            return Err(Error::ZeroCyclicOrder);
        }
        Ok(FgAbGroup::from_parts(0, vec![order]))
    }

    /// Assemble from an arbitrary multiset of cyclic orders plus a free rank;
    /// the factors are normalized into a divisibility chain. Orders equal to
    /// 1 are dropped. Zero orders are not accepted here: a zero order means a
    /// free summand and callers must say so via `free_rank`.
    pub fn from_parts(free_rank: usize, factors: Vec<BigUint>) -> Self {
        assert!(
            factors.iter().all(|d| !d.is_zero()),
            "cyclic factors must be nonzero; use free_rank for infinite summands"
        );
        FgAbGroup {
            free_rank,
            invariant_factors: normalize_factors(factors),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    /// Generators of the canonical presentation: free generators first, then
    /// one generator per invariant factor.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    pub fn torsion(&self) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut factors = self.invariant_factors.clone();
        factors.extend_from_slice(&other.invariant_factors);
        FgAbGroup::from_parts(self.free_rank + other.free_rank, factors)
    }

    /// Relators of the canonical presentation, one per column: the free
    /// generators satisfy no relations, the torsion generator for `di` is
    /// killed by `di`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let gens = self.num_generators();
        let mut m = Matrix::zeros(gens, self.invariant_factors.len());
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m[(self.free_rank + i, i)] = Int::from(d.clone());
        }
        m
    }

    // Functor values on a cyclic order `d` against a modulus `m`:
    // tensor and hom give gcd(d, m), as do the two derived functors.

    pub fn tensor_mod(&self, m: &BigUint) -> FgAbGroup {
        let mut factors = vec![m.clone(); self.free_rank];
        factors.extend(self.invariant_factors.iter().map(|d| d.gcd(m)));
        FgAbGroup::from_parts(0, factors)
    }

    pub fn hom_into_mod(&self, m: &BigUint) -> FgAbGroup {
        self.tensor_mod(m)
    }

    pub fn torsion_product_mod(&self, m: &BigUint) -> FgAbGroup {
        let factors = self
            .invariant_factors
            .iter()
            .map(|d| d.gcd(m))
            .collect::<Vec<_>>();
        FgAbGroup::from_parts(0, factors)
    }

    pub fn ext_into_mod(&self, m: &BigUint) -> FgAbGroup {
        self.torsion_product_mod(m)
    }

    pub fn hom_into_int(&self) -> FgAbGroup {
        FgAbGroup::free(self.free_rank)
    }

    pub fn ext_into_int(&self) -> FgAbGroup {
        self.torsion()
    }

    /// Tensoring with the ring, `- (x) R`.
    pub fn tensor_with(&self, ring: &CoefficientRing) -> SymbolicGroup {
        match ring {
            CoefficientRing::Integers => SymbolicGroup::fg(self.clone()),
            CoefficientRing::Rationals => SymbolicGroup::rationals_power(self.free_rank),
            CoefficientRing::Mod(m) => SymbolicGroup::fg(self.tensor_mod(&m.big())),
        }
    }

    /// First derived functor of tensoring, `Tor(-, R)`.
    pub fn tor_with(&self, ring: &CoefficientRing) -> SymbolicGroup {
        match ring {
            CoefficientRing::Integers | CoefficientRing::Rationals => SymbolicGroup::Trivial,
            CoefficientRing::Mod(m) => SymbolicGroup::fg(self.torsion_product_mod(&m.big())),
        }
    }

    /// `Hom(-, R)`.
    pub fn hom_into(&self, ring: &CoefficientRing) -> SymbolicGroup {
        match ring {
            CoefficientRing::Integers => SymbolicGroup::fg(self.hom_into_int()),
            CoefficientRing::Rationals => SymbolicGroup::rationals_power(self.free_rank),
            CoefficientRing::Mod(m) => SymbolicGroup::fg(self.hom_into_mod(&m.big())),
        }
    }

    /// `Ext(-, R)`.
    pub fn ext_into(&self, ring: &CoefficientRing) -> SymbolicGroup {
        match ring {
            CoefficientRing::Integers => SymbolicGroup::fg(self.ext_into_int()),
            CoefficientRing::Rationals => SymbolicGroup::Trivial,
            CoefficientRing::Mod(m) => SymbolicGroup::fg(self.ext_into_mod(&m.big())),
        }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sort cyclic orders into a divisibility chain by repeated gcd/lcm
/// replacement; the multiset of p-adic valuations for each prime gets sorted,
/// so no factoring is needed.
fn normalize_factors(mut factors: Vec<BigUint>) -> Vec<BigUint> {
    factors.retain(|d| !d.is_one());
    loop {
        let mut changed = false;
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if (&factors[j] % &factors[i]).is_zero() {
                    continue;
                }
                let g = factors[i].gcd(&factors[j]);
                let l = factors[i].lcm(&factors[j]);
                factors[i] = g;
                factors[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    factors.retain(|d| !d.is_one());
    factors.sort();
    factors
}

/// The group presented by `relations`: one generator per row, one relator per
/// column.
pub fn group_from_relations(relations: &IntMatrix) -> FgAbGroup {
    let dec = smith_normal_form(relations);
    let factors = dec
        .elementary_divisors()
        .into_iter()
        .map(|d| d.magnitude().clone())
        .collect();
    FgAbGroup::from_parts(relations.rows() - dec.rank, factors)
}

/// A modulus with its primality recorded once at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    value: u64,
    prime: bool,
}

impl Modulus {
    pub fn new(value: u64) -> Result<Self> {
        if value < 2 {
            return Err(Error::InvalidModulus(value));
        }
        Ok(Modulus {
            value,
            prime: is_prime(value),
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_prime(&self) -> bool {
        self.prime
    }

    pub fn big(&self) -> BigUint {
        BigUint::from(self.value)
    }
}

/// Coefficients for (co)homology: the integers, the rationals, or the
/// integers modulo `m` with `m >= 2` (prime or not).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    Mod(Modulus),
}

impl CoefficientRing {
    pub fn modulus(m: u64) -> Result<Self> {
        Ok(CoefficientRing::Mod(Modulus::new(m)?))
    }

    /// The underlying additive group of the ring.
    pub fn as_group(&self) -> SymbolicGroup {
        match self {
            CoefficientRing::Integers => SymbolicGroup::free(1),
            CoefficientRing::Rationals => SymbolicGroup::Rationals,
            CoefficientRing::Mod(m) => SymbolicGroup::cyclic_big(m.big()),
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            CoefficientRing::Integers => false,
            CoefficientRing::Rationals => true,
            CoefficientRing::Mod(m) => m.is_prime(),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("z") {
            return Ok(CoefficientRing::Integers);
        }
        if t.eq_ignore_ascii_case("q") {
            return Ok(CoefficientRing::Rationals);
        }
        if let Some(rest) = t.strip_prefix("mod:") {
            let value: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::UnknownRing(s.to_string()))?;
            return CoefficientRing::modulus(value);
        }
        Err(Error::UnknownRing(s.to_string()))
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::Mod(m) => write!(f, "mod:{}", m.value()),
        }
    }
}

/// Why a value is known to be nonzero even though its isomorphism type is
/// not pinned down.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NonTrivialReason {
    /// An inverse tower of finitely generated groups with unbounded images
    /// has nonvanishing derived limit.
    MittagLefflerFailsFgTower,
    /// The value receives an injection from a nonzero group.
    ReceivesMonomorphism,
    /// The value surjects onto a nonzero group.
    SurjectsOntoNontrivial,
    /// A colimit stage already has nonzero cokernel that later bonds preserve.
    StageCokernelNonzero,
}

impl NonTrivialReason {
    pub fn code(&self) -> &'static str {
        match self {
            NonTrivialReason::MittagLefflerFailsFgTower => "ml-fails-fg-tower",
            NonTrivialReason::ReceivesMonomorphism => "receives-monomorphism",
            NonTrivialReason::SurjectsOntoNontrivial => "surjects-onto-nontrivial",
            NonTrivialReason::StageCokernelNonzero => "stage-cokernel-nonzero",
        }
    }
}

impl fmt::Display for NonTrivialReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// A group value that may live outside the finitely generated world.
///
/// Values are kept in a canonical form: `Fg` holds a nontrivial group,
/// `DirectSum` is flat with at least two summands and at most one `Fg` part,
/// and summands are sorted. Construct sums through [`SymbolicGroup::sum`] to
/// preserve this.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicGroup {
    Trivial,
    Fg(FgAbGroup),
    Rationals,
    /// Integers with every prime of the set inverted.
    LocalizedIntegers(PrimeSet),
    DirectSum(Vec<SymbolicGroup>),
    /// Certified nonzero; isomorphism type undetermined.
    NonTrivialUnknown(NonTrivialReason),
    Unknown,
}

impl SymbolicGroup {
    pub fn fg(group: FgAbGroup) -> SymbolicGroup {
        if group.is_trivial() {
            SymbolicGroup::Trivial
        } else {
            SymbolicGroup::Fg(group)
        }
    }

    pub fn free(rank: usize) -> SymbolicGroup {
        SymbolicGroup::fg(FgAbGroup::free(rank))
    }

    pub fn cyclic(order: u64) -> SymbolicGroup {
        SymbolicGroup::cyclic_big(BigUint::from(order))
    }

    pub fn cyclic_big(order: BigUint) -> SymbolicGroup {
        assert!(!order.is_zero(), "cyclic order must be positive");
        SymbolicGroup::fg(FgAbGroup::from_parts(0, vec![order]))
    }

    pub fn rationals_power(dim: usize) -> SymbolicGroup {
        SymbolicGroup::sum((0..dim).map(|_| SymbolicGroup::Rationals).collect())
    }

    /// Canonical direct sum: flattens, drops trivial parts, merges all
    /// finitely generated parts into one, and sorts the rest.
    pub fn sum(parts: Vec<SymbolicGroup>) -> SymbolicGroup {
        let mut fg_acc = FgAbGroup::trivial();
        let mut rationals = 0usize;
        let mut localized: Vec<PrimeSet> = Vec::new();
        let mut reasons: Vec<NonTrivialReason> = Vec::new();
        let mut unknown = false;
        let mut stack = parts;
        while let Some(part) = stack.pop() {
            match part {
                SymbolicGroup::Trivial => {}
                SymbolicGroup::Fg(g) => fg_acc = fg_acc.direct_sum(&g),
                SymbolicGroup::Rationals => rationals += 1,
                SymbolicGroup::LocalizedIntegers(ps) => localized.push(ps),
                SymbolicGroup::DirectSum(inner) => stack.extend(inner),
                SymbolicGroup::NonTrivialUnknown(r) => reasons.push(r),
                SymbolicGroup::Unknown => unknown = true,
            }
        }
        localized.sort_by_key(PrimeSet::to_string);
        reasons.sort();
        let mut out = Vec::new();
        if !fg_acc.is_trivial() {
            out.push(SymbolicGroup::Fg(fg_acc));
        }
        out.extend((0..rationals).map(|_| SymbolicGroup::Rationals));
        out.extend(localized.into_iter().map(SymbolicGroup::LocalizedIntegers));
        out.extend(reasons.into_iter().map(SymbolicGroup::NonTrivialUnknown));
        if unknown {
            out.push(SymbolicGroup::Unknown);
        }
        match out.len() {
            0 => SymbolicGroup::Trivial,
            1 => out.pop().unwrap(),
            _ => SymbolicGroup::DirectSum(out),
        }
    }

    /// True when the value is provably nonzero, whatever the unknown parts
    /// turn out to be.
    pub fn is_certified_nonzero(&self) -> bool {
        match self {
            SymbolicGroup::Trivial | SymbolicGroup::Unknown => false,
            SymbolicGroup::Fg(g) => !g.is_trivial(),
            SymbolicGroup::Rationals
            | SymbolicGroup::LocalizedIntegers(_)
            | SymbolicGroup::NonTrivialUnknown(_) => true,
            SymbolicGroup::DirectSum(parts) => parts.iter().any(Self::is_certified_nonzero),
        }
    }

    pub fn is_certified_trivial(&self) -> bool {
        matches!(self, SymbolicGroup::Trivial)
    }

    /// True when any part of the value is undetermined.
    pub fn has_unknown_part(&self) -> bool {
        match self {
            SymbolicGroup::Unknown | SymbolicGroup::NonTrivialUnknown(_) => true,
            SymbolicGroup::DirectSum(parts) => parts.iter().any(Self::has_unknown_part),
            _ => false,
        }
    }

    /// The value as a finitely generated group, if it is one.
    pub fn to_fg(&self) -> Option<FgAbGroup> {
        match self {
            SymbolicGroup::Trivial => Some(FgAbGroup::trivial()),
            SymbolicGroup::Fg(g) => Some(g.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for SymbolicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicGroup::Trivial => write!(f, "0"),
            SymbolicGroup::Fg(g) => write!(f, "{g}"),
            SymbolicGroup::Rationals => write!(f, "Q"),
            SymbolicGroup::LocalizedIntegers(ps) => write!(f, "Z[1/({ps})]"),
            SymbolicGroup::DirectSum(parts) => {
                let mut rendered: Vec<String> = Vec::new();
                let mut i = 0;
                while i < parts.len() {
                    if parts[i] == SymbolicGroup::Rationals {
                        let run = parts[i..]
                            .iter()
                            .take_while(|p| **p == SymbolicGroup::Rationals)
                            .count();
                        rendered.push(if run == 1 {
                            "Q".to_string()
                        } else {
                            format!("Q^{run}")
                        });
                        i += run;
                    } else {
                        rendered.push(parts[i].to_string());
                        i += 1;
                    }
                }
                write!(f, "{}", rendered.join(" + "))
            }
            SymbolicGroup::NonTrivialUnknown(r) => write!(f, "nonzero[{r}]"),
            SymbolicGroup::Unknown => write!(f, "unknown"),
        }
    }
}

fn column(b: &[Int]) -> IntMatrix {
    Matrix::new(b.len(), 1, b.to_vec())
}

/// Whether `a x = b` has an integer solution.
pub fn linear_solvable(a: &IntMatrix, b: &[Int]) -> bool {
    assert_eq!(a.rows(), b.len(), "right-hand side length must match rows");
    let dec = smith_normal_form(a);
    let c = dec.left.mul(&column(b));
    let diag = dec.diagonal_entries();
    (0..a.rows()).all(|i| {
        if i < dec.rank {
            (&c[(i, 0)] % &diag[i]).is_zero()
        } else {
            c[(i, 0)].is_zero()
        }
    })
}

/// Whether the column `b` lies in the span of the columns of `a`.
pub fn span_contains(a: &IntMatrix, b: &[Int]) -> bool {
    linear_solvable(a, b)
}

/// Whether the columns of `a` and `b` span the same subgroup.
pub fn spans_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows());
    (0..b.cols()).all(|j| span_contains(a, &b.column(j)))
        && (0..a.cols()).all(|j| span_contains(b, &a.column(j)))
}

/// Span equality after passing to the quotient by the ambient relations.
pub fn spans_equal_mod(ambient_relations: &IntMatrix, a: &IntMatrix, b: &IntMatrix) -> bool {
    spans_equal(&a.hstack(ambient_relations), &b.hstack(ambient_relations))
}

/// Isomorphism type of the subgroup generated by the columns of `generators`
/// inside the group presented by `ambient_relations`.
///
/// A combination of the generators vanishes in the ambient group exactly when
/// it extends to a kernel element of `[generators | ambient_relations]`, so
/// projecting that kernel onto the generator coordinates presents the
/// subgroup.
pub fn subgroup_type(ambient_relations: &IntMatrix, generators: &IntMatrix) -> FgAbGroup {
    assert_eq!(ambient_relations.rows(), generators.rows());
    let s = generators.cols();
    let combined = generators.hstack(ambient_relations);
    let kernel = smith_normal_form(&combined).kernel_basis();
    group_from_relations(&kernel.submatrix_rows(0..s))
}

/// Check that `matrix` really induces a homomorphism `source -> target` of
/// the presented groups: dimensions fit and every source relator maps into
/// the target relations.
pub fn validate_map(source: &FgAbGroup, target: &FgAbGroup, matrix: &IntMatrix) -> Result<()> {
    if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
        return Err(Error::IllDefinedMap(format!(
            "matrix is {}x{} but the groups have {} and {} generators",
            matrix.rows(),
            matrix.cols(),
            target.num_generators(),
            source.num_generators()
        )));
    }
    let source_rels = source.relation_matrix();
    let target_rels = target.relation_matrix();
    for j in 0..source_rels.cols() {
        let image = matrix.mul(&column(&source_rels.column(j)));
        if !span_contains(&target_rels, &image.column(0)) {
            return Err(Error::IllDefinedMap(format!(
                "source relator {j} does not map into the target relations"
            )));
        }
    }
    Ok(())
}

/// Kernel and cokernel of the map `source -> target` whose matrix is written
/// against the canonical presentations (column `j` is the image of the `j`-th
/// source generator).
pub fn map_kernel_cokernel(
    source: &FgAbGroup,
    target: &FgAbGroup,
    matrix: &IntMatrix,
) -> Result<(FgAbGroup, FgAbGroup)> {
    validate_map(source, target, matrix)?;
    let target_rels = target.relation_matrix();
    let source_rels = source.relation_matrix();
    let cokernel = group_from_relations(&matrix.hstack(&target_rels));
    // Elements mapping into the target relations, expressed in source
    // generators, generate the kernel subgroup.
    let combined = matrix.hstack(&target_rels);
    let kernel_lift = smith_normal_form(&combined).kernel_basis();
    let preimage_gens = kernel_lift.submatrix_rows(0..source.num_generators());
    let kernel = subgroup_type(&source_rels, &preimage_gens);
    Ok((kernel, cokernel))
}
