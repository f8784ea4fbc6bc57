//! Towers of abelian groups and their limits.
//!
//! A tower is a sequence of groups with bonding maps, either inverse
//! (`A0 <- A1 <- ...`) or direct (`A0 -> A1 -> ...`). The interesting towers
//! here are multiplication towers: one fixed base group with bonds that
//! multiply by products of primes drawn from a chosen set. Limits, colimits,
//! and the derived limit of such towers have closed forms, and the module
//! computes them symbolically with a trace.
//!
//! Independently, `truncation_oracle` knows nothing about the closed forms:
//! it realizes finitely many levels, follows image or kernel chains until
//! they stop moving, and either certifies a stabilized answer or reports
//! honest depth-limited artifacts. Tests play the two paths against each
//! other.

use crate::abelian::{
    group_from_relations, map_kernel_cokernel, spans_equal, spans_equal_mod, subgroup_type,
    validate_map, FgAbGroup, NonTrivialReason, SymbolicGroup,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::primes::{coprime_part, MultiplierSequence, PrimeSet};
use crate::snf::smith_normal_form;
use crate::trace::TraceStep;
use crate::{Int, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Bonds point down: `A0 <- A1 <- A2 <- ...`
    Inverse,
    /// Bonds point up: `A0 -> A1 -> A2 -> ...`
    Direct,
}

impl Direction {
    fn word(self) -> &'static str {
        match self {
            Direction::Inverse => "inverse",
            Direction::Direct => "direct",
        }
    }
}

/// Base group of a multiplication tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerBase {
    Integers,
    Rationals,
    Cyclic(u64),
}

#[derive(Clone, Debug)]
pub enum TowerKind {
    /// One fixed base with multiplication bonds drawn from a prime set. The
    /// `offset` drops that many leading multipliers; it never changes any
    /// limit because only the tail of a tower matters.
    Multiplication {
        base: TowerBase,
        multipliers: MultiplierSequence,
        offset: usize,
    },
    /// Identity bonds on a fixed value.
    Constant(SymbolicGroup),
    /// A finite window of explicitly given levels and bonds. Limits are
    /// reported only when they visibly stabilize inside the window.
    Explicit {
        levels: Vec<FgAbGroup>,
        bonds: Vec<IntMatrix>,
    },
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub direction: Direction,
    pub kind: TowerKind,
}

/// A symbolic value together with the reasoning that produced it.
#[derive(Clone, Debug)]
pub struct TowerAnalysis {
    pub value: SymbolicGroup,
    pub trace: Vec<TraceStep>,
}

/// Whether the images in an inverse tower stabilize levelwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MittagLeffler {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct MlAnalysis {
    pub status: MittagLeffler,
    pub trace: Vec<TraceStep>,
}

/// Levels and bonds actually materialized for a finite window.
#[derive(Clone, Debug)]
pub struct RealizedTower {
    pub direction: Direction,
    pub levels: Vec<FgAbGroup>,
    /// For an inverse tower `bonds[j]` maps level `j + 1` to level `j`; for
    /// a direct tower it maps level `j` to level `j + 1`.
    pub bonds: Vec<IntMatrix>,
}

/// Result of a truncation probe. When `stabilized` is false, `value` and
/// `defect` are the kernel and cokernel of the end-to-end composite: honest
/// depth-limited artifacts, not limits.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub depth: usize,
    pub stabilized: bool,
    pub value: FgAbGroup,
    pub defect: FgAbGroup,
    pub notes: Vec<String>,
}

impl Tower {
    pub fn multiplication(
        direction: Direction,
        base: TowerBase,
        primes: PrimeSet,
        offset: usize,
    ) -> Result<Tower> {
        if let TowerBase::Cyclic(0) = base {
            return Err(Error::ZeroCyclicOrder);
        }
        Ok(Tower {
            direction,
            kind: TowerKind::Multiplication {
                base,
                multipliers: MultiplierSequence::new(primes),
                offset,
            },
        })
    }

    pub fn constant(direction: Direction, value: SymbolicGroup) -> Tower {
        Tower {
            direction,
            kind: TowerKind::Constant(value),
        }
    }

    pub fn explicit(
        direction: Direction,
        levels: Vec<FgAbGroup>,
        bonds: Vec<IntMatrix>,
    ) -> Result<Tower> {
        if levels.is_empty() {
            return Err(Error::InvalidTower("no levels".into()));
        }
        if bonds.len() + 1 != levels.len() {
            return Err(Error::InvalidTower(format!(
                "{} levels need {} bonds, got {}",
                levels.len(),
                levels.len() - 1,
                bonds.len()
            )));
        }
        for (j, bond) in bonds.iter().enumerate() {
            let (source, target) = match direction {
                Direction::Inverse => (&levels[j + 1], &levels[j]),
                Direction::Direct => (&levels[j], &levels[j + 1]),
            };
            validate_map(source, target, bond)
                .map_err(|e| Error::InvalidTower(format!("bond {j}: {e}")))?;
        }
        Ok(Tower {
            direction,
            kind: TowerKind::Explicit { levels, bonds },
        })
    }

    fn require_direction(&self, op: &'static str, want: Direction) -> Result<()> {
        if self.direction == want {
            Ok(())
        } else {
            Err(Error::DirectionMismatch {
                op,
                expected: want.word(),
            })
        }
    }

    /// Colimit of a direct tower.
    pub fn colimit(&self) -> Result<TowerAnalysis> {
        self.require_direction("colimit", Direction::Direct)?;
        match &self.kind {
            TowerKind::Constant(v) => Ok(constant_analysis(v, "colimit")),
            TowerKind::Multiplication {
                base, multipliers, ..
            } => Ok(multiplication_colimit(base, multipliers)),
            TowerKind::Explicit { .. } => self.window_analysis("colimit"),
        }
    }

    /// Limit of an inverse tower.
    pub fn limit(&self) -> Result<TowerAnalysis> {
        self.require_direction("limit", Direction::Inverse)?;
        match &self.kind {
            TowerKind::Constant(v) => Ok(constant_analysis(v, "limit")),
            TowerKind::Multiplication {
                base, multipliers, ..
            } => Ok(multiplication_limit(base, multipliers)),
            TowerKind::Explicit { .. } => self.window_analysis("limit"),
        }
    }

    /// Whether the inverse tower has stabilizing images.
    pub fn mittag_leffler(&self) -> Result<MlAnalysis> {
        self.require_direction("mittag-leffler", Direction::Inverse)?;
        match &self.kind {
            TowerKind::Constant(_) => Ok(MlAnalysis {
                status: MittagLeffler::Holds,
                trace: vec![TraceStep::new(
                    "identity-bonds",
                    "tower",
                    "identity bonds have constant images",
                )],
            }),
            TowerKind::Multiplication {
                base, multipliers, ..
            } => Ok(multiplication_ml(base, multipliers)),
            TowerKind::Explicit { levels, .. } => {
                if levels.len() < 6 {
                    return Ok(MlAnalysis {
                        status: MittagLeffler::Unknown,
                        trace: vec![TraceStep::new(
                            "window-too-short",
                            "mittag-leffler",
                            format!("{} levels are too few to probe stabilization", levels.len()),
                        )],
                    });
                }
                let outcome = self.truncation_oracle(levels.len())?;
                if outcome.stabilized {
                    Ok(MlAnalysis {
                        status: MittagLeffler::Holds,
                        trace: vec![TraceStep::new(
                            "window-stabilized",
                            "tower",
                            "image chains stopped moving inside the explicit window",
                        )],
                    })
                } else {
                    Ok(MlAnalysis {
                        status: MittagLeffler::Unknown,
                        trace: vec![TraceStep::new(
                            "window-exhausted",
                            "tower",
                            "image chains were still moving when the window ended",
                        )],
                    })
                }
            }
        }
    }

    /// Derived limit of an inverse tower.
    pub fn derived_limit(&self) -> Result<TowerAnalysis> {
        self.require_direction("derived-limit", Direction::Inverse)?;
        let ml = self.mittag_leffler()?;
        let mut trace = ml.trace;
        match ml.status {
            MittagLeffler::Holds => {
                trace.push(TraceStep::new(
                    "stable-images-kill-derived-limit",
                    "tower",
                    "stabilizing images force a vanishing derived limit",
                ));
                Ok(TowerAnalysis {
                    value: SymbolicGroup::Trivial,
                    trace,
                })
            }
            MittagLeffler::Fails => {
                if self.levels_finitely_generated() {
                    trace.push(TraceStep::new(
                        "fg-dichotomy",
                        "tower",
                        "for towers of finitely generated groups the derived limit \
                         either vanishes or is nonzero; images do not stabilize here, \
                         so it is nonzero (isomorphism type not determined)",
                    ));
                    Ok(TowerAnalysis {
                        value: SymbolicGroup::NonTrivialUnknown(
                            NonTrivialReason::MittagLefflerFailsFgTower,
                        ),
                        trace,
                    })
                } else {
                    trace.push(TraceStep::new(
                        "no-dichotomy",
                        "tower",
                        "levels are not finitely generated; no conclusion",
                    ));
                    Ok(TowerAnalysis {
                        value: SymbolicGroup::Unknown,
                        trace,
                    })
                }
            }
            MittagLeffler::Unknown => Ok(TowerAnalysis {
                value: SymbolicGroup::Unknown,
                trace,
            }),
        }
    }

    fn levels_finitely_generated(&self) -> bool {
        match &self.kind {
            TowerKind::Multiplication { base, .. } => {
                matches!(base, TowerBase::Integers | TowerBase::Cyclic(_))
            }
            TowerKind::Constant(v) => v.to_fg().is_some(),
            TowerKind::Explicit { .. } => true,
        }
    }

    /// Materialize `depth` levels. Fails for levels that are not finitely
    /// generated (nothing to write a matrix against).
    pub fn realize(&self, depth: usize) -> Result<RealizedTower> {
        match &self.kind {
            TowerKind::Multiplication {
                base,
                multipliers,
                offset,
            } => {
                let level = match base {
                    TowerBase::Integers => FgAbGroup::free(1),
                    TowerBase::Cyclic(m) => FgAbGroup::cyclic(*m)?,
                    TowerBase::Rationals => {
                        return Err(Error::NotRealizable(
                            "rational levels are not finitely generated".into(),
                        ))
                    }
                };
                let bonds = (0..depth.saturating_sub(1))
                    .map(|j| {
                        let n = multipliers.multiplier(offset + j);
                        Matrix::new(1, 1, vec![Int::from(n)])
                    })
                    .collect();
                Ok(RealizedTower {
                    direction: self.direction,
                    levels: vec![level; depth],
                    bonds,
                })
            }
            TowerKind::Constant(v) => {
                let level = v.to_fg().ok_or_else(|| {
                    Error::NotRealizable(format!("constant value {v} is not finitely generated"))
                })?;
                let g = level.num_generators();
                Ok(RealizedTower {
                    direction: self.direction,
                    levels: vec![level; depth],
                    bonds: vec![Matrix::identity(g); depth.saturating_sub(1)],
                })
            }
            TowerKind::Explicit { levels, bonds } => {
                let take = depth.min(levels.len());
                Ok(RealizedTower {
                    direction: self.direction,
                    levels: levels[..take].to_vec(),
                    bonds: bonds[..take.saturating_sub(1)].to_vec(),
                })
            }
        }
    }

    /// Probe the tower at two nearby depths and report either a stabilized
    /// limit (inverse) or colimit (direct), or depth-limited artifacts.
    pub fn truncation_oracle(&self, depth: usize) -> Result<OracleOutcome> {
        if depth < 6 {
            return Err(Error::DepthTooSmall(depth));
        }
        let realized = self.realize(depth)?;
        let t_full = realized.levels.len();
        if t_full < 6 {
            return Err(Error::DepthTooSmall(t_full));
        }
        let probe = |t: usize| -> Option<FgAbGroup> {
            match self.direction {
                Direction::Inverse => stable_inverse_value(&realized, t),
                Direction::Direct => stable_direct_value(&realized, t),
            }
        };
        let first = probe(t_full - 1);
        let second = probe(t_full);
        let mut notes = Vec::new();
        if let (Some(a), Some(b)) = (&first, &second) {
            if a == b {
                notes.push(format!(
                    "chains stopped moving at both probe depths ({} and {}) and agree",
                    t_full - 1,
                    t_full
                ));
                return Ok(OracleOutcome {
                    depth: t_full,
                    stabilized: true,
                    value: a.clone(),
                    defect: FgAbGroup::trivial(),
                    notes,
                });
            }
            notes.push("probe depths disagree; reporting artifacts".into());
        } else {
            notes.push("chains were still moving at the probe depths".into());
        }
        // End-to-end composite across the whole window.
        let composite = realized
            .bonds
            .iter()
            .skip(1)
            .fold(realized.bonds[0].clone(), |acc, b| match self.direction {
                Direction::Inverse => acc.mul(b),
                Direction::Direct => b.mul(&acc),
            });
        let (source, target) = match self.direction {
            Direction::Inverse => (&realized.levels[t_full - 1], &realized.levels[0]),
            Direction::Direct => (&realized.levels[0], &realized.levels[t_full - 1]),
        };
        let (kernel, cokernel) = map_kernel_cokernel(source, target, &composite)?;
        notes.push(format!(
            "kernel and cokernel of the composite across {} bonds; these are \
             window artifacts, not limits",
            t_full - 1
        ));
        Ok(OracleOutcome {
            depth: t_full,
            stabilized: false,
            value: kernel,
            defect: cokernel,
            notes,
        })
    }

    /// Symbolic answer for an explicit window: the oracle value when the
    /// window visibly stabilizes, otherwise unknown.
    fn window_analysis(&self, op: &'static str) -> Result<TowerAnalysis> {
        let len = match &self.kind {
            TowerKind::Explicit { levels, .. } => levels.len(),
            _ => unreachable!("window analysis is only for explicit towers"),
        };
        if len < 6 {
            return Ok(TowerAnalysis {
                value: SymbolicGroup::Unknown,
                trace: vec![TraceStep::new(
                    "window-too-short",
                    op,
                    format!("{len} levels are too few to probe stabilization"),
                )],
            });
        }
        let outcome = self.truncation_oracle(len)?;
        if outcome.stabilized {
            Ok(TowerAnalysis {
                value: SymbolicGroup::fg(outcome.value),
                trace: vec![TraceStep::new(
                    "window-stabilized",
                    op,
                    "chains stopped moving inside the explicit window",
                )],
            })
        } else {
            Ok(TowerAnalysis {
                value: SymbolicGroup::Unknown,
                trace: vec![TraceStep::new(
                    "window-exhausted",
                    op,
                    "chains were still moving when the window ended",
                )],
            })
        }
    }
}

fn constant_analysis(v: &SymbolicGroup, op: &'static str) -> TowerAnalysis {
    TowerAnalysis {
        value: v.clone(),
        trace: vec![TraceStep::new(
            "identity-bonds",
            op,
            "identity bonds: the tower is constant",
        )],
    }
}

fn multiplication_colimit(base: &TowerBase, multipliers: &MultiplierSequence) -> TowerAnalysis {
    let primes = multipliers.prime_set().clone();
    match base {
        TowerBase::Rationals => TowerAnalysis {
            value: SymbolicGroup::Rationals,
            trace: vec![TraceStep::new(
                "iso-bonds",
                "colimit",
                "multiplication is invertible on the rationals, so every bond is an isomorphism",
            )],
        },
        TowerBase::Integers => TowerAnalysis {
            value: SymbolicGroup::LocalizedIntegers(primes.clone()),
            trace: vec![TraceStep::new(
                "bonds-become-invertible",
                "colimit",
                format!(
                    "each multiplier becomes invertible in the colimit, \
                     giving the integers with {{{primes}}} inverted"
                ),
            )],
        },
        TowerBase::Cyclic(m) => {
            let m_prime = coprime_part(*m, &primes);
            let mut trace = vec![TraceStep::new(
                "prime-part-collapse",
                "colimit",
                format!(
                    "splitting Z/{m} by prime powers: parts at primes of the set die \
                     under repeated multiplication, the rest sees unit bonds; \
                     surviving modulus {m_prime}"
                ),
            )];
            let value = if m_prime == 1 {
                trace.push(TraceStep::new(
                    "all-parts-die",
                    "colimit",
                    "every prime power part is at a multiplier prime",
                ));
                SymbolicGroup::Trivial
            } else {
                SymbolicGroup::cyclic(m_prime)
            };
            TowerAnalysis { value, trace }
        }
    }
}

fn multiplication_limit(base: &TowerBase, multipliers: &MultiplierSequence) -> TowerAnalysis {
    let primes = multipliers.prime_set().clone();
    match base {
        TowerBase::Rationals => TowerAnalysis {
            value: SymbolicGroup::Rationals,
            trace: vec![TraceStep::new(
                "iso-bonds",
                "limit",
                "multiplication is invertible on the rationals, so every bond is an isomorphism",
            )],
        },
        TowerBase::Integers => {
            debug_assert!(multipliers.exceeds_one_infinitely_often());
            TowerAnalysis {
                value: SymbolicGroup::Trivial,
                trace: vec![TraceStep::new(
                    "unbounded-divisibility",
                    "limit",
                    "a compatible sequence is divisible by arbitrarily large products, \
                     and only zero is",
                )],
            }
        }
        TowerBase::Cyclic(m) => {
            let m_prime = coprime_part(*m, &primes);
            let mut trace = vec![TraceStep::new(
                "prime-part-collapse",
                "limit",
                format!(
                    "splitting Z/{m} by prime powers: parts at primes of the set have \
                     nilpotent composite bonds, the rest sees unit bonds; \
                     surviving modulus {m_prime}"
                ),
            )];
            let value = if m_prime == 1 {
                trace.push(TraceStep::new(
                    "all-parts-die",
                    "limit",
                    "every prime power part is at a multiplier prime",
                ));
                SymbolicGroup::Trivial
            } else {
                SymbolicGroup::cyclic(m_prime)
            };
            TowerAnalysis { value, trace }
        }
    }
}

fn multiplication_ml(base: &TowerBase, multipliers: &MultiplierSequence) -> MlAnalysis {
    match base {
        TowerBase::Rationals => MlAnalysis {
            status: MittagLeffler::Holds,
            trace: vec![TraceStep::new(
                "iso-bonds",
                "mittag-leffler",
                "isomorphism bonds have constant images",
            )],
        },
        TowerBase::Cyclic(_) => MlAnalysis {
            status: MittagLeffler::Holds,
            trace: vec![TraceStep::new(
                "finite-levels",
                "mittag-leffler",
                "a descending chain of subgroups of a finite group stabilizes",
            )],
        },
        TowerBase::Integers => {
            debug_assert!(multipliers.exceeds_one_infinitely_often());
            MlAnalysis {
                status: MittagLeffler::Fails,
                trace: vec![TraceStep::new(
                    "strictly-shrinking-images",
                    "mittag-leffler",
                    "images are ideals generated by ever larger products and never stabilize",
                )],
            }
        }
    }
}

/// Monitored prefix for a probe of length `t`: deep enough below the window
/// edge that each image chain has at least two entries to compare.
fn monitored_limit(t: usize) -> usize {
    (t - 3).min(t / 2)
}

/// Stable value of an inverse window of length `t`, if every monitored image
/// chain stops moving and the deepest stable images share one isomorphism
/// type.
///
/// Soundness: stable images with one type give a sub-tower of surjections
/// between groups of the same finitely generated type; such surjections are
/// isomorphisms, so the limit is that type.
fn stable_inverse_value(realized: &RealizedTower, t: usize) -> Option<FgAbGroup> {
    let k_max = monitored_limit(t);
    let mut tail_types: Vec<FgAbGroup> = Vec::new();
    for k in 0..=k_max {
        let rels = realized.levels[k].relation_matrix();
        // Composites from deeper and deeper levels into level k.
        let mut composite = realized.bonds[k].clone();
        let mut previous: Option<IntMatrix> = None;
        for j in k + 2..=t - 1 {
            previous = Some(composite.clone());
            composite = composite.mul(&realized.bonds[j - 1]);
        }
        let prev = previous?; // t >= k + 3 by the monitored bound
        if !spans_equal_mod(&rels, &prev, &composite) {
            return None;
        }
        tail_types.push(subgroup_type(&rels, &composite));
    }
    // The last few monitored types must agree.
    let tail = &tail_types[k_max.saturating_sub(2)..];
    if tail.windows(2).any(|w| w[0] != w[1]) {
        return None;
    }
    tail_types.pop()
}

/// Stable value of a direct window of length `t`, if every monitored kernel
/// chain stops moving and the tail quotients map onto each other.
///
/// Soundness: once the eventual kernels stabilize, the induced maps between
/// the quotients are injective; if they are also surjective on the tail, the
/// quotients are all isomorphic and exhaust the colimit.
fn stable_direct_value(realized: &RealizedTower, t: usize) -> Option<FgAbGroup> {
    let k_max = monitored_limit(t);
    let mut kernel_gens: Vec<IntMatrix> = Vec::new();
    let mut quotients: Vec<FgAbGroup> = Vec::new();
    for k in 0..=k_max {
        let gens_k = realized.levels[k].num_generators();
        let rels = realized.levels[k].relation_matrix();
        let kernel_of = |composite: &IntMatrix, j: usize| -> IntMatrix {
            let target_rels = realized.levels[j].relation_matrix();
            let lift = smith_normal_form(&composite.hstack(&target_rels)).kernel_basis();
            lift.submatrix_rows(0..gens_k)
        };
        let mut composite = realized.bonds[k].clone();
        let mut prev_kernel: Option<IntMatrix> = None;
        let mut last_kernel = kernel_of(&composite, k + 1);
        for j in k + 2..=t - 1 {
            composite = realized.bonds[j - 1].mul(&composite);
            prev_kernel = Some(last_kernel);
            last_kernel = kernel_of(&composite, j);
        }
        let prev = prev_kernel?;
        if !spans_equal_mod(&rels, &prev, &last_kernel) {
            return None;
        }
        quotients.push(group_from_relations(&last_kernel.hstack(&rels)));
        kernel_gens.push(last_kernel);
    }
    // Tail quotients must agree and the bonds must carry each onto the next.
    let start = k_max.saturating_sub(2);
    if quotients[start..].windows(2).any(|w| w[0] != w[1]) {
        return None;
    }
    for k in start..k_max {
        let gens_next = realized.levels[k + 1].num_generators();
        let rels_next = realized.levels[k + 1].relation_matrix();
        let absorbed = kernel_gens[k + 1].hstack(&rels_next);
        let image_and_kernel = realized.bonds[k].hstack(&absorbed);
        if !spans_equal(&image_and_kernel, &Matrix::identity(gens_next)) {
            return None;
        }
    }
    quotients.pop()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn cyc(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n).unwrap()
    }

    fn ps(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    fn mult(direction: Direction, base: TowerBase, primes: &str) -> Tower {
        Tower::multiplication(direction, base, ps(primes), 0).unwrap()
    }

    #[test]
    fn symbolic_colimits() {
        let t = mult(Direction::Direct, TowerBase::Integers, "2");
        assert_eq!(
            t.colimit().unwrap().value,
            SymbolicGroup::LocalizedIntegers(ps("2"))
        );
        let t = mult(Direction::Direct, TowerBase::Rationals, "2,3");
        assert_eq!(t.colimit().unwrap().value, SymbolicGroup::Rationals);
        let t = mult(Direction::Direct, TowerBase::Cyclic(12), "2");
        assert_eq!(t.colimit().unwrap().value, SymbolicGroup::cyclic(3));
        let t = mult(Direction::Direct, TowerBase::Cyclic(12), "2,3");
        assert_eq!(t.colimit().unwrap().value, SymbolicGroup::Trivial);
        let t = mult(Direction::Direct, TowerBase::Cyclic(12), "all-except:2");
        assert_eq!(t.colimit().unwrap().value, SymbolicGroup::cyclic(4));
        let t = mult(Direction::Direct, TowerBase::Cyclic(7), "2");
        assert_eq!(t.colimit().unwrap().value, SymbolicGroup::cyclic(7));
    }

    #[test]
    fn symbolic_limits() {
        let t = mult(Direction::Inverse, TowerBase::Integers, "2,3");
        assert_eq!(t.limit().unwrap().value, SymbolicGroup::Trivial);
        let t = mult(Direction::Inverse, TowerBase::Rationals, "5");
        assert_eq!(t.limit().unwrap().value, SymbolicGroup::Rationals);
        let t = mult(Direction::Inverse, TowerBase::Cyclic(12), "2");
        assert_eq!(t.limit().unwrap().value, SymbolicGroup::cyclic(3));
        let t = mult(Direction::Inverse, TowerBase::Cyclic(30), "all");
        assert_eq!(t.limit().unwrap().value, SymbolicGroup::Trivial);
    }

    #[test]
    fn mittag_leffler_statuses() {
        assert_eq!(
            mult(Direction::Inverse, TowerBase::Cyclic(9), "3")
                .mittag_leffler()
                .unwrap()
                .status,
            MittagLeffler::Holds
        );
        assert_eq!(
            mult(Direction::Inverse, TowerBase::Rationals, "3")
                .mittag_leffler()
                .unwrap()
                .status,
            MittagLeffler::Holds
        );
        assert_eq!(
            mult(Direction::Inverse, TowerBase::Integers, "3")
                .mittag_leffler()
                .unwrap()
                .status,
            MittagLeffler::Fails
        );
    }

    #[test]
    fn derived_limits() {
        let t = mult(Direction::Inverse, TowerBase::Cyclic(8), "2");
        assert_eq!(t.derived_limit().unwrap().value, SymbolicGroup::Trivial);
        let t = mult(Direction::Inverse, TowerBase::Rationals, "2");
        assert_eq!(t.derived_limit().unwrap().value, SymbolicGroup::Trivial);
        let t = mult(Direction::Inverse, TowerBase::Integers, "2");
        assert_eq!(
            t.derived_limit().unwrap().value,
            SymbolicGroup::NonTrivialUnknown(NonTrivialReason::MittagLefflerFailsFgTower)
        );
    }

    #[test]
    fn direction_checks() {
        let t = mult(Direction::Direct, TowerBase::Integers, "2");
        assert!(matches!(
            t.limit(),
            Err(Error::DirectionMismatch { op: "limit", .. })
        ));
        let t = mult(Direction::Inverse, TowerBase::Integers, "2");
        assert!(matches!(
            t.colimit(),
            Err(Error::DirectionMismatch { op: "colimit", .. })
        ));
    }

    #[test]
    fn constant_towers() {
        let v = SymbolicGroup::sum(vec![SymbolicGroup::free(1), SymbolicGroup::cyclic(2)]);
        let t = Tower::constant(Direction::Inverse, v.clone());
        assert_eq!(t.limit().unwrap().value, v);
        assert_eq!(t.derived_limit().unwrap().value, SymbolicGroup::Trivial);
        let t = Tower::constant(Direction::Direct, SymbolicGroup::Rationals);
        assert_eq!(t.colimit().unwrap().value, SymbolicGroup::Rationals);
    }

    #[test]
    fn realize_shapes() {
        let t = mult(Direction::Inverse, TowerBase::Cyclic(5), "5");
        let r = t.realize(4).unwrap();
        assert_eq!(r.levels.len(), 4);
        assert_eq!(r.bonds.len(), 3);
        assert_eq!(r.bonds[0][(0, 0)], BigInt::from(5));
        assert!(mult(Direction::Inverse, TowerBase::Rationals, "5")
            .realize(4)
            .is_err());
        let offset = Tower::multiplication(Direction::Direct, TowerBase::Integers, ps("all"), 2)
            .unwrap();
        // With offset 2 the first bond is the third partial product 2*3*5.
        assert_eq!(offset.realize(2).unwrap().bonds[0][(0, 0)], BigInt::from(30));
    }

    #[test]
    fn oracle_constant_window() {
        let t = Tower::constant(Direction::Inverse, SymbolicGroup::cyclic(5));
        let o = t.truncation_oracle(8).unwrap();
        assert!(o.stabilized);
        assert_eq!(o.value, cyc(5));
        assert_eq!(o.defect, FgAbGroup::trivial());
    }

    #[test]
    fn oracle_nilpotent_window() {
        let t = mult(Direction::Inverse, TowerBase::Cyclic(5), "5");
        let o = t.truncation_oracle(8).unwrap();
        assert!(o.stabilized);
        assert_eq!(o.value, FgAbGroup::trivial());
        assert_eq!(o.defect, FgAbGroup::trivial());
    }

    #[test]
    fn oracle_unstable_window_reports_artifacts() {
        let t = mult(Direction::Inverse, TowerBase::Integers, "2");
        let o = t.truncation_oracle(8).unwrap();
        assert!(!o.stabilized);
        assert_eq!(o.value, FgAbGroup::trivial());
        assert_eq!(o.defect, cyc(128));
    }

    #[test]
    fn oracle_direct_windows() {
        let t = mult(Direction::Direct, TowerBase::Cyclic(10), "2");
        let o = t.truncation_oracle(10).unwrap();
        assert!(o.stabilized);
        assert_eq!(o.value, cyc(5));

        let t = mult(Direction::Direct, TowerBase::Integers, "2");
        let o = t.truncation_oracle(8).unwrap();
        assert!(!o.stabilized);
        assert_eq!(o.value, FgAbGroup::trivial());
        assert_eq!(o.defect, cyc(128));
    }

    #[test]
    fn oracle_matches_symbolic_on_cyclic_bases() {
        for (m, primes) in [(12u64, "2"), (12, "2,3"), (9, "3"), (7, "2"), (24, "all")] {
            let inv = mult(Direction::Inverse, TowerBase::Cyclic(m), primes);
            let sym = inv.limit().unwrap().value;
            let o = inv.truncation_oracle(16).unwrap();
            assert!(o.stabilized, "m={m} primes={primes}");
            assert_eq!(SymbolicGroup::fg(o.value), sym, "m={m} primes={primes}");

            let dir = mult(Direction::Direct, TowerBase::Cyclic(m), primes);
            let sym = dir.colimit().unwrap().value;
            let o = dir.truncation_oracle(16).unwrap();
            assert!(o.stabilized, "m={m} primes={primes}");
            assert_eq!(SymbolicGroup::fg(o.value), sym, "m={m} primes={primes}");
        }
    }

    #[test]
    fn explicit_tower_validation() {
        let levels = vec![cyc(4), cyc(4)];
        assert!(Tower::explicit(Direction::Inverse, levels.clone(), vec![]).is_err());
        let bad_bond = Matrix::from_rows(vec![vec![BigInt::from(1), BigInt::from(1)]]);
        assert!(Tower::explicit(Direction::Inverse, levels.clone(), vec![bad_bond]).is_err());
        let ok_bond = Matrix::from_rows(vec![vec![BigInt::from(2)]]);
        assert!(Tower::explicit(Direction::Inverse, levels, vec![ok_bond]).is_ok());
    }

    #[test]
    fn explicit_window_limits() {
        // Constant Z/6 with identity bonds, long enough to stabilize.
        let levels = vec![cyc(6); 10];
        let bonds = vec![Matrix::identity(1); 9];
        let t = Tower::explicit(Direction::Inverse, levels, bonds).unwrap();
        assert_eq!(t.limit().unwrap().value, SymbolicGroup::cyclic(6));
        assert_eq!(t.derived_limit().unwrap().value, SymbolicGroup::Trivial);

        // Too short a window: no claim.
        let t = Tower::explicit(
            Direction::Inverse,
            vec![cyc(6); 3],
            vec![Matrix::identity(1); 2],
        )
        .unwrap();
        assert_eq!(t.limit().unwrap().value, SymbolicGroup::Unknown);
    }

    #[test]
    fn oracle_depth_validation() {
        let t = mult(Direction::Inverse, TowerBase::Cyclic(5), "5");
        assert!(matches!(
            t.truncation_oracle(4),
            Err(Error::DepthTooSmall(4))
        ));
    }
}
