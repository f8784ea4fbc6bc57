//! The geometric model: a wild one-dimensional set inside a three-sphere,
//! collapsed to a point.
//!
//! The wild set is the intersection of nested solid tori, each winding some
//! product of primes from a chosen set number of times around the inside of
//! the previous one. Collapsing it to a single point gives a compact space
//! that is a manifold away from the pinch point and is inspected here at the
//! pinch point, one coefficient ring at a time.
//!
//! Everything reported from this module is assembled from three inputs:
//!
//! * a short list of standing assumptions about the ambient geometry
//!   ([`ASSUMPTIONS`]), referenced by id from every value that leans on one,
//! * tower analyses from [`crate::tower`] for the neighborhood systems, and
//! * exact-sequence bookkeeping from [`crate::exactseq`] for the long exact
//!   sequences of pairs and the limit sequences of increasing unions.
//!
//! No value is written down by hand unless its row says so: a row tagged
//! `Computed` was derived by the engines and carries its derivation as a
//! trace, a row tagged `ModelAssumption` restates one of the standing
//! assumptions, and a row tagged `Cited` is adopted from the literature on
//! this construction without an independent derivation here.

use crate::abelian::{
    map_kernel_cokernel, CoefficientRing, FgAbGroup, NonTrivialReason, SymbolicGroup,
};
use crate::error::{Error, Result};
use crate::exactseq::{ArrowFact, ExactSequence, TermValue};
use crate::matrix::Matrix;
use crate::primes::{coprime_part, MultiplierSequence, PrimeSet};
use crate::tower::{Direction, Tower, TowerBase};
use crate::trace::TraceStep;
use crate::Int;

/// How a reported value is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Derived by the engines in this crate; the row carries a trace.
    Computed,
    /// A standing assumption about the geometry of the model.
    ModelAssumption,
    /// Adopted from the literature on this construction rather than
    /// rederived here.
    Cited,
}

impl Provenance {
    pub fn code(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::ModelAssumption => "model-assumption",
            Provenance::Cited => "cited",
        }
    }
}

/// A standing geometric assumption, stated once and referenced by id.
#[derive(Clone, Copy, Debug)]
pub struct ModelAssumption {
    pub id: &'static str,
    pub statement: &'static str,
    /// True when the assumption is adopted from the literature instead of
    /// being a routine property of the model.
    pub cited: bool,
}

pub const ASSUMPTIONS: &[ModelAssumption] = &[
    ModelAssumption {
        id: "sphere-cohomology",
        statement: "the ambient space is a three-sphere, with cohomology R, 0, 0, R \
                    in degrees zero through three",
        cited: false,
    },
    ModelAssumption {
        id: "tube-neighborhoods",
        statement: "the wild set has a neighborhood basis of nested closed solid tori; \
                    each tube and each closed tube complement is homotopy equivalent \
                    to a circle",
        cited: false,
    },
    ModelAssumption {
        id: "winding-bonds",
        statement: "each tube winds around the inside of the previous one, and the \
                    winding numbers are the products drawn from the chosen prime set; \
                    restriction on degree-one cohomology multiplies by the winding number",
        cited: false,
    },
    ModelAssumption {
        id: "connectedness",
        statement: "every space in sight (sphere, tubes, complements, quotient) is \
                    connected, so degree-zero restriction towers are constant with \
                    identity bonds",
        cited: false,
    },
    ModelAssumption {
        id: "dimension",
        statement: "the wild set is one-dimensional and the quotient is \
                    three-dimensional",
        cited: false,
    },
    ModelAssumption {
        id: "degree-zero-local-connectedness",
        statement: "the quotient is locally connected in degree zero at every point, \
                    the pinch point included",
        cited: false,
    },
    ModelAssumption {
        id: "manifold-away-from-pinch",
        statement: "away from the pinch point the quotient is a genuine three-manifold, \
                    so only the pinch point needs inspection",
        cited: false,
    },
    ModelAssumption {
        id: "pinch-excision",
        statement: "collapsing the wild set identifies the relative cohomology of the \
                    (sphere, tube) system with that of the quotient relative to shrinking \
                    neighborhoods of the pinch point",
        cited: false,
    },
    ModelAssumption {
        id: "integer-ladder",
        statement: "with integer coefficients the neighborhood ladder at the pinch \
                    point fails to be cohomologically locally connected in degree one",
        cited: true,
    },
];

pub fn assumption(id: &str) -> Option<&'static ModelAssumption> {
    ASSUMPTIONS.iter().find(|a| a.id == id)
}

/// One degree of a cohomology table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub degree: usize,
    pub value: SymbolicGroup,
    pub provenance: Provenance,
    /// Ids of the standing assumptions this row leans on.
    pub leans_on: Vec<&'static str>,
    pub notes: Vec<String>,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug)]
pub struct DegreeTable {
    pub family: &'static str,
    pub ring: CoefficientRing,
    pub rows: Vec<TableRow>,
}

impl DegreeTable {
    pub fn row(&self, degree: usize) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.degree == degree)
    }

    pub fn value_at(&self, degree: usize) -> Option<&SymbolicGroup> {
        self.row(degree).map(|r| &r.value)
    }
}

/// The direct system of relative cohomologies of (sphere, tube) pairs in one
/// degree, with bonds induced by shrinking the tube.
#[derive(Clone, Debug)]
pub struct PairTower {
    pub degree: usize,
    pub tower: Tower,
    pub leans_on: Vec<&'static str>,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClcStatus {
    Holds,
    Fails,
}

impl ClcStatus {
    pub fn word(self) -> &'static str {
        match self {
            ClcStatus::Holds => "holds",
            ClcStatus::Fails => "fails",
        }
    }
}

/// Local connectedness of the neighborhood ladder at the pinch point in one
/// degree.
#[derive(Clone, Debug)]
pub struct ClcRow {
    pub degree: usize,
    pub status: ClcStatus,
    pub provenance: Provenance,
    /// A nonzero obstruction witnessing failure, when one was computed.
    pub witness: Option<SymbolicGroup>,
    pub leans_on: Vec<&'static str>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ClcReport {
    pub ring: CoefficientRing,
    pub rows: Vec<ClcRow>,
}

impl ClcReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.status == ClcStatus::Holds)
    }

    pub fn failing_degrees(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.status == ClcStatus::Fails)
            .map(|r| r.degree)
            .collect()
    }

    pub fn row(&self, degree: usize) -> Option<&ClcRow> {
        self.rows.iter().find(|r| r.degree == degree)
    }
}

/// The nested-tube model, parametrized by the prime set that drives the
/// winding numbers.
#[derive(Clone, Debug)]
pub struct SolenoidModel {
    primes: PrimeSet,
    offset: usize,
}

fn known(g: SymbolicGroup) -> TermValue {
    TermValue::Known(g)
}

impl SolenoidModel {
    pub fn new(primes: PrimeSet) -> SolenoidModel {
        SolenoidModel::with_offset(primes, 0)
    }

    /// Start the winding sequence `offset` steps in. Cofinal subsystems have
    /// the same limits, so no verdict depends on the offset; the knob exists
    /// so tests can check exactly that.
    pub fn with_offset(primes: PrimeSet, offset: usize) -> SolenoidModel {
        SolenoidModel { primes, offset }
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn multipliers(&self) -> MultiplierSequence {
        MultiplierSequence::new(self.primes.clone())
    }

    fn tower_base(ring: &CoefficientRing) -> TowerBase {
        match ring {
            CoefficientRing::Integers => TowerBase::Integers,
            CoefficientRing::Rationals => TowerBase::Rationals,
            CoefficientRing::Mod(m) => TowerBase::Cyclic(m.value()),
        }
    }

    /// The tower of relative groups of the (sphere, tube) pair in one degree.
    ///
    /// Each level is pinned by the long exact sequence of the pair; the bond
    /// structure between levels comes from the winding model.
    pub fn pair_tower(&self, ring: &CoefficientRing, degree: usize) -> Result<PairTower> {
        let r = ring.as_group();
        match degree {
            0 => {
                // 0 -> relative -> H^0(sphere) -> H^0(tube), restriction an
                // isomorphism because both spaces are connected.
                let seq = ExactSequence::new(vec![
                    ("zero", known(SymbolicGroup::Trivial)),
                    ("relative", TermValue::Unknown),
                    ("sphere^0", known(r.clone())),
                    ("tube^0", known(r)),
                ])?
                .with_fact(2, ArrowFact::IsIso)?;
                self.constant_pair(degree, seq, vec!["sphere-cohomology", "connectedness"])
            }
            1 => {
                let seq = ExactSequence::new(vec![
                    ("sphere^0", known(r.clone())),
                    ("tube^0", known(r)),
                    ("relative", TermValue::Unknown),
                    ("sphere^1", known(SymbolicGroup::Trivial)),
                ])?
                .with_fact(0, ArrowFact::IsIso)?;
                self.constant_pair(degree, seq, vec!["sphere-cohomology", "connectedness"])
            }
            2 => {
                // The sphere vanishes on both sides, so the relative group is
                // squeezed onto the tube's degree-one cohomology.
                let seq = ExactSequence::new(vec![
                    ("sphere^1", known(SymbolicGroup::Trivial)),
                    ("tube^1", known(r)),
                    ("relative", TermValue::Unknown),
                    ("sphere^2", known(SymbolicGroup::Trivial)),
                ])?;
                let deduction = seq.solve()?;
                let value = deduction.value_of("relative");
                let mut trace = self.window_trace(degree, deduction.trace);
                trace.push(TraceStep::new(
                    "winding-bonds",
                    format!("pair degree {degree}"),
                    format!(
                        "levels are {value}; shrinking the tube restricts degree-one \
                         cohomology by the winding number, so the system is \
                         multiplication by the winding sequence"
                    ),
                ));
                let tower = Tower::multiplication(
                    Direction::Direct,
                    Self::tower_base(ring),
                    self.primes.clone(),
                    self.offset,
                )?;
                Ok(PairTower {
                    degree,
                    tower,
                    leans_on: vec![
                        "sphere-cohomology",
                        "tube-neighborhoods",
                        "winding-bonds",
                    ],
                    trace,
                })
            }
            3 => {
                // The tube vanishes on both sides, so the relative group is
                // the sphere's top cohomology, and the bonds commute with
                // that identification.
                let seq = ExactSequence::new(vec![
                    ("tube^2", known(SymbolicGroup::Trivial)),
                    ("relative", TermValue::Unknown),
                    ("sphere^3", known(r)),
                    ("tube^3", known(SymbolicGroup::Trivial)),
                ])?;
                self.constant_pair(degree, seq, vec!["sphere-cohomology", "tube-neighborhoods"])
            }
            4 => {
                let seq = ExactSequence::new(vec![
                    ("tube^3", known(SymbolicGroup::Trivial)),
                    ("relative", TermValue::Unknown),
                    ("sphere^4", known(SymbolicGroup::Trivial)),
                ])?;
                self.constant_pair(degree, seq, vec!["sphere-cohomology", "tube-neighborhoods"])
            }
            _ => Err(Error::DegreeOutOfRange { degree, max: 4 }),
        }
    }

    /// Solve a pair window whose bonds are forced to be constant, either
    /// because the level is trivial or because it is identified with a group
    /// of the ambient sphere untouched by shrinking.
    fn constant_pair(
        &self,
        degree: usize,
        seq: ExactSequence,
        leans_on: Vec<&'static str>,
    ) -> Result<PairTower> {
        let deduction = seq.solve()?;
        let value = deduction.value_of("relative");
        let trace = self.window_trace(degree, deduction.trace);
        Ok(PairTower {
            degree,
            tower: Tower::constant(Direction::Direct, value),
            leans_on,
            trace,
        })
    }

    fn window_trace(&self, degree: usize, steps: Vec<TraceStep>) -> Vec<TraceStep> {
        let mut trace = vec![TraceStep::new(
            "pair-window",
            format!("pair degree {degree}"),
            "long exact sequence of the (sphere, tube) pair",
        )];
        trace.extend(steps);
        trace
    }

    /// Cohomology of the quotient relative to a deleted pinch point,
    /// computed as the colimit of the (sphere, tube) relative system over
    /// shrinking tubes.
    pub fn local_cohomology_at_wild_point(&self, ring: &CoefficientRing) -> Result<DegreeTable> {
        let mut rows = vec![TableRow {
            degree: 0,
            value: SymbolicGroup::Trivial,
            provenance: Provenance::ModelAssumption,
            leans_on: vec!["degree-zero-local-connectedness", "connectedness"],
            notes: vec![
                "degree zero sees only the difference between a space and its punctured \
                 self, and both sides are connected"
                    .to_string(),
            ],
            trace: Vec::new(),
        }];
        for degree in 1..=3 {
            let pair = self.pair_tower(ring, degree)?;
            let colimit = pair.tower.colimit()?;
            let mut leans_on = pair.leans_on.clone();
            leans_on.push("pinch-excision");
            let mut trace = pair.trace;
            trace.extend(colimit.trace);
            rows.push(TableRow {
                degree,
                value: colimit.value,
                provenance: Provenance::Computed,
                leans_on,
                notes: vec![
                    "colimit of the relative system over shrinking tubes".to_string(),
                ],
                trace,
            });
        }
        Ok(DegreeTable {
            family: "local-at-pinch",
            ring: ring.clone(),
            rows,
        })
    }

    /// The inverse tower of tube-complement cohomologies in one degree.
    fn complement_tower(
        &self,
        ring: &CoefficientRing,
        degree: usize,
    ) -> Result<(Tower, Vec<&'static str>)> {
        match degree {
            0 => Ok((
                Tower::constant(Direction::Inverse, ring.as_group()),
                vec!["tube-neighborhoods", "connectedness"],
            )),
            1 => {
                // A complement deformation retracts to the core circle of the
                // complementary tube; as the inner tube shrinks, its winding
                // multiplies the dual degree-one class.
                let tower = Tower::multiplication(
                    Direction::Inverse,
                    Self::tower_base(ring),
                    self.primes.clone(),
                    self.offset,
                )?;
                Ok((tower, vec!["tube-neighborhoods", "winding-bonds"]))
            }
            _ => Ok((
                Tower::constant(Direction::Inverse, SymbolicGroup::Trivial),
                vec!["tube-neighborhoods"],
            )),
        }
    }

    /// Cohomology of the complement of the wild set, an increasing union of
    /// tube complements, assembled degree by degree from the limit sequence
    /// of the union.
    pub fn complement_cohomology(&self, ring: &CoefficientRing) -> Result<DegreeTable> {
        let mut rows = vec![TableRow {
            degree: 0,
            value: ring.as_group(),
            provenance: Provenance::ModelAssumption,
            leans_on: vec!["connectedness"],
            notes: vec!["an increasing union of connected open sets is connected".to_string()],
            trace: Vec::new(),
        }];
        for degree in 1..=3 {
            let (below, below_leans) = self.complement_tower(ring, degree - 1)?;
            let (at, at_leans) = self.complement_tower(ring, degree)?;
            let stray = below.derived_limit()?;
            let inner = at.limit()?;
            let seq = ExactSequence::new(vec![
                ("zero-left", known(SymbolicGroup::Trivial)),
                ("stray", known(stray.value.clone())),
                ("union", TermValue::Unknown),
                ("inner-limit", known(inner.value.clone())),
                ("zero-right", known(SymbolicGroup::Trivial)),
            ])?;
            let deduction = seq.solve()?;
            let value = deduction.value_of("union");
            let mut trace = vec![TraceStep::new(
                "union-window",
                format!("complement degree {degree}"),
                "limit sequence of the increasing union: the union group is an \
                 extension of the inverse limit by the derived limit one degree down",
            )];
            trace.extend(stray.trace);
            trace.extend(inner.trace);
            trace.extend(deduction.trace);
            let mut leans_on = below_leans;
            for id in at_leans {
                if !leans_on.contains(&id) {
                    leans_on.push(id);
                }
            }
            rows.push(TableRow {
                degree,
                value,
                provenance: Provenance::Computed,
                leans_on,
                notes: Vec::new(),
                trace,
            });
        }
        Ok(DegreeTable {
            family: "complement",
            ring: ring.clone(),
            rows,
        })
    }

    /// Cohomology of the quotient itself, read off from the pair with a
    /// point through the long exact sequence.
    pub fn quotient_cohomology(&self, ring: &CoefficientRing) -> Result<DegreeTable> {
        let r = ring.as_group();
        let local = self.local_cohomology_at_wild_point(ring)?;
        let mut rows = vec![TableRow {
            degree: 0,
            value: r.clone(),
            provenance: Provenance::ModelAssumption,
            leans_on: vec!["connectedness"],
            notes: vec!["the quotient of a connected space is connected".to_string()],
            trace: Vec::new(),
        }];
        for degree in 1..=3 {
            let relative = local
                .value_at(degree)
                .cloned()
                .unwrap_or(SymbolicGroup::Unknown);
            let seq = if degree == 1 {
                // The point still carries degree-zero cohomology, so the
                // window starts one step earlier and needs the restriction
                // isomorphism onto it.
                ExactSequence::new(vec![
                    ("quotient^0", known(r.clone())),
                    ("point^0", known(r.clone())),
                    ("relative", known(relative)),
                    ("quotient", TermValue::Unknown),
                    ("point^1", known(SymbolicGroup::Trivial)),
                ])?
                .with_fact(0, ArrowFact::IsIso)?
            } else {
                ExactSequence::new(vec![
                    ("point-below", known(SymbolicGroup::Trivial)),
                    ("relative", known(relative)),
                    ("quotient", TermValue::Unknown),
                    ("point", known(SymbolicGroup::Trivial)),
                ])?
            };
            let deduction = seq.solve()?;
            let value = deduction.value_of("quotient");
            let mut trace = vec![TraceStep::new(
                "point-pair-window",
                format!("quotient degree {degree}"),
                "long exact sequence of the quotient relative to the pinch point",
            )];
            trace.extend(deduction.trace);
            let mut leans_on = local
                .row(degree)
                .map(|row| row.leans_on.clone())
                .unwrap_or_default();
            if !leans_on.contains(&"connectedness") {
                leans_on.push("connectedness");
            }
            rows.push(TableRow {
                degree,
                value,
                provenance: Provenance::Computed,
                leans_on,
                notes: Vec::new(),
                trace,
            });
        }
        Ok(DegreeTable {
            family: "quotient",
            ring: ring.clone(),
            rows,
        })
    }

    /// Relative cohomology of the quotient modulo the complement of the
    /// pinch point, assembled from the long exact sequence that ties the
    /// quotient and complement tables together.
    pub fn quotient_pair_cohomology(&self, ring: &CoefficientRing) -> Result<DegreeTable> {
        let r = ring.as_group();
        let quotient = self.quotient_cohomology(ring)?;
        let complement = self.complement_cohomology(ring)?;
        let q = |n: usize| {
            quotient
                .value_at(n)
                .cloned()
                .unwrap_or(SymbolicGroup::Unknown)
        };
        let c = |n: usize| {
            complement
                .value_at(n)
                .cloned()
                .unwrap_or(SymbolicGroup::Unknown)
        };
        let mut rows = Vec::new();
        for degree in 1..=3 {
            let seq = if degree == 1 {
                ExactSequence::new(vec![
                    ("quotient^0", known(r.clone())),
                    ("complement^0", known(c(0))),
                    ("pair", TermValue::Unknown),
                    ("quotient^1", known(q(1))),
                ])?
                .with_fact(0, ArrowFact::IsIso)?
            } else {
                ExactSequence::new(vec![
                    ("quotient-below", known(q(degree - 1))),
                    ("complement-below", known(c(degree - 1))),
                    ("pair", TermValue::Unknown),
                    ("quotient-at", known(q(degree))),
                    ("complement-at", known(c(degree))),
                ])?
            };
            let deduction = seq.solve()?;
            let outcome = deduction.value_of("pair");
            let mut notes = Vec::new();
            if outcome == SymbolicGroup::Unknown {
                notes.push(
                    "the window does not pin this group down; no claim is made".to_string(),
                );
            }
            let mut trace = vec![TraceStep::new(
                "complement-pair-window",
                format!("pair degree {degree}"),
                "long exact sequence of the quotient relative to the complement \
                 of the pinch point",
            )];
            trace.extend(deduction.trace);
            rows.push(TableRow {
                degree,
                value: outcome,
                provenance: Provenance::Computed,
                leans_on: vec!["tube-neighborhoods", "connectedness"],
                notes,
                trace,
            });
        }
        Ok(DegreeTable {
            family: "quotient-pair",
            ring: ring.clone(),
            rows,
        })
    }

    /// Local connectedness of the neighborhood ladder at the pinch point,
    /// degree by degree.
    pub fn clc_report(&self, ring: &CoefficientRing) -> Result<ClcReport> {
        let mut rows = vec![ClcRow {
            degree: 0,
            status: ClcStatus::Holds,
            provenance: Provenance::ModelAssumption,
            witness: None,
            leans_on: vec!["degree-zero-local-connectedness"],
            notes: Vec::new(),
        }];
        rows.push(self.clc_degree_one(ring)?);
        rows.push(self.clc_degree_two(ring)?);
        rows.push(self.clc_degree_three()?);
        Ok(ClcReport {
            ring: ring.clone(),
            rows,
        })
    }

    /// The degree-one ladder level at stage `i` is the kernel of the stage
    /// map into the colimit; the ladder is locally connected exactly when
    /// later winding annihilates each such kernel.
    fn clc_degree_one(&self, ring: &CoefficientRing) -> Result<ClcRow> {
        match ring {
            CoefficientRing::Mod(modulus) => {
                let m = modulus.value();
                let (kernel, _) = self.stage_kernel_cokernel(m)?;
                if kernel.is_trivial() {
                    return Ok(ClcRow {
                        degree: 1,
                        status: ClcStatus::Holds,
                        provenance: Provenance::Computed,
                        witness: None,
                        leans_on: vec!["winding-bonds"],
                        notes: vec![format!(
                            "the stage maps into the colimit are injective: {m} is \
                             coprime to every winding prime, so nothing dies"
                        )],
                    });
                }
                let death = kernel
                    .order()
                    .expect("stage kernel of a finite cyclic group is finite");
                let multipliers = self.multipliers();
                let mut notes = vec![format!(
                    "each ladder level is the stage kernel {kernel}, concentrated at \
                     the winding primes"
                )];
                // Soundness of `Holds`: every prime factor of the kernel
                // order recurs in the winding sequence with unbounded
                // multiplicity, so some composite bond kills the kernel.
                for (p, _) in crate::primes::factorize(m / coprime_part(m, &self.primes)) {
                    if !multipliers.divides_eventually(p) {
                        return Ok(ClcRow {
                            degree: 1,
                            status: ClcStatus::Fails,
                            provenance: Provenance::Computed,
                            witness: Some(SymbolicGroup::fg(kernel)),
                            leans_on: vec!["winding-bonds"],
                            notes: vec![format!(
                                "the kernel has order divisible by {p}, which the \
                                 winding numbers never accumulate"
                            )],
                        });
                    }
                }
                if let Some(stage) = self.annihilation_stage(&death) {
                    let unit = if stage == 1 { "stage" } else { "stages" };
                    notes.push(format!(
                        "the composite winding bond annihilates the kernel after \
                         {stage} {unit}"
                    ));
                } else {
                    notes.push(
                        "every prime factor of the kernel order recurs in the winding \
                         numbers with unbounded multiplicity, so the kernel is \
                         annihilated further down the tube"
                            .to_string(),
                    );
                }
                Ok(ClcRow {
                    degree: 1,
                    status: ClcStatus::Holds,
                    provenance: Provenance::Computed,
                    witness: None,
                    leans_on: vec!["winding-bonds"],
                    notes,
                })
            }
            CoefficientRing::Rationals => Ok(ClcRow {
                degree: 1,
                status: ClcStatus::Holds,
                provenance: Provenance::Computed,
                witness: None,
                leans_on: vec!["winding-bonds"],
                notes: vec![
                    "winding numbers are invertible on rational cohomology, so the \
                     ladder bonds are isomorphisms and the stage kernels vanish"
                        .to_string(),
                ],
            }),
            CoefficientRing::Integers => Ok(ClcRow {
                degree: 1,
                status: ClcStatus::Fails,
                provenance: Provenance::Cited,
                witness: None,
                leans_on: vec!["integer-ladder"],
                notes: vec![
                    "adopted failure: the full neighborhood ladder is not locally \
                     connected in degree one over the integers"
                        .to_string(),
                    "for the record, the stage kernels computed here vanish (the bonds \
                     are injective over the integers); the adopted failure concerns \
                     the ladder itself, which tracks more than these kernels"
                        .to_string(),
                ],
            }),
        }
    }

    /// In degree two the ladder compares each stage with the colimit; the
    /// obstruction is the cokernel of the stage map.
    fn clc_degree_two(&self, ring: &CoefficientRing) -> Result<ClcRow> {
        match ring {
            CoefficientRing::Mod(modulus) => {
                let m = modulus.value();
                let (_, cokernel) = self.stage_kernel_cokernel(m)?;
                if cokernel.is_trivial() {
                    Ok(ClcRow {
                        degree: 2,
                        status: ClcStatus::Holds,
                        provenance: Provenance::Computed,
                        witness: None,
                        leans_on: vec!["winding-bonds"],
                        notes: vec![
                            "each stage maps onto the colimit, so nothing is left over"
                                .to_string(),
                        ],
                    })
                } else {
                    Ok(ClcRow {
                        degree: 2,
                        status: ClcStatus::Fails,
                        provenance: Provenance::Computed,
                        witness: Some(SymbolicGroup::fg(cokernel)),
                        leans_on: vec!["winding-bonds"],
                        notes: Vec::new(),
                    })
                }
            }
            CoefficientRing::Rationals => Ok(ClcRow {
                degree: 2,
                status: ClcStatus::Holds,
                provenance: Provenance::Computed,
                witness: None,
                leans_on: vec!["winding-bonds"],
                notes: vec![
                    "the stage maps into the colimit are isomorphisms on rational \
                     cohomology"
                        .to_string(),
                ],
            }),
            CoefficientRing::Integers => Ok(ClcRow {
                degree: 2,
                status: ClcStatus::Fails,
                provenance: Provenance::Computed,
                witness: Some(SymbolicGroup::NonTrivialUnknown(
                    NonTrivialReason::StageCokernelNonzero,
                )),
                leans_on: vec!["winding-bonds"],
                notes: vec![
                    "the stage map is the inclusion of the integers into the integers \
                     with the winding primes inverted; its cokernel contains the \
                     nonzero class of 1/p for any winding prime p"
                        .to_string(),
                    "later bonds act by units of the localization, so the class never \
                     dies"
                        .to_string(),
                ],
            }),
        }
    }

    /// Above the dimension of the wild set every ladder level is squeezed
    /// between vanishing groups, so stability is automatic.
    fn clc_degree_three(&self) -> Result<ClcRow> {
        let seq = ExactSequence::new(vec![
            ("wild-set^2", known(SymbolicGroup::Trivial)),
            ("ladder-level", TermValue::Unknown),
            ("tube^3", known(SymbolicGroup::Trivial)),
        ])?;
        let deduction = seq.solve()?;
        let level = deduction.value_of("ladder-level");
        Ok(ClcRow {
            degree: 3,
            status: if level.is_certified_trivial() {
                ClcStatus::Holds
            } else {
                ClcStatus::Fails
            },
            provenance: Provenance::Computed,
            witness: None,
            leans_on: vec!["dimension", "tube-neighborhoods"],
            notes: vec![format!(
                "every ladder level is {level}: squeezed between the vanishing \
                 degree-two cohomology of a one-dimensional set and the vanishing \
                 degree-three cohomology of a tube"
            )],
        })
    }

    /// Kernel and cokernel of the stage map from one ladder level into the
    /// colimit, for coefficients modulo `m`: reduction of `Z/m` onto `Z/m'`
    /// where `m'` is the part of `m` coprime to the winding primes.
    fn stage_kernel_cokernel(&self, m: u64) -> Result<(FgAbGroup, FgAbGroup)> {
        let m_prime = coprime_part(m, &self.primes);
        let source = FgAbGroup::cyclic(m)?;
        let target = FgAbGroup::cyclic(m_prime)?;
        let matrix = Matrix::from_fn(target.num_generators(), source.num_generators(), |_, _| {
            Int::from(1)
        });
        map_kernel_cokernel(&source, &target, &matrix)
    }

    /// The first count of winding steps whose composite annihilates `Z/death`,
    /// if it shows up within a short search window.
    fn annihilation_stage(&self, death: &num_bigint::BigUint) -> Option<usize> {
        use num_traits::Zero;
        let multipliers = self.multipliers();
        let mut acc = num_bigint::BigUint::from(1u32) % death;
        if acc.is_zero() {
            return Some(0);
        }
        for k in 0..256 {
            acc = (acc * multipliers.multiplier(self.offset + k)) % death;
            if acc.is_zero() {
                return Some(k + 1);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> CoefficientRing {
        s.parse().unwrap()
    }

    fn model(text: &str) -> SolenoidModel {
        SolenoidModel::new(text.parse().unwrap())
    }

    fn values(table: &DegreeTable) -> Vec<SymbolicGroup> {
        table.rows.iter().map(|r| r.value.clone()).collect()
    }

    #[test]
    fn assumption_ids_are_unique_and_one_is_cited() {
        let mut ids: Vec<_> = ASSUMPTIONS.iter().map(|a| a.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), ASSUMPTIONS.len());
        assert_eq!(ASSUMPTIONS.iter().filter(|a| a.cited).count(), 1);
        assert!(assumption("integer-ladder").unwrap().cited);
        assert!(assumption("no-such-id").is_none());
    }

    #[test]
    fn pair_towers_have_the_expected_shape() {
        let m = model("2,3");
        let z = ring("Z");
        for degree in [0usize, 1, 4] {
            let pair = m.pair_tower(&z, degree).unwrap();
            let value = pair.tower.colimit().unwrap().value;
            assert_eq!(value, SymbolicGroup::Trivial, "degree {degree}");
        }
        let top = m.pair_tower(&z, 3).unwrap();
        assert_eq!(top.tower.colimit().unwrap().value, SymbolicGroup::free(1));
        let middle = m.pair_tower(&z, 2).unwrap();
        assert_eq!(
            middle.tower.colimit().unwrap().value,
            SymbolicGroup::LocalizedIntegers("2,3".parse().unwrap())
        );
        assert!(m.pair_tower(&z, 5).is_err());
    }

    #[test]
    fn local_table_distinguishes_member_and_nonmember_primes() {
        let m = model("2,3");
        let at_member = m.local_cohomology_at_wild_point(&ring("mod:2")).unwrap();
        assert_eq!(
            values(&at_member),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
                SymbolicGroup::cyclic(2),
            ]
        );
        let at_outsider = m.local_cohomology_at_wild_point(&ring("mod:5")).unwrap();
        assert_eq!(
            values(&at_outsider),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
                SymbolicGroup::cyclic(5),
                SymbolicGroup::cyclic(5),
            ]
        );
    }

    #[test]
    fn local_table_over_integers_and_rationals() {
        let m = model("2,3");
        let over_z = m.local_cohomology_at_wild_point(&ring("Z")).unwrap();
        assert_eq!(
            values(&over_z),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
                SymbolicGroup::LocalizedIntegers("2,3".parse().unwrap()),
                SymbolicGroup::free(1),
            ]
        );
        let over_q = m.local_cohomology_at_wild_point(&ring("Q")).unwrap();
        assert_eq!(
            values(&over_q),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
                SymbolicGroup::Rationals,
                SymbolicGroup::Rationals,
            ]
        );
        assert_eq!(over_z.rows[0].provenance, Provenance::ModelAssumption);
        for row in &over_z.rows[1..] {
            assert_eq!(row.provenance, Provenance::Computed);
            assert!(!row.trace.is_empty());
        }
    }

    #[test]
    fn local_table_strips_only_winding_primes_from_composite_moduli() {
        let m = model("2");
        let table = m.local_cohomology_at_wild_point(&ring("mod:12")).unwrap();
        assert_eq!(table.value_at(2), Some(&SymbolicGroup::cyclic(3)));
        assert_eq!(table.value_at(3), Some(&SymbolicGroup::cyclic(12)));
    }

    #[test]
    fn complement_table_for_each_ring_class() {
        let m = model("2");
        let member = m.complement_cohomology(&ring("mod:2")).unwrap();
        assert_eq!(
            values(&member)[1..],
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
            ]
        );
        let outsider = m.complement_cohomology(&ring("mod:3")).unwrap();
        assert_eq!(
            values(&outsider)[1..],
            vec![
                SymbolicGroup::cyclic(3),
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
            ]
        );
        let over_z = m.complement_cohomology(&ring("Z")).unwrap();
        assert_eq!(
            values(&over_z)[1..],
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::NonTrivialUnknown(NonTrivialReason::MittagLefflerFailsFgTower),
                SymbolicGroup::Trivial,
            ]
        );
        let over_q = m.complement_cohomology(&ring("Q")).unwrap();
        assert_eq!(
            values(&over_q)[1..],
            vec![
                SymbolicGroup::Rationals,
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
            ]
        );
    }

    #[test]
    fn quotient_table_matches_local_table_above_degree_zero() {
        let m = model("2");
        for text in ["Z", "Q", "mod:2", "mod:5"] {
            let r = ring(text);
            let local = m.local_cohomology_at_wild_point(&r).unwrap();
            let quotient = m.quotient_cohomology(&r).unwrap();
            assert_eq!(quotient.value_at(0), Some(&r.as_group()), "{text}");
            for degree in 1..=3 {
                assert_eq!(
                    quotient.value_at(degree),
                    local.value_at(degree),
                    "{text} degree {degree}"
                );
            }
        }
    }

    #[test]
    fn quotient_pair_table_records_what_the_windows_give() {
        let m = model("2");
        let member = m.quotient_pair_cohomology(&ring("mod:2")).unwrap();
        assert_eq!(
            values(&member),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::Trivial,
                SymbolicGroup::cyclic(2),
            ]
        );
        let outsider = m.quotient_pair_cohomology(&ring("mod:5")).unwrap();
        assert_eq!(
            values(&outsider),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::NonTrivialUnknown(NonTrivialReason::ReceivesMonomorphism),
                SymbolicGroup::cyclic(5),
            ]
        );
        let over_q = m.quotient_pair_cohomology(&ring("Q")).unwrap();
        assert_eq!(
            values(&over_q),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::NonTrivialUnknown(NonTrivialReason::ReceivesMonomorphism),
                SymbolicGroup::Rationals,
            ]
        );
        let over_z = m.quotient_pair_cohomology(&ring("Z")).unwrap();
        assert_eq!(
            values(&over_z),
            vec![
                SymbolicGroup::Trivial,
                SymbolicGroup::Unknown,
                SymbolicGroup::NonTrivialUnknown(NonTrivialReason::SurjectsOntoNontrivial),
            ]
        );
        assert!(over_z.rows[1]
            .notes
            .iter()
            .any(|n| n.contains("no claim")));
    }

    #[test]
    fn clc_holds_everywhere_for_member_primes_and_rationals() {
        let m = model("2,3");
        for text in ["mod:2", "mod:3", "mod:6", "mod:5", "mod:12", "Q"] {
            let report = m.clc_report(&ring(text)).unwrap();
            assert!(report.all_hold(), "{text}");
            assert!(report.failing_degrees().is_empty());
        }
    }

    #[test]
    fn clc_degree_one_records_the_death_of_the_stage_kernel() {
        let m = model("2");
        let report = m.clc_report(&ring("mod:12")).unwrap();
        let row = report.row(1).unwrap();
        assert_eq!(row.status, ClcStatus::Holds);
        assert_eq!(row.provenance, Provenance::Computed);
        assert!(row.notes.iter().any(|n| n.contains("Z/4")));
        assert!(row.notes.iter().any(|n| n.contains("annihilates")));
    }

    #[test]
    fn clc_fails_over_the_integers_in_degrees_one_and_two() {
        let m = model("2");
        let report = m.clc_report(&ring("Z")).unwrap();
        assert!(!report.all_hold());
        assert_eq!(report.failing_degrees(), vec![1, 2]);
        let one = report.row(1).unwrap();
        assert_eq!(one.provenance, Provenance::Cited);
        assert!(one.witness.is_none());
        assert!(one.notes.iter().any(|n| n.contains("for the record")));
        let two = report.row(2).unwrap();
        assert_eq!(two.provenance, Provenance::Computed);
        assert_eq!(
            two.witness,
            Some(SymbolicGroup::NonTrivialUnknown(
                NonTrivialReason::StageCokernelNonzero
            ))
        );
    }

    #[test]
    fn tables_do_not_depend_on_the_winding_offset() {
        let primes: PrimeSet = "2,3".parse().unwrap();
        let a = SolenoidModel::new(primes.clone());
        let b = SolenoidModel::with_offset(primes, 3);
        for text in ["Z", "Q", "mod:2", "mod:15"] {
            let r = ring(text);
            assert_eq!(
                values(&a.local_cohomology_at_wild_point(&r).unwrap()),
                values(&b.local_cohomology_at_wild_point(&r).unwrap()),
                "{text}"
            );
            assert_eq!(
                values(&a.complement_cohomology(&r).unwrap()),
                values(&b.complement_cohomology(&r).unwrap()),
                "{text}"
            );
        }
    }

    #[test]
    fn infinite_prime_sets_behave_like_their_membership() {
        let m = model("all-except:5");
        let local = m.local_cohomology_at_wild_point(&ring("mod:5")).unwrap();
        assert_eq!(local.value_at(2), Some(&SymbolicGroup::cyclic(5)));
        let member = m.local_cohomology_at_wild_point(&ring("mod:7")).unwrap();
        assert_eq!(member.value_at(2), Some(&SymbolicGroup::Trivial));
        let report = m.clc_report(&ring("mod:7")).unwrap();
        assert!(report.all_hold());
    }
}
