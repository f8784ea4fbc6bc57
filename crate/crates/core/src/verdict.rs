//! The classification itself: is the pinched quotient a cohomology manifold,
//! and is it a homology manifold, over a given coefficient ring?
//!
//! Three conditions are checked. The quotient must have the right dimension,
//! its neighborhood ladder at the pinch point must be cohomologically locally
//! connected in every degree, and its local cohomology at the pinch point
//! must look like that of a manifold point: trivial below the top degree and
//! a copy of the coefficient group on top. The verdict bundles the evidence
//! for each condition so a report can show exactly which cell decided it.

use crate::abelian::CoefficientRing;
use crate::error::Result;
use crate::primes::PrimeSet;
use crate::solenoid::{ClcReport, ClcStatus, DegreeTable, Provenance, SolenoidModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl Status {
    pub fn word(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
        }
    }

    fn and(self, other: Status) -> Status {
        if self == Status::Holds && other == Status::Holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

/// What kind of evidence sank a failing verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureFlavor {
    /// A local cohomology group that should vanish is certified nonzero.
    CohomologicalObstruction,
    /// The failure rests on an adopted result, not on a computed witness.
    Cited,
}

impl FailureFlavor {
    pub fn code(self) -> &'static str {
        match self {
            FailureFlavor::CohomologicalObstruction => "cohomological-obstruction",
            FailureFlavor::Cited => "cited",
        }
    }
}

/// One of the three conditions feeding the verdict.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub id: &'static str,
    pub status: Status,
    pub provenance: Provenance,
    pub details: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ClassificationVerdict {
    pub primes: PrimeSet,
    pub ring: CoefficientRing,
    pub conditions: Vec<ConditionReport>,
    pub cohomology_manifold: Status,
    pub homology_manifold: Status,
    /// Set when the homology verdict is inherited rather than independent.
    pub homology_via: Option<&'static str>,
    pub failure_flavor: Option<FailureFlavor>,
    /// True when the coefficient modulus is composite: the verdict then goes
    /// beyond the prime cases the adopted results speak about, though every
    /// computed cell still stands on its own.
    pub extrapolated: bool,
    pub local_table: DegreeTable,
    pub pair_table: DegreeTable,
    pub clc: ClcReport,
}

impl ClassificationVerdict {
    pub fn condition(&self, id: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

/// Run the full classification of the model over one coefficient ring.
pub fn classify(model: &SolenoidModel, ring: &CoefficientRing) -> Result<ClassificationVerdict> {
    let local_table = model.local_cohomology_at_wild_point(ring)?;
    let pair_table = model.quotient_pair_cohomology(ring)?;
    let clc = model.clc_report(ring)?;

    let dimension = ConditionReport {
        id: "dimension",
        status: Status::Holds,
        provenance: Provenance::ModelAssumption,
        details: vec![
            "the quotient is three-dimensional and a manifold away from the pinch point"
                .to_string(),
        ],
    };

    let ladder = ladder_condition(&clc);
    let local = local_condition(ring, &local_table, &pair_table);

    let cohomology_manifold = dimension
        .status
        .and(ladder.status)
        .and(local.status);

    let (homology_manifold, homology_via, failure_flavor) = match cohomology_manifold {
        Status::Holds => (Status::Holds, Some("cohomology-implies-homology"), None),
        Status::Fails => {
            let obstruction = local_table
                .value_at(2)
                .map(|v| v.is_certified_nonzero())
                .unwrap_or(false);
            let flavor = if obstruction {
                FailureFlavor::CohomologicalObstruction
            } else {
                FailureFlavor::Cited
            };
            (Status::Fails, None, Some(flavor))
        }
    };

    let extrapolated = match ring {
        CoefficientRing::Mod(m) => !m.is_prime(),
        _ => false,
    };

    let verdict = ClassificationVerdict {
        primes: model.primes().clone(),
        ring: ring.clone(),
        conditions: vec![dimension, ladder, local],
        cohomology_manifold,
        homology_manifold,
        homology_via,
        failure_flavor,
        extrapolated,
        local_table,
        pair_table,
        clc,
    };
    debug_assert!(
        verdict.cohomology_manifold == Status::Fails
            || verdict.homology_manifold == Status::Holds
    );
    debug_assert!(
        verdict.cohomology_manifold == Status::Holds
            || verdict
                .conditions
                .iter()
                .any(|c| c.status == Status::Fails && !c.details.is_empty())
    );
    Ok(verdict)
}

fn ladder_condition(clc: &ClcReport) -> ConditionReport {
    let failing = clc.failing_degrees();
    let status = if failing.is_empty() {
        Status::Holds
    } else {
        Status::Fails
    };
    // A computed witness outranks an adopted one when both are in play.
    let provenance = if failing.is_empty() {
        Provenance::Computed
    } else if failing
        .iter()
        .filter_map(|&d| clc.row(d))
        .any(|r| r.provenance == Provenance::Computed)
    {
        Provenance::Computed
    } else {
        Provenance::Cited
    };
    let mut details = Vec::new();
    for row in &clc.rows {
        if row.status == ClcStatus::Fails {
            let witness = row
                .witness
                .as_ref()
                .map(|w| format!(" with witness {w}"))
                .unwrap_or_default();
            details.push(format!(
                "degree {} fails ({}){}",
                row.degree,
                row.provenance.code(),
                witness
            ));
        }
    }
    if details.is_empty() {
        details.push("the ladder is locally connected in degrees zero through three".to_string());
    }
    ConditionReport {
        id: "ladder-local-connectedness",
        status,
        provenance,
        details,
    }
}

fn local_condition(
    ring: &CoefficientRing,
    local: &DegreeTable,
    pair: &DegreeTable,
) -> ConditionReport {
    let expected_top = ring.as_group();
    let mut status = Status::Holds;
    let mut details = Vec::new();
    for degree in 0..=2 {
        match local.value_at(degree) {
            Some(v) if v.is_certified_trivial() => {}
            Some(v) => {
                status = Status::Fails;
                details.push(format!("local degree {degree} is {v}, expected 0"));
            }
            None => {
                status = Status::Fails;
                details.push(format!("local degree {degree} is missing"));
            }
        }
    }
    match local.value_at(3) {
        Some(v) if *v == expected_top => {
            details.push(format!("local degree 3 is {v}, a copy of the coefficients"));
        }
        Some(v) => {
            status = Status::Fails;
            details.push(format!(
                "local degree 3 is {v}, expected {expected_top}"
            ));
        }
        None => {
            status = Status::Fails;
            details.push("local degree 3 is missing".to_string());
        }
    }
    // Corroboration from the independent complement-side assembly.
    for degree in 2..=3 {
        if let Some(v) = pair.value_at(degree) {
            details.push(format!(
                "complement-side pair table gives {v} in degree {degree}"
            ));
        }
    }
    ConditionReport {
        id: "local-cohomology-profile",
        status,
        provenance: Provenance::Computed,
        details,
    }
}
