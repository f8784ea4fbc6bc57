//! A small deduction engine for exact sequences of abelian groups.
//!
//! The caller writes down a sequence with some terms known and some unknown,
//! optionally asserts facts about particular arrows (zero, mono, epi, iso),
//! and asks the engine to saturate. Exactness is assumed at every interior
//! term: the image of each arrow equals the kernel of the next. The engine
//! only ever derives consequences of that assumption, records each step in a
//! trace, and reports a contradiction instead of guessing when the givens
//! cannot all hold.

use crate::abelian::{NonTrivialReason, SymbolicGroup};
use crate::error::{Error, Result};
use crate::trace::TraceStep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermValue {
    Known(SymbolicGroup),
    Unknown,
}

/// A fact the caller supplies about one arrow of the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowFact {
    IsZero,
    IsMono,
    IsEpi,
    IsIso,
}

#[derive(Clone, Debug)]
pub struct ExactSequence {
    terms: Vec<(String, TermValue)>,
    facts: Vec<(usize, ArrowFact)>,
}

/// What the engine concluded about one term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The value was supplied by the caller.
    Given(SymbolicGroup),
    /// The value was derived.
    Determined(SymbolicGroup),
    /// Provably nonzero, isomorphism type not pinned down.
    NonTrivial(NonTrivialReason),
    /// Nothing could be concluded.
    Undetermined,
}

impl Outcome {
    /// The outcome as a group value, folding ignorance into the symbolic
    /// unknowns.
    pub fn as_group(&self) -> SymbolicGroup {
        match self {
            Outcome::Given(g) | Outcome::Determined(g) => g.clone(),
            Outcome::NonTrivial(r) => SymbolicGroup::NonTrivialUnknown(r.clone()),
            Outcome::Undetermined => SymbolicGroup::Unknown,
        }
    }

    pub fn is_given(&self) -> bool {
        matches!(self, Outcome::Given(_))
    }
}

#[derive(Clone, Debug)]
pub struct Deduction {
    pub terms: Vec<(String, Outcome)>,
    pub trace: Vec<TraceStep>,
}

impl Deduction {
    pub fn outcome_of(&self, name: &str) -> Option<&Outcome> {
        self.terms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o)
    }

    pub fn value_of(&self, name: &str) -> SymbolicGroup {
        self.outcome_of(name)
            .map(Outcome::as_group)
            .unwrap_or(SymbolicGroup::Unknown)
    }
}

#[derive(Clone, Copy, Default)]
struct ArrowState {
    zero: bool,
    mono: bool,
    epi: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum TermState {
    Unknown,
    NonZero(NonTrivialReason),
    Val(SymbolicGroup),
}

impl TermState {
    fn certified_nonzero(&self) -> bool {
        match self {
            TermState::Unknown => false,
            TermState::NonZero(_) => true,
            TermState::Val(v) => v.is_certified_nonzero(),
        }
    }

    fn is_trivial(&self) -> bool {
        matches!(self, TermState::Val(v) if v.is_certified_trivial())
    }
}

impl ExactSequence {
    /// A sequence of named terms, exact at every interior position.
    pub fn new(terms: Vec<(impl Into<String>, TermValue)>) -> Result<Self> {
        if terms.len() < 2 {
            return Err(Error::InvalidSequence(
                "need at least two terms".to_string(),
            ));
        }
        Ok(ExactSequence {
            terms: terms
                .into_iter()
                .map(|(n, v)| (n.into(), v))
                .collect(),
            facts: Vec::new(),
        })
    }

    /// Assert a fact about the arrow from term `index` to term `index + 1`.
    pub fn add_fact(&mut self, index: usize, fact: ArrowFact) -> Result<()> {
        if index + 1 >= self.terms.len() {
            return Err(Error::InvalidSequence(format!(
                "no arrow at index {index}"
            )));
        }
        self.facts.push((index, fact));
        Ok(())
    }

    pub fn with_fact(mut self, index: usize, fact: ArrowFact) -> Result<Self> {
        self.add_fact(index, fact)?;
        Ok(self)
    }

    fn arrow_site(&self, i: usize) -> String {
        format!("{} -> {}", self.terms[i].0, self.terms[i + 1].0)
    }

    /// Saturate the rule set and report per-term outcomes plus the trace.
    pub fn solve(&self) -> Result<Deduction> {
        let n = self.terms.len();
        let mut arrows = vec![ArrowState::default(); n - 1];
        for &(i, fact) in &self.facts {
            match fact {
                ArrowFact::IsZero => arrows[i].zero = true,
                ArrowFact::IsMono => arrows[i].mono = true,
                ArrowFact::IsEpi => arrows[i].epi = true,
                ArrowFact::IsIso => {
                    arrows[i].mono = true;
                    arrows[i].epi = true;
                }
            }
        }
        let mut states: Vec<TermState> = self
            .terms
            .iter()
            .map(|(_, v)| match v {
                TermValue::Known(g) => TermState::Val(g.clone()),
                TermValue::Unknown => TermState::Unknown,
            })
            .collect();
        let mut trace: Vec<TraceStep> = Vec::new();

        loop {
            let mut changed = false;

            // Trivial terms force their incident arrows.
            for i in 0..n {
                if !states[i].is_trivial() {
                    continue;
                }
                if i + 1 < n {
                    let a = &mut arrows[i];
                    if !a.zero || !a.mono {
                        a.zero = true;
                        a.mono = true;
                        changed = true;
                        trace.push(TraceStep::new(
                            "trivial-source",
                            self.arrow_site(i),
                            "arrow out of a trivial term is zero and mono",
                        ));
                    }
                }
                if i > 0 {
                    let a = &mut arrows[i - 1];
                    if !a.zero || !a.epi {
                        a.zero = true;
                        a.epi = true;
                        changed = true;
                        trace.push(TraceStep::new(
                            "trivial-target",
                            self.arrow_site(i - 1),
                            "arrow into a trivial term is zero and epi",
                        ));
                    }
                }
            }

            // Exactness at interior term i relates arrows i-1 and i.
            for i in 1..n - 1 {
                let (prev, next) = (i - 1, i);
                if arrows[prev].epi && !arrows[next].zero {
                    arrows[next].zero = true;
                    changed = true;
                    trace.push(TraceStep::new(
                        "epi-forces-next-zero",
                        self.arrow_site(next),
                        format!("previous arrow is epi, so by exactness at {} this arrow vanishes", self.terms[i].0),
                    ));
                }
                if arrows[next].zero && !arrows[prev].epi {
                    arrows[prev].epi = true;
                    changed = true;
                    trace.push(TraceStep::new(
                        "zero-forces-prev-epi",
                        self.arrow_site(prev),
                        format!("next arrow vanishes, so by exactness at {} this arrow is epi", self.terms[i].0),
                    ));
                }
                if arrows[prev].zero && !arrows[next].mono {
                    arrows[next].mono = true;
                    changed = true;
                    trace.push(TraceStep::new(
                        "zero-forces-next-mono",
                        self.arrow_site(next),
                        format!("previous arrow vanishes, so by exactness at {} this arrow is mono", self.terms[i].0),
                    ));
                }
                if arrows[next].mono && !arrows[prev].zero {
                    arrows[prev].zero = true;
                    changed = true;
                    trace.push(TraceStep::new(
                        "mono-forces-prev-zero",
                        self.arrow_site(prev),
                        format!("next arrow is mono, so by exactness at {} this arrow vanishes", self.terms[i].0),
                    ));
                }
            }

            // A zero mono has trivial source; a zero epi has trivial target.
            for i in 0..n - 1 {
                if arrows[i].mono && arrows[i].zero {
                    changed |= self.set_state(
                        &mut states,
                        &mut trace,
                        i,
                        TermState::Val(SymbolicGroup::Trivial),
                        "zero-mono-trivial-source",
                        "a map that is both zero and mono has trivial source",
                    )?;
                }
                if arrows[i].epi && arrows[i].zero {
                    changed |= self.set_state(
                        &mut states,
                        &mut trace,
                        i + 1,
                        TermState::Val(SymbolicGroup::Trivial),
                        "zero-epi-trivial-target",
                        "a map that is both zero and epi has trivial target",
                    )?;
                }
            }

            // Isomorphisms transfer values both ways.
            for i in 0..n - 1 {
                if !(arrows[i].mono && arrows[i].epi) {
                    continue;
                }
                let pair = (states[i].clone(), states[i + 1].clone());
                match pair {
                    (TermState::Val(v), other) if !matches!(other, TermState::Val(_)) => {
                        changed |= self.set_state(
                            &mut states,
                            &mut trace,
                            i + 1,
                            TermState::Val(v),
                            "iso-transfers-value",
                            "isomorphic to a term with a known value",
                        )?;
                    }
                    (other, TermState::Val(v)) if !matches!(other, TermState::Val(_)) => {
                        changed |= self.set_state(
                            &mut states,
                            &mut trace,
                            i,
                            TermState::Val(v),
                            "iso-transfers-value",
                            "isomorphic to a term with a known value",
                        )?;
                    }
                    (TermState::Val(a), TermState::Val(b)) => {
                        if a != b {
                            // Compatible only when one side merely certifies
                            // nonzeroness; then the concrete side wins.
                            let a_loose = matches!(a, SymbolicGroup::NonTrivialUnknown(_));
                            let b_loose = matches!(b, SymbolicGroup::NonTrivialUnknown(_));
                            match (a_loose, b_loose) {
                                (true, false) if b.is_certified_nonzero() => {
                                    changed |= self.set_state(
                                        &mut states,
                                        &mut trace,
                                        i,
                                        TermState::Val(b),
                                        "iso-refines-value",
                                        "isomorphism replaces a bare nonzero certificate with a concrete value",
                                    )?;
                                }
                                (false, true) if a.is_certified_nonzero() => {
                                    changed |= self.set_state(
                                        &mut states,
                                        &mut trace,
                                        i + 1,
                                        TermState::Val(a),
                                        "iso-refines-value",
                                        "isomorphism replaces a bare nonzero certificate with a concrete value",
                                    )?;
                                }
                                (true, true) => {}
                                _ => {
                                    return Err(Error::Inconsistency(format!(
                                        "{} and {} are isomorphic but carry different values {} and {}",
                                        self.terms[i].0,
                                        self.terms[i + 1].0,
                                        a,
                                        b
                                    )));
                                }
                            }
                        }
                    }
                    _ => {}
                }
            }

            // Nonzeroness flows along monos and backward along epis.
            for i in 0..n - 1 {
                if arrows[i].mono
                    && !arrows[i].zero
                    && states[i].certified_nonzero()
                    && matches!(states[i + 1], TermState::Unknown)
                {
                    changed |= self.set_state(
                        &mut states,
                        &mut trace,
                        i + 1,
                        TermState::NonZero(NonTrivialReason::ReceivesMonomorphism),
                        "mono-from-nonzero",
                        "receives a mono from a nonzero term",
                    )?;
                }
                if arrows[i].epi
                    && !arrows[i].zero
                    && states[i + 1].certified_nonzero()
                    && matches!(states[i], TermState::Unknown)
                {
                    changed |= self.set_state(
                        &mut states,
                        &mut trace,
                        i,
                        TermState::NonZero(NonTrivialReason::SurjectsOntoNontrivial),
                        "epi-onto-nonzero",
                        "surjects onto a nonzero term",
                    )?;
                }
            }

            // Short exact piece with a free quotient splits: if A -> U is
            // mono, U -> C is epi, exactness holds at U, and C is free and
            // finitely generated, then U is A plus C.
            for i in 1..n - 1 {
                if !(arrows[i - 1].mono && arrows[i].epi) {
                    continue;
                }
                if !matches!(states[i], TermState::Unknown | TermState::NonZero(_)) {
                    continue;
                }
                let sub = match &states[i - 1] {
                    TermState::Val(v) => v.clone(),
                    _ => continue,
                };
                let quot = match &states[i + 1] {
                    TermState::Val(v) => v.clone(),
                    _ => continue,
                };
                let quot_free = match quot.to_fg() {
                    Some(g) => g.invariant_factors().is_empty(),
                    None => false,
                };
                if !quot_free {
                    continue;
                }
                let total = SymbolicGroup::sum(vec![sub, quot]);
                changed |= self.set_state(
                    &mut states,
                    &mut trace,
                    i,
                    TermState::Val(total),
                    "free-quotient-splits",
                    "extension of a free finitely generated quotient splits",
                )?;
            }

            if !changed {
                break;
            }
        }

        let terms = self
            .terms
            .iter()
            .zip(states)
            .map(|((name, given), state)| {
                let outcome = match (given, state) {
                    (TermValue::Known(g), _) => Outcome::Given(g.clone()),
                    (TermValue::Unknown, TermState::Val(v)) => Outcome::Determined(v),
                    (TermValue::Unknown, TermState::NonZero(r)) => Outcome::NonTrivial(r),
                    (TermValue::Unknown, TermState::Unknown) => Outcome::Undetermined,
                };
                (name.clone(), outcome)
            })
            .collect();
        Ok(Deduction { terms, trace })
    }

    /// Monotone state update with contradiction detection. Returns whether
    /// anything changed.
    fn set_state(
        &self,
        states: &mut [TermState],
        trace: &mut Vec<TraceStep>,
        i: usize,
        new: TermState,
        rule: &'static str,
        why: &str,
    ) -> Result<bool> {
        let name = &self.terms[i].0;
        let old = &states[i];
        let accepted = match (old, &new) {
            (a, b) if a == b => None,
            (_, TermState::Unknown) => None,
            (TermState::Unknown, _) => Some(new),
            (TermState::NonZero(_), TermState::Val(v)) => {
                if v.is_certified_trivial() {
                    return Err(Error::Inconsistency(format!(
                        "{name} is certified nonzero but was derived to vanish"
                    )));
                }
                Some(new)
            }
            (TermState::NonZero(_), TermState::NonZero(_)) => None,
            (TermState::Val(SymbolicGroup::NonTrivialUnknown(_)), TermState::Val(v))
                if v.is_certified_nonzero() =>
            {
                Some(new)
            }
            (TermState::Val(v), TermState::NonZero(_)) => {
                if v.is_certified_trivial() {
                    return Err(Error::Inconsistency(format!(
                        "{name} vanishes but was derived to be nonzero"
                    )));
                }
                None
            }
            (TermState::Val(a), TermState::Val(b)) => {
                // Keep a concrete value over a bare certificate; anything
                // else is a genuine conflict.
                if matches!(b, SymbolicGroup::NonTrivialUnknown(_)) && a.is_certified_nonzero() {
                    None
                } else {
                    return Err(Error::Inconsistency(format!(
                        "{name} was derived to be {b} but already carries {a}"
                    )));
                }
            }
        };
        match accepted {
            Some(state) => {
                let conclusion = match &state {
                    TermState::Val(v) => format!("{name} = {v} ({why})"),
                    TermState::NonZero(r) => format!("{name} is nonzero [{r}] ({why})"),
                    TermState::Unknown => unreachable!(),
                };
                trace.push(TraceStep::new(rule, format!("term {name}"), conclusion));
                states[i] = state;
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn known(g: SymbolicGroup) -> TermValue {
        TermValue::Known(g)
    }

    fn zero() -> TermValue {
        TermValue::Known(SymbolicGroup::Trivial)
    }

    #[test]
    fn squeeze_between_trivial_terms() {
        let seq = ExactSequence::new(vec![
            ("L", zero()),
            ("U", TermValue::Unknown),
            ("R", zero()),
        ])
        .unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(
            ded.outcome_of("U"),
            Some(&Outcome::Determined(SymbolicGroup::Trivial))
        );
        assert!(!ded.trace.is_empty());
    }

    #[test]
    fn iso_transfer_through_short_window() {
        let seq = ExactSequence::new(vec![
            ("0", zero()),
            ("U", TermValue::Unknown),
            ("B", known(SymbolicGroup::cyclic(6))),
            ("0'", zero()),
        ])
        .unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(ded.value_of("U"), SymbolicGroup::cyclic(6));
    }

    #[test]
    fn split_extension_with_free_quotient() {
        let seq = ExactSequence::new(vec![
            ("0", zero()),
            ("A", known(SymbolicGroup::cyclic(2))),
            ("U", TermValue::Unknown),
            ("C", known(SymbolicGroup::free(1))),
            ("0'", zero()),
        ])
        .unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(
            ded.value_of("U"),
            SymbolicGroup::sum(vec![SymbolicGroup::cyclic(2), SymbolicGroup::free(1)])
        );
    }

    #[test]
    fn torsion_quotient_still_certifies_nonzero() {
        // 0 -> Q -> U -> Z/3 -> 0 does not split by these rules, but U
        // receives a mono from Q.
        let seq = ExactSequence::new(vec![
            ("0", zero()),
            ("A", known(SymbolicGroup::Rationals)),
            ("U", TermValue::Unknown),
            ("C", known(SymbolicGroup::cyclic(3))),
            ("0'", zero()),
        ])
        .unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(
            ded.outcome_of("U"),
            Some(&Outcome::NonTrivial(NonTrivialReason::ReceivesMonomorphism))
        );
    }

    #[test]
    fn open_ended_mono_certificate() {
        let mut seq = ExactSequence::new(vec![
            ("A", known(SymbolicGroup::cyclic(2))),
            ("U", TermValue::Unknown),
        ])
        .unwrap();
        seq.add_fact(0, ArrowFact::IsMono).unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(
            ded.outcome_of("U"),
            Some(&Outcome::NonTrivial(NonTrivialReason::ReceivesMonomorphism))
        );
    }

    #[test]
    fn epi_pulls_nonzero_backward() {
        let mut seq = ExactSequence::new(vec![
            ("U", TermValue::Unknown),
            ("B", known(SymbolicGroup::free(1))),
        ])
        .unwrap();
        seq.add_fact(0, ArrowFact::IsEpi).unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(
            ded.outcome_of("U"),
            Some(&Outcome::NonTrivial(NonTrivialReason::SurjectsOntoNontrivial))
        );
    }

    #[test]
    fn given_facts_can_contradict() {
        let seq = ExactSequence::new(vec![
            ("0", zero()),
            ("A", known(SymbolicGroup::cyclic(5))),
            ("0'", zero()),
        ])
        .unwrap();
        assert!(matches!(seq.solve(), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn iso_fact_merges_with_concrete_value() {
        let mut seq = ExactSequence::new(vec![
            ("A", known(SymbolicGroup::cyclic(4))),
            ("U", TermValue::Unknown),
        ])
        .unwrap();
        seq.add_fact(0, ArrowFact::IsIso).unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(ded.value_of("U"), SymbolicGroup::cyclic(4));
    }

    #[test]
    fn longer_window_with_interior_unknowns() {
        // 0 -> Z -> U -> Z/2 -> 0 does not determine U (the extension could
        // be Z or Z + Z/2), so the engine must stay honest and only certify
        // nonzeroness.
        let seq = ExactSequence::new(vec![
            ("0", zero()),
            ("A", known(SymbolicGroup::free(1))),
            ("U", TermValue::Unknown),
            ("C", known(SymbolicGroup::cyclic(2))),
            ("0'", zero()),
        ])
        .unwrap();
        let ded = seq.solve().unwrap();
        assert_eq!(
            ded.outcome_of("U"),
            Some(&Outcome::NonTrivial(NonTrivialReason::ReceivesMonomorphism))
        );
    }

    #[test]
    fn undetermined_stays_undetermined() {
        let seq = ExactSequence::new(vec![
            ("A", TermValue::Unknown),
            ("B", TermValue::Unknown),
            ("C", TermValue::Unknown),
        ])
        .unwrap();
        let ded = seq.solve().unwrap();
        assert!(ded
            .terms
            .iter()
            .all(|(_, o)| matches!(o, Outcome::Undetermined)));
        assert!(ded.trace.is_empty());
    }

    #[test]
    fn free_rank_two_quotient_splits() {
        let seq = ExactSequence::new(vec![
            ("0", zero()),
            ("A", known(SymbolicGroup::cyclic(3))),
            ("U", TermValue::Unknown),
            ("C", known(SymbolicGroup::free(2))),
            ("0'", zero()),
        ])
        .unwrap();
        let ded = seq.solve().unwrap();
        let expect = SymbolicGroup::sum(vec![SymbolicGroup::cyclic(3), SymbolicGroup::free(2)]);
        assert_eq!(ded.value_of("U"), expect);
    }
}
