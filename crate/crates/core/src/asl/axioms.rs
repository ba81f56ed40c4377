//! Degree-bounded verification of the two ASL axioms for a monomial
//! realization of a relation system.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IdealLattice, PosetIdeal};

use super::realize::MonomialRealization;
use super::rewrite::{multichains, rewrite_to_standard, StandardMonomial, DEFAULT_REWRITE_BUDGET};
use super::{pair_name, straightening_relations, Monomial, PairMap, RealizationKind};

pub const DEFAULT_MAX_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// Distinct standard monomials (multichains) of this degree.
    pub standard_monomials: usize,
    /// Products of `degree` generators straightened and checked.
    pub products_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AslReport {
    pub max_degree: usize,
    pub relations_checked: usize,
    pub degrees: Vec<DegreeReport>,
}

impl AslReport {
    pub fn standard_monomials(&self, degree: usize) -> Option<usize> {
        self.degrees
            .iter()
            .find(|d| d.degree == degree)
            .map(|d| d.standard_monomials)
    }
}

/// Verifies the canonical realization of `kind` up to `max_degree`.
pub fn verify_asl_axioms(
    lattice: &IdealLattice,
    kind: RealizationKind,
    max_degree: usize,
) -> Result<AslReport> {
    let relations = straightening_relations(lattice, kind);
    let realization = MonomialRealization::canonical(lattice, kind);
    verify_realization(lattice, &relations, &realization, max_degree)
}

/// Checks, for every degree `d <= max_degree`:
///
/// * every relation is a toric identity `ω_α + ω_α′ = ω_β + ω_β′`;
/// * distinct `d`-multichains have distinct ambient monomials;
/// * every product of `d` generators straightens to a multichain with the
///   same ambient monomial;
/// * the first factor of every straightened incomparable pair lies below
///   both factors.
pub fn verify_realization(
    lattice: &IdealLattice,
    relations: &PairMap,
    realization: &MonomialRealization,
    max_degree: usize,
) -> Result<AslReport> {
    if max_degree < 2 {
        return Err(Error::PreconditionViolated(format!(
            "max_degree must be at least 2, got {max_degree}"
        )));
    }
    relations.validate(lattice)?;
    let gens = generator_table(lattice, realization)?;
    let omega = |a: PosetIdeal| gens[&a];

    for g in gens.values() {
        if g.t_degree() != 1 {
            return Err(Error::AxiomViolation(format!("generator {g} is not of degree 1")));
        }
    }

    let mut relations_checked = 0;
    for r in relations.relations() {
        let lhs = omega(r.pair.0) + omega(r.pair.1);
        let rhs = omega(r.rhs.0) + omega(r.rhs.1);
        if lhs != rhs {
            return Err(Error::AxiomViolation(format!(
                "relation for {} is not a monomial identity: {lhs} != {rhs}",
                pair_name(lattice, r.pair.0, r.pair.1)
            )));
        }
        let straightened = rewrite_to_standard(
            lattice,
            &[r.pair.0, r.pair.1],
            relations,
            DEFAULT_REWRITE_BUDGET,
        )?;
        let first = straightened.factors()[0];
        if !(first.is_below(r.pair.0) && first.is_below(r.pair.1)) {
            return Err(Error::AxiomViolation(format!(
                "straightening of {} starts with {}, not below both factors",
                pair_name(lattice, r.pair.0, r.pair.1),
                lattice.ideal_name(first)
            )));
        }
        relations_checked += 1;
    }

    let ambient = |factors: &[PosetIdeal]| {
        factors
            .iter()
            .fold(realization.unit(), |acc, &a| &acc + omega(a))
    };

    let mut degrees = Vec::with_capacity(max_degree);
    for degree in 1..=max_degree {
        let chains = multichains(lattice, degree);
        let mut seen: HashMap<Monomial, &StandardMonomial> = HashMap::with_capacity(chains.len());
        for c in &chains {
            if let Some(prev) = seen.insert(ambient(c.factors()), c) {
                return Err(Error::AxiomViolation(format!(
                    "standard monomials {} and {} coincide",
                    describe(lattice, prev.factors()),
                    describe(lattice, c.factors())
                )));
            }
        }

        let mut products_checked = 0;
        let mut stack = Vec::with_capacity(degree);
        let mut failure = None;
        for_each_multiset(lattice.ideals(), degree, 0, &mut stack, &mut |factors| {
            if failure.is_some() {
                return;
            }
            products_checked += 1;
            match rewrite_to_standard(lattice, factors, relations, DEFAULT_REWRITE_BUDGET) {
                Ok(s) if ambient(s.factors()) == ambient(factors) => {}
                Ok(s) => {
                    failure = Some(Error::AxiomViolation(format!(
                        "product {} straightens to {} with a different monomial",
                        describe(lattice, factors),
                        describe(lattice, s.factors())
                    )))
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        degrees.push(DegreeReport {
            degree,
            standard_monomials: chains.len(),
            products_checked,
        });
    }

    Ok(AslReport {
        max_degree,
        relations_checked,
        degrees,
    })
}

fn generator_table<'a>(
    lattice: &IdealLattice,
    realization: &'a MonomialRealization,
) -> Result<HashMap<PosetIdeal, &'a Monomial>> {
    if realization.generators().len() != lattice.len() {
        return Err(Error::PreconditionViolated(format!(
            "realization has {} generators for {} ideals",
            realization.generators().len(),
            lattice.len()
        )));
    }
    Ok(lattice
        .ideals()
        .iter()
        .copied()
        .zip(realization.generators())
        .collect())
}

fn for_each_multiset<F: FnMut(&[PosetIdeal])>(
    ideals: &[PosetIdeal],
    degree: usize,
    start: usize,
    stack: &mut Vec<PosetIdeal>,
    f: &mut F,
) {
    if stack.len() == degree {
        f(stack);
        return;
    }
    for pos in start..ideals.len() {
        stack.push(ideals[pos]);
        for_each_multiset(ideals, degree, pos, stack, f);
        stack.pop();
    }
}

fn describe(lattice: &IdealLattice, factors: &[PosetIdeal]) -> String {
    factors
        .iter()
        .map(|&a| lattice.ideal_name(a))
        .collect::<Vec<_>>()
        .join("·")
}
