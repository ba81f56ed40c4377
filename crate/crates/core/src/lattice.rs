//! The distributive lattice `I(P)` of poset ideals.
//!
//! Besides meet and join this module provides the two substitute operations
//! used by the chain-polytope straightening laws: `star` (a meet-substitute)
//! and `circ` (a join-substitute). Both are total functions; on comparable
//! arguments `star` returns the smaller ideal and `circ` the larger one.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::{dot_quote, Poset};
use crate::subset::Subset;

/// Default upper bound on the number of ideals enumerated.
pub const DEFAULT_IDEAL_CAP: usize = 1 << 20;

/// A down-closed subset of a poset.
///
/// Ordered by cardinality first and bit pattern second, which is the
/// deterministic order used for every listing of ideals.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct PosetIdeal(Subset);

impl PosetIdeal {
    pub const EMPTY: PosetIdeal = PosetIdeal(Subset::EMPTY);

    /// Wraps `s` without checking down-closure.
    pub fn new_unchecked(s: Subset) -> Self {
        PosetIdeal(s)
    }

    pub fn members(self) -> Subset {
        self.0
    }

    /// `|α|`; `I(P)` is graded by cardinality.
    pub fn rank(self) -> usize {
        self.0.len()
    }

    pub fn meet(self, other: Self) -> Self {
        PosetIdeal(self.0.intersection(other.0))
    }

    pub fn join(self, other: Self) -> Self {
        PosetIdeal(self.0.union(other.0))
    }

    pub fn is_below(self, other: Self) -> bool {
        self.0.is_subset(other.0)
    }

    pub fn comparable(self, other: Self) -> bool {
        self.is_below(other) || other.is_below(self)
    }
}

impl Ord for PosetIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then(self.0.bits().cmp(&other.0.bits()))
    }
}

impl PartialOrd for PosetIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An up-closed subset of a poset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Filter(Subset);

impl Filter {
    pub fn new_unchecked(s: Subset) -> Self {
        Filter(s)
    }

    pub fn members(self) -> Subset {
        self.0
    }
}

#[derive(Clone, Debug)]
pub struct IdealLattice {
    poset: Poset,
    ideals: Vec<PosetIdeal>,
    index: HashMap<Subset, usize>,
}

/// Enumerates `I(P)` with the default capacity bound.
pub fn enumerate_ideals(poset: &Poset) -> Result<IdealLattice> {
    IdealLattice::with_cap(poset, DEFAULT_IDEAL_CAP)
}

impl IdealLattice {
    pub fn new(poset: &Poset) -> Result<Self> {
        enumerate_ideals(poset)
    }

    pub fn with_cap(poset: &Poset, cap: usize) -> Result<Self> {
        let mut ideals = Vec::new();
        collect_ideals(poset, 0, Subset::EMPTY, cap, &mut ideals)?;
        let mut ideals: Vec<PosetIdeal> = ideals.into_iter().map(PosetIdeal).collect();
        ideals.sort_unstable();
        let index = ideals
            .iter()
            .enumerate()
            .map(|(i, a)| (a.members(), i))
            .collect();
        Ok(IdealLattice {
            poset: poset.clone(),
            ideals,
            index,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn ideals(&self) -> &[PosetIdeal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Position of `s` in the lattice order, if `s` is an ideal.
    pub fn position(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    /// Checks down-closure and wraps.
    pub fn ideal(&self, s: Subset) -> Option<PosetIdeal> {
        self.poset.is_down_closed(s).then_some(PosetIdeal(s))
    }

    pub fn bottom(&self) -> PosetIdeal {
        PosetIdeal::EMPTY
    }

    pub fn top(&self) -> PosetIdeal {
        PosetIdeal(self.poset.ground())
    }

    pub fn meet(&self, a: PosetIdeal, b: PosetIdeal) -> PosetIdeal {
        a.meet(b)
    }

    pub fn join(&self, a: PosetIdeal, b: PosetIdeal) -> PosetIdeal {
        a.join(b)
    }

    pub fn rank(&self, a: PosetIdeal) -> usize {
        a.rank()
    }

    /// `max α`, the antichain generating `α`.
    pub fn max_elements(&self, a: PosetIdeal) -> Subset {
        self.poset.maximal_in(a.members())
    }

    /// Down-closure of an antichain; inverse of [`IdealLattice::max_elements`].
    pub fn ideal_from_antichain(&self, antichain: Subset) -> Result<PosetIdeal> {
        if let Some((i, j)) = self.poset.comparable_pair_in(antichain) {
            return Err(Error::NotAntichain(
                self.poset.label(i).to_owned(),
                self.poset.label(j).to_owned(),
            ));
        }
        Ok(PosetIdeal(self.poset.down_closure(antichain)))
    }

    /// `ᾱ = P ∖ α`.
    pub fn complement_filter(&self, a: PosetIdeal) -> Filter {
        Filter(a.members().complement(self.poset.len()))
    }

    pub fn min_elements(&self, f: Filter) -> Subset {
        self.poset.minimal_in(f.members())
    }

    /// Complement of a filter, which is an ideal.
    pub fn complement_ideal(&self, f: Filter) -> PosetIdeal {
        PosetIdeal(f.members().complement(self.poset.len()))
    }

    pub fn filter_generated_by(&self, s: Subset) -> Filter {
        Filter(self.poset.up_closure(s))
    }

    /// `α ∗ β`: the ideal generated by `max(α∩β) ∩ (max α ∪ max β)`.
    pub fn star(&self, a: PosetIdeal, b: PosetIdeal) -> PosetIdeal {
        let gens = self
            .max_elements(a.meet(b))
            .intersection(self.max_elements(a).union(self.max_elements(b)));
        PosetIdeal(self.poset.down_closure(gens))
    }

    /// `α ∘ β`: the complement of the filter generated by
    /// `min(ᾱ∩β̄) ∩ (min ᾱ ∪ min β̄)`.
    pub fn circ(&self, a: PosetIdeal, b: PosetIdeal) -> PosetIdeal {
        let fa = self.complement_filter(a);
        let fb = self.complement_filter(b);
        let both = Filter(fa.members().intersection(fb.members()));
        let gens = self
            .min_elements(both)
            .intersection(self.min_elements(fa).union(self.min_elements(fb)));
        self.complement_ideal(self.filter_generated_by(gens))
    }

    /// Unordered incomparable pairs `(α, β)` with `α < β` in lattice order.
    pub fn incomparable_pairs(&self) -> Vec<(PosetIdeal, PosetIdeal)> {
        let mut out = Vec::new();
        for (i, &a) in self.ideals.iter().enumerate() {
            for &b in &self.ideals[i + 1..] {
                if !a.comparable(b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Nonempty ideals with a single maximal element (principal ideals).
    pub fn join_irreducibles(&self) -> Vec<PosetIdeal> {
        self.ideals
            .iter()
            .copied()
            .filter(|&a| self.max_elements(a).len() == 1)
            .collect()
    }

    /// Ideals as label arrays in lattice order.
    pub fn labelled_ideals(&self) -> Vec<Vec<String>> {
        self.ideals
            .iter()
            .map(|a| self.poset.subset_labels(a.members()))
            .collect()
    }

    pub fn ideal_name(&self, a: PosetIdeal) -> String {
        format!("{{{}}}", self.poset.subset_labels(a.members()).join(","))
    }

    /// Hasse diagram of `I(P)` in DOT, drawn bottom to top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ideals {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, &a) in self.ideals.iter().enumerate() {
            let _ = writeln!(s, "  i{i} [label={}];", dot_quote(&self.ideal_name(a)));
        }
        for (i, &a) in self.ideals.iter().enumerate() {
            for x in a.members().complement(self.poset.len()) {
                if let Some(j) = self.position(a.members().with(x)) {
                    let _ = writeln!(s, "  i{i} -> i{j};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn collect_ideals(
    poset: &Poset,
    next: usize,
    current: Subset,
    cap: usize,
    out: &mut Vec<Subset>,
) -> Result<()> {
    if next == poset.len() {
        if out.len() >= cap {
            return Err(Error::CapacityExceeded(format!(
                "more than {cap} poset ideals"
            )));
        }
        out.push(current);
        return Ok(());
    }
    collect_ideals(poset, next + 1, current, cap, out)?;
    // indices are a linear extension, so every lower element is already decided
    if poset.lower_covers(next).is_subset(current) {
        collect_ideals(poset, next + 1, current.with(next), cap, out)?;
    }
    Ok(())
}
