//! Compatible algebras with straightening laws on `I(P)`.
//!
//! A compatible ASL is described here by its relation system: for every
//! incomparable pair `{α, α′}` of ideals, a pair `(β, β′)` with
//! `β ⊆ α∩α′` and `β′ ⊇ α∪α′`, standing for the binomial relation
//! `ω_α ω_α′ = ω_β ω_β′`. Two compatible ASLs are identified when their
//! relation systems ([`PairMap`]s) are equal.
//!
//! Three canonical systems exist on every `I(P)`:
//!
//! * [`RealizationKind::Order`], the toric ring `K[O(P)]`, `α ↦ u_α t`,
//!   relations `(α∩α′, α∪α′)`;
//! * [`RealizationKind::Chain`], `K[C(P)]`, `α ↦ u_{max α} t`,
//!   relations `(α∗α′, α∪α′)`;
//! * [`RealizationKind::ChainDual`], `K[C(P*)]`, `α ↦ u_{min ᾱ} t`,
//!   relations `(α∩α′, α∘α′)`.

mod axioms;
mod certificate;
mod realize;
mod rewrite;
mod validate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IdealLattice, PosetIdeal};
use crate::subset::Subset;

pub use axioms::{verify_asl_axioms, verify_realization, AslReport, DegreeReport, DEFAULT_MAX_DEGREE};
pub use certificate::{
    check_unique, uniqueness_certificate, CertificateDocument, CertificateStep, Direction,
    NonUniquenessWitness, Refutation, RefutationDocument, StepDocument, UniquenessCertificate,
    Verdict,
};
pub use realize::{
    is_realizable, search_compatible_asls, MonomialRealization, SearchReport, SearchSummary,
    DEFAULT_SEARCH_BUDGET,
};
pub use rewrite::{multichains, rewrite_to_standard, StandardMonomial, DEFAULT_REWRITE_BUDGET};
pub use validate::{validate_certificate, ValidationSummary};

/// Exponent vector over `x_1..x_m` followed by `t` as the last entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    /// The unit monomial in `m` x-variables plus `t`.
    pub fn one(m: usize) -> Self {
        Monomial {
            exponents: vec![0; m + 1],
        }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "a monomial carries at least the t exponent");
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.exponents[..self.exponents.len() - 1]
    }

    /// Degree in the grading `deg ω_α = 1`.
    pub fn t_degree(&self) -> u32 {
        *self.exponents.last().expect("non-empty exponent vector")
    }

    #[must_use]
    pub fn times_t(mut self) -> Self {
        *self.exponents.last_mut().expect("non-empty exponent vector") += 1;
        self
    }

    pub fn is_squarefree_in_x(&self) -> bool {
        self.x_exponents().iter().all(|&e| e <= 1)
    }
}

impl Add for &Monomial {
    type Output = Monomial;

    fn add(self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.exponents.len(), rhs.exponents.len(), "monomials over different rings");
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&rhs.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.x_exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{e}", i + 1)),
            }
        }
        match self.t_degree() {
            0 => {}
            1 => parts.push("t".into()),
            e => parts.push(format!("t^{e}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// `u_W = Π_{p_i ∈ W} x_i` over `n` x-variables, with `t`-exponent 0.
pub fn monomial_of_subset(n: usize, w: Subset) -> Monomial {
    let mut m = Monomial::one(n);
    for i in w {
        m.exponents[i] = 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationKind {
    Order,
    Chain,
    ChainDual,
}

impl RealizationKind {
    pub const ALL: [RealizationKind; 3] = [Self::Order, Self::Chain, Self::ChainDual];

    pub fn name(self) -> &'static str {
        match self {
            Self::Order => "ORDER",
            Self::Chain => "CHAIN",
            Self::ChainDual => "CHAIN_DUAL",
        }
    }
}

impl fmt::Display for RealizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The canonical generator `φ(α)`, `ψ(α)` or `δ(α)`.
pub fn realize(lattice: &IdealLattice, kind: RealizationKind, a: PosetIdeal) -> Monomial {
    let n = lattice.poset().len();
    let support = match kind {
        RealizationKind::Order => a.members(),
        RealizationKind::Chain => lattice.max_elements(a),
        RealizationKind::ChainDual => lattice.min_elements(lattice.complement_filter(a)),
    };
    monomial_of_subset(n, support).times_t()
}

/// `ω_α ω_α′ = ω_β ω_β′` for an incomparable pair `{α, α′}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompatibleRelation {
    pub pair: (PosetIdeal, PosetIdeal),
    pub rhs: (PosetIdeal, PosetIdeal),
}

impl CompatibleRelation {
    /// Stores the pair in lattice order.
    pub fn new(a: PosetIdeal, b: PosetIdeal, beta: PosetIdeal, beta_prime: PosetIdeal) -> Self {
        CompatibleRelation {
            pair: ordered(a, b),
            rhs: (beta, beta_prime),
        }
    }

    /// `α ∥ α′`, `β ⊆ α∩α′` and `β′ ⊇ α∪α′`.
    pub fn is_compatible(&self) -> bool {
        let (a, b) = self.pair;
        let (beta, beta_prime) = self.rhs;
        !a.comparable(b) && beta.is_below(a.meet(b)) && a.join(b).is_below(beta_prime)
    }
}

pub(crate) fn ordered(a: PosetIdeal, b: PosetIdeal) -> (PosetIdeal, PosetIdeal) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One straightening relation per incomparable pair, keyed in lattice order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairMap {
    entries: BTreeMap<(PosetIdeal, PosetIdeal), (PosetIdeal, PosetIdeal)>,
}

impl PairMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, rel: CompatibleRelation) {
        self.entries.insert(rel.pair, rel.rhs);
    }

    pub fn get(&self, a: PosetIdeal, b: PosetIdeal) -> Option<(PosetIdeal, PosetIdeal)> {
        self.entries.get(&ordered(a, b)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn relations(&self) -> impl Iterator<Item = CompatibleRelation> + '_ {
        self.entries
            .iter()
            .map(|(&pair, &rhs)| CompatibleRelation { pair, rhs })
    }

    /// Checks totality over the incomparable pairs of `lattice` and the
    /// compatibility shape of every entry.
    pub fn validate(&self, lattice: &IdealLattice) -> Result<()> {
        let pairs = lattice.incomparable_pairs();
        if pairs.len() != self.entries.len() {
            return Err(Error::PreconditionViolated(format!(
                "pair map has {} entries, lattice has {} incomparable pairs",
                self.entries.len(),
                pairs.len()
            )));
        }
        for (a, b) in pairs {
            let Some((beta, beta_prime)) = self.get(a, b) else {
                return Err(Error::MissingRelation(pair_name(lattice, a, b)));
            };
            let rel = CompatibleRelation::new(a, b, beta, beta_prime);
            if !rel.is_compatible()
                || lattice.position(beta.members()).is_none()
                || lattice.position(beta_prime.members()).is_none()
            {
                return Err(Error::PreconditionViolated(format!(
                    "relation for {} is not compatible",
                    pair_name(lattice, a, b)
                )));
            }
        }
        Ok(())
    }

    pub fn to_table(&self, lattice: &IdealLattice) -> RelationTable {
        let name = |a: PosetIdeal| lattice.poset().subset_labels(a.members());
        RelationTable {
            entries: self
                .relations()
                .map(|r| RelationEntry {
                    pair: [name(r.pair.0), name(r.pair.1)],
                    rhs: [name(r.rhs.0), name(r.rhs.1)],
                })
                .collect(),
        }
    }

    pub fn from_table(lattice: &IdealLattice, table: &RelationTable) -> Result<Self> {
        let ideal = |labels: &[String]| -> Result<PosetIdeal> {
            let s = lattice.poset().subset_from_labels(labels)?;
            lattice
                .ideal(s)
                .ok_or_else(|| Error::Parse(format!("{labels:?} is not a poset ideal")))
        };
        let mut pm = PairMap::new();
        for e in &table.entries {
            pm.insert(CompatibleRelation::new(
                ideal(&e.pair[0])?,
                ideal(&e.pair[1])?,
                ideal(&e.rhs[0])?,
                ideal(&e.rhs[1])?,
            ));
        }
        Ok(pm)
    }
}

/// JSON form of a [`PairMap`]: ideals as label arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTable {
    pub entries: Vec<RelationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub pair: [Vec<String>; 2],
    pub rhs: [Vec<String>; 2],
}

pub(crate) fn pair_name(lattice: &IdealLattice, a: PosetIdeal, b: PosetIdeal) -> String {
    format!("({}, {})", lattice.ideal_name(a), lattice.ideal_name(b))
}

/// The canonical relation system of `kind`.
pub fn straightening_relations(lattice: &IdealLattice, kind: RealizationKind) -> PairMap {
    let mut pm = PairMap::new();
    for (a, b) in lattice.incomparable_pairs() {
        let (beta, beta_prime) = match kind {
            RealizationKind::Order => (a.meet(b), a.join(b)),
            RealizationKind::Chain => (lattice.star(a, b), a.join(b)),
            RealizationKind::ChainDual => (a.meet(b), lattice.circ(a, b)),
        };
        pm.insert(CompatibleRelation::new(a, b, beta, beta_prime));
    }
    pm
}

/// First incomparable pair on which two relation systems disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationDifference {
    pub pair: (PosetIdeal, PosetIdeal),
    pub left: (PosetIdeal, PosetIdeal),
    pub right: (PosetIdeal, PosetIdeal),
}

/// Compares two pair maps over the same lattice; `None` when they coincide.
pub fn first_difference(lattice: &IdealLattice, left: &PairMap, right: &PairMap) -> Option<RelationDifference> {
    lattice.incomparable_pairs().into_iter().find_map(|(a, b)| {
        let l = left.get(a, b)?;
        let r = right.get(a, b)?;
        (l != r).then_some(RelationDifference {
            pair: (a, b),
            left: l,
            right: r,
        })
    })
}

/// Compares the canonical systems of two kinds; `None` when `K[..] ≡ K[..]`.
pub fn relations_equal(
    lattice: &IdealLattice,
    kinds: (RealizationKind, RealizationKind),
) -> Option<RelationDifference> {
    first_difference(
        lattice,
        &straightening_relations(lattice, kinds.0),
        &straightening_relations(lattice, kinds.1),
    )
}

/// Outcome of comparing `K[O(P)]`, `K[C(P)]` and `K[C(P*)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionII {
    pub holds: bool,
    /// Disagreements, in the order ORDER/CHAIN, ORDER/CHAIN_DUAL, CHAIN/CHAIN_DUAL.
    pub witnesses: Vec<(RealizationKind, RealizationKind, RelationDifference)>,
}

pub const KIND_PAIRS: [(RealizationKind, RealizationKind); 3] = [
    (RealizationKind::Order, RealizationKind::Chain),
    (RealizationKind::Order, RealizationKind::ChainDual),
    (RealizationKind::Chain, RealizationKind::ChainDual),
];

pub fn check_condition_ii(lattice: &IdealLattice) -> ConditionII {
    let maps = RealizationKind::ALL.map(|k| straightening_relations(lattice, k));
    let map_of = |k: RealizationKind| &maps[k as usize];
    let witnesses: Vec<_> = KIND_PAIRS
        .iter()
        .filter_map(|&(x, y)| first_difference(lattice, map_of(x), map_of(y)).map(|d| (x, y, d)))
        .collect();
    ConditionII {
        holds: witnesses.is_empty(),
        witnesses,
    }
}
