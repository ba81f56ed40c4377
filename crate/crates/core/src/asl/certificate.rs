//! Uniqueness certificates for sums of chains, and the uniqueness verdict.
//!
//! When `P` is a disjoint union of chains, every incomparable pair
//! `{α, α′}` is forced to straighten as `(α∩α′, α∪α′)`. The certificate
//! proves this pair by pair, by induction on
//! `k = n − (rank(α∪α′) − rank(α∩α′))`:
//!
//! * `k = 0` means `α∩α′ = ∅` and `α∪α′ = P`, so no alternative exists.
//! * Otherwise each alternative `(β, β′)` is refuted. If `β′ ⊋ α∪α′`, pick
//!   `q` minimal in `β′ ∖ (α∪α′)`, covering some `p ∈ max(α∪α′)` (or
//!   minimal in `P`), orient the pair so that `p ∈ α′`, and put
//!   `α₁ = α′ ∪ {q}`. If instead `β ⊊ α∩α′`, pick `q` maximal in
//!   `(α∩α′) ∖ β`, orient so that `q` is maximal in `α′`, and put
//!   `α₁ = α′ ∖ {q}`. In both cases `(α, α₁)` is incomparable with
//!   parameter `k − 1` and was already certified, and the product
//!   `ω_α ω_α′ ω_α₁` straightens in two ways to two distinct standard
//!   monomials, contradicting the basis axiom.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IdealLattice, PosetIdeal};

use super::rewrite::StandardMonomial;
use super::{check_condition_ii, CompatibleRelation, RealizationKind, RelationDifference};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// The alternative has `β′ ⊋ α∪α′`.
    Join,
    /// The alternative has `β′ = α∪α′` and `β ⊊ α∩α′`.
    Meet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub alternative: (PosetIdeal, PosetIdeal),
    pub direction: Direction,
    /// `(α, α′)` after orientation.
    pub oriented: (PosetIdeal, PosetIdeal),
    /// Element of `α∪α′` covered by `q` (join case) or covering `q` (meet case).
    pub p: Option<usize>,
    pub q: usize,
    pub alpha1: PosetIdeal,
    /// The already certified relation for `(α, α₁)`.
    pub prior: CompatibleRelation,
    /// `ω_α ω_α′ ω_α₁` straightened through the prior relation.
    pub via_prior: StandardMonomial,
    /// `ω_α ω_α′ ω_α₁` straightened through the alternative.
    pub via_alternative: StandardMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateStep {
    pub pair: (PosetIdeal, PosetIdeal),
    pub k: usize,
    pub rhs: (PosetIdeal, PosetIdeal),
    pub refutations: Vec<Refutation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessCertificate {
    pub n: usize,
    pub steps: Vec<CertificateStep>,
}

fn induction_parameter(n: usize, a: PosetIdeal, b: PosetIdeal) -> usize {
    n - (a.join(b).rank() - a.meet(b).rank())
}

/// Builds the certificate; `P` must be a disjoint union of chains.
pub fn uniqueness_certificate(lattice: &IdealLattice) -> Result<UniquenessCertificate> {
    let poset = lattice.poset();
    if !poset.is_direct_sum_of_chains() {
        return Err(Error::PreconditionViolated(
            "uniqueness certificates exist only for disjoint unions of chains".into(),
        ));
    }
    let n = poset.len();
    let mut pairs = lattice.incomparable_pairs();
    pairs.sort_by_key(|&(a, b)| induction_parameter(n, a, b));

    let mut steps = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let (meet, join) = (a.meet(b), a.join(b));
        let k = induction_parameter(n, a, b);
        let lows: Vec<_> = lattice.ideals().iter().copied().filter(|x| x.is_below(meet)).collect();
        let highs: Vec<_> = lattice.ideals().iter().copied().filter(|x| join.is_below(*x)).collect();
        let mut refutations = Vec::new();
        for &lo in &lows {
            for &hi in &highs {
                if (lo, hi) != (meet, join) {
                    refutations.push(refute(lattice, (a, b), (lo, hi)));
                }
            }
        }
        steps.push(CertificateStep {
            pair: (a, b),
            k,
            rhs: (meet, join),
            refutations,
        });
    }
    Ok(UniquenessCertificate { n, steps })
}

fn refute(
    lattice: &IdealLattice,
    (a, b): (PosetIdeal, PosetIdeal),
    (lo, hi): (PosetIdeal, PosetIdeal),
) -> Refutation {
    let poset = lattice.poset();
    let (meet, join) = (a.meet(b), a.join(b));

    let (direction, oriented, p, q, alpha1) = if hi != join {
        // q minimal in β′ ∖ (α∪α′); in a sum of chains it covers at most one p
        let fresh = hi.members().difference(join.members());
        let candidates: Vec<usize> = fresh
            .iter()
            .filter(|&q| poset.down_set(q).without(q).is_subset(join.members()))
            .collect();
        let with_p = candidates
            .iter()
            .filter_map(|&q| poset.lower_covers(q).last().map(|p| (p, q)))
            .max();
        let (p, q) = match with_p {
            Some((p, q)) => (Some(p), q),
            None => (None, *candidates.iter().max().expect("β′ ∖ (α∪α′) has a minimal element")),
        };
        let oriented = match p {
            Some(p) if !b.members().contains(p) => (b, a),
            _ => (a, b),
        };
        let alpha1 = PosetIdeal::new_unchecked(oriented.1.members().with(q));
        (Direction::Join, oriented, p, q, alpha1)
    } else {
        // q maximal in (α∩α′) ∖ β
        let lost = meet.members().difference(lo.members());
        let candidates: Vec<usize> = lost
            .iter()
            .filter(|&q| poset.up_set(q).without(q).intersection(meet.members()).is_empty())
            .collect();
        let with_p = candidates
            .iter()
            .filter_map(|&q| poset.upper_covers(q).iter().next().map(|p| (p, q)))
            .min();
        let (p, q) = match with_p {
            Some((p, q)) => (Some(p), q),
            None => (None, *candidates.iter().min().expect("(α∩α′) ∖ β has a maximal element")),
        };
        let above_q = poset.up_set(q).without(q);
        let oriented = if above_q.intersection(b.members()).is_empty() {
            (a, b)
        } else {
            (b, a)
        };
        let alpha1 = PosetIdeal::new_unchecked(oriented.1.members().without(q));
        (Direction::Meet, oriented, p, q, alpha1)
    };

    let (alpha, alpha_prime) = oriented;
    debug_assert!(lattice.position(alpha1.members()).is_some());
    let prior = CompatibleRelation::new(
        alpha,
        alpha1,
        alpha.meet(alpha1),
        alpha.join(alpha1),
    );
    let via_prior = StandardMonomial::new(vec![prior.rhs.0, prior.rhs.1, alpha_prime])
        .expect("prior straightening yields a multichain");
    let via_alternative = StandardMonomial::new(vec![lo, hi, alpha1])
        .expect("alternative straightening yields a multichain");
    Refutation {
        alternative: (lo, hi),
        direction,
        oriented,
        p,
        q,
        alpha1,
        prior,
        via_prior,
        via_alternative,
    }
}

/// Witness that two canonical relation systems differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUniquenessWitness {
    pub kinds: (RealizationKind, RealizationKind),
    pub difference: RelationDifference,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unique(UniquenessCertificate),
    NotUnique(NonUniquenessWitness),
}

impl Verdict {
    pub fn is_unique(&self) -> bool {
        matches!(self, Verdict::Unique(_))
    }
}

/// Decides whether `I(P)` carries a unique compatible ASL.
pub fn check_unique(lattice: &IdealLattice) -> Result<Verdict> {
    if lattice.poset().is_direct_sum_of_chains() {
        return uniqueness_certificate(lattice).map(Verdict::Unique);
    }
    let cond = check_condition_ii(lattice);
    let (x, y, difference) = cond.witnesses.first().copied().ok_or_else(|| {
        Error::PreconditionViolated(
            "poset is not a sum of chains but the canonical relation systems agree".into(),
        )
    })?;
    Ok(Verdict::NotUnique(NonUniquenessWitness {
        kinds: (x, y),
        difference,
    }))
}

// JSON form. Ideals are label arrays in element index order.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub elements: Vec<String>,
    pub steps: Vec<StepDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub pair: [Vec<String>; 2],
    pub k: usize,
    pub rhs: [Vec<String>; 2],
    pub refutations: Vec<RefutationDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationDocument {
    pub alternative: [Vec<String>; 2],
    pub direction: Direction,
    pub oriented: [Vec<String>; 2],
    pub p: Option<String>,
    pub q: String,
    pub alpha1: Vec<String>,
    pub prior_pair: [Vec<String>; 2],
    pub prior_rhs: [Vec<String>; 2],
    pub via_prior: [Vec<String>; 3],
    pub via_alternative: [Vec<String>; 3],
}

impl UniquenessCertificate {
    pub fn to_document(&self, lattice: &IdealLattice) -> CertificateDocument {
        let poset = lattice.poset();
        let name = |a: PosetIdeal| poset.subset_labels(a.members());
        let pair = |(a, b): (PosetIdeal, PosetIdeal)| [name(a), name(b)];
        let triple = |m: &StandardMonomial| {
            let f = m.factors();
            [name(f[0]), name(f[1]), name(f[2])]
        };
        CertificateDocument {
            elements: poset.labels().to_vec(),
            steps: self
                .steps
                .iter()
                .map(|s| StepDocument {
                    pair: pair(s.pair),
                    k: s.k,
                    rhs: pair(s.rhs),
                    refutations: s
                        .refutations
                        .iter()
                        .map(|r| RefutationDocument {
                            alternative: pair(r.alternative),
                            direction: r.direction,
                            oriented: pair(r.oriented),
                            p: r.p.map(|i| poset.label(i).to_owned()),
                            q: poset.label(r.q).to_owned(),
                            alpha1: name(r.alpha1),
                            prior_pair: pair(r.prior.pair),
                            prior_rhs: pair(r.prior.rhs),
                            via_prior: triple(&r.via_prior),
                            via_alternative: triple(&r.via_alternative),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl CertificateDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
