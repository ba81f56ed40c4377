//! Independent replay of a uniqueness certificate.
//!
//! The validator reads the JSON document only. It recomputes every claim
//! from the order relation of the poset and plain set operations on
//! ideals; nothing from the certificate builder is reused.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::lattice::{IdealLattice, PosetIdeal};
use crate::poset::Poset;
use crate::subset::Subset;

use super::certificate::{CertificateDocument, Direction, RefutationDocument, StepDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationSummary {
    pub steps: usize,
    pub refutations: usize,
}

/// Certified pairs with their right-hand side and induction parameter.
type Certified = HashMap<(Subset, Subset), ((Subset, Subset), usize)>;

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidCertificate(msg.into()))
}

struct Replay<'a> {
    poset: &'a Poset,
    n: usize,
}

impl Replay<'_> {
    fn element(&self, label: &str) -> Result<usize> {
        match self.poset.index_of(label) {
            Some(i) => Ok(i),
            None => reject(format!("unknown element `{label}`")),
        }
    }

    /// Labels must be listed once each, in element index order, and form an ideal.
    fn ideal(&self, labels: &[String]) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        let mut last = None;
        for l in labels {
            let i = self.element(l)?;
            if last.is_some_and(|j| j >= i) {
                return reject(format!("ideal {labels:?} is not listed in element order"));
            }
            last = Some(i);
            s = s.with(i);
        }
        for j in s.iter() {
            for i in 0..self.n {
                if self.poset.le(i, j) && !s.contains(i) {
                    return reject(format!("{labels:?} is not down-closed"));
                }
            }
        }
        Ok(s)
    }

    fn pair(&self, p: &[Vec<String>; 2]) -> Result<(Subset, Subset)> {
        Ok((self.ideal(&p[0])?, self.ideal(&p[1])?))
    }

    fn triple(&self, t: &[Vec<String>; 3]) -> Result<[Subset; 3]> {
        Ok([self.ideal(&t[0])?, self.ideal(&t[1])?, self.ideal(&t[2])?])
    }
}

fn in_lattice_order(a: Subset, b: Subset) -> bool {
    (a.len(), a.bits()) < (b.len(), b.bits())
}

fn pair_before(x: (Subset, Subset), y: (Subset, Subset)) -> bool {
    let key = |s: Subset| (s.len(), s.bits());
    (key(x.0), key(x.1)) < (key(y.0), key(y.1))
}

fn ordered(a: Subset, b: Subset) -> (Subset, Subset) {
    if in_lattice_order(b, a) {
        (b, a)
    } else {
        (a, b)
    }
}

fn incomparable(a: Subset, b: Subset) -> bool {
    !a.is_subset(b) && !b.is_subset(a)
}

fn sorted_multiset(mut m: [Subset; 3]) -> [Subset; 3] {
    m.sort_by_key(|s| (s.len(), s.bits()));
    m
}

fn is_multichain(m: &[Subset; 3]) -> bool {
    m[0].is_subset(m[1]) && m[1].is_subset(m[2])
}

/// Replays `doc` against `poset`. Accepts only a complete certificate whose
/// every field matches the recomputation.
pub fn validate_certificate(doc: &CertificateDocument, poset: &Poset) -> Result<ValidationSummary> {
    if doc.elements != poset.labels() {
        return reject("element list does not match the poset");
    }
    let n = poset.len();
    for i in 0..n {
        let below = (0..n).filter(|&j| j != i && poset.le(j, i));
        let above = (0..n).filter(|&j| j != i && poset.le(i, j));
        // in a sum of chains, each element is comparable to everything
        // comparable to its comparables
        for x in below.chain(above) {
            for y in 0..n {
                if y != x && poset.comparable(i, y) && !poset.comparable(x, y) {
                    return reject("poset is not a disjoint union of chains");
                }
            }
        }
    }

    let replay = Replay { poset, n };
    let lattice = IdealLattice::new(poset)?;
    let ideals: Vec<Subset> = lattice.ideals().iter().map(|a: &PosetIdeal| a.members()).collect();
    let mut expected_pairs = HashSet::new();
    for (i, &a) in ideals.iter().enumerate() {
        for &b in &ideals[i + 1..] {
            if incomparable(a, b) {
                expected_pairs.insert(ordered(a, b));
            }
        }
    }

    let mut certified = Certified::new();
    let mut previous: Option<(usize, (Subset, Subset))> = None;
    let mut refutations = 0;
    for (idx, step) in doc.steps.iter().enumerate() {
        let k = check_step(&replay, &ideals, &expected_pairs, &certified, step)
            .map_err(|e| annotate(e, idx))?;
        let pair = replay.pair(&step.pair)?;
        // steps run by k, then by pair in lattice order
        if let Some((pk, pp)) = previous {
            if k < pk || (k == pk && !pair_before(pp, pair)) {
                return reject(format!("step {idx}: steps are not ordered by (k, pair)"));
            }
        }
        previous = Some((k, pair));
        certified.insert(pair, (replay.pair(&step.rhs)?, k));
        refutations += step.refutations.len();
    }
    if certified.len() != expected_pairs.len() {
        return reject(format!(
            "{} of {} incomparable pairs certified",
            certified.len(),
            expected_pairs.len()
        ));
    }
    Ok(ValidationSummary {
        steps: doc.steps.len(),
        refutations,
    })
}

fn annotate(e: Error, idx: usize) -> Error {
    match e {
        Error::InvalidCertificate(m) => Error::InvalidCertificate(format!("step {idx}: {m}")),
        other => other,
    }
}

fn check_step(
    replay: &Replay<'_>,
    ideals: &[Subset],
    expected_pairs: &HashSet<(Subset, Subset)>,
    certified: &Certified,
    step: &StepDocument,
) -> Result<usize> {
    let (a, b) = replay.pair(&step.pair)?;
    if !in_lattice_order(a, b) || !expected_pairs.contains(&(a, b)) {
        return reject("pair is not an incomparable pair in lattice order");
    }
    if certified.contains_key(&(a, b)) {
        return reject("pair certified twice");
    }
    let (meet, join) = (a.intersection(b), a.union(b));
    let k = replay.n - (join.len() - meet.len());
    if step.k != k {
        return reject(format!("claimed k = {}, actual {k}", step.k));
    }
    if replay.pair(&step.rhs)? != (meet, join) {
        return reject("right-hand side is not (meet, join)");
    }

    let mut alternatives = Vec::new();
    for &lo in ideals.iter().filter(|s| s.is_subset(meet)) {
        for &hi in ideals.iter().filter(|s| join.is_subset(**s)) {
            if (lo, hi) != (meet, join) {
                alternatives.push((lo, hi));
            }
        }
    }
    if alternatives.len() != step.refutations.len() {
        return reject(format!(
            "{} alternatives exist, {} refuted",
            alternatives.len(),
            step.refutations.len()
        ));
    }
    if k == 0 && !alternatives.is_empty() {
        return reject("base case with alternatives");
    }
    for (alt, r) in alternatives.iter().zip(&step.refutations) {
        check_refutation(replay, (a, b), *alt, k, certified, r)?;
    }
    Ok(k)
}

fn check_refutation(
    replay: &Replay<'_>,
    (a, b): (Subset, Subset),
    (lo, hi): (Subset, Subset),
    k: usize,
    certified: &Certified,
    r: &RefutationDocument,
) -> Result<()> {
    let poset = replay.poset;
    if replay.pair(&r.alternative)? != (lo, hi) {
        return reject("alternatives out of order");
    }
    let (x, y) = replay.pair(&r.oriented)?;
    if !((x, y) == (a, b) || (x, y) == (b, a)) {
        return reject("oriented pair is not the step pair");
    }
    let q = replay.element(&r.q)?;
    let p = r.p.as_deref().map(|l| replay.element(l)).transpose()?;
    let alpha1 = replay.ideal(&r.alpha1)?;
    let (meet, join) = (a.intersection(b), a.union(b));

    match r.direction {
        Direction::Join => {
            if !hi.contains(q) || join.contains(q) {
                return reject("q is not in β′ ∖ (α∪α′)");
            }
            if alpha1 != y.with(q) {
                return reject("α₁ is not α′ ∪ {q}");
            }
            let lower: Vec<usize> = (0..replay.n).filter(|&i| is_cover(poset, i, q)).collect();
            match p {
                None if lower.is_empty() => {}
                Some(p) if lower.contains(&p) => {
                    if !y.contains(p) {
                        return reject("p is not in α′");
                    }
                    if join.iter().any(|z| z != p && poset.le(p, z)) {
                        return reject("p is not maximal in α∪α′");
                    }
                }
                _ => return reject("p is not the element covered by q"),
            }
        }
        Direction::Meet => {
            if !meet.contains(q) || lo.contains(q) {
                return reject("q is not in (α∩α′) ∖ β");
            }
            if alpha1 != y.without(q) {
                return reject("α₁ is not α′ ∖ {q}");
            }
            let upper: Vec<usize> = (0..replay.n).filter(|&i| is_cover(poset, q, i)).collect();
            match p {
                None if upper.is_empty() => {}
                Some(p) if upper.contains(&p) => {
                    if y.contains(p) {
                        return reject("p lies in α′");
                    }
                }
                _ => return reject("p is not the element covering q"),
            }
        }
    }
    if !incomparable(x, alpha1) {
        return reject("α and α₁ are comparable");
    }

    let prior_pair = replay.pair(&r.prior_pair)?;
    let prior_rhs = replay.pair(&r.prior_rhs)?;
    if prior_pair != ordered(x, alpha1) {
        return reject("prior pair is not (α, α₁)");
    }
    if prior_rhs != (x.intersection(alpha1), x.union(alpha1)) {
        return reject("prior relation is not (meet, join)");
    }
    match certified.get(&prior_pair) {
        Some(&(rhs, prior_k)) if rhs == prior_rhs && prior_k + 1 == k => {}
        _ => return reject("prior relation was not certified at k − 1"),
    }

    let via_prior = replay.triple(&r.via_prior)?;
    let via_alternative = replay.triple(&r.via_alternative)?;
    if via_prior != sorted_multiset([prior_rhs.0, prior_rhs.1, y]) {
        return reject("straightening through the prior relation is wrong");
    }
    if via_alternative != sorted_multiset([lo, hi, alpha1]) {
        return reject("straightening through the alternative is wrong");
    }
    if !is_multichain(&via_prior) || !is_multichain(&via_alternative) {
        return reject("collision terms are not standard monomials");
    }
    if via_prior == via_alternative {
        return reject("collision terms coincide");
    }
    Ok(())
}

fn is_cover(poset: &Poset, lower: usize, upper: usize) -> bool {
    poset.lt(lower, upper)
        && !(0..poset.len()).any(|z| poset.lt(lower, z) && poset.lt(z, upper))
}
