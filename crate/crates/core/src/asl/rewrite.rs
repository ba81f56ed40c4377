use crate::error::{Error, Result};
use crate::lattice::{IdealLattice, PosetIdeal};

use super::{pair_name, PairMap};

/// Default cap on rewrite steps before reporting non-termination.
pub const DEFAULT_REWRITE_BUDGET: usize = 100_000;

/// A multichain `α_1 ⊆ α_2 ⊆ ... ⊆ α_k`, stored ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardMonomial {
    factors: Vec<PosetIdeal>,
}

impl StandardMonomial {
    /// Sorts `factors` and checks that they form a multichain.
    pub fn new(mut factors: Vec<PosetIdeal>) -> Option<Self> {
        factors.sort_unstable();
        factors
            .windows(2)
            .all(|w| w[0].is_below(w[1]))
            .then_some(StandardMonomial { factors })
    }

    pub fn factors(&self) -> &[PosetIdeal] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }
}

/// Straightens a product of generators into a standard monomial.
///
/// Each step replaces the first incomparable pair (in sorted factor order)
/// by the right-hand side of its relation. For a compatible relation
/// `|β′| > max(|α|, |α′|)` and `|β| < min(|α|, |α′|)`, so the factor ranks
/// sorted descending grow strictly in lexicographic order; the walk is
/// finite. `budget` guards against malformed relation systems.
pub fn rewrite_to_standard(
    lattice: &IdealLattice,
    factors: &[PosetIdeal],
    relations: &PairMap,
    budget: usize,
) -> Result<StandardMonomial> {
    if factors.is_empty() {
        return Err(Error::PreconditionViolated("empty product".into()));
    }
    let mut current = factors.to_vec();
    current.sort_unstable();
    let mut steps = 0;
    loop {
        let Some((i, j)) = first_incomparable(&current) else {
            return Ok(StandardMonomial { factors: current });
        };
        if steps == budget {
            return Err(Error::NonTermination(budget));
        }
        let (a, b) = (current[i], current[j]);
        let (beta, beta_prime) = relations
            .get(a, b)
            .ok_or_else(|| Error::MissingRelation(pair_name(lattice, a, b)))?;
        #[cfg(debug_assertions)]
        let before = rank_profile(&current);
        current[i] = beta;
        current[j] = beta_prime;
        current.sort_unstable();
        #[cfg(debug_assertions)]
        if beta.is_below(a.meet(b)) && a.join(b).is_below(beta_prime) {
            debug_assert!(rank_profile(&current) > before, "termination measure did not grow");
        }
        steps += 1;
    }
}

fn first_incomparable(factors: &[PosetIdeal]) -> Option<(usize, usize)> {
    (0..factors.len()).find_map(|i| {
        (i + 1..factors.len())
            .find(|&j| !factors[i].comparable(factors[j]))
            .map(|j| (i, j))
    })
}

#[cfg(debug_assertions)]
fn rank_profile(factors: &[PosetIdeal]) -> Vec<usize> {
    let mut r: Vec<_> = factors.iter().map(|a| a.rank()).collect();
    r.sort_unstable_by(|x, y| y.cmp(x));
    r
}

/// All multichains of length `degree` in `lattice`, in lexicographic order
/// of lattice positions.
pub fn multichains(lattice: &IdealLattice, degree: usize) -> Vec<StandardMonomial> {
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(degree);
    extend_multichains(lattice.ideals(), 0, degree, &mut stack, &mut out);
    out
}

fn extend_multichains(
    ideals: &[PosetIdeal],
    start: usize,
    degree: usize,
    stack: &mut Vec<PosetIdeal>,
    out: &mut Vec<StandardMonomial>,
) {
    if stack.len() == degree {
        out.push(StandardMonomial {
            factors: stack.clone(),
        });
        return;
    }
    for (pos, &a) in ideals.iter().enumerate().skip(start) {
        if stack.last().is_none_or(|&last| last.is_below(a)) {
            stack.push(a);
            extend_multichains(ideals, pos, degree, stack, out);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asl::{straightening_relations, CompatibleRelation, RealizationKind};
    use crate::lattice::enumerate_ideals;
    use crate::poset::{build_poset, Poset};

    fn v_lattice() -> IdealLattice {
        enumerate_ideals(&build_poset(&["p", "p'", "q"], &[("p", "q"), ("p'", "q")]).unwrap()).unwrap()
    }

    fn ideal(l: &IdealLattice, labels: &[&str]) -> PosetIdeal {
        l.ideal(l.poset().subset_from_labels(labels).unwrap()).unwrap()
    }

    #[test]
    fn singleton_and_chain_unchanged() {
        let l = v_lattice();
        let pm = straightening_relations(&l, RealizationKind::Order);
        let a = ideal(&l, &["p"]);
        let s = rewrite_to_standard(&l, &[a], &pm, 10).unwrap();
        assert_eq!(s.factors(), [a]);
        let s = rewrite_to_standard(&l, &[l.top(), l.bottom()], &pm, 10).unwrap();
        assert_eq!(s.factors(), [l.bottom(), l.top()]);
    }

    #[test]
    fn one_step() {
        let l = v_lattice();
        let pm = straightening_relations(&l, RealizationKind::Order);
        let s = rewrite_to_standard(&l, &[ideal(&l, &["p"]), ideal(&l, &["p'"])], &pm, 10).unwrap();
        assert_eq!(s.factors(), [PosetIdeal::EMPTY, ideal(&l, &["p", "p'"])]);
    }

    #[test]
    fn errors() {
        let l = v_lattice();
        let pair = [ideal(&l, &["p"]), ideal(&l, &["p'"])];
        assert!(matches!(
            rewrite_to_standard(&l, &pair, &PairMap::new(), 10),
            Err(Error::MissingRelation(_))
        ));
        assert!(rewrite_to_standard(&l, &[], &PairMap::new(), 10).is_err());
        // a non-compatible map that swaps the pair forever
        let mut looping = PairMap::new();
        looping.insert(CompatibleRelation::new(pair[0], pair[1], pair[1], pair[0]));
        assert_eq!(
            rewrite_to_standard(&l, &pair, &looping, 50),
            Err(Error::NonTermination(50))
        );
    }

    #[test]
    fn multichain_counts() {
        let l = v_lattice();
        assert_eq!(multichains(&l, 1).len(), 5);
        assert_eq!(multichains(&l, 2).len(), 14);
        // chain of n+1 ideals: multisets of size d
        let c = enumerate_ideals(&Poset::chain(3)).unwrap();
        assert_eq!(multichains(&c, 3).len(), 20);
    }

    #[test]
    fn standard_monomial_constructor() {
        let l = v_lattice();
        assert!(StandardMonomial::new(vec![l.top(), l.bottom()]).is_some());
        assert!(StandardMonomial::new(vec![ideal(&l, &["p"]), ideal(&l, &["p'"])]).is_none());
    }
}
