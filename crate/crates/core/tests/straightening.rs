mod common;

use std::collections::{BTreeSet, HashMap};

use common::{brute_force_search, candidate_count};
use straighten_core::asl::{
    multichains, realize, rewrite_to_standard, search_compatible_asls, verify_asl_axioms, DEFAULT_REWRITE_BUDGET,
    DEFAULT_SEARCH_BUDGET,
};
use straighten_core::{build_poset, generate_posets, IdealLattice, PairMap, Poset, PosetIdeal, RealizationKind};

/// Normal forms reachable from `factors` under every choice of rewrite order.
fn all_normal_forms(
    pm: &PairMap,
    factors: Vec<PosetIdeal>,
    memo: &mut HashMap<Vec<PosetIdeal>, BTreeSet<Vec<PosetIdeal>>>,
) -> BTreeSet<Vec<PosetIdeal>> {
    if let Some(done) = memo.get(&factors) {
        return done.clone();
    }
    let mut out = BTreeSet::new();
    let mut reducible = false;
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let (a, b) = (factors[i], factors[j]);
            if a.comparable(b) {
                continue;
            }
            reducible = true;
            let (lo, hi) = pm.get(a, b).unwrap();
            let mut next = factors.clone();
            next[i] = lo;
            next[j] = hi;
            next.sort();
            out.extend(all_normal_forms(pm, next, memo));
        }
    }
    if !reducible {
        out.insert(factors.clone());
    }
    memo.insert(factors, out.clone());
    out
}

fn multisets(ideals: &[PosetIdeal], degree: usize) -> Vec<Vec<PosetIdeal>> {
    if degree == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &a) in ideals.iter().enumerate() {
        for mut rest in multisets(&ideals[i..], degree - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn check_confluence(l: &IdealLattice, pm: &PairMap, kind: Option<RealizationKind>) {
    let mut memo = HashMap::new();
    for m in multisets(l.ideals(), 3) {
        let forms = all_normal_forms(pm, m.clone(), &mut memo);
        assert_eq!(forms.len(), 1, "rewriting is not confluent on {m:?}");
        let nf = rewrite_to_standard(l, &m, pm, DEFAULT_REWRITE_BUDGET).unwrap();
        assert_eq!(forms.first().unwrap(), nf.factors());
        if let Some(kind) = kind {
            let mono = |fs: &[PosetIdeal]| {
                fs.iter().skip(1).fold(realize(l, kind, fs[0]), |acc, &a| &acc + &realize(l, kind, a))
            };
            assert_eq!(mono(&m), mono(nf.factors()));
        }
    }
}

#[test]
fn rewriting_is_confluent() {
    for n in 1..=4 {
        for c in generate_posets(n).unwrap() {
            let l = IdealLattice::new(&c.poset).unwrap();
            for kind in RealizationKind::ALL {
                check_confluence(&l, &straighten_core::straightening_relations(&l, kind), Some(kind));
            }
            if l.len() <= 12 {
                for pm in search_compatible_asls(&l, 3, DEFAULT_SEARCH_BUDGET).unwrap().pair_maps {
                    check_confluence(&l, &pm, None);
                }
            }
        }
    }
}

#[test]
fn search_matches_brute_force() {
    let mut compared = 0;
    for n in 1..=4 {
        for c in generate_posets(n).unwrap() {
            let l = IdealLattice::new(&c.poset).unwrap();
            if candidate_count(&l) > 20_000 {
                continue;
            }
            let fast = search_compatible_asls(&l, 3, DEFAULT_SEARCH_BUDGET).unwrap();
            assert!(fast.exhausted);
            assert_eq!(fast.pair_maps, brute_force_search(&l, 3), "{:?}", c.poset.to_file());
            compared += 1;
        }
    }
    assert!(compared >= 15);
}

#[test]
fn search_counts() {
    let v = build_poset(&["p", "p'", "q"], &[("p", "q"), ("p'", "q")]).unwrap();
    for p in [v.clone(), v.dual()] {
        let l = IdealLattice::new(&p).unwrap();
        assert_eq!(search_compatible_asls(&l, 3, DEFAULT_SEARCH_BUDGET).unwrap().pair_maps.len(), 2);
    }
    for lengths in [&[1, 1][..], &[2, 1], &[1, 1, 1], &[2, 1, 1], &[2, 2], &[3, 1]] {
        let l = IdealLattice::new(&Poset::sum_of_chains(lengths)).unwrap();
        let r = search_compatible_asls(&l, 3, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(r.pair_maps, vec![straighten_core::straightening_relations(&l, RealizationKind::Order)]);
    }
}

#[test]
fn multichain_counts_match_brute_force() {
    for n in 1..=4 {
        for c in generate_posets(n).unwrap() {
            let l = IdealLattice::new(&c.poset).unwrap();
            for d in 1..=3 {
                let brute = multisets(l.ideals(), d)
                    .iter()
                    .filter(|m| m.windows(2).all(|w| w[0].members().is_subset(w[1].members())))
                    .count();
                assert_eq!(multichains(&l, d).len(), brute);
            }
            for kind in RealizationKind::ALL {
                let report = verify_asl_axioms(&l, kind, 3).unwrap();
                assert_eq!(report.standard_monomials(2), Some(multichains(&l, 2).len()));
            }
        }
    }
}
