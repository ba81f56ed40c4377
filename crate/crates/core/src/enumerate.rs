//! Isomorph-free generation of posets and corpus-level verification of the
//! uniqueness criterion.
//!
//! Canonical form: among all linear extensions `σ` of `P`, take the one
//! minimizing the column sequence `c_j = {i < j : σ_i < σ_j}` (each column
//! a bitmask over earlier positions). Columns depend only on the prefix of
//! `σ`, so the search prunes any prefix already larger than the best one.
//!
//! Generation extends each size `n − 1` representative by a new maximal
//! element whose strict down-set is any ideal. A child is kept only when
//! deleting its canonically last element gives back its parent, and
//! duplicate children of one parent are merged by key.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::asl::{check_condition_ii, check_unique, validate_certificate, Verdict};
use crate::error::{Error, Result};
use crate::lattice::IdealLattice;
use crate::poset::{Poset, PosetFile};
use crate::subset::Subset;

/// Largest poset size accepted by [`canonical_form`] and [`generate_posets`].
pub const MAX_CANONICAL_ELEMENTS: usize = 8;

/// Largest size for a corpus run. Larger sizes are available to
/// [`generate_posets`] for structural questions only.
pub const MAX_CORPUS_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPoset {
    /// Relabeled so that index order is the canonical linear extension.
    pub poset: Poset,
    pub key: Vec<u8>,
}

pub fn canonical_form(poset: &Poset) -> Result<CanonicalPoset> {
    let n = poset.len();
    if n > MAX_CANONICAL_ELEMENTS {
        return Err(Error::CapacityExceeded(format!(
            "canonical form supports at most {MAX_CANONICAL_ELEMENTS} elements, got {n}"
        )));
    }
    let mut search = Search {
        poset,
        order: Vec::with_capacity(n),
        position: vec![usize::MAX; n],
        columns: Vec::with_capacity(n),
        best: None,
    };
    search.run(Subset::EMPTY);
    let (columns, order) = search.best.expect("every poset has a linear extension");

    let mut key = Vec::with_capacity(1 + n * 8);
    key.push(n as u8);
    for c in &columns {
        key.extend_from_slice(&c.to_be_bytes());
    }
    let labels = order.iter().map(|&i| poset.label(i).to_owned()).collect();
    let down = columns
        .iter()
        .enumerate()
        .map(|(j, &c)| Subset::from_bits(c).with(j))
        .collect();
    Ok(CanonicalPoset {
        poset: Poset::from_down_sets(labels, down),
        key,
    })
}

pub fn canonical_key(poset: &Poset) -> Result<Vec<u8>> {
    canonical_form(poset).map(|c| c.key)
}

struct Search<'a> {
    poset: &'a Poset,
    order: Vec<usize>,
    position: Vec<usize>,
    columns: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, placed: Subset) {
        let n = self.poset.len();
        let j = self.order.len();
        if j == n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.columns < *b,
            };
            if better {
                self.best = Some((self.columns.clone(), self.order.clone()));
            }
            return;
        }
        for x in placed.complement(n) {
            let strict = self.poset.down_set(x).without(x);
            if !strict.is_subset(placed) {
                continue;
            }
            let col = strict.iter().fold(0u64, |c, e| c | 1 << self.position[e]);
            self.columns.push(col);
            let prune = matches!(&self.best, Some((b, _)) if self.columns[..] > b[..=j]);
            if !prune {
                self.order.push(x);
                self.position[x] = j;
                self.run(placed.with(x));
                self.position[x] = usize::MAX;
                self.order.pop();
            }
            self.columns.pop();
        }
    }
}

fn generated_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("p{i}")).collect()
}

/// One representative per isomorphism class of `n`-element posets, sorted
/// by canonical key. Elements are labelled `p1..pn` in canonical order.
pub fn generate_posets(n: usize) -> Result<Vec<CanonicalPoset>> {
    if n == 0 || n > MAX_CANONICAL_ELEMENTS {
        return Err(Error::CapacityExceeded(format!(
            "poset generation supports 1..={MAX_CANONICAL_ELEMENTS} elements, got {n}"
        )));
    }
    let mut level = vec![canonical_form(&Poset::antichain(1)).map(relabel)?];
    for size in 2..=n {
        let children: Vec<Vec<CanonicalPoset>> = level
            .par_iter()
            .map(|parent| children_of(parent, size))
            .collect::<Result<_>>()?;
        let mut next: BTreeMap<Vec<u8>, CanonicalPoset> = BTreeMap::new();
        for c in children.into_iter().flatten() {
            next.insert(c.key.clone(), c);
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

fn relabel(c: CanonicalPoset) -> CanonicalPoset {
    let n = c.poset.len();
    let down = (0..n).map(|j| c.poset.down_set(j)).collect();
    CanonicalPoset {
        poset: Poset::from_down_sets(generated_labels(n), down),
        key: c.key,
    }
}

fn children_of(parent: &CanonicalPoset, size: usize) -> Result<Vec<CanonicalPoset>> {
    let p = &parent.poset;
    let lattice = IdealLattice::new(p)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for ideal in lattice.ideals() {
        let mut down: Vec<Subset> = (0..p.len()).map(|j| p.down_set(j)).collect();
        down.push(ideal.members().with(p.len()));
        let child = Poset::from_down_sets(generated_labels(size), down);
        let canon = canonical_form(&child)?;
        if !seen.insert(canon.key.clone()) {
            continue;
        }
        // canonical deletion: the last element of the canonical extension
        // must be the one just added, up to isomorphism
        let last = canon.poset.len() - 1;
        let reduced = canon.poset.induced(Subset::full(canon.poset.len()).without(last));
        if canonical_key(&reduced)? == parent.key {
            out.push(relabel(canon));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub max_n: usize,
    /// `check_unique` (with certificate validation) runs only when
    /// `|I(P)|` is at most this bound.
    pub unique_ideal_bound: usize,
    pub parallel: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_n: 6,
            unique_ideal_bound: 1 << 12,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SizeTally {
    pub n: usize,
    pub posets: usize,
    pub sums_of_chains: usize,
    pub condition_ii_holds: usize,
    pub uniqueness_checked: usize,
    pub certificates_validated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub poset: PosetFile,
    pub sum_of_chains: bool,
    pub condition_ii: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub max_n: usize,
    pub tallies: Vec<SizeTally>,
    pub total_posets: usize,
    pub total_sums_of_chains: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u128>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct Outcome {
    sum_of_chains: bool,
    condition_ii: bool,
    uniqueness_checked: bool,
    certificate_validated: bool,
    failure: Option<String>,
}

fn verify_one(poset: &Poset, unique_ideal_bound: usize) -> Result<Outcome> {
    let lattice = IdealLattice::new(poset)?;
    let sum_of_chains = poset.is_direct_sum_of_chains();
    let condition_ii = check_condition_ii(&lattice).holds;
    let mut failure = (sum_of_chains != condition_ii).then(|| {
        format!("sum of chains = {sum_of_chains}, canonical systems agree = {condition_ii}")
    });
    let mut uniqueness_checked = false;
    let mut certificate_validated = false;
    if lattice.len() <= unique_ideal_bound {
        uniqueness_checked = true;
        match check_unique(&lattice) {
            Ok(Verdict::Unique(cert)) => {
                if !sum_of_chains {
                    failure.get_or_insert_with(|| "UNIQUE verdict for a non-sum of chains".into());
                }
                match validate_certificate(&cert.to_document(&lattice), poset) {
                    Ok(_) => certificate_validated = true,
                    Err(e) => {
                        failure.get_or_insert_with(|| e.to_string());
                    }
                }
            }
            Ok(Verdict::NotUnique(w)) => {
                if sum_of_chains {
                    failure.get_or_insert_with(|| "NOT_UNIQUE verdict for a sum of chains".into());
                }
                if w.difference.left == w.difference.right {
                    failure.get_or_insert_with(|| "witness relations coincide".into());
                }
            }
            Err(e) => {
                failure.get_or_insert_with(|| e.to_string());
            }
        }
    }
    Ok(Outcome {
        sum_of_chains,
        condition_ii,
        uniqueness_checked,
        certificate_validated,
        failure,
    })
}

/// Checks, over every poset with at most `options.max_n` elements, that
/// the three canonical relation systems agree exactly on the sums of
/// chains, and that uniqueness verdicts and certificates are consistent.
pub fn corpus_verify(options: &CorpusOptions) -> Result<CorpusReport> {
    if options.max_n > MAX_CORPUS_N {
        return Err(Error::CapacityExceeded(format!(
            "corpus runs support at most {MAX_CORPUS_N} elements, got {}",
            options.max_n
        )));
    }
    let start = Instant::now();
    let mut tallies = Vec::new();
    let mut counterexamples = Vec::new();
    for n in 1..=options.max_n {
        let posets = generate_posets(n)?;
        let check = |c: &CanonicalPoset| verify_one(&c.poset, options.unique_ideal_bound);
        let outcomes: Vec<Outcome> = if options.parallel {
            posets.par_iter().map(check).collect::<Result<_>>()?
        } else {
            posets.iter().map(check).collect::<Result<_>>()?
        };
        let mut tally = SizeTally {
            n,
            posets: posets.len(),
            ..SizeTally::default()
        };
        for (c, o) in posets.iter().zip(outcomes) {
            tally.sums_of_chains += o.sum_of_chains as usize;
            tally.condition_ii_holds += o.condition_ii as usize;
            tally.uniqueness_checked += o.uniqueness_checked as usize;
            tally.certificates_validated += o.certificate_validated as usize;
            if let Some(detail) = o.failure {
                counterexamples.push(Counterexample {
                    n,
                    poset: c.poset.to_file(),
                    sum_of_chains: o.sum_of_chains,
                    condition_ii: o.condition_ii,
                    detail,
                });
            }
        }
        tallies.push(tally);
    }
    Ok(CorpusReport {
        max_n: options.max_n,
        total_posets: tallies.iter().map(|t| t.posets).sum(),
        total_sums_of_chains: tallies.iter().map(|t| t.sums_of_chains).sum(),
        tallies,
        counterexamples,
        wall_clock_ms: Some(start.elapsed().as_millis()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn v_poset() -> Poset {
        build_poset(&["p", "p'", "q"], &[("p", "q"), ("p'", "q")]).unwrap()
    }

    #[test]
    fn keys_identify_isomorphism_classes() {
        let v1 = v_poset();
        let v2 = build_poset(&["p'", "p", "q"], &[("p'", "q"), ("p", "q")]).unwrap();
        assert_eq!(canonical_key(&v1).unwrap(), canonical_key(&v2).unwrap());
        assert_ne!(canonical_key(&v1).unwrap(), canonical_key(&v1.dual()).unwrap());
        let c1 = build_poset(&["x", "y", "z"], &[("z", "x"), ("x", "y")]).unwrap();
        assert_eq!(canonical_key(&c1).unwrap(), canonical_key(&Poset::chain(3)).unwrap());
    }

    #[test]
    fn canonical_poset_is_isomorphic() {
        let v = v_poset();
        let c = canonical_form(&v).unwrap();
        assert_eq!(canonical_key(&c.poset).unwrap(), c.key);
        assert_eq!(c.poset.covers().len(), 2);
    }

    #[test]
    fn capacity() {
        let too_big = CorpusOptions {
            max_n: 8,
            ..CorpusOptions::default()
        };
        assert!(matches!(corpus_verify(&too_big), Err(Error::CapacityExceeded(_))));
        assert!(matches!(canonical_form(&Poset::antichain(9)), Err(Error::CapacityExceeded(_))));
        assert!(generate_posets(0).is_err());
        assert!(generate_posets(9).is_err());
    }

    #[test]
    fn small_counts() {
        let counts: Vec<_> = (1..=5).map(|n| generate_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn corpus_small() {
        let r = corpus_verify(&CorpusOptions {
            max_n: 3,
            ..CorpusOptions::default()
        })
        .unwrap();
        assert_eq!(r.total_posets, 8);
        assert_eq!(r.total_sums_of_chains, 6);
        assert!(r.passed());

        let r = corpus_verify(&CorpusOptions {
            max_n: 1,
            ..CorpusOptions::default()
        })
        .unwrap();
        assert_eq!(r.total_posets, 1);
        assert_eq!(r.tallies[0].certificates_validated, 1);
    }
}
