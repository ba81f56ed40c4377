//! Monomial realizations of relation systems and the search for compatible
//! ASLs on a fixed `I(P)`.
//!
//! A relation system is realizable when some assignment `α ↦ ω_α = w_α t`
//! satisfies every relation as an identity of exponent vectors and passes
//! the degree-bounded basis check. Every coordinate function of such an
//! assignment lies in the rational kernel of the linear system
//! `w_α + w_α′ − w_β − w_β′ = 0`, so the realization built from a full kernel
//! basis separates standard monomials whenever any realization does. The
//! search is therefore exhaustive up to the degree bound.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num::integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IdealLattice, PosetIdeal};

use super::axioms::verify_realization;
use super::rewrite::multichains;
use super::{realize, CompatibleRelation, Monomial, PairMap, RealizationKind};

/// Default cap on the number of partial relation systems tested in a search.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 22;

/// Generators `ω_α` indexed by lattice position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRealization {
    generators: Vec<Monomial>,
}

impl MonomialRealization {
    pub fn canonical(lattice: &IdealLattice, kind: RealizationKind) -> Self {
        MonomialRealization {
            generators: lattice
                .ideals()
                .iter()
                .map(|&a| realize(lattice, kind, a))
                .collect(),
        }
    }

    /// Generators must share one ring and be listed in lattice order.
    pub fn from_generators(generators: Vec<Monomial>) -> Self {
        assert!(!generators.is_empty(), "a lattice always has at least one ideal");
        let len = generators[0].exponents().len();
        assert!(generators.iter().all(|g| g.exponents().len() == len));
        MonomialRealization { generators }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Number of x-variables.
    pub fn x_vars(&self) -> usize {
        self.generators[0].exponents().len() - 1
    }

    pub fn unit(&self) -> Monomial {
        Monomial::one(self.x_vars())
    }

    pub fn generator(&self, lattice: &IdealLattice, a: PosetIdeal) -> Option<&Monomial> {
        lattice.position(a.members()).map(|i| &self.generators[i])
    }
}

/// Tries to realize `relations` by monomials; `Ok(None)` means no
/// realization passes the basis check up to `max_degree`.
pub fn is_realizable(
    lattice: &IdealLattice,
    relations: &PairMap,
    max_degree: usize,
) -> Result<Option<MonomialRealization>> {
    relations.validate(lattice)?;
    let realization = kernel_realization(lattice, relations)?;
    match verify_realization(lattice, relations, &realization, max_degree) {
        Ok(_) => Ok(Some(realization)),
        Err(Error::AxiomViolation(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn kernel_realization(lattice: &IdealLattice, relations: &PairMap) -> Result<MonomialRealization> {
    let cols = lattice.len();
    let pos = |a: PosetIdeal| {
        lattice
            .position(a.members())
            .expect("validated relations only reference ideals")
    };
    let rows: Vec<Vec<i128>> = relations
        .relations()
        .map(|r| {
            let mut row = vec![0i128; cols];
            row[pos(r.pair.0)] += 1;
            row[pos(r.pair.1)] += 1;
            row[pos(r.rhs.0)] -= 1;
            row[pos(r.rhs.1)] -= 1;
            row
        })
        .collect();
    let basis = integer_kernel(rows, cols)?;

    let mut coords: Vec<Vec<u32>> = Vec::new();
    for v in basis {
        let min = *v.iter().min().expect("non-empty kernel vector");
        let shifted: Vec<u32> = v
            .iter()
            .map(|&x| u32::try_from(x - min).map_err(|_| Error::ArithmeticOverflow))
            .collect::<Result<_>>()?;
        if shifted.iter().any(|&x| x != 0) {
            coords.push(shifted);
        }
    }
    let generators = (0..cols)
        .map(|i| {
            let mut e: Vec<u32> = coords.iter().map(|c| c[i]).collect();
            e.push(1);
            Monomial::from_exponents(e)
        })
        .collect();
    Ok(MonomialRealization { generators })
}

fn checked_row_combo(a: &[i128], ca: i128, b: &[i128], cb: i128) -> Result<Vec<i128>> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            x.checked_mul(ca)
                .zip(y.checked_mul(cb))
                .and_then(|(p, q)| p.checked_sub(q))
                .ok_or(Error::ArithmeticOverflow)
        })
        .collect()
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Integer basis of `{x : M x = 0}` via fraction-free reduced row echelon form.
pub(crate) fn integer_kernel(mut m: Vec<Vec<i128>>, cols: usize) -> Result<Vec<Vec<i128>>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, found);
        if m[r][c] < 0 {
            m[r].iter_mut().for_each(|x| *x = -*x);
        }
        normalize(&mut m[r]);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (p, e) = (m[r][c], m[i][c]);
                let mut row = checked_row_combo(&m[i], p, &m[r], e)?;
                normalize(&mut row);
                m[i] = row;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }

    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let l = pivots
            .iter()
            .enumerate()
            .filter(|&(row, _)| m[row][f] != 0)
            .fold(1i128, |l, (row, &c)| l.lcm(&m[row][c]));
        let mut v = vec![0i128; cols];
        v[f] = l;
        for (row, &c) in pivots.iter().enumerate() {
            if m[row][f] != 0 {
                v[c] = (-m[row][f])
                    .checked_mul(l / m[row][c])
                    .ok_or(Error::ArithmeticOverflow)?;
            }
        }
        normalize(&mut v);
        basis.push(v);
    }
    Ok(basis)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    /// Realizable relation systems, sorted.
    pub pair_maps: Vec<PairMap>,
    /// Size of the full candidate space (saturating).
    pub candidates: u128,
    /// Partial systems tested during the search.
    pub explored: u128,
    /// Whether the candidate space was covered completely. Counts are then
    /// exact relative to the degree bound.
    pub exhausted: bool,
    pub max_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub found: usize,
    pub candidates: String,
    pub explored: String,
    pub exhausted: bool,
    pub max_degree: usize,
}

impl SearchReport {
    pub fn summary(&self) -> SearchSummary {
        SearchSummary {
            found: self.pair_maps.len(),
            candidates: self.candidates.to_string(),
            explored: self.explored.to_string(),
            exhausted: self.exhausted,
            max_degree: self.max_degree,
        }
    }
}

type Row = Vec<i128>;

/// Decides whether the relations in `rows` still let all multichains of
/// each degree stay distinct. Two multichains collide in every realization
/// of `rows` exactly when they collide in the kernel realization, and adding
/// rows only shrinks the kernel, so a failure here is final for every
/// extension of `rows`.
struct Separation {
    cols: usize,
    /// Multichains of each degree, as lists of lattice positions.
    chains: Vec<Vec<Vec<usize>>>,
}

impl Separation {
    fn new(lattice: &IdealLattice, max_degree: usize) -> Self {
        let chains = (1..=max_degree)
            .map(|d| {
                multichains(lattice, d)
                    .iter()
                    .map(|m| {
                        m.factors()
                            .iter()
                            .map(|f| lattice.position(f.members()).expect("lattice member"))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Separation {
            cols: lattice.len(),
            chains,
        }
    }

    fn holds(&self, rows: &[Row]) -> Result<bool> {
        let basis = integer_kernel(rows.to_vec(), self.cols)?;
        for level in &self.chains {
            let mut seen = HashSet::with_capacity(level.len());
            for chain in level {
                let sig: Vec<i128> = basis
                    .iter()
                    .map(|v| chain.iter().map(|&i| v[i]).sum())
                    .collect();
                if !seen.insert(sig) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

struct Backtrack<'a> {
    lattice: &'a IdealLattice,
    max_degree: usize,
    separation: Separation,
    pairs: Vec<(PosetIdeal, PosetIdeal)>,
    budget: u128,
    explored: AtomicU64,
}

impl Backtrack<'_> {
    fn row(&self, (a, b): (PosetIdeal, PosetIdeal), (lo, hi): (PosetIdeal, PosetIdeal)) -> Row {
        let pos = |x: PosetIdeal| self.lattice.position(x.members()).expect("lattice member");
        let mut row = vec![0i128; self.lattice.len()];
        row[pos(a)] += 1;
        row[pos(b)] += 1;
        row[pos(lo)] -= 1;
        row[pos(hi)] -= 1;
        row
    }

    fn count(&self, n: u64) -> Result<()> {
        let explored = self.explored.fetch_add(n, AtomicOrdering::Relaxed) as u128 + n as u128;
        if explored > self.budget {
            return Err(Error::BudgetExceeded {
                explored,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// `open[i]` lists the options of pair `i` still consistent with
    /// `rows`; `chosen[i]` is set once pair `i` is assigned.
    fn run(
        &self,
        rows: &[Row],
        chosen: &[Option<(PosetIdeal, PosetIdeal)>],
        open: &[Vec<(PosetIdeal, PosetIdeal)>],
    ) -> Result<Vec<PairMap>> {
        // Most constrained pair first; ties go to the earliest pair.
        let next = (0..self.pairs.len())
            .filter(|&i| chosen[i].is_none())
            .min_by_key(|&i| (open[i].len(), i));
        let Some(i) = next else {
            let mut pm = PairMap::new();
            for (&(a, b), c) in self.pairs.iter().zip(chosen) {
                let (lo, hi) = c.expect("all pairs assigned");
                pm.insert(CompatibleRelation::new(a, b, lo, hi));
            }
            return Ok(match is_realizable(self.lattice, &pm, self.max_degree)? {
                Some(_) => vec![pm],
                None => vec![],
            });
        };

        let branches: Vec<Vec<PairMap>> = open[i]
            .par_iter()
            .map(|&opt| {
                let mut rows = rows.to_vec();
                rows.push(self.row(self.pairs[i], opt));
                let mut chosen = chosen.to_vec();
                chosen[i] = Some(opt);
                // forward check every unassigned pair against the extension
                let mut narrowed = Vec::with_capacity(open.len());
                for (j, opts) in open.iter().enumerate() {
                    if chosen[j].is_some() {
                        narrowed.push(Vec::new());
                        continue;
                    }
                    self.count(opts.len() as u64)?;
                    let mut keep = Vec::new();
                    for &o in opts {
                        let mut trial = rows.clone();
                        trial.push(self.row(self.pairs[j], o));
                        if self.separation.holds(&trial)? {
                            keep.push(o);
                        }
                    }
                    if keep.is_empty() {
                        return Ok(Vec::new());
                    }
                    narrowed.push(keep);
                }
                self.run(&rows, &chosen, &narrowed)
            })
            .collect::<Result<_>>()?;
        Ok(branches.into_iter().flatten().collect())
    }
}

/// Finds every realizable relation system of compatible shape.
///
/// Pairs are assigned one at a time, most constrained first, and every
/// remaining option is discarded as soon as it would force two multichains
/// of degree at most `max_degree` to coincide. Complete assignments are
/// then checked with [`is_realizable`]. The discarded options can never be
/// completed to a realizable system, so the result equals the realizable
/// subset of the full candidate space. `budget` caps the number of partial
/// systems tested.
pub fn search_compatible_asls(
    lattice: &IdealLattice,
    max_degree: usize,
    budget: u128,
) -> Result<SearchReport> {
    if max_degree < 2 {
        return Err(Error::PreconditionViolated(format!(
            "max_degree must be at least 2, got {max_degree}"
        )));
    }
    let pairs = lattice.incomparable_pairs();
    let options: Vec<Vec<(PosetIdeal, PosetIdeal)>> = pairs
        .iter()
        .map(|&(a, b)| {
            let (meet, join) = (a.meet(b), a.join(b));
            let lows = lattice.ideals().iter().filter(|x| x.is_below(meet));
            let highs: Vec<_> = lattice.ideals().iter().filter(|x| join.is_below(**x)).collect();
            lows.flat_map(|&lo| highs.iter().map(move |&&hi| (lo, hi)))
                .collect()
        })
        .collect();
    let candidates = options
        .iter()
        .fold(1u128, |c, o| c.saturating_mul(o.len() as u128));

    let search = Backtrack {
        lattice,
        max_degree,
        separation: Separation::new(lattice, max_degree),
        pairs,
        budget,
        explored: AtomicU64::new(0),
    };
    // single relations already rule out options that collide on their own
    let mut open = Vec::with_capacity(options.len());
    for (&pair, opts) in search.pairs.iter().zip(&options) {
        search.count(opts.len() as u64)?;
        let mut keep = Vec::new();
        for &o in opts {
            if search.separation.holds(&[search.row(pair, o)])? {
                keep.push(o);
            }
        }
        open.push(keep);
    }
    let mut pair_maps = if open.iter().any(Vec::is_empty) {
        Vec::new()
    } else {
        search.run(&[], &vec![None; search.pairs.len()], &open)?
    };
    pair_maps.sort();
    pair_maps.dedup();

    Ok(SearchReport {
        pair_maps,
        candidates,
        explored: search.explored.into_inner() as u128,
        exhausted: true,
        max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asl::straightening_relations;
    use crate::lattice::enumerate_ideals;
    use crate::poset::{build_poset, Poset};

    fn v_lattice() -> IdealLattice {
        enumerate_ideals(&build_poset(&["p", "p'", "q"], &[("p", "q"), ("p'", "q")]).unwrap()).unwrap()
    }

    fn lambda_lattice() -> IdealLattice {
        enumerate_ideals(&build_poset(&["q", "p", "p'"], &[("q", "p"), ("q", "p'")]).unwrap()).unwrap()
    }

    fn ideal(l: &IdealLattice, labels: &[&str]) -> PosetIdeal {
        l.ideal(l.poset().subset_from_labels(labels).unwrap()).unwrap()
    }

    fn mat_vec(m: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
        m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn kernel_of_small_systems() {
        let m = vec![vec![1, 1, -1, -1, 0]];
        let k = integer_kernel(m.clone(), 5).unwrap();
        assert_eq!(k.len(), 4);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|&x| x == 0));
        }
        let m = vec![vec![2, 4, 0], vec![0, 3, 6], vec![2, 7, 6]];
        let k = integer_kernel(m.clone(), 3).unwrap();
        assert_eq!(k, vec![vec![4, -2, 1]]);
        assert!(integer_kernel(vec![vec![1, 0], vec![0, 1]], 2).unwrap().is_empty());
    }

    #[test]
    fn canonical_maps_are_realizable() {
        for p in [Poset::antichain(3), Poset::sum_of_chains(&[2, 1])] {
            let l = enumerate_ideals(&p).unwrap();
            for kind in RealizationKind::ALL {
                let pm = straightening_relations(&l, kind);
                assert!(is_realizable(&l, &pm, 3).unwrap().is_some(), "{kind}");
            }
        }
    }

    #[test]
    fn v_poset_maps() {
        let l = v_lattice();
        let (a, b) = (ideal(&l, &["p"]), ideal(&l, &["p'"]));
        for hi in [l.top(), ideal(&l, &["p", "p'"])] {
            let mut pm = PairMap::new();
            pm.insert(CompatibleRelation::new(a, b, l.bottom(), hi));
            let real = is_realizable(&l, &pm, 3).unwrap().expect("realizable");
            let g = |x| real.generator(&l, x).unwrap();
            assert_eq!(g(a) + g(b), g(l.bottom()) + g(hi));
        }
    }

    #[test]
    fn search_examples() {
        let v = v_lattice();
        let r = search_compatible_asls(&v, 3, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.candidates, 2);
        assert!(r.explored >= 2);
        assert_eq!(r.pair_maps.len(), 2);

        let m = lambda_lattice();
        let r = search_compatible_asls(&m, 3, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(r.pair_maps.len(), 2);
        let pair = (ideal(&m, &["q", "p"]), ideal(&m, &["q", "p'"]));
        let mut lows: Vec<_> = r.pair_maps.iter().map(|pm| pm.get(pair.0, pair.1).unwrap()).collect();
        lows.sort();
        assert_eq!(lows, vec![(m.bottom(), m.top()), (ideal(&m, &["q"]), m.top())]);

        let a = enumerate_ideals(&Poset::antichain(2)).unwrap();
        let r = search_compatible_asls(&a, 3, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(r.pair_maps.len(), 1);
    }

    #[test]
    fn budget() {
        let a = enumerate_ideals(&Poset::antichain(3)).unwrap();
        let e = search_compatible_asls(&a, 3, 10).unwrap_err();
        assert!(matches!(search_compatible_asls(&a, 1, 10), Err(Error::PreconditionViolated(_))));
        assert!(matches!(e, Error::BudgetExceeded { .. }));
    }
}
