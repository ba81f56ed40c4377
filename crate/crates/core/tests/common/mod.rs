//! Independent oracles shared by the integration tests. Nothing here calls
//! the enumeration or canonical-form code of the library.

#![allow(dead_code)]

use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;
use straighten_core::asl::is_realizable;
use straighten_core::{CompatibleRelation, IdealLattice, PairMap, Poset, PosetIdeal};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All posets on `n` elements up to isomorphism: every transitive relation
/// compatible with the natural order, deduplicated by the minimum relation
/// matrix over all `n!` relabelings.
pub fn naive_posets(n: usize) -> Vec<Poset> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut rel = vec![vec![false; n]; n];
        for (b, &(i, j)) in slots.iter().enumerate() {
            rel[i][j] = mask >> b & 1 == 1;
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k]))
        });
        if !transitive {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut bits = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        bits = bits << 1 | rel[p[i]][p[j]] as u64;
                    }
                }
                bits
            })
            .min()
            .unwrap();
        if seen.insert(key) {
            let pairs: Vec<_> = slots.iter().copied().filter(|&(i, j)| rel[i][j]).collect();
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            out.push(Poset::from_index_relations(labels, &pairs).unwrap());
        }
    }
    out
}

pub fn count_antichains(p: &Poset) -> usize {
    let n = p.len();
    (0u64..1 << n)
        .filter(|&s| {
            (0..n).all(|i| (0..n).all(|j| i == j || s >> i & 1 == 0 || s >> j & 1 == 0 || !p.le(i, j)))
        })
        .count()
}

/// Comparability is transitive exactly for disjoint unions of chains.
pub fn comparability_transitive(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| !(p.comparable(x, y) && p.comparable(y, z)) || p.comparable(x, z)))
    })
}

pub fn partitions(n: usize) -> usize {
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

/// Every relation system of compatible shape, checked one by one.
pub fn brute_force_search(lattice: &IdealLattice, max_degree: usize) -> Vec<PairMap> {
    let pairs = lattice.incomparable_pairs();
    let options: Vec<Vec<(PosetIdeal, PosetIdeal)>> = pairs
        .iter()
        .map(|&(a, b)| {
            let mut v = Vec::new();
            for &lo in lattice.ideals() {
                for &hi in lattice.ideals() {
                    if lo.members().is_subset(a.members().intersection(b.members()))
                        && a.members().union(b.members()).is_subset(hi.members())
                    {
                        v.push((lo, hi));
                    }
                }
            }
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; pairs.len()];
    loop {
        let mut pm = PairMap::new();
        for ((&(a, b), opts), &i) in pairs.iter().zip(&options).zip(&idx) {
            pm.insert(CompatibleRelation::new(a, b, opts[i].0, opts[i].1));
        }
        if is_realizable(lattice, &pm, max_degree).unwrap().is_some() {
            out.push(pm);
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                out.sort();
                return out;
            }
            idx[d] += 1;
            if idx[d] < options[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

pub fn candidate_count(lattice: &IdealLattice) -> u128 {
    lattice
        .incomparable_pairs()
        .iter()
        .map(|&(a, b)| {
            let lo = lattice.ideals().iter().filter(|x| x.members().is_subset(a.members().intersection(b.members()))).count();
            let hi = lattice.ideals().iter().filter(|x| a.members().union(b.members()).is_subset(x.members())).count();
            (lo * hi) as u128
        })
        .product()
}

/// Random poset: a random natural-labeled order, transitively closed, with
/// elements presented in a shuffled input order.
pub fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(0.35), n * n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, shuffle)| poset_from_bits(n, &bits, &shuffle))
}

pub fn poset_from_bits(n: usize, bits: &[bool], shuffle: &[usize]) -> Poset {
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            rel[i][j] = bits[i * n + j];
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    // element i of the order is presented at input position shuffle[i]
    let mut labels = vec![String::new(); n];
    for i in 0..n {
        labels[shuffle[i]] = format!("v{i}");
    }
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| rel[i][j])
        .map(|(i, j)| (shuffle[i], shuffle[j]))
        .collect();
    Poset::from_index_relations(labels, &pairs).unwrap()
}

pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let bits: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(0.35)).collect();
    let mut shuffle: Vec<usize> = (0..n).collect();
    shuffle.shuffle(rng);
    poset_from_bits(n, &bits, &shuffle)
}

// Single-field mutations of a JSON document.

#[derive(Clone, Debug)]
enum Seg {
    Key(String),
    Index(usize),
}

fn sites(v: &Value, path: &mut Vec<Seg>, out: &mut Vec<Vec<Seg>>) {
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                path.push(Seg::Key(k.clone()));
                sites(child, path, out);
                path.pop();
            }
        }
        Value::Array(items) => {
            out.push(path.clone());
            for (i, child) in items.iter().enumerate() {
                path.push(Seg::Index(i));
                sites(child, path, out);
                path.pop();
            }
        }
        _ => out.push(path.clone()),
    }
}

fn at<'a>(v: &'a mut Value, path: &[Seg]) -> &'a mut Value {
    path.iter().fold(v, |v, s| match s {
        Seg::Key(k) => &mut v[k.as_str()],
        Seg::Index(i) => &mut v[*i],
    })
}

fn mutate_site<R: Rng>(target: &mut Value, labels: &[String], rng: &mut R) {
    let other_label = |rng: &mut R, not: Option<&str>| -> String {
        let choices: Vec<&String> = labels.iter().filter(|l| Some(l.as_str()) != not).collect();
        choices.choose(rng).map(|s| (*s).clone()).unwrap_or_else(|| "zz".into())
    };
    match target {
        Value::String(s) if s == "join" => *s = "meet".into(),
        Value::String(s) if s == "meet" => *s = "join".into(),
        Value::String(s) => {
            let new = other_label(rng, Some(s.as_str()));
            *s = new;
        }
        Value::Number(n) => {
            let k = n.as_u64().unwrap();
            *target = Value::from(if k == 0 || rng.gen_bool(0.5) { k + 1 } else { k - 1 });
        }
        Value::Null => *target = Value::String(other_label(rng, None)),
        Value::Bool(b) => *b = !*b,
        Value::Array(items) => {
            let op = rng.gen_range(0..3);
            let len = items.len();
            match op {
                0 if len > 0 => {
                    items.remove(rng.gen_range(0..len));
                }
                1 if len >= 2 => {
                    let i = rng.gen_range(0..len - 1);
                    items.swap(i, i + 1);
                }
                _ => {
                    let labelled = items.iter().all(Value::is_string);
                    if labelled {
                        let present: HashSet<&str> = items.iter().filter_map(Value::as_str).collect();
                        let missing: Vec<&String> =
                            labels.iter().filter(|l| !present.contains(l.as_str())).collect();
                        let new = missing
                            .choose(rng)
                            .map(|s| (*s).clone())
                            .unwrap_or_else(|| "zz".into());
                        items.insert(rng.gen_range(0..=len), Value::String(new));
                    } else if len > 0 {
                        let i = rng.gen_range(0..len);
                        items.insert(i, items[i].clone());
                    } else {
                        items.push(Value::Null);
                    }
                }
            }
        }
        Value::Object(_) => unreachable!("objects are not mutation sites"),
    }
}

/// Applies random single-field mutations to a JSON document in place.
pub struct Mutator {
    doc: Value,
    sites: Vec<Vec<Seg>>,
}

impl Mutator {
    pub fn new(doc: Value) -> Self {
        let mut sites_found = Vec::new();
        sites(&doc, &mut Vec::new(), &mut sites_found);
        Mutator { doc, sites: sites_found }
    }

    /// Changes one field, passes the mutated document to `check`, then
    /// restores the field.
    pub fn with_mutation<R: Rng, T>(&mut self, labels: &[String], rng: &mut R, check: impl FnOnce(&Value) -> T) -> T {
        loop {
            let path = self.sites.choose(rng).unwrap().clone();
            let original = at(&mut self.doc, &path).clone();
            mutate_site(at(&mut self.doc, &path), labels, rng);
            if *at(&mut self.doc, &path) == original {
                continue;
            }
            let out = check(&self.doc);
            *at(&mut self.doc, &path) = original;
            return out;
        }
    }
}
