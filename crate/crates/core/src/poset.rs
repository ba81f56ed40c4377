//! Finite posets over at most 64 elements.
//!
//! Elements carry string labels but every computation runs on integer
//! indices. The indexing is always a linear extension of the order:
//! `p_i < p_j` implies `i < j`. It is produced by a stable topological sort
//! that prefers the smallest input position among the available minimal
//! elements, so the same input always yields the same indexing.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_ELEMENTS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `down[j]` holds every `i` with `p_i <= p_j`.
    down: Vec<Subset>,
    /// `up[i]` holds every `j` with `p_i <= p_j`.
    up: Vec<Subset>,
    lower_covers: Vec<Subset>,
    upper_covers: Vec<Subset>,
}

/// A chain listed in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_subset(&self) -> Subset {
        self.0.iter().copied().collect()
    }
}

/// On-disk poset description: element labels plus cover pairs `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<Poset> {
        build_poset(&self.elements, &self.covers)
    }
}

/// Builds a poset from labels and (not necessarily reduced) cover pairs.
pub fn build_poset<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Poset> {
    let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
    let mut position = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if position.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    let lookup = |s: &S| {
        position
            .get(s.as_ref())
            .copied()
            .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_owned()))
    };
    let pairs = covers
        .iter()
        .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Poset::from_index_relations(labels, &pairs)
}

impl Poset {
    /// Builds a poset from relations `(i, j)` meaning `p_i < p_j`, where the
    /// indices refer to positions in `labels`. The result is reindexed by the
    /// stable linear extension.
    pub fn from_index_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded(format!(
                "poset has {n} elements, at most {MAX_ELEMENTS} supported"
            )));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::UnknownLabel(format!("index {}", a.max(b))));
            }
            if a == b {
                return Err(Error::CycleDetected(labels[a].clone()));
            }
            succ[a].push(b);
            indegree[b] += 1;
        }

        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(i)) = heap.pop() {
            order.push(i);
            for &j in &succ[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    heap.push(Reverse(j));
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(labels[stuck].clone()));
        }

        let mut new_index = vec![0; n];
        for (pos, &old) in order.iter().enumerate() {
            new_index[old] = pos;
        }
        let mut preds = vec![Subset::EMPTY; n];
        for &(a, b) in relations {
            preds[new_index[b]] = preds[new_index[b]].with(new_index[a]);
        }
        let new_labels = order.iter().map(|&old| labels[old].clone()).collect();
        let mut down = vec![Subset::EMPTY; n];
        for j in 0..n {
            down[j] = preds[j]
                .iter()
                .fold(Subset::singleton(j), |acc, i| acc.union(down[i]));
        }
        Ok(Self::from_down_sets(new_labels, down))
    }

    /// Assembles a poset from closed down-sets whose indexing is already a
    /// linear extension. Callers guarantee validity.
    pub(crate) fn from_down_sets(labels: Vec<String>, down: Vec<Subset>) -> Self {
        let n = labels.len();
        let mut up = vec![Subset::EMPTY; n];
        for (j, d) in down.iter().enumerate() {
            for i in d.iter() {
                up[i] = up[i].with(j);
            }
        }
        let mut lower_covers = vec![Subset::EMPTY; n];
        let mut upper_covers = vec![Subset::EMPTY; n];
        for j in 0..n {
            let strict = down[j].without(j);
            let below_others = strict
                .iter()
                .fold(Subset::EMPTY, |acc, k| acc.union(down[k].without(k)));
            lower_covers[j] = strict.difference(below_others);
            for i in lower_covers[j].iter() {
                upper_covers[i] = upper_covers[i].with(j);
            }
        }
        Poset {
            labels,
            down,
            up,
            lower_covers,
            upper_covers,
        }
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_index_relations(labels, &rel).expect("chain is a valid poset")
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        Self::from_index_relations(labels, &[]).expect("antichain is a valid poset")
    }

    /// Disjoint union of chains with the given lengths.
    pub fn sum_of_chains(lengths: &[usize]) -> Self {
        let mut labels = Vec::new();
        let mut rel = Vec::new();
        for (c, &len) in lengths.iter().enumerate() {
            for k in 0..len {
                if k > 0 {
                    rel.push((labels.len() - 1, labels.len()));
                }
                labels.push(format!("{}{}", (b'a' + (c % 26) as u8) as char, k));
            }
        }
        Self::from_index_relations(labels, &rel).expect("sum of chains is a valid poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.len())
    }

    /// `p_i <= p_j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    /// `p_i < p_j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    /// Elements `<= p_i`, including `i`.
    pub fn down_set(&self, i: usize) -> Subset {
        self.down[i]
    }

    /// Elements `>= p_i`, including `i`.
    pub fn up_set(&self, i: usize) -> Subset {
        self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> Subset {
        self.lower_covers[i]
    }

    pub fn upper_covers(&self, i: usize) -> Subset {
        self.upper_covers[i]
    }

    /// Cover pairs `(i, j)`, `p_j` covering `p_i`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|j| self.lower_covers[j].iter().map(move |i| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn down_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn is_down_closed(&self, s: Subset) -> bool {
        s.is_subset(self.ground()) && s.iter().all(|j| self.down[j].is_subset(s))
    }

    pub fn is_up_closed(&self, s: Subset) -> bool {
        s.is_subset(self.ground()) && s.iter().all(|i| self.up[i].is_subset(s))
    }

    /// Maximal elements of `s`.
    pub fn maximal_in(&self, s: Subset) -> Subset {
        s.iter()
            .filter(|&i| self.up[i].intersection(s) == Subset::singleton(i))
            .collect()
    }

    /// Minimal elements of `s`.
    pub fn minimal_in(&self, s: Subset) -> Subset {
        s.iter()
            .filter(|&j| self.down[j].intersection(s) == Subset::singleton(j))
            .collect()
    }

    /// First comparable pair inside `s`, if any.
    pub fn comparable_pair_in(&self, s: Subset) -> Option<(usize, usize)> {
        s.iter().find_map(|j| {
            self.down[j]
                .without(j)
                .intersection(s)
                .iter()
                .next()
                .map(|i| (i, j))
        })
    }

    pub fn is_antichain(&self, s: Subset) -> bool {
        self.comparable_pair_in(s).is_none()
    }

    /// The subposet induced on `keep`, preserving relative index order.
    pub fn induced(&self, keep: Subset) -> Poset {
        let kept: Vec<usize> = keep.iter().collect();
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let down = kept
            .iter()
            .map(|&j| {
                kept.iter()
                    .enumerate()
                    .filter(|&(_, &i)| self.le(i, j))
                    .map(|(pos, _)| pos)
                    .collect()
            })
            .collect();
        Poset::from_down_sets(labels, down)
    }

    /// The dual poset `P*`, with the same labels and reversed order.
    pub fn dual(&self) -> Poset {
        let rel: Vec<_> = self.covers().into_iter().map(|(i, j)| (j, i)).collect();
        Poset::from_index_relations(self.labels.clone(), &rel).expect("dual of a poset is a poset")
    }

    /// Connected components of the comparability graph, each as a subset,
    /// ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Subset> {
        let mut seen = Subset::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Subset::singleton(start);
            loop {
                let grown = comp
                    .iter()
                    .fold(comp, |acc, i| acc.union(self.down[i]).union(self.up[i]));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Whether every connected component is totally ordered.
    pub fn is_direct_sum_of_chains(&self) -> bool {
        self.connected_components().into_iter().all(|c| {
            c.iter()
                .all(|i| self.down[i].union(self.up[i]).intersection(c) == c)
        })
    }

    /// All maximal chains, each ascending, in lexicographic order.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for m in self.minimal_in(self.ground()) {
            stack.push(m);
            self.extend_chains(&mut stack, &mut out);
            stack.pop();
        }
        out.sort();
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Chain>) {
        let top = *stack.last().expect("non-empty chain prefix");
        let ups = self.upper_covers[top];
        if ups.is_empty() {
            out.push(Chain(stack.clone()));
            return;
        }
        for u in ups {
            stack.push(u);
            self.extend_chains(stack, out);
            stack.pop();
        }
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.labels.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
                .collect(),
        }
    }

    /// Labels of the members of `s`, in index order.
    pub fn subset_labels(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Inverse of [`Poset::subset_labels`].
    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_owned()))
            })
            .collect()
    }

    /// Hasse diagram in DOT, drawn bottom to top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label={}];", dot_quote(l));
        }
        for (i, j) in self.covers() {
            let _ = writeln!(s, "  n{i} -> n{j};");
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
