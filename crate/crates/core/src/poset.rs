//! Finite posets with cover relations and a rank function.
//!
//! Elements carry opaque labels; all structure is index based so the same
//! machinery serves flat lattices, covector posets and cell posets.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;

#[derive(Clone, Debug)]
pub struct GradedPoset<L> {
    labels: Vec<L>,
    /// Strict down-sets.
    below: Vec<FixedBitSet>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Vec<usize>,
}

/// An interval `[lower, upper]` of a source poset, by element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub lower: usize,
    pub upper: usize,
}

/// Label of a poset with an adjoined maximum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Adjoined<L> {
    Element(L),
    Top,
}

impl<L: Display> Display for Adjoined<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Adjoined::Element(l) => l.fmt(f),
            Adjoined::Top => f.write_str("1̂"),
        }
    }
}

/// A length-two interval whose size is not four.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThinnessViolation {
    pub lower: usize,
    pub upper: usize,
    pub size: usize,
}

impl<L: Clone> GradedPoset<L> {
    /// Builds the poset on `labels` whose order is the transitive closure of
    /// `leq(i, j)` on indices. Fails if the relation has a cycle.
    pub fn from_relation(labels: Vec<L>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (j, row) in below.iter_mut().enumerate() {
            for i in 0..n {
                if i != j && leq(i, j) {
                    row.insert(i);
                }
            }
        }
        // Transitive closure; a no-op for genuine partial orders.
        loop {
            let mut changed = false;
            for j in 0..n {
                let mut acc = below[j].clone();
                for i in below[j].ones() {
                    acc.union_with(&below[i]);
                }
                if acc != below[j] {
                    below[j] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for (j, b) in below.iter().enumerate() {
            if b.contains(j) {
                return Err(Error::Cycle(j));
            }
        }
        Ok(Self::from_strict_downsets(labels, below))
    }

    /// Builds the poset from a label predicate.
    pub fn from_order(labels: Vec<L>, leq: impl Fn(&L, &L) -> bool) -> Result<Self> {
        let copy = labels.clone();
        Self::from_relation(labels, |i, j| leq(&copy[i], &copy[j]))
    }

    fn from_strict_downsets(labels: Vec<L>, below: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for j in 0..n {
            let mut covered = below[j].clone();
            for i in below[j].ones() {
                covered.difference_with(&below[i]);
            }
            for i in covered.ones() {
                down[j].push(i);
                up[i].push(j);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| below[j].count_ones(..));
        let mut rank = vec![0usize; n];
        for &j in &order {
            rank[j] = down[j].iter().map(|&i| rank[i] + 1).max().unwrap_or(0);
        }
        GradedPoset {
            labels,
            below,
            up,
            down,
            rank,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    /// Length of the longest chain ending at `i`.
    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn up_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn down_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    /// All cover pairs `(lower, upper)` in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| self.up[i].iter().map(move |&j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn strict_lower_set(&self, i: usize) -> Vec<usize> {
        self.below[i].ones().collect()
    }

    pub fn lower_set(&self, i: usize) -> Vec<usize> {
        let mut v = self.strict_lower_set(i);
        v.push(i);
        v.sort_unstable();
        v
    }

    pub fn strict_downset_bits(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.rank.iter().copied().max()
    }

    /// Every cover raises the rank by exactly one.
    pub fn check_graded(&self) -> Result<()> {
        for (i, j) in self.covers() {
            if self.rank[j] != self.rank[i] + 1 {
                return Err(Error::NotGraded { lower: i, upper: j });
            }
        }
        Ok(())
    }

    pub fn is_graded(&self) -> bool {
        self.check_graded().is_ok()
    }

    /// First length-two interval (in index order) that is not a diamond, or
    /// `None` when the poset is thin.
    pub fn thinness_violation(&self) -> Result<Option<ThinnessViolation>> {
        self.check_graded()?;
        for a in 0..self.len() {
            let mut middle: BTreeMap<usize, usize> = BTreeMap::new();
            for &c in &self.up[a] {
                for &b in &self.up[c] {
                    *middle.entry(b).or_default() += 1;
                }
            }
            if let Some((&b, &count)) = middle.iter().find(|(_, &count)| count != 2) {
                return Ok(Some(ThinnessViolation {
                    lower: a,
                    upper: b,
                    size: count + 2,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_thin(&self) -> Result<bool> {
        Ok(self.thinness_violation()?.is_none())
    }

    pub fn opposite(&self) -> GradedPoset<L> {
        GradedPoset::from_relation(self.labels.clone(), |i, j| self.lt(j, i))
            .expect("reversing a partial order keeps it acyclic")
    }

    /// Induced subposet on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> GradedPoset<L> {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        GradedPoset::from_relation(labels, |a, b| self.lt(keep[a], keep[b]))
            .expect("subposet of a partial order")
    }

    /// Poset of intervals `[x, y]`, ordered by `[x', y'] ≤ [x, y]` iff
    /// `x ≤ x' ≤ y' ≤ y`.
    pub fn interval_poset(&self) -> GradedPoset<Interval> {
        let mut intervals = Vec::new();
        for lower in 0..self.len() {
            for upper in 0..self.len() {
                if self.leq(lower, upper) {
                    intervals.push(Interval { lower, upper });
                }
            }
        }
        GradedPoset::from_relation(intervals.clone(), |a, b| {
            let (a, b) = (intervals[a], intervals[b]);
            self.leq(b.lower, a.lower) && self.leq(a.upper, b.upper)
        })
        .expect("interval containment is a partial order")
    }

    /// Adds a new maximum above every element.
    pub fn adjoin_top(&self) -> GradedPoset<Adjoined<L>> {
        let n = self.len();
        let mut labels: Vec<Adjoined<L>> =
            self.labels.iter().cloned().map(Adjoined::Element).collect();
        labels.push(Adjoined::Top);
        GradedPoset::from_relation(labels, |i, j| j == n || (i < n && j < n && self.lt(i, j)))
            .expect("adjoining a maximum keeps the order acyclic")
    }

    pub fn map_labels<M: Clone>(&self, f: impl Fn(&L) -> M) -> GradedPoset<M> {
        GradedPoset {
            labels: self.labels.iter().map(f).collect(),
            below: self.below.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            rank: self.rank.clone(),
        }
    }

    pub fn index_of(&self, label: &L) -> Option<usize>
    where
        L: PartialEq,
    {
        self.labels.iter().position(|l| l == label)
    }

    /// Maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for start in self.minimal_elements() {
            self.extend_chains(start, &mut path, &mut out);
        }
        out
    }

    fn extend_chains(&self, at: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(at);
        if self.up[at].is_empty() {
            out.push(path.clone());
        } else {
            for &next in &self.up[at] {
                self.extend_chains(next, path, out);
            }
        }
        path.pop();
    }

    /// Simplicial complex whose faces are the chains of the poset. Vertex
    /// `i` is element `i`.
    pub fn order_complex(&self) -> SimplicialComplex {
        SimplicialComplex::new(self.len(), self.maximal_chains())
    }

    /// Order complex of the induced subposet on `keep`, with vertices
    /// renumbered by position in `keep`.
    pub fn order_complex_of(&self, keep: &[usize]) -> SimplicialComplex {
        self.induced(keep).order_complex()
    }

    /// Hasse diagram in Graphviz syntax; nodes in index order, edges in
    /// cover order, drawn bottom to top.
    pub fn to_dot(&self, name: &str) -> String
    where
        L: Display,
    {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=box];");
        for (i, l) in self.labels.iter().enumerate() {
            let text = l.to_string().replace('"', "'");
            let _ = writeln!(s, "  n{i} [label=\"{text}\", rank_value={}];", self.rank[i]);
        }
        for (i, j) in self.covers() {
            let _ = writeln!(s, "  n{i} -> n{j} [dir=none];");
        }
        s.push_str("}\n");
        s
    }
}
