//! Shellings of regular CW complexes, searched and verified on the face
//! poset.
//!
//! An ordering `(F_1, .., F_m)` of the facets of a pure `d`-complex is a
//! shelling when `∂F_1` is shellable and, for `j > 1`, the intersection
//! `F_j ∩ (F_1 ∪ .. ∪ F_{j-1})` is a pure `(d-1)`-complex and `∂F_j` has a
//! shelling in which the facets of that intersection come first. A
//! 0-complex is shelled by any ordering of its points.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::cell::{Cell, CellComplex};
use crate::error::{Error, Result};

/// Memo key: the facets of a subcomplex and the facets required first.
type SearchKey = (Vec<usize>, Vec<usize>);

struct Shell<'a, C> {
    complex: &'a CellComplex<C>,
    memo: HashMap<SearchKey, Option<Vec<usize>>>,
}

impl<'a, C: Cell> Shell<'a, C> {
    fn new(complex: &'a CellComplex<C>) -> Self {
        Shell {
            complex,
            memo: HashMap::new(),
        }
    }

    fn n(&self) -> usize {
        self.complex.len()
    }

    fn dim(&self, i: usize) -> usize {
        self.complex.cell(i).dim()
    }

    fn closure(&self, i: usize) -> FixedBitSet {
        let mut b = self.complex.poset().strict_downset_bits(i).clone();
        b.grow(self.n());
        b.insert(i);
        b
    }

    fn boundary(&self, i: usize) -> FixedBitSet {
        let mut b = self.complex.poset().strict_downset_bits(i).clone();
        b.grow(self.n());
        b
    }

    fn maximal(&self, cells: &FixedBitSet) -> Vec<usize> {
        let mut dominated = FixedBitSet::with_capacity(self.n());
        for j in cells.ones() {
            dominated.union_with(self.complex.poset().strict_downset_bits(j));
        }
        cells.ones().filter(|&i| !dominated.contains(i)).collect()
    }

    fn is_pure_of_dim(&self, cells: &FixedBitSet, d: usize) -> bool {
        let top = self.maximal(cells);
        !top.is_empty() && top.iter().all(|&i| self.dim(i) == d)
    }

    /// A shelling of the complex generated by `facets` (all of dimension
    /// `d`) in which the facets in `first` precede the others.
    fn search(&mut self, facets: &[usize], d: usize, first: &[usize]) -> Option<Vec<usize>> {
        let key = (facets.to_vec(), first.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = if d == 0 {
            let mut order: Vec<usize> = first.to_vec();
            order.extend(facets.iter().filter(|f| !first.contains(f)));
            Some(order)
        } else {
            let mut order = Vec::with_capacity(facets.len());
            let mut dead = HashSet::new();
            let union = FixedBitSet::with_capacity(self.n());
            if self.extend(facets, d, first, &mut order, union, &mut dead) {
                Some(order)
            } else {
                None
            }
        };
        self.memo.insert(key, result.clone());
        result
    }

    fn extend(
        &mut self,
        facets: &[usize],
        d: usize,
        first: &[usize],
        order: &mut Vec<usize>,
        union: FixedBitSet,
        dead: &mut HashSet<Vec<usize>>,
    ) -> bool {
        if order.len() == facets.len() {
            return true;
        }
        let mut placed = order.clone();
        placed.sort_unstable();
        if dead.contains(&placed) {
            return false;
        }
        let pending_first: Vec<usize> =
            first.iter().copied().filter(|f| !order.contains(f)).collect();
        let candidates: Vec<usize> = if pending_first.is_empty() {
            facets.iter().copied().filter(|f| !order.contains(f)).collect()
        } else {
            pending_first
        };
        for f in candidates {
            if !self.can_attach(f, d, order.is_empty(), &union) {
                continue;
            }
            let mut next_union = union.clone();
            next_union.union_with(&self.closure(f));
            order.push(f);
            if self.extend(facets, d, first, order, next_union, dead) {
                return true;
            }
            order.pop();
        }
        dead.insert(placed);
        false
    }

    fn can_attach(&mut self, f: usize, d: usize, is_first: bool, union: &FixedBitSet) -> bool {
        let boundary = self.boundary(f);
        if !self.is_pure_of_dim(&boundary, d - 1) {
            return false;
        }
        let boundary_facets = self.maximal(&boundary);
        if is_first {
            return self.search(&boundary_facets, d - 1, &[]).is_some();
        }
        let mut meet = self.closure(f);
        meet.intersect_with(union);
        if !self.is_pure_of_dim(&meet, d - 1) {
            return false;
        }
        let required = self.maximal(&meet);
        self.search(&boundary_facets, d - 1, &required).is_some()
    }
}

fn pure_facets<C: Cell>(complex: &CellComplex<C>) -> Result<(Vec<usize>, usize)> {
    let Some(d) = complex.dim() else {
        return Ok((Vec::new(), 0));
    };
    if !complex.is_pure() {
        return Err(Error::NotPure(d));
    }
    Ok((complex.facets(), d))
}

/// Searches facet orders depth first (lowest index first) and returns the
/// first shelling found. Facets listed in `first` are forced to precede all
/// other facets.
pub fn find_shelling<C: Cell>(complex: &CellComplex<C>, first: &[usize]) -> Result<Option<Vec<usize>>> {
    let (facets, d) = pure_facets(complex)?;
    let mut first: Vec<usize> = first.iter().copied().filter(|f| facets.contains(f)).collect();
    first.sort_unstable();
    first.dedup();
    Ok(Shell::new(complex).search(&facets, d, &first))
}

/// Checks the recursive shelling conditions for a given facet order.
pub fn verify_shelling<C: Cell>(complex: &CellComplex<C>, order: &[usize]) -> Result<bool> {
    let (facets, d) = pure_facets(complex)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != facets {
        return Ok(false);
    }
    if d == 0 {
        return Ok(true);
    }
    let mut shell = Shell::new(complex);
    let mut union = FixedBitSet::with_capacity(complex.len());
    for (j, &f) in order.iter().enumerate() {
        if !shell.can_attach(f, d, j == 0, &union) {
            return Ok(false);
        }
        union.union_with(&shell.closure(f));
    }
    Ok(true)
}

/// Property S: for `j < i`, every maximal cell `G` of `F_i ∩ F_j` lies in
/// some `F_k`, `k < i`, with `F_k ∩ F_i` of dimension `d - 1`.
pub fn property_s<C: Cell>(complex: &CellComplex<C>, order: &[usize]) -> bool {
    let Some(d) = complex.dim() else {
        return true;
    };
    if d == 0 {
        return true;
    }
    let shell = Shell::new(complex);
    let closures: Vec<FixedBitSet> = order.iter().map(|&f| shell.closure(f)).collect();
    let meet_dim = |a: &FixedBitSet, b: &FixedBitSet| -> Option<usize> {
        let mut m = a.clone();
        m.intersect_with(b);
        m.ones().map(|c| shell.dim(c)).max()
    };
    for i in 1..order.len() {
        for j in 0..i {
            let mut meet = closures[i].clone();
            meet.intersect_with(&closures[j]);
            for g in shell.maximal(&meet) {
                let ok = (0..i).any(|k| {
                    closures[k].contains(g) && meet_dim(&closures[k], &closures[i]) == Some(d - 1)
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}
