//! Simplicial homology with rational coefficients.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// A finite simplicial complex given by its facets; every subset of a facet
/// is a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Sorts each facet and removes duplicates. Facets contained in other
    /// facets are harmless and kept.
    pub fn new(vertex_count: usize, facets: Vec<Vec<usize>>) -> Self {
        let set: BTreeSet<Vec<usize>> = facets
            .into_iter()
            .filter(|f| !f.is_empty())
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        SimplicialComplex {
            vertex_count,
            facets: set.into_iter().collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// All nonempty faces grouped by dimension, each group sorted
    /// lexicographically.
    pub fn faces_by_dimension(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for facet in &self.facets {
            let k = facet.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| facet[b])
                    .collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dimension().iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    /// Cone with apex `vertex_count` over this complex.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.vertex_count;
        let facets = if self.facets.is_empty() {
            vec![vec![apex]]
        } else {
            self.facets
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    g.push(apex);
                    g
                })
                .collect()
        };
        SimplicialComplex::new(self.vertex_count + 1, facets)
    }
}

/// Betti numbers `b_0, .., b_d` over `Q`. Empty for the empty complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BettiVector(Vec<usize>);

impl BettiVector {
    pub fn new(numbers: Vec<usize>) -> Self {
        BettiVector(numbers)
    }

    pub fn numbers(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.0)
    }

    /// Reduced Betti numbers; for the empty complex this is `[1]` placed in
    /// degree -1, reported here as an empty vector plus `is_empty`.
    pub fn reduced(&self) -> Vec<usize> {
        let mut r = self.0.clone();
        if let Some(b0) = r.first_mut() {
            *b0 -= 1;
        }
        r
    }

    pub fn is_empty_complex(&self) -> bool {
        self.0.is_empty()
    }

    /// Homology of the `m`-sphere; `m = -1` is the empty complex.
    pub fn matches_sphere(&self, m: isize) -> bool {
        if m < 0 {
            return self.is_empty_complex();
        }
        let m = m as usize;
        !self.is_empty_complex()
            && self
                .reduced()
                .iter()
                .enumerate()
                .all(|(i, &b)| b == usize::from(i == m))
            && self.0.len() > m
    }

    /// Homology of a point: connected and acyclic.
    pub fn is_acyclic(&self) -> bool {
        !self.is_empty_complex() && self.reduced().iter().all(|&b| b == 0)
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

pub fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Euler characteristic of a cell complex from the dimensions of its cells.
pub fn euler_characteristic(cell_dims: &[usize]) -> i64 {
    cell_dims
        .iter()
        .map(|&d| if d % 2 == 0 { 1 } else { -1 })
        .sum()
}

type SparseColumn = Vec<(usize, BigInt)>;

/// Rational Betti numbers from the ranks of the simplicial boundary maps.
pub fn betti(complex: &SimplicialComplex) -> BettiVector {
    let faces = complex.faces_by_dimension();
    if faces.is_empty() {
        return BettiVector(Vec::new());
    }
    let top = faces.len() - 1;
    // ranks[k] = rank of ∂_k : C_k -> C_{k-1}; ∂_0 = 0.
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<&[usize], usize> = faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let columns: Vec<SparseColumn> = faces[k]
            .iter()
            .map(|simplex| boundary_column(simplex, &index))
            .collect();
        ranks[k] = column_rank(columns);
    }
    let numbers = (0..=top)
        .map(|k| faces[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    BettiVector(numbers)
}

fn boundary_column(simplex: &[usize], index: &HashMap<&[usize], usize>) -> SparseColumn {
    let mut col: SparseColumn = (0..simplex.len())
        .map(|drop| {
            let face: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &v)| v)
                .collect();
            let sign = if drop % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            (index[face.as_slice()], sign)
        })
        .collect();
    col.sort_unstable_by_key(|(r, _)| *r);
    col
}

/// Rank over `Q` of a sparse integer matrix given by columns, by
/// fraction-free column reduction on the lowest nonzero row.
pub fn column_rank(columns: Vec<SparseColumn>) -> usize {
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<SparseColumn> = Vec::new();
    for mut col in columns {
        while let Some((low, coeff)) = col.last().cloned() {
            let Some(&owner) = pivot_owner.get(&low) else {
                pivot_owner.insert(low, reduced.len());
                reduced.push(col);
                break;
            };
            let pivot = &reduced[owner];
            let pivot_coeff = &pivot.last().expect("stored columns are nonzero").1;
            col = combine(&col, pivot_coeff, pivot, &coeff);
        }
    }
    reduced.len()
}

/// `a·x - b·y` for sparse columns, divided by the gcd of its entries.
fn combine(x: &SparseColumn, a: &BigInt, y: &SparseColumn, b: &BigInt) -> SparseColumn {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (row, value) = if take_x {
            i += 1;
            (x[i - 1].0, a * &x[i - 1].1)
        } else if take_y {
            j += 1;
            (y[j - 1].0, -(b * &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, a * &x[i - 1].1 - b * &y[j - 1].1)
        };
        if !value.is_zero() {
            out.push((row, value));
        }
    }
    let g = out
        .iter()
        .fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in out.iter_mut() {
            *v /= &g;
        }
    }
    if let Some((_, v)) = out.last() {
        if v.is_negative() {
            for (_, v) in out.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    out
}
