//! Regular CW complexes represented by their face posets.

use std::fmt::Display;

use rayon::prelude::*;

use crate::error::Result;
use crate::homology::{betti, euler_characteristic, BettiVector, SimplicialComplex};
use crate::poset::GradedPoset;
use crate::report::Report;

/// A cell label that knows its own dimension.
pub trait Cell: Clone + Ord + Display + Send + Sync {
    fn dim(&self) -> usize;
}

/// A finite cell complex: cells ordered by "lies in the closure of".
///
/// Cells are stored sorted by `(dim, label)`, which fixes every index and
/// makes all derived output deterministic.
#[derive(Clone, Debug)]
pub struct CellComplex<C> {
    poset: GradedPoset<C>,
}

impl<C: Cell> CellComplex<C> {
    pub fn from_cells(mut cells: Vec<C>, leq: impl Fn(&C, &C) -> bool) -> Result<Self> {
        cells.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        cells.dedup();
        Ok(CellComplex {
            poset: GradedPoset::from_order(cells, leq)?,
        })
    }

    /// The cells with indices in `keep`, with the induced closure order.
    pub fn induced(&self, keep: &[usize]) -> CellComplex<C> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        CellComplex {
            poset: self.poset.induced(&keep),
        }
    }

    pub fn induced_by(&self, keep: impl Fn(&C) -> bool) -> CellComplex<C> {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(self.cell(i))).collect();
        self.induced(&idx)
    }

    pub fn poset(&self) -> &GradedPoset<C> {
        &self.poset
    }

    pub fn cells(&self) -> &[C] {
        self.poset.labels()
    }

    pub fn cell(&self, i: usize) -> &C {
        self.poset.label(i)
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn index_of(&self, cell: &C) -> Option<usize> {
        self.cells().binary_search_by(|c| c.dim().cmp(&cell.dim()).then_with(|| c.cmp(cell))).ok()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells().iter().map(Cell::dim).max()
    }

    /// Number of cells in each dimension `0..=dim`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in self.cells() {
            counts[c.dim()] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        let dims: Vec<usize> = self.cells().iter().map(Cell::dim).collect();
        euler_characteristic(&dims)
    }

    /// Indices of maximal cells.
    pub fn facets(&self) -> Vec<usize> {
        self.poset.maximal_elements()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|&f| Some(self.cell(f).dim()) == d)
    }

    /// Whether `keep` is closed under taking faces.
    pub fn is_subcomplex(&self, keep: &[usize]) -> bool {
        let mut mark = vec![false; self.len()];
        for &i in keep {
            mark[i] = true;
        }
        keep.iter()
            .all(|&i| self.poset.strict_lower_set(i).into_iter().all(|j| mark[j]))
    }

    /// Order complex (barycentric subdivision) of the whole complex.
    pub fn order_complex(&self) -> SimplicialComplex {
        self.poset.order_complex()
    }

    pub fn betti(&self) -> BettiVector {
        betti(&self.order_complex())
    }

    /// Betti numbers of the boundary of cell `i`, computed from the order
    /// complex of its strict lower set.
    pub fn boundary_betti(&self, i: usize) -> BettiVector {
        let lower = self.poset.strict_lower_set(i);
        betti(&self.poset.order_complex_of(&lower))
    }

    /// Every cover relation drops the dimension by exactly one and the
    /// closure order agrees with cell dimensions.
    pub fn dimensions_consistent(&self) -> bool {
        (0..self.len()).all(|i| self.poset.rank(i) == self.cell(i).dim())
            && self
                .poset
                .covers()
                .iter()
                .all(|&(a, b)| self.cell(b).dim() == self.cell(a).dim() + 1)
    }

    /// For each cell of dimension `k ≥ 1`, checks that its boundary has the
    /// homology of `S^(k-1)`.
    pub fn regularity(&self, check: &str) -> Report {
        let records: Vec<(String, bool, BettiVector)> = (0..self.len())
            .into_par_iter()
            .filter(|&i| self.cell(i).dim() >= 1)
            .map(|i| {
                let k = self.cell(i).dim() as isize;
                let b = self.boundary_betti(i);
                (self.cell(i).to_string(), b.matches_sphere(k - 1), b)
            })
            .collect();
        let mut report = Report::new();
        for (cell, ok, b) in records {
            report.push(check, Some(cell), ok, (!ok).then(|| format!("boundary Betti {b}")));
        }
        report
    }

    /// Every codimension-one cell of a pure `d`-complex is a face of exactly
    /// two `d`-cells.
    pub fn pairing(&self, check: &str) -> Report {
        let mut report = Report::new();
        let Some(d) = self.dim() else {
            return report;
        };
        if d == 0 {
            return report;
        }
        for i in 0..self.len() {
            if self.cell(i).dim() != d - 1 {
                continue;
            }
            let above = self.poset.up_covers(i).iter().filter(|&&j| self.cell(j).dim() == d).count();
            report.push(
                check,
                Some(self.cell(i).to_string()),
                above == 2,
                (above != 2).then(|| format!("face of {above} top cells")),
            );
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
    struct Face(Vec<usize>);

    impl Display for Face {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            write!(f, "{:?}", self.0)
        }
    }

    impl Cell for Face {
        fn dim(&self) -> usize {
            self.0.len() - 1
        }
    }

    fn simplex_faces(n: usize) -> Vec<Face> {
        (1u32..(1 << n))
            .map(|m| Face((0..n).filter(|b| m >> b & 1 == 1).collect()))
            .collect()
    }

    fn subset(a: &Face, b: &Face) -> bool {
        a.0.iter().all(|x| b.0.contains(x))
    }

    #[test]
    fn simplex_is_regular_and_contractible() {
        let c = CellComplex::from_cells(simplex_faces(4), subset).unwrap();
        assert_eq!(c.counts_by_dim(), vec![4, 6, 4, 1]);
        assert!(c.regularity("regular").passed());
        assert!(c.betti().is_acyclic());
        assert!(c.dimensions_consistent());
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn boundary_of_tetrahedron_pairs_edges() {
        let faces: Vec<Face> = simplex_faces(4).into_iter().filter(|f| f.0.len() < 4).collect();
        let c = CellComplex::from_cells(faces, subset).unwrap();
        assert!(c.pairing("pairing").all_pass("pairing"));
        assert!(c.betti().matches_sphere(2));
        assert!(c.is_pure());
    }

    #[test]
    fn pinched_edges_fail_pairing() {
        // Three triangles sharing the edge {0,1}.
        let mut faces = Vec::new();
        for apex in 2..5 {
            for f in simplex_faces(3) {
                let relabel: Vec<usize> = f.0.iter().map(|&v| if v == 2 { apex } else { v }).collect();
                faces.push(Face(relabel));
            }
        }
        let c = CellComplex::from_cells(faces, subset).unwrap();
        assert!(!c.pairing("pairing").passed());
    }
}
