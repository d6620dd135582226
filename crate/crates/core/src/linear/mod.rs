//! Exact rational linear algebra over `Q^E`.

mod feasibility;
mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use feasibility::{sign_feasible, FeasibilityResult, SignPattern};
pub use simplex::{phase_one, PhaseOne};

use crate::error::{Error, Result};
use crate::sets::ElementSet;

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Converts an integer matrix literal, mostly for tests and examples.
pub fn int_matrix<const N: usize>(rows: &[[i64; N]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| rational(x)).collect())
        .collect()
}

fn check_width(rows: &[Vec<Rational>], width: usize) -> Result<()> {
    for (row, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(Error::RaggedRow {
                row,
                expected: width,
                found: r.len(),
            });
        }
    }
    Ok(())
}

/// Reduced row-echelon form with lowest-index pivoting. Zero rows are
/// dropped; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, width: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn matrix_rank(rows: &[Vec<Rational>], width: usize) -> usize {
    rref(rows.to_vec(), width).1.len()
}

/// Basis of the null space of `rows` (as vectors of length `width`), one
/// vector per free column, not yet echelonized.
fn null_space(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows.to_vec(), width);
    let mut is_pivot = vec![false; width];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..width).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); width];
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A linear subspace `V ⊆ Q^E`, identified by its reduced row-echelon basis.
///
/// Two `Subspace` values compare equal exactly when they describe the same
/// subspace of the same ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ground: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The span of `rows` inside `Q^ground`.
    pub fn span(ground: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        check_width(&rows, ground)?;
        let (basis, pivots) = rref(rows, ground);
        Ok(Subspace {
            ground,
            basis,
            pivots,
        })
    }

    pub fn full(ground: usize) -> Self {
        let rows = (0..ground)
            .map(|i| {
                let mut v = vec![Rational::zero(); ground];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace {
            ground,
            basis: rows,
            pivots: (0..ground).collect(),
        }
    }

    pub fn zero(ground: usize) -> Self {
        Subspace {
            ground,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ground {
            return false;
        }
        // In RREF, v is in the span iff v equals the combination read off
        // from its pivot coordinates.
        let mut residual = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = residual[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(row) {
                *x -= &c * b;
            }
        }
        residual.iter().all(Zero::is_zero)
    }

    /// Linear combination `Σ coeffs[k] · basis[k]`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(coeffs.len(), self.dim());
        let mut v = vec![Rational::zero(); self.ground];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in v.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        v
    }

    /// `π_G(V)`: delete the coordinates outside `keep` and re-echelonize.
    /// The result lives in `Q^|keep|`, coordinates renumbered in order.
    pub fn project(&self, keep: ElementSet) -> Subspace {
        let cols: Vec<usize> = keep.iter().filter(|&i| i < self.ground).collect();
        let rows = self
            .basis
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        Subspace::span(cols.len(), rows).expect("projected rows share a width")
    }

    /// `{v ∈ V : v_i = 0 for i ∈ zeros}`, still inside `Q^E`.
    pub fn vanish(&self, zeros: ElementSet) -> Subspace {
        let d = self.dim();
        let constraints: Vec<Vec<Rational>> = zeros
            .iter()
            .filter(|&i| i < self.ground)
            .map(|i| self.basis.iter().map(|r| r[i].clone()).collect())
            .collect();
        let coeffs = null_space(&constraints, d);
        let rows = coeffs.iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.ground, rows).expect("combinations have ground width")
    }

    /// `V^⊥` with respect to the standard pairing.
    pub fn orthogonal_complement(&self) -> Subspace {
        let rows = null_space(&self.basis, self.ground);
        Subspace::span(self.ground, rows).expect("null space vectors have ground width")
    }

    /// Image of `V` under negating the coordinates in `flip`.
    pub fn reorient(&self, flip: ElementSet) -> Subspace {
        let rows = self
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(i, x)| if flip.contains(i) { -x.clone() } else { x.clone() })
                    .collect()
            })
            .collect();
        Subspace::span(self.ground, rows).expect("same width")
    }

    /// Coordinates `i` with `π_i(V) = 0`.
    pub fn loops(&self) -> ElementSet {
        (0..self.ground)
            .filter(|&i| self.basis.iter().all(|r| r[i].is_zero()))
            .collect()
    }
}

/// The null space of an equation matrix with `ground` columns.
///
/// `ground` is taken from the rows when there are any; a zero-row system
/// yields the whole space.
pub fn kernel_basis(equations: &[Vec<Rational>], ground: usize) -> Result<Subspace> {
    check_width(equations, ground)?;
    Subspace::span(ground, null_space(equations, ground))
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn sign_of_rational(x: &Rational) -> crate::sign::Sign {
    if x.is_positive() {
        crate::sign::Sign::Positive
    } else if x.is_negative() {
        crate::sign::Sign::Negative
    } else {
        crate::sign::Sign::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect()
    }

    fn kerx() -> Subspace {
        kernel_basis(&q(&[&[1, 1, -1]]), 3).unwrap()
    }

    #[test]
    fn kernel_of_the_five_coordinate_example() {
        let v = kernel_basis(&q(&[&[1, 1, -1, 0, 0], &[0, 0, 1, -1, -1]]), 5).unwrap();
        assert_eq!(v.dim(), 3);
        for row in v.basis() {
            assert!(dot(row, &q(&[&[1, 1, -1, 0, 0]])[0]).is_zero());
        }
    }

    #[test]
    fn kernel_of_zero_row_is_everything() {
        let v = kernel_basis(&q(&[&[0, 0, 0]]), 3).unwrap();
        assert_eq!(v, Subspace::full(3));
        assert_eq!(kernel_basis(&q(&[&[1, -1, -1, -1]]), 4).unwrap().dim(), 3);
    }

    #[test]
    fn ragged_input_is_rejected() {
        let err = kernel_basis(&q(&[&[1, 2], &[1]]), 2).unwrap_err();
        assert!(matches!(err, Error::RaggedRow { row: 1, .. }));
    }

    #[test]
    fn projection_examples() {
        let v = kerx();
        assert_eq!(v.project([0, 1].into_iter().collect()), Subspace::full(2));
        assert_eq!(v.project(ElementSet::singleton(2)), Subspace::full(1));
        assert_eq!(v.project(ElementSet::full(3)), v);
    }

    #[test]
    fn vanishing_examples() {
        let v = kerx();
        let w = v.vanish(ElementSet::singleton(0));
        assert_eq!(w, Subspace::span(3, q(&[&[0, 1, 1]])).unwrap());
        assert_eq!(v.vanish(ElementSet::EMPTY), v);
        assert_eq!(v.vanish([0, 1].into_iter().collect()).dim(), 0);
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(3, q(&[&[-1, 1, 0], &[1, 0, 1]])).unwrap();
        let b = Subspace::span(3, q(&[&[0, 1, 1], &[2, 1, 3], &[1, 1, 2]])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, kerx());
    }

    #[test]
    fn complement_and_reorientation() {
        let v = kerx();
        let perp = v.orthogonal_complement();
        assert_eq!(perp, Subspace::span(3, q(&[&[1, 1, -1]])).unwrap());
        let flipped = v.reorient(ElementSet::singleton(2));
        assert_eq!(flipped, kernel_basis(&q(&[&[1, 1, 1]]), 3).unwrap());
    }

    #[test]
    fn loops_are_dead_coordinates() {
        let v = Subspace::span(3, q(&[&[1, 0, 1]])).unwrap();
        assert_eq!(v.loops(), ElementSet::singleton(1));
    }
}
