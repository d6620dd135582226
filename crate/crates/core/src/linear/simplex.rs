//! Phase-one simplex over the rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Outcome of a feasibility search for `{x ≥ 0 : A x = b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseOne {
    /// A nonnegative solution.
    Feasible(Vec<Rational>),
    /// A Farkas vector `y` with `yᵀA ≤ 0` componentwise and `yᵀb > 0`.
    Infeasible(Vec<Rational>),
}

/// Decides feasibility of `A x = b, x ≥ 0` exactly.
///
/// Artificial variables start in the basis and their sum is minimized.
/// Entering and leaving variables are chosen by lowest index, so the run is
/// deterministic and cannot cycle. On infeasibility the simplex multipliers
/// of the final basis are returned as the certificate.
pub fn phase_one(a: &[Vec<Rational>], b: &[Rational]) -> PhaseOne {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    debug_assert_eq!(b.len(), m);
    let width = n + m + 1;
    let rhs = n + m;

    let mut flip = vec![false; m];
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        flip[i] = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = if flip[i] { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Rational::one();
        row[rhs] = b[i].abs();
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective; the last entry holds -w.
    let mut obj = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][rhs] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (row, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut tab, &mut obj, row, enter);
        basis[row] = enter;
    }

    if obj[rhs].is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &j) in basis.iter().enumerate() {
            if j < n {
                x[j] = tab[i][rhs].clone();
            }
        }
        PhaseOne::Feasible(x)
    } else {
        let y = (0..m)
            .map(|i| {
                let yi = Rational::one() - &obj[n + i];
                if flip[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        PhaseOne::Infeasible(y)
    }
}

fn pivot(tab: &mut [Vec<Rational>], obj: &mut [Rational], row: usize, col: usize) {
    let inv = tab[row][col].recip();
    for x in tab[row].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = tab[row].clone();
    let eliminate = |target: &mut [Rational]| {
        let factor = target[col].clone();
        if factor.is_zero() {
            return;
        }
        for (x, p) in target.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &factor * p;
            }
        }
    };
    for (i, r) in tab.iter_mut().enumerate() {
        if i != row {
            eliminate(r);
        }
    }
    eliminate(obj);
}
