//! Exact decision procedure for "does `V` contain a vector with sign
//! pattern `p`?".

use num_traits::{Signed, Zero};

use super::simplex::{phase_one, PhaseOne};
use super::{dot, sign_of_rational, Rational, Subspace};
use crate::error::{Error, Result};
use crate::sign::{Sign, SignVector};

/// Target signs, one per coordinate.
pub type SignPattern = SignVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityResult {
    /// A vector of `V` whose sign vector is exactly the pattern.
    Witness(Vec<Rational>),
    /// Coefficients `α` of a functional `f = Σ αᵢxᵢ` vanishing on `V` with
    /// `σᵢαᵢ ≥ 0` on the nonzero coordinates of the pattern (signs `σᵢ`) and
    /// at least one of those strictly positive. Such an `f` is strictly
    /// positive on every vector with the pattern, so none lies in `V`.
    Certificate(Vec<Rational>),
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Witness(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityResult::Witness(v) => Some(v),
            FeasibilityResult::Certificate(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityResult::Certificate(a) => Some(a),
            FeasibilityResult::Witness(_) => None,
        }
    }

    /// Re-checks the witness or the Farkas conditions from scratch.
    pub fn verify(&self, v: &Subspace, pattern: &SignPattern) -> bool {
        match self {
            FeasibilityResult::Witness(w) => {
                v.contains(w)
                    && w.iter()
                        .enumerate()
                        .all(|(i, x)| sign_of_rational(x) == pattern.get(i))
            }
            FeasibilityResult::Certificate(alpha) => {
                if alpha.len() != v.ground_size() {
                    return false;
                }
                let vanishes = v.basis().iter().all(|row| dot(row, alpha).is_zero());
                let mut strict = false;
                for i in pattern.support().iter() {
                    let oriented = match pattern.get(i) {
                        Sign::Positive => alpha[i].clone(),
                        _ => -alpha[i].clone(),
                    };
                    if oriented.is_negative() {
                        return false;
                    }
                    strict |= oriented.is_positive();
                }
                vanishes && strict
            }
        }
    }
}

/// Decides whether some `v ∈ V` has sign vector exactly `pattern`.
///
/// `V` is a cone, so a strict sign `σᵢvᵢ > 0` may be replaced by
/// `σᵢvᵢ ≥ 1`. Writing `v = cB` for the echelon basis `B` and splitting
/// `c = c⁺ - c⁻` gives the standard-form system
///
/// ```text
///   B_z · c           = 0   for zero coordinates z
///   σᵢ B_i · c - sᵢ   = 1   for nonzero coordinates i
///   c⁺, c⁻, s ≥ 0
/// ```
///
/// which phase-one simplex either solves or refutes with multipliers that
/// are exactly the certificate coefficients.
pub fn sign_feasible(v: &Subspace, pattern: &SignPattern) -> Result<FeasibilityResult> {
    let n = v.ground_size();
    if pattern.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: pattern.len(),
        });
    }
    if pattern.is_zero() {
        return Ok(FeasibilityResult::Witness(vec![Rational::zero(); n]));
    }

    let d = v.dim();
    let zeros: Vec<usize> = pattern.zero_set().iter().collect();
    let support: Vec<usize> = pattern.support().iter().collect();
    let cols = 2 * d + support.len();
    let column = |i: usize| -> Vec<Rational> { v.basis().iter().map(|r| r[i].clone()).collect() };

    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for &z in &zeros {
        let coeff = column(z);
        let mut row = vec![Rational::zero(); cols];
        for k in 0..d {
            row[k] = coeff[k].clone();
            row[d + k] = -coeff[k].clone();
        }
        a.push(row);
        b.push(Rational::zero());
    }
    for (slack, &i) in support.iter().enumerate() {
        let mut coeff = column(i);
        if pattern.get(i) == Sign::Negative {
            for x in coeff.iter_mut() {
                *x = -x.clone();
            }
        }
        let mut row = vec![Rational::zero(); cols];
        for k in 0..d {
            row[k] = coeff[k].clone();
            row[d + k] = -coeff[k].clone();
        }
        row[2 * d + slack] = -Rational::from_integer(1.into());
        a.push(row);
        b.push(Rational::from_integer(1.into()));
    }

    Ok(match phase_one(&a, &b) {
        PhaseOne::Feasible(x) => {
            let c: Vec<Rational> = (0..d).map(|k| &x[k] - &x[d + k]).collect();
            FeasibilityResult::Witness(v.combine(&c))
        }
        PhaseOne::Infeasible(y) => {
            let mut alpha = vec![Rational::zero(); n];
            for (row, &z) in zeros.iter().enumerate() {
                alpha[z] = y[row].clone();
            }
            for (k, &i) in support.iter().enumerate() {
                let yi = y[zeros.len() + k].clone();
                alpha[i] = if pattern.get(i) == Sign::Negative { -yi } else { yi };
            }
            FeasibilityResult::Certificate(alpha)
        }
    })
}
