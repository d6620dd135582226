//! Independent oracles and instance generators shared by the integration
//! tests. Nothing here calls the library's feasibility or homology code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schubert_core::linear::{int_matrix, kernel_basis};
use schubert_core::{Sign, SignVector, Subspace};

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `x1 + x2 - x3 = x3 - x4 - x5 = 0`.
pub fn five_coordinates() -> Subspace {
    kernel_basis(&int_matrix(&[[1, 1, -1, 0, 0], [0, 0, 1, -1, -1]]), 5).unwrap()
}

/// `x1 - x2 - x3 - x4 = 0`.
pub fn hyperplane() -> Subspace {
    kernel_basis(&int_matrix(&[[1, -1, -1, -1]]), 4).unwrap()
}

/// `x1 + x2 - x3 = 0`.
pub fn triangle() -> Subspace {
    kernel_basis(&int_matrix(&[[1, 1, -1]]), 3).unwrap()
}

/// Row span of a random small-integer matrix with `rows` rows and `n`
/// columns. Dimension may drop below `rows` and loops may occur.
pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize, rows: usize) -> Subspace {
    let basis: Vec<Vec<Q>> = (0..rows)
        .map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect())
        .collect();
    Subspace::span(n, basis).unwrap()
}

/// A fixed family of random instances with `|E|` cycling through 3..=6
/// and at most 3 spanning rows.
pub fn random_instances(seed: u64, count: usize) -> Vec<Subspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| random_subspace(&mut rng, 3 + k % 4, 1 + (k + 1) % 3))
        .collect()
}

/// A plane in `Q^6` with a loop at coordinate 5 and a parallel pair.
pub fn with_loop() -> Subspace {
    Subspace::span(6, int_rows(&[[1, 0, 1, 2, 0, 2], [0, 1, 1, -1, 0, -1]])).unwrap()
}

fn int_rows<const N: usize>(rows: &[[i64; N]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// One inequality `a · c ≥ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Ineq {
    a: Vec<Q>,
    b: Q,
}

fn normalize(mut i: Ineq) -> Ineq {
    if let Some(scale) = i.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        for x in i.a.iter_mut() {
            *x /= &scale;
        }
        i.b /= &scale;
    }
    i
}

/// Decides by Fourier–Motzkin elimination whether some `v ∈ V` has sign
/// vector exactly `pattern`. Strict signs are scaled to `σ v_i ≥ 1`.
pub fn fm_feasible(v: &Subspace, pattern: &SignVector) -> bool {
    let n = v.ground_size();
    let d = v.dim();
    // v_i as a linear form in the basis coefficients.
    let column = |i: usize| -> Vec<Q> { v.basis().iter().map(|r| r[i].clone()).collect() };
    let mut equalities: Vec<Vec<Q>> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for i in 0..n {
        match pattern.get(i) {
            Sign::Zero => equalities.push(column(i)),
            Sign::Positive => ineqs.push(Ineq { a: column(i), b: q(1) }),
            Sign::Negative => ineqs.push(Ineq {
                a: column(i).into_iter().map(|x| -x).collect(),
                b: q(1),
            }),
        }
    }
    // Substitute equalities away: each one with a nonzero coefficient
    // expresses one variable through the others.
    let mut active: Vec<bool> = vec![true; d];
    while let Some(eq) = equalities.pop() {
        let Some(k) = (0..d).find(|&k| active[k] && !eq[k].is_zero()) else {
            if eq.iter().all(Zero::is_zero) {
                continue;
            }
            unreachable!("inactive variables have zero coefficients");
        };
        let substitute = |row: &mut Vec<Q>| {
            if row[k].is_zero() {
                return;
            }
            let f = &row[k] / &eq[k];
            for j in 0..d {
                let delta = &f * &eq[j];
                row[j] -= delta;
            }
        };
        for e in equalities.iter_mut() {
            substitute(e);
        }
        for i in ineqs.iter_mut() {
            substitute(&mut i.a);
        }
        active[k] = false;
    }
    for k in (0..d).filter(|&k| active[k]) {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for i in ineqs {
            if i.a[k].is_positive() {
                pos.push(i);
            } else if i.a[k].is_negative() {
                neg.push(i);
            } else {
                rest.push(i);
            }
        }
        let mut next: BTreeSet<Ineq> = rest.into_iter().map(normalize).collect();
        for p in &pos {
            for m in &neg {
                let (sp, sm) = (-m.a[k].clone(), p.a[k].clone());
                let a = (0..d).map(|j| &sp * &p.a[j] + &sm * &m.a[j]).collect();
                let b = &sp * &p.b + &sm * &m.b;
                next.insert(normalize(Ineq { a, b }));
            }
        }
        ineqs = next.into_iter().collect();
    }
    ineqs.iter().all(|i| !i.b.is_positive())
}

/// Every sign vector of length `n`.
pub fn all_patterns(n: usize) -> Vec<SignVector> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for mut code in 0..total {
        let mut signs = Vec::with_capacity(n);
        for _ in 0..n {
            signs.push([Sign::Negative, Sign::Zero, Sign::Positive][code % 3]);
            code /= 3;
        }
        out.push(SignVector::from_signs(&signs).unwrap());
    }
    out
}

/// Rational Betti numbers of the order complex of a finite poset given by
/// its strict order relation, by enumerating every chain and reducing
/// dense boundary matrices.
pub fn chain_betti(n: usize, lt: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for c in &layer {
            let last = *c.last().unwrap();
            for j in 0..n {
                if lt(last, j) {
                    let mut d = c.clone();
                    d.push(j);
                    next.push(d);
                }
            }
        }
        chains.push(layer);
        layer = next;
    }
    if chains.is_empty() || chains[0].is_empty() {
        return Vec::new();
    }
    let mut ranks = vec![0usize; chains.len() + 1];
    for k in 1..chains.len() {
        let index: HashMap<&[usize], usize> =
            chains[k - 1].iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let mut rows: Vec<Vec<Q>> = chains[k]
            .iter()
            .map(|c| {
                let mut row = vec![Q::zero(); chains[k - 1].len()];
                for drop in 0..c.len() {
                    let face: Vec<usize> =
                        c.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
                    row[index[face.as_slice()]] = if drop % 2 == 0 { Q::one() } else { -Q::one() };
                }
                row
            })
            .collect();
        ranks[k] = dense_rank(&mut rows);
    }
    (0..chains.len())
        .map(|k| chains[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

fn dense_rank(rows: &mut [Vec<Q>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}
