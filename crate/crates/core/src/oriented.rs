//! Oriented matroids given by their covectors, and the realizable ones
//! obtained from a subspace.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{sign_of_rational, Rational, Subspace};
use crate::poset::{Adjoined, GradedPoset};
use crate::sets::ElementSet;
use crate::sign::SignVector;

/// Coordinatewise sign of a rational vector.
pub fn sign_of(v: &[Rational]) -> SignVector {
    let signs: Vec<_> = v.iter().map(sign_of_rational).collect();
    SignVector::from_signs(&signs).expect("vector length within bitset capacity")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flat {
    pub members: ElementSet,
    pub rank: usize,
}

/// An oriented matroid on `E = {0, .., n-1}`, stored as its sorted covector
/// set together with the derived cocircuits, topes and flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedMatroid {
    ground: usize,
    covectors: Vec<SignVector>,
    cocircuits: Vec<SignVector>,
    topes: Vec<SignVector>,
    flats: Vec<Flat>,
}

impl OrientedMatroid {
    /// Wraps a covector set that is assumed to satisfy the axioms (see
    /// [`check_axioms`]).
    pub fn from_covectors(ground: usize, covectors: impl IntoIterator<Item = SignVector>) -> Self {
        let covectors: Vec<SignVector> = covectors
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        debug_assert!(covectors.iter().all(|x| x.len() == ground));

        let zero_sets: BTreeSet<ElementSet> = covectors.iter().map(|x| x.zero_set()).collect();
        let mut members: Vec<ElementSet> = zero_sets.into_iter().collect();
        members.sort_by_key(|s| s.len());
        let mut ranks: Vec<usize> = Vec::with_capacity(members.len());
        for (j, f) in members.iter().enumerate() {
            let r = (0..j)
                .filter(|&i| members[i] != *f && members[i].is_subset(*f))
                .map(|i| ranks[i] + 1)
                .max()
                .unwrap_or(0);
            ranks.push(r);
        }
        let mut flats: Vec<Flat> = members
            .into_iter()
            .zip(ranks)
            .map(|(members, rank)| Flat { members, rank })
            .collect();
        flats.sort_by(|a, b| a.rank.cmp(&b.rank).then(a.members.display_cmp(&b.members)));

        let rank = flats.last().map_or(0, |f| f.rank);
        let loops = flats.first().map_or(ElementSet::EMPTY, |f| f.members);
        let hyperplanes: BTreeSet<ElementSet> = flats
            .iter()
            .filter(|f| rank > 0 && f.rank == rank - 1)
            .map(|f| f.members)
            .collect();
        let cocircuits = covectors
            .iter()
            .filter(|x| hyperplanes.contains(&x.zero_set()))
            .copied()
            .collect();
        let topes = covectors
            .iter()
            .filter(|x| x.zero_set() == loops)
            .copied()
            .collect();

        OrientedMatroid {
            ground,
            covectors,
            cocircuits,
            topes,
            flats,
        }
    }

    /// The oriented matroid `{s(v) : v ∈ V}`.
    ///
    /// Cocircuits come from the one-dimensional subspaces
    /// `{v ∈ V : v_S = 0}` with `|S| = dim V - 1`; all other covectors are
    /// compositions of cocircuits.
    pub fn from_subspace(v: &Subspace, allow_large: bool) -> Result<Self> {
        let n = v.ground_size();
        crate::parse::check_ground(n, allow_large)?;
        let d = v.dim();
        let mut cocircuits: BTreeSet<SignVector> = BTreeSet::new();
        if d > 0 {
            for zeros in (0..n).combinations(d - 1) {
                let w = v.vanish(zeros.into_iter().collect());
                if w.dim() == 1 {
                    let x = sign_of(&w.basis()[0]);
                    cocircuits.insert(x);
                    cocircuits.insert(x.negate());
                }
            }
        }
        let cocircuits: Vec<SignVector> = cocircuits.into_iter().collect();

        let mut covectors: BTreeSet<SignVector> = BTreeSet::new();
        let mut queue: VecDeque<SignVector> = VecDeque::new();
        let zero = SignVector::zero(n);
        covectors.insert(zero);
        queue.push_back(zero);
        while let Some(x) = queue.pop_front() {
            for c in &cocircuits {
                let y = x.compose(c);
                if covectors.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_covectors(n, covectors))
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.ground)
    }

    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn cocircuits(&self) -> &[SignVector] {
        &self.cocircuits
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    /// Flats sorted by rank, then by size and elements.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn rank(&self) -> usize {
        self.flats.last().map_or(0, |f| f.rank)
    }

    pub fn loops(&self) -> ElementSet {
        self.flats.first().map_or(ElementSet::EMPTY, |f| f.members)
    }

    pub fn is_covector(&self, x: &SignVector) -> bool {
        self.covectors.binary_search(x).is_ok()
    }

    pub fn is_tope(&self, x: &SignVector) -> bool {
        self.topes.binary_search(x).is_ok()
    }

    pub fn flat(&self, members: ElementSet) -> Option<Flat> {
        self.flats.iter().copied().find(|f| f.members == members)
    }

    pub fn is_flat(&self, members: ElementSet) -> bool {
        self.flat(members).is_some()
    }

    pub fn flat_rank(&self, members: ElementSet) -> Result<usize> {
        self.flat(members).map(|f| f.rank).ok_or(Error::NotAFlat(members))
    }

    /// `M|_F`: covectors projected onto `F`, renumbered to `0..|F|`.
    pub fn restrict(&self, f: ElementSet) -> Result<OrientedMatroid> {
        if !self.is_flat(f) {
            return Err(Error::NotAFlat(f));
        }
        Ok(Self::from_covectors(
            f.len(),
            self.covectors.iter().map(|x| x.restrict(f)),
        ))
    }

    /// `M/F`: covectors vanishing on `F`, on the same ground set.
    pub fn contract(&self, f: ElementSet) -> Result<OrientedMatroid> {
        if !self.is_flat(f) {
            return Err(Error::NotAFlat(f));
        }
        Ok(Self::from_covectors(
            self.ground,
            self.covectors
                .iter()
                .filter(|x| f.is_subset(x.zero_set()))
                .copied(),
        ))
    }

    /// Negates the coordinates in `flip` in every covector.
    pub fn reorient(&self, flip: ElementSet) -> OrientedMatroid {
        Self::from_covectors(self.ground, self.covectors.iter().map(|x| x.reorient(flip)))
    }

    /// `F` is a flat and `0^F +^(E∖F)` is a covector.
    pub fn is_acyclic_flat(&self, f: ElementSet) -> bool {
        f.is_subset(self.ground_set())
            && self.is_flat(f)
            && self.is_covector(&SignVector::positive_off(self.ground, f))
    }

    pub fn acyclic_flats(&self) -> Vec<Flat> {
        self.flats
            .iter()
            .copied()
            .filter(|f| self.is_acyclic_flat(f.members))
            .collect()
    }

    /// Lattice of flats under inclusion.
    pub fn flat_lattice(&self) -> GradedPoset<ElementSet> {
        let members = self.flats.iter().map(|f| f.members).collect();
        GradedPoset::from_order(members, |a, b| a.is_subset(*b)).expect("inclusion order")
    }

    /// The Las Vergnas face lattice: acyclic flats under inclusion.
    pub fn las_vergnas_lattice(&self) -> GradedPoset<ElementSet> {
        let members = self.acyclic_flats().iter().map(|f| f.members).collect();
        GradedPoset::from_order(members, |a, b| a.is_subset(*b)).expect("inclusion order")
    }

    /// Covectors under the containment order `X ≤ Y`.
    pub fn covector_poset(&self) -> GradedPoset<SignVector> {
        GradedPoset::from_order(self.covectors.clone(), |x, y| x.conforms_to(y)).expect("containment order")
    }

    /// Covector poset with a maximum adjoined.
    pub fn covector_lattice(&self) -> GradedPoset<Adjoined<SignVector>> {
        self.covector_poset().adjoin_top()
    }

    /// Flats `X⁰` of the covectors `X ≤ tope`.
    pub fn relatively_acyclic_flats(&self, tope: &SignVector) -> Result<Vec<ElementSet>> {
        if !self.is_tope(tope) {
            return Err(Error::NotATope(tope.to_string()));
        }
        let set: BTreeSet<ElementSet> = self
            .covectors
            .iter()
            .filter(|x| x.conforms_to(tope))
            .map(|x| x.zero_set())
            .collect();
        let mut out: Vec<ElementSet> = set.into_iter().collect();
        out.sort_by(|a, b| {
            let ra = self.flat_rank(*a).unwrap_or(0);
            let rb = self.flat_rank(*b).unwrap_or(0);
            ra.cmp(&rb).then(a.display_cmp(b))
        });
        Ok(out)
    }

    /// Counts of covectors by support size, handy for summaries.
    pub fn covector_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for x in &self.covectors {
            *m.entry(x.support().len()).or_default() += 1;
        }
        m
    }
}

/// Violations of the covector axioms found by exhaustive search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub missing_zero: bool,
    pub negation: Vec<SignVector>,
    pub composition: Vec<(SignVector, SignVector)>,
    /// `(X, Y, i)` with no eliminating covector.
    pub elimination: Vec<(SignVector, SignVector, usize)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        !self.missing_zero
            && self.negation.is_empty()
            && self.composition.is_empty()
            && self.elimination.is_empty()
    }
}

/// Checks the three covector axioms on an explicit set of sign vectors.
///
/// Elimination: for `X, Y` and `i` with `X_i = -Y_i ≠ 0` there must be a
/// `Z` with `Z_i = 0` and `Z_j = (X∘Y)_j` for every `j` outside the
/// separation set of `X` and `Y`.
pub fn check_axioms(ground: usize, covectors: &[SignVector]) -> AxiomReport {
    let set: BTreeSet<SignVector> = covectors.iter().copied().collect();
    let all: Vec<SignVector> = set.iter().copied().collect();
    let mut report = AxiomReport {
        missing_zero: !set.contains(&SignVector::zero(ground)),
        ..AxiomReport::default()
    };
    for x in &all {
        if !set.contains(&x.negate()) {
            report.negation.push(*x);
        }
    }
    let full = ElementSet::full(ground);
    for x in &all {
        for y in &all {
            let xy = x.compose(y);
            if !set.contains(&xy) {
                report.composition.push((*x, *y));
            }
            let sep = x.separation(y);
            if sep.is_empty() || x >= y {
                continue;
            }
            let fixed = full.difference(sep);
            let target = xy.mask(fixed);
            for i in sep.iter() {
                let found = all.iter().any(|z| z.get(i) == crate::sign::Sign::Zero && z.mask(fixed) == target);
                if !found {
                    report.elimination.push((*x, *y, i));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{int_matrix, kernel_basis};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn set(items: &[usize]) -> ElementSet {
        items.iter().map(|i| i - 1).collect()
    }

    fn om(eqs: &[Vec<Rational>], n: usize) -> OrientedMatroid {
        OrientedMatroid::from_subspace(&kernel_basis(eqs, n).unwrap(), false).unwrap()
    }

    fn kerx() -> OrientedMatroid {
        om(&int_matrix(&[[1, 1, -1]]), 3)
    }

    fn five() -> OrientedMatroid {
        om(&int_matrix(&[[1, 1, -1, 0, 0], [0, 0, 1, -1, -1]]), 5)
    }

    fn four() -> OrientedMatroid {
        om(&int_matrix(&[[1, -1, -1, -1]]), 4)
    }

    #[test]
    fn sign_map_examples() {
        use crate::linear::rational;
        let v = [rational(1), rational(1), rational(2)];
        assert_eq!(sign_of(&v), sv("+++"));
        assert_eq!(sign_of(&[rational(0), rational(0)]), sv("00"));
        let w = [rational(0), rational(2), rational(-1), rational(-1)];
        assert_eq!(sign_of(&w), sv("0+--"));
    }

    #[test]
    fn covectors_of_a_plane_in_three_space() {
        let m = kerx();
        assert_eq!(m.covectors().len(), 13);
        assert_eq!(m.topes().len(), 6);
        assert_eq!(m.cocircuits().len(), 6);
        for c in ["0++", "+0+", "+-0"] {
            assert!(m.is_covector(&sv(c)));
            assert!(m.is_covector(&sv(c).negate()));
        }
        assert!(check_axioms(3, m.covectors()).passed());
    }

    #[test]
    fn full_and_zero_spaces() {
        let full = OrientedMatroid::from_subspace(&Subspace::full(2), false).unwrap();
        assert_eq!(full.covectors().len(), 9);
        let zero = OrientedMatroid::from_subspace(&Subspace::zero(3), false).unwrap();
        assert_eq!(zero.covectors(), &[SignVector::zero(3)]);
        assert_eq!(zero.loops(), ElementSet::full(3));
    }

    #[test]
    fn flats_of_the_five_coordinate_example() {
        let m = five();
        let got: BTreeSet<ElementSet> = m.flats().iter().map(|f| f.members).collect();
        let want: BTreeSet<ElementSet> = [
            set(&[]),
            set(&[1]),
            set(&[2]),
            set(&[3]),
            set(&[4]),
            set(&[5]),
            set(&[1, 2, 3]),
            set(&[1, 4]),
            set(&[2, 4]),
            set(&[2, 5]),
            set(&[1, 5]),
            set(&[3, 4, 5]),
            set(&[1, 2, 3, 4, 5]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        assert_eq!(m.flat_rank(set(&[1, 2, 3])).unwrap(), 2);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn acyclic_flats_of_the_five_coordinate_example() {
        let m = five();
        let got: BTreeSet<ElementSet> = m.acyclic_flats().iter().map(|f| f.members).collect();
        let want: BTreeSet<ElementSet> = [
            set(&[]),
            set(&[1]),
            set(&[2]),
            set(&[4]),
            set(&[5]),
            set(&[1, 4]),
            set(&[2, 4]),
            set(&[1, 5]),
            set(&[2, 5]),
            set(&[1, 2, 3, 4, 5]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn flats_of_the_hyperplane_example() {
        let m = four();
        assert_eq!(m.flats().len(), 12);
        for f in m.flats() {
            assert!(f.members.len() <= 2 || f.members == ElementSet::full(4));
            if f.members.len() <= 2 {
                assert_eq!(f.rank, f.members.len());
            }
        }
        assert!(!m.is_acyclic_flat(set(&[1, 2])));
        assert!(!m.is_acyclic_flat(set(&[1])));
        let r = m.restrict(set(&[1, 2])).unwrap();
        assert!(r.is_covector(&sv("0+")));
        assert!(r.is_acyclic_flat(set(&[1])));
    }

    #[test]
    fn boolean_matroid_flats() {
        let m = OrientedMatroid::from_subspace(&Subspace::full(3), false).unwrap();
        assert_eq!(m.flats().len(), 8);
        assert!(m.flats().iter().all(|f| f.rank == f.members.len()));
    }

    #[test]
    fn trivial_minors() {
        let m = kerx();
        assert_eq!(m.contract(ElementSet::EMPTY).unwrap(), m);
        assert_eq!(m.restrict(ElementSet::full(3)).unwrap(), m);
        assert!(matches!(m.contract(set(&[1, 2])), Err(Error::NotAFlat(_))));
        assert!(matches!(m.restrict(set(&[1, 2])), Err(Error::NotAFlat(_))));
    }

    #[test]
    fn contraction_topes_have_the_flat_as_zero_set() {
        let m = five();
        let f = set(&[1, 4]);
        let c = m.contract(f).unwrap();
        assert!(c.topes().iter().all(|t| t.zero_set() == f));
    }

    #[test]
    fn reorientation() {
        let m = kerx();
        assert_eq!(m.reorient(ElementSet::EMPTY), m);
        let a = set(&[3]);
        assert_eq!(m.reorient(a).reorient(a), m);
        assert_eq!(m.reorient(a), om(&int_matrix(&[[1, 1, 1]]), 3));
        // x1 + x2 + x3 = 0 misses the open positive orthant.
        let acyclic: Vec<_> = m.reorient(a).acyclic_flats().iter().map(|f| f.members).collect();
        assert_eq!(acyclic, vec![ElementSet::full(3)]);
    }

    #[test]
    fn whole_ground_set_is_always_acyclic() {
        for m in [kerx(), five(), four()] {
            assert!(m.is_acyclic_flat(m.ground_set()));
        }
    }

    #[test]
    fn axiom_checker_negative_controls() {
        let bad = [sv("00"), sv("++")];
        let r = check_axioms(2, &bad);
        assert_eq!(r.negation, vec![sv("++")]);
        assert!(!r.passed());

        let m = kerx();
        let pruned: Vec<_> = m
            .covectors()
            .iter()
            .copied()
            .filter(|x| *x != sv("0++"))
            .collect();
        let r = check_axioms(3, &pruned);
        assert!(!r.passed());
        assert!(!r.composition.is_empty() || !r.elimination.is_empty());
    }

    #[test]
    fn relatively_acyclic_flats_of_a_tope() {
        let m = kerx();
        let flats = m.relatively_acyclic_flats(&sv("+-+")).unwrap();
        assert_eq!(flats, vec![set(&[]), set(&[2]), set(&[3]), set(&[1, 2, 3])]);
        assert!(m.relatively_acyclic_flats(&sv("0++")).is_err());
    }
}
