//! The cell poset of the totally nonnegative matroid Schubert variety: one
//! cell per interval `[F, G]` of acyclic flats, of dimension
//! `rk(G) - rk(F)`, with `[F', G']` in the closure of `[F, G]` exactly when
//! `F ⊆ F' ⊆ G' ⊆ G`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cell::{Cell, CellComplex};
use crate::error::Result;
use crate::linear::{sign_feasible, Subspace};
use crate::oriented::OrientedMatroid;
use crate::poset::GradedPoset;
use crate::report::Report;
use crate::sets::ElementSet;
use crate::shelling::{find_shelling, property_s, verify_shelling};
use crate::sign::SignVector;

/// A cell `[F, G]`: coordinates in `F` are zero, those outside `G` are
/// infinite and the rest are positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TnnCell {
    pub lower: ElementSet,
    pub upper: ElementSet,
    pub dim: usize,
}

impl TnnCell {
    /// `[F', G']` lies in the closure of `[F, G]`.
    pub fn is_face_of(&self, other: &TnnCell) -> bool {
        other.lower.is_subset(self.lower)
            && self.lower.is_subset(self.upper)
            && self.upper.is_subset(other.upper)
    }

    /// The same cell with coordinates renamed through `within`, as produced
    /// by [`ElementSet::expand`].
    pub fn expand(&self, within: ElementSet) -> TnnCell {
        TnnCell {
            lower: self.lower.expand(within),
            upper: self.upper.expand(within),
            dim: self.dim,
        }
    }
}

impl Ord for TnnCell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.lower.display_cmp(&other.lower))
            .then_with(|| self.upper.display_cmp(&other.upper))
    }
}

impl PartialOrd for TnnCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TnnCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lower, self.upper)
    }
}

impl Cell for TnnCell {
    fn dim(&self) -> usize {
        self.dim
    }
}

/// Cells of the nonnegative variety together with the lattice they came
/// from.
#[derive(Clone, Debug)]
pub struct TnnComplex {
    ground: usize,
    loops: ElementSet,
    lattice: GradedPoset<ElementSet>,
    complex: CellComplex<TnnCell>,
}

impl TnnComplex {
    /// The cell poset of `M`: intervals of its Las Vergnas lattice.
    pub fn new(m: &OrientedMatroid) -> Self {
        Self::from_lattice(m.las_vergnas_lattice(), m.ground_size(), m.loops())
    }

    /// Intervals of an arbitrary lattice of coordinate sets. Feeding the
    /// full flat lattice instead of the acyclic one is how negative controls
    /// are produced.
    pub fn from_lattice(lattice: GradedPoset<ElementSet>, ground: usize, loops: ElementSet) -> Self {
        let mut cells = Vec::new();
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                if lattice.leq(i, j) {
                    cells.push(TnnCell {
                        lower: *lattice.label(i),
                        upper: *lattice.label(j),
                        dim: lattice.rank(j) - lattice.rank(i),
                    });
                }
            }
        }
        let complex = CellComplex::from_cells(cells, |a, b| a.is_face_of(b))
            .expect("interval containment is a partial order");
        TnnComplex {
            ground,
            loops,
            lattice,
            complex,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn loops(&self) -> ElementSet {
        self.loops
    }

    pub fn lattice(&self) -> &GradedPoset<ElementSet> {
        &self.lattice
    }

    pub fn complex(&self) -> &CellComplex<TnnCell> {
        &self.complex
    }

    pub fn cells(&self) -> &[TnnCell] {
        self.complex.cells()
    }

    /// The smallest acyclic flat: coordinates that vanish on all of
    /// `V ∩ R≥0^E`.
    pub fn bottom_flat(&self) -> Option<ElementSet> {
        self.lattice.bottom().map(|i| *self.lattice.label(i))
    }

    pub fn top_flat(&self) -> Option<ElementSet> {
        self.lattice.top().map(|i| *self.lattice.label(i))
    }

    pub fn top_cell(&self) -> Option<TnnCell> {
        let (b, t) = (self.lattice.bottom()?, self.lattice.top()?);
        Some(TnnCell {
            lower: *self.lattice.label(b),
            upper: *self.lattice.label(t),
            dim: self.lattice.rank(t) - self.lattice.rank(b),
        })
    }

    pub fn dim(&self) -> usize {
        self.complex.dim().unwrap_or(0)
    }

    /// Every cell except the top one.
    pub fn boundary(&self) -> CellComplex<TnnCell> {
        let top = self.top_cell();
        self.complex.induced_by(|c| Some(*c) != top)
    }

    /// Cells whose points have a coordinate that is zero beyond the forced
    /// ones, i.e. `F` strictly above the bottom acyclic flat.
    pub fn zero_locus(&self) -> CellComplex<TnnCell> {
        let bottom = self.bottom_flat();
        self.complex.induced_by(|c| Some(c.lower) != bottom)
    }

    /// Per-cell boundary spheres, a contractible total space and a sphere
    /// as the boundary.
    pub fn regularity_report(&self) -> Report {
        let mut report = self.complex.regularity("cell-regularity");
        let d = self.dim();
        let total = self.complex.betti();
        report.global("ball-homology", total.is_acyclic(), format!("Betti {total}"));
        let boundary = self.boundary().betti();
        report.global(
            "boundary-sphere",
            boundary.matches_sphere(d as isize - 1),
            format!("Betti {boundary}"),
        );
        let chi = self.complex.euler_characteristic();
        report.global("euler-ball", chi == 1, format!("chi {chi}"));
        let chi_boundary = self.boundary().euler_characteristic();
        let expected = if d == 0 { 0 } else { 1 + (-1i64).pow(d as u32 - 1) };
        report.global(
            "euler-boundary",
            chi_boundary == expected,
            format!("chi {chi_boundary}, expected {expected}"),
        );
        report
    }

    /// In the boundary of dimension `d - 1`, every `(d-2)`-cell lies under
    /// exactly two `(d-1)`-cells; inside the zero locus some `(d-2)`-cell
    /// lies under exactly one.
    pub fn boundary_pairing_check(&self) -> Report {
        let mut report = self.boundary().pairing("boundary-pairing");
        let d = self.dim();
        if d >= 2 {
            let zero = self.zero_locus();
            let free = (0..zero.len()).find(|&i| {
                zero.cell(i).dim == d - 2
                    && zero
                        .poset()
                        .up_covers(i)
                        .iter()
                        .filter(|&&j| zero.cell(j).dim == d - 1)
                        .count()
                        == 1
            });
            report.global(
                "zero-locus-free-face",
                free.is_some(),
                free.map(|i| zero.cell(i).to_string()),
            );
        }
        report
    }

    /// Structural checks on the closure order: it is the interval poset of
    /// the lattice, related cells are nested, covers drop dimension by one,
    /// and it is thin.
    pub fn closure_report(&self) -> Report {
        let mut report = Report::new();
        let poset = self.complex.poset();
        let intervals = self.lattice.interval_poset();
        let label = |i: usize| {
            let iv = intervals.label(i);
            (*self.lattice.label(iv.lower), *self.lattice.label(iv.upper))
        };
        let from_lattice: BTreeSet<_> = intervals
            .covers()
            .into_iter()
            .map(|(a, b)| (label(a), label(b)))
            .collect();
        let from_cells: BTreeSet<_> = poset
            .covers()
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (poset.label(a), poset.label(b));
                ((a.lower, a.upper), (b.lower, b.upper))
            })
            .collect();
        report.global(
            "closure-interval-poset",
            from_lattice == from_cells && intervals.len() == poset.len(),
            (from_lattice != from_cells).then(|| "cover relations differ".to_string()),
        );
        let mut nested = true;
        for i in 0..poset.len() {
            for j in 0..poset.len() {
                if poset.leq(i, j) && !poset.label(i).is_face_of(poset.label(j)) {
                    nested = false;
                }
            }
        }
        report.global("closure-transitivity", nested, None);
        report.global("closure-dimension", self.complex.dimensions_consistent(), None);
        match poset.thinness_violation() {
            Ok(None) => report.global("cell-poset-thin", true, None),
            Ok(Some(v)) => report.global(
                "cell-poset-thin",
                false,
                format!("[{}, {}] has {} elements", poset.label(v.lower), poset.label(v.upper), v.size),
            ),
            Err(e) => report.global("cell-poset-thin", false, e.to_string()),
        }
        report
    }

    /// Searches a shelling of the boundary, optionally demanding that the
    /// zero-locus facets come first, and checks the result independently.
    pub fn shell_boundary(&self, zero_locus_first: bool) -> Result<Option<Vec<TnnCell>>> {
        let boundary = self.boundary();
        let first: Vec<usize> = if zero_locus_first {
            let bottom = self.bottom_flat();
            boundary
                .facets()
                .into_iter()
                .filter(|&i| Some(boundary.cell(i).lower) != bottom)
                .collect()
        } else {
            Vec::new()
        };
        let Some(order) = find_shelling(&boundary, &first)? else {
            return Ok(None);
        };
        debug_assert!(verify_shelling(&boundary, &order)?);
        Ok(Some(order.iter().map(|&i| *boundary.cell(i)).collect()))
    }

    /// Shelling report: a shelling exists with the zero locus first, it
    /// verifies, and it has property S.
    pub fn shelling_report(&self) -> Result<Report> {
        let mut report = Report::new();
        let boundary = self.boundary();
        match self.shell_boundary(true)? {
            None => report.global("boundary-shelling", false, "no shelling found".to_string()),
            Some(cells) => {
                let order: Vec<usize> = cells
                    .iter()
                    .map(|c| boundary.index_of(c).expect("cells of the boundary"))
                    .collect();
                let text = cells.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                report.global("boundary-shelling", verify_shelling(&boundary, &order)?, text);
                report.global("property-s", property_s(&boundary, &order), None);
            }
        }
        Ok(report)
    }
}

/// `(F, G, feasible in π_G(V), G acyclic by feasibility, F acyclic in M|_G)`.
type StrataOutcome = (ElementSet, ElementSet, bool, bool, bool);

/// Compares the combinatorial cells with the geometry of `V` on every pair
/// of flats `F ⊆ G`.
///
/// A point with zeros on `F`, positive entries on `G ∖ F` and infinite
/// entries off `G` exists exactly when `π_G(V)` has a vector with sign
/// pattern `0^F +^(G∖F)` and `V` has one with pattern `0^G +^(E∖G)`. The
/// first condition alone says that `F` is acyclic in `M|_G`, which is
/// recorded as a separate check.
pub fn verify_strata_oracle(v: &Subspace, m: &OrientedMatroid) -> Result<Report> {
    let n = m.ground_size();
    let flats: Vec<ElementSet> = m.flats().iter().map(|f| f.members).collect();
    let acyclic: BTreeSet<ElementSet> = m.acyclic_flats().iter().map(|f| f.members).collect();
    let pairs: Vec<(ElementSet, ElementSet)> = flats
        .iter()
        .flat_map(|&f| flats.iter().filter(move |&&g| f.is_subset(g)).map(move |&g| (f, g)))
        .collect();
    let outcomes: Vec<Result<StrataOutcome>> = pairs
        .par_iter()
        .map(|&(f, g)| {
            let projected = v.project(g);
            let local = SignVector::positive_off(g.len(), f.compress(g));
            let inside = sign_feasible(&projected, &local)?.is_feasible();
            let outside = sign_feasible(v, &SignVector::positive_off(n, g))?.is_feasible();
            let restricted = m.restrict(g)?.is_acyclic_flat(f.compress(g));
            Ok((f, g, inside, outside, restricted))
        })
        .collect();
    let mut report = Report::new();
    for outcome in outcomes {
        let (f, g, inside, outside, restricted) = outcome?;
        let is_cell = acyclic.contains(&f) && acyclic.contains(&g);
        let cell = Some(format!("[{f},{g}]"));
        report.push(
            "strata-oracle",
            cell.clone(),
            is_cell == (inside && outside),
            (is_cell != (inside && outside))
                .then(|| format!("cell {is_cell}, feasible {}", inside && outside)),
        );
        report.push(
            "strata-restriction",
            cell,
            inside == restricted,
            (inside != restricted).then(|| format!("feasible {inside}, acyclic in restriction {restricted}")),
        );
    }
    Ok(report)
}

fn cover_labels(c: &CellComplex<TnnCell>, lift: impl Fn(&TnnCell) -> TnnCell) -> BTreeSet<(TnnCell, TnnCell)> {
    c.poset()
        .covers()
        .into_iter()
        .map(|(a, b)| (lift(c.cell(a)), lift(c.cell(b))))
        .collect()
}

fn compare_cells(
    report: &mut Report,
    check: &str,
    cell: String,
    minor: &CellComplex<TnnCell>,
    lift: ElementSet,
    full: &CellComplex<TnnCell>,
    keep: &[usize],
) {
    let expected = full.induced(keep);
    let lifted: BTreeSet<TnnCell> = minor.cells().iter().map(|c| c.expand(lift)).collect();
    let wanted: BTreeSet<TnnCell> = expected.cells().iter().copied().collect();
    let same_cells = lifted == wanted;
    let same_order = cover_labels(minor, |c| c.expand(lift)) == cover_labels(&expected, |c| *c);
    report.push(
        check,
        Some(cell),
        same_cells && same_order,
        (!(same_cells && same_order))
            .then(|| format!("{} minor cells vs {} expected", lifted.len(), wanted.len())),
    );
}

/// For every acyclic `G`, the cells of `π_G(V)` are the faces of `[B, G]`;
/// for every acyclic `F`, the cells of `V ∩ ker π_F` are the cells above
/// `F`. Both cell sets and their closure orders must match.
pub fn minor_correspondence_check(v: &Subspace, m: &OrientedMatroid) -> Result<Report> {
    let full = TnnComplex::new(m);
    let complex = full.complex();
    let ground = m.ground_set();
    let acyclic: Vec<ElementSet> = m.acyclic_flats().iter().map(|f| f.members).collect();
    let results: Vec<Result<Report>> = acyclic
        .par_iter()
        .map(|&a| {
            let mut report = Report::new();
            let projected = OrientedMatroid::from_subspace(&v.project(a), true)?;
            let keep: Vec<usize> = (0..complex.len())
                .filter(|&i| complex.cell(i).upper.is_subset(a))
                .collect();
            compare_cells(
                &mut report,
                "minor-projection",
                a.to_string(),
                TnnComplex::new(&projected).complex(),
                a,
                complex,
                &keep,
            );
            let contracted = OrientedMatroid::from_subspace(&v.vanish(a), true)?;
            let keep: Vec<usize> = (0..complex.len())
                .filter(|&i| a.is_subset(complex.cell(i).lower))
                .collect();
            compare_cells(
                &mut report,
                "minor-contraction",
                a.to_string(),
                TnnComplex::new(&contracted).complex(),
                ground,
                complex,
                &keep,
            );
            Ok(report)
        })
        .collect();
    let mut report = Report::new();
    for r in results {
        report.extend(r?);
    }
    Ok(report)
}

/// The closed cell `[F, G]` recomputed from scratch as the complex of the
/// minor `π_G(V ∩ ker π_F)` must equal the down-set of `[F, G]`.
pub fn closure_minor_check(v: &Subspace, m: &OrientedMatroid) -> Result<Report> {
    let full = TnnComplex::new(m);
    let complex = full.complex();
    let results: Vec<Result<Report>> = (0..complex.len())
        .into_par_iter()
        .map(|i| {
            let cell = *complex.cell(i);
            let minor = v.vanish(cell.lower).project(cell.upper);
            let mm = OrientedMatroid::from_subspace(&minor, true)?;
            let mut report = Report::new();
            compare_cells(
                &mut report,
                "closure-minor",
                cell.to_string(),
                TnnComplex::new(&mm).complex(),
                cell.upper,
                complex,
                &complex.poset().lower_set(i),
            );
            Ok(report)
        })
        .collect();
    let mut report = Report::new();
    for r in results {
        report.extend(r?);
    }
    Ok(report)
}
