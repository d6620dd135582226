//! The regular cell decomposition of the real matroid Schubert variety.
//!
//! Cells are triples `(F, G, T)` with flats `F ⊆ G` and `T` a tope of the
//! minor `(M/F)|_G`, stored as a sign vector supported on `G ∖ F`. Every
//! tope `S` of `M` gives a chart: the nonnegative complex of `M` reoriented
//! by `S⁻`, whose cells `[I, J]` are the triples `(I, J, S|_(J∖I))`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::cell::{Cell, CellComplex};
use crate::error::{Error, Result};
use crate::homology::BettiVector;
use crate::linear::{sign_feasible, Subspace};
use crate::oriented::{sign_of, OrientedMatroid};
use crate::report::Report;
use crate::sets::ElementSet;
use crate::sign::SignVector;
use crate::tnn::{TnnCell, TnnComplex};

/// A cell of the real variety. `tope` is zero outside `upper ∖ lower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TripleCell {
    pub lower: ElementSet,
    pub upper: ElementSet,
    pub tope: SignVector,
    pub dim: usize,
}

impl TripleCell {
    /// Builds the canonical representative, masking `tope` to `G ∖ F`.
    pub fn new(lower: ElementSet, upper: ElementSet, tope: &SignVector, dim: usize) -> Self {
        TripleCell {
            lower,
            upper,
            tope: tope.mask(upper.difference(lower)),
            dim,
        }
    }

    /// The free coordinates `G ∖ F`.
    pub fn free(&self) -> ElementSet {
        self.upper.difference(self.lower)
    }
}

impl Ord for TripleCell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.lower.display_cmp(&other.lower))
            .then_with(|| self.upper.display_cmp(&other.upper))
            .then_with(|| self.tope.to_string().cmp(&other.tope.to_string()))
    }
}

impl PartialOrd for TripleCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TripleCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.lower, self.upper, self.tope)
    }
}

impl Cell for TripleCell {
    fn dim(&self) -> usize {
        self.dim
    }
}

/// `(F, G, T) ~ (F', G', T')` iff the flats agree and `T`, `T'` agree on
/// `G ∖ F`.
pub fn same_class(a: &TripleCell, b: &TripleCell) -> bool {
    a.lower == b.lower && a.upper == b.upper && a.tope.mask(a.free()) == b.tope.mask(b.free())
}

/// One cell per flat pair `F ⊆ G` and tope of `(M/F)|_G`, in canonical
/// order.
pub fn triple_cells(m: &OrientedMatroid) -> Vec<TripleCell> {
    let mut cells = BTreeSet::new();
    for f in m.flats() {
        for g in m.flats() {
            if !f.members.is_subset(g.members) {
                continue;
            }
            for x in m.covectors() {
                if x.zero_set().intersection(g.members) == f.members {
                    cells.insert(TripleCell::new(f.members, g.members, x, g.rank - f.rank));
                }
            }
        }
    }
    cells.into_iter().collect()
}

/// The triple named by a chart cell: tope `S`, relatively acyclic flats
/// `I ⊆ J`.
pub fn class_to_triple(m: &OrientedMatroid, s: &SignVector, i: ElementSet, j: ElementSet) -> Result<TripleCell> {
    let flats = m.relatively_acyclic_flats(s)?;
    for set in [i, j] {
        if !flats.contains(&set) {
            return Err(Error::NotAFlat(set));
        }
    }
    let dim = m.flat_rank(j)? - m.flat_rank(i)?;
    Ok(TripleCell::new(i, j, s, dim))
}

/// A chart `(S, F, G)` containing the triple. With `Y` a covector whose
/// zero set meets `G` in `F` and which restricts to `T`, and `G̃` a covector
/// with zero set `G`, the tope `S = G̃ ∘ Y ∘ S₀` works for any tope `S₀`.
pub fn triple_to_class(m: &OrientedMatroid, t: &TripleCell) -> Result<(SignVector, ElementSet, ElementSet)> {
    let bad = || Error::NotATope(t.to_string());
    let g_vec = m
        .covectors()
        .iter()
        .find(|x| x.zero_set() == t.upper)
        .ok_or(Error::NotAFlat(t.upper))?;
    let y = m
        .covectors()
        .iter()
        .find(|x| x.zero_set().intersection(t.upper) == t.lower && x.mask(t.free()) == t.tope)
        .ok_or_else(bad)?;
    let base = m.topes().first().ok_or_else(bad)?;
    let s = g_vec.compose(y).compose(base);
    Ok((s, t.lower, t.upper))
}

/// The chart of a tope `S`: the nonnegative complex of `M` reoriented by
/// `S⁻`. Its lattice consists of the flats relatively acyclic in `S`.
#[derive(Clone, Debug)]
pub struct TopeChart {
    tope: SignVector,
    tnn: TnnComplex,
}

impl TopeChart {
    pub fn new(m: &OrientedMatroid, tope: &SignVector) -> Result<Self> {
        if !m.is_tope(tope) {
            return Err(Error::NotATope(tope.to_string()));
        }
        Ok(TopeChart {
            tope: *tope,
            tnn: TnnComplex::new(&m.reorient(tope.minus())),
        })
    }

    pub fn tope(&self) -> &SignVector {
        &self.tope
    }

    pub fn tnn(&self) -> &TnnComplex {
        &self.tnn
    }

    pub fn triple(&self, cell: &TnnCell) -> TripleCell {
        TripleCell::new(cell.lower, cell.upper, &self.tope, cell.dim)
    }

    pub fn triples(&self) -> Vec<TripleCell> {
        self.tnn.cells().iter().map(|c| self.triple(c)).collect()
    }
}

/// The cell poset of the real variety.
#[derive(Clone, Debug)]
pub struct YvComplex {
    complex: CellComplex<TripleCell>,
    /// Whether the scanned relation needed no transitive completion.
    relation_is_transitive: bool,
}

impl YvComplex {
    /// `(F', G', T') ≤ (F, G, T)` iff `F ⊆ F' ⊆ G' ⊆ G` and a single tope
    /// `S` has all four flats relatively acyclic while agreeing with `T`
    /// on `G ∖ F` and with `T'` on `G' ∖ F'`.
    pub fn new(m: &OrientedMatroid) -> Self {
        let mut cells = triple_cells(m);
        cells.sort();
        let topes = m.topes();
        let relatively: Vec<HashSet<ElementSet>> = topes
            .par_iter()
            .map(|s| {
                m.covectors()
                    .iter()
                    .filter(|x| x.conforms_to(s))
                    .map(|x| x.zero_set())
                    .collect()
            })
            .collect();
        let compatible: Vec<FixedBitSet> = cells
            .par_iter()
            .map(|c| {
                let mut bits = FixedBitSet::with_capacity(topes.len());
                for (k, s) in topes.iter().enumerate() {
                    if relatively[k].contains(&c.lower)
                        && relatively[k].contains(&c.upper)
                        && s.mask(c.free()) == c.tope
                    {
                        bits.insert(k);
                    }
                }
                bits
            })
            .collect();
        let related = |a: usize, b: usize| -> bool {
            let (x, y) = (&cells[a], &cells[b]);
            y.lower.is_subset(x.lower)
                && x.lower.is_subset(x.upper)
                && x.upper.is_subset(y.upper)
                && !compatible[a].is_disjoint(&compatible[b])
        };
        let raw: Vec<Vec<bool>> = (0..cells.len())
            .into_par_iter()
            .map(|a| (0..cells.len()).map(|b| related(a, b)).collect())
            .collect();
        let complex = CellComplex::from_cells(cells.clone(), |x, y| {
            let a = cells.binary_search(x).expect("known cell");
            let b = cells.binary_search(y).expect("known cell");
            raw[a][b]
        })
        .expect("closure relation is acyclic");
        let poset = complex.poset();
        let relation_is_transitive = (0..cells.len())
            .all(|a| (0..cells.len()).all(|b| poset.leq(a, b) == raw[a][b]));
        YvComplex {
            complex,
            relation_is_transitive,
        }
    }

    pub fn complex(&self) -> &CellComplex<TripleCell> {
        &self.complex
    }

    pub fn cells(&self) -> &[TripleCell] {
        self.complex.cells()
    }

    /// Whether the scanned closure relation was already a partial order.
    pub fn relation_is_transitive(&self) -> bool {
        self.relation_is_transitive
    }

    pub fn betti(&self) -> BettiVector {
        self.complex.betti()
    }
}

/// Rational Betti numbers of the real variety of `V`.
pub fn yv_betti(v: &Subspace, allow_large: bool) -> Result<BettiVector> {
    let m = OrientedMatroid::from_subspace(v, allow_large)?;
    Ok(YvComplex::new(&m).betti())
}

/// A point of the chart cell `[I, J]` of tope `S`, found by the
/// feasibility oracle on `π_J(V)`, converted to the triple it lies in.
fn witness_label(v: &Subspace, s: &SignVector, cell: &TnnCell) -> Result<Option<TripleCell>> {
    let pattern = s.mask(cell.upper.difference(cell.lower)).restrict(cell.upper);
    let outcome = sign_feasible(&v.project(cell.upper), &pattern)?;
    Ok(outcome.witness().map(|w| {
        let signs = sign_of(w).extend(cell.upper, v.ground_size());
        TripleCell::new(cell.lower, cell.upper, &signs, cell.dim)
    }))
}

/// Chart covering, overlap agreement, per-chart ball certification,
/// chart order against the global closure order, the class bijection and
/// regularity of the whole complex.
pub fn chart_consistency_report(v: &Subspace, m: &OrientedMatroid, yv: &YvComplex) -> Result<Report> {
    let mut report = Report::new();
    let charts: Vec<TopeChart> = m
        .topes()
        .iter()
        .map(|s| TopeChart::new(m, s))
        .collect::<Result<_>>()?;

    let all: BTreeSet<TripleCell> = yv.cells().iter().copied().collect();
    let covered: BTreeSet<TripleCell> = charts.iter().flat_map(TopeChart::triples).collect();
    report.global(
        "chart-covering",
        covered == all,
        (covered != all).then(|| format!("{} of {} cells covered", covered.len(), all.len())),
    );

    // Witness labels, one per chart cell.
    let labels: Vec<Result<BTreeMap<TnnCell, Option<TripleCell>>>> = charts
        .par_iter()
        .map(|chart| {
            chart
                .tnn()
                .cells()
                .iter()
                .map(|c| Ok((*c, witness_label(v, chart.tope(), c)?)))
                .collect()
        })
        .collect();
    let labels: Vec<BTreeMap<TnnCell, Option<TripleCell>>> = labels.into_iter().collect::<Result<_>>()?;
    for (chart, map) in charts.iter().zip(&labels) {
        let ok = map.iter().all(|(c, w)| *w == Some(chart.triple(c)));
        report.push(
            "chart-witness",
            Some(chart.tope().to_string()),
            ok,
            (!ok).then(|| "a chart cell has no point with its predicted label".to_string()),
        );
    }
    for a in 0..charts.len() {
        for b in a + 1..charts.len() {
            let mut agree = true;
            for (cell, wa) in &labels[a] {
                if let Some(wb) = labels[b].get(cell) {
                    let by_condition = same_class(&charts[a].triple(cell), &charts[b].triple(cell));
                    agree &= by_condition == (wa == wb);
                }
            }
            report.push(
                "chart-overlap",
                Some(format!("{} {}", charts[a].tope(), charts[b].tope())),
                agree,
                None,
            );
        }
    }

    let chart_reports: Vec<Result<Report>> = charts
        .par_iter()
        .map(|chart| chart_report(v, m, yv, chart))
        .collect();
    for r in chart_reports {
        report.extend(r?);
    }

    let mut bijection = true;
    for t in yv.cells() {
        let (s, i, j) = triple_to_class(m, t)?;
        bijection &= class_to_triple(m, &s, i, j)? == *t;
    }
    for chart in &charts {
        for c in chart.tnn().cells() {
            let t = chart.triple(c);
            let (s, i, j) = triple_to_class(m, &t)?;
            bijection &= i == c.lower && j == c.upper && s.mask(t.free()) == chart.tope().mask(t.free());
        }
    }
    report.global("class-bijection", bijection, None);

    report.global("yv-closure-transitive", yv.relation_is_transitive(), None);
    report.extend(yv.complex().regularity("yv-regularity"));
    Ok(report)
}

fn chart_report(v: &Subspace, m: &OrientedMatroid, yv: &YvComplex, chart: &TopeChart) -> Result<Report> {
    let mut report = Report::new();
    let name = Some(chart.tope().to_string());
    let tnn = chart.tnn();
    let regular = tnn.regularity_report();
    report.push(
        "chart-ball",
        name.clone(),
        regular.passed(),
        regular.failures().next().map(|f| format!("{}: {:?}", f.check, f.witness)),
    );

    let geometric = OrientedMatroid::from_subspace(&v.reorient(chart.tope().minus()), true)?;
    let combinatorial = m.reorient(chart.tope().minus());
    report.push("chart-reorientation", name.clone(), geometric == combinatorial, None);

    let keep: Vec<usize> = chart
        .triples()
        .iter()
        .map(|t| yv.complex().index_of(t).expect("chart cells are cells"))
        .collect();
    let induced = yv.complex().induced(&keep);
    let induced_covers: BTreeSet<(TripleCell, TripleCell)> = induced
        .poset()
        .covers()
        .into_iter()
        .map(|(a, b)| (*induced.cell(a), *induced.cell(b)))
        .collect();
    let chart_covers: BTreeSet<(TripleCell, TripleCell)> = tnn
        .complex()
        .poset()
        .covers()
        .into_iter()
        .map(|(a, b)| (chart.triple(tnn.complex().cell(a)), chart.triple(tnn.complex().cell(b))))
        .collect();
    report.push("chart-order", name, induced_covers == chart_covers, None);
    Ok(report)
}
