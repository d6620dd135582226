//! Acceptance suite: one verdict line per criterion, nonzero exit on any
//! failure. Every comparison is exact; the only tolerances are the pinned
//! runtime budgets below.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use schubert_core::real::{chart_consistency_report, yv_betti, YvComplex};
use schubert_core::sets::subsets;
use schubert_core::shelling::verify_shelling;
use schubert_core::tnn::{closure_minor_check, minor_correspondence_check, verify_strata_oracle, TnnComplex};
use schubert_core::{sign_feasible, ElementSet, OrientedMatroid, SignVector, Subspace};

use common::{all_patterns, chain_betti, fm_feasible, random_instances};

/// Budget for the five-coordinate example pipeline.
const EXAMPLE_BUDGET: Duration = Duration::from_secs(10);
/// Budget for the real homology computation of the triangle example.
const REAL_BUDGET: Duration = Duration::from_secs(30);
/// Seed and size of the random instance family.
const RANDOM_SEED: u64 = 0x5eed_2024;
const RANDOM_COUNT: usize = 6;
/// Largest ground set for the random family and the real-variety suite.
const MAX_GROUND: usize = 6;

struct Verdict {
    id: u8,
    title: &'static str,
    failures: Vec<String>,
}

impl Verdict {
    fn new(id: u8, title: &'static str) -> Self {
        Verdict {
            id,
            title,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn set(labels: &[usize]) -> ElementSet {
    labels.iter().map(|&i| i - 1).collect()
}

fn sets(list: &[&[usize]]) -> BTreeSet<ElementSet> {
    list.iter().map(|l| set(l)).collect()
}

fn matroid(v: &Subspace) -> OrientedMatroid {
    OrientedMatroid::from_subspace(v, false).unwrap()
}

struct Instance {
    name: String,
    v: Subspace,
    m: OrientedMatroid,
}

fn instances() -> Vec<Instance> {
    let mut named = vec![
        ("five-coordinate example".to_string(), common::five_coordinates()),
        ("hyperplane example".to_string(), common::hyperplane()),
        ("triangle example".to_string(), common::triangle()),
        ("Q^1".to_string(), Subspace::full(1)),
        ("Q^2".to_string(), Subspace::full(2)),
        ("Q^3".to_string(), Subspace::full(3)),
        ("zero in Q^2".to_string(), Subspace::zero(2)),
        ("plane with a loop".to_string(), common::with_loop()),
    ];
    for (k, v) in random_instances(RANDOM_SEED, RANDOM_COUNT).into_iter().enumerate() {
        named.push((format!("random #{k} (n={}, dim={})", v.ground_size(), v.dim()), v));
    }
    named
        .into_iter()
        .map(|(name, v)| Instance {
            m: matroid(&v),
            name,
            v,
        })
        .collect()
}

fn criterion_1() -> Verdict {
    let mut out = Verdict::new(1, "five-coordinate example: lattices, cells, homology, shelling");
    let start = Instant::now();
    let m = matroid(&common::five_coordinates());
    let flats: BTreeSet<ElementSet> = m.flats().iter().map(|f| f.members).collect();
    let expected_flats = sets(&[
        &[],
        &[1],
        &[2],
        &[3],
        &[4],
        &[5],
        &[1, 2, 3],
        &[1, 4],
        &[2, 4],
        &[2, 5],
        &[1, 5],
        &[3, 4, 5],
        &[1, 2, 3, 4, 5],
    ]);
    out.check(flats == expected_flats, format!("flats {flats:?}"));
    let acyclic: BTreeSet<ElementSet> = m.acyclic_flats().iter().map(|f| f.members).collect();
    let expected_acyclic = sets(&[
        &[],
        &[1],
        &[2],
        &[4],
        &[5],
        &[1, 4],
        &[2, 4],
        &[1, 5],
        &[2, 5],
        &[1, 2, 3, 4, 5],
    ]);
    out.check(acyclic == expected_acyclic, format!("acyclic flats {acyclic:?}"));
    let lattice = m.flat_lattice();
    match lattice.thinness_violation().unwrap() {
        Some(w) => out.check(
            w.size == 5 && *lattice.label(w.lower) == set(&[]) && *lattice.label(w.upper) == set(&[1, 2, 3]),
            format!("thinness witness {w:?}"),
        ),
        None => out.check(false, "flat lattice reported thin"),
    }
    out.check(m.las_vergnas_lattice().is_thin().unwrap(), "acyclic lattice not thin");
    let tnn = TnnComplex::new(&m);
    let counts = tnn.complex().counts_by_dim();
    out.check(counts == [10, 16, 8, 1], format!("cell counts {counts:?}"));
    let chi = tnn.complex().euler_characteristic();
    out.check(chi == 1, format!("euler characteristic {chi}"));
    out.check(tnn.regularity_report().passed(), "regularity report failed");
    let boundary = tnn.boundary().betti();
    out.check(boundary.numbers() == [1, 0, 1], format!("boundary Betti {boundary}"));
    match tnn.shell_boundary(true).unwrap() {
        Some(cells) => {
            let b = tnn.boundary();
            let order: Vec<usize> = cells.iter().map(|c| b.index_of(c).unwrap()).collect();
            out.check(verify_shelling(&b, &order).unwrap(), "returned order is not a shelling");
        }
        None => out.check(false, "no shelling found"),
    }
    let elapsed = start.elapsed();
    out.check(elapsed < EXAMPLE_BUDGET, format!("took {elapsed:?}"));
    out
}

fn criterion_2() -> Verdict {
    let mut out = Verdict::new(2, "hyperplane counterexample: flats and acyclicity under restriction");
    let m = matroid(&common::hyperplane());
    let flats: BTreeSet<ElementSet> = m.flats().iter().map(|f| f.members).collect();
    let expected: BTreeSet<ElementSet> = subsets(ElementSet::full(4))
        .filter(|s| s.len() <= 2 || s.len() == 4)
        .collect();
    out.check(flats == expected && flats.len() == 12, format!("flats {flats:?}"));
    out.check(!m.is_acyclic_flat(set(&[1, 2])), "{1,2} acyclic");
    out.check(!m.is_acyclic_flat(set(&[1])), "{1} acyclic");
    let restricted = m.restrict(set(&[1, 2])).unwrap();
    let local = set(&[1]).compress(set(&[1, 2]));
    out.check(restricted.is_acyclic_flat(local), "{1} not acyclic in the restriction");
    let zero_plus: SignVector = "0+".parse().unwrap();
    out.check(restricted.is_covector(&zero_plus), "(0,+) missing from the restriction");
    out
}

/// Closure relation of the real complex recomputed from its definition,
/// one pair and one tope at a time.
fn brute_force_relation(m: &OrientedMatroid, yv: &YvComplex) -> impl Fn(usize, usize) -> bool {
    let cells = yv.cells().to_vec();
    let topes = m.topes().to_vec();
    let covectors = m.covectors().to_vec();
    let rel_acyclic = move |s: &SignVector, f: ElementSet| {
        covectors.iter().any(|x| x.zero_set() == f && x.conforms_to(s))
    };
    let n = cells.len();
    let mut lt = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (&cells[a], &cells[b]);
            if a == b || !(y.lower.is_subset(x.lower) && x.upper.is_subset(y.upper)) {
                continue;
            }
            lt[a][b] = topes.iter().any(|s| {
                [x.lower, x.upper, y.lower, y.upper].iter().all(|&f| rel_acyclic(s, f))
                    && s.mask(x.free()) == x.tope
                    && s.mask(y.free()) == y.tope
            });
        }
    }
    move |a, b| lt[a][b]
}

fn criterion_3() -> Verdict {
    let mut out = Verdict::new(3, "real variety of the triangle example has first homology");
    let start = Instant::now();
    let v = common::triangle();
    let betti = yv_betti(&v, false).unwrap();
    out.check(betti.get(1) >= 1, format!("Betti {betti}"));
    let m = matroid(&v);
    let yv = YvComplex::new(&m);
    let lt = brute_force_relation(&m, &yv);
    let oracle = chain_betti(yv.cells().len(), lt);
    out.check(
        betti.numbers() == oracle.as_slice(),
        format!("Betti {betti} vs brute force {oracle:?}"),
    );
    let elapsed = start.elapsed();
    out.check(elapsed < REAL_BUDGET, format!("took {elapsed:?}"));
    out
}

fn criterion_4(random: &[Instance]) -> Verdict {
    let mut out = Verdict::new(4, "covectors equal the feasible sign patterns on random subspaces");
    out.check(random.len() >= 5, "fewer than five random instances");
    for inst in random {
        let n = inst.v.ground_size();
        out.check(n <= MAX_GROUND, format!("{} too large", inst.name));
        let mut by_simplex = BTreeSet::new();
        let mut by_elimination = BTreeSet::new();
        for p in all_patterns(n) {
            let result = sign_feasible(&inst.v, &p).unwrap();
            out.check(result.verify(&inst.v, &p), format!("{}: unverifiable answer for {p}", inst.name));
            if result.is_feasible() {
                by_simplex.insert(p);
            }
            if fm_feasible(&inst.v, &p) {
                by_elimination.insert(p);
            }
        }
        let covectors: BTreeSet<SignVector> = inst.m.covectors().iter().copied().collect();
        out.check(covectors == by_simplex, format!("{}: covectors differ from simplex oracle", inst.name));
        out.check(
            covectors == by_elimination,
            format!("{}: covectors differ from elimination oracle", inst.name),
        );
    }
    out
}

fn criterion_5(all: &[Instance]) -> Verdict {
    let mut out = Verdict::new(5, "covector poset with a top adjoined is thin");
    for inst in all {
        out.check(inst.m.covector_lattice().is_thin().unwrap(), inst.name.clone());
    }
    out
}

fn criterion_6(all: &[Instance]) -> Verdict {
    let mut out = Verdict::new(6, "strata, closure order, regularity and boundary pairing");
    for inst in all {
        let tnn = TnnComplex::new(&inst.m);
        let reports = [
            ("strata", verify_strata_oracle(&inst.v, &inst.m).unwrap()),
            ("closure", tnn.closure_report()),
            ("closure minors", closure_minor_check(&inst.v, &inst.m).unwrap()),
            ("regularity", tnn.regularity_report()),
            ("pairing", tnn.boundary_pairing_check()),
        ];
        for (what, r) in reports {
            let first = r.failures().next().map(|f| format!("{} {:?}", f.check, f.cell));
            out.check(r.passed(), format!("{}: {what} {first:?}", inst.name));
        }
    }
    out
}

fn criterion_7(all: &[Instance]) -> Verdict {
    let mut out = Verdict::new(7, "tope charts, overlaps, chart balls, real regularity, real P^1");
    for inst in all.iter().filter(|i| i.v.ground_size() <= MAX_GROUND) {
        let yv = YvComplex::new(&inst.m);
        let r = chart_consistency_report(&inst.v, &inst.m, &yv).unwrap();
        let first = r.failures().next().map(|f| format!("{} {:?}", f.check, f.cell));
        out.check(r.passed(), format!("{}: {first:?}", inst.name));
    }
    let line = yv_betti(&Subspace::full(1), false).unwrap();
    out.check(line.numbers() == [1, 1], format!("Betti of real P^1 {line}"));
    out
}

fn criterion_8() -> Verdict {
    let mut out = Verdict::new(8, "projection and contraction minors match sub-intervals");
    for (name, v) in [
        ("five-coordinate", common::five_coordinates()),
        ("hyperplane", common::hyperplane()),
        ("triangle", common::triangle()),
    ] {
        let m = matroid(&v);
        let r = minor_correspondence_check(&v, &m).unwrap();
        out.check(r.passed(), name);
        out.check(r.count("minor-projection") == m.acyclic_flats().len(), format!("{name}: projections"));
    }
    out
}

fn main() -> ExitCode {
    let all = instances();
    let random: Vec<Instance> = random_instances(RANDOM_SEED, RANDOM_COUNT)
        .into_iter()
        .enumerate()
        .map(|(k, v)| Instance {
            name: format!("random #{k}"),
            m: matroid(&v),
            v,
        })
        .collect();
    let family: Vec<String> = random
        .iter()
        .map(|i| format!("n={} dim={} loops={}", i.v.ground_size(), i.v.dim(), i.m.loops()))
        .collect();
    println!("random family (seed {RANDOM_SEED:#x}): {}", family.join(", "));
    let verdicts = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(&random),
        criterion_5(&all),
        criterion_6(&all),
        criterion_7(&all),
        criterion_8(),
    ];
    let mut failed = 0;
    for v in &verdicts {
        if v.failures.is_empty() {
            println!("PASS criterion {}: {}", v.id, v.title);
        } else {
            failed += 1;
            println!("FAIL criterion {}: {} ({})", v.id, v.title, v.failures.join("; "));
        }
    }
    println!("{} of {} criteria passed", verdicts.len() - failed, verdicts.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
