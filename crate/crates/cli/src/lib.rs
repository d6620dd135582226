//! Command-line driver: reads a rational matrix, builds the oriented
//! matroid of the subspace it describes and runs one pipeline.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use schubert_core::homology::BettiVector;
use schubert_core::oriented::check_axioms;
use schubert_core::parse::{parse_subspace, InputMode};
use schubert_core::real::{chart_consistency_report, YvComplex};
use schubert_core::report::Report;
use schubert_core::shelling::property_s;
use schubert_core::tnn::{closure_minor_check, minor_correspondence_check, verify_strata_oracle, TnnComplex};
use schubert_core::{Error, GradedPoset, OrientedMatroid, Subspace};

/// Version of the JSON document layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Rows are linear equations; the subspace is their common solution set.
    #[default]
    Equations,
    /// Rows span the subspace.
    Span,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variety {
    /// The totally nonnegative part.
    Tnn,
    /// The whole real variety.
    Real,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ExportTarget {
    Flats,
    AcyclicFlats,
    Covectors,
    #[default]
    Tnn,
    Real,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List the covectors of the oriented matroid.
    Covectors { input: PathBuf },
    /// List the flats with their ranks.
    Flats { input: PathBuf },
    /// List the acyclic flats.
    AcyclicFlats { input: PathBuf },
    /// List the cells of the nonnegative or real variety.
    Cells { variety: Variety, input: PathBuf },
    /// Run every structural check and exit nonzero on any failure.
    Verify { input: PathBuf },
    /// Rational Betti numbers of the nonnegative or real variety.
    Homology { variety: Variety, input: PathBuf },
    /// Find a shelling of the boundary of the nonnegative variety.
    Shelling {
        input: PathBuf,
        /// Do not require the zero-locus facets to come first.
        #[arg(long)]
        any_order: bool,
    },
    /// Emit the whole structured document as JSON, or a Hasse diagram with
    /// `--format dot`.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportTarget::Tnn)]
        poset: ExportTarget,
    },
}

impl Command {
    fn input(&self) -> &PathBuf {
        match self {
            Command::Covectors { input }
            | Command::Flats { input }
            | Command::AcyclicFlats { input }
            | Command::Cells { input, .. }
            | Command::Verify { input }
            | Command::Homology { input, .. }
            | Command::Shelling { input, .. }
            | Command::Export { input, .. } => input,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Covectors { .. } => "covectors",
            Command::Flats { .. } => "flats",
            Command::AcyclicFlats { .. } => "acyclic-flats",
            Command::Cells { .. } => "cells",
            Command::Verify { .. } => "verify",
            Command::Homology { .. } => "homology",
            Command::Shelling { .. } => "shelling",
            Command::Export { .. } => "export",
        }
    }
}

/// Parsed command line. An input path of `-` reads standard input.
#[derive(Clone, Debug, Parser)]
#[command(name = "schubert", version, about = "Cells and checks for matroid Schubert varieties")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Mode::Equations, global = true)]
    pub mode: Mode,
    /// Accept ground sets above the default size limit.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// What to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

/// Failures that map to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Input(#[from] Error),
    #[error("--format dot is not available for `{0}`")]
    NoDot(&'static str),
}

pub fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let read = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Runs the configured command on already loaded input text.
pub fn run_on_text(config: &RunConfig, text: &str) -> Result<Outcome, CliError> {
    let mode = match config.mode {
        Mode::Equations => InputMode::Equations,
        Mode::Span => InputMode::Span,
    };
    let v = parse_subspace(text, mode, config.allow_large)?;
    let m = OrientedMatroid::from_subspace(&v, config.allow_large)?;
    let ctx = Context { v, m, config };
    match &config.command {
        Command::Covectors { .. } => ctx.covectors(),
        Command::Flats { .. } => ctx.flats(false),
        Command::AcyclicFlats { .. } => ctx.flats(true),
        Command::Cells { variety, .. } => ctx.cells(*variety),
        Command::Verify { .. } => ctx.verify(),
        Command::Homology { variety, .. } => ctx.homology(*variety),
        Command::Shelling { any_order, .. } => ctx.shelling(!any_order),
        Command::Export { poset, .. } => ctx.export(*poset),
    }
}

/// Reads the input file and runs the configured command.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let text = read_input(config.command.input())?;
    run_on_text(config, &text)
}

struct Context<'a> {
    v: Subspace,
    m: OrientedMatroid,
    config: &'a RunConfig,
}

fn ok(output: String) -> Result<Outcome, CliError> {
    Ok(Outcome { output, status: 0 })
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn set_list(s: schubert_core::ElementSet) -> Value {
    json!(s.to_labels())
}

#[derive(Serialize)]
struct CheckSummary {
    check: String,
    records: usize,
    failed: usize,
}

fn summarize(report: &Report) -> Vec<CheckSummary> {
    let mut by_check: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut order: Vec<&str> = Vec::new();
    for r in &report.records {
        let entry = by_check.entry(&r.check).or_insert_with(|| {
            order.push(&r.check);
            (0, 0)
        });
        entry.0 += 1;
        entry.1 += usize::from(!r.passed);
    }
    order
        .into_iter()
        .map(|c| CheckSummary {
            check: c.to_string(),
            records: by_check[c].0,
            failed: by_check[c].1,
        })
        .collect()
}

fn dot_of<L: Clone + std::fmt::Display>(p: &GradedPoset<L>, name: &str) -> String {
    p.to_dot(name)
}

impl Context<'_> {
    fn format(&self) -> Format {
        self.config.format
    }

    fn header(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.config.command.name(),
            "ground_size": self.m.ground_size(),
            "rank": self.m.rank(),
            "loops": set_list(self.m.loops()),
        })
    }

    fn document(&self, fields: Value) -> String {
        let mut doc = self.header();
        if let (Some(d), Value::Object(extra)) = (doc.as_object_mut(), fields) {
            d.extend(extra);
        }
        to_json(&doc)
    }

    fn covectors(&self) -> Result<Outcome, CliError> {
        match self.format() {
            Format::Dot => ok(dot_of(&self.m.covector_poset(), "covectors")),
            Format::Json => ok(self.document(json!({
                "covector_count": self.m.covectors().len(),
                "covectors": self.m.covectors(),
                "cocircuits": self.m.cocircuits(),
                "topes": self.m.topes(),
            }))),
            Format::Human => {
                let mut s = String::new();
                let _ = writeln!(s, "ground set size {}, rank {}", self.m.ground_size(), self.m.rank());
                let _ = writeln!(
                    s,
                    "{} covectors, {} cocircuits, {} topes",
                    self.m.covectors().len(),
                    self.m.cocircuits().len(),
                    self.m.topes().len()
                );
                for x in self.m.covectors() {
                    let _ = writeln!(s, "{x}");
                }
                ok(s)
            }
        }
    }

    fn flats(&self, acyclic: bool) -> Result<Outcome, CliError> {
        let flats = if acyclic { self.m.acyclic_flats() } else { self.m.flats().to_vec() };
        let lattice = if acyclic { self.m.las_vergnas_lattice() } else { self.m.flat_lattice() };
        let thin = lattice.thinness_violation()?;
        match self.format() {
            Format::Dot => ok(dot_of(&lattice, if acyclic { "acyclic_flats" } else { "flats" })),
            Format::Json => ok(self.document(json!({
                "flats": flats,
                "thin": thin.is_none(),
                "thinness_witness": thin.map(|w| json!({
                    "lower": set_list(*lattice.label(w.lower)),
                    "upper": set_list(*lattice.label(w.upper)),
                    "size": w.size,
                })),
            }))),
            Format::Human => {
                let mut s = String::new();
                let _ = writeln!(s, "{} {}flats", flats.len(), if acyclic { "acyclic " } else { "" });
                for f in &flats {
                    let _ = writeln!(s, "rank {}  {}", f.rank, f.members);
                }
                match thin {
                    None => {
                        let _ = writeln!(s, "lattice is thin");
                    }
                    Some(w) => {
                        let _ = writeln!(
                            s,
                            "lattice is not thin: [{}, {}] has {} elements",
                            lattice.label(w.lower),
                            lattice.label(w.upper),
                            w.size
                        );
                    }
                }
                ok(s)
            }
        }
    }

    fn tnn_value(&self, tnn: &TnnComplex) -> Value {
        let c = tnn.complex();
        json!({
            "cells": c.cells(),
            "counts_by_dim": c.counts_by_dim(),
            "covers": c.poset().covers().iter().map(|&(a, b)| [c.cell(a).to_string(), c.cell(b).to_string()]).collect::<Vec<_>>(),
        })
    }

    fn real_value(&self, yv: &YvComplex) -> Value {
        let c = yv.complex();
        json!({
            "cells": c.cells().iter().map(|t| json!({
                "lower": t.lower, "upper": t.upper, "tope": t.tope, "dim": t.dim,
            })).collect::<Vec<_>>(),
            "counts_by_dim": c.counts_by_dim(),
            "covers": c.poset().covers().iter().map(|&(a, b)| [c.cell(a).to_string(), c.cell(b).to_string()]).collect::<Vec<_>>(),
        })
    }

    fn cells(&self, variety: Variety) -> Result<Outcome, CliError> {
        let (counts, lines, dot, value) = match variety {
            Variety::Tnn => {
                let tnn = TnnComplex::new(&self.m);
                let c = tnn.complex();
                let lines: Vec<String> = c.cells().iter().map(|x| format!("{}  {x}", x.dim)).collect();
                (c.counts_by_dim(), lines, c.poset().to_dot("tnn_cells"), self.tnn_value(&tnn))
            }
            Variety::Real => {
                let yv = YvComplex::new(&self.m);
                let c = yv.complex();
                let lines: Vec<String> = c.cells().iter().map(|x| format!("{}  {x}", x.dim)).collect();
                (c.counts_by_dim(), lines, c.poset().to_dot("real_cells"), self.real_value(&yv))
            }
        };
        match self.format() {
            Format::Dot => ok(dot),
            Format::Json => ok(self.document(value)),
            Format::Human => {
                let mut s = String::new();
                let counts: Vec<String> = counts.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "cells by dimension: {}", counts.join("/"));
                for l in lines {
                    let _ = writeln!(s, "{l}");
                }
                ok(s)
            }
        }
    }

    fn full_report(&self) -> Result<Report, CliError> {
        let mut report = Report::new();
        let axioms = check_axioms(self.m.ground_size(), self.m.covectors());
        report.global(
            "covector-axioms",
            axioms.passed(),
            (!axioms.passed()).then(|| format!("{axioms:?}")),
        );
        let cov_thin = self.m.covector_lattice().is_thin()?;
        report.global("covector-lattice-thin", cov_thin, None);
        let lv_thin = self.m.las_vergnas_lattice().is_thin()?;
        report.global("acyclic-lattice-thin", lv_thin, None);
        report.extend(verify_strata_oracle(&self.v, &self.m)?);
        let tnn = TnnComplex::new(&self.m);
        report.extend(tnn.closure_report());
        report.extend(closure_minor_check(&self.v, &self.m)?);
        report.extend(tnn.regularity_report());
        report.extend(tnn.boundary_pairing_check());
        report.extend(tnn.shelling_report()?);
        report.extend(minor_correspondence_check(&self.v, &self.m)?);
        let yv = YvComplex::new(&self.m);
        report.extend(chart_consistency_report(&self.v, &self.m, &yv)?);
        Ok(report)
    }

    fn verify(&self) -> Result<Outcome, CliError> {
        let report = self.full_report()?;
        let status = if report.passed() { 0 } else { 1 };
        let output = match self.format() {
            Format::Dot => return Err(CliError::NoDot("verify")),
            Format::Json => self.document(json!({
                "passed": report.passed(),
                "summary": summarize(&report),
                "checks": report.records,
            })),
            Format::Human => {
                let mut s = String::new();
                for c in summarize(&report) {
                    let verdict = if c.failed == 0 { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "{verdict}  {:<26} {} record(s), {} failed", c.check, c.records, c.failed);
                }
                for f in report.failures() {
                    let _ = writeln!(
                        s,
                        "failed {} on {}: {}",
                        f.check,
                        f.cell.as_deref().unwrap_or("-"),
                        f.witness.as_deref().unwrap_or("-")
                    );
                }
                let _ = writeln!(s, "{}", if report.passed() { "all checks passed" } else { "verification failed" });
                s
            }
        };
        Ok(Outcome { output, status })
    }

    fn betti_pair(&self, variety: Variety) -> Vec<(&'static str, BettiVector)> {
        match variety {
            Variety::Tnn => {
                let tnn = TnnComplex::new(&self.m);
                vec![("total", tnn.complex().betti()), ("boundary", tnn.boundary().betti())]
            }
            Variety::Real => vec![("total", YvComplex::new(&self.m).betti())],
        }
    }

    fn homology(&self, variety: Variety) -> Result<Outcome, CliError> {
        let bettis = self.betti_pair(variety);
        match self.format() {
            Format::Dot => Err(CliError::NoDot("homology")),
            Format::Json => {
                let map: BTreeMap<&str, &BettiVector> = bettis.iter().map(|(k, b)| (*k, b)).collect();
                ok(self.document(json!({ "betti": map })))
            }
            Format::Human => {
                let mut s = String::new();
                for (name, b) in &bettis {
                    let _ = writeln!(s, "{name} Betti numbers {b}");
                }
                ok(s)
            }
        }
    }

    fn shelling(&self, zero_locus_first: bool) -> Result<Outcome, CliError> {
        let tnn = TnnComplex::new(&self.m);
        let boundary = tnn.boundary();
        let order = tnn.shell_boundary(zero_locus_first)?;
        let prop_s = order.as_ref().map(|cells| {
            let idx: Vec<usize> = cells.iter().filter_map(|c| boundary.index_of(c)).collect();
            property_s(&boundary, &idx)
        });
        let status = if order.is_some() && prop_s == Some(true) { 0 } else { 1 };
        let output = match self.format() {
            Format::Dot => return Err(CliError::NoDot("shelling")),
            Format::Json => self.document(json!({
                "zero_locus_first": zero_locus_first,
                "shelling": order,
                "property_s": prop_s,
            })),
            Format::Human => match &order {
                None => "no shelling found\n".to_string(),
                Some(cells) => {
                    let mut s = String::new();
                    let _ = writeln!(s, "shelling of the boundary ({} facets):", cells.len());
                    for c in cells {
                        let _ = writeln!(s, "{c}");
                    }
                    let _ = writeln!(s, "property S: {}", if prop_s == Some(true) { "holds" } else { "fails" });
                    s
                }
            },
        };
        Ok(Outcome { output, status })
    }

    fn export(&self, target: ExportTarget) -> Result<Outcome, CliError> {
        if self.format() == Format::Dot {
            return ok(match target {
                ExportTarget::Flats => dot_of(&self.m.flat_lattice(), "flats"),
                ExportTarget::AcyclicFlats => dot_of(&self.m.las_vergnas_lattice(), "acyclic_flats"),
                ExportTarget::Covectors => dot_of(&self.m.covector_poset(), "covectors"),
                ExportTarget::Tnn => TnnComplex::new(&self.m).complex().poset().to_dot("tnn_cells"),
                ExportTarget::Real => YvComplex::new(&self.m).complex().poset().to_dot("real_cells"),
            });
        }
        let tnn = TnnComplex::new(&self.m);
        let yv = YvComplex::new(&self.m);
        let report = self.full_report()?;
        let doc = self.document(json!({
            "covector_count": self.m.covectors().len(),
            "flats": self.m.flats(),
            "acyclic_flats": self.m.acyclic_flats(),
            "tnn": self.tnn_value(&tnn),
            "real": self.real_value(&yv),
            "betti": {
                "tnn": tnn.complex().betti(),
                "tnn_boundary": tnn.boundary().betti(),
                "real": yv.betti(),
            },
            "passed": report.passed(),
            "checks": report.records,
        }));
        let status = if report.passed() { 0 } else { 1 };
        Ok(Outcome { output: doc, status })
    }
}
