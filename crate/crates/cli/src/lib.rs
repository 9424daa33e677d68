//! Command-line front end for `dhpath-core`.
//!
//! [`run`] takes an argument list and returns the exit code and output text,
//! so the binary and the tests share one code path.

pub mod document;
pub mod fixtures;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use dhpath_core::complex::{check_pc_morphism, render_labels, PathComplexView};
use dhpath_core::homotopy::{homotopic, DEFAULT_CAP};
use dhpath_core::laws::{check_law, homotopy_invariance, Law, LawReport};
use dhpath_core::linalg::DenseMatrix;
use dhpath_core::model::check_dh_morphism;
use dhpath_core::omega::{betti_from_omega, build_omega, induced_homology_map_with, OmegaComplex};
use dhpath_core::theories::theory_view;
use dhpath_core::{DHMorphism, DirectedHypergraph, Field, Scalar, TheoryKind, VertexId};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::document::{parse_document, Document, DocumentError, DocumentKind};
use crate::fixtures::{fixture, FixtureEntry, FIXTURES};
use crate::report::{InputDigest, LawOutcome, LevelDump, Payload, Report, StepDump, TheoryCheck, ENGINE_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dhpath", version, about = "Path homology of directed hypergraphs")]
pub struct Cli {
    /// Print the JSON report instead of the human-readable summary.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// Allowed paths, Omega bases and boundary matrices per dimension.
    Basis,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a document.
    Validate { input: String },

    /// Betti numbers of one homology theory.
    Compute {
        input: String,
        #[arg(long)]
        theory: TheoryKind,
        /// Density c for connective (default 1) or window size q for nondirected (default 2).
        #[arg(long)]
        density: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// "Q" or "Fp:<prime>".
        #[arg(long, default_value = "Q")]
        field: Field,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },

    /// Validate a vertex map and optionally print induced homology maps.
    Morphism {
        source: String,
        target: String,
        map: String,
        /// Print induced homology matrices in dimensions 0..=N.
        #[arg(long)]
        induced_dim: Option<usize>,
        /// Check a single theory; all four functorial ones otherwise.
        #[arg(long)]
        theory: Option<TheoryKind>,
        #[arg(long)]
        density: Option<usize>,
        #[arg(long, default_value = "Q")]
        field: Field,
    },

    /// Search for a chain of one-step homotopies between two morphisms.
    Homotopy {
        source: String,
        target: String,
        f: String,
        g: String,
        #[arg(long, default_value_t = 3)]
        max_steps: usize,
        /// Largest number of candidate vertex maps the search may enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP as u64)]
        cap: u64,
    },

    /// Check structural laws of the theories on one input.
    Laws {
        input: String,
        /// Run a single law; all of them otherwise.
        #[arg(long)]
        law: Option<Law>,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        /// Morphism enumeration cap for the homotopy-invariance law.
        #[arg(long, default_value_t = DEFAULT_CAP as u64)]
        cap: u64,
    },

    /// List bundled inputs.
    Fixtures,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Usage(String),

    #[error("{name}: {source}")]
    Document { name: String, source: DocumentError },

    #[error("{name}: expected {expected}, found a {found} document")]
    WrongKind {
        name: String,
        expected: &'static str,
        found: DocumentKind,
    },

    #[error("{name} is not a morphism: {source}")]
    NotMorphism { name: String, source: dhpath_core::Error },

    #[error(transparent)]
    Engine(#[from] dhpath_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if is_resource_cap(e) => EXIT_CAP,
            _ => EXIT_INVALID,
        }
    }
}

fn is_resource_cap(e: &dhpath_core::Error) -> bool {
    use dhpath_core::Error::*;
    matches!(e, CapExceeded { .. } | ProductTooLarge { .. } | Truncation { .. })
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A finished command: its report, the human summary and the exit code.
#[derive(Debug, Clone)]
pub struct Executed {
    pub report: Report,
    pub human: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome {
                code: e.exit_code(),
                stdout,
                stderr,
            };
        }
    };
    match execute(&cli) {
        Ok(done) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&done.report).expect("reports always serialize");
                s.push('\n');
                s
            } else {
                done.human
            };
            Outcome {
                code: done.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn execute(cli: &Cli) -> Result<Executed, CliError> {
    match &cli.command {
        Command::Validate { input } => validate(input),
        Command::Compute {
            input,
            theory,
            density,
            max_dim,
            field,
            emit,
        } => compute(input, *theory, *density, *max_dim, *field, *emit),
        Command::Morphism {
            source,
            target,
            map,
            induced_dim,
            theory,
            density,
            field,
        } => morphism(source, target, map, *induced_dim, *theory, *density, *field),
        Command::Homotopy {
            source,
            target,
            f,
            g,
            max_steps,
            cap,
        } => homotopy(source, target, f, g, *max_steps, *cap),
        Command::Laws {
            input,
            law,
            max_length,
            cap,
        } => laws(input, *law, *max_length, *cap),
        Command::Fixtures => Ok(list_fixtures()),
    }
}

struct Input {
    name: String,
    text: String,
}

impl Input {
    fn digest(&self) -> InputDigest {
        InputDigest::of(&self.name, &self.text)
    }

    fn document(&self) -> Result<Document, CliError> {
        parse_document(&self.text).map_err(|source| CliError::Document {
            name: self.name.clone(),
            source,
        })
    }

    /// A directed hypergraph, or a digraph read as one with singleton arrows.
    fn hypergraph(&self) -> Result<DirectedHypergraph, CliError> {
        match self.document()? {
            Document::DirectedHypergraph(g) => Ok(g),
            Document::Digraph(d) => Ok(d.to_hypergraph()?),
            other => Err(self.wrong_kind("a directed hypergraph", other.kind())),
        }
    }

    fn vertex_map(&self) -> Result<BTreeMap<VertexId, VertexId>, CliError> {
        match self.document()? {
            Document::Morphism(m) => Ok(m),
            other => Err(self.wrong_kind("a vertex map", other.kind())),
        }
    }

    fn wrong_kind(&self, expected: &'static str, found: DocumentKind) -> CliError {
        CliError::WrongKind {
            name: self.name.clone(),
            expected,
            found,
        }
    }
}

/// Reads a file, falling back to a bundled fixture of that name.
fn load(name: &str) -> Result<Input, CliError> {
    let text = if Path::new(name).is_file() {
        std::fs::read_to_string(name).map_err(|e| CliError::Input(format!("{name}: {e}")))?
    } else if let Some(f) = fixture(name) {
        f.text.to_string()
    } else {
        return Err(CliError::Input(format!("{name}: no such file or bundled fixture")));
    };
    Ok(Input {
        name: name.to_string(),
        text,
    })
}

fn report(command: Vec<String>, inputs: &[&Input], field: Field, truncation: Option<usize>, result: Payload) -> Report {
    Report {
        command,
        inputs: inputs.iter().map(|i| i.digest()).collect(),
        engine_version: ENGINE_VERSION.to_string(),
        field,
        truncation,
        result,
    }
}

fn args(parts: &[&dyn ToString]) -> Vec<String> {
    parts.iter().map(|p| p.to_string()).collect()
}

fn validate(name: &str) -> Result<Executed, CliError> {
    let input = load(name)?;
    let doc = input.document()?;
    let (vertices, edges) = doc.size();
    let human = match doc.kind() {
        DocumentKind::Morphism => format!("{name}: valid morphism document ({vertices} entries)\n"),
        kind => format!("{name}: valid {kind} ({vertices} vertices, {edges} edges)\n"),
    };
    let payload = Payload::Validate {
        document: doc.kind(),
        vertices,
        edges,
    };
    Ok(Executed {
        report: report(args(&[&"validate", &name]), &[&input], Field::Rational, None, payload),
        human,
        code: EXIT_OK,
    })
}

/// The density a theory actually uses, with its default filled in.
fn effective_density(kind: TheoryKind, density: Option<usize>) -> Result<Option<usize>, CliError> {
    let d = match kind {
        TheoryKind::Connective => Some(density.unwrap_or(1)),
        TheoryKind::Nondirected => Some(density.unwrap_or(2)),
        TheoryKind::Bold | TheoryKind::Natural => None,
    };
    if d == Some(0) {
        return Err(dhpath_core::Error::InvalidDensity.into());
    }
    Ok(d)
}

fn non_functorial(kind: TheoryKind, density: Option<usize>) -> bool {
    kind == TheoryKind::Connective && density.is_some_and(|c| c >= 2)
}

fn compute(
    name: &str,
    theory: TheoryKind,
    density: Option<usize>,
    max_dim: usize,
    field: Field,
    emit: Option<Emit>,
) -> Result<Executed, CliError> {
    let input = load(name)?;
    let g = input.hypergraph()?;
    let d = effective_density(theory, density)?;
    let view = theory_view(&g, theory, d.unwrap_or(1), max_dim + 1)?;
    let omega = build_omega(&view, max_dim, field)?;
    let table = betti_from_omega(&omega)?;
    let betti = table.betti();

    let mut notes = Vec::new();
    if non_functorial(theory, d) {
        notes.push(format!(
            "connective density {} is not functorial; morphism and homotopy checks use density 1",
            d.unwrap_or(1)
        ));
    }
    if d.is_none() && density.is_some() {
        notes.push(format!("--density is ignored by the {theory} theory"));
    }
    let basis = emit.map(|_| dump_levels(&view, &omega));

    let mut human = String::new();
    let density_text = match (theory, d) {
        (TheoryKind::Connective, Some(c)) => format!(", density {c}"),
        (TheoryKind::Nondirected, Some(q)) => format!(", window {q}"),
        _ => String::new(),
    };
    let _ = writeln!(
        human,
        "{name}: {theory} homology{density_text}, field {field}, paths up to length {}",
        table.truncation
    );
    let _ = writeln!(human, "{:>4} {:>8} {:>6} {:>7} {:>6}", "dim", "allowed", "omega", "rank d", "betti");
    for row in &table.rows {
        let _ = writeln!(
            human,
            "{:>4} {:>8} {:>6} {:>7} {:>6}",
            row.dim, row.allowed, row.dim_omega, row.rank_boundary, row.betti
        );
    }
    let _ = writeln!(human, "betti = {}", tuple(&betti));
    if let Some(levels) = &basis {
        for level in levels {
            let _ = writeln!(human, "dimension {}", level.dim);
            let _ = writeln!(human, "  allowed: {}", level.allowed.join(" "));
            let _ = writeln!(human, "  omega basis:");
            for v in &level.omega_basis {
                let _ = writeln!(human, "    {v}");
            }
            if level.dim > 0 {
                let _ = writeln!(human, "  boundary (rows: omega_{}, columns: omega_{}):", level.dim - 1, level.dim);
                for row in &level.boundary {
                    let _ = writeln!(human, "    [{}]", row.join(" "));
                }
            }
        }
    }
    for note in &notes {
        let _ = writeln!(human, "note: {note}");
    }

    let mut command = args(&[&"compute", &name, &"--theory", &theory]);
    if let Some(d) = d {
        command.extend(args(&[&"--density", &d]));
    }
    command.extend(args(&[&"--max-dim", &max_dim, &"--field", &field]));
    if emit.is_some() {
        command.extend(args(&[&"--emit", &"basis"]));
    }
    let truncation = Some(table.truncation);
    let payload = Payload::Compute {
        theory,
        density: d,
        betti,
        table,
        notes,
        basis,
    };
    Ok(Executed {
        report: report(command, &[&input], field, truncation, payload),
        human,
        code: EXIT_OK,
    })
}

fn tuple(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn dump_levels(view: &PathComplexView, omega: &OmegaComplex) -> Vec<LevelDump> {
    (0..=omega.max_dim)
        .map(|n| {
            let level = omega.level(n);
            let allowed: Vec<String> = level.allowed.iter().map(|p| view.render(p)).collect();
            LevelDump {
                dim: n,
                omega_basis: level.omega_basis.columns().iter().map(|c| render_chain(c, &allowed)).collect(),
                allowed,
                boundary: level.boundary.to_string_rows(),
            }
        })
        .collect()
}

/// A chain as a signed sum of named generators, e.g. `(1 2 3) - 2(1 2 4)`.
fn render_chain(coeffs: &[Scalar], names: &[String]) -> String {
    let mut out = String::new();
    for (x, name) in coeffs.iter().zip(names) {
        if x.is_zero() {
            continue;
        }
        let sign = if x.is_negative() { "-" } else { "+" };
        let magnitude = x.abs();
        let factor = if magnitude.is_one() { String::new() } else { magnitude.to_string() };
        if out.is_empty() {
            let lead = if x.is_negative() { "-" } else { "" };
            let _ = write!(out, "{lead}{factor}{name}");
        } else {
            let _ = write!(out, " {sign} {factor}{name}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn matrix_rows(m: &DenseMatrix) -> Vec<Vec<String>> {
    m.to_string_rows()
}

fn render_matrix(rows: &[Vec<String>], cols: usize) -> String {
    if rows.is_empty() || cols == 0 {
        return format!("{}x{} (zero space)", rows.len(), cols);
    }
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(" "))).collect();
    inner.join(" ")
}

fn describe_map(map: &BTreeMap<VertexId, VertexId>) -> String {
    let parts: Vec<String> = map.iter().map(|(v, w)| format!("{v}↦{w}")).collect();
    format!("[{}]", parts.join(" "))
}

fn string_map(map: &BTreeMap<VertexId, VertexId>) -> BTreeMap<String, String> {
    map.iter().map(|(v, w)| (v.to_string(), w.to_string())).collect()
}

fn as_morphism(
    g: &Arc<DirectedHypergraph>,
    h: &Arc<DirectedHypergraph>,
    map: &BTreeMap<VertexId, VertexId>,
    name: &str,
) -> Result<DHMorphism, CliError> {
    check_dh_morphism(g.clone(), h.clone(), map).map_err(|source| CliError::NotMorphism {
        name: name.to_string(),
        source,
    })
}

fn morphism(
    source: &str,
    target: &str,
    map_spec: &str,
    induced_dim: Option<usize>,
    theory: Option<TheoryKind>,
    density: Option<usize>,
    field: Field,
) -> Result<Executed, CliError> {
    let (si, ti, mi) = (load(source)?, load(target)?, load(map_spec)?);
    let g = Arc::new(si.hypergraph()?);
    let h = Arc::new(ti.hypergraph()?);
    let map = mi.vertex_map()?;
    let f = as_morphism(&g, &h, &map, map_spec)?;

    let mut human = String::new();
    let images: Vec<String> = f.edge_map.iter().map(ToString::to_string).collect();
    let _ = writeln!(human, "valid morphism {source} -> {target} (arrow images: {})", images.join(" "));

    let kinds: Vec<TheoryKind> = match (theory, induced_dim) {
        (Some(k), _) => vec![k],
        (None, Some(_)) => TheoryKind::ALL.to_vec(),
        (None, None) => Vec::new(),
    };
    let max_dim = induced_dim.unwrap_or(0);
    let length = max_dim + 1;
    let mut code = EXIT_OK;
    let mut checks = Vec::new();
    for kind in kinds {
        let d = effective_density(kind, density)?;
        let sv = theory_view(&g, kind, d.unwrap_or(1), length)?;
        let tv = theory_view(&h, kind, d.unwrap_or(1), length)?;
        let vertex_map = match kind {
            TheoryKind::Natural => f.natural_map(),
            _ => f.vertex_map.clone(),
        };
        let heading = match (kind, d) {
            (TheoryKind::Connective, Some(c)) => format!("{kind} (density {c})"),
            (TheoryKind::Nondirected, Some(q)) => format!("{kind} (window {q})"),
            _ => kind.to_string(),
        };
        let mut check = TheoryCheck {
            theory: kind,
            density: d,
            morphism: false,
            witness: None,
            warning: None,
            induced: Vec::new(),
        };
        match check_pc_morphism(&sv, &tv, &vertex_map)? {
            Err(violation) => {
                let _ = writeln!(human, "{heading}: not a morphism of path complexes; {violation}");
                check.witness = Some(render_labels(&violation.path));
                if non_functorial(kind, d) {
                    let warning = format!(
                        "connective density {} is not functorial; witness path {}",
                        d.unwrap_or(1),
                        render_labels(&violation.path)
                    );
                    let _ = writeln!(human, "warning: {warning}");
                    check.warning = Some(warning);
                } else {
                    code = EXIT_INVALID;
                }
            }
            Ok(m) => {
                check.morphism = true;
                let _ = writeln!(human, "{heading}: morphism of path complexes");
                if non_functorial(kind, d) {
                    let warning = format!(
                        "connective density {} is not functorial in general; this map happens to preserve paths",
                        d.unwrap_or(1)
                    );
                    let _ = writeln!(human, "warning: {warning}");
                    check.warning = Some(warning);
                }
                if induced_dim.is_some() {
                    let so = build_omega(&sv, max_dim, field)?;
                    let to = build_omega(&tv, max_dim, field)?;
                    for n in 0..=max_dim {
                        let hm = induced_homology_map_with(&m, &so, &to, n)?;
                        let rows = matrix_rows(&hm.matrix);
                        let _ = writeln!(human, "  H_{n}: {}", render_matrix(&rows, hm.matrix.cols()));
                        check.induced.push(rows);
                    }
                }
            }
        }
        checks.push(check);
    }

    let mut command = args(&[&"morphism", &source, &target, &map_spec]);
    if let Some(n) = induced_dim {
        command.extend(args(&[&"--induced-dim", &n]));
    }
    if let Some(k) = theory {
        command.extend(args(&[&"--theory", &k]));
    }
    if let Some(d) = density {
        command.extend(args(&[&"--density", &d]));
    }
    command.extend(args(&[&"--field", &field]));
    let truncation = (!checks.is_empty()).then_some(length);
    let payload = Payload::Morphism {
        edge_map: f.edge_map.clone(),
        theories: checks,
    };
    Ok(Executed {
        report: report(command, &[&si, &ti, &mi], field, truncation, payload),
        human,
        code,
    })
}

fn homotopy(source: &str, target: &str, f_spec: &str, g_spec: &str, max_steps: usize, cap: u64) -> Result<Executed, CliError> {
    let (si, ti, fi, gi) = (load(source)?, load(target)?, load(f_spec)?, load(g_spec)?);
    let g = Arc::new(si.hypergraph()?);
    let h = Arc::new(ti.hypergraph()?);
    let f0 = as_morphism(&g, &h, &fi.vertex_map()?, f_spec)?;
    let f1 = as_morphism(&g, &h, &gi.vertex_map()?, g_spec)?;
    let witness = homotopic(&f0, &f1, max_steps, u128::from(cap))?;

    let mut human = String::new();
    let (found, start, steps) = match &witness {
        Some(w) => {
            let _ = writeln!(human, "homotopic: {}-step witness", w.len());
            let _ = writeln!(human, "  start   {}", describe_map(&w.start.vertex_map));
            let steps: Vec<StepDump> = w
                .steps
                .iter()
                .map(|s| StepDump {
                    orientation: s.orientation.to_string(),
                    to: string_map(&s.to.vertex_map),
                })
                .collect();
            for (i, s) in w.steps.iter().enumerate() {
                let _ = writeln!(human, "  step {} ({}): {}", i + 1, s.orientation, describe_map(&s.to.vertex_map));
            }
            (true, Some(string_map(&w.start.vertex_map)), steps)
        }
        None => {
            let _ = writeln!(human, "none within bound: no chain of at most {max_steps} one-step homotopies");
            (false, None, Vec::new())
        }
    };
    let command = args(&[&"homotopy", &source, &target, &f_spec, &g_spec, &"--max-steps", &max_steps, &"--cap", &cap]);
    let payload = Payload::Homotopy {
        found,
        max_steps,
        cap,
        start,
        steps,
    };
    Ok(Executed {
        report: report(command, &[&si, &ti, &fi, &gi], Field::Rational, None, payload),
        human,
        code: EXIT_OK,
    })
}

fn run_law(g: &DirectedHypergraph, law: Law, max_length: usize, cap: u64) -> dhpath_core::Result<LawReport> {
    match law {
        Law::HomotopyInvariance => {
            let g = Arc::new(g.clone());
            homotopy_invariance(&g, &g, max_length.saturating_sub(1), u128::from(cap))
        }
        _ => check_law(g, law, max_length),
    }
}

fn laws(name: &str, law: Option<Law>, max_length: usize, cap: u64) -> Result<Executed, CliError> {
    if max_length == 0 {
        return Err(CliError::Usage("--max-length must be at least 1".to_string()));
    }
    let input = load(name)?;
    let g = input.hypergraph()?;
    let selected: Vec<Law> = law.map_or_else(|| Law::ALL.to_vec(), |l| vec![l]);
    // Checks are independent; output order follows `selected`.
    let results: Vec<dhpath_core::Result<LawReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&l| {
                let g = &g;
                scope.spawn(move || run_law(g, l, max_length, cap))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("law check panicked")).collect()
    });

    let mut human = String::new();
    let mut outcomes = Vec::new();
    let mut code = EXIT_OK;
    for (l, result) in selected.iter().zip(results) {
        match result {
            Ok(r) => {
                let verdict = if r.holds { "holds" } else { "FAILS" };
                let _ = writeln!(human, "{l}: {verdict}: {}", r.detail);
                if let Some(c) = &r.counterexample {
                    let label = if r.holds { "witness" } else { "counterexample" };
                    let _ = writeln!(human, "  {label}: {c}");
                }
                outcomes.push(LawOutcome {
                    law: l.to_string(),
                    report: Some(r),
                    skipped: None,
                });
            }
            Err(e) if is_resource_cap(&e) => {
                let _ = writeln!(human, "{l}: skipped: {e}");
                code = EXIT_CAP;
                outcomes.push(LawOutcome {
                    law: l.to_string(),
                    report: None,
                    skipped: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut command = args(&[&"laws", &name]);
    if let Some(l) = law {
        command.extend(args(&[&"--law", &l]));
    }
    command.extend(args(&[&"--max-length", &max_length, &"--cap", &cap]));
    let payload = Payload::Laws {
        max_length,
        results: outcomes,
    };
    Ok(Executed {
        report: report(command, &[&input], Field::Rational, Some(max_length), payload),
        human,
        code,
    })
}

fn list_fixtures() -> Executed {
    let mut human = String::new();
    for f in &FIXTURES {
        let _ = writeln!(human, "{:<12} {:<22} {}", f.name, f.file, f.description);
    }
    let payload = Payload::Fixtures {
        fixtures: FIXTURES.iter().map(FixtureEntry::from).collect(),
    };
    Executed {
        report: report(vec!["fixtures".to_string()], &[], Field::Rational, None, payload),
        human,
        code: EXIT_OK,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    #[test]
    fn chains_render_with_signs_and_factors() {
        let names = ["(1 2)".to_string(), "(2 3)".to_string(), "(1 3)".to_string()];
        assert_eq!(render_chain(&[q(1, 1), q(0, 1), q(-1, 1)], &names), "(1 2) - (1 3)");
        assert_eq!(render_chain(&[q(0, 1), q(-2, 1), q(1, 2)], &names), "-2(2 3) + 1/2(1 3)");
        assert_eq!(render_chain(&[q(0, 1), q(0, 1), q(0, 1)], &names), "0");
    }

    #[test]
    fn resource_errors_map_to_exit_three() {
        let cap = CliError::Engine(dhpath_core::Error::CapExceeded { count: 9, cap: 1 });
        assert_eq!(cap.exit_code(), EXIT_CAP);
        assert_eq!(CliError::Engine(dhpath_core::Error::InvalidDensity).exit_code(), EXIT_INVALID);
        assert_eq!(CliError::Input("x".into()).exit_code(), EXIT_INVALID);
    }
}
