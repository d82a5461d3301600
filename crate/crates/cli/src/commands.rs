//! The five commands. Each returns the JSON to print and whether it passed.

use std::path::Path;
use std::time::Instant;

use qsys_core::functoriality::{check_functor, check_modification, check_transformation, Suite};
use qsys_core::qsystem::{check_bimodule, check_qsystem, complete, find_qsystems, SearchOptions};
use qsys_core::twocat::validate;
use qsys_core::{Report, Tolerance};

use crate::error::{CliError, CliResult, Context};
use crate::export::{document_from_presentation, qsystem_json, to_json_string};
use crate::load::{parse_document, presentation_from_doc, read_document, Workspace};
use crate::schema::*;

/// Settings shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub tol: Tolerance,
    /// Record wall-clock time in the report. Off for byte-stable output.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            timing: true,
        }
    }
}

/// What a command prints: JSON for stdout and a one-line summary.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: String,
    pub pass: bool,
    pub summary: String,
}

/// The structure selected by `check`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    QSystem(String),
    Bimodule(String),
    Functor(String),
    Transformation(String),
    Modification(String),
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn report_json(command: &str, r: &Report, seconds: Option<f64>) -> ReportJson {
    let checks: Vec<CheckJson> = r
        .checks
        .iter()
        .map(|c| CheckJson {
            id: c.id.clone(),
            paper_anchor: c.anchor.clone(),
            residual: finite(c.residual),
            tol: c.tol,
            pass: c.pass,
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.pass).count();
    ReportJson {
        schema_version: SCHEMA_VERSION.into(),
        command: command.into(),
        summary: SummaryJson {
            pass: failed == 0,
            total: checks.len(),
            failed,
            max_residual: finite(r.max_residual()),
        },
        checks,
        timing: seconds.map(|seconds| TimingJson { seconds }),
    }
}

fn summary_line(r: &ReportJson) -> String {
    let s = &r.summary;
    let max = s
        .max_residual
        .map_or_else(|| "inf".to_string(), |x| format!("{x:.3e}"));
    format!(
        "{}: {} ({} checks, {} failed, max residual {max})",
        r.command,
        if s.pass { "PASS" } else { "FAIL" },
        s.total,
        s.failed
    )
}

fn finish(command: &str, r: &Report, start: Instant, opts: &Options) -> Outcome {
    let rj = report_json(
        command,
        r,
        opts.timing.then(|| start.elapsed().as_secs_f64()),
    );
    Outcome {
        json: to_json_string(&rj),
        pass: rj.summary.pass,
        summary: summary_line(&rj),
    }
}

/// Pentagon, triangle, unitarity and unit checks of the presentation.
pub fn cmd_validate(path: &Path, opts: &Options) -> CliResult<Outcome> {
    let start = Instant::now();
    let p = presentation_from_doc(&read_document(path)?)?;
    let r = validate(&p, opts.tol).ctx(|| "validate".into())?;
    Ok(finish("validate", &r, start, opts))
}

pub fn cmd_check(path: &Path, target: &Target, opts: &Options) -> CliResult<Outcome> {
    let start = Instant::now();
    let ws = Workspace::load(path)?;
    let p = &*ws.presentation;
    let tol = opts.tol;
    let r = match target {
        Target::QSystem(name) => check_qsystem(p, &*ws.qsystem(name)?, tol).ctx(|| name.clone())?,
        Target::Bimodule(name) => {
            check_bimodule(p, &*ws.bimodule(name)?, tol).ctx(|| name.clone())?
        }
        Target::Functor(name) => {
            let f = ws.functor(name)?;
            check_functor(&*f.src, &*f.tgt, &*f, tol).ctx(|| name.clone())?
        }
        Target::Transformation(name) => {
            let t = ws.transformation(name)?;
            check_transformation(&*t.f.src, &*t.f.tgt, &*t.f, &*t.g, &*t, tol)
                .ctx(|| name.clone())?
        }
        Target::Modification(name) => {
            let m = ws.modification(name)?;
            let (phi, psi) = (&*m.source, &*m.target);
            if phi.f.name != psi.f.name || phi.g.name != psi.g.name {
                return Err(CliError::schema(
                    name.clone(),
                    "source and target transformations join different functors",
                ));
            }
            check_modification(
                &*phi.f.src,
                &*phi.f.tgt,
                &*phi.f,
                &*phi.g,
                phi,
                psi,
                &m.n,
                tol,
            )
            .ctx(|| name.clone())?
        }
    };
    Ok(finish("check", &r, start, opts))
}

/// Checks the listed Q-systems, completes on them and writes the completed
/// presentation to `out`. The report ends with the validation of the file as
/// written. Nothing is written if a listed Q-system fails its axioms.
pub fn cmd_complete(
    path: &Path,
    names: &[String],
    out: &Path,
    seed: u64,
    opts: &Options,
) -> CliResult<Outcome> {
    let start = Instant::now();
    if names.is_empty() {
        return Err(CliError::Usage("--qsystems needs at least one name".into()));
    }
    let ws = Workspace::load(path)?;
    let p = &ws.presentation;
    let qs = names
        .iter()
        .map(|n| ws.qsystem(n))
        .collect::<CliResult<Vec<_>>>()?;
    let mut r = Report::new();
    for q in &qs {
        r.extend_prefixed(
            &format!("qsystem/{}", q.name),
            check_qsystem(p, q, opts.tol).ctx(|| q.name.clone())?,
        );
    }
    if !r.passed() {
        return Ok(finish("complete", &r, start, opts));
    }
    let c = complete(p, &qs, opts.tol, seed).ctx(|| "complete".into())?;
    let text = to_json_string(&document_from_presentation(&c.presentation));
    std::fs::write(out, &text).map_err(|source| CliError::Write {
        path: out.into(),
        source,
    })?;
    let written = presentation_from_doc(&parse_document(&text, &out.display().to_string())?)?;
    r.extend_prefixed(
        "completion",
        validate(&written, opts.tol).ctx(|| "validate".into())?,
    );
    Ok(finish("complete", &r, start, opts))
}

/// Seeded search for Q-systems on `object` of dimension at most `dim_bound`.
pub fn cmd_find_qsystems(
    path: &Path,
    object: &str,
    dim_bound: f64,
    seed: u64,
    opts: &Options,
) -> CliResult<Outcome> {
    let start = Instant::now();
    if dim_bound.is_nan() || dim_bound < 1.0 {
        return Err(CliError::Usage(format!(
            "--dim-bound must be at least 1, got {dim_bound}"
        )));
    }
    let ws = Workspace::load(path)?;
    let p = &*ws.presentation;
    let b = p
        .object_index(object)
        .map_err(|_| CliError::Usage(format!("no object named `{object}`")))?;
    let search = SearchOptions {
        dim_bound,
        seed,
        tol: opts.tol,
        ..SearchOptions::default()
    };
    let found = find_qsystems(p, b, &search).ctx(|| "find-qsystems".into())?;
    let mut r = Report::new();
    let mut candidates = Vec::new();
    for (k, c) in found.into_iter().enumerate() {
        r.extend_prefixed(
            &format!("candidate/{k}"),
            check_qsystem(p, &c.qsystem, opts.tol).ctx(|| c.qsystem.name.clone())?,
        );
        candidates.push(CandidateJson {
            dimension: c.dimension,
            residual: finite(c.residual),
            start: c.start,
            qsystem: qsystem_json(p, &c.qsystem),
        });
    }
    let report = report_json(
        "find-qsystems",
        &r,
        opts.timing.then(|| start.elapsed().as_secs_f64()),
    );
    let summary = format!(
        "{} ({} candidates)",
        summary_line(&report),
        candidates.len()
    );
    let pass = report.summary.pass;
    let out = SearchJson {
        schema_version: SCHEMA_VERSION.into(),
        object: object.into(),
        dim_bound,
        seed,
        candidates,
        report,
    };
    Ok(Outcome {
        json: to_json_string(&out),
        pass,
        summary,
    })
}

/// Runs a bundled theorem suite. A given file is validated first and its
/// rows are prefixed with `presentation/`.
pub fn cmd_verify_theorems(
    path: Option<&Path>,
    suite: &str,
    seed: u64,
    opts: &Options,
) -> CliResult<Outcome> {
    let start = Instant::now();
    let s = Suite::by_name(suite, opts.tol, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut r = Report::new();
    if let Some(path) = path {
        let p = presentation_from_doc(&read_document(path)?)?;
        r.extend_prefixed(
            "presentation",
            validate(&p, opts.tol).ctx(|| "validate".into())?,
        );
    }
    r.extend(s.run());
    Ok(finish("verify-theorems", &r, start, opts))
}
