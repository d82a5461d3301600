//! Residual reports.

use std::fmt;

/// One checked identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// An ordered list of checks; passes iff every check does.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a residual; NaN never passes.
    pub fn push(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        residual: f64,
        tol: f64,
    ) {
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            residual,
            tol,
            pass: residual <= tol,
        });
    }

    /// Records a failure that has no numeric residual.
    pub fn push_failure(&mut self, id: impl Into<String>, anchor: impl Into<String>, tol: f64) {
        self.push(id, anchor, f64::INFINITY, tol);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every id prefixed by `prefix/`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{prefix}/{}", c.id);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<48} residual {:.3e} (tol {:.1e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.residual,
                c.tol
            )?;
        }
        Ok(())
    }
}
