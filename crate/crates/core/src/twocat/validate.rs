use super::{OneCell, Presentation};
use crate::category;
use crate::error::Result;
use crate::linalg::{is_unitary, Tolerance};
use crate::report::Report;

const ANCHOR_PENTAGON: &str = "pentagon for the associator";
const ANCHOR_TRIANGLE: &str = "triangle for associator and unitors";
const ANCHOR_UNITARY: &str = "unitary coherence data";
const ANCHOR_UNIT: &str = "unit fusion rules";

/// Checks unit fusion rules, unitarity of every F matrix and unitor, the
/// pentagon on every composable quadruple of simples and the triangle on every
/// composable pair.
pub fn validate(p: &Presentation, tol: Tolerance) -> Result<Report> {
    let t = tol.bound(0.0);
    let mut report = Report::new();
    let ns = p.num_simples();

    let mut violations = 0usize;
    for (a, &u) in p.units().iter().enumerate() {
        for s in 0..ns {
            for k in 0..ns {
                let want = usize::from(k == s);
                if p.simples()[s].src == a && p.n(u, s, k) != want {
                    violations += 1;
                }
                if p.simples()[s].tgt == a && p.n(s, u, k) != want {
                    violations += 1;
                }
            }
        }
    }
    report.push("unit-fusion", ANCHOR_UNIT, violations as f64, t);
    if violations > 0 {
        return Ok(report);
    }

    let mut keys: Vec<_> = p.fsymbols().keys().copied().collect();
    keys.sort();
    for key in keys {
        let r = is_unitary(&p.fsymbols()[&key], tol)?.value;
        report.push(
            format!("unitary/F{}", p.describe_key(key)),
            ANCHOR_UNITARY,
            r,
            t,
        );
    }
    for s in 0..ns {
        let r = (p.lunit(s).norm() - 1.0)
            .abs()
            .max((p.runit(s).norm() - 1.0).abs());
        report.push(
            format!("unitary/unitors({})", p.simples()[s].id),
            ANCHOR_UNITARY,
            r,
            t,
        );
    }
    for &u in p.units() {
        let r = (p.lunit(u) - p.runit(u)).norm();
        report.push(
            format!("unit-unitors({})", p.simples()[u].id),
            ANCHOR_UNIT,
            r,
            t,
        );
    }

    let cells: Vec<OneCell> = (0..ns).map(|s| OneCell::simple(p, s)).collect();
    let composable = |a: usize, b: usize| p.simples()[a].tgt == p.simples()[b].src;
    for x in 0..ns {
        for y in (0..ns).filter(|&y| composable(x, y)) {
            let r = triangle_residual(p, &cells[x], &cells[y])?;
            report.push(
                format!("triangle({},{})", p.simples()[x].id, p.simples()[y].id),
                ANCHOR_TRIANGLE,
                r,
                t,
            );
            for z in (0..ns).filter(|&z| composable(y, z)) {
                for w in (0..ns).filter(|&w| composable(z, w)) {
                    let r = pentagon_residual(p, &cells[x], &cells[y], &cells[z], &cells[w])?;
                    report.push(
                        format!(
                            "pentagon({},{},{},{})",
                            p.simples()[x].id,
                            p.simples()[y].id,
                            p.simples()[z].id,
                            p.simples()[w].id
                        ),
                        ANCHOR_PENTAGON,
                        r,
                        t,
                    );
                }
            }
        }
    }
    Ok(report)
}

pub fn pentagon_residual(
    p: &Presentation,
    w: &OneCell,
    x: &OneCell,
    y: &OneCell,
    z: &OneCell,
) -> Result<f64> {
    category::pentagon(p, w, x, y, z)
}

pub fn triangle_residual(p: &Presentation, x: &OneCell, y: &OneCell) -> Result<f64> {
    category::triangle(p, x, y)
}

#[cfg(test)]
mod tests {
    use super::super::{fibonacci, ising, vec, vec_z2, vec_z3};
    use super::*;

    #[test]
    fn bundled_presentations_validate() {
        for p in [vec(), vec_z2(), vec_z3(), fibonacci(), ising()] {
            let r = validate(&p, Tolerance::default()).unwrap();
            assert!(r.passed(), "{}:\n{r}", p.name());
            assert!(r.max_residual() < 1e-12, "{}", p.name());
        }
    }

    #[test]
    fn vec_is_exact() {
        let r = validate(&vec(), Tolerance::default()).unwrap();
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn negated_ising_entry_breaks_only_pentagons() {
        let p = ising();
        let key = (1, 2, 1, 2);
        let neg = p.fsymbol(1, 2, 1, 2).unwrap().scale(-crate::linalg::ONE);
        let bad = p.with_fsymbol(key, neg).unwrap();
        let r = validate(&bad, Tolerance::default()).unwrap();
        assert!(!r.passed());
        for c in &r.checks {
            if c.id.starts_with("pentagon") {
                continue;
            }
            assert!(c.pass, "{} should still pass", c.id);
        }
        let worst = r
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.residual)
            .fold(0.0, f64::max);
        assert!(worst > 0.1);
    }
}
