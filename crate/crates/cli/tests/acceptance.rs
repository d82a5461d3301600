//! Acceptance criteria, one line each. Runs without the libtest harness so
//! that every line is printed even when all criteria pass.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use qsys_cli::{cmd_complete, cmd_validate, Options, ReportJson, Workspace};
use qsys_core::functoriality::Suite;
use qsys_core::qsystem::{
    check_bimodule, check_qsystem, condensation_from_qsystem, group_algebra, rel_tensor,
    sep_projector,
};
use qsys_core::twocat::{self, validate};
use qsys_core::{Report, Tolerance, TwoCell, C64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn opts() -> Options {
    Options {
        tol: Tolerance::default(),
        timing: false,
    }
}

fn max_where(r: &Report, pred: impl Fn(&str) -> bool) -> (usize, f64) {
    let rows: Vec<_> = r.checks.iter().filter(|c| pred(&c.id)).collect();
    (
        rows.len(),
        rows.iter().map(|c| c.residual).fold(0.0, f64::max),
    )
}

fn bundled_presentations_validate() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for f in [
        "vec.json",
        "vec_z2.json",
        "vec_z3.json",
        "fibonacci.json",
        "ising.json",
    ] {
        let out = cmd_validate(&data(f), &opts()).map_err(|e| e.to_string())?;
        let r: ReportJson = serde_json::from_str(&out.json).map_err(|e| e.to_string())?;
        let m = r.summary.max_residual.unwrap_or(f64::INFINITY);
        ensure(out.pass && m < 1e-9, format!("{f}: {}", out.summary))?;
        worst = worst.max(m);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("took {secs:.2} s"))?;

    let p = twocat::ising();
    let (s, q) = (
        p.simple_index("sigma").unwrap(),
        p.simple_index("psi").unwrap(),
    );
    let key = (s, q, s, q);
    let negated = p
        .with_fsymbol(
            key,
            p.fsymbol(s, q, s, q).unwrap().scale(C64::new(-1.0, 0.0)),
        )
        .unwrap();
    let before = validate(&p, Tolerance::default()).unwrap();
    let after = validate(&negated, Tolerance::default()).unwrap();
    let flipped: Vec<&str> = before
        .checks
        .iter()
        .zip(&after.checks)
        .filter(|(a, b)| a.pass != b.pass)
        .map(|(_, b)| b.id.as_str())
        .collect();
    ensure(!flipped.is_empty(), "negating F(σ,ψ,σ;ψ) changed nothing")?;
    ensure(
        flipped.iter().all(|id| id.starts_with("pentagon")),
        format!("non-pentagon rows flipped: {flipped:?}"),
    )?;
    Ok(format!(
        "max residual {worst:.1e} in {secs:.2} s; negation flips {} pentagon rows only",
        flipped.len()
    ))
}

fn group_algebra_is_a_qsystem() -> Outcome {
    let ws = Workspace::load(&data("vec_z2.json")).map_err(|e| e.to_string())?;
    let q = ws.qsystem("CZ2").map_err(|e| e.to_string())?;
    let p = &ws.presentation;
    let (m0, i0) = (0.5f64.sqrt(), 2f64.sqrt());
    let m_dev =
        q.m.blocks
            .iter()
            .flat_map(|b| b.as_slice().iter())
            .map(|z| (z - C64::new(m0, 0.0)).norm())
            .fold(0.0, f64::max);
    let i_dev = (q.i.blocks[p.unit_simple(0)][(0, 0)] - C64::new(i0, 0.0)).norm();
    ensure(
        m_dev < 1e-15 && i_dev < 1e-15,
        format!("data differs from the closed form by {m_dev:e}, {i_dev:e}"),
    )?;
    let good = check_qsystem(p, &q, Tolerance::default()).unwrap();
    ensure(good.passed(), format!("axioms fail:\n{good}"))?;
    let scaled = group_algebra(p, 0, 1.1).unwrap();
    let bad = check_qsystem(p, &scaled, Tolerance::default()).unwrap();
    let q4 = bad.get("Q4").unwrap();
    ensure(
        !q4.pass && q4.residual > 0.1,
        format!("scaled Q4 residual {:e}", q4.residual),
    )?;
    Ok(format!(
        "Q1-Q4 residual {:.1e}; scaled m has Q4 residual {:.3}",
        good.max_residual(),
        q4.residual
    ))
}

fn relative_tensor_products_split() -> Outcome {
    let tol = Tolerance::default();
    let mut worst = 0.0f64;
    let pairs = 24;
    for seed in 0..pairs {
        let (p, cat) = if seed % 2 == 0 {
            common::z2_cat(0)
        } else {
            common::z3_cat(0)
        };
        let (x, y) = common::random_pair(&cat, seed);
        let proj = sep_projector(&p, &x, &y).unwrap();
        let rt = rel_tensor(&p, &x, &y, tol).map_err(|e| format!("pair {seed}: {e}"))?;
        let u = &rt.u;
        let res = [
            proj.dagger().distance(&proj),
            proj.after(&proj).unwrap().distance(&proj),
            u.dagger().after(u).unwrap().distance(&proj),
            u.after(&u.dagger())
                .unwrap()
                .distance(&TwoCell::identity(&rt.result.x)),
        ];
        let r = check_bimodule(&p, &rt.result, tol).unwrap();
        ensure(r.passed(), format!("pair {seed}: B1-B4 fail\n{r}"))?;
        let m = res.iter().copied().fold(r.max_residual(), f64::max);
        ensure(m < 1e-9, format!("pair {seed}: residual {m:e}"))?;
        worst = worst.max(m);
    }
    Ok(format!("{pairs} pairs, max residual {worst:.1e}"))
}

fn complete_z2(dir: &tempfile::TempDir) -> Result<(ReportJson, qsys_cli::Document), String> {
    let out = dir.path().join("completed.json");
    let o = cmd_complete(
        &data("vec_z2.json"),
        &["1_*".into(), "CZ2".into()],
        &out,
        0,
        &opts(),
    )
    .map_err(|e| e.to_string())?;
    let r: ReportJson = serde_json::from_str(&o.json).map_err(|e| e.to_string())?;
    let doc = qsys_cli::read_document(&out).map_err(|e| e.to_string())?;
    Ok((r, doc))
}

fn completed_associator_is_coherent() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (r, _) = complete_z2(&dir)?;
    let rows = |kind: &str| -> (usize, f64) {
        let sel: Vec<_> = r
            .checks
            .iter()
            .filter(|c| c.id.starts_with(&format!("completion/{kind}")))
            .collect();
        (
            sel.len(),
            sel.iter()
                .map(|c| c.residual.unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max),
        )
    };
    let (np, mp) = rows("pentagon");
    let (nt, mt) = rows("triangle");
    ensure(np > 0 && nt > 0, "no pentagon or triangle rows")?;
    ensure(
        mp < 1e-8 && mt < 1e-8,
        format!("pentagon {mp:e}, triangle {mt:e}"),
    )?;
    Ok(format!(
        "{np} pentagons (max {mp:.1e}), {nt} triangles (max {mt:.1e})"
    ))
}

fn census_of_completion() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (r, doc) = complete_z2(&dir)?;
    let mut census = Vec::new();
    for a in &doc.objects {
        for b in &doc.objects {
            census.push(
                doc.simples
                    .iter()
                    .filter(|s| &s.src == a && &s.tgt == b)
                    .count(),
            );
        }
    }
    ensure(census == [2, 1, 1, 2], format!("census {census:?}"))?;
    ensure(r.summary.pass, "completion report fails")?;
    let v = cmd_validate(&dir.path().join("completed.json"), &opts()).map_err(|e| e.to_string())?;
    ensure(v.pass, v.summary)?;
    Ok(format!("census {census:?}; output validates"))
}

fn suite() -> Suite {
    Suite::z2(Tolerance::default(), 0).unwrap()
}

fn strict_functoriality() -> Outcome {
    let r = suite().run_strict().map_err(|e| e.to_string())?;
    let (n, m) = max_where(&r, |id| id.contains("/strict/"));
    ensure(n > 0 && n == r.len(), "unexpected rows")?;
    ensure(m < 1e-12, format!("deviation {m:e}"))?;
    Ok(format!("{n} rows, max deviation {m:.1e}"))
}

fn transported_structures() -> Outcome {
    let r = suite().run_qsys().map_err(|e| e.to_string())?;
    ensure(
        r.passed() && r.max_residual() < 1e-9,
        format!(
            "{}",
            Report {
                checks: r.failures().cloned().collect()
            }
        ),
    )?;
    let mut counts = Vec::new();
    for prefix in [
        "qsys-functor/",
        "qsys-transformation/",
        "qsys-modification/",
        "qsys-tensorator/",
    ] {
        let (n, _) = max_where(&r, |id| id.starts_with(prefix));
        ensure(n > 0, format!("no {prefix} rows"))?;
        counts.push(n);
    }
    let (u, _) = max_where(&r, |id| {
        id.starts_with("qsys-transformation/") && id.contains("unitary")
    });
    ensure(u > 0, "no unitarity rows for transported components")?;
    Ok(format!(
        "functor/transformation/modification/tensorator rows {counts:?}, max residual {:.1e}",
        r.max_residual()
    ))
}

fn psi_for_every_functor() -> Outcome {
    let s = suite();
    let r = s.run_psi().map_err(|e| e.to_string())?;
    ensure(
        r.passed(),
        format!(
            "{}",
            Report {
                checks: r.failures().cloned().collect()
            }
        ),
    )?;
    for f in s.functors() {
        let (n, _) = max_where(&r, |id| id.starts_with(&format!("psi/{}/", f.name)));
        ensure(n > 0, format!("no rows for {}", f.name))?;
    }
    Ok(format!(
        "{} functors, {} rows, max residual {:.1e}",
        s.functors().len(),
        r.len(),
        r.max_residual()
    ))
}

fn condensations() -> Outcome {
    let s = suite();
    let mut qs = Suite::closure(&s.z2_list().unwrap(), &[&s.sign]).unwrap();
    let triv = Suite::trivial_list(&s.vec).unwrap();
    let mut worst = 0.0f64;
    let n = qs.len() + triv.len();
    for (p, q) in qs
        .drain(..)
        .map(|q| (&s.z2, q))
        .chain(triv.into_iter().map(|q| (&s.vec, q)))
    {
        let c =
            condensation_from_qsystem(p, &q, Tolerance::default()).map_err(|e| e.to_string())?;
        let ed = c
            .epsilon
            .cell
            .after(&c.delta.cell)
            .unwrap()
            .distance(&TwoCell::identity(&q.q));
        ensure(ed < 1e-12, format!("{}: ε⋆δ off by {ed:e}", q.name))?;
        ensure(
            c.delta.cell == c.epsilon.cell.dagger(),
            format!("{}: δ is not exactly ε†", q.name),
        )?;
        worst = worst.max(ed);
    }
    Ok(format!(
        "{n} Q-systems, ε⋆δ deviation {worst:.1e}, δ = ε† exactly"
    ))
}

fn qsys(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_qsys"))
        .args(args)
        .env_remove("QSYS_TOL")
        .output()
        .unwrap();
    out.stdout
}

fn deterministic_cli() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let input = data("vec_z2.json");
    let mut files = Vec::new();
    let mut reports = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.json"));
        reports.push(qsys(&[
            "complete",
            input.to_str().unwrap(),
            "--qsystems",
            "1_*,CZ2",
            "--out",
            out.to_str().unwrap(),
            "--seed",
            "5",
            "--no-timing",
        ]));
        files.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(
        !files[0].is_empty() && files[0] == files[1],
        "completed presentations differ",
    )?;
    ensure(reports[0] == reports[1], "complete reports differ")?;
    let a = qsys(&[
        "verify-theorems",
        "--suite",
        "z2",
        "--seed",
        "5",
        "--no-timing",
    ]);
    let b = qsys(&[
        "verify-theorems",
        "--suite",
        "z2",
        "--seed",
        "5",
        "--no-timing",
    ]);
    ensure(!a.is_empty() && a == b, "verify-theorems reports differ")?;
    Ok(format!(
        "complete: {} bytes, verify-theorems: {} bytes, identical across runs",
        files[0].len(),
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "bundled presentations validate; Ising negation breaks only pentagons",
            bundled_presentations_validate,
        ),
        (
            "Z2 group algebra satisfies Q1-Q4; scaled m fails Q4",
            group_algebra_is_a_qsystem,
        ),
        (
            "relative tensor products of random bimodule pairs",
            relative_tensor_products_split,
        ),
        (
            "completed Z2 associator satisfies pentagon and triangle",
            completed_associator_is_coherent,
        ),
        ("simple census of the Z2 completion", census_of_completion),
        ("strict 1-functoriality of transport", strict_functoriality),
        (
            "transported functors, transformations, modifications, tensorator",
            transported_structures,
        ),
        (
            "psi^F is a transformation for every bundled functor",
            psi_for_every_functor,
        ),
        ("condensations from Q-systems", condensations),
        (
            "complete and verify-theorems are byte-identical across runs",
            deterministic_cli,
        ),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
