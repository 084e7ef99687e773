//! Acceptance run: one PASS/FAIL line per criterion on the default scenario
//! (α = 2π/3, ω₀ = 1, Heaviside profile). Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use halfplane::diagnostics::{run_suite, DiagnosticReport, SuiteContext};
use halfplane::{Profile, QuadratureSpec, ScenarioConfig};

struct Criterion {
    number: usize,
    title: &'static str,
    suite: &'static str,
    /// Check ids that decide the criterion; the suite's other checks are informational.
    checks: &'static [&'static str],
    budget: Option<Duration>,
}

const CRITERIA: [Criterion; 12] = [
    Criterion {
        number: 1,
        title: "kernel decay envelope",
        suite: "kernel-decay",
        checks: &["kernel-decay.envelope-ratio"],
        budget: None,
    },
    Criterion {
        number: 2,
        title: "kernel decomposition and residues",
        suite: "kernel-decomposition",
        checks: &[
            "kernel-decomposition.reconstruction",
            "kernel-decomposition.residue-plus",
            "kernel-decomposition.residue-minus",
        ],
        budget: None,
    },
    Criterion {
        number: 3,
        title: "causality of the diffracted wave",
        suite: "causality",
        checks: &["causality.diffracted-before-front"],
        budget: None,
    },
    Criterion {
        number: 4,
        title: "Dirichlet condition on both faces",
        suite: "boundary",
        checks: &["boundary.time-total-on-faces"],
        budget: None,
    },
    Criterion {
        number: 5,
        title: "time/frequency transform consistency",
        suite: "transform-consistency",
        checks: &["transform-consistency.relative-error"],
        budget: None,
    },
    Criterion {
        number: 6,
        title: "jump cancellation at both rays",
        suite: "jumps",
        checks: &["jumps.reflected-is-nonzero", "jumps.incident1-is-nonzero", "jumps.scattered-continuous"],
        budget: None,
    },
    Criterion {
        number: 7,
        title: "Helmholtz residual of the scattered field",
        suite: "helmholtz",
        checks: &["helmholtz.scattered-order", "helmholtz.scattered-residual"],
        budget: None,
    },
    Criterion {
        number: 8,
        title: "decay fits of the scattered field",
        suite: "decay-fits",
        checks: &["decay-fits.scattered-rate", "decay-fits.scattered-envelope"],
        budget: None,
    },
    Criterion {
        number: 9,
        title: "limiting amplitude at (1, pi)",
        suite: "lap",
        checks: &["lap.total-decreasing", "lap.total-final", "lap.scattered-decreasing", "lap.scattered-final"],
        budget: Some(Duration::from_secs(120)),
    },
    Criterion {
        number: 10,
        title: "Sommerfeld kernel route vs Fresnel oracle",
        suite: "sommerfeld-oracle",
        checks: &["sommerfeld-oracle.route-agreement", "sommerfeld-oracle.screen-trace"],
        budget: None,
    },
    Criterion {
        number: 11,
        title: "radiation and edge behaviour",
        suite: "sommerfeld-oracle",
        checks: &["sommerfeld-oracle.radiation-envelope", "sommerfeld-oracle.edge-bounded"],
        budget: None,
    },
    Criterion {
        number: 12,
        title: "Green identity",
        suite: "green-identity",
        checks: &[
            "green-identity.manufactured-order",
            "green-identity.manufactured-ring-decreasing",
            "green-identity.scattered-ring-decreasing",
        ],
        budget: None,
    },
];

fn worst(reports: &[&DiagnosticReport]) -> String {
    reports
        .iter()
        .find(|r| !r.pass)
        .or_else(|| reports.last())
        .map(|r| format!("{} value={:.3e} bound={:.3e}", r.check, r.value, r.bound))
        .unwrap_or_default()
}

fn main() {
    let ctx = SuiteContext::new(&ScenarioConfig::reference(), &Profile::heaviside(), &QuadratureSpec::default());
    let mut cache: BTreeMap<&str, (Result<Vec<DiagnosticReport>, String>, Duration)> = BTreeMap::new();
    let mut failed = 0;
    for c in &CRITERIA {
        let (result, elapsed) = cache
            .entry(c.suite)
            .or_insert_with(|| {
                let start = Instant::now();
                let r = run_suite(c.suite, &ctx).map_err(|e| e.to_string());
                (r, start.elapsed())
            })
            .clone();
        let (ok, detail) = match &result {
            Err(e) => (false, format!("error: {e}")),
            Ok(reports) => {
                let chosen: Vec<&DiagnosticReport> = reports.iter().filter(|r| c.checks.contains(&r.check.as_str())).collect();
                let covered = c.checks.iter().all(|id| chosen.iter().any(|r| r.check == *id));
                let in_budget = c.budget.is_none_or(|b| elapsed <= b);
                let ok = covered && chosen.iter().all(|r| r.pass) && in_budget;
                let mut d = format!("{} checks, {}", chosen.len(), worst(&chosen));
                if !covered {
                    d.push_str(", missing checks");
                }
                if !in_budget {
                    d.push_str(&format!(", over budget ({:.1}s)", elapsed.as_secs_f64()));
                }
                (ok, d)
            }
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {} [{:.1}s] ({detail})",
            if ok { "PASS" } else { "FAIL" },
            c.number,
            c.title,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", CRITERIA.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", CRITERIA.len());
}
