//! Runs every property suite at full size and prints one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use genflag_core::verify::{Suite, SuiteReport};

const SEED: u64 = 7;

struct Criterion {
    id: u32,
    title: &'static str,
    suite: Suite,
    trials: usize,
    time_limit: Option<Duration>,
}

fn criteria() -> Vec<Criterion> {
    let c = |id, title, suite: Suite, time_limit| Criterion {
        id,
        title,
        suite,
        trials: suite.default_trials(),
        time_limit,
    };
    vec![
        c(1, "degree additivity over 1000 operator pairs", Suite::DegreeAdditivity, Some(Duration::from_secs(30))),
        c(2, "shift degree and component shift", Suite::ShiftDegree, None),
        c(3, "eligible operators closed under conjugation, products, inverses", Suite::EligibleNormality, None),
        c(4, "action lands in the component and respects products", Suite::ActionLaw, None),
        c(5, "annihilator action equals direct image", Suite::OracleEquivalence, None),
        c(6, "scenario predicates match matrix descriptions", Suite::ExampleScenarios, None),
        c(7, "symmetry of the scenario schemas", Suite::SymmetryDetection, None),
        c(8, "form preservation equals the reflection condition", Suite::IsotropicEquivalence, None),
        c(9, "cut block ranks via transpose and dual operator", Suite::BarRank, None),
        c(10, "block-upper operators have degree zero and stabilize", Suite::StabilizerDegree, None),
    ]
}

fn summary(r: &SuiteReport) -> (usize, usize) {
    r.properties.iter().fold((0, 0), |(c, f), p| (c + p.checked, f + p.failures))
}

fn main() -> ExitCode {
    let mut all = true;
    for c in criteria() {
        let start = Instant::now();
        let report = c.suite.run(SEED, Some(c.trials));
        let elapsed = start.elapsed();
        let in_time = c.time_limit.is_none_or(|t| elapsed <= t);
        let ok = report.passed && in_time;
        all &= ok;
        let (checked, failures) = summary(&report);
        println!(
            "[{}] {:>2} {}: {} checks, {} failures, {:.2}s{}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            checked,
            failures,
            elapsed.as_secs_f64(),
            if in_time { "" } else { " (over time limit)" }
        );
        if !report.passed {
            for p in report.properties.iter().filter(|p| !p.passed) {
                println!("       {} failed {}/{}", p.name, p.failures, p.checked);
                if let Some(ce) = &p.counterexample {
                    println!("       {ce}");
                }
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
