//! Acceptance suite: one line per criterion with the measured values, the
//! wall time and the pinned tolerance. Criteria listed in `KNOWN_FAILURES`
//! are reported but do not fail the run; every other failure does.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphene_hf::checks::{render, run_check, suite_checks, Check};
use graphene_hf::ModelParams;

struct Criterion {
    id: u8,
    check: &'static str,
    what: &'static str,
    budget: Option<f64>,
}

const CRITERIA: [Criterion; 15] = [
    Criterion { id: 1, check: "g_one", what: "g(1) vs (2G-1)/(2pi), tol 1e-5", budget: Some(1.0) },
    Criterion { id: 2, check: "vf_threshold", what: "vf_threshold vs 2.0560, tol 5e-4", budget: Some(1.0) },
    Criterion { id: 3, check: "g_log_growth", what: "g(1e4)-g(1e3) vs log(10)/4, tol 2e-3", budget: Some(5.0) },
    Criterion { id: 4, check: "b_cross_representation", what: "B raw vs (v,w), rel 1e-4 at L = 2, 10, 100", budget: Some(60.0) },
    Criterion { id: 5, check: "b0_limit", what: "B0(1e6) vs pi/(16 vF), tol 1e-3", budget: Some(5.0) },
    Criterion { id: 6, check: "b_asymptotics", what: "log B1 4/pi within 0.25 of 1, log B2 <= 0.05 at 1e8, monotone", budget: Some(60.0) },
    Criterion { id: 7, check: "theorem1_minimizer", what: "N = 64, three inits to sup|h-1| <= 1e-3, F(h) >= F(1)", budget: Some(30.0) },
    Criterion { id: 8, check: "fock_consistency", what: "scaled gradient at h = 1 vs v_eff, rel 1e-4", budget: Some(10.0) },
    Criterion { id: 9, check: "gradient_fd", what: "gradient vs central differences, rel 1e-6", budget: Some(10.0) },
    Criterion { id: 10, check: "brute_force", what: "12x12 polar grid, 500 fields never beat f0", budget: Some(60.0) },
    Criterion { id: 11, check: "density_bound", what: "sup|rho_Q| <= |Q| rho_Pi, Pi density approach", budget: Some(60.0) },
    Criterion { id: 12, check: "partition_scaling", what: "gradient norm scaling, rel 1e-8", budget: Some(5.0) },
    Criterion { id: 13, check: "ims_scaling", what: "|defect(2R)|/|defect(R)| in [0.35, 0.65]", budget: Some(60.0) },
    Criterion { id: 14, check: "projector_trace", what: "Tr P+P- closed form, tol 1e-12", budget: Some(1.0) },
    Criterion { id: 15, check: "screening_law", what: "charge ratio within 25% at 1e6, closer than at 1e3", budget: Some(60.0) },
];

/// Criteria that fail for reasons recorded in the project notes: the
/// numbers are reported unchanged and the tolerances are not relaxed.
const KNOWN_FAILURES: [u8; 4] = [4, 6, 13, 15];

fn values(c: &Check) -> String {
    c.values.iter().map(|(k, v)| format!("{k}={v:.6e}")).collect::<Vec<_>>().join(" ")
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

fn main() -> ExitCode {
    let params = ModelParams::graphene();
    let names = suite_checks("all").expect("suite");
    let mut unexpected = Vec::new();

    // first pass on 8 threads, timed per check
    let mut outcomes: Vec<(Check, Duration)> = Vec::new();
    pool(8).install(|| {
        for name in &names {
            let t = Instant::now();
            match run_check(name, &params) {
                Ok(c) => outcomes.push((c, t.elapsed())),
                Err(e) => {
                    println!("check {name}: error: {e}");
                    unexpected.push(name.to_string());
                }
            }
        }
    });

    println!("acceptance criteria");
    for cr in &CRITERIA {
        let Some((c, dt)) = outcomes.iter().find(|(c, _)| c.name == cr.check) else {
            println!("criterion {:>2} FAIL  {} (numerical error)", cr.id, cr.what);
            continue;
        };
        let secs = dt.as_secs_f64();
        let in_time = cr.budget.is_none_or(|b| secs < b);
        let pass = c.passed && in_time;
        let tag = match (pass, KNOWN_FAILURES.contains(&cr.id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        let budget = cr.budget.map_or(String::new(), |b| format!(" / {b} s"));
        println!(
            "criterion {:>2} {tag}  {}  [{}]  time {secs:.3} s{budget}{}",
            cr.id,
            cr.what,
            values(c),
            if in_time { "" } else { " OVER BUDGET" }
        );
        if !pass && !KNOWN_FAILURES.contains(&cr.id) {
            unexpected.push(format!("criterion {}", cr.id));
        }
    }

    // criterion 16: the full suite on 1 and 8 threads renders identically
    let first = render(&outcomes.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>());
    let t = Instant::now();
    let second = pool(1).install(|| names.iter().map(|n| run_check(n, &params)).collect::<Result<Vec<_>, _>>());
    let same = matches!(&second, Ok(s) if render(s) == first);
    println!(
        "criterion 16 {}  check all on 8 and 1 threads renders identically  [{} checks, {} bytes]  time {:.3} s",
        if same { "PASS" } else { "FAIL" },
        names.len(),
        first.len(),
        t.elapsed().as_secs_f64()
    );
    if !same {
        unexpected.push("criterion 16".into());
    }

    println!("supplementary checks");
    for (c, dt) in &outcomes {
        if !CRITERIA.iter().any(|cr| cr.check == c.name) {
            println!(
                "  {} {}  [{}]  time {:.3} s",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                values(c),
                dt.as_secs_f64()
            );
            if !c.passed {
                unexpected.push(c.name.to_string());
            }
        }
    }

    if unexpected.is_empty() {
        println!("acceptance: all criteria pass except the known failures {KNOWN_FAILURES:?}");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
