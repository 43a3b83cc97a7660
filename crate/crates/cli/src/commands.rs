use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use graphene_hf::checks::{run_suite, SUITES};
use graphene_hf::ground_state::{RadialGrid, RadialOccupation, TiProblem};
use graphene_hf::model::{dispersion as energy, g_kernel, v_eff};
use graphene_hf::response::{
    b0_kernel, response_point, screening_asymptote, screening_charge, DefectDensity,
};
use graphene_hf::QuadratureSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::table::{Cell, Table};
use crate::CliError;

/// A command's table plus lines for stderr and an optional suite failure.
pub struct Output {
    pub table: Table,
    pub notes: Vec<String>,
    pub failure: Option<String>,
}

impl From<Table> for Output {
    fn from(table: Table) -> Self {
        Self {
            table,
            notes: Vec::new(),
            failure: None,
        }
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(msg()))
    }
}

/// Evaluates `f` on every input in parallel, keeping input order.
fn sweep<T: Send>(xs: &[f64], f: impl Fn(f64) -> graphene_hf::Result<T> + Sync) -> Result<Vec<T>, CliError> {
    let out: Vec<graphene_hf::Result<T>> = xs.par_iter().map(|&x| f(x)).collect();
    out.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

pub fn g(cfg: &RunConfig, rs: &[f64]) -> Result<Output, CliError> {
    require(rs.iter().all(|&r| r >= 0.0 && r.is_finite()), || "R values must be finite and >= 0".into())?;
    let gs = sweep(rs, |r| g_kernel(r, &cfg.spec))?;
    let mut t = Table::new(&["R", "g", "g_minus_log_R_over_4"]);
    for (&r, &gv) in rs.iter().zip(&gs) {
        let excess = if r >= 1.0 { gv - r.ln() / 4.0 } else { f64::NAN };
        t.push(vec![r.into(), gv.into(), excess.into()]);
    }
    Ok(t.into())
}

fn check_momenta(ps: &[f64], allow_zero: bool, cutoff: f64) -> Result<(), CliError> {
    require(
        ps.iter().all(|&p| (p > 0.0 || (allow_zero && p == 0.0)) && p <= cutoff),
        || format!("momenta must lie in {}0, {cutoff}]", if allow_zero { "[" } else { "(" }),
    )
}

pub fn veff(cfg: &RunConfig, ps: &[f64]) -> Result<Output, CliError> {
    check_momenta(ps, false, cfg.params.cutoff())?;
    let vs = sweep(ps, |p| v_eff(p, &cfg.params))?;
    let mut t = Table::new(&["p", "v_eff", "g"]);
    for (&p, &v) in ps.iter().zip(&vs) {
        t.push(vec![p.into(), v.into(), (v - cfg.params.v_f()).into()]);
    }
    Ok(t.into())
}

pub fn dispersion(cfg: &RunConfig, ps: &[f64]) -> Result<Output, CliError> {
    check_momenta(ps, true, cfg.params.cutoff())?;
    let es = sweep(ps, |p| energy(p, &cfg.params))?;
    let mut t = Table::new(&["p", "energy", "bare_energy"]);
    for (&p, &e) in ps.iter().zip(&es) {
        t.push(vec![p.into(), e.into(), (cfg.params.v_f() * p).into()]);
    }
    Ok(t.into())
}

pub fn response(cfg: &RunConfig, ks: &[f64], no_exchange: bool) -> Result<Output, CliError> {
    require(ks.iter().all(|&k| k > 0.0 && k.is_finite()), || "k values must be positive".into())?;
    if no_exchange {
        let b0 = sweep(ks, |k| b0_kernel(k, &cfg.params))?;
        let mut t = Table::new(&["k", "b0"]);
        for (&k, &b) in ks.iter().zip(&b0) {
            t.push(vec![k.into(), b.into()]);
        }
        return Ok(t.into());
    }
    let pts = sweep(ks, |k| response_point(k, &cfg.params, &cfg.spec))?;
    let mut t = Table::new(&["k", "b", "b0", "b1", "b2"]);
    for p in pts {
        t.push(vec![p.k_norm.into(), p.b.into(), p.b0.into(), p.b1.into(), p.b2.into()]);
    }
    Ok(t.into())
}

fn parse_defect(spec: &str) -> Result<DefectDensity, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums: Result<Vec<f64>, _> = parts.iter().skip(1).map(|s| s.trim().parse::<f64>()).collect();
    let bad = || CliError::Usage(format!("defect must be gaussian:CHARGE:WIDTH or disk:CHARGE:RADIUS, got {spec:?}"));
    let nums = nums.map_err(|_| bad())?;
    if nums.len() != 2 {
        return Err(bad());
    }
    let d = match parts[0] {
        "gaussian" => DefectDensity::gaussian(nums[0], nums[1]),
        "disk" => DefectDensity::uniform_disk(nums[0], nums[1]),
        _ => return Err(bad()),
    };
    d.map_err(CliError::from)
}

pub fn screening(cfg: &RunConfig, nu: &str, lambda: f64, rs: &[f64]) -> Result<Output, CliError> {
    let nu = parse_defect(nu)?;
    require(lambda.is_finite() && lambda >= 0.0, || "λ must be finite and >= 0".into())?;
    require(
        rs.iter().all(|&r| r * cfg.params.cutoff() > 1.0 && r.is_finite()),
        || "radii must satisfy RΛ > 1".into(),
    )?;
    // the charge nests B inside a Hankel integral: use the relaxed spec
    let spec = QuadratureSpec::relaxed();
    let rows = sweep(rs, |r| {
        let q = screening_charge(&nu, lambda, r, &cfg.params, &spec)?;
        let a = screening_asymptote(&nu, lambda, r, &cfg.params)?;
        Ok((q, a))
    })?;
    let mut t = Table::new(&["R", "charge", "asymptote", "ratio"]);
    for (&r, &(q, a)) in rs.iter().zip(&rows) {
        let ratio = if a != 0.0 { q / a } else { f64::NAN };
        t.push(vec![r.into(), q.into(), a.into(), ratio.into()]);
    }
    Ok(t.into())
}

fn parse_init(init: &str, n: usize) -> Result<RadialOccupation, CliError> {
    let bad = || CliError::Usage(format!("init must be zero, minus-one, const:VALUE or random:SEED, got {init:?}"));
    match init.split_once(':') {
        None if init == "zero" => Ok(RadialOccupation::constant(n, 0.0)),
        None if init == "minus-one" => Ok(RadialOccupation::constant(n, -1.0)),
        Some(("const", v)) => {
            let v: f64 = v.parse().map_err(|_| bad())?;
            require((-1.0..=1.0).contains(&v), || format!("constant init must lie in [-1, 1], got {v}"))?;
            Ok(RadialOccupation::constant(n, v))
        }
        Some(("random", seed)) => {
            let seed: u64 = seed.parse().map_err(|_| bad())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(RadialOccupation {
                h: (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect(),
            })
        }
        _ => Err(bad()),
    }
}

pub fn minimize_ti(cfg: &RunConfig, init: &str, max_iters: usize, log: Option<&Path>) -> Result<Output, CliError> {
    let init = parse_init(init, cfg.grid_n)?;
    let grid = RadialGrid::gauss_legendre(cfg.grid_n, cfg.params.cutoff())?;
    let problem = TiProblem::new(cfg.params, grid, &cfg.spec)?;
    let out = problem.minimize(&init, 1.0, max_iters, 1e-12)?;
    if let Some(path) = log {
        let mut t = Table::new(&["iteration", "energy"]);
        for (i, &e) in out.energies.iter().enumerate() {
            t.push(vec![i.into(), e.into()]);
        }
        let mut w = BufWriter::new(File::create(path)?);
        t.write(cfg.format, &mut w)?;
    }
    let notes = vec![
        format!("iterations: {}", out.iterations),
        format!("final energy: {:?}", out.energies.last().copied().unwrap_or(f64::NAN)),
        format!("sup|h-1| = {:e}", out.occupation.distance_to_sea()),
    ];
    let out = out.into_result()?;
    let mut t = Table::new(&["r", "h", "v_eff"]);
    for (&r, &h) in problem.grid().nodes().iter().zip(&out.occupation.h) {
        t.push(vec![r.into(), h.into(), v_eff(r, &cfg.params)?.into()]);
    }
    Ok(Output {
        table: t,
        notes,
        failure: None,
    })
}

pub fn check(cfg: &RunConfig, suite: &str) -> Result<Output, CliError> {
    require(SUITES.contains(&suite), || format!("unknown suite {suite:?}; expected one of {SUITES:?}"))?;
    let checks = run_suite(suite, &cfg.params)?;
    let mut t = Table::new(&["check", "status", "key", "value"]);
    let mut failed = Vec::new();
    for c in &checks {
        let status = if c.passed { "pass" } else { "fail" };
        if !c.passed {
            failed.push(c.name);
        }
        for (k, v) in &c.values {
            t.push(vec![c.name.into(), status.into(), Cell::Text(k.clone()), (*v).into()]);
        }
    }
    let mut notes: Vec<String> = checks
        .iter()
        .map(|c| format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name))
        .collect();
    notes.push(format!("{} of {} checks passed", checks.len() - failed.len(), checks.len()));
    Ok(Output {
        table: t,
        notes,
        failure: (!failed.is_empty()).then(|| failed.join(", ")),
    })
}

pub fn tabulate(cfg: &RunConfig, what: &str, points: usize) -> Result<Output, CliError> {
    require(points >= 1, || "--points must be at least 1".into())?;
    let cutoff = cfg.params.cutoff();
    match what {
        "g" => g(cfg, &log_grid(1e-3, 1e6, points)),
        "veff" => {
            let ps = log_grid(1e-6 * cutoff, cutoff, points);
            let vs = sweep(&ps, |p| Ok((v_eff(p, &cfg.params)?, energy(p, &cfg.params)?)))?;
            let mut t = Table::new(&["p", "v_eff", "energy"]);
            for (&p, &(v, e)) in ps.iter().zip(&vs) {
                t.push(vec![p.into(), v.into(), e.into()]);
            }
            Ok(t.into())
        }
        "response" => {
            let ks = log_grid(1e-6 * cutoff, 1.9 * cutoff, points);
            let rows = sweep(&ks, |k| response_point(k, &cfg.params, &cfg.spec))?;
            let mut t = Table::new(&["k", "b", "b0"]);
            for p in rows {
                t.push(vec![p.k_norm.into(), p.b.into(), p.b0.into()]);
            }
            Ok(t.into())
        }
        "screening" => screening(cfg, "gaussian:1:1", 0.1, &log_grid(10.0 / cutoff, 1e6 / cutoff, points)),
        other => Err(CliError::Usage(format!(
            "cannot tabulate {other:?}; expected g, veff, response or screening"
        ))),
    }
}
