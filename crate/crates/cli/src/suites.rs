//! Verification suites on the acceptance grid, fanned out over worker threads.
//!
//! - each suite expands to named tasks; `--n/--N/--D/--l` narrow the grid
//! - results are assembled in task-key order, whatever the thread schedule
//! - `pairing` and `operators` are extra groups that `all` also runs

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use qkgr_core::arith::{int, rat};
use qkgr_core::diffops::{verify_level_telescoping, verify_operator_identities};
use qkgr_core::kring::verify_pairings;
use qkgr_core::localization::{
    recursion_residual, verify_dong_wen, verify_gamma_reconstruction, verify_nonabelian, verify_small_pole_structure,
    RecursionInstance,
};
use qkgr_core::mirror::critical::verify_mirror_suite;
use qkgr_core::mirror::diffeq::{verify_difference_system, DiffVariant};
use qkgr_core::mirror::hp::Precision;
use qkgr_core::mirror::jackson::verify_jackson_suite;
use qkgr_core::qseries::verify_degree_gaps;
use qkgr_core::report::Report;
use qkgr_core::{BigRat, Error, FixedPoint, GrassmannianCtx, Result, SeriesKind};

pub const SUITES: [&str; 11] =
    ["gamma", "recursion", "nonabelian", "dongwen", "diffeq", "jackson", "mirror", "poles", "pairing", "operators", "all"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub big_n: Option<usize>,
    pub max_total: Option<u32>,
    pub level: Option<i32>,
    pub seed: u64,
    pub precision: u32,
}

type Job = Box<dyn Fn() -> Result<Report> + Send + Sync>;

pub struct Task {
    pub key: String,
    job: Job,
}

fn task(key: String, job: impl Fn() -> Result<Report> + Send + Sync + 'static) -> Task {
    Task { key, job: Box::new(job) }
}

fn ctx(n: usize, big_n: usize) -> Result<GrassmannianCtx> {
    GrassmannianCtx::new(n, big_n)
}

/// The default grid, or the single context given by `--n/--N`.
fn grid(p: &SuiteParams, default: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    match (p.n, p.big_n) {
        (Some(n), Some(big_n)) => Ok(vec![(n, big_n)]),
        (None, None) => Ok(default.to_vec()),
        _ => Err(Error::InvalidContext("--n and --N go together".into())),
    }
}

fn recursion_tasks(p: &SuiteParams) -> Result<Vec<Task>> {
    let mut out = Vec::new();
    for (n, big_n) in grid(p, &[(1, 2), (1, 3), (2, 3)])? {
        let c = ctx(n, big_n)?;
        let dmax = p.max_total.unwrap_or(if n == 1 { 4 } else { 3 });
        let lambda: Vec<BigRat> = (1..=big_n as i64).map(|j| int(j * j)).collect();
        let alpha: Vec<usize> = (1..=n).collect();
        let mut betas = Vec::new();
        for pos in 0..n {
            for b in n + 1..=big_n {
                let mut beta = alpha.clone();
                beta[pos] = b;
                betas.push(beta);
            }
        }
        for kind in [SeriesKind::JT, SeriesKind::IT] {
            for beta in &betas {
                for m0 in [1u32, 2] {
                    let a = FixedPoint::new(c, alpha.clone())?;
                    let b = FixedPoint::new(c, beta.clone())?;
                    let base = RecursionInstance::new(kind, a, b, m0, &lambda, Some(rat(3, 5)), None)?;
                    let xs = if m0 == 2 { vec![base.x.clone(), -base.x.clone()] } else { vec![base.x.clone()] };
                    for x in xs {
                        let inst = RecursionInstance { x, ..base.clone() };
                        let key = format!("recursion {}", inst.label());
                        out.push(task(key, move || {
                            let res = recursion_residual(&inst, dmax)?;
                            let mut r = Report::new();
                            for (t, v) in res {
                                r.push(format!("recursion {} t={t}", inst.label()), v == int(0), qkgr_core::arith::rat_to_string(&v));
                            }
                            Ok(r)
                        }));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Tasks for one suite name (`all` expands to every group).
pub fn tasks(suite: &str, p: &SuiteParams) -> Result<Vec<Task>> {
    let mut out: Vec<Task> = Vec::new();
    let prec = Precision::digits(p.precision);
    let seed = p.seed;
    match suite {
        "all" => {
            for s in SUITES.iter().filter(|s| **s != "all") {
                out.extend(tasks(s, p)?);
            }
        }
        "pairing" => {
            let g = grid(p, &[(1, 2), (1, 3), (2, 3), (2, 4)])?;
            out.push(task("pairing".into(), move || verify_pairings(&g, 50, seed)));
        }
        "gamma" => {
            let d = p.max_total.unwrap_or(3);
            for (n, big_n) in grid(p, &[(1, 2), (1, 3), (2, 2), (2, 3)])? {
                let c = ctx(n, big_n)?;
                out.push(task(format!("gamma ({n},{big_n})"), move || verify_gamma_reconstruction(&c, d)));
            }
        }
        "recursion" => out.extend(recursion_tasks(p)?),
        "nonabelian" => {
            let d = p.max_total.unwrap_or(3);
            for (n, big_n) in grid(p, &[(2, 2), (2, 3)])? {
                let c = ctx(n, big_n)?;
                out.push(task(format!("nonabelian ({n},{big_n})"), move || verify_nonabelian(&c, d)));
            }
        }
        "operators" => {
            let d = p.max_total.unwrap_or(3);
            for (n, big_n) in grid(p, &[(1, 2), (2, 2), (2, 3)])? {
                let c = ctx(n, big_n)?;
                out.push(task(format!("operators ({n},{big_n})"), move || verify_operator_identities(&c, d)));
            }
            out.push(task("operators telescoping".into(), || verify_level_telescoping(6, &[1, 2])));
        }
        "dongwen" => {
            let default = [(1, 3, 1, 3), (2, 4, 1, 2)];
            let items: Vec<(usize, usize, i32, u32)> = match (p.n, p.big_n) {
                (Some(n), Some(big_n)) => vec![(n, big_n, p.level.unwrap_or(1), p.max_total.unwrap_or(2))],
                (None, None) => default.to_vec(),
                _ => return Err(Error::InvalidContext("--n and --N go together".into())),
            };
            for (n, big_n, l, d) in items {
                let c = ctx(n, big_n)?;
                out.push(task(format!("dongwen ({n},{big_n}) l={l}"), move || verify_dong_wen(&c, l, d, seed)));
            }
        }
        "diffeq" => {
            let d = p.max_total.unwrap_or(4);
            for (n, big_n) in grid(p, &[(1, 1), (1, 3), (2, 2)])? {
                let c = ctx(n, big_n)?;
                for v in [DiffVariant::Nonequivariant, DiffVariant::Equivariant] {
                    out.push(task(format!("diffeq ({n},{big_n}) {}", v.name()), move || {
                        verify_difference_system(&c, v, d)
                    }));
                }
            }
        }
        "jackson" => out.push(task("jackson".into(), move || verify_jackson_suite(prec))),
        "mirror" => {
            let g = grid(p, &[(1, 3), (2, 4), (2, 5)])?;
            out.push(task("mirror".into(), move || verify_mirror_suite(6, &g)));
        }
        "poles" => {
            let d = p.max_total.unwrap_or(4);
            for (n, big_n) in grid(p, &[(1, 3), (2, 3), (2, 4)])? {
                let c = ctx(n, big_n)?;
                out.push(task(format!("poles gap ({n},{big_n})"), move || verify_degree_gaps(&c, d)));
            }
            let (n, big_n) = (p.n.unwrap_or(2), p.big_n.unwrap_or(4));
            let l = p.level.unwrap_or(-1);
            let dl = p.max_total.unwrap_or(2);
            let c = ctx(n, big_n)?;
            out.push(task(format!("poles level ({n},{big_n}) l={l}"), move || {
                verify_small_pole_structure(SeriesKind::ITLevel(l), &c, dl, seed)
            }));
        }
        other => {
            return Err(Error::InvalidContext(format!("unknown suite '{other}'; expected one of {}", SUITES.join(", "))))
        }
    }
    Ok(out)
}

/// Runs tasks on up to `jobs` threads; the merged report follows task-key order.
pub fn run(mut tasks: Vec<Task>, jobs: usize) -> Result<Report> {
    tasks.sort_by(|a, b| a.key.cmp(&b.key));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<Report>>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, tasks.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(t) = tasks.get(i) else { break };
                let r = (t.job)();
                slots.lock().expect("no task panics while holding the lock")[i] = Some(r);
            });
        }
    });
    let mut rep = Report::new();
    for (t, r) in tasks.iter().zip(slots.into_inner().expect("threads joined")) {
        match r.expect("every task ran") {
            Ok(r) => rep.extend(r),
            Err(e) => rep.push(t.key.clone(), false, format!("error: {e}")),
        }
    }
    Ok(rep)
}
