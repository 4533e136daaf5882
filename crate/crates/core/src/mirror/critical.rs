use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::report::Report;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MirrorConfig {
    pub n: usize,
    pub big_n: usize,
    pub q: Complex64,
    pub root_tol: f64,
    pub grad_tol: f64,
}

impl MirrorConfig {
    pub fn new(n: usize, big_n: usize, q: Complex64) -> Result<Self> {
        if n == 0 || n > big_n {
            return Err(Error::InvalidContext(format!("need 1 ≤ n ≤ N, got ({n},{big_n})")));
        }
        if q.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        Ok(MirrorConfig { n, big_n, q, root_tol: 1e-8, grad_tol: 1e-10 })
    }
}

/// A point `(x, y, p)`: `x[i][j]`, `y[a][b]` for `a ≠ b` (diagonal unused),
/// multipliers `p[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub x: Vec<Vec<Complex64>>,
    pub y: Vec<Vec<Complex64>>,
    pub p: Vec<Complex64>,
}

impl Configuration {
    /// `x_ij = p_i`, `y_ab = p_a - p_b`.
    pub fn from_multipliers(big_n: usize, p: &[Complex64]) -> Self {
        let n = p.len();
        let x = p.iter().map(|&pi| vec![pi; big_n]).collect();
        let y = (0..n).map(|a| (0..n).map(|b| if a == b { Complex64::zero() } else { p[a] - p[b] }).collect()).collect();
        Configuration { x, y, p: p.to_vec() }
    }

    pub fn scale_x(&self, s: f64) -> Self {
        let mut c = self.clone();
        for row in &mut c.x {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        c
    }

    fn coords(&self) -> Vec<Complex64> {
        let n = self.p.len();
        let mut v: Vec<Complex64> = self.x.iter().flatten().copied().collect();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    v.push(self.y[a][b]);
                }
            }
        }
        v.extend(self.p.iter().copied());
        v
    }

    fn from_coords(n: usize, big_n: usize, v: &[Complex64]) -> Self {
        let x = (0..n).map(|i| v[i * big_n..(i + 1) * big_n].to_vec()).collect();
        let mut k = n * big_n;
        let mut y = vec![vec![Complex64::zero(); n]; n];
        for (a, row) in y.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                if a != b {
                    *slot = v[k];
                    k += 1;
                }
            }
        }
        Configuration { x, y, p: v[k..k + n].to_vec() }
    }
}

/// One Weyl orbit of critical points.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalOrbit {
    /// Indices into the sorted root list.
    pub subset: Vec<usize>,
    pub config: Configuration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalSet {
    pub roots: Vec<Complex64>,
    pub orbits: Vec<CriticalOrbit>,
}

fn check_nonzero(c: &Configuration) -> Result<()> {
    let n = c.p.len();
    let bad_x = c.x.iter().flatten().any(|v| v.is_zero());
    let bad_y = (0..n).any(|a| (0..n).any(|b| a != b && c.y[a][b].is_zero()));
    if bad_x || bad_y {
        return Err(Error::ZeroCoordinate);
    }
    Ok(())
}

/// `C_i = Σ_j ln x_ij - Σ_{i'≠i}(ln y_ii' - ln y_i'i) - ln Q` on the principal branch.
fn constraints(cfg: &MirrorConfig, c: &Configuration) -> Vec<Complex64> {
    let n = c.p.len();
    (0..n)
        .map(|i| {
            let mut s: Complex64 = c.x[i].iter().map(|v| v.ln()).sum();
            for i2 in (0..n).filter(|&k| k != i) {
                s -= c.y[i][i2].ln() - c.y[i2][i].ln();
            }
            s - cfg.q.ln()
        })
        .collect()
}

/// Superpotential `Σx - Σy - Σ_i p_i C_i`.
pub fn superpotential(cfg: &MirrorConfig, c: &Configuration) -> Result<Complex64> {
    check_nonzero(c)?;
    let n = c.p.len();
    let mut f: Complex64 = c.x.iter().flatten().sum();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                f -= c.y[a][b];
            }
        }
    }
    for (pi, ci) in c.p.iter().zip(constraints(cfg, c)) {
        f -= pi * ci;
    }
    Ok(f)
}

/// Analytic gradient in coordinate order `x, y (a≠b row-major), p`.
pub fn gradient(cfg: &MirrorConfig, c: &Configuration) -> Result<Vec<Complex64>> {
    check_nonzero(c)?;
    let n = c.p.len();
    let mut g = Vec::new();
    for i in 0..n {
        for xv in &c.x[i] {
            g.push(Complex64::new(1.0, 0.0) - c.p[i] / xv);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                g.push(-1.0 + (c.p[a] - c.p[b]) / c.y[a][b]);
            }
        }
    }
    g.extend(constraints(cfg, c).into_iter().map(|ci| -ci));
    Ok(g)
}

fn reduce_2pi_i(z: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    let im = z.im - two_pi * libm::round(z.im / two_pi);
    Complex64::new(z.re, im)
}

/// Euclidean norm of the gradient, with the constraint components taken mod `2πi`.
pub fn superpotential_gradient(cfg: &MirrorConfig, c: &Configuration) -> Result<f64> {
    let g = gradient(cfg, c)?;
    let k = c.p.len();
    let split = g.len() - k;
    let s: f64 = g[..split].iter().map(|v| v.norm_sqr()).sum::<f64>()
        + g[split..].iter().map(|v| reduce_2pi_i(*v).norm_sqr()).sum::<f64>();
    Ok(libm::sqrt(s))
}

/// Largest relative deviation between the analytic gradient and central differences.
pub fn finite_difference_error(cfg: &MirrorConfig, c: &Configuration, h: f64) -> Result<f64> {
    let g = gradient(cfg, c)?;
    let base = c.coords();
    let (n, big_n) = (c.p.len(), c.x.first().map_or(0, |r| r.len()));
    let scale = g.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    let mut worst: f64 = 0.0;
    for k in 0..base.len() {
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[k] += h;
        minus[k] -= h;
        let fp = superpotential(cfg, &Configuration::from_coords(n, big_n, &plus))?;
        let fm = superpotential(cfg, &Configuration::from_coords(n, big_n, &minus))?;
        let fd = (fp - fm) / (2.0 * h);
        worst = worst.max((fd - g[k]).norm() / scale);
    }
    Ok(worst)
}

/// Roots of `p^N = (-1)^{n+1}Q`, clustered at relative tolerance and sorted by argument.
pub fn roots(cfg: &MirrorConfig) -> Vec<Complex64> {
    let sign = if cfg.n % 2 == 1 { 1.0 } else { -1.0 };
    let c = cfg.q * sign;
    let nn = cfg.big_n as f64;
    let r = libm::pow(c.norm(), 1.0 / nn);
    let mut out: Vec<Complex64> = Vec::new();
    for k in 0..cfg.big_n {
        let z = Complex64::from_polar(r, (c.arg() + 2.0 * PI * k as f64) / nn);
        if !out.iter().any(|w| (w - z).norm() <= cfg.root_tol * r.max(z.norm())) {
            out.push(z);
        }
    }
    out.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap_or(core::cmp::Ordering::Equal));
    out
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// In-torus critical points up to `S_n`: `n`-subsets of pairwise distinct roots.
pub fn critical_points(cfg: &MirrorConfig) -> CriticalSet {
    let rs = roots(cfg);
    let orbits = subsets(rs.len(), cfg.n)
        .into_iter()
        .map(|s| {
            let p: Vec<Complex64> = s.iter().map(|&i| rs[i]).collect();
            CriticalOrbit { config: Configuration::from_multipliers(cfg.big_n, &p), subset: s }
        })
        .collect();
    CriticalSet { roots: rs, orbits }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Orbit count versus `binom(N, n)`.
pub fn verify_ring_count(cfg: &MirrorConfig) -> Report {
    let set = critical_points(cfg);
    let want = binomial(cfg.big_n, cfg.n);
    let got = set.orbits.len() as u64;
    let mut rep = Report::new();
    rep.push(format!("ring count ({},{})", cfg.n, cfg.big_n), got == want, format!("{got} orbits, rank {want}"));
    rep
}

/// Gradient norms at every orbit, the non-critical perturbation and the
/// finite-difference cross-check.
pub fn verify_critical(cfg: &MirrorConfig, fd_tol: f64) -> Result<Report> {
    let mut rep = Report::new();
    let tag = format!("critical ({},{})", cfg.n, cfg.big_n);
    for orb in critical_points(cfg).orbits {
        let g = superpotential_gradient(cfg, &orb.config)?;
        rep.push(format!("{tag} {:?} gradient", orb.subset), g < cfg.grad_tol, format!("{g:.3e}"));
        let moved = orb.config.scale_x(1.01);
        let gm = superpotential_gradient(cfg, &moved)?;
        rep.push(format!("{tag} {:?} perturbed", orb.subset), gm > 1e-4, format!("{gm:.3e}"));
        let fd = finite_difference_error(cfg, &moved, 1e-5)?;
        rep.push(format!("{tag} {:?} finite differences", orb.subset), fd < fd_tol, format!("{fd:.3e}"));
    }
    Ok(rep)
}

/// Ring counts for `1 <= n <= N <= max_n` and gradient checks on `grid`, at `Q = 1`.
pub fn verify_mirror_suite(max_n: usize, grid: &[(usize, usize)]) -> Result<Report> {
    let one = Complex64::new(1.0, 0.0);
    let mut rep = Report::new();
    for big_n in 1..=max_n {
        for n in 1..=big_n {
            rep.extend(verify_ring_count(&MirrorConfig::new(n, big_n, one)?));
        }
    }
    for &(n, big_n) in grid {
        rep.extend(verify_critical(&MirrorConfig::new(n, big_n, one)?, 1e-6)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, big_n: usize) -> MirrorConfig {
        MirrorConfig::new(n, big_n, Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(critical_points(&cfg(1, 3)).orbits.len(), 3);
        assert_eq!(critical_points(&cfg(2, 4)).orbits.len(), 6);
        assert_eq!(critical_points(&cfg(2, 2)).orbits.len(), 1);
        assert_eq!(critical_points(&cfg(3, 3)).orbits.len(), 1);
        for r in critical_points(&cfg(2, 4)).roots {
            assert!((r.powu(4) + 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn gradients() {
        let c = cfg(2, 4);
        let rep = verify_critical(&c, 1e-6).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        let one = cfg(1, 1);
        let set = critical_points(&one);
        assert!((set.roots[0] - 1.0).norm() < 1e-15);
        assert!(superpotential_gradient(&one, &set.orbits[0].config).unwrap() < 1e-15);
    }

    #[test]
    fn zero_coordinate() {
        let c = cfg(2, 2);
        let conf = Configuration::from_multipliers(2, &[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(superpotential_gradient(&c, &conf), Err(Error::ZeroCoordinate));
    }
}
