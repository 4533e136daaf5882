//! Fixed-point localization and the identity checks built on it.
//!
//! - [`localize`] substitutes `P_i = Λ_{S_i}` (`Λ_{S_i}^{-1}` for the dual series)
//! - recursion residuals are exact rationals, taken per total Q-degree
//! - residues are read off the factored form; the simple pole comes from the
//!   single factor `1 - q^m v` vanishing at `q = x`

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use num_traits::{One, Zero};

use crate::arith::{rat_pow, rat_roots, rat_to_string, BigRat, Mono, Monomial, RatFuncQ, Var};
use crate::diffops::{gamma_apply, GammaOp};
use crate::kring::{edge, euler_ratio, modifying_factor_y, FixedPoint, GrassmannianCtx};
use crate::qseries::{
    classify_poles, coeff, degrees_up_to, degrees_with_total, FactoredCoeff, Fraction, NovikovSeries, SeriesKind,
};
use crate::report::Report;
use crate::rng::Rng;
use crate::{Error, Result};

/// Variable assignment for exact specializations.
pub type Values = BTreeMap<Var, BigRat>;

fn lookup(vals: &Values) -> impl Fn(Var) -> Option<BigRat> + '_ {
    move |v| vals.get(&v).cloned()
}

/// `Λ_1..Λ_N` (and optionally `Λ0`, `Y`) as a [`Values`] map.
pub fn lambda_values(lambda: &[BigRat], l0: Option<BigRat>, y: Option<BigRat>) -> Values {
    let mut vals = Values::new();
    for (j, v) in lambda.iter().enumerate() {
        vals.insert(Var::L(j as u16 + 1), v.clone());
    }
    if let Some(v) = l0 {
        vals.insert(Var::L(0), v);
    }
    if let Some(v) = y {
        vals.insert(Var::Y, v);
    }
    vals
}

/// Substitutes `P_i = Λ_{t_i}` (inverted when `invert`) for an arbitrary tuple.
pub fn localize_tuple(c: &FactoredCoeff, tuple: &[usize], invert: bool) -> Result<FactoredCoeff> {
    let e = if invert { -1 } else { 1 };
    c.subst(|v| match v {
        Var::P(i) => tuple.get(i as usize - 1).map(|&s| Mono::from_monomial(Monomial::pow_var(Var::L(s as u16), e))),
        _ => None,
    })
}

/// `coeff(kind, ctx, d)` at the fixed point `fp`. For the dual series `fp`
/// lives on `Gr(N-n, N)` and `P_i = Λ_{fp_i}^{-1}`.
pub fn localize(kind: SeriesKind, ctx: &GrassmannianCtx, fp: &FixedPoint, d: &[u32]) -> Result<FactoredCoeff> {
    let dual = matches!(kind, SeriesKind::ITDual(_));
    if fp.indices.len() != kind.nvars(ctx) || fp.ctx.big_n != ctx.big_n {
        return Err(Error::InvalidContext(format!("fixed point {:?} does not fit {kind}", fp.indices)));
    }
    localize_tuple(&coeff(kind, ctx, d)?, &fp.indices, dual)
}

/// A series localized at a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedSeries {
    pub kind: SeriesKind,
    pub fixed_point: FixedPoint,
    pub coeffs: BTreeMap<Vec<u32>, FactoredCoeff>,
}

pub fn localize_series(kind: SeriesKind, ctx: &GrassmannianCtx, fp: &FixedPoint, max_total: u32) -> Result<LocalizedSeries> {
    let mut coeffs = BTreeMap::new();
    for d in degrees_up_to(kind.nvars(ctx), max_total) {
        coeffs.insert(d.clone(), localize(kind, ctx, fp, &d)?);
    }
    Ok(LocalizedSeries { kind, fixed_point: fp.clone(), coeffs })
}

/// `Res_{q=x} c(q)·(1-q)/q`, with every other variable assigned.
pub fn residue_dq_over_q(c: &FactoredCoeff, x: &BigRat, vals: &Values) -> Result<BigRat> {
    let f = lookup(vals);
    let mut rest = FactoredCoeff::from_mono(c.prefactor().clone());
    let (mut den_hits, mut num_hits) = (0u32, 0u32);
    let mut pole = None;
    for (k, &e) in c.factor_map() {
        let v = k.mon.eval(&f)?;
        if (BigRat::one() - rat_pow(x, k.m as i64) * &v).is_zero() {
            if e < 0 {
                den_hits += e.unsigned_abs();
                pole = Some((k.m, v));
            } else {
                num_hits += e as u32;
            }
        } else {
            rest.mul_factor(k.m, k.mon.clone(), e)?;
        }
    }
    if den_hits == 0 {
        return Ok(BigRat::zero());
    }
    if num_hits > 0 {
        // Zeros meet poles: fall back to the expanded rational function.
        let g = c.expand(&f)?.mul(&RatFuncQ::from_poly(crate::arith::UPoly::one_minus(BigRat::one(), 1)));
        let g = g.div(&RatFuncQ::q_pow(1))?;
        return Ok(g.residue_at(x)?.value);
    }
    if den_hits > 1 {
        return Err(Error::NonSimplePole);
    }
    let (m, v) = pole.ok_or(Error::NonSimplePole)?;
    let mut at = vals.clone();
    at.insert(Var::Q, x.clone());
    let g = rest.eval(lookup(&at))?;
    // d/dq (1 - q^m v) = -m q^{m-1} v
    let deriv = -BigRat::from_integer(m.into()) * rat_pow(x, m as i64 - 1) * v;
    Ok((BigRat::one() - x) / x * g / deriv)
}

/// One recursion test: series `kind` localized at `α` and `β`, `m0`-fold cover,
/// exact values for `Λ` (and `Y`), and the rational root `x`.
#[derive(Clone, Debug)]
pub struct RecursionInstance {
    pub kind: SeriesKind,
    pub ctx: GrassmannianCtx,
    pub alpha: FixedPoint,
    pub beta: FixedPoint,
    pub m0: u32,
    pub values: Values,
    pub x: BigRat,
}

impl RecursionInstance {
    /// `x` defaults to the positive rational root of `Λ_b/Λ_a`.
    pub fn new(
        kind: SeriesKind,
        alpha: FixedPoint,
        beta: FixedPoint,
        m0: u32,
        lambda: &[BigRat],
        y: Option<BigRat>,
        x: Option<BigRat>,
    ) -> Result<Self> {
        if m0 == 0 {
            return Err(Error::NonPositiveCover);
        }
        let ctx = alpha.ctx;
        if lambda.len() != ctx.big_n || lambda.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidContext(String::from("need N nonzero Λ values")));
        }
        let e = edge(&alpha, &beta)?;
        let target = &lambda[e.b - 1] / &lambda[e.a - 1];
        let roots = rat_roots(&target, m0);
        let x = match x {
            Some(x) if rat_pow(&x, m0 as i64) == target => x,
            Some(_) => return Err(Error::IrrationalRoot),
            None => roots.into_iter().max().ok_or(Error::IrrationalRoot)?,
        };
        if kind.has_y() && y.is_none() {
            return Err(Error::InvalidContext(String::from("balanced series need a value for Y")));
        }
        Ok(RecursionInstance { kind, ctx, alpha, beta, m0, values: lambda_values(lambda, None, y), x })
    }

    pub fn label(&self) -> String {
        format!(
            "{} ({},{}) {:?}->{:?} m0={} x={}",
            self.kind,
            self.ctx.n,
            self.ctx.big_n,
            self.alpha.indices,
            self.beta.indices,
            self.m0,
            rat_to_string(&self.x)
        )
    }

    /// The recursion coefficient `C` evaluated at `x`.
    pub fn coefficient(&self) -> Result<BigRat> {
        let mut c = euler_ratio(&self.ctx, &self.alpha, &self.beta, self.m0)?;
        c = c.mul(&modifying_factor_y(&self.ctx, &self.alpha, &self.beta, self.m0, self.kind.has_y())?);
        let mut vals = self.values.clone();
        vals.insert(Var::X, self.x.clone());
        vals.insert(Var::Q, BigRat::one());
        c.eval(lookup(&vals))
    }
}

/// `Res_{q=x}[(1-q)S_α]_t dq/q + (1/m0)·C·[(1-q)S_β]_{t-m0}(x)` for `t <= D - m0`.
pub fn recursion_residual(inst: &RecursionInstance, max_total: u32) -> Result<Vec<(u32, BigRat)>> {
    if max_total < inst.m0 {
        return Err(Error::InvalidContext(String::from("truncation must be at least m0")));
    }
    let c = inst.coefficient()?;
    let k = inst.kind.nvars(&inst.ctx);
    let mut at_x = inst.values.clone();
    at_x.insert(Var::Q, inst.x.clone());
    let m0_inv = BigRat::one() / BigRat::from_integer(inst.m0.into());
    let mut out = Vec::new();
    for t in 0..=max_total - inst.m0 {
        let mut res = BigRat::zero();
        for d in degrees_with_total(k, t) {
            let ca = localize(inst.kind, &inst.ctx, &inst.alpha, &d)?;
            res += residue_dq_over_q(&ca, &inst.x, &inst.values)?;
        }
        if t >= inst.m0 {
            let mut val = BigRat::zero();
            for d in degrees_with_total(k, t - inst.m0) {
                val += localize(inst.kind, &inst.ctx, &inst.beta, &d)?.eval(lookup(&at_x))?;
            }
            res += &m0_inv * &c * (BigRat::one() - &inst.x) * val;
        }
        out.push((t, res));
    }
    Ok(out)
}

fn sum_fractions<'a, I: IntoIterator<Item = &'a FactoredCoeff>>(it: I) -> Fraction {
    it.into_iter().fold(Fraction::zero(), |acc, c| acc.add_coeff(c))
}

/// `J_pt` pushed through the `Γ`-operators versus `JT` localized at `(1..n)`.
pub fn verify_gamma_reconstruction(ctx: &GrassmannianCtx, max_total: u32) -> Result<Report> {
    let n = ctx.n;
    let mut s = NovikovSeries::build(SeriesKind::JPt, *ctx, max_total)?;
    let lam = |i: usize, j: usize| Monomial::from_pairs([(Var::L(i as u16), 1), (Var::L(j as u16), -1)]);
    let unit = |i: usize| -> Vec<i32> { (0..n).map(|k| if k == i { 1 } else { 0 }).collect() };
    for i in 0..n {
        for j in 1..=ctx.big_n {
            if j != i + 1 {
                s = gamma_apply(&GammaOp::new(unit(i), lam(i + 1, j), true)?, &s)?;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let l: Vec<i32> = (0..n).map(|k| unit(i)[k] - unit(j)[k]).collect();
                s = gamma_apply(&GammaOp::new(l, lam(i + 1, j + 1), false)?, &s)?;
            }
        }
    }
    let fp = FixedPoint::new(*ctx, (1..=n).collect())?;
    let mut rep = Report::new();
    let mut totals_l: BTreeMap<u32, Vec<FactoredCoeff>> = BTreeMap::new();
    let mut totals_r: BTreeMap<u32, Vec<FactoredCoeff>> = BTreeMap::new();
    for (d, left) in s.iter() {
        let right = localize(SeriesKind::JT, ctx, &fp, d)?;
        let ok = *left == right;
        rep.push(format!("gamma ({},{}) d={d:?}", ctx.n, ctx.big_n), ok, if ok { String::new() } else { format!("{left} != {right}") });
        let t = d.iter().sum();
        totals_l.entry(t).or_default().push(left.clone());
        totals_r.entry(t).or_default().push(right);
    }
    for (t, ls) in &totals_l {
        let ok = sum_fractions(ls).equals(&sum_fractions(&totals_r[t]));
        rep.push(format!("gamma ({},{}) Q-specialized t={t}", ctx.n, ctx.big_n), ok, "");
    }
    Ok(rep)
}

/// Non-abelian localization checks on `X̃ = (P^{N-1})^n`:
/// (a) `J_PiGT = ∏_{i≠j} Γ_{1_i-1_j, Λ0 P_i/P_j} J_Xtilde`;
/// (b) `Q_i = Q`, `Λ0 = 1` gives the symmetrized `JT`;
/// (c) the `Q_1`-recursion of the localized `J_PiGT` has a `d`-independent
///     coefficient, equal to the Grassmannian one at `Λ0 = 1`.
pub fn verify_nonabelian(ctx: &GrassmannianCtx, max_total: u32) -> Result<Report> {
    let n = ctx.n;
    let tag = format!("nonabelian ({},{})", ctx.n, ctx.big_n);
    let mut rep = Report::new();

    let mut s = NovikovSeries::build(SeriesKind::JXtilde, *ctx, max_total)?;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let l: Vec<i32> = (0..n).map(|k| (k == i) as i32 - (k == j) as i32).collect();
                let lam = Monomial::from_pairs([(Var::L(0), 1), (Var::P(i as u16 + 1), 1), (Var::P(j as u16 + 1), -1)]);
                s = gamma_apply(&GammaOp::new(l, lam, false)?, &s)?;
            }
        }
    }
    let pigt = NovikovSeries::build(SeriesKind::JPiGT, *ctx, max_total)?;
    for (d, c) in pigt.iter() {
        rep.push(format!("{tag} (a) d={d:?}"), s.get(d) == Some(c), "");
    }

    let spec = crate::diffops::specialize_nonabelian(&pigt, true)?;
    for (t, f) in &spec.coeffs {
        let jt = crate::qseries::symmetrized_total_coeff(SeriesKind::JT, ctx, *t)?;
        rep.push(format!("{tag} (b) t={t}"), f.equals(&jt) && !f.has_p_difference(), "");
    }

    rep.extend(nonabelian_recursion(ctx, max_total, &tag)?);
    Ok(rep)
}

fn nonabelian_recursion(ctx: &GrassmannianCtx, max_total: u32, tag: &str) -> Result<Report> {
    let mut rep = Report::new();
    let n = ctx.n;
    let alpha: Vec<usize> = (1..=n).collect();
    let b = if ctx.big_n > n { n + 1 } else { 2.min(ctx.big_n) };
    if b == 1 {
        rep.push(format!("{tag} (c)"), true, "no 1-dimensional orbit");
        return Ok(rep);
    }
    let mut beta = alpha.clone();
    beta[0] = b;
    let lambda: Vec<BigRat> = (1..=ctx.big_n as i64).map(|j| BigRat::from_integer((j * j).into())).collect();
    let x = &lambda[b - 1] / &lambda[0];
    let ratios = |l0: BigRat| -> Result<Vec<(Vec<u32>, BigRat)>> {
        let vals = lambda_values(&lambda, Some(l0), None);
        let mut at = vals.clone();
        at.insert(Var::Q, x.clone());
        let mut out = Vec::new();
        for d in degrees_up_to(n, max_total) {
            if d[0] == 0 {
                continue;
            }
            let mut e = d.clone();
            e[0] -= 1;
            let ca = localize_tuple(&coeff(SeriesKind::JPiGT, ctx, &d)?, &alpha, false)?;
            let cb = localize_tuple(&coeff(SeriesKind::JPiGT, ctx, &e)?, &beta, false)?;
            let den = (BigRat::one() - &x) * cb.eval(lookup(&at))?;
            if den.is_zero() {
                continue;
            }
            out.push((d, residue_dq_over_q(&ca, &x, &vals)? / den));
        }
        Ok(out)
    };
    let generic = ratios(BigRat::new(7.into(), 3.into()))?;
    let first = generic.first().map(|p| p.1.clone());
    for (d, r) in &generic {
        let ok = Some(r) == first.as_ref();
        rep.push(format!("{tag} (c) d={d:?} d-independent"), ok, rat_to_string(r));
    }
    if ctx.big_n > n {
        let at_one = ratios(BigRat::one())?;
        let a = FixedPoint::new(*ctx, alpha.clone())?;
        let bfp = FixedPoint::new(*ctx, beta.clone())?;
        let mut vals = lambda_values(&lambda, None, None);
        vals.insert(Var::X, x.clone());
        vals.insert(Var::Q, BigRat::one());
        let c = euler_ratio(ctx, &a, &bfp, 1)?.eval(lookup(&vals))?;
        for (d, r) in &at_one {
            rep.push(format!("{tag} (c) d={d:?} Λ0=1 matches Grassmannian"), *r == -c.clone(), rat_to_string(r));
        }
    }
    Ok(rep)
}

/// The level/dual correspondence at every fixed point and random `Λ`.
pub fn verify_dong_wen(ctx: &GrassmannianCtx, l: i32, max_total: u32, seed: u64) -> Result<Report> {
    let (n, big_n) = (ctx.n as i32, ctx.big_n as i32);
    if !(-n < l && l < big_n - n) {
        return Err(Error::LevelOutOfRange { l, lo: -n, hi: big_n - n });
    }
    let dual = ctx.dual().ok_or(Error::LevelOutOfRange { l, lo: -n, hi: big_n - n })?;
    let mut rng = Rng::fork(seed, &format!("dongwen {n} {big_n} {l}"));
    let mut rep = Report::new();
    let assignments: Vec<Vec<BigRat>> = (0..3).map(|_| rng.distinct_rationals(ctx.big_n, 50)).collect();
    for fp in ctx.fixed_points() {
        let comp = FixedPoint::new(dual, fp.complement())?;
        for (r, lambda) in assignments.iter().enumerate() {
            let vals = lambda_values(lambda, None, None);
            for t in 0..=max_total {
                let mut lhs = RatFuncQ::zero();
                for d in degrees_with_total(ctx.n, t) {
                    lhs = lhs.add(&localize(SeriesKind::ITLevel(l), ctx, &fp, &d)?.expand(lookup(&vals))?);
                }
                let mut rhs = RatFuncQ::zero();
                for d in degrees_with_total(dual.n, t) {
                    rhs = rhs.add(&localize(SeriesKind::ITDual(l), ctx, &comp, &d)?.expand(lookup(&vals))?);
                }
                let ok = lhs == rhs;
                let detail = if ok { String::new() } else { format!("{lhs} vs {rhs}") };
                rep.push(format!("dongwen ({n},{big_n},l={l}) S={:?} Λ#{r} t={t}", fp.indices), ok, detail);
            }
        }
    }
    Ok(rep)
}

/// No `q = 0` pole after total-degree summation at each fixed point, and no
/// `Y`-factor among the roots-of-unity poles.
pub fn verify_small_pole_structure(kind: SeriesKind, ctx: &GrassmannianCtx, max_total: u32, seed: u64) -> Result<Report> {
    let (n, big_n) = (ctx.n as i32, ctx.big_n as i32);
    let mut informational = false;
    if let SeriesKind::ITLevel(l) = kind {
        let boundary = l == -n || (l == big_n - n + 1 && n > 1);
        if !boundary && !(-n < l && l <= big_n - n + 1) {
            return Err(Error::LevelOutOfRange { l, lo: -n + 1, hi: big_n - n + 1 });
        }
        informational = boundary;
    }
    let mut rng = Rng::fork(seed, &format!("poles {kind} {n} {big_n}"));
    let lambda = rng.distinct_rationals(ctx.big_n, 50);
    let y = kind.has_y().then(|| rng.rational(50));
    let vals = lambda_values(&lambda, None, y);
    let mut rep = Report::new();
    for fp in ctx.fixed_points() {
        for t in 0..=max_total {
            let mut sum = RatFuncQ::zero();
            let mut term_poles = 0usize;
            let mut y_misplaced = false;
            for d in degrees_with_total(ctx.n, t) {
                let c = localize(kind, ctx, &fp, &d)?;
                if c.q_exponent() < 0 {
                    term_poles += 1;
                }
                let classes = classify_poles(&c);
                y_misplaced |= classes.roots_of_unity.iter().any(|(k, _)| k.mon.exp(Var::Y) != 0);
                sum = sum.add(&c.expand(lookup(&vals))?);
            }
            let ok = !sum.pole_at_zero() && !y_misplaced;
            let label = format!("poles {kind} ({n},{big_n}) S={:?} t={t}", fp.indices);
            let detail = format!(
                "terms with q=0 pole: {term_poles}; sum pole at q=0: {}{}",
                sum.pole_at_zero(),
                if informational { "; boundary level, informational" } else { "" }
            );
            rep.push(label, ok || informational, detail);
        }
    }
    Ok(rep)
}
