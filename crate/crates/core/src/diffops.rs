//! Closed-form operator actions on truncated Novikov series.
//!
//! - every operator acts per degree by an explicit factored multiplier
//! - `Γ_{l,Λ}` multiplies `Q^d` by the finitized ratio of `(1 - Λq^m)` at `l·d`
//! - the abelian-to-Grassmannian specialization sums equal total degrees and
//!   cancels the `P_i - P_j` nilpotents

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arith::{int, Mono, Monomial, Var};
use crate::kring::GrassmannianCtx;
use crate::qseries::{coeff, finitized_ratio, FactoredCoeff, Fraction, NovikovSeries, SeriesKind, TotalSeries};
use crate::report::Report;
use crate::{Error, Result};

fn p(i: usize) -> Var {
    Var::P(i as u16)
}

fn binom2(d: i64) -> i64 {
    d * (d - 1) / 2
}

/// `Γ_{l,Λ}` (or its inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaOp {
    pub l: Vec<i32>,
    pub lam: Monomial,
    pub inverse: bool,
}

impl GammaOp {
    pub fn new(l: Vec<i32>, lam: Monomial, inverse: bool) -> Result<Self> {
        if l.iter().all(|&x| x == 0) && lam.is_one() {
            return Err(Error::InvalidContext(alloc::string::String::from("trivial Γ operator")));
        }
        Ok(GammaOp { l, lam, inverse })
    }

    /// Multiplier on `Q^d`.
    pub fn multiplier(&self, d: &[u32]) -> Result<FactoredCoeff> {
        if d.len() != self.l.len() {
            return Err(Error::AxisOutOfRange(d.len()));
        }
        let a: i32 = self.l.iter().zip(d).map(|(&l, &di)| l * di as i32).sum();
        let r = finitized_ratio(&self.lam, a)?;
        if self.inverse {
            r.inv()
        } else {
            Ok(r)
        }
    }
}

/// Operator tags, applied with [`apply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffOpSpec {
    Translate { axis: usize, k: i32 },
    Gamma(GammaOp),
    Level { l: i32, raw_sign: bool },
    Lefschetz,
    Restore,
    Adams(i32),
}

pub fn apply(op: &DiffOpSpec, s: &NovikovSeries) -> Result<NovikovSeries> {
    match op {
        DiffOpSpec::Translate { axis, k } => translate_apply(*axis, *k, s),
        DiffOpSpec::Gamma(g) => gamma_apply(g, s),
        DiffOpSpec::Level { l, raw_sign } => level_apply(*l, s, *raw_sign),
        DiffOpSpec::Lefschetz => lefschetz_apply(s),
        DiffOpSpec::Restore => restore_apply(s),
        DiffOpSpec::Adams(k) => adams_apply(*k, s),
    }
}

/// `q^{k·Q_i∂_{Q_i}}` with a 1-based axis.
pub fn translate_apply(axis: usize, k: i32, s: &NovikovSeries) -> Result<NovikovSeries> {
    if axis == 0 || axis > s.nvars {
        return Err(Error::AxisOutOfRange(axis));
    }
    s.mul_by(|d| {
        Ok(FactoredCoeff::from_mono(Mono::from_monomial(Monomial::pow_var(Var::Q, k * d[axis - 1] as i32))))
    })
}

pub fn gamma_apply(op: &GammaOp, s: &NovikovSeries) -> Result<NovikovSeries> {
    s.mul_by(|d| op.multiplier(d))
}

fn adams_monomial(k: i32, m: &Monomial) -> Monomial {
    m.map_exps(|v, e| match v {
        Var::P(_) | Var::L(_) | Var::Y => e * k,
        Var::Nov(_) => e * k.abs(),
        Var::X | Var::Q => e,
    })
}

/// `Ψ^k` on a monomial: `P`, `Λ`, `Y` exponents scale by `k`, Novikov by `|k|`.
pub fn adams(k: i32, m: &Mono) -> Result<Mono> {
    if k == 0 {
        return Err(Error::InvalidContext(alloc::string::String::from("Adams operation needs k != 0")));
    }
    Ok(Mono::new(m.coeff.clone(), adams_monomial(k, &m.mon)))
}

/// `Ψ^k` on a series: coefficients transformed, `Q^d ↦ Q^{|k|d}`.
pub fn adams_apply(k: i32, s: &NovikovSeries) -> Result<NovikovSeries> {
    adams(k, &Mono::one())?;
    let mut out = NovikovSeries::empty(s.ctx, s.nvars, s.truncation * k.unsigned_abs());
    for (d, c) in s.iter() {
        let c2 = c.map_monomials(|m| adams_monomial(k, m))?;
        out.insert(d.iter().map(|&x| x * k.unsigned_abs()).collect(), c2)?;
    }
    Ok(out)
}

/// Level-`l` multiplier `∏_i P_i^{l d_i} q^{l·binom(d_i,2)}`; `raw_sign` uses `(-P_i)`.
pub fn level_multiplier(l: i32, d: &[u32], raw_sign: bool) -> FactoredCoeff {
    let mut pairs = Vec::new();
    let mut qe = 0i64;
    let mut total = 0i64;
    for (i0, &di) in d.iter().enumerate() {
        pairs.push((p(i0 + 1), l * di as i32));
        qe += binom2(di as i64);
        total += di as i64;
    }
    pairs.push((Var::Q, l * qe as i32));
    let sign = if raw_sign && (l as i64 * total) % 2 != 0 { int(-1) } else { int(1) };
    FactoredCoeff::from_mono(Mono::new(sign, Monomial::from_pairs(pairs)))
}

pub fn level_apply(l: i32, s: &NovikovSeries, raw_sign: bool) -> Result<NovikovSeries> {
    s.mul_by(|d| Ok(level_multiplier(l, d, raw_sign)))
}

/// `∏_{m=0}^{d-1}((1 - P q^m)/(1 - P^{-1} q^{-m}))^l`, the level operator on `Q^d`.
pub fn level_operator_product(v: Var, d: u32, l: i32) -> Result<FactoredCoeff> {
    let mut c = FactoredCoeff::one();
    for m in 0..d as i32 {
        c.mul_factor(m, Monomial::var(v), l)?;
        c.mul_factor(-m, Monomial::pow_var(v, -1), -l)?;
    }
    Ok(c)
}

/// `∏_i ∏_{m=1}^{d_i} (1 - q^m Y P_i)`.
pub fn lefschetz_multiplier(d: &[u32]) -> Result<FactoredCoeff> {
    let mut c = FactoredCoeff::one();
    for (i0, &di) in d.iter().enumerate() {
        for m in 1..=di as i32 {
            c.mul_factor(m, Monomial::from_pairs([(Var::Y, 1), (p(i0 + 1), 1)]), 1)?;
        }
    }
    Ok(c)
}

pub fn lefschetz_apply(s: &NovikovSeries) -> Result<NovikovSeries> {
    s.mul_by(lefschetz_multiplier)
}

/// `∏_{i,j}(1 - Y q^{d_i} P_i/Λ_j) / ∏_{i,j}(1 - Y q^{d_i-d_j} P_i/P_j)`.
pub fn restore_multiplier(big_n: usize, d: &[u32]) -> Result<FactoredCoeff> {
    let mut c = FactoredCoeff::one();
    for (i0, &di) in d.iter().enumerate() {
        for j in 1..=big_n {
            let mon = Monomial::from_pairs([(Var::Y, 1), (p(i0 + 1), 1), (Var::L(j as u16), -1)]);
            c.mul_factor(di as i32, mon, 1)?;
        }
        for (j0, &dj) in d.iter().enumerate() {
            let mon = Monomial::from_pairs([(Var::Y, 1), (p(i0 + 1), 1), (p(j0 + 1), -1)]);
            c.mul_factor(di as i32 - dj as i32, mon, -1)?;
        }
    }
    Ok(c)
}

pub fn restore_apply(s: &NovikovSeries) -> Result<NovikovSeries> {
    let big_n = s.ctx.big_n;
    s.mul_by(|d| restore_multiplier(big_n, d))
}

/// `Q_1 = … = Q_n = Q` (and `Λ0 = 1` when asked), with the `P_i - P_j`
/// denominators cancelled after summing each total degree.
pub fn specialize_nonabelian(s: &NovikovSeries, drop_l0: bool) -> Result<TotalSeries> {
    let mut sums: BTreeMap<u32, Fraction> = BTreeMap::new();
    for (d, c) in s.iter() {
        let c = if drop_l0 {
            c.subst(|v| if v == Var::L(0) { Some(Mono::one()) } else { None })?
        } else {
            c.clone()
        };
        let t = d.iter().sum();
        let cur = sums.remove(&t).unwrap_or_default();
        sums.insert(t, cur.add_coeff(&c));
    }
    let mut coeffs = BTreeMap::new();
    for (t, f) in sums {
        coeffs.insert(t, f.cancel_vandermonde(s.nvars)?);
    }
    Ok(TotalSeries { ctx: s.ctx, truncation: s.truncation, coeffs })
}

/// Lefschetz and restore identities on `ctx` for `|d| <= max_total`:
///
/// - `lefschetz_apply(JT) = I_PiE_dualtaut`
/// - `restore_apply(IT_tilde)_d = restore_multiplier(0)·IT_d`
pub fn verify_operator_identities(ctx: &GrassmannianCtx, max_total: u32) -> Result<Report> {
    let mut rep = Report::new();
    let tag = alloc::format!("({},{})", ctx.n, ctx.big_n);
    let jt = NovikovSeries::build(SeriesKind::JT, *ctx, max_total)?;
    let lef = lefschetz_apply(&jt)?;
    let want = NovikovSeries::build(SeriesKind::IPiEDualTaut, *ctx, max_total)?;
    for (d, c) in lef.iter() {
        let ok = want.get(d) == Some(c);
        rep.push(alloc::format!("lefschetz {tag} d={d:?}"), ok, if ok { "equal" } else { "differs" });
    }
    let restored = restore_apply(&NovikovSeries::build(SeriesKind::ITTilde, *ctx, max_total)?)?;
    let eu = restore_multiplier(ctx.big_n, &alloc::vec![0; ctx.n])?;
    for (d, c) in restored.iter() {
        let ok = *c == eu.mul(&coeff(SeriesKind::IT, ctx, d)?);
        rep.push(alloc::format!("restore {tag} d={d:?}"), ok, if ok { "equal" } else { "differs" });
    }
    Ok(rep)
}

/// `∏_{m<d}((1 - Pq^m)/(1 - P^{-1}q^{-m}))^l = (-P)^{ld} q^{l·binom(d,2)}`.
pub fn verify_level_telescoping(max_d: u32, levels: &[i32]) -> Result<Report> {
    let mut rep = Report::new();
    for &l in levels {
        for d in 0..=max_d {
            let ok = level_operator_product(Var::P(1), d, l)? == level_multiplier(l, &[d], true);
            rep.push(alloc::format!("level telescoping l={l} d={d}"), ok, if ok { "equal" } else { "differs" });
        }
    }
    Ok(rep)
}
