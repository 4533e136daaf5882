use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{int, Mono, Monomial, Var};
use crate::kring::GrassmannianCtx;
use crate::qseries::factored::{finitized_ratio, range_ratio, FactoredCoeff};
use crate::{Error, Result};

/// Series constructors. Level-carrying tags hold `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesKind {
    JT,
    JNonequiv,
    JPt,
    JXtilde,
    JPiGT,
    IT,
    ITTilde,
    ITLevel(i32),
    ITDual(i32),
    IPiEDualTaut,
}

pub const KIND_NAMES: [&str; 10] =
    ["JT", "J_nonequiv", "J_pt", "J_Xtilde", "J_PiGT", "IT", "IT_tilde", "IT_level", "IT_dual", "I_PiE_dualtaut"];

impl SeriesKind {
    /// Parses a kind name; `level` is required exactly for the level-carrying tags.
    pub fn parse(name: &str, level: Option<i32>) -> Result<Self> {
        let needs = matches!(name, "IT_level" | "IT_dual");
        if needs != level.is_some() {
            return Err(Error::IncompatibleKind(alloc::format!("level given or missing for {name}")));
        }
        Ok(match name {
            "JT" => SeriesKind::JT,
            "J_nonequiv" => SeriesKind::JNonequiv,
            "J_pt" => SeriesKind::JPt,
            "J_Xtilde" => SeriesKind::JXtilde,
            "J_PiGT" => SeriesKind::JPiGT,
            "IT" => SeriesKind::IT,
            "IT_tilde" => SeriesKind::ITTilde,
            "IT_level" => SeriesKind::ITLevel(level.unwrap_or(0)),
            "IT_dual" => SeriesKind::ITDual(level.unwrap_or(0)),
            "I_PiE_dualtaut" => SeriesKind::IPiEDualTaut,
            _ => {
                return Err(Error::IncompatibleKind(alloc::format!(
                    "unknown kind {name}; expected one of {}",
                    KIND_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SeriesKind::JT => "JT",
            SeriesKind::JNonequiv => "J_nonequiv",
            SeriesKind::JPt => "J_pt",
            SeriesKind::JXtilde => "J_Xtilde",
            SeriesKind::JPiGT => "J_PiGT",
            SeriesKind::IT => "IT",
            SeriesKind::ITTilde => "IT_tilde",
            SeriesKind::ITLevel(_) => "IT_level",
            SeriesKind::ITDual(_) => "IT_dual",
            SeriesKind::IPiEDualTaut => "I_PiE_dualtaut",
        }
    }

    pub fn level(&self) -> Option<i32> {
        match self {
            SeriesKind::ITLevel(l) | SeriesKind::ITDual(l) => Some(*l),
            _ => None,
        }
    }

    pub fn has_y(&self) -> bool {
        matches!(self, SeriesKind::IT | SeriesKind::ITTilde | SeriesKind::IPiEDualTaut)
    }

    pub fn has_l0(&self) -> bool {
        matches!(self, SeriesKind::JPiGT)
    }

    /// Number of Novikov variables: `N - n` for the dual series, else `n`.
    pub fn nvars(&self, ctx: &GrassmannianCtx) -> usize {
        match self {
            SeriesKind::ITDual(_) => ctx.big_n - ctx.n,
            _ => ctx.n,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level() {
            Some(l) => write!(f, "{}({l})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for SeriesKind {
    type Err = Error;

    /// Accepts `JT`, `IT_level(2)`, `IT_dual(-1)`, ...
    fn from_str(s: &str) -> Result<Self> {
        if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::IncompatibleKind(String::from(s)))?;
            let l: i32 = inner.parse().map_err(|_| Error::IncompatibleKind(String::from(s)))?;
            Self::parse(&s[..open], Some(l))
        } else {
            Self::parse(s, None)
        }
    }
}

fn p(i: usize) -> Var {
    Var::P(i as u16)
}

fn l(j: usize) -> Var {
    Var::L(j as u16)
}

fn ratio_mon(a: Var, b: Var) -> Monomial {
    Monomial::from_pairs([(a, 1), (b, -1)])
}

fn binom2(d: i64) -> i64 {
    d * (d - 1) / 2
}

/// `∏_i ∏_j ∏_{m=lo_i..=hi_i} (1 - q^m·extra·P_i·L_j^s)^e`.
fn mul_pl(
    c: &mut FactoredCoeff,
    ctx: &GrassmannianCtx,
    d: &[u32],
    extra: &Monomial,
    l_sign: i32,
    shift: i32,
    e: i32,
) -> Result<()> {
    for (i0, &di) in d.iter().enumerate() {
        for j in 1..=ctx.big_n {
            let mon = extra.mul(&Monomial::from_pairs([(p(i0 + 1), 1), (l(j), l_sign)]));
            for m in 1..=di as i32 {
                c.mul_factor(m + shift, mon.clone(), e)?;
            }
        }
    }
    Ok(())
}

/// `∏_{i≠j} ratio(extra·P_i/P_j, d_i - d_j)^e`.
fn mul_pp(c: &mut FactoredCoeff, d: &[u32], extra: &Monomial, e: i32) -> Result<()> {
    for (i0, &di) in d.iter().enumerate() {
        for (j0, &dj) in d.iter().enumerate() {
            if i0 == j0 {
                continue;
            }
            let mon = extra.mul(&ratio_mon(p(i0 + 1), p(j0 + 1)));
            let r = finitized_ratio(&mon, di as i32 - dj as i32)?.pow(e)?;
            *c = c.mul(&r);
        }
    }
    Ok(())
}

fn level_prefactor(d: &[u32], l: i32, binom_shift: i64, sign: i32) -> Mono {
    let mut pairs = Vec::new();
    let mut qe: i64 = 0;
    for (i0, &di) in d.iter().enumerate() {
        let di = di as i64;
        pairs.push((p(i0 + 1), sign * l * di as i32));
        qe += binom2(di + binom_shift);
    }
    pairs.push((Var::Q, sign * l * qe as i32));
    Mono::new(int(1), Monomial::from_pairs(pairs))
}

/// Exact factored coefficient of `Q^d` in the series `kind` over `ctx`.
pub fn coeff(kind: SeriesKind, ctx: &GrassmannianCtx, d: &[u32]) -> Result<FactoredCoeff> {
    let k = kind.nvars(ctx);
    if d.len() != k {
        return Err(Error::InvalidContext(alloc::format!("{kind} on {ctx:?} needs {k} degrees, got {}", d.len())));
    }
    let one = Monomial::one();
    let y = Monomial::var(Var::Y);
    let mut c = FactoredCoeff::one();
    match kind {
        SeriesKind::JT => {
            mul_pl(&mut c, ctx, d, &one, -1, 0, -1)?;
            mul_pp(&mut c, d, &one, 1)?;
        }
        SeriesKind::JNonequiv => {
            for (i0, &di) in d.iter().enumerate() {
                for m in 1..=di as i32 {
                    c.mul_factor(m, Monomial::var(p(i0 + 1)), -(ctx.big_n as i32))?;
                }
            }
            mul_pp(&mut c, d, &one, 1)?;
        }
        SeriesKind::JPt => {
            for &di in d {
                for m in 1..=di as i32 {
                    c.mul_factor(m, Monomial::one(), -1)?;
                }
            }
        }
        SeriesKind::JXtilde => {
            mul_pl(&mut c, ctx, d, &one, -1, 0, -1)?;
        }
        SeriesKind::JPiGT => {
            mul_pl(&mut c, ctx, d, &one, -1, 0, -1)?;
            mul_pp(&mut c, d, &Monomial::var(Var::L(0)), 1)?;
        }
        SeriesKind::IT => {
            mul_pl(&mut c, ctx, d, &y, -1, 0, 1)?;
            mul_pl(&mut c, ctx, d, &one, -1, 0, -1)?;
            mul_pp(&mut c, d, &one, 1)?;
            mul_pp(&mut c, d, &y, -1)?;
        }
        SeriesKind::ITTilde => {
            mul_pl(&mut c, ctx, d, &y, -1, -1, 1)?;
            mul_pl(&mut c, ctx, d, &one, -1, 0, -1)?;
            mul_pp(&mut c, d, &one, 1)?;
            for (i0, &di) in d.iter().enumerate() {
                for (j0, &dj) in d.iter().enumerate() {
                    if i0 != j0 {
                        let mon = y.mul(&ratio_mon(p(i0 + 1), p(j0 + 1)));
                        let e = di as i32 - dj as i32;
                        c = c.div(&range_ratio(&mon, -1, e - 1)?)?;
                    }
                }
            }
        }
        SeriesKind::ITLevel(lv) => {
            c = coeff(SeriesKind::JT, ctx, d)?;
            c.mul_mono(&level_prefactor(d, lv, 0, 1));
        }
        SeriesKind::ITDual(lv) => {
            c.mul_mono(&level_prefactor(d, lv, 1, -1));
            mul_pl(&mut c, ctx, d, &one, 1, 0, -1)?;
            mul_pp(&mut c, d, &one, 1)?;
        }
        SeriesKind::IPiEDualTaut => {
            c = coeff(SeriesKind::JT, ctx, d)?;
            for (i0, &di) in d.iter().enumerate() {
                for m in 1..=di as i32 {
                    c.mul_factor(m, y.mul(&Monomial::var(p(i0 + 1))), 1)?;
                }
            }
        }
    }
    Ok(c)
}

/// Denominator q-degree minus numerator q-degree of the coefficient.
pub fn q_degree_gap(kind: SeriesKind, ctx: &GrassmannianCtx, d: &[u32]) -> Result<i64> {
    Ok(coeff(kind, ctx, d)?.q_degree_gap())
}

/// The closed-form gap for `JT`.
pub fn jt_gap_formula(ctx: &GrassmannianCtx, d: &[u32]) -> i64 {
    let mut g: i64 = 0;
    for &di in d {
        g += ctx.big_n as i64 * binom2(di as i64 + 1);
    }
    for &di in d {
        for &dj in d {
            if di > dj {
                g -= binom2(di as i64 - dj as i64 + 1);
            }
        }
    }
    g
}

/// All degree vectors of length `k` with total `t`, lexicographically decreasing.
pub fn degrees_with_total(k: usize, t: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    fill(k, t, &mut cur, &mut out);
    out
}

fn fill(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == k {
        cur.push(left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for a in (0..=left).rev() {
        cur.push(a);
        fill(k, left - a, cur, out);
        cur.pop();
    }
}

/// All degree vectors of length `k` with total at most `max_total`.
pub fn degrees_up_to(k: usize, max_total: u32) -> Vec<Vec<u32>> {
    (0..=max_total).flat_map(|t| degrees_with_total(k, t)).collect()
}
