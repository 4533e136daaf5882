use alloc::format;
use alloc::vec::Vec;

use crate::arith::{Mono, Monomial, Var};
use crate::kring::GrassmannianCtx;
use crate::qseries::{coeff, degrees_up_to, FactoredCoeff, Fraction, SeriesKind};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffVariant {
    Nonequivariant,
    Equivariant,
}

impl DiffVariant {
    pub fn name(self) -> &'static str {
        match self {
            DiffVariant::Nonequivariant => "nonequivariant",
            DiffVariant::Equivariant => "equivariant",
        }
    }
}

fn p(i: usize) -> Var {
    Var::P(i as u16)
}

fn coefficient(ctx: &GrassmannianCtx, variant: DiffVariant, d: &[u32]) -> Result<FactoredCoeff> {
    let c = coeff(SeriesKind::JPiGT, ctx, d)?;
    match variant {
        DiffVariant::Equivariant => Ok(c),
        DiffVariant::Nonequivariant => c.subst(|v| match v {
            Var::L(_) => Some(Mono::one()),
            _ => None,
        }),
    }
}

fn lambda_mon(variant: DiffVariant, j: usize) -> Monomial {
    match variant {
        DiffVariant::Equivariant => Monomial::pow_var(Var::L(j as u16), -1),
        DiffVariant::Nonequivariant => Monomial::one(),
    }
}

fn l0_mon(variant: DiffVariant) -> Monomial {
    match variant {
        DiffVariant::Equivariant => Monomial::var(Var::L(0)),
        DiffVariant::Nonequivariant => Monomial::one(),
    }
}

/// Per-degree residuals of the difference system on `J_PiGT`:
///
/// - left: `∏_{i'≠i}(1 - qΛ0 P_{i'}/P_i q^{d_{i'}-d_i}) ∏_j(1 - P_i q^{d_i}/Λ_j) J_d`
/// - right: `∏_{i'≠i}(1 - qΛ0 P_i/P_{i'} q^{d_i-1-d_{i'}}) J_{d-1_i}`
/// - the non-equivariant variant sets `Λ_j = Λ0 = 1`
/// - for `d_i = 0` the right side vanishes and the left side must carry the
///   relation `∏_j(1 - P_i/Λ_j)`
pub fn verify_difference_system(ctx: &GrassmannianCtx, variant: DiffVariant, dmax: u32) -> Result<Report> {
    if dmax == 0 {
        return Err(Error::InvalidContext("difference system needs D ≥ 1".into()));
    }
    let n = ctx.n;
    let mut rep = Report::new();
    let l0 = l0_mon(variant);
    for d in degrees_up_to(n, dmax) {
        let jd = coefficient(ctx, variant, &d)?;
        for i in 1..=n {
            let di = d[i - 1] as i32;
            let mut lhs = jd.clone();
            for i2 in (1..=n).filter(|&k| k != i) {
                let mon = l0.mul(&Monomial::from_pairs([(p(i2), 1), (p(i), -1)]));
                lhs.mul_factor(1 + d[i2 - 1] as i32 - di, mon, 1)?;
            }
            let mut relation = FactoredCoeff::one();
            for j in 1..=ctx.big_n {
                let mon = Monomial::var(p(i)).mul(&lambda_mon(variant, j));
                lhs.mul_factor(di, mon.clone(), 1)?;
                relation.mul_factor(0, mon, 1)?;
            }
            let label = format!("diffeq {} ({},{}) d={d:?} i={i}", variant.name(), ctx.n, ctx.big_n);
            if di == 0 {
                let ok = match lhs.div(&relation) {
                    Ok(quot) => relation
                        .factor_map()
                        .keys()
                        .all(|k| quot.factor_map().get(k).is_none_or(|&e| e >= 0)),
                    Err(_) => false,
                };
                rep.push(label, ok || lhs.is_zero(), "zero modulo relation");
                continue;
            }
            let mut prev = d.clone();
            prev[i - 1] -= 1;
            let mut rhs = coefficient(ctx, variant, &prev)?;
            for i2 in (1..=n).filter(|&k| k != i) {
                let mon = l0.mul(&Monomial::from_pairs([(p(i), 1), (p(i2), -1)]));
                rhs.mul_factor(di - d[i2 - 1] as i32, mon, 1)?;
            }
            let diff = Fraction::from_coeff(&lhs).add(&Fraction::from_coeff(&rhs.neg()));
            let ok = diff.is_zero();
            rep.push(label, ok, if ok { "residual 0" } else { "residual nonzero" });
        }
    }
    Ok(rep)
}

/// Runs both variants over a grid of contexts.
pub fn verify_difference_grid(grid: &[(usize, usize)], dmax: u32) -> Result<Report> {
    let mut rep = Report::new();
    let variants: Vec<DiffVariant> = alloc::vec![DiffVariant::Nonequivariant, DiffVariant::Equivariant];
    for &(n, big_n) in grid {
        let ctx = GrassmannianCtx::new(n, big_n)?;
        for &v in &variants {
            rep.extend(verify_difference_system(&ctx, v, dmax)?);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        for (n, big_n, dmax) in [(1, 1, 4), (1, 3, 3), (2, 2, 2)] {
            let ctx = GrassmannianCtx::new(n, big_n).unwrap();
            for v in [DiffVariant::Nonequivariant, DiffVariant::Equivariant] {
                let rep = verify_difference_system(&ctx, v, dmax).unwrap();
                assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
                assert!(!rep.is_empty());
            }
        }
    }

    #[test]
    fn wrong_power_fails() {
        // dropping one Λ-factor must break the identity
        let ctx = GrassmannianCtx::new(1, 2).unwrap();
        let jd = coefficient(&ctx, DiffVariant::Equivariant, &[2]).unwrap();
        let mut lhs = jd.clone();
        lhs.mul_factor(2, Monomial::var(p(1)).mul(&lambda_mon(DiffVariant::Equivariant, 1)), 1).unwrap();
        let rhs = coefficient(&ctx, DiffVariant::Equivariant, &[1]).unwrap();
        assert!(!Fraction::from_coeff(&lhs).equals(&Fraction::from_coeff(&rhs)));
    }
}
