//! Canonical factored coefficients and the series constructors.
//!
//! - [`FactoredCoeff`]: monomial prefactor times `∏(1 - q^m·M)^e`, canonically oriented
//! - [`SeriesKind`] and [`coeff`]: exact coefficient of `Q^d` for every series
//! - [`Fraction`]: sums over a least common denominator, with the `P_i - P_j`
//!   nilpotents cancelled after symmetrization
//! - [`NovikovSeries`]: truncated multi-degree series

mod factored;
mod fraction;
mod kinds;
mod novikov;

use alloc::vec::Vec;

pub use factored::{finitized_ratio, range_ratio, FactorKey, FactoredCoeff, QFactor};
pub use fraction::{laurent_in_q, Fraction};
pub use kinds::{coeff, degrees_up_to, degrees_with_total, jt_gap_formula, q_degree_gap, SeriesKind, KIND_NAMES};
pub use novikov::{NovikovSeries, TotalSeries};

use crate::kring::GrassmannianCtx;
use crate::report::Report;
use crate::Result;

/// Sum of the coefficients with `|d| = t`, with the Vandermonde cancelled.
pub fn symmetrized_total_coeff(kind: SeriesKind, ctx: &GrassmannianCtx, t: u32) -> Result<Fraction> {
    let k = kind.nvars(ctx);
    let mut acc = Fraction::zero();
    for d in degrees_with_total(k, t) {
        acc = acc.add_coeff(&coeff(kind, ctx, &d)?);
    }
    acc.cancel_vandermonde(k)
}

/// Denominator factors split by whether their poles sit at roots of unity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleClasses {
    pub roots_of_unity: Vec<(FactorKey, u32)>,
    pub other: Vec<(FactorKey, u32)>,
}

pub fn classify_poles(c: &FactoredCoeff) -> PoleClasses {
    let mut out = PoleClasses::default();
    for (k, &e) in c.factor_map() {
        if e >= 0 {
            continue;
        }
        let entry = (k.clone(), (-e) as u32);
        if k.mon.is_one() {
            out.roots_of_unity.push(entry);
        } else {
            out.other.push(entry);
        }
    }
    out
}

/// `JT` degree gaps for `0 < |d| <= max_total`: equal to the closed formula and
/// at least `N - n + 1`.
pub fn verify_degree_gaps(ctx: &GrassmannianCtx, max_total: u32) -> Result<Report> {
    let mut rep = Report::new();
    let bound = (ctx.big_n - ctx.n + 1) as i64;
    for d in degrees_up_to(ctx.n, max_total) {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let g = q_degree_gap(SeriesKind::JT, ctx, &d)?;
        let f = jt_gap_formula(ctx, &d);
        rep.push(
            alloc::format!("gap JT ({},{}) d={d:?}", ctx.n, ctx.big_n),
            g == f && g >= bound,
            alloc::format!("gap {g}, formula {f}, bound {bound}"),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
