use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::kring::GrassmannianCtx;
use crate::qseries::factored::FactoredCoeff;
use crate::qseries::fraction::Fraction;
use crate::qseries::kinds::{coeff, degrees_up_to, SeriesKind};
use crate::{Error, Result};

/// Truncated series in `Q_1..Q_k` with factored coefficients. A missing
/// degree means "not computed", never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSeries {
    pub ctx: GrassmannianCtx,
    pub nvars: usize,
    pub truncation: u32,
    coeffs: BTreeMap<Vec<u32>, FactoredCoeff>,
}

impl NovikovSeries {
    pub fn empty(ctx: GrassmannianCtx, nvars: usize, truncation: u32) -> Self {
        NovikovSeries { ctx, nvars, truncation, coeffs: BTreeMap::new() }
    }

    /// All coefficients of `kind` with `|d| <= truncation`.
    pub fn build(kind: SeriesKind, ctx: GrassmannianCtx, truncation: u32) -> Result<Self> {
        let nvars = kind.nvars(&ctx);
        let mut s = Self::empty(ctx, nvars, truncation);
        for d in degrees_up_to(nvars, truncation) {
            let c = coeff(kind, &ctx, &d)?;
            s.coeffs.insert(d, c);
        }
        Ok(s)
    }

    pub fn insert(&mut self, d: Vec<u32>, c: FactoredCoeff) -> Result<()> {
        if d.len() != self.nvars {
            return Err(Error::AxisOutOfRange(d.len()));
        }
        if d.iter().sum::<u32>() > self.truncation {
            return Err(Error::InvalidContext(alloc::format!("degree {d:?} beyond truncation")));
        }
        self.coeffs.insert(d, c);
        Ok(())
    }

    pub fn get(&self, d: &[u32]) -> Option<&FactoredCoeff> {
        self.coeffs.get(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &FactoredCoeff)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Applies a per-degree map.
    pub fn map<F: Fn(&[u32], &FactoredCoeff) -> Result<FactoredCoeff>>(&self, f: F) -> Result<Self> {
        let mut out = Self::empty(self.ctx, self.nvars, self.truncation);
        for (d, c) in &self.coeffs {
            out.coeffs.insert(d.clone(), f(d, c)?);
        }
        Ok(out)
    }

    /// Per-degree multiplier `c_d ↦ m(d)·c_d`.
    pub fn mul_by<F: Fn(&[u32]) -> Result<FactoredCoeff>>(&self, m: F) -> Result<Self> {
        self.map(|d, c| Ok(m(d)?.mul(c)))
    }

    /// Sums the coefficients of each total degree (no cancellation).
    pub fn totals(&self) -> BTreeMap<u32, Fraction> {
        let mut out: BTreeMap<u32, Fraction> = BTreeMap::new();
        for (d, c) in &self.coeffs {
            let t = d.iter().sum();
            let cur = out.remove(&t).unwrap_or_default();
            out.insert(t, cur.add_coeff(c));
        }
        out
    }
}

/// Series in a single `Q` with coefficients kept as exact fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalSeries {
    pub ctx: GrassmannianCtx,
    pub truncation: u32,
    pub coeffs: BTreeMap<u32, Fraction>,
}
