use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{BigRat, UPoly};
use crate::{Error, Result};

/// Reduced rational function of `q`; the denominator's lowest nonzero
/// coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: UPoly,
    den: UPoly,
}

/// Result of [`RatFuncQ::residue_at`]: `not_a_pole` flags a regular point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub value: BigRat,
    pub not_a_pole: bool,
}

/// Truncated Laurent expansion `Σ_{k=valuation}^{order} coeffs[k-valuation] (q-point)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub point: BigRat,
    pub valuation: i64,
    pub coeffs: Vec<BigRat>,
}

impl LocalExpansion {
    /// Multiplicity in the denominator minus multiplicity in the numerator.
    pub fn pole_order(&self) -> i64 {
        -self.valuation
    }

    pub fn coeff(&self, k: i64) -> BigRat {
        if k < self.valuation {
            return BigRat::zero();
        }
        self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(BigRat::zero)
    }
}

pub fn ratq_normalize(num: &UPoly, den: &UPoly) -> Result<RatFuncQ> {
    RatFuncQ::new(num.clone(), den.clone())
}

impl RatFuncQ {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num, den);
        if g.degree().unwrap_or(0) > 0 {
            n = n.divrem(&g).0;
            d = d.divrem(&g).0;
        }
        let v = d.valuation().expect("nonzero denominator");
        let k = d.coeff(v).recip();
        Ok(RatFuncQ { num: n.scale(&k), den: d.scale(&k) })
    }

    pub fn zero() -> Self {
        RatFuncQ { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(a: BigRat) -> Self {
        RatFuncQ { num: UPoly::constant(a), den: UPoly::one() }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFuncQ { num: p, den: UPoly::one() }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(UPoly::monomial(BigRat::one(), k as usize))
        } else {
            RatFuncQ { num: UPoly::one(), den: UPoly::monomial(BigRat::one(), (-k) as usize) }
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero den");
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero den")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFuncQ { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero den")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn scale(&self, a: &BigRat) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        RatFuncQ { num: self.num.scale(a), den: self.den.clone() }
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn has_pole_at(&self, x: &BigRat) -> bool {
        self.den.eval(x).is_zero()
    }

    pub fn residue_at(&self, x: &BigRat) -> Result<Residue> {
        let mult = self.den.root_multiplicity(x);
        if mult == 0 {
            return Ok(Residue { value: BigRat::zero(), not_a_pole: true });
        }
        if mult > 1 {
            return Err(Error::NonSimplePole);
        }
        let value = self.num.eval(x) / self.den.derivative().eval(x);
        Ok(Residue { value, not_a_pole: false })
    }

    pub fn local_expand(&self, point: &BigRat, order: i64) -> LocalExpansion {
        if self.is_zero() {
            return LocalExpansion { point: point.clone(), valuation: order + 1, coeffs: Vec::new() };
        }
        let n = self.num.taylor_shift(point);
        let d = self.den.taylor_shift(point);
        let vn = n.valuation().unwrap_or(0);
        let vd = d.valuation().unwrap_or(0);
        let (n, d) = (n.unshift(vn), d.unshift(vd));
        let valuation = vn as i64 - vd as i64;
        let count = if order >= valuation { (order - valuation + 1) as usize } else { 0 };
        let d0inv = d.coeff(0).recip();
        let mut out: Vec<BigRat> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = n.coeff(k);
            for (j, c) in out.iter().enumerate() {
                let dj = d.coeff(k - j);
                if !dj.is_zero() {
                    acc -= c * dj;
                }
            }
            out.push(acc * &d0inv);
        }
        LocalExpansion { point: point.clone(), valuation, coeffs: out }
    }

    /// Degree of the denominator minus degree of the numerator.
    pub fn degree_gap(&self) -> i64 {
        self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64
    }

    pub fn pole_at_zero(&self) -> bool {
        self.den.coeff(0).is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == UPoly::one() && self.den == UPoly::one()
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        if self.den.degree() == Some(0) && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0) / self.den.coeff(0))
        } else {
            None
        }
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn rf(n: &[i64], d: &[i64]) -> RatFuncQ {
        RatFuncQ::new(UPoly::from_ints(n), UPoly::from_ints(d)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rf(&[1, 0, -1], &[1, -1]), rf(&[1, 1], &[1]));
        assert_eq!(rf(&[0, 1], &[0, 1]), RatFuncQ::one());
        let r = rf(&[2, -2], &[4]);
        assert_eq!(r.num(), &UPoly::new(alloc::vec![rat(1, 2), rat(-1, 2)]));
        assert_eq!(r.den(), &UPoly::one());
        assert_eq!(RatFuncQ::new(UPoly::one(), UPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn normalization_uses_lowest_coefficient() {
        let r = rf(&[1], &[0, 2, 4]);
        assert_eq!(r.den().coeff(1), int(1));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(rf(&[1], &[1, -1]).residue_at(&int(1)).unwrap().value, int(-1));
        // q/((q-2)(q-3)) = q/(6 - 5q + q^2)
        assert_eq!(rf(&[0, 1], &[6, -5, 1]).residue_at(&int(2)).unwrap().value, int(-2));
        assert_eq!(rf(&[1], &[1, -2, 1]).residue_at(&int(1)), Err(Error::NonSimplePole));
        let r = rf(&[1], &[1, -1]).residue_at(&int(5)).unwrap();
        assert!(r.not_a_pole);
    }

    #[test]
    fn local_expand_examples() {
        let g = rf(&[1], &[1, -1]).local_expand(&int(0), 2);
        assert_eq!(g.valuation, 0);
        assert_eq!(g.coeffs, alloc::vec![int(1), int(1), int(1)]);
        let p = rf(&[1], &[1, -1]).local_expand(&int(1), 0);
        assert_eq!(p.pole_order(), 1);
        assert_eq!(p.coeffs, alloc::vec![int(-1), int(0)]);
        let c = rf(&[1, 0, -1], &[1, -1]).local_expand(&int(1), 1);
        assert_eq!(c.valuation, 0);
        assert_eq!(c.coeffs, alloc::vec![int(2), int(1)]);
    }
}
