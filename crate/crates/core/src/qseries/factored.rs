use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{rat_pow, BigRat, LaurentPoly, Mono, Monomial, RatFuncQ, UPoly, Var};
use crate::{Error, Result};

/// Key of a factor `(1 - q^m·mon)`; ordered by `(mon, m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorKey {
    pub mon: Monomial,
    pub m: i32,
}

impl FactorKey {
    pub fn new(m: i32, mon: Monomial) -> Self {
        FactorKey { mon, m }
    }

    /// `1 - q^m·mon` as a Laurent polynomial (q included as a variable).
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::one_minus(&self.mon.mul(&Monomial::pow_var(Var::Q, self.m)))
    }

    /// A factor with trivial monomial and `m = 0` is identically zero.
    pub fn is_zero_factor(&self) -> bool {
        self.m == 0 && self.mon.is_one()
    }

    /// Canonical orientation: `m > 0`, or `m = 0` with a positive leading
    /// exponent. Returns the key and whether `(1 - q^m M) = -q^m M (1 - q^-m M^-1)`
    /// was applied.
    fn canonical(m: i32, mon: Monomial) -> (FactorKey, bool) {
        let flip = m < 0 || (m == 0 && mon.leading_sign() < 0);
        if flip {
            (FactorKey { mon: mon.inv(), m: -m }, true)
        } else {
            (FactorKey { mon, m }, false)
        }
    }
}

impl fmt::Display for FactorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.mon.mul(&Monomial::pow_var(Var::Q, self.m));
        write!(f, "(1 - {t})")
    }
}

/// One factor `(1 - q^m·mono)^sign_exponent` with multiplicity one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFactor {
    pub m: i32,
    pub mono: Monomial,
    pub sign_exponent: i32,
}

/// `prefactor · ∏ (1 - q^m·M)^e` in canonical form: no factor appears with
/// both signs, every factor is canonically oriented, zero is a zero prefactor
/// with no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredCoeff {
    prefactor: Mono,
    factors: BTreeMap<FactorKey, i32>,
}

impl Default for FactoredCoeff {
    fn default() -> Self {
        Self::one()
    }
}

impl FactoredCoeff {
    pub fn one() -> Self {
        FactoredCoeff { prefactor: Mono::one(), factors: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        FactoredCoeff { prefactor: Mono::zero(), factors: BTreeMap::new() }
    }

    pub fn from_mono(m: Mono) -> Self {
        if m.is_zero() {
            Self::zero()
        } else {
            FactoredCoeff { prefactor: m, factors: BTreeMap::new() }
        }
    }

    /// `(1 - q^m·mon)^e`.
    pub fn factor(m: i32, mon: Monomial, e: i32) -> Result<Self> {
        let mut c = Self::one();
        c.mul_factor(m, mon, e)?;
        Ok(c)
    }

    pub fn prefactor(&self) -> &Mono {
        &self.prefactor
    }

    pub fn factor_map(&self) -> &BTreeMap<FactorKey, i32> {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.prefactor == Mono::one()
    }

    /// Factors expanded with multiplicity, in canonical order.
    pub fn qfactors(&self) -> Vec<QFactor> {
        let mut out = Vec::new();
        for (k, &e) in &self.factors {
            for _ in 0..e.unsigned_abs() {
                out.push(QFactor { m: k.m, mono: k.mon.clone(), sign_exponent: e.signum() });
            }
        }
        out
    }

    pub fn mul_mono(&mut self, k: &Mono) {
        if self.is_zero() {
            return;
        }
        if k.is_zero() {
            *self = Self::zero();
            return;
        }
        self.prefactor = self.prefactor.mul(k);
    }

    /// Multiplies by `(1 - q^m·mon)^e`.
    pub fn mul_factor(&mut self, m: i32, mon: Monomial, e: i32) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        let (qe, mon) = mon.split_var(Var::Q);
        let probe = FactorKey { mon, m: m + qe };
        if probe.is_zero_factor() {
            if e < 0 {
                return Err(Error::ZeroFactor);
            }
            *self = Self::zero();
            return Ok(());
        }
        if self.is_zero() {
            return Ok(());
        }
        let (key, flipped) = FactorKey::canonical(probe.m, probe.mon);
        if flipped {
            // (1 - q^m M) = -q^m M (1 - q^-m M^-1) with (m, M) the original pair.
            let orig = key.mon.inv().mul(&Monomial::pow_var(Var::Q, -key.m));
            let unit = Mono::new(-BigRat::one(), orig);
            self.prefactor = self.prefactor.mul(&unit.pow(e));
        }
        let slot = self.factors.entry(key.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&key);
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        r.prefactor = r.prefactor.mul(&o.prefactor);
        for (k, &e) in &o.factors {
            let slot = r.factors.entry(k.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                r.factors.remove(k);
            }
        }
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(FactoredCoeff {
            prefactor: self.prefactor.pow(-1),
            factors: self.factors.iter().map(|(k, &e)| (k.clone(), -e)).collect(),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.prefactor = r.prefactor.neg();
        r
    }

    /// Substitutes variables by unit-coefficient monomials and re-canonicalizes.
    pub fn subst<F: Fn(Var) -> Option<Mono>>(&self, f: F) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let pre = self.prefactor.mon.subst(&f);
        let mut r = Self::from_mono(Mono::new(&self.prefactor.coeff * &pre.coeff, pre.mon));
        for (k, &e) in &self.factors {
            let m2 = k.mon.subst(&f);
            if !m2.coeff.is_one() {
                return Err(Error::IncompatibleKind(String::from(
                    "factor substitution must map monomials to unit monomials",
                )));
            }
            let (qe, rest) = m2.mon.split_var(Var::Q);
            r.mul_factor(k.m + qe, rest, e)?;
        }
        Ok(r)
    }

    /// Rewrites every exponent vector through `g` (Adams operations and the like).
    pub fn map_monomials<G: Fn(&Monomial) -> Monomial>(&self, g: G) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut r = Self::from_mono(Mono::new(self.prefactor.coeff.clone(), g(&self.prefactor.mon)));
        for (k, &e) in &self.factors {
            let (qe, rest) = g(&k.mon).split_var(Var::Q);
            r.mul_factor(k.m + qe, rest, e)?;
        }
        Ok(r)
    }

    /// Exponent of `q` in the prefactor.
    pub fn q_exponent(&self) -> i32 {
        self.prefactor.mon.exp(Var::Q)
    }

    /// q-degree of the denominator minus q-degree of the numerator.
    pub fn q_degree_gap(&self) -> i64 {
        let mut gap: i64 = -(self.q_exponent() as i64);
        for (k, &e) in &self.factors {
            gap -= (k.m as i64) * (e as i64);
        }
        gap
    }

    /// Evaluates with every variable (including `q`) assigned.
    pub fn eval<F: Fn(Var) -> Option<BigRat>>(&self, f: F) -> Result<BigRat> {
        if self.is_zero() {
            return Ok(BigRat::zero());
        }
        let mut acc = self.prefactor.eval(&f)?;
        let qv = f(Var::Q).ok_or(Error::Unassigned(Var::Q))?;
        for (k, &e) in &self.factors {
            let v = BigRat::one() - rat_pow(&qv, k.m as i64) * k.mon.eval(&f)?;
            if v.is_zero() {
                if e < 0 {
                    return Err(Error::ZeroFactor);
                }
                return Ok(BigRat::zero());
            }
            acc *= rat_pow(&v, e as i64);
        }
        Ok(acc)
    }

    /// Exact rational function of `q` after assigning every other variable.
    pub fn expand<F: Fn(Var) -> Option<BigRat>>(&self, f: F) -> Result<RatFuncQ> {
        if self.is_zero() {
            return Ok(RatFuncQ::zero());
        }
        let (qe, rest) = self.prefactor.mon.split_var(Var::Q);
        let c = &self.prefactor.coeff * rest.eval(&f)?;
        let mut num = UPoly::constant(c);
        let mut den = UPoly::one();
        for (k, &e) in &self.factors {
            let v = k.mon.eval(&f)?;
            let m = k.m as usize;
            if m == 0 && v.is_one() {
                if e < 0 {
                    return Err(Error::ZeroFactor);
                }
                return Ok(RatFuncQ::zero());
            }
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    num = num.mul_one_minus(&v, m);
                } else {
                    den = den.mul_one_minus(&v, m);
                }
            }
        }
        if qe >= 0 {
            num = num.shift(qe as usize);
        } else {
            den = den.shift((-qe) as usize);
        }
        RatFuncQ::new(num, den)
    }

    /// Numerator as an expanded Laurent polynomial (prefactor included) and
    /// the denominator factor multiset.
    pub fn split(&self) -> (LaurentPoly, BTreeMap<FactorKey, u32>) {
        if self.is_zero() {
            return (LaurentPoly::zero(), BTreeMap::new());
        }
        let mut num = LaurentPoly::from_mono(self.prefactor.clone());
        let mut den = BTreeMap::new();
        for (k, &e) in &self.factors {
            if e > 0 {
                let mq = k.mon.mul(&Monomial::pow_var(Var::Q, k.m));
                for _ in 0..e {
                    num = num.mul_one_minus(&mq);
                }
            } else {
                den.insert(k.clone(), (-e) as u32);
            }
        }
        (num, den)
    }

    /// Variables occurring anywhere (prefactor or factors).
    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.prefactor.mon.vars().collect();
        for k in self.factors.keys() {
            v.extend(k.mon.vars());
        }
        v.sort();
        v.dedup();
        v
    }
}

/// `∏_{m=-∞}^{hi}(1 - q^m M) / ∏_{m=-∞}^{base}(1 - q^m M)` materialized.
pub fn range_ratio(mon: &Monomial, base: i32, hi: i32) -> Result<FactoredCoeff> {
    let mut c = FactoredCoeff::one();
    if hi > base {
        for m in base + 1..=hi {
            c.mul_factor(m, mon.clone(), 1)?;
        }
    } else {
        for m in hi + 1..=base {
            c.mul_factor(m, mon.clone(), -1)?;
        }
    }
    Ok(c)
}

/// The finitized ratio `∏_{m=-∞}^{a}/∏_{m=-∞}^{0}(1 - q^m M)`.
pub fn finitized_ratio(mon: &Monomial, a: i32) -> Result<FactoredCoeff> {
    range_ratio(mon, 0, a)
}

impl fmt::Display for FactoredCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefactor)?;
        for (k, &e) in &self.factors {
            if e == 1 {
                write!(f, " * {k}")?;
            } else {
                write!(f, " * {k}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn pl(i: u16, j: u16) -> Monomial {
        Monomial::from_pairs([(Var::P(i), 1), (Var::L(j), -1)])
    }

    #[test]
    fn opposite_orientations_cancel() {
        let mon = Monomial::from_pairs([(Var::P(1), 1), (Var::P(2), -1)]);
        let mut c = FactoredCoeff::one();
        c.mul_factor(-2, mon.clone(), 1).unwrap();
        c.mul_factor(2, mon.inv(), -1).unwrap();
        assert!(c.factor_map().is_empty());
        // (1 - q^-2 M)/(1 - q^2 M^-1) = -q^-2 M
        let expect = Mono::new(int(-1), mon.mul(&Monomial::pow_var(Var::Q, -2)));
        assert_eq!(c.prefactor(), &expect);
    }

    #[test]
    fn zero_factor_handling() {
        let mut c = FactoredCoeff::one();
        assert_eq!(c.mul_factor(0, Monomial::one(), -1), Err(Error::ZeroFactor));
        c.mul_factor(0, Monomial::one(), 1).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn ratio_branches() {
        let m = pl(1, 2);
        assert_eq!(finitized_ratio(&m, 0).unwrap(), FactoredCoeff::one());
        let two = finitized_ratio(&m, 2).unwrap();
        assert_eq!(two.factor_map().len(), 2);
        let neg = finitized_ratio(&m, -1).unwrap();
        assert_eq!(neg, FactoredCoeff::factor(0, m, -1).unwrap());
    }

    #[test]
    fn expand_substitution() {
        let c = FactoredCoeff::factor(1, pl(1, 1), -1).unwrap();
        let vals = |v: Var| match v {
            Var::P(1) => Some(int(1)),
            Var::L(1) => Some(int(2)),
            _ => None,
        };
        let r = c.expand(vals).unwrap();
        assert_eq!(r.num(), &UPoly::one());
        assert_eq!(r.den(), &UPoly::new(alloc::vec![int(1), rat(-1, 2)]));
        let pre = FactoredCoeff::from_mono(Mono::from_monomial(Monomial::from_pairs([(Var::P(1), 2), (Var::Q, 1)])));
        let r = pre.expand(|v| if v == Var::P(1) { Some(int(3)) } else { None }).unwrap();
        assert_eq!(r.num(), &UPoly::monomial(int(9), 1));
    }

    #[test]
    fn eval_agrees_with_expand() {
        let mut c = FactoredCoeff::from_mono(Mono::new(rat(3, 2), Monomial::pow_var(Var::Q, -1)));
        c.mul_factor(2, pl(1, 2), -1).unwrap();
        c.mul_factor(-1, pl(2, 1), 1).unwrap();
        let vals = |v: Var| match v {
            Var::P(1) => Some(rat(2, 3)),
            Var::P(2) => Some(rat(5, 7)),
            Var::L(1) => Some(int(3)),
            Var::L(2) => Some(int(11)),
            Var::Q => Some(rat(4, 9)),
            _ => None,
        };
        let r = c.expand(vals).unwrap();
        assert_eq!(r.eval(&rat(4, 9)).unwrap(), c.eval(vals).unwrap());
    }
}
