use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{divide_by_vandermonde, BigRat, LaurentPoly, Mono, Monomial, RatFuncQ, UPoly, Var};
use crate::qseries::factored::{FactorKey, FactoredCoeff};
use crate::{Error, Result};

/// `num / ∏ (1 - q^m·M)^e`: a sum of factored coefficients over the least
/// common denominator, with `q` kept as a variable of `num`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    num: LaurentPoly,
    den: BTreeMap<FactorKey, u32>,
}

impl Default for Fraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl Fraction {
    pub fn zero() -> Self {
        Fraction { num: LaurentPoly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Fraction { num: LaurentPoly::one(), den: BTreeMap::new() }
    }

    pub fn from_coeff(c: &FactoredCoeff) -> Self {
        let (num, den) = c.split();
        Fraction { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<FactorKey, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn lcm(a: &BTreeMap<FactorKey, u32>, b: &BTreeMap<FactorKey, u32>) -> BTreeMap<FactorKey, u32> {
        let mut out = a.clone();
        for (k, &e) in b {
            let slot = out.entry(k.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        out
    }

    /// Numerator rewritten over the larger denominator `target ⊇ den`.
    fn lift(&self, target: &BTreeMap<FactorKey, u32>) -> LaurentPoly {
        let mut num = self.num.clone();
        for (k, &e) in target {
            let have = self.den.get(k).copied().unwrap_or(0);
            let mq = k.mon.mul(&Monomial::pow_var(Var::Q, k.m));
            for _ in have..e {
                num = num.mul_one_minus(&mq);
            }
        }
        num
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let den = Self::lcm(&self.den, &o.den);
        let num = self.lift(&den).add(&o.lift(&den));
        Fraction { num, den }.tidy()
    }

    pub fn add_coeff(&self, c: &FactoredCoeff) -> Self {
        self.add(&Self::from_coeff(c))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Fraction { num: self.num.mul(p), den: self.den.clone() }.tidy()
    }

    pub fn mul_mono(&self, k: &Mono) -> Self {
        Fraction { num: self.num.mul_mono(k), den: self.den.clone() }.tidy()
    }

    fn tidy(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    /// Exact equality as rational functions (cross-multiplied).
    pub fn equals(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let den = Self::lcm(&self.den, &o.den);
        self.lift(&den) == o.lift(&den)
    }

    /// Cancels every `(1 - P_i/P_j)` denominator factor against the numerator.
    /// When each pair occurs once the whole Vandermonde is divided out at once.
    pub fn cancel_vandermonde(&self, n: usize) -> Result<Self> {
        let key = |i: usize, j: usize| {
            FactorKey::new(0, Monomial::from_pairs([(Var::P(i as u16), 1), (Var::P(j as u16), -1)]))
        };
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let mut den = self.den.clone();
        let mut num = self.num.clone();
        let all_once = !pairs.is_empty() && pairs.iter().all(|&(i, j)| den.get(&key(i, j)) == Some(&1));
        if all_once {
            // ∏_{i<j}(1 - P_i/P_j) = ∏_{i<j}(P_j - P_i)/P_j = (-1)^{#pairs} V / ∏ P_j
            let mut lift = Monomial::one();
            for &(i, j) in &pairs {
                lift = lift.mul(&Monomial::var(Var::P(j as u16)));
                den.remove(&key(i, j));
            }
            let sign = if pairs.len().is_multiple_of(2) { BigRat::one() } else { -BigRat::one() };
            let lifted = num.mul_mono(&Mono::new(sign, lift));
            num = divide_by_vandermonde(&lifted, n).map_err(|_| Error::VandermondeCancellation)?;
        }
        for &(i, j) in &pairs {
            let k = key(i, j);
            while let Some(&e) = den.get(&k) {
                let pj = Var::P(j as u16);
                num = num
                    .mul_mono(&Mono::var(pj))
                    .div_difference(pj, Var::P(i as u16))
                    .ok_or(Error::VandermondeCancellation)?;
                if e == 1 {
                    den.remove(&k);
                } else {
                    den.insert(k.clone(), e - 1);
                }
            }
        }
        Ok(Fraction { num, den }.tidy())
    }

    /// Whether a denominator factor is a pure `P`-ratio at `m = 0`.
    pub fn has_p_difference(&self) -> bool {
        self.den.keys().any(|k| k.m == 0 && k.mon.vars().all(|v| matches!(v, Var::P(_))))
    }

    /// Substitutes variables by unit monomials; re-orients denominator factors.
    pub fn subst<F: Fn(Var) -> Option<Mono>>(&self, f: F) -> Result<Self> {
        let mut num = self.num.subst(&f);
        let mut den = BTreeMap::new();
        for (k, &e) in &self.den {
            let c = FactoredCoeff::factor(k.m, k.mon.clone(), -(e as i32))?.subst(&f)?;
            num = num.mul_mono(c.prefactor());
            for (k2, &e2) in c.factor_map() {
                *den.entry(k2.clone()).or_insert(0u32) += (-e2) as u32;
            }
        }
        Ok(Fraction { num, den }.tidy())
    }

    pub fn is_symmetric_in_p(&self, n: usize) -> bool {
        let swapped = |i: usize, j: usize| -> Option<Fraction> {
            let (a, b) = (Var::P(i as u16), Var::P(j as u16));
            self.subst(|v| {
                if v == a {
                    Some(Mono::var(b))
                } else if v == b {
                    Some(Mono::var(a))
                } else {
                    None
                }
            })
            .ok()
        };
        (1..=n).all(|i| (i + 1..=n).all(|j| swapped(i, j).map(|s| s.equals(self)).unwrap_or(false)))
    }

    /// Exact value with every variable (including `q`) assigned.
    pub fn eval<F: Fn(Var) -> Option<BigRat>>(&self, f: F) -> Result<BigRat> {
        let mut den = BigRat::one();
        let qv = f(Var::Q).ok_or(Error::Unassigned(Var::Q))?;
        for (k, &e) in &self.den {
            let v = BigRat::one() - crate::arith::rat_pow(&qv, k.m as i64) * k.mon.eval(&f)?;
            den *= crate::arith::rat_pow(&v, e as i64);
        }
        if den.is_zero() {
            return Err(Error::ZeroFactor);
        }
        Ok(self.num.eval(&f)? / den)
    }

    /// Exact rational function of `q` after assigning the other variables.
    pub fn expand<F: Fn(Var) -> Option<BigRat>>(&self, f: F) -> Result<RatFuncQ> {
        let num = laurent_in_q(&self.num, &f)?;
        let mut den = RatFuncQ::one();
        let mut poly = UPoly::one();
        for (k, &e) in &self.den {
            let v = k.mon.eval(&f)?;
            if k.m == 0 && v.is_one() {
                return Err(Error::ZeroFactor);
            }
            for _ in 0..e {
                poly = poly.mul_one_minus(&v, k.m as usize);
            }
        }
        den = den.mul(&RatFuncQ::from_poly(poly));
        num.div(&den)
    }
}

/// A Laurent polynomial in `q` (other variables assigned) as a rational function.
pub fn laurent_in_q<F: Fn(Var) -> Option<BigRat>>(p: &LaurentPoly, f: &F) -> Result<RatFuncQ> {
    let mut by_q: BTreeMap<i32, BigRat> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (e, rest) = m.split_var(Var::Q);
        *by_q.entry(e).or_insert_with(BigRat::zero) += c * rest.eval(f)?;
    }
    let lo = by_q.keys().next().copied().unwrap_or(0).min(0);
    let hi = by_q.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = alloc::vec![BigRat::zero(); (hi - lo + 1) as usize];
    for (e, c) in by_q {
        coeffs[(e - lo) as usize] = c;
    }
    RatFuncQ::new(UPoly::new(coeffs), UPoly::monomial(BigRat::one(), (-lo) as usize))
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        for (k, &e) in &self.den {
            write!(f, " / {k}")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
