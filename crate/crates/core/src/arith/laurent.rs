use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{BigRat, Mono, Monomial, Var};
use crate::{Error, Result};

/// Laurent polynomial over `BigRat` with no zero terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_mono(Mono::scalar(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_mono(Mono::var(v))
    }

    pub fn from_mono(m: Mono) -> Self {
        let mut p = Self::zero();
        p.add_term(m.mon, m.coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = Mono>>(it: I) -> Self {
        let mut p = Self::zero();
        for m in it {
            p.add_term(m.mon, m.coeff);
        }
        p
    }

    /// `1 - mon`.
    pub fn one_minus(mon: &Monomial) -> Self {
        let mut p = Self::one();
        p.add_term(mon.clone(), -BigRat::one());
        p
    }

    pub fn add_term(&mut self, mon: Monomial, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRat)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        match self.terms.len() {
            0 => Some(BigRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_mono(&self, k: &Mono) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(&k.mon), c * &k.coeff)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    /// Multiplies by `(1 - mon)`.
    pub fn mul_one_minus(&self, mon: &Monomial) -> Self {
        let mut r = self.clone();
        for (m, c) in &self.terms {
            r.add_term(m.mul(mon), -c.clone());
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Substitutes each variable by a monomial (or leaves it when `f` gives `None`).
    pub fn subst<F: Fn(Var) -> Option<Mono>>(&self, f: F) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let t = m.subst(&f);
            r.add_term(t.mon, c * t.coeff);
        }
        r
    }

    /// Swaps two variables.
    pub fn swap(&self, a: Var, b: Var) -> Self {
        self.subst(|v| {
            if v == a {
                Some(Mono::var(b))
            } else if v == b {
                Some(Mono::var(a))
            } else {
                None
            }
        })
    }

    pub fn eval<F: Fn(Var) -> Option<BigRat>>(&self, f: F) -> Result<BigRat> {
        let mut acc = BigRat::zero();
        for (m, c) in &self.terms {
            acc += c * m.eval(&f)?;
        }
        Ok(acc)
    }

    /// Substitutes variables by Laurent polynomials (used for `u`-paths and expansion).
    pub fn subst_poly<F: Fn(Var) -> Option<LaurentPoly>>(&self, f: F) -> Result<Self> {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for &(v, e) in m.pairs() {
                match f(v) {
                    Some(p) => {
                        if e >= 0 {
                            t = t.mul(&p.pow(e as u32));
                        } else {
                            let inv = p.monomial_inverse().ok_or(Error::ZeroFactor)?;
                            t = t.mul(&inv.pow((-e) as u32));
                        }
                    }
                    None => t = t.mul_mono(&Mono::from_monomial(Monomial::pow_var(v, e))),
                }
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        Some(Self::from_mono(Mono::new(c.recip(), m.inv())))
    }

    /// Minimum exponent of `v` over all terms (0 for the zero polynomial).
    pub fn min_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn max_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Groups terms by the exponent of `v`: `self = Σ_k v^k · coeff_k`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Exact division by `(a - b)` for variables `a != b`.
    pub fn div_difference(&self, a: Var, b: Var) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let groups = self.coeffs_in(a);
        let lo = *groups.keys().next()?;
        let hi = *groups.keys().next_back()?;
        // c_k for k = hi..=lo descending; s_{k-1} = c_k + b * s_k.
        let bpoly = LaurentPoly::var(b);
        let mut quotient = LaurentPoly::zero();
        let mut s = LaurentPoly::zero();
        let mut k = hi;
        while k > lo {
            let ck = groups.get(&k).cloned().unwrap_or_default();
            s = ck.add(&bpoly.mul(&s));
            let shift = Mono::from_monomial(Monomial::pow_var(a, k - 1));
            quotient = quotient.add(&s.mul_mono(&shift));
            k -= 1;
        }
        let c_lo = groups.get(&lo).cloned().unwrap_or_default();
        let rem = c_lo.add(&bpoly.mul(&s));
        if rem.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }

    pub fn is_alternating(&self, a: Var, b: Var) -> bool {
        self.swap(a, b) == self.neg()
    }

    pub fn is_symmetric(&self, a: Var, b: Var) -> bool {
        self.swap(a, b) == *self
    }
}

/// `∏_{i<j}(P_i - P_j)` in `P1..Pn`.
pub fn vandermonde(n: usize) -> LaurentPoly {
    let mut v = LaurentPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let d = LaurentPoly::var(Var::P(i as u16)).sub(&LaurentPoly::var(Var::P(j as u16)));
            v = v.mul(&d);
        }
    }
    v
}

/// Exact quotient `p / ∏_{i<j}(P_i - P_j)` for `p` alternating in `P1..Pn`.
pub fn divide_by_vandermonde(p: &LaurentPoly, n: usize) -> Result<LaurentPoly> {
    for i in 1..=n {
        for j in i + 1..=n {
            if !p.is_alternating(Var::P(i as u16), Var::P(j as u16)) {
                return Err(Error::NotAlternating);
            }
        }
    }
    let mut r = p.clone();
    for i in 1..=n {
        for j in i + 1..=n {
            r = r.div_difference(Var::P(i as u16), Var::P(j as u16)).ok_or(Error::NotAlternating)?;
        }
    }
    Ok(r)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let t = Mono::new(c.clone(), m.clone());
            let s = alloc::format!("{t}");
            if k == 0 {
                f.write_str(&s)?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(i: u16) -> LaurentPoly {
        LaurentPoly::var(Var::P(i))
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(divide_by_vandermonde(&p(1).sub(&p(2)), 2).unwrap(), LaurentPoly::one());
        let sq = p(1).mul(&p(1)).sub(&p(2).mul(&p(2)));
        assert_eq!(divide_by_vandermonde(&sq, 2).unwrap(), p(1).add(&p(2)));
        assert_eq!(divide_by_vandermonde(&p(1).add(&p(2)), 2), Err(Error::NotAlternating));
    }

    #[test]
    fn division_handles_negative_exponents() {
        let inv = LaurentPoly::from_mono(Mono::new(int(1), Monomial::pow_var(Var::P(1), -1)));
        let sym = inv.add(&LaurentPoly::from_mono(Mono::new(int(1), Monomial::pow_var(Var::P(2), -1))));
        let prod = sym.mul(&vandermonde(2));
        assert_eq!(divide_by_vandermonde(&prod, 2).unwrap(), sym);
    }

    #[test]
    fn three_variable_round_trip() {
        let sym = p(1).mul(&p(2)).mul(&p(3)).add(&LaurentPoly::constant(int(5)));
        let prod = sym.mul(&vandermonde(3));
        assert_eq!(divide_by_vandermonde(&prod, 3).unwrap(), sym);
    }
}
