use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{rat_pow, BigRat, Var};

/// Exponent vector: sorted `(var, exp)` pairs with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(alloc::vec![(v, 1)])
    }

    pub fn pow_var(v: Var, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(alloc::vec![(v, e)])
        }
    }

    /// Builds from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, i32)> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0
            .binary_search_by_key(&v, |p| p.0)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Removes `v`, returning its exponent and the rest.
    pub fn split_var(&self, v: Var) -> (i32, Monomial) {
        let e = self.exp(v);
        (e, Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect()))
    }

    /// Sign of the first nonzero exponent (0 for the trivial monomial).
    pub fn leading_sign(&self) -> i32 {
        self.0.first().map(|p| p.1.signum()).unwrap_or(0)
    }

    /// Applies a per-variable substitution `v -> mono(v)`.
    pub fn subst<F: Fn(Var) -> Option<Mono>>(&self, f: F) -> Mono {
        let mut acc = Mono::one();
        for &(v, e) in &self.0 {
            match f(v) {
                Some(m) => acc = acc.mul(&m.pow(e)),
                None => acc = acc.mul(&Mono::from_monomial(Monomial::pow_var(v, e))),
            }
        }
        acc
    }

    /// Evaluates with every variable assigned.
    pub fn eval<F: Fn(Var) -> Option<BigRat>>(&self, f: F) -> crate::Result<BigRat> {
        let mut acc = BigRat::one();
        for &(v, e) in &self.0 {
            let x = f(v).ok_or(crate::Error::Unassigned(v))?;
            if x.is_zero() && e < 0 {
                return Err(crate::Error::ZeroFactor);
            }
            acc *= rat_pow(&x, e as i64);
        }
        Ok(acc)
    }

    /// Rewrites every exponent through `f`.
    pub fn map_exps<F: Fn(Var, i32) -> i32>(&self, f: F) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (v, f(v, e))))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A rational multiple of a [`Monomial`]; zero has the empty monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub coeff: BigRat,
    pub mon: Monomial,
}

impl Mono {
    pub fn new(coeff: BigRat, mon: Monomial) -> Self {
        if coeff.is_zero() {
            Mono { coeff, mon: Monomial::one() }
        } else {
            Mono { coeff, mon }
        }
    }

    pub fn one() -> Self {
        Mono { coeff: BigRat::one(), mon: Monomial::one() }
    }

    pub fn zero() -> Self {
        Mono { coeff: BigRat::zero(), mon: Monomial::one() }
    }

    pub fn scalar(c: BigRat) -> Self {
        Mono::new(c, Monomial::one())
    }

    pub fn from_monomial(mon: Monomial) -> Self {
        Mono { coeff: BigRat::one(), mon }
    }

    pub fn var(v: Var) -> Self {
        Self::from_monomial(Monomial::var(v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono::new(&self.coeff * &o.coeff, self.mon.mul(&o.mon))
    }

    pub fn pow(&self, k: i32) -> Mono {
        if k < 0 && self.is_zero() {
            panic!("zero monomial raised to a negative power");
        }
        Mono::new(rat_pow(&self.coeff, k as i64), self.mon.pow(k))
    }

    pub fn neg(&self) -> Mono {
        Mono::new(-self.coeff.clone(), self.mon.clone())
    }

    pub fn eval<F: Fn(Var) -> Option<BigRat>>(&self, f: F) -> crate::Result<BigRat> {
        Ok(&self.coeff * self.mon.eval(f)?)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mon.is_one() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "{}", self.mon)
        } else if self.coeff == -BigRat::one() {
            write!(f, "-{}", self.mon)
        } else {
            write!(f, "{}*{}", self.coeff, self.mon)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_merges_and_cancels() {
        let a = Monomial::from_pairs([(Var::P(1), 2), (Var::L(1), -1)]);
        let b = Monomial::from_pairs([(Var::L(1), 1), (Var::Q, 3)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs([(Var::P(1), 2), (Var::Q, 3)]));
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn leading_sign_follows_variable_order() {
        let m = Monomial::from_pairs([(Var::L(2), 1), (Var::P(1), -1)]);
        assert_eq!(m.leading_sign(), -1);
    }
}
