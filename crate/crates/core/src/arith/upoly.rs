use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::BigRat;

/// Dense univariate polynomial in `q`, coefficients from degree 0 upward.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    c: Vec<BigRat>,
}

impl UPoly {
    pub fn new(mut c: Vec<BigRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(a: BigRat) -> Self {
        Self::new(vec![a])
    }

    /// `a * q^k`.
    pub fn monomial(a: BigRat, k: usize) -> Self {
        let mut c = vec![BigRat::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    /// `1 - a q^k`.
    pub fn one_minus(a: BigRat, k: usize) -> Self {
        let mut c = vec![BigRat::zero(); k + 1];
        c[0] += BigRat::one();
        c[k] -= a;
        Self::new(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| super::int(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> BigRat {
        self.c.get(k).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn lead(&self) -> BigRat {
        self.c.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &BigRat) -> Self {
        Self::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![BigRat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] += a * b;
                }
            }
        }
        Self::new(r)
    }

    /// Multiplies by `1 - a q^k` in place-friendly form.
    pub fn mul_one_minus(&self, a: &BigRat, k: usize) -> Self {
        let mut r = self.c.clone();
        r.resize(self.c.len() + k, BigRat::zero());
        for (i, x) in self.c.iter().enumerate() {
            r[i + k] -= a * x;
        }
        Self::new(r)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut r = vec![BigRat::zero(); k];
        r.extend(self.c.iter().cloned());
        Self::new(r)
    }

    /// Drops the factor `q^k` (caller guarantees divisibility).
    pub fn unshift(&self, k: usize) -> Self {
        Self::new(self.c.iter().skip(k).cloned().collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let lead_inv = d.lead().recip();
        let mut r = self.c.clone();
        let mut q = vec![BigRat::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &lead_inv;
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &t * b;
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c.iter().enumerate().skip(1).map(|(k, a)| a * BigRat::from_integer((k as i64).into())).collect(),
        )
    }

    /// Coefficients of `p(a + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, a: &BigRat) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, x: &BigRat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let s = self.taylor_shift(x);
        s.valuation().unwrap_or(0)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = *a < BigRat::zero();
            let mag = if neg { -a } else { a.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
