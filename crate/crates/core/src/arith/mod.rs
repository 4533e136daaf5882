//! Exact scalar, polynomial and rational-function arithmetic.

mod laurent;
mod monomial;
mod ratfunc;
mod upoly;
mod var;

pub use laurent::{divide_by_vandermonde, vandermonde, LaurentPoly};
pub use monomial::{Mono, Monomial};
pub use ratfunc::{ratq_normalize, LocalExpansion, RatFuncQ, Residue};
pub use upoly::UPoly;
pub use var::Var;

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Renders as `p/q`, always with an explicit denominator.
pub fn rat_to_pq(r: &BigRat) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

/// Renders as `p` for integers and `p/q` otherwise.
pub fn rat_to_string(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        rat_to_pq(r)
    }
}

pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRat::new(n, d))
        }
        None => Some(BigRat::from_integer(s.parse().ok()?)),
    }
}

/// `r^e` for any integer `e`; panics on `0^negative`.
pub fn rat_pow(r: &BigRat, e: i64) -> BigRat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Exact rational `m`-th root, if one exists (both signs tried for even `m`).
pub fn rat_roots(r: &BigRat, m: u32) -> alloc::vec::Vec<BigRat> {
    let mut out = alloc::vec::Vec::new();
    if m == 0 {
        return out;
    }
    if r.is_zero() {
        out.push(BigRat::zero());
        return out;
    }
    let neg = r.is_negative();
    if neg && m.is_multiple_of(2) {
        return out;
    }
    let a = r.abs();
    let (n, d) = (a.numer().clone(), a.denom().clone());
    let rn = n.nth_root(m);
    let rd = d.nth_root(m);
    if num_traits::pow(rn.clone(), m as usize) != n || num_traits::pow(rd.clone(), m as usize) != d {
        return out;
    }
    let root = BigRat::new(rn, rd);
    if neg {
        out.push(-root);
    } else if m.is_multiple_of(2) {
        out.push(root.clone());
        out.push(-root);
    } else {
        out.push(root);
    }
    out
}

pub fn is_one(r: &BigRat) -> bool {
    r.is_one()
}
