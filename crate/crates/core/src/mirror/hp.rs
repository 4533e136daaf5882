use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::BigRat;

/// Working precision: decimal digits plus 20 guard digits, as a binary scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub digits: u32,
    pub bits: u32,
}

impl Precision {
    pub fn digits(digits: u32) -> Self {
        let guard = 20;
        Precision { digits, bits: libm::ceil((digits + guard) as f64 * core::f64::consts::LOG2_10) as u32 }
    }

    /// `10^-(digits + 10)`, the cutoff for infinite products.
    pub fn epsilon(&self) -> Hp {
        Hp::from_rat(&BigRat::new(1.into(), BigInt::from(10u32).pow(self.digits + 10)), *self)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::digits(50)
    }
}

/// Binary fixed-point real `m / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hp {
    m: BigInt,
    bits: u32,
}

impl Hp {
    pub fn zero(p: Precision) -> Self {
        Hp { m: BigInt::zero(), bits: p.bits }
    }

    pub fn one(p: Precision) -> Self {
        Hp { m: BigInt::from(1) << p.bits, bits: p.bits }
    }

    pub fn from_rat(r: &BigRat, p: Precision) -> Self {
        let num = r.numer() << p.bits;
        Hp { m: round_div(&num, r.denom()), bits: p.bits }
    }

    pub fn from_int(k: i64, p: Precision) -> Self {
        Hp { m: BigInt::from(k) << p.bits, bits: p.bits }
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn add(&self, o: &Hp) -> Hp {
        Hp { m: &self.m + &o.m, bits: self.bits }
    }

    pub fn sub(&self, o: &Hp) -> Hp {
        Hp { m: &self.m - &o.m, bits: self.bits }
    }

    pub fn neg(&self) -> Hp {
        Hp { m: -&self.m, bits: self.bits }
    }

    pub fn mul(&self, o: &Hp) -> Hp {
        let prod = &self.m * &o.m;
        Hp { m: round_div(&prod, &(BigInt::from(1) << self.bits)), bits: self.bits }
    }

    /// `None` on division by zero.
    pub fn div(&self, o: &Hp) -> Option<Hp> {
        if o.m.is_zero() {
            return None;
        }
        Some(Hp { m: round_div(&(&self.m << self.bits), &o.m), bits: self.bits })
    }

    pub fn abs(&self) -> Hp {
        Hp { m: self.m.abs(), bits: self.bits }
    }

    pub fn one_minus(&self) -> Hp {
        Hp { m: (BigInt::from(1) << self.bits) - &self.m, bits: self.bits }
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.bits.saturating_sub(60);
        let top = (&self.m >> shift).to_f64().unwrap_or(f64::NAN);
        top / libm::pow(2.0, (self.bits - shift) as f64)
    }

    /// `|self - o| / max(|o|, tiny)` as f64.
    pub fn rel_err(&self, o: &Hp) -> f64 {
        let d = self.sub(o).abs().to_f64();
        let s = o.abs().to_f64();
        if s == 0.0 {
            d
        } else {
            d / s
        }
    }

    /// Decimal rendering with `digits` significant digits after the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let v = round_div(&(&self.m * &scale), &(BigInt::from(1) << self.bits));
        let neg = v.is_negative();
        let (ip, fp) = v.abs().div_rem(&scale);
        let mut frac = alloc::format!("{fp}");
        while frac.len() < digits as usize {
            frac.insert(0, '0');
        }
        alloc::format!("{}{ip}.{frac}", if neg { "-" } else { "" })
    }
}

impl PartialOrd for Hp {
    fn partial_cmp(&self, o: &Hp) -> Option<Ordering> {
        Some(self.m.cmp(&o.m))
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (r << 1u32).abs() >= b.abs() {
        q + 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn field_ops() {
        let p = Precision::digits(30);
        let a = Hp::from_rat(&rat(1, 3), p);
        let three = Hp::from_int(3, p);
        assert!(a.mul(&three).rel_err(&Hp::one(p)) < 1e-35);
        assert!(Hp::one(p).div(&three).unwrap().rel_err(&a) < 1e-35);
        assert_eq!(Hp::from_rat(&rat(-5, 4), p).to_decimal(3), "-1.250");
        assert!(a.div(&Hp::zero(p)).is_none());
        assert!((a.to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }
}
