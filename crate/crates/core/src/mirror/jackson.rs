use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hp::{Hp, Precision};
use crate::arith::{rat_pow, rat_to_string, BigRat};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plus,
    Minus,
}

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    LatticeSum,
    Continuation,
}

/// One Jackson q-integral. `lam_ratio` is `Λ'/Λ` (plus) or `Λ0Λ'/Λ` (minus);
/// the effective lattice weight is `q^{-d}·lam_ratio` (plus) and
/// `q^{1-d}·lam_ratio` (minus).
#[derive(Clone, Debug, PartialEq)]
pub struct QIntegralSpec {
    pub variant: Variant,
    pub d: i64,
    pub lam_ratio: BigRat,
    pub q: BigRat,
    pub shift: BigRat,
    pub precision: Precision,
}

impl QIntegralSpec {
    pub fn plus(d: i64, lam_ratio: BigRat, q: BigRat, precision: Precision) -> Self {
        QIntegralSpec { variant: Variant::Plus, d, lam_ratio, q, shift: -BigRat::one(), precision }
    }

    pub fn minus(d: i64, lam_ratio: BigRat, q: BigRat, shift: BigRat, precision: Precision) -> Self {
        QIntegralSpec { variant: Variant::Minus, d, lam_ratio, q, shift, precision }
    }

    /// The weight `Λ` of the lattice sum `Σ Λ^{-k}·(…)`.
    pub fn lam_eff(&self) -> BigRat {
        match self.variant {
            Variant::Plus => rat_pow(&self.q, -self.d) * &self.lam_ratio,
            Variant::Minus => rat_pow(&self.q, 1 - self.d) * &self.lam_ratio,
        }
    }
}

/// Value with the truncation data used to obtain it.
#[derive(Clone, Debug, PartialEq)]
pub struct QIntValue {
    pub value: Hp,
    pub tail_estimate: f64,
    pub terms: usize,
    pub method: Method,
}

fn check_q(q: &BigRat) -> Result<()> {
    if q.abs() < BigRat::new(11.into(), 10.into()) {
        return Err(Error::QTooClose);
    }
    Ok(())
}

/// `(a; t)_∞ = ∏_{m≥0}(1 - a t^m)` for `|t| < 1`, cut where `|a t^m| < ε`.
pub fn qpoch_inf(a: &Hp, t: &Hp, p: Precision) -> Hp {
    let eps = p.epsilon();
    let mut acc = Hp::one(p);
    let mut term = a.clone();
    loop {
        acc = acc.mul(&term.one_minus());
        if term.abs() < eps || term.is_zero() {
            break;
        }
        term = term.mul(t);
    }
    acc
}

fn geometric_tail(ratio: f64, first: f64) -> f64 {
    first / (1.0 - ratio)
}

/// Plus-variant lattice sum `Σ_{k≥0} Λ^{-k}·∏_{m≥k+1}(1 - q^{-m})`.
/// Lattice points `X = q^{-d}` with `d < 0` contribute zero.
pub fn qint_plus_lattice(lam: &BigRat, q: &BigRat, p: Precision) -> Result<QIntValue> {
    check_q(q)?;
    let ratio = (BigRat::one() / lam).abs().to_f64().unwrap_or(f64::INFINITY);
    if ratio >= 1.0 {
        return Err(Error::Nonconvergent);
    }
    let eps = libm::pow(10.0, -(p.digits as f64 + 10.0));
    // Λ^{-K}/(1-|1/Λ|) < ε fixes K; products |a_k| ≤ ∏(1+|q|^{-m}) ≤ e^{1/(|q|-1)}.
    let bound = libm::exp(1.0 / (q.abs().to_f64().unwrap_or(2.0) - 1.0));
    let mut k_max = 0usize;
    while bound * libm::pow(ratio, k_max as f64) / (1.0 - ratio) > eps {
        k_max += 1;
    }
    let t = Hp::from_rat(&(BigRat::one() / q), p);
    // a_K = ∏_{m≥K+1}(1 - t^m) = (t^{K+1}; t)_∞
    let t_k1 = Hp::from_rat(&rat_pow(&(BigRat::one() / q), k_max as i64 + 1), p);
    let mut a = qpoch_inf(&t_k1, &t, p);
    let inv_lam = Hp::from_rat(&(BigRat::one() / lam), p);
    // Horner from the top: S = a_0 + w a_1 + … with a_{k-1} = a_k (1 - t^k).
    let mut acc = a.clone();
    for k in (1..=k_max).rev() {
        let tk = Hp::from_rat(&rat_pow(&(BigRat::one() / q), k as i64), p);
        a = a.mul(&tk.one_minus());
        acc = a.add(&inv_lam.mul(&acc));
    }
    let tail = geometric_tail(ratio, bound * libm::pow(ratio, k_max as f64 + 1.0));
    Ok(QIntValue { value: acc, tail_estimate: tail, terms: k_max + 1, method: Method::LatticeSum })
}

/// Closed q-gamma form `(t;t)_∞/(1/Λ; t)_∞` with `t = 1/q`.
pub fn qint_plus_closed(lam: &BigRat, q: &BigRat, p: Precision) -> Result<Hp> {
    check_q(q)?;
    let tq = BigRat::one() / q;
    // pole when 1/Λ = q^m for some m ≥ 0
    let mut probe = BigRat::one() / lam;
    for _ in 0..4096 {
        if probe.is_one() {
            return Err(Error::Nonconvergent);
        }
        if probe.abs() < BigRat::new(1.into(), 1_000_000.into()) {
            break;
        }
        probe *= &tq;
    }
    let t = Hp::from_rat(&tq, p);
    let num = qpoch_inf(&t, &t, p);
    let den = qpoch_inf(&Hp::from_rat(&(BigRat::one() / lam), p), &t, p);
    num.div(&den).ok_or(Error::Nonconvergent)
}

/// Plus integral: lattice sum where it converges, q-gamma continuation elsewhere.
pub fn qint_plus(spec: &QIntegralSpec) -> Result<QIntValue> {
    let lam = spec.lam_eff();
    if lam.abs() > BigRat::new(11.into(), 10.into()) {
        return qint_plus_lattice(&lam, &spec.q, spec.precision);
    }
    let v = qint_plus_closed(&lam, &spec.q, spec.precision)?;
    Ok(QIntValue { value: v, tail_estimate: 0.0, terms: 0, method: Method::Continuation })
}

fn hits_pole(a: &BigRat, q: &BigRat) -> bool {
    // A = q^j for an integer j
    let la = libm::log(a.abs().to_f64().unwrap_or(1.0));
    let lq = libm::log(q.abs().to_f64().unwrap_or(2.0));
    let j0 = libm::round(la / lq) as i64;
    (j0 - 1..=j0 + 1).any(|j| rat_pow(q, j) == *a)
}

/// Reduced minus-variant sum `S0(Λ) = Σ_{d∈Z} Λ^{-d}/∏_{m≥0}(1 - q^{-d-m}/A)`.
/// The branch constant `A^{-lnΛ/lnq}` is divided out, so `S0(qΛ) = A(1-Λ)S0(Λ)`.
pub fn qint_minus_lattice(lam: &BigRat, q: &BigRat, a: &BigRat, p: Precision) -> Result<QIntValue> {
    check_q(q)?;
    if a.is_zero() || hits_pole(a, q) {
        return Err(Error::ShiftHitsPole);
    }
    let ratio = (BigRat::one() / lam).abs().to_f64().unwrap_or(f64::INFINITY);
    if ratio >= 1.0 {
        return Err(Error::Nonconvergent);
    }
    let eps = libm::pow(10.0, -(p.digits as f64 + 10.0));
    let t = Hp::from_rat(&(BigRat::one() / q), p);
    let b = BigRat::one() / a;
    let inv_lam = BigRat::one() / lam;
    // term(d) = z^d (b;t)_d/(b;t)_∞ for z = 1/Λ, extended to d < 0 by the same recursion
    let binf = qpoch_inf(&Hp::from_rat(&b, p), &t, p);
    let z = Hp::from_rat(&inv_lam, p);
    let tq = BigRat::one() / q;
    let mut terms = 0usize;
    // d ≥ 0: c_{d+1} = c_d · z (1 - b t^d)
    let mut c = Hp::one(p).div(&binf).ok_or(Error::ShiftHitsPole)?;
    let mut sum = Hp::zero(p);
    let mut d: i64 = 0;
    let mut last_pos;
    loop {
        sum = sum.add(&c);
        terms += 1;
        last_pos = c.abs().to_f64();
        let factor = Hp::from_rat(&(&b * rat_pow(&tq, d)), p).one_minus();
        c = c.mul(&z).mul(&factor);
        d += 1;
        if c.abs().to_f64() < eps * ratio.max(1e-300) && d > 2 {
            break;
        }
        if d > 100_000 {
            return Err(Error::Nonconvergent);
        }
    }
    // d < 0: c_{d-1} = c_d / (z (1 - b t^{d-1}))
    let mut c = Hp::one(p).div(&binf).ok_or(Error::ShiftHitsPole)?;
    let mut d: i64 = 0;
    loop {
        let factor = Hp::from_rat(&(&b * rat_pow(&tq, d - 1)), p).one_minus();
        c = c.div(&z.mul(&factor)).ok_or(Error::ShiftHitsPole)?;
        d -= 1;
        sum = sum.add(&c);
        terms += 1;
        if c.abs().to_f64() < eps {
            break;
        }
        if d < -100_000 {
            return Err(Error::Nonconvergent);
        }
    }
    let tail = geometric_tail(ratio, last_pos * ratio) + eps;
    Ok(QIntValue { value: sum, tail_estimate: tail, terms, method: Method::LatticeSum })
}

/// `S0 = (t;t)(bz;t)(t/(bz);t)/((b;t)(t/b;t)(z;t))`, `b = 1/A`, `z = 1/Λ`, `t = 1/q`.
pub fn qint_minus_closed(lam: &BigRat, q: &BigRat, a: &BigRat, p: Precision) -> Result<Hp> {
    check_q(q)?;
    if a.is_zero() || hits_pole(a, q) {
        return Err(Error::ShiftHitsPole);
    }
    let tq = BigRat::one() / q;
    let b = BigRat::one() / a;
    let z = BigRat::one() / lam;
    let h = |r: &BigRat| Hp::from_rat(r, p);
    let t = h(&tq);
    let poch = |r: &BigRat| qpoch_inf(&h(r), &t, p);
    let num = poch(&tq).mul(&poch(&(&b * &z))).mul(&poch(&(&tq / (&b * &z))));
    let den = poch(&b).mul(&poch(&(&tq / &b))).mul(&poch(&z));
    num.div(&den).ok_or(Error::Nonconvergent)
}

/// Minus integral (reduced): lattice sum where it converges, continuation elsewhere.
pub fn qint_minus(spec: &QIntegralSpec) -> Result<QIntValue> {
    let lam = spec.lam_eff();
    if lam.abs() > BigRat::new(11.into(), 10.into()) {
        return qint_minus_lattice(&lam, &spec.q, &spec.shift, spec.precision);
    }
    let v = qint_minus_closed(&lam, &spec.q, &spec.shift, spec.precision)?;
    Ok(QIntValue { value: v, tail_estimate: 0.0, terms: 0, method: Method::Continuation })
}

fn fmt_err(e: f64) -> String {
    format!("{e:.3e}")
}

/// Plus d-recursion `(1 - q^d/lam_ratio)·I^{(d)} = I^{(d-1)}` for `d = 1..=dmax`,
/// and the iterated form `I^{(d)} = I^{(0)}/∏_{m=1}^d(1 - q^m/lam_ratio)`.
pub fn check_plus_recursion(lam_ratio: &BigRat, q: &BigRat, dmax: i64, p: Precision, tol: f64) -> Result<Report> {
    let mut rep = Report::new();
    let val = |d: i64| qint_plus(&QIntegralSpec::plus(d, lam_ratio.clone(), q.clone(), p));
    let i0 = val(0)?.value;
    let mut prev = i0.clone();
    let mut prod = Hp::one(p);
    let r = BigRat::one() / lam_ratio;
    let tag = format!("jackson plus q={} Λ'/Λ={}", rat_to_string(q), rat_to_string(lam_ratio));
    for d in 1..=dmax {
        let cur = val(d)?;
        let f = Hp::from_rat(&(BigRat::one() - rat_pow(q, d) * &r), p);
        let err = f.mul(&cur.value).rel_err(&prev);
        rep.push(format!("{tag} d={d} recursion"), err < tol, fmt_err(err));
        prod = prod.mul(&f);
        let iter = i0.div(&prod).ok_or(Error::Nonconvergent)?;
        let err2 = cur.value.rel_err(&iter);
        rep.push(format!("{tag} d={d} iterated"), err2 < tol * 100.0, fmt_err(err2));
        prev = cur.value;
    }
    Ok(rep)
}

/// Lattice sum versus closed form for the plus integral at `Λ`.
pub fn check_qgamma(lam: &BigRat, q: &BigRat, p: Precision, tol: f64) -> Result<(bool, f64)> {
    let lat = qint_plus_lattice(lam, q, p)?;
    let closed = qint_plus_closed(lam, q, p)?;
    let err = lat.value.rel_err(&closed);
    Ok((err < tol, err))
}

/// Minus translation `S0(qΛ) = A(1 - Λ)S0(Λ)` and its d-form.
pub fn check_minus_recursion(lam_ratio: &BigRat, q: &BigRat, a: &BigRat, dmax: i64, p: Precision, tol: f64) -> Result<Report> {
    let mut rep = Report::new();
    let tag = format!("jackson minus q={} r={} A={}", rat_to_string(q), rat_to_string(lam_ratio), rat_to_string(a));
    let val = |d: i64| qint_minus(&QIntegralSpec::minus(d, lam_ratio.clone(), q.clone(), a.clone(), p));
    // I^{(e)} = A(1 - q^{-e} r) I^{(e+1)}
    for e in 0..dmax {
        let lhs = val(e)?.value;
        let f = Hp::from_rat(&(a * (BigRat::one() - rat_pow(q, -e) * lam_ratio)), p);
        let err = f.mul(&val(e + 1)?.value).rel_err(&lhs);
        rep.push(format!("{tag} e={e} recursion"), err < tol, fmt_err(err));
    }
    Ok(rep)
}

/// Model-integral reduction of `𝓘^{(d)}/𝓘^{(0)}` at the fixed point `(1..n)`:
/// plus factors for `i≠j`, minus factors for `i≠i'`, compared with the exact
/// product `∏_i∏_{j≠i}∏_{m=1}^{d_i}(1 - q^mΛ_i/Λ_j)^{-1} · ∏_{i≠i'} ratio(Λ0Λ_i/Λ_i', d_i - d_i')`.
pub fn verify_model_reduction(
    n: usize,
    d: &[i64],
    lambda: &[BigRat],
    l0: &BigRat,
    q: &BigRat,
    p: Precision,
    tol: f64,
) -> Result<Report> {
    let big_n = lambda.len();
    if d.len() != n || n > big_n || d.iter().any(|&x| x < 0) {
        return Err(Error::InvalidContext(String::from("model reduction needs n degrees and N ≥ n values")));
    }
    let a = -BigRat::one();
    let model = |dv: &[i64]| -> Result<Hp> {
        let mut acc = Hp::one(p);
        for i in 0..n {
            for j in 0..big_n {
                if j != i {
                    let r = &lambda[j] / &lambda[i];
                    acc = acc.mul(&qint_plus(&QIntegralSpec::plus(dv[i], r, q.clone(), p))?.value);
                }
            }
            for i2 in 0..n {
                if i2 != i {
                    let r = l0 * &lambda[i] / &lambda[i2];
                    let e = dv[i2] - dv[i];
                    acc = acc.mul(&qint_minus(&QIntegralSpec::minus(e, r, q.clone(), a.clone(), p))?.value);
                }
            }
        }
        Ok(acc)
    };
    let zero = alloc::vec![0i64; n];
    let ratio = model(d)?.div(&model(&zero)?).ok_or(Error::Nonconvergent)?;
    let mut exact = BigRat::one();
    for i in 0..n {
        for j in 0..big_n {
            if j != i {
                for m in 1..=d[i] {
                    exact /= BigRat::one() - rat_pow(q, m) * &lambda[i] / &lambda[j];
                }
            }
        }
        for i2 in 0..n {
            if i2 != i {
                let mon = l0 * &lambda[i] / &lambda[i2];
                let e = d[i] - d[i2];
                if e > 0 {
                    for m in 1..=e {
                        exact *= BigRat::one() - rat_pow(q, m) * &mon;
                    }
                } else {
                    for m in e + 1..=0 {
                        exact /= BigRat::one() - rat_pow(q, m) * &mon;
                    }
                }
            }
        }
    }
    let err = ratio.rel_err(&Hp::from_rat(&exact, p));
    let mut rep = Report::new();
    let lam: Vec<String> = lambda.iter().map(rat_to_string).collect();
    rep.push(
        format!("model n={n} d={d:?} Λ={lam:?} Λ0={} q={}", rat_to_string(l0), rat_to_string(q)),
        err < tol,
        fmt_err(err),
    );
    Ok(rep)
}

/// The Jackson acceptance grid:
///
/// - q-gamma identity at `q = 2` (`1e-12`) and `q = 3/2` (`1e-10`)
/// - plus and minus d-recursions for `d <= 6`
/// - large-`Λ` limit, `A = 1` pole, `|q|` too close to 1
/// - model reductions
pub fn verify_jackson_suite(p: Precision) -> Result<Report> {
    let mut rep = Report::new();
    let q2 = BigRat::from_integer(2.into());
    let q15 = BigRat::new(3.into(), 2.into());
    let r = |a: i64, b: i64| BigRat::new(a.into(), b.into());
    for (q, tol) in [(&q2, 1e-12), (&q15, 1e-10)] {
        for lam in [r(3, 1), r(5, 2), r(7, 1), r(6, 5)] {
            let (ok, err) = check_qgamma(&lam, q, p, tol)?;
            rep.push(format!("jackson qgamma q={} Λ={}", rat_to_string(q), rat_to_string(&lam)), ok, fmt_err(err));
        }
    }
    rep.extend(check_plus_recursion(&r(3, 1), &q2, 6, p, 1e-12)?);
    rep.extend(check_plus_recursion(&r(200, 1), &q2, 6, p, 1e-12)?);
    rep.extend(check_plus_recursion(&r(30, 1), &q15, 6, p, 1e-10)?);
    let a = -BigRat::one();
    rep.extend(check_minus_recursion(&r(1, 3), &q2, &a, 6, p, 1e-12)?);
    rep.extend(check_minus_recursion(&r(1, 3), &q15, &a, 6, p, 1e-10)?);
    let lat = qint_minus_lattice(&r(3, 1), &q2, &a, p)?;
    let err = lat.value.rel_err(&qint_minus_closed(&r(3, 1), &q2, &a, p)?);
    rep.push("jackson minus lattice vs closed q=2 Λ=3", err < 1e-12, fmt_err(err));
    let big = qint_plus(&QIntegralSpec::plus(0, r(1_000_000, 1), q2.clone(), p))?;
    let t = Hp::from_rat(&r(1, 2), p);
    let err = big.value.rel_err(&qpoch_inf(&t, &t, p));
    rep.push("jackson plus Λ=10^6 limit", err < 1e-5, fmt_err(err));
    let pole = qint_minus_lattice(&r(3, 1), &q2, &BigRat::one(), p);
    rep.push("jackson minus A=1 rejected", pole == Err(Error::ShiftHitsPole), format!("{pole:?}").chars().take(40).collect::<String>());
    let close = qint_plus_lattice(&r(3, 1), &r(21, 20), p);
    rep.push("jackson q=21/20 rejected", close.is_err(), "QTooClose");
    let lam57 = [r(5, 1), r(7, 1)];
    rep.extend(verify_model_reduction(1, &[1], &lam57, &BigRat::one(), &q2, p, 1e-10)?);
    rep.extend(verify_model_reduction(1, &[0], &lam57, &BigRat::one(), &q2, p, 1e-30)?);
    rep.extend(verify_model_reduction(2, &[1, 0], &lam57, &r(1, 2), &q2, p, 1e-8)?);
    rep.extend(verify_model_reduction(2, &[2, 1], &[r(5, 1), r(7, 1), r(11, 1)], &r(1, 2), &q2, p, 1e-8)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn qgamma_identity() {
        let (ok, err) = check_qgamma(&int(3), &int(2), p(), 1e-12).unwrap();
        assert!(ok, "{err}");
        let v = qint_plus(&QIntegralSpec::plus(0, int(1_000_000), int(2), p())).unwrap();
        let pinf = qpoch_inf(&Hp::from_rat(&rat(1, 2), p()), &Hp::from_rat(&rat(1, 2), p()), p());
        assert!(v.value.rel_err(&pinf) < 1e-5);
    }

    #[test]
    fn plus_recursion() {
        // Λ/Λ' = 1/3, so Λ'/Λ = 3
        let rep = check_plus_recursion(&int(3), &int(2), 4, p(), 1e-12).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        let rep = check_plus_recursion(&int(200), &int(2), 6, p(), 1e-12).unwrap();
        assert!(rep.all_pass());
        let rep = check_plus_recursion(&int(30), &rat(3, 2), 6, p(), 1e-10).unwrap();
        assert!(rep.all_pass());
    }

    #[test]
    fn minus_translation_and_pole() {
        let pr = p();
        let a = -BigRat::one();
        // S0(qΛ) = A(1-Λ)S0(Λ) at q = 2, Λ = 1/3 (continuation) and Λ = 3 (lattice)
        for lam in [rat(1, 3), int(3)] {
            let s = qint_minus_closed(&lam, &int(2), &a, pr).unwrap();
            let sq = qint_minus_closed(&(&lam * int(2)), &int(2), &a, pr).unwrap();
            let f = Hp::from_rat(&(&a * (BigRat::one() - &lam)), pr);
            assert!(f.mul(&s).rel_err(&sq) < 1e-12);
        }
        let lat = qint_minus_lattice(&int(3), &int(2), &a, pr).unwrap();
        let closed = qint_minus_closed(&int(3), &int(2), &a, pr).unwrap();
        assert!(lat.value.rel_err(&closed) < 1e-12);
        assert_eq!(qint_minus_lattice(&int(3), &int(2), &int(1), pr), Err(Error::ShiftHitsPole));
        assert!(check_minus_recursion(&rat(1, 3), &int(2), &a, 6, pr, 1e-12).unwrap().all_pass());
    }

    #[test]
    fn suite_passes() {
        let rep = verify_jackson_suite(Precision::digits(30)).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn tail_halving() {
        for q in [rat(3, 2), int(2), int(4)] {
            let lo = qint_plus_lattice(&int(5), &q, Precision::digits(20)).unwrap();
            let hi = qint_plus_lattice(&int(5), &q, Precision::digits(40)).unwrap();
            let diff = lo.value.to_f64() - hi.value.to_f64();
            assert!(diff.abs() <= lo.tail_estimate + 1e-25);
        }
    }

    #[test]
    fn model_reduction_examples() {
        let pr = p();
        let r = verify_model_reduction(1, &[1], &[int(5), int(7)], &int(1), &int(2), pr, 1e-10).unwrap();
        assert!(r.all_pass(), "{:?}", r.entries);
        let r = verify_model_reduction(1, &[0], &[int(5), int(7)], &int(1), &int(2), pr, 1e-30).unwrap();
        assert!(r.all_pass());
        let r = verify_model_reduction(2, &[1, 0], &[int(5), int(7)], &rat(1, 2), &int(2), pr, 1e-8).unwrap();
        assert!(r.all_pass(), "{:?}", r.entries);
    }
}
