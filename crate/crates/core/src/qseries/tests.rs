use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::arith::{int, rat, BigRat, Mono, Monomial, UPoly, Var};
use crate::rng::Rng;

fn ctx(n: usize, big_n: usize) -> GrassmannianCtx {
    GrassmannianCtx::new(n, big_n).unwrap()
}

fn pl(i: u16, j: u16) -> Monomial {
    Monomial::from_pairs([(Var::P(i), 1), (Var::L(j), -1)])
}

#[test]
fn jt_rank_one() {
    for big_n in 1..=3u16 {
        let mut expect = FactoredCoeff::one();
        for j in 1..=big_n {
            expect.mul_factor(1, pl(1, j), -1).unwrap();
            expect.mul_factor(2, pl(1, j), -1).unwrap();
        }
        assert_eq!(coeff(SeriesKind::JT, &ctx(1, big_n as usize), &[2]).unwrap(), expect);
    }
}

#[test]
fn j_pt_and_level_and_it() {
    let c = coeff(SeriesKind::JPt, &ctx(2, 3), &[1, 1]).unwrap();
    assert_eq!(c, FactoredCoeff::factor(1, Monomial::one(), -2).unwrap());

    let mut expect = FactoredCoeff::from_mono(Mono::from_monomial(Monomial::from_pairs([(Var::P(1), 2), (Var::Q, 1)])));
    for j in 1..=2 {
        expect.mul_factor(1, pl(1, j), -1).unwrap();
        expect.mul_factor(2, pl(1, j), -1).unwrap();
    }
    assert_eq!(coeff(SeriesKind::ITLevel(1), &ctx(1, 2), &[2]).unwrap(), expect);

    let mut it = FactoredCoeff::factor(1, pl(1, 1).mul(&Monomial::var(Var::Y)), 1).unwrap();
    it.mul_factor(1, pl(1, 1), -1).unwrap();
    assert_eq!(coeff(SeriesKind::IT, &ctx(1, 1), &[1]).unwrap(), it);
}

#[test]
fn degree_gaps() {
    for big_n in 1..=4 {
        assert_eq!(q_degree_gap(SeriesKind::JT, &ctx(1, big_n), &[1]).unwrap(), big_n as i64);
    }
    assert_eq!(q_degree_gap(SeriesKind::JT, &ctx(2, 2), &[1, 0]).unwrap(), 1);
    for (n, big_n) in [(1, 3), (2, 3), (2, 4)] {
        let c = ctx(n, big_n);
        for d in degrees_up_to(n, 4).into_iter().skip(1) {
            let g = q_degree_gap(SeriesKind::JT, &c, &d).unwrap();
            assert_eq!(g, jt_gap_formula(&c, &d));
            assert!(g >= (big_n - n + 1) as i64);
            for l in [-1, 1, 2] {
                let lg = q_degree_gap(SeriesKind::ITLevel(l), &c, &d).unwrap();
                let b: i64 = d.iter().map(|&x| (x as i64) * (x as i64 - 1) / 2).sum();
                assert_eq!(lg, g - l as i64 * b);
            }
        }
    }
}

#[test]
fn pole_classes() {
    let c = FactoredCoeff::factor(2, Monomial::one(), -1).unwrap();
    assert_eq!(classify_poles(&c).roots_of_unity.len(), 1);
    let c = FactoredCoeff::factor(1, Monomial::from_pairs([(Var::L(1), 1), (Var::L(2), -1)]), -1).unwrap();
    assert_eq!(classify_poles(&c).other.len(), 1);
}

#[test]
fn expand_full_coefficient() {
    let c = coeff(SeriesKind::JT, &ctx(1, 2), &[1]).unwrap();
    let r = c
        .expand(|v| match v {
            Var::P(1) | Var::L(1) => Some(int(1)),
            Var::L(2) => Some(int(4)),
            _ => None,
        })
        .unwrap();
    let den = UPoly::one_minus(int(1), 1).mul(&UPoly::one_minus(rat(1, 4), 1));
    assert_eq!(r, crate::arith::RatFuncQ::new(UPoly::one(), den).unwrap());
}

fn random_assignment(rng: &mut Rng, n: usize, big_n: usize) -> impl Fn(Var) -> Option<BigRat> {
    let ps = rng.distinct_rationals(n, 40);
    let ls = rng.distinct_rationals(big_n + 1, 40);
    let q = rng.rational(40);
    let y = rng.rational(40);
    move |v| match v {
        Var::P(i) => ps.get(i as usize - 1).cloned(),
        Var::L(j) => ls.get(j as usize).cloned(),
        Var::Q => Some(q.clone()),
        Var::Y => Some(y.clone()),
        _ => None,
    }
}

#[test]
fn symmetrized_totals_match_pointwise_sums() {
    assert!(symmetrized_total_coeff(SeriesKind::JT, &ctx(2, 2), 0).unwrap().equals(&Fraction::one()));
    let mut rng = Rng::new(11);
    for (n, big_n, t) in [(2, 2, 1), (2, 2, 2), (2, 3, 2)] {
        let c = ctx(n, big_n);
        let total = symmetrized_total_coeff(SeriesKind::JT, &c, t).unwrap();
        assert!(!total.has_p_difference());
        assert!(total.is_symmetric_in_p(n));
        for _ in 0..5 {
            let f = random_assignment(&mut rng, n, big_n);
            let mut direct = BigRat::from_integer(0.into());
            for d in degrees_with_total(n, t) {
                direct += coeff(SeriesKind::JT, &c, &d).unwrap().eval(&f).unwrap();
            }
            assert_eq!(total.eval(&f).unwrap(), direct);
        }
    }
}

#[test]
fn weyl_symmetry_of_coefficients() {
    let c = ctx(2, 3);
    let swap = |v: Var| match v {
        Var::P(1) => Some(Mono::var(Var::P(2))),
        Var::P(2) => Some(Mono::var(Var::P(1))),
        _ => None,
    };
    for kind in [SeriesKind::JT, SeriesKind::IT, SeriesKind::ITTilde, SeriesKind::JPiGT, SeriesKind::ITLevel(1)] {
        for d in degrees_up_to(2, 3) {
            let rev: Vec<u32> = vec![d[1], d[0]];
            let a = coeff(kind, &c, &d).unwrap().subst(swap).unwrap();
            assert_eq!(a, coeff(kind, &c, &rev).unwrap(), "{kind} {d:?}");
        }
    }
}

#[test]
fn finitized_ratio_telescopes() {
    // ratio(M, a)·ratio(q^a M, -a) = 1 for the shifted monomial.
    let m = Monomial::from_pairs([(Var::P(1), 1), (Var::P(2), -1)]);
    for a in -6..=6 {
        let left = finitized_ratio(&m, a).unwrap();
        let shifted = m.mul(&Monomial::pow_var(Var::Q, a));
        let right = finitized_ratio(&shifted, -a).unwrap();
        assert!(left.mul(&right).is_one(), "a={a}");
    }
}

#[test]
fn kind_names_round_trip() {
    for name in KIND_NAMES {
        let l = if matches!(name, "IT_level" | "IT_dual") { Some(2) } else { None };
        let k = SeriesKind::parse(name, l).unwrap();
        assert_eq!(k.name(), name);
        let s = alloc::format!("{k}");
        assert_eq!(s.parse::<SeriesKind>().unwrap(), k);
    }
    assert!(SeriesKind::parse("nope", None).is_err());
    assert!(SeriesKind::parse("JT", Some(1)).is_err());
}
