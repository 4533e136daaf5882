//! Randomized invariants across the core crate.

use num_traits::{One, Zero};
use proptest::prelude::*;

use qkgr_core::arith::{divide_by_vandermonde, int, rat, ratq_normalize, vandermonde, UPoly};
use qkgr_core::diffops::{gamma_apply, GammaOp};
use qkgr_core::kring::{pairing_equivariant, pairing_nonequivariant};
use qkgr_core::localization::{localize, recursion_residual, RecursionInstance};
use qkgr_core::mirror::critical::{binomial, critical_points, MirrorConfig};
use qkgr_core::mirror::hp::Precision;
use qkgr_core::mirror::jackson::{check_plus_recursion, check_qgamma, qint_plus_lattice};
use qkgr_core::qseries::{coeff, finitized_ratio, range_ratio};
use qkgr_core::{BigRat, FixedPoint, GrassmannianCtx, LaurentPoly, Mono, Monomial, NovikovSeries, RatFuncQ, SeriesKind, Var};

fn small_upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_map(|c| UPoly::from_ints(&c))
}

fn nonzero_upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    small_upoly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn p_term(n: usize) -> impl Strategy<Value = Mono> {
    (prop::collection::vec(-2i32..=2, n), -3i64..=3).prop_map(move |(e, c)| {
        Mono::new(int(c), Monomial::from_pairs(e.iter().enumerate().map(|(i, &k)| (Var::P(i as u16 + 1), k))))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

fn symmetrize(p: &LaurentPoly, n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for s in permutations(n) {
        acc = acc.add(&p.subst(|v| match v {
            Var::P(i) => Some(Mono::var(Var::P(s[i as usize - 1] as u16 + 1))),
            _ => None,
        }));
    }
    acc
}

fn symmetric_class(n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(p_term(n), 1..=3).prop_map(move |t| symmetrize(&LaurentPoly::from_terms(t), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ratq_normalize_idempotent_and_multiplicative(
        a in small_upoly(4), b in nonzero_upoly(4), c in small_upoly(3), d in nonzero_upoly(3)
    ) {
        let f = ratq_normalize(&a, &b).unwrap();
        let g = ratq_normalize(&c, &d).unwrap();
        prop_assert_eq!(ratq_normalize(f.num(), f.den()).unwrap(), f.clone());
        let fg = ratq_normalize(&a.mul(&c), &b.mul(&d)).unwrap();
        prop_assert_eq!(fg, f.mul(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn global_residue_theorem(
        roots in prop::collection::btree_set(-6i64..=6, 2..=5),
        scale in 1i64..=4,
        num in small_upoly(3),
    ) {
        let mut den = UPoly::one();
        for r in &roots {
            // (q - r/scale)
            den = den.mul(&UPoly::new(vec![-rat(*r, scale), BigRat::one()]));
        }
        let k = roots.len();
        let num = UPoly::new(num.coeffs().iter().take(k - 1).cloned().collect());
        let f = RatFuncQ::new(num, den).unwrap();
        let mut total = BigRat::zero();
        for r in &roots {
            total += f.residue_at(&rat(*r, scale)).unwrap().value;
        }
        prop_assert!(total.is_zero());
    }

    #[test]
    fn vandermonde_round_trip(n in 2usize..=3, p in prop::collection::vec(p_term(3), 1..=3)) {
        let p = LaurentPoly::from_terms(p).subst(|v| match v {
            Var::P(i) if i as usize > n => Some(Mono::one()),
            _ => None,
        });
        let sym = symmetrize(&p, n);
        let back = divide_by_vandermonde(&sym.mul(&vandermonde(n)), n).unwrap();
        prop_assert_eq!(back, sym);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pairing_is_polynomial_and_limit_consistent(
        ctx_idx in 0usize..4, phi1 in symmetric_class(1), phi2 in symmetric_class(2)
    ) {
        let (n, big_n) = [(1, 2), (1, 3), (2, 3), (2, 4)][ctx_idx];
        let ctx = GrassmannianCtx::new(n, big_n).unwrap();
        let phi = if n == 1 { phi1 } else { phi2 };
        let eq = pairing_equivariant(&ctx, &phi).unwrap();
        prop_assert!(eq.vars().iter().all(|v| matches!(v, Var::L(_))));
        let at_one = eq.eval(|v| matches!(v, Var::L(_)).then(BigRat::one)).unwrap();
        prop_assert_eq!(at_one, pairing_nonequivariant(&ctx, &phi).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn finitization_telescopes(a in -6i32..=6, e1 in -2i32..=2, e2 in -2i32..=2) {
        prop_assume!(e1 != 0 || e2 != 0);
        let mon = Monomial::from_pairs([(Var::P(1), e1), (Var::L(1), e2)]);
        let r = finitized_ratio(&mon, a).unwrap();
        let step = range_ratio(&mon, a, a + 1).unwrap();
        prop_assert_eq!(r.mul(&step), finitized_ratio(&mon, a + 1).unwrap());
        // ratio(M, a)·ratio(q^a M, -a) = 1
        let shifted = mon.mul(&Monomial::pow_var(Var::Q, a));
        prop_assert!(r.mul(&finitized_ratio(&shifted, -a).unwrap()).is_one());
    }

    #[test]
    fn coefficients_are_weyl_symmetric(kind_idx in 0usize..4, d1 in 0u32..=3, d2 in 0u32..=3) {
        prop_assume!(d1 + d2 <= 3);
        let kind = [SeriesKind::JT, SeriesKind::IT, SeriesKind::JPiGT, SeriesKind::ITLevel(1)][kind_idx];
        let ctx = GrassmannianCtx::new(2, 3).unwrap();
        let a = coeff(kind, &ctx, &[d1, d2]).unwrap();
        let b = coeff(kind, &ctx, &[d2, d1]).unwrap();
        let swapped = b.subst(|v| match v {
            Var::P(1) => Some(Mono::var(Var::P(2))),
            Var::P(2) => Some(Mono::var(Var::P(1))),
            _ => None,
        }).unwrap();
        prop_assert_eq!(a, swapped);
    }

    #[test]
    fn jt_gap_lower_bound(ctx_idx in 0usize..3, d1 in 0u32..=4, d2 in 0u32..=4) {
        let (n, big_n) = [(1, 3), (2, 3), (2, 4)][ctx_idx];
        let d: Vec<u32> = if n == 1 { vec![d1] } else { vec![d1, d2] };
        prop_assume!(d.iter().sum::<u32>() <= 4 && d.iter().sum::<u32>() > 0);
        let ctx = GrassmannianCtx::new(n, big_n).unwrap();
        let gap = qkgr_core::qseries::q_degree_gap(SeriesKind::JT, &ctx, &d).unwrap();
        prop_assert!(gap >= (big_n - n + 1) as i64);
    }

    #[test]
    fn gamma_operators_commute(l1 in prop::collection::vec(-2i32..=2, 2), l2 in prop::collection::vec(-2i32..=2, 2),
                               e1 in -1i32..=1, e2 in -1i32..=1) {
        let ctx = GrassmannianCtx::new(2, 3).unwrap();
        let s = NovikovSeries::build(SeriesKind::JT, ctx, 3).unwrap();
        let lam1 = Monomial::from_pairs([(Var::L(1), 1), (Var::P(1), e1)]);
        let lam2 = Monomial::from_pairs([(Var::L(2), -1), (Var::P(2), e2)]);
        let g1 = GammaOp::new(l1.clone(), lam1.clone(), false).unwrap();
        let g2 = GammaOp::new(l2, lam2, false).unwrap();
        let ab = gamma_apply(&g2, &gamma_apply(&g1, &s).unwrap()).unwrap();
        let ba = gamma_apply(&g1, &gamma_apply(&g2, &s).unwrap()).unwrap();
        prop_assert_eq!(&ab, &ba);
        let inv = GammaOp::new(l1, lam1, true).unwrap();
        prop_assert_eq!(gamma_apply(&inv, &gamma_apply(&g1, &s).unwrap()).unwrap(), s);
    }

    #[test]
    fn localization_is_weyl_symmetric(a in 1usize..=4, b in 1usize..=4, d1 in 0u32..=2, d2 in 0u32..=2) {
        prop_assume!(a != b);
        let ctx = GrassmannianCtx::new(2, 4).unwrap();
        let fa = FixedPoint::new(ctx, vec![a, b]).unwrap();
        let fb = FixedPoint::new(ctx, vec![b, a]).unwrap();
        let x = localize(SeriesKind::JT, &ctx, &fa, &[d1, d2]).unwrap();
        let y = localize(SeriesKind::JT, &ctx, &fb, &[d2, d1]).unwrap();
        prop_assert_eq!(x, y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn recursion_exact_at_random_squares(a in 1i64..=5, b in 1i64..=5, y in 2i64..=9, forward in any::<bool>()) {
        prop_assume!(a != b);
        let ctx = GrassmannianCtx::new(1, 2).unwrap();
        let lam = [int(a * a), int(b * b)];
        let (from, to) = if forward { (1, 2) } else { (2, 1) };
        for kind in [SeriesKind::JT, SeriesKind::IT] {
            for m0 in [1u32, 2] {
                let inst = RecursionInstance::new(
                    kind,
                    FixedPoint::new(ctx, vec![from]).unwrap(),
                    FixedPoint::new(ctx, vec![to]).unwrap(),
                    m0,
                    &lam,
                    Some(rat(1, y)),
                    None,
                ).unwrap();
                let res = recursion_residual(&inst, 3).unwrap();
                prop_assert!(res.iter().all(|r| r.1.is_zero()), "{}", inst.label());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn qgamma_identity_random(qn in 3i64..=8, lam_n in 6i64..=40) {
        // q = qn/2 ≥ 1.5, Λ = lam_n/5 ≥ 1.2
        let q = rat(qn, 2);
        let lam = rat(lam_n, 5);
        let (ok, err) = check_qgamma(&lam, &q, Precision::default(), 1e-12).unwrap();
        prop_assert!(ok, "{err}");
    }

    #[test]
    fn plus_recursion_random(lam_n in 40i64..=400) {
        let rep = check_plus_recursion(&int(lam_n), &int(2), 6, Precision::default(), 1e-12).unwrap();
        prop_assert!(rep.all_pass());
    }

    #[test]
    fn tail_estimate_controls_truncation(q_idx in 0usize..3, lam_n in 3i64..=20) {
        let q = [rat(3, 2), int(2), int(4)][q_idx].clone();
        let lam = int(lam_n);
        let coarse = qint_plus_lattice(&lam, &q, Precision::digits(20)).unwrap();
        let fine = qint_plus_lattice(&lam, &q, Precision::digits(40)).unwrap();
        let diff = (coarse.value.to_f64() - fine.value.to_f64()).abs();
        prop_assert!(diff <= coarse.tail_estimate + 1e-25 * fine.value.to_f64().abs());
    }

    #[test]
    fn orbit_count_is_binomial(big_n in 1usize..=6, n_raw in 1usize..=6, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let n = 1 + (n_raw - 1) % big_n;
        prop_assume!(re.abs() + im.abs() > 0.1);
        let cfg = MirrorConfig::new(n, big_n, num_complex::Complex64::new(re, im)).unwrap();
        prop_assert_eq!(critical_points(&cfg).orbits.len() as u64, binomial(big_n, n));
    }
}
