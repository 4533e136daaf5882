//! K-ring of `Gr(n, N)`: pairings, Schur bases and recursion coefficients.
//!
//! - classes are symmetric Laurent polynomials in the Chern roots `P1..Pn`
//! - pairings use the fixed-point (Lefschetz) sum over ordered tuples divided by `n!`
//! - the non-equivariant limit follows `Λ_j = u^j` to `u = 1`

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{divide_by_vandermonde, int, rat_to_string, BigRat, LaurentPoly, Mono, Monomial, RatFuncQ, Var};
use crate::qseries::{laurent_in_q, FactoredCoeff, Fraction};
use crate::report::Report;
use crate::rng::Rng;
use crate::{Error, Result};

/// `Gr(n, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrassmannianCtx {
    pub n: usize,
    pub big_n: usize,
}

impl GrassmannianCtx {
    pub fn new(n: usize, big_n: usize) -> Result<Self> {
        if n == 0 || n > big_n || big_n > u16::MAX as usize {
            return Err(Error::InvalidContext(alloc::format!("need 1 <= n <= N, got ({n},{big_n})")));
        }
        Ok(GrassmannianCtx { n, big_n })
    }

    /// The dual Grassmannian `Gr(N-n, N)`; `None` when `n = N`.
    pub fn dual(&self) -> Option<Self> {
        Self::new(self.big_n - self.n, self.big_n).ok()
    }

    /// All fixed points (`n`-subsets of `1..N` in increasing order).
    pub fn fixed_points(&self) -> Vec<FixedPoint> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        subsets(1, self.big_n, self.n, &mut cur, &mut out);
        out.into_iter().map(|indices| FixedPoint { ctx: *self, indices }).collect()
    }
}

fn subsets(start: usize, big_n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for s in start..=big_n {
        cur.push(s);
        subsets(s + 1, big_n, k, cur, out);
        cur.pop();
    }
}

/// Torus fixed point `V_S`: an ordered tuple of distinct indices in `1..N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedPoint {
    pub ctx: GrassmannianCtx,
    pub indices: Vec<usize>,
}

impl FixedPoint {
    pub fn new(ctx: GrassmannianCtx, indices: Vec<usize>) -> Result<Self> {
        if indices.len() != ctx.n {
            return Err(Error::InvalidContext(String::from("fixed point needs n indices")));
        }
        for (a, &i) in indices.iter().enumerate() {
            if i == 0 || i > ctx.big_n || indices[..a].contains(&i) {
                return Err(Error::InvalidContext(alloc::format!("bad fixed point {indices:?}")));
            }
        }
        Ok(FixedPoint { ctx, indices })
    }

    /// Indices of `1..N` not in the fixed point, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.ctx.big_n).filter(|j| !self.indices.contains(j)).collect()
    }
}

/// A `W`-invariant class: a Laurent polynomial symmetric in `P1..Pn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    pub ctx: GrassmannianCtx,
    value: LaurentPoly,
}

impl KClass {
    pub fn new(ctx: GrassmannianCtx, value: LaurentPoly) -> Result<Self> {
        check_symmetric(&ctx, &value)?;
        Ok(KClass { ctx, value })
    }

    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }

    pub fn mul(&self, o: &KClass) -> KClass {
        KClass { ctx: self.ctx, value: self.value.mul(&o.value) }
    }
}

fn check_symmetric(ctx: &GrassmannianCtx, phi: &LaurentPoly) -> Result<()> {
    for i in 1..ctx.n {
        if !phi.is_symmetric(p(i), p(i + 1)) {
            return Err(Error::NotSymmetric);
        }
    }
    Ok(())
}

fn p(i: usize) -> Var {
    Var::P(i as u16)
}

fn l(j: usize) -> Var {
    Var::L(j as u16)
}

fn ratio(a: Var, b: Var) -> Monomial {
    Monomial::from_pairs([(a, 1), (b, -1)])
}

/// Ordered `n`-tuples of distinct indices in `1..N`.
fn ordered_tuples(ctx: &GrassmannianCtx) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for fp in ctx.fixed_points() {
        permutations(&fp.indices, &mut Vec::new(), &mut out);
    }
    out
}

fn permutations(items: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    for &x in items {
        if !cur.contains(&x) {
            cur.push(x);
            permutations(items, cur, out);
            cur.pop();
        }
    }
}

fn factorial(n: usize) -> BigRat {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// `1/∏_{a}∏_{j∉S}(1 - Λ_{S_a}/Λ_j)`: the fixed-point weight of `S`.
fn fixed_point_weight(ctx: &GrassmannianCtx, tuple: &[usize]) -> Result<FactoredCoeff> {
    let mut w = FactoredCoeff::one();
    for &s in tuple {
        for j in 1..=ctx.big_n {
            if !tuple.contains(&j) {
                w.mul_factor(0, ratio(l(s), l(j)), -1)?;
            }
        }
    }
    Ok(w)
}

fn localize_class(phi: &LaurentPoly, tuple: &[usize]) -> LaurentPoly {
    phi.subst(|v| match v {
        Var::P(i) => tuple.get(i as usize - 1).map(|&s| Mono::var(l(s))),
        _ => None,
    })
}

/// Clears every `(1 - Λ_a/Λ_b)` from the denominator of `f`.
fn clear_lambda_denominators(f: &Fraction) -> Result<LaurentPoly> {
    let mut num = f.num().clone();
    for (k, &e) in f.den() {
        let pairs = k.mon.pairs();
        let ok = k.m == 0 && pairs.len() == 2 && pairs[0].1 == 1 && pairs[1].1 == -1;
        if !ok {
            return Err(Error::PairingNotPolynomial);
        }
        let (a, b) = (pairs[0].0, pairs[1].0);
        for _ in 0..e {
            // 1 - a/b = (b - a)/b
            num = num.mul_mono(&Mono::var(b)).div_difference(b, a).ok_or(Error::PairingNotPolynomial)?;
        }
    }
    Ok(num)
}

/// Equivariant Euler characteristic `χ_T(Gr, Φ)` as a Laurent polynomial in `Λ`.
pub fn pairing_equivariant(ctx: &GrassmannianCtx, phi: &LaurentPoly) -> Result<LaurentPoly> {
    check_symmetric(ctx, phi)?;
    let mut acc = Fraction::zero();
    for t in ordered_tuples(ctx) {
        let w = Fraction::from_coeff(&fixed_point_weight(ctx, &t)?);
        acc = acc.add(&w.mul_poly(&localize_class(phi, &t)));
    }
    let num = clear_lambda_denominators(&acc)?;
    Ok(num.scale(&(int(1) / factorial(ctx.n))))
}

/// Non-equivariant `χ(Gr, Φ)`: the limit along `Λ_j = u^j` at `u = 1`.
pub fn pairing_nonequivariant(ctx: &GrassmannianCtx, phi: &LaurentPoly) -> Result<BigRat> {
    check_symmetric(ctx, phi)?;
    let to_u = |v: Var| match v {
        Var::L(j) => Some(Mono::from_monomial(Monomial::pow_var(Var::Q, j as i32))),
        _ => None,
    };
    let none = |_: Var| -> Option<BigRat> { None };
    let mut acc = RatFuncQ::zero();
    for t in ordered_tuples(ctx) {
        let w = fixed_point_weight(ctx, &t)?.subst(to_u)?.expand(none)?;
        let c = laurent_in_q(&localize_class(phi, &t).subst(to_u), &none)?;
        acc = acc.add(&w.mul(&c));
    }
    let e = acc.local_expand(&int(1), 0);
    if e.pole_order() > 0 {
        return Err(Error::PairingNotPolynomial);
    }
    let v = e.coeff(0) / factorial(ctx.n);
    if !v.is_integer() {
        return Err(Error::NonIntegerPairing(rat_to_string(&v)));
    }
    Ok(v)
}

/// Partitions inside the `n × (N-n)` box, largest first.
pub fn box_partitions(ctx: &GrassmannianCtx) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for part in (0..=max).rev() {
            cur.push(part);
            go(n, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(ctx.n, ctx.big_n - ctx.n, &mut Vec::new(), &mut out);
    out
}

/// Schur polynomial `s_λ(P1..Pn)` as a bialternant.
pub fn schur(n: usize, lambda: &[usize]) -> Result<LaurentPoly> {
    let mut alt = LaurentPoly::zero();
    let idx: Vec<usize> = (1..=n).collect();
    let mut perms = Vec::new();
    permutations(&idx, &mut Vec::new(), &mut perms);
    for sigma in perms {
        let inversions =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| sigma[a] > sigma[b]).count();
        let sign = if inversions % 2 == 0 { int(1) } else { int(-1) };
        let mon = Monomial::from_pairs(
            (0..n).map(|a| (p(sigma[a]), (lambda.get(a).copied().unwrap_or(0) + n - 1 - a) as i32)),
        );
        alt.add_term(mon, sign);
    }
    divide_by_vandermonde(&alt, n)
}

pub fn schur_basis(ctx: &GrassmannianCtx) -> Result<Vec<KClass>> {
    box_partitions(ctx).iter().map(|la| KClass::new(*ctx, schur(ctx.n, la)?)).collect()
}

/// Gram matrix of the non-equivariant pairing and its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram {
    pub matrix: Vec<Vec<BigRat>>,
    pub det: BigRat,
}

pub fn gram_matrix(ctx: &GrassmannianCtx, basis: &[KClass]) -> Result<Gram> {
    let mut matrix = Vec::with_capacity(basis.len());
    for a in basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in basis {
            row.push(pairing_nonequivariant(ctx, a.mul(b).value())?);
        }
        matrix.push(row);
    }
    let det = determinant(&matrix);
    Ok(Gram { matrix, det })
}

/// Exact determinant by Gaussian elimination.
pub fn determinant(m: &[Vec<BigRat>]) -> BigRat {
    let n = m.len();
    let mut a: Vec<Vec<BigRat>> = m.to_vec();
    let mut det = int(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return int(0);
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        let pv = a[c][c].clone();
        det *= &pv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pv;
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// The 1-dimensional orbit joining `α` and `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Position in the tuples where they differ.
    pub pos: usize,
    /// `α[pos]`.
    pub a: usize,
    /// `β[pos]`.
    pub b: usize,
    /// `α` without `a`.
    pub others: Vec<usize>,
    /// Indices outside `α ∪ {b}`.
    pub out: Vec<usize>,
}

pub fn edge(alpha: &FixedPoint, beta: &FixedPoint) -> Result<Edge> {
    let diff: Vec<usize> =
        (0..alpha.indices.len()).filter(|&k| alpha.indices[k] != beta.indices[k]).collect();
    if diff.len() != 1 || alpha.ctx != beta.ctx {
        return Err(Error::NotAdjacent);
    }
    let pos = diff[0];
    let (a, b) = (alpha.indices[pos], beta.indices[pos]);
    if alpha.indices.contains(&b) {
        return Err(Error::NotAdjacent);
    }
    let others: Vec<usize> = alpha.indices.iter().copied().filter(|&i| i != a).collect();
    let out: Vec<usize> = (1..=alpha.ctx.big_n).filter(|j| *j != b && !alpha.indices.contains(j)).collect();
    Ok(Edge { pos, a, b, others, out })
}

fn x_mon(m: i32) -> Monomial {
    Monomial::pow_var(Var::X, m)
}

/// Euler-class ratio `Eu(T_α X)/Eu(T_φ X_{0,2,m0})` in `Λ` and the formal root `x`.
pub fn euler_ratio(ctx: &GrassmannianCtx, alpha: &FixedPoint, beta: &FixedPoint, m0: u32) -> Result<FactoredCoeff> {
    if m0 == 0 {
        return Err(Error::NonPositiveCover);
    }
    let e = edge(alpha, beta)?;
    let m0 = m0 as i32;
    let mut c = FactoredCoeff::one();
    for &i in &alpha.indices {
        for j in 1..=ctx.big_n {
            if !alpha.indices.contains(&j) {
                c.mul_factor(0, ratio(l(i), l(j)), 1)?;
            }
        }
    }
    for &i in &e.others {
        for &j in &e.out {
            c.mul_factor(0, ratio(l(i), l(j)), -1)?;
        }
    }
    for m in -m0..=m0 {
        if m != 0 {
            c.mul_factor(0, x_mon(m), -1)?;
        }
    }
    for &j in &e.out {
        for m in 0..=m0 {
            c.mul_factor(0, x_mon(m).mul(&ratio(l(e.a), l(j))), -1)?;
        }
    }
    for &i in &e.others {
        for m in 0..=m0 {
            c.mul_factor(0, x_mon(m).mul(&ratio(l(i), l(e.b))), -1)?;
        }
    }
    Ok(c)
}

/// The `Y`-dependent modifying factor of the recursion coefficient for balanced series.
pub fn modifying_factor_y(
    ctx: &GrassmannianCtx,
    alpha: &FixedPoint,
    beta: &FixedPoint,
    m0: u32,
    with_y: bool,
) -> Result<FactoredCoeff> {
    if m0 == 0 {
        return Err(Error::NonPositiveCover);
    }
    let e = edge(alpha, beta)?;
    let mut c = FactoredCoeff::one();
    if !with_y {
        return Ok(c);
    }
    let y = Monomial::var(Var::Y);
    for m in 1..=m0 as i32 {
        for j in 1..=ctx.big_n {
            c.mul_factor(0, x_mon(m).mul(&y).mul(&ratio(l(e.a), l(j))), 1)?;
        }
        for &i in &e.others {
            c.mul_factor(0, x_mon(m).mul(&y).mul(&ratio(l(i), l(e.b))), 1)?;
            c.mul_factor(0, x_mon(m).mul(&y).mul(&ratio(l(e.a), l(i))), -1)?;
        }
    }
    Ok(c)
}

/// Random symmetric class: a few random `P`-monomials symmetrized over `S_n`.
pub fn random_symmetric_class(n: usize, rng: &mut Rng) -> LaurentPoly {
    let mut base = LaurentPoly::zero();
    for _ in 0..rng.range(1, 3) {
        let exps: Vec<(Var, i32)> = (1..=n).map(|i| (p(i), rng.range(-2, 2) as i32)).collect();
        base.add_term(Monomial::from_pairs(exps), int(rng.range(-3, 3)));
    }
    let ids: Vec<usize> = (1..=n).collect();
    let mut perms = Vec::new();
    permutations(&ids, &mut Vec::new(), &mut perms);
    let mut acc = LaurentPoly::zero();
    for perm in perms {
        acc = acc.add(&base.subst(|v| match v {
            Var::P(i) => Some(Mono::var(p(perm[i as usize - 1]))),
            _ => None,
        }));
    }
    acc
}

/// Pairing checks on a grid: `χ(1) = 1`, unimodular Schur Gram matrix, and
/// `χ_T(Φ)|_{Λ=1} = χ(Φ)` for `classes` seeded random classes spread over the grid.
pub fn verify_pairings(grid: &[(usize, usize)], classes: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new();
    for &(n, big_n) in grid {
        let ctx = GrassmannianCtx::new(n, big_n)?;
        let one = pairing_nonequivariant(&ctx, &LaurentPoly::one())?;
        rep.push(alloc::format!("pairing ({n},{big_n}) chi(1)"), one == int(1), rat_to_string(&one));
        let g = gram_matrix(&ctx, &schur_basis(&ctx)?)?;
        let ok = (g.det == int(1) || g.det == int(-1)) && g.matrix.iter().flatten().all(|v| v.is_integer());
        rep.push(alloc::format!("pairing ({n},{big_n}) gram"), ok, alloc::format!("det {}", rat_to_string(&g.det)));
    }
    let mut rng = Rng::fork(seed, "pairing-limit");
    for k in 0..classes {
        let (n, big_n) = grid[k % grid.len()];
        let ctx = GrassmannianCtx::new(n, big_n)?;
        let phi = random_symmetric_class(n, &mut rng);
        let eq = pairing_equivariant(&ctx, &phi)?;
        let at_one = eq.eval(|v| matches!(v, Var::L(_)).then(|| int(1)))?;
        let ne = pairing_nonequivariant(&ctx, &phi)?;
        rep.push(
            alloc::format!("pairing ({n},{big_n}) limit #{k:02}"),
            at_one == ne,
            alloc::format!("{} vs {}", rat_to_string(&at_one), rat_to_string(&ne)),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, big_n: usize) -> GrassmannianCtx {
        GrassmannianCtx::new(n, big_n).unwrap()
    }

    fn pv(i: usize, e: i32) -> LaurentPoly {
        LaurentPoly::from_mono(Mono::from_monomial(Monomial::pow_var(p(i), e)))
    }

    #[test]
    fn equivariant_examples() {
        assert_eq!(pairing_equivariant(&ctx(1, 2), &LaurentPoly::one()).unwrap(), LaurentPoly::one());
        assert!(pairing_equivariant(&ctx(1, 2), &pv(1, 1)).unwrap().is_zero());
        assert_eq!(pairing_equivariant(&ctx(2, 4), &LaurentPoly::one()).unwrap(), LaurentPoly::one());
        let asym = pv(1, 1);
        assert_eq!(pairing_equivariant(&ctx(2, 3), &asym), Err(Error::NotSymmetric));
    }

    #[test]
    fn equivariant_matches_random_specialization() {
        // Oracle: the fixed-point sum evaluated directly at rational Λ.
        let c = ctx(2, 4);
        let phi = pv(1, 1).add(&pv(2, 1)).mul(&pv(1, -1).add(&pv(2, -1)));
        let poly = pairing_equivariant(&c, &phi).unwrap();
        let mut rng = Rng::new(5);
        for _ in 0..3 {
            let lam = rng.distinct_rationals(4, 30);
            let f = |v: Var| match v {
                Var::L(j) => lam.get(j as usize - 1).cloned(),
                _ => None,
            };
            let mut direct = int(0);
            for t in ordered_tuples(&c) {
                let w = fixed_point_weight(&c, &t).unwrap();
                let wq = w.eval(|v| if v == Var::Q { Some(int(1)) } else { f(v) }).unwrap();
                direct += wq * localize_class(&phi, &t).eval(f).unwrap();
            }
            assert_eq!(poly.eval(f).unwrap(), direct / factorial(2));
        }
    }

    #[test]
    fn nonequivariant_examples() {
        let c = ctx(1, 2);
        assert_eq!(pairing_nonequivariant(&c, &LaurentPoly::one()).unwrap(), int(1));
        assert_eq!(pairing_nonequivariant(&c, &pv(1, -1)).unwrap(), int(2));
        assert_eq!(pairing_nonequivariant(&c, &pv(1, 2)).unwrap(), int(-1));
        for (n, big_n) in [(1, 3), (2, 3), (2, 4)] {
            assert_eq!(pairing_nonequivariant(&ctx(n, big_n), &LaurentPoly::one()).unwrap(), int(1));
        }
    }

    #[test]
    fn gram_examples() {
        let c = ctx(1, 2);
        let one = KClass::new(c, LaurentPoly::one()).unwrap();
        let pcls = KClass::new(c, pv(1, 1)).unwrap();
        let g = gram_matrix(&c, &[one.clone(), pcls]).unwrap();
        assert_eq!(g.matrix, alloc::vec![alloc::vec![int(1), int(0)], alloc::vec![int(0), int(-1)]]);
        assert_eq!(g.det, int(-1));
        assert_eq!(gram_matrix(&c, &[one.clone(), one]).unwrap().det, int(0));
        for (n, big_n) in [(1, 2), (1, 3), (2, 4)] {
            let c = ctx(n, big_n);
            let basis = schur_basis(&c).unwrap();
            assert_eq!(basis.len(), box_partitions(&c).len());
            let g = gram_matrix(&c, &basis).unwrap();
            assert!(g.det == int(1) || g.det == int(-1), "{n},{big_n}: {}", g.det);
        }
    }

    #[test]
    fn pairing_report() {
        let rep = verify_pairings(&[(1, 2), (2, 3)], 6, 1).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.len(), 10);
    }

    #[test]
    fn schur_small() {
        // s_(1,0)(P1,P2) = P1 + P2, s_(1,1) = P1 P2
        assert_eq!(schur(2, &[1, 0]).unwrap(), pv(1, 1).add(&pv(2, 1)));
        assert_eq!(schur(2, &[1, 1]).unwrap(), pv(1, 1).mul(&pv(2, 1)));
    }

    fn ll(i: usize, j: usize) -> Monomial {
        ratio(l(i), l(j))
    }

    #[test]
    fn euler_ratio_examples() {
        let c = ctx(1, 2);
        let a = FixedPoint::new(c, alloc::vec![1]).unwrap();
        let b = FixedPoint::new(c, alloc::vec![2]).unwrap();
        let mut expect = FactoredCoeff::factor(0, ll(1, 2), 1).unwrap();
        expect.mul_factor(0, x_mon(1), -1).unwrap();
        expect.mul_factor(0, x_mon(-1), -1).unwrap();
        assert_eq!(euler_ratio(&c, &a, &b, 1).unwrap(), expect);
        assert_eq!(euler_ratio(&c, &a, &b, 0), Err(Error::NonPositiveCover));
        assert_eq!(euler_ratio(&c, &a, &a, 1), Err(Error::NotAdjacent));

        let c = ctx(2, 3);
        let a = FixedPoint::new(c, alloc::vec![1, 2]).unwrap();
        let b = FixedPoint::new(c, alloc::vec![3, 2]).unwrap();
        let mut expect = FactoredCoeff::factor(0, ll(1, 3), 1).unwrap();
        expect.mul_factor(0, ll(2, 3), 1).unwrap();
        expect.mul_factor(0, x_mon(1), -1).unwrap();
        expect.mul_factor(0, x_mon(-1), -1).unwrap();
        expect.mul_factor(0, ll(2, 3), -1).unwrap();
        expect.mul_factor(0, x_mon(1).mul(&ll(2, 3)), -1).unwrap();
        assert_eq!(euler_ratio(&c, &a, &b, 1).unwrap(), expect);
    }

    #[test]
    fn modifying_factor_examples() {
        let c = ctx(2, 3);
        let a = FixedPoint::new(c, alloc::vec![1, 2]).unwrap();
        let b = FixedPoint::new(c, alloc::vec![3, 2]).unwrap();
        let y = Monomial::var(Var::Y);
        let xy = x_mon(1).mul(&y);
        let mut expect = FactoredCoeff::one();
        for j in 1..=3 {
            expect.mul_factor(0, xy.mul(&ll(1, j)), 1).unwrap();
        }
        expect.mul_factor(0, xy.mul(&ll(2, 3)), 1).unwrap();
        expect.mul_factor(0, xy.mul(&ll(1, 2)), -1).unwrap();
        let got = modifying_factor_y(&c, &a, &b, 1, true).unwrap();
        assert_eq!(got, expect);
        // Y = 0 degenerates to 1.
        let at = |v: Var| match v {
            Var::Y => Some(int(0)),
            Var::X => Some(int(3)),
            Var::L(j) => Some(int(j as i64 + 1)),
            _ => Some(int(1)),
        };
        assert_eq!(got.eval(at).unwrap(), int(1));
        // At Y = 1 on x = Λ_b/Λ_a the factor (1 - xYΛ_a/Λ_b) vanishes.
        let at1 = |v: Var| match v {
            Var::Y => Some(int(1)),
            Var::X => Some(int(2)),
            Var::L(1) => Some(int(2)),
            Var::L(2) => Some(int(3)),
            Var::L(3) => Some(int(4)),
            _ => Some(int(1)),
        };
        assert_eq!(got.eval(at1).unwrap(), int(0));
    }
}
