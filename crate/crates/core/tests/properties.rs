//! Randomized algebraic identities: every exact routine is checked against
//! an independent formulation (direct evaluation, planted constructions).

use newton_center::bipoly::BiRatPoly;
use newton_center::center::check_c2_decomposition;
use newton_center::monodromy::NewtonSystem;
use newton_center::poly::{Endpoint, RatPoly};
use newton_center::rational::{rat, ratq, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratq(n, d))
}

fn poly_strategy(max_len: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(rat_strategy(), 0..=max_len).prop_map(RatPoly::new)
}

fn bipoly_strategy() -> impl Strategy<Value = BiRatPoly> {
    prop::collection::vec(((0u32..=6, 0u32..=4), rat_strategy()), 0..=8).prop_map(|terms| {
        let mut p = BiRatPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(c, i, j);
        }
        p
    })
}

proptest! {
    #[test]
    fn reverse_is_an_involution(p in poly_strategy(7), extra in 0usize..=3) {
        let n = p.degree().unwrap_or(0) + extra;
        let r = p.reverse(n).expect("degree fits");
        let back = r.reverse(n).expect("degree fits");
        // Reversal at width n is an involution on polynomials of degree <= n
        // with nonzero constant term; a zero constant term shifts into a
        // dropped leading zero, so compare after clearing the common factor.
        let v = p.valuation().unwrap_or(0);
        prop_assert_eq!(back, p.div_xpow(v).unwrap().shift_up(v));
    }

    #[test]
    fn derivative_undoes_antiderivative(p in poly_strategy(8)) {
        prop_assert_eq!(p.antiderivative().derivative(), p);
    }

    #[test]
    fn antiderivative_has_no_constant_term(p in poly_strategy(8)) {
        prop_assert!(p.antiderivative().coeff(0).is_zero());
    }

    #[test]
    fn planted_decomposition_recomposes(
        nu in 1usize..=2,
        r_tail in prop::collection::vec(rat_strategy(), 0..=2),
        a0_tail in prop::collection::vec(rat_strategy(), 0..=2),
        a0_neg in 1i64..=5,
        a1 in prop::collection::vec(rat_strategy(), 0..=3),
        a2 in prop::collection::vec(rat_strategy(), 0..=3),
    ) {
        // r = x^(2 nu) + higher-order tail, A_0(0) < 0.
        let mut r = RatPoly::monomial(rat(1), 2 * nu);
        for (k, c) in r_tail.into_iter().enumerate() {
            r = r.add(&RatPoly::monomial(c, 2 * nu + 1 + k));
        }
        let mut a0 = RatPoly::constant(rat(-a0_neg));
        for (k, c) in a0_tail.into_iter().enumerate() {
            a0 = a0.add(&RatPoly::monomial(c, k + 1));
        }
        let (a1, a2) = (RatPoly::new(a1), RatPoly::new(a2));
        let rp = r.derivative();
        let polys: Vec<RatPoly> =
            [&a0, &a1, &a2].iter().map(|a| a.compose(&r).mul(&rp)).collect();
        let s = NewtonSystem::new(polys.clone());
        let d = check_c2_decomposition(&s, nu).expect("planted decomposition is found");
        // The witness need not equal the planted data, but must recompose.
        let dp = d.r.derivative();
        for (i, p) in polys.iter().enumerate() {
            prop_assert_eq!(&d.a[i].compose(&d.r).mul(&dp), p, "component {}", i);
        }
        prop_assert!(d.a[0].coeff(0) < rat(0));
    }

    #[test]
    fn sturm_count_matches_planted_roots(
        roots in prop::collection::btree_set(-6i64..=6, 0..=4),
        mults in prop::collection::vec(1u32..=2, 4),
        rootless_b in -3i64..=3,
        rootless_c in 1i64..=5,
        scale in prop::sample::select(vec![-3i64, -1, 1, 2]),
        lo in -10i64..=10,
        width in 1i64..=12,
    ) {
        // p = scale * prod (x - r)^m * (x^2 + bx + c) with b^2 - 4c < 0.
        prop_assume!(rootless_b * rootless_b < 4 * rootless_c);
        let mut p = RatPoly::constant(rat(scale));
        for (r, m) in roots.iter().zip(&mults) {
            let lin = RatPoly::new(vec![rat(-r), rat(1)]);
            p = p.mul(&lin.pow(*m));
        }
        p = p.mul(&RatPoly::new(vec![rat(rootless_c), rat(rootless_b), rat(1)]));
        let total = p
            .sturm_real_root_count(&Endpoint::NegInf, &Endpoint::PosInf)
            .unwrap();
        prop_assert_eq!(total, roots.len());
        // Interval counts, with endpoints nudged off the integer lattice.
        let (a, b) = (ratq(2 * lo + 1, 2), ratq(2 * (lo + width) + 1, 2));
        let in_interval = roots
            .iter()
            .filter(|&&r| ratq(2 * r, 2) > a && ratq(2 * r, 2) < b)
            .count();
        let counted = p
            .sturm_real_root_count(&Endpoint::Excl(a), &Endpoint::Excl(b))
            .unwrap();
        prop_assert_eq!(counted, in_interval);
    }
}

proptest! {
    // The blow-up substitutions feed every descent step, so they get a
    // larger case budget than the default.
    #![proptest_config(ProptestConfig { cases: 600, ..ProptestConfig::default() })]

    #[test]
    fn directional_blowup_is_exact_substitution(
        poly in bipoly_strategy(),
        p in 0u32..=3,
        q in 1u32..=3,
        phi in rat_strategy(),
        u1 in rat_strategy(),
        v1 in rat_strategy(),
    ) {
        // u -> u1^q, v -> u1^p (phi + v1).
        let sub = poly.subst_blowup(p, q, &phi);
        let u = pow_rat(&u1, q);
        let v = pow_rat(&u1, p) * (phi + &v1);
        prop_assert_eq!(sub.eval(&u1, &v1), poly.eval(&u, &v));
    }

    #[test]
    fn vertical_blowup_is_exact_substitution(
        poly in bipoly_strategy(),
        p in 0u32..=3,
        neg in any::<bool>(),
        w in rat_strategy(),
        z in rat_strategy(),
    ) {
        // u -> w z, v -> s z^p with s = ±1.
        let sub = poly.subst_vertical(p, neg);
        let s = if neg { rat(-1) } else { rat(1) };
        let u = &w * &z;
        let v = s * pow_rat(&z, p);
        prop_assert_eq!(sub.eval(&w, &z), poly.eval(&u, &v));
    }

    #[test]
    fn u_conjugation_is_exact_substitution(
        poly in bipoly_strategy(),
        u in rat_strategy(),
        v in rat_strategy(),
    ) {
        prop_assert_eq!(poly.conjugate_u().eval(&u, &v), poly.eval(&(-&u), &v));
    }
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = rat(1);
    for _ in 0..e {
        acc *= x;
    }
    acc
}
