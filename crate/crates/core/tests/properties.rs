mod common;

use excprime_core::ec_pipeline::{ec_exceptional_primes, shared_root_primes, window_product};
use excprime_core::ffield::{dlog, DlogTable, FqCtx};
use excprime_core::legendre::LegendreCurve;
use excprime_core::modp::primes_up_to;
use excprime_core::multdep::{
    check_g_bounds, check_multiplicative_independence, g_poly, integer_kernel_vector, purify_g,
    tuple_order, ExponentVector, Independence, RationalTuple,
};
use excprime_core::zpoly::{
    bounds, coprime_basis, gcd, modular, resultant, resultant_modular, sylvester_resultant,
};
use excprime_core::{BigPoly, EcPipelineParams, ResultantMode};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = BigPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| BigPoly::from_i64s(&c))
}

fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = BigPoly> {
    poly(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
}

fn big_poly(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BigPoly> {
    prop::collection::vec(any::<i64>(), len).prop_map(|c| {
        let big: Vec<BigInt> = c
            .iter()
            .map(|&v| BigInt::from(v) * BigInt::from(v) - v)
            .collect();
        BigPoly::new(big)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_matches_convolution(a in big_poly(0..=60), b in big_poly(0..=60)) {
        prop_assert_eq!(&a * &b, common::naive_mul(&a, &b));
    }

    #[test]
    fn ring_axioms(a in poly(6, 20), b in poly(6, 20), c in poly(6, 20)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn text_round_trip(a in poly(10, 1000)) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<BigPoly>().unwrap(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in nonzero_poly(6, 30), b in nonzero_poly(6, 30)) {
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn resultant_routes_agree(a in nonzero_poly(7, 40), b in nonzero_poly(7, 40)) {
        let r = resultant(&a, &b);
        prop_assert_eq!(&r, &sylvester_resultant(&a, &b));
        prop_assert_eq!(&r, &resultant_modular(&a, &b));
        prop_assert_eq!(&r, &common::oracle_resultant(&a, &b));
    }

    #[test]
    fn resultant_hadamard_bound(a in nonzero_poly(7, 40), b in nonzero_poly(7, 40)) {
        let r = resultant(&a, &b);
        prop_assert!(bounds::check_resultant(&a, &b, &r).is_ok());
        // |Res|^2 <= (sum a_i^2)^{deg b} (sum b_j^2)^{deg a}
        let lhs = &r * &r;
        let rhs = num_traits::pow(a.norm2_sq(), b.degree_or_zero())
            * num_traits::pow(b.norm2_sq(), a.degree_or_zero());
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn resultant_zero_iff_common_factor(a in nonzero_poly(5, 9), b in nonzero_poly(5, 9), c in nonzero_poly(3, 9)) {
        let r = resultant(&a, &b);
        prop_assert_eq!(r.is_zero(), !gcd(&a, &b).is_constant());
        if !c.is_constant() {
            let (ac, bc) = (&a * &c, &b * &c);
            prop_assert!(resultant(&ac, &bc).is_zero());
            prop_assert!(resultant_modular(&ac, &bc).is_zero());
        }
    }

    #[test]
    fn gcd_divides_and_cofactors_coprime(a in nonzero_poly(5, 12), b in nonzero_poly(5, 12), c in nonzero_poly(3, 12)) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.is_divisible_by(&g));
        prop_assert!(bc.is_divisible_by(&g));
        let (u, v) = (ac.exact_div(&g).unwrap(), bc.exact_div(&g).unwrap());
        prop_assert!(gcd(&u, &v).is_constant());
        prop_assert!(g.is_divisible_by(&c.primitive_part()));
    }

    #[test]
    fn product_height_bounds(gs in prop::collection::vec(nonzero_poly(5, 300), 1..5)) {
        let prod = bounds::checked_product(&gs).unwrap();
        // exact form of the two-sided product inequality
        let hs: BigInt = gs.iter().map(BigPoly::max_abs_coeff).product();
        let d: usize = gs.iter().map(BigPoly::degree_or_zero).sum();
        prop_assert!(hs <= (prod.max_abs_coeff() << (2 * d)));
        prop_assert!(prod.max_abs_coeff() <= (hs << d));
    }

    #[test]
    fn sum_height_bound(gs in prop::collection::vec(nonzero_poly(5, 300), 1..6)) {
        let s = bounds::checked_sum(&gs);
        let total = gs.iter().fold(BigPoly::zero(), |acc, g| &acc + g);
        if !total.is_zero() {
            prop_assert!(s.is_ok());
            let hmax = gs.iter().map(BigPoly::max_abs_coeff).max().unwrap();
            prop_assert!(total.max_abs_coeff() <= hmax * BigInt::from(gs.len()));
        }
    }

    #[test]
    fn coprime_basis_reconstructs(fs in prop::collection::vec(nonzero_poly(3, 6), 1..4), c in nonzero_poly(2, 6)) {
        let mut inputs: Vec<BigPoly> = fs.iter().map(|f| f * &c).collect();
        inputs.push(c.clone());
        let cb = coprime_basis(&inputs);
        for (i, f) in inputs.iter().enumerate() {
            prop_assert_eq!(&cb.reconstruct(i), f);
        }
        for i in 0..cb.basis.len() {
            prop_assert!(!cb.basis[i].is_constant());
            for j in i + 1..cb.basis.len() {
                prop_assert!(gcd(&cb.basis[i], &cb.basis[j]).is_constant());
            }
        }
    }

    #[test]
    fn modular_resultant_matches_reduction(a in nonzero_poly(4, 20), b in nonzero_poly(4, 20)) {
        let p = 1_000_003u64;
        let lc_ok = |f: &BigPoly| modular::bigint_mod(f.leading_coeff().unwrap(), p) != 0;
        prop_assume!(lc_ok(&a) && lc_ok(&b));
        let r = resultant(&a, &b);
        let rm = modular::resultant(&modular::reduce(&a, p), &modular::reduce(&b, p), p);
        prop_assert_eq!(modular::bigint_mod(&r, p), rm);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dlog_properties(pi in 0usize..8, k in 1usize..=2, a in any::<u64>(), b in any::<u64>()) {
        let p = [3u64, 5, 7, 11, 13, 31, 101, 257][pi];
        let ctx = FqCtx::new(p, k).unwrap();
        let x = ctx.from_index(a % (ctx.size() - 1) + 1);
        let y = ctx.from_index(b % (ctx.size() - 1) + 1);
        let g = ctx.find_generator();
        let table = DlogTable::new(&ctx, &g).unwrap();
        let (lx, ly) = (table.log(&ctx, &x).unwrap(), table.log(&ctx, &y).unwrap());
        prop_assert_eq!(ctx.pow(&g, lx as u128), x);
        let lxy = table.log(&ctx, &ctx.mul(&x, &y)).unwrap();
        prop_assert_eq!(lxy, (lx + ly) % ctx.group_order());
        prop_assert_eq!(dlog(&ctx, &g, &x).unwrap(), lx);
        for &(l, _) in ctx.order_factors() {
            prop_assert!(!ctx.is_one(&ctx.pow(&g, (ctx.group_order() / l) as u128)));
        }
    }

    #[test]
    fn field_axioms(pi in 0usize..4, k in 1usize..=4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let p = [3u64, 5, 7, 11][pi];
        let ctx = FqCtx::new(p, k).unwrap();
        let e = |v: u64| ctx.from_index(v % ctx.size());
        let (x, y, z) = (e(a), e(b), e(c));
        prop_assert_eq!(ctx.mul(&ctx.add(&x, &y), &z), ctx.add(&ctx.mul(&x, &z), &ctx.mul(&y, &z)));
        prop_assert_eq!(ctx.pow(&x, ctx.size() as u128), x);
        if !ctx.is_zero(&x) {
            prop_assert!(ctx.is_one(&ctx.mul(&x, &ctx.inv(&x).unwrap())));
        }
        let sq = ctx.square(&x);
        let r = ctx.sqrt(&sq).unwrap();
        prop_assert_eq!(ctx.square(&r), sq);
    }

    #[test]
    fn group_law_and_orders(pi in 0usize..5, t in 2i64..20, i in any::<usize>(), j in any::<usize>(), l in any::<usize>()) {
        let p = [5u64, 7, 11, 13, 17][pi];
        prop_assume!(t % p as i64 > 1);
        let e = LegendreCurve::reduce(FqCtx::new(p, 1).unwrap(), t).unwrap();
        let pts = e.affine_points();
        let n = e.group_order().unwrap();
        prop_assert_eq!(pts.len() as u64 + 1, n);
        let (a, b, c) = (pts[i % pts.len()], pts[j % pts.len()], pts[l % pts.len()]);
        let ab_c = e.add_points(&e.add_points(&a, &b).unwrap(), &c).unwrap();
        let a_bc = e.add_points(&a, &e.add_points(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let o = e.point_order(&a).unwrap();
        prop_assert_eq!(n % o, 0);
        prop_assert_eq!(o, common::naive_order(&e, &a));
        prop_assert_eq!(e.point_order(&e.neg_point(&a)).unwrap(), o);
        // Hasse
        let tr = e.trace_of_frobenius().unwrap();
        prop_assert!((tr * tr) as u64 <= 4 * p);
    }

    #[test]
    fn g_roots_match_relations(k1 in -3i64..=3, k2 in -3i64..=3, x in 2u64..97) {
        prop_assume!(k1 != 0 || k2 != 0);
        let fs = RationalTuple::parse(&["0,1/1,2", "1,1,1/3"]).unwrap();
        let p = 97u64;
        let k = ExponentVector::new(vec![k1, k2]);
        let g = g_poly(&fs, &k).unwrap();
        prop_assert!(check_g_bounds(&fs, &k, &g).is_ok());
        let ctx = FqCtx::new(p, 1).unwrap();
        let ev = |f: &BigPoly| ctx.from_u64(modular::eval(&modular::reduce(f, p), x % p, p));
        let vals: Vec<_> = fs.p.iter().zip(&fs.q).map(|(a, b)| (ev(a), ev(b))).collect();
        prop_assume!(vals.iter().all(|(a, b)| !ctx.is_zero(a) && !ctx.is_zero(b)));
        let mut prod = ctx.one();
        for ((a, b), &e) in vals.iter().zip(&k.k) {
            let f = ctx.div(a, b).unwrap();
            let f = if e < 0 { ctx.inv(&f).unwrap() } else { f };
            prod = ctx.mul(&prod, &ctx.pow(&f, e.unsigned_abs() as u128));
        }
        prop_assert_eq!(ctx.is_zero(&ev(&g)), ctx.is_one(&prod));
        let pure = purify_g(&fs, &g).unwrap();
        prop_assert!(gcd(&pure, &fs.pole_zero_product()).is_constant());
    }

    #[test]
    fn tuple_order_minimal(pi in 0usize..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let p = [31u64, 61, 101, 211][pi];
        let ctx = FqCtx::new(p, 1).unwrap();
        let vals: Vec<_> = [a, b, c].iter().map(|v| ctx.from_u64(v % (p - 1) + 1)).collect();
        let r = tuple_order(&ctx, &vals, 12).unwrap();
        prop_assume!(r.complete);
        let w = r.witness.unwrap();
        prop_assert_eq!(w.norm(), r.order);
        // nothing in the open box of radius `order`
        let m = r.order as i64 - 1;
        for x in -m..=m { for y in -m..=m { for z in -m..=m {
            if x == 0 && y == 0 && z == 0 { continue; }
            let mut acc = ctx.one();
            for (v, e) in vals.iter().zip([x, y, z]) {
                let base = if e < 0 { ctx.inv(v).unwrap() } else { *v };
                acc = ctx.mul(&acc, &ctx.pow(&base, e.unsigned_abs() as u128));
            }
            prop_assert!(!ctx.is_one(&acc));
        }}}
    }

    #[test]
    fn kernel_vector_is_in_kernel(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 0..4)) {
        match integer_kernel_vector(&rows, 3) {
            Some(k) => {
                prop_assert!(k.iter().any(|&v| v != 0));
                for r in &rows {
                    prop_assert_eq!(r.iter().zip(&k).map(|(a, b)| a * b).sum::<i64>(), 0);
                }
            }
            None => {
                prop_assert_eq!(rows.len(), 3);
                let m: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                    .collect();
                prop_assert!(!common::rational_det(m).is_zero());
            }
        }
    }

    #[test]
    fn independence_detects_constructed_relations(k1 in 1u32..4, k2 in 1u32..4, c in nonzero_poly(2, 5)) {
        prop_assume!(!c.is_constant());
        let fs = RationalTuple::new(vec![
            (c.pow(k2), BigPoly::one()),
            (c.pow(k1), BigPoly::one()),
        ]).unwrap();
        match check_multiplicative_independence(&fs) {
            Independence::Dependent { witness } => {
                prop_assert_eq!(witness.k[0] * k2 as i64 + witness.k[1] * k1 as i64, 0);
            }
            Independence::Independent => prop_assert!(false, "missed a relation"),
        }
    }
}

#[test]
fn f_n_integrality_and_degree() {
    for t in [2i64, 3, 5, -7] {
        let e = LegendreCurve::over_integers(t).unwrap();
        for n in 1..=16u32 {
            let psi = e.division_psi(n as i64).unwrap();
            if n % 2 == 0 {
                assert!(psi.even.is_empty());
                assert!(psi.odd.iter().all(|c| (c % 2u8).is_zero()));
            } else {
                assert!(psi.odd.is_empty());
            }
            let f = e.f_poly(n).unwrap();
            assert_eq!(f.degree_or_zero() as u64, common::parity_degree(n as u64));
        }
    }
}

#[test]
fn resultant_primes_are_shared_root_primes() {
    let a = window_product(2, 2, 6).unwrap();
    let b = window_product(3, 2, 6).unwrap();
    let r = resultant(&a, &b);
    assert!(!r.is_zero());
    let from_r: Vec<u64> = primes_up_to(200)
        .into_iter()
        .filter(|&p| modular::bigint_mod(&r, p) == 0)
        .collect();
    assert_eq!(from_r, shared_root_primes(&a, &b, 200));
}

#[test]
fn coincident_reduction_is_excluded() {
    // t1 = 3, t2 = 8: 5 | t1 - t2
    let params = EcPipelineParams::new(3, 8, 2, 5, 100);
    let rep = ec_exceptional_primes(&params).unwrap();
    assert!(rep.bad_primes.contains(&5));
    assert!(!rep.is_certified_good(5));
}

#[test]
fn resultant_modes_agree_on_small_windows() {
    for (t1, t2) in [(2, 3), (-2, 5), (4, 7)] {
        let mut a = EcPipelineParams::new(t1, t2, 3, 6, 300);
        a.checked = true;
        let mut b = a.clone();
        b.mode = ResultantMode::FullProduct;
        let (ra, rb) = (
            ec_exceptional_primes(&a).unwrap(),
            ec_exceptional_primes(&b).unwrap(),
        );
        assert_eq!(ra.resultant, rb.resultant);
        assert_eq!(ra.exceptional_primes, rb.exceptional_primes);
    }
}

#[test]
fn sign_of_resultant_under_swap() {
    let a = BigPoly::from_i64s(&[1, 2, 3]);
    let b = BigPoly::from_i64s(&[-1, 0, 5, 1]);
    let (ab, ba) = (resultant(&a, &b), resultant(&b, &a));
    // Res(b, a) = (-1)^{deg a deg b} Res(a, b)
    assert_eq!(ab, ba);
    let c = BigPoly::from_i64s(&[4, 1]);
    assert_eq!(resultant(&b, &c), -resultant(&c, &b));
    assert!(resultant(&a, &BigPoly::one()).is_one());
}
