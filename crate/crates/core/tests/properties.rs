use bettilab::algebra::{count_monomials, parse_ring_spec, Algebra, HomogPoly, Monomial, RingSpec};
use bettilab::linalg::Prime;
use bettilab::resolution::minimal_betti_table;
use bettilab::series::{betti_polynomials, BiPoly, RationalSeries};
use num_bigint::BigInt;
use proptest::prelude::*;

fn z_poly(coeffs: Vec<i64>) -> BiPoly {
    BiPoly::from_z_coeffs(&coeffs)
}

fn pm_den(g: u32, c: u32) -> BiPoly {
    &BiPoly::from_z_coeffs(&[1, 1]).pow(g) * &BiPoly::from_z_coeffs(&[1, -1]).pow(c)
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..3, 0u32..4, -4i64..5), 0..6).prop_map(BiPoly::from_terms)
}

proptest! {
    #[test]
    fn product_divides_back(a in bipoly(), tail in bipoly(), sign in prop::bool::ANY) {
        // exact division needs a unit constant term
        let b = &BiPoly::constant(if sign { 1 } else { -1 }) + &tail.shift(0, 1);
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b), Some(a));
    }

    #[test]
    fn expansion_is_additive_and_multiplicative(
        n1 in prop::collection::vec(-3i64..4, 1..4),
        n2 in prop::collection::vec(-3i64..4, 1..4),
        g1 in 0u32..3, c1 in 0u32..3, g2 in 0u32..3, c2 in 0u32..3,
    ) {
        let s1 = RationalSeries::new(z_poly(n1), pm_den(g1, c1), 0).unwrap();
        let s2 = RationalSeries::new(z_poly(n2), pm_den(g2, c2), 0).unwrap();
        let e1 = s1.expand_univariate(12).unwrap();
        let e2 = s2.expand_univariate(12).unwrap();
        let sum = s1.add(&s2).unwrap().expand_univariate(12).unwrap();
        let prod = s1.mul(&s2).unwrap().expand_univariate(12).unwrap();
        for i in 0..=12usize {
            prop_assert_eq!(&sum[i], &(&e1[i] + &e2[i]));
            let conv: BigInt = (0..=i).map(|k| &e1[k] * &e2[i - k]).sum();
            prop_assert_eq!(&prod[i], &conv);
        }
    }

    #[test]
    fn quasi_polynomials_reproduce_the_tail(
        num in prop::collection::vec(-5i64..6, 1..5),
        c in 1u32..5,
        g_raw in 0u32..4,
    ) {
        let g = g_raw % c;
        let s = RationalSeries::new(z_poly(num), pm_den(g, c), 0).unwrap();
        prop_assume!(!s.is_zero());
        let pair = betti_polynomials(&s).unwrap();
        let from = pair.valid_from;
        let coeffs = s.expand_univariate(from + 15).unwrap();
        for i in from..from + 15 {
            prop_assert_eq!(pair.predict(i), coeffs[i as usize].clone().into());
        }
        let (cx, gn) = s.pole_orders().unwrap();
        prop_assert_eq!((pair.cx, pair.gn), (cx, gn));
    }

    #[test]
    fn spec_text_round_trips(exps in prop::collection::vec(prop::collection::vec(0u16..3, 3), 1..4)) {
        let p = Prime::new(101).unwrap();
        let gens: Vec<HomogPoly> = exps
            .iter()
            .map(|e| {
                let mut v = e.clone();
                v[0] += 3 - v.iter().sum::<u16>().min(3);
                HomogPoly::monomial(p, Monomial::from_exps(&v))
            })
            .collect();
        let spec = RingSpec::new("R", p, RingSpec::numbered_vars("x", 3), gens).unwrap();
        prop_assert_eq!(parse_ring_spec(&spec.to_string()).unwrap(), spec);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `dim (B/I)_j + dim I_j = dim B_j`, and the alternating sum of the
    /// Betti table of `B/I` over `B` is `(1 - t)^e` times its Hilbert series.
    #[test]
    fn hilbert_function_and_euler_characteristic(
        exps in prop::collection::vec(prop::collection::vec(0u16..4, 3), 1..4),
    ) {
        let p = Prime::new(32003).unwrap();
        let e = 3;
        let gens: Vec<HomogPoly> = exps
            .iter()
            .filter(|v| v.iter().sum::<u16>() > 0)
            .map(|v| HomogPoly::monomial(p, Monomial::from_exps(v)))
            .collect();
        prop_assume!(!gens.is_empty());
        let spec = RingSpec::new("A", p, RingSpec::numbered_vars("x", e), gens.clone()).unwrap();
        let a = Algebra::new(spec.clone());
        let jmax = 14;
        for j in 0..=jmax {
            prop_assert_eq!(a.dim(j) as u64 + a.ideal_rank(j) as u64, count_monomials(e, j));
        }
        let b = Algebra::new(RingSpec::polynomial_ring("B", p, spec.vars().to_vec()));
        let t = minimal_betti_table(&b, &gens, e + 1, jmax).unwrap();
        prop_assume!(t.is_complete());
        let hs: Vec<i64> = (0..=jmax).map(|j| a.dim(j) as i64).collect();
        let times = &BiPoly::from_z_coeffs(&hs) * &BiPoly::from_z_coeffs(&[1, -1]).pow(e as u32);
        for j in 0..=jmax {
            let alt: i64 = (0..=e + 1).map(|i| if i % 2 == 0 { 1 } else { -1 } * t.get(i, j) as i64).sum();
            prop_assert_eq!(BigInt::from(alt), times.coeff(0, j));
        }
    }
}
