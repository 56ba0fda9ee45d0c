use mlinv_core::involution::{aluffi_involution, b_from_s, cross_check, s_from_b, s_from_b_via_aluffi};
use mlinv_core::polyring::var_names;
use mlinv_core::{parse_poly, BiPoly, UniPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn bi(s: &str) -> BiPoly {
    BiPoly::from_poly(&parse_poly(s, &var_names(&["p", "u"])).unwrap()).unwrap()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn uni_strategy() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-10_000i64..=10_000, 1i64..=500), 0..=11)
        .prop_map(|c| UniPoly::new(c.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect()))
}

/// `B = sum_i b_i p^(n-i) u^i` with non-negative integer `b_i`, `i <= d <= n`.
fn b_strategy() -> impl Strategy<Value = (BiPoly, u32, u32)> {
    (0u32..=12)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, d)| (Just(n), Just(d), prop::collection::vec(0u64..=10_000, d as usize + 1)))
        .prop_map(|(n, d, b)| {
            let terms = b.iter().enumerate().map(|(i, &c)| ((n - i as u32, i as u32), BigRational::from_integer(BigInt::from(c))));
            (BiPoly::from_terms(terms), n, d)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn aluffi_is_an_involution(p in uni_strategy()) {
        let ip = aluffi_involution(&p).unwrap();
        prop_assert_eq!(aluffi_involution(&ip).unwrap(), p.clone());
        prop_assert_eq!(ip.degree(), p.degree());
    }

    #[test]
    fn b_s_round_trip((b, n, d) in b_strategy()) {
        let s = s_from_b(&b, n, d).unwrap();
        prop_assert!(s.is_homogeneous_of_degree(n) || s.is_zero());
        prop_assert!(s.u_degree() <= d);
        prop_assert_eq!(&b_from_s(&s, n, d).unwrap(), &b);
        prop_assert_eq!(&s_from_b_via_aluffi(&b, n, d).unwrap(), &s);
        prop_assert!(cross_check(&b, &s, n, d).passed());
    }
}

/// `c_SM` of the torus `(C*)^n` in `P^n` by inclusion-exclusion over the
/// coordinate strata: `1_T = sum_S (-1)^|S| 1_{P^(n-|S|)}` and
/// `c(P^m) = sum_i C(m+1, i) [P^(m-i)]`.
fn torus_gamma(n: i64) -> UniPoly {
    let mut c = vec![0i64; n as usize + 1];
    for s in 0..=n + 1 {
        let m = n - s;
        if m < 0 {
            continue;
        }
        let sign = if s % 2 == 0 { 1 } else { -1 };
        for i in 0..=m {
            c[(m - i) as usize] += sign * binom(n + 1, s) * binom(m + 1, i);
        }
    }
    UniPoly::from_ints(&c)
}

/// Euler characteristics of generic linear sections of the torus: a generic
/// `P^m` minus `n+1` generic hyperplanes, again by inclusion-exclusion.
fn torus_chi(n: i64) -> UniPoly {
    let chi_p = |m: i64| if m >= 0 { m + 1 } else { 0 };
    let c: Vec<i64> = (0..=n)
        .map(|j| {
            let m = n - j;
            let e: i64 = (0..=n + 1).map(|s| if s % 2 == 0 { 1 } else { -1 } * binom(n + 1, s) * chi_p(m - s)).sum();
            if j % 2 == 0 { e } else { -e }
        })
        .collect();
    UniPoly::from_ints(&c)
}

#[test]
fn torus_csm_and_sectional_euler_characteristics() {
    // (C*)^2: gamma = t^2, sections have chi = 0, -1, 1
    assert_eq!(torus_gamma(2), UniPoly::from_ints(&[0, 0, 1]));
    assert_eq!(torus_chi(2), UniPoly::from_ints(&[0, 1, 1]));
    for n in 1..=8 {
        let (g, c) = (torus_gamma(n), torus_chi(n));
        assert_eq!(aluffi_involution(&g).unwrap(), c, "n = {n}");
        assert_eq!(aluffi_involution(&c).unwrap(), g, "n = {n}");
    }
}

#[test]
fn examples() {
    assert_eq!(aluffi_involution(&UniPoly::from_ints(&[1, 2, 3])).unwrap(), UniPoly::from_ints(&[1, 1, 3]));
    assert_eq!(aluffi_involution(&UniPoly::from_ints(&[7])).unwrap(), UniPoly::from_ints(&[7]));
    let half = UniPoly::new(vec![int(1) / int(2), int(-3) / int(4)]);
    assert_eq!(aluffi_involution(&aluffi_involution(&half).unwrap()).unwrap(), half);
    for n in 0..6 {
        let point = BiPoly::from_terms([((n, 0), int(1))]);
        assert_eq!(s_from_b(&point, n, 0).unwrap(), point);
        assert_eq!(b_from_s(&point, n, 0).unwrap(), point);
    }
}

/// Published bidegree and sectional pairs. The first cubic row is listed with
/// b0 = 19; the computed value is 20, and the pair is consistent either way
/// because s_1..s_d do not depend on b_0.
const CUBIC_PAIRS: [(&str, &str); 6] = [
    ("19*p^4+15*p^3*u+9*p^2*u^2+3*p*u^3", "19*p^4+27*p^3*u+15*p^2*u^2+3*p*u^3"),
    ("11*p^4+12*p^3*u+9*p^2*u^2+3*p*u^3", "11*p^4+24*p^3*u+15*p^2*u^2+3*p*u^3"),
    ("6*p^4+6*p^3*u+6*p^2*u^2+3*p*u^3", "6*p^4+15*p^3*u+12*p^2*u^2+3*p*u^3"),
    ("6*p^4+8*p^3*u+7*p^2*u^2+3*p*u^3", "6*p^4+18*p^3*u+13*p^2*u^2+3*p*u^3"),
    ("5*p^4+7*p^3*u+7*p^2*u^2+3*p*u^3", "5*p^4+17*p^3*u+13*p^2*u^2+3*p*u^3"),
    ("5*p^4+5*p^3*u+5*p^2*u^2+3*p*u^3", "5*p^4+13*p^3*u+11*p^2*u^2+3*p*u^3"),
];

const TENSOR_PAIRS: [(&str, &str, u32, u32); 3] = [
    ("p^3+2*p^2*u+2*p*u^2", "p^3+4*p^2*u+2*p*u^2", 3, 2),
    ("p^7+3*p^6*u+6*p^5*u^2+6*p^4*u^3", "p^7+15*p^6*u+18*p^5*u^2+6*p^4*u^3", 7, 3),
    (
        "p^15+4*p^14*u+12*p^13*u^2+24*p^12*u^3+24*p^11*u^4",
        "p^15+64*p^14*u+132*p^13*u^2+96*p^12*u^3+24*p^11*u^4",
        15,
        4,
    ),
];

#[test]
fn published_pairs_cross_check() {
    for (b, s) in CUBIC_PAIRS {
        let r = cross_check(&bi(b), &bi(s), 4, 3);
        assert!(r.passed(), "{r:?}");
    }
    for (b, s, n, d) in TENSOR_PAIRS {
        let r = cross_check(&bi(b), &bi(s), n, d);
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn perturbed_pairs_fail() {
    for (b, s) in CUBIC_PAIRS {
        let b = bi(b);
        let bumped = BiPoly::from_terms(b.terms().map(|(&e, c)| (e, if e == (3, 1) { c + int(1) } else { c.clone() })));
        assert!(!cross_check(&bumped, &bi(s), 4, 3).passed());
    }
}
