use mlinv_core::degrees::{master_bidegrees, ml_bidegrees, sectional_ml_degrees};
use mlinv_core::likelihood::{
    add_slices, build_likelihood_critical, build_master_critical, ModelSpec, SliceMode, Verdict,
};
use mlinv_core::polyring::eval_complex;
use mlinv_core::RandomSource;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

fn qs(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

fn independence() -> ModelSpec {
    ModelSpec::parse(&["x1", "x2", "x3"], &["(1 - x1 - x2 - x3)*x3 - x1*x2"], 2).unwrap()
}

fn cubic() -> ModelSpec {
    ModelSpec::parse(&["x1", "x2", "x3", "x4"], &["(1 - x1)^3 - (x1 + x2 + x3 + x4)^2"], 3).unwrap()
}

fn line() -> ModelSpec {
    ModelSpec::parse(&["x1", "x2"], &["x1 + x2 - 1"], 1).unwrap()
}

/// x-parts of the valid solutions.
fn critical_x(model: &ModelSpec, u: &[BigRational], seed: u64) -> Vec<Vec<Complex64>> {
    let p = build_likelihood_critical(model, u).unwrap();
    p.count(RandomSource::new(seed, 0)).unwrap().solutions.into_iter().map(|s| s[..model.n()].to_vec()).collect()
}

fn close(x: &[Complex64], y: &[Complex64]) -> bool {
    x.iter().zip(y).all(|(p, q)| (p - q).norm() <= 1e-8 * (1.0 + p.norm()))
}

#[test]
fn systems_are_square() {
    for model in [independence(), cubic(), line()] {
        let n = model.n();
        let u = qs(&(1..=n as i64 + 1).map(|i| 2 * i + 1).collect::<Vec<_>>());
        let p = build_likelihood_critical(&model, &u).unwrap();
        let w = build_master_critical(&model, &u[1..]).unwrap();
        let r = RandomSource::new(3, 0);
        for base in [&p, &w] {
            assert_eq!(base.system().polys().len(), base.system().size());
            for i in 0..=model.dim() {
                let b = add_slices(base, SliceMode::Bidegree, i, i, r).unwrap();
                assert_eq!(b.system().polys().len(), b.system().size());
                let s = add_slices(base, SliceMode::Sectional, i, 0, r).unwrap();
                assert_eq!(s.system().polys().len(), s.system().size());
                assert_eq!(s.num_multipliers(), model.codim() + i);
            }
        }
    }
}

#[test]
fn critical_points_do_not_depend_on_the_scale_of_u() {
    let model = cubic();
    let u = qs(&[3, 5, 7, 11, 13]);
    let u2: Vec<BigRational> = u.iter().map(|x| x * BigRational::from_integer(2.into())).collect();
    let a = critical_x(&model, &u, 0);
    let b = critical_x(&model, &u2, 1);
    assert_eq!(a.len(), 5);
    assert_eq!(a.len(), b.len());
    let mut unmatched = b;
    for x in &a {
        let k = unmatched.iter().position(|y| close(x, y)).unwrap_or_else(|| panic!("{x:?} has no partner"));
        unmatched.swap_remove(k);
    }
}

#[test]
fn valid_solutions_satisfy_the_predicates() {
    let model = cubic();
    let tol = &model.tolerances;
    let p = build_likelihood_critical(&model, &qs(&[2, 3, 5, 7, 11])).unwrap();
    let validity = p.validity();
    let out = p.count(RandomSource::new(4, 0)).unwrap();
    assert_eq!(out.count, 5);
    for s in &out.solutions {
        assert_eq!(validity.check(s), Verdict::Valid);
        let x = &s[..model.n()];
        for g in model.generators() {
            let scale: f64 = g.terms().map(|(_, c)| c.to_f64().unwrap().abs()).sum();
            assert!(eval_complex(g, x).unwrap().norm() < tol.residual * scale.max(1.0));
        }
        assert!(x.iter().all(|z| z.norm() > tol.torus));
        let x0 = x.iter().fold(Complex64::new(1.0, 0.0), |acc, z| acc - z);
        assert!(x0.norm() > tol.torus);
        assert_eq!(validity.rank_at(x), model.codim());
    }
}

#[test]
fn closed_form_on_the_torus_line() {
    let m = ModelSpec::parse::<&str>(&["x1"], &[], 1).unwrap();
    for (u0, u1) in [(2i64, 3i64), (7, -4), (1, 10)] {
        let out = build_likelihood_critical(&m, &qs(&[u0, u1])).unwrap().count(RandomSource::new(0, 0)).unwrap();
        assert_eq!(out.count, 1);
        let expected = u1 as f64 / (u0 + u1) as f64;
        assert!((out.solutions[0][0] - Complex64::new(expected, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn independence_model_has_ml_degree_one() {
    let out = build_likelihood_critical(&independence(), &qs(&[3, 5, 7, 11])).unwrap().count(RandomSource::new(1, 0));
    assert_eq!(out.unwrap().count, 1);
    assert_eq!(ml_bidegrees(&independence(), 2).unwrap(), vec![1, 2, 2]);
    assert_eq!(sectional_ml_degrees(&independence(), 2).unwrap(), vec![1, 4, 2]);
}

#[test]
fn master_counts_of_torus_and_point() {
    let torus = ModelSpec::parse::<&str>(&["x1", "x2", "x3"], &[], 3).unwrap();
    let p = build_master_critical(&torus, &qs(&[2, 3, 5])).unwrap();
    assert_eq!(p.count(RandomSource::new(0, 0)).unwrap().count, 0);
    let point = ModelSpec::parse(&["x1", "x2"], &["5*x1 - 1", "3*x2 - 1"], 0).unwrap();
    let p = build_master_critical(&point, &qs(&[4, -9])).unwrap();
    let out = p.count(RandomSource::new(0, 0)).unwrap();
    assert_eq!(out.count, 1);
    assert!((out.solutions[0][0] - Complex64::new(0.2, 0.0)).norm() < 1e-12);
}

/// Exact solution of a 2x2 rational system `[a b; c d] z = (e, f)`.
fn solve2(a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational, e: &BigRational, f: &BigRational)
    -> Option<(BigRational, BigRational)> {
    let det = a * d - b * c;
    if det.is_zero() {
        return None;
    }
    Some(((e * d - b * f) / &det, (a * f - e * c) / &det))
}

/// Master bidegrees of `x1 + x2 = 1` against elimination by hand.
///
/// v0: `w1/x1 = w2/x2` with `x2 = 1 - x1` gives the single point
/// `x1 = w1/(w1 + w2)`. v1: an affine slice `a1 x1 + a2 x2 = b` fixes one
/// point `x*` of the line, and `w(s) = w0 + s w' = lambda x*` is a linear
/// system in `(s, lambda)` with one solution.
#[test]
fn master_line_matches_elimination() {
    let model = line();
    let w = qs(&[5, -7]);
    let out = build_master_critical(&model, &w).unwrap().count(RandomSource::new(0, 0)).unwrap();
    assert_eq!(out.count, 1);
    let x1 = (&w[0] / (&w[0] + &w[1])).to_f64().unwrap();
    assert!((out.solutions[0][0] - Complex64::new(x1, 0.0)).norm() < 1e-10);

    let one = BigRational::from_integer(1.into());
    let (a1, a2, b) = (qs(&[3])[0].clone(), qs(&[-2])[0].clone(), qs(&[4])[0].clone());
    let (xs1, xs2) = solve2(&one, &one, &a1, &a2, &one, &b).unwrap();
    let dir = qs(&[11, 13]);
    // w0_i + s dir_i - lambda x*_i = 0
    let (_s, lambda) = solve2(&dir[0], &(-&xs1), &dir[1], &(-&xs2), &(-&w[0]), &(-&w[1])).unwrap();
    assert!(!lambda.is_zero());
    assert_eq!(master_bidegrees(&model, 3).unwrap().v, vec![1, 1]);
}
