use mlinv_core::homotopy::{bezout_bound, track_all, SquareSystem, TrackerConfig};
use mlinv_core::polyring::{Draws, Poly};
use mlinv_core::RandomSource;

fn dense(vars: &[String], deg: u32, d: &mut Draws) -> Poly {
    let n = vars.len();
    let mut terms = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if e.iter().sum::<u32>() <= deg {
            terms.push((e.clone(), d.nonzero_rational()));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Poly::from_terms(vars, terms);
            }
            e[i] += 1;
            if e[i] <= deg {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn random_system(degs: &[u32], seed: u64) -> SquareSystem {
    let vars: Vec<String> = (1..=degs.len()).map(|i| format!("x{i}")).collect();
    let mut d = RandomSource::new(seed, 99).draws();
    let polys = degs.iter().map(|&k| dense(&vars, k, &mut d)).collect();
    SquareSystem::new(polys, vars).unwrap()
}

#[test]
fn bezout_suite() {
    let profiles: [&[u32]; 4] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2]];
    let cfg = TrackerConfig::default();
    for k in 0..50u64 {
        let degs = profiles[k as usize % 4];
        let s = random_system(degs, k);
        let set = track_all(&s, &cfg, RandomSource::new(1000 + k, 0)).unwrap();
        assert_eq!(set.counts.nonsingular as u128, bezout_bound(&s), "system {k}, degrees {degs:?}: {:?}", set.counts);
        for sol in set.nonsingular() {
            assert!(s.relative_residual(&sol.point) < cfg.final_tol);
        }
    }
}

#[test]
fn report_independent_of_thread_count() {
    let s = random_system(&[2, 2, 2], 7);
    let cfg = TrackerConfig::default();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| track_all(&s, &cfg, RandomSource::new(5, 0)).unwrap())
    };
    let one = run(1);
    for threads in [2, 8] {
        assert_eq!(format!("{:?}", run(threads)), format!("{one:?}"));
    }
}
