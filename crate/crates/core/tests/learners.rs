use proptest::prelude::*;
use rootnot::classical::{learn_classical_from, ClassicalConfig};
use rootnot::merit::{classical_merit, classical_merit_mc, quantum_merit};
use rootnot::quantum::{learn_quantum_from, QuantumConfig};
use rootnot::{stream, ClassicalMachine, EulerAngles, TeacherSchedule, UpdateGains, WalkWidths};

fn random_trajectory(n: usize, len: usize, seed: u64) -> Vec<usize> {
    use rand::Rng;
    let mut rng = stream(seed);
    (0..len).map(|_| rng.random_range(0..n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_merit_matches_monte_carlo(seed in 0u64..1_000, k in prop::sample::select(vec![2usize, 4]), n in 1usize..8) {
        let mut rng = stream(seed);
        let m = ClassicalMachine::random(k, &mut rng).unwrap();
        let exact = classical_merit(&m, n);
        let mc = classical_merit_mc(&m, n, 40_000, &mut rng);
        prop_assert!((exact - mc).abs() < 0.0101, "exact {} mc {}", exact, mc);
    }

    #[test]
    fn updates_keep_rows_stochastic(seed in 0u64..1_000, ks in 0.0f64..=1.0, kf in 0.0f64..=1.0) {
        let mut m = ClassicalMachine::random(4, &mut stream(seed)).unwrap();
        for i in 0..50 {
            let traj = random_trajectory(8, 5, seed * 100 + i);
            if i % 3 == 0 { m.punish(&traj, kf) } else { m.reinforce(&traj, ks) }
            prop_assert!(m.max_row_deviation() < 1e-9);
            prop_assert!((0..8).all(|r| m.row(r).iter().all(|&p| p >= 0.0)));
        }
    }

    #[test]
    fn reinforcing_disjoint_rows_commutes(seed in 0u64..1_000) {
        let base = ClassicalMachine::random(2, &mut stream(seed)).unwrap();
        let mut b = base.clone();
        b.reinforce(&[3, 2, 0], 0.4);
        b.reinforce(&[0, 1, 3], 0.4);
        let mut c = base.clone();
        c.reinforce(&[0, 1, 3], 0.4);
        c.reinforce(&[3, 2, 0], 0.4);
        for r in 0..4 {
            for (x, y) in b.row(r).iter().zip(c.row(r)) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quantum_merits_are_probabilities(seed in 0u64..10_000, k in prop::sample::select(vec![1usize, 2, 4, 8]), n in 1usize..30) {
        let u = EulerAngles::haar_random(&mut stream(seed)).to_unitary();
        let p = quantum_merit(&u, k, n);
        prop_assert!((0.0..=1.0).contains(&p));
    }
}

#[test]
fn quantum_learner_stays_near_exact_root() {
    // ties are accepted, so the walk drifts, but only by about its width
    let config = QuantumConfig {
        k: 4,
        widths: WalkWidths::new(1e-4, 1e-4).unwrap(),
        schedule: TeacherSchedule::Fixed(200),
        budget: 200,
        log_interval: 50,
        orders: vec![1, 10],
    };
    let s = learn_quantum_from(&config, EulerAngles::exact_root(4).unwrap(), 9).unwrap();
    assert!(s.final_value(10).unwrap() > 0.99);
}

#[test]
fn perfect_loop_survives_classical_training() {
    let config = ClassicalConfig {
        k: 4,
        gains: UpdateGains::new(0.5, 0.5).unwrap(),
        budget: 2_000,
        log_interval: 500,
        orders: vec![1, 10],
    };
    let s = learn_classical_from(&config, ClassicalMachine::perfect_loop(4).unwrap(), 1).unwrap();
    assert_eq!(s.points.len(), 5);
    assert!(s.points.iter().all(|p| (p.values[&10] - 1.0).abs() < 1e-12));
}

#[test]
fn classical_k2_learns_with_default_gains() {
    let config = ClassicalConfig {
        k: 2,
        gains: UpdateGains::new(0.25, 0.25).unwrap(),
        budget: 20_000,
        log_interval: 20_000,
        orders: vec![10],
    };
    let good = (1..=10)
        .filter(|&seed| {
            rootnot::classical::learn_classical(&config, seed)
                .unwrap()
                .final_value(10)
                .unwrap()
                > 0.9
        })
        .count();
    assert!(good >= 8, "only {good}/10 seeds learned");
}
