mod common;

use mvsmcts::design_space::{
    continuous_candidates, discrete_window, range_schedule, width_schedule_continuous, width_schedule_discrete,
};
use mvsmcts::mcts::{run_round, RoundSettings, SearchTree, ROOT};
use mvsmcts::model::{total_weight, Limits, LoadCase, Material, Member, Node, Support, TrussData};
use mvsmcts::optimizer::{InfeasiblePolicy, RewardFn};
use mvsmcts::{
    AccelKind, DesignVector, Domain, Evaluation, Expansion, RewardMode, RoundContext, ScheduleConstants, TrussProblem,
    VariableSet, VariableSpec,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kinds() -> impl Strategy<Value = AccelKind> {
    prop_oneof![Just(AccelKind::None), Just(AccelKind::Geometric), Just(AccelKind::Linear), Just(AccelKind::Step)]
}

proptest! {
    #[test]
    fn schedules_never_grow(kind in kinds(), lo in -50.0..50.0f64, span in 0.01..5000.0f64, g in 1usize..80, b in 1usize..200) {
        let c = ScheduleConstants::default();
        for role in [&c.sizing, &c.shape] {
            let mut prev = (f64::INFINITY, usize::MAX, usize::MAX);
            for p in 1..=60 {
                let xi = range_schedule(kind, p, lo, lo + span, role);
                let kappa = width_schedule_continuous(kind, p, g, role);
                let beta = width_schedule_discrete(kind, p, b, role);
                prop_assert!(xi > 0.0 && xi <= prev.0);
                prop_assert!(kappa >= 3 && kappa <= prev.1);
                prop_assert!(beta >= 3 && beta % 2 == 1 && beta <= prev.2);
                if kind == AccelKind::None {
                    prop_assert_eq!(xi, (lo + span) - lo);
                }
                prev = (xi, kappa, beta);
            }
        }
    }

    #[test]
    fn candidates_are_a_sorted_mesh(center in 0.0..100.0f64, xi in 0.001..300.0f64, count in 2usize..40, a in 0.0..=1.0f64) {
        let (lo, hi) = (0.0, 100.0);
        let v = continuous_candidates(center, xi, count, a, lo, hi);
        prop_assert!(v.iter().all(|x| (lo..=hi).contains(x)));
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        if v.len() > 1 {
            prop_assert_eq!(v.len(), count);
            prop_assert_eq!(v[0], (center - a * xi).max(lo));
            prop_assert_eq!(v[count - 1], (center + (1.0 - a) * xi).min(hi));
        }
    }

    #[test]
    fn centred_mesh_contains_the_centre(center in 20.0..80.0f64, xi in 0.001..30.0f64, half in 1usize..10) {
        let v = continuous_candidates(center, xi, 2 * half + 1, 0.5, 0.0, 100.0);
        prop_assert!((v[half] - center).abs() <= 1e-9 * center);
    }

    #[test]
    fn window_keeps_length_and_current(len in 1usize..60, at in 0usize..60, beta in 1usize..70) {
        let list: Vec<f64> = (0..len).map(|i| i as f64 * 0.5 + 1.0).collect();
        let current = list[at % len];
        let w = discrete_window(&list, current, beta).unwrap();
        prop_assert_eq!(w.len(), beta.min(len));
        prop_assert!(w.contains(&current));
        prop_assert!(w.windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn weight_is_linear_in_area(a in 1.0..5000.0f64, k in 0.1..10.0f64, shift in -20.0..20.0f64) {
        let (p, v) = shared_group_pair([0.0, 0.0, 0.0]);
        let w1 = total_weight(&p, &v, &DesignVector::determined(vec![a], vec![])).unwrap();
        let wk = total_weight(&p, &v, &DesignVector::determined(vec![k * a], vec![])).unwrap();
        prop_assert!((wk - k * w1).abs() <= 1e-12 * wk);
        // Two identical members in one group weigh twice one member.
        let single = 7860.0 * 2.5 * a * 1e-6;
        prop_assert!((w1 - 2.0 * single).abs() <= 1e-12 * w1);
        let (q, u) = shared_group_pair([shift, -shift, 0.5 * shift]);
        let moved = total_weight(&q, &u, &DesignVector::determined(vec![a], vec![])).unwrap();
        prop_assert!((moved - w1).abs() <= 1e-9 * w1);
    }

    #[test]
    fn best_backprop_never_decreases(rewards in prop::collection::vec(0.0..1.0f64, 1..60)) {
        let mut tree = SearchTree::new(vec![3, 3]);
        let mut last = vec![f64::NEG_INFINITY; 1];
        for g in rewards {
            let path = tree.select_and_expand(ROOT, 1.0);
            tree.backpropagate(&path, g, RewardMode::Best);
            let v = tree.node(ROOT).value;
            prop_assert!(v >= last[0]);
            last[0] = v;
        }
    }

    #[test]
    fn alpha_scaling_keeps_every_decision(seed in 0u64..500, alpha in 100.0..5000.0f64, k in 0.2..20.0f64) {
        let (_, vars) = common::toy_mixed();
        let start = mvsmcts::design_space::initial_design(&vars);
        let ctx = RoundContext::build(&vars, &start, 1, AccelKind::Geometric, &ScheduleConstants::default(), Expansion::default()).unwrap();
        let settings = |a: f64| RoundSettings {
            exploration: 0.0,
            j_mvs: 4,
            mode: RewardMode::Best,
            reward: RewardFn { alpha: a, infeasible: InfeasiblePolicy::Zero },
        };
        let run = |a: f64| {
            let mut eval = |d: &DesignVector| common::toy_evaluation(d);
            run_round(&ctx, &start, &mut eval, settings(a), &mut ChaCha8Rng::seed_from_u64(seed)).design
        };
        prop_assert_eq!(run(alpha), run(k * alpha));
    }

    #[test]
    fn rewards_fall_with_weight(alpha in 1.0..100.0f64, w in 1.0..1000.0f64, dw in 0.001..100.0f64) {
        let f = RewardFn { alpha, infeasible: InfeasiblePolicy::Zero };
        let e = |weight| Evaluation { weight, feasible: true, max_ratio: 0.5 };
        prop_assert!(f.reward(&e(w)) > f.reward(&e(w + dw)));
        prop_assert_eq!(f.reward(&Evaluation { feasible: false, ..e(w) }), 0.0);
    }
}

/// Two 2.5 m bars in one group, translated by `t`.
fn shared_group_pair(t: [f64; 3]) -> (TrussProblem, VariableSet) {
    let at = |x: f64, y: f64| [x + t[0], y + t[1], t[2]];
    let p = TrussProblem::new(TrussData {
        name: "pair".into(),
        notes: vec![],
        nodes: vec![
            Node { id: 1, position: at(0.0, 0.0) },
            Node { id: 2, position: at(1.5, 2.0) },
            Node { id: 3, position: at(3.0, 0.0) },
        ],
        members: vec![Member { id: 1, start: 1, end: 2, group: 1 }, Member { id: 2, start: 2, end: 3, group: 1 }],
        supports: vec![Support { node: 1, fixed: [true; 3] }, Support { node: 3, fixed: [true; 3] }],
        load_cases: vec![LoadCase { id: 1, loads: vec![] }],
        material: Material { density: 7860.0, elastic_modulus: 200.0 },
        limits: Limits::symmetric(100.0, 10.0),
    })
    .unwrap();
    let v = VariableSet::bind(&p, vec![VariableSpec::sizing("A", 1, Domain::Continuous { lo: 0.1, hi: 1e4 })]).unwrap();
    (p, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fem_is_linear_in_areas(k in 0.1..10.0f64, a in 100.0..2000.0f64) {
        let b = mvsmcts::build_benchmark(mvsmcts::BenchmarkId::TwentyFiveBarContinuous);
        let s = mvsmcts::Structure::new(&b.problem);
        let coords = b.problem.base_coordinates();
        let areas = vec![a * 1e-6; b.problem.members().len()];
        let scaled: Vec<f64> = areas.iter().map(|x| x * k).collect();
        let r0 = s.analyze(&coords, &areas).unwrap();
        let r1 = s.analyze(&coords, &scaled).unwrap();
        for (c0, c1) in r0.iter().zip(&r1) {
            let scale = c0.u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for (u0, u1) in c0.u.iter().zip(&c1.u) {
                prop_assert!((u0 - k * u1).abs() <= 1e-9 * scale);
            }
        }
    }
}
