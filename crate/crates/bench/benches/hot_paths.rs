use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pubench_core::checks::brute_force_auc;
use pubench_core::data::{make_ts_pu, GaussianMixtureSpec};
use pubench_core::metrics;
use pubench_core::model::{Architecture, Classifier, LossKind, OptimizerState};
use pubench_core::risk::{train_ts, upu_risk, EstimatorKind, RiskBatch, TrainSchedule};

fn tie_heavy_scores(n: usize, seed: u64) -> (Vec<f64>, Vec<i8>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scores: Vec<f64> = (0..n).map(|_| rng.random_range(-8i32..9) as f64).collect();
    let mut labels: Vec<i8> = (0..n)
        .map(|_| if rng.random_bool(0.4) { 1 } else { -1 })
        .collect();
    labels[0] = 1;
    labels[n - 1] = -1;
    (scores, labels)
}

fn bench_auc(c: &mut Criterion) {
    let (scores, labels) = tie_heavy_scores(2000, 7);
    let scores_arr = ndarray::Array1::from_vec(scores.clone());
    let labels_arr = ndarray::Array1::from_vec(labels.clone());
    let mut group = c.benchmark_group("auc");
    group.bench_function("midrank_2000", |b| {
        b.iter(|| metrics::auc(scores_arr.view(), labels_arr.view()).unwrap())
    });
    group.bench_function("pairwise_2000", |b| {
        b.iter(|| brute_force_auc(&scores, &labels))
    });
    group.finish();
}

fn bench_risk_evaluation(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = Array2::from_shape_fn((200, 8), |_| rng.random_range(-2.0..2.0));
    let u = Array2::from_shape_fn((2000, 8), |_| rng.random_range(-2.0..2.0));
    let clf = Classifier::init_random(Architecture::Mlp { dim: 8, hidden: 16 }, &mut rng).unwrap();
    let batch = RiskBatch::new(p.view(), u.view(), 0.4, None).unwrap();
    c.bench_function("upu_risk_mlp_200p_2000u", |b| {
        b.iter(|| upu_risk(&batch, &clf, LossKind::Logistic).unwrap())
    });
}

fn bench_training(c: &mut Criterion) {
    let spec =
        GaussianMixtureSpec::new(vec![1.0, 0.0], vec![-1.0, 0.0], 1.0, 1.0, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let pu = make_ts_pu(&spec, 100, 400, &mut rng).unwrap();
    let schedule = TrainSchedule {
        iterations: 100,
        batch_p: 32,
        batch_u: 32,
        eval_every: 0,
    };
    c.bench_function("train_nnpu_100_iters", |b| {
        b.iter_batched(
            || {
                let mut rng = ChaCha8Rng::seed_from_u64(17);
                let clf = Classifier::init_random(Architecture::Linear { dim: 2 }, &mut rng)
                    .unwrap();
                let opt = OptimizerState::new(1e-3, 0.9, 0.0, 3).unwrap();
                (clf, opt, rng)
            },
            |(clf, opt, mut rng)| {
                train_ts(
                    EstimatorKind::nnpu(0.0),
                    &pu,
                    clf,
                    opt,
                    LossKind::Logistic,
                    &schedule,
                    &mut rng,
                    |_, _| {},
                )
                .unwrap()
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench_auc, bench_risk_evaluation, bench_training);
criterion_main!(benches);
