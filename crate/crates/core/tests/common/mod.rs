//! Shared catalogs of generated systems, sized by point count, plus a lock
//! that serializes the wall-clock-budgeted suites (cargo runs tests in
//! parallel, and the budgets assume the machine to themselves).

use std::sync::{Mutex, MutexGuard, PoisonError};

use pseudotrap_core::zoo::{
    cyclic_rotation, disjoint_attractors, interval_map_grid, random_map, IntervalKind,
    RandomMetric, RotationMetric,
};
use pseudotrap_core::FiniteSystem;

pub static SWEEP: Mutex<()> = Mutex::new(());

pub fn timed() -> MutexGuard<'static, ()> {
    SWEEP.lock().unwrap_or_else(PoisonError::into_inner)
}

pub type Named = (String, FiniteSystem);

fn named(name: impl Into<String>, s: FiniteSystem) -> Named {
    (name.into(), s)
}

/// Everything at N <= 8: the oracle-equivalence envelope.
pub fn zoo_small() -> Vec<Named> {
    let mut out = Vec::new();
    for q in 1..=8 {
        out.push(named(format!("rotation-{q}-arc"), cyclic_rotation(q, RotationMetric::Arc, 1).unwrap()));
    }
    for q in [3, 5, 8] {
        out.push(named(
            format!("rotation-{q}-chordlike"),
            cyclic_rotation(q, RotationMetric::Chordlike, 1).unwrap(),
        ));
    }
    for (sizes, sep) in [(vec![1, 1], 10), (vec![2, 1], 4), (vec![2, 2], 5), (vec![3, 1], 3)] {
        out.push(named(
            format!("attractors-{sizes:?}-{sep}"),
            disjoint_attractors(&sizes, sep).unwrap(),
        ));
    }
    for seed in 0..20u64 {
        let n = 2 + (seed as usize) % 7;
        let metric = if seed % 4 == 3 { RandomMetric::RandomValid } else { RandomMetric::Line };
        out.push(named(format!("random-{n}-seed{seed}"), random_map(n, metric, seed).unwrap()));
    }
    for grid in 2..=8 {
        out.push(named(
            format!("tent-{grid}"),
            interval_map_grid(IntervalKind::Tent, grid, 2).unwrap(),
        ));
        out.push(named(
            format!("logistic4-{grid}"),
            interval_map_grid(IntervalKind::Logistic { r_num: 4, r_den: 1 }, grid, 2).unwrap(),
        ));
    }
    out
}

/// Medium catalog, N <= 32.
pub fn zoo_mid() -> Vec<Named> {
    let mut out = zoo_small();
    for q in [12, 17, 32] {
        out.push(named(format!("rotation-{q}-arc"), cyclic_rotation(q, RotationMetric::Arc, 1).unwrap()));
    }
    out.push(named(
        "rotation-11-chordlike".to_string(),
        cyclic_rotation(11, RotationMetric::Chordlike, 1).unwrap(),
    ));
    out.push(named("attractors-[4,3]-4".to_string(), disjoint_attractors(&[4, 3], 4).unwrap()));
    out.push(named("attractors-[8,8]-4".to_string(), disjoint_attractors(&[8, 8], 4).unwrap()));
    for seed in [31u64, 32] {
        out.push(named(
            format!("random-24-seed{seed}"),
            random_map(24, RandomMetric::Line, seed).unwrap(),
        ));
    }
    out.push(named(
        "random-10-valid-seed9".to_string(),
        random_map(10, RandomMetric::RandomValid, 9).unwrap(),
    ));
    out.push(named(
        "logistic4-20".to_string(),
        interval_map_grid(IntervalKind::Logistic { r_num: 4, r_den: 1 }, 20, 2).unwrap(),
    ));
    out.push(named("tent-32".to_string(), interval_map_grid(IntervalKind::Tent, 32, 2).unwrap()));
    out
}

/// Large catalog, N <= 64. Metrics stay low-diversity on purpose: threshold
/// grids grow with the number of distinct distances, and the budgeted
/// sweeps iterate eps x delta.
pub fn zoo_large() -> Vec<Named> {
    let mut out = zoo_mid();
    for q in [48, 64] {
        out.push(named(format!("rotation-{q}-arc"), cyclic_rotation(q, RotationMetric::Arc, 1).unwrap()));
    }
    out.push(named(
        "attractors-[16,16,16]-8".to_string(),
        disjoint_attractors(&[16, 16, 16], 8).unwrap(),
    ));
    out.push(named(
        "random-64-seed5".to_string(),
        random_map(64, RandomMetric::Line, 5).unwrap(),
    ));
    out.push(named(
        "logistic4-64".to_string(),
        interval_map_grid(IntervalKind::Logistic { r_num: 4, r_den: 1 }, 64, 2).unwrap(),
    ));
    out.push(named("tent-57".to_string(), interval_map_grid(IntervalKind::Tent, 57, 2).unwrap()));
    out
}
