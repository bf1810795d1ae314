//! Generators for the system families the tests and benches sweep over.
//! Every generator routes its output through full model validation, so a
//! construction bug surfaces as an error here rather than as a wrong verdict
//! later.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{FiniteSystem, ModelError};

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("family needs at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("need at least two cycles, got {got}")]
    TooFewCycles { got: usize },
    #[error("cycle sizes must be positive")]
    EmptyCycle,
    #[error("separation {separation} is below the largest cycle diameter {required}")]
    SeparationTooSmall { separation: u64, required: u64 },
    #[error("scale must be positive")]
    ZeroScale,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("generated table failed validation: {0}")]
    Construction(#[from] ModelError),
}

/// Metric profile for a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationMetric {
    /// Shortest way around the cycle: d(i, j) = min(|i-j|, q - |i-j|) * scale.
    Arc,
    /// Concave profile over the arc distance k: d = k * (2q - k) * scale.
    /// Mimics a chord length's shape while staying in exact integers; being
    /// increasing and subadditive in k it inherits the triangle inequality,
    /// and construction validates that anyway.
    Chordlike,
}

/// The rotation i -> i + 1 (mod q).
pub fn cyclic_rotation(
    q: usize,
    metric: RotationMetric,
    scale: u64,
) -> Result<FiniteSystem, ZooError> {
    if q == 0 {
        return Err(ZooError::TooFewPoints { min: 1, got: 0 });
    }
    if scale == 0 {
        return Err(ZooError::ZeroScale);
    }
    let arc = |i: usize, j: usize| -> u64 {
        let d = (i as i64 - j as i64).unsigned_abs();
        d.min(q as u64 - d)
    };
    let dist: Vec<Vec<u64>> = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| {
                    let k = arc(i, j);
                    match metric {
                        RotationMetric::Arc => k * scale,
                        RotationMetric::Chordlike => k * (2 * q as u64 - k) * scale,
                    }
                })
                .collect()
        })
        .collect();
    let map = (0..q).map(|i| (i + 1) % q).collect();
    Ok(FiniteSystem::new(q, None, scale, dist, map)?)
}

/// Interval self-map to discretize on a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    /// x -> r x (1 - x) with rational r.
    Logistic { r_num: i64, r_den: i64 },
    /// x -> 2x on [0, 1/2], 2(1 - x) above.
    Tent,
}

/// Discretizes an interval map on the `n` cell centers (2k+1)/(2n) of [0,1].
/// Images are computed in exact rational arithmetic and sent to the nearest
/// center, ties rounding to the lower index. Metric: |i - j| * scale.
pub fn interval_map_grid(
    kind: IntervalKind,
    n: usize,
    scale: u64,
) -> Result<FiniteSystem, ZooError> {
    if n == 0 {
        return Err(ZooError::TooFewPoints { min: 1, got: 0 });
    }
    if scale == 0 {
        return Err(ZooError::ZeroScale);
    }
    if let IntervalKind::Logistic { r_den: 0, .. } = kind {
        return Err(ZooError::ZeroDenominator);
    }
    let n_i = n as i128;
    let mut map = Vec::with_capacity(n);
    for k in 0..n {
        let x = Ratio::new(2 * k as i128 + 1, 2 * n_i);
        let y: Ratio<i128> = match kind {
            IntervalKind::Logistic { r_num, r_den } => {
                Ratio::new(r_num as i128, r_den as i128) * x * (Ratio::from_integer(1) - x)
            }
            IntervalKind::Tent => {
                if x <= Ratio::new(1, 2) {
                    Ratio::from_integer(2) * x
                } else {
                    Ratio::from_integer(2) * (Ratio::from_integer(1) - x)
                }
            }
        };
        // Cell index of y, with exact cell boundaries tying downward.
        let t = y * n_i;
        let idx = if t.is_integer() {
            // On a boundary: equidistant between centers m-1 and m.
            let m = t.to_integer();
            if m >= 1 {
                m - 1
            } else {
                0
            }
        } else {
            t.floor().to_integer()
        };
        let idx = idx.clamp(0, n_i - 1) as usize;
        map.push(idx);
    }
    let dist: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| (i as i64 - j as i64).unsigned_abs() * scale).collect())
        .collect();
    Ok(FiniteSystem::new(n, None, scale, dist, map)?)
}

/// Metric profile for random systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomMetric {
    /// Line metric |i - j|.
    Line,
    /// Shortest-path closure of a random symmetric weighted complete graph;
    /// valid by construction.
    RandomValid,
}

/// Uniformly random self-map with a seeded generator.
pub fn random_map(n: usize, metric: RandomMetric, seed: u64) -> Result<FiniteSystem, ZooError> {
    if n == 0 {
        return Err(ZooError::TooFewPoints { min: 1, got: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let map: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let dist = match metric {
        RandomMetric::Line => (0..n)
            .map(|i| (0..n).map(|j| (i as i64 - j as i64).unsigned_abs()).collect())
            .collect(),
        RandomMetric::RandomValid => {
            let mut d = vec![vec![0u64; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let w = rng.gen_range(1..=16u64);
                    d[i][j] = w;
                    d[j][i] = w;
                }
            }
            // Floyd-Warshall; weights are positive, so the closure is a metric.
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let via = d[i][k] + d[k][j];
                        if via < d[i][j] {
                            d[i][j] = via;
                        }
                    }
                }
            }
            d
        }
    };
    Ok(FiniteSystem::new(n, None, 1, dist, map)?)
}

/// A self-map over the line metric |i - j| * scale. Handy for exhaustive
/// sweeps over all maps of a given size.
pub fn line_system(map: Vec<usize>, scale: u64) -> Result<FiniteSystem, ZooError> {
    let n = map.len();
    if n == 0 {
        return Err(ZooError::TooFewPoints { min: 1, got: 0 });
    }
    if scale == 0 {
        return Err(ZooError::ZeroScale);
    }
    let dist = (0..n)
        .map(|i| (0..n).map(|j| (i as i64 - j as i64).unsigned_abs() * scale).collect())
        .collect();
    Ok(FiniteSystem::new(n, None, scale, dist, map)?)
}

/// Several disjoint rotation cycles, arc metric inside each cycle and a
/// single flat `separation` between points of different cycles. Separation
/// must dominate every cycle's diameter or the triangle inequality breaks,
/// so that is validated upfront.
pub fn disjoint_attractors(
    cycle_sizes: &[usize],
    separation: u64,
) -> Result<FiniteSystem, ZooError> {
    if cycle_sizes.len() < 2 {
        return Err(ZooError::TooFewCycles { got: cycle_sizes.len() });
    }
    if cycle_sizes.contains(&0) {
        return Err(ZooError::EmptyCycle);
    }
    let arc_diameter = |q: usize| (q / 2) as u64;
    let required = cycle_sizes.iter().map(|&q| arc_diameter(q)).max().unwrap();
    if separation < required.max(1) {
        return Err(ZooError::SeparationTooSmall { separation, required: required.max(1) });
    }
    let n: usize = cycle_sizes.iter().sum();
    let mut block = vec![0usize; n];
    let mut offset = vec![0usize; n];
    let mut map = vec![0usize; n];
    let mut base = 0;
    for (b, &q) in cycle_sizes.iter().enumerate() {
        for i in 0..q {
            block[base + i] = b;
            offset[base + i] = i;
            map[base + i] = base + (i + 1) % q;
        }
        base += q;
    }
    let dist: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0
                    } else if block[i] == block[j] {
                        let q = cycle_sizes[block[i]] as u64;
                        let d = (offset[i] as i64 - offset[j] as i64).unsigned_abs();
                        d.min(q - d)
                    } else {
                        separation
                    }
                })
                .collect()
        })
        .collect();
    Ok(FiniteSystem::new(n, None, 1, dist, map)?)
}
