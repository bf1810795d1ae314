//! Orbits, eventual cycles, minimality, Hausdorff distance, and the horizons
//! at which forward orbits capture a cycle inside a union of balls.

use thiserror::Error;

use crate::model::{FiniteSystem, PointSet, Walk};

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("point index {index} out of range for {n} points")]
    PointRange { index: usize, n: usize },
    #[error("Hausdorff distance needs nonempty sets")]
    EmptyPointSet,
    #[error("threshold must be positive: a strict ball of radius 0 is empty")]
    ZeroThreshold,
    #[error("set is over {got} points, expected {expected}")]
    UniverseMismatch { got: usize, expected: usize },
}

/// The eventual cycle of a point: the set itself, how many steps the point
/// takes to enter it, and a representative point whose forward orbit is
/// exactly the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSet {
    pub cycle: PointSet,
    pub entry_time: usize,
    pub anchor: usize,
}

fn check_point(s: &FiniteSystem, x: usize) -> Result<(), OrbitError> {
    if x >= s.num_points() {
        return Err(OrbitError::PointRange { index: x, n: s.num_points() });
    }
    Ok(())
}

/// Forward orbit of `x` up to and including the first repeated point.
pub fn orbit(s: &FiniteSystem, x: usize) -> Result<Walk, OrbitError> {
    check_point(s, x)?;
    let n = s.num_points();
    let mut seen = vec![false; n];
    let mut points = vec![x];
    seen[x] = true;
    let mut cur = x;
    loop {
        cur = s.map(cur);
        points.push(cur);
        if seen[cur] {
            break;
        }
        seen[cur] = true;
    }
    Ok(Walk::new(n, points).expect("orbit points are valid by construction"))
}

/// The eventual cycle of `z`, with entry time and the first cycle point the
/// orbit reaches as anchor.
pub fn omega_limit(s: &FiniteSystem, z: usize) -> Result<OmegaSet, OrbitError> {
    check_point(s, z)?;
    let n = s.num_points();
    let mut first_visit = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut cur = z;
    loop {
        if first_visit[cur] != usize::MAX {
            let entry_time = first_visit[cur];
            let mut cycle = PointSet::empty(n);
            for &p in &path[entry_time..] {
                cycle.insert(p);
            }
            return Ok(OmegaSet { cycle, entry_time, anchor: cur });
        }
        first_visit[cur] = path.len();
        path.push(cur);
        cur = s.map(cur);
    }
}

/// Every cycle of the map, each one deduplicated and the list sorted by its
/// least element. The union of the cycles is the set of periodic points.
pub fn all_omega_sets(s: &FiniteSystem) -> Vec<OmegaSet> {
    let n = s.num_points();
    let mut on_known_cycle = vec![false; n];
    let mut cycles: Vec<OmegaSet> = Vec::new();
    for x in 0..n {
        // Land on the eventual cycle of x, then trace it.
        let mut p = x;
        for _ in 0..n {
            p = s.map(p);
        }
        if on_known_cycle[p] {
            continue;
        }
        let mut cycle = PointSet::empty(n);
        let mut q = p;
        loop {
            cycle.insert(q);
            on_known_cycle[q] = true;
            q = s.map(q);
            if q == p {
                break;
            }
        }
        let anchor = cycle.min_element().expect("cycle is nonempty");
        cycles.push(OmegaSet { cycle, entry_time: 0, anchor });
    }
    cycles.sort_by_key(|c| c.anchor);
    cycles
}

/// Does the map send `a` into itself?
pub fn is_positively_invariant(s: &FiniteSystem, a: &PointSet) -> Result<bool, OrbitError> {
    if a.universe() != s.num_points() {
        return Err(OrbitError::UniverseMismatch { got: a.universe(), expected: s.num_points() });
    }
    Ok(a.iter().all(|x| a.contains(s.map(x))))
}

/// True iff the map is a single cycle through all points, i.e. every orbit
/// visits everything.
pub fn is_minimal(s: &FiniteSystem) -> bool {
    let sets = all_omega_sets(s);
    sets.len() == 1 && sets[0].cycle.len() == s.num_points()
}

/// Classical Hausdorff distance together with the least eps for which the
/// strict-ball mutual-inclusion test passes. With integer distances the
/// latter is always classical + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hausdorff {
    pub classical: u64,
    pub least_strict_eps: u64,
}

pub fn hausdorff_distance(
    s: &FiniteSystem,
    a: &PointSet,
    b: &PointSet,
) -> Result<Hausdorff, OrbitError> {
    if a.universe() != s.num_points() {
        return Err(OrbitError::UniverseMismatch { got: a.universe(), expected: s.num_points() });
    }
    if b.universe() != s.num_points() {
        return Err(OrbitError::UniverseMismatch { got: b.universe(), expected: s.num_points() });
    }
    if a.is_empty() || b.is_empty() {
        return Err(OrbitError::EmptyPointSet);
    }
    let one_sided = |from: &PointSet, to: &PointSet| -> u64 {
        from.iter()
            .map(|x| to.iter().map(|y| s.dist(x, y)).min().expect("nonempty"))
            .max()
            .expect("nonempty")
    };
    let classical = one_sided(a, b).max(one_sided(b, a));
    Ok(Hausdorff { classical, least_strict_eps: classical + 1 })
}

/// Least horizon at which some cycle is swallowed by the balls around the
/// strictly forward orbit of `x`, plus a point anchoring that cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrapHorizon {
    pub steps: usize,
    pub witness: usize,
}

/// Least n >= 1 with some cycle C contained in the union of eps-balls around
/// f(x), f^2(x), ..., f^n(x). The union starts at the first image, so `x`
/// itself contributes nothing.
pub fn orbit_trap_horizon(
    s: &FiniteSystem,
    x: usize,
    eps: u64,
) -> Result<TrapHorizon, OrbitError> {
    check_point(s, x)?;
    if eps == 0 {
        return Err(OrbitError::ZeroThreshold);
    }
    let cycles = all_omega_sets(s);
    let own = omega_limit(s, x)?;
    // f^1 .. f^{entry + cycle length} passes through the full eventual cycle,
    // and every ball contains its own center, so this bound always suffices.
    let bound = own.entry_time + own.cycle.len();
    let mut covered = PointSet::empty(s.num_points());
    let mut cur = x;
    for n in 1..=bound {
        cur = s.map(cur);
        covered.union_with(&s.metric_ball(cur, eps));
        for c in &cycles {
            if c.cycle.is_subset(&covered) {
                return Ok(TrapHorizon { steps: n, witness: c.anchor });
            }
        }
    }
    unreachable!("the orbit's own cycle is covered by step entry_time + cycle length");
}

/// Max of `orbit_trap_horizon` over all starting points: one horizon valid
/// for every true orbit.
pub fn uniform_trap_horizon(s: &FiniteSystem, eps: u64) -> Result<usize, OrbitError> {
    let mut worst = 0;
    for x in 0..s.num_points() {
        worst = worst.max(orbit_trap_horizon(s, x, eps)?.steps);
    }
    Ok(worst)
}
