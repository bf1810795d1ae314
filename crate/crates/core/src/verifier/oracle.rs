//! Enumeration-based cross-checks for the product search.
//!
//! Everything here recomputes its own ground truth: cycles by iterating the
//! map, balls by scanning the raw distance table, walks by the graph
//! iterator or a breadth-first sweep over visited-set states. None of it
//! shares covering logic with the residual-mask engine, so agreement between
//! the two routes is evidence, not tautology.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::graph::{count_walks, enumerate_walks, PseudoOrbitGraph};
use crate::model::{FiniteSystem, PointSet, Walk};

/// Cycles of the map, each listed once, ascending members, sorted by least
/// member. Recomputed here on purpose; see the module note.
pub(crate) fn oracle_cycles(s: &FiniteSystem) -> Vec<Vec<usize>> {
    let n = s.num_points();
    let mut on_known_cycle = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        // f^n(start) lands on a cycle.
        let mut x = start;
        for _ in 0..n {
            x = s.map(x);
        }
        if on_known_cycle[x] {
            continue;
        }
        let mut cycle = vec![x];
        on_known_cycle[x] = true;
        let mut y = s.map(x);
        while y != x {
            cycle.push(y);
            on_known_cycle[y] = true;
            y = s.map(y);
        }
        cycle.sort_unstable();
        cycles.push(cycle);
    }
    cycles.sort_unstable();
    cycles
}

fn ball_of_points(s: &FiniteSystem, points: &[usize], eps: u64) -> Vec<bool> {
    let n = s.num_points();
    let mut ball = vec![false; n];
    for &p in points {
        for (q, slot) in ball.iter_mut().enumerate() {
            if s.dist(p, q) < eps {
                *slot = true;
            }
        }
    }
    ball
}

fn traps_some_cycle(s: &FiniteSystem, points: &[usize], eps: u64, cycles: &[Vec<usize>]) -> bool {
    let ball = ball_of_points(s, points, eps);
    cycles.iter().any(|c| c.iter().all(|&x| ball[x]))
}

fn covers_everything(s: &FiniteSystem, points: &[usize], eps: u64) -> bool {
    ball_of_points(s, points, eps).into_iter().all(|b| b)
}

/// First (lexicographically least) walk of exactly `n` steps whose eps-ball
/// traps no cycle, by outright enumeration. Verdicts depend only on the
/// visited set, so those are memoized.
pub(crate) fn first_untrapped_walk(
    s: &FiniteSystem,
    g: &PseudoOrbitGraph,
    eps: u64,
    n: usize,
    walk_cap: u128,
) -> Result<Option<Walk>, u128> {
    let count = count_walks(g, n);
    if count > walk_cap {
        return Err(count);
    }
    let cycles = oracle_cycles(s);
    let mut memo: FxHashMap<PointSet, bool> = FxHashMap::default();
    let walks = enumerate_walks(g, n, walk_cap).expect("count checked against cap");
    for walk in walks {
        let key = walk.point_set(s.num_points());
        let ok = *memo
            .entry(key)
            .or_insert_with_key(|set| traps_some_cycle(s, &set.to_vec(), eps, &cycles));
        if !ok {
            return Ok(Some(walk));
        }
    }
    Ok(None)
}

/// Same scheme against the covering question: first walk whose eps-ball
/// misses part of the space.
pub(crate) fn first_noncovering_walk(
    s: &FiniteSystem,
    g: &PseudoOrbitGraph,
    eps: u64,
    n: usize,
    walk_cap: u128,
) -> Result<Option<Walk>, u128> {
    let count = count_walks(g, n);
    if count > walk_cap {
        return Err(count);
    }
    let mut memo: FxHashMap<PointSet, bool> = FxHashMap::default();
    let walks = enumerate_walks(g, n, walk_cap).expect("count checked against cap");
    for walk in walks {
        let key = walk.point_set(s.num_points());
        let ok = *memo
            .entry(key)
            .or_insert_with_key(|set| covers_everything(s, &set.to_vec(), eps));
        if !ok {
            return Ok(Some(walk));
        }
    }
    Ok(None)
}

/// Distinct visited sets per walk length, 0 through `max_steps`.
///
/// Breadth-first over (endpoint, visited set) states with per-depth dedup,
/// which reaches exactly the visited sets of walks of each length. Output
/// per depth is sorted, so callers get a canonical family.
pub(crate) fn walk_point_sets(
    s: &FiniteSystem,
    g: &PseudoOrbitGraph,
    max_steps: usize,
    walk_cap: u128,
) -> Result<Vec<Vec<PointSet>>, u128> {
    let count = count_walks(g, max_steps);
    if count > walk_cap {
        return Err(count);
    }
    let n = s.num_points();
    if n <= 64 {
        let mut families = Vec::with_capacity(max_steps + 1);
        let mut layer: Vec<(u32, u64)> = (0..n).map(|p| (p as u32, 1u64 << p)).collect();
        let mut seen: FxHashSet<(u32, u64)> = FxHashSet::default();
        for depth in 0..=max_steps {
            let mut masks: Vec<u64> = layer.iter().map(|&(_, m)| m).collect();
            masks.sort_unstable();
            masks.dedup();
            families.push(
                masks
                    .into_iter()
                    .map(|m| {
                        let mut set = PointSet::empty(n);
                        for i in (0..n).filter(|&i| m >> i & 1 == 1) {
                            set.insert(i);
                        }
                        set
                    })
                    .collect(),
            );
            if depth == max_steps {
                break;
            }
            seen.clear();
            let mut next = Vec::new();
            for &(p, m) in &layer {
                for &y in g.out_neighbors(p as usize) {
                    let state = (y as u32, m | (1u64 << y));
                    if seen.insert(state) {
                        next.push(state);
                    }
                }
            }
            layer = next;
        }
        Ok(families)
    } else {
        let mut families = Vec::with_capacity(max_steps + 1);
        let mut layer: Vec<(u32, PointSet)> =
            (0..n).map(|p| (p as u32, PointSet::singleton(n, p))).collect();
        let mut seen: FxHashSet<(u32, PointSet)> = FxHashSet::default();
        for depth in 0..=max_steps {
            let mut sets: Vec<PointSet> = layer.iter().map(|(_, m)| m.clone()).collect();
            sets.sort_unstable_by_key(PointSet::to_vec);
            sets.dedup();
            families.push(sets);
            if depth == max_steps {
                break;
            }
            seen.clear();
            let mut next = Vec::new();
            for (p, m) in &layer {
                for &y in g.out_neighbors(*p as usize) {
                    let mut m2 = m.clone();
                    m2.insert(y);
                    let state = (y as u32, m2);
                    if seen.insert(state.clone()) {
                        next.push(state);
                    }
                }
            }
            layer = next;
        }
        Ok(families)
    }
}

/// Trap verdicts for a whole (eps, n) grid at one delta, from the visited-set
/// families. `true` means every walk of that length traps a cycle.
pub(crate) fn trap_sweep(
    s: &FiniteSystem,
    g: &PseudoOrbitGraph,
    eps_list: &[u64],
    max_n: usize,
    walk_cap: u128,
) -> Result<Vec<Vec<bool>>, u128> {
    let families = walk_point_sets(s, g, max_n, walk_cap)?;
    let cycles = oracle_cycles(s);
    let mut out = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let mut per_n = Vec::with_capacity(max_n + 1);
        for family in &families {
            per_n.push(
                family
                    .iter()
                    .all(|set| traps_some_cycle(s, &set.to_vec(), eps, &cycles)),
            );
        }
        out.push(per_n);
    }
    Ok(out)
}

/// Covering verdicts for a whole (eps, n) grid at one delta.
pub(crate) fn cover_sweep(
    s: &FiniteSystem,
    g: &PseudoOrbitGraph,
    eps_list: &[u64],
    max_n: usize,
    walk_cap: u128,
) -> Result<Vec<Vec<bool>>, u128> {
    let families = walk_point_sets(s, g, max_n, walk_cap)?;
    let mut out = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let mut per_n = Vec::with_capacity(max_n + 1);
        for family in &families {
            per_n.push(family.iter().all(|set| covers_everything(s, &set.to_vec(), eps)));
        }
        out.push(per_n);
    }
    Ok(out)
}
