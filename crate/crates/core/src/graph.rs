//! Pseudo-orbit graphs: walks in the graph with an edge x -> y whenever
//! (f(x), y) lies in a chosen entourage are exactly the pseudo-orbits for
//! that entourage. Thresholds, sampling, counting, and exhaustive
//! enumeration all live here.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Entourage, FiniteSystem, ModelError, Walk};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("entourage is over {got} points, system has {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("walk enumeration would visit {count} walks, above the cap of {cap}")]
    WalkCapExceeded { count: u128, cap: u128 },
    #[error("point index {index} out of range for {n} points")]
    PointRange { index: usize, n: usize },
}

/// What generated a graph's edge relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSource {
    /// Strict metric threshold on d(f(x), y).
    MetricDelta(u64),
    /// Caller-supplied entourage.
    Entourage,
}

/// Directed graph whose length-n walks are exactly the length-n
/// pseudo-orbits of the generating entourage.
#[derive(Debug, Clone)]
pub struct PseudoOrbitGraph {
    num_points: usize,
    rows: Vec<FixedBitSet>,
    adj: Vec<Vec<usize>>,
    source: GraphSource,
}

impl PseudoOrbitGraph {
    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn source(&self) -> GraphSource {
        self.source
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// Ascending successor list.
    pub fn out_neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }
}

/// Builds the graph with edges x -> y iff (f(x), y) is in `d`. Reflexivity
/// of `d` guarantees the true-orbit edge x -> f(x) is always present.
pub fn build_graph(s: &FiniteSystem, d: &Entourage) -> Result<PseudoOrbitGraph, GraphError> {
    if d.num_points() != s.num_points() {
        return Err(GraphError::DimensionMismatch {
            got: d.num_points(),
            expected: s.num_points(),
        });
    }
    let n = s.num_points();
    let mut rows = Vec::with_capacity(n);
    let mut adj = Vec::with_capacity(n);
    for x in 0..n {
        let row = d.row(s.map(x)).clone();
        adj.push(row.ones().collect::<Vec<_>>());
        rows.push(row);
    }
    debug_assert!((0..n).all(|x| rows[x].contains(s.map(x))));
    Ok(PseudoOrbitGraph { num_points: n, rows, adj, source: GraphSource::Entourage })
}

/// Metric special case: edges x -> y iff d(f(x), y) < delta.
pub fn build_metric_graph(s: &FiniteSystem, delta: u64) -> Result<PseudoOrbitGraph, GraphError> {
    let e = crate::model::metric_entourage(s, delta)?;
    let mut g = build_graph(s, &e)?;
    g.source = GraphSource::MetricDelta(delta);
    Ok(g)
}

/// All thresholds at which the edge relation can change, in increasing
/// order: 1 (true orbits only), then v + 1 for each attained positive value
/// of d(f(x), y). Sweeping this grid is exhaustive over all thresholds.
pub fn delta_grid(s: &FiniteSystem) -> Vec<u64> {
    let mut values = BTreeSet::new();
    for x in 0..s.num_points() {
        for y in 0..s.num_points() {
            let v = s.dist(s.map(x), y);
            if v >= 1 {
                values.insert(v + 1);
            }
        }
    }
    let mut grid = vec![1];
    grid.extend(values);
    grid
}

/// Same construction over all attained distances d(x, y): the thresholds at
/// which strict balls can change.
pub fn eps_grid(s: &FiniteSystem) -> Vec<u64> {
    let mut values = BTreeSet::new();
    for x in 0..s.num_points() {
        for y in 0..s.num_points() {
            let v = s.dist(x, y);
            if v >= 1 {
                values.insert(v + 1);
            }
        }
    }
    let mut grid = vec![1];
    grid.extend(values);
    grid
}

/// Uniformly random out-edge at every step, driven by a fixed-algorithm
/// seeded generator (ChaCha8), so the same seed always yields the same walk.
pub fn sample_walk(
    g: &PseudoOrbitGraph,
    start: usize,
    steps: usize,
    seed: u64,
) -> Result<Walk, GraphError> {
    if start >= g.num_points() {
        return Err(GraphError::PointRange { index: start, n: g.num_points() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(steps + 1);
    points.push(start);
    let mut cur = start;
    for _ in 0..steps {
        let outs = &g.adj[cur];
        cur = outs[rng.gen_range(0..outs.len())];
        points.push(cur);
    }
    Ok(Walk::new(g.num_points(), points).expect("sampled points are valid"))
}

/// Number of walks with exactly `steps` steps, by dynamic programming over
/// suffix counts. Saturates at u128::MAX.
pub fn count_walks(g: &PseudoOrbitGraph, steps: usize) -> u128 {
    let n = g.num_points();
    let mut suffix = vec![1u128; n];
    for _ in 0..steps {
        suffix = g
            .adj
            .iter()
            .map(|outs| outs.iter().fold(0u128, |acc, &y| acc.saturating_add(suffix[y])))
            .collect();
    }
    suffix.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Exhaustive enumeration of all walks with exactly `steps` steps, in
/// lexicographic order of their point sequences. Refuses upfront when the
/// total count exceeds `cap`.
pub fn enumerate_walks(
    g: &PseudoOrbitGraph,
    steps: usize,
    cap: u128,
) -> Result<WalkIter<'_>, GraphError> {
    let count = count_walks(g, steps);
    if count > cap {
        return Err(GraphError::WalkCapExceeded { count, cap });
    }
    Ok(WalkIter { g, steps, path: Vec::new(), cursors: Vec::new(), next_start: 0, done: false })
}

#[derive(Debug)]
pub struct WalkIter<'g> {
    g: &'g PseudoOrbitGraph,
    steps: usize,
    path: Vec<usize>,
    // cursors[i] indexes into adj[path[i]] and chose path[i + 1].
    cursors: Vec<usize>,
    next_start: usize,
    done: bool,
}

impl WalkIter<'_> {
    // Extend the current path with lexicographically least successors.
    fn descend(&mut self) {
        while self.path.len() < self.steps + 1 {
            let cur = *self.path.last().unwrap();
            let y = self.g.adj[cur][0];
            self.cursors.push(0);
            self.path.push(y);
        }
    }

    // Advance to the next path prefix, popping exhausted levels.
    fn backtrack(&mut self) -> bool {
        loop {
            self.path.pop();
            let Some(c) = self.cursors.pop() else {
                return false;
            };
            let cur = *self.path.last().unwrap();
            if c + 1 < self.g.adj[cur].len() {
                self.cursors.push(c + 1);
                self.path.push(self.g.adj[cur][c + 1]);
                return true;
            }
        }
    }
}

impl Iterator for WalkIter<'_> {
    type Item = Walk;

    fn next(&mut self) -> Option<Walk> {
        if self.done {
            return None;
        }
        if self.path.is_empty() {
            if self.next_start >= self.g.num_points() {
                self.done = true;
                return None;
            }
            self.path.push(self.next_start);
            self.next_start += 1;
            self.descend();
        } else if self.backtrack() {
            self.descend();
        } else if self.next_start < self.g.num_points() {
            self.path.push(self.next_start);
            self.next_start += 1;
            self.descend();
        } else {
            self.done = true;
            return None;
        }
        Some(Walk::new(self.g.num_points(), self.path.clone()).expect("enumerated points valid"))
    }
}

/// Deterministic DOT rendering: nodes in index order, edges sorted by
/// source then target, labels taken from the system when present.
pub fn to_dot(g: &PseudoOrbitGraph, s: &FiniteSystem) -> String {
    let mut out = String::from("digraph pseudo_orbit {\n");
    match g.source {
        GraphSource::MetricDelta(d) => {
            out.push_str(&format!("  label=\"delta = {d}\";\n"));
        }
        GraphSource::Entourage => {
            out.push_str("  label=\"entourage\";\n");
        }
    }
    for x in 0..g.num_points() {
        let label = match s.label(x) {
            Some(l) => l.replace('\\', "\\\\").replace('"', "\\\""),
            None => x.to_string(),
        };
        out.push_str(&format!("  {x} [label=\"{label}\"];\n"));
    }
    for x in 0..g.num_points() {
        for &y in &g.adj[x] {
            out.push_str(&format!("  {x} -> {y};\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::metric_entourage;

    fn rotation(q: usize) -> FiniteSystem {
        let dist: Vec<Vec<u64>> = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| {
                        let raw = (i as i64 - j as i64).unsigned_abs();
                        raw.min(q as u64 - raw)
                    })
                    .collect()
            })
            .collect();
        let map = (0..q).map(|i| (i + 1) % q).collect();
        FiniteSystem::new(q, None, 1, dist, map).unwrap()
    }

    #[test]
    fn diagonal_entourage_gives_true_orbit_graph() {
        let s = rotation(5);
        let g = build_graph(&s, &Entourage::diagonal(5)).unwrap();
        for x in 0..5 {
            assert_eq!(g.out_neighbors(x), &[s.map(x)]);
        }
        assert_eq!(count_walks(&g, 3), 5);
    }

    #[test]
    fn complete_entourage_gives_complete_graph() {
        let s = rotation(3);
        let g = build_graph(&s, &Entourage::complete(3)).unwrap();
        for x in 0..3 {
            assert_eq!(g.out_neighbors(x).len(), 3);
        }
        assert_eq!(count_walks(&g, 2), 27);
    }

    #[test]
    fn rotation_delta_two_has_three_successors() {
        let s = rotation(8);
        let g = build_metric_graph(&s, 2).unwrap();
        for x in 0..8 {
            let f = (x + 1) % 8;
            let expect = {
                let mut v = vec![(f + 7) % 8, f, (f + 1) % 8];
                v.sort_unstable();
                v
            };
            assert_eq!(g.out_neighbors(x), expect.as_slice(), "x = {x}");
        }
        assert_eq!(count_walks(&g, 2), 8 * 9);
        let z4 = rotation(4);
        let g4 = build_metric_graph(&z4, 2).unwrap();
        assert_eq!(count_walks(&g4, 2), 36);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let s = rotation(4);
        let d = Entourage::diagonal(5);
        assert!(matches!(
            build_graph(&s, &d),
            Err(GraphError::DimensionMismatch { got: 5, expected: 4 })
        ));
        assert!(build_metric_graph(&s, 0).is_err());
    }

    #[test]
    fn grids_offset_attained_values() {
        // Distances on the line 0-1-2 with spacing 4 and 7... construct directly.
        let s = FiniteSystem::new(
            3,
            None,
            1,
            vec![vec![0, 4, 7], vec![4, 0, 4], vec![7, 4, 0]],
            vec![0, 1, 2],
        )
        .unwrap();
        assert_eq!(eps_grid(&s), vec![1, 5, 8]);
        // Identity map, so d(f(x), y) attains the same values.
        assert_eq!(delta_grid(&s), vec![1, 5, 8]);
    }

    #[test]
    fn grid_is_complete_for_threshold_sweeps() {
        // Between consecutive grid values the edge relation is constant.
        let s = rotation(6);
        let grid = delta_grid(&s);
        for delta in 1..=8u64 {
            let snapped = *grid.iter().rfind(|&&d| d <= delta).unwrap();
            let a = metric_entourage(&s, delta).unwrap();
            let b = metric_entourage(&s, snapped).unwrap();
            assert_eq!(a, b, "delta = {delta} snaps to {snapped}");
        }
    }

    #[test]
    fn sample_walk_is_deterministic_and_respects_edges() {
        let s = rotation(8);
        let g = build_metric_graph(&s, 2).unwrap();
        let w1 = sample_walk(&g, 3, 20, 42).unwrap();
        let w2 = sample_walk(&g, 3, 20, 42).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(w1.steps(), 20);
        assert_eq!(w1.first_metric_violation(&s, 2), None);
        let w3 = sample_walk(&g, 3, 20, 43).unwrap();
        assert!(w1 != w3 || w1.points() == w3.points());

        // Out-degree one: the seed cannot matter.
        let orbit_graph = build_metric_graph(&s, 1).unwrap();
        let a = sample_walk(&orbit_graph, 0, 10, 1).unwrap();
        let b = sample_walk(&orbit_graph, 0, 10, 999).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points()[..4], [0, 1, 2, 3]);

        assert_eq!(sample_walk(&g, 0, 0, 7).unwrap().points(), &[0]);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let s = rotation(4);
        let g = build_metric_graph(&s, 2).unwrap();
        let walks: Vec<Walk> = enumerate_walks(&g, 2, 1 << 20).unwrap().collect();
        assert_eq!(walks.len() as u128, count_walks(&g, 2));
        for pair in walks.windows(2) {
            assert!(pair[0].points() < pair[1].points(), "lexicographic order");
        }
        for w in &walks {
            assert_eq!(w.first_metric_violation(&s, 2), None);
        }
        // Walks of zero steps are the points themselves.
        let trivial: Vec<Walk> = enumerate_walks(&g, 0, 100).unwrap().collect();
        assert_eq!(trivial.len(), 4);
        assert_eq!(trivial[2].points(), &[2]);
    }

    #[test]
    fn enumeration_cap_is_checked_upfront() {
        let s = rotation(8);
        let g = build_metric_graph(&s, 3).unwrap();
        let err = enumerate_walks(&g, 10, 100).unwrap_err();
        assert!(matches!(err, GraphError::WalkCapExceeded { cap: 100, .. }));
    }

    #[test]
    fn dot_output_is_stable() {
        let s = FiniteSystem::new(
            2,
            Some(vec!["left".into(), "right".into()]),
            1,
            vec![vec![0, 1], vec![1, 0]],
            vec![1, 0],
        )
        .unwrap();
        let g = build_metric_graph(&s, 2).unwrap();
        let dot = to_dot(&g, &s);
        assert!(dot.starts_with("digraph pseudo_orbit {"));
        assert!(dot.contains("0 [label=\"left\"];"));
        assert!(dot.contains("0 -> 1;"));
        assert_eq!(dot, to_dot(&g, &s));
    }
}
