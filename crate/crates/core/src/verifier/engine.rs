//! Product-graph safety search over (current point, still-uncovered targets).
//!
//! Walking the pseudo-orbit graph, every visited point covers the target
//! members within eps of it. Against a list of target sets, a walk prefix is
//! a counterexample when every target still has an uncovered member. A
//! search state pairs the current point with the mask of uncovered members;
//! masks only shrink along a walk, which gives the two procedures here:
//!
//! * fixed horizon: layered breadth-first expansion with per-layer first-win
//!   dedup decides whether any walk of exactly n steps is a counterexample.
//!   Starts ascend and successors ascend, so insertion order is the
//!   lexicographic order of the least walk reaching each state, and the
//!   first surviving state at the last layer yields the least
//!   counterexample.
//! * unbounded decision: depth-first search over viable states either finds
//!   a cycle, in which case pumping it produces counterexamples of every
//!   length (a lasso), or proves the viable region acyclic, and the longest
//!   viable path depth + 1 is the least horizon at which every walk is safe.
//!
//! Per-layer dedup in the fixed-horizon search is deliberate: a state
//! reached at two different depths has different numbers of steps left, and
//! collapsing them would change the answer for exact n.

use std::hash::Hash;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::graph::PseudoOrbitGraph;
use crate::model::{FiniteSystem, PointSet, Walk};

/// Outcome of the unbounded decision for one graph.
#[derive(Debug, Clone)]
pub(crate) enum Decision {
    /// Safe from `min_n` steps on; min_n is exact.
    Feasible { min_n: usize },
    /// A viable cycle exists; the walk traverses a stem and one full loop.
    Infeasible { lasso: Walk },
}

trait Mask: Clone + Eq + Hash {
    fn and_not(&self, other: &Self) -> Self;
    fn intersects(&self, other: &Self) -> bool;
}

impl Mask for u128 {
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }

    fn intersects(&self, other: &Self) -> bool {
        self & other != 0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct WideMask(Box<[u64]>);

impl Mask for WideMask {
    fn and_not(&self, other: &Self) -> Self {
        WideMask(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & !b).collect())
    }

    fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }
}

struct Ctx<'a, M> {
    adj: &'a [Vec<usize>],
    cov: Vec<M>,
    groups: Vec<M>,
    full: M,
    num_points: usize,
    state_cap: usize,
}

impl<M: Mask> Ctx<'_, M> {
    fn viable(&self, m: &M) -> bool {
        self.groups.iter().all(|g| m.intersects(g))
    }
}

/// One eps-and-targets instance against one pseudo-orbit graph.
pub(crate) struct SearchProblem<'a> {
    sys: &'a FiniteSystem,
    graph: &'a PseudoOrbitGraph,
    eps: u64,
    members: Vec<Vec<usize>>,
    total_bits: usize,
    state_cap: usize,
}

impl<'a> SearchProblem<'a> {
    pub(crate) fn new(
        sys: &'a FiniteSystem,
        graph: &'a PseudoOrbitGraph,
        eps: u64,
        targets: &[PointSet],
        state_cap: usize,
    ) -> Self {
        debug_assert!(!targets.is_empty());
        debug_assert!(targets.iter().all(|t| !t.is_empty()));
        let members: Vec<Vec<usize>> = targets.iter().map(PointSet::to_vec).collect();
        let total_bits = members.iter().map(Vec::len).sum();
        SearchProblem { sys, graph, eps, members, total_bits, state_cap }
    }

    /// Covered bit positions for a visit to `y`.
    fn covered_bits(&self, y: usize) -> Vec<usize> {
        let mut bits = Vec::new();
        let mut off = 0;
        for mem in &self.members {
            for (i, &c) in mem.iter().enumerate() {
                if self.sys.dist(y, c) < self.eps {
                    bits.push(off + i);
                }
            }
            off += mem.len();
        }
        bits
    }

    fn narrow_ctx(&self) -> Ctx<'_, u128> {
        let n = self.sys.num_points();
        let make = |bits: &[usize]| -> u128 { bits.iter().fold(0u128, |m, &b| m | (1u128 << b)) };
        let cov = (0..n).map(|y| make(&self.covered_bits(y))).collect();
        let mut groups = Vec::with_capacity(self.members.len());
        let mut off = 0;
        for mem in &self.members {
            groups.push(make(&(off..off + mem.len()).collect::<Vec<_>>()));
            off += mem.len();
        }
        let full = make(&(0..self.total_bits).collect::<Vec<_>>());
        Ctx { adj: self.graph.adjacency(), cov, groups, full, num_points: n, state_cap: self.state_cap }
    }

    fn wide_ctx(&self) -> Ctx<'_, WideMask> {
        let n = self.sys.num_points();
        let words = self.total_bits.div_ceil(64);
        let make = |bits: &[usize]| -> WideMask {
            let mut w = vec![0u64; words];
            for &b in bits {
                w[b / 64] |= 1 << (b % 64);
            }
            WideMask(w.into_boxed_slice())
        };
        let cov = (0..n).map(|y| make(&self.covered_bits(y))).collect();
        let mut groups = Vec::with_capacity(self.members.len());
        let mut off = 0;
        for mem in &self.members {
            groups.push(make(&(off..off + mem.len()).collect::<Vec<_>>()));
            off += mem.len();
        }
        let full = make(&(0..self.total_bits).collect::<Vec<_>>());
        Ctx { adj: self.graph.adjacency(), cov, groups, full, num_points: n, state_cap: self.state_cap }
    }

    /// None: every walk of exactly `n` steps covers some target in full.
    /// Some: the lexicographically least walk that does not.
    /// Err: state cap exceeded, no verdict.
    pub(crate) fn check_fixed(&self, n: usize) -> Result<Option<Walk>, usize> {
        if self.total_bits <= 128 {
            check_fixed_impl(&self.narrow_ctx(), n)
        } else {
            check_fixed_impl(&self.wide_ctx(), n)
        }
    }

    /// Decides whether any horizon works for this graph, and the least one.
    pub(crate) fn decide(&self) -> Result<Decision, usize> {
        if self.total_bits <= 128 {
            decide_impl(&self.narrow_ctx())
        } else {
            decide_impl(&self.wide_ctx())
        }
    }
}

fn check_fixed_impl<M: Mask>(ctx: &Ctx<'_, M>, n: usize) -> Result<Option<Walk>, usize> {
    struct Entry<M> {
        point: u32,
        mask: M,
        parent: u32,
    }
    let mut layers: Vec<Vec<Entry<M>>> = Vec::with_capacity(n + 1);
    let mut layer0 = Vec::new();
    for p in 0..ctx.num_points {
        let m = ctx.full.and_not(&ctx.cov[p]);
        if ctx.viable(&m) {
            layer0.push(Entry { point: p as u32, mask: m, parent: u32::MAX });
        }
    }
    let mut total = layer0.len();
    if total > ctx.state_cap {
        return Err(total);
    }
    layers.push(layer0);
    let mut seen: FxHashSet<(u32, M)> = FxHashSet::default();
    for t in 0..n {
        if layers[t].is_empty() {
            return Ok(None);
        }
        seen.clear();
        let mut next: Vec<Entry<M>> = Vec::new();
        for idx in 0..layers[t].len() {
            let (point, mask) = {
                let e = &layers[t][idx];
                (e.point as usize, e.mask.clone())
            };
            for &y in &ctx.adj[point] {
                let m2 = mask.and_not(&ctx.cov[y]);
                if !ctx.viable(&m2) {
                    continue;
                }
                if seen.insert((y as u32, m2.clone())) {
                    next.push(Entry { point: y as u32, mask: m2, parent: idx as u32 });
                }
            }
        }
        total += next.len();
        if total > ctx.state_cap {
            return Err(total);
        }
        layers.push(next);
    }
    let Some(last) = layers[n].first() else {
        return Ok(None);
    };
    // First insertion is the lexicographically least counterexample.
    let mut points = vec![0usize; n + 1];
    points[n] = last.point as usize;
    let mut parent = last.parent;
    for t in (0..n).rev() {
        let e = &layers[t][parent as usize];
        points[t] = e.point as usize;
        parent = e.parent;
    }
    Ok(Some(Walk::new(ctx.num_points, points).expect("search states hold valid points")))
}

fn decide_impl<M: Mask>(ctx: &Ctx<'_, M>) -> Result<Decision, usize> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;

    let mut states: Vec<(u32, M)> = Vec::new();
    let mut index: FxHashMap<(u32, M), u32> = FxHashMap::default();
    let mut color: Vec<u8> = Vec::new();
    let mut longest: Vec<u32> = Vec::new();

    let mut roots = Vec::new();
    for p in 0..ctx.num_points {
        let m = ctx.full.and_not(&ctx.cov[p]);
        if ctx.viable(&m) {
            let id = states.len() as u32;
            index.insert((p as u32, m.clone()), id);
            states.push((p as u32, m));
            color.push(WHITE);
            longest.push(0);
            roots.push(id);
        }
    }
    if states.len() > ctx.state_cap {
        return Err(states.len());
    }

    struct Frame<M> {
        state: u32,
        point: usize,
        mask: M,
        edge_pos: usize,
        best: u32,
    }

    for &root in &roots {
        if color[root as usize] != WHITE {
            continue;
        }
        let mut stack: Vec<Frame<M>> = Vec::new();
        color[root as usize] = GRAY;
        let (p, m) = &states[root as usize];
        stack.push(Frame { state: root, point: *p as usize, mask: m.clone(), edge_pos: 0, best: 0 });
        while let Some(top) = stack.last_mut() {
            if top.edge_pos < ctx.adj[top.point].len() {
                let y = ctx.adj[top.point][top.edge_pos];
                top.edge_pos += 1;
                let m2 = top.mask.and_not(&ctx.cov[y]);
                if !ctx.viable(&m2) {
                    continue;
                }
                let key = (y as u32, m2);
                if let Some(&v) = index.get(&key) {
                    match color[v as usize] {
                        GRAY => {
                            // Cycle through v: stem is the stack up to v, the
                            // rest loops back to it.
                            let pos = stack
                                .iter()
                                .position(|f| f.state == v)
                                .expect("gray states sit on the stack");
                            let mut points: Vec<usize> =
                                stack.iter().map(|f| f.point).collect();
                            points.push(stack[pos].point);
                            let lasso = Walk::new(ctx.num_points, points)
                                .expect("stack points are valid");
                            return Ok(Decision::Infeasible { lasso });
                        }
                        BLACK => {
                            top.best = top.best.max(1 + longest[v as usize]);
                        }
                        _ => {
                            color[v as usize] = GRAY;
                            let mask = key.1;
                            stack.push(Frame {
                                state: v,
                                point: y,
                                mask,
                                edge_pos: 0,
                                best: 0,
                            });
                        }
                    }
                } else {
                    let id = states.len() as u32;
                    if states.len() + 1 > ctx.state_cap {
                        return Err(states.len() + 1);
                    }
                    index.insert((y as u32, key.1.clone()), id);
                    states.push((y as u32, key.1.clone()));
                    color.push(GRAY);
                    longest.push(0);
                    stack.push(Frame { state: id, point: y, mask: key.1, edge_pos: 0, best: 0 });
                }
            } else {
                let finished = stack.pop().expect("loop guard saw a frame");
                color[finished.state as usize] = BLACK;
                longest[finished.state as usize] = finished.best;
                if let Some(parent) = stack.last_mut() {
                    parent.best = parent.best.max(1 + finished.best);
                }
            }
        }
    }

    let min_n = roots
        .iter()
        .map(|&r| longest[r as usize] as usize + 1)
        .max()
        .unwrap_or(0);
    Ok(Decision::Feasible { min_n })
}
