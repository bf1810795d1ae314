//! Decision procedures over pseudo-orbit graphs: cycle trapping, space
//! covering, the minimality criterion, and orbital shadowing diagnostics.
//!
//! The universally quantified questions ("does every walk ...") are decided
//! by the product search in `engine`. The `oracle_*` entry points answer the
//! same questions by plain enumeration and exist to disagree loudly if the
//! engine is ever wrong; keep the two routes separate.

mod engine;
mod oracle;

use thiserror::Error;

use crate::graph::{
    build_metric_graph, count_walks, delta_grid, enumerate_walks, eps_grid, sample_walk,
    GraphError, GraphSource, PseudoOrbitGraph,
};
use crate::model::{FiniteSystem, ModelError, PointSet, Walk};
use crate::orbit::{
    all_omega_sets, hausdorff_distance, is_minimal, is_positively_invariant, omega_limit, orbit,
    Hausdorff, OrbitError,
};

use engine::{Decision, SearchProblem};

pub const DEFAULT_STATE_CAP: usize = 10_000_000;
pub const DEFAULT_WALK_CAP: u128 = 10_000_000;

/// How many walks the orbital reports keep verbatim.
const DETAIL_CAP: usize = 32;

/// Resource ceilings. Hitting one aborts with an undecided error, never a
/// verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub state_cap: usize,
    pub walk_cap: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { state_cap: DEFAULT_STATE_CAP, walk_cap: DEFAULT_WALK_CAP }
    }
}

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("product search hit the state cap ({cap}) after {states} states; undecided")]
    StateCap { states: usize, cap: usize },
    #[error("strong orbital check requires a minimal system")]
    NotMinimal,
    #[error("{which} walk has {got} steps, expected {expected}")]
    WalkLength { which: &'static str, got: usize, expected: usize },
    #[error("{which} walk leaves the delta = {delta} graph at step {step}: d(f({from}), {to}) is not under delta")]
    NotPseudoOrbit { which: &'static str, step: usize, from: usize, to: usize, delta: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

const PRODUCT_MODE: &str = "layered product search over uncovered-target masks";
const ORACLE_MODE: &str = "exhaustive walk enumeration with direct ball tests";

/// Verdict for: every walk of exactly `n` steps traps some cycle of the map
/// inside the eps-ball of its visited set.
#[derive(Debug, Clone)]
pub struct TrapCertificate {
    pub eps: u64,
    pub source: GraphSource,
    pub n: usize,
    pub verdict: Verdict,
    pub witness_mode: &'static str,
    pub counterexample: Option<Walk>,
}

/// Verdict for: every walk of exactly `n` steps eps-covers the whole space.
#[derive(Debug, Clone)]
pub struct CoverCertificate {
    pub eps: u64,
    pub source: GraphSource,
    pub n: usize,
    pub verdict: Verdict,
    pub witness_mode: &'static str,
    pub counterexample: Option<Walk>,
}

/// Answer for one delta in a grid sweep.
#[derive(Debug, Clone)]
pub enum DeltaDecision {
    /// Safe from `min_n` steps on; `min_n` is exact.
    Feasible { min_n: usize },
    /// Counterexamples of every length exist; the walk pumps its loop.
    Infeasible { lasso: Walk },
}

#[derive(Debug, Clone)]
pub struct DeltaOutcome {
    pub delta: u64,
    pub decision: DeltaDecision,
}

/// Grid sweep result, deltas descending. `recommended` is the largest
/// feasible delta with its least n.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub eps: u64,
    pub entries: Vec<DeltaOutcome>,
    pub recommended: Option<(u64, usize)>,
}

/// Certificate that every infinite pseudo-orbit at the chosen delta traps a
/// full orbit within eps: the finite check plus the audit chain lifting it
/// to the infinite statement.
#[derive(Debug, Clone)]
pub struct SwsCertificate {
    pub eps: u64,
    pub delta: u64,
    pub n: usize,
    pub search: SearchOutcome,
    pub justification: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct EpsWitness {
    pub eps: u64,
    pub witness: Option<(u64, usize)>,
}

/// Two true orbits violating mutual eps-inclusion, built from a point whose
/// omega-limit misses part of the space.
#[derive(Debug, Clone)]
pub struct MinimalityCounterexample {
    pub eps: u64,
    pub base_point: usize,
    pub inside_orbit: Walk,
    pub outside_orbit: Walk,
    pub violating_point: usize,
}

#[derive(Debug, Clone)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    pub per_eps: Vec<EpsWitness>,
    pub counterexample: Option<MinimalityCounterexample>,
}

/// Hausdorff comparison of two walk point sets against eps.
#[derive(Debug, Clone, Copy)]
pub struct PairwiseDh {
    pub within_eps: bool,
    pub distance: Hausdorff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrongOrbitalFailure {
    pub sampled: bool,
    pub start: usize,
    pub offset: usize,
    pub shadow: usize,
}

/// Result of the exhaustive offset-window check on a minimal system.
#[derive(Debug, Clone)]
pub struct StrongOrbitalReport {
    pub eps: u64,
    pub delta: u64,
    pub n: usize,
    pub horizon: usize,
    pub orbit_instances: u64,
    pub sampled_instances: u64,
    pub seed: u64,
    pub failure_count: u64,
    pub failures: Vec<StrongOrbitalFailure>,
}

impl StrongOrbitalReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitalMode {
    Exhaustive,
    Sampled { samples: usize },
}

#[derive(Debug, Clone)]
pub struct OrbitalDetail {
    pub walk: Walk,
    pub witness: Option<usize>,
}

/// Finite-horizon orbital shadowing diagnostic: a semi-decision at the given
/// horizon, not a theorem check.
#[derive(Debug, Clone)]
pub struct OrbitalReport {
    pub eps: u64,
    pub delta: u64,
    pub horizon: usize,
    pub mode: OrbitalMode,
    pub seed: u64,
    pub walk_count: u128,
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    pub details: Vec<OrbitalDetail>,
    pub failures: Vec<OrbitalDetail>,
}

impl OrbitalReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn require_eps(eps: u64) -> Result<(), VerifierError> {
    if eps == 0 {
        return Err(ModelError::ZeroThreshold.into());
    }
    Ok(())
}

fn cycle_targets(s: &FiniteSystem) -> Vec<PointSet> {
    all_omega_sets(s).into_iter().map(|o| o.cycle).collect()
}

fn check_dims(s: &FiniteSystem, g: &PseudoOrbitGraph) -> Result<(), VerifierError> {
    if g.num_points() != s.num_points() {
        return Err(GraphError::DimensionMismatch {
            got: g.num_points(),
            expected: s.num_points(),
        }
        .into());
    }
    Ok(())
}

/// Does every walk of exactly `n` steps at threshold `delta` trap a cycle
/// within eps of its visited points?
pub fn trap_check(
    s: &FiniteSystem,
    eps: u64,
    delta: u64,
    n: usize,
    limits: SearchLimits,
) -> Result<TrapCertificate, VerifierError> {
    require_eps(eps)?;
    let g = build_metric_graph(s, delta)?;
    trap_check_graph(s, eps, &g, n, limits)
}

/// Same question against a caller-built graph (arbitrary entourage).
pub fn trap_check_graph(
    s: &FiniteSystem,
    eps: u64,
    g: &PseudoOrbitGraph,
    n: usize,
    limits: SearchLimits,
) -> Result<TrapCertificate, VerifierError> {
    require_eps(eps)?;
    check_dims(s, g)?;
    let targets = cycle_targets(s);
    let problem = SearchProblem::new(s, g, eps, &targets, limits.state_cap);
    match problem.check_fixed(n) {
        Ok(counterexample) => Ok(TrapCertificate {
            eps,
            source: g.source(),
            n,
            verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
            witness_mode: PRODUCT_MODE,
            counterexample,
        }),
        Err(states) => Err(VerifierError::StateCap { states, cap: limits.state_cap }),
    }
}

/// Does every walk of exactly `n` steps eps-cover the whole space?
pub fn cover_check(
    s: &FiniteSystem,
    eps: u64,
    delta: u64,
    n: usize,
    limits: SearchLimits,
) -> Result<CoverCertificate, VerifierError> {
    require_eps(eps)?;
    let g = build_metric_graph(s, delta)?;
    cover_check_graph(s, eps, &g, n, limits)
}

/// The covering target is the whole space, which need not be a cycle; only
/// the covering semantics of the search matter here, not invariance.
pub fn cover_check_graph(
    s: &FiniteSystem,
    eps: u64,
    g: &PseudoOrbitGraph,
    n: usize,
    limits: SearchLimits,
) -> Result<CoverCertificate, VerifierError> {
    require_eps(eps)?;
    check_dims(s, g)?;
    let targets = [PointSet::full(s.num_points())];
    let problem = SearchProblem::new(s, g, eps, &targets, limits.state_cap);
    match problem.check_fixed(n) {
        Ok(counterexample) => Ok(CoverCertificate {
            eps,
            source: g.source(),
            n,
            verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
            witness_mode: PRODUCT_MODE,
            counterexample,
        }),
        Err(states) => Err(VerifierError::StateCap { states, cap: limits.state_cap }),
    }
}

fn sweep_grid(
    s: &FiniteSystem,
    eps: u64,
    targets: &[PointSet],
    limits: SearchLimits,
) -> Result<SearchOutcome, VerifierError> {
    let mut entries = Vec::new();
    let mut recommended = None;
    for &delta in delta_grid(s).iter().rev() {
        let g = build_metric_graph(s, delta)?;
        let problem = SearchProblem::new(s, &g, eps, targets, limits.state_cap);
        match problem.decide() {
            Ok(Decision::Feasible { min_n }) => {
                if recommended.is_none() {
                    recommended = Some((delta, min_n));
                }
                entries.push(DeltaOutcome { delta, decision: DeltaDecision::Feasible { min_n } });
            }
            Ok(Decision::Infeasible { lasso }) => {
                entries.push(DeltaOutcome { delta, decision: DeltaDecision::Infeasible { lasso } });
            }
            Err(states) => return Err(VerifierError::StateCap { states, cap: limits.state_cap }),
        }
    }
    Ok(SearchOutcome { eps, entries, recommended })
}

/// Sweeps the delta grid descending, deciding for each delta whether ANY
/// horizon traps and computing the least one when it does.
pub fn trap_search(
    s: &FiniteSystem,
    eps: u64,
    limits: SearchLimits,
) -> Result<SearchOutcome, VerifierError> {
    require_eps(eps)?;
    let targets = cycle_targets(s);
    let out = sweep_grid(s, eps, &targets, limits)?;
    // Threshold 1 admits only true orbits, and a true orbit reaches its own
    // cycle; so the bottom of the grid is always feasible.
    debug_assert!(out.recommended.is_some());
    Ok(out)
}

/// Covering analogue of `trap_search`.
pub fn cover_search(
    s: &FiniteSystem,
    eps: u64,
    limits: SearchLimits,
) -> Result<SearchOutcome, VerifierError> {
    require_eps(eps)?;
    let targets = [PointSet::full(s.num_points())];
    sweep_grid(s, eps, &targets, limits)
}

/// Certifies that every infinite pseudo-orbit at the recommended delta stays
/// within eps of some full orbit, lifting the finite trap check through
/// positive invariance of the trapped cycle.
pub fn certify_second_weak_shadowing(
    s: &FiniteSystem,
    eps: u64,
    limits: SearchLimits,
) -> Result<SwsCertificate, VerifierError> {
    let search = trap_search(s, eps, limits)?;
    let (delta, n) = search
        .recommended
        .expect("threshold 1 keeps only true orbits, which trap their own cycles");
    for o in all_omega_sets(s) {
        let invariant = is_positively_invariant(s, &o.cycle)?;
        assert!(invariant, "omega-limit cycles are closed under the map");
    }
    let justification = vec![
        format!(
            "every walk of {n} steps in the delta = {delta} pseudo-orbit graph \
             has some cycle of the map inside the eps = {eps} ball of its points"
        ),
        "each such cycle is positively invariant (checked above), so it equals the \
         full forward orbit of any of its points"
            .to_string(),
        format!(
            "hence every infinite pseudo-orbit at delta = {delta} contains, within \
             eps = {eps} of its first {n} steps, the entire orbit of some point; \
             the system has second weak shadowing at this eps"
        ),
    ];
    Ok(SwsCertificate { eps, delta, n, search, justification })
}

fn converse_counterexample(s: &FiniteSystem) -> Result<MinimalityCounterexample, VerifierError> {
    let np = s.num_points();
    let base_point = (0..np)
        .find(|&x| {
            omega_limit(s, x).expect("points in range").cycle.len() < np
        })
        .expect("a non-minimal map leaves some orbit non-dense");
    let omega = omega_limit(s, base_point)?.cycle;
    let inside = omega.min_element().expect("omega-limit sets are nonempty");
    // The largest eps whose ball around the omega-limit still misses a
    // point, and the least such point.
    let mut eps = 0;
    let mut violating_point = 0;
    for cand in 0..np {
        let d = omega.iter().map(|c| s.dist(cand, c)).min().expect("nonempty");
        if d > eps {
            eps = d;
            violating_point = cand;
        }
    }
    debug_assert!(eps > 0);
    Ok(MinimalityCounterexample {
        eps,
        base_point,
        inside_orbit: orbit(s, inside)?,
        outside_orbit: orbit(s, violating_point)?,
        violating_point,
    })
}

/// Decides minimality by searching, for each eps in the grid, a (delta, n)
/// making every n-step walk eps-cover the space. When the map is not
/// minimal, also builds the explicit pair of true orbits violating mutual
/// inclusion at the largest eps where the omega-limit ball misses a point.
pub fn minimality_criterion(
    s: &FiniteSystem,
    limits: SearchLimits,
) -> Result<MinimalityVerdict, VerifierError> {
    let mut per_eps = Vec::new();
    let mut minimal = true;
    for eps in eps_grid(s) {
        let out = cover_search(s, eps, limits)?;
        if out.recommended.is_none() {
            minimal = false;
        }
        per_eps.push(EpsWitness { eps, witness: out.recommended });
    }
    let counterexample = if minimal { None } else { Some(converse_counterexample(s)?) };
    Ok(MinimalityVerdict { minimal, per_eps, counterexample })
}

/// Hausdorff comparison of two equal-length pseudo-orbits. Mutual inclusion
/// in strict eps-balls is the same as classical distance at most eps - 1.
pub fn pairwise_dh_check(
    s: &FiniteSystem,
    eps: u64,
    delta: u64,
    n: usize,
    a: &Walk,
    b: &Walk,
) -> Result<PairwiseDh, VerifierError> {
    require_eps(eps)?;
    if delta == 0 {
        return Err(ModelError::ZeroThreshold.into());
    }
    for (which, w) in [("first", a), ("second", b)] {
        if w.steps() != n {
            return Err(VerifierError::WalkLength { which, got: w.steps(), expected: n });
        }
        if let Some(step) = w.first_metric_violation(s, delta) {
            return Err(VerifierError::NotPseudoOrbit {
                which,
                step,
                from: w.points()[step],
                to: w.points()[step + 1],
                delta,
            });
        }
    }
    let np = s.num_points();
    let distance = hausdorff_distance(s, &a.point_set(np), &b.point_set(np))?;
    Ok(PairwiseDh { within_eps: distance.classical < eps, distance })
}

/// Exhaustive offset-window check of strong orbital shadowing on a minimal
/// system: for the (delta, n) covering witness at this eps, every offset
/// window of every true orbit and every shadow orbit mutually eps-include,
/// plus seeded spot checks on sampled pseudo-orbits.
pub fn strong_orbital_check_minimal(
    s: &FiniteSystem,
    eps: u64,
    horizon: usize,
    seed: u64,
    samples: usize,
    limits: SearchLimits,
) -> Result<StrongOrbitalReport, VerifierError> {
    require_eps(eps)?;
    if !is_minimal(s) {
        return Err(VerifierError::NotMinimal);
    }
    let cover = cover_search(s, eps, limits)?;
    let (delta, n) = cover
        .recommended
        .expect("a minimal orbit visits every point, so covering succeeds at threshold 1");
    let np = s.num_points();

    let mut windows: Vec<PointSet> = Vec::with_capacity(np);
    let mut window_balls: Vec<PointSet> = Vec::with_capacity(np);
    for p in 0..np {
        let mut set = PointSet::empty(np);
        let mut x = p;
        set.insert(x);
        for _ in 0..n {
            x = s.map(x);
            set.insert(x);
        }
        window_balls.push(s.metric_ball_of_set(&set, eps));
        windows.push(set);
    }
    let mutual = |a: usize, b: usize| -> bool {
        windows[a].is_subset(&window_balls[b]) && windows[b].is_subset(&window_balls[a])
    };

    let mut failure_count = 0u64;
    let mut failures = Vec::new();
    let mut orbit_instances = 0u64;
    let mut cur: Vec<usize> = (0..np).collect();
    for offset in 0..horizon {
        for x0 in 0..np {
            for z in 0..np {
                orbit_instances += 1;
                if !mutual(cur[x0], cur[z]) {
                    failure_count += 1;
                    if failures.len() < DETAIL_CAP {
                        failures.push(StrongOrbitalFailure {
                            sampled: false,
                            start: x0,
                            offset,
                            shadow: z,
                        });
                    }
                }
            }
        }
        for v in cur.iter_mut() {
            *v = s.map(*v);
        }
    }

    let mut sampled_instances = 0u64;
    if horizon > 0 && samples > 0 {
        let g = build_metric_graph(s, delta)?;
        let mut pow: Vec<Vec<usize>> = vec![(0..np).collect()];
        for _ in 1..horizon {
            let prev = pow.last().expect("seeded above");
            pow.push(prev.iter().map(|&v| s.map(v)).collect());
        }
        for k in 0..samples {
            let w = sample_walk(&g, k % np, horizon - 1 + n, seed.wrapping_add(k as u64))?;
            let pts = w.points();
            for offset in 0..horizon {
                let mut set = PointSet::empty(np);
                for &p in &pts[offset..=offset + n] {
                    set.insert(p);
                }
                let ball = s.metric_ball_of_set(&set, eps);
                for z in 0..np {
                    sampled_instances += 1;
                    let zw = pow[offset][z];
                    let ok = set.is_subset(&window_balls[zw]) && windows[zw].is_subset(&ball);
                    if !ok {
                        failure_count += 1;
                        if failures.len() < DETAIL_CAP {
                            failures.push(StrongOrbitalFailure {
                                sampled: true,
                                start: k,
                                offset,
                                shadow: z,
                            });
                        }
                    }
                }
            }
        }
    }

    Ok(StrongOrbitalReport {
        eps,
        delta,
        n,
        horizon,
        orbit_instances,
        sampled_instances,
        seed,
        failure_count,
        failures,
    })
}

/// Finite-horizon orbital shadowing check: for each walk of `horizon` steps
/// (all of them under the cap, seeded samples above it), search for a point
/// whose full orbit mutually eps-includes with the walk's point set.
pub fn orbital_shadowing_check(
    s: &FiniteSystem,
    eps: u64,
    delta: u64,
    horizon: usize,
    seed: u64,
    samples: usize,
    limits: SearchLimits,
) -> Result<OrbitalReport, VerifierError> {
    require_eps(eps)?;
    let g = build_metric_graph(s, delta)?;
    let np = s.num_points();
    let orbit_sets: Vec<PointSet> = (0..np)
        .map(|z| orbit(s, z).map(|w| w.point_set(np)))
        .collect::<Result<_, _>>()?;
    let orbit_balls: Vec<PointSet> =
        orbit_sets.iter().map(|o| s.metric_ball_of_set(o, eps)).collect();

    let mut checked = 0u64;
    let mut passed = 0u64;
    let mut failed = 0u64;
    let mut details = Vec::new();
    let mut failures = Vec::new();
    let mut consider = |w: Walk| {
        let set = w.point_set(np);
        let ball = s.metric_ball_of_set(&set, eps);
        let witness =
            (0..np).find(|&z| orbit_sets[z].is_subset(&ball) && set.is_subset(&orbit_balls[z]));
        checked += 1;
        if witness.is_some() {
            passed += 1;
        } else {
            failed += 1;
            if failures.len() < DETAIL_CAP {
                failures.push(OrbitalDetail { walk: w.clone(), witness });
            }
        }
        if details.len() < DETAIL_CAP {
            details.push(OrbitalDetail { walk: w, witness });
        }
    };

    let walk_count = count_walks(&g, horizon);
    let mode = if walk_count <= limits.walk_cap {
        for w in enumerate_walks(&g, horizon, limits.walk_cap)? {
            consider(w);
        }
        OrbitalMode::Exhaustive
    } else {
        for k in 0..samples {
            consider(sample_walk(&g, k % np, horizon, seed.wrapping_add(k as u64))?);
        }
        OrbitalMode::Sampled { samples }
    };

    Ok(OrbitalReport {
        eps,
        delta,
        horizon,
        mode,
        seed,
        walk_count,
        checked,
        passed,
        failed,
        details,
        failures,
    })
}

/// Enumeration-backed twin of `trap_check`; see the module note on why this
/// shares no covering logic with the product search.
pub fn oracle_trap_check(
    s: &FiniteSystem,
    eps: u64,
    delta: u64,
    n: usize,
    limits: SearchLimits,
) -> Result<TrapCertificate, VerifierError> {
    require_eps(eps)?;
    let g = build_metric_graph(s, delta)?;
    match oracle::first_untrapped_walk(s, &g, eps, n, limits.walk_cap) {
        Ok(counterexample) => Ok(TrapCertificate {
            eps,
            source: g.source(),
            n,
            verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
            witness_mode: ORACLE_MODE,
            counterexample,
        }),
        Err(count) => Err(GraphError::WalkCapExceeded { count, cap: limits.walk_cap }.into()),
    }
}

/// Enumeration-backed twin of `cover_check`.
pub fn oracle_cover_check(
    s: &FiniteSystem,
    eps: u64,
    delta: u64,
    n: usize,
    limits: SearchLimits,
) -> Result<CoverCertificate, VerifierError> {
    require_eps(eps)?;
    let g = build_metric_graph(s, delta)?;
    match oracle::first_noncovering_walk(s, &g, eps, n, limits.walk_cap) {
        Ok(counterexample) => Ok(CoverCertificate {
            eps,
            source: g.source(),
            n,
            verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
            witness_mode: ORACLE_MODE,
            counterexample,
        }),
        Err(count) => Err(GraphError::WalkCapExceeded { count, cap: limits.walk_cap }.into()),
    }
}

/// Oracle trap verdicts for a whole (eps, n) grid at one delta, true = pass.
/// Row order follows `eps_list`, inner index is n from 0 to `max_n`.
pub fn oracle_trap_sweep(
    s: &FiniteSystem,
    delta: u64,
    eps_list: &[u64],
    max_n: usize,
    limits: SearchLimits,
) -> Result<Vec<Vec<bool>>, VerifierError> {
    let g = build_metric_graph(s, delta)?;
    oracle::trap_sweep(s, &g, eps_list, max_n, limits.walk_cap)
        .map_err(|count| GraphError::WalkCapExceeded { count, cap: limits.walk_cap }.into())
}

/// Oracle covering verdicts for a whole (eps, n) grid at one delta.
pub fn oracle_cover_sweep(
    s: &FiniteSystem,
    delta: u64,
    eps_list: &[u64],
    max_n: usize,
    limits: SearchLimits,
) -> Result<Vec<Vec<bool>>, VerifierError> {
    let g = build_metric_graph(s, delta)?;
    oracle::cover_sweep(s, &g, eps_list, max_n, limits.walk_cap)
        .map_err(|count| GraphError::WalkCapExceeded { count, cap: limits.walk_cap }.into())
}
