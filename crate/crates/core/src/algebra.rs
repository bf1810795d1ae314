//! Relation algebra on entourages: composition, inverse, iterated
//! composition, balls, and the axioms a family must satisfy to be a base for
//! a uniformity.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::model::{Entourage, PointSet};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("entourages are over {left} and {right} points")]
    DimensionMismatch { left: usize, right: usize },
    #[error("iterated composition needs at least one factor")]
    ZeroIterations,
    #[error("uniformity check needs a nonempty family")]
    EmptyFamily,
    #[error("point index {index} out of range for {n} points")]
    PointRange { index: usize, n: usize },
}

fn check_dims(a: &Entourage, b: &Entourage) -> Result<(), AlgebraError> {
    if a.num_points() != b.num_points() {
        return Err(AlgebraError::DimensionMismatch {
            left: a.num_points(),
            right: b.num_points(),
        });
    }
    Ok(())
}

/// Relational composition: (x, z) is in the result iff some y has
/// (x, y) in `a` and (y, z) in `b`. Boolean matrix product on bitset rows.
pub fn compose(a: &Entourage, b: &Entourage) -> Result<Entourage, AlgebraError> {
    check_dims(a, b)?;
    let n = a.num_points();
    let mut out = Entourage::diagonal(n);
    for x in 0..n {
        let row = &mut out.rows_mut()[x];
        row.clear();
        for y in a.row(x).ones() {
            row.union_with(b.row(y));
        }
    }
    // Reflexivity of the factors carries over: (x,x) via y = x.
    debug_assert!((0..n).all(|x| out.contains(x, x)));
    Ok(out)
}

/// Transpose of the relation.
pub fn inverse(a: &Entourage) -> Entourage {
    let n = a.num_points();
    let mut out = Entourage::diagonal(n);
    for r in out.rows_mut() {
        r.clear();
    }
    for i in 0..n {
        for j in a.row(i).ones() {
            out.rows_mut()[j].insert(i);
        }
    }
    out
}

/// `a` composed with itself `n` times; n = 1 is `a` itself.
pub fn n_fold(a: &Entourage, n: usize) -> Result<Entourage, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::ZeroIterations);
    }
    let mut acc = a.clone();
    for _ in 1..n {
        acc = compose(&acc, a)?;
    }
    Ok(acc)
}

/// The ball of a point: everything the relation reaches from `p`.
pub fn ball(a: &Entourage, p: usize) -> Result<PointSet, AlgebraError> {
    let n = a.num_points();
    if p >= n {
        return Err(AlgebraError::PointRange { index: p, n });
    }
    let mut s = PointSet::empty(n);
    for q in a.row(p).ones() {
        s.insert(q);
    }
    Ok(s)
}

/// Union of balls over the members of `set`.
pub fn ball_set(a: &Entourage, set: &PointSet) -> Result<PointSet, AlgebraError> {
    let n = a.num_points();
    if set.universe() != n {
        return Err(AlgebraError::DimensionMismatch { left: n, right: set.universe() });
    }
    let mut out = PointSet::empty(n);
    for p in set.iter() {
        for q in a.row(p).ones() {
            out.insert(q);
        }
    }
    Ok(out)
}

/// One axiom's outcome; on failure, `witness` holds the family indices with
/// no qualifying smaller member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomOutcome {
    Pass,
    Fail { witness: Vec<usize> },
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomOutcome::Pass)
    }
}

/// Base-axiom report for a finite family of entourages.
#[derive(Debug, Clone)]
pub struct UniformityReport {
    /// Every two members contain a common member.
    pub intersection: AxiomOutcome,
    /// Every member contains some member composed with itself.
    pub composition: AxiomOutcome,
    /// Every member contains some member's inverse.
    pub inverse: AxiomOutcome,
    /// The intersection of the family is exactly the diagonal.
    pub separating: bool,
}

impl UniformityReport {
    pub fn all_pass(&self) -> bool {
        self.intersection.passed() && self.composition.passed() && self.inverse.passed()
    }
}

/// Checks the three base axioms plus separation for a nonempty family over a
/// common point set. Runs every search exhaustively; all verdicts are exact.
pub fn check_uniformity_base(family: &[Entourage]) -> Result<UniformityReport, AlgebraError> {
    let first = family.first().ok_or(AlgebraError::EmptyFamily)?;
    let n = first.num_points();
    for e in family {
        if e.num_points() != n {
            return Err(AlgebraError::DimensionMismatch { left: n, right: e.num_points() });
        }
    }

    let mut intersection = AxiomOutcome::Pass;
    'outer: for i in 0..family.len() {
        for j in 0..family.len() {
            let meet = intersect(&family[i], &family[j]);
            if !family.iter().any(|d| d.is_subset(&meet)) {
                intersection = AxiomOutcome::Fail { witness: vec![i, j] };
                break 'outer;
            }
        }
    }

    let mut composition = AxiomOutcome::Pass;
    for (i, e) in family.iter().enumerate() {
        let ok = family.iter().any(|d| match compose(d, d) {
            Ok(dd) => dd.is_subset(e),
            Err(_) => false,
        });
        if !ok {
            composition = AxiomOutcome::Fail { witness: vec![i] };
            break;
        }
    }

    let mut inv = AxiomOutcome::Pass;
    for (i, e) in family.iter().enumerate() {
        if !family.iter().any(|d| inverse(d).is_subset(e)) {
            inv = AxiomOutcome::Fail { witness: vec![i] };
            break;
        }
    }

    let mut meet = family[0].clone();
    for e in &family[1..] {
        meet = intersect(&meet, e);
    }
    let separating = meet == Entourage::diagonal(n);

    Ok(UniformityReport { intersection, composition, inverse: inv, separating })
}

fn intersect(a: &Entourage, b: &Entourage) -> Entourage {
    debug_assert_eq!(a.num_points(), b.num_points());
    let n = a.num_points();
    let mut out = Entourage::diagonal(n);
    for x in 0..n {
        let mut row: FixedBitSet = a.row(x).clone();
        row.intersect_with(b.row(x));
        out.rows_mut()[x] = row;
    }
    out
}
