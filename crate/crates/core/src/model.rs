//! Core model: a finite point set with an exact integer metric and a map on
//! the points, plus the relation and set types everything else works over.
//!
//! All distances are scaled integers and every comparison is strict, so there
//! is no floating point and no tolerance anywhere in a verification path.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("failed to parse system file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("system must have at least one point")]
    NoPoints,
    #[error("scale must be positive")]
    ZeroScale,
    #[error("labels has {got} entries, expected {expected}")]
    LabelCount { got: usize, expected: usize },
    #[error("dist has {got} rows, expected {expected}")]
    DistRows { got: usize, expected: usize },
    #[error("dist row {row} has {got} entries, expected {expected}")]
    DistRowLen { row: usize, got: usize, expected: usize },
    #[error("map has {got} entries, expected {expected}")]
    MapLen { got: usize, expected: usize },
    #[error("dist[{i}][{i}] must be 0")]
    NonzeroDiagonal { i: usize },
    #[error("dist[{i}][{j}] = {a} but dist[{j}][{i}] = {b}")]
    Asymmetric { i: usize, j: usize, a: u64, b: u64 },
    #[error("dist[{i}][{j}] must be positive for distinct points")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error(
        "triangle inequality fails at ({i},{j},{k}): dist[{i}][{k}] > dist[{i}][{j}] + dist[{j}][{k}]"
    )]
    Triangle { i: usize, j: usize, k: usize },
    #[error("map[{i}] = {value} is out of range for {n} points")]
    MapRange { i: usize, value: usize, n: usize },
    #[error("threshold must be positive: a strict ball of radius 0 is empty")]
    ZeroThreshold,
    #[error("point index {index} out of range for {n} points")]
    PointRange { index: usize, n: usize },
    #[error("relation must contain the diagonal: missing ({i},{i})")]
    NotReflexive { i: usize },
    #[error("relation row {row} has width {got}, expected {expected}")]
    RelationShape { row: usize, got: usize, expected: usize },
    #[error("walk must contain at least one point")]
    EmptyWalk,
}

/// A finite metric space together with a self-map.
///
/// Invariants enforced at construction: the metric table is symmetric, zero
/// exactly on the diagonal, and satisfies the triangle inequality with exact
/// integer arithmetic; the map sends every index to a valid index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSystem {
    num_points: usize,
    labels: Option<Vec<String>>,
    scale: u64,
    dist: Vec<Vec<u64>>,
    map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SystemDoc {
    num_points: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
    scale: u64,
    dist: Vec<Vec<u64>>,
    map: Vec<usize>,
}

impl FiniteSystem {
    pub fn new(
        num_points: usize,
        labels: Option<Vec<String>>,
        scale: u64,
        dist: Vec<Vec<u64>>,
        map: Vec<usize>,
    ) -> Result<Self, ModelError> {
        if num_points == 0 {
            return Err(ModelError::NoPoints);
        }
        if scale == 0 {
            return Err(ModelError::ZeroScale);
        }
        if let Some(ref l) = labels {
            if l.len() != num_points {
                return Err(ModelError::LabelCount { got: l.len(), expected: num_points });
            }
        }
        if dist.len() != num_points {
            return Err(ModelError::DistRows { got: dist.len(), expected: num_points });
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != num_points {
                return Err(ModelError::DistRowLen { row, got: r.len(), expected: num_points });
            }
        }
        if map.len() != num_points {
            return Err(ModelError::MapLen { got: map.len(), expected: num_points });
        }
        for i in 0..num_points {
            if dist[i][i] != 0 {
                return Err(ModelError::NonzeroDiagonal { i });
            }
        }
        for i in 0..num_points {
            for j in (i + 1)..num_points {
                if dist[i][j] != dist[j][i] {
                    return Err(ModelError::Asymmetric { i, j, a: dist[i][j], b: dist[j][i] });
                }
                if dist[i][j] == 0 {
                    return Err(ModelError::ZeroOffDiagonal { i, j });
                }
            }
        }
        // First failing triple in lexicographic (i, j, k) order.
        for i in 0..num_points {
            for j in 0..num_points {
                for k in 0..num_points {
                    if dist[i][k] > dist[i][j] + dist[j][k] {
                        return Err(ModelError::Triangle { i, j, k });
                    }
                }
            }
        }
        for (i, &value) in map.iter().enumerate() {
            if value >= num_points {
                return Err(ModelError::MapRange { i, value, n: num_points });
            }
        }
        Ok(FiniteSystem { num_points, labels, scale, dist, map })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[i].as_str())
    }

    pub fn dist(&self, i: usize, j: usize) -> u64 {
        self.dist[i][j]
    }

    pub fn map(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map_table(&self) -> &[usize] {
        &self.map
    }

    /// Largest attained distance.
    pub fn diameter(&self) -> u64 {
        let mut d = 0;
        for row in &self.dist {
            for &v in row {
                d = d.max(v);
            }
        }
        d
    }

    /// Strict ball: every point at distance < eps of `center`.
    pub fn metric_ball(&self, center: usize, eps: u64) -> PointSet {
        let mut s = PointSet::empty(self.num_points);
        for q in 0..self.num_points {
            if self.dist[center][q] < eps {
                s.insert(q);
            }
        }
        s
    }

    /// Union of strict balls over the members of `set`.
    pub fn metric_ball_of_set(&self, set: &PointSet, eps: u64) -> PointSet {
        let mut out = PointSet::empty(self.num_points);
        for p in set.iter() {
            for q in 0..self.num_points {
                if self.dist[p][q] < eps {
                    out.insert(q);
                }
            }
        }
        out
    }
}

/// Parse and validate a system document. Validation reports the first failing
/// index or triple, in the order the table is scanned.
pub fn load_system(text: &str) -> Result<FiniteSystem, ModelError> {
    let doc: SystemDoc = serde_json::from_str(text)?;
    FiniteSystem::new(doc.num_points, doc.labels, doc.scale, doc.dist, doc.map)
}

/// Canonical serialization: fixed key order, two-space indent, LF line
/// endings, trailing newline. Byte-identical for equal systems.
pub fn save_system(s: &FiniteSystem) -> String {
    let doc = SystemDoc {
        num_points: s.num_points,
        labels: s.labels.clone(),
        scale: s.scale,
        dist: s.dist.clone(),
        map: s.map.clone(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("system serialization cannot fail");
    out.push('\n');
    out
}

/// The relation { (x, y) : dist(x, y) < eps }. Rejects eps = 0, whose strict
/// ball is empty and which therefore generates no entourage.
pub fn metric_entourage(s: &FiniteSystem, eps: u64) -> Result<Entourage, ModelError> {
    if eps == 0 {
        return Err(ModelError::ZeroThreshold);
    }
    let n = s.num_points();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = FixedBitSet::with_capacity(n);
        for j in 0..n {
            if s.dist(i, j) < eps {
                row.insert(j);
            }
        }
        rows.push(row);
    }
    Ok(Entourage { num_points: n, rows })
}

/// A reflexive relation on the points, stored as bitset rows for
/// word-parallel composition and ball queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entourage {
    num_points: usize,
    rows: Vec<FixedBitSet>,
}

impl Entourage {
    /// The diagonal relation.
    pub fn diagonal(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(i);
            rows.push(row);
        }
        Entourage { num_points: n, rows }
    }

    /// The all-pairs relation.
    pub fn complete(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert_range(..);
            rows.push(row);
        }
        Entourage { num_points: n, rows }
    }

    /// Diagonal plus the given pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, ModelError> {
        let mut e = Entourage::diagonal(n);
        for &(i, j) in pairs {
            if i >= n {
                return Err(ModelError::PointRange { index: i, n });
            }
            if j >= n {
                return Err(ModelError::PointRange { index: j, n });
            }
            e.rows[i].insert(j);
        }
        Ok(e)
    }

    /// Validates width and reflexivity of caller-supplied rows.
    pub fn try_from_rows(rows: Vec<FixedBitSet>) -> Result<Self, ModelError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(ModelError::RelationShape { row, got: r.len(), expected: n });
            }
        }
        for (i, r) in rows.iter().enumerate() {
            if !r.contains(i) {
                return Err(ModelError::NotReflexive { i });
            }
        }
        Ok(Entourage { num_points: n, rows })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [FixedBitSet] {
        &mut self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.num_points {
            for j in self.rows[i].ones() {
                if !self.rows[j].contains(i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_subset(&self, other: &Entourage) -> bool {
        debug_assert_eq!(self.num_points, other.num_points);
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// Number of related pairs, diagonal included.
    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }
}

/// A subset of the points of one system, fixed width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        PointSet { bits }
    }

    pub fn singleton(n: usize, p: usize) -> Self {
        let mut s = PointSet::empty(n);
        s.insert(p);
        s
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self, ModelError> {
        let mut s = PointSet::empty(n);
        for &i in indices {
            if i >= n {
                return Err(ModelError::PointRange { index: i, n });
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Width of the ambient point set, not the member count.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, p: usize) {
        self.bits.insert(p);
    }

    pub fn contains(&self, p: usize) -> bool {
        self.bits.contains(p)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn min_element(&self) -> Option<usize> {
        self.bits.ones().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }
}

/// A nonempty finite sequence of point indices. Its length is the number of
/// steps, one less than the number of points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    points: Vec<usize>,
}

impl Walk {
    pub fn new(num_points: usize, points: Vec<usize>) -> Result<Self, ModelError> {
        if points.is_empty() {
            return Err(ModelError::EmptyWalk);
        }
        for &p in &points {
            if p >= num_points {
                return Err(ModelError::PointRange { index: p, n: num_points });
            }
        }
        Ok(Walk { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn start(&self) -> usize {
        self.points[0]
    }

    pub fn end(&self) -> usize {
        *self.points.last().unwrap()
    }

    pub fn point_set(&self, n: usize) -> PointSet {
        let mut s = PointSet::empty(n);
        for &p in &self.points {
            s.insert(p);
        }
        s
    }

    /// First step violating d(f(x_i), x_{i+1}) < delta, if any.
    pub fn first_metric_violation(&self, s: &FiniteSystem, delta: u64) -> Option<usize> {
        (0..self.steps()).find(|&i| s.dist(s.map(self.points[i]), self.points[i + 1]) >= delta)
    }

    /// First step with (f(x_i), x_{i+1}) outside the relation, if any.
    pub fn first_relation_violation(&self, s: &FiniteSystem, d: &Entourage) -> Option<usize> {
        (0..self.steps()).find(|&i| !d.contains(s.map(self.points[i]), self.points[i + 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_system() -> FiniteSystem {
        // 0 -> 1 -> 2 -> 2 on a line, spacing 10.
        FiniteSystem::new(
            3,
            None,
            10,
            vec![vec![0, 10, 20], vec![10, 0, 10], vec![20, 10, 0]],
            vec![1, 2, 2],
        )
        .unwrap()
    }

    #[test]
    fn one_point_system_is_valid() {
        let s = FiniteSystem::new(1, None, 1, vec![vec![0]], vec![0]).unwrap();
        assert_eq!(s.num_points(), 1);
        assert_eq!(s.map(0), 0);
        assert_eq!(s.diameter(), 0);
    }

    #[test]
    fn triangle_violation_reports_first_triple() {
        let err = FiniteSystem::new(
            3,
            None,
            1,
            vec![vec![0, 3, 7], vec![3, 0, 3], vec![7, 3, 0]],
            vec![0, 1, 2],
        )
        .unwrap_err();
        match err {
            ModelError::Triangle { i, j, k } => assert_eq!((i, j, k), (0, 1, 2)),
            other => panic!("expected triangle error, got {other}"),
        }
    }

    #[test]
    fn asymmetry_and_zero_offdiagonal_are_rejected() {
        let err = FiniteSystem::new(
            2,
            None,
            1,
            vec![vec![0, 1], vec![2, 0]],
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::Asymmetric { i: 0, j: 1, .. }));

        let err = FiniteSystem::new(
            2,
            None,
            1,
            vec![vec![0, 0], vec![0, 0]],
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::ZeroOffDiagonal { i: 0, j: 1 }));
    }

    #[test]
    fn map_out_of_range_is_rejected() {
        let err =
            FiniteSystem::new(2, None, 1, vec![vec![0, 5], vec![5, 0]], vec![0, 2]).unwrap_err();
        assert!(matches!(err, ModelError::MapRange { i: 1, value: 2, n: 2 }));
    }

    #[test]
    fn save_then_load_round_trips() {
        let s = chain_system();
        let text = save_system(&s);
        let back = load_system(&text).unwrap();
        assert_eq!(s, back);
        // Canonical form is idempotent.
        assert_eq!(text, save_system(&back));
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn save_key_order_is_fixed() {
        let s = FiniteSystem::new(
            2,
            Some(vec!["a".into(), "b".into()]),
            1,
            vec![vec![0, 1], vec![1, 0]],
            vec![1, 0],
        )
        .unwrap();
        let text = save_system(&s);
        let np = text.find("\"num_points\"").unwrap();
        let la = text.find("\"labels\"").unwrap();
        let sc = text.find("\"scale\"").unwrap();
        let di = text.find("\"dist\"").unwrap();
        let ma = text.find("\"map\"").unwrap();
        assert!(np < la && la < sc && sc < di && di < ma);
        // No labels key when labels are absent.
        let bare = FiniteSystem::new(2, None, 1, vec![vec![0, 1], vec![1, 0]], vec![1, 0]).unwrap();
        assert!(!save_system(&bare).contains("labels"));
    }

    #[test]
    fn metric_entourage_thresholds_strictly() {
        let s = chain_system();
        let e = metric_entourage(&s, 11).unwrap();
        assert!(e.contains(0, 1));
        assert!(!e.contains(0, 2));
        assert!(e.contains(0, 0));
        assert!(e.is_symmetric());

        // eps = 1 relates nothing but equal points.
        let d = metric_entourage(&s, 1).unwrap();
        assert_eq!(d, Entourage::diagonal(3));

        assert!(matches!(metric_entourage(&s, 0), Err(ModelError::ZeroThreshold)));
    }

    #[test]
    fn metric_entourages_nest_with_eps() {
        let s = chain_system();
        let small = metric_entourage(&s, 5).unwrap();
        let big = metric_entourage(&s, 15).unwrap();
        assert!(small.is_subset(&big));
    }

    #[test]
    fn entourage_must_be_reflexive() {
        let mut rows = vec![FixedBitSet::with_capacity(2), FixedBitSet::with_capacity(2)];
        rows[0].insert(0);
        let err = Entourage::try_from_rows(rows).unwrap_err();
        assert!(matches!(err, ModelError::NotReflexive { i: 1 }));
    }

    #[test]
    fn walk_checks_indices_and_steps() {
        assert!(matches!(Walk::new(3, vec![]), Err(ModelError::EmptyWalk)));
        assert!(matches!(Walk::new(3, vec![0, 3]), Err(ModelError::PointRange { index: 3, n: 3 })));
        let w = Walk::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(w.steps(), 2);
        let s = chain_system();
        // True orbit, so no violation at delta = 1.
        assert_eq!(w.first_metric_violation(&s, 1), None);
        // (f(0), 0) = (1, 0) is at distance 10.
        let stall = Walk::new(3, vec![0, 0]).unwrap();
        assert_eq!(stall.first_metric_violation(&s, 10), Some(0));
        assert_eq!(stall.first_metric_violation(&s, 11), None);
    }

    #[test]
    fn point_set_basics() {
        let mut a = PointSet::empty(4);
        a.insert(1);
        a.insert(3);
        assert_eq!(a.to_vec(), vec![1, 3]);
        assert_eq!(a.len(), 2);
        assert!(a.is_subset(&PointSet::full(4)));
        assert_eq!(PointSet::full(4).len(), 4);
        assert_eq!(a.min_element(), Some(1));
        assert!(PointSet::from_indices(2, &[5]).is_err());
    }
}
