//! Greedy center counting on a ring with fixed step, built on jump tables.
//!
//! The model is abstract: a ring of given circumference, a step length,
//! and sorted open forbidden spans all narrower than the step. Starting
//! from an anchor on a span boundary, centers are placed one step apart
//! until one lands strictly inside a span; the walk then restarts at that
//! span's right end (a "jump"). Jump destinations are found by residue
//! stabbing against a persistent segment tree, composed with binary
//! lifting, so one full lap costs O(log^2 m + log k) after O(m log m)
//! preprocessing.
//!
//! Positions are unrolled: span `i` of lap `L` lives at
//! `arcs[i] + L * circumference`, and residues are taken modulo the step
//! of the unrolled positions, which keeps the stabbing test exact across
//! the lap boundary.

use std::fmt;

use crate::par;
use crate::pst::VersionedTree;
use crate::tol;

/// Index sentinel: no jump destination within the doubled span range.
const INF: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct RingModel {
    pub circumference: f64,
    /// Required gap between consecutive centers (angular/arc-length units).
    pub step: f64,
    /// Merged open forbidden spans `(start, end)`, sorted by start,
    /// pairwise disjoint on the ring; `start` in `[0, circumference)`,
    /// `end - start < step`. The last span may wrap (`end` past the
    /// circumference).
    pub arcs: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RingError {
    ModelInvariantViolation(&'static str),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::ModelInvariantViolation(msg) => write!(f, "ring model invariant: {msg}"),
        }
    }
}

impl std::error::Error for RingError {}

impl RingModel {
    pub fn new(circumference: f64, step: f64, arcs: Vec<(f64, f64)>) -> Result<Self, RingError> {
        if !(circumference > 0.0) || !(step > 0.0) {
            return Err(RingError::ModelInvariantViolation(
                "circumference and step must be positive",
            ));
        }
        for w in arcs.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(RingError::ModelInvariantViolation("spans overlap"));
            }
        }
        for &(lo, hi) in &arcs {
            if !(lo >= 0.0) || lo >= circumference || hi <= lo {
                return Err(RingError::ModelInvariantViolation("bad span bounds"));
            }
            if hi - lo >= step {
                return Err(RingError::ModelInvariantViolation("span at least one step wide"));
            }
        }
        if let (Some(first), Some(last)) = (arcs.first(), arcs.last()) {
            if arcs.len() > 1 && last.1 > circumference && last.1 - circumference > first.0 {
                return Err(RingError::ModelInvariantViolation("wrap tail overlaps first span"));
            }
        }
        Ok(RingModel {
            circumference,
            step,
            arcs,
        })
    }

    fn left_abs(&self, doubled: usize) -> f64 {
        let m = self.arcs.len();
        self.arcs[doubled % m].0 + (doubled / m) as f64 * self.circumference
    }

    fn right_abs(&self, doubled: usize) -> f64 {
        let m = self.arcs.len();
        self.arcs[doubled % m].1 + (doubled / m) as f64 * self.circumference
    }
}

/// Which boundary of a span an anchor sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Residue-stabbing index: versions of the persistent tree correspond to
/// spans inserted in doubled circular order.
struct Stabber {
    /// Sorted distinct residues (and their +step copies).
    coords: Vec<f64>,
    tree: VersionedTree,
    /// Tree version after inserting span `0..=i`.
    version_at: Vec<usize>,
    step: f64,
}

impl Stabber {
    fn coord_index(&self, v: f64) -> usize {
        // Exact match: every queried value was inserted into `coords`.
        self.coords.partition_point(|c| *c < v)
    }

    /// Number of spans among the first `upto + 1` insertions whose open
    /// residue interval strictly contains `rho`.
    fn stab(&self, rho: f64, upto: usize) -> i64 {
        let version = self.version_at[upto];
        let a = self.coord_index(rho) + 1;
        let b = self.coord_index(rho + self.step) + 1;
        self.tree.query(a, version).unwrap() + self.tree.query(b, version).unwrap()
    }
}

/// Jump tables over the doubled span space.
pub struct JumpTables {
    /// `next[level][i]`: doubled index reached after `2^level` jumps.
    next: Vec<Vec<usize>>,
    /// `count[level][i]`: centers placed on the way (anchors inclusive,
    /// destination exclusive).
    count: Vec<Vec<i64>>,
    stabber: Stabber,
}

impl JumpTables {
    pub fn levels(&self) -> usize {
        self.next.len()
    }

    pub fn next(&self, level: usize, doubled: usize) -> Option<usize> {
        let v = self.next[level][doubled];
        (v != INF).then_some(v)
    }

    pub fn count(&self, level: usize, doubled: usize) -> i64 {
        self.count[level][doubled]
    }

    pub fn doubled_len(&self) -> usize {
        self.next[0].len()
    }
}

fn residue(pos: f64, step: f64) -> f64 {
    let r = pos - (pos / step).floor() * step;
    if r >= step || r < 0.0 {
        0.0
    } else {
        r
    }
}

/// Build the residue index and the lifted jump tables. `k` only widens
/// the lifting depth so a decision for `k` centers can descend in
/// O(log k); correctness is set by the span count.
pub fn build_jump_tables(model: &RingModel, k: usize) -> Result<JumpTables, RingError> {
    let m = model.arcs.len();
    if m == 0 {
        return Err(RingError::ModelInvariantViolation("no spans to index"));
    }
    let step = model.step;
    let eps = tol::abs();

    // Residues of every doubled endpoint, shared between insertion and
    // queries so equality is exact.
    let doubled = 2 * m;
    let lres: Vec<f64> = (0..doubled).map(|i| residue(model.left_abs(i), step)).collect();
    let rres: Vec<f64> = (0..doubled).map(|i| residue(model.right_abs(i), step)).collect();

    let mut coords: Vec<f64> = Vec::with_capacity(4 * doubled);
    for v in lres.iter().chain(rres.iter()) {
        coords.push(*v);
        coords.push(*v + step);
    }
    coords.sort_by(f64::total_cmp);
    coords.dedup();

    let mut tree = VersionedTree::new(coords.len()).map_err(|_| {
        RingError::ModelInvariantViolation("empty coordinate universe")
    })?;
    let mut version_at = vec![0usize; doubled];
    for i in 0..doubled {
        // Open residue interval of span i, unwrapped onto [0, 2*step) and
        // shrunk by the tolerance so boundary-grazing walks stay legal.
        let lo = lres[i];
        let hi = if rres[i] > lres[i] {
            rres[i]
        } else {
            rres[i] + step
        };
        let a = coords.partition_point(|c| *c <= lo + eps) + 1;
        let b = coords.partition_point(|c| *c < hi - eps);
        let prev = if i == 0 { 0 } else { version_at[i - 1] };
        version_at[i] = if a <= b {
            tree.add(a, b).unwrap()
        } else {
            prev
        };
    }
    let stabber = Stabber {
        coords,
        tree,
        version_at,
        step,
    };

    let max_hops = m.max(k).max(1);
    let levels = (usize::BITS - max_hops.leading_zeros()) as usize + 1;
    let mut next = vec![vec![INF; doubled]; levels];
    let mut count = vec![vec![0i64; doubled]; levels];

    for i in 0..doubled {
        let rho = rres[i];
        if let Some(dest) = first_stab(&stabber, rho, i, m, doubled) {
            next[0][i] = dest;
            count[0][i] =
                tol::floor_count((model.left_abs(dest) - model.right_abs(i)) / step) + 1;
        }
    }
    for lvl in 1..levels {
        for i in 0..doubled {
            let mid = next[lvl - 1][i];
            if mid != INF && next[lvl - 1][mid] != INF {
                next[lvl][i] = next[lvl - 1][mid];
                count[lvl][i] = count[lvl - 1][i] + count[lvl - 1][mid];
            }
        }
    }

    Ok(JumpTables {
        next,
        count,
        stabber,
    })
}

/// Earliest doubled span in `(after, after + m]` whose residue interval
/// strictly contains `rho`.
fn first_stab(stabber: &Stabber, rho: f64, after: usize, m: usize, doubled: usize) -> Option<usize> {
    let lo = after + 1;
    let hi = (after + m).min(doubled - 1);
    if lo > hi {
        return None;
    }
    let base = stabber.stab(rho, after);
    if stabber.stab(rho, hi) <= base {
        return None;
    }
    let (mut a, mut b) = (lo, hi);
    while a < b {
        let mid = a + (b - a) / 2;
        if stabber.stab(rho, mid) > base {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    Some(a)
}

/// Centers placed by the anchored greedy walk, going exactly once around
/// from the chosen boundary of span `arc` and honoring the closing gap
/// back to the anchor.
pub fn cal(model: &RingModel, tables: &JumpTables, arc: usize, side: Side) -> i64 {
    let m = model.arcs.len();
    let anchor = match side {
        Side::Left => model.left_abs(arc),
        Side::Right => model.right_abs(arc),
    };
    let target = anchor + model.circumference;
    let step = model.step;
    let rho = residue(anchor, step);

    let mut num = 0i64;
    let first = first_stab(&tables.stabber, rho, arc, m, 2 * m)
        .filter(|&d| model.right_abs(d) <= target);
    let mut walk_from = anchor;
    if let Some(d0) = first {
        num += tol::floor_count((model.left_abs(d0) - anchor) / step) + 1;
        let mut x = d0;
        for lvl in (0..tables.levels()).rev() {
            let nx = tables.next[lvl][x];
            if nx != INF && model.right_abs(nx) <= target {
                num += tables.count[lvl][x];
                x = nx;
            }
        }
        walk_from = model.right_abs(x);
    }
    // Unobstructed tail: centers from `walk_from` (inclusive) keeping the
    // closing gap to the anchor at least one step.
    let d = target - walk_from;
    let tail = tol::floor_count((d - step) / step) + 1;
    num + tail.max(0)
}

/// Best anchored count over all span boundaries.
pub fn count_ring(model: &RingModel, tables: &JumpTables) -> i64 {
    let m = model.arcs.len();
    par::max_over(2 * m, |i| {
        let (arc, side) = if i < m {
            (i, Side::Right)
        } else {
            (i - m, Side::Left)
        };
        cal(model, tables, arc, side)
    })
    .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> RingModel {
        RingModel::new(10.0, 3.0, vec![(4.0, 5.0), (7.5, 8.5)]).unwrap()
    }

    #[test]
    fn rejects_wide_span() {
        let err = RingModel::new(10.0, 3.0, vec![(4.0, 7.5)]).unwrap_err();
        assert!(matches!(err, RingError::ModelInvariantViolation(_)));
    }

    #[test]
    fn first_jumps_match_hand_simulation() {
        let model = model();
        let t = build_jump_tables(&model, 4).unwrap();
        // From r=5: stepping by 3 lands at 8, inside (7.5, 8.5).
        assert_eq!(t.next(0, 0), Some(1));
        assert_eq!(t.count(0, 0), 1);
        // From r=8.5: 11.5 is clear, 14.5 lies inside (4,5) next lap.
        assert_eq!(t.next(0, 1), Some(2));
        assert_eq!(t.count(0, 1), 2);
    }

    #[test]
    fn lifting_identities() {
        let model = model();
        let t = build_jump_tables(&model, 4).unwrap();
        for lvl in 1..t.levels() {
            for i in 0..t.doubled_len() {
                match t.next(lvl - 1, i).and_then(|mid| t.next(lvl - 1, mid)) {
                    Some(two) => {
                        assert_eq!(t.next(lvl, i), Some(two));
                        let mid = t.next(lvl - 1, i).unwrap();
                        assert_eq!(t.count(lvl, i), t.count(lvl - 1, i) + t.count(lvl - 1, mid));
                    }
                    None => assert_eq!(t.next(lvl, i), None),
                }
            }
        }
    }

    #[test]
    fn cal_goes_once_around() {
        let model = model();
        let t = build_jump_tables(&model, 4).unwrap();
        // Centers 5, 8.5, 11.5; closing gap 3.5 >= 3.
        assert_eq!(cal(&model, &t, 0, Side::Right), 3);
        // Centers 8.5, 11.5, 15(=5).
        assert_eq!(cal(&model, &t, 1, Side::Right), 3);
        assert_eq!(count_ring(&model, &t), 3);
    }

    #[test]
    fn no_span_hit_within_lap() {
        // A single tiny span: the walk from its right edge clears a whole
        // lap without stabbing anything except the lap copy.
        let model = RingModel::new(10.0, 3.0, vec![(4.0, 4.2)]).unwrap();
        let t = build_jump_tables(&model, 3).unwrap();
        // From 4.2: positions 7.2, 10.2, 13.2; 14.2 is beyond one lap.
        // Lap copy (14, 14.2): 13.2 not inside; closing gap handling only.
        assert_eq!(cal(&model, &t, 0, Side::Right), 3);
        // From the left edge 4.0: 7.0, 10.0, 13.0; 13.0 <= 14.0, gap 1.0 < 3 drops it.
        assert_eq!(cal(&model, &t, 0, Side::Left), 3);
    }
}
