//! Selection of the optimal feasible value from a family of implicitly
//! represented sorted arrays, driven by a monotone feasibility predicate.
//!
//! Each array is nonincreasing in its index. Per round, every surviving
//! array contributes its window median weighted by window length; one
//! predicate call on the weighted median of those representatives discards
//! at least a quarter of the surviving entries, so the total number of
//! predicate calls is O(log(N + M)).

use std::fmt;

/// A family of `arrays()` implicit arrays, each nonincreasing in `t`.
pub trait CandidateFamily {
    fn arrays(&self) -> usize;
    fn len(&self, array: usize) -> usize;
    /// Entry `t` of `array`; must satisfy `eval(i, t) >= eval(i, t + 1)`.
    fn eval(&self, array: usize, t: usize) -> f64;
}

/// Explicit family, used by tests and small callers.
impl CandidateFamily for Vec<Vec<f64>> {
    fn arrays(&self) -> usize {
        self.len()
    }
    fn len(&self, array: usize) -> usize {
        self[array].len()
    }
    fn eval(&self, array: usize, t: usize) -> f64 {
        self[array][t]
    }
}

/// Which side of the threshold the predicate accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `test` holds for all values above some threshold; the search
    /// returns the smallest feasible entry.
    FeasibleAbove,
    /// `test` holds for all values below some threshold; the search
    /// returns the largest feasible entry.
    FeasibleBelow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    NoFeasibleCandidate,
    EmptyFamily,
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::NoFeasibleCandidate => write!(f, "no candidate satisfies the predicate"),
            SearchError::EmptyFamily => write!(f, "candidate family is empty"),
        }
    }
}

impl std::error::Error for SearchError {}

/// Counters exposed for the predicate-call budget assertions.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub predicate_calls: usize,
    pub rounds: usize,
}

/// Optimal feasible entry of the family under a monotone predicate.
pub fn optimal_feasible<F, P>(family: &F, direction: Direction, test: P) -> Result<f64, SearchError>
where
    F: CandidateFamily + ?Sized,
    P: FnMut(f64) -> bool,
{
    optimal_feasible_with_stats(family, direction, test).map(|(v, _)| v)
}

/// Same as [`optimal_feasible`], also returning call counters.
pub fn optimal_feasible_with_stats<F, P>(
    family: &F,
    direction: Direction,
    mut test: P,
) -> Result<(f64, SearchStats), SearchError>
where
    F: CandidateFamily + ?Sized,
    P: FnMut(f64) -> bool,
{
    if family.arrays() == 0 {
        return Err(SearchError::EmptyFamily);
    }
    match direction {
        Direction::FeasibleAbove => search_above(family, |i, t| family.eval(i, t), &mut test),
        // Order reversal: negate values and flip index order, then the
        // feasible-above core finds the mirrored optimum.
        Direction::FeasibleBelow => {
            let flipped = |i: usize, t: usize| -family.eval(i, family.len(i) - 1 - t);
            search_above(family, flipped, &mut |v: f64| test(-v)).map(|(v, s)| (-v, s))
        }
    }
}

/// Core: smallest feasible value, where feasibility is monotone upward
/// and `value(i, t)` is nonincreasing in `t`.
fn search_above<F, V, P>(family: &F, value: V, test: &mut P) -> Result<(f64, SearchStats), SearchError>
where
    F: CandidateFamily + ?Sized,
    V: Fn(usize, usize) -> f64,
    P: FnMut(f64) -> bool,
{
    // Surviving window [lo, hi) per array. Entries before lo are known
    // infeasible-side removals... entries at or after hi are at or above a
    // recorded feasible value.
    let m = family.arrays();
    let mut windows: Vec<(usize, usize)> = (0..m).map(|i| (0, family.len(i))).collect();
    let mut best: Option<f64> = None;
    let mut stats = SearchStats::default();

    loop {
        // Representative per surviving array: the middle entry of the
        // window, weighted by window length.
        let mut reps: Vec<(f64, usize, usize)> = Vec::new();
        let mut surviving = 0usize;
        for (i, &(lo, hi)) in windows.iter().enumerate() {
            if lo >= hi {
                continue;
            }
            surviving += hi - lo;
            let mid = lo + (hi - lo) / 2;
            reps.push((value(i, mid), hi - lo, i));
        }
        if surviving == 0 {
            break;
        }
        stats.rounds += 1;

        // Weighted median of representative values.
        reps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: usize = reps.iter().map(|r| r.1).sum();
        let mut acc = 0usize;
        let mut median = reps[reps.len() - 1].0;
        for &(v, w, _) in &reps {
            acc += w;
            if 2 * acc >= total {
                median = v;
                break;
            }
        }

        stats.predicate_calls += 1;
        if test(median) {
            // Feasible: median is a candidate answer; everything at or
            // above it cannot beat it.
            best = Some(match best {
                Some(b) if b <= median => b,
                _ => median,
            });
            for (i, w) in windows.iter_mut().enumerate() {
                // Values ≥ median form a prefix of the nonincreasing array.
                let cut = partition_point(w.0, w.1, |t| value(i, t) >= median);
                w.0 = w.0.max(cut);
            }
        } else {
            // Infeasible: every entry ≤ median is infeasible too.
            for (i, w) in windows.iter_mut().enumerate() {
                // Values > median form a prefix; the rest is discarded.
                let cut = partition_point(w.0, w.1, |t| value(i, t) > median);
                w.1 = w.1.min(cut);
            }
        }
    }

    match best {
        Some(v) => Ok((v, stats)),
        None => Err(SearchError::NoFeasibleCandidate),
    }
}

/// First index in `[lo, hi)` where `pred` turns false (entries satisfying
/// `pred` form a prefix).
fn partition_point<P: Fn(usize) -> bool>(lo: usize, hi: usize, pred: P) -> usize {
    let (mut a, mut b) = (lo, hi);
    while a < b {
        let mid = a + (b - a) / 2;
        if pred(mid) {
            a = mid + 1;
        } else {
            b = mid;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_picks_largest_feasible() {
        let fam = vec![vec![9.0, 7.0, 5.0], vec![8.0, 4.0, 2.0]];
        let got = optimal_feasible(&fam, Direction::FeasibleBelow, |v| v <= 5.5).unwrap();
        assert_eq!(got, 5.0);
    }

    #[test]
    fn duplicates_are_harmless() {
        let fam = vec![vec![3.0], vec![3.0]];
        let got = optimal_feasible(&fam, Direction::FeasibleBelow, |_| true).unwrap();
        assert_eq!(got, 3.0);
    }

    #[test]
    fn exact_threshold_entry() {
        let fam = vec![vec![10.0, 6.0, 2.0]];
        let got = optimal_feasible(&fam, Direction::FeasibleBelow, |v| v <= 6.0).unwrap();
        assert_eq!(got, 6.0);
    }

    #[test]
    fn above_picks_smallest_feasible() {
        let fam = vec![vec![9.0, 7.0, 5.0], vec![8.0, 4.0, 2.0]];
        let got = optimal_feasible(&fam, Direction::FeasibleAbove, |v| v >= 4.5).unwrap();
        assert_eq!(got, 5.0);
    }

    #[test]
    fn no_feasible_candidate() {
        let fam = vec![vec![3.0, 1.0]];
        let err = optimal_feasible(&fam, Direction::FeasibleBelow, |v| v <= 0.5).unwrap_err();
        assert_eq!(err, SearchError::NoFeasibleCandidate);
    }

    #[test]
    fn empty_family() {
        let fam: Vec<Vec<f64>> = Vec::new();
        let err = optimal_feasible(&fam, Direction::FeasibleBelow, |_| true).unwrap_err();
        assert_eq!(err, SearchError::EmptyFamily);
    }

    #[test]
    fn ragged_and_empty_rows() {
        let fam = vec![vec![], vec![7.0, 3.0], vec![5.0]];
        let got = optimal_feasible(&fam, Direction::FeasibleBelow, |v| v <= 6.0).unwrap();
        assert_eq!(got, 5.0);
    }
}
