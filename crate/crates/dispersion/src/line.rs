//! Decision and optimization solvers for max-size squares and max-radius
//! disks centered on a segment.
//!
//! The decision side is a greedy sweep over feasible intervals that
//! tracks interference between adjacent intervals. The optimization side
//! brackets the optimum with a candidate family of equation roots (one
//! sorted array per ordered pair of interval-endpoint functions) and
//! selects the largest feasible candidate by matrix search.

use std::fmt;

use crate::geom::{self, GeomError, OpenInterval, Point, Segment};
use crate::matrix_search::{self, CandidateFamily, Direction, SearchError};
use crate::par;
use crate::tol;

/// Distance metric for the two segment problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Disk,
    Square,
}

/// Half width of the forbidden interval of a point at height `y`, as a
/// function of the size parameter. Inactive points clamp to zero, which
/// keeps the endpoint functions defined (and monotone) on all of
/// `(0, inf)`; spurious roots are filtered by the feasibility predicate.
fn half_width(metric: Metric, y: f64, size: f64) -> f64 {
    match metric {
        Metric::Disk => (size * size - y * y).max(0.0).sqrt(),
        Metric::Square => size / 2.0,
    }
}

/// One endpoint of a feasible interval as a function of the size
/// parameter: a segment endpoint, or an edge of some point's forbidden
/// interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndpointFunc {
    Const(f64),
    /// Right edge `x + h(size)` of the forbidden interval of `(x, y)`;
    /// nondecreasing in the size.
    RightOfForbidden { x: f64, y: f64, metric: Metric },
    /// Left edge `x - h(size)`; nonincreasing in the size.
    LeftOfForbidden { x: f64, y: f64, metric: Metric },
}

impl EndpointFunc {
    pub fn eval(&self, size: f64) -> f64 {
        match *self {
            EndpointFunc::Const(c) => c,
            EndpointFunc::RightOfForbidden { x, y, metric } => x + half_width(metric, y, size),
            EndpointFunc::LeftOfForbidden { x, y, metric } => x - half_width(metric, y, size),
        }
    }
}

/// A witness placement: sorted center coordinates at the reported size.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub lambda: f64,
    pub centers: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineError {
    /// No positive size admits the requested number of centers.
    Infeasible,
    /// Nothing bounds the size from above (k = 1 and no demand points).
    Unbounded,
    Geom(GeomError),
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineError::Infeasible => write!(f, "no feasible placement for any positive size"),
            LineError::Unbounded => write!(f, "objective is unbounded"),
            LineError::Geom(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LineError {}

impl From<GeomError> for LineError {
    fn from(e: GeomError) -> Self {
        LineError::Geom(e)
    }
}

impl From<SearchError> for LineError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::NoFeasibleCandidate | SearchError::EmptyFamily => LineError::Infeasible,
        }
    }
}

/// Greedy center count on sorted disjoint closed intervals with minimum
/// spacing `delta`, carrying the last placed center across intervals.
///
/// An interval whose usable span is negative contributes nothing and does
/// not advance the carry.
pub fn count_on_intervals(intervals: &[(f64, f64)], delta: f64) -> i64 {
    let mut res = 0i64;
    let mut last = 0.0f64;
    for &(l, r) in intervals {
        let start = if res == 0 { l } else { l.max(last + delta) };
        let cnt = tol::floor_count((r - start) / delta) + 1;
        if cnt > 0 {
            res += cnt;
            last = start + (cnt - 1) as f64 * delta;
        }
    }
    res
}

/// Greedy witness: the first `k` centers of the sweep in
/// [`count_on_intervals`].
pub fn place_on_intervals(intervals: &[(f64, f64)], delta: f64, k: usize) -> Vec<f64> {
    let mut centers = Vec::with_capacity(k);
    let mut last = 0.0f64;
    for &(l, r) in intervals {
        let start = if centers.is_empty() { l } else { l.max(last + delta) };
        let cnt = tol::floor_count((r - start) / delta) + 1;
        if cnt > 0 {
            for t in 0..cnt {
                if centers.len() == k {
                    return centers;
                }
                // The last step may overshoot r by tolerance noise.
                centers.push((start + t as f64 * delta).min(r));
            }
            last = start + (cnt - 1) as f64 * delta;
        }
    }
    centers
}

fn forbidden_intervals(
    points: &[Point],
    size: f64,
    metric: Metric,
) -> Result<Vec<OpenInterval>, GeomError> {
    let results = par::map_slice(points, |p| match metric {
        Metric::Disk => geom::forbidden_interval_disk(p, size),
        Metric::Square => geom::forbidden_interval_square(p, size),
    });
    let mut out = Vec::with_capacity(points.len());
    for r in results {
        if let Some(iv) = r? {
            out.push(iv);
        }
    }
    Ok(out)
}

/// Maximum number of size-`s` squares placeable on the segment. Feasible
/// intervals do not interfere (forbidden width equals the spacing), so
/// the per-interval closed form sums directly.
pub fn count_squares(points: &[Point], segment: &Segment, s: f64) -> Result<i64, GeomError> {
    let forb = forbidden_intervals(points, s, Metric::Square)?;
    let feas = geom::feasible_set(segment, &forb);
    Ok(feas
        .intervals
        .iter()
        .map(|&(l, r)| tol::floor_count((r - l) / s) + 1)
        .sum())
}

/// Maximum number of radius-`lambda` disk centers with spacing
/// `lambda / alpha`.
pub fn count_disks(
    points: &[Point],
    segment: &Segment,
    lambda: f64,
    alpha: f64,
) -> Result<i64, GeomError> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(GeomError::InvalidGeometry("alpha must be positive"));
    }
    let delta = lambda / alpha;
    let forb = forbidden_intervals(points, lambda, Metric::Disk)?;
    let feas = geom::feasible_set(segment, &forb);
    Ok(count_on_intervals(&feas.intervals, delta))
}

/// Positive root of `right(s) - left(s) = t * s / alpha`, if one exists in
/// `(0, lambda_max]`. The left side is strictly decreasing, so bisection
/// converges to relative precision `tol::REL`.
pub fn candidate_root(
    left: &EndpointFunc,
    right: &EndpointFunc,
    t: usize,
    alpha: f64,
    lambda_max: f64,
) -> Option<f64> {
    let g = |s: f64| right.eval(s) - left.eval(s) - t as f64 * s / alpha;
    if g(0.0) <= 0.0 || g(lambda_max) >= 0.0 {
        return None;
    }
    let (mut lo, mut hi) = (0.0f64, lambda_max);
    for _ in 0..200 {
        if hi - lo <= tol::REL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Candidate family for the segment optimizers: one array of equation
/// roots per ordered endpoint-function pair, plus singleton
/// endpoint-clearance candidates covering degenerate hosts. Missing roots
/// are encoded as an over-large sentinel, which keeps every array sorted
/// and can never win (the predicate rejects it).
struct SegmentFamily {
    pairs: Vec<(EndpointFunc, EndpointFunc)>,
    singles: Vec<f64>,
    k: usize,
    alpha: f64,
    lambda_max: f64,
}

impl CandidateFamily for SegmentFamily {
    fn arrays(&self) -> usize {
        self.pairs.len() + self.singles.len()
    }

    fn len(&self, array: usize) -> usize {
        if array < self.pairs.len() {
            self.k
        } else {
            1
        }
    }

    fn eval(&self, array: usize, t: usize) -> f64 {
        if array < self.pairs.len() {
            let (l, r) = &self.pairs[array];
            candidate_root(l, r, t, self.alpha, self.lambda_max).unwrap_or(2.0 * self.lambda_max)
        } else {
            self.singles[array - self.pairs.len()]
        }
    }
}

fn build_family(
    points: &[Point],
    segment: &Segment,
    k: usize,
    alpha: f64,
    metric: Metric,
) -> SegmentFamily {
    let span = segment.len();
    let max_clear = points
        .iter()
        .map(|p| {
            let cx = p.x.clamp(segment.a, segment.b);
            (p.x - cx).hypot(p.y)
        })
        .fold(0.0f64, f64::max);
    let lambda_max = (1.0 + alpha.max(1.0 / alpha)) * (span + 2.0 * max_clear) + 1.0;

    let mut lefts = vec![EndpointFunc::Const(segment.a)];
    let mut rights = vec![EndpointFunc::Const(segment.b)];
    for p in points {
        lefts.push(EndpointFunc::RightOfForbidden {
            x: p.x,
            y: p.y,
            metric,
        });
        rights.push(EndpointFunc::LeftOfForbidden {
            x: p.x,
            y: p.y,
            metric,
        });
    }
    let mut pairs = Vec::with_capacity(lefts.len() * rights.len());
    for l in &lefts {
        for r in &rights {
            pairs.push((*l, *r));
        }
    }
    // Clearance of each endpoint to each point: covers optima pinned on a
    // degenerate host where the pair equations plateau at zero.
    let mut singles = Vec::with_capacity(2 * points.len());
    for p in points {
        for &e in &[segment.a, segment.b] {
            let c = match metric {
                Metric::Disk => (p.x - e).hypot(p.y),
                Metric::Square => 2.0 * (p.x - e).abs().max(p.y.abs()),
            };
            if c > 0.0 {
                singles.push(c);
            }
        }
    }
    SegmentFamily {
        pairs,
        singles,
        k,
        alpha,
        lambda_max,
    }
}

fn validate_instance(points: &[Point], k: usize, alpha: f64) -> Result<(), LineError> {
    if k == 0 {
        return Err(LineError::Geom(GeomError::InvalidGeometry(
            "k must be at least 1",
        )));
    }
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(LineError::Geom(GeomError::InvalidGeometry(
            "alpha must be positive",
        )));
    }
    for p in points {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(LineError::Geom(GeomError::InvalidGeometry(
                "non-finite coordinate",
            )));
        }
    }
    Ok(())
}

/// Largest square size admitting `k` squares, with a witness placement.
pub fn solve_squares(
    points: &[Point],
    segment: &Segment,
    k: usize,
) -> Result<(f64, Placement), LineError> {
    validate_instance(points, k, 1.0)?;
    if points.is_empty() && k == 1 {
        return Err(LineError::Unbounded);
    }

    // Pre-search over the activation thresholds 2|y_i| to bracket the
    // optimum, then drop points that can never matter below the bracket's
    // upper end.
    let mut thresholds: Vec<f64> = points.iter().map(|p| 2.0 * p.y.abs()).collect();
    thresholds.retain(|t| *t > 0.0);
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    let feasible_at = |s: f64| -> Result<bool, GeomError> {
        Ok(count_squares(points, segment, s)? >= k as i64)
    };
    // Largest threshold index that is still feasible, if any.
    let mut lo_idx: isize = -1;
    let (mut a, mut b) = (0isize, thresholds.len() as isize - 1);
    while a <= b {
        let mid = a + (b - a) / 2;
        if feasible_at(thresholds[mid as usize])? {
            lo_idx = mid;
            a = mid + 1;
        } else {
            b = mid - 1;
        }
    }
    let upper = thresholds
        .get((lo_idx + 1) as usize)
        .copied()
        .unwrap_or(f64::INFINITY);
    let active: Vec<Point> = points
        .iter()
        .filter(|p| 2.0 * p.y.abs() < upper)
        .cloned()
        .collect();

    let family = build_family(&active, segment, k, 1.0, Metric::Square);
    let best = matrix_search::optimal_feasible(&family, Direction::FeasibleBelow, |s| {
        feasible_at(s).unwrap_or(false)
    })?;
    let forb = forbidden_intervals(points, best, Metric::Square)?;
    let feas = geom::feasible_set(segment, &forb);
    let centers = place_on_intervals(&feas.intervals, best, k);
    if centers.len() < k {
        return Err(LineError::Infeasible);
    }
    Ok((
        best,
        Placement {
            lambda: best,
            centers,
        },
    ))
}

/// Largest disk radius admitting `k` centers at spacing `lambda / alpha`,
/// with a witness placement.
pub fn solve_disks(
    points: &[Point],
    segment: &Segment,
    k: usize,
    alpha: f64,
) -> Result<(f64, Placement), LineError> {
    validate_instance(points, k, alpha)?;
    if points.is_empty() && k == 1 {
        return Err(LineError::Unbounded);
    }
    let family = build_family(points, segment, k, alpha, Metric::Disk);
    let best = matrix_search::optimal_feasible(&family, Direction::FeasibleBelow, |lam| {
        count_disks(points, segment, lam, alpha)
            .map(|c| c >= k as i64)
            .unwrap_or(false)
    })?;
    let delta = best / alpha;
    let forb = forbidden_intervals(points, best, Metric::Disk)?;
    let feas = geom::feasible_set(segment, &forb);
    let centers = place_on_intervals(&feas.intervals, delta, k);
    if centers.len() < k {
        return Err(LineError::Infeasible);
    }
    Ok((
        best,
        Placement {
            lambda: best,
            centers,
        },
    ))
}
