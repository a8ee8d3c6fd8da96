//! Brute-force reference solvers, deliberately slow and deliberately
//! independent: legality is checked point-by-point with raw distance
//! comparisons, never through the interval machinery the main solvers
//! use, and the greedy sweeps are reimplemented from scratch.

use std::f64::consts::TAU;
use std::fmt;

use crate::geom::{CircleSpec, Point, Segment};
use crate::mofl::{KLinkResult, MoflGraph};
use crate::par;
use crate::tol;

#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_k: usize,
    pub max_nodes: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 64,
            max_k: 16,
            max_nodes: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded(&'static str),
    NoFeasiblePath,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded(what) => write!(f, "oracle budget exceeded: {what}"),
            OracleError::NoFeasiblePath => write!(f, "no placement satisfies the separation"),
        }
    }
}

impl std::error::Error for OracleError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteMetric {
    Disk,
    Square,
}

fn covers(metric: BruteMetric, p: &Point, x: f64, size: f64) -> bool {
    match metric {
        BruteMetric::Disk => (x - p.x).hypot(p.y) < size - tol::abs(),
        BruteMetric::Square => (x - p.x).abs().max(p.y.abs()) < size / 2.0 - tol::abs(),
    }
}

/// Exit coordinate of the forbidden region of `p` (the first legal
/// position to the right of `x` as far as `p` is concerned).
fn exit_of(metric: BruteMetric, p: &Point, size: f64) -> f64 {
    match metric {
        BruteMetric::Disk => p.x + (size * size - p.y * p.y).max(0.0).sqrt(),
        BruteMetric::Square => p.x + size / 2.0,
    }
}

/// Smallest legal position at or after `from`, or none before `b`.
fn next_legal(
    points: &[Point],
    metric: BruteMetric,
    size: f64,
    from: f64,
    b: f64,
) -> Option<f64> {
    let mut x = from;
    loop {
        if x > b + tol::abs() {
            return None;
        }
        match points.iter().find(|p| covers(metric, p, x, size)) {
            None => return Some(x.min(b)),
            Some(p) => x = exit_of(metric, p, size),
        }
    }
}

fn greedy_from(
    points: &[Point],
    metric: BruteMetric,
    size: f64,
    delta: f64,
    start: f64,
    b: f64,
) -> i64 {
    let mut count = 0i64;
    let mut x = start;
    loop {
        match next_legal(points, metric, size, x, b) {
            None => return count,
            Some(c) => {
                count += 1;
                x = c + delta;
            }
        }
    }
}

fn brute_count_segment(
    points: &[Point],
    segment: &Segment,
    size: f64,
    delta: f64,
    metric: BruteMetric,
    budget: &OracleBudget,
) -> Result<i64, OracleError> {
    if points.len() > budget.max_n {
        return Err(OracleError::BudgetExceeded("too many points"));
    }
    // Starts: the host start plus every forbidden exit; greedy from the
    // overall leftmost legal position is optimal on a line, the extra
    // starts are redundancy against a miscounted sweep.
    let mut starts = vec![segment.a];
    for p in points {
        let e = exit_of(metric, p, size);
        if e >= segment.a && e <= segment.b {
            starts.push(e);
        }
    }
    let best = par::max_over(starts.len(), |i| {
        greedy_from(points, metric, size, delta, starts[i], segment.b)
    });
    Ok(best.unwrap_or(0))
}

/// Reference count for the disk problem: clearance `lambda`, spacing
/// `lambda / alpha`.
pub fn brute_count_line(
    points: &[Point],
    segment: &Segment,
    lambda: f64,
    alpha: f64,
    budget: &OracleBudget,
) -> Result<i64, OracleError> {
    brute_count_segment(
        points,
        segment,
        lambda,
        lambda / alpha,
        BruteMetric::Disk,
        budget,
    )
}

/// Reference count for the square problem: side `s`, spacing `s`.
pub fn brute_count_squares(
    points: &[Point],
    segment: &Segment,
    s: f64,
    budget: &OracleBudget,
) -> Result<i64, OracleError> {
    brute_count_segment(points, segment, s, s, BruteMetric::Square, budget)
}

fn chord_covers(p: &Point, circle: &CircleSpec, angle: f64, lambda: f64) -> bool {
    circle.at(angle).dist(p) < lambda - tol::abs()
}

/// Angular exit of the forbidden arc of `p`, lifted to at least `angle`.
fn arc_exit(p: &Point, circle: &CircleSpec, angle: f64, lambda: f64) -> Option<f64> {
    let d = p.dist(&circle.center);
    if d == 0.0 {
        return None; // covers everything or nothing; caller checked coverage
    }
    let rc = circle.radius;
    let cos = (rc * rc + d * d - lambda * lambda) / (2.0 * rc * d);
    if cos < -1.0 {
        return None;
    }
    let phi = cos.clamp(-1.0, 1.0).acos();
    let mid = (p.y - circle.center.y).atan2(p.x - circle.center.x);
    // Covered angles are strictly inside one lap's arc, and arcs are at
    // most a lap wide, so the minimal lift to >= angle picks that lap.
    let mut exit = mid + phi;
    if exit < angle {
        exit += TAU * ((angle - exit) / TAU).ceil();
        while exit < angle {
            exit += TAU;
        }
    }
    Some(exit)
}

fn ring_next_legal(
    points: &[Point],
    circle: &CircleSpec,
    lambda: f64,
    from: f64,
    until: f64,
) -> Option<f64> {
    let mut a = from;
    loop {
        if a > until + tol::abs() {
            return None;
        }
        match points.iter().find(|p| chord_covers(p, circle, a, lambda)) {
            None => return Some(a),
            Some(p) => match arc_exit(p, circle, a, lambda) {
                Some(e) if e > a => a = e,
                _ => return None, // full-circle coverage
            },
        }
    }
}

/// Reference count for the circle problem: cut the ring at every
/// forbidden-arc endpoint plus `starts` even rotations, run the anchored
/// sweep on each cut, take the best.
pub fn brute_count_circle(
    points: &[Point],
    circle: &CircleSpec,
    lambda: f64,
    alpha: f64,
    starts: usize,
    budget: &OracleBudget,
) -> Result<i64, OracleError> {
    if points.len() > budget.max_n {
        return Err(OracleError::BudgetExceeded("too many points"));
    }
    let delta = lambda / alpha;
    let rc = circle.radius;

    let mut anchors: Vec<f64> = Vec::new();
    for p in points {
        let d = p.dist(&circle.center);
        if d == 0.0 {
            continue;
        }
        let cos = (rc * rc + d * d - lambda * lambda) / (2.0 * rc * d);
        if cos.abs() <= 1.0 {
            let phi = cos.acos();
            let mid = (p.y - circle.center.y).atan2(p.x - circle.center.x);
            anchors.push(mid + phi);
            anchors.push(mid - phi);
        }
    }
    for j in 0..starts.max(1) {
        anchors.push(TAU * j as f64 / starts.max(1) as f64);
    }

    if delta > 2.0 * rc + tol::abs() {
        // At most one center anywhere.
        let any = anchors
            .iter()
            .any(|&a| ring_next_legal(points, circle, lambda, a, a + TAU).is_some());
        return Ok(if any { 1 } else { 0 });
    }
    let theta = 2.0 * (delta / (2.0 * rc)).min(1.0).asin();

    let best = par::max_over(anchors.len(), |i| {
        let Some(first) = ring_next_legal(points, circle, lambda, anchors[i], anchors[i] + TAU)
        else {
            return 0;
        };
        let limit = first + TAU;
        let mut count = 0i64;
        let mut pos = first;
        loop {
            match ring_next_legal(points, circle, lambda, pos, limit - theta + tol::abs()) {
                None => return count,
                Some(c) => {
                    count += 1;
                    pos = c + theta;
                }
            }
        }
    });
    Ok(best.unwrap_or(0))
}

/// Reference for the min-sum solver: enumerate every separated k-subset
/// of the internal candidate positions and score coverage geometrically.
pub fn brute_mofl(graph: &MoflGraph, k: usize, budget: &OracleBudget) -> Result<KLinkResult, OracleError> {
    let n = graph.positions.len();
    if n < 2 {
        return Err(OracleError::NoFeasiblePath);
    }
    let internal = &graph.positions[1..n - 1];
    if k > budget.max_k {
        return Err(OracleError::BudgetExceeded("k too large"));
    }

    let mut visited = 0usize;
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut chosen: Vec<usize> = Vec::with_capacity(k);

    fn recurse(
        internal: &[f64],
        graph: &MoflGraph,
        k: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<(f64, Vec<usize>)>,
        visited: &mut usize,
        max_nodes: usize,
    ) -> Result<(), OracleError> {
        if chosen.len() == k {
            *visited += 1;
            if *visited > max_nodes {
                return Err(OracleError::BudgetExceeded("too many subsets"));
            }
            let covered: f64 = graph
                .intervals
                .iter()
                .filter(|iv| {
                    chosen
                        .iter()
                        .any(|&c| internal[c] > iv.lo && internal[c] < iv.hi)
                })
                .map(|iv| iv.weight)
                .sum();
            let better = match best {
                None => true,
                Some((b, _)) => covered < *b,
            };
            if better {
                *best = Some((covered, chosen.clone()));
            }
            return Ok(());
        }
        for i in from..internal.len() {
            if let Some(&last) = chosen.last() {
                if internal[i] - internal[last] < graph.sep - tol::abs() {
                    continue;
                }
            }
            // Not enough positions left to finish.
            if internal.len() - i < k - chosen.len() {
                break;
            }
            chosen.push(i);
            recurse(internal, graph, k, i + 1, chosen, best, visited, max_nodes)?;
            chosen.pop();
        }
        Ok(())
    }

    recurse(
        internal,
        graph,
        k,
        0,
        &mut chosen,
        &mut best,
        &mut visited,
        budget.max_nodes,
    )?;

    match best {
        None => Err(OracleError::NoFeasiblePath),
        Some((covered, idxs)) => {
            let mut path = Vec::with_capacity(k + 2);
            path.push(0);
            path.extend(idxs.iter().map(|i| i + 1));
            path.push(n - 1);
            Ok(KLinkResult {
                cost: covered - graph.total_weight(),
                path,
                covered_weight: covered,
            })
        }
    }
}
