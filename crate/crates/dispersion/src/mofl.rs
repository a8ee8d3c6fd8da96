//! Min-sum coverage: place `k` disks of fixed radius on the segment,
//! consecutive centers at least `alpha * lambda` apart, minimizing the
//! total weight of covered points.
//!
//! The problem reduces to a minimum-cost path with exactly `k + 1` links
//! in a DAG over candidate positions, where an edge (x, y) is credited
//! the (negated) weight of every influence interval lying wholly between
//! the two positions. That weight function satisfies the convex Monge
//! inequality, and edges shorter than the separation are structurally
//! absent, forming a staircase: for each row the allowed predecessors are
//! a prefix that only grows. The engine exploits both: an unrestricted
//! minimum-cost path under a Lagrangian link shift is computed by a
//! monotone candidate stack (each candidate enters once its separation
//! clears, dominance crossovers found by binary search), and the shift is
//! binary-searched over integers until the link count brackets `k + 1`.
//!
//! A plain O(P^2 k) dynamic program over (node, links) serves as the
//! reference implementation of the same contract.

use std::fmt;

use crate::geom::{GeomError, Point, Segment};
use crate::par;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub weight: f64,
    pub owner: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MoflError {
    /// `k` separated centers do not fit on the segment.
    Infeasible,
    /// Every (k+1)-link path crosses a forbidden edge.
    NoFeasiblePath,
    InvalidEdge { x: usize, y: usize },
    Geom(GeomError),
}

impl fmt::Display for MoflError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoflError::Infeasible => write!(f, "k separated centers do not fit on the segment"),
            MoflError::NoFeasiblePath => write!(f, "no path with the required number of links"),
            MoflError::InvalidEdge { x, y } => write!(f, "invalid edge ({x}, {y})"),
            MoflError::Geom(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MoflError {}

impl From<GeomError> for MoflError {
    fn from(e: GeomError) -> Self {
        MoflError::Geom(e)
    }
}

/// Open influence intervals of the weighted points: a center covers point
/// `i` iff it lies strictly inside `(x_i - h, x_i + h)`.
pub fn influence_intervals(points: &[Point], lambda: f64) -> Vec<InfluenceInterval> {
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if p.y.abs() >= lambda {
            continue;
        }
        let h = (lambda * lambda - p.y * p.y).sqrt();
        if h <= 0.0 {
            continue;
        }
        out.push(InfluenceInterval {
            lo: p.x - h,
            hi: p.x + h,
            weight: p.weight.unwrap_or(1.0),
            owner: i,
        });
    }
    out
}

/// Candidate center positions: segment ends and interval endpoints, each
/// augmented by up to `k - 1` separation multiples, clipped and
/// deduplicated.
pub fn candidate_positions(
    intervals: &[InfluenceInterval],
    segment: &Segment,
    k: usize,
    sep: f64,
) -> Vec<f64> {
    let mut base = vec![segment.a, segment.b];
    for iv in intervals {
        base.push(iv.lo);
        base.push(iv.hi);
    }
    let mut out = Vec::with_capacity(base.len() * k);
    for &b in &base {
        for j in 0..k {
            let v = b + j as f64 * sep;
            if v >= segment.a && v <= segment.b {
                out.push(v);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    out
}

/// Static weighted 2-D dominance index: total weight of intervals with
/// `lo >= x` and `hi <= y`, in O(log^2 n).
struct DominanceIndex {
    n: usize,
    size: usize,
    ls: Vec<f64>,
    /// Per tree node: interval `hi` values sorted, with prefix weight sums
    /// (prefix[i] = weight of the first i entries).
    rs: Vec<Vec<f64>>,
    ws: Vec<Vec<f64>>,
}

impl DominanceIndex {
    fn build(intervals: &[InfluenceInterval]) -> Self {
        let mut by_l: Vec<(f64, f64, f64)> = intervals
            .iter()
            .map(|iv| (iv.lo, iv.hi, iv.weight))
            .collect();
        by_l.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = by_l.len();
        let size = n.next_power_of_two().max(1);
        let mut rs = vec![Vec::new(); 2 * size];
        let mut ws = vec![Vec::new(); 2 * size];
        for (i, &(_, hi, w)) in by_l.iter().enumerate() {
            rs[size + i] = vec![hi];
            ws[size + i] = vec![0.0, w];
        }
        for node in (1..size).rev() {
            let (a, b) = (2 * node, 2 * node + 1);
            let mut merged: Vec<(f64, f64)> = Vec::with_capacity(rs[a].len() + rs[b].len());
            let weights_of = |node: usize, idx: usize, ws: &Vec<Vec<f64>>| -> f64 {
                ws[node][idx + 1] - ws[node][idx]
            };
            let (mut i, mut j) = (0, 0);
            while i < rs[a].len() || j < rs[b].len() {
                let take_a = j >= rs[b].len() || (i < rs[a].len() && rs[a][i] <= rs[b][j]);
                if take_a {
                    merged.push((rs[a][i], weights_of(a, i, &ws)));
                    i += 1;
                } else {
                    merged.push((rs[b][j], weights_of(b, j, &ws)));
                    j += 1;
                }
            }
            let mut pref = Vec::with_capacity(merged.len() + 1);
            pref.push(0.0);
            for &(_, w) in &merged {
                pref.push(pref.last().unwrap() + w);
            }
            rs[node] = merged.into_iter().map(|(r, _)| r).collect();
            ws[node] = pref;
        }
        DominanceIndex {
            n,
            size,
            ls: by_l.iter().map(|t| t.0).collect(),
            rs,
            ws,
        }
    }

    fn contained_weight(&self, x: f64, y: f64) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        // Suffix of intervals with lo >= x, then weight of hi <= y within.
        let lb = self.ls.partition_point(|l| *l < x);
        if lb >= self.n {
            return 0.0;
        }
        let (mut lo, mut hi) = (self.size + lb, self.size + self.n - 1);
        let mut total = 0.0;
        let leaf_weight = |node: usize| -> f64 {
            let cnt = self.rs[node].partition_point(|r| *r <= y);
            self.ws[node][cnt]
        };
        while lo <= hi {
            if lo & 1 == 1 {
                total += leaf_weight(lo);
                lo += 1;
            }
            if hi & 1 == 0 {
                total += leaf_weight(hi);
                if hi == 0 {
                    break;
                }
                hi -= 1;
            }
            lo >>= 1;
            hi >>= 1;
            if lo > hi {
                break;
            }
        }
        total
    }
}

/// The k-link path graph: candidate positions flanked by virtual
/// sentinels placed beyond every interval endpoint, so an edge's credit
/// is the full weight avoided between its ends.
pub struct MoflGraph {
    /// Node positions; `positions[0]` and `positions[len-1]` are the
    /// sentinels, everything between is a legal center position.
    pub positions: Vec<f64>,
    pub intervals: Vec<InfluenceInterval>,
    /// Required gap between adjacent centers (`alpha * lambda`).
    pub sep: f64,
    dom: DominanceIndex,
    total_weight: f64,
}

impl MoflGraph {
    pub fn build(
        intervals: Vec<InfluenceInterval>,
        segment: &Segment,
        candidates: Vec<f64>,
        sep: f64,
    ) -> MoflGraph {
        let mut lo_bound = segment.a;
        let mut hi_bound = segment.b;
        for iv in &intervals {
            lo_bound = lo_bound.min(iv.lo);
            hi_bound = hi_bound.max(iv.hi);
        }
        let mut positions = Vec::with_capacity(candidates.len() + 2);
        positions.push(lo_bound - 1.0);
        positions.extend(candidates);
        positions.push(hi_bound + 1.0);
        let dom = DominanceIndex::build(&intervals);
        let total_weight = intervals.iter().map(|iv| iv.weight).sum();
        MoflGraph {
            positions,
            intervals,
            sep,
            dom,
            total_weight,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    fn is_sentinel(&self, node: usize) -> bool {
        node == 0 || node == self.positions.len() - 1
    }

    /// Edge weight: +inf when two center nodes sit closer than the
    /// separation, otherwise the negated weight of intervals contained
    /// between the endpoints. Sentinel edges are never forbidden.
    pub fn edge_weight(&self, x: usize, y: usize) -> Result<f64, MoflError> {
        if x >= y || y >= self.positions.len() {
            return Err(MoflError::InvalidEdge { x, y });
        }
        if !self.is_sentinel(x)
            && !self.is_sentinel(y)
            && self.positions[y] - self.positions[x] < self.sep - tol::abs()
        {
            return Ok(f64::INFINITY);
        }
        Ok(-self.dom.contained_weight(self.positions[x], self.positions[y]))
    }

    /// Weight without the separation check, for scan rows where the
    /// predecessor is already known to be allowed.
    fn free_weight(&self, x: usize, y: usize) -> f64 {
        -self.dom.contained_weight(self.positions[x], self.positions[y])
    }

    /// First row index that may use `x` as predecessor.
    fn avail(&self, x: usize) -> usize {
        let last = self.positions.len() - 1;
        if x == 0 {
            return 1;
        }
        if x == last {
            return last; // never a predecessor, parks harmlessly
        }
        let need = self.positions[x] + self.sep - tol::abs();
        let idx = self.positions.partition_point(|v| *v < need);
        idx.max(x + 1).min(last)
    }
}

/// Result of a k-link search: path node indices include both sentinels.
#[derive(Debug, Clone, PartialEq)]
pub struct KLinkResult {
    pub cost: f64,
    pub path: Vec<usize>,
    pub covered_weight: f64,
}

/// First adjacent 2x2 submatrix with four finite entries violating the
/// convex Monge inequality, if any.
pub fn monge_check(graph: &MoflGraph) -> Option<(usize, usize)> {
    let n = graph.len();
    if n < 4 {
        return None;
    }
    let w = |x: usize, y: usize| graph.edge_weight(x, y).unwrap();
    let hit = par::find_first(n - 3, |i| {
        for j in (i + 2)..(n - 1) {
            let (a, b, c, d) = (w(i, j), w(i + 1, j + 1), w(i, j + 1), w(i + 1, j));
            if a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite() {
                if a + b < c + d - 1e-9 {
                    return true;
                }
            }
        }
        false
    });
    hit.map(|i| {
        for j in (i + 2)..(n - 1) {
            let (a, b, c, d) = (w(i, j), w(i + 1, j + 1), w(i, j + 1), w(i + 1, j));
            if a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite() {
                if a + b < c + d - 1e-9 {
                    return (i, j);
                }
            }
        }
        unreachable!()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TieMode {
    MoreLinks,
    FewerLinks,
}

#[derive(Debug, Clone, Copy)]
struct ScanEntry {
    cost: f64,
    links: i64,
    parent: usize,
}

/// Monotone-stack row minima over the staircase-restricted Monge matrix.
///
/// `base(x)` supplies the candidate's accumulated cost and link count;
/// rows are filled in order, each candidate entering at its availability
/// row. Returns one entry per node (source entry included).
fn stack_scan<B>(graph: &MoflGraph, tau: f64, mode: TieMode, base: B) -> Vec<Option<ScanEntry>>
where
    B: Fn(usize, &[Option<ScanEntry>]) -> Option<(f64, i64)>,
{
    let n = graph.len();
    let mut dp: Vec<Option<ScanEntry>> = vec![None; n];
    dp[0] = Some(ScanEntry {
        cost: 0.0,
        links: 0,
        parent: 0,
    });

    // Candidates bucketed by availability row. The stack serves rows up
    // to the last internal one; the sink row is minimized directly below,
    // which also excludes the 1-link sentinel-to-sentinel path (never
    // part of a k-center solution, and its blanket credit makes the link
    // profile non-convex).
    let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n - 1 {
        by_row[graph.avail(x)].push(x);
    }

    let eval = |cand: usize, row: usize, dp: &[Option<ScanEntry>], base: &B| -> Option<(f64, i64)> {
        let (c, l) = base(cand, dp)?;
        Some((c + graph.free_weight(cand, row) + tau, l + 1))
    };
    let better = |a: (f64, i64), b: (f64, i64)| -> bool {
        a.0 < b.0
            || (a.0 == b.0
                && match mode {
                    TieMode::MoreLinks => a.1 > b.1,
                    TieMode::FewerLinks => a.1 < b.1,
                })
    };

    // Stack of (candidate, first row it rules); starts decrease toward
    // the top, the top ruling the nearest rows.
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let last_row = n - 1;

    for y in 1..last_row {
        // Expire rulers whose window has passed.
        while stack.len() >= 2 && stack[stack.len() - 2].1 <= y {
            stack.pop();
        }
        for &c in &by_row[y] {
            if base(c, &dp).is_none() {
                continue;
            }
            loop {
                let Some(&(tc, ts)) = stack.last() else {
                    stack.push((c, y));
                    break;
                };
                let reign_start = ts.max(y);
                let beats_at = |row: usize, dp: &[Option<ScanEntry>]| -> bool {
                    match (eval(c, row, dp, &base), eval(tc, row, dp, &base)) {
                        (Some(a), Some(b)) => better(a, b),
                        (Some(_), None) => true,
                        _ => false,
                    }
                };
                if !beats_at(reign_start, &dp) {
                    if reign_start > y {
                        // The pops above freed [y, reign_start) for c.
                        stack.push((c, y));
                    }
                    break;
                }
                let reign_end = if stack.len() >= 2 {
                    stack[stack.len() - 2].1 - 1
                } else {
                    last_row
                };
                if beats_at(reign_end, &dp) {
                    stack.pop();
                    continue;
                }
                // Crossover: first row in (reign_start, reign_end] where
                // the incumbent wins again.
                let (mut a, mut b) = (reign_start + 1, reign_end);
                while a < b {
                    let mid = a + (b - a) / 2;
                    if beats_at(mid, &dp) {
                        a = mid + 1;
                    } else {
                        b = mid;
                    }
                }
                let top = stack.len() - 1;
                stack[top].1 = a;
                stack.push((c, y));
                break;
            }
        }
        if let Some(&(ruler, _)) = stack.last() {
            if let Some((cost, links)) = eval(ruler, y, &dp, &base) {
                dp[y] = Some(ScanEntry {
                    cost,
                    links,
                    parent: ruler,
                });
            }
        }
    }
    // Sink row: every internal node is allowed, the direct sentinel edge
    // is not.
    if last_row >= 1 {
        let mut best: Option<ScanEntry> = None;
        for x in 1..last_row {
            if let Some((cost, links)) = eval(x, last_row, &dp, &base) {
                let replace = match best {
                    None => true,
                    Some(b) => better((cost, links), (b.cost, b.links)),
                };
                if replace {
                    best = Some(ScanEntry {
                        cost,
                        links,
                        parent: x,
                    });
                }
            }
        }
        dp[last_row] = best;
    }
    dp
}

/// Unrestricted minimum-cost path from source to sink in the tau-shifted
/// graph, with parents for reconstruction.
fn shifted_best_path(graph: &MoflGraph, tau: f64, mode: TieMode) -> Option<(f64, i64, Vec<usize>)> {
    let dp = stack_scan(graph, tau, mode, |x, dp| {
        dp[x].map(|e| (e.cost, e.links))
    });
    let last = graph.len() - 1;
    let end = dp[last]?;
    let mut path = vec![last];
    let mut cur = last;
    while cur != 0 {
        cur = dp[cur].unwrap().parent;
        path.push(cur);
    }
    path.reverse();
    Some((end.cost, end.links, path))
}

/// Exact per-level scan: minimum cost with exactly `links` links, used
/// for witness reconstruction when the Lagrangian bracket lands between
/// link counts (and as an internal exactness fallback).
fn layered_path(graph: &MoflGraph, links: usize) -> Option<(f64, Vec<usize>)> {
    let n = graph.len();
    let mut prev: Vec<Option<ScanEntry>> = vec![None; n];
    prev[0] = Some(ScanEntry {
        cost: 0.0,
        links: 0,
        parent: 0,
    });
    let mut parents: Vec<Vec<usize>> = Vec::with_capacity(links);
    for _ in 0..links {
        let snapshot = prev.clone();
        let next = stack_scan(graph, 0.0, TieMode::FewerLinks, move |x, _| {
            snapshot[x].map(|e| (e.cost, e.links))
        });
        parents.push(next.iter().map(|e| e.map(|e| e.parent).unwrap_or(0)).collect());
        prev = next;
        prev[0] = None; // source reachable only with 0 links
    }
    let last = n - 1;
    let end = prev[last]?;
    let mut path = vec![last];
    let mut cur = last;
    for lvl in (0..links).rev() {
        cur = parents[lvl][cur];
        path.push(cur);
        if cur == 0 {
            break;
        }
    }
    if *path.last().unwrap() != 0 {
        return None;
    }
    path.reverse();
    Some((end.cost, path))
}

/// Minimum-cost path with exactly `k + 1` links via the integer
/// Lagrangian shift.
pub fn klink_shortest_path(graph: &MoflGraph, k: usize) -> Result<KLinkResult, MoflError> {
    let needed = (k + 1) as i64;
    let w_total = graph.total_weight.abs() + 1.0;
    let (mut lo, mut hi) = (-(w_total as i64) - 1, w_total as i64 + 1);

    let more = |tau: i64| shifted_best_path(graph, tau as f64, TieMode::MoreLinks);
    let Some(at_lo) = more(lo) else {
        return Err(MoflError::NoFeasiblePath);
    };
    if at_lo.1 < needed {
        return Err(MoflError::NoFeasiblePath);
    }
    // Largest tau whose max-link optimum still reaches `needed` links.
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        match more(mid) {
            Some((_, links, _)) if links >= needed => lo = mid,
            _ => hi = mid - 1,
        }
    }
    let tau = lo;
    let (cost_more, links_more, path_more) = more(tau).ok_or(MoflError::NoFeasiblePath)?;
    let recover = |shifted: f64, links: i64| shifted - links as f64 * tau as f64;
    if links_more == needed {
        let cost = recover(cost_more, needed);
        return Ok(finish(graph, cost, path_more));
    }
    let (cost_less, links_less, path_less) =
        shifted_best_path(graph, tau as f64, TieMode::FewerLinks).ok_or(MoflError::NoFeasiblePath)?;
    if links_less == needed {
        let cost = recover(cost_less, needed);
        return Ok(finish(graph, cost, path_less));
    }
    // The shift landed between link counts: the link profile is not
    // convex at k + 1, so the envelope value cannot be trusted. The
    // per-level scan is exact (and still Monge-fast).
    match layered_path(graph, k + 1) {
        Some((cost, path)) => Ok(finish(graph, cost, path)),
        None => Err(MoflError::NoFeasiblePath),
    }
}

fn finish(graph: &MoflGraph, cost: f64, path: Vec<usize>) -> KLinkResult {
    KLinkResult {
        cost,
        path,
        covered_weight: graph.total_weight + cost,
    }
}

/// Reference engine: exact DP over (node, links used).
pub fn dp_baseline(graph: &MoflGraph, k: usize) -> Result<KLinkResult, MoflError> {
    let n = graph.len();
    let links = k + 1;
    let last = n - 1;
    const UNSET: f64 = f64::INFINITY;

    // Interval weights folded into per-row sweeps with a Fenwick tree
    // over lo-ranks (independent of the dominance index).
    let mut by_hi: Vec<(f64, f64, f64)> = graph
        .intervals
        .iter()
        .map(|iv| (iv.hi, iv.lo, iv.weight))
        .collect();
    by_hi.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut lo_sorted: Vec<f64> = graph.intervals.iter().map(|iv| iv.lo).collect();
    lo_sorted.sort_by(f64::total_cmp);
    let m = lo_sorted.len();
    let mut fenwick = vec![0.0f64; m + 1];
    let mut fen_add = |fenwick: &mut Vec<f64>, mut i: usize, v: f64| {
        i += 1;
        while i <= m {
            fenwick[i] += v;
            i += i & i.wrapping_neg();
        }
    };
    let fen_prefix = |fenwick: &Vec<f64>, mut i: usize| -> f64 {
        let mut s = 0.0;
        while i > 0 {
            s += fenwick[i];
            i -= i & i.wrapping_neg();
        }
        s
    };
    let mut inserted_total = 0.0;
    let mut next_interval = 0usize;

    let mut dp = vec![vec![UNSET; n]; links + 1];
    let mut parent = vec![vec![0usize; n]; links + 1];
    dp[0][0] = 0.0;

    let mut w_row = vec![0.0f64; n];
    for y in 1..n {
        let py = graph.positions[y];
        while next_interval < by_hi.len() && by_hi[next_interval].0 <= py {
            let rank = lo_sorted.partition_point(|l| *l < by_hi[next_interval].1);
            fen_add(&mut fenwick, rank, by_hi[next_interval].2);
            inserted_total += by_hi[next_interval].2;
            next_interval += 1;
        }
        for x in 0..y {
            let allowed = graph.is_sentinel(x)
                || graph.is_sentinel(y)
                || py - graph.positions[x] >= graph.sep - tol::abs();
            if !allowed {
                w_row[x] = UNSET;
                continue;
            }
            // Weight of intervals with hi <= py and lo >= pos[x].
            let rank = lo_sorted.partition_point(|l| *l < graph.positions[x]);
            w_row[x] = -(inserted_total - fen_prefix(&fenwick, rank));
        }
        for j in 1..=links.min(y) {
            let mut best = UNSET;
            let mut arg = 0usize;
            for x in (j - 1)..y {
                if dp[j - 1][x].is_finite() && w_row[x].is_finite() {
                    let c = dp[j - 1][x] + w_row[x];
                    if c < best {
                        best = c;
                        arg = x;
                    }
                }
            }
            dp[j][y] = best;
            parent[j][y] = arg;
        }
    }

    if !dp[links][last].is_finite() {
        return Err(MoflError::NoFeasiblePath);
    }
    let mut path = vec![last];
    let mut cur = last;
    for j in (1..=links).rev() {
        cur = parent[j][cur];
        path.push(cur);
    }
    path.reverse();
    Ok(finish(graph, dp[links][last], path))
}

/// End-to-end solver: build the graph for the instance and run the
/// Monge engine.
pub fn solve_mofl(
    points: &[Point],
    segment: &Segment,
    k: usize,
    lambda: f64,
    alpha: f64,
) -> Result<(f64, Vec<f64>), MoflError> {
    if k == 0 || !(lambda > 0.0) || !(alpha > 0.0) {
        return Err(MoflError::Geom(GeomError::InvalidGeometry(
            "k, lambda and alpha must be positive",
        )));
    }
    for p in points {
        if p.weight.map_or(true, |w| !(w > 0.0)) {
            return Err(MoflError::Geom(GeomError::InvalidGeometry(
                "every point needs a positive weight",
            )));
        }
    }
    let sep = alpha * lambda;
    if (k - 1) as f64 * sep > segment.len() + tol::abs() {
        return Err(MoflError::Infeasible);
    }
    let intervals = influence_intervals(points, lambda);
    let candidates = candidate_positions(&intervals, segment, k, sep);
    let graph = MoflGraph::build(intervals, segment, candidates, sep);
    let result = klink_shortest_path(&graph, k)?;
    let centers = result.path[1..result.path.len() - 1]
        .iter()
        .map(|&i| graph.positions[i])
        .collect();
    Ok((result.covered_weight, centers))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: f64, b: f64) -> Segment {
        Segment::new(a, b).unwrap()
    }

    fn wpt(x: f64, y: f64, w: f64) -> Point {
        Point::weighted(x, y, w)
    }

    #[test]
    fn influence_examples() {
        let got = influence_intervals(&[wpt(2.0, 0.0, 1.0)], 1.0);
        assert_eq!(got.len(), 1);
        assert!((got[0].lo - 1.0).abs() < 1e-12 && (got[0].hi - 3.0).abs() < 1e-12);

        assert!(influence_intervals(&[wpt(5.0, 1.0, 2.0)], 1.0).is_empty());

        let got = influence_intervals(&[wpt(5.0, 0.6, 2.0)], 1.0);
        assert!((got[0].lo - 4.2).abs() < 1e-12 && (got[0].hi - 5.8).abs() < 1e-12);
    }

    #[test]
    fn candidate_positions_example() {
        let ivs = [InfluenceInterval {
            lo: 1.0,
            hi: 3.0,
            weight: 1.0,
            owner: 0,
        }];
        let got = candidate_positions(&ivs, &seg(0.0, 10.0), 2, 2.0);
        assert_eq!(got, vec![0.0, 1.0, 2.0, 3.0, 5.0, 10.0]);

        let got = candidate_positions(&ivs, &seg(0.0, 10.0), 1, 2.0);
        assert_eq!(got, vec![0.0, 1.0, 3.0, 10.0]);

        let got = candidate_positions(&[], &seg(0.0, 4.0), 3, 10.0);
        assert_eq!(got, vec![0.0, 4.0]);
    }

    fn demo_graph() -> MoflGraph {
        let ivs = vec![
            InfluenceInterval {
                lo: 1.0,
                hi: 3.0,
                weight: 2.0,
                owner: 0,
            },
            InfluenceInterval {
                lo: 2.0,
                hi: 5.0,
                weight: 1.0,
                owner: 1,
            },
        ];
        let candidates = vec![0.5, 1.0, 1.2, 4.0, 6.0];
        MoflGraph::build(ivs, &seg(0.0, 10.0), candidates, 0.5)
    }

    #[test]
    fn edge_weight_examples() {
        let g = demo_graph();
        // Positions: [sentinel, 0.5, 1.0, 1.2, 4.0, 6.0, sentinel].
        assert_eq!(g.edge_weight(1, 4).unwrap(), -2.0);
        assert_eq!(g.edge_weight(1, 5).unwrap(), -3.0);
        assert!(g.edge_weight(2, 3).unwrap().is_infinite());
        assert!(g.edge_weight(3, 3).is_err());
    }

    #[test]
    fn monge_holds_on_demo() {
        assert_eq!(monge_check(&demo_graph()), None);
    }

    #[test]
    fn forced_full_coverage() {
        // One heavy interval spanning the whole segment: any placement
        // covers it.
        let pts = [wpt(5.0, 0.0, 3.0)];
        let (covered, centers) = solve_mofl(&pts, &seg(0.0, 10.0), 2, 10.0, 0.05).unwrap();
        assert_eq!(covered, 3.0);
        assert_eq!(centers.len(), 2);
    }

    #[test]
    fn forced_spacing_covers_middle() {
        // 11 centers at spacing exactly 1 must occupy 0..10; position 5
        // falls inside (4, 6).
        let pts = [wpt(5.0, 0.0, 3.0)];
        let (covered, centers) = solve_mofl(&pts, &seg(0.0, 10.0), 11, 1.0, 1.0).unwrap();
        assert_eq!(covered, 3.0);
        assert_eq!(centers.len(), 11);
    }

    #[test]
    fn two_light_points_avoidable() {
        let pts = [wpt(2.0, 0.0, 1.0), wpt(5.0, 0.0, 1.0)];
        let (covered, centers) = solve_mofl(&pts, &seg(0.0, 10.0), 2, 1.0, 2.0).unwrap();
        assert_eq!(covered, 0.0);
        assert_eq!(centers.len(), 2);
        // Witness really avoids both intervals.
        for c in &centers {
            assert!(!(1.0 < *c && *c < 3.0));
            assert!(!(4.0 < *c && *c < 6.0));
        }
    }

    #[test]
    fn engines_agree_on_demo() {
        let g = demo_graph();
        for k in 1..=3 {
            let a = klink_shortest_path(&g, k).unwrap();
            let b = dp_baseline(&g, k).unwrap();
            assert_eq!(a.cost, b.cost, "k={k}");
            assert_eq!(a.path.len(), k + 2);
            assert_eq!(b.path.len(), k + 2);
        }
    }

    #[test]
    fn separation_infeasible() {
        let pts = [wpt(5.0, 0.0, 1.0)];
        assert_eq!(
            solve_mofl(&pts, &seg(0.0, 3.0), 5, 1.0, 1.0).unwrap_err(),
            MoflError::Infeasible
        );
    }
}

