//! Geometric primitives: demand points, the host segment or circle, and
//! the forbidden/feasible region computations every solver starts from.
//!
//! Conventions:
//!
//! * Forbidden regions are OPEN, feasible regions CLOSED. A center exactly
//!   at clearance distance from a demand point is legal, so optima are
//!   attained.
//! * A segment host is normalized onto the x-axis; [`Frame`] records the
//!   rigid motion so solutions can be mapped back.

use std::fmt;

/// A demand point; `weight` is used by the min-sum problem only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub weight: Option<f64>,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y, weight: None }
    }

    pub fn weighted(x: f64, y: f64, weight: f64) -> Self {
        Point {
            x,
            y,
            weight: Some(weight),
        }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn check_finite(&self) -> Result<(), GeomError> {
        if !self.x.is_finite() || !self.y.is_finite() {
            return Err(GeomError::InvalidGeometry("non-finite coordinate"));
        }
        if let Some(w) = self.weight {
            if !w.is_finite() || w <= 0.0 {
                return Err(GeomError::InvalidGeometry("weight must be positive"));
            }
        }
        Ok(())
    }
}

/// A host segment normalized onto the x-axis: both endpoints have y = 0
/// and `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
}

impl Segment {
    pub fn new(a: f64, b: f64) -> Result<Self, GeomError> {
        if !a.is_finite() || !b.is_finite() || a > b {
            return Err(GeomError::InvalidGeometry("bad segment endpoints"));
        }
        Ok(Segment { a, b })
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }
}

/// Rigid motion taking an arbitrary segment in the plane onto the x-axis.
///
/// `to_local` maps world coordinates into the normalized frame where the
/// segment is `[0, len]` on the x-axis; `to_world` inverts it.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    origin: (f64, f64),
    cos: f64,
    sin: f64,
}

impl Frame {
    /// Normalize the segment from `p` to `q`. Returns the frame and the
    /// on-axis segment `[0, |pq|]`.
    pub fn normalize(p: (f64, f64), q: (f64, f64)) -> Result<(Frame, Segment), GeomError> {
        if !p.0.is_finite() || !p.1.is_finite() || !q.0.is_finite() || !q.1.is_finite() {
            return Err(GeomError::InvalidGeometry("non-finite segment endpoint"));
        }
        let dx = q.0 - p.0;
        let dy = q.1 - p.1;
        let len = dx.hypot(dy);
        let (cos, sin) = if len == 0.0 {
            (1.0, 0.0)
        } else {
            (dx / len, dy / len)
        };
        Ok((
            Frame {
                origin: p,
                cos,
                sin,
            },
            Segment::new(0.0, len)?,
        ))
    }

    pub fn to_local(&self, pt: (f64, f64)) -> (f64, f64) {
        let dx = pt.0 - self.origin.0;
        let dy = pt.1 - self.origin.1;
        (dx * self.cos + dy * self.sin, -dx * self.sin + dy * self.cos)
    }

    pub fn to_world(&self, pt: (f64, f64)) -> (f64, f64) {
        (
            self.origin.0 + pt.0 * self.cos - pt.1 * self.sin,
            self.origin.1 + pt.0 * self.sin + pt.1 * self.cos,
        )
    }
}

/// The host circle for the circular problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleSpec {
    pub center: Point,
    pub radius: f64,
}

impl CircleSpec {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeomError> {
        center.check_finite()?;
        if !radius.is_finite() || radius <= 0.0 {
            return Err(GeomError::InvalidGeometry("circle radius must be positive"));
        }
        Ok(CircleSpec { center, radius })
    }

    /// Boundary point at the given angle.
    pub fn at(&self, angle: f64) -> Point {
        Point::new(
            self.center.x + self.radius * angle.cos(),
            self.center.y + self.radius * angle.sin(),
        )
    }
}

/// An open interval `(lo, hi)` of forbidden center positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

/// A forbidden arc around `mid`, open at both ends; `full` marks the
/// whole circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    /// Center angle, in `[0, 2pi)`.
    pub mid: f64,
    /// Angular half width, in `[0, pi]`.
    pub half_width: f64,
    pub full: bool,
}

impl Arc {
    pub fn full() -> Self {
        Arc {
            mid: 0.0,
            half_width: 0.0,
            full: true,
        }
    }
}

/// Sorted, pairwise disjoint closed intervals of legal center positions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeasibleSet {
    pub intervals: Vec<(f64, f64)>,
}

impl FeasibleSet {
    pub fn total_len(&self) -> f64 {
        self.intervals.iter().map(|(l, r)| r - l).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    InvalidGeometry(&'static str),
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::InvalidGeometry(msg) => write!(f, "invalid geometry: {msg}"),
        }
    }
}

impl std::error::Error for GeomError {}

/// Positions on the x-axis from which a radius-`lambda` disk strictly
/// covers `pt`: the open interval `(x - h, x + h)` with
/// `h = sqrt(lambda^2 - y^2)`, or nothing when `|y| >= lambda`.
pub fn forbidden_interval_disk(pt: &Point, lambda: f64) -> Result<Option<OpenInterval>, GeomError> {
    pt.check_finite()?;
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(GeomError::InvalidGeometry("lambda must be positive"));
    }
    if pt.y.abs() >= lambda {
        return Ok(None);
    }
    let h = (lambda * lambda - pt.y * pt.y).sqrt();
    Ok(Some(OpenInterval {
        lo: pt.x - h,
        hi: pt.x + h,
    }))
}

/// Same for an axis-aligned square of side `size`: half width `size / 2`
/// in the L-infinity metric, and the point only matters when
/// `|y| < size / 2`.
pub fn forbidden_interval_square(pt: &Point, size: f64) -> Result<Option<OpenInterval>, GeomError> {
    pt.check_finite()?;
    if !size.is_finite() || size <= 0.0 {
        return Err(GeomError::InvalidGeometry("size must be positive"));
    }
    let half = size / 2.0;
    if pt.y.abs() >= half {
        return Ok(None);
    }
    Ok(Some(OpenInterval {
        lo: pt.x - half,
        hi: pt.x + half,
    }))
}

/// Forbidden arc of boundary positions covering `pt`, by the law of
/// cosines. `lambda > d + r_c` swallows the whole boundary; at exact
/// equality the antipodal boundary point is still legal, so a half-width
/// `pi` arc is returned instead of `full`.
pub fn forbidden_arc(pt: &Point, circle: &CircleSpec, lambda: f64) -> Result<Option<Arc>, GeomError> {
    pt.check_finite()?;
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(GeomError::InvalidGeometry("lambda must be positive"));
    }
    let d = pt.dist(&circle.center);
    let rc = circle.radius;
    if d == 0.0 {
        // Every boundary point is at distance exactly rc.
        return Ok(if lambda > rc { Some(Arc::full()) } else { None });
    }
    let cos_phi = (rc * rc + d * d - lambda * lambda) / (2.0 * rc * d);
    if cos_phi >= 1.0 {
        return Ok(None);
    }
    if cos_phi < -1.0 {
        return Ok(Some(Arc::full()));
    }
    let mid = (pt.y - circle.center.y).atan2(pt.x - circle.center.x);
    Ok(Some(Arc {
        mid: wrap_angle(mid),
        half_width: cos_phi.acos(),
        full: false,
    }))
}

/// Normalize an angle into `[0, 2pi)`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut r = a % two_pi;
    if r < 0.0 {
        r += two_pi;
    }
    if r >= two_pi {
        r = 0.0;
    }
    r
}

/// Closed complement of a union of open intervals within the host
/// segment. Touching forbidden intervals leave a degenerate one-point
/// feasible interval between them, matching the open/closed convention.
pub fn feasible_set(host: &Segment, forbidden: &[OpenInterval]) -> FeasibleSet {
    let mut regions: Vec<(f64, f64)> = forbidden
        .iter()
        .filter(|iv| iv.hi > iv.lo)
        .map(|iv| (iv.lo, iv.hi))
        .collect();
    regions.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(regions.len());
    for (lo, hi) in regions {
        match merged.last_mut() {
            // Strict overlap only: open intervals touching at a point do
            // not cover that point.
            Some(last) if lo < last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }

    let mut out = Vec::new();
    let mut cursor = host.a;
    for (lo, hi) in merged {
        if hi <= host.a || lo >= host.b {
            continue;
        }
        if lo >= cursor {
            out.push((cursor, lo.min(host.b)));
        }
        cursor = cursor.max(hi);
        if cursor >= host.b {
            break;
        }
    }
    if cursor <= host.b {
        out.push((cursor, host.b));
    }
    // Drop inverted slivers that can appear when a forbidden region starts
    // exactly at the cursor.
    out.retain(|(l, r)| r >= l);
    FeasibleSet { intervals: out }
}

/// Merged open forbidden arcs as `(start, end)` spans with `start` in
/// `[0, 2pi)` and `end - start` the angular width; a span wrapping past 0
/// has `end > 2pi`. Sorted by start, pairwise disjoint on the ring.
/// `None` means the whole ring is forbidden.
pub fn merged_forbidden_spans(forbidden: &[Arc]) -> Option<Vec<(f64, f64)>> {
    let two_pi = std::f64::consts::TAU;
    if forbidden.iter().any(|a| a.full) {
        return None;
    }
    let mut spans: Vec<(f64, f64)> = forbidden
        .iter()
        .filter(|a| a.half_width > 0.0)
        .map(|a| {
            let lo = wrap_angle(a.mid - a.half_width);
            (lo, lo + 2.0 * a.half_width)
        })
        .collect();
    if spans.is_empty() {
        return Some(Vec::new());
    }
    if spans.iter().any(|(lo, hi)| hi - lo >= two_pi) {
        return None;
    }
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));

    // Unroll onto the line: every span plus a copy one lap ahead, merged
    // with strict overlap. A component that wraps past 0 then absorbs the
    // shifted copies of the spans it swallows.
    let doubled: Vec<(f64, f64)> = spans
        .iter()
        .cloned()
        .chain(spans.iter().map(|&(l, h)| (l + two_pi, h + two_pi)))
        .collect();
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in doubled {
        match merged.last_mut() {
            Some(last) if lo < last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged.retain(|&(lo, _)| lo < two_pi);
    if merged.iter().any(|&(lo, hi)| hi - lo >= two_pi) {
        return None;
    }
    // Drop first-lap spans fully swallowed by the wrap tail of the last
    // component.
    let last = *merged.last().unwrap();
    if last.1 > two_pi && merged.len() > 1 {
        let tail = last.1 - two_pi;
        merged.retain(|&s| s == last || s.0 >= tail);
    }
    Some(merged)
}

/// Feasible arcs on the full ring: closed angular intervals in `[0, 2pi]`
/// with a possible wrap split at 0. Returns `None` when the whole ring is
/// forbidden.
pub fn feasible_arcs(forbidden: &[Arc]) -> Option<Vec<(f64, f64)>> {
    let two_pi = std::f64::consts::TAU;
    let spans = merged_forbidden_spans(forbidden)?;
    if spans.is_empty() {
        return Some(vec![(0.0, two_pi)]);
    }
    let mut out = Vec::new();
    for w in spans.windows(2) {
        out.push((w[0].1, w[1].0));
    }
    let (first_lo, _) = spans[0];
    let (_, last_hi) = spans[spans.len() - 1];
    if last_hi > two_pi {
        // Last span wraps: the gap runs from its tail to the first start.
        out.insert(0, (last_hi - two_pi, first_lo));
    } else {
        out.push((last_hi, two_pi));
        out.insert(0, (0.0, first_lo));
    }
    out.retain(|(l, r)| r >= l);
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Some(out)
}

/// Total clipped length of a forbidden union within the host, used by the
/// conservation-of-measure property test.
pub fn forbidden_len_clipped(host: &Segment, forbidden: &[OpenInterval]) -> f64 {
    let feas = feasible_set(host, forbidden);
    host.len() - feas.total_len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> OpenInterval {
        OpenInterval { lo, hi }
    }

    #[test]
    fn disk_interval_pythagoras() {
        let got = forbidden_interval_disk(&Point::new(3.0, 4.0), 5.0)
            .unwrap()
            .unwrap();
        assert!((got.lo - 0.0).abs() < 1e-12 && (got.hi - 6.0).abs() < 1e-12);
    }

    #[test]
    fn disk_interval_boundary_exempt() {
        assert_eq!(forbidden_interval_disk(&Point::new(3.0, 5.0), 5.0).unwrap(), None);
    }

    #[test]
    fn disk_interval_on_axis() {
        let got = forbidden_interval_disk(&Point::new(2.0, 0.0), 1.0)
            .unwrap()
            .unwrap();
        assert!((got.lo - 1.0).abs() < 1e-12 && (got.hi - 3.0).abs() < 1e-12);
    }

    #[test]
    fn disk_interval_rejects_nan() {
        assert!(forbidden_interval_disk(&Point::new(f64::NAN, 0.0), 1.0).is_err());
    }

    #[test]
    fn square_interval_cases() {
        let got = forbidden_interval_square(&Point::new(5.0, 1.0), 4.0)
            .unwrap()
            .unwrap();
        assert!((got.lo - 3.0).abs() < 1e-12 && (got.hi - 7.0).abs() < 1e-12);
        assert_eq!(forbidden_interval_square(&Point::new(5.0, 2.0), 4.0).unwrap(), None);
        let got = forbidden_interval_square(&Point::new(0.0, 0.0), 2.0)
            .unwrap()
            .unwrap();
        assert!((got.lo + 1.0).abs() < 1e-12 && (got.hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn arc_law_of_cosines() {
        let circle = CircleSpec::new(Point::new(0.0, 0.0), 1.0).unwrap();
        let arc = forbidden_arc(&Point::new(2.0, 0.0), &circle, 1.2)
            .unwrap()
            .unwrap();
        assert!(!arc.full);
        assert!((arc.mid - 0.0).abs() < 1e-12);
        // Independent check: bisect the chord condition
        // d(boundary(phi), pt) = lambda.
        let pt = Point::new(2.0, 0.0);
        let f = |phi: f64| circle.at(phi).dist(&pt) - 1.2;
        let (mut lo, mut hi) = (0.0_f64, std::f64::consts::PI);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((arc.half_width - lo).abs() < 1e-9);
        assert!((arc.half_width - ((3.56_f64 / 4.0).acos())).abs() < 1e-12);
    }

    #[test]
    fn arc_out_of_reach() {
        let circle = CircleSpec::new(Point::new(0.0, 0.0), 1.0).unwrap();
        assert_eq!(forbidden_arc(&Point::new(3.0, 0.0), &circle, 1.0).unwrap(), None);
    }

    #[test]
    fn arc_point_at_center() {
        let circle = CircleSpec::new(Point::new(0.0, 0.0), 1.0).unwrap();
        let arc = forbidden_arc(&Point::new(0.0, 0.0), &circle, 1.5)
            .unwrap()
            .unwrap();
        assert!(arc.full);
        assert_eq!(forbidden_arc(&Point::new(0.0, 0.0), &circle, 1.0).unwrap(), None);
    }

    #[test]
    fn arc_exact_far_tangency_leaves_pinhole() {
        // lambda == d + rc: the antipodal point is at distance exactly
        // lambda, hence still legal.
        let circle = CircleSpec::new(Point::new(0.0, 0.0), 1.0).unwrap();
        let arc = forbidden_arc(&Point::new(2.0, 0.0), &circle, 3.0)
            .unwrap()
            .unwrap();
        assert!(!arc.full);
        assert!((arc.half_width - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn feasible_merge_and_complement() {
        let host = Segment::new(0.0, 10.0).unwrap();
        let got = feasible_set(&host, &[iv(2.0, 4.0), iv(3.0, 6.0)]);
        assert_eq!(got.intervals, vec![(0.0, 2.0), (6.0, 10.0)]);
    }

    #[test]
    fn feasible_empty_forbidden() {
        let host = Segment::new(0.0, 10.0).unwrap();
        assert_eq!(feasible_set(&host, &[]).intervals, vec![(0.0, 10.0)]);
    }

    #[test]
    fn feasible_swallowed() {
        let host = Segment::new(0.0, 4.0).unwrap();
        assert!(feasible_set(&host, &[iv(-1.0, 5.0)]).is_empty());
    }

    #[test]
    fn feasible_touching_open_intervals_leave_pinhole() {
        let host = Segment::new(0.0, 10.0).unwrap();
        let got = feasible_set(&host, &[iv(2.0, 4.0), iv(4.0, 6.0)]);
        assert_eq!(got.intervals, vec![(0.0, 2.0), (4.0, 4.0), (6.0, 10.0)]);
    }

    #[test]
    fn frame_round_trip() {
        let (frame, seg) = Frame::normalize((1.0, 2.0), (4.0, 6.0)).unwrap();
        assert!((seg.len() - 5.0).abs() < 1e-12);
        let local = frame.to_local((4.0, 6.0));
        assert!((local.0 - 5.0).abs() < 1e-12 && local.1.abs() < 1e-12);
        let world = frame.to_world(local);
        assert!((world.0 - 4.0).abs() < 1e-12 && (world.1 - 6.0).abs() < 1e-12);
    }

    #[test]
    fn merged_spans_wraparound() {
        let two_pi = std::f64::consts::TAU;
        // One arc straddling 0.
        let arcs = [Arc {
            mid: 0.0,
            half_width: 0.5,
            full: false,
        }];
        let spans = merged_forbidden_spans(&arcs).unwrap();
        assert_eq!(spans.len(), 1);
        let (lo, hi) = spans[0];
        assert!((lo - (two_pi - 0.5)).abs() < 1e-12);
        assert!((hi - lo - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measure_conservation() {
        let host = Segment::new(0.0, 10.0).unwrap();
        let forb = [iv(-2.0, 1.0), iv(0.5, 3.0), iv(5.0, 5.5), iv(9.0, 12.0)];
        let feas = feasible_set(&host, &forb);
        let clipped = forbidden_len_clipped(&host, &forb);
        assert!((feas.total_len() + clipped - host.len()).abs() < 1e-9);
    }
}
