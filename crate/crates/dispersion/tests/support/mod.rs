//! Shared instance generators for the integration suites. Everything is
//! seeded so failures replay exactly.

use dispersion::geom::{CircleSpec, Point, Segment};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];

pub struct LineInstance {
    pub points: Vec<Point>,
    pub segment: Segment,
    pub k: usize,
    pub alpha: f64,
}

pub fn gen_line(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize) -> LineInstance {
    let len = rng.gen_range(2.0..12.0);
    let segment = Segment::new(0.0, len).unwrap();
    let n = rng.gen_range(0..=max_n);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let x = rng.gen_range(-2.0..len + 2.0);
        // A third of the points sit on the axis itself.
        let y = if rng.gen_bool(0.33) {
            0.0
        } else {
            rng.gen_range(-3.0..3.0)
        };
        points.push(Point::new(x, y));
    }
    LineInstance {
        points,
        segment,
        k: rng.gen_range(1..=max_k),
        alpha: ALPHAS[rng.gen_range(0..ALPHAS.len())],
    }
}

pub struct CircInstance {
    pub points: Vec<Point>,
    pub circle: CircleSpec,
    pub k: usize,
    pub alpha: f64,
}

pub fn gen_circle(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize) -> CircInstance {
    let radius = rng.gen_range(0.5..3.0);
    let center = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let circle = CircleSpec::new(center, radius).unwrap();
    let n = rng.gen_range(0..=max_n);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        if rng.gen_bool(0.1) {
            // Occasionally drop a point at or near the center.
            points.push(Point::new(
                center.x + rng.gen_range(-0.05..0.05),
                center.y + rng.gen_range(-0.05..0.05),
            ));
            continue;
        }
        let ang = rng.gen_range(0.0..std::f64::consts::TAU);
        let d = rng.gen_range(0.0..3.0 * radius);
        points.push(Point::new(
            center.x + d * ang.cos(),
            center.y + d * ang.sin(),
        ));
    }
    CircInstance {
        points,
        circle,
        k: rng.gen_range(1..=max_k),
        alpha: ALPHAS[rng.gen_range(0..ALPHAS.len())],
    }
}

pub struct MoflInstance {
    pub points: Vec<Point>,
    pub segment: Segment,
    pub k: usize,
    pub lambda: f64,
    pub alpha: f64,
}

pub fn gen_mofl(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize) -> MoflInstance {
    let len = rng.gen_range(4.0..14.0);
    let segment = Segment::new(0.0, len).unwrap();
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_k);
    let lambda = rng.gen_range(0.3..2.0);
    // Keep the instance feasible: (k - 1) * alpha * lambda must fit.
    let alpha_cap = if k > 1 {
        len / ((k - 1) as f64 * lambda)
    } else {
        2.0
    };
    let alpha = rng.gen_range(0.05..alpha_cap.min(2.0).max(0.06));
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let x = rng.gen_range(-1.0..len + 1.0);
        let y = if rng.gen_bool(0.5) {
            0.0
        } else {
            rng.gen_range(-1.5..1.5)
        };
        points.push(Point::weighted(x, y, rng.gen_range(1..=10) as f64));
    }
    MoflInstance {
        points,
        segment,
        k,
        lambda,
        alpha,
    }
}
