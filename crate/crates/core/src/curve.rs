//! Planar profile curves in the meridian half-plane.
//!
//! Coordinates are (x3, x1): x3 along the rotation axis, x1 the distance
//! to it. Tangent angle θ = arg T, normal n = (sin θ, −cos θ), curvature
//! κ with T′ = κ·n (equivalently θ′ = −κ), and the surface of revolution
//! about the x3-axis has mean curvature 2H(s) = κ(s) + cos θ(s)/x1(s)
//! with respect to the normal induced by n.

use crate::error::Error;
use crate::numeric::rk4_step;
use crate::Result;
use std::ops::{Add, Mul, Neg, Sub};

/// Positivity tolerance for distance-to-axis in curvature queries.
pub const AXIS_TOL: f64 = 1e-12;

/// Point in the (x3, x1) half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x3: f64,
    pub x1: f64,
}

impl Point {
    pub fn new(x3: f64, x1: f64) -> Self {
        Self { x3, x1 }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x3 * o.x3 + self.x1 * o.x1
    }

    /// 2-D cross product (z-component of the wedge).
    pub fn cross(self, o: Point) -> f64 {
        self.x3 * o.x1 - self.x1 * o.x3
    }

    pub fn norm(self) -> f64 {
        self.x3.hypot(self.x1)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// arg of the vector, in (−π, π].
    pub fn angle(self) -> f64 {
        self.x1.atan2(self.x3)
    }

    pub fn unit_at_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x3 + o.x3, self.x1 + o.x1)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x3 - o.x3, self.x1 - o.x1)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, c: f64) -> Point {
        Point::new(self.x3 * c, self.x1 * c)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x3, -self.x1)
    }
}

/// The normal n = (sin θ, −cos θ) for tangent angle θ.
pub fn normal_at(theta: f64) -> Point {
    Point::new(theta.sin(), -theta.cos())
}

/// Position, tangent angle, and curvature at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct CurvaturePoint {
    pub pos: Point,
    pub theta: f64,
    pub kappa: f64,
}

impl CurvaturePoint {
    pub fn tangent(&self) -> Point {
        Point::unit_at_angle(self.theta)
    }

    pub fn normal(&self) -> Point {
        normal_at(self.theta)
    }
}

/// A curve evaluable at any arc-length parameter inside its domain.
///
/// Implementations clamp `s` to the domain; callers that care should stay
/// strictly inside. The tangent angle must be continuous (unwrapped).
pub trait ArcCurve {
    fn domain(&self) -> (f64, f64);
    fn at(&self, s: f64) -> CurvaturePoint;

    /// Mean curvature of the surface of revolution at parameter `s`.
    fn mean_curvature_at(&self, s: f64) -> f64 {
        let p = self.at(s);
        0.5 * (p.kappa + p.theta.cos() / p.pos.x1)
    }
}

/// Circular arc, parameterized by arc length.
///
/// Position angle φ(s) = phi0 + dir·s/r; dir = −1 traverses clockwise in
/// the standard (x3, x1) orientation, which for a circle about the origin
/// carries the inward normal and κ = +1/r.
#[derive(Debug, Clone, Copy)]
pub struct CircleArc {
    pub center: Point,
    pub radius: f64,
    pub phi0: f64,
    pub dir: f64,
    pub s_min: f64,
    pub s_max: f64,
}

impl CircleArc {
    pub fn new(center: Point, radius: f64, phi0: f64, dir: f64, s_min: f64, s_max: f64) -> Self {
        assert!(radius > 0.0 && (dir == 1.0 || dir == -1.0) && s_min < s_max);
        Self {
            center,
            radius,
            phi0,
            dir,
            s_min,
            s_max,
        }
    }

    /// Arc through `p` on the circle, with the traversal direction chosen
    /// so that the tangent at `p` equals `tangent_hint` (up to sign).
    pub fn through_point(center: Point, p: Point, tangent_hint: Point, s_min: f64, s_max: f64) -> Self {
        let rvec = p - center;
        let radius = rvec.norm();
        let phi0 = rvec.angle();
        // tangent for dir = +1 is (−sin φ, cos φ)
        let t_plus = Point::new(-phi0.sin(), phi0.cos());
        let dir = if t_plus.dot(tangent_hint) >= 0.0 { 1.0 } else { -1.0 };
        Self::new(center, radius, phi0, dir, s_min, s_max)
    }

    pub fn phi_at(&self, s: f64) -> f64 {
        self.phi0 + self.dir * s / self.radius
    }

    /// Parameter at which the position angle equals `phi` (mod 2π), taking
    /// the representative reached by moving in the traversal direction.
    pub fn param_of_angle(&self, phi: f64) -> f64 {
        let two_pi = std::f64::consts::TAU;
        let mut d = (phi - self.phi0) * self.dir;
        d = d.rem_euclid(two_pi);
        d * self.radius
    }
}

impl ArcCurve for CircleArc {
    fn domain(&self) -> (f64, f64) {
        (self.s_min, self.s_max)
    }

    fn at(&self, s: f64) -> CurvaturePoint {
        let s = s.clamp(self.s_min, self.s_max);
        let phi = self.phi_at(s);
        let pos = self.center + Point::new(phi.cos(), phi.sin()) * self.radius;
        // theta = phi + dir * pi/2, continuous in s
        let theta = phi + self.dir * std::f64::consts::FRAC_PI_2;
        CurvaturePoint {
            pos,
            theta,
            kappa: -self.dir / self.radius,
        }
    }
}

/// Straight line through `start` at constant tangent angle.
#[derive(Debug, Clone, Copy)]
pub struct StraightLine {
    pub start: Point,
    pub theta: f64,
    pub s_min: f64,
    pub s_max: f64,
}

impl ArcCurve for StraightLine {
    fn domain(&self) -> (f64, f64) {
        (self.s_min, self.s_max)
    }

    fn at(&self, s: f64) -> CurvaturePoint {
        let s = s.clamp(self.s_min, self.s_max);
        CurvaturePoint {
            pos: self.start + Point::unit_at_angle(self.theta) * s,
            theta: self.theta,
            kappa: 0.0,
        }
    }
}

/// Reflection of a curve across the x1-axis (x3 ↦ −x3), same parameter.
///
/// The reflected curve's own normal convention flips the geometric normal,
/// so κ and H change sign relative to the original.
pub struct Reflected<'a, C: ArcCurve + ?Sized>(pub &'a C);

impl<C: ArcCurve + ?Sized> ArcCurve for Reflected<'_, C> {
    fn domain(&self) -> (f64, f64) {
        self.0.domain()
    }

    fn at(&self, s: f64) -> CurvaturePoint {
        let p = self.0.at(s);
        CurvaturePoint {
            pos: Point::new(-p.pos.x3, p.pos.x1),
            theta: std::f64::consts::PI - p.theta,
            kappa: -p.kappa,
        }
    }
}

/// Restriction of a curve to a sub-domain.
pub struct Clipped<C: ArcCurve> {
    pub inner: C,
    pub lo: f64,
    pub hi: f64,
}

impl<C: ArcCurve> ArcCurve for Clipped<C> {
    fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn at(&self, s: f64) -> CurvaturePoint {
        self.inner.at(s.clamp(self.lo, self.hi))
    }
}

/// One sample of a `PlanarCurve`.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub s: f64,
    pub pos: Point,
    pub theta: f64,
    pub kappa: f64,
}

/// Sampled arc-length profile curve, strictly on the x1 > 0 side.
#[derive(Debug, Clone)]
pub struct PlanarCurve {
    samples: Vec<Sample>,
}

/// Curvature profile for reconstruction: a curvature function on a
/// parameter interval plus the initial position and tangent angle.
pub struct CurvatureProfile {
    pub s_lo: f64,
    pub s_hi: f64,
    pub seed_s: f64,
    pub seed_pos: Point,
    pub seed_theta: f64,
    pub kappa: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl PlanarCurve {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Domain("curve needs at least 2 samples".into()));
        }
        for w in samples.windows(2) {
            if w[1].s <= w[0].s {
                return Err(Error::Domain("arc-length parameter must be strictly increasing".into()));
            }
        }
        if let Some(bad) = samples.iter().find(|p| p.pos.x1 <= 0.0) {
            return Err(Error::DomainExit {
                s: bad.s,
                x1: bad.pos.x1,
            });
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.samples[0].s, self.samples[self.samples.len() - 1].s)
    }

    /// Sample a curve provider on [s_lo, s_hi] with a curvature-adaptive
    /// step (never larger than `max_step`).
    pub fn from_arc_curve<C: ArcCurve + ?Sized>(
        curve: &C,
        s_lo: f64,
        s_hi: f64,
        max_step: f64,
    ) -> Result<Self> {
        assert!(s_hi > s_lo && max_step > 0.0);
        let mut samples = Vec::new();
        let mut s = s_lo;
        loop {
            let p = curve.at(s);
            samples.push(Sample {
                s,
                pos: p.pos,
                theta: p.theta,
                kappa: p.kappa,
            });
            if s >= s_hi {
                break;
            }
            let step = max_step.min(0.05 / (p.kappa.abs() + 1.0)).max(1e-7);
            s = if s + 1.5 * step >= s_hi { s_hi } else { s + step };
        }
        Self::new(samples)
    }

    /// Integrate a curvature profile into a curve (fixed-step RK4 on
    /// θ′ = −κ(s), pos′ = (cos θ, sin θ), both directions from the seed).
    pub fn reconstruct(profile: &CurvatureProfile, step: f64) -> Result<Self> {
        if step <= 0.0 {
            return Err(Error::Domain("step must be positive".into()));
        }
        if profile.seed_pos.x1 <= 0.0 {
            return Err(Error::DomainExit {
                s: profile.seed_s,
                x1: profile.seed_pos.x1,
            });
        }
        if !(profile.s_lo..=profile.s_hi).contains(&profile.seed_s) {
            return Err(Error::Domain("seed parameter outside profile domain".into()));
        }
        let march = |target: f64| -> Result<Vec<Sample>> {
            let mut out = Vec::new();
            let mut s = profile.seed_s;
            let mut y = [profile.seed_pos.x3, profile.seed_pos.x1, profile.seed_theta];
            let sign = if target >= s { 1.0 } else { -1.0 };
            while (target - s) * sign > 1e-15 {
                let h = sign * step.min((target - s).abs());
                let rhs = |t: f64, y: &[f64; 3]| [y[2].cos(), y[2].sin(), -(profile.kappa)(t)];
                y = rk4_step(&rhs, s, &y, h);
                s += h;
                if y[1] <= 0.0 {
                    return Err(Error::DomainExit { s, x1: y[1] });
                }
                out.push(Sample {
                    s,
                    pos: Point::new(y[0], y[1]),
                    theta: y[2],
                    kappa: (profile.kappa)(s),
                });
            }
            Ok(out)
        };
        let mut back = march(profile.s_lo)?;
        back.reverse();
        back.push(Sample {
            s: profile.seed_s,
            pos: profile.seed_pos,
            theta: profile.seed_theta,
            kappa: (profile.kappa)(profile.seed_s),
        });
        back.extend(march(profile.s_hi)?);
        Self::new(back)
    }

    fn segment_index(&self, s: f64) -> usize {
        let n = self.samples.len();
        match self
            .samples
            .binary_search_by(|p| p.s.partial_cmp(&s).unwrap())
        {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    /// Mean curvature of the surface of revolution at parameter `s`.
    pub fn mean_curvature(&self, s: f64) -> Result<f64> {
        let p = self.at(s);
        if p.pos.x1 < AXIS_TOL {
            return Err(Error::AxisContact { s, x1: p.pos.x1 });
        }
        Ok(0.5 * (p.kappa + p.theta.cos() / p.pos.x1))
    }

    /// Mean curvature at sample `i` (no interpolation).
    pub fn mean_curvature_sample(&self, i: usize) -> Result<f64> {
        let p = &self.samples[i];
        if p.pos.x1 < AXIS_TOL {
            return Err(Error::AxisContact { s: p.s, x1: p.pos.x1 });
        }
        Ok(0.5 * (p.kappa + p.theta.cos() / p.pos.x1))
    }

    /// Brute-force polyline self-intersection test with a bounding-box
    /// prefilter; adjacent segments are excluded. Returns the first
    /// offending pair in lexicographic order.
    pub fn self_intersects(&self) -> Option<(usize, usize)> {
        let pts: Vec<Point> = self.samples.iter().map(|p| p.pos).collect();
        let n = pts.len() - 1;
        let boxes: Vec<(f64, f64, f64, f64)> = (0..n)
            .map(|i| {
                let (a, b) = (pts[i], pts[i + 1]);
                (
                    a.x3.min(b.x3),
                    a.x3.max(b.x3),
                    a.x1.min(b.x1),
                    a.x1.max(b.x1),
                )
            })
            .collect();
        for i in 0..n {
            let bi = boxes[i];
            for j in (i + 2)..n {
                let bj = boxes[j];
                if bj.0 > bi.1 || bj.1 < bi.0 || bj.2 > bi.3 || bj.3 < bi.2 {
                    continue;
                }
                if segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Symmetric discrete Hausdorff distance between sample polylines.
    pub fn hausdorff_to(&self, other: &PlanarCurve) -> f64 {
        directed_hausdorff(self, other).max(directed_hausdorff(other, self))
    }

    /// Curve with reversed traversal. The geometric normal flips, so κ
    /// changes sign (and so does the induced mean curvature).
    pub fn reversed(&self) -> Self {
        let (s0, s1) = self.s_range();
        let samples = self
            .samples
            .iter()
            .rev()
            .map(|p| Sample {
                s: s0 + (s1 - p.s),
                pos: p.pos,
                theta: p.theta + std::f64::consts::PI,
                kappa: -p.kappa,
            })
            .collect();
        Self { samples }
    }

    /// Mirror across the x1-axis keeping the traversal order; κ flips.
    pub fn reflected_x3(&self) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|p| Sample {
                s: p.s,
                pos: Point::new(-p.pos.x3, p.pos.x1),
                theta: std::f64::consts::PI - p.theta,
                kappa: -p.kappa,
            })
            .collect();
        Self { samples }
    }

    /// Max deviation between chord lengths and parameter increments, and
    /// max residual of θ increments against the curvature integral
    /// (trapezoid). Used to spot-check the arc-length invariants.
    pub fn discretization_residuals(&self) -> (f64, f64) {
        let mut chord = 0.0f64;
        let mut turn = 0.0f64;
        for w in self.samples.windows(2) {
            let ds = w[1].s - w[0].s;
            chord = chord.max((w[1].pos.dist(w[0].pos) - ds).abs());
            let theta_inc = w[1].theta - w[0].theta;
            let kappa_int = -0.5 * (w[0].kappa + w[1].kappa) * ds;
            turn = turn.max((theta_inc - kappa_int).abs());
        }
        (chord, turn)
    }

    /// CSV with header `s,x3,x1,theta,kappa`, shortest round-trip decimal
    /// notation per field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,x3,x1,theta,kappa\n");
        for p in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                p.s, p.pos.x3, p.pos.x1, p.theta, p.kappa
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 {
                if line.trim() != "s,x3,x1,theta,kappa" {
                    return Err(Error::Io(format!("unexpected CSV header: {line}")));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(Error::Io(format!("bad CSV row {i}: {line}")));
            }
            let v: Vec<f64> = fields
                .iter()
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Io(format!("bad number in row {i}: {e}")))?;
            samples.push(Sample {
                s: v[0],
                pos: Point::new(v[1], v[2]),
                theta: v[3],
                kappa: v[4],
            });
        }
        Self::new(samples)
    }

    /// SVG rendering: fixed viewbox, the curve as a polyline, the rotation
    /// axis x1 = 0, and the unit circle for reference.
    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-3.0 -3.1 6.0 3.7\">\n",
        );
        out.push_str("  <line x1=\"-3.0\" y1=\"0\" x2=\"3.0\" y2=\"0\" stroke=\"#999\" stroke-width=\"0.01\"/>\n");
        out.push_str("  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"0.01\"/>\n");
        out.push_str("  <polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.015\" points=\"");
        for (i, p) in self.samples.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{:.6},{:.6}", p.pos.x3, -p.pos.x1));
        }
        out.push_str("\"/>\n</svg>\n");
        out
    }
}

impl ArcCurve for PlanarCurve {
    fn domain(&self) -> (f64, f64) {
        self.s_range()
    }

    /// Cubic Hermite interpolation of position and tangent angle between
    /// samples (derivatives (cos θ, sin θ) and −κ); κ interpolates
    /// linearly.
    fn at(&self, s: f64) -> CurvaturePoint {
        let (lo, hi) = self.s_range();
        let s = s.clamp(lo, hi);
        let i = self.segment_index(s);
        let (a, b) = (&self.samples[i], &self.samples[i + 1]);
        let h = b.s - a.s;
        let u = (s - a.s) / h;
        let (h00, h10, h01, h11) = hermite_basis(u);
        let ta = Point::unit_at_angle(a.theta);
        let tb = Point::unit_at_angle(b.theta);
        let pos = a.pos * h00 + ta * (h * h10) + b.pos * h01 + tb * (h * h11);
        let theta = h00 * a.theta + h10 * h * (-a.kappa) + h01 * b.theta + h11 * h * (-b.kappa);
        let kappa = (1.0 - u) * a.kappa + u * b.kappa;
        CurvaturePoint { pos, theta, kappa }
    }
}

fn hermite_basis(u: f64) -> (f64, f64, f64, f64) {
    let u2 = u * u;
    let u3 = u2 * u;
    (
        2.0 * u3 - 3.0 * u2 + 1.0,
        u3 - 2.0 * u2 + u,
        -2.0 * u3 + 3.0 * u2,
        u3 - u2,
    )
}

/// Mean curvature of the surface of revolution for a graph x1 = c(x3),
/// from the profile derivatives: 2H = −c″/(1+c′²)^{3/2} + 1/(c·(1+c′²)^{1/2}).
pub fn mean_curvature_graph(c: f64, c1: f64, c2: f64) -> f64 {
    let w = 1.0 + c1 * c1;
    0.5 * (-c2 / w.powf(1.5) + 1.0 / (c * w.sqrt()))
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x3 >= a.x3.min(b.x3)
        && p.x3 <= a.x3.max(b.x3)
        && p.x1 >= a.x1.min(b.x1)
        && p.x1 <= a.x1.max(b.x1)
}

/// Proper or touching intersection of segments [p1,p2] and [p3,p4].
pub fn segments_intersect(p1: Point, p2: Point, p3: Point, p4: Point) -> bool {
    let d1 = (p4 - p3).cross(p1 - p3);
    let d2 = (p4 - p3).cross(p2 - p3);
    let d3 = (p2 - p1).cross(p3 - p1);
    let d4 = (p2 - p1).cross(p4 - p1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p3, p4, p1))
        || (d2 == 0.0 && on_segment(p3, p4, p2))
        || (d3 == 0.0 && on_segment(p1, p2, p3))
        || (d4 == 0.0 && on_segment(p1, p2, p4))
}

fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

fn directed_hausdorff(from: &PlanarCurve, to: &PlanarCurve) -> f64 {
    let pts: Vec<Point> = to.samples().iter().map(|p| p.pos).collect();
    let mut worst = 0.0f64;
    for p in from.samples() {
        let mut best = f64::INFINITY;
        for w in pts.windows(2) {
            let d = point_segment_dist(p.pos, w[0], w[1]);
            if d < best {
                best = d;
            }
        }
        if best > worst {
            worst = best;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_profile() -> CurvatureProfile {
        CurvatureProfile {
            s_lo: 0.0,
            s_hi: 1.0,
            seed_s: 0.0,
            seed_pos: Point::new(0.0, 1.0),
            seed_theta: 0.0,
            kappa: Box::new(|_| 0.0),
        }
    }

    #[test]
    fn reconstruct_zero_curvature_is_line() {
        let c = PlanarCurve::reconstruct(&line_profile(), 1e-3).unwrap();
        let end = c.samples().last().unwrap();
        assert!(end.pos.dist(Point::new(1.0, 1.0)) < 1e-10);
        let (chord, turn) = c.discretization_residuals();
        assert!(chord < 1e-12 && turn < 1e-12);
    }

    #[test]
    fn reconstruct_unit_curvature_is_circle() {
        // κ ≡ 1 from (0,1) with θ0 = π/2 bends toward n = (1,0): the
        // semicircle about (1,1) ending at (2,1).
        let profile = CurvatureProfile {
            s_lo: 0.0,
            s_hi: std::f64::consts::PI,
            seed_s: 0.0,
            seed_pos: Point::new(0.0, 1.0),
            seed_theta: std::f64::consts::FRAC_PI_2,
            kappa: Box::new(|_| 1.0),
        };
        let c = PlanarCurve::reconstruct(&profile, 1e-3).unwrap();
        let end = c.samples().last().unwrap();
        assert!(end.pos.dist(Point::new(2.0, 1.0)) < 1e-9);
        for p in c.samples() {
            assert!((p.pos.dist(Point::new(1.0, 1.0)) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn reconstruct_domain_exit() {
        let profile = CurvatureProfile {
            s_lo: 0.0,
            s_hi: 3.0,
            seed_s: 0.0,
            seed_pos: Point::new(0.0, 0.5),
            seed_theta: -std::f64::consts::FRAC_PI_2,
            kappa: Box::new(|_| 0.0),
        };
        assert!(matches!(
            PlanarCurve::reconstruct(&profile, 1e-3),
            Err(Error::DomainExit { .. })
        ));
    }

    #[test]
    fn cylinder_mean_curvature() {
        // generatrix x1 = t traversed with x3 increasing: H = 1/(2t)
        let t = 0.6;
        let line = StraightLine {
            start: Point::new(-1.0, t),
            theta: 0.0,
            s_min: 0.0,
            s_max: 2.0,
        };
        let c = PlanarCurve::from_arc_curve(&line, 0.0, 2.0, 0.05).unwrap();
        for i in 0..c.len() {
            assert!((c.mean_curvature_sample(i).unwrap() - 1.0 / (2.0 * t)).abs() < 1e-15);
        }
    }

    #[test]
    fn sphere_mean_curvature() {
        // unit circle with poles on the axis, inward normal: H = 1
        let arc = CircleArc::new(Point::new(0.0, 0.0), 1.0, std::f64::consts::PI, -1.0, 0.2, 2.9);
        let c = PlanarCurve::from_arc_curve(&arc, 0.2, 2.9, 0.01).unwrap();
        for i in 0..c.len() {
            assert!((c.mean_curvature_sample(i).unwrap() - 1.0).abs() < 1e-12);
        }
        let mid = c.mean_curvature(1.3).unwrap();
        assert!((mid - 1.0).abs() < 1e-9);
    }

    #[test]
    fn straight_segment_no_self_intersection() {
        let c = PlanarCurve::reconstruct(&line_profile(), 1e-2).unwrap();
        assert!(c.self_intersects().is_none());
    }

    #[test]
    fn figure_eight_self_intersects() {
        let pts = [
            Point::new(-1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(1.0, 1.0),
            Point::new(-1.0, 2.0),
        ];
        let samples: Vec<Sample> = pts
            .iter()
            .enumerate()
            .map(|(i, &pos)| Sample {
                s: i as f64,
                pos,
                theta: 0.0,
                kappa: 0.0,
            })
            .collect();
        let c = PlanarCurve::new(samples).unwrap();
        assert_eq!(c.self_intersects(), Some((0, 2)));
    }

    #[test]
    fn closed_polygon_circle_no_intersection() {
        let n = 64;
        let mut samples = Vec::new();
        for i in 0..=n {
            let phi = std::f64::consts::TAU * i as f64 / n as f64;
            samples.push(Sample {
                s: i as f64,
                pos: Point::new(phi.cos(), 2.0 + phi.sin()),
                theta: 0.0,
                kappa: 0.0,
            });
        }
        let c = PlanarCurve::new(samples).unwrap();
        assert!(c.self_intersects().is_none());
    }

    #[test]
    fn hausdorff_identical_and_concentric() {
        let arc = CircleArc::new(Point::new(0.0, 3.0), 1.0, 0.0, 1.0, 0.0, std::f64::consts::TAU);
        let c1 = PlanarCurve::from_arc_curve(&arc, 0.0, std::f64::consts::TAU, 0.01).unwrap();
        assert_eq!(c1.hausdorff_to(&c1), 0.0);
        let h = 0.125;
        let arc2 = CircleArc::new(
            Point::new(0.0, 3.0),
            1.0 + h,
            0.0,
            1.0,
            0.0,
            (1.0 + h) * std::f64::consts::TAU,
        );
        let c2 =
            PlanarCurve::from_arc_curve(&arc2, 0.0, (1.0 + h) * std::f64::consts::TAU, 0.01).unwrap();
        assert!((c1.hausdorff_to(&c2) - h).abs() < 1e-4);
    }

    #[test]
    fn csv_round_trip() {
        let c = PlanarCurve::reconstruct(&line_profile(), 0.1).unwrap();
        let csv = c.to_csv();
        let back = PlanarCurve::from_csv(&csv).unwrap();
        for (a, b) in c.samples().iter().zip(back.samples()) {
            assert_eq!(a.pos.x3, b.pos.x3);
            assert_eq!(a.pos.x1, b.pos.x1);
            assert_eq!(a.theta, b.theta);
        }
    }

    #[test]
    fn graph_form_matches_sample_form_on_sphere() {
        // x1 = sqrt(1 - x3^2): c' = -x3/c, c'' = -1/c^3
        let x3: f64 = 0.4;
        let c = (1.0 - x3 * x3).sqrt();
        let h = mean_curvature_graph(c, -x3 / c, -1.0 / (c * c * c));
        assert!((h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_preserves_mean_curvature_with_orientation_flip() {
        let arc = CircleArc::new(Point::new(0.0, 0.0), 1.0, std::f64::consts::PI, -1.0, 0.3, 2.8);
        let c = PlanarCurve::from_arc_curve(&arc, 0.3, 2.8, 0.01).unwrap();
        let m = c.reflected_x3().reversed();
        for (i, j) in (0..c.len()).zip((0..m.len()).rev()) {
            let a = c.mean_curvature_sample(i).unwrap();
            let b = m.mean_curvature_sample(j).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
