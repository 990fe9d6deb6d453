//! Smooth gluing of two transversally intersecting profile curves.
//!
//! Both curves are parameterized by arc length with the corner at s = 0.
//! Each side is "half-polished": its curvature is blended by a mollifier
//! onto a common constant K over a window of length λ, after which the
//! curve runs on a circle of radius 1/K. The two tail circles are matched
//! to a common center O, a minor arc connects the blend ends, and the
//! assembled curve is verified a posteriori: locality, embeddedness,
//! angle control, and the one-sided mean-curvature bound.
//!
//! For orientation +1 (T₂·n₁ > 0 at the corner) the assembled surface
//! satisfies H(s) ≥ Hᵢ(s) across the modification; orientation −1 is
//! handled by reflecting across the x1-axis, gluing, and reflecting back,
//! which turns the bound into H(s) ≤ Hᵢ(s).

use crate::curve::{normal_at, ArcCurve, PlanarCurve, Point, Reflected, Sample};
use crate::error::Error;
use crate::numeric::rk4_step;
use crate::report::{Section, Witness};
use crate::Result;

/// Output sampling step for assembled curves (refined where curvature is
/// large; blends and arcs are sampled at their own finer resolution).
pub const DEFAULT_STEP: f64 = 1e-3;

/// RK4 sub-steps across one blend window.
const BLEND_STEPS: usize = 256;

/// Tolerance on the matched center residual.
const MATCH_TOL: f64 = 1e-10;

/// Smooth step s(x) = exp(−1/x) for x > 0, else 0.
fn smooth_bump(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Mollifier μ_λ(x) = s(x) / (s(x) + s(λ − x)): 0 for x ≤ 0, 1 for
/// x ≥ λ, smooth and nondecreasing in between.
pub fn mollifier(lambda: f64, x: f64) -> f64 {
    assert!(lambda > 0.0);
    if x <= 0.0 {
        return 0.0;
    }
    if x >= lambda {
        return 1.0;
    }
    let a = smooth_bump(x);
    let b = smooth_bump(lambda - x);
    a / (a + b)
}

/// Gluing parameters: blend length λ, target blend curvature K, allowed
/// displacement δ from the corner, and the corner orientation sign.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RoundCornerParams {
    pub lambda: f64,
    pub k_blend: f64,
    pub delta: f64,
    /// +1: T₂·n₁ > 0 at the corner (lower mean-curvature bound);
    /// −1: the mirrored variant (upper bound).
    pub orientation: i8,
}

/// Corner geometry derived from the two curves (always in the +1-oriented
/// working frame): bisector angle θ, half-opening θ*, the angle bands α
/// and β, the anchor window ε₂, the axis-distance floor d₀, and the
/// curvature range over the windows.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CornerFrame {
    pub p_x3: f64,
    pub p_x1: f64,
    pub theta: f64,
    pub theta_star: f64,
    pub alpha: f64,
    pub beta: f64,
    pub eps2: f64,
    pub d0: f64,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub sup_h: f64,
}

fn wrap_angle(x: f64) -> f64 {
    let mut y = x % std::f64::consts::TAU;
    if y > std::f64::consts::PI {
        y -= std::f64::consts::TAU;
    } else if y <= -std::f64::consts::PI {
        y += std::f64::consts::TAU;
    }
    y
}

/// Derive the corner frame for a +1-oriented pair. Fails on corners that
/// are not transversal, meet away from s = 0, or sit too close to the
/// axis for the requested δ.
pub fn corner_frame<C1: ArcCurve + ?Sized, C2: ArcCurve + ?Sized>(
    r1: &C1,
    r2: &C2,
    delta: f64,
) -> Result<CornerFrame> {
    let a = r1.at(0.0);
    let b = r2.at(0.0);
    if a.pos.dist(b.pos) > 1e-9 {
        return Err(Error::ConstraintViolation(format!(
            "curves meet at distance {} instead of a common corner",
            a.pos.dist(b.pos)
        )));
    }
    let p = a.pos;
    if b.tangent().dot(a.normal()) <= 0.0 {
        return Err(Error::ConstraintViolation(
            "corner orientation is not +1 (T2*n1 <= 0)".into(),
        ));
    }
    let t0 = a.tangent() + b.tangent();
    if t0.norm() < 1e-9 {
        return Err(Error::ConstraintViolation("tangents are opposite at the corner".into()));
    }
    let theta = t0.angle();
    let theta_star = wrap_angle(a.theta - theta);
    if !(1e-3..std::f64::consts::FRAC_PI_2 - 1e-3).contains(&theta_star) {
        return Err(Error::ConstraintViolation(format!(
            "corner half-opening {theta_star} outside the transversal range"
        )));
    }
    if delta <= 0.0 || delta >= 0.99 * p.x1 {
        return Err(Error::ConstraintViolation(format!(
            "delta = {delta} must be positive and below the corner height {}",
            p.x1
        )));
    }
    let beta = 0.5 * (theta_star / 4.0).min(std::f64::consts::FRAC_PI_4 - theta_star / 2.0);
    let alpha = (theta_star - beta).min(std::f64::consts::FRAC_PI_2 - theta_star - beta);

    // Largest two-sided window on which both tangents stay within β of
    // their corner values and positions stay within δ/4 of p.
    let (d1lo, d1hi) = r1.domain();
    let (d2lo, d2hi) = r2.domain();
    let avail = (-d1lo).min(d1hi).min(-d2lo).min(d2hi);
    if avail <= 0.0 {
        return Err(Error::ConstraintViolation(
            "curve domains do not extend through the corner".into(),
        ));
    }
    let mut eps2 = 0.65 * avail;
    let band_ok = |w: f64| -> bool {
        let n = 129;
        for i in 0..n {
            let s = -w + 2.0 * w * i as f64 / (n - 1) as f64;
            let q1 = r1.at(s);
            let q2 = r2.at(s);
            if q1.pos.dist(p) >= delta / 4.0 || q2.pos.dist(p) >= delta / 4.0 {
                return false;
            }
            if wrap_angle(q1.theta - (theta + theta_star)).abs() > beta
                || wrap_angle(q2.theta - (theta - theta_star)).abs() > beta
            {
                return false;
            }
        }
        true
    };
    let mut tries = 0;
    while !band_ok(eps2) {
        eps2 *= 0.5;
        tries += 1;
        if tries > 60 {
            return Err(Error::ConstraintViolation(
                "no window satisfies the angle band and locality".into(),
            ));
        }
    }

    let d0 = p.x1 - delta;
    let mut kappa_min = f64::INFINITY;
    let mut kappa_max = f64::NEG_INFINITY;
    let mut sup_h = f64::NEG_INFINITY;
    let n = 257;
    for i in 0..n {
        let s = -eps2 + 2.0 * eps2 * i as f64 / (n - 1) as f64;
        for q in [r1.at(s), r2.at(s)] {
            kappa_min = kappa_min.min(q.kappa);
            kappa_max = kappa_max.max(q.kappa);
            sup_h = sup_h.max(0.5 * (q.kappa + q.theta.cos() / q.pos.x1));
        }
    }
    Ok(CornerFrame {
        p_x3: p.x3,
        p_x1: p.x1,
        theta,
        theta_star,
        alpha,
        beta,
        eps2,
        d0,
        kappa_min,
        kappa_max,
        sup_h,
    })
}

impl RoundCornerParams {
    /// Check the parameter ledger against a frame: 2λK < min(α, β),
    /// λ < d₀/4, K > 2·sup|κ| + 1/d₀, and K − κ ∈ [a_b, b_b] with
    /// b_b < 2·a_b over the windows.
    pub fn validate(&self, frame: &CornerFrame) -> Result<()> {
        let (lambda, k) = (self.lambda, self.k_blend);
        if lambda <= 0.0 || k <= 0.0 {
            return Err(Error::ConstraintViolation("lambda and K must be positive".into()));
        }
        if 2.0 * lambda * k >= frame.alpha.min(frame.beta) {
            return Err(Error::ConstraintViolation(format!(
                "2*lambda*K = {} not below min(alpha, beta) = {}",
                2.0 * lambda * k,
                frame.alpha.min(frame.beta)
            )));
        }
        if lambda >= frame.d0 / 4.0 {
            return Err(Error::ConstraintViolation(format!(
                "lambda = {lambda} not below d0/4 = {}",
                frame.d0 / 4.0
            )));
        }
        let sup_abs = frame.kappa_min.abs().max(frame.kappa_max.abs());
        if k <= 2.0 * sup_abs + 1.0 / frame.d0 {
            return Err(Error::ConstraintViolation(format!(
                "K = {k} not above 2*sup|kappa| + 1/d0 = {}",
                2.0 * sup_abs + 1.0 / frame.d0
            )));
        }
        let a_b = k - frame.kappa_max;
        let b_b = k - frame.kappa_min;
        if !(a_b > 0.0 && b_b < 2.0 * a_b) {
            return Err(Error::ConstraintViolation(format!(
                "blend gap [a, b] = [{a_b}, {b_b}] violates 0 < a <= b < 2a"
            )));
        }
        Ok(())
    }

    /// The blend-gap interval [a_b, b_b] for a given frame.
    pub fn blend_gap(&self, frame: &CornerFrame) -> (f64, f64) {
        (self.k_blend - frame.kappa_max, self.k_blend - frame.kappa_min)
    }
}

/// State after integrating a blend window: end position and angle.
struct BlendEnd {
    pos: Point,
    theta: f64,
}

/// Integrate the half-polishing curve of side 1 from anchor s0 over
/// [s0, s0 + lambda'] with curvature κ₁(s) + (K − κ₁(s))·μ_λ(s − s0).
fn blend_forward<C: ArcCurve + ?Sized>(
    base: &C,
    s0: f64,
    lambda: f64,
    lambda_prime: f64,
    k: f64,
    steps: usize,
) -> BlendEnd {
    let start = base.at(s0);
    let mut y = [start.pos.x3, start.pos.x1, start.theta];
    let h = lambda_prime / steps as f64;
    let rhs = |s: f64, y: &[f64; 3]| {
        let kb = base.at(s).kappa;
        let kt = kb + (k - kb) * mollifier(lambda, s - s0);
        [y[2].cos(), y[2].sin(), -kt]
    };
    let mut s = s0;
    for _ in 0..steps {
        y = rk4_step(&rhs, s, &y, h);
        s += h;
    }
    BlendEnd {
        pos: Point::new(y[0], y[1]),
        theta: y[2],
    }
}

/// Integrate the side-2 half-polishing curve backward from anchor s0
/// over [s0 − lambda', s0] with curvature κ₂(s) + (K − κ₂(s))·μ_λ(s0 − s).
fn blend_backward<C: ArcCurve + ?Sized>(
    base: &C,
    s0: f64,
    lambda: f64,
    lambda_prime: f64,
    k: f64,
    steps: usize,
) -> BlendEnd {
    let start = base.at(s0);
    let mut y = [start.pos.x3, start.pos.x1, start.theta];
    let h = lambda_prime / steps as f64;
    let rhs = |s: f64, y: &[f64; 3]| {
        let kb = base.at(s).kappa;
        let kt = kb + (k - kb) * mollifier(lambda, s0 - s);
        [y[2].cos(), y[2].sin(), -kt]
    };
    let mut s = s0;
    for _ in 0..steps {
        y = rk4_step(&rhs, s, &y, -h);
        s -= h;
    }
    BlendEnd {
        pos: Point::new(y[0], y[1]),
        theta: y[2],
    }
}

/// Center of the tail circle reached by the side-`side` blend anchored at
/// `s0`: end position plus n/K.
pub fn tail_center<C: ArcCurve + ?Sized>(
    side: u8,
    base: &C,
    s0: f64,
    lambda: f64,
    k: f64,
) -> Point {
    let end = match side {
        1 => blend_forward(base, s0, lambda, lambda, k, BLEND_STEPS),
        2 => blend_backward(base, s0, lambda, lambda, k, BLEND_STEPS),
        _ => panic!("side must be 1 or 2"),
    };
    end.pos + normal_at(end.theta) * (1.0 / k)
}

/// Half-polish one side: the base curve up to the anchor, the blend
/// window, and a stretch of the tail circle. Returns the sampled curve
/// and the tail-circle center.
pub fn half_polish<C: ArcCurve + ?Sized>(
    side: u8,
    base: &C,
    s0: f64,
    params: &RoundCornerParams,
) -> Result<(PlanarCurve, Point)> {
    let lambda = params.lambda;
    let k = params.k_blend;
    let tail = (std::f64::consts::FRAC_PI_2 / k).min(lambda);
    let mut samples: Vec<Sample> = Vec::new();
    let (dlo, dhi) = base.domain();
    match side {
        1 => {
            let head = PlanarCurve::from_arc_curve(base, dlo.max(s0 - 4.0 * lambda), s0, lambda / 8.0)?;
            samples.extend_from_slice(head.samples());
            append_blend_samples(&mut samples, base, s0, lambda, k, true);
            append_circle_tail(&mut samples, k, tail);
        }
        2 => {
            // build backward then reverse into forward order ending at s0
            let mut rev: Vec<Sample> = Vec::new();
            let tail_curve = PlanarCurve::from_arc_curve(base, s0, dhi.min(s0 + 4.0 * lambda), lambda / 8.0)?;
            let mut blend: Vec<Sample> = Vec::new();
            append_blend_samples(&mut blend, base, s0, lambda, k, false);
            // blend is ordered s0 -> s0 - lambda; flip it
            blend.reverse();
            let mut circ: Vec<Sample> = Vec::new();
            let anchor = blend.first().copied().expect("blend samples");
            append_circle_tail_backward(&mut circ, anchor, k, tail);
            rev.extend(circ);
            rev.extend(blend);
            rev.extend_from_slice(tail_curve.samples());
            samples = rev;
        }
        _ => return Err(Error::Domain("side must be 1 or 2".into())),
    }
    let end = match side {
        1 => blend_forward(base, s0, lambda, lambda, k, BLEND_STEPS),
        2 => blend_backward(base, s0, lambda, lambda, k, BLEND_STEPS),
        _ => unreachable!(),
    };
    let center = end.pos + normal_at(end.theta) * (1.0 / k);
    Ok((PlanarCurve::new(samples)?, center))
}

/// Push blend samples starting after the anchor (forward: s0 → s0+λ,
/// backward: s0 → s0−λ), including the anchor itself.
fn append_blend_samples<C: ArcCurve + ?Sized>(
    out: &mut Vec<Sample>,
    base: &C,
    s0: f64,
    lambda: f64,
    k: f64,
    forward: bool,
) {
    let start = base.at(s0);
    let sign = if forward { 1.0 } else { -1.0 };
    let mut y = [start.pos.x3, start.pos.x1, start.theta];
    let h = sign * lambda / BLEND_STEPS as f64;
    let rhs = |s: f64, y: &[f64; 3]| {
        let kb = base.at(s).kappa;
        let arg = if forward { s - s0 } else { s0 - s };
        let kt = kb + (k - kb) * mollifier(lambda, arg);
        [y[2].cos(), y[2].sin(), -kt]
    };
    let kappa_at = |s: f64| {
        let kb = base.at(s).kappa;
        let arg = if forward { s - s0 } else { s0 - s };
        kb + (k - kb) * mollifier(lambda, arg)
    };
    let mut s = s0;
    if out.last().map(|q| (q.s - s0).abs() > 1e-15).unwrap_or(true) {
        out.push(Sample {
            s: s0,
            pos: start.pos,
            theta: start.theta,
            kappa: kappa_at(s0),
        });
    }
    for _ in 0..BLEND_STEPS {
        y = rk4_step(&rhs, s, &y, h);
        s += h;
        out.push(Sample {
            s,
            pos: Point::new(y[0], y[1]),
            theta: y[2],
            kappa: kappa_at(s),
        });
    }
}

/// Continue from the last sample on its tail circle (curvature K) for
/// `len` of arc, forward.
fn append_circle_tail(out: &mut Vec<Sample>, k: f64, len: f64) {
    let last = *out.last().expect("tail needs a predecessor");
    let center = last.pos + normal_at(last.theta) * (1.0 / k);
    let n = 64;
    for i in 1..=n {
        let ds = len * i as f64 / n as f64;
        let theta = last.theta - k * ds;
        out.push(Sample {
            s: last.s + ds,
            pos: center - normal_at(theta) * (1.0 / k),
            theta,
            kappa: k,
        });
    }
}

/// Prepend-equivalent: emit circle samples that END at `anchor` (which
/// sits at the start of a forward-ordered blend).
fn append_circle_tail_backward(out: &mut Vec<Sample>, anchor: Sample, k: f64, len: f64) {
    let center = anchor.pos + normal_at(anchor.theta) * (1.0 / k);
    let n = 64;
    for i in (1..=n).rev() {
        let ds = len * i as f64 / n as f64;
        let theta = anchor.theta + k * ds;
        out.push(Sample {
            s: anchor.s - ds,
            pos: center - normal_at(theta) * (1.0 / k),
            theta,
            kappa: k,
        });
    }
}

/// Find anchors (s1, s2) whose tail-circle centers coincide: coarse grid
/// scan over the window, then damped Newton on the 2×2 system.
pub fn find_center_match<C1: ArcCurve + ?Sized, C2: ArcCurve + ?Sized>(
    r1: &C1,
    r2: &C2,
    params: &RoundCornerParams,
    frame: &CornerFrame,
) -> Result<(f64, f64, Point)> {
    let w = frame.eps2;
    let lambda = params.lambda;
    let k = params.k_blend;
    let n = 65;
    let grid: Vec<f64> = (0..n).map(|i| -w + 2.0 * w * i as f64 / (n - 1) as f64).collect();
    let o1: Vec<Point> = grid.iter().map(|&s| tail_center(1, r1, s, lambda, k)).collect();
    let o2: Vec<Point> = grid.iter().map(|&s| tail_center(2, r2, s, lambda, k)).collect();
    let mut best = (0usize, 0usize, f64::INFINITY);
    for i in 0..n {
        for j in 0..n {
            let d = o1[i].dist(o2[j]);
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    let mut s1 = grid[best.0];
    let mut s2 = grid[best.1];
    let fd = w * 1e-7;
    let mut residual = best.2;
    for _ in 0..80 {
        let f0 = tail_center(1, r1, s1, lambda, k) - tail_center(2, r2, s2, lambda, k);
        residual = f0.norm();
        if residual < MATCH_TOL {
            break;
        }
        let f1 = tail_center(1, r1, s1 + fd, lambda, k) - tail_center(2, r2, s2, lambda, k);
        let f2 = tail_center(1, r1, s1, lambda, k) - tail_center(2, r2, s2 + fd, lambda, k);
        let j11 = (f1.x3 - f0.x3) / fd;
        let j21 = (f1.x1 - f0.x1) / fd;
        let j12 = (f2.x3 - f0.x3) / fd;
        let j22 = (f2.x1 - f0.x1) / fd;
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-16 {
            break;
        }
        let mut d1 = -(j22 * f0.x3 - j12 * f0.x1) / det;
        let mut d2 = -(-j21 * f0.x3 + j11 * f0.x1) / det;
        // damp: halve the step until the residual decreases
        let mut improved = false;
        for _ in 0..30 {
            let c1 = (s1 + d1).clamp(-w, w);
            let c2 = (s2 + d2).clamp(-w, w);
            let r = (tail_center(1, r1, c1, lambda, k) - tail_center(2, r2, c2, lambda, k)).norm();
            if r < residual {
                s1 = c1;
                s2 = c2;
                improved = true;
                break;
            }
            d1 *= 0.5;
            d2 *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let o_1 = tail_center(1, r1, s1, lambda, k);
    let o_2 = tail_center(2, r2, s2, lambda, k);
    residual = o_1.dist(o_2);
    if residual > MATCH_TOL {
        return Err(Error::NoMatch { residual });
    }
    Ok((s1, s2, (o_1 + o_2) * 0.5))
}

/// The assembled round corner: anchors, common center, connecting arc,
/// the half-width ε of the modified parameter span, the constraint
/// ledger, and the assembled curve itself.
#[derive(Debug, Clone)]
pub struct CornerJoin {
    pub s1: f64,
    pub s2: f64,
    pub center: Point,
    pub arc_span: f64,
    pub epsilon: f64,
    pub params: RoundCornerParams,
    pub frame: CornerFrame,
    pub checks: Vec<Section>,
    pub curve: PlanarCurve,
    /// Parameter shift of the second curve in the output: the assembled
    /// curve equals r2(s − shift) for s beyond the modification.
    pub r2_shift: f64,
}

impl CornerJoin {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_check(&self) -> Option<&Section> {
        self.checks.iter().find(|c| !c.pass)
    }

    /// JSON constraint ledger.
    pub fn ledger_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct Ledger<'a> {
            schema: u32,
            lambda: f64,
            k: f64,
            epsilon: f64,
            delta: f64,
            orientation: i8,
            s1: f64,
            s2: f64,
            arc_span: f64,
            frame: &'a CornerFrame,
            checks: &'a [Section],
        }
        serde_json::to_string_pretty(&Ledger {
            schema: crate::report::REPORT_SCHEMA,
            lambda: self.params.lambda,
            k: self.params.k_blend,
            epsilon: self.epsilon,
            delta: self.params.delta,
            orientation: self.params.orientation,
            s1: self.s1,
            s2: self.s2,
            arc_span: self.arc_span,
            frame: &self.frame,
            checks: &self.checks,
        })
        .expect("ledger serialization cannot fail")
    }
}

fn section(name: &str, margin: f64, location: f64, value: f64, note: &str) -> Section {
    Section {
        name: name.into(),
        pass: margin >= 0.0,
        margin,
        max_violation: (-margin).max(0.0),
        witness: if margin < 0.0 {
            Some(Witness {
                location,
                value,
                note: note.into(),
            })
        } else {
            None
        },
    }
}

/// Glue with the default output sampling step.
pub fn glue<C1: ArcCurve + ?Sized, C2: ArcCurve + ?Sized>(
    r1: &C1,
    r2: &C2,
    p: Point,
    params: &RoundCornerParams,
) -> Result<CornerJoin> {
    glue_with_step(r1, r2, p, params, DEFAULT_STEP)
}

/// Glue two curves at their common corner `p = r1(0) = r2(0)`.
pub fn glue_with_step<C1: ArcCurve + ?Sized, C2: ArcCurve + ?Sized>(
    r1: &C1,
    r2: &C2,
    p: Point,
    params: &RoundCornerParams,
    step: f64,
) -> Result<CornerJoin> {
    match params.orientation {
        1 => glue_plus(r1, r2, p, params, step),
        -1 => {
            let m1 = Reflected(r1);
            let m2 = Reflected(r2);
            let mp = Point::new(-p.x3, p.x1);
            let mut inner = glue_plus(&m1, &m2, mp, params, step)?;
            inner.curve = inner.curve.reflected_x3();
            inner.center = Point::new(-inner.center.x3, inner.center.x1);
            Ok(inner)
        }
        o => Err(Error::Domain(format!("orientation must be +1 or -1, got {o}"))),
    }
}

fn glue_plus<C1: ArcCurve + ?Sized, C2: ArcCurve + ?Sized>(
    r1: &C1,
    r2: &C2,
    p: Point,
    params: &RoundCornerParams,
    step: f64,
) -> Result<CornerJoin> {
    let frame = corner_frame(r1, r2, params.delta)?;
    params.validate(&frame)?;
    let lambda = params.lambda;
    let k = params.k_blend;
    let delta = params.delta;
    let (s1, s2, center) = find_center_match(r1, r2, params, &frame)?;

    let end1 = blend_forward(r1, s1, lambda, lambda, k, BLEND_STEPS);
    let start2 = blend_backward(r2, s2, lambda, lambda, k, BLEND_STEPS);
    let phi1 = end1.theta;
    let phi2 = start2.theta;
    let span = phi1 - phi2;
    let arc_len = span / k;

    let mut checks: Vec<Section> = Vec::new();
    checks.push(section(
        "anchors-ordered",
        (-s1).min(s2) + 1e-7,
        s1,
        s2,
        "s1 <= 0 <= s2",
    ));
    checks.push(section(
        "center-match",
        MATCH_TOL
            - (tail_center(1, r1, s1, lambda, k) - tail_center(2, r2, s2, lambda, k)).norm(),
        s1,
        s2,
        "tail centers coincide",
    ));
    checks.push(section(
        "center-near-corner",
        delta / 2.0 - center.dist(p),
        center.x3,
        center.dist(p),
        "d(O, p) <= delta/2",
    ));
    checks.push(section(
        "minor-arc",
        span.min(std::f64::consts::PI - span),
        phi1,
        span,
        "arc span in (0, pi)",
    ));
    checks.push(section(
        "arc-length-bound",
        std::f64::consts::TAU / k - arc_len,
        arc_len,
        arc_len,
        "L <= 2*pi/K",
    ));
    checks.push(section(
        "angle-blend-1",
        2.0 * frame.beta - (phi1 - (frame.theta + frame.theta_star)).abs(),
        s1 + lambda,
        phi1,
        "|phi1 - (theta + theta*)| <= 2*beta",
    ));
    checks.push(section(
        "angle-blend-2",
        2.0 * frame.beta - (phi2 - (frame.theta - frame.theta_star)).abs(),
        s2 - lambda,
        phi2,
        "|phi2 - (theta - theta*)| <= 2*beta",
    ));
    checks.push(section(
        "chord-direction",
        2.0 * frame.beta - wrap_angle((start2.pos - end1.pos).angle() - frame.theta).abs(),
        frame.theta,
        (start2.pos - end1.pos).angle(),
        "blend-end chord along the bisector",
    ));

    // angle drift bound |φ(s0) − φ(s0 + λ')| ≤ 2Kλ' on a λ' grid
    let mut drift_margin = f64::INFINITY;
    for i in 1..=16 {
        let lp = lambda * i as f64 / 16.0;
        let e1 = blend_forward(r1, s1, lambda, lp, k, BLEND_STEPS / 4);
        let e2 = blend_backward(r2, s2, lambda, lp, k, BLEND_STEPS / 4);
        let a1 = (e1.theta - r1.at(s1).theta).abs();
        let a2 = (e2.theta - r2.at(s2).theta).abs();
        drift_margin = drift_margin.min(2.0 * k * lp - a1).min(2.0 * k * lp - a2);
    }
    checks.push(section(
        "angle-drift",
        drift_margin,
        lambda,
        drift_margin,
        "blend angle drift within 2*K*lambda'",
    ));

    // ||O_i(s) − r_i(s)|| ≤ λ + 1/K over the anchor window
    let mut offset_margin = f64::INFINITY;
    for i in 0..33 {
        let s = -frame.eps2 + 2.0 * frame.eps2 * i as f64 / 32.0;
        let o1 = tail_center(1, r1, s, lambda, k);
        let o2 = tail_center(2, r2, s, lambda, k);
        offset_margin = offset_margin
            .min(lambda + 1.0 / k - o1.dist(r1.at(s).pos))
            .min(lambda + 1.0 / k - o2.dist(r2.at(s).pos));
    }
    checks.push(section(
        "center-offset",
        offset_margin,
        frame.eps2,
        offset_margin,
        "||O_i(s) - r_i(s)|| <= lambda + 1/K",
    ));

    // ---- assemble ----
    let (d1lo, _) = r1.domain();
    let (_, d2hi) = r2.domain();
    let mut samples: Vec<Sample> = Vec::new();
    if s1 > d1lo {
        let head = PlanarCurve::from_arc_curve(r1, d1lo, s1, step)?;
        samples.extend_from_slice(head.samples());
        samples.pop(); // the blend re-emits the anchor
    }
    append_blend_samples(&mut samples, r1, s1, lambda, k, true);
    let seam1 = samples.last().unwrap().pos.dist(end1.pos);

    // connecting arc: θ runs from φ1 down to φ2 about `center`
    let arc_steps = ((span / (0.05 / k)).ceil() as usize).clamp(16, 4096);
    let s_arc0 = samples.last().unwrap().s;
    for i in 1..=arc_steps {
        let u = span * i as f64 / arc_steps as f64;
        let theta = phi1 - u;
        samples.push(Sample {
            s: s_arc0 + u / k,
            pos: center - normal_at(theta) * (1.0 / k),
            theta,
            kappa: k,
        });
    }
    let seam2 = samples.last().unwrap().pos.dist(start2.pos);

    // side-2 blend, re-parameterized to continue the output parameter
    let shift = (samples.last().unwrap().s + lambda) - s2;
    let mut blend2: Vec<Sample> = Vec::new();
    append_blend_samples(&mut blend2, r2, s2, lambda, k, false);
    blend2.reverse();
    let theta_jump =
        std::f64::consts::TAU * ((samples.last().unwrap().theta - blend2[0].theta) / std::f64::consts::TAU).round();
    samples.extend(blend2.iter().skip(1).map(|q| Sample {
        s: q.s + shift,
        pos: q.pos,
        theta: q.theta + theta_jump,
        kappa: q.kappa,
    }));
    if s2 < d2hi {
        let tail = PlanarCurve::from_arc_curve(r2, s2, d2hi, step)?;
        samples.extend(tail.samples().iter().skip(1).map(|q| Sample {
            s: q.s + shift,
            pos: q.pos,
            theta: q.theta + theta_jump,
            kappa: q.kappa,
        }));
    }
    let curve = PlanarCurve::new(samples)?;

    checks.push(section(
        "seam-continuity",
        1e-8 - seam1.max(seam2),
        s1 + lambda,
        seam1.max(seam2),
        "arc endpoints meet the blend ends",
    ));

    // locality and embeddedness of the modified span
    let lo_mod = s1;
    let hi_mod = s1 + 2.0 * lambda + arc_len;
    let mut locality_margin = f64::INFINITY;
    for q in curve.samples() {
        if q.s >= lo_mod && q.s <= hi_mod {
            locality_margin = locality_margin.min(delta - q.pos.dist(p));
        }
    }
    checks.push(section(
        "locality",
        locality_margin,
        p.x3,
        locality_margin,
        "modified span inside B(p, delta)",
    ));

    let neigh: Vec<Sample> = curve
        .samples()
        .iter()
        .copied()
        .filter(|q| q.s >= lo_mod - frame.eps2 && q.s <= hi_mod + frame.eps2)
        .collect();
    let self_hit = if neigh.len() >= 2 {
        PlanarCurve::new(neigh)?.self_intersects()
    } else {
        None
    };
    checks.push(section(
        "no-self-intersection",
        if self_hit.is_none() { 0.0 } else { -1.0 },
        self_hit.map(|(i, _)| i as f64).unwrap_or(0.0),
        0.0,
        "corner neighborhood is embedded",
    ));

    // identity outside the modification
    let mut identity_margin = f64::INFINITY;
    for q in curve.samples() {
        if q.s < lo_mod - 1e-12 {
            identity_margin = identity_margin.min(1e-12 - q.pos.dist(r1.at(q.s).pos));
        } else if q.s > hi_mod + 1e-12 {
            identity_margin = identity_margin.min(1e-12 - q.pos.dist(r2.at(q.s - shift).pos));
        }
    }
    checks.push(section(
        "identity-outside",
        identity_margin,
        lo_mod,
        identity_margin,
        "curve equals the inputs outside the modification",
    ));

    // mean curvature bound: H ≥ H_i on the blends, H ≥ sup window H on the arc
    let mut h_margin = f64::INFINITY;
    let mut h_at = s1;
    for q in curve.samples() {
        let hq = 0.5 * (q.kappa + q.theta.cos() / q.pos.x1);
        let bound = if q.s >= s1 && q.s <= s1 + lambda {
            r1.mean_curvature_at(q.s)
        } else if q.s > s1 + lambda && q.s < s1 + lambda + arc_len {
            frame.sup_h
        } else if q.s >= s1 + lambda + arc_len && q.s <= hi_mod {
            r2.mean_curvature_at(q.s - shift)
        } else {
            continue;
        };
        if hq - bound < h_margin {
            h_margin = hq - bound;
            h_at = q.s;
        }
    }
    checks.push(section(
        "mean-curvature-bound",
        h_margin + 1e-9,
        h_at,
        h_margin,
        "H >= H_i across the modification",
    ));

    // pointwise sufficient condition on the blends:
    // κ̃ − κ ≥ |d̃ − d|/min² + |θ̃ − θ|/min
    let mut cmp_margin = f64::INFINITY;
    for q in curve.samples() {
        let (base_pt, on_blend): (CurvaturePointOwned, bool) = if q.s >= s1 && q.s <= s1 + lambda {
            (r1.at(q.s).into(), true)
        } else if q.s >= s1 + lambda + arc_len && q.s <= hi_mod {
            (r2.at(q.s - shift).into(), true)
        } else {
            (CurvaturePointOwned::zero(), false)
        };
        if !on_blend {
            continue;
        }
        let dmin = q.pos.x1.min(base_pt.x1);
        let rhs = (q.pos.x1 - base_pt.x1).abs() / (dmin * dmin)
            + (q.theta - base_pt.theta).abs() / dmin;
        cmp_margin = cmp_margin.min(q.kappa - base_pt.kappa - rhs);
    }
    checks.push(section(
        "comparison-condition",
        cmp_margin + 1e-9,
        s1,
        cmp_margin,
        "blend curvature gap dominates the distance and angle drift",
    ));

    // junction smoothness: one-sided second differences of position
    let probe = lambda / 64.0;
    let tol_c2 = 10.0 * probe.powi(3) * (4.0 * k / (lambda * lambda) + k * k + 1.0);
    let mut c2_margin = f64::INFINITY;
    for sj in [s1, s1 + lambda, s1 + lambda + arc_len, hi_mod] {
        let f = |s: f64| curve.at(s).pos;
        let left = f(sj) - f(sj - probe) * 2.0 + f(sj - 2.0 * probe);
        let right = f(sj + 2.0 * probe) - f(sj + probe) * 2.0 + f(sj);
        c2_margin = c2_margin.min(tol_c2 - (right - left).norm());
    }
    checks.push(section(
        "junction-smoothness",
        c2_margin,
        s1,
        c2_margin,
        "one-sided second differences agree at the junctions",
    ));

    let epsilon = (-s1).max(hi_mod.abs()) + lambda;
    let join = CornerJoin {
        s1,
        s2,
        center,
        arc_span: span,
        epsilon,
        params: *params,
        frame,
        checks,
        curve,
        r2_shift: shift,
    };
    if let Some(bad) = join.failed_check() {
        return Err(Error::VerificationFailure {
            check: bad.name.clone(),
            at: bad.witness.as_ref().map(|w| w.location).unwrap_or(f64::NAN),
            margin: bad.margin,
        });
    }
    Ok(join)
}

/// Plain-old-data copy of a curve point used by the comparison check.
struct CurvaturePointOwned {
    x1: f64,
    theta: f64,
    kappa: f64,
}

impl CurvaturePointOwned {
    fn zero() -> Self {
        Self {
            x1: 1.0,
            theta: 0.0,
            kappa: 0.0,
        }
    }
}

impl From<crate::curve::CurvaturePoint> for CurvaturePointOwned {
    fn from(p: crate::curve::CurvaturePoint) -> Self {
        Self {
            x1: p.pos.x1,
            theta: p.theta,
            kappa: p.kappa,
        }
    }
}

/// Derive passing round-corner parameters by a deterministic search:
/// K doubles and λ halves from frame-derived starting values until the
/// glue verifies, up to `MAX_DOUBLINGS` attempts.
pub const MAX_DOUBLINGS: usize = 20;

pub fn auto_params<C1: ArcCurve + ?Sized, C2: ArcCurve + ?Sized>(
    r1: &C1,
    r2: &C2,
    p: Point,
    delta: f64,
    orientation: i8,
) -> Result<(RoundCornerParams, CornerJoin)> {
    auto_params_with_step(r1, r2, p, delta, orientation, DEFAULT_STEP)
}

pub fn auto_params_with_step<C1: ArcCurve + ?Sized, C2: ArcCurve + ?Sized>(
    r1: &C1,
    r2: &C2,
    p: Point,
    delta: f64,
    orientation: i8,
    step: f64,
) -> Result<(RoundCornerParams, CornerJoin)> {
    let frame = match orientation {
        1 => corner_frame(r1, r2, delta)?,
        -1 => corner_frame(&Reflected(r1), &Reflected(r2), delta)?,
        o => return Err(Error::Domain(format!("orientation must be +1 or -1, got {o}"))),
    };
    let sup_abs = frame.kappa_min.abs().max(frame.kappa_max.abs());
    let k0 = 1.02
        * (2.0 * sup_abs + 1.0 / frame.d0)
            .max(2.0 * frame.kappa_max - frame.kappa_min)
            .max(8.0 / delta)
        + 1.0;
    let lambda0 = 0.98
        * (frame.d0 / 4.0)
            .min(frame.eps2 / 2.5)
            .min(delta / 8.0)
            .min(0.98 * frame.alpha.min(frame.beta) / (2.0 * k0));
    let mut last = String::new();
    for doubling in 0..MAX_DOUBLINGS {
        let params = RoundCornerParams {
            lambda: lambda0 / (1 << doubling) as f64,
            k_blend: k0 * (1 << doubling) as f64,
            delta,
            orientation,
        };
        match glue_with_step(r1, r2, p, &params, step) {
            Ok(join) => return Ok((params, join)),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::SearchExhausted {
        attempts: MAX_DOUBLINGS,
        last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::StraightLine;

    #[test]
    fn mollifier_support() {
        assert_eq!(mollifier(0.1, -1.0), 0.0);
        assert_eq!(mollifier(0.1, 0.2), 1.0);
        let lam = 0.07;
        assert!((mollifier(lam, lam / 2.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mollifier_monotone() {
        let lam = 0.3;
        let mut prev = -1.0;
        for i in 0..1000 {
            let x = -lam + 3.0 * lam * i as f64 / 999.0;
            let v = mollifier(lam, x);
            assert!(v >= prev - 1e-15);
            assert!((0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn half_polish_line_tail_is_circle() {
        let base = StraightLine {
            start: Point::new(0.0, 1.0),
            theta: 0.0,
            s_min: -1.0,
            s_max: 1.0,
        };
        let params = RoundCornerParams {
            lambda: 0.01,
            k_blend: 20.0,
            delta: 0.5,
            orientation: 1,
        };
        let (curve, center) = half_polish(1, &base, 0.0, &params).unwrap();
        // all samples past the blend must sit on the circle of radius 1/K
        let mut on_tail = 0;
        for q in curve.samples() {
            if q.s >= 0.01 {
                assert!((q.pos.dist(center) - 0.05).abs() < 1e-9);
                on_tail += 1;
            }
        }
        assert!(on_tail > 10);
        // unblended side coincides with the base
        for q in curve.samples() {
            if q.s <= 0.0 {
                assert!((q.pos.x1 - 1.0).abs() < 1e-12 && (q.pos.x3 - q.s).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn blend_angle_drift_bounded() {
        let base = StraightLine {
            start: Point::new(0.0, 1.0),
            theta: 0.0,
            s_min: -1.0,
            s_max: 1.0,
        };
        for i in 1..=8 {
            let lp = 0.01 * i as f64 / 8.0;
            let e = blend_forward(&base, 0.0, 0.01, lp, 20.0, 64);
            assert!(e.theta.abs() <= 2.0 * 20.0 * lp + 1e-12);
        }
    }
}
