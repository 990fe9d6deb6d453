//! The scalar functions f, g, h behind the rigidity thresholds, the
//! critical zone parameter a0, the four-way rigidity classification, and
//! grid verifiers for the sign patterns and slice curvature facts.

use crate::curve::{ArcCurve, CircleArc, PlanarCurve, Point, StraightLine};
use crate::delaunay::{self, ZoneSpec};
use crate::elliptic;
use crate::error::Error;
use crate::numeric;
use crate::report::{Section, VerificationReport, Witness};
use crate::Result;
use std::sync::OnceLock;

/// Comparison slack for threshold classification.
pub const THRESHOLD_TOL: f64 = 1e-12;

const SQRT3_OVER_2: f64 = 0.866_025_403_784_438_6;

/// f(a, t) = x_a(t) − √(1−a²) via the elliptic closed form
/// (k − t/k)·F(k,θ) + (t/k)·E(k,θ) − √(1−a²).
pub fn f_closed(a: f64, t: f64) -> Result<f64> {
    check_zone(a)?;
    let args = elliptic::args_of(a, t)?;
    let k = args.k();
    let big_f = elliptic::ellip_f(args)?;
    let big_e = elliptic::ellip_e(args)?;
    Ok((k - t / k) * big_f + (t / k) * big_e - (1.0 - a * a).sqrt())
}

/// f(a, t) via direct quadrature, x*(a, 1, t) − √(1−a²).
pub fn f_quadrature(a: f64, t: f64) -> Result<f64> {
    check_zone(a)?;
    Ok(delaunay::x_star(a, 1.0, t)? - (1.0 - a * a).sqrt())
}

/// g(a) = −ln((1+√(1−a²))/a) + 1/√(1−a²), the t-derivative of f at t = 1.
pub fn g(a: f64) -> Result<f64> {
    check_zone(a)?;
    let w = (1.0 - a * a).sqrt();
    Ok(-((1.0 + w) / a).ln() + 1.0 / w)
}

/// h(a) = ln((1+√(1−a²))/a) + (a²−2)/(1−a²)^{3/2}, the second
/// t-derivative of f at t = 1.
pub fn h(a: f64) -> Result<f64> {
    check_zone(a)?;
    let w2 = 1.0 - a * a;
    Ok(((1.0 + w2.sqrt()) / a).ln() + (a * a - 2.0) / w2.powf(1.5))
}

fn check_zone(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("zone parameter must be in (0,1), got {a}")));
    }
    Ok(())
}

/// Root of g on (1/2, 1) by bisection to tolerance `tol`; g is strictly
/// increasing, and the bracket g(0.51) < 0 < g(0.99) is checked at runtime.
pub fn compute_a0(tol: f64) -> f64 {
    let lo = 0.51;
    let hi = 0.99;
    let glo = g(lo).expect("g(0.51)");
    let ghi = g(hi).expect("g(0.99)");
    assert!(glo < 0.0 && ghi > 0.0, "a0 bracket invalid: g({lo})={glo}, g({hi})={ghi}");
    numeric::bisect(&|a| g(a), lo, hi, tol).expect("bisection on a verified bracket")
}

/// Shared critical constant a0, computed once to 1e−12.
pub fn a0() -> f64 {
    static A0: OnceLock<f64> = OnceLock::new();
    *A0.get_or_init(|| compute_a0(1e-12))
}

/// The two rigidity thresholds.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RigidityConstants {
    pub a0: f64,
    pub sqrt3_over_2: f64,
}

impl RigidityConstants {
    pub fn get() -> Self {
        Self {
            a0: a0(),
            sqrt3_over_2: SQRT3_OVER_2,
        }
    }
}

/// Four-way rigidity classification of the zone S_a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RigidityClass {
    pub strong_h_plus: bool,
    pub strong_h_minus: bool,
    pub local_h_plus: bool,
    pub local_h_minus: bool,
}

/// Classification: strong H⁺ iff a ≥ √3/2; strong H⁻ never; local H⁺
/// iff a ≥ a0; local H⁻ iff a > a0. Values within `THRESHOLD_TOL` of a
/// threshold resolve as exactly at it.
pub fn classify(a: f64) -> Result<RigidityClass> {
    check_zone(a)?;
    let a0 = a0();
    let at_least = |x: f64, thr: f64| x >= thr - THRESHOLD_TOL;
    let above = |x: f64, thr: f64| x > thr + THRESHOLD_TOL;
    Ok(RigidityClass {
        strong_h_plus: at_least(a, SQRT3_OVER_2),
        strong_h_minus: false,
        local_h_plus: at_least(a, a0),
        local_h_minus: above(a, a0),
    })
}

/// Which sign pattern of f(a, ·) near t = 1 a zone parameter falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignCase {
    /// a > a0: f < 0 left of 1, f > 0 right of 1.
    Wide,
    /// a < a0: f > 0 left of 1, f < 0 right of 1.
    Narrow,
    /// a = a0: f < 0 on both sides.
    Critical,
}

pub fn sign_case(a: f64) -> SignCase {
    let a0 = a0();
    if (a - a0).abs() <= THRESHOLD_TOL {
        SignCase::Critical
    } else if a > a0 {
        SignCase::Wide
    } else {
        SignCase::Narrow
    }
}

/// Sign-pattern verifier for f(a, t) on geometric grids flanking t = 1.
///
/// `n` points per side at distances eta·r^j shrinking geometrically to
/// eta/1000 (the sign is hardest near the root).
pub fn verify_lemma_h1(a: f64, eta: f64, n: usize) -> Result<VerificationReport> {
    check_zone(a)?;
    if !(eta > 0.0 && eta < a) {
        return Err(Error::Domain(format!("eta must be in (0, a), got {eta}")));
    }
    let case = sign_case(a);
    let mut grid = Vec::with_capacity(2 * n);
    let ratio = (1e-3f64).powf(1.0 / (n.max(2) as f64 - 1.0));
    for j in 0..n {
        let d = eta * ratio.powi(j as i32);
        grid.push(1.0 - d);
        grid.push(1.0 + d);
    }
    grid.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut report = VerificationReport::new("h1", grid.clone(), 0.0);
    let mut min_margin = f64::INFINITY;
    for &t in &grid {
        let v = f_closed(a, t)?;
        let expect_negative = match case {
            SignCase::Wide => t < 1.0,
            SignCase::Narrow => t > 1.0,
            SignCase::Critical => true,
        };
        let margin = if expect_negative { -v } else { v };
        min_margin = min_margin.min(margin);
        report.record(-margin, t, v, "sign of f(a, t)");
    }
    let case_name = match case {
        SignCase::Wide => "case-1",
        SignCase::Narrow => "case-2",
        SignCase::Critical => "case-3",
    };
    report.push_section(Section {
        name: case_name.into(),
        pass: min_margin > 0.0,
        margin: min_margin,
        max_violation: (-min_margin).max(0.0),
        witness: None,
    });
    Ok(report)
}

/// Checks u_t(1/2) < √3/2 across a neck grid. Where the half-period is
/// below 1/2 the bulge height 1 − t settles the bound; the report notes
/// which route was used per point.
pub fn verify_lemma_tundu(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("tundu", t_grid.to_vec(), 0.0);
    let mut min_margin = f64::INFINITY;
    let mut min_at = f64::NAN;
    for &t in t_grid {
        let hp = delaunay::undulary_half_period(t)?;
        let (value, note) = if hp > 0.5 {
            (delaunay::undulary(t, 0.5)?, "u_t(1/2)")
        } else {
            (1.0 - t, "bulge height bound")
        };
        let margin = SQRT3_OVER_2 - value;
        if margin < min_margin {
            min_margin = margin;
            min_at = t;
        }
        report.record(-margin, t, value, note);
    }
    report.push_section(Section {
        name: "min-margin".into(),
        pass: min_margin > 0.0,
        margin: min_margin,
        max_violation: (-min_margin).max(0.0),
        witness: Some(Witness {
            location: min_at,
            value: SQRT3_OVER_2 - min_margin,
            note: "tightest neck".into(),
        }),
    });
    Ok(report)
}

/// Mean curvature along an equatorial slice family: cylinders x1 = t for
/// t ∈ [1/2, √3/2] (H = 1/(2t) exactly) and rotated minor arcs through
/// (∓1/2, √3/2) and (0, t) for t ∈ (√3/2, 1), whose maximum sits at
/// |x3| = 1/2 with the closed form (1/r + √(4r²−1)/(√3 r))/2 < 1.
pub fn verify_slice_curvatures(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("slices", t_grid.to_vec(), 1e-10);
    for &t in t_grid {
        if t <= 0.5 || t >= 1.0 {
            return Err(Error::Domain(format!("slice parameter {t} outside (1/2, 1)")));
        }
        if t <= SQRT3_OVER_2 {
            let span = 1.0 - (1.0 - t * t).sqrt();
            let line = StraightLine {
                start: Point::new(-span, t),
                theta: 0.0,
                s_min: 0.0,
                s_max: 2.0 * span,
            };
            let c = PlanarCurve::from_arc_curve(&line, 0.0, 2.0 * span, 0.02)?;
            for i in 0..c.len() {
                let h = c.mean_curvature_sample(i)?;
                report.record((h - 0.5 / t).abs() - 1e-12, t, h, "cylinder H = 1/(2t)");
                report.record(h - (1.0 - 1e-12), t, h, "cylinder H < 1");
            }
        } else {
            let center_x1 = (t * t - 1.0) / (2.0 * t - 3.0f64.sqrt());
            let r = t - center_x1;
            let arc = CircleArc::through_point(
                Point::new(0.0, center_x1),
                Point::new(0.0, t),
                Point::new(1.0, 0.0),
                -4.0,
                4.0,
            );
            // φ(s) = π/2 − s/r, so the endpoint at angle φ sits at s = (π/2 − φ)·r
            let phi_left = (SQRT3_OVER_2 - center_x1).atan2(-0.5);
            let phi_right = (SQRT3_OVER_2 - center_x1).atan2(0.5);
            let s_left = (std::f64::consts::FRAC_PI_2 - phi_left) * r;
            let s_right = (std::f64::consts::FRAC_PI_2 - phi_right) * r;
            let c = PlanarCurve::from_arc_curve(&arc, s_left, s_right, 0.01)?;
            let h_end_formula =
                0.5 * (1.0 / r + (4.0 * r * r - 1.0).sqrt() / (3.0f64.sqrt() * r));
            let h_left = c.mean_curvature_sample(0)?;
            let h_right = c.mean_curvature_sample(c.len() - 1)?;
            report.record(
                (h_left - h_end_formula).abs() - 1e-10,
                t,
                h_left,
                "arc endpoint closed form",
            );
            report.record(
                (h_right - h_end_formula).abs() - 1e-10,
                t,
                h_right,
                "arc endpoint closed form",
            );
            let h_end = h_left.max(h_right);
            for i in 0..c.len() {
                let hi = c.mean_curvature_sample(i)?;
                report.record(hi - (h_end + 1e-9), t, hi, "arc max at |x3| = 1/2");
                report.record(hi - (1.0 - 1e-12), t, hi, "arc H < 1");
            }
        }
    }
    Ok(report)
}

/// Finite-difference check of ∂f/∂t and ∂²f/∂t² at t = 1 against the
/// closed forms g and h, plus the derived constant h(a0) = −(1−a0²)^{−3/2}.
pub fn verify_appendix_derivatives(a_set: &[f64]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("appendix-derivatives", a_set.to_vec(), 1e-4);
    for &a in a_set {
        let fd1 = numeric::derivative(&|t| f_closed(a, t), 1.0)?;
        let fd2 = numeric::second_derivative(&|t| f_closed(a, t), 1.0)?;
        let g_a = g(a)?;
        let h_a = h(a)?;
        report.record((fd1 - g_a).abs() - 1e-5, a, fd1, "d f/dt |_(t=1) vs g(a)");
        report.record((fd2 - h_a).abs() - 1e-4, a, fd2, "d2 f/dt2 |_(t=1) vs h(a)");
    }
    let a0 = a0();
    let derived = -(1.0 - a0 * a0).powf(-1.5);
    report.record(
        (h(a0)? - derived).abs() - 1e-6,
        a0,
        h(a0)?,
        "h(a0) = -(1-a0^2)^(-3/2)",
    );
    Ok(report)
}

/// Agreement of the elliptic closed form of f with the direct quadrature
/// route on a 20×20 (a, t) grid, and f(a, 1) = 0.
pub fn verify_elliptic_forms() -> Result<VerificationReport> {
    let n = 20;
    let a_grid: Vec<f64> = (0..n).map(|i| 0.3 + 0.6 * i as f64 / (n - 1) as f64).collect();
    let mut report = VerificationReport::new("elliptic-forms", a_grid.clone(), 1e-7);
    for &a in &a_grid {
        let dt = 0.05f64.min(a / 2.0);
        for j in 0..n {
            let t = 1.0 - dt + 2.0 * dt * j as f64 / (n - 1) as f64;
            let closed = f_closed(a, t)?;
            let quad = f_quadrature(a, t)?;
            report.record(
                (closed - quad).abs() - 1e-7,
                a,
                closed - quad,
                "closed form vs quadrature",
            );
        }
        let at_one = f_closed(a, 1.0)?;
        report.record(at_one.abs() - 1e-9, a, at_one, "f(a, 1) = 0");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a0_matches_published_digits() {
        let a0 = compute_a0(1e-10);
        assert!((a0 * 1e4).round() / 1e4 == 0.5524, "a0 = {a0}");
        assert!(g(a0).unwrap().abs() < 1e-9);
        assert!(a0 > 0.5 && a0 < 1.0);
    }

    #[test]
    fn g_reference_values() {
        assert!((g(0.5).unwrap() + 0.1622574).abs() < 1e-6);
        assert!((g(SQRT3_OVER_2).unwrap() - 1.4506939).abs() < 1e-6);
    }

    #[test]
    fn h_is_negative_at_a0_with_derived_constant() {
        let a0 = a0();
        let h0 = h(a0).unwrap();
        assert!(h0 < 0.0);
        let derived = -(1.0 - a0 * a0).powf(-1.5);
        assert!((h0 - derived).abs() < 1e-10);
    }

    #[test]
    fn f_vanishes_on_the_sphere() {
        for &a in &[0.3, 0.5, 0.7, 0.9] {
            assert!(f_closed(a, 1.0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn f_sign_pattern_wide_zone() {
        assert!(f_closed(0.8, 0.995).unwrap() < 0.0);
        assert!(f_closed(0.8, 1.005).unwrap() > 0.0);
    }

    #[test]
    fn f_two_paths_agree() {
        let closed = f_closed(0.5, 0.99).unwrap();
        let quad = f_quadrature(0.5, 0.99).unwrap();
        assert!((closed - quad).abs() < 1e-7, "{closed} vs {quad}");
    }

    #[test]
    fn classify_patterns() {
        let c = classify(0.9).unwrap();
        assert!(c.strong_h_plus && !c.strong_h_minus && c.local_h_plus && c.local_h_minus);
        let c = classify(a0()).unwrap();
        assert!(!c.strong_h_plus && !c.strong_h_minus && c.local_h_plus && !c.local_h_minus);
        let c = classify(0.5).unwrap();
        assert!(!c.strong_h_plus && !c.strong_h_minus && !c.local_h_plus && !c.local_h_minus);
    }

    #[test]
    fn classify_monotone_in_a() {
        let mut prev = [false; 4];
        let mut flips = [0usize; 4];
        for i in 1..200 {
            let a = i as f64 / 200.0;
            let c = classify(a).unwrap();
            let cur = [c.strong_h_plus, c.strong_h_minus, c.local_h_plus, c.local_h_minus];
            for k in 0..4 {
                if cur[k] != prev[k] {
                    flips[k] += 1;
                }
            }
            prev = cur;
        }
        assert!(flips.iter().all(|&f| f <= 1), "{flips:?}");
    }

    #[test]
    fn lemma_h1_cases() {
        assert!(verify_lemma_h1(0.8, 0.01, 50).unwrap().pass);
        assert!(verify_lemma_h1(0.3, 0.01, 50).unwrap().pass);
        assert!(verify_lemma_h1(a0(), 0.005, 50).unwrap().pass);
    }

    #[test]
    fn tundu_grid_passes() {
        let grid: Vec<f64> = (1..10).map(|i| 0.05 * i as f64).collect();
        let r = verify_lemma_tundu(&grid).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn slices_pass() {
        let r = verify_slice_curvatures(&[0.6, 0.75, SQRT3_OVER_2, 0.9, 0.999]).unwrap();
        assert!(r.pass, "{:?}", r.witness);
    }

    #[test]
    fn g_strictly_increasing() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..1000 {
            let a = 0.1 + 0.89 * i as f64 / 1000.0;
            let v = g(a).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }
}
