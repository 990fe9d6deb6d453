//! Incomplete elliptic integrals F(k, θ) and E(k, θ) with parameter
//! derivatives, evaluated by adaptive quadrature on the defining integrals.
//!
//! The modulus here routinely exceeds 1 (k(t) = t/√(2t−1) > 1 for t ≠ 1),
//! which is outside the classical AGM/Landen domain; the integrands stay
//! real because k·sin θ is kept strictly below 1.

use crate::error::Error;
use crate::numeric;
use crate::Result;

/// Hard guard on the integrand: require k·sin θ ≤ 1 − `MODULUS_GUARD`.
pub const MODULUS_GUARD: f64 = 1e-9;

/// Guard around k = 1 for the parameter derivative of F.
pub const SINGULAR_K_GUARD: f64 = 1e-8;

const QUAD_TOL: f64 = 1e-13;

/// Validated argument pair (k, θ) with k ≥ 0, θ ∈ [0, π/2], k·sin θ < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArgs {
    k: f64,
    theta: f64,
}

impl EllipticArgs {
    pub fn new(k: f64, theta: f64) -> Result<Self> {
        if !k.is_finite() || !theta.is_finite() || k < 0.0 {
            return Err(Error::Domain(format!("invalid elliptic args k={k}, theta={theta}")));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&theta) {
            return Err(Error::Domain(format!("amplitude {theta} outside [0, pi/2]")));
        }
        let ksin = k * theta.sin();
        if ksin >= 1.0 - MODULUS_GUARD {
            return Err(Error::ModulusDomain {
                ksin,
                guard: MODULUS_GUARD,
            });
        }
        Ok(Self { k, theta })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Δ(k, θ) = √(1 − k² sin² θ), the integrand of E at the amplitude.
pub fn delta_of(args: EllipticArgs) -> f64 {
    let s = args.theta.sin();
    (1.0 - args.k * args.k * s * s).sqrt()
}

/// Incomplete elliptic integral of the first kind,
/// F(k, θ) = ∫₀^θ dφ / √(1 − k² sin² φ).
pub fn ellip_f(args: EllipticArgs) -> Result<f64> {
    if args.k == 1.0 {
        // closed form at the singular modulus: ln(sec θ + tan θ)
        return Ok((1.0 / args.theta.cos() + args.theta.tan()).ln());
    }
    let k2 = args.k * args.k;
    numeric::integrate(
        &|phi: f64| {
            let s = phi.sin();
            1.0 / (1.0 - k2 * s * s).sqrt()
        },
        0.0,
        args.theta,
        QUAD_TOL,
    )
}

/// Incomplete elliptic integral of the second kind,
/// E(k, θ) = ∫₀^θ √(1 − k² sin² φ) dφ.
pub fn ellip_e(args: EllipticArgs) -> Result<f64> {
    if args.k == 1.0 {
        return Ok(args.theta.sin());
    }
    let k2 = args.k * args.k;
    numeric::integrate(
        &|phi: f64| {
            let s = phi.sin();
            (1.0 - k2 * s * s).sqrt()
        },
        0.0,
        args.theta,
        QUAD_TOL,
    )
}

/// ∂F/∂k = E/(k(1−k²)) − F/k − k·sin 2θ / (2(1−k²)Δ).
pub fn ellip_dfdk(args: EllipticArgs) -> Result<f64> {
    let k = args.k;
    if (k - 1.0).abs() < SINGULAR_K_GUARD {
        return Err(Error::SingularModulus {
            dist: (k - 1.0).abs(),
        });
    }
    if k == 0.0 {
        return Ok(0.0);
    }
    let f = ellip_f(args)?;
    let e = ellip_e(args)?;
    let one_m_k2 = 1.0 - k * k;
    let delta = delta_of(args);
    Ok(e / (k * one_m_k2) - f / k - k * (2.0 * args.theta).sin() / (2.0 * one_m_k2 * delta))
}

/// ∂E/∂k = (E − F)/k, with the k → 0 limit equal to 0.
pub fn ellip_dedk(args: EllipticArgs) -> Result<f64> {
    if args.k == 0.0 {
        return Ok(0.0);
    }
    let f = ellip_f(args)?;
    let e = ellip_e(args)?;
    Ok((e - f) / args.k)
}

/// Modulus map k(t) = t / √(2t − 1), defined for t > 1/2.
pub fn modulus_of(t: f64) -> Result<f64> {
    if t <= 0.5 {
        return Err(Error::Domain(format!("modulus_of requires t > 1/2, got {t}")));
    }
    Ok(t / (2.0 * t - 1.0).sqrt())
}

/// Amplitude map θ(a, t) = arccos(a/t), defined for 0 < a ≤ t.
pub fn amplitude_of(a: f64, t: f64) -> Result<f64> {
    if a <= 0.0 || a > t {
        return Err(Error::Domain(format!(
            "amplitude_of requires 0 < a <= t, got a={a}, t={t}"
        )));
    }
    Ok((a / t).clamp(-1.0, 1.0).acos())
}

/// Validated args for the pair (k(t), θ(a, t)).
///
/// k(t)·sin θ(a,t) = √((t²−a²)/(2t−1)) < 1 exactly when (t−1)² < a²,
/// so the |t−1| < a precondition is the modulus guard in disguise.
pub fn args_of(a: f64, t: f64) -> Result<EllipticArgs> {
    if (t - 1.0).abs() >= a {
        return Err(Error::Domain(format!(
            "args_of requires |t-1| < a, got a={a}, t={t}"
        )));
    }
    EllipticArgs::new(modulus_of(t)?, amplitude_of(a, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_modulus_is_identity() {
        let args = EllipticArgs::new(0.0, 0.7).unwrap();
        assert!((ellip_f(args).unwrap() - 0.7).abs() < 1e-13);
        assert!((ellip_e(args).unwrap() - 0.7).abs() < 1e-13);
    }

    #[test]
    fn unit_modulus_closed_forms() {
        // F(1, arccos a) = ln((1+sqrt(1-a^2))/a), E(1, arccos a) = sqrt(1-a^2)
        let a: f64 = 0.6;
        let theta = a.acos();
        let args = EllipticArgs::new(1.0, theta).unwrap();
        let w = (1.0 - a * a).sqrt();
        assert!((ellip_f(args).unwrap() - ((1.0 + w) / a).ln()).abs() < 1e-13);
        assert!((ellip_e(args).unwrap() - w).abs() < 1e-13);
    }

    #[test]
    fn modulus_and_amplitude_at_t_one() {
        assert!((modulus_of(1.0).unwrap() - 1.0).abs() < 1e-15);
        let th = amplitude_of(0.5, 1.0).unwrap();
        assert!((th - std::f64::consts::FRAC_PI_3).abs() < 1e-14);
    }

    #[test]
    fn delta_at_t_one_is_cos_theta1() {
        let args = args_of(0.5, 1.0 - 1e-14).unwrap();
        assert!((delta_of(args) - 0.5).abs() < 1e-6);
        // exact at k = 1, theta_1 = arccos(a)
        let exact = EllipticArgs::new(1.0, 0.5f64.acos()).unwrap();
        assert!((delta_of(exact) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn delta_identity() {
        // Delta(k(t), theta(a,t)) = sqrt((a^2 - (t-1)^2) / (2t - 1))
        let (a, t) = (0.7, 0.95);
        let args = args_of(a, t).unwrap();
        let rhs = ((a * a - (t - 1.0) * (t - 1.0)) / (2.0 * t - 1.0)).sqrt();
        assert!((delta_of(args) - rhs).abs() < 1e-12);
    }

    #[test]
    fn modulus_guard_rejects() {
        assert!(matches!(
            EllipticArgs::new(2.0, std::f64::consts::FRAC_PI_2),
            Err(Error::ModulusDomain { .. })
        ));
        assert!(args_of(0.3, 1.4).is_err());
    }

    #[test]
    fn dedk_vanishes_at_zero_modulus() {
        let args = EllipticArgs::new(0.0, 1.1).unwrap();
        assert_eq!(ellip_dedk(args).unwrap(), 0.0);
    }

    #[test]
    fn dfdk_singular_guard() {
        let args = EllipticArgs::new(1.0, 0.3).unwrap();
        assert!(matches!(ellip_dfdk(args), Err(Error::SingularModulus { .. })));
    }
}
