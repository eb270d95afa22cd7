//! Network parameters and the constants every analysis derives from them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mean received SNR at a receiver.
///
/// `Noiseless` is the γ → ∞ limit, which makes the noise exponent exactly zero
/// instead of approximating it with a large number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Snr {
    Finite(f64),
    Noiseless,
}

impl Snr {
    /// Inverse SNR, the additive noise floor in the SINR denominator.
    pub fn inverse(self) -> f64 {
        match self {
            Snr::Finite(gamma) => 1.0 / gamma,
            Snr::Noiseless => 0.0,
        }
    }
}

/// The full parameter tuple of a random-access Poisson bipolar network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Transmitter density (nodes per unit area).
    pub lambda: f64,
    /// TX–RX distance of every link.
    pub r: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// SINR decoding threshold.
    pub theta: f64,
    pub snr: Snr,
    /// Channel access probability.
    pub q: f64,
    /// Per-slot packet arrival probability.
    pub xi: f64,
    /// Replaces the interference geometry constant `c` when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_override: Option<f64>,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            lambda: 0.05,
            r: 3.0,
            alpha: 3.0,
            theta: 0.2,
            snr: Snr::Finite(20.0),
            q: 1.0,
            xi: 1.0,
            c_override: None,
        }
    }
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        // `!(x > 0)` style comparisons also reject NaN.
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(invalid("lambda", self.lambda, "must be finite and >= 0"));
        }
        if !(self.r > 0.0) || !self.r.is_finite() {
            return Err(invalid("R", self.r, "must be finite and > 0"));
        }
        if !(self.alpha > 2.0) || !self.alpha.is_finite() {
            return Err(invalid("alpha", self.alpha, "must be finite and > 2"));
        }
        if !(self.theta >= 0.0) || !self.theta.is_finite() {
            return Err(invalid("theta", self.theta, "must be finite and >= 0"));
        }
        if let Snr::Finite(gamma) = self.snr {
            if !(gamma > 0.0) || gamma.is_nan() {
                return Err(invalid("gamma", gamma, "must be > 0"));
            }
        }
        if !(self.q > 0.0 && self.q <= 1.0) {
            return Err(invalid("q", self.q, "must lie in (0, 1]"));
        }
        if !(self.xi > 0.0 && self.xi <= 1.0) {
            return Err(invalid("xi", self.xi, "must lie in (0, 1]"));
        }
        if let Some(c) = self.c_override {
            if !(c >= 0.0) || !c.is_finite() {
                return Err(invalid("c", c, "must be finite and >= 0"));
            }
        }
        Ok(())
    }

    pub fn with_q(self, q: f64) -> Self {
        SystemParams { q, ..self }
    }

    pub fn with_xi(self, xi: f64) -> Self {
        SystemParams { xi, ..self }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        SystemParams { lambda, ..self }
    }

    /// Noise exponent `θ R^α / γ`.
    pub fn noise_exponent(&self) -> f64 {
        match self.snr {
            Snr::Noiseless => 0.0,
            Snr::Finite(gamma) => self.theta * self.r.powf(self.alpha) / gamma,
        }
    }

    /// Interference geometry constant, honouring `c_override`.
    pub fn geometry_constant(&self) -> Result<f64> {
        match self.c_override {
            Some(c) => Ok(c),
            None => compute_c(self.alpha, self.theta),
        }
    }
}

/// Normalized sinc, `sin(πx) / (πx)`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Interference geometry constant `c = π θ^(2/α) / sinc(2/α)` of a Rayleigh-faded
/// Poisson field.
///
/// Note that the same quantity is sometimes written with `sinc` as a factor
/// rather than a divisor. The divisor form is the one that matches the
/// Laplace functional of a Rayleigh-faded PPP, i.e. `∫ θR^α/(r^α + θR^α) 2πr dr
/// = c R²`, and it is the form the simulator reproduces.
pub fn compute_c(alpha: f64, theta: f64) -> Result<f64> {
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(invalid("alpha", alpha, "must be finite and > 2"));
    }
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(invalid("theta", theta, "must be finite and >= 0"));
    }
    let delta = 2.0 / alpha;
    Ok(PI * theta.powf(delta) / sinc(delta))
}

/// Constants shared by the fixed-point and optimization formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedConstants {
    pub c: f64,
    /// `θ R^α / γ`, zero in noiseless mode.
    pub k: f64,
    /// `λ c R²`.
    pub lcr2: f64,
    /// `λcR² ξ/(1−ξ)`; `None` when ξ = 1.
    pub m: Option<f64>,
    /// `ξ/(q(1−ξ))`; `None` when ξ = 1.
    pub n: Option<f64>,
    pub q: f64,
    pub xi: f64,
}

pub fn derive_constants(params: &SystemParams) -> Result<DerivedConstants> {
    params.validate()?;
    let c = params.geometry_constant()?;
    let lcr2 = params.lambda * c * params.r * params.r;
    let k = params.noise_exponent();
    let (m, n) = if params.xi < 1.0 {
        let odds = params.xi / (1.0 - params.xi);
        (Some(lcr2 * odds), Some(odds / params.q))
    } else {
        (None, None)
    };
    Ok(DerivedConstants {
        c,
        k,
        lcr2,
        m,
        n,
        q: params.q,
        xi: params.xi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig5() -> SystemParams {
        SystemParams {
            lambda: 0.05,
            r: 3.0,
            alpha: 3.0,
            theta: 0.2,
            snr: Snr::Finite(20.0),
            q: 1.0,
            xi: 1.0,
            c_override: None,
        }
    }

    #[test]
    fn c_closed_forms() {
        // sinc(1/2) = 2/π, so c(4, 1) = π²/2.
        let c = compute_c(4.0, 1.0).unwrap();
        assert!((c - PI * PI / 2.0).abs() < 1e-12);
        assert_eq!(compute_c(3.0, 0.0).unwrap(), 0.0);
        // 40-digit reference from mpmath.
        let c = compute_c(3.0, 0.2).unwrap();
        assert!((c - 2.598_351_203_914_268).abs() < 1e-12, "{c}");
    }

    #[test]
    fn c_rejects_alpha_at_or_below_two() {
        assert!(compute_c(2.0, 1.0).is_err());
        assert!(compute_c(1.5, 1.0).is_err());
        assert!(compute_c(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn constants_for_empty_network() {
        let p = SystemParams {
            lambda: 0.0,
            ..fig5()
        };
        let dc = derive_constants(&p).unwrap();
        assert_eq!(dc.lcr2, 0.0);
        assert!((dc.k - 0.27).abs() < 1e-15);
    }

    #[test]
    fn constants_for_fig5_point() {
        let dc = derive_constants(&fig5()).unwrap();
        assert!((dc.lcr2 - 1.169_258_041_761_420_7).abs() < 1e-12);
        assert!((dc.k - 0.27).abs() < 1e-15);
        assert!(dc.m.is_none() && dc.n.is_none());

        let dc = derive_constants(&fig5().with_xi(0.5).with_q(0.5)).unwrap();
        assert!((dc.m.unwrap() - dc.lcr2).abs() < 1e-15);
        assert!((dc.n.unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn noiseless_has_zero_noise_exponent() {
        let p = SystemParams {
            snr: Snr::Noiseless,
            ..fig5()
        };
        assert_eq!(derive_constants(&p).unwrap().k, 0.0);
    }

    #[test]
    fn validation_rejects_out_of_domain() {
        let base = fig5();
        assert!(base.with_q(0.0).validate().is_err());
        assert!(base.with_q(1.1).validate().is_err());
        assert!(base.with_xi(0.0).validate().is_err());
        assert!(base.with_lambda(-1.0).validate().is_err());
        assert!(base.with_lambda(f64::NAN).validate().is_err());
        assert!(SystemParams { r: 0.0, ..base }.validate().is_err());
        assert!(SystemParams { alpha: 2.0, ..base }.validate().is_err());
        assert!(SystemParams {
            theta: -0.1,
            ..base
        }
        .validate()
        .is_err());
        assert!(SystemParams {
            snr: Snr::Finite(0.0),
            ..base
        }
        .validate()
        .is_err());
    }

    #[test]
    fn c_override_replaces_geometry() {
        let p = SystemParams {
            c_override: Some(1.0),
            lambda: 2.0,
            r: 1.0,
            ..fig5()
        };
        assert_eq!(derive_constants(&p).unwrap().lcr2, 2.0);
    }

    proptest::proptest! {
        #[test]
        fn c_is_increasing_in_theta(alpha in 2.05f64..8.0, t1 in 0.0f64..10.0, dt in 1e-6f64..5.0) {
            let lo = compute_c(alpha, t1).unwrap();
            let hi = compute_c(alpha, t1 + dt).unwrap();
            proptest::prop_assert!(hi > lo);
        }

        #[test]
        fn derive_constants_is_pure(lambda in 0.0f64..1.0, xi in 0.01f64..1.0, q in 0.01f64..1.0) {
            let p = fig5().with_lambda(lambda).with_xi(xi).with_q(q);
            let a = derive_constants(&p).unwrap();
            let b = derive_constants(&p).unwrap();
            proptest::prop_assert_eq!(a.lcr2.to_bits(), b.lcr2.to_bits());
            proptest::prop_assert_eq!(a.m.map(f64::to_bits), b.m.map(f64::to_bits));
        }
    }
}
