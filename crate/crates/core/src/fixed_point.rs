//! Success probability of a generic link as the root of the coupled
//! queue/interference fixed-point equation
//!
//! ```text
//! p = exp(−λcR² qξ / (ξ + pq(1−ξ)) − K)
//! ```
//!
//! For ξ < 1 the non-zero roots coincide with the zeros of
//! `f(p) = −ln p − M/(N+p) − K`, whose derivative has the sign of the
//! concave quadratic `g(p) = −(p+N)² + Mp`. The real roots of `g` split
//! `(0, 1]` into at most three intervals on which `f` is monotone, and each
//! interval holding a sign change is bisected. Bisection runs on `y = ln p` so
//! that roots many orders of magnitude below one stay resolvable.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{derive_constants, DerivedConstants, SystemParams};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;
/// Roots below this are reported as this value with `clamped` set.
pub const MIN_ROOT: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    SingleRoot,
    TriRoot,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SingleRoot => "single",
            Regime::TriRoot => "tri",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointSolution {
    /// Non-zero roots in `(0, 1]`, ascending; one or three entries.
    pub roots: Vec<f64>,
    /// `ln` of each root, exact even where `roots` is clamped.
    pub log_roots: Vec<f64>,
    pub regime: Regime,
    pub p_a: f64,
    pub p_s: f64,
    pub p_l: f64,
    /// Steady state used downstream; always `p_l`.
    pub selected: f64,
    /// Roots of `g` inside `(0, 1]`, ascending. Empty when ξ = 1.
    pub g_roots: Vec<f64>,
    /// `|f|` at each root (log-space form for ξ < 1, direct form for ξ = 1).
    pub residuals: Vec<f64>,
    pub clamped: bool,
}

impl FixedPointSolution {
    fn from_log_roots(log_roots: Vec<f64>, g_roots: Vec<f64>, residuals: Vec<f64>) -> Self {
        let clamped = log_roots.iter().any(|&y| y < MIN_ROOT.ln());
        let roots: Vec<f64> = log_roots.iter().map(|&y| y.exp().max(MIN_ROOT)).collect();
        let (p_a, p_s, p_l, regime) = match roots.as_slice() {
            [a, s, l] => (*a, *s, *l, Regime::TriRoot),
            _ => {
                let l = roots[roots.len() - 1];
                (l, l, l, Regime::SingleRoot)
            }
        };
        FixedPointSolution {
            roots,
            log_roots,
            regime,
            p_a,
            p_s,
            p_l,
            selected: p_l,
            g_roots,
            residuals,
            clamped,
        }
    }

    /// Roots that are steady states: `[p_A, p_L]` in the tri-root regime,
    /// `[p_L]` otherwise. The middle root is never one.
    pub fn steady_states(&self) -> Vec<f64> {
        match self.regime {
            Regime::TriRoot => vec![self.p_a, self.p_l],
            Regime::SingleRoot => vec![self.p_l],
        }
    }
}

fn mn(consts: &DerivedConstants) -> Result<(f64, f64)> {
    match (consts.m, consts.n) {
        (Some(m), Some(n)) => Ok((m, n)),
        _ => Err(Error::InvalidParameter {
            name: "xi",
            value: consts.xi,
            reason: "f(p) and g(p) are undefined at xi = 1",
        }),
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in (0, 1]",
        })
    }
}

/// `f(y) = −y − M/(N + e^y) − K` with `y = ln p`.
#[inline]
pub fn f_log(y: f64, m: f64, n: f64, k: f64) -> f64 {
    -y - m / (n + y.exp()) - k
}

/// `f(p) = −ln p − M/(N+p) − K`. Requires ξ < 1.
pub fn f_value(p: f64, consts: &DerivedConstants) -> Result<f64> {
    check_probability(p)?;
    let (m, n) = mn(consts)?;
    Ok(-p.ln() - m / (n + p) - consts.k)
}

/// `g(p) = −(p + N − M/2)² + M²/4 − MN`, the numerator of `f'(p)`.
pub fn g_value(p: f64, consts: &DerivedConstants) -> Result<f64> {
    let (m, n) = mn(consts)?;
    Ok(-(p + n) * (p + n) + m * p)
}

/// Real roots of `g` lying in `(0, 1]`, ascending.
pub fn g_roots_in_unit(m: f64, n: f64) -> Vec<f64> {
    let disc = m * m / 4.0 - m * n;
    if !(disc >= 0.0) || m == 0.0 {
        return Vec::new();
    }
    let vertex = m / 2.0 - n;
    let upper = vertex + disc.sqrt();
    if upper <= 0.0 {
        return Vec::new();
    }
    // product of the roots is N², which avoids cancellation in the smaller one
    let lower = n * n / upper;
    [lower, upper]
        .into_iter()
        .filter(|&r| r > 0.0 && r <= 1.0)
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Neg,
    Zero,
    Pos,
}

fn sign_with(v: f64, eps: f64) -> Sign {
    if v > eps {
        Sign::Pos
    } else if v < -eps {
        Sign::Neg
    } else {
        Sign::Zero
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let lo_positive = f(lo) > 0.0;
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= tol {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            lo,
            hi,
        })
    }
}

/// Finds every non-zero root of the fixed-point equation in `(0, 1]`.
///
/// Tangent double roots (where `f` touches zero at a root of `g` to within
/// `tol`) carry no sign change and are dropped, so the result is always
/// single- or tri-root.
pub fn solve_fixed_point(params: &SystemParams, tol: f64) -> Result<FixedPointSolution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must be > 0",
        });
    }
    let dc = derive_constants(params)?;
    let (m, n) = match (dc.m, dc.n) {
        (Some(m), Some(n)) if m > 0.0 => (m, n),
        (Some(_), Some(_)) => {
            // empty network: no interference, p = e^{-K}
            return Ok(FixedPointSolution::from_log_roots(
                vec![-dc.k],
                Vec::new(),
                vec![0.0],
            ));
        }
        _ => {
            // ξ = 1: every interferer is always backlogged and the exponent no
            // longer depends on p
            let y = -(dc.lcr2 * dc.q) - dc.k;
            let residual = (y.exp() - (-dc.lcr2 * dc.q - dc.k).exp()).abs();
            return Ok(FixedPointSolution::from_log_roots(
                vec![y],
                Vec::new(),
                vec![residual],
            ));
        }
    };
    let k = dc.k;
    let f = |y: f64| f_log(y, m, n, k);
    let g_roots = g_roots_in_unit(m, n);

    // f(y) >= -y - M/N - K, so one unit left of M/N + K it is at least 1
    let mut edges = vec![-(m / n + k) - 1.0];
    edges.extend(g_roots.iter().filter(|&&r| r < 1.0).map(|r| r.ln()));
    edges.push(0.0);
    let values: Vec<f64> = edges.iter().map(|&y| f(y)).collect();

    let eps = tol * (1.0 + m / n + k);
    let last = edges.len() - 1;
    let signs: Vec<Sign> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            // the outer ends are never tangencies, compare them exactly
            if i == 0 || i == last {
                sign_with(v, 0.0)
            } else {
                sign_with(v, eps)
            }
        })
        .collect();

    let mut log_roots = Vec::with_capacity(3);
    for i in 0..last {
        match (signs[i], signs[i + 1]) {
            (Sign::Pos, Sign::Neg) | (Sign::Neg, Sign::Pos) => {
                log_roots.push(bisect(f, edges[i], edges[i + 1], tol)?);
            }
            _ => {}
        }
    }
    if log_roots.len() == 2 {
        // not reachable in exact arithmetic; keep the larger root
        log_roots.remove(0);
    }
    if log_roots.is_empty() {
        let best = (0..edges.len())
            .min_by(|&a, &b| values[a].abs().total_cmp(&values[b].abs()))
            .unwrap_or(last);
        log_roots.push(edges[best]);
    }
    let residuals = log_roots.iter().map(|&y| f(y).abs()).collect();
    Ok(FixedPointSolution::from_log_roots(
        log_roots, g_roots, residuals,
    ))
}

/// Window bounds on ξ inside which three roots exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiWindow {
    pub low: f64,
    pub high: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeClass {
    pub regime: Regime,
    /// `None` when `λcR² ≤ 4/q`.
    pub xi_window: Option<XiWindow>,
    /// Upper limit `((1−ξ)q+ξ)² / (q²ξ(1−ξ))` on λcR²; infinite at ξ = 1.
    pub lcr2_upper: f64,
}

/// Closed-form regime test, independent of the root finder.
pub fn classify_regime(params: &SystemParams) -> Result<RegimeClass> {
    let dc = derive_constants(params)?;
    let (q, xi, l, k) = (dc.q, dc.xi, dc.lcr2, dc.k);
    let lcr2_upper = if xi < 1.0 {
        ((1.0 - xi) * q + xi).powi(2) / (q * q * xi * (1.0 - xi))
    } else {
        f64::INFINITY
    };
    let ql = q * l;
    if !(ql > 4.0) {
        return Ok(RegimeClass {
            regime: Regime::SingleRoot,
            xi_window: None,
            lcr2_upper,
        });
    }
    let s = (0.25 - 1.0 / ql).sqrt();
    let bound = |sign: f64| {
        let numerator = ql / 2.0 - 1.0 + sign * ql * s;
        // dividing by exp(-K - 1/(1/2 ± s)) is multiplying by its inverse
        let scaled = numerator * (k + 1.0 / (0.5 + sign * s)).exp();
        q / (q + scaled)
    };
    let window = XiWindow {
        low: bound(-1.0),
        high: bound(1.0),
    };
    let tri = l < lcr2_upper && window.low < xi && xi < window.high;
    Ok(RegimeClass {
        regime: if tri {
            Regime::TriRoot
        } else {
            Regime::SingleRoot
        },
        xi_window: Some(window),
        lcr2_upper,
    })
}

/// Stationary law of the Geo/Geo/1/1 buffer of one transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QueueSteadyState {
    pub pi0: f64,
    pub pi1: f64,
    /// Effective (admitted) arrival rate `ξ π₀`.
    pub r: f64,
    /// Offered load, the probability the buffer is non-empty at access time.
    pub rho: f64,
}

pub fn queue_steady_state(params: &SystemParams, p: f64) -> Result<QueueSteadyState> {
    params.validate()?;
    check_probability(p)?;
    let (q, xi) = (params.q, params.xi);
    let denom = xi + q * p - xi * q * p;
    let pi0 = q * p / denom;
    Ok(QueueSteadyState {
        pi0,
        pi1: 1.0 - pi0,
        r: xi * pi0,
        rho: xi / denom,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DerivativeSign {
    Negative,
    Zero,
    Positive,
}

impl DerivativeSign {
    fn of(v: f64) -> Self {
        if v < 0.0 {
            DerivativeSign::Negative
        } else if v > 0.0 {
            DerivativeSign::Positive
        } else {
            DerivativeSign::Zero
        }
    }
}

/// Partial derivatives of a root `p` with respect to ξ, q and λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sensitivity {
    pub dp_dxi: f64,
    pub dp_dq: f64,
    pub dp_dlambda: f64,
    /// `λcR² p ξ(1−ξ) − (ξ/q + p(1−ξ))² = (1−ξ)² g(p)`, finite at ξ = 1.
    pub scaled_g: f64,
    /// `g(p)` itself, `None` at ξ = 1.
    pub g: Option<f64>,
}

impl Sensitivity {
    pub fn signs(&self) -> [DerivativeSign; 3] {
        [
            DerivativeSign::of(self.dp_dxi),
            DerivativeSign::of(self.dp_dq),
            DerivativeSign::of(self.dp_dlambda),
        ]
    }

    /// Steady states sit where `g < 0`.
    pub fn is_steady_state(&self) -> bool {
        self.scaled_g < 0.0
    }
}

/// Implicit derivatives of a fixed-point root. All three are non-positive at
/// steady states (`g(p) < 0`) and flip sign at the unstable middle root.
pub fn steady_state_sensitivity(params: &SystemParams, p: f64) -> Result<Sensitivity> {
    let dc = derive_constants(params)?;
    check_probability(p)?;
    let (q, xi, l) = (dc.q, dc.xi, dc.lcr2);
    let load = xi / q + p * (1.0 - xi);
    let scaled_g = l * p * xi * (1.0 - xi) - load * load;
    if scaled_g.abs() <= 1e-12 * load * load {
        return Err(Error::Singular { p, g: scaled_g });
    }
    let cr2 = dc.c * params.r * params.r;
    let g = match (dc.m, dc.n) {
        (Some(m), Some(n)) => Some(-(p + n) * (p + n) + m * p),
        _ => None,
    };
    Ok(Sensitivity {
        dp_dxi: l * p * p / scaled_g,
        dp_dq: l * (xi / q).powi(2) * p / scaled_g,
        dp_dlambda: cr2 * (xi / q) * (xi + p * q * (1.0 - xi)) * p / scaled_g,
        scaled_g,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Snr;

    /// Sets λ so that λcR² equals `lcr2` with R = 1 and c = 1.
    pub(crate) fn reduced(lcr2: f64, k: f64, q: f64, xi: f64) -> SystemParams {
        // K = θ R^α / γ with θ = 1, R = 1
        let snr = if k == 0.0 {
            Snr::Noiseless
        } else {
            Snr::Finite(1.0 / k)
        };
        SystemParams {
            lambda: lcr2,
            r: 1.0,
            alpha: 3.0,
            theta: 1.0,
            snr,
            q,
            xi,
            c_override: Some(1.0),
        }
    }

    /// Direct-form oracle: sign scan of `p − exp(...)` on a log grid, then
    /// plain bisection in p. Independent of the log-space/g-root route.
    fn oracle_roots(lcr2: f64, k: f64, q: f64, xi: f64, points: usize) -> Vec<f64> {
        let h = |p: f64| p - (-lcr2 * q * xi / (xi + p * q * (1.0 - xi)) - k).exp();
        let lo_exp = -15.0f64;
        let grid: Vec<f64> = (0..points)
            .map(|i| 10f64.powf(lo_exp * (1.0 - i as f64 / (points - 1) as f64)))
            .collect();
        let mut roots = Vec::new();
        for w in grid.windows(2) {
            let (mut a, mut b) = (w[0], w[1]);
            if h(a) == 0.0 {
                roots.push(a);
                continue;
            }
            if (h(a) > 0.0) != (h(b) > 0.0) {
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if (h(mid) > 0.0) == (h(a) > 0.0) {
                        a = mid
                    } else {
                        b = mid
                    }
                }
                roots.push(0.5 * (a + b));
            }
        }
        roots
    }

    fn tri_instance() -> SystemParams {
        reduced(20.0, 0.0, 1.0, 0.015)
    }

    #[test]
    fn f_value_examples() {
        let dc = derive_constants(&reduced(0.0, 0.0, 1.0, 0.5)).unwrap();
        assert_eq!(f_value(1.0, &dc).unwrap(), 0.0);

        let dc = derive_constants(&tri_instance()).unwrap();
        assert!((dc.m.unwrap() - 0.304_568_527_918_781_7).abs() < 1e-15);
        assert!((dc.n.unwrap() - 0.015_228_426_395_939_085).abs() < 1e-15);
        assert!(f_value(1e-300, &dc).unwrap() > 0.0);
        // the largest root is 0.6183371788..., see the tri-root oracle below
        assert!(f_value(0.6183, &dc).unwrap().abs() < 1e-3);
        assert!(f_value(0.0, &dc).is_err());
        assert!(f_value(-0.5, &dc).is_err());

        let dc = derive_constants(&reduced(1.0, 0.0, 1.0, 1.0)).unwrap();
        assert!(f_value(0.5, &dc).is_err());
    }

    #[test]
    fn xi_one_closed_form() {
        let p = SystemParams::default();
        let sol = solve_fixed_point(&p, DEFAULT_TOL).unwrap();
        assert_eq!(sol.regime, Regime::SingleRoot);
        // mpmath: exp(-1.16925804176142066 - 0.27)
        assert!((sol.p_l - 0.237_103_614_415_361_7).abs() < 1e-15);
    }

    #[test]
    fn empty_network_closed_form() {
        let p = SystemParams::default().with_lambda(0.0).with_xi(0.3);
        let sol = solve_fixed_point(&p, DEFAULT_TOL).unwrap();
        assert_eq!(sol.roots, vec![(-0.27f64).exp()]);
    }

    #[test]
    fn noiseless_empty_network_root_is_one() {
        let p = reduced(0.0, 0.0, 0.7, 0.4);
        assert_eq!(solve_fixed_point(&p, DEFAULT_TOL).unwrap().p_l, 1.0);
    }

    #[test]
    fn tri_root_instance_matches_oracle() {
        let sol = solve_fixed_point(&tri_instance(), DEFAULT_TOL).unwrap();
        assert_eq!(sol.regime, Regime::TriRoot);
        let oracle = oracle_roots(20.0, 0.0, 1.0, 0.015, 100_000);
        assert_eq!(oracle.len(), 3);
        for (got, want) in sol.roots.iter().zip(&oracle) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
        // 40-digit references
        assert!((sol.p_a - 2.061_159_201_965_714e-9).abs() < 1e-20);
        assert!((sol.p_s - 0.139_269_395_489_897_46).abs() < 1e-13);
        assert!((sol.p_l - 0.618_337_178_876_405_2).abs() < 1e-13);
        assert_eq!(sol.g_roots.len(), 2);
        assert!(sol.g_roots[0] < sol.p_s && sol.p_s < sol.g_roots[1]);
        assert_eq!(sol.steady_states(), vec![sol.p_a, sol.p_l]);
        assert_eq!(sol.selected, sol.p_l);
    }

    #[test]
    fn tiny_roots_are_clamped() {
        // p_A ≈ e^{-800}
        let sol = solve_fixed_point(&reduced(800.0, 0.0, 1.0, 0.0004), DEFAULT_TOL).unwrap();
        assert_eq!(sol.regime, Regime::TriRoot);
        assert!(sol.clamped);
        assert_eq!(sol.p_a, MIN_ROOT);
        assert!(sol.log_roots[0] < -700.0);
        assert!(sol.residuals.iter().all(|r| *r < 1e-10));
    }

    #[test]
    fn classify_examples() {
        let c = classify_regime(&reduced(3.0, 0.0, 1.0, 0.1)).unwrap();
        assert_eq!(c.regime, Regime::SingleRoot);
        assert!(c.xi_window.is_none());

        let c = classify_regime(&tri_instance()).unwrap();
        assert_eq!(c.regime, Regime::TriRoot);
        let w = c.xi_window.unwrap();
        assert!((w.low - 1.062_999_453_253_552_7e-7).abs() < 1e-18);
        assert!((w.high - 0.019_021_156_369_949_77).abs() < 1e-14);

        // two g-roots but f(p'_2) < 0
        let p = reduced(6.0, 0.0, 1.0, 0.1);
        let c = classify_regime(&p).unwrap();
        assert_eq!(c.regime, Regime::SingleRoot);
        let sol = solve_fixed_point(&p, DEFAULT_TOL).unwrap();
        assert_eq!(sol.g_roots.len(), 2);
        let dc = derive_constants(&p).unwrap();
        let f2 = f_value(sol.g_roots[1], &dc).unwrap();
        assert!((f2 + 0.387_682_512_019_720_15).abs() < 1e-12, "{f2}");
        assert_eq!(sol.regime, Regime::SingleRoot);
    }

    #[test]
    fn queue_examples() {
        let p = reduced(1.0, 0.0, 0.8, 1.0);
        let s = queue_steady_state(&p, 0.5).unwrap();
        assert!((s.rho - 1.0).abs() < 1e-15);
        assert!((s.pi0 - 0.4).abs() < 1e-15);
        assert!((s.pi1 - 0.6).abs() < 1e-15);

        let s = queue_steady_state(&reduced(1.0, 0.0, 1.0, 0.5), 1.0).unwrap();
        assert_eq!(s.rho, 0.5);

        let s = queue_steady_state(&tri_instance(), 0.618_337_178_876_405_2).unwrap();
        assert!((s.rho - 0.024_036_068_671_046_31).abs() < 1e-12);
        assert!((s.pi0 + s.pi1 - 1.0).abs() < 1e-15);
        assert!((s.r - 0.015 * s.pi0).abs() < 1e-15);
    }

    #[test]
    fn sensitivity_signs() {
        let base = SystemParams::default().with_lambda(0.0).with_xi(0.4);
        let s = steady_state_sensitivity(&base, (-0.27f64).exp()).unwrap();
        // λ = 0: p does not depend on ξ or q, and falls with λ
        assert_eq!(
            s.signs(),
            [
                DerivativeSign::Zero,
                DerivativeSign::Zero,
                DerivativeSign::Negative
            ]
        );

        let tri = tri_instance();
        let sol = solve_fixed_point(&tri, DEFAULT_TOL).unwrap();
        let at_l = steady_state_sensitivity(&tri, sol.p_l).unwrap();
        assert!(at_l.g.unwrap() < 0.0 && at_l.is_steady_state());
        assert_eq!(at_l.signs(), [DerivativeSign::Negative; 3]);
        let at_a = steady_state_sensitivity(&tri, sol.p_a).unwrap();
        assert_eq!(at_a.signs(), [DerivativeSign::Negative; 3]);
        let at_s = steady_state_sensitivity(&tri, sol.p_s).unwrap();
        assert!(at_s.g.unwrap() > 0.0 && !at_s.is_steady_state());
    }

    #[test]
    fn sensitivity_flags_tangency() {
        let tri = tri_instance();
        let sol = solve_fixed_point(&tri, DEFAULT_TOL).unwrap();
        let err = steady_state_sensitivity(&tri, sol.g_roots[1]).unwrap_err();
        assert!(matches!(err, Error::Singular { .. }));
    }

    #[test]
    fn bad_tolerance_rejected() {
        assert!(solve_fixed_point(&tri_instance(), 0.0).is_err());
        assert!(solve_fixed_point(&tri_instance(), f64::NAN).is_err());
    }

    proptest::proptest! {
        #[test]
        fn roots_are_one_or_three_with_small_residual(
            lcr2 in 0.0f64..200.0, k in 0.0f64..3.0, q in 0.01f64..=1.0, xi in 0.0005f64..=1.0
        ) {
            let sol = solve_fixed_point(&reduced(lcr2, k, q, xi), DEFAULT_TOL).unwrap();
            proptest::prop_assert!(sol.roots.len() == 1 || sol.roots.len() == 3);
            proptest::prop_assert!(sol.residuals.iter().all(|r| *r <= 1e-10));
            proptest::prop_assert!(sol.p_a <= sol.p_s && sol.p_s <= sol.p_l && sol.p_l <= 1.0);
            proptest::prop_assert!(sol.p_a > 0.0);
        }

        #[test]
        fn regime_matches_closed_form(
            lcr2 in 0.0f64..100.0, k in 0.0f64..2.0, q in 0.01f64..=1.0, xi in 0.0005f64..0.6
        ) {
            let p = reduced(lcr2, k, q, xi);
            let sol = solve_fixed_point(&p, DEFAULT_TOL).unwrap();
            let class = classify_regime(&p).unwrap();
            proptest::prop_assert_eq!(sol.regime, class.regime);
        }

        #[test]
        fn largest_root_decreases_with_density(
            lcr2 in 0.0f64..60.0, d in 1e-3f64..5.0, k in 0.0f64..1.0, q in 0.05f64..=1.0, xi in 0.001f64..=1.0
        ) {
            let a = solve_fixed_point(&reduced(lcr2, k, q, xi), DEFAULT_TOL).unwrap().p_l;
            let b = solve_fixed_point(&reduced(lcr2 + d, k, q, xi), DEFAULT_TOL).unwrap().p_l;
            proptest::prop_assert!(b <= a);
        }
    }
}
