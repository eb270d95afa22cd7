use aoi_core::aoi::{self, Branch};
use aoi_core::{
    classify_regime, solve_fixed_point, steady_state_sensitivity, Regime, Snr, SystemParams,
    DEFAULT_TOL,
};

fn noiseless(lcr2: f64, q: f64, xi: f64) -> SystemParams {
    SystemParams {
        lambda: lcr2,
        r: 1.0,
        alpha: 3.0,
        theta: 1.0,
        snr: Snr::Noiseless,
        q,
        xi,
        c_override: Some(1.0),
    }
}

#[test]
fn classification_matches_root_count_across_the_window() {
    let window = classify_regime(&noiseless(20.0, 1.0, 0.015))
        .unwrap()
        .xi_window
        .unwrap();
    let xs = [
        window.low * 0.5,
        window.low * 1.5,
        0.001,
        0.015,
        window.high * 0.99,
        window.high * 1.01,
        0.5,
    ];
    for xi in xs {
        let p = noiseless(20.0, 1.0, xi);
        let sol = solve_fixed_point(&p, DEFAULT_TOL).unwrap();
        let class = classify_regime(&p).unwrap();
        assert_eq!(sol.regime, class.regime, "xi = {xi}");
        let inside = xi > window.low && xi < window.high;
        assert_eq!(sol.regime == Regime::TriRoot, inside, "xi = {xi}");
    }
}

#[test]
fn both_steady_states_are_stable_and_the_middle_is_not() {
    let p = noiseless(20.0, 1.0, 0.015);
    let sol = solve_fixed_point(&p, DEFAULT_TOL).unwrap();
    for root in sol.steady_states() {
        assert!(steady_state_sensitivity(&p, root)
            .unwrap()
            .is_steady_state());
    }
    let middle = steady_state_sensitivity(&p, sol.p_s).unwrap();
    assert!(!middle.is_steady_state());
    assert!(middle.dp_dxi > 0.0 && middle.dp_dq > 0.0 && middle.dp_dlambda > 0.0);

    let high = aoi::peak_aoi(&p, sol.p_l).unwrap().a_p;
    let low = aoi::peak_aoi(&p, sol.p_a).unwrap().a_p;
    assert!(low > 1e6 * high);
}

#[test]
fn optimizers_never_lose_to_the_point_they_start_from() {
    for &(l, q, xi) in &[
        (0.3, 1.0, 1.0),
        (2.0, 0.6, 1.0),
        (6.0, 0.5, 0.2),
        (10.0, 1.0, 0.5),
        (0.8, 0.3, 0.9),
    ] {
        let p = noiseless(l, q, xi);
        let here = aoi::peak_aoi_at_steady_state(&p).unwrap().a_p;
        let oq = aoi::optimize_q(&p).unwrap();
        let ox = aoi::optimize_xi(&p).unwrap();
        let oj = aoi::optimize_joint(&p).unwrap();
        let slack = 1.0 + 1e-9;
        assert!(oq.a_p_opt <= here * slack);
        assert!(ox.a_p_opt <= here * slack);
        assert!(oj.a_p_opt <= oq.a_p_opt * slack);
        assert!(oj.a_p_opt <= ox.a_p_opt * slack);
        assert_eq!(oj.q, 1.0);
    }
}

#[test]
fn reported_optimum_reproduces_through_the_solver() {
    let p = noiseless(10.0, 0.5, 0.5);
    for res in [aoi::optimize_q(&p).unwrap(), aoi::optimize_xi(&p).unwrap()] {
        let again = aoi::peak_aoi_at_steady_state(&p.with_q(res.q).with_xi(res.xi)).unwrap();
        assert!(((again.a_p - res.a_p_opt) / res.a_p_opt).abs() < 1e-9);
        assert_eq!(res.branch, Branch::Interior);
    }
}

#[test]
fn noise_only_raises_peak_age() {
    let quiet = SystemParams::default();
    let loud = SystemParams {
        snr: Snr::Finite(5.0),
        ..quiet
    };
    let clean = SystemParams {
        snr: Snr::Noiseless,
        ..quiet
    };
    let a = |p: &SystemParams| aoi::peak_aoi_at_steady_state(p).unwrap().a_p;
    assert!(a(&clean) < a(&quiet));
    assert!(a(&quiet) < a(&loud));
}
