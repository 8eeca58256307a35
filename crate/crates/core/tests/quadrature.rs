use std::f64::consts::{E, FRAC_PI_2, PI};

use poisson_pv::catalog::entries;
use poisson_pv::kernel::{BoundaryFunction, TailModel};
use poisson_pv::lattice::PoleLattice;
use poisson_pv::quadrature::{
    harmonic_zeros, integrate_adaptive, integrate_folded, integrate_pv_cell, integrate_pv_line,
};
use poisson_pv::verify::default_grid;
use poisson_pv::{integrate_oscillatory_tail, Boundary, QuadConfig};

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn lorentz(t: f64) -> f64 {
    1.0 / (1.0 + t * t)
}

fn alternating(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn secant() -> Boundary {
    let lat = PoleLattice::new(FRAC_PI_2, PI, |k| -alternating(k))
        .unwrap()
        .with_residue_bound(1.0);
    BoundaryFunction::new(|t: f64| 1.0 / t.cos(), TailModel::Bounded(f64::INFINITY))
        .with_poles(lat)
        .with_local(|k, s: f64| -alternating(k) / s.sin())
}

fn t_over_sine() -> Boundary {
    let lat = PoleLattice::new(0.0, PI, |k| alternating(k) * k as f64 * PI)
        .unwrap()
        .excluding(0);
    BoundaryFunction::new(|t: f64| t / t.sin(), TailModel::Bounded(f64::INFINITY))
        .with_removable(0.0, 1.0)
        .with_poles(lat)
        .with_local(|k, s: f64| alternating(k) * (k as f64 * PI + s) / s.sin())
}

fn t_tangent() -> Boundary {
    let lat = PoleLattice::new(FRAC_PI_2, PI, |k| -(FRAC_PI_2 + k as f64 * PI));
    BoundaryFunction::new(|t: f64| t * t.tan(), TailModel::Bounded(f64::INFINITY))
        .with_poles(lat.unwrap())
        .with_local(|k, s: f64| {
            let c = FRAC_PI_2 + k as f64 * PI;
            -(c + s) * s.cos() / s.sin()
        })
}

#[test]
fn cell_about_shifted_pole() {
    let r = integrate_pv_cell(&|t: f64| 1.0 / (t - 2.0), 2.0, 1.0, &cfg()).unwrap();
    // (2 + s) - 2 rounds, so the fold is zero only to rounding
    assert!(
        r.value.abs() <= r.err_estimate && r.value.abs() < 1e-12,
        "{r:?}"
    );
}

#[test]
fn cell_with_regular_part() {
    let r = integrate_pv_cell(&|t: f64| 1.0 / t + 1.0, 0.0, 1.0, &cfg()).unwrap();
    assert!((r.value - 2.0).abs() < 1e-14);
}

#[test]
fn cell_of_cotangent() {
    let r = integrate_pv_cell(&|t: f64| 1.0 / t.tan(), 0.0, 1.0, &cfg()).unwrap();
    assert!(r.value.abs() < 1e-14);
}

#[test]
fn secant_over_lorentzian() {
    let r = integrate_pv_line(&secant(), &lorentz, &cfg()).unwrap();
    assert!(r.is_converged());
    let exact = PI / 1f64.cosh();
    assert!((r.value - exact).abs() < 1e-8, "{} vs {exact}", r.value);
    assert!((r.value - 2.035922).abs() < 1e-6);
}

#[test]
fn t_over_sine_over_lorentzian() {
    let r = integrate_pv_line(&t_over_sine(), &lorentz, &cfg()).unwrap();
    assert!(r.is_converged(), "{r:?}");
    let exact = PI / 1f64.sinh();
    assert!((r.value - exact).abs() < 1e-8, "{} vs {exact}", r.value);
    assert!((r.value - 2.673238).abs() < 1e-6);
}

#[test]
fn t_tangent_over_lorentzian() {
    let r = integrate_pv_line(&t_tangent(), &lorentz, &cfg()).unwrap();
    assert!(r.is_converged(), "{r:?}");
    let exact = 2.0 * PI / (E * E + 1.0);
    assert!((r.value - exact).abs() < 1e-8, "{} vs {exact}", r.value);
    assert!((r.value - 0.748974).abs() < 1e-6);
}

#[test]
fn cell_radius_does_not_matter() {
    let f = |t: f64| lorentz(t) / t.tan();
    let (c, outer) = (PI, 1.2);
    // cot(c + s) = cot s, exact about the true pole
    let fold = |s: f64| (lorentz(c + s) - lorentz(c - s)) / s.tan();
    let total = |r: f64| {
        let cell = integrate_folded(&fold, r, &cfg()).unwrap();
        let left = integrate_adaptive(&f, c - outer, c - r, &cfg()).unwrap();
        let right = integrate_adaptive(&f, c + r, c + outer, &cfg()).unwrap();
        (
            cell.value + left.value + right.value,
            cell.err_estimate + left.err_estimate + right.err_estimate,
        )
    };
    let results: Vec<_> = [0.3, 0.6, 0.9].into_iter().map(total).collect();
    for w in results.windows(2) {
        let ((v1, e1), (v2, e2)) = (w[0], w[1]);
        assert!((v1 - v2).abs() <= e1 + e2, "{v1} vs {v2}, errs {e1} {e2}");
    }
}

#[test]
fn smaller_cells_agree_within_error_estimates() {
    let half = QuadConfig {
        pv_pair_radius_fraction: cfg().pv_pair_radius_fraction / 2.0,
        ..cfg()
    };
    for g in [secant(), t_over_sine(), t_tangent()] {
        let r1 = integrate_pv_line(&g, &lorentz, &cfg()).unwrap();
        let r2 = integrate_pv_line(&g, &lorentz, &half).unwrap();
        assert!(
            (r1.value - r2.value).abs() < r1.err_estimate + r2.err_estimate,
            "{r1:?} vs {r2:?}"
        );
    }
}

#[test]
fn oscillatory_tail_grid() {
    for a in [0.5, 1.0, 2.0] {
        for x in [0.5, 1.0, 2.0] {
            let f = move |t: f64| (a * t).sin() * t / (x * x + t * t);
            let zeros = harmonic_zeros(a, -FRAC_PI_2, 0.0);
            let r = integrate_oscillatory_tail(&f, 0.0, zeros, &cfg()).unwrap();
            let exact = FRAC_PI_2 * (-a * x).exp();
            assert!(
                (r.value - exact).abs() < 1e-8,
                "a={a} x={x}: {} vs {exact}",
                r.value
            );
        }
    }
}

#[test]
fn oscillatory_tail_examples() {
    let f = |t: f64| t.sin() * t / (1.0 + t * t);
    let r = integrate_oscillatory_tail(&f, 0.0, |k| k as f64 * PI, &cfg()).unwrap();
    assert!((r.value - 0.5778636749).abs() < 1e-9);
    let f = |t: f64| t.cos() / (1.0 + t * t);
    let r = integrate_oscillatory_tail(&f, 0.0, |k| (k as f64 + 0.5) * PI, &cfg()).unwrap();
    assert!((r.value - 0.5778636749).abs() < 1e-9);
}

#[test]
fn error_estimates_bound_true_errors_over_catalog() {
    let cfg = cfg();
    for e in entries().iter().filter(|e| !e.naive_limit_witness) {
        for g in default_grid(e) {
            let r = e.numeric(&g.params, g.x, g.y, &cfg).unwrap();
            let closed = e.closed_form(&g.params, g.x, g.y).unwrap();
            // allowance for rounding in the closed form itself
            let rounding = 8.0 * f64::EPSILON * closed.abs();
            assert!(
                (r.value - closed).abs() <= r.err_estimate + rounding,
                "{} at {} x={} y={}: |{} - {closed}| > {}",
                e.id(),
                g.params,
                g.x,
                g.y,
                r.value,
                r.err_estimate
            );
        }
    }
}
