//! Conditionally convergent tails summed arc by arc between consecutive zeros.

use super::accel::IteratedAverager;
use super::gk::integrate_adaptive;
use super::{QuadConfig, QuadResult, QuadStatus};
use crate::{Error, Real, Result};

/// Zeros of `cos(omega * t + phase)` lying at or beyond `from`, in
/// increasing order.
pub fn harmonic_zeros<T: Real>(omega: T, phase: T, from: T) -> impl Fn(usize) -> T {
    let pi = T::PI();
    let half = T::lit(0.5);
    // smallest integer k with ((k + 1/2) pi - phase) / omega >= from
    let k0 = ((from * omega + phase) / pi - half).ceil();
    move |n: usize| ((k0 + T::from_usize(n).expect("index") + half) * pi - phase) / omega
}

fn first_zero_at_or_after<T: Real, Z: Fn(usize) -> T>(zeros: &Z, t0: T) -> Result<usize> {
    if zeros(0) >= t0 {
        return Ok(0);
    }
    let mut hi = 1usize;
    while zeros(hi) < t0 {
        if hi > (1 << 40) {
            return Err(Error::Domain(
                "zero sequence never reaches the tail start".into(),
            ));
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if zeros(mid) >= t0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Integral of `f` over `[t0, ∞)`: integrates between consecutive elements
/// of the increasing sequence `zeros` and applies `cfg.accel_depth` rounds
/// of averaging to the partial sums. Stops once the accelerated value is
/// stable to the configured tolerance.
pub fn integrate_oscillatory_tail<T: Real, F: Fn(T) -> T + ?Sized, Z: Fn(usize) -> T>(
    f: &F,
    t0: T,
    zeros: Z,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    cfg.validate()?;
    if !t0.is_finite() {
        return Err(Error::Domain("tail start must be finite".into()));
    }
    let arc_cfg = cfg.tightened(T::lit(0.1));
    let first = first_zero_at_or_after(&zeros, t0)?;

    let mut total = QuadResult::zero();
    let z0 = zeros(first);
    if z0 > t0 {
        total = integrate_adaptive(f, t0, z0, &arc_cfg)?;
    }
    let mut quad_err = total.err_estimate;
    let mut n_evals = total.n_evals;
    let mut status = total.status;
    let mut partial = total.value;

    let depth = cfg.accel_depth;
    let mut acc = IteratedAverager::new(depth);
    acc.push(partial);

    let mut lo = z0;
    for j in 0..cfg.max_subdivisions {
        let hi = zeros(first + j + 1);
        if !(hi > lo) {
            return Err(Error::Domain(
                "zero sequence must be strictly increasing".into(),
            ));
        }
        let arc = integrate_adaptive(f, lo, hi, &arc_cfg)?;
        partial = partial + arc.value;
        quad_err = quad_err + arc.err_estimate;
        n_evals += arc.n_evals;
        status = status.worst(arc.status);
        acc.push(partial);
        lo = hi;

        if j > depth + 1 {
            if let (Some(v), Some(e)) = (acc.value(), acc.error_estimate()) {
                if e <= T::lit(0.5) * cfg.target(v) {
                    return Ok(QuadResult {
                        value: v,
                        err_estimate: e + quad_err,
                        n_evals,
                        status,
                    });
                }
            }
        }
    }

    let v = acc.value().unwrap_or(partial);
    let e = acc.error_estimate().unwrap_or(T::infinity());
    Ok(QuadResult {
        value: v,
        err_estimate: e + quad_err,
        n_evals,
        status: status.worst(QuadStatus::TailNotConverged),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_semi_infinite;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn harmonic_zero_sequence() {
        let z = harmonic_zeros(1.0f64, 0.0, 0.0);
        assert!((z(0) - FRAC_PI_2).abs() < 1e-15);
        assert!((z(1) - 3.0 * FRAC_PI_2).abs() < 1e-15);
        // sin t = cos(t - pi/2)
        let z = harmonic_zeros(2.0f64, -FRAC_PI_2, 1.0);
        assert!((z(0) - FRAC_PI_2).abs() < 1e-15);
        assert!((2.0 * z(3)).sin().abs() < 1e-14);
    }

    #[test]
    fn sine_times_rational_half_line() {
        let f = |t: f64| t.sin() * t / (1.0 + t * t);
        let cfg = QuadConfig::default();
        let r = integrate_oscillatory_tail(&f, 0.0, |k| k as f64 * PI, &cfg).unwrap();
        let exact = FRAC_PI_2 * (-1.0f64).exp();
        assert!(r.is_converged(), "{r:?}");
        assert!((r.value - exact).abs() < 1e-9, "{} vs {exact}", r.value);
        assert!((r.value - exact).abs() <= r.err_estimate);
    }

    #[test]
    fn cosine_over_lorentzian_half_line() {
        let f = |t: f64| t.cos() / (1.0 + t * t);
        let cfg = QuadConfig::default();
        let r = integrate_oscillatory_tail(&f, 0.0, |k| (k as f64 + 0.5) * PI, &cfg).unwrap();
        let exact = FRAC_PI_2 * (-1.0f64).exp();
        assert!((r.value - exact).abs() < 1e-10);
    }

    #[test]
    fn constant_sign_integrand_matches_direct_integration() {
        let f = |t: f64| (-0.5 * t).exp() / (1.0 + t);
        let cfg = QuadConfig::default();
        let via_arcs = integrate_oscillatory_tail(&f, 0.3, |k| k as f64, &cfg).unwrap();
        let direct = integrate_semi_infinite(&f, 0.3, &cfg).unwrap();
        assert!(via_arcs.is_converged());
        assert!((via_arcs.value - direct.value).abs() < 1e-9);
    }

    #[test]
    fn tail_budget_exhaustion() {
        let f = |t: f64| t.sin();
        let cfg = QuadConfig {
            max_subdivisions: 5,
            ..QuadConfig::default()
        };
        let r = integrate_oscillatory_tail(&f, 0.0, |k| k as f64 * PI, &cfg).unwrap();
        assert_eq!(r.status, QuadStatus::TailNotConverged);
    }
}
