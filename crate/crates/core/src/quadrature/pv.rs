//! Principal values across simple poles, one symmetric cell at a time, and
//! over whole lines carrying an infinite pole lattice.

use super::accel::tail_window;
use super::gk::integrate_adaptive;
use super::{QuadConfig, QuadResult, QuadStatus, REMOVABLE_RADIUS};
use crate::kernel::BoundaryFunction;
use crate::{Error, Real, Result};

const EXTRAPOLATION_NODES: usize = 4;
const EXTRAPOLATION_STEP: f64 = 1e-3;

/// `∫_0^r fold(s) ds` for an even fold `fold(s) = f(c + s) + f(c − s)`.
/// Below `REMOVABLE_RADIUS` the fold is replaced by a polynomial in `s²`
/// through a few nodes well away from the cancellation.
pub fn integrate_folded<T: Real, F: Fn(T) -> T + ?Sized>(
    fold: &F,
    r: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "cell radius must be positive, got {r}"
        )));
    }
    let nodes: Vec<(T, T)> = (1..=EXTRAPOLATION_NODES)
        .map(|j| {
            let s = T::lit(EXTRAPOLATION_STEP * j as f64) * r;
            (s * s, fold(s))
        })
        .collect();
    let cutoff = T::lit(REMOVABLE_RADIUS);
    let safe = |s: T| {
        if s.abs() < cutoff {
            neville(&nodes, s * s)
        } else {
            fold(s)
        }
    };
    let mut res = integrate_adaptive(&safe, T::zero(), r, cfg)?;
    res.n_evals += EXTRAPOLATION_NODES;
    Ok(res)
}

fn neville<T: Real>(nodes: &[(T, T)], u: T) -> T {
    let mut p: Vec<T> = nodes.iter().map(|&(_, v)| v).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ui, uj) = (nodes[i].0, nodes[i + level].0);
            p[i] = ((u - uj) * p[i] + (ui - u) * p[i + 1]) / (ui - uj);
        }
    }
    p[0]
}

/// Principal value of `∫_{c−r}^{c+r} f(t) dt` across a simple pole at `c`.
pub fn integrate_pv_cell<T: Real, F: Fn(T) -> T + ?Sized>(
    f: &F,
    c: T,
    r: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    cfg.validate()?;
    integrate_folded(&|s: T| f(c + s) + f(c - s), r, cfg)
}

/// Principal value of `∫ g(t) weight(t) dt` over the whole line, with the
/// core window centred at zero.
pub fn integrate_pv_line<T: Real, W: Fn(T) -> T + ?Sized>(
    g: &BoundaryFunction<T>,
    weight: &W,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    integrate_pv_line_about(g, weight, T::zero(), T::one(), cfg)
}

/// Principal value of `∫ g(t) weight(t) dt` over the whole line.
///
/// The core `[center − T, center + T]` (widened to the adjacent midpoints
/// between poles, with `T = cfg.core_half_width(scale)`) is integrated
/// directly. Beyond it the integrand is tapered by the smooth window left
/// after `accel_depth` rounds of averaging over truncation points, which is
/// equivalent to averaging the partial integrals; the difference against one
/// round fewer is the tail error estimate.
pub fn integrate_pv_line_about<T: Real, W: Fn(T) -> T + ?Sized>(
    g: &BoundaryFunction<T>,
    weight: &W,
    center: T,
    scale: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    cfg.validate()?;
    let Some(lattice) = g.singular_points() else {
        return Err(Error::Domain(
            "boundary data has no poles on the line; use the ordinary integrator".into(),
        ));
    };
    if !center.is_finite() || !(scale > T::zero()) {
        return Err(Error::Domain(
            "centre must be finite and scale positive".into(),
        ));
    }
    let half = cfg.core_half_width(scale);
    let hw = cfg.window_width(scale);
    let m = cfg.accel_depth;
    let r0 = lattice.midpoint_at_or_after(center + half);
    let l0 = lattice.midpoint_at_or_before(center - half);

    let walker = Walker { g, cfg };
    let core = walker.run(weight, l0, r0)?;

    let tails = |depth: usize| -> Result<QuadResult<T>> {
        if depth == 0 {
            return Ok(QuadResult::zero());
        }
        let reach = hw * T::from_usize(depth).expect("depth");
        let right_end = lattice.midpoint_at_or_after(r0 + reach);
        let left_end = lattice.midpoint_at_or_before(l0 - reach);
        let right = walker.run(
            &|t: T| weight(t) * tail_window((t - r0) / hw, depth),
            r0,
            right_end,
        )?;
        let left = walker.run(
            &|t: T| weight(t) * tail_window((l0 - t) / hw, depth),
            left_end,
            l0,
        )?;
        Ok(right.combine(left))
    };
    let full = tails(m)?;
    let lower = tails(m - 1)?;

    let spread = (full.value - lower.value).abs();
    let mut total = core.combine(full);
    total.n_evals += lower.n_evals;
    let quad_status = total.status;
    total.err_estimate = total.err_estimate + spread;
    if quad_status == QuadStatus::Converged && !(total.err_estimate <= cfg.target(total.value)) {
        total.status = QuadStatus::TailNotConverged;
    }
    Ok(total)
}

struct Walker<'a, T> {
    g: &'a BoundaryFunction<T>,
    cfg: &'a QuadConfig<T>,
}

impl<T: Real> Walker<'_, T> {
    /// Data at `t`, measured from the nearest pole when a local evaluator
    /// can use the offset.
    fn data(&self, t: T) -> T {
        let lattice = self.g.singular_points().expect("lattice");
        let k = lattice.nearest_index(t);
        if lattice.contains(k) {
            self.g.eval_near_pole(k, t - lattice.ordinate(k))
        } else {
            self.g.eval(t)
        }
    }

    /// Principal value over `[a, b]`, cells around each interior pole and
    /// plain panels in between.
    fn run<W: Fn(T) -> T + ?Sized>(&self, weight: &W, a: T, b: T) -> Result<QuadResult<T>> {
        if !(a < b) {
            return Ok(QuadResult::zero());
        }
        let lattice = self.g.singular_points().expect("lattice");
        let poles = lattice.indices_between(a, b);
        let radius = self.cfg.pv_pair_radius_fraction * lattice.separation();
        let pieces = T::from_usize(2 * poles.len() + 1).expect("count");
        let piece_cfg = self.cfg.tightened(T::one() / pieces);

        let mut total = QuadResult::zero();
        let mut cursor = a;
        for k in poles {
            let c = lattice.ordinate(k);
            let r = radius.min(c - cursor).min(b - c);
            if !(r > T::zero()) {
                return Err(Error::Domain(format!(
                    "pole at {c} sits on an integration boundary"
                )));
            }
            if c - r > cursor {
                let seg = integrate_adaptive(
                    &|t: T| weight(t) * self.data(t),
                    cursor,
                    c - r,
                    &piece_cfg,
                )?;
                total = total.combine(seg);
            }
            let g = self.g;
            let fold = |s: T| {
                weight(c + s) * g.eval_near_pole(k, s) + weight(c - s) * g.eval_near_pole(k, -s)
            };
            total = total.combine(integrate_folded(&fold, r, &piece_cfg)?);
            cursor = c + r;
        }
        if cursor < b {
            let seg = integrate_adaptive(&|t: T| weight(t) * self.data(t), cursor, b, &piece_cfg)?;
            total = total.combine(seg);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TailModel;
    use crate::lattice::PoleLattice;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn cell_of_reciprocal_is_zero() {
        let r = integrate_pv_cell(&|t: f64| 1.0 / t, 0.0, 0.5, &QuadConfig::default()).unwrap();
        assert!(r.value.abs() < 1e-14, "{r:?}");
    }

    #[test]
    fn cell_with_log_closed_form() {
        // PV ∫_{-1/2}^{3/2} dt / (t - 1/2) over the symmetric part, plus a smooth factor
        let f = |t: f64| t.exp() / (t - 0.5);
        let r = integrate_pv_cell(&f, 0.5, 0.5, &QuadConfig::default()).unwrap();
        // e^{1/2} ∫_{-1/2}^{1/2} e^s / s ds = e^{1/2} 2 Shi(1/2)
        let shi_half = 0.506_996_749_819_667_8;
        assert!(
            (r.value - 0.5f64.exp() * 2.0 * shi_half).abs() < 1e-12,
            "{r:?}"
        );
    }

    #[test]
    fn neville_reproduces_quadratic_in_u() {
        let nodes: Vec<(f64, f64)> = (1..=4)
            .map(|j| {
                let u = (j as f64).powi(2) * 1e-6;
                (u, 3.0 + 2.0 * u - u * u)
            })
            .collect();
        assert!((neville(&nodes, 0.0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn line_with_secant_data() {
        // PV ∫ sec t · (1/π) / (1 + t²) dt = 1 / cosh 1
        let lat = PoleLattice::new(
            FRAC_PI_2,
            PI,
            |k| if k.rem_euclid(2) == 0 { -1.0 } else { 1.0 },
        )
        .unwrap()
        .with_residue_bound(1.0);
        let g = BoundaryFunction::new(|t: f64| 1.0 / t.cos(), TailModel::Bounded(f64::INFINITY))
            .with_poles(lat)
            .with_local(|k, s: f64| {
                let sign = if k.rem_euclid(2) == 0 { -1.0 } else { 1.0 };
                sign / s.sin()
            });
        let w = |t: f64| 1.0 / (PI * (1.0 + t * t));
        let r = integrate_pv_line(&g, &w, &QuadConfig::default()).unwrap();
        assert!(r.is_converged(), "{r:?}");
        assert!((r.value - 1.0 / 1f64.cosh()).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn line_without_poles_is_rejected() {
        let g = BoundaryFunction::new(|t: f64| t.cos(), TailModel::Bounded(1.0));
        assert!(integrate_pv_line(&g, &|_t: f64| 1.0, &QuadConfig::default()).is_err());
    }
}
