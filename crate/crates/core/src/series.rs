//! Residue correction series over pole lattices and the alternating series
//! for the harmonic extension of `sech` data on the real axis.

use serde::{Deserialize, Serialize};

use crate::catalog::{EntrySpec, ParamSet};
use crate::kernel::{pv_harmonic_extension, HalfPlanePoint};
use crate::lattice::PoleLattice;
use crate::quadrature::{IteratedAverager, QuadConfig};
use crate::{Error, Real, Result};

/// Averaging depth applied to symmetric partial sums.
pub const SERIES_ACCEL_DEPTH: usize = 8;
/// Largest number of shells or terms summed before giving up.
pub const SERIES_TERM_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult<T> {
    pub value: T,
    pub terms_used: usize,
    pub tail_bound: T,
}

fn check_point<T: Real>(p: HalfPlanePoint<T>) -> Result<()> {
    HalfPlanePoint::new(p.x, p.y).map(|_| ())
}

/// `Σ_k e_k x / (x² + (c_k − y)²)` over the lattice.
///
/// Terms are added in shells pairing the `n`-th pole at or above zero with
/// the `n`-th pole below it. The partial sums are accelerated by iterated
/// averaging; when the lattice carries a uniform residue bound, the exact
/// tail bound is used as soon as it meets `tol`.
pub fn pole_series<T: Real>(
    lat: &PoleLattice<T>,
    p: HalfPlanePoint<T>,
    tol: T,
) -> Result<SeriesResult<T>> {
    pole_series_with_budget(lat, p, tol, SERIES_TERM_BUDGET)
}

/// [`pole_series`] with an explicit shell budget.
pub fn pole_series_with_budget<T: Real>(
    lat: &PoleLattice<T>,
    p: HalfPlanePoint<T>,
    tol: T,
    budget: usize,
) -> Result<SeriesResult<T>> {
    check_point(p)?;
    if !(tol > T::zero()) {
        return Err(Error::Domain("series tolerance must be positive".into()));
    }
    let (x, y) = (p.x, p.y);
    let term = |k: i64| {
        let d = lat.ordinate(k) - y;
        lat.residue(k) * x / (x * x + d * d)
    };
    let mut acc = IteratedAverager::new(SERIES_ACCEL_DEPTH);
    let mut partial = T::zero();
    let mut terms = 0usize;
    let mut shells = lat.shells();
    for n in 0..budget {
        let Some((pos, neg)) = shells.next() else {
            return Ok(SeriesResult {
                value: partial,
                terms_used: terms,
                tail_bound: T::zero(),
            });
        };
        let mut reach = T::zero();
        for k in [pos, neg].into_iter().flatten() {
            partial = partial + term(k);
            terms += 1;
            reach = reach.max(lat.ordinate(k).abs());
        }
        acc.push(partial);
        if let Some(bound) = lat.abs_tail_bound(x, y, reach) {
            if bound <= tol {
                return Ok(SeriesResult {
                    value: partial,
                    terms_used: terms,
                    tail_bound: bound,
                });
            }
        }
        if n > SERIES_ACCEL_DEPTH + 1 {
            if let (Some(v), Some(e)) = (acc.value(), acc.error_estimate()) {
                if e <= tol {
                    return Ok(SeriesResult {
                        value: v,
                        terms_used: terms,
                        tail_bound: e,
                    });
                }
            }
        }
    }
    Err(Error::NoConvergence(format!(
        "pole series did not reach tolerance {tol} within {budget} shells"
    )))
}

fn sech_term<T: Real>(a: T, x: T, k: usize) -> T {
    let two = T::lit(2.0);
    let kk = T::from_usize(k).expect("index");
    let sign = if k % 2 == 1 { T::one() } else { -T::one() };
    two * sign / (two * a * x + (two * kk - T::one()) * T::PI())
}

fn check_sech_args<T: Real>(a: T, x: T) -> Result<()> {
    if !(a > T::zero()) || !(x > T::zero()) || !a.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!(
            "sech series needs finite a > 0 and x > 0, got a = {a}, x = {x}"
        )));
    }
    Ok(())
}

/// First `terms` terms of `2 Σ_{k≥1} (−1)^{k−1} / (2ax + (2k−1)π)`, with
/// the alternating-series bound (the first omitted term) as tail bound.
pub fn sech_series_partial<T: Real>(a: T, x: T, terms: usize) -> Result<SeriesResult<T>> {
    check_sech_args(a, x)?;
    let value = (1..=terms).fold(T::zero(), |s, k| s + sech_term(a, x, k));
    Ok(SeriesResult {
        value,
        terms_used: terms,
        tail_bound: sech_term(a, x, terms + 1).abs(),
    })
}

/// `2 Σ_{k≥1} (−1)^{k−1} / (2ax + (2k−1)π)`, the harmonic extension of
/// `sech(at)` data halved, at the real point `x`.
pub fn sech_series<T: Real>(a: T, x: T, tol: T) -> Result<SeriesResult<T>> {
    check_sech_args(a, x)?;
    if !(tol > T::zero()) {
        return Err(Error::Domain("series tolerance must be positive".into()));
    }
    let mut acc = IteratedAverager::new(SERIES_ACCEL_DEPTH);
    let mut partial = T::zero();
    for k in 1..=SERIES_TERM_BUDGET {
        partial = partial + sech_term(a, x, k);
        acc.push(partial);
        if k > SERIES_ACCEL_DEPTH + 1 {
            if let (Some(v), Some(e)) = (acc.value(), acc.error_estimate()) {
                if e <= tol {
                    return Ok(SeriesResult {
                        value: v,
                        terms_used: k,
                        tail_bound: e,
                    });
                }
            }
        }
    }
    Err(Error::NoConvergence(
        "sech series did not reach tolerance".into(),
    ))
}

/// Right side of the imaginary-part identity for a principal-value entry:
/// `(1/π) P∫ Im f(it) x / (x² + (t − y)²) dt + Σ_k e_k x / (x² + (c_k − y)²)`,
/// to be compared with `Im f(x + iy)`.
pub fn imag_identity_rhs(
    e: &EntrySpec,
    p: &ParamSet,
    pt: HalfPlanePoint<f64>,
    cfg: &QuadConfig<f64>,
) -> Result<f64> {
    check_point(pt)?;
    let lattice = e.pole_lattice(p)?;
    let integral = match e.imag_boundary(p)? {
        None => 0.0,
        Some(g) => {
            let r = if g.singular_points().is_some() {
                pv_harmonic_extension(&g, pt, cfg)?
            } else {
                crate::kernel::harmonic_extension(&g, pt, cfg)?
            };
            if !r.is_converged() {
                return Err(Error::NoConvergence(format!(
                    "imaginary boundary integral for {}: {}",
                    e.id(),
                    r.status
                )));
            }
            r.value
        }
    };
    let series = pole_series(&lattice, pt, cfg.tol_abs)?;
    Ok(integral + series.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(x: f64, y: f64) -> HalfPlanePoint<f64> {
        HalfPlanePoint::new(x, y).unwrap()
    }

    #[test]
    fn zero_residues() {
        let lat = PoleLattice::new(0.5, 1.0, |_| 0.0).unwrap();
        let s = pole_series(&lat, pt(1.0, 0.3), 1e-12).unwrap();
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn single_pole() {
        let lat = PoleLattice::new(0.0, 1.0, |_| 1.0)
            .unwrap()
            .with_range(Some(0), Some(0));
        let s = pole_series(&lat, pt(1.0, 0.0), 1e-12).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.terms_used, 1);
        assert_eq!(s.tail_bound, 0.0);
    }

    #[test]
    fn sech_lattice_matches_imaginary_part() {
        // Im sech(1 + i), from cosh(1+i) = cosh 1 cos 1 + i sinh 1 sin 1
        let (c, s) = (1f64.cosh() * 1f64.cos(), 1f64.sinh() * 1f64.sin());
        let im = -s / (c * c + s * s);
        let lat = PoleLattice::new(
            PI / 2.0,
            PI,
            |k| if k.rem_euclid(2) == 0 { -1.0 } else { 1.0 },
        )
        .unwrap()
        .with_residue_bound(1.0);
        let r = pole_series(&lat, pt(1.0, 1.0), 1e-12).unwrap();
        assert!((r.value - im).abs() < 1e-10, "{} vs {im}", r.value);
    }

    #[test]
    fn sech_first_term() {
        let s = sech_series_partial(1.0, 1.0, 1).unwrap();
        assert!((s.value - 2.0 / (2.0 + PI)).abs() < 1e-15);
        assert!((s.tail_bound - 2.0 / (2.0 + 3.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn sech_series_decreases_in_x() {
        let mut prev = f64::INFINITY;
        for x in [0.1, 1.0, 10.0, 100.0, 1e4] {
            let v = sech_series(1.0, x, 1e-14).unwrap().value;
            assert!(v < prev && v > 0.0);
            prev = v;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn sech_series_against_direct_sum() {
        // Pairing consecutive terms gives a positive series with O(k^-2) tail;
        // a long direct sum plus its midpoint tail correction is an oracle.
        let s = sech_series(0.7, 1.3, 1e-14).unwrap();
        let mut direct = 0.0f64;
        let n = 2_000_000;
        for k in 1..=n {
            direct += sech_term(0.7, 1.3, k);
        }
        direct += 0.5 * sech_term(0.7, 1.3, n + 1);
        assert!((s.value - direct).abs() < 1e-12, "{} vs {direct}", s.value);
    }

    #[test]
    fn bad_arguments() {
        assert!(sech_series(0.0, 1.0, 1e-10).is_err());
        assert!(sech_series(1.0, -1.0, 1e-10).is_err());
        assert!(pole_series(
            &PoleLattice::new(0.0, 1.0, |_| 1.0).unwrap(),
            HalfPlanePoint { x: 0.0, y: 0.0 },
            1e-8
        )
        .is_err());
    }
}
