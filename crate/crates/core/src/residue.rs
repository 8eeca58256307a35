//! Residues at simple poles from contour means.

use num_complex::Complex;

use crate::{Error, Real, Result};

const NODES: usize = 64;

fn circle_mean<T: Real, F: Fn(Complex<T>) -> Complex<T> + ?Sized>(
    f: &F,
    pole: Complex<T>,
    radius: T,
) -> Complex<T> {
    let n = T::from_usize(NODES).expect("node count");
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..NODES {
        let theta = T::TAU() * T::from_usize(j).expect("index") / n;
        let w = Complex::from_polar(radius, theta);
        acc = acc + w * f(pole + w);
    }
    acc / n
}

/// Residue of `f` at a simple pole: the mean of `(z − pole) f(z)` over
/// equispaced points on circles of radius `radius` and `radius / 2`,
/// combined by Richardson extrapolation.
///
/// Fails with [`Error::NoConvergence`] when the two circles disagree, which
/// flags a pole of higher order or another singularity inside the disk.
pub fn numeric_residue<T: Real, F: Fn(Complex<T>) -> Complex<T> + ?Sized>(
    f: &F,
    pole: Complex<T>,
    radius: T,
) -> Result<Complex<T>> {
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(Error::Domain(format!(
            "residue radius must be positive, got {radius}"
        )));
    }
    let outer = circle_mean(f, pole, radius);
    let inner = circle_mean(f, pole, radius * T::lit(0.5));
    let two = T::lit(2.0);
    let extrapolated = inner * two - outer;
    let scale = extrapolated.norm().max(T::one());
    let tol = T::epsilon().sqrt() * scale;
    let spread = (inner - outer).norm();
    if !spread.is_finite() || spread > tol {
        return Err(Error::NoConvergence(format!(
            "contour means at two radii differ by {spread}"
        )));
    }
    Ok(extrapolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    type C = Complex<f64>;

    #[test]
    fn reciprocal() {
        let r = numeric_residue(&|z: C| z.inv(), C::new(0.0, 0.0), 1e-3).unwrap();
        assert!((r - C::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sech_at_first_pole() {
        let r = numeric_residue(&|z: C| z.cosh().inv(), C::new(0.0, FRAC_PI_2), 1e-3).unwrap();
        assert!((r - C::new(0.0, -1.0)).norm() < 1e-10, "{r}");
    }

    #[test]
    fn z_over_sinh() {
        let r = numeric_residue(&|z: C| z / z.sinh(), C::new(0.0, PI), 1e-3).unwrap();
        assert!((r - C::new(0.0, -PI)).norm() < 1e-10, "{r}");
    }

    #[test]
    fn second_pole_inside_outer_circle_is_flagged() {
        let f = |z: C| (z - C::new(0.0, 7e-4)).inv() + z.inv();
        assert!(numeric_residue(&f, C::new(0.0, 0.0), 1e-3).is_err());
    }

    #[test]
    fn bad_radius() {
        assert!(numeric_residue(&|z: C| z.inv(), C::new(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn single_precision() {
        let f = |z: Complex<f32>| z.cosh().inv();
        let r =
            numeric_residue(&f, Complex::new(0.0f32, std::f32::consts::FRAC_PI_2), 1e-2).unwrap();
        assert!((r - Complex::new(0.0, -1.0)).norm() < 1e-3, "{r}");
    }
}
